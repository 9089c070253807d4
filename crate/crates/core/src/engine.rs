//! One group with its classical family, operators and (lazily) the quantum
//! family.

use std::sync::{Arc, OnceLock};

use crate::algebra::{Polynomial, Scalar};
use crate::classical::{BggFamily, SchubertExpansion};
use crate::error::Result;
use crate::quantum::{QuantumFamily, QuantumOperatorSet};
use crate::rootsystem::{GroupSpec, RootDatum};
use crate::weyl::{ElementId, WeylGroup};

#[derive(Debug)]
pub struct Engine {
    ops: Arc<QuantumOperatorSet>,
    classical: BggFamily,
    quantum: OnceLock<QuantumFamily>,
}

impl Engine {
    /// Builds the group for `spec`, using the default top class unless one
    /// is given.
    pub fn new(spec: &GroupSpec, size_limit: usize, top: Option<Polynomial>) -> Result<Self> {
        let datum = RootDatum::build(spec)?;
        Self::from_group(WeylGroup::generate(datum, size_limit)?, top)
    }

    pub fn from_group(group: WeylGroup, top: Option<Polynomial>) -> Result<Self> {
        let group = Arc::new(group);
        let classical = match top {
            Some(top) => BggFamily::new(&group, top)?,
            None => BggFamily::with_default_top(&group)?,
        };
        let ops = Arc::new(QuantumOperatorSet::build(group)?);
        Ok(Engine {
            ops,
            classical,
            quantum: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        self.ops.group()
    }

    pub fn ops(&self) -> &QuantumOperatorSet {
        &self.ops
    }

    pub fn classical(&self) -> &BggFamily {
        &self.classical
    }

    /// `ĉ_w` for every `w`, computed on first use.
    pub fn quantum(&self) -> Result<&QuantumFamily> {
        if let Some(q) = self.quantum.get() {
            return Ok(q);
        }
        let family = QuantumFamily::new(self.ops.clone(), self.classical.clone())?;
        Ok(self.quantum.get_or_init(|| family))
    }

    pub fn quantum_product(&self, u: ElementId, v: ElementId) -> Result<SchubertExpansion> {
        self.quantum()?.quantum_product(u, v)
    }

    pub fn gw_invariant(&self, u: ElementId, v: ElementId, w: ElementId, d: &[u32]) -> Result<Scalar> {
        self.quantum()?.gw_invariant(u, v, w, d)
    }
}
