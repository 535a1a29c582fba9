use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::formal::FracExp;
use crate::voa::{RepTag, VertexRep, Voa};

use super::{sigma_apply, sigma_project, FieldEngine, Partition, PbwVector, Sector};

/// `M(1)` with `omega = (1/2) a[-1]^2 |0>` and `sigma = -1` on the generator.
pub struct Heisenberg {
    engine: FieldEngine,
}

impl Default for Heisenberg {
    fn default() -> Self {
        Self::new()
    }
}

impl Heisenberg {
    pub fn new() -> Self {
        Heisenberg {
            engine: FieldEngine::new(Sector::Untwisted),
        }
    }

    pub fn engine(&self) -> &FieldEngine {
        &self.engine
    }

    /// Coefficient of `x^e` in `Y(u, x) v`.
    pub fn field_coeff(&self, u: &PbwVector, e: FracExp, v: &PbwVector) -> PbwVector {
        self.engine.apply(u, e, v)
    }
}

/// `u_k v` through the iterate formula
/// `(a(-n)b)_k = sum_{m<0} binom(-m-1, n-1) a(m) b_{k-m-n}
///             + sum_{m>=0} binom(-m-1, n-1) b_{k-m-n} a(m)`.
pub fn untwisted_mode(voa: &Heisenberg, u: &PbwVector, k: i64, v: &PbwVector) -> PbwVector {
    voa.mode(u, k, v)
}

impl Voa for Heisenberg {
    fn order(&self) -> u32 {
        2
    }

    fn vacuum(&self) -> PbwVector {
        PbwVector::vacuum()
    }

    fn conformal(&self) -> PbwVector {
        PbwVector::conformal()
    }

    fn mode(&self, u: &PbwVector, k: i64, v: &PbwVector) -> PbwVector {
        self.engine.apply(u, FracExp::int(-k - 1), v)
    }

    fn mode_bound(&self, u_weight: i64, v_weight: i64) -> i64 {
        u_weight + v_weight
    }

    fn sigma(&self, u: &PbwVector) -> PbwVector {
        sigma_apply(u).expect("sigma acts on the untwisted sector")
    }

    fn project(&self, u: &PbwVector, j: u32) -> PbwVector {
        sigma_project(u, j)
    }

    fn basis(&self, weight: i64) -> Vec<PbwVector> {
        Partition::all(weight, Sector::Untwisted)
            .into_iter()
            .map(|p| PbwVector::basis(Sector::Untwisted, p))
            .collect()
    }
}

/// `M(1)` as a module over itself, viewed as twisted for the trivial
/// automorphism.
pub struct AdjointModule {
    voa: Arc<Heisenberg>,
}

impl AdjointModule {
    pub fn new(voa: Arc<Heisenberg>) -> Self {
        AdjointModule { voa }
    }
}

impl VertexRep for AdjointModule {
    fn tag(&self) -> RepTag {
        RepTag::Untwisted
    }

    fn label(&self) -> String {
        "adjoint M(1)".into()
    }

    fn order(&self) -> u32 {
        1
    }

    fn denominator(&self) -> u32 {
        1
    }

    fn target_sector(&self) -> Sector {
        Sector::Untwisted
    }

    fn coeff(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector {
        if !e.is_integer() {
            return PbwVector::zero(Sector::Untwisted);
        }
        self.voa.field_coeff(u, e, w)
    }

    fn shift_slope(&self) -> FracExp {
        FracExp::ONE
    }
}
