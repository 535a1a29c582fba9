//! Interfaces for vertex operator algebras and their module-like
//! representations, plus window-based checkers for the identities they obey.
//!
//! A checker only certifies an identity on a finite window of exponents and
//! vector weights; a `Pass` means "pass (windowed)".

mod checks;
mod report;

pub use checks::{
    check_equivariance, check_quasi_jacobi, check_sigma_limit, check_twisted_jacobi, check_vacuum,
    check_weak_associativity_twisted, check_weak_commutativity, vertex_series,
};
pub use report::{CheckReport, Status, Witness};

use alloc::string::String;
use alloc::vec::Vec;

use crate::formal::FracExp;
use crate::heisenberg::{Partition, PbwVector, Sector};

/// A vertex operator algebra with a finite-order automorphism `sigma`.
pub trait Voa: Send + Sync {
    /// Order `N` of `sigma`.
    fn order(&self) -> u32;
    fn vacuum(&self) -> PbwVector;
    fn conformal(&self) -> PbwVector;
    /// `u_k v`, the coefficient of `x^{-k-1}` in `Y(u, x) v`.
    fn mode(&self, u: &PbwVector, k: i64, v: &PbwVector) -> PbwVector;
    /// `u_k v = 0` for `k >= mode_bound(wt u, wt v)`.
    fn mode_bound(&self, u_weight: i64, v_weight: i64) -> i64;
    fn sigma(&self, u: &PbwVector) -> PbwVector;
    /// Projection onto `V^j = {u : sigma u = w_N^j u}`.
    fn project(&self, u: &PbwVector, j: u32) -> PbwVector;
    /// Homogeneous basis of the weight space `V_(n)`.
    fn basis(&self, weight: i64) -> Vec<PbwVector>;

    /// `L(n) = omega_{n+1}`.
    fn virasoro(&self, n: i64, u: &PbwVector) -> PbwVector {
        self.mode(&self.conformal(), n + 1, u)
    }

    /// Integral weight of a nonzero homogeneous vector.
    fn weight(&self, u: &PbwVector) -> Option<i64> {
        u.weight().and_then(FracExp::as_int)
    }

    /// The `j` with `u` in `V^j`, if `u` is nonzero and lies in one eigenspace.
    fn eigen_index(&self, u: &PbwVector) -> Option<u32> {
        if u.is_zero() {
            return None;
        }
        (0..self.order()).find(|&j| self.project(u, j) == *u)
    }

    /// All basis vectors of weight at most `cap`, ascending by weight.
    fn basis_up_to(&self, cap: i64) -> Vec<PbwVector> {
        (0..=cap).flat_map(|n| self.basis(n)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepTag {
    Untwisted,
    Twisted,
    Quasi,
    Derived,
}

impl RepTag {
    pub fn name(self) -> &'static str {
        match self {
            RepTag::Untwisted => "untwisted",
            RepTag::Twisted => "twisted",
            RepTag::Quasi => "quasi",
            RepTag::Derived => "derived",
        }
    }
}

/// A vertex-operator assignment `u -> Y_W(u, x)` given through coefficients.
///
/// For `u` of weight `h` the coefficient of `x^e` raises the depth of a target
/// vector by `shift_slope() * (e + h)`; depths are never negative, which gives
/// the lower truncation bound.
pub trait VertexRep: Send + Sync {
    fn tag(&self) -> RepTag;
    /// The structure a derived representation is expected to carry.
    fn structure(&self) -> RepTag {
        self.tag()
    }
    fn label(&self) -> String;
    /// Order `N` of the automorphism the representation is twisted or
    /// equivariant for.
    fn order(&self) -> u32;
    /// Exponents of `x` lie in `(1/denominator) Z`.
    fn denominator(&self) -> u32;
    fn target_sector(&self) -> Sector;
    /// Coefficient of `x^e` in `Y_W(u, x) w`.
    fn coeff(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector;
    fn shift_slope(&self) -> FracExp;

    fn weight_shift(&self, h: FracExp, e: FracExp) -> FracExp {
        self.shift_slope() * (e + h)
    }

    /// No terms of `Y_W(u, x) w` lie below this exponent.
    fn lowest_exponent(&self, h: FracExp, w_depth: FracExp) -> FracExp {
        let s = self.shift_slope();
        let raw = -(w_depth * FracExp::new(s.den(), s.num())) - h;
        let den = self.denominator() as i64;
        FracExp::new(raw.mul_int(den).floor(), den)
    }

    /// Depth of a homogeneous target vector above the bottom of the space.
    fn target_depth(&self, w: &PbwVector) -> Option<FracExp> {
        w.weight()
    }

    fn target_basis(&self, depth: FracExp) -> Vec<PbwVector> {
        let sector = self.target_sector();
        match depth.mul_int(sector.den()).as_int() {
            Some(units) => Partition::all(units, sector)
                .into_iter()
                .map(|p| PbwVector::basis(sector, p))
                .collect(),
            None => Vec::new(),
        }
    }

    /// Target basis up to depth `cap`, ascending.
    fn target_basis_up_to(&self, cap: FracExp) -> Vec<PbwVector> {
        let den = self.target_sector().den();
        let top = cap.mul_int(den).floor();
        (0..=top)
            .flat_map(|k| self.target_basis(FracExp::new(k, den)))
            .collect()
    }
}

impl<R: VertexRep + ?Sized> VertexRep for alloc::sync::Arc<R> {
    fn tag(&self) -> RepTag {
        (**self).tag()
    }
    fn structure(&self) -> RepTag {
        (**self).structure()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn order(&self) -> u32 {
        (**self).order()
    }
    fn denominator(&self) -> u32 {
        (**self).denominator()
    }
    fn target_sector(&self) -> Sector {
        (**self).target_sector()
    }
    fn coeff(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector {
        (**self).coeff(u, e, w)
    }
    fn shift_slope(&self) -> FracExp {
        (**self).shift_slope()
    }
    fn target_depth(&self, w: &PbwVector) -> Option<FracExp> {
        (**self).target_depth(w)
    }
}
