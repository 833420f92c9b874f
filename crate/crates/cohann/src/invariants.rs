//! Numerical invariants of monomial plane-curve singularities `x^a + y^b`
//! and their suspensions: semigroup gaps, Frobenius numbers, delta
//! invariants, Jacobian ideals, Milnor numbers, and the Milnor-Jung
//! identity `mu = 2*delta - r + 1`.
//!
//! Everything here is exact and elementary: gaps by brute-force
//! enumeration, Milnor numbers as dimensions of truncated quotients with a
//! two-step stabilization window, and formula checks as integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::algebra::TruncatedLocalAlgebra;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSet};

/// The monomial curve `x^a + y^b` with `a, b > 1` coprime; its semigroup
/// `<a, b>` determines conductor-level data numerically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SemigroupCurve {
    a: u64,
    b: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl SemigroupCurve {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::invalid(format!(
                "exponents must both exceed 1, got ({a}, {b})"
            )));
        }
        if gcd(a, b) != 1 {
            return Err(Error::invalid(format!(
                "exponents must be coprime, got ({a}, {b})"
            )));
        }
        Ok(SemigroupCurve { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Is `k = a*s + b*t` solvable with non-negative `s, t`?
    fn representable(&self, k: u64) -> bool {
        (0..=k / self.a).any(|s| (k - self.a * s) % self.b == 0)
    }

    /// All non-negative integers outside the semigroup, by brute force; the
    /// search stops at `(a-1)(b-1)`, past which everything is representable.
    pub fn gaps(&self) -> Vec<u64> {
        let bound = (self.a - 1) * (self.b - 1);
        (0..bound).filter(|&k| !self.representable(k)).collect()
    }

    /// Largest integer not in the semigroup (largest gap).
    pub fn frobenius_number(&self) -> u64 {
        *self.gaps().last().expect("a != 1 so gaps exist")
    }

    /// Exhaustively check the pairing property: of any two numbers summing
    /// to the Frobenius number, exactly one lies in the semigroup.
    pub fn is_symmetric(&self) -> bool {
        let fr = self.frobenius_number();
        (0..=fr).all(|k| self.representable(k) != self.representable(fr - k))
    }

    /// Number of gaps: the delta invariant of the curve (the conductor's
    /// codimension in the normalization).
    pub fn delta_invariant(&self) -> u64 {
        self.gaps().len() as u64
    }

    /// `x^a + y^b` over fresh variables `(x, y)`.
    pub fn polynomial(&self) -> Polynomial {
        let vars = VarSet::new(["x", "y"]).expect("fixed names");
        let x = Polynomial::variable(&vars, 0);
        let y = Polynomial::variable(&vars, 1);
        x.pow(self.a as u32).add(&y.pow(self.b as u32)).expect("same ambient")
    }

    /// `x^a + y^b + z1^2 + ... + zl^2`, the `l`-fold suspension.
    pub fn suspension_polynomial(&self, l: u32) -> Polynomial {
        let mut f = self.polynomial();
        for i in 1..=l {
            let ext = f.vars().extended(&format!("z{i}")).expect("fresh name");
            let zi = ext.index_of(&format!("z{i}")).expect("present");
            f = f
                .embedded(&ext)
                .and_then(|g| g.add(&Polynomial::variable(&ext, zi).pow(2)))
                .expect("same ambient");
        }
        f
    }
}

/// All first partial derivatives, in variable order (zero entries kept).
pub fn jacobian_ideal(f: &Polynomial) -> Vec<Polynomial> {
    (0..f.vars().len()).map(|i| f.partial_derivative(i)).collect()
}

/// Outcome of a truncated Milnor-number computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilnorOutcome {
    Finite(u64),
    /// The dimension still changed between truncations `N - 2` and `N`:
    /// either the singularity is not isolated or `N` is too small.
    NotFiniteAt { truncation: u32 },
}

impl MilnorOutcome {
    pub fn finite(&self) -> Option<u64> {
        match self {
            MilnorOutcome::Finite(mu) => Some(*mu),
            MilnorOutcome::NotFiniteAt { .. } => None,
        }
    }
}

/// `dim_k k[x]/((f) + J_f + m^N)`, accepted only when the dimension agrees
/// with the one at `N - 2`.
pub fn milnor_number(f: &Polynomial, truncation: u32) -> Result<MilnorOutcome> {
    if !f.constant_term().eq(&crate::poly::q_int(0)) {
        return Err(Error::invalid(
            "Milnor numbers are computed at the origin; f must have zero constant term",
        ));
    }
    if truncation < 3 {
        return Err(Error::invalid(
            "stabilization needs truncation at least 3",
        ));
    }
    let mut relations: Vec<Polynomial> = Vec::new();
    if !f.is_zero() {
        relations.push(f.clone());
    }
    relations.extend(jacobian_ideal(f).into_iter().filter(|p| !p.is_zero()));
    let dim_at = |n: u32| -> Result<usize> {
        Ok(TruncatedLocalAlgebra::build(f.vars(), &relations, n)?.dim())
    };
    let small = dim_at(truncation - 2)?;
    let big = dim_at(truncation)?;
    if small == big {
        Ok(MilnorOutcome::Finite(big as u64))
    } else {
        Ok(MilnorOutcome::NotFiniteAt { truncation })
    }
}

/// `mu = 2*delta - r + 1`, in overflow-safe form.
pub fn milnor_jung_check(mu: u64, delta: u64, branches: u64) -> bool {
    mu + branches == 2 * delta + 1
}

/// Where a reported number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValueSource {
    Computed,
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotated {
    pub value: u64,
    pub source: ValueSource,
}

impl Annotated {
    pub fn computed(value: u64) -> Self {
        Annotated {
            value,
            source: ValueSource::Computed,
        }
    }

    pub fn supplied(value: u64) -> Self {
        Annotated {
            value,
            source: ValueSource::Supplied,
        }
    }
}

/// Milnor number, delta invariant, branch count, and the verdict of the
/// identity `mu = 2*delta - r + 1` relating them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub mu: Annotated,
    pub delta: Annotated,
    pub branches: Annotated,
    pub mj_holds: bool,
}

impl InvariantReport {
    pub fn assemble(mu: Annotated, delta: Annotated, branches: Annotated) -> Self {
        InvariantReport {
            mj_holds: milnor_jung_check(mu.value, delta.value, branches.value),
            mu,
            delta,
            branches,
        }
    }
}

/// Check the suspension identity for `x^a + y^b + z1^2 + ... + zl^2`: its
/// Milnor number against twice the curve's delta invariant (which equals the
/// codimension of the suspension's cohomology annihilator, since the
/// annihilator pulls back through double branched covers) with one branch.
pub fn suspension_report(c: &SemigroupCurve, l: u32, truncation: u32) -> Result<InvariantReport> {
    let f = c.suspension_polynomial(l);
    let mu = match milnor_number(&f, truncation)? {
        MilnorOutcome::Finite(mu) => mu,
        MilnorOutcome::NotFiniteAt { truncation } => {
            return Err(Error::invalid(format!(
                "Milnor number of {f} did not stabilize at truncation {truncation}; raise it"
            )));
        }
    };
    // coprime exponents: the curve is unibranch, and so is every suspension
    Ok(InvariantReport::assemble(
        Annotated::computed(mu),
        Annotated::computed(c.delta_invariant()),
        Annotated::computed(1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, vars: &[&str]) -> Polynomial {
        let vs = VarSet::new(vars.iter().copied()).unwrap();
        Polynomial::parse(s, &vs).unwrap()
    }

    #[test]
    fn gaps_by_brute_force() {
        assert_eq!(SemigroupCurve::new(2, 3).unwrap().gaps(), vec![1]);
        assert_eq!(SemigroupCurve::new(3, 5).unwrap().gaps(), vec![1, 2, 4, 7]);
        assert_eq!(SemigroupCurve::new(2, 5).unwrap().gaps(), vec![1, 3]);
    }

    #[test]
    fn frobenius_is_the_last_gap() {
        assert_eq!(SemigroupCurve::new(2, 3).unwrap().frobenius_number(), 1);
        assert_eq!(SemigroupCurve::new(3, 5).unwrap().frobenius_number(), 7);
        assert_eq!(SemigroupCurve::new(3, 4).unwrap().frobenius_number(), 5);
    }

    #[test]
    fn symmetry_of_gap_pairing() {
        for (a, b) in [(2, 3), (3, 5), (2, 7)] {
            assert!(SemigroupCurve::new(a, b).unwrap().is_symmetric());
        }
    }

    #[test]
    fn delta_counts_gaps() {
        assert_eq!(SemigroupCurve::new(2, 3).unwrap().delta_invariant(), 1);
        assert_eq!(SemigroupCurve::new(3, 4).unwrap().delta_invariant(), 3);
        assert_eq!(SemigroupCurve::new(3, 5).unwrap().delta_invariant(), 4);
    }

    #[test]
    fn bad_exponents_rejected() {
        assert!(SemigroupCurve::new(2, 4).is_err());
        assert!(SemigroupCurve::new(1, 5).is_err());
    }

    #[test]
    fn jacobian_of_cusp_and_torus_polynomials() {
        let cusp = poly("x^2+y^3", &["x", "y"]);
        let parts: Vec<String> = jacobian_ideal(&cusp).iter().map(|p| p.to_string()).collect();
        assert_eq!(parts, ["2*x", "3*y^2"]);
        let torus = poly("x*w^2-y*z", &["x", "y", "z", "w"]);
        let parts: Vec<String> = jacobian_ideal(&torus).iter().map(|p| p.to_string()).collect();
        assert_eq!(parts, ["w^2", "-z", "-y", "2*x*w"]);
    }

    #[test]
    fn milnor_numbers_of_monomial_curves() {
        let cusp = poly("x^2+y^3", &["x", "y"]);
        assert_eq!(milnor_number(&cusp, 8).unwrap(), MilnorOutcome::Finite(2));
        let bigger = poly("x^3+y^5", &["x", "y"]);
        assert_eq!(milnor_number(&bigger, 12).unwrap(), MilnorOutcome::Finite(8));
    }

    #[test]
    fn smooth_point_has_milnor_number_zero() {
        let line = poly("x", &["x"]);
        assert_eq!(milnor_number(&line, 5).unwrap(), MilnorOutcome::Finite(0));
    }

    #[test]
    fn double_line_is_not_isolated() {
        let f = poly("x^2", &["x", "y"]);
        assert_eq!(
            milnor_number(&f, 7).unwrap(),
            MilnorOutcome::NotFiniteAt { truncation: 7 }
        );
    }

    #[test]
    fn constant_term_rejected() {
        let f = poly("x+1", &["x"]);
        assert!(milnor_number(&f, 5).is_err());
    }

    #[test]
    fn milnor_jung_arithmetic() {
        assert!(milnor_jung_check(2, 1, 1));
        assert!(milnor_jung_check(1, 1, 2));
        assert!(!milnor_jung_check(2, 1, 2));
    }

    #[test]
    fn node_milnor_number_matches_two_branch_count() {
        // x^2 - y^2 is two crossing lines: mu = 1, delta = 1, r = 2
        let node = poly("x^2-y^2", &["x", "y"]);
        assert_eq!(milnor_number(&node, 6).unwrap(), MilnorOutcome::Finite(1));
        assert!(milnor_jung_check(1, 1, 2));
    }

    #[test]
    fn suspension_identity_for_the_cusp() {
        let c = SemigroupCurve::new(2, 3).unwrap();
        let report = suspension_report(&c, 1, 8).unwrap();
        assert_eq!(report.mu.value, 2);
        assert_eq!(report.delta.value, 1);
        assert_eq!(report.branches.value, 1);
        assert!(report.mj_holds);
        assert_eq!(report.mu.source, ValueSource::Computed);
    }

    #[test]
    fn suspension_identity_for_3_4() {
        let c = SemigroupCurve::new(3, 4).unwrap();
        let report = suspension_report(&c, 1, 10).unwrap();
        assert_eq!(report.mu.value, 6);
        assert!(report.mj_holds);
    }

    #[test]
    fn zero_suspensions_reduce_to_the_plane_curve() {
        let c = SemigroupCurve::new(2, 3).unwrap();
        let report = suspension_report(&c, 0, 8).unwrap();
        assert_eq!(report.mu.value, 2);
        assert!(report.mj_holds);
    }

    #[test]
    fn adding_a_square_preserves_the_milnor_number() {
        let c = SemigroupCurve::new(2, 5).unwrap();
        let base = milnor_number(&c.polynomial(), 10).unwrap().finite().unwrap();
        let once = milnor_number(&c.suspension_polynomial(1), 10)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(base, once);
        assert_eq!(base, 4);
    }

    #[test]
    fn report_serialization_shape() {
        let report = InvariantReport::assemble(
            Annotated::computed(2),
            Annotated::computed(1),
            Annotated::supplied(1),
        );
        let text = serde_json::to_string(&report).unwrap();
        assert_eq!(
            text,
            r#"{"mu":{"value":2,"source":"computed"},"delta":{"value":1,"source":"computed"},"branches":{"value":1,"source":"supplied"},"mj_holds":true}"#
        );
    }
}
