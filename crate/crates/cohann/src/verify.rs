//! Regression suites pinning the library's known values.
//!
//! The golden suite recomputes every headline result from scratch —
//! annihilator ideals of the `A_n` family, solver/oracle agreement,
//! certificate lifts to branched covers, semigroup and Milnor batteries,
//! the suspension identity, and a determinism probe — and reports one
//! verdict per check.  The property suite draws seeded random instances
//! for the structural laws that should hold on any input.  Both suites are
//! shared between `verify` on the command line and the integration tests.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::TruncatedLocalAlgebra;
use crate::annihilator::{
    cohomology_annihilator_catalog, element_test, ext2_annihilator, jacobian_containment_check,
    lift_certificate, power_containment, stable_annihilator, AnnihilatorOptions, IdealReport,
    TruncatedIdeal,
};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::invariants::{
    jacobian_ideal, milnor_number, suspension_report, InvariantReport, MilnorOutcome,
    SemigroupCurve,
};
use crate::linalg;
use crate::mf::MatrixFactorization;
use crate::poly::{q_int, Monomial, Polynomial, VarSet, Q};

/// Verdict of one named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "{} {}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.detail
        )
    }
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn run(id: &str, check: impl FnOnce() -> Result<String>) -> CheckResult {
    let outcome = catch_unwind(AssertUnwindSafe(check));
    let (passed, detail) = match outcome {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(e)) => (false, e.to_string()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panicked".to_string());
            (false, msg)
        }
    };
    CheckResult {
        id: id.to_string(),
        passed,
        detail,
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::invalid(msg)
}

const GOLDEN_CHECKS: &[(&str, fn() -> Result<String>)] = &[
    ("01-a-family-annihilators", check_a_family_annihilators),
    ("02-solver-oracle-agreement", check_solver_oracle_agreement),
    ("03-jacobian-certificates", check_jacobian_certificates),
    ("04-syzygy-dual-invariance", check_syzygy_dual_invariance),
    ("05-determinantal-annihilators", check_determinantal_annihilators),
    ("06-semigroup-formulas", check_semigroup_formulas),
    ("07-milnor-numbers", check_milnor_numbers),
    ("08-codimension-equals-delta", check_codimension_equals_delta),
    ("09-branched-cover-lifts", check_branched_cover_lifts),
    ("10-suspension-identity", check_suspension_identity),
    ("11-torus-ideal-identity", check_torus_ideal_identity),
    ("12-deterministic-reports", check_deterministic_reports),
];

/// The full golden suite, in a fixed order.
pub fn golden_suite() -> Vec<CheckResult> {
    GOLDEN_CHECKS.iter().map(|&(id, f)| run(id, f)).collect()
}

/// Identifiers of the golden checks, in execution order, without running them.
pub fn golden_suite_ids() -> Vec<String> {
    GOLDEN_CHECKS.iter().map(|(id, _)| id.to_string()).collect()
}

/// Run a single golden check by its identifier.
pub fn run_golden_check(id: &str) -> Option<CheckResult> {
    GOLDEN_CHECKS
        .iter()
        .find(|(name, _)| *name == id)
        .map(|&(name, f)| run(name, f))
}

/// Seeded random checks of the structural laws.
pub fn property_suite(seed: u64) -> Vec<CheckResult> {
    vec![
        run("p1-ideal-squares-shrink", move || {
            check_ideal_squares_shrink(seed)
        }),
        run("p2-maximal-ideal-square", check_maximal_ideal_square),
        run("p3-rank-nullity", move || check_rank_nullity(seed)),
        run("p4-print-parse-round-trip", move || {
            check_print_parse_round_trip(seed)
        }),
    ]
}

fn hypersurface_algebra(f: &Polynomial, truncation: u32) -> Result<Arc<TruncatedLocalAlgebra>> {
    Ok(Arc::new(TruncatedLocalAlgebra::build(
        f.vars(),
        std::slice::from_ref(f),
        truncation,
    )?))
}

/// Every working entry of the `x^2 + y^(n+1)` catalogs for `n <= max_n`,
/// paired with a truncated model of its hypersurface at `N = n + 6`.
fn family_members(max_n: u32) -> Result<Vec<(MatrixFactorization, Arc<TruncatedLocalAlgebra>)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let cat = Catalog::a_n(n)?;
        let alg = hypersurface_algebra(cat.f(), n + 6)?;
        for m in cat.entries() {
            out.push((m.clone(), alg.clone()));
        }
    }
    Ok(out)
}

fn det_member(n: usize, truncation: u32) -> Result<(MatrixFactorization, Arc<TruncatedLocalAlgebra>)> {
    let cat = Catalog::determinantal(n)?;
    let alg = hypersurface_algebra(cat.f(), truncation)?;
    Ok((cat.entries()[0].clone(), alg.clone()))
}

/// Intersection of the stable annihilators of the `A_n` entries, with
/// stabilization checked across the truncation step.
fn a_family_annihilator(n: u32) -> Result<TruncatedIdeal> {
    let cat = Catalog::a_n(n)?;
    let alg = hypersurface_algebra(cat.f(), n + 6)?;
    cohomology_annihilator_catalog(cat.entries(), &alg, AnnihilatorOptions::default())
}

fn check_a_family_annihilators() -> Result<String> {
    let mut notes = Vec::new();
    for n in [2u32, 4, 6] {
        let ideal = a_family_annihilator(n)?;
        let alg = ideal.algebra().clone();
        let x = Polynomial::variable(alg.vars(), 0);
        let y = Polynomial::variable(alg.vars(), 1);
        let expected = TruncatedIdeal::from_generators(&alg, &[x, y.pow(n / 2)])?;
        if !ideal.equals(&expected) {
            return Err(fail(format!(
                "n={n}: computed ({}) differs from (x, y^{})",
                ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                n / 2
            )));
        }
        if !ideal.is_stabilized() {
            return Err(fail(format!("n={n}: result not stable across truncations")));
        }
        notes.push(format!(
            "n={n}: ({})",
            ideal
                .generators()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    Ok(format!("{}; all stabilized", notes.join("; ")))
}

fn check_solver_oracle_agreement() -> Result<String> {
    let mut members = family_members(6)?;
    members.push(det_member(2, 4)?);
    let count = members.len();
    for (m, alg) in &members {
        let solved = stable_annihilator(m, alg, AnnihilatorOptions::quick())?;
        let oracle = ext2_annihilator(m, alg, AnnihilatorOptions::quick())?;
        if !solved.equals(&oracle) {
            return Err(fail(format!(
                "{}: homotopy solver and cohomology-action oracle disagree",
                m.label()
            )));
        }
    }
    Ok(format!(
        "homotopy solver matches the cohomology-action oracle on {count} factorizations"
    ))
}

fn check_jacobian_certificates() -> Result<String> {
    let mut members = family_members(6)?;
    members.push(det_member(2, 4)?);
    let mut partials = 0;
    for (m, alg) in &members {
        if !jacobian_containment_check(m, alg)? {
            return Err(fail(format!(
                "{}: some partial derivative of f failed the element test",
                m.label()
            )));
        }
        partials += m.vars().len();
    }
    Ok(format!(
        "{partials} partial derivatives certified across {} factorizations",
        members.len()
    ))
}

fn check_syzygy_dual_invariance() -> Result<String> {
    let mut members = family_members(6)?;
    members.push(det_member(2, 4)?);
    for (m, alg) in &members {
        let base = stable_annihilator(m, alg, AnnihilatorOptions::quick())?;
        let swapped = stable_annihilator(&m.syzygy(), alg, AnnihilatorOptions::quick())?;
        let dualed = stable_annihilator(&m.dual(), alg, AnnihilatorOptions::quick())?;
        if !base.equals(&swapped) {
            return Err(fail(format!("{}: annihilator changed under syzygy", m.label())));
        }
        if !base.equals(&dualed) {
            return Err(fail(format!("{}: annihilator changed under dual", m.label())));
        }
    }
    Ok(format!(
        "annihilators unchanged under syzygy and dual for {} factorizations",
        members.len()
    ))
}

fn check_determinantal_annihilators() -> Result<String> {
    // 2x2: the annihilator is exactly the ideal of the four entries.
    let (m2, alg2) = det_member(2, 4)?;
    let s2 = stable_annihilator(&m2, &alg2, AnnihilatorOptions::default())?;
    let entries2: Vec<Polynomial> = m2.a().entries().cloned().collect();
    let expected2 = TruncatedIdeal::from_generators(&alg2, &entries2)?;
    if !s2.equals(&expected2) {
        return Err(fail("2x2: annihilator is not the ideal of the four entries"));
    }
    if !s2.is_stabilized() {
        return Err(fail("2x2: entry-ideal answer did not stabilize"));
    }
    // 3x3: two-sided containment against the ideal of the 2x2 minors
    // (the adjugate's entries), at a fixed truncation.
    let (m3, alg3) = det_member(3, 4)?;
    let s3 = stable_annihilator(&m3, &alg3, AnnihilatorOptions::quick())?;
    let minors: Vec<Polynomial> = m3.b().entries().cloned().collect();
    let minor_ideal = TruncatedIdeal::from_generators(&alg3, &minors)?;
    if !minor_ideal.is_contained_in(&s3)? {
        return Err(fail("3x3: some 2x2 minor is not in the annihilator"));
    }
    if !s3.is_contained_in(&minor_ideal)? {
        return Err(fail("3x3: annihilator exceeds the ideal of 2x2 minors"));
    }
    Ok("2x2 equals its entry ideal (stabilized); 3x3 equals its minor ideal at truncation 4".into())
}

/// All coprime pairs `2 <= a < b <= 12`.
fn coprime_battery() -> Vec<(u64, u64)> {
    let mut pairs = Vec::new();
    for b in 3..=12u64 {
        for a in 2..b {
            if SemigroupCurve::new(a, b).is_ok() {
                pairs.push((a, b));
            }
        }
    }
    pairs
}

fn check_semigroup_formulas() -> Result<String> {
    let pairs = coprime_battery();
    for &(a, b) in &pairs {
        let c = SemigroupCurve::new(a, b)?;
        let product = (a - 1) * (b - 1);
        if c.frobenius_number() != product - 1 {
            return Err(fail(format!("({a},{b}): largest gap is not (a-1)(b-1)-1")));
        }
        if c.delta_invariant() != product / 2 {
            return Err(fail(format!("({a},{b}): gap count is not (a-1)(b-1)/2")));
        }
        if !c.is_symmetric() {
            return Err(fail(format!("({a},{b}): gap pairing is not symmetric")));
        }
    }
    Ok(format!(
        "largest gap, gap count, and symmetry verified on {} coprime pairs",
        pairs.len()
    ))
}

fn check_milnor_numbers() -> Result<String> {
    let pairs = coprime_battery();
    for &(a, b) in &pairs {
        let c = SemigroupCurve::new(a, b)?;
        let mu = match milnor_number(&c.polynomial(), (a + b) as u32)? {
            MilnorOutcome::Finite(mu) => mu,
            MilnorOutcome::NotFiniteAt { truncation } => {
                return Err(fail(format!(
                    "({a},{b}): Milnor number not settled at truncation {truncation}"
                )));
            }
        };
        if mu != (a - 1) * (b - 1) {
            return Err(fail(format!("({a},{b}): mu = {mu}, expected (a-1)(b-1)")));
        }
        if mu != 2 * c.delta_invariant() {
            return Err(fail(format!("({a},{b}): mu != 2*delta")));
        }
    }
    Ok(format!(
        "mu = (a-1)(b-1) = 2*delta on {} coprime pairs",
        pairs.len()
    ))
}

fn check_codimension_equals_delta() -> Result<String> {
    let mut notes = Vec::new();
    for n in [2u32, 4, 6] {
        let ideal = a_family_annihilator(n)?;
        let codim = ideal.dim_quotient() as u64;
        let delta = SemigroupCurve::new(2, (n + 1) as u64)?.delta_invariant();
        if codim != delta {
            return Err(fail(format!(
                "n={n}: annihilator codimension {codim} != delta {delta}"
            )));
        }
        notes.push(format!("n={n}: {codim}"));
    }
    Ok(format!(
        "annihilator codimension matches the gap count: {}",
        notes.join(", ")
    ))
}

fn check_branched_cover_lifts() -> Result<String> {
    let mut lifted = 0;
    for n in 1..=6u32 {
        let cat = Catalog::a_n(n)?;
        let alg = hypersurface_algebra(cat.f(), n + 6)?;
        let ca = cohomology_annihilator_catalog(cat.entries(), &alg, AnnihilatorOptions::quick())?;
        for m in cat.entries() {
            let cover = m.knorrer_cover("z")?;
            let cover_alg = hypersurface_algebra(cover.f(), n + 6)?;
            let z = Polynomial::variable(
                cover.vars(),
                cover.vars().index_of("z").expect("cover adds z"),
            );
            let z_verdict = element_test(&z, &cover, &cover_alg)?;
            if !z_verdict.is_certified() {
                return Err(fail(format!(
                    "{}: the new square-root variable failed the element test",
                    cover.label()
                )));
            }
            for g in ca.generators() {
                let verdict = element_test(g, m, &alg)?;
                let cert = verdict.certificate().ok_or_else(|| {
                    fail(format!("{}: generator {g} has no certificate", m.label()))
                })?;
                if !cert.exact {
                    return Err(fail(format!(
                        "{}: certificate for {g} is only truncated; cannot lift",
                        m.label()
                    )));
                }
                lift_certificate(cert, &cover)?;
                lifted += 1;
            }
        }
    }
    Ok(format!(
        "{lifted} annihilator generators lifted to branched covers with exact certificates"
    ))
}

fn check_suspension_identity() -> Result<String> {
    let mut count = 0;
    for (a, b) in [(2u64, 3u64), (2, 5), (3, 4), (3, 5)] {
        let c = SemigroupCurve::new(a, b)?;
        for l in [1u32, 2] {
            let report = suspension_report(&c, l, 10)?;
            if !report.mj_holds {
                return Err(fail(format!(
                    "({a},{b}) with {l} squares: mu = {}, delta = {}, identity fails",
                    report.mu.value, report.delta.value
                )));
            }
            if report.mu.value != (a - 1) * (b - 1) {
                return Err(fail(format!(
                    "({a},{b}) with {l} squares: adding squares changed the Milnor number"
                )));
            }
            count += 1;
        }
    }
    Ok(format!(
        "mu = 2*delta - r + 1 verified for {count} suspensions"
    ))
}

fn check_torus_ideal_identity() -> Result<String> {
    let vars = VarSet::new(["x", "y", "z", "w"])?;
    let f = Polynomial::parse("x*w^2 - y*z", &vars)?;
    let alg = TruncatedLocalAlgebra::build(&vars, std::slice::from_ref(&f), 6)?;
    let p = |s: &str| Polynomial::parse(s, &vars);
    let left = alg.ideal_span(&[p("w")?, p("z")?, p("y")?])?;
    let right = alg.ideal_span(&[p("x")?, p("y")?, p("z")?, p("w^2")?])?;
    let meet = left.intersect(&right);
    let named = alg.ideal_span(&[p("x*w")?, p("y")?, p("z")?, p("w^2")?])?;
    if meet != named {
        return Err(fail("(w,z,y) ∩ (x,y,z,w^2) is not (xw,y,z,w^2)"));
    }
    let jac = alg.ideal_span(&jacobian_ideal(&f))?;
    if named != jac {
        return Err(fail("(xw,y,z,w^2) is not the Jacobian ideal of x*w^2 - y*z"));
    }
    Ok("(w,z,y) ∩ (x,y,z,w^2) = (xw,y,z,w^2) = Jacobian ideal at truncation 6".into())
}

/// Recompute a bundle of reports from scratch and serialize them; used to
/// demonstrate byte-level determinism.
fn determinism_probe() -> Result<String> {
    #[derive(Serialize)]
    struct Probe {
        family: Vec<IdealReport>,
        determinantal: IdealReport,
        suspension: InvariantReport,
        gaps: Vec<u64>,
    }
    let family = [2u32, 4, 6]
        .iter()
        .map(|&n| Ok(a_family_annihilator(n)?.report()))
        .collect::<Result<Vec<_>>>()?;
    let (m2, alg2) = det_member(2, 4)?;
    let determinantal = stable_annihilator(&m2, &alg2, AnnihilatorOptions::quick())?.report();
    let suspension = suspension_report(&SemigroupCurve::new(2, 3)?, 1, 8)?;
    let gaps = SemigroupCurve::new(3, 5)?.gaps();
    Ok(serde_json::to_string_pretty(&Probe {
        family,
        determinantal,
        suspension,
        gaps,
    })
    .expect("serializable"))
}

fn check_deterministic_reports() -> Result<String> {
    let first = determinism_probe()?;
    let second = determinism_probe()?;
    if first != second {
        return Err(fail("two runs of the report bundle differ byte for byte"));
    }
    Ok(format!(
        "report bundle of {} bytes reproduced byte-identically",
        first.len()
    ))
}

fn random_poly(rng: &mut StdRng, vars: &VarSet, max_terms: usize, max_deg: u32) -> Polynomial {
    let mut p = Polynomial::zero(vars);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut exps = vec![0u32; vars.len()];
        let mut budget = rng.gen_range(0..=max_deg);
        for e in exps.iter_mut() {
            let d = rng.gen_range(0..=budget);
            *e = d;
            budget -= d;
        }
        let num = rng.gen_range(-4i64..=4);
        let den = rng.gen_range(1i64..=3);
        if num != 0 {
            p.add_term(Monomial::from_exps(exps), q_int(num) / q_int(den));
        }
    }
    p
}

fn check_ideal_squares_shrink(seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let vars = VarSet::new(["x", "y"])?;
    let f = Polynomial::parse("x^2 + y^3", &vars)?;
    let alg = hypersurface_algebra(&f, 6)?;
    let trials = 12;
    for t in 0..trials {
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(&mut rng, &vars, 3, 3))
            .collect();
        let ideal = TruncatedIdeal::from_generators(&alg, &gens)?;
        if !power_containment(&ideal, &ideal, 2)? {
            return Err(fail(format!("trial {t}: I^2 is not inside I")));
        }
    }
    Ok(format!("I^2 ⊆ I for {trials} random ideals (seed {seed})"))
}

fn check_maximal_ideal_square() -> Result<String> {
    let vars = VarSet::new(["x", "y"])?;
    let f = Polynomial::parse("x^2 + y^3", &vars)?;
    let alg = hypersurface_algebra(&f, 6)?;
    let p = |s: &str| Polynomial::parse(s, &vars);
    let m = TruncatedIdeal::from_generators(&alg, &[p("x")?, p("y")?])?;
    let squares = TruncatedIdeal::from_generators(&alg, &[p("x^2")?, p("x*y")?, p("y^2")?])?;
    if !power_containment(&m, &squares, 2)? {
        return Err(fail("(x,y)^2 is not inside (x^2, xy, y^2)"));
    }
    Ok("(x,y)^2 ⊆ (x^2, xy, y^2)".into())
}

fn check_rank_nullity(seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let trials = 20;
    for t in 0..trials {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let matrix: Vec<Vec<Q>> = (0..rows)
            .map(|_| (0..cols).map(|_| q_int(rng.gen_range(-3i64..=3))).collect())
            .collect();
        let rank = linalg::rank(&matrix);
        let nullity = linalg::kernel(&matrix, cols).dim();
        if rank + nullity != cols {
            return Err(fail(format!(
                "trial {t}: rank {rank} + nullity {nullity} != {cols} columns"
            )));
        }
    }
    Ok(format!(
        "rank + nullity = columns on {trials} random matrices (seed {seed})"
    ))
}

fn check_print_parse_round_trip(seed: u64) -> Result<String> {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x2545f4914f6cdd1d);
    let vars = VarSet::new(["x", "y", "z"])?;
    let trials = 30;
    for t in 0..trials {
        let p = random_poly(&mut rng, &vars, 5, 4);
        let back = Polynomial::parse(&p.to_string(), &vars)?;
        if back != p {
            return Err(fail(format!("trial {t}: {p} reparsed as {back}")));
        }
    }
    Ok(format!(
        "{trials} random polynomials survive print → parse (seed {seed})"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn property_suite_passes_with_seed_zero() {
        let results = property_suite(0);
        for r in &results {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn property_suite_is_seed_dependent_but_stable() {
        let a = property_suite(7);
        let b = property_suite(7);
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.detail, y.detail);
        }
    }

    #[test]
    fn check_lines_render_with_a_verdict_prefix() {
        let r = CheckResult {
            id: "00-demo".into(),
            passed: true,
            detail: "fine".into(),
        };
        assert_eq!(r.to_string(), "PASS 00-demo  fine");
    }

    #[test]
    fn harness_reports_panics_as_failures() {
        let r = run("00-boom", || panic!("exploded"));
        assert!(!r.passed);
        assert!(r.detail.contains("exploded"));
    }

    // The golden checks themselves run in the integration suite, where each
    // is printed and asserted individually; here we just pin the roster.
    #[test]
    fn golden_suite_roster_is_fixed() {
        let ids: Vec<String> = golden_suite_ids();
        assert_eq!(ids.len(), 12);
        assert!(ids[0].starts_with("01-"));
        assert!(ids[11].starts_with("12-"));
        assert!(run_golden_check("no-such-check").is_none());
    }
}
