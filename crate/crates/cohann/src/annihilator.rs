//! Stable annihilators of matrix factorizations, and their intersections.
//!
//! An element `r` stably annihilates the cokernel module of a factorization
//! `(A, B)` exactly when multiplication by `r` lifts through the 2-periodic
//! resolution: there are matrices `g, h` with `A*g + h*B = r*I` and
//! `B*h + g*A = r*I`. Over a truncated local algebra both conditions become
//! one exact linear system; its solution space projected onto the `r`
//! coordinates is the stable annihilator ideal. A second, independent route
//! (`ext2_annihilator`) computes the annihilator of the homology of the
//! 2-periodic Hom complex using nothing but kernels and images, and the two
//! must agree. Intersecting stable annihilators over a complete catalog of
//! factorizations yields the cohomology annihilator ideal of the
//! hypersurface ring.
//!
//! Every computed ideal carries an honesty flag: `stabilized` records whether
//! recomputing at truncation `N + 2` reproduces the ideal generated by the
//! same minimal generators.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_below, TruncatedLocalAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};
use crate::mf::{MatrixFactorization, PolyMatrix};
use crate::poly::{Monomial, Polynomial, Q};

/// An ideal of a truncated local algebra: a coordinate subspace closed under
/// multiplication, together with a minimal generating set.
#[derive(Clone, Debug)]
pub struct TruncatedIdeal {
    algebra: Arc<TruncatedLocalAlgebra>,
    space: Subspace,
    generators: Vec<Polynomial>,
    stabilized: bool,
}

/// On-disk / CLI form of a `TruncatedIdeal`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealReport {
    pub generators: Vec<String>,
    pub dim_quotient: usize,
    pub truncation: u32,
    pub stabilized: bool,
}

impl TruncatedIdeal {
    /// Wrap a subspace, verifying closure under multiplication and
    /// extracting minimal generators.
    pub fn from_space(
        algebra: &Arc<TruncatedLocalAlgebra>,
        space: Subspace,
        stabilized: bool,
    ) -> Result<Self> {
        if space.ambient() != algebra.dim() {
            return Err(Error::invalid(format!(
                "subspace lives in dimension {}, algebra has dimension {}",
                space.ambient(),
                algebra.dim()
            )));
        }
        let generators = algebra.minimal_generators(&space)?;
        Ok(TruncatedIdeal {
            algebra: Arc::clone(algebra),
            space,
            generators,
            stabilized,
        })
    }

    /// The ideal generated by explicit polynomials. `stabilized` starts out
    /// false; see `check_generator_stability`.
    pub fn from_generators(
        algebra: &Arc<TruncatedLocalAlgebra>,
        gens: &[Polynomial],
    ) -> Result<Self> {
        let space = algebra.ideal_span(gens)?;
        TruncatedIdeal::from_space(algebra, space, false)
    }

    pub fn unit(algebra: &Arc<TruncatedLocalAlgebra>) -> Self {
        TruncatedIdeal::from_space(algebra, Subspace::full(algebra.dim()), true)
            .expect("the unit ideal is closed")
    }

    pub fn zero_ideal(algebra: &Arc<TruncatedLocalAlgebra>) -> Self {
        TruncatedIdeal::from_space(algebra, Subspace::zero(algebra.dim()), true)
            .expect("the zero ideal is closed")
    }

    /// Mark stabilized when the span of this ideal's generators at `N + 2`
    /// matches the span of the generating set it was built from.
    pub fn check_generator_stability(&mut self, original_gens: &[Polynomial]) -> Result<()> {
        self.stabilized = recheck_at_larger_truncation(&self.algebra, &self.generators, |a| {
            a.ideal_span(original_gens)
        })?;
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<TruncatedLocalAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.algebra.truncation()
    }

    pub fn is_stabilized(&self) -> bool {
        self.stabilized
    }

    pub fn is_unit(&self) -> bool {
        self.space.dim() == self.algebra.dim()
    }

    /// Codimension `dim_k(algebra / ideal)`.
    pub fn dim_quotient(&self) -> usize {
        self.algebra.dim() - self.space.dim()
    }

    pub fn contains_element(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.space.contains(&self.algebra.nf(p)?))
    }

    /// Same variables, relations, and truncation.
    pub fn same_model(&self, other: &TruncatedIdeal) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            || (self.algebra.vars() == other.algebra.vars()
                && self.algebra.relations() == other.algebra.relations()
                && self.algebra.truncation() == other.algebra.truncation())
    }

    fn require_same_model(&self, other: &TruncatedIdeal) -> Result<()> {
        if !self.same_model(other) {
            return Err(Error::invalid(
                "ideals live over different truncated algebras",
            ));
        }
        Ok(())
    }

    /// Equality as subspaces over the same model.
    pub fn equals(&self, other: &TruncatedIdeal) -> bool {
        self.same_model(other) && self.space == other.space
    }

    pub fn is_contained_in(&self, other: &TruncatedIdeal) -> Result<bool> {
        self.require_same_model(other)?;
        Ok(self.space.is_subspace_of(&other.space))
    }

    pub fn intersect(&self, other: &TruncatedIdeal) -> Result<TruncatedIdeal> {
        self.require_same_model(other)?;
        TruncatedIdeal::from_space(&self.algebra, self.space.intersect(&other.space), false)
    }

    pub fn sum(&self, other: &TruncatedIdeal) -> Result<TruncatedIdeal> {
        self.require_same_model(other)?;
        TruncatedIdeal::from_space(&self.algebra, self.space.sum(&other.space), false)
    }

    pub fn product(&self, other: &TruncatedIdeal) -> Result<TruncatedIdeal> {
        self.require_same_model(other)?;
        TruncatedIdeal::from_space(
            &self.algebra,
            self.algebra.product_space(&self.space, &other.space)?,
            false,
        )
    }

    pub fn power(&self, k: u32) -> Result<TruncatedIdeal> {
        let mut acc = TruncatedIdeal::unit(&self.algebra);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn report(&self) -> IdealReport {
        IdealReport {
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            dim_quotient: self.dim_quotient(),
            truncation: self.truncation(),
            stabilized: self.stabilized,
        }
    }
}

/// Decide `I^k` is contained in `J` within the shared truncation.
pub fn power_containment(i: &TruncatedIdeal, j: &TruncatedIdeal, k: u32) -> Result<bool> {
    i.power(k)?.is_contained_in(j)
}

#[derive(Clone, Copy, Debug)]
pub struct AnnihilatorOptions {
    /// Recompute at truncation `N + 2` and compare; roughly doubles the work.
    pub check_stabilization: bool,
}

impl Default for AnnihilatorOptions {
    fn default() -> Self {
        AnnihilatorOptions {
            check_stabilization: true,
        }
    }
}

impl AnnihilatorOptions {
    /// Skip the stabilization recheck; results are flagged `stabilized: false`.
    pub fn quick() -> Self {
        AnnihilatorOptions {
            check_stabilization: false,
        }
    }
}

/// Both matrices are over the algebra's variables, and `f` reduces to zero
/// there (so `coker(A)` really is a module over the quotient).
fn require_factorization_over(mf: &MatrixFactorization, alg: &TruncatedLocalAlgebra) -> Result<()> {
    if mf.vars() != alg.vars() {
        return Err(Error::AmbientMismatch {
            expected: alg.vars().joined(),
            found: mf.vars().joined(),
        });
    }
    if !alg.nf(mf.f())?.iter().all(Q::is_zero) {
        return Err(Error::invalid(format!(
            "algebra does not annihilate {}; include it among the relations",
            mf.f()
        )));
    }
    Ok(())
}

type SparseCols = Vec<Vec<(usize, Q)>>;

/// Multiplication operators of every matrix entry, as sparse columns.
fn matrix_ops(alg: &TruncatedLocalAlgebra, m: &PolyMatrix) -> Result<Vec<Vec<SparseCols>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| alg.mult_op_sparse(m.entry(i, j)))
                .collect()
        })
        .collect()
}

/// Rows of the joint lifting system `A*g + h*B = r*I`, `B*h + g*A = r*I`
/// restricted to coordinate blocks: unknown columns are the `g` entries over
/// positions `bg`, then the `h` entries over `bh`, then `r` over `be`;
/// equation rows range over matrix entries and output positions in `be`.
fn lifting_rows(
    n: usize,
    d: usize,
    ta: &[Vec<SparseCols>],
    tb: &[Vec<SparseCols>],
    bg: &[usize],
    bh: &[usize],
    be: &[usize],
) -> Vec<Vec<Q>> {
    let (ng, nh, ne) = (bg.len(), bh.len(), be.len());
    let goff = |u: usize, v: usize| (u * n + v) * ng;
    let base_h = n * n * ng;
    let hoff = |u: usize, v: usize| base_h + (u * n + v) * nh;
    let roff = base_h + n * n * nh;
    let cols = roff + ne;
    let mut loc = vec![usize::MAX; d];
    for (l, &g) in be.iter().enumerate() {
        loc[g] = l;
    }
    let eqrow = |eq: usize, i: usize, j: usize, lc: usize| ((eq * n + i) * n + j) * ne + lc;
    let mut rows = vec![vec![Q::zero(); cols]; 2 * n * n * ne];
    for u in 0..n {
        for v in 0..n {
            for (t, &gt) in bg.iter().enumerate() {
                let col = goff(u, v) + t;
                // g_{u,v} enters [A*g]_{i,v} through A_{i,u} ...
                for i in 0..n {
                    for (gc, coef) in &ta[i][u][gt] {
                        let lc = loc[*gc];
                        debug_assert_ne!(lc, usize::MAX, "graded block closed under products");
                        rows[eqrow(0, i, v, lc)][col] += coef;
                    }
                }
                // ... and [g*A]_{u,j} through A_{v,j}
                for j in 0..n {
                    for (gc, coef) in &ta[v][j][gt] {
                        let lc = loc[*gc];
                        rows[eqrow(1, u, j, lc)][col] += coef;
                    }
                }
            }
            for (t, &ht) in bh.iter().enumerate() {
                let col = hoff(u, v) + t;
                // h_{u,v} enters [h*B]_{u,j} through B_{v,j} ...
                for j in 0..n {
                    for (hc, coef) in &tb[v][j][ht] {
                        let lc = loc[*hc];
                        rows[eqrow(0, u, j, lc)][col] += coef;
                    }
                }
                // ... and [B*h]_{i,v} through B_{i,u}
                for i in 0..n {
                    for (hc, coef) in &tb[i][u][ht] {
                        let lc = loc[*hc];
                        rows[eqrow(1, i, v, lc)][col] += coef;
                    }
                }
            }
        }
    }
    for t in 0..ne {
        for i in 0..n {
            rows[eqrow(0, i, i, t)][roff + t] -= Q::one();
            rows[eqrow(1, i, i, t)][roff + t] -= Q::one();
        }
    }
    rows
}

/// Shared homogeneous degree of all nonzero entries, if there is one.
fn shared_entry_degree(m: &PolyMatrix) -> Option<u32> {
    let mut deg = None;
    for e in m.entries() {
        if e.is_zero() {
            continue;
        }
        if !e.is_homogeneous() {
            return None;
        }
        match deg {
            None => deg = Some(e.total_degree()),
            Some(d0) if d0 == e.total_degree() => {}
            _ => return None,
        }
    }
    deg
}

/// When the relations are homogeneous and each factor has entries of one
/// degree, the lifting system splits into independent blocks per total
/// degree; report those entry degrees.
fn graded_profile(mf: &MatrixFactorization, alg: &TruncatedLocalAlgebra) -> Option<(u32, u32)> {
    if !alg.relations().iter().all(Polynomial::is_homogeneous) {
        return None;
    }
    Some((shared_entry_degree(mf.a())?, shared_entry_degree(mf.b())?))
}

/// Solution space of the lifting system, projected to `r`.
fn sann_space(mf: &MatrixFactorization, alg: &TruncatedLocalAlgebra) -> Result<Subspace> {
    let d = alg.dim();
    let n = mf.size();
    if n == 0 || d == 0 {
        // the zero module (or the zero ring): annihilated by everything
        return Ok(Subspace::full(d));
    }
    let ta = matrix_ops(alg, mf.a())?;
    let tb = matrix_ops(alg, mf.b())?;
    if let Some((da, db)) = graded_profile(mf, alg) {
        let by_deg = alg.basis_by_degree();
        let empty = Vec::new();
        let mut scattered = Vec::new();
        for e in 0..alg.truncation() {
            let be = &by_deg[e as usize];
            if be.is_empty() {
                continue;
            }
            let bg = if e >= da { &by_deg[(e - da) as usize] } else { &empty };
            let bh = if e >= db { &by_deg[(e - db) as usize] } else { &empty };
            let rows = lifting_rows(n, d, &ta, &tb, bg, bh, be);
            let cols = n * n * (bg.len() + bh.len()) + be.len();
            let roff = cols - be.len();
            let r_cols: Vec<usize> = (roff..cols).collect();
            let proj = linalg::kernel(&rows, cols).project(&r_cols);
            for row in proj.basis() {
                let mut v = vec![Q::zero(); d];
                for (l, &pos) in be.iter().enumerate() {
                    v[pos] = row[l].clone();
                }
                scattered.push(v);
            }
        }
        Ok(Subspace::from_spanning(d, scattered))
    } else {
        let all: Vec<usize> = (0..d).collect();
        let rows = lifting_rows(n, d, &ta, &tb, &all, &all, &all);
        let cols = 2 * n * n * d + d;
        let r_cols: Vec<usize> = (2 * n * n * d..cols).collect();
        Ok(linalg::kernel(&rows, cols).project(&r_cols))
    }
}

/// Recompute at truncation `N + 2` and test whether the span of `gens` there
/// reproduces the recomputed space.
fn recheck_at_larger_truncation<F>(
    alg: &Arc<TruncatedLocalAlgebra>,
    gens: &[Polynomial],
    recompute: F,
) -> Result<bool>
where
    F: FnOnce(&Arc<TruncatedLocalAlgebra>) -> Result<Subspace>,
{
    let bigger = Arc::new(alg.at_truncation(alg.truncation() + 2)?);
    let again = recompute(&bigger)?;
    Ok(bigger.ideal_span(gens)? == again)
}

/// The stable annihilator `{r : A*g + h*B = r*I and B*h + g*A = r*I for some
/// g, h}` of the factorization's cokernel module, over the given truncated
/// algebra.
pub fn stable_annihilator(
    mf: &MatrixFactorization,
    alg: &Arc<TruncatedLocalAlgebra>,
    opts: AnnihilatorOptions,
) -> Result<TruncatedIdeal> {
    require_factorization_over(mf, alg)?;
    let space = sann_space(mf, alg)?;
    let mut ideal = TruncatedIdeal::from_space(alg, space, false)?;
    if opts.check_stabilization {
        ideal.stabilized = recheck_at_larger_truncation(alg, &ideal.generators, |a| {
            require_factorization_over(mf, a)?;
            sann_space(mf, a)
        })?;
    }
    Ok(ideal)
}

/// A witness pair for one ring element: `A*g + h*B = r*I` and
/// `B*h + g*A = r*I`, either as exact polynomial identities (`exact`) or
/// after normal form in the truncated algebra used for the test.
#[derive(Clone, Debug)]
pub struct HomotopyCertificate {
    pub r: Polynomial,
    pub g: PolyMatrix,
    pub h: PolyMatrix,
    pub exact: bool,
}

impl HomotopyCertificate {
    fn identities(&self, mf: &MatrixFactorization) -> Result<[(&'static str, PolyMatrix); 2]> {
        let r_id = PolyMatrix::scalar(mf.vars(), mf.size(), &self.r);
        let first = mf.a().mul(&self.g)?.add(&self.h.mul(mf.b())?)?.sub(&r_id)?;
        let second = mf.b().mul(&self.h)?.add(&self.g.mul(mf.a())?)?.sub(&r_id)?;
        Ok([("A*g + h*B", first), ("B*h + g*A", second)])
    }

    /// Check both identities as exact polynomial equations.
    pub fn verify_exact(&self, mf: &MatrixFactorization) -> Result<()> {
        for (name, diff) in self.identities(mf)? {
            if diff.entries().any(|e| !e.is_zero()) {
                return Err(Error::invalid(format!(
                    "certificate identity {name} = r*I fails exactly for r = {}",
                    self.r
                )));
            }
        }
        Ok(())
    }

    /// Check both identities after normal form in the algebra.
    pub fn verify_in(&self, mf: &MatrixFactorization, alg: &TruncatedLocalAlgebra) -> Result<()> {
        for (name, diff) in self.identities(mf)? {
            for e in diff.entries() {
                if !alg.nf(e)?.iter().all(Q::is_zero) {
                    return Err(Error::invalid(format!(
                        "certificate identity {name} = r*I fails in the truncated algebra for r = {}",
                        self.r
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of testing one element against one factorization.
#[derive(Clone, Debug)]
pub enum ElementTest {
    Certified(HomotopyCertificate),
    NotAnnihilating { truncation: u32 },
}

impl ElementTest {
    pub fn is_certified(&self) -> bool {
        matches!(self, ElementTest::Certified(_))
    }

    pub fn certificate(&self) -> Option<&HomotopyCertificate> {
        match self {
            ElementTest::Certified(c) => Some(c),
            ElementTest::NotAnnihilating { .. } => None,
        }
    }
}

/// Try to solve both lifting identities exactly, with `g, h` ranging over
/// polynomial matrices with entries of degree `< depth`.
fn exact_certificate(
    r: &Polynomial,
    mf: &MatrixFactorization,
    depth: u32,
) -> Result<Option<(PolyMatrix, PolyMatrix)>> {
    let vars = mf.vars();
    let n = mf.size();
    let monos = monomials_below(vars.len(), depth);
    let nm = monos.len();
    let col_of = |w: usize, u: usize, v: usize, t: usize| ((w * n + u) * n + v) * nm + t;
    let cols = 2 * n * n * nm;
    // rows are indexed by (equation, entry, monomial) of the expanded identity
    let mut row_of: HashMap<(u8, usize, usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    let mut rhs: Vec<(usize, Q)> = Vec::new();
    let index = |row_of: &mut HashMap<(u8, usize, usize, Monomial), usize>,
                 key: (u8, usize, usize, Monomial)| {
        let next = row_of.len();
        *row_of.entry(key).or_insert(next)
    };
    for u in 0..n {
        for v in 0..n {
            for (t, m) in monos.iter().enumerate() {
                let gcol = col_of(0, u, v, t);
                let hcol = col_of(1, u, v, t);
                for i in 0..n {
                    for (mu, c) in mf.a().entry(i, u).terms() {
                        let row = index(&mut row_of, (0, i, v, mu.mul(m)));
                        entries.push((row, gcol, c.clone()));
                    }
                    for (mu, c) in mf.b().entry(i, u).terms() {
                        let row = index(&mut row_of, (1, i, v, mu.mul(m)));
                        entries.push((row, hcol, c.clone()));
                    }
                }
                for j in 0..n {
                    for (mu, c) in mf.a().entry(v, j).terms() {
                        let row = index(&mut row_of, (1, u, j, mu.mul(m)));
                        entries.push((row, gcol, c.clone()));
                    }
                    for (mu, c) in mf.b().entry(v, j).terms() {
                        let row = index(&mut row_of, (0, u, j, mu.mul(m)));
                        entries.push((row, hcol, c.clone()));
                    }
                }
            }
        }
    }
    for i in 0..n {
        for (mu, c) in r.terms() {
            for eq in [0u8, 1] {
                let row = index(&mut row_of, (eq, i, i, mu.clone()));
                rhs.push((row, c.clone()));
            }
        }
    }
    let mut rows = vec![vec![Q::zero(); cols]; row_of.len()];
    for (rix, cix, v) in entries {
        rows[rix][cix] += v;
    }
    let mut b = vec![Q::zero(); row_of.len()];
    for (rix, v) in rhs {
        b[rix] += v;
    }
    let Some(solution) = linalg::solve(&rows, &b) else {
        return Ok(None);
    };
    let rebuild = |w: usize| -> Result<PolyMatrix> {
        let mut m = PolyMatrix::zero(vars, n, n);
        for u in 0..n {
            for v in 0..n {
                let mut p = Polynomial::zero(vars);
                for (t, mono) in monos.iter().enumerate() {
                    let c = &solution[col_of(w, u, v, t)];
                    if !c.is_zero() {
                        p.add_term(mono.clone(), c.clone());
                    }
                }
                m.set_entry(u, v, p);
            }
        }
        Ok(m)
    };
    Ok(Some((rebuild(0)?, rebuild(1)?)))
}

/// Test one ring element: first look for an exact polynomial certificate at
/// increasing degree bounds, then fall back to solving in the truncated
/// algebra. Certificates are re-verified by multiplication before being
/// returned.
pub fn element_test(
    r: &Polynomial,
    mf: &MatrixFactorization,
    alg: &Arc<TruncatedLocalAlgebra>,
) -> Result<ElementTest> {
    require_factorization_over(mf, alg)?;
    if r.vars() != mf.vars() {
        return Err(Error::AmbientMismatch {
            expected: mf.vars().joined(),
            found: r.vars().joined(),
        });
    }
    let max_entry_deg = mf
        .a()
        .entries()
        .chain(mf.b().entries())
        .map(Polynomial::total_degree)
        .max()
        .unwrap_or(0);
    let mut depths = vec![1, 2, 3, 5, 8, max_entry_deg.max(1)];
    depths.sort_unstable();
    depths.dedup();
    for depth in depths {
        if let Some((g, h)) = exact_certificate(r, mf, depth)? {
            let cert = HomotopyCertificate {
                r: r.clone(),
                g,
                h,
                exact: true,
            };
            cert.verify_exact(mf)?;
            return Ok(ElementTest::Certified(cert));
        }
    }
    // truncated fallback: same system as the annihilator solver, with the
    // r block moved to the right-hand side
    let d = alg.dim();
    let n = mf.size();
    let ta = matrix_ops(alg, mf.a())?;
    let tb = matrix_ops(alg, mf.b())?;
    let all: Vec<usize> = (0..d).collect();
    let full = lifting_rows(n, d, &ta, &tb, &all, &all, &all);
    let roff = 2 * n * n * d;
    let rc = alg.nf(r)?;
    let mut b = vec![Q::zero(); full.len()];
    let lhs: Vec<Vec<Q>> = full
        .into_iter()
        .enumerate()
        .map(|(rix, mut row)| {
            let r_block = row.split_off(roff);
            for (t, coef) in r_block.iter().enumerate() {
                // the r block holds -1 at matching diagonal rows
                b[rix] -= coef * &rc[t];
            }
            row
        })
        .collect();
    match linalg::solve(&lhs, &b) {
        Some(solution) => {
            let take = |w: usize| {
                let mut m = PolyMatrix::zero(alg.vars(), n, n);
                for u in 0..n {
                    for v in 0..n {
                        let off = (w * n * n + u * n + v) * d;
                        m.set_entry(u, v, alg.vec_to_poly(&solution[off..off + d]));
                    }
                }
                m
            };
            let cert = HomotopyCertificate {
                r: r.clone(),
                g: take(0),
                h: take(1),
                exact: false,
            };
            cert.verify_in(mf, alg)?;
            Ok(ElementTest::Certified(cert))
        }
        None => Ok(ElementTest::NotAnnihilating {
            truncation: alg.truncation(),
        }),
    }
}

/// Every partial derivative of `f` admits a homotopy certificate (the
/// product rule differentiates `A*B = f*I`); report whether the solver
/// confirms that for this factorization.
pub fn jacobian_containment_check(
    mf: &MatrixFactorization,
    alg: &Arc<TruncatedLocalAlgebra>,
) -> Result<bool> {
    for i in 0..mf.vars().len() {
        if !element_test(&mf.f().partial_derivative(i), mf, alg)?.is_certified() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Block-diagonal lift of an exact certificate to the double branched cover:
/// if `(g, h)` certifies `r` for `(A, B)`, then `(diag(h, g), diag(g, h))`
/// certifies `r` for the cover of `f + z^2`. The lift is re-verified
/// exactly.
pub fn lift_certificate(
    cert: &HomotopyCertificate,
    cover: &MatrixFactorization,
) -> Result<HomotopyCertificate> {
    if !cert.exact {
        return Err(Error::invalid(
            "only exact certificates lift to the branched cover",
        ));
    }
    let n = cert.g.rows();
    if cover.size() != 2 * n {
        return Err(Error::invalid(format!(
            "cover has size {}, expected {}",
            cover.size(),
            2 * n
        )));
    }
    let ext = cover.vars();
    let g = cert.g.embedded(ext)?;
    let h = cert.h.embedded(ext)?;
    let zero = PolyMatrix::zero(ext, n, n);
    let lifted = HomotopyCertificate {
        r: cert.r.embedded(ext)?,
        g: PolyMatrix::block2x2(&h, &zero, &zero, &g)?,
        h: PolyMatrix::block2x2(&g, &zero, &zero, &h)?,
        exact: true,
    };
    lifted.verify_exact(cover)?;
    Ok(lifted)
}

/// `coker(A)` presented inside `algebra^n`: the image of the
/// matrix-as-operator, plus a choice of complement coordinates.
struct CokernelPresentation<'a> {
    alg: &'a TruncatedLocalAlgebra,
    n: usize,
    image: Subspace,
    coords: Vec<usize>,
}

/// Columns of the endomorphism of `algebra^n` given by a polynomial matrix.
fn operator_columns(alg: &TruncatedLocalAlgebra, m: &PolyMatrix) -> Result<Vec<Vec<Q>>> {
    let d = alg.dim();
    let n = m.rows();
    let ops = matrix_ops(alg, m)?;
    let mut cols = Vec::with_capacity(n * d);
    for j in 0..n {
        for t in 0..d {
            let mut col = vec![Q::zero(); n * d];
            for (i, ops_row) in ops.iter().enumerate() {
                for (c, v) in &ops_row[j][t] {
                    col[i * d + c] = v.clone();
                }
            }
            cols.push(col);
        }
    }
    Ok(cols)
}

impl<'a> CokernelPresentation<'a> {
    fn build(alg: &'a TruncatedLocalAlgebra, mf: &MatrixFactorization) -> Result<Self> {
        let d = alg.dim();
        let n = mf.size();
        let image = Subspace::from_spanning(n * d, operator_columns(alg, mf.a())?);
        let mut in_image = vec![false; n * d];
        for &p in image.pivots() {
            in_image[p] = true;
        }
        let coords = (0..n * d).filter(|&c| !in_image[c]).collect();
        Ok(CokernelPresentation {
            alg,
            n,
            image,
            coords,
        })
    }

    fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Class of an ambient vector in cokernel coordinates.
    fn project(&self, v: &[Q]) -> Vec<Q> {
        let r = self.image.reduce(v);
        self.coords.iter().map(|&c| r[c].clone()).collect()
    }

    /// Multiplication by a ring element on the cokernel (well defined: the
    /// image is closed under the ring action).
    fn act(&self, p: &Polynomial, mvec: &[Q]) -> Result<Vec<Q>> {
        let d = self.alg.dim();
        let mut global = vec![Q::zero(); self.n * d];
        for (mc, val) in mvec.iter().enumerate() {
            if !val.is_zero() {
                global[self.coords[mc]] = val.clone();
            }
        }
        let mut out = vec![Q::zero(); self.n * d];
        for i in 0..self.n {
            let w = self.alg.mult_vec(p, &global[i * d..(i + 1) * d])?;
            out[i * d..(i + 1) * d].clone_from_slice(&w);
        }
        Ok(self.project(&out))
    }

    /// Columns of multiplication by `p` in cokernel coordinates.
    fn action_columns(&self, p: &Polynomial) -> Result<Vec<Vec<Q>>> {
        let q = self.dim();
        let mut cols = Vec::with_capacity(q);
        for mc in 0..q {
            let mut e = vec![Q::zero(); q];
            e[mc] = Q::one();
            cols.push(self.act(p, &e)?);
        }
        Ok(cols)
    }

    /// Componentwise ring action on `coker^n`.
    fn act_power(&self, p: &Polynomial, v: &[Q]) -> Result<Vec<Q>> {
        let q = self.dim();
        let mut out = Vec::with_capacity(self.n * q);
        for j in 0..self.n {
            out.extend(self.act(p, &v[j * q..(j + 1) * q])?);
        }
        Ok(out)
    }

    /// The precomposition operator `phi -> phi . m` on `Hom(algebra^n,
    /// coker) = coker^n`, as dense rows (block `(j, i)` is the action of
    /// `m[i][j]`).
    fn precomposition_rows(&self, m: &PolyMatrix) -> Result<Vec<Vec<Q>>> {
        let q = self.dim();
        let n = self.n;
        let mut rows = vec![vec![Q::zero(); n * q]; n * q];
        for i in 0..n {
            for j in 0..n {
                let cols = self.action_columns(m.entry(i, j))?;
                for (inp, col) in cols.iter().enumerate() {
                    for (out, v) in col.iter().enumerate() {
                        if !v.is_zero() {
                            rows[j * q + out][i * q + inp] = v.clone();
                        }
                    }
                }
            }
        }
        Ok(rows)
    }
}

/// Independent route to the same ideal: the annihilator of
/// `ker(.A) / im(.B)` on `Hom(algebra^n, coker(A))`, the degree-2 homology
/// of the 2-periodic Hom complex.
pub fn ext2_annihilator(
    mf: &MatrixFactorization,
    alg: &Arc<TruncatedLocalAlgebra>,
    opts: AnnihilatorOptions,
) -> Result<TruncatedIdeal> {
    require_factorization_over(mf, alg)?;
    let space = ext2_space(mf, alg)?;
    let mut ideal = TruncatedIdeal::from_space(alg, space, false)?;
    if opts.check_stabilization {
        ideal.stabilized = recheck_at_larger_truncation(alg, &ideal.generators, |a| {
            require_factorization_over(mf, a)?;
            ext2_space(mf, a)
        })?;
    }
    Ok(ideal)
}

fn ext2_space(mf: &MatrixFactorization, alg: &TruncatedLocalAlgebra) -> Result<Subspace> {
    let d = alg.dim();
    let n = mf.size();
    if n == 0 || d == 0 {
        return Ok(Subspace::full(d));
    }
    let cok = CokernelPresentation::build(alg, mf)?;
    let q = cok.dim();
    if q == 0 {
        // free module: no homology, annihilated by everything
        return Ok(Subspace::full(d));
    }
    let cycles = linalg::kernel(&cok.precomposition_rows(mf.a())?, n * q);
    let boundaries = {
        let rows = cok.precomposition_rows(mf.b())?;
        // columns of the operator span its image
        let mut cols = vec![vec![Q::zero(); n * q]; n * q];
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[c][r] = v.clone();
                }
            }
        }
        Subspace::from_spanning(n * q, cols)
    };
    debug_assert!(boundaries.is_subspace_of(&cycles));
    // homology representatives: extend the boundaries to a basis of the cycles
    let mut grown = boundaries.clone();
    let mut reps = Vec::new();
    for row in cycles.basis() {
        if !grown.contains(row) {
            reps.push(row.clone());
            grown = grown.sum(&Subspace::from_spanning(n * q, vec![row.clone()]));
        }
    }
    if reps.is_empty() {
        return Ok(Subspace::full(d));
    }
    // r annihilates the homology iff r * rep falls into the boundaries for
    // every representative: a linear condition on the coordinates of r
    let mut constraint_rows = Vec::new();
    for rep in &reps {
        let mut residuals = Vec::with_capacity(d);
        for b in 0..d {
            let moved = cok.act_power(&alg.basis_poly(b), rep)?;
            residuals.push(boundaries.reduce(&moved));
        }
        for c in 0..n * q {
            let row: Vec<Q> = residuals.iter().map(|res| res[c].clone()).collect();
            if row.iter().any(|v| !v.is_zero()) {
                constraint_rows.push(row);
            }
        }
    }
    Ok(linalg::kernel(&constraint_rows, d))
}

/// Intersection of stable annihilators over a list of factorizations: the
/// cohomology annihilator ideal when the list covers all indecomposables.
/// Stabilization is checked for the intersection as a whole.
pub fn cohomology_annihilator_catalog(
    members: &[MatrixFactorization],
    alg: &Arc<TruncatedLocalAlgebra>,
    opts: AnnihilatorOptions,
) -> Result<TruncatedIdeal> {
    if members.is_empty() {
        return Err(Error::invalid(
            "cannot intersect over an empty factorization list",
        ));
    }
    let solve = |a: &Arc<TruncatedLocalAlgebra>| -> Result<Subspace> {
        let mut acc = Subspace::full(a.dim());
        for m in members {
            require_factorization_over(m, a)?;
            acc = acc.intersect(&sann_space(m, a)?);
        }
        Ok(acc)
    };
    let space = solve(alg)?;
    let mut ideal = TruncatedIdeal::from_space(alg, space, false)?;
    if opts.check_stabilization {
        ideal.stabilized = recheck_at_larger_truncation(alg, &ideal.generators, solve)?;
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mf::generic_matrix;
    use crate::poly::VarSet;

    fn xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &xy()).unwrap()
    }

    /// Branch matrix `[[x, y^j], [y^(n+1-j), -x]]` over `x^2 + y^(n+1)`.
    fn branch_mf(n: u32, j: u32) -> MatrixFactorization {
        let f = p(&format!("x^2+y^{}", n + 1));
        let a = PolyMatrix::parse(
            &xy(),
            &[
                vec!["x".to_string(), format!("y^{j}")],
                vec![format!("y^{}", n + 1 - j), "-x".to_string()],
            ],
        )
        .unwrap();
        MatrixFactorization::new(f, a.clone(), a, format!("A_{n}:{j}")).unwrap()
    }

    fn algebra_for(f: &Polynomial, trunc: u32) -> Arc<TruncatedLocalAlgebra> {
        Arc::new(TruncatedLocalAlgebra::build(f.vars(), &[f.clone()], trunc).unwrap())
    }

    #[test]
    fn trivial_factorization_has_unit_annihilator() {
        let f = p("x^2+y^3");
        let alg = algebra_for(&f, 6);
        let mf = MatrixFactorization::trivial(&f, "free").unwrap();
        let solver = stable_annihilator(&mf, &alg, AnnihilatorOptions::default()).unwrap();
        assert!(solver.is_unit());
        assert!(solver.is_stabilized());
        assert_eq!(solver.generators().len(), 1);
        assert_eq!(solver.generators()[0].to_string(), "1");
        let oracle = ext2_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        assert!(oracle.is_unit());
    }

    #[test]
    fn oracle_fixes_cusp_annihilator_to_x_y() {
        // the independent homology route pins the answer ...
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        let oracle = ext2_annihilator(&mf, &alg, AnnihilatorOptions::default()).unwrap();
        let expected = alg.ideal_span(&[p("x"), p("y")]).unwrap();
        assert_eq!(oracle.space(), &expected);
        assert!(oracle.is_stabilized());
        // ... and the lifting solver must reproduce it
        let solver = stable_annihilator(&mf, &alg, AnnihilatorOptions::default()).unwrap();
        assert!(solver.equals(&oracle));
        assert!(solver.is_stabilized());
        let names: Vec<String> = solver.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(names, ["x", "y"]);
    }

    #[test]
    fn solver_matches_oracle_on_higher_branch_matrix() {
        let mf = branch_mf(4, 2);
        let alg = algebra_for(mf.f(), 10);
        let solver = stable_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        let oracle = ext2_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        assert!(solver.equals(&oracle));
    }

    #[test]
    fn node_annihilator_via_graded_blocks() {
        // x^2 + y^2 is homogeneous, so this exercises the per-degree path
        let mf = branch_mf(1, 1);
        let alg = algebra_for(mf.f(), 7);
        assert!(graded_profile(&mf, &alg).is_some());
        let solver = stable_annihilator(&mf, &alg, AnnihilatorOptions::default()).unwrap();
        let expected = alg.ideal_span(&[p("x"), p("y")]).unwrap();
        assert_eq!(solver.space(), &expected);
        assert!(solver.is_stabilized());
        let oracle = ext2_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        assert!(solver.equals(&oracle));
    }

    #[test]
    fn annihilator_invariant_under_swap_and_transpose() {
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        let base = stable_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        let swapped = stable_annihilator(&mf.syzygy(), &alg, AnnihilatorOptions::quick()).unwrap();
        let transposed = stable_annihilator(&mf.dual(), &alg, AnnihilatorOptions::quick()).unwrap();
        assert!(base.equals(&swapped));
        assert!(base.equals(&transposed));
    }

    #[test]
    fn direct_sum_annihilator_is_intersection() {
        let mf = branch_mf(1, 1);
        let alg = algebra_for(mf.f(), 6);
        let free = MatrixFactorization::trivial(mf.f(), "free").unwrap();
        let sum = mf.direct_sum(&free).unwrap();
        let whole = stable_annihilator(&sum, &alg, AnnihilatorOptions::quick()).unwrap();
        let left = stable_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        let right = stable_annihilator(&free, &alg, AnnihilatorOptions::quick()).unwrap();
        assert!(whole.equals(&left.intersect(&right).unwrap()));
    }

    #[test]
    fn unit_does_not_annihilate_the_cusp_module() {
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        match element_test(&p("1"), &mf, &alg).unwrap() {
            ElementTest::NotAnnihilating { truncation } => assert_eq!(truncation, 8),
            ElementTest::Certified(_) => panic!("1 must not stably annihilate a nonfree module"),
        }
    }

    #[test]
    fn partial_derivatives_have_exact_certificates() {
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        for i in 0..2 {
            let r = mf.f().partial_derivative(i);
            let out = element_test(&r, &mf, &alg).unwrap();
            let cert = out.certificate().expect("derivative certificate");
            assert!(cert.exact);
        }
        assert!(jacobian_containment_check(&mf, &alg).unwrap());
    }

    #[test]
    fn f_itself_is_certified() {
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        assert!(element_test(mf.f(), &mf, &alg).unwrap().is_certified());
    }

    #[test]
    fn exact_certificate_lifts_to_the_cover() {
        let mf = branch_mf(2, 1);
        let alg = algebra_for(mf.f(), 8);
        let out = element_test(&p("x"), &mf, &alg).unwrap();
        let cert = out.certificate().expect("x is in the annihilator");
        assert!(cert.exact);
        let cover = mf.knorrer_cover("z").unwrap();
        let lifted = lift_certificate(cert, &cover).unwrap();
        lifted.verify_exact(&cover).unwrap();
        assert_eq!(lifted.r.to_string(), "x");
    }

    #[test]
    fn fresh_cover_variable_is_certified_on_the_cover() {
        let cover = branch_mf(2, 1).knorrer_cover("z").unwrap();
        let big =
            Arc::new(TruncatedLocalAlgebra::build(cover.vars(), &[cover.f().clone()], 7).unwrap());
        let z = Polynomial::parse("z", cover.vars()).unwrap();
        let out = element_test(&z, &cover, &big).unwrap();
        let cert = out.certificate().expect("z certificate on the cover");
        assert!(cert.exact);
    }

    #[test]
    fn catalog_intersection_for_the_cusp_family() {
        let members = [branch_mf(2, 1), branch_mf(2, 2)];
        let alg = algebra_for(members[0].f(), 8);
        let ca =
            cohomology_annihilator_catalog(&members, &alg, AnnihilatorOptions::default()).unwrap();
        let expected = alg.ideal_span(&[p("x"), p("y")]).unwrap();
        assert_eq!(ca.space(), &expected);
        assert!(ca.is_stabilized());
        let report = ca.report();
        assert_eq!(report.generators, ["x", "y"]);
        assert_eq!(report.truncation, 8);
    }

    #[test]
    fn empty_catalog_is_rejected() {
        let alg = algebra_for(&p("x^2+y^3"), 6);
        assert!(cohomology_annihilator_catalog(&[], &alg, AnnihilatorOptions::quick()).is_err());
    }

    #[test]
    fn generic_2x2_determinantal_annihilator_is_the_entry_ideal() {
        let (vars, x) = generic_matrix(2).unwrap();
        let f = x.det().unwrap();
        let mf = MatrixFactorization::adjugate_partner(x, f.clone(), "det2").unwrap();
        let alg = Arc::new(TruncatedLocalAlgebra::build(&vars, &[f], 4).unwrap());
        assert!(graded_profile(&mf, &alg).is_some());
        let solver = stable_annihilator(&mf, &alg, AnnihilatorOptions::quick()).unwrap();
        let entries: Vec<Polynomial> = mf.a().entries().cloned().collect();
        let expected = alg.ideal_span(&entries).unwrap();
        assert_eq!(solver.space(), &expected);
    }

    #[test]
    fn algebra_must_annihilate_f() {
        let mf = branch_mf(2, 1);
        let wrong = Arc::new(TruncatedLocalAlgebra::free(&xy(), 3).unwrap());
        assert!(stable_annihilator(&mf, &wrong, AnnihilatorOptions::quick()).is_err());
    }

    #[test]
    fn power_containment_basics() {
        let alg = Arc::new(TruncatedLocalAlgebra::free(&xy(), 5).unwrap());
        let m = TruncatedIdeal::from_generators(&alg, &[p("x"), p("y")]).unwrap();
        let m2 = TruncatedIdeal::from_generators(&alg, &[p("x^2"), p("x*y"), p("y^2")]).unwrap();
        let skew = TruncatedIdeal::from_generators(&alg, &[p("x^2"), p("y")]).unwrap();
        assert!(power_containment(&m, &m, 1).unwrap());
        assert!(power_containment(&m, &m2, 2).unwrap());
        assert!(!power_containment(&m, &skew, 1).unwrap());
    }

    #[test]
    fn ideal_reports_serialize_with_fixed_field_order() {
        let alg = algebra_for(&p("x^2+y^3"), 6);
        let ideal = TruncatedIdeal::from_generators(&alg, &[p("x"), p("y")]).unwrap();
        let text = serde_json::to_string(&ideal.report()).unwrap();
        assert_eq!(
            text,
            r#"{"generators":["x","y"],"dim_quotient":1,"truncation":6,"stabilized":false}"#
        );
    }
}
