//! Finite-dimensional models `k[x_1..x_m] / (relations + m^N)` of local
//! rings, with exact normal forms.
//!
//! Coordinates are the monomials of total degree `< N` in a local order
//! (degree first, grevlex-largest first within a degree). The span of all
//! truncated multiples `monomial * relation` is row-reduced once; pivot
//! monomials rewrite into the surviving basis monomials, which represent the
//! quotient. Each reduced row remembers the multiplier combination that
//! produced it, so reductions can also report a division witness
//! `p = nf(p) + sum_i q_i * relation_i` modulo `m^N`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::poly::{local_order, Monomial, Polynomial, Q, VarSet};

/// Default truncation heuristic: twice the largest generator degree plus a
/// safety margin, so stabilization checks at `N` and `N + 2` have room.
pub fn default_truncation(relations: &[Polynomial]) -> u32 {
    let max_deg = relations.iter().map(Polynomial::total_degree).max().unwrap_or(0);
    2 * max_deg + 4
}

/// Number of monomials of degree `< n` in `m` variables (dimension of the
/// free truncation).
pub fn free_truncation_dim(m: u32, n: u32) -> u64 {
    // C(m + n - 1, m)
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 0..m as u64 {
        num *= (n as u64) + i;
        den *= i + 1;
    }
    num / den
}

/// One reduced relation row: `e_pivot + tail`, with `tail` supported on
/// non-pivot coordinates only, plus (optionally) the multiplier combination
/// that generated it.
struct RelRow {
    tail: Vec<(usize, Q)>,
    witness: Option<Vec<Polynomial>>,
}

pub struct TruncatedLocalAlgebra {
    // rows are an implementation detail, so Debug is implemented by hand
    vars: VarSet,
    relations: Vec<Polynomial>,
    truncation: u32,
    track_witnesses: bool,
    coords: Vec<Monomial>,
    coord_of: HashMap<Monomial, usize>,
    rows: HashMap<usize, RelRow>,
    basis: Vec<usize>,
    basis_pos: Vec<Option<usize>>,
}

/// All monomials of total degree `< cutoff`, in the local coordinate order.
pub fn monomials_below(n_vars: usize, cutoff: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n_vars.max(1)];
    fn rec(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, var: usize, left: u32, n_vars: usize) {
        if var == n_vars {
            out.push(Monomial::from_exps(exps[..n_vars].to_vec()));
            return;
        }
        for e in 0..=left {
            exps[var] = e;
            rec(out, exps, var + 1, left - e, n_vars);
        }
        exps[var] = 0;
    }
    rec(&mut out, &mut exps, 0, cutoff.saturating_sub(1), n_vars);
    out.sort_by(local_order);
    out
}

/// `dst + c * (e_pivot + tail)` on sorted sparse vectors.
fn sparse_axpy(dst: &[(usize, Q)], c: &Q, src: &[(usize, Q)]) -> Vec<(usize, Q)> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = c * &src[j].1;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = &dst[i].1 + &(c * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl std::fmt::Debug for TruncatedLocalAlgebra {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        out.debug_struct("TruncatedLocalAlgebra")
            .field("vars", &self.vars.joined())
            .field(
                "relations",
                &self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            )
            .field("truncation", &self.truncation)
            .field("dim", &self.basis.len())
            .finish()
    }
}

impl TruncatedLocalAlgebra {
    /// Build the truncated quotient. Relations must be nonzero; a relation
    /// with a unit constant term simply collapses the quotient to the zero
    /// ring (empty basis), which is reported through `dim() == 0`.
    pub fn build(vars: &VarSet, relations: &[Polynomial], truncation: u32) -> Result<Self> {
        Self::build_inner(vars, relations, truncation, false)
    }

    /// Like `build`, but every reduction step also records the multiplier
    /// combination of relations it used, enabling `nf_with_witness`. Slower
    /// and memory-hungrier; only ask for it when division certificates are
    /// actually consumed.
    pub fn build_with_division_witnesses(
        vars: &VarSet,
        relations: &[Polynomial],
        truncation: u32,
    ) -> Result<Self> {
        Self::build_inner(vars, relations, truncation, true)
    }

    fn build_inner(
        vars: &VarSet,
        relations: &[Polynomial],
        truncation: u32,
        track_witnesses: bool,
    ) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::invalid("truncation must be at least 1"));
        }
        for r in relations {
            if r.is_zero() {
                return Err(Error::invalid("zero polynomial given as a relation"));
            }
            if r.vars() != vars {
                return Err(Error::AmbientMismatch {
                    expected: vars.joined(),
                    found: r.vars().joined(),
                });
            }
        }
        let coords = monomials_below(vars.len(), truncation);
        let coord_of: HashMap<Monomial, usize> = coords
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut alg = TruncatedLocalAlgebra {
            vars: vars.clone(),
            relations: relations.to_vec(),
            truncation,
            track_witnesses,
            coords,
            coord_of,
            rows: HashMap::new(),
            basis: Vec::new(),
            basis_pos: Vec::new(),
        };
        let multipliers = alg.coords.clone();
        for (ri, rel) in relations.iter().enumerate() {
            let ord = rel.min_degree();
            for m in &multipliers {
                if m.degree() + ord >= truncation {
                    continue;
                }
                let mono_poly = Polynomial::monomial(vars, m.clone(), Q::one());
                let prod = rel.mul(&mono_poly)?;
                let sparse = alg.to_sparse(&prod);
                if sparse.is_empty() {
                    continue;
                }
                let witness = track_witnesses.then(|| {
                    let mut w = vec![Polynomial::zero(vars); relations.len()];
                    w[ri] = mono_poly;
                    w
                });
                alg.insert_row(sparse, witness);
            }
        }
        let mut basis_pos = vec![None; alg.coords.len()];
        let mut basis = Vec::new();
        for c in 0..alg.coords.len() {
            if !alg.rows.contains_key(&c) {
                basis_pos[c] = Some(basis.len());
                basis.push(c);
            }
        }
        alg.basis = basis;
        alg.basis_pos = basis_pos;
        Ok(alg)
    }

    /// Free truncation `k[vars]/m^N`.
    pub fn free(vars: &VarSet, truncation: u32) -> Result<Self> {
        TruncatedLocalAlgebra::build(vars, &[], truncation)
    }

    fn to_sparse(&self, p: &Polynomial) -> Vec<(usize, Q)> {
        let mut out: Vec<(usize, Q)> = p
            .terms()
            .filter(|(m, _)| m.degree() < self.truncation)
            .map(|(m, c)| (self.coord_of[m], c.clone()))
            .collect();
        out.sort_by_key(|&(i, _)| i);
        out
    }

    fn insert_row(&mut self, mut vec: Vec<(usize, Q)>, mut witness: Option<Vec<Polynomial>>) {
        loop {
            let Some(&(lead, ref lead_c)) = vec.first() else {
                return;
            };
            if let Some(row) = self.rows.get(&lead) {
                // eliminate against the existing pivot row
                let c = -lead_c.clone();
                let mut src = vec![(lead, Q::one())];
                src.extend(row.tail.iter().cloned());
                if let (Some(w), Some(rw)) = (witness.as_mut(), row.witness.as_ref()) {
                    for (wi, rwi) in w.iter_mut().zip(rw) {
                        *wi = wi.add(&rwi.scaled(&c)).expect("same ambient");
                    }
                }
                vec = sparse_axpy(&vec, &c, &src);
            } else {
                // new pivot: normalize, then clear it from every stored tail
                let inv = lead_c.recip();
                let tail: Vec<(usize, Q)> =
                    vec[1..].iter().map(|(i, v)| (*i, v * &inv)).collect();
                let witness: Option<Vec<Polynomial>> =
                    witness.map(|ws| ws.iter().map(|w| w.scaled(&inv)).collect());
                let pivots: Vec<usize> = self.rows.keys().copied().collect();
                for p in pivots {
                    let row = self.rows.get(&p).unwrap();
                    let Ok(pos) = row.tail.binary_search_by_key(&lead, |&(i, _)| i) else {
                        continue;
                    };
                    let c = -row.tail[pos].1.clone();
                    let mut src = vec![(lead, Q::one())];
                    src.extend(tail.iter().cloned());
                    let row = self.rows.get_mut(&p).unwrap();
                    row.tail = sparse_axpy(&row.tail, &c, &src);
                    if let (Some(rw), Some(nw)) = (row.witness.as_mut(), witness.as_ref()) {
                        for (w, nwi) in rw.iter_mut().zip(nw) {
                            *w = w.add(&nwi.scaled(&c)).expect("same ambient");
                        }
                    }
                }
                self.rows.insert(lead, RelRow { tail, witness });
                return;
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Vector-space dimension of the truncated quotient.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Rebuild with the same variables and relations at a new truncation,
    /// preserving witness tracking.
    pub fn at_truncation(&self, truncation: u32) -> Result<Self> {
        Self::build_inner(&self.vars, &self.relations, truncation, self.track_witnesses)
    }

    pub fn basis_monomial(&self, b: usize) -> &Monomial {
        &self.coords[self.basis[b]]
    }

    pub fn basis_degree(&self, b: usize) -> u32 {
        self.basis_monomial(b).degree()
    }

    pub fn basis_poly(&self, b: usize) -> Polynomial {
        Polynomial::monomial(&self.vars, self.basis_monomial(b).clone(), Q::one())
    }

    /// Basis positions grouped by total degree (index = degree).
    pub fn basis_by_degree(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.truncation as usize];
        for b in 0..self.dim() {
            out[self.basis_degree(b) as usize].push(b);
        }
        out
    }

    fn check_ambient(&self, p: &Polynomial) -> Result<()> {
        if p.vars() != &self.vars {
            return Err(Error::AmbientMismatch {
                expected: self.vars.joined(),
                found: p.vars().joined(),
            });
        }
        Ok(())
    }

    /// Normal form of `p` as a dense coordinate vector over the basis.
    pub fn nf(&self, p: &Polynomial) -> Result<Vec<Q>> {
        self.check_ambient(p)?;
        let mut out = vec![Q::zero(); self.dim()];
        for (m, c) in p.terms() {
            if m.degree() >= self.truncation {
                continue;
            }
            self.accumulate_mono(m, c, &mut out);
        }
        Ok(out)
    }

    /// Add `c * nf(mono)` into `out`.
    fn accumulate_mono(&self, mono: &Monomial, c: &Q, out: &mut [Q]) {
        let idx = self.coord_of[mono];
        match self.basis_pos[idx] {
            Some(b) => out[b] += c,
            None => {
                let row = &self.rows[&idx];
                for (j, t) in &row.tail {
                    let b = self.basis_pos[*j].expect("tails live on basis coords");
                    out[b] -= c * t;
                }
            }
        }
    }

    /// Normal form together with the multiplier polynomials `q_i` such that
    /// `p - sum_i q_i * relation_i - nf(p)` has all terms of degree `>= N`.
    /// Requires a `build_with_division_witnesses` algebra.
    pub fn nf_with_witness(&self, p: &Polynomial) -> Result<(Vec<Q>, Vec<Polynomial>)> {
        if !self.track_witnesses {
            return Err(Error::invalid(
                "algebra was built without division witnesses",
            ));
        }
        self.check_ambient(p)?;
        let mut out = vec![Q::zero(); self.dim()];
        let mut wit = vec![Polynomial::zero(&self.vars); self.relations.len()];
        for (m, c) in p.terms() {
            if m.degree() >= self.truncation {
                continue;
            }
            let idx = self.coord_of[m];
            match self.basis_pos[idx] {
                Some(b) => out[b] += c,
                None => {
                    let row = &self.rows[&idx];
                    for (j, t) in &row.tail {
                        let b = self.basis_pos[*j].expect("tails live on basis coords");
                        out[b] -= c * t;
                    }
                    let rw = row.witness.as_ref().expect("witnesses tracked");
                    for (w, rwi) in wit.iter_mut().zip(rw) {
                        *w = w.add(&rwi.scaled(c)).expect("same ambient");
                    }
                }
            }
        }
        Ok((out, wit))
    }

    /// Normal form as a polynomial supported on basis monomials.
    pub fn nf_poly(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.vec_to_poly(&self.nf(p)?))
    }

    pub fn vec_to_poly(&self, v: &[Q]) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (b, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(self.basis_monomial(b).clone(), c.clone());
            }
        }
        out
    }

    pub fn is_zero_ring(&self) -> bool {
        self.dim() == 0
    }

    /// `nf(p * basis_b)` for each basis position, as sparse columns.
    pub fn mult_op_sparse(&self, p: &Polynomial) -> Result<Vec<Vec<(usize, Q)>>> {
        self.check_ambient(p)?;
        let mut cols = Vec::with_capacity(self.dim());
        for b in 0..self.dim() {
            let mono = self.basis_monomial(b);
            let mut dense = vec![Q::zero(); self.dim()];
            for (m, c) in p.terms() {
                let prod = m.mul(mono);
                if prod.degree() < self.truncation {
                    self.accumulate_mono(&prod, c, &mut dense);
                }
            }
            cols.push(
                dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect(),
            );
        }
        Ok(cols)
    }

    /// `nf(p * v)` for a coordinate vector `v`.
    pub fn mult_vec(&self, p: &Polynomial, v: &[Q]) -> Result<Vec<Q>> {
        self.check_ambient(p)?;
        let mut out = vec![Q::zero(); self.dim()];
        for (b, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mono = self.basis_monomial(b);
            for (m, c) in p.terms() {
                let prod = m.mul(mono);
                if prod.degree() < self.truncation {
                    self.accumulate_mono(&prod, &(c * coeff), &mut out);
                }
            }
        }
        Ok(out)
    }

    /// Subspace spanned by the ideal generated by `gens` (all products with
    /// basis monomials, reduced).
    pub fn ideal_span(&self, gens: &[Polynomial]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for g in gens {
            self.check_ambient(g)?;
            let g_nf = self.nf(g)?;
            for b in 0..self.dim() {
                let row = self.mult_vec(&self.basis_poly(b), &g_nf)?;
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Ok(Subspace::from_spanning(self.dim(), rows))
    }

    /// Check closure of a subspace under multiplication by every variable;
    /// returns the first escaping product, if any.
    pub fn ideal_closure_witness(&self, space: &Subspace) -> Result<Option<Polynomial>> {
        for row in space.basis() {
            for i in 0..self.vars.len() {
                let x = Polynomial::variable(&self.vars, i);
                let prod = self.mult_vec(&x, row)?;
                if !space.contains(&prod) {
                    return Ok(Some(self.vec_to_poly(&prod)));
                }
            }
        }
        Ok(None)
    }

    /// Span of all pairwise products of two subspaces (the product ideal when
    /// both are ideals).
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        let mut rows = Vec::new();
        for u in a.basis() {
            let u_poly = self.vec_to_poly(u);
            for v in b.basis() {
                let row = self.mult_vec(&u_poly, v)?;
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Ok(Subspace::from_spanning(self.dim(), rows))
    }

    /// Minimal generating set of an ideal-subspace: representatives of a
    /// basis of `I / m*I`, preferring lowest degree first (the canonical
    /// basis rows are already ordered that way).
    pub fn minimal_generators(&self, space: &Subspace) -> Result<Vec<Polynomial>> {
        if let Some(w) = self.ideal_closure_witness(space)? {
            return Err(Error::NotAnIdeal {
                witness: w.to_string(),
            });
        }
        let mut m_rows = Vec::new();
        for row in space.basis() {
            for i in 0..self.vars.len() {
                let x = Polynomial::variable(&self.vars, i);
                let prod = self.mult_vec(&x, row)?;
                if prod.iter().any(|v| !v.is_zero()) {
                    m_rows.push(prod);
                }
            }
        }
        let mut grown = Subspace::from_spanning(self.dim(), m_rows);
        let mut gens = Vec::new();
        for row in space.basis() {
            if grown.contains(row) {
                continue;
            }
            gens.push(self.vec_to_poly(row));
            grown = grown.sum(&Subspace::from_spanning(self.dim(), vec![row.clone()]));
        }
        debug_assert_eq!(grown.dim(), space.dim());
        Ok(gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &xy()).unwrap()
    }

    fn cusp(n: u32) -> TruncatedLocalAlgebra {
        TruncatedLocalAlgebra::build(&xy(), &[p("x^2+y^3")], n).unwrap()
    }

    /// Independent integer-arithmetic rank oracle (no rational RREF): count
    /// of linearly independent rows by fraction-free elimination.
    fn int_rank_oracle(mut rows: Vec<Vec<i64>>) -> usize {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let (a, b) = (rows[rank][c], rows[r][c]);
                    for j in 0..cols {
                        rows[r][j] = rows[r][j] * a - rows[rank][j] * b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn cusp_truncation_two_has_basis_1_x_y() {
        let alg = cusp(2);
        assert_eq!(alg.dim(), 3);
        let names: Vec<String> = (0..3).map(|b| alg.basis_poly(b).to_string()).collect();
        assert_eq!(names, vec!["1", "x", "y"]);
    }

    #[test]
    fn cusp_truncation_four_dimension_matches_row_reduction_oracle() {
        // coordinates: monomials of degree < 4 over (x, y), 10 of them;
        // relation multiples below degree 4: f, x*f, y*f truncate to
        // x^2+y^3, x^3, x^2*y. The oracle counts independent rows.
        let coords = monomials_below(2, 4);
        assert_eq!(coords.len(), 10);
        let idx = |ex: [u32; 2]| {
            coords
                .iter()
                .position(|m| m.exps() == ex)
                .expect("coordinate")
        };
        let mut rows = vec![vec![0i64; 10]; 3];
        rows[0][idx([2, 0])] = 1;
        rows[0][idx([0, 3])] = 1;
        rows[1][idx([3, 0])] = 1;
        rows[2][idx([2, 1])] = 1;
        let expected_dim = 10 - int_rank_oracle(rows);
        assert_eq!(expected_dim, 7);
        assert_eq!(cusp(4).dim(), 7);
    }

    #[test]
    fn free_truncation_dimension_formula() {
        for (m, n) in [(1u32, 4u32), (2, 5), (3, 4), (4, 3)] {
            let vars = VarSet::new((0..m).map(|i| format!("x{i}"))).unwrap();
            let alg = TruncatedLocalAlgebra::free(&vars, n).unwrap();
            assert_eq!(alg.dim() as u64, free_truncation_dim(m, n));
        }
        let vars = VarSet::new(["x"]).unwrap();
        assert_eq!(TruncatedLocalAlgebra::free(&vars, 4).unwrap().dim(), 4);
    }

    #[test]
    fn normal_form_kills_relation_and_high_degrees() {
        let alg = cusp(6);
        assert!(alg.nf(&p("x^2+y^3")).unwrap().iter().all(Q::is_zero));
        assert!(alg.nf(&p("y^6")).unwrap().iter().all(Q::is_zero));
        assert_eq!(alg.nf_poly(&p("x^2")).unwrap(), p("-y^3"));
    }

    #[test]
    fn normal_form_is_linear() {
        let alg = cusp(6);
        let (a, b) = (p("x^2+3*y"), p("y^4-x"));
        let lhs = alg.nf(&a.add(&b).unwrap()).unwrap();
        let rhs: Vec<Q> = alg
            .nf(&a)
            .unwrap()
            .iter()
            .zip(alg.nf(&b).unwrap())
            .map(|(u, v)| u + v)
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_respects_products() {
        // nf(p*q) depends only on the classes of p and q
        let alg = cusp(8);
        let (a, b) = (p("x^2"), p("x*y+1"));
        let a_red = alg.nf_poly(&a).unwrap();
        let lhs = alg.nf(&a.mul(&b).unwrap()).unwrap();
        let rhs = alg.nf(&a_red.mul(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn witness_reconstructs_reduction() {
        let alg =
            TruncatedLocalAlgebra::build_with_division_witnesses(&xy(), &[p("x^2+y^3")], 6)
                .unwrap();
        let f = p("x^2+y^3");
        let g = p("x^3+2*x*y^4-y^2");
        let (nf, wit) = alg.nf_with_witness(&g).unwrap();
        let reconstructed = alg
            .vec_to_poly(&nf)
            .add(&wit[0].mul(&f).unwrap())
            .unwrap();
        let diff = g.sub(&reconstructed).unwrap();
        assert!(diff.is_zero() || diff.min_degree() >= 6);
    }

    #[test]
    fn witness_request_without_tracking_is_rejected() {
        let alg = cusp(6);
        assert!(alg.nf_with_witness(&p("x^2")).is_err());
    }

    #[test]
    fn unit_relation_gives_zero_ring() {
        let alg = TruncatedLocalAlgebra::build(&xy(), &[p("1+x")], 4).unwrap();
        assert!(alg.is_zero_ring());
        assert_eq!(alg.dim(), 0);
    }

    #[test]
    fn ideal_span_and_membership() {
        let alg = cusp(8);
        let ideal = alg.ideal_span(&[p("x"), p("y^2")]).unwrap();
        assert!(ideal.contains(&alg.nf(&p("x*y^3")).unwrap()));
        assert!(ideal.contains(&alg.nf(&p("y^2")).unwrap()));
        assert!(!ideal.contains(&alg.nf(&p("y")).unwrap()));
        assert!(alg.ideal_closure_witness(&ideal).unwrap().is_none());
    }

    #[test]
    fn minimal_generators_recover_x_y2() {
        let alg = TruncatedLocalAlgebra::build(&xy(), &[p("x^2+y^5")], 8).unwrap();
        let ideal = alg.ideal_span(&[p("x"), p("y^2")]).unwrap();
        let gens = alg.minimal_generators(&ideal).unwrap();
        let strings: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(strings, vec!["x", "y^2"]);
    }

    #[test]
    fn minimal_generators_unit_ideal() {
        let alg = cusp(6);
        let ideal = alg.ideal_span(&[p("1")]).unwrap();
        let gens = alg.minimal_generators(&ideal).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "1");
    }

    #[test]
    fn minimal_generators_zero_ideal() {
        let alg = cusp(6);
        let zero = Subspace::zero(alg.dim());
        assert!(alg.minimal_generators(&zero).unwrap().is_empty());
    }

    #[test]
    fn non_ideal_subspace_rejected() {
        let alg = cusp(6);
        // span{x} alone is not closed under multiplication by y
        let row = alg.nf(&p("x")).unwrap();
        let space = Subspace::from_spanning(alg.dim(), vec![row]);
        assert!(matches!(
            alg.minimal_generators(&space),
            Err(Error::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn product_space_squares_maximal_ideal() {
        let alg = TruncatedLocalAlgebra::free(&xy(), 5).unwrap();
        let m = alg.ideal_span(&[p("x"), p("y")]).unwrap();
        let m2 = alg.product_space(&m, &m).unwrap();
        let expected = alg.ideal_span(&[p("x^2"), p("x*y"), p("y^2")]).unwrap();
        assert_eq!(m2, expected);
    }

    #[test]
    fn mult_op_matches_mult_vec() {
        let alg = cusp(6);
        let f = p("x*y+y^2");
        let cols = alg.mult_op_sparse(&f).unwrap();
        for b in 0..alg.dim() {
            let via_vec = {
                let mut e = vec![Q::zero(); alg.dim()];
                e[b] = q_int(1);
                alg.mult_vec(&f, &e).unwrap()
            };
            let mut via_op = vec![Q::zero(); alg.dim()];
            for (i, v) in &cols[b] {
                via_op[*i] = v.clone();
            }
            assert_eq!(via_vec, via_op);
        }
    }
}
