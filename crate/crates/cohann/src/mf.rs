//! Matrix factorizations `(A, B)` of a hypersurface polynomial `f`: pairs of
//! square matrices with `A*B = B*A = f*I` as an exact polynomial identity.
//!
//! The pair encodes a 2-periodic free resolution of `coker(A)` over the
//! hypersurface ring, so all downstream computation consumes the matrices
//! directly; no abstract module object exists. Constructors re-validate their
//! output, and the double branched cover produces the standard `2n x 2n`
//! block factorization of `f + z^2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSet};

/// Dense matrix of exact polynomials over one ambient variable list.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    vars: VarSet,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn new(vars: &VarSet, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if e.vars() != vars {
                return Err(Error::AmbientMismatch {
                    expected: vars.joined(),
                    found: e.vars().joined(),
                });
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(vars: &VarSet, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged matrix rows"));
        }
        PolyMatrix::new(vars, r, c, rows.into_iter().flatten().collect())
    }

    /// Parse a matrix of polynomial strings.
    pub fn parse<S: AsRef<str>>(vars: &VarSet, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| Polynomial::parse(s.as_ref(), vars))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(vars, parsed)
    }

    pub fn zero(vars: &VarSet, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &VarSet, n: usize) -> Self {
        PolyMatrix::scalar(vars, n, &Polynomial::one(vars))
    }

    /// `p * I_n`.
    pub fn scalar(vars: &VarSet, n: usize, p: &Polynomial) -> Self {
        let mut m = PolyMatrix::zero(vars, n, n);
        for i in 0..n {
            m.entries[i * n + i] = p.clone();
        }
        m
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter()
    }

    pub fn map_entries<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> Self {
        PolyMatrix {
            vars: self.entries.first().map(|e| f(e).vars().clone()).unwrap_or_else(|| self.vars.clone()),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_same_shape(&self, other: &PolyMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::invalid(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(&self.vars, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map_entries(Polynomial::neg)
    }

    pub fn scale(&self, p: &Polynomial) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.mul(p))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(&self.vars, self.rows, self.cols, entries)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&self.vars);
                for k in 0..self.cols {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                out.set_entry(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set_entry(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    /// Assemble `[[tl, tr], [bl, br]]`.
    pub fn block2x2(
        tl: &PolyMatrix,
        tr: &PolyMatrix,
        bl: &PolyMatrix,
        br: &PolyMatrix,
    ) -> Result<PolyMatrix> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::invalid("incompatible block shapes"));
        }
        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        let mut out = PolyMatrix::zero(&tl.vars, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = match (i < tl.rows, j < tl.cols) {
                    (true, true) => tl.entry(i, j),
                    (true, false) => tr.entry(i, j - tl.cols),
                    (false, true) => bl.entry(i - tl.rows, j),
                    (false, false) => br.entry(i - tl.rows, j - tl.cols),
                };
                out.set_entry(i, j, e.clone());
            }
        }
        Ok(out)
    }

    /// Delete row `i` and column `j`.
    fn minor_matrix(&self, i: usize, j: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in 0..self.rows {
            if r == i {
                continue;
            }
            for c in 0..self.cols {
                if c == j {
                    continue;
                }
                entries.push(self.entry(r, c).clone());
            }
        }
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        match self.rows {
            0 => Ok(Polynomial::one(&self.vars)),
            1 => Ok(self.entry(0, 0).clone()),
            _ => {
                let mut acc = Polynomial::zero(&self.vars);
                for j in 0..self.cols {
                    let cof = self.entry(0, j).mul(&self.minor_matrix(0, j).det()?)?;
                    acc = if j % 2 == 0 {
                        acc.add(&cof)?
                    } else {
                        acc.sub(&cof)?
                    };
                }
                Ok(acc)
            }
        }
    }

    /// Adjugate (transposed cofactor matrix): `A * adj(A) = adj(A) * A = det(A) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::invalid("adjugate of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            return Ok(PolyMatrix::identity(&self.vars, 1));
        }
        let mut out = PolyMatrix::zero(&self.vars, n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor_matrix(i, j).det()?;
                let signed = if (i + j) % 2 == 0 { cof } else { cof.neg() };
                out.set_entry(j, i, signed);
            }
        }
        Ok(out)
    }

    /// Re-express every entry over a superset variable list.
    pub fn embedded(&self, bigger: &VarSet) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embedded(bigger))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(bigger, self.rows, self.cols, entries)
    }

    fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).to_string()).collect())
            .collect()
    }
}

impl std::fmt::Display for PolyMatrix {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .to_strings()
            .iter()
            .map(|r| r.join(", "))
            .collect();
        write!(out, "[{}]", rows.join("; "))
    }
}

/// A validated pair `(A, B)` with `A*B = B*A = f*I`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization {
    f: Polynomial,
    a: PolyMatrix,
    b: PolyMatrix,
    label: String,
}

impl MatrixFactorization {
    /// Validate and wrap. Reports the first offending entry of whichever
    /// product differs from `f*I`.
    pub fn new(f: Polynomial, a: PolyMatrix, b: PolyMatrix, label: impl Into<String>) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::invalid(format!(
                "factors must be square of equal size, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if a.vars() != f.vars() || b.vars() != f.vars() {
            return Err(Error::AmbientMismatch {
                expected: f.vars().joined(),
                found: if a.vars() != f.vars() { a.vars() } else { b.vars() }.joined(),
            });
        }
        let n = a.rows();
        for (which, prod) in [("A*B", a.mul(&b)?), ("B*A", b.mul(&a)?)] {
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j {
                        f.clone()
                    } else {
                        Polynomial::zero(f.vars())
                    };
                    if prod.entry(i, j) != &want {
                        return Err(Error::NotAFactorization {
                            f: f.to_string(),
                            which,
                            row: i,
                            col: j,
                            got: prod.entry(i, j).to_string(),
                            want: want.to_string(),
                        });
                    }
                }
            }
        }
        Ok(MatrixFactorization {
            f,
            a,
            b,
            label: label.into(),
        })
    }

    /// The 1x1 factorization `([f], [1])` of `f`.
    pub fn trivial(f: &Polynomial, label: impl Into<String>) -> Result<Self> {
        let vars = f.vars().clone();
        let a = PolyMatrix::new(&vars, 1, 1, vec![f.clone()])?;
        let b = PolyMatrix::identity(&vars, 1);
        MatrixFactorization::new(f.clone(), a, b, label)
    }

    /// The size-0 factorization, the unit for direct sums.
    pub fn empty(f: &Polynomial) -> Self {
        let vars = f.vars().clone();
        MatrixFactorization {
            f: f.clone(),
            a: PolyMatrix::zero(&vars, 0, 0),
            b: PolyMatrix::zero(&vars, 0, 0),
            label: "0".into(),
        }
    }

    /// Partner `B = adj(A)`, valid exactly when `det(A) = f`.
    pub fn adjugate_partner(a: PolyMatrix, f: Polynomial, label: impl Into<String>) -> Result<Self> {
        let det = a.det()?;
        if det != f {
            return Err(Error::DeterminantMismatch {
                got: det.to_string(),
                want: f.to_string(),
            });
        }
        let b = a.adjugate()?;
        MatrixFactorization::new(f, a, b, label)
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn vars(&self) -> &VarSet {
        self.f.vars()
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Swap the pair: `(A,B) -> (B,A)`, the cokernel's first syzygy.
    pub fn syzygy(&self) -> MatrixFactorization {
        MatrixFactorization {
            f: self.f.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            label: format!("syz({})", self.label),
        }
    }

    /// Transpose both matrices, the dual module's factorization.
    pub fn dual(&self) -> MatrixFactorization {
        MatrixFactorization {
            f: self.f.clone(),
            a: self.a.transpose(),
            b: self.b.transpose(),
            label: format!("dual({})", self.label),
        }
    }

    /// Block-diagonal sum; both factorizations must share `f`.
    pub fn direct_sum(&self, other: &MatrixFactorization) -> Result<MatrixFactorization> {
        if self.f != other.f {
            return Err(Error::invalid(format!(
                "direct sum needs matching polynomials, got {} and {}",
                self.f, other.f
            )));
        }
        if other.size() == 0 {
            return Ok(self.clone());
        }
        if self.size() == 0 {
            return Ok(other.clone());
        }
        let vars = self.vars();
        let z_tr = PolyMatrix::zero(vars, self.size(), other.size());
        let z_bl = PolyMatrix::zero(vars, other.size(), self.size());
        let a = PolyMatrix::block2x2(&self.a, &z_tr, &z_bl, &other.a)?;
        let b = PolyMatrix::block2x2(&self.b, &z_tr, &z_bl, &other.b)?;
        MatrixFactorization::new(
            self.f.clone(),
            a,
            b,
            format!("{}(+){}", self.label, other.label),
        )
    }

    /// Double branched cover: the `2n x 2n` factorization
    /// `([[B, -zI],[zI, A]], [[A, zI],[-zI, B]])` of `f + z^2` over the
    /// ambient extended by the fresh variable `z`.
    pub fn knorrer_cover(&self, z: &str) -> Result<MatrixFactorization> {
        let ext = self.vars().extended(z)?;
        let zi = ext.index_of(z).expect("fresh variable present");
        let zp = Polynomial::variable(&ext, zi);
        let f_cover = self.f.embedded(&ext)?.add(&zp.pow(2))?;
        let a_ext = self.a.embedded(&ext)?;
        let b_ext = self.b.embedded(&ext)?;
        let n = self.size();
        let z_id = PolyMatrix::scalar(&ext, n, &zp);
        let a = PolyMatrix::block2x2(&b_ext, &z_id.neg(), &z_id, &a_ext)?;
        let b = PolyMatrix::block2x2(&a_ext, &z_id, &z_id.neg(), &b_ext)?;
        MatrixFactorization::new(f_cover, a, b, format!("{}#{}", self.label, z))
    }
}

/// The ring-level data of an `m`-branched cover: `f` plus a pure power of a
/// fresh variable.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchedCoverRing {
    base: Polynomial,
    new_var: String,
    exponent: u32,
    cover: Polynomial,
}

impl BranchedCoverRing {
    pub fn new(base: &Polynomial, exponent: u32, new_var: &str) -> Result<Self> {
        if exponent < 2 {
            return Err(Error::invalid(format!(
                "branched cover exponent must be at least 2, got {exponent}"
            )));
        }
        let ext = base.vars().extended(new_var)?;
        let idx = ext.index_of(new_var).expect("fresh variable present");
        let cover = base
            .embedded(&ext)?
            .add(&Polynomial::variable(&ext, idx).pow(exponent))?;
        Ok(BranchedCoverRing {
            base: base.clone(),
            new_var: new_var.to_string(),
            exponent,
            cover,
        })
    }

    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn new_var(&self) -> &str {
        &self.new_var
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn cover_polynomial(&self) -> &Polynomial {
        &self.cover
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PartnerDoc {
    Matrix(Vec<Vec<String>>),
    Keyword(String),
}

/// On-disk form: polynomials as strings, `B` either explicit or the keyword
/// `"adjugate"`.
#[derive(Serialize, Deserialize)]
pub struct MfDoc {
    pub vars: Vec<String>,
    pub f: String,
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: PartnerDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl MfDoc {
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }
}

impl MatrixFactorization {
    pub fn to_doc(&self) -> MfDoc {
        MfDoc {
            vars: self.vars().names().to_vec(),
            f: self.f.to_string(),
            a: self.a.to_strings(),
            b: PartnerDoc::Matrix(self.b.to_strings()),
            label: if self.label.is_empty() {
                None
            } else {
                Some(self.label.clone())
            },
        }
    }

    pub fn from_doc(doc: &MfDoc) -> Result<Self> {
        let vars = VarSet::new(doc.vars.iter().cloned())?;
        let f = Polynomial::parse(&doc.f, &vars)?;
        let a = PolyMatrix::parse(&vars, &doc.a)?;
        let label = doc.label.clone().unwrap_or_default();
        match &doc.b {
            PartnerDoc::Matrix(rows) => {
                let b = PolyMatrix::parse(&vars, rows)?;
                MatrixFactorization::new(f, a, b, label)
            }
            PartnerDoc::Keyword(k) if k == "adjugate" => {
                MatrixFactorization::adjugate_partner(a, f, label)
            }
            PartnerDoc::Keyword(k) => Err(Error::invalid(format!(
                "unknown partner keyword {k:?} (expected \"adjugate\" or a matrix)"
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MfDoc = serde_json::from_str(text)?;
        MatrixFactorization::from_doc(&doc)
    }
}

/// Generic `n x n` matrix of indeterminates `x11..xnn` together with its
/// determinant; the building block for determinantal examples.
pub fn generic_matrix(n: usize) -> Result<(VarSet, PolyMatrix)> {
    let names: Vec<String> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| format!("x{i}{j}")))
        .collect();
    let vars = VarSet::new(names)?;
    let entries: Vec<Polynomial> = (0..n * n).map(|k| Polynomial::variable(&vars, k)).collect();
    let m = PolyMatrix::new(&vars, n, n, entries)?;
    Ok((vars, m))
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

    fn cusp_mf() -> MatrixFactorization {
        // A_1 branch matrix over x^2 + y^3
        let a = PolyMatrix::parse(&xy(), &[vec!["x", "y"], vec!["y^2", "-x"]]).unwrap();
        MatrixFactorization::new(p("x^2+y^3"), a.clone(), a, "A_2:1").unwrap()
    }

    #[test]
    fn curve_matrix_validates() {
        let m = cusp_mf();
        assert_eq!(m.size(), 2);
        assert_eq!(m.label(), "A_2:1");
    }

    #[test]
    fn trivial_factorization_validates_and_swaps() {
        let m = MatrixFactorization::trivial(&p("x^2+y^3"), "free").unwrap();
        assert_eq!(m.a().entry(0, 0), &p("x^2+y^3"));
        assert_eq!(m.b().entry(0, 0), &p("1"));
        let s = m.syzygy();
        assert_eq!(s.a().entry(0, 0), &p("1"));
        assert_eq!(s.b().entry(0, 0), &p("x^2+y^3"));
    }

    #[test]
    fn bad_product_reports_first_entry() {
        let a = PolyMatrix::parse(&xy(), &[vec!["x"]]).unwrap();
        let err = MatrixFactorization::new(p("x^2+y^3"), a.clone(), a, "bad").unwrap_err();
        match err {
            Error::NotAFactorization { which, row, col, got, .. } => {
                assert_eq!((which, row, col), ("A*B", 0, 0));
                assert_eq!(got, "x^2");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn syzygy_and_dual_are_involutions() {
        let m = cusp_mf();
        let s2 = m.syzygy().syzygy();
        assert_eq!(s2.a(), m.a());
        assert_eq!(s2.b(), m.b());
        let d2 = m.dual().dual();
        assert_eq!(d2.a(), m.a());
    }

    #[test]
    fn direct_sum_blocks_and_unit() {
        let m = cusp_mf();
        let t = MatrixFactorization::trivial(m.f(), "free").unwrap();
        let s = m.direct_sum(&t).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(s.a().entry(2, 2), &p("x^2+y^3"));
        assert_eq!(s.a().entry(0, 2), &p("0"));
        let e = MatrixFactorization::empty(m.f());
        let u = m.direct_sum(&e).unwrap();
        assert_eq!(u.a(), m.a());
        assert_eq!(u.label(), m.label());
    }

    #[test]
    fn direct_sum_requires_same_polynomial() {
        let m = cusp_mf();
        let other = MatrixFactorization::trivial(&p("x^2+y^5"), "other").unwrap();
        assert!(m.direct_sum(&other).is_err());
    }

    #[test]
    fn cover_of_curve_matrix_is_4x4_over_extended_ring() {
        let m = cusp_mf();
        let c = m.knorrer_cover("z").unwrap();
        assert_eq!(c.size(), 4);
        assert_eq!(c.vars().names(), ["x", "y", "z"]);
        let f = Polynomial::parse("x^2+y^3+z^2", c.vars()).unwrap();
        assert_eq!(c.f(), &f);
        assert_eq!(c.label(), "A_2:1#z");
        // top-left block is B, bottom-right is A, off-diagonals are -z, z
        let z = Polynomial::parse("z", c.vars()).unwrap();
        assert_eq!(c.a().entry(0, 2), &z.neg());
        assert_eq!(c.a().entry(2, 0), &z);
        assert_eq!(c.b().entry(0, 2), &z);
        assert_eq!(c.b().entry(2, 0), &z.neg());
    }

    #[test]
    fn cover_of_trivial_matches_hand_blocks() {
        let f = p("x^2+y^3");
        let m = MatrixFactorization::trivial(&f, "free").unwrap();
        let c = m.knorrer_cover("z").unwrap();
        let ext = c.vars();
        let want_a =
            PolyMatrix::parse(ext, &[vec!["1", "-z"], vec!["z", "x^2+y^3"]]).unwrap();
        assert_eq!(c.a(), &want_a);
    }

    #[test]
    fn iterated_cover_adds_two_squares() {
        let c2 = cusp_mf().knorrer_cover("z").unwrap().knorrer_cover("w").unwrap();
        assert_eq!(c2.size(), 8);
        let f = Polynomial::parse("x^2+y^3+z^2+w^2", c2.vars()).unwrap();
        assert_eq!(c2.f(), &f);
    }

    #[test]
    fn cover_rejects_colliding_variable() {
        assert!(matches!(
            cusp_mf().knorrer_cover("x"),
            Err(Error::VariableCollision { .. })
        ));
    }

    #[test]
    fn branched_cover_ring_assembles_polynomial() {
        let r = BranchedCoverRing::new(&p("x^2+y^3"), 2, "z").unwrap();
        let want = Polynomial::parse("x^2+y^3+z^2", r.cover_polynomial().vars()).unwrap();
        assert_eq!(r.cover_polynomial(), &want);
        let r3 = BranchedCoverRing::new(&p("x^3"), 3, "w").unwrap();
        let want3 = Polynomial::parse("x^3+w^3", r3.cover_polynomial().vars()).unwrap();
        assert_eq!(r3.cover_polynomial(), &want3);
        assert!(BranchedCoverRing::new(&p("x^2"), 1, "z").is_err());
        assert!(BranchedCoverRing::new(&p("x^2"), 2, "y").is_err());
    }

    #[test]
    fn generic_2x2_adjugate_partner() {
        let (vars, x) = generic_matrix(2).unwrap();
        let f = x.det().unwrap();
        assert_eq!(f, Polynomial::parse("x11*x22-x12*x21", &vars).unwrap());
        let m = MatrixFactorization::adjugate_partner(x, f, "det2").unwrap();
        assert_eq!(m.b().entry(0, 0), &Polynomial::parse("x22", &vars).unwrap());
        assert_eq!(m.b().entry(0, 1), &Polynomial::parse("-x12", &vars).unwrap());
    }

    #[test]
    fn generic_3x3_adjugate_partner_validates() {
        let (_, x) = generic_matrix(3).unwrap();
        let f = x.det().unwrap();
        let m = MatrixFactorization::adjugate_partner(x, f, "det3").unwrap();
        assert_eq!(m.size(), 3);
    }

    #[test]
    fn adjugate_partner_1x1() {
        let vars = VarSet::new(["x"]).unwrap();
        let a = PolyMatrix::parse(&vars, &[vec!["x"]]).unwrap();
        let f = Polynomial::variable(&vars, 0);
        let m = MatrixFactorization::adjugate_partner(a, f, "line").unwrap();
        assert_eq!(m.b().entry(0, 0), &Polynomial::one(&vars));
    }

    #[test]
    fn adjugate_partner_rejects_wrong_determinant() {
        let a = PolyMatrix::parse(&xy(), &[vec!["x"]]).unwrap();
        assert!(matches!(
            MatrixFactorization::adjugate_partner(a, p("y"), "bad"),
            Err(Error::DeterminantMismatch { .. })
        ));
    }

    #[test]
    fn determinant_of_constant_matrix() {
        let vars = VarSet::new(["x"]).unwrap();
        let m = PolyMatrix::parse(&vars, &[vec!["2", "1"], vec!["1", "1"]]).unwrap();
        assert_eq!(m.det().unwrap(), Polynomial::constant(&vars, q_int(1)));
    }

    #[test]
    fn json_round_trip_explicit_partner() {
        let m = cusp_mf();
        let text = m.to_json();
        let back = MatrixFactorization::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_adjugate_keyword() {
        let text = r#"{
            "vars": ["x11", "x12", "x21", "x22"],
            "f": "x11*x22-x12*x21",
            "A": [["x11", "x12"], ["x21", "x22"]],
            "B": "adjugate",
            "label": "det2"
        }"#;
        let m = MatrixFactorization::from_json(text).unwrap();
        assert_eq!(m.b().entry(1, 1), &Polynomial::parse("x11", m.vars()).unwrap());
    }

    #[test]
    fn json_rejects_unknown_keyword() {
        let text = r#"{"vars": ["x"], "f": "x", "A": [["x"]], "B": "transpose"}"#;
        assert!(MatrixFactorization::from_json(text).is_err());
    }

    #[test]
    fn json_parse_failure_maps_to_syntax_exit() {
        let err = MatrixFactorization::from_json("{not json").unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
