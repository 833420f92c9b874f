//! Dense exact linear algebra over the rationals.
//!
//! The workhorse is reduced row echelon form; since RREF is unique for a
//! fixed column order, every subspace here has one canonical basis and
//! subspace equality is plain equality of basis rows.

use num_traits::{One, Zero};

use crate::poly::Q;

/// Reduce `rows` in place to reduced row echelon form.
///
/// Zero rows are removed; the returned vector holds the pivot column of each
/// surviving row, in ascending order. Pivot rows are picked by fewest
/// nonzeros to limit fill-in; the end result is order-independent.
pub fn rref(rows: &mut Vec<Vec<Q>>) -> Vec<usize> {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next = 0usize; // first row not yet fixed as a pivot row
    for col in 0..cols {
        // choose the sparsest candidate row with a nonzero in this column
        let mut best: Option<(usize, usize)> = None;
        for r in next..rows.len() {
            if !rows[r][col].is_zero() {
                let support = rows[r].iter().filter(|v| !v.is_zero()).count();
                if best.map(|(_, s)| support < s).unwrap_or(true) {
                    best = Some((r, support));
                }
            }
        }
        let Some((r, _)) = best else { continue };
        rows.swap(next, r);
        // normalize the pivot row
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for v in rows[next].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        // eliminate everywhere else, touching only the pivot row's support
        let support: Vec<usize> = (col..cols).filter(|&j| !rows[next][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut rows[next]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row.is_empty() || row[col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[col], Q::zero());
            for &j in &support[1..] {
                let delta = &factor * &pivot_row[j];
                if !delta.is_zero() {
                    row[j] -= delta;
                }
            }
        }
        rows[next] = pivot_row;
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    // ensure rows are sorted by pivot column (they are by construction)
    debug_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    pivots
}

/// Rank and pivot columns of a matrix given as rows (non-destructive).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut copy = rows.to_vec();
    rref(&mut copy).len()
}

/// Canonical basis of the right kernel `{v : M v = 0}` of the matrix with
/// the given rows over `cols` columns.
pub fn kernel(rows: &[Vec<Q>], cols: usize) -> Subspace {
    let mut reduced = rows.to_vec();
    let pivots = rref(&mut reduced);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in 0..cols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    Subspace::from_spanning(cols, basis)
}

/// Column space of a matrix given as rows, as a subspace of `k^rows`.
pub fn image(rows: &[Vec<Q>], cols: usize) -> Subspace {
    let n = rows.len();
    let mut transposed = vec![vec![Q::zero(); n]; cols];
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                transposed[j][i] = v.clone();
            }
        }
    }
    Subspace::from_spanning(n, transposed)
}

/// One solution of `M x = b`, or `None` when the system is inconsistent.
pub fn solve(rows: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(rows.len(), b.len());
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// A linear subspace of `k^ambient` held as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Q::zero(); ambient];
                v[i] = Q::one();
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, mut rows: Vec<Vec<Q>>) -> Self {
        rows.retain(|r| r.iter().any(|v| !v.is_zero()));
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let pivots = rref(&mut rows);
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating every pivot coordinate; the zero
    /// vector exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut out[p], Q::zero());
            for (j, rv) in row.iter().enumerate().skip(p + 1) {
                if !rv.is_zero() {
                    out[j] -= &factor * rv;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Q::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|row| other.contains(row))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, rows)
    }

    /// Intersection via the Zassenhaus block trick: reduce rows `[u|u]` and
    /// `[v|0]`; rows whose left half vanishes carry the intersection on the
    /// right.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let n = self.ambient;
        let mut rows: Vec<Vec<Q>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_with(Q::zero).take(n));
            rows.push(row);
        }
        rref(&mut rows);
        let picked: Vec<Vec<Q>> = rows
            .into_iter()
            .filter(|row| row[..n].iter().all(Q::is_zero))
            .map(|row| row[n..].to_vec())
            .collect();
        Subspace::from_spanning(n, picked)
    }

    /// Image of the subspace under projection onto the chosen coordinates.
    pub fn project(&self, coords: &[usize]) -> Subspace {
        let rows = self
            .basis
            .iter()
            .map(|row| coords.iter().map(|&c| row[c].clone()).collect())
            .collect();
        Subspace::from_spanning(coords.len(), rows)
    }
}
