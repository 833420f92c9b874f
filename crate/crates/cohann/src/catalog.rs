//! Labeled families of matrix factorizations over a shared hypersurface.
//!
//! A [`Catalog`] is the input to a cohomology-annihilator intersection: a
//! list of matrix factorizations of one polynomial, together with a claim
//! about whether the list is complete (covers every indecomposable
//! module up to equivalence) or partial.  Built-in generators cover the
//! `A_n` family `x^2 + y^{n+1}` and generic determinantal hypersurfaces;
//! anything else enters through JSON files, which are fully revalidated on
//! load so that a corrupt file can never smuggle in a non-factorization.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mf::{generic_matrix, MatrixFactorization, MfDoc, PolyMatrix};
use crate::poly::{Polynomial, VarSet};

/// A family of matrix factorizations of a single polynomial `f`.
///
/// `entries` are the members that participate in annihilator
/// intersections.  `endpoints` are degenerate members kept for reference —
/// their cokernels are free or zero, so their stable annihilators are unit
/// ideals that would not affect any intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    f: Polynomial,
    entries: Vec<MatrixFactorization>,
    endpoints: Vec<MatrixFactorization>,
    complete: bool,
}

impl Catalog {
    /// Assemble a catalog, checking that every member factors the shared
    /// `f` and that there is at least one working entry.
    pub fn new(
        f: Polynomial,
        entries: Vec<MatrixFactorization>,
        endpoints: Vec<MatrixFactorization>,
        complete: bool,
    ) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("a catalog needs at least one entry"));
        }
        for m in entries.iter().chain(endpoints.iter()) {
            if m.f() != &f {
                return Err(Error::invalid(format!(
                    "entry {:?} factors {}, not the catalog polynomial {}",
                    m.label(),
                    m.f(),
                    f
                )));
            }
        }
        Ok(Catalog {
            f,
            entries,
            endpoints,
            complete,
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn vars(&self) -> &VarSet {
        self.f.vars()
    }

    /// Members used in annihilator intersections.
    pub fn entries(&self) -> &[MatrixFactorization] {
        &self.entries
    }

    /// Degenerate members (free/zero cokernel), excluded from intersections.
    pub fn endpoints(&self) -> &[MatrixFactorization] {
        &self.endpoints
    }

    /// Whether the entry list claims to exhaust the indecomposable modules.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The catalog for `x^2 + y^(n+1)`: entries
    /// `A_j = [[x, y^j], [y^(n+1-j), -x]]` for `j = 1..n`, each its own
    /// partner.  The `j = 0` and `j = n+1` matrices also square to `f*I`
    /// but contain a unit entry, so they land in `endpoints`.  The entry
    /// list is complete: these cokernels exhaust the indecomposable
    /// modules of the `A_n` singularity.
    pub fn a_n(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid(format!("family index must be >= 1, got {n}")));
        }
        let vars = VarSet::new(["x", "y"])?;
        let x = Polynomial::variable(&vars, 0);
        let y = Polynomial::variable(&vars, 1);
        let f = x.pow(2).add(&y.pow(n + 1))?;
        let member = |j: u32| -> Result<MatrixFactorization> {
            let a = PolyMatrix::from_rows(
                &vars,
                vec![
                    vec![x.clone(), y.pow(j)],
                    vec![y.pow(n + 1 - j), x.neg()],
                ],
            )?;
            MatrixFactorization::new(f.clone(), a.clone(), a, format!("A_{n}:{j}"))
        };
        let entries = (1..=n).map(member).collect::<Result<Vec<_>>>()?;
        let endpoints = vec![member(0)?, member(n + 1)?];
        Catalog::new(f, entries, endpoints, true)
    }

    /// The one-entry catalog for the determinant of a generic `n x n`
    /// matrix of indeterminates, partnered with its adjugate.  Marked
    /// partial: one module does not exhaust a determinantal hypersurface.
    pub fn determinantal(n: usize) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(Error::invalid(format!(
                "generic determinants are generated only for sizes 2 and 3, got {n}"
            )));
        }
        let (_, x) = generic_matrix(n)?;
        let f = x.det()?;
        let entry = MatrixFactorization::adjugate_partner(x, f.clone(), format!("det{n}"))?;
        Catalog::new(f, vec![entry], Vec::new(), false)
    }

    pub fn to_json(&self) -> String {
        let doc = CatalogDoc {
            f: self.f.to_string(),
            vars: self.vars().names().to_vec(),
            complete: self.complete,
            entries: self.entries.iter().map(|m| m.to_doc()).collect(),
            endpoints: self.endpoints.iter().map(|m| m.to_doc()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    /// Parse and fully revalidate a catalog: every entry's products are
    /// recomputed, and any failure is reported under the entry's label.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CatalogDoc = serde_json::from_str(text)?;
        let vars = VarSet::new(doc.vars.iter().cloned())?;
        let f = Polynomial::parse(&doc.f, &vars)?;
        let revive = |kind: &str, i: usize, d: &MfDoc| -> Result<MatrixFactorization> {
            let name = d
                .label()
                .map(str::to_owned)
                .unwrap_or_else(|| format!("{kind} #{}", i + 1));
            MatrixFactorization::from_doc(d).map_err(|e| name_entry(&name, e))
        };
        let entries = doc
            .entries
            .iter()
            .enumerate()
            .map(|(i, d)| revive("entry", i, d))
            .collect::<Result<Vec<_>>>()?;
        let endpoints = doc
            .endpoints
            .iter()
            .enumerate()
            .map(|(i, d)| revive("endpoint", i, d))
            .collect::<Result<Vec<_>>>()?;
        Catalog::new(f, entries, endpoints, doc.complete)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Catalog::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Attach an entry name to an error without changing its exit-code class:
/// parse-level errors stay parse-level, everything else becomes a named
/// validation error.
fn name_entry(name: &str, e: Error) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax {
            pos,
            msg: format!("in {name}: {msg}"),
        },
        Error::UnknownVariable { name: var, pos } => Error::Syntax {
            pos,
            msg: format!("in {name}: unknown variable '{var}'"),
        },
        other => Error::invalid(format!("in {name}: {other}")),
    }
}

/// On-disk form.  `endpoints` is optional so that files written by other
/// tools (entries only) still load.
#[derive(Serialize, Deserialize)]
struct CatalogDoc {
    f: String,
    vars: Vec<String>,
    complete: bool,
    entries: Vec<MfDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    endpoints: Vec<MfDoc>,
}
