//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Monomials are exponent vectors over a fixed, ordered variable list; terms
//! are kept in a map keyed by graded reverse-lexicographic order so every
//! polynomial has one canonical form. Parsing and printing are inverse to
//! each other on canonical strings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// An immutable, ordered list of variable names shared by reference.
#[derive(Clone, Debug, Eq)]
pub struct VarSet(Arc<Vec<String>>);

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_ident(n) {
                return Err(Error::invalid(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::VariableCollision { name: n.clone() });
            }
        }
        Ok(VarSet(Arc::new(names)))
    }

    /// Parse a comma-separated list such as `"x,y,z"`.
    pub fn parse_list(list: &str) -> Result<Self> {
        VarSet::new(list.split(',').map(|s| s.trim().to_string()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Extend by one fresh variable, rejecting collisions.
    pub fn extended(&self, fresh: &str) -> Result<Self> {
        if self.index_of(fresh).is_some() {
            return Err(Error::VariableCollision {
                name: fresh.to_string(),
            });
        }
        let mut names = self.0.as_ref().clone();
        names.push(fresh.to_string());
        VarSet::new(names)
    }

    pub fn joined(&self) -> String {
        self.0.join(",")
    }
}

/// Exponent vector; the ambient [`VarSet`] fixes its length and meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: vec![0; n_vars],
        }
    }

    pub fn var(n_vars: usize, index: usize) -> Self {
        let mut exps = vec![0; n_vars];
        exps[index] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Embed into a larger variable set via an index map.
    pub fn remap(&self, map: &[usize], n_vars: usize) -> Monomial {
        let mut exps = vec![0; n_vars];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] = e;
        }
        Monomial { exps }
    }
}

/// Graded reverse-lexicographic comparison, ascending: degree first, then the
/// rightmost differing exponent decides (larger exponent there means the
/// *smaller* monomial wins grevlex, so it sorts above).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for j in (0..self.exps.len()).rev() {
            match self.exps[j].cmp(&other.exps[j]) {
                Ordering::Equal => continue,
                // rightmost difference: bigger exponent there = grevlex-smaller
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Local ("ds"-style) coordinate order used by truncated algebras: ascending
/// total degree, and grevlex-descending within a degree block so that the
/// pivot of a homogeneous relation is its grevlex-largest monomial.
pub fn local_order(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => b.cmp(a),
        ord => ord,
    }
}

/// A multivariate polynomial with exact rational coefficients in canonical
/// form: no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Polynomial::constant(vars, Q::one())
    }

    pub fn constant(vars: &VarSet, c: Q) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn variable(vars: &VarSet, index: usize) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(Monomial::var(vars.len(), index), Q::one());
        p
    }

    pub fn monomial(vars: &VarSet, mono: Monomial, c: Q) -> Self {
        let mut p = Polynomial::zero(vars);
        p.add_term(mono, c);
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    /// Total degree of the highest term, or 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Smallest total degree among terms (the order of vanishing at 0).
    pub fn min_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.total_degree() == self.min_degree()
    }

    pub fn add_term(&mut self, mono: Monomial, c: Q) {
        debug_assert_eq!(mono.exps().len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ambient(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::AmbientMismatch {
                expected: self.vars.joined(),
                found: other.vars.joined(),
            });
        }
        Ok(())
    }

    pub fn scaled(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scaled(&-Q::one())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ambient(other)?;
        let mut out = Polynomial::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ambient");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ambient");
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the `index`-th variable.
    pub fn partial_derivative(&self, index: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exps()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::from_exps(exps), c * q_int(e as i64));
        }
        out
    }

    /// Drop every term of total degree `>= cutoff`.
    pub fn truncated(&self, cutoff: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < cutoff)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterpret over a larger variable set containing every variable of
    /// this polynomial (matched by name).
    pub fn embedded(&self, bigger: &VarSet) -> Result<Polynomial> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                bigger.index_of(n).ok_or_else(|| Error::AmbientMismatch {
                    expected: self.vars.joined(),
                    found: bigger.joined(),
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(bigger);
        for (m, c) in &self.terms {
            out.add_term(m.remap(&map, bigger.len()), c.clone());
        }
        Ok(out)
    }

    /// Parse `text` over the given variables.
    ///
    /// Grammar: a signed sum of terms; each term is an optional rational
    /// coefficient (`integer` or `integer/positive-integer`) followed by
    /// `*`-separated factors `variable` or `variable^positive-integer`.
    /// Whitespace is ignored.
    pub fn parse(text: &str, vars: &VarSet) -> Result<Polynomial> {
        Parser {
            chars: text.char_indices().peekable(),
            text,
            vars,
        }
        .parse()
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    text: &'a str,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn pos(&mut self) -> usize {
        self.skip_ws();
        self.chars
            .peek()
            .map(|&(i, _)| i)
            .unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next().map(|(_, c)| c)
    }

    fn err(&mut self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn read_uint(&mut self) -> Result<BigInt> {
        let start = self.pos();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap().1);
        }
        if digits.is_empty() {
            return Err(Error::Syntax {
                pos: start,
                msg: "expected an integer".into(),
            });
        }
        Ok(BigInt::from_str(&digits).expect("digits"))
    }

    fn read_ident(&mut self) -> (usize, String) {
        let start = self.pos();
        let mut name = String::new();
        while matches!(self.chars.peek(), Some((_, c)) if c.is_ascii_alphanumeric() || *c == '_') {
            name.push(self.chars.next().unwrap().1);
        }
        (start, name)
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.vars);
        let mut sign = match self.peek() {
            Some('-') => {
                self.bump();
                -Q::one()
            }
            Some('+') => {
                self.bump();
                Q::one()
            }
            None => return Err(self.err("empty polynomial")),
            _ => Q::one(),
        };
        loop {
            let (mono, coeff) = self.parse_term()?;
            poly.add_term(mono, coeff * &sign);
            match self.peek() {
                None => break,
                Some('+') => {
                    self.bump();
                    sign = Q::one();
                }
                Some('-') => {
                    self.bump();
                    sign = -Q::one();
                }
                Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            }
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Monomial, Q)> {
        let mut coeff = Q::one();
        let mut saw_any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let numer = self.read_uint()?;
            let denom = if self.peek() == Some('/') {
                self.bump();
                let d = self.read_uint()?;
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = Q::new(numer, denom);
            saw_any = true;
            if self.peek() == Some('*') {
                self.bump();
                // a `*` must be followed by a factor
                if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
                    return Err(self.err("expected a variable after `*`"));
                }
            }
        }
        let mut exps = vec![0u32; self.vars.len()];
        let mut saw_factor = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let (start, name) = self.read_ident();
                    let idx = self.vars.index_of(&name).ok_or(Error::UnknownVariable {
                        name: name.clone(),
                        pos: start,
                    })?;
                    let e = if self.peek() == Some('^') {
                        self.bump();
                        let e = self.read_uint()?;
                        let e: u32 = e
                            .try_into()
                            .map_err(|_| self.err("exponent out of range"))?;
                        if e == 0 {
                            return Err(self.err("exponent must be positive"));
                        }
                        e
                    } else {
                        1
                    };
                    exps[idx] += e;
                    saw_factor = true;
                    saw_any = true;
                    if self.peek() == Some('*') {
                        self.bump();
                        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '_') {
                            return Err(self.err("expected a variable after `*`"));
                        }
                    }
                }
                _ => break,
            }
        }
        let _ = saw_factor;
        if !saw_any {
            return Err(self.err("expected a term"));
        }
        Ok((Monomial::from_exps(exps), coeff))
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in descending grevlex order, `*` between factors,
    /// unit coefficients elided, `-` absorbed into the term sign.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(out, "-")?;
                }
            } else {
                write!(out, "{}", if neg { "-" } else { "+" })?;
            }
            let abs = coeff.abs();
            let mut need_star = false;
            if !abs.is_one() || mono.is_one() {
                write!(out, "{abs}")?;
                need_star = true;
            }
            for (v, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if need_star {
                    write!(out, "*")?;
                }
                write!(out, "{}", self.vars.name(v))?;
                if e > 1 {
                    write!(out, "^{e}")?;
                }
                need_star = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, &xy()).unwrap()
    }

    #[test]
    fn parse_simple_sum() {
        let f = p("x^2+y^3");
        assert_eq!(f.n_terms(), 2);
        assert_eq!(f.coeff(&Monomial::from_exps(vec![2, 0])), q_int(1));
        assert_eq!(f.coeff(&Monomial::from_exps(vec![0, 3])), q_int(1));
    }

    #[test]
    fn parse_zero_and_constants() {
        assert!(p("0").is_zero());
        assert_eq!(p("5").constant_term(), q_int(5));
        assert_eq!(p("3/2").constant_term(), Q::new(3.into(), 2.into()));
        assert_eq!(p("x-x").to_string(), "0");
    }

    #[test]
    fn parse_coefficients_and_stars() {
        let f = p("2*x*y - 3y^2 + 1/2");
        assert_eq!(f.coeff(&Monomial::from_exps(vec![1, 1])), q_int(2));
        assert_eq!(f.coeff(&Monomial::from_exps(vec![0, 2])), q_int(-3));
    }

    #[test]
    fn parse_leading_minus() {
        let f = p("-x");
        assert_eq!(f.coeff(&Monomial::from_exps(vec![1, 0])), q_int(-1));
    }

    #[test]
    fn parse_four_vars() {
        let vars = VarSet::new(["x", "y", "z", "w"]).unwrap();
        let f = Polynomial::parse("x*w^2-y*z", &vars).unwrap();
        assert_eq!(f.n_terms(), 2);
        assert_eq!(f.coeff(&Monomial::from_exps(vec![1, 0, 0, 2])), q_int(1));
        assert_eq!(f.coeff(&Monomial::from_exps(vec![0, 1, 1, 0])), q_int(-1));
    }

    #[test]
    fn syntax_error_carries_position() {
        match Polynomial::parse("x^2 + + y", &xy()) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_rejected() {
        match Polynomial::parse("x + q", &xy()) {
            Err(Error::UnknownVariable { name, .. }) => assert_eq!(name, "q"),
            other => panic!("expected unknown-variable error, got {other:?}"),
        }
    }

    #[test]
    fn juxtaposed_names_are_one_identifier() {
        assert!(Polynomial::parse("xy", &xy()).is_err());
    }

    #[test]
    fn zero_exponent_rejected() {
        assert!(Polynomial::parse("x^0", &xy()).is_err());
    }

    #[test]
    fn mul_difference_of_squares() {
        let lhs = p("x+y").mul(&p("x-y")).unwrap();
        assert_eq!(lhs, p("x^2-y^2"));
    }

    #[test]
    fn mul_by_one_is_identity() {
        let f = p("x^2+2*x*y-7");
        assert_eq!(f.mul(&Polynomial::one(&xy())).unwrap(), f);
    }

    #[test]
    fn monomial_product_adds_exponents() {
        let f = p("x").mul(&p("y^4")).unwrap();
        assert_eq!(f, p("x*y^4"));
    }

    #[test]
    fn derivative_examples() {
        let f = p("x^2+y^3");
        assert_eq!(f.partial_derivative(0), p("2*x"));
        assert_eq!(f.partial_derivative(1), p("3*y^2"));
        // n = 4 instance of the family x^2 + y^(n+1)
        assert_eq!(p("x^2+y^5").partial_derivative(1), p("5*y^4"));
        let vars = VarSet::new(["x", "y", "z", "w"]).unwrap();
        let g = Polynomial::parse("x*w^2-y*z", &vars).unwrap();
        assert_eq!(
            g.partial_derivative(3),
            Polynomial::parse("2*x*w", &vars).unwrap()
        );
    }

    #[test]
    fn display_descending_grevlex() {
        assert_eq!(p("x^2+y^3").to_string(), "y^3+x^2");
        assert_eq!(p("y^3+x^2").to_string(), "y^3+x^2");
        assert_eq!(p("1-x").to_string(), "-x+1");
        assert_eq!(p("x*y - 2").to_string(), "x*y-2");
        assert_eq!(p("-3/2*x^2*y").to_string(), "-3/2*x^2*y");
    }

    #[test]
    fn grevlex_order_within_degree() {
        // with x > y: x^2 > x*y > y^2
        let x2 = Monomial::from_exps(vec![2, 0]);
        let xy_m = Monomial::from_exps(vec![1, 1]);
        let y2 = Monomial::from_exps(vec![0, 2]);
        assert!(x2 > xy_m && xy_m > y2);
    }

    #[test]
    fn embedding_preserves_terms() {
        let big = VarSet::new(["x", "y", "z"]).unwrap();
        let f = p("x^2-2*y").embedded(&big).unwrap();
        assert_eq!(f, Polynomial::parse("x^2-2*y", &big).unwrap());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = p("x+y");
        let mut g = Polynomial::one(&xy());
        for _ in 0..5 {
            g = g.mul(&f).unwrap();
        }
        assert_eq!(f.pow(5), g);
    }

    #[test]
    fn truncation_drops_high_degree() {
        let f = p("1+x+x^2+x^3");
        assert_eq!(f.truncated(2), p("1+x"));
    }

    #[test]
    fn roundtrip_canonical_strings() {
        for s in ["y^3+x^2", "x*y-2", "-x+1", "3/2*x^2*y-7*y^2", "0", "x"] {
            let f = p(s);
            assert_eq!(f.to_string(), s);
            assert_eq!(Polynomial::parse(&f.to_string(), &xy()).unwrap(), f);
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Polynomial> {
            let term = (0u32..4, 0u32..4, -9i64..=9, 1i64..=4);
            proptest::collection::vec(term, 0..6).prop_map(|terms| {
                let vars = xy();
                let mut f = Polynomial::zero(&vars);
                for (i, j, num, den) in terms {
                    f.add_term(Monomial::from_exps(vec![i, j]), q_int(num) / q_int(den));
                }
                f
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn print_then_parse_is_the_identity(f in arb_poly()) {
                let back = Polynomial::parse(&f.to_string(), f.vars()).unwrap();
                prop_assert_eq!(back, f);
            }

            #[test]
            fn addition_commutes(f in arb_poly(), g in arb_poly()) {
                prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
            }

            #[test]
            fn multiplication_distributes(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
                let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
                let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn derivative_is_linear(f in arb_poly(), g in arb_poly()) {
                let sum = f.add(&g).unwrap().partial_derivative(0);
                let parts = f.partial_derivative(0).add(&g.partial_derivative(0)).unwrap();
                prop_assert_eq!(sum, parts);
            }
        }
    }
}
