//! Sparse multivariate polynomials over an exact field.
//!
//! Monomials are compared by total degree first and then lexicographically on
//! the exponent sequence, so `x1 > x2 > ... > xn` and `x1^2*x2 > x1*x2^2`.
//! Terms print leading term first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    /// The monomial `x_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// Squarefree product of the given 0-based variables.
    pub fn squarefree(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] = 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Number of distinct variables dividing the monomial.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    /// 0-based indices of the variables dividing the monomial.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// All monomials of total degree `d` in `nvars` variables, in decreasing
    /// monomial order.
    pub fn all_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Monomial(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in `nvars` variables with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Self {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, c, Monomial::one(nvars))
    }

    pub fn one(field: F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(field: F, nvars: usize, i: usize) -> Self {
        Self::monomial(field, field.one(), Monomial::var(nvars, i))
    }

    /// `x_{i+1} - x_{j+1}` for 0-based indices.
    pub fn difference(field: F, nvars: usize, i: usize, j: usize) -> Self {
        let mut p = Self::var(field, nvars, i);
        p.add_term(Monomial::var(nvars, j), field.neg(&field.one()));
        p
    }

    pub fn monomial(field: F, c: F::Elem, m: Monomial) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(m, c);
        }
        Self {
            field,
            nvars,
            terms,
        }
    }

    pub fn from_terms(field: F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial in the wrong ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter().rev()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.values().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = self.field;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = f.add(v, &c);
                if f.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field, self.nvars);
        }
        Self {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), self.field.mul(v, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>> {
        let mut deg = None;
        for m in self.terms.keys() {
            match deg {
                None => deg = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Ring-homomorphism image of `self` under `x_i -> assignment[i]`.
    ///
    /// Every variable that occurs in `self` must be assigned, and all images
    /// must live in one common ring.
    pub fn substitute(&self, assignment: &HashMap<usize, Polynomial<F>>) -> Result<Polynomial<F>> {
        let target = match assignment.values().next() {
            Some(p) => p.nvars,
            None if self.terms.keys().all(|m| m.degree() == 0) => self.nvars,
            None => {
                return Err(Error::Precondition(
                    "empty assignment for a non-constant polynomial".into(),
                ))
            }
        };
        if let Some(p) = assignment.values().find(|p| p.nvars != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                found: p.nvars,
            });
        }
        let mut powers: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
        let mut out = Polynomial::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.field, target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = assignment.get(&i).ok_or_else(|| {
                    Error::Precondition(format!("variable x{} has no image", i + 1))
                })?;
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| img.pow(e as u32))
                    .clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Sets the last variable to zero and drops it from the ring.
    pub fn specialize_last_to_zero(&self) -> Polynomial<F> {
        let n = self.nvars;
        assert!(n > 0);
        let mut out = Polynomial::zero(self.field, n - 1);
        for (m, c) in &self.terms {
            if m.exponents()[n - 1] == 0 {
                out.terms
                    .insert(Monomial(m.exponents()[..n - 1].to_vec()), c.clone());
            }
        }
        out
    }

    /// Renames variables: `x_i -> x_{perm[i]}` (0-based), same ring.
    pub fn permute_variables(&self, perm: &[usize]) -> Polynomial<F> {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; self.nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[perm[i]] = x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial<F> {
        let mut acc = Polynomial::one(self.field, self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars);
        let f = self.field;
        let mut total = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[i]);
                }
            }
            total = f.add(&total, &t);
        }
        total
    }

    /// Squarefree monomials dividing some term. The zero polynomial has an
    /// empty support.
    pub fn supp(&self) -> BTreeSet<Monomial> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            let vars = m.support();
            for mask in 0u64..(1u64 << vars.len()) {
                let chosen: Vec<usize> = vars
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                out.insert(Monomial::squarefree(self.nvars, &chosen));
            }
        }
        out
    }

    /// Whether a squarefree monomial divides some term.
    pub fn supp_contains(&self, sqfree: &Monomial) -> bool {
        self.terms.keys().any(|m| sqfree.divides(m))
    }

    /// Parses the canonical text form, e.g. `x1^2*x2 - 3/2*x2*x3 + 1`.
    pub fn parse(field: F, nvars: usize, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(field, nvars);
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for (idx, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 && !cur.ends_with('^') {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        chunks.push(cur);
        for chunk in chunks {
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{text}`")));
            }
            let mut coeff = field.one();
            let mut exps = vec![0u16; nvars];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u16>().map_err(|_| bad_factor(factor))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad_factor(factor))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!(
                            "variable x{idx} outside ring with {nvars} variables"
                        )));
                    }
                    exps[idx - 1] += e;
                } else {
                    coeff = field.mul(&coeff, &field.parse_elem(factor)?);
                }
            }
            if neg {
                coeff = field.neg(&coeff);
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }
}

fn bad_factor(f: &str) -> Error {
    Error::Parse(format!("bad factor `{f}`"))
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = self.field.signed_format(c);
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "adding polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "subtracting polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        assert_eq!(self.nvars, rhs.nvars, "multiplying polynomials from different rings");
        let f = self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = f.mul(c1, c2);
                acc.entry(m1.mul(m2))
                    .and_modify(|v| *v = f.add(v, &prod))
                    .or_insert(prod);
            }
        }
        Polynomial {
            field: f,
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(n: usize, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(Rationals, n, s).unwrap()
    }

    fn identity_map(n: usize) -> HashMap<usize, Polynomial<Rationals>> {
        (0..n).map(|i| (i, Polynomial::var(Rationals, n, i))).collect()
    }

    #[test]
    fn monomial_order_is_graded_then_lex() {
        let a = Monomial::from_exponents(vec![2, 1, 0]);
        let b = Monomial::from_exponents(vec![1, 2, 0]);
        let c = Monomial::from_exponents(vec![0, 0, 4]);
        assert!(a > b);
        assert!(c > a);
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn canonical_text_round_trip() {
        let p = q(3, "-3*x2*x3 + x1^2*x2");
        assert_eq!(p.to_string(), "x1^2*x2 - 3*x2*x3");
        assert_eq!(q(3, &p.to_string()), p);
        assert_eq!(q(2, "1/2*x1 - 1/2*x1").to_string(), "0");
        let f = PrimeField::new(3).unwrap();
        let p = Polynomial::parse(f, 2, "x1 - x2").unwrap();
        assert_eq!(p.to_string(), "x1 + 2*x2");
    }

    #[test]
    fn substitute_collapses_difference() {
        let p = q(2, "x1 - x2");
        let mut map = HashMap::new();
        map.insert(0, Polynomial::var(Rationals, 2, 0));
        map.insert(1, Polynomial::var(Rationals, 2, 0));
        assert!(p.substitute(&map).unwrap().is_zero());
    }

    #[test]
    fn substitute_change_of_variables_keeps_differences() {
        // x_i -> x_i - x_3 for every i sends x_3 to 0 and fixes differences.
        let mut map = HashMap::new();
        for i in 0..3 {
            let mut img = Polynomial::var(Rationals, 3, i);
            img.add_term(Monomial::var(3, 2), Rationals.from_i64(-1));
            map.insert(i, img);
        }
        let p = q(3, "x1 - x3");
        assert_eq!(p.substitute(&map).unwrap(), p);
        let diff = q(3, "x1 - x2");
        assert_eq!(diff.substitute(&map).unwrap(), diff);
    }

    #[test]
    fn substitute_specht_example_vanishes_when_x2_equals_x5() {
        let f = q(6, "1")
            * q(6, "x3 - x6")
            * q(6, "x3 - x4")
            * q(6, "x6 - x4")
            * q(6, "x5 - x2");
        let mut map = identity_map(6);
        map.insert(1, Polynomial::var(Rationals, 6, 4));
        assert!(f.substitute(&map).unwrap().is_zero());
    }

    #[test]
    fn substitute_rejects_mixed_targets_and_missing_vars() {
        let p = q(2, "x1*x2");
        let mut map = HashMap::new();
        map.insert(0, Polynomial::var(Rationals, 2, 0));
        assert!(matches!(p.substitute(&map), Err(Error::Precondition(_))));
        map.insert(1, Polynomial::var(Rationals, 3, 0));
        assert!(matches!(p.substitute(&map), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn supp_matches_worked_example() {
        let p = q(3, "x1*x2^3 - 3*x2^2*x3^2");
        let got: Vec<String> = p.supp().iter().map(|m| m.to_string()).collect();
        let mut want = vec!["1", "x1", "x2", "x3", "x1*x2", "x2*x3"];
        let mut got_sorted = got.clone();
        got_sorted.sort();
        want.sort();
        assert_eq!(got_sorted, want);
        assert!(Polynomial::zero(Rationals, 3).supp().is_empty());
        assert_eq!(q(2, "x1 - x2").supp().len(), 3);
    }

    #[test]
    fn homogeneity() {
        assert_eq!(q(2, "x1^2 - x1*x2").homogeneous_degree(), Ok(Some(2)));
        assert_eq!(q(2, "x1^2 - x2").homogeneous_degree(), Err(Error::Inhomogeneous));
        assert_eq!(Polynomial::zero(Rationals, 2).homogeneous_degree(), Ok(None));
    }
}
