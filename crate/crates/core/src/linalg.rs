//! Exact sparse linear algebra on graded components.
//!
//! Vectors are sparse rows indexed by the monomials of one degree, column 0
//! being the largest monomial. [`Echelon`] keeps a *fully reduced* row echelon
//! form: every stored row has a leading 1 at its pivot and is otherwise
//! supported only on non-pivot columns. Reducing a vector against it is a
//! single pass over the vector's pivot entries.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

/// Sparse vector: `(column, value)` pairs sorted by column, no zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Monomials of degree `degree` in `nvars` variables, in decreasing order.
#[derive(Debug)]
pub struct MonomialSpace {
    pub nvars: usize,
    pub degree: usize,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl MonomialSpace {
    /// Shared, cached space for `(nvars, degree)`.
    pub fn get(nvars: usize, degree: usize) -> Arc<MonomialSpace> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonomialSpace>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(s) = cache.lock().unwrap().get(&(nvars, degree)) {
            return s.clone();
        }
        let monos = Monomial::all_of_degree(nvars, degree);
        let index = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        let space = Arc::new(MonomialSpace {
            nvars,
            degree,
            monos,
            index,
        });
        cache
            .lock()
            .unwrap()
            .entry((nvars, degree))
            .or_insert(space)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomial(&self, col: u32) -> &Monomial {
        &self.monos[col as usize]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn column(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    pub fn to_sparse<F: Field>(&self, p: &Polynomial<F>) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = p
            .terms()
            .map(|(m, c)| {
                let col = self
                    .column(m)
                    .unwrap_or_else(|| panic!("monomial {m} not of degree {}", self.degree));
                (col, c.clone())
            })
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn to_polynomial<F: Field>(&self, field: F, v: &[(u32, F::Elem)]) -> Polynomial<F> {
        Polynomial::from_terms(
            field,
            self.nvars,
            v.iter().map(|(c, e)| (self.monomial(*c).clone(), e.clone())),
        )
    }
}

/// Incrementally built, fully reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: Vec<Option<u32>>,
    scratch: Vec<F::Elem>,
    touched: Vec<u32>,
    in_touched: Vec<bool>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            scratch: vec![field.zero(); ncols],
            touched: Vec::new(),
            in_touched: vec![false; ncols],
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize].is_some()
    }

    /// The stored row whose leading column is `col`.
    pub fn row_for_pivot(&self, col: u32) -> Option<&SparseVec<F::Elem>> {
        self.pivot_row[col as usize].map(|r| &self.rows[r as usize])
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        (0..self.ncols as u32).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn non_pivots(&self) -> Vec<u32> {
        (0..self.ncols as u32).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<&SparseVec<F::Elem>> {
        self.pivots()
            .into_iter()
            .map(|c| self.row_for_pivot(c).unwrap())
            .collect()
    }

    /// Remainder of `v` modulo the row space; supported on non-pivot columns.
    pub fn reduce(&mut self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let f = self.field;
        for (c, a) in v {
            let ci = *c as usize;
            match self.pivot_row[ci] {
                Some(r) => {
                    // Other rows vanish on this pivot column, so `a` is final.
                    for (c2, b) in &self.rows[r as usize][1..] {
                        let c2i = *c2 as usize;
                        if !self.in_touched[c2i] {
                            self.in_touched[c2i] = true;
                            self.touched.push(*c2);
                        }
                        f.sub_mul_assign(&mut self.scratch[c2i], a, b);
                    }
                }
                None => {
                    if !self.in_touched[ci] {
                        self.in_touched[ci] = true;
                        self.touched.push(*c);
                    }
                    self.scratch[ci] = f.add(&self.scratch[ci], a);
                }
            }
        }
        let mut out = Vec::new();
        for &c in &self.touched {
            let ci = c as usize;
            self.in_touched[ci] = false;
            let val = std::mem::replace(&mut self.scratch[ci], f.zero());
            if !f.is_zero(&val) {
                out.push((c, val));
            }
        }
        self.touched.clear();
        out.sort_unstable_by_key(|e| e.0);
        out
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(u32, F::Elem)]) -> bool {
        if self.is_full() {
            return false;
        }
        let rem = self.reduce(v);
        self.insert_reduced(rem)
    }

    /// Inserts a vector already reduced against the current rows.
    fn insert_reduced(&mut self, rem: SparseVec<F::Elem>) -> bool {
        let f = self.field;
        let Some((lead, lead_val)) = rem.first().cloned() else {
            return false;
        };
        let inv = f.inv(&lead_val);
        let new_row: SparseVec<F::Elem> = rem
            .into_iter()
            .map(|(c, e)| (c, if c == lead { f.one() } else { f.mul(&e, &inv) }))
            .collect();
        for row in &mut self.rows {
            if let Ok(pos) = row.binary_search_by_key(&lead, |e| e.0) {
                let a = row[pos].1.clone();
                *row = axpy(f, row, &a, &new_row);
            }
        }
        self.pivot_row[lead as usize] = Some(self.rows.len() as u32);
        self.rows.push(new_row);
        true
    }

    pub fn contains(&mut self, v: &[(u32, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// `x - a * y` for sorted sparse vectors.
fn axpy<F: Field>(f: F, x: &[(u32, F::Elem)], a: &F::Elem, y: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, f.neg(&f.mul(a, &y[j].1))));
            j += 1;
        } else {
            let mut v = x[i].1.clone();
            f.sub_mul_assign(&mut v, a, &y[j].1);
            if !f.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon basis of the kernel `{v : M v = 0}` of the matrix
/// whose rows are given. The result is itself fully reduced with respect to
/// the original column order: each kernel vector leads at a distinct free
/// column and vanishes on all other free columns.
pub fn kernel_basis<F: Field>(
    field: F,
    ncols: usize,
    rows: impl IntoIterator<Item = SparseVec<F::Elem>>,
) -> Vec<SparseVec<F::Elem>> {
    let flip = |c: u32| (ncols as u32 - 1) - c;
    let mut ech = Echelon::new(field, ncols);
    for row in rows {
        let mut r: SparseVec<F::Elem> = row.into_iter().map(|(c, e)| (flip(c), e)).collect();
        r.sort_unstable_by_key(|e| e.0);
        ech.insert(&r);
        if ech.is_full() {
            return Vec::new();
        }
    }
    // Free column f' (flipped) gives e_f' - sum_p row_p[f'] e_p.
    let mut kern: HashMap<u32, SparseVec<F::Elem>> = HashMap::new();
    for c in ech.non_pivots() {
        kern.insert(c, vec![(flip(c), field.one())]);
    }
    for p in ech.pivots() {
        let row = ech.row_for_pivot(p).unwrap();
        for (c, b) in &row[1..] {
            kern.get_mut(c)
                .expect("non-pivot column")
                .push((flip(p), field.neg(b)));
        }
    }
    let mut out: Vec<SparseVec<F::Elem>> = kern
        .into_values()
        .map(|mut v| {
            v.sort_unstable_by_key(|e| e.0);
            v
        })
        .collect();
    out.sort_by_key(|v| v[0].0);
    out
}

/// Rank of an integer matrix over the rationals by fraction-free (Bareiss)
/// elimination. All intermediate values stay integral.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            if m[r][col].is_zero() {
                // Still has to be rescaled to keep the Bareiss invariant.
                for c in col + 1..ncols {
                    let v = &m[rank][col] * &m[r][c];
                    m[r][c] = v / &prev;
                }
                continue;
            }
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Reduced echelon basis of a degree-`d` graded piece.
#[derive(Clone, Debug)]
pub struct GradedBasis<F: Field> {
    field: F,
    space: Arc<MonomialSpace>,
    echelon: Echelon<F>,
}

impl<F: Field> PartialEq for GradedBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.space.nvars == other.space.nvars
            && self.space.degree == other.space.degree
            && self.echelon.pivots() == other.echelon.pivots()
            && self.sorted_rows_owned() == other.sorted_rows_owned()
    }
}

impl<F: Field> GradedBasis<F> {
    pub fn zero(field: F, nvars: usize, degree: usize) -> Self {
        let space = MonomialSpace::get(nvars, degree);
        let echelon = Echelon::new(field, space.len());
        Self {
            field,
            space,
            echelon,
        }
    }

    pub fn from_echelon(field: F, space: Arc<MonomialSpace>, echelon: Echelon<F>) -> Self {
        assert_eq!(space.len(), echelon.ncols());
        Self {
            field,
            space,
            echelon,
        }
    }

    /// Builds the basis from sparse rows that are already fully reduced.
    pub(crate) fn from_sparse_rows(
        field: F,
        space: Arc<MonomialSpace>,
        rows: impl IntoIterator<Item = SparseVec<F::Elem>>,
    ) -> Self {
        let mut echelon = Echelon::new(field, space.len());
        for r in rows {
            echelon.insert(&r);
        }
        Self::from_echelon(field, space, echelon)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.space.nvars
    }

    pub fn degree(&self) -> usize {
        self.space.degree
    }

    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    /// Dimension of the ambient degree-`d` piece of the polynomial ring.
    pub fn ambient_dimension(&self) -> usize {
        self.space.len()
    }

    pub fn space(&self) -> &Arc<MonomialSpace> {
        &self.space
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.echelon
    }

    fn sorted_rows_owned(&self) -> Vec<SparseVec<F::Elem>> {
        self.echelon.sorted_rows().into_iter().cloned().collect()
    }

    /// Basis vectors, leading monomials strictly decreasing.
    pub fn vectors(&self) -> Vec<Polynomial<F>> {
        self.echelon
            .sorted_rows()
            .into_iter()
            .map(|r| self.space.to_polynomial(self.field, r))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.echelon
            .pivots()
            .into_iter()
            .map(|c| self.space.monomial(c).clone())
            .collect()
    }

    /// Monomials that are not leading monomials: a basis of the quotient.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.echelon
            .non_pivots()
            .into_iter()
            .map(|c| self.space.monomial(c).clone())
            .collect()
    }

    fn check_poly(&self, p: &Polynomial<F>) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: p.nvars(),
            });
        }
        match p.homogeneous_degree()? {
            Some(d) if d != self.degree() => Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: d,
            }),
            _ => Ok(()),
        }
    }

    /// Normal form of `p` modulo the span; zero iff `p` lies in the span.
    pub fn reduce(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.check_poly(p)?;
        let mut ech = self.echelon.clone();
        let rem = ech.reduce(&self.space.to_sparse(p));
        Ok(self.space.to_polynomial(self.field, &rem))
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Whether every vector of `other` lies in this span.
    pub fn contains_basis(&self, other: &GradedBasis<F>) -> bool {
        let mut ech = self.echelon.clone();
        other
            .echelon
            .sorted_rows()
            .into_iter()
            .all(|r| ech.contains(r))
    }
}

/// Reduced echelon basis of the span of homogeneous degree-`d` polynomials.
pub fn echelon_span<F: Field>(
    field: F,
    nvars: usize,
    polys: &[Polynomial<F>],
    d: usize,
) -> Result<GradedBasis<F>> {
    let space = MonomialSpace::get(nvars, d);
    let mut ech = Echelon::new(field, space.len());
    for p in polys {
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: p.nvars(),
            });
        }
        match p.homogeneous_degree()? {
            None => continue,
            Some(e) if e != d => {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    found: e,
                })
            }
            Some(_) => {}
        }
        ech.insert(&space.to_sparse(p));
    }
    Ok(GradedBasis::from_echelon(field, space, ech))
}

/// Reduced basis of the intersection of subspaces of one graded piece
/// (Zassenhaus: rows `[u | u]` and `[w | 0]`, keep rows with zero left half).
pub fn intersect_spans<F: Field>(bases: &[GradedBasis<F>]) -> Result<GradedBasis<F>> {
    let first = bases
        .first()
        .ok_or_else(|| Error::Precondition("intersection of no subspaces".into()))?;
    let mut acc = first.clone();
    for b in &bases[1..] {
        if b.degree() != acc.degree() {
            return Err(Error::DegreeMismatch {
                expected: acc.degree(),
                found: b.degree(),
            });
        }
        if b.nvars() != acc.nvars() {
            return Err(Error::DimensionMismatch {
                expected: acc.nvars(),
                found: b.nvars(),
            });
        }
        acc = intersect_pair(&acc, b);
    }
    Ok(acc)
}

fn intersect_pair<F: Field>(a: &GradedBasis<F>, b: &GradedBasis<F>) -> GradedBasis<F> {
    let f = a.field;
    let n = a.ambient_dimension() as u32;
    if a.dimension() == 0 || b.dimension() == 0 {
        return GradedBasis::zero(f, a.nvars(), a.degree());
    }
    if a.contains_basis(b) {
        return b.clone();
    }
    if b.contains_basis(a) {
        return a.clone();
    }
    let mut ech = Echelon::new(f, 2 * n as usize);
    for r in a.echelon.sorted_rows() {
        let mut row = r.clone();
        row.extend(r.iter().map(|(c, e)| (c + n, e.clone())));
        ech.insert(&row);
    }
    for r in b.echelon.sorted_rows() {
        ech.insert(r);
    }
    let rows = ech
        .pivots()
        .into_iter()
        .filter(|&p| p >= n)
        .map(|p| {
            ech.row_for_pivot(p)
                .unwrap()
                .iter()
                .map(|(c, e)| (c - n, e.clone()))
                .collect::<SparseVec<F::Elem>>()
        })
        .collect::<Vec<_>>();
    GradedBasis::from_sparse_rows(f, a.space.clone(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(n: usize, s: &str) -> Polynomial<Rationals> {
        Polynomial::parse(Rationals, n, s).unwrap()
    }

    #[test]
    fn dependent_triple_has_rank_two() {
        let polys = [q(3, "x1 - x2"), q(3, "x2 - x3"), q(3, "x1 - x3")];
        let b = echelon_span(Rationals, 3, &polys, 1).unwrap();
        assert_eq!(b.dimension(), 2);
        let vs = b.vectors();
        assert_eq!(vs[0].to_string(), "x1 - x3");
        assert_eq!(vs[1].to_string(), "x2 - x3");
    }

    #[test]
    fn empty_span() {
        let b = echelon_span::<Rationals>(Rationals, 3, &[], 4).unwrap();
        assert_eq!(b.dimension(), 0);
        assert!(b.vectors().is_empty());
    }

    #[test]
    fn rejects_mixed_degrees_and_rings() {
        let polys = [q(2, "x1"), q(2, "x1*x2")];
        assert!(matches!(
            echelon_span(Rationals, 2, &polys, 1),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            echelon_span(Rationals, 2, &[q(3, "x1")], 1),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            echelon_span(Rationals, 2, &[q(2, "x1 + x2^2")], 1),
            Err(Error::Inhomogeneous)
        ));
    }

    #[test]
    fn echelon_span_is_idempotent() {
        let polys = [
            q(3, "x1^2 - 2*x2*x3"),
            q(3, "x1*x2 + x3^2"),
            q(3, "x1^2 + x1*x2 - 2*x2*x3 + x3^2"),
            q(3, "3*x2^2"),
        ];
        let b = echelon_span(Rationals, 3, &polys, 2).unwrap();
        let again = echelon_span(Rationals, 3, &b.vectors(), 2).unwrap();
        assert_eq!(b, again);
        assert_eq!(b.vectors(), again.vectors());
    }

    #[test]
    fn intersection_of_coordinate_spans() {
        let a = echelon_span(Rationals, 3, &[q(3, "x1"), q(3, "x2")], 1).unwrap();
        let b = echelon_span(Rationals, 3, &[q(3, "x2"), q(3, "x3")], 1).unwrap();
        let c = intersect_spans(&[a.clone(), b]).unwrap();
        assert_eq!(c.vectors(), vec![q(3, "x2")]);
        assert_eq!(intersect_spans(&[a.clone()]).unwrap(), a);
    }

    #[test]
    fn intersection_degree_mismatch() {
        let a = echelon_span(Rationals, 2, &[q(2, "x1")], 1).unwrap();
        let b = echelon_span(Rationals, 2, &[q(2, "x1^2")], 2).unwrap();
        assert!(matches!(intersect_spans(&[a, b]), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn kernel_is_reduced_and_correct() {
        let f = PrimeField::new(101).unwrap();
        // x0 + x1 + x2 = 0 and x2 - x3 = 0 on four columns.
        let rows = vec![vec![(0, 1), (1, 1), (2, 1)], vec![(2, 1), (3, 100)]];
        let k = kernel_basis(f, 4, rows.clone());
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let mut dot = 0u64;
                for (c, a) in r {
                    if let Some((_, b)) = v.iter().find(|e| e.0 == *c) {
                        dot = f.add(&dot, &f.mul(a, b));
                    }
                }
                assert_eq!(dot, 0);
            }
        }
        let leads: Vec<u32> = k.iter().map(|v| v[0].0).collect();
        assert_eq!(leads, vec![0, 1]);
    }

    #[test]
    fn bareiss_matches_modular_rank() {
        let m: Vec<Vec<BigInt>> = [[2, 4, 6], [1, 2, 3], [0, 1, 5], [3, 7, 14]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(bareiss_rank(m), 2);
        let id: Vec<Vec<BigInt>> = (0..4)
            .map(|i| (0..4).map(|j| BigInt::from((i == j) as i32 * 7)).collect())
            .collect();
        assert_eq!(bareiss_rank(id), 4);
    }
}
