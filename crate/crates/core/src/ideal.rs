//! Homogeneous ideals handled one graded component at a time.
//!
//! Every ideal kind knows how to produce a reduced echelon basis of its
//! degree-`d` piece; results are cached per ideal value and shared by its
//! clones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{intersect_spans, kernel_basis, Echelon, GradedBasis, MonomialSpace, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::shapes::Partition;
use crate::specht::{FrJ, FrJKind, SpechtSystem};
use crate::variety::SetPartition;

#[derive(Clone)]
pub enum IdealKind<F: Field> {
    /// Generated by homogeneous polynomials.
    Generated(Vec<Polynomial<F>>),
    /// `P_Π`: differences within each block.
    PartitionIdeal(SetPartition),
    /// `P_F` for one subset `F`, `|F| >= 2`.
    Clique(Vec<usize>),
    /// `I_{n,k}`: the intersection of `P_F` over all `k`-subsets `F`.
    IntersectionInk(usize),
    /// `I_<m>`: squarefree monomials of degree `m`.
    SquarefreeMonomials(usize),
    Sum(Vec<IdealSpec<F>>),
    Intersection(Vec<IdealSpec<F>>),
    /// Image under `x_n -> 0`, in one variable fewer.
    Specialized(Box<IdealSpec<F>>),
}

type Cache<F> = Arc<Mutex<HashMap<usize, Arc<GradedBasis<F>>>>>;

/// A homogeneous ideal of `K[x_1..x_n]` with a per-degree component cache.
#[derive(Clone)]
pub struct IdealSpec<F: Field> {
    nvars: usize,
    field: F,
    kind: IdealKind<F>,
    label: String,
    cache: Cache<F>,
}

impl<F: Field> fmt::Debug for IdealSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealSpec({} in {} vars over {})", self.label, self.nvars, self.field.spec())
    }
}

impl<F: Field> IdealSpec<F> {
    fn build(field: F, nvars: usize, kind: IdealKind<F>, label: String) -> Self {
        Self {
            nvars,
            field,
            kind,
            label,
            cache: Arc::default(),
        }
    }

    pub fn generated(field: F, nvars: usize, gens: Vec<Polynomial<F>>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: g.nvars(),
                });
            }
            g.homogeneous_degree()?;
        }
        let gens: Vec<Polynomial<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let label = format!("({} generators)", gens.len());
        Ok(Self::build(field, nvars, IdealKind::Generated(gens), label))
    }

    pub fn zero(field: F, nvars: usize) -> Self {
        Self::build(field, nvars, IdealKind::Generated(Vec::new()), "(0)".into())
    }

    /// The Specht ideal of `λ`, generated by the standard Specht polynomials.
    pub fn specht(field: F, lambda: &Partition) -> Result<Self> {
        let sys = SpechtSystem::new(lambda, field)?;
        let mut i = Self::generated(field, lambda.n(), sys.polynomials())?;
        i.label = format!("ISp({lambda})");
        Ok(i)
    }

    /// The ideal generated by every `frJ` generator of the given kind.
    pub fn frj(field: F, kind: FrJKind) -> Result<Self> {
        let g = FrJ::full(field, kind);
        let mut i = Self::generated(field, kind.nvars(), g.generators())?;
        i.label = format!("frJ({})", kind.mu());
        Ok(i)
    }

    pub fn partition_ideal(field: F, pi: SetPartition) -> Self {
        let label = format!("P({pi})");
        Self::build(field, pi.n(), IdealKind::PartitionIdeal(pi), label)
    }

    pub fn clique(field: F, nvars: usize, f: &[usize]) -> Result<Self> {
        let mut f = f.to_vec();
        f.sort_unstable();
        f.dedup();
        if f.len() < 2 {
            return Err(Error::Precondition("a clique ideal needs |F| >= 2".into()));
        }
        if f.iter().any(|&x| x == 0 || x > nvars) {
            return Err(Error::Precondition(format!("F must lie in 1..{nvars}")));
        }
        let label = format!("P{{{}}}", f.iter().join(","));
        Ok(Self::build(field, nvars, IdealKind::Clique(f), label))
    }

    pub fn intersection_ink(field: F, n: usize, k: usize) -> Result<Self> {
        if k < 2 || k > n {
            return Err(Error::Precondition(format!("I_{{n,k}} needs 2 <= k <= n, got n={n}, k={k}")));
        }
        Ok(Self::build(field, n, IdealKind::IntersectionInk(k), format!("I({n},{k})")))
    }

    pub fn squarefree_monomials(field: F, nvars: usize, m: usize) -> Self {
        Self::build(field, nvars, IdealKind::SquarefreeMonomials(m), format!("I<{m}>"))
    }

    fn check_same_ring(parts: &[IdealSpec<F>]) -> Result<(F, usize)> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Precondition("empty list of ideals".into()))?;
        for p in parts {
            if p.nvars != first.nvars {
                return Err(Error::DimensionMismatch {
                    expected: first.nvars,
                    found: p.nvars,
                });
            }
        }
        Ok((first.field, first.nvars))
    }

    pub fn sum(parts: Vec<IdealSpec<F>>) -> Result<Self> {
        let (field, n) = Self::check_same_ring(&parts)?;
        let label = parts.iter().map(|p| p.label.clone()).join(" + ");
        Ok(Self::build(field, n, IdealKind::Sum(parts), label))
    }

    pub fn intersection(parts: Vec<IdealSpec<F>>) -> Result<Self> {
        let (field, n) = Self::check_same_ring(&parts)?;
        let label = parts.iter().map(|p| p.label.clone()).join(" ∩ ");
        Ok(Self::build(field, n, IdealKind::Intersection(parts), label))
    }

    /// The image under `x_n -> 0`. Generated ideals map generator by
    /// generator; other kinds are specialized component by component.
    pub fn specialize_xn(&self) -> Result<Self> {
        if self.nvars == 0 {
            return Err(Error::Precondition("no variable to specialize".into()));
        }
        let label = format!("φ({})", self.label);
        Ok(match &self.kind {
            IdealKind::Generated(gens) => {
                let imgs = gens.iter().map(|g| g.specialize_last_to_zero()).collect();
                let mut i = Self::generated(self.field, self.nvars - 1, imgs)?;
                i.label = label;
                i
            }
            _ => Self::build(
                self.field,
                self.nvars - 1,
                IdealKind::Specialized(Box::new(self.clone())),
                label,
            ),
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn kind(&self) -> &IdealKind<F> {
        &self.kind
    }

    /// Reduced basis of the degree-`d` component.
    pub fn component(&self, d: usize) -> Result<Arc<GradedBasis<F>>> {
        if let Some(b) = self.cache.lock().unwrap().get(&d) {
            return Ok(b.clone());
        }
        let b = Arc::new(self.compute_component(d)?);
        self.cache.lock().unwrap().insert(d, b.clone());
        Ok(b)
    }

    fn compute_component(&self, d: usize) -> Result<GradedBasis<F>> {
        let f = self.field;
        let n = self.nvars;
        let space = MonomialSpace::get(n, d);
        Ok(match &self.kind {
            IdealKind::Generated(gens) => {
                let mut ech = Echelon::new(f, space.len());
                for g in gens {
                    let e = g.homogeneous_degree()?.expect("zero generators are dropped");
                    if e > d {
                        continue;
                    }
                    for m in Monomial::all_of_degree(n, d - e) {
                        ech.insert(&space.to_sparse(&g.mul_monomial(&m)));
                        if ech.is_full() {
                            break;
                        }
                    }
                }
                GradedBasis::from_echelon(f, space, ech)
            }
            IdealKind::PartitionIdeal(pi) => {
                let target: Vec<usize> = {
                    let mut t = vec![0; n];
                    for b in pi.blocks() {
                        for &x in b {
                            t[x - 1] = b[0] - 1;
                        }
                    }
                    t
                };
                collapse_kernel(f, &space, &[target])
            }
            IdealKind::Clique(fs) => collapse_kernel(f, &space, &[clique_map(n, fs)]),
            IdealKind::IntersectionInk(k) => {
                let maps: Vec<Vec<usize>> = (1..=n)
                    .combinations(*k)
                    .map(|fs| clique_map(n, &fs))
                    .collect();
                collapse_kernel(f, &space, &maps)
            }
            IdealKind::SquarefreeMonomials(m) => {
                let rows = space
                    .monomials()
                    .iter()
                    .enumerate()
                    .filter(|(_, mono)| mono.support_size() >= *m)
                    .map(|(c, _)| vec![(c as u32, f.one())]);
                GradedBasis::from_sparse_rows(f, space.clone(), rows)
            }
            IdealKind::Sum(parts) => {
                let mut ech = Echelon::new(f, space.len());
                for p in parts {
                    let c = p.component(d)?;
                    for r in c.echelon().sorted_rows() {
                        ech.insert(r);
                    }
                }
                GradedBasis::from_echelon(f, space, ech)
            }
            IdealKind::Intersection(parts) => {
                let comps: Vec<GradedBasis<F>> = parts
                    .iter()
                    .map(|p| p.component(d).map(|c| (*c).clone()))
                    .collect::<Result<_>>()?;
                intersect_spans(&comps)?
            }
            IdealKind::Specialized(inner) => {
                let c = inner.component(d)?;
                let src = c.space().clone();
                let mut ech = Echelon::new(f, space.len());
                for r in c.echelon().sorted_rows() {
                    let mut img: SparseVec<F::Elem> = r
                        .iter()
                        .filter_map(|(col, e)| {
                            let m = src.monomial(*col);
                            (m.exponents()[n] == 0).then(|| {
                                let short = Monomial::from_exponents(m.exponents()[..n].to_vec());
                                (space.column(&short).unwrap(), e.clone())
                            })
                        })
                        .collect();
                    img.sort_unstable_by_key(|x| x.0);
                    ech.insert(&img);
                }
                GradedBasis::from_echelon(f, space, ech)
            }
        })
    }

    /// `dim (R/I)_d` for `d = 0..=d_max`.
    pub fn hilbert_function(&self, d_max: usize) -> Result<Vec<usize>> {
        (0..=d_max)
            .into_par_iter()
            .map(|d| {
                let c = self.component(d)?;
                Ok(c.ambient_dimension() - c.dimension())
            })
            .collect()
    }

    /// `dim I_d` for `d = 0..=d_max`.
    pub fn component_dimensions(&self, d_max: usize) -> Result<Vec<usize>> {
        (0..=d_max)
            .into_par_iter()
            .map(|d| Ok(self.component(d)?.dimension()))
            .collect()
    }

    pub fn quotient(&self, d: usize) -> Result<QuotientComponent<F>> {
        let ideal_basis = self.component(d)?;
        Ok(QuotientComponent {
            degree: d,
            quotient_basis: ideal_basis.standard_monomials(),
            ideal_basis,
        })
    }

    /// Normal form of a degree-`d` polynomial modulo `I_d`.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let d = match p.homogeneous_degree()? {
            Some(d) => d,
            None => return Ok(p.clone()),
        };
        self.component(d)?.reduce(p)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Number of minimal generators in each degree up to `d_max`:
    /// `dim I_d - dim (R_1 I_{d-1})`.
    pub fn minimal_generator_counts(&self, d_max: usize) -> Result<Vec<usize>> {
        let f = self.field;
        let n = self.nvars;
        (0..=d_max)
            .into_par_iter()
            .map(|d| {
                let cur = self.component(d)?;
                if d == 0 {
                    return Ok(cur.dimension());
                }
                let prev = self.component(d - 1)?;
                let space = MonomialSpace::get(n, d);
                let mut ech = Echelon::new(f, space.len());
                'outer: for v in prev.vectors() {
                    for i in 0..n {
                        ech.insert(&space.to_sparse(&v.mul_monomial(&Monomial::var(n, i))));
                        if ech.rank() == cur.dimension() {
                            break 'outer;
                        }
                    }
                }
                Ok(cur.dimension() - ech.rank())
            })
            .collect()
    }
}

/// Sends every variable of `F` to the smallest one.
fn clique_map(n: usize, fs: &[usize]) -> Vec<usize> {
    let lo = fs.iter().min().copied().unwrap() - 1;
    let mut t: Vec<usize> = (0..n).collect();
    for &x in fs {
        t[x - 1] = lo;
    }
    t
}

/// Degree-`d` piece of the intersection of the kernels of variable
/// substitutions `x_i -> x_{map[i]}`.
fn collapse_kernel<F: Field>(field: F, space: &Arc<MonomialSpace>, maps: &[Vec<usize>]) -> GradedBasis<F> {
    let n = space.nvars;
    let mut rows: Vec<SparseVec<F::Elem>> = Vec::new();
    for map in maps {
        let mut groups: BTreeMap<Vec<u16>, SparseVec<F::Elem>> = BTreeMap::new();
        for (c, m) in space.monomials().iter().enumerate() {
            let mut img = vec![0u16; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                img[map[i]] += e;
            }
            groups.entry(img).or_default().push((c as u32, field.one()));
        }
        // Singleton groups force a coordinate to zero; keep them all.
        rows.extend(groups.into_values());
    }
    let kern = kernel_basis(field, space.len(), rows);
    GradedBasis::from_sparse_rows(field, space.clone(), kern)
}

/// A graded piece of `R/I` with its monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientComponent<F: Field> {
    pub degree: usize,
    pub quotient_basis: Vec<Monomial>,
    pub ideal_basis: Arc<GradedBasis<F>>,
}

impl<F: Field> QuotientComponent<F> {
    pub fn dimension(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Coordinates of the normal form of `p` on the quotient basis.
    pub fn coordinates(&self, p: &Polynomial<F>) -> Result<SparseVec<F::Elem>> {
        let nf = self.ideal_basis.reduce(p)?;
        let index: HashMap<&Monomial, u32> = self
            .quotient_basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i as u32))
            .collect();
        let mut v: SparseVec<F::Elem> = nf
            .terms()
            .map(|(m, c)| (index[m], c.clone()))
            .collect();
        v.sort_unstable_by_key(|x| x.0);
        Ok(v)
    }
}

/// Outcome of comparing two ideals degree by degree.
#[derive(Clone, Debug)]
pub struct EqualityVerdict<F: Field> {
    pub max_degree: usize,
    pub equal: bool,
    pub first_disagreement: Option<usize>,
    /// An element of one ideal's component missing from the other's.
    pub separating: Option<Polynomial<F>>,
    /// Which side the separating element belongs to: 0 for the first ideal.
    pub separating_side: Option<u8>,
    pub dims_left: Vec<usize>,
    pub dims_right: Vec<usize>,
}

/// Compares `I_d` and `J_d` for `d = 0..=max_degree`. Equality is only
/// claimed up to that degree.
pub fn equal_up_to_degree<F: Field>(i: &IdealSpec<F>, j: &IdealSpec<F>, max_degree: usize) -> Result<EqualityVerdict<F>> {
    if i.nvars != j.nvars {
        return Err(Error::DimensionMismatch {
            expected: i.nvars,
            found: j.nvars,
        });
    }
    if i.field != j.field {
        return Err(Error::InvalidField("ideals over different fields".into()));
    }
    let pairs: Vec<(Arc<GradedBasis<F>>, Arc<GradedBasis<F>>)> = (0..=max_degree)
        .into_par_iter()
        .map(|d| Ok((i.component(d)?, j.component(d)?)))
        .collect::<Result<_>>()?;
    let dims_left = pairs.iter().map(|p| p.0.dimension()).collect();
    let dims_right = pairs.iter().map(|p| p.1.dimension()).collect();
    for (d, (a, b)) in pairs.iter().enumerate() {
        if a == b {
            continue;
        }
        let (sep, side) = match a.vectors().into_iter().find(|v| !b.contains(v).unwrap()) {
            Some(v) => (v, 0),
            None => (
                b.vectors()
                    .into_iter()
                    .find(|v| !a.contains(v).unwrap())
                    .expect("different subspaces"),
                1,
            ),
        };
        return Ok(EqualityVerdict {
            max_degree,
            equal: false,
            first_disagreement: Some(d),
            separating: Some(sep),
            separating_side: Some(side),
            dims_left,
            dims_right,
        });
    }
    Ok(EqualityVerdict {
        max_degree,
        equal: true,
        first_disagreement: None,
        separating: None,
        separating_side: None,
        dims_left,
        dims_right,
    })
}

/// Degree-`d` socle of `R/I`: elements killed by every variable, given by
/// normal-form representatives.
pub fn socle<F: Field>(ideal: &IdealSpec<F>, d: usize) -> Result<GradedBasis<F>> {
    let f = ideal.field;
    let n = ideal.nvars;
    let q = ideal.quotient(d)?;
    let q1 = ideal.quotient(d + 1)?;
    // Rows: one per (variable, basis monomial of Q_{d+1}); columns: Q_d.
    let mut rows: BTreeMap<(usize, u32), SparseVec<F::Elem>> = BTreeMap::new();
    for (col, s) in q.quotient_basis.iter().enumerate() {
        for i in 0..n {
            let img = Polynomial::monomial(f, f.one(), s.mul_var(i));
            for (t, c) in q1.coordinates(&img)? {
                rows.entry((i, t)).or_default().push((col as u32, c));
            }
        }
    }
    let kern = kernel_basis(f, q.dimension(), rows.into_values());
    let space = MonomialSpace::get(n, d);
    let ambient_rows = kern.into_iter().map(|v| {
        let mut r: SparseVec<F::Elem> = v
            .into_iter()
            .map(|(c, e)| (space.column(&q.quotient_basis[c as usize]).unwrap(), e))
            .collect();
        r.sort_unstable_by_key(|x| x.0);
        r
    });
    Ok(GradedBasis::from_sparse_rows(f, space.clone(), ambient_rows))
}

/// Whether `y` (homogeneous of degree `d`) is a nonzero socle element of
/// `R/I`, checked directly: `y ∉ I` and `x_i y ∈ I` for all `i`.
pub fn is_socle_element<F: Field>(ideal: &IdealSpec<F>, y: &Polynomial<F>) -> Result<bool> {
    if ideal.contains(y)? {
        return Ok(false);
    }
    for i in 0..ideal.nvars {
        let xi = Polynomial::var(ideal.field, ideal.nvars, i);
        if !ideal.contains(&(&xi * y))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityVerdict {
    pub injective: bool,
    pub dim_source: usize,
    pub dim_target: usize,
    pub rank: usize,
}

/// Injectivity of multiplication by a linear form `(R/I)_d -> (R/I)_{d+1}`.
pub fn mult_injective<F: Field>(form: &Polynomial<F>, ideal: &IdealSpec<F>, d: usize) -> Result<InjectivityVerdict> {
    if form.homogeneous_degree()? != Some(1) {
        return Err(Error::Precondition("multiplier must be a nonzero linear form".into()));
    }
    if form.nvars() != ideal.nvars {
        return Err(Error::DimensionMismatch {
            expected: ideal.nvars,
            found: form.nvars(),
        });
    }
    let f = ideal.field;
    let q = ideal.quotient(d)?;
    let q1 = ideal.quotient(d + 1)?;
    let mut ech = Echelon::new(f, q1.dimension());
    for s in &q.quotient_basis {
        let img = form.mul_monomial(s);
        ech.insert(&q1.coordinates(&img)?);
    }
    Ok(InjectivityVerdict {
        injective: ech.rank() == q.dimension(),
        dim_source: q.dimension(),
        dim_target: q1.dimension(),
        rank: ech.rank(),
    })
}

/// `I^Sp_{(n-3,2)} + I_<3>` in `n - 1` variables, whose quotient has a
/// degree-2 socle exactly in characteristic 2.
pub fn cubic_truncation<F: Field>(field: F, n: usize) -> Result<IdealSpec<F>> {
    if n < 5 {
        return Err(Error::Precondition(format!("needs n >= 5, got {n}")));
    }
    let mu = Partition::new(vec![n - 3, 2])?;
    let sp = IdealSpec::specht(field, &mu)?;
    let cube = IdealSpec::squarefree_monomials(field, n - 1, 3);
    Ok(IdealSpec::sum(vec![sp, cube])?.with_label(format!("ISp({mu}) + I<3>")))
}

/// `x_1 + ... + x_m`.
pub fn elementary_e1<F: Field>(field: F, m: usize) -> Polynomial<F> {
    (0..m).fold(Polynomial::zero(field, m), |acc, i| &acc + &Polynomial::var(field, m, i))
}

/// Coefficients of `(1 + (n-2) t + t^2) / (1 - t)^2` up to `t^d_max`.
pub fn two_row_hilbert_series(n: usize, d_max: usize) -> Vec<usize> {
    let num = [1usize, n - 2, 1];
    (0..=d_max)
        .map(|d| {
            num.iter()
                .enumerate()
                .filter(|(e, _)| *e <= d)
                .map(|(e, c)| c * (d - e + 1))
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn spec_component_examples() {
        let q = Rationals;
        let c = IdealSpec::clique(q, 2, &[1, 2]).unwrap().component(1).unwrap();
        assert_eq!(c.vectors(), vec![Polynomial::parse(q, 2, "x1 - x2").unwrap()]);
        let ink = IdealSpec::intersection_ink(q, 4, 3).unwrap();
        assert_eq!(ink.component(2).unwrap().dimension(), 2);
        let sq = IdealSpec::squarefree_monomials(q, 3, 2);
        assert_eq!(sq.component(2).unwrap().dimension(), 3);
        assert!(IdealSpec::clique(q, 3, &[2]).is_err());
        assert!(IdealSpec::intersection_ink(q, 4, 1).is_err());
        assert!(IdealSpec::intersection_ink(q, 4, 5).is_err());
    }

    #[test]
    fn ink_matches_zassenhaus_intersection() {
        let q = Rationals;
        for d in 0..=4 {
            let ink = IdealSpec::intersection_ink(q, 4, 3).unwrap().component(d).unwrap();
            let parts: Vec<IdealSpec<Rationals>> = (1..=4)
                .combinations(3)
                .map(|f| IdealSpec::clique(q, 4, &f).unwrap())
                .collect();
            let via = IdealSpec::intersection(parts).unwrap().component(d).unwrap();
            assert_eq!(*ink, *via, "degree {d}");
        }
    }

    #[test]
    fn hilbert_functions() {
        let q = Rationals;
        let i = IdealSpec::specht(q, &p("2,2")).unwrap();
        assert_eq!(i.hilbert_function(5).unwrap(), vec![1, 4, 8, 12, 16, 20]);
        let i = IdealSpec::specht(q, &p("3,2")).unwrap();
        assert_eq!(i.hilbert_function(4).unwrap(), vec![1, 5, 10, 15, 20]);
        let z = IdealSpec::zero(q, 3);
        let hf = z.hilbert_function(5).unwrap();
        assert_eq!(hf, (0..=5).map(|d| binom(d + 2, 2)).collect::<Vec<_>>());
        assert_eq!(two_row_hilbert_series(4, 5), vec![1, 4, 8, 12, 16, 20]);
    }

    #[test]
    fn equality_examples() {
        let q = Rationals;
        let a = IdealSpec::specht(q, &p("2,2")).unwrap();
        let b = IdealSpec::intersection_ink(q, 4, 3).unwrap();
        assert!(equal_up_to_degree(&a, &b, 6).unwrap().equal);
        assert!(equal_up_to_degree(&a, &a, 3).unwrap().equal);
        let c = IdealSpec::specht(q, &p("3,2,1")).unwrap();
        let e = IdealSpec::intersection_ink(q, 6, 4).unwrap();
        let v = equal_up_to_degree(&c, &e, 4).unwrap();
        assert!(!v.equal);
        let sep = v.separating.unwrap();
        assert_eq!(v.separating_side, Some(1));
        assert!(e.contains(&sep).unwrap() && !c.contains(&sep).unwrap());
        let wrong = IdealSpec::zero(q, 5);
        assert!(equal_up_to_degree(&a, &wrong, 2).is_err());
    }

    #[test]
    fn specialization_of_hook() {
        let q = Rationals;
        let i = IdealSpec::specht(q, &p("2,1")).unwrap().specialize_xn().unwrap();
        let m = IdealSpec::generated(
            q,
            2,
            vec![Polynomial::var(q, 2, 0), Polynomial::var(q, 2, 1)],
        )
        .unwrap();
        assert!(equal_up_to_degree(&i, &m, 3).unwrap().equal);
    }

    #[test]
    fn socle_and_injectivity_small() {
        let q = Rationals;
        let x2 = Polynomial::parse(q, 1, "x1^2").unwrap();
        let i = IdealSpec::generated(q, 1, vec![x2]).unwrap();
        let s = socle(&i, 1).unwrap();
        assert_eq!(s.vectors(), vec![Polynomial::var(q, 1, 0)]);
        let x3 = Polynomial::parse(q, 1, "x1^3").unwrap();
        let j = IdealSpec::generated(q, 1, vec![x3]).unwrap();
        let v = mult_injective(&Polynomial::var(q, 1, 0), &j, 1).unwrap();
        assert!(v.injective);
        assert_eq!(socle(&j, 1).unwrap().dimension(), 0);
    }

    #[test]
    fn modular_and_rational_dimensions_agree() {
        let f = PrimeField::new(1_000_003).unwrap();
        let a = IdealSpec::specht(Rationals, &p("3,3")).unwrap();
        let b = IdealSpec::specht(f, &p("3,3")).unwrap();
        assert_eq!(a.hilbert_function(6).unwrap(), b.hilbert_function(6).unwrap());
    }

    #[test]
    fn specialization_matches_frj() {
        let q = Rationals;
        let a = IdealSpec::specht(q, &p("3,2")).unwrap().specialize_xn().unwrap();
        let b = IdealSpec::frj(q, FrJKind::TwoRow { n: 5, d: 2 }).unwrap();
        assert!(equal_up_to_degree(&a, &b, 5).unwrap().equal);
        let a = IdealSpec::specht(q, &p("2,2,1")).unwrap().specialize_xn().unwrap();
        let b = IdealSpec::frj(q, FrJKind::Aa1 { a: 2 }).unwrap();
        assert!(equal_up_to_degree(&a, &b, 5).unwrap().equal);
    }

    #[test]
    fn radical_of_frj_desk_check() {
        let q = Rationals;
        // (n, λ1) with λ_{l-1} = λ1; μ drops the last box.
        for (n, l1, mu) in [
            (4, 2, "2,1"),
            (5, 2, "2,2"),
            (6, 3, "3,2"),
            (6, 2, "2,2,1"),
            (7, 3, "3,3"),
            (7, 2, "2,2,2"),
        ] {
            let mu = p(mu);
            let lhs = IdealSpec::intersection_ink(q, n, l1 + 1).unwrap().specialize_xn().unwrap();
            let rad = if l1 + 1 < n {
                IdealSpec::intersection_ink(q, n - 1, l1 + 1).unwrap()
            } else {
                IdealSpec::zero(q, n - 1)
            };
            let rhs = IdealSpec::intersection(vec![
                rad,
                IdealSpec::squarefree_monomials(q, n - 1, n - l1),
            ])
            .unwrap();
            let v = equal_up_to_degree(&lhs, &rhs, 6).unwrap();
            assert!(v.equal, "n={n} mu={mu} {:?}", v.first_disagreement);
        }
    }

    #[test]
    fn cubic_truncation_socle() {
        let q = Rationals;
        let f2 = PrimeField::new(2).unwrap();
        let a0 = cubic_truncation(q, 6).unwrap();
        let a2 = cubic_truncation(f2, 6).unwrap();
        assert_eq!(a0.quotient(2).unwrap().dimension(), 10);
        assert_eq!(socle(&a0, 2).unwrap().dimension(), 0);
        let y = Polynomial::parse(f2, 5, "x1*x2 + x2*x3 + x1*x3").unwrap();
        assert!(is_socle_element(&a2, &y).unwrap());
        let s = socle(&a2, 2).unwrap();
        assert!(s.contains(&a2.normal_form(&y).unwrap()).unwrap());
        let v0 = mult_injective(&elementary_e1(q, 5), &a0, 2).unwrap();
        assert_eq!((v0.injective, v0.dim_source, v0.dim_target), (true, 10, 10));
        assert!(!mult_injective(&elementary_e1(f2, 5), &a2, 2).unwrap().injective);
    }

    #[test]
    fn minimal_generators_of_ink() {
        let i = IdealSpec::intersection_ink(Rationals, 6, 4).unwrap();
        let counts = i.minimal_generator_counts(5).unwrap();
        assert_eq!(counts, vec![0, 0, 0, 5, 0, 0]);
    }
}
