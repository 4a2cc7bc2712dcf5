//! Specht polynomials, the two-row straightening machinery and membership
//! certificates for the specialized ideals `frJ`.
//!
//! Letters are 1-based (`x_i` is variable `i - 1`). A *frame* is a two-row
//! tableau read relative to a squarefree monomial `x^A`: the columns holding
//! a letter of `A` come first (that letter on top, in increasing order of
//! `A`), then the remaining 2-columns sorted by top entry with top < bottom,
//! then the singletons in increasing order.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{echelon_span, kernel_basis, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::shapes::{enumerate_standard_tableaux, normal_form, LetterOrder, Partition, Tableau};

/// `f_T` in `nvars` variables (`nvars >= T.n()`).
pub fn specht_poly_in<F: Field>(t: &Tableau, field: F, nvars: usize) -> Polynomial<F> {
    assert!(nvars >= t.n());
    let mut acc = Polynomial::one(field, nvars);
    for col in t.columns() {
        for s in 0..col.len() {
            for u in s + 1..col.len() {
                acc = &acc * &Polynomial::difference(field, nvars, col[s] - 1, col[u] - 1);
            }
        }
    }
    acc
}

/// The Specht polynomial `f_T = prod_columns prod_{s<t} (x_{c_s} - x_{c_t})`.
pub fn specht_poly<F: Field>(t: &Tableau, field: F) -> Polynomial<F> {
    specht_poly_in(t, field, t.n())
}

/// Generators of the Specht ideal of one shape, one per standard tableau.
#[derive(Clone, Debug)]
pub struct SpechtSystem<F: Field> {
    pub shape: Partition,
    pub field: F,
    pub generators: Vec<(Tableau, Polynomial<F>)>,
}

impl<F: Field> SpechtSystem<F> {
    pub fn new(shape: &Partition, field: F) -> Result<Self> {
        shape.require_nontrivial()?;
        let generators = enumerate_standard_tableaux(shape, LetterOrder::Natural)
            .into_iter()
            .map(|t| {
                let p = specht_poly(&t, field);
                (t, p)
            })
            .collect();
        Ok(Self {
            shape: shape.clone(),
            field,
            generators,
        })
    }

    pub fn degree(&self) -> usize {
        self.shape.specht_degree()
    }

    pub fn nvars(&self) -> usize {
        self.shape.n()
    }

    pub fn polynomials(&self) -> Vec<Polynomial<F>> {
        self.generators.iter().map(|(_, p)| p.clone()).collect()
    }
}

/// Rank of the standard Specht polynomials of shape `λ`.
pub fn independence_rank<F: Field>(lambda: &Partition, field: F) -> Result<usize> {
    let n = lambda.n();
    if lambda.is_trivial() {
        return Ok(1);
    }
    let sys = SpechtSystem::new(lambda, field)?;
    Ok(echelon_span(field, n, &sys.polynomials(), sys.degree())?.dimension())
}

/// Splits `T` along its column `{i, j}` and singleton column `{k}`.
///
/// With the column stored as `(p, q)` top to bottom, `T1` has column `(p, k)`
/// and singleton `q`, `T2` has column `(k, q)` and singleton `p`, and
/// `f_T = f_{T1} + f_{T2}`.
pub fn three_term_split(t: &Tableau, i: usize, j: usize, k: usize) -> Result<(Tableau, Tableau)> {
    let mut cols = t.columns();
    let c = cols
        .iter()
        .position(|c| c.len() == 2 && c.contains(&i) && c.contains(&j) && i != j)
        .ok_or_else(|| Error::Precondition(format!("no column {{{i},{j}}} in {t}")))?;
    let s = cols
        .iter()
        .position(|c| c.len() == 1 && c[0] == k)
        .ok_or_else(|| Error::Precondition(format!("{k} is not a singleton column of {t}")))?;
    let (p, q) = (cols[c][0], cols[c][1]);
    let t1 = {
        cols[c] = vec![p, k];
        cols[s] = vec![q];
        Tableau::from_columns(&cols)?
    };
    let t2 = {
        cols[c] = vec![k, q];
        cols[s] = vec![p];
        Tableau::from_columns(&cols)?
    };
    Ok((t1, t2))
}

/// A two-row tableau in frame normal form relative to the letters `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    /// `(a_b, j_b)` for each letter `a_b` of `A`, increasing in `a_b`.
    pub a_cols: Vec<(usize, usize)>,
    /// The other 2-columns, `top < bottom`, increasing in `top`.
    pub free_cols: Vec<(usize, usize)>,
    /// The singleton columns, increasing.
    pub singles: Vec<usize>,
}

impl Frame {
    /// Reads `T` as a frame relative to `a` (sorted letters). Returns the
    /// frame and the sign with `f_frame = sign * f_T`. Fails unless every
    /// letter of `a` sits in its own 2-column (membership in `X`).
    pub fn from_tableau(t: &Tableau, a: &[usize]) -> Result<(Frame, i8)> {
        let shape = t.shape();
        if shape.len() != 2 {
            return Err(Error::MalformedFrame(format!("{t} is not a two-row tableau")));
        }
        check_letters(a, t.n())?;
        let is_a = |x: usize| a.binary_search(&x).is_ok();
        let mut sign = 1i8;
        let mut a_cols = Vec::new();
        let mut free_cols = Vec::new();
        let mut singles = Vec::new();
        for col in t.columns() {
            match col[..] {
                [x] => {
                    if is_a(x) {
                        return Err(Error::Precondition(format!(
                            "letter {x} of A is a singleton in {t}"
                        )));
                    }
                    singles.push(x);
                }
                [p, q] => match (is_a(p), is_a(q)) {
                    (true, true) => {
                        return Err(Error::Precondition(format!(
                            "letters {p} and {q} of A share a column in {t}"
                        )))
                    }
                    (true, false) => a_cols.push((p, q)),
                    (false, true) => {
                        sign = -sign;
                        a_cols.push((q, p));
                    }
                    (false, false) => {
                        if p < q {
                            free_cols.push((p, q));
                        } else {
                            sign = -sign;
                            free_cols.push((q, p));
                        }
                    }
                },
                _ => unreachable!("two rows"),
            }
        }
        let mut f = Frame {
            a_cols,
            free_cols,
            singles,
        };
        f.sort();
        Ok((f, sign))
    }

    fn sort(&mut self) {
        self.a_cols.sort_unstable();
        self.free_cols.sort_unstable();
        self.singles.sort_unstable();
    }

    pub fn to_tableau(&self) -> Tableau {
        let mut cols: Vec<Vec<usize>> = Vec::new();
        cols.extend(self.a_cols.iter().map(|&(p, q)| vec![p, q]));
        cols.extend(self.free_cols.iter().map(|&(p, q)| vec![p, q]));
        cols.extend(self.singles.iter().map(|&s| vec![s]));
        Tableau::from_columns(&cols).expect("frame is a valid tableau")
    }

    pub fn n(&self) -> usize {
        2 * (self.a_cols.len() + self.free_cols.len()) + self.singles.len()
    }

    /// `(j_1, ..., j_k)` in the order of `A`.
    pub fn j_tuple(&self) -> Vec<usize> {
        self.a_cols.iter().map(|c| c.1).collect()
    }

    /// Quasi-h-standard: free bottoms increasing and, when there are free
    /// columns, the last free top below the smallest singleton.
    pub fn is_quasi_h_standard(&self) -> bool {
        let bottoms_ok = self.free_cols.windows(2).all(|w| w[0].1 < w[1].1);
        let corner_ok = match (self.free_cols.last(), self.singles.first()) {
            (Some(&(top, _)), Some(&s)) => top < s,
            _ => true,
        };
        bottoms_ok && corner_ok
    }

    /// h-standard: quasi-h-standard and `singles < j_1 < ... < j_k`.
    pub fn is_h_standard(&self) -> bool {
        self.is_quasi_h_standard() && self.sigma().1 == *self
    }

    /// `σ_T` as a map on letters and the image `σ_T T`: the singletons and
    /// the `j_b` are redistributed so that the singletons take the smallest
    /// values and `j_1 < ... < j_k` the rest.
    pub fn sigma(&self) -> (BTreeMap<usize, usize>, Frame) {
        let mut pool: Vec<usize> = self.singles.clone();
        pool.extend(self.j_tuple());
        pool.sort_unstable();
        let m = self.singles.len();
        let mut perm = BTreeMap::new();
        for (pos, &x) in self.singles.iter().enumerate() {
            perm.insert(x, pool[pos]);
        }
        for (b, &(_, j)) in self.a_cols.iter().enumerate() {
            perm.insert(j, pool[m + b]);
        }
        let image = Frame {
            a_cols: self
                .a_cols
                .iter()
                .enumerate()
                .map(|(b, &(a, _))| (a, pool[m + b]))
                .collect(),
            free_cols: self.free_cols.clone(),
            singles: pool[..m].to_vec(),
        };
        (perm, image)
    }

    /// `h_T`: the product over the free columns.
    pub fn h_poly<F: Field>(&self, field: F, nvars: usize) -> Polynomial<F> {
        let mut acc = Polynomial::one(field, nvars);
        for &(p, q) in &self.free_cols {
            acc = &acc * &Polynomial::difference(field, nvars, p - 1, q - 1);
        }
        acc
    }

    pub fn poly<F: Field>(&self, field: F, nvars: usize) -> Polynomial<F> {
        let mut acc = self.h_poly(field, nvars);
        for &(p, q) in &self.a_cols {
            acc = &acc * &Polynomial::difference(field, nvars, p - 1, q - 1);
        }
        acc
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tableau())
    }
}

fn check_letters(a: &[usize], n: usize) -> Result<()> {
    if a.windows(2).any(|w| w[0] >= w[1]) || a.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::MalformedFrame(format!(
            "prefix letters {a:?} must be strictly increasing within 1..{n}"
        )));
    }
    Ok(())
}

/// Rewrites `f_frame` as a `±1` combination of quasi-h-standard frames.
///
/// Eliminates the minimal descent of the free bottoms first; once they
/// increase, a last free top above the smallest singleton is exchanged. The
/// result is not merged, so equal frames may repeat.
pub fn straighten_frame(frame: &Frame) -> Vec<(i8, Frame)> {
    let mut out = Vec::new();
    let mut stack = vec![(1i8, frame.clone())];
    while let Some((s, t)) = stack.pop() {
        let fc = &t.free_cols;
        if let Some(l) = (1..fc.len()).find(|&l| fc[l - 1].1 > fc[l].1) {
            let ((i1, j1), (i2, j2)) = (fc[l - 1], fc[l]);
            let mut ta = t.clone();
            ta.free_cols[l - 1] = (i1, j2);
            ta.free_cols[l] = (i2, j1);
            let mut tb = t.clone();
            tb.free_cols[l - 1] = (i1, i2);
            tb.free_cols[l] = (j2, j1);
            tb.sort();
            stack.push((-s, tb));
            stack.push((s, ta));
        } else if let (Some(&(top, bot)), Some(&low)) = (fc.last(), t.singles.first()) {
            if top < low {
                out.push((s, t));
                continue;
            }
            let last = fc.len() - 1;
            let mut tc = t.clone();
            tc.free_cols[last] = (low, bot);
            tc.singles[0] = top;
            tc.sort();
            let mut td = t.clone();
            td.free_cols[last] = (low, top);
            td.singles[0] = bot;
            td.sort();
            stack.push((-s, td));
            stack.push((s, tc));
        } else {
            out.push((s, t));
        }
    }
    out
}

/// Straightens `T ∈ X` (relative to the sorted letters `a`) into
/// quasi-h-standard tableaux: `f_T = Σ c_l f_{T_l}` with `c_l = ±1`.
pub fn straighten_quasi_h(t: &Tableau, a: &[usize]) -> Result<Vec<(i8, Tableau)>> {
    let (frame, sign) = Frame::from_tableau(t, a)?;
    Ok(straighten_frame(&frame)
        .into_iter()
        .map(|(c, f)| (c * sign, f.to_tableau()))
        .collect())
}

/// `σ_T` and `σ_T T` for `T ∈ X` relative to `a`. The permutation is given on
/// the letters it moves among the singletons and the `j_b`.
pub fn sigma_reduce(t: &Tableau, a: &[usize]) -> Result<(BTreeMap<usize, usize>, Tableau)> {
    let (frame, _) = Frame::from_tableau(t, a)?;
    let (perm, image) = frame.sigma();
    Ok((perm, image.to_tableau()))
}

/// The sets `X ⊇ Y ⊇ Z` of frames for `λ = (n-d, d)` and `x^A`.
#[derive(Clone, Debug)]
pub struct TwoRowFrame {
    pub n: usize,
    pub d: usize,
    pub a: Vec<usize>,
    pub x: Vec<Frame>,
}

impl TwoRowFrame {
    pub fn new(n: usize, d: usize, a: &[usize]) -> Result<Self> {
        if d == 0 || 2 * d > n {
            return Err(Error::InvalidPartition(format!("({},{d}) is not a partition", n - d)));
        }
        check_letters(a, n - 1)?;
        let mut x = Vec::new();
        if a.len() < d {
            enumerate_x(n - 1, d - 1, a, &mut x);
        }
        x.sort();
        Ok(Self {
            n,
            d,
            a: a.to_vec(),
            x,
        })
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn y(&self) -> Vec<Frame> {
        self.x.iter().filter(|f| f.is_quasi_h_standard()).cloned().collect()
    }

    pub fn z(&self) -> Vec<Frame> {
        self.x.iter().filter(|f| f.is_h_standard()).cloned().collect()
    }
}

/// All frames on letters `1..=m` with `r` two-columns whose `A`-letters sit in
/// distinct columns.
fn enumerate_x(m: usize, r: usize, a: &[usize], out: &mut Vec<Frame>) {
    let others: Vec<usize> = (1..=m).filter(|x| a.binary_search(x).is_err()).collect();
    let k = a.len();
    fn bottoms(k: usize, pool: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &x in pool {
            if !cur.contains(&x) {
                cur.push(x);
                bottoms(k, pool, cur, out);
                cur.pop();
            }
        }
    }
    let mut bs = Vec::new();
    bottoms(k, &others, &mut Vec::new(), &mut bs);
    for b in bs {
        let rest: Vec<usize> = others.iter().copied().filter(|x| !b.contains(x)).collect();
        for (free, singles) in pairings(&rest, r - k) {
            let mut f = Frame {
                a_cols: a.iter().copied().zip(b.iter().copied()).collect(),
                free_cols: free,
                singles,
            };
            f.sort();
            out.push(f);
        }
    }
}

/// Ways to choose `r` disjoint pairs from sorted `letters`; each pair is
/// `(smaller, larger)` and the leftover letters are returned too.
pub fn pairings(letters: &[usize], r: usize) -> Vec<(Vec<(usize, usize)>, Vec<usize>)> {
    fn rec(
        rest: &[usize],
        r: usize,
        pairs: &mut Vec<(usize, usize)>,
        singles: &mut Vec<usize>,
        out: &mut Vec<(Vec<(usize, usize)>, Vec<usize>)>,
    ) {
        if rest.len() < 2 * r {
            return;
        }
        let Some((&first, tail)) = rest.split_first() else {
            out.push((pairs.clone(), singles.clone()));
            return;
        };
        if rest.len() > 2 * r {
            singles.push(first);
            rec(tail, r, pairs, singles, out);
            singles.pop();
        }
        if r > 0 {
            for idx in 0..tail.len() {
                let mut rem = tail.to_vec();
                let q = rem.remove(idx);
                pairs.push((first, q));
                rec(&rem, r - 1, pairs, singles, out);
                pairs.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(letters, r, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Which specialized ideal a generator list describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrJKind {
    /// `λ = (n-d, d)`: generators `x_i f_T`, `T` of shape `(n-d, d-1)`, `i` a
    /// singleton of `T`.
    TwoRow { n: usize, d: usize },
    /// `λ = (a, a, 1)`: generators `x_i x_j f_T`, `T` of shape `(a, a)`,
    /// `(i, j)` a column of `T`.
    Aa1 { a: usize },
}

impl FrJKind {
    /// Number of variables of the ring `S` of the generators.
    pub fn nvars(&self) -> usize {
        match *self {
            FrJKind::TwoRow { n, .. } => n - 1,
            FrJKind::Aa1 { a } => 2 * a,
        }
    }

    pub fn mu(&self) -> Partition {
        match *self {
            FrJKind::TwoRow { n, d } if d >= 2 => Partition::new(vec![n - d, d - 1]).unwrap(),
            FrJKind::TwoRow { n, .. } => Partition::new(vec![n - 1]).unwrap(),
            FrJKind::Aa1 { a } => Partition::new(vec![a, a]).unwrap(),
        }
    }
}

/// A generator of `frJ`, keyed by a normal-form tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKey {
    /// `x_i f_T`
    Single { tableau: Tableau, letter: usize },
    /// `x_i x_j f_T` for a column `(i, j)` of `T`
    Pair { tableau: Tableau, letters: (usize, usize) },
}

impl fmt::Display for GenKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenKey::Single { tableau, letter } => write!(f, "x{letter}*f[{tableau}]"),
            GenKey::Pair {
                tableau,
                letters: (i, j),
            } => write!(f, "x{i}*x{j}*f[{tableau}]"),
        }
    }
}

/// Indexed generator list of a specialized ideal.
#[derive(Clone, Debug)]
pub struct FrJ<F: Field> {
    pub field: F,
    pub kind: FrJKind,
    keys: Vec<GenKey>,
    index: HashMap<GenKey, usize>,
}

impl<F: Field> FrJ<F> {
    pub fn empty(field: F, kind: FrJKind) -> Self {
        Self {
            field,
            kind,
            keys: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Every generator, one per equivalence class of tableau and letter choice.
    pub fn full(field: F, kind: FrJKind) -> Self {
        let mut g = Self::empty(field, kind);
        let mu = kind.mu();
        for t in all_tableau_classes(&mu) {
            match kind {
                FrJKind::TwoRow { .. } => {
                    for c in t.columns() {
                        if c.len() == 1 {
                            g.intern(GenKey::Single {
                                tableau: t.clone(),
                                letter: c[0],
                            });
                        }
                    }
                }
                FrJKind::Aa1 { .. } => {
                    for c in t.columns() {
                        g.intern(GenKey::Pair {
                            tableau: t.clone(),
                            letters: (c[0], c[1]),
                        });
                    }
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, idx: usize) -> &GenKey {
        &self.keys[idx]
    }

    pub fn intern(&mut self, key: GenKey) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        self.keys.push(key.clone());
        self.index.insert(key, self.keys.len() - 1);
        self.keys.len() - 1
    }

    /// Interns `x_letter f_T` for any `T`; returns the index and the sign
    /// relating the stored normal form to `T`.
    pub fn intern_single(&mut self, t: &Tableau, letter: usize) -> (usize, i8) {
        let (nf, s) = normal_form(t);
        (self.intern(GenKey::Single { tableau: nf, letter }), s)
    }

    pub fn intern_pair(&mut self, t: &Tableau, i: usize, j: usize) -> (usize, i8) {
        let (nf, s) = normal_form(t);
        let letters = (i.min(j), i.max(j));
        (self.intern(GenKey::Pair { tableau: nf, letters }), s)
    }

    pub fn generator(&self, idx: usize) -> Polynomial<F> {
        let nv = self.kind.nvars();
        match &self.keys[idx] {
            GenKey::Single { tableau, letter } => {
                specht_poly_in(tableau, self.field, nv).mul_monomial(&Monomial::var(nv, letter - 1))
            }
            GenKey::Pair {
                tableau,
                letters: (i, j),
            } => specht_poly_in(tableau, self.field, nv)
                .mul_monomial(&Monomial::squarefree(nv, &[i - 1, j - 1])),
        }
    }

    pub fn generators(&self) -> Vec<Polynomial<F>> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }
}

/// One representative (in normal form) per equivalence class of tableaux of
/// a shape with at most two rows.
pub fn all_tableau_classes(shape: &Partition) -> Vec<Tableau> {
    assert!(shape.len() <= 2, "at most two rows");
    let letters: Vec<usize> = (1..=shape.n()).collect();
    let mut out: Vec<Tableau> = pairings(&letters, shape.part(2))
        .into_iter()
        .map(|(pairs, singles)| {
            let mut cols: Vec<Vec<usize>> = pairs.iter().map(|&(p, q)| vec![p, q]).collect();
            cols.extend(singles.iter().map(|&x| vec![x]));
            normal_form(&Tableau::from_columns(&cols).unwrap()).0
        })
        .collect();
    out.sort();
    out
}

/// One line of a certificate trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLine {
    pub round: usize,
    pub op: String,
    pub tableau: String,
    pub coefficient: String,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.round, self.op, self.tableau, self.coefficient
        )
    }
}

/// An expression of `target` as `Σ coefficient * generator` in `frJ`.
#[derive(Clone, Debug)]
pub struct MembershipCertificate<F: Field> {
    pub target: Polynomial<F>,
    pub combination: Vec<(Polynomial<F>, usize)>,
    pub generators: FrJ<F>,
    pub trace: Vec<TraceLine>,
    /// `(j_1, ..., j_k)` before and after each nontrivial `σ_T`.
    pub j_steps: Vec<(Vec<usize>, Vec<usize>)>,
}

impl<F: Field> MembershipCertificate<F> {
    pub fn reconstruct(&self) -> Polynomial<F> {
        let f = self.generators.field;
        let mut acc = Polynomial::zero(f, self.target.nvars());
        let mut cache: HashMap<usize, Polynomial<F>> = HashMap::new();
        for (c, g) in &self.combination {
            let gp = cache
                .entry(*g)
                .or_insert_with(|| self.generators.generator(*g));
            acc = &acc + &(c * &*gp);
        }
        acc
    }

    pub fn verify(&self) -> bool {
        self.reconstruct() == self.target
    }

    /// Whether every `σ_T` step raised the `j`-tuple. The image is sorted,
    /// so it is compared with the sorted input: coordinatewise at least as
    /// large, and strictly larger unless the step only sorted the `j`'s.
    pub fn j_monotone(&self) -> bool {
        self.j_steps.iter().all(|(raw, after)| {
            let mut sorted = raw.clone();
            sorted.sort_unstable();
            let weak = sorted.iter().zip(after).all(|(x, y)| x <= y);
            weak && (sorted != *after || sorted != *raw)
        })
    }

    pub fn trace_text(&self) -> String {
        let mut s = String::new();
        for l in &self.trace {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s
    }
}

/// Whether every term has at least `m` distinct variables.
pub fn in_squarefree_power<F: Field>(p: &Polynomial<F>, m: usize) -> bool {
    p.terms().all(|(mono, _)| mono.support_size() >= m)
}

struct CertBuilder<F: Field> {
    field: F,
    nvars: usize,
    gens: FrJ<F>,
    combination: Vec<(Polynomial<F>, usize)>,
}

impl<F: Field> CertBuilder<F> {
    /// Records `coef * mono * (±generator)`.
    fn push(&mut self, coef: &F::Elem, mono: Monomial, idx: usize, sign: i8) {
        let f = self.field;
        let c = if sign < 0 { f.neg(coef) } else { coef.clone() };
        self.combination
            .push((Polynomial::monomial(f, c, mono), idx));
    }
}

/// `x^A f_T` for `T` outside `X`, via a singleton `A`-letter or the
/// three-term relation.
fn support_lemma<F: Field>(b: &mut CertBuilder<F>, t: &Tableau, a: &[usize], xa: &Monomial, coef: &F::Elem) -> Result<()> {
    let nv = b.nvars;
    let is_a = |x: usize| a.binary_search(&x).is_ok();
    let cols = t.columns();
    if let Some(c) = cols.iter().find(|c| c.len() == 1 && is_a(c[0])) {
        let i = c[0];
        let (idx, s) = b.gens.intern_single(t, i);
        b.push(coef, xa.div(&Monomial::var(nv, i - 1)).unwrap(), idx, s);
        return Ok(());
    }
    let pair = cols
        .iter()
        .find(|c| c.len() == 2 && is_a(c[0]) && is_a(c[1]))
        .ok_or_else(|| Error::Internal(format!("{t} lies in X")))?;
    let k = cols
        .iter()
        .find(|c| c.len() == 1)
        .ok_or_else(|| Error::Precondition(format!("{t} has no singleton column")))?[0];
    let (p, q) = (pair[0], pair[1]);
    let (t1, t2) = three_term_split(t, p, q, k)?;
    // x_p x_q f_T = x_p (x_q f_{T1}) + x_q (x_p f_{T2}).
    let (i1, s1) = b.gens.intern_single(&t1, q);
    b.push(coef, xa.div(&Monomial::var(nv, q - 1)).unwrap(), i1, s1);
    let (i2, s2) = b.gens.intern_single(&t2, p);
    b.push(coef, xa.div(&Monomial::var(nv, p - 1)).unwrap(), i2, s2);
    Ok(())
}

/// Certificate pieces for `x^A (f_T - f_{σ_T T})`, one transposition of a
/// singleton with a `j_b` at a time.
fn sigma_certificate<F: Field>(b: &mut CertBuilder<F>, frame: &Frame, target: &Frame, xa: &Monomial, coef: &F::Elem) {
    let nv = b.nvars;
    let mut cur = frame.clone();
    let swap = |cur: &mut Frame, b: &mut CertBuilder<F>, pos: usize, s: usize| {
        // Transposition of singleton `s` with the bottom of A-column `pos`:
        // x^A (f_cur - f_{τ cur}) = x^A f_{T'}, where T' has column (s, j)
        // and the A-letter as a singleton.
        let (a_letter, j) = cur.a_cols[pos];
        let mut cols: Vec<Vec<usize>> = Vec::new();
        for (idx, &(p, q)) in cur.a_cols.iter().enumerate() {
            cols.push(if idx == pos { vec![s, j] } else { vec![p, q] });
        }
        cols.extend(cur.free_cols.iter().map(|&(p, q)| vec![p, q]));
        cols.extend(
            cur.singles
                .iter()
                .map(|&x| vec![if x == s { a_letter } else { x }]),
        );
        let t_prime = Tableau::from_columns(&cols).expect("valid");
        let (idx, sg) = b.gens.intern_single(&t_prime, a_letter);
        b.push(coef, xa.div(&Monomial::var(nv, a_letter - 1)).unwrap(), idx, sg);
        cur.a_cols[pos].1 = s;
        let at = cur.singles.iter().position(|&x| x == s).unwrap();
        cur.singles[at] = j;
        cur.singles.sort_unstable();
    };
    for pos in 0..cur.a_cols.len() {
        let want = target.a_cols[pos].1;
        if cur.a_cols[pos].1 == want {
            continue;
        }
        if !cur.singles.contains(&want) {
            // `want` is the bottom of a later A-column: park it first.
            let other = (pos + 1..cur.a_cols.len())
                .find(|&p| cur.a_cols[p].1 == want)
                .expect("target letter is in the pool");
            let s = cur.singles[0];
            swap(&mut cur, b, other, s);
        }
        swap(&mut cur, b, pos, want);
    }
    debug_assert_eq!(&cur, target);
}

/// Replays the reduction of `φ = x^A Σ c_T f_T` (tableaux of shape
/// `(n-d, d-1)` in `n-1` variables) to `frJ`, producing a certificate.
pub fn replay_radical_reduction<F: Field>(
    field: F,
    lambda: &Partition,
    xa: &Monomial,
    coeffs: &[(Tableau, F::Elem)],
) -> Result<MembershipCertificate<F>> {
    if lambda.len() != 2 {
        return Err(Error::InvalidPartition(format!("{lambda} is not a two-row shape")));
    }
    let n = lambda.n();
    let d = lambda.part(2);
    let nv = n - 1;
    if xa.nvars() != nv || !xa.is_squarefree() {
        return Err(Error::Precondition(format!(
            "x^a must be a squarefree monomial in {nv} variables"
        )));
    }
    let a: Vec<usize> = xa.support().iter().map(|&v| v + 1).collect();
    let mu = FrJKind::TwoRow { n, d }.mu();
    let mut target = Polynomial::zero(field, nv);
    for (t, c) in coeffs {
        if t.shape() != mu {
            return Err(Error::InvalidTableau(format!("{t} is not of shape {mu}")));
        }
        target = &target + &specht_poly_in(t, field, nv).mul_monomial(xa).scale(c);
    }
    if !in_squarefree_power(&target, d) {
        return Err(Error::Precondition(format!(
            "φ is not in the ideal of squarefree monomials of degree {d}"
        )));
    }
    let mut b = CertBuilder {
        field,
        nvars: nv,
        gens: FrJ::empty(field, FrJKind::TwoRow { n, d }),
        combination: Vec::new(),
    };
    let mut trace = Vec::new();
    let mut j_steps = Vec::new();
    let mut current: BTreeMap<Frame, F::Elem> = BTreeMap::new();
    for (t, c) in coeffs {
        if field.is_zero(c) {
            continue;
        }
        match Frame::from_tableau(t, &a) {
            Ok((frame, s)) => {
                let c = if s < 0 { field.neg(c) } else { c.clone() };
                accumulate(field, &mut current, frame, &c);
            }
            Err(Error::Precondition(_)) => {
                trace.push(TraceLine {
                    round: 0,
                    op: "support".into(),
                    tableau: t.to_string(),
                    coefficient: field.format(c),
                });
                support_lemma(&mut b, t, &a, xa, c)?;
            }
            Err(e) => return Err(e),
        }
    }
    let max_rounds = 64 * (n + 1) * (n + 1);
    for round in 1..=max_rounds {
        // Operation 1.
        let mut y: BTreeMap<Frame, F::Elem> = BTreeMap::new();
        for (frame, c) in &current {
            for (s, g) in straighten_frame(frame) {
                debug_assert_eq!(g.j_tuple(), frame.j_tuple());
                let cs = if s < 0 { field.neg(c) } else { c.clone() };
                accumulate(field, &mut y, g, &cs);
            }
        }
        for (frame, c) in &y {
            trace.push(TraceLine {
                round,
                op: "op1".into(),
                tableau: frame.to_string(),
                coefficient: field.format(c),
            });
        }
        let mut h_sum = Polynomial::zero(field, nv);
        for (frame, c) in &y {
            h_sum = &h_sum + &frame.h_poly(field, nv).scale(c);
        }
        if !h_sum.is_zero() {
            return Err(Error::Internal(format!(
                "round {round}: Σ c_T h_T = {h_sum} is not zero"
            )));
        }
        if y.is_empty() {
            return Ok(MembershipCertificate {
                target,
                combination: b.combination,
                generators: b.gens,
                trace,
                j_steps,
            });
        }
        if y.keys().all(|f| f.is_h_standard()) {
            return Err(Error::Internal(format!(
                "round {round}: nonzero h-standard coefficients with Σ c_T h_T = 0"
            )));
        }
        // Operation 2.
        let mut next: BTreeMap<Frame, F::Elem> = BTreeMap::new();
        for (frame, c) in y {
            let (_, image) = frame.sigma();
            if image != frame {
                j_steps.push((frame.j_tuple(), image.j_tuple()));
                trace.push(TraceLine {
                    round,
                    op: "op2".into(),
                    tableau: format!("{frame} -> {image}"),
                    coefficient: field.format(&c),
                });
                sigma_certificate(&mut b, &frame, &image, xa, &c);
            }
            accumulate(field, &mut next, image, &c);
        }
        current = next;
    }
    Err(Error::Internal("reduction did not terminate".into()))
}

fn accumulate<F: Field, K: Ord>(field: F, map: &mut BTreeMap<K, F::Elem>, key: K, c: &F::Elem) {
    match map.entry(key) {
        Entry::Vacant(v) => {
            if !field.is_zero(c) {
                v.insert(c.clone());
            }
        }
        Entry::Occupied(mut o) => {
            let sum = field.add(o.get(), c);
            if field.is_zero(&sum) {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Expresses each target as a combination of the given independent
/// polynomials of one degree. `None` if some target is outside the span.
pub fn solve_in_span<F: Field>(
    field: F,
    nvars: usize,
    degree: usize,
    basis: &[Polynomial<F>],
    targets: &[Polynomial<F>],
) -> Option<Vec<Vec<F::Elem>>> {
    use crate::linalg::{Echelon, MonomialSpace};
    let space = MonomialSpace::get(nvars, degree);
    let ncols = space.len();
    let m = basis.len();
    let mut ech = Echelon::new(field, ncols + m);
    for (i, p) in basis.iter().enumerate() {
        let mut row: SparseVec<F::Elem> = space.to_sparse(p);
        row.push(((ncols + i) as u32, field.one()));
        if !ech.insert(&row) {
            return None;
        }
    }
    if ech.pivots().iter().any(|&c| c as usize >= ncols) {
        return None;
    }
    let mut out = Vec::new();
    for t in targets {
        let rem = ech.reduce(&space.to_sparse(t));
        if rem.iter().any(|(c, _)| (*c as usize) < ncols) {
            return None;
        }
        let mut coeffs = vec![field.zero(); m];
        for (c, e) in rem {
            coeffs[c as usize - ncols] = field.neg(&e);
        }
        out.push(coeffs);
    }
    Some(out)
}

/// The `(a, a, 1)` variant: certifies `ψ = x^A Σ c_T f_T`, `T` of shape
/// `(a, a)` in `2a` variables, as a member of `frJ` when `ψ` lies in the
/// ideal of squarefree monomials of degree `a + 1`.
pub fn replay_aa1_reduction<F: Field>(
    field: F,
    a_size: usize,
    xa: &Monomial,
    coeffs: &[(Tableau, F::Elem)],
) -> Result<MembershipCertificate<F>> {
    let nv = 2 * a_size;
    if xa.nvars() != nv || !xa.is_squarefree() {
        return Err(Error::Precondition(format!(
            "x^a must be a squarefree monomial in {nv} variables"
        )));
    }
    let mu = Partition::new(vec![a_size, a_size])?;
    let a: Vec<usize> = xa.support().iter().map(|&v| v + 1).collect();
    let k = a.len();
    let mut target = Polynomial::zero(field, nv);
    for (t, c) in coeffs {
        if t.shape() != mu {
            return Err(Error::InvalidTableau(format!("{t} is not of shape {mu}")));
        }
        target = &target + &specht_poly_in(t, field, nv).mul_monomial(xa).scale(c);
    }
    if !in_squarefree_power(&target, a_size + 1) {
        return Err(Error::Precondition(format!(
            "ψ is not in the ideal of squarefree monomials of degree {}",
            a_size + 1
        )));
    }
    // Relabel A to 1..k and the rest to k+1..2a, both order-preserving.
    let mut to_new = vec![0usize; nv + 1];
    let mut to_old = vec![0usize; nv + 1];
    let rest: Vec<usize> = (1..=nv).filter(|x| a.binary_search(x).is_err()).collect();
    for (pos, &x) in a.iter().chain(rest.iter()).enumerate() {
        to_new[x] = pos + 1;
        to_old[pos + 1] = x;
    }
    let std_tabs = enumerate_standard_tableaux(&mu, LetterOrder::Natural);
    let basis: Vec<Polynomial<F>> = std_tabs.iter().map(|t| specht_poly(t, field)).collect();
    let inner: Vec<Polynomial<F>> = coeffs
        .iter()
        .map(|(t, _)| specht_poly(&t.relabel(&to_new), field))
        .collect();
    let solved = solve_in_span(field, nv, a_size, &basis, &inner)
        .ok_or_else(|| Error::Internal("standard basis does not span".into()))?;
    let mut cstd = vec![field.zero(); std_tabs.len()];
    for (row, (_, c)) in solved.iter().zip(coeffs) {
        for (s, v) in row.iter().enumerate() {
            cstd[s] = field.add(&cstd[s], &field.mul(v, c));
        }
    }
    let mut trace = Vec::new();
    let mut b = CertBuilder {
        field,
        nvars: nv,
        gens: FrJ::empty(field, FrJKind::Aa1 { a: a_size }),
        combination: Vec::new(),
    };
    // Coefficients on W must vanish: their h_T are independent and sum to 0.
    let mut h_sum = Polynomial::zero(field, nv);
    let mut w_nonzero = Vec::new();
    for (t, c) in std_tabs.iter().zip(&cstd) {
        if field.is_zero(c) {
            continue;
        }
        let top = &t.rows()[0];
        let in_w = (0..k).all(|b| top[b] == b + 1);
        trace.push(TraceLine {
            round: 1,
            op: if in_w { "w".into() } else { "pair".into() },
            tableau: t.relabel(&to_old).to_string(),
            coefficient: field.format(c),
        });
        let cols = t.columns();
        if in_w {
            let mut h = Polynomial::one(field, nv);
            for col in &cols[k..] {
                h = &h * &Polynomial::difference(field, nv, col[0] - 1, col[1] - 1);
            }
            h_sum = &h_sum + &h.scale(c);
            w_nonzero.push(t.relabel(&to_old).to_string());
            continue;
        }
        // Some letter of A lies in the bottom row, under a smaller A-letter.
        let col = cols.iter().find(|c| c[1] <= k).expect("T outside W");
        let t_old = t.relabel(&to_old);
        let (i, j) = (to_old[col[0]], to_old[col[1]]);
        let (idx, s) = b.gens.intern_pair(&t_old, i, j);
        let rest_mono = xa
            .div(&Monomial::squarefree(nv, &[i - 1, j - 1]))
            .expect("both letters in A");
        b.push(c, rest_mono, idx, s);
    }
    if !w_nonzero.is_empty() {
        return Err(Error::Internal(format!(
            "nonzero coefficients on W at {w_nonzero:?}; Σ c_T h_T = {h_sum}"
        )));
    }
    Ok(MembershipCertificate {
        target,
        combination: b.combination,
        generators: b.gens,
        trace,
        j_steps: Vec::new(),
    })
}

/// A random `φ = x^A Σ c_T f_T ∈ I_<d>` for `λ = (n-d, d)`: a random kernel
/// vector of the conditions on `X` plus random coefficients outside `X`.
pub fn sample_reducible_phi<F: Field, R: Rng>(
    field: F,
    lambda: &Partition,
    k: usize,
    rng: &mut R,
    random_elem: impl Fn(&mut R) -> F::Elem,
) -> Result<(Monomial, Vec<(Tableau, F::Elem)>)> {
    let n = lambda.n();
    let d = lambda.part(2);
    let nv = n - 1;
    let mut letters: Vec<usize> = (1..=nv).collect();
    letters.shuffle(rng);
    let mut a: Vec<usize> = letters[..k].to_vec();
    a.sort_unstable();
    let xa = Monomial::squarefree(nv, &a.iter().map(|x| x - 1).collect::<Vec<_>>());
    let frame = TwoRowFrame::new(n, d, &a)?;
    let polys: Vec<Polynomial<F>> = frame
        .x
        .iter()
        .map(|f| f.poly(field, nv).mul_monomial(&xa))
        .collect();
    // Rows: monomials with fewer than d variables; columns: frames in X.
    let mut bad: BTreeMap<Monomial, SparseVec<F::Elem>> = BTreeMap::new();
    for (col, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            if m.support_size() < d {
                bad.entry(m.clone()).or_default().push((col as u32, c.clone()));
            }
        }
    }
    let kern = kernel_basis(field, frame.x.len(), bad.into_values());
    let mut coeff = vec![field.zero(); frame.x.len()];
    for v in &kern {
        let r = random_elem(rng);
        for (c, e) in v {
            coeff[*c as usize] = field.add(&coeff[*c as usize], &field.mul(&r, e));
        }
    }
    let mut out: Vec<(Tableau, F::Elem)> = frame
        .x
        .iter()
        .zip(coeff)
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(f, c)| (f.to_tableau(), c))
        .collect();
    let mu = FrJKind::TwoRow { n, d }.mu();
    let classes = all_tableau_classes(&mu);
    let outside: Vec<&Tableau> = classes
        .iter()
        .filter(|t| Frame::from_tableau(t, &a).is_err())
        .collect();
    for _ in 0..3.min(outside.len()) {
        let t = outside[rng.gen_range(0..outside.len())];
        out.push((t.clone(), random_elem(rng)));
    }
    Ok((xa, out))
}
