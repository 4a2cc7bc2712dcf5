//! Graded Betti numbers of `R/I` from the Koszul complex on the variables.

use std::fmt::{self, Write as _};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField};
use crate::ideal::{IdealSpec, QuotientComponent};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::Polynomial;
use crate::shapes::Partition;

pub const DEFAULT_COLUMN_CAP: usize = 20_000;

/// The two primes standing in for characteristic zero.
pub const CHAR0_PROXY_PRIMES: [u64; 2] = [32_003, 1_000_003];

/// `β_{i,j}` for `0 <= i <= n`, `0 <= j <= j_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub field: FieldSpec,
    pub j_max: usize,
    /// `entries[i][j]`
    pub entries: Vec<Vec<usize>>,
    /// No homology in the last computed internal degree.
    pub top_strand_closed: bool,
    /// `Σ (-1)^i dim C_i = Σ (-1)^i β_{i,j}` held in every degree.
    pub euler_check: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        let pd = self.projective_dimension();
        (0..=pd).map(|i| self.entries[i].iter().sum()).collect()
    }

    pub fn projective_dimension(&self) -> usize {
        (0..=self.n)
            .rev()
            .find(|&i| self.entries[i].iter().any(|&b| b > 0))
            .unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        self.n - self.projective_dimension()
    }

    /// Largest `j - i` with a nonzero entry.
    pub fn regularity(&self) -> usize {
        let mut r = 0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b > 0 && j >= i {
                    r = r.max(j - i);
                }
            }
        }
        r
    }

    /// Rows indexed by `r = j - i`, columns by `i`, zeros as dots.
    pub fn to_m2(&self) -> String {
        let pd = self.projective_dimension();
        let reg = self.regularity();
        let cell = |x: usize| if x == 0 { ".".to_string() } else { x.to_string() };
        let totals = self.totals();
        let mut widths: Vec<usize> = (0..=pd)
            .map(|i| totals[i].to_string().len().max(i.to_string().len()))
            .collect();
        for r in 0..=reg {
            for (i, w) in widths.iter_mut().enumerate() {
                *w = (*w).max(cell(self.get(i, i + r)).len());
            }
        }
        let label_w = "total:".len().max(reg.to_string().len() + 1);
        let mut out = String::new();
        let line = |label: &str, cells: Vec<String>, out: &mut String| {
            let _ = write!(out, "{label:>label_w$}");
            for (c, w) in cells.iter().zip(&widths) {
                let _ = write!(out, " {c:>w$}");
            }
            out.push('\n');
        };
        line("", (0..=pd).map(|i| i.to_string()).collect(), &mut out);
        line("total:", totals.iter().map(|t| t.to_string()).collect(), &mut out);
        for r in 0..=reg {
            let cells = (0..=pd).map(|i| cell(self.get(i, i + r))).collect();
            line(&format!("{r}:"), cells, &mut out);
        }
        out
    }

    /// Entries of the row `r = j - i` for `i = 0..=pd`.
    pub fn strand(&self, r: usize) -> Vec<usize> {
        (0..=self.projective_dimension()).map(|i| self.get(i, i + r)).collect()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_m2())
    }
}

/// Subsets of `0..n` of size `i` as sorted index lists, in colex order.
fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).combinations(i).collect()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplication by each variable from `A_d` to `A_{d+1}`, in quotient
/// coordinates.
struct MultTable<E> {
    /// `maps[k][col]`
    maps: Vec<Vec<SparseVec<E>>>,
}

fn mult_table<F: Field>(
    ideal: &IdealSpec<F>,
    q: &QuotientComponent<F>,
    q1: &QuotientComponent<F>,
) -> Result<MultTable<F::Elem>> {
    let f = ideal.field();
    let n = ideal.nvars();
    let maps = (0..n)
        .map(|k| {
            q.quotient_basis
                .iter()
                .map(|m| q1.coordinates(&Polynomial::monomial(f, f.one(), m.mul_var(k))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MultTable { maps })
}

/// Rank of `d_i : Λ^i ⊗ A_{j-i} -> Λ^{i-1} ⊗ A_{j-i+1}`.
fn koszul_rank<F: Field>(
    field: F,
    n: usize,
    i: usize,
    dim_src: usize,
    dim_tgt: usize,
    table: &MultTable<F::Elem>,
) -> usize {
    if i == 0 || dim_src == 0 || dim_tgt == 0 {
        return 0;
    }
    let lower: Vec<Vec<usize>> = subsets(n, i - 1);
    let lower_index: std::collections::HashMap<&[usize], usize> =
        lower.iter().enumerate().map(|(p, s)| (s.as_slice(), p)).collect();
    let ncols = lower.len() * dim_tgt;
    let mut ech = Echelon::new(field, ncols);
    for s in subsets(n, i) {
        let faces: Vec<(usize, bool)> = (0..i)
            .map(|pos| {
                let mut t = s.clone();
                t.remove(pos);
                (lower_index[t.as_slice()], pos % 2 == 1)
            })
            .collect();
        for col in 0..dim_src {
            let mut row: SparseVec<F::Elem> = Vec::new();
            for (pos, &(face, negative)) in faces.iter().enumerate() {
                let base = (face * dim_tgt) as u32;
                for (c, e) in &table.maps[s[pos]][col] {
                    let v = if negative { field.neg(e) } else { e.clone() };
                    row.push((base + c, v));
                }
            }
            row.sort_unstable_by_key(|x| x.0);
            ech.insert(&row);
            if ech.is_full() {
                return ech.rank();
            }
        }
    }
    ech.rank()
}

/// Graded Betti numbers of `R/I` up to internal degree `j_max`, with a cap
/// on the number of columns of any Koszul differential.
pub fn koszul_betti<F: Field>(ideal: &IdealSpec<F>, j_max: usize) -> Result<BettiTable> {
    koszul_betti_capped(ideal, j_max, DEFAULT_COLUMN_CAP)
}

pub fn koszul_betti_capped<F: Field>(ideal: &IdealSpec<F>, j_max: usize, cap: usize) -> Result<BettiTable> {
    let n = ideal.nvars();
    let field = ideal.field();
    let quots: Vec<Arc<QuotientComponent<F>>> = (0..=j_max)
        .into_par_iter()
        .map(|d| ideal.quotient(d).map(Arc::new))
        .collect::<Result<_>>()?;
    let dims: Vec<usize> = quots.iter().map(|q| q.dimension()).collect();
    for j in 0..=j_max {
        for i in 1..=n.min(j) {
            let cols = binom(n, i - 1) * dims[j - i + 1];
            if cols > cap {
                return Err(Error::ResourceLimit(format!(
                    "Koszul differential d_{i} in degree {j} has {cols} columns (cap {cap})"
                )));
            }
        }
    }
    let tables: Vec<MultTable<F::Elem>> = (0..j_max)
        .into_par_iter()
        .map(|d| mult_table(ideal, &quots[d], &quots[d + 1]))
        .collect::<Result<_>>()?;
    // chain[i] = dim Λ^i ⊗ A_{j-i}; rank[i] = rank d_i.
    let chain_dim = |i: usize, j: usize| if i > j { 0 } else { binom(n, i) * dims[j - i] };
    let jobs: Vec<(usize, usize)> = (0..=j_max)
        .flat_map(|j| (1..=n.min(j)).map(move |i| (i, j)))
        .collect();
    let ranks: Vec<((usize, usize), usize)> = jobs
        .into_par_iter()
        .map(|(i, j)| {
            let r = koszul_rank(field, n, i, dims[j - i], dims[j - i + 1], &tables[j - i]);
            ((i, j), r)
        })
        .collect();
    let mut rank = vec![vec![0usize; j_max + 1]; n + 2];
    for ((i, j), r) in ranks {
        rank[i][j] = r;
    }
    let mut entries = vec![vec![0usize; j_max + 1]; n + 1];
    let mut euler_check = true;
    for j in 0..=j_max {
        let (mut chi_chain, mut chi_hom) = (0i64, 0i64);
        for i in 0..=n {
            let c = chain_dim(i, j);
            let b = c - rank[i][j] - rank[i + 1][j];
            entries[i][j] = b;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            chi_chain += sign * c as i64;
            chi_hom += sign * b as i64;
        }
        euler_check &= chi_chain == chi_hom;
    }
    let top_strand_closed = (0..=n).all(|i| entries[i][j_max] == 0);
    Ok(BettiTable {
        n,
        field: field.spec(),
        j_max,
        entries,
        top_strand_closed,
        euler_check,
    })
}

/// Betti table in characteristic zero approximated over two large primes.
#[derive(Clone, Debug, Serialize)]
pub struct Char0Betti {
    pub table: BettiTable,
    pub primes: [u64; 2],
    pub agree: bool,
}

pub fn koszul_betti_char0_proxy(
    make: impl Fn(PrimeField) -> Result<IdealSpec<PrimeField>>,
    j_max: usize,
) -> Result<Char0Betti> {
    let tables: Vec<BettiTable> = CHAR0_PROXY_PRIMES
        .iter()
        .map(|&p| koszul_betti(&make(PrimeField::new(p)?)?, j_max))
        .collect::<Result<_>>()?;
    let agree = tables[0].entries == tables[1].entries;
    let mut table = tables[0].clone();
    table.field = FieldSpec::rationals();
    Ok(Char0Betti {
        table,
        primes: CHAR0_PROXY_PRIMES,
        agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CmVerdict {
    pub shape: String,
    pub field: FieldSpec,
    pub pd: usize,
    pub depth: usize,
    pub dim: usize,
    pub is_cm: bool,
    pub is_gorenstein: bool,
    /// `Some` when characteristic zero was approximated by two primes.
    pub proxy_agree: Option<bool>,
    pub table: BettiTable,
}

/// Degree bound sufficient for the Betti fixtures: generator degree plus `n`.
pub fn default_j_max(lambda: &Partition) -> usize {
    lambda.specht_degree() + lambda.n()
}

/// Cohen–Macaulay and Gorenstein verdicts for `R/I^Sp_λ`. Characteristic
/// zero goes through the two-prime proxy unless `exact` is set.
pub fn cm_verdict(lambda: &Partition, field: FieldSpec, j_max: usize, exact: bool) -> Result<CmVerdict> {
    lambda.require_nontrivial()?;
    let (table, proxy_agree) = match field.prime_field() {
        Some(pf) => (koszul_betti(&IdealSpec::specht(pf, lambda)?, j_max)?, None),
        None if exact => (
            koszul_betti(&IdealSpec::specht(crate::field::Rationals, lambda)?, j_max)?,
            None,
        ),
        None => {
            let c = koszul_betti_char0_proxy(|f| IdealSpec::specht(f, lambda), j_max)?;
            (c.table, Some(c.agree))
        }
    };
    let pd = table.projective_dimension();
    let height = lambda.first();
    let is_cm = pd == height;
    let is_gorenstein = is_cm && table.totals()[pd] == 1;
    Ok(CmVerdict {
        shape: lambda.to_string(),
        field,
        pd,
        depth: table.depth(),
        dim: lambda.n() - height,
        is_cm,
        is_gorenstein,
        proxy_agree,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn residue_field_is_koszul() {
        let q = Rationals;
        for n in 1..=4 {
            let gens = (0..n).map(|i| Polynomial::var(q, n, i)).collect();
            let i = IdealSpec::generated(q, n, gens).unwrap();
            let t = koszul_betti(&i, n + 1).unwrap();
            for a in 0..=n {
                for j in 0..=n + 1 {
                    let expect = if a == j { binom(n, a) } else { 0 };
                    assert_eq!(t.get(a, j), expect);
                }
            }
            assert!(t.top_strand_closed && t.euler_check);
        }
    }

    #[test]
    fn complete_intersection_of_squares() {
        let q = Rationals;
        let gens = vec![
            Polynomial::parse(q, 2, "x1^2").unwrap(),
            Polynomial::parse(q, 2, "x2^2").unwrap(),
        ];
        let t = koszul_betti(&IdealSpec::generated(q, 2, gens).unwrap(), 5).unwrap();
        assert_eq!(t.totals(), vec![1, 2, 1]);
        assert_eq!((t.get(1, 2), t.get(2, 4)), (2, 1));
        assert_eq!(t.to_m2(), "       0 1 2\ntotal: 1 2 1\n    0: 1 . .\n    1: . 2 .\n    2: . . 1\n");
    }

    #[test]
    fn zero_ideal_has_trivial_table() {
        let t = koszul_betti(&IdealSpec::zero(Rationals, 3), 4).unwrap();
        assert_eq!(t.totals(), vec![1]);
        assert_eq!(t.depth(), 3);
    }

    #[test]
    fn column_cap_is_enforced() {
        let i = IdealSpec::zero(Rationals, 6);
        assert!(matches!(koszul_betti_capped(&i, 6, 50), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn gorenstein_two_two() {
        let lam = Partition::parse("2,2").unwrap();
        let v = cm_verdict(&lam, FieldSpec::rationals(), default_j_max(&lam), false).unwrap();
        assert!(v.is_cm && v.is_gorenstein);
        assert_eq!(v.proxy_agree, Some(true));
        assert_eq!(v.table.totals(), vec![1, 2, 1]);
        let e = cm_verdict(&lam, FieldSpec::rationals(), default_j_max(&lam), true).unwrap();
        assert_eq!(e.table.entries, v.table.entries);
    }
}
