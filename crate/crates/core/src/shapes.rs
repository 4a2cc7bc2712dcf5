//! Partitions, Young tableaux and their column-equivalence normal forms.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `n`, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    /// Parses `"4,2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad shape `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows `l`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `λ_i`, 1-based; zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            panic!("parts are 1-based");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.parts[0]
    }

    /// The one-row shape `(n)`, excluded from every Specht construction.
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn conjugate(&self) -> Partition {
        let conj = (1..=self.parts[0])
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts: conj }
    }

    /// Degree of every Specht polynomial of this shape.
    pub fn specht_degree(&self) -> usize {
        self.conjugate()
            .parts
            .iter()
            .map(|&c| c * (c - 1) / 2)
            .sum()
    }

    /// Whether `self` is dominated by `other` (same size assumed).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 1..=self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn require_nontrivial(&self) -> Result<()> {
        if self.is_trivial() {
            Err(Error::TrivialShape(self.n()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be positive".into()));
    }
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Hook,
    TwoRow,
    Aa1,
    Other,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Hook => "hook",
            ShapeClass::TwoRow => "two_row",
            ShapeClass::Aa1 => "aa1",
            ShapeClass::Other => "other",
        })
    }
}

/// Which of the three Cohen–Macaulay shape families `λ` belongs to, if any.
pub fn cm_shape_class(lambda: &Partition) -> Result<ShapeClass> {
    lambda.require_nontrivial()?;
    let p = lambda.parts();
    Ok(if p[1] == 1 {
        ShapeClass::Hook
    } else if p.len() == 2 {
        ShapeClass::TwoRow
    } else if p.len() == 3 && p[0] == p[1] && p[2] == 1 {
        ShapeClass::Aa1
    } else {
        ShapeClass::Other
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LetterOrder {
    /// `1 < 2 < … < n`
    Natural,
    /// `n ≺ n−1 ≺ … ≺ 1`
    Inverse,
}

impl LetterOrder {
    pub fn less(self, a: usize, b: usize) -> bool {
        match self {
            LetterOrder::Natural => a < b,
            LetterOrder::Inverse => a > b,
        }
    }

    /// The letters `1..=n`, smallest first in this order.
    pub fn letters(self, n: usize) -> Vec<usize> {
        match self {
            LetterOrder::Natural => (1..=n).collect(),
            LetterOrder::Inverse => (1..=n).rev().collect(),
        }
    }
}

/// A bijective filling of a Young diagram by `1..=n`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(|r| r.len()).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidTableau(format!(
                    "entries must be a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { rows })
    }

    /// Builds a tableau from its columns, each listed top to bottom. Column
    /// lengths must be weakly decreasing.
    pub fn from_columns(cols: &[Vec<usize>]) -> Result<Self> {
        if cols.windows(2).any(|w| w[0].len() < w[1].len()) || cols.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidTableau(
                "column lengths must be positive and weakly decreasing".into(),
            ));
        }
        let height = cols.first().map_or(0, |c| c.len());
        let rows = (0..height)
            .map(|r| cols.iter().filter(|c| c.len() > r).map(|c| c[r]).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// Parses rows separated by `/`, entries by `,`: `"3,5,1,7/6,2/4"`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split('/')
            .map(|r| {
                r.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad tableau `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Entry at `(row, column)`, 1-based.
    pub fn entry(&self, row: usize, col: usize) -> usize {
        self.rows[row - 1][col - 1]
    }

    pub fn num_columns(&self) -> usize {
        self.rows[0].len()
    }

    /// Column `j` (0-based), top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows
            .iter()
            .take_while(|r| r.len() > j)
            .map(|r| r[j])
            .collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.num_columns()).map(|j| self.column(j)).collect()
    }

    pub fn is_standard(&self, order: LetterOrder) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.windows(2).all(|w| order.less(w[0], w[1])));
        rows_ok && self.is_column_standard(order)
    }

    pub fn is_column_standard(&self, order: LetterOrder) -> bool {
        self.columns()
            .iter()
            .all(|c| c.windows(2).all(|w| order.less(w[0], w[1])))
    }

    /// Applies a relabelling `i -> perm[i]` (`perm[0]` unused).
    pub fn relabel(&self, perm: &[usize]) -> Tableau {
        Tableau {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&x| perm[x]).collect())
                .collect(),
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// Standard tableaux of shape `λ` with respect to `order`, sorted.
pub fn enumerate_standard_tableaux(lambda: &Partition, order: LetterOrder) -> Vec<Tableau> {
    // Place letters smallest-first into addable corners.
    fn rec(
        shape: &[usize],
        letters: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some((&x, rest)) = letters.split_first() else {
            out.push(rows.clone());
            return;
        };
        for r in 0..shape.len() {
            let len = rows[r].len();
            let fits = len < shape[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(x);
                rec(shape, rest, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.len()];
    rec(
        lambda.parts(),
        &order.letters(lambda.n()),
        &mut rows,
        &mut out,
    );
    let mut tabs: Vec<Tableau> = out.into_iter().map(|rows| Tableau { rows }).collect();
    tabs.sort();
    tabs
}

/// Number of standard tableaux by the hook length formula.
pub fn count_standard_tableaux(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    let fact: BigUint = (1..=lambda.n()).map(BigUint::from).product();
    fact / hooks
}

/// Canonical representative of the column-equivalence class of `T`:
/// entries ascending in each column, then equal-length columns ordered by
/// top entry. The sign is that of the in-column sorting permutation, so
/// `f_{normal} = sign * f_T`.
pub fn normal_form(t: &Tableau) -> (Tableau, i8) {
    let mut sign = 1i8;
    let mut cols = t.columns();
    for c in &mut cols {
        // Parity of the sorting permutation via inversion count.
        let inv = (0..c.len())
            .flat_map(|a| (a + 1..c.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| c[a] > c[b])
            .count();
        if inv % 2 == 1 {
            sign = -sign;
        }
        c.sort_unstable();
    }
    cols.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let nf = Tableau::from_columns(&cols).expect("same shape");
    (nf, sign)
}
