//! The zero set of a Specht ideal as a union of linear spaces `V(P_Π)`.
//!
//! A set partition `Π` of `[n]` stands for the generic point whose
//! coordinates agree exactly on the blocks. That point lies on `V(I^Sp_λ)`
//! iff every tableau of shape `λ` has a column meeting some block twice,
//! which only depends on the block sizes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::shapes::{Partition, Tableau};
use crate::specht::SpechtSystem;

/// Largest `n` for which set partitions are enumerated exhaustively.
pub const MAX_EXHAUSTIVE_N: usize = 9;

/// A set partition of `[n]`; blocks sorted, ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n + 1];
        for &x in blocks.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::Parse(format!(
                    "blocks must partition 1..{n} without repeats"
                )));
            }
            seen[x] = true;
        }
        if n == 0 {
            return Err(Error::Parse("empty set partition".into()));
        }
        Ok(Self { blocks })
    }

    /// Parses `"1,2,3|4,5|6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad blocks `{s}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    /// `F` as one block, every other letter of `[n]` a singleton.
    pub fn clique(f: &[usize], n: usize) -> Result<Self> {
        let mut blocks = vec![f.to_vec()];
        blocks.extend((1..=n).filter(|x| !f.contains(x)).map(|x| vec![x]));
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Height of the partition ideal `P_Π`.
    pub fn height(&self) -> usize {
        self.n() - self.num_blocks()
    }

    /// Block sizes, largest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Blocks with more than one element.
    pub fn nontrivial_blocks(&self) -> Vec<&Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() > 1).collect()
    }

    /// Block index of each letter (`result[x]` for `x` in `1..=n`).
    pub fn labels(&self) -> Vec<usize> {
        let mut out = vec![0; self.n() + 1];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                out[x] = i;
            }
        }
        out
    }

    /// Partitions obtained by splitting one block in two.
    pub fn one_step_refinements(&self) -> Vec<SetPartition> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.len() < 2 {
                continue;
            }
            // Subsets containing the minimum, other than the whole block.
            let rest = &b[1..];
            for mask in 0..(1u64 << rest.len()) - 1 {
                let mut left = vec![b[0]];
                let mut right = Vec::new();
                for (bit, &x) in rest.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        left.push(x);
                    } else {
                        right.push(x);
                    }
                }
                let mut blocks = self.blocks.clone();
                blocks[i] = left;
                blocks.push(right);
                out.push(SetPartition::new(blocks).expect("refinement is valid"));
            }
        }
        out
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        let lab = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| lab[x] == lab[b[0]]))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", s.join("|"))
    }
}

/// All set partitions of `[n]` via restricted growth strings.
pub fn enumerate_set_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(i: usize, n: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max + 1];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(SetPartition { blocks });
            return;
        }
        for b in 0..=max + 1 {
            rgs.push(b);
            rec(i + 1, n, max.max(b), rgs, out);
            rgs.pop();
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rgs = vec![0];
    rec(1, n, 0, &mut rgs, &mut out);
    out
}

fn check_sizes(pi: &SetPartition, lambda: &Partition) -> Result<()> {
    if pi.n() != lambda.n() {
        return Err(Error::DimensionMismatch {
            expected: lambda.n(),
            found: pi.n(),
        });
    }
    Ok(())
}

/// Maximum flow through source -> block (capacity = block size) -> column
/// (capacity 1 per block) -> sink (capacity = column length).
fn placement_flow(sizes: &[usize], columns: &[usize]) -> usize {
    let (m, c) = (sizes.len(), columns.len());
    let nodes = m + c + 2;
    let (s, t) = (m + c, m + c + 1);
    let mut cap = vec![vec![0i64; nodes]; nodes];
    for (i, &sz) in sizes.iter().enumerate() {
        cap[s][i] = sz as i64;
        for j in 0..c {
            cap[i][m + j] = 1;
        }
    }
    for (j, &len) in columns.iter().enumerate() {
        cap[m + j][t] = len as i64;
    }
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; nodes];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..nodes {
                if prev[v] == usize::MAX && cap[u][v] > 0 {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            return flow;
        }
        let mut push = i64::MAX;
        let mut v = t;
        while v != s {
            push = push.min(cap[prev[v]][v]);
            v = prev[v];
        }
        let mut v = t;
        while v != s {
            cap[prev[v]][v] -= push;
            cap[v][prev[v]] += push;
            v = prev[v];
        }
        flow += push as usize;
    }
}

/// Whether every tableau of shape `λ` has a column with two letters from
/// one block of `Π`, decided as infeasibility of a colour placement.
pub fn condition_star(pi: &SetPartition, lambda: &Partition) -> Result<bool> {
    check_sizes(pi, lambda)?;
    Ok(placement_flow(&pi.block_sizes(), lambda.conjugate().parts()) < lambda.n())
}

/// The same decision by the domination test: a placement exists iff the
/// block-size partition is dominated by `λ`.
pub fn condition_star_gale_ryser(pi: &SetPartition, lambda: &Partition) -> Result<bool> {
    check_sizes(pi, lambda)?;
    let sizes = Partition::new(pi.block_sizes())?;
    Ok(!sizes.dominated_by(lambda))
}

/// The same decision by trying every filling of the diagram.
pub fn condition_star_brute_force(pi: &SetPartition, lambda: &Partition) -> Result<bool> {
    check_sizes(pi, lambda)?;
    let n = lambda.n();
    let lab = pi.labels();
    let conj = lambda.conjugate();
    let cols = conj.parts();
    // Fill column by column; a column may not repeat a block.
    fn rec(col: usize, cols: &[usize], lab: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>) -> bool {
        if col == cols.len() {
            return true;
        }
        let n = used.len() - 1;
        if cur.len() == cols[col] {
            let saved = std::mem::take(cur);
            let ok = rec(col + 1, cols, lab, used, cur);
            *cur = saved;
            return ok;
        }
        for x in 1..=n {
            if used[x] || cur.iter().any(|&y| lab[y] == lab[x]) {
                continue;
            }
            used[x] = true;
            cur.push(x);
            let ok = rec(col, cols, lab, used, cur);
            cur.pop();
            used[x] = false;
            if ok {
                return true;
            }
        }
        false
    }
    let feasible = rec(0, cols, &lab, &mut vec![false; n + 1], &mut Vec::new());
    Ok(!feasible)
}

/// A tableau whose columns meet every block at most once, if one exists.
pub fn coloring_witness(pi: &SetPartition, lambda: &Partition) -> Result<Option<Tableau>> {
    check_sizes(pi, lambda)?;
    let conj = lambda.conjugate();
    let cols = conj.parts();
    // Greedy by column length, largest blocks first, is exact here: it is
    // the constructive side of the domination criterion.
    let mut blocks: Vec<Vec<usize>> = pi.blocks().to_vec();
    blocks.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut columns: Vec<Vec<usize>> = vec![Vec::new(); cols.len()];
    for b in blocks {
        // Put the letters of this block into the columns with most room.
        let mut order: Vec<usize> = (0..cols.len()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(cols[j] - columns[j].len()));
        let open: Vec<usize> = order
            .into_iter()
            .filter(|&j| columns[j].len() < cols[j])
            .collect();
        if open.len() < b.len() {
            return Ok(None);
        }
        for (&x, &j) in b.iter().zip(&open) {
            columns[j].push(x);
        }
    }
    for (j, c) in columns.iter().enumerate() {
        if c.len() != cols[j] {
            return Ok(None);
        }
    }
    Ok(Some(Tableau::from_columns(&columns)?))
}

/// Evaluates the standard Specht polynomials at the point giving block `k`
/// the value `k`; true iff all of them vanish.
pub fn evaluation_oracle(pi: &SetPartition, lambda: &Partition) -> Result<bool> {
    let sys = SpechtSystem::new(lambda, Rationals)?;
    evaluation_oracle_with(pi, &sys)
}

/// [`evaluation_oracle`] against a prebuilt generator system.
pub fn evaluation_oracle_with(pi: &SetPartition, sys: &SpechtSystem<Rationals>) -> Result<bool> {
    check_sizes(pi, &sys.shape)?;
    let lab = pi.labels();
    let q = Rationals;
    let point: Vec<_> = (1..=pi.n()).map(|x| q.from_i64(lab[x] as i64 + 1)).collect();
    Ok(sys
        .generators
        .iter()
        .all(|(_, p)| q.is_zero(&p.eval(&point))))
}

/// Set partitions `Π` with `P_Π` a minimal prime of `I^Sp_λ`: condition (*)
/// holds for `Π` and fails for every one-step refinement.
pub fn minimal_primes(lambda: &Partition) -> Result<Vec<SetPartition>> {
    lambda.require_nontrivial()?;
    let n = lambda.n();
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::ResourceLimit(format!(
            "minimal primes are enumerated for n <= {MAX_EXHAUSTIVE_N}, got n = {n}"
        )));
    }
    let conj = lambda.conjugate();
    let star = |sizes: &[usize]| placement_flow(sizes, conj.parts()) < n;
    let all = enumerate_set_partitions(n);
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    for p in &all {
        let s = p.block_sizes();
        memo.entry(s).or_insert_with_key(|s| star(s));
    }
    let mut out: Vec<SetPartition> = all
        .into_par_iter()
        .filter(|p| {
            memo[&p.block_sizes()]
                && p
                    .one_step_refinements()
                    .iter()
                    .all(|r| !memo[&r.block_sizes()])
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Heights of the minimal primes of `I^Sp_λ` and the purity verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightPurity {
    pub height: usize,
    pub pure: bool,
    pub heights_seen: BTreeSet<usize>,
    /// `λ_{l-1} = λ_1` or `λ_2 = 1`.
    pub closed_form_pure: bool,
}

pub fn purity_closed_form(lambda: &Partition) -> bool {
    let l = lambda.len();
    l >= 2 && (lambda.part(l - 1) == lambda.first() || lambda.part(2) == 1)
}

pub fn height_and_purity(lambda: &Partition) -> Result<HeightPurity> {
    let primes = minimal_primes(lambda)?;
    let heights_seen: BTreeSet<usize> = primes.iter().map(|p| p.height()).collect();
    let height = *heights_seen
        .iter()
        .next()
        .ok_or_else(|| Error::Internal(format!("no minimal primes for {lambda}")))?;
    Ok(HeightPurity {
        height,
        pure: heights_seen.len() == 1,
        heights_seen,
        closed_form_pure: purity_closed_form(lambda),
    })
}

/// The minimal primes predicted when `λ_{l-1} = λ_1`: every `P_F` with
/// `|F| = λ_1 + 1`.
pub fn clique_primes(n: usize, size: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let letters: Vec<usize> = (1..=n).collect();
    for f in itertools::Itertools::combinations(letters.into_iter(), size) {
        out.push(SetPartition::clique(&f, n).unwrap());
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes::enumerate_partitions;

    fn sp(s: &str) -> SetPartition {
        SetPartition::parse(s).unwrap()
    }
    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let bell: Vec<usize> = (1..=7).map(|n| enumerate_set_partitions(n).len()).collect();
        assert_eq!(bell, [1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn parse_and_canonical_order() {
        let a = sp("4,5|1,3,2|6");
        assert_eq!(a.to_string(), "1,2,3|4,5|6");
        assert_eq!(a.height(), 3);
        assert!(SetPartition::parse("1,2|2,3").is_err());
        assert!(SetPartition::parse("1,4").is_err());
    }

    #[test]
    fn spec_examples() {
        assert!(condition_star(&sp("1,2,3"), &p("2,1")).unwrap());
        assert!(!condition_star(&sp("1,2|3,4"), &p("2,2")).unwrap());
        let w = coloring_witness(&sp("1,2|3,4"), &p("2,2")).unwrap().unwrap();
        assert_eq!(w.shape(), p("2,2"));
        assert!(condition_star(&sp("1,2,3|4,5,6"), &p("3,2,1")).unwrap());
        assert!(matches!(
            condition_star(&sp("1,2"), &p("2,1")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn generic_and_diagonal_points() {
        for lam in enumerate_partitions(5).unwrap().into_iter().filter(|l| !l.is_trivial()) {
            assert!(!condition_star(&sp("1|2|3|4|5"), &lam).unwrap());
            assert!(condition_star(&sp("1,2,3,4,5"), &lam).unwrap());
        }
    }

    #[test]
    fn three_deciders_agree_up_to_five() {
        for n in 2..=5 {
            for lam in enumerate_partitions(n).unwrap().into_iter().filter(|l| !l.is_trivial()) {
                let sys = SpechtSystem::new(&lam, Rationals).unwrap();
                for pi in enumerate_set_partitions(n) {
                    let a = condition_star(&pi, &lam).unwrap();
                    assert_eq!(a, condition_star_gale_ryser(&pi, &lam).unwrap());
                    assert_eq!(a, condition_star_brute_force(&pi, &lam).unwrap());
                    assert_eq!(a, evaluation_oracle_with(&pi, &sys).unwrap());
                    assert_eq!(a, coloring_witness(&pi, &lam).unwrap().is_none());
                }
            }
        }
    }

    #[test]
    fn condition_star_is_monotone_under_coarsening() {
        for n in 2..=6 {
            for lam in enumerate_partitions(n).unwrap().into_iter().filter(|l| !l.is_trivial()) {
                for pi in enumerate_set_partitions(n) {
                    if condition_star(&pi, &lam).unwrap() {
                        continue;
                    }
                    // Failure of (*) is inherited by every refinement.
                    for r in pi.one_step_refinements() {
                        assert!(r.refines(&pi));
                        assert!(!condition_star(&r, &lam).unwrap(), "{r} refines {pi} for {lam}");
                    }
                }
            }
        }
    }

    #[test]
    fn minimal_primes_examples() {
        assert_eq!(minimal_primes(&p("2,2")).unwrap(), clique_primes(4, 3));
        let mp = minimal_primes(&p("3,2,1")).unwrap();
        assert!(mp.contains(&sp("1,2,3,4|5|6")));
        let two_blocks = sp("1,2,3|4,5,6");
        assert!(mp.contains(&two_blocks));
        assert_eq!(two_blocks.height(), 4);
        assert_eq!(minimal_primes(&p("4,1")).unwrap(), vec![sp("1,2,3,4,5")]);
        assert!(matches!(minimal_primes(&p("5,5")), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn height_and_purity_examples() {
        let hp = height_and_purity(&p("4,2,1")).unwrap();
        assert_eq!((hp.height, hp.pure), (4, false));
        let hp = height_and_purity(&p("3,3")).unwrap();
        assert_eq!((hp.height, hp.pure), (3, true));
        let hp = height_and_purity(&p("5,1,1")).unwrap();
        assert_eq!((hp.height, hp.pure), (5, true));
    }
}
