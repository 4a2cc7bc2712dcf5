//! Acceptance run: one PASS/FAIL line per criterion, exact arithmetic, wall
//! clock limits enforced.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specht_core::betti::{cm_verdict, koszul_betti, koszul_betti_char0_proxy, BettiTable};
use specht_core::ideal::{
    cubic_truncation, elementary_e1, equal_up_to_degree, is_socle_element, mult_injective, socle, IdealSpec,
};
use specht_core::shapes::enumerate_partitions;
use specht_core::specht::{
    independence_rank, replay_radical_reduction, sample_reducible_phi, specht_poly, straighten_quasi_h, Frame,
};
use specht_core::variety::{
    clique_primes, condition_star, condition_star_brute_force, enumerate_set_partitions, evaluation_oracle_with,
    height_and_purity, minimal_primes, purity_closed_form, SetPartition,
};
use specht_core::specht::SpechtSystem;
use specht_core::{with_field, Field, FieldSpec, Partition, Polynomial, PrimeField, Rationals, Tableau};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shape(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn nontrivial_shapes(n: usize) -> Vec<Partition> {
    enumerate_partitions(n)
        .unwrap()
        .into_iter()
        .filter(|l| !l.is_trivial())
        .collect()
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn c1_specht_example() -> Result<String, String> {
    let q = Rationals;
    let t = Tableau::parse("3,5,1,7/6,2/4").map_err(|e| e.to_string())?;
    let expect = [(3, 6), (3, 4), (6, 4), (5, 2)]
        .iter()
        .fold(Polynomial::one(q, 7), |acc, &(i, j)| &acc * &Polynomial::difference(q, 7, i - 1, j - 1));
    let got = specht_poly(&t, q);
    ensure(got == expect, || format!("got {got}"))?;
    Ok(format!("{} terms", got.num_terms()))
}

fn c2_catalan() -> Result<String, String> {
    for n in 1..=5 {
        let sq = independence_rank(&Partition::new(vec![n, n]).unwrap(), Rationals).map_err(|e| e.to_string())?;
        let near_parts: Vec<usize> = [n, n - 1].into_iter().filter(|&x| x > 0).collect();
        let near = independence_rank(&Partition::new(near_parts).unwrap(), Rationals).map_err(|e| e.to_string())?;
        ensure(sq == catalan(n) && near == catalan(n), || {
            format!("n={n}: ({n},{n}) -> {sq}, ({n},{}) -> {near}, C_n = {}", n - 1, catalan(n))
        })?;
    }
    Ok("1 2 5 14 42".into())
}

fn c3_height() -> Result<String, String> {
    let mut count = 0;
    for n in 2..=7 {
        for lam in nontrivial_shapes(n) {
            let hp = height_and_purity(&lam).map_err(|e| e.to_string())?;
            ensure(hp.height == lam.first(), || format!("{lam}: height {}", hp.height))?;
            count += 1;
        }
    }
    Ok(format!("{count} shapes"))
}

fn c4_purity() -> Result<String, String> {
    let mut count = 0;
    for n in 2..=7 {
        for lam in nontrivial_shapes(n) {
            let hp = height_and_purity(&lam).map_err(|e| e.to_string())?;
            ensure(hp.pure == purity_closed_form(&lam), || format!("{lam}: pure = {}", hp.pure))?;
            count += 1;
        }
    }
    Ok(format!("{count} shapes"))
}

fn c5_radical() -> Result<String, String> {
    let fixtures = [
        ("2,2", 6),
        ("3,2", 6),
        ("4,2", 6),
        ("3,3", 7),
        ("4,3", 7),
        ("2,2,1", 6),
        ("3,3,1", 7),
    ];
    for ch in [0u64, 2, 3] {
        for (s, d) in fixtures {
            let lam = shape(s);
            let eq = with_field!(FieldSpec::new(ch).unwrap(), |f| {
                let a = IdealSpec::specht(f, &lam).unwrap();
                let b = IdealSpec::intersection_ink(f, lam.n(), lam.first() + 1).unwrap();
                equal_up_to_degree(&a, &b, d).map(|v| (v.equal, v.first_disagreement))
            })
            .map_err(|e| e.to_string())?;
            ensure(eq.0, || format!("({s}) char {ch}: first disagreement at {:?}", eq.1))?;
        }
    }
    Ok("7 shapes x 3 characteristics".into())
}

fn c6_hilbert() -> Result<String, String> {
    for n in 4..=7 {
        let lam = Partition::new(vec![n - 2, 2]).unwrap();
        let hf = IdealSpec::specht(Rationals, &lam)
            .and_then(|i| i.hilbert_function(8))
            .map_err(|e| e.to_string())?;
        // (1 + (n-2)t + t^2) times Σ (m+1) t^m, expanded by hand.
        let series: Vec<usize> = (0..=8usize)
            .map(|m| (m + 1) + if m >= 1 { (n - 2) * m } else { 0 } + if m >= 2 { m - 1 } else { 0 })
            .collect();
        ensure(hf == series, || format!("n={n}: {hf:?} vs {series:?}"))?;
    }
    Ok("n = 4..7, degrees 0..8".into())
}

fn rows_match(t: &BettiTable, expected: &[&str]) -> Result<(), String> {
    let text = t.to_m2();
    let lines: Vec<&str> = text.lines().skip(1).map(str::trim).collect();
    ensure(lines == expected, || format!("diagram\n{text}"))
}

fn c7_betti() -> Result<String, String> {
    let lam = shape("3,3");
    let c0 = koszul_betti_char0_proxy(|f| IdealSpec::specht(f, &lam), 9).map_err(|e| e.to_string())?;
    ensure(c0.agree, || "the two primes disagree".into())?;
    ensure(c0.table.top_strand_closed, || "char 0 top strand open".into())?;
    rows_match(
        &c0.table,
        &["total: 1 5 9 5", "0: 1 . . .", "1: . . . .", "2: . 5 . .", "3: . . 9 5"],
    )?;
    let f2 = PrimeField::new(2).unwrap();
    let t2 = IdealSpec::specht(f2, &lam)
        .and_then(|i| koszul_betti(&i, 9))
        .map_err(|e| e.to_string())?;
    ensure(t2.top_strand_closed, || "char 2 top strand open".into())?;
    rows_match(
        &t2,
        &[
            "total: 1 5 9 6 1",
            "0: 1 . . . .",
            "1: . . . . .",
            "2: . 5 . . .",
            "3: . . 9 5 1",
            "4: . . . 1 .",
        ],
    )?;
    Ok("1 5 9 5 over 32003 and 1000003; 1 5 9 6 1 over F_2".into())
}

fn c8_char2_socle() -> Result<String, String> {
    let f2 = PrimeField::new(2).unwrap();
    for n in 5..=7 {
        let a = cubic_truncation(f2, n).map_err(|e| e.to_string())?;
        let y = Polynomial::parse(f2, n - 1, "x1*x2 + x2*x3 + x3*x1").unwrap();
        let s = socle(&a, 2).map_err(|e| e.to_string())?;
        let nf = a.normal_form(&y).map_err(|e| e.to_string())?;
        ensure(s.dimension() > 0, || format!("n={n}: zero socle over F_2"))?;
        ensure(s.contains(&nf).unwrap() && is_socle_element(&a, &y).unwrap(), || {
            format!("n={n}: witness not in the socle")
        })?;
        let q = Rationals;
        let a0 = cubic_truncation(q, n).map_err(|e| e.to_string())?;
        let v = mult_injective(&elementary_e1(q, n - 1), &a0, 2).map_err(|e| e.to_string())?;
        ensure(
            v.injective && v.dim_source == 2 * n - 2 && v.dim_target == 2 * n - 2,
            || format!("n={n}: e1 map {v:?}"),
        )?;
    }
    Ok("n = 5, 6, 7".into())
}

fn c9_dims() -> Result<String, String> {
    for ch in [0u64, 2] {
        for n in 5..=7 {
            let dims = with_field!(FieldSpec::new(ch).unwrap(), |f| {
                let a = cubic_truncation(f, n).unwrap();
                (3..=5)
                    .map(|m| a.quotient(m).map(|q| q.dimension()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(|e| e.to_string())?;
            ensure(dims.iter().all(|&d| d == 2 * (n - 1)), || format!("char {ch}, n={n}: {dims:?}"))?;
        }
    }
    Ok("m = 3..5, n = 5..7, chars 0 and 2".into())
}

fn c10_gorenstein() -> Result<String, String> {
    for s in ["2,2", "3,2", "4,2"] {
        let lam = shape(s);
        let v = cm_verdict(&lam, FieldSpec::rationals(), lam.specht_degree() + lam.n(), false)
            .map_err(|e| e.to_string())?;
        ensure(v.proxy_agree == Some(true), || format!("({s}): primes disagree"))?;
        ensure(v.is_gorenstein, || format!("({s}): not Gorenstein, totals {:?}", v.table.totals()))?;
    }
    Ok("(2,2) (3,2) (4,2)".into())
}

/// A random tableau of a two-row shape with a random `A` made of one letter
/// from each of some 2-columns.
fn random_frame_input(mu: &Partition, rng: &mut ChaCha8Rng) -> (Tableau, Vec<usize>) {
    let n = mu.n();
    let mut letters: Vec<usize> = (1..=n).collect();
    letters.shuffle(rng);
    let top = letters[..mu.part(1)].to_vec();
    let bottom = letters[mu.part(1)..].to_vec();
    let t = Tableau::from_rows(vec![top.clone(), bottom.clone()]).unwrap();
    let k = rng.gen_range(0..=bottom.len());
    let mut cols: Vec<usize> = (0..bottom.len()).collect();
    cols.shuffle(rng);
    let mut a: Vec<usize> = cols[..k]
        .iter()
        .map(|&c| if rng.gen_bool(0.5) { top[c] } else { bottom[c] })
        .collect();
    a.sort_unstable();
    (t, a)
}

fn c11_straightening() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = Rationals;
    let mut terms = 0;
    for s in ["3,1", "3,2", "4,2", "4,3"] {
        let mu = shape(s);
        for _ in 0..200 {
            let (t, a) = random_frame_input(&mu, &mut rng);
            let (input, _) = Frame::from_tableau(&t, &a).map_err(|e| e.to_string())?;
            let out = straighten_quasi_h(&t, &a).map_err(|e| e.to_string())?;
            let mut sum = Polynomial::zero(q, mu.n());
            for (c, u) in &out {
                let (fu, _) = Frame::from_tableau(u, &a).map_err(|e| e.to_string())?;
                ensure(fu.is_quasi_h_standard(), || format!("{t} A={a:?}: {u} not quasi-h-standard"))?;
                ensure(
                    fu.singles.len() == input.singles.len()
                        && fu.singles.iter().zip(&input.singles).all(|(x, y)| x >= y),
                    || format!("{t} A={a:?}: singletons of {u} dropped"),
                )?;
                sum = &sum + &specht_poly(u, q).scale(&q.from_i64(*c as i64));
            }
            ensure(sum == specht_poly(&t, q), || format!("{t} A={a:?}: identity fails"))?;
            terms += out.len();
        }
    }
    Ok(format!("800 tableaux, {terms} output terms"))
}

fn c12_replay() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let q = Rationals;
    let mut steps = 0;
    for s in ["3,2", "4,2", "3,3"] {
        let lam = shape(s);
        let d = lam.part(2);
        for i in 0..50 {
            let k = 1 + i % (d - 1).max(1);
            let (xa, coeffs) = sample_reducible_phi(q, &lam, k, &mut rng, |r| q.from_i64(r.gen_range(-5..=5)))
                .map_err(|e| e.to_string())?;
            let cert = replay_radical_reduction(q, &lam, &xa, &coeffs).map_err(|e| format!("({s}) #{i}: {e}"))?;
            ensure(cert.verify(), || format!("({s}) #{i}: certificate does not reconstruct"))?;
            ensure(cert.j_monotone(), || format!("({s}) #{i}: j-tuple not monotone"))?;
            steps += cert.trace.len();
        }
    }
    Ok(format!("150 replays, {steps} trace lines"))
}

fn c13_oracles() -> Result<String, String> {
    let mut checks = 0;
    for n in 2..=6 {
        let parts = enumerate_set_partitions(n);
        for lam in nontrivial_shapes(n) {
            let sys = SpechtSystem::new(&lam, Rationals).unwrap();
            for pi in &parts {
                let flow = condition_star(pi, &lam).unwrap();
                let ev = evaluation_oracle_with(pi, &sys).unwrap();
                let bf = condition_star_brute_force(pi, &lam).unwrap();
                ensure(flow == ev && ev == bf, || {
                    format!("({pi}, {lam}): flow {flow}, oracle {ev}, brute force {bf}")
                })?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} pairs"))
}

fn c14_minimal_primes() -> Result<String, String> {
    let mut count = 0;
    for n in 2..=7 {
        for lam in nontrivial_shapes(n) {
            if lam.part(lam.len() - 1) != lam.first() {
                continue;
            }
            let mut got = minimal_primes(&lam).map_err(|e| e.to_string())?;
            let mut want = clique_primes(n, lam.first() + 1);
            got.sort();
            want.sort();
            ensure(got == want, || format!("{lam}: {} primes, expected {}", got.len(), want.len()))?;
            count += 1;
        }
    }
    let lam = shape("3,2,1");
    let pi = SetPartition::parse("1,2,3|4,5,6").unwrap();
    let primes = minimal_primes(&lam).map_err(|e| e.to_string())?;
    ensure(primes.contains(&pi) && pi.height() == 4, || "(3,2,1): {1,2,3},{4,5,6} missing".into())?;
    Ok(format!("{count} equality-case shapes plus (3,2,1)"))
}

fn main() -> ExitCode {
    let criteria: [(usize, &str, Duration, Check); 14] = [
        (1, "specht example", Duration::from_millis(1), c1_specht_example),
        (2, "catalan generators", Duration::from_secs(60), c2_catalan),
        (3, "height", Duration::from_secs(300), c3_height),
        (4, "purity trichotomy", Duration::from_secs(300), c4_purity),
        (5, "radical up to degree", Duration::from_secs(600), c5_radical),
        (6, "hilbert series", Duration::from_secs(60), c6_hilbert),
        (7, "betti diagrams", Duration::from_secs(600), c7_betti),
        (8, "char 2 socle", Duration::from_secs(60), c8_char2_socle),
        (9, "dim A_m", Duration::from_secs(60), c9_dims),
        (10, "gorenstein", Duration::from_secs(300), c10_gorenstein),
        (11, "straightening", Duration::from_secs(60), c11_straightening),
        (12, "reduction replay", Duration::from_secs(120), c12_replay),
        (13, "oracle equivalence", Duration::from_secs(120), c13_oracles),
        (14, "minimal primes", Duration::from_secs(300), c14_minimal_primes),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let line = match result {
            Ok(detail) if elapsed <= limit => format!("PASS {id:>2} {name}: {detail} ({elapsed:.2?})"),
            Ok(detail) => format!("FAIL {id:>2} {name}: {detail}, took {elapsed:.2?} > {limit:?}"),
            Err(why) => format!("FAIL {id:>2} {name}: {why} ({elapsed:.2?})"),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
