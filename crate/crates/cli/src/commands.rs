use serde::Serialize;
use serde_json::{json, Value};

use specht_core::betti::{cm_verdict, default_j_max, koszul_betti, koszul_betti_char0_proxy, BettiTable};
use specht_core::ideal::{
    cubic_truncation, elementary_e1, equal_up_to_degree, is_socle_element, mult_injective, socle,
    two_row_hilbert_series, IdealSpec,
};
use specht_core::shapes::{cm_shape_class, enumerate_partitions};
use specht_core::specht::{independence_rank, specht_poly, straighten_quasi_h, Frame, SpechtSystem};
use specht_core::variety::{
    clique_primes, coloring_witness, condition_star, condition_star_brute_force, condition_star_gale_ryser,
    evaluation_oracle, height_and_purity, minimal_primes, purity_closed_form, SetPartition,
};
use specht_core::{with_field, Error, Field, FieldSpec, Partition, Polynomial, Result, ShapeClass, Tableau};

use crate::report::Report;
use crate::{Command, RunConfig};

pub fn run(cmd: Command, cfg: &RunConfig) -> Result<Report> {
    let field = FieldSpec::new(cfg.characteristic)?;
    if cfg.max_degree == Some(0) {
        return Err(Error::Precondition("--max-deg must be at least 1".into()));
    }
    let mut report = Report::new(cmd.name(), serde_json::to_value(cfg).unwrap());
    match cmd {
        Command::Gens => with_field!(field, |f| gens(cfg, f, &mut report))?,
        Command::Hilbert => with_field!(field, |f| hilbert(cfg, f, &mut report))?,
        Command::RadicalCheck => with_field!(field, |f| radical_check(cfg, f, &mut report))?,
        Command::MinimalPrimes => minimal_primes_cmd(cfg, &mut report)?,
        Command::Purity => purity(cfg, &mut report)?,
        Command::Betti => betti(cfg, field, &mut report)?,
        Command::CmCheck => cm_check(cfg, field, &mut report)?,
        Command::Catalan => with_field!(field, |f| catalan(cfg, f, &mut report))?,
        Command::Straighten => with_field!(field, |f| straighten(cfg, f, &mut report))?,
        Command::ConditionStar => condition_star_cmd(cfg, &mut report)?,
        Command::SocleProbe => with_field!(field, |f| socle_probe(cfg, f, &mut report))?,
        Command::Experiment => experiment(cfg, &mut report)?,
    }
    Ok(report)
}

fn shape(cfg: &RunConfig) -> Result<Partition> {
    let s = cfg
        .shape
        .as_deref()
        .ok_or_else(|| Error::Precondition("--shape is required".into()))?;
    Partition::parse(s)
}

fn require_n(cfg: &RunConfig) -> Result<usize> {
    cfg.n.ok_or_else(|| Error::Precondition("--n is required".into()))
}

fn gens<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let sys = SpechtSystem::new(&lam, f)?;
    let rank = independence_rank(&lam, f)?;
    let prov = format!("specht::independence_rank({lam}) over {}", f.spec());
    r.verdict("standard_tableaux", sys.generators.len(), format!("shapes::enumerate_standard_tableaux({lam})"));
    r.verdict("independence_rank", rank, prov.clone());
    r.verdict("generator_degree", sys.degree(), format!("shapes::Partition::specht_degree({lam})"));
    r.verdict("standard_generators_independent", rank == sys.generators.len(), prov);
    let rows: Vec<Value> = sys
        .generators
        .iter()
        .map(|(t, p)| json!({"tableau": t.to_string(), "polynomial": p.to_string()}))
        .collect();
    r.table("generators", rows);
    r.outcome = rank == sys.generators.len();
    Ok(())
}

fn hilbert<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let d = cfg.max_degree.unwrap_or(lam.first() + 4);
    let hf = IdealSpec::specht(f, &lam)?.hilbert_function(d)?;
    r.verdict("hilbert_function", &hf, format!("ideal::hilbert_function(ISp({lam}), {d}) over {}", f.spec()));
    if lam.len() == 2 && lam.part(2) == 2 {
        let series = two_row_hilbert_series(lam.n(), d);
        r.verdict(
            "matches_two_row_series",
            hf == series,
            format!("ideal::two_row_hilbert_series({}, {d})", lam.n()),
        );
        r.outcome = hf == series;
    }
    r.table("hilbert_function", hf);
    Ok(())
}

fn radical_check<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    lam.require_nontrivial()?;
    let d = cfg.max_degree.unwrap_or(lam.first() + 4);
    let n = lam.n();
    let k = lam.first() + 1;
    let sp = IdealSpec::specht(f, &lam)?;
    let ink = IdealSpec::intersection_ink(f, n, k)?;
    let v = equal_up_to_degree(&sp, &ink, d)?;
    let prov = format!("ideal::equal_up_to_degree(ISp({lam}), I({n},{k}), {d}) over {}", f.spec());
    r.verdict("equal_up_to_degree", v.equal, prov.clone());
    r.verdict("max_degree", d, prov.clone());
    r.verdict("first_disagreement", v.first_disagreement, prov.clone());
    if let Some(p) = &v.separating {
        let side = if v.separating_side == Some(0) { "specht" } else { "intersection" };
        r.verdict("separating_polynomial", p.to_string(), format!("{prov}; lies only in the {side} side"));
    }
    r.verdict(
        "radical_is_intersection",
        lam.part(lam.len() - 1) == lam.first(),
        format!("variety::minimal_primes equality case for {lam}"),
    );
    r.table("dims_specht", &v.dims_left);
    r.table("dims_intersection", &v.dims_right);
    r.outcome = v.equal;
    Ok(())
}

#[derive(Serialize)]
struct PrimeRow {
    blocks: String,
    height: usize,
}

fn minimal_primes_cmd(cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let primes = minimal_primes(&lam)?;
    let prov = format!("variety::minimal_primes({lam})");
    let cliques = clique_primes(lam.n(), lam.first() + 1);
    let all_cliques = cliques.iter().all(|c| primes.contains(c));
    let height = primes.iter().map(|p| p.height()).min().unwrap_or(0);
    r.verdict("count", primes.len(), prov.clone());
    r.verdict("height", height, prov.clone());
    r.verdict("height_equals_lambda1", height == lam.first(), prov.clone());
    r.verdict("contains_all_clique_primes", all_cliques, prov.clone());
    r.verdict("exactly_clique_primes", all_cliques && primes.len() == cliques.len(), prov);
    let rows: Vec<PrimeRow> = primes
        .iter()
        .map(|p| PrimeRow {
            blocks: p.to_string(),
            height: p.height(),
        })
        .collect();
    r.table("minimal_primes", rows);
    r.outcome = height == lam.first() && all_cliques;
    Ok(())
}

fn purity(cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let hp = height_and_purity(&lam)?;
    let prov = format!("variety::height_and_purity({lam})");
    r.verdict("height", hp.height, prov.clone());
    r.verdict("pure", hp.pure, prov.clone());
    r.verdict("heights_seen", &hp.heights_seen, prov.clone());
    r.verdict("closed_form_pure", purity_closed_form(&lam), format!("variety::purity_closed_form({lam})"));
    r.verdict("closed_form_agrees", hp.pure == hp.closed_form_pure, prov);
    r.outcome = hp.pure;
    Ok(())
}

fn add_betti_table(r: &mut Report, name: &str, t: &BettiTable, prov: &str) {
    r.verdict("totals", t.totals(), prov);
    r.verdict("projective_dimension", t.projective_dimension(), prov);
    r.verdict("depth", t.depth(), prov);
    r.verdict("top_strand_closed", t.top_strand_closed, prov);
    r.verdict("euler_check", t.euler_check, prov);
    r.table(name, t);
    r.diagram(name, t.to_m2());
}

fn betti(cfg: &RunConfig, field: FieldSpec, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let j_max = cfg.max_degree.unwrap_or_else(|| default_j_max(&lam));
    let prov = format!("betti::koszul_betti(ISp({lam}), {j_max}) over {field}");
    match field.prime_field() {
        Some(pf) => {
            let t = koszul_betti(&IdealSpec::specht(pf, &lam)?, j_max)?;
            add_betti_table(r, "betti", &t, &prov);
            r.outcome = t.euler_check;
        }
        None if cfg.exact => {
            let t = koszul_betti(&IdealSpec::specht(specht_core::Rationals, &lam)?, j_max)?;
            add_betti_table(r, "betti", &t, &prov);
            r.outcome = t.euler_check;
        }
        None => {
            let c = koszul_betti_char0_proxy(|f| IdealSpec::specht(f, &lam), j_max)?;
            let prov = format!("{prov} via primes {:?}", c.primes);
            add_betti_table(r, "betti", &c.table, &prov);
            r.verdict("proxy_primes_agree", c.agree, prov);
            r.outcome = c.agree && c.table.euler_check;
        }
    }
    Ok(())
}

fn cm_check(cfg: &RunConfig, field: FieldSpec, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let j_max = cfg.max_degree.unwrap_or_else(|| default_j_max(&lam));
    let v = cm_verdict(&lam, field, j_max, cfg.exact)?;
    let prov = format!("betti::cm_verdict({lam}, {field}, {j_max})");
    r.verdict("is_cm", v.is_cm, prov.clone());
    r.verdict("is_gorenstein", v.is_gorenstein, prov.clone());
    r.verdict("pd", v.pd, prov.clone());
    r.verdict("depth", v.depth, prov.clone());
    r.verdict("dim", v.dim, format!("variety::height_and_purity({lam}) height"));
    r.verdict("top_strand_closed", v.table.top_strand_closed, prov.clone());
    if let Some(a) = v.proxy_agree {
        r.verdict("proxy_primes_agree", a, prov);
    }
    r.verdict("shape_class", cm_shape_class(&lam)?.to_string(), format!("shapes::cm_shape_class({lam})"));
    r.table("betti", &v.table);
    r.diagram("betti", v.table.to_m2());
    r.outcome = v.is_cm;
    Ok(())
}

fn catalan_number(n: usize) -> usize {
    (0..n).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn catalan<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let n = require_n(cfg)?;
    if n == 0 {
        return Err(Error::Precondition("--n must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for m in 1..=n {
        let c = catalan_number(m);
        let square = independence_rank(&Partition::new(vec![m, m])?, f)?;
        let near = independence_rank(&Partition::new(vec![m, m - 1].into_iter().filter(|&x| x > 0).collect())?, f)?;
        ok &= square == c && near == c;
        rows.push(json!({"n": m, "catalan": c, "rank_square": square, "rank_near_square": near}));
    }
    let c = catalan_number(n);
    r.verdict(
        "catalan",
        c,
        format!("specht::independence_rank(({n},{n})) over {}", f.spec()),
    );
    let ink = IdealSpec::intersection_ink(f, 2 * n, n + 1)?;
    let counts = ink.minimal_generator_counts(n)?;
    let mu: usize = counts.iter().sum();
    r.verdict(
        "minimal_generators_of_intersection",
        mu,
        format!("ideal::minimal_generator_counts(I({},{}), {n})", 2 * n, n + 1),
    );
    ok &= mu == c;
    r.verdict("all_agree", ok, "catalan table and intersection cross-check");
    r.table("catalan", rows);
    r.table("intersection_generator_degrees", counts);
    r.outcome = ok;
    Ok(())
}

fn parse_letters(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad letter {x:?}"))))
        .collect()
}

fn straighten<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let t = Tableau::parse(
        cfg.tableau
            .as_deref()
            .ok_or_else(|| Error::Precondition("--tableau is required".into()))?,
    )?;
    let a = parse_letters(cfg.a_letters.as_deref().unwrap_or(""))?;
    let terms = straighten_quasi_h(&t, &a)?;
    let n = t.n();
    let mut sum = Polynomial::zero(f, n);
    let mut quasi = true;
    for (s, u) in &terms {
        let p = specht_poly(u, f);
        sum = if *s > 0 { &sum + &p } else { &sum - &p };
        quasi &= Frame::from_tableau(u, &a)?.0.is_quasi_h_standard();
    }
    let reconstructs = sum == specht_poly(&t, f);
    let prov = format!("specht::straighten_quasi_h({t}, A={a:?})");
    r.verdict("terms", terms.len(), prov.clone());
    r.verdict("reconstructs", reconstructs, prov.clone());
    r.verdict("all_quasi_h_standard", quasi, prov);
    let rows: Vec<Value> = terms
        .iter()
        .map(|(s, u)| json!({"sign": s, "tableau": u.to_string()}))
        .collect();
    r.table("terms", rows);
    r.outcome = reconstructs && quasi;
    Ok(())
}

fn condition_star_cmd(cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let lam = shape(cfg)?;
    let pi = SetPartition::parse(
        cfg.blocks
            .as_deref()
            .ok_or_else(|| Error::Precondition("--blocks is required".into()))?,
    )?;
    let flow = condition_star(&pi, &lam)?;
    let fix = format!("({pi}, {lam})");
    r.verdict("condition_star", flow, format!("variety::condition_star{fix}"));
    let gr = condition_star_gale_ryser(&pi, &lam)?;
    r.verdict("gale_ryser", gr, format!("variety::condition_star_gale_ryser{fix}"));
    let mut agree = gr == flow;
    if lam.n() <= 7 {
        let bf = condition_star_brute_force(&pi, &lam)?;
        let ev = evaluation_oracle(&pi, &lam)?;
        r.verdict("brute_force", bf, format!("variety::condition_star_brute_force{fix}"));
        r.verdict("evaluation_oracle", ev, format!("variety::evaluation_oracle{fix}"));
        agree &= bf == flow && ev == flow;
    }
    r.verdict("deciders_agree", agree, format!("cross-check on {fix}"));
    r.verdict("height", pi.height(), format!("variety::SetPartition::height({pi})"));
    if let Some(w) = coloring_witness(&pi, &lam)? {
        r.verdict("witness_tableau", w.to_string(), format!("variety::coloring_witness{fix}"));
    }
    if !agree {
        return Err(Error::Internal(format!("condition (*) deciders disagree on {fix}")));
    }
    r.outcome = flow;
    Ok(())
}

fn socle_probe<F: Field>(cfg: &RunConfig, f: F, r: &mut Report) -> Result<()> {
    let n = require_n(cfg)?;
    let a = cubic_truncation(f, n)?;
    let top = cfg.max_degree.unwrap_or(5);
    let dims: Vec<usize> = (0..=top)
        .map(|m| a.quotient(m).map(|q| q.dimension()))
        .collect::<Result<_>>()?;
    let fix = format!("{} in {} vars over {}", a.label(), n - 1, f.spec());
    let s2 = socle(&a, 2)?;
    let y = Polynomial::parse(f, n - 1, "x1*x2 + x2*x3 + x3*x1")?;
    let witness = is_socle_element(&a, &y)?;
    let inj = mult_injective(&elementary_e1(f, n - 1), &a, 2)?;
    r.verdict("socle_dim_2", s2.dimension(), format!("ideal::socle({fix}, 2)"));
    r.verdict("witness_in_socle", witness, format!("ideal::is_socle_element({fix}, x1x2+x2x3+x3x1)"));
    r.verdict("e1_injective_2", inj.injective, format!("ideal::mult_injective(e1, {fix}, 2)"));
    r.verdict("e1_rank_2", inj.rank, format!("ideal::mult_injective(e1, {fix}, 2)"));
    let expect = 2 * (n - 1);
    let stable = (2..=top).all(|m| dims[m] == expect);
    r.verdict("dim_equals_2n_minus_2", stable, format!("ideal::QuotientComponent dims 2..={top}"));
    r.table("quotient_dims", &dims);
    r.table(
        "socle_basis",
        s2.vectors().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    );
    r.outcome = s2.dimension() == 0;
    Ok(())
}

fn parse_chars(s: &str) -> Result<Vec<FieldSpec>> {
    s.split(',')
        .map(str::trim)
        .map(|x| {
            x.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad characteristic {x:?}")))
                .and_then(FieldSpec::new)
        })
        .collect()
}

fn experiment(cfg: &RunConfig, r: &mut Report) -> Result<()> {
    let n_max = cfg.n_max.unwrap_or(6);
    let chars = parse_chars(cfg.primes.as_deref().unwrap_or("0,2,3,5"))?;
    let mut rows = Vec::new();
    let mut consistent = 0usize;
    let mut cells = 0usize;
    for n in 2..=n_max {
        for lam in enumerate_partitions(n)? {
            if lam.is_trivial() {
                continue;
            }
            let class = cm_shape_class(&lam)?;
            if !matches!(class, ShapeClass::TwoRow | ShapeClass::Aa1) {
                continue;
            }
            for &field in &chars {
                let predicted = field.is_rational() || field.characteristic as usize >= n - lam.first();
                let mut row = json!({
                    "shape": lam.to_string(),
                    "class": class.to_string(),
                    "field": field.to_string(),
                    "predicted_cm": predicted,
                });
                match cm_verdict(&lam, field, default_j_max(&lam), false) {
                    Ok(v) => {
                        cells += 1;
                        consistent += usize::from(v.is_cm == predicted);
                        row["is_cm"] = json!(v.is_cm);
                        row["pd"] = json!(v.pd);
                        row["totals"] = json!(v.table.totals());
                        row["consistent"] = json!(v.is_cm == predicted);
                        if class == ShapeClass::Aa1 && field.is_rational() {
                            let a = lam.first();
                            let linear = (1..=v.table.n).all(|i| {
                                (0..=v.table.j_max).all(|j| v.table.get(i, j) == 0 || j == i + a + 1)
                            });
                            row["linear_resolution"] = json!(linear);
                        }
                    }
                    Err(Error::ResourceLimit(msg)) => row["resource_limit"] = json!(msg),
                    Err(e) => return Err(e),
                }
                rows.push(row);
            }
        }
    }
    r.verdict("cells", cells, "betti::cm_verdict over two-row and (a,a,1) shapes");
    r.verdict("consistent_cells", consistent, "observation only; nothing asserted");
    r.table("observations", rows);
    Ok(())
}
