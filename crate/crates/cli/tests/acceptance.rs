//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pqrbasis::assemble::{proper_divisor, run_pipeline, BranchKind, Pipeline, PipelineOptions};
use pqrbasis::buchberger::bench::bench_spoly_compare;
use pqrbasis::buchberger::corpus::{
    random_member, random_probe, random_system_with_basis, CorpusParams,
};
use pqrbasis::buchberger::{
    eliminant_of_basis, eliminant_oracle, is_member, to_univariate, FieldPoly,
};
use pqrbasis::mpoly::absorb_last_variable;
use pqrbasis::parse::{integer_normalize, parse_poly, parse_system, render, SystemFile};
use pqrbasis::proper::proper_remainder;
use pqrbasis::{Monomial, MonomialOrder, PqrCtx, UPoly};

const CORPUS_SIZE: usize = 100;
const CORPUS_SEED: u64 = 2024;
const PROBES: usize = 500;
const EXAMPLE_PROBES: usize = 100;

type Verdict = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn load(name: &str) -> SystemFile {
    parse_system(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn univariates(sys: &SystemFile) -> Vec<UPoly> {
    sys.generators
        .iter()
        .map(|g| to_univariate(g).monic())
        .collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant, detail: String) -> Verdict {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({t:.2?})"))
}

struct Example {
    sys: SystemFile,
    p: Pipeline,
}

fn example() -> Example {
    let sys = load("worked.sys");
    let p = run_pipeline(&sys.generators, PipelineOptions::default()).unwrap();
    Example { sys, p }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_pqrbasis"))
        .args(["eliminate", "--no-timing"])
        .arg(fixture("worked.sys"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), "eliminate failed")?;
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let order = MonomialOrder::lex(3);
    let uni = |v: &serde_json::Value| -> Result<UPoly, String> {
        let text = v["text"].as_str().ok_or("missing polynomial text")?;
        Ok(to_univariate(
            &parse_poly(text, &vars, &order).map_err(|e| e.to_string())?,
        ))
    };
    let chi = uni(&doc["chi"])?;
    let expected = univariates(&load("worked_chi.sys")).remove(0);
    ensure(chi == expected, format!("chi = {}", chi.render("z")))?;
    let rec = &doc["reconstruction"];
    let mut product = uni(&rec["cp"])?;
    for d in rec["proper_divisors"]
        .as_array()
        .ok_or("missing proper divisors")?
    {
        product = &product * &uni(d)?;
    }
    ensure(
        product.monic() == expected,
        "CP times the proper divisors is not chi",
    )?;
    within(
        Duration::from_secs(10),
        start,
        format!("chi of degree {} matches", chi.deg()),
    )
}

fn criterion_2(ex: &Example) -> Verdict {
    let mut got: Vec<UPoly> = ex.p.pseudo.multipliers.iter().map(UPoly::monic).collect();
    let mut want = univariates(&load("worked_lambda.sys"));
    got.sort_by_key(|u| u.degree());
    want.sort_by_key(|u| u.degree());
    ensure(
        got == want,
        format!(
            "Lambda = {:?}",
            got.iter().map(|u| u.render("z")).collect::<Vec<_>>()
        ),
    )?;
    Ok(format!("{} multipliers match", got.len()))
}

fn lm_ideal_contains(gens: &[Monomial], others: &[Monomial]) -> bool {
    others.iter().all(|m| gens.iter().any(|g| g.divides(m)))
}

fn branch_criterion(ex: &Example, kind: BranchKind, file: &str, limit: Duration) -> Verdict {
    let start = Instant::now();
    let p =
        run_pipeline(&ex.sys.generators, PipelineOptions::default()).map_err(|e| e.to_string())?;
    let b = p
        .new_basis
        .branches()
        .find(|b| b.kind == kind)
        .ok_or("branch missing")?;
    let expected: Vec<_> = load(file)
        .generators
        .iter()
        .map(|g| b.ctx.project_poly(&absorb_last_variable(g, &p.tilde_order)))
        .collect();
    let zero = |f, basis| -> Result<bool, String> {
        Ok(proper_remainder(f, basis, &b.ctx)
            .map_err(|e| e.to_string())?
            .remainder
            .is_zero())
    };
    for (k, f) in expected.iter().enumerate() {
        ensure(
            zero(f, &b.basis)?,
            format!("expected element {} does not reduce to 0", k + 1),
        )?;
    }
    for (k, f) in b.basis.iter().enumerate() {
        ensure(
            zero(f, &expected)?,
            format!("computed element {} does not reduce to 0", k + 1),
        )?;
    }
    let ours: Vec<Monomial> = b.basis.iter().map(|f| f.lm().unwrap().clone()).collect();
    let theirs: Vec<Monomial> = expected.iter().map(|f| f.lm().unwrap().clone()).collect();
    ensure(
        lm_ideal_contains(&ours, &theirs) && lm_ideal_contains(&theirs, &ours),
        "leading monomial ideals differ",
    )?;
    within(
        limit,
        start,
        format!(
            "modulus of degree {}: {} expected / {} computed elements agree",
            b.divisor.deg(),
            expected.len(),
            b.basis.len()
        ),
    )
}

fn criterion_5(ex: &Example) -> Verdict {
    let start = Instant::now();
    let (gb, chi) = eliminant_oracle(&ex.sys.generators).map_err(|e| e.to_string())?;
    let normalized: Vec<String> = gb
        .iter()
        .map(|g| render(&integer_normalize(g), &ex.sys.variables))
        .collect();
    for (k, g) in load("worked_lex_basis.sys")
        .generators
        .iter()
        .enumerate()
    {
        ensure(
            normalized.contains(&render(g, &ex.sys.variables)),
            format!("g{} missing", k + 1),
        )?;
    }
    let expected = univariates(&load("worked_chi.sys")).remove(0);
    let monic_uni = gb.iter().any(|g| {
        g.terms()
            .iter()
            .all(|(m, _)| m.exps()[..2].iter().all(|e| *e == 0))
            && to_univariate(g) == expected
    });
    ensure(
        monic_uni && chi == expected,
        "no monic univariate equal to chi",
    )?;
    within(
        Duration::from_secs(120),
        start,
        format!("g1..g4 and chi found among {} elements", gb.len()),
    )
}

struct CorpusEntry {
    gens: Vec<FieldPoly>,
    gb: Vec<FieldPoly>,
    chi: UPoly,
    p: Pipeline,
}

fn build_corpus() -> Result<(Vec<CorpusEntry>, Duration), String> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let params = CorpusParams::default();
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    for _ in 0..CORPUS_SIZE {
        let (gens, gb) = random_system_with_basis(&mut rng, &params);
        let chi = eliminant_of_basis(&gb).map_err(|e| e.to_string())?;
        let p = run_pipeline(&gens, PipelineOptions::default()).map_err(|e| e.to_string())?;
        out.push(CorpusEntry { gens, gb, chi, p });
    }
    Ok((out, start.elapsed()))
}

fn criterion_6(corpus: &[CorpusEntry], elapsed: Duration) -> Verdict {
    let bad: Vec<usize> = (0..corpus.len())
        .filter(|&i| corpus[i].p.chi() != &corpus[i].chi)
        .collect();
    ensure(
        bad.is_empty(),
        format!("eliminant mismatch on systems {bad:?}"),
    )?;
    let limit = Duration::from_secs(600);
    ensure(
        elapsed < limit,
        format!("took {elapsed:.1?}, limit {limit:?}"),
    )?;
    let vars3 = corpus.iter().filter(|c| c.gens[0].nvars() == 3).count();
    Ok(format!(
        "{}/{} eliminants equal ({} in 3 variables) ({elapsed:.2?})",
        corpus.len(),
        corpus.len(),
        vars3
    ))
}

fn criterion_7(corpus: &[CorpusEntry], ex: &Example) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    let params = CorpusParams::default();
    let per_system = (PROBES - EXAMPLE_PROBES) / corpus.len();
    let ex_gb = eliminant_oracle(&ex.sys.generators)
        .map_err(|e| e.to_string())?
        .0;
    let mut jobs: Vec<(&[FieldPoly], &[FieldPoly], &Pipeline, usize)> = corpus
        .iter()
        .map(|c| (c.gens.as_slice(), c.gb.as_slice(), &c.p, per_system))
        .collect();
    jobs.push((&ex.sys.generators, &ex_gb, &ex.p, EXAMPLE_PROBES));
    let (mut total, mut members, mut disagreements) = (0, 0, 0);
    for (gens, gb, p, n) in jobs {
        for k in 0..n {
            let f = if k % 2 == 0 {
                random_member(&mut rng, gens, &params)
            } else {
                random_probe(&mut rng, gens, &params)
            };
            let oracle = is_member(&f, gb);
            let ours = p.contains(&f).map_err(|e| e.to_string())?;
            total += 1;
            members += usize::from(oracle);
            disagreements += usize::from(oracle != ours);
        }
    }
    ensure(total == PROBES, format!("ran {total} probes"))?;
    ensure(
        disagreements == 0,
        format!("{disagreements} of {total} verdicts disagree"),
    )?;
    Ok(format!("{total} probes agree ({members} members)"))
}

fn criterion_8() -> Verdict {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, check) in common::identities::SUITE {
        if let Err(e) = check() {
            failed.push(format!("{name}: {e}"));
        }
    }
    ensure(failed.is_empty(), failed.join("; "))?;
    Ok(format!(
        "{} suites x {} instances ({:.2?})",
        common::identities::SUITE.len(),
        common::identities::CASES,
        start.elapsed()
    ))
}

fn criterion_9(corpus: &[CorpusEntry], ex: &Example) -> Verdict {
    let ex_chi = eliminant_oracle(&ex.sys.generators)
        .map_err(|e| e.to_string())?
        .1;
    let mut cases: Vec<(&Pipeline, &UPoly)> = corpus.iter().map(|c| (&c.p, &c.chi)).collect();
    cases.push((&ex.p, &ex_chi));
    let mut divisors = 0;
    for (i, (p, chi)) in cases.iter().enumerate() {
        ensure(
            p.compat.cp.divides(chi),
            format!("system {i}: CP does not divide chi"),
        )?;
        for (cd, r) in p.compat.composite.iter().zip(&p.branches) {
            let c = proper_divisor(&r.e_q, &cd.modulus).map_err(|e| e.to_string())?;
            if c.is_one() {
                continue;
            }
            divisors += 1;
            ensure(
                c.divides(chi),
                format!("system {i}: proper divisor does not divide chi"),
            )?;
            if !r.e_q.is_zero() {
                let ctx = PqrCtx::new(&cd.modulus).map_err(|e| e.to_string())?;
                let rep = ctx.project(chi).standard_rep().map_err(|e| e.to_string())?;
                ensure(
                    rep == r.e_q,
                    format!("system {i}: standard representative differs from e_q"),
                )?;
            }
        }
    }
    Ok(format!(
        "{} systems, {divisors} nontrivial proper divisors",
        cases.len()
    ))
}

fn criterion_10() -> Verdict {
    let start = Instant::now();
    let ms = [4, 8, 16, 32];
    let report = bench_spoly_compare(&ms, 20, 1).map_err(|e| e.to_string())?;
    ensure(
        report.identity_failures == 0,
        "chain and single-gcd results disagree",
    )?;
    ensure(
        report
            .rows
            .iter()
            .filter(|r| r.method == "single_gcd")
            .all(|r| r.ops.gcd_calls == 1),
        "a single-gcd computation used more than one gcd",
    )?;
    let ratios: Vec<f64> = ms
        .iter()
        .map(|&m| report.mean_ops(m, "euclid_chain") / report.mean_ops(m, "single_gcd"))
        .collect();
    ensure(
        ratios.windows(2).all(|w| w[1] > w[0]),
        format!("ratios {ratios:.2?} not strictly increasing"),
    )?;
    for &m in ms.iter().filter(|&&m| m >= 8) {
        let (old, new) = (
            report.mean_bits(m, "euclid_chain"),
            report.mean_bits(m, "single_gcd"),
        );
        ensure(
            old > new,
            format!("m = {m}: chain bits {old:.1} <= single-gcd bits {new:.1}"),
        )?;
    }
    within(
        Duration::from_secs(300),
        start,
        format!("ratios {ratios:.2?}"),
    )
}

fn main() -> ExitCode {
    let ex = example();
    let corpus = build_corpus();
    let mut results: Vec<(usize, Verdict)> = vec![
        (1, criterion_1()),
        (2, criterion_2(&ex)),
        (
            3,
            branch_criterion(
                &ex,
                BranchKind::ProperNonzero,
                "worked_bp.sys",
                Duration::from_secs(10),
            ),
        ),
        (
            4,
            branch_criterion(
                &ex,
                BranchKind::Compatible,
                "worked_bq.sys",
                Duration::from_secs(30),
            ),
        ),
        (5, criterion_5(&ex)),
    ];
    match &corpus {
        Ok((c, elapsed)) => {
            results.push((6, criterion_6(c, *elapsed)));
            results.push((7, criterion_7(c, &ex)));
        }
        Err(e) => {
            results.push((6, Err(e.clone())));
            results.push((7, Err(e.clone())));
        }
    }
    results.push((8, criterion_8()));
    results.push((
        9,
        match &corpus {
            Ok((c, _)) => criterion_9(c, &ex),
            Err(e) => Err(e.clone()),
        },
    ));
    results.push((10, criterion_10()));

    let mut failures = 0;
    for (n, v) in &results {
        match v {
            Ok(detail) => println!("criterion {n:>2}: PASS  {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {n:>2}: FAIL  {why}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
