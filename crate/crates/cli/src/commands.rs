use std::path::Path;
use std::time::Instant;

use seedcheck::cc::{beta, cc_variable, grassmannian_profile, verify_alpha_beta_inverse};
use seedcheck::reps::{build_indecomposable, verify_tilting_image, ClusterObject};
use seedcheck::roots::{positive_roots, verify_denominator_theorem, CoxeterTransform};
use seedcheck::seed::{
    read_cache, verify_cluster_determines_seed, verify_exchange_uniqueness, verify_positivity,
    write_cache,
};
use seedcheck::{explore, Error, ExchangeMatrix, ExploreLimits, MutationGraph, Seed, Verdict};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::output::{Outcome, Report};
use crate::{Check, Cli, Command};

pub fn run(cli: &Cli) -> Result<Report, Outcome> {
    let path = cli
        .quiver
        .as_deref()
        .ok_or_else(|| Outcome::usage("--quiver is required"))?;
    let q = load_quiver(path)?;
    let start = Instant::now();
    let mut report = Report::new(echo(&cli.command), digest(&q));
    match &cli.command {
        Command::Mutate { at } => mutate(&q, at, cli.max_terms, &mut report)?,
        Command::Explore => {
            let g = graph(cli, &q)?;
            graph_counts(&g, &mut report);
            report.result = json!({
                "truncations": g.truncations(),
                "variables": g.variables().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
            });
            if g.is_truncated() {
                report.verdict = Verdict::InconclusiveTruncated;
            }
        }
        Command::Verify { check } => verify(cli, &q, *check, &mut report)?,
        Command::Roots => roots(&q, &mut report)?,
        Command::Cc { root } => cc(&q, root, &mut report)?,
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn load_quiver(path: &Path) -> Result<ExchangeMatrix, Outcome> {
    let q = ExchangeMatrix::load(path)
        .map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    if !q.is_acyclic() {
        return Err(Outcome::usage(format!(
            "{}: the quiver has an oriented cycle; only acyclic initial seeds are supported",
            path.display()
        )));
    }
    Ok(q)
}

fn echo(command: &Command) -> String {
    let list = |v: &[i64]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match command {
        Command::Mutate { at } => {
            let at: Vec<i64> = at.iter().map(|&k| k as i64).collect();
            format!("mutate --at {}", list(&at))
        }
        Command::Explore => "explore".into(),
        Command::Verify { check } => {
            let name = match check {
                Check::Denominators => "denominators",
                Check::Injectivity => "injectivity",
                Check::ExchangeUniqueness => "exchange-uniqueness",
                Check::Tilting => "tilting",
                Check::Cc => "cc",
                Check::All => "all",
            };
            format!("verify {name}")
        }
        Command::Roots => "roots".into(),
        Command::Cc { root } => format!("cc --root {}", list(root)),
    }
}

/// SHA-256 of the quiver in its canonical compact JSON form.
fn digest(q: &ExchangeMatrix) -> String {
    let canonical = serde_json::to_string(&q.to_file_schema()).expect("quiver serializes");
    format!(
        "sha256:{}",
        hex::encode(Sha256::digest(canonical.as_bytes()))
    )
}

fn graph(cli: &Cli, q: &ExchangeMatrix) -> Result<MutationGraph, Outcome> {
    if let Some(path) = cli.cache.as_deref().filter(|p| p.exists()) {
        let g = read_cache(path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
        if g.initial_matrix().as_ref() != Some(q) {
            return Err(Outcome::usage(format!(
                "{}: cache was built from a different quiver",
                path.display()
            )));
        }
        return Ok(g);
    }
    let limits = ExploreLimits {
        max_depth: cli.max_depth,
        max_seeds: cli.max_seeds,
        max_terms: cli.max_terms,
        threads: cli.threads,
    };
    let g = explore(q, &limits).map_err(|e| match e {
        Error::Division(f) => Outcome {
            code: 1,
            message: format!("Laurent phenomenon violated: {f}"),
        },
        other => other.into(),
    })?;
    if let Some(path) = cli.cache.as_deref() {
        write_cache(&g, path).map_err(|e| Outcome::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(g)
}

fn graph_counts(g: &MutationGraph, report: &mut Report) {
    let counts = [
        ("seeds", g.len()),
        ("clusters", g.clusters().len()),
        ("variables", g.variables().len()),
        ("depth", g.depth_reached()),
    ];
    for (k, v) in counts {
        report.counts.insert(k.to_string(), v as u64);
    }
}

fn mutate(
    q: &ExchangeMatrix,
    at: &[usize],
    max_terms: usize,
    report: &mut Report,
) -> Result<(), Outcome> {
    let mut seed = Seed::initial(q)?;
    for &k in at {
        seed = seed.mutate_bounded(k, max_terms)?;
    }
    report.counts.insert("mutations".into(), at.len() as u64);
    report.result = json!({
        "sequence": at,
        "cluster": seed.cluster().iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        "matrix": seed.matrix().rows(),
    });
    Ok(())
}

fn verify(cli: &Cli, q: &ExchangeMatrix, check: Check, report: &mut Report) -> Result<(), Outcome> {
    let dynkin = q.classify_dynkin().is_some();
    let g = graph(cli, q)?;
    graph_counts(&g, report);
    let wants = |c: Check| check == c || check == Check::All;
    let mut skipped = Vec::new();
    if wants(Check::Denominators) {
        report.push_section(verify_denominator_theorem(&g, q));
        report.push_section(verify_positivity(&g));
    }
    if wants(Check::Injectivity) {
        report.push_section(verify_cluster_determines_seed(&g));
    }
    if wants(Check::ExchangeUniqueness) {
        report.push_section(verify_exchange_uniqueness(&g));
    }
    if wants(Check::Tilting) {
        if dynkin || check == Check::Tilting {
            report.push_section(verify_tilting_image(&g, q)?);
        } else {
            skipped.push("tilting");
        }
    }
    if wants(Check::Cc) {
        if dynkin || check == Check::Cc {
            report.push_section(verify_alpha_beta_inverse(&g, q)?);
        } else {
            skipped.push("cc");
        }
    }
    if !skipped.is_empty() {
        report.result = json!({ "skipped_non_dynkin": skipped });
    }
    Ok(())
}

fn roots(q: &ExchangeMatrix, report: &mut Report) -> Result<(), Outcome> {
    let roots = positive_roots(q)?;
    let kind = q
        .classify_dynkin()
        .expect("positive_roots accepted the quiver");
    let cox = CoxeterTransform::new(q)?;
    report
        .counts
        .insert("positive_roots".into(), roots.len() as u64);
    report.result = json!({
        "dynkin_type": kind.to_string(),
        "roots": roots,
        "coxeter": cox.matrix(),
    });
    Ok(())
}

fn cc(q: &ExchangeMatrix, root: &[i64], report: &mut Report) -> Result<(), Outcome> {
    if root.len() != q.n() {
        return Err(Outcome::usage(format!(
            "--root has {} entries for a quiver on {} vertices",
            root.len(),
            q.n()
        )));
    }
    let m = build_indecomposable(q, root)?;
    let x = beta(q, &ClusterObject::Rep(m.clone()))?;
    debug_assert_eq!(x, cc_variable(&m)?);
    let denom = x.denominator_vector()?.to_i64();
    let profile = grassmannian_profile(&m)?;
    let grassmannians: Vec<_> = profile
        .by_dimvector
        .iter()
        .filter(|(_, &chi)| chi != 0)
        .map(|(e, chi)| json!({ "e": e, "chi": chi }))
        .collect();
    report.counts.insert("terms".into(), x.len() as u64);
    report.result = json!({
        "root": root,
        "cc_variable": x.to_string(),
        "denominator_vector": denom,
        "grassmannians": grassmannians,
    });
    if denom != root {
        report.verdict = Verdict::Fail;
        report.violations.push(format!(
            "denominator vector {denom:?} of the CC variable differs from {root:?}"
        ));
    }
    Ok(())
}
