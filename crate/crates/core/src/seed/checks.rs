//! Verifiers that run over an explored mutation graph.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::json;

use super::{CanonicalSeed, MutationGraph};
use crate::laurent::LaurentPoly;
use crate::quiver::ExchangeMatrix;
use crate::report::VerificationReport;

/// A seed is determined by its cluster: every cluster occurring in the graph
/// carries exactly one exchange matrix (in the sorted-cluster labeling).
pub fn verify_cluster_determines_seed(graph: &MutationGraph) -> VerificationReport {
    let seeds: Vec<CanonicalSeed> = graph.nodes().iter().map(|n| n.seed.clone()).collect();
    verify_cluster_determines_seed_in(&seeds, graph.is_truncated())
}

pub fn verify_cluster_determines_seed_in(
    seeds: &[CanonicalSeed],
    truncated: bool,
) -> VerificationReport {
    let mut groups: BTreeMap<&[LaurentPoly], BTreeSet<&ExchangeMatrix>> = BTreeMap::new();
    for seed in seeds {
        groups
            .entry(seed.cluster())
            .or_default()
            .insert(seed.matrix());
    }
    let mut report = VerificationReport::new("cluster-determines-seed");
    report
        .count("seeds", seeds.len() as u64)
        .count("clusters", groups.len() as u64)
        .count(
            "largest_group",
            groups.values().map(|g| g.len()).max().unwrap_or(0) as u64,
        );
    for (cluster, matrices) in &groups {
        if matrices.len() > 1 {
            let listed: Vec<String> = matrices.iter().map(|m| m.to_string()).collect();
            report.violation(format!(
                "cluster {{{}}} occurs with {} exchange matrices: {}",
                render_cluster(cluster),
                matrices.len(),
                listed.join(" vs ")
            ));
        }
    }
    report.finish(truncated)
}

/// Every codimension-one face of a cluster completes to exactly two clusters.
///
/// On a truncated graph only faces with more than two completions are
/// violations; faces with one completion are counted as open.
pub fn verify_exchange_uniqueness(graph: &MutationGraph) -> VerificationReport {
    let clusters = graph.clusters();
    let mut faces: BTreeMap<Vec<&LaurentPoly>, usize> = BTreeMap::new();
    for cluster in &clusters {
        for skip in 0..cluster.len() {
            let face: Vec<&LaurentPoly> = cluster
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, u)| u)
                .collect();
            *faces.entry(face).or_default() += 1;
        }
    }

    let truncated = graph.is_truncated();
    let mut report = VerificationReport::new("exchange-uniqueness");
    let mut open = 0u64;
    for (face, completions) in &faces {
        let bad = if truncated {
            *completions > 2
        } else {
            *completions != 2
        };
        if bad {
            report.violation(format!(
                "face {{{}}} completes to {completions} clusters",
                face.iter()
                    .map(|u| u.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        } else if *completions < 2 {
            open += 1;
        }
    }

    for node in graph.nodes() {
        for (p, target) in node.neighbors.iter().enumerate() {
            let Some(t) = *target else { continue };
            let other = graph.nodes()[t].seed.cluster();
            let shared = node
                .seed
                .cluster()
                .iter()
                .filter(|u| other.binary_search(u).is_ok())
                .count();
            if shared + 1 != graph.n() {
                report.violation(format!(
                    "mutation at position {p} of {{{}}} changes {} variables",
                    render_cluster(node.seed.cluster()),
                    graph.n() - shared
                ));
            }
        }
    }

    report
        .count("clusters", clusters.len() as u64)
        .count("faces", faces.len() as u64)
        .count("open_faces", open);
    report.finish(truncated)
}

/// Reduced forms of all variables: round trip, positivity of the numerator,
/// and no variable dividing the numerator.
pub fn verify_positivity(graph: &MutationGraph) -> VerificationReport {
    let mut report = VerificationReport::new("positivity");
    let variables = graph.variables();
    let mut nonpositive = 0u64;
    for u in &variables {
        let rf = match u.reduced_form() {
            Ok(rf) => rf,
            Err(e) => {
                report.violation(format!("{u}: {e}"));
                continue;
            }
        };
        if rf.reconstruct() != *u {
            report.violation(format!("{u}: reduced form does not reconstruct"));
        }
        match rf.numerator.positivity_check() {
            Ok(true) => {}
            Ok(false) => report.violation(format!("{u}: numerator fails the positivity check")),
            Err(e) => report.violation(format!("{u}: {e}")),
        }
        if rf
            .numerator
            .min_exponents()
            .map(|m| !m.is_zero())
            .unwrap_or(true)
        {
            report.violation(format!("{u}: some variable divides the numerator"));
        }
        if !u.all_coefficients_positive() {
            nonpositive += 1;
            report
                .details
                .push(json!({ "nonpositive_coefficients": u.to_string() }));
        }
    }
    for u in find_polynomial_variables(graph) {
        report
            .details
            .push(json!({ "polynomial_variable": u.to_string() }));
    }
    report
        .count("variables", variables.len() as u64)
        .count("nonpositive_coefficient_variables", nonpositive);
    report.finish(graph.is_truncated())
}

/// Non-initial cluster variables with no negative exponent. None are expected
/// for an acyclic initial seed, but the engine reports rather than assumes it.
pub fn find_polynomial_variables(graph: &MutationGraph) -> Vec<LaurentPoly> {
    graph
        .variables()
        .into_iter()
        .filter(|u| u.is_polynomial() && !super::is_coordinate_variable(u))
        .collect()
}

/// `mu_k(mu_k(s)) = s` along every recorded edge, and `mu_k(s)` is the
/// recorded neighbor. Edges cut off by a limit are skipped.
pub fn verify_involution(graph: &MutationGraph) -> VerificationReport {
    let mut report = VerificationReport::new("involution");
    let mut checked = 0u64;
    for (id, node) in graph.nodes().iter().enumerate() {
        let seed = node.seed.to_seed();
        for (k, neighbor) in node.neighbors.iter().enumerate() {
            let Some(j) = *neighbor else { continue };
            checked += 1;
            let once = match seed.mutate(k) {
                Ok(s) => s,
                Err(e) => {
                    report.violation(format!("seed {id}: mutation at {k}: {e}"));
                    continue;
                }
            };
            if graph.lookup(&once.canonical()) != Some(j) {
                report.violation(format!("seed {id}: mutation at {k} is not seed {j}"));
            }
            match once.mutate(k) {
                Ok(back) if back == seed => {}
                Ok(_) => report.violation(format!("seed {id}: double mutation at {k} differs")),
                Err(e) => report.violation(format!("seed {id}: mutation at {k}: {e}")),
            }
        }
    }
    report.count("double_mutations", checked);
    report.finish(false)
}

fn render_cluster(cluster: &[LaurentPoly]) -> String {
    cluster
        .iter()
        .map(|u| u.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
