//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use seedcheck::cc::{chi_interpolated, chi_thin, verify_alpha_beta_inverse};
use seedcheck::laurent::{ExponentVector, LaurentPoly};
use seedcheck::linalg::QMatrix;
use seedcheck::quiver::examples::{affine_a2, d4, kronecker, linear_a};
use seedcheck::reps::{verify_tilting_image, QuiverRep};
use seedcheck::roots::{
    positive_roots, tits_form, verify_denominator_theorem, CoxeterTransform, Direction,
};
use seedcheck::seed::{
    is_coordinate_variable, verify_cluster_determines_seed, verify_exchange_uniqueness,
    verify_positivity,
};
use seedcheck::{explore, Error, ExchangeMatrix, ExploreLimits, MutationGraph, Seed};

type Outcome = Result<String, String>;

struct Finite {
    name: &'static str,
    quiver: ExchangeMatrix,
    graph: MutationGraph,
    elapsed: Duration,
    expected: (usize, usize),
    roots: usize,
}

fn finite_cases() -> Result<Vec<Finite>, String> {
    let cases = [
        ("A2", linear_a(2), (5, 5), 3),
        ("A3", linear_a(3), (14, 9), 6),
        ("A4", linear_a(4), (42, 14), 10),
        ("D4", d4(), (50, 16), 12),
    ];
    cases
        .into_iter()
        .map(|(name, quiver, expected, roots)| {
            let start = Instant::now();
            let graph = explore(&quiver, &ExploreLimits::default())
                .map_err(|e| format!("{name}: exploration failed: {e}"))?;
            Ok(Finite {
                name,
                quiver,
                graph,
                elapsed: start.elapsed(),
                expected,
                roots,
            })
        })
        .collect()
}

fn closure_and_counts(cases: &[Finite]) -> Outcome {
    let mut parts = Vec::new();
    for c in cases {
        if !c.graph.is_closed() {
            return Err(format!("{} did not close", c.name));
        }
        let got = (c.graph.clusters().len(), c.graph.variables().len());
        if got != c.expected {
            return Err(format!(
                "{}: got {got:?}, expected {:?}",
                c.name, c.expected
            ));
        }
        let roots = positive_roots(&c.quiver).map_err(|e| e.to_string())?.len();
        if roots != c.roots || got.1 != c.quiver.n() + roots {
            return Err(format!(
                "{}: {} variables but n + |roots| = {} + {roots}",
                c.name,
                got.1,
                c.quiver.n()
            ));
        }
        if c.elapsed > Duration::from_secs(30) {
            return Err(format!("{} took {:?}", c.name, c.elapsed));
        }
        parts.push(format!(
            "{} {:?} in {} ms",
            c.name,
            got,
            c.elapsed.as_millis()
        ));
    }
    Ok(parts.join(", "))
}

fn cluster_determines_seed(cases: &[Finite]) -> Outcome {
    for c in cases {
        let r = verify_cluster_determines_seed(&c.graph);
        if !r.passed() || r.counts["largest_group"] != 1 {
            return Err(format!("{}: {:?} {:?}", c.name, r.verdict, r.violations));
        }
    }
    Ok(format!(
        "{} closed graphs, one matrix per cluster",
        cases.len()
    ))
}

fn denominators(cases: &[Finite]) -> Outcome {
    for c in cases {
        let n = c.quiver.n();
        let mut modules = Vec::new();
        let mut initial = BTreeSet::new();
        for u in c.graph.variables() {
            let d = u.denominator_vector().map_err(|e| e.to_string())?.to_i64();
            if is_coordinate_variable(&u) {
                initial.insert(d);
            } else {
                modules.push(d);
            }
        }
        modules.sort();
        let roots = positive_roots(&c.quiver).map_err(|e| e.to_string())?;
        if modules != roots {
            return Err(format!(
                "{}: denominators {modules:?} vs roots {roots:?}",
                c.name
            ));
        }
        let negated_units: BTreeSet<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect())
            .collect();
        if initial != negated_units {
            return Err(format!("{}: initial denominators {initial:?}", c.name));
        }
        let r = verify_denominator_theorem(&c.graph, &c.quiver);
        if !r.passed() {
            return Err(format!("{}: {:?}", c.name, r.violations));
        }
    }
    Ok("non-initial denominators equal the positive roots; initial give -e_i".into())
}

fn positivity(cases: &[Finite], infinite: &[(&str, MutationGraph)]) -> Outcome {
    let graphs = cases
        .iter()
        .map(|c| (c.name, &c.graph))
        .chain(infinite.iter().map(|(n, g)| (*n, g)));
    let mut checked = 0;
    for (name, g) in graphs {
        let r = verify_positivity(g);
        if !r.violations.is_empty() {
            return Err(format!("{name}: {:?}", r.violations));
        }
        for u in g.variables() {
            let rf = u.reduced_form().map_err(|e| e.to_string())?;
            let min = rf.numerator.min_exponents().expect("nonzero numerator");
            if !rf.numerator.positivity_check().map_err(|e| e.to_string())? || !min.is_zero() {
                return Err(format!("{name}: {u}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} variables, zero violations"))
}

type NamedGraphs = Vec<(&'static str, MutationGraph)>;

fn laurent_phenomenon() -> Result<(String, NamedGraphs), String> {
    let mut divisions = 0;
    let mut kept = Vec::new();
    for depth in 1..=8 {
        let g = explore(&kronecker(), &ExploreLimits::with_depth(depth))
            .map_err(|e| format!("Kronecker depth {depth}: {e}"))?;
        divisions += g.divisions();
        if depth == 6 {
            kept.push(("Kronecker", g));
        }
    }
    for depth in 1..=6 {
        let g = explore(&affine_a2(), &ExploreLimits::with_depth(depth))
            .map_err(|e| format!("affine A2 depth {depth}: {e}"))?;
        divisions += g.divisions();
        if depth == 6 {
            kept.push(("affine A2", g));
        }
    }
    Ok((format!("{divisions} exact divisions, zero failures"), kept))
}

fn tilting(cases: &[Finite]) -> Outcome {
    let mut parts = Vec::new();
    for c in cases
        .iter()
        .filter(|c| ["A2", "A3", "D4"].contains(&c.name))
    {
        let r = verify_tilting_image(&c.graph, &c.quiver).map_err(|e| e.to_string())?;
        if !r.passed() || r.counts["rigid_clusters"] != r.counts["clusters"] {
            return Err(format!("{}: {:?}", c.name, r.violations));
        }
        parts.push(format!("{} {} rigid", c.name, r.counts["rigid_clusters"]));
    }
    Ok(parts.join(", "))
}

fn alpha_beta(cases: &[Finite]) -> Outcome {
    let mut parts = Vec::new();
    for c in cases {
        let faces = verify_exchange_uniqueness(&c.graph);
        if !faces.passed() {
            return Err(format!("{}: {:?}", c.name, faces.violations));
        }
        if !["A2", "A3", "D4"].contains(&c.name) {
            continue;
        }
        let r = verify_alpha_beta_inverse(&c.graph, &c.quiver).map_err(|e| e.to_string())?;
        if !r.passed() || r.counts["matched"] != c.roots as u64 {
            return Err(format!("{}: {:?}", c.name, r.violations));
        }
        parts.push(format!("{} {}/{}", c.name, r.counts["matched"], c.roots));
    }
    Ok(format!("{}; every face completes twice", parts.join(", ")))
}

// ---- randomized suites ----

const CASES: u32 = 1000;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn skew_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().unwrap();
                    rows[i][j] = v;
                    rows[j][i] = -v;
                }
            }
            ExchangeMatrix::from_rows(&rows).unwrap()
        })
    })
}

/// Acyclic quivers: arrows go up in a random vertex order.
fn acyclic_quiver(min_n: usize, max_n: usize, bound: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (min_n..=max_n).prop_flat_map(move |n| {
        (
            prop::collection::vec(0..=bound, n * (n - 1) / 2),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(upper, order)| {
                let mut arrows = Vec::new();
                let mut it = upper.into_iter();
                for i in 0..n {
                    for j in (i + 1)..n {
                        let m = it.next().unwrap();
                        if m > 0 {
                            arrows.push((order[i], order[j], m));
                        }
                    }
                }
                ExchangeMatrix::from_arrows(n, &arrows).unwrap()
            })
    })
}

fn laurent(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..=3, nvars), -5i64..=5), 0..5).prop_map(
        move |terms| {
            LaurentPoly::from_terms(
                nvars,
                terms
                    .into_iter()
                    .map(|(e, c)| (ExponentVector(e), c.into())),
            )
            .unwrap()
        },
    )
}

fn run_suite<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<String, String> {
    runner()
        .run(&strategy, test)
        .map(|_| format!("{name} x{CASES}"))
        .map_err(|e| format!("{name}: {e}"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// Number of paths from `i` to `j`, counting arrow multiplicities.
fn path_count(q: &ExchangeMatrix, i: usize, j: usize) -> i64 {
    let mut total = i64::from(i == j);
    for k in 0..q.n() {
        let m = q.get(i, k);
        if m > 0 {
            total += m * path_count(q, k, j);
        }
    }
    total
}

fn property_suites() -> Outcome {
    let mut done = Vec::new();

    done.push(run_suite(
        "matrix involution",
        (skew_matrix(6, 3), any::<prop::sample::Index>()),
        |(b, k)| {
            let k = k.index(b.n());
            let back = b
                .mutate(k)
                .and_then(|m| m.mutate(k))
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(back == b, || format!("{b} at {k}"))
        },
    )?);

    done.push(run_suite(
        "seed involution",
        (
            acyclic_quiver(1, 4, 2),
            prop::collection::vec(any::<prop::sample::Index>(), 0..4),
            any::<prop::sample::Index>(),
        ),
        |(b, path, k)| {
            let fail = |e: Error| TestCaseError::fail(e.to_string());
            let mut s = Seed::initial(&b).map_err(fail)?;
            for p in &path {
                s = s.mutate(p.index(b.n())).map_err(fail)?;
            }
            let k = k.index(b.n());
            let back = s.mutate(k).and_then(|t| t.mutate(k)).map_err(fail)?;
            check(back == s, || format!("{b} along {path:?} at {k}"))
        },
    )?);

    done.push(run_suite(
        "ring laws",
        (laurent(3), laurent(3), laurent(3)),
        |(a, b, c)| {
            let zero = LaurentPoly::zero(3);
            let one = LaurentPoly::one(3);
            check(&a + &b == &b + &a, || "addition commutes".into())?;
            check(&a * &b == &b * &a, || "multiplication commutes".into())?;
            check(&(&a + &b) + &c == &a + &(&b + &c), || {
                "addition associates".into()
            })?;
            check(&(&a * &b) * &c == &a * &(&b * &c), || {
                "multiplication associates".into()
            })?;
            check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
                "distributivity".into()
            })?;
            check(&a + &zero == a && &a * &one == a, || "identities".into())?;
            let copy = a.clone();
            check(&a - &copy == zero && (&a + &(-&a)).is_zero(), || {
                "inverses".into()
            })
        },
    )?);

    done.push(run_suite(
        "exact_div round trip",
        (laurent(3), laurent(3)),
        |(a, b)| {
            if b.is_zero() {
                return check(matches!(a.exact_div(&b), Err(Error::ZeroDivisor)), || {
                    "zero divisor accepted".into()
                });
            }
            let q = (&a * &b)
                .exact_div(&b)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(q == a, || format!("({a})*({b}) / ({b}) = {q}"))
        },
    )?);

    done.push(run_suite(
        "canonical form invariance",
        skew_matrix(6, 2).prop_flat_map(|b| {
            let n = b.n();
            (Just(b), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        }),
        |(b, perm)| {
            let fail = |e: Error| TestCaseError::fail(e.to_string());
            let (c1, _) = b.canonical_form().map_err(fail)?;
            let (c2, p2) = b.permuted(&perm).canonical_form().map_err(fail)?;
            check(c1 == c2, || format!("{b} under {perm:?}"))?;
            check(b.permuted(&perm).permuted(&p2) == c2, || {
                "returned permutation".into()
            })
        },
    )?);

    done.push(run_suite(
        "chi_thin = chi_interpolated",
        acyclic_quiver(1, 4, 2).prop_flat_map(|q| {
            let n = q.n();
            let arrows = q.arrows().len();
            (
                Just(q),
                prop::collection::vec(0i64..=1, n),
                prop::collection::vec(0i64..=4, arrows),
                prop::collection::vec(0i64..=1, n),
            )
        }),
        |(q, dims, scalars, e)| {
            let dims_u: Vec<usize> = dims.iter().map(|&d| d as usize).collect();
            let maps = q
                .arrows()
                .iter()
                .zip(&scalars)
                .map(|(&(i, j), &s)| {
                    let mut m = QMatrix::zeros(dims_u[j], dims_u[i]);
                    if dims_u[i] == 1 && dims_u[j] == 1 {
                        m = QMatrix::from_i64(1, 1, &[s]);
                    }
                    m
                })
                .collect();
            let m =
                QuiverRep::new(&q, dims_u, maps).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let fail = |e: Error| TestCaseError::fail(e.to_string());
            let a = chi_thin(&m, &e).map_err(fail)?;
            let b = chi_interpolated(&m, &e).map_err(fail)?;
            check(a == b, || {
                format!("{q} dims {dims:?} maps {scalars:?} e {e:?}: {a} vs {b}")
            })
        },
    )?);

    done.push(run_suite(
        "Coxeter sends projectives to shifted injectives",
        acyclic_quiver(1, 5, 2),
        |q| {
            let n = q.n();
            let cox = CoxeterTransform::new(&q).map_err(|e| TestCaseError::fail(e.to_string()))?;
            for i in 0..n {
                let p: Vec<i64> = (0..n).map(|j| path_count(&q, i, j)).collect();
                let inj: Vec<i64> = (0..n).map(|j| -path_count(&q, j, i)).collect();
                check(cox.projective_dim(i) == p, || format!("{q}: P{i}"))?;
                check(cox.apply(&p, Direction::Forward) == inj, || {
                    format!("{q}: Phi P{i}")
                })?;
            }
            Ok(())
        },
    )?);

    Ok(done.join(", "))
}

fn kronecker_ladder() -> Outcome {
    let start = Instant::now();
    let q = kronecker();
    let g = explore(&q, &ExploreLimits::with_depth(8)).map_err(|e| e.to_string())?;
    // preprojectives and preinjectives by iterating the Coxeter transformation
    let cox = CoxeterTransform::new(&q).map_err(|e| e.to_string())?;
    let mut ladder = BTreeSet::new();
    for i in 0..2 {
        let mut p = cox.projective_dim(i);
        let mut inj = cox.injective_dim(i);
        for _ in 0..12 {
            ladder.insert(p.clone());
            ladder.insert(inj.clone());
            p = cox.apply(&p, Direction::Backward);
            inj = cox.apply(&inj, Direction::Forward);
        }
    }
    let mut seen = 0;
    let mut highest = 0;
    for u in g.variables() {
        if is_coordinate_variable(&u) {
            continue;
        }
        let d = u.denominator_vector().map_err(|e| e.to_string())?.to_i64();
        let rung = (d[0] - d[1]).abs() == 1 && d[0] >= 0 && d[1] >= 0;
        if tits_form(&q, &d) != 1 || !rung || !ladder.contains(&d) {
            return Err(format!("{u} has denominator vector {d:?}"));
        }
        highest = highest.max(d[0].min(d[1]));
        seen += 1;
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{seen} variables on the ladder up to ({},{}) in {} ms",
        highest + 1,
        highest,
        elapsed.as_millis()
    ))
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let cases = finite_cases();
    let (laurent, infinite) = match laurent_phenomenon() {
        Ok((msg, graphs)) => (Ok(msg), graphs),
        Err(e) => (Err(e), Vec::new()),
    };
    match &cases {
        Ok(cases) => {
            results.push(("finite-type closure and counts", closure_and_counts(cases)));
            results.push((
                "seeds are determined by clusters",
                cluster_determines_seed(cases),
            ));
            results.push(("denominators are positive roots", denominators(cases)));
            let pos = if infinite.len() == 2 {
                positivity(cases, &infinite)
            } else {
                Err("infinite-type graphs unavailable".into())
            };
            results.push(("positive numerators are reduced", pos));
        }
        Err(e) => {
            for name in [
                "finite-type closure and counts",
                "seeds are determined by clusters",
                "denominators are positive roots",
                "positive numerators are reduced",
            ] {
                results.push((name, Err(e.clone())));
            }
        }
    }
    results.push(("Laurent phenomenon", laurent));
    match &cases {
        Ok(cases) => {
            results.push(("clusters map to tilting objects", tilting(cases)));
            results.push(("alpha and beta are inverse", alpha_beta(cases)));
        }
        Err(e) => {
            results.push(("clusters map to tilting objects", Err(e.clone())));
            results.push(("alpha and beta are inverse", Err(e.clone())));
        }
    }
    results.push(("randomized property suites", property_suites()));
    results.push(("Kronecker ladder", kronecker_ladder()));

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
