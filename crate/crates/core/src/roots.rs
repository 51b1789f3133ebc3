//! Numerical representation theory of the path algebra of an acyclic quiver:
//! Euler form, Coxeter transformation, positive roots, and the denominator
//! map from cluster variables to exceptional objects.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::ExchangeMatrix;
use crate::report::VerificationReport;
use crate::seed::{is_coordinate_variable, MutationGraph};

/// Largest coordinate scanned by [`positive_roots`]; the highest root of E8
/// has coefficient 6.
pub const ROOT_SCAN_BOUND: i64 = 6;

/// `<a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j`.
pub fn euler_form(q: &ExchangeMatrix, a: &[i64], b: &[i64]) -> i64 {
    let n = q.n();
    assert!(a.len() == n && b.len() == n, "dimension vector length");
    let mut total: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    for i in 0..n {
        for j in 0..n {
            let arrows = q.get(i, j);
            if arrows > 0 {
                total -= arrows * a[i] * b[j];
            }
        }
    }
    total
}

pub fn tits_form(q: &ExchangeMatrix, d: &[i64]) -> i64 {
    euler_form(q, d, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `tau`: dimension vectors move towards the projectives.
    Forward,
    /// `tau^-1`.
    Backward,
}

/// The Coxeter matrix `Phi` with `Phi * dim P_i = -dim I_i`, and its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterTransform {
    n: usize,
    /// `paths[i][j]` = number of paths `i -> j` (length zero included).
    paths: Vec<Vec<i64>>,
    phi: Vec<Vec<i64>>,
    phi_inv: Vec<Vec<i64>>,
}

impl CoxeterTransform {
    pub fn new(q: &ExchangeMatrix) -> Result<Self> {
        let n = q.n();
        let order = q.topological_order().ok_or_else(|| {
            Error::Precondition("the Coxeter transformation needs an acyclic quiver".into())
        })?;
        let mut paths = vec![vec![0i64; n]; n];
        for &i in order.iter().rev() {
            paths[i][i] = 1;
            for j in 0..n {
                let arrows = q.get(i, j);
                if arrows > 0 {
                    for t in 0..n {
                        paths[i][t] += arrows * paths[j][t];
                    }
                }
            }
        }
        // paths = (I - A)^{-1}, so (paths^T)^{-1} = I - A^T
        let adj = |i: usize, j: usize| q.get(i, j).max(0);
        let ident = |i: usize, j: usize| i64::from(i == j);
        let inv_paths_t: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ident(i, j) - adj(j, i)).collect())
            .collect();
        let inv_paths: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ident(i, j) - adj(i, j)).collect())
            .collect();
        let transpose = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
        };
        let phi = negate(&matmul(&paths, &inv_paths_t));
        let phi_inv = negate(&matmul(&transpose(&paths), &inv_paths));

        let cox = CoxeterTransform {
            n,
            paths,
            phi,
            phi_inv,
        };
        if matmul(&cox.phi, &cox.phi_inv) != identity(n) {
            return Err(Error::Invariant("Phi * Phi^-1 is not the identity".into()));
        }
        for i in 0..n {
            let image = cox.apply(&cox.projective_dim(i), Direction::Forward);
            let target: Vec<i64> = cox.injective_dim(i).iter().map(|x| -x).collect();
            if image != target {
                return Err(Error::Invariant(format!(
                    "Phi * dim P_{i} = {image:?}, expected -dim I_{i} = {target:?}"
                )));
            }
        }
        Ok(cox)
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.phi
    }

    pub fn inverse_matrix(&self) -> &[Vec<i64>] {
        &self.phi_inv
    }

    /// `dim P_i(j)` = number of paths `i -> j`.
    pub fn projective_dim(&self, i: usize) -> Vec<i64> {
        self.paths[i].clone()
    }

    /// `dim I_i(j)` = number of paths `j -> i`.
    pub fn injective_dim(&self, i: usize) -> Vec<i64> {
        (0..self.n).map(|j| self.paths[j][i]).collect()
    }

    /// `Phi d` or `Phi^-1 d`. A result that is not nonnegative means `d` was
    /// projective (forward) or injective (backward).
    pub fn apply(&self, d: &[i64], direction: Direction) -> Vec<i64> {
        let m = match direction {
            Direction::Forward => &self.phi,
            Direction::Backward => &self.phi_inv,
        };
        m.iter()
            .map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum())
            .collect()
    }
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn negate(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Positive roots of a Dynkin quiver: nonzero `d >= 0` with `q(d) = 1`,
/// found by scanning `{0..6}^n`. Sorted lexicographically.
pub fn positive_roots(q: &ExchangeMatrix) -> Result<Vec<Vec<i64>>> {
    if q.classify_dynkin().is_none() {
        return Err(Error::Domain(format!(
            "positive roots are only enumerated for Dynkin quivers, got {q}"
        )));
    }
    let n = q.n();
    let mut out = Vec::new();
    let mut d = vec![0i64; n];
    loop {
        // odometer, last coordinate fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if d[pos] < ROOT_SCAN_BOUND {
                d[pos] += 1;
                break;
            }
            d[pos] = 0;
        }
        if tits_form(q, &d) == 1 {
            out.push(d.clone());
        }
    }
}

/// Image of a cluster variable under the denominator map.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectLabel {
    Module(Vec<i64>),
    ShiftedProjective(usize),
}

impl fmt::Display for ObjectLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectLabel::Module(d) => write!(f, "M{d:?}"),
            ObjectLabel::ShiftedProjective(i) => write!(f, "P{}[1]", i + 1),
        }
    }
}

/// A denominator vector that is neither nonnegative nor `-e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaAnomaly {
    pub variable: String,
    pub denom_vector: Vec<i64>,
}

impl fmt::Display for AlphaAnomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable {} has denominator vector {:?}",
            self.variable, self.denom_vector
        )
    }
}

pub fn alpha_map(u: &LaurentPoly) -> Result<ObjectLabel, AlphaAnomaly> {
    let anomaly = |d: Vec<i64>| AlphaAnomaly {
        variable: u.to_string(),
        denom_vector: d,
    };
    let d = match u.denominator_vector() {
        Ok(d) => d.to_i64(),
        Err(_) => return Err(anomaly(Vec::new())),
    };
    if d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0) {
        return Ok(ObjectLabel::Module(d));
    }
    let negatives: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0).collect();
    if let [i] = negatives.as_slice() {
        if d[*i] == -1 {
            return Ok(ObjectLabel::ShiftedProjective(*i));
        }
    }
    Err(anomaly(d))
}

/// Denominators are dimension vectors of exceptional modules, and on closed
/// Dynkin graphs they are exactly the almost positive roots.
pub fn verify_denominator_theorem(graph: &MutationGraph, q: &ExchangeMatrix) -> VerificationReport {
    let mut report = VerificationReport::new("denominators");
    let variables = graph.variables();
    let mut by_label: BTreeMap<ObjectLabel, Vec<&LaurentPoly>> = BTreeMap::new();

    for u in &variables {
        let label = match alpha_map(u) {
            Ok(label) => label,
            Err(a) => {
                report.violation(format!("anomaly: {a}"));
                continue;
            }
        };
        report
            .details
            .push(json!({ "variable": u.to_string(), "label": label }));
        let initial = is_coordinate_variable(u);
        match &label {
            ObjectLabel::ShiftedProjective(i) if !initial => report.violation(format!(
                "non-initial variable {u} maps to the shifted projective P{}[1]",
                i + 1
            )),
            ObjectLabel::Module(d) if initial => {
                report.violation(format!("initial variable {u} maps to module {d:?}"))
            }
            ObjectLabel::Module(d) if tits_form(q, d) != 1 => report.violation(format!(
                "{u}: denominator vector {d:?} has Tits form {} != 1",
                tits_form(q, d)
            )),
            _ => {}
        }
        by_label.entry(label).or_default().push(u);
    }

    for (label, vars) in &by_label {
        if vars.len() > 1 {
            let listed: Vec<String> = vars.iter().map(|u| u.to_string()).collect();
            report.violation(format!(
                "label {label} is hit by {} variables: {}",
                vars.len(),
                listed.join(" | ")
            ));
        }
    }

    let modules: BTreeSet<Vec<i64>> = by_label
        .keys()
        .filter_map(|l| match l {
            ObjectLabel::Module(d) => Some(d.clone()),
            _ => None,
        })
        .collect();
    let shifted: BTreeSet<usize> = by_label
        .keys()
        .filter_map(|l| match l {
            ObjectLabel::ShiftedProjective(i) => Some(*i),
            _ => None,
        })
        .collect();

    report
        .count("variables", variables.len() as u64)
        .count("module_labels", modules.len() as u64)
        .count("shifted_projective_labels", shifted.len() as u64);

    if let (Some(_), true) = (q.classify_dynkin(), graph.is_closed()) {
        let roots: BTreeSet<Vec<i64>> = positive_roots(q)
            .expect("Dynkin quivers have positive roots")
            .into_iter()
            .collect();
        report.count("positive_roots", roots.len() as u64);
        for missing in roots.difference(&modules) {
            report.violation(format!(
                "positive root {missing:?} is not a denominator vector"
            ));
        }
        for extra in modules.difference(&roots) {
            report.violation(format!(
                "denominator vector {extra:?} is not a positive root"
            ));
        }
        if shifted != (0..q.n()).collect() {
            report.violation(format!(
                "shifted projective labels {shifted:?} are not exactly the {} initial ones",
                q.n()
            ));
        }
    }
    report.finish(graph.is_truncated())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::*;
    use crate::report::Verdict;
    use crate::seed::{explore, ExploreLimits};

    #[test]
    fn euler_form_examples() {
        assert_eq!(euler_form(&linear_a(2), &[1, 0], &[0, 1]), -1);
        assert_eq!(euler_form(&linear_a(2), &[0, 1], &[1, 0]), 0);
        assert_eq!(tits_form(&kronecker(), &[2, 1]), 1);
        let empty = ExchangeMatrix::from_arrows(3, &[]).unwrap();
        assert_eq!(euler_form(&empty, &[1, 2, 3], &[4, 5, 6]), 32);
        for b in [linear_a(4), d4(), kronecker(), affine_a2()] {
            for i in 0..b.n() {
                let mut e = vec![0; b.n()];
                e[i] = 1;
                assert_eq!(tits_form(&b, &e), 1);
            }
        }
    }

    #[test]
    fn coxeter_on_a2() {
        let cox = CoxeterTransform::new(&linear_a(2)).unwrap();
        assert_eq!(cox.matrix(), &[vec![0, -1], vec![1, -1]]);
        // tau S1 = S2 for 1 -> 2
        assert_eq!(cox.apply(&[1, 0], Direction::Forward), vec![0, 1]);
        assert_eq!(cox.apply(&[0, 1], Direction::Backward), vec![1, 0]);
        assert_eq!(cox.apply(&[1, 0], Direction::Backward), vec![-1, -1]);
    }

    #[test]
    fn kronecker_preprojective_orbit() {
        let q = kronecker();
        let cox = CoxeterTransform::new(&q).unwrap();
        assert_eq!(cox.projective_dim(0), vec![1, 2]);
        let mut d = cox.projective_dim(0);
        let mut orbit = vec![d.clone()];
        for _ in 0..4 {
            d = cox.apply(&d, Direction::Backward);
            assert_eq!(tits_form(&q, &d), 1);
            orbit.push(d.clone());
        }
        assert_eq!(orbit[1], vec![3, 4]);
        assert_eq!(orbit[4], vec![9, 10]);
    }

    #[test]
    fn cyclic_quiver_has_no_coxeter_matrix() {
        let cyc = linear_a(3).mutate(1).unwrap();
        assert!(CoxeterTransform::new(&cyc).is_err());
    }

    #[test]
    fn root_counts() {
        assert_eq!(
            positive_roots(&linear_a(2)).unwrap(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(positive_roots(&linear_a(3)).unwrap().len(), 6);
        assert_eq!(positive_roots(&linear_a(4)).unwrap().len(), 10);
        assert_eq!(positive_roots(&d4()).unwrap().len(), 12);
        assert_eq!(positive_roots(&d(5)).unwrap().len(), 20);
        assert!(positive_roots(&kronecker()).is_err());
    }

    #[test]
    fn alpha_examples() {
        let p = |s: &str| LaurentPoly::parse(s, 2).unwrap();
        assert_eq!(alpha_map(&p("x1")), Ok(ObjectLabel::ShiftedProjective(0)));
        assert_eq!(
            alpha_map(&p("x1^-1 + x1^-1*x2")),
            Ok(ObjectLabel::Module(vec![1, 0]))
        );
        assert_eq!(
            alpha_map(&p("x1^-1*x2^-1 + x1^-1 + x2^-1")),
            Ok(ObjectLabel::Module(vec![1, 1]))
        );
        assert!(alpha_map(&p("1 + x1")).is_err());
        assert!(alpha_map(&p("x1^-1*x2")).is_err());
        assert!(alpha_map(&p("x1^2")).is_err());
    }

    #[test]
    fn label_json_shape() {
        assert_eq!(
            serde_json::to_string(&ObjectLabel::Module(vec![1, 0])).unwrap(),
            r#"{"module":[1,0]}"#
        );
        assert_eq!(
            serde_json::to_string(&ObjectLabel::ShiftedProjective(1)).unwrap(),
            r#"{"shifted_projective":1}"#
        );
    }

    #[test]
    fn a2_denominators() {
        let q = linear_a(2);
        let g = explore(&q, &ExploreLimits::default()).unwrap();
        let r = verify_denominator_theorem(&g, &q);
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.violations);
        assert_eq!(r.counts["module_labels"], 3);
        assert_eq!(r.counts["shifted_projective_labels"], 2);
    }
}
