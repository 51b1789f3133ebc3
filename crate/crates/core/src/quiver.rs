//! Skew-symmetric exchange matrices.
//!
//! `b[i][j] > 0` means `b[i][j]` arrows `i -> j`.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`ExchangeMatrix::canonical_form`].
pub const CANONICAL_FORM_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<i64>,
}

/// On-disk quiver description: `{"n": 2, "matrix": [[0,1],[-1,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub n: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl ExchangeMatrix {
    /// Validates skew-symmetry (which also forces a zero diagonal).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "matrix[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = ExchangeMatrix { n, entries };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.n {
            if self.get(i, i) != 0 {
                return Err(Error::InvalidMatrix(format!(
                    "matrix[{i}][{i}] = {} but the diagonal must be zero",
                    self.get(i, i)
                )));
            }
            for j in (i + 1)..self.n {
                if self.get(i, j) != -self.get(j, i) {
                    return Err(Error::InvalidMatrix(format!(
                        "not skew-symmetric: matrix[{i}][{j}] = {} but matrix[{j}][{i}] = {}",
                        self.get(i, j),
                        self.get(j, i)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_file_schema(file: &QuiverFile) -> Result<Self> {
        if file.matrix.len() != file.n {
            return Err(Error::InvalidMatrix(format!(
                "n = {} but matrix has {} rows",
                file.n,
                file.matrix.len()
            )));
        }
        Self::from_rows(&file.matrix)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuiverFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_file_schema(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_file_schema(&self) -> QuiverFile {
        QuiverFile {
            n: self.n,
            matrix: self.rows(),
        }
    }

    /// `(i, j, m)` adds `m` arrows `i -> j`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        let mut entries = vec![0; n * n];
        for &(i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(Error::VertexOutOfRange { index: i.max(j), n });
            }
            if i == j {
                return Err(Error::InvalidMatrix(format!("loop at vertex {i}")));
            }
            entries[i * n + j] += m;
            entries[j * n + i] -= m;
        }
        Ok(ExchangeMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.validate().is_ok()
    }

    /// Arrows `(i, j)` listed once per unit of multiplicity, ordered by `(i, j)`.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for _ in 0..self.get(i, j).max(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_sink(&self, k: usize) -> bool {
        (0..self.n).all(|j| self.get(k, j) <= 0)
    }

    pub fn is_source(&self, k: usize) -> bool {
        (0..self.n).all(|j| self.get(k, j) >= 0)
    }

    fn check_vertex(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::VertexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Matrix mutation at `k`.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let b = self.get(i, j);
                entries[i * n + j] = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    b + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
            }
        }
        let out = ExchangeMatrix { n, entries };
        if !out.is_skew_symmetric() {
            return Err(Error::Invariant(format!(
                "mutation at {k} broke skew-symmetry"
            )));
        }
        Ok(out)
    }

    /// `result[p][q] = self[perm[p]][perm[q]]`: position `p` of the result is
    /// vertex `perm[p]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> ExchangeMatrix {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut entries = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                entries[p * n + q] = self.get(perm[p], perm[q]);
            }
        }
        ExchangeMatrix { n, entries }
    }

    /// Kahn's algorithm on the digraph `i -> j` iff `b[i][j] > 0`.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.get(i, j) > 0).count())
            .collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in 0..n {
                if self.get(v, w) > 0 {
                    indegree[w] -= 1;
                    if indegree[w] == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Lexicographically minimal relabeling, with one permutation reaching it.
    ///
    /// Matrices are compared through the strict upper triangle flattened
    /// column by column: `b[0][1], b[0][2], b[1][2], b[0][3], ...`. Fixing the
    /// first `t` positions fixes a prefix of that key, which lets the
    /// branch-and-bound search prune.
    pub fn canonical_form(&self) -> Result<(ExchangeMatrix, Vec<usize>)> {
        if self.n > CANONICAL_FORM_MAX_N {
            return Err(Error::Resource(format!(
                "canonical form is brute force and limited to {CANONICAL_FORM_MAX_N} vertices, got {}",
                self.n
            )));
        }
        let mut search = CanonSearch {
            m: self,
            best_key: None,
            best_perm: Vec::new(),
            perm: Vec::with_capacity(self.n),
            key: Vec::with_capacity(self.n * self.n / 2),
            used: vec![false; self.n],
        };
        search.run();
        let perm = search.best_perm;
        Ok((self.permuted(&perm), perm))
    }

    /// Flattened key used by [`Self::canonical_form`].
    pub fn canonical_key(&self) -> Vec<i64> {
        let mut key = Vec::new();
        for t in 0..self.n {
            for s in 0..t {
                key.push(self.get(s, t));
            }
        }
        key
    }

    pub fn classify_dynkin(&self) -> Option<DynkinType> {
        let n = self.n;
        if n == 0 {
            return None;
        }
        let mut adj = vec![Vec::new(); n];
        let mut edges = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                match self.get(i, j).abs() {
                    0 => {}
                    1 => {
                        adj[i].push(j);
                        adj[j].push(i);
                        edges += 1;
                    }
                    _ => return None,
                }
            }
        }
        if edges != n - 1 || !connected(&adj) {
            return None;
        }
        let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
        match branch.as_slice() {
            [] => Some(DynkinType::A(n)),
            [center] if adj[*center].len() == 3 => {
                let mut arms: Vec<usize> = adj[*center]
                    .iter()
                    .map(|&start| arm_length(&adj, *center, start))
                    .collect::<Option<Vec<_>>>()?;
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => Some(DynkinType::D(n)),
                    [1, 2, 2] => Some(DynkinType::E(6)),
                    [1, 2, 3] => Some(DynkinType::E(7)),
                    [1, 2, 4] => Some(DynkinType::E(8)),
                    _ => None,
                }
            }
            _ => None,
        }
    }
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Length of the path hanging off `center` through `start`; `None` if it branches.
fn arm_length(adj: &[Vec<usize>], center: usize, start: usize) -> Option<usize> {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [] => return Some(len),
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return None,
        }
    }
}

struct CanonSearch<'a> {
    m: &'a ExchangeMatrix,
    best_key: Option<Vec<i64>>,
    best_perm: Vec<usize>,
    perm: Vec<usize>,
    key: Vec<i64>,
    used: Vec<bool>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let n = self.m.n;
        if self.perm.len() == n {
            if self.best_key.as_ref().is_none_or(|b| self.key < *b) {
                self.best_key = Some(self.key.clone());
                self.best_perm = self.perm.clone();
            }
            return;
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let mark = self.key.len();
            for &s in &self.perm {
                self.key.push(self.m.get(s, v));
            }
            let keep = match &self.best_key {
                Some(best) => self.key.as_slice() <= &best[..self.key.len()],
                None => true,
            };
            if keep {
                self.used[v] = true;
                self.perm.push(v);
                self.run();
                self.perm.pop();
                self.used[v] = false;
            }
            self.key.truncate(mark);
        }
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.rows()).unwrap())
    }
}

/// Standard small test quivers.
pub mod examples {
    use super::ExchangeMatrix;

    /// `0 -> 1 -> ... -> n-1`.
    pub fn linear_a(n: usize) -> ExchangeMatrix {
        let arrows: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        ExchangeMatrix::from_arrows(n, &arrows).unwrap()
    }

    /// Star with three leaves pointing into the center vertex 3.
    pub fn d4() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(4, &[(0, 3, 1), (1, 3, 1), (2, 3, 1)]).unwrap()
    }

    /// `D_n`: leaves 0 and 1 both point to 2, then the tail `2 -> 3 -> ... -> n-1`.
    pub fn d(n: usize) -> ExchangeMatrix {
        assert!(n >= 4);
        let mut arrows = vec![(0, 2, 1), (1, 2, 1)];
        arrows.extend((3..n).map(|i| (i - 1, i, 1)));
        ExchangeMatrix::from_arrows(n, &arrows).unwrap()
    }

    pub fn kronecker() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(2, &[(0, 1, 2)]).unwrap()
    }

    /// Acyclic orientation of the triangle: `0 -> 1 -> 2` and `0 -> 2`.
    pub fn affine_a2() -> ExchangeMatrix {
        ExchangeMatrix::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn m(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mutation_examples() {
        let a2 = m(&[&[0, 1], &[-1, 0]]);
        assert_eq!(a2.mutate(0).unwrap(), m(&[&[0, -1], &[1, 0]]));
        assert_eq!(a2.mutate(0).unwrap().mutate(0).unwrap(), a2);

        let a3 = linear_a(3);
        let cyc = a3.mutate(1).unwrap();
        assert_eq!(cyc, m(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]));
        assert!(!cyc.is_acyclic());
        assert!(a2.mutate(5).is_err());
    }

    #[test]
    fn acyclicity() {
        assert!(linear_a(2).is_acyclic());
        assert!(kronecker().is_acyclic());
        assert!(affine_a2().is_acyclic());
    }

    #[test]
    fn loader_validates() {
        assert_eq!(
            ExchangeMatrix::from_json(r#"{"n":2,"matrix":[[0,1],[-1,0]]}"#).unwrap(),
            linear_a(2)
        );
        assert_eq!(
            ExchangeMatrix::from_json(r#"{"n":2,"matrix":[[0,2],[-2,0]]}"#).unwrap(),
            kronecker()
        );
        assert!(ExchangeMatrix::from_json(r#"{"n":2,"matrix":[[0,1],[1,0]]}"#).is_err());
        assert!(ExchangeMatrix::from_json(r#"{"n":2,"matrix":[[1,1],[-1,0]]}"#).is_err());
        assert!(ExchangeMatrix::from_json(r#"{"n":3,"matrix":[[0,1],[-1,0]]}"#).is_err());
        assert!(ExchangeMatrix::from_json(r#"{"n":2,"matrix":[[0,1],[-1]]}"#).is_err());
        assert!(ExchangeMatrix::from_json(r#"{"n":2}"#).is_err());
    }

    #[test]
    fn canonical_form_two_vertices() {
        let a = m(&[&[0, -1], &[1, 0]]);
        let (c, perm) = a.canonical_form().unwrap();
        assert_eq!(c, a);
        assert_eq!(perm, vec![0, 1]);
        let (c2, perm2) = linear_a(2).canonical_form().unwrap();
        assert_eq!(c2, a);
        assert_eq!(perm2, vec![1, 0]);
        assert_eq!(c.canonical_form().unwrap().0, c);
    }

    #[test]
    fn canonical_form_size_guard() {
        let big = linear_a(11);
        assert!(matches!(big.canonical_form(), Err(Error::Resource(_))));
        assert!(linear_a(10).canonical_form().is_ok());
    }

    #[test]
    fn dynkin_classification() {
        assert_eq!(linear_a(2).classify_dynkin(), Some(DynkinType::A(2)));
        assert_eq!(kronecker().classify_dynkin(), None);
        assert_eq!(d4().classify_dynkin(), Some(DynkinType::D(4)));
        assert_eq!(d(6).classify_dynkin(), Some(DynkinType::D(6)));
        assert_eq!(affine_a2().classify_dynkin(), None);
        let e6 = ExchangeMatrix::from_arrows(
            6,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (2, 5, 1)],
        )
        .unwrap();
        assert_eq!(e6.classify_dynkin(), Some(DynkinType::E(6)));
        let e8 = ExchangeMatrix::from_arrows(
            8,
            &[
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (4, 5, 1),
                (5, 6, 1),
                (2, 7, 1),
            ],
        )
        .unwrap();
        assert_eq!(e8.classify_dynkin(), Some(DynkinType::E(8)));
        // two components
        let split = ExchangeMatrix::from_arrows(3, &[(0, 1, 1)]).unwrap();
        assert_eq!(split.classify_dynkin(), None);
    }

    #[test]
    fn arrows_with_multiplicity() {
        assert_eq!(kronecker().arrows(), vec![(0, 1), (0, 1)]);
        assert!(d4().is_sink(3));
        assert!(d4().is_source(0));
    }
}
