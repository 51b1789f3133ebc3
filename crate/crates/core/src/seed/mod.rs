//! Seeds and seed mutation.

mod cache;
mod checks;
mod graph;

pub use cache::{read_cache, read_cache_from, write_cache, write_cache_to, CacheLine};
pub use checks::{
    find_polynomial_variables, verify_cluster_determines_seed, verify_cluster_determines_seed_in,
    verify_exchange_uniqueness, verify_involution, verify_positivity,
};
pub use graph::{explore, ExploreLimits, GraphNode, MutationGraph, Truncation};

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::quiver::ExchangeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

/// A seed relabeled so its cluster is sorted; equal for seeds that differ by
/// a simultaneous relabeling of variables and vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSeed {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

impl Seed {
    pub fn new(cluster: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self> {
        if cluster.len() != matrix.n() {
            return Err(Error::DimensionMismatch {
                left: matrix.n(),
                right: cluster.len(),
            });
        }
        for u in &cluster {
            if u.nvars() != matrix.n() {
                return Err(Error::DimensionMismatch {
                    left: matrix.n(),
                    right: u.nvars(),
                });
            }
            if u.is_zero() {
                return Err(Error::Domain("cluster variables must be nonzero".into()));
            }
        }
        Ok(Seed { cluster, matrix })
    }

    /// `(x_1, ..., x_n)` together with an acyclic `b`.
    pub fn initial(b: &ExchangeMatrix) -> Result<Self> {
        if !b.is_acyclic() {
            return Err(Error::Precondition(format!(
                "initial quiver {b} has an oriented cycle; only acyclic cluster algebras are supported"
            )));
        }
        let n = b.n();
        Ok(Seed {
            cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect(),
            matrix: b.clone(),
        })
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Right-hand side of the exchange relation at `k`: the two monomials in
    /// the cluster read off column `k`.
    pub fn exchange_binomial(&self, k: usize) -> Result<LaurentPoly> {
        self.exchange_binomial_bounded(k, usize::MAX)
    }

    /// As [`Seed::exchange_binomial`], failing with a resource error once an
    /// intermediate product would exceed `max_terms` terms.
    pub fn exchange_binomial_bounded(&self, k: usize, max_terms: usize) -> Result<LaurentPoly> {
        let n = self.n();
        if k >= n {
            return Err(Error::VertexOutOfRange { index: k, n });
        }
        let mut plus = LaurentPoly::one(n);
        let mut minus = LaurentPoly::one(n);
        for i in 0..n {
            let b = self.matrix.get(i, k);
            let power = self.cluster[i].pow_bounded(b.unsigned_abs() as u32, max_terms)?;
            if b > 0 {
                plus = plus.mul_bounded(&power, max_terms)?;
            } else if b < 0 {
                minus = minus.mul_bounded(&power, max_terms)?;
            }
        }
        Ok(&plus + &minus)
    }

    /// Seed mutation. The new variable is an exact quotient; failure of that
    /// division is returned as an error and must be treated as fatal.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        self.mutate_bounded(k, usize::MAX)
    }

    pub fn mutate_bounded(&self, k: usize, max_terms: usize) -> Result<Seed> {
        let binomial = self.exchange_binomial_bounded(k, max_terms)?;
        let fresh = binomial.exact_div(&self.cluster[k])?;
        if fresh.len() > max_terms {
            return Err(Error::Resource(format!(
                "mutation at {k} gives a variable with {} terms (limit {max_terms})",
                fresh.len()
            )));
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        Ok(Seed {
            cluster,
            matrix: self.matrix.mutate(k)?,
        })
    }

    pub fn canonical(&self) -> CanonicalSeed {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        CanonicalSeed {
            cluster: order.iter().map(|&i| self.cluster[i].clone()).collect(),
            matrix: self.matrix.permuted(&order),
        }
    }
}

impl CanonicalSeed {
    /// Accepts an already-sorted cluster; used when reloading caches.
    pub fn from_parts(cluster: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self> {
        let seed = Seed::new(cluster, matrix)?;
        if seed.cluster.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "canonical cluster must be strictly increasing".into(),
            ));
        }
        Ok(CanonicalSeed {
            cluster: seed.cluster,
            matrix: seed.matrix,
        })
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn to_seed(&self) -> Seed {
        Seed {
            cluster: self.cluster.clone(),
            matrix: self.matrix.clone(),
        }
    }

    /// True for the seed whose cluster is the coordinate variables.
    pub fn is_initial(&self) -> bool {
        self.cluster.iter().all(is_coordinate_variable)
    }
}

/// True iff `u` is one of `x_1, ..., x_n`.
pub fn is_coordinate_variable(u: &LaurentPoly) -> bool {
    match u.terms() {
        [(e, c)] => {
            c == &num_bigint::BigInt::from(1)
                && e.0.iter().filter(|&&k| k == 1).count() == 1
                && e.0.iter().all(|&k| k == 0 || k == 1)
        }
        _ => false,
    }
}

/// Index `i` with `u = x_{i+1}`, if any.
pub fn coordinate_index(u: &LaurentPoly) -> Option<usize> {
    if !is_coordinate_variable(u) {
        return None;
    }
    let e: &ExponentVector = &u.terms()[0].0;
    e.0.iter().position(|&k| k == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::*;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn initial_seeds() {
        let s = Seed::initial(&linear_a(2)).unwrap();
        assert_eq!(s.cluster(), &[p("x1", 2), p("x2", 2)]);
        let s = Seed::initial(&kronecker()).unwrap();
        assert_eq!(s.cluster(), &[p("x1", 2), p("x2", 2)]);
        let cyc = linear_a(3).mutate(1).unwrap();
        assert!(matches!(Seed::initial(&cyc), Err(Error::Precondition(_))));
    }

    #[test]
    fn a2_hand_mutations() {
        let s = Seed::initial(&linear_a(2)).unwrap();
        let s1 = s.mutate(0).unwrap();
        assert_eq!(s1.cluster()[0], p("x1^-1 + x1^-1*x2", 2));
        let s2 = s1.mutate(1).unwrap();
        assert_eq!(s2.cluster()[1], p("x1^-1*x2^-1 + x2^-1 + x1^-1", 2));
        assert_eq!(s1.mutate(0).unwrap(), s);
        assert_eq!(s2.mutate(1).unwrap(), s1);
    }

    #[test]
    fn mutation_never_returns_the_old_variable() {
        let s = Seed::initial(&affine_a2()).unwrap();
        for k in 0..3 {
            assert_ne!(s.mutate(k).unwrap().cluster()[k], s.cluster()[k]);
        }
        assert!(s.mutate(3).is_err());
    }

    #[test]
    fn canonical_seed_ignores_relabeling() {
        let s = Seed::initial(&d4()).unwrap().mutate(2).unwrap();
        let perm = [3, 1, 0, 2];
        let relabeled = Seed::new(
            perm.iter().map(|&i| s.cluster()[i].clone()).collect(),
            s.matrix().permuted(&perm),
        )
        .unwrap();
        assert_eq!(relabeled.canonical(), s.canonical());
        assert!(Seed::initial(&d4()).unwrap().canonical().is_initial());
        assert!(!s.canonical().is_initial());
    }

    #[test]
    fn coordinate_detection() {
        assert_eq!(coordinate_index(&p("x2", 3)), Some(1));
        assert_eq!(coordinate_index(&p("2*x2", 3)), None);
        assert_eq!(coordinate_index(&p("x2^2", 3)), None);
        assert_eq!(coordinate_index(&p("x1*x2", 3)), None);
    }
}
