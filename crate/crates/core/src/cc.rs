//! The Caldero-Chapoton map from rigid indecomposables to Laurent polynomials.
//!
//! For a representation `M` with `m = dim M`,
//! `X_M = sum_e chi(Gr_e(M)) prod_i x_i^(-<e, a_i> - <a_i, m - e>)`.
//! Euler characteristics of quiver Grassmannians come either from the
//! closure rule for thin modules or from point counts over `F_p`,
//! interpolated as a polynomial in `p` and evaluated at 1.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPoly};
use crate::linalg::{rank_mod, QMatrix};
use crate::quiver::ExchangeMatrix;
use crate::report::VerificationReport;
use crate::reps::{build_indecomposable, ext1_dim, hom_dim, ClusterObject, QuiverRep};
use crate::roots::{euler_form, positive_roots};
use crate::seed::{is_coordinate_variable, MutationGraph};

/// Largest total dimension admitted by [`count_subreps_fq`].
pub const COUNT_MAX_TOTAL_DIM: usize = 6;

/// Largest number of subspace tuples [`count_subreps_fq`] will enumerate.
pub const COUNT_MAX_TUPLES: u128 = 2_000_000;

/// Euler characteristics of all quiver Grassmannians of one module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannianProfile {
    pub module: QuiverRep,
    pub by_dimvector: BTreeMap<Vec<i64>, i64>,
}

fn within(e: &[i64], m: &QuiverRep) -> bool {
    e.len() == m.dims().len()
        && e.iter()
            .zip(m.dims())
            .all(|(&a, &b)| a >= 0 && a <= b as i64)
}

/// `chi(Gr_e(M))` for a thin module: the Grassmannian is a point when the
/// support of `e` is closed under the nonzero arrows, and empty otherwise.
pub fn chi_thin(m: &QuiverRep, e: &[i64]) -> Result<i64> {
    if !m.is_thin() {
        return Err(Error::Precondition(format!(
            "chi_thin needs a thin module, got dimension vector {:?}",
            m.dims()
        )));
    }
    if e.len() != m.dims().len() {
        return Err(Error::DimensionMismatch {
            left: m.dims().len(),
            right: e.len(),
        });
    }
    if !within(e, m) {
        return Ok(0);
    }
    for (a, &(i, j)) in m.arrows().iter().enumerate() {
        let nonzero = m.dims()[i] == 1 && m.dims()[j] == 1 && !m.maps()[a].is_zero();
        if nonzero && e[i] == 1 && e[j] == 0 {
            return Ok(0);
        }
    }
    Ok(1)
}

/// A subspace of `F_p^m` in reduced row echelon form.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + p - f * r % p) % p;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// Number of `e`-dimensional subspaces of `F_p^m`.
fn gaussian_binomial(m: usize, e: usize, p: u64) -> u128 {
    let p = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for t in 0..e {
        num *= p.pow((m - t) as u32) - 1;
        den *= p.pow((t + 1) as u32) - 1;
    }
    num / den
}

fn subspaces(m: usize, e: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(e);
    pivot_sets(m, e, 0, &mut pivots, &mut |pivots| {
        // free slots: row r, column c > pivots[r] with c not a pivot
        let free: Vec<(usize, usize)> = (0..e)
            .flat_map(|r| ((pivots[r] + 1)..m).map(move |c| (r, c)))
            .filter(|(_, c)| !pivots.contains(c))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u64; m]; e];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut rest = code;
            for &(r, c) in &free {
                rows[r][c] = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            out.push(Subspace {
                rows,
                pivots: pivots.to_vec(),
            });
        }
    });
    out
}

fn pivot_sets(m: usize, e: usize, start: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == e {
        f(acc);
        return;
    }
    for c in start..m {
        acc.push(c);
        pivot_sets(m, e, c + 1, acc, f);
        acc.pop();
    }
}

/// Arrow maps reduced mod `p`, rejecting primes where a map loses rank.
fn reduce_maps(m: &QuiverRep, p: u64) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::with_capacity(m.maps().len());
    for (a, x) in m.maps().iter().enumerate() {
        let reduced = x.reduce_mod(p).ok_or_else(|| {
            Error::Precondition(format!(
                "map of arrow {a} has a denominator divisible by {p}"
            ))
        })?;
        if rank_mod(x.rows(), x.cols(), &reduced, p) != x.rank() {
            return Err(Error::Precondition(format!(
                "map of arrow {a} drops rank mod {p}"
            )));
        }
        out.push(reduced);
    }
    Ok(out)
}

/// Counts subrepresentations of `M` over `F_p` with dimension vector `e`.
pub fn count_subreps_fq(m: &QuiverRep, e: &[i64], p: u64) -> Result<u64> {
    if e.len() != m.dims().len() {
        return Err(Error::DimensionMismatch {
            left: m.dims().len(),
            right: e.len(),
        });
    }
    if m.total_dim() > COUNT_MAX_TOTAL_DIM {
        return Err(Error::Resource(format!(
            "point count needs total dimension at most {COUNT_MAX_TOTAL_DIM}, got {}",
            m.total_dim()
        )));
    }
    if !within(e, m) {
        return Ok(0);
    }
    let n = e.len();
    let tuples: u128 = (0..n)
        .map(|i| gaussian_binomial(m.dims()[i], e[i] as usize, p))
        .try_fold(1u128, |acc, c| acc.checked_mul(c))
        .unwrap_or(u128::MAX);
    if tuples > COUNT_MAX_TUPLES {
        return Err(Error::Resource(format!(
            "{tuples} subspace tuples over F_{p} exceed the limit of {COUNT_MAX_TUPLES}"
        )));
    }
    let maps = reduce_maps(m, p)?;
    let spaces: Vec<Vec<Subspace>> = (0..n)
        .map(|i| subspaces(m.dims()[i], e[i] as usize, p))
        .collect();
    let ctx = CountCtx {
        p,
        dims: m.dims(),
        arrows: m.arrows(),
        maps: &maps,
        spaces: &spaces,
    };
    let mut chosen = Vec::with_capacity(n);
    Ok(ctx.count(&mut chosen))
}

struct CountCtx<'a> {
    p: u64,
    dims: &'a [usize],
    arrows: &'a [(usize, usize)],
    maps: &'a [Vec<u64>],
    spaces: &'a [Vec<Subspace>],
}

impl CountCtx<'_> {
    fn count(&self, chosen: &mut Vec<usize>) -> u64 {
        let v = chosen.len();
        if v == self.spaces.len() {
            return 1;
        }
        let mut total = 0;
        for s in 0..self.spaces[v].len() {
            chosen.push(s);
            if self.closed_at(chosen, v) {
                total += self.count(chosen);
            }
            chosen.pop();
        }
        total
    }

    /// Arrows between `v` and earlier vertices send the chosen subspaces into each other.
    fn closed_at(&self, chosen: &[usize], v: usize) -> bool {
        let p = self.p;
        for (a, &(i, j)) in self.arrows.iter().enumerate() {
            if i.max(j) != v {
                continue;
            }
            let source = &self.spaces[i][chosen[i]];
            let target = &self.spaces[j][chosen[j]];
            let (rows, cols) = (self.dims[j], self.dims[i]);
            for b in &source.rows {
                let image: Vec<u64> = (0..rows)
                    .map(|r| {
                        (0..cols).fold(0u64, |acc, c| (acc + self.maps[a][r * cols + c] * b[c]) % p)
                    })
                    .collect();
                if !target.contains(&image, p) {
                    return false;
                }
            }
        }
        true
    }
}

fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
}

/// Coefficients (constant term first) of the point-count polynomial of `Gr_e(M)`.
///
/// Uses `D + 1` primes for interpolation with `D = sum_i e_i (m_i - e_i)` and
/// one further prime as a held-out check. Primes where a map loses rank are skipped.
pub fn counting_polynomial(m: &QuiverRep, e: &[i64]) -> Result<Vec<BigInt>> {
    if e.len() != m.dims().len() {
        return Err(Error::DimensionMismatch {
            left: m.dims().len(),
            right: e.len(),
        });
    }
    if !within(e, m) {
        return Ok(Vec::new());
    }
    let degree: i64 = e
        .iter()
        .zip(m.dims())
        .map(|(&a, &b)| a * (b as i64 - a))
        .sum();
    let needed = degree as usize + 2;
    let mut points = Vec::with_capacity(needed);
    for p in primes().take(64) {
        match count_subreps_fq(m, e, p) {
            Ok(c) => points.push((p, c)),
            Err(Error::Precondition(_)) => continue,
            Err(other) => return Err(other),
        }
        if points.len() == needed {
            break;
        }
    }
    if points.len() < needed {
        return Err(Error::Resource(format!(
            "found only {} usable primes for the point count of {e:?}",
            points.len()
        )));
    }
    let (held_p, held_count) = points.pop().unwrap();

    let k = points.len();
    let mut system = QMatrix::zeros(k, k + 1);
    for (r, &(p, c)) in points.iter().enumerate() {
        let mut power = BigInt::one();
        for col in 0..k {
            system.set(r, col, BigRational::from_integer(power.clone()));
            power *= p;
        }
        system.set(r, k, BigRational::from_integer(BigInt::from(c)));
    }
    let (solved, _) = system.rref();
    let mut coeffs = Vec::with_capacity(k);
    for r in 0..k {
        let c = solved.get(r, k);
        if !c.is_integer() {
            return Err(Error::Invariant(format!(
                "point counts of Gr_{e:?} interpolate to a non-integral coefficient {c}"
            )));
        }
        coeffs.push(c.to_integer());
    }
    let predicted = eval(&coeffs, &BigInt::from(held_p));
    if predicted != BigInt::from(held_count) {
        return Err(Error::Invariant(format!(
            "point counts of Gr_{e:?} are not polynomial: predicted {predicted} at {held_p}, counted {held_count}"
        )));
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(coeffs)
}

fn eval(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `chi(Gr_e(M))` as the value at 1 of the point-count polynomial.
pub fn chi_interpolated(m: &QuiverRep, e: &[i64]) -> Result<i64> {
    let coeffs = counting_polynomial(m, e)?;
    eval(&coeffs, &BigInt::one())
        .to_i64()
        .ok_or_else(|| Error::Resource("Euler characteristic exceeds i64".into()))
}

fn dim_box(dims: &[usize]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=d as i64).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn grassmannian_profile(m: &QuiverRep) -> Result<GrassmannianProfile> {
    let mut by_dimvector = BTreeMap::new();
    for e in dim_box(m.dims()) {
        let chi = if m.is_thin() {
            chi_thin(m, &e)?
        } else {
            chi_interpolated(m, &e)?
        };
        by_dimvector.insert(e, chi);
    }
    let full = m.dim_vector();
    let zero = vec![0; full.len()];
    for e in [&zero, &full] {
        if by_dimvector[e] != 1 {
            return Err(Error::Invariant(format!(
                "chi(Gr_{e:?}) = {} for a module of dimension {full:?}",
                by_dimvector[e]
            )));
        }
    }
    Ok(GrassmannianProfile {
        module: m.clone(),
        by_dimvector,
    })
}

/// The Caldero-Chapoton Laurent polynomial of a rigid indecomposable `M`.
pub fn cc_variable(m: &QuiverRep) -> Result<LaurentPoly> {
    if hom_dim(m, m)? != 1 || ext1_dim(m, m)? != 0 {
        return Err(Error::Precondition(format!(
            "representation with dimension vector {:?} is not exceptional",
            m.dims()
        )));
    }
    let q = m.quiver();
    let n = q.n();
    let dim = m.dim_vector();
    let profile = grassmannian_profile(m)?;
    let mut terms = Vec::new();
    for (e, &chi) in &profile.by_dimvector {
        if chi == 0 {
            continue;
        }
        let rest: Vec<i64> = dim.iter().zip(e).map(|(a, b)| a - b).collect();
        let exps = (0..n)
            .map(|i| {
                let mut unit = vec![0; n];
                unit[i] = 1;
                let x = -euler_form(q, e, &unit) - euler_form(q, &unit, &rest);
                i32::try_from(x).map_err(|_| Error::Resource("exponent overflow".into()))
            })
            .collect::<Result<Vec<i32>>>()?;
        terms.push((ExponentVector(exps), BigInt::from(chi)));
    }
    LaurentPoly::from_terms(n, terms)
}

/// `beta`: shifted projectives go to initial variables, modules to their CC variable.
pub fn beta(q: &ExchangeMatrix, object: &ClusterObject) -> Result<LaurentPoly> {
    match object {
        ClusterObject::ShiftedProjective(i) => {
            if *i >= q.n() {
                return Err(Error::VertexOutOfRange {
                    index: *i,
                    n: q.n(),
                });
            }
            Ok(LaurentPoly::var(q.n(), *i))
        }
        ClusterObject::Rep(m) => cc_variable(m),
    }
}

/// For every positive root `d`, the CC variable of the indecomposable with
/// dimension vector `d` is an explored variable with denominator vector `d`,
/// and together with the initial variables these exhaust the variable set.
///
/// Roots whose module is too large for the point count are skipped, which
/// makes the verdict inconclusive.
pub fn verify_alpha_beta_inverse(
    graph: &MutationGraph,
    q: &ExchangeMatrix,
) -> Result<VerificationReport> {
    let roots = positive_roots(q)?;
    let truncated = graph.is_truncated();
    let variables = graph.variables();
    let present: BTreeSet<&LaurentPoly> = variables.iter().collect();
    let mut report = VerificationReport::new("alpha-beta-inverse");
    let mut hit = BTreeSet::new();
    let mut matched = 0u64;
    let mut nonpositive = 0u64;
    let mut skipped = BTreeSet::new();
    for d in &roots {
        let m = build_indecomposable(q, d)?;
        let x = match cc_variable(&m) {
            Ok(x) => x,
            Err(Error::Resource(why)) => {
                report.details.push(json!({ "root": d, "skipped": why }));
                skipped.insert(d.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        let denom = x.denominator_vector()?.to_i64();
        let found = present.contains(&x);
        if &denom != d {
            report.violation(format!(
                "root {d:?}: CC variable {x} has denominator vector {denom:?}"
            ));
        }
        if !found && !truncated {
            report.violation(format!(
                "root {d:?}: CC variable {x} is not a cluster variable"
            ));
        }
        if !x.all_coefficients_positive() {
            nonpositive += 1;
        }
        let ok = found && &denom == d;
        matched += u64::from(ok);
        if found {
            hit.insert(x.clone());
        }
        report
            .details
            .push(json!({ "root": d, "cc_variable": x.to_string(), "matched": ok }));
    }
    for i in 0..q.n() {
        let x = beta(q, &ClusterObject::ShiftedProjective(i))?;
        if present.contains(&x) {
            hit.insert(x);
        } else {
            report.violation(format!("initial variable x{} is missing", i + 1));
        }
    }
    for u in &variables {
        let beyond_guard = u
            .denominator_vector()
            .is_ok_and(|d| skipped.contains(&d.to_i64()));
        if !hit.contains(u) && !beyond_guard {
            let kind = if is_coordinate_variable(u) {
                "initial"
            } else {
                "non-initial"
            };
            report.violation(format!("{kind} variable {u} is not in the image of beta"));
        }
    }
    report
        .count("roots", roots.len() as u64)
        .count("matched", matched)
        .count("variables", variables.len() as u64)
        .count("nonpositive_cc_variables", nonpositive)
        .count("skipped_roots", skipped.len() as u64);
    Ok(report.finish(truncated || !skipped.is_empty()))
}
