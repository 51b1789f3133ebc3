//! Sparse multivariate Laurent polynomials over the integers.
//!
//! Every cluster variable lives in `Z[x_1^{±1}, ..., x_n^{±1}]`. Terms are kept
//! as a list sorted lexicographically by exponent vector with no zero
//! coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DivisionFailure, Error, Result};

/// Slack allowed between the naive size of a product and the term limit.
pub const MUL_WORK_FACTOR: usize = 16;

/// Exponents of a Laurent monomial, or a dimension / denominator vector.
///
/// Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self >= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn plus(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negated(&self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        ExponentVector(v)
    }
}

/// An element of the Laurent ring in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: Vec<(ExponentVector, BigInt)>,
}

/// `u = numerator * x^(-denom_vector)` with no variable dividing the numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedForm {
    pub numerator: LaurentPoly,
    pub denom_vector: ExponentVector,
}

impl ReducedForm {
    /// Multiplies the pieces back together.
    pub fn reconstruct(&self) -> LaurentPoly {
        self.numerator.shift(&self.denom_vector.negated())
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    /// The coordinate variable `x_{i+1}` (vertices are 0-indexed).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, i), 1)
    }

    pub fn monomial(exponents: ExponentVector, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let nvars = exponents.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        LaurentPoly {
            nvars,
            terms: vec![(exponents, c)],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    left: nvars,
                    right: e.len(),
                });
            }
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_sorted_map(nvars, acc))
    }

    fn from_sorted_map(nvars: usize, acc: BTreeMap<ExponentVector, BigInt>) -> Self {
        LaurentPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_hash_map(nvars: usize, acc: HashMap<ExponentVector, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending lexicographic order of exponent vector.
    pub fn terms(&self) -> &[(ExponentVector, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_nonnegative())
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        match self.terms.binary_search_by(|(t, _)| t.cmp(e)) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Per-variable minimum exponent over the support. `None` for zero.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let (first, _) = self.terms.first()?;
        let mut min = first.0.clone();
        for (e, _) in &self.terms[1..] {
            for (m, &x) in min.iter_mut().zip(&e.0) {
                *m = (*m).min(x);
            }
        }
        Some(ExponentVector(min))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> LaurentPoly {
        assert_eq!(shift.len(), self.nvars, "variable count mismatch");
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.plus(shift), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &LaurentPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same(other)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((ea.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((eb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return Ok(self.scale_shift(c, e));
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return Ok(other.scale_shift(c, e));
        }
        let mut acc: HashMap<ExponentVector, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let prod = ca * cb;
                acc.entry(ea.plus(eb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Ok(Self::from_hash_map(self.nvars, acc))
    }

    fn scale_shift(&self, c: &BigInt, e: &ExponentVector) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, k)| (t.plus(e), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        self.pow_bounded(k, usize::MAX)
            .expect("unbounded power cannot hit a term limit")
    }

    /// Product that refuses to materialize more than `max_terms` terms.
    ///
    /// A product whose naive term count `len(a) * len(b)` exceeds
    /// `MUL_WORK_FACTOR * max_terms` is refused before any work is done.
    pub fn mul_bounded(&self, other: &LaurentPoly, max_terms: usize) -> Result<LaurentPoly> {
        let naive = self.len().saturating_mul(other.len());
        if naive > max_terms.saturating_mul(MUL_WORK_FACTOR) {
            return Err(Error::Resource(format!(
                "product of {} and {} terms exceeds the term budget of {max_terms}",
                self.len(),
                other.len()
            )));
        }
        let out = self.checked_mul(other)?;
        if out.len() > max_terms {
            return Err(Error::Resource(format!(
                "product has {} terms, more than {max_terms}",
                out.len()
            )));
        }
        Ok(out)
    }

    /// `self^k` by repeated squaring, with every intermediate bounded as in
    /// [`LaurentPoly::mul_bounded`].
    pub fn pow_bounded(&self, mut k: u32, max_terms: usize) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul_bounded(&base, max_terms)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_bounded(&base, max_terms)?;
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Both operands are first shifted into `Z[x]` with no variable dividing
    /// them; the quotient then exists in the Laurent ring iff it exists as a
    /// polynomial, which leading-term elimination in lex order decides.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (e, c) = &divisor.terms[0];
            if self.terms.iter().all(|(_, k)| k.is_multiple_of(c)) {
                return Ok(LaurentPoly {
                    nvars: self.nvars,
                    terms: self
                        .terms
                        .iter()
                        .map(|(t, k)| (t.minus(e), k / c))
                        .collect(),
                });
            }
        }

        let shift_a = self.min_exponents().unwrap().negated();
        let shift_b = divisor.min_exponents().unwrap().negated();
        let a = self.shift(&shift_a);
        let b = divisor.shift(&shift_b);
        let (lead_e, lead_c) = b.terms.last().unwrap().clone();

        let mut rem: BTreeMap<ExponentVector, BigInt> = a.terms.into_iter().collect();
        let mut quotient: Vec<(ExponentVector, BigInt)> = Vec::new();
        let mut leftover: Vec<(ExponentVector, BigInt)> = Vec::new();

        while let Some((e, c)) = rem.pop_last() {
            let (q, r) = c.div_rem(&lead_c);
            if !e.dominates(&lead_e) || !r.is_zero() {
                leftover.push((e, c));
                continue;
            }
            let qe = e.minus(&lead_e);
            // the leading term cancels by construction
            for (be, bc) in &b.terms[..b.terms.len() - 1] {
                let key = be.plus(&qe);
                let delta = &q * bc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quotient.push((qe, q));
        }

        if !leftover.is_empty() {
            let remainder =
                LaurentPoly::from_terms(self.nvars, leftover)?.shift(&shift_a.negated());
            return Err(DivisionFailure {
                dividend: self.clone(),
                divisor: divisor.clone(),
                remainder,
            }
            .into());
        }
        let q = LaurentPoly::from_terms(self.nvars, quotient)?;
        Ok(q.shift(&shift_b.minus(&shift_a)))
    }

    /// Writes `self = numerator / x^d` with `d` the negated per-variable
    /// minimum exponent. Coordinate variables get `d = -e_i`.
    pub fn reduced_form(&self) -> Result<ReducedForm> {
        let min = self
            .min_exponents()
            .ok_or_else(|| Error::Domain("reduced form of the zero polynomial".into()))?;
        Ok(ReducedForm {
            numerator: self.shift(&min.negated()),
            denom_vector: min.negated(),
        })
    }

    pub fn denominator_vector(&self) -> Result<ExponentVector> {
        Ok(self.reduced_form()?.denom_vector)
    }

    /// `f(e_i) > 0` for every `e_i = (1,..,1,0,1,..,1)`.
    pub fn positivity_check(&self) -> Result<bool> {
        if !self.is_polynomial() {
            return Err(Error::Precondition(format!(
                "positivity check needs a polynomial, got {self}"
            )));
        }
        Ok((0..self.nvars).all(|i| self.value_at_coordinate_hole(i).is_positive()))
    }

    /// Evaluates a polynomial at the point with 0 in slot `i` and 1 elsewhere.
    pub fn value_at_coordinate_hole(&self, i: usize) -> BigInt {
        self.terms
            .iter()
            .filter(|(e, _)| e.0[i] == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// Evaluates a polynomial at a point of `Z^n`.
    pub fn evaluate(&self, point: &[i64]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        if !self.is_polynomial() {
            return Err(Error::Precondition("evaluate needs a polynomial".into()));
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (&x, &k) in point.iter().zip(&e.0) {
                v *= num_traits::pow(BigInt::from(x), k as usize);
            }
            total += v;
        }
        Ok(total)
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_positive())
    }

    /// Parses the canonical text rendering, e.g. `1 + x1*x2^-1` or `2*x1^-1`.
    pub fn parse(text: &str, nvars: usize) -> Result<LaurentPoly> {
        parse_poly(text, nvars)
    }
}

/// The monomial `x^d` with coefficient 1, for a nonnegative vector `d`.
pub fn monomial_of_dimvector(d: &ExponentVector) -> Result<LaurentPoly> {
    if !d.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "dimension vector {:?} has a negative entry",
            d.0
        )));
    }
    Ok(LaurentPoly::monomial(d.clone(), 1))
}

/// Cluster-sorting order: fewer terms first, then the canonical term list.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars
            .cmp(&other.nvars)
            .then(self.terms.len().cmp(&other.terms.len()))
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &k) in e.0.iter().enumerate() {
        if k == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, k)?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if e.is_zero() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write_monomial(f, e)?;
            } else {
                write!(f, "{abs}*")?;
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

fn parse_poly(text: &str, nvars: usize) -> Result<LaurentPoly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if compact == "0" {
        return Ok(LaurentPoly::zero(nvars));
    }

    // split into signed terms; a '-' right after '^' belongs to an exponent
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !current.is_empty() {
                pieces.push((negative, std::mem::take(&mut current)));
            } else if prev.is_some() {
                return Err(Error::Parse(format!("dangling sign in {text:?}")));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("trailing sign in {text:?}")));
    }
    pieces.push((negative, current));

    let mut terms = Vec::with_capacity(pieces.len());
    for (negative, body) in pieces {
        let mut coeff = BigInt::one();
        let mut exps = vec![0i32; nvars];
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, pow) = match rest.split_once('^') {
                    Some((i, p)) => (i, p),
                    None => (rest, "1"),
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::Parse(format!(
                        "variable {factor:?} outside x1..x{nvars}"
                    )));
                }
                let pow: i32 = pow
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                exps[idx - 1] += pow;
            } else {
                let c: BigInt = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
                coeff *= c;
            }
        }
        if negative {
            coeff = -coeff;
        }
        terms.push((ExponentVector(exps), coeff));
    }
    LaurentPoly::from_terms(nvars, terms)
}
