//! Explicit quiver representations over `Q`.
//!
//! Arrows are indexed as in [`ExchangeMatrix::arrows`]; the map of arrow
//! `i -> j` is a `dims[j] x dims[i]` matrix.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::quiver::ExchangeMatrix;
use crate::report::VerificationReport;
use crate::roots::{alpha_map, euler_form, positive_roots, ObjectLabel};
use crate::seed::MutationGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    quiver: ExchangeMatrix,
    arrows: Vec<(usize, usize)>,
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

/// An indecomposable object of the cluster category with an explicit module
/// representative, or a shifted projective `P_i[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClusterObject {
    Rep(QuiverRep),
    ShiftedProjective(usize),
}

impl QuiverRep {
    pub fn new(quiver: &ExchangeMatrix, dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self> {
        let arrows = quiver.arrows();
        if dims.len() != quiver.n() {
            return Err(Error::DimensionMismatch {
                left: quiver.n(),
                right: dims.len(),
            });
        }
        if maps.len() != arrows.len() {
            return Err(Error::Precondition(format!(
                "{} arrow maps given for {} arrows",
                maps.len(),
                arrows.len()
            )));
        }
        for (a, (&(i, j), m)) in arrows.iter().zip(&maps).enumerate() {
            if m.rows() != dims[j] || m.cols() != dims[i] {
                return Err(Error::Precondition(format!(
                    "arrow {a} ({i} -> {j}) carries a {}x{} matrix, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[j],
                    dims[i]
                )));
            }
        }
        Ok(QuiverRep {
            quiver: quiver.clone(),
            arrows,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: &ExchangeMatrix) -> Self {
        let dims = vec![0; quiver.n()];
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| QMatrix::zeros(0, 0))
            .collect();
        Self::new(quiver, dims, maps).unwrap()
    }

    pub fn simple(quiver: &ExchangeMatrix, k: usize) -> Result<Self> {
        if k >= quiver.n() {
            return Err(Error::VertexOutOfRange {
                index: k,
                n: quiver.n(),
            });
        }
        let mut dims = vec![0; quiver.n()];
        dims[k] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(i, j)| QMatrix::zeros(dims[j], dims[i]))
            .collect();
        Self::new(quiver, dims, maps)
    }

    pub fn quiver(&self) -> &ExchangeMatrix {
        &self.quiver
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    /// Every vertex space has dimension at most one.
    pub fn is_thin(&self) -> bool {
        self.dims.iter().all(|&d| d <= 1)
    }

    fn same_quiver(&self, other: &QuiverRep) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::Precondition(
                "representations live on different quivers".into(),
            ));
        }
        Ok(())
    }
}

/// Offsets of the unknown blocks `phi_i : X_i -> Y_i` in a flat vector.
fn hom_offsets(x: &QuiverRep, y: &QuiverRep) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(x.dims.len());
    let mut total = 0;
    for (dx, dy) in x.dims.iter().zip(&y.dims) {
        offsets.push(total);
        total += dx * dy;
    }
    (offsets, total)
}

/// `dim Hom(X, Y)`: the solution space of `phi_j X_a = Y_a phi_i` over all arrows.
pub fn hom_dim(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    x.same_quiver(y)?;
    let (offsets, unknowns) = hom_offsets(x, y);
    if unknowns == 0 {
        return Ok(0);
    }
    // phi_i is dims_y[i] x dims_x[i], entry (r, c) at offsets[i] + r * dims_x[i] + c
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * x.dims[v] + c;
    let mut rows: Vec<Vec<(usize, num_rational::BigRational)>> = Vec::new();
    for (a, &(i, j)) in x.arrows.iter().enumerate() {
        let xa = &x.maps[a];
        let ya = &y.maps[a];
        for r in 0..y.dims[j] {
            for c in 0..x.dims[i] {
                let mut row = Vec::new();
                for t in 0..x.dims[j] {
                    let coeff = xa.get(t, c);
                    if !num_traits::Zero::is_zero(coeff) {
                        row.push((var(j, r, t), coeff.clone()));
                    }
                }
                for t in 0..y.dims[i] {
                    let coeff = ya.get(r, t);
                    if !num_traits::Zero::is_zero(coeff) {
                        row.push((var(i, t, c), -coeff.clone()));
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut system = QMatrix::zeros(rows.len(), unknowns);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row {
            let cur = system.get(r, c) + v;
            system.set(r, c, cur);
        }
    }
    Ok(unknowns - system.rank())
}

/// `dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y>` for hereditary algebras.
pub fn ext1_dim(x: &QuiverRep, y: &QuiverRep) -> Result<usize> {
    let hom = hom_dim(x, y)? as i64;
    let ext = hom - euler_form(&x.quiver, &x.dim_vector(), &y.dim_vector());
    if ext < 0 {
        return Err(Error::Invariant(format!(
            "negative Ext^1 dimension {ext} between {:?} and {:?}",
            x.dims, y.dims
        )));
    }
    Ok(ext as usize)
}

/// BGP reflection at a sink `k`: the new space at `k` is the kernel of the
/// summed incoming map. Requires that summed map to be onto (no `S_k`
/// summand).
pub fn reflect_at_sink(x: &QuiverRep, k: usize) -> Result<QuiverRep> {
    let q = &x.quiver;
    if k >= q.n() {
        return Err(Error::VertexOutOfRange { index: k, n: q.n() });
    }
    if !q.is_sink(k) {
        return Err(Error::Precondition(format!("vertex {k} is not a sink")));
    }
    let incoming: Vec<usize> = (0..x.arrows.len())
        .filter(|&a| x.arrows[a].1 == k)
        .collect();
    let blocks: Vec<QMatrix> = incoming.iter().map(|&a| x.maps[a].clone()).collect();
    let summed = QMatrix::hstack(x.dims[k], &blocks);
    if summed.rank() != x.dims[k] {
        return Err(Error::Precondition(format!(
            "summed map into sink {k} is not onto; the representation has S_{k} as a summand"
        )));
    }
    let kernel = summed.kernel();
    let new_dim = kernel.cols();

    let reflected = q.mutate(k)?;
    let mut dims = x.dims.clone();
    dims[k] = new_dim;

    // the t-th copy of i -> k turns into the t-th copy of k -> i
    let mut block_of: BTreeMap<usize, Vec<QMatrix>> = BTreeMap::new();
    let mut offset = 0;
    for &a in &incoming {
        let i = x.arrows[a].0;
        let rows = x.dims[i];
        block_of
            .entry(i)
            .or_default()
            .push(kernel.row_block(offset, rows));
        offset += rows;
    }
    for blocks in block_of.values_mut() {
        blocks.reverse();
    }

    let mut old_maps: BTreeMap<(usize, usize), Vec<QMatrix>> = BTreeMap::new();
    for (a, &(i, j)) in x.arrows.iter().enumerate() {
        if j != k {
            old_maps.entry((i, j)).or_default().push(x.maps[a].clone());
        }
    }
    for blocks in old_maps.values_mut() {
        blocks.reverse();
    }

    let mut maps = Vec::new();
    for (i, j) in reflected.arrows() {
        let m = if i == k {
            block_of.get_mut(&j).and_then(Vec::pop)
        } else {
            old_maps.get_mut(&(i, j)).and_then(Vec::pop)
        };
        maps.push(m.ok_or_else(|| Error::Invariant("arrow bookkeeping in reflection".into()))?);
    }
    QuiverRep::new(&reflected, dims, maps)
}

/// BGP reflection at a source `k`: the new space at `k` is the cokernel of
/// the summed outgoing map, which must be injective.
pub fn reflect_at_source(x: &QuiverRep, k: usize) -> Result<QuiverRep> {
    let q = &x.quiver;
    if k >= q.n() {
        return Err(Error::VertexOutOfRange { index: k, n: q.n() });
    }
    if !q.is_source(k) {
        return Err(Error::Precondition(format!("vertex {k} is not a source")));
    }
    let outgoing: Vec<usize> = (0..x.arrows.len())
        .filter(|&a| x.arrows[a].0 == k)
        .collect();
    let blocks: Vec<QMatrix> = outgoing.iter().map(|&a| x.maps[a].clone()).collect();
    let stacked = QMatrix::vstack(x.dims[k], &blocks);
    if stacked.rank() != x.dims[k] {
        return Err(Error::Precondition(format!(
            "summed map out of source {k} is not injective; the representation has S_{k} as a summand"
        )));
    }
    // rows of the projection onto the cokernel span the left kernel
    let projection = stacked.transpose().kernel().transpose();
    let new_dim = projection.rows();

    let reflected = q.mutate(k)?;
    let mut dims = x.dims.clone();
    dims[k] = new_dim;

    let mut block_of: BTreeMap<usize, Vec<QMatrix>> = BTreeMap::new();
    let mut offset = 0;
    for &a in &outgoing {
        let j = x.arrows[a].1;
        let cols = x.dims[j];
        block_of
            .entry(j)
            .or_default()
            .push(projection.col_block(offset, cols));
        offset += cols;
    }
    for blocks in block_of.values_mut() {
        blocks.reverse();
    }

    let mut old_maps: BTreeMap<(usize, usize), Vec<QMatrix>> = BTreeMap::new();
    for (a, &(i, j)) in x.arrows.iter().enumerate() {
        if i != k {
            old_maps.entry((i, j)).or_default().push(x.maps[a].clone());
        }
    }
    for blocks in old_maps.values_mut() {
        blocks.reverse();
    }

    let mut maps = Vec::new();
    for (i, j) in reflected.arrows() {
        let m = if j == k {
            block_of.get_mut(&i).and_then(Vec::pop)
        } else {
            old_maps.get_mut(&(i, j)).and_then(Vec::pop)
        };
        maps.push(m.ok_or_else(|| Error::Invariant("arrow bookkeeping in reflection".into()))?);
    }
    QuiverRep::new(&reflected, dims, maps)
}

/// Reflects at `k`, choosing the sink or source functor from the quiver.
pub fn reflect(x: &QuiverRep, k: usize) -> Result<QuiverRep> {
    if k < x.quiver.n() && x.quiver.is_sink(k) {
        reflect_at_sink(x, k)
    } else {
        reflect_at_source(x, k)
    }
}

/// Simple reflection `s_k` on a dimension vector for the quiver `q`.
pub fn simple_reflection(q: &ExchangeMatrix, d: &[i64], k: usize) -> Vec<i64> {
    let neighbors: i64 = (0..q.n()).map(|i| q.get(i, k).abs() * d[i]).sum();
    let mut out = d.to_vec();
    out[k] = neighbors - d[k];
    out
}

/// The indecomposable representation of a Dynkin quiver with dimension
/// vector `d`, built by reflecting a simple representation.
///
/// Sink reflections (lowest-index sink first) take `d` down to a simple root;
/// the matching source reflections then carry the simple back up.
pub fn build_indecomposable(q: &ExchangeMatrix, d: &[i64]) -> Result<QuiverRep> {
    let roots = positive_roots(q)?;
    if !roots.iter().any(|r| r == d) {
        return Err(Error::Precondition(format!(
            "{d:?} is not a positive root of {q}"
        )));
    }
    let mut quiver = q.clone();
    let mut dims = d.to_vec();
    let mut steps = Vec::new();
    let simple_at = |v: &[i64]| -> Option<usize> {
        (v.iter().sum::<i64>() == 1)
            .then(|| v.iter().position(|&x| x == 1))
            .flatten()
    };
    let limit = 4 * q.n() * q.n() + 16;
    let start = loop {
        if let Some(k) = simple_at(&dims) {
            break k;
        }
        if steps.len() > limit {
            return Err(Error::Invariant(format!(
                "reflection chain for {d:?} did not reach a simple root"
            )));
        }
        let k = (0..quiver.n())
            .find(|&k| quiver.is_sink(k))
            .ok_or_else(|| Error::Invariant("acyclic quiver without a sink".into()))?;
        dims = simple_reflection(&quiver, &dims, k);
        quiver = quiver.mutate(k)?;
        steps.push(k);
        if dims.iter().any(|&x| x < 0) {
            return Err(Error::Invariant(format!(
                "reflection chain for {d:?} left the positive cone"
            )));
        }
    };

    let mut rep = QuiverRep::simple(&quiver, start)?;
    for &k in steps.iter().rev() {
        rep = reflect_at_source(&rep, k)?;
    }
    if rep.quiver != *q || rep.dim_vector() != d {
        return Err(Error::Invariant(format!(
            "reflection chain for {d:?} produced {:?}",
            rep.dims
        )));
    }
    let end = hom_dim(&rep, &rep)?;
    let ext = ext1_dim(&rep, &rep)?;
    if end != 1 || ext != 0 {
        return Err(Error::Invariant(format!(
            "indecomposable for {d:?} has End dimension {end} and Ext^1 dimension {ext}"
        )));
    }
    Ok(rep)
}

/// Thin representation with support `{i : d_i = 1}` and every arrow inside
/// the support acting as the identity. For type A these are the interval
/// modules.
pub fn thin_module(q: &ExchangeMatrix, d: &[i64]) -> Result<QuiverRep> {
    if d.len() != q.n() || d.iter().any(|&x| !(0..=1).contains(&x)) {
        return Err(Error::Precondition(format!("{d:?} is not a 0/1 vector")));
    }
    let dims: Vec<usize> = d.iter().map(|&x| x as usize).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let mut m = QMatrix::zeros(dims[j], dims[i]);
            if dims[i] == 1 && dims[j] == 1 {
                m.set(0, 0, num_traits::One::one());
            }
            m
        })
        .collect();
    QuiverRep::new(q, dims, maps)
}

/// Dimensions of `Ext^1` in the cluster category between the given objects.
///
/// Modules: `Ext^1(X, Y) + Ext^1(Y, X)`. Against a shifted projective `P_i[1]`:
/// `(dim M)_i`. Between two shifted projectives: 0.
pub fn cluster_ext1(objects: &[ClusterObject]) -> Result<Vec<Vec<usize>>> {
    let n = objects.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            let v = cluster_ext1_pair(&objects[a], &objects[b])?;
            out[a][b] = v;
            out[b][a] = v;
        }
    }
    Ok(out)
}

pub fn cluster_ext1_pair(x: &ClusterObject, y: &ClusterObject) -> Result<usize> {
    Ok(match (x, y) {
        (ClusterObject::Rep(m), ClusterObject::Rep(n)) => ext1_dim(m, n)? + ext1_dim(n, m)?,
        (ClusterObject::ShiftedProjective(i), ClusterObject::Rep(m))
        | (ClusterObject::Rep(m), ClusterObject::ShiftedProjective(i)) => m.dims[*i],
        (ClusterObject::ShiftedProjective(_), ClusterObject::ShiftedProjective(_)) => 0,
    })
}

pub fn object_for_label(q: &ExchangeMatrix, label: &ObjectLabel) -> Result<ClusterObject> {
    Ok(match label {
        ObjectLabel::Module(d) => ClusterObject::Rep(build_indecomposable(q, d)?),
        ObjectLabel::ShiftedProjective(i) => ClusterObject::ShiftedProjective(*i),
    })
}

/// Pairs inside one cluster image with a nonzero cluster-category `Ext^1`.
pub fn incompatible_pairs(objects: &[ClusterObject]) -> Result<Vec<(usize, usize, usize)>> {
    let ext = cluster_ext1(objects)?;
    let mut bad = Vec::new();
    for a in 0..objects.len() {
        for b in a..objects.len() {
            if ext[a][b] != 0 {
                bad.push((a, b, ext[a][b]));
            }
        }
    }
    Ok(bad)
}

/// The image of every cluster under the denominator map is rigid (no
/// self-extensions in the cluster category) and distinct clusters have
/// distinct images.
pub fn verify_tilting_image(
    graph: &MutationGraph,
    q: &ExchangeMatrix,
) -> Result<VerificationReport> {
    let mut anomalies = Vec::new();
    let mut images = Vec::new();
    for cluster in graph.clusters() {
        let mut image = Vec::with_capacity(cluster.len());
        for u in &cluster {
            match alpha_map(u) {
                Ok(l) => image.push(l),
                Err(a) => anomalies.push(format!("anomaly: {a}")),
            }
        }
        if image.len() == cluster.len() {
            images.push(image);
        }
    }
    let mut report = verify_tilting_labels(q, &images, graph.is_truncated())?;
    if !anomalies.is_empty() {
        anomalies.sort();
        anomalies.dedup();
        report.violations.extend(anomalies);
        report = report.finish(graph.is_truncated());
    }
    Ok(report)
}

/// Rigidity and injectivity over explicit label sets, one per cluster.
pub fn verify_tilting_labels(
    q: &ExchangeMatrix,
    images: &[Vec<ObjectLabel>],
    truncated: bool,
) -> Result<VerificationReport> {
    if q.classify_dynkin().is_none() {
        return Err(Error::Domain(format!(
            "tilting verification needs a Dynkin quiver, got {q}"
        )));
    }
    let distinct: Vec<ObjectLabel> = images
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let objects = distinct
        .iter()
        .map(|l| object_for_label(q, l))
        .collect::<Result<Vec<_>>>()?;
    let ext = cluster_ext1(&objects)?;
    let position: BTreeMap<&ObjectLabel, usize> =
        distinct.iter().enumerate().map(|(i, l)| (l, i)).collect();

    let mut report = VerificationReport::new("tilting");
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut rigid = 0u64;
    for image in images {
        let mut idx: Vec<usize> = image.iter().map(|l| position[l]).collect();
        idx.sort_unstable();
        let name = idx
            .iter()
            .map(|&i| distinct[i].to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let mut ok = idx.len() == q.n();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            ok = false;
            report.violation(format!("image {{{name}}} has repeated summands"));
        }
        for (s, &a) in idx.iter().enumerate() {
            for &b in &idx[s..] {
                if ext[a][b] != 0 {
                    ok = false;
                    report.violation(format!(
                        "image {{{name}}}: Ext^1 between {} and {} has dimension {}",
                        distinct[a], distinct[b], ext[a][b]
                    ));
                }
            }
        }
        rigid += u64::from(ok);
        *seen.entry(idx).or_default() += 1;
    }
    for (idx, count) in &seen {
        if *count > 1 {
            let name: Vec<String> = idx.iter().map(|&i| distinct[i].to_string()).collect();
            report.violation(format!(
                "{count} clusters share the image {{{}}}",
                name.join(", ")
            ));
        }
    }
    report
        .count("clusters", images.len() as u64)
        .count("rigid_clusters", rigid)
        .count("objects", objects.len() as u64);
    Ok(report.finish(truncated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples::*;
    use crate::roots::CoxeterTransform;

    fn p1_a2() -> QuiverRep {
        thin_module(&linear_a(2), &[1, 1]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let q = linear_a(2);
        let s1 = QuiverRep::simple(&q, 0).unwrap();
        let s2 = QuiverRep::simple(&q, 1).unwrap();
        assert_eq!(hom_dim(&p1_a2(), &s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &p1_a2()).unwrap(), 0);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&s2, &p1_a2()).unwrap(), 1);
        assert_eq!(hom_dim(&p1_a2(), &p1_a2()).unwrap(), 1);
        let other = QuiverRep::simple(&kronecker(), 0).unwrap();
        assert!(hom_dim(&s1, &other).is_err());
    }

    #[test]
    fn ext_examples() {
        let q = linear_a(2);
        let s1 = QuiverRep::simple(&q, 0).unwrap();
        let s2 = QuiverRep::simple(&q, 1).unwrap();
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s2, &s1).unwrap(), 0);
        for y in [&s1, &s2, &p1_a2()] {
            assert_eq!(ext1_dim(&p1_a2(), y).unwrap(), 0);
            assert_eq!(ext1_dim(&s2, y).unwrap(), 0);
        }
    }

    #[test]
    fn reflection_examples() {
        let q = linear_a(2);
        let s2 = QuiverRep::simple(&q, 1).unwrap();
        assert!(reflect_at_sink(&s2, 1).is_err());
        let r = reflect_at_sink(&p1_a2(), 1).unwrap();
        assert_eq!(r.dims(), &[1, 0]);
        assert_eq!(r.quiver(), &q.mutate(1).unwrap());
        assert!(reflect_at_sink(&p1_a2(), 0).is_err());
        // back again
        let back = reflect_at_source(&r, 1).unwrap();
        assert_eq!(back.dims(), &[1, 1]);
        assert_eq!(hom_dim(&back, &p1_a2()).unwrap(), 1);
        assert_eq!(reflect(&p1_a2(), 1).unwrap().dims(), &[1, 0]);
    }

    #[test]
    fn reflection_dimension_formula_on_d4_roots() {
        let q = d4();
        for d in positive_roots(&q).unwrap() {
            let x = build_indecomposable(&q, &d).unwrap();
            for k in 0..4 {
                let simple = d.iter().sum::<i64>() == 1 && d[k] == 1;
                if simple {
                    continue;
                }
                let r = reflect(&x, k);
                if q.is_sink(k) || q.is_source(k) {
                    let r = r.unwrap();
                    assert_eq!(r.dim_vector(), simple_reflection(&q, &d, k));
                    assert_eq!(hom_dim(&r, &r).unwrap(), 1);
                } else {
                    assert!(r.is_err());
                }
            }
        }
    }

    #[test]
    fn kronecker_reflection_uses_both_arrows() {
        let q = kronecker();
        let cox = CoxeterTransform::new(&q).unwrap();
        // projective P1 = (1, 2) with the two arrow maps spanning k^2
        let mut a = QMatrix::zeros(2, 1);
        a.set(0, 0, num_traits::One::one());
        let mut b = QMatrix::zeros(2, 1);
        b.set(1, 0, num_traits::One::one());
        let p1 = QuiverRep::new(&q, vec![1, 2], vec![a, b]).unwrap();
        assert_eq!(p1.dim_vector(), cox.projective_dim(0));
        assert_eq!(hom_dim(&p1, &p1).unwrap(), 1);
        let r = reflect_at_sink(&p1, 1).unwrap();
        assert_eq!(r.dims(), &[1, 0]);
        let back = reflect_at_source(&r, 1).unwrap();
        assert_eq!(back.dims(), &[1, 2]);
        assert_eq!(hom_dim(&back, &p1).unwrap(), 1);
    }

    #[test]
    fn indecomposables_agree_with_interval_modules() {
        for q in [linear_a(3), linear_a(4), d4()] {
            let roots = positive_roots(&q).unwrap();
            let built: Vec<QuiverRep> = roots
                .iter()
                .map(|d| build_indecomposable(&q, d).unwrap())
                .collect();
            for (d, x) in roots.iter().zip(&built) {
                assert_eq!(&x.dim_vector(), d);
                if !d.iter().all(|&v| v <= 1) {
                    continue;
                }
                let t = thin_module(&q, d).unwrap();
                for y in &built {
                    assert_eq!(hom_dim(x, y).unwrap(), hom_dim(&t, y).unwrap());
                    assert_eq!(hom_dim(y, x).unwrap(), hom_dim(y, &t).unwrap());
                    assert_eq!(ext1_dim(x, y).unwrap(), ext1_dim(&t, y).unwrap());
                }
            }
        }
        let q = linear_a(3);
        let x = build_indecomposable(&q, &[1, 1, 1]).unwrap();
        let t = thin_module(&q, &[1, 1, 1]).unwrap();
        assert_eq!(hom_dim(&x, &t).unwrap(), 1);
        assert_eq!(hom_dim(&t, &x).unwrap(), 1);
    }

    #[test]
    fn simples_build_to_simples() {
        let q = d4();
        for k in 0..4 {
            let mut e = vec![0; 4];
            e[k] = 1;
            let x = build_indecomposable(&q, &e).unwrap();
            assert_eq!(x, QuiverRep::simple(&q, k).unwrap());
        }
        assert!(build_indecomposable(&q, &[2, 0, 0, 0]).is_err());
    }

    #[test]
    fn cluster_ext_examples() {
        let q = linear_a(2);
        let s1 = ClusterObject::Rep(QuiverRep::simple(&q, 0).unwrap());
        let s2 = ClusterObject::Rep(QuiverRep::simple(&q, 1).unwrap());
        let e = cluster_ext1(&[s1.clone(), s2]).unwrap();
        assert_eq!(e, vec![vec![0, 1], vec![1, 0]]);
        let sp = cluster_ext1(&[
            ClusterObject::ShiftedProjective(0),
            ClusterObject::ShiftedProjective(1),
        ])
        .unwrap();
        assert_eq!(sp, vec![vec![0, 0], vec![0, 0]]);
        let mixed = cluster_ext1(&[ClusterObject::ShiftedProjective(0), s1]).unwrap();
        assert_eq!(mixed[0][1], 1);
        assert_eq!(mixed[1][0], 1);
    }

    #[test]
    fn tilting_on_small_dynkin() {
        use crate::seed::{explore, ExploreLimits};
        for (q, clusters, objects) in [(linear_a(2), 5, 5), (linear_a(3), 14, 9)] {
            let g = explore(&q, &ExploreLimits::default()).unwrap();
            let r = verify_tilting_image(&g, &q).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
            assert_eq!(r.counts["clusters"], clusters);
            assert_eq!(r.counts["rigid_clusters"], clusters);
            assert_eq!(r.counts["objects"], objects);
        }
    }

    #[test]
    fn tilting_negative_control() {
        use crate::seed::{explore, ExploreLimits};
        let q = linear_a(2);
        let g = explore(&q, &ExploreLimits::default()).unwrap();
        let mut images: Vec<Vec<ObjectLabel>> = g
            .clusters()
            .iter()
            .map(|c| c.iter().map(|u| alpha_map(u).unwrap()).collect())
            .collect();
        assert!(verify_tilting_labels(&q, &images, false).unwrap().passed());
        // {S1, S2} is not rigid in the cluster category
        images[0] = vec![
            ObjectLabel::Module(vec![1, 0]),
            ObjectLabel::Module(vec![0, 1]),
        ];
        let r = verify_tilting_labels(&q, &images, false).unwrap();
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.contains("has dimension 1")));
        assert!(verify_tilting_labels(&kronecker(), &[], false).is_err());
    }
}
