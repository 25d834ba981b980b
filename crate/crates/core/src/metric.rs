//! Finite metric spaces, graph metrics and blowups.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, MetricError, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{int, Rational};

/// A finite metric space on points `0..k`, `k ≥ 2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetricSpace {
    dist: RationalMatrix,
    nearest: Vec<Rational>,
    labels: Option<Vec<String>>,
}

impl MetricSpace {
    pub fn k(&self) -> usize {
        self.nearest.len()
    }

    pub fn dist(&self) -> &RationalMatrix {
        &self.dist
    }

    pub fn d(&self, i: usize, j: usize) -> &Rational {
        &self.dist[(i, j)]
    }

    /// `nearest[i] = min_{j ≠ i} d(i, j)`.
    pub fn nearest(&self) -> &[Rational] {
        &self.nearest
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.k() {
            return Err(Error::Dimension(format!(
                "{} labels for {} points",
                labels.len(),
                self.k()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        validate_metric(&RationalMatrix::from_int_rows(rows))
    }

    /// The discrete metric scaled by `c`: all distinct points at distance `c`.
    pub fn discrete(k: usize, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParameter("scale must be positive".into()));
        }
        validate_metric(&RationalMatrix::from_fn(k, k, |i, j| {
            if i == j {
                Rational::zero()
            } else {
                c.clone()
            }
        }))
    }

    /// `(𝒟, a)` with `𝒟 = D + diag(2·nearest)` and `a = -2·nearest`.
    pub fn modified_matrices(&self) -> (RationalMatrix, Vec<Rational>) {
        modified_matrices(self)
    }

    pub fn modified_distance_matrix(&self) -> RationalMatrix {
        modified_matrices(self).0
    }

    pub fn blowup(&self, n: &BlowupSizes) -> Result<Self> {
        blowup_space(self, n)
    }
}

/// Checks the metric axioms and computes nearest distances.
pub fn validate_metric(dist: &RationalMatrix) -> Result<MetricSpace> {
    let (rows, cols) = (dist.rows(), dist.cols());
    if rows != cols {
        return Err(MetricError::NotSquare { rows, cols }.into());
    }
    let k = rows;
    if k < 2 {
        return Err(MetricError::TooFewPoints(k).into());
    }
    for i in 0..k {
        if !dist[(i, i)].is_zero() {
            return Err(MetricError::NonzeroDiagonal(i).into());
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if dist[(i, j)] != dist[(j, i)] {
                return Err(MetricError::Asymmetric { i, j }.into());
            }
            if !dist[(i, j)].is_positive() {
                return Err(MetricError::NonPositive { i, j }.into());
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            for via in 0..k {
                if via != i && via != j && dist[(i, j)] > &dist[(i, via)] + &dist[(via, j)] {
                    return Err(MetricError::Triangle { i, j, via }.into());
                }
            }
        }
    }
    let nearest = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i)
                .map(|j| dist[(i, j)].clone())
                .min()
                .expect("k ≥ 2")
        })
        .collect();
    Ok(MetricSpace {
        dist: dist.clone(),
        nearest,
        labels: None,
    })
}

pub fn modified_matrices(x: &MetricSpace) -> (RationalMatrix, Vec<Rational>) {
    let mut m = x.dist.clone();
    let two = int(2);
    let mut a = Vec::with_capacity(x.k());
    for (i, nr) in x.nearest.iter().enumerate() {
        m[(i, i)] = &two * nr;
        a.push(-(&two * nr));
    }
    (m, a)
}

/// A tuple of positive copy counts, one per point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlowupSizes(Vec<usize>);

impl BlowupSizes {
    pub fn new(n: Vec<usize>) -> Result<Self> {
        if let Some(i) = n.iter().position(|&x| x == 0) {
            return Err(Error::InvalidParameter(format!(
                "blowup size at position {i} must be at least 1"
            )));
        }
        Ok(Self(n))
    }

    pub fn ones(k: usize) -> Self {
        Self(vec![1; k])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// For each point of the blowup, the original point it copies.
    pub fn origin_map(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c))
            .collect()
    }

    /// `n'_x = Σ_c m_{(x,c)}`, where `m` indexes the points of the blowup
    /// by `self`.
    pub fn compose(&self, m: &BlowupSizes) -> Result<BlowupSizes> {
        if m.len() != self.total() {
            return Err(Error::Dimension(format!(
                "inner sizes have length {}, blowup has {} points",
                m.len(),
                self.total()
            )));
        }
        let mut out = vec![0; self.len()];
        for (p, &o) in self.origin_map().iter().enumerate() {
            out[o] += m.0[p];
        }
        Ok(BlowupSizes(out))
    }
}

impl FromStr for BlowupSizes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad blowup size {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n)
    }
}

impl fmt::Display for BlowupSizes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `X[n]`: copies of point `i` occupy a contiguous block, blocks in point
/// order. Distinct copies of `i` sit at distance `2·nearest[i]`.
pub fn blowup_space(x: &MetricSpace, n: &BlowupSizes) -> Result<MetricSpace> {
    if n.len() != x.k() {
        return Err(Error::Dimension(format!(
            "{} blowup sizes for {} points",
            n.len(),
            x.k()
        )));
    }
    let origin = n.origin_map();
    let two = int(2);
    let dist = RationalMatrix::from_fn(origin.len(), origin.len(), |p, q| {
        let (i, j) = (origin[p], origin[q]);
        if p == q {
            Rational::zero()
        } else if i == j {
            &two * &x.nearest[i]
        } else {
            x.dist[(i, j)].clone()
        }
    });
    let mut out = validate_metric(&dist)?;
    if let Some(l) = &x.labels {
        let mut seen = vec![0usize; x.k()];
        out.labels = Some(
            origin
                .iter()
                .map(|&i| {
                    seen[i] += 1;
                    if n.0[i] == 1 {
                        l[i].clone()
                    } else {
                        format!("{}.{}", l[i], seen[i])
                    }
                })
                .collect(),
        );
    }
    Ok(out)
}

/// A finite, simple, connected, unweighted graph on `0..k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    k: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeated edges,
    /// out-of-range endpoints and disconnected input.
    pub fn new(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut adj = vec![false; k * k];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= k {
                    return Err(Error::IndexOutOfRange { index: w, size: k });
                }
            }
            if u == v {
                return Err(Error::NotSimple(format!("loop at vertex {u}")));
            }
            if adj[u * k + v] {
                return Err(Error::NotSimple(format!("repeated edge {u}-{v}")));
            }
            adj[u * k + v] = true;
            adj[v * k + u] = true;
        }
        Self::from_adjacency_unchecked(k, adj).check_connected()
    }

    /// Builds from a full symmetric boolean adjacency matrix.
    pub fn from_adjacency(adj: &[Vec<bool>]) -> Result<Self> {
        let k = adj.len();
        let mut edges = Vec::new();
        for (i, row) in adj.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Dimension("adjacency matrix is not square".into()));
            }
            if row[i] {
                return Err(Error::NotSimple(format!("loop at vertex {i}")));
            }
            for j in i + 1..k {
                if row[j] != adj[j][i] {
                    return Err(Error::NotSymmetric);
                }
                if row[j] {
                    edges.push((i, j));
                }
            }
        }
        Self::new(k, &edges)
    }

    fn from_adjacency_unchecked(k: usize, adj: Vec<bool>) -> Self {
        Self { k, adj }
    }

    fn check_connected(self) -> Result<Self> {
        let comp = self.component_of(0);
        if comp.len() == self.k {
            return Ok(self);
        }
        let unreachable = (0..self.k).find(|v| !comp.contains(v)).expect("missing vertex");
        Err(Error::Disconnected { component: comp, unreachable })
    }

    /// Sorted vertex list of the connected component containing `v`.
    fn component_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.k];
        seen[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        (0..self.k).filter(|&i| seen[i]).collect()
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<_> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        Self::new(k, &edges).expect("complete graph")
    }

    pub fn path(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::new(k, &edges).expect("path graph")
    }

    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter("a cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::new(k, &edges)
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges).expect("star graph")
    }

    /// Complete multipartite graph with the given part sizes, parts laid out
    /// consecutively.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        let origin = BlowupSizes::new(parts.to_vec())?.origin_map();
        let k = origin.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if origin[i] != origin[j] {
                    edges.push((i, j));
                }
            }
        }
        Self::new(k, &edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.k + v]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).filter(move |&v| self.adj[u * self.k + v])
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors(u).count()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.k)
            .flat_map(|i| (i + 1..self.k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent(i, j))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.k
    }

    /// All-pairs shortest-path lengths by BFS.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        (0..self.k).map(|s| self.bfs(s)).collect()
    }

    fn bfs(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.k];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for v in self.neighbors(u) {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        d
    }

    /// Induced subgraph on `verts` (in the given order), which must be
    /// connected.
    pub fn induced(&self, verts: &[usize]) -> Result<Self> {
        let mut edges = Vec::new();
        for (a, &u) in verts.iter().enumerate() {
            if u >= self.k {
                return Err(Error::IndexOutOfRange { index: u, size: self.k });
            }
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.adjacent(u, v) {
                    edges.push((a, b));
                }
            }
        }
        Self::new(verts.len(), &edges)
    }

    /// Graph with vertex `v` of `self` placed at position `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.k {
            return Err(Error::Dimension("permutation length".into()));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.k, &edges)
    }

    pub fn metric(&self) -> Result<MetricSpace> {
        graph_metric(self)
    }

    pub fn blowup(&self, n: &BlowupSizes) -> Result<Self> {
        blowup_graph(self, n)
    }
}

/// Shortest-path metric. Fails for the single-vertex graph.
pub fn graph_metric(g: &Graph) -> Result<MetricSpace> {
    let d = g.distances();
    validate_metric(&RationalMatrix::from_fn(g.k, g.k, |i, j| int(d[i][j] as i64)))
}

/// `G[n]`: copies of `v` and `w` adjacent iff `v ≠ w` are adjacent.
pub fn blowup_graph(g: &Graph, n: &BlowupSizes) -> Result<Graph> {
    if n.len() != g.k {
        return Err(Error::Dimension(format!(
            "{} blowup sizes for {} vertices",
            n.len(),
            g.k
        )));
    }
    let origin = n.origin_map();
    let k = origin.len();
    let mut edges = Vec::new();
    for p in 0..k {
        for q in p + 1..k {
            if g.adjacent(origin[p], origin[q]) {
                edges.push((p, q));
            }
        }
    }
    Graph::new(k, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ints(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_int_rows(rows)
    }

    #[test]
    fn validation_reports_the_failed_axiom() {
        let x = validate_metric(&ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(x.nearest(), &[int(1), int(1)]);
        assert_eq!(
            validate_metric(&ints(&[&[0, 1], &[2, 0]])),
            Err(MetricError::Asymmetric { i: 0, j: 1 }.into())
        );
        assert_eq!(
            validate_metric(&ints(&[&[0, 1, 3], &[1, 0, 1], &[3, 1, 0]])),
            Err(MetricError::Triangle { i: 0, j: 2, via: 1 }.into())
        );
        assert_eq!(
            validate_metric(&ints(&[&[1, 1], &[1, 0]])),
            Err(MetricError::NonzeroDiagonal(0).into())
        );
        assert_eq!(
            validate_metric(&ints(&[&[0, 0], &[0, 0]])),
            Err(MetricError::NonPositive { i: 0, j: 1 }.into())
        );
        assert_eq!(validate_metric(&ints(&[&[0]])), Err(MetricError::TooFewPoints(1).into()));
        assert!(matches!(
            validate_metric(&RationalMatrix::zeros(2, 3)),
            Err(Error::Metric(MetricError::NotSquare { .. }))
        ));
    }

    #[test]
    fn graph_metrics() {
        let k2 = Graph::complete(2).metric().unwrap();
        assert_eq!(k2.dist(), &ints(&[&[0, 1], &[1, 0]]));
        assert_eq!(Graph::path(3).metric().unwrap().d(0, 2), &int(2));
        assert_eq!(Graph::path(9).metric().unwrap().d(0, 8), &int(8));
        let e = Graph::new(4, &[(0, 1), (2, 3)]).unwrap_err();
        assert_eq!(e, Error::Disconnected { component: vec![0, 1], unreachable: 2 });
        assert!(matches!(Graph::new(2, &[(0, 1), (1, 0)]), Err(Error::NotSimple(_))));
        assert!(matches!(Graph::new(2, &[(1, 1)]), Err(Error::NotSimple(_))));
        assert!(Graph::complete(1).metric().is_err());
    }

    #[test]
    fn modified_matrix_examples() {
        let (m, a) = Graph::complete(2).metric().unwrap().modified_matrices();
        assert_eq!(m, ints(&[&[2, 1], &[1, 2]]));
        assert_eq!(a, vec![int(-2), int(-2)]);
        let m = Graph::path(3).metric().unwrap().modified_distance_matrix();
        assert_eq!(m, ints(&[&[2, 1, 2], &[1, 2, 1], &[2, 1, 2]]));
        let iso = MetricSpace::from_int_rows(&[[0, 1, 4], [1, 0, 4], [4, 4, 0]]).unwrap();
        assert_eq!(
            iso.modified_distance_matrix(),
            ints(&[&[2, 1, 4], &[1, 2, 4], &[4, 4, 8]])
        );
    }

    #[test]
    fn blowup_examples() {
        let k2 = Graph::complete(2).metric().unwrap();
        let b = k2.blowup(&"2,1".parse().unwrap()).unwrap();
        assert_eq!(b.dist(), Graph::path(3).relabel(&[0, 2, 1]).unwrap().metric().unwrap().dist());
        assert_eq!(k2.blowup(&BlowupSizes::ones(2)).unwrap(), k2);
        let kb = Graph::complete(2).blowup(&BlowupSizes::new(vec![2, 3]).unwrap()).unwrap();
        assert_eq!(kb, Graph::complete_multipartite(&[2, 3]).unwrap());
        let k3 = Graph::complete(3).blowup(&BlowupSizes::new(vec![2, 1, 1]).unwrap()).unwrap();
        assert_eq!(k3.edge_count(), 5);
        assert!(!k3.adjacent(0, 1));
        assert!("2,0".parse::<BlowupSizes>().is_err());
        assert!("2,x".parse::<BlowupSizes>().is_err());
    }

    #[test]
    fn rational_blowup_labels() {
        let x = MetricSpace::discrete(2, &frac(1, 2))
            .unwrap()
            .with_labels(vec!["a".into(), "b".into()])
            .unwrap();
        let b = x.blowup(&BlowupSizes::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!(b.labels().unwrap(), &["a.1", "a.2", "b"]);
        assert_eq!(b.d(0, 1), &int(1));
    }
}
