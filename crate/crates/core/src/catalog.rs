//! Small connected graphs and trees, enumerated up to isomorphism.
//!
//! Graphs are grown one vertex at a time: every connected graph has a
//! non-cut vertex, so attaching a new vertex to a nonempty neighbour set of
//! each connected graph on `k - 1` vertices reaches every isomorphism class
//! on `k`. Duplicates are removed by [`canonical_code`].

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::metric::Graph;

pub const MAX_CATALOG_K: usize = 8;
pub const MAX_TREE_K: usize = 11;

/// Isomorphism-invariant code: the lexicographically smallest upper-triangle
/// adjacency bitstring over all orderings compatible with colour refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let k = g.k();
    assert!(k <= MAX_TREE_K, "canonical_code supports at most {MAX_TREE_K} vertices");
    let colors = refine(g);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let top = colors.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..top {
        cells.push((0..k).filter(|&v| colors[v] == c).collect());
    }
    let mut order = Vec::with_capacity(k);
    let mut best = u64::MAX;
    search(g, &mut cells, 0, &mut order, &mut best);
    best
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.k() == h.k() && g.edge_count() == h.edge_count() && canonical_code(g) == canonical_code(h)
}

/// Colour refinement with colours named by rank of their signature, which
/// keeps the final partition invariant under relabelling.
fn refine(g: &Graph) -> Vec<usize> {
    let k = g.k();
    let mut colors = vec![0usize; k];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..k)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let distinct: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        if distinct.len() == classes {
            return next;
        }
        classes = distinct.len();
        colors = next;
    }
}

fn search(g: &Graph, cells: &mut [Vec<usize>], cell: usize, order: &mut Vec<usize>, best: &mut u64) {
    if cell == cells.len() {
        *best = (*best).min(code(g, order));
        return;
    }
    let n = cells[cell].len();
    if n == 0 {
        return search(g, cells, cell + 1, order, best);
    }
    // Heap's algorithm would avoid the clone; cells are tiny
    let members = cells[cell].clone();
    for p in permutations(n) {
        let mark = order.len();
        order.extend(p.iter().map(|&i| members[i]));
        search(g, cells, cell + 1, order, best);
        order.truncate(mark);
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn code(g: &Graph, order: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            c = c << 1 | u64::from(g.adjacent(order[i], order[j]));
        }
    }
    // complement so that denser-early orderings sort first; any fixed choice works
    !c
}

/// All connected graphs on `k` vertices, one per isomorphism class, sorted
/// by edge count and then by canonical code.
pub fn connected_graphs(k: usize) -> Result<Vec<Graph>> {
    grow(k, MAX_CATALOG_K, "connected graph catalog", false)
}

/// All trees on `k` vertices up to isomorphism.
pub fn trees(k: usize) -> Result<Vec<Graph>> {
    grow(k, MAX_TREE_K, "tree catalog", true)
}

fn grow(k: usize, limit: usize, what: &'static str, leaves_only: bool) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::InvalidParameter("graphs need at least one vertex".into()));
    }
    if k > limit {
        return Err(Error::TooLarge { what, limit, got: k });
    }
    let mut level = vec![Graph::complete(1)];
    for m in 1..k {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 1u32..1 << m {
                if leaves_only && mask.count_ones() != 1 {
                    continue;
                }
                let mut edges = g.edges();
                edges.extend((0..m).filter(|&u| mask >> u & 1 == 1).map(|u| (u, m)));
                let h = Graph::new(m + 1, &edges)?;
                let c = canonical_code(&h);
                if seen.insert((h.edge_count(), c)) {
                    next.push((h.edge_count(), c, h));
                }
            }
        }
        next.sort_by_key(|(e, c, _)| (*e, *c));
        level = next.into_iter().map(|(_, _, h)| h).collect();
    }
    Ok(level)
}
