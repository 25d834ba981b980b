//! Delta-matroids on small ground sets and the symmetric exchange axiom.

use std::collections::VecDeque;

use num_traits::Zero;
use serde::Serialize;

use crate::blowup::MultiAffinePoly;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::metric::Graph;
use crate::subset::Subset;

/// Largest ground set for a materialized set system.
pub const MAX_FAMILY_K: usize = 24;
/// Largest ground set accepted by the exhaustive exchange verifier and the
/// graph infeasibility enumeration.
pub const MAX_EXCHANGE_K: usize = 14;

/// A set system on `{0..k-1}`, feasible sets kept in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaMatroid {
    k: usize,
    feasible: Vec<Subset>,
    member: Vec<bool>,
}

impl DeltaMatroid {
    /// Builds the family. Duplicates are merged; an empty family is
    /// rejected. Elements covered by no feasible set are allowed and
    /// reported by [`Self::uncovered`].
    pub fn new(k: usize, family: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if k > MAX_FAMILY_K {
            return Err(Error::TooLarge { what: "set-system ground set", limit: MAX_FAMILY_K, got: k });
        }
        let full = Subset::full(k);
        let mut member = vec![false; 1 << k];
        for s in family {
            if !s.is_subset_of(full) {
                let index = s.iter().find(|&i| i >= k).expect("outside ground set");
                return Err(Error::IndexOutOfRange { index, size: k });
            }
            member[s.bits() as usize] = true;
        }
        Self::from_membership(k, member)
    }

    fn from_membership(k: usize, member: Vec<bool>) -> Result<Self> {
        let mut feasible: Vec<Subset> = (0..member.len() as u32)
            .filter(|&m| member[m as usize])
            .map(Subset)
            .collect();
        if feasible.is_empty() {
            return Err(Error::InvalidParameter("a delta-matroid needs a feasible set".into()));
        }
        feasible.sort();
        Ok(Self { k, feasible, member })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn feasible(&self) -> &[Subset] {
        &self.feasible
    }

    pub fn is_feasible(&self, s: Subset) -> bool {
        self.member.get(s.bits() as usize).copied().unwrap_or(false)
    }

    /// Subsets of the ground set that are not feasible, canonically ordered.
    pub fn infeasible(&self) -> Vec<Subset> {
        Subset::all(self.k).into_iter().filter(|s| !self.is_feasible(*s)).collect()
    }

    /// Ground elements lying in no feasible set.
    pub fn uncovered(&self) -> Subset {
        let covered = self.feasible.iter().fold(Subset::EMPTY, |a, s| a.union(*s));
        Subset::full(self.k).symmetric_difference(covered)
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            k: self.k,
            feasible: self.feasible.iter().map(|s| s.to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidJson {
    pub k: usize,
    pub feasible: Vec<Vec<usize>>,
}

/// A triple `(A, B, x)` with `x ∈ A Δ B`. `violation` is true when no
/// `y ∈ A Δ B` makes `A Δ {x, y}` feasible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    #[serde(rename = "A")]
    pub a: Subset,
    #[serde(rename = "B")]
    pub b: Subset,
    pub x: usize,
    pub violation: bool,
}

/// `F` feasible iff `F = ∅` or `M[F, F]` is nonsingular.
pub fn linear_matroid(m: &RationalMatrix) -> Result<DeltaMatroid> {
    if !m.is_symmetric() {
        return Err(if m.is_square() {
            Error::NotSymmetric
        } else {
            Error::Dimension("expected a square matrix".into())
        });
    }
    let k = m.rows();
    if k > MAX_FAMILY_K {
        return Err(Error::TooLarge { what: "set-system ground set", limit: MAX_FAMILY_K, got: k });
    }
    let mut member = vec![false; 1 << k];
    member[0] = true;
    for mask in 1..1u32 << k {
        member[mask as usize] = !m.principal_minor(&Subset(mask).to_vec())?.is_zero();
    }
    DeltaMatroid::from_membership(k, member)
}

/// Subsets carrying a nonzero coefficient.
pub fn support_matroid(p: &MultiAffinePoly) -> Result<DeltaMatroid> {
    DeltaMatroid::new(p.k(), p.terms().keys().copied())
}

/// Tests the exchange axiom at one triple.
pub fn check_exchange_at(d: &DeltaMatroid, a: Subset, b: Subset, x: usize) -> Result<ExchangeWitness> {
    for s in [a, b] {
        if !d.is_feasible(s) {
            return Err(Error::Precondition(format!("{s} is not feasible")));
        }
    }
    let delta = a.symmetric_difference(b);
    if !delta.contains(x) {
        return Err(Error::Precondition(format!("{x} is not in the symmetric difference")));
    }
    let ok = delta.iter().any(|y| d.is_feasible(a.toggle(x).toggle_if_distinct(x, y)));
    Ok(ExchangeWitness { a, b, x, violation: !ok })
}

trait ToggleExt {
    fn toggle_if_distinct(self, x: usize, y: usize) -> Self;
}

impl ToggleExt for Subset {
    fn toggle_if_distinct(self, x: usize, y: usize) -> Self {
        if x == y {
            self
        } else {
            self.toggle(y)
        }
    }
}

/// Exhaustive check of the symmetric exchange axiom. Returns the first
/// violation in the order: `A` canonical, then `B` canonical, then `x`
/// ascending; `None` when the axiom holds.
pub fn verify_exchange(d: &DeltaMatroid) -> Result<Option<ExchangeWitness>> {
    let k = d.k;
    if k > MAX_EXCHANGE_K {
        return Err(Error::TooLarge { what: "exchange verification ground set", limit: MAX_EXCHANGE_K, got: k });
    }
    let mut y_mask = vec![0u32; k];
    for &a in &d.feasible {
        // y_mask[x]: the y with A Δ {x, y} feasible
        for (x, ym) in y_mask.iter_mut().enumerate() {
            let ax = a.toggle(x);
            *ym = (0..k)
                .filter(|&y| d.is_feasible(ax.toggle_if_distinct(x, y)))
                .fold(0, |m, y| m | 1 << y);
        }
        for &b in &d.feasible {
            let delta = a.symmetric_difference(b);
            if let Some(x) = delta.iter().find(|&x| y_mask[x] & delta.bits() == 0) {
                return Ok(Some(ExchangeWitness { a, b, x, violation: true }));
            }
        }
    }
    Ok(None)
}

fn require_tree(t: &Graph) -> Result<()> {
    if t.is_tree() {
        Ok(())
    } else {
        Err(Error::NotATree)
    }
}

/// Vertex set of the smallest subtree containing `i`.
pub fn steiner_tree(t: &Graph, i: Subset) -> Result<Subset> {
    require_tree(t)?;
    if i.is_empty() {
        return Err(Error::InvalidParameter("the terminal set must be nonempty".into()));
    }
    if let Some(index) = i.iter().find(|&v| v >= t.k()) {
        return Err(Error::IndexOutOfRange { index, size: t.k() });
    }
    let mut alive = Subset::full(t.k());
    let mut deg: Vec<usize> = (0..t.k()).map(|v| t.degree(v)).collect();
    let mut queue: VecDeque<usize> = (0..t.k()).filter(|&v| deg[v] <= 1 && !i.contains(v)).collect();
    while let Some(v) = queue.pop_front() {
        if !alive.contains(v) {
            continue;
        }
        alive = alive.without(v);
        for w in t.neighbors(v) {
            if alive.contains(w) {
                deg[w] -= 1;
                if deg[w] <= 1 && !i.contains(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(alive)
}

/// `I` is infeasible iff two leaves of its Steiner tree share a neighbour.
pub fn tree_matroid(t: &Graph) -> Result<DeltaMatroid> {
    require_tree(t)?;
    let k = t.k();
    if k < 2 {
        return Err(Error::InvalidParameter("a tree matroid needs at least 2 vertices".into()));
    }
    if k > MAX_FAMILY_K {
        return Err(Error::TooLarge { what: "set-system ground set", limit: MAX_FAMILY_K, got: k });
    }
    let mut member = vec![true; 1 << k];
    for mask in 1..1u32 << k {
        let i = Subset(mask);
        if i.len() < 2 {
            continue;
        }
        let s = steiner_tree(t, i)?;
        let mut seen_parent = Subset::EMPTY;
        for v in s.iter() {
            let mut nb = t.neighbors(v).filter(|&w| s.contains(w));
            if let (Some(p), None) = (nb.next(), nb.next()) {
                if seen_parent.contains(p) {
                    member[mask as usize] = false;
                    break;
                }
                seen_parent = seen_parent.with(p);
            }
        }
    }
    DeltaMatroid::from_membership(k, member)
}

/// `2^{0..k-1}` minus `{i, i+2}` and `{i, i+1, i+2}`.
pub fn path_matroid(k: usize) -> Result<DeltaMatroid> {
    if k < 3 {
        return Err(Error::InvalidParameter("path matroid needs k ≥ 3".into()));
    }
    if k > MAX_FAMILY_K {
        return Err(Error::TooLarge { what: "set-system ground set", limit: MAX_FAMILY_K, got: k });
    }
    let mut member = vec![true; 1 << k];
    for i in 0..k - 2 {
        member[(0b101u32 << i) as usize] = false;
        member[(0b111u32 << i) as usize] = false;
    }
    DeltaMatroid::from_membership(k, member)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfeasibleKind {
    /// Witness subgraphs need only be connected.
    First,
    /// Witness subgraphs must be isometrically embedded.
    Second,
}

/// The set system of subsets that are not infeasible of the given kind:
/// `I` is infeasible when some `Ĩ ⊇ I` induces a connected (first kind) or
/// distance-preserving (second kind) subgraph in which two distinct
/// members of `I` have the same neighbours. The exchange axiom is not
/// assumed.
pub fn graph_infeasible_systems(g: &Graph, kind: InfeasibleKind) -> Result<DeltaMatroid> {
    let k = g.k();
    if k > MAX_EXCHANGE_K {
        return Err(Error::TooLarge { what: "infeasibility enumeration ground set", limit: MAX_EXCHANGE_K, got: k });
    }
    let nbr: Vec<u32> = (0..k).map(|v| g.neighbors(v).fold(0, |m, w| m | 1 << w)).collect();
    let dist = g.distances();
    let mut member = vec![true; 1 << k];
    for tilde in 1..1u32 << k {
        if tilde.count_ones() < 2 {
            continue;
        }
        let ok = match kind {
            InfeasibleKind::First => induced_connected(&nbr, tilde),
            InfeasibleKind::Second => induced_isometric(&nbr, &dist, tilde),
        };
        if !ok {
            continue;
        }
        let verts = Subset(tilde).to_vec();
        for (ai, &v1) in verts.iter().enumerate() {
            for &v2 in &verts[ai + 1..] {
                if nbr[v1] & tilde != nbr[v2] & tilde {
                    continue;
                }
                let pair = Subset::from_indices([v1, v2]);
                for rest in Subset(tilde).symmetric_difference(pair).submasks() {
                    member[rest.union(pair).bits() as usize] = false;
                }
            }
        }
    }
    DeltaMatroid::from_membership(k, member)
}

fn bfs_within(nbr: &[u32], within: u32, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; nbr.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for w in Subset(nbr[u] & within).iter() {
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

fn induced_connected(nbr: &[u32], within: u32) -> bool {
    let s = within.trailing_zeros() as usize;
    let d = bfs_within(nbr, within, s);
    Subset(within).iter().all(|v| d[v] != usize::MAX)
}

fn induced_isometric(nbr: &[u32], dist: &[Vec<usize>], within: u32) -> bool {
    Subset(within).iter().all(|s| {
        let d = bfs_within(nbr, within, s);
        Subset(within).iter().all(|v| d[v] == dist[s][v])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blowup_polynomial;
    use crate::rational::int;

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().copied())
    }

    /// Direct transcription of the exchange axiom.
    fn naive_exchange(d: &DeltaMatroid) -> bool {
        d.feasible().iter().all(|&a| {
            d.feasible().iter().all(|&b| {
                let delta = a.symmetric_difference(b);
                delta.iter().all(|x| {
                    delta.iter().any(|y| {
                        let t = if x == y { a.toggle(x) } else { a.toggle(x).toggle(y) };
                        d.is_feasible(t)
                    })
                })
            })
        })
    }

    #[test]
    fn linear_examples() {
        let id = linear_matroid(&RationalMatrix::identity(3)).unwrap();
        assert_eq!(id.feasible().len(), 8);
        let p3 = Graph::path(3).metric().unwrap().modified_distance_matrix();
        let m = linear_matroid(&p3).unwrap();
        assert_eq!(m.infeasible(), vec![s(&[0, 2]), s(&[0, 1, 2])]);
        assert_eq!(m, path_matroid(3).unwrap());
        let p9 = Graph::path(9).metric().unwrap().modified_distance_matrix();
        assert!(!linear_matroid(&p9).unwrap().is_feasible(Subset::full(9)));
        let asym = RationalMatrix::from_int_rows(&[[1, 2], [0, 1]]);
        assert_eq!(linear_matroid(&asym), Err(Error::NotSymmetric));
    }

    #[test]
    fn support_equals_linear() {
        for g in [Graph::path(3), Graph::complete(3), Graph::star(4), Graph::cycle(5).unwrap()] {
            let x = g.metric().unwrap();
            let p = blowup_polynomial(&x).unwrap();
            assert_eq!(support_matroid(&p).unwrap(), linear_matroid(&x.modified_distance_matrix()).unwrap());
        }
        let k3 = blowup_polynomial(&Graph::complete(3).metric().unwrap()).unwrap();
        assert_eq!(support_matroid(&k3).unwrap().feasible().len(), 8);
    }

    #[test]
    fn verifier_matches_naive_check() {
        // all set systems on 3 elements containing ∅
        for fam in 0u32..1 << 7 {
            let sets = std::iter::once(Subset::EMPTY)
                .chain((0..7).filter(|b| fam >> b & 1 == 1).map(|b| Subset(b + 1)));
            let d = DeltaMatroid::new(3, sets).unwrap();
            let w = verify_exchange(&d).unwrap();
            assert_eq!(w.is_none(), naive_exchange(&d), "{:?}", d.feasible());
            if let Some(w) = w {
                assert!(check_exchange_at(&d, w.a, w.b, w.x).unwrap().violation);
            }
        }
    }

    #[test]
    fn verifier_on_known_families() {
        let p6 = Graph::path(6).metric().unwrap().modified_distance_matrix();
        assert_eq!(verify_exchange(&linear_matroid(&p6).unwrap()).unwrap(), None);
        let bad = DeltaMatroid::new(3, [Subset::EMPTY, s(&[0, 1, 2])]).unwrap();
        let w = verify_exchange(&bad).unwrap().unwrap();
        assert_eq!((w.a, w.b, w.x), (Subset::EMPTY, s(&[0, 1, 2]), 0));
        let ok = DeltaMatroid::new(2, [Subset::EMPTY, s(&[0, 1])]).unwrap();
        assert_eq!(verify_exchange(&ok).unwrap(), None);
        assert!(verify_exchange(&DeltaMatroid::new(15, [Subset::EMPTY]).unwrap()).is_err());
    }

    #[test]
    fn steiner_examples() {
        let p3 = Graph::path(3);
        assert_eq!(steiner_tree(&p3, s(&[0, 2])).unwrap(), s(&[0, 1, 2]));
        let star = Graph::star(3);
        assert_eq!(steiner_tree(&star, s(&[1, 2])).unwrap(), s(&[0, 1, 2]));
        assert_eq!(steiner_tree(&star, s(&[3])).unwrap(), s(&[3]));
        assert_eq!(steiner_tree(&Graph::cycle(3).unwrap(), s(&[0])), Err(Error::NotATree));
        assert!(steiner_tree(&star, Subset::EMPTY).is_err());
    }

    #[test]
    fn tree_matroids() {
        assert_eq!(tree_matroid(&Graph::complete(2)).unwrap().feasible().len(), 4);
        let star = tree_matroid(&Graph::star(3)).unwrap();
        for i in Subset::all(4) {
            let leaves = i.without(0).len();
            assert_eq!(star.is_feasible(i), leaves < 2, "{i}");
        }
        for k in 3..=10 {
            assert_eq!(tree_matroid(&Graph::path(k)).unwrap(), path_matroid(k).unwrap());
        }
        let t9 = tree_matroid(&Graph::path(9)).unwrap();
        assert!(t9.is_feasible(Subset::full(9)));
        assert!(path_matroid(2).is_err());
    }

    #[test]
    fn graph_systems_on_trees() {
        for t in [Graph::path(5), Graph::star(4), Graph::new(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap()] {
            let m = tree_matroid(&t).unwrap();
            assert_eq!(graph_infeasible_systems(&t, InfeasibleKind::First).unwrap(), m);
            assert_eq!(graph_infeasible_systems(&t, InfeasibleKind::Second).unwrap(), m);
        }
    }

    #[test]
    fn second_kind_sets_have_zero_coefficients() {
        let g = Graph::cycle(5).unwrap();
        let p = blowup_polynomial(&g.metric().unwrap()).unwrap();
        let m2 = graph_infeasible_systems(&g, InfeasibleKind::Second).unwrap();
        for i in m2.infeasible() {
            assert_eq!(p.coeff(i), int(0));
        }
    }
}
