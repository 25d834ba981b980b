//! Graph recovery, isometry and polynomial symmetry groups, twin detection
//! and the complete-multipartite condition battery.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::blowup::{blowup_polynomial, HomogenizedPoly, MultiAffinePoly};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::metric::Graph;
use crate::rational::{int, pow, Rational};
use crate::spectral::{distance_char_poly, line_restriction_sample, line_restriction_sample_homogenized, Verdict};
use crate::subset::Subset;

/// Largest graph for brute-force permutation search.
pub const MAX_PERMUTATION_K: usize = 9;
/// Largest graph for the Lorentzian Hessian battery.
pub const MAX_LORENTZ_K: usize = 6;

/// A set of permutations of `0..k`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsometryGroup {
    pub k: usize,
    pub permutations: Vec<Vec<usize>>,
}

impl IsometryGroup {
    fn from_perms(k: usize, mut permutations: Vec<Vec<usize>>) -> Self {
        permutations.sort();
        Self { k, permutations }
    }

    pub fn order(&self) -> usize {
        self.permutations.len()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.permutations.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Contains the identity and is closed under composition and inverses.
    pub fn is_group(&self) -> bool {
        let id: Vec<usize> = (0..self.k).collect();
        if !self.contains(&id) {
            return false;
        }
        self.permutations.iter().all(|p| {
            let mut inv = vec![0; self.k];
            for (i, &pi) in p.iter().enumerate() {
                inv[pi] = i;
            }
            self.contains(&inv)
                && self.permutations.iter().all(|q| {
                    let pq: Vec<usize> = q.iter().map(|&qi| p[qi]).collect();
                    self.contains(&pq)
                })
        })
    }

    /// Number of elements of each order, keyed by order.
    pub fn element_order_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for p in &self.permutations {
            let mut cur = p.clone();
            let mut n = 1;
            while cur.iter().enumerate().any(|(i, &c)| i != c) {
                cur = cur.iter().map(|&c| p[c]).collect();
                n += 1;
            }
            *out.entry(n).or_insert(0) += 1;
        }
        out
    }
}

/// Reads off the edges as the pairs whose coefficient is `3(-2)^{k-2}` and
/// confirms by recomputing the polynomial of the recovered graph.
pub fn recover_graph(p: &MultiAffinePoly) -> Result<Graph> {
    let k = p.k();
    if k < 2 {
        return Err(Error::NotGraphPolynomial);
    }
    let target = int(3) * pow(&int(-2), k - 2);
    let mut edges = Vec::new();
    for v in 0..k {
        for w in v + 1..k {
            if p.coeff(Subset::from_indices([v, w])) == target {
                edges.push((v, w));
            }
        }
    }
    let g = Graph::new(k, &edges).map_err(|_| Error::NotGraphPolynomial)?;
    if blowup_polynomial(&g.metric()?)? != *p {
        return Err(Error::NotGraphPolynomial);
    }
    Ok(g)
}

/// Distance-preserving vertex permutations.
pub fn isometry_group(g: &Graph) -> Result<IsometryGroup> {
    let k = g.k();
    if k > MAX_PERMUTATION_K {
        return Err(Error::TooLarge { what: "isometry search", limit: MAX_PERMUTATION_K, got: k });
    }
    let d = g.distances();
    let mut out = Vec::new();
    search(k, &mut Vec::new(), &mut vec![false; k], &mut |perm, v| {
        (0..v).all(|u| d[u][v] == d[perm[u]][perm[v]])
    }, &mut |perm| out.push(perm.to_vec()));
    Ok(IsometryGroup::from_perms(k, out))
}

/// Permutations `σ` with `coeff(σS) = coeff(S)` for all `S`.
pub fn polynomial_symmetries(p: &MultiAffinePoly) -> Result<IsometryGroup> {
    let k = p.k();
    if k > MAX_PERMUTATION_K {
        return Err(Error::TooLarge { what: "symmetry search", limit: MAX_PERMUTATION_K, got: k });
    }
    let c1: Vec<Rational> = (0..k).map(|i| p.coeff(Subset::singleton(i))).collect();
    let c2 = RationalMatrix::from_fn(k, k, |i, j| {
        if i == j {
            Rational::zero()
        } else {
            p.coeff(Subset::from_indices([i, j]))
        }
    });
    let mut out = Vec::new();
    search(
        k,
        &mut Vec::new(),
        &mut vec![false; k],
        &mut |perm, v| c1[v] == c1[perm[v]] && (0..v).all(|u| c2[(u, v)] == c2[(perm[u], perm[v])]),
        &mut |perm| {
            let full = p.terms().iter().all(|(s, c)| {
                p.terms().get(&Subset::from_indices(s.iter().map(|i| perm[i]))) == Some(c)
            });
            if full {
                out.push(perm.to_vec());
            }
        },
    );
    Ok(IsometryGroup::from_perms(k, out))
}

/// Backtracking over permutations; `ok(perm, v)` checks the newly assigned
/// position `v` against the earlier ones.
fn search(
    k: usize,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    ok: &mut impl FnMut(&[usize], usize) -> bool,
    emit: &mut impl FnMut(&[usize]),
) {
    let v = perm.len();
    if v == k {
        emit(perm);
        return;
    }
    for img in 0..k {
        if used[img] {
            continue;
        }
        perm.push(img);
        if ok(perm, v) {
            used[img] = true;
            search(k, perm, used, ok, emit);
            used[img] = false;
        }
        perm.pop();
    }
}

/// Two distinct vertices with the same neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinPair {
    pub v: usize,
    pub w: usize,
    pub distance: usize,
    pub minus_two_is_eigenvalue: bool,
}

/// The lexicographically first twin pair, if any.
pub fn is_nontrivial_blowup(g: &Graph) -> Result<Option<TwinPair>> {
    let k = g.k();
    for v in 0..k {
        for w in v + 1..k {
            if (0..k).all(|u| g.adjacent(v, u) == g.adjacent(w, u)) {
                let distance = g.distances()[v][w];
                let minus_two_is_eigenvalue = distance_char_poly(g)?.eval(&int(-2)).is_zero();
                return Ok(Some(TwinPair { v, w, distance, minus_two_is_eigenvalue }));
            }
        }
    }
    Ok(None)
}

/// The parts of a complete multipartite graph, or `None`. Parts are the
/// classes of "equal or non-adjacent", which must be an equivalence.
pub fn is_complete_multipartite(g: &Graph) -> Option<Vec<Vec<usize>>> {
    let k = g.k();
    let mut part = vec![usize::MAX; k];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..k {
        if part[v] != usize::MAX {
            continue;
        }
        let class: Vec<usize> = (0..k).filter(|&u| u == v || !g.adjacent(u, v)).collect();
        for &u in &class {
            if part[u] != usize::MAX {
                return None;
            }
            part[u] = parts.len();
        }
        parts.push(class);
    }
    for u in 0..k {
        for w in u + 1..k {
            if g.adjacent(u, w) == (part[u] == part[w]) {
                return None;
            }
        }
    }
    Some(parts)
}

/// Independent evaluation of the equivalent conditions for graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TlorentzReport {
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    /// Line restrictions of the homogenized polynomial in all `k + 1`
    /// variables.
    pub cond1_stable_sample: Verdict,
    pub cond2_homog_nonneg: bool,
    pub cond3_strongly_rayleigh: bool,
    pub cond4_psd: bool,
    pub cond5_multipartite: bool,
    /// `None` above [`MAX_LORENTZ_K`].
    pub cond6_lorentzian_hessians: Option<bool>,
}

impl TlorentzReport {
    /// Conditions 2 through 5 agree, condition 6 agrees when computed, and
    /// sampling did not refute stability when condition 4 holds.
    pub fn lockstep(&self) -> bool {
        let c = self.cond2_homog_nonneg;
        c == self.cond3_strongly_rayleigh
            && c == self.cond4_psd
            && c == self.cond5_multipartite
            && self.cond6_lorentzian_hessians.is_none_or(|l| l == c)
            && !(self.cond4_psd && self.cond1_stable_sample == Verdict::Refuted)
    }
}

pub fn tlorentz_report(g: &Graph, trials: usize, seed: u64) -> Result<TlorentzReport> {
    let x = g.metric()?;
    let p = blowup_polynomial(&x)?;
    let h = p.homogenize();
    let cond1 = line_restriction_sample_homogenized(&h, trials, seed)?.verdict;
    // p(-1, …, -1) = 0 leaves nothing to normalize by: not a distribution
    let cond3 = match p.reflected_normalized() {
        Ok(refl) => {
            refl.nonnegative && refl.sums_to_one && !line_restriction_sample(&refl.poly, trials, seed)?.refuted()
        }
        Err(Error::Precondition(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(TlorentzReport {
        k: g.k(),
        trials,
        seed,
        cond1_stable_sample: cond1,
        cond2_homog_nonneg: h.has_nonnegative_coefficients(),
        cond3_strongly_rayleigh: cond3,
        cond4_psd: x.modified_distance_matrix().is_psd()?,
        cond5_multipartite: is_complete_multipartite(g).is_some(),
        cond6_lorentzian_hessians: if g.k() <= MAX_LORENTZ_K {
            Some(is_lorentzian(&h)?)
        } else {
            None
        },
    })
}

/// Lorentzian test for the homogenized polynomial (degree `k` in `k + 1`
/// variables): nonnegative coefficients, M-convex support, and for every
/// `(k-2)`-fold derivative, a Hessian that is zero or has exactly one
/// positive eigenvalue.
pub fn is_lorentzian(h: &HomogenizedPoly) -> Result<bool> {
    let k = h.k();
    if k > MAX_LORENTZ_K {
        return Err(Error::TooLarge { what: "Lorentzian battery", limit: MAX_LORENTZ_K, got: k });
    }
    if !h.has_nonnegative_coefficients() || !support_is_m_convex(h) {
        return Ok(false);
    }
    if k < 2 {
        return Ok(true);
    }
    let mut ok = true;
    multisets(k + 1, k - 2, &mut Vec::new(), 0, &mut |alpha| {
        if ok {
            let hess = derivative_hessian(h, alpha);
            ok = hess
                .characteristic_polynomial()
                .map(|c| hess == RationalMatrix::zeros(k + 1, k + 1) || c.count_positive_roots() == 1)
                .unwrap_or(false);
        }
    });
    Ok(ok)
}

/// Non-decreasing sequences of length `len` over `0..n`.
fn multisets(n: usize, len: usize, cur: &mut Vec<usize>, from: usize, f: &mut impl FnMut(&[usize])) {
    if cur.len() == len {
        f(cur);
        return;
    }
    for i in from..n {
        cur.push(i);
        multisets(n, len, cur, i, f);
        cur.pop();
    }
}

/// Exponent vector of the monomial stored under `j`: `(k-|J|, 1_J)`.
fn exponents(k: usize, j: Subset) -> Vec<usize> {
    let mut e = vec![0; k + 1];
    e[0] = k - j.len();
    for i in j.iter() {
        e[i + 1] = 1;
    }
    e
}

fn support_is_m_convex(h: &HomogenizedPoly) -> bool {
    let k = h.k();
    let supp: Vec<Vec<usize>> = h.terms().keys().map(|&j| exponents(k, j)).collect();
    let has = |e: &[usize]| -> bool {
        if e[1..].iter().any(|&x| x > 1) {
            return false;
        }
        let j = Subset::from_indices((0..k).filter(|&i| e[i + 1] == 1));
        e[0] == k - j.len() && h.terms().contains_key(&j)
    };
    supp.iter().all(|a| {
        supp.iter().all(|b| {
            (0..=k).filter(|&i| a[i] > b[i]).all(|i| {
                (0..=k).filter(|&j| a[j] < b[j]).any(|j| {
                    let mut c = a.clone();
                    c[i] -= 1;
                    c[j] += 1;
                    has(&c)
                })
            })
        })
    })
}

/// Hessian of `∂^α p̃`, where `α` lists variable indices (0 is `z_0`).
fn derivative_hessian(h: &HomogenizedPoly, alpha: &[usize]) -> RationalMatrix {
    let k = h.k();
    let mut counts = vec![0usize; k + 1];
    for &a in alpha {
        counts[a] += 1;
    }
    let mut hess = RationalMatrix::zeros(k + 1, k + 1);
    if counts[1..].iter().any(|&c| c > 1) {
        return hess;
    }
    for (&j, c) in h.terms() {
        let mut e = exponents(k, j);
        if (0..=k).any(|i| counts[i] > e[i]) {
            continue;
        }
        // d^a/dz^a z^e = e!/(e-a)! z^{e-a}
        let mut coeff = c.clone();
        for _ in 0..counts[0] {
            coeff *= int(e[0] as i64);
            e[0] -= 1;
        }
        for i in 1..=k {
            e[i] -= counts[i];
        }
        let vars: Vec<usize> = (0..=k).flat_map(|i| std::iter::repeat_n(i, e[i])).collect();
        debug_assert_eq!(vars.len(), 2);
        let (a, b) = (vars[0], vars[1]);
        if a == b {
            hess[(a, a)] += &coeff * int(2);
        } else {
            hess[(a, b)] += &coeff;
            hess[(b, a)] += &coeff;
        }
    }
    hess
}
