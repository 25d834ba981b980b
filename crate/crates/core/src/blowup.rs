//! The multi-affine blowup-polynomial `p_X(n) = det(Δ_a + Δ_n 𝒟_X)` and its
//! specializations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::metric::MetricSpace;
use crate::poly::UnivariatePoly;
use crate::rational::{format_rational, int, parse_rational, pow, sign_pow, Rational};
use crate::subset::Subset;

/// Largest ground set for which all `2^k` coefficients are enumerated.
pub const MAX_POLY_K: usize = 24;

/// A multi-affine polynomial in `n_0, …, n_{k-1}`; only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiAffinePoly {
    k: usize,
    terms: BTreeMap<Subset, Rational>,
}

impl MultiAffinePoly {
    pub fn new(k: usize, terms: impl IntoIterator<Item = (Subset, Rational)>) -> Result<Self> {
        check_k(k)?;
        let full = Subset::full(k);
        let mut map = BTreeMap::new();
        for (s, c) in terms {
            if !s.is_subset_of(full) {
                let index = s.iter().find(|&i| i >= k).expect("outside ground set");
                return Err(Error::IndexOutOfRange { index, size: k });
            }
            if !c.is_zero() && map.insert(s, c).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate term {s}")));
            }
        }
        Ok(Self { k, terms: map })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Nonzero terms in canonical subset order.
    pub fn terms(&self) -> &BTreeMap<Subset, Rational> {
        &self.terms
    }

    pub fn coeff(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(Subset::EMPTY)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Subsets of `{0..k-1}` whose coefficient vanishes.
    pub fn zero_subsets(&self) -> Vec<Subset> {
        Subset::all(self.k)
            .into_iter()
            .filter(|s| !self.terms.contains_key(s))
            .collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(s, x)| (*s, x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.k {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.k
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(s, c)| s.iter().fold(c.clone(), |acc, i| acc * &point[i]))
            .sum())
    }

    /// `p(t, …, t)` collected by total degree.
    pub fn univariate(&self) -> UnivariatePoly {
        let mut c = vec![Rational::zero(); self.k + 1];
        for (s, x) in &self.terms {
            c[s.len()] += x;
        }
        UnivariatePoly::new(c)
    }

    pub fn homogenize(&self) -> HomogenizedPoly {
        HomogenizedPoly {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (*s, sign_pow(self.k - s.len()) * c))
                .collect(),
        }
    }

    /// `q(z) = p(-z) / p(-1, …, -1)`.
    pub fn reflected_normalized(&self) -> Result<Reflected> {
        let denom = self.evaluate(&vec![int(-1); self.k])?;
        if denom.is_zero() {
            return Err(Error::Precondition(
                "polynomial vanishes at (-1, …, -1); cannot normalize".into(),
            ));
        }
        let poly = Self {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (*s, sign_pow(s.len()) * c / &denom))
                .collect(),
        };
        let nonnegative = poly.terms.values().all(|c| !c.is_negative());
        let sums_to_one = poly.terms.values().sum::<Rational>().is_one();
        Ok(Reflected { poly, nonnegative, sums_to_one })
    }

    /// Mixed second partials at the origin: `H[v][w] = coeff({v,w})` for
    /// `v ≠ w`, zero on the diagonal.
    pub fn hessian(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.k, self.k, |v, w| {
            if v == w {
                Rational::zero()
            } else {
                self.coeff(Subset::from_indices([v, w]))
            }
        })
    }

    /// Whether each coefficient depends only on the size of its subset.
    pub fn is_fully_symmetric(&self) -> bool {
        let mut by_size: Vec<Option<Rational>> = vec![None; self.k + 1];
        Subset::all(self.k).into_iter().all(|s| {
            let c = self.coeff(s);
            match &by_size[s.len()] {
                Some(prev) => *prev == c,
                None => {
                    by_size[s.len()] = Some(c);
                    true
                }
            }
        })
    }

    /// Sets `n_j = 0` for every `j ∉ keep`, keeping the ground set.
    pub fn restrict_zero(&self, keep: Subset) -> Self {
        Self {
            k: self.k,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.is_subset_of(keep))
                .map(|(s, c)| (*s, c.clone()))
                .collect(),
        }
    }

    /// Sets `n_j = 0` for `j ∉ keep` and renumbers the survivors
    /// `keep[0], keep[1], …` as `0, 1, …`.
    pub fn restrict_to(&self, keep: &[usize]) -> Result<Self> {
        let mask = Subset::from_indices(keep.iter().copied());
        let mut terms = Vec::new();
        for (s, c) in self.terms.iter().filter(|(s, _)| s.is_subset_of(mask)) {
            let t = Subset::from_indices(
                s.iter().map(|i| keep.iter().position(|&x| x == i).expect("kept")),
            );
            terms.push((t, c.clone()));
        }
        Self::new(keep.len(), terms)
    }

    /// Variables renamed so that `n_v` becomes `n_{perm[v]}`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.k {
            return Err(Error::Dimension("permutation length".into()));
        }
        Self::new(
            self.k,
            self.terms
                .iter()
                .map(|(s, c)| (Subset::from_indices(s.iter().map(|i| perm[i])), c.clone())),
        )
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermJson {
                    subset: s.to_vec(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        check_k(j.k)?;
        let mut terms = Vec::new();
        for t in &j.terms {
            let s = Subset::try_from(t.subset.clone()).map_err(Error::Parse)?;
            terms.push((s, parse_rational(&t.coeff)?));
        }
        Self::new(j.k, terms)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k > MAX_POLY_K {
        return Err(Error::TooLarge {
            what: "ground set",
            limit: MAX_POLY_K,
            got: k,
        });
    }
    Ok(())
}

impl fmt::Debug for MultiAffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiAffinePoly(k={}) {self}", self.k)
    }
}

impl fmt::Display for MultiAffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if s.is_empty() || !a.is_one() {
                parts.push(a.to_string());
            }
            parts.extend(s.iter().map(|i| format!("n{i}")));
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Result of [`MultiAffinePoly::reflected_normalized`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflected {
    pub poly: MultiAffinePoly,
    pub nonnegative: bool,
    pub sums_to_one: bool,
}

/// Serialized form: `{"k": …, "terms": [{"subset": […], "coeff": "p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub subset: Vec<usize>,
    pub coeff: String,
}

/// Homogenization `p̃(z_0, z_1, …, z_k) = (-z_0)^k p(z_1/(-z_0), …)`.
///
/// Key `J ⊆ {0..k-1}` holds the coefficient of `z_0^{k-|J|} Π_{j∈J} z_{j+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogenizedPoly {
    k: usize,
    terms: BTreeMap<Subset, Rational>,
}

impl HomogenizedPoly {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &BTreeMap<Subset, Rational> {
        &self.terms
    }

    pub fn coeff(&self, j: Subset) -> Rational {
        self.terms.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `(z_0, z_1, …, z_k)`; `z` holds all `k + 1` coordinates.
    pub fn evaluate(&self, z: &[Rational]) -> Result<Rational> {
        if z.len() != self.k + 1 {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, expected {}",
                z.len(),
                self.k + 1
            )));
        }
        Ok(self
            .terms
            .iter()
            .map(|(s, c)| {
                let m = s.iter().fold(c.clone(), |acc, j| acc * &z[j + 1]);
                m * pow(&z[0], self.k - s.len())
            })
            .sum())
    }
}

/// Coefficient of `Π_{i∈I} n_i`: `det 𝒟_{I×I} · Π_{j∉I} (-2·nearest_j)`.
pub fn coefficient(x: &MetricSpace, i: Subset) -> Result<Rational> {
    let k = x.k();
    if let Some(bad) = i.iter().find(|&j| j >= k) {
        return Err(Error::IndexOutOfRange { index: bad, size: k });
    }
    let (m, a) = x.modified_matrices();
    coefficient_from(&m, &a, i)
}

fn coefficient_from(m: &RationalMatrix, a: &[Rational], i: Subset) -> Result<Rational> {
    let idx = i.to_vec();
    let mut c = m.principal_minor(&idx)?;
    if c.is_zero() {
        return Ok(c);
    }
    for (j, aj) in a.iter().enumerate() {
        if !i.contains(j) {
            c *= aj;
        }
    }
    Ok(c)
}

pub fn blowup_polynomial(x: &MetricSpace) -> Result<MultiAffinePoly> {
    let k = x.k();
    check_k(k)?;
    let (m, a) = x.modified_matrices();
    let mut terms = Vec::with_capacity(1 << k);
    for s in Subset::all(k) {
        terms.push((s, coefficient_from(&m, &a, s)?));
    }
    MultiAffinePoly::new(k, terms)
}

/// `u_X(n) = p_X(n, …, n)`.
pub fn univariate(x: &MetricSpace) -> Result<UnivariatePoly> {
    Ok(blowup_polynomial(x)?.univariate())
}

pub fn homogenize(p: &MultiAffinePoly) -> HomogenizedPoly {
    p.homogenize()
}

pub fn hessian(x: &MetricSpace) -> Result<RationalMatrix> {
    let k = x.k();
    let (m, a) = x.modified_matrices();
    let mut h = RationalMatrix::zeros(k, k);
    for v in 0..k {
        for w in v + 1..k {
            let c = coefficient_from(&m, &a, Subset::from_indices([v, w]))?;
            h[(v, w)] = c.clone();
            h[(w, v)] = c;
        }
    }
    Ok(h)
}

/// Families with closed-form blowup-polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Discrete metric on `k` points scaled by `c`.
    Complete { k: usize, c: Rational },
    /// `K_{r,s}`: variables `n_0..n_{r-1}` then `m_0..m_{s-1}`.
    Bipartite { r: usize, s: usize },
    /// `K_k` minus the edges `{0,1}, …, {0,l}`.
    Kkl { k: usize, l: usize },
}

pub fn reference_polynomial(family: &Family) -> Result<MultiAffinePoly> {
    let m2 = int(-2);
    match family {
        Family::Complete { k, c } => {
            let k = *k;
            if k < 2 || !c.is_positive() {
                return Err(Error::InvalidParameter("complete(k, c) needs k ≥ 2 and c > 0".into()));
            }
            check_k(k)?;
            let ck = pow(c, k);
            MultiAffinePoly::new(
                k,
                Subset::all(k).into_iter().map(|s| {
                    let e = s.len();
                    (s, &ck * pow(&m2, k - e) * int(1 + e as i64))
                }),
            )
        }
        Family::Bipartite { r, s } => {
            let (r, s) = (*r, *s);
            if r < 1 || s < 1 {
                return Err(Error::InvalidParameter("bipartite(r, s) needs r, s ≥ 1".into()));
            }
            check_k(r + s)?;
            let c = pow(&m2, r + s - 2);
            let mut terms = vec![(Subset::EMPTY, &c * int(4))];
            for i in 0..r + s {
                terms.push((Subset::singleton(i), &c * int(-4)));
            }
            for i in 0..r {
                for j in r..r + s {
                    terms.push((Subset::from_indices([i, j]), &c * int(3)));
                }
            }
            MultiAffinePoly::new(r + s, terms)
        }
        Family::Kkl { k, l } => {
            let (k, l) = (*k, *l);
            if k < 2 || l + 2 > k {
                return Err(Error::InvalidParameter("kkl(k, l) needs 0 ≤ l ≤ k - 2".into()));
            }
            check_k(k)?;
            let mid = Subset::from_indices(1..=l);
            MultiAffinePoly::new(
                k,
                Subset::all(k).into_iter().map(|sub| {
                    let r = sub.intersection(mid).len();
                    let s = sub.without(0).len() - r;
                    let c = if sub.contains(0) {
                        pow(&m2, k - r - s - 1) * int((1 - r as i64) * (s as i64 + 2))
                    } else {
                        pow(&m2, k - r - s) * int(1 + (r + s) as i64)
                    };
                    (sub, c)
                }),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{BlowupSizes, Graph};
    use crate::rational::frac;
    use crate::rng::Lcg;

    fn gp(g: &Graph) -> MultiAffinePoly {
        blowup_polynomial(&g.metric().unwrap()).unwrap()
    }

    fn s(v: &[usize]) -> Subset {
        Subset::from_indices(v.iter().copied())
    }

    /// `det(Δ_a + Δ_n 𝒟)` expanded symbolically by the Leibniz formula. Row
    /// `i` contributes `δ a_i + n_i 𝒟[i][σi]`, so every product stays
    /// multi-affine.
    fn leibniz(x: &MetricSpace) -> MultiAffinePoly {
        let (m, a) = x.modified_matrices();
        let k = x.k();
        let mut total: BTreeMap<Subset, Rational> = BTreeMap::new();
        let mut perm: Vec<usize> = (0..k).collect();
        permutations(&mut perm, 0, &mut |p| {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut cur: BTreeMap<Subset, Rational> = BTreeMap::from([(Subset::EMPTY, sign_pow(inversions))]);
            for i in 0..k {
                let c0 = if p[i] == i { a[i].clone() } else { Rational::zero() };
                let c1 = m[(i, p[i])].clone();
                let mut next = BTreeMap::new();
                for (sub, v) in &cur {
                    if !c0.is_zero() {
                        *next.entry(*sub).or_insert_with(Rational::zero) += v * &c0;
                    }
                    *next.entry(sub.with(i)).or_insert_with(Rational::zero) += v * &c1;
                }
                cur = next;
            }
            for (sub, v) in cur {
                *total.entry(sub).or_insert_with(Rational::zero) += v;
            }
        });
        MultiAffinePoly::new(k, total).unwrap()
    }

    fn permutations(p: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
        if at == p.len() {
            f(p);
            return;
        }
        for i in at..p.len() {
            p.swap(at, i);
            permutations(p, at + 1, f);
            p.swap(at, i);
        }
    }

    #[test]
    fn coefficient_examples() {
        let k3 = Graph::complete(3).metric().unwrap();
        assert_eq!(coefficient(&k3, Subset::EMPTY).unwrap(), int(-8));
        let p3 = Graph::path(3).metric().unwrap();
        assert_eq!(coefficient(&p3, s(&[0, 2])).unwrap(), int(0));
        assert_eq!(coefficient(&p3, s(&[0, 1])).unwrap(), int(-6));
        assert!(matches!(coefficient(&p3, s(&[3])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn small_graph_polynomials() {
        let k2 = gp(&Graph::complete(2));
        assert_eq!(k2.to_string(), "4 - 4*n0 - 4*n1 + 3*n0*n1");
        let p3 = gp(&Graph::path(3));
        let want = MultiAffinePoly::new(
            3,
            [
                (s(&[]), int(-8)),
                (s(&[0]), int(8)),
                (s(&[1]), int(8)),
                (s(&[2]), int(8)),
                (s(&[0, 1]), int(-6)),
                (s(&[1, 2]), int(-6)),
            ],
        )
        .unwrap();
        assert_eq!(p3, want);
        assert_eq!(p3.zero_subsets(), vec![s(&[0, 2]), s(&[0, 1, 2])]);
        let one = vec![int(1); 3];
        assert_eq!(p3.evaluate(&one).unwrap(), int(4));
        assert_eq!(k2.evaluate(&[int(1), int(1)]).unwrap(), int(-1));
        assert!(k2.evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn discrete_three_points_match_product_form() {
        let x = MetricSpace::discrete(3, &int(1)).unwrap();
        let p = blowup_polynomial(&x).unwrap();
        let mut r = Lcg::new(5);
        for _ in 0..10 {
            let n: Vec<Rational> = (0..3).map(|_| r.rational_in(-4, 4, 5)).collect();
            let m2: Vec<Rational> = n.iter().map(|v| v - int(2)).collect();
            let prod = &m2[0] * &m2[1] * &m2[2];
            let side = &n[0] * &m2[1] * &m2[2] + &n[1] * &m2[0] * &m2[2] + &n[2] * &m2[0] * &m2[1];
            assert_eq!(p.evaluate(&n).unwrap(), prod + side);
        }
    }

    #[test]
    fn univariate_examples() {
        let u = univariate(&Graph::complete(2).metric().unwrap()).unwrap();
        assert_eq!(u, UnivariatePoly::from_ints(&[4, -8, 3]));
        for k in 2..=6 {
            let u = univariate(&MetricSpace::discrete(k, &int(1)).unwrap()).unwrap();
            let mut want = UnivariatePoly::from_ints(&[-2, k as i64 + 1]);
            for _ in 1..k {
                want = want.mul(&UnivariatePoly::from_ints(&[-2, 1]));
            }
            assert_eq!(u, want);
        }
    }

    #[test]
    fn symbolic_expansion_agrees() {
        let mut r = Lcg::new(6);
        let graphs = [Graph::path(4), Graph::star(3), Graph::cycle(4).unwrap(), Graph::complete(4)];
        for g in &graphs {
            let x = g.metric().unwrap();
            assert_eq!(blowup_polynomial(&x).unwrap(), leibniz(&x));
        }
        for k in 2..=4 {
            for _ in 0..5 {
                let x = random_metric(&mut r, k);
                assert_eq!(blowup_polynomial(&x).unwrap(), leibniz(&x));
            }
        }
    }

    fn random_metric(r: &mut Lcg, k: usize) -> MetricSpace {
        // distances in [1, 2] always satisfy the triangle inequality
        let mut m = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in i + 1..k {
                let d = int(1) + r.rational_in(0, 1, 7);
                m[(i, j)] = d.clone();
                m[(j, i)] = d;
            }
        }
        crate::metric::validate_metric(&m).unwrap()
    }

    #[test]
    fn homogenization_and_reflection() {
        let k2 = gp(&Graph::complete(2));
        let h = k2.homogenize();
        assert_eq!(h.coeff(s(&[0, 1])), int(3));
        assert_eq!(h.coeff(s(&[0])), int(4));
        assert_eq!(h.coeff(s(&[1])), int(4));
        assert_eq!(h.coeff(s(&[])), int(4));
        // p̃(z0, z) = (-z0)^k p(z/(-z0))
        let z = [int(3), frac(1, 2), int(-2)];
        let z0 = &z[0];
        let inner: Vec<Rational> = z[1..].iter().map(|v| -(v / z0)).collect();
        assert_eq!(h.evaluate(&z).unwrap(), pow(&-z0.clone(), 2) * k2.evaluate(&inner).unwrap());
        let rf = k2.reflected_normalized().unwrap();
        assert!(rf.nonnegative && rf.sums_to_one);
        assert_eq!(rf.poly.coeff(s(&[0, 1])), frac(3, 15));
        assert!(gp(&Graph::complete(3)).reflected_normalized().unwrap().nonnegative);
        assert!(!gp(&Graph::path(4)).reflected_normalized().unwrap().nonnegative);
        assert!(!gp(&Graph::path(4)).homogenize().has_nonnegative_coefficients());
    }

    #[test]
    fn hessian_formula_for_graphs() {
        let p3 = Graph::path(3).metric().unwrap();
        let h = hessian(&p3).unwrap();
        assert_eq!((h[(0, 1)].clone(), h[(0, 2)].clone(), h[(1, 2)].clone()), (int(-6), int(0), int(-6)));
        assert_eq!(h, gp(&Graph::path(3)).hessian());
        for g in [Graph::path(5), Graph::star(4), Graph::cycle(5).unwrap(), Graph::complete(4)] {
            let x = g.metric().unwrap();
            let k = x.k();
            let d = x.modified_distance_matrix();
            let h = hessian(&x).unwrap();
            for v in 0..k {
                for w in 0..k {
                    let want = if v == w {
                        int(0)
                    } else {
                        pow(&int(-2), k) - pow(&int(-2), k - 2) * &d[(v, w)] * &d[(v, w)]
                    };
                    assert_eq!(h[(v, w)], want);
                }
            }
        }
    }

    #[test]
    fn full_symmetry() {
        assert!(gp(&Graph::complete(4)).is_fully_symmetric());
        assert!(!gp(&Graph::path(3)).is_fully_symmetric());
        let c = MultiAffinePoly::new(3, [(Subset::EMPTY, int(5))]).unwrap();
        assert!(c.is_fully_symmetric());
        let c0 = MultiAffinePoly::new(0, [(Subset::EMPTY, int(5))]).unwrap();
        assert!(c0.is_fully_symmetric());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(reference_polynomial(&Family::Bipartite { r: 1, s: 1 }).unwrap(), gp(&Graph::complete(2)));
        assert_eq!(
            reference_polynomial(&Family::Complete { k: 2, c: int(1) }).unwrap(),
            gp(&Graph::complete(2))
        );
        let x = MetricSpace::discrete(3, &frac(3, 2)).unwrap();
        assert_eq!(
            reference_polynomial(&Family::Complete { k: 3, c: frac(3, 2) }).unwrap(),
            blowup_polynomial(&x).unwrap()
        );
        // l = 0 with n_0 = 0 leaves -2 times the complete polynomial on k-1 variables
        let kk0 = reference_polynomial(&Family::Kkl { k: 4, l: 0 }).unwrap();
        let rest = kk0.restrict_to(&[1, 2, 3]).unwrap();
        assert_eq!(rest, gp(&Graph::complete(3)).scale(&int(-2)));
        assert!(reference_polynomial(&Family::Kkl { k: 4, l: 3 }).is_err());
        assert!(reference_polynomial(&Family::Bipartite { r: 0, s: 2 }).is_err());
    }

    #[test]
    fn copies_never_share_a_term() {
        let x = Graph::path(3).metric().unwrap();
        let n = BlowupSizes::new(vec![2, 1, 3]).unwrap();
        let origin = n.origin_map();
        let p = blowup_polynomial(&x.blowup(&n).unwrap()).unwrap();
        for sub in p.terms().keys() {
            let mut seen = [false; 3];
            for i in sub.iter() {
                assert!(!seen[origin[i]], "{sub:?}");
                seen[origin[i]] = true;
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = gp(&Graph::path(3));
        let j = p.to_json();
        assert_eq!(j.terms[0], TermJson { subset: vec![], coeff: "-8".into() });
        assert_eq!(MultiAffinePoly::from_json(&j).unwrap(), p);
        let bad = PolyJson { k: 2, terms: vec![TermJson { subset: vec![2], coeff: "1".into() }] };
        assert!(MultiAffinePoly::from_json(&bad).is_err());
    }
}
