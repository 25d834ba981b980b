//! Stability sampling, the distance-spectrum bridge, the normalized matrix
//! `C_X`, maxroots and mixed characteristic polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::blowup::{univariate, HomogenizedPoly, MultiAffinePoly};
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::metric::{Graph, MetricSpace};
use crate::poly::{RootInterval, UnivariatePoly};
use crate::rational::{int, pow, sign_pow, Rational};
use crate::rng::{Lcg, MAX_DENOMINATOR};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithStable,
    Refuted,
}

/// A line `t ↦ x + t·v` on which the restriction is not real-rooted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityFailure {
    pub trial: usize,
    #[serde(serialize_with = "crate::rational::ser_vec")]
    pub x: Vec<Rational>,
    #[serde(serialize_with = "crate::rational::ser_vec")]
    pub v: Vec<Rational>,
    #[serde(rename = "poly", serialize_with = "crate::rational::ser_vec")]
    pub restriction: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub trials: usize,
    pub failures: Vec<StabilityFailure>,
    pub verdict: Verdict,
}

impl StabilityReport {
    pub fn refuted(&self) -> bool {
        self.verdict == Verdict::Refuted
    }
}

/// Samples restrictions `t ↦ p(x + t·v)` with `x ∈ [-5,5]^k`, `v ∈ (0,5]^k`
/// (all coordinates of one line share a denominator `q ≤ 64`) and checks
/// each for real-rootedness. Identically zero restrictions pass.
pub fn line_restriction_sample(p: &MultiAffinePoly, trials: usize, seed: u64) -> Result<StabilityReport> {
    let terms = p.terms().iter().map(|(s, c)| (c.clone(), s.to_vec()));
    sample(p.k(), terms, trials, seed)
}

/// As [`line_restriction_sample`], over all `k + 1` variables of a
/// homogenized polynomial.
pub fn line_restriction_sample_homogenized(h: &HomogenizedPoly, trials: usize, seed: u64) -> Result<StabilityReport> {
    let k = h.k();
    let terms = h.terms().iter().map(|(s, c)| {
        let mut vars = vec![0; k - s.len()];
        vars.extend(s.iter().map(|j| j + 1));
        (c.clone(), vars)
    });
    sample(k + 1, terms, trials, seed)
}

/// `Σ c · Π (x_i + t v_i)` times `m · l^degree`, computed over the
/// integers, where `m` clears the coefficients (already applied to `terms`)
/// and `l` clears the line. Returns the product with `l^degree`.
fn integer_restriction(
    terms: &[(BigInt, Vec<usize>)],
    degree: usize,
    x: &[Rational],
    v: &[Rational],
) -> (UnivariatePoly, BigInt) {
    let l = x.iter().chain(v).fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let scaled = |r: &Rational| r.numer() * (&l / r.denom());
    let lines: Vec<(BigInt, BigInt)> = x.iter().zip(v).map(|(a, b)| (scaled(a), scaled(b))).collect();
    let l_pows: Vec<BigInt> = (0..=degree).map(|e| num_traits::pow(l.clone(), e)).collect();
    let mut acc = vec![BigInt::zero(); degree + 1];
    for (c, vars) in terms {
        let mut t = vec![c * &l_pows[degree - vars.len()]];
        for &i in vars {
            let (a, b) = &lines[i];
            let mut next = vec![BigInt::zero(); t.len() + 1];
            for (e, coef) in t.iter().enumerate() {
                next[e] += coef * a;
                next[e + 1] += coef * b;
            }
            t = next;
        }
        for (e, coef) in t.into_iter().enumerate() {
            acc[e] += coef;
        }
    }
    let poly = UnivariatePoly::new(acc.into_iter().map(Rational::from_integer).collect());
    (poly, l_pows[degree].clone())
}

fn sample(
    nvars: usize,
    terms: impl Iterator<Item = (Rational, Vec<usize>)>,
    trials: usize,
    seed: u64,
) -> Result<StabilityReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("at least one trial is required".into()));
    }
    let terms: Vec<(Rational, Vec<usize>)> = terms.collect();
    let m = terms.iter().fold(BigInt::one(), |m, (c, _)| m.lcm(c.denom()));
    let int_terms: Vec<(BigInt, Vec<usize>)> =
        terms.into_iter().map(|(c, vars)| (c.numer() * (&m / c.denom()), vars)).collect();
    let degree = int_terms.iter().map(|(_, vars)| vars.len()).max().unwrap_or(0);
    let mut rng = Lcg::new(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        // one denominator per line keeps the cleared coefficients small
        let q = rng.range_i64(1, MAX_DENOMINATOR as i64);
        let mut draw = |lo: i64, hi: i64| Rational::new(rng.range_i64(lo, hi).into(), q.into());
        let x: Vec<Rational> = (0..nvars).map(|_| draw(-5 * q, 5 * q)).collect();
        let v: Vec<Rational> = (0..nvars).map(|_| draw(1, 5 * q)).collect();
        let (r, l_pow) = integer_restriction(&int_terms, degree, &x, &v);
        if !r.is_zero() && !r.is_real_rooted()? {
            let scale = Rational::from_integer(&m * l_pow).recip();
            let restriction = r.scale(&scale).coeffs().to_vec();
            failures.push(StabilityFailure { trial, x, v, restriction });
        }
    }
    let verdict = if failures.is_empty() {
        Verdict::ConsistentWithStable
    } else {
        Verdict::Refuted
    };
    Ok(StabilityReport { trials, failures, verdict })
}

/// `det(tI - D_G)`.
pub fn distance_char_poly(g: &Graph) -> Result<UnivariatePoly> {
    g.metric()?.dist().characteristic_polynomial()
}

/// `(-1)^k n^k φ(2/n - 2)` with denominators cleared: `Σ_i (-1)^k c_i
/// n^{k-i} (2 - 2n)^i` for `φ = Σ c_i t^i`.
pub fn bridge_polynomial(phi: &UnivariatePoly, k: usize) -> UnivariatePoly {
    let base = UnivariatePoly::from_ints(&[2, -2]);
    let mut acc = UnivariatePoly::zero();
    let mut base_pow = UnivariatePoly::constant(Rational::one());
    for i in 0..=k {
        let c = phi.coeff(i);
        if !c.is_zero() {
            let mut shift = vec![Rational::zero(); k - i + 1];
            shift[k - i] = c;
            acc = acc.add(&UnivariatePoly::new(shift).mul(&base_pow));
        }
        base_pow = base_pow.mul(&base);
    }
    acc.scale(&sign_pow(k))
}

/// Whether `u_G(n) = (-1)^k n^k φ(2/n - 2)` holds coefficientwise.
pub fn spectrum_bridge_check(g: &Graph) -> Result<bool> {
    let x = g.metric()?;
    let phi = x.dist().characteristic_polynomial()?;
    Ok(univariate(&x)? == bridge_polynomial(&phi, x.k()))
}

/// The smallest eigenvalue of `D_G` strictly greater than `-2`.
pub fn smallest_eigenvalue_above_minus_two(g: &Graph, width: &Rational) -> Result<RootInterval> {
    distance_char_poly(g)?.isolate_min_root_above(&int(-2), width)
}

/// `(-Δ_a)^{-1} 𝒟_X`: row `i` of `𝒟_X` divided by `2·nearest_i`. Similar to
/// the symmetric matrix `C_X`, so it shares its characteristic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSimilar {
    pub matrix: RationalMatrix,
}

pub fn c_similar(x: &MetricSpace) -> CSimilar {
    let (m, a) = x.modified_matrices();
    let k = x.k();
    CSimilar {
        matrix: RationalMatrix::from_fn(k, k, |i, j| -(&m[(i, j)] / &a[i])),
    }
}

/// `det(tI - C_X)`.
pub fn c_char_poly(x: &MetricSpace) -> Result<UnivariatePoly> {
    c_similar(x).matrix.characteristic_polynomial()
}

/// Isolating interval for the largest root of `u_X`.
pub fn maxroot(x: &MetricSpace, width: &Rational) -> Result<RootInterval> {
    univariate(x)?.isolate_max_root(width)
}

/// The mixed characteristic polynomial of `{√C E_jj √C}` computed from its
/// definition: `Π(1 - ∂_j)` applied to `det(z_0 I + Z Ĉ)` at `z = 0`,
/// which leaves `Σ_J (-1)^{|J|} det(Ĉ_{J×J}) z_0^{k-|J|}`.
pub fn mixed_char_poly(x: &MetricSpace) -> Result<UnivariatePoly> {
    let c = c_similar(x).matrix;
    let k = x.k();
    let mut coeffs = vec![Rational::zero(); k + 1];
    for j in Subset::all(k) {
        let minor = c.principal_minor(&j.to_vec())?;
        coeffs[k - j.len()] += sign_pow(j.len()) * minor;
    }
    Ok(UnivariatePoly::new(coeffs))
}

/// `det(Δ_a)^{-1} z_0^k u_X(1/z_0)`.
pub fn inverted_univariate(x: &MetricSpace) -> Result<UnivariatePoly> {
    let u = univariate(x)?;
    let k = x.k();
    let det_a: Rational = x.modified_matrices().1.iter().product();
    let coeffs = (0..=k).map(|i| u.coeff(k - i) / &det_a).collect();
    Ok(UnivariatePoly::new(coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixedCheck {
    Applicable(bool),
    NotApplicable,
}

/// Compares the mixed characteristic polynomial with `det(z_0 I - C_X)` and
/// with the inverted univariate polynomial. Applies only when `𝒟_X` is PSD.
pub fn mixed_char_poly_check(x: &MetricSpace) -> Result<MixedCheck> {
    if !x.modified_distance_matrix().is_psd()? {
        return Ok(MixedCheck::NotApplicable);
    }
    let mu = mixed_char_poly(x)?;
    let ok = mu == c_char_poly(x)? && mu == inverted_univariate(x)?;
    Ok(MixedCheck::Applicable(ok))
}

/// `u_{X[n·1]}(t)` predicted from `u_X`: `u_X(n t) · Π a_i^{n-1}`.
pub fn scaled_univariate(x: &MetricSpace, n: usize) -> Result<UnivariatePoly> {
    if n == 0 {
        return Err(Error::InvalidParameter("scale must be at least 1".into()));
    }
    let u = univariate(x)?;
    let factor: Rational = x.modified_matrices().1.iter().map(|a| pow(a, n - 1)).product();
    let nn = int(n as i64);
    Ok(UnivariatePoly::new(
        u.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * pow(&nn, i) * &factor)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blowup_polynomial;
    use crate::metric::BlowupSizes;
    use crate::poly::default_width;
    use crate::rational::frac;

    fn p(c: &[i64]) -> UnivariatePoly {
        UnivariatePoly::from_ints(c)
    }

    #[test]
    fn sampling() {
        let k2 = blowup_polynomial(&Graph::complete(2).metric().unwrap()).unwrap();
        let r = line_restriction_sample(&k2, 100, 1).unwrap();
        assert_eq!((r.trials, r.verdict), (100, Verdict::ConsistentWithStable));
        let ctl = MultiAffinePoly::new(
            2,
            [(Subset::EMPTY, int(1)), (Subset::from_indices([0, 1]), int(1))],
        )
        .unwrap();
        let r = line_restriction_sample(&ctl, 100, 1).unwrap();
        assert!(r.refuted());
        let f = &r.failures[0];
        assert!(!UnivariatePoly::new(f.restriction.clone()).is_real_rooted().unwrap());
        // reproducible
        assert_eq!(r, line_restriction_sample(&ctl, 100, 1).unwrap());
        assert!(line_restriction_sample(&ctl, 0, 1).is_err());
    }

    #[test]
    fn homogenized_sampling_matches_evaluation() {
        let x = Graph::complete(3).metric().unwrap();
        let h = blowup_polynomial(&x).unwrap().homogenize();
        let r = line_restriction_sample_homogenized(&h, 30, 9).unwrap();
        assert!(!r.refuted());
    }

    #[test]
    fn distance_spectra() {
        assert_eq!(distance_char_poly(&Graph::complete(2)).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(
            distance_char_poly(&Graph::complete(3)).unwrap(),
            p(&[-2, 1]).mul(&p(&[1, 1])).mul(&p(&[1, 1]))
        );
        let phi9 = distance_char_poly(&Graph::path(9)).unwrap();
        assert!(phi9.eval(&int(-2)).is_zero());
        for g in [Graph::complete(2), Graph::path(5), Graph::star(3), Graph::path(9)] {
            assert!(spectrum_bridge_check(&g).unwrap());
        }
        let u9 = univariate(&Graph::path(9).metric().unwrap()).unwrap();
        assert!(u9.degree().unwrap() < 9);
        // multiplicity of -2 equals the degree drop
        let mut mult = 0;
        let mut q = phi9.clone();
        while q.eval(&int(-2)).is_zero() {
            q = q.div_rem(&p(&[2, 1])).unwrap().0;
            mult += 1;
        }
        assert_eq!(u9.degree().unwrap() + mult, 9);
    }

    #[test]
    fn c_matrix() {
        let k2 = Graph::complete(2).metric().unwrap();
        assert_eq!(
            c_char_poly(&k2).unwrap(),
            UnivariatePoly::from_roots(&[frac(3, 2), frac(1, 2)])
        );
        let iso = MetricSpace::from_int_rows(&[[0, 1, 4], [1, 0, 4], [4, 4, 0]]).unwrap();
        let c = c_similar(&iso).matrix;
        assert_eq!(c.determinant().unwrap(), frac(-1, 4));
        assert!(c_char_poly(&iso).unwrap().count_positive_roots() >= 2);
    }

    #[test]
    fn maxroots() {
        let w = default_width();
        for k in 2..=5 {
            let x = Graph::complete(k).metric().unwrap();
            assert_eq!(maxroot(&x, &w).unwrap(), RootInterval::exact(int(2)));
        }
        let b = Graph::complete(3).blowup(&BlowupSizes::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(maxroot(&b.metric().unwrap(), &w).unwrap(), RootInterval::exact(int(1)));
    }

    #[test]
    fn mixed_polynomial() {
        for g in [Graph::complete(3), Graph::complete_multipartite(&[2, 3]).unwrap()] {
            assert_eq!(mixed_char_poly_check(&g.metric().unwrap()).unwrap(), MixedCheck::Applicable(true));
        }
        assert_eq!(mixed_char_poly_check(&Graph::path(4).metric().unwrap()).unwrap(), MixedCheck::NotApplicable);
        // the identity with the characteristic polynomial holds regardless of PSD
        let x = Graph::path(4).metric().unwrap();
        assert_eq!(mixed_char_poly(&x).unwrap(), c_char_poly(&x).unwrap());
        assert_eq!(inverted_univariate(&x).unwrap(), c_char_poly(&x).unwrap());
    }

    #[test]
    fn scaling_law() {
        for g in [Graph::path(3), Graph::star(3), Graph::complete(2)] {
            let x = g.metric().unwrap();
            for n in 2..=3 {
                let b = x.blowup(&BlowupSizes::new(vec![n; x.k()]).unwrap()).unwrap();
                assert_eq!(univariate(&b).unwrap(), scaled_univariate(&x, n).unwrap());
            }
        }
    }
}
