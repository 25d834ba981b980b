//! The blowup monoid over ℚ: pairs `(a, D)` acting as block matrices
//! `M(a, D)` with `(i,j)` block `δ_ij a_i I + d_ij p_i q_jᵀ`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{pow, Rational};
use crate::rng::Lcg;

/// Block sizes `n_i` and the vectors `p_i, q_i ∈ ℚ^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidContext {
    sizes: Vec<usize>,
    p: Vec<Vec<Rational>>,
    q: Vec<Vec<Rational>>,
}

impl MonoidContext {
    pub fn new(p: Vec<Vec<Rational>>, q: Vec<Vec<Rational>>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::Dimension("p and q have different block counts".into()));
        }
        let mut sizes = Vec::with_capacity(p.len());
        for (i, (pi, qi)) in p.iter().zip(&q).enumerate() {
            if pi.is_empty() || pi.len() != qi.len() {
                return Err(Error::Dimension(format!("block {i}: p and q must be nonempty and equally long")));
            }
            sizes.push(pi.len());
        }
        Ok(Self { sizes, p, q })
    }

    /// `p_i = q_i = (1, …, 1)`.
    pub fn ones(sizes: &[usize]) -> Result<Self> {
        let v: Vec<Vec<Rational>> = sizes.iter().map(|&n| vec![Rational::one(); n]).collect();
        Self::new(v.clone(), v)
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    fn check(&self, e: &MonoidElement) -> Result<()> {
        let k = self.k();
        if e.a.len() != k || e.d.rows() != k || e.d.cols() != k {
            return Err(Error::Dimension(format!("element does not match {k} blocks")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidElement {
    pub a: Vec<Rational>,
    pub d: RationalMatrix,
}

impl MonoidElement {
    pub fn identity(k: usize) -> Self {
        Self {
            a: vec![Rational::one(); k],
            d: RationalMatrix::zeros(k, k),
        }
    }
}

/// `(a ∘ a', Δ_a D' + D N(a', D'))`.
pub fn monoid_product(ctx: &MonoidContext, e: &MonoidElement, f: &MonoidElement) -> Result<MonoidElement> {
    ctx.check(e)?;
    ctx.check(f)?;
    let a = e.a.iter().zip(&f.a).map(|(x, y)| x * y).collect();
    let left = RationalMatrix::diagonal(&e.a).mul(&f.d)?;
    let right = e.d.mul(&build_n(ctx, f)?)?;
    Ok(MonoidElement { a, d: left.add(&right)? })
}

pub fn build_m(ctx: &MonoidContext, e: &MonoidElement) -> Result<RationalMatrix> {
    ctx.check(e)?;
    let mut block = Vec::with_capacity(ctx.total());
    for (i, &n) in ctx.sizes.iter().enumerate() {
        for r in 0..n {
            block.push((i, r));
        }
    }
    let t = block.len();
    Ok(RationalMatrix::from_fn(t, t, |x, y| {
        let ((i, r), (j, s)) = (block[x], block[y]);
        let mut v = &e.d[(i, j)] * &ctx.p[i][r] * &ctx.q[j][s];
        if x == y {
            v += &e.a[i];
        }
        v
    }))
}

/// `Δ_a + diag(q_iᵀ p_i) D`.
pub fn build_n(ctx: &MonoidContext, e: &MonoidElement) -> Result<RationalMatrix> {
    ctx.check(e)?;
    let k = ctx.k();
    let lambda: Vec<Rational> = (0..k)
        .map(|i| ctx.q[i].iter().zip(&ctx.p[i]).map(|(x, y)| x * y).sum())
        .collect();
    Ok(RationalMatrix::from_fn(k, k, |i, j| {
        let mut v = &lambda[i] * &e.d[(i, j)];
        if i == j {
            v += &e.a[i];
        }
        v
    }))
}

/// `M(e ∘ f) = M(e) M(f)`.
pub fn morphism_check(ctx: &MonoidContext, e: &MonoidElement, f: &MonoidElement) -> Result<bool> {
    let lhs = build_m(ctx, &monoid_product(ctx, e, f)?)?;
    let rhs = build_m(ctx, e)?.mul(&build_m(ctx, f)?)?;
    Ok(lhs == rhs)
}

/// `(a^{-1}, -Δ_a^{-1} D N(a, D)^{-1})`.
pub fn inverse_element(ctx: &MonoidContext, e: &MonoidElement) -> Result<MonoidElement> {
    ctx.check(e)?;
    if let Some(i) = e.a.iter().position(Zero::is_zero) {
        return Err(Error::Precondition(format!("a[{i}] is zero")));
    }
    let n_inv = build_n(ctx, e)?
        .inverse()?
        .ok_or_else(|| Error::Precondition("N(a, D) is singular".into()))?;
    let a_inv: Vec<Rational> = e.a.iter().map(|x| x.recip()).collect();
    let d = RationalMatrix::diagonal(&a_inv)
        .mul(&e.d)?
        .mul(&n_inv)?
        .scale(&-Rational::one());
    Ok(MonoidElement { a: a_inv, d })
}

/// `M(inverse_element(e)) · M(e) = I`.
pub fn inverse_check(ctx: &MonoidContext, e: &MonoidElement) -> Result<bool> {
    let inv = inverse_element(ctx, e)?;
    let prod = build_m(ctx, &inv)?.mul(&build_m(ctx, e)?)?;
    Ok(prod == RationalMatrix::identity(ctx.total()))
}

/// `det M(a, D) = det N(a, D) · Π a_i^{n_i - 1}`.
pub fn determinant_check(ctx: &MonoidContext, e: &MonoidElement) -> Result<bool> {
    let lhs = build_m(ctx, e)?.determinant()?;
    let factor: Rational = e.a.iter().zip(&ctx.sizes).map(|(a, &n)| pow(a, n - 1)).product();
    Ok(lhs == build_n(ctx, e)?.determinant()? * factor)
}

/// A random context and element: `k ≤ 3` blocks of size `≤ 3`, entries in
/// `[-5, 5]` with denominators `≤ 10` (`p`, `q` nonzero). With `singular`, the last row of `D`
/// repeats the first (and a zero row when `k = 1`).
pub fn random_instance(rng: &mut Lcg, singular: bool) -> (MonoidContext, MonoidElement) {
    let k = rng.range_i64(1, 3) as usize;
    let entry = |rng: &mut Lcg| rng.rational_in(-5, 5, 10);
    let sizes: Vec<usize> = (0..k).map(|_| rng.range_i64(1, 3) as usize).collect();
    // nonzero p, q keep M injective in D, so the negative control is sharp
    let nonzero = |rng: &mut Lcg| loop {
        let v = entry(rng);
        if !v.is_zero() {
            break v;
        }
    };
    let p = sizes.iter().map(|&n| (0..n).map(|_| nonzero(rng)).collect()).collect();
    let q = sizes.iter().map(|&n| (0..n).map(|_| nonzero(rng)).collect()).collect();
    let ctx = MonoidContext::new(p, q).expect("consistent sizes");
    let a = (0..k).map(|_| entry(rng)).collect();
    let mut d = RationalMatrix::from_fn(k, k, |_, _| entry(rng));
    if singular {
        for j in 0..k {
            d[(k - 1, j)] = if k == 1 { Rational::zero() } else { d[(0, j)].clone() };
        }
    }
    (ctx, MonoidElement { a, d })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub instances: usize,
    pub morphism_failures: usize,
    pub determinant_failures: usize,
    pub inverse_failures: usize,
    /// Instances where the inverse formula did not apply (zero `a_i` or
    /// singular `N`).
    pub inverse_skipped: usize,
    /// Instances where dropping the `D·N` term changes the product.
    pub negative_control_applicable: usize,
    /// Of those, how many the morphism comparison caught.
    pub negative_control_detected: usize,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.morphism_failures == 0
            && self.determinant_failures == 0
            && self.inverse_failures == 0
            && self.negative_control_applicable > 0
            && self.negative_control_detected == self.negative_control_applicable
    }
}

/// Runs the monoid identities on `count` random instances; every other
/// instance has a singular `D`.
pub fn selftest(seed: u64, count: usize) -> Result<SelftestReport> {
    let mut rng = Lcg::new(seed);
    let mut r = SelftestReport {
        seed,
        instances: count,
        morphism_failures: 0,
        determinant_failures: 0,
        inverse_failures: 0,
        inverse_skipped: 0,
        negative_control_applicable: 0,
        negative_control_detected: 0,
    };
    for i in 0..count {
        let (ctx, e) = random_instance(&mut rng, i % 2 == 1);
        let f = random_partner(&mut rng, &ctx);
        if !morphism_check(&ctx, &e, &f)? {
            r.morphism_failures += 1;
        }
        if !determinant_check(&ctx, &e)? {
            r.determinant_failures += 1;
        }
        match inverse_check(&ctx, &e) {
            Ok(true) => {}
            Ok(false) => r.inverse_failures += 1,
            Err(Error::Precondition(_)) => r.inverse_skipped += 1,
            Err(err) => return Err(err),
        }
        let bad = corrupted_product(&e, &f)?;
        if bad == monoid_product(&ctx, &e, &f)? {
            continue;
        }
        r.negative_control_applicable += 1;
        if build_m(&ctx, &bad)? != build_m(&ctx, &e)?.mul(&build_m(&ctx, &f)?)? {
            r.negative_control_detected += 1;
        }
    }
    Ok(r)
}

fn random_partner(rng: &mut Lcg, ctx: &MonoidContext) -> MonoidElement {
    let k = ctx.k();
    // D' nonzero so the negative control always has a term to lose
    let a = (0..k).map(|_| rng.rational_in(-5, 5, 10)).collect();
    let mut d = RationalMatrix::from_fn(k, k, |_, _| rng.rational_in(-5, 5, 10));
    if d[(0, 0)].is_zero() {
        d[(0, 0)] = Rational::one();
    }
    MonoidElement { a, d }
}

/// `(a ∘ a', Δ_a D')`: the product with the `D·N` term removed.
fn corrupted_product(e: &MonoidElement, f: &MonoidElement) -> Result<MonoidElement> {
    Ok(MonoidElement {
        a: e.a.iter().zip(&f.a).map(|(x, y)| x * y).collect(),
        d: RationalMatrix::diagonal(&e.a).mul(&f.d)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::blowup_polynomial;
    use crate::metric::{BlowupSizes, Graph};
    use crate::rational::int;

    #[test]
    fn identity_laws_and_associativity() {
        let mut rng = Lcg::new(1);
        for _ in 0..20 {
            let (ctx, e) = random_instance(&mut rng, false);
            let id = MonoidElement::identity(ctx.k());
            assert_eq!(monoid_product(&ctx, &e, &id).unwrap(), e);
            assert_eq!(monoid_product(&ctx, &id, &e).unwrap(), e);
            assert_eq!(build_m(&ctx, &id).unwrap(), RationalMatrix::identity(ctx.total()));
            let f = random_partner(&mut rng, &ctx);
            let g = random_partner(&mut rng, &ctx);
            let l = monoid_product(&ctx, &monoid_product(&ctx, &e, &f).unwrap(), &g).unwrap();
            let r = monoid_product(&ctx, &e, &monoid_product(&ctx, &f, &g).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn small_blocks() {
        let ctx = MonoidContext::ones(&[2]).unwrap();
        let e = MonoidElement { a: vec![int(0)], d: RationalMatrix::from_int_rows(&[[1]]) };
        assert_eq!(build_m(&ctx, &e).unwrap(), RationalMatrix::from_int_rows(&[[1, 1], [1, 1]]));
        let z = MonoidElement { a: vec![int(3)], d: RationalMatrix::zeros(1, 1) };
        assert_eq!(build_n(&ctx, &z).unwrap(), RationalMatrix::from_int_rows(&[[3]]));
        assert!(matches!(inverse_check(&ctx, &e), Err(Error::Precondition(_))));
        let id = MonoidElement::identity(1);
        assert_eq!(inverse_element(&ctx, &id).unwrap(), id);
    }

    #[test]
    fn graph_specialization() {
        let x = Graph::path(3).metric().unwrap();
        let sizes = [2usize, 1, 3];
        let ctx = MonoidContext::ones(&sizes).unwrap();
        let (m, a) = x.modified_matrices();
        let e = MonoidElement { a, d: m };
        let blown = x.blowup(&BlowupSizes::new(sizes.to_vec()).unwrap()).unwrap();
        assert_eq!(&build_m(&ctx, &e).unwrap(), blown.dist());
        let n: Vec<Rational> = sizes.iter().map(|&s| int(s as i64)).collect();
        assert_eq!(
            build_n(&ctx, &e).unwrap().determinant().unwrap(),
            blowup_polynomial(&x).unwrap().evaluate(&n).unwrap()
        );
    }

    #[test]
    fn selftest_passes() {
        let r = selftest(7, 30).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.inverse_skipped < 30);
        assert!(r.negative_control_applicable >= 20);
    }

    #[test]
    fn transpose_route_determinant() {
        // det(Δ_a + Λ D) = det(Δ_a + D Λ)
        let mut rng = Lcg::new(3);
        for i in 0..20 {
            let (ctx, e) = random_instance(&mut rng, i % 2 == 0);
            let n = build_n(&ctx, &e).unwrap();
            let t = MonoidElement { a: e.a.clone(), d: e.d.transpose() };
            let n2 = build_n(&ctx, &t).unwrap().transpose();
            assert_eq!(n.determinant().unwrap(), n2.determinant().unwrap());
        }
    }

    /// Determinant over ℤ/2^64 by dynamic programming over used columns;
    /// no division anywhere.
    fn det_wrapping(m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        let mut dp = vec![0u64; 1 << n];
        dp[0] = 1;
        for mask in 0..1usize << n {
            let row = mask.count_ones() as usize;
            if row == n || dp[mask] == 0 {
                continue;
            }
            for c in 0..n {
                if mask >> c & 1 == 1 {
                    continue;
                }
                // moving column c past the larger already-used columns
                let above = (mask >> (c + 1)).count_ones();
                let term = dp[mask].wrapping_mul(m[row][c]);
                let next = &mut dp[mask | 1 << c];
                *next = if above % 2 == 0 { next.wrapping_add(term) } else { next.wrapping_sub(term) };
            }
        }
        dp[(1 << n) - 1]
    }

    #[test]
    fn wrapping_determinant_matches_exact() {
        let mut rng = Lcg::new(4);
        for n in 1..=5 {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.range_i64(-9, 9)).collect()).collect();
            let exact = RationalMatrix::from_int_rows(&rows).determinant().unwrap();
            let w: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
            let exact_i64: i64 = exact.to_integer().try_into().unwrap();
            assert_eq!(det_wrapping(&w), exact_i64 as u64);
        }
    }

    #[test]
    fn determinant_identity_holds_mod_two_to_the_64() {
        // large integer entries overflow and wrap; the identity is ring-generic
        let mut rng = Lcg::new(5);
        for _ in 0..30 {
            let k = rng.range_i64(1, 3) as usize;
            let sizes: Vec<usize> = (0..k).map(|_| rng.range_i64(1, 3) as usize).collect();
            let mut big = || (u64::from(rng.next_u32()) << 32) | u64::from(rng.next_u32());
            let p: Vec<Vec<u64>> = sizes.iter().map(|&n| (0..n).map(|_| big()).collect()).collect();
            let q: Vec<Vec<u64>> = sizes.iter().map(|&n| (0..n).map(|_| big()).collect()).collect();
            let a: Vec<u64> = (0..k).map(|_| big()).collect();
            let d: Vec<Vec<u64>> = (0..k).map(|_| (0..k).map(|_| big()).collect()).collect();
            let mut block = Vec::new();
            for (i, &n) in sizes.iter().enumerate() {
                for r in 0..n {
                    block.push((i, r));
                }
            }
            let m: Vec<Vec<u64>> = block
                .iter()
                .enumerate()
                .map(|(x, &(i, r))| {
                    block
                        .iter()
                        .enumerate()
                        .map(|(y, &(j, s))| {
                            let v = d[i][j].wrapping_mul(p[i][r]).wrapping_mul(q[j][s]);
                            if x == y { v.wrapping_add(a[i]) } else { v }
                        })
                        .collect()
                })
                .collect();
            let lambda: Vec<u64> = (0..k)
                .map(|i| p[i].iter().zip(&q[i]).fold(0u64, |acc, (x, y)| acc.wrapping_add(x.wrapping_mul(*y))))
                .collect();
            let nmat: Vec<Vec<u64>> = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let v = lambda[i].wrapping_mul(d[i][j]);
                            if i == j { v.wrapping_add(a[i]) } else { v }
                        })
                        .collect()
                })
                .collect();
            let factor = (0..k).fold(1u64, |acc, i| acc.wrapping_mul(a[i].wrapping_pow(sizes[i] as u32 - 1)));
            assert_eq!(det_wrapping(&m), det_wrapping(&nmat).wrapping_mul(factor));
        }
    }
}
