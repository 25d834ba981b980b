//! Univariate polynomials over ℚ and exact real-root machinery.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, simplest_between, Rational};

/// Isolation width used when callers do not pick one: `2^-40`.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40)
}

/// Coefficients in ascending degree, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

/// A closed interval `[lo, hi]` known to contain a specific root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootInterval {
    #[serde(serialize_with = "crate::rational::ser")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::rational::ser")]
    pub hi: Rational,
}

impl RootInterval {
    pub fn exact(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    /// `Π (t - a_i)`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::constant(Rational::one()), |acc, a| acc.mul(&Self::linear_root(a)))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dl = d.leading().ok_or(Error::ZeroPolynomial)?.clone();
        let dd = d.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Positive multiple with coprime integer coefficients; keeps the
    /// coefficient sizes of repeated remainders in check.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let g = nums.iter().fold(BigInt::zero(), |g, n| g.gcd(n));
        Self::new(nums.into_iter().map(|n| Rational::from_integer(n / &g)).collect())
    }

    /// `p / gcd(p, p')` up to a positive factor: same roots, all simple.
    pub fn square_free_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        Ok(self.div_rem(&g)?.0.primitive())
    }

    /// Sturm sequence of a nonzero polynomial, each member divided by the
    /// absolute value of its leading coefficient (signs are unaffected).
    pub fn sturm_sequence(&self) -> Result<Vec<Self>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // only signs matter, so any positive rescaling is allowed
        let norm = |p: Self| p.primitive();
        let mut seq = vec![norm(self.clone())];
        let d = self.derivative();
        if d.is_zero() {
            return Ok(seq);
        }
        seq.push(norm(d));
        loop {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1])?.1;
            if r.is_zero() {
                break;
            }
            seq.push(norm(r.neg()));
        }
        Ok(seq)
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_between(&self, a: &Rational, b: &Rational) -> Result<usize> {
        let seq = self.square_free_part()?.sturm_sequence()?;
        Ok(count_in(&seq, a, b))
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> Result<usize> {
        let seq = self.square_free_part()?.sturm_sequence()?;
        Ok(changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true))
    }

    /// Whether every complex root is real. Constants are real-rooted.
    pub fn is_real_rooted(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // the chain for p itself ends in gcd(p, p'); its sign changes at
        // ±∞ count the distinct real roots
        let p = self.primitive_integers();
        let mut seq = vec![p.clone()];
        let d = derivative_integers(&p);
        if !d.is_empty() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let n = seq.len();
            let r = negated_pseudo_remainder(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r);
        }
        let changes = |at_minus: bool| {
            let signs: Vec<bool> = seq
                .iter()
                .map(|q| q.last().expect("nonzero").is_positive() != (at_minus && q.len() % 2 == 0))
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let distinct = changes(true) - changes(false);
        let gcd_degree = seq.last().expect("nonempty").len() - 1;
        Ok(distinct == p.len() - 1 - gcd_degree)
    }

    fn primitive_integers(&self) -> Vec<BigInt> {
        self.primitive().coeffs.iter().map(|c| c.numer().clone()).collect()
    }

    /// Number of sign changes in the nonzero coefficients. This counts
    /// positive roots with multiplicity when the polynomial is real-rooted,
    /// and bounds them from above otherwise.
    pub fn count_positive_roots(&self) -> usize {
        let mut last: Option<bool> = None;
        let mut changes = 0;
        for c in self.coeffs.iter().filter(|c| !c.is_zero()) {
            let s = c.is_positive();
            if last.is_some_and(|l| l != s) {
                changes += 1;
            }
            last = Some(s);
        }
        changes
    }

    /// Descartes count for `p(-t)`.
    pub fn count_negative_roots(&self) -> usize {
        self.reflect().count_positive_roots()
    }

    /// Multiplicity of the root `0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Power of two strictly exceeding the absolute value of every root
    /// (Cauchy's bound rounded up).
    pub fn root_bound(&self) -> Result<Rational> {
        let l = self.leading().ok_or(Error::ZeroPolynomial)?;
        let n = self.coeffs.len() - 1;
        let m = self.coeffs[..n]
            .iter()
            .map(|c| (c / l).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        let bound = m + Rational::one();
        let mut b = Rational::one();
        while b <= bound {
            b *= int(2);
        }
        Ok(b)
    }

    /// An interval of width at most `width` around the largest real root.
    /// When bisection lands on the root, or the root is the simplest
    /// rational in the final interval, the interval is degenerate.
    pub fn isolate_max_root(&self, width: &Rational) -> Result<RootInterval> {
        check_width(width)?;
        let q = self.square_free_part()?;
        let seq = q.sturm_sequence()?;
        let hi0 = q.root_bound()?;
        let (mut lo, mut hi) = (-hi0.clone(), hi0);
        if count_in(&seq, &lo, &hi) == 0 {
            return Err(Error::NoRealRoots);
        }
        // invariant: a root lies in (lo, hi], none above hi
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            if count_in(&seq, &mid, &hi) > 0 {
                lo = mid;
            } else if q.eval(&mid).is_zero() {
                return Ok(RootInterval::exact(mid));
            } else {
                hi = mid;
            }
        }
        let s = simplest_between(&lo, &hi);
        if s > lo && q.eval(&s).is_zero() && count_in(&seq, &s, &hi) == 0 {
            return Ok(RootInterval::exact(s));
        }
        Ok(RootInterval { lo, hi })
    }

    /// An interval of width at most `width` around the smallest real root
    /// strictly greater than `floor`.
    pub fn isolate_min_root_above(&self, floor: &Rational, width: &Rational) -> Result<RootInterval> {
        check_width(width)?;
        let q = self.square_free_part()?;
        let seq = q.sturm_sequence()?;
        let mut hi = q.root_bound()?;
        let mut lo = floor.clone();
        if hi <= lo || count_in(&seq, &lo, &hi) == 0 {
            return Err(Error::NoRealRoots);
        }
        // invariant: the target root lies in (lo, hi], none in (floor, lo]
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            let c = count_in(&seq, &lo, &mid);
            if c == 0 {
                lo = mid;
            } else if c == 1 && q.eval(&mid).is_zero() {
                return Ok(RootInterval::exact(mid));
            } else {
                hi = mid;
            }
        }
        let s = simplest_between(&lo, &hi);
        if s > lo && q.eval(&s).is_zero() && count_in(&seq, &lo, &s) == 1 {
            return Ok(RootInterval::exact(s));
        }
        Ok(RootInterval { lo, hi })
    }
}

fn check_width(w: &Rational) -> Result<()> {
    if w.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("isolation width must be positive".into()))
    }
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn changes_at(seq: &[UnivariatePoly], x: &Rational) -> usize {
    sign_changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn changes_at_infinity(seq: &[UnivariatePoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|p| {
        let l = sign(p.leading().expect("sturm members are nonzero"));
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -l
        } else {
            l
        }
    }))
}

fn derivative_integers(p: &[BigInt]) -> Vec<BigInt> {
    let d: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    primitive_content(d)
}

/// Trims trailing zeros and divides by the (positive) content.
fn primitive_content(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in &mut p {
            *c /= &g;
        }
    }
    p
}

/// A positive multiple of `-(a mod b)`, with integer coefficients.
fn negated_pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    let mut steps = 0;
    while r.len() >= b.len() {
        let lr = r.pop().expect("nonempty");
        let shift = r.len() + 1 - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b[..b.len() - 1].iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        steps += 1;
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    // r = lb^steps · (a mod b); flip for the minus sign and a negative factor
    let flip = !(lb.is_negative() && steps % 2 == 1);
    if flip {
        for c in &mut r {
            *c = -&*c;
        }
    }
    primitive_content(r)
}

/// Distinct roots of the square-free head of `seq` in `(a, b]`.
fn count_in(seq: &[UnivariatePoly], a: &Rational, b: &Rational) -> usize {
    if a >= b {
        return 0;
    }
    changes_at(seq, a) - changes_at(seq, b)
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnivariatePoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
