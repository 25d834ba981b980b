//! Euclidean embeddability from exact squared distances, and the
//! classification of Euclidean blowups.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, MetricError, Result};
use crate::linalg::RationalMatrix;
use crate::metric::{BlowupSizes, MetricSpace};
use crate::rational::{int, Rational};
use crate::subset::Subset;

/// Squared pairwise distances of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquaredDistanceMatrix {
    sq: RationalMatrix,
}

impl SquaredDistanceMatrix {
    /// Validates symmetry, zero diagonal, positive off-diagonal entries and
    /// the triangle inequality for the square roots, without taking roots.
    pub fn new(sq: RationalMatrix) -> Result<Self> {
        let (rows, cols) = (sq.rows(), sq.cols());
        if rows != cols {
            return Err(MetricError::NotSquare { rows, cols }.into());
        }
        if rows == 0 {
            return Err(MetricError::TooFewPoints(0).into());
        }
        let k = rows;
        for i in 0..k {
            if !sq[(i, i)].is_zero() {
                return Err(MetricError::NonzeroDiagonal(i).into());
            }
            for j in i + 1..k {
                if sq[(i, j)] != sq[(j, i)] {
                    return Err(MetricError::Asymmetric { i, j }.into());
                }
                if !sq[(i, j)].is_positive() {
                    return Err(MetricError::NonPositive { i, j }.into());
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                for via in 0..k {
                    if via != i && via != j && !root_triangle(&sq[(i, j)], &sq[(i, via)], &sq[(via, j)]) {
                        return Err(MetricError::Triangle { i, j, via }.into());
                    }
                }
            }
        }
        Ok(Self { sq })
    }

    /// Squares every distance of a metric space.
    pub fn from_metric(x: &MetricSpace) -> Self {
        let k = x.k();
        Self {
            sq: RationalMatrix::from_fn(k, k, |i, j| x.d(i, j) * x.d(i, j)),
        }
    }

    pub fn k(&self) -> usize {
        self.sq.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.sq
    }

    fn restrict(&self, keep: &[usize]) -> Self {
        Self {
            sq: self.sq.principal_submatrix(keep).expect("indices in range"),
        }
    }
}

/// `√a ≤ √b + √c`, i.e. `a - b - c ≤ 0` or `(a - b - c)² ≤ 4bc`.
fn root_triangle(a: &Rational, b: &Rational, c: &Rational) -> bool {
    let e = a - b - c;
    !e.is_positive() || &e * &e <= int(4) * b * c
}

/// `M[i][j] = sq[b][i] + sq[b][j] - sq[i][j]` over the points other than `b`.
pub fn cayley_menger(sq: &SquaredDistanceMatrix, base: usize) -> Result<RationalMatrix> {
    let k = sq.k();
    if base >= k {
        return Err(Error::IndexOutOfRange { index: base, size: k });
    }
    let rest: Vec<usize> = (0..k).filter(|&i| i != base).collect();
    let s = &sq.sq;
    Ok(RationalMatrix::from_fn(rest.len(), rest.len(), |a, b| {
        let (i, j) = (rest[a], rest[b]);
        &s[(base, i)] + &s[(base, j)] - &s[(i, j)]
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    /// The coefficients `e_1, …, e_m` of the Cayley–Menger characteristic
    /// polynomial, all nonnegative.
    Psd {
        #[serde(serialize_with = "crate::rational::ser_vec")]
        elementary: Vec<Rational>,
    },
    /// A negative principal minor of the Cayley–Menger matrix.
    NegativeMinor {
        indices: Vec<usize>,
        #[serde(serialize_with = "crate::rational::ser")]
        value: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddabilityVerdict {
    pub embeddable: bool,
    /// Minimal Euclidean dimension, when embeddable.
    pub rank: Option<usize>,
    pub certificate: Certificate,
}

/// Embeddable iff the Cayley–Menger matrix at base 0 is PSD.
pub fn is_euclidean(sq: &SquaredDistanceMatrix) -> Result<EmbeddabilityVerdict> {
    is_euclidean_at(sq, 0)
}

pub fn is_euclidean_at(sq: &SquaredDistanceMatrix, base: usize) -> Result<EmbeddabilityVerdict> {
    let cm = cayley_menger(sq, base)?;
    let m = cm.rows();
    let chi = cm.characteristic_polynomial()?;
    let elementary: Vec<Rational> = (1..=m)
        .map(|j| {
            let c = chi.coeff(m - j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    match elementary.iter().position(|e| e.is_negative()) {
        None => Ok(EmbeddabilityVerdict {
            embeddable: true,
            rank: Some(m - chi.zero_root_multiplicity()),
            certificate: Certificate::Psd { elementary },
        }),
        Some(pos) => {
            // e_j is the sum of the j×j principal minors, so one is negative
            let j = pos + 1;
            let (indices, value) = Subset::all(m)
                .into_iter()
                .filter(|s| s.len() == j)
                .map(|s| {
                    let idx = s.to_vec();
                    let v = cm.principal_minor(&idx).expect("square");
                    (idx, v)
                })
                .find(|(_, v)| v.is_negative())
                .expect("a negative elementary symmetric function has a negative summand");
            Ok(EmbeddabilityVerdict {
                embeddable: false,
                rank: None,
                certificate: Certificate::NegativeMinor { indices, value },
            })
        }
    }
}

/// Squared distances of `X[n]`: copies of `x` sit at squared distance
/// `4·min_{y≠x} sq[x][y]`.
pub fn blowup_sq(sq: &SquaredDistanceMatrix, n: &BlowupSizes) -> Result<SquaredDistanceMatrix> {
    let k = sq.k();
    if n.len() != k {
        return Err(Error::Dimension(format!("{} blowup sizes for {k} points", n.len())));
    }
    if k == 1 {
        if n.total() == 1 {
            return Ok(sq.clone());
        }
        return Err(Error::InvalidParameter(
            "a single point has no nearest distance to blow up with".into(),
        ));
    }
    let near: Vec<Rational> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i)
                .map(|j| sq.sq[(i, j)].clone())
                .min()
                .expect("k ≥ 2")
        })
        .collect();
    let origin = n.origin_map();
    let t = origin.len();
    let m = RationalMatrix::from_fn(t, t, |p, q| {
        let (i, j) = (origin[p], origin[q]);
        if p == q {
            Rational::zero()
        } else if i == j {
            int(4) * &near[i]
        } else {
            sq.sq[(i, j)].clone()
        }
    });
    SquaredDistanceMatrix::new(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum Reason {
    SinglePoint,
    TrivialBlowup,
    EntryAtLeastThree { index: usize },
    InAffineHull { j: usize },
    FootOutsideSpace { j: usize },
    /// The forced copies `2 v_i - x_i` and `2 v_j - x_j` are at the wrong
    /// distance from each other.
    CopiesClash { first: usize, second: usize },
    /// Every doubled point `j` is reflected through the point `point` of
    /// `X` nearest to it.
    Reflections { feet: Vec<Foot> },
}

/// The nearest point of the affine hull of the others is `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Foot {
    pub j: usize,
    pub point: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupEmbedding {
    pub embeddable: bool,
    pub reason: Reason,
    /// Direct Cayley–Menger test on the blowup, computed independently.
    pub schoenberg: bool,
    /// Verdict of the narrower rule admitting exactly one doubled point.
    /// It disagrees with `embeddable` when several doubled points can be
    /// reflected simultaneously.
    pub single_copy_rule: bool,
}

/// Decides whether `X[n]` is Euclidean from `X` alone, and reports the
/// direct test on the blown-up squared distances alongside.
///
/// A copy `x'_j` must sit at distance `δ_j` from every point at distance
/// `δ_j = min_i d(x_j, x_i)` from `x_j` while being `2δ_j` from `x_j`, which
/// forces `x'_j = 2 v_j - x_j` for a unique nearest `v_j`. So: every
/// `n_j ≤ 2`; for each doubled `j`, `x_j - v_j` is orthogonal to the affine
/// hull of the other points (the foot of `x_j` on that hull is `v_j`); and
/// for doubled `i ≠ j`, `⟨v_i - v_j, x_i - x_j⟩ = |v_i - v_j|²`, which keeps
/// `d(x'_i, x'_j) = d(x_i, x_j)`.
pub fn classify_blowup(sq: &SquaredDistanceMatrix, n: &BlowupSizes) -> Result<BlowupEmbedding> {
    let k = sq.k();
    if n.len() != k {
        return Err(Error::Dimension(format!("{} blowup sizes for {k} points", n.len())));
    }
    if !is_euclidean(sq)?.embeddable {
        return Err(Error::Precondition("the base space is not Euclidean".into()));
    }
    if k == 1 {
        return Ok(BlowupEmbedding {
            embeddable: true,
            reason: Reason::SinglePoint,
            schoenberg: true,
            single_copy_rule: true,
        });
    }
    let schoenberg = is_euclidean(&blowup_sq(sq, n)?)?.embeddable;
    let (embeddable, reason) = classify(sq, n.as_slice());
    let doubled = n.as_slice().iter().filter(|&&c| c >= 2).count();
    let single_copy_rule = embeddable && doubled <= 1;
    Ok(BlowupEmbedding { embeddable, reason, schoenberg, single_copy_rule })
}

fn classify(sq: &SquaredDistanceMatrix, n: &[usize]) -> (bool, Reason) {
    let k = n.len();
    if let Some(index) = n.iter().position(|&c| c >= 3) {
        return (false, Reason::EntryAtLeastThree { index });
    }
    let doubled: Vec<usize> = (0..k).filter(|&i| n[i] == 2).collect();
    if doubled.is_empty() {
        return (true, Reason::TrivialBlowup);
    }
    let mut feet = Vec::with_capacity(doubled.len());
    for &j in &doubled {
        let rest: Vec<usize> = (0..k).filter(|&i| i != j).collect();
        let cm_all = cayley_menger(sq, rest[0]).expect("base in range");
        let cm_rest = cayley_menger(&sq.restrict(&rest), 0).expect("nonempty");
        if cm_all.rank() <= cm_rest.rank() {
            return (false, Reason::InAffineHull { j });
        }
        match foot_point(sq, j, &rest) {
            Some(point) => feet.push(Foot { j, point }),
            None => return (false, Reason::FootOutsideSpace { j }),
        }
    }
    let s = &sq.sq;
    for (a, fi) in feet.iter().enumerate() {
        for fj in &feet[a + 1..] {
            let (vi, vj, xi, xj) = (fi.point, fj.point, fi.j, fj.j);
            // 2⟨v_i - v_j, x_i - x_j⟩ by polarization
            let twice_inner = &s[(vi, xj)] + &s[(vj, xi)] - &s[(vi, xi)] - &s[(vj, xj)];
            if twice_inner != int(2) * &s[(vi, vj)] {
                return (false, Reason::CopiesClash { first: xi, second: xj });
            }
        }
    }
    (true, Reason::Reflections { feet })
}

/// Index of a point of `rest` coinciding with the orthogonal projection of
/// `x_j` onto the affine hull of `rest`, worked in Gram coordinates based
/// at `rest[0]`.
fn foot_point(sq: &SquaredDistanceMatrix, j: usize, rest: &[usize]) -> Option<usize> {
    let s = &sq.sq;
    let y0 = rest[0];
    let others = &rest[1..];
    // ⟨u_a, u_b⟩ with u_a = y_a - y0, valid for any points including j
    let inner = |a: usize, b: usize| (&s[(y0, a)] + &s[(y0, b)] - &s[(a, b)]) / int(2);
    let gram = RationalMatrix::from_fn(others.len(), others.len(), |a, b| inner(others[a], others[b]));
    let basis: Vec<usize> = gram.rref().1.into_iter().map(|c| others[c]).collect();
    let g = RationalMatrix::from_fn(basis.len(), basis.len(), |a, b| inner(basis[a], basis[b]));
    let rhs: Vec<Rational> = basis.iter().map(|&b| inner(b, j)).collect();
    let c = g.solve(&rhs).expect("square").expect("independent basis");
    let gc = g.mul_vec(&c).expect("dimensions");
    let ctgc: Rational = c.iter().zip(&gc).map(|(a, b)| a * b).sum();
    rest.iter().copied().find(|&m| {
        let cross: Rational = basis.iter().zip(&c).map(|(&b, ci)| ci * inner(b, m)).sum();
        let d2 = &ctgc - int(2) * cross + inner(m, m);
        d2.is_zero()
    })
}
