//! Exact computation and analysis of blowup-polynomials of finite metric
//! spaces and graphs.
//!
//! Every decision made by this crate (determinants, positive
//! semidefiniteness, real-rootedness, coefficient signs) is carried out over
//! the rationals with arbitrary-precision integers. There is no floating
//! point anywhere in a decision path.
//!
//! Module map:
//!
//! - [`linalg`], [`poly`]: rational matrices and univariate polynomials
//!   (Bareiss determinants, Faddeev–LeVerrier characteristic polynomials,
//!   Sturm sequences).
//! - [`metric`]: metric spaces, graph metrics and the blowup construction.
//! - [`blowup`]: the multi-affine blowup-polynomial and its specializations.
//! - [`spectral`]: stability sampling, the distance-spectrum bridge, the
//!   normalized matrix `C_X`, maxroots and mixed characteristic polynomials.
//! - [`matroid`]: linear and tree delta-matroids and the exchange verifier.
//! - [`invariants`]: graph recovery, isometry groups and the complete
//!   multipartite battery.
//! - [`euclid`]: Schoenberg embeddability and Euclidean blowups.
//! - [`monoid`]: the blowup monoid and its determinant identities.
//! - [`catalog`]: small connected graphs and trees up to isomorphism.
#![forbid(unsafe_code)]

pub mod blowup;
pub mod catalog;
pub mod error;
pub mod euclid;
pub mod invariants;
pub mod linalg;
pub mod matroid;
pub mod metric;
pub mod monoid;
pub mod poly;
pub mod rational;
pub mod rng;
pub mod spectral;
pub mod subset;

pub use blowup::{HomogenizedPoly, MultiAffinePoly};
pub use error::{Error, MetricError, Result};
pub use linalg::RationalMatrix;
pub use matroid::DeltaMatroid;
pub use metric::{BlowupSizes, Graph, MetricSpace};
pub use monoid::{MonoidContext, MonoidElement};
pub use poly::{RootInterval, UnivariatePoly};
pub use rational::Rational;
pub use subset::Subset;
