//! Hull-edge probabilities for the simple random walk on the square lattice.
//!
//! The walk takes each of the four unit steps with probability 1/4. For fixed
//! times `n1 < n2` the chord `S_{n1} S_{n2}` is an edge of the convex hull of
//! `S_0, ..., S_n` exactly when every other point lies strictly on one side of
//! the chord line. Projecting onto the chord normal turns each side condition
//! into a one-dimensional stay-positive problem for the law with mass 1/4 on
//! `±k, ±m`, whose persistence probabilities decay like `C_{k,m} / sqrt(π n)`.
//!
//! The crate computes these quantities exactly (rational arithmetic),
//! in floating point, asymptotically, and by reproducible simulation:
//!
//! * [`walk`]: walks, step laws, chords and normal projections;
//! * [`series`]: return, positivity and stay-positive probabilities and their
//!   generating functions;
//! * [`asymptotics`]: the constant `C_{k,m}` and the leading-order `p_n`;
//! * [`edge`]: the exact hull-edge probability and its brute-force oracle;
//! * [`hull`]: integer convex hulls and the edge predicates;
//! * [`montecarlo`] and [`tables`]: simulation and the ratio tables.
//!
//! ```
//! use hullwalk::{asymptotics, series, Mode, QuadratureSpec, StepLaw};
//!
//! let law = StepLaw::new(2, 1)?;
//! let p2 = series::stay_positive(&law, 2, Mode::Exact);
//! assert_eq!(p2.to_string(), "5/16");
//!
//! let c = asymptotics::ckm_quadrature(&law, &QuadratureSpec::default())?;
//! assert!((c.value - 0.8091).abs() < 5e-4);
//! # Ok::<(), hullwalk::Error>(())
//! ```

pub mod asymptotics;
pub mod edge;
mod error;
pub mod hull;
pub mod montecarlo;
pub mod quadrature;
pub mod series;
pub mod tables;
pub mod walk;
mod weight;

pub use error::{Error, Result};
pub use quadrature::QuadratureSpec;
pub use walk::{EdgeSpec, LatticePath, Point, Step, StepLaw};
pub use weight::{ratio_to_f64, Mode, Probability, Weight};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/walks.md")]
    mod walks {}
    #[doc = include_str!("../../../book/src/persistence.md")]
    mod persistence {}
    #[doc = include_str!("../../../book/src/constant.md")]
    mod constant {}
    #[doc = include_str!("../../../book/src/hull-edges.md")]
    mod hull_edges {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
