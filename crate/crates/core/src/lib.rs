//! Cubic equations solved by intersecting conic sections.
//!
//! The crate reconstructs two geometric solution methods and checks them
//! against an algebraic ground truth:
//!
//! * [`khayyam`]: the fourteen positive-coefficient cubic types, each solved
//!   by a pair of conics taken from a chain of mean proportionals
//!   `s/x = N₁/y = y/N₂`.
//! * [`descartes`]: a fixed parabola `y = z²` cut by a circle chosen from the
//!   depressed cubic or quartic.
//! * [`oracle`]: closed-form real roots, independent of every geometric path.
//!
//! Both geometric methods run on the generic engine in [`intersect`], which
//! eliminates `y` from two conics and back-substitutes the real roots.
//! [`render`] draws the constructions as SVG.

pub mod conics;
pub mod descartes;
pub mod error;
pub mod intersect;
pub mod khayyam;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod render;
pub mod report;
pub mod verify;

pub use conics::{conic_classify, Conic, ConicClass};
pub use error::{Error, Result};
pub use intersect::{intersect_conics, Point2, DEFAULT_TOL};
pub use khayyam::{construction_plan, solve_khayyam, ConstructionPlan, CurvePair, PairCode};
pub use poly::{classify, Cubic, DepressedForm, KhayyamForm, KhayyamType, Quartic};
pub use report::{Method, Root, RootReport};
