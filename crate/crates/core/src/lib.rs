//! Singular grid diagrams and their combinatorial link Floer homology over
//! GF(2).
//!
//! A *singular grid diagram* presents an oriented link with a finite number
//! of transversal double points: a torus grid whose columns and rows carry
//! `O`/`X` markers, where a *singular* column or row carries four markers and
//! stands for a double point. This crate implements:
//!
//! * the diagram model with validation, (de)serialization, elementary moves,
//!   symmetries, and constructors ([`grid`], [`moves`], [`transform`],
//!   [`corpus`], [`randgen`]);
//! * the cube of desingularizations: each singular column/row is resolved in
//!   two ways, and the curved-curve geometry that interpolates between
//!   resolutions selects one crossing of each singular band as a pivot for
//!   the differential ([`cube`], [`geom`]);
//! * the bigraded chain complex over GF(2) generated by grid states across
//!   all resolutions, its differential by empty-polygon counts, and its
//!   homology in two flavors — the full (`tilde`) version and the stabilized
//!   (`hat`) version obtained by dividing out the free factor
//!   ([`complex`], [`homology`], [`poly`]);
//! * structural verification: the differential squares to zero, homology is
//!   invariant under elementary moves, the desingularization Euler-
//!   characteristic relation, symmetry formulas, and vanishing in the
//!   presence of a singular loop ([`verify`]).
//!
//! Gradings follow the usual grid conventions: the Maslov grading `M` is
//! defined through the planar pair-counting form, the Alexander grading `A`
//! through the difference of `O`- and `X`-based Maslov gradings. Homology
//! ranks are reported as a Laurent polynomial in `t` (Maslov) and `q`
//! (Alexander, possibly half-integral).

pub mod complex;
pub mod corpus;
pub mod cube;
pub mod error;
pub mod geom;
pub mod grid;
pub mod homology;
pub mod moves;
pub mod poly;
pub mod randgen;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Decoration, Kind, Sign, SingularGrid};
