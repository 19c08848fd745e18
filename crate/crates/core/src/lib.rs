//! Adjoint Reidemeister torsion of torus knot and cable knot exteriors.

pub mod chain;
pub mod cli;
pub mod closed_form;
pub mod fox;
pub mod linalg;
pub mod mayer_vietoris;
pub mod presentation;
pub mod representation;
pub mod torsion;
pub mod verify;
