//! The two degree-10 dessins that agree on every classical invariant but are separated by
//! `xi`.

use crate::dessin::Dessin;
use crate::format::parse_dessin;

pub const DELTA_TEXT: &str = include_str!("../data/delta.dessin");
pub const OMEGA_TEXT: &str = include_str!("../data/omega.dessin");

pub fn delta() -> Dessin {
    parse_dessin(DELTA_TEXT).expect("bundled dessin parses")
}

pub fn omega() -> Dessin {
    parse_dessin(OMEGA_TEXT).expect("bundled dessin parses")
}
