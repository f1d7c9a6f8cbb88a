//! Shared proptest strategies.

#![allow(dead_code)]

use dessin_core::{Dessin, Permutation};
use proptest::prelude::*;

pub fn raw_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn to_perm(raw: &[usize]) -> Permutation {
    Permutation::from_images(&raw.iter().map(|v| v + 1).collect::<Vec<_>>()).unwrap()
}

pub fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    raw_perm(n).prop_map(|r| to_perm(&r))
}

pub fn perm_up_to(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max).prop_flat_map(perm)
}

pub fn perm_pair(max: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n)))
}

pub fn perm_triple(max: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

pub fn dessin_of_degree(n: usize) -> impl Strategy<Value = Dessin> {
    (perm(n), perm(n)).prop_filter_map("not transitive", |(x, y)| Dessin::new(x, y).ok())
}

pub fn dessin(min: usize, max: usize) -> impl Strategy<Value = Dessin> {
    (min..=max).prop_flat_map(dessin_of_degree)
}

/// A dessin together with a relabeling of the same degree.
pub fn dessin_and_relabel(min: usize, max: usize) -> impl Strategy<Value = (Dessin, Permutation)> {
    (min..=max).prop_flat_map(|n| (dessin_of_degree(n), perm(n)))
}
