//! Permutation groups through a deterministic Schreier–Sims stabilizer chain.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{relabeling, CycleType, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("degree mismatch: group acts on {expected} points, permutation on {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("permutation {0} is not an element of the group")]
    NotMember(String),
}

/// One level of the chain: the basic orbit of `base_point` under the strong generators
/// that fix every earlier base point.
#[derive(Debug, Clone)]
struct Level {
    base_point: usize,
    orbit: Vec<usize>,
    /// `reps[p]` sends the base point to `p`.
    reps: Vec<Option<Permutation>>,
    reps_inv: Vec<Option<Permutation>>,
}

/// A permutation group together with its base and strong generating set.
#[derive(Debug, Clone)]
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    /// Number of leading base points fixed by each strong generator.
    depth: Vec<usize>,
    levels: Vec<Level>,
}

impl GroupHandle {
    pub fn new(generators: &[Permutation], degree: usize) -> Result<Self, GroupError> {
        if generators.is_empty() {
            return Err(GroupError::NoGenerators);
        }
        if degree == 0 {
            return Err(GroupError::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        for g in generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = GroupHandle {
            degree,
            generators: generators.to_vec(),
            base: Vec::new(),
            strong: Vec::new(),
            depth: Vec::new(),
            levels: Vec::new(),
        };
        group.schreier_sims();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Base points, 1-indexed.
    pub fn base(&self) -> Vec<usize> {
        self.base.iter().map(|b| b + 1).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool, GroupError> {
        if p.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (residue, level) = self.strip(p.clone(), 0);
        Ok(level == self.levels.len() && residue.is_identity())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_of(0).len() == self.degree
    }

    /// True when the order is `d!`.
    pub fn is_symmetric(&self) -> bool {
        self.order() == factorial(self.degree)
    }

    /// True when the order is `d!/2` (the unique index-two subgroup of `S_d`).
    pub fn is_alternating(&self) -> bool {
        self.degree >= 2 && self.order() * 2u32 == factorial(self.degree)
    }

    /// Number of orbits of the group on ordered pairs of points.
    pub fn rank(&self) -> usize {
        let n = self.degree;
        let mut uf = UnionFind::new(n * n);
        for g in &self.generators {
            for i in 0..n {
                for j in 0..n {
                    uf.union(i * n + j, g.image0(i) * n + g.image0(j));
                }
            }
        }
        uf.components()
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        GroupFingerprint {
            order: self.order(),
            degree: self.degree,
            transitive: self.is_transitive(),
            in_alternating: self.generators.iter().all(Permutation::is_even),
            rank: self.rank(),
        }
    }

    fn orbit_of(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let p = orbit[i];
            for g in &self.generators {
                let q = g.image0(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Sifts `h` through the levels starting at `from`. Returns the residue and the index
    /// of the level where sifting stopped (`levels.len()` when it went all the way).
    fn strip(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.image0(level.base_point);
            match &level.reps_inv[beta] {
                Some(inv) => h = h.then(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn fixed_prefix(&self, g: &Permutation) -> usize {
        self.base.iter().take_while(|&&b| g.image0(b) == b).count()
    }

    fn push_strong(&mut self, g: Permutation) {
        let depth = self.fixed_prefix(&g);
        self.strong.push(g);
        self.depth.push(depth);
    }

    fn rebuild_level(&mut self, i: usize) {
        let n = self.degree;
        let base_point = self.base[i];
        let gens: Vec<&Permutation> = self
            .strong
            .iter()
            .zip(&self.depth)
            .filter(|(_, &d)| d >= i)
            .map(|(g, _)| g)
            .collect();
        let mut reps: Vec<Option<Permutation>> = vec![None; n];
        reps[base_point] = Some(Permutation::identity(n));
        let mut orbit = vec![base_point];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in &gens {
                let q = g.image0(p);
                if reps[q].is_none() {
                    let rep = reps[p].as_ref().map(|r| r.then(g));
                    reps[q] = rep;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        let reps_inv = reps
            .iter()
            .map(|r| r.as_ref().map(Permutation::inverse))
            .collect();
        let level = Level {
            base_point,
            orbit,
            reps,
            reps_inv,
        };
        if i < self.levels.len() {
            self.levels[i] = level;
        } else {
            self.levels.push(level);
        }
    }

    fn schreier_sims(&mut self) {
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            if self.fixed_prefix(g) == self.base.len() {
                let b = g.smallest_moved_point0().expect("non-identity");
                self.base.push(b);
            }
        }
        for g in gens {
            self.push_strong(g);
        }
        for i in 0..self.base.len() {
            self.rebuild_level(i);
        }

        let mut i = self.base.len();
        while i > 0 {
            let level = i - 1;
            match self.find_new_generator(level) {
                Some((h, j)) => {
                    if j == self.levels.len() {
                        let b = h.smallest_moved_point0().expect("non-identity residue");
                        self.base.push(b);
                    }
                    self.push_strong(h);
                    for l in (level + 1)..=j {
                        self.rebuild_level(l);
                    }
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Checks every Schreier generator of `level`; the first one that does not sift to the
    /// identity through the deeper levels is returned with the level where it stopped.
    fn find_new_generator(&self, level: usize) -> Option<(Permutation, usize)> {
        let lv = &self.levels[level];
        let gens: Vec<&Permutation> = self
            .strong
            .iter()
            .zip(&self.depth)
            .filter(|(_, &d)| d >= level)
            .map(|(g, _)| g)
            .collect();
        for &beta in &lv.orbit {
            let u = lv.reps[beta]
                .as_ref()
                .expect("orbit point has a representative");
            for g in &gens {
                let target = g.image0(beta);
                let u_inv = lv.reps_inv[target]
                    .as_ref()
                    .expect("orbit closed under generators");
                let schreier = u.then(g).then(u_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(schreier, level + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }
}

pub fn build_group(generators: &[Permutation], degree: usize) -> Result<GroupHandle, GroupError> {
    GroupHandle::new(generators, degree)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Summary data that can only separate groups, never identify them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupFingerprint {
    #[serde(with = "crate::bigint_decimal")]
    pub order: BigUint,
    pub degree: usize,
    pub transitive: bool,
    pub in_alternating: bool,
    pub rank: usize,
}

/// Whether the `S_d`-class of cycle type `t` splits into two `A_d`-classes: all parts odd
/// and pairwise distinct.
pub fn class_splits_in_alternating(t: &CycleType) -> bool {
    let parts = t.parts();
    parts.iter().all(|p| p % 2 == 1) && parts.windows(2).all(|w| w[0] != w[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjugacy {
    Conjugate,
    NotConjugate,
    Unknown,
}

/// Decides conjugacy of `a` and `b` inside `g` when `g` is `S_d` or `A_d`; otherwise only
/// differing cycle types are decided.
pub fn conjugacy_in_group(
    a: &Permutation,
    b: &Permutation,
    g: &GroupHandle,
) -> Result<Conjugacy, GroupError> {
    for p in [a, b] {
        if !g.contains(p)? {
            return Err(GroupError::NotMember(p.to_string()));
        }
    }
    let ta = a.cycle_type();
    if ta != b.cycle_type() {
        return Ok(Conjugacy::NotConjugate);
    }
    if g.is_symmetric() {
        return Ok(Conjugacy::Conjugate);
    }
    if g.is_alternating() {
        if !class_splits_in_alternating(&ta) {
            return Ok(Conjugacy::Conjugate);
        }
        // The S_d-centralizer of a split type is even, so every relabeling has one parity.
        let r = relabeling(a, b).expect("equal cycle types");
        return Ok(if r.is_even() {
            Conjugacy::Conjugate
        } else {
            Conjugacy::NotConjugate
        });
    }
    Ok(Conjugacy::Unknown)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}
