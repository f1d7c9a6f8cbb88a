//! Dessins as transitive pairs of permutations on their edge set.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{CycleType, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DessinError {
    #[error("degree mismatch: dessin has {degree} edges but a permutation acts on {found} points")]
    DegreeMismatch { degree: usize, found: usize },
    #[error("not transitive; orbits {}", format_orbits(.0))]
    NotTransitive(Vec<Vec<usize>>),
    #[error("invalid dessin: Euler characteristic gives genus {0}/2")]
    InvalidGenus(i64),
    #[error(transparent)]
    Perm(#[from] PermError),
}

fn format_orbits(orbits: &[Vec<usize>]) -> String {
    orbits
        .iter()
        .map(|o| {
            let items: Vec<String> = o.iter().map(ToString::to_string).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// A dessin d'enfant: `x` rotates edges around vertices over 0, `y` around vertices over 1.
/// The permutation over infinity is always derived (see [`Dessin::z`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dessin {
    x: Permutation,
    y: Permutation,
}

impl fmt::Debug for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dessin[{}; {:?}, {:?}]", self.degree(), self.x, self.y)
    }
}

impl Dessin {
    pub fn new(x: Permutation, y: Permutation) -> Result<Self, DessinError> {
        validate(x.degree(), &x, &y)?;
        Ok(Dessin { x, y })
    }

    pub(crate) fn new_unchecked(x: Permutation, y: Permutation) -> Self {
        debug_assert!(validate(x.degree(), &x, &y).is_ok());
        Dessin { x, y }
    }

    /// The one-edge dessin.
    pub fn unit() -> Self {
        Dessin {
            x: Permutation::identity(1),
            y: Permutation::identity(1),
        }
    }

    pub fn degree(&self) -> usize {
        self.x.degree()
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn y(&self) -> &Permutation {
        &self.y
    }

    /// The permutation over infinity, `z = (x·y)⁻¹`, so that `x·y·z` is the identity.
    pub fn z(&self) -> Permutation {
        self.x.then(&self.y).inverse()
    }

    pub fn valency_list(&self) -> ValencyList {
        ValencyList {
            at0: self.x.cycle_type(),
            at1: self.y.cycle_type(),
            at_inf: self.z().cycle_type(),
        }
    }

    /// Genus of the underlying surface from Euler's formula.
    pub fn genus(&self) -> Result<usize, DessinError> {
        let twice = self.degree() as i64 + 2
            - self.x.cycle_count() as i64
            - self.y.cycle_count() as i64
            - self.z().cycle_count() as i64;
        if twice < 0 || twice % 2 != 0 {
            return Err(DessinError::InvalidGenus(twice));
        }
        Ok((twice / 2) as usize)
    }

    /// Conjugates both permutations by `g`, moving edge `i` to `g(i)`.
    pub fn relabel(&self, g: &Permutation) -> Result<Dessin, DessinError> {
        Ok(Dessin {
            x: self.x.conjugate(g)?,
            y: self.y.conjugate(g)?,
        })
    }

    /// The relabeling `g` with `self.relabel(g) == self.canonical_form()`.
    pub fn canonical_labeling(&self) -> Permutation {
        let n = self.degree();
        let mut best: Option<(Vec<usize>, Vec<usize>, Vec<usize>)> = None;
        for start in 0..n {
            let labels = bfs_labeling(&self.x, &self.y, start);
            let xs = relabeled_images(&self.x, &labels);
            let ys = relabeled_images(&self.y, &labels);
            let better = match &best {
                None => true,
                Some((bx, by, _)) => (&xs, &ys) < (bx, by),
            };
            if better {
                best = Some((xs, ys, labels));
            }
        }
        let (_, _, labels) = best.expect("degree is positive");
        Permutation::from_vec_unchecked(labels)
    }

    /// Normal form: equal for two dessins exactly when they differ by a relabeling of edges.
    pub fn canonical_form(&self) -> Dessin {
        self.relabel(&self.canonical_labeling())
            .expect("labeling has the dessin's degree")
    }

    pub fn is_isomorphic(&self, other: &Dessin) -> bool {
        self.degree() == other.degree() && self.canonical_form() == other.canonical_form()
    }

    /// Every relabeling fixing both `x` and `y`, sorted. An automorphism is determined by
    /// the image of edge 1, so each candidate image is extended along the action.
    pub fn automorphism_group(&self) -> Vec<Permutation> {
        let n = self.degree();
        let mut out = Vec::new();
        for target in 0..n {
            if let Some(g) = self.extend_automorphism(target) {
                out.push(g);
            }
        }
        out.sort();
        out
    }

    fn extend_automorphism(&self, target: usize) -> Option<Permutation> {
        let n = self.degree();
        let mut map = vec![usize::MAX; n];
        map[0] = target;
        let mut queue = vec![0];
        let mut k = 0;
        while k < queue.len() {
            let p = queue[k];
            for g in [&self.x, &self.y] {
                let q = g.image0(p);
                let img = g.image0(map[p]);
                if map[q] == usize::MAX {
                    map[q] = img;
                    queue.push(q);
                } else if map[q] != img {
                    return None;
                }
            }
            k += 1;
        }
        Permutation::from_zero_based(map).ok()
    }

    /// The dessin of `h ∘ p`, where `h` permutes the three branch points: new role `i` takes
    /// the permutation of old role `h[i]`. The stored pair is the first two permuted roles;
    /// the third is rederived, so it may differ from the old permutation by conjugation.
    pub fn relabel_role(&self, h: RolePermutation) -> Dessin {
        if h.is_identity() {
            return self.clone();
        }
        let triple = [self.x.clone(), self.y.clone(), self.z()];
        let x = triple[h.0[0] as usize].clone();
        let y = triple[h.0[1] as usize].clone();
        Dessin::new_unchecked(x, y)
    }

    /// A uniformly random transitive pair of the given degree, by rejection sampling.
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Dessin {
        loop {
            let x = Permutation::random(degree, rng);
            let y = Permutation::random(degree, rng);
            if orbits(&x, &y).len() == 1 {
                return Dessin { x, y };
            }
        }
    }
}

/// Checks degrees and transitivity of `⟨x, y⟩`.
pub fn validate(degree: usize, x: &Permutation, y: &Permutation) -> Result<(), DessinError> {
    for p in [x, y] {
        if p.degree() != degree {
            return Err(DessinError::DegreeMismatch {
                degree,
                found: p.degree(),
            });
        }
    }
    let orbits = orbits(x, y);
    if orbits.len() > 1 {
        return Err(DessinError::NotTransitive(orbits));
    }
    Ok(())
}

/// Orbits of `⟨x, y⟩`, 1-indexed, each sorted, ordered by least element.
pub fn orbits(x: &Permutation, y: &Permutation) -> Vec<Vec<usize>> {
    let n = x.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut k = 0;
        while k < orbit.len() {
            let p = orbit[k];
            for g in [x, y] {
                let q = g.image0(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit.into_iter().map(|p| p + 1).collect());
    }
    out
}

/// Breadth-first labels from `start`, exploring `x, x⁻¹, y, y⁻¹` in that order.
/// `labels[p]` is the new (0-indexed) label of point `p`.
pub(crate) fn bfs_labeling(x: &Permutation, y: &Permutation, start: usize) -> Vec<usize> {
    let n = x.degree();
    let xi = x.inverse();
    let yi = y.inverse();
    let mut labels = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    labels[start] = 0;
    queue.push(start);
    let mut k = 0;
    while k < queue.len() {
        let p = queue[k];
        for g in [x, &xi, y, &yi] {
            let q = g.image0(p);
            if labels[q] == usize::MAX {
                labels[q] = queue.len();
                queue.push(q);
            }
        }
        k += 1;
    }
    labels
}

pub(crate) fn relabeled_images(p: &Permutation, labels: &[usize]) -> Vec<usize> {
    let mut out = vec![0; labels.len()];
    for (i, &l) in labels.iter().enumerate() {
        out[l] = labels[p.image0(i)];
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValencyList {
    pub at0: CycleType,
    pub at1: CycleType,
    pub at_inf: CycleType,
}

impl fmt::Display for ValencyList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.at0, self.at1, self.at_inf)
    }
}

/// The three branch points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Zero = 0,
    One = 1,
    Infinity = 2,
}

impl Role {
    fn symbol(self) -> char {
        match self {
            Role::Zero => '0',
            Role::One => '1',
            Role::Infinity => 'i',
        }
    }
}

/// A permutation of the branch points `(0, 1, ∞)`: entry `i` names the old role that plays
/// new role `i`. Written as three characters over `0`, `1`, `i`, e.g. `10i` swaps 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RolePermutation(pub [Role; 3]);

impl RolePermutation {
    pub const IDENTITY: RolePermutation = RolePermutation([Role::Zero, Role::One, Role::Infinity]);
    pub const SWAP_01: RolePermutation = RolePermutation([Role::One, Role::Zero, Role::Infinity]);
    pub const SWAP_0I: RolePermutation = RolePermutation([Role::Infinity, Role::One, Role::Zero]);
    pub const SWAP_1I: RolePermutation = RolePermutation([Role::Zero, Role::Infinity, Role::One]);
    pub const ROTATE: RolePermutation = RolePermutation([Role::One, Role::Infinity, Role::Zero]);
    pub const ROTATE_BACK: RolePermutation =
        RolePermutation([Role::Infinity, Role::Zero, Role::One]);

    pub const ALL: [RolePermutation; 6] = [
        Self::IDENTITY,
        Self::SWAP_01,
        Self::SWAP_0I,
        Self::SWAP_1I,
        Self::ROTATE,
        Self::ROTATE_BACK,
    ];

    pub fn new(roles: [Role; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for r in roles {
            if std::mem::replace(&mut seen[r as usize], true) {
                return None;
            }
        }
        Some(RolePermutation(roles))
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }

    /// Applies this role permutation to a triple indexed by role.
    pub fn permute<T: Clone>(self, triple: &[T; 3]) -> [T; 3] {
        self.0.map(|r| triple[r as usize].clone())
    }
}

impl fmt::Display for RolePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.0 {
            write!(f, "{}", r.symbol())?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid role permutation `{0}`: expected a rearrangement of `01i`")]
pub struct RoleParseError(pub String);

impl FromStr for RolePermutation {
    type Err = RoleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RoleParseError(s.to_string());
        let roles: Vec<Role> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(Role::Zero),
                '1' => Ok(Role::One),
                'i' | 'I' => Ok(Role::Infinity),
                _ => Err(err()),
            })
            .collect::<Result<_, _>>()?;
        let roles: [Role; 3] = roles.try_into().map_err(|_| err())?;
        RolePermutation::new(roles).ok_or_else(err)
    }
}
