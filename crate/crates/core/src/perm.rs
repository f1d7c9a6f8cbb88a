//! Permutations of `{1..d}`.
//!
//! Points are 1-indexed at every external boundary (parsing, printing,
//! [`Permutation::apply`]) and 0-indexed internally. Products are read
//! left to right: `p.then(&q)` applies `p` first, then `q`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("image sequence is not a bijection on 1..={0}")]
    NotBijective(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleParseError {
    #[error("repeated point {0}")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("unexpected token `{0}`")]
    BadToken(String),
    #[error("unclosed cycle starting at `{0}`")]
    Unclosed(String),
    #[error("degree must be at least 1")]
    ZeroDegree,
}

/// A bijection on `{1..d}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutation degree must be positive");
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 1-indexed images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let zero: Vec<usize> = images
            .iter()
            .map(|&v| v.checked_sub(1).unwrap_or(usize::MAX))
            .collect();
        Self::from_zero_based(zero)
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotBijective(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Unchecked constructor for internal code that builds images it knows are bijective.
    pub(crate) fn from_vec_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from disjoint 1-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, CycleParseError> {
        if degree == 0 {
            return Err(CycleParseError::ZeroDegree);
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(CycleParseError::OutOfRange { point: p, degree });
                }
                if used[p - 1] {
                    return Err(CycleParseError::RepeatedPoint(p));
                }
                used[p - 1] = true;
                images[p - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-indexed point `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    #[inline]
    pub(crate) fn image0(&self, point: usize) -> usize {
        self.images[point]
    }

    /// 1-indexed image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Left-to-right product: the result applies `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    /// Checked form of [`Permutation::then`].
    pub fn product_lr(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// `g⁻¹·self·g`: relabels every point `i` of `self`'s cycles to `g(i)`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != g.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), g.degree()));
        }
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[g.images[i]] = g.images[v];
        }
        Ok(Permutation { images })
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n];
        for cycle in self.cycles_with_fixed() {
            let len = cycle.len();
            let shift = (exp % len as u64) as usize;
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + shift) % len];
            }
        }
        Permutation { images }
    }

    /// All cycles including fixed points, 0-indexed, each starting at its least point,
    /// ordered by least point.
    pub(crate) fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial cycles as 1-indexed point lists, in printing order.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles_with_fixed().len()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.cycles_with_fixed().iter().map(Vec::len).collect())
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()).is_multiple_of(2)
    }

    /// Element order (lcm of the cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles_with_fixed()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point0(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &v)| i != v)
    }

    /// Cycle notation, e.g. `(1 2 3 4)(5 6 7)(8 9)`. The identity prints as the empty string.
    pub fn to_cycle_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "id[{}]", self.degree())
        } else {
            write!(f, "{self}[{}]", self.degree())
        }
    }
}

/// Parses cycle notation over `{1..degree}`; omitted points are fixed.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, CycleParseError> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<(Vec<usize>, String)> = None;
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '(' => {
                if current.is_some() {
                    return Err(CycleParseError::BadToken("(".into()));
                }
                current = Some((Vec::new(), text[start..].chars().take(12).collect()));
            }
            ')' => match current.take() {
                Some((cycle, _)) => cycles.push(cycle),
                None => return Err(CycleParseError::BadToken(")".into())),
            },
            c if c.is_ascii_digit() => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let token = &text[start..end];
                let Some((cycle, _)) = current.as_mut() else {
                    return Err(CycleParseError::BadToken(token.to_string()));
                };
                let point: usize = token
                    .parse()
                    .map_err(|_| CycleParseError::BadToken(token.to_string()))?;
                cycle.push(point);
            }
            other => {
                let mut token = other.to_string();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' {
                        break;
                    }
                    token.push(d);
                    chars.next();
                }
                return Err(CycleParseError::BadToken(token));
            }
        }
    }
    if let Some((_, context)) = current {
        return Err(CycleParseError::Unclosed(context));
    }
    Permutation::from_cycles(degree, &cycles)
}

/// Multiset of cycle lengths, fixed points included; stored in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// A fixed permutation of this type: consecutive runs of points, longest cycle first.
    pub fn representative(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.degree());
        let mut offset = 0;
        for &len in &self.0 {
            for i in 0..len {
                images.push(offset + (i + 1) % len);
            }
            offset += len;
        }
        Permutation::from_vec_unchecked(images)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A permutation `g` with `a.conjugate(g) == b`, aligning cycles of equal length in
/// printing order. `None` when the cycle types differ.
pub fn relabeling(a: &Permutation, b: &Permutation) -> Option<Permutation> {
    if a.degree() != b.degree() || a.cycle_type() != b.cycle_type() {
        return None;
    }
    let mut by_len_b: std::collections::BTreeMap<usize, Vec<Vec<usize>>> = Default::default();
    for c in b.cycles_with_fixed() {
        by_len_b.entry(c.len()).or_default().push(c);
    }
    for cs in by_len_b.values_mut() {
        cs.reverse();
    }
    let mut images = vec![0; a.degree()];
    for ca in a.cycles_with_fixed() {
        let cb = by_len_b.get_mut(&ca.len())?.pop()?;
        for (p, q) in ca.iter().zip(cb.iter()) {
            images[*p] = *q;
        }
    }
    Some(Permutation::from_vec_unchecked(images))
}
