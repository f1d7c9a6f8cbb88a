//! Extending patterns and their action on dessins.
//!
//! A pattern is the gray dessin `(xb, yb)` of a Belyi-extending map drawn over one diamond,
//! plus, for every gray edge `b`, the crossing words that say which black segments the
//! monodromy step from `b` crosses. The edge `(a, b)` of the output sits at index
//! `(a - 1) * m + b`, and
//!
//! ```text
//! x_out(a, b) = (wx(b)(a), xb(b))
//! y_out(a, b) = (wy(b)(a), yb(b))
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::dessin::{bfs_labeling, orbits, relabeled_images, Dessin, DessinError, RolePermutation};
use crate::perm::{parse_cycles, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("gray dessin is not transitive; orbits {0:?}")]
    NotTransitive(Vec<Vec<usize>>),
    #[error("xb acts on {xb} points but yb on {yb}")]
    DegreeMismatch { xb: usize, yb: usize },
    #[error("{which} has {found} words for {degree} edges")]
    WordCount {
        which: &'static str,
        found: usize,
        degree: usize,
    },
    #[error("unknown pattern `{0}`")]
    UnknownBuiltin(String),
    #[error("bad crossing word `{0}`")]
    BadWord(String),
    #[error("pattern list is empty")]
    EmptySequence,
    #[error(transparent)]
    Dessin(#[from] DessinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
    Z,
    ZInv,
}

impl Letter {
    pub fn token(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::XInv => 'X',
            Letter::Y => 'y',
            Letter::YInv => 'Y',
            Letter::Z => 'z',
            Letter::ZInv => 'Z',
        }
    }

    pub fn from_token(c: char) -> Option<Letter> {
        Some(match c {
            'x' => Letter::X,
            'X' => Letter::XInv,
            'y' => Letter::Y,
            'Y' => Letter::YInv,
            'z' => Letter::Z,
            'Z' => Letter::ZInv,
            _ => return None,
        })
    }
}

/// Letters in crossing order: the first segment crossed comes first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingWord(pub Vec<Letter>);

impl CrossingWord {
    pub fn empty() -> Self {
        CrossingWord(Vec::new())
    }

    pub fn single(letter: Letter) -> Self {
        CrossingWord(vec![letter])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// The element of the monodromy group this word names. The first letter crossed acts
    /// first (it is the rightmost factor when elements act on the left).
    pub fn eval(&self, dessin: &Dessin) -> Permutation {
        let n = dessin.degree();
        let mut z = None;
        let mut acc = Permutation::identity(n);
        for &letter in &self.0 {
            let step = match letter {
                Letter::X => dessin.x().clone(),
                Letter::XInv => dessin.x().inverse(),
                Letter::Y => dessin.y().clone(),
                Letter::YInv => dessin.y().inverse(),
                Letter::Z => z.get_or_insert_with(|| dessin.z()).clone(),
                Letter::ZInv => z.get_or_insert_with(|| dessin.z()).inverse(),
            };
            acc = acc.then(&step);
        }
        acc
    }
}

impl fmt::Display for CrossingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for l in &self.0 {
            write!(f, "{}", l.token())?;
        }
        Ok(())
    }
}

impl FromStr for CrossingWord {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(CrossingWord::empty());
        }
        s.chars()
            .map(|c| Letter::from_token(c).ok_or_else(|| PatternError::BadWord(s.to_string())))
            .collect::<Result<Vec<_>, _>>()
            .map(CrossingWord)
    }
}

pub fn eval_word(word: &CrossingWord, dessin: &Dessin) -> Permutation {
    word.eval(dessin)
}

/// An extending pattern on gray edges `{1..m}`.
///
/// `role` precomposes the map with a permutation of the branch points; it is the identity
/// for every pattern read off a single drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendingPattern {
    pub name: String,
    xb: Permutation,
    yb: Permutation,
    wx: Vec<CrossingWord>,
    wy: Vec<CrossingWord>,
    role: RolePermutation,
}

impl ExtendingPattern {
    pub fn new(
        name: impl Into<String>,
        xb: Permutation,
        yb: Permutation,
        wx: Vec<CrossingWord>,
        wy: Vec<CrossingWord>,
    ) -> Result<Self, PatternError> {
        let m = xb.degree();
        if yb.degree() != m {
            return Err(PatternError::DegreeMismatch {
                xb: m,
                yb: yb.degree(),
            });
        }
        for (which, words) in [("wx", &wx), ("wy", &wy)] {
            if words.len() != m {
                return Err(PatternError::WordCount {
                    which,
                    found: words.len(),
                    degree: m,
                });
            }
        }
        let orbits = orbits(&xb, &yb);
        if orbits.len() > 1 {
            return Err(PatternError::NotTransitive(orbits));
        }
        Ok(ExtendingPattern {
            name: name.into(),
            xb,
            yb,
            wx,
            wy,
            role: RolePermutation::IDENTITY,
        })
    }

    /// Builds a pattern from sparse word maps keyed by 1-indexed gray edge; missing edges
    /// get the empty word.
    pub fn from_word_maps(
        name: impl Into<String>,
        xb: Permutation,
        yb: Permutation,
        wx: &BTreeMap<usize, CrossingWord>,
        wy: &BTreeMap<usize, CrossingWord>,
    ) -> Result<Self, PatternError> {
        let m = xb.degree();
        let dense = |map: &BTreeMap<usize, CrossingWord>, which: &'static str| {
            let mut v = vec![CrossingWord::empty(); m];
            for (&edge, w) in map {
                if edge == 0 || edge > m {
                    return Err(PatternError::WordCount {
                        which,
                        found: edge,
                        degree: m,
                    });
                }
                v[edge - 1] = w.clone();
            }
            Ok(v)
        };
        Self::new(name, xb, yb, dense(wx, "wx")?, dense(wy, "wy")?)
    }

    /// Precomposes with a permutation of the branch points.
    pub fn with_role(mut self, h: RolePermutation) -> Self {
        // relabel_role(relabel_role(Γ, h), r) takes old role h[r[i]] into new role i
        let r = self.role;
        self.role = RolePermutation(r.0.map(|ri| h.0[ri as usize]));
        self
    }

    pub fn degree(&self) -> usize {
        self.xb.degree()
    }

    pub fn xb(&self) -> &Permutation {
        &self.xb
    }

    pub fn yb(&self) -> &Permutation {
        &self.yb
    }

    pub fn role(&self) -> RolePermutation {
        self.role
    }

    /// Word for the x-step at 1-indexed gray edge `edge`.
    pub fn wx(&self, edge: usize) -> &CrossingWord {
        &self.wx[edge - 1]
    }

    pub fn wy(&self, edge: usize) -> &CrossingWord {
        &self.wy[edge - 1]
    }

    pub fn words_x(&self) -> &[CrossingWord] {
        &self.wx
    }

    pub fn words_y(&self) -> &[CrossingWord] {
        &self.wy
    }

    /// The gray dessin `(xb, yb)`, which is the pattern applied to the one-edge dessin.
    pub fn gray_dessin(&self) -> Dessin {
        Dessin::new_unchecked(self.xb.clone(), self.yb.clone())
    }

    /// Moves gray edge `i` to `g(i)`, carrying the words along.
    pub fn relabel(&self, g: &Permutation) -> Result<ExtendingPattern, PatternError> {
        let m = self.degree();
        if g.degree() != m {
            return Err(PatternError::DegreeMismatch {
                xb: m,
                yb: g.degree(),
            });
        }
        let mut wx = vec![CrossingWord::empty(); m];
        let mut wy = vec![CrossingWord::empty(); m];
        for i in 0..m {
            wx[g.image0(i)] = self.wx[i].clone();
            wy[g.image0(i)] = self.wy[i].clone();
        }
        Ok(ExtendingPattern {
            name: self.name.clone(),
            xb: self.xb.conjugate(g).map_err(DessinError::from)?,
            yb: self.yb.conjugate(g).map_err(DessinError::from)?,
            wx,
            wy,
            role: self.role,
        })
    }

    /// Same action on dessins, ignoring the name.
    pub fn equivalent(&self, other: &ExtendingPattern) -> bool {
        let (a, b) = (canonicalize_pattern(self), canonicalize_pattern(other));
        (&a.xb, &a.yb, &a.wx, &a.wy, a.role) == (&b.xb, &b.yb, &b.wx, &b.wy, b.role)
    }
}

/// Applies `pattern` to `dessin`; the result has `d * m` edges.
///
/// # Panics
/// If the output pair is not transitive, which a pattern passing [`validate_pattern`] never
/// produces in practice. Use [`try_apply`] for untrusted patterns.
pub fn apply(pattern: &ExtendingPattern, dessin: &Dessin) -> Dessin {
    try_apply(pattern, dessin).expect("pattern output is not a dessin")
}

/// Like [`apply`], but reports an intransitive output as an error.
pub fn try_apply(pattern: &ExtendingPattern, dessin: &Dessin) -> Result<Dessin, PatternError> {
    let (x, y) = apply_images(pattern, dessin);
    Ok(Dessin::new(x, y)?)
}

/// The raw output pair, transitive or not.
pub fn apply_images(pattern: &ExtendingPattern, dessin: &Dessin) -> (Permutation, Permutation) {
    let source = dessin.relabel_role(pattern.role);
    let d = source.degree();
    let m = pattern.degree();
    let mut cache: BTreeMap<&CrossingWord, Permutation> = BTreeMap::new();
    for w in pattern.wx.iter().chain(&pattern.wy) {
        cache.entry(w).or_insert_with(|| w.eval(&source));
    }
    let mut x_out = vec![0; d * m];
    let mut y_out = vec![0; d * m];
    for b in 0..m {
        let (wx, wy) = (&cache[&pattern.wx[b]], &cache[&pattern.wy[b]]);
        let (xb, yb) = (pattern.xb.image0(b), pattern.yb.image0(b));
        for a in 0..d {
            x_out[a * m + b] = wx.image0(a) * m + xb;
            y_out[a * m + b] = wy.image0(a) * m + yb;
        }
    }
    (
        Permutation::from_vec_unchecked(x_out),
        Permutation::from_vec_unchecked(y_out),
    )
}

/// Applies the last pattern first, so `[b1, b2]` gives `b1(b2(dessin))`.
pub fn apply_sequence(
    patterns: &[ExtendingPattern],
    dessin: &Dessin,
) -> Result<Dessin, PatternError> {
    if patterns.is_empty() {
        return Err(PatternError::EmptySequence);
    }
    patterns
        .iter()
        .rev()
        .try_fold(dessin.clone(), |acc, p| try_apply(p, &acc))
}

/// Relabels gray edges by the dessin canonical labeling, breaking ties between equally
/// good starting edges by the relabeled words.
pub fn canonicalize_pattern(pattern: &ExtendingPattern) -> ExtendingPattern {
    type Key = (Vec<usize>, Vec<usize>, Vec<CrossingWord>, Vec<CrossingWord>);
    let m = pattern.degree();
    let mut best: Option<(Key, Vec<usize>)> = None;
    for start in 0..m {
        let labels = bfs_labeling(&pattern.xb, &pattern.yb, start);
        let mut wx = vec![CrossingWord::empty(); m];
        let mut wy = vec![CrossingWord::empty(); m];
        for (i, &l) in labels.iter().enumerate() {
            wx[l] = pattern.wx[i].clone();
            wy[l] = pattern.wy[i].clone();
        }
        let key = (
            relabeled_images(&pattern.xb, &labels),
            relabeled_images(&pattern.yb, &labels),
            wx,
            wy,
        );
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, labels));
        }
    }
    let (_, labels) = best.expect("pattern degree is positive");
    pattern
        .relabel(&Permutation::from_vec_unchecked(labels))
        .expect("labeling has the pattern's degree")
}

/// One failed consistency check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum Violation {
    GrayNotTransitive,
    OutputNotTransitive {
        input: String,
    },
    DegreeNotMultiplied {
        input: String,
        degree: usize,
    },
    GenusNotPreserved {
        input: String,
        before: usize,
        after: Option<usize>,
    },
    UnitNotFixed,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GrayNotTransitive => write!(f, "gray dessin is not transitive"),
            Violation::OutputNotTransitive { input } => {
                write!(f, "output not transitive on input {input}")
            }
            Violation::DegreeNotMultiplied { input, degree } => {
                write!(f, "output degree {degree} is not d*m on input {input}")
            }
            Violation::GenusNotPreserved {
                input,
                before,
                after,
            } => match after {
                Some(a) => write!(f, "genus not preserved on input {input}: {before} -> {a}"),
                None => write!(
                    f,
                    "genus not preserved on input {input}: {before} -> invalid"
                ),
            },
            Violation::UnitNotFixed => {
                write!(
                    f,
                    "applying to the one-edge dessin does not give the gray dessin"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl PatternReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn describe(d: &Dessin) -> String {
    format!("[{}, {}] on {} edges", d.x(), d.y(), d.degree())
}

/// Probabilistic consistency check: gray transitivity, then `trials` random dessins of
/// degree at most 8 checked for transitivity, degree and genus of the output, then the
/// one-edge dessin.
pub fn validate_pattern<R: Rng + ?Sized>(
    pattern: &ExtendingPattern,
    trials: usize,
    rng: &mut R,
) -> PatternReport {
    let mut report = PatternReport::default();
    for (which, words) in [("wx", &pattern.wx), ("wy", &pattern.wy)] {
        for (i, w) in words.iter().enumerate() {
            if w.len() > 2 {
                report.warnings.push(format!(
                    "{which} word `{w}` at edge {} is longer than 2",
                    i + 1
                ));
            }
        }
    }
    if pattern.wy.iter().any(|w| !w.is_empty()) {
        report
            .warnings
            .push("nonempty wy words assume the x-step crossing rule around 1-vertices".into());
    }
    if orbits(&pattern.xb, &pattern.yb).len() > 1 {
        report.violations.push(Violation::GrayNotTransitive);
        return report;
    }
    let m = pattern.degree();
    for _ in 0..trials {
        let d = rng.gen_range(1..=8);
        let input = Dessin::random(d, rng);
        let (ox, oy) = apply_images(pattern, &input);
        if ox.degree() != d * m {
            report.violations.push(Violation::DegreeNotMultiplied {
                input: describe(&input),
                degree: ox.degree(),
            });
            break;
        }
        let out = match Dessin::new(ox, oy) {
            Ok(out) => out,
            Err(_) => {
                report.violations.push(Violation::OutputNotTransitive {
                    input: describe(&input),
                });
                break;
            }
        };
        let before = input.genus().expect("random dessins are valid");
        let after = out.genus().ok();
        if after != Some(before) {
            report.violations.push(Violation::GenusNotPreserved {
                input: describe(&input),
                before,
                after,
            });
            break;
        }
    }
    let fixed =
        try_apply(pattern, &Dessin::unit()).is_ok_and(|u| u.is_isomorphic(&pattern.gray_dessin()));
    if !fixed {
        report.violations.push(Violation::UnitNotFixed);
    }
    report
}

fn cycles(s: &str, m: usize) -> Permutation {
    parse_cycles(s, m).expect("builtin cycle notation")
}

fn words(m: usize, entries: &[(usize, Letter)]) -> Vec<CrossingWord> {
    let mut v = vec![CrossingWord::empty(); m];
    for &(edge, letter) in entries {
        v[edge - 1] = CrossingWord::single(letter);
    }
    v
}

/// Names of the built-in patterns. Any of them also accepts an `@<roles>` suffix
/// (e.g. `gamma@10i`) precomposing with a branch-point permutation.
pub const BUILTIN_NAMES: [&str; 6] = ["id", "alpha", "alpha1", "alpha2", "gamma", "xi"];

/// The default battery: the identity, the three cartographic variants, `gamma` with all
/// six branch-point precompositions, and `xi`.
pub fn default_pattern_names() -> Vec<String> {
    let mut names: Vec<String> = ["id", "alpha", "alpha1", "alpha2", "gamma"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for h in &RolePermutation::ALL[1..] {
        names.push(format!("gamma@{h}"));
    }
    names.push("xi".into());
    names
}

pub fn default_patterns() -> Vec<ExtendingPattern> {
    default_pattern_names()
        .iter()
        .map(|n| builtin(n).expect("default names are builtins"))
        .collect()
}

pub fn builtin(name: &str) -> Result<ExtendingPattern, PatternError> {
    if let Some((base, roles)) = name.split_once('@') {
        let h: RolePermutation = roles
            .parse()
            .map_err(|_| PatternError::UnknownBuiltin(name.to_string()))?;
        let mut p = builtin(base)?.with_role(h);
        p.name = name.to_string();
        return Ok(p);
    }
    let no_words = |m| vec![CrossingWord::empty(); m];
    let pattern = match name {
        // t itself: the single gray edge turns around 0 across 0∞ and around 1 across 1∞
        "id" => ExtendingPattern::new(
            "id",
            Permutation::identity(1),
            Permutation::identity(1),
            words(1, &[(1, Letter::X)]),
            words(1, &[(1, Letter::Y)]),
        ),
        // 4t(1-t): the gray edge over [0, 1/2] turns around 0 crossing the black 0∞
        // segment downward; the one over [1/2, 1] turns around 1 crossing 1∞ upward.
        "alpha" => ExtendingPattern::new(
            "alpha",
            Permutation::identity(2),
            cycles("(1 2)", 2),
            words(2, &[(1, Letter::X), (2, Letter::Y)]),
            no_words(2),
        ),
        // alpha∘(1/t)
        "alpha1" => builtin("alpha").map(|p| p.with_role(RolePermutation::SWAP_0I)),
        // alpha∘(t/(t-1))
        "alpha2" => builtin("alpha").map(|p| p.with_role(RolePermutation::SWAP_1I)),
        // edges a, b, c = 1, 2, 3
        "gamma" => ExtendingPattern::new(
            "gamma",
            cycles("(1 2)", 3),
            cycles("(2 3)", 3),
            words(3, &[(1, Letter::X), (3, Letter::Y)]),
            no_words(3),
        ),
        // edges a..f = 1..6
        "xi" => ExtendingPattern::new(
            "xi",
            cycles("(1 6)(2 3)(4 5)", 6),
            cycles("(1 2)(3 4)(5 6)", 6),
            words(6, &[(6, Letter::X), (2, Letter::Y), (4, Letter::Z)]),
            no_words(6),
        ),
        _ => return Err(PatternError::UnknownBuiltin(name.to_string())),
    }?;
    let mut pattern = pattern;
    pattern.name = name.to_string();
    Ok(pattern)
}
