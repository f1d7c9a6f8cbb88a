//! Galois invariants of dessins and sound separation of Galois orbits.
//!
//! Every invariant here is constant on Galois orbits, so a difference in any one of them
//! proves two dessins lie in different orbits. Agreement proves nothing.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dessin::{Dessin, ValencyList};
use crate::group::{class_splits_in_alternating, GroupFingerprint, GroupHandle};
use crate::pattern::{apply_images, ExtendingPattern};
use crate::perm::{relabeling, CycleType, Permutation};

pub fn monodromy_group(dessin: &Dessin) -> GroupHandle {
    GroupHandle::new(&[dessin.x().clone(), dessin.y().clone()], dessin.degree())
        .expect("dessin permutations share a degree")
}

pub fn monodromy_fingerprint(dessin: &Dessin) -> GroupFingerprint {
    monodromy_group(dessin).fingerprint()
}

/// Fingerprint of the monodromy group of `pattern` applied to `dessin`. An invalid
/// pattern still gets a fingerprint, with `transitive` false when the output falls apart.
pub fn m_beta(dessin: &Dessin, pattern: &ExtendingPattern) -> GroupFingerprint {
    let (x, y) = apply_images(pattern, dessin);
    let degree = x.degree();
    GroupHandle::new(&[x, y], degree)
        .expect("output generators share a degree")
        .fingerprint()
}

/// Which of the two `A_d`-classes an element of a split cycle type lies in, relative to
/// [`CycleType::representative`]. `Coarse` whenever the class is determined by the cycle
/// type alone (or the group is not detected as alternating).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitTag {
    Coarse,
    Even,
    Odd,
}

impl SplitTag {
    fn flipped(self) -> Self {
        match self {
            SplitTag::Coarse => SplitTag::Coarse,
            SplitTag::Even => SplitTag::Odd,
            SplitTag::Odd => SplitTag::Even,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassData {
    pub cycle_type: CycleType,
    pub tag: SplitTag,
}

impl fmt::Display for ClassData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            SplitTag::Coarse => write!(f, "{}", self.cycle_type),
            SplitTag::Even => write!(f, "{}+", self.cycle_type),
            SplitTag::Odd => write!(f, "{}-", self.cycle_type),
        }
    }
}

/// Computable projection of the rational Nielsen class: for each unit `λ` modulo
/// `L = lcm(ord x, ord y, ord z)`, the classes of `(x^λ, y^λ, z^λ)`, kept as a sorted
/// multiset. Split tags are normalized under a simultaneous flip, since an odd relabeling
/// of the edges swaps the two `A_d`-classes of every split type at once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NielsenData {
    pub l: u64,
    pub entries: Vec<[ClassData; 3]>,
}

impl fmt::Display for NielsenData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={}", self.l)?;
        for e in &self.entries {
            write!(f, " ({};{};{})", e[0], e[1], e[2])?;
        }
        Ok(())
    }
}

impl Serialize for NielsenData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<[String; 3]> = self
            .entries
            .iter()
            .map(|e| e.clone().map(|c| c.to_string()))
            .collect();
        let mut s = serializer.serialize_struct("NielsenData", 2)?;
        s.serialize_field("l", &self.l)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

pub fn nielsen_data(dessin: &Dessin) -> NielsenData {
    nielsen_data_in(dessin, &monodromy_group(dessin))
}

/// [`nielsen_data`] with a precomputed monodromy group.
pub fn nielsen_data_in(dessin: &Dessin, monodromy: &GroupHandle) -> NielsenData {
    let triple = [dessin.x().clone(), dessin.y().clone(), dessin.z()];
    let l = triple.iter().fold(1u64, |acc, p| acc.lcm(&p.order()));
    let alternating = monodromy.is_alternating();
    let class_of = |p: &Permutation| {
        let cycle_type = p.cycle_type();
        let tag = if alternating && class_splits_in_alternating(&cycle_type) {
            let r = relabeling(&cycle_type.representative(), p).expect("same cycle type");
            if r.is_even() {
                SplitTag::Even
            } else {
                SplitTag::Odd
            }
        } else {
            SplitTag::Coarse
        };
        ClassData { cycle_type, tag }
    };
    let mut entries: Vec<[ClassData; 3]> = (1..=l)
        .filter(|lambda| lambda.gcd(&l) == 1)
        .map(|lambda| {
            [
                class_of(&triple[0].pow(lambda)),
                class_of(&triple[1].pow(lambda)),
                class_of(&triple[2].pow(lambda)),
            ]
        })
        .collect();
    entries.sort();
    let mut flipped: Vec<[ClassData; 3]> = entries
        .iter()
        .map(|e| {
            e.clone().map(|c| ClassData {
                cycle_type: c.cycle_type,
                tag: c.tag.flipped(),
            })
        })
        .collect();
    flipped.sort();
    NielsenData {
        l,
        entries: entries.min(flipped),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NielsenVerdict {
    Distinguished,
    Indistinguishable,
}

pub fn nielsen_compare(a: &NielsenData, b: &NielsenData) -> NielsenVerdict {
    if a == b {
        NielsenVerdict::Indistinguishable
    } else {
        NielsenVerdict::Distinguished
    }
}

/// All invariants of one dessin under a configured pattern list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dessin_id: String,
    pub degree: usize,
    #[serde(serialize_with = "serialize_valency")]
    pub valency: ValencyList,
    pub genus: usize,
    pub aut_order: usize,
    pub monodromy: GroupFingerprint,
    pub per_pattern: Vec<PatternFingerprint>,
    pub nielsen: NielsenData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternFingerprint {
    pub pattern: String,
    pub fingerprint: GroupFingerprint,
}

fn serialize_valency<S: serde::Serializer>(v: &ValencyList, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("ValencyList", 3)?;
    st.serialize_field("at0", v.at0.parts())?;
    st.serialize_field("at1", v.at1.parts())?;
    st.serialize_field("at_inf", v.at_inf.parts())?;
    st.end()
}

impl InvariantReport {
    pub fn pattern(&self, name: &str) -> Option<&GroupFingerprint> {
        self.per_pattern
            .iter()
            .find(|p| p.pattern == name)
            .map(|p| &p.fingerprint)
    }

    /// Key-value text with a fixed field order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("dessin: {}\n", self.dessin_id));
        out.push_str(&format!("degree: {}\n", self.degree));
        out.push_str(&format!("valency: {}\n", self.valency));
        out.push_str(&format!("genus: {}\n", self.genus));
        out.push_str(&format!("aut_order: {}\n", self.aut_order));
        out.push_str(&format!(
            "monodromy: {}\n",
            fingerprint_text(&self.monodromy)
        ));
        for p in &self.per_pattern {
            out.push_str(&format!(
                "M_{}: {}\n",
                p.pattern,
                fingerprint_text(&p.fingerprint)
            ));
        }
        out.push_str(&format!("nielsen: {}\n", self.nielsen));
        out
    }
}

pub fn fingerprint_text(f: &GroupFingerprint) -> String {
    format!(
        "order={} degree={} transitive={} in_alternating={} rank={}",
        f.order, f.degree, f.transitive, f.in_alternating, f.rank
    )
}

pub fn report(dessin_id: &str, dessin: &Dessin, patterns: &[ExtendingPattern]) -> InvariantReport {
    let group = monodromy_group(dessin);
    let monodromy = group.fingerprint();
    let per_pattern = std::thread::scope(|scope| {
        let handles: Vec<_> = patterns
            .iter()
            .map(|p| {
                scope.spawn(move || PatternFingerprint {
                    pattern: p.name.clone(),
                    fingerprint: m_beta(dessin, p),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("invariant worker panicked"))
            .collect()
    });
    InvariantReport {
        dessin_id: dessin_id.to_string(),
        degree: dessin.degree(),
        valency: dessin.valency_list(),
        genus: dessin.genus().expect("validated dessin has a genus"),
        aut_order: dessin.automorphism_group().len(),
        monodromy,
        per_pattern,
        nielsen: nielsen_data_in(dessin, &group),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Comparison {
    Equal,
    Different,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantComparison {
    pub invariant: String,
    pub status: Comparison,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub comparisons: Vec<InvariantComparison>,
    pub separated: bool,
}

impl Verdict {
    pub fn separators(&self) -> Vec<&str> {
        self.comparisons
            .iter()
            .filter(|c| c.status == Comparison::Different)
            .map(|c| c.invariant.as_str())
            .collect()
    }

    pub fn status(&self, invariant: &str) -> Option<Comparison> {
        self.comparisons
            .iter()
            .find(|c| c.invariant == invariant)
            .map(|c| c.status)
    }

    pub fn summary(&self) -> String {
        if self.separated {
            format!(
                "different Galois orbits (separated by: {})",
                self.separators().join(", ")
            )
        } else {
            "not separated".to_string()
        }
    }
}

/// Compares two reports invariant by invariant. Reports must come from the same pattern list.
pub fn compare_reports(a: &InvariantReport, b: &InvariantReport) -> Verdict {
    let status = |same: bool| {
        if same {
            Comparison::Equal
        } else {
            Comparison::Different
        }
    };
    let mut comparisons = vec![
        InvariantComparison {
            invariant: "valency".into(),
            status: status(a.valency == b.valency),
        },
        InvariantComparison {
            invariant: "genus".into(),
            status: status(a.genus == b.genus),
        },
        InvariantComparison {
            invariant: "aut_order".into(),
            status: status(a.aut_order == b.aut_order),
        },
        InvariantComparison {
            invariant: "monodromy".into(),
            status: status(a.monodromy == b.monodromy),
        },
        InvariantComparison {
            invariant: "nielsen".into(),
            status: status(
                nielsen_compare(&a.nielsen, &b.nielsen) == NielsenVerdict::Indistinguishable,
            ),
        },
    ];
    for pa in &a.per_pattern {
        let same = b.pattern(&pa.pattern) == Some(&pa.fingerprint);
        comparisons.push(InvariantComparison {
            invariant: format!("M_{}", pa.pattern),
            status: status(same),
        });
    }
    let separated = comparisons
        .iter()
        .any(|c| c.status == Comparison::Different);
    Verdict {
        comparisons,
        separated,
    }
}

pub fn distinguish(a: &Dessin, b: &Dessin, patterns: &[ExtendingPattern]) -> Verdict {
    compare_reports(&report("a", a, patterns), &report("b", b, patterns))
}
