//! Exhaustive checking of the standard Heyting-operator rules H1–H12.
//!
//! H1–H10 quantify over elements and are checked over every pair or triple.
//! H11 and H12 quantify over families; they run over every subset when the
//! frame is small enough and over a seeded random sample of subsets otherwise.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::element_set::ElementSet;
use crate::frame::{ElementId, Frame};

/// Frames up to this size get H11/H12 checked over all 2^n subsets.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 12;
/// Subsets sampled per family law above [`EXHAUSTIVE_SUBSET_LIMIT`].
pub const SAMPLED_SUBSETS: usize = 1000;
pub const DEFAULT_LAW_SEED: u64 = 0x4845_5954_494e_4721;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HeytingLaw {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    H9,
    H10,
    H11,
    H12,
}

impl HeytingLaw {
    pub const ALL: [HeytingLaw; 12] = [
        HeytingLaw::H1,
        HeytingLaw::H2,
        HeytingLaw::H3,
        HeytingLaw::H4,
        HeytingLaw::H5,
        HeytingLaw::H6,
        HeytingLaw::H7,
        HeytingLaw::H8,
        HeytingLaw::H9,
        HeytingLaw::H10,
        HeytingLaw::H11,
        HeytingLaw::H12,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            HeytingLaw::H1 => "1→a = a",
            HeytingLaw::H2 => "a ≤ b ⟺ a→b = 1",
            HeytingLaw::H3 => "a ≤ b→a",
            HeytingLaw::H4 => "a→b = a→(a∧b)",
            HeytingLaw::H5 => "a∧(a→b) = a∧b",
            HeytingLaw::H6 => "a∧b = a∧c ⟺ a→b = a→c",
            HeytingLaw::H7 => "(a∧b)→c = a→(b→c) = b→(a→c)",
            HeytingLaw::H8 => "a = (a∨b)∧(b→a)",
            HeytingLaw::H9 => "a ≤ (a→b)→b",
            HeytingLaw::H10 => "((a→b)→b)→b = a→b",
            HeytingLaw::H11 => "(⋁ aᵢ)→b = ⋀(aᵢ→b)",
            HeytingLaw::H12 => "b→(⋀ aᵢ) = ⋀(b→aᵢ)",
        }
    }
}

impl fmt::Display for HeytingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Counterexample to a law: the named elements (`a`, `b`, `c` in the order
/// the law mentions them) and, for H11/H12, the offending family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<ElementId>,
    pub family: Option<ElementSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub law: HeytingLaw,
    pub witness: Option<Witness>,
    /// Number of instances examined.
    pub instances: usize,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub results: Vec<LawResult>,
    /// Whether H11/H12 covered every subset.
    pub families_exhaustive: bool,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.results.iter().filter(|r| !r.passed())
    }

    pub fn get(&self, law: HeytingLaw) -> &LawResult {
        &self.results[law as usize]
    }

    /// One human-readable line per failed law, using frame labels.
    pub fn describe_failures(&self, frame: &Frame) -> Vec<String> {
        self.failures()
            .map(|r| {
                let w = r.witness.as_ref().expect("failed law has a witness");
                let names = ["a", "b", "c"];
                let mut parts: Vec<String> = w
                    .elements
                    .iter()
                    .zip(names)
                    .map(|(&e, n)| format!("{n}={}", frame.label(e)))
                    .collect();
                if let Some(family) = &w.family {
                    let members: Vec<String> = family.iter().map(|e| frame.label(e)).collect();
                    parts.push(format!("family={{{}}}", members.join(",")));
                }
                format!(
                    "{}: {} fails at {}",
                    r.law,
                    r.law.statement(),
                    parts.join(", ")
                )
            })
            .collect()
    }
}

pub fn verify_heyting_laws(frame: &Frame) -> LawReport {
    verify_heyting_laws_with(
        frame,
        EXHAUSTIVE_SUBSET_LIMIT,
        SAMPLED_SUBSETS,
        DEFAULT_LAW_SEED,
    )
}

pub fn verify_heyting_laws_with(
    frame: &Frame,
    exhaustive_limit: usize,
    samples: usize,
    seed: u64,
) -> LawReport {
    let f = frame;
    let one = f.top();
    let imp = |a, b| f.heyting(a, b);
    let mut results = Vec::with_capacity(12);

    results.push(check_unary(f, HeytingLaw::H1, |a| imp(one, a) == a));
    results.push(check_binary(f, HeytingLaw::H2, |a, b| {
        f.leq(a, b) == (imp(a, b) == one)
    }));
    results.push(check_binary(f, HeytingLaw::H3, |a, b| f.leq(a, imp(b, a))));
    results.push(check_binary(f, HeytingLaw::H4, |a, b| {
        imp(a, b) == imp(a, f.meet(a, b))
    }));
    results.push(check_binary(f, HeytingLaw::H5, |a, b| {
        f.meet(a, imp(a, b)) == f.meet(a, b)
    }));
    results.push(check_ternary(f, HeytingLaw::H6, |a, b, c| {
        (f.meet(a, b) == f.meet(a, c)) == (imp(a, b) == imp(a, c))
    }));
    results.push(check_ternary(f, HeytingLaw::H7, |a, b, c| {
        let lhs = imp(f.meet(a, b), c);
        lhs == imp(a, imp(b, c)) && lhs == imp(b, imp(a, c))
    }));
    results.push(check_binary(f, HeytingLaw::H8, |a, b| {
        a == f.meet(f.join(a, b), imp(b, a))
    }));
    results.push(check_binary(f, HeytingLaw::H9, |a, b| {
        f.leq(a, imp(imp(a, b), b))
    }));
    results.push(check_binary(f, HeytingLaw::H10, |a, b| {
        imp(imp(imp(a, b), b), b) == imp(a, b)
    }));

    let families = FamilySource::new(f.size(), exhaustive_limit, samples, seed);
    results.push(check_family(f, HeytingLaw::H11, &families, |family, b| {
        let lhs = imp(f.big_join(family), b);
        let rhs = f.meet_all(family.iter().map(|a| imp(a, b)));
        lhs == rhs
    }));
    results.push(check_family(f, HeytingLaw::H12, &families, |family, b| {
        let lhs = imp(b, f.big_meet(family));
        let rhs = f.meet_all(family.iter().map(|a| imp(b, a)));
        lhs == rhs
    }));

    LawReport {
        results,
        families_exhaustive: families.exhaustive(),
    }
}

fn check_unary(f: &Frame, law: HeytingLaw, holds: impl Fn(ElementId) -> bool) -> LawResult {
    let witness = f.elements().find(|&a| !holds(a)).map(|a| Witness {
        elements: vec![a],
        family: None,
    });
    LawResult {
        law,
        witness,
        instances: f.size(),
    }
}

fn check_binary(
    f: &Frame,
    law: HeytingLaw,
    holds: impl Fn(ElementId, ElementId) -> bool,
) -> LawResult {
    let witness = f
        .elements()
        .flat_map(|a| f.elements().map(move |b| (a, b)))
        .find(|&(a, b)| !holds(a, b))
        .map(|(a, b)| Witness {
            elements: vec![a, b],
            family: None,
        });
    LawResult {
        law,
        witness,
        instances: f.size().pow(2),
    }
}

fn check_ternary(
    f: &Frame,
    law: HeytingLaw,
    holds: impl Fn(ElementId, ElementId, ElementId) -> bool,
) -> LawResult {
    let mut witness = None;
    'search: for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if !holds(a, b, c) {
                    witness = Some(Witness {
                        elements: vec![a, b, c],
                        family: None,
                    });
                    break 'search;
                }
            }
        }
    }
    LawResult {
        law,
        witness,
        instances: f.size().pow(3),
    }
}

fn check_family(
    f: &Frame,
    law: HeytingLaw,
    families: &FamilySource,
    holds: impl Fn(&ElementSet, ElementId) -> bool,
) -> LawResult {
    let mut instances = 0;
    for family in families.iter() {
        for b in f.elements() {
            instances += 1;
            if !holds(&family, b) {
                return LawResult {
                    law,
                    witness: Some(Witness {
                        elements: vec![b],
                        family: Some(family),
                    }),
                    instances,
                };
            }
        }
    }
    LawResult {
        law,
        witness: None,
        instances,
    }
}

/// Either every subset of the frame, or a fixed pseudo-random sample.
enum FamilySource {
    All { size: usize },
    Sampled(Vec<ElementSet>),
}

impl FamilySource {
    fn new(size: usize, exhaustive_limit: usize, samples: usize, seed: u64) -> Self {
        if size <= exhaustive_limit.min(63) {
            return FamilySource::All { size };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampled = (0..samples)
            .map(|_| {
                ElementSet::from_ids(
                    size,
                    (0..size)
                        .filter(|_| rng.random_bool(0.5))
                        .map(ElementId::new),
                )
            })
            .collect();
        FamilySource::Sampled(sampled)
    }

    fn exhaustive(&self) -> bool {
        matches!(self, FamilySource::All { .. })
    }

    fn iter(&self) -> Box<dyn Iterator<Item = ElementSet> + '_> {
        match self {
            FamilySource::All { size } => {
                let size = *size;
                Box::new((0..1u64 << size).map(move |m| ElementSet::from_mask(size, m)))
            }
            FamilySource::Sampled(sets) => Box::new(sets.iter().cloned()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{fixtures, standard_frame, StandardFamily};

    #[test]
    fn fixtures_satisfy_every_law() {
        for f in [fixtures::c3(), fixtures::b4(), fixtures::f5()] {
            let report = verify_heyting_laws(&f);
            assert!(report.all_passed(), "{:?}", report.describe_failures(&f));
            assert!(report.families_exhaustive);
            assert_eq!(report.results.len(), 12);
        }
    }

    #[test]
    fn large_frames_sample_families() {
        let f = standard_frame(StandardFamily::Boolean, 4).unwrap();
        let report = verify_heyting_laws(&f);
        assert!(report.all_passed());
        assert!(!report.families_exhaustive);
        assert_eq!(report.get(HeytingLaw::H11).instances, SAMPLED_SUBSETS * 16);
    }

    #[test]
    fn tampered_table_fails_h5_with_witness() {
        // In C3, m→0 is 0. Claiming it is m breaks m∧(m→0) = m∧0.
        let c3 = fixtures::c3();
        let m = c3.find_label("m").unwrap();
        let mut table: Vec<usize> = Vec::new();
        for a in c3.elements() {
            for b in c3.elements() {
                table.push(c3.heyting(a, b).index());
            }
        }
        table[m.index() * 3] = m.index();
        let bad = c3.with_heyting_table(table).unwrap();
        let report = verify_heyting_laws(&bad);
        let h5 = report.get(HeytingLaw::H5);
        assert!(!h5.passed());
        assert_eq!(h5.witness.as_ref().unwrap().elements, vec![m, bad.bottom()]);
        let lines = report.describe_failures(&bad);
        assert!(lines
            .iter()
            .any(|l| l.starts_with("H5:") && l.contains("a=m, b=0")));
    }
}
