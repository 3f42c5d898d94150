//! Sublocales of a finite frame, represented as subsets of its elements.
//!
//! A subset `S ⊆ L` is a sublocale when it contains the top, is closed under
//! meets and satisfies `a → s ∈ S` for every `a ∈ L` and `s ∈ S`. In the
//! coframe `S(L)` intersections are meets, and the join of a family is the
//! set of all meets of elements of its union.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::element_set::ElementSet;
use crate::frame::{build_frame, ElementId, Frame};

/// Default largest frame whose subsets are enumerated (2^16 candidates).
pub const DEFAULT_ENUMERATION_CAP: usize = 16;
/// `verify_coframe_law` goes exhaustive at or below this many sublocales.
pub const COFRAME_EXHAUSTIVE_LIMIT: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SublocaleError {
    #[error("subset is not a sublocale")]
    NotASublocale,
    #[error("sublocales belong to different frames")]
    FrameMismatch,
    #[error("enumeration needs at most {cap} elements, frame has {size}")]
    TooLarge { size: usize, cap: usize },
    #[error("element {0} is not prime")]
    NotPrime(String),
}

/// A sublocale of `frame`, stored as a member bitset.
#[derive(Clone)]
pub struct Sublocale<'f> {
    frame: &'f Frame,
    members: ElementSet,
}

impl<'f> Sublocale<'f> {
    /// Checks the sublocale conditions before wrapping `members`.
    pub fn new(frame: &'f Frame, members: ElementSet) -> Result<Self, SublocaleError> {
        if is_sublocale(frame, &members) {
            Ok(Sublocale { frame, members })
        } else {
            Err(SublocaleError::NotASublocale)
        }
    }

    pub(crate) fn new_unchecked(frame: &'f Frame, members: ElementSet) -> Self {
        debug_assert!(is_sublocale(frame, &members));
        Sublocale { frame, members }
    }

    /// The whole frame, the greatest sublocale.
    pub fn whole(frame: &'f Frame) -> Self {
        Sublocale::new_unchecked(frame, frame.full_set())
    }

    /// `{1}`, the least sublocale.
    pub fn trivial(frame: &'f Frame) -> Self {
        Sublocale::new_unchecked(frame, ElementSet::from_ids(frame.size(), [frame.top()]))
    }

    pub fn frame(&self) -> &'f Frame {
        self.frame
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn into_members(self) -> ElementSet {
        self.members
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn same_frame(&self, other: &Sublocale<'_>) -> bool {
        std::ptr::eq(self.frame, other.frame)
    }

    /// Equality that reports sublocales of different frames as an error.
    pub fn try_eq(&self, other: &Sublocale<'_>) -> Result<bool, SublocaleError> {
        if self.same_frame(other) {
            Ok(self.members == other.members)
        } else {
            Err(SublocaleError::FrameMismatch)
        }
    }

    pub fn is_subset(&self, other: &Sublocale<'_>) -> Result<bool, SublocaleError> {
        if self.same_frame(other) {
            Ok(self.members.is_subset(&other.members))
        } else {
            Err(SublocaleError::FrameMismatch)
        }
    }

    /// Labels of the members in element order.
    pub fn labels(&self) -> Vec<String> {
        self.members.iter().map(|a| self.frame.label(a)).collect()
    }

    /// `⋀S`.
    pub fn infimum(&self) -> ElementId {
        self.frame.big_meet(&self.members)
    }

    /// `S̄ = c(⋀S)`, the smallest closed sublocale containing `S`.
    pub fn closure(&self) -> Sublocale<'f> {
        closed_sublocale(self.frame, self.infimum())
    }

    /// Dense means `⋀S = 0`.
    pub fn is_dense(&self) -> bool {
        self.infimum() == self.frame.bottom()
    }

    /// Intersection of all open sublocales containing `S`.
    pub fn fitting(&self) -> Sublocale<'f> {
        let f = self.frame;
        let mut acc = f.full_set();
        for a in f.elements() {
            let open = open_sublocale(f, a);
            if self.members.is_subset(&open.members) {
                acc.intersect_with(&open.members);
            }
        }
        Sublocale::new_unchecked(f, acc)
    }

    pub fn is_fitted(&self) -> bool {
        self.fitting().members == self.members
    }

    /// `ν_S(a) = ⋀{s ∈ S | a ≤ s}`.
    pub fn nucleus(&self) -> Nucleus<'f> {
        let f = self.frame;
        let table = f
            .elements()
            .map(|a| f.meet_all(self.members.iter().filter(|&s| f.leq(a, s))))
            .collect();
        Nucleus { frame: f, table }
    }

    /// The frame structure carried by the members: ambient order, meets and
    /// implication; joins are `ν_S` of ambient joins.
    pub fn induced_frame(&self) -> InducedFrame {
        let f = self.frame;
        let embedding: Vec<ElementId> = self.members.iter().collect();
        let mut pairs = Vec::new();
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                if i != j && f.leq(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        let labels = embedding.iter().map(|&a| f.label(a)).collect();
        let frame = build_frame(embedding.len(), pairs)
            .and_then(|g| g.with_labels(labels))
            .expect("a sublocale of a frame is a frame");
        let mut position = vec![None; f.size()];
        for (i, &a) in embedding.iter().enumerate() {
            position[a.index()] = Some(ElementId::new(i));
        }
        InducedFrame {
            frame,
            embedding,
            position,
        }
    }
}

impl PartialEq for Sublocale<'_> {
    /// Panics when the sublocales live in different frames; use
    /// [`Sublocale::try_eq`] to get an error instead.
    fn eq(&self, other: &Self) -> bool {
        self.try_eq(other)
            .expect("compared sublocales of different frames")
    }
}

impl Eq for Sublocale<'_> {}

impl fmt::Debug for Sublocale<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels()).finish()
    }
}

/// A nucleus on a frame as a lookup table.
#[derive(Clone)]
pub struct Nucleus<'f> {
    frame: &'f Frame,
    table: Vec<ElementId>,
}

impl<'f> Nucleus<'f> {
    pub fn apply(&self, a: ElementId) -> ElementId {
        self.table[a.index()]
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn is_inflationary(&self) -> bool {
        self.frame
            .elements()
            .all(|a| self.frame.leq(a, self.apply(a)))
    }

    pub fn is_idempotent(&self) -> bool {
        self.frame
            .elements()
            .all(|a| self.apply(self.apply(a)) == self.apply(a))
    }

    pub fn preserves_meets(&self) -> bool {
        let f = self.frame;
        f.elements().all(|a| {
            f.elements()
                .all(|b| self.apply(f.meet(a, b)) == f.meet(self.apply(a), self.apply(b)))
        })
    }

    pub fn is_nucleus(&self) -> bool {
        self.is_inflationary() && self.is_idempotent() && self.preserves_meets()
    }

    /// The fixed points, which form the corresponding sublocale.
    pub fn fixed_points(&self) -> ElementSet {
        ElementSet::from_ids(
            self.frame.size(),
            self.frame.elements().filter(|&a| self.apply(a) == a),
        )
    }
}

impl fmt::Debug for Nucleus<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.frame
                    .elements()
                    .map(|a| (self.frame.label(a), self.frame.label(self.apply(a)))),
            )
            .finish()
    }
}

/// A sublocale viewed as a frame in its own right.
#[derive(Clone, Debug)]
pub struct InducedFrame {
    pub frame: Frame,
    embedding: Vec<ElementId>,
    position: Vec<Option<ElementId>>,
}

impl InducedFrame {
    /// Ambient element behind an element of the induced frame.
    pub fn to_ambient(&self, a: ElementId) -> ElementId {
        self.embedding[a.index()]
    }

    /// Induced-frame element for an ambient member, `None` for non-members.
    pub fn from_ambient(&self, a: ElementId) -> Option<ElementId> {
        self.position.get(a.index()).copied().flatten()
    }
}

/// Membership test for the sublocale conditions. Meet-closure is checked on
/// pairs plus the top, which suffices in a finite lattice.
pub fn is_sublocale(frame: &Frame, set: &ElementSet) -> bool {
    if set.universe() != frame.size() || !set.contains(frame.top()) {
        return false;
    }
    let members: Vec<ElementId> = set.iter().collect();
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            if !set.contains(frame.meet(s, t)) {
                return false;
            }
        }
    }
    members
        .iter()
        .all(|&s| frame.elements().all(|a| set.contains(frame.heyting(a, s))))
}

/// `o(a) = {a → b | b ∈ L}`.
pub fn open_sublocale(frame: &Frame, a: ElementId) -> Sublocale<'_> {
    let members = ElementSet::from_ids(frame.size(), frame.elements().map(|b| frame.heyting(a, b)));
    Sublocale::new_unchecked(frame, members)
}

/// `c(a) = ↑a`.
pub fn closed_sublocale(frame: &Frame, a: ElementId) -> Sublocale<'_> {
    Sublocale::new_unchecked(frame, frame.up_set(a))
}

/// Intersection of a family; the empty family gives the whole frame.
pub fn intersect_sublocales<'f>(
    frame: &'f Frame,
    family: &[Sublocale<'f>],
) -> Result<Sublocale<'f>, SublocaleError> {
    let mut acc = frame.full_set();
    for s in family {
        if !std::ptr::eq(s.frame, frame) {
            return Err(SublocaleError::FrameMismatch);
        }
        acc.intersect_with(&s.members);
    }
    Ok(Sublocale::new_unchecked(frame, acc))
}

/// Join in `S(L)`: all meets of subsets of the union. The empty family
/// gives `{1}`.
pub fn join_sublocales<'f>(
    frame: &'f Frame,
    family: &[Sublocale<'f>],
) -> Result<Sublocale<'f>, SublocaleError> {
    let mut acc = ElementSet::from_ids(frame.size(), [frame.top()]);
    for s in family {
        if !std::ptr::eq(s.frame, frame) {
            return Err(SublocaleError::FrameMismatch);
        }
        acc.union_with(&s.members);
    }
    Ok(Sublocale::new_unchecked(frame, meet_closure(frame, acc)))
}

fn meet_closure(frame: &Frame, mut set: ElementSet) -> ElementSet {
    loop {
        let members: Vec<ElementId> = set.iter().collect();
        let mut grew = false;
        for (i, &s) in members.iter().enumerate() {
            for &t in &members[i + 1..] {
                let m = frame.meet(s, t);
                if !set.contains(m) {
                    set.insert(m);
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

/// Every sublocale of a frame with at most [`DEFAULT_ENUMERATION_CAP`]
/// elements, sorted by member bitset.
pub fn enumerate_sublocales(frame: &Frame) -> Result<Vec<Sublocale<'_>>, SublocaleError> {
    enumerate_sublocales_capped(frame, DEFAULT_ENUMERATION_CAP)
}

/// Brute-force filter over all subsets containing the top: candidates are
/// generated by increasing size, kept when meet-closed, then tested for
/// closure under `a → (−)`. Output is sorted by member bitset.
pub fn enumerate_sublocales_capped(
    frame: &Frame,
    cap: usize,
) -> Result<Vec<Sublocale<'_>>, SublocaleError> {
    let n = frame.size();
    if n > cap.min(63) {
        return Err(SublocaleError::TooLarge {
            size: n,
            cap: cap.min(63),
        });
    }
    let top = frame.top().index();
    let others: Vec<usize> = (0..n).filter(|&i| i != top).collect();
    // implications[s]: mask of {a → s | a ∈ L}.
    let implications: Vec<u64> = frame
        .elements()
        .map(|s| {
            frame
                .elements()
                .fold(0u64, |m, a| m | 1 << frame.heyting(a, s).index())
        })
        .collect();

    let mut found = Vec::new();
    let spread = |bits: u64| -> u64 {
        others
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .fold(1u64 << top, |m, (_, &i)| m | 1 << i)
    };
    for size in 0..=others.len() {
        for bits in combinations(others.len(), size) {
            let mask = spread(bits);
            if meet_closed(frame, mask) && ones(mask).all(|s| implications[s] & !mask == 0) {
                found.push(mask);
            }
        }
    }
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|m| Sublocale::new_unchecked(frame, ElementSet::from_mask(n, m)))
        .collect())
}

/// Every sublocale of a frame with at most 63 elements, sorted by member
/// bitset, via Ganter's NextClosure over the closure system `S(L)`.
///
/// Costs one closure per sublocale and element rather than one test per
/// subset, so it reaches frames the brute-force filter cannot.
pub fn enumerate_sublocales_by_closure(
    frame: &Frame,
) -> Result<Vec<Sublocale<'_>>, SublocaleError> {
    let n = frame.size();
    if n > 63 {
        return Err(SublocaleError::TooLarge { size: n, cap: 63 });
    }
    let mut found = Vec::new();
    let mut current = sublocale_closure(frame, 0);
    'next: loop {
        found.push(current);
        for i in (0..n).rev() {
            let bit = 1u64 << i;
            if current & bit != 0 {
                continue;
            }
            let below = bit - 1;
            let candidate = sublocale_closure(frame, (current & below) | bit);
            if candidate & below == current & below {
                current = candidate;
                continue 'next;
            }
        }
        break;
    }
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|m| Sublocale::new_unchecked(frame, ElementSet::from_mask(n, m)))
        .collect())
}

/// Smallest sublocale containing `mask`: add the top, then close under
/// binary meets and `a → (−)` until nothing changes.
fn sublocale_closure(frame: &Frame, mask: u64) -> u64 {
    let mut set = mask | 1 << frame.top().index();
    loop {
        let mut next = set;
        for s in ones(set) {
            let s = ElementId::new(s);
            for t in ones(set) {
                next |= 1 << frame.meet(s, ElementId::new(t)).index();
            }
            for a in frame.elements() {
                next |= 1 << frame.heyting(a, s).index();
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn meet_closed(frame: &Frame, mask: u64) -> bool {
    let mut rest = mask;
    while rest != 0 {
        let s = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut others = rest;
        while others != 0 {
            let t = others.trailing_zeros() as usize;
            others &= others - 1;
            let m = frame.meet(ElementId::new(s), ElementId::new(t)).index();
            if mask >> m & 1 == 0 {
                return false;
            }
        }
    }
    true
}

/// All `k`-subsets of `0..n` as bitmasks, in increasing numeric order
/// (Gosper's hack).
fn combinations(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let current = next?;
        if current >= limit && !(k == 0 && current == 0) {
            return None;
        }
        next = if k == 0 {
            None
        } else {
            let c = current & current.wrapping_neg();
            let r = current + c;
            Some((((r ^ current) >> 2) / c) | r)
        };
        Some(current)
    })
}

/// Points: elements `p ≠ 1` such that `a ∧ b ≤ p` implies `a ≤ p` or `b ≤ p`.
pub fn prime_elements(frame: &Frame) -> ElementSet {
    let f = frame;
    ElementSet::from_ids(
        f.size(),
        f.elements().filter(|&p| {
            p != f.top()
                && f.elements().all(|a| {
                    f.elements()
                        .all(|b| !f.leq(f.meet(a, b), p) || f.leq(a, p) || f.leq(b, p))
                })
        }),
    )
}

/// `{1, p}` for a point `p`.
pub fn point_sublocale(frame: &Frame, p: ElementId) -> Result<Sublocale<'_>, SublocaleError> {
    if !prime_elements(frame).contains(p) {
        return Err(SublocaleError::NotPrime(frame.label(p)));
    }
    Ok(Sublocale::new_unchecked(
        frame,
        ElementSet::from_ids(frame.size(), [p, frame.top()]),
    ))
}

/// A point is isolated when `{1, p}` is an open sublocale.
pub fn is_isolated_point(frame: &Frame, p: ElementId) -> Result<bool, SublocaleError> {
    let point = point_sublocale(frame, p)?;
    Ok(frame
        .elements()
        .any(|u| open_sublocale(frame, u).members == point.members))
}

#[derive(Clone, Debug)]
pub struct CoframeViolation {
    pub s: ElementSet,
    pub family: Vec<ElementSet>,
}

#[derive(Clone, Debug)]
pub struct CoframeReport {
    pub sublocale_count: usize,
    pub exhaustive: bool,
    pub triples_checked: usize,
    pub violation: Option<CoframeViolation>,
}

impl CoframeReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks `S ∨ ⋂ Tᵢ = ⋂ (S ∨ Tᵢ)` in `S(L)`.
///
/// With at most [`COFRAME_EXHAUSTIVE_LIMIT`] sublocales every `(S, T₁, T₂)`
/// is tried (binary distributivity gives the finite case); otherwise
/// `samples` random instances with families of one to three members.
pub fn verify_coframe_law(
    frame: &Frame,
    samples: usize,
    seed: u64,
) -> Result<CoframeReport, SublocaleError> {
    let all = enumerate_sublocales(frame)?;
    if all.len() <= COFRAME_EXHAUSTIVE_LIMIT {
        let mut checked = 0;
        for s in &all {
            for t1 in &all {
                for t2 in &all {
                    checked += 1;
                    let family = [t1.clone(), t2.clone()];
                    if !coframe_instance_holds(frame, s, &family) {
                        return Ok(coframe_failure(all.len(), true, checked, s, &family));
                    }
                }
            }
        }
        Ok(CoframeReport {
            sublocale_count: all.len(),
            exhaustive: true,
            triples_checked: checked,
            violation: None,
        })
    } else {
        sampled_coframe_check(frame, &all, samples, seed)
    }
}

/// Like [`verify_coframe_law`] but always samples.
pub fn verify_coframe_law_sampled(
    frame: &Frame,
    samples: usize,
    seed: u64,
) -> Result<CoframeReport, SublocaleError> {
    let all = enumerate_sublocales(frame)?;
    sampled_coframe_check(frame, &all, samples, seed)
}

fn sampled_coframe_check<'f>(
    frame: &'f Frame,
    all: &[Sublocale<'f>],
    samples: usize,
    seed: u64,
) -> Result<CoframeReport, SublocaleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let s = &all[rng.random_range(0..all.len())];
        let k = rng.random_range(1..=3);
        let family: Vec<Sublocale<'f>> = (0..k)
            .map(|_| all[rng.random_range(0..all.len())].clone())
            .collect();
        if !coframe_instance_holds(frame, s, &family) {
            return Ok(coframe_failure(all.len(), false, i + 1, s, &family));
        }
    }
    Ok(CoframeReport {
        sublocale_count: all.len(),
        exhaustive: false,
        triples_checked: samples,
        violation: None,
    })
}

fn coframe_instance_holds<'f>(
    frame: &'f Frame,
    s: &Sublocale<'f>,
    family: &[Sublocale<'f>],
) -> bool {
    let meet = intersect_sublocales(frame, family).expect("same frame");
    let lhs = join_sublocales(frame, &[s.clone(), meet]).expect("same frame");
    let joined: Vec<Sublocale<'f>> = family
        .iter()
        .map(|t| join_sublocales(frame, &[s.clone(), t.clone()]).expect("same frame"))
        .collect();
    let rhs = intersect_sublocales(frame, &joined).expect("same frame");
    lhs.members == rhs.members
}

fn coframe_failure(
    count: usize,
    exhaustive: bool,
    checked: usize,
    s: &Sublocale<'_>,
    family: &[Sublocale<'_>],
) -> CoframeReport {
    CoframeReport {
        sublocale_count: count,
        exhaustive,
        triples_checked: checked,
        violation: Some(CoframeViolation {
            s: s.members.clone(),
            family: family.iter().map(|t| t.members.clone()).collect(),
        }),
    }
}
