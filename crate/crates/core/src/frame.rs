//! Finite frames: complete Heyting algebras stored as precomputed tables.
//!
//! Elements are dense indices `0..size`. Construction takes an order
//! relation (covering pairs are enough), closes it reflexively and
//! transitively, and then checks that the result is a distributive lattice.
//! Every binary operation is tabulated at build time so the algorithms
//! downstream are pure table lookups.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::element_set::ElementSet;

/// Default upper bound on the number of elements a frame may have.
///
/// Four `size × size` tables are kept per frame and validation is cubic, so
/// this stays well below what the index type could address.
pub const DEFAULT_MAX_ELEMENTS: usize = 1024;

/// Index of an element of one particular [`Frame`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId(u32);

impl ElementId {
    pub fn new(index: usize) -> Self {
        ElementId(u32::try_from(index).expect("element index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("a frame needs at least one element")]
    Empty,
    #[error("frame of {size} elements exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("element index {index} out of range for a frame of {size} elements")]
    OutOfRange { index: usize, size: usize },
    #[error("order relation is not antisymmetric: {0} and {1} lie on a cycle")]
    NotAntisymmetric(usize, usize),
    #[error("not a lattice: elements {a} and {b} have no {missing}")]
    NotALattice {
        a: usize,
        b: usize,
        missing: &'static str,
    },
    #[error("not distributive: a={a}, b={b}, c={c} violate a∧(b∨c) = (a∧b)∨(a∧c)")]
    NotDistributive { a: usize, b: usize, c: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("implication table must have {expected} entries, got {got}")]
    HeytingTableShape { expected: usize, got: usize },
}

/// A finite frame with every lattice and Heyting operation precomputed.
///
/// Frames are immutable once built; share them freely across threads.
#[derive(Clone)]
pub struct Frame {
    size: usize,
    leq: FixedBitSet,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
    heyting: Vec<ElementId>,
    bottom: ElementId,
    top: ElementId,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame")
            .field("size", &self.size)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

/// Builds a frame from `size` elements and an order relation given as
/// `(lower, upper)` pairs, using [`DEFAULT_MAX_ELEMENTS`] as the cap.
pub fn build_frame<I>(size: usize, leq_pairs: I) -> Result<Frame, FrameError>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    build_frame_capped(size, leq_pairs, DEFAULT_MAX_ELEMENTS)
}

pub fn build_frame_capped<I>(size: usize, leq_pairs: I, cap: usize) -> Result<Frame, FrameError>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    if size == 0 {
        return Err(FrameError::Empty);
    }
    if size > cap {
        return Err(FrameError::TooLarge { size, cap });
    }
    let mut leq = FixedBitSet::with_capacity(size * size);
    for i in 0..size {
        leq.insert(i * size + i);
    }
    for (lo, hi) in leq_pairs {
        for index in [lo, hi] {
            if index >= size {
                return Err(FrameError::OutOfRange { index, size });
            }
        }
        leq.insert(lo * size + hi);
    }
    transitive_closure(&mut leq, size);
    for a in 0..size {
        for b in (a + 1)..size {
            if leq[a * size + b] && leq[b * size + a] {
                return Err(FrameError::NotAntisymmetric(a, b));
            }
        }
    }

    // Ascending linear extension: a < b implies |↓a| < |↓b|.
    let mut ascending: Vec<usize> = (0..size).collect();
    let down_size: Vec<usize> = (0..size)
        .map(|a| (0..size).filter(|&c| leq[c * size + a]).count())
        .collect();
    ascending.sort_by_key(|&a| (down_size[a], a));

    let le = |a: usize, b: usize| leq[a * size + b];
    let mut meet = vec![ElementId(0); size * size];
    let mut join = vec![ElementId(0); size * size];
    for a in 0..size {
        for b in a..size {
            let glb = extremal_bound(&ascending, |c| le(c, a) && le(c, b), le, true).ok_or(
                FrameError::NotALattice {
                    a,
                    b,
                    missing: "meet",
                },
            )?;
            let lub = extremal_bound(&ascending, |c| le(a, c) && le(b, c), le, false).ok_or(
                FrameError::NotALattice {
                    a,
                    b,
                    missing: "join",
                },
            )?;
            meet[a * size + b] = ElementId::new(glb);
            meet[b * size + a] = ElementId::new(glb);
            join[a * size + b] = ElementId::new(lub);
            join[b * size + a] = ElementId::new(lub);
        }
    }

    let bottom = ascending[0];
    let top = ascending[size - 1];

    for a in 0..size {
        for b in 0..size {
            for c in b..size {
                let lhs = meet[a * size + join[b * size + c].index()];
                let ab = meet[a * size + b].index();
                let ac = meet[a * size + c].index();
                if lhs != join[ab * size + ac] {
                    return Err(FrameError::NotDistributive { a, b, c });
                }
            }
        }
    }

    // {c | a∧c ≤ b} is a join-closed down-set, so the first hit scanning
    // downwards along the linear extension is its maximum.
    let mut heyting = vec![ElementId(0); size * size];
    for a in 0..size {
        for b in 0..size {
            let imp = ascending
                .iter()
                .rev()
                .copied()
                .find(|&c| le(meet[a * size + c].index(), b))
                .expect("bottom always qualifies");
            heyting[a * size + b] = ElementId::new(imp);
        }
    }

    Ok(Frame {
        size,
        leq,
        meet,
        join,
        heyting,
        bottom: ElementId::new(bottom),
        top: ElementId::new(top),
        labels: None,
    })
}

/// Greatest element (or least, if `!greatest`) of the set selected by
/// `member`, provided that set has one.
fn extremal_bound(
    ascending: &[usize],
    member: impl Fn(usize) -> bool,
    le: impl Fn(usize, usize) -> bool,
    greatest: bool,
) -> Option<usize> {
    let candidate = if greatest {
        ascending.iter().rev().copied().find(|&c| member(c))?
    } else {
        ascending.iter().copied().find(|&c| member(c))?
    };
    let dominates = ascending.iter().copied().filter(|&c| member(c)).all(|c| {
        if greatest {
            le(c, candidate)
        } else {
            le(candidate, c)
        }
    });
    dominates.then_some(candidate)
}

fn transitive_closure(leq: &mut FixedBitSet, size: usize) {
    // Warshall over rows: if i ≤ k then i ≤ everything above k.
    for k in 0..size {
        for i in 0..size {
            if i != k && leq[i * size + k] {
                for j in 0..size {
                    if leq[k * size + j] {
                        leq.insert(i * size + j);
                    }
                }
            }
        }
    }
}

impl Frame {
    /// Assembles a frame from tables that are already known to describe a
    /// finite frame (for example a product of two validated frames).
    pub(crate) fn from_tables(
        size: usize,
        leq: FixedBitSet,
        meet: Vec<ElementId>,
        join: Vec<ElementId>,
        heyting: Vec<ElementId>,
        bottom: ElementId,
        top: ElementId,
    ) -> Frame {
        debug_assert_eq!(leq.len(), size * size);
        debug_assert_eq!(meet.len(), size * size);
        Frame {
            size,
            leq,
            meet,
            join,
            heyting,
            bottom,
            top,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Frame, FrameError> {
        if labels.len() != self.size {
            return Err(FrameError::LabelCount {
                expected: self.size,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Replaces the computed implication table with an externally supplied
    /// one, row-major (`table[a * size + b]` is `a → b`).
    ///
    /// Only the shape and index ranges are checked. The adjunction is not:
    /// a frame carrying a bad table is how `verify_heyting_laws` gets
    /// exercised on corrupted input.
    pub fn with_heyting_table(mut self, table: Vec<usize>) -> Result<Frame, FrameError> {
        let expected = self.size * self.size;
        if table.len() != expected {
            return Err(FrameError::HeytingTableShape {
                expected,
                got: table.len(),
            });
        }
        let mut converted = Vec::with_capacity(expected);
        for index in table {
            converted.push(self.id(index)?);
        }
        self.heyting = converted;
        Ok(self)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn bottom(&self) -> ElementId {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> ElementId {
        self.top
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.size).map(ElementId::new)
    }

    /// Checked conversion from a raw index.
    pub fn id(&self, index: usize) -> Result<ElementId, FrameError> {
        if index < self.size {
            Ok(ElementId::new(index))
        } else {
            Err(FrameError::OutOfRange {
                index,
                size: self.size,
            })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of an element: its label, or its index when unlabelled.
    pub fn label(&self, a: ElementId) -> String {
        match &self.labels {
            Some(labels) => labels[a.index()].clone(),
            None => a.index().to_string(),
        }
    }

    pub fn find_label(&self, label: &str) -> Option<ElementId> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l == label)
            .map(ElementId::new)
    }

    #[inline]
    pub fn leq(&self, a: ElementId, b: ElementId) -> bool {
        self.leq[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn meet(&self, a: ElementId, b: ElementId) -> ElementId {
        self.meet[a.index() * self.size + b.index()]
    }

    #[inline]
    pub fn join(&self, a: ElementId, b: ElementId) -> ElementId {
        self.join[a.index() * self.size + b.index()]
    }

    /// The implication `a → b`, the largest `c` with `a ∧ c ≤ b`.
    #[inline]
    pub fn heyting(&self, a: ElementId, b: ElementId) -> ElementId {
        self.heyting[a.index() * self.size + b.index()]
    }

    /// `a* = a → 0`.
    #[inline]
    pub fn pseudocomplement(&self, a: ElementId) -> ElementId {
        self.heyting(a, self.bottom)
    }

    pub fn is_dense_element(&self, a: ElementId) -> bool {
        self.pseudocomplement(a) == self.bottom
    }

    /// Infimum of a set; the empty meet is the top element.
    pub fn big_meet(&self, set: &ElementSet) -> ElementId {
        self.meet_all(set.iter())
    }

    /// Supremum of a set; the empty join is the bottom element.
    pub fn big_join(&self, set: &ElementSet) -> ElementId {
        self.join_all(set.iter())
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = ElementId>) -> ElementId {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Elements `b` with `a ⋖ b` (b covers a).
    pub fn upper_covers(&self, a: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&b| b != a && self.leq(a, b))
            .filter(|&b| {
                !self
                    .elements()
                    .any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b))
            })
            .collect()
    }

    /// All covering pairs `(lower, upper)`, in index order.
    pub fn covering_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.elements()
            .flat_map(|a| self.upper_covers(a).into_iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.size)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    /// `↑a`.
    pub fn up_set(&self, a: ElementId) -> ElementSet {
        ElementSet::from_ids(self.size, self.elements().filter(|&b| self.leq(a, b)))
    }
}
