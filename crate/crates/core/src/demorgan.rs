//! Booleanization and DeMorganization of a finite frame.
//!
//! `B_L` is the set of regular elements `{a | a = a**}`; it is the least
//! dense sublocale, the unique Boolean dense one, and the intersection of
//! all dense open sublocales. `M_L = ⋂ₐ o(a* ∨ a**)` is the largest dense
//! extremally disconnected sublocale. Each of these characterizations is
//! computed by an independent route here, and the brute-force oracles
//! enumerate `S(L)` to certify the extremal ones.
//!
//! Predicates on sublocales always go through the induced frame: joins in a
//! sublocale are `ν_S` of ambient joins, not ambient joins.

use thiserror::Error;

use crate::element_set::ElementSet;
use crate::frame::{ElementId, Frame};
use crate::sublocale::{
    closed_sublocale, enumerate_sublocales_capped, intersect_sublocales, open_sublocale, Sublocale,
    SublocaleError, DEFAULT_ENUMERATION_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemorganError {
    /// Two routes to the same object disagreed: the kernel is broken.
    #[error("integrity failure: {0}")]
    Integrity(String),
    /// An oracle found no unique extremum where a theorem promises one.
    #[error("oracle failure: {0}")]
    OracleFailure(String),
    #[error("sublocale is not dense")]
    NotDense,
    #[error(transparent)]
    Sublocale(#[from] SublocaleError),
}

fn double_pseudocomplement(f: &Frame, a: ElementId) -> ElementId {
    f.pseudocomplement(f.pseudocomplement(a))
}

/// `B_L`, computed as both `{a | a = a**}` and `{a* | a ∈ L}`.
pub fn booleanization(frame: &Frame) -> Result<Sublocale<'_>, DemorganError> {
    let f = frame;
    let regular = ElementSet::from_ids(
        f.size(),
        f.elements().filter(|&a| double_pseudocomplement(f, a) == a),
    );
    let complements = ElementSet::from_ids(f.size(), f.elements().map(|a| f.pseudocomplement(a)));
    if regular != complements {
        return Err(DemorganError::Integrity(format!(
            "regular elements {:?} differ from pseudocomplements {:?}",
            labels(f, &regular),
            labels(f, &complements)
        )));
    }
    Sublocale::new(f, regular)
        .map_err(|_| DemorganError::Integrity("regular elements do not form a sublocale".into()))
}

/// `B_L` as the intersection of the dense open sublocales, cross-checked
/// against `⋂ₐ o(a ∨ a*)`.
pub fn booleanization_via_dense_opens(frame: &Frame) -> Result<Sublocale<'_>, DemorganError> {
    let f = frame;
    let dense_opens: Vec<Sublocale<'_>> = f
        .elements()
        .filter(|&a| f.is_dense_element(a))
        .map(|a| open_sublocale(f, a))
        .collect();
    let by_dense = intersect_sublocales(f, &dense_opens)?;
    let excluded_middle: Vec<Sublocale<'_>> = f
        .elements()
        .map(|a| open_sublocale(f, f.join(a, f.pseudocomplement(a))))
        .collect();
    let by_generators = intersect_sublocales(f, &excluded_middle)?;
    if by_dense != by_generators {
        return Err(DemorganError::Integrity(format!(
            "dense-open intersection {:?} differs from ⋂ o(a∨a*) {:?}",
            by_dense, by_generators
        )));
    }
    Ok(by_dense)
}

/// The distinct values of `a* ∨ a**`, in element order.
pub fn demorganization_generators(frame: &Frame) -> Vec<ElementId> {
    let f = frame;
    let generators = ElementSet::from_ids(
        f.size(),
        f.elements()
            .map(|a| f.join(f.pseudocomplement(a), double_pseudocomplement(f, a))),
    );
    generators.iter().collect()
}

/// `M_L = ⋂ₐ o(a* ∨ a**)`.
pub fn demorganization(frame: &Frame) -> Sublocale<'_> {
    let opens: Vec<Sublocale<'_>> = demorganization_generators(frame)
        .into_iter()
        .map(|g| open_sublocale(frame, g))
        .collect();
    intersect_sublocales(frame, &opens).expect("opens share the frame")
}

/// First element with `a* ∨ a** ≠ 1`, if any.
pub fn de_morgan_witness(frame: &Frame) -> Option<ElementId> {
    let f = frame;
    f.elements()
        .find(|&a| f.join(f.pseudocomplement(a), double_pseudocomplement(f, a)) != f.top())
}

/// Extremal disconnectedness, decided both by `a* ∨ a** = 1` for all `a`
/// and by "the closure of every open sublocale is open".
pub fn is_extremally_disconnected(frame: &Frame) -> Result<bool, DemorganError> {
    let f = frame;
    let by_law = de_morgan_witness(f).is_none();
    let opens: Vec<ElementSet> = f
        .elements()
        .map(|u| open_sublocale(f, u).into_members())
        .collect();
    let by_closures = f.elements().all(|a| {
        let closure = open_sublocale(f, a).closure();
        opens.iter().any(|o| o == closure.members())
    });
    if by_law != by_closures {
        return Err(DemorganError::Integrity(format!(
            "a*∨a**=1 says {by_law}, closures of opens say {by_closures}"
        )));
    }
    Ok(by_law)
}

pub fn is_boolean(frame: &Frame) -> bool {
    frame
        .elements()
        .all(|a| frame.join(a, frame.pseudocomplement(a)) == frame.top())
}

/// Extremal disconnectedness of a sublocale, via its induced frame.
pub fn sublocale_is_extremally_disconnected(s: &Sublocale<'_>) -> Result<bool, DemorganError> {
    is_extremally_disconnected(&s.induced_frame().frame)
}

pub fn sublocale_is_boolean(s: &Sublocale<'_>) -> bool {
    is_boolean(&s.induced_frame().frame)
}

fn labels(f: &Frame, set: &ElementSet) -> Vec<String> {
    set.iter().map(|a| f.label(a)).collect()
}

fn all_sublocales(frame: &Frame) -> Result<Vec<Sublocale<'_>>, DemorganError> {
    Ok(enumerate_sublocales_capped(frame, DEFAULT_ENUMERATION_CAP)?)
}

/// The inclusion-least member of `candidates`, required to be unique.
fn unique_minimum<'f>(
    candidates: Vec<Sublocale<'f>>,
    what: &str,
) -> Result<Sublocale<'f>, DemorganError> {
    let minima: Vec<&Sublocale<'f>> = candidates
        .iter()
        .filter(|s| {
            candidates
                .iter()
                .all(|t| s.members().is_subset(t.members()))
        })
        .collect();
    match minima.as_slice() {
        [m] => Ok((*m).clone()),
        _ => Err(DemorganError::OracleFailure(format!(
            "{} {what} candidates have no least element",
            candidates.len()
        ))),
    }
}

fn unique_maximum<'f>(
    candidates: Vec<Sublocale<'f>>,
    what: &str,
) -> Result<Sublocale<'f>, DemorganError> {
    let maxima: Vec<&Sublocale<'f>> = candidates
        .iter()
        .filter(|s| {
            candidates
                .iter()
                .all(|t| t.members().is_subset(s.members()))
        })
        .collect();
    match maxima.as_slice() {
        [m] => Ok((*m).clone()),
        _ => Err(DemorganError::OracleFailure(format!(
            "{} {what} candidates have no greatest element",
            candidates.len()
        ))),
    }
}

/// The least dense sublocale, found by enumerating `S(L)`.
pub fn oracle_least_dense(frame: &Frame) -> Result<Sublocale<'_>, DemorganError> {
    oracle_least_dense_among(all_sublocales(frame)?)
}

/// [`oracle_least_dense`] over an already enumerated `S(L)`.
pub fn oracle_least_dense_among(all: Vec<Sublocale<'_>>) -> Result<Sublocale<'_>, DemorganError> {
    let dense: Vec<Sublocale<'_>> = all.into_iter().filter(Sublocale::is_dense).collect();
    unique_minimum(dense, "dense")
}

/// The largest dense extremally disconnected sublocale, by enumeration.
pub fn oracle_largest_dense_ed(frame: &Frame) -> Result<Sublocale<'_>, DemorganError> {
    oracle_largest_dense_ed_among(all_sublocales(frame)?)
}

pub fn oracle_largest_dense_ed_among(
    all: Vec<Sublocale<'_>>,
) -> Result<Sublocale<'_>, DemorganError> {
    let mut candidates = Vec::new();
    for s in all {
        if s.is_dense() && sublocale_is_extremally_disconnected(&s)? {
            candidates.push(s);
        }
    }
    unique_maximum(candidates, "dense extremally disconnected")
}

/// The one sublocale that is both dense and Boolean, by enumeration;
/// also required to equal `booleanization`.
pub fn oracle_unique_boolean_dense(frame: &Frame) -> Result<Sublocale<'_>, DemorganError> {
    oracle_unique_boolean_dense_among(frame, all_sublocales(frame)?)
}

pub fn oracle_unique_boolean_dense_among<'f>(
    frame: &'f Frame,
    all: Vec<Sublocale<'f>>,
) -> Result<Sublocale<'f>, DemorganError> {
    let candidates: Vec<Sublocale<'_>> = all
        .into_iter()
        .filter(|s| s.is_dense() && sublocale_is_boolean(s))
        .collect();
    let [only] = candidates.as_slice() else {
        return Err(DemorganError::OracleFailure(format!(
            "{} dense Boolean sublocales, expected exactly one",
            candidates.len()
        )));
    };
    let only = only.clone();
    let formula = booleanization(frame)?;
    if only != formula {
        return Err(DemorganError::OracleFailure(format!(
            "unique dense Boolean sublocale {only:?} differs from regular elements {formula:?}"
        )));
    }
    Ok(only)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearlyOpenReport {
    /// Elements `a` where `ν(a*)` differs from `ν(a)*` computed in `S`.
    pub failures: Vec<ElementId>,
}

impl NearlyOpenReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the surjection onto a dense sublocale commutes with
/// pseudocomplements: `ν(a*) = ν(a)*`, the right side taken in `S`.
pub fn verify_nearly_open(
    frame: &Frame,
    s: &Sublocale<'_>,
) -> Result<NearlyOpenReport, DemorganError> {
    if !std::ptr::eq(frame, s.frame()) {
        return Err(SublocaleError::FrameMismatch.into());
    }
    if !s.is_dense() {
        return Err(DemorganError::NotDense);
    }
    let nu = s.nucleus();
    let induced = s.induced_frame();
    let failures = frame
        .elements()
        .filter(|&a| {
            let image = induced
                .from_ambient(nu.apply(a))
                .expect("ν lands in the sublocale");
            let inside = induced.to_ambient(induced.frame.pseudocomplement(image));
            nu.apply(frame.pseudocomplement(a)) != inside
        })
        .collect();
    Ok(NearlyOpenReport { failures })
}

/// Whether the closure of the open sublocale `o(a)` is itself open.
pub fn closure_of_open_is_open(frame: &Frame, a: ElementId) -> bool {
    let closure = closed_sublocale(frame, open_sublocale(frame, a).infimum());
    frame
        .elements()
        .any(|u| open_sublocale(frame, u).members() == closure.members())
}
