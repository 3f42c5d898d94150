//! Ways of producing frames: from finite topologies, from posets (down-set
//! frames), standard chains and Boolean algebras, products, and seeded
//! random topologies. Also the census of all topologies on a few points
//! and the named fixtures `C3`, `B4`, `F5`.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{build_frame_capped, ElementId, Frame, FrameError, DEFAULT_MAX_ELEMENTS};

/// Point names used by generated topologies.
pub const POINT_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];
pub const MAX_RANDOM_POINTS: usize = 6;
pub const MAX_CENSUS_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopologySpec {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    /// `(lower, upper)` pairs.
    pub covers: Vec<(String, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardFamily {
    Chain,
    Boolean,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("point {0:?} listed twice")]
    DuplicatePoint(String),
    #[error("unknown poset element {0:?}")]
    UnknownElement(String),
    #[error("element {0:?} listed twice")]
    DuplicateElement(String),
    #[error("cover relation has a cycle through {0:?}")]
    CyclicPoset(String),
    #[error("{what} too large: {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("a chain needs at least one element")]
    EmptyChain,
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// `∅` or `{x,y}` with points in their declared order.
pub fn set_label(names: &[String], mask: u64) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    let members: Vec<&str> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, n)| n.as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

fn index_names(names: &[String]) -> Result<HashMap<&str, usize>, String> {
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(n.clone());
        }
    }
    Ok(index)
}

impl TopologySpec {
    /// Opens as bitmasks over `points`, duplicates removed, first
    /// occurrence order kept.
    fn open_masks(&self) -> Result<Vec<u64>, BuildError> {
        if self.points.len() > 64 {
            return Err(BuildError::TooLarge {
                what: "point set",
                size: self.points.len(),
                limit: 64,
            });
        }
        let index = index_names(&self.points).map_err(BuildError::DuplicatePoint)?;
        let mut masks = Vec::new();
        let mut seen = BTreeSet::new();
        for open in &self.opens {
            let mut mask = 0u64;
            for p in open {
                let i = *index
                    .get(p.as_str())
                    .ok_or_else(|| BuildError::UnknownPoint(p.clone()))?;
                mask |= 1 << i;
            }
            if seen.insert(mask) {
                masks.push(mask);
            }
        }
        Ok(masks)
    }

    /// Checks that the opens contain ∅ and the whole space and are closed
    /// under pairwise union and intersection.
    pub fn validate(&self) -> Result<(), BuildError> {
        let masks = self.open_masks()?;
        check_topology(&self.points, &masks)
    }

    fn from_masks(points: Vec<String>, mut masks: Vec<u64>) -> TopologySpec {
        masks.sort_by_key(|&m| (m.count_ones(), m));
        let opens = masks
            .iter()
            .map(|&m| {
                (0..points.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| points[i].clone())
                    .collect()
            })
            .collect();
        TopologySpec { points, opens }
    }
}

fn check_topology(points: &[String], masks: &[u64]) -> Result<(), BuildError> {
    let whole = full_mask(points.len());
    let present: BTreeSet<u64> = masks.iter().copied().collect();
    if !present.contains(&0) {
        return Err(BuildError::NotATopology("∅ is not open".into()));
    }
    if !present.contains(&whole) {
        return Err(BuildError::NotATopology(format!(
            "the whole space {} is not open",
            set_label(points, whole)
        )));
    }
    for (i, &u) in masks.iter().enumerate() {
        for &v in &masks[i + 1..] {
            for (op, w) in [("union", u | v), ("intersection", u & v)] {
                if !present.contains(&w) {
                    return Err(BuildError::NotATopology(format!(
                        "{op} of {} and {} is not open",
                        set_label(points, u),
                        set_label(points, v)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Builds a labelled frame from a family of subsets of `names`, ordered by
/// inclusion. The family must already be a lattice under inclusion.
fn frame_of_sets(names: &[String], masks: &[u64], cap: usize) -> Result<Frame, BuildError> {
    let mut pairs = Vec::new();
    for (i, &u) in masks.iter().enumerate() {
        for (j, &v) in masks.iter().enumerate() {
            if i != j && u & !v == 0 {
                pairs.push((i, j));
            }
        }
    }
    let labels = masks.iter().map(|&m| set_label(names, m)).collect();
    Ok(build_frame_capped(masks.len(), pairs, cap)?.with_labels(labels)?)
}

/// The frame of opens of a finite space, ordered by inclusion, labelled
/// with open-set notation.
pub fn from_topology(spec: &TopologySpec) -> Result<Frame, BuildError> {
    let masks = spec.open_masks()?;
    check_topology(&spec.points, &masks)?;
    frame_of_sets(&spec.points, &masks, DEFAULT_MAX_ELEMENTS)
}

/// The frame of down-closed subsets of a finite poset.
pub fn downset_frame(spec: &PosetSpec) -> Result<Frame, BuildError> {
    downset_frame_capped(spec, DEFAULT_MAX_ELEMENTS)
}

pub fn downset_frame_capped(spec: &PosetSpec, cap: usize) -> Result<Frame, BuildError> {
    let n = spec.elements.len();
    if n > 64 {
        return Err(BuildError::TooLarge {
            what: "poset",
            size: n,
            limit: 64,
        });
    }
    let index = index_names(&spec.elements).map_err(BuildError::DuplicateElement)?;
    let lookup = |name: &String| {
        index
            .get(name.as_str())
            .copied()
            .ok_or_else(|| BuildError::UnknownElement(name.clone()))
    };
    // below[x]: strict predecessors of x under the transitive closure.
    let mut below = vec![0u64; n];
    for (lo, hi) in &spec.covers {
        let (lo, hi) = (lookup(lo)?, lookup(hi)?);
        below[hi] |= 1 << lo;
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            let mut acc = below[x];
            for y in 0..n {
                if below[x] >> y & 1 == 1 {
                    acc |= below[y];
                }
            }
            if acc != below[x] {
                below[x] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if let Some(x) = (0..n).find(|&x| below[x] >> x & 1 == 1) {
        return Err(BuildError::CyclicPoset(spec.elements[x].clone()));
    }

    let mut downsets = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(d) = frontier.pop() {
        for (x, &under) in below.iter().enumerate() {
            if d >> x & 1 == 0 && under & !d == 0 {
                let next = d | 1 << x;
                if downsets.insert(next) {
                    if downsets.len() > cap {
                        return Err(BuildError::TooLarge {
                            what: "down-set frame",
                            size: downsets.len(),
                            limit: cap,
                        });
                    }
                    frontier.push(next);
                }
            }
        }
    }
    let mut masks: Vec<u64> = downsets.into_iter().collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    frame_of_sets(&spec.elements, &masks, cap)
}

pub fn standard_frame(family: StandardFamily, n: usize) -> Result<Frame, BuildError> {
    standard_frame_capped(family, n, DEFAULT_MAX_ELEMENTS)
}

/// An `n`-element chain, or the Boolean algebra of subsets of `n` atoms.
///
/// Tables are filled in directly from the known operations.
pub fn standard_frame_capped(
    family: StandardFamily,
    n: usize,
    cap: usize,
) -> Result<Frame, BuildError> {
    let too_large = |size| BuildError::TooLarge {
        what: "frame",
        size,
        limit: cap,
    };
    match family {
        StandardFamily::Chain => {
            if n == 0 {
                return Err(BuildError::EmptyChain);
            }
            if n > cap {
                return Err(too_large(n));
            }
            Ok(tabulate(
                n,
                |a, b| a <= b,
                |a, b| a.min(b),
                |a, b| a.max(b),
                |a, b| if a <= b { n - 1 } else { b },
            ))
        }
        StandardFamily::Boolean => {
            if n >= usize::BITS as usize - 1 || 1usize << n > cap {
                let size = 1usize.checked_shl(n as u32).unwrap_or(usize::MAX);
                return Err(too_large(size));
            }
            let size = 1usize << n;
            let full = size - 1;
            let atoms: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let labels = (0..size).map(|m| set_label(&atoms, m as u64)).collect();
            Ok(tabulate(
                size,
                |a, b| a & !b == 0,
                |a, b| a & b,
                |a, b| a | b,
                |a, b| (!a & full) | b,
            )
            .with_labels(labels)?)
        }
    }
}

fn tabulate(
    size: usize,
    le: impl Fn(usize, usize) -> bool,
    meet: impl Fn(usize, usize) -> usize,
    join: impl Fn(usize, usize) -> usize,
    imp: impl Fn(usize, usize) -> usize,
) -> Frame {
    let mut leq = FixedBitSet::with_capacity(size * size);
    let mut meets = Vec::with_capacity(size * size);
    let mut joins = Vec::with_capacity(size * size);
    let mut imps = Vec::with_capacity(size * size);
    for a in 0..size {
        for b in 0..size {
            leq.set(a * size + b, le(a, b));
            meets.push(ElementId::new(meet(a, b)));
            joins.push(ElementId::new(join(a, b)));
            imps.push(ElementId::new(imp(a, b)));
        }
    }
    let bottom = (0..size).find(|&a| (0..size).all(|b| le(a, b))).unwrap();
    let top = (0..size).find(|&a| (0..size).all(|b| le(b, a))).unwrap();
    Frame::from_tables(
        size,
        leq,
        meets,
        joins,
        imps,
        ElementId::new(bottom),
        ElementId::new(top),
    )
}

pub fn product_frame(left: &Frame, right: &Frame) -> Result<Frame, BuildError> {
    product_frame_capped(left, right, DEFAULT_MAX_ELEMENTS)
}

/// Componentwise product; element `(i, j)` has index `i * |right| + j`.
pub fn product_frame_capped(left: &Frame, right: &Frame, cap: usize) -> Result<Frame, BuildError> {
    let (n, m) = (left.size(), right.size());
    let size = n.saturating_mul(m);
    if size > cap {
        return Err(BuildError::TooLarge {
            what: "product frame",
            size,
            limit: cap,
        });
    }
    let split = |x: usize| (ElementId::new(x / m), ElementId::new(x % m));
    let pack = |a: ElementId, b: ElementId| a.index() * m + b.index();
    let frame = tabulate(
        size,
        |x, y| {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            left.leq(a1, a2) && right.leq(b1, b2)
        },
        |x, y| {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            pack(left.meet(a1, a2), right.meet(b1, b2))
        },
        |x, y| {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            pack(left.join(a1, a2), right.join(b1, b2))
        },
        |x, y| {
            let ((a1, b1), (a2, b2)) = (split(x), split(y));
            pack(left.heyting(a1, a2), right.heyting(b1, b2))
        },
    );
    let labels = (0..size)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", left.label(a), right.label(b))
        })
        .collect();
    Ok(frame.with_labels(labels)?)
}

fn point_names(n: usize) -> Vec<String> {
    POINT_NAMES[..n].iter().map(|s| s.to_string()).collect()
}

/// A topology on `n_points` points obtained by closing `n_points` random
/// subsets (plus ∅ and the whole space) under union and intersection.
///
/// Deterministic per seed. The distribution over topologies is not uniform.
pub fn random_topology(n_points: usize, seed: u64) -> Result<TopologySpec, BuildError> {
    if n_points > MAX_RANDOM_POINTS {
        return Err(BuildError::TooLarge {
            what: "random topology point count",
            size: n_points,
            limit: MAX_RANDOM_POINTS,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let whole = full_mask(n_points);
    let mut family: BTreeSet<u64> = BTreeSet::from([0, whole]);
    for _ in 0..n_points {
        let subset = (0..n_points).fold(
            0u64,
            |m, i| {
                if rng.random_bool(0.5) {
                    m | 1 << i
                } else {
                    m
                }
            },
        );
        family.insert(subset);
    }
    loop {
        let current: Vec<u64> = family.iter().copied().collect();
        let before = family.len();
        for (i, &u) in current.iter().enumerate() {
            for &v in &current[i + 1..] {
                family.insert(u | v);
                family.insert(u & v);
            }
        }
        if family.len() == before {
            break;
        }
    }
    Ok(TopologySpec::from_masks(
        point_names(n_points),
        family.into_iter().collect(),
    ))
}

/// Every topology on `n_points` labelled points (`n_points ≤ 4`), in a fixed
/// order. Opens within each topology are sorted by size, then bitmask.
pub fn enumerate_topologies(
    n_points: usize,
) -> Result<impl Iterator<Item = TopologySpec>, BuildError> {
    if n_points > MAX_CENSUS_POINTS {
        return Err(BuildError::TooLarge {
            what: "census point count",
            size: n_points,
            limit: MAX_CENSUS_POINTS,
        });
    }
    let whole = full_mask(n_points);
    let free: Vec<u64> = (1..whole).collect();
    let names = point_names(n_points);
    let mut base = vec![0u64];
    if whole != 0 {
        base.push(whole);
    }
    Ok((0u64..1 << free.len()).filter_map(move |choice| {
        let mut masks = base.clone();
        masks.extend(
            free.iter()
                .enumerate()
                .filter(|(i, _)| choice >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        let present: BTreeSet<u64> = masks.iter().copied().collect();
        let closed = masks.iter().all(|&u| {
            masks
                .iter()
                .all(|&v| present.contains(&(u | v)) && present.contains(&(u & v)))
        });
        closed.then(|| TopologySpec::from_masks(names.clone(), masks))
    }))
}

/// Shared regression frames.
pub mod fixtures {
    use super::*;

    fn labelled(size: usize, covers: &[(usize, usize)], labels: &[&str]) -> Frame {
        build_frame_capped(size, covers.iter().copied(), DEFAULT_MAX_ELEMENTS)
            .and_then(|f| f.with_labels(labels.iter().map(|s| s.to_string()).collect()))
            .expect("fixture is a valid frame")
    }

    /// The three-element chain `0 < m < 1`.
    pub fn c3() -> Frame {
        labelled(3, &[(0, 1), (1, 2)], &["0", "m", "1"])
    }

    /// The four-element Boolean algebra with atoms `a`, `b`.
    pub fn b4() -> Frame {
        labelled(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], &["0", "a", "b", "1"])
    }

    /// Opens of `{x,y,z}` with topology `∅, {x}, {y}, {x,y}, X`: a Boolean
    /// square with a new top adjoined. Not extremally disconnected.
    pub fn f5() -> Frame {
        labelled(
            5,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
            &["0", "a", "b", "a∨b", "1"],
        )
    }

    pub fn by_name(name: &str) -> Option<Frame> {
        match name.to_ascii_uppercase().as_str() {
            "C3" => Some(c3()),
            "B4" => Some(b4()),
            "F5" => Some(f5()),
            _ => None,
        }
    }

    pub fn sierpinski() -> TopologySpec {
        topology(&["x", "y"], &[&[], &["x"], &["x", "y"]])
    }

    pub fn f5_topology() -> TopologySpec {
        topology(
            &["x", "y", "z"],
            &[&[], &["x"], &["y"], &["x", "y"], &["x", "y", "z"]],
        )
    }

    pub fn discrete_two_point() -> TopologySpec {
        topology(&["x", "y"], &[&[], &["x"], &["y"], &["x", "y"]])
    }

    fn topology(points: &[&str], opens: &[&[&str]]) -> TopologySpec {
        TopologySpec {
            points: points.iter().map(|s| s.to_string()).collect(),
            opens: opens
                .iter()
                .map(|o| o.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }
}

/// Whether two frames are isomorphic, by brute force over bijections that
/// preserve the order. Only meant for small frames in tests and checks.
pub fn isomorphic(f: &Frame, g: &Frame) -> bool {
    if f.size() != g.size() {
        return false;
    }
    let n = f.size();
    let profile = |h: &Frame, a: ElementId| {
        let down = h.elements().filter(|&c| h.leq(c, a)).count();
        let up = h.elements().filter(|&c| h.leq(a, c)).count();
        (down, up)
    };
    let mut image: Vec<Option<ElementId>> = vec![None; n];
    let mut used = vec![false; n];
    fn extend(
        f: &Frame,
        g: &Frame,
        i: usize,
        image: &mut Vec<Option<ElementId>>,
        used: &mut Vec<bool>,
        profile: &dyn Fn(&Frame, ElementId) -> (usize, usize),
    ) -> bool {
        if i == f.size() {
            return true;
        }
        let a = ElementId::new(i);
        for b in g.elements() {
            if used[b.index()] || profile(f, a) != profile(g, b) {
                continue;
            }
            let consistent = (0..i).all(|j| {
                let (c, d) = (ElementId::new(j), image[j].unwrap());
                f.leq(a, c) == g.leq(b, d) && f.leq(c, a) == g.leq(d, b)
            });
            if consistent {
                image[i] = Some(b);
                used[b.index()] = true;
                if extend(f, g, i + 1, image, used, profile) {
                    return true;
                }
                used[b.index()] = false;
                image[i] = None;
            }
        }
        false
    }
    extend(f, g, 0, &mut image, &mut used, &profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::verify_heyting_laws;

    #[test]
    fn topology_fixtures() {
        assert!(isomorphic(
            &from_topology(&fixtures::sierpinski()).unwrap(),
            &fixtures::c3()
        ));
        assert!(isomorphic(
            &from_topology(&fixtures::f5_topology()).unwrap(),
            &fixtures::f5()
        ));
        assert!(isomorphic(
            &from_topology(&fixtures::discrete_two_point()).unwrap(),
            &fixtures::b4()
        ));
        assert!(!isomorphic(&fixtures::c3(), &fixtures::b4()));
    }

    #[test]
    fn topology_labels_use_open_set_notation() {
        let f = from_topology(&fixtures::f5_topology()).unwrap();
        assert_eq!(
            f.labels().unwrap(),
            &["∅", "{x}", "{y}", "{x,y}", "{x,y,z}"]
        );
    }

    #[test]
    fn topology_validation_errors() {
        let missing_empty = TopologySpec {
            points: vec!["x".into()],
            opens: vec![vec!["x".into()]],
        };
        assert!(matches!(
            from_topology(&missing_empty),
            Err(BuildError::NotATopology(_))
        ));
        let no_union = TopologySpec {
            points: vec!["x".into(), "y".into()],
            opens: vec![vec![], vec!["x".into()], vec!["y".into()]],
        };
        assert!(matches!(
            no_union.validate(),
            Err(BuildError::NotATopology(msg)) if msg.contains("whole space")
        ));
        let mut bad = fixtures::discrete_two_point();
        bad.opens
            .retain(|o| o != &vec!["x".to_string(), "y".to_string()]);
        bad.opens.push(vec!["x".into(), "y".into()]);
        bad.opens.push(vec!["q".into()]);
        assert_eq!(bad.validate(), Err(BuildError::UnknownPoint("q".into())));
        let no_meet = TopologySpec {
            points: vec!["x".into(), "y".into(), "z".into()],
            opens: vec![
                vec![],
                vec!["x".into(), "y".into()],
                vec!["y".into(), "z".into()],
                vec!["x".into(), "y".into(), "z".into()],
            ],
        };
        assert!(matches!(
            no_meet.validate(),
            Err(BuildError::NotATopology(msg)) if msg.contains("intersection")
        ));
    }

    #[test]
    fn downsets() {
        let single = PosetSpec {
            elements: vec!["p".into()],
            covers: vec![],
        };
        assert_eq!(downset_frame(&single).unwrap().size(), 2);
        let antichain = PosetSpec {
            elements: vec!["p".into(), "q".into()],
            covers: vec![],
        };
        assert!(isomorphic(
            &downset_frame(&antichain).unwrap(),
            &fixtures::b4()
        ));
        let chain = PosetSpec {
            elements: vec!["low".into(), "high".into()],
            covers: vec![("low".into(), "high".into())],
        };
        let f = downset_frame(&chain).unwrap();
        assert!(isomorphic(&f, &fixtures::c3()));
        assert_eq!(f.labels().unwrap(), &["∅", "{low}", "{low,high}"]);
        let cyclic = PosetSpec {
            elements: vec!["p".into(), "q".into()],
            covers: vec![("p".into(), "q".into()), ("q".into(), "p".into())],
        };
        assert!(matches!(
            downset_frame(&cyclic),
            Err(BuildError::CyclicPoset(_))
        ));
    }

    #[test]
    fn standard_families() {
        assert!(isomorphic(
            &standard_frame(StandardFamily::Chain, 3).unwrap(),
            &fixtures::c3()
        ));
        assert!(isomorphic(
            &standard_frame(StandardFamily::Boolean, 2).unwrap(),
            &fixtures::b4()
        ));
        let trivial = standard_frame(StandardFamily::Boolean, 0).unwrap();
        assert_eq!(trivial.size(), 1);
        assert_eq!(trivial.top(), trivial.bottom());
        assert_eq!(
            standard_frame(StandardFamily::Chain, 0).unwrap_err(),
            BuildError::EmptyChain
        );
        assert!(matches!(
            standard_frame(StandardFamily::Boolean, 11),
            Err(BuildError::TooLarge { size: 2048, .. })
        ));
        assert!(matches!(
            standard_frame(StandardFamily::Boolean, 200),
            Err(BuildError::TooLarge { .. })
        ));
        for f in [
            standard_frame(StandardFamily::Chain, 5).unwrap(),
            standard_frame(StandardFamily::Boolean, 3).unwrap(),
        ] {
            assert!(verify_heyting_laws(&f).all_passed());
        }
    }

    #[test]
    fn products() {
        let two = standard_frame(StandardFamily::Chain, 2).unwrap();
        let c3 = fixtures::c3();
        let p = product_frame(&c3, &two).unwrap();
        assert_eq!(p.size(), 6);
        assert!(verify_heyting_laws(&p).all_passed());
        assert!(isomorphic(
            &product_frame(&two, &two).unwrap(),
            &fixtures::b4()
        ));
        let one = standard_frame(StandardFamily::Chain, 1).unwrap();
        let f5 = fixtures::f5();
        assert!(isomorphic(&product_frame(&f5, &one).unwrap(), &f5));
        assert!(matches!(
            product_frame_capped(&f5, &f5, 20),
            Err(BuildError::TooLarge { size: 25, .. })
        ));
    }

    #[test]
    fn random_topologies() {
        let one = random_topology(1, 99).unwrap();
        assert_eq!(one.opens, vec![Vec::<String>::new(), vec!["x".to_string()]]);
        assert_eq!(
            random_topology(3, 7).unwrap(),
            random_topology(3, 7).unwrap()
        );
        for seed in 0..1000 {
            random_topology(4, seed).unwrap().validate().unwrap();
        }
        assert!(random_topology(7, 0).is_err());
    }

    #[test]
    fn census_small_cases() {
        assert_eq!(enumerate_topologies(0).unwrap().count(), 1);
        assert_eq!(enumerate_topologies(1).unwrap().count(), 1);
        assert_eq!(enumerate_topologies(2).unwrap().count(), 4);
        assert!(enumerate_topologies(5).is_err());
    }
}
