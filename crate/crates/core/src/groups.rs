//! Finite subgroups of `PGL(2, K)`: closure, classification, stabilizers.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::projective::{element_order, max_finite_order, mobius_from_triples, ElementOrder, PglMap, ProjPoint};

/// Isomorphism type of a subgroup of `PGL(2, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    Trivial,
    Cyclic(usize),
    /// Dihedral group of the given order (`D(6)` is `S3`, `D(4)` is the Klein four-group).
    Dihedral(usize),
    A4,
    S4,
    A5,
    OtherFinite,
    Infinite,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial => write!(f, "Trivial"),
            GroupLabel::Cyclic(n) => write!(f, "C({})", n),
            GroupLabel::Dihedral(n) => write!(f, "D({})", n),
            GroupLabel::A4 => write!(f, "A4"),
            GroupLabel::S4 => write!(f, "S4"),
            GroupLabel::A5 => write!(f, "A5"),
            GroupLabel::OtherFinite => write!(f, "OtherFinite"),
            GroupLabel::Infinite => write!(f, "Infinite"),
        }
    }
}

impl GroupLabel {
    /// Conventional alternative name, where one exists.
    pub fn alias(&self) -> Option<&'static str> {
        match self {
            GroupLabel::Dihedral(6) => Some("S3"),
            GroupLabel::Dihedral(4) => Some("C2xC2"),
            GroupLabel::Cyclic(1) => Some("Trivial"),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    /// The closure grew past this many elements.
    ExceedsCap(usize),
}

/// A subgroup of `PGL(2, K)` given by its canonical elements.
#[derive(Clone, Debug)]
pub struct GroupResult {
    pub elements: Vec<PglMap>,
    pub order: GroupOrder,
    /// Element order -> number of elements of that order.
    pub histogram: BTreeMap<u32, usize>,
    pub label: GroupLabel,
    pub cap: usize,
}

impl GroupResult {
    pub fn is_finite(&self) -> bool {
        matches!(self.order, GroupOrder::Finite(_))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &PglMap) -> bool {
        self.elements.contains(g)
    }

    fn infinite(cap: usize) -> Self {
        GroupResult {
            elements: Vec::new(),
            order: GroupOrder::ExceedsCap(cap),
            histogram: BTreeMap::new(),
            label: GroupLabel::Infinite,
            cap,
        }
    }

    /// Wraps a finite element list that is already known to be a group.
    fn finite(elements: Vec<PglMap>, cap: usize) -> Self {
        let mut histogram = BTreeMap::new();
        for g in &elements {
            if let ElementOrder::Finite(n) = element_order(g) {
                *histogram.entry(n).or_insert(0) += 1;
            }
        }
        let mut group = GroupResult {
            order: GroupOrder::Finite(elements.len()),
            elements,
            histogram,
            label: GroupLabel::OtherFinite,
            cap,
        };
        group.label = classify(&group).expect("finite group");
        group
    }
}

/// Any finite subgroup of `PGL(2, K)` has at most this many elements.
pub fn default_cap(field: &Field) -> usize {
    60usize.max(2 * max_finite_order(field.degree()) as usize)
}

/// Closure of `gens` under multiplication. Reports an infinite group as soon
/// as more than `cap` elements are found.
pub fn generate_closure(field: &Field, gens: &[PglMap], cap: Option<usize>) -> Result<GroupResult> {
    let cap = cap.unwrap_or_else(|| default_cap(field));
    for g in gens {
        if g.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
    }
    let mut unique_gens: Vec<&PglMap> = Vec::new();
    for g in gens {
        if !g.is_identity() && !unique_gens.contains(&g) {
            unique_gens.push(g);
        }
    }

    let identity = PglMap::identity(field);
    let mut seen: HashSet<PglMap> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &unique_gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Ok(GroupResult::infinite(cap));
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(GroupResult::finite(elements, cap))
}

fn is_abelian(elements: &[PglMap]) -> bool {
    elements.iter().enumerate().all(|(i, a)| {
        elements[i + 1..]
            .iter()
            .all(|b| a.compose(b) == b.compose(a))
    })
}

fn cyclic_subgroup(g: &PglMap) -> Vec<PglMap> {
    let mut out = vec![PglMap::identity(g.field())];
    let mut x = g.clone();
    while !x.is_identity() {
        out.push(x.clone());
        x = x.compose(g);
    }
    out
}

/// Identifies a finite group among the finite subgroups of `PGL(2, C)`.
pub fn classify(group: &GroupResult) -> Result<GroupLabel> {
    let n = match group.order {
        GroupOrder::Finite(n) => n,
        GroupOrder::ExceedsCap(cap) => return Err(Error::InfiniteGroup { cap }),
    };
    let h = &group.histogram;
    let hist_is = |want: &[(u32, usize)]| h.len() == want.len() && want.iter().all(|(k, v)| h.get(k) == Some(v));
    if n == 1 {
        return Ok(GroupLabel::Trivial);
    }
    if h.get(&(n as u32)).is_some_and(|&c| c > 0) && is_abelian(&group.elements) {
        return Ok(GroupLabel::Cyclic(n));
    }
    if n % 2 == 0 {
        let k = n / 2;
        let rotation = group
            .elements
            .iter()
            .filter(|g| element_order(g) == ElementOrder::Finite(k as u32))
            .find(|g| {
                let sub = cyclic_subgroup(g);
                let reflections = group
                    .elements
                    .iter()
                    .filter(|x| !sub.contains(x))
                    .filter(|x| element_order(x) == ElementOrder::Finite(2))
                    .count();
                reflections >= k
            });
        if rotation.is_some() {
            return Ok(GroupLabel::Dihedral(n));
        }
    }
    let label = match n {
        12 if hist_is(&[(1, 1), (2, 3), (3, 8)]) => GroupLabel::A4,
        24 if hist_is(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => GroupLabel::S4,
        60 if hist_is(&[(1, 1), (2, 15), (3, 20), (5, 24)]) => GroupLabel::A5,
        _ => GroupLabel::OtherFinite,
    };
    Ok(label)
}

/// All automorphisms of `P^1` permuting the finite set `points`.
///
/// An automorphism is determined by the images of three points, so trying
/// every ordered triple of distinct targets for the first three points is
/// exhaustive.
pub fn stabilizer(points: &[ProjPoint]) -> Result<GroupResult> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.len(),
            });
        }
        if points[..i].contains(p) {
            return Err(Error::DuplicatePoint(i));
        }
    }
    let field = points[0].field().clone();
    let set: HashSet<&ProjPoint> = points.iter().collect();
    let src = [points[0].clone(), points[1].clone(), points[2].clone()];
    let mut elements = Vec::new();
    for a in points {
        for b in points {
            for c in points {
                if a == b || b == c || a == c {
                    continue;
                }
                let dst = [a.clone(), b.clone(), c.clone()];
                let f = mobius_from_triples(&src, &dst)?;
                if points.iter().all(|p| set.contains(&f.apply(p))) {
                    elements.push(f);
                }
            }
        }
    }
    Ok(GroupResult::finite(elements, default_cap(&field)))
}
