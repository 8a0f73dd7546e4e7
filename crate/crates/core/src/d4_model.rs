//! A combinatorial model of the D4 groupoid.
//!
//! The twelve points carry labels `X + g` with `X` in `{A, B, C}` and `g` in
//! `(Z/2)^2`; the sixteen lines are the triples `{A + a, B + b, C + c}` with
//! `a + b + c = 0`. Projection through an auxiliary line is then a rule on
//! labels, which is checked against the geometry.

use std::fmt;

use num_rational::BigRational;

use crate::configs::multi_points;
use crate::error::{Error, Result};
use crate::groupoid::{enumerate_generators, Configuration};
use crate::projective::ProjPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];
}

/// An element of `(Z/2)^2`, as two bits `(hi, lo)`; addition is xor.
pub type Klein4 = u8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub letter: Letter,
    pub g: Klein4,
}

impl Label {
    pub fn new(letter: Letter, g: Klein4) -> Self {
        debug_assert!(g < 4);
        Label { letter, g }
    }

    /// All twelve labels in letter order, then bit order.
    pub fn all() -> Vec<Label> {
        Letter::ALL
            .iter()
            .flat_map(|&l| (0..4).map(move |g| Label::new(l, g)))
            .collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}+({},{})", self.letter, self.g >> 1, self.g & 1)
    }
}

/// `{A + g_a, B + g_b, C + g_c}` with `g_a + g_b + g_c = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineTriple {
    pub g_a: Klein4,
    pub g_b: Klein4,
    pub g_c: Klein4,
}

impl LineTriple {
    pub fn new(g_a: Klein4, g_b: Klein4) -> Self {
        LineTriple {
            g_a,
            g_b,
            g_c: g_a ^ g_b,
        }
    }

    pub fn labels(&self) -> [Label; 3] {
        [
            Label::new(Letter::A, self.g_a),
            Label::new(Letter::B, self.g_b),
            Label::new(Letter::C, self.g_c),
        ]
    }

    pub fn contains(&self, p: Label) -> bool {
        self.labels().contains(&p)
    }

    pub fn meets(&self, other: &LineTriple) -> bool {
        self.labels().iter().any(|&p| other.contains(p))
    }
}

pub fn all_triples() -> Vec<LineTriple> {
    (0..4)
        .flat_map(|a| (0..4).map(move |b| LineTriple::new(a, b)))
        .collect()
}

/// Three labels with distinct letters whose group parts sum to zero.
pub fn collinear(p: Label, r: Label, q: Label) -> bool {
    p.letter != r.letter
        && r.letter != q.letter
        && p.letter != q.letter
        && (p.g ^ r.g ^ q.g) == 0
}

/// Points `q` of `cod`, other than `p`, collinear with `p` and a point of `aux`.
fn candidates(aux: &LineTriple, cod: &LineTriple, p: Label) -> Vec<Label> {
    cod.labels()
        .into_iter()
        .filter(|&q| q != p && aux.labels().iter().any(|&r| collinear(p, r, q)))
        .collect()
}

/// Image of `p` under projection from `dom` to `cod` through `aux`.
pub fn combinatorial_pi(dom: &LineTriple, aux: &LineTriple, cod: &LineTriple, p: Label) -> Result<Label> {
    if aux.meets(dom) || aux.meets(cod) {
        return Err(Error::Combinatorial("auxiliary line meets an endpoint".into()));
    }
    if !dom.contains(p) {
        return Err(Error::Combinatorial(format!("{p} is not on the domain line")));
    }
    if cod.contains(p) {
        return Ok(p);
    }
    match candidates(aux, cod, p).as_slice() {
        [q] => Ok(*q),
        found => Err(Error::Combinatorial(format!(
            "{} collinear images of {p}",
            found.len()
        ))),
    }
}

/// Outcome of the exhaustive check of the projection rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleCheck {
    /// Valid `(dom, aux, cod, p)` tuples examined.
    pub tuples: usize,
    /// Tuples with `p` off `cod` having exactly one collinear image.
    pub unique: usize,
    /// Tuples with `p` on `cod` having no other collinear image.
    pub fixed: usize,
    pub failures: Vec<(LineTriple, LineTriple, LineTriple, Label)>,
}

impl RuleCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.tuples == self.unique + self.fixed
    }
}

/// Checks the rule over every distinct `dom`, `cod` and every `aux` disjoint
/// from both.
pub fn check_rule() -> RuleCheck {
    let triples = all_triples();
    let mut check = RuleCheck {
        tuples: 0,
        unique: 0,
        fixed: 0,
        failures: Vec::new(),
    };
    for dom in &triples {
        for cod in triples.iter().filter(|c| *c != dom) {
            for aux in triples.iter().filter(|a| !a.meets(dom) && !a.meets(cod)) {
                for p in dom.labels() {
                    check.tuples += 1;
                    let n = candidates(aux, cod, p).len();
                    match (cod.contains(p), n) {
                        (false, 1) => check.unique += 1,
                        (true, 0) => check.fixed += 1,
                        _ => check.failures.push((*dom, *aux, *cod, p)),
                    }
                }
            }
        }
    }
    check
}

/// The twelve configuration points, each with the lines through it.
#[derive(Clone, Debug)]
pub struct D4Points {
    pub points: Vec<ProjPoint>,
    pub incidence: Vec<Vec<usize>>,
    /// Per line, indices into `points`.
    pub on_line: Vec<Vec<usize>>,
}

fn sort_key(p: &ProjPoint) -> Vec<Vec<BigRational>> {
    p.coords().iter().map(|x| x.coeffs().to_vec()).collect()
}

/// The points of multiplicity four, ordered by canonical coordinates, after
/// checking the `(12_4, 16_3)` incidence.
pub fn d4_points(c: &Configuration) -> Result<D4Points> {
    if c.len() != 16 {
        return Err(Error::NoLabeling(format!("expected 16 lines, found {}", c.len())));
    }
    let mut pts = multi_points(c, 4)?;
    pts.sort_by_key(|a| sort_key(&a.0));
    if pts.len() != 12 || pts.iter().any(|(_, inc)| inc.len() != 4) {
        return Err(Error::NoLabeling(format!(
            "expected 12 points on 4 lines each, found {}",
            pts.len()
        )));
    }
    let mut on_line = vec![Vec::new(); c.len()];
    for (i, (_, inc)) in pts.iter().enumerate() {
        for &l in inc {
            on_line[l].push(i);
        }
    }
    if on_line.iter().any(|v| v.len() != 3) {
        return Err(Error::NoLabeling("some line does not carry 3 points".into()));
    }
    let (points, incidence) = pts.into_iter().unzip();
    Ok(D4Points {
        points,
        incidence,
        on_line,
    })
}

/// A bijection of points with labels and of lines with triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    /// Indexed by line.
    pub line_map: Vec<LineTriple>,
    /// Indexed like `D4Points::points`.
    pub point_map: Vec<Label>,
}

impl Labeling {
    /// Whether incidence is preserved in both directions.
    pub fn is_consistent(&self, pts: &D4Points) -> bool {
        let mut lines = self.line_map.clone();
        lines.sort();
        lines.dedup();
        let mut labels = self.point_map.clone();
        labels.sort();
        labels.dedup();
        lines.len() == 16
            && labels.len() == 12
            && (0..16).all(|l| {
                (0..12).all(|p| pts.on_line[l].contains(&p) == self.line_map[l].contains(self.point_map[p]))
            })
    }
}

fn line_ok(labels: &[Option<Label>], members: &[usize]) -> bool {
    let assigned: Vec<Label> = members.iter().filter_map(|&p| labels[p]).collect();
    let distinct = assigned.iter().enumerate().all(|(i, a)| {
        assigned[i + 1..].iter().all(|b| a.letter != b.letter)
    });
    distinct && (assigned.len() < 3 || assigned.iter().fold(0, |acc, l| acc ^ l.g) == 0)
}

fn search(pts: &D4Points, labels: &mut Vec<Option<Label>>, used: &mut [bool; 12], next: usize) -> bool {
    if next == labels.len() {
        return true;
    }
    for (k, label) in Label::all().into_iter().enumerate() {
        if used[k] {
            continue;
        }
        labels[next] = Some(label);
        if pts.incidence[next].iter().all(|&l| line_ok(labels, &pts.on_line[l])) {
            used[k] = true;
            if search(pts, labels, used, next + 1) {
                return true;
            }
            used[k] = false;
        }
        labels[next] = None;
    }
    false
}

/// The first labeling in the search order: points by canonical coordinates,
/// labels by letter then bits.
pub fn find_labeling(c: &Configuration) -> Result<Labeling> {
    let pts = d4_points(c)?;
    let mut labels = vec![None; 12];
    let mut used = [false; 12];
    if !search(&pts, &mut labels, &mut used, 0) {
        return Err(Error::NoLabeling("backtracking exhausted".into()));
    }
    let point_map: Vec<Label> = labels.into_iter().map(|l| l.expect("assigned")).collect();
    let line_map = pts
        .on_line
        .iter()
        .map(|members| {
            let mut g = [0; 3];
            for &p in members {
                g[point_map[p].letter as usize] = point_map[p].g;
            }
            LineTriple::new(g[0], g[1])
        })
        .collect();
    let labeling = Labeling { line_map, point_map };
    if labeling.is_consistent(&pts) {
        Ok(labeling)
    } else {
        Err(Error::NoLabeling("labeling does not preserve incidence".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disagreement {
    pub src: usize,
    pub aux: usize,
    pub dst: usize,
    pub point: usize,
    pub geometric: Option<usize>,
    pub combinatorial: Option<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub morphisms: usize,
    pub checked: usize,
    pub disagreements: Vec<Disagreement>,
}

impl AgreementReport {
    pub fn holds(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares every simple morphism on every configuration point of its
/// domain with the combinatorial rule under `labeling`.
pub fn check_agreement(c: &Configuration, labeling: &Labeling) -> Result<AgreementReport> {
    let pts = d4_points(c)?;
    let analysis = enumerate_generators(c)?;
    let mut report = AgreementReport {
        morphisms: analysis.generators.len(),
        checked: 0,
        disagreements: Vec::new(),
    };
    for g in &analysis.generators {
        for &p in &pts.on_line[g.src] {
            report.checked += 1;
            let param = c.lines()[g.src]
                .parameter_of(pts.points[p].coords())
                .expect("point lies on its line");
            let image = c.lines()[g.dst].point_at(&g.map.apply(&param));
            let geometric = pts.points.iter().position(|q| *q == image);
            let combinatorial = combinatorial_pi(
                &labeling.line_map[g.src],
                &labeling.line_map[g.aux],
                &labeling.line_map[g.dst],
                labeling.point_map[p],
            )
            .ok();
            let agrees = match (geometric, combinatorial) {
                (Some(q), Some(label)) => labeling.point_map[q] == label,
                _ => false,
            };
            if !agrees {
                report.disagreements.push(Disagreement {
                    src: g.src,
                    aux: g.aux,
                    dst: g.dst,
                    point: p,
                    geometric,
                    combinatorial,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{builtin, BuiltinName};

    #[test]
    fn sixteen_triples() {
        let t = all_triples();
        assert_eq!(t.len(), 16);
        assert!(t.contains(&LineTriple { g_a: 0, g_b: 0, g_c: 0 }));
        assert!(t.iter().all(|x| x.g_a ^ x.g_b ^ x.g_c == 0));
    }

    #[test]
    fn fixed_point_and_letter_swap() {
        // dom and cod share A + 0 only
        let dom = LineTriple::new(0, 0);
        let cod = LineTriple::new(0, 1);
        let aux = all_triples()
            .into_iter()
            .find(|a| !a.meets(&dom) && !a.meets(&cod))
            .unwrap();
        let a = Label::new(Letter::A, 0);
        assert_eq!(combinatorial_pi(&dom, &aux, &cod, a).unwrap(), a);
        let b = Label::new(Letter::B, 0);
        assert_eq!(combinatorial_pi(&dom, &aux, &cod, b).unwrap().letter, Letter::C);
    }

    #[test]
    fn rule_is_well_defined() {
        let check = check_rule();
        assert!(check.holds(), "{:?}", &check.failures[..check.failures.len().min(3)]);
        assert!(check.unique > 0 && check.fixed > 0);
    }

    #[test]
    fn preconditions() {
        let dom = LineTriple::new(0, 0);
        let p = Label::new(Letter::A, 0);
        assert!(combinatorial_pi(&dom, &dom, &LineTriple::new(1, 1), p).is_err());
        let off = Label::new(Letter::A, 3);
        let aux = LineTriple::new(1, 1);
        assert!(combinatorial_pi(&dom, &aux, &LineTriple::new(2, 1), off).is_err());
    }

    #[test]
    fn d4_labeling_agrees() {
        let c = builtin(BuiltinName::D4).unwrap();
        let labeling = find_labeling(&c).unwrap();
        let report = check_agreement(&c, &labeling).unwrap();
        assert_eq!((report.morphisms, report.checked), (480, 1440));
        assert!(report.holds(), "{:?}", report.disagreements.first());
    }

    #[test]
    fn klein_has_no_labeling() {
        let c = builtin(BuiltinName::Klein).unwrap();
        assert!(matches!(find_labeling(&c), Err(Error::NoLabeling(_))));
    }
}
