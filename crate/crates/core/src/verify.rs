//! End-to-end checks of the reproduced results, one per criterion, with
//! optional fault injection into a built-in configuration.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::configs::{self, builtin, parse_field_expr, BuiltinName, MarkedParameterSets};
use crate::d4_model;
use crate::error::Result;
use crate::field::{Field, FieldDescriptor, FieldElement};
use crate::groupoid::{enumerate_generators, Configuration, TreeOrder};
use crate::groups::{generate_closure, stabilizer, GroupLabel, GroupOrder, GroupResult};
use crate::linalg;
use crate::p4ext;
use crate::projective::{element_order, lines_skew, projection_matrix, ParamLine, PglMap, ProjPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub corrupted: Option<String>,
    pub criteria: Vec<CriterionResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<u8> {
        self.criteria.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Built-in whose last line is perturbed before any check runs.
    pub corrupt: Option<BuiltinName>,
    /// Criteria to run; all when empty.
    pub only: Vec<u8>,
    /// Seed for the randomized property suite.
    pub seed: u64,
    /// Instances per property and field.
    pub instances: usize,
}

impl VerifyOptions {
    pub fn new() -> Self {
        VerifyOptions {
            corrupt: None,
            only: Vec::new(),
            seed: 0x5eed,
            instances: 100,
        }
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "D4 vertex group is S3 at every base"),
    (2, "D4 six-line subconfiguration is S3"),
    (3, "D4 combinatorial model agrees with the geometry"),
    (4, "four lines on a quadric give the trivial group"),
    (5, "symbolic composite through a free fourth line"),
    (6, "half-Penrose vertex group is A4"),
    (7, "Penrose vertex group is S4"),
    (8, "marked parameter stabilizers"),
    (9, "Klein vertex group is S4"),
    (10, "orbit sizes"),
    (11, "quasi-Penrose points are a linear image of the Penrose points"),
    (12, "25 lines in P^4 give an infinite group"),
    (13, "randomized property suites"),
];

/// Built-in configurations, possibly with one of them corrupted.
pub struct Builtins {
    configs: HashMap<BuiltinName, Configuration>,
}

impl Builtins {
    pub fn load(corrupt: Option<BuiltinName>) -> Result<Self> {
        let mut configs = HashMap::new();
        for name in BuiltinName::ALL {
            let mut c = builtin(name)?;
            if corrupt == Some(name) {
                c = corrupted(&c)?;
            }
            configs.insert(name, c);
        }
        Ok(Builtins { configs })
    }

    pub fn get(&self, name: BuiltinName) -> &Configuration {
        &self.configs[&name]
    }
}

/// The configuration with its last line moved: the first coordinate of the
/// second basis vector is raised until the lines stay distinct.
pub fn corrupted(c: &Configuration) -> Result<Configuration> {
    let mut lines = c.lines().to_vec();
    let last = lines.pop().expect("nonempty configuration");
    let field = c.field().clone();
    for bump in 1.. {
        let mut b1 = last.basis1().to_vec();
        b1[0] = &b1[0] + &FieldElement::from_int(&field, bump);
        let Ok(line) = ParamLine::new(last.basis0().to_vec(), b1) else {
            continue;
        };
        if lines.iter().any(|l| l.same_subspace(&line)) {
            continue;
        }
        let mut all = lines.clone();
        all.push(line);
        return Configuration::new(format!("{} (corrupted)", c.name), field, all, c.marked().map(<[_]>::to_vec));
    }
    unreachable!("some bump keeps lines distinct")
}

pub fn run(options: &VerifyOptions) -> Result<VerifyReport> {
    let builtins = Builtins::load(options.corrupt)?;
    let mut criteria = Vec::new();
    for (id, _) in CRITERIA {
        if options.only.is_empty() || options.only.contains(&id) {
            criteria.push(run_criterion(id, &builtins, options));
        }
    }
    Ok(VerifyReport {
        corrupted: options.corrupt.map(|b| b.to_string()),
        criteria,
    })
}

pub fn run_criterion(id: u8, b: &Builtins, options: &VerifyOptions) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, n)| n);
    let outcome = match id {
        1 => criterion_d4(b),
        2 => criterion_d4_sub6(b),
        3 => criterion_d4_model(b),
        4 => criterion_quadric(b),
        5 => criterion_symbolic_composite(b),
        6 => criterion_half_penrose(b),
        7 => criterion_penrose(b),
        8 => criterion_stabilizers(),
        9 => criterion_klein(b),
        10 => criterion_orbits(b),
        11 => criterion_double_penrose(b),
        12 => criterion_p4(b),
        13 => criterion_properties(options.seed, options.instances),
        _ => Ok(Outcome::fail("a known criterion", "none")),
    };
    let outcome = outcome.unwrap_or_else(|e| Outcome::fail("no error", format!("error: {e}")));
    CriterionResult {
        id,
        name,
        passed: outcome.passed,
        expected: outcome.expected,
        actual: outcome.actual,
    }
}

struct Outcome {
    passed: bool,
    expected: String,
    actual: String,
}

impl Outcome {
    fn new(passed: bool, expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Outcome {
            passed,
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    fn fail(expected: impl Into<String>, actual: impl Into<String>) -> Self {
        Self::new(false, expected, actual)
    }
}

fn summary(g: &GroupResult) -> String {
    match g.order {
        GroupOrder::Finite(n) => format!("order {n}, {}, orders {:?}", g.label, g.histogram),
        GroupOrder::ExceedsCap(cap) => format!("infinite (more than {cap} elements)"),
    }
}

fn matches_group(g: &GroupResult, order: usize, label: GroupLabel) -> bool {
    g.order == GroupOrder::Finite(order) && g.label == label
}

fn s3_histogram() -> BTreeMap<u32, usize> {
    BTreeMap::from([(1, 1), (2, 3), (3, 2)])
}

fn criterion_d4(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::D4);
    let analysis = enumerate_generators(c)?;
    let mut actual = Vec::new();
    let mut passed = analysis.components.len() == 1;
    for base in 0..c.len() {
        let g = analysis.vertex_group(base, None)?;
        passed &= matches_group(&g, 6, GroupLabel::Dihedral(6)) && g.histogram == s3_histogram();
        actual.push(summary(&g));
    }
    actual.dedup();
    Ok(Outcome::new(
        passed,
        "order 6, D(6), orders {1: 1, 2: 3, 3: 2} at all 16 bases",
        format!("{} component(s); {}", analysis.components.len(), actual.join(" | ")),
    ))
}

fn criterion_d4_sub6(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::D4Sub6);
    let analysis = enumerate_generators(c)?;
    let mut passed = analysis.components.len() == 1;
    let mut actual = Vec::new();
    for base in 0..c.len() {
        let g = analysis.vertex_group(base, None)?;
        passed &= matches_group(&g, 6, GroupLabel::Dihedral(6));
        actual.push(summary(&g));
    }
    actual.dedup();
    Ok(Outcome::new(passed, "order 6, D(6) at every base", actual.join(" | ")))
}

fn criterion_d4_model(b: &Builtins) -> Result<Outcome> {
    let rule = d4_model::check_rule();
    let c = b.get(BuiltinName::D4);
    let labeling = d4_model::find_labeling(c)?;
    let report = d4_model::check_agreement(c, &labeling)?;
    Ok(Outcome::new(
        rule.holds() && report.holds() && report.morphisms == 480 && report.checked == 1440,
        "rule well defined on all tuples; 480 morphisms x 3 points agree",
        format!(
            "rule: {} tuples, {} unique, {} fixed, {} failures; agreement: {} morphisms, {} checks, {} disagreements",
            rule.tuples,
            rule.unique,
            rule.fixed,
            rule.failures.len(),
            report.morphisms,
            report.checked,
            report.disagreements.len()
        ),
    ))
}

fn criterion_quadric(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::Quadric4);
    let analysis = enumerate_generators(c)?;
    let groups = (0..c.len())
        .map(|base| analysis.vertex_group(base, None))
        .collect::<Result<Vec<_>>>()?;
    let passed = groups.iter().all(|g| g.label == GroupLabel::Trivial);
    Ok(Outcome::new(passed, "trivial at every base", summary(&groups[0])))
}

/// The closed form of `π(c, d, a) ∘ π(a, b, c)` in the coordinates of `d`.
pub fn symbolic_composite(field: &Field, d0: &[i64; 4], d1: &[i64; 4]) -> Result<PglMap> {
    let [x0, y0, z0, w0] = *d0;
    let [x1, y1, z1, w1] = *d1;
    let e = |v: i64| FieldElement::from_int(field, v);
    PglMap::canonicalize([
        [e(w0 * x1 - w0 * z1 - x0 * w1 + z0 * w1), e(-z0 * x1 + x0 * z1)],
        [e(w0 * y1 - y0 * w1), e(-z0 * y1 + y0 * z1 - w0 * z1 + z0 * w1)],
    ])
}

/// Choices of the free line `d` for the symbolic composite.
pub const FREE_LINES: [([i64; 4], [i64; 4]); 4] = [
    ([1, 2, 3, 4], [0, 1, -1, 2]),
    ([2, -1, 0, 1], [1, 1, 1, -3]),
    ([0, 3, 1, -2], [5, 0, 2, 1]),
    ([-1, 0, 1, 0], [0, -1, 0, 2]),
];

fn criterion_symbolic_composite(b: &Builtins) -> Result<Outcome> {
    let q = b.get(BuiltinName::Quadric4);
    let field = q.field().clone();
    let (la, lb, lc) = (&q.lines()[0], &q.lines()[1], &q.lines()[2]);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for (d0, d1) in FREE_LINES {
        let d = ParamLine::from_ints(&field, &d0, &d1)?;
        if !(lines_skew(&d, la) && lines_skew(&d, lc)) {
            mismatches.push(format!("{d0:?},{d1:?} not skew"));
            continue;
        }
        let composite = projection_matrix(lc, &d, la)?.compose(&projection_matrix(la, lb, lc)?);
        let expected = symbolic_composite(&field, &d0, &d1)?;
        checked += 1;
        if composite != expected {
            mismatches.push(format!("{composite} vs {expected}"));
        }
    }
    Ok(Outcome::new(
        mismatches.is_empty() && checked >= 3,
        format!("{} free lines agree with the closed form", FREE_LINES.len()),
        format!("{checked} agree checked, mismatches: {mismatches:?}"),
    ))
}

fn pgl(field: &Field, entries: [&str; 4]) -> PglMap {
    let e = |s: &str| parse_field_expr(field, s).expect("literal expression");
    PglMap::canonicalize([[e(entries[0]), e(entries[1])], [e(entries[2]), e(entries[3])]])
        .expect("literal invertible matrix")
}

/// `π(l4, l3, l2) ∘ π(l2, l1, l0)` on the lines of `c`.
fn two_step(c: &Configuration, l0: usize, l1: usize, l2: usize, l3: usize, l4: usize) -> Result<PglMap> {
    let lines = c.lines();
    let first = projection_matrix(&lines[l0], &lines[l1], &lines[l2])?;
    let second = projection_matrix(&lines[l2], &lines[l3], &lines[l4])?;
    Ok(second.compose(&first))
}

fn criterion_half_penrose(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::PenroseHalf);
    let k = c.field().clone();
    let g = enumerate_generators(c)?.vertex_group(0, None)?;
    // lines 0, 2, 4, 6, 8 of the full configuration sit at 0..5 here
    let order3 = two_step(c, 0, 1, 2, 3, 0)?;
    let order2 = two_step(c, 0, 1, 2, 3, 0)?.compose(&two_step(c, 0, 1, 2, 4, 0)?);
    let want3 = pgl(&k, ["t", "1", "0", "t^2"]);
    let want2 = pgl(&k, ["-1", "t", "t", "1"]);
    let passed = matches_group(&g, 12, GroupLabel::A4)
        && order3 == want3
        && order2 == want2
        && element_order(&order3) == crate::ElementOrder::Finite(3)
        && element_order(&order2) == crate::ElementOrder::Finite(2);
    Ok(Outcome::new(
        passed,
        format!("order 12, A4; composites {want3} (order 3) and {want2} (order 2)"),
        format!(
            "{}; composites {order3} ({:?}) and {order2} ({:?})",
            summary(&g),
            element_order(&order3),
            element_order(&order2)
        ),
    ))
}

/// Penrose lines marked with the Penrose and quasi-Penrose parameters.
fn with_tilde_marks(c: &Configuration) -> Result<Configuration> {
    let (x, y) = (MarkedParameterSets::x_tilde(), MarkedParameterSets::y_tilde());
    let marked = (0..c.len()).map(|i| if i < 8 { x.clone() } else { y.clone() }).collect();
    c.clone().with_marked(Some(marked))
}

fn criterion_penrose(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::Penrose);
    let k = c.field().clone();
    let analysis = enumerate_generators(c)?;
    let g = analysis.vertex_group(0, None)?;
    let composite = two_step(c, 0, 1, 2, 4, 0)?;
    let want = pgl(&k, ["-1", "1", "1", "-2t-1"]);
    let extended = with_tilde_marks(c)?;
    let invariance = analysis.marked_invariance(&extended)?;
    Ok(Outcome::new(
        matches_group(&g, 24, GroupLabel::S4) && composite == want && invariance.holds,
        format!("order 24, S4; composite {want}; extended marks invariant"),
        format!(
            "{}; composite {composite}; invariance {}",
            summary(&g),
            invariance.holds
        ),
    ))
}

/// Reference elements of the stabilizer of the four Penrose parameters on lines 0 to 7.
pub fn listed_x_stabilizer() -> Vec<PglMap> {
    let k = FieldDescriptor::eisenstein();
    [
        ["1", "0", "0", "1"],
        ["0", "-1", "1", "0"],
        ["t", "1", "1", "-t"],
        ["-1", "t", "t", "1"],
        ["0", "-1", "t", "-t^2"],
        ["t", "-t^2", "1", "0"],
        ["0", "-t", "1", "t^2"],
        ["t^2", "t", "-1", "0"],
        ["t", "0", "1", "t^2"],
        ["t^2", "0", "-1", "t"],
        ["t^2", "t", "0", "1"],
        ["t", "-t^2", "0", "1"],
    ]
    .into_iter()
    .map(|e| pgl(&k, e))
    .collect()
}

/// Reference elements of the stabilizer of the four Penrose parameters on lines 8 and 9.
pub fn listed_y_stabilizer() -> Vec<PglMap> {
    let k = FieldDescriptor::eisenstein();
    [
        ["1", "0", "0", "1"],
        ["0", "-1", "t", "0"],
        ["-1", "t^2", "1", "1"],
        ["1", "1", "t", "-1"],
        ["0", "-1", "1", "1"],
        ["1", "1", "-1", "0"],
        ["0", "t", "-1", "t^2"],
        ["t^2", "-t", "1", "0"],
        ["t", "0", "-t", "1"],
        ["1", "0", "t", "t"],
        ["t", "-1", "0", "1"],
        ["1", "1", "0", "t"],
    ]
    .into_iter()
    .map(|e| pgl(&k, e))
    .collect()
}

/// Reference elements of the stabilizer of the eight parameters on lines 0 to 7.
pub fn listed_x_tilde_stabilizer() -> Vec<PglMap> {
    let k = FieldDescriptor::eisenstein();
    let mut out = listed_x_stabilizer();
    out.extend(
        [
            ["-1", "2t+1", "1", "1"],
            ["-1", "-1", "-1", "2t+1"],
            ["2t+1", "1", "1", "-1"],
            ["-1", "1", "2t+1", "1"],
            ["-1", "-1", "1", "-1"],
            ["1", "-1", "-1", "2t+1"],
            ["-1", "-1", "2t+1", "1"],
            ["2t+1", "1", "1", "-2t-1"],
            ["-1", "2t+1", "2t+1", "1"],
            ["-1", "2t+1", "-1", "1"],
            ["2t+1", "1", "1", "1"],
            ["1", "-1", "1", "1"],
        ]
        .into_iter()
        .map(|e| pgl(&k, e)),
    );
    out
}

/// Reference elements of the stabilizer of the eight parameters on lines 8 and 9.
pub fn listed_y_tilde_stabilizer() -> Vec<PglMap> {
    let k = FieldDescriptor::eisenstein();
    let mut out = listed_y_stabilizer();
    out.extend(
        [
            ["1", "t", "t-1", "-1"],
            ["t-1", "-1", "-t", "t+1"],
            ["t+1", "1", "t", "t-1"],
            ["t", "t-1", "1", "-t"],
            ["-t+1", "1", "t", "t-1"],
            ["t", "t-1", "-1", "-t"],
            ["-2t-1", "-t", "t+1", "1"],
            ["t", "t+1", "1", "t"],
            ["t", "-t-1", "-1", "t"],
            ["1", "t", "-t-1", "-2t-1"],
            ["-t-1", "-1", "t+2", "t+1"],
            ["t", "t-1", "-2t-1", "-t"],
        ]
        .into_iter()
        .map(|e| pgl(&k, e)),
    );
    out
}

fn as_set(maps: &[PglMap]) -> HashSet<PglMap> {
    maps.iter().cloned().collect()
}

fn criterion_stabilizers() -> Result<Outcome> {
    let x = stabilizer(&MarkedParameterSets::x())?;
    let y = stabilizer(&MarkedParameterSets::y())?;
    let xt = stabilizer(&MarkedParameterSets::x_tilde())?;
    let yt = stabilizer(&MarkedParameterSets::y_tilde())?;
    let e = stabilizer(&MarkedParameterSets::e())?;
    let x_match = as_set(&x.elements) == as_set(&listed_x_stabilizer());
    let y_match = as_set(&y.elements) == as_set(&listed_y_stabilizer());
    let xt_match = as_set(&xt.elements) == as_set(&listed_x_tilde_stabilizer());
    let passed = matches_group(&x, 12, GroupLabel::A4)
        && matches_group(&y, 12, GroupLabel::A4)
        && matches_group(&xt, 24, GroupLabel::S4)
        && matches_group(&yt, 24, GroupLabel::S4)
        && matches_group(&e, 24, GroupLabel::S4)
        && x_match
        && y_match
        && xt_match;
    Ok(Outcome::new(
        passed,
        "X, Y: the 12 listed matrices, A4; X~, Y~, E: order 24, S4; X~ equals its 24 listed matrices",
        format!(
            "X {} (listed set {}); Y {} (listed set {}); X~ {} (listed set {}); Y~ {}; E {}",
            summary(&x),
            x_match,
            summary(&y),
            y_match,
            summary(&xt),
            xt_match,
            summary(&yt),
            summary(&e)
        ),
    ))
}

fn criterion_klein(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::Klein);
    let g_field = c.field().clone();
    let analysis = enumerate_generators(c)?;
    let g = analysis.vertex_group(0, None)?;
    let c3 = two_step(c, 0, 1, 2, 3, 0)?;
    let c4 = two_step(c, 0, 1, 2, 7, 0)?;
    let want3 = pgl(&g_field, ["1", "-i", "1", "i"]);
    let want4 = pgl(&g_field, ["1", "-i", "-i", "1"]);
    let invariance = analysis.marked_invariance(c)?;
    let aux: HashSet<usize> = analysis.aux_counts.values().copied().collect();
    let passed = matches_group(&g, 24, GroupLabel::S4)
        && c3 == want3
        && c4 == want4
        && element_order(&c3) == crate::ElementOrder::Finite(3)
        && element_order(&c4) == crate::ElementOrder::Finite(4)
        && invariance.holds
        && aux == HashSet::from([8]);
    Ok(Outcome::new(
        passed,
        format!("order 24, S4; {want3} order 3; {want4} order 4; E invariant; 8 auxiliaries per pair"),
        format!(
            "{}; {c3} {:?}; {c4} {:?}; invariance {}; auxiliary counts {aux:?}",
            summary(&g),
            element_order(&c3),
            element_order(&c4),
            invariance.holds
        ),
    ))
}

fn criterion_orbits(b: &Builtins) -> Result<Outcome> {
    let klein = b.get(BuiltinName::Klein);
    let one = |f: &Field| FieldElement::one(f);
    let zero = |f: &Field| FieldElement::zero(f);
    let kf = klein.field().clone();
    let ko = enumerate_generators(klein)?.orbit(0, &ProjPoint::p1(one(&kf), zero(&kf))?, None)?;
    let ambient: HashSet<ProjPoint> = ko
        .members
        .iter()
        .map(|(l, p)| klein.lines()[*l].point_at(p))
        .collect();
    let klein_points: HashSet<ProjPoint> = configs::generate_marked_points(klein)?.into_iter().collect();
    let klein_ok = ko.len() == 60 && !ko.truncated && ambient == klein_points;

    let half = b.get(BuiltinName::PenroseHalf);
    let pf = half.field().clone();
    let ho = enumerate_generators(half)?.orbit(0, &ProjPoint::p1(one(&pf), zero(&pf))?, None)?;
    let half_marks = half.marked().expect("marked");
    let half_ok = ho.len() == 20 && ho.members.iter().all(|(l, p)| half_marks[*l].contains(p));

    let penrose = b.get(BuiltinName::Penrose);
    let po = enumerate_generators(penrose)?.orbit(0, &ProjPoint::p1(one(&pf), one(&pf))?, None)?;
    let extended = with_tilde_marks(penrose)?;
    let marks = extended.marked().expect("marked");
    let penrose_ok = po.len() == 80 && po.members.iter().all(|(l, p)| marks[*l].contains(p));

    Ok(Outcome::new(
        klein_ok && half_ok && penrose_ok,
        "Klein 60 = its point set; half-Penrose 20 within marks; Penrose 80 within extended marks",
        format!(
            "Klein {} (equal to point set: {}); half-Penrose {}; Penrose {}",
            ko.len(),
            ambient == klein_points,
            ho.len(),
            po.len()
        ),
    ))
}

fn criterion_double_penrose(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::Penrose);
    let k = c.field().clone();
    let p: HashSet<ProjPoint> = configs::generate_marked_points(c)?.into_iter().collect();
    let quasi = c.clone().with_marked(Some(
        (0..c.len())
            .map(|i| {
                if i < 8 {
                    MarkedParameterSets::x_quasi()
                } else {
                    MarkedParameterSets::y_quasi()
                }
            })
            .collect(),
    ))?;
    let q: HashSet<ProjPoint> = configs::generate_marked_points(&quasi)?.into_iter().collect();
    let a = configs::double_penrose_matrix();
    let image: HashSet<ProjPoint> = p
        .iter()
        .filter_map(|pt| {
            let coords = a
                .iter()
                .map(|row| {
                    row.iter().zip(pt.coords()).fold(FieldElement::zero(&k), |acc, (&m, x)| {
                        acc + FieldElement::from_int(&k, m) * x
                    })
                })
                .collect();
            ProjPoint::new(coords).ok()
        })
        .collect();
    let union = p.union(&q).count();
    Ok(Outcome::new(
        image == q && union == 80,
        "A P = Q as sets; |P u Q| = 80",
        format!("A P = Q: {}; |P| = {}, |Q| = {}, |P u Q| = {union}", image == q, p.len(), q.len()),
    ))
}

fn criterion_p4(b: &Builtins) -> Result<Outcome> {
    let c = b.get(BuiltinName::P4_25);
    let stats = p4ext::incidence_stats_of(c.lines());
    let analysis = enumerate_generators(c)?;
    let g = analysis.vertex_group(0, None)?;
    let witness = p4ext::find_parabolic(&analysis, 0, 4);
    let incidence_ok = stats.lines_per_hyperplane == BTreeMap::from([(5, 30)])
        && stats.hyperplanes_per_line == BTreeMap::from([(6, 25)]);
    let passed = c.len() == 25 && incidence_ok && !g.is_finite() && witness.is_some();
    Ok(Outcome::new(
        passed,
        "25 lines; 30 hyperplanes of 5 lines, 6 per line; infinite; parabolic loop of length <= 4",
        format!(
            "{} lines; lines per hyperplane {:?}; hyperplanes per line {:?}; {}; parabolic {}",
            c.len(),
            stats.lines_per_hyperplane,
            stats.hyperplanes_per_line,
            summary(&g),
            witness.map_or("none".to_string(), |w| format!("{} via {:?}", w.map, w.word))
        ),
    ))
}

fn criterion_properties(seed: u64, instances: usize) -> Result<Outcome> {
    let outcomes = property_suite(seed, instances)?;
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| o.failures > 0 || o.instances < instances)
        .map(|o| format!("{} over {}: {} of {}", o.property, o.field, o.failures, o.instances))
        .collect();
    Ok(Outcome::new(
        failed.is_empty(),
        format!("{instances} instances per property and field, no failures"),
        if failed.is_empty() {
            format!("{} suites passed", outcomes.len())
        } else {
            format!("failures: {}", failed.join("; "))
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub property: &'static str,
    pub field: &'static str,
    pub instances: usize,
    pub failures: usize,
}

fn named_fields() -> Vec<(&'static str, Field)> {
    vec![
        ("Q", FieldDescriptor::rationals()),
        ("Q(w)", FieldDescriptor::eisenstein()),
        ("Q(i)", FieldDescriptor::gaussian()),
        ("Q(z5)", FieldDescriptor::cyclotomic5()),
    ]
}

fn random_element(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    let bound = if field.degree() > 2 { 1 } else { 3 };
    let coeffs: Vec<i64> = (0..field.degree()).map(|_| rng.gen_range(-bound..=bound)).collect();
    FieldElement::from_int_coeffs(field, &coeffs)
}

fn random_nonzero(field: &Field, rng: &mut ChaCha8Rng) -> FieldElement {
    loop {
        let x = random_element(field, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_vector(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    (0..n).map(|_| random_element(field, rng)).collect()
}

fn random_line(field: &Field, rng: &mut ChaCha8Rng) -> ParamLine {
    loop {
        if let Ok(l) = ParamLine::new(random_vector(field, 4, rng), random_vector(field, 4, rng)) {
            return l;
        }
    }
}

fn random_point(field: &Field, rng: &mut ChaCha8Rng) -> ProjPoint {
    loop {
        if let Ok(p) = ProjPoint::new(random_vector(field, 2, rng)) {
            return p;
        }
    }
}

fn random_raw_matrix(field: &Field, rng: &mut ChaCha8Rng) -> [[FieldElement; 2]; 2] {
    loop {
        let m = [
            [random_element(field, rng), random_element(field, rng)],
            [random_element(field, rng), random_element(field, rng)],
        ];
        if !(&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_zero() {
            return m;
        }
    }
}

fn random_pgl(field: &Field, rng: &mut ChaCha8Rng) -> PglMap {
    PglMap::canonicalize(random_raw_matrix(field, rng)).expect("nonsingular")
}

/// Lines `u, v, w` with `v` skew to both `u` and `w`.
fn random_valid_triple(field: &Field, rng: &mut ChaCha8Rng) -> (ParamLine, ParamLine, ParamLine) {
    loop {
        let (u, v, w) = (random_line(field, rng), random_line(field, rng), random_line(field, rng));
        if lines_skew(&u, &v) && lines_skew(&v, &w) {
            return (u, v, w);
        }
    }
}

fn random_invertible4(field: &Field, rng: &mut ChaCha8Rng) -> Vec<Vec<FieldElement>> {
    loop {
        let m: Vec<Vec<FieldElement>> = (0..4).map(|_| random_vector(field, 4, rng)).collect();
        if linalg::rank(&m) == 4 {
            return m;
        }
    }
}

fn transform_line(m: &[Vec<FieldElement>], l: &ParamLine) -> ParamLine {
    let apply = |v: &[FieldElement]| -> Vec<FieldElement> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(FieldElement::zero(v[0].field()), |acc, (a, b)| acc + a * b)
            })
            .collect()
    };
    ParamLine::new(apply(l.basis0()), apply(l.basis1())).expect("invertible change of coordinates")
}

/// A random subconfiguration of a built-in over `field`, moved by a random
/// change of coordinates, or `None` when no built-in lives over `field`.
fn random_subconfiguration(field: &Field, rng: &mut ChaCha8Rng) -> Result<Option<Configuration>> {
    let source = match field.degree() {
        1 => {
            if rng.gen_bool(0.5) {
                builtin(BuiltinName::D4)?
            } else {
                builtin(BuiltinName::Quadric4)?
            }
        }
        2 if field.min_poly()[1] == 1.into() => builtin(BuiltinName::Penrose)?,
        2 => builtin(BuiltinName::Klein)?,
        _ => return Ok(None),
    };
    let n = source.len();
    let size = rng.gen_range(4.min(n)..=6.min(n));
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = rng.gen_range(i..n);
        indices.swap(i, j);
    }
    indices.truncate(size);
    let m = random_invertible4(field, rng);
    let lines = indices.iter().map(|&i| transform_line(&m, &source.lines()[i])).collect();
    Ok(Some(Configuration::new("random", field.clone(), lines, None)?))
}

/// Runs each randomized property on `instances` cases per field.
pub fn property_suite(seed: u64, instances: usize) -> Result<Vec<PropertyOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (fname, field) in named_fields() {
        let mut record = |property: &'static str, failures: usize, done: usize| {
            out.push(PropertyOutcome {
                property,
                field: fname,
                instances: done,
                failures,
            });
        };

        let mut failures = 0;
        for _ in 0..instances {
            let (u, v, w) = random_valid_triple(&field, &mut rng);
            let there = projection_matrix(&u, &v, &w)?;
            let back = projection_matrix(&w, &v, &u)?;
            failures += usize::from(!back.compose(&there).is_identity());
        }
        record("inverse law", failures, instances);

        let mut failures = 0;
        for _ in 0..instances {
            let (u, v, w) = random_valid_triple(&field, &mut rng);
            let map = projection_matrix(&u, &v, &w)?;
            let param = random_point(&field, &mut rng);
            let p = u.point_at(&param);
            let q = w.point_at(&map.apply(&param));
            let rows = [p.coords().to_vec(), q.coords().to_vec(), v.basis0().to_vec(), v.basis1().to_vec()];
            failures += usize::from(linalg::rank(&rows) != 3);
        }
        record("incidence", failures, instances);

        let mut failures = 0;
        for _ in 0..instances {
            let raw = random_raw_matrix(&field, &mut rng);
            let m = PglMap::canonicalize(raw.clone())?;
            let again = PglMap::canonicalize(m.entries().clone())?;
            let s = random_nonzero(&field, &mut rng);
            let scaled = PglMap::canonicalize(raw.map(|row| row.map(|x| &x * &s)))?;
            failures += usize::from(again != m || scaled != m);
        }
        record("canonical form", failures, instances);

        let mut failures = 0;
        for _ in 0..instances {
            let size = rng.gen_range(3..=4);
            let mut points: Vec<ProjPoint> = Vec::new();
            while points.len() < size {
                let p = random_point(&field, &mut rng);
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            let h = stabilizer(&points)?;
            let gens: Vec<PglMap> = (0..2)
                .map(|_| h.elements[rng.gen_range(0..h.elements.len())].clone())
                .collect();
            let g = generate_closure(&field, &gens, None)?;
            let set: HashSet<&PglMap> = g.elements.iter().collect();
            let ok = g.is_finite()
                && set.contains(&PglMap::identity(&field))
                && g.elements.iter().all(|a| set.contains(&a.inverse()))
                && g.elements.iter().all(|a| g.elements.iter().all(|b| set.contains(&a.compose(b))))
                && g.elements.iter().all(|a| h.contains(a))
                && h.len() % g.len() == 0;
            failures += usize::from(!ok);
        }
        record("group axioms", failures, instances);

        let mut failures = 0;
        let mut done = 0;
        for _ in 0..instances {
            let Some(c) = random_subconfiguration(&field, &mut rng)? else {
                break;
            };
            done += 1;
            let analysis = enumerate_generators(&c)?;
            let mut ok = true;
            for comp in &analysis.components {
                let reference = analysis.vertex_group(comp[0], None)?;
                for &base in comp {
                    for order in [TreeOrder::Ascending, TreeOrder::Descending] {
                        let g = analysis.vertex_group_with_tree(base, None, order)?;
                        ok &= g.order == reference.order && g.label == reference.label;
                    }
                }
            }
            failures += usize::from(!ok);
        }
        if done > 0 {
            record("base independence", failures, done);
        }

        let mut failures = 0;
        for _ in 0..instances {
            // a finite-order element from a random stabilizer, or a random one
            let m = if rng.gen_bool(0.5) {
                let pts: Vec<ProjPoint> = (0..3).map(|_| random_point(&field, &mut rng)).collect();
                match stabilizer(&pts) {
                    Ok(h) => h.elements[rng.gen_range(0..h.elements.len())].clone(),
                    Err(_) => random_pgl(&field, &mut rng),
                }
            } else {
                random_pgl(&field, &mut rng)
            };
            let g = random_pgl(&field, &mut rng);
            let conj = g.compose(&m).compose(&g.inverse());
            failures += usize::from(element_order(&conj) != element_order(&m));
        }
        record("order under conjugation", failures, instances);
    }
    Ok(out)
}
