//! The 25-line orbit configuration in `P^4` over the fifth cyclotomic field.
//!
//! Three lines may be projected onto each other when they lie in a common
//! hyperplane; hyperplanes are kept implicitly as maximal sets of lines
//! spanning a 4-dimensional subspace.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElement};
use crate::groupoid::{Configuration, GroupoidAnalysis, SimpleMorphism};
use crate::groups::GroupResult;
use crate::linalg;
use crate::projective::{lines_skew, wedge4, ParamLine, PglMap};

/// A line of `P^4` with its two basis points.
pub type Line4 = ParamLine;

fn sigma(p: &[FieldElement]) -> Vec<FieldElement> {
    vec![p[4].clone(), p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()]
}

fn tau(p: &[FieldElement]) -> Vec<FieldElement> {
    let t = FieldElement::generator(p[0].field());
    p.iter()
        .enumerate()
        .map(|(k, x)| x * &t.pow(k as u32))
        .collect()
}

fn seed(field: &Field) -> Line4 {
    ParamLine::from_ints(field, &[0, 1, 0, 0, -1], &[0, 0, 1, -1, 0]).expect("independent rows")
}

/// `σ^a τ^b` applied to a line.
pub fn transform(line: &Line4, a: u32, b: u32) -> Line4 {
    let apply = |v: &[FieldElement]| {
        let mut v = v.to_vec();
        for _ in 0..b {
            v = tau(&v);
        }
        for _ in 0..a {
            v = sigma(&v);
        }
        v
    };
    ParamLine::new(apply(line.basis0()), apply(line.basis1())).expect("automorphism keeps rank")
}

/// The images `σ^a τ^b L` for `0 <= a, b < 5`, in order `(a, b)`, without repeats.
pub fn generate_l25() -> Vec<Line4> {
    let field = FieldDescriptor::cyclotomic5();
    let base = seed(&field);
    let mut out: Vec<Line4> = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            let line = transform(&base, a, b);
            if !out.iter().any(|l| l.same_subspace(&line)) {
                out.push(line);
            }
        }
    }
    out
}

pub fn l25_configuration() -> Result<Configuration> {
    Configuration::new("p4_25", FieldDescriptor::cyclotomic5(), generate_l25(), None)
}

/// Whether the three lines lie in a common hyperplane.
pub fn coplanar_triple(u: &Line4, v: &Line4, w: &Line4) -> bool {
    let rows: Vec<Vec<FieldElement>> = [u, v, w]
        .iter()
        .flat_map(|l| l.basis().iter().cloned())
        .collect();
    linalg::rank(&rows) <= 4
}

fn drop_column(v: &[FieldElement], m: usize) -> Vec<FieldElement> {
    v.iter()
        .enumerate()
        .filter(|&(k, _)| k != m)
        .map(|(_, x)| x.clone())
        .collect()
}

/// The 4x4 minor of `[u; v0; v1; w]` with column `m` deleted.
fn minor(u: &[FieldElement], v: &Line4, w: &[FieldElement], m: usize) -> Result<FieldElement> {
    wedge4(
        &drop_column(u, m),
        &drop_column(v.basis0(), m),
        &drop_column(v.basis1(), m),
        &drop_column(w, m),
    )
}

/// The map `U -> W` sending `u` to the point where `W` meets the plane
/// spanned by `u` and `V`.
pub fn projection4(u: &Line4, v: &Line4, w: &Line4) -> Result<PglMap> {
    for l in [u, v, w] {
        if l.ambient_len() != 5 {
            return Err(Error::DimensionMismatch {
                expected: 5,
                found: l.ambient_len(),
            });
        }
    }
    if !lines_skew(u, v) {
        return Err(Error::LinesMeet("domain and auxiliary lines intersect"));
    }
    if !lines_skew(v, w) {
        return Err(Error::LinesMeet("auxiliary and codomain lines intersect"));
    }
    if !coplanar_triple(u, v, w) {
        return Err(Error::NotCoplanar);
    }
    projection4_unchecked(u, v, w)
}

/// `projection4` for a triple already known to be valid.
fn projection4_unchecked(u: &Line4, v: &Line4, w: &Line4) -> Result<PglMap> {
    // rows m of the system: c0 * minor(u, w0) + c1 * minor(u, w1) = 0
    let mut systems = Vec::with_capacity(2);
    for ub in u.basis() {
        let rows = (0..5)
            .map(|m| Ok(vec![minor(ub, v, w.basis0(), m)?, minor(ub, v, w.basis1(), m)?]))
            .collect::<Result<Vec<_>>>()?;
        let nonzero = rows.iter().any(|r| !r[0].is_zero() || !r[1].is_zero());
        let rank_one = rows
            .iter()
            .enumerate()
            .all(|(i, r)| rows[i + 1..].iter().all(|q| (&r[0] * &q[1] - &r[1] * &q[0]).is_zero()));
        if !(nonzero && rank_one) {
            return Err(Error::KernelDimension(if nonzero { 0 } else { 2 }));
        }
        systems.push(rows);
    }
    // (minor(u, w1), -minor(u, w0)) from one fixed row is linear in u, so both
    // columns share a scale
    for m in 0..5 {
        let col = |s: &Vec<Vec<FieldElement>>| (s[m][1].clone(), -&s[m][0]);
        let ((a, c), (b, d)) = (col(&systems[0]), col(&systems[1]));
        if let Ok(map) = PglMap::canonicalize([[a, b], [c, d]]) {
            return Ok(map);
        }
    }
    Err(Error::SingularMatrix)
}

/// Normal vector of the hyperplane spanned by two skew lines.
fn hyperplane_normal(a: &Line4, b: &Line4) -> Option<Vec<FieldElement>> {
    let rows = vec![
        a.basis0().to_vec(),
        a.basis1().to_vec(),
        b.basis0().to_vec(),
        b.basis1().to_vec(),
    ];
    let kernel = linalg::kernel(a.field(), &rows, a.ambient_len());
    (kernel.len() == 1).then(|| kernel.into_iter().next().expect("one vector"))
}

fn dot(x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    x.iter()
        .zip(y)
        .fold(FieldElement::zero(x[0].field()), |acc, (a, b)| acc + a * b)
}

/// Maximal sets of lines in a common hyperplane, each sorted, in order of
/// their smallest pair.
pub fn hyperplanes(lines: &[Line4]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(n) = hyperplane_normal(&lines[i], &lines[j]) else {
                continue;
            };
            let members: Vec<usize> = (0..lines.len())
                .filter(|&l| {
                    dot(&n, lines[l].basis0()).is_zero() && dot(&n, lines[l].basis1()).is_zero()
                })
                .collect();
            if members.len() >= 3 && seen.insert(members.clone()) {
                out.push(members);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStats {
    pub hyperplanes: Vec<Vec<usize>>,
    /// Lines per hyperplane -> number of hyperplanes.
    pub lines_per_hyperplane: BTreeMap<usize, usize>,
    /// Hyperplanes per line -> number of lines.
    pub hyperplanes_per_line: BTreeMap<usize, usize>,
}

pub fn incidence_stats_of(lines: &[Line4]) -> IncidenceStats {
    let planes = hyperplanes(lines);
    let mut lines_per_hyperplane = BTreeMap::new();
    let mut per_line = vec![0usize; lines.len()];
    for h in &planes {
        *lines_per_hyperplane.entry(h.len()).or_insert(0) += 1;
        for &l in h {
            per_line[l] += 1;
        }
    }
    let mut hyperplanes_per_line = BTreeMap::new();
    for n in per_line {
        *hyperplanes_per_line.entry(n).or_insert(0) += 1;
    }
    IncidenceStats {
        hyperplanes: planes,
        lines_per_hyperplane,
        hyperplanes_per_line,
    }
}

pub fn incidence_stats() -> IncidenceStats {
    incidence_stats_of(&generate_l25())
}

/// Simple morphisms `π(i, j, k)` for every ordered triple of distinct lines
/// in a common hyperplane with `j` skew to `i` and `k`, sorted by `(i, k, j)`.
pub(crate) fn simple_morphisms(lines: &[Line4], skew: &[Vec<bool>]) -> Result<Vec<SimpleMorphism>> {
    let planes = hyperplanes(lines);
    let mut triples = BTreeSet::new();
    for h in &planes {
        for &i in h {
            for &k in h {
                for &j in h {
                    if i != k && j != i && j != k {
                        triples.insert((i, k, j));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for (i, k, j) in triples {
        if skew[i][j] && skew[j][k] {
            out.push(SimpleMorphism {
                src: i,
                aux: j,
                dst: k,
                map: projection4_unchecked(&lines[i], &lines[j], &lines[k])?,
            });
        }
    }
    Ok(out)
}

pub fn analysis() -> Result<GroupoidAnalysis> {
    crate::groupoid::enumerate_generators(&l25_configuration()?)
}

pub fn vertex_group_p4(base: usize, cap: Option<usize>) -> Result<GroupResult> {
    analysis()?.vertex_group(base, cap)
}

/// A loop at the base whose composite is parabolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicWitness {
    /// `(src, aux, dst)` in order of application.
    pub word: Vec<(usize, usize, usize)>,
    pub map: PglMap,
}

/// Searches loops at `base` of at most `max_len` simple morphisms for one
/// with parabolic composite.
///
/// Every loop is `b⁻¹ ∘ a` for paths `a`, `b` from `base` to a common line of
/// length at most `ceil(max_len / 2)`; inverses of simple morphisms are simple.
/// Candidates are screened in a complex embedding and confirmed exactly.
/// Loops are tried by increasing length, so the witness is a shortest one.
pub fn find_parabolic(
    analysis: &GroupoidAnalysis,
    base: usize,
    max_len: usize,
) -> Option<ParabolicWitness> {
    let half = max_len.div_ceil(2);
    let root = analysis.field().complex_root();
    let mut outgoing: Vec<Vec<&SimpleMorphism>> = vec![Vec::new(); analysis.line_count()];
    for g in &analysis.generators {
        outgoing[g.src].push(g);
    }

    // paths by length, each a distinct (end line, composite)
    let start = Path {
        line: base,
        map: PglMap::identity(analysis.field()),
        word: Vec::new(),
        numeric: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    };
    let mut seen: HashSet<(usize, PglMap)> = HashSet::from([(base, start.map.clone())]);
    let mut by_len: Vec<Vec<Path>> = vec![vec![start]];
    for _ in 0..half {
        let mut next = Vec::new();
        for p in by_len.last().expect("nonempty") {
            for g in &outgoing[p.line] {
                let map = g.map.compose(&p.map);
                if !seen.insert((g.dst, map.clone())) {
                    continue;
                }
                let mut word = p.word.clone();
                word.push((g.src, g.aux, g.dst));
                next.push(Path::new(g.dst, map, word, root));
            }
        }
        by_len.push(next);
    }

    for total in 1..=max_len {
        for lb in 0..=total / 2 {
            let la = total - lb;
            if la > half {
                continue;
            }
            for a in &by_len[la] {
                for b in by_len[lb].iter().filter(|b| b.line == a.line) {
                    if !numerically_parabolic(&a.numeric, &b.numeric) {
                        continue;
                    }
                    let map = b.map.inverse().compose(&a.map);
                    if map.is_parabolic() {
                        let mut word = a.word.clone();
                        word.extend(b.word.iter().rev().map(|&(s, j, d)| (d, j, s)));
                        return Some(ParabolicWitness { word, map });
                    }
                }
            }
        }
    }
    None
}

struct Path {
    line: usize,
    map: PglMap,
    word: Vec<(usize, usize, usize)>,
    numeric: [Complex64; 4],
}

impl Path {
    fn new(line: usize, map: PglMap, word: Vec<(usize, usize, usize)>, root: Complex64) -> Self {
        let [[a, b], [c, d]] = map.entries();
        let numeric = [a, b, c, d].map(|x| x.to_complex(root));
        Path { line, map, word, numeric }
    }
}

/// Whether `adj(b) * a` looks parabolic in floating point.
fn numerically_parabolic(a: &[Complex64; 4], b: &[Complex64; 4]) -> bool {
    let [a0, a1, a2, a3] = *a;
    let [b0, b1, b2, b3] = *b;
    // trace of [[b3, -b1], [-b2, b0]] * a
    let tr = b3 * a0 - b1 * a2 - b2 * a1 + b0 * a3;
    let det = (a0 * a3 - a1 * a2) * (b0 * b3 - b1 * b2);
    let lhs = tr * tr;
    let rhs = det * 4.0;
    (lhs - rhs).norm() <= 1e-9 * (lhs.norm() + rhs.norm()).max(1.0)
}
