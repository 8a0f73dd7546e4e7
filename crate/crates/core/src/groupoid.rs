//! The projection groupoid of a line configuration.
//!
//! Objects are the lines; morphisms are generated by the simple projections
//! `π(i, j, k)` through an auxiliary line `j`. Vertex groups are computed by
//! conjugating every simple morphism back to the base line along a spanning
//! tree of the component.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groups::{generate_closure, GroupResult};
use crate::projective::{lines_skew, projection_matrix, Morphism, ParamLine, PglMap, ProjPoint};

/// A field, a list of parametrized lines, and optional marked parameters per line.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub name: String,
    field: Field,
    lines: Vec<ParamLine>,
    marked: Option<Vec<Vec<ProjPoint>>>,
}

impl Configuration {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        lines: Vec<ParamLine>,
        marked: Option<Vec<Vec<ProjPoint>>>,
    ) -> Result<Self> {
        if let Some(first) = lines.first() {
            for line in &lines {
                if line.field() != &field {
                    return Err(Error::FieldMismatch);
                }
                if line.ambient_len() != first.ambient_len() {
                    return Err(Error::DimensionMismatch {
                        expected: first.ambient_len(),
                        found: line.ambient_len(),
                    });
                }
            }
        }
        let mut keys: HashMap<Vec<Vec<crate::field::FieldElement>>, usize> = HashMap::new();
        for (i, line) in lines.iter().enumerate() {
            if let Some(&first) = keys.get(&line.subspace_key()) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            keys.insert(line.subspace_key(), i);
        }
        if let Some(marked) = &marked {
            if marked.len() != lines.len() {
                return Err(Error::DimensionMismatch {
                    expected: lines.len(),
                    found: marked.len(),
                });
            }
            for (i, set) in marked.iter().enumerate() {
                for (k, p) in set.iter().enumerate() {
                    if p.len() != 2 {
                        return Err(Error::DimensionMismatch {
                            expected: 2,
                            found: p.len(),
                        });
                    }
                    if p.field() != &field {
                        return Err(Error::FieldMismatch);
                    }
                    if set[..k].contains(p) {
                        return Err(Error::DuplicateMarked { line: i });
                    }
                }
            }
        }
        Ok(Configuration {
            name: name.into(),
            field,
            lines,
            marked,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn lines(&self) -> &[ParamLine] {
        &self.lines
    }

    pub fn marked(&self) -> Option<&[Vec<ProjPoint>]> {
        self.marked.as_deref()
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn with_marked(self, marked: Option<Vec<Vec<ProjPoint>>>) -> Result<Self> {
        Configuration::new(self.name, self.field, self.lines, marked)
    }

    /// The configuration restricted to `indices`, in that order.
    pub fn restrict(&self, name: impl Into<String>, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            self.check_index(i)?;
        }
        let lines = indices.iter().map(|&i| self.lines[i].clone()).collect();
        let marked = self
            .marked
            .as_ref()
            .map(|m| indices.iter().map(|&i| m[i].clone()).collect());
        Configuration::new(name, self.field.clone(), lines, marked)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.lines.len() {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index,
                len: self.lines.len(),
            })
        }
    }
}

/// A simple morphism `π(src, aux, dst)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleMorphism {
    pub src: usize,
    pub aux: usize,
    pub dst: usize,
    pub map: PglMap,
}

impl SimpleMorphism {
    pub fn morphism(&self) -> Morphism {
        Morphism {
            src: self.src,
            dst: self.dst,
            map: self.map.clone(),
        }
    }
}

/// Order in which a spanning tree visits neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TreeOrder {
    /// Ascending line index, first auxiliary per edge.
    #[default]
    Ascending,
    /// Descending line index, last auxiliary per edge.
    Descending,
}

/// All simple morphisms of a configuration and the data derived from them.
#[derive(Clone, Debug)]
pub struct GroupoidAnalysis {
    field: Field,
    line_count: usize,
    /// Sorted by `(src, dst, aux)`.
    pub generators: Vec<SimpleMorphism>,
    /// `skew[i][j]`: whether lines `i` and `j` are disjoint.
    pub skew: Vec<Vec<bool>>,
    /// Hom-connected components, each sorted, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Number of valid auxiliaries for each ordered pair of distinct lines.
    pub aux_counts: BTreeMap<(usize, usize), usize>,
}

/// Enumerates every simple morphism of `config`. Lines in `P^3` use the
/// skewness rule; lines in `P^4` use the common-hyperplane rule.
pub fn enumerate_generators(config: &Configuration) -> Result<GroupoidAnalysis> {
    let n = config.len();
    let lines = config.lines();
    let skew: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i != j && lines_skew(&lines[i], &lines[j])).collect())
        .collect();
    let ambient = lines.first().map_or(4, ParamLine::ambient_len);
    let generators = match ambient {
        4 => {
            let mut out = Vec::new();
            for i in 0..n {
                for k in (0..n).filter(|&k| k != i) {
                    for j in (0..n).filter(|&j| j != i && j != k) {
                        if skew[i][j] && skew[j][k] {
                            out.push(SimpleMorphism {
                                src: i,
                                aux: j,
                                dst: k,
                                map: projection_matrix(&lines[i], &lines[j], &lines[k])?,
                            });
                        }
                    }
                }
            }
            out
        }
        5 => crate::p4ext::simple_morphisms(lines, &skew)?,
        other => {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: other,
            })
        }
    };
    Ok(GroupoidAnalysis::from_generators(config.field().clone(), n, skew, generators))
}

impl GroupoidAnalysis {
    pub(crate) fn from_generators(
        field: Field,
        line_count: usize,
        skew: Vec<Vec<bool>>,
        generators: Vec<SimpleMorphism>,
    ) -> Self {
        let mut aux_counts = BTreeMap::new();
        for i in 0..line_count {
            for k in (0..line_count).filter(|&k| k != i) {
                aux_counts.insert((i, k), 0);
            }
        }
        for g in &generators {
            *aux_counts.entry((g.src, g.dst)).or_insert(0) += 1;
        }
        let mut analysis = GroupoidAnalysis {
            field,
            line_count,
            generators,
            skew,
            components: Vec::new(),
            aux_counts,
        };
        analysis.components = analysis.compute_components();
        analysis
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn line_count(&self) -> usize {
        self.line_count
    }

    fn compute_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.line_count).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut y = x;
            while parent[y] != root {
                let next = parent[y];
                parent[y] = root;
                y = next;
            }
            root
        }
        for g in &self.generators {
            let (a, b) = (find(&mut parent, g.src), find(&mut parent, g.dst));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.line_count {
            let root = find(&mut parent, x);
            groups.entry(root).or_default().push(x);
        }
        groups.into_values().collect()
    }

    pub fn component_of(&self, line: usize) -> Option<&[usize]> {
        self.components
            .iter()
            .find(|c| c.contains(&line))
            .map(Vec::as_slice)
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.line_count {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index,
                len: self.line_count,
            })
        }
    }

    fn outgoing(&self) -> Vec<Vec<&SimpleMorphism>> {
        let mut out = vec![Vec::new(); self.line_count];
        for g in &self.generators {
            out[g.src].push(g);
        }
        out
    }

    /// Morphisms `base -> v` along a breadth-first spanning tree of the
    /// component containing `base`.
    pub fn spanning_tree(&self, base: usize, order: TreeOrder) -> Result<BTreeMap<usize, Morphism>> {
        self.check_index(base)?;
        let outgoing = self.outgoing();
        let mut tree = BTreeMap::from([(base, Morphism::identity(base, &self.field))]);
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            // first (or last) generator per target, generators sorted by (dst, aux)
            let mut edges: BTreeMap<usize, &SimpleMorphism> = BTreeMap::new();
            for g in &outgoing[x] {
                match order {
                    TreeOrder::Ascending => {
                        edges.entry(g.dst).or_insert(g);
                    }
                    TreeOrder::Descending => {
                        edges.insert(g.dst, g);
                    }
                }
            }
            let targets: Vec<usize> = match order {
                TreeOrder::Ascending => edges.keys().copied().collect(),
                TreeOrder::Descending => edges.keys().rev().copied().collect(),
            };
            for k in targets {
                if tree.contains_key(&k) {
                    continue;
                }
                let path = crate::projective::compose(&edges[&k].morphism(), &tree[&x])?;
                tree.insert(k, path);
                queue.push_back(k);
            }
        }
        Ok(tree)
    }

    /// Generators of the vertex group at `base`: `τ_dst⁻¹ ∘ g ∘ τ_src` for
    /// every simple morphism `g` of the component.
    pub fn vertex_group_generators(&self, base: usize, order: TreeOrder) -> Result<Vec<PglMap>> {
        let tree = self.spanning_tree(base, order)?;
        let mut gens = Vec::new();
        for g in self.generators.iter().filter(|g| tree.contains_key(&g.src)) {
            let there = g.map.compose(&tree[&g.src].map);
            let back = tree[&g.dst].map.inverse();
            gens.push(back.compose(&there));
        }
        Ok(gens)
    }

    pub fn vertex_group(&self, base: usize, cap: Option<usize>) -> Result<GroupResult> {
        self.vertex_group_with_tree(base, cap, TreeOrder::Ascending)
    }

    pub fn vertex_group_with_tree(
        &self,
        base: usize,
        cap: Option<usize>,
        order: TreeOrder,
    ) -> Result<GroupResult> {
        let gens = self.vertex_group_generators(base, order)?;
        generate_closure(&self.field, &gens, cap)
    }

    /// Breadth-first orbit of a marked point under all simple morphisms.
    pub fn orbit(&self, line: usize, point: &ProjPoint, cap: Option<usize>) -> Result<OrbitResult> {
        self.check_index(line)?;
        if point.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: point.len(),
            });
        }
        let cap = cap.unwrap_or(DEFAULT_ORBIT_CAP);
        let outgoing = self.outgoing();
        let start = (line, point.clone());
        let mut seen: HashSet<(usize, ProjPoint)> = HashSet::from([start.clone()]);
        let mut members = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some((l, p)) = queue.pop_front() {
            for g in &outgoing[l] {
                let next = (g.dst, g.map.apply(&p));
                if seen.contains(&next) {
                    continue;
                }
                if members.len() >= cap {
                    return Ok(OrbitResult {
                        members,
                        truncated: true,
                    });
                }
                seen.insert(next.clone());
                members.push(next.clone());
                queue.push_back(next);
            }
        }
        Ok(OrbitResult {
            members,
            truncated: false,
        })
    }

    /// Checks that every simple morphism carries the marked set of its source
    /// line onto the marked set of its target line.
    pub fn marked_invariance(&self, config: &Configuration) -> Result<InvarianceReport> {
        let marked = config.marked().ok_or(Error::MissingMarked(0))?;
        if marked.len() != self.line_count {
            return Err(Error::DimensionMismatch {
                expected: self.line_count,
                found: marked.len(),
            });
        }
        let sets: Vec<HashSet<&ProjPoint>> = marked.iter().map(|m| m.iter().collect()).collect();
        for g in &self.generators {
            if marked[g.src].len() != marked[g.dst].len() {
                return Ok(InvarianceReport::fails(g, marked[g.src].first(), None));
            }
            for p in &marked[g.src] {
                let image = g.map.apply(p);
                if !sets[g.dst].contains(&image) {
                    return Ok(InvarianceReport::fails(g, Some(p), Some(image)));
                }
            }
        }
        Ok(InvarianceReport {
            holds: true,
            counterexample: None,
        })
    }
}

pub const DEFAULT_ORBIT_CAP: usize = 10_000;

/// Orbit members in discovery order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitResult {
    pub members: Vec<(usize, ProjPoint)>,
    pub truncated: bool,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn by_line(&self) -> BTreeMap<usize, Vec<ProjPoint>> {
        let mut out: BTreeMap<usize, Vec<ProjPoint>> = BTreeMap::new();
        for (l, p) in &self.members {
            out.entry(*l).or_default().push(p.clone());
        }
        out
    }

    pub fn contains(&self, line: usize, point: &ProjPoint) -> bool {
        self.members.iter().any(|(l, p)| *l == line && p == point)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub src: usize,
    pub aux: usize,
    pub dst: usize,
    pub point: Option<ProjPoint>,
    pub image: Option<ProjPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl InvarianceReport {
    fn fails(g: &SimpleMorphism, point: Option<&ProjPoint>, image: Option<ProjPoint>) -> Self {
        InvarianceReport {
            holds: false,
            counterexample: Some(Counterexample {
                src: g.src,
                aux: g.aux,
                dst: g.dst,
                point: point.cloned(),
                image,
            }),
        }
    }
}

/// Hom-connected components of the groupoid.
pub fn connectivity(analysis: &GroupoidAnalysis) -> Vec<Vec<usize>> {
    analysis.components.clone()
}

pub fn vertex_group(config: &Configuration, base: usize, cap: Option<usize>) -> Result<GroupResult> {
    config.check_index(base)?;
    enumerate_generators(config)?.vertex_group(base, cap)
}

pub fn orbit(
    config: &Configuration,
    line: usize,
    point: &ProjPoint,
    cap: Option<usize>,
) -> Result<OrbitResult> {
    config.check_index(line)?;
    enumerate_generators(config)?.orbit(line, point, cap)
}

pub fn marked_invariance(config: &Configuration) -> Result<InvarianceReport> {
    let marked = config.marked().ok_or(Error::MissingMarked(0))?;
    if let Some(i) = marked.iter().position(Vec::is_empty) {
        return Err(Error::MissingMarked(i));
    }
    enumerate_generators(config)?.marked_invariance(config)
}
