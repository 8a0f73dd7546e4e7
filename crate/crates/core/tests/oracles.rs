//! Independent recomputations of derived values by naive methods.

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewline_core::configs::{builtin, BuiltinName};
use skewline_core::projective::max_finite_order;
use skewline_core::{
    d4_model, enumerate_generators, linalg, lines_skew, p4ext, projection_matrix,
    Configuration, Field, FieldDescriptor, FieldElement, ParamLine, ProjPoint,
};

fn int(field: &Field, v: i64) -> FieldElement {
    FieldElement::from_int(field, v)
}

fn p1(field: &Field, a: i64, b: i64) -> ProjPoint {
    ProjPoint::p1(int(field, a), int(field, b)).unwrap()
}

/// The parameter on `w` of the point where the span of `u(p)` and `v` meets
/// `w`, by solving `x p + y v0 + z v1 + a w0 + b w1 = 0`.
fn image_by_elimination(u: &ParamLine, v: &ParamLine, w: &ParamLine, p: &ProjPoint) -> ProjPoint {
    let field = u.field().clone();
    let cols = [
        u.point_at(p).coords().to_vec(),
        v.basis0().to_vec(),
        v.basis1().to_vec(),
        w.basis0().to_vec(),
        w.basis1().to_vec(),
    ];
    let n = cols[0].len();
    let rows: Vec<Vec<FieldElement>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = linalg::kernel(&field, &rows, 5);
    assert_eq!(kernel.len(), 1, "unique intersection point");
    ProjPoint::new(vec![kernel[0][3].clone(), kernel[0][4].clone()]).unwrap()
}

#[test]
fn projection_agrees_with_elimination() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for field in [FieldDescriptor::rationals(), FieldDescriptor::eisenstein()] {
        let mut checked = 0;
        while checked < 40 {
            let line = |rng: &mut ChaCha8Rng| {
                let v = |rng: &mut ChaCha8Rng| -> Vec<i64> { (0..4).map(|_| rng.gen_range(-4..=4)).collect() };
                let (a, b) = (v(rng), v(rng));
                ParamLine::from_ints(&field, &a, &b).ok()
            };
            let (Some(u), Some(v), Some(w)) = (line(&mut rng), line(&mut rng), line(&mut rng)) else {
                continue;
            };
            if !(lines_skew(&u, &v) && lines_skew(&v, &w) && lines_skew(&u, &w)) {
                continue;
            }
            let map = projection_matrix(&u, &v, &w).unwrap();
            for p in [p1(&field, 1, 0), p1(&field, 0, 1), p1(&field, 3, -2)] {
                assert_eq!(map.apply(&p), image_by_elimination(&u, &v, &w, &p));
            }
            checked += 1;
        }
    }
}

#[test]
fn projection4_agrees_with_elimination() {
    let c = builtin(BuiltinName::P4_25).unwrap();
    let field = c.field().clone();
    let lines = c.lines();
    let mut checked = 0;
    for i in 0..lines.len() {
        for j in 0..lines.len() {
            for k in 0..lines.len() {
                if checked >= 30 || i == j || j == k || i == k {
                    continue;
                }
                let (u, v, w) = (&lines[i], &lines[j], &lines[k]);
                let Ok(map) = p4ext::projection4(u, v, w) else {
                    continue;
                };
                for p in [p1(&field, 1, 0), p1(&field, 2, 5)] {
                    let image = map.apply(&p);
                    assert_eq!(image, image_by_elimination(u, v, w, &p));
                    let rows = vec![
                        u.point_at(&p).coords().to_vec(),
                        v.basis0().to_vec(),
                        v.basis1().to_vec(),
                        w.point_at(&image).coords().to_vec(),
                    ];
                    assert_eq!(linalg::rank(&rows), 3);
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 30);
}

/// Orbit by repeatedly applying every projection through a skew auxiliary,
/// each recomputed from the lines.
fn naive_orbit(c: &Configuration, line: usize, point: ProjPoint) -> HashSet<(usize, ProjPoint)> {
    let lines = c.lines();
    let mut maps = Vec::new();
    for i in 0..lines.len() {
        for j in 0..lines.len() {
            for k in 0..lines.len() {
                let skew = |a: usize, b: usize| {
                    let rows = [lines[a].basis0(), lines[a].basis1(), lines[b].basis0(), lines[b].basis1()]
                        .map(<[FieldElement]>::to_vec);
                    !linalg::determinant(c.field(), &rows).is_zero()
                };
                if i != k && j != i && j != k && skew(i, j) && skew(j, k) {
                    maps.push((i, k, projection_matrix(&lines[i], &lines[j], &lines[k]).unwrap()));
                }
            }
        }
    }
    let mut set = HashSet::from([(line, point)]);
    loop {
        let mut next = set.clone();
        for (l, p) in &set {
            for (i, k, m) in &maps {
                if i == l {
                    next.insert((*k, m.apply(p)));
                }
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

#[test]
fn orbits_match_naive_closure() {
    for (name, start, size) in [
        (BuiltinName::Klein, (1, 0), 60),
        (BuiltinName::PenroseHalf, (1, 0), 20),
        (BuiltinName::Penrose, (1, 1), 80),
    ] {
        let c = builtin(name).unwrap();
        let p = p1(c.field(), start.0, start.1);
        let expected = naive_orbit(&c, 0, p.clone());
        let orbit = enumerate_generators(&c).unwrap().orbit(0, &p, None).unwrap();
        let got: HashSet<(usize, ProjPoint)> = orbit.members.into_iter().collect();
        assert_eq!(got, expected, "{name}");
        assert_eq!(got.len(), size, "{name}");
    }
}

#[test]
fn components_match_union_find() {
    for name in [BuiltinName::Penrose, BuiltinName::D4, BuiltinName::D4Sub6, BuiltinName::Klein] {
        let c = builtin(name).unwrap();
        let lines = c.lines();
        let n = lines.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for i in 0..n {
            for k in 0..n {
                let through = (0..n).any(|j| {
                    j != i && j != k && i != k && lines_skew(&lines[i], &lines[j]) && lines_skew(&lines[j], &lines[k])
                });
                if through {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, k));
                    parent[a] = b;
                }
            }
        }
        let mut expected: BTreeSet<Vec<usize>> = BTreeSet::new();
        for r in 0..n {
            let comp: Vec<usize> = (0..n).filter(|&x| find(&mut parent, x) == find(&mut parent, r)).collect();
            expected.insert(comp);
        }
        let analysis = enumerate_generators(&c).unwrap();
        let got: BTreeSet<Vec<usize>> = analysis.components.iter().cloned().collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn order_bound_matches_totient_search() {
    let phi = |n: u32| (1..=n).filter(|k| gcd(*k, n) == 1).count() as u32;
    for d in 1..=6usize {
        let expected = (1..=500u32).filter(|&n| phi(n) <= 2 * d as u32).max().unwrap();
        assert_eq!(max_finite_order(d), expected, "degree {d}");
    }
    assert_eq!([1, 2, 4].map(max_finite_order), [6, 12, 30]);
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[test]
fn d4_labeling_survives_a_change_of_coordinates() {
    let c = builtin(BuiltinName::D4).unwrap();
    let field = c.field().clone();
    let m: Vec<Vec<FieldElement>> = [[2, 1, 0, -1], [0, 1, 3, 1], [1, 0, 1, 0], [-1, 2, 0, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| int(&field, x)).collect())
        .collect();
    assert_eq!(linalg::rank(&m), 4);
    let apply = |v: &[FieldElement]| -> Vec<FieldElement> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(int(&field, 0), |acc, (a, b)| acc + a * b))
            .collect()
    };
    let lines = c
        .lines()
        .iter()
        .map(|l| ParamLine::new(apply(l.basis0()), apply(l.basis1())).unwrap())
        .collect();
    let moved = Configuration::new("moved d4", field.clone(), lines, None).unwrap();
    let labeling = d4_model::find_labeling(&moved).unwrap();
    assert!(labeling.is_consistent(&d4_model::d4_points(&moved).unwrap()));
    let report = d4_model::check_agreement(&moved, &labeling).unwrap();
    assert!(report.holds());
    assert_eq!(report.morphisms, 480);
}

#[test]
fn l25_is_closed_under_sigma_and_tau() {
    let lines = p4ext::generate_l25();
    assert_eq!(lines.len(), 25);
    for l in &lines {
        for (a, b) in [(1, 0), (0, 1)] {
            let image = p4ext::transform(l, a, b);
            assert!(lines.iter().any(|m| m.same_subspace(&image)));
        }
    }
}

#[test]
fn hyperplanes_match_rank_enumeration() {
    let lines = p4ext::generate_l25();
    let stacked = |idx: &[usize]| -> Vec<Vec<FieldElement>> {
        idx.iter()
            .flat_map(|&i| [lines[i].basis0().to_vec(), lines[i].basis1().to_vec()])
            .collect()
    };
    let mut expected: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if linalg::rank(&stacked(&[i, j])) != 4 {
                continue;
            }
            let members: Vec<usize> = (0..lines.len())
                .filter(|&k| linalg::rank(&stacked(&[i, j, k])) == 4)
                .collect();
            expected.insert(members);
        }
    }
    let got: BTreeSet<Vec<usize>> = p4ext::hyperplanes(&lines).into_iter().collect();
    assert_eq!(got, expected);
    assert_eq!(got.len(), 30);

    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            for k in j + 1..lines.len() {
                let oracle = linalg::rank(&stacked(&[i, j, k])) <= 4;
                assert_eq!(p4ext::coplanar_triple(&lines[i], &lines[j], &lines[k]), oracle);
            }
        }
    }
}

#[test]
fn perturbed_klein_mark_breaks_invariance() {
    let c = builtin(BuiltinName::Klein).unwrap();
    let field = c.field().clone();
    let mut marked = c.marked().unwrap().to_vec();
    marked[0][0] = p1(&field, 2, 1);
    let bad = c.clone().with_marked(Some(marked)).unwrap();
    let report = enumerate_generators(&bad).unwrap().marked_invariance(&bad).unwrap();
    assert!(!report.holds);
    let ce = report.counterexample.expect("a failing morphism");
    assert!(ce.src == 0 || ce.dst == 0);
}
