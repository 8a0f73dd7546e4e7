//! Projective points, parametrized lines, and `PGL(2, K)`.
//!
//! A [`ParamLine`] keeps its two basis vectors exactly as given: the basis *is*
//! the parametrization `(a, b) -> a*u0 + b*u1`, so rescaling a basis vector
//! would conjugate every projection matrix touching the line.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg;

/// Scales a nonzero vector so its first nonzero coordinate is 1.
fn normalize(coords: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
    let lead = coords.iter().find(|c| !c.is_zero())?;
    if lead.is_one() {
        return Some(coords);
    }
    let inv = lead.inv().expect("nonzero");
    Some(coords.iter().map(|c| c * &inv).collect())
}

/// A point of `P^n` in canonical form (first nonzero coordinate is 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<FieldElement>,
}

impl ProjPoint {
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        normalize(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or(Error::ZeroVector)
    }

    /// The point `(a : b)` of `P^1`.
    pub fn p1(a: FieldElement, b: FieldElement) -> Result<Self> {
        a.try_add(&b)?;
        Self::new(vec![a, b])
    }

    pub fn from_ints(field: &Field, coords: &[i64]) -> Result<Self> {
        Self::new(
            coords
                .iter()
                .map(|&c| FieldElement::from_int(field, c))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        self.coords[0].field()
    }

    /// Number of homogeneous coordinates (`n + 1` for `P^n`).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// A line given by an ordered pair of independent basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamLine {
    basis: [Vec<FieldElement>; 2],
}

impl ParamLine {
    pub fn new(basis0: Vec<FieldElement>, basis1: Vec<FieldElement>) -> Result<Self> {
        if basis0.len() != basis1.len() {
            return Err(Error::DimensionMismatch {
                expected: basis0.len(),
                found: basis1.len(),
            });
        }
        if basis0.len() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: basis0.len(),
            });
        }
        for c in basis0.iter().chain(&basis1) {
            basis0[0].try_add(c)?;
        }
        if linalg::rank(&[basis0.clone(), basis1.clone()]) != 2 {
            return Err(Error::DependentBasis);
        }
        Ok(ParamLine {
            basis: [basis0, basis1],
        })
    }

    pub fn from_ints(field: &Field, basis0: &[i64], basis1: &[i64]) -> Result<Self> {
        let lift = |v: &[i64]| v.iter().map(|&c| FieldElement::from_int(field, c)).collect();
        Self::new(lift(basis0), lift(basis1))
    }

    pub fn basis0(&self) -> &[FieldElement] {
        &self.basis[0]
    }

    pub fn basis1(&self) -> &[FieldElement] {
        &self.basis[1]
    }

    pub fn basis(&self) -> &[Vec<FieldElement>; 2] {
        &self.basis
    }

    pub fn field(&self) -> &Field {
        self.basis[0][0].field()
    }

    /// Number of homogeneous coordinates of the ambient space.
    pub fn ambient_len(&self) -> usize {
        self.basis[0].len()
    }

    /// The point `a*u0 + b*u1` for the parameter `(a : b)`.
    pub fn point_at(&self, param: &ProjPoint) -> ProjPoint {
        let (a, b) = (&param.coords[0], &param.coords[1]);
        let coords = self.basis[0]
            .iter()
            .zip(&self.basis[1])
            .map(|(u0, u1)| a * u0 + b * u1)
            .collect();
        ProjPoint::new(coords).expect("independent basis")
    }

    /// The parameter of `p` if `p` lies on the line.
    pub fn parameter_of(&self, p: &[FieldElement]) -> Option<ProjPoint> {
        if p.len() != self.ambient_len() {
            return None;
        }
        // columns u0, u1, p; a kernel vector (x0, x1, x2) gives p ~ x0*u0 + x1*u1
        let rows: Vec<Vec<FieldElement>> = (0..p.len())
            .map(|i| vec![self.basis[0][i].clone(), self.basis[1][i].clone(), p[i].clone()])
            .collect();
        let kernel = linalg::kernel(self.field(), &rows, 3);
        match kernel.as_slice() {
            [v] if !v[2].is_zero() => ProjPoint::p1(v[0].clone(), v[1].clone()).ok(),
            _ => None,
        }
    }

    pub fn contains(&self, p: &[FieldElement]) -> bool {
        p.len() == self.ambient_len()
            && linalg::rank(&[self.basis[0].clone(), self.basis[1].clone(), p.to_vec()]) == 2
    }

    /// Reduced echelon basis; equal for two lines iff they are the same subspace.
    pub fn subspace_key(&self) -> Vec<Vec<FieldElement>> {
        linalg::rref(&self.basis).0
    }

    pub fn same_subspace(&self, other: &ParamLine) -> bool {
        self.ambient_len() == other.ambient_len()
            && linalg::rank(&[
                self.basis[0].clone(),
                self.basis[1].clone(),
                other.basis[0].clone(),
                other.basis[1].clone(),
            ]) == 2
    }
}

/// `p ∧ q ∧ r ∧ s`: the determinant of the 4x4 matrix with these rows.
pub fn wedge4(
    p: &[FieldElement],
    q: &[FieldElement],
    r: &[FieldElement],
    s: &[FieldElement],
) -> Result<FieldElement> {
    for v in [p, q, r, s] {
        if v.len() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                found: v.len(),
            });
        }
    }
    // Laplace expansion along the first two rows
    let minor = |x: &[FieldElement], y: &[FieldElement], i: usize, j: usize| &x[i] * &y[j] - &x[j] * &y[i];
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let mut det = FieldElement::zero(p[0].field());
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let (a, b) = PAIRS[5 - k];
        let term = minor(p, q, i, j) * minor(r, s, a, b);
        // sign of the permutation (i, j, a, b)
        if k == 1 || k == 4 {
            det = det - term;
        } else {
            det = det + term;
        }
    }
    Ok(det)
}

/// Whether two lines are disjoint, i.e. their four basis vectors are independent.
pub fn lines_skew(a: &ParamLine, b: &ParamLine) -> bool {
    if a.ambient_len() != b.ambient_len() {
        return false;
    }
    if a.ambient_len() == 4 {
        return !wedge4(a.basis0(), a.basis1(), b.basis0(), b.basis1())
            .expect("four coordinates")
            .is_zero();
    }
    linalg::rank(&[
        a.basis[0].clone(),
        a.basis[1].clone(),
        b.basis[0].clone(),
        b.basis[1].clone(),
    ]) == 4
}

/// An element of `PGL(2, K)`, scaled so the first nonzero entry in
/// row-major order is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PglMap {
    entries: [[FieldElement; 2]; 2],
}

impl PglMap {
    pub fn canonicalize(entries: [[FieldElement; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = &entries;
        for x in [b, c, d] {
            a.try_add(x)?;
        }
        if (a * d - b * c).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let [[a, b], [c, d]] = entries;
        let flat = normalize(vec![a, b, c, d]).expect("nonsingular");
        let mut it = flat.into_iter();
        let mut next = || it.next().expect("four entries");
        Ok(PglMap {
            entries: [[next(), next()], [next(), next()]],
        })
    }

    pub fn from_ints(field: &Field, m: [[i64; 2]; 2]) -> Result<Self> {
        let e = |x: i64| FieldElement::from_int(field, x);
        Self::canonicalize([[e(m[0][0]), e(m[0][1])], [e(m[1][0]), e(m[1][1])]])
    }

    pub fn identity(field: &Field) -> Self {
        PglMap {
            entries: [
                [FieldElement::one(field), FieldElement::zero(field)],
                [FieldElement::zero(field), FieldElement::one(field)],
            ],
        }
    }

    pub fn entries(&self) -> &[[FieldElement; 2]; 2] {
        &self.entries
    }

    pub fn field(&self) -> &Field {
        self.entries[0][0].field()
    }

    pub fn det(&self) -> FieldElement {
        let [[a, b], [c, d]] = &self.entries;
        a * d - b * c
    }

    pub fn trace(&self) -> FieldElement {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn is_identity(&self) -> bool {
        let [[a, b], [c, d]] = &self.entries;
        a.is_one() && b.is_zero() && c.is_zero() && d.is_one()
    }

    /// `self ∘ other`, i.e. the matrix product `self * other`.
    pub fn compose(&self, other: &PglMap) -> PglMap {
        let (x, y) = (&self.entries, &other.entries);
        let entry = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        PglMap::canonicalize([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
            .expect("product of invertible maps")
    }

    pub fn inverse(&self) -> PglMap {
        let [[a, b], [c, d]] = &self.entries;
        PglMap::canonicalize([[d.clone(), -b], [-c, a.clone()]]).expect("invertible")
    }

    pub fn pow(&self, n: u32) -> PglMap {
        (0..n).fold(PglMap::identity(self.field()), |acc, _| acc.compose(self))
    }

    /// `M * p` for a point of `P^1` viewed as a column vector.
    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [[a, b], [c, d]] = &self.entries;
        let (x, y) = (&p.coords[0], &p.coords[1]);
        ProjPoint::new(vec![a * x + b * y, c * x + d * y]).expect("invertible map")
    }

    /// Parabolic: non-scalar with `trace^2 = 4 det`.
    pub fn is_parabolic(&self) -> bool {
        let four = FieldElement::from_int(self.field(), 4);
        let tr = self.trace();
        !self.is_identity() && (&tr * &tr) == four * self.det()
    }
}

impl fmt::Display for PglMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{}, {}], [{}, {}]]", a, b, c, d)
    }
}

/// A morphism of a line groupoid: a map from line `src` to line `dst`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    pub map: PglMap,
}

impl Morphism {
    pub fn identity(line: usize, field: &Field) -> Self {
        Morphism {
            src: line,
            dst: line,
            map: PglMap::identity(field),
        }
    }

    pub fn inverse(&self) -> Morphism {
        Morphism {
            src: self.dst,
            dst: self.src,
            map: self.map.inverse(),
        }
    }
}

/// `second ∘ first`.
pub fn compose(second: &Morphism, first: &Morphism) -> Result<Morphism> {
    if first.dst != second.src {
        return Err(Error::EndpointMismatch {
            first_dst: first.dst,
            second_src: second.src,
        });
    }
    Ok(Morphism {
        src: first.src,
        dst: second.dst,
        map: second.map.compose(&first.map),
    })
}

/// The projection `π(U, V, W): U -> W` through the auxiliary line `V`, as the
/// matrix sending parameters on `U` to parameters on `W`.
pub fn projection_matrix(u: &ParamLine, v: &ParamLine, w: &ParamLine) -> Result<PglMap> {
    let wedge = |x: &[FieldElement], y: &[FieldElement]| wedge4(x, v.basis0(), v.basis1(), y);
    let m = [
        [-wedge(u.basis0(), w.basis1())?, -wedge(u.basis1(), w.basis1())?],
        [wedge(u.basis0(), w.basis0())?, wedge(u.basis1(), w.basis0())?],
    ];
    match PglMap::canonicalize(m) {
        Ok(map) => Ok(map),
        Err(Error::SingularMatrix) => Err(if !lines_skew(u, v) {
            Error::LinesMeet("domain and auxiliary lines intersect")
        } else if !lines_skew(v, w) {
            Error::LinesMeet("auxiliary and codomain lines intersect")
        } else {
            Error::SingularMatrix
        }),
        Err(e) => Err(e),
    }
}

fn det2(p: &ProjPoint, q: &ProjPoint) -> FieldElement {
    &p.coords[0] * &q.coords[1] - &p.coords[1] * &q.coords[0]
}

/// The map sending `(1:0), (0:1), (1:1)` to `p, q, r`.
fn standard_frame(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<[[FieldElement; 2]; 2]> {
    let d = det2(p, q);
    if d.is_zero() || det2(p, r).is_zero() || det2(q, r).is_zero() {
        return Err(Error::RepeatedPoint);
    }
    let inv = d.inv()?;
    let lambda = (&r.coords[0] * &q.coords[1] - &r.coords[1] * &q.coords[0]) * &inv;
    let mu = (&p.coords[0] * &r.coords[1] - &p.coords[1] * &r.coords[0]) * &inv;
    Ok([
        [&lambda * &p.coords[0], &mu * &q.coords[0]],
        [&lambda * &p.coords[1], &mu * &q.coords[1]],
    ])
}

/// The unique automorphism of `P^1` sending `src[i]` to `dst[i]`.
pub fn mobius_from_triples(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<PglMap> {
    for p in src.iter().chain(dst) {
        if p.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.len(),
            });
        }
    }
    let from = PglMap::canonicalize(standard_frame(&src[0], &src[1], &src[2])?)?;
    let to = PglMap::canonicalize(standard_frame(&dst[0], &dst[1], &dst[2])?)?;
    Ok(to.compose(&from.inverse()))
}

/// Order of an element of `PGL(2, K)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ElementOrder {
    Finite(u32),
    Infinite,
}

fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Largest `n` with `φ(n) <= 2d`: the largest possible finite order of an
/// element of `PGL(2, K)` for `[K : Q] = d`.
pub fn max_finite_order(degree: usize) -> u32 {
    let bound = 2 * degree as u32;
    // φ(n) >= sqrt(n/2), so n <= 2 * bound^2 covers every candidate
    (1..=2 * bound * bound + 6)
        .filter(|&n| euler_phi(n) <= bound)
        .max()
        .unwrap_or(1)
}

/// Smallest `n` with `M^n` scalar, searched up to [`max_finite_order`].
pub fn element_order(m: &PglMap) -> ElementOrder {
    if m.is_identity() {
        return ElementOrder::Finite(1);
    }
    // M^n = a_n M + b_n I by Cayley-Hamilton; M^n is scalar iff a_n = 0
    let (tr, det) = (m.trace(), m.det());
    let mut a = FieldElement::one(m.field());
    let mut b = FieldElement::zero(m.field());
    for n in 2..=max_finite_order(m.field().degree()) {
        (a, b) = (&tr * &a + &b, -(&det * &a));
        if a.is_zero() {
            return ElementOrder::Finite(n);
        }
    }
    ElementOrder::Infinite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn fe(field: &Field, c: &[i64]) -> FieldElement {
        FieldElement::from_int_coeffs(field, c)
    }

    fn map(field: &Field, m: [[&[i64]; 2]; 2]) -> PglMap {
        PglMap::canonicalize([
            [fe(field, m[0][0]), fe(field, m[0][1])],
            [fe(field, m[1][0]), fe(field, m[1][1])],
        ])
        .unwrap()
    }

    fn pt(field: &Field, a: &[i64], b: &[i64]) -> ProjPoint {
        ProjPoint::p1(fe(field, a), fe(field, b)).unwrap()
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(m: &[Vec<FieldElement>]) -> FieldElement {
        let field = m[0][0].field().clone();
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = FieldElement::zero(&field);
        for j in 0..m.len() {
            let minor: Vec<Vec<FieldElement>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn wedge_examples() {
        let q = FieldDescriptor::rationals();
        let e = |v: &[i64]| v.iter().map(|&x| FieldElement::from_int(&q, x)).collect::<Vec<_>>();
        let (e1, e2, e3, e4) = (e(&[1, 0, 0, 0]), e(&[0, 1, 0, 0]), e(&[0, 0, 1, 0]), e(&[0, 0, 0, 1]));
        assert!(wedge4(&e1, &e2, &e3, &e4).unwrap().is_one());
        assert!(wedge4(&e1, &e1, &e3, &e4).unwrap().is_zero());
        let s = e(&[0, 1, 0, 1]);
        let expected = cofactor_det(&[e1.clone(), e3.clone(), e4.clone(), s.clone()]);
        assert_eq!(expected, FieldElement::one(&q));
        assert_eq!(wedge4(&e1, &e3, &e4, &s).unwrap(), expected);
        assert!(matches!(
            wedge4(&e1[..3], &e2, &e3, &e4),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn canonical_scaling() {
        let k = FieldDescriptor::eisenstein();
        assert!(map(&k, [[&[2], &[0]], [&[0], &[2]]]).is_identity());
        let m = map(&k, [[&[0], &[-1]], [&[0, 1], &[0]]]);
        assert_eq!(m, map(&k, [[&[0], &[1]], [&[0, -1], &[0]]]));
        assert_eq!(m.entries()[0][1], FieldElement::one(&k));
        assert_eq!(
            PglMap::from_ints(&k, [[1, 2], [2, 4]]),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn apply_examples() {
        let k = FieldDescriptor::eisenstein();
        let f = map(&k, [[&[-1], &[1, 2]], [&[1], &[1]]]);
        assert_eq!(f.apply(&pt(&k, &[1], &[0])), pt(&k, &[-1], &[1]));
        let p = pt(&k, &[0, 3], &[5]);
        assert_eq!(PglMap::identity(&k).apply(&p), p);
        // [[0, t^2], [1, 0]] (-t^2, 1) = (t^2, -t^2) ~ (1, -1)
        let g = map(&k, [[&[0], &[-1, -1]], [&[1], &[0]]]);
        let image = g.apply(&pt(&k, &[1, 1], &[1]));
        assert_eq!(image, pt(&k, &[1], &[-1]));
        assert_eq!(image, pt(&k, &[-1], &[1]));
    }

    #[test]
    fn mobius_examples() {
        let k = FieldDescriptor::eisenstein();
        let frame = [pt(&k, &[1], &[0]), pt(&k, &[0], &[1]), pt(&k, &[1], &[1])];
        assert!(mobius_from_triples(&frame, &frame).unwrap().is_identity());
        let swapped = [frame[1].clone(), frame[0].clone(), frame[2].clone()];
        assert_eq!(
            mobius_from_triples(&frame, &swapped).unwrap(),
            map(&k, [[&[0], &[1]], [&[1], &[0]]])
        );
        let src = [frame[0].clone(), frame[1].clone(), pt(&k, &[0, 1], &[1])];
        let dst = [frame[1].clone(), frame[0].clone(), pt(&k, &[0, 1], &[1])];
        // [[0, t^2], [1, 0]] with t^2 = -t - 1
        assert_eq!(
            mobius_from_triples(&src, &dst).unwrap(),
            map(&k, [[&[0], &[-1, -1]], [&[1], &[0]]])
        );
        let repeated = [frame[0].clone(), frame[0].clone(), frame[2].clone()];
        assert_eq!(mobius_from_triples(&repeated, &frame), Err(Error::RepeatedPoint));
    }

    #[test]
    fn order_bounds() {
        assert_eq!(max_finite_order(1), 6);
        assert_eq!(max_finite_order(2), 12);
        assert_eq!(max_finite_order(4), 30);
    }

    #[test]
    fn element_orders() {
        let k = FieldDescriptor::eisenstein();
        assert_eq!(element_order(&PglMap::identity(&k)), ElementOrder::Finite(1));
        let g = map(&k, [[&[0, 1], &[1]], [&[0], &[-1, -1]]]);
        assert_eq!(element_order(&g), ElementOrder::Finite(3));
        let parabolic = PglMap::from_ints(&k, [[1, 1], [0, 1]]).unwrap();
        assert_eq!(element_order(&parabolic), ElementOrder::Infinite);
        assert!(parabolic.is_parabolic());
        let q = FieldDescriptor::rationals();
        // order n in PGL(2) iff trace^2/det = 2 + 2cos(2π/n)
        assert_eq!(
            element_order(&PglMap::from_ints(&q, [[1, -1], [1, 0]]).unwrap()),
            ElementOrder::Finite(3)
        );
        assert_eq!(
            element_order(&PglMap::from_ints(&q, [[1, -1], [1, 1]]).unwrap()),
            ElementOrder::Finite(4)
        );
        assert_eq!(
            element_order(&PglMap::from_ints(&q, [[3, -3], [1, 0]]).unwrap()),
            ElementOrder::Finite(6)
        );
    }

    #[test]
    fn skewness_and_projection_errors() {
        let q = FieldDescriptor::rationals();
        let a = ParamLine::from_ints(&q, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let b = ParamLine::from_ints(&q, &[0, 0, 1, 0], &[0, 0, 0, 1]).unwrap();
        let meets_a = ParamLine::from_ints(&q, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
        assert!(lines_skew(&a, &b));
        assert!(!lines_skew(&a, &meets_a));
        assert_eq!(
            projection_matrix(&a, &meets_a, &b),
            Err(Error::LinesMeet("domain and auxiliary lines intersect"))
        );
        let meets_only_a = ParamLine::from_ints(&q, &[1, 0, 0, 0], &[0, 1, 1, 0]).unwrap();
        assert!(lines_skew(&b, &meets_only_a));
        assert_eq!(
            projection_matrix(&b, &meets_only_a, &a),
            Err(Error::LinesMeet("auxiliary and codomain lines intersect"))
        );
        // U = W collapses to a scalar matrix
        assert!(projection_matrix(&a, &b, &a).unwrap().is_identity());
    }

    #[test]
    fn parameters_round_trip() {
        let k = FieldDescriptor::eisenstein();
        let line = ParamLine::new(
            vec![fe(&k, &[1]), fe(&k, &[0]), fe(&k, &[1, 1]), fe(&k, &[1, 1])],
            vec![fe(&k, &[1]), fe(&k, &[0]), fe(&k, &[0, -1]), fe(&k, &[0, -1])],
        )
        .unwrap();
        // (-t^2, 1) gives (1, 0, 0, 0)
        let p = line.point_at(&pt(&k, &[1, 1], &[1]));
        assert_eq!(p, ProjPoint::from_ints(&k, &[1, 0, 0, 0]).unwrap());
        assert_eq!(line.parameter_of(p.coords()), Some(pt(&k, &[1, 1], &[1])));
        assert!(line.contains(p.coords()));
        assert_eq!(line.parameter_of(&[fe(&k, &[0]), fe(&k, &[1]), fe(&k, &[0]), fe(&k, &[0])]), None);
    }

    #[test]
    fn compose_checks_endpoints() {
        let k = FieldDescriptor::eisenstein();
        let f = Morphism::identity(0, &k);
        let g = Morphism {
            src: 1,
            dst: 2,
            map: PglMap::identity(&k),
        };
        assert_eq!(
            compose(&g, &f),
            Err(Error::EndpointMismatch { first_dst: 0, second_src: 1 })
        );
        let h = Morphism {
            src: 0,
            dst: 0,
            map: map(&k, [[&[0, 1], &[1]], [&[0], &[-1, -1]]]),
        };
        assert_eq!(compose(&h, &f).unwrap(), h);
    }
}
