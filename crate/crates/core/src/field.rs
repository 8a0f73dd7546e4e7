//! Exact arithmetic in number fields `K = Q[t]/(m(t))`.
//!
//! Elements are dense coefficient vectors of length `deg m` over arbitrary
//! precision rationals, always reduced modulo the monic minimal polynomial.
//! `Q` itself is the degree-one field with `m(t) = t`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The minimal polynomial describing a number field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor {
    min_poly: Vec<BigInt>,
}

/// Shared handle to a field; every element carries one.
pub type Field = Arc<FieldDescriptor>;

impl FieldDescriptor {
    /// Builds a field from the integer coefficients of a monic polynomial,
    /// lowest degree first. Irreducibility is not checked.
    pub fn new(min_poly: Vec<BigInt>) -> Result<Field> {
        if min_poly.len() < 2 {
            return Err(Error::InvalidMinPoly(
                "minimal polynomial must have degree at least 1".into(),
            ));
        }
        if !min_poly.last().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidMinPoly(
                "minimal polynomial must be monic".into(),
            ));
        }
        Ok(Arc::new(FieldDescriptor { min_poly }))
    }

    pub fn from_i64(min_poly: &[i64]) -> Result<Field> {
        Self::new(min_poly.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Q`, encoded as `Q[t]/(t)`.
    pub fn rationals() -> Field {
        Self::from_i64(&[0, 1]).expect("valid polynomial")
    }

    /// `Q[t]/(t^2 + t + 1)`, the cube roots of unity.
    pub fn eisenstein() -> Field {
        Self::from_i64(&[1, 1, 1]).expect("valid polynomial")
    }

    /// `Q[i]/(i^2 + 1)`.
    pub fn gaussian() -> Field {
        Self::from_i64(&[1, 0, 1]).expect("valid polynomial")
    }

    /// `Q[t]/(t^4 + t^3 + t^2 + t + 1)`, the fifth roots of unity.
    pub fn cyclotomic5() -> Field {
        Self::from_i64(&[1, 1, 1, 1, 1]).expect("valid polynomial")
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    /// A floating-point root of the minimal polynomial: the one with the
    /// largest imaginary part, ties broken by the largest real part.
    pub fn complex_root(&self) -> Complex64 {
        let coeffs: Vec<f64> = self.min_poly.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let n = self.degree();
        // Durand-Kerner iteration from the standard seeds (0.4 + 0.9i)^k
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
        for _ in 0..500 {
            let prev = roots.clone();
            for i in 0..n {
                let denom = (0..n)
                    .filter(|&j| j != i)
                    .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
            }
            if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
                break;
            }
        }
        roots
            .into_iter()
            .max_by(|a, b| {
                (a.im, a.re)
                    .partial_cmp(&(b.im, b.re))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("degree at least one")
    }
}

/// An element of `Q[t]/(m(t))`.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FieldElement {
    pub fn zero(field: &Field) -> Self {
        FieldElement {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Field) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Field, value: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(value.into()))
    }

    pub fn from_rational(field: &Field, value: BigRational) -> Self {
        Self::from_coeffs(field, vec![value])
    }

    /// The class of `t`.
    pub fn generator(field: &Field) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// Builds an element from polynomial coefficients of any length,
    /// reducing modulo the minimal polynomial.
    pub fn from_coeffs(field: &Field, coeffs: Vec<BigRational>) -> Self {
        let coeffs = reduce(field, coeffs);
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_int_coeffs(field: &Field, coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            field,
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients of `1, t, ..., t^(d-1)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Image under the embedding sending the generator to `root`.
    pub fn to_complex(&self, root: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * root + c.to_f64().unwrap_or(f64::NAN)
        })
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let product = crate::poly::mul(&self.coeffs, &other.coeffs);
        Ok(Self::from_coeffs(&self.field, product))
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(a(t), m(t))`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .field
            .min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (gcd, _, s) = crate::poly::ext_gcd(&modulus, &self.coeffs);
        if gcd.len() != 1 {
            return Err(Error::NotInvertible {
                gcd_degree: gcd.len() - 1,
            });
        }
        let scale = gcd[0].recip();
        let inverse = s.into_iter().map(|c| c * &scale).collect();
        Ok(Self::from_coeffs(&self.field, inverse))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

fn reduce(field: &FieldDescriptor, mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    let d = field.degree();
    while coeffs.len() > d {
        let top = coeffs.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        // t^k = -(m_0 + ... + m_{d-1} t^{d-1}) t^(k-d)
        let shift = coeffs.len() - d;
        for (i, m) in field.min_poly[..d].iter().enumerate() {
            if !m.is_zero() {
                coeffs[shift + i] -= &top * m;
            }
        }
    }
    coeffs.resize(d, BigRational::zero());
    coeffs
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !magnitude.is_one();
            if show_coeff {
                write!(f, "{}", magnitude)?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{}", k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
