//! Built-in line configurations, their marked parameters, derived point
//! sets, and the JSON document format.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElement};
use crate::groupoid::Configuration;
use crate::linalg;
use crate::projective::{ParamLine, PglMap, ProjPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinName {
    Quadric4,
    D4,
    D4Sub6,
    Penrose,
    PenroseHalf,
    Klein,
    P4_25,
}

impl BuiltinName {
    pub const ALL: [BuiltinName; 7] = [
        BuiltinName::Quadric4,
        BuiltinName::D4,
        BuiltinName::D4Sub6,
        BuiltinName::Penrose,
        BuiltinName::PenroseHalf,
        BuiltinName::Klein,
        BuiltinName::P4_25,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::Quadric4 => "quadric4",
            BuiltinName::D4 => "d4",
            BuiltinName::D4Sub6 => "d4sub6",
            BuiltinName::Penrose => "penrose",
            BuiltinName::PenroseHalf => "penrose_half",
            BuiltinName::Klein => "klein",
            BuiltinName::P4_25 => "p4_25",
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinName::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

pub fn builtin(name: BuiltinName) -> Result<Configuration> {
    match name {
        BuiltinName::Quadric4 => quadric4(),
        BuiltinName::D4 => d4(),
        BuiltinName::D4Sub6 => d4()?.restrict("d4sub6", &D4_SUB6),
        BuiltinName::Penrose => penrose(false),
        BuiltinName::PenroseHalf => penrose(false)?.restrict("penrose_half", &PENROSE_HALF),
        BuiltinName::Klein => klein(),
        BuiltinName::P4_25 => crate::p4ext::l25_configuration(),
    }
}

pub fn builtin_by_name(name: &str) -> Result<Configuration> {
    builtin(name.parse()?)
}

/// Lines of the six-line D4 subconfiguration.
pub const D4_SUB6: [usize; 6] = [1, 4, 8, 10, 14, 15];
/// Lines of the half-Penrose subconfiguration.
pub const PENROSE_HALF: [usize; 5] = [0, 2, 4, 6, 8];

/// Entries given as integer polynomials in the field generator.
type Poly = &'static [i64];

fn line(field: &Field, rows: [[Poly; 4]; 2]) -> ParamLine {
    let row = |r: &[Poly; 4]| r.iter().map(|c| FieldElement::from_int_coeffs(field, c)).collect();
    ParamLine::new(row(&rows[0]), row(&rows[1])).expect("built-in line has independent rows")
}

fn int_line(field: &Field, rows: [[i64; 4]; 2]) -> ParamLine {
    ParamLine::from_ints(field, &rows[0], &rows[1]).expect("built-in line has independent rows")
}

fn params(field: &Field, pairs: &[(Poly, Poly)]) -> Vec<ProjPoint> {
    pairs
        .iter()
        .map(|(a, b)| {
            ProjPoint::p1(
                FieldElement::from_int_coeffs(field, a),
                FieldElement::from_int_coeffs(field, b),
            )
            .expect("nonzero parameter")
        })
        .collect()
}

/// The marked parameter sets, each over the field it lives in.
pub struct MarkedParameterSets;

impl MarkedParameterSets {
    /// Penrose parameters on lines 0 to 7.
    pub fn x() -> Vec<ProjPoint> {
        params(
            &FieldDescriptor::eisenstein(),
            &[(&[1], &[0]), (&[0], &[1]), (&[0, 1], &[1]), (&[0, 0, -1], &[1])],
        )
    }

    /// Penrose parameters on lines 8 and 9.
    pub fn y() -> Vec<ProjPoint> {
        params(
            &FieldDescriptor::eisenstein(),
            &[(&[1], &[0]), (&[0], &[1]), (&[-1], &[1]), (&[0, 0, 1], &[1])],
        )
    }

    /// Quasi-Penrose parameters on lines 0 to 7.
    pub fn x_quasi() -> Vec<ProjPoint> {
        params(
            &FieldDescriptor::eisenstein(),
            &[(&[1], &[1]), (&[-1], &[1]), (&[1, 2], &[1]), (&[-1], &[1, 2])],
        )
    }

    /// Quasi-Penrose parameters on lines 8 and 9.
    pub fn y_quasi() -> Vec<ProjPoint> {
        params(
            &FieldDescriptor::eisenstein(),
            &[(&[0, 1], &[1]), (&[0, -1], &[1]), (&[1], &[-1, 1]), (&[3], &[-1, 1])],
        )
    }

    pub fn x_tilde() -> Vec<ProjPoint> {
        [Self::x(), Self::x_quasi()].concat()
    }

    pub fn y_tilde() -> Vec<ProjPoint> {
        [Self::y(), Self::y_quasi()].concat()
    }

    /// Klein parameters, over the Gaussian field.
    pub fn e() -> Vec<ProjPoint> {
        params(
            &FieldDescriptor::gaussian(),
            &[
                (&[1], &[0]),
                (&[0], &[1]),
                (&[1], &[1]),
                (&[-1], &[1]),
                (&[0, 1], &[1]),
                (&[0, -1], &[1]),
            ],
        )
    }
}

fn quadric4() -> Result<Configuration> {
    let q = FieldDescriptor::rationals();
    let lines = vec![
        int_line(&q, [[1, 0, 0, 0], [0, 1, 0, 0]]),
        int_line(&q, [[0, 0, 1, 0], [0, 0, 0, 1]]),
        int_line(&q, [[1, 0, 1, 0], [0, 1, 0, 1]]),
        int_line(&q, [[-1, 0, 1, 0], [0, -1, 0, 1]]),
    ];
    Configuration::new("quadric4", q, lines, None)
}

/// The sixteen D4 lines. Line 11 is taken in the block pattern of lines
/// 8 to 10, which keeps every line distinct.
pub fn d4_lines(field: &Field) -> Vec<ParamLine> {
    const FIRST: [[i64; 4]; 4] = [[0, 0, 0, 1], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]];
    const SECOND: [[i64; 4]; 4] = [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [1, 1, 1, 2]];
    FIRST
        .iter()
        .flat_map(|f| SECOND.iter().map(move |s| int_line(field, [*f, *s])))
        .collect()
}

fn d4() -> Result<Configuration> {
    let q = FieldDescriptor::rationals();
    let bare = Configuration::new("d4", q, d4_lines(&FieldDescriptor::rationals()), None)?;
    let marked = configuration_point_parameters(&bare, 4)?;
    bare.with_marked(Some(marked))
}

/// Per line, the parameters of the points of multiplicity at least
/// `multiplicity` that lie on it.
pub fn configuration_point_parameters(c: &Configuration, multiplicity: usize) -> Result<Vec<Vec<ProjPoint>>> {
    let points = multi_points(c, multiplicity)?;
    let mut marked = vec![Vec::new(); c.len()];
    for (p, incident) in &points {
        for &l in incident {
            let param = c.lines()[l]
                .parameter_of(p.coords())
                .expect("incident point lies on the line");
            marked[l].push(param);
        }
    }
    Ok(marked)
}

pub fn penrose_lines(field: &Field) -> Vec<ParamLine> {
    const T2: Poly = &[0, 0, 1];
    const MT2: Poly = &[0, 0, -1];
    const T: Poly = &[0, 1];
    const MT: Poly = &[0, -1];
    const O: Poly = &[0];
    const I: Poly = &[1];
    const MI: Poly = &[-1];
    let rows: [[[Poly; 4]; 2]; 10] = [
        [[I, O, MT2, MT2], [I, O, MT, MT]],
        [[O, I, MT2, T2], [O, I, MT, T]],
        [[I, O, MT2, MT], [O, I, MT, T2]],
        [[O, I, MT2, T], [I, O, MT, MT2]],
        [[O, I, MT, I], [I, O, MI, MT]],
        [[I, O, MT, MI], [O, I, MI, T]],
        [[I, O, MI, MT2], [O, I, MT2, I]],
        [[O, I, MI, T2], [I, O, MT2, MI]],
        [[I, I, T, O], [I, I, T2, O]],
        [[I, MI, O, T], [I, MI, O, T2]],
    ];
    rows.into_iter().map(|r| line(field, r)).collect()
}

/// Penrose lines marked with the Penrose parameters, or with the Penrose and
/// quasi-Penrose parameters together when `with_quasi` is set.
pub fn penrose(with_quasi: bool) -> Result<Configuration> {
    let k = FieldDescriptor::eisenstein();
    let (x, y) = if with_quasi {
        (MarkedParameterSets::x_tilde(), MarkedParameterSets::y_tilde())
    } else {
        (MarkedParameterSets::x(), MarkedParameterSets::y())
    };
    let marked = (0..10).map(|i| if i < 8 { x.clone() } else { y.clone() }).collect();
    let name = if with_quasi { "penrose_extended" } else { "penrose" };
    Configuration::new(name, k.clone(), penrose_lines(&k), Some(marked))
}

/// Penrose lines marked with the quasi-Penrose parameters only.
pub fn penrose_quasi() -> Result<Configuration> {
    let k = FieldDescriptor::eisenstein();
    let (x, y) = (MarkedParameterSets::x_quasi(), MarkedParameterSets::y_quasi());
    let marked = (0..10).map(|i| if i < 8 { x.clone() } else { y.clone() }).collect();
    Configuration::new("penrose_quasi", k.clone(), penrose_lines(&k), Some(marked))
}

pub fn klein_lines(field: &Field) -> Vec<ParamLine> {
    const O: Poly = &[0];
    const I: Poly = &[1];
    const MI: Poly = &[-1];
    const J: Poly = &[0, 1];
    const MJ: Poly = &[0, -1];
    let rows: [[[Poly; 4]; 2]; 10] = [
        [[O, O, I, O], [O, O, O, I]],
        [[O, I, O, MJ], [I, O, J, O]],
        [[O, I, I, O], [I, O, O, MI]],
        [[O, I, J, O], [I, O, O, J]],
        [[O, I, MI, O], [I, O, O, I]],
        [[O, I, MJ, O], [I, O, O, MJ]],
        [[O, I, O, I], [I, O, I, O]],
        [[I, O, O, O], [O, I, O, O]],
        [[O, I, O, J], [I, O, MJ, O]],
        [[O, I, O, MI], [I, O, MI, O]],
    ];
    rows.into_iter().map(|r| line(field, r)).collect()
}

fn klein() -> Result<Configuration> {
    let g = FieldDescriptor::gaussian();
    let e = MarkedParameterSets::e();
    Configuration::new("klein", g.clone(), klein_lines(&g), Some(vec![e; 10]))
}

/// Ambient points `a·basis0 + b·basis1` for every marked parameter, without
/// repeats, in line order.
pub fn generate_marked_points(c: &Configuration) -> Result<Vec<ProjPoint>> {
    let marked = c.marked().ok_or(Error::MissingMarked(0))?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, set) in c.lines().iter().zip(marked) {
        for param in set {
            let p = line.point_at(param);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// The common point of two lines, if they meet in exactly one point.
pub fn intersection(a: &ParamLine, b: &ParamLine) -> Option<ProjPoint> {
    let n = a.ambient_len();
    // columns a0, a1, b0, b1; kernel gives x a0 + y a1 = -(z b0 + w b1)
    let rows: Vec<Vec<FieldElement>> = (0..n)
        .map(|r| {
            vec![
                a.basis0()[r].clone(),
                a.basis1()[r].clone(),
                b.basis0()[r].clone(),
                b.basis1()[r].clone(),
            ]
        })
        .collect();
    let kernel = linalg::kernel(a.field(), &rows, 4);
    if kernel.len() != 1 {
        return None;
    }
    let k = &kernel[0];
    let param = ProjPoint::p1(k[0].clone(), k[1].clone()).ok()?;
    Some(a.point_at(&param))
}

/// Intersection points of the lines together with every line through each,
/// keeping those on at least `multiplicity` lines, in discovery order.
pub fn multi_points(c: &Configuration, multiplicity: usize) -> Result<Vec<(ProjPoint, Vec<usize>)>> {
    if c.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: c.len(),
        });
    }
    let lines = c.lines();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(p) = intersection(&lines[i], &lines[j]) else {
                continue;
            };
            if !seen.insert(p.clone()) {
                continue;
            }
            let incident: Vec<usize> = (0..lines.len())
                .filter(|&l| lines[l].contains(p.coords()))
                .collect();
            if incident.len() >= multiplicity {
                out.push((p, incident));
            }
        }
    }
    Ok(out)
}

/// The matrix carrying the Penrose points onto the quasi-Penrose points.
pub fn double_penrose_matrix() -> [[i64; 4]; 4] {
    [[0, 0, 1, 1], [0, 0, 1, -1], [-1, -1, 0, 0], [-1, 1, 0, 0]]
}

pub fn double_penrose_check() -> Result<bool> {
    double_penrose_check_with(double_penrose_matrix())
}

/// Whether `a` maps the 40 Penrose points onto the 40 quasi-Penrose points.
pub fn double_penrose_check_with(a: [[i64; 4]; 4]) -> Result<bool> {
    let k = FieldDescriptor::eisenstein();
    let p = generate_marked_points(&penrose(false)?)?;
    let q: HashSet<ProjPoint> = generate_marked_points(&penrose_quasi()?)?.into_iter().collect();
    let mut images = HashSet::new();
    for point in &p {
        let coords: Vec<FieldElement> = a
            .iter()
            .map(|row| {
                row.iter()
                    .zip(point.coords())
                    .fold(FieldElement::zero(&k), |acc, (&m, x)| acc + FieldElement::from_int(&k, m) * x)
            })
            .collect();
        match ProjPoint::new(coords) {
            Ok(image) => {
                images.insert(image);
            }
            Err(_) => return Ok(false),
        }
    }
    Ok(images == q)
}

// ---------------------------------------------------------------------------
// JSON documents

fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn rational_from_value(v: &Value, loc: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(Error::parse(loc, format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => rational_from_str(s)
            .ok_or_else(|| Error::parse(loc, format!("cannot read `{s}` as a rational number"))),
        other => Err(Error::parse(loc, format!("expected a number, found {}", kind(other)))),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn coeff_from_value(field: &Field, v: &Value, loc: &str) -> Result<FieldElement> {
    match v {
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .enumerate()
                .map(|(i, x)| rational_from_value(x, &format!("{loc}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(FieldElement::from_coeffs(field, coeffs))
        }
        scalar => Ok(FieldElement::from_rational(field, rational_from_value(scalar, loc)?)),
    }
}

fn rational_to_value(r: &BigRational) -> Value {
    if r.is_integer() {
        let n = r.to_integer();
        match i64::try_from(&n) {
            Ok(i) => json!(i),
            Err(_) => json!(n.to_string()),
        }
    } else {
        json!(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn coeff_to_value(x: &FieldElement) -> Value {
    match x.coeffs() {
        [] => json!(0),
        [c] if c.is_integer() => rational_to_value(c),
        cs => Value::Array(cs.iter().map(rational_to_value).collect()),
    }
}

/// The field as it appears in documents.
pub fn field_to_json(field: &Field) -> Value {
    let coeffs: Vec<Value> = field
        .min_poly()
        .iter()
        .map(|x| rational_to_value(&BigRational::from_integer(x.clone())))
        .collect();
    json!({ "min_poly": coeffs })
}

/// A field element as its full coefficient array, lowest degree first.
pub fn element_to_json(x: &FieldElement) -> Value {
    Value::Array(x.coeffs().iter().map(rational_to_value).collect())
}

/// Reads a coefficient array or a scalar, in the document conventions.
pub fn element_from_json(field: &Field, v: &Value) -> Result<FieldElement> {
    coeff_from_value(field, v, "$")
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(element_to_json).collect())
}

/// Rows of coefficient arrays.
pub fn matrix_to_json(m: &PglMap) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(element_to_json).collect()))
            .collect(),
    )
}

fn array<'a>(v: &'a Value, loc: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(loc, format!("expected an array, found {}", kind(v))))
}

fn get<'a>(obj: &'a Value, key: &str, loc: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::parse(loc, format!("missing key `{key}`")))
}

/// Reads a configuration document. Errors carry the JSON path of the
/// offending value, or the line and column for syntax errors.
pub fn parse_config(text: &str) -> Result<Configuration> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    if !doc.is_object() {
        return Err(Error::parse("$", "document must be an object"));
    }
    let name = match doc.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(Error::parse("$.name", format!("expected a string, found {}", kind(other)))),
        None => "unnamed".to_string(),
    };

    let field_v = get(&doc, "field", "$")?;
    let poly_v = array(get(field_v, "min_poly", "$.field")?, "$.field.min_poly")?;
    let min_poly = poly_v
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let loc = format!("$.field.min_poly[{i}]");
            let r = rational_from_value(c, &loc)?;
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::parse(loc, "minimal polynomial coefficients must be integers"))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let field = FieldDescriptor::new(min_poly).map_err(|e| Error::parse("$.field.min_poly", e.to_string()))?;

    let lines_v = array(get(&doc, "lines", "$")?, "$.lines")?;
    let mut lines = Vec::with_capacity(lines_v.len());
    for (i, lv) in lines_v.iter().enumerate() {
        let loc = format!("$.lines[{i}]");
        let basis = array(get(lv, "basis", &loc)?, &format!("{loc}.basis"))?;
        if basis.len() != 2 {
            return Err(Error::parse(format!("{loc}.basis"), format!("expected 2 rows, found {}", basis.len())));
        }
        let mut rows = Vec::with_capacity(2);
        for (r, row_v) in basis.iter().enumerate() {
            let rloc = format!("{loc}.basis[{r}]");
            let row = array(row_v, &rloc)?
                .iter()
                .enumerate()
                .map(|(k, c)| coeff_from_value(&field, c, &format!("{rloc}[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        let second = rows.pop().expect("two rows");
        let first = rows.pop().expect("two rows");
        let line = ParamLine::new(first, second).map_err(|e| Error::parse(&loc, e.to_string()))?;
        if let Some(prev) = lines.first().map(ParamLine::ambient_len) {
            if line.ambient_len() != prev {
                return Err(Error::parse(
                    &loc,
                    format!("expected {prev} coordinates, found {}", line.ambient_len()),
                ));
            }
        }
        if let Some(j) = lines.iter().position(|l: &ParamLine| l.same_subspace(&line)) {
            return Err(Error::parse(&loc, format!("lines {j} and {i} span the same subspace")));
        }
        lines.push(line);
    }

    let marked = match doc.get("marked") {
        None | Some(Value::Null) => None,
        Some(mv) => {
            let per_line = array(mv, "$.marked")?;
            if per_line.len() != lines.len() {
                return Err(Error::parse(
                    "$.marked",
                    format!("expected {} entries, one per line, found {}", lines.len(), per_line.len()),
                ));
            }
            let mut marked = Vec::with_capacity(per_line.len());
            for (i, set_v) in per_line.iter().enumerate() {
                let loc = format!("$.marked[{i}]");
                let mut set: Vec<ProjPoint> = Vec::new();
                for (k, pv) in array(set_v, &loc)?.iter().enumerate() {
                    let ploc = format!("{loc}[{k}]");
                    let pair = array(pv, &ploc)?;
                    if pair.len() != 2 {
                        return Err(Error::parse(&ploc, format!("expected a pair, found {} entries", pair.len())));
                    }
                    let a = coeff_from_value(&field, &pair[0], &format!("{ploc}[0]"))?;
                    let b = coeff_from_value(&field, &pair[1], &format!("{ploc}[1]"))?;
                    let p = ProjPoint::p1(a, b).map_err(|e| Error::parse(&ploc, e.to_string()))?;
                    if set.contains(&p) {
                        return Err(Error::parse(&ploc, format!("repeated marked point on line {i}")));
                    }
                    set.push(p);
                }
                marked.push(set);
            }
            Some(marked)
        }
    };
    Configuration::new(name, field, lines, marked).map_err(|e| Error::parse("$", e.to_string()))
}

/// Writes a configuration document that `parse_config` reads back unchanged.
pub fn emit_config(c: &Configuration) -> String {
    let lines: Vec<Value> = c
        .lines()
        .iter()
        .map(|l| {
            let row = |r: &[FieldElement]| Value::Array(r.iter().map(coeff_to_value).collect());
            json!({ "basis": [row(l.basis0()), row(l.basis1())] })
        })
        .collect();
    let mut doc = json!({
        "name": c.name,
        "field": field_to_json(c.field()),
        "lines": lines,
    });
    if let Some(marked) = c.marked() {
        let m: Vec<Value> = marked
            .iter()
            .map(|set| {
                Value::Array(
                    set.iter()
                        .map(|p| json!([coeff_to_value(&p.coords()[0]), coeff_to_value(&p.coords()[1])]))
                        .collect(),
                )
            })
            .collect();
        doc["marked"] = Value::Array(m);
    }
    serde_json::to_string_pretty(&doc).expect("json values serialize")
}

/// Reads a field expression such as `-t^2`, `2t+1`, `1/2`, `i`, or `3*t - 1`.
/// The generator may be written `t`, `i` or `w`.
pub fn parse_field_expr(field: &Field, text: &str) -> Result<FieldElement> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::parse(text, "empty expression"));
    }
    let mut total = FieldElement::zero(field);
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = BigRational::one();
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(Error::parse(text, format!("unexpected `{}`", bytes[pos] as char)));
        }
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coeff = if pos > start {
            rational_from_str(&s[start..pos])
                .ok_or_else(|| Error::parse(text, format!("bad number `{}`", &s[start..pos])))?
        } else {
            BigRational::one()
        };
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
        }
        let mut exp = 0u32;
        if pos < bytes.len() && matches!(bytes[pos], b't' | b'i' | b'w') {
            pos += 1;
            exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let e_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = s[e_start..pos]
                    .parse()
                    .map_err(|_| Error::parse(text, "missing exponent"))?;
            }
        } else if pos == start {
            return Err(Error::parse(text, "expected a number or the generator"));
        }
        let term = FieldElement::generator(field).pow(exp).scale(&(sign * coeff));
        total = total + term;
    }
    Ok(total)
}

/// Reads a projective point written as comma-separated field expressions.
pub fn parse_point(field: &Field, text: &str) -> Result<ProjPoint> {
    let coords = text
        .split(',')
        .map(|part| parse_field_expr(field, part))
        .collect::<Result<Vec<_>>>()?;
    ProjPoint::new(coords).map_err(|e| Error::parse(text, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_round_trip() {
        for b in BuiltinName::ALL {
            assert_eq!(b.as_str().parse::<BuiltinName>().unwrap(), b);
        }
        assert_eq!(
            "nope".parse::<BuiltinName>(),
            Err(Error::UnknownBuiltin("nope".into()))
        );
    }

    #[test]
    fn marked_sets_nest() {
        let x: HashSet<_> = MarkedParameterSets::x().into_iter().collect();
        let xt: HashSet<_> = MarkedParameterSets::x_tilde().into_iter().collect();
        let y: HashSet<_> = MarkedParameterSets::y().into_iter().collect();
        let yt: HashSet<_> = MarkedParameterSets::y_tilde().into_iter().collect();
        assert!(x.is_subset(&xt) && y.is_subset(&yt));
        assert_eq!((x.len(), y.len(), xt.len(), yt.len()), (4, 4, 8, 8));
        assert_eq!(MarkedParameterSets::e().len(), 6);
    }

    #[test]
    fn builtin_line_counts() {
        let klein = builtin(BuiltinName::Klein).unwrap();
        let g = klein.field().clone();
        assert!(klein.lines()[7].same_subspace(&ParamLine::from_ints(&g, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap()));
        let penrose = builtin(BuiltinName::Penrose).unwrap();
        assert_eq!(penrose.len(), 10);
        for (i, a) in penrose.lines().iter().enumerate() {
            for b in &penrose.lines()[i + 1..] {
                assert!(crate::projective::lines_skew(a, b));
            }
        }
        let d4 = builtin(BuiltinName::D4).unwrap();
        assert_eq!(d4.len(), 16);
        assert!(!crate::projective::lines_skew(&d4.lines()[0], &d4.lines()[1]));
    }

    #[test]
    fn penrose_point_from_parameter() {
        let penrose = builtin(BuiltinName::Penrose).unwrap();
        let k = penrose.field().clone();
        let t2 = FieldElement::from_int_coeffs(&k, &[0, 0, -1]);
        let p = ProjPoint::p1(t2, FieldElement::one(&k)).unwrap();
        assert_eq!(penrose.lines()[0].point_at(&p), ProjPoint::from_ints(&k, &[1, 0, 0, 0]).unwrap());
    }

    #[test]
    fn generated_point_counts() {
        assert_eq!(generate_marked_points(&builtin(BuiltinName::Klein).unwrap()).unwrap().len(), 60);
        assert_eq!(generate_marked_points(&builtin(BuiltinName::Penrose).unwrap()).unwrap().len(), 40);
    }

    #[test]
    fn multi_point_examples() {
        let d4 = builtin(BuiltinName::D4).unwrap();
        let pts = multi_points(&d4, 4).unwrap();
        assert_eq!(pts.len(), 12);
        assert!(pts.iter().all(|(_, inc)| inc.len() == 4));
        let mut per_line = [0; 16];
        for (_, inc) in &pts {
            for &l in inc {
                per_line[l] += 1;
            }
        }
        assert!(per_line.iter().all(|&n| n == 3));
        assert!(multi_points(&builtin(BuiltinName::Klein).unwrap(), 2).unwrap().is_empty());

        let q = FieldDescriptor::rationals();
        let a = ParamLine::from_ints(&q, &[1, 0, 0, 0], &[0, 1, 0, 0]).unwrap();
        let b = ParamLine::from_ints(&q, &[1, 0, 0, 0], &[0, 0, 1, 0]).unwrap();
        let c = Configuration::new("pair", q.clone(), vec![a, b], None).unwrap();
        let pts = multi_points(&c, 2).unwrap();
        assert_eq!(pts, vec![(ProjPoint::from_ints(&q, &[1, 0, 0, 0]).unwrap(), vec![0, 1])]);
    }

    #[test]
    fn d4_marks_three_points_per_line() {
        let d4 = builtin(BuiltinName::D4).unwrap();
        assert!(d4.marked().unwrap().iter().all(|m| m.len() == 3));
    }

    #[test]
    fn double_penrose() {
        assert!(double_penrose_check().unwrap());
        let id = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert!(!double_penrose_check_with(id).unwrap());
        let p: HashSet<_> = generate_marked_points(&penrose(false).unwrap()).unwrap().into_iter().collect();
        let q: HashSet<_> = generate_marked_points(&penrose_quasi().unwrap()).unwrap().into_iter().collect();
        assert_eq!((p.len(), q.len()), (40, 40));
        assert!(p.is_disjoint(&q));
    }

    #[test]
    fn minimal_document() {
        let text = r#"{"name": "two", "field": {"min_poly": [0, 1]},
            "lines": [{"basis": [[1,0,0,0],[0,1,0,0]]}, {"basis": [[0,0,1,0],[0,0,0,1]]}]}"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.field().degree(), 1);
        assert!(c.marked().is_none());
    }

    #[test]
    fn builtins_round_trip() {
        for b in BuiltinName::ALL {
            let c = builtin(b).unwrap();
            assert_eq!(parse_config(&emit_config(&c)).unwrap(), c, "{b}");
        }
    }

    #[test]
    fn repeated_line_names_both() {
        let text = r#"{"name": "dup", "field": {"min_poly": [0, 1]},
            "lines": [{"basis": [[1,0,0,0],[0,1,0,0]]}, {"basis": [[1,1,0,0],[0,1,0,0]]}]}"#;
        let err = parse_config(text).unwrap_err();
        let Error::Parse { location, message } = err else { panic!() };
        assert_eq!(location, "$.lines[1]");
        assert!(message.contains("lines 0 and 1"));
    }

    #[test]
    fn document_errors_have_locations() {
        let cases = [
            (r#"{"name": "x", "field": {"min_poly": [1, 2]}, "lines": []}"#, "$.field.min_poly"),
            (r#"{"name": "x", "field": {"min_poly": [0, 1]}, "lines": [{"basis": [[1,0,0,0],[2,0,0,0]]}]}"#, "$.lines[0]"),
            (r#"{"name": "x", "field": {"min_poly": [0, 1]}, "lines": [{"basis": [[1,0,"z",0],[0,1,0,0]]}]}"#, "$.lines[0].basis[0][2]"),
        ];
        for (text, loc) in cases {
            match parse_config(text) {
                Err(Error::Parse { location, .. }) => assert_eq!(location, loc),
                other => panic!("{other:?}"),
            }
        }
        assert!(matches!(parse_config("{\n  \"name\": "), Err(Error::Parse { location, .. }) if location.starts_with("line 2")));
    }

    #[test]
    fn field_expressions() {
        let k = FieldDescriptor::eisenstein();
        let e = |s: &str| parse_field_expr(&k, s).unwrap();
        assert_eq!(e("-t^2"), FieldElement::from_int_coeffs(&k, &[1, 1]));
        assert_eq!(e("2t+1"), FieldElement::from_int_coeffs(&k, &[1, 2]));
        assert_eq!(e("3*t - 1"), FieldElement::from_int_coeffs(&k, &[-1, 3]));
        assert_eq!(
            e("1/2"),
            FieldElement::from_rational(&k, BigRational::new(1.into(), 2.into()))
        );
        assert!(parse_field_expr(&k, "2x").is_err());
        assert!(parse_field_expr(&k, "").is_err());
        assert_eq!(
            parse_point(&k, "1,0").unwrap(),
            ProjPoint::from_ints(&k, &[1, 0]).unwrap()
        );
    }
}
