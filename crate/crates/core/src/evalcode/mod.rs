//! Evaluation codes over the rational points: polynomials, generator
//! matrices, rank, weights and the distance oracles.

mod exhaustive;
mod extremal;
mod tilde;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::plane::{enumerate_points, PlaneParams, ProjPoint};
use crate::rewrite::{standard_monomials, WeightedMonomial};

pub use exhaustive::{exhaustive_min_distance, search_min_weight, support_min_distance, SearchOutcome};
pub use extremal::{
    divisor_witness, extremal_branch, extremal_polynomial, Extremal, ExtremalBranch,
};
pub use tilde::{line_points, tilde_code};

/// A homogeneous polynomial in `x0, x1, x2` over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    plane: PlaneParams,
    terms: BTreeMap<WeightedMonomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(plane: &PlaneParams) -> Self {
        Polynomial {
            plane: plane.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(plane: &PlaneParams, coeff: FieldElement, m: WeightedMonomial) -> Self {
        let mut p = Self::zero(plane);
        if !coeff.is_zero() {
            p.terms.insert(m, coeff);
        }
        p
    }

    /// Builds `sum c_i m_i`; all monomials must share one weighted degree.
    pub fn from_terms(
        plane: &PlaneParams,
        terms: impl IntoIterator<Item = (WeightedMonomial, FieldElement)>,
    ) -> Result<Self> {
        let mut p = Self::zero(plane);
        for (m, c) in terms {
            p = p.add(&Self::monomial(plane, c, m))?;
        }
        Ok(p)
    }

    pub fn plane(&self) -> &PlaneParams {
        &self.plane
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&WeightedMonomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weighted degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next().map(|m| m.degree(&self.plane))
    }

    pub fn leading_monomial(&self) -> Option<WeightedMonomial> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if let (Some(x), Some(y)) = (self.degree(), other.degree()) {
            if x != y {
                return Err(Error::DegreeMismatch {
                    expected: x,
                    found: y,
                });
            }
        }
        let f = self.plane.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let s = f.add(terms.get(m).copied().unwrap_or(FieldElement::ZERO), *c);
            if s.is_zero() {
                terms.remove(m);
            } else {
                terms.insert(*m, s);
            }
        }
        Ok(Polynomial {
            plane: self.plane.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        let f = self.plane.field();
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, x)| (*m, f.mul(*x, c))).collect()
        };
        Polynomial {
            plane: self.plane.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let minus_one = self.plane.field().neg(FieldElement::ONE);
        self.add(&other.scale(minus_one))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = self.plane.field();
        let mut terms: BTreeMap<WeightedMonomial, FieldElement> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = terms.entry(m1.mul(m2)).or_insert(FieldElement::ZERO);
                *e = f.add(*e, f.mul(*c1, *c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            plane: self.plane.clone(),
            terms,
        }
    }

    /// Parses the `c*x0^e0*x1^e1*x2^e2+...` text form.
    pub fn parse(plane: &PlaneParams, s: &str) -> Result<Polynomial> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero(plane));
        }
        let bad = || Error::Parse(s.to_string());
        let mut terms = Vec::new();
        for term in s.split('+') {
            let mut parts = term.trim().split('*');
            let c: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let mut e = [0u64; 3];
            for factor in parts {
                let (var, exp) = factor.split_once('^').ok_or_else(bad)?;
                let i = match var {
                    "x0" => 0,
                    "x1" => 1,
                    "x2" => 2,
                    _ => return Err(bad()),
                };
                e[i] += exp.parse::<u64>().map_err(|_| bad())?;
            }
            let c = plane.field().element(c)?;
            terms.push((WeightedMonomial::new(e[0], e[1], e[2]), c));
        }
        Self::from_terms(plane, terms)
    }
}

/// Terms in decreasing lex order as `c*x0^e0*x1^e1*x2^e2`, joined by `+`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}*x0^{}*x1^{}*x2^{}", c, m.e0, m.e1, m.e2)?;
        }
        Ok(())
    }
}

fn eval_monomial(field: &FieldSpec, m: &WeightedMonomial, x: &[FieldElement; 3]) -> FieldElement {
    field.mul(
        field.mul(field.pow(x[0], m.e0), field.pow(x[1], m.e1)),
        field.pow(x[2], m.e2),
    )
}

/// `f(P)` on the chosen representative of `P`.
pub fn evaluate(f: &Polynomial, p: &ProjPoint) -> FieldElement {
    let field = f.plane.field();
    let x = p.coords();
    f.terms.iter().fold(FieldElement::ZERO, |acc, (m, c)| {
        field.add(acc, field.mul(*c, eval_monomial(field, m, &x)))
    })
}

/// The evaluation vector of `f` at `points`.
pub fn evaluate_at(f: &Polynomial, points: &[ProjPoint]) -> Vec<FieldElement> {
    points.iter().map(|p| evaluate(f, p)).collect()
}

/// Number of rational points where `f` does not vanish.
pub fn codeword_weight(f: &Polynomial, plane: &PlaneParams) -> u64 {
    debug_assert_eq!(f.plane(), plane);
    enumerate_points(plane)
        .iter()
        .filter(|p| !evaluate(f, p).is_zero())
        .count() as u64
}

/// A dense row-major matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Self {
        let r = rows.len();
        let data: Vec<FieldElement> = rows
            .into_iter()
            .inspect(|row| assert_eq!(row.len(), cols, "ragged matrix"))
            .flatten()
            .collect();
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    /// The submatrix on the given columns.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    /// Indices of a maximal independent set of rows, chosen greedily top-down.
    pub fn independent_rows(&self, field: &FieldSpec) -> Vec<usize> {
        let mut basis: Vec<(usize, Vec<FieldElement>)> = Vec::new();
        let mut keep = Vec::new();
        for i in 0..self.rows {
            let mut v = self.row(i).to_vec();
            for (pivot, b) in &basis {
                let c = v[*pivot];
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = field.sub(*x, field.mul(c, *y));
                    }
                }
            }
            if let Some(pivot) = v.iter().position(|x| !x.is_zero()) {
                let inv = field.inv(v[pivot]).expect("pivot is nonzero");
                for x in v.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                basis.push((pivot, v));
                keep.push(i);
            }
        }
        keep
    }
}

/// Row rank by Gaussian elimination; pivots are the leftmost nonzero entries.
pub fn rank(field: &FieldSpec, m: &Matrix) -> usize {
    let mut a = m.clone();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for i in r + 1..a.rows {
            let f = field.mul(a.get(i, c), inv);
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = field.sub(a.get(i, j), field.mul(f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Some `x` with `x M = target`, or `None` if `target` is not in the row space.
pub fn solve_left(field: &FieldSpec, m: &Matrix, target: &[FieldElement]) -> Option<Vec<FieldElement>> {
    assert_eq!(target.len(), m.cols, "target length");
    let (k, n) = (m.rows, m.cols);
    // augmented transpose: n equations in k unknowns
    let mut a = Matrix::zeros(n, k + 1);
    for j in 0..n {
        for i in 0..k {
            a.set(j, i, m.get(i, j));
        }
        a.set(j, k, target[j]);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        for j in 0..=k {
            a.data.swap(p * (k + 1) + j, r * (k + 1) + j);
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in 0..=k {
            a.set(r, j, field.mul(a.get(r, j), inv));
        }
        for i in 0..n {
            let f = a.get(i, c);
            if i == r || f.is_zero() {
                continue;
            }
            for j in 0..=k {
                let v = field.sub(a.get(i, j), field.mul(f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !a.get(i, k).is_zero()) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a.get(i, k);
    }
    Some(x)
}

/// An evaluation code: rows are evaluations of degree-`d` monomials at `points`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    pub plane: PlaneParams,
    pub degree: u64,
    pub row_monomials: Vec<WeightedMonomial>,
    pub points: Vec<ProjPoint>,
    pub generator: Matrix,
}

impl LinearCode {
    /// Evaluates `monomials` at `points`.
    pub fn from_monomials(
        plane: &PlaneParams,
        degree: u64,
        monomials: Vec<WeightedMonomial>,
        points: Vec<ProjPoint>,
    ) -> Self {
        let field = plane.field();
        let rows = monomials
            .iter()
            .map(|m| points.iter().map(|p| eval_monomial(field, m, &p.coords())).collect())
            .collect();
        LinearCode {
            plane: plane.clone(),
            degree,
            generator: Matrix::from_rows(rows, points.len()),
            row_monomials: monomials,
            points,
        }
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn rank(&self) -> usize {
        rank(self.plane.field(), &self.generator)
    }

    /// The polynomial `sum m_i row_monomial_i`.
    pub fn message_polynomial(&self, message: &[FieldElement]) -> Polynomial {
        let terms = self
            .row_monomials
            .iter()
            .zip(message)
            .map(|(m, c)| (*m, *c));
        Polynomial::from_terms(&self.plane, terms).expect("row monomials share a degree")
    }

    /// Text form: a header `n k q a b d`, then one line of encodings per row.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} {} {} {} {} {}\n",
            self.length(),
            self.generator.rows(),
            self.plane.q(),
            self.plane.a(),
            self.plane.b(),
            self.degree
        );
        for i in 0..self.generator.rows() {
            let line: Vec<String> = self.generator.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// A generator matrix read back from its text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub rows: Vec<Vec<u32>>,
}

pub fn parse_matrix_text(s: &str) -> Result<MatrixFile> {
    let bad = |what: &str| Error::Parse(format!("matrix file: {what}"));
    let mut lines = s.lines();
    let header: Vec<u64> = lines
        .next()
        .ok_or_else(|| bad("empty"))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad("header")))
        .collect::<Result<_>>()?;
    let [n, k, q, a, b, d] = header[..] else {
        return Err(bad("header needs six fields"));
    };
    let rows: Vec<Vec<u32>> = lines
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse().map_err(|_| bad("entry")))
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    if rows.len() as u64 != k || rows.iter().any(|r| r.len() as u64 != n) {
        return Err(bad("shape does not match header"));
    }
    Ok(MatrixFile {
        n: n as usize,
        k: k as usize,
        q,
        a,
        b,
        d,
        rows,
    })
}

/// `C_d`: rows are the standard monomials of degree `d` in lex order,
/// columns the rational points in enumeration order.
pub fn build_code(plane: &PlaneParams, d: u64) -> Result<LinearCode> {
    let monomials = standard_monomials(plane, d)?;
    Ok(LinearCode::from_monomials(plane, d, monomials, enumerate_points(plane)))
}

/// Whether a distance value is proven exact or only a lower bound.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DistanceStatus {
    Exact,
    LowerBound,
}

impl DistanceStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceStatus::Exact => "exact",
            DistanceStatus::LowerBound => "lower_bound",
        }
    }
}

impl fmt::Display for DistanceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub value: u64,
    pub status: DistanceStatus,
    pub witness: Option<Polynomial>,
}

impl DistanceResult {
    pub fn exact(value: u64) -> Self {
        DistanceResult {
            value,
            status: DistanceStatus::Exact,
            witness: None,
        }
    }

    pub fn lower_bound(value: u64) -> Self {
        DistanceResult {
            value,
            status: DistanceStatus::LowerBound,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Option<Polynomial>) -> Self {
        self.witness = witness;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DistanceResult", 3)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("status", self.status.as_str())?;
        st.serialize_field("witness", &self.witness.as_ref().map(|w| w.to_string()))?;
        st.end()
    }
}
