//! Rational points of the weighted projective plane `P(1,a,b)` over `F_q`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gcd;
use crate::gf::{FieldElement, FieldSpec};

/// The plane `P(1,a,b)` over a field, with coprime weights `1 <= a <= b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneParams {
    field: FieldSpec,
    a: u64,
    b: u64,
}

impl PlaneParams {
    pub fn new(field: FieldSpec, a: u64, b: u64) -> Result<Self> {
        if a == 0 || a > b || gcd(a, b) != 1 {
            return Err(Error::InvalidWeights { a, b });
        }
        Ok(PlaneParams { field, a, b })
    }

    /// Convenience constructor from the field order.
    pub fn from_order(q: u64, a: u64, b: u64) -> Result<Self> {
        Self::new(FieldSpec::from_order(q)?, a, b)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// Number of rational points, `q^2 + q + 1`.
    pub fn n(&self) -> u64 {
        let q = self.q();
        q * q + q + 1
    }

    /// The image of a triple under the weighted scaling by `lambda`.
    pub fn scale(&self, x: [FieldElement; 3], lambda: FieldElement) -> [FieldElement; 3] {
        let f = &self.field;
        [
            f.mul(lambda, x[0]),
            f.mul(f.pow(lambda, self.a), x[1]),
            f.mul(f.pow(lambda, self.b), x[2]),
        ]
    }

    /// Canonical representative of the orbit of a nonzero triple.
    pub fn canonicalize(&self, x: [FieldElement; 3]) -> Result<ProjPoint> {
        if x.iter().all(|e| e.is_zero()) {
            return Err(Error::ZeroTriple);
        }
        if !x[0].is_zero() {
            let lambda = self.field.inv(x[0])?;
            return Ok(ProjPoint(self.scale(x, lambda)));
        }
        let best = self
            .field
            .units()
            .map(|l| self.scale(x, l))
            .min_by_key(|t| (t[1], t[2]))
            .expect("F_q^* is nonempty");
        Ok(ProjPoint(best))
    }
}

/// A representative triple of a point of `P(1,a,b)(F_q)`.
///
/// Points produced by [`enumerate_points`] are canonical: affine points have
/// `x0 = 1`, points at infinity are the smallest member of their orbit.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint(pub [FieldElement; 3]);

impl ProjPoint {
    pub fn coords(&self) -> [FieldElement; 3] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }
}

/// Serializes as `x0:x1:x2` with field-element encodings.
impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for ProjPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(':')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [x0, x1, x2] => Ok(ProjPoint([
                FieldElement::from_encoding_unchecked(*x0),
                FieldElement::from_encoding_unchecked(*x1),
                FieldElement::from_encoding_unchecked(*x2),
            ])),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// True iff `Q = (l x0, l^a x1, l^b x2)` for some unit `l`, by scanning `F_q^*`.
pub fn orbit_equivalent(p: &ProjPoint, q: &ProjPoint, plane: &PlaneParams) -> Result<bool> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroTriple);
    }
    Ok(plane.field().units().any(|l| plane.scale(p.0, l) == q.0))
}

/// The `q^2 + q + 1` canonical points in the fixed order: affine points
/// `[1:y1:y2]` (y1 major), then `[0:1:0]`, `[0:0:1]`, then one representative
/// per orbit of `(F_q^*)^2` on the line `x0 = 0`.
pub fn enumerate_points(plane: &PlaneParams) -> Vec<ProjPoint> {
    let f = plane.field();
    let (zero, one) = (f.zero(), f.one());
    let mut pts = Vec::with_capacity(plane.n() as usize);
    for y1 in f.elements() {
        for y2 in f.elements() {
            pts.push(ProjPoint([one, y1, y2]));
        }
    }
    pts.push(ProjPoint([zero, one, zero]));
    pts.push(ProjPoint([zero, zero, one]));
    pts.extend(line_orbit_representatives(plane));
    pts
}

/// Lexicographically smallest member of each orbit of `(y1, y2) in (F_q^*)^2`
/// under `(y1, y2) -> (l^a y1, l^b y2)`, in increasing order.
fn line_orbit_representatives(plane: &PlaneParams) -> Vec<ProjPoint> {
    let f = plane.field();
    let q = f.q() as usize;
    let mut seen = vec![false; q * q];
    let mut reps = Vec::with_capacity(q - 1);
    for y1 in f.units() {
        for y2 in f.units() {
            if seen[y1.encoding() as usize * q + y2.encoding() as usize] {
                continue;
            }
            let x = [f.zero(), y1, y2];
            for l in f.units() {
                let t = plane.scale(x, l);
                seen[t[1].encoding() as usize * q + t[2].encoding() as usize] = true;
            }
            reps.push(ProjPoint(x));
        }
    }
    reps
}
