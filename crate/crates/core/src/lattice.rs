//! Lattice-polygon combinatorics of `P_d = {(x, y) >= 0 : a x + b y <= d}`.
//!
//! A lattice point `(a1, a2)` stands for the monomial
//! `x0^(d - a a1 - b a2) x1^a1 x2^a2` of weighted degree `d`. Points are
//! ordered like their monomials under lex with `x2 > x1 > x0`: compare `a2`
//! first, then `a1`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check_degree;
use crate::error::Result;
use crate::plane::PlaneParams;

/// Exponent pair `(a1, a2)` of `x1^a1 x2^a2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[u64; 2]", from = "[u64; 2]")]
pub struct LatticePoint {
    pub a1: u64,
    pub a2: u64,
}

impl LatticePoint {
    pub const fn new(a1: u64, a2: u64) -> Self {
        LatticePoint { a1, a2 }
    }

    /// Weighted degree `a a1 + b a2` of the `x1, x2` part.
    pub fn weight(&self, a: u64, b: u64) -> u64 {
        a * self.a1 + b * self.a2
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a2, self.a1).cmp(&(other.a2, other.a1))
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<LatticePoint> for [u64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.a1, p.a2]
    }
}

impl From<[u64; 2]> for LatticePoint {
    fn from(v: [u64; 2]) -> Self {
        LatticePoint::new(v[0], v[1])
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a1, self.a2)
    }
}

/// All lattice points of `P_d`, sorted.
pub fn polygon_points(plane: &PlaneParams, d: u64) -> Vec<LatticePoint> {
    let (a, b) = (plane.a(), plane.b());
    let mut pts: Vec<LatticePoint> = (0..=d / b)
        .flat_map(|a2| (0..=(d - b * a2) / a).map(move |a1| LatticePoint::new(a1, a2)))
        .collect();
    pts.sort();
    pts
}

/// Number of `(m_a, m_b) in N^2` with `d = m_a a + m_b b`.
pub fn denumerant(d: u64, a: u64, b: u64) -> u64 {
    assert!(a > 0 && b > 0, "weights must be positive");
    (0..=d / a).filter(|m| (d - m * a) % b == 0).count() as u64
}

/// Membership in the numerical semigroup generated by `a` and `b`.
pub fn in_semigroup(x: u64, a: u64, b: u64) -> bool {
    (0..=x / a).any(|m| (x - m * a) % b == 0)
}

/// The integers attached to a degree that drive the stratum formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub d: u64,
    pub mu_a: u64,
    pub mu_b: u64,
    pub alpha2: i64,
    pub ell: u64,
    /// First lattice point of the open hypotenuse (smallest positive `a2`).
    pub n0: Option<LatticePoint>,
    /// `min(q - 2, i_max)`, or `-1` when there is no interior hypotenuse point.
    pub t: i64,
    /// Index of the last interior hypotenuse point, `-1` when there is none.
    pub i_max: i64,
}

pub fn degree_profile(plane: &PlaneParams, d: u64) -> Result<DegreeProfile> {
    check_degree(d)?;
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    let dm1 = d.saturating_sub(1);
    let mu_a = (dm1 / a).min(q - 1);
    let mu_b = (dm1 / b).min(q - 1);
    let alpha2 = (d as i64 - 1 - (a * (q - 1)) as i64).div_euclid(b as i64);
    let ell = alpha2.clamp(0, q as i64 - 1) as u64;
    let n0 = (1..=d / b)
        .find(|y| (d - b * y) % a == 0 && d - b * y > 0)
        .map(|y| LatticePoint::new((d - b * y) / a, y));
    let (i_max, t) = match n0 {
        Some(p) => {
            let i_max = ((d - b * p.a2 - 1) / (a * b)) as i64;
            (i_max, i_max.min(q as i64 - 2))
        }
        None => (-1, -1),
    };
    Ok(DegreeProfile {
        d,
        mu_a,
        mu_b,
        alpha2,
        ell,
        n0,
        t,
        i_max,
    })
}

/// The reduction `red(d)` split into its rectangle, trapezoid and hypotenuse strata.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    #[serde(rename = "R")]
    pub r: Vec<LatticePoint>,
    #[serde(rename = "T")]
    pub t: Vec<LatticePoint>,
    #[serde(rename = "H")]
    pub h: Vec<LatticePoint>,
}

impl Reduction {
    /// The union of the three strata, sorted.
    pub fn all(&self) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = self.r.iter().chain(&self.t).chain(&self.h).copied().collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.r.len() + self.t.len() + self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.r.binary_search(p).is_ok()
            || self.t.binary_search(p).is_ok()
            || self.h.binary_search(p).is_ok()
    }

    /// JSON with three arrays `"R"`, `"T"`, `"H"` of `[a1, a2]` pairs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// The reduced hypotenuse points `H(d)`; `H(0) = {(0, 0)}`.
pub fn hypotenuse(plane: &PlaneParams, d: u64) -> Result<Vec<LatticePoint>> {
    if d == 0 {
        return Ok(vec![LatticePoint::new(0, 0)]);
    }
    let prof = degree_profile(plane, d)?;
    Ok(hypotenuse_from_profile(plane, &prof))
}

fn hypotenuse_from_profile(plane: &PlaneParams, prof: &DegreeProfile) -> Vec<LatticePoint> {
    let (a, b, d) = (plane.a(), plane.b(), prof.d);
    let mut h = Vec::new();
    if let Some(n0) = prof.n0 {
        for i in 0..=prof.t as u64 {
            h.push(LatticePoint::new(n0.a1 - i * b, n0.a2 + i * a));
        }
    }
    if d % b == 0 {
        h.push(LatticePoint::new(0, d / b));
    }
    if d % a == 0 {
        h.push(LatticePoint::new(d / a, 0));
    }
    h.sort();
    h.dedup();
    h
}

/// `red(d)` assembled stratum by stratum from the closed description.
pub fn reduction(plane: &PlaneParams, d: u64) -> Result<Reduction> {
    let prof = degree_profile(plane, d)?;
    if d == 0 {
        return Ok(Reduction {
            r: vec![LatticePoint::new(0, 0)],
            t: Vec::new(),
            h: Vec::new(),
        });
    }
    let (a, b) = (plane.a(), plane.b());
    let mut r = Vec::new();
    for y in 0..=prof.ell {
        for x in 0..=prof.mu_a {
            r.push(LatticePoint::new(x, y));
        }
    }
    let mut t = Vec::new();
    for y in prof.ell + 1..=prof.mu_b {
        for x in 0..=(d - 1 - b * y) / a {
            t.push(LatticePoint::new(x, y));
        }
    }
    let h = hypotenuse_from_profile(plane, &prof);
    Ok(Reduction { r, t, h })
}

/// `|H(d)|` from the denumerant.
pub fn hypotenuse_count(plane: &PlaneParams, d: u64) -> u64 {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    if d <= a * b * (q - 1) {
        denumerant(d, a, b)
    } else {
        q - 1 + (d % a == 0) as u64 + (d % b == 0) as u64
    }
}

/// `dim C_d` by the closed formula (independent of [`reduction`]).
pub fn dimension(plane: &PlaneParams, d: u64) -> Result<u64> {
    let prof = degree_profile(plane, d)?;
    if d == 0 {
        return Ok(1);
    }
    let (a, b) = (plane.a(), plane.b());
    let trapezoid: u64 = (prof.ell + 1..=prof.mu_b).map(|y| (d - 1 - b * y) / a).sum();
    let k = (prof.ell + 1) * prof.mu_a + prof.mu_b + 1 + trapezoid + hypotenuse_count(plane, d);
    if let Some(closed) = dimension_weight_one(plane, d)? {
        debug_assert_eq!(closed, k, "a = 1 closed form disagrees at d = {d}");
    }
    Ok(k)
}

/// The `a = 1` closed form
/// `(l+1)(mu_a+1) + (mu_b-l)d - b C(mu_b+1,2) + b C(l+1,2) + mu_b + 1 + [b|d]`;
/// `None` when `a != 1`.
pub fn dimension_weight_one(plane: &PlaneParams, d: u64) -> Result<Option<u64>> {
    if plane.a() != 1 {
        return Ok(None);
    }
    if d == 0 {
        return Ok(Some(1));
    }
    let prof = degree_profile(plane, d)?;
    let b = plane.b();
    let (l, mu_a, mu_b) = (prof.ell, prof.mu_a, prof.mu_b);
    let choose2 = |n: u64| n * (n - 1) / 2;
    let k = (l + 1) * (mu_a + 1) + (mu_b - l) * d + b * choose2(l + 1) + mu_b + 1
        + (d % b == 0) as u64
        - b * choose2(mu_b + 1);
    Ok(Some(k))
}

/// True iff `C_d` is the full space `F_q^n`.
pub fn in_regularity_set(plane: &PlaneParams, d: u64) -> bool {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    d > 0 && d % (a * b) == 0 && d / (a * b) >= q && (a + b) * (q - 1) < d
}

/// The least `d~` in the regularity set with
/// `d~ >= d + (q-1) max(a+b, ab) + slack`.
pub fn smallest_regular_degree_above(plane: &PlaneParams, d: u64, slack: u64) -> Result<u64> {
    check_degree(d)?;
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    let ab = a * b;
    let floor = d + (q - 1) * (a + b).max(ab) + slack;
    let mut m = floor.div_ceil(ab).max(q);
    while !in_regularity_set(plane, m * ab) {
        m += 1;
    }
    Ok(m * ab)
}
