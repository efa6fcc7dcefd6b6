//! The binomials `f0, f1, f2` generating the vanishing ideal of the rational
//! points, used as a monomial rewriting system under lex `x2 > x1 > x0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::lattice::{in_regularity_set, reduction, LatticePoint};
use crate::plane::PlaneParams;

/// The monomial `x0^e0 x1^e1 x2^e2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WeightedMonomial {
    pub e0: u64,
    pub e1: u64,
    pub e2: u64,
}

impl WeightedMonomial {
    pub const fn new(e0: u64, e1: u64, e2: u64) -> Self {
        WeightedMonomial { e0, e1, e2 }
    }

    /// `x^{(a1,a2),d}`; fails when `a a1 + b a2 > d`.
    pub fn from_lattice(plane: &PlaneParams, p: LatticePoint, d: u64) -> Result<Self> {
        let w = p.weight(plane.a(), plane.b());
        if w > d {
            return Err(Error::DegreeTooSmall { d, min: w });
        }
        Ok(WeightedMonomial::new(d - w, p.a1, p.a2))
    }

    pub fn degree(&self, plane: &PlaneParams) -> u64 {
        self.e0 + plane.a() * self.e1 + plane.b() * self.e2
    }

    pub fn lattice_point(&self) -> LatticePoint {
        LatticePoint::new(self.e1, self.e2)
    }

    pub fn exponents(&self) -> [u64; 3] {
        [self.e0, self.e1, self.e2]
    }

    pub fn divides(&self, other: &WeightedMonomial) -> bool {
        self.e0 <= other.e0 && self.e1 <= other.e1 && self.e2 <= other.e2
    }

    pub fn mul(&self, other: &WeightedMonomial) -> WeightedMonomial {
        WeightedMonomial::new(self.e0 + other.e0, self.e1 + other.e1, self.e2 + other.e2)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &WeightedMonomial) -> Option<WeightedMonomial> {
        other.divides(self).then(|| {
            WeightedMonomial::new(self.e0 - other.e0, self.e1 - other.e1, self.e2 - other.e2)
        })
    }
}

/// Lex order with `x2 > x1 > x0`.
impl Ord for WeightedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.e2, self.e1, self.e0).cmp(&(other.e2, other.e1, other.e0))
    }
}

impl PartialOrd for WeightedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.e0, self.e1, self.e2)
    }
}

impl FromStr for WeightedMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let e: Vec<u64> = s
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Parse(s.to_string())))
            .collect::<Result<_>>()?;
        match e.as_slice() {
            [e0, e1, e2] => Ok(WeightedMonomial::new(*e0, *e1, *e2)),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// The pure-difference binomial `lhs - rhs`, with `lhs` the lex-leading term.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct BinomialRelation {
    pub lhs: WeightedMonomial,
    pub rhs: WeightedMonomial,
}

impl BinomialRelation {
    /// One rewriting step, if `lhs` divides `m`.
    pub fn apply(&self, m: &WeightedMonomial) -> Option<WeightedMonomial> {
        m.div(&self.lhs).map(|c| c.mul(&self.rhs))
    }
}

/// `[f0, f1, f2]`; `fi` does not involve `xi`.
pub fn groebner_basis(plane: &PlaneParams) -> [BinomialRelation; 3] {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    let m = WeightedMonomial::new;
    [
        BinomialRelation {
            lhs: m(0, 1, (q - 1) * a + 1),
            rhs: m(0, (q - 1) * b + 1, 1),
        },
        BinomialRelation {
            lhs: m(1, 0, q),
            rhs: m((q - 1) * b + 1, 0, 1),
        },
        BinomialRelation {
            lhs: m(1, q, 0),
            rhs: m((q - 1) * a + 1, 1, 0),
        },
    ]
}

/// Normal form, trying `f0`, then `f1`, then `f2` at every step.
///
/// Runs of the same rule are applied in one shot: once `f0` is exhausted
/// neither `f1` nor `f2` can re-enable it, and `f2` cannot re-enable `f1`.
pub fn normal_form(m: WeightedMonomial, plane: &PlaneParams) -> WeightedMonomial {
    let q = plane.q();
    let (a, b) = (plane.a(), plane.b());
    let mut m = m;
    if q == 1 {
        return m;
    }
    let s0 = (q - 1) * a;
    if m.e1 >= 1 && m.e2 > s0 {
        let k = (m.e2 - 1) / s0;
        m.e2 -= k * s0;
        m.e1 += k * (q - 1) * b;
    }
    if m.e0 >= 1 && m.e2 >= q {
        let k = (m.e2 - 1) / (q - 1);
        m.e2 -= k * (q - 1);
        m.e0 += k * (q - 1) * b;
    }
    if m.e0 >= 1 && m.e1 >= q {
        let k = (m.e1 - 1) / (q - 1);
        m.e1 -= k * (q - 1);
        m.e0 += k * (q - 1) * a;
    }
    m
}

/// Normal form applying one rule per step, always the first applicable one in `order`.
pub fn normal_form_with_order(
    m: WeightedMonomial,
    plane: &PlaneParams,
    order: [usize; 3],
) -> WeightedMonomial {
    let basis = groebner_basis(plane);
    let mut m = m;
    while let Some(next) = order.iter().find_map(|&i| basis[i].apply(&m)) {
        m = next;
    }
    m
}

/// Normal form applying a uniformly random applicable rule at every step.
pub fn normal_form_random<R: Rng + ?Sized>(
    m: WeightedMonomial,
    plane: &PlaneParams,
    rng: &mut R,
) -> WeightedMonomial {
    let basis = groebner_basis(plane);
    let mut m = m;
    loop {
        let options: Vec<WeightedMonomial> = basis.iter().filter_map(|r| r.apply(&m)).collect();
        match options.choose(rng) {
            Some(next) => m = *next,
            None => return m,
        }
    }
}

/// True iff no leading monomial of the basis divides `m`.
pub fn is_standard(m: &WeightedMonomial, plane: &PlaneParams) -> bool {
    groebner_basis(plane).iter().all(|r| !r.lhs.divides(m))
}

/// Standard monomials of degree `d`, in lex order.
pub fn standard_monomials(plane: &PlaneParams, d: u64) -> Result<Vec<WeightedMonomial>> {
    reduction(plane, d)?
        .all()
        .into_iter()
        .map(|p| WeightedMonomial::from_lattice(plane, p, d))
        .collect()
}

/// Standard monomials of degree `d_tilde` not divisible by `lead`.
pub fn footprint(
    plane: &PlaneParams,
    d_tilde: u64,
    lead: &WeightedMonomial,
) -> Result<BTreeSet<WeightedMonomial>> {
    let deg = lead.degree(plane);
    if d_tilde < deg {
        return Err(Error::DegreeTooSmall { d: d_tilde, min: deg });
    }
    Ok(standard_monomials(plane, d_tilde)?
        .into_iter()
        .filter(|m| !lead.divides(m))
        .collect())
}

/// Number of points of `red(d_tilde)` whose monomial is divisible by `x^{a,d}`.
pub fn shadow_size(plane: &PlaneParams, d_tilde: u64, a: LatticePoint, d: u64) -> Result<u64> {
    if !in_regularity_set(plane, d_tilde) {
        return Err(Error::DegreeNotRegular(d_tilde));
    }
    if d_tilde < d {
        return Err(Error::DegreeTooSmall { d: d_tilde, min: d });
    }
    if !reduction(plane, d)?.contains(&a) {
        return Err(Error::NotInReduction(a.a1, a.a2));
    }
    let lead = WeightedMonomial::from_lattice(plane, a, d)?;
    Ok(standard_monomials(plane, d_tilde)?
        .iter()
        .filter(|m| lead.divides(m))
        .count() as u64)
}
