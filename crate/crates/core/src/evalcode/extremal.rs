//! Explicit product polynomials of small weight.

use std::fmt;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::lattice::{hypotenuse, in_regularity_set, LatticePoint};
use crate::plane::PlaneParams;
use crate::rewrite::WeightedMonomial;

/// The construction used for a witness polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtremalBranch {
    /// `d <= a(q-1)`: weight `q(q - floor((d-1)/a))`.
    SmallDegree,
    /// `a(q-1) < d <= a(q-1) + b`: weight `q`.
    FirstColumn,
    /// `a(q-1) + b < d <= (a+b)(q-1)`: weight `q - l`.
    Staircase,
    /// `d > (a+b)(q-1)`: weight 1.
    Trivial,
    /// `a = 1 < b`, `b | d`, `d / b >= q`: weight 1, supported at `[0:0:1]`.
    WeightOneA1,
    /// `a | q-1`, `b = a+1`, a hypotenuse point with `a2 >= q`.
    ADividesQMinusOne,
}

impl ExtremalBranch {
    pub const ALL: [ExtremalBranch; 6] = [
        ExtremalBranch::SmallDegree,
        ExtremalBranch::FirstColumn,
        ExtremalBranch::Staircase,
        ExtremalBranch::Trivial,
        ExtremalBranch::WeightOneA1,
        ExtremalBranch::ADividesQMinusOne,
    ];
}

impl fmt::Display for ExtremalBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExtremalBranch::SmallDegree => "small-degree",
            ExtremalBranch::FirstColumn => "first-column",
            ExtremalBranch::Staircase => "staircase",
            ExtremalBranch::Trivial => "trivial",
            ExtremalBranch::WeightOneA1 => "weight-one-a1",
            ExtremalBranch::ADividesQMinusOne => "a-divides-q-minus-one",
        };
        f.write_str(s)
    }
}

/// A witness polynomial with the weight its construction guarantees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub branch: ExtremalBranch,
    pub polynomial: Polynomial,
    pub claimed_weight: u64,
}

struct Builder<'a> {
    plane: &'a PlaneParams,
}

impl Builder<'_> {
    fn mono(&self, c: FieldElement, e0: u64, e1: u64, e2: u64) -> Polynomial {
        Polynomial::monomial(self.plane, c, WeightedMonomial::new(e0, e1, e2))
    }

    fn x(&self, e0: u64, e1: u64, e2: u64) -> Polynomial {
        self.mono(FieldElement::ONE, e0, e1, e2)
    }

    /// `x1 - y x0^a`.
    fn x1_minus(&self, y: FieldElement) -> Polynomial {
        let f = self.plane.field();
        self.x(0, 1, 0)
            .add(&self.mono(f.neg(y), self.plane.a(), 0, 0))
            .expect("same degree")
    }

    /// `x2 - y x0^b`.
    fn x2_minus(&self, y: FieldElement) -> Polynomial {
        let f = self.plane.field();
        self.x(0, 0, 1)
            .add(&self.mono(f.neg(y), self.plane.b(), 0, 0))
            .expect("same degree")
    }

    fn product(&self, init: Polynomial, factors: impl IntoIterator<Item = Polynomial>) -> Polynomial {
        factors.into_iter().fold(init, |acc, g| acc.mul(&g))
    }
}

fn no_branch(branch: ExtremalBranch, plane: &PlaneParams, d: u64) -> Error {
    Error::NoBranchApplies(format!(
        "{branch} does not apply to q={} a={} b={} d={d}",
        plane.q(),
        plane.a(),
        plane.b()
    ))
}

/// The witness of one construction, if its hypotheses hold for `d`.
///
/// For [`ExtremalBranch::ADividesQMinusOne`] the hypotenuse point with the
/// smallest claimed weight is used.
pub fn extremal_branch(plane: &PlaneParams, d: u64, branch: ExtremalBranch) -> Result<Extremal> {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    let field = plane.field();
    let bld = Builder { plane };
    let units: Vec<FieldElement> = field.units().collect();
    let fail = || no_branch(branch, plane, d);
    if d == 0 {
        return Err(fail());
    }
    let (poly, weight) = match branch {
        ExtremalBranch::SmallDegree => {
            if d > a * (q - 1) {
                return Err(fail());
            }
            let j = ((d - 1) / a) as usize;
            let r = (d - 1) % a;
            let f = bld.product(
                bld.x(r + 1, 0, 0),
                field.elements().take(j).map(|y| bld.x1_minus(y)),
            );
            (f, q * (q - j as u64))
        }
        ExtremalBranch::FirstColumn => {
            if d <= a * (q - 1) || d > a * (q - 1) + b {
                return Err(fail());
            }
            let f = bld.product(
                bld.x(d - (q - 1) * a, 0, 0),
                units.iter().map(|&y| bld.x1_minus(y)),
            );
            (f, q)
        }
        ExtremalBranch::Staircase => {
            if d <= a * (q - 1) + b || d > (a + b) * (q - 1) {
                return Err(fail());
            }
            let rest = d - 1 - a * (q - 1);
            let (ell, r) = (rest / b, rest % b);
            let f = bld.product(
                bld.x(r + 1, 0, 0),
                units
                    .iter()
                    .map(|&y| bld.x1_minus(y))
                    .chain(field.elements().take(ell as usize).map(|y| bld.x2_minus(y))),
            );
            (f, q - ell)
        }
        ExtremalBranch::Trivial => {
            if d <= (a + b) * (q - 1) {
                return Err(fail());
            }
            let f = bld.product(
                bld.x(d - (q - 1) * (a + b), 0, 0),
                units
                    .iter()
                    .map(|&y| bld.x1_minus(y))
                    .chain(units.iter().map(|&y| bld.x2_minus(y))),
            );
            (f, 1)
        }
        ExtremalBranch::WeightOneA1 => {
            if a != 1 || b < 2 || d % b != 0 || d / b < q {
                return Err(fail());
            }
            let d0 = d / b;
            let minus_one = field.neg(FieldElement::ONE);
            let inner = bld
                .x(0, 0, q - 1)
                .add(&bld.mono(minus_one, b * (q - 1), 0, 0))
                .and_then(|g| g.add(&bld.mono(minus_one, 0, (q - 1) * b, 0)))
                .and_then(|g| g.add(&bld.mono(FieldElement::ONE, q - 1, (q - 1) * (b - 1), 0)))
                .expect("same degree");
            (bld.x(0, 0, 1 + d0 - q).mul(&inner), 1)
        }
        ExtremalBranch::ADividesQMinusOne => {
            let best = hypotenuse(plane, d)?
                .into_iter()
                .filter_map(|p| divisor_witness(plane, d, p).ok())
                .min_by_key(|e| e.claimed_weight);
            return best.ok_or_else(fail);
        }
    };
    Ok(Extremal {
        branch,
        polynomial: poly,
        claimed_weight: weight,
    })
}

/// The `a | q-1`, `b = a+1` witness attached to a hypotenuse point `(a1, a2)`
/// with `a2 >= q`; its weight is `q - [a1 > 0] - k2 - (q-1)/a` where
/// `a2 = q + k2 a + r2`.
pub fn divisor_witness(plane: &PlaneParams, d: u64, point: LatticePoint) -> Result<Extremal> {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    let field = plane.field();
    let branch = ExtremalBranch::ADividesQMinusOne;
    let fail = || no_branch(branch, plane, d);
    if (q - 1) % a != 0 || b != a + 1 || point.a2 < q || in_regularity_set(plane, d) {
        return Err(fail());
    }
    if !hypotenuse(plane, d)?.contains(&point) {
        return Err(Error::NotInReduction(point.a1, point.a2));
    }
    let (a1, a2) = (point.a1, point.a2);
    let k2 = (a2 - q) / a;
    let r2 = (a2 - q) % a;
    let exps: Vec<u64> = (1..q).filter(|j| j % a != 0).take(k2 as usize).collect();
    let lost = (a1 > 0) as u64 + k2 + (q - 1) / a;
    if exps.len() as u64 != k2 || lost >= q {
        return Err(fail());
    }
    let bld = Builder { plane };
    let minus_one = field.neg(FieldElement::ONE);
    let tail = bld
        .x(0, 0, q - 1)
        .add(&bld.mono(minus_one, b * (q - 1), 0, 0))
        .and_then(|g| g.add(&bld.mono(minus_one, 0, (q - 1) / a + q - 1, 0)))
        .and_then(|g| g.add(&bld.mono(FieldElement::ONE, a * (q - 1), (q - 1) / a, 0)))
        .expect("same degree");
    let factors = exps.iter().map(|&j| {
        bld.x(0, 0, a)
            .add(&bld.mono(field.neg(field.exp(j)), 0, b, 0))
            .expect("same degree")
    });
    let f = bld.product(bld.x(0, a1, 1 + r2), factors).mul(&tail);
    Ok(Extremal {
        branch,
        polynomial: f,
        claimed_weight: q - lost,
    })
}

/// The applicable construction of least claimed weight.
pub fn extremal_polynomial(plane: &PlaneParams, d: u64) -> Result<Extremal> {
    ExtremalBranch::ALL
        .iter()
        .filter_map(|&br| extremal_branch(plane, d, br).ok())
        .min_by_key(|e| (e.claimed_weight, e.branch))
        .ok_or_else(|| {
            Error::NoBranchApplies(format!(
                "no construction for q={} a={} b={} d={d}",
                plane.q(),
                plane.a(),
                plane.b()
            ))
        })
}
