//! The footprint function `L`, its minimum over `red(d)`, and the minimum
//! distance of `C_d`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalcode::{
    build_code, codeword_weight, exhaustive_min_distance, extremal_polynomial, line_points,
    solve_left, tilde_code, DistanceResult, DistanceStatus, Polynomial,
};
use crate::gf::FieldElement;
use crate::lattice::{degree_profile, in_regularity_set, in_semigroup, reduction, LatticePoint};
use crate::plane::{enumerate_points, PlaneParams};
use crate::DEFAULT_SEARCH_CAP;

/// A value of `L` together with the point it is attained at.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LValue {
    pub point: LatticePoint,
    pub value: u64,
}

/// Size of the shadow of `x^{a,d}` in any regular degree, in closed form.
pub fn l_value(plane: &PlaneParams, d: u64, a: LatticePoint) -> Result<u64> {
    if !reduction(plane, d)?.contains(&a) {
        return Err(Error::NotInReduction(a.a1, a.a2));
    }
    Ok(l_unchecked(plane, d, a))
}

/// `L` without the membership check; `a` must lie in `red(d)`.
fn l_unchecked(plane: &PlaneParams, d: u64, p: LatticePoint) -> u64 {
    let (q, a, b) = (plane.q() as i64, plane.a() as i64, plane.b() as i64);
    let (a1, a2, d) = (p.a1 as i64, p.a2 as i64, d as i64);
    if d == 0 {
        return plane.n();
    }
    let v = if a * a1 + b * a2 != d {
        (q - a1) * (q - a2)
    } else if a1 != 0 {
        (q - a1).max(0) * (q - a2).max(0) + q - 1 - (a2 - 1).div_euclid(a)
    } else {
        q * (q - d / b).max(0) + (q - (d - b).div_euclid(a * b)).max(1)
    };
    v as u64
}

/// `L(min(floor((d-1-b a2)/a), q-1), a2)`, the row minimum off the hypotenuse.
pub fn tilde_l(plane: &PlaneParams, d: u64, a2: u64) -> Result<u64> {
    let prof = degree_profile(plane, d)?;
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    if d == 0 || a2 > prof.mu_b {
        return Err(Error::OutOfRange { a2, max: prof.mu_b });
    }
    let x = ((d - 1 - b * a2) / a).min(q - 1);
    Ok((q - x) * (q - a2))
}

/// Minimum of `L` over `red(d)` by enumeration; ties go to the smallest point.
pub fn min_l_brute(plane: &PlaneParams, d: u64) -> Result<LValue> {
    reduction(plane, d)?
        .all()
        .into_iter()
        .map(|p| LValue {
            point: p,
            value: l_unchecked(plane, d, p),
        })
        .min_by_key(|v| (v.value, v.point))
        .ok_or(Error::EmptyCode)
}

/// `d >= bq + q/(a-1) + 1`, in integers (`a >= 2`).
fn above_window(d: u64, a: u64, q: u64) -> bool {
    let b = a + 1;
    d > b * q && (d - b * q - 1) * (a - 1) >= q
}

/// The value of the `s = d mod ab` case split.
fn s_formula(plane: &PlaneParams, d: u64, ell: u64) -> u64 {
    let (q, a, b) = (plane.q() as i64, plane.a(), plane.b());
    let ab = a * b;
    let (lambda, s) = ((d / ab) as i64, d % ab);
    let ell = ell as i64;
    let m = if s == 0 {
        ell.max(lambda - 1)
    } else if !in_semigroup(s, a, b) || s % a == 0 || s % b == 0 {
        ell.max(lambda)
    } else {
        ell.max(lambda + 1)
    };
    (q - m).max(1) as u64
}

/// Closed-form minimum of `L` over `red(d)` with a minimizing point.
pub fn min_l_over_reduction(plane: &PlaneParams, d: u64) -> Result<LValue> {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    if a == 1 && b == 1 {
        return Err(Error::Unsupported);
    }
    if d == 0 {
        return Err(Error::DegreeOutOfRange(0));
    }
    if in_regularity_set(plane, d) {
        return Err(Error::DegreeRegular(d));
    }
    let prof = degree_profile(plane, d)?;
    let ell = prof.ell;
    let q_minus_ell = q - ell;
    let value = if d > (a + b) * (q - 1) {
        1
    } else if d < b * q {
        if d <= a * (q - 1) {
            q * (q - (d - 1) / a)
        } else {
            q_minus_ell
        }
    } else if a == 1 {
        if d % b == 0 {
            1
        } else {
            q_minus_ell
        }
    } else if b >= a + 2 || above_window(d, a, q) || !in_semigroup(d - b * q, a, b) {
        q_minus_ell
    } else {
        s_formula(plane, d, ell)
    };
    let row = tilde_l(plane, d, ell)?;
    let point = if value == row {
        LatticePoint::new(((d - 1 - b * ell) / a).min(q - 1), ell)
    } else {
        reduction(plane, d)?
            .h
            .into_iter()
            .find(|p| l_unchecked(plane, d, *p) == value)
            .ok_or_else(|| Error::NoBranchApplies(format!("no point with L = {value} at d = {d}")))?
    };
    Ok(LValue { point, value })
}

/// A witness from the explicit constructions whose claimed weight is `value`.
fn witness_for(plane: &PlaneParams, d: u64, value: u64) -> Option<Polynomial> {
    extremal_polynomial(plane, d)
        .ok()
        .filter(|e| e.claimed_weight == value)
        .map(|e| e.polynomial)
}

/// The minimum distance as stated by the closed formulas, without any search.
///
/// For `a = 1` and `d >= bq` the value is 1 only when `b >= 2` and `b | d`;
/// otherwise it is `q - l`.
pub fn theorem_distance(plane: &PlaneParams, d: u64) -> Result<DistanceResult> {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    if d == 0 {
        return Err(Error::DegreeOutOfRange(0));
    }
    if in_regularity_set(plane, d) {
        let mut r = DistanceResult::exact(1);
        if let Ok(e) = extremal_polynomial(plane, d) {
            r.witness = (e.claimed_weight == 1).then_some(e.polynomial);
        }
        return Ok(r);
    }
    let prof = degree_profile(plane, d)?;
    let q_minus_ell = q - prof.ell;
    let (value, status) = if a == 1 {
        if d < q {
            (q * (q - d + 1), DistanceStatus::Exact)
        } else if b >= 2 && d % b == 0 && d >= b * q {
            (1, DistanceStatus::Exact)
        } else {
            (q_minus_ell, DistanceStatus::Exact)
        }
    } else if d <= a * (q - 1) {
        (q * (q - (d - 1) / a), DistanceStatus::Exact)
    } else if d > (a + b) * (q - 1) {
        (1, DistanceStatus::Exact)
    } else if b >= a + 2 || d < b * q || above_window(d, a, q) || !in_semigroup(d - b * q, a, b) {
        (q_minus_ell, DistanceStatus::Exact)
    } else {
        let v = s_formula(plane, d, prof.ell);
        let exact = v == q_minus_ell || (q - 1) % a == 0;
        let status = if exact {
            DistanceStatus::Exact
        } else {
            DistanceStatus::LowerBound
        };
        (v, status)
    };
    let mut r = DistanceResult {
        value,
        status,
        witness: None,
    };
    if status == DistanceStatus::Exact {
        r.witness = witness_for(plane, d, value);
    }
    Ok(r)
}

/// `min(q - l, d(tilde code))`, exact, for `d >= bq` outside the regularity set.
pub fn min_distance_refined_with_cap(plane: &PlaneParams, d: u64, cap: u64) -> Result<DistanceResult> {
    let (q, b) = (plane.q(), plane.b());
    if d < b * q {
        return Err(Error::DegreeTooSmall { d, min: b * q });
    }
    if in_regularity_set(plane, d) {
        return Err(Error::DegreeRegular(d));
    }
    let q_minus_ell = q - degree_profile(plane, d)?.ell;
    let code = tilde_code(plane, d)?;
    let line = match exhaustive_min_distance(&code, cap) {
        Ok(r) => Some(r),
        Err(Error::EmptyCode) => None,
        Err(e) => return Err(e),
    };
    let Some(line) = line.filter(|r| r.value < q_minus_ell) else {
        return Ok(DistanceResult::exact(q_minus_ell).with_witness(witness_for(plane, d, q_minus_ell)));
    };
    let witness = line
        .witness
        .as_ref()
        .and_then(|g| lift_line_witness(plane, d, g))
        .filter(|f| codeword_weight(f, plane) == line.value);
    Ok(DistanceResult::exact(line.value).with_witness(witness))
}

/// Default-cap version of [`min_distance_refined_with_cap`].
pub fn min_distance_refined(plane: &PlaneParams, d: u64) -> Result<DistanceResult> {
    min_distance_refined_with_cap(plane, d, DEFAULT_SEARCH_CAP)
}

/// A polynomial of degree `d` agreeing with `g` on the line `x0 = 0` and
/// vanishing at every affine point, found by solving in the basis of `C_d`.
fn lift_line_witness(plane: &PlaneParams, d: u64, g: &Polynomial) -> Option<Polynomial> {
    let code = build_code(plane, d).ok()?;
    let on_line = line_points(plane);
    let target: Vec<FieldElement> = enumerate_points(plane)
        .iter()
        .map(|p| {
            if on_line.contains(p) {
                crate::evalcode::evaluate(g, p)
            } else {
                FieldElement::ZERO
            }
        })
        .collect();
    let x = solve_left(plane.field(), &code.generator, &target)?;
    Some(code.message_polynomial(&x))
}

/// [`theorem_distance`], upgraded to an exact value through the line code when
/// the closed formulas only give a lower bound and the search fits in `cap`.
pub fn min_distance_with_cap(plane: &PlaneParams, d: u64, cap: u64) -> Result<DistanceResult> {
    let r = theorem_distance(plane, d)?;
    if r.status == DistanceStatus::Exact {
        return Ok(r);
    }
    match min_distance_refined_with_cap(plane, d, cap) {
        Ok(refined) => Ok(refined),
        Err(Error::TooLarge { .. }) => Ok(r),
        Err(e) => Err(e),
    }
}

pub fn min_distance(plane: &PlaneParams, d: u64) -> Result<DistanceResult> {
    min_distance_with_cap(plane, d, DEFAULT_SEARCH_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{dimension, hypotenuse, smallest_regular_degree_above};
    use crate::rewrite::shadow_size;

    fn plane(q: u64, a: u64, b: u64) -> PlaneParams {
        PlaneParams::from_order(q, a, b).unwrap()
    }

    fn pt(a1: u64, a2: u64) -> LatticePoint {
        LatticePoint::new(a1, a2)
    }

    const WEIGHTS: [(u64, u64); 7] = [(1, 1), (1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5)];

    #[test]
    fn l_examples() {
        let p = plane(2, 1, 3);
        assert_eq!(l_value(&p, 4, pt(0, 0)).unwrap(), 4);
        for x in [pt(1, 1), pt(0, 1), pt(4, 0), pt(1, 0)] {
            assert_eq!(l_value(&p, 4, x).unwrap(), 2, "{x}");
        }
        assert_eq!(l_value(&p, 4, pt(2, 0)), Err(Error::NotInReduction(2, 0)));
        assert_eq!(l_value(&plane(8, 2, 3), 29, pt(1, 9)).unwrap(), 3);
        assert_eq!(l_value(&plane(5, 2, 3), 21, pt(4, 4)).unwrap(), 1);
    }

    #[test]
    fn tilde_l_examples() {
        let p = plane(5, 2, 3);
        assert_eq!(tilde_l(&p, 7, 0).unwrap(), 10);
        assert_eq!(l_value(&p, 7, pt(3, 0)).unwrap(), 10);
        assert_eq!(tilde_l(&plane(16, 2, 3), 48, 5).unwrap(), 11);
        assert_eq!(tilde_l(&p, 7, 3), Err(Error::OutOfRange { a2: 3, max: 2 }));
    }

    #[test]
    fn tilde_l_piecewise_form() {
        for q in [2u64, 3, 4, 5, 7] {
            for (a, b) in WEIGHTS {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * q + a * b {
                    let prof = degree_profile(&p, d).unwrap();
                    for a2 in 0..=prof.mu_b {
                        let product = (q - ((d - 1 - b * a2) / a).min(q - 1)) * (q - a2);
                        let expect = if d > a * (q - 1) && (a2 as i64) <= prof.alpha2 {
                            q - a2
                        } else {
                            product
                        };
                        assert_eq!(tilde_l(&p, d, a2).unwrap(), expect);
                    }
                    if d > a * (q - 1) {
                        assert_eq!(tilde_l(&p, d, prof.ell).unwrap(), q - prof.ell);
                    }
                }
            }
        }
    }

    #[test]
    fn l_matches_shadow_oracle() {
        for q in [2u64, 3, 4, 5] {
            for (a, b) in WEIGHTS {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * (q - 1) + a * b {
                    let dt = smallest_regular_degree_above(&p, d, 0).unwrap();
                    for x in reduction(&p, d).unwrap().all() {
                        assert_eq!(
                            l_value(&p, d, x).unwrap(),
                            shadow_size(&p, dt, x, d).unwrap(),
                            "q={q} a={a} b={b} d={d} at {x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn l_is_independent_of_the_regular_degree() {
        let p = plane(3, 2, 3);
        for d in [5, 8, 11] {
            for slack in [0, 6, 13] {
                let dt = smallest_regular_degree_above(&p, d, slack).unwrap();
                for x in reduction(&p, d).unwrap().all() {
                    assert_eq!(l_value(&p, d, x).unwrap(), shadow_size(&p, dt, x, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn interior_symmetry_and_row_minima() {
        for q in [3u64, 4, 5, 7] {
            for (a, b) in WEIGHTS {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * q + a * b {
                    let red = reduction(&p, d).unwrap();
                    let h = hypotenuse(&p, d).unwrap();
                    let off: Vec<_> = red.all().into_iter().filter(|x| !h.contains(x)).collect();
                    for x in &off {
                        let y = pt(x.a2, x.a1);
                        if off.contains(&y) {
                            assert_eq!(l_value(&p, d, *x).unwrap(), l_value(&p, d, y).unwrap());
                        }
                    }
                    let prof = degree_profile(&p, d).unwrap();
                    for a2 in 0..=prof.mu_b {
                        let row_min = off
                            .iter()
                            .filter(|x| x.a2 == a2)
                            .map(|x| l_value(&p, d, *x).unwrap())
                            .min();
                        if let Some(m) = row_min {
                            assert_eq!(m, tilde_l(&p, d, a2).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tilde_l_increases_on_the_product_range() {
        for q in [3u64, 4, 5, 7, 8] {
            for (a, b) in WEIGHTS {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * (q - 1) {
                    let prof = degree_profile(&p, d).unwrap();
                    let lo = prof.alpha2.max(0) as u64;
                    let hi = ((d - 1) / (a + b)).min(prof.mu_b);
                    for a2 in lo..hi {
                        assert!(
                            tilde_l(&p, d, a2 + 1).unwrap() > tilde_l(&p, d, a2).unwrap(),
                            "q={q} a={a} b={b} d={d} a2={a2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn min_l_examples() {
        let p = plane(5, 2, 3);
        assert_eq!(min_l_over_reduction(&p, 7).unwrap().value, 10);
        assert_eq!(min_l_brute(&p, 7).unwrap().value, 10);
        let v = min_l_over_reduction(&plane(8, 2, 3), 29).unwrap();
        assert_eq!((v.value, v.point), (3, pt(1, 9)));
        assert_eq!(min_l_over_reduction(&plane(16, 2, 3), 48).unwrap().value, 9);
        assert_eq!(min_l_over_reduction(&plane(5, 1, 1), 3), Err(Error::Unsupported));
        assert_eq!(min_l_over_reduction(&p, 30), Err(Error::DegreeRegular(30)));
    }

    #[test]
    fn closed_form_minimum_matches_brute_force() {
        let weights = [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5), (1, 4), (4, 5), (5, 6), (2, 7), (3, 7)];
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            for (a, b) in weights {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * q + 2 * a * b {
                    if in_regularity_set(&p, d) {
                        continue;
                    }
                    let closed = min_l_over_reduction(&p, d).unwrap();
                    let brute = min_l_brute(&p, d).unwrap();
                    assert_eq!(closed.value, brute.value, "q={q} a={a} b={b} d={d}");
                    assert_eq!(l_value(&p, d, closed.point).unwrap(), closed.value);
                }
            }
        }
    }

    #[test]
    fn distance_examples() {
        let r = min_distance(&plane(2, 1, 3), 4).unwrap();
        assert_eq!((r.value, r.status), (2, DistanceStatus::Exact));

        let p = plane(8, 2, 3);
        let t = theorem_distance(&p, 29).unwrap();
        assert_eq!((t.value, t.status), (3, DistanceStatus::LowerBound));
        let r = min_distance(&p, 29).unwrap();
        assert_eq!((r.value, r.status), (4, DistanceStatus::Exact));
        assert_eq!(codeword_weight(r.witness.as_ref().unwrap(), &p), 4);

        let p = plane(16, 2, 3);
        let t = theorem_distance(&p, 48).unwrap();
        assert_eq!((t.value, t.status), (9, DistanceStatus::LowerBound));
        let r = min_distance(&p, 48).unwrap();
        assert_eq!((r.value, r.status), (11, DistanceStatus::Exact));
        assert_eq!(r, min_distance_refined(&p, 48).unwrap());

        let p = plane(5, 2, 3);
        let r = min_distance(&p, 30).unwrap();
        assert_eq!((r.value, r.status), (1, DistanceStatus::Exact));
        assert_eq!(codeword_weight(r.witness.as_ref().unwrap(), &p), 1);
        let r = min_distance(&p, 7).unwrap();
        assert_eq!(r.value, 10);
        assert_eq!(codeword_weight(r.witness.as_ref().unwrap(), &p), 10);
        assert_eq!(min_distance_refined(&p, 14), Err(Error::DegreeTooSmall { d: 14, min: 15 }));
    }

    #[test]
    fn weight_one_a1_correction() {
        // b does not divide d: q - l, not 1
        let p = plane(5, 1, 2);
        assert_eq!(theorem_distance(&p, 11).unwrap().value, 2);
        assert_eq!(theorem_distance(&p, 10).unwrap().value, 1);
        let p = plane(5, 1, 3);
        assert_eq!(theorem_distance(&p, 16).unwrap().value, 2);
        assert_eq!(theorem_distance(&p, 15).unwrap().value, 1);
        // classical plane: 2q - d
        assert_eq!(theorem_distance(&plane(3, 1, 1), 3).unwrap().value, 3);
        assert_eq!(theorem_distance(&plane(5, 1, 1), 6).unwrap().value, 4);
        assert_eq!(theorem_distance(&plane(3, 1, 1), 4).unwrap().value, 2);
    }

    #[test]
    fn exact_values_carry_checked_witnesses() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for (a, b) in WEIGHTS {
                let p = plane(q, a, b);
                for d in 1..=(a + b) * q + a * b {
                    let r = theorem_distance(&p, d).unwrap();
                    let k = dimension(&p, d).unwrap();
                    assert!(r.value <= p.n() - k + 1, "Singleton at q={q} a={a} b={b} d={d}");
                    if let Some(w) = &r.witness {
                        assert_eq!(codeword_weight(w, &p), r.value);
                    }
                    if r.status == DistanceStatus::Exact && (a, b) != (1, 1) {
                        assert!(r.witness.is_some(), "no witness at q={q} a={a} b={b} d={d}");
                    }
                    if r.status == DistanceStatus::Exact && !in_regularity_set(&p, d) && (a, b) != (1, 1) {
                        assert!(r.value >= min_l_over_reduction(&p, d).unwrap().value);
                    }
                }
            }
        }
    }
}
