//! The length-`q+1` code on the line `x0 = 0`.

use super::LinearCode;
use crate::error::{Error, Result};
use crate::lattice::hypotenuse;
use crate::plane::{enumerate_points, PlaneParams, ProjPoint};
use crate::rewrite::WeightedMonomial;

/// The `q + 1` points with `x0 = 0`, in enumeration order.
pub fn line_points(plane: &PlaneParams) -> Vec<ProjPoint> {
    enumerate_points(plane)
        .into_iter()
        .filter(|p| p.coords()[0].is_zero())
        .collect()
}

/// Rows `x^{a, d-bq} x2^q` for `a in H(d - bq)`, then `x^{a, d-aq} x1^q` for
/// `a in H(d - aq)`, evaluated on the line `x0 = 0`.
pub fn tilde_code(plane: &PlaneParams, d: u64) -> Result<LinearCode> {
    let (q, a, b) = (plane.q(), plane.a(), plane.b());
    if d < b * q {
        return Err(Error::DegreeTooSmall { d, min: b * q });
    }
    let mut monomials = Vec::new();
    for p in hypotenuse(plane, d - b * q)? {
        monomials.push(WeightedMonomial::new(0, p.a1, p.a2 + q));
    }
    for p in hypotenuse(plane, d - a * q)? {
        monomials.push(WeightedMonomial::new(0, p.a1 + q, p.a2));
    }
    Ok(LinearCode::from_monomials(plane, d, monomials, line_points(plane)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evalcode::exhaustive_min_distance;
    use crate::lattice::denumerant;

    fn plane(q: u64, a: u64, b: u64) -> PlaneParams {
        PlaneParams::from_order(q, a, b).unwrap()
    }

    #[test]
    fn rows_for_8_2_3_29() {
        let p = plane(8, 2, 3);
        let c = tilde_code(&p, 29).unwrap();
        assert_eq!(c.length(), 9);
        let m = |e1, e2| WeightedMonomial::new(0, e1, e2);
        assert_eq!(c.row_monomials, vec![m(1, 9), m(13, 1), m(10, 3)]);
        assert!(c.row_monomials.iter().all(|x| x.degree(&p) == 29));
        assert!(c.rank() >= 2);
        assert!(exhaustive_min_distance(&c, 1 << 24).unwrap().value >= 4);
    }

    #[test]
    fn distance_13_for_16_2_3_48() {
        let c = tilde_code(&plane(16, 2, 3), 48).unwrap();
        assert_eq!(c.length(), 17);
        assert_eq!(exhaustive_min_distance(&c, 1 << 24).unwrap().value, 13);
    }

    #[test]
    fn rejects_small_degree() {
        assert_eq!(
            tilde_code(&plane(5, 2, 3), 14).unwrap_err(),
            Error::DegreeTooSmall { d: 14, min: 15 }
        );
    }

    #[test]
    fn rank_never_exceeds_row_count() {
        for (q, a, b) in [(4, 2, 3), (5, 2, 3), (7, 3, 4), (8, 2, 3), (5, 1, 3)] {
            let p = plane(q, a, b);
            for d in b * q..b * q + 3 * a * b {
                let c = tilde_code(&p, d).unwrap();
                assert!(c.rank() <= c.row_monomials.len());
                assert!(c.rank() <= c.length());
                let rows = hypotenuse(&p, d - a * q).unwrap().len()
                    + hypotenuse(&p, d - b * q).unwrap().len();
                assert_eq!(c.row_monomials.len(), rows);
                assert!(rows as u64 <= denumerant(d - a * q, a, b) + denumerant(d - b * q, a, b));
            }
        }
    }
}
