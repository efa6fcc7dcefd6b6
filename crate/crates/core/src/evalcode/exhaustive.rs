//! Brute-force minimum distance by enumerating the message space.

use rayon::prelude::*;

use super::{rank, DistanceResult, LinearCode, Matrix};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

/// Minimum nonzero weight and the first message (in counter order) reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub weight: u64,
    /// Coefficients per generator row; rows skipped as dependent get zero.
    pub message: Vec<FieldElement>,
}

/// Enumerates the nonzero combinations of a maximal independent set of rows.
///
/// Messages are base-`q` counters over field encodings, row 0 least
/// significant. For a fixed choice of the other digits `c`, the zero set of
/// `c + alpha row0` is read off from the roots `-c_j / row0_j`, so each block
/// of `q` messages costs one pass over the columns.
pub fn search_min_weight(field: &FieldSpec, g: &Matrix, cap: u64) -> Result<SearchOutcome> {
    let keep = g.independent_rows(field);
    let r = keep.len();
    if r == 0 {
        return Err(Error::EmptyCode);
    }
    let q = field.q() as u64;
    let total = (q as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::TooLarge {
            what: "q^k",
            value: total,
            cap: cap as u128,
        });
    }
    let n = g.cols();
    let rows: Vec<&[FieldElement]> = keep.iter().map(|&i| g.row(i)).collect();
    let row0 = rows[0];
    let neg_inv0: Vec<Option<FieldElement>> = row0
        .iter()
        .map(|x| field.inv(*x).ok().map(|i| field.neg(i)))
        .collect();
    let elems: Vec<FieldElement> = field.elements().collect();
    // steps[i][e] = elem(e + 1) - elem(e): counter increments in encoding order
    let steps: Vec<FieldElement> = (0..q as usize)
        .map(|e| field.sub(elems[(e + 1) % q as usize], elems[e]))
        .collect();
    let bases = (total / q as u128) as u64;
    let chunk = (bases / (rayon::current_num_threads() as u64 * 16)).max(1);
    let n_chunks = bases.div_ceil(chunk);

    let best = (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let start = ci * chunk;
            let end = (start + chunk).min(bases);
            let mut digits: Vec<usize> = Vec::with_capacity(r - 1);
            let mut x = start;
            for _ in 1..r {
                digits.push((x % q) as usize);
                x /= q;
            }
            let mut c = vec![FieldElement::ZERO; n];
            for (i, &dg) in digits.iter().enumerate() {
                if dg != 0 {
                    axpy(field, &mut c, elems[dg], rows[i + 1]);
                }
            }
            let mut count = vec![0u32; q as usize];
            let mut best: (u64, u64) = (u64::MAX, u64::MAX);
            for base in start..end {
                count.iter_mut().for_each(|v| *v = 0);
                let mut fixed_zeros = 0u64;
                for j in 0..n {
                    match neg_inv0[j] {
                        None => fixed_zeros += c[j].is_zero() as u64,
                        Some(ni) => count[field.mul(c[j], ni).encoding() as usize] += 1,
                    }
                }
                for (alpha, &z) in count.iter().enumerate() {
                    if base == 0 && alpha == 0 {
                        continue;
                    }
                    let w = n as u64 - fixed_zeros - z as u64;
                    let idx = base * q + alpha as u64;
                    if (w, idx) < best {
                        best = (w, idx);
                    }
                }
                // advance the counter over digits 1..r
                for (i, dg) in digits.iter_mut().enumerate() {
                    axpy(field, &mut c, steps[*dg], rows[i + 1]);
                    *dg = (*dg + 1) % q as usize;
                    if *dg != 0 {
                        break;
                    }
                }
            }
            best
        })
        .min()
        .expect("at least one chunk");

    let (weight, mut idx) = best;
    let mut message = vec![FieldElement::ZERO; g.rows()];
    for &row in &keep {
        message[row] = elems[(idx % q) as usize];
        idx /= q;
    }
    Ok(SearchOutcome { weight, message })
}

fn axpy(field: &FieldSpec, c: &mut [FieldElement], s: FieldElement, row: &[FieldElement]) {
    if s.is_zero() {
        return;
    }
    for (x, y) in c.iter_mut().zip(row) {
        *x = field.add(*x, field.mul(s, *y));
    }
}

/// Exact minimum distance of `code` with a witness polynomial.
pub fn exhaustive_min_distance(code: &LinearCode, cap: u64) -> Result<DistanceResult> {
    let out = search_min_weight(code.plane.field(), &code.generator, cap)?;
    let witness = code.message_polynomial(&out.message);
    Ok(DistanceResult::exact(out.weight).with_witness(Some(witness)))
}

/// Minimum distance as the least `w` such that some `w` columns carry the
/// support of a nonzero codeword, i.e. deleting them drops the rank.
///
/// Returns `None` when the distance exceeds `max_w` or more than `cap`
/// column subsets would be needed.
pub fn support_min_distance(code: &LinearCode, max_w: usize, cap: u64) -> Option<u64> {
    let field = code.plane.field();
    let g = &code.generator;
    let n = g.cols();
    let k = rank(field, g);
    if k == 0 {
        return None;
    }
    let mut budget = cap;
    for w in 1..=max_w.min(n) {
        let subsets = binomial(n as u64, w as u64);
        if subsets > budget {
            return None;
        }
        budget -= subsets;
        let mut s: Vec<usize> = (0..w).collect();
        loop {
            let rest: Vec<usize> = (0..n).filter(|j| s.binary_search(j).is_err()).collect();
            if rank(field, &g.select_columns(&rest)) < k {
                return Some(w as u64);
            }
            // next combination in lex order
            let Some(i) = (0..w).rev().find(|&i| s[i] < n - w + i) else {
                break;
            };
            s[i] += 1;
            for j in i + 1..w {
                s[j] = s[j - 1] + 1;
            }
        }
    }
    None
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    r as u64
}
