//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line with
//! its wall time; the test fails if any criterion fails or runs over budget.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use wprm::bounds::{l_value, min_distance, min_l_brute, min_l_over_reduction, theorem_distance};
use wprm::evalcode::{
    build_code, codeword_weight, divisor_witness, evaluate_at, exhaustive_min_distance,
    extremal_branch, tilde_code, DistanceStatus, ExtremalBranch, Polynomial,
};
use wprm::lattice::{
    degree_profile, dimension, in_regularity_set, polygon_points, reduction, smallest_regular_degree_above,
};
use wprm::plane::{enumerate_points, PlaneParams};
use wprm::rewrite::{normal_form, shadow_size, WeightedMonomial};
use wprm::{Error, DEFAULT_SEARCH_CAP};

const QS: [u64; 4] = [2, 3, 4, 5];
const WEIGHTS: [(u64, u64); 7] = [(1, 1), (1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5)];

type Outcome = Result<String, String>;

fn plane(q: u64, a: u64, b: u64) -> PlaneParams {
    PlaneParams::from_order(q, a, b).unwrap()
}

/// Every `(plane, d)` with `q` in `qs`, all weight pairs and
/// `1 <= d <= (a+b)(q-1) + ab`.
fn sweep(qs: &[u64]) -> Vec<(PlaneParams, u64)> {
    let mut out = Vec::new();
    for &q in qs {
        for (a, b) in WEIGHTS {
            let p = plane(q, a, b);
            for d in 1..=(a + b) * (q - 1) + a * b {
                out.push((p.clone(), d));
            }
        }
    }
    out
}

fn tag(p: &PlaneParams, d: u64) -> String {
    format!("(q,a,b,d)=({},{},{},{d})", p.q(), p.a(), p.b())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_err<T: Send>(items: Vec<T>, f: impl Fn(T) -> Result<(), String> + Sync + Send) -> Result<(), String> {
    let errs: Vec<String> = items.into_par_iter().filter_map(|x| f(x).err()).collect();
    match errs.into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn c1_dimension() -> Outcome {
    let p = plane(5, 2, 3);
    for (d, k) in [(7, 8), (11, 15), (15, 23), (24, 30)] {
        let got = dimension(&p, d).map_err(|e| e.to_string())?;
        ensure(got == k, || format!("d={d}: dimension {got}, expected {k}"))?;
    }
    Ok("k = 8, 15, 23, 30 at d = 7, 11, 15, 24".into())
}

fn c2_rank() -> Outcome {
    let inst = sweep(&QS);
    let count = inst.len();
    first_err(inst, |(p, d)| {
        let rank = build_code(&p, d).map_err(|e| e.to_string())?.rank() as u64;
        let red = reduction(&p, d).map_err(|e| e.to_string())?.len() as u64;
        let k = dimension(&p, d).map_err(|e| e.to_string())?;
        ensure(rank == red && red == k, || {
            format!("{}: rank {rank}, |red| {red}, formula {k}", tag(&p, d))
        })
    })?;
    Ok(format!("{count} instances"))
}

fn c3_regularity() -> Outcome {
    first_err(sweep(&QS), |(p, d)| {
        let full = build_code(&p, d).map_err(|e| e.to_string())?.rank() as u64 == p.n();
        ensure(full == in_regularity_set(&p, d), || {
            format!("{}: full rank {full}, regularity set {}", tag(&p, d), !full)
        })
    })?;
    let p = plane(2, 1, 3);
    for d in 1..=30 {
        let full = build_code(&p, d).unwrap().rank() as u64 == p.n();
        let expected = d >= 6 && d % 3 == 0;
        ensure(full == expected && in_regularity_set(&p, d) == expected, || {
            format!("(2,1,3) d={d}: full rank {full}, expected {expected}")
        })?;
    }
    let p = plane(5, 2, 3);
    let first = (1..=40)
        .find(|&d| build_code(&p, d).unwrap().rank() as u64 == p.n())
        .ok_or("(5,2,3): no regular degree up to 40")?;
    ensure(first == 30, || format!("(5,2,3): first regular degree {first}"))?;
    ensure((1..30).all(|d| !in_regularity_set(&p, d)) && in_regularity_set(&p, 30), || {
        "(5,2,3): regularity predicate disagrees below 30".into()
    })?;
    Ok("sweep agrees; reg(2,1,3) = 6+3N; first regular degree of (5,2,3) is 30".into())
}

fn c4_footprint() -> Outcome {
    let mut points = 0usize;
    let inst = sweep(&QS);
    for (p, d) in &inst {
        points += reduction(p, *d).unwrap().len();
    }
    first_err(inst, |(p, d)| {
        let dt = smallest_regular_degree_above(&p, d, 0).map_err(|e| e.to_string())?;
        for x in reduction(&p, d).map_err(|e| e.to_string())?.all() {
            let l = l_value(&p, d, x).map_err(|e| e.to_string())?;
            let s = shadow_size(&p, dt, x, d).map_err(|e| e.to_string())?;
            ensure(l == s, || format!("{} at {x}: L = {l}, shadow = {s}", tag(&p, d)))?;
        }
        Ok(())
    })?;
    let p = plane(8, 2, 3);
    let x = wprm::lattice::LatticePoint::new(1, 9);
    let l = l_value(&p, 29, x).map_err(|e| e.to_string())?;
    let dt = smallest_regular_degree_above(&p, 29, 0).unwrap();
    let s = shadow_size(&p, dt, x, 29).map_err(|e| e.to_string())?;
    ensure(l == 3 && s == 3, || format!("(8,2,3,29): L(1,9) = {l}, shadow = {s}"))?;
    Ok(format!("{points} reduction points; L(1,9) = 3 for (8,2,3,29)"))
}

/// The footprint lower bound: closed form where it applies, else brute force.
fn min_l(p: &PlaneParams, d: u64) -> Result<u64, String> {
    match min_l_over_reduction(p, d) {
        Ok(v) => Ok(v.value),
        Err(Error::Unsupported | Error::DegreeRegular(_)) => {
            min_l_brute(p, d).map(|v| v.value).map_err(|e| e.to_string())
        }
        Err(e) => Err(e.to_string()),
    }
}

struct Searched {
    exhaustive: u64,
    theorem: u64,
    exact: bool,
    min_l: u64,
}

fn searched(p: &PlaneParams, d: u64) -> Result<Option<Searched>, String> {
    let code = build_code(p, d).map_err(|e| e.to_string())?;
    let ex = match exhaustive_min_distance(&code, DEFAULT_SEARCH_CAP) {
        Ok(r) => r,
        Err(Error::TooLarge { .. }) => return Ok(None),
        Err(e) => return Err(e.to_string()),
    };
    let th = theorem_distance(p, d).map_err(|e| e.to_string())?;
    Ok(Some(Searched {
        exhaustive: ex.value,
        theorem: th.value,
        exact: th.status == DistanceStatus::Exact,
        min_l: min_l(p, d)?,
    }))
}

fn search_sweep() -> Result<Vec<(PlaneParams, u64, Searched)>, String> {
    let rows: Vec<Result<Option<(PlaneParams, u64, Searched)>, String>> = sweep(&QS)
        .into_par_iter()
        .map(|(p, d)| Ok(searched(&p, d)?.map(|s| (p, d, s))))
        .collect();
    let mut out = Vec::new();
    for r in rows {
        if let Some(x) = r? {
            out.push(x);
        }
    }
    Ok(out)
}

fn c5_exhaustive(rows: &[(PlaneParams, u64, Searched)]) -> Outcome {
    let mut compared = 0;
    for (p, d, s) in rows {
        if s.exact {
            compared += 1;
            ensure(s.exhaustive == s.theorem, || {
                format!("{}: exhaustive {}, theorem {}", tag(p, *d), s.exhaustive, s.theorem)
            })?;
        }
    }
    let p = plane(2, 1, 3);
    let ex = exhaustive_min_distance(&build_code(&p, 4).unwrap(), DEFAULT_SEARCH_CAP).unwrap();
    let th = theorem_distance(&p, 4).unwrap();
    ensure(ex.value == 2 && th.value == 2 && th.status == DistanceStatus::Exact, || {
        format!("(2,1,3,4): exhaustive {}, theorem {}", ex.value, th.value)
    })?;
    Ok(format!("{compared} exact instances match; (2,1,3,4) -> 2"))
}

fn c6_line_code() -> Outcome {
    let p = plane(8, 2, 3);
    let t = exhaustive_min_distance(&tilde_code(&p, 29).unwrap(), DEFAULT_SEARCH_CAP).unwrap();
    let ell = degree_profile(&p, 29).unwrap().ell;
    let combined = (8 - ell).min(t.value);
    let fin = min_distance(&p, 29).map_err(|e| e.to_string())?;
    ensure(combined == 4 && fin.value == 4 && fin.status == DistanceStatus::Exact, || {
        format!("(8,2,3,29): min(q-l, {}) = {combined}, final {} ({})", t.value, fin.value, fin.status.as_str())
    })?;
    let p = plane(16, 2, 3);
    let t = exhaustive_min_distance(&tilde_code(&p, 48).unwrap(), DEFAULT_SEARCH_CAP).unwrap();
    ensure(t.value == 13, || format!("(16,2,3,48): line code distance {}", t.value))?;
    let fin = min_distance(&p, 48).map_err(|e| e.to_string())?;
    ensure(fin.value == 11 && fin.status == DistanceStatus::Exact, || {
        format!("(16,2,3,48): final {} ({})", fin.value, fin.status.as_str())
    })?;
    Ok("(8,2,3,29) -> 4; (16,2,3,48) line code 13, final 11".into())
}

fn check_witness(p: &PlaneParams, d: u64, poly: &Polynomial, claimed: u64, what: &str) -> Result<(), String> {
    ensure(poly.degree() == Some(d), || format!("{what} {}: wrong degree", tag(p, d)))?;
    let w = codeword_weight(poly, p);
    ensure(w == claimed, || format!("{what} {}: weight {w}, claimed {claimed}", tag(p, d)))
}

fn c7_witnesses() -> Outcome {
    let mut inst = sweep(&QS);
    for (q, a, b) in [(3, 2, 3), (4, 3, 4), (7, 2, 3), (7, 3, 4), (16, 3, 4)] {
        let p = plane(q, a, b);
        for d in 1..=(a + b) * (q - 1) + a * b {
            inst.push((p.clone(), d));
        }
    }
    let checked: Vec<Result<[usize; 7], String>> = inst
        .into_par_iter()
        .map(|(p, d)| {
            let mut hits = [0usize; 7];
            for (i, br) in ExtremalBranch::ALL.iter().enumerate() {
                if let Ok(e) = extremal_branch(&p, d, *br) {
                    check_witness(&p, d, &e.polynomial, e.claimed_weight, &br.to_string())?;
                    hits[i] += 1;
                }
            }
            for x in polygon_points(&p, d) {
                if x.weight(p.a(), p.b()) != d {
                    continue;
                }
                if let Ok(e) = divisor_witness(&p, d, x) {
                    check_witness(&p, d, &e.polynomial, e.claimed_weight, &format!("divisor at {x}"))?;
                    hits[6] += 1;
                }
            }
            Ok(hits)
        })
        .collect();
    let mut total = [0usize; 7];
    for c in checked {
        for (t, h) in total.iter_mut().zip(c?) {
            *t += h;
        }
    }
    ensure(total.iter().all(|&t| t > 0), || format!("some construction never applied: {total:?}"))?;
    let names: Vec<String> = ExtremalBranch::ALL
        .iter()
        .map(|b| b.to_string())
        .chain(["divisor-point".to_string()])
        .zip(total)
        .map(|(n, t)| format!("{n}={t}"))
        .collect();
    Ok(names.join(" "))
}

fn c8_rewriting() -> Outcome {
    let mut planes = Vec::new();
    for q in [2u64, 3, 4] {
        for (a, b) in WEIGHTS {
            planes.push(plane(q, a, b));
        }
    }
    let counts: Vec<Result<usize, String>> = planes
        .into_par_iter()
        .map(|p| {
            let (q, a, b) = (p.q(), p.a(), p.b());
            let pts = enumerate_points(&p);
            let one = p.field().one();
            let mut n = 0;
            for deg in 1..=2 * (a + b) * (q - 1) {
                let red = reduction(&p, deg).map_err(|e| e.to_string())?;
                for e2 in 0..=deg / b {
                    for e1 in 0..=(deg - b * e2) / a {
                        let m = WeightedMonomial::new(deg - a * e1 - b * e2, e1, e2);
                        let nf = normal_form(m, &p);
                        ensure(nf.degree(&p) == deg && red.contains(&nf.lattice_point()), || {
                            format!("{}: normal form of {m} is {nf}, outside red", tag(&p, deg))
                        })?;
                        let lhs = evaluate_at(&Polynomial::monomial(&p, one, m), &pts);
                        let rhs = evaluate_at(&Polynomial::monomial(&p, one, nf), &pts);
                        ensure(lhs == rhs, || format!("{}: {m} and {nf} evaluate differently", tag(&p, deg)))?;
                        n += 1;
                    }
                }
            }
            Ok(n)
        })
        .collect();
    let mut total = 0;
    for c in counts {
        total += c?;
    }
    Ok(format!("{total} monomials"))
}

fn c9_lower_bound(rows: &[(PlaneParams, u64, Searched)]) -> Outcome {
    for (p, d, s) in rows {
        ensure(s.exhaustive >= s.min_l, || {
            format!("{}: exhaustive {} below min L {}", tag(p, *d), s.exhaustive, s.min_l)
        })?;
    }
    Ok(format!("{} searched instances", rows.len()))
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
}

fn run(c: &Criterion, f: impl FnOnce() -> Outcome, out: &mut Vec<bool>) {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    let took = start.elapsed();
    let res = res.and_then(|detail| {
        if took <= c.budget {
            Ok(detail)
        } else {
            Err(format!("over budget ({took:.2?} > {:?})", c.budget))
        }
    });
    let line = match &res {
        Ok(detail) => format!("PASS criterion {} {}: {detail} [{took:.2?}]\n", c.id, c.title),
        Err(why) => format!("FAIL criterion {} {}: {why} [{took:.2?}]\n", c.id, c.title),
    };
    // Bypass the test harness capture so the summary is always visible.
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(line.as_bytes());
    let _ = stdout.flush();
    out.push(res.is_ok());
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let mut results = Vec::new();
    let _ = std::io::stdout().write_all(b"\n");
    let crit = |id, title, budget| Criterion { id, title, budget };

    run(&crit(1, "dimension golden values", secs(1)), c1_dimension, &mut results);
    run(&crit(2, "rank oracle", secs(30)), c2_rank, &mut results);
    run(&crit(3, "regularity", secs(30)), c3_regularity, &mut results);
    run(&crit(4, "footprint formula oracle", secs(60)), c4_footprint, &mut results);

    let mut rows = Vec::new();
    run(
        &crit(5, "exhaustive minimum distance", secs(600)),
        || {
            rows = search_sweep()?;
            c5_exhaustive(&rows)
        },
        &mut results,
    );

    run(&crit(6, "line-code instances", secs(60)), c6_line_code, &mut results);
    run(&crit(7, "witness weights", secs(60)), c7_witnesses, &mut results);
    run(&crit(8, "rewriting soundness", secs(60)), c8_rewriting, &mut results);
    run(&crit(9, "footprint lower bound", secs(600)), || c9_lower_bound(&rows), &mut results);

    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
