//! Seeded verification batteries, one per acceptance criterion.
//!
//! Each check is deterministic: random instances come from a ChaCha stream
//! with a fixed seed, and time limits are part of the verdict.

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diagram::{braid_closure, Crossing, Diagram, Edge, Sign};
use crate::families::{self, FamilyError, FamilySpec};
use crate::invariants::{bracket, bracket_with_budget, jones, skein_triple, BracketError};
use crate::laurent::LaurentPoly;
use crate::oracle::naive_bracket;
use crate::random;
use crate::surgery::{self, snf, Body, FramedLink};

pub const QUOTED_VALUE_LIMIT: Duration = Duration::from_secs(1);
pub const FAMILY_LIMIT: Duration = Duration::from_secs(60);
pub const ROUNDTRIP_LIMIT: Duration = Duration::from_secs(1);
pub const LARGE_JONES_LIMIT: Duration = Duration::from_secs(5);
/// Budget used for the adversarial input of the performance check.
pub const SMALL_BUDGET: u64 = 1_000;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "quoted Jones values"),
    (2, "skein recursion and closed form"),
    (3, "framing round trip"),
    (4, "H1 invariance"),
    (5, "bracket oracle"),
    (6, "invariance fuzz"),
    (7, "cable correctness"),
    (8, "Smith normal form"),
    (9, "performance"),
];

/// The criteria reported by `verify-paper`.
pub const REPORTED_CRITERIA: std::ops::RangeInclusive<u8> = 1..=8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ResourceLimit,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One report line, e.g. `[PASS] 3 framing round trip: ... (0.01s)`.
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ResourceLimit => "LIMIT",
        };
        format!("[{tag}] {} {}: {} ({:.2}s)", self.id, self.name, self.detail, self.elapsed.as_secs_f64())
    }
}

enum Halt {
    Limit(String),
    Other(String),
}

impl From<BracketError> for Halt {
    fn from(e: BracketError) -> Self {
        Halt::Limit(e.to_string())
    }
}

impl From<FamilyError> for Halt {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Bracket(b) => Halt::Limit(b.to_string()),
            e => Halt::Other(e.to_string()),
        }
    }
}

impl From<surgery::SurgeryError> for Halt {
    fn from(e: surgery::SurgeryError) -> Self {
        Halt::Other(e.to_string())
    }
}

impl From<crate::diagram::DiagramError> for Halt {
    fn from(e: crate::diagram::DiagramError) -> Self {
        Halt::Other(e.to_string())
    }
}

/// Verdict of a check body: `Ok((passed, detail))`.
type Outcome = Result<(bool, String), Halt>;

fn rng(id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + id as u64)
}

pub fn run(id: u8) -> Option<CheckResult> {
    let name = CRITERIA.iter().find(|c| c.0 == id)?.1;
    let start = Instant::now();
    let out = match id {
        1 => quoted_values(),
        2 => recursion_and_closed_form(),
        3 => framing_round_trip(),
        4 => h1_invariance(),
        5 => bracket_oracle(),
        6 => invariance_fuzz(),
        7 => cable_correctness(),
        8 => smith_normal_form(),
        9 => performance(),
        _ => return None,
    };
    let elapsed = start.elapsed();
    let (status, detail) = match out {
        Ok((true, d)) => (Status::Pass, d),
        Ok((false, d)) => (Status::Fail, d),
        Err(Halt::Limit(d)) => (Status::ResourceLimit, d),
        Err(Halt::Other(d)) => (Status::Fail, d),
    };
    Some(CheckResult { id, name, status, detail, elapsed })
}

pub fn run_reported_checks() -> Vec<CheckResult> {
    REPORTED_CRITERIA.filter_map(run).collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn quoted_values() -> Outcome {
    let (c3, t1) = timed(|| families::diagram(FamilySpec::Chain3).map(|d| jones(&d)));
    let (p1, t2) = timed(|| families::diagram(FamilySpec::Pa(1)).map(|d| jones(&d)));
    let c3_ok = c3?? == families::quoted_v_c3();
    let p1_ok = p1?? == families::quoted_v_p1();
    let fast = t1 < QUOTED_VALUE_LIMIT && t2 < QUOTED_VALUE_LIMIT;
    Ok((
        c3_ok && p1_ok && fast,
        format!(
            "V(C3) {} ({:.3}s), V(P1) {} ({:.3}s), limit {}s each",
            if c3_ok { "exact" } else { "WRONG" },
            t1.as_secs_f64(),
            if p1_ok { "exact" } else { "WRONG" },
            t2.as_secs_f64(),
            QUOTED_VALUE_LIMIT.as_secs()
        ),
    ))
}

fn recursion_and_closed_form() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for a in 2..=4 {
        let r = families::verify_recursion(a)?;
        if !r.passed {
            failed.push(format!("{}: {}", r.name, r.detail));
        }
    }
    for a in 1..=5 {
        let r = families::verify_closed_form(a)?;
        if !r.passed {
            failed.push(format!("{}: {}", r.name, r.detail));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= FAMILY_LIMIT {
        failed.push(format!("took {:.1}s", elapsed.as_secs_f64()));
    }
    Ok((
        failed.is_empty(),
        if failed.is_empty() {
            format!("recursion a=2..4, closed form and top term a=1..5, limit {}s", FAMILY_LIMIT.as_secs())
        } else {
            failed.join("; ")
        },
    ))
}

fn framing_round_trip() -> Outcome {
    let mut rng = rng(3);
    let start = Instant::now();
    let mut bad = 0;
    for _ in 0..1000 {
        let lk = rng.gen_range(-9..=9);
        let sj = random::random_slope(&mut rng, 9);
        let si = random::random_slope(&mut rng, 9);
        let body = Body::Abstract(surgery::AbstractLink::new(vec![vec![0, lk], vec![lk, 0]])?);
        let fl = FramedLink::new(body, vec![si, sj])?;
        let (back, r1, r2) = surgery::slide_roundtrip(&fl, 0, 1)?;
        if r1.x + r2.x != 0 || back != fl {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    Ok((
        bad == 0 && elapsed < ROUNDTRIP_LIMIT,
        format!("1000 instances, {bad} failures, limit {}s", ROUNDTRIP_LIMIT.as_secs()),
    ))
}

fn h1_invariance() -> Outcome {
    let mut rng = rng(4);
    let mut bad_abstract = 0;
    for _ in 0..100 {
        let fl = random::random_framed_link(&mut rng, 4, 5, 5);
        let n = fl.n();
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (slid, _) = surgery::slide_update(&fl, i, j, eps)?;
        if surgery::h1_divisors(&slid) != surgery::h1_divisors(&fl) {
            bad_abstract += 1;
        }
    }
    let mut bad_diagram = 0;
    for _ in 0..20 {
        let d = random::random_multi_component(&mut rng, 6);
        let n = d.component_count();
        let slopes = (0..n).map(|_| random::random_slope(&mut rng, 3)).collect();
        let fl = FramedLink::new(Body::Diagram(d), slopes)?;
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let eps = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (slid, _) = surgery::slide(&fl, i, j, eps)?;
        let (pred, _) = surgery::slide_update(&fl.shadow(), i, j, eps)?;
        if slid.linking_matrix() != pred.linking_matrix() || surgery::h1_divisors(&slid) != surgery::h1_divisors(&fl) {
            bad_diagram += 1;
        }
    }
    Ok((
        bad_abstract == 0 && bad_diagram == 0,
        format!("100 abstract slides, {bad_abstract} failures; 20 diagram slides, {bad_diagram} failures"),
    ))
}

fn bracket_oracle() -> Outcome {
    let mut rng = rng(5);
    let mut bad = 0;
    let mut max_crossings = 0;
    for _ in 0..200 {
        let d = random::random_diagram(&mut rng, 10);
        max_crossings = max_crossings.max(d.crossing_count());
        if bracket(&d)?.value != naive_bracket(&d) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("200 diagrams up to {max_crossings} crossings, {bad} mismatches")))
}

fn t_half(k: i64) -> LaurentPoly {
    LaurentPoly::from_half_t([(k, 1)])
}

fn invariance_fuzz() -> Outcome {
    let mut rng = rng(6);
    let mut bad_moves = 0;
    for _ in 0..500 {
        let d = random::random_diagram(&mut rng, 12);
        let moved = random::random_move(&mut rng, &d);
        if jones(&moved)? != jones(&d)? {
            bad_moves += 1;
        }
    }
    let mut bad_skein = 0;
    let mut triples = 0;
    while triples < 100 {
        let d = random::random_diagram(&mut rng, 10);
        if d.crossing_count() == 0 {
            continue;
        }
        triples += 1;
        let x = rng.gen_range(0..d.crossing_count());
        let (p, m, z) = skein_triple(&d, x)?;
        let lhs = t_half(-2) * jones(&p)? - t_half(2) * jones(&m)?;
        let rhs = (t_half(1) - t_half(-1)) * jones(&z)?;
        if lhs != rhs {
            bad_skein += 1;
        }
    }
    let mut bad_mirror = 0;
    for _ in 0..100 {
        let d = random::random_diagram(&mut rng, 10);
        if jones(&d.mirror())? != jones(&d)?.invert_variable() {
            bad_mirror += 1;
        }
    }
    Ok((
        bad_moves + bad_skein + bad_mirror == 0,
        format!("R1/R2 500 moves, {bad_moves} failures; skein 100 triples, {bad_skein} failures; mirror 100, {bad_mirror} failures"),
    ))
}

/// Right-handed trefoil, entered by hand.
pub const TREFOIL_PD: [[Edge; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];

fn cable_correctness() -> Outcome {
    let trefoil = Diagram::from_pd(&TREFOIL_PD, 0, &[]).map_err(|e| Halt::Other(format!("{e:?}")))?;
    let want = jones(&trefoil)?;
    let mut cable_ok = true;
    for sign in [Sign::Positive, Sign::Negative] {
        let kink = Diagram::new(vec![Crossing::from_strands(1, 2, 2, 1, sign)], 0)?;
        cable_ok &= jones(&kink.cable(0, 3, 2)?)? == want;
    }
    let mut rng = rng(7);
    let mut bad = 0;
    for _ in 0..50 {
        let d = random::random_multi_component(&mut rng, 6);
        let n = d.component_count();
        let j = rng.gen_range(0..n);
        let m = (j + rng.gen_range(1..n)) % n;
        let q = rng.gen_range(1..=3i64);
        let p = loop {
            let p = rng.gen_range(-4..=4i64);
            if p.gcd(&q) == 1 {
                break p;
            }
        };
        let c = d.cable(j, p, q)?;
        if c.linking_matrix()[j][m] != q * d.linking_matrix()[j][m] {
            bad += 1;
        }
    }
    Ok((
        cable_ok && bad == 0,
        format!(
            "(3,2) cable of curled unknot {} trefoil; linking scaling 50 cases, {bad} failures",
            if cable_ok { "matches" } else { "DIFFERS from" }
        ),
    ))
}

fn is_unimodular(m: &snf::Matrix) -> bool {
    snf::det(m).abs().is_one()
}

fn smith_normal_form() -> Outcome {
    let mut rng = rng(8);
    let mut bad = 0;
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = snf::from_i64(&m);
        let s = snf::smith_normal_form(&m);
        let product_ok = snf::mat_mul(&snf::mat_mul(&s.u, &m), &s.v) == s.d;
        let diagonal_ok = (0..r).all(|i| (0..c).all(|j| i == j || s.d[i][j].is_zero()));
        let diag = s.diagonal();
        let chain_ok = diag.iter().all(|x| !x.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        if !(product_ok && diagonal_ok && chain_ok && is_unimodular(&s.u) && is_unimodular(&s.v)) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("200 matrices up to 5x5, {bad} failures")))
}

/// A 40-crossing torus link, the closure of `(s1 s2 s3 s4 s5)^8`; the sweep
/// needs about twelve thousand expansions.
pub fn adversarial_diagram() -> Diagram {
    let word: Vec<i32> = (0..8).flat_map(|_| 1..=5).collect();
    braid_closure(6, &word)
}

fn performance() -> Outcome {
    let mut rng = rng(9);
    let d = random::random_braid_closure(&mut rng, 5, 20);
    let (v, t) = timed(|| jones(&d));
    v?;
    let fast = t < LARGE_JONES_LIMIT;
    let adv = adversarial_diagram();
    let (r, t_adv) = timed(|| bracket_with_budget(&adv, SMALL_BUDGET));
    let limited = matches!(r, Err(BracketError::ResourceLimit { .. }));
    Ok((
        fast && limited,
        format!(
            "20-crossing Jones in {:.3}s (limit {}s); 40-crossing input with budget {SMALL_BUDGET}: {} after {:.3}s",
            t.as_secs_f64(),
            LARGE_JONES_LIMIT.as_secs(),
            if limited { "ResourceLimit" } else { "NO LIMIT" },
            t_adv.as_secs_f64()
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_checks_pass() {
        for id in [3, 7, 8, 9] {
            let r = run(id).unwrap();
            assert!(r.passed(), "{}", r.line());
        }
    }

    #[test]
    fn unknown_criterion() {
        assert!(run(0).is_none());
        assert!(run(10).is_none());
    }
}
