//! Kauffman bracket and Jones polynomial.
//!
//! The bracket is evaluated by sweeping crossings in a fixed order and keeping,
//! for every partial smoothing, only how the open edge ends are paired up.
//! Partial states with equal pairings are merged, so the work is governed by
//! the width of the sweep rather than by `2^n`.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{Crossing, Diagram, DiagramError, Edge};
use crate::laurent::LaurentPoly;

pub const DEFAULT_BUDGET: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("state budget of {budget} exceeded")]
    ResourceLimit { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub value: LaurentPoly,
    pub states_visited: u64,
    pub cache_hits: u64,
}

/// Order in which crossings are swept: start at crossing 0, then always take
/// the crossing sharing most edges with those already taken.
pub fn sweep_order(crossings: &[Crossing]) -> Vec<usize> {
    let n = crossings.len();
    let mut done = vec![false; n];
    let mut touched: HashMap<Edge, u32> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&x| !done[x])
            .max_by_key(|&x| {
                let open = crossings[x].pd.iter().filter(|e| touched.get(e) == Some(&1)).count();
                (open, std::cmp::Reverse(x))
            })
            .unwrap();
        done[best] = true;
        for e in crossings[best].pd {
            *touched.entry(e).or_default() += 1;
        }
        order.push(best);
    }
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Link {
    Slot(usize),
    Boundary(Edge),
}

type Key = (bool, Vec<(Edge, Edge)>);

pub fn bracket(d: &Diagram) -> Result<BracketResult, BracketError> {
    bracket_with_budget(d, DEFAULT_BUDGET)
}

/// Bracket normalized so that a single crossingless circle has value 1.
/// `budget` bounds the number of partial-state expansions.
pub fn bracket_with_budget(d: &Diagram, budget: u64) -> Result<BracketResult, BracketError> {
    let crossings = d.crossings();
    let delta = LaurentPoly::delta();
    if crossings.is_empty() {
        let value = delta.pow(d.free_loops() as u32 - 1);
        return Ok(BracketResult { value, states_visited: 1, cache_hits: 0 });
    }
    let mut states: HashMap<Key, LaurentPoly> = HashMap::new();
    states.insert((false, Vec::new()), LaurentPoly::one());
    let (mut visited, mut hits) = (0u64, 0u64);
    let smoothings: [([usize; 2], [usize; 2], i64); 2] = [([0, 1], [2, 3], 1), ([0, 3], [1, 2], -1)];
    for x in sweep_order(crossings) {
        let pd = crossings[x].pd;
        let mut next: HashMap<Key, LaurentPoly> = HashMap::new();
        for ((seen_loop, pairs), value) in states {
            visited += 2;
            if visited > budget {
                return Err(BracketError::ResourceLimit { budget });
            }
            let partner: HashMap<Edge, Edge> = pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
            let mut ext = [Link::Boundary(0); 4];
            for s in 0..4 {
                let e = pd[s];
                ext[s] = if let Some(t) = (0..4).find(|&t| t != s && pd[t] == e) {
                    Link::Slot(t)
                } else if let Some(&p) = partner.get(&e) {
                    match (0..4).find(|&t| pd[t] == p) {
                        Some(t) => Link::Slot(t),
                        None => Link::Boundary(p),
                    }
                } else {
                    Link::Boundary(e)
                };
            }
            let closed: Vec<Edge> = pd.iter().copied().filter(|e| partner.contains_key(e)).collect();
            for (arc1, arc2, weight) in smoothings {
                let arc = |s: usize| {
                    if arc1[0] == s {
                        arc1[1]
                    } else if arc1[1] == s {
                        arc1[0]
                    } else if arc2[0] == s {
                        arc2[1]
                    } else {
                        arc2[0]
                    }
                };
                let mut used = [false; 4];
                let mut new_pairs: Vec<(Edge, Edge)> = Vec::new();
                for s in 0..4 {
                    let Link::Boundary(b1) = ext[s] else { continue };
                    if used[s] {
                        continue;
                    }
                    let mut t = s;
                    let b2 = loop {
                        used[t] = true;
                        let u = arc(t);
                        used[u] = true;
                        match ext[u] {
                            Link::Boundary(b) => break b,
                            Link::Slot(v) => t = v,
                        }
                    };
                    new_pairs.push((b1.min(b2), b1.max(b2)));
                }
                let mut loops = 0u32;
                for s in 0..4 {
                    if used[s] {
                        continue;
                    }
                    loops += 1;
                    let mut t = s;
                    while !used[t] {
                        used[t] = true;
                        let u = arc(t);
                        used[u] = true;
                        match ext[u] {
                            Link::Slot(v) => t = v,
                            Link::Boundary(_) => unreachable!("boundary reached from a closed loop"),
                        }
                    }
                }
                let mut pairs2: Vec<(Edge, Edge)> = pairs
                    .iter()
                    .copied()
                    .filter(|(a, b)| !closed.contains(a) && !closed.contains(b) && !pd.contains(a) && !pd.contains(b))
                    .collect();
                pairs2.extend(new_pairs);
                pairs2.sort_unstable();
                let (flag, powers) = match (seen_loop, loops) {
                    (false, 0) => (false, 0),
                    (false, k) => (true, k - 1),
                    (true, k) => (true, k),
                };
                let mut v = value.shift(weight);
                for _ in 0..powers {
                    v = &v * &delta;
                }
                match next.entry((flag, pairs2)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        hits += 1;
                        *o.get_mut() += &v;
                    }
                    std::collections::hash_map::Entry::Vacant(slot) => {
                        slot.insert(v);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let mut value: LaurentPoly = states.into_values().sum();
    for _ in 0..d.free_loops() {
        value = &value * &delta;
    }
    Ok(BracketResult { value, states_visited: visited, cache_hits: hits })
}

/// `(-A^3)^{-w}` times the bracket, a Laurent polynomial in `A` whose
/// exponents are all even; render with [`LaurentPoly::render_t`].
pub fn jones(d: &Diagram) -> Result<LaurentPoly, BracketError> {
    jones_with_budget(d, DEFAULT_BUDGET)
}

pub fn jones_with_budget(d: &Diagram, budget: u64) -> Result<LaurentPoly, BracketError> {
    let b = bracket_with_budget(d, budget)?.value;
    Ok(writhe_normalize(&b, d.writhe(None)))
}

pub(crate) fn writhe_normalize(bracket: &LaurentPoly, w: i64) -> LaurentPoly {
    let v = bracket.shift(-3 * w);
    if w % 2 == 0 {
        v
    } else {
        -v
    }
}

/// `(L+, L-, L0)` at crossing `x`: `x` made positive, made negative, and
/// smoothed along the orientation.
pub fn skein_triple(d: &Diagram, x: usize) -> Result<(Diagram, Diagram, Diagram), DiagramError> {
    let c = d.crossings().get(x).ok_or(DiagramError::BadCrossing(x))?;
    let switched = d.switch_crossing(x)?;
    let zero = d.smooth_oriented(x)?;
    Ok(match c.sign {
        crate::diagram::Sign::Positive => (d.clone(), switched, zero),
        crate::diagram::Sign::Negative => (switched, d.clone(), zero),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, Sign};
    use crate::oracle::naive_bracket;

    fn t(k2: i64) -> LaurentPoly {
        LaurentPoly::from_half_t([(k2, 1)])
    }

    #[test]
    fn normalization() {
        assert_eq!(bracket(&Diagram::unknot()).unwrap().value, LaurentPoly::one());
        assert_eq!(bracket(&Diagram::unlink(2)).unwrap().value, LaurentPoly::delta());
        let kink = Diagram::new(vec![Crossing::new([1, 1, 2, 2], Sign::Positive)], 0).unwrap();
        assert_eq!(bracket(&kink).unwrap().value, LaurentPoly::monomial(-1, 3));
        assert_eq!(jones(&kink).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn right_trefoil_from_hand_code() {
        let d = Diagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], 0, &[]).unwrap();
        assert_eq!(d.writhe(None), 3);
        let v = jones(&d).unwrap();
        assert_eq!(v, t(2) + t(6) - t(8));
        assert_eq!(v.render_t().unwrap(), "t + t^3 - t^4");
    }

    #[test]
    fn hopf_jones() {
        // -t^{1/2} - t^{5/2} for the positive Hopf link
        let v = jones(&braid_closure(2, &[1, 1])).unwrap();
        assert_eq!(v, -t(1) - t(5));
    }

    #[test]
    fn agrees_with_naive() {
        for word in [&[1, 1, 1][..], &[1, -2, 1, -2], &[1, 2, -1, 2, 3, -3, 1], &[2, 2, -1, 3, 3]] {
            let d = braid_closure(4, word);
            assert_eq!(bracket(&d).unwrap().value, naive_bracket(&d), "{word:?}");
        }
    }

    #[test]
    fn budget_enforced() {
        let d = braid_closure(3, &[1, -2, 1, -2, 1, -2]);
        assert_eq!(bracket_with_budget(&d, 4), Err(BracketError::ResourceLimit { budget: 4 }));
    }

    #[test]
    fn skein_on_trefoil() {
        let d = braid_closure(2, &[1, 1, 1]);
        let (p, m, z) = skein_triple(&d, 0).unwrap();
        let lhs = t(-2) * jones(&p).unwrap() - t(2) * jones(&m).unwrap();
        let rhs = (t(1) - t(-1)) * jones(&z).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(z.component_count(), 2);
    }
}
