//! Seeded random diagrams, moves and framed links for property checks.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{braid_closure, finger_move, Diagram, Edge, Layer, Side, Sign};
use crate::surgery::{AbstractLink, Body, FramedLink, Slope};

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn random_side(rng: &mut impl Rng) -> Side {
    if rng.gen_bool(0.5) {
        Side::Left
    } else {
        Side::Right
    }
}

/// Closure of a random braid word of the given length on `strands` strands.
pub fn random_braid_closure(rng: &mut impl Rng, strands: usize, len: usize) -> Diagram {
    if strands < 2 {
        return Diagram::unknot();
    }
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    braid_closure(strands, &word)
}

/// Inserts a curl of random sign and side on a random edge.
pub fn random_r1(rng: &mut impl Rng, d: &Diagram) -> Diagram {
    let d = d.materialize_free_loops(d.component_count() - 1);
    let edges: Vec<Edge> = d.edges().collect();
    let e = *edges.choose(rng).expect("materialized diagrams have edges");
    d.insert_kink(e, random_sign(rng), random_side(rng)).expect("edge exists")
}

/// Pushes a finger of a random edge over or under a neighbouring edge of
/// one of its faces.
pub fn random_r2(rng: &mut impl Rng, d: &Diagram) -> Diagram {
    let d = d.materialize_free_loops(d.component_count() - 1);
    let faces = d.faces();
    let edges: Vec<Edge> = d.edges().collect();
    loop {
        let e = *edges.choose(rng).unwrap();
        let side = random_side(rng);
        let ends = d.edge_ends(e).unwrap();
        let (x, s) = if side == Side::Left { ends.head } else { ends.tail };
        let face = faces.dart_face(x, s);
        let others: Vec<Edge> = faces.boundary_edges(face).filter(|&g| g != e).collect();
        let Some(&g) = others.choose(rng) else { continue };
        let layer = if rng.gen_bool(0.5) { Layer::Over } else { Layer::Under };
        if let Ok(m) = finger_move(&d, e, side, &[(g, layer)]) {
            return m;
        }
    }
}

/// A random R1 or R2 insertion.
pub fn random_move(rng: &mut impl Rng, d: &Diagram) -> Diagram {
    if rng.gen_bool(0.5) {
        random_r1(rng, d)
    } else {
        random_r2(rng, d)
    }
}

/// A random diagram with at most `max_crossings` crossings: a braid closure
/// on up to four strands, sometimes decorated by curls and fingers so the
/// result is not in braid form.
pub fn random_diagram(rng: &mut impl Rng, max_crossings: usize) -> Diagram {
    let strands = rng.gen_range(1..=4);
    let budget = rng.gen_range(0..=max_crossings);
    let len = if strands < 2 { 0 } else { budget.saturating_sub(rng.gen_range(0..=budget.min(4))) };
    let mut d = random_braid_closure(rng, strands, len);
    let cost = |d: &Diagram| d.crossing_count() + 2 * d.free_loops();
    while cost(&d) + 2 <= budget && rng.gen_bool(0.3) {
        d = random_move(rng, &d);
    }
    while cost(&d) < budget && rng.gen_bool(0.5) {
        d = random_r1(rng, &d);
    }
    d
}

/// A random diagram with at least two components.
pub fn random_multi_component(rng: &mut impl Rng, max_crossings: usize) -> Diagram {
    loop {
        let d = random_diagram(rng, max_crossings);
        if d.component_count() >= 2 {
            return d;
        }
    }
}

/// A random reduced finite slope with `|p|, q <= bound`.
pub fn random_slope(rng: &mut impl Rng, bound: i64) -> Slope {
    loop {
        let (p, q) = (rng.gen_range(-bound..=bound), rng.gen_range(1..=bound));
        if p.gcd(&q) == 1 {
            return Slope::new(p, q).unwrap();
        }
    }
}

/// Random abstract framed link on `2..=max_n` components.
pub fn random_framed_link(rng: &mut impl Rng, max_n: usize, lk_bound: i64, slope_bound: i64) -> FramedLink {
    let n = rng.gen_range(2..=max_n);
    let mut lk = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-lk_bound..=lk_bound);
            lk[i][j] = v;
            lk[j][i] = v;
        }
    }
    let slopes = (0..n).map(|_| random_slope(rng, slope_bound)).collect();
    FramedLink::new(Body::Abstract(AbstractLink::new(lk).unwrap()), slopes).unwrap()
}
