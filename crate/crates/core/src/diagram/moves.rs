//! Removing and inserting crossings: Reidemeister I and II, and the shared
//! edge-merging step behind smoothing and sublinks.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{build, Crossing, Diagram, DiagramError, Edge, Sign};

/// Side of an oriented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Self {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

pub(crate) struct Excised {
    pub crossings: Vec<Crossing>,
    pub new_loops: usize,
    rename: HashMap<Edge, Edge>,
    /// Classes that closed up with no crossing left; one label per loop.
    pub loop_labels: Vec<Edge>,
}

impl Excised {
    /// Surviving label for an old edge, if it still lies on a crossing.
    pub fn rename(&self, e: Edge) -> Option<Edge> {
        let r = *self.rename.get(&e).unwrap_or(&e);
        self.crossings.iter().any(|c| c.pd.contains(&r)).then_some(r)
    }
}

/// Deletes crossings and glues edge ends: each pair in `merges` names two
/// edges whose ends at deleted crossings become joined. Classes left with no
/// occurrence become free loops.
pub(crate) fn excise(crossings: &[Crossing], remove: &[usize], merges: &[(Edge, Edge)]) -> Excised {
    let mut parent: BTreeMap<Edge, Edge> = BTreeMap::new();
    fn find(p: &mut BTreeMap<Edge, Edge>, a: Edge) -> Edge {
        let mut r = a;
        while let Some(&q) = p.get(&r) {
            if q == r {
                break;
            }
            r = q;
        }
        p.insert(a, r);
        r
    }
    for &(a, b) in merges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            parent.insert(hi, lo);
            parent.insert(lo, lo);
        }
    }
    let keys: Vec<Edge> = parent.keys().copied().collect();
    let rename: HashMap<Edge, Edge> = keys.iter().map(|&e| (e, find(&mut parent, e))).collect();
    let kept: Vec<Crossing> = crossings
        .iter()
        .enumerate()
        .filter(|(x, _)| !remove.contains(x))
        .map(|(_, c)| c.relabeled(|e| *rename.get(&e).unwrap_or(&e)))
        .collect();
    let mut roots: Vec<Edge> = rename.values().copied().collect();
    roots.sort_unstable();
    roots.dedup();
    let loop_labels: Vec<Edge> = roots.into_iter().filter(|r| !kept.iter().any(|c| c.pd.contains(r))).collect();
    Excised { crossings: kept, new_loops: loop_labels.len(), rename, loop_labels }
}

fn find_r1(faces: &super::Faces) -> Option<usize> {
    (0..faces.count()).find(|&f| faces.boundary(f).len() == 1).map(|f| faces.boundary(f)[0].0)
}

// A bigon whose one edge is over at both of its crossings and whose other edge
// is under at both. Returns the two crossings and the two edges.
fn find_r2(d: &[Crossing], faces: &super::Faces) -> Option<(usize, usize, usize, usize)> {
    let over = |x: usize, s: usize| s % 2 == 1 && x < d.len();
    for f in 0..faces.count() {
        let b = faces.boundary(f);
        if b.len() != 2 {
            continue;
        }
        let [(x, s), (y, t)] = [b[0], b[1]];
        if x == y {
            continue;
        }
        let (e, g) = (d[x].pd[s], d[y].pd[t]);
        if e == g {
            continue;
        }
        // each edge has one end at x and one at y
        let (ex, ey) = (faces.partner(x, s), (x, s));
        let (gy, gx) = (faces.partner(y, t), (y, t));
        if ex.0 != y || gy.0 != x {
            continue;
        }
        let e_over = over(ex.0, ex.1) && over(ey.0, ey.1);
        let e_under = !over(ex.0, ex.1) && !over(ey.0, ey.1);
        let g_over = over(gx.0, gx.1) && over(gy.0, gy.1);
        let g_under = !over(gx.0, gx.1) && !over(gy.0, gy.1);
        if (e_over && g_under) || (e_under && g_over) {
            return Some((x, s, y, t));
        }
    }
    None
}

/// Repeatedly removes Reidemeister I curls and Reidemeister II bigons.
/// Returns the result and, for every old component, its new index.
pub(crate) fn simplify(d: &Diagram) -> (Diagram, Vec<usize>) {
    let ncomp = d.component_count();
    let crossed = d.crossed_component_count();
    let mut owner: HashMap<Edge, usize> = d.edges().map(|e| (e, d.comp_of(e))).collect();
    let mut crossings = d.crossings.clone();
    let mut loop_owner: Vec<usize> = Vec::new();
    loop {
        let faces = super::Faces::new(&crossings);
        let (remove, merges) = if let Some(x) = find_r1(&faces) {
            let c = crossings[x];
            // the lobe occupies two adjacent slots; glue the other two edges
            let lobe = (0..4).find(|&s| c.pd[s] == c.pd[(s + 1) % 4]).expect("curl");
            let (a, b) = (c.pd[(lobe + 2) % 4], c.pd[(lobe + 3) % 4]);
            (vec![x], vec![(a, b)])
        } else if let Some((x, s, y, t)) = find_r2(&crossings, &faces) {
            let e_x = crossings[x].pd[(s + 2) % 4];
            let (py, ps) = faces.partner(x, s);
            let e_y = crossings[py].pd[(ps + 2) % 4];
            let g_y = crossings[y].pd[(t + 2) % 4];
            let (qx, qs) = faces.partner(y, t);
            let g_x = crossings[qx].pd[(qs + 2) % 4];
            (vec![x, y], vec![(e_x, e_y), (g_y, g_x)])
        } else {
            break;
        };
        let ex = excise(&crossings, &remove, &merges);
        for &l in &ex.loop_labels {
            loop_owner.push(owner[&l]);
        }
        for (&old, &new) in &ex.rename {
            let o = owner[&old];
            owner.insert(new, o);
        }
        crossings = ex.crossings;
    }
    // surviving crossed components, in old order
    let mut survivors: Vec<(usize, Edge)> = Vec::new();
    for c in &crossings {
        for &e in &c.pd {
            let o = owner[&e];
            if !survivors.iter().any(|s| s.0 == o) {
                survivors.push((o, e));
            }
        }
    }
    survivors.sort_unstable();
    let mut loops: Vec<usize> = loop_owner;
    loops.extend(crossed..ncomp);
    loops.sort_unstable();
    let mut index = vec![0; ncomp];
    for (k, &(o, _)) in survivors.iter().enumerate() {
        index[o] = k;
    }
    for (k, &o) in loops.iter().enumerate() {
        index[o] = survivors.len() + k;
    }
    let reps: Vec<Edge> = survivors.iter().map(|s| s.1).collect();
    let out = build::assemble(crossings, loops.len(), &reps).expect("simplification keeps validity");
    (out, index)
}

/// Inserts a curl of the given sign into edge `e`, with its lobe on `side`.
pub(crate) fn insert_kink(d: &Diagram, e: Edge, sign: Sign, side: Side) -> Result<Diagram, DiagramError> {
    let ends = d.edge_ends(e).ok_or(DiagramError::BadEdge(e))?;
    let mut crossings = d.crossings.clone();
    let (lp, out) = (d.max_edge() + 1, d.max_edge() + 2);
    crossings[ends.head.0].pd[ends.head.1] = out;
    let pd = match (sign, side) {
        (Sign::Positive, Side::Left) => [e, out, lp, lp],
        (Sign::Negative, Side::Right) => [e, lp, lp, out],
        (Sign::Positive, Side::Right) => [lp, lp, out, e],
        (Sign::Negative, Side::Left) => [lp, e, out, lp],
    };
    crossings.push(Crossing::new(pd, sign));
    build::assemble(crossings, d.free_loops, &d.reps())
}
