//! Band sums and finger moves.
//!
//! A band leaves an edge from one of its sides, crosses a sequence of edges
//! (each face to face) and either attaches to an edge of another component
//! or turns back on itself. Locally the band core is drawn heading north;
//! its two boundary arcs run up (outgoing) and down (returning).

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::faces::Faces;
use super::{build, Crossing, Diagram, DiagramError, Edge, Side, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    Over,
    Under,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSpec {
    pub from_edge: Edge,
    pub to_edge: Edge,
    /// Edges crossed by the band, in order, and whether the band passes over them.
    pub path: Vec<(Edge, Layer)>,
    pub half_twists: i64,
}

fn bad(msg: impl Into<String>) -> DiagramError {
    DiagramError::BadBand(msg.into())
}

pub(crate) fn side_face(d: &Diagram, faces: &Faces, e: Edge, side: Side) -> usize {
    let ends = d.edge_ends(e).expect("edge exists");
    let (x, s) = match side {
        Side::Left => ends.head,
        Side::Right => ends.tail,
    };
    faces.dart_face(x, s)
}

/// Walks the band across `path` starting from `side` of `from`. Returns the
/// side each path edge is entered from and the face reached.
fn simulate(d: &Diagram, faces: &Faces, from: Edge, side: Side, path: &[(Edge, Layer)]) -> Option<(Vec<Side>, usize)> {
    let mut cur = side_face(d, faces, from, side);
    let mut enter = Vec::new();
    for &(f, _) in path {
        let (l, r) = (side_face(d, faces, f, Side::Left), side_face(d, faces, f, Side::Right));
        if l == cur || faces.piece_of_face(l) != faces.piece_of_face(cur) {
            enter.push(Side::Left);
            cur = r;
        } else if r == cur {
            enter.push(Side::Right);
            cur = l;
        } else {
            return None;
        }
    }
    Some((enter, cur))
}

enum Finish {
    Attach(Edge),
    TurnBack,
}

fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Crossing of two oriented strands given as `(in, out, direction)`; the
/// first strand is over.
fn geometric(over: (Edge, Edge, (i64, i64)), under: (Edge, Edge, (i64, i64))) -> Crossing {
    let sign = if cross(over.2, under.2) > 0 { Sign::Positive } else { Sign::Negative };
    Crossing::from_strands(under.0, under.1, over.0, over.1, sign)
}

/// Builds the band crossings. Returns the new crossing list and the indices of
/// the half-twist crossings.
fn route(
    d: &Diagram,
    from: Edge,
    side: Side,
    path: &[(Edge, Layer)],
    enter: &[Side],
    half_twists: i64,
    finish: Finish,
) -> (Vec<Crossing>, Vec<usize>) {
    let mut next = d.max_edge();
    let mut fresh = || {
        next += 1;
        next
    };
    let mut crossings = d.crossings.clone();
    let relabel_head = |crossings: &mut Vec<Crossing>, e: Edge, to: Edge| {
        let (x, s) = d.edge_ends(e).unwrap().head;
        crossings[x].pd[s] = to;
    };
    let twists = half_twists.unsigned_abs() as usize;
    let events = twists + path.len();
    let mut o = vec![from];
    o.extend((1..events).map(|_| fresh()));
    let mut r = Vec::new();
    match finish {
        Finish::Attach(to) => {
            if events > 0 {
                o.push(fresh());
            }
            r.push(to);
            r.extend((1..events).map(|_| fresh()));
            if events > 0 {
                r.push(fresh());
            }
            relabel_head(&mut crossings, to, o[events]);
        }
        Finish::TurnBack => {
            if events > 0 {
                o.push(fresh());
            }
            r.push(o[events]);
            r.extend((1..events).map(|_| fresh()));
            if events > 0 {
                r.push(fresh());
            }
        }
    }
    relabel_head(&mut crossings, from, r[events]);
    let mut f_pieces = Vec::new();
    for &(f, _) in path {
        let (f1, f2) = (fresh(), fresh());
        relabel_head(&mut crossings, f, f2);
        f_pieces.push([f, f1, f2]);
    }

    let n0 = crossings.len();
    let desired = if half_twists >= 0 { 1 } else { -1 };
    let flip = |s: Side, odd: bool| if odd { s.opposite() } else { s };
    let mut k = 0;
    for t in 0..twists {
        k += 1;
        let sigma = flip(side, t % 2 == 1);
        let (od, rd) = match sigma {
            Side::Left => ((1, 1), (1, -1)),
            Side::Right => ((-1, 1), (-1, -1)),
        };
        let out = (o[k - 1], o[k], od);
        let ret = (r[events - k], r[events - k + 1], rd);
        let c = if cross(od, rd).signum() == desired { geometric(out, ret) } else { geometric(ret, out) };
        crossings.push(c);
    }
    let sigma = flip(side, twists % 2 == 1);
    for (idx, &(_, layer)) in path.iter().enumerate() {
        k += 1;
        let east = enter[idx] == Side::Right;
        let fd = if east { (1, 0) } else { (-1, 0) };
        let out = (o[k - 1], o[k], (0, 1));
        let ret = (r[events - k], r[events - k + 1], (0, -1));
        // an eastward edge meets the west (left) arc first
        let out_first = (sigma == Side::Left) == east;
        let order = if out_first { [out, ret] } else { [ret, out] };
        let p = f_pieces[idx];
        for (m, arc) in order.into_iter().enumerate() {
            let strand = (p[m], p[m + 1], fd);
            crossings.push(match layer {
                Layer::Over => geometric(arc, strand),
                Layer::Under => geometric(strand, arc),
            });
        }
    }
    (crossings, (n0..n0 + twists).collect())
}

fn check_path(d: &Diagram, from: Edge, to: Option<Edge>, path: &[(Edge, Layer)]) -> Result<(), DiagramError> {
    let mut seen = Vec::new();
    for &(f, _) in path {
        if d.edge_ends(f).is_none() {
            return Err(bad(format!("path edge {f} does not exist")));
        }
        if f == from || Some(f) == to || seen.contains(&f) {
            return Err(bad(format!("path edge {f} repeats or is an end of the band")));
        }
        seen.push(f);
    }
    Ok(())
}

pub(crate) fn band_sum(d: &Diagram, i: usize, target: usize, band: &BandSpec) -> Result<(Diagram, Vec<usize>), DiagramError> {
    d.check_component(i)?;
    d.check_component(target)?;
    if i == target {
        return Err(bad("band joins a component to itself"));
    }
    if d.is_free_loop(i) || d.is_free_loop(target) {
        return Err(bad("free loops carry no edges; materialize them first"));
    }
    let (from, to) = (band.from_edge, band.to_edge);
    if d.edge_ends(from).map(|e| e.component) != Some(i) {
        return Err(bad(format!("edge {from} is not on component {i}")));
    }
    if d.edge_ends(to).map(|e| e.component) != Some(target) {
        return Err(bad(format!("edge {to} is not on component {target}")));
    }
    check_path(d, from, Some(to), &band.path)?;
    let faces = d.faces();
    let odd = band.half_twists % 2 != 0;
    let mut chosen = None;
    for side in [Side::Left, Side::Right] {
        if let Some((enter, cur)) = simulate(d, &faces, from, side, &band.path) {
            let need = if odd { side.opposite() } else { side };
            let end = side_face(d, &faces, to, need);
            if end == cur || faces.piece_of_face(end) != faces.piece_of_face(cur) {
                chosen = Some((side, enter));
                break;
            }
        }
    }
    let Some((side, enter)) = chosen else {
        return Err(bad("band path is not a face sequence compatible with the orientations"));
    };
    let (crossings, twists) = route(d, from, side, &band.path, &enter, band.half_twists, Finish::Attach(to));
    let reps: Vec<Edge> = d
        .reps()
        .into_iter()
        .enumerate()
        .filter(|&(m, _)| m != target)
        .map(|(m, e)| if m == i { from } else { e })
        .collect();
    Ok((build::assemble(crossings, d.free_loops, &reps)?, twists))
}

/// Pushes a finger of edge `from`, leaving on `side`, across `path`.
/// With one edge under (or over) the finger this is a second Reidemeister move.
pub fn finger_move(d: &Diagram, from: Edge, side: Side, path: &[(Edge, Layer)]) -> Result<Diagram, DiagramError> {
    if d.edge_ends(from).is_none() {
        return Err(DiagramError::BadEdge(from));
    }
    check_path(d, from, None, path)?;
    let faces = d.faces();
    let (enter, _) = simulate(d, &faces, from, side, path).ok_or_else(|| bad("finger path is not a face sequence"))?;
    let (crossings, _) = route(d, from, side, path, &enter, 0, Finish::TurnBack);
    build::assemble(crossings, d.free_loops, &d.reps())
}

#[derive(Clone, Copy)]
enum Pred {
    Start(Edge, Side),
    Step(usize, Edge),
}

/// A band from component `i` to component `target` found by breadth-first
/// search over faces, passing over every edge it crosses. Adds one half-twist
/// when the reached sides would otherwise be incompatible.
pub fn find_band(d: &Diagram, i: usize, target: usize) -> Result<BandSpec, DiagramError> {
    d.check_component(i)?;
    d.check_component(target)?;
    if i == target || d.is_free_loop(i) || d.is_free_loop(target) {
        return Err(bad("band needs two distinct crossed components"));
    }
    let faces = d.faces();
    let ci = d.component_edges(i).to_vec();
    let ct = d.component_edges(target).to_vec();
    let piece = |e: Edge| faces.piece_of_crossing(d.edge_ends(e).unwrap().head.0);
    if piece(ci[0]) != piece(ct[0]) {
        return Ok(BandSpec { from_edge: ci[0], to_edge: ct[0], path: Vec::new(), half_twists: 0 });
    }
    let sides = [Side::Left, Side::Right];
    let mut pred: HashMap<usize, Pred> = HashMap::new();
    let mut queue = VecDeque::new();
    for &e in &ci {
        for s in sides {
            let f = side_face(d, &faces, e, s);
            if let std::collections::hash_map::Entry::Vacant(v) = pred.entry(f) {
                v.insert(Pred::Start(e, s));
                queue.push_back(f);
            }
        }
    }
    while let Some(f) = queue.pop_front() {
        let ends: Vec<(Edge, Side)> = ct
            .iter()
            .flat_map(|&t| sides.map(|s| (t, s)))
            .filter(|&(t, s)| side_face(d, &faces, t, s) == f)
            .collect();
        if !ends.is_empty() {
            let mut path = Vec::new();
            let mut g = f;
            let (from, start) = loop {
                match pred[&g] {
                    Pred::Start(e, s) => break (e, s),
                    Pred::Step(prev, edge) => {
                        path.push((edge, Layer::Over));
                        g = prev;
                    }
                }
            };
            path.reverse();
            let need = start;
            let (to, twist) = match ends.iter().find(|e| e.1 == need) {
                Some(&(t, _)) => (t, 0),
                None => (ends[0].0, 1),
            };
            return Ok(BandSpec { from_edge: from, to_edge: to, path, half_twists: twist });
        }
        for &(x, s) in faces.boundary(f) {
            let g = d.crossings[x].pd[s];
            let c = d.comp_of(g);
            if c == i || c == target {
                continue;
            }
            let ends = d.edge_ends(g).unwrap();
            let other = if ends.head == (x, s) { ends.tail } else { ends.head };
            let nf = faces.dart_face(other.0, other.1);
            if let std::collections::hash_map::Entry::Vacant(v) = pred.entry(nf) {
                v.insert(Pred::Step(f, g));
                queue.push_back(nf);
            }
        }
    }
    Err(bad("no face path between the components"))
}

#[cfg(test)]
mod tests {
    use super::super::braid_closure;
    use super::*;

    #[test]
    fn unlink_band_gives_unknot() {
        let d = Diagram::unlink(2).materialize_free_loops(1);
        let band = BandSpec {
            from_edge: d.component_edges(0)[0],
            to_edge: d.component_edges(1)[0],
            path: vec![],
            half_twists: 0,
        };
        let s = d.band_sum(0, 1, &band).unwrap();
        assert_eq!(s.component_count(), 1);
        assert!(s.is_planar());
    }

    #[test]
    fn twisted_band_records_crossings() {
        let d = Diagram::unlink(2).materialize_free_loops(1);
        let band = BandSpec { from_edge: 1, to_edge: 5, path: vec![], half_twists: 2 };
        let (s, tw) = d.band_sum_traced(0, 1, &band).unwrap();
        assert_eq!(tw, vec![4, 5]);
        assert_eq!(s.crossings()[4].sign, Sign::Positive);
        assert_eq!(s.crossings()[5].sign, Sign::Positive);
        assert!(s.is_planar());
    }

    #[test]
    fn odd_twists_flip_compatibility() {
        let d = Diagram::unlink(2).materialize_free_loops(1);
        // different pieces: any twist count is allowed
        let band = BandSpec { from_edge: 1, to_edge: 5, path: vec![], half_twists: 1 };
        assert!(d.band_sum(0, 1, &band).is_ok());
    }

    #[test]
    fn band_rejects_bad_edges() {
        let h = braid_closure(2, &[1, 1]);
        let band = BandSpec { from_edge: 1, to_edge: 1, path: vec![], half_twists: 0 };
        assert!(matches!(h.band_sum(0, 1, &band), Err(DiagramError::BadBand(_))));
        assert!(matches!(h.band_sum(0, 0, &band), Err(DiagramError::BadBand(_))));
    }

    #[test]
    fn found_band_applies() {
        let d = braid_closure(3, &[1, 1, 2, 2]);
        for (i, t) in [(0, 1), (1, 2), (0, 2), (2, 0)] {
            let band = find_band(&d, i, t).unwrap();
            let s = d.band_sum(i, t, &band).unwrap();
            assert_eq!(s.component_count(), 2);
            assert!(s.is_planar());
        }
    }

    #[test]
    fn finger_adds_two_crossings() {
        let d = braid_closure(2, &[1, 1, 1]);
        let e = d.component_edges(0)[0];
        let faces = d.faces();
        for side in [Side::Left, Side::Right] {
            let f = side_face(&d, &faces, e, side);
            let g = faces.boundary_edges(f).find(|&g| g != e).unwrap();
            for layer in [Layer::Over, Layer::Under] {
                let m = finger_move(&d, e, side, &[(g, layer)]).unwrap();
                assert_eq!(m.crossing_count(), 5);
                assert_eq!(m.writhe(None), 3);
                assert!(m.is_planar());
            }
        }
    }
}
