//! Constructions that rebuild crossing lists: relabeling, braid closures,
//! blackboard parallels and cables.

use std::collections::HashMap;

use num_integer::Integer;

use super::{Crossing, Diagram, DiagramError, Edge, Sign};

/// Builds a diagram and renumbers its edges: components are ordered by the
/// representative edges in `reps` (unlisted components follow), and each
/// component is numbered consecutively from its representative.
pub(crate) fn assemble(crossings: Vec<Crossing>, free_loops: usize, reps: &[Edge]) -> Result<Diagram, DiagramError> {
    let raw = Diagram::new(crossings, free_loops)?;
    let mut starts: Vec<(usize, usize)> = Vec::new();
    for &r in reps {
        if let Some(ends) = raw.edge_ends(r) {
            if !starts.iter().any(|s| s.0 == ends.component) {
                let pos = raw.comps[ends.component].iter().position(|&e| e == r).unwrap();
                starts.push((ends.component, pos));
            }
        }
    }
    for c in 0..raw.comps.len() {
        if !starts.iter().any(|s| s.0 == c) {
            starts.push((c, 0));
        }
    }
    let mut label = HashMap::new();
    let mut next: Edge = 1;
    for (c, pos) in starts {
        let cyc = &raw.comps[c];
        for k in 0..cyc.len() {
            label.insert(cyc[(pos + k) % cyc.len()], next);
            next += 1;
        }
    }
    let crossings = raw.crossings.iter().map(|c| c.relabeled(|e| label[&e])).collect();
    Diagram::new(crossings, free_loops)
}

struct Labels(Edge);

impl Labels {
    fn fresh(&mut self) -> Edge {
        self.0 += 1;
        self.0
    }
}

/// Replaces free loops (up to component `upto`) by two-crossing curls of
/// writhe zero so they carry edges.
pub(crate) fn materialize_free_loops(d: &Diagram, upto: usize) -> Diagram {
    let crossed = d.comps.len();
    if upto < crossed || d.free_loops == 0 {
        return d.clone();
    }
    let m = (upto + 1 - crossed).min(d.free_loops);
    let mut labels = Labels(d.max_edge());
    let mut crossings = d.crossings.clone();
    let mut reps = d.reps();
    for _ in 0..m {
        let (e1, la, e2, lb) = (labels.fresh(), labels.fresh(), labels.fresh(), labels.fresh());
        crossings.push(Crossing::new([e2, e1, la, la], Sign::Positive));
        crossings.push(Crossing::new([e1, lb, lb, e2], Sign::Negative));
        reps.push(e1);
    }
    assemble(crossings, d.free_loops - m, &reps).expect("curls are valid")
}

/// Appends braid generators acting on the strand labels `cur`, listed left
/// to right. Generator `i > 0` crosses positions `i` and `i + 1` with the
/// left strand over (a positive crossing); `-i` is its inverse.
fn apply_braid(crossings: &mut Vec<Crossing>, labels: &mut Labels, cur: &mut [Edge], word: &[i32]) {
    for &g in word {
        let i = g.unsigned_abs() as usize;
        assert!(i >= 1 && i < cur.len(), "generator {g} out of range for {} strands", cur.len());
        let (l, r) = (cur[i - 1], cur[i]);
        let (a, b) = (labels.fresh(), labels.fresh());
        let c = if g > 0 {
            Crossing::from_strands(r, a, l, b, Sign::Positive)
        } else {
            Crossing::from_strands(l, b, r, a, Sign::Negative)
        };
        crossings.push(c);
        cur[i - 1] = a;
        cur[i] = b;
    }
}

/// Closure of a braid on `strands` strands. Components are ordered by the
/// leftmost position they occupy at the bottom of the braid.
///
/// # Panics
///
/// If a generator index is outside `1..strands`.
pub fn braid_closure(strands: usize, word: &[i32]) -> Diagram {
    assert!(strands >= 1);
    let mut labels = Labels(0);
    let start: Vec<Edge> = (0..strands).map(|_| labels.fresh()).collect();
    let mut cur = start.clone();
    let mut crossings = Vec::new();
    apply_braid(&mut crossings, &mut labels, &mut cur, word);
    let mut touched = vec![false; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        touched[i - 1] = true;
        touched[i] = true;
    }
    let rename: HashMap<Edge, Edge> = (0..strands).filter(|&p| touched[p]).map(|p| (cur[p], start[p])).collect();
    let crossings = crossings.into_iter().map(|c| c.relabeled(|e| *rename.get(&e).unwrap_or(&e))).collect();
    let free = touched.iter().filter(|t| !**t).count();
    let reps: Vec<Edge> = (0..strands).filter(|&p| touched[p]).map(|p| start[p]).collect();
    assemble(crossings, free, &reps).expect("braid closures are valid")
}

/// Blackboard parallel of crossed component `j` with `n` copies, copy `k`
/// pushed `k` units to the left of the strand. A braid `word` on the copies
/// (position `p` from the left is copy `n - p`) is inserted in the middle of
/// the component's first edge; for `n == 1`, `kinks` curls of that sign are
/// inserted instead. Returns the crossings and the label at which each copy
/// leaves the braid site backwards (its tail-side label).
fn parallel(d: &Diagram, j: usize, n: usize, word: &[i32], kinks: i64) -> (Vec<Crossing>, Vec<Edge>) {
    let comp = &d.comps[j];
    let e0 = comp[0];
    let in_j = |e: Edge| d.comp_of(e) == j;
    let mut labels = Labels(d.max_edge());
    let mut copy: HashMap<(Edge, usize), Edge> = HashMap::new();
    for &e in comp {
        for k in 0..n {
            copy.insert((e, k), labels.fresh());
        }
    }
    let heads: Vec<Edge> = (0..n).map(|_| labels.fresh()).collect();
    // label of copy k of e at an occurrence that is (or is not) e's head
    let lbl = |e: Edge, k: usize, incoming: bool| if e == e0 && incoming { heads[k] } else { copy[&(e, k)] };

    let mut out = Vec::new();
    for c in &d.crossings {
        let (ui, uo, oi, oo) = (c.under_in(), c.under_out(), c.over_in(), c.over_out());
        let (under_j, over_j) = (in_j(ui), in_j(oi));
        let pos = c.sign == Sign::Positive;
        match (under_j, over_j) {
            (false, false) => out.push(*c),
            (true, false) => {
                // the over-strand is cut by every copy; piece 0 is the slot-1 edge
                let mut o = vec![c.pd[1]];
                o.extend((1..n).map(|_| labels.fresh()));
                o.push(c.pd[3]);
                for k in 0..n {
                    out.push(Crossing::new([lbl(ui, k, true), o[k], lbl(uo, k, false), o[k + 1]], c.sign));
                }
            }
            (false, true) => {
                let mut u = vec![ui];
                u.extend((1..n).map(|_| labels.fresh()));
                u.push(uo);
                let (b, dd) = (c.pd[1], c.pd[3]);
                let b_in = !pos;
                for m in 0..n {
                    let l = if pos { m } else { n - 1 - m };
                    out.push(Crossing::new([u[m], lbl(b, l, b_in), u[m + 1], lbl(dd, l, !b_in)], c.sign));
                }
            }
            (true, true) => {
                let mut u: Vec<Vec<Edge>> = Vec::new();
                let mut v: Vec<Vec<Edge>> = Vec::new();
                for k in 0..n {
                    let mut row = vec![lbl(ui, k, true)];
                    row.extend((1..n).map(|_| labels.fresh()));
                    row.push(lbl(uo, k, false));
                    u.push(row);
                    let mut row = vec![lbl(oi, k, true)];
                    row.extend((1..n).map(|_| labels.fresh()));
                    row.push(lbl(oo, k, false));
                    v.push(row);
                }
                for k in 0..n {
                    for l in 0..n {
                        let (iu, io) = if pos { (l, n - 1 - k) } else { (n - 1 - l, k) };
                        let pd = if pos {
                            [u[k][iu], v[l][io + 1], u[k][iu + 1], v[l][io]]
                        } else {
                            [u[k][iu], v[l][io], u[k][iu + 1], v[l][io + 1]]
                        };
                        out.push(Crossing::new(pd, c.sign));
                    }
                }
            }
        }
    }
    let tails: Vec<Edge> = (0..n).map(|k| copy[&(e0, k)]).collect();
    let mut cur: Vec<Edge> = (0..n).map(|p| tails[n - 1 - p]).collect();
    apply_braid(&mut out, &mut labels, &mut cur, word);
    if n == 1 {
        for _ in 0..kinks.unsigned_abs() {
            let (lp, o) = (labels.fresh(), labels.fresh());
            out.push(if kinks > 0 {
                Crossing::new([cur[0], o, lp, lp], Sign::Positive)
            } else {
                Crossing::new([cur[0], lp, lp, o], Sign::Negative)
            });
            cur[0] = o;
        }
    }
    let rename: HashMap<Edge, Edge> = (0..n).map(|p| (heads[n - 1 - p], cur[p])).collect();
    let out = out.into_iter().map(|c| c.relabeled(|e| *rename.get(&e).unwrap_or(&e))).collect();
    (out, tails)
}

fn check_cable(d: &Diagram, j: usize, p: i64, q: i64) -> Result<(), DiagramError> {
    d.check_component(j)?;
    if q <= 0 {
        return Err(DiagramError::NonPositiveStrands(q));
    }
    if p.gcd(&q) != 1 {
        return Err(DiagramError::NotCoprime { p, q });
    }
    Ok(())
}

fn twist_word(strands: usize, k: i64, extra: &[i32]) -> Vec<i32> {
    let mut gamma: Vec<i32> = (1..strands as i32).collect();
    gamma.extend_from_slice(extra);
    let unit: Vec<i32> = if k >= 0 { gamma } else { gamma.iter().rev().map(|g| -g).collect() };
    unit.iter().copied().cycle().take(unit.len() * k.unsigned_abs() as usize).collect()
}

/// Replaces component `j` by its `(p, q)` cable: `q` longitudes and `p`
/// meridians with respect to the Seifert framing.
pub(crate) fn cable(d: &Diagram, j: usize, p: i64, q: i64) -> Result<Diagram, DiagramError> {
    check_cable(d, j, p, q)?;
    let d = materialize_free_loops(d, j);
    let k = p - q * d.writhe(Some(j));
    let n = q as usize;
    let (crossings, tails) =
        if n == 1 { parallel(&d, j, 1, &[], k) } else { parallel(&d, j, n, &twist_word(n, k, &[]), 0) };
    let mut reps = d.reps();
    reps[j] = tails[0];
    assemble(crossings, d.free_loops, &reps)
}

/// Adds a `(p, q)` curve on the boundary torus of component `j` as the last
/// component, keeping `j` itself.
pub(crate) fn cable_curve(d: &Diagram, j: usize, p: i64, q: i64) -> Result<Diagram, DiagramError> {
    check_cable(d, j, p, q)?;
    let d = materialize_free_loops(d, d.component_count() - 1);
    let k = p - q * d.writhe(Some(j));
    let n = q as usize + 1;
    let qi = q as i32;
    let (crossings, tails) = parallel(&d, j, n, &twist_word(n - 1, k, &[qi, qi]), 0);
    let mut reps = d.reps();
    reps[j] = tails[0];
    reps.push(tails[1]);
    assemble(crossings, 0, &reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_components() {
        let h = braid_closure(2, &[1, 1]);
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.crossing_count(), 2);
        let t = braid_closure(2, &[1, 1, 1]);
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.writhe(None), 3);
        let u = braid_closure(3, &[1]);
        assert_eq!(u.component_count(), 2);
        assert_eq!(u.free_loops(), 1);
    }

    #[test]
    fn materialized_loop_has_zero_writhe() {
        let d = materialize_free_loops(&Diagram::unlink(2), 1);
        assert_eq!(d.free_loops(), 0);
        assert_eq!(d.crossing_count(), 4);
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.writhe(None), 0);
        assert!(d.is_planar());
    }

    #[test]
    fn cable_linking_numbers() {
        // (p, q) cable of the unknot is the (p, q) torus knot: one component
        let c = cable(&Diagram::unknot(), 0, 3, 2).unwrap();
        assert_eq!(c.component_count(), 1);
        assert!(c.is_planar());
        // cabling one Hopf component q times multiplies linking by q
        let h = braid_closure(2, &[1, 1]);
        let c = cable(&h, 0, 1, 3).unwrap();
        assert_eq!(c.linking_matrix()[0][1], 3);
        assert!(c.is_planar());
    }

    #[test]
    fn cable_rejects_bad_input() {
        let u = Diagram::unknot();
        assert_eq!(cable(&u, 0, 2, 4), Err(DiagramError::NotCoprime { p: 2, q: 4 }));
        assert_eq!(cable(&u, 0, 1, 0), Err(DiagramError::NonPositiveStrands(0)));
        assert_eq!(cable(&u, 3, 1, 2), Err(DiagramError::BadComponent(3)));
    }

    #[test]
    fn cable_curve_links_core() {
        let t = braid_closure(2, &[1, 1, 1]);
        for (p, q) in [(1, 1), (5, 2), (-3, 2), (0, 1)] {
            let d = cable_curve(&t, 0, p, q).unwrap();
            assert_eq!(d.component_count(), 2);
            assert_eq!(d.linking_matrix()[0][1], p, "({p},{q})");
            assert_eq!(d.writhe(Some(0)), 3);
            assert!(d.is_planar());
        }
    }
}
