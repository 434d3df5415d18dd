//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing lists its four incident edges counterclockwise, starting at the
//! incoming under-strand. Orientation of the over-strand is stored as the
//! crossing sign: a positive crossing has its over-strand running from slot 3
//! to slot 1.
//!
//! Planarity of the crossing data is trusted, not checked, on construction.
//! All generators in this crate emit planar codes; [`Diagram::is_planar`]
//! is available as an explicit check.

mod band;
mod build;
mod faces;
mod moves;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use band::{find_band, finger_move, BandSpec, Layer};
pub use build::braid_closure;
pub use faces::Faces;
pub use moves::Side;

pub type Edge = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("edge {edge} occurs {count} times, expected 2")]
    EdgeDegree { edge: Edge, count: usize },
    #[error("orientation does not close up along edge {0}")]
    TraceFailure(Edge),
    #[error("components {0} and {1} cross an odd number of times")]
    LinkingParity(usize, usize),
    #[error("diagram has no components")]
    Empty,
    #[error("no component {0}")]
    BadComponent(usize),
    #[error("no crossing {0}")]
    BadCrossing(usize),
    #[error("no edge {0}")]
    BadEdge(Edge),
    #[error("gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("cable needs a positive number of strands, got {0}")]
    NonPositiveStrands(i64),
    #[error("bad band: {0}")]
    BadBand(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn of(v: i64) -> Option<Self> {
        match v.signum() {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub pd: [Edge; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(pd: [Edge; 4], sign: Sign) -> Self {
        Self { pd, sign }
    }

    /// The unique PD tuple for two oriented strands with the given over/under
    /// roles and sign.
    pub fn from_strands(under_in: Edge, under_out: Edge, over_in: Edge, over_out: Edge, sign: Sign) -> Self {
        let pd = match sign {
            Sign::Positive => [under_in, over_out, under_out, over_in],
            Sign::Negative => [under_in, over_in, under_out, over_out],
        };
        Self { pd, sign }
    }

    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        4 - self.over_in_slot()
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    pub fn under_in(&self) -> Edge {
        self.pd[0]
    }

    pub fn under_out(&self) -> Edge {
        self.pd[2]
    }

    pub fn over_in(&self) -> Edge {
        self.pd[self.over_in_slot()]
    }

    pub fn over_out(&self) -> Edge {
        self.pd[self.over_out_slot()]
    }

    /// Exchanges over and under, keeping both strand orientations.
    pub fn switched(&self) -> Self {
        Self::from_strands(self.over_in(), self.over_out(), self.under_in(), self.under_out(), self.sign.flip())
    }

    fn relabeled(&self, f: impl Fn(Edge) -> Edge) -> Self {
        Self { pd: self.pd.map(f), sign: self.sign }
    }
}

/// Where an edge starts and ends: `(crossing, slot)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEnds {
    pub tail: (usize, usize),
    pub head: (usize, usize),
    pub component: usize,
}

/// An oriented link diagram. Immutable; every operation returns a new value.
#[derive(Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    comps: Vec<Vec<Edge>>,
    ends: BTreeMap<Edge, EdgeEnds>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings && self.free_loops == other.free_loops
    }
}

impl Eq for Diagram {}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.crossings.hash(state);
        self.free_loops.hash(state);
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({})", self.to_pd_string())
    }
}

fn occurrences(pd: &[[Edge; 4]]) -> BTreeMap<Edge, Vec<(usize, usize)>> {
    let mut occ: BTreeMap<Edge, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, c) in pd.iter().enumerate() {
        for (s, &e) in c.iter().enumerate() {
            occ.entry(e).or_default().push((x, s));
        }
    }
    occ
}

fn degree_errors(occ: &BTreeMap<Edge, Vec<(usize, usize)>>) -> Vec<DiagramError> {
    occ.iter()
        .filter(|(_, v)| v.len() != 2)
        .map(|(&edge, v)| DiagramError::EdgeDegree { edge, count: v.len() })
        .collect()
}

/// Checks degree, orientation and linking-parity conditions on signed crossings.
pub fn validate(crossings: &[Crossing], free_loops: usize) -> Result<(), Vec<DiagramError>> {
    Diagram::build(crossings.to_vec(), free_loops).map(|_| ())
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        Self::build(crossings, free_loops).map_err(|mut e| e.swap_remove(0))
    }

    fn build(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, Vec<DiagramError>> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(vec![DiagramError::Empty]);
        }
        let pd: Vec<[Edge; 4]> = crossings.iter().map(|c| c.pd).collect();
        let occ = occurrences(&pd);
        let errs = degree_errors(&occ);
        if !errs.is_empty() {
            return Err(errs);
        }
        let mut heads: HashMap<Edge, (usize, usize)> = HashMap::new();
        let mut tails: HashMap<Edge, (usize, usize)> = HashMap::new();
        let mut errs = Vec::new();
        for (x, c) in crossings.iter().enumerate() {
            for s in 0..4 {
                let e = c.pd[s];
                let slot = if c.is_incoming(s) { &mut heads } else { &mut tails };
                if slot.insert(e, (x, s)).is_some() {
                    errs.push(DiagramError::TraceFailure(e));
                }
            }
        }
        if !errs.is_empty() {
            errs.dedup();
            return Err(errs);
        }
        // trace components, starting each at its smallest edge
        let mut comps = Vec::new();
        let mut comp_of: HashMap<Edge, usize> = HashMap::new();
        for &start in occ.keys() {
            if comp_of.contains_key(&start) {
                continue;
            }
            let idx = comps.len();
            let mut cyc = Vec::new();
            let mut e = start;
            loop {
                comp_of.insert(e, idx);
                cyc.push(e);
                let (x, s) = heads[&e];
                e = crossings[x].pd[(s + 2) % 4];
                if e == start {
                    break;
                }
            }
            comps.push(cyc);
        }
        let ends = occ
            .keys()
            .map(|&e| (e, EdgeEnds { tail: tails[&e], head: heads[&e], component: comp_of[&e] }))
            .collect();
        let d = Self { crossings, free_loops, comps, ends };
        let errs = d.parity_errors();
        if !errs.is_empty() {
            return Err(errs);
        }
        Ok(d)
    }

    fn parity_errors(&self) -> Vec<DiagramError> {
        let n = self.comps.len();
        let mut count = vec![vec![0usize; n]; n];
        for c in &self.crossings {
            let (i, j) = (self.comp_of(c.under_in()), self.comp_of(c.over_in()));
            if i != j {
                count[i.min(j)][i.max(j)] += 1;
            }
        }
        let mut errs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if count[i][j] % 2 == 1 {
                    errs.push(DiagramError::LinkingParity(i, j));
                }
            }
        }
        errs
    }

    /// Builds a diagram from unsigned PD tuples, inferring orientations.
    ///
    /// A component passing under some crossing is oriented by the `a -> c`
    /// rule. A component that only passes over is oriented so that edge labels
    /// increase along it. `reversed` flips the inferred orientation of every
    /// component containing one of the listed edges.
    pub fn from_pd(pd: &[[Edge; 4]], free_loops: usize, reversed: &[Edge]) -> Result<Self, Vec<DiagramError>> {
        let signs = infer_signs(pd, reversed)?;
        let crossings = pd.iter().zip(signs).map(|(&p, s)| Crossing::new(p, s)).collect();
        Self::build(crossings, free_loops)
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(n: usize) -> Self {
        Self::new(Vec::new(), n).expect("unlink with n >= 1")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.comps.len() + self.free_loops
    }

    /// Number of components that pass through at least one crossing.
    pub fn crossed_component_count(&self) -> usize {
        self.comps.len()
    }

    /// Components in order: crossed components by smallest edge, then free
    /// loops (as empty edge cycles). Each cycle follows the orientation.
    pub fn components(&self) -> Vec<Vec<Edge>> {
        let mut out = self.comps.clone();
        out.extend(std::iter::repeat_with(Vec::new).take(self.free_loops));
        out
    }

    pub fn component_edges(&self, i: usize) -> &[Edge] {
        self.comps.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_free_loop(&self, i: usize) -> bool {
        i >= self.comps.len() && i < self.component_count()
    }

    /// Component of an edge.
    pub fn comp_of(&self, e: Edge) -> usize {
        self.ends[&e].component
    }

    pub fn edge_ends(&self, e: Edge) -> Option<EdgeEnds> {
        self.ends.get(&e).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.ends.keys().copied()
    }

    pub fn max_edge(&self) -> Edge {
        self.ends.keys().next_back().copied().unwrap_or(0)
    }

    pub fn check_component(&self, i: usize) -> Result<(), DiagramError> {
        if i < self.component_count() {
            Ok(())
        } else {
            Err(DiagramError::BadComponent(i))
        }
    }

    /// Components of the under- and over-strand at crossing `x`.
    pub fn strand_components(&self, x: usize) -> (usize, usize) {
        let c = &self.crossings[x];
        (self.comp_of(c.under_in()), self.comp_of(c.over_in()))
    }

    /// Sum of all crossing signs, or of the self-crossings of one component.
    pub fn writhe(&self, component: Option<usize>) -> i64 {
        (0..self.crossings.len())
            .filter(|&x| match component {
                None => true,
                Some(i) => self.strand_components(x) == (i, i),
            })
            .map(|x| self.crossings[x].sign.value())
            .sum()
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.component_count();
        let mut m = vec![vec![0i64; n]; n];
        for (x, c) in self.crossings.iter().enumerate() {
            let (i, j) = self.strand_components(x);
            if i != j {
                m[i][j] += c.sign.value();
                m[j][i] += c.sign.value();
            }
        }
        for row in &mut m {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0);
                *v /= 2;
            }
        }
        m
    }

    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        Self::new(crossings, self.free_loops).expect("mirror preserves validity")
    }

    pub fn switch_crossing(&self, x: usize) -> Result<Self, DiagramError> {
        let mut crossings = self.crossings.clone();
        let c = crossings.get_mut(x).ok_or(DiagramError::BadCrossing(x))?;
        *c = c.switched();
        Self::new(crossings, self.free_loops)
    }

    /// Reverses the orientation of component `i`, keeping the component order.
    pub fn reverse_component(&self, i: usize) -> Result<Self, DiagramError> {
        self.check_component(i)?;
        if self.is_free_loop(i) {
            return Ok(self.clone());
        }
        let crossings = (0..self.crossings.len())
            .map(|x| {
                let c = self.crossings[x];
                let (u, o) = self.strand_components(x);
                let (urev, orev) = (u == i, o == i);
                let pd = if urev { [c.pd[2], c.pd[3], c.pd[0], c.pd[1]] } else { c.pd };
                let sign = if urev != orev { c.sign.flip() } else { c.sign };
                Crossing::new(pd, sign)
            })
            .collect();
        build::assemble(crossings, self.free_loops, &self.reps())
    }

    /// `a` followed by `b`; labels of `b` are shifted past those of `a`.
    pub fn disjoint_union(a: &Self, b: &Self) -> Self {
        let a = if b.comps.is_empty() { a.clone() } else { build::materialize_free_loops(a, a.component_count()) };
        let off = a.max_edge();
        let mut crossings = a.crossings.clone();
        crossings.extend(b.crossings.iter().map(|c| c.relabeled(|e| e + off)));
        let mut reps = a.reps();
        reps.extend(b.reps().into_iter().map(|e| e + off));
        build::assemble(crossings, a.free_loops + b.free_loops, &reps).expect("union of valid diagrams")
    }

    /// The sublink on the listed components, in the listed order.
    pub fn sublink(&self, keep: &[usize]) -> Result<Self, DiagramError> {
        for &i in keep {
            self.check_component(i)?;
        }
        let kept = |c: usize| keep.contains(&c);
        let mut remove = Vec::new();
        let mut merges = Vec::new();
        for (x, c) in self.crossings.iter().enumerate() {
            let (u, o) = self.strand_components(x);
            match (kept(u), kept(o)) {
                (true, true) => {}
                (false, false) => remove.push(x),
                (true, false) => {
                    remove.push(x);
                    merges.push((c.under_in(), c.under_out()));
                }
                (false, true) => {
                    remove.push(x);
                    merges.push((c.over_in(), c.over_out()));
                }
            }
        }
        let ex = moves::excise(&self.crossings, &remove, &merges);
        let reps: Vec<Edge> = keep
            .iter()
            .filter(|&&i| !self.is_free_loop(i))
            .filter_map(|&i| ex.rename(self.comps[i][0]))
            .collect();
        let old_free = keep.iter().filter(|&&i| self.is_free_loop(i)).count();
        let d = build::assemble(ex.crossings, old_free + ex.new_loops, &reps)?;
        if d.crossings.is_empty() && d.free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        Ok(d)
    }

    /// Oriented smoothing of crossing `x`.
    pub fn smooth_oriented(&self, x: usize) -> Result<Self, DiagramError> {
        let c = self.crossings.get(x).ok_or(DiagramError::BadCrossing(x))?;
        let ex = moves::excise(&self.crossings, &[x], &[(c.under_in(), c.over_out()), (c.over_in(), c.under_out())]);
        let reps: Vec<Edge> = self.reps().into_iter().filter_map(|e| ex.rename(e)).collect();
        build::assemble(ex.crossings, self.free_loops + ex.new_loops, &reps)
    }

    /// First edge of every crossed component, in component order.
    pub(crate) fn reps(&self) -> Vec<Edge> {
        self.comps.iter().map(|c| c[0]).collect()
    }

    pub fn faces(&self) -> Faces {
        Faces::new(&self.crossings)
    }

    /// Euler-characteristic check of the rotation system, per connected piece.
    pub fn is_planar(&self) -> bool {
        self.faces().is_planar()
    }

    /// Edges whose components need an explicit reversal when this diagram is
    /// written as unsigned PD tuples.
    pub fn orientation_overrides(&self) -> Vec<Edge> {
        let pd: Vec<[Edge; 4]> = self.crossings.iter().map(|c| c.pd).collect();
        let default = infer_heads(&pd, &[]).expect("valid diagram infers");
        self.comps
            .iter()
            .filter(|c| default[&c[0]] != self.ends[&c[0]].head)
            .map(|c| c[0])
            .collect()
    }

    /// `X[a,b,c,d] ... O ... R[e]` text form.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> =
            self.crossings.iter().map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3])).collect();
        parts.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        parts.extend(self.orientation_overrides().into_iter().map(|e| format!("R[{e}]")));
        parts.join(" ")
    }

    // operations implemented in submodules, re-exposed as methods

    pub fn cable(&self, j: usize, p: i64, q: i64) -> Result<Self, DiagramError> {
        build::cable(self, j, p, q)
    }

    /// Keeps component `j` and appends a `(p, q)` curve on its boundary torus
    /// as a new last component.
    pub fn with_cable_curve(&self, j: usize, p: i64, q: i64) -> Result<Self, DiagramError> {
        build::cable_curve(self, j, p, q)
    }

    pub fn band_sum(&self, i: usize, target: usize, band: &BandSpec) -> Result<Self, DiagramError> {
        band::band_sum(self, i, target, band).map(|(d, _)| d)
    }

    /// Like [`Diagram::band_sum`], also returning the indices of the half-twist crossings.
    pub fn band_sum_traced(&self, i: usize, target: usize, band: &BandSpec) -> Result<(Self, Vec<usize>), DiagramError> {
        band::band_sum(self, i, target, band)
    }

    pub fn simplify(&self) -> Self {
        moves::simplify(self).0
    }

    /// Simplifies and reports the new index of every old component.
    pub fn simplify_tracked(&self) -> (Self, Vec<usize>) {
        moves::simplify(self)
    }

    pub fn insert_kink(&self, e: Edge, sign: Sign, side: Side) -> Result<Self, DiagramError> {
        moves::insert_kink(self, e, sign, side)
    }

    /// Every free loop up to and including component `upto` becomes a
    /// two-crossing curl of writhe zero; component indices are unchanged.
    pub fn materialize_free_loops(&self, upto: usize) -> Self {
        build::materialize_free_loops(self, upto)
    }
}

/// Orientation inference: returns the head occurrence of every edge.
fn infer_heads(pd: &[[Edge; 4]], reversed: &[Edge]) -> Result<HashMap<Edge, (usize, usize)>, Vec<DiagramError>> {
    let occ = occurrences(pd);
    let errs = degree_errors(&occ);
    if !errs.is_empty() {
        return Err(errs);
    }
    let other = |e: Edge, at: (usize, usize)| -> (usize, usize) {
        let v = &occ[&e];
        if v[0] == at {
            v[1]
        } else {
            v[0]
        }
    };
    let mut heads = HashMap::new();
    let mut seen: HashMap<Edge, ()> = HashMap::new();
    let mut errs = Vec::new();
    for (&start, v) in &occ {
        if seen.contains_key(&start) {
            continue;
        }
        // walk towards v[0]; record (edge, occurrence walked into)
        let mut walk = Vec::new();
        let (mut e, mut at) = (start, v[0]);
        loop {
            seen.insert(e, ());
            walk.push((e, at));
            let (x, s) = at;
            let s2 = (s + 2) % 4;
            let e2 = pd[x][s2];
            let at2 = other(e2, (x, s2));
            if e2 == start && at2 == v[0] {
                break;
            }
            e = e2;
            at = at2;
            if walk.len() > 4 * pd.len() + 2 {
                errs.push(DiagramError::TraceFailure(start));
                break;
            }
        }
        let fwd_under = walk.iter().filter(|(_, (_, s))| *s == 0).count();
        let bwd_under = walk.iter().filter(|(_, (_, s))| *s == 2).count();
        let forward = if fwd_under + bwd_under > 0 {
            if fwd_under > 0 && bwd_under > 0 {
                errs.push(DiagramError::TraceFailure(start));
                continue;
            }
            fwd_under > 0
        } else {
            numbering_direction(&walk, &occ)
        };
        let flip = walk.iter().any(|(e, _)| reversed.contains(e));
        for &(e, at) in &walk {
            let head = if forward != flip { at } else { other(e, at) };
            heads.insert(e, head);
        }
    }
    if errs.is_empty() {
        Ok(heads)
    } else {
        Err(errs)
    }
}

// Chooses the walk direction along which labels increase; ties go to the
// direction in which the smallest edge flows into its lexicographically
// smaller occurrence.
fn numbering_direction(walk: &[(Edge, (usize, usize))], occ: &BTreeMap<Edge, Vec<(usize, usize)>>) -> bool {
    let labels: Vec<Edge> = walk.iter().map(|w| w.0).collect();
    let (lo, hi) = (*labels.iter().min().unwrap(), *labels.iter().max().unwrap());
    let succ = |a: Edge, b: Edge| b == a + 1 || (a == hi && b == lo);
    let n = labels.len();
    let fwd = (0..n).filter(|&k| succ(labels[k], labels[(k + 1) % n])).count();
    let bwd = (0..n).filter(|&k| succ(labels[(k + 1) % n], labels[k])).count();
    if fwd != bwd {
        return fwd > bwd;
    }
    let &(_, at) = walk.iter().find(|w| w.0 == lo).unwrap();
    let v = &occ[&lo];
    at == *v.iter().min().unwrap()
}

fn infer_signs(pd: &[[Edge; 4]], reversed: &[Edge]) -> Result<Vec<Sign>, Vec<DiagramError>> {
    let heads = infer_heads(pd, reversed)?;
    Ok(pd
        .iter()
        .enumerate()
        .map(|(x, c)| if heads[&c[3]] == (x, 3) { Sign::Positive } else { Sign::Negative })
        .collect())
}
