//! Rational surgery bookkeeping: slopes, framed links, handle slides and the
//! first homology of the surgered manifold.

pub mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::diagram::{find_band, BandSpec, Diagram, DiagramError};

pub use snf::{smith_normal_form, Snf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("cannot slide a component over itself")]
    SelfSlide,
    #[error("component {0} has slope inf")]
    InfiniteSlope(usize),
    #[error("no component {0}")]
    BadComponent(usize),
    #[error("expected {expected} slopes, got {got}")]
    SlopeCount { expected: usize, got: usize },
    #[error("bad slope: {0}")]
    BadSlope(String),
    #[error("gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("cable needs q >= 1, got {0}")]
    NonPositiveQ(i64),
    #[error("orientation sign must be +1 or -1, got {0}")]
    BadEps(i64),
    #[error("linking matrix must be square, symmetric, with zero diagonal")]
    BadLinkingMatrix,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A reduced slope `p/q` with `q >= 0`; `1/0` is the meridian, written `inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self, SurgeryError> {
        if p == 0 && q == 0 {
            return Err(SurgeryError::BadSlope("0/0".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Self { p, q })
    }

    pub fn integer(n: i64) -> Self {
        Self { p: n, q: 1 }
    }

    pub fn infinity() -> Self {
        Self { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }

    /// `self + x` for an integer `x`.
    pub fn add_integer(&self, x: i64) -> Self {
        if self.is_infinite() {
            return *self;
        }
        Self::new(self.p + x * self.q, self.q).expect("q >= 1")
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl FromStr for Slope {
    type Err = SurgeryError;

    /// Accepts `p/q` with `q > 0`, a bare integer, or `inf`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Self::infinity());
        }
        let bad = || SurgeryError::BadSlope(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        if q <= 0 {
            return Err(bad());
        }
        Self::new(p, q)
    }
}

/// Linking data without a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractLink {
    lk: Vec<Vec<i64>>,
}

impl AbstractLink {
    pub fn new(lk: Vec<Vec<i64>>) -> Result<Self, SurgeryError> {
        let n = lk.len();
        let ok = lk.iter().all(|r| r.len() == n)
            && (0..n).all(|i| lk[i][i] == 0 && (0..n).all(|j| lk[i][j] == lk[j][i]));
        if ok {
            Ok(Self { lk })
        } else {
            Err(SurgeryError::BadLinkingMatrix)
        }
    }

    pub fn n(&self) -> usize {
        self.lk.len()
    }

    pub fn lk(&self) -> &[Vec<i64>] {
        &self.lk
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Diagram(Diagram),
    Abstract(AbstractLink),
}

/// An ordered link with one slope per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedLink {
    body: Body,
    slopes: Vec<Slope>,
}

impl FramedLink {
    pub fn new(body: Body, slopes: Vec<Slope>) -> Result<Self, SurgeryError> {
        let expected = match &body {
            Body::Diagram(d) => d.component_count(),
            Body::Abstract(a) => a.n(),
        };
        if expected != slopes.len() {
            return Err(SurgeryError::SlopeCount { expected, got: slopes.len() });
        }
        Ok(Self { body, slopes })
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn n(&self) -> usize {
        self.slopes.len()
    }

    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        match &self.body {
            Body::Diagram(d) => d.linking_matrix(),
            Body::Abstract(a) => a.lk.clone(),
        }
    }

    /// The same link with the diagram forgotten.
    pub fn shadow(&self) -> Self {
        Self { body: Body::Abstract(AbstractLink { lk: self.linking_matrix() }), slopes: self.slopes.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlideRecord {
    pub i: usize,
    pub j: usize,
    pub eps: i64,
    pub x: i64,
}

fn check_slide(fl: &FramedLink, i: usize, j: usize, eps: i64) -> Result<(), SurgeryError> {
    for c in [i, j] {
        if c >= fl.n() {
            return Err(SurgeryError::BadComponent(c));
        }
    }
    if i == j {
        return Err(SurgeryError::SelfSlide);
    }
    if eps != 1 && eps != -1 {
        return Err(SurgeryError::BadEps(eps));
    }
    for c in [j, i] {
        if fl.slopes[c].is_infinite() {
            return Err(SurgeryError::InfiniteSlope(c));
        }
    }
    Ok(())
}

/// Framing shift for sliding `i` over `eps * K_j`.
pub fn framing_shift(slope_j: Slope, lk_ij: i64, eps: i64) -> i64 {
    let (p, q) = (slope_j.p, slope_j.q);
    q * p + 2 * q * eps * lk_ij
}

/// Slides component `i` over `eps * K_j` along the slope curve of `K_j`,
/// acting on the linking data only. `K_i` keeps its orientation.
pub fn slide_update(fl: &FramedLink, i: usize, j: usize, eps: i64) -> Result<(FramedLink, SlideRecord), SurgeryError> {
    check_slide(fl, i, j, eps)?;
    let mut lk = fl.linking_matrix();
    let sj = fl.slopes[j];
    let x = framing_shift(sj, lk[i][j], eps);
    let old = lk.clone();
    for m in 0..lk.len() {
        if m == i {
            continue;
        }
        let v = if m == j { old[i][j] + eps * sj.p } else { old[i][m] + eps * sj.q * old[j][m] };
        lk[i][m] = v;
        lk[m][i] = v;
    }
    let mut slopes = fl.slopes.clone();
    slopes[i] = slopes[i].add_integer(x);
    let out = FramedLink { body: Body::Abstract(AbstractLink { lk }), slopes };
    Ok((out, SlideRecord { i, j, eps, x }))
}

/// Slide with `eps = +1` followed by the inverse slide over `-K_j`.
pub fn slide_roundtrip(fl: &FramedLink, i: usize, j: usize) -> Result<(FramedLink, SlideRecord, SlideRecord), SurgeryError> {
    let (mid, first) = slide_update(fl, i, j, 1)?;
    let (back, second) = slide_update(&mid, i, j, -1)?;
    Ok((back, first, second))
}

/// The slid diagram: `K_i` band-summed with a slope curve on the boundary
/// torus of `eps * K_j`. The band is found by a face search.
pub fn slide_diagram(d: &Diagram, i: usize, j: usize, slope_j: Slope, eps: i64) -> Result<Diagram, SurgeryError> {
    slide_diagram_with_band(d, i, j, slope_j, eps, None)
}

/// Diagram with the slope curve of `eps * K_j` added as the last component;
/// edges of an explicit band for [`slide_diagram_with_band`] refer to it.
pub fn slope_curve_diagram(d: &Diagram, j: usize, slope_j: Slope, eps: i64) -> Result<Diagram, SurgeryError> {
    if eps != 1 && eps != -1 {
        return Err(SurgeryError::BadEps(eps));
    }
    if slope_j.is_infinite() {
        return Err(SurgeryError::InfiniteSlope(j));
    }
    let base = if eps < 0 { d.reverse_component(j)? } else { d.clone() };
    Ok(base.with_cable_curve(j, slope_j.p, slope_j.q)?)
}

/// As [`slide_diagram`], with an optional explicit band to the slope curve.
pub fn slide_diagram_with_band(
    d: &Diagram,
    i: usize,
    j: usize,
    slope_j: Slope,
    eps: i64,
    band: Option<&BandSpec>,
) -> Result<Diagram, SurgeryError> {
    let n = d.component_count();
    for c in [i, j] {
        if c >= n {
            return Err(SurgeryError::BadComponent(c));
        }
    }
    if i == j {
        return Err(SurgeryError::SelfSlide);
    }
    if eps != 1 && eps != -1 {
        return Err(SurgeryError::BadEps(eps));
    }
    if slope_j.is_infinite() {
        return Err(SurgeryError::InfiniteSlope(j));
    }
    let with_curve = slope_curve_diagram(d, j, slope_j, eps)?;
    let band = match band {
        Some(b) => b.clone(),
        None => find_band(&with_curve, i, n)?,
    };
    let slid = with_curve.band_sum(i, n, &band)?;
    Ok(if eps < 0 { slid.reverse_component(j)? } else { slid })
}

/// Slide acting on the body: diagrams are modified geometrically, abstract
/// links through [`slide_update`]. The new slopes come from the framing formula.
pub fn slide(fl: &FramedLink, i: usize, j: usize, eps: i64) -> Result<(FramedLink, SlideRecord), SurgeryError> {
    slide_with_band(fl, i, j, eps, None)
}

/// As [`slide`]; `band` is ignored for abstract links.
pub fn slide_with_band(
    fl: &FramedLink,
    i: usize,
    j: usize,
    eps: i64,
    band: Option<&BandSpec>,
) -> Result<(FramedLink, SlideRecord), SurgeryError> {
    let (abs, rec) = slide_update(fl, i, j, eps)?;
    match &fl.body {
        Body::Abstract(_) => Ok((abs, rec)),
        Body::Diagram(d) => {
            let nd = slide_diagram_with_band(d, i, j, fl.slopes[j], eps, band)?;
            Ok((FramedLink { body: Body::Diagram(nd), slopes: abs.slopes }, rec))
        }
    }
}

/// Presentation matrix of `H_1` of the surgered manifold: `M_ii = p_i`,
/// `M_ik = q_i lk(i, k)`. Components with slope `inf` are dropped.
pub fn h1_presentation(fl: &FramedLink) -> Vec<Vec<i64>> {
    let lk = fl.linking_matrix();
    let keep: Vec<usize> = (0..fl.n()).filter(|&i| !fl.slopes[i].is_infinite()).collect();
    keep.iter()
        .map(|&i| keep.iter().map(|&k| if i == k { fl.slopes[i].p } else { fl.slopes[i].q * lk[i][k] }).collect())
        .collect()
}

/// Diagonal of the Smith form of the presentation matrix.
pub fn h1_divisors(fl: &FramedLink) -> Vec<BigInt> {
    smith_normal_form(&snf::from_i64(&h1_presentation(fl))).diagonal()
}

/// Human-readable `H_1`: `0`, or summands like `Z + Z/3`.
pub fn h1_description(divisors: &[BigInt]) -> String {
    let parts: Vec<String> = divisors
        .iter()
        .filter(|d| **d != BigInt::from(1))
        .map(|d| if *d == BigInt::from(0) { "Z".to_string() } else { format!("Z/{d}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Genus contribution of a `(p, q)` cable on a knot of genus `g`:
/// `(|p| - 1)(q - 1)/2 + q g`, always an integer for coprime `p, q`.
pub fn cable_genus(p: i64, q: i64, g: u64) -> Result<i64, SurgeryError> {
    if q < 1 {
        return Err(SurgeryError::NonPositiveQ(q));
    }
    if p.gcd(&q) != 1 {
        return Err(SurgeryError::NotCoprime { p, q });
    }
    Ok((p.abs() - 1) * (q - 1) / 2 + q * g as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid_closure;

    fn abs(lk: Vec<Vec<i64>>, slopes: &[&str]) -> FramedLink {
        FramedLink::new(Body::Abstract(AbstractLink::new(lk).unwrap()), slopes.iter().map(|s| s.parse().unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn slope_parsing() {
        assert_eq!("3/2".parse::<Slope>().unwrap(), Slope::new(3, 2).unwrap());
        assert_eq!("-4/6".parse::<Slope>().unwrap().to_string(), "-2/3");
        assert_eq!("inf".parse::<Slope>().unwrap(), Slope::infinity());
        assert_eq!("7".parse::<Slope>().unwrap().to_string(), "7/1");
        assert!("1/0".parse::<Slope>().is_err());
        assert!("1/-2".parse::<Slope>().is_err());
        assert_eq!(Slope::new(-1, 0).unwrap(), Slope::infinity());
    }

    #[test]
    fn lemma_example() {
        let fl = abs(vec![vec![0, 1], vec![1, 0]], &["0/1", "3/2"]);
        let (out, rec) = slide_update(&fl, 0, 1, 1).unwrap();
        assert_eq!(rec.x, 10);
        assert_eq!(out.slopes()[0].to_string(), "10/1");
        assert_eq!(out.linking_matrix()[0][1], 4);
        let (back, a, b) = slide_roundtrip(&fl, 0, 1).unwrap();
        assert_eq!((a.x, b.x), (10, -10));
        assert_eq!(back, fl);
    }

    #[test]
    fn zero_case_and_third_component() {
        let fl = abs(vec![vec![0, 0], vec![0, 0]], &["0/1", "0/1"]);
        let (out, rec) = slide_update(&fl, 0, 1, 1).unwrap();
        assert_eq!(rec.x, 0);
        assert_eq!(out, fl);
        let fl = abs(vec![vec![0, 0, 1], vec![0, 0, 2], vec![1, 2, 0]], &["1/1", "3/2", "0/1"]);
        let (out, _) = slide_update(&fl, 0, 1, 1).unwrap();
        assert_eq!(out.linking_matrix()[0][2], 5);
    }

    #[test]
    fn slide_errors() {
        let fl = abs(vec![vec![0, 1], vec![1, 0]], &["0/1", "inf"]);
        assert_eq!(slide_update(&fl, 0, 1, 1).unwrap_err(), SurgeryError::InfiniteSlope(1));
        assert_eq!(slide_update(&fl, 0, 0, 1).unwrap_err(), SurgeryError::SelfSlide);
        assert_eq!(slide_update(&fl, 0, 2, 1).unwrap_err(), SurgeryError::BadComponent(2));
    }

    #[test]
    fn homology_examples() {
        let fl = abs(vec![vec![0]], &["0/1"]);
        assert_eq!(h1_description(&h1_divisors(&fl)), "Z");
        let fl = abs(vec![vec![0]], &["5/1"]);
        assert_eq!(h1_description(&h1_divisors(&fl)), "Z/5");
        let fl = abs(vec![vec![0, 1], vec![1, 0]], &["2/1", "2/1"]);
        assert_eq!(h1_presentation(&fl), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(h1_description(&h1_divisors(&fl)), "Z/3");
        let fl = abs(vec![vec![0, 1], vec![1, 0]], &["inf", "2/1"]);
        assert_eq!(h1_presentation(&fl), vec![vec![2]]);
    }

    #[test]
    fn genus_formula() {
        assert_eq!(cable_genus(3, 2, 1), Ok(3));
        assert_eq!(cable_genus(7, 1, 4), Ok(4));
        assert_eq!(cable_genus(1, 5, 0), Ok(0));
        assert_eq!(cable_genus(-3, 2, 0), Ok(1));
        assert_eq!(cable_genus(2, 4, 0), Err(SurgeryError::NotCoprime { p: 2, q: 4 }));
    }

    #[test]
    fn diagram_slide_matches_formula() {
        let hopf = braid_closure(2, &[1, 1]);
        for eps in [1, -1] {
            let fl = FramedLink::new(Body::Diagram(hopf.clone()), vec![Slope::integer(1), Slope::new(3, 2).unwrap()]).unwrap();
            let (out, _) = slide(&fl, 0, 1, eps).unwrap();
            let (pred, _) = slide_update(&fl, 0, 1, eps).unwrap();
            assert_eq!(out.linking_matrix(), pred.linking_matrix(), "eps {eps}");
            let Body::Diagram(d) = out.body() else { panic!() };
            assert!(d.is_planar());
            assert_eq!(h1_divisors(&out), h1_divisors(&fl));
        }
    }
}
