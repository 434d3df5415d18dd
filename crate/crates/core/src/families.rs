//! Named links and the twisted family `P_a`, with checks of the Jones
//! identities relating them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{braid_closure, BandSpec, Diagram, Sign};
use crate::invariants::{jones, skein_triple, BracketError};
use crate::laurent::LaurentPoly;
use crate::surgery::{self, Body, FramedLink, Slope, SurgeryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad family parameter: {0}")]
    BadParameter(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Unknot,
    Unlink(usize),
    Hopf(Sign),
    Trefoil(Sign),
    Whitehead,
    Borromean,
    Chain3,
    Pa(i64),
}

impl FamilySpec {
    /// Parses a family name and optional parameter, e.g. `("pa", Some("3"))`
    /// or `("hopf", Some("-"))`.
    pub fn parse(name: &str, param: Option<&str>) -> Result<Self, FamilyError> {
        let bad = |m: &str| FamilyError::BadParameter(m.to_string());
        let sign = |p: Option<&str>| match p.unwrap_or("+") {
            "+" | "+1" | "1" | "pos" | "right" => Ok(Sign::Positive),
            "-" | "-1" | "neg" | "left" => Ok(Sign::Negative),
            other => Err(bad(other)),
        };
        let int = |p: Option<&str>| -> Result<i64, FamilyError> {
            p.ok_or_else(|| bad("missing integer parameter"))?.parse::<i64>().map_err(|_| bad(p.unwrap()))
        };
        let spec = match name {
            "unknot" => FamilySpec::Unknot,
            "unlink" => FamilySpec::Unlink(usize::try_from(int(param.or(Some("2")))?).map_err(|_| bad("unlink needs n >= 1"))?),
            "hopf" => FamilySpec::Hopf(sign(param)?),
            "trefoil" => FamilySpec::Trefoil(sign(param)?),
            "whitehead" => FamilySpec::Whitehead,
            "borromean" => FamilySpec::Borromean,
            "chain3" => FamilySpec::Chain3,
            "pa" => FamilySpec::Pa(int(param)?),
            other => return Err(FamilyError::UnknownFamily(other.to_string())),
        };
        spec.check()?;
        Ok(spec)
    }

    fn check(&self) -> Result<(), FamilyError> {
        match *self {
            FamilySpec::Unlink(0) => Err(FamilyError::BadParameter("unlink needs n >= 1".into())),
            FamilySpec::Pa(0) => Err(FamilyError::BadParameter("pa needs a != 0".into())),
            _ => Ok(()),
        }
    }

    /// Every family with a few parameters, for corpus-style tests.
    pub fn corpus() -> Vec<FamilySpec> {
        let mut v = vec![
            FamilySpec::Unknot,
            FamilySpec::Unlink(2),
            FamilySpec::Unlink(3),
            FamilySpec::Hopf(Sign::Positive),
            FamilySpec::Hopf(Sign::Negative),
            FamilySpec::Trefoil(Sign::Positive),
            FamilySpec::Trefoil(Sign::Negative),
            FamilySpec::Whitehead,
            FamilySpec::Borromean,
            FamilySpec::Chain3,
        ];
        v.extend([1, 2, 3, -1, -2].map(FamilySpec::Pa));
        v
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |s: Sign| if s == Sign::Positive { "+" } else { "-" };
        match *self {
            FamilySpec::Unknot => write!(f, "unknot"),
            FamilySpec::Unlink(n) => write!(f, "unlink {n}"),
            FamilySpec::Hopf(g) => write!(f, "hopf {}", s(g)),
            FamilySpec::Trefoil(g) => write!(f, "trefoil {}", s(g)),
            FamilySpec::Whitehead => write!(f, "whitehead"),
            FamilySpec::Borromean => write!(f, "borromean"),
            FamilySpec::Chain3 => write!(f, "chain3"),
            FamilySpec::Pa(a) => write!(f, "pa {a}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut it = s.split_whitespace();
        let name = it.next().unwrap_or("");
        Self::parse(name, it.next())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub spec: FamilySpec,
    pub diagram: Diagram,
    /// How component orientations were fixed.
    pub orientation: &'static str,
    /// For `P_a`: the twist crossing whose skein triple relates `P_a`,
    /// `P_{a-1}` and `C_3`.
    pub twist_crossing: Option<usize>,
}

/// Three-component chain: two small rings each clasping a middle ring, with
/// linking numbers `+1` (first, middle) and `-1` (middle, last). The outer
/// arcs of the end rings (edges 1 and 8) both border the unbounded face.
fn chain3() -> Diagram {
    Diagram::from_pd(&[[3, 1, 4, 2], [1, 5, 2, 4], [6, 8, 3, 7], [7, 5, 8, 6]], 0, &[]).expect("chain code is valid")
}

/// `P_a` for `a > 0`: the end rings of the chain joined by a band with `2a`
/// positive half-twists. Returns the diagram and the twist crossings.
fn pa_positive(a: i64) -> (Diagram, Vec<usize>) {
    let band = BandSpec { from_edge: 1, to_edge: 8, path: Vec::new(), half_twists: 2 * a };
    chain3().band_sum_traced(0, 2, &band).expect("band between the chain ends")
}

pub fn generate(spec: FamilySpec) -> Result<Generated, FamilyError> {
    spec.check()?;
    let mut twist = None;
    let (diagram, orientation) = match spec {
        FamilySpec::Unknot => (Diagram::unknot(), "trivial"),
        FamilySpec::Unlink(n) => (Diagram::unlink(n), "trivial"),
        FamilySpec::Hopf(s) => (braid_closure(2, &[s.value() as i32; 2]), "braid closure, strands upward"),
        FamilySpec::Trefoil(s) => (braid_closure(2, &[s.value() as i32; 3]), "braid closure, strands upward"),
        FamilySpec::Borromean => (braid_closure(3, &[1, -2, 1, -2, 1, -2]), "braid closure, strands upward"),
        FamilySpec::Whitehead => {
            let d = Diagram::from_pd(&[[6, 1, 7, 2], [10, 7, 5, 8], [4, 5, 1, 6], [2, 10, 3, 9], [8, 4, 9, 3]], 0, &[])
                .expect("whitehead code is valid");
            (d.mirror(), "edge numbering, mirrored to match P_1")
        }
        FamilySpec::Chain3 => (chain3(), "edge numbering; lk = +1, -1 along the chain"),
        FamilySpec::Pa(a) => {
            let (d, tw) = pa_positive(a.abs());
            let idx = tw[a.unsigned_abs() as usize - 1];
            twist = Some(idx);
            if a > 0 {
                (d, "band orientation from the chain")
            } else {
                (d.mirror(), "mirror of P_|a|")
            }
        }
    };
    Ok(Generated { spec, diagram, orientation, twist_crossing: twist })
}

/// Shorthand for `generate(spec).diagram`.
pub fn diagram(spec: FamilySpec) -> Result<Diagram, FamilyError> {
    generate(spec).map(|g| g.diagram)
}

fn t_half(k: i64) -> LaurentPoly {
    LaurentPoly::from_half_t([(k, 1)])
}

/// `t^{-2} + 2 + t^2`.
pub fn quoted_v_c3() -> LaurentPoly {
    LaurentPoly::from_half_t([(-4, 1), (0, 2), (4, 1)])
}

/// `t^{-3/2}(-1 + t - 2t^2 + t^3 - 2t^4 + t^5)`.
pub fn quoted_v_p1() -> LaurentPoly {
    LaurentPoly::from_half_t([(-3, -1), (-1, 1), (1, -2), (3, 1), (5, -2), (7, 1)])
}

/// `-t^{1/2} - t^{-1/2}`.
pub fn v_unlink2() -> LaurentPoly {
    -(t_half(1) + t_half(-1))
}

/// Closed form for `V(P_a)`, `a >= 1`, built from the two quoted base values.
pub fn closed_form(a: i64) -> LaurentPoly {
    assert!(a >= 1);
    let geometric: LaurentPoly = (0..a - 1).map(|k| t_half(4 * k)).sum();
    t_half(4 * (a - 1)) * quoted_v_p1() + geometric * (t_half(3) - t_half(1)) * quoted_v_c3()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn render(v: &LaurentPoly) -> String {
    v.render_t().unwrap_or_else(|_| v.render_a())
}

/// Skein triple at the designated crossing of `P_a`: `L-` must have the Jones
/// value of `P_{a-1}`, `L0` that of `C_3`, and the recursion must hold.
pub fn verify_recursion(a: i64) -> Result<Report, FamilyError> {
    if a < 2 {
        return Err(FamilyError::BadParameter("recursion needs a >= 2".into()));
    }
    let g = generate(FamilySpec::Pa(a))?;
    let x = g.twist_crossing.expect("pa has a twist crossing");
    let (plus, minus, zero) = skein_triple(&g.diagram, x).expect("crossing exists");
    let (vp, vm, vz) = (jones(&plus)?, jones(&minus)?, jones(&zero)?);
    let v_prev = jones(&diagram(FamilySpec::Pa(a - 1))?)?;
    let v_c3 = jones(&diagram(FamilySpec::Chain3)?)?;
    let direct = jones(&g.diagram)?;
    let rhs = t_half(4) * &v_prev + (t_half(3) - t_half(1)) * &v_c3;
    let checks = [
        ("L+ = P_a", vp == direct),
        ("L- ~ P_(a-1)", vm == v_prev),
        ("L0 ~ C_3", vz == v_c3),
        ("recursion", direct == rhs),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok(Report {
        name: format!("recursion a={a}"),
        passed: failed.is_empty(),
        detail: if failed.is_empty() { format!("V(P_{a}) = {}", render(&direct)) } else { format!("failed: {}", failed.join(", ")) },
    })
}

/// Direct `V(P_a)` against the closed form; also checks the top term is
/// `t^{2(a-1)+7/2}` with coefficient `+1` and that `P_a` is not the unlink.
pub fn verify_closed_form(a: i64) -> Result<Report, FamilyError> {
    if a < 1 {
        return Err(FamilyError::BadParameter("closed form needs a >= 1".into()));
    }
    let v = jones(&diagram(FamilySpec::Pa(a))?)?;
    let cf = closed_form(a);
    // highest power of t is the lowest power of A
    let top_k = 4 * (a - 1) + 7;
    let lowest = v.min_exp();
    let top_ok = lowest == Some(-2 * top_k) && v.coeff(-2 * top_k) == 1.into();
    let not_unlink = v != v_unlink2();
    let passed = v == cf && top_ok && not_unlink;
    Ok(Report {
        name: format!("closed form a={a}"),
        passed,
        detail: format!(
            "direct {} closed form; top term t^{{{}}} {}; {} unlink",
            if v == cf { "=" } else { "!=" },
            if top_k % 2 == 0 { (top_k / 2).to_string() } else { format!("{top_k}/2") },
            if top_ok { "ok" } else { "WRONG" },
            if not_unlink { "not" } else { "IS" }
        ),
    })
}

/// Performs the slide of component 0 over component 1 at the diagram level
/// and compares the resulting linking matrix and `H_1` with the formula.
pub fn verify_slide_construction(slope: Slope, base: FamilySpec, eps: i64) -> Result<Report, FamilyError> {
    let d = diagram(base)?;
    if d.component_count() < 2 {
        return Err(FamilyError::BadParameter("slide needs two components".into()));
    }
    let mut slopes = vec![Slope::integer(1); d.component_count()];
    slopes[1] = slope;
    let fl = FramedLink::new(Body::Diagram(d), slopes)?;
    let (slid, rec) = surgery::slide(&fl, 0, 1, eps)?;
    let (pred, _) = surgery::slide_update(&fl.shadow(), 0, 1, eps)?;
    let lk_ok = slid.linking_matrix() == pred.linking_matrix();
    let h1_ok = surgery::h1_divisors(&slid) == surgery::h1_divisors(&fl);
    Ok(Report {
        name: format!("slide over {base} at {slope}"),
        passed: lk_ok && h1_ok,
        detail: format!(
            "x = {}, lk(K1', K2) = {}; linking {}; H1 {}",
            rec.x,
            slid.linking_matrix()[0][1],
            if lk_ok { "matches" } else { "DIFFERS" },
            if h1_ok { "preserved" } else { "CHANGED" }
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain3_value_and_linking() {
        let d = diagram(FamilySpec::Chain3).unwrap();
        assert_eq!(d.component_count(), 3);
        assert_eq!(d.linking_matrix(), vec![vec![0, 1, 0], vec![1, 0, -1], vec![0, -1, 0]]);
        assert_eq!(jones(&d).unwrap(), quoted_v_c3());
        assert!(d.is_planar());
    }

    #[test]
    fn p1_is_whitehead() {
        let p1 = diagram(FamilySpec::Pa(1)).unwrap();
        assert_eq!(jones(&p1).unwrap(), quoted_v_p1());
        let w = diagram(FamilySpec::Whitehead).unwrap();
        assert_eq!(jones(&w).unwrap(), quoted_v_p1());
        assert_eq!(w.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(p1.linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    }

    #[test]
    fn recursion_small() {
        assert!(verify_recursion(2).unwrap().passed);
        assert!(verify_closed_form(1).unwrap().passed);
        assert!(verify_closed_form(2).unwrap().passed);
    }

    #[test]
    fn negative_pa_is_mirror() {
        let v = jones(&diagram(FamilySpec::Pa(-2)).unwrap()).unwrap();
        assert_eq!(v, jones(&diagram(FamilySpec::Pa(2)).unwrap()).unwrap().invert_variable());
        assert_ne!(v, v_unlink2());
    }

    #[test]
    fn borromean_not_split() {
        let d = diagram(FamilySpec::Borromean).unwrap();
        assert_eq!(d.component_count(), 3);
        assert!(d.linking_matrix().iter().flatten().all(|&x| x == 0));
        assert_ne!(jones(&d).unwrap(), v_unlink2().pow(2));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("pa 3".parse::<FamilySpec>().unwrap(), FamilySpec::Pa(3));
        assert_eq!("hopf -".parse::<FamilySpec>().unwrap(), FamilySpec::Hopf(Sign::Negative));
        assert!("pa 0".parse::<FamilySpec>().is_err());
        assert!("knot".parse::<FamilySpec>().is_err());
        for s in FamilySpec::corpus() {
            assert_eq!(s.to_string().parse::<FamilySpec>().unwrap(), s);
        }
    }

    #[test]
    fn slide_constructions() {
        let r = verify_slide_construction(Slope::new(3, 2).unwrap(), FamilySpec::Hopf(Sign::Positive), 1).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.detail.contains("lk(K1', K2) = 4"));
        let r = verify_slide_construction(Slope::new(1, 3).unwrap(), FamilySpec::Unlink(2), 1).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
