use framelink::diagram::{braid_closure, find_band};
use framelink::families::{self, diagram, FamilySpec};
use framelink::invariants::jones;
use framelink::surgery::{self, snf};
use framelink::{AbstractLink, Body, Crossing, Diagram, DiagramError, FramedLink, LaurentPoly, Sign, Slope};
use num_bigint::BigInt;

/// `c * t^{k/2}` terms.
fn t(terms: &[(i64, i64)]) -> LaurentPoly {
    LaurentPoly::from_half_t(terms.iter().copied())
}

/// Half the signed count of crossings between two components.
fn signed_count(d: &Diagram, a: usize, b: usize) -> i64 {
    let s: i64 = (0..d.crossing_count())
        .filter(|&x| {
            let (u, o) = d.strand_components(x);
            (u, o) == (a, b) || (u, o) == (b, a)
        })
        .map(|x| d.crossings()[x].sign.value())
        .sum();
    assert_eq!(s % 2, 0);
    s / 2
}

fn abstract_link(lk: Vec<Vec<i64>>, slopes: Vec<Slope>) -> FramedLink {
    FramedLink::new(Body::Abstract(AbstractLink::new(lk).unwrap()), slopes).unwrap()
}

fn s(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

#[test]
fn rendering_in_t() {
    assert_eq!(LaurentPoly::from_terms([(-2, -1), (-10, -1)]).render_t().unwrap(), "-t^{1/2} - t^{5/2}");
    assert_eq!(LaurentPoly::from_terms([(8, 1), (0, 2), (-8, 1)]).render_t().unwrap(), "t^{-2} + 2 + t^2");
}

#[test]
fn quoted_jones_values() {
    let c3 = t(&[(-4, 1), (0, 2), (4, 1)]);
    assert_eq!(jones(&diagram(FamilySpec::Chain3).unwrap()).unwrap(), c3);
    // t^{-3/2} (-1 + t - 2t^2 + t^3 - 2t^4 + t^5)
    let p1 = t(&[(-3, -1), (-1, 1), (1, -2), (3, 1), (5, -2), (7, 1)]);
    assert_eq!(jones(&diagram(FamilySpec::Pa(1)).unwrap()).unwrap(), p1);
    assert_eq!(jones(&diagram(FamilySpec::Whitehead).unwrap()).unwrap(), p1);
}

#[test]
fn chain3_linking_by_signed_count() {
    let d = diagram(FamilySpec::Chain3).unwrap();
    assert_eq!(d.component_count(), 3);
    assert_eq!(signed_count(&d, 0, 1).abs(), 1);
    assert_eq!(signed_count(&d, 1, 2).abs(), 1);
    assert_eq!(signed_count(&d, 0, 2), 0);
}

#[test]
fn recursion_and_closed_form() {
    let c3 = t(&[(-4, 1), (0, 2), (4, 1)]);
    let twist = t(&[(3, 1), (1, -1)]);
    let mut prev = jones(&diagram(FamilySpec::Pa(1)).unwrap()).unwrap();
    for a in 2..=5 {
        let v = jones(&diagram(FamilySpec::Pa(a)).unwrap()).unwrap();
        assert_eq!(v, t(&[(4, 1)]) * prev.clone() + twist.clone() * c3.clone(), "a = {a}");
        // top term t^{2(a-1)+7/2} with coefficient 1, i.e. A^{-2(4(a-1)+7)}
        let top = 4 * (a - 1) + 7;
        assert_eq!(v.min_exp(), Some(-2 * top));
        assert_eq!(v.coeff(-2 * top), BigInt::from(1));
        assert_ne!(v, t(&[(1, -1), (-1, -1)]));
        prev = v;
    }
    for a in 2..=4 {
        assert!(families::verify_recursion(a).unwrap().passed, "a = {a}");
    }
    for a in 1..=5 {
        assert!(families::verify_closed_form(a).unwrap().passed, "a = {a}");
    }
}

#[test]
fn negative_parameters_mirror() {
    for a in 1..=3 {
        let v = jones(&diagram(FamilySpec::Pa(a)).unwrap()).unwrap();
        assert_eq!(jones(&diagram(FamilySpec::Pa(-a)).unwrap()).unwrap(), v.invert_variable());
    }
}

#[test]
fn borromean_is_not_split() {
    let d = diagram(FamilySpec::Borromean).unwrap();
    assert_eq!(d.linking_matrix(), vec![vec![0; 3]; 3]);
    let delta_t = t(&[(1, -1), (-1, -1)]);
    assert_ne!(jones(&d).unwrap(), delta_t.clone() * delta_t);
}

#[test]
fn corpus_is_valid() {
    for spec in FamilySpec::corpus() {
        let d = diagram(spec).unwrap();
        let pd: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.pd).collect();
        assert!(framelink::diagram::validate(d.crossings(), d.free_loops()).is_ok(), "{spec}");
        assert!(d.is_planar(), "{spec}");
        assert_eq!(Diagram::from_pd(&pd, d.free_loops(), &d.orientation_overrides()).unwrap(), d, "{spec}");
    }
}

#[test]
fn validation_examples() {
    assert_eq!(Diagram::new(vec![], 1).unwrap().component_count(), 1);
    let bad = Diagram::from_pd(&[[7, 1, 2, 3]], 0, &[]).unwrap_err();
    assert!(bad.contains(&DiagramError::EdgeDegree { edge: 7, count: 1 }), "{bad:?}");
    let hopf = Diagram::from_pd(&[[1, 4, 2, 3], [3, 2, 4, 1]], 0, &[]).unwrap();
    assert_eq!(hopf.component_count(), 2);
}

#[test]
fn writhe_and_linking_examples() {
    assert_eq!(Diagram::unknot().writhe(None), 0);
    let kink = Diagram::new(vec![Crossing::from_strands(1, 2, 2, 1, Sign::Positive)], 0).unwrap();
    assert_eq!(kink.writhe(None), 1);
    let hopf = braid_closure(2, &[1, 1]);
    assert_eq!(hopf.writhe(None), 2);
    assert_eq!(hopf.linking_matrix(), vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(Diagram::unlink(2).linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
    assert_eq!(hopf.mirror().linking_matrix(), vec![vec![0, -1], vec![-1, 0]]);
    assert_eq!(hopf.reverse_component(1).unwrap().linking_matrix(), vec![vec![0, -1], vec![-1, 0]]);
    assert_eq!(hopf.mirror().mirror(), hopf);
    let w = diagram(FamilySpec::Whitehead).unwrap();
    assert_eq!(signed_count(&w, 0, 1), 0);
}

#[test]
fn disjoint_union_orders_components() {
    let a = braid_closure(2, &[1, 1, 1]);
    let b = braid_closure(2, &[1, 1]);
    let u = Diagram::disjoint_union(&a, &b);
    assert_eq!(u.component_count(), 3);
    assert_eq!(u.writhe(Some(0)), 3);
    assert_eq!(u.linking_matrix()[1][2], 1);
}

#[test]
fn cable_examples() {
    let trefoil = Diagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]], 0, &[]).unwrap();
    let kink = Diagram::new(vec![Crossing::from_strands(1, 2, 2, 1, Sign::Positive)], 0).unwrap();
    let c = kink.cable(0, 3, 2).unwrap();
    assert_eq!(c.crossing_count(), 5);
    assert_eq!(jones(&c).unwrap(), jones(&trefoil).unwrap());

    let hopf = braid_closure(2, &[1, 1]);
    let c = hopf.cable(1, 5, 2).unwrap();
    assert_eq!(signed_count(&c, 0, 1), 2);

    // q = 1 with p equal to the writhe changes nothing
    let t = braid_closure(2, &[1, 1, 1]);
    let same = t.cable(0, 3, 1).unwrap();
    assert_eq!(same.crossing_count(), 3);
    assert_eq!(jones(&same).unwrap(), jones(&t).unwrap());
}

#[test]
fn band_sum_examples() {
    let u = Diagram::unlink(2).materialize_free_loops(1);
    let band = find_band(&u, 0, 1).unwrap();
    let joined = u.band_sum(0, 1, &band).unwrap();
    assert_eq!(joined.component_count(), 1);
    assert_eq!(jones(&joined).unwrap(), LaurentPoly::one());
    assert_eq!(joined.crossing_count(), u.crossing_count() + 2 * band.path.len() + band.half_twists.unsigned_abs() as usize);

    let c3 = diagram(FamilySpec::Chain3).unwrap();
    let band = find_band(&c3, 0, 2).unwrap();
    let j = c3.band_sum(0, 2, &band).unwrap();
    assert_eq!(j.component_count(), 2);
    let before = c3.linking_matrix();
    assert_eq!(signed_count(&j, 0, 1), before[0][1] + before[2][1]);
}

#[test]
fn simplify_examples() {
    let kink = Diagram::new(vec![Crossing::from_strands(1, 2, 2, 1, Sign::Negative)], 0).unwrap();
    assert_eq!(kink.simplify(), Diagram::unknot());
    let t = braid_closure(2, &[1, 1, 1]);
    let once = t.simplify();
    assert_eq!(once.simplify(), once);
}

#[test]
fn slide_formula_examples() {
    let fl = abstract_link(vec![vec![0, 1], vec![1, 0]], vec![s(0, 1), s(3, 2)]);
    let (slid, rec) = surgery::slide_update(&fl, 0, 1, 1).unwrap();
    // q p + 2 q lk
    assert_eq!(rec.x, 2 * 3 + 2 * 2);
    assert_eq!(slid.slopes()[0], s(10, 1));
    assert_eq!(slid.linking_matrix()[0][1], 4);
    let (back, r1, r2) = surgery::slide_roundtrip(&fl, 0, 1).unwrap();
    assert_eq!((r1.x, r2.x), (10, -10));
    assert_eq!(back, fl);

    let zero = abstract_link(vec![vec![0, 0], vec![0, 0]], vec![s(2, 1), s(0, 1)]);
    let (slid, rec) = surgery::slide_update(&zero, 0, 1, 1).unwrap();
    assert_eq!(rec.x, 0);
    assert_eq!(slid.slopes(), zero.slopes());

    let three = abstract_link(vec![vec![0, 0, 1], vec![0, 0, 2], vec![1, 2, 0]], vec![s(0, 1), s(3, 2), s(0, 1)]);
    let (slid, _) = surgery::slide_update(&three, 0, 1, 1).unwrap();
    assert_eq!(slid.linking_matrix()[0][2], 1 + 2 * 2);
}

#[test]
fn slide_on_diagrams() {
    for a in 1..=3 {
        let base = Diagram::unlink(2);
        let slid = surgery::slide_diagram(&base, 0, 1, s(1, a), 1).unwrap();
        assert_eq!(signed_count(&slid, 0, 1), 1);
        let k1 = slid.sublink(&[0]).unwrap();
        assert_eq!(jones(&k1).unwrap(), LaurentPoly::one(), "a = {a}");
    }
    let r = families::verify_slide_construction(s(3, 2), FamilySpec::Hopf(Sign::Positive), 1).unwrap();
    assert!(r.passed, "{}", r.detail);
    let hopf = braid_closure(2, &[1, 1]);
    let slid = surgery::slide_diagram(&hopf, 0, 1, s(3, 2), 1).unwrap();
    assert_eq!(signed_count(&slid, 0, 1), 4);

    let fl = FramedLink::new(Body::Diagram(hopf), vec![s(1, 1), s(3, 2)]).unwrap();
    let (slid, _) = surgery::slide(&fl, 0, 1, 1).unwrap();
    assert_eq!(surgery::h1_divisors(&slid), surgery::h1_divisors(&fl));
}

#[test]
fn homology_examples() {
    let unknot = abstract_link(vec![vec![0]], vec![s(0, 1)]);
    assert_eq!(surgery::h1_presentation(&unknot), vec![vec![0]]);
    assert_eq!(surgery::h1_description(&surgery::h1_divisors(&unknot)), "Z");
    let knot = abstract_link(vec![vec![0]], vec![s(5, 1)]);
    assert_eq!(surgery::h1_description(&surgery::h1_divisors(&knot)), "Z/5");
    let hopf = abstract_link(vec![vec![0, 1], vec![1, 0]], vec![s(2, 1), s(2, 1)]);
    assert_eq!(surgery::h1_presentation(&hopf), vec![vec![2, 1], vec![1, 2]]);
    assert_eq!(surgery::h1_description(&surgery::h1_divisors(&hopf)), "Z/3");
}

#[test]
fn smith_examples() {
    let d = snf::smith_normal_form(&snf::from_i64(&[vec![2, 0], vec![0, 3]]));
    assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    let z = snf::from_i64(&[vec![0, 0, 0], vec![0, 0, 0]]);
    let d = snf::smith_normal_form(&z);
    assert_eq!(d.d, z);
    assert_eq!(snf::mat_mul(&snf::mat_mul(&d.u, &z), &d.v), z);
}

#[test]
fn cable_genus_examples() {
    assert_eq!(surgery::cable_genus(3, 2, 1), Ok(3));
    assert_eq!(surgery::cable_genus(7, 1, 2), Ok(2));
    assert_eq!(surgery::cable_genus(1, 6, 0), Ok(0));
}
