//! Reference bracket by full state enumeration. Exponential; meant for
//! cross-checking the memoized evaluator on small diagrams.

use std::collections::HashMap;

use crate::diagram::{Diagram, Edge};
use crate::laurent::LaurentPoly;

/// Sum over all `2^n` smoothings of `A^{#A - #B} δ^{loops - 1}`.
///
/// # Panics
///
/// For diagrams with more than 24 crossings.
pub fn naive_bracket(d: &Diagram) -> LaurentPoly {
    let cs = d.crossings();
    assert!(cs.len() <= 24, "naive enumeration limited to 24 crossings");
    let edges: Vec<Edge> = d.edges().collect();
    let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    // coefficient of A^k δ^m collected as integers first
    let mut counts: HashMap<(i64, usize), i64> = HashMap::new();
    for mask in 0u32..(1u32 << cs.len()) {
        let mut parent: Vec<usize> = (0..edges.len()).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut union = |a: Edge, b: Edge| {
            let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
            parent[ra] = rb;
        };
        let mut exp = 0i64;
        for (x, c) in cs.iter().enumerate() {
            let p = c.pd;
            if mask >> x & 1 == 0 {
                union(p[0], p[1]);
                union(p[2], p[3]);
                exp += 1;
            } else {
                union(p[0], p[3]);
                union(p[1], p[2]);
                exp -= 1;
            }
        }
        let loops = (0..edges.len()).filter(|&i| find(&mut parent, i) == i).count() + d.free_loops();
        *counts.entry((exp, loops - 1)).or_default() += 1;
    }
    let delta = LaurentPoly::delta();
    counts
        .into_iter()
        .map(|((e, m), c)| LaurentPoly::monomial(c, e) * delta.pow(m as u32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Crossing, Sign};

    #[test]
    fn small_cases() {
        assert_eq!(naive_bracket(&Diagram::unlink(3)), LaurentPoly::delta().pow(2));
        let kink = Diagram::new(vec![Crossing::new([1, 2, 2, 1], Sign::Negative)], 0).unwrap();
        assert_eq!(naive_bracket(&kink), LaurentPoly::monomial(-1, -3));
    }
}
