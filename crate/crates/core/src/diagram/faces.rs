//! Faces of the planar 4-valent graph underlying a diagram.
//!
//! A dart `(x, s)` is the arrival at crossing `x` through slot `s`; the face
//! on its left is found by leaving through slot `s - 1` (clockwise neighbour)
//! and walking along that edge to its other end.

use std::collections::BTreeMap;

use super::{Crossing, Edge};

#[derive(Debug, Clone)]
pub struct Faces {
    dart_face: Vec<usize>,
    faces: Vec<Vec<(usize, usize)>>,
    piece_of_crossing: Vec<usize>,
    pieces: usize,
    pd: Vec<[Edge; 4]>,
    occ: BTreeMap<Edge, [(usize, usize); 2]>,
}

impl Faces {
    pub fn new(crossings: &[Crossing]) -> Self {
        let pd: Vec<[Edge; 4]> = crossings.iter().map(|c| c.pd).collect();
        let mut tmp: BTreeMap<Edge, Vec<(usize, usize)>> = BTreeMap::new();
        for (x, c) in pd.iter().enumerate() {
            for (s, &e) in c.iter().enumerate() {
                tmp.entry(e).or_default().push((x, s));
            }
        }
        let occ: BTreeMap<Edge, [(usize, usize); 2]> = tmp.into_iter().map(|(e, v)| (e, [v[0], v[1]])).collect();
        let n = pd.len();
        let mut dart_face = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            while dart_face[d] == usize::MAX {
                dart_face[d] = id;
                let (x, s) = (d / 4, d % 4);
                boundary.push((x, s));
                let s2 = (s + 3) % 4;
                let e = pd[x][s2];
                let [o0, o1] = occ[&e];
                let (y, t) = if o0 == (x, s2) { o1 } else { o0 };
                d = 4 * y + t;
            }
            faces.push(boundary);
        }
        // connected pieces by shared edges
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for [o0, o1] in occ.values() {
            let (a, b) = (find(&mut parent, o0.0), find(&mut parent, o1.0));
            parent[a] = b;
        }
        let mut root_id = BTreeMap::new();
        let piece_of_crossing: Vec<usize> = (0..n)
            .map(|x| {
                let r = find(&mut parent, x);
                let k = root_id.len();
                *root_id.entry(r).or_insert(k)
            })
            .collect();
        Self { dart_face, faces, piece_of_crossing, pieces: root_id.len(), pd, occ }
    }

    pub fn count(&self) -> usize {
        self.faces.len()
    }

    /// Darts bounding face `f`, in boundary order.
    pub fn boundary(&self, f: usize) -> &[(usize, usize)] {
        &self.faces[f]
    }

    pub fn boundary_edges(&self, f: usize) -> impl Iterator<Item = Edge> + '_ {
        self.faces[f].iter().map(|&(x, s)| self.pd[x][s])
    }

    pub fn dart_face(&self, x: usize, s: usize) -> usize {
        self.dart_face[4 * x + s]
    }

    /// The other occurrence of the edge at `(x, s)`.
    pub fn partner(&self, x: usize, s: usize) -> (usize, usize) {
        let [o0, o1] = self.occ[&self.pd[x][s]];
        if o0 == (x, s) {
            o1
        } else {
            o0
        }
    }

    pub fn piece_of_crossing(&self, x: usize) -> usize {
        self.piece_of_crossing[x]
    }

    pub fn piece_of_face(&self, f: usize) -> usize {
        self.piece_of_crossing[self.faces[f][0].0]
    }

    pub fn piece_count(&self) -> usize {
        self.pieces
    }

    pub fn is_planar(&self) -> bool {
        let mut v = vec![0i64; self.pieces];
        let mut f = vec![0i64; self.pieces];
        for x in 0..self.pd.len() {
            v[self.piece_of_crossing[x]] += 1;
        }
        for id in 0..self.faces.len() {
            f[self.piece_of_face(id)] += 1;
        }
        // V - E + F = 2 with E = 2V
        (0..self.pieces).all(|p| f[p] == v[p] + 2)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{braid_closure, Crossing, Sign};
    use super::*;

    #[test]
    fn kink_has_three_faces() {
        let f = Faces::new(&[Crossing::new([1, 1, 2, 2], Sign::Positive)]);
        assert_eq!(f.count(), 3);
        assert!(f.is_planar());
        let sizes: Vec<usize> = (0..3).map(|i| f.boundary(i).len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 2);
    }

    #[test]
    fn closures_are_planar() {
        for word in [&[1, 1, 1][..], &[1, -2, 1, -2, 1, -2], &[1, 2, -1, 2, 3]] {
            let d = braid_closure(4, word);
            assert!(d.is_planar(), "{word:?}");
        }
    }

    #[test]
    fn nonplanar_rotation_detected() {
        // trefoil edges with one crossing's rotation reversed
        let bad = [
            Crossing::new([1, 5, 2, 4], Sign::Positive),
            Crossing::new([3, 1, 4, 6], Sign::Positive),
            Crossing::new([5, 2, 6, 3], Sign::Positive),
        ];
        assert!(!Faces::new(&bad).is_planar());
    }
}
