//! Topological invariants computed directly from the polygon, independent
//! of the rewriting machinery.
//!
//! Vertex classes come from a union-find over polygon corners; boundary
//! components come from a separate graph on edge ends. Together with the
//! orientability test they determine the surface, which gives a second
//! classification to check [`normalize`](crate::normalize::normalize) against.

mod families;
mod orbit;

pub use families::{all_words, family_iii, family_iv, family_v, random_word};
pub use orbit::{bfs_orbit, neighbours, Orbit};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normalize::{NormalForm, SurfaceKind};
use crate::word::{Character, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("inconsistent invariants for `{word}`: chi={chi}, boundary={boundary}, orientable={orientable}")]
    InconsistentInvariants {
        word: Word,
        chi: i64,
        boundary: u32,
        orientable: bool,
    },
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Corner bookkeeping for a polygon with `n` edge occurrences.
///
/// Corner `i` sits between occurrence `i - 1` and occurrence `i`. An
/// occurrence at position `i` runs from corner `i` to corner `i + 1`, or the
/// other way round when inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerComplex {
    /// `(tail, head)` corner of each edge occurrence.
    pub ends: Vec<(usize, usize)>,
    /// Vertex class index of each corner, numbered from 0 in corner order.
    pub class_of: Vec<usize>,
    pub vertices: usize,
}

impl CornerComplex {
    pub fn new(w: &Word) -> Self {
        let n = w.len();
        let ends: Vec<(usize, usize)> = w
            .letters()
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let (from, to) = (i, (i + 1) % n);
                if l.inverted {
                    (to, from)
                } else {
                    (from, to)
                }
            })
            .collect();
        let mut uf = UnionFind::new(n);
        for (_, p) in w.pairing().iter() {
            if let Some(second) = p.second {
                let (t1, h1) = ends[p.first];
                let (t2, h2) = ends[second];
                uf.union(t1, t2);
                uf.union(h1, h2);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        let class_of = (0..n)
            .map(|c| {
                let r = uf.find(c);
                roots.iter().position(|&x| x == r).unwrap_or_else(|| {
                    roots.push(r);
                    roots.len() - 1
                })
            })
            .collect();
        CornerComplex {
            ends,
            class_of,
            vertices: roots.len(),
        }
    }
}

/// `V - E + F` of the glued polygon, with `F = 1`. The empty word is the
/// sphere and gives 2.
pub fn euler_characteristic(w: &Word) -> i64 {
    if w.is_empty() {
        return 2;
    }
    let v = CornerComplex::new(w).vertices as i64;
    let e = w.pairing().len() as i64;
    v - e + 1
}

/// True iff no label occurs twice with the same orientation.
pub fn orientable(w: &Word) -> bool {
    !has_concord_pair(w)
}

/// Number of boundary circles, traced on the graph of edge ends.
///
/// Node `2i` is the start of occurrence `i` (at corner `i`) and node
/// `2i + 1` its end (at corner `i + 1`). Corners join the two ends meeting
/// there, glued occurrences join tail to tail and head to head, and a single
/// occurrence joins its own two ends. Every node has degree two, so the
/// components are cycles; those running along a single edge are boundary
/// circles.
pub fn boundary_count(w: &Word) -> u32 {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut uf = UnionFind::new(2 * n);
    for i in 0..n {
        uf.union(2 * ((i + n - 1) % n) + 1, 2 * i);
    }
    let tail_head = |i: usize| {
        if w.letters()[i].inverted {
            (2 * i + 1, 2 * i)
        } else {
            (2 * i, 2 * i + 1)
        }
    };
    let mut single_edges = Vec::new();
    for (_, p) in w.pairing().iter() {
        match p.second {
            Some(second) => {
                let (t1, h1) = tail_head(p.first);
                let (t2, h2) = tail_head(second);
                uf.union(t1, t2);
                uf.union(h1, h2);
            }
            None => {
                uf.union(2 * p.first, 2 * p.first + 1);
                single_edges.push(2 * p.first);
            }
        }
    }
    let mut circles: Vec<usize> = single_edges.into_iter().map(|x| uf.find(x)).collect();
    circles.sort_unstable();
    circles.dedup();
    circles.len() as u32
}

/// The oracle's summary of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub chi: i64,
    pub orientable: bool,
    pub boundary: u32,
    pub vertices: usize,
    pub edges: usize,
}

/// All oracle invariants of `w`. The empty word reports one vertex and no
/// edges, matching its Euler characteristic of 2.
pub fn invariants(w: &Word) -> Invariants {
    let vertices = if w.is_empty() {
        1
    } else {
        CornerComplex::new(w).vertices
    };
    Invariants {
        chi: euler_characteristic(w),
        orientable: orientable(w),
        boundary: boundary_count(w),
        vertices,
        edges: w.pairing().len(),
    }
}

/// Classification from Euler characteristic, orientability and boundary
/// count alone.
pub fn classify_by_invariants(w: &Word) -> Result<NormalForm, OracleError> {
    let b = boundary_count(w);
    let chi = euler_characteristic(w);
    let is_orientable = orientable(w);
    let closed_chi = chi + i64::from(b);
    let inconsistent = || OracleError::InconsistentInvariants {
        word: w.clone(),
        chi,
        boundary: b,
        orientable: is_orientable,
    };
    if closed_chi > 2 {
        return Err(inconsistent());
    }
    let (kind, genus) = if is_orientable {
        if closed_chi == 2 {
            (SurfaceKind::Sphere, 0)
        } else if closed_chi % 2 != 0 {
            return Err(inconsistent());
        } else {
            (SurfaceKind::Orientable, (2 - closed_chi) / 2)
        }
    } else {
        (SurfaceKind::Nonorientable, 2 - closed_chi)
    };
    NormalForm::new(kind, genus as u32, b).ok_or_else(inconsistent)
}

/// Whether some label is a concord pair.
pub fn has_concord_pair(w: &Word) -> bool {
    w.pairing()
        .iter()
        .any(|(_, p)| p.character == Character::Concord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse;

    fn w(s: &str) -> Word {
        parse(s).unwrap()
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&Word::empty()), 2);
        assert_eq!(euler_characteristic(&w("a a")), 1);
        assert_eq!(euler_characteristic(&w("a b a' b'")), 0);
        assert_eq!(euler_characteristic(&w("a a'")), 2);
        assert_eq!(euler_characteristic(&w("a x a")), 0);
    }

    #[test]
    fn corner_classes() {
        let c = CornerComplex::new(&w("a b a' b'"));
        assert_eq!(c.vertices, 1);
        assert_eq!(c.ends[2], (3, 2));
        let c = CornerComplex::new(&w("a a'"));
        assert_eq!(c.class_of, vec![0, 1]);
    }

    #[test]
    fn orientability_examples() {
        assert!(orientable(&w("a b a' b'")));
        assert!(!orientable(&w("a a")));
        assert!(!orientable(&w("a x a")));
        assert!(orientable(&w("x")));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_count(&w("a b a' b'")), 0);
        assert_eq!(boundary_count(&w("x")), 1);
        assert_eq!(boundary_count(&w("a x a' y")), 2);
        assert_eq!(boundary_count(&w("x y")), 1);
        assert_eq!(boundary_count(&w("a x a")), 1);
        assert_eq!(boundary_count(&Word::empty()), 0);
    }

    #[test]
    fn classify_examples() {
        use SurfaceKind::*;
        let nf = |k, g, b| NormalForm::new(k, g, b).unwrap();
        assert_eq!(
            classify_by_invariants(&w("a a b b")).unwrap(),
            nf(Nonorientable, 2, 0)
        );
        assert_eq!(
            classify_by_invariants(&w("a b c a' b' c'")).unwrap(),
            nf(Orientable, 1, 0)
        );
        assert_eq!(
            classify_by_invariants(&w("a x a")).unwrap(),
            nf(Nonorientable, 1, 1)
        );
        assert_eq!(
            classify_by_invariants(&Word::empty()).unwrap(),
            nf(Sphere, 0, 0)
        );
    }

    #[test]
    fn invariants_json() {
        let json = serde_json::to_value(invariants(&w("a b a' b'"))).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"chi": 0, "orientable": true, "boundary": 0, "vertices": 1, "edges": 2})
        );
    }
}
