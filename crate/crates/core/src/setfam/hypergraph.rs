//! The `(r+1)`-uniform hypergraph view of a set family and Berge cycles.
//!
//! A Berge cycle of length `l` is a closed walk `v_1, e_2, v_2, ..., e_l, v_l,
//! e_1, v_1` in the vertex/edge incidence graph with all vertices and all
//! edges distinct. The union condition up to depth `t` holds exactly when no
//! Berge cycle of length at most `t` exists.

use super::SetFamily;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub vertex_count: u32,
    pub edges: Vec<Vec<u32>>,
}

/// Vertices `v_1..v_l` and edges `e_1..e_l` with `{v_{i-1}, v_i} ⊆ e_i` for
/// `i >= 2` and `{v_1, v_l} ⊆ e_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BergeCycle {
    pub vertices: Vec<u32>,
    pub edges: Vec<usize>,
}

impl BergeCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks distinctness and every containment against `h`.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let l = self.vertices.len();
        if l < 2 || self.edges.len() != l {
            return false;
        }
        let distinct = |xs: Vec<u64>| {
            let mut s = xs.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == xs.len()
        };
        if !distinct(self.vertices.iter().map(|&v| v as u64).collect())
            || !distinct(self.edges.iter().map(|&e| e as u64).collect())
        {
            return false;
        }
        let contains = |e: usize, v: u32| h.edges.get(e).is_some_and(|edge| edge.contains(&v));
        (1..l).all(|i| contains(self.edges[i], self.vertices[i - 1]) && contains(self.edges[i], self.vertices[i]))
            && contains(self.edges[0], self.vertices[0])
            && contains(self.edges[0], self.vertices[l - 1])
    }
}

impl Hypergraph {
    pub fn is_uniform(&self, size: usize) -> bool {
        self.edges.iter().all(|e| e.len() == size)
    }

    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertex_count as usize];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i);
            }
        }
        inc
    }
}

pub fn to_hypergraph(family: &SetFamily) -> Hypergraph {
    Hypergraph {
        vertex_count: family.q(),
        edges: family.sets().to_vec(),
    }
}

/// Shortest Berge cycle of length `2..=max_len`, if any. Among cycles of the
/// shortest length the search returns the first found with the smallest
/// vertex as `v_1`, scanning vertices and edges in increasing order.
pub fn find_berge_cycle(h: &Hypergraph, max_len: usize) -> Option<BergeCycle> {
    let inc = h.incidence();
    for len in 2..=max_len.min(h.edges.len()) {
        for start in 0..h.vertex_count {
            let mut search = Search {
                h,
                inc: &inc,
                len,
                vertices: vec![start],
                edges: Vec::new(),
            };
            if search.extend() {
                let Search {
                    mut vertices,
                    edges: path_edges,
                    ..
                } = search;
                // extend() leaves the closing edge last
                let mut edges = Vec::with_capacity(len);
                edges.push(*path_edges.last().unwrap());
                edges.extend_from_slice(&path_edges[..len - 1]);
                vertices.truncate(len);
                return Some(BergeCycle { vertices, edges });
            }
        }
    }
    None
}

struct Search<'a> {
    h: &'a Hypergraph,
    inc: &'a [Vec<usize>],
    len: usize,
    vertices: Vec<u32>,
    edges: Vec<usize>,
}

impl Search<'_> {
    /// Depth-first extension of the path `v_1 e_2 v_2 ... v_k`; every vertex
    /// after `v_1` is larger than `v_1`, so each cycle is found from its
    /// minimum vertex.
    fn extend(&mut self) -> bool {
        let start = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        if self.vertices.len() == self.len {
            // closing edge holds v_l and v_1
            for &e in &self.inc[last as usize] {
                if !self.edges.contains(&e) && self.h.edges[e].contains(&start) {
                    self.edges.push(e);
                    return true;
                }
            }
            return false;
        }
        for &e in &self.inc[last as usize] {
            if self.edges.contains(&e) {
                continue;
            }
            for &v in &self.h.edges[e] {
                if v <= start || self.vertices.contains(&v) {
                    continue;
                }
                self.edges.push(e);
                self.vertices.push(v);
                if self.extend() {
                    return true;
                }
                self.vertices.pop();
                self.edges.pop();
            }
        }
        false
    }
}

/// True iff the union-condition verdict and the Berge-cycle verdict agree:
/// the family passes exactly when no Berge cycle of length at most `t`
/// exists. A `false` return means one of the two routines is wrong.
pub fn equivalence_check(family: &SetFamily) -> bool {
    let passes = family.passes();
    let cycle = find_berge_cycle(&to_hypergraph(family), family.t()).is_some();
    passes != cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(edges: &[&[u32]]) -> Hypergraph {
        Hypergraph {
            vertex_count: 13,
            edges: edges.iter().map(|e| e.to_vec()).collect(),
        }
    }

    /// Oracle: try every sequence of distinct edges and distinct vertices.
    fn brute_cycle(h: &Hypergraph, max_len: usize) -> bool {
        fn go(h: &Hypergraph, len: usize, vs: &mut Vec<u32>, es: &mut Vec<usize>) -> bool {
            if es.len() == len {
                let c = BergeCycle {
                    vertices: vs.clone(),
                    edges: es.clone(),
                };
                return c.is_valid_in(h);
            }
            for e in 0..h.edges.len() {
                if es.contains(&e) {
                    continue;
                }
                for v in 0..h.vertex_count {
                    if vs.contains(&v) || !h.edges[e].contains(&v) {
                        continue;
                    }
                    es.push(e);
                    vs.push(v);
                    if go(h, len, vs, es) {
                        return true;
                    }
                    vs.pop();
                    es.pop();
                }
            }
            false
        }
        (2..=max_len).any(|len| go(h, len, &mut Vec::new(), &mut Vec::new()))
    }

    #[test]
    fn two_cycle_on_shared_pair() {
        let g = h(&[&[0, 1, 2], &[1, 2, 3]]);
        let c = find_berge_cycle(&g, 2).unwrap();
        assert_eq!(c.vertices, vec![1, 2]);
        assert!(c.is_valid_in(&g));
    }

    #[test]
    fn triangle_three_cycle() {
        let g = h(&[&[0, 1, 2], &[2, 3, 4], &[4, 5, 0]]);
        assert!(find_berge_cycle(&g, 2).is_none());
        let c = find_berge_cycle(&g, 3).unwrap();
        assert_eq!(c.vertices, vec![0, 2, 4]);
        assert_eq!(c.edges, vec![2, 0, 1]);
        assert!(c.is_valid_in(&g));
        assert!(brute_cycle(&g, 3));
    }

    #[test]
    fn path_has_no_cycle() {
        let g = h(&[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6]]);
        assert!(find_berge_cycle(&g, 3).is_none());
        assert!(!brute_cycle(&g, 3));
    }

    #[test]
    fn hypergraph_view_of_family() {
        let f = SetFamily::new(13, 2, 2, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let g = to_hypergraph(&f);
        assert_eq!(g.vertex_count, 13);
        assert_eq!(g.edges, f.sets());
        assert!(g.is_uniform(3));
        let empty = SetFamily::new(13, 2, 2, vec![]).unwrap();
        assert!(to_hypergraph(&empty).edges.is_empty());
    }

    #[test]
    fn common_vertex_star_is_not_a_cycle() {
        // three edges through vertex 0 pairwise meet but carry no Berge cycle
        let g = h(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]]);
        assert!(find_berge_cycle(&g, 3).is_none());
        let f = SetFamily::new(13, 2, 3, g.edges.clone()).unwrap();
        assert!(f.passes());
        assert!(equivalence_check(&f));
    }

    #[test]
    fn equivalence_on_shared_pair() {
        let f = SetFamily::new(13, 2, 2, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert!(!f.passes());
        assert!(equivalence_check(&f));
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (3u32..=9, 1usize..=3, 1usize..=5).prop_flat_map(|(n, r, m)| {
            let r = r.min(n as usize - 1);
            let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), r + 1);
            proptest::collection::vec(edge, m).prop_map(move |edges| Hypergraph { vertex_count: n, edges })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn search_matches_brute_force(g in arb_hypergraph(), max_len in 2usize..=4) {
            let found = find_berge_cycle(&g, max_len);
            prop_assert_eq!(found.is_some(), brute_cycle(&g, max_len));
            if let Some(c) = found {
                prop_assert!(c.is_valid_in(&g));
                prop_assert!(c.len() <= max_len);
            }
        }
    }
}
