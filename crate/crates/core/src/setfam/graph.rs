use super::{sorted_intersection_len, SetFamily};

/// Undirected simple graph on `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Builds a graph, normalizing each edge to `(min, max)` and dropping
    /// loops and repeats.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut es: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(a, b)| a != b && a < n && b < n)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        es.sort_unstable();
        es.dedup();
        SimpleGraph { n, edges: es }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()`.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let pos = |v: usize| vertices.iter().position(|&x| x == v);
        let edges = self.edges.iter().filter_map(|&(a, b)| Some((pos(a)?, pos(b)?)));
        SimpleGraph::new(vertices.len(), edges)
    }
}

/// Graph on the family's indices with `{i, j}` an edge iff `A_i` and `A_j` meet.
pub fn intersection_graph(family: &SetFamily) -> SimpleGraph {
    let sets = family.sets();
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sorted_intersection_len(&sets[i], &sets[j]) > 0 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(sets.len(), edges)
}

/// Exact cycle detection by union-find: a cycle exists iff some edge joins
/// two vertices that are already connected.
pub fn has_cycle(g: &SimpleGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let found = g.edges.iter().any(|&(a, b)| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            true
        } else {
            parent[ra] = rb;
            false
        }
    });
    // a forest has at most |V| - 1 edges
    debug_assert!(found || g.edges.len() < g.n.max(1));
    found
}
