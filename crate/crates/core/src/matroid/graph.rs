use super::{ElementSet, MatroidError};

/// Multigraph with loops allowed; edge `i` becomes matroid element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nverts: usize,
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// `false` if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Graph {
    pub fn new(nverts: usize, edges: Vec<(usize, usize)>) -> Result<Self, MatroidError> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= nverts || v >= nverts) {
            return Err(MatroidError::ElementOutOfRange(u.max(v)));
        }
        Ok(Graph {
            nverts,
            edges,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        Graph::new(n, edges).unwrap().with_name(format!("K{n}"))
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let edges = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, m + j)))
            .collect();
        Graph::new(m + n, edges)
            .unwrap()
            .with_name(format!("K{m}{n}"))
    }

    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, edges).unwrap().with_name(format!("C{n}"))
    }

    /// Wheel with hub 0 and rim vertices `1..=n`. Edges `0..n` are the spokes
    /// (hub to rim vertex `i+1`), edges `n..2n` the rim, edge `n+i` joining
    /// rim vertices `i+1` and `i+2` (cyclically), so rim edge `n` closes a
    /// triangle with spokes `0` and `1`.
    pub fn wheel(n: usize) -> Self {
        let spokes = (0..n).map(|i| (0, i + 1));
        let rim = (0..n).map(|i| (i + 1, (i + 1) % n + 1));
        Graph::new(n + 1, spokes.chain(rim).collect())
            .unwrap()
            .with_name(format!("W{n}"))
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.nverts);
        let merges = self.edges.iter().filter(|&&(u, v)| uf.union(u, v)).count();
        self.nverts - merges
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The edges in `s` contain no cycle (a loop is a cycle).
    pub fn is_forest(&self, s: ElementSet) -> bool {
        let mut uf = UnionFind::new(self.nverts);
        s.iter().all(|i| {
            let (u, v) = self.edges[i];
            uf.union(u, v)
        })
    }

    /// Merges vertex `w` into `v`, keeping every edge (edges between them
    /// become loops) and their order. Vertices above `w` shift down by one.
    pub fn identify(&self, v: usize, w: usize) -> Graph {
        assert!(v < self.nverts && w < self.nverts && v != w);
        let map = |x: usize| {
            let x = if x == w { v } else { x };
            if x > w {
                x - 1
            } else {
                x
            }
        };
        Graph {
            nverts: self.nverts - 1,
            edges: self.edges.iter().map(|&(a, b)| (map(a), map(b))).collect(),
            name: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert_eq!(Graph::complete(5).edges().len(), 10);
        assert_eq!(Graph::complete_bipartite(3, 3).edges().len(), 9);
        let w = Graph::wheel(4);
        assert_eq!(w.edges()[4], (1, 2));
        assert_eq!(w.edges()[7], (4, 1));
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn components_and_identify() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.component_count(), 2);
        assert!(!g.is_connected());
        let path = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let h = path.identify(0, 2);
        assert_eq!(h.nverts(), 2);
        assert_eq!(h.edges(), &[(0, 1), (1, 0)]);
        assert!(!Graph::new(1, vec![(0, 0)])
            .unwrap()
            .is_forest(ElementSet::full(1)));
    }
}
