//! Connected components via union-find.

use super::Graph;

/// Union-find with path halving and union by size.
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    max_size: u32,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            max_size: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn find(&mut self, x: u32) -> u32 {
        let mut x = x;
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.max_size = self.max_size.max(self.size[ra as usize]);
    }

    /// Size of the largest set.
    pub fn max_size(&self) -> u32 {
        self.max_size
    }
}

/// Component labels and the multiset of component sizes.
#[derive(Debug, Clone)]
pub struct Components {
    /// `labels[i]` is the smallest vertex index in i's component.
    pub labels: Vec<u32>,
    /// Component sizes, descending.
    pub sizes: Vec<u32>,
}

impl Components {
    pub fn largest(&self) -> u32 {
        self.sizes.first().copied().unwrap_or(0)
    }
}

/// Union-find over the graph's edges; labels are canonical (smallest index
/// in the component) and sizes sum to the point count.
pub fn connected_components(graph: &Graph) -> Components {
    let n = graph.point_count();
    let mut uf = UnionFind::new(n);
    for (i, list) in graph.adjacency.iter().enumerate() {
        for &j in list {
            if (j as usize) > i {
                uf.union(i as u32, j);
            }
        }
    }
    components_from_unionfind(&mut uf, n)
}

pub(crate) fn components_from_unionfind(uf: &mut UnionFind, n: usize) -> Components {
    // Canonical label: smallest vertex index per root.
    let mut canonical: Vec<u32> = vec![u32::MAX; n];
    let mut labels = vec![0u32; n];
    for i in 0..n as u32 {
        let r = uf.find(i) as usize;
        if canonical[r] == u32::MAX {
            canonical[r] = i;
        }
        labels[i as usize] = canonical[r];
    }
    let mut count: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
    for &l in &labels {
        *count.entry(l).or_insert(0) += 1;
    }
    let mut sizes: Vec<u32> = count.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Components { labels, sizes }
}

/// Largest component size divided by the point count: the finite-volume
/// surrogate for the percolation probability.
pub fn largest_component_fraction(graph: &Graph) -> f64 {
    let c = connected_components(graph);
    c.largest() as f64 / graph.point_count() as f64
}
