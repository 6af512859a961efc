//! Shortest paths: full-graph BFS, lazy bidirectional pair distance, and
//! the reach functional S_n.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::Mutex;

use crate::error::{CoreError, Result};
use crate::lattice::{LatticeBox, PointIndex};
use crate::model::params::ModelParams;

use super::{Graph, LazyGraph};

/// Sentinel for unreachable vertices in hop-count arrays.
pub const UNREACHABLE: u32 = u32::MAX;

/// Visited-set guard for lazy searches; exceeding it is a resource error.
pub const FRONTIER_GUARD: usize = 20_000_000;

/// Exact hop counts from `source` to every vertex; unreachable entries hold
/// [`UNREACHABLE`].
pub fn bfs_distances(graph: &Graph, source: PointIndex) -> Vec<u32> {
    let n = graph.point_count();
    let mut dist = vec![UNREACHABLE; n];
    dist[source.index()] = 0;
    let mut queue = VecDeque::from([source.0]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v as usize] + 1;
        for &j in &graph.adjacency[v as usize] {
            if dist[j as usize] == UNREACHABLE {
                dist[j as usize] = next;
                queue.push_back(j);
            }
        }
    }
    dist
}

/// Farthest Euclidean displacement reachable from `source` within `n` hops.
pub fn reach_radius(graph: &Graph, source: PointIndex, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let dist = bfs_distances(graph, source);
    let mut best = 0.0f64;
    for (j, &d) in dist.iter().enumerate() {
        if d != UNREACHABLE && d <= n {
            best = best.max(
                graph
                    .geometry
               .displacement_norm(source, PointIndex(j as u32)),
            );
        }
    }
    best
}

/// Memoizing neighbor cache over a lazy graph, shared across pair queries.
pub struct LazyBfs<'a> {
    pub graph: &'a LazyGraph,
    cache: Mutex<HashMap<u32, std::sync::Arc<Vec<u32>>>>,
}

impl<'a> LazyBfs<'a> {
    pub fn new(graph: &'a LazyGraph) -> Self {
        LazyBfs {
            graph,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn neighbors(&self, v: u32) -> Result<std::sync::Arc<Vec<u32>>> {
        if let Some(hit) = self.cache.lock().unwrap().get(&v) {
            return Ok(hit.clone());
        }
        // Computed outside the lock; a concurrent duplicate computes the
        // same deterministic list.
        let list = std::sync::Arc::new(self.graph.vertex_edges_raw(v)?);
        let mut cache = self.cache.lock().unwrap();
        let entry = cache.entry(v).or_insert_with(|| list.clone());
        Ok(entry.clone())
    }

    /// Bidirectional level-synchronized BFS between `x` and `y`.
    ///
    /// Returns `Some(hops)` if the graph distance is `<= max_hops`, `None`
    /// otherwise. Expanding alternates to the smaller frontier; the search
    /// terminates once the completed levels certify the best meeting point.
    pub fn pair_distance(&self, x: u32, y: u32, max_hops: u32) -> Result<Option<u32>> {
        if x == y {
            return Ok(Some(0));
        }
        let mut dist_a: HashMap<u32, u32> = HashMap::from([(x, 0)]);
        let mut dist_b: HashMap<u32, u32> = HashMap::from([(y, 0)]);
        let mut frontier_a = vec![x];
        let mut frontier_b = vec![y];
        let (mut level_a, mut level_b) = (0u32, 0u32);
        let mut best = u32::MAX;

        loop {
            // A path of length D <= level_a + level_b is always witnessed by
            // a discovered meeting vertex, so once the sum reaches `best`
            // (or the cap) the answer is settled.
            if best <= level_a + level_b {
                return Ok(Some(best).filter(|&b| b <= max_hops));
            }
            if level_a + level_b >= max_hops {
                return Ok(None);
            }
            if frontier_a.is_empty() || frontier_b.is_empty() {
                // One side exhausted its component without meeting.
                return Ok(None);
            }
            let expand_a = frontier_a.len() <= frontier_b.len();
            let (dist_self, dist_other, frontier, level) = if expand_a {
                (&mut dist_a, &dist_b, &mut frontier_a, &mut level_a)
            } else {
                (&mut dist_b, &dist_a, &mut frontier_b, &mut level_b)
            };
            let next_level = *level + 1;
            let mut next = Vec::new();
            for &v in frontier.iter() {
                for &j in self.neighbors(v)?.iter() {
                    if let std::collections::hash_map::Entry::Vacant(slot) = dist_self.entry(j) {
                        slot.insert(next_level);
                        next.push(j);
                        if let Some(&other) = dist_other.get(&j) {
                            best = best.min(next_level + other);
                        }
                    }
                }
            }
            if dist_a.len() + dist_b.len() > FRONTIER_GUARD {
                return Err(CoreError::Budget(format!(
                    "lazy BFS visited {} vertices (guard {FRONTIER_GUARD})",
                    dist_a.len() + dist_b.len()
                )));
            }
            *frontier = next;
            *level = next_level;
        }
    }
}

/// Graph distance between `x` and `y` measured without materializing the
/// full graph; consistent with [`bfs_distances`] for the same seed.
pub fn pair_distance_lazy(
    params: &ModelParams,
    geometry: &LatticeBox,
    seed: u64,
    x: PointIndex,
    y: PointIndex,
    max_hops: u32,
) -> Result<Option<u32>> {
    let lazy = LazyGraph::new(params, geometry, seed);
    LazyBfs::new(&lazy).pair_distance(x.0, y.0, max_hops)
}
