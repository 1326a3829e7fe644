//! Integer maximum flow over explicit residual networks.
//!
//! Flows are kept in skew-symmetric form: `f(u, v) = -f(v, u)` for every
//! ordered pair, so pushing flow along a back edge cancels prior flow on
//! the forward edge by plain arithmetic. The residual capacity of a pair
//! is `c_f(u, v) = c(u, v) - f(u, v)`, and an augmenting path is a simple
//! source-to-sink path through pairs with positive residual capacity.
//!
//! [`max_flow`] iterates augmenting-path search until none remains. Two
//! search strategies are provided: depth-first, and breadth-first (which
//! augments along a path with the fewest edges each round). With integer
//! capacities every augmentation adds at least one unit, so both
//! strategies terminate and return the same flow value.
//!
//! [`min_cut_value`] is an exponential cut enumeration kept as an
//! independent correctness oracle: by max-flow/min-cut duality it must
//! equal the value [`max_flow`] returns.

use std::collections::{BTreeMap, VecDeque};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Vertex id inside a [`FlowNetwork`]; valid ids are `0..vertex_count`.
pub type Vertex = usize;

/// Largest network [`min_cut_value`] will enumerate cuts for.
pub const MIN_CUT_VERTEX_LIMIT: usize = 20;

/// How [`find_augmenting_path`] searches the residual network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SearchStrategy {
    /// Iterative depth-first search, neighbors in ascending vertex id.
    DepthFirst,
    /// Breadth-first search; returns a path with the minimum number of
    /// edges, ties broken by the lowest-numbered next vertex.
    BreadthFirst,
}

impl SearchStrategy {
    pub const ALL: [SearchStrategy; 2] = [SearchStrategy::DepthFirst, SearchStrategy::BreadthFirst];
}

/// A network construction or oracle error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("self-loop capacity on vertex {0}")]
    SelfLoop(Vertex),
    #[error("negative capacity {capacity} on ({from}, {to})")]
    NegativeCapacity {
        from: Vertex,
        to: Vertex,
        capacity: i64,
    },
    #[error("network too large for cut enumeration: {vertex_count} vertices (limit {limit})")]
    NetworkTooLarge { vertex_count: usize, limit: usize },
}

/// A directed graph with non-negative integer capacities and a
/// distinguished source and sink.
///
/// Ordered pairs absent from the capacity map have capacity 0. Capacities
/// on anti-parallel pairs (`c(u,v) > 0` and `c(v,u) > 0`) are permitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    vertex_count: usize,
    source: Vertex,
    sink: Vertex,
    capacity: BTreeMap<(Vertex, Vertex), i64>,
    /// `v ∈ adjacency[u]` iff `c(u,v) > 0` or `c(v,u) > 0`; sorted.
    adjacency: Vec<Vec<Vertex>>,
}

impl FlowNetwork {
    pub fn new(
        vertex_count: usize,
        source: Vertex,
        sink: Vertex,
    ) -> Result<FlowNetwork, NetworkError> {
        if source == sink {
            return Err(NetworkError::SourceIsSink);
        }
        for vertex in [source, sink] {
            if vertex >= vertex_count {
                return Err(NetworkError::VertexOutOfRange {
                    vertex,
                    vertex_count,
                });
            }
        }
        Ok(FlowNetwork {
            vertex_count,
            source,
            sink,
            capacity: BTreeMap::new(),
            adjacency: vec![Vec::new(); vertex_count],
        })
    }

    /// Set `c(from, to)`, replacing any previous value. Setting 0 removes
    /// the pair from the capacity map.
    pub fn set_capacity(
        &mut self,
        from: Vertex,
        to: Vertex,
        capacity: i64,
    ) -> Result<(), NetworkError> {
        for vertex in [from, to] {
            if vertex >= self.vertex_count {
                return Err(NetworkError::VertexOutOfRange {
                    vertex,
                    vertex_count: self.vertex_count,
                });
            }
        }
        if from == to {
            return Err(NetworkError::SelfLoop(from));
        }
        if capacity < 0 {
            return Err(NetworkError::NegativeCapacity { from, to, capacity });
        }
        if capacity == 0 {
            self.capacity.remove(&(from, to));
        } else {
            self.capacity.insert((from, to), capacity);
        }
        self.refresh_adjacency(from, to);
        self.refresh_adjacency(to, from);
        Ok(())
    }

    fn refresh_adjacency(&mut self, u: Vertex, v: Vertex) {
        let connected = self.capacity.contains_key(&(u, v)) || self.capacity.contains_key(&(v, u));
        let list = &mut self.adjacency[u];
        match list.binary_search(&v) {
            Ok(index) if !connected => {
                list.remove(index);
            }
            Err(index) if connected => list.insert(index, v),
            _ => {}
        }
    }

    pub fn capacity(&self, from: Vertex, to: Vertex) -> i64 {
        self.capacity.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn sink(&self) -> Vertex {
        self.sink
    }

    /// Directed pairs with positive capacity, in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.capacity.iter().map(|(&(u, v), &c)| (u, v, c))
    }

    pub fn edge_count(&self) -> usize {
        self.capacity.len()
    }

    /// Vertices adjacent to `u` in either direction, ascending.
    fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adjacency[u]
    }
}

/// A violated flow property, found by [`Flow::check_properties`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyViolation {
    #[error("capacity constraint violated on ({from}, {to}): flow {flow} > capacity {capacity}")]
    CapacityExceeded {
        from: Vertex,
        to: Vertex,
        flow: i64,
        capacity: i64,
    },
    #[error("skew symmetry violated on ({from}, {to}): f = {forward}, reverse = {reverse}")]
    SkewAsymmetry {
        from: Vertex,
        to: Vertex,
        forward: i64,
        reverse: i64,
    },
    #[error("flow conservation violated at vertex {vertex}: net outflow {net}")]
    ConservationViolated { vertex: Vertex, net: i64 },
    #[error("stored value {stored} differs from source outflow {computed}")]
    ValueMismatch { stored: i64, computed: i64 },
}

/// An integer flow assignment in skew-symmetric form.
///
/// The amount map never stores zero entries, and stores `(u, v) -> f`
/// iff it stores `(v, u) -> -f`. `value` is the net outflow of the
/// source, and `augmentations` counts the [`Flow::augment`] calls that
/// built this flow (the iteration count of [`max_flow`]).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Flow {
    amounts: BTreeMap<(Vertex, Vertex), i64>,
    value: i64,
    augmentations: u64,
}

impl Flow {
    /// The all-zero flow.
    pub fn zero() -> Flow {
        Flow::default()
    }

    pub fn amount(&self, from: Vertex, to: Vertex) -> i64 {
        self.amounts.get(&(from, to)).copied().unwrap_or(0)
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn augmentations(&self) -> u64 {
        self.augmentations
    }

    /// Pairs carrying positive flow, in ascending key order.
    pub fn positive_amounts(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.amounts
            .iter()
            .filter(|(_, &f)| f > 0)
            .map(|(&(u, v), &f)| (u, v, f))
    }

    fn add(&mut self, from: Vertex, to: Vertex, delta: i64) {
        let forward = self.amount(from, to) + delta;
        if forward == 0 {
            self.amounts.remove(&(from, to));
            self.amounts.remove(&(to, from));
        } else {
            self.amounts.insert((from, to), forward);
            self.amounts.insert((to, from), -forward);
        }
    }

    /// Push `path.bottleneck` units along an augmenting path: every
    /// forward pair gains the bottleneck, reverse amounts mirror it to
    /// keep skew symmetry, and the flow value grows by the bottleneck.
    ///
    /// The path must be a valid augmenting path for this flow on `net`
    /// (as produced by [`find_augmenting_path`]); this is debug-asserted,
    /// not checked in release builds.
    pub fn augment(&mut self, net: &FlowNetwork, path: &AugmentingPath) {
        debug_assert!(path.vertices.first() == Some(&net.source()));
        debug_assert!(path.vertices.last() == Some(&net.sink()));
        debug_assert!(path.bottleneck > 0);
        debug_assert_eq!(
            path.bottleneck,
            path.edges()
                .map(|(u, v)| residual_capacity(net, self, u, v))
                .min()
                .unwrap_or(0),
        );
        for (u, v) in path.edges() {
            self.add(u, v, path.bottleneck);
        }
        self.value += path.bottleneck;
        self.augmentations += 1;
    }

    /// Verify the three flow properties plus value consistency:
    /// capacity constraint, skew symmetry, and conservation at every
    /// vertex other than the source and sink.
    pub fn check_properties(&self, net: &FlowNetwork) -> Result<(), PropertyViolation> {
        let mut net_outflow = vec![0i64; net.vertex_count()];
        let mut smaller_first = 0usize;
        let mut larger_first = 0usize;
        for (&(u, v), &f) in &self.amounts {
            // One skew lookup per unordered pair: every smaller-first
            // entry is checked against its mirror, and the entry counts
            // rule out mirrors without a smaller-first partner.
            if u < v {
                smaller_first += 1;
                let reverse = self.amount(v, u);
                if reverse != -f {
                    return Err(PropertyViolation::SkewAsymmetry {
                        from: u,
                        to: v,
                        forward: f,
                        reverse,
                    });
                }
            } else {
                larger_first += 1;
            }
            // Negative amounts satisfy the capacity constraint trivially
            // because capacities are non-negative.
            if f > 0 {
                let capacity = net.capacity(u, v);
                if f > capacity {
                    return Err(PropertyViolation::CapacityExceeded {
                        from: u,
                        to: v,
                        flow: f,
                        capacity,
                    });
                }
            }
            net_outflow[u] += f;
        }
        if smaller_first != larger_first {
            let (&(from, to), &forward) = self
                .amounts
                .iter()
                .find(|(&(u, v), _)| !self.amounts.contains_key(&(v, u)))
                .expect("count mismatch implies an unpaired entry");
            return Err(PropertyViolation::SkewAsymmetry {
                from,
                to,
                forward,
                reverse: 0,
            });
        }
        for (vertex, &net_flow) in net_outflow.iter().enumerate() {
            if vertex != net.source() && vertex != net.sink() && net_flow != 0 {
                return Err(PropertyViolation::ConservationViolated {
                    vertex,
                    net: net_flow,
                });
            }
        }
        let computed = net_outflow[net.source()];
        if computed != self.value {
            return Err(PropertyViolation::ValueMismatch {
                stored: self.value,
                computed,
            });
        }
        Ok(())
    }
}

/// Serialized form: the positive half of the skew-symmetric amount map.
#[derive(Serialize, Deserialize)]
struct FlowRepr {
    value: i64,
    augmentations: u64,
    edges: Vec<FlowEdgeRepr>,
}

#[derive(Serialize, Deserialize)]
struct FlowEdgeRepr {
    from: Vertex,
    to: Vertex,
    amount: i64,
}

impl Serialize for Flow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FlowRepr {
            value: self.value,
            augmentations: self.augmentations,
            edges: self
                .positive_amounts()
                .map(|(from, to, amount)| FlowEdgeRepr { from, to, amount })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Flow {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Flow, D::Error> {
        let repr = FlowRepr::deserialize(deserializer)?;
        let mut flow = Flow {
            amounts: BTreeMap::new(),
            value: repr.value,
            augmentations: repr.augmentations,
        };
        for edge in repr.edges {
            if edge.amount <= 0 {
                return Err(D::Error::custom(format!(
                    "flow edge ({}, {}) must carry positive flow, got {}",
                    edge.from, edge.to, edge.amount
                )));
            }
            if flow.amounts.contains_key(&(edge.from, edge.to)) {
                return Err(D::Error::custom(format!(
                    "duplicate flow edge ({}, {})",
                    edge.from, edge.to
                )));
            }
            flow.amounts.insert((edge.from, edge.to), edge.amount);
            flow.amounts.insert((edge.to, edge.from), -edge.amount);
        }
        Ok(flow)
    }
}

/// Residual capacity `c_f(u, v) = c(u, v) - f(u, v)`.
///
/// Positive on a pair carrying back-flow even when `c(u, v) = 0`: with
/// `c(u, v) = 10` and `f(u, v) = 7`, the residual is 3 forward and 7 on
/// the reverse pair.
pub fn residual_capacity(net: &FlowNetwork, flow: &Flow, from: Vertex, to: Vertex) -> i64 {
    net.capacity(from, to) - flow.amount(from, to)
}

/// A simple source-to-sink path through positive-residual pairs, with
/// its bottleneck (the minimum residual capacity along it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentingPath {
    pub vertices: Vec<Vertex>,
    pub bottleneck: i64,
}

impl AugmentingPath {
    /// Consecutive vertex pairs along the path.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Find an augmenting path for `flow` in the residual network, or `None`
/// when no source-to-sink path with positive residual capacity remains.
///
/// Both strategies explore neighbors in ascending vertex id, so results
/// are deterministic. The breadth-first strategy returns a path with the
/// minimum number of edges, ties broken by the lowest-numbered next
/// vertex along the path.
pub fn find_augmenting_path(
    net: &FlowNetwork,
    flow: &Flow,
    strategy: SearchStrategy,
) -> Option<AugmentingPath> {
    let vertices = match strategy {
        SearchStrategy::BreadthFirst => breadth_first_path(net, flow),
        SearchStrategy::DepthFirst => depth_first_path(net, flow),
    }?;
    let bottleneck = vertices
        .windows(2)
        .map(|w| residual_capacity(net, flow, w[0], w[1]))
        .min()
        .expect("path has at least one edge");
    Some(AugmentingPath {
        vertices,
        bottleneck,
    })
}

fn breadth_first_path(net: &FlowNetwork, flow: &Flow) -> Option<Vec<Vertex>> {
    let source = net.source();
    let sink = net.sink();
    let mut parent: Vec<Option<Vertex>> = vec![None; net.vertex_count()];
    let mut visited = vec![false; net.vertex_count()];
    visited[source] = true;
    let mut queue = VecDeque::from([source]);
    'search: while let Some(u) = queue.pop_front() {
        for &v in net.neighbors(u) {
            if visited[v] || residual_capacity(net, flow, u, v) <= 0 {
                continue;
            }
            visited[v] = true;
            parent[v] = Some(u);
            if v == sink {
                break 'search;
            }
            queue.push_back(v);
        }
    }
    if !visited[sink] {
        return None;
    }
    let mut vertices = vec![sink];
    let mut current = sink;
    while let Some(prev) = parent[current] {
        vertices.push(prev);
        current = prev;
    }
    vertices.reverse();
    Some(vertices)
}

fn depth_first_path(net: &FlowNetwork, flow: &Flow) -> Option<Vec<Vertex>> {
    let source = net.source();
    let sink = net.sink();
    let mut visited = vec![false; net.vertex_count()];
    visited[source] = true;
    // Explicit stack of (vertex, next neighbor index); tolerates long
    // paths without touching the call stack.
    let mut stack: Vec<(Vertex, usize)> = vec![(source, 0)];
    while let Some(&(u, next)) = stack.last() {
        let neighbors = net.neighbors(u);
        if next >= neighbors.len() {
            stack.pop();
            continue;
        }
        stack.last_mut().expect("stack is non-empty").1 = next + 1;
        let v = neighbors[next];
        if visited[v] || residual_capacity(net, flow, u, v) <= 0 {
            continue;
        }
        visited[v] = true;
        stack.push((v, 0));
        if v == sink {
            return Some(stack.into_iter().map(|(vertex, _)| vertex).collect());
        }
    }
    None
}

/// Compute a maximum flow by repeated augmentation, starting from the
/// zero flow, until no augmenting path remains.
///
/// The result is integral, deterministic, and strategy-independent in
/// value; `augmentations` carries the iteration count. Every iteration
/// raises the value by at least one unit, so iterations never exceed the
/// final value.
pub fn max_flow(net: &FlowNetwork, strategy: SearchStrategy) -> Flow {
    let mut flow = Flow::zero();
    while let Some(path) = find_augmenting_path(net, &flow, strategy) {
        flow.augment(net, &path);
        debug_assert_eq!(flow.check_properties(net), Ok(()));
    }
    flow
}

/// Brute-force minimum cut: enumerate every bipartition (S, T) with the
/// source in S and the sink in T, and return the least total capacity of
/// pairs crossing from S to T.
///
/// Exponential in the vertex count; refuses networks with more than
/// [`MIN_CUT_VERTEX_LIMIT`] vertices. Kept as the independent oracle for
/// [`max_flow`].
pub fn min_cut_value(net: &FlowNetwork) -> Result<i64, NetworkError> {
    if net.vertex_count() > MIN_CUT_VERTEX_LIMIT {
        return Err(NetworkError::NetworkTooLarge {
            vertex_count: net.vertex_count(),
            limit: MIN_CUT_VERTEX_LIMIT,
        });
    }
    let intermediates: Vec<Vertex> = (0..net.vertex_count())
        .filter(|&v| v != net.source() && v != net.sink())
        .collect();
    let edges: Vec<(Vertex, Vertex, i64)> = net.edges().collect();
    let mut best = i64::MAX;
    for mask in 0u32..(1 << intermediates.len()) {
        let mut in_source_side = vec![false; net.vertex_count()];
        in_source_side[net.source()] = true;
        for (bit, &vertex) in intermediates.iter().enumerate() {
            in_source_side[vertex] = mask & (1 << bit) != 0;
        }
        let crossing: i64 = edges
            .iter()
            .filter(|&&(u, v, _)| in_source_side[u] && !in_source_side[v])
            .map(|&(_, _, c)| c)
            .sum();
        best = best.min(crossing);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn network(
        vertex_count: usize,
        source: Vertex,
        sink: Vertex,
        capacities: &[(Vertex, Vertex, i64)],
    ) -> FlowNetwork {
        let mut net = FlowNetwork::new(vertex_count, source, sink).unwrap();
        for &(u, v, c) in capacities {
            net.set_capacity(u, v, c).unwrap();
        }
        net
    }

    /// All simple source-to-sink vertex sequences through pairs with
    /// positive residual capacity; independent check for path search.
    fn enumerate_simple_paths(net: &FlowNetwork, flow: &Flow) -> Vec<Vec<Vertex>> {
        fn recurse(
            net: &FlowNetwork,
            flow: &Flow,
            path: &mut Vec<Vertex>,
            found: &mut Vec<Vec<Vertex>>,
        ) {
            let u = *path.last().unwrap();
            if u == net.sink() {
                found.push(path.clone());
                return;
            }
            for v in 0..net.vertex_count() {
                if !path.contains(&v) && residual_capacity(net, flow, u, v) > 0 {
                    path.push(v);
                    recurse(net, flow, path, found);
                    path.pop();
                }
            }
        }
        let mut found = Vec::new();
        recurse(net, flow, &mut vec![net.source()], &mut found);
        found
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        assert_eq!(
            FlowNetwork::new(3, 1, 1).unwrap_err(),
            NetworkError::SourceIsSink
        );
        assert_eq!(
            FlowNetwork::new(2, 0, 5).unwrap_err(),
            NetworkError::VertexOutOfRange {
                vertex: 5,
                vertex_count: 2
            }
        );
        let mut net = FlowNetwork::new(3, 0, 1).unwrap();
        assert_eq!(
            net.set_capacity(2, 2, 4).unwrap_err(),
            NetworkError::SelfLoop(2)
        );
        assert_eq!(
            net.set_capacity(0, 2, -1).unwrap_err(),
            NetworkError::NegativeCapacity {
                from: 0,
                to: 2,
                capacity: -1
            }
        );
    }

    #[test]
    fn residual_of_unused_edge_is_its_capacity() {
        let net = network(2, 0, 1, &[(0, 1, 10)]);
        assert_eq!(residual_capacity(&net, &Flow::zero(), 0, 1), 10);
    }

    #[test]
    fn residual_splits_into_forward_remainder_and_back_edge() {
        // Max flow saturates the 7-unit feeder, leaving f(2, 1) = 7 on the
        // 10-unit edge.
        let net = network(3, 0, 1, &[(0, 2, 7), (2, 1, 10)]);
        let flow = max_flow(&net, SearchStrategy::BreadthFirst);
        assert_eq!(flow.amount(2, 1), 7);
        assert_eq!(residual_capacity(&net, &flow, 2, 1), 3);
        // c(1,2) = 0 and f(1,2) = -7, so 7 units can come back.
        assert_eq!(residual_capacity(&net, &flow, 1, 2), 7);
    }

    #[test]
    fn saturated_edge_leaves_the_residual_network() {
        let net = network(2, 0, 1, &[(0, 1, 5)]);
        let flow = max_flow(&net, SearchStrategy::BreadthFirst);
        assert_eq!(residual_capacity(&net, &flow, 0, 1), 0);
        assert_eq!(
            find_augmenting_path(&net, &flow, SearchStrategy::BreadthFirst),
            None
        );
    }

    #[test]
    fn finds_direct_path_on_zero_flow() {
        let net = network(2, 0, 1, &[(0, 1, 4)]);
        let path = find_augmenting_path(&net, &Flow::zero(), SearchStrategy::DepthFirst).unwrap();
        assert_eq!(path.vertices, vec![0, 1]);
        assert_eq!(path.bottleneck, 4);
    }

    #[test]
    fn breadth_first_returns_a_fewest_edge_path() {
        // Two 2-hop routes with bottlenecks 3 and 8, plus a 3-hop decoy.
        let net = network(
            6,
            0,
            1,
            &[
                (0, 2, 3),
                (2, 1, 9),
                (0, 3, 8),
                (3, 1, 8),
                (0, 4, 6),
                (4, 5, 6),
                (5, 1, 6),
            ],
        );
        let zero = Flow::zero();
        let shortest = enumerate_simple_paths(&net, &zero)
            .iter()
            .map(Vec::len)
            .min()
            .unwrap();
        assert_eq!(shortest, 3); // s, mid, t
        let path = find_augmenting_path(&net, &zero, SearchStrategy::BreadthFirst).unwrap();
        assert_eq!(path.vertices.len(), shortest);
        // Lowest-numbered next vertex among the shortest paths.
        assert_eq!(path.vertices, vec![0, 2, 1]);
        assert_eq!(path.bottleneck, 3);
    }

    #[test]
    fn search_returns_none_behind_a_saturated_cut() {
        let net = network(3, 0, 1, &[(0, 2, 5), (2, 1, 5)]);
        let flow = max_flow(&net, SearchStrategy::DepthFirst);
        assert_eq!(flow.value(), 5);
        for strategy in SearchStrategy::ALL {
            assert_eq!(find_augmenting_path(&net, &flow, strategy), None);
        }
    }

    #[test]
    fn augment_maintains_skew_symmetry() {
        let net = network(3, 0, 1, &[(0, 2, 5), (2, 1, 9)]);
        let mut flow = Flow::zero();
        flow.augment(
            &net,
            &AugmentingPath {
                vertices: vec![0, 2, 1],
                bottleneck: 5,
            },
        );
        assert_eq!(flow.amount(0, 2), 5);
        assert_eq!(flow.amount(2, 1), 5);
        assert_eq!(flow.amount(2, 0), -5);
        assert_eq!(flow.amount(1, 2), -5);
        assert_eq!(flow.value(), 5);
        assert_eq!(flow.check_properties(&net), Ok(()));
    }

    #[test]
    fn augmenting_disjoint_paths_adds_bottlenecks() {
        let net = network(4, 0, 1, &[(0, 2, 3), (2, 1, 3), (0, 3, 4), (3, 1, 4)]);
        let mut flow = Flow::zero();
        flow.augment(
            &net,
            &AugmentingPath {
                vertices: vec![0, 2, 1],
                bottleneck: 3,
            },
        );
        flow.augment(
            &net,
            &AugmentingPath {
                vertices: vec![0, 3, 1],
                bottleneck: 4,
            },
        );
        assert_eq!(flow.value(), 7);
        assert_eq!(flow.augmentations(), 2);
        assert_eq!(flow.check_properties(&net), Ok(()));
    }

    /// Cross-edge diamond sized so the depth-first search routes its
    /// first augmentation through the cross edge and must cancel it
    /// through the back edge on the second.
    fn rerouting_diamond() -> FlowNetwork {
        network(
            4,
            0,
            3,
            &[(0, 1, 1), (0, 2, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)],
        )
    }

    #[test]
    fn back_edge_cancels_prior_forward_flow() {
        let net = rerouting_diamond();
        let mut flow = Flow::zero();
        let first = find_augmenting_path(&net, &flow, SearchStrategy::DepthFirst).unwrap();
        assert_eq!(first.vertices, vec![0, 1, 2, 3]); // through the cross edge
        flow.augment(&net, &first);
        assert_eq!(flow.amount(1, 2), 1);
        let second = find_augmenting_path(&net, &flow, SearchStrategy::DepthFirst).unwrap();
        assert_eq!(second.vertices, vec![0, 2, 1, 3]); // back across (2, 1)
        flow.augment(&net, &second);
        assert_eq!(flow.amount(1, 2), 0); // fully cancelled
        assert_eq!(flow.value(), 2);
        assert_eq!(flow.check_properties(&net), Ok(()));
        assert_eq!(min_cut_value(&net).unwrap(), 2);
        assert_eq!(
            find_augmenting_path(&net, &flow, SearchStrategy::DepthFirst),
            None
        );
    }

    #[test]
    fn max_flow_on_single_edge_takes_one_iteration() {
        let net = network(2, 0, 1, &[(0, 1, 9)]);
        for strategy in SearchStrategy::ALL {
            let flow = max_flow(&net, strategy);
            assert_eq!(flow.value(), 9);
            assert_eq!(flow.augmentations(), 1);
        }
    }

    #[test]
    fn max_flow_matches_oracle_on_rerouting_diamond() {
        let net = rerouting_diamond();
        let expected = min_cut_value(&net).unwrap();
        for strategy in SearchStrategy::ALL {
            assert_eq!(max_flow(&net, strategy).value(), expected);
        }
    }

    /// The 2-left × 2-right bipartite reduction used throughout the
    /// matcher: attachment capacity 10, pair weights 5, 3, 7, 10.
    fn worked_bipartite_network() -> FlowNetwork {
        network(
            6,
            0,
            1,
            &[
                (0, 2, 10),
                (0, 3, 10),
                (2, 4, 5),
                (2, 5, 3),
                (3, 4, 7),
                (3, 5, 10),
                (4, 1, 10),
                (5, 1, 10),
            ],
        )
    }

    #[test]
    fn worked_bipartite_network_flows_eighteen() {
        let net = worked_bipartite_network();
        // Oracle first: the minimum over all 16 cuts is the one isolating
        // {s, left0}, costing 10 + 5 + 3 = 18.
        assert_eq!(min_cut_value(&net).unwrap(), 18);
        for strategy in SearchStrategy::ALL {
            let flow = max_flow(&net, strategy);
            assert_eq!(flow.value(), 18);
            assert_eq!(flow.check_properties(&net), Ok(()));
        }
    }

    #[test]
    fn min_cut_of_single_edge_is_its_capacity() {
        let net = network(2, 0, 1, &[(0, 1, 9)]);
        assert_eq!(min_cut_value(&net).unwrap(), 9);
    }

    #[test]
    fn min_cut_of_disjoint_routes_sums_bottlenecks() {
        let net = network(4, 0, 1, &[(0, 2, 3), (2, 1, 9), (0, 3, 17), (3, 1, 4)]);
        assert_eq!(min_cut_value(&net).unwrap(), 7);
    }

    #[test]
    fn min_cut_refuses_oversized_networks() {
        let net = FlowNetwork::new(21, 0, 1).unwrap();
        assert_eq!(
            min_cut_value(&net).unwrap_err(),
            NetworkError::NetworkTooLarge {
                vertex_count: 21,
                limit: 20
            }
        );
    }

    #[test]
    fn disconnected_sink_means_zero_flow_and_zero_cut() {
        let net = network(4, 0, 1, &[(0, 2, 5), (2, 3, 5)]);
        assert_eq!(min_cut_value(&net).unwrap(), 0);
        for strategy in SearchStrategy::ALL {
            let flow = max_flow(&net, strategy);
            assert_eq!(flow.value(), 0);
            assert_eq!(flow.augmentations(), 0);
        }
    }

    #[test]
    fn empty_network_has_zero_flow() {
        let net = FlowNetwork::new(2, 0, 1).unwrap();
        assert_eq!(max_flow(&net, SearchStrategy::BreadthFirst).value(), 0);
        assert_eq!(min_cut_value(&net).unwrap(), 0);
    }

    #[test]
    fn max_flow_is_deterministic() {
        let net = worked_bipartite_network();
        for strategy in SearchStrategy::ALL {
            assert_eq!(max_flow(&net, strategy), max_flow(&net, strategy));
        }
    }

    #[test]
    fn anti_parallel_capacities_are_handled() {
        let net = network(
            4,
            0,
            1,
            &[(0, 2, 4), (2, 3, 3), (3, 2, 2), (3, 1, 4), (2, 1, 1)],
        );
        let expected = min_cut_value(&net).unwrap();
        for strategy in SearchStrategy::ALL {
            let flow = max_flow(&net, strategy);
            assert_eq!(flow.value(), expected);
            assert_eq!(flow.check_properties(&net), Ok(()));
        }
    }

    #[test]
    fn flow_serde_round_trips() {
        let net = worked_bipartite_network();
        let flow = max_flow(&net, SearchStrategy::BreadthFirst);
        let json = serde_json::to_string(&flow).unwrap();
        let back: Flow = serde_json::from_str(&json).unwrap();
        assert_eq!(back, flow);
    }
}
