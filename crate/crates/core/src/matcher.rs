//! Reduce two profiles to bipartite flow networks and score their
//! similarity.
//!
//! For each direction (outputs against outputs, inputs against inputs)
//! the requested service's parameters form the left vertex set and the
//! advertised service's the right. Every pair whose datatype weight is
//! at least 1 becomes an edge with that weight as capacity; weight-0
//! pairs get no edge. A source feeds every left vertex and every right
//! vertex drains to a sink, both through capacity-10 attachment edges,
//! so each requested parameter can account for at most 10 units of flow
//! and the per-direction score `flow / |requested|` lands in `[0, 10]`
//! with self-match scoring exactly 10.
//!
//! A requested side with no parameters is vacuously satisfied and scores
//! 10. The overall score is the exact mean of the two directions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::descriptor::{Parameter, ServiceProfile};
use crate::flownet::{max_flow, Flow, FlowNetwork, SearchStrategy, Vertex};
use crate::score::Score;
use crate::simrules::SimilarityTable;

/// Capacity of the source and sink attachment edges: the maximum pair
/// weight, so one saturated requested parameter contributes a full 10.
pub const ATTACHMENT_CAPACITY: i64 = 10;

/// Source vertex id in networks built by [`BipartiteSpec::to_flow_network`].
pub const SOURCE: Vertex = 0;
/// Sink vertex id.
pub const SINK: Vertex = 1;

/// A weighted bipartite graph between requested (left) and advertised
/// (right) parameters. Stored weights are in `[1, 10]`; incompatible
/// pairs are simply absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSpec {
    left: Vec<Parameter>,
    right: Vec<Parameter>,
    edge_weights: BTreeMap<(usize, usize), i64>,
}

impl BipartiteSpec {
    pub fn left(&self) -> &[Parameter] {
        &self.left
    }

    pub fn right(&self) -> &[Parameter] {
        &self.right
    }

    /// Edges as (left index, right index) -> weight.
    pub fn edge_weights(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.edge_weights
    }

    /// Flow-network vertex carrying the left parameter at `index`.
    pub fn left_vertex(&self, index: usize) -> Vertex {
        2 + index
    }

    /// Flow-network vertex carrying the right parameter at `index`.
    pub fn right_vertex(&self, index: usize) -> Vertex {
        2 + self.left.len() + index
    }

    /// Attach a source and sink: source to every left vertex and every
    /// right vertex to sink at [`ATTACHMENT_CAPACITY`], each bipartite
    /// edge at its weight. Vertex numbering is source 0, sink 1, left
    /// parameters in list order, then right parameters in list order.
    pub fn to_flow_network(&self) -> FlowNetwork {
        let vertex_count = 2 + self.left.len() + self.right.len();
        let mut net = FlowNetwork::new(vertex_count, SOURCE, SINK)
            .expect("bipartite network shape is always valid");
        for index in 0..self.left.len() {
            net.set_capacity(SOURCE, self.left_vertex(index), ATTACHMENT_CAPACITY)
                .expect("source attachment is a valid edge");
        }
        for index in 0..self.right.len() {
            net.set_capacity(self.right_vertex(index), SINK, ATTACHMENT_CAPACITY)
                .expect("sink attachment is a valid edge");
        }
        for (&(left, right), &weight) in &self.edge_weights {
            net.set_capacity(self.left_vertex(left), self.right_vertex(right), weight)
                .expect("bipartite edge is a valid edge");
        }
        net
    }
}

/// Build the bipartite graph between a requested and an advertised
/// parameter list: one edge per pair with a positive datatype weight.
pub fn build_bipartite(
    requested_params: &[Parameter],
    advertised_params: &[Parameter],
    table: &SimilarityTable,
) -> BipartiteSpec {
    let mut edge_weights = BTreeMap::new();
    for (left, requested) in requested_params.iter().enumerate() {
        for (right, advertised) in advertised_params.iter().enumerate() {
            let weight = table.param_similarity(requested.datatype, advertised.datatype);
            if weight >= 1 {
                edge_weights.insert((left, right), i64::from(weight));
            }
        }
    }
    BipartiteSpec {
        left: requested_params.to_vec(),
        right: advertised_params.to_vec(),
        edge_weights,
    }
}

/// Score one direction: max flow through the bipartite network divided
/// by the number of requested parameters, plus the flow itself for
/// explainability. An empty requested side is vacuously satisfied and
/// scores 10.
pub fn directional_similarity(
    requested_params: &[Parameter],
    advertised_params: &[Parameter],
    table: &SimilarityTable,
    strategy: SearchStrategy,
) -> (Score, Flow) {
    let spec = build_bipartite(requested_params, advertised_params, table);
    let flow = max_flow(&spec.to_flow_network(), strategy);
    let score = if requested_params.is_empty() {
        Score::full()
    } else {
        Score::from_flow(flow.value(), requested_params.len())
    };
    (score, flow)
}

/// The outcome of matching one advertised profile against a request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub advertised_name: String,
    pub input_score: Score,
    pub output_score: Score,
    /// Exact mean of the input and output scores.
    pub overall: Score,
    pub input_flow: Flow,
    pub output_flow: Flow,
}

/// Match two profiles: outputs against outputs, inputs against inputs,
/// overall the exact mean of the two directional scores.
pub fn match_services(
    requested: &ServiceProfile,
    advertised: &ServiceProfile,
    table: &SimilarityTable,
    strategy: SearchStrategy,
) -> MatchReport {
    let (output_score, output_flow) =
        directional_similarity(&requested.outputs, &advertised.outputs, table, strategy);
    let (input_score, input_flow) =
        directional_similarity(&requested.inputs, &advertised.inputs, table, strategy);
    MatchReport {
        advertised_name: advertised.name.clone(),
        input_score,
        output_score,
        overall: Score::mean(output_score, input_score),
        input_flow,
        output_flow,
    }
}
