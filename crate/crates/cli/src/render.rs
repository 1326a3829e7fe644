//! Text rendering for match reports and discovery results.
//!
//! Output is stable byte for byte: scores print as exact decimals with
//! the fraction alongside, and edge listings follow bipartite-spec order.

use std::fmt::Write as _;

use matchmaker_core::descriptor::ServiceProfile;
use matchmaker_core::flownet::Flow;
use matchmaker_core::matcher::{build_bipartite, BipartiteSpec, MatchReport};
use matchmaker_core::registry::DiscoveryResult;
use matchmaker_core::simrules::SimilarityTable;

pub fn report_text(
    requested: &ServiceProfile,
    advertised: &ServiceProfile,
    report: &MatchReport,
    table: &SimilarityTable,
    explain: bool,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "requested: {}", requested.name);
    let _ = writeln!(out, "advertised: {}", advertised.name);
    let _ = writeln!(out, "input: {}", report.input_score);
    let _ = writeln!(out, "output: {}", report.output_score);
    let _ = writeln!(out, "overall: {}", report.overall);
    if explain {
        let input_spec = build_bipartite(&requested.inputs, &advertised.inputs, table);
        let output_spec = build_bipartite(&requested.outputs, &advertised.outputs, table);
        out.push_str(&edges_text("input edges:", &input_spec, &report.input_flow));
        out.push_str(&edges_text(
            "output edges:",
            &output_spec,
            &report.output_flow,
        ));
    }
    out
}

/// One line per bipartite edge: the pair, its rule weight, and the flow
/// the matcher assigned to it.
fn edges_text(heading: &str, spec: &BipartiteSpec, flow: &Flow) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{heading}");
    if spec.edge_weights().is_empty() {
        out.push_str("  (none)\n");
        return out;
    }
    for (&(left, right), &weight) in spec.edge_weights() {
        let assigned = flow.amount(spec.left_vertex(left), spec.right_vertex(right));
        let _ = writeln!(
            out,
            "  {} -> {}  weight {weight}  flow {assigned}",
            spec.left()[left],
            spec.right()[right],
        );
    }
    out
}

pub fn discovery_text(result: &DiscoveryResult, registry_size: usize) -> String {
    let mut out = String::new();
    match &result.ranked {
        Some(ranked) => {
            if ranked.is_empty() {
                out.push_str("no services\n");
            }
            for (index, report) in ranked.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{}. {}  {}",
                    index + 1,
                    report.advertised_name,
                    report.overall
                );
            }
        }
        None => match &result.best {
            None => out.push_str("no services\n"),
            Some(best) => {
                let _ = writeln!(out, "best: {}", best.advertised_name);
                let _ = writeln!(out, "overall: {}", best.overall);
            }
        },
    }
    if result.best.is_some() {
        let _ = writeln!(out, "scanned: {}/{registry_size}", result.scanned_count);
    }
    out
}
