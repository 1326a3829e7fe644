//! Seeded benchmark of the two augmenting-path strategies.
//!
//! For each requested size and seed index a random bipartite service
//! pair is generated (uniform random datatypes on both sides), reduced
//! to a flow network, and solved with both strategies. One CSV row per
//! run goes to stdout:
//!
//! ```text
//! strategy,vertices,edges,fmax,iterations,nanos
//! ```
//!
//! Iteration counts are the primary, machine-independent signal; wall
//! time is secondary. Before emitting a row the iteration envelopes are
//! asserted — depth-first iterations never exceed the flow value, and
//! breadth-first iterations never exceed vertices × edges. A violation
//! is a correctness bug and fails the command with exit code 1.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use matchmaker_core::descriptor::{DataType, Parameter};
use matchmaker_core::flownet::{max_flow, SearchStrategy};
use matchmaker_core::matcher::build_bipartite;
use matchmaker_core::simrules::SimilarityTable;

use crate::Failure;

pub fn run(
    sizes: &[usize],
    seeds: u64,
    base_seed: u64,
    table: &SimilarityTable,
) -> Result<(), Failure> {
    if sizes.contains(&0) {
        return Err(Failure::io("sizes must be positive"));
    }
    println!("strategy,vertices,edges,fmax,iterations,nanos");
    for &size in sizes {
        for index in 0..seeds {
            let (requested, advertised) =
                random_param_lists(size, instance_seed(base_seed, size as u64, index));
            let spec = build_bipartite(&requested, &advertised, table);
            let net = spec.to_flow_network();
            let vertices = net.vertex_count() as u64;
            let edges = net.edge_count() as u64;
            for (name, strategy) in [
                ("dfs", SearchStrategy::DepthFirst),
                ("bfs", SearchStrategy::BreadthFirst),
            ] {
                let start = Instant::now();
                let flow = max_flow(&net, strategy);
                let nanos = start.elapsed().as_nanos();
                let iterations = flow.augmentations();
                let bound_holds = match strategy {
                    SearchStrategy::DepthFirst => iterations <= flow.value() as u64,
                    SearchStrategy::BreadthFirst => iterations <= vertices * edges,
                };
                if !bound_holds {
                    return Err(Failure::domain(format!(
                        "iteration bound violated: {name} took {iterations} iterations \
                         (fmax {}, vertices {vertices}, edges {edges})",
                        flow.value()
                    )));
                }
                println!(
                    "{name},{vertices},{edges},{},{iterations},{nanos}",
                    flow.value()
                );
            }
        }
    }
    Ok(())
}

/// Stable per-instance seed mix so runs are reproducible and instances
/// are independent of the order sizes are listed in.
fn instance_seed(base: u64, size: u64, index: u64) -> u64 {
    base ^ size.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index.wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

fn random_param_lists(size: usize, seed: u64) -> (Vec<Parameter>, Vec<Parameter>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = |prefix: &str| -> Vec<Parameter> {
        (0..size)
            .map(|index| {
                let datatype = DataType::ALL[rng.random_range(0..DataType::ALL.len())];
                Parameter::new(format!("{prefix}{index}"), datatype)
            })
            .collect()
    };
    (side("r"), side("a"))
}
