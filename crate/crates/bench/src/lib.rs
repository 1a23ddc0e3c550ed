//! Inputs shared by the throughput benchmarks.

use markov_dyck::HeightData;

/// Height data exercised by every benchmark group.
pub fn bench_data() -> Vec<HeightData> {
    [&[2][..], &[1, 2], &[1, 1, 2], &[2, 1, 3, 2]]
        .iter()
        .map(|c| HeightData::new(c.to_vec()).expect("valid data"))
        .collect()
}

/// A Parry-chain trajectory of the companion graph, `length` edges long.
pub fn companion_path(data: &HeightData, length: usize, seed: u64) -> Vec<markov_dyck::EdgeId> {
    let code = markov_dyck::BlockCode::new(data);
    let chain = markov_dyck::ParryChain::new(code.companion()).expect("companion graphs are irreducible");
    markov_dyck::sample_path(&chain, code.companion(), length, seed).edges
}
