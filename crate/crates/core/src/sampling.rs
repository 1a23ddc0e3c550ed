//! The maximal-entropy (Parry) Markov chain on an edge shift, seeded path
//! sampling, random admissible Markov-Dyck words and the empirical checks on
//! the two measures of maximal entropy.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::conjugacy::{BlockCode, Window};
use crate::error::{Error, Result};
use crate::graphs::{EdgeId, Graph, HeightData, VertexId};
use crate::semigroup::{time_reverse, InverseSemigroup, Letter};
use crate::spectra::{perron_root, CertifiedReal};

/// Identifier of the generator behind every seeded sample.
pub const PRNG: &str = "ChaCha8";

/// Default number of letters decoded at a time.
pub const DECODE_CHUNK: usize = 1000;

/// Parry measure of an irreducible graph: `p(e) = r(t(e)) / (λ r(s(e)))`.
#[derive(Debug, Clone, Serialize)]
pub struct ParryChain {
    pub lambda: f64,
    pub perron: CertifiedReal,
    /// Right Perron vector, normalised to sum one.
    pub right: Vec<f64>,
    /// Left Perron vector, normalised so that `Σ l r = 1`.
    pub left: Vec<f64>,
    pub edge_probability: Vec<f64>,
    pub stationary: Vec<f64>,
    #[serde(skip)]
    sources: Vec<VertexId>,
    #[serde(skip)]
    out: Vec<Vec<(EdgeId, f64)>>,
}

/// Perron vector of `A` (or `Aᵀ`) by power iteration on `A + I`.
fn perron_vector(graph: &Graph, transpose: bool) -> Vec<f64> {
    let n = graph.vertex_count();
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..1_000_000 {
        let mut next = v.clone();
        for e in graph.edges() {
            let (from, to) = if transpose {
                (e.target, e.source)
            } else {
                (e.source, e.target)
            };
            next[from] += v[to];
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let change = next
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if change < 1e-17 {
            break;
        }
    }
    v
}

impl ParryChain {
    pub fn new(graph: &Graph) -> Result<Self> {
        let perron = perron_root(&graph.adjacency_matrix())?;
        let lambda = perron.midpoint_f64();
        let right = perron_vector(graph, false);
        let mut left = perron_vector(graph, true);
        let scale: f64 = left.iter().zip(&right).map(|(l, r)| l * r).sum();
        left.iter_mut().for_each(|l| *l /= scale);
        let stationary: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l * r).collect();
        let edge_probability: Vec<f64> = graph
            .edges()
            .iter()
            .map(|e| right[e.target] / (lambda * right[e.source]))
            .collect();
        let out = (0..graph.vertex_count())
            .map(|v| {
                let mut acc = 0.0;
                graph
                    .out_edges(v)
                    .iter()
                    .map(|&e| {
                        acc += edge_probability[e];
                        (e, acc)
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            lambda,
            perron,
            right,
            left,
            edge_probability,
            stationary,
            sources: graph.edges().iter().map(|e| e.source).collect(),
            out,
        })
    }

    /// Stationary probability of traversing edge `e`.
    pub fn edge_measure(&self, e: EdgeId) -> f64 {
        self.stationary[self.sources[e]] * self.edge_probability[e]
    }

    /// `Σ_e μ(e) log(1/p(e))`.
    pub fn entropy_rate(&self) -> f64 {
        (0..self.edge_probability.len())
            .map(|e| -self.edge_measure(e) * self.edge_probability[e].ln())
            .sum()
    }

    /// Largest deviation of an outgoing probability sum from one.
    pub fn row_sum_error(&self) -> f64 {
        self.out
            .iter()
            .map(|row| (row.last().map_or(1.0, |&(_, c)| c) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest entry of `|π P − π|`.
    pub fn stationarity_error(&self, graph: &Graph) -> f64 {
        let mut flow = vec![0.0; self.stationary.len()];
        for (e, edge) in graph.edges().iter().enumerate() {
            flow[edge.target] += self.edge_measure(e);
        }
        flow.iter()
            .zip(&self.stationary)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn pick_vertex(&self, rng: &mut impl Rng) -> VertexId {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (v, p) in self.stationary.iter().enumerate() {
            acc += p;
            if u < acc {
                return v;
            }
        }
        self.stationary.len() - 1
    }

    fn step(&self, v: VertexId, rng: &mut impl Rng) -> EdgeId {
        let row = &self.out[v];
        let u: f64 = rng.random::<f64>() * row.last().expect("irreducible graphs have out-edges").1;
        row.iter()
            .find(|&&(_, c)| u < c)
            .unwrap_or_else(|| row.last().expect("nonempty"))
            .0
    }
}

/// A seeded trajectory of a [`ParryChain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SamplePath {
    pub prng: &'static str,
    pub seed: u64,
    pub start: VertexId,
    pub edges: Vec<EdgeId>,
}

/// Samples `length` edges, starting from a stationary vertex.
pub fn sample_path(chain: &ParryChain, graph: &Graph, length: usize, seed: u64) -> SamplePath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = chain.pick_vertex(&mut rng);
    let mut v = start;
    let edges = (0..length)
        .map(|_| {
            let e = chain.step(v, &mut rng);
            v = graph.target(e);
            e
        })
        .collect();
    SamplePath {
        prng: PRNG,
        seed,
        start,
        edges,
    }
}

/// A random admissible word whose image under the block code is a Parry
/// trajectory of the companion graph.
///
/// Each step picks a companion edge from the chain and lifts it to the unique
/// admissible letter with that image, or uniformly among the return edges
/// when a plus letter leaves the root with nothing to cancel.
pub fn lifted_admissible_word(code: &BlockCode, chain: &ParryChain, length: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let graph = code.rotational();
    let companion = code.companion();
    let levels = code.data().levels();
    // companion vertex of a rotational vertex: height h at index h - 1, root at H
    let height_vertex = |h: usize| if h == 0 { levels - 1 } else { h - 1 };
    let heights: Vec<usize> = graph
        .vertices()
        .iter()
        .map(|label| match label {
            crate::graphs::VertexLabel::Tree { path } => path.len(),
            _ => unreachable!("rotational graphs carry tree labels only"),
        })
        .collect();
    let start_level = chain.pick_vertex(rng);
    let candidates: Vec<VertexId> = (0..graph.vertex_count())
        .filter(|&v| height_vertex(heights[v]) == start_level)
        .collect();
    let mut vertex = candidates[rng.random_range(0..candidates.len())];
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut word = Vec::with_capacity(length);
    while word.len() < length {
        let c = chain.step(height_vertex(heights[vertex]), rng);
        let letter = if code.phi(c) > 0 {
            let e = *graph
                .out_edges(vertex)
                .iter()
                .find(|&&e| code.encode_letter(Letter::minus(e)) == c)
                .expect("descent letters lift uniquely");
            stack.push(e);
            Letter::minus(e)
        } else if let Some(top) = stack.pop() {
            Letter::plus(top)
        } else {
            let lifts = graph.in_edges(vertex);
            Letter::plus(lifts[rng.random_range(0..lifts.len())])
        };
        debug_assert_eq!(companion.source(code.encode_letter(letter)), height_vertex(heights[vertex]));
        vertex = letter.target(graph);
        word.push(letter);
    }
    word
}

/// A random admissible word by uniform choice among the letters that keep the
/// product nonzero.
pub fn uniform_admissible_word(graph: &Graph, length: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let mut vertex: Option<VertexId> = None;
    let mut stack: Vec<EdgeId> = Vec::new();
    let alphabet = InverseSemigroup::new(graph).alphabet();
    let mut word = Vec::with_capacity(length);
    while word.len() < length {
        let options: Vec<Letter> = match vertex {
            None => alphabet.clone(),
            Some(v) => {
                let mut o: Vec<Letter> = graph.out_edges(v).iter().map(|&e| Letter::minus(e)).collect();
                match stack.last() {
                    Some(&top) => o.push(Letter::plus(top)),
                    None => o.extend(graph.in_edges(v).iter().map(|&e| Letter::plus(e))),
                }
                o
            }
        };
        let letter = options[rng.random_range(0..options.len())];
        match letter.sign {
            crate::semigroup::Sign::Minus => stack.push(letter.edge),
            crate::semigroup::Sign::Plus => {
                stack.pop();
            }
        }
        vertex = Some(letter.target(graph));
        word.push(letter);
    }
    word
}

/// Plug-in Shannon entropy (natural log) of the length-`k` blocks of `seq`.
pub fn block_entropy<T: Ord>(seq: &[T], k: usize) -> f64 {
    if k == 0 || seq.len() < k {
        return 0.0;
    }
    let mut counts: BTreeMap<&[T], usize> = BTreeMap::new();
    for block in seq.windows(k) {
        *counts.entry(block).or_default() += 1;
    }
    let total = (seq.len() - k + 1) as f64;
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.ln()
        })
        .sum()
}

/// Conditional block entropies `H_k − H_{k−1}` for `k = 2..=max_k`.
pub fn conditional_entropies<T: Ord>(seq: &[T], max_k: usize) -> Vec<f64> {
    let h: Vec<f64> = (0..=max_k).map(|k| block_entropy(seq, k)).collect();
    (2..=max_k).map(|k| h[k] - h[k - 1]).collect()
}

/// Empirical checks for one of the two measures of maximal entropy.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureCheck {
    /// Fraction of letters with weight `+1`.
    pub plus_weight_fraction: f64,
    pub minus_weight_fraction: f64,
    /// The majority sign the measure should show.
    pub expected_majority: i8,
    pub majority_holds: bool,
    /// `H_k − H_{k−1}` for `k = 2, 3, 4` over companion letters.
    pub conditional_entropies: Vec<f64>,
    pub entropy_estimate: f64,
    pub entropy_error: f64,
    pub decoded_letters: usize,
    pub decoded_runs: usize,
    pub decoded_admissible: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MmeReport {
    pub data: HeightData,
    pub steps: usize,
    pub prng: &'static str,
    pub seed: u64,
    pub log_lambda: f64,
    pub entropy_rate: f64,
    /// Stationary mass of weight `+1` edges.
    pub expected_plus_fraction: f64,
    pub tolerance: f64,
    pub forward: MeasureCheck,
    pub reversed: MeasureCheck,
}

impl MmeReport {
    pub fn passed(&self) -> bool {
        [&self.forward, &self.reversed]
            .iter()
            .all(|c| c.majority_holds && c.decoded_admissible && c.entropy_error <= self.tolerance)
    }
}

/// Tolerance on the block-entropy estimate.
pub const ENTROPY_TOLERANCE: f64 = 0.05;

/// Maximal runs of `Some` letters.
fn runs(decoded: &[Option<Letter>]) -> Vec<Vec<Letter>> {
    decoded
        .split(Option::is_none)
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|l| l.expect("split on None")).collect())
        .collect()
}

fn measure_check(
    weights: &[i64],
    companion_letters: &[EdgeId],
    decoded_runs: &[Vec<Letter>],
    expected_majority: i8,
    log_lambda: f64,
    semigroup: &InverseSemigroup<'_>,
) -> Result<MeasureCheck> {
    let plus = weights.iter().filter(|&&w| w > 0).count() as f64 / weights.len().max(1) as f64;
    let minus = 1.0 - plus;
    let conditional = conditional_entropies(companion_letters, 4);
    let estimate = conditional[0];
    let mut admissible = true;
    for run in decoded_runs {
        admissible &= semigroup.is_admissible(run)?;
    }
    Ok(MeasureCheck {
        plus_weight_fraction: plus,
        minus_weight_fraction: minus,
        expected_majority,
        majority_holds: if expected_majority > 0 { plus > minus } else { minus > plus },
        conditional_entropies: conditional,
        entropy_estimate: estimate,
        entropy_error: (estimate - log_lambda).abs(),
        decoded_letters: decoded_runs.iter().map(Vec::len).sum(),
        decoded_runs: decoded_runs.len(),
        decoded_admissible: admissible,
    })
}

/// Samples the Parry chain of the companion graph, decodes the trajectory in
/// chunks of [`DECODE_CHUNK`] letters, and checks the weight imbalance, the
/// admissibility of the decoded letters and the entropy estimate; then repeats
/// the checks on the time reversal.
pub fn mme_checks(data: &HeightData, steps: usize, seed: u64) -> Result<MmeReport> {
    if steps == 0 {
        return Err(Error::InvalidData("steps must be positive".into()));
    }
    let code = BlockCode::new(data);
    let companion = code.companion();
    let chain = ParryChain::new(companion)?;
    let path = sample_path(&chain, companion, steps, seed);
    let log_lambda = chain.perron.midpoint_f64().ln();
    let expected_plus_fraction = (0..companion.edge_count())
        .filter(|&e| code.phi(e) > 0)
        .map(|e| chain.edge_measure(e))
        .sum();

    let mut decoded_runs = Vec::new();
    for chunk in path.edges.chunks(DECODE_CHUNK) {
        let decoded = code.decode(&Window::new(chunk.to_vec()))?;
        decoded_runs.extend(runs(&decoded.items));
    }
    let semigroup = InverseSemigroup::new(code.rotational());
    let weights: Vec<i64> = path.edges.iter().map(|&e| code.phi(e)).collect();
    let forward = measure_check(&weights, &path.edges, &decoded_runs, 1, log_lambda, &semigroup)?;

    let reversed_runs: Vec<Vec<Letter>> = decoded_runs.iter().rev().map(|r| time_reverse(r)).collect();
    let reversed_weights: Vec<i64> = weights.iter().rev().map(|w| -w).collect();
    let reversed_letters: Vec<EdgeId> = path.edges.iter().rev().copied().collect();
    let reversed = measure_check(
        &reversed_weights,
        &reversed_letters,
        &reversed_runs,
        -1,
        log_lambda,
        &semigroup,
    )?;

    Ok(MmeReport {
        data: data.clone(),
        steps,
        prng: PRNG,
        seed,
        log_lambda,
        entropy_rate: chain.entropy_rate(),
        expected_plus_fraction,
        tolerance: ENTROPY_TOLERANCE,
        forward,
        reversed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::round_trip;
    use crate::graphs::{build_companion, dyck_graph};

    fn data(c: &[u32]) -> HeightData {
        HeightData::new(c.to_vec()).unwrap()
    }

    #[test]
    fn parry_two_by_two() {
        // A = [[0,3],[2,0]]
        let (graph, _) = build_companion(&data(&[1, 2]));
        let chain = ParryChain::new(&graph).unwrap();
        for (e, edge) in graph.edges().iter().enumerate() {
            let want = if edge.source == 0 { 1.0 / 3.0 } else { 0.5 };
            assert!((chain.edge_probability[e] - want).abs() < 1e-12);
        }
        assert!((chain.entropy_rate() - 6f64.sqrt().ln()).abs() < 1e-9);
        assert!(chain.row_sum_error() < 1e-12);
        assert!(chain.stationarity_error(&graph) < 1e-10);
    }

    #[test]
    fn parry_loops() {
        let graph = dyck_graph(2).unwrap();
        let chain = ParryChain::new(&graph).unwrap();
        assert!(chain.edge_probability.iter().all(|p| (p - 0.5).abs() < 1e-12));
    }

    #[test]
    fn parry_entropy_rate_equals_log_lambda() {
        for c in [&[1, 1, 2][..], &[2, 1, 3, 2], &[1, 1, 1, 1, 1, 2], &[3]] {
            let (graph, _) = build_companion(&data(c));
            let chain = ParryChain::new(&graph).unwrap();
            assert!((chain.entropy_rate() - chain.lambda.ln()).abs() < 1e-9, "{c:?}");
            assert!(chain.row_sum_error() < 1e-12, "{c:?}");
            assert!(chain.stationarity_error(&graph) < 1e-10, "{c:?}");
        }
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let (graph, _) = build_companion(&data(&[1, 1, 2]));
        let chain = ParryChain::new(&graph).unwrap();
        let a = sample_path(&chain, &graph, 10, 42);
        assert_eq!(a, sample_path(&chain, &graph, 10, 42));
        assert_eq!(a.prng, "ChaCha8");
        assert_eq!(graph.source(a.edges[0]), a.start);
        assert!(a.edges.windows(2).all(|w| graph.target(w[0]) == graph.source(w[1])));
    }

    #[test]
    fn empirical_edge_frequencies() {
        let (graph, _) = build_companion(&data(&[1, 2]));
        let chain = ParryChain::new(&graph).unwrap();
        let path = sample_path(&chain, &graph, 1_000_000, 5);
        let mut counts = vec![0usize; graph.edge_count()];
        for &e in &path.edges {
            counts[e] += 1;
        }
        for (e, &c) in counts.iter().enumerate() {
            assert!((c as f64 / 1e6 - chain.edge_measure(e)).abs() < 5e-3);
        }
    }

    #[test]
    fn random_words_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for c in [&[1, 2][..], &[1, 1, 2], &[2]] {
            let code = BlockCode::new(&data(c));
            let semigroup = InverseSemigroup::new(code.rotational());
            let chain = ParryChain::new(code.companion()).unwrap();
            for _ in 0..20 {
                let w = lifted_admissible_word(&code, &chain, 80, &mut rng);
                assert!(semigroup.is_admissible(&w).unwrap());
                let w = uniform_admissible_word(code.rotational(), 80, &mut rng);
                assert!(semigroup.is_admissible(&w).unwrap());
            }
        }
    }

    #[test]
    fn lifted_windows_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let code = BlockCode::new(&data(&[1, 1, 2]));
        let chain = ParryChain::new(code.companion()).unwrap();
        let mut total = crate::conjugacy::RoundTrip::default();
        for _ in 0..100 {
            let w = lifted_admissible_word(&code, &chain, 100, &mut rng);
            total = total.merge(round_trip(&code, &Window::new(w)).unwrap());
        }
        assert_eq!(total.mismatches, 0);
        assert!(total.interior_rate() > 0.5);
    }

    #[test]
    fn block_entropy_basics() {
        assert_eq!(block_entropy(&[1, 1, 1, 1], 1), 0.0);
        assert!((block_entropy(&[0, 1, 0, 1], 1) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(conditional_entropies(&[0, 1, 0, 1, 0, 1], 3).len(), 2);
    }

    #[test]
    fn mme_small_run() {
        let r = mme_checks(&data(&[1, 2]), 200_000, 3).unwrap();
        assert!(r.forward.majority_holds && r.reversed.majority_holds);
        assert!((r.expected_plus_fraction - 7.0 / 12.0).abs() < 1e-9);
        assert!(r.forward.decoded_admissible && r.reversed.decoded_admissible);
        assert!(r.forward.entropy_error < 0.05);
        assert!(r.passed());
    }
}
