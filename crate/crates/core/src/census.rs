//! Exhaustive periodic-point counts for Markov-Dyck shifts.
//!
//! A word `w` spells a periodic point `w^∞` exactly when `w` and `w·w` are
//! both nonzero in the graph inverse semigroup: once the seam between two
//! copies has cancelled as far as it can, further copies cancel identically.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphs::{AdjacencyMatrix, Graph};
use crate::semigroup::{psi_sum, InverseSemigroup, Letter, Reducer, SemigroupElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplierClass {
    Neutral,
    /// Period-sum of `ψ` below zero.
    Negative,
    Positive,
}

impl MultiplierClass {
    pub const ALL: [MultiplierClass; 3] = [
        MultiplierClass::Neutral,
        MultiplierClass::Negative,
        MultiplierClass::Positive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MultiplierClass::Neutral => "neutral",
            MultiplierClass::Negative => "negative",
            MultiplierClass::Positive => "positive",
        }
    }
}

/// Whether `w^∞` is a point of the Markov-Dyck shift.
pub fn is_periodic_word(semigroup: &InverseSemigroup<'_>, word: &[Letter]) -> Result<bool> {
    let x = semigroup.reduce(word)?;
    if x.is_zero() {
        return Ok(false);
    }
    Ok(!semigroup.multiply(&x, &x)?.is_zero())
}

/// Class of a periodic word by the sign of its `ψ`-sum.
pub fn classify_word(word: &[Letter]) -> MultiplierClass {
    match psi_sum(word) {
        0 => MultiplierClass::Neutral,
        s if s < 0 => MultiplierClass::Negative,
        _ => MultiplierClass::Positive,
    }
}

/// Checks that bounded powers agree with [`is_periodic_word`]: returns true
/// iff "`w^k ≠ 0` for every `k <= max_power`" has the same truth value.
pub fn verify_power_criterion(
    semigroup: &InverseSemigroup<'_>,
    word: &[Letter],
    max_power: u32,
) -> Result<bool> {
    assert!(max_power >= 2, "power bound must be at least 2");
    let x = semigroup.reduce(word)?;
    let mut power = x.clone();
    let mut all_nonzero = !x.is_zero();
    for _ in 2..=max_power {
        if !all_nonzero {
            break;
        }
        power = semigroup.multiply(&power, &x)?;
        all_nonzero = !power.is_zero();
    }
    Ok(all_nonzero == is_periodic_word(semigroup, word)?)
}

fn big<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub total: BigUint,
    #[serde(serialize_with = "big")]
    pub neutral: BigUint,
    #[serde(serialize_with = "big")]
    pub negative: BigUint,
    #[serde(serialize_with = "big")]
    pub positive: BigUint,
}

impl CensusRow {
    pub fn class(&self, class: MultiplierClass) -> &BigUint {
        match class {
            MultiplierClass::Neutral => &self.neutral,
            MultiplierClass::Negative => &self.negative,
            MultiplierClass::Positive => &self.positive,
        }
    }
}

/// Periodic-point counts for periods `1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PeriodicCensus {
    rows: Vec<CensusRow>,
}

impl PeriodicCensus {
    pub fn from_rows(rows: Vec<CensusRow>) -> Self {
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[CensusRow] {
        &self.rows
    }

    /// Row for period `n >= 1`.
    pub fn row(&self, n: usize) -> &CensusRow {
        &self.rows[n - 1]
    }

    pub fn totals(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.total.clone()).collect()
    }

    pub fn class_counts(&self, class: MultiplierClass) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.class(class).clone()).collect()
    }

    /// Descriptions of violated structural identities; empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in &self.rows {
            if r.total != &r.neutral + &r.negative + &r.positive {
                out.push(format!("n={}: classes do not sum to the total", r.n));
            }
            if r.negative != r.positive {
                out.push(format!("n={}: negative and positive counts differ", r.n));
            }
            if r.n % 2 == 1 && r.neutral != BigUint::ZERO {
                out.push(format!("n={}: odd period with neutral points", r.n));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    /// Upper bound on admissible prefixes visited.
    pub budget: Option<u64>,
    pub parallel: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self {
            budget: None,
            parallel: true,
        }
    }
}

/// Counts periodic points of every period up to `n_max`.
pub fn census(graph: &Graph, n_max: usize) -> Result<PeriodicCensus> {
    census_with(graph, n_max, &CensusOptions::default())
}

pub fn census_with(graph: &Graph, n_max: usize, options: &CensusOptions) -> Result<PeriodicCensus> {
    if n_max == 0 {
        return Err(Error::InvalidData("census needs n_max >= 1".into()));
    }
    let semigroup = InverseSemigroup::new(graph);
    let alphabet = semigroup.alphabet();
    let visited = AtomicU64::new(0);
    // u64 tallies suffice: every counted word is visited explicitly
    let run = |first: &Letter| -> Result<Vec<[u64; 3]>> {
        let mut counts = vec![[0u64; 3]; n_max];
        let mut search = Search {
            alphabet: &alphabet,
            reducer: Reducer::new(graph),
            word: Vec::with_capacity(n_max),
            n_max,
            visited: &visited,
            budget: options.budget,
        };
        search.descend(*first, &mut |word, x| {
            if square_nonzero(&semigroup, x) {
                counts[word.len() - 1][class_index(classify_word(word))] += 1;
            }
        })?;
        Ok(counts)
    };
    let partials: Vec<Vec<[u64; 3]>> = if options.parallel {
        alphabet.par_iter().map(run).collect::<Result<_>>()?
    } else {
        alphabet.iter().map(run).collect::<Result<_>>()?
    };
    let rows = (0..n_max)
        .map(|i| {
            let sum = |c: usize| -> BigUint { partials.iter().map(|p| BigUint::from(p[i][c])).sum() };
            let (neutral, negative, positive) = (sum(0), sum(1), sum(2));
            CensusRow {
                n: i + 1,
                total: &neutral + &negative + &positive,
                neutral,
                negative,
                positive,
            }
        })
        .collect();
    Ok(PeriodicCensus { rows })
}

fn class_index(class: MultiplierClass) -> usize {
    match class {
        MultiplierClass::Neutral => 0,
        MultiplierClass::Negative => 1,
        MultiplierClass::Positive => 2,
    }
}

fn square_nonzero(semigroup: &InverseSemigroup<'_>, x: &SemigroupElement) -> bool {
    !semigroup.multiply(x, x).expect("same graph").is_zero()
}

/// Calls `visit` on every word of length `n` whose infinite repetition is a
/// point of the shift, in lexicographic order of the alphabet.
pub fn for_each_period_word<F>(graph: &Graph, n: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[Letter]),
{
    let semigroup = InverseSemigroup::new(graph);
    let alphabet = semigroup.alphabet();
    let visited = AtomicU64::new(0);
    for &first in &alphabet {
        let mut search = Search {
            alphabet: &alphabet,
            reducer: Reducer::new(graph),
            word: Vec::with_capacity(n),
            n_max: n,
            visited: &visited,
            budget: None,
        };
        search.descend(first, &mut |word, x| {
            if word.len() == n && square_nonzero(&semigroup, x) {
                visit(word);
            }
        })?;
    }
    Ok(())
}

struct Search<'a, 'g> {
    alphabet: &'a [Letter],
    reducer: Reducer<'g>,
    word: Vec<Letter>,
    n_max: usize,
    visited: &'a AtomicU64,
    budget: Option<u64>,
}

impl Search<'_, '_> {
    fn descend<F>(&mut self, letter: Letter, visit: &mut F) -> Result<()>
    where
        F: FnMut(&[Letter], &SemigroupElement),
    {
        if !self.reducer.push(letter) {
            self.reducer.pop();
            return Ok(());
        }
        let seen = self.visited.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(budget) = self.budget {
            if seen > budget {
                return Err(Error::BudgetExceeded(budget));
            }
        }
        self.word.push(letter);
        let x = self.reducer.element();
        visit(&self.word, &x);
        if self.word.len() < self.n_max {
            for i in 0..self.alphabet.len() {
                self.descend(self.alphabet[i], visit)?;
            }
        }
        self.word.pop();
        self.reducer.pop();
        Ok(())
    }
}

/// `tr(A^n)` for `n = 1..=n_max`: the periodic-point counts of the edge shift.
pub fn edge_shift_traces(matrix: &AdjacencyMatrix, n_max: usize) -> Vec<BigInt> {
    let mut power = matrix.clone();
    let mut traces = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            power = power.mul(matrix);
        }
        traces.push(power.trace());
    }
    traces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{build_companion, build_rotational, dyck_graph, fibonacci_graph, HeightData};
    use crate::semigroup::Sign;

    fn data(counts: &[u32]) -> HeightData {
        HeightData::new(counts.to_vec()).unwrap()
    }

    /// Leftmost rewriting of `f⁻g⁺` factors with a chaining check each round.
    fn naive_nonzero(graph: &Graph, word: &[Letter]) -> bool {
        let mut w: Vec<Letter> = word.to_vec();
        loop {
            if w.windows(2).any(|p| p[0].target(graph) != p[1].source(graph)) {
                return false;
            }
            let Some(i) = w
                .windows(2)
                .position(|p| p[0].sign == Sign::Minus && p[1].sign == Sign::Plus)
            else {
                return true;
            };
            if w[i].edge != w[i + 1].edge {
                return false;
            }
            w.drain(i..i + 2);
            if w.is_empty() {
                return true;
            }
        }
    }

    fn naive_counts(graph: &Graph, n: usize) -> [u64; 3] {
        let alphabet = InverseSemigroup::new(graph).alphabet();
        let mut counts = [0u64; 3];
        let total = alphabet.len().pow(n as u32);
        for mut code in 0..total {
            let word: Vec<Letter> = (0..n)
                .map(|_| {
                    let l = alphabet[code % alphabet.len()];
                    code /= alphabet.len();
                    l
                })
                .collect();
            let doubled: Vec<Letter> = word.iter().chain(&word).copied().collect();
            if naive_nonzero(graph, &word) && naive_nonzero(graph, &doubled) {
                counts[class_index(classify_word(&word))] += 1;
            }
        }
        counts
    }

    fn as_u64(values: Vec<BigUint>) -> Vec<u64> {
        values.iter().map(|v| u64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn periodicity_examples() {
        let g = dyck_graph(2).unwrap();
        let s = InverseSemigroup::new(&g);
        let word = |t: &str| s.parse_word(t).unwrap();
        assert!(is_periodic_word(&s, &word("0-")).unwrap());
        assert!(!is_periodic_word(&s, &word("0+ 1-")).unwrap());
        assert!(is_periodic_word(&s, &word("0- 0+")).unwrap());
        assert_eq!(classify_word(&word("0- 0+")), MultiplierClass::Neutral);
        assert_eq!(classify_word(&word("0+")), MultiplierClass::Negative);
        assert_eq!(classify_word(&word("0-")), MultiplierClass::Positive);
        assert!(verify_power_criterion(&s, &word("0- 0+ 1-"), 6).unwrap());
        assert!(verify_power_criterion(&s, &word("0+ 1-"), 6).unwrap());
        assert!(verify_power_criterion(&s, &word("0- 1+"), 6).unwrap());
    }

    #[test]
    fn dyck_two_small_periods() {
        let c = census(&dyck_graph(2).unwrap(), 2).unwrap();
        assert_eq!(c.row(1).total, BigUint::from(4u8));
        let r = c.row(2);
        assert_eq!(r.total, BigUint::from(12u8));
        assert_eq!(
            [&r.neutral, &r.negative, &r.positive],
            [&BigUint::from(4u8); 3]
        );
    }

    #[test]
    fn dyck_two_totals() {
        let c = census(&dyck_graph(2).unwrap(), 8).unwrap();
        assert_eq!(
            as_u64(c.totals()),
            [4, 12, 40, 120, 384, 1152, 3616, 10848]
        );
        assert_eq!(
            as_u64(c.class_counts(MultiplierClass::Neutral)),
            [0, 4, 0, 24, 0, 160, 0, 1120]
        );
        assert!(c.invariant_violations().is_empty());
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let graphs = [
            dyck_graph(2).unwrap(),
            build_rotational(&data(&[1, 2])),
            build_rotational(&data(&[1, 1, 2])),
            fibonacci_graph(),
        ];
        for g in &graphs {
            let c = census(g, 5).unwrap();
            for n in 1..=5 {
                let r = c.row(n);
                let got = [&r.neutral, &r.negative, &r.positive].map(|v| u64::try_from(v).unwrap());
                assert_eq!(got, naive_counts(g, n), "n={n}");
            }
            assert!(c.invariant_violations().is_empty());
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let g = build_rotational(&data(&[1, 1, 2]));
        let serial = CensusOptions {
            parallel: false,
            ..CensusOptions::default()
        };
        assert_eq!(census(&g, 8).unwrap(), census_with(&g, 8, &serial).unwrap());
    }

    #[test]
    fn budget_guard() {
        let g = dyck_graph(3).unwrap();
        let opts = CensusOptions {
            budget: Some(100),
            ..CensusOptions::default()
        };
        assert_eq!(census_with(&g, 6, &opts), Err(Error::BudgetExceeded(100)));
    }

    #[test]
    fn power_criterion_on_period_words() {
        let g = build_rotational(&data(&[1, 2]));
        let s = InverseSemigroup::new(&g);
        let mut count = 0;
        for_each_period_word(&g, 6, |w| {
            assert!(verify_power_criterion(&s, w, 8).unwrap());
            count += 1;
        })
        .unwrap();
        assert_eq!(count, u64::try_from(&census(&g, 6).unwrap().row(6).total).unwrap());
    }

    #[test]
    fn traces() {
        let (_, a) = build_companion(&data(&[1, 2]));
        let t = edge_shift_traces(&a, 4);
        assert_eq!(t, [0, 12, 0, 72].map(BigInt::from));
        let a = AdjacencyMatrix::from_u64(&[&[2]]).unwrap();
        assert_eq!(edge_shift_traces(&a, 5), [2, 4, 8, 16, 32].map(BigInt::from));
        // power sums of the roots of z³ − 4z − 3
        let (_, a) = build_companion(&data(&[1, 1, 2]));
        assert_eq!(edge_shift_traces(&a, 3), [0, 8, 9].map(BigInt::from));
    }
}
