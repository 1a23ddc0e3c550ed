//! The letterwise code from a Markov-Dyck shift of `Ĝ(N)` onto the edge shift
//! of its companion graph, its inverse on finite windows, and the height
//! reduction from repeated data back to the base data.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{build_companion, build_rotational, EdgeId, EdgeLabel, Graph, HeightData, VertexId};
use crate::semigroup::{InverseSemigroup, Letter, Sign};

/// A finite block of symbols; `items[offset]` sits at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Window<T> {
    pub offset: usize,
    pub items: Vec<T>,
}

impl<T> Window<T> {
    /// A window whose index 0 is its first symbol.
    pub fn new(items: Vec<T>) -> Self {
        Self { offset: 0, items }
    }

    /// A window whose index 0 is one past its last symbol, so that every
    /// symbol lies in the past.
    pub fn past(items: Vec<T>) -> Self {
        Self {
            offset: items.len(),
            items,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Markov-Dyck letters.
pub type WindowY = Window<Letter>;
/// Companion edges.
pub type WindowX = Window<EdgeId>;

/// Checks the depth condition at index 0: every partial weight sum over
/// `-J° < j < 0` with `0 < J° < J` is non-negative, and the sum over
/// `-J < j < 0` equals `-1`.
pub fn satisfies_condition<T>(window: &Window<T>, weight: impl Fn(&T) -> i64, depth: usize) -> Result<bool> {
    if window.offset < depth || window.offset > window.items.len() {
        return Err(Error::WindowTooShort {
            needed: depth,
            available: window.offset.min(window.items.len()),
        });
    }
    let mut sum = 0;
    // sum over -J° < j < 0 is accumulated as J° grows
    for inner in 1..depth {
        if sum < 0 {
            return Ok(false);
        }
        sum += weight(&window.items[window.offset - inner]);
    }
    Ok(sum == -1)
}

/// `I_1, I_2, …` at index `i` of a companion path: `I_k` is the distance back
/// to the `k`-th minus letter left unmatched by the letters after it.
///
/// Entries are `None` once the window's past is exhausted.
pub fn return_times(phi: &[i64], i: usize, count: usize) -> Vec<Option<usize>> {
    let mut out = Vec::with_capacity(count);
    let mut depth = 0i64;
    let mut j = i;
    while out.len() < count && j > 0 {
        j -= 1;
        if phi[j] > 0 && depth == out.len() as i64 {
            out.push(Some(i - j));
        }
        depth += phi[j];
    }
    out.resize(count, None);
    out
}

/// Companion letter attributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CompanionLetter {
    level: usize,
    /// `Some(n)` for `c⁻_level(n)`, `None` for `c⁺_level`.
    index: Option<u32>,
}

impl CompanionLetter {
    fn phi(self) -> i64 {
        if self.index.is_some() {
            1
        } else {
            -1
        }
    }
}

fn companion_letter(label: &EdgeLabel) -> CompanionLetter {
    match *label {
        EdgeLabel::CompanionDescent { level, index } => CompanionLetter {
            level,
            index: Some(index),
        },
        EdgeLabel::CompanionAscent { level } => CompanionLetter { level, index: None },
        _ => unreachable!("companion graphs carry companion labels only"),
    }
}

/// The 1-block code `Ω` for data `N` and its windowed inverse.
#[derive(Debug, Clone)]
pub struct BlockCode {
    data: HeightData,
    rotational: Graph,
    companion: Graph,
    /// `[Ω(e⁻), Ω(e⁺)]` per rotational edge.
    image: Vec<[EdgeId; 2]>,
    letters: Vec<CompanionLetter>,
}

impl BlockCode {
    pub fn new(data: &HeightData) -> Self {
        let rotational = build_rotational(data);
        let (companion, _) = build_companion(data);
        let levels = data.levels();
        let lookup = |label: EdgeLabel| {
            companion
                .edge_by_label(&label)
                .expect("every companion label exists")
        };
        let image = rotational
            .edges()
            .iter()
            .map(|edge| {
                let (level, last) = match &edge.label {
                    EdgeLabel::Tree { path } => (path.len(), *path.last().expect("tree paths are nonempty")),
                    EdgeLabel::Return { path } => (levels, *path.last().expect("return paths are full")),
                    _ => unreachable!("rotational graphs carry tree and return labels only"),
                };
                [
                    lookup(EdgeLabel::CompanionDescent { level, index: last }),
                    lookup(EdgeLabel::CompanionAscent { level }),
                ]
            })
            .collect();
        let letters = companion.edges().iter().map(|e| companion_letter(&e.label)).collect();
        Self {
            data: data.clone(),
            rotational,
            companion,
            image,
            letters,
        }
    }

    pub fn data(&self) -> &HeightData {
        &self.data
    }

    /// `Ĝ(N)`.
    pub fn rotational(&self) -> &Graph {
        &self.rotational
    }

    /// `Ḡ(N)`.
    pub fn companion(&self) -> &Graph {
        &self.companion
    }

    /// `φ` of a companion edge.
    pub fn phi(&self, edge: EdgeId) -> i64 {
        self.letters[edge].phi()
    }

    pub fn encode_letter(&self, letter: Letter) -> EdgeId {
        self.image[letter.edge][match letter.sign {
            Sign::Minus => 0,
            Sign::Plus => 1,
        }]
    }

    /// Letterwise image of an admissible window.
    pub fn encode(&self, y: &WindowY) -> Result<WindowX> {
        if !y.items.is_empty() && !InverseSemigroup::new(&self.rotational).is_admissible(&y.items)? {
            return Err(Error::Inadmissible);
        }
        Ok(Window {
            offset: y.offset,
            items: y.items.iter().map(|&l| self.encode_letter(l)).collect(),
        })
    }

    /// First index at which `x` fails to be a companion path.
    fn check_path(&self, x: &[EdgeId]) -> Result<()> {
        if let Some(&bad) = x.iter().find(|&&e| e >= self.companion.edge_count()) {
            return Err(Error::UnknownEdge(bad.to_string()));
        }
        match x
            .windows(2)
            .position(|w| self.companion.target(w[0]) != self.companion.source(w[1]))
        {
            Some(i) => Err(Error::NotAPath(i + 1)),
            None => Ok(()),
        }
    }

    /// Reconstructs every position whose return times fall inside the window;
    /// the others are `None`.
    pub fn decode(&self, x: &WindowX) -> Result<Window<Option<Letter>>> {
        self.check_path(&x.items)?;
        let phi: Vec<i64> = x.items.iter().map(|&e| self.phi(e)).collect();
        let items = (0..x.items.len()).map(|i| self.decode_at(&x.items, &phi, i)).collect();
        Ok(Window {
            offset: x.offset,
            items,
        })
    }

    /// The six cases collapse to one rule: a minus letter at level `h` reads
    /// its first `h − 1` path entries from `I_1..I_{h−1}`, a plus letter at
    /// level `h` reads all `h` entries from `I_1..I_h`.
    fn decode_at(&self, x: &[EdgeId], phi: &[i64], i: usize) -> Option<Letter> {
        let here = self.letters[x[i]];
        let h = here.level;
        let needed = if here.index.is_some() { h - 1 } else { h };
        let times = return_times(phi, i, needed);
        let mut path = vec![0u32; h];
        for (k, time) in times.iter().enumerate() {
            let earlier = self.letters[x[i - (*time)?]];
            let slot = if here.index.is_some() { h - 2 - k } else { h - 1 - k };
            debug_assert_eq!(earlier.level, slot + 1);
            path[slot] = earlier.index.expect("return times land on minus letters");
        }
        if let Some(n) = here.index {
            path[h - 1] = n;
        }
        let label = if h == self.data.levels() {
            EdgeLabel::Return { path }
        } else {
            EdgeLabel::Tree { path }
        };
        let edge = self.rotational.edge_by_label(&label)?;
        Some(Letter {
            edge,
            sign: if here.index.is_some() { Sign::Minus } else { Sign::Plus },
        })
    }

    /// Letter strings with `null` for undetermined positions.
    pub fn format_decoded(&self, y: &Window<Option<Letter>>) -> Vec<Option<String>> {
        y.items
            .iter()
            .map(|l| l.map(|l| l.display(&self.rotational)))
            .collect()
    }

    pub fn format_companion(&self, x: &WindowX) -> Vec<String> {
        x.items
            .iter()
            .map(|&e| self.companion.edge(e).label.to_string())
            .collect()
    }

    /// Parses whitespace-separated companion labels such as `c-1(2) c+2`.
    pub fn parse_companion(&self, text: &str) -> Result<Vec<EdgeId>> {
        text.split_whitespace().map(|t| self.companion.parse_edge(t)).collect()
    }
}

/// Agreement between a window and its decoded encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RoundTrip {
    pub positions: usize,
    pub determined: usize,
    pub mismatches: usize,
    pub interior_positions: usize,
    pub interior_determined: usize,
}

impl RoundTrip {
    pub fn merge(self, other: Self) -> Self {
        Self {
            positions: self.positions + other.positions,
            determined: self.determined + other.determined,
            mismatches: self.mismatches + other.mismatches,
            interior_positions: self.interior_positions + other.interior_positions,
            interior_determined: self.interior_determined + other.interior_determined,
        }
    }

    /// Fraction of interior positions that decode.
    pub fn interior_rate(&self) -> f64 {
        if self.interior_positions == 0 {
            return 1.0;
        }
        self.interior_determined as f64 / self.interior_positions as f64
    }
}

/// Positions before `len / 5` count as boundary.
pub fn interior_start(len: usize) -> usize {
    len / 5
}

/// Encodes and decodes `y`, tallying determined positions and mismatches.
pub fn round_trip(code: &BlockCode, y: &WindowY) -> Result<RoundTrip> {
    let decoded = code.decode(&code.encode(y)?)?;
    let start = interior_start(y.len());
    let mut tally = RoundTrip {
        positions: y.len(),
        interior_positions: y.len() - start,
        ..RoundTrip::default()
    };
    for (i, (got, want)) in decoded.items.iter().zip(&y.items).enumerate() {
        if let Some(got) = got {
            tally.determined += 1;
            if i >= start {
                tally.interior_determined += 1;
            }
            if got != want {
                tally.mismatches += 1;
            }
        }
    }
    Ok(tally)
}

/// The graph map from the companion graph of `base` repeated `copies` times
/// onto the companion graph of `base`, reducing levels modulo `H + 1`.
#[derive(Debug, Clone)]
pub struct HeightReduction {
    base: HeightData,
    copies: usize,
    lifted: Graph,
    reduced: Graph,
    edge_map: Vec<EdgeId>,
    vertex_map: Vec<VertexId>,
}

/// Result of [`HeightReduction::resolving_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolvingReport {
    pub homomorphism: bool,
    pub right_resolving: bool,
    pub left_resolving: bool,
    /// `(lifted vertex, reduced edge)` pairs without exactly one lift.
    pub failures: Vec<(VertexId, EdgeId)>,
}

impl ResolvingReport {
    pub fn passed(&self) -> bool {
        self.homomorphism && self.right_resolving && self.left_resolving
    }
}

impl HeightReduction {
    pub fn new(base: &HeightData, copies: usize) -> Result<Self> {
        let lifted_data = base.repeated(copies)?;
        let (lifted, _) = build_companion(&lifted_data);
        let (reduced, _) = build_companion(base);
        let levels = base.levels();
        let reduce = |level: usize| (level - 1) % levels + 1;
        let edge_map = lifted
            .edges()
            .iter()
            .map(|edge| {
                let label = match edge.label {
                    EdgeLabel::CompanionDescent { level, index } => EdgeLabel::CompanionDescent {
                        level: reduce(level),
                        index,
                    },
                    EdgeLabel::CompanionAscent { level } => EdgeLabel::CompanionAscent { level: reduce(level) },
                    _ => unreachable!("companion graphs carry companion labels only"),
                };
                reduced.edge_by_label(&label).expect("reduced label exists")
            })
            .collect();
        // companion level h lives at vertex index h - 1
        let vertex_map = (0..lifted.vertex_count()).map(|v| v % levels).collect();
        Ok(Self {
            base: base.clone(),
            copies,
            lifted,
            reduced,
            edge_map,
            vertex_map,
        })
    }

    pub fn base(&self) -> &HeightData {
        &self.base
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// `Ḡ(Ñ)`.
    pub fn lifted(&self) -> &Graph {
        &self.lifted
    }

    /// `Ḡ(N)`.
    pub fn reduced(&self) -> &Graph {
        &self.reduced
    }

    pub fn map_edge(&self, edge: EdgeId) -> EdgeId {
        self.edge_map[edge]
    }

    pub fn map_vertex(&self, vertex: VertexId) -> VertexId {
        self.vertex_map[vertex]
    }

    /// Letterwise image of a path in the lifted graph.
    pub fn map_window(&self, x: &WindowX) -> Result<WindowX> {
        if let Some(i) = x
            .items
            .windows(2)
            .position(|w| self.lifted.target(w[0]) != self.lifted.source(w[1]))
        {
            return Err(Error::NotAPath(i + 1));
        }
        Ok(Window {
            offset: x.offset,
            items: x.items.iter().map(|&e| self.map_edge(e)).collect(),
        })
    }

    /// Exhaustive check that the map is a graph homomorphism and that every
    /// reduced edge at an image vertex has exactly one lift leaving (right)
    /// and exactly one lift entering (left) the preimage vertex.
    pub fn resolving_check(&self) -> ResolvingReport {
        let homomorphism = (0..self.lifted.edge_count()).all(|e| {
            let image = self.map_edge(e);
            self.map_vertex(self.lifted.source(e)) == self.reduced.source(image)
                && self.map_vertex(self.lifted.target(e)) == self.reduced.target(image)
        });
        let mut failures = Vec::new();
        let mut right = true;
        let mut left = true;
        for v in 0..self.lifted.vertex_count() {
            let image = self.map_vertex(v);
            for &c in self.reduced.out_edges(image) {
                let lifts = self.lifted.out_edges(v).iter().filter(|&&e| self.map_edge(e) == c).count();
                if lifts != 1 {
                    right = false;
                    failures.push((v, c));
                }
            }
            for &c in self.reduced.in_edges(image) {
                let lifts = self.lifted.in_edges(v).iter().filter(|&&e| self.map_edge(e) == c).count();
                if lifts != 1 {
                    left = false;
                    failures.push((v, c));
                }
            }
        }
        ResolvingReport {
            homomorphism,
            right_resolving: right,
            left_resolving: left,
            failures,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::psi_sum;

    fn data(c: &[u32]) -> HeightData {
        HeightData::new(c.to_vec()).unwrap()
    }

    fn word(code: &BlockCode, text: &str) -> Vec<Letter> {
        InverseSemigroup::new(code.rotational()).parse_word(text).unwrap()
    }

    #[test]
    fn condition_examples() {
        let psi = |l: &i64| *l;
        // a⁻ a⁺ b⁺ before index 0
        let w = Window::past(vec![1i64, -1, -1]);
        assert!(satisfies_condition(&w, psi, 2).unwrap());
        assert!(!satisfies_condition(&w, psi, 3).unwrap());
        let all_minus = Window::past(vec![1i64; 5]);
        assert!((1..=5).all(|j| !satisfies_condition(&all_minus, psi, j).unwrap()));
        // J = 2 only constrains the total over j = -1
        assert!(satisfies_condition(&Window::past(vec![-1i64, -1]), psi, 2).unwrap());
        assert!(!satisfies_condition(&Window::past(vec![-1i64, -1, -1]), psi, 3).unwrap());
        assert_eq!(
            satisfies_condition(&Window::past(vec![1i64]), psi, 2),
            Err(Error::WindowTooShort { needed: 2, available: 1 })
        );
    }

    #[test]
    fn return_time_identity() {
        let phi = [1, 1, -1, 1, -1, -1, 1, 1, -1];
        let i = phi.len();
        let times = return_times(&phi, i, 4);
        for (k, t) in times.iter().enumerate() {
            if let Some(t) = t {
                assert_eq!(phi[i - t], 1);
                let between: i64 = phi[i - t + 1..i].iter().sum();
                assert_eq!(between, k as i64);
            }
        }
        assert_eq!(times, vec![Some(3), None, None, None]);
        assert_eq!(return_times(&[1, 1, -1, 1, 1], 5, 3), vec![Some(1), Some(2), Some(5)]);
        assert_eq!(return_times(&[-1, -1, -1], 3, 2), vec![None, None]);
        assert_eq!(return_times(&[1, 1, 1], 3, 3), vec![Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn encode_examples() {
        let code = BlockCode::new(&data(&[1, 2]));
        let x = code.encode(&Window::new(word(&code, "f(1)-"))).unwrap();
        assert_eq!(code.format_companion(&x), vec!["c-1(1)"]);
        let x = code.encode(&Window::new(word(&code, "e(1,2)+"))).unwrap();
        assert_eq!(code.format_companion(&x), vec!["c+2"]);
        for &l in &InverseSemigroup::new(code.rotational()).alphabet() {
            assert_eq!(code.phi(code.encode_letter(l)), l.psi());
        }
        let bad = word(&code, "f(1)- f(1)-");
        assert_eq!(code.encode(&Window::new(bad)), Err(Error::Inadmissible));
    }

    #[test]
    fn decode_neutral_excursion() {
        let code = BlockCode::new(&data(&[1, 2]));
        let y = Window::new(word(&code, "f(1)- e(1,1)- e(1,1)+ f(1)+"));
        let decoded = code.decode(&code.encode(&y).unwrap()).unwrap();
        assert_eq!(decoded.items, y.items.iter().map(|&l| Some(l)).collect::<Vec<_>>());
    }

    #[test]
    fn decode_undetermined_and_errors() {
        let code = BlockCode::new(&data(&[1, 2]));
        let x = code.parse_companion("c+2").unwrap();
        assert_eq!(code.decode(&Window::new(x)).unwrap().items, vec![None]);
        let x = code.parse_companion("c-1(1)").unwrap();
        let first = code.decode(&Window::new(x)).unwrap();
        assert_eq!(code.format_decoded(&first), vec![Some("f(1)-".to_string())]);
        let x = code.parse_companion("c-1(1) c-1(1)").unwrap();
        assert_eq!(code.decode(&Window::new(x)), Err(Error::NotAPath(1)));
    }

    /// Random admissible words by uniform choice among nonzero extensions.
    fn random_words(code: &BlockCode, count: usize, len: usize, seed: u64) -> Vec<Vec<Letter>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let alphabet = InverseSemigroup::new(code.rotational()).alphabet();
        (0..count)
            .map(|_| {
                let mut reducer = crate::semigroup::Reducer::new(code.rotational());
                let mut out = Vec::new();
                while out.len() < len {
                    let l = alphabet[rng.random_range(0..alphabet.len())];
                    if reducer.push(l) {
                        out.push(l);
                    } else {
                        reducer.pop();
                    }
                }
                out
            })
            .collect()
    }

    #[test]
    fn round_trip_random_windows() {
        for counts in [&[1, 2][..], &[1, 1, 2], &[2, 1, 3], &[3]] {
            let code = BlockCode::new(&data(counts));
            let mut total = RoundTrip::default();
            for w in random_words(&code, 100, 60, 7) {
                let y = Window::new(w);
                total = total.merge(round_trip(&code, &y).unwrap());
            }
            assert_eq!(total.mismatches, 0, "{counts:?}");
            assert!(total.determined > 0);
        }
    }

    #[test]
    fn depth_condition_transfers() {
        let code = BlockCode::new(&data(&[1, 1, 2]));
        for w in random_words(&code, 50, 30, 3) {
            let x = code.encode(&Window::new(w.clone())).unwrap();
            for j in 1..=w.len() {
                let y = Window::past(w.clone());
                let xp = Window::past(x.items.clone());
                assert_eq!(
                    satisfies_condition(&y, |l: &Letter| l.psi(), j).unwrap(),
                    satisfies_condition(&xp, |&e: &EdgeId| code.phi(e), j).unwrap()
                );
            }
            assert_eq!(psi_sum(&w), x.items.iter().map(|&e| code.phi(e)).sum::<i64>());
        }
    }

    #[test]
    fn height_reduction() {
        let r = HeightReduction::new(&data(&[1, 2]), 2).unwrap();
        let lifted = r.lifted().edge_by_label(&"c-3(1)".parse().unwrap()).unwrap();
        assert_eq!(r.reduced().edge(r.map_edge(lifted)).label.to_string(), "c-1(1)");
        for (base, copies) in [(&[1, 2][..], 2), (&[1, 2], 3), (&[1, 1, 2], 2), (&[1, 1, 2], 3), (&[2, 3], 1)] {
            let r = HeightReduction::new(&data(base), copies).unwrap();
            let report = r.resolving_check();
            assert!(report.passed(), "{base:?} x{copies}: {report:?}");
            if copies == 1 {
                assert!((0..r.lifted().edge_count()).all(|e| r.map_edge(e) == e));
            }
        }
    }

    #[test]
    fn height_reduction_maps_paths() {
        let r = HeightReduction::new(&data(&[1, 2]), 2).unwrap();
        let lifted_code = BlockCode::new(&data(&[1, 2, 1, 2]));
        let reduced_code = BlockCode::new(&data(&[1, 2]));
        let x = lifted_code.parse_companion("c-1(1) c-2(2) c-3(1) c+3 c-3(1) c-4(1)").unwrap();
        let image = r.map_window(&Window::new(x.clone())).unwrap();
        assert_eq!(
            reduced_code.format_companion(&image),
            vec!["c-1(1)", "c-2(2)", "c-1(1)", "c+1", "c-1(1)", "c-2(1)"]
        );
        assert!(reduced_code.check_path(&image.items).is_ok());
        for (a, b) in x.iter().zip(&image.items) {
            assert_eq!(lifted_code.phi(*a), reduced_code.phi(*b));
        }
    }
}
