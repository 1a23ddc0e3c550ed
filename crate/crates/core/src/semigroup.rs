//! The graph inverse semigroup of a directed graph.
//!
//! Generators are the letters `e⁻` and `e⁺` for every edge `e`, subject to
//! `f⁻g⁺ = 1_{s(f)}` when `f = g` and `0` otherwise, together with the vertex
//! idempotent relations. Every nonzero element has a unique normal form
//! `p_k⁺ ⋯ p_1⁺ q_1⁻ ⋯ q_l⁻` where `p` and `q` are paths leaving a common apex.

use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::{EdgeId, Graph, GraphId, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    /// `ψ`: +1 on minus letters, -1 on plus letters.
    pub fn psi(self) -> i64 {
        match self {
            Sign::Minus => 1,
            Sign::Plus => -1,
        }
    }

    fn suffix(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl Letter {
    pub fn minus(edge: EdgeId) -> Self {
        Self {
            edge,
            sign: Sign::Minus,
        }
    }

    pub fn plus(edge: EdgeId) -> Self {
        Self {
            edge,
            sign: Sign::Plus,
        }
    }

    pub fn inverse(self) -> Self {
        Self {
            edge: self.edge,
            sign: self.sign.flip(),
        }
    }

    pub fn psi(self) -> i64 {
        self.sign.psi()
    }

    /// Source vertex: `s(e⁻) = s(e)`, `s(e⁺) = t(e)`.
    pub fn source(self, graph: &Graph) -> VertexId {
        match self.sign {
            Sign::Minus => graph.source(self.edge),
            Sign::Plus => graph.target(self.edge),
        }
    }

    /// Target vertex: `t(e⁻) = t(e)`, `t(e⁺) = s(e)`.
    pub fn target(self, graph: &Graph) -> VertexId {
        match self.sign {
            Sign::Minus => graph.target(self.edge),
            Sign::Plus => graph.source(self.edge),
        }
    }

    /// Text form using the edge label, e.g. `f(1)-`.
    pub fn display(self, graph: &Graph) -> String {
        format!("{}{}", graph.edge(self.edge).label, self.sign.suffix())
    }
}

/// Numeric form `<edge-id>-` / `<edge-id>+`.
impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, self.sign.suffix())
    }
}

/// The sum of `ψ` over a word.
pub fn psi_sum(word: &[Letter]) -> i64 {
    word.iter().map(|l| l.psi()).sum()
}

/// Reverses the word and inverts every letter.
pub fn time_reverse(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inverse()).collect()
}

/// A nonzero element in normal form.
///
/// `up` holds the plus-block in spelling order `p_k, …, p_1`; `down` holds the
/// minus-block `q_1, …, q_l`. Both paths start at `apex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    graph: GraphId,
    apex: VertexId,
    up: Vec<EdgeId>,
    down: Vec<EdgeId>,
}

impl NormalForm {
    pub fn apex(&self) -> VertexId {
        self.apex
    }

    /// The path `p = (p_1, …, p_k)` leaving the apex.
    pub fn up_path(&self) -> Vec<EdgeId> {
        self.up.iter().rev().copied().collect()
    }

    /// The path `q = (q_1, …, q_l)` leaving the apex.
    pub fn down_path(&self) -> &[EdgeId] {
        &self.down
    }

    pub fn is_idempotent(&self) -> bool {
        self.up.is_empty() && self.down.is_empty()
    }

    pub fn psi(&self) -> i64 {
        self.down.len() as i64 - self.up.len() as i64
    }

    pub fn source(&self, graph: &Graph) -> VertexId {
        self.up.first().map_or(self.apex, |&e| graph.target(e))
    }

    pub fn target(&self, graph: &Graph) -> VertexId {
        self.down.last().map_or(self.apex, |&e| graph.target(e))
    }

    pub fn spell(&self) -> Vec<Letter> {
        self.up
            .iter()
            .map(|&e| Letter::plus(e))
            .chain(self.down.iter().map(|&e| Letter::minus(e)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemigroupElement {
    Zero,
    NonZero(NormalForm),
}

impl SemigroupElement {
    pub fn is_zero(&self) -> bool {
        matches!(self, SemigroupElement::Zero)
    }

    pub fn normal_form(&self) -> Option<&NormalForm> {
        match self {
            SemigroupElement::Zero => None,
            SemigroupElement::NonZero(nf) => Some(nf),
        }
    }
}

/// The graph inverse semigroup of a fixed graph.
#[derive(Debug, Clone, Copy)]
pub struct InverseSemigroup<'g> {
    graph: &'g Graph,
}

impl<'g> InverseSemigroup<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// The alphabet `ℰ⁻ ∪ ℰ⁺`: all minus letters, then all plus letters.
    pub fn alphabet(&self) -> Vec<Letter> {
        let edges = 0..self.graph.edge_count();
        edges
            .clone()
            .map(Letter::minus)
            .chain(edges.map(Letter::plus))
            .collect()
    }

    pub fn idempotent(&self, vertex: VertexId) -> SemigroupElement {
        SemigroupElement::NonZero(NormalForm {
            graph: self.graph.id(),
            apex: vertex,
            up: Vec::new(),
            down: Vec::new(),
        })
    }

    pub fn letter_element(&self, letter: Letter) -> Result<SemigroupElement> {
        self.check_letter(letter)?;
        let edge = letter.edge;
        let (up, down) = match letter.sign {
            Sign::Minus => (Vec::new(), vec![edge]),
            Sign::Plus => (vec![edge], Vec::new()),
        };
        Ok(SemigroupElement::NonZero(NormalForm {
            graph: self.graph.id(),
            apex: self.graph.source(edge),
            up,
            down,
        }))
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        if letter.edge < self.graph.edge_count() {
            Ok(())
        } else {
            Err(Error::UnknownEdge(letter.edge.to_string()))
        }
    }

    /// The product of a nonempty word, in normal form.
    pub fn reduce(&self, word: &[Letter]) -> Result<SemigroupElement> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        for &letter in word {
            self.check_letter(letter)?;
        }
        let mut reducer = Reducer::new(self.graph);
        for &letter in word {
            if !reducer.push(letter) {
                return Ok(SemigroupElement::Zero);
            }
        }
        Ok(reducer.element())
    }

    pub fn is_admissible(&self, word: &[Letter]) -> Result<bool> {
        Ok(!self.reduce(word)?.is_zero())
    }

    pub fn multiply(&self, x: &SemigroupElement, y: &SemigroupElement) -> Result<SemigroupElement> {
        let (x, y) = match (x, y) {
            (SemigroupElement::NonZero(x), SemigroupElement::NonZero(y)) => (x, y),
            (SemigroupElement::NonZero(nf), SemigroupElement::Zero)
            | (SemigroupElement::Zero, SemigroupElement::NonZero(nf)) => {
                if nf.graph != self.graph.id() {
                    return Err(Error::MixedGraphs);
                }
                return Ok(SemigroupElement::Zero);
            }
            (SemigroupElement::Zero, SemigroupElement::Zero) => return Ok(SemigroupElement::Zero),
        };
        if x.graph != self.graph.id() || y.graph != self.graph.id() {
            return Err(Error::MixedGraphs);
        }
        Ok(multiply_forms(self.graph, x, y).map_or(SemigroupElement::Zero, SemigroupElement::NonZero))
    }

    /// `x^k` for `k >= 1` by repeated squaring.
    pub fn power(&self, x: &SemigroupElement, k: u32) -> Result<SemigroupElement> {
        assert!(k >= 1, "power exponent must be positive");
        let mut result: Option<SemigroupElement> = None;
        let mut base = x.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => self.multiply(&r, &base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = self.multiply(&base, &base)?;
        }
        Ok(result.expect("k >= 1"))
    }

    /// Parses `f(1)-` or `3+`.
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let text = text.trim();
        let (body, sign) = if let Some(body) = text.strip_suffix('-') {
            (body, Sign::Minus)
        } else if let Some(body) = text.strip_suffix('+') {
            (body, Sign::Plus)
        } else {
            return Err(Error::Parse(format!("`{text}` has no sign suffix")));
        };
        let edge = match body.parse::<EdgeId>() {
            Ok(id) if id < self.graph.edge_count() => id,
            Ok(_) => return Err(Error::UnknownEdge(body.to_string())),
            Err(_) => self.graph.parse_edge(body)?,
        };
        Ok(Letter { edge, sign })
    }

    /// Parses a whitespace-separated word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        text.split_whitespace().map(|t| self.parse_letter(t)).collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|l| l.display(self.graph))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `0`, `1_V`, or the plus-block and minus-block separated by ` · `.
    pub fn format_element(&self, x: &SemigroupElement) -> String {
        let nf = match x {
            SemigroupElement::Zero => return "0".into(),
            SemigroupElement::NonZero(nf) => nf,
        };
        if nf.is_idempotent() {
            return format!("1_{}", self.graph.vertices()[nf.apex]);
        }
        let block = |edges: &[EdgeId], sign: Sign| {
            edges
                .iter()
                .map(|&e| Letter { edge: e, sign }.display(self.graph))
                .collect::<Vec<_>>()
                .join(" ")
        };
        match (nf.up.is_empty(), nf.down.is_empty()) {
            (false, true) => block(&nf.up, Sign::Plus),
            (true, false) => block(&nf.down, Sign::Minus),
            _ => format!(
                "{} · {}",
                block(&nf.up, Sign::Plus),
                block(&nf.down, Sign::Minus)
            ),
        }
    }
}

fn multiply_forms(graph: &Graph, x: &NormalForm, y: &NormalForm) -> Option<NormalForm> {
    if x.target(graph) != y.source(graph) {
        return None;
    }
    let cancel = x.down.len().min(y.up.len());
    let x_tail = &x.down[x.down.len() - cancel..];
    let matched = x_tail.iter().rev().eq(y.up[..cancel].iter());
    if !matched {
        return None;
    }
    let graph_id = x.graph;
    if x.down.len() <= y.up.len() {
        let mut up = x.up.clone();
        up.extend_from_slice(&y.up[cancel..]);
        Some(NormalForm {
            graph: graph_id,
            apex: y.apex,
            up,
            down: y.down.clone(),
        })
    } else {
        let mut down = x.down[..x.down.len() - cancel].to_vec();
        down.extend_from_slice(&y.down);
        Some(NormalForm {
            graph: graph_id,
            apex: x.apex,
            up: x.up.clone(),
            down,
        })
    }
}

#[derive(Debug, Clone, Copy)]
enum Step {
    First,
    PushedDown,
    Cancelled(EdgeId),
    PushedUp(Option<VertexId>),
}

/// Left-to-right reducer supporting undo, for prefix enumeration.
///
/// Invariant: `zero_depth` is the number of pushes since the product became
/// zero, or `None` while it is nonzero.
#[derive(Debug, Clone)]
pub struct Reducer<'g> {
    graph: &'g Graph,
    apex: Option<VertexId>,
    up: Vec<EdgeId>,
    down: Vec<EdgeId>,
    history: Vec<Step>,
    zero_depth: Option<usize>,
}

impl<'g> Reducer<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self {
            graph,
            apex: None,
            up: Vec::new(),
            down: Vec::new(),
            history: Vec::new(),
            zero_depth: None,
        }
    }

    pub fn len(&self) -> usize {
        self.history.len() + self.zero_depth.unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.zero_depth.is_some()
    }

    fn target(&self) -> Option<VertexId> {
        let apex = self.apex?;
        Some(self.down.last().map_or(apex, |&e| self.graph.target(e)))
    }

    /// Appends a letter; returns whether the product is still nonzero.
    pub fn push(&mut self, letter: Letter) -> bool {
        if let Some(depth) = self.zero_depth.as_mut() {
            *depth += 1;
            return false;
        }
        if let Some(t) = self.target() {
            if t != letter.source(self.graph) {
                self.zero_depth = Some(1);
                return false;
            }
        }
        let step = match letter.sign {
            Sign::Minus => {
                let first = self.apex.is_none();
                self.apex.get_or_insert(self.graph.source(letter.edge));
                self.down.push(letter.edge);
                if first {
                    Step::First
                } else {
                    Step::PushedDown
                }
            }
            Sign::Plus => match self.down.pop() {
                Some(q) if q == letter.edge => Step::Cancelled(q),
                Some(q) => {
                    self.down.push(q);
                    self.zero_depth = Some(1);
                    return false;
                }
                None => {
                    let old = self.apex.replace(self.graph.source(letter.edge));
                    self.up.push(letter.edge);
                    Step::PushedUp(old)
                }
            },
        };
        self.history.push(step);
        true
    }

    /// Removes the last letter pushed.
    pub fn pop(&mut self) {
        if let Some(depth) = self.zero_depth {
            self.zero_depth = if depth > 1 { Some(depth - 1) } else { None };
            return;
        }
        match self.history.pop().expect("pop on empty reducer") {
            Step::First => {
                self.down.pop();
                self.apex = None;
            }
            Step::PushedDown => {
                self.down.pop();
            }
            Step::Cancelled(q) => self.down.push(q),
            Step::PushedUp(old) => {
                self.up.pop();
                self.apex = old;
            }
        }
    }

    /// The current product; panics on the empty word.
    pub fn element(&self) -> SemigroupElement {
        if self.is_zero() {
            return SemigroupElement::Zero;
        }
        SemigroupElement::NonZero(NormalForm {
            graph: self.graph.id(),
            apex: self.apex.expect("element of an empty word"),
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }
}
