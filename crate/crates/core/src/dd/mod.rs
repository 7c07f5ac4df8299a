//! Decision diagrams for state vectors and gate matrices.
//!
//! A [`Manager`] owns every node of one diagram kind over a fixed number of
//! qubits, together with the unique table that makes nodes canonical and the
//! operation caches. Vector nodes have two children (`|0⟩`, `|1⟩` cofactor of
//! their qubit), matrix nodes four (row bit, column bit). Levels count from
//! qubit 0 at the top; terminals sit below level `n - 1`.
//!
//! * **ADD**: every edge weighs 1 and each distinct value is its own terminal.
//!   Nodes merge only when their children are identical.
//! * **QMDD**: a single terminal of value 1; values live on edge weights.
//!   Each node is normalized so its leftmost nonzero outgoing weight is
//!   exactly 1, which lets nodes equal up to a factor merge.
//!
//! Both kinds keep every level explicit on nonzero paths (identity levels of
//! gate matrices included). An all-zero sub-function is never a node: it is
//! the distinguished zero edge, weight 0 into terminal 0. Unique-table keys
//! quantize weights to a `1e-12` grid, and a weight that quantizes to zero
//! becomes the zero edge.

mod equiv;
mod ops;

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{BasisString, Circuit, Gate};

pub use equiv::{equiv_check, Verdict};

/// Unique-table weight quantum.
pub const WEIGHT_QUANTUM: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DdKind {
    Add,
    Qmdd,
}

impl DdKind {
    pub fn name(self) -> &'static str {
        match self {
            DdKind::Add => "ADD",
            DdKind::Qmdd => "QMDD",
        }
    }
}

impl fmt::Display for DdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DdError {
    #[error("vector length {0} is not a power of two of at least 2")]
    NotPowerOfTwo(usize),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("qubit {qubit} out of range for a {n_qubits}-qubit diagram")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("circuits act on {a} and {b} qubits")]
    QubitCountMismatch { a: usize, b: usize },
    #[error("expected a {expected} diagram")]
    Shape { expected: &'static str },
    #[error("{n} qubits outside the supported range 1..=30")]
    QubitCount { n: usize },
}

/// Index of a node inside its manager.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    /// Terminal 0: value 1 in a QMDD, value 0 in an ADD. The zero edge
    /// always points here.
    pub const TERMINAL: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A weighted pointer to a node. ADD edges weigh 1 except the zero edge.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub node: NodeId,
    pub weight: Complex64,
}

impl Edge {
    pub const ZERO: Edge = Edge {
        node: NodeId::TERMINAL,
        weight: Complex64::new(0.0, 0.0),
    };

    pub fn is_zero(&self) -> bool {
        self.weight == Complex64::new(0.0, 0.0)
    }
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Debug)]
enum Node {
    Terminal(Complex64),
    Inner {
        level: u32,
        /// 2 for vectors, 4 for matrices.
        arity: u8,
        kids: [Edge; 4],
    },
}

type Quantized = (i64, i64);

fn quantize(w: Complex64) -> Quantized {
    (
        (w.re / WEIGHT_QUANTUM).round() as i64,
        (w.im / WEIGHT_QUANTUM).round() as i64,
    )
}

fn negligible(w: Complex64) -> bool {
    quantize(w) == (0, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    Terminal(Quantized),
    Inner {
        level: u32,
        arity: u8,
        kids: [(NodeId, Quantized); 4],
    },
}

fn bits(w: Complex64) -> (u64, u64) {
    (w.re.to_bits(), w.im.to_bits())
}

/// Nodes, unique table and operation caches for one diagram kind.
#[derive(Debug)]
pub struct Manager {
    kind: DdKind,
    n: usize,
    nodes: Vec<Node>,
    unique: HashMap<Key, NodeId>,
    mv_cache: HashMap<(NodeId, NodeId), Edge>,
    mm_cache: HashMap<(NodeId, NodeId), Edge>,
    add_cache: HashMap<(NodeId, NodeId, (u64, u64)), Edge>,
    scale_cache: HashMap<(NodeId, (u64, u64)), Edge>,
}

impl Manager {
    pub fn new(kind: DdKind, n_qubits: usize) -> Result<Self, DdError> {
        if n_qubits == 0 || n_qubits > 30 {
            return Err(DdError::QubitCount { n: n_qubits });
        }
        let terminal = match kind {
            DdKind::Add => Complex64::new(0.0, 0.0),
            DdKind::Qmdd => ONE,
        };
        let mut unique = HashMap::new();
        unique.insert(Key::Terminal(quantize(terminal)), NodeId::TERMINAL);
        Ok(Manager {
            kind,
            n: n_qubits,
            nodes: vec![Node::Terminal(terminal)],
            unique,
            mv_cache: HashMap::new(),
            mm_cache: HashMap::new(),
            add_cache: HashMap::new(),
            scale_cache: HashMap::new(),
        })
    }

    pub fn kind(&self) -> DdKind {
        self.kind
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    /// Nodes ever created, terminals included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    fn terminal_value(&self, id: NodeId) -> Complex64 {
        match self.node(id) {
            Node::Terminal(v) => *v,
            Node::Inner { .. } => panic!("{id} is not a terminal"),
        }
    }

    fn kids(&self, id: NodeId) -> [Edge; 4] {
        match self.node(id) {
            Node::Inner { kids, .. } => *kids,
            Node::Terminal(_) => panic!("{id} is a terminal"),
        }
    }

    fn arity(&self, e: Edge) -> Option<u8> {
        match self.node(e.node) {
            Node::Inner { arity, .. } if !e.is_zero() => Some(*arity),
            _ => None,
        }
    }

    fn intern(&mut self, key: Key, node: Node) -> NodeId {
        if let Some(&id) = self.unique.get(&key) {
            return id;
        }
        let id = NodeId(u32::try_from(self.nodes.len()).expect("node table overflow"));
        self.nodes.push(node);
        self.unique.insert(key, id);
        id
    }

    /// The edge for a terminal-level value.
    pub(crate) fn value_edge(&mut self, v: Complex64) -> Edge {
        if negligible(v) {
            return Edge::ZERO;
        }
        match self.kind {
            DdKind::Qmdd => Edge {
                node: NodeId::TERMINAL,
                weight: v,
            },
            DdKind::Add => {
                let node = self.intern(Key::Terminal(quantize(v)), Node::Terminal(v));
                Edge { node, weight: ONE }
            }
        }
    }

    /// Canonical node for `kids` at `level`, as an edge carrying the
    /// factored-out weight.
    pub(crate) fn make_node(&mut self, level: usize, kids: &[Edge]) -> Edge {
        debug_assert!(kids.len() == 2 || kids.len() == 4);
        let mut kids: Vec<Edge> = kids
            .iter()
            .map(|&k| if negligible(k.weight) { Edge::ZERO } else { k })
            .collect();
        let Some(first) = kids.iter().position(|k| !k.is_zero()) else {
            return Edge::ZERO;
        };
        let factor = match self.kind {
            DdKind::Add => ONE,
            DdKind::Qmdd => {
                let norm = kids[first].weight;
                for (i, k) in kids.iter_mut().enumerate() {
                    if i == first {
                        k.weight = ONE;
                    } else if !k.is_zero() {
                        k.weight /= norm;
                        if negligible(k.weight) {
                            *k = Edge::ZERO;
                        }
                    }
                }
                norm
            }
        };
        let mut padded = [Edge::ZERO; 4];
        padded[..kids.len()].copy_from_slice(&kids);
        let mut key_kids = [(NodeId::TERMINAL, (0, 0)); 4];
        for (slot, k) in key_kids.iter_mut().zip(&padded) {
            *slot = (k.node, quantize(k.weight));
        }
        let arity = kids.len() as u8;
        let key = Key::Inner {
            level: level as u32,
            arity,
            kids: key_kids,
        };
        let node = self.intern(
            key,
            Node::Inner {
                level: level as u32,
                arity,
                kids: padded,
            },
        );
        Edge {
            node,
            weight: factor,
        }
    }

    /// Diagram of a `2^n` amplitude vector.
    pub fn from_vector(&mut self, v: &[Complex64]) -> Result<Edge, DdError> {
        let expected = 1usize << self.n;
        if v.len() != expected {
            if v.len() < 2 || !v.len().is_power_of_two() {
                return Err(DdError::NotPowerOfTwo(v.len()));
            }
            return Err(DdError::LengthMismatch {
                expected,
                got: v.len(),
            });
        }
        Ok(self.build_vector(0, v))
    }

    fn build_vector(&mut self, level: usize, v: &[Complex64]) -> Edge {
        if level == self.n {
            return self.value_edge(v[0]);
        }
        let (lo, hi) = v.split_at(v.len() / 2);
        let kids = [
            self.build_vector(level + 1, lo),
            self.build_vector(level + 1, hi),
        ];
        self.make_node(level, &kids)
    }

    /// `|b⟩` as a diagram.
    pub fn basis_state(&mut self, b: &BasisString) -> Result<Edge, DdError> {
        self.check_len(b)?;
        let mut e = self.value_edge(ONE);
        for level in (0..self.n).rev() {
            let kids = if b.bits()[level] {
                [Edge::ZERO, e]
            } else {
                [e, Edge::ZERO]
            };
            e = self.make_node(level, &kids);
        }
        Ok(e)
    }

    /// `|0…0⟩`.
    pub fn zero_state(&mut self) -> Edge {
        self.basis_state(&BasisString::zeros(self.n))
            .expect("length matches")
    }

    fn check_len(&self, b: &BasisString) -> Result<(), DdError> {
        if b.len() != self.n {
            return Err(DdError::LengthMismatch {
                expected: self.n,
                got: b.len(),
            });
        }
        Ok(())
    }

    fn expect_vector(&self, e: Edge) -> Result<(), DdError> {
        match self.arity(e) {
            Some(4) => Err(DdError::Shape { expected: "vector" }),
            _ => Ok(()),
        }
    }

    fn expect_matrix(&self, e: Edge) -> Result<(), DdError> {
        match self.arity(e) {
            Some(2) => Err(DdError::Shape { expected: "matrix" }),
            _ => Ok(()),
        }
    }

    /// Dense amplitudes of a vector diagram.
    pub fn to_vector(&self, e: Edge) -> Result<Vec<Complex64>, DdError> {
        self.expect_vector(e)?;
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << self.n];
        self.fill_vector(e, 0, ONE, &mut out);
        Ok(out)
    }

    fn fill_vector(&self, e: Edge, level: usize, acc: Complex64, out: &mut [Complex64]) {
        if e.is_zero() {
            return;
        }
        let w = acc * e.weight;
        if level == self.n {
            out[0] = w * self.terminal_value(e.node);
            return;
        }
        let kids = self.kids(e.node);
        let (lo, hi) = out.split_at_mut(out.len() / 2);
        self.fill_vector(kids[0], level + 1, w, lo);
        self.fill_vector(kids[1], level + 1, w, hi);
    }

    /// Row-major dense matrix of a matrix diagram.
    pub fn to_matrix(&self, e: Edge) -> Result<Vec<Vec<Complex64>>, DdError> {
        self.expect_matrix(e)?;
        let dim = 1usize << self.n;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        self.fill_matrix(e, 0, ONE, 0, 0, &mut out);
        Ok(out)
    }

    fn fill_matrix(
        &self,
        e: Edge,
        level: usize,
        acc: Complex64,
        row: usize,
        col: usize,
        out: &mut [Vec<Complex64>],
    ) {
        if e.is_zero() {
            return;
        }
        let w = acc * e.weight;
        if level == self.n {
            out[row][col] = w * self.terminal_value(e.node);
            return;
        }
        let half = 1usize << (self.n - 1 - level);
        let kids = self.kids(e.node);
        for (i, &k) in kids.iter().enumerate() {
            let (r, c) = (i >> 1, i & 1);
            self.fill_matrix(k, level + 1, w, row + r * half, col + c * half, out);
        }
    }

    /// Amplitude of `b`: the product of weights along its path (times the
    /// terminal value).
    pub fn amplitude(&self, e: Edge, b: &BasisString) -> Result<Complex64, DdError> {
        self.expect_vector(e)?;
        self.check_len(b)?;
        let mut w = e.weight;
        let mut node = e.node;
        for &bit in b.bits() {
            if w == Complex64::new(0.0, 0.0) {
                return Ok(w);
            }
            let k = self.kids(node)[bit as usize];
            w *= k.weight;
            node = k.node;
        }
        if w == Complex64::new(0.0, 0.0) {
            return Ok(w);
        }
        Ok(w * self.terminal_value(node))
    }

    /// `|amplitude(b)|²`.
    pub fn measure_prob(&self, e: Edge, b: &BasisString) -> Result<f64, DdError> {
        Ok(self.amplitude(e, b)?.norm_sqr())
    }

    /// All `2^n` outcome probabilities.
    pub fn probabilities(&self, e: Edge) -> Result<Vec<f64>, DdError> {
        Ok(self.to_vector(e)?.iter().map(|a| a.norm_sqr()).collect())
    }

    fn reachable(&self, e: Edge) -> Vec<NodeId> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = Vec::new();
        if !e.is_zero() {
            stack.push(e.node);
        }
        while let Some(id) = stack.pop() {
            if !seen.insert(id) {
                continue;
            }
            if let Node::Inner { arity, kids, .. } = self.node(id) {
                for k in &kids[..*arity as usize] {
                    if !k.is_zero() {
                        stack.push(k.node);
                    }
                }
            }
        }
        let mut v: Vec<NodeId> = seen.into_iter().collect();
        v.sort();
        v
    }

    /// Distinct interior nodes reachable from `e`.
    pub fn node_count(&self, e: Edge) -> usize {
        self.reachable(e)
            .into_iter()
            .filter(|&id| matches!(self.node(id), Node::Inner { .. }))
            .count()
    }

    /// Distinct terminals reachable from `e` along nonzero edges.
    pub fn terminal_count(&self, e: Edge) -> usize {
        self.reachable(e)
            .into_iter()
            .filter(|&id| matches!(self.node(id), Node::Terminal(_)))
            .count()
    }

    /// True when every interior node's leftmost nonzero child weighs exactly
    /// 1. Always holds for ADDs, whose nonzero edges all weigh 1.
    pub fn all_normalized(&self) -> bool {
        self.nodes.iter().all(|n| match n {
            Node::Terminal(_) => true,
            Node::Inner { arity, kids, .. } => kids[..*arity as usize]
                .iter()
                .find(|k| !k.is_zero())
                .is_some_and(|k| k.weight == ONE),
        })
    }

    /// Full `2^n × 2^n` matrix of one gate, every level explicit.
    pub fn from_gate(&mut self, g: &Gate) -> Result<Edge, DdError> {
        for q in g.qubits() {
            if q >= self.n {
                return Err(DdError::QubitOutOfRange {
                    qubit: q,
                    n_qubits: self.n,
                });
            }
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = match g {
            Gate::H(_) => [[c(r, 0.), c(r, 0.)], [c(r, 0.), c(-r, 0.)]],
            Gate::S(_) => [[ONE, c(0., 0.)], [c(0., 0.), c(0., 1.)]],
            Gate::T(_) => [
                [ONE, c(0., 0.)],
                [
                    c(0., 0.),
                    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
                ],
            ],
            _ => [[c(0., 0.), ONE], [ONE, c(0., 0.)]],
        };
        let mut controls = vec![None; self.n];
        for ctl in g.controls() {
            controls[ctl.qubit] = Some(ctl.positive);
        }
        let mut memo = HashMap::new();
        let spec = GateSpec {
            target: g.target(),
            controls: &controls,
            m,
        };
        Ok(self.build_gate(&spec, 0, true, None, &mut memo))
    }

    /// The `2^n` identity matrix.
    pub fn identity(&mut self) -> Edge {
        let mut e = self.value_edge(ONE);
        for level in (0..self.n).rev() {
            e = self.make_node(level, &[e, Edge::ZERO, Edge::ZERO, e]);
        }
        e
    }

    fn build_gate(
        &mut self,
        g: &GateSpec<'_>,
        level: usize,
        fires: bool,
        target_rc: Option<(usize, usize)>,
        memo: &mut GateMemo,
    ) -> Edge {
        if let Some(&e) = memo.get(&(level, fires, target_rc)) {
            return e;
        }
        let e = if level == self.n {
            let (r, c) = target_rc.expect("target level visited");
            let v = if fires {
                g.m[r][c]
            } else if r == c {
                ONE
            } else {
                Complex64::new(0.0, 0.0)
            };
            self.value_edge(v)
        } else if level == g.target {
            let mut kids = [Edge::ZERO; 4];
            for (i, k) in kids.iter_mut().enumerate() {
                *k = self.build_gate(g, level + 1, fires, Some((i >> 1, i & 1)), memo);
            }
            self.make_node(level, &kids)
        } else {
            let mut kids = [Edge::ZERO; 4];
            for bit in 0..2 {
                let still = match g.controls[level] {
                    Some(positive) => fires && (bit == 1) == positive,
                    None => fires,
                };
                kids[3 * bit] = self.build_gate(g, level + 1, still, target_rc, memo);
            }
            self.make_node(level, &kids)
        };
        memo.insert((level, fires, target_rc), e);
        e
    }

    /// Unitary of a whole circuit: gate matrices multiplied right to left.
    pub fn circuit_matrix(&mut self, c: &Circuit) -> Result<Edge, DdError> {
        self.check_circuit(c)?;
        let mut m = self.identity();
        for g in c.gates() {
            let gm = self.from_gate(g)?;
            m = self.multiply(gm, m)?;
        }
        Ok(m)
    }

    /// Apply every gate of `c` to `|0…0⟩`.
    pub fn simulate(&mut self, c: &Circuit) -> Result<Edge, DdError> {
        let start = self.zero_state();
        self.simulate_from(c, start)
    }

    pub fn simulate_from(&mut self, c: &Circuit, state: Edge) -> Result<Edge, DdError> {
        self.check_circuit(c)?;
        let mut v = state;
        for g in c.gates() {
            let m = self.from_gate(g)?;
            v = self.apply(m, v)?;
        }
        Ok(v)
    }

    fn check_circuit(&self, c: &Circuit) -> Result<(), DdError> {
        if c.n_qubits() != self.n {
            return Err(DdError::QubitCountMismatch {
                a: c.n_qubits(),
                b: self.n,
            });
        }
        Ok(())
    }
}

/// Gate-diagram memo keyed by level, firing state and target matrix entry.
type GateMemo = HashMap<(usize, bool, Option<(usize, usize)>), Edge>;

struct GateSpec<'a> {
    target: usize,
    /// Per level: `Some(polarity)` for a control.
    controls: &'a [Option<bool>],
    m: [[Complex64; 2]; 2],
}

/// Diagram of `v` in a fresh manager of the given kind.
pub fn dd_from_vector(v: &[Complex64], kind: DdKind) -> Result<(Manager, Edge), DdError> {
    if v.len() < 2 || !v.len().is_power_of_two() {
        return Err(DdError::NotPowerOfTwo(v.len()));
    }
    let mut m = Manager::new(kind, v.len().trailing_zeros() as usize)?;
    let e = m.from_vector(v)?;
    Ok((m, e))
}

/// Output state of `c` on `|0…0⟩` in a fresh manager.
pub fn simulate_dd(c: &Circuit, kind: DdKind) -> Result<(Manager, Edge), DdError> {
    let mut m = Manager::new(kind, c.n_qubits())?;
    let e = m.simulate(c)?;
    Ok((m, e))
}
