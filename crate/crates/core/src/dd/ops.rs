//! Recursive operations: matrix-vector and matrix-matrix products, sums and
//! scalar multiples. Every result goes through `make_node`, so it is
//! canonical. Caches key on node identifiers with the edge weights factored
//! out, so one entry serves every scalar multiple of its operands.

use num_complex::Complex64;

use super::{bits, negligible, DdError, DdKind, Edge, Manager, Node, ONE};

impl Manager {
    fn level_of(&self, e: Edge) -> usize {
        match self.node(e.node) {
            Node::Inner { level, .. } => *level as usize,
            Node::Terminal(_) => self.n,
        }
    }

    fn is_terminal(&self, e: Edge) -> bool {
        matches!(self.node(e.node), Node::Terminal(_))
    }

    fn edge_value(&self, e: Edge) -> Complex64 {
        e.weight * self.terminal_value(e.node)
    }

    /// `s · e`.
    pub fn scale(&mut self, e: Edge, s: Complex64) -> Edge {
        if e.is_zero() || negligible(s) {
            return Edge::ZERO;
        }
        if s == ONE {
            return e;
        }
        match self.kind {
            DdKind::Qmdd => {
                let w = e.weight * s;
                if negligible(w) {
                    Edge::ZERO
                } else {
                    Edge {
                        node: e.node,
                        weight: w,
                    }
                }
            }
            DdKind::Add => self.scale_terminals(e, s),
        }
    }

    fn scale_terminals(&mut self, e: Edge, s: Complex64) -> Edge {
        if e.is_zero() {
            return Edge::ZERO;
        }
        if self.is_terminal(e) {
            let v = self.edge_value(e) * s;
            return self.value_edge(v);
        }
        let key = (e.node, bits(s));
        if let Some(&r) = self.scale_cache.get(&key) {
            return r;
        }
        let (level, arity) = self.shape(e);
        let kids = self.kids(e.node);
        let mut out = [Edge::ZERO; 4];
        for i in 0..arity {
            out[i] = self.scale_terminals(kids[i], s);
        }
        let r = self.make_node(level, &out[..arity]);
        self.scale_cache.insert(key, r);
        r
    }

    fn shape(&self, e: Edge) -> (usize, usize) {
        match self.node(e.node) {
            Node::Inner { level, arity, .. } => (*level as usize, *arity as usize),
            Node::Terminal(_) => (self.n, 0),
        }
    }

    /// Pointwise sum of two diagrams of the same shape.
    pub fn add(&mut self, a: Edge, b: Edge) -> Result<Edge, DdError> {
        match (self.arity(a), self.arity(b)) {
            (Some(x), Some(y)) if x != y => Err(DdError::Shape {
                expected: if x == 2 { "vector" } else { "matrix" },
            }),
            _ => Ok(self.add_rec(a, b)),
        }
    }

    pub(crate) fn add_rec(&mut self, a: Edge, b: Edge) -> Edge {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if self.is_terminal(a) {
            debug_assert!(self.is_terminal(b));
            let v = self.edge_value(a) + self.edge_value(b);
            return self.value_edge(v);
        }
        debug_assert_eq!(self.level_of(a), self.level_of(b));
        let ratio = b.weight / a.weight;
        let key = (a.node, b.node, bits(ratio));
        if let Some(&r) = self.add_cache.get(&key) {
            return self.scale(r, a.weight);
        }
        let (level, arity) = self.shape(a);
        let ak = self.kids(a.node);
        let bk = self.kids(b.node);
        let mut out = [Edge::ZERO; 4];
        for i in 0..arity {
            let scaled = self.scale(bk[i], ratio);
            out[i] = self.add_rec(ak[i], scaled);
        }
        let r = self.make_node(level, &out[..arity]);
        self.add_cache.insert(key, r);
        self.scale(r, a.weight)
    }

    /// Matrix-vector product `m · v`.
    pub fn apply(&mut self, m: Edge, v: Edge) -> Result<Edge, DdError> {
        self.expect_matrix(m)?;
        self.expect_vector(v)?;
        Ok(self.mv(m, v))
    }

    fn mv(&mut self, m: Edge, v: Edge) -> Edge {
        if m.is_zero() || v.is_zero() {
            return Edge::ZERO;
        }
        if self.is_terminal(m) {
            let x = self.edge_value(m) * self.edge_value(v);
            return self.value_edge(x);
        }
        let w = m.weight * v.weight;
        let key = (m.node, v.node);
        if let Some(&r) = self.mv_cache.get(&key) {
            return self.scale(r, w);
        }
        let level = self.level_of(m);
        let mk = self.kids(m.node);
        let vk = self.kids(v.node);
        let mut out = [Edge::ZERO; 2];
        for (row, slot) in out.iter_mut().enumerate() {
            let a = self.mv(mk[2 * row], vk[0]);
            let b = self.mv(mk[2 * row + 1], vk[1]);
            *slot = self.add_rec(a, b);
        }
        let r = self.make_node(level, &out);
        self.mv_cache.insert(key, r);
        self.scale(r, w)
    }

    /// Matrix product `a · b` (apply `b` first, then `a`).
    pub fn multiply(&mut self, a: Edge, b: Edge) -> Result<Edge, DdError> {
        self.expect_matrix(a)?;
        self.expect_matrix(b)?;
        Ok(self.mm(a, b))
    }

    fn mm(&mut self, a: Edge, b: Edge) -> Edge {
        if a.is_zero() || b.is_zero() {
            return Edge::ZERO;
        }
        if self.is_terminal(a) {
            let x = self.edge_value(a) * self.edge_value(b);
            return self.value_edge(x);
        }
        let w = a.weight * b.weight;
        let key = (a.node, b.node);
        if let Some(&r) = self.mm_cache.get(&key) {
            return self.scale(r, w);
        }
        let level = self.level_of(a);
        let ak = self.kids(a.node);
        let bk = self.kids(b.node);
        let mut out = [Edge::ZERO; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let (r, c) = (i >> 1, i & 1);
            let x = self.mm(ak[2 * r], bk[c]);
            let y = self.mm(ak[2 * r + 1], bk[2 + c]);
            *slot = self.add_rec(x, y);
        }
        let r = self.make_node(level, &out);
        self.mm_cache.insert(key, r);
        self.scale(r, w)
    }
}
