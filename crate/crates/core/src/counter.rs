//! Exact weighted model counting by DPLL search.
//!
//! Each call to [`count_weighted`] runs unit propagation to a fixpoint,
//! prunes conflicting branches, closes fully satisfied branches with the
//! factor `Π (W(v) + W(¬v))` over the still-unassigned variables, and
//! otherwise splits on a variable that occurs in an unsatisfied clause.
//! Pure-literal elimination is deliberately absent: fixing a pure literal
//! would drop the weight of its opposite polarity.

use crate::cnf::{Lit, WeightedCnf};
use crate::Execution;

/// Which variable the search splits on among those occurring in an
/// unsatisfied clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BranchOrder {
    #[default]
    Lowest,
    Highest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub order: BranchOrder,
    pub exec: Execution,
    /// Search depth up to which the two branches may run concurrently.
    pub parallel_depth: u32,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            order: BranchOrder::Lowest,
            exec: Execution::default(),
            parallel_depth: 8,
        }
    }
}

/// Weighted model count of `f` over all its declared variables.
pub fn count_weighted(f: &WeightedCnf) -> f64 {
    count_weighted_with(f, &CountOptions::default())
}

pub fn count_weighted_with(f: &WeightedCnf, opts: &CountOptions) -> f64 {
    let problem = Problem::new(f);
    if problem.clauses.iter().any(|c| c.is_empty()) {
        return 0.0;
    }
    let mut state = State::new(&problem);
    for (ci, c) in problem.clauses.iter().enumerate() {
        if c.len() == 1 {
            state.pending.push(ci as u32);
        }
    }
    if !state.propagate(&problem) {
        return 0.0;
    }
    let weight = problem.trail_weight(&state.trail);
    let search = Search {
        problem: &problem,
        opts,
    };
    search.count(&mut state, weight, 0)
}

/// Unweighted model count; exact while below 2^53.
pub fn model_count(f: &WeightedCnf) -> f64 {
    count_weighted(&f.unweighted())
}

#[inline]
fn code(l: Lit) -> usize {
    2 * l.var() as usize + l.is_negated() as usize
}

#[inline]
fn lit_of(code: usize) -> Lit {
    Lit::new((code / 2) as u32, code % 2 == 1)
}

struct Problem {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    /// Clause ids per literal code.
    occurs: Vec<Vec<u32>>,
    /// `(W(v), W(¬v))`, indexed by variable.
    weights: Vec<(f64, f64)>,
}

impl Problem {
    fn new(f: &WeightedCnf) -> Self {
        let num_vars = f.num_vars() as usize;
        let mut clauses = Vec::with_capacity(f.num_clauses());
        for c in f.clauses() {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            let tautology = c.windows(2).any(|w| w[0].var() == w[1].var());
            if !tautology {
                clauses.push(c);
            }
        }
        let mut occurs = vec![Vec::new(); 2 * num_vars + 2];
        for (ci, c) in clauses.iter().enumerate() {
            for &l in c {
                occurs[code(l)].push(ci as u32);
            }
        }
        let weights = (0..=num_vars as u32)
            .map(|v| if v == 0 { (1.0, 1.0) } else { f.var_weights(v) })
            .collect();
        Problem {
            num_vars,
            clauses,
            occurs,
            weights,
        }
    }

    fn weight(&self, l: Lit) -> f64 {
        let (p, n) = self.weights[l.var() as usize];
        if l.is_negated() {
            n
        } else {
            p
        }
    }

    fn trail_weight(&self, trail: &[u32]) -> f64 {
        trail
            .iter()
            .map(|&c| self.weight(lit_of(c as usize)))
            .product()
    }
}

/// Partial assignment plus per-clause counters, undone along the trail.
#[derive(Clone)]
struct State {
    /// 0 unassigned, 1 true, -1 false; indexed by variable.
    value: Vec<i8>,
    n_true: Vec<u32>,
    n_false: Vec<u32>,
    /// Clauses with no true literal.
    open: usize,
    /// Literal codes in assignment order.
    trail: Vec<u32>,
    /// Clauses that may have become unit.
    pending: Vec<u32>,
}

impl State {
    fn new(p: &Problem) -> Self {
        State {
            value: vec![0; p.num_vars + 1],
            n_true: vec![0; p.clauses.len()],
            n_false: vec![0; p.clauses.len()],
            open: p.clauses.len(),
            trail: Vec::new(),
            pending: Vec::new(),
        }
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var() as usize];
        if l.is_negated() {
            -v
        } else {
            v
        }
    }

    /// Make `l` true. Returns false when some clause became all-false.
    fn assign(&mut self, p: &Problem, l: Lit) -> bool {
        debug_assert_eq!(self.value[l.var() as usize], 0);
        self.value[l.var() as usize] = if l.is_negated() { -1 } else { 1 };
        self.trail.push(code(l) as u32);
        for &ci in &p.occurs[code(l)] {
            let ci = ci as usize;
            self.n_true[ci] += 1;
            if self.n_true[ci] == 1 {
                self.open -= 1;
            }
        }
        let mut ok = true;
        for &ci in &p.occurs[code(!l)] {
            let c = ci as usize;
            self.n_false[c] += 1;
            if self.n_true[c] == 0 {
                let len = p.clauses[c].len() as u32;
                if self.n_false[c] == len {
                    ok = false;
                } else if self.n_false[c] + 1 == len {
                    self.pending.push(ci);
                }
            }
        }
        ok
    }

    /// Unit propagation to fixpoint over the pending clauses.
    fn propagate(&mut self, p: &Problem) -> bool {
        while let Some(ci) = self.pending.pop() {
            let c = ci as usize;
            if self.n_true[c] > 0 {
                continue;
            }
            match p.clauses[c].iter().find(|&&l| self.lit_value(l) == 0) {
                None => {
                    self.pending.clear();
                    return false;
                }
                Some(&l) => {
                    if !self.assign(p, l) {
                        self.pending.clear();
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, p: &Problem, mark: usize) {
        while self.trail.len() > mark {
            let l = lit_of(self.trail.pop().expect("trail entry") as usize);
            self.value[l.var() as usize] = 0;
            for &ci in &p.occurs[code(l)] {
                let ci = ci as usize;
                self.n_true[ci] -= 1;
                if self.n_true[ci] == 0 {
                    self.open += 1;
                }
            }
            for &ci in &p.occurs[code(!l)] {
                self.n_false[ci as usize] -= 1;
            }
        }
    }

    fn in_open_clause(&self, p: &Problem, var: usize) -> bool {
        [2 * var, 2 * var + 1]
            .iter()
            .any(|&c| p.occurs[c].iter().any(|&ci| self.n_true[ci as usize] == 0))
    }

    fn branch_var(&self, p: &Problem, order: BranchOrder) -> usize {
        let eligible = |v: &usize| self.value[*v] == 0 && self.in_open_clause(p, *v);
        let found = match order {
            BranchOrder::Lowest => (1..=p.num_vars).find(eligible),
            BranchOrder::Highest => (1..=p.num_vars).rev().find(eligible),
        };
        found.expect("an open clause has an unassigned literal")
    }

    fn closure_factor(&self, p: &Problem) -> f64 {
        (1..=p.num_vars)
            .filter(|&v| self.value[v] == 0)
            .map(|v| p.weights[v].0 + p.weights[v].1)
            .product()
    }
}

struct Search<'a> {
    problem: &'a Problem,
    opts: &'a CountOptions,
}

impl Search<'_> {
    /// Count below a propagated, conflict-free state whose assigned
    /// literals weigh `weight` in total.
    fn count(&self, state: &mut State, weight: f64, depth: u32) -> f64 {
        let p = self.problem;
        if state.open == 0 {
            debug_assert!({
                let direct = p.trail_weight(&state.trail);
                (direct - weight).abs() <= 1e-9 * direct.abs().max(1.0)
            });
            return weight * state.closure_factor(p);
        }
        let v = state.branch_var(p, self.opts.order) as u32;
        let (pos, neg) = (Lit::pos(v), Lit::neg(v));
        if depth < self.opts.parallel_depth && self.opts.exec.is_parallel() {
            let mut other = state.clone();
            let (a, b) = self.opts.exec.join(
                || self.branch(state, pos, weight, depth),
                || self.branch(&mut other, neg, weight, depth),
            );
            a + b
        } else {
            self.branch(state, pos, weight, depth) + self.branch(state, neg, weight, depth)
        }
    }

    fn branch(&self, state: &mut State, l: Lit, weight: f64, depth: u32) -> f64 {
        let p = self.problem;
        let mark = state.trail.len();
        let ok = state.assign(p, l) && state.propagate(p);
        let result = if ok {
            let w = weight * p.trail_weight(&state.trail[mark..]);
            self.count(state, w, depth + 1)
        } else {
            0.0
        };
        state.undo(p, mark);
        result
    }
}
