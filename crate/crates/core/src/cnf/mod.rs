//! Weighted CNF formulas: data model, DIMACS I/O, and a brute-force count.

mod dimacs;
pub(crate) mod synth;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Not;

use thiserror::Error;

pub use dimacs::{export_weighted, parse_dimacs};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("literal {lit} exceeds the {num_vars} declared variables")]
    UndeclaredVariable { lit: i64, num_vars: u32 },
    #[error("missing terminating 0 after the last clause")]
    MissingTerminator,
    #[error("{num_vars} variables exceeds the brute-force limit of {limit}")]
    TooManyVariables { num_vars: u32, limit: u32 },
}

/// A DIMACS-style literal: variable id ≥ 1, sign encodes polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    pub fn new(var: u32, negated: bool) -> Self {
        assert!(
            var >= 1 && var <= i32::MAX as u32,
            "variable ids start at 1"
        );
        let v = var as i32;
        Lit(if negated { -v } else { v })
    }

    pub fn pos(var: u32) -> Self {
        Lit::new(var, false)
    }

    pub fn neg(var: u32) -> Self {
        Lit::new(var, true)
    }

    /// `None` for 0, the DIMACS clause terminator.
    pub fn from_dimacs(x: i32) -> Option<Self> {
        (x != 0 && x != i32::MIN).then_some(Lit(x))
    }

    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_negated(self) -> bool {
        self.0 < 0
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    /// Whether this literal is true under `value` for its variable.
    #[inline]
    pub fn holds(self, value: bool) -> bool {
        value != self.is_negated()
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A CNF over variables `1..=num_vars` with optional per-literal weights.
///
/// A variable without an entry in the weight map is unbiased (both literals
/// weigh 1). A biased variable always has both polarity weights recorded.
/// Clauses keep insertion order.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeightedCnf {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    weights: BTreeMap<u32, (f64, f64)>,
}

impl WeightedCnf {
    pub fn new(num_vars: u32) -> Self {
        WeightedCnf {
            num_vars,
            ..Default::default()
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Declare a fresh variable and return its id.
    pub fn new_var(&mut self) -> u32 {
        self.num_vars += 1;
        self.num_vars
    }

    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> Result<(), CnfError> {
        let clause: Vec<Lit> = lits.into_iter().collect();
        if let Some(bad) = clause.iter().find(|l| l.var() > self.num_vars) {
            return Err(CnfError::UndeclaredVariable {
                lit: bad.to_dimacs() as i64,
                num_vars: self.num_vars,
            });
        }
        self.clauses.push(clause);
        Ok(())
    }

    pub(crate) fn push_clause_unchecked(&mut self, clause: Vec<Lit>) {
        debug_assert!(clause.iter().all(|l| l.var() <= self.num_vars));
        self.clauses.push(clause);
    }

    /// Record `W(v) = positive`, `W(¬v) = negative`. Setting both to 1 makes
    /// the variable unbiased again.
    pub fn set_weight(&mut self, var: u32, positive: f64, negative: f64) {
        assert!(
            var >= 1 && var <= self.num_vars,
            "weight on undeclared variable {var}"
        );
        if positive == 1.0 && negative == 1.0 {
            self.weights.remove(&var);
        } else {
            self.weights.insert(var, (positive, negative));
        }
    }

    pub fn weight(&self, lit: Lit) -> f64 {
        match self.weights.get(&lit.var()) {
            Some(&(p, n)) => {
                if lit.is_negated() {
                    n
                } else {
                    p
                }
            }
            None => 1.0,
        }
    }

    /// `(W(v), W(¬v))`.
    pub fn var_weights(&self, var: u32) -> (f64, f64) {
        self.weights.get(&var).copied().unwrap_or((1.0, 1.0))
    }

    pub fn is_biased(&self, var: u32) -> bool {
        self.weights.contains_key(&var)
    }

    /// Biased variables in increasing id order.
    pub fn biased_vars(&self) -> impl Iterator<Item = (u32, f64, f64)> + '_ {
        self.weights.iter().map(|(&v, &(p, n))| (v, p, n))
    }

    /// The same clauses with every variable unbiased.
    pub fn unweighted(&self) -> WeightedCnf {
        WeightedCnf {
            num_vars: self.num_vars,
            clauses: self.clauses.clone(),
            weights: BTreeMap::new(),
        }
    }

    /// Conjoin unit clauses.
    pub fn with_units(
        &self,
        units: impl IntoIterator<Item = Lit>,
    ) -> Result<WeightedCnf, CnfError> {
        let mut f = self.clone();
        for u in units {
            f.add_clause([u])?;
        }
        Ok(f)
    }
}

/// Largest variable count [`brute_force_wmc`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u32 = 26;

/// Σ over satisfying assignments of Π over all declared variables of the
/// literal weight, by plain enumeration of `2^num_vars` assignments.
pub fn brute_force_wmc(f: &WeightedCnf) -> Result<f64, CnfError> {
    if f.num_vars > BRUTE_FORCE_LIMIT {
        return Err(CnfError::TooManyVariables {
            num_vars: f.num_vars,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let n = f.num_vars as usize;
    let weights: Vec<(f64, f64)> = (1..=f.num_vars).map(|v| f.var_weights(v)).collect();
    let mut total = 0.0;
    for bits in 0u64..(1u64 << n) {
        let value = |var: u32| (bits >> (var - 1)) & 1 == 1;
        let sat = f
            .clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(value(l.var()))));
        if sat {
            total += weights
                .iter()
                .enumerate()
                .map(|(i, &(p, q))| if (bits >> i) & 1 == 1 { p } else { q })
                .product::<f64>();
        }
    }
    Ok(total)
}

/// Every satisfying assignment, as `value[var]` vectors (index 0 unused), in
/// increasing binary order of `(v_n … v_1)`.
pub fn brute_force_models(f: &WeightedCnf) -> Result<Vec<Vec<bool>>, CnfError> {
    if f.num_vars > BRUTE_FORCE_LIMIT {
        return Err(CnfError::TooManyVariables {
            num_vars: f.num_vars,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let n = f.num_vars as usize;
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let value: Vec<bool> = (0..=n)
            .map(|v| v > 0 && (bits >> (v - 1)) & 1 == 1)
            .collect();
        if f.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(value[l.var() as usize])))
        {
            out.push(value);
        }
    }
    Ok(out)
}
