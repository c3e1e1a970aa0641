//! Two-phase simplex over exact rationals.
//!
//! Problems are converted to standard form (`min c'x`, `Ax = b`, `b >= 0`,
//! `x >= 0`): free variables become a difference of two nonnegative columns,
//! rows with a negative right-hand side are negated, inequalities get slack or
//! surplus columns and every `>=`/`=` row gets an artificial column. Phase one
//! minimises the artificial sum; phase two the real objective. Both phases
//! pivot with Bland's rule, so the method terminates and is deterministic.
//!
//! Before returning an optimum the solver re-checks the primal point against
//! every original constraint and solves `B' y = c_B` for the basis `B` to
//! obtain a dual certificate, which must be dual feasible and match the
//! primal value exactly.

use num_traits::{One, Signed, Zero};

use super::matrix::{dot, RationalMatrix};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub rows: Vec<Vec<Rational>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<Rational>,
    pub bounds: Vec<VarBound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// One multiplier per constraint row with `b'y = value`. For a minimum,
    /// `A_j'y <= c_j` on nonnegative and `= c_j` on free variables; for a
    /// maximum the inequality is reversed.
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LpProblem {
    /// A problem over `objective.len()` nonnegative variables with no rows.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            sense,
            objective,
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            bounds: vec![VarBound::NonNegative; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constraint(mut self, row: Vec<Rational>, rel: Relation, rhs: Rational) -> Self {
        self.push(row, rel, rhs);
        self
    }

    pub fn push(&mut self, row: Vec<Rational>, rel: Relation, rhs: Rational) {
        self.rows.push(row);
        self.relations.push(rel);
        self.rhs.push(rhs);
    }

    pub fn free(mut self, var: usize) -> Self {
        self.bounds[var] = VarBound::Free;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::invalid("bounds length differs from variable count"));
        }
        if self.relations.len() != self.rows.len() || self.rhs.len() != self.rows.len() {
            return Err(Error::invalid("rows, relations and rhs lengths differ"));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "row {i} has {} coefficients, expected {n}",
                self.rows[i].len()
            )));
        }
        Ok(())
    }

    /// Checks `x` against every row and bound.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = x
            .iter()
            .zip(&self.bounds)
            .all(|(v, b)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && self
                .rows
                .iter()
                .zip(&self.relations)
                .zip(&self.rhs)
                .all(|((row, rel), b)| {
                    let lhs = dot(row, x);
                    match rel {
                        Relation::Le => lhs <= *b,
                        Relation::Eq => lhs == *b,
                        Relation::Ge => lhs >= *b,
                    }
                })
    }

    /// Checks that `y` is a feasible dual point whose value equals `value`.
    pub fn is_dual_certificate(&self, y: &[Rational], value: &Rational) -> bool {
        if y.len() != self.rows.len() {
            return false;
        }
        let min = self.sense == Sense::Minimize;
        // Minimisation: Ge rows carry y >= 0, Le rows y <= 0; reversed for
        // maximisation.
        let signs_ok = y
            .iter()
            .zip(&self.relations)
            .all(|(yi, rel)| match (rel, min) {
                (Relation::Eq, _) => true,
                (Relation::Ge, true) | (Relation::Le, false) => !yi.is_negative(),
                (Relation::Le, true) | (Relation::Ge, false) => !yi.is_positive(),
            });
        let cols_ok = (0..self.num_vars()).all(|j| {
            let aty: Rational = self.rows.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum();
            let c = &self.objective[j];
            match (self.bounds[j], min) {
                (VarBound::Free, _) => aty == *c,
                (VarBound::NonNegative, true) => aty <= *c,
                (VarBound::NonNegative, false) => aty >= *c,
            }
        });
        signs_ok && cols_ok && dot(&self.rhs, y) == *value
    }
}

/// Solves `p` exactly.
pub fn solve_lp(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let std = StandardForm::build(p);
    let mut tab = Tableau::new(&std);

    // Phase one: minimise the sum of artificials.
    let phase1_cost: Vec<Rational> = (0..std.ncols)
        .map(|j| {
            if std.is_artificial(j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    tab.set_objective(&phase1_cost);
    match tab.run(|_| true) {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => return Err(Error::internal("phase one reported unbounded")),
    }
    if tab.objective_value().is_positive() {
        return Ok(LpOutcome::Infeasible);
    }
    tab.expel_artificials(&std);

    // Phase two on the real costs; artificial columns may never re-enter.
    tab.set_objective(&std.cost);
    if let PhaseEnd::Unbounded = tab.run(|j| !std.is_artificial(j)) {
        return Ok(LpOutcome::Unbounded);
    }

    let x_std = tab.primal();
    let x: Vec<Rational> = std
        .var_cols
        .iter()
        .map(|&(pos, neg)| match neg {
            Some(n) => &x_std[pos] - &x_std[n],
            None => x_std[pos].clone(),
        })
        .collect();
    let value = dot(&p.objective, &x);
    if !p.is_feasible(&x) {
        return Err(Error::internal("simplex optimum violates a constraint"));
    }

    let dual = std.dual_certificate(&tab)?;
    if !p.is_dual_certificate(&dual, &value) {
        return Err(Error::internal(
            "dual certificate does not match the primal optimum",
        ));
    }
    Ok(LpOutcome::Optimal(LpSolution { value, x, dual }))
}

struct StandardForm {
    /// Row-major constraint matrix over all standard columns.
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    cost: Vec<Rational>,
    ncols: usize,
    first_artificial: usize,
    /// Per original variable: positive column, optional negative column.
    var_cols: Vec<(usize, Option<usize>)>,
    /// Per original row: -1 if the row was negated.
    row_sign: Vec<i8>,
    /// Slack or artificial column that starts basic in each row.
    initial_basis: Vec<usize>,
    sense: Sense,
}

impl StandardForm {
    fn build(p: &LpProblem) -> Self {
        let mut var_cols = Vec::with_capacity(p.num_vars());
        let mut next = 0;
        for b in &p.bounds {
            match b {
                VarBound::NonNegative => {
                    var_cols.push((next, None));
                    next += 1;
                }
                VarBound::Free => {
                    var_cols.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let nstruct = next;
        let m = p.rows.len();

        let mut row_sign = Vec::with_capacity(m);
        let mut rels = Vec::with_capacity(m);
        for (rel, b) in p.relations.iter().zip(&p.rhs) {
            if b.is_negative() {
                row_sign.push(-1);
                rels.push(match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                });
            } else {
                row_sign.push(1);
                rels.push(*rel);
            }
        }
        let nslack = rels.iter().filter(|r| **r != Relation::Eq).count();
        let nart = rels.iter().filter(|r| **r != Relation::Le).count();
        let ncols = nstruct + nslack + nart;
        let first_artificial = nstruct + nslack;

        let mut a = vec![vec![Rational::zero(); ncols]; m];
        let mut b = Vec::with_capacity(m);
        let mut initial_basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (nstruct, first_artificial);
        for i in 0..m {
            let s = Rational::from_integer(row_sign[i].into());
            for (j, &(pos, neg)) in var_cols.iter().enumerate() {
                let v = &p.rows[i][j] * &s;
                if let Some(n) = neg {
                    a[i][n] = -v.clone();
                }
                a[i][pos] = v;
            }
            b.push(&p.rhs[i] * &s);
            match rels[i] {
                Relation::Le => {
                    a[i][slack] = Rational::one();
                    initial_basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    a[i][slack] = -Rational::one();
                    slack += 1;
                    a[i][art] = Rational::one();
                    initial_basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    a[i][art] = Rational::one();
                    initial_basis.push(art);
                    art += 1;
                }
            }
        }

        let mut cost = vec![Rational::zero(); ncols];
        for (j, &(pos, neg)) in var_cols.iter().enumerate() {
            let c = match p.sense {
                Sense::Minimize => p.objective[j].clone(),
                Sense::Maximize => -p.objective[j].clone(),
            };
            if let Some(n) = neg {
                cost[n] = -c.clone();
            }
            cost[pos] = c;
        }

        StandardForm {
            a,
            b,
            cost,
            ncols,
            first_artificial,
            var_cols,
            row_sign,
            initial_basis,
            sense: p.sense,
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.first_artificial
    }

    /// Solves `B' y = c_B` on the original standard rows of the final basis
    /// and maps `y` back to the caller's rows and sense.
    fn dual_certificate(&self, tab: &Tableau) -> Result<Vec<Rational>> {
        let m = tab.row_origin.len();
        let mut bt = RationalMatrix::zeros(m, m);
        let mut cb = Vec::with_capacity(m);
        for (k, &col) in tab.basis.iter().enumerate() {
            for (i, &orig) in tab.row_origin.iter().enumerate() {
                bt[(k, i)] = self.a[orig][col].clone();
            }
            cb.push(self.cost[col].clone());
        }
        let y_kept = if m == 0 {
            Vec::new()
        } else {
            bt.solve(&cb)
                .map_err(|_| Error::internal("final simplex basis is singular"))?
        };
        let mut y = vec![Rational::zero(); self.b.len()];
        for (i, &orig) in tab.row_origin.iter().enumerate() {
            let mut v = y_kept[i].clone();
            if self.row_sign[orig] < 0 {
                v = -v;
            }
            if self.sense == Sense::Maximize {
                v = -v;
            }
            y[orig] = v;
        }
        Ok(y)
    }
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Index of the standard-form row each tableau row came from.
    row_origin: Vec<usize>,
    /// Reduced costs and the negated objective value.
    z: Vec<Rational>,
    z_rhs: Rational,
}

impl Tableau {
    fn new(std: &StandardForm) -> Self {
        Tableau {
            t: std.a.clone(),
            rhs: std.b.clone(),
            basis: std.initial_basis.clone(),
            row_origin: (0..std.b.len()).collect(),
            z: vec![Rational::zero(); std.ncols],
            z_rhs: Rational::zero(),
        }
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        self.z = cost.to_vec();
        self.z_rhs = Rational::zero();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = &cost[bj];
            if cb.is_zero() {
                continue;
            }
            for (zj, tij) in self.z.iter_mut().zip(&self.t[i]) {
                if !tij.is_zero() {
                    *zj -= cb * tij;
                }
            }
            self.z_rhs -= cb * &self.rhs[i];
        }
    }

    fn objective_value(&self) -> Rational {
        -self.z_rhs.clone()
    }

    fn run(&mut self, allowed: impl Fn(usize) -> bool) -> PhaseEnd {
        loop {
            // Bland: lowest-index improving column.
            let Some(enter) = (0..self.z.len()).find(|&j| allowed(j) && self.z[j].is_negative())
            else {
                return PhaseEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return PhaseEnd::Unbounded;
            };
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for v in self.t[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[row] *= &inv;
        let prow = self.t[row].clone();
        let prhs = self.rhs[row].clone();
        for i in 0..self.t.len() {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let f = self.t[i][col].clone();
            for (v, p) in self.t[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.z[col].is_zero() {
            let f = self.z[col].clone();
            for (v, p) in self.z.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.z_rhs -= &f * &prhs;
        }
        self.basis[row] = col;
    }

    /// After a zero-cost phase one, pivots remaining artificials out of the
    /// basis, dropping rows that turn out to be redundant.
    fn expel_artificials(&mut self, std: &StandardForm) {
        let mut i = 0;
        while i < self.t.len() {
            if !std.is_artificial(self.basis[i]) {
                i += 1;
                continue;
            }
            match (0..std.first_artificial).find(|&j| !self.t[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    self.t.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    self.row_origin.remove(i);
                }
            }
        }
    }

    fn primal(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.z.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }
}
