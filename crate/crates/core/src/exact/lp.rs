//! Exact two-phase simplex with Bland's anti-cycling rule.
//!
//! The kernel solves `min cᵀx  s.t.  Ax = b, x ≥ 0`. [`Problem`] layers free
//! variables and inequality rows on top of it.

use super::{RVec, Rat};

/// Outcome of a linear program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: RVec, value: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `m` rows of width `ncols + 1`, last entry is the right-hand side.
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.ncols + 1;
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for k in 0..width {
                if !self.rows[r][k].is_zero() {
                    self.rows[r][k] *= &inv;
                }
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in 0..width {
                if prow[k].is_zero() {
                    continue;
                }
                row[k] -= &f * &prow[k];
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` over the current basic feasible solution using
    /// Bland's rule, restricted to columns `< allowed`.
    /// Returns `false` when unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            // reduced cost d_j = c_j - c_B · column_j
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return true;
            };
            let rhs = self.ncols;
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
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
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn value_of(&self, j: usize) -> Rat {
        match self.basis.iter().position(|&b| b == j) {
            Some(i) => self.rows[i][self.ncols].clone(),
            None => Rat::zero(),
        }
    }
}

/// Solves `min cost·x  s.t.  a x = b, x ≥ 0` exactly. `a` is given by rows.
/// `cost = None` asks for feasibility only.
pub fn simplex(a: &[RVec], b: &RVec, cost: Option<&RVec>) -> LpOutcome {
    let m = a.len();
    let n = a
        .first()
        .map_or_else(|| cost.map_or(0, RVec::dim), RVec::dim);
    debug_assert_eq!(b.dim(), m);
    // columns: n structural, m artificial
    let ncols = n + m;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, ai) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut row: Vec<Rat> = ai
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };

    let mut phase1 = vec![Rat::zero(); ncols];
    for c in phase1.iter_mut().skip(n) {
        *c = Rat::one();
    }
    t.optimize(&phase1, ncols);
    let infeasibility: Rat = (0..m)
        .filter(|&i| t.basis[i] >= n)
        .map(|i| t.rows[i][ncols].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let cost_vec: Vec<Rat> = match cost {
        Some(c) => c
            .iter()
            .cloned()
            .chain(std::iter::repeat_n(Rat::zero(), m))
            .collect(),
        None => vec![Rat::zero(); ncols],
    };
    if cost.is_some() && !t.optimize(&cost_vec, n) {
        return LpOutcome::Unbounded;
    }
    let x: RVec = (0..n).map(|j| t.value_of(j)).collect();
    let value = match cost {
        Some(c) => c.dot(&x),
        None => Rat::zero(),
    };
    LpOutcome::Optimal { x, value }
}

/// Row relation in a [`Problem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

type Row = (Vec<(usize, Rat)>, Relation, Rat);

/// A small LP builder supporting free variables and inequality rows.
#[derive(Debug, Clone, Default)]
pub struct Problem {
    free: Vec<bool>,
    rows: Vec<Row>,
    objective: Vec<(usize, Rat)>,
}

impl Problem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` variables; returns the index of the first.
    pub fn add_vars(&mut self, count: usize, free: bool) -> usize {
        let first = self.free.len();
        self.free.extend(std::iter::repeat_n(free, count));
        first
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn constrain(&mut self, terms: Vec<(usize, Rat)>, rel: Relation, rhs: Rat) {
        self.rows.push((terms, rel, rhs));
    }

    pub fn minimize(&mut self, terms: Vec<(usize, Rat)>) {
        self.objective = terms;
    }

    /// Solves the program; the returned point is in the original variables.
    pub fn solve(&self) -> LpOutcome {
        // standard-form column layout
        let mut col_of = Vec::with_capacity(self.free.len());
        let mut ncols = 0;
        for &f in &self.free {
            col_of.push(ncols);
            ncols += if f { 2 } else { 1 };
        }
        let slack_start = ncols;
        ncols += self
            .rows
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Eq)
            .count();

        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut slack = slack_start;
        for (terms, rel, rhs) in &self.rows {
            let mut row = RVec::zeros(ncols);
            for (v, coef) in terms {
                let c = col_of[*v];
                row[c] += coef;
                if self.free[*v] {
                    row[c + 1] -= coef;
                }
            }
            match rel {
                Relation::Le => {
                    row[slack] = Rat::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rat::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let has_obj = !self.objective.is_empty();
        let mut cost = RVec::zeros(ncols);
        for (v, coef) in &self.objective {
            let c = col_of[*v];
            cost[c] += coef;
            if self.free[*v] {
                cost[c + 1] -= coef;
            }
        }
        let outcome = if a.is_empty() {
            // no rows: feasible at the origin, unbounded iff some cost improves
            if has_obj && cost.iter().any(Rat::is_negative) {
                LpOutcome::Unbounded
            } else {
                LpOutcome::Optimal {
                    x: RVec::zeros(ncols),
                    value: Rat::zero(),
                }
            }
        } else {
            simplex(&a, &RVec::new(b), has_obj.then_some(&cost))
        };
        match outcome {
            LpOutcome::Optimal { x, value } => {
                let orig: RVec = self
                    .free
                    .iter()
                    .enumerate()
                    .map(|(v, &f)| {
                        let c = col_of[v];
                        if f {
                            &x[c] - &x[c + 1]
                        } else {
                            x[c].clone()
                        }
                    })
                    .collect();
                LpOutcome::Optimal { x: orig, value }
            }
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn feasibility_only() {
        let a = vec![RVec::from_ints(&[1, 1]), RVec::from_ints(&[1, -1])];
        match simplex(&a, &RVec::from_ints(&[3, 1]), None) {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, RVec::from_ints(&[2, 1])),
            other => panic!("{other:?}"),
        }
        let a = vec![RVec::from_ints(&[1, 1])];
        assert_eq!(
            simplex(&a, &RVec::from_ints(&[-1]), None),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn optimizes_with_free_variables() {
        // min |x| + |y| with x + y >= 1, x - y = 1/2 → x = 3/4, y = 1/4
        let mut p = Problem::new();
        let x = p.add_vars(2, true);
        let t = p.add_vars(2, false);
        p.constrain(vec![(x, r(1)), (x + 1, r(1))], Relation::Ge, r(1));
        p.constrain(vec![(x, r(1)), (x + 1, r(-1))], Relation::Eq, rat(1, 2));
        for k in 0..2 {
            p.constrain(vec![(t + k, r(1)), (x + k, r(-1))], Relation::Ge, r(0));
            p.constrain(vec![(t + k, r(1)), (x + k, r(1))], Relation::Ge, r(0));
        }
        p.minimize(vec![(t, r(1)), (t + 1, r(1))]);
        match p.solve() {
            LpOutcome::Optimal { x: sol, value } => {
                assert_eq!(value, r(1));
                assert_eq!(sol[0], rat(3, 4));
                assert_eq!(sol[1], rat(1, 4));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_unbounded() {
        let mut p = Problem::new();
        let x = p.add_vars(1, true);
        p.constrain(vec![(x, r(1))], Relation::Le, r(5));
        p.minimize(vec![(x, r(1))]);
        assert_eq!(p.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let a = vec![
            RVec::from_ints(&[1, 1, 0]),
            RVec::from_ints(&[2, 2, 0]),
            RVec::from_ints(&[0, 1, 1]),
        ];
        match simplex(
            &a,
            &RVec::from_ints(&[1, 2, 1]),
            Some(&RVec::from_ints(&[1, 0, 0])),
        ) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, r(0));
                assert_eq!(x, RVec::from_ints(&[0, 1, 0]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let a = vec![
            RVec::new(vec![rat(1, 4), r(-8), r(-1), r(9), r(1), r(0), r(0)]),
            RVec::new(vec![rat(1, 2), r(-12), rat(-1, 2), r(3), r(0), r(1), r(0)]),
            RVec::new(vec![r(0), r(0), r(1), r(0), r(0), r(0), r(1)]),
        ];
        let b = RVec::from_ints(&[0, 0, 1]);
        let c = RVec::new(vec![rat(-3, 4), r(20), rat(-1, 2), r(6), r(0), r(0), r(0)]);
        match simplex(&a, &b, Some(&c)) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(-5, 4)),
            other => panic!("{other:?}"),
        }
    }
}
