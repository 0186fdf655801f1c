//! Exact dense linear programming over a generic ordered field.
//!
//! Two-phase primal simplex with Bland's rule (termination guaranteed, no
//! tolerances). Free variables are split into positive and negative parts.
//! Problem sizes here are tiny (tens of variables, single-digit row counts),
//! so a full tableau is the right trade.

use crate::scalar::Coeff;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    NonNeg,
    Free,
}

/// maximize objective . x  subject to  row . x (rel) rhs  and variable kinds.
#[derive(Debug, Clone)]
pub struct Lp<S> {
    pub kinds: Vec<VarKind>,
    pub objective: Vec<S>,
    pub constraints: Vec<(Vec<S>, Rel, S)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<S> {
    Optimal { x: Vec<S>, value: S },
    Infeasible,
    Unbounded,
}

impl<S: Coeff> Lp<S> {
    pub fn new(kinds: Vec<VarKind>, objective: Vec<S>) -> Self {
        assert_eq!(kinds.len(), objective.len());
        Lp { kinds, objective, constraints: Vec::new() }
    }

    pub fn constrain(&mut self, row: Vec<S>, rel: Rel, rhs: S) {
        assert_eq!(row.len(), self.kinds.len());
        self.constraints.push((row, rel, rhs));
    }

    /// Feasibility check: ignores the objective.
    pub fn feasible(&self) -> Option<Vec<S>> {
        let mut probe = self.clone();
        probe.objective = vec![S::zero(); probe.kinds.len()];
        match probe.solve() {
            Outcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }

    pub fn solve(&self) -> Outcome<S> {
        // Column layout of the standard form:
        //   for each original var: one column (NonNeg) or two (Free, x = p - m)
        //   then one slack per Le/Ge row.
        // Artificial columns are appended by the tableau itself.
        let n_orig = self.kinds.len();
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n_orig);
        let mut ncols = 0;
        for kind in &self.kinds {
            match kind {
                VarKind::NonNeg => {
                    col_of.push((ncols, None));
                    ncols += 1;
                }
                VarKind::Free => {
                    col_of.push((ncols, Some(ncols + 1)));
                    ncols += 2;
                }
            }
        }
        let n_struct = ncols;
        let n_slack = self
            .constraints
            .iter()
            .filter(|(_, rel, _)| *rel != Rel::Eq)
            .count();
        ncols += n_slack;

        let m = self.constraints.len();
        let mut a = vec![vec![S::zero(); ncols]; m];
        let mut b = vec![S::zero(); m];
        let mut slack_idx = n_struct;
        let mut slack_col_of_row: Vec<Option<usize>> = vec![None; m];
        for (i, (row, rel, rhs)) in self.constraints.iter().enumerate() {
            for (j, coef) in row.iter().enumerate() {
                let (pc, mc) = col_of[j];
                a[i][pc] = coef.clone();
                if let Some(mc) = mc {
                    a[i][mc] = -coef.clone();
                }
            }
            b[i] = rhs.clone();
            match rel {
                Rel::Le => {
                    a[i][slack_idx] = S::one();
                    slack_col_of_row[i] = Some(slack_idx);
                    slack_idx += 1;
                }
                Rel::Ge => {
                    a[i][slack_idx] = -S::one();
                    slack_col_of_row[i] = Some(slack_idx);
                    slack_idx += 1;
                }
                Rel::Eq => {}
            }
        }
        // Make rhs nonnegative.
        for i in 0..m {
            if b[i] < S::zero() {
                b[i] = -b[i].clone();
                for v in a[i].iter_mut() {
                    *v = -v.clone();
                }
            }
        }

        // Phase 1: basis from slacks where the slack coefficient is +1,
        // artificials elsewhere.
        let mut basis: Vec<usize> = Vec::with_capacity(m);
        let mut art_cols: Vec<usize> = Vec::new();
        for i in 0..m {
            match slack_col_of_row[i] {
                Some(sc) if a[i][sc] == S::one() => basis.push(sc),
                _ => {
                    let c = ncols + art_cols.len();
                    art_cols.push(c);
                    basis.push(c);
                }
            }
        }
        if !art_cols.is_empty() {
            for (i, row) in a.iter_mut().enumerate() {
                for &c in &art_cols {
                    row.push(if basis[i] == c { S::one() } else { S::zero() });
                }
            }
            ncols += art_cols.len();
        }

        if !art_cols.is_empty() {
            // maximize -(sum of artificials)
            let mut obj = vec![S::zero(); ncols];
            for &c in &art_cols {
                obj[c] = -S::one();
            }
            match simplex(&mut a, &mut b, &mut basis, &obj, ncols) {
                SimplexEnd::Optimal(value) => {
                    if value < S::zero() {
                        return Outcome::Infeasible;
                    }
                }
                SimplexEnd::Unbounded => unreachable!("phase-1 objective is bounded"),
            }
            // Drive remaining artificials out of the basis; drop redundant rows.
            let art_set: Vec<bool> = (0..ncols).map(|c| art_cols.contains(&c)).collect();
            let mut drop_rows: Vec<usize> = Vec::new();
            for i in 0..basis.len() {
                if art_set[basis[i]] {
                    if let Some(c) = (0..ncols).find(|&c| !art_set[c] && !a[i][c].is_zero()) {
                        pivot(&mut a, &mut b, &mut basis, i, c);
                    } else {
                        drop_rows.push(i);
                    }
                }
            }
            for &i in drop_rows.iter().rev() {
                a.remove(i);
                b.remove(i);
                basis.remove(i);
            }
            // Remove artificial columns.
            let keep = ncols - art_cols.len();
            for row in a.iter_mut() {
                row.truncate(keep);
            }
            ncols = keep;
        }

        // Phase 2.
        let mut obj = vec![S::zero(); ncols];
        for (j, c) in self.objective.iter().enumerate() {
            let (pc, mc) = col_of[j];
            obj[pc] = c.clone();
            if let Some(mc) = mc {
                obj[mc] = -c.clone();
            }
        }
        match simplex(&mut a, &mut b, &mut basis, &obj, ncols) {
            SimplexEnd::Unbounded => Outcome::Unbounded,
            SimplexEnd::Optimal(value) => {
                let mut std_x = vec![S::zero(); ncols];
                for (i, &bc) in basis.iter().enumerate() {
                    std_x[bc] = b[i].clone();
                }
                let x: Vec<S> = col_of
                    .iter()
                    .map(|(pc, mc)| match mc {
                        None => std_x[*pc].clone(),
                        Some(mc) => std_x[*pc].clone() - std_x[*mc].clone(),
                    })
                    .collect();
                Outcome::Optimal { x, value }
            }
        }
    }
}

enum SimplexEnd<S> {
    Optimal(S),
    Unbounded,
}

fn pivot<S: Coeff>(
    a: &mut [Vec<S>],
    b: &mut [S],
    basis: &mut [usize],
    row: usize,
    col: usize,
) {
    let p = a[row][col].clone();
    for v in a[row].iter_mut() {
        *v = v.clone() / p.clone();
    }
    b[row] = b[row].clone() / p;
    for i in 0..a.len() {
        if i != row && !a[i][col].is_zero() {
            let f = a[i][col].clone();
            for j in 0..a[i].len() {
                a[i][j] = a[i][j].clone() - f.clone() * a[row][j].clone();
            }
            b[i] = b[i].clone() - f * b[row].clone();
        }
    }
    basis[row] = col;
}

/// Primal simplex on a tableau already in basic feasible form (maximization).
/// Bland's rule on both the entering and leaving choices.
fn simplex<S: Coeff>(
    a: &mut Vec<Vec<S>>,
    b: &mut Vec<S>,
    basis: &mut Vec<usize>,
    obj: &[S],
    ncols: usize,
) -> SimplexEnd<S> {
    loop {
        // Reduced costs: c_j - c_B . B^{-1} A_j. The tableau is kept with the
        // basis columns canonical, so c_B . (column j) gives the correction.
        let mut entering = None;
        for j in 0..ncols {
            if basis.contains(&j) {
                continue;
            }
            let mut red = obj[j].clone();
            for (i, &bc) in basis.iter().enumerate() {
                if !obj[bc].is_zero() && !a[i][j].is_zero() {
                    red = red - obj[bc].clone() * a[i][j].clone();
                }
            }
            if red > S::zero() {
                entering = Some(j);
                break;
            }
        }
        let Some(col) = entering else {
            let mut value = S::zero();
            for (i, &bc) in basis.iter().enumerate() {
                if !obj[bc].is_zero() {
                    value = value + obj[bc].clone() * b[i].clone();
                }
            }
            return SimplexEnd::Optimal(value);
        };
        // Ratio test, ties broken by smallest basis column (Bland).
        let mut leave: Option<(usize, S)> = None;
        for i in 0..a.len() {
            if a[i][col] > S::zero() {
                let ratio = b[i].clone() / a[i][col].clone();
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((row, _)) = leave else {
            return SimplexEnd::Unbounded;
        };
        pivot(a, b, basis, row, col);
    }
}
