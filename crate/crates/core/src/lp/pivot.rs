use super::SolverOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Most negative reduced cost enters; smallest ratio leaves, lowest row on ties.
    #[default]
    Dantzig,
    /// Lowest-index improving column enters; lowest-index basic variable
    /// leaves among ratio ties.
    Bland,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotChoice {
    /// No reduced cost is negative.
    Optimal,
    Pivot { row: usize, col: usize },
    /// The entering column has no positive entry.
    Unbounded { col: usize },
}

/// Dense simplex tableau in canonical form with respect to `basis`.
#[derive(Debug, Clone)]
pub struct Tableau {
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    reduced: Vec<f64>,
    /// Negated objective value of the current basic solution.
    neg_objective: f64,
    basis: Vec<usize>,
    barred: Vec<bool>,
    stalled: usize,
}

impl Tableau {
    /// `rows` must already contain an identity submatrix on the `basis`
    /// columns; `width` is the column count (needed when there are no rows).
    pub fn new(rows: Vec<Vec<f64>>, rhs: Vec<f64>, basis: Vec<usize>, width: usize) -> Self {
        Self {
            rows,
            rhs,
            reduced: vec![0.0; width],
            neg_objective: 0.0,
            basis,
            barred: vec![false; width],
            stalled: 0,
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.reduced.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.rows[row][col]
    }

    pub fn rhs(&self, row: usize) -> f64 {
        self.rhs[row]
    }

    pub fn reduced_cost(&self, col: usize) -> f64 {
        self.reduced[col]
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn objective(&self) -> f64 {
        -self.neg_objective
    }

    /// Number of consecutive pivots that did not lower the objective.
    pub fn stalled_iterations(&self) -> usize {
        self.stalled
    }

    pub fn is_barred(&self, col: usize) -> bool {
        self.barred[col]
    }

    /// Forbids `col` from entering the basis.
    pub fn bar(&mut self, col: usize) {
        self.barred[col] = true;
    }

    /// Installs a new cost vector and prices out the current basis.
    pub fn set_costs(&mut self, cost: &[f64]) {
        self.reduced.copy_from_slice(cost);
        self.neg_objective = 0.0;
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (r, a) in self.reduced.iter_mut().zip(&self.rows[i]) {
                    *r -= cb * a;
                }
                self.neg_objective -= cb * self.rhs[i];
            }
        }
        self.stalled = 0;
    }

    pub fn pivot(&mut self, row: usize, col: usize) {
        let before = self.objective();
        let p = self.rows[row][col];
        self.rows[row].iter_mut().for_each(|v| *v /= p);
        self.rhs[row] /= p;
        self.rows[row][col] = 1.0;
        let pivot_row = std::mem::take(&mut self.rows[row]);
        let pivot_rhs = self.rhs[row];
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, a) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * a;
                }
                r[col] = 0.0;
                self.rhs[i] -= f * pivot_rhs;
                if self.rhs[i] < 0.0 && self.rhs[i] > -1e-11 {
                    self.rhs[i] = 0.0;
                }
            }
        }
        let f = self.reduced[col];
        if f != 0.0 {
            for (v, a) in self.reduced.iter_mut().zip(&pivot_row) {
                *v -= f * a;
            }
            self.reduced[col] = 0.0;
            self.neg_objective -= f * pivot_rhs;
        }
        self.rows[row] = pivot_row;
        self.basis[row] = col;

        let after = self.objective();
        if after < before - 1e-12 * before.abs().max(1.0) {
            self.stalled = 0;
        } else {
            self.stalled += 1;
        }
    }

    /// Values of every column at the current basic solution.
    pub fn primal(&self) -> Vec<f64> {
        let mut z = vec![0.0; self.column_count()];
        for (i, &b) in self.basis.iter().enumerate() {
            z[b] = self.rhs[i];
        }
        z
    }
}

/// Chooses the next pivot. Bland's rule is used when requested outright, or
/// when anti-cycling is enabled and the tableau has stalled for the configured
/// number of iterations.
pub fn pivot_rule(tableau: &Tableau, opts: &SolverOptions) -> PivotChoice {
    let limit = opts
        .stall_limit
        .unwrap_or(2 * (tableau.row_count() + tableau.column_count()));
    let bland = opts.rule == PivotRule::Bland || (opts.anti_cycling && tableau.stalled >= limit);

    let candidates = (0..tableau.column_count())
        .filter(|&j| !tableau.barred[j] && tableau.reduced[j] < -opts.opt_tol);
    let entering = if bland {
        candidates.min()
    } else {
        // first index wins among equal reduced costs
        candidates.fold(None, |best: Option<usize>, j| match best {
            Some(b) if tableau.reduced[b] <= tableau.reduced[j] => Some(b),
            _ => Some(j),
        })
    };
    let Some(col) = entering else {
        return PivotChoice::Optimal;
    };

    let mut leave: Option<(usize, f64)> = None;
    for i in 0..tableau.row_count() {
        let a = tableau.rows[i][col];
        if a <= opts.pivot_tol {
            continue;
        }
        let ratio = tableau.rhs[i].max(0.0) / a;
        leave = match leave {
            None => Some((i, ratio)),
            Some((r, best)) => {
                let tie = 1e-12 * best.abs().max(1.0);
                let tied_lower_basic = ratio <= best + tie && bland && tableau.basis[i] < tableau.basis[r];
                if ratio < best - tie || tied_lower_basic {
                    Some((i, ratio))
                } else {
                    Some((r, best))
                }
            }
        };
    }
    match leave {
        Some((row, _)) => PivotChoice::Pivot { row, col },
        None => PivotChoice::Unbounded { col },
    }
}
