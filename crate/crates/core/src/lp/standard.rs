use super::{LinearProgram, LpError, Relation, Sense};

/// Role of a column in the equality-form tableau. The payload is the original
/// variable index for [`ColumnKind::Original`] and the row index otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Original(usize),
    Slack(usize),
    Surplus(usize),
    Artificial(usize),
}

/// Equality-form problem `min cost·z  s.t.  rows·z = rhs, z >= 0`.
///
/// Built from a [`LinearProgram`] by shifting variables onto their lower
/// bounds, flipping rows so that `rhs >= 0`, dividing each row by its largest
/// coefficient, and appending slack, surplus and artificial columns. Original
/// columns come first, then one slack or surplus per inequality row in row
/// order, then the artificials.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardForm {
    pub rows: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub cost: Vec<f64>,
    pub columns: Vec<ColumnKind>,
    /// Starting basis: one column per row (slack or artificial).
    pub basis: Vec<usize>,
    /// Divisor applied to each row during equilibration.
    pub row_scale: Vec<f64>,
    /// `-1.0` where the row was negated to make its right-hand side nonnegative.
    pub row_sign: Vec<f64>,
    /// Lower bounds subtracted from the original variables.
    pub shift: Vec<f64>,
    /// Divisor applied to the (sign-adjusted) objective.
    pub cost_scale: f64,
}

impl StandardForm {
    pub fn original_count(&self) -> usize {
        self.shift.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    fn count(&self, pred: impl Fn(&ColumnKind) -> bool) -> usize {
        self.columns.iter().filter(|k| pred(k)).count()
    }

    pub fn slack_count(&self) -> usize {
        self.count(|k| matches!(k, ColumnKind::Slack(_)))
    }

    pub fn surplus_count(&self) -> usize {
        self.count(|k| matches!(k, ColumnKind::Surplus(_)))
    }

    pub fn artificial_count(&self) -> usize {
        self.count(|k| matches!(k, ColumnKind::Artificial(_)))
    }

    pub fn is_artificial(&self, column: usize) -> bool {
        matches!(self.columns[column], ColumnKind::Artificial(_))
    }

    /// Maps values of the shifted original columns back to the caller's variables.
    pub fn unshift(&self, shifted: &[f64]) -> Vec<f64> {
        shifted
            .iter()
            .zip(&self.shift)
            .map(|(z, l)| z.max(0.0) + l)
            .collect()
    }
}

pub fn standardize(lp: &LinearProgram) -> Result<StandardForm, LpError> {
    standardize_with(lp, true)
}

/// Like [`standardize`], optionally skipping row equilibration
/// (`row_scale` is then all ones).
pub fn standardize_with(lp: &LinearProgram, equilibrate: bool) -> Result<StandardForm, LpError> {
    lp.validate()?;
    let n = lp.var_count();
    let m = lp.constraints.len();
    let shift = lp.lower_bounds.clone();

    let mut dense = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut relations = Vec::with_capacity(m);
    let mut row_scale = Vec::with_capacity(m);
    let mut row_sign = Vec::with_capacity(m);
    for c in &lp.constraints {
        let mut b = c.rhs - c.activity(&shift);
        let mut a = c.coefficients.clone();
        let mut relation = c.relation;
        let sign = if b < 0.0 { -1.0 } else { 1.0 };
        if sign < 0.0 {
            b = -b;
            a.iter_mut().for_each(|v| *v = -*v);
            relation = match relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
        let scale = if equilibrate {
            a.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
        } else {
            1.0
        };
        a.iter_mut().for_each(|v| *v /= scale);
        dense.push(a);
        rhs.push(b / scale);
        relations.push(relation);
        row_scale.push(scale);
        row_sign.push(sign);
    }

    let mut columns: Vec<ColumnKind> = (0..n).map(ColumnKind::Original).collect();
    for (i, rel) in relations.iter().enumerate() {
        match rel {
            Relation::Le => columns.push(ColumnKind::Slack(i)),
            Relation::Ge => columns.push(ColumnKind::Surplus(i)),
            Relation::Eq => {}
        }
    }
    for (i, rel) in relations.iter().enumerate() {
        if matches!(rel, Relation::Ge | Relation::Eq) {
            columns.push(ColumnKind::Artificial(i));
        }
    }

    let width = columns.len();
    let mut rows = vec![vec![0.0; width]; m];
    let mut basis = vec![usize::MAX; m];
    for (i, row) in rows.iter_mut().enumerate() {
        row[..n].copy_from_slice(&dense[i]);
    }
    for (j, kind) in columns.iter().enumerate() {
        match *kind {
            ColumnKind::Original(_) => {}
            ColumnKind::Slack(i) => {
                rows[i][j] = 1.0;
                basis[i] = j;
            }
            ColumnKind::Surplus(i) => rows[i][j] = -1.0,
            ColumnKind::Artificial(i) => {
                rows[i][j] = 1.0;
                basis[i] = j;
            }
        }
    }

    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let cost_scale = lp
        .objective
        .iter()
        .fold(0.0f64, |acc, c| acc.max(c.abs()))
        .max(f64::MIN_POSITIVE);
    let mut cost = vec![0.0; width];
    for (j, c) in lp.objective.iter().enumerate() {
        cost[j] = sign * c / cost_scale;
    }

    Ok(StandardForm {
        rows,
        rhs,
        cost,
        columns,
        basis,
        row_scale,
        row_sign,
        shift,
        cost_scale,
    })
}
