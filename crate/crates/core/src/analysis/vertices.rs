use serde::Serialize;

use crate::error::{Error, Result};
use crate::lp::{dot, Constraint, LinearProgram, Relation, Sense, Status};

/// Largest program the oracle accepts.
pub const MAX_VARS: usize = 4;
/// Feasibility and dedup tolerance, relative.
pub const VERTEX_TOL: f64 = 1e-6;
const SINGULAR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vertex {
    pub point: Vec<f64>,
    pub objective: f64,
    /// Constraint labels (and `lower_bound:<name>` entries) tight at the point.
    pub binding: Vec<String>,
}

/// Outcome of brute-force solving.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub status: Status,
    pub objective: Option<f64>,
    pub point: Option<Vec<f64>>,
    pub vertex_count: usize,
}

struct Hyperplane<'a> {
    coefficients: Vec<f64>,
    rhs: f64,
    label: std::borrow::Cow<'a, str>,
}

fn hyperplanes(lp: &LinearProgram) -> Vec<Hyperplane<'_>> {
    let n = lp.var_count();
    let rows = lp.constraints.iter().map(|c| Hyperplane {
        coefficients: c.coefficients.clone(),
        rhs: c.rhs,
        label: c.label.as_str().into(),
    });
    let bounds = (0..n).map(|j| {
        let mut a = vec![0.0; n];
        a[j] = 1.0;
        Hyperplane {
            coefficients: a,
            rhs: lp.lower_bounds[j],
            label: format!("lower_bound:{}", lp.names[j]).into(),
        }
    });
    rows.chain(bounds).collect()
}

/// Solves the square system by Gaussian elimination with partial pivoting on
/// max-normalized rows. `None` when a pivot falls below the singular threshold.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for i in 0..n {
        let m = a[i].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m == 0.0 {
            return None;
        }
        a[i].iter_mut().for_each(|v| *v /= m);
        b[i] /= m;
    }
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < SINGULAR {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= f * y;
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Calls `f` with every `k`-subset of `0..n`, in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn row_tight(c: &Constraint, x: &[f64]) -> bool {
    (c.activity(x) - c.rhs).abs() <= VERTEX_TOL * c.scale_at(x)
}

fn feasible(lp: &LinearProgram, x: &[f64]) -> bool {
    lp.constraints
        .iter()
        .all(|c| c.violation(x) <= VERTEX_TOL * c.scale_at(x))
        && x.iter()
            .zip(&lp.lower_bounds)
            .all(|(v, l)| *v >= l - VERTEX_TOL * l.abs().max(1.0))
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= VERTEX_TOL * scale)
}

fn check_size(lp: &LinearProgram) -> Result<()> {
    lp.validate()?;
    if lp.var_count() > MAX_VARS {
        return Err(Error::UnsupportedSize(format!(
            "vertex enumeration handles at most {MAX_VARS} variables, program has {}",
            lp.var_count()
        )));
    }
    Ok(())
}

/// Every vertex of the feasible region, in discovery order.
///
/// Each `n`-subset of the hyperplanes (constraint rows plus the lower bounds
/// `x_j = l_j`) is solved as a square system; singular subsets are skipped.
pub fn enumerate_vertices(lp: &LinearProgram) -> Result<Vec<Vertex>> {
    check_size(lp)?;
    let n = lp.var_count();
    let planes = hyperplanes(lp);
    let mut out: Vec<Vertex> = Vec::new();
    for_each_subset(planes.len(), n, |subset| {
        let a = subset.iter().map(|&i| planes[i].coefficients.clone()).collect();
        let b = subset.iter().map(|&i| planes[i].rhs).collect();
        let Some(x) = solve_square(a, b) else { return };
        if !feasible(lp, &x) || out.iter().any(|v| same_point(&v.point, &x)) {
            return;
        }
        let mut binding: Vec<String> = lp
            .constraints
            .iter()
            .filter(|c| row_tight(c, &x))
            .map(|c| c.label.clone())
            .collect();
        binding.extend(
            (0..n)
                .filter(|&j| (x[j] - lp.lower_bounds[j]).abs() <= VERTEX_TOL * lp.lower_bounds[j].abs().max(1.0))
                .map(|j| planes[lp.constraints.len() + j].label.to_string()),
        );
        out.push(Vertex {
            objective: lp.objective_at(&x),
            point: x,
            binding,
        });
    });
    Ok(out)
}

/// Directions of the recession cone, normalized to `sum(d) = 1`.
fn recession_program(lp: &LinearProgram) -> LinearProgram {
    let n = lp.var_count();
    let mut cone = LinearProgram::new(Sense::Minimize, lp.objective.clone()).with_names(lp.names.clone());
    for c in &lp.constraints {
        let mut row = Constraint::new(c.label.clone(), c.coefficients.clone(), c.relation, 0.0);
        row.unit = c.unit;
        row.coefficient_unit = c.coefficient_unit;
        cone.constraints.push(row);
    }
    cone.constraints.push(Constraint::new("normalize", vec![1.0; n], Relation::Eq, 1.0));
    cone
}

fn minimize_sign(lp: &LinearProgram) -> f64 {
    match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    }
}

/// Solves `lp` by enumeration: infeasible when no vertex exists, unbounded
/// when some recession direction improves the objective, else the best vertex.
pub fn oracle_solve(lp: &LinearProgram) -> Result<OracleResult> {
    let vertices = enumerate_vertices(lp)?;
    let sign = minimize_sign(lp);
    let count = vertices.len();
    if vertices.is_empty() {
        return Ok(OracleResult {
            status: Status::Infeasible,
            objective: None,
            point: None,
            vertex_count: 0,
        });
    }
    let cone = recession_program(lp);
    let c_scale = lp.objective.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let improving = enumerate_vertices(&cone)?
        .iter()
        .any(|d| sign * dot(&lp.objective, &d.point) < -1e-9 * c_scale);
    if improving {
        return Ok(OracleResult {
            status: Status::Unbounded,
            objective: None,
            point: None,
            vertex_count: count,
        });
    }
    let best = vertices
        .into_iter()
        .min_by(|a, b| (sign * a.objective).total_cmp(&(sign * b.objective)))
        .expect("nonempty");
    Ok(OracleResult {
        status: Status::Optimal,
        objective: Some(best.objective),
        point: Some(best.point),
        vertex_count: count,
    })
}

/// True when `x` coincides with one of `vertices`.
pub fn is_vertex(vertices: &[Vertex], x: &[f64]) -> bool {
    vertices.iter().any(|v| same_point(&v.point, x))
}
