//! Ranked extraction over an exhaustive vertex catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::decompose::{decompose_with, ColumnGroup, Columns, Decomposition};
use crate::povm::{prepare_rank1, WeightedPovm};
use crate::simplex::{BasicFeasibleSolution, StandardLp, CLIP_TOL};
use crate::{Error, Result, Tolerances};

pub const DEFAULT_ENUM_CAP: usize = 16;

/// Two `q_cost` values closer than this are treated as a tie.
const Q_TIE: f64 = 1e-12;

/// `sum_i x_i^2`.
pub fn q_cost(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// Tabulated `(min, max)` of [`q_cost`] over qubit vertices with `n` outcomes.
pub fn q_bounds(n: usize, d: usize) -> Result<(f64, f64)> {
    if d != 2 {
        return Err(Error::Unsupported {
            outcomes: n,
            dim: d,
        });
    }
    let d2 = (d * d) as f64;
    match n {
        2 => Ok((d2 / 2.0, d2 / 2.0)),
        3 => Ok((d2 / 3.0, 3.0 * d2 / 8.0)),
        4 => Ok((d2 / 4.0, d2 / 3.0)),
        _ => Err(Error::Unsupported {
            outcomes: n,
            dim: d,
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogVertex {
    pub solution: BasicFeasibleSolution,
    pub outcome_count: usize,
    pub q_value: f64,
}

impl CatalogVertex {
    pub fn support(&self) -> &[usize] {
        &self.solution.basis
    }
}

/// All vertices of `{x : A x = b, x >= 0}`, ordered by support
/// lexicographically. Each support appears once.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VertexCatalog {
    pub vertices: Vec<CatalogVertex>,
}

impl VertexCatalog {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The vertex with the same support as `x` and coefficients within `tol`.
    pub fn find(&self, x: &[f64], tol: f64) -> Option<&CatalogVertex> {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
        self.vertices.iter().find(|v| {
            v.support() == support.as_slice()
                && v.solution.x.len() == x.len()
                && v.solution
                    .x
                    .iter()
                    .zip(x)
                    .all(|(a, b)| (a - b).abs() <= tol)
        })
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solves `A_S x_S = b` for every column subset `S` with `|S| <= rows` and
/// independent columns, keeping the nonnegative solutions.
pub fn enumerate_vertices(lp: &StandardLp, cap: usize) -> Result<VertexCatalog> {
    let n = lp.cols();
    if n > cap {
        return Err(Error::TooLarge { columns: n, cap });
    }
    let tol = lp.feasibility_tolerance();
    let mut found: BTreeMap<Vec<usize>, Vec<f64>> = BTreeMap::new();
    for k in 1..=lp.rows().min(n) {
        for_each_subset(n, k, |subset| {
            let sub = lp.a().select_columns(subset);
            let Some(xs) = sub.solve_least_squares(lp.b(), 1e-9) else {
                return;
            };
            if xs.iter().any(|&v| v < -CLIP_TOL) {
                return;
            }
            let mut x = vec![0.0; n];
            for (&j, &v) in subset.iter().zip(&xs) {
                x[j] = if v > CLIP_TOL { v } else { 0.0 };
            }
            if lp.residual(&x) > tol {
                return;
            }
            let support: Vec<usize> = (0..n).filter(|&j| x[j] > 0.0).collect();
            found.entry(support).or_insert(x);
        });
    }
    if lp.b().iter().all(|&v| v == 0.0) {
        found.entry(Vec::new()).or_insert(vec![0.0; n]);
    }
    let vertices = found
        .into_iter()
        .map(|(support, x)| CatalogVertex {
            outcome_count: support.len(),
            q_value: q_cost(&x),
            solution: BasicFeasibleSolution { x, basis: support },
        })
        .collect();
    Ok(VertexCatalog { vertices })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Whatever vertex the simplex reaches first.
    #[default]
    FirstFound,
    /// Fewest nonzero outcomes.
    FewestOutcomes,
    /// Largest `sum_i x_i^2`.
    MaxQ,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "first" => Ok(Self::FirstFound),
            "fewest" => Ok(Self::FewestOutcomes),
            "maxq" => Ok(Self::MaxQ),
            other => Err(format!(
                "unknown strategy {other:?}, expected first, fewest or maxq"
            )),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::FirstFound => "first",
            Self::FewestOutcomes => "fewest",
            Self::MaxQ => "maxq",
        })
    }
}

/// Top-ranked catalog vertex supported inside the support of `coeffs`.
/// Ties go to the lexicographically smallest support, which is the catalog order.
pub fn best_vertex<'a>(
    catalog: &'a VertexCatalog,
    coeffs: &[f64],
    strategy: Strategy,
) -> Option<&'a CatalogVertex> {
    let mut best: Option<&CatalogVertex> = None;
    for v in &catalog.vertices {
        if v.outcome_count == 0 || !v.support().iter().all(|&j| coeffs[j] > 0.0) {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => match strategy {
                Strategy::MaxQ => v.q_value > b.q_value + Q_TIE,
                _ => v.outcome_count < b.outcome_count,
            },
        };
        if better {
            best = Some(v);
        }
    }
    best
}

/// Vertex catalog of the merged columns of `povm`, as used by the ranked
/// strategies. Column `j` of every vertex corresponds to `groups[j]`.
pub fn povm_catalog(
    povm: &WeightedPovm,
    cap: usize,
    tol: &Tolerances,
) -> Result<(Vec<ColumnGroup>, VertexCatalog)> {
    let prepared = prepare_rank1(povm, tol)?;
    let columns = Columns::new(&prepared, tol)?;
    let catalog = enumerate_vertices(&columns.lp, cap)?;
    Ok((columns.groups, catalog))
}

/// Like [`crate::decompose`] but picks each vertex by `strategy` from the
/// full catalog. `FirstFound` skips enumeration entirely.
pub fn ordered_decompose(
    povm: &WeightedPovm,
    strategy: Strategy,
    cap: usize,
    tol: &Tolerances,
) -> Result<Decomposition> {
    if strategy == Strategy::FirstFound {
        return decompose_with(povm, tol);
    }
    let prepared = prepare_rank1(povm, tol)?;
    let columns = Columns::new(&prepared, tol)?;
    let catalog = enumerate_vertices(&columns.lp, cap)?;
    columns.peel(prepared.relabel.clone(), tol, |coeffs| {
        best_vertex(&catalog, coeffs, strategy)
            .map(|v| v.solution.x.clone())
            .ok_or(Error::InternalInfeasible)
    })
}
