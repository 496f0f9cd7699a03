//! Dense tableau simplex for standard-form linear programs
//! `min c^T x  s.t.  A x = b, x >= 0`.
//!
//! [`find_vertex`] runs Phase I with one artificial variable per row and
//! returns either a basic feasible solution or a Farkas certificate `nu` with
//! `A^T nu <= 0` and `b^T nu > 0`. [`optimize`] runs Phase II from a known
//! vertex. Both use Bland's lowest-index rule, so runs are deterministic and
//! cannot cycle.

use serde::{Deserialize, Serialize};

use crate::dense::DenseMatrix;
use crate::{Error, Result, Tolerances};

/// Components of a basic feasible solution may be this negative before
/// being rejected; smaller magnitudes are clipped to zero.
pub const CLIP_TOL: f64 = 1e-10;
/// Tolerance for the sign conditions of an infeasibility certificate.
pub const CERTIFICATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardLp {
    a: DenseMatrix,
    b: Vec<f64>,
    cost: Option<Vec<f64>>,
}

impl StandardLp {
    pub fn new(a: DenseMatrix, b: Vec<f64>, cost: Option<Vec<f64>>) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::MalformedLp(
                "A must have at least one row and column".into(),
            ));
        }
        if b.len() != a.rows() {
            return Err(Error::MalformedLp(format!(
                "b has length {}, A has {} rows",
                b.len(),
                a.rows()
            )));
        }
        if let Some(c) = &cost {
            if c.len() != a.cols() {
                return Err(Error::MalformedLp(format!(
                    "c has length {}, A has {} columns",
                    c.len(),
                    a.cols()
                )));
            }
        }
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let a_finite = (0..a.rows()).all(|i| finite(a.row(i)));
        if !a_finite || !finite(&b) || !cost.as_deref().is_none_or(finite) {
            return Err(Error::MalformedLp("non-finite entry".into()));
        }
        Ok(Self { a, b, cost })
    }

    pub fn from_rows(rows: &[Vec<f64>], b: Vec<f64>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::MalformedLp("ragged or empty rows".into()));
        }
        Self::new(DenseMatrix::from_rows(rows), b, None)
    }

    pub fn with_cost(self, cost: Vec<f64>) -> Result<Self> {
        Self::new(self.a, self.b, Some(cost))
    }

    pub fn a(&self) -> &DenseMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn cost(&self) -> Option<&[f64]> {
        self.cost.as_deref()
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// The LP over the listed columns only (cost restricted accordingly).
    pub fn restrict_columns(&self, keep: &[usize]) -> Self {
        Self {
            a: self.a.select_columns(keep),
            b: self.b.clone(),
            cost: self
                .cost
                .as_ref()
                .map(|c| keep.iter().map(|&j| c[j]).collect()),
        }
    }

    /// `|A x - b|_inf`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        crate::dense::max_abs_diff(&self.a.mul_vec(x), &self.b)
    }

    /// Tolerance on `|A x - b|_inf` accepted for a feasible point.
    pub fn feasibility_tolerance(&self) -> f64 {
        1e-8 * (1.0 + self.b.iter().fold(0.0f64, |m, v| m.max(v.abs())))
    }

    pub fn objective(&self, x: &[f64]) -> Option<f64> {
        self.cost
            .as_ref()
            .map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum())
    }
}

/// A vertex of `{x : A x = b, x >= 0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasicFeasibleSolution {
    pub x: Vec<f64>,
    /// Sorted column indices of the basic variables.
    pub basis: Vec<usize>,
}

impl BasicFeasibleSolution {
    /// Indices with strictly positive value.
    pub fn support(&self) -> Vec<usize> {
        (0..self.x.len()).filter(|&i| self.x[i] > 0.0).collect()
    }

    /// Checks `A x = b`, `x >= -1e-10`, zeros outside the basis and basis
    /// column independence.
    pub fn verify(&self, lp: &StandardLp) -> bool {
        let in_basis = |j| self.basis.binary_search(&j).is_ok();
        self.x.len() == lp.cols()
            && lp.residual(&self.x) <= lp.feasibility_tolerance()
            && self.x.iter().all(|&v| v >= -CLIP_TOL)
            && self
                .x
                .iter()
                .enumerate()
                .all(|(j, &v)| in_basis(j) || v == 0.0)
            && lp.a().select_columns(&self.basis).rank(1e-9) == self.basis.len()
    }
}

/// A Farkas vector: `A^T nu <= 0` and `b^T nu > 0` prove `A x = b, x >= 0` infeasible.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfeasibilityCertificate {
    pub nu: Vec<f64>,
}

impl InfeasibilityCertificate {
    /// Largest component of `A^T nu`.
    pub fn max_column_product(&self, lp: &StandardLp) -> f64 {
        lp.a()
            .transpose_mul_vec(&self.nu)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `b^T nu`.
    pub fn rhs_product(&self, lp: &StandardLp) -> f64 {
        lp.b().iter().zip(&self.nu).map(|(a, b)| a * b).sum()
    }

    pub fn verify(&self, lp: &StandardLp, tol: f64) -> bool {
        self.nu.len() == lp.rows()
            && self.max_column_product(lp) <= tol
            && self.rhs_product(lp) > tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Vertex(BasicFeasibleSolution),
    Infeasible(InfeasibilityCertificate),
}

impl Feasibility {
    pub fn vertex(self) -> Option<BasicFeasibleSolution> {
        match self {
            Feasibility::Vertex(v) => Some(v),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// Result of a Phase-I run together with the number of pivots it took.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexRun {
    pub outcome: Feasibility,
    pub pivots: usize,
}

/// Dense tableau `B^{-1} [A | b]` with an objective row of reduced costs.
struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows x (cols + 1)`, last column is the right-hand side.
    t: Vec<f64>,
    /// Reduced costs, last entry is minus the objective value.
    obj: Vec<f64>,
    /// Basic variable of each row; `None` for rows found redundant.
    basis: Vec<Option<usize>>,
    pivots: usize,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * (self.cols + 1) + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        self.t[r * w + c] = 1.0;
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c];
            if f != 0.0 {
                for j in 0..w {
                    self.t[i * w + j] -= f * self.t[r * w + j];
                }
                self.t[i * w + c] = 0.0;
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for j in 0..w {
                self.obj[j] -= f * self.t[r * w + j];
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = Some(c);
        self.pivots += 1;
    }

    /// Recomputes the objective row for cost vector `c` from the current basis.
    fn price(&mut self, c: &[f64]) {
        let w = self.cols + 1;
        let mut obj = c.to_vec();
        obj.push(0.0);
        for i in 0..self.rows {
            if let Some(b) = self.basis[i] {
                let cb = c[b];
                if cb != 0.0 {
                    let row = &self.t[i * w..(i + 1) * w];
                    for (o, &t) in obj.iter_mut().zip(row) {
                        *o -= cb * t;
                    }
                }
            }
        }
        self.obj = obj;
    }

    /// Bland's rule: lowest-index improving column, then the min-ratio row with
    /// ties broken by lowest basic variable index. Returns `Ok(false)` at
    /// optimality and `Err(column)` when the column has no blocking row.
    fn step(
        &mut self,
        pivot_tol: f64,
        allowed: impl Fn(usize) -> bool,
    ) -> std::result::Result<bool, usize> {
        let Some(enter) = (0..self.cols).find(|&j| allowed(j) && self.obj[j] < -pivot_tol) else {
            return Ok(false);
        };
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..self.rows {
            let Some(bi) = self.basis[i] else { continue };
            let a = self.at(i, enter);
            if a <= pivot_tol {
                continue;
            }
            let ratio = self.rhs(i).max(0.0) / a;
            best = match best {
                None => Some((ratio, i, bi)),
                Some((r, _, b)) => {
                    let slack = 1e-12 * (1.0 + r.abs());
                    if ratio < r - slack || ((ratio - r).abs() <= slack && bi < b) {
                        Some((ratio, i, bi))
                    } else {
                        best
                    }
                }
            };
        }
        match best {
            Some((_, row, _)) => {
                self.pivot(row, enter);
                Ok(true)
            }
            None => Err(enter),
        }
    }
}

fn pivot_budget(rows: usize, cols: usize) -> usize {
    // Bland's rule terminates, this only guards against float pathologies.
    200 * (rows + cols) * (rows + cols) + 1000
}

/// Phase I: finds a vertex or an infeasibility certificate. The cost vector
/// of `lp`, if any, is ignored.
pub fn find_vertex(lp: &StandardLp) -> Result<Feasibility> {
    Ok(find_vertex_with(lp, &Tolerances::default())?.outcome)
}

pub fn find_vertex_with(lp: &StandardLp, tol: &Tolerances) -> Result<SimplexRun> {
    let (m, n) = (lp.rows(), lp.cols());
    let total = n + m;
    // Rows are sign-flipped so that b >= 0; artificial variable n + i starts basic in row i.
    let signs: Vec<f64> = lp
        .b()
        .iter()
        .map(|&v| if v < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let mut t = vec![0.0; m * (total + 1)];
    for i in 0..m {
        let row = &mut t[i * (total + 1)..(i + 1) * (total + 1)];
        for (j, r) in row[..n].iter_mut().enumerate() {
            *r = signs[i] * lp.a()[(i, j)];
        }
        row[n + i] = 1.0;
        row[total] = signs[i] * lp.b()[i];
    }
    let mut tab = Tableau {
        rows: m,
        cols: total,
        t,
        obj: Vec::new(),
        basis: (0..m).map(|i| Some(n + i)).collect(),
        pivots: 0,
    };
    let phase_one_cost: Vec<f64> = (0..total).map(|j| if j < n { 0.0 } else { 1.0 }).collect();
    tab.price(&phase_one_cost);

    let budget = pivot_budget(m, n);
    loop {
        match tab.step(tol.pivot, |_| true) {
            Ok(true) => {}
            Ok(false) => break,
            Err(_) => {
                return Err(Error::NumericalStall(
                    "phase-I objective appears unbounded below".into(),
                ))
            }
        }
        if tab.pivots > budget {
            return Err(Error::NumericalStall(format!("exceeded {budget} pivots")));
        }
    }

    let infeasibility = -tab.obj[total];
    if infeasibility > tol.feasibility {
        // Reduced cost of artificial i is 1 - y_i, y the phase-I multipliers.
        let nu = (0..m).map(|i| signs[i] * (1.0 - tab.obj[n + i])).collect();
        let cert = InfeasibilityCertificate { nu };
        if !cert.verify(lp, CERTIFICATE_TOL) {
            return Err(Error::NumericalStall(format!(
                "phase-I objective {infeasibility:e} but certificate does not verify"
            )));
        }
        return Ok(SimplexRun {
            outcome: Feasibility::Infeasible(cert),
            pivots: tab.pivots,
        });
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linear combinations of the others.
    for i in 0..m {
        if let Some(b) = tab.basis[i] {
            if b >= n {
                match (0..n).find(|&j| tab.at(i, j).abs() > tol.pivot) {
                    Some(j) => tab.pivot(i, j),
                    None => tab.basis[i] = None,
                }
            }
        }
    }

    let mut x = vec![0.0; n];
    let mut basis = Vec::new();
    for i in 0..m {
        if let Some(b) = tab.basis[i] {
            x[b] = tab.rhs(i);
            basis.push(b);
        }
    }
    basis.sort_unstable();
    refine(lp, &basis, &mut x);
    snap(&mut x)?;
    Ok(SimplexRun {
        outcome: Feasibility::Vertex(BasicFeasibleSolution { x, basis }),
        pivots: tab.pivots,
    })
}

/// Zeroes degenerate basic variables; anything below `-CLIP_TOL` is an error.
fn snap(x: &mut [f64]) -> Result<()> {
    for v in x {
        if *v < -CLIP_TOL {
            return Err(Error::NumericalStall(format!("basic variable at {v:e}")));
        }
        if *v <= CLIP_TOL {
            *v = 0.0;
        }
    }
    Ok(())
}

/// Re-solves `A_B x_B = b` by least squares, keeping the result only if it
/// reduces the residual.
fn refine(lp: &StandardLp, basis: &[usize], x: &mut [f64]) {
    if basis.is_empty() {
        return;
    }
    let Some(xb) = lp
        .a()
        .select_columns(basis)
        .solve_least_squares(lp.b(), 1e-12)
    else {
        return;
    };
    let mut candidate = vec![0.0; x.len()];
    for (&j, &v) in basis.iter().zip(&xb) {
        candidate[j] = v;
    }
    if lp.residual(&candidate) < lp.residual(x) && candidate.iter().all(|&v| v >= -CLIP_TOL) {
        x.copy_from_slice(&candidate);
    }
}

/// Phase II from `start`, minimizing the cost of `lp` with Bland's rule.
pub fn optimize(lp: &StandardLp, start: &BasicFeasibleSolution) -> Result<BasicFeasibleSolution> {
    optimize_with(lp, start, &Tolerances::default())
}

pub fn optimize_with(
    lp: &StandardLp,
    start: &BasicFeasibleSolution,
    tol: &Tolerances,
) -> Result<BasicFeasibleSolution> {
    let cost = lp.cost().ok_or(Error::MissingCost)?.to_vec();
    if !start.verify(lp) {
        return Err(Error::InvalidStart(
            "not a basic feasible solution of this LP".into(),
        ));
    }
    if cost.iter().all(|&c| c == 0.0) {
        return Ok(start.clone());
    }
    let (m, n) = (lp.rows(), lp.cols());
    let mut t = vec![0.0; m * (n + 1)];
    for i in 0..m {
        for j in 0..n {
            t[i * (n + 1) + j] = lp.a()[(i, j)];
        }
        t[i * (n + 1) + n] = lp.b()[i];
    }
    let mut tab = Tableau {
        rows: m,
        cols: n,
        t,
        obj: vec![0.0; n + 1],
        basis: vec![None; m],
        pivots: 0,
    };
    // Pivot the start basis in, then complete it with the lowest-index columns
    // that still have a usable pivot (those sit at zero level).
    let mut assigned = vec![false; m];
    let mut place = |tab: &mut Tableau, j: usize| -> bool {
        let row = (0..m)
            .filter(|&i| !assigned[i] && tab.at(i, j).abs() > tol.pivot)
            .max_by(|&a, &b| tab.at(a, j).abs().total_cmp(&tab.at(b, j).abs()));
        match row {
            Some(r) => {
                tab.pivot(r, j);
                assigned[r] = true;
                true
            }
            None => false,
        }
    };
    for &j in &start.basis {
        if !place(&mut tab, j) {
            return Err(Error::InvalidStart(format!(
                "basis column {j} is dependent"
            )));
        }
    }
    for j in (0..n).filter(|j| start.basis.binary_search(j).is_err()) {
        place(&mut tab, j);
    }
    tab.pivots = 0;
    tab.price(&cost);

    let budget = pivot_budget(m, n);
    loop {
        match tab.step(tol.pivot, |_| true) {
            Ok(true) => {}
            Ok(false) => break,
            Err(column) => return Err(Error::Unbounded { column }),
        }
        if tab.pivots > budget {
            return Err(Error::NumericalStall(format!("exceeded {budget} pivots")));
        }
    }
    if tab.pivots == 0 {
        return Ok(start.clone());
    }

    let mut x = vec![0.0; n];
    let mut basis = Vec::new();
    for i in 0..m {
        if let Some(b) = tab.basis[i] {
            x[b] = tab.rhs(i).max(0.0);
            basis.push(b);
        }
    }
    basis.sort_unstable();
    refine(lp, &basis, &mut x);
    snap(&mut x)?;
    Ok(BasicFeasibleSolution { x, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(rows: &[Vec<f64>], b: &[f64]) -> StandardLp {
        StandardLp::from_rows(rows, b.to_vec()).unwrap()
    }

    #[test]
    fn single_row_picks_lowest_index() {
        let v = find_vertex(&lp(&[vec![1.0, 1.0]], &[2.0]))
            .unwrap()
            .vertex()
            .unwrap();
        assert_eq!(v.x, vec![2.0, 0.0]);
        assert_eq!(v.basis, vec![0]);
    }

    #[test]
    fn contradictory_rows_are_certified() {
        let p = lp(&[vec![1.0], vec![-1.0]], &[1.0, 1.0]);
        match find_vertex(&p).unwrap() {
            Feasibility::Infeasible(cert) => {
                assert!(cert.verify(&p, CERTIFICATE_TOL));
                assert!(cert.rhs_product(&p) > 0.0);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn trine_has_equal_weights() {
        let s3 = 3f64.sqrt() / 2.0;
        let p = lp(
            &[
                vec![1.0, -0.5, -0.5],
                vec![0.0, s3, -s3],
                vec![0.0, 0.0, 0.0],
                vec![1.0, 1.0, 1.0],
            ],
            &[0.0, 0.0, 0.0, 2.0],
        );
        let v = find_vertex(&p).unwrap().vertex().unwrap();
        for x in &v.x {
            assert!((x - 2.0 / 3.0).abs() < 1e-12);
        }
        assert!(v.verify(&p));
    }

    #[test]
    fn negative_rhs_rows() {
        // x0 - x1 = -1, x0 + x1 = 3  ->  (1, 2)
        let p = lp(&[vec![1.0, -1.0], vec![1.0, 1.0]], &[-1.0, 3.0]);
        let v = find_vertex(&p).unwrap().vertex().unwrap();
        assert!((v.x[0] - 1.0).abs() < 1e-12 && (v.x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn optimize_examples() {
        let base = lp(&[vec![1.0, 1.0]], &[2.0]);
        let start = BasicFeasibleSolution {
            x: vec![0.0, 2.0],
            basis: vec![1],
        };

        let zero = base.clone().with_cost(vec![0.0, 0.0]).unwrap();
        assert_eq!(optimize(&zero, &start).unwrap(), start);

        let min_x0 = base.clone().with_cost(vec![1.0, 0.0]).unwrap();
        let from_left = BasicFeasibleSolution {
            x: vec![2.0, 0.0],
            basis: vec![0],
        };
        assert_eq!(optimize(&min_x0, &from_left).unwrap().x, vec![0.0, 2.0]);

        let max_x0 = base.with_cost(vec![-1.0, 0.0]).unwrap();
        let end = optimize(&max_x0, &start).unwrap();
        assert_eq!(end.x, vec![2.0, 0.0]);
        assert_eq!(end.basis, vec![0]);
    }

    #[test]
    fn optimize_detects_unbounded() {
        // x0 - x1 = 0, minimize -x0.
        let p = lp(&[vec![1.0, -1.0]], &[0.0])
            .with_cost(vec![-1.0, 0.0])
            .unwrap();
        let start = BasicFeasibleSolution {
            x: vec![0.0, 0.0],
            basis: vec![0],
        };
        assert!(matches!(optimize(&p, &start), Err(Error::Unbounded { .. })));
    }

    #[test]
    fn optimize_requires_cost() {
        let p = lp(&[vec![1.0, 1.0]], &[2.0]);
        let start = BasicFeasibleSolution {
            x: vec![2.0, 0.0],
            basis: vec![0],
        };
        assert_eq!(optimize(&p, &start), Err(Error::MissingCost));
    }

    #[test]
    fn malformed_inputs() {
        assert!(StandardLp::from_rows(&[vec![1.0]], vec![1.0, 2.0]).is_err());
        assert!(StandardLp::from_rows(&[vec![f64::NAN]], vec![1.0]).is_err());
        assert!(StandardLp::from_rows(&[], vec![]).is_err());
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Exhaustive oracle: try every column subset of size <= p, solve the
    /// square-or-tall system and look for a nonnegative solution.
    fn brute_force_feasible(lp: &StandardLp) -> bool {
        let (p, q) = (lp.rows(), lp.cols());
        if lp.b().iter().all(|&v| v == 0.0) {
            return true;
        }
        for mask in 1u32..(1 << q) {
            let cols: Vec<usize> = (0..q).filter(|j| mask & (1 << j) != 0).collect();
            if cols.len() > p {
                continue;
            }
            let sub = lp.a().select_columns(&cols);
            if let Some(x) = sub.solve_least_squares(lp.b(), 1e-9) {
                let res = crate::dense::max_abs_diff(&sub.mul_vec(&x), lp.b());
                if res < 1e-7 && x.iter().all(|&v| v >= -1e-9) {
                    return true;
                }
            }
        }
        false
    }

    fn arb_lp() -> impl Strategy<Value = StandardLp> {
        (1usize..=5, 1usize..=8).prop_flat_map(|(p, q)| {
            (
                proptest::collection::vec(proptest::collection::vec(-3i32..=3, q), p),
                proptest::collection::vec(-3i32..=3, p),
            )
                .prop_map(|(rows, b)| {
                    let rows: Vec<Vec<f64>> = rows
                        .into_iter()
                        .map(|r| r.into_iter().map(f64::from).collect())
                        .collect();
                    StandardLp::from_rows(&rows, b.into_iter().map(f64::from).collect()).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn dichotomy_matches_brute_force(p in arb_lp()) {
            let run = find_vertex_with(&p, &Tolerances::default()).unwrap();
            prop_assert!(run.pivots <= binomial(p.rows() + p.cols(), p.rows()));
            match run.outcome {
                Feasibility::Vertex(v) => {
                    prop_assert!(v.verify(&p));
                    prop_assert!(brute_force_feasible(&p));
                }
                Feasibility::Infeasible(cert) => {
                    prop_assert!(cert.verify(&p, CERTIFICATE_TOL));
                    prop_assert!(!brute_force_feasible(&p));
                }
            }
        }

        #[test]
        fn phase_two_never_worsens(p in arb_lp(), c in proptest::collection::vec(-3i32..=3, 8)) {
            if let Feasibility::Vertex(start) = find_vertex(&p).unwrap() {
                let cost: Vec<f64> = c[..p.cols()].iter().map(|&v| f64::from(v)).collect();
                let with_cost = p.clone().with_cost(cost).unwrap();
                match optimize(&with_cost, &start) {
                    Ok(end) => {
                        prop_assert!(end.verify(&with_cost));
                        let before = with_cost.objective(&start.x).unwrap();
                        let after = with_cost.objective(&end.x).unwrap();
                        prop_assert!(after <= before + 1e-9);
                    }
                    Err(Error::Unbounded { .. }) => {}
                    Err(e) => prop_assert!(false, "unexpected error {e}"),
                }
            }
        }
    }
}
