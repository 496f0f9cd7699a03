//! Iterative extraction of extremal POVMs.
//!
//! The coefficients `a` of a rank-1 POVM `{a_i E_i}` form a point of the
//! polytope `K = {x : A x = b, x >= 0}` where column `i` of `A` is
//! `(v_i, 1)` (the Bloch vector of `E_i` with a trailing one) and
//! `b = (0, d)`. Every vertex of `K` is an extremal POVM built from the same
//! elements. Each step finds a vertex `x`, takes the largest
//! `p = min_i a_i / x_i` that keeps `a - p x` nonnegative, and continues on
//! the renormalized remainder `(a - p x) / (1 - p)`, whose support is strictly
//! smaller. The loop ends when the remainder is itself a vertex.

use std::collections::BTreeMap;

use crate::bloch::{generator_basis, to_bloch, BlochVector};
use crate::dense::DenseMatrix;
use crate::linalg::{hermitian_eigendecompose, rank_of_spectrum, HermitianMatrix};
use crate::povm::{
    label_maps_close, prepare_rank1, Outcome, PreparedPovm, RelabelMap, WeightedPovm,
};
use crate::simplex::{find_vertex_with, Feasibility, StandardLp};
use crate::{Error, Result, Tolerances};

/// Prepared outcomes that share one projector and therefore one LP column.
///
/// The column carries the summed weight of its members; a measured outcome
/// of that column is reported as member `l` with probability `share`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnGroup {
    /// Smallest prepared label in the group; used as the outcome label in terms.
    pub representative: usize,
    /// `(prepared label, share)` with shares summing to one.
    pub members: Vec<(usize, f64)>,
}

/// One extremal factor of a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub probability: f64,
    /// Rank-1 extremal POVM; outcome labels are [`ColumnGroup::representative`]s.
    pub extremal: WeightedPovm,
}

/// `P = sum_k p_k P^(k)` followed by classical post-processing.
///
/// Sampling term `k`, measuring its extremal, splitting the observed column
/// among its group members by share and mapping the prepared label through
/// `relabel` reproduces the statistics of the original POVM.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub dim: usize,
    pub relabel: RelabelMap,
    /// Sorted by representative.
    pub groups: Vec<ColumnGroup>,
    pub terms: Vec<Term>,
}

/// One prepared outcome of a term, after splitting merged columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedOutcome {
    pub weight: f64,
    pub element: HermitianMatrix,
    pub prepared_label: usize,
    pub original_label: usize,
    pub group: usize,
}

impl Decomposition {
    pub fn probability_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.probability).sum()
    }

    fn group(&self, representative: usize) -> Option<&ColumnGroup> {
        self.groups
            .binary_search_by_key(&representative, |g| g.representative)
            .ok()
            .map(|i| &self.groups[i])
    }

    /// The outcomes of term `k` split into prepared outcomes.
    pub fn expanded_outcomes(&self, k: usize) -> Vec<ExpandedOutcome> {
        let mut out = Vec::new();
        for o in self.terms[k].extremal.outcomes() {
            let members = match self.group(o.label) {
                Some(g) => g.members.clone(),
                None => vec![(o.label, 1.0)],
            };
            for (l, share) in members {
                out.push(ExpandedOutcome {
                    weight: o.weight * share,
                    element: o.element.clone(),
                    prepared_label: l,
                    original_label: self.relabel.original_of(l).unwrap_or(l),
                    group: o.label,
                });
            }
        }
        out
    }

    /// `sum_k p_k * (term k pushed through the post-processing)`, keyed by
    /// original label.
    pub fn reconstruct(&self) -> BTreeMap<usize, HermitianMatrix> {
        let mut out: BTreeMap<usize, HermitianMatrix> = BTreeMap::new();
        for (k, term) in self.terms.iter().enumerate() {
            for e in self.expanded_outcomes(k) {
                let op = e.element.scale(term.probability * e.weight);
                out.entry(e.original_label)
                    .and_modify(|m| *m = &*m + &op)
                    .or_insert(op);
            }
        }
        out
    }

    /// Largest elementwise deviation between the reconstruction and `original`.
    pub fn reconstruction_residual(&self, original: &WeightedPovm) -> f64 {
        label_maps_close(
            &self.reconstruct(),
            &original.aggregate_by_label(),
            self.dim,
        )
    }

    /// Structural equality up to `tol` on every float.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let groups_eq = self.groups.len() == other.groups.len()
            && self.groups.iter().zip(&other.groups).all(|(a, b)| {
                a.representative == b.representative
                    && a.members.len() == b.members.len()
                    && a.members
                        .iter()
                        .zip(&b.members)
                        .all(|(x, y)| x.0 == y.0 && (x.1 - y.1).abs() <= tol)
            });
        let terms_eq = self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| {
                (a.probability - b.probability).abs() <= tol
                    && a.extremal.len() == b.extremal.len()
                    && a.extremal
                        .outcomes()
                        .iter()
                        .zip(b.extremal.outcomes())
                        .all(|(x, y)| {
                            x.label == y.label
                                && (x.weight - y.weight).abs() <= tol
                                && x.element.max_abs_diff(&y.element) <= tol
                        })
            });
        self.dim == other.dim && self.relabel == other.relabel && groups_eq && terms_eq
    }
}

/// LP columns `(v_i, 1)` for unit-trace elements.
fn lp_from_elements(dim: usize, elements: &[&HermitianMatrix]) -> Result<StandardLp> {
    let basis = generator_basis(dim)?;
    let columns = elements
        .iter()
        .map(|e| {
            let mut col = to_bloch(e, &basis)?.0;
            col.push(1.0);
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut b = vec![0.0; dim * dim];
    b[dim * dim - 1] = dim as f64;
    StandardLp::new(DenseMatrix::from_columns(&columns), b, None)
}

/// `A` with columns `(v_i, 1)` over all prepared outcomes, `b = (0, d)`.
pub fn build_feasibility_lp(prepared: &PreparedPovm) -> Result<StandardLp> {
    let elements: Vec<&HermitianMatrix> = prepared
        .povm
        .outcomes()
        .iter()
        .map(|o| &o.element)
        .collect();
    lp_from_elements(prepared.povm.dim(), &elements)
}

/// Prepared outcomes grouped by coinciding projector.
#[derive(Debug, Clone)]
pub(crate) struct Columns {
    pub dim: usize,
    pub groups: Vec<ColumnGroup>,
    pub elements: Vec<HermitianMatrix>,
    pub weights: Vec<f64>,
    pub lp: StandardLp,
}

impl Columns {
    pub fn new(prepared: &PreparedPovm, tol: &Tolerances) -> Result<Self> {
        let mut groups: Vec<ColumnGroup> = Vec::new();
        let mut elements: Vec<HermitianMatrix> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for o in prepared.povm.outcomes() {
            match elements
                .iter()
                .position(|e| e.max_abs_diff(&o.element) <= tol.merge)
            {
                Some(j) => {
                    groups[j].members.push((o.label, o.weight));
                    weights[j] += o.weight;
                }
                None => {
                    groups.push(ColumnGroup {
                        representative: o.label,
                        members: vec![(o.label, o.weight)],
                    });
                    elements.push(o.element.clone());
                    weights.push(o.weight);
                }
            }
        }
        for (g, &w) in groups.iter_mut().zip(&weights) {
            for m in &mut g.members {
                m.1 /= w;
            }
        }
        let refs: Vec<&HermitianMatrix> = elements.iter().collect();
        let lp = lp_from_elements(prepared.povm.dim(), &refs)?;
        Ok(Self {
            dim: prepared.povm.dim(),
            groups,
            elements,
            weights,
            lp,
        })
    }

    /// The rank-1 POVM `{x_j E_j}` over the support of `x`.
    pub fn povm_of(&self, x: &[f64]) -> WeightedPovm {
        let outcomes = x
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(j, &w)| Outcome {
                label: self.groups[j].representative,
                weight: w,
                element: self.elements[j].clone(),
            })
            .collect();
        WeightedPovm::from_outcomes(self.dim, outcomes)
    }

    /// Runs the extraction loop, asking `choose` for a vertex of the face of
    /// `K` spanned by the current support at every step.
    pub fn peel(
        &self,
        relabel: RelabelMap,
        tol: &Tolerances,
        mut choose: impl FnMut(&[f64]) -> Result<Vec<f64>>,
    ) -> Result<Decomposition> {
        let mut coeffs = self.weights.clone();
        let mut remaining = 1.0;
        let mut terms = Vec::new();
        for _ in 0..=self.weights.len() {
            let vertex = choose(&coeffs)?;
            let step = checked_step(&coeffs, vertex, &self.lp, tol)?;
            match step.residual {
                None => {
                    terms.push(Term {
                        probability: remaining,
                        extremal: self.povm_of(&step.vertex),
                    });
                    let mut groups = self.groups.clone();
                    groups.sort_by_key(|g| g.representative);
                    return Ok(Decomposition {
                        dim: self.dim,
                        relabel,
                        groups,
                        terms,
                    });
                }
                Some(next) => {
                    terms.push(Term {
                        probability: remaining * step.probability,
                        extremal: self.povm_of(&step.vertex),
                    });
                    remaining *= 1.0 - step.probability;
                    coeffs = next;
                }
            }
        }
        // Every step zeroes at least one coefficient, so this is unreachable
        // unless the vertex oracle misbehaves.
        Err(Error::InternalInfeasible)
    }
}

/// Outcome of one extraction: `a = p x + (1 - p) a'`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionStep {
    pub vertex: Vec<f64>,
    pub probability: f64,
    /// `None` when `p = 1`, i.e. `a` was already a vertex.
    pub residual: Option<Vec<f64>>,
}

/// Removes as much of vertex `x` from `a` as nonnegativity allows.
///
/// `p = min_{x_i > 0} a_i / x_i`; the remainder `(a - p x) / (1 - p)` has
/// the minimizing coordinate, and every coordinate of `a - p x` below
/// `tol.zero_weight`, set to exactly zero. `p` is reported as 1 when `1 - p < tol.zero_weight` or when
/// `x` and `a` have the same support.
pub fn split_off_vertex(a: &[f64], x: &[f64], tol: &Tolerances) -> Result<(f64, Option<Vec<f64>>)> {
    let (p, argmin) = a
        .iter()
        .zip(x)
        .enumerate()
        .filter(|(_, (_, &xi))| xi > 0.0)
        .map(|(i, (&ai, &xi))| (ai / xi, i))
        .min_by(|l, r| l.0.total_cmp(&r.0).then(l.1.cmp(&r.1)))
        .ok_or(Error::InternalInfeasible)?;
    if p <= 0.0 {
        return Err(Error::InternalInfeasible);
    }
    // Equal supports mean `a` is the vertex itself, whatever rounding did to `p`.
    let same_support = a.iter().zip(x).all(|(&ai, &xi)| (ai > 0.0) == (xi > 0.0));
    if same_support || 1.0 - p < tol.zero_weight {
        return Ok((1.0, None));
    }
    let mut residual: Vec<f64> = a
        .iter()
        .zip(x)
        .map(|(&ai, &xi)| {
            let r = ai - p * xi;
            if r < tol.zero_weight {
                0.0
            } else {
                r / (1.0 - p)
            }
        })
        .collect();
    residual[argmin] = 0.0;
    Ok((p, Some(residual)))
}

/// Finds a vertex of `lp` supported inside the support of `coeffs` and splits
/// it off. `coeffs` must satisfy `A coeffs = b`.
pub fn extract_step(coeffs: &[f64], lp: &StandardLp, tol: &Tolerances) -> Result<ExtractionStep> {
    let vertex = first_vertex_on_support(coeffs, lp, tol)?;
    checked_step(coeffs, vertex, lp, tol)
}

/// Largest `1 - p` at which an infeasible remainder is blamed on rounding in
/// `x` (amplified by `1 / (1 - p)`) rather than on bad input.
const BREAKDOWN_GAP: f64 = 1e-6;

/// [`split_off_vertex`] plus a feasibility check of the remainder.
///
/// When `p` is so close to one that the remainder is numerically meaningless
/// (it violates `A a' = b`), the step is closed with `x` as the last vertex.
fn checked_step(
    a: &[f64],
    x: Vec<f64>,
    lp: &StandardLp,
    tol: &Tolerances,
) -> Result<ExtractionStep> {
    let (probability, residual) = split_off_vertex(a, &x, tol)?;
    match residual {
        None => {
            let same_support = a.iter().zip(&x).all(|(&ai, &xi)| (ai > 0.0) == (xi > 0.0));
            Ok(ExtractionStep {
                vertex: if same_support { a.to_vec() } else { x },
                probability: 1.0,
                residual: None,
            })
        }
        Some(r) if lp.residual(&r) <= lp.feasibility_tolerance() => Ok(ExtractionStep {
            vertex: x,
            probability,
            residual: Some(r),
        }),
        Some(r) => match project_onto_constraints(lp, &r, tol)? {
            Some(r) => Ok(ExtractionStep {
                vertex: x,
                probability,
                residual: Some(r),
            }),
            None if 1.0 - probability <= BREAKDOWN_GAP => Ok(ExtractionStep {
                vertex: x,
                probability: 1.0,
                residual: None,
            }),
            None => Err(Error::NumericalStall(format!(
                "remainder violates the constraints by {:e} after p = {probability}",
                lp.residual(&r)
            ))),
        },
    }
}

/// Nearest point to `r` on `{y : A_S y = b}` with `S` the support of `r`,
/// if it is nonnegative and feasible.
fn project_onto_constraints(
    lp: &StandardLp,
    r: &[f64],
    tol: &Tolerances,
) -> Result<Option<Vec<f64>>> {
    let support: Vec<usize> = (0..r.len()).filter(|&i| r[i] > 0.0).collect();
    let a_s = lp.a().select_columns(&support);
    let m = lp.rows();
    let ar = lp.a().mul_vec(r);
    let err: Vec<f64> = lp.b().iter().zip(&ar).map(|(b, v)| b - v).collect();
    let gram: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| a_s.row(i).iter().zip(a_s.row(j)).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    let eig = hermitian_eigendecompose(&HermitianMatrix::from_real_rows(&gram)?)?;
    let cutoff = 1e-12 * eig.max_abs_eigenvalue().max(1.0);
    let mut y = vec![0.0; m];
    for (lambda, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
        if *lambda > cutoff {
            let coeff = v.iter().zip(&err).map(|(z, e)| z.re * e).sum::<f64>() / lambda;
            for (yi, z) in y.iter_mut().zip(v) {
                *yi += coeff * z.re;
            }
        }
    }
    let delta = a_s.transpose_mul_vec(&y);
    let mut out = r.to_vec();
    for (&j, dj) in support.iter().zip(delta) {
        out[j] += dj;
        if out[j] < tol.zero_weight {
            out[j] = 0.0;
        }
    }
    Ok((lp.residual(&out) <= lp.feasibility_tolerance()).then_some(out))
}

pub(crate) fn first_vertex_on_support(
    coeffs: &[f64],
    lp: &StandardLp,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    let support: Vec<usize> = (0..coeffs.len())
        .filter(|&i| coeffs[i] > tol.zero_weight)
        .collect();
    let restricted = lp.restrict_columns(&support);
    match find_vertex_with(&restricted, tol)?.outcome {
        Feasibility::Vertex(v) => {
            let mut x = vec![0.0; coeffs.len()];
            for (k, &j) in support.iter().enumerate() {
                x[j] = v.x[k];
            }
            Ok(drop_degenerate(lp, x, tol))
        }
        Feasibility::Infeasible(_) => Err(Error::InternalInfeasible),
    }
}

/// Zeroes entries of a vertex that are at rounding level (a nearly degenerate
/// basis) and re-solves on the remaining columns. Keeps `x` if that fails.
fn drop_degenerate(lp: &StandardLp, x: Vec<f64>, tol: &Tolerances) -> Vec<f64> {
    if !x.iter().any(|&v| v > 0.0 && v <= tol.feasibility) {
        return x;
    }
    let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] > tol.feasibility).collect();
    let Some(xs) = lp
        .a()
        .select_columns(&support)
        .solve_least_squares(lp.b(), tol.rank)
    else {
        return x;
    };
    let mut cleaned = vec![0.0; x.len()];
    for (&j, v) in support.iter().zip(xs) {
        cleaned[j] = v;
    }
    let ok =
        cleaned.iter().all(|&v| v >= 0.0) && lp.residual(&cleaned) <= lp.feasibility_tolerance();
    if ok {
        cleaned
    } else {
        x
    }
}

/// Decomposes `povm` with default tolerances.
pub fn decompose(povm: &WeightedPovm) -> Result<Decomposition> {
    decompose_with(povm, &Tolerances::default())
}

/// Prepares `povm`, merges prepared outcomes sharing a projector and
/// extracts the first simplex vertex found at every step.
pub fn decompose_with(povm: &WeightedPovm, tol: &Tolerances) -> Result<Decomposition> {
    let prepared = prepare_rank1(povm, tol)?;
    let columns = Columns::new(&prepared, tol)?;
    columns.peel(prepared.relabel.clone(), tol, |coeffs| {
        first_vertex_on_support(coeffs, &columns.lp, tol)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremalityReason {
    MoreThanDSquaredOutcomes,
    LinearlyDependentElements,
    NotRankOne,
    Extremal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalityReport {
    pub is_extremal: bool,
    pub reason: ExtremalityReason,
    /// Coefficients (one per outcome) of a sub-POVM on a strictly smaller
    /// support, when one was found.
    pub witness: Option<Vec<f64>>,
}

/// Extremality test: all elements rank-1, at most `d^2` of them, and the
/// vectors `a_i (v_i, 1)` linearly independent.
///
/// Non-extremal rank-1 inputs report `LinearlyDependentElements` together
/// with a witness whenever the simplex finds a vertex on a smaller support.
pub fn check_extremal(povm: &WeightedPovm, tol: &Tolerances) -> Result<ExtremalityReport> {
    let d = povm.dim();
    for o in povm.outcomes() {
        let eig = hermitian_eigendecompose(&o.element)?;
        if rank_of_spectrum(&eig.eigenvalues, tol.rank) > 1 {
            return Ok(ExtremalityReport {
                is_extremal: false,
                reason: ExtremalityReason::NotRankOne,
                witness: None,
            });
        }
    }
    let elements: Vec<&HermitianMatrix> = povm.outcomes().iter().map(|o| &o.element).collect();
    let lp = lp_from_elements(d, &elements)?;
    let n = povm.len();
    if n <= d * d {
        let weighted: Vec<Vec<f64>> = povm
            .outcomes()
            .iter()
            .enumerate()
            .map(|(i, o)| lp.a().column(i).iter().map(|v| v * o.weight).collect())
            .collect();
        if DenseMatrix::from_columns(&weighted).rank(tol.rank) == n {
            return Ok(ExtremalityReport {
                is_extremal: true,
                reason: ExtremalityReason::Extremal,
                witness: None,
            });
        }
    }
    // More than d^2 vectors of length d^2 are always dependent; a verified
    // witness is the more informative report, the count is the fallback.
    let witness = match find_vertex_with(&lp, tol)?.outcome {
        Feasibility::Vertex(v) if v.support().len() < n && v.verify(&lp) => Some(v.x),
        _ => None,
    };
    let reason = if witness.is_none() && n > d * d {
        ExtremalityReason::MoreThanDSquaredOutcomes
    } else {
        ExtremalityReason::LinearlyDependentElements
    };
    Ok(ExtremalityReport {
        is_extremal: false,
        reason,
        witness,
    })
}

/// Looks for `nu` with `v_i . nu < 0` for every `i` (all vectors in one open
/// half-space). Returns a unit `nu` with margin `v_i . nu < -1e-9 |v_i|`, or
/// `None` when no such direction exists, which is necessary for the
/// corresponding elements to be combinable into a POVM. Zero vectors lie in no
/// open half-space, and neither does an empty list.
pub fn separating_vector(vectors: &[BlochVector]) -> Option<Vec<f64>> {
    let k = vectors.first()?.0.len();
    if vectors.iter().any(|v| v.0.len() != k || v.norm() <= 1e-12) {
        return None;
    }
    // Variables (nu+, nu-, s): -v.nu+ + v.nu- - s = |v|, i.e. v.nu <= -|v|.
    let n = vectors.len();
    let mut rows = Vec::with_capacity(n);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = vec![0.0; 2 * k + n];
        for (j, &c) in v.0.iter().enumerate() {
            row[j] = -c;
            row[k + j] = c;
        }
        row[2 * k + i] = -1.0;
        rows.push(row);
    }
    let b = vectors.iter().map(BlochVector::norm).collect();
    let lp = StandardLp::from_rows(&rows, b).ok()?;
    let x = match crate::simplex::find_vertex(&lp).ok()? {
        Feasibility::Vertex(v) => v.x,
        Feasibility::Infeasible(_) => return None,
    };
    let nu: Vec<f64> = (0..k).map(|j| x[j] - x[k + j]).collect();
    let norm = nu.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let nu: Vec<f64> = nu.into_iter().map(|v| v / norm).collect();
    vectors
        .iter()
        .all(|v| v.dot(&nu) < -1e-9 * v.norm())
        .then_some(nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn stern_gerlach_lp() {
        let prep = prepare_rank1(&standard::stern_gerlach_z(), &tol()).unwrap();
        let lp = build_feasibility_lp(&prep).unwrap();
        let expect = DenseMatrix::from_rows(&[
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![1.0, -1.0],
            vec![1.0, 1.0],
        ]);
        assert_eq!(lp.a(), &expect);
        assert_eq!(lp.b(), &[0.0, 0.0, 0.0, 2.0]);
    }

    #[test]
    fn bb84_lp_columns() {
        let prep = prepare_rank1(&standard::bb84(), &tol()).unwrap();
        let lp = build_feasibility_lp(&prep).unwrap();
        let expect = [
            [0.0, 0.0, 1.0, 1.0],
            [0.0, 0.0, -1.0, 1.0],
            [1.0, 0.0, 0.0, 1.0],
            [-1.0, 0.0, 0.0, 1.0],
        ];
        for (j, col) in expect.iter().enumerate() {
            assert!(crate::dense::max_abs_diff(&lp.a().column(j), col) < 1e-15);
        }
        assert!(lp.residual(&prep.povm.weights()) < 1e-9);
    }

    #[test]
    fn extremal_input_splits_with_probability_one() {
        let prep = prepare_rank1(&standard::trine(), &tol()).unwrap();
        let lp = build_feasibility_lp(&prep).unwrap();
        let a = prep.povm.weights();
        let step = extract_step(&a, &lp, &tol()).unwrap();
        assert_eq!(step.probability, 1.0);
        assert!(step.residual.is_none());
        assert_eq!(step.vertex, a);
    }

    #[test]
    fn pentagon_first_step_from_stated_vertex() {
        let s5 = 5f64.sqrt();
        let a = [0.4; 5];
        let x = [2.0 / s5, 0.0, 1.0 - 1.0 / s5, 1.0 - 1.0 / s5, 0.0];
        let (p, residual) = split_off_vertex(&a, &x, &tol()).unwrap();
        assert!((p - 1.0 / s5).abs() < 1e-15);
        let expect = [
            0.0,
            2.0 / (5.0 - s5),
            (3.0 - s5) / (5.0 - s5),
            (3.0 - s5) / (5.0 - s5),
            2.0 / (5.0 - s5),
        ];
        let residual = residual.unwrap();
        assert_eq!(residual[0], 0.0);
        assert!(crate::dense::max_abs_diff(&residual, &expect) < 1e-14);
    }

    #[test]
    fn every_step_shrinks_support() {
        let prep = prepare_rank1(&standard::pentagon(), &tol()).unwrap();
        let lp = build_feasibility_lp(&prep).unwrap();
        let mut a = prep.povm.weights();
        loop {
            let before = a.iter().filter(|&&v| v > 0.0).count();
            let step = extract_step(&a, &lp, &tol()).unwrap();
            match step.residual {
                None => break,
                Some(r) => {
                    let after = r.iter().filter(|&&v| v > 0.0).count();
                    assert!(after < before);
                    assert!(r.iter().zip(&a).all(|(n, o)| *o > 0.0 || *n == 0.0));
                    assert!(lp.residual(&r) < 1e-9);
                    a = r;
                }
            }
        }
    }

    #[test]
    fn bb84_gives_two_stern_gerlachs() {
        let d = decompose(&standard::bb84()).unwrap();
        assert_eq!(d.terms.len(), 2);
        for t in &d.terms {
            assert!((t.probability - 0.5).abs() < 1e-12);
            assert_eq!(t.extremal.len(), 2);
        }
        assert!(d.reconstruction_residual(&standard::bb84()) < 1e-12);
    }

    #[test]
    fn pentagon_probabilities() {
        let d = decompose(&standard::pentagon()).unwrap();
        let s5 = 5f64.sqrt();
        let mut probs: Vec<f64> = d.terms.iter().map(|t| t.probability).collect();
        probs.sort_by(f64::total_cmp);
        let q = (1.0 - 1.0 / s5) / 2.0;
        let mut expect = [1.0 / s5, q, q];
        expect.sort_by(f64::total_cmp);
        assert!(crate::dense::max_abs_diff(&probs, &expect) < 1e-12);
        assert!(d.terms.iter().all(|t| t.extremal.len() == 3));
    }

    #[test]
    fn coin_toss_needs_one_measurement() {
        let p = standard::coin_toss();
        let d = decompose(&p).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].probability, 1.0);
        assert_eq!(d.terms[0].extremal.len(), 2);
        assert_eq!(d.groups[0].members, vec![(0, 0.5), (1, 0.5)]);
        assert!(d.reconstruction_residual(&p) < 1e-12);
    }

    #[test]
    fn extremality_reports() {
        let r = check_extremal(&standard::stern_gerlach_z(), &tol()).unwrap();
        assert_eq!(r.reason, ExtremalityReason::Extremal);
        let r = check_extremal(&standard::trine(), &tol()).unwrap();
        assert!(r.is_extremal);
        let r = check_extremal(&standard::pentagon(), &tol()).unwrap();
        assert_eq!(r.reason, ExtremalityReason::LinearlyDependentElements);
        let w = r.witness.unwrap();
        assert_eq!(w.iter().filter(|&&v| v > 0.0).count(), 3);
        let r = check_extremal(&standard::coin_toss(), &tol()).unwrap();
        assert_eq!(r.reason, ExtremalityReason::NotRankOne);
    }

    #[test]
    fn more_than_d_squared_still_yields_witness() {
        let elements = standard::regular_polygon_elements(6);
        let p = crate::validate_povm(&elements, 2, &tol()).unwrap();
        let r = check_extremal(&p, &tol()).unwrap();
        assert_eq!(r.reason, ExtremalityReason::LinearlyDependentElements);
        let w = r.witness.unwrap();
        assert!(w.iter().filter(|&&v| v > 0.0).count() <= 4);
    }

    #[test]
    fn separating_vectors() {
        let v = BlochVector(vec![0.3, -0.4, 0.5]);
        let minus = BlochVector(v.0.iter().map(|x| -x).collect());
        assert!(separating_vector(&[v, minus]).is_none());

        let octant = [
            BlochVector(vec![1.0, 0.1, 0.2]),
            BlochVector(vec![0.2, 1.0, 0.1]),
            BlochVector(vec![0.3, 0.3, 1.0]),
        ];
        let nu = separating_vector(&octant).unwrap();
        assert!(octant.iter().all(|v| v.dot(&nu) < 0.0));

        assert!(separating_vector(&[BlochVector(vec![0.0; 3])]).is_none());
    }
}
