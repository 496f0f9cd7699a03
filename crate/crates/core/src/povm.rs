//! POVM data model: validation, the rank-1 preparation step and the relabel
//! map used for classical post-processing.

use std::collections::BTreeMap;

use crate::linalg::{hermitian_eigendecompose, rank_of_spectrum, HermitianMatrix};
use crate::{Error, Result, Tolerances};

/// One nonzero outcome `a * E` with `tr(E) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Identifier of the outcome. For validated POVMs this is the index of the
    /// element in the raw input list; for prepared POVMs the prepared index.
    pub label: usize,
    pub weight: f64,
    pub element: HermitianMatrix,
}

impl Outcome {
    /// `a * E`.
    pub fn operator(&self) -> HermitianMatrix {
        self.element.scale(self.weight)
    }
}

/// A POVM stored as positive weights times unit-trace elements.
///
/// Zero elements are not stored; outcomes keep the order and labels of the
/// input they were built from.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPovm {
    dim: usize,
    outcomes: Vec<Outcome>,
}

impl WeightedPovm {
    /// Assembles a POVM without validation. Used for intermediate results whose
    /// completeness holds by construction.
    pub fn from_outcomes(dim: usize, outcomes: Vec<Outcome>) -> Self {
        Self { dim, outcomes }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn weights(&self) -> Vec<f64> {
        self.outcomes.iter().map(|o| o.weight).collect()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.outcomes.iter().map(|o| o.label).collect()
    }

    /// `sum_i a_i E_i`.
    pub fn total(&self) -> HermitianMatrix {
        self.outcomes
            .iter()
            .fold(HermitianMatrix::zeros(self.dim), |acc, o| {
                acc + o.operator()
            })
    }

    /// Largest elementwise deviation of `sum_i a_i E_i` from the identity.
    pub fn completeness_residual(&self) -> f64 {
        self.total()
            .max_abs_diff(&HermitianMatrix::identity(self.dim))
    }

    /// `a_i E_i` summed per label.
    pub fn aggregate_by_label(&self) -> BTreeMap<usize, HermitianMatrix> {
        let mut out: BTreeMap<usize, HermitianMatrix> = BTreeMap::new();
        for o in &self.outcomes {
            let op = o.operator();
            out.entry(o.label)
                .and_modify(|m| *m = &*m + &op)
                .or_insert(op);
        }
        out
    }
}

/// Where each prepared outcome came from: `entries[l]` is the label of the
/// original outcome that prepared outcome `l` was split from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelabelMap {
    entries: Vec<usize>,
}

impl RelabelMap {
    pub fn new(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn original_of(&self, prepared: usize) -> Option<usize> {
        self.entries.get(prepared).copied()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A rank-1 POVM statistically equivalent to some original POVM through
/// `relabel`. Prepared outcomes are labeled `0..N̄`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedPovm {
    pub povm: WeightedPovm,
    pub relabel: RelabelMap,
}

impl PreparedPovm {
    /// Pushes every prepared outcome through the relabel map and sums per
    /// original label.
    pub fn coarse_grain(&self) -> BTreeMap<usize, HermitianMatrix> {
        let mut out: BTreeMap<usize, HermitianMatrix> = BTreeMap::new();
        for o in self.povm.outcomes() {
            let target = self.relabel.original_of(o.label).expect("relabel is total");
            let op = o.operator();
            out.entry(target)
                .and_modify(|m| *m = &*m + &op)
                .or_insert(op);
        }
        out
    }
}

/// Checks a raw list of operators and factors it into a [`WeightedPovm`].
///
/// Elements with trace at or below `tol.zero_weight` are dropped. Labels are
/// the positions in `raw`.
pub fn validate_povm(
    raw: &[HermitianMatrix],
    dim: usize,
    tol: &Tolerances,
) -> Result<WeightedPovm> {
    if raw.is_empty() {
        return Err(Error::EmptyPovm);
    }
    for (index, m) in raw.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                index,
                expected: dim,
                found: m.dim(),
            });
        }
    }
    for (index, m) in raw.iter().enumerate() {
        let min_eigenvalue = hermitian_eigendecompose(m)?.min_eigenvalue();
        if min_eigenvalue < -tol.psd {
            return Err(Error::NotPsd {
                index,
                min_eigenvalue,
            });
        }
    }
    let outcomes: Vec<Outcome> = raw
        .iter()
        .enumerate()
        .filter_map(|(label, m)| {
            let weight = m.trace();
            (weight > tol.zero_weight).then(|| Outcome {
                label,
                weight,
                element: m.scale(1.0 / weight),
            })
        })
        .collect();
    if outcomes.is_empty() {
        return Err(Error::EmptyPovm);
    }
    let povm = WeightedPovm::from_outcomes(dim, outcomes);
    let residual = raw
        .iter()
        .fold(HermitianMatrix::zeros(dim), |acc, m| &acc + m)
        .max_abs_diff(&HermitianMatrix::identity(dim));
    if residual > tol.completeness {
        return Err(Error::NotComplete { residual });
    }
    Ok(povm)
}

/// Splits every element of rank `r > 1` into `r` rank-1 outcomes along its
/// eigenbasis (ascending eigenvalue order). Rank-1 elements pass through as
/// they are.
///
/// Degenerate eigenspaces are split along whatever orthonormal basis the
/// eigensolver returns; any choice is statistically equivalent.
pub fn prepare_rank1(povm: &WeightedPovm, tol: &Tolerances) -> Result<PreparedPovm> {
    let mut outcomes = Vec::new();
    let mut relabel = Vec::new();
    for o in povm.outcomes() {
        let eig = hermitian_eigendecompose(&o.element)?;
        if rank_of_spectrum(&eig.eigenvalues, tol.rank) <= 1 {
            relabel.push(o.label);
            outcomes.push(Outcome {
                label: outcomes.len(),
                weight: o.weight,
                element: o.element.clone(),
            });
            continue;
        }
        let cutoff = tol.rank * eig.max_abs_eigenvalue().max(1.0);
        for (lambda, w) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            if lambda.abs() <= cutoff {
                continue;
            }
            relabel.push(o.label);
            outcomes.push(Outcome {
                label: outcomes.len(),
                weight: o.weight * lambda,
                element: HermitianMatrix::outer(w),
            });
        }
    }
    Ok(PreparedPovm {
        povm: WeightedPovm::from_outcomes(povm.dim(), outcomes),
        relabel: RelabelMap::new(relabel),
    })
}

/// Compares two POVMs after summing `a_i E_i` per label. Labels present in only
/// one of them are compared against the zero operator.
pub fn povm_equal(a: &WeightedPovm, b: &WeightedPovm, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    label_maps_close(&a.aggregate_by_label(), &b.aggregate_by_label(), a.dim()) <= tol
}

/// Largest elementwise difference between two label-indexed operator maps.
pub(crate) fn label_maps_close(
    a: &BTreeMap<usize, HermitianMatrix>,
    b: &BTreeMap<usize, HermitianMatrix>,
    dim: usize,
) -> f64 {
    let zero = HermitianMatrix::zeros(dim);
    a.keys()
        .chain(b.keys())
        .map(|k| {
            a.get(k)
                .unwrap_or(&zero)
                .max_abs_diff(b.get(k).unwrap_or(&zero))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn raw(ms: &[HermitianMatrix]) -> Result<WeightedPovm> {
        validate_povm(ms, 2, &Tolerances::default())
    }

    #[test]
    fn projective_measurement() {
        let p = raw(&[
            HermitianMatrix::diagonal(&[1.0, 0.0]),
            HermitianMatrix::diagonal(&[0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(p.weights(), vec![1.0, 1.0]);
        assert_eq!(p.labels(), vec![0, 1]);
    }

    #[test]
    fn bb84_weights_are_half() {
        let p = raw(&standard::bb84_elements()).unwrap();
        assert_eq!(p.len(), 4);
        for o in p.outcomes() {
            assert!((o.weight - 0.5).abs() < 1e-15);
            assert!((o.element.trace() - 1.0).abs() < 1e-15);
        }
        assert!(
            p.outcomes()[2].element.max_abs_diff(
                &HermitianMatrix::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap()
            ) < 1e-15
        );
    }

    #[test]
    fn incomplete_set_rejected() {
        let z = HermitianMatrix::diagonal(&[1.0, 0.0]);
        assert!(matches!(
            raw(&[z.clone(), z]),
            Err(Error::NotComplete { .. })
        ));
    }

    #[test]
    fn negative_element_rejected_with_index() {
        let r = raw(&[
            HermitianMatrix::diagonal(&[1.5, 0.0]),
            HermitianMatrix::diagonal(&[-0.5, 1.0]),
        ]);
        assert!(matches!(r, Err(Error::NotPsd { index: 1, .. })));
    }

    #[test]
    fn zero_elements_dropped_but_labels_kept() {
        let p = raw(&[
            HermitianMatrix::zeros(2),
            HermitianMatrix::diagonal(&[1.0, 0.0]),
            HermitianMatrix::diagonal(&[0.0, 1.0]),
        ])
        .unwrap();
        assert_eq!(p.labels(), vec![1, 2]);
    }

    #[test]
    fn all_zero_is_empty() {
        assert_eq!(raw(&[HermitianMatrix::zeros(2)]), Err(Error::EmptyPovm));
        assert_eq!(raw(&[]), Err(Error::EmptyPovm));
    }

    #[test]
    fn dimension_mismatch() {
        let r = raw(&[HermitianMatrix::identity(3)]);
        assert!(matches!(r, Err(Error::DimensionMismatch { index: 0, .. })));
    }

    #[test]
    fn rank1_input_passes_through() {
        let p = standard::bb84();
        let prep = prepare_rank1(&p, &Tolerances::default()).unwrap();
        assert_eq!(prep.relabel.entries(), &[0, 1, 2, 3]);
        for (a, b) in p.outcomes().iter().zip(prep.povm.outcomes()) {
            assert_eq!(a.weight, b.weight);
            assert_eq!(a.element, b.element);
        }
    }

    #[test]
    fn coin_toss_preparation() {
        let p = standard::coin_toss();
        let prep = prepare_rank1(&p, &Tolerances::default()).unwrap();
        assert_eq!(prep.povm.len(), 3);
        assert_eq!(prep.relabel.entries(), &[0, 1, 1]);
        let ket0 = HermitianMatrix::diagonal(&[1.0, 0.0]);
        let ket1 = HermitianMatrix::diagonal(&[0.0, 1.0]);
        let expect = [(0.5, &ket0), (0.5, &ket0), (1.0, &ket1)];
        for (o, (w, e)) in prep.povm.outcomes().iter().zip(expect) {
            assert!((o.weight - w).abs() < 1e-12);
            assert!(o.element.max_abs_diff(e) < 1e-12);
        }
        assert!(label_maps_close(&prep.coarse_grain(), &p.aggregate_by_label(), 2) < 1e-9);
    }

    #[test]
    fn identity_splits_into_basis() {
        let p = raw(&[HermitianMatrix::identity(2)]).unwrap();
        let prep = prepare_rank1(&p, &Tolerances::default()).unwrap();
        assert_eq!(prep.povm.len(), 2);
        assert_eq!(prep.relabel.entries(), &[0, 0]);
    }

    #[test]
    fn equality_by_label() {
        let bb84 = standard::bb84();
        assert!(povm_equal(&bb84, &bb84, 1e-12));
        // 1/2 P_z + 1/2 P_x assembled outcome by outcome.
        let z = standard::stern_gerlach_z();
        let x = standard::stern_gerlach_x();
        let mixed: Vec<Outcome> = z
            .outcomes()
            .iter()
            .map(|o| Outcome {
                weight: 0.5 * o.weight,
                ..o.clone()
            })
            .chain(x.outcomes().iter().map(|o| Outcome {
                label: o.label + 2,
                weight: 0.5 * o.weight,
                element: o.element.clone(),
            }))
            .collect();
        assert!(povm_equal(
            &bb84,
            &WeightedPovm::from_outcomes(2, mixed),
            1e-12
        ));
        assert!(!povm_equal(&z, &x, 1e-6));
    }

    #[test]
    fn validation_idempotent() {
        let p = standard::pentagon();
        let ops: Vec<HermitianMatrix> = p.outcomes().iter().map(Outcome::operator).collect();
        let again = validate_povm(&ops, 2, &Tolerances::default()).unwrap();
        for (a, b) in p.outcomes().iter().zip(again.outcomes()) {
            assert!((a.weight - b.weight).abs() <= 1e-12);
            assert!(a.element.max_abs_diff(&b.element) <= 1e-12);
        }
    }
}
