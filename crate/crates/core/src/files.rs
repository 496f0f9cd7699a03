//! JSON-facing file records.
//!
//! Matrices are nested arrays of `[re, im]` pairs, one inner array per row.
//! Labels are zero-based indices into the input element list.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decompose::{ColumnGroup, Decomposition, Term};
use crate::linalg::{Complex64, HermitianMatrix};
use crate::povm::{validate_povm, Outcome, RelabelMap, WeightedPovm};
use crate::{Error, Result, Tolerances};

pub type MatrixGrid = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_grid(m: &HermitianMatrix) -> MatrixGrid {
    m.rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

/// Parses a `dim x dim` grid. `index` is reported in dimension errors.
pub fn grid_to_matrix(grid: &MatrixGrid, dim: usize, index: usize) -> Result<HermitianMatrix> {
    let bad = |found| Error::DimensionMismatch {
        index,
        expected: dim,
        found,
    };
    if grid.len() != dim {
        return Err(bad(grid.len()));
    }
    if let Some(row) = grid.iter().find(|r| r.len() != dim) {
        return Err(bad(row.len()));
    }
    let entries = grid
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    HermitianMatrix::new(dim, entries)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmFile {
    pub dim: usize,
    pub elements: Vec<MatrixGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl PovmFile {
    pub fn from_elements(dim: usize, elements: &[HermitianMatrix]) -> Self {
        Self {
            dim,
            elements: elements.iter().map(matrix_to_grid).collect(),
            labels: None,
        }
    }

    pub fn matrices(&self) -> Result<Vec<HermitianMatrix>> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.elements.len() {
                return Err(Error::InvalidFile(format!(
                    "{} labels for {} elements",
                    labels.len(),
                    self.elements.len()
                )));
            }
        }
        if self.dim < 2 {
            return Err(Error::DimensionTooSmall(self.dim));
        }
        self.elements
            .iter()
            .enumerate()
            .map(|(i, g)| grid_to_matrix(g, self.dim, i))
            .collect()
    }

    pub fn to_povm(&self, tol: &Tolerances) -> Result<WeightedPovm> {
        validate_povm(&self.matrices()?, self.dim, tol)
    }

    /// Display name of original outcome `index`.
    pub fn label(&self, index: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(index).cloned())
            .unwrap_or_else(|| index.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub representative: usize,
    /// `[prepared label, share]` pairs.
    pub members: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeEntry {
    /// Weight of this prepared outcome within the term.
    pub weight: f64,
    pub projector: MatrixGrid,
    pub prepared_label: usize,
    pub original_label: usize,
    /// Representative of the merged column, present only for merged outcomes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub probability: f64,
    pub outcomes: Vec<OutcomeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub dim: usize,
    /// Original label of each prepared label.
    pub relabel: Vec<usize>,
    /// May be omitted when no prepared outcomes were merged.
    #[serde(default)]
    pub groups: Vec<GroupEntry>,
    pub terms: Vec<TermEntry>,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        let merged: Vec<usize> = d
            .groups
            .iter()
            .filter(|g| g.members.len() > 1)
            .map(|g| g.representative)
            .collect();
        let terms = d
            .terms
            .iter()
            .enumerate()
            .map(|(k, t)| TermEntry {
                probability: t.probability,
                outcomes: d
                    .expanded_outcomes(k)
                    .into_iter()
                    .map(|o| OutcomeEntry {
                        weight: o.weight,
                        projector: matrix_to_grid(&o.element),
                        prepared_label: o.prepared_label,
                        original_label: o.original_label,
                        group: merged.contains(&o.group).then_some(o.group),
                    })
                    .collect(),
            })
            .collect();
        Self {
            dim: d.dim,
            relabel: d.relabel.entries().to_vec(),
            groups: d
                .groups
                .iter()
                .map(|g| GroupEntry {
                    representative: g.representative,
                    members: g.members.clone(),
                })
                .collect(),
            terms,
        }
    }

    /// Regroups the outcomes of every term into merged columns.
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let invalid = |msg: String| Err(Error::InvalidFile(msg));
        let mut terms = Vec::with_capacity(self.terms.len());
        let mut seen: BTreeMap<usize, ()> = BTreeMap::new();
        for (k, t) in self.terms.iter().enumerate() {
            let mut columns: Vec<Outcome> = Vec::new();
            for (i, o) in t.outcomes.iter().enumerate() {
                match self.relabel.get(o.prepared_label) {
                    Some(&orig) if orig == o.original_label => {}
                    _ => {
                        return invalid(format!(
                        "term {k} outcome {i}: prepared label {} does not map to original label {}",
                        o.prepared_label, o.original_label
                    ))
                    }
                }
                let key = o.group.unwrap_or(o.prepared_label);
                seen.insert(key, ());
                match columns.iter_mut().find(|c| c.label == key) {
                    Some(c) => c.weight += o.weight,
                    None => columns.push(Outcome {
                        label: key,
                        weight: o.weight,
                        element: grid_to_matrix(&o.projector, self.dim, i)?,
                    }),
                }
            }
            terms.push(Term {
                probability: t.probability,
                extremal: WeightedPovm::from_outcomes(self.dim, columns),
            });
        }
        let mut groups: Vec<ColumnGroup> = if self.groups.is_empty() {
            seen.keys()
                .map(|&l| ColumnGroup {
                    representative: l,
                    members: vec![(l, 1.0)],
                })
                .collect()
        } else {
            self.groups
                .iter()
                .map(|g| ColumnGroup {
                    representative: g.representative,
                    members: g.members.clone(),
                })
                .collect()
        };
        groups.sort_by_key(|g| g.representative);
        Ok(Decomposition {
            dim: self.dim,
            relabel: RelabelMap::new(self.relabel.clone()),
            groups,
            terms,
        })
    }

    /// `sum_k p_k w_ki P_i` keyed by original label, read straight from the
    /// listed outcomes.
    pub fn reconstruct(&self) -> Result<BTreeMap<usize, HermitianMatrix>> {
        let mut out: BTreeMap<usize, HermitianMatrix> = BTreeMap::new();
        for t in &self.terms {
            for (i, o) in t.outcomes.iter().enumerate() {
                let op = grid_to_matrix(&o.projector, self.dim, i)?.scale(t.probability * o.weight);
                out.entry(o.original_label)
                    .and_modify(|m| *m = &*m + &op)
                    .or_insert(op);
            }
        }
        Ok(out)
    }

    /// Largest elementwise deviation of [`Self::reconstruct`] from `original`.
    pub fn residual_against(&self, original: &WeightedPovm) -> Result<f64> {
        Ok(crate::povm::label_maps_close(
            &self.reconstruct()?,
            &original.aggregate_by_label(),
            self.dim,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{decompose, standard};

    #[test]
    fn povm_file_parses() {
        let json = r#"{"dim": 2, "elements": [
            [[[1,0],[0,0]],[[0,0],[0,0]]],
            [[[0,0],[0,0]],[[0,0],[1,0]]]
        ], "labels": ["up", "down"]}"#;
        let f: PovmFile = serde_json::from_str(json).unwrap();
        let p = f.to_povm(&Tolerances::default()).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(f.label(1), "down");
    }

    #[test]
    fn wrong_grid_shape() {
        let f = PovmFile {
            dim: 2,
            elements: vec![vec![vec![[1.0, 0.0]]]],
            labels: None,
        };
        assert_eq!(
            f.matrices(),
            Err(Error::DimensionMismatch {
                index: 0,
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn decomposition_round_trip() {
        for p in [
            standard::bb84(),
            standard::pentagon(),
            standard::coin_toss(),
        ] {
            let d = decompose(&p).unwrap();
            let file = DecompositionFile::from_decomposition(&d);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back: DecompositionFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back, file);
            assert!(back.to_decomposition().unwrap().approx_eq(&d, 1e-12));
            assert!(back.residual_against(&p).unwrap() < 1e-12);
        }
    }

    #[test]
    fn coin_toss_file_lists_group() {
        let d = decompose(&standard::coin_toss()).unwrap();
        let file = DecompositionFile::from_decomposition(&d);
        let groups: Vec<Option<usize>> = file.terms[0].outcomes.iter().map(|o| o.group).collect();
        assert_eq!(groups, vec![Some(0), Some(0), None]);
    }

    #[test]
    fn relabel_inconsistency_is_rejected() {
        let d = decompose(&standard::bb84()).unwrap();
        let mut file = DecompositionFile::from_decomposition(&d);
        file.terms[0].outcomes[0].original_label = 3;
        assert!(matches!(
            file.to_decomposition(),
            Err(Error::InvalidFile(_))
        ));
    }
}
