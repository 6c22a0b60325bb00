use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureBlock, FeatureVector, Schema};
use crate::text_norm::Label;

/// Labeled feature matrix with one schema for all rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    schema: Schema,
    rows: Vec<Vec<f64>>,
    labels: Vec<Label>,
}

impl Dataset {
    pub fn new(schema: Schema, rows: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::param(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        if let Some((i, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != schema.len())
        {
            return Err(Error::param(format!(
                "row {i} has {} values, schema has {}",
                r.len(),
                schema.len()
            )));
        }
        Ok(Dataset {
            schema,
            rows,
            labels,
        })
    }

    pub fn from_vectors(vectors: Vec<FeatureVector>) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::param("no feature vectors"));
        };
        let schema = first.schema.clone();
        let mut rows = Vec::with_capacity(vectors.len());
        let mut labels = Vec::with_capacity(vectors.len());
        for (i, v) in vectors.into_iter().enumerate() {
            if let Some(idx) = schema.first_difference(&v.schema) {
                return Err(mismatch(&schema, &v.schema, idx));
            }
            let label = v
                .label
                .ok_or_else(|| Error::param(format!("vector {i} has no label")))?;
            rows.push(v.values);
            labels.push(label);
        }
        Dataset::new(schema, rows, labels)
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.schema.len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    /// Instances per class, indexed by `Label::index`.
    pub fn class_counts(&self) -> [usize; 2] {
        let mut c = [0; 2];
        for l in &self.labels {
            c[l.index()] += 1;
        }
        c
    }

    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            schema: self.schema.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    pub fn select_columns(&self, schema: Schema, columns: &[usize]) -> Dataset {
        debug_assert_eq!(schema.len(), columns.len());
        Dataset {
            schema,
            rows: self
                .rows
                .iter()
                .map(|r| columns.iter().map(|&c| r[c]).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Drops every column of `block` (the emoji ablation).
    pub fn without_block(&self, block: FeatureBlock) -> Dataset {
        let (schema, keep) = self.schema.without_block(block);
        self.select_columns(schema, &keep)
    }

    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Dataset> {
        Dataset::new(self.schema.clone(), self.rows.clone(), labels)
    }

    pub fn to_vectors(&self) -> Vec<FeatureVector> {
        self.rows
            .iter()
            .zip(&self.labels)
            .map(|(r, l)| FeatureVector {
                values: r.clone(),
                schema: self.schema.clone(),
                label: Some(*l),
            })
            .collect()
    }
}

pub(crate) fn mismatch(expected: &Schema, found: &Schema, index: usize) -> Error {
    let name = |s: &Schema| {
        s.defs()
            .get(index)
            .map_or_else(|| "<none>".to_string(), |d| d.name.clone())
    };
    Error::SchemaMismatch {
        index,
        expected: name(expected),
        found: name(found),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checks() {
        let s = Schema::generic(["a", "b"]);
        assert!(Dataset::new(s.clone(), vec![vec![1.0]], vec![Label::Positive]).is_err());
        assert!(Dataset::new(s.clone(), vec![vec![1.0, 2.0]], vec![]).is_err());
        let d = Dataset::new(
            s,
            vec![vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]],
            vec![Label::Positive, Label::Negative, Label::Positive],
        )
        .unwrap();
        assert_eq!(d.class_counts(), [2, 1]);
        let sub = d.subset(&[2, 1]);
        assert_eq!(sub.rows(), &[vec![5.0, 6.0], vec![3.0, 4.0]]);
        assert_eq!(Dataset::from_vectors(d.to_vectors()).unwrap(), d);
    }

    #[test]
    fn mixed_schemas_rejected() {
        let a = FeatureVector {
            values: vec![1.0],
            schema: Schema::generic(["a"]),
            label: Some(Label::Positive),
        };
        let mut b = a.clone();
        b.schema = Schema::generic(["b"]);
        match Dataset::from_vectors(vec![a, b]) {
            Err(Error::SchemaMismatch {
                index,
                expected,
                found,
            }) => {
                assert_eq!((index, expected.as_str(), found.as_str()), (0, "a", "b"));
            }
            other => panic!("{other:?}"),
        }
    }
}
