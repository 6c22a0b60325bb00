use serde::{Deserialize, Serialize};

/// Per-feature (min, max) fitted on training rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinMax {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl MinMax {
    pub fn fit<R: AsRef<[f64]>>(rows: &[R]) -> MinMax {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut min = vec![f64::INFINITY; width];
        let mut max = vec![f64::NEG_INFINITY; width];
        for r in rows {
            for (j, &v) in r.as_ref().iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        if rows.is_empty() {
            min.clear();
            max.clear();
        }
        MinMax { min, max }
    }

    /// Maps into [0, 1], clamping values outside the fitted range. Constant
    /// features map to 0.
    pub fn apply_value(&self, j: usize, v: f64) -> f64 {
        let range = self.max[j] - self.min[j];
        if range <= 0.0 {
            0.0
        } else {
            ((v - self.min[j]) / range).clamp(0.0, 1.0)
        }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(j, &v)| self.apply_value(j, v))
            .collect()
    }

    pub fn apply_all<R: AsRef<[f64]>>(&self, rows: &[R]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.apply(r.as_ref())).collect()
    }
}
