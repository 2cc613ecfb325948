use std::fmt;
use std::sync::Arc;

use ndarray::Array1;

use super::{QuantumError, Result, C64};

/// Ordered, unique symbolic labels for a Hilbert-space basis, shared cheaply
/// between states and operators on the same space.
#[derive(Clone, PartialEq, Eq)]
pub struct BasisLabels(Arc<Vec<String>>);

impl BasisLabels {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(QuantumError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Self(Arc::new(labels)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// Index of a label, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }
}

impl fmt::Debug for BasisLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A normalized pure state over a labeled basis.
///
/// Construction normalizes and rejects non-finite or zero input, so a value
/// of this type always satisfies `|‖ψ‖² - 1| ≤ 1e-12`.
#[derive(Clone, Debug)]
pub struct StateVector {
    labels: BasisLabels,
    amps: Array1<C64>,
}

impl StateVector {
    pub fn new(labels: BasisLabels, amps: Array1<C64>) -> Result<Self> {
        if labels.len() != amps.len() {
            return Err(QuantumError::LabelCount(labels.len(), amps.len()));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuantumError::NonFinite);
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(QuantumError::ZeroVector);
        }
        Ok(Self {
            labels,
            amps: amps / C64::new(norm, 0.0),
        })
    }

    /// The basis state `|i⟩`.
    pub fn basis_state(labels: BasisLabels, i: usize) -> Self {
        let mut amps = Array1::zeros(labels.len());
        amps[i] = C64::new(1.0, 0.0);
        Self { labels, amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn labels(&self) -> &BasisLabels {
        &self.labels
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(QuantumError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}
