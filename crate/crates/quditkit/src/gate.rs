//! The gate type: a validated unitary with a site signature.

use crate::error::{Error, Result};
use crate::matrix::CMat;
use serde::{Deserialize, Serialize};

/// Serialization identity of a gate: a registry name plus parameters, used
/// when writing circuits to JSON. Gates built by hand from raw matrices have
/// no spec and serialize through the explicit-matrix fallback.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

impl GateSpec {
    pub fn new(name: impl Into<String>, params: serde_json::Value) -> Self {
        GateSpec {
            name: name.into(),
            params,
        }
    }

    pub fn bare(name: impl Into<String>) -> Self {
        GateSpec::new(name, serde_json::Value::Null)
    }
}

/// A unitary acting on one or more qudit sites.
///
/// The signature lists the local dimension of each site the gate touches, in
/// site order with site 0 most significant; the matrix is dense over the
/// product space. Unitarity is enforced at construction, so a `Gate` value is
/// always safe to apply.
#[derive(Clone, Debug)]
pub struct Gate {
    signature: Vec<usize>,
    matrix: CMat,
    spec: Option<GateSpec>,
}

/// Entrywise tolerance for the `U U^dag = I` check at gate construction.
pub const GATE_UNITARITY_TOL: f64 = 1e-10;

impl Gate {
    /// Validate and wrap a matrix. Fails if the signature does not multiply
    /// out to the matrix size, or the matrix is not unitary to
    /// [`GATE_UNITARITY_TOL`].
    pub fn new(signature: Vec<usize>, matrix: CMat) -> Result<Self> {
        if signature.is_empty() {
            return Err(Error::dimension("gate signature must name at least one site"));
        }
        if let Some(&d) = signature.iter().find(|&&d| d < 2) {
            return Err(Error::dimension(format!(
                "gate signature contains dimension {d}; sites have at least two levels"
            )));
        }
        let size: usize = signature.iter().product();
        if !matrix.is_square() || matrix.rows() != size {
            return Err(Error::dimension(format!(
                "gate matrix is {}x{} but the signature {:?} needs {size}x{size}",
                matrix.rows(),
                matrix.cols(),
                signature
            )));
        }
        if !matrix.is_unitary(GATE_UNITARITY_TOL) {
            return Err(Error::numeric(
                "gate matrix is not unitary within 1e-10".to_string(),
            ));
        }
        Ok(Gate {
            signature,
            matrix,
            spec: None,
        })
    }

    /// Attach a serialization spec (registry name and parameters).
    pub fn with_spec(mut self, spec: GateSpec) -> Self {
        self.spec = Some(spec);
        self
    }

    pub fn signature(&self) -> &[usize] {
        &self.signature
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn spec(&self) -> Option<&GateSpec> {
        self.spec.as_ref()
    }

    /// Number of sites the gate touches.
    pub fn arity(&self) -> usize {
        self.signature.len()
    }

    /// Dimension of the product space the matrix acts on.
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    /// Inverse gate. The serialization spec is dropped because the inverse of
    /// a named gate is generally a different registry entry.
    pub fn dagger(&self) -> Gate {
        Gate {
            signature: self.signature.clone(),
            matrix: self.matrix.dagger(),
            spec: None,
        }
    }
}

/// Gate-level wrapper over [`crate::matrix::equal_up_to_global_phase`]:
/// true when the two matrices differ only by one overall phase factor.
/// Mismatched sizes compare as false.
pub fn equal_up_to_global_phase(a: &Gate, b: &Gate, tol: f64) -> bool {
    crate::matrix::equal_up_to_global_phase(a.matrix(), b.matrix(), tol)
}
