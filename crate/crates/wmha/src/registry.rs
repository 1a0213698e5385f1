//! Runtime registry of construction strategies.
//!
//! Every way of producing a weak multiplier Hopf algebra instance —
//! the function algebra of a groupoid, its convolution algebra, the
//! separability-idempotent construction — is a [`Construction`]
//! registered under a kind name (`kg`, `cg`, `sep`). Composite kinds
//! `dual-of:<kind>` and `bidual-of:<kind>` (also accepted without the
//! suffix, defaulting to `kg`) wrap any registered kind with the
//! integral-based dual construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cg::build_cg;
use crate::duality::build_dual;
use crate::groupoid;
use crate::kg::build_kg;
use crate::sep;
use crate::wmha::Wmha;

/// Errors surfaced while resolving or running a construction.
#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown construction kind {0:?}")]
    UnknownKind(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("construction failed: {0}")]
    Build(String),
}

/// A named strategy for building an instance from a JSON input file.
pub trait Construction: Send + Sync {
    /// The kind name used on the command line (`--kind`).
    fn kind(&self) -> &'static str;
    /// One-line human description.
    fn describe(&self) -> &'static str;
    /// Builds the instance from parsed JSON input.
    fn build(&self, input: &serde_json::Value) -> Result<Arc<dyn Wmha>, RegistryError>;
}

struct KgConstruction;

impl Construction for KgConstruction {
    fn kind(&self) -> &'static str {
        "kg"
    }
    fn describe(&self) -> &'static str {
        "function algebra K(G) of a finite groupoid"
    }
    fn build(&self, input: &serde_json::Value) -> Result<Arc<dyn Wmha>, RegistryError> {
        let g = groupoid::from_json(input)
            .map_err(|e| RegistryError::Input(e.to_string()))?;
        Ok(Arc::new(
            build_kg(g).map_err(|e| RegistryError::Input(e.to_string()))?,
        ))
    }
}

struct CgConstruction;

impl Construction for CgConstruction {
    fn kind(&self) -> &'static str {
        "cg"
    }
    fn describe(&self) -> &'static str {
        "convolution algebra CG of a finite groupoid"
    }
    fn build(&self, input: &serde_json::Value) -> Result<Arc<dyn Wmha>, RegistryError> {
        let g = groupoid::from_json(input)
            .map_err(|e| RegistryError::Input(e.to_string()))?;
        Ok(Arc::new(
            build_cg(g).map_err(|e| RegistryError::Input(e.to_string()))?,
        ))
    }
}

struct SepConstruction;

impl Construction for SepConstruction {
    fn kind(&self) -> &'static str {
        "sep"
    }
    fn describe(&self) -> &'static str {
        "weak multiplier Hopf algebra of a separability idempotent"
    }
    fn build(&self, input: &serde_json::Value) -> Result<Arc<dyn Wmha>, RegistryError> {
        let data = sep::from_json(input)
            .map_err(|e| RegistryError::Input(e.to_string()))?;
        Ok(Arc::new(
            sep::build_sep_wmha(&data).map_err(|e| RegistryError::Input(e.to_string()))?,
        ))
    }
}

/// The registry mapping kind names to constructions.
pub struct Registry {
    entries: BTreeMap<&'static str, Box<dyn Construction>>,
}

impl Registry {
    /// A registry with the built-in constructions `kg`, `cg`, `sep`.
    pub fn builtin() -> Self {
        let mut entries: BTreeMap<&'static str, Box<dyn Construction>> = BTreeMap::new();
        for c in [
            Box::new(KgConstruction) as Box<dyn Construction>,
            Box::new(CgConstruction),
            Box::new(SepConstruction),
        ] {
            entries.insert(c.kind(), c);
        }
        Registry { entries }
    }

    /// Registered base kind names, in order.
    pub fn kinds(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, kind: &str) -> Option<&dyn Construction> {
        self.entries.get(kind).map(|b| b.as_ref())
    }

    /// Resolves a kind expression and builds the instance. Accepts a
    /// base kind or the composites `dual-of:<kind>` /
    /// `bidual-of:<kind>` (nesting allowed).
    pub fn build(
        &self,
        kind: &str,
        input: &serde_json::Value,
    ) -> Result<Arc<dyn Wmha>, RegistryError> {
        if let Some(rest) = kind.strip_prefix("dual-of:") {
            let primal = self.build(rest, input)?;
            let dual = build_dual(primal.as_ref())
                .map_err(|e| RegistryError::Build(e.to_string()))?;
            return Ok(Arc::new(dual));
        }
        if let Some(rest) = kind.strip_prefix("bidual-of:") {
            return self.build(&format!("dual-of:dual-of:{rest}"), input);
        }
        match self.get(kind) {
            Some(c) => c.build(input),
            None => Err(RegistryError::UnknownKind(kind.to_string())),
        }
    }

    /// Whether a kind expression is resolvable (without building).
    pub fn knows(&self, kind: &str) -> bool {
        if let Some(rest) = kind.strip_prefix("dual-of:") {
            return self.knows(rest);
        }
        if let Some(rest) = kind.strip_prefix("bidual-of:") {
            return self.knows(rest);
        }
        self.entries.contains_key(kind)
    }
}
