//! Model configuration: one TOML file with `geometry`, `hamiltonian`,
//! optional `spin_model`, and `run` sections.
//!
//! Semantic validation is a single pass that collects every violation
//! before rejecting, so a config with three mistakes reports all three.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::clifford::{CliffordElement, MonomialIndex};
use crate::error::{Error, Result};
use crate::geometry::ReflectionGeometry;
use crate::hamiltonian::{CrossTerm, HamiltonianSpec, HPlus};
use crate::spin::{build_spin_model, SpinModelKind};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub geometry: GeometryConfig,
    pub hamiltonian: Option<HamiltonianConfig>,
    pub spin_model: Option<SpinModelConfig>,
    #[serde(default)]
    pub run: RunConfig,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub chain: Option<ChainConfig>,
    pub pairs: Option<Vec<[u32; 2]>>,
    pub flavors: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub sites_per_side: u32,
    pub flavors: u32,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianConfig {
    #[serde(default)]
    pub h_minus: Vec<MonomialCoeff>,
    #[serde(default)]
    pub cross: Vec<CrossTermConfig>,
    pub h_plus: Option<HPlusConfig>,
    pub beta: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialCoeff {
    pub indices: Vec<u32>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossTermConfig {
    pub subset: Vec<u32>,
    #[serde(rename = "J")]
    pub j: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum HPlusConfig {
    /// The string "mirror" meaning H₊ = ϑ(H₋).
    Keyword(String),
    Terms(Vec<MonomialCoeff>),
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub beta: Option<Vec<f64>>,
    pub tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinModelConfig {
    pub kind: SpinModelKind,
    pub bonds: Vec<[u32; 2]>,
}

/// A config resolved into a geometry and a Hamiltonian spec.
pub struct BuiltModel {
    pub geometry: ReflectionGeometry,
    pub spec: HamiltonianSpec,
}

impl ModelConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: ModelConfig =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(format!("  - {e}")))?;
        let problems = config.validate();
        if problems.is_empty() {
            Ok(config)
        } else {
            Err(Error::InvalidConfig(
                problems.iter().map(|p| format!("  - {p}")).collect::<Vec<_>>().join("\n"),
            ))
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("  - cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// One-pass semantic validation; returns every violation found.
    pub fn validate(&self) -> Vec<String> {
        let mut problems = Vec::new();

        match (&self.geometry.chain, &self.geometry.pairs) {
            (Some(_), Some(_)) => {
                problems.push("geometry: give either `chain` or `pairs`, not both".into())
            }
            (None, None) => problems.push("geometry: one of `chain` or `pairs` is required".into()),
            (None, Some(_)) if self.geometry.flavors.is_none() => {
                problems.push("geometry: `flavors` is required with `pairs`".into())
            }
            _ => {}
        }
        if self.geometry.chain.is_some() && self.geometry.flavors.is_some() {
            problems.push("geometry: `flavors` belongs inside `chain`".into());
        }

        let geometry = match self.build_geometry() {
            Ok(g) => Some(g),
            Err(Error::InvalidConfig(_)) => None,
            Err(e) => {
                problems.push(e.to_string().replace('\n', " "));
                None
            }
        };

        let has_cross = self
            .hamiltonian
            .as_ref()
            .map(|h| !h.cross.is_empty())
            .unwrap_or(false);
        if has_cross && self.spin_model.is_some() {
            problems.push("exactly one of hamiltonian.cross or spin_model may be present".into());
        }

        if let Some(h) = &self.hamiltonian {
            if let Some(beta) = h.beta {
                if !(beta.is_finite() && beta > 0.0) {
                    problems.push(format!("hamiltonian: beta must be positive, got {beta}"));
                }
            }
            if let Some(HPlusConfig::Keyword(word)) = &h.h_plus {
                if word != "mirror" {
                    problems.push(format!(
                        "hamiltonian: h_plus must be \"mirror\" or a term list, got \"{word}\""
                    ));
                }
            }
            for (k, t) in h.cross.iter().enumerate() {
                if t.subset.is_empty() {
                    problems.push(format!("hamiltonian: cross term #{k} has an empty subset"));
                }
                if !t.j.is_finite() {
                    problems.push(format!("hamiltonian: cross term #{k} has non-finite J"));
                }
            }
        }

        if let Some(spin) = &self.spin_model {
            if spin.bonds.is_empty() {
                problems.push("spin_model: at least one bond is required".into());
            }
            if let Some(g) = &geometry {
                if g.flavors() != 4 {
                    problems.push(format!(
                        "spin_model: requires flavors = 4, geometry has {}",
                        g.flavors()
                    ));
                } else {
                    for bond in &spin.bonds {
                        if let Err(e) = build_spin_model(g, spin.kind, (bond[0], bond[1])) {
                            problems.push(format!("spin_model: {e}"));
                        }
                    }
                }
            }
        }

        if let Some(g) = &geometry {
            for v in g.validate() {
                problems.push(format!("geometry: {v}"));
            }
            if let Some(h) = &self.hamiltonian {
                if let Err(e) = self.build_spec_on(g, h) {
                    problems.push(e.to_string().replace('\n', " "));
                }
            }
        }

        problems
    }

    fn build_geometry(&self) -> Result<ReflectionGeometry> {
        if let Some(chain) = &self.geometry.chain {
            return ReflectionGeometry::chain(chain.sites_per_side, chain.flavors);
        }
        if let Some(pairs) = &self.geometry.pairs {
            let flavors = self.geometry.flavors.unwrap_or(1);
            let table: Vec<(u32, u32)> = pairs.iter().map(|p| (p[0], p[1])).collect();
            return ReflectionGeometry::from_pairs(&table, flavors);
        }
        Err(Error::InvalidConfig("  - geometry: nothing to build".into()))
    }

    fn element_from_terms(n: usize, terms: &[MonomialCoeff]) -> Result<CliffordElement> {
        CliffordElement::from_terms(
            n,
            terms
                .iter()
                .map(|t| {
                    MonomialIndex::from_indices(&t.indices).map(|m| (m, Complex64::new(t.re, t.im)))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    }

    fn build_spec_on(
        &self,
        geometry: &ReflectionGeometry,
        h: &HamiltonianConfig,
    ) -> Result<HamiltonianSpec> {
        let n = geometry.num_majoranas();
        let h_minus = Self::element_from_terms(n, &h.h_minus)?;
        let h_plus = match &h.h_plus {
            None | Some(HPlusConfig::Keyword(_)) => HPlus::Mirror,
            Some(HPlusConfig::Terms(terms)) => HPlus::Explicit(Self::element_from_terms(n, terms)?),
        };
        let mut cross: Vec<CrossTerm> = h
            .cross
            .iter()
            .map(|t| MonomialIndex::from_indices(&t.subset).map(|m| CrossTerm::new(m, t.j)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(spin) = &self.spin_model {
            for bond in &spin.bonds {
                cross.extend(build_spin_model(geometry, spin.kind, (bond[0], bond[1]))?);
            }
        }
        HamiltonianSpec::new(
            geometry.clone(),
            h_minus,
            cross,
            h_plus,
            h.beta.unwrap_or(1.0),
        )
    }

    /// Builds the geometry and the Hamiltonian spec, expanding any
    /// spin-model shorthand into cross terms.
    pub fn build(&self) -> Result<BuiltModel> {
        let problems = self.validate();
        if !problems.is_empty() {
            return Err(Error::InvalidConfig(
                problems.iter().map(|p| format!("  - {p}")).collect::<Vec<_>>().join("\n"),
            ));
        }
        let geometry = self.build_geometry()?;
        let default_h = HamiltonianConfig { h_minus: vec![], cross: vec![], h_plus: None, beta: None };
        let h = self.hamiltonian.as_ref().unwrap_or(&default_h);
        let spec = self.build_spec_on(&geometry, h)?;
        Ok(BuiltModel { geometry, spec })
    }

    /// The beta sweep for a run: the run section's list, else the
    /// hamiltonian's single beta, else 1.
    pub fn betas(&self) -> Vec<f64> {
        if let Some(list) = self.run.beta.as_ref().filter(|l| !l.is_empty()) {
            return list.clone();
        }
        vec![self.hamiltonian.as_ref().and_then(|h| h.beta).unwrap_or(1.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTEREXAMPLE: &str = r#"
        [geometry]
        chain = { sites_per_side = 1, flavors = 1 }

        [hamiltonian]
        cross = [ { subset = [1], J = -1.0 } ]
        beta = 1.0
    "#;

    #[test]
    fn counterexample_config_builds() {
        let config = ModelConfig::from_toml_str(COUNTEREXAMPLE).unwrap();
        let model = config.build().unwrap();
        assert_eq!(model.geometry.num_majoranas(), 2);
        assert_eq!(model.spec.cross.len(), 1);
        assert_eq!(model.spec.beta, 1.0);
        let h = model.spec.assemble().unwrap();
        assert_eq!(
            h.coefficient(&MonomialIndex::from_indices(&[1, 2]).unwrap()),
            Complex64::new(0.0, -1.0)
        );
    }

    #[test]
    fn spin_model_shorthand_expands() {
        let text = r#"
            [geometry]
            chain = { sites_per_side = 1, flavors = 4 }

            [spin_model]
            kind = "heisenberg"
            bonds = [[1, 2]]
        "#;
        let config = ModelConfig::from_toml_str(text).unwrap();
        let model = config.build().unwrap();
        assert_eq!(model.spec.cross.len(), 3);
    }

    #[test]
    fn violations_are_collected_in_one_pass() {
        let text = r#"
            [geometry]
            pairs = [[1, 1]]
            flavors = 1

            [hamiltonian]
            cross = [ { subset = [], J = 0.5 } ]

            [spin_model]
            kind = "ising"
            bonds = [[1, 1]]
        "#;
        let err = ModelConfig::from_toml_str(text).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("fixed point"), "{message}");
        assert!(message.contains("empty subset"), "{message}");
        assert!(message.contains("exactly one of"), "{message}");
    }

    #[test]
    fn explicit_h_plus_terms() {
        let text = r#"
            [geometry]
            chain = { sites_per_side = 2, flavors = 1 }

            [hamiltonian]
            h_minus = [ { indices = [1, 2], re = 0.0, im = -0.5 } ]
            h_plus = [ { indices = [3, 4], re = 0.0, im = 0.25 } ]
            beta = 2.0
        "#;
        let model = ModelConfig::from_toml_str(text).unwrap().build().unwrap();
        assert!(matches!(model.spec.h_plus, HPlus::Explicit(_)));
        assert_eq!(model.spec.beta, 2.0);
    }

    #[test]
    fn beta_sweep_resolution() {
        let config = ModelConfig::from_toml_str(COUNTEREXAMPLE).unwrap();
        assert_eq!(config.betas(), vec![1.0]);

        let text = format!("{COUNTEREXAMPLE}\n[run]\nbeta = [0.5, 1.0, 2.0]\n");
        let config = ModelConfig::from_toml_str(&text).unwrap();
        assert_eq!(config.betas(), vec![0.5, 1.0, 2.0]);
    }
}
