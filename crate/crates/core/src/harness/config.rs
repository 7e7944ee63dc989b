//! JSON model configuration.
//!
//! Fractions are JSON strings (`"1/3"`, `"-2"`) or JSON integers, parsed
//! exactly. Cell labels in subalgebra blocks are 1-based.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boolalg::{BoolElem, Subalgebra};
use crate::error::{Error, Result};
use crate::geometry::{Embedding, MAX_BASE_DEPTH};
use crate::model::{Cell, NoiseModel, RandomVariable};
use crate::scalar::{format_rational, parse_rational, Rational};

/// Largest point count a configuration may describe.
pub const MAX_CONFIG_POINTS: usize = 1 << 20;

/// An exact rational read from a fraction string or an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Fraction, D::Error> {
        struct FractionVisitor;

        impl Visitor<'_> for FractionVisitor {
            type Value = Fraction;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a fraction string like \"1/3\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Fraction, E> {
                parse_rational(v).map(Fraction).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Fraction, E> {
                Ok(Fraction(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Fraction, E> {
                Ok(Fraction(Rational::from_integer(v.into())))
            }
        }

        d.deserialize_any(FractionVisitor)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub probs: Vec<Fraction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingConfig {
    pub points: Vec<Fraction>,
}

fn default_depth() -> u32 {
    4
}

fn default_exhaustive_limit() -> usize {
    64
}

fn is_default_depth(d: &u32) -> bool {
    *d == default_depth()
}

fn is_default_limit(l: &usize) -> bool {
    *l == default_exhaustive_limit()
}

fn is_zero(s: &u64) -> bool {
    *s == 0
}

fn is_exact(b: &Backend) -> bool {
    *b == Backend::Exact
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub cells: Vec<CellConfig>,
    /// Named subalgebras as lists of 1-based cell blocks.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subalgebras: BTreeMap<String, Vec<Vec<usize>>>,
    /// Named random variables, values in mixed-radix point order.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<Fraction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingConfig>,
    #[serde(default, skip_serializing_if = "is_exact")]
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub seed: u64,
    #[serde(default = "default_depth", skip_serializing_if = "is_default_depth")]
    pub depth: u32,
    /// Largest point count for which elimination-based and exhaustive
    /// checks run.
    #[serde(default = "default_exhaustive_limit", skip_serializing_if = "is_default_limit")]
    pub exhaustive_limit: usize,
}

/// A validated configuration with its objects built.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub model: NoiseModel,
    pub subalgebras: Vec<(String, Subalgebra)>,
    pub vectors: Vec<(String, RandomVariable)>,
    pub embedding: Option<Embedding>,
}

impl Experiment {
    pub fn vector(&self, name: &str) -> Option<&RandomVariable> {
        self.vectors.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn subalgebra(&self, name: &str) -> Option<&Subalgebra> {
        self.subalgebras.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

impl ModelConfig {
    pub fn from_json(text: &str) -> Result<ModelConfig> {
        let cfg: ModelConfig = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        cfg.build()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("configuration serializes");
        s.push('\n');
        s
    }

    /// A configuration describing `model` with default settings.
    pub fn from_model(model: &NoiseModel) -> ModelConfig {
        ModelConfig {
            cells: model
                .cells()
                .iter()
                .map(|c| CellConfig {
                    k: Some(c.k()),
                    probs: c.probs().iter().cloned().map(Fraction).collect(),
                })
                .collect(),
            subalgebras: BTreeMap::new(),
            vectors: BTreeMap::new(),
            embedding: None,
            backend: Backend::Exact,
            seed: 0,
            depth: default_depth(),
            exhaustive_limit: default_exhaustive_limit(),
        }
    }

    pub fn build(&self) -> Result<Experiment> {
        let mut cells = Vec::with_capacity(self.cells.len());
        for (i, c) in self.cells.iter().enumerate() {
            if let Some(k) = c.k {
                if k != c.probs.len() {
                    return Err(Error::Config {
                        path: format!("cells[{i}].k"),
                        message: format!("k = {k} but {} probabilities given", c.probs.len()),
                    });
                }
            }
            let probs = c.probs.iter().map(|f| f.0.clone()).collect();
            cells.push(Cell::new(probs).map_err(|e| e.at(format!("cells[{i}].probs")))?);
        }
        let points = cells
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(c.k()).filter(|&n| n <= MAX_CONFIG_POINTS));
        if points.is_none() {
            return Err(Error::Config {
                path: "cells".into(),
                message: format!("more than {MAX_CONFIG_POINTS} points"),
            });
        }
        let model = NoiseModel::new(cells).map_err(|e| e.at("cells"))?;
        let alg = model.algebra();
        let n = model.n_cells();

        let mut subalgebras = Vec::new();
        for (name, blocks) in &self.subalgebras {
            let mut elems = Vec::with_capacity(blocks.len());
            for (j, block) in blocks.iter().enumerate() {
                let path = format!("subalgebras.{name}[{j}]");
                if let Some(&bad) = block.iter().find(|&&c| c == 0 || c > n) {
                    return Err(Error::Config {
                        path,
                        message: format!("cell label {bad} is not in 1..={n}"),
                    });
                }
                elems.push(BoolElem::from_cells(n, block.iter().map(|c| c - 1)).map_err(|e| e.at(path))?);
            }
            let sub = alg
                .subalgebra(elems)
                .map_err(|e| e.at(format!("subalgebras.{name}")))?;
            subalgebras.push((name.clone(), sub));
        }

        let mut vectors = Vec::new();
        for (name, values) in &self.vectors {
            let v = model
                .variable(values.iter().map(|f| f.0.clone()).collect())
                .map_err(|e| e.at(format!("vectors.{name}")))?;
            vectors.push((name.clone(), v));
        }

        let embedding = self
            .embedding
            .as_ref()
            .map(|e| {
                Embedding::new(&model, e.points.iter().map(|f| f.0.clone()).collect())
                    .map_err(|err| err.at("embedding.points"))
            })
            .transpose()?;

        if self.depth > MAX_BASE_DEPTH {
            return Err(Error::Config {
                path: "depth".into(),
                message: format!("depth {} exceeds {MAX_BASE_DEPTH}", self.depth),
            });
        }
        Ok(Experiment {
            model,
            subalgebras,
            vectors,
            embedding,
        })
    }
}

/// Reads, parses and validates a configuration file.
pub fn load_model_config(path: impl AsRef<Path>) -> Result<ModelConfig> {
    ModelConfig::from_json(&std::fs::read_to_string(path)?)
}
