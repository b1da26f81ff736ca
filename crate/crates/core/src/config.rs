//! Run configuration: every tunable of the pipeline in one tree.
//!
//! Accepted as JSON (any subset of the tree) or as `key = value` lines with
//! dotted keys such as `bundler.fdeb.cycles = 4`. Values in `key = value`
//! form are read as JSON literals when they parse as one and as bare strings
//! otherwise. The key `seed` sets every seed at once.

use crate::bundling::BundlerParams;
use crate::error::{Error, Result};
use crate::layout::LayoutParams;
use crate::metrics::MetricSettings;
use crate::render::RenderStyle;
use crate::sparsify::SparsifyParams;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub sparsify: SparsifyParams,
    pub layout: LayoutParams,
    pub bundler: BundlerParams,
    pub metrics: MetricSettings,
    pub render: RenderStyle,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut tree = serde_json::to_value(Config::default())?;
        if text.trim_start().starts_with('{') {
            let patch: Value = serde_json::from_str(text)?;
            merge(&mut tree, patch, "")?;
        } else {
            for (i, raw) in text.lines().enumerate() {
                let line = raw.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
                    line: i + 1,
                    msg: format!("expected key = value, got '{line}'"),
                })?;
                let (key, value) = (key.trim(), value.trim());
                let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
                set_key(&mut tree, key, value).map_err(|msg| Error::Parse { line: i + 1, msg })?;
            }
        }
        let config: Config = serde_json::from_value(tree)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Config> {
        Config::parse(&std::fs::read_to_string(path)?)
    }

    /// Applies one `key = value` override on top of this config.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let mut tree = serde_json::to_value(&*self)?;
        let value = serde_json::from_str(value).unwrap_or_else(|_| Value::String(value.to_string()));
        set_key(&mut tree, key, value).map_err(|msg| Error::Parse { line: 0, msg })?;
        let config: Config = serde_json::from_value(tree)?;
        config.validate()?;
        *self = config;
        Ok(())
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.sparsify.seed = seed;
        self.layout.seed = seed;
        self.bundler.resistance.seed = seed;
    }

    pub fn validate(&self) -> Result<()> {
        self.layout.validate()?;
        self.bundler.fdeb.validate()?;
        self.bundler.epb.validate()?;
        self.metrics.validate()?;
        self.render.validate()?;
        if !(self.sparsify.factor > 0.0 && self.sparsify.factor.is_finite()) {
            return Err(Error::InvalidParam("sparsify.factor must be positive".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Flat `key = value` listing, readable back by [`Config::parse`].
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        flatten(&serde_json::to_value(self).expect("config serializes"), "", &mut out);
        out
    }
}

fn set_key(tree: &mut Value, key: &str, value: Value) -> std::result::Result<(), String> {
    if key == "seed" {
        let seed = value.as_u64().ok_or("seed must be a non-negative integer")?;
        for path in ["sparsify.seed", "layout.seed", "bundler.resistance.seed"] {
            set_key(tree, path, Value::from(seed))?;
        }
        return Ok(());
    }
    let mut node = tree;
    for part in key.split('.') {
        node = node
            .as_object_mut()
            .and_then(|o| o.get_mut(part))
            .ok_or_else(|| format!("unknown config key '{key}'"))?;
    }
    *node = value;
    Ok(())
}

fn merge(tree: &mut Value, patch: Value, prefix: &str) -> Result<()> {
    match patch {
        Value::Object(map) => {
            for (k, v) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                if path == "seed" {
                    set_key(tree, "seed", v).map_err(|msg| Error::Parse { line: 0, msg })?;
                    continue;
                }
                let slot = lookup(tree, &path)
                    .ok_or_else(|| Error::Parse {
                        line: 0,
                        msg: format!("unknown config key '{path}'"),
                    })?;
                if slot.is_object() && v.is_object() {
                    merge(tree, v, &path)?;
                } else {
                    *lookup(tree, &path).expect("checked above") = v;
                }
            }
            Ok(())
        }
        _ => Err(Error::Parse {
            line: 0,
            msg: "config must be a JSON object".into(),
        }),
    }
}

fn lookup<'a>(tree: &'a mut Value, path: &str) -> Option<&'a mut Value> {
    path.split('.').try_fold(tree, |node, part| node.as_object_mut()?.get_mut(part))
}

fn flatten(value: &Value, prefix: &str, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(v, &path, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&value.to_string());
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = Config::default();
        assert_eq!(Config::parse(&c.to_json()).unwrap(), c);
        assert_eq!(Config::parse(&c.to_key_values()).unwrap(), c);
    }

    #[test]
    fn key_values() {
        let c = Config::parse("# run\nbundler.fdeb.cycles = 4\nseed = 9\nlayout.algorithm = import\n").unwrap();
        assert_eq!(c.bundler.fdeb.cycles, 4);
        assert_eq!((c.sparsify.seed, c.layout.seed, c.bundler.resistance.seed), (9, 9, 9));
        assert_eq!(c.layout.algorithm, crate::layout::LayoutAlgorithm::Import);
    }

    #[test]
    fn json_subset() {
        let c = Config::parse(r#"{"sparsify": {"factor": 2.5}, "metrics": {"gammas": [1]}}"#).unwrap();
        assert_eq!(c.sparsify.factor, 2.5);
        assert_eq!(c.metrics.gammas, vec![1]);
        assert_eq!(c.layout, LayoutParams::default());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("bundler.fdeb.cycels = 4").is_err());
        assert!(Config::parse("no equals sign").is_err());
        assert!(Config::parse(r#"{"sparsify": {"fator": 1}}"#).is_err());
        assert!(Config::parse("sparsify.factor = -1").is_err());
        assert!(Config::parse("bundler.fdeb.cycles = many").is_err());
        assert!(Config::parse("[1, 2]").is_err());
    }

    #[test]
    fn set_overrides() {
        let mut c = Config::default();
        c.set("bundler.epb.distortion_limit", "3").unwrap();
        assert_eq!(c.bundler.epb.distortion_limit, 3.0);
        assert!(c.set("nope", "1").is_err());
    }
}
