//! Construction configs (`crflat-config-v1`) and the data sidecar
//! (`crflat-sidecar-v1`) holding `r, t, u, Re v` next to a constructed `F`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::construct::RigidModelData;
use crate::error::{Error, Result};
use crate::series::io::{holo_from_terms, holo_to_terms, HoloTerm, SeriesFile};
use crate::series::{HoloSeries, Series};

pub const CONFIG_FORMAT: &str = "crflat-config-v1";
pub const SIDECAR_FORMAT: &str = "crflat-sidecar-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructConfig {
    pub format: String,
    pub order: u32,
    pub rho: Vec<HoloTerm>,
    #[serde(default)]
    pub u_seed: Vec<HoloTerm>,
}

impl ConstructConfig {
    pub fn new(order: u32, rho: &HoloSeries, seed: &HoloSeries) -> Self {
        ConstructConfig {
            format: CONFIG_FORMAT.to_string(),
            order,
            rho: holo_to_terms(rho),
            u_seed: holo_to_terms(seed),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ConstructConfig = serde_json::from_str(text)?;
        if cfg.format != CONFIG_FORMAT {
            return Err(Error::Format(format!(
                "expected format {CONFIG_FORMAT:?}, found {:?}",
                cfg.format
            )));
        }
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn rho(&self) -> Result<HoloSeries> {
        holo_from_terms(&self.rho)
    }

    pub fn seed(&self) -> Result<HoloSeries> {
        holo_from_terms(&self.u_seed)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub format: String,
    pub r: SeriesFile,
    pub t: SeriesFile,
    pub u: SeriesFile,
    pub rev: SeriesFile,
}

impl From<&RigidModelData> for Sidecar {
    fn from(d: &RigidModelData) -> Self {
        Sidecar {
            format: SIDECAR_FORMAT.to_string(),
            r: SeriesFile::from(&d.r),
            t: SeriesFile::from(&d.t),
            u: SeriesFile::from(&d.u),
            rev: SeriesFile::from(&d.rev),
        }
    }
}

impl TryFrom<Sidecar> for RigidModelData {
    type Error = Error;

    fn try_from(s: Sidecar) -> Result<Self> {
        if s.format != SIDECAR_FORMAT {
            return Err(Error::Format(format!(
                "expected format {SIDECAR_FORMAT:?}, found {:?}",
                s.format
            )));
        }
        Ok(RigidModelData {
            r: Series::try_from(s.r)?,
            t: Series::try_from(s.t)?,
            u: Series::try_from(s.u)?,
            rev: Series::try_from(s.rev)?,
        })
    }
}

pub fn sidecar_to_json(d: &RigidModelData) -> String {
    let mut out = serde_json::to_string_pretty(&Sidecar::from(d)).expect("serializable");
    out.push('\n');
    out
}

pub fn read_sidecar(path: &Path) -> Result<RigidModelData> {
    let s: Sidecar = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    RigidModelData::try_from(s)
}

pub fn write_sidecar(path: &Path, d: &RigidModelData) -> Result<()> {
    std::fs::write(path, sidecar_to_json(d))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct;
    use crate::series::C64;

    #[test]
    fn config_roundtrip() {
        let rho = HoloSeries::polynomial(vec![C64::new(0.1, 0.0), C64::new(0.0, 0.8)]);
        let seed = HoloSeries::polynomial(vec![C64::new(0.5, -0.5)]);
        let cfg = ConstructConfig::new(12, &rho, &seed);
        let back = ConstructConfig::from_json(&cfg.to_json()).unwrap();
        assert_eq!(back.rho().unwrap(), rho);
        assert_eq!(back.seed().unwrap(), seed);
        assert_eq!(back.order, 12);
    }

    #[test]
    fn config_defaults_and_errors() {
        let text = r#"{"format":"crflat-config-v1","order":8,"rho":[{"exp":1,"re":1.0,"im":0.0}]}"#;
        let cfg = ConstructConfig::from_json(text).unwrap();
        assert_eq!(cfg.seed().unwrap(), HoloSeries::zero());
        assert!(ConstructConfig::from_json(&text.replace("v1", "v2")).is_err());
    }

    #[test]
    fn sidecar_roundtrip() {
        let built = construct(&HoloSeries::z(), &HoloSeries::z(), 8).unwrap();
        let text = sidecar_to_json(&built.data);
        let s: Sidecar = serde_json::from_str(&text).unwrap();
        let d = RigidModelData::try_from(s).unwrap();
        assert_eq!(d.u, built.data.u);
        assert_eq!(d.rev, built.data.rev);
        assert_eq!(sidecar_to_json(&d), text);
    }
}
