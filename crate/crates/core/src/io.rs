//! JSON input schema shared by the command-line front end.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::jacobian_model::{build_model, InsertionWord, JacobianModel, PairingInput};
use crate::rational::to_i64;
use crate::surfaces::{odd_ruled, product_ruled, SurfaceData};
use crate::wall_geometry::{WallGeometry, WallInput};

pub const SCHEMA_VERSION: u32 = 1;

fn check_version(v: Option<u32>) -> Result<()> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::InvalidInput(format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"))),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed input: {e}")))
}

/// A model, a wall and optionally an insertion word.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct DeltaInput {
    #[serde(default)]
    pub schema_version: Option<u32>,
    #[serde(flatten)]
    pub model: PairingInput,
    pub wall: WallInput,
    #[serde(default)]
    pub word: Option<InsertionWord>,
}

impl DeltaInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let input: DeltaInput = parse(text)?;
        check_version(input.schema_version)?;
        Ok(input)
    }

    pub fn build(&self) -> Result<(JacobianModel, WallGeometry)> {
        let model = build_model(&self.model)?;
        let p = &self.model.pairings;
        let integral = |x, what: &str| {
            to_i64(x).ok_or_else(|| Error::InvalidInput(format!("{what} must be an integer for a wall")))
        };
        let zeta2 = integral(&p.zeta2, "zeta2")?;
        let zeta_k = integral(&p.zeta_k, "zetaK")?;
        let wall = WallGeometry::from_input(&self.wall, self.model.q as i64, zeta2, zeta_k)?;
        Ok((model, wall))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceSpec {
    ProductRuled { g: i64 },
    OddRuled { g: i64 },
    Custom(SurfaceData),
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<SurfaceData> {
        match self {
            SurfaceSpec::ProductRuled { g } => product_ruled(*g),
            SurfaceSpec::OddRuled { g } => odd_ruled(*g),
            SurfaceSpec::Custom(s) => {
                s.validate()?;
                Ok(s.clone())
            }
        }
    }
}

/// A surface together with the wall type `(w, p1)` to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct WallsInput {
    #[serde(default)]
    pub schema_version: Option<u32>,
    pub surface: SurfaceSpec,
    pub w: Vec<i64>,
    pub p1: i64,
    #[serde(default)]
    pub bound: Option<i64>,
    #[serde(default)]
    pub alpha: Option<Vec<i64>>,
}

impl WallsInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let input: WallsInput = parse(text)?;
        check_version(input.schema_version)?;
        Ok(input)
    }
}

/// Parses `"1,-2,0"`.
pub fn parse_vector(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad vector entry {x:?} in {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const L0: &str = r#"{
        "schema_version": 1, "q": 1, "a_blocks": [1],
        "pairings": {"zeta2": -1, "zetaK": 1, "zetaAlpha": 2, "sigmaZeta": 1, "sigmaAlpha": 1},
        "wall": {"p1": -1, "zetaW": -1, "w2": -1, "wK": 1}
    }"#;

    #[test]
    fn delta_input_roundtrip() {
        let input = DeltaInput::from_json(L0).unwrap();
        assert_eq!(input.model.pairings.zeta_alpha, q(2));
        let (model, wall) = input.build().unwrap();
        assert_eq!(model.vol(), q(1));
        assert_eq!((wall.d(), wall.l()), (1, 0));
    }

    #[test]
    fn schema_errors() {
        assert!(DeltaInput::from_json(&L0.replace("\"schema_version\": 1", "\"schema_version\": 2")).is_err());
        assert!(DeltaInput::from_json("{").is_err());
        let bad = L0.replace("\"zeta2\": -1", "\"zeta2\": \"-1/2\"");
        assert!(DeltaInput::from_json(&bad).unwrap().build().is_err());
    }

    #[test]
    fn walls_input() {
        let w =
            WallsInput::from_json(r#"{"surface": {"kind": "product_ruled", "g": 1}, "w": [1, 1], "p1": -2}"#).unwrap();
        assert_eq!(w.surface.build().unwrap().k, vec![0, -2]);
        let custom = r#"{"surface": {"kind": "custom", "name": "x", "q": 0, "basis": ["f", "s"],
            "gram": [[0, 1], [1, -1]], "K": [-1, -2], "Sigma": [1, 0]}, "w": [0, 1], "p1": -3}"#;
        assert!(WallsInput::from_json(custom).unwrap().surface.build().is_ok());
        assert_eq!(parse_vector("1, -2,0").unwrap(), vec![1, -2, 0]);
        assert!(parse_vector("1,a").is_err());
    }
}
