//! Wall bookkeeping: dimension counts, ranks and sign conventions.
//!
//! Only pairings of `ζ` and `w` are stored, never lattice vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::sign;

/// `d`, `l_ζ`, `h(±ζ)` and `N_{±ζ}` for a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WallParams {
    pub d: i64,
    pub l: i64,
    pub h_plus: i64,
    pub h_minus: i64,
    pub n_plus: i64,
    pub n_minus: i64,
}

impl WallParams {
    /// True when `l_ζ = 0` and `h(ζ) + q = 0`, so the bundle on the `ζ` side is zero.
    pub fn empty_plus_side(&self, q: i64) -> bool {
        self.l == 0 && self.h_plus + q == 0
    }
}

pub fn wall_params(p1: i64, q: i64, zeta2: i64, zeta_k: i64) -> Result<WallParams> {
    if q < 0 {
        return Err(Error::InvalidWall(format!("q must be non-negative, got {q}")));
    }
    if !(p1 <= zeta2 && zeta2 < 0) {
        return Err(Error::InvalidWall(format!("need p1 <= zeta^2 < 0, got p1 = {p1}, zeta^2 = {zeta2}")));
    }
    if (zeta2 - p1).rem_euclid(4) != 0 {
        return Err(Error::InvalidWall(format!("zeta^2 - p1 = {} is not divisible by 4", zeta2 - p1)));
    }
    if (zeta_k - zeta2).rem_euclid(2) != 0 {
        return Err(Error::InvalidWall(format!(
            "h(zeta) is not an integer: zeta.K = {zeta_k} and zeta^2 = {zeta2} differ in parity"
        )));
    }
    let d = -p1 - 3 * (1 - q);
    let l = (zeta2 - p1) / 4;
    let h_plus = (zeta_k - zeta2) / 2 - 1;
    let h_minus = (-zeta_k - zeta2) / 2 - 1;
    for (side, h) in [("zeta", h_plus), ("-zeta", h_minus)] {
        if l + h + q < 0 {
            return Err(Error::InvalidWall(format!(
                "negative extension rank l + h({side}) + q = {} on the {side} side",
                l + h + q
            )));
        }
    }
    let p = WallParams { d, l, h_plus, h_minus, n_plus: l + h_plus + q - 1, n_minus: l + h_minus + q - 1 };
    debug_assert_eq!(p.n_plus + p.n_minus + q + 2 * p.l, p.d - 1);
    Ok(p)
}

/// `ε(ζ, w) = (-1)^(((ζ-w)/2)²)`.
pub fn eps_kotschick(zeta2: i64, zeta_w: i64, w2: i64) -> Result<i64> {
    let x = zeta2 - 2 * zeta_w + w2;
    if x.rem_euclid(4) != 0 {
        return Err(Error::InvalidInput(format!("(zeta - w)^2 = {x} is not divisible by 4")));
    }
    Ok(sign(x / 4))
}

/// `ε_S(w) = (-1)^((K·w + w²)/2)`.
pub fn eps_complex(w_k: i64, w2: i64) -> Result<i64> {
    let x = w_k + w2;
    if x.rem_euclid(2) != 0 {
        return Err(Error::InvalidInput(format!("K.w + w^2 = {x} is odd")));
    }
    Ok(sign(x / 2))
}

/// A wall `±ζ` of type `(w, p1)` through its pairings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallInput {
    pub p1: i64,
    #[serde(rename = "zetaW")]
    pub zeta_w: i64,
    pub w2: i64,
    #[serde(rename = "wK")]
    pub w_k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallGeometry {
    pub p1: i64,
    pub q: i64,
    pub zeta2: i64,
    #[serde(rename = "zetaK")]
    pub zeta_k: i64,
    #[serde(rename = "zetaW")]
    pub zeta_w: i64,
    pub w2: i64,
    #[serde(rename = "wK")]
    pub w_k: i64,
    #[serde(flatten)]
    pub params: WallParams,
}

impl WallGeometry {
    /// Validates the wall conditions and the parity relations forced by `ζ ≡ w (mod 2)`
    /// and the Wu formula `x² ≡ x·K (mod 2)`.
    pub fn new(p1: i64, q: i64, zeta2: i64, zeta_k: i64, zeta_w: i64, w2: i64, w_k: i64) -> Result<Self> {
        let params = wall_params(p1, q, zeta2, zeta_k)?;
        if (w2 - w_k).rem_euclid(2) != 0 {
            return Err(Error::InvalidWall(format!("w^2 = {w2} and w.K = {w_k} differ in parity")));
        }
        let diff2 = zeta2 - 2 * zeta_w + w2;
        if diff2.rem_euclid(4) != 0 {
            return Err(Error::InvalidWall(format!("zeta is not congruent to w mod 2: (zeta - w)^2 = {diff2}")));
        }
        if (diff2 / 4 - (zeta_k - w_k) / 2).rem_euclid(2) != 0 {
            return Err(Error::InvalidWall("((zeta - w)/2)^2 and ((zeta - w)/2).K differ in parity".into()));
        }
        if (p1 - w2).rem_euclid(4) != 0 {
            return Err(Error::InvalidWall(format!("p1 = {p1} is not congruent to w^2 = {w2} mod 4")));
        }
        Ok(WallGeometry { p1, q, zeta2, zeta_k, zeta_w, w2, w_k, params })
    }

    /// The wall `ζ = w`, the simplest parity-consistent choice.
    pub fn with_w_equal_zeta(p1: i64, q: i64, zeta2: i64, zeta_k: i64) -> Result<Self> {
        Self::new(p1, q, zeta2, zeta_k, zeta2, zeta2, zeta_k)
    }

    pub fn from_input(input: &WallInput, q: i64, zeta2: i64, zeta_k: i64) -> Result<Self> {
        Self::new(input.p1, q, zeta2, zeta_k, input.zeta_w, input.w2, input.w_k)
    }

    pub fn d(&self) -> i64 {
        self.params.d
    }

    pub fn l(&self) -> i64 {
        self.params.l
    }

    pub fn eps(&self) -> i64 {
        eps_kotschick(self.zeta2, self.zeta_w, self.w2).expect("validated on construction")
    }

    pub fn eps_s(&self) -> i64 {
        eps_complex(self.w_k, self.w2).expect("validated on construction")
    }

    pub fn empty_plus_side(&self) -> bool {
        self.params.empty_plus_side(self.q)
    }

    /// The same wall with `K` replaced by `-K`.
    pub fn flip_canonical(&self) -> Result<Self> {
        Self::new(self.p1, self.q, self.zeta2, -self.zeta_k, self.zeta_w, self.w2, -self.w_k)
    }

    pub fn require_l(&self, expected: i64) -> Result<()> {
        if self.l() == expected {
            Ok(())
        } else {
            Err(Error::WrongRegime { expected, found: self.l() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_examples() {
        let p = wall_params(-4, 0, -4, 0).unwrap();
        assert_eq!((p.d, p.l, p.h_plus, p.h_minus, p.n_plus, p.n_minus), (1, 0, 1, 1, 0, 0));
        let p = wall_params(-8, 2, -4, 2).unwrap();
        assert_eq!((p.d, p.l, p.h_plus, p.h_minus, p.n_plus, p.n_minus), (11, 1, 2, 0, 4, 2));
        assert_eq!(p.n_plus + p.n_minus + 2 + 2 * p.l, p.d - 1);
    }

    #[test]
    fn empty_side_flag() {
        // ζ² = -1, ζ·K = -1: h(ζ) = -1, so with q = 1 the ζ side is empty
        let p = wall_params(-1, 1, -1, -1).unwrap();
        assert!(p.empty_plus_side(1));
        assert!(!wall_params(-1, 1, -1, 1).unwrap().empty_plus_side(1));
    }

    #[test]
    fn rejects_invalid_walls() {
        assert!(wall_params(-4, 0, 0, 0).is_err());
        assert!(wall_params(-4, 0, -6, 0).is_err());
        assert!(wall_params(-5, 0, -4, 0).is_err());
        assert!(wall_params(-4, 0, -4, 1).is_err());
        // l + h(ζ) + q = -1 < 0
        assert!(wall_params(-2, 0, -2, 0).is_ok());
        assert!(wall_params(-2, 0, -2, -2).is_err());
        assert!(wall_params(-2, 0, -2, 2).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(eps_kotschick(-3, -3, -3).unwrap(), 1);
        assert_eq!(eps_kotschick(-4, 0, 0).unwrap(), -1);
        assert_eq!(eps_kotschick(-8, 2, 0).unwrap(), -1);
        assert!(eps_kotschick(-3, 0, 0).is_err());
        assert_eq!(eps_complex(0, 0).unwrap(), 1);
        assert_eq!(eps_complex(2, 0).unwrap(), -1);
        assert!(eps_complex(1, 0).is_err());
    }

    #[test]
    fn geometry_parity_checks() {
        let g = WallGeometry::with_w_equal_zeta(-8, 0, -4, 0).unwrap();
        assert_eq!(g.eps(), 1);
        assert_eq!(g.eps_s() * sign(g.params.h_plus), sign(g.d() + g.q) * g.eps());
        assert!(WallGeometry::new(-8, 0, -4, 0, 0, 1, 0).is_err());
        assert!(WallGeometry::new(-4, 0, -4, 0, -4, -8, 0).is_err());
    }
}
