//! Intersection data of minimal ruled surfaces and enumeration of walls
//! `ζ = a e_0 - b e_1` (`a, b > 0`) inside the computable cone.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobian_model::Pairings;
use crate::rational::q;
use crate::wall_geometry::WallGeometry;

/// Admissible region `a_coeff · a > b_coeff · b` for `ζ = a e_0 - b e_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub a_coeff: i64,
    pub b_coeff: i64,
}

impl Cone {
    pub fn contains(&self, a: i64, b: i64) -> bool {
        self.a_coeff * a > self.b_coeff * b
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub name: String,
    pub q: i64,
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    #[serde(rename = "K")]
    pub k: Vec<i64>,
    #[serde(rename = "Sigma")]
    pub sigma: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<Cone>,
}

impl SurfaceData {
    /// Checks shapes, symmetry and `Σ² = 0`.
    pub fn custom(
        name: &str,
        q_: i64,
        basis: Vec<String>,
        gram: Vec<Vec<i64>>,
        k: Vec<i64>,
        sigma: Vec<i64>,
        cone: Option<Cone>,
    ) -> Result<Self> {
        let s = SurfaceData { name: name.to_string(), q: q_, basis, gram, k, sigma, cone };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.basis.len();
        if n < 2 {
            return Err(Error::InvalidInput("a surface needs at least two basis classes".into()));
        }
        if self.q < 0 {
            return Err(Error::InvalidInput(format!("negative irregularity {}", self.q)));
        }
        if self.gram.len() != n || self.gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!("Gram matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        if self.k.len() != n || self.sigma.len() != n {
            return Err(Error::InvalidInput(format!("K and Sigma need {n} coordinates")));
        }
        if self.dot(&self.sigma, &self.sigma) != 0 {
            return Err(Error::InvalidInput("Sigma must have square zero".into()));
        }
        Ok(())
    }

    pub fn dot(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                s += xi * self.gram[i][j] * yj;
            }
        }
        s
    }

    pub fn k_squared(&self) -> i64 {
        self.dot(&self.k, &self.k)
    }

    /// `ζ = a e_0 - b e_1`.
    pub fn zeta(&self, a: i64, b: i64) -> Vec<i64> {
        let mut v = vec![0; self.basis.len()];
        v[0] = a;
        v[1] = -b;
        v
    }

    /// Pairings among `Σ, ζ, K, α` for lattice vectors `ζ` and `α`.
    pub fn pairings(&self, zeta: &[i64], alpha: &[i64]) -> Pairings {
        Pairings {
            zeta2: q(self.dot(zeta, zeta)),
            zeta_k: q(self.dot(zeta, &self.k)),
            zeta_alpha: q(self.dot(zeta, alpha)),
            sigma_zeta: q(self.dot(&self.sigma, zeta)),
            sigma_alpha: q(self.dot(&self.sigma, alpha)),
            sigma_k: q(self.dot(&self.sigma, &self.k)),
            k2: q(self.k_squared()),
            k_alpha: q(self.dot(&self.k, alpha)),
            alpha2: q(self.dot(alpha, alpha)),
        }
    }
}

fn check_genus(g: i64) -> Result<()> {
    if g < 1 {
        return Err(Error::InvalidInput(format!("ruled surfaces need genus g >= 1, got {g}")));
    }
    Ok(())
}

/// `CP¹ × C_g`: basis `{f, C}` with `f·C = 1`, `K = (2g-2) f - 2C`, `Σ = f`.
pub fn product_ruled(g: i64) -> Result<SurfaceData> {
    check_genus(g)?;
    SurfaceData::custom(
        &format!("product_ruled(g={g})"),
        g,
        vec!["f".into(), "C".into()],
        vec![vec![0, 1], vec![1, 0]],
        vec![2 * g - 2, -2],
        vec![1, 0],
        Some(Cone { a_coeff: 1, b_coeff: g - 1 }),
    )
}

/// The non-trivial sphere bundle over `C_g`: basis `{f, σ}` with `σ² = -(2g-1)`,
/// `K = -f - 2σ`, `Σ = f`.
pub fn odd_ruled(g: i64) -> Result<SurfaceData> {
    check_genus(g)?;
    SurfaceData::custom(
        &format!("odd_ruled(g={g})"),
        g,
        vec!["f".into(), "sigma".into()],
        vec![vec![0, 1], vec![1, -(2 * g - 1)]],
        vec![-1, -2],
        vec![1, 0],
        Some(Cone { a_coeff: 2, b_coeff: 2 * g - 1 }),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnumeratedWall {
    pub a: i64,
    pub b: i64,
    pub zeta: Vec<i64>,
    pub geometry: WallGeometry,
    pub pairings: Pairings,
}

/// Walls `ζ = a e_0 - b e_1` with `1 ≤ a, b ≤ bound`, `ζ ≡ w (mod 2)`, `p1 ≤ ζ² < 0`,
/// inside the cone, whose data pass the wall checks. Empty when `p1 ≢ w² (mod 4)`.
pub fn enumerate_walls(
    surface: &SurfaceData,
    w: &[i64],
    p1: i64,
    bound: i64,
    alpha: Option<&[i64]>,
) -> Result<Vec<EnumeratedWall>> {
    surface.validate()?;
    let n = surface.basis.len();
    if bound <= 0 {
        return Err(Error::InvalidInput(format!("bound must be positive, got {bound}")));
    }
    if w.len() != n {
        return Err(Error::InvalidInput(format!("w needs {n} coordinates")));
    }
    let zero = vec![0; n];
    let alpha = alpha.unwrap_or(&zero);
    if alpha.len() != n {
        return Err(Error::InvalidInput(format!("alpha needs {n} coordinates")));
    }
    let w2 = surface.dot(w, w);
    let w_k = surface.dot(w, &surface.k);
    let mut out = Vec::new();
    if (p1 - w2).rem_euclid(4) != 0 {
        return Ok(out);
    }
    for a in 1..=bound {
        for b in 1..=bound {
            if surface.cone.is_some_and(|c| !c.contains(a, b)) {
                continue;
            }
            let zeta = surface.zeta(a, b);
            if zeta.iter().zip(w).any(|(z, x)| (z - x).rem_euclid(2) != 0) {
                continue;
            }
            let zeta2 = surface.dot(&zeta, &zeta);
            if !(p1 <= zeta2 && zeta2 < 0) || (zeta2 - p1).rem_euclid(4) != 0 {
                continue;
            }
            let zeta_k = surface.dot(&zeta, &surface.k);
            let zeta_w = surface.dot(&zeta, w);
            let Ok(geometry) = WallGeometry::new(p1, surface.q, zeta2, zeta_k, zeta_w, w2, w_k) else {
                continue;
            };
            let pairings = surface.pairings(&zeta, alpha);
            out.push(EnumeratedWall { a, b, zeta, geometry, pairings });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_surfaces() {
        let s1 = product_ruled(1).unwrap();
        assert_eq!(s1.k, vec![0, -2]);
        assert_eq!(s1.k_squared(), 0);
        assert_eq!(product_ruled(2).unwrap().k_squared(), -8);
        for g in 1..6 {
            let s = product_ruled(g).unwrap();
            assert_eq!(s.dot(&s.k, &[1, 0]), -2);
            assert_eq!(s.k_squared(), 8 * (1 - g));
        }
        assert!(product_ruled(0).is_err());
    }

    #[test]
    fn odd_surfaces() {
        for g in 1..6 {
            let s = odd_ruled(g).unwrap();
            assert_eq!(s.k_squared(), 8 * (1 - g));
            assert_eq!(s.dot(&s.k, &[1, 0]), -2);
            assert_eq!(s.gram[1][1].rem_euclid(2), 1);
        }
        assert_eq!(odd_ruled(1).unwrap().gram[1][1], -1);
        assert!(odd_ruled(0).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let s = product_ruled(2).unwrap();
        assert!(enumerate_walls(&s, &[1, 0], -5, 10, None).unwrap().is_empty());

        let s = product_ruled(1).unwrap();
        let walls = enumerate_walls(&s, &[1, 1], -2, 5, None).unwrap();
        let first = walls.iter().find(|w| (w.a, w.b) == (1, 1)).unwrap();
        assert_eq!(first.geometry.zeta2, -2);
        assert_eq!(first.geometry.l(), 0);
        assert!(walls.iter().all(|w| w.a > 0 && w.b > 0));
        assert!(enumerate_walls(&s, &[1, 1], -2, 0, None).is_err());
    }

    #[test]
    fn enumeration_respects_cone() {
        let s = odd_ruled(2).unwrap();
        for p1 in -40..0 {
            for w in [[1, 0], [0, 1], [1, 1], [0, 0]] {
                for wall in enumerate_walls(&s, &w, p1, 12, None).unwrap() {
                    assert!(2 * wall.a > 3 * wall.b);
                    assert!(wall.geometry.zeta2 >= p1);
                }
            }
        }
    }
}
