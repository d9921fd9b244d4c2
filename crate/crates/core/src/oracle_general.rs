//! Evaluation of the general wall-crossing formula inside the model ring, for
//! `l_ζ ∈ {0, 1}`.
//!
//! The insertions become polynomials in a formal even variable `X` with ring
//! coefficients; each power `X^N` is then replaced by a signed Segre class of the
//! extension bundles and the result is integrated.

use crate::char_classes::{ch_direct_sum, ch_dual, segre_from_ch, ChernData};
use crate::closed_forms::{beyond_degree, DeltaValue, Path};
use crate::error::{Error, Result};
use crate::graded_ring::{GradedElement, GradedRing};
use crate::jacobian_model::{InsertionWord, JacobianModel};
use crate::rational::{frac, q, sign};
use crate::wall_geometry::WallGeometry;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionBundleData {
    pub k: u32,
    pub side: Side,
    pub ch: ChernData,
}

/// Chern characters of `E_ζ^{l-k,k}` and `E_{-ζ}^{k,l-k}`.
pub fn ch_extension_bundles(
    model: &JacobianModel,
    wall: &WallGeometry,
    l: i64,
    k: u32,
) -> Result<(ExtensionBundleData, ExtensionBundleData)> {
    if l >= 2 {
        return Err(Error::UnsupportedRegime(l));
    }
    if l < 0 || k as i64 > l {
        return Err(Error::InvalidInput(format!("stratum k = {k} does not exist for l = {l}")));
    }
    if model.q() as i64 != wall.q {
        return Err(Error::InvalidInput("model and wall disagree on q".into()));
    }
    let ring = model.ring();
    let rank_plus = ring.scalar(q(wall.params.h_plus + wall.q));
    let rank_minus = ring.scalar(q(wall.params.h_minus + wall.q));
    let mut plus = rank_plus + model.e_k_minus_2zeta();
    let mut minus = rank_minus + model.e_k_plus_2zeta();
    if l == 1 {
        let two_e = model.big_e().scale_int(2);
        let (zeta, kk) = (ring.zeta(), ring.canonical());
        let (plus_exp, minus_exp) = if k == 0 {
            (&zeta + &two_e, -(&(&zeta + &kk) + &two_e))
        } else {
            (&(&zeta - &kk) + &two_e, -(&zeta + &two_e))
        };
        plus += &plus_exp.exp_truncated()?;
        minus += &minus_exp.exp_truncated()?;
    }
    Ok((
        ExtensionBundleData { k, side: Side::Plus, ch: ChernData::from_ch(&plus)? },
        ExtensionBundleData { k, side: Side::Minus, ch: ChernData::from_ch(&minus)? },
    ))
}

/// Chern character of `E_ζ^{l-k,k} ⊕ (E_{-ζ}^{k,l-k})^∨`.
pub fn ch_pair(model: &JacobianModel, wall: &WallGeometry, l: i64, k: u32) -> Result<ChernData> {
    let (plus, minus) = ch_extension_bundles(model, wall, l, k)?;
    ch_direct_sum(&plus.ch, &ch_dual(&minus.ch))
}

/// Polynomial in `X` with ring coefficients; `coeffs[n]` multiplies `X^n`.
#[derive(Clone, Debug)]
struct XPoly {
    coeffs: Vec<GradedElement>,
}

impl XPoly {
    fn constant(c: GradedElement) -> Self {
        XPoly { coeffs: vec![c] }
    }

    /// `c0 + c1 X^shift`.
    fn binomial(c0: GradedElement, c1: GradedElement, shift: usize) -> Self {
        let ring = c0.ring().clone();
        let mut coeffs = vec![ring.zero(); shift + 1];
        coeffs[0] = c0;
        coeffs[shift] = &coeffs[shift] + &c1;
        XPoly { coeffs }
    }

    fn mul(&self, other: &XPoly) -> XPoly {
        let ring = self.coeffs[0].ring().clone();
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[i + j] += &(x * y);
                }
            }
        }
        XPoly { coeffs }
    }
}

/// Values of `X^N` after substitution, computed once per wall.
struct XTable {
    ring: GradedRing,
    shift: i64,
    sign_offset: Option<i64>,
    data: Vec<ChernData>,
    cache: Vec<Option<GradedElement>>,
}

impl XTable {
    /// `X^N = (-1)^(N - sign_offset) Σ_k s_(N - shift)(data_k)`, unsigned without an offset.
    fn new(ring: &GradedRing, shift: i64, sign_offset: Option<i64>, data: Vec<ChernData>) -> Self {
        XTable { ring: ring.clone(), shift, sign_offset, data, cache: Vec::new() }
    }

    fn get(&mut self, n: usize) -> Result<GradedElement> {
        if self.cache.len() <= n {
            self.cache.resize(n + 1, None);
        }
        if let Some(x) = &self.cache[n] {
            return Ok(x.clone());
        }
        let idx = n as i64 - self.shift;
        let mut out = self.ring.zero();
        if idx >= 0 {
            for data in &self.data {
                out += &segre_from_ch(data, idx)?;
            }
        }
        if self.sign_offset.is_some_and(|o| sign(n as i64 - o) < 0) {
            out = -out;
        }
        self.cache[n] = Some(out.clone());
        Ok(out)
    }

    fn substitute(&mut self, poly: &XPoly) -> Result<GradedElement> {
        let mut out = self.ring.zero();
        for (n, c) in poly.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &(c * &self.get(n)?);
            }
        }
        Ok(out)
    }
}

/// How to treat walls whose `ζ` side is empty (`l_ζ = 0`, `h(ζ) + q = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EmptySideBranch {
    /// Use the one-bundle substitution on such walls, the generic one elsewhere.
    #[default]
    Auto,
    /// Always use the two-bundle substitution.
    Generic,
}

fn check_model(model: &JacobianModel, wall: &WallGeometry) -> Result<()> {
    let p = model.pairings();
    if model.q() as i64 != wall.q || p.zeta2 != q(wall.zeta2) || p.zeta_k != q(wall.zeta_k) {
        return Err(Error::InvalidInput("model pairings disagree with the wall data".into()));
    }
    Ok(())
}

/// `δ(z)` for `l_ζ = 0` and any insertion word, evaluated in the ring.
pub fn delta_oracle_l0(
    model: &JacobianModel,
    wall: &WallGeometry,
    word: &InsertionWord,
    branch: EmptySideBranch,
) -> Result<DeltaValue> {
    wall.require_l(0)?;
    check_model(model, wall)?;
    word.validate(model.q())?;
    if word.odd_count() % 2 == 1 {
        return Ok(DeltaValue { value: q(0), path: Path::RingOracle, wall: wall.clone(), word: word.clone() });
    }
    if word.odd_count() == 0 && word.s == 0 {
        if let Some(v) = beyond_degree(wall, word.r, Path::RingOracle) {
            return Ok(v);
        }
    }
    word.check_degree(wall.d())?;
    let ring = model.ring();
    let p = model.pairings();
    let params = wall.params;

    let mut table = if branch == EmptySideBranch::Auto && wall.empty_plus_side() {
        if !model.e_k_minus_2zeta().is_zero() {
            return Err(Error::InvalidWall(
                "the zeta side is empty but e_(K - 2 zeta) does not vanish; need Sigma.K = 2 Sigma.zeta".into(),
            ));
        }
        let (_, minus) = ch_extension_bundles(model, wall, 0, 0)?;
        XTable::new(ring, params.n_minus, None, vec![minus.ch])
    } else {
        let shift = 1 + params.n_plus + params.n_minus;
        XTable::new(ring, shift, Some(params.n_minus), vec![ch_pair(model, wall, 0, 0)?])
    };

    let mut poly = XPoly::constant(ring.one());
    let x_factor = XPoly::binomial(ring.zero(), ring.scalar(frac(-1, 4)), 2);
    for _ in 0..word.r {
        poly = poly.mul(&x_factor);
    }
    let alpha_factor = XPoly::binomial(-model.e_alpha(), ring.scalar(p.a()), 1);
    for _ in 0..word.s {
        poly = poly.mul(&alpha_factor);
    }
    for &i in &word.gammas {
        poly = poly.mul(&XPoly::binomial(ring.zero(), model.e_gamma(i)?, 1));
    }
    for &i in &word.threes {
        poly = poly.mul(&XPoly::constant(-model.e_zeta_three(i)?));
    }
    let value = table.substitute(&poly)?.integrate_over_j() * q(wall.eps_s());
    Ok(DeltaValue { value, path: Path::RingOracle, wall: wall.clone(), word: word.clone() })
}

/// `δ(x^r α^(d-2r))` for `l_ζ = 1`, evaluated on `J × S`.
pub fn delta_oracle_l1(model: &JacobianModel, wall: &WallGeometry, r: u32) -> Result<DeltaValue> {
    if wall.l() >= 2 {
        return Err(Error::UnsupportedRegime(wall.l()));
    }
    wall.require_l(1)?;
    check_model(model, wall)?;
    if let Some(v) = beyond_degree(wall, r, Path::RingOracle) {
        return Ok(v);
    }
    let d = wall.d();
    let word = InsertionWord::power(d as u32, r)?;
    let ring = model.ring();
    let p = model.pairings();
    let params = wall.params;
    let data = vec![ch_pair(model, wall, 1, 0)?, ch_pair(model, wall, 1, 1)?];
    let mut table = XTable::new(ring, 1 + params.n_plus + params.n_minus, Some(params.n_minus), data);

    let mut poly = XPoly::constant(ring.one());
    let x_factor = XPoly::binomial(ring.top_s(), ring.scalar(frac(-1, 4)), 2);
    for _ in 0..word.r {
        poly = poly.mul(&x_factor);
    }
    let alpha_factor = XPoly::binomial(&ring.alpha() - &model.e_alpha(), ring.scalar(p.a()), 1);
    for _ in 0..word.s {
        poly = poly.mul(&alpha_factor);
    }
    let value = table.substitute(&poly)?.integrate() * q(wall.eps_s());
    Ok(DeltaValue { value, path: Path::RingOracle, wall: wall.clone(), word })
}

/// `S_{j,b}` pushed forward to `J`, straight from its definition as a sum over strata.
pub fn sjb_direct(model: &JacobianModel, wall: &WallGeometry, j: u32, b: u32) -> Result<GradedElement> {
    let l = wall.l();
    check_model(model, wall)?;
    let ring = model.ring();
    let idx = 2 * l - j as i64 + wall.q - b as i64;
    let mut out = ring.zero();
    for k in 0..=l as u32 {
        // [Z_(l-k)]\α + [Z_k]\α: each nonempty Hilbert scheme here is S itself
        let strata = [l - k as i64, k as i64].iter().filter(|&&n| n == 1).count() as i64;
        let alpha_part = ring.alpha().scale_int(strata).pow(j);
        let s = if idx < 0 { ring.zero() } else { segre_from_ch(&ch_pair(model, wall, l, k)?, idx)? };
        out += &(&(&alpha_part * &model.e_alpha().pow(b)) * &s);
    }
    Ok(if l == 0 { out } else { out.pushforward_to_j() })
}

/// `Σ_k s_n(E_ζ^{l-k,k} ⊕ (E_{-ζ}^{k,l-k})^∨)`.
pub fn segre_pair_sum(model: &JacobianModel, wall: &WallGeometry, n: i64) -> Result<GradedElement> {
    let l = wall.l();
    let mut out = model.ring().zero();
    for k in 0..=l.max(0) as u32 {
        out += &segre_from_ch(&ch_pair(model, wall, l, k)?, n)?;
    }
    Ok(out)
}
