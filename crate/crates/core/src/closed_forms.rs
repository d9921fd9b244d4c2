//! Closed-form wall-crossing terms for `l_ζ ∈ {0, 1}`, the Segre-class identities
//! behind the `l_ζ = 1` case, and the leading terms valid for every `l_ζ`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::char_classes::{segre_det, ChernData};
use crate::error::{Error, Result};
use crate::graded_ring::GradedElement;
use crate::jacobian_model::{InsertionWord, JacobianModel, Pairings};
use crate::rational::{binom, factorial, pow2, pow_or_zero, q, sign, Q};
use crate::wall_geometry::WallGeometry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Path {
    ClosedForm,
    RingOracle,
    /// Valid modulo `a^modulus_exponent`, `a = (ζ·α)/2`.
    LeadingTerm {
        modulus_exponent: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaValue {
    #[serde(with = "crate::rational")]
    pub value: Q,
    pub path: Path,
    pub wall: WallGeometry,
    pub word: InsertionWord,
}

fn zq(x: BigInt) -> Q {
    Q::from_integer(x)
}

fn fact(n: i64) -> Q {
    zq(factorial(n as u64))
}

/// `1/n!`, zero for negative `n`.
fn inv_fact(n: i64) -> Q {
    if n < 0 {
        Q::zero()
    } else {
        fact(n).recip()
    }
}

/// `x^r` alone exceeds the degree `2d` when `2r > d`, so the term is 0.
pub(crate) fn beyond_degree(wall: &WallGeometry, r: u32, path: Path) -> Option<DeltaValue> {
    (2 * r as i64 > wall.d()).then(|| DeltaValue {
        value: Q::zero(),
        path,
        wall: wall.clone(),
        word: InsertionWord::even(r, 0),
    })
}

fn check_word(wall: &WallGeometry, r: u32) -> Result<InsertionWord> {
    let d = wall.d();
    if d < 2 * r as i64 {
        return Err(Error::Precondition(format!("d - 2r = {} is negative", d - 2 * r as i64)));
    }
    InsertionWord::power(d as u32, r)
}

/// `δ(x^r α^(d-2r))` for `l_ζ = 0`.
pub fn delta_l0(wall: &WallGeometry, p: &Pairings, vol: &Q, r: u32) -> Result<DeltaValue> {
    wall.require_l(0)?;
    if let Some(v) = beyond_degree(wall, r, Path::ClosedForm) {
        return Ok(v);
    }
    let word = check_word(wall, r)?;
    let (d, qq, r) = (wall.d(), wall.q, r as i64);
    let mut sum = Q::zero();
    for b in 0..=qq {
        let term = pow2(3 * qq - b - d)
            * fact(qq)
            * inv_fact(qq - b)
            * zq(binom(d - 2 * r, b))
            * pow_or_zero(&p.zeta_alpha, d - 2 * r - b)
            * pow_or_zero(&p.sigma_alpha, b)
            * pow_or_zero(&p.sigma_zeta, qq - b);
        sum += term;
    }
    let value = sum * vol * q(wall.eps() * sign(r + d));
    Ok(DeltaValue { value, path: Path::ClosedForm, wall: wall.clone(), word })
}

/// `δ(z)` for `l_ζ = 0` and a word with odd insertions, through `F(z)`.
pub fn delta_l0_odd(wall: &WallGeometry, model: &JacobianModel, word: &InsertionWord) -> Result<DeltaValue> {
    wall.require_l(0)?;
    word.validate(model.q())?;
    let done = |value| Ok(DeltaValue { value, path: Path::ClosedForm, wall: wall.clone(), word: word.clone() });
    let (a, b) = (word.gammas.len() as i64, word.threes.len() as i64);
    if (a + b) % 2 == 1 {
        return done(Q::zero());
    }
    word.check_degree(wall.d())?;
    let f = model.f_functional(word)?;
    let p = model.pairings();
    let (d, qq, r, s) = (wall.d(), wall.q, word.r as i64, word.s as i64);
    let mut sum = Q::zero();
    for j in 0..=s {
        sum += pow2(3 * qq - d - b - j)
            * zq(binom(s, j))
            * inv_fact(qq - (a + b) / 2 - j)
            * pow_or_zero(&p.zeta_alpha, s - j)
            * pow_or_zero(&p.sigma_alpha, j)
            * pow_or_zero(&p.sigma_zeta, qq + (b - a) / 2 - j);
    }
    done(sum * f * q(wall.eps() * sign(r + d + b)))
}

/// `δ(x^r α^(d-2r))` for `l_ζ = 1`.
pub fn delta_l1(wall: &WallGeometry, p: &Pairings, vol: &Q, r: u32) -> Result<DeltaValue> {
    wall.require_l(1)?;
    if let Some(v) = beyond_degree(wall, r, Path::ClosedForm) {
        return Ok(v);
    }
    let word = check_word(wall, r)?;
    let (d, qq, r) = (wall.d(), wall.q, r as i64);
    let m = d - 2 * r;
    let bracket_const = q(6) * q(wall.zeta2) + q(2) * &p.k2 - q(24 * qq + 8 * r);
    let mut sum = Q::zero();
    for b in 0..=qq {
        let first = pow_or_zero(&p.zeta_alpha, m - b)
            * (zq(binom(m, b)) * &bracket_const + q(8) * zq(binom(m, b + 1) * binom(b + 1, 1)));
        let second = q(8) * pow_or_zero(&p.zeta_alpha, m - b - 2) * &p.alpha2 * zq(binom(m, b + 2) * binom(b + 2, 2));
        sum += pow2(3 * qq - b - d)
            * (first + second)
            * pow_or_zero(&p.sigma_alpha, b)
            * pow_or_zero(&p.sigma_zeta, qq - b)
            * fact(qq)
            * inv_fact(qq - b);
    }
    let value = sum * vol * q(wall.eps() * sign(r + d + 1));
    Ok(DeltaValue { value, path: Path::ClosedForm, wall: wall.clone(), word })
}

/// Building blocks shared by the `l_ζ = 1` Segre formulas.
struct L1Classes {
    four_e: GradedElement,
    zeta: GradedElement,
    big_e: GradedElement,
    top: GradedElement,
    zeta_sq: GradedElement,
    k_sq: GradedElement,
    e_zeta: GradedElement,
    e_sq: GradedElement,
}

impl L1Classes {
    fn new(model: &JacobianModel) -> Self {
        let ring = model.ring();
        let zeta = ring.zeta();
        let big_e = model.big_e().clone();
        L1Classes {
            four_e: model.e_zeta().scale_int(4),
            zeta_sq: &zeta * &zeta,
            k_sq: &ring.canonical() * &ring.canonical(),
            e_zeta: &big_e * &zeta,
            e_sq: &big_e * &big_e,
            zeta,
            big_e,
            top: ring.top_s(),
        }
    }

    /// `(4e_ζ)^k`, zero for negative `k`.
    fn four_e_pow(&self, k: i64) -> GradedElement {
        if k < 0 {
            self.top.ring().zero()
        } else {
            self.four_e.pow(k as u32)
        }
    }

    /// `a_1 = -4e_ζ + 2ζ + 4E`.
    fn a1(&self) -> GradedElement {
        -&self.four_e + self.zeta.scale_int(2) + self.big_e.scale_int(4)
    }

    /// `2ζ² + K² + 8Eζ + 8E² - 18k[S]`.
    fn recursion_factor(&self, k: i64) -> GradedElement {
        self.zeta_sq.scale_int(2) + self.k_sq.clone() + self.e_zeta.scale_int(8) + self.e_sq.scale_int(8)
            - self.top.scale_int(18 * k)
    }
}

/// `s_n` of the `l_ζ = 1` extension bundles, summed over both strata, in closed form.
pub fn sn_closed(model: &JacobianModel, n: i64) -> GradedElement {
    let c = L1Classes::new(model);
    let lin = c.zeta.scale_int(4) + c.big_e.scale_int(8);
    let quad = c.zeta_sq.scale_int(6) + c.k_sq.scale_int(2) + c.e_zeta.scale_int(24) + c.e_sq.scale_int(24);
    c.four_e_pow(n).scale(&(q(2) * inv_fact(n))) - (&lin * &c.four_e_pow(n - 1)).scale(&inv_fact(n - 1))
        + (&quad * &c.four_e_pow(n - 2)).scale(&inv_fact(n - 2))
        - (&c.top * &c.four_e_pow(n - 2)).scale(&(q(24) * inv_fact(n - 3)))
}

/// `I_n` in closed form.
pub fn in_closed(model: &JacobianModel, n: i64) -> GradedElement {
    let c = L1Classes::new(model);
    let ring = model.ring();
    match n {
        i64::MIN..=-1 => ring.zero(),
        0 => ring.one(),
        1 => -c.a1(),
        _ => {
            let base = -c.a1();
            let mut out = base.pow(n as u32);
            for i in 2..=n {
                let t = &(&base.pow((n - i) as u32) * &c.four_e_pow(i - 2)) * &c.recursion_factor(i - 2);
                out += &t.scale_int(i - 1);
            }
            out
        }
    }
}

/// `I_n` through its recursion in `n`.
pub fn in_recursive(model: &JacobianModel, n: i64) -> GradedElement {
    let c = L1Classes::new(model);
    let ring = model.ring();
    if n < 0 {
        return ring.zero();
    }
    let minus_a1 = -c.a1();
    let mut cur = ring.one();
    for k in 1..=n {
        let mut next = &minus_a1 * &cur;
        if k >= 2 {
            next += &(&c.four_e_pow(k - 2) * &c.recursion_factor(k - 2)).scale_int(k - 1);
        }
        cur = next;
    }
    cur
}

/// `I_n` as the Segre determinant of the data `a_1 = -4e_ζ + 2ζ + 4E`,
/// `a_2 = 2ζ² + 8E² + K² + 8Eζ`, `a_3 = 24E²ζ`.
pub fn in_determinant(model: &JacobianModel, n: usize) -> GradedElement {
    let c = L1Classes::new(model);
    let a2 = c.zeta_sq.scale_int(2) + c.e_sq.scale_int(8) + c.k_sq.clone() + c.e_zeta.scale_int(8);
    let a3 = (&c.e_sq * &c.zeta).scale_int(24);
    let data = ChernData::new(model.ring(), Q::zero(), vec![c.a1(), a2, a3]).expect("homogeneous data");
    segre_det(&data, n)
}

/// The three computable values of `S_{j,b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeadingIndex {
    /// `(2l, q)`
    Top,
    /// `(2l - 1, q)`
    LowerJ,
    /// `(2l, q - 1)`
    LowerB,
}

impl LeadingIndex {
    /// `(j, b)` for the given `l` and `q`, or `None` when an index is negative.
    pub fn indices(self, l: i64, q: i64) -> Option<(i64, i64)> {
        let (j, b) = match self {
            LeadingIndex::Top => (2 * l, q),
            LeadingIndex::LowerJ => (2 * l - 1, q),
            LeadingIndex::LowerB => (2 * l, q - 1),
        };
        (j >= 0 && b >= 0).then_some((j, b))
    }
}

/// `S_{j,b}` on `J` for the index pairs with known values.
pub fn leading_sjb(model: &JacobianModel, l: i64, which: LeadingIndex) -> Result<GradedElement> {
    let qq = model.q() as i64;
    if l < 0 || which.indices(l, qq).is_none() {
        return Err(Error::InvalidInput(format!("S_(j,b) index {which:?} is not defined for l = {l}, q = {qq}")));
    }
    let p = model.pairings();
    let coeff = fact(2 * l) * inv_fact(l);
    let e_alpha = model.e_alpha();
    Ok(match which {
        LeadingIndex::Top => e_alpha.pow(qq as u32).scale(&(coeff * pow_or_zero(&p.alpha2, l))),
        LeadingIndex::LowerJ => e_alpha.pow(qq as u32).scale(&(q(-4) * coeff * pow_or_zero(&p.alpha2, l - 1) * p.a())),
        LeadingIndex::LowerB => {
            (&e_alpha.pow(qq as u32 - 1) * &model.e_zeta()).scale(&(q(4) * coeff * pow_or_zero(&p.alpha2, l)))
        }
    })
}

/// Leading terms of `δ(x^r α^(d-2r))` for any `l_ζ`, exact modulo `a^(d-2r-2l-q+2)`.
pub fn delta_leading(wall: &WallGeometry, p: &Pairings, vol: &Q, r: u32) -> Result<DeltaValue> {
    let modulus_exponent = wall.d() - 2 * r as i64 - 2 * wall.l() - wall.q + 2;
    if let Some(v) = beyond_degree(wall, r, Path::LeadingTerm { modulus_exponent }) {
        return Ok(v);
    }
    let word = check_word(wall, r)?;
    let (d, qq, l, r) = (wall.d(), wall.q, wall.l(), r as i64);
    let m = d - 2 * r - 2 * l - qq;
    if r > 0 && m < 0 {
        return Err(Error::Precondition(format!("need d - 2r >= 2 l_zeta + q, got d - 2r = {}", d - 2 * r)));
    }
    let a = p.a();
    let common = fact(d - 2 * r) * inv_fact(l) * pow_or_zero(&p.alpha2, l);
    let first = pow_or_zero(&a, m) * inv_fact(m) * pow_or_zero(&p.sigma_alpha, qq);
    let second =
        q(4 * qq) * pow_or_zero(&a, m + 1) * inv_fact(m + 1) * pow_or_zero(&p.sigma_alpha, qq - 1) * &p.sigma_zeta;
    let value = q(wall.eps() * sign(d + l + r)) * pow2(qq - 2 * r) * common * (first + second) * vol;
    Ok(DeltaValue { value, path: Path::LeadingTerm { modulus_exponent: m + 2 }, wall: wall.clone(), word })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian_model::{build_model, PairingInput};
    use crate::rational::frac;

    fn pairings(zeta2: i64, zeta_k: i64, zeta_alpha: i64, sigma_zeta: i64, sigma_alpha: i64) -> Pairings {
        Pairings {
            zeta2: q(zeta2),
            zeta_k: q(zeta_k),
            zeta_alpha: q(zeta_alpha),
            sigma_zeta: q(sigma_zeta),
            sigma_alpha: q(sigma_alpha),
            sigma_k: q(0),
            k2: q(8),
            k_alpha: q(0),
            alpha2: q(-1),
        }
    }

    #[test]
    fn l0_examples() {
        let wall = WallGeometry::with_w_equal_zeta(-1, 1, -1, 1).unwrap();
        assert_eq!(wall.d(), 1);
        let v = delta_l0(&wall, &pairings(-1, 1, 2, 1, 1), &q(1), 0).unwrap();
        assert_eq!(v.value, q(-10));
        let wall = WallGeometry::with_w_equal_zeta(-4, 0, -4, 0).unwrap();
        let v = delta_l0(&wall, &pairings(-4, 0, 2, 0, 0), &q(1), 0).unwrap();
        assert_eq!(v.value, q(-1));
    }

    #[test]
    fn l1_example() {
        let wall = WallGeometry::with_w_equal_zeta(-8, 0, -4, 0).unwrap();
        assert_eq!(wall.d(), 5);
        let v = delta_l1(&wall, &pairings(-4, 0, 2, 0, 0), &q(1), 0).unwrap();
        assert_eq!(v.value, q(12));
        assert!(matches!(delta_l0(&wall, &pairings(-4, 0, 2, 0, 0), &q(1), 0), Err(Error::WrongRegime { .. })));
    }

    #[test]
    fn odd_formula_reduces_to_even_one() {
        let p = pairings(-1, 1, 3, 2, -1);
        let wall = WallGeometry::with_w_equal_zeta(-1, 1, -1, 1).unwrap();
        let model = build_model(&PairingInput::with_blocks(1, vec![3], p.clone())).unwrap();
        let even = delta_l0(&wall, &p, &model.vol(), 0).unwrap();
        let odd = delta_l0_odd(&wall, &model, &InsertionWord::even(0, 1)).unwrap();
        assert_eq!(even.value, odd.value);
    }

    #[test]
    fn leading_index_rules() {
        let p = pairings(-4, 0, 2, 1, 1);
        let model = build_model(&PairingInput::with_blocks(1, vec![1], p)).unwrap();
        assert!(leading_sjb(&model, 0, LeadingIndex::LowerJ).is_err());
        assert_eq!(leading_sjb(&model, 0, LeadingIndex::Top).unwrap(), model.e_alpha());
        assert_eq!(leading_sjb(&model, 1, LeadingIndex::Top).unwrap(), model.e_alpha().scale(&frac(-2, 1)));
    }

    #[test]
    fn leading_terms_vanish_at_a_zero() {
        let wall = WallGeometry::with_w_equal_zeta(-8, 0, -4, 0).unwrap();
        let v = delta_leading(&wall, &pairings(-4, 0, 0, 0, 0), &q(1), 0).unwrap();
        assert_eq!(v.value, q(0));
        assert_eq!(v.path, Path::LeadingTerm { modulus_exponent: 5 });
    }

    #[test]
    fn segre_closed_forms_low_degree() {
        let p = pairings(-4, 2, 2, 1, 3);
        let model = build_model(&PairingInput::with_blocks(1, vec![2], p)).unwrap();
        assert_eq!(sn_closed(&model, 0), model.ring().scalar(q(2)));
        assert_eq!(in_closed(&model, 1), in_recursive(&model, 1));
        for n in 0..=5 {
            assert_eq!(in_closed(&model, n), in_recursive(&model, n), "n = {n}");
            assert_eq!(in_determinant(&model, n as usize), in_recursive(&model, n), "n = {n}");
        }
    }
}
