//! Concrete cohomology model of `J × S` built from intersection numbers, with the
//! universal class `E`, the form `ω`, the `e`-classes, `vol` and the functional `F`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_ring::{GradedElement, GradedRing, ModelSpec, ALPHA, BASE_SYMBOLS, CANONICAL, SIGMA, ZETA};
use crate::rational::{factorial, q, Q};

/// Intersection numbers among `Σ, ζ, K, α`. `Σ·Σ = 0` is implied.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pairings {
    #[serde(with = "crate::rational")]
    pub zeta2: Q,
    #[serde(rename = "zetaK", with = "crate::rational")]
    pub zeta_k: Q,
    #[serde(rename = "zetaAlpha", with = "crate::rational")]
    pub zeta_alpha: Q,
    #[serde(rename = "sigmaZeta", with = "crate::rational", default = "Q::zero")]
    pub sigma_zeta: Q,
    #[serde(rename = "sigmaAlpha", with = "crate::rational", default = "Q::zero")]
    pub sigma_alpha: Q,
    #[serde(rename = "sigmaK", with = "crate::rational", default = "Q::zero")]
    pub sigma_k: Q,
    #[serde(rename = "K2", with = "crate::rational", default = "Q::zero")]
    pub k2: Q,
    #[serde(rename = "Kalpha", with = "crate::rational", default = "Q::zero")]
    pub k_alpha: Q,
    #[serde(rename = "alpha2", with = "crate::rational", default = "Q::zero")]
    pub alpha2: Q,
}

impl Pairings {
    fn gram(&self) -> Vec<Vec<Q>> {
        let z = Q::zero();
        vec![
            vec![z, self.sigma_zeta.clone(), self.sigma_k.clone(), self.sigma_alpha.clone()],
            vec![self.sigma_zeta.clone(), self.zeta2.clone(), self.zeta_k.clone(), self.zeta_alpha.clone()],
            vec![self.sigma_k.clone(), self.zeta_k.clone(), self.k2.clone(), self.k_alpha.clone()],
            vec![self.sigma_alpha.clone(), self.zeta_alpha.clone(), self.k_alpha.clone(), self.alpha2.clone()],
        ]
    }

    /// `a = (ζ·α)/2`.
    pub fn a(&self) -> Q {
        &self.zeta_alpha / q(2)
    }
}

/// Numeric description of a model: `q`, the form coefficients and the pairings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingInput {
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_blocks: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_matrix: Option<Vec<Vec<i64>>>,
    pub pairings: Pairings,
}

impl PairingInput {
    pub fn with_blocks(q: usize, blocks: Vec<i64>, pairings: Pairings) -> Self {
        PairingInput { q, a_blocks: Some(blocks), a_matrix: None, pairings }
    }

    /// The full `2q × 2q` matrix `a_ij`; all-ones blocks when nothing is given.
    pub fn a_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = 2 * self.q;
        match (&self.a_blocks, &self.a_matrix) {
            (Some(_), Some(_)) => Err(Error::InvalidInput("give either a_blocks or a_matrix, not both".into())),
            (None, Some(m)) => Ok(m.clone()),
            (blocks, None) => {
                let default;
                let blocks = match blocks {
                    Some(b) => b,
                    None => {
                        default = vec![1; self.q];
                        &default
                    }
                };
                if blocks.len() > self.q {
                    return Err(Error::InvalidInput(format!(
                        "{} block coefficients given for q = {}",
                        blocks.len(),
                        self.q
                    )));
                }
                if blocks.contains(&0) {
                    return Err(Error::InvalidInput("block coefficients must be nonzero".into()));
                }
                let mut a = vec![vec![0; n]; n];
                for (i, &c) in blocks.iter().enumerate() {
                    a[2 * i][2 * i + 1] = c;
                    a[2 * i + 1][2 * i] = -c;
                }
                Ok(a)
            }
        }
    }
}

/// Degree-`2d` argument `x^r α^s δ_{i1}…δ_{ia} β_{j1}…β_{jb}` of the Donaldson functional.
/// `gammas` index the `H_1` basis dual to `β_i`; `threes` index `H_3` classes through
/// Poincaré duality with `β_j`. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionWord {
    pub r: u32,
    pub s: u32,
    #[serde(default)]
    pub gammas: Vec<usize>,
    #[serde(default)]
    pub threes: Vec<usize>,
}

impl InsertionWord {
    pub fn even(r: u32, s: u32) -> Self {
        InsertionWord { r, s, gammas: Vec::new(), threes: Vec::new() }
    }

    /// `x^r α^(d-2r)`.
    pub fn power(d: u32, r: u32) -> Result<Self> {
        if 2 * r > d {
            return Err(Error::InvalidInput(format!("x^{r} does not fit in degree {}", 2 * d)));
        }
        Ok(Self::even(r, d - 2 * r))
    }

    /// Real degree `4r + 2s + 3a + b`.
    pub fn degree(&self) -> u32 {
        4 * self.r + 2 * self.s + 3 * self.gammas.len() as u32 + self.threes.len() as u32
    }

    pub fn odd_count(&self) -> usize {
        self.gammas.len() + self.threes.len()
    }

    pub fn validate(&self, q: usize) -> Result<()> {
        for list in [&self.gammas, &self.threes] {
            for (k, &i) in list.iter().enumerate() {
                if i == 0 || i > 2 * q {
                    return Err(Error::IndexOutOfRange { index: i, max: 2 * q });
                }
                if list[..k].contains(&i) {
                    return Err(Error::InvalidInput(format!("odd insertion {i} repeated")));
                }
            }
        }
        Ok(())
    }

    /// Checks the word against the expected dimension `d`.
    pub fn check_degree(&self, d: i64) -> Result<()> {
        if self.degree() as i64 != 2 * d {
            return Err(Error::InvalidInput(format!("word has degree {}, expected 2d = {}", self.degree(), 2 * d)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct JacobianModel {
    ring: GradedRing,
    pairings: Pairings,
    omega: GradedElement,
    big_e: GradedElement,
}

/// Builds the ring and the distinguished classes from numeric data.
pub fn build_model(input: &PairingInput) -> Result<JacobianModel> {
    let a = input.a_matrix()?;
    let symbols = BASE_SYMBOLS.iter().map(|s| s.to_string()).collect();
    let spec = ModelSpec::new(input.q, a, symbols, input.pairings.gram())?;
    let ring = GradedRing::new(spec);
    let n = 2 * input.q;
    let mut omega = ring.zero();
    let mut big_e = ring.zero();
    for i in 1..=n {
        big_e += &(&ring.s_odd(i)? * &ring.j_gen(i)?);
        for j in i + 1..=n {
            let c = ring.spec().a(i - 1, j - 1);
            if c != 0 {
                omega += &(&ring.j_gen(i)? * &ring.j_gen(j)?).scale_int(c);
            }
        }
    }
    Ok(JacobianModel { ring, pairings: input.pairings.clone(), omega, big_e })
}

impl JacobianModel {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn pairings(&self) -> &Pairings {
        &self.pairings
    }

    pub fn q(&self) -> usize {
        self.ring.q()
    }

    /// `E = Σ β_i ⊗ β_i#`, the first Chern class of the universal bundle.
    pub fn big_e(&self) -> &GradedElement {
        &self.big_e
    }

    pub fn omega(&self) -> &GradedElement {
        &self.omega
    }

    /// `e_X = -2(Σ·X) ω` for a surface symbol `X`.
    pub fn e_symbol(&self, idx: usize) -> GradedElement {
        let pairing = self.ring.spec().gram(SIGMA, idx).clone();
        self.omega.scale(&(pairing * q(-2)))
    }

    pub fn e_alpha(&self) -> GradedElement {
        self.e_symbol(ALPHA)
    }

    pub fn e_zeta(&self) -> GradedElement {
        self.e_symbol(ZETA)
    }

    /// `e_{K - 2ζ}`.
    pub fn e_k_minus_2zeta(&self) -> GradedElement {
        self.e_symbol(CANONICAL) - self.e_zeta().scale_int(2)
    }

    /// `e_{K + 2ζ}`.
    pub fn e_k_plus_2zeta(&self) -> GradedElement {
        self.e_symbol(CANONICAL) + self.e_zeta().scale_int(2)
    }

    /// `E² \ X`, the slant product of `E²` with the class dual to the symbol `X`.
    pub fn e_via_slant(&self, idx: usize) -> GradedElement {
        (&self.big_e * &self.big_e).slant_symbol(idx)
    }

    /// `e_S = E⁴ \ [S]`.
    pub fn e_top(&self) -> GradedElement {
        self.big_e.pow(4).pushforward_to_j()
    }

    /// `e_{δ_i} = β_i#`.
    pub fn e_gamma(&self, i: usize) -> Result<GradedElement> {
        self.ring.j_gen(i)
    }

    /// `i_{β_i} ω = Σ_j a_ij β_j#`.
    pub fn interior_omega(&self, i: usize) -> Result<GradedElement> {
        self.ring.j_gen(i)?;
        let mut out = self.ring.zero();
        for j in 1..=2 * self.q() {
            let c = self.ring.spec().a(i - 1, j - 1);
            if c != 0 {
                out += &self.ring.j_gen(j)?.scale_int(c);
            }
        }
        Ok(out)
    }

    /// `e_{ζβ_i} = (Σ·ζ) i_{β_i} ω`.
    pub fn e_zeta_three(&self, i: usize) -> Result<GradedElement> {
        Ok(self.interior_omega(i)?.scale(&self.pairings.sigma_zeta))
    }

    /// `vol = (1/q!) ∫_J ω^q`, equal to 1 when `q = 0`.
    pub fn vol(&self) -> Q {
        let q_ = self.q();
        self.omega.pow(q_ as u32).integrate_over_j() / Q::from_integer(factorial(q_ as u64))
    }

    /// `F(z) = ∫_J γ_1 ⋯ γ_a · i_{A_1}ω ⋯ i_{A_b}ω · ω^{q-(a+b)/2}`; zero when `a+b` is odd
    /// or the power of `ω` would be negative.
    pub fn f_functional(&self, word: &InsertionWord) -> Result<Q> {
        word.validate(self.q())?;
        let odd = word.odd_count();
        if odd % 2 == 1 || odd / 2 > self.q() {
            return Ok(Q::zero());
        }
        let mut acc = self.ring.one();
        for &i in &word.gammas {
            acc = &acc * &self.e_gamma(i)?;
        }
        for &i in &word.threes {
            acc = &acc * &self.interior_omega(i)?;
        }
        acc = &acc * &self.omega.pow((self.q() - odd / 2) as u32);
        Ok(acc.integrate_over_j())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    pub(crate) fn pairings() -> Pairings {
        Pairings {
            zeta2: q(-4),
            zeta_k: q(2),
            zeta_alpha: q(2),
            sigma_zeta: q(1),
            sigma_alpha: q(3),
            sigma_k: q(-2),
            k2: q(8),
            k_alpha: q(1),
            alpha2: q(-1),
        }
    }

    fn model(q_: usize, blocks: Vec<i64>) -> JacobianModel {
        build_model(&PairingInput::with_blocks(q_, blocks, pairings())).unwrap()
    }

    #[test]
    fn vol_examples() {
        assert_eq!(model(0, vec![]).vol(), q(1));
        assert_eq!(model(1, vec![5]).vol(), q(5));
        assert_eq!(model(2, vec![1, 1]).vol(), q(1));
        assert_eq!(model(2, vec![2, 3]).vol(), q(6));
        assert_eq!(model(3, vec![1, 2, 3]).vol(), q(6));
        assert_eq!(model(1, vec![]).vol(), q(0));
    }

    #[test]
    fn e_alpha_closed_form_and_slant() {
        let m = model(1, vec![1]);
        let r = m.ring();
        let w = &r.j_gen(1).unwrap() * &r.j_gen(2).unwrap();
        assert_eq!(m.omega(), &w);
        assert_eq!(m.e_alpha(), w.scale_int(-6));
        for idx in 0..4 {
            assert_eq!(m.e_via_slant(idx), m.e_symbol(idx));
        }
        let m3 = model(3, vec![1, -2, 3]);
        for idx in 0..4 {
            assert_eq!(m3.e_via_slant(idx), m3.e_symbol(idx));
        }
    }

    #[test]
    fn universal_class_axioms() {
        for (q_, blocks) in [(0, vec![]), (1, vec![2]), (2, vec![1, 3]), (3, vec![1, 1, 1])] {
            let m = model(q_, blocks);
            let e = m.big_e();
            assert_eq!(&(e * e), &(&m.ring().sigma() * m.omega()).scale_int(-2));
            assert!(e.pow(3).is_zero());
            assert!(e.pow(4).is_zero());
            assert!(m.e_top().is_zero());
        }
    }

    #[test]
    fn f_functional_examples() {
        let m = model(1, vec![1]);
        assert_eq!(m.f_functional(&InsertionWord::even(0, 1)).unwrap(), q(1));
        let w = InsertionWord { r: 0, s: 0, gammas: vec![1, 2], threes: vec![] };
        assert_eq!(m.f_functional(&w).unwrap(), q(1));
        let w = InsertionWord { r: 0, s: 0, gammas: vec![1], threes: vec![] };
        assert_eq!(m.f_functional(&w).unwrap(), q(0));
        // i_{β1}ω = β2#, so δ1 β1 gives ∫ β1# β2# = 1
        let w = InsertionWord { r: 0, s: 0, gammas: vec![1], threes: vec![1] };
        assert_eq!(m.f_functional(&w).unwrap(), q(1));
        assert_eq!(model(1, vec![]).f_functional(&InsertionWord::default()).unwrap(), q(0));
    }

    #[test]
    fn f_needs_complementary_deltas() {
        // with ω = β1#β2# + β3#β4#, F(δ1) paired with δ3 alone cannot fill the top degree
        let m = model(2, vec![1, 1]);
        let w = InsertionWord { r: 0, s: 0, gammas: vec![1, 3], threes: vec![] };
        assert_eq!(m.f_functional(&w).unwrap(), q(0));
        let w = InsertionWord { r: 0, s: 0, gammas: vec![3, 4], threes: vec![] };
        assert_eq!(m.f_functional(&w).unwrap(), q(1));
    }

    #[test]
    fn input_parsing() {
        let json = r#"{"q": 1, "a_blocks": [2], "pairings": {"zeta2": -1, "zetaK": 1,
            "zetaAlpha": "1/2", "sigmaZeta": 1, "sigmaAlpha": 1}}"#;
        let input: PairingInput = serde_json::from_str(json).unwrap();
        assert_eq!(input.pairings.zeta_alpha, frac(1, 2));
        assert_eq!(input.pairings.k2, q(0));
        assert_eq!(build_model(&input).unwrap().vol(), q(2));
        let bad = PairingInput { a_blocks: Some(vec![1, 1]), ..input.clone() };
        assert!(build_model(&bad).is_err());
        let bad = PairingInput { a_blocks: None, a_matrix: Some(vec![vec![0, 1], vec![1, 0]]), ..input };
        assert!(build_model(&bad).is_err());
    }

    #[test]
    fn word_degree() {
        let w = InsertionWord { r: 1, s: 2, gammas: vec![1], threes: vec![2] };
        assert_eq!(w.degree(), 12);
        assert!(w.check_degree(6).is_ok());
        assert!(w.validate(1).is_ok());
        assert!(w.validate(0).is_err());
        let dup = InsertionWord { r: 0, s: 0, gammas: vec![1, 1], threes: vec![] };
        assert!(dup.validate(1).is_err());
    }
}
