//! Exact arithmetic in the cohomology ring of `J × S`.
//!
//! The Jacobian factor is the exterior algebra on `2q` degree-one classes
//! `b1#, …, b2q#`. The surface factor is modelled by the finite basis
//!
//! * `1`,
//! * odd degree-one classes `b1, …, b2q` with `bi·bj = a_ij Σ`,
//! * even degree-two symbols (`Sigma`, `zeta`, `K`, `alpha`, plus any extra
//!   registered symbols) multiplying into the top class through a Gram matrix,
//! * degree-three classes `t1, …, t2q` defined by `ti·bj = a_ij [S]`, so that
//!   `X·bi = (X·Σ) ti` for every degree-two symbol `X`,
//! * the fundamental class `[S]`.
//!
//! Because `Σ·Σ = 0`, any product of three odd surface classes vanishes.
//! Elements are stored as `J-monomial ⊗ surface-basis-class`, with the Jacobian
//! part written first and its generators in increasing index order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// Index of `Σ` among the degree-two surface symbols.
pub const SIGMA: usize = 0;
/// Index of `ζ`.
pub const ZETA: usize = 1;
/// Index of the canonical class `K`.
pub const CANONICAL: usize = 2;
/// Index of `α`.
pub const ALPHA: usize = 3;
pub const BASE_SYMBOLS: [&str; 4] = ["Sigma", "zeta", "K", "alpha"];

const MAX_Q: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Jacobian,
    Surface,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub factor: Factor,
    pub degree: u32,
    pub parity: Parity,
}

/// Presentation of `H*(J) ⊗ H*(S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    q: usize,
    a: Vec<Vec<i64>>,
    symbols: Vec<String>,
    gram: Vec<Vec<Q>>,
}

impl ModelSpec {
    /// `symbols` must start with [`BASE_SYMBOLS`]; `gram` is indexed like `symbols`.
    pub fn new(q: usize, a: Vec<Vec<i64>>, symbols: Vec<String>, gram: Vec<Vec<Q>>) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::InvalidModel(format!("q = {q} exceeds the supported maximum {MAX_Q}")));
        }
        let n = 2 * q;
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidModel(format!("a_ij must be a {n}x{n} matrix for q = {q}")));
        }
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] != -a[j][i]) {
            return Err(Error::InvalidModel(format!("a_ij is not antisymmetric at ({}, {})", i + 1, j + 1)));
        }
        if symbols.len() < BASE_SYMBOLS.len() || symbols.iter().zip(BASE_SYMBOLS).any(|(s, b)| s != b) {
            return Err(Error::InvalidModel(format!("symbol list must start with {BASE_SYMBOLS:?}")));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidModel(format!("duplicate symbol {s:?}")));
            }
        }
        let m = symbols.len();
        if gram.len() != m || gram.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidModel(format!("Gram matrix must be {m}x{m}")));
        }
        for i in 0..m {
            for j in 0..m {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidModel(format!(
                        "Gram matrix is not symmetric at ({}, {})",
                        symbols[i], symbols[j]
                    )));
                }
            }
        }
        if !gram[SIGMA][SIGMA].is_zero() {
            return Err(Error::InvalidModel("Sigma·Sigma must vanish".into()));
        }
        Ok(ModelSpec { q, a, symbols, gram })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn top_j(&self) -> usize {
        2 * self.q
    }

    pub fn top_s(&self) -> usize {
        4
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn a_matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn gram(&self, x: usize, y: usize) -> &Q {
        &self.gram[x][y]
    }

    pub fn generators(&self) -> Vec<GeneratorSpec> {
        let n = 2 * self.q;
        let mut out = Vec::with_capacity(2 * n + self.symbols.len());
        out.extend((1..=n).map(|i| GeneratorSpec {
            name: format!("b{i}#"),
            factor: Factor::Jacobian,
            degree: 1,
            parity: Parity::Odd,
        }));
        out.extend((1..=n).map(|i| GeneratorSpec {
            name: format!("b{i}"),
            factor: Factor::Surface,
            degree: 1,
            parity: Parity::Odd,
        }));
        out.extend(self.symbols.iter().map(|s| GeneratorSpec {
            name: s.clone(),
            factor: Factor::Surface,
            degree: 2,
            parity: Parity::Even,
        }));
        out
    }

    /// Product in the surface factor.
    fn mul_surface(&self, x: SClass, y: SClass) -> Option<(Scalar, SClass)> {
        use SClass::*;
        match (x, y) {
            (One, s) | (s, One) => Some((Scalar::One, s)),
            (Odd(i), Odd(j)) => nonzero_int(self.a[i as usize][j as usize]).map(|c| (c, Even(SIGMA as u8))),
            (Odd(i), Even(e)) | (Even(e), Odd(i)) => {
                if self.gram[e as usize][SIGMA].is_zero() {
                    None
                } else {
                    Some((Scalar::Gram(e, SIGMA as u8), Dual(i)))
                }
            }
            (Odd(i), Dual(j)) => nonzero_int(self.a[i as usize][j as usize]).map(|c| (c, Top)),
            (Dual(j), Odd(i)) => nonzero_int(self.a[j as usize][i as usize]).map(|c| (c, Top)),
            (Even(e), Even(f)) => {
                if self.gram[e as usize][f as usize].is_zero() {
                    None
                } else {
                    Some((Scalar::Gram(e, f), Top))
                }
            }
            _ => None,
        }
    }
}

fn nonzero_int(c: i64) -> Option<Scalar> {
    (c != 0).then_some(Scalar::Int(c))
}

enum Scalar {
    One,
    Int(i64),
    Gram(u8, u8),
}

/// Basis class of the surface factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum SClass {
    One,
    Odd(u8),
    Even(u8),
    Dual(u8),
    Top,
}

impl SClass {
    fn degree(self) -> u32 {
        match self {
            SClass::One => 0,
            SClass::Odd(_) => 1,
            SClass::Even(_) => 2,
            SClass::Dual(_) => 3,
            SClass::Top => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Monomial {
    j: u32,
    s: SClass,
}

impl Monomial {
    const ONE: Monomial = Monomial { j: 0, s: SClass::One };

    fn deg_j(self) -> u32 {
        self.j.count_ones()
    }

    fn degree(self) -> u32 {
        self.deg_j() + self.s.degree()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.deg_j().cmp(&other.deg_j()))
            .then(self.j.reverse_bits().cmp(&other.j.reverse_bits()).reverse())
            .then(self.s.cmp(&other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Parity of the permutation sorting the concatenation `x ++ y` of two disjoint
/// increasing index sets.
fn merge_is_odd(x: u32, y: u32) -> bool {
    let mut odd = false;
    let mut rest = y;
    while rest != 0 {
        let b = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if b >= 31 { 0 } else { x >> (b + 1) };
        odd ^= above.count_ones() % 2 == 1;
    }
    odd
}

/// Shared handle to a [`ModelSpec`]; the factory for ring elements.
#[derive(Clone, Debug)]
pub struct GradedRing(Arc<ModelSpec>);

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl GradedRing {
    pub fn new(spec: ModelSpec) -> Self {
        GradedRing(Arc::new(spec))
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.0
    }

    pub fn q(&self) -> usize {
        self.0.q
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> GradedElement {
        self.scalar(q(1))
    }

    pub fn scalar(&self, c: Q) -> GradedElement {
        self.monomial(c, Monomial::ONE)
    }

    fn monomial(&self, c: Q, m: Monomial) -> GradedElement {
        let mut e = self.zero();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    fn check_index(&self, i: usize) -> Result<u8> {
        let max = 2 * self.0.q;
        if i == 0 || i > max {
            Err(Error::IndexOutOfRange { index: i, max })
        } else {
            Ok((i - 1) as u8)
        }
    }

    /// The Jacobian generator `bi#`, 1-based.
    pub fn j_gen(&self, i: usize) -> Result<GradedElement> {
        let k = self.check_index(i)?;
        Ok(self.monomial(q(1), Monomial { j: 1 << k, s: SClass::One }))
    }

    /// The odd surface generator `bi`, 1-based.
    pub fn s_odd(&self, i: usize) -> Result<GradedElement> {
        let k = self.check_index(i)?;
        Ok(self.monomial(q(1), Monomial { j: 0, s: SClass::Odd(k) }))
    }

    /// The degree-three surface class `ti` (1-based) with `ti·bj = a_ij [S]`.
    pub fn s_dual(&self, i: usize) -> Result<GradedElement> {
        let k = self.check_index(i)?;
        Ok(self.monomial(q(1), Monomial { j: 0, s: SClass::Dual(k) }))
    }

    /// A degree-two surface symbol by its index in the symbol list.
    pub fn symbol(&self, idx: usize) -> GradedElement {
        assert!(idx < self.0.symbols.len(), "symbol index {idx} out of range");
        self.monomial(q(1), Monomial { j: 0, s: SClass::Even(idx as u8) })
    }

    pub fn symbol_named(&self, name: &str) -> Result<GradedElement> {
        self.0
            .symbol_index(name)
            .map(|i| self.symbol(i))
            .ok_or_else(|| Error::InvalidInput(format!("unknown surface symbol {name:?}")))
    }

    pub fn sigma(&self) -> GradedElement {
        self.symbol(SIGMA)
    }

    pub fn zeta(&self) -> GradedElement {
        self.symbol(ZETA)
    }

    pub fn canonical(&self) -> GradedElement {
        self.symbol(CANONICAL)
    }

    pub fn alpha(&self) -> GradedElement {
        self.symbol(ALPHA)
    }

    /// The fundamental class `[S]` of the surface factor.
    pub fn top_s(&self) -> GradedElement {
        self.monomial(q(1), Monomial { j: 0, s: SClass::Top })
    }

    fn full_j(&self) -> u32 {
        if self.0.q == 0 {
            0
        } else {
            (1u32 << (2 * self.0.q)) - 1
        }
    }

    /// `b1# ∧ … ∧ b2q#`, the orientation class of `J`.
    pub fn top_j(&self) -> GradedElement {
        self.monomial(q(1), Monomial { j: self.full_j(), s: SClass::One })
    }

    /// All basis monomials of total degree `deg`, each with coefficient 1.
    pub fn homogeneous_basis(&self, deg: u32) -> Vec<GradedElement> {
        let n = 2 * self.0.q;
        let mut s_classes = vec![SClass::One, SClass::Top];
        for i in 0..n as u8 {
            s_classes.push(SClass::Odd(i));
            s_classes.push(SClass::Dual(i));
        }
        s_classes.extend((0..self.0.symbols.len() as u8).map(SClass::Even));
        let mut out = Vec::new();
        for j in 0..(1u32 << n) {
            for &s in &s_classes {
                let m = Monomial { j, s };
                if m.degree() == deg {
                    out.push(m);
                }
            }
        }
        out.sort();
        out.into_iter().map(|m| self.monomial(q(1), m)).collect()
    }

    fn mul_monomials(&self, x: Monomial, y: Monomial) -> Option<(bool, Scalar, Monomial)> {
        if x.j & y.j != 0 {
            return None;
        }
        let (scalar, s) = self.0.mul_surface(x.s, y.s)?;
        let mut odd = merge_is_odd(x.j, y.j);
        if x.s.degree() % 2 == 1 && y.deg_j() % 2 == 1 {
            odd = !odd;
        }
        Some((odd, scalar, Monomial { j: x.j | y.j, s }))
    }
}

/// A finite rational combination of monomials; zero coefficients are never stored.
#[derive(Clone)]
pub struct GradedElement {
    ring: GradedRing,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*{}", fmt_q(c), self.monomial_name(*m))?;
        }
        Ok(())
    }
}

impl GradedElement {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &GradedElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ModelMismatch)
        }
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_same(other)?;
        let spec = self.ring.spec();
        let mut out = self.ring.zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let Some((odd, scalar, m)) = self.ring.mul_monomials(*x, *y) else {
                    continue;
                };
                let mut c = cx * cy;
                match scalar {
                    Scalar::One => {}
                    Scalar::Int(k) => c *= q(k),
                    Scalar::Gram(e, f) => c *= spec.gram(e as usize, f as usize),
                }
                if odd {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> GradedElement {
        if c.is_zero() {
            return self.ring.zero();
        }
        GradedElement { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> GradedElement {
        self.scale(&q(c))
    }

    pub fn pow(&self, n: u32) -> GradedElement {
        let mut acc = self.ring.one();
        for _ in 0..n {
            if acc.is_zero() {
                break;
            }
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of the unit monomial.
    pub fn constant_term(&self) -> Q {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(Q::zero)
    }

    /// Component of total (real) degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Largest total degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// True when every term has the same parity of total degree `parity` (0 even, 1 odd).
    pub fn has_parity(&self, parity: u32) -> bool {
        self.terms.keys().all(|m| m.degree() % 2 == parity)
    }

    /// True when every term has zero surface degree.
    pub fn is_jacobian_class(&self) -> bool {
        self.terms.keys().all(|m| m.s == SClass::One)
    }

    /// `Σ aⁿ/n!`, which terminates because `a` is nilpotent.
    pub fn exp_truncated(&self) -> Result<GradedElement> {
        if !self.constant_term().is_zero() {
            return Err(Error::Precondition("exp_truncated needs an element without degree-0 component".into()));
        }
        if !self.has_parity(0) {
            return Err(Error::Precondition("exp_truncated needs an even-degree element".into()));
        }
        let mut sum = self.ring.one();
        let mut term = self.ring.one();
        let mut n = 0i64;
        loop {
            n += 1;
            term = (&term * self).scale(&Q::new(1.into(), n.into()));
            if term.is_zero() {
                return Ok(sum);
            }
            sum += &term;
        }
    }

    /// Multiplicative inverse of an element with constant term 1.
    pub fn inverse_unit_series(&self) -> Result<GradedElement> {
        if !self.constant_term().is_one() {
            return Err(Error::Precondition("inverse_unit_series needs constant term 1".into()));
        }
        let nil = self - &self.ring.one();
        let minus_nil = -&nil;
        let mut sum = self.ring.one();
        let mut term = self.ring.one();
        loop {
            term = &term * &minus_nil;
            if term.is_zero() {
                return Ok(sum);
            }
            sum += &term;
        }
    }

    /// Evaluation on `[J × S]`: the coefficient of `b1#…b2q# ⊗ [S]`.
    pub fn integrate(&self) -> Q {
        let top = Monomial { j: self.ring.full_j(), s: SClass::Top };
        self.terms.get(&top).cloned().unwrap_or_else(Q::zero)
    }

    /// Evaluation on `[J]` of a class pulled back from the Jacobian.
    pub fn integrate_over_j(&self) -> Q {
        let top = Monomial { j: self.ring.full_j(), s: SClass::One };
        self.terms.get(&top).cloned().unwrap_or_else(Q::zero)
    }

    /// Push-forward along `J × S → J` (slant with `[S]`).
    pub fn pushforward_to_j(&self) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.s == SClass::Top)
                .map(|(m, c)| (Monomial { j: m.j, s: SClass::One }, c.clone()))
                .collect(),
        }
    }

    /// Slant product with the homology class dual to the surface symbol `idx`.
    pub fn slant_symbol(&self, idx: usize) -> GradedElement {
        (self * &self.ring.symbol(idx)).pushforward_to_j()
    }

    fn monomial_name(&self, m: Monomial) -> String {
        let mut parts: Vec<String> = (0..32).filter(|b| m.j & (1 << b) != 0).map(|b| format!("b{}#", b + 1)).collect();
        match m.s {
            SClass::One => {}
            SClass::Odd(i) => parts.push(format!("b{}", i + 1)),
            SClass::Even(e) => parts.push(self.ring.spec().symbols[e as usize].clone()),
            SClass::Dual(i) => parts.push(format!("t{}", i + 1)),
            SClass::Top => parts.push("[S]".into()),
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Canonical JSON term list: sorted monomials, coefficients as `"num/den"`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    json!({
                        "monomial": self.monomial_name(*m),
                        "bidegree": [m.deg_j(), m.s.degree()],
                        "coeff": fmt_q(c),
                    })
                })
                .collect(),
        )
    }
}

impl Add<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn add(self, rhs: &GradedElement) -> GradedElement {
        self.try_add(rhs).expect("operands belong to different models")
    }
}

impl Add for GradedElement {
    type Output = GradedElement;
    fn add(mut self, rhs: GradedElement) -> GradedElement {
        self += &rhs;
        self
    }
}

impl AddAssign<&GradedElement> for GradedElement {
    fn add_assign(&mut self, rhs: &GradedElement) {
        assert!(self.ring == rhs.ring, "operands belong to different models");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&GradedElement> for GradedElement {
    fn sub_assign(&mut self, rhs: &GradedElement) {
        assert!(self.ring == rhs.ring, "operands belong to different models");
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Sub<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn sub(self, rhs: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GradedElement {
    type Output = GradedElement;
    fn sub(mut self, rhs: GradedElement) -> GradedElement {
        self -= &rhs;
        self
    }
}

impl Neg for &GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        GradedElement { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl Neg for GradedElement {
    type Output = GradedElement;
    fn neg(self) -> GradedElement {
        -&self
    }
}

impl Mul<&GradedElement> for &GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: &GradedElement) -> GradedElement {
        self.try_mul(rhs).expect("operands belong to different models")
    }
}

impl Mul for GradedElement {
    type Output = GradedElement;
    fn mul(self, rhs: GradedElement) -> GradedElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn model(q: usize, blocks: &[i64], gram4: [[i64; 4]; 4]) -> GradedRing {
        let n = 2 * q;
        let mut a = vec![vec![0; n]; n];
        for (i, &c) in blocks.iter().enumerate() {
            a[2 * i][2 * i + 1] = c;
            a[2 * i + 1][2 * i] = -c;
        }
        let gram = gram4.iter().map(|r| r.iter().map(|&x| q_(x)).collect()).collect();
        let symbols = BASE_SYMBOLS.iter().map(|s| s.to_string()).collect();
        GradedRing::new(ModelSpec::new(q, a, symbols, gram).unwrap())
    }

    fn q_(x: i64) -> Q {
        q(x)
    }

    fn plain(q: usize, blocks: &[i64]) -> GradedRing {
        model(q, blocks, [[0, 1, 0, 3], [1, -4, 2, 2], [0, 2, 8, 0], [3, 2, 0, -1]])
    }

    fn big_e(r: &GradedRing) -> GradedElement {
        let mut e = r.zero();
        for i in 1..=2 * r.q() {
            e += &(&r.s_odd(i).unwrap() * &r.j_gen(i).unwrap());
        }
        e
    }

    #[test]
    fn odd_square_vanishes() {
        let r = plain(1, &[1]);
        let b = r.j_gen(1).unwrap();
        assert!((&b * &b).is_zero());
    }

    #[test]
    fn koszul_sign_on_mixed_product() {
        let r = plain(1, &[1]);
        let x = &r.s_odd(1).unwrap() * &r.j_gen(1).unwrap();
        let y = &r.s_odd(2).unwrap() * &r.j_gen(2).unwrap();
        let expected = -(&r.sigma() * &(&r.j_gen(1).unwrap() * &r.j_gen(2).unwrap()));
        assert_eq!(&x * &y, expected);
    }

    #[test]
    fn e_squared_is_minus_two_sigma_omega() {
        let r = plain(2, &[2, 3]);
        let e = big_e(&r);
        let b = |i| r.j_gen(i).unwrap();
        let omega = (&b(1) * &b(2)).scale_int(2) + (&b(3) * &b(4)).scale_int(3);
        assert_eq!(&e * &e, (&r.sigma() * &omega).scale_int(-2));
        assert!(e.pow(3).is_zero());
        assert!(e.pow(4).is_zero());
    }

    #[test]
    fn surface_relations() {
        let r = plain(1, &[5]);
        let (b1, b2) = (r.s_odd(1).unwrap(), r.s_odd(2).unwrap());
        // b1 b2 = 5 Σ, Σ·α = 3, so b1 b2 α = 15 [S]
        assert_eq!(&(&b1 * &b2) * &r.alpha(), r.top_s().scale_int(15));
        // ζ b1 = (ζ·Σ) t1, then t1 b2 = 5 [S]
        assert_eq!(&r.zeta() * &b1, r.s_dual(1).unwrap());
        assert_eq!(&(&r.zeta() * &b1) * &b2, r.top_s().scale_int(5));
        assert_eq!(&b2 * &(&r.zeta() * &b1), r.top_s().scale_int(-5));
        assert!((&(&b1 * &b2) * &b1).is_zero());
        assert!((&r.top_s() * &r.alpha()).is_zero());
    }

    #[test]
    fn exp_of_zero_and_of_zeta() {
        let r = plain(0, &[]);
        assert_eq!(r.zero().exp_truncated().unwrap(), r.one());
        let z = r.zeta();
        let expected = r.one() + z.clone() + r.top_s().scale(&frac(-4, 2));
        assert_eq!(z.exp_truncated().unwrap(), expected);
        assert!(r.one().exp_truncated().is_err());
    }

    #[test]
    fn exp_of_two_e() {
        let r = plain(1, &[1]);
        let e = big_e(&r);
        let b = |i| r.j_gen(i).unwrap();
        let expected = r.one() + e.scale_int(2) - (&r.sigma() * &(&b(1) * &b(2))).scale_int(4);
        assert_eq!(e.scale_int(2).exp_truncated().unwrap(), expected);
    }

    #[test]
    fn inverse_of_one_plus_c1() {
        let r = plain(0, &[]);
        assert_eq!(r.one().inverse_unit_series().unwrap(), r.one());
        let c1 = r.zeta() + r.alpha();
        let u = r.one() + c1.clone();
        let c1sq = (&c1 * &c1).integrate();
        let expected = r.one() - c1 + r.top_s().scale(&c1sq);
        assert_eq!(u.inverse_unit_series().unwrap(), expected);
        assert!(r.zeta().inverse_unit_series().is_err());
    }

    #[test]
    fn integration() {
        let r = plain(1, &[1]);
        assert!(r.one().integrate().is_zero());
        let b = |i| r.j_gen(i).unwrap();
        let omega = &b(1) * &b(2);
        assert_eq!((&omega * &r.top_s()).integrate(), q(1));
        assert_eq!((&r.top_s() * &omega).integrate(), q(1));
        assert_eq!((&b(2) * &b(1)).integrate_over_j(), q(-1));

        let r2 = plain(2, &[1, 1]);
        let b = |i| r2.j_gen(i).unwrap();
        let omega = &b(1) * &b(2) + &b(3) * &b(4);
        assert_eq!((&omega.pow(2) * &r2.top_s()).integrate(), q(2));
    }

    #[test]
    fn model_validation() {
        let symbols: Vec<String> = BASE_SYMBOLS.iter().map(|s| s.to_string()).collect();
        let zero4 = vec![vec![q(0); 4]; 4];
        assert!(ModelSpec::new(1, vec![vec![0, 1], vec![1, 0]], symbols.clone(), zero4.clone()).is_err());
        assert!(ModelSpec::new(1, vec![vec![0, 1]], symbols.clone(), zero4.clone()).is_err());
        let mut g = zero4.clone();
        g[0][0] = q(1);
        assert!(ModelSpec::new(0, vec![], symbols.clone(), g).is_err());
        let mut g = zero4;
        g[1][2] = q(1);
        assert!(ModelSpec::new(0, vec![], symbols, g).is_err());
    }

    #[test]
    fn mismatched_models_are_rejected() {
        let r1 = plain(1, &[1]);
        let r2 = plain(1, &[2]);
        assert_eq!(r1.one().try_mul(&r2.one()), Err(Error::ModelMismatch));
        assert!(r1.j_gen(3).is_err());
        assert!(r1.j_gen(0).is_err());
    }

    #[test]
    fn json_is_canonical() {
        let r = plain(1, &[1]);
        let x = r.j_gen(2).unwrap().scale(&frac(1, 2)) + r.one();
        let v = x.to_json();
        assert_eq!(v[0]["monomial"], "1");
        assert_eq!(v[1]["coeff"], "1/2");
        assert_eq!(v[1]["monomial"], "b2#");
    }
}
