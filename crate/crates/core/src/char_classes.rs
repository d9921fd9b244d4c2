//! Chern and Segre classes from Chern character data.
//!
//! A sheaf is described by its rank and `a_i = i! ch_i` for `i ≥ 1`. Chern and
//! Segre classes are the normalised determinants of lower Hessenberg matrices in
//! the `a_i`; all entries have even degree, so the determinant is taken in a
//! commutative subring.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_ring::{GradedElement, GradedRing};
use crate::rational::{factorial, q, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct ChernData {
    ring: GradedRing,
    pub rank: Q,
    /// `a[i-1]` holds `a_i`.
    pub a: Vec<GradedElement>,
}

impl ChernData {
    pub fn new(ring: &GradedRing, rank: Q, a: Vec<GradedElement>) -> Result<Self> {
        for (i, x) in a.iter().enumerate() {
            if x.ring() != ring {
                return Err(Error::ModelMismatch);
            }
            let deg = 2 * (i as u32 + 1);
            if x.max_degree().is_some_and(|_| x.homogeneous_part(deg) != *x) {
                return Err(Error::Precondition(format!("a_{} must be homogeneous of degree {deg}", i + 1)));
            }
        }
        Ok(ChernData { ring: ring.clone(), rank, a })
    }

    pub fn zero(ring: &GradedRing) -> Self {
        ChernData { ring: ring.clone(), rank: Q::zero(), a: Vec::new() }
    }

    /// Splits a Chern character `rk + ch_1 + ch_2 + …` into its data.
    pub fn from_ch(ch: &GradedElement) -> Result<Self> {
        let ring = ch.ring().clone();
        if !ch.has_parity(0) {
            return Err(Error::Precondition("a Chern character has even degree".into()));
        }
        let rank = ch.constant_term();
        let top = ch.max_degree().unwrap_or(0) / 2;
        let a = (1..=top).map(|i| ch.homogeneous_part(2 * i).scale(&Q::from_integer(factorial(i as u64)))).collect();
        ChernData::new(&ring, rank, a)
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    /// `a_i`, zero beyond the stored range; `a_0` is not used.
    pub fn a(&self, i: usize) -> GradedElement {
        if i == 0 || i > self.a.len() {
            self.ring.zero()
        } else {
            self.a[i - 1].clone()
        }
    }

    /// The Chern character `rk + Σ a_i / i!`.
    pub fn to_ch(&self) -> GradedElement {
        let mut out = self.ring.scalar(self.rank.clone());
        for (i, x) in self.a.iter().enumerate() {
            let f = Q::from_integer(factorial(i as u64 + 1));
            out += &x.scale(&f.recip());
        }
        out
    }
}

/// Determinant of an `n×n` lower Hessenberg matrix given by its entries on and
/// below the diagonal (`entry(k, j)`, 1-based, `j ≤ k`) and its superdiagonal
/// (`sup(m)` at position `(m, m+1)`).
fn hessenberg_det(
    ring: &GradedRing,
    n: usize,
    entry: impl Fn(usize, usize) -> GradedElement,
    sup: impl Fn(usize) -> Q,
) -> GradedElement {
    let mut dets: Vec<GradedElement> = vec![ring.one()];
    for k in 1..=n {
        let mut dk = ring.zero();
        let mut prod = q(1);
        for j in (1..=k).rev() {
            if j < k {
                prod *= sup(j);
            }
            if prod.is_zero() {
                break;
            }
            let h = entry(k, j);
            if h.is_zero() || dets[j - 1].is_zero() {
                continue;
            }
            let mut c = prod.clone();
            if (k - j) % 2 == 1 {
                c = -c;
            }
            dk += &(&h * &dets[j - 1]).scale(&c);
        }
        dets.push(dk);
    }
    dets.pop().unwrap()
}

fn check_n(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::InvalidInput(format!("class index must be non-negative, got {n}")))
}

/// `c_n` from the Chern character data.
pub fn chern_from_ch(data: &ChernData, n: i64) -> Result<GradedElement> {
    let n = check_n(n)?;
    let det = hessenberg_det(data.ring(), n, |k, j| data.a(k - j + 1), |m| q((n - m) as i64));
    Ok(det.scale(&Q::from_integer(factorial(n as u64)).recip()))
}

/// `n! s_n`, the unnormalised Segre determinant.
pub fn segre_det(data: &ChernData, n: usize) -> GradedElement {
    hessenberg_det(
        data.ring(),
        n,
        |k, j| {
            let x = data.a(k - j + 1);
            if (k - j) % 2 == 0 {
                -x
            } else {
                x
            }
        },
        |m| -q((n - m) as i64),
    )
}

/// `s_n` from the Chern character data.
pub fn segre_from_ch(data: &ChernData, n: i64) -> Result<GradedElement> {
    let n = check_n(n)?;
    Ok(segre_det(data, n).scale(&Q::from_integer(factorial(n as u64)).recip()))
}

/// Chern character data of the dual sheaf.
pub fn ch_dual(data: &ChernData) -> ChernData {
    ChernData {
        ring: data.ring.clone(),
        rank: data.rank.clone(),
        a: data.a.iter().enumerate().map(|(i, x)| if i % 2 == 0 { -x } else { x.clone() }).collect(),
    }
}

pub fn ch_direct_sum(x: &ChernData, y: &ChernData) -> Result<ChernData> {
    if x.ring != y.ring {
        return Err(Error::ModelMismatch);
    }
    let n = x.a.len().max(y.a.len());
    Ok(ChernData { ring: x.ring.clone(), rank: &x.rank + &y.rank, a: (1..=n).map(|i| &x.a(i) + &y.a(i)).collect() })
}

/// Total Chern class `1 + c_1 + … + c_n`.
pub fn total_chern(data: &ChernData, n: usize) -> GradedElement {
    let mut out = data.ring().zero();
    for i in 0..=n {
        out += &chern_from_ch(data, i as i64).expect("non-negative index");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_ring::{ModelSpec, BASE_SYMBOLS};
    use crate::rational::frac;

    fn ring() -> GradedRing {
        let symbols = BASE_SYMBOLS.iter().map(|s| s.to_string()).collect();
        let g = [[0, 1, 0, 3], [1, -4, 2, 2], [0, 2, 8, 0], [3, 2, 0, -1]];
        let gram = g.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        GradedRing::new(ModelSpec::new(1, vec![vec![0, 2], vec![-2, 0]], symbols, gram).unwrap())
    }

    fn sample(r: &GradedRing) -> ChernData {
        let b = |i| r.j_gen(i).unwrap();
        let a1 = r.zeta().scale_int(3) + (&b(1) * &b(2)).scale_int(-2) + r.alpha();
        let a2 = (&(&b(1) * &b(2)) * &r.alpha()).scale_int(5) + r.top_s().scale_int(7);
        let a3 = (&(&b(1) * &b(2)) * &r.top_s()).scale_int(-4);
        ChernData::new(r, q(3), vec![a1, a2, a3]).unwrap()
    }

    #[test]
    fn low_degree_chern_classes() {
        let r = ring();
        let d = sample(&r);
        let (a1, a2) = (d.a(1), d.a(2));
        assert_eq!(chern_from_ch(&d, 0).unwrap(), r.one());
        assert_eq!(chern_from_ch(&d, 1).unwrap(), a1.clone());
        assert_eq!(chern_from_ch(&d, 2).unwrap(), (&a1 * &a1 - a2.clone()).scale(&frac(1, 2)));
        assert_eq!(segre_from_ch(&d, 1).unwrap(), -&a1);
        assert_eq!(segre_from_ch(&d, 2).unwrap(), (&a1 * &a1 + a2).scale(&frac(1, 2)));
        assert!(chern_from_ch(&d, -1).is_err());
    }

    #[test]
    fn segre_inverts_chern() {
        let r = ring();
        let d = sample(&r);
        let inv = total_chern(&d, 6).inverse_unit_series().unwrap();
        for n in 0..=6i64 {
            assert_eq!(segre_from_ch(&d, n).unwrap(), inv.homogeneous_part(2 * n as u32), "n = {n}");
            let mut conv = r.zero();
            for i in 0..=n {
                conv += &(&chern_from_ch(&d, i).unwrap() * &segre_from_ch(&d, n - i).unwrap());
            }
            assert_eq!(conv, if n == 0 { r.one() } else { r.zero() });
        }
    }

    #[test]
    fn dual_and_sum() {
        let r = ring();
        let d = sample(&r);
        assert_eq!(ch_dual(&ch_dual(&d)), d);
        assert_eq!(ch_dual(&d).a(1), -&d.a(1));
        assert_eq!(ch_dual(&d).a(2), d.a(2));
        assert_eq!(ch_direct_sum(&d, &ChernData::zero(&r)).unwrap(), d);
        assert_eq!(ChernData::from_ch(&d.to_ch()).unwrap(), d);
    }

    #[test]
    fn dual_flips_chern_sign() {
        let r = ring();
        let d = sample(&r);
        for n in 0..=5i64 {
            let c = chern_from_ch(&d, n).unwrap();
            let flipped = if n % 2 == 0 { c } else { -c };
            assert_eq!(chern_from_ch(&ch_dual(&d), n).unwrap(), flipped);
        }
    }
}
