use proptest::prelude::*;

use wallcross::char_classes::{ch_direct_sum, ch_dual, chern_from_ch, total_chern, ChernData};
use wallcross::graded_ring::{GradedElement, GradedRing};
use wallcross::jacobian_model::{build_model, PairingInput, Pairings};
use wallcross::rational::q;

fn ring(q_: usize) -> GradedRing {
    let p = Pairings {
        zeta2: q(-3),
        zeta_k: q(1),
        zeta_alpha: q(2),
        sigma_zeta: q(1),
        sigma_alpha: q(-1),
        sigma_k: q(3),
        k2: q(5),
        k_alpha: q(-2),
        alpha2: q(1),
    };
    let blocks = (1..=q_ as i64).collect();
    build_model(&PairingInput::with_blocks(q_, blocks, p)).unwrap().ring().clone()
}

fn element(ring: &GradedRing, deg: u32, terms: &[(usize, i64)]) -> GradedElement {
    let basis = ring.homogeneous_basis(deg);
    let mut out = ring.zero();
    if basis.is_empty() {
        return out;
    }
    for &(i, c) in terms {
        out += &basis[i % basis.len()].scale_int(c);
    }
    out
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -4i64..=4), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative_and_distributive(q_ in 0usize..3, d in prop::array::uniform3(0u32..6), t in prop::array::uniform3(terms())) {
        let r = ring(q_);
        let [x, y, z] = [0, 1, 2].map(|i| element(&r, d[i], &t[i]));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn graded_commutative(q_ in 0usize..3, dx in 0u32..7, dy in 0u32..7, tx in terms(), ty in terms()) {
        let r = ring(q_);
        let (x, y) = (element(&r, dx, &tx), element(&r, dy, &ty));
        let sign = if dx * dy % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(&x * &y, (&y * &x).scale_int(sign));
    }

    #[test]
    fn exp_is_multiplicative_on_even_classes(q_ in 0usize..3, dx in 1u32..4, dy in 1u32..4, tx in terms(), ty in terms()) {
        let r = ring(q_);
        let (x, y) = (element(&r, 2 * dx, &tx), element(&r, 2 * dy, &ty));
        prop_assert_eq!((&x + &y).exp_truncated().unwrap(), &x.exp_truncated().unwrap() * &y.exp_truncated().unwrap());
    }

    #[test]
    fn chern_classes_of_sums_and_duals(q_ in 0usize..2, rank in 0i64..4, rank2 in 0i64..4, t in prop::array::uniform6(terms())) {
        let r = ring(q_);
        let a: Vec<_> = (0..3).map(|i| element(&r, 2 * (i as u32 + 1), &t[i])).collect();
        let b: Vec<_> = (0..3).map(|i| element(&r, 2 * (i as u32 + 1), &t[i + 3])).collect();
        let x = ChernData::new(&r, q(rank), a).unwrap();
        let y = ChernData::new(&r, q(rank2), b).unwrap();
        let n = 6;
        let lhs = total_chern(&ch_direct_sum(&x, &y).unwrap(), n);
        let rhs = &total_chern(&x, n) * &total_chern(&y, n);
        for k in 0..=n as u32 {
            prop_assert_eq!(lhs.homogeneous_part(2 * k), rhs.homogeneous_part(2 * k));
        }
        let dual = ch_dual(&x);
        for k in 0..=4i64 {
            let sign = if k % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(chern_from_ch(&dual, k).unwrap(), chern_from_ch(&x, k).unwrap().scale_int(sign));
        }
        let roundtrip = ChernData::from_ch(&x.to_ch()).unwrap();
        prop_assert_eq!(roundtrip.to_ch(), x.to_ch());
    }
}
