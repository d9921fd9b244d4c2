use wallcross::closed_forms::{
    delta_l0, delta_l1, delta_leading, in_closed, leading_sjb, sn_closed, LeadingIndex, Path,
};
use wallcross::jacobian_model::{build_model, InsertionWord, JacobianModel, PairingInput, Pairings};
use wallcross::oracle_general::{delta_oracle_l0, delta_oracle_l1, sjb_direct, EmptySideBranch};
use wallcross::rational::q;
use wallcross::wall_geometry::WallGeometry;

fn pairings(zeta2: i64, zeta_k: i64, zeta_alpha: i64) -> Pairings {
    Pairings {
        zeta2: q(zeta2),
        zeta_k: q(zeta_k),
        zeta_alpha: q(zeta_alpha),
        sigma_zeta: q(0),
        sigma_alpha: q(0),
        sigma_k: q(0),
        k2: q(0),
        k_alpha: q(0),
        alpha2: q(0),
    }
}

fn model(q_: usize, blocks: Vec<i64>, p: Pairings) -> JacobianModel {
    build_model(&PairingInput::with_blocks(q_, blocks, p)).unwrap()
}

#[test]
fn l0_values() {
    let mut p = pairings(-1, 1, 2);
    p.sigma_zeta = q(1);
    p.sigma_alpha = q(1);
    let wall = WallGeometry::with_w_equal_zeta(-1, 1, -1, 1).unwrap();
    assert_eq!(delta_l0(&wall, &p, &q(1), 0).unwrap().value, q(-10));
    let m = model(1, vec![1], p.clone());
    let word = InsertionWord::power(1, 0).unwrap();
    assert_eq!(delta_oracle_l0(&m, &wall, &word, EmptySideBranch::Auto).unwrap().value, q(-10));

    // q = 0, d = 1
    let wall = WallGeometry::with_w_equal_zeta(-4, 0, -4, 0).unwrap();
    let p = pairings(-4, 0, 2);
    assert_eq!(delta_l0(&wall, &p, &q(1), 0).unwrap().value, q(-1));
    let m = model(0, vec![], p);
    assert_eq!(
        delta_oracle_l0(&m, &wall, &InsertionWord::power(1, 0).unwrap(), EmptySideBranch::Auto).unwrap().value,
        q(-1)
    );
}

#[test]
fn l1_values_and_oversized_r() {
    let mut p = pairings(-4, 0, 2);
    p.k2 = q(8);
    p.alpha2 = q(-1);
    let wall = WallGeometry::with_w_equal_zeta(-8, 0, -4, 0).unwrap();
    let m = model(0, vec![], p.clone());
    assert_eq!(delta_l1(&wall, &p, &q(1), 0).unwrap().value, q(12));
    assert_eq!(delta_oracle_l1(&m, &wall, 0).unwrap().value, q(12));
    // the value must not see Σ·K or K·α
    let mut p2 = p.clone();
    p2.k_alpha = q(5);
    p2.sigma_k = q(-3);
    assert_eq!(delta_oracle_l1(&model(0, vec![], p2), &wall, 0).unwrap().value, q(12));
    assert_eq!(delta_oracle_l1(&m, &wall, 3).unwrap().value, q(0));
    assert_eq!(delta_l1(&wall, &p, &q(1), 3).unwrap().value, q(0));
}

#[test]
fn leading_terms() {
    let mut p = pairings(-4, 0, 0);
    p.sigma_zeta = q(1);
    p.sigma_alpha = q(2);
    p.alpha2 = q(-1);
    let wall = WallGeometry::with_w_equal_zeta(-12, 1, -4, 0).unwrap();
    assert_eq!(wall.l(), 2);
    let v = delta_leading(&wall, &p, &q(2), 1).unwrap();
    assert_eq!(v.path, Path::LeadingTerm { modulus_exponent: 7 });
    // a = 0 and d - 2r - 2l - q > 0
    assert_eq!(v.value, q(0));
}

#[test]
fn sjb_values_match_direct_sums() {
    for zeta_alpha in [-2, 1, 4] {
        let mut p = pairings(-4, 2, zeta_alpha);
        p.sigma_zeta = q(1);
        p.sigma_alpha = q(-1);
        p.k2 = q(3);
        p.alpha2 = q(2);
        p.sigma_k = q(1);
        let m = model(1, vec![2], p);
        let wall = WallGeometry::with_w_equal_zeta(-8, 1, -4, 2).unwrap();
        for (which, j, b) in [(LeadingIndex::Top, 2, 1), (LeadingIndex::LowerJ, 1, 1), (LeadingIndex::LowerB, 2, 0)] {
            assert_eq!(leading_sjb(&m, 1, which).unwrap(), sjb_direct(&m, &wall, j, b).unwrap(), "{which:?}");
        }
    }
}

#[test]
fn segre_low_degrees() {
    let mut p = pairings(-4, 2, 1);
    p.sigma_zeta = q(1);
    let m = model(1, vec![1], p);
    let ring = m.ring();
    assert_eq!(sn_closed(&m, 0), ring.scalar(q(2)));
    let expected = m.e_zeta().scale_int(8) - ring.zeta().scale_int(4) - m.big_e().scale_int(8);
    assert_eq!(sn_closed(&m, 1), expected);
    let i1 = m.e_zeta().scale_int(4) - ring.zeta().scale_int(2) - m.big_e().scale_int(4);
    assert_eq!(in_closed(&m, 1), i1);
}
