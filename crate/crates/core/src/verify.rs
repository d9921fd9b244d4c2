//! Property sweeps comparing the closed forms with the ring evaluation and
//! checking the structural identities. Each sweep reports the number of cases it
//! examined and the first counterexample it met.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::char_classes::{chern_from_ch, segre_from_ch, total_chern, ChernData};
use crate::closed_forms::{
    delta_l0, delta_l0_odd, delta_l1, delta_leading, in_closed, in_determinant, in_recursive, sn_closed,
};
use crate::error::{Error, Result};
use crate::graded_ring::{GradedElement, ALPHA};
use crate::jacobian_model::{build_model, InsertionWord, JacobianModel, PairingInput, Pairings};
use crate::oracle_general::{delta_oracle_l0, delta_oracle_l1, segre_pair_sum, EmptySideBranch};
use crate::rational::{binom, factorial, fmt_q, q, sign, Q};
use crate::wall_geometry::{eps_complex, eps_kotschick, wall_params, WallGeometry};

/// Names accepted by [`run_property`], in acceptance order.
pub const PROPERTIES: [&str; 10] = [
    "oracle_l0",
    "oracle_l1",
    "odd_classes",
    "segre",
    "structural",
    "leading",
    "hidden_data",
    "scale",
    "model_axioms",
    "simple_type",
];

/// Optional overrides of the default sweep bounds, parsed from `"q=0..3,d<=8,r<=2,p<=3"`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grid {
    pub q_min: Option<i64>,
    pub q_max: Option<i64>,
    pub d_max: Option<i64>,
    pub r_max: Option<i64>,
    pub pair_bound: Option<i64>,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Grid> {
        let mut g = Grid::default();
        let bad = |part: &str| Error::InvalidInput(format!("cannot parse grid bound {part:?}"));
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, lo, hi) = if let Some((k, v)) = part.split_once("<=") {
                (k.trim(), None, v.trim().parse::<i64>().map_err(|_| bad(part))?)
            } else if let Some((k, v)) = part.split_once('=') {
                match v.split_once("..") {
                    Some((a, b)) => {
                        let a = a.trim().parse::<i64>().map_err(|_| bad(part))?;
                        let b = b.trim().trim_start_matches('=').parse::<i64>().map_err(|_| bad(part))?;
                        (k.trim(), Some(a), b)
                    }
                    None => {
                        let v = v.trim().parse::<i64>().map_err(|_| bad(part))?;
                        (k.trim(), Some(v), v)
                    }
                }
            } else {
                return Err(bad(part));
            };
            match key {
                "q" => {
                    g.q_min = lo.or(Some(0));
                    g.q_max = Some(hi);
                }
                "d" => g.d_max = Some(hi),
                "r" => g.r_max = Some(hi),
                "p" => g.pair_bound = Some(hi),
                _ => return Err(bad(part)),
            }
        }
        if g.q_min.is_some_and(|v| v < 0) || g.q_max.is_some_and(|v| v > 6) {
            return Err(Error::InvalidInput("grid q must lie in 0..=6".into()));
        }
        Ok(g)
    }

    fn q_range(&self, lo: i64, hi: i64) -> std::ops::RangeInclusive<i64> {
        self.q_min.unwrap_or(lo)..=self.q_max.unwrap_or(hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of `ε(ζ, w)` inside the structural sweep.
    EpsSign,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub seed: u64,
    pub fault: Option<Fault>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub cases: u64,
    pub failure: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.cases > 0
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.failure, self.cases) {
            (None, 0) => write!(f, "FAIL {} (no cases examined)", self.name),
            (None, n) => write!(f, "PASS {} ({n} cases)", self.name),
            (Some(msg), n) => write!(f, "FAIL {} after {n} cases: {msg}", self.name),
        }
    }
}

struct Checker {
    name: String,
    cases: u64,
    failure: Option<String>,
}

impl Checker {
    fn new(name: &str) -> Self {
        Checker { name: name.to_string(), cases: 0, failure: None }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, left: &T, right: &T, ctx: impl FnOnce() -> String) {
        self.check(left == right, || format!("{}: {left:?} != {right:?}", ctx()));
    }

    fn q_eq(&mut self, left: &Q, right: &Q, ctx: impl FnOnce() -> String) {
        self.check(left == right, || format!("{}: {} != {}", ctx(), fmt_q(left), fmt_q(right)));
    }

    fn ok<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", ctx()));
                None
            }
        }
    }

    fn report(self) -> PropertyReport {
        PropertyReport { name: self.name, cases: self.cases, failure: self.failure }
    }
}

pub fn run_property(name: &str, grid: &Grid, opts: &VerifyOptions) -> Result<PropertyReport> {
    Ok(match name {
        "oracle_l0" => oracle_l0(grid),
        "oracle_l1" => oracle_l1(grid),
        "odd_classes" => odd_classes(grid),
        "segre" => segre(opts.seed),
        "structural" => structural(grid, opts.fault),
        "leading" => leading(grid),
        "hidden_data" => hidden_data(),
        "scale" => scale(),
        "model_axioms" | "e_S" => model_axioms(opts.seed),
        "simple_type" => simple_type(),
        _ => {
            return Err(Error::InvalidInput(format!(
                "unknown property {name:?}; expected one of {}",
                PROPERTIES.join(", ")
            )))
        }
    })
}

pub fn run_all(grid: &Grid, opts: &VerifyOptions) -> Vec<PropertyReport> {
    PROPERTIES.iter().map(|p| run_property(p, grid, opts).expect("known property")).collect()
}

// ---------------------------------------------------------------------------
// shared sweep data

fn blocks_for(q_: i64) -> Vec<Vec<i64>> {
    match q_ {
        0 => vec![vec![]],
        1 => vec![vec![1], vec![2], vec![-3]],
        2 => vec![vec![1, 1], vec![2, 3]],
        3 => vec![vec![1, 1, 1], vec![1, 2, 3]],
        n => vec![vec![1; n as usize]],
    }
}

/// `ζ·K` values at both ends of the allowed range and one near the middle.
fn zeta_k_choices(zeta2: i64, q_: i64, l: i64) -> Vec<i64> {
    let lo = zeta2 + 2 - 2 * q_ - 2 * l;
    let hi = -lo;
    let mid = if zeta2.rem_euclid(2) == 0 { 0 } else { 1 };
    let mut out = vec![lo];
    if (lo..=hi).contains(&mid) && mid != lo {
        out.push(mid);
    }
    if hi != lo && hi != mid {
        out.push(hi);
    }
    out
}

/// `w = ζ` and `w = ζ - 2x` with `x² = -1`, `x·K = 1`, `x·ζ = 1`.
fn walls_for(p1: i64, q_: i64, zeta2: i64, zeta_k: i64) -> Vec<WallGeometry> {
    [
        WallGeometry::with_w_equal_zeta(p1, q_, zeta2, zeta_k),
        WallGeometry::new(p1, q_, zeta2, zeta_k, zeta2 - 2, zeta2 - 8, zeta_k - 2),
    ]
    .into_iter()
    .filter_map(|w| w.ok())
    .collect()
}

#[allow(clippy::too_many_arguments)]
fn pairings(
    zeta2: i64,
    zeta_k: i64,
    zeta_alpha: i64,
    sigma_zeta: i64,
    sigma_alpha: i64,
    sigma_k: i64,
    k2: i64,
    k_alpha: i64,
    alpha2: i64,
) -> Pairings {
    Pairings {
        zeta2: q(zeta2),
        zeta_k: q(zeta_k),
        zeta_alpha: q(zeta_alpha),
        sigma_zeta: q(sigma_zeta),
        sigma_alpha: q(sigma_alpha),
        sigma_k: q(sigma_k),
        k2: q(k2),
        k_alpha: q(k_alpha),
        alpha2: q(alpha2),
    }
}

/// `Σ·K`: forced to `2Σ·ζ` on walls with an empty `ζ` side, arbitrary elsewhere.
fn sigma_k_for(wall: &WallGeometry, sigma_zeta: i64) -> i64 {
    if wall.empty_plus_side() {
        2 * sigma_zeta
    } else {
        2 * sigma_zeta + 1
    }
}

fn model_for(q_: i64, blocks: &[i64], p: &Pairings) -> Result<JacobianModel> {
    build_model(&PairingInput::with_blocks(q_ as usize, blocks.to_vec(), p.clone()))
}

fn ctx_wall(w: &WallGeometry) -> String {
    format!(
        "q={} p1={} zeta2={} zetaK={} zetaW={} w2={} wK={} d={}",
        w.q,
        w.p1,
        w.zeta2,
        w.zeta_k,
        w.zeta_w,
        w.w2,
        w.w_k,
        w.d()
    )
}

fn ctx_pairings(p: &Pairings) -> String {
    format!(
        "zetaAlpha={} sigmaZeta={} sigmaAlpha={} sigmaK={} K2={} Kalpha={} alpha2={}",
        p.zeta_alpha, p.sigma_zeta, p.sigma_alpha, p.sigma_k, p.k2, p.k_alpha, p.alpha2
    )
}

/// Walls with `l_ζ = 0` and `d ≤ d_max` for the given `q`.
fn l0_walls(q_: i64, d_max: i64) -> Vec<WallGeometry> {
    let mut out = Vec::new();
    for zeta2 in (-(d_max + 3 - 3 * q_)..=-1).rev() {
        let d = -zeta2 - 3 + 3 * q_;
        if d < 0 || d > d_max {
            continue;
        }
        for zeta_k in zeta_k_choices(zeta2, q_, 0) {
            out.extend(walls_for(zeta2, q_, zeta2, zeta_k));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// oracle equivalence

fn oracle_l0(grid: &Grid) -> PropertyReport {
    let mut c = Checker::new("oracle_l0");
    let d_max = grid.d_max.unwrap_or(8);
    let r_max = grid.r_max.unwrap_or(2);
    let pb = grid.pair_bound.unwrap_or(3);
    for q_ in grid.q_range(0, 3) {
        for blocks in blocks_for(q_) {
            for wall in l0_walls(q_, d_max) {
                for za in -pb..=pb {
                    for sz in -pb..=pb {
                        for sa in -pb..=pb {
                            let p = pairings(
                                wall.zeta2,
                                wall.zeta_k,
                                za,
                                sz,
                                sa,
                                sigma_k_for(&wall, sz),
                                8 - 8 * q_,
                                1,
                                -1,
                            );
                            let Some(model) = c.ok(model_for(q_, &blocks, &p), || ctx_pairings(&p)) else {
                                continue;
                            };
                            let vol = model.vol();
                            for r in 0..=r_max.min(wall.d() / 2) {
                                let word = InsertionWord::power(wall.d() as u32, r as u32).expect("fits");
                                let ctx =
                                    || format!("{} {} blocks={blocks:?} r={r}", ctx_wall(&wall), ctx_pairings(&p));
                                let closed = c.ok(delta_l0(&wall, &p, &vol, r as u32), ctx);
                                let oracle = c.ok(delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Auto), ctx);
                                if let (Some(a), Some(b)) = (closed, oracle) {
                                    c.q_eq(&a.value, &b.value, ctx);
                                }
                                if wall.empty_plus_side() {
                                    let generic = delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Generic);
                                    let auto = delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Auto);
                                    if let (Some(g), Some(a)) = (c.ok(generic, ctx), c.ok(auto, ctx)) {
                                        c.q_eq(&g.value, &a.value, || format!("empty-side branches differ: {}", ctx()));
                                    }
                                }
                            }
                        }
                    }
                }
                if c.failed() {
                    return c.report();
                }
            }
        }
    }
    c.report()
}

/// Walls with `l_ζ = 1`, `ζ² ∈ {-4, -8}` and `d ≤ d_max`; when no such wall exists
/// for some `q`, the one with smallest `d` is used so every `q` is exercised.
fn l1_walls(q_: i64, d_max: i64) -> Vec<WallGeometry> {
    let mut zeta2s: Vec<i64> = [-4, -8].into_iter().filter(|z| -z + 1 + 3 * q_ <= d_max).collect();
    if zeta2s.is_empty() {
        zeta2s.push(-4);
    }
    let mut out = Vec::new();
    for zeta2 in zeta2s {
        for zeta_k in zeta_k_choices(zeta2, q_, 1) {
            out.extend(walls_for(zeta2 - 4, q_, zeta2, zeta_k));
        }
    }
    out
}

fn l1_blocks(q_: i64) -> Vec<Vec<i64>> {
    match q_ {
        0 => vec![vec![]],
        1 => vec![vec![1], vec![2]],
        2 => vec![vec![1, 1], vec![2, 3]],
        n => vec![vec![1; n as usize]],
    }
}

fn oracle_l1(grid: &Grid) -> PropertyReport {
    let mut c = Checker::new("oracle_l1");
    let d_max = grid.d_max.unwrap_or(9);
    let r_max = grid.r_max.unwrap_or(1);
    for q_ in grid.q_range(0, 2) {
        let sigma_vals: &[(i64, i64)] = if q_ == 0 { &[(0, 0)] } else { &[(-1, -2), (2, 1), (1, 3)] };
        for blocks in l1_blocks(q_) {
            for wall in l1_walls(q_, d_max) {
                for &za in &[-3, -1, 0, 2] {
                    for &(sz, sa) in sigma_vals {
                        for &(k2, ka, a2) in &[(8 - 8 * q_, 0, -1), (5, 3, 2), (-2, -1, 0)] {
                            let p = pairings(wall.zeta2, wall.zeta_k, za, sz, sa, 1, k2, ka, a2);
                            let Some(model) = c.ok(model_for(q_, &blocks, &p), || ctx_pairings(&p)) else {
                                continue;
                            };
                            let vol = model.vol();
                            for r in 0..=r_max.min(wall.d() / 2) {
                                let ctx =
                                    || format!("{} {} blocks={blocks:?} r={r}", ctx_wall(&wall), ctx_pairings(&p));
                                let closed = c.ok(delta_l1(&wall, &p, &vol, r as u32), ctx);
                                let oracle = c.ok(delta_oracle_l1(&model, &wall, r as u32), ctx);
                                if let (Some(a), Some(b)) = (closed, oracle) {
                                    c.q_eq(&a.value, &b.value, ctx);
                                }
                            }
                        }
                    }
                }
                if c.failed() {
                    return c.report();
                }
            }
        }
    }
    c.report()
}

/// Increasing index subsets of `1..=n` of size at most `k`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize <= k {
            out.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect());
        }
    }
    out
}

fn odd_class_models(q_: i64) -> Vec<PairingInput> {
    let dummy = pairings(-1, 1, 0, 0, 0, 0, 0, 0, 0);
    let mut out: Vec<PairingInput> =
        blocks_for(q_).into_iter().take(2).map(|b| PairingInput::with_blocks(q_ as usize, b, dummy.clone())).collect();
    if q_ == 2 {
        // a non-block form: Pfaffian 2·3 - 1·0 + 0·5 = 6
        out.push(PairingInput {
            q: 2,
            a_blocks: None,
            a_matrix: Some(vec![vec![0, 2, 1, 0], vec![-2, 0, 5, 0], vec![-1, -5, 0, 3], vec![0, 0, -3, 0]]),
            pairings: dummy,
        });
    }
    out
}

fn odd_classes(grid: &Grid) -> PropertyReport {
    let mut c = Checker::new("odd_classes");
    let d_max = grid.d_max.unwrap_or(8);
    for q_ in grid.q_range(1, 2) {
        let n = 2 * q_ as usize;
        let gammas = subsets(n, 4);
        let threes = subsets(n, 4);
        for base in odd_class_models(q_) {
            for wall in l0_walls(q_, d_max) {
                for &(za, sz, sa) in &[(-2, 1, -1), (1, -2, 2), (3, 1, 1)] {
                    let mut input = base.clone();
                    input.pairings = pairings(wall.zeta2, wall.zeta_k, za, sz, sa, sigma_k_for(&wall, sz), 0, 0, -1);
                    let Some(model) = c.ok(build_model(&input), || ctx_pairings(&input.pairings)) else {
                        continue;
                    };
                    for g in &gammas {
                        for t in &threes {
                            if g.len() + t.len() > 4 {
                                continue;
                            }
                            if (g.len() + t.len()) % 2 == 1 {
                                let word = InsertionWord { r: 0, s: 0, gammas: g.clone(), threes: t.clone() };
                                let ctx = || format!("{} odd word {word:?}", ctx_wall(&wall));
                                let closed = c.ok(delta_l0_odd(&wall, &model, &word), ctx);
                                let oracle = c.ok(delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Auto), ctx);
                                if let (Some(a), Some(b)) = (closed, oracle) {
                                    c.check(a.value.is_zero() && b.value.is_zero(), || {
                                        format!("{}: nonzero value", ctx())
                                    });
                                }
                                continue;
                            }
                            let odd_deg = (3 * g.len() + t.len()) as i64;
                            let rest = 2 * wall.d() - odd_deg;
                            if rest < 0 || rest % 2 != 0 {
                                continue;
                            }
                            for r in 0..=rest / 4 {
                                let word = InsertionWord {
                                    r: r as u32,
                                    s: ((rest - 4 * r) / 2) as u32,
                                    gammas: g.clone(),
                                    threes: t.clone(),
                                };
                                let ctx = || {
                                    format!(
                                        "{} {} a={:?} word={word:?}",
                                        ctx_wall(&wall),
                                        ctx_pairings(model.pairings()),
                                        input.a_matrix()
                                    )
                                };
                                let closed = c.ok(delta_l0_odd(&wall, &model, &word), ctx);
                                let oracle = c.ok(delta_oracle_l0(&model, &wall, &word, EmptySideBranch::Auto), ctx);
                                if let (Some(a), Some(b)) = (closed, oracle) {
                                    c.q_eq(&a.value, &b.value, ctx);
                                }
                            }
                        }
                    }
                }
                if c.failed() {
                    return c.report();
                }
            }
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// Segre machinery

/// A random homogeneous element of degree `deg` with few small integer terms.
fn random_homogeneous(rng: &mut ChaCha8Rng, model: &JacobianModel, deg: u32, max_terms: usize) -> GradedElement {
    let basis = model.ring().homogeneous_basis(deg);
    let mut out = model.ring().zero();
    if basis.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let m = &basis[rng.gen_range(0..basis.len())];
        out += &m.scale_int(rng.gen_range(-3..=3));
    }
    out
}

fn random_model(rng: &mut ChaCha8Rng, q_: i64, zeta2: i64, zeta_k: i64) -> JacobianModel {
    let blocks: Vec<i64> = (0..q_).map(|_| [1, 2, -1, 3][rng.gen_range(0..4)]).collect();
    let mut r = |lo: i64, hi: i64| rng.gen_range(lo..=hi);
    let p = pairings(zeta2, zeta_k, r(-3, 3), r(-3, 3), r(-3, 3), r(-3, 3), r(-8, 8), r(-3, 3), r(-3, 3));
    model_for(q_, &blocks, &p).expect("valid random model")
}

fn segre(seed: u64) -> PropertyReport {
    let mut c = Checker::new("segre");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..24 {
        let q_ = trial % 3;
        // an l = 1 wall; only ζ², ζ·K enter the Segre classes
        let zeta2 = [-4, -8, -3, -5][rng.gen_range(0..4)];
        let ks = zeta_k_choices(zeta2, q_, 1);
        let zeta_k = ks[rng.gen_range(0..ks.len())];
        let Some(wall) =
            c.ok(WallGeometry::with_w_equal_zeta(zeta2 - 4, q_, zeta2, zeta_k), || format!("zeta2={zeta2}"))
        else {
            continue;
        };
        let model = random_model(&mut rng, q_, zeta2, zeta_k);
        let ring = model.ring();
        let a: Vec<GradedElement> = (1..=6).map(|i| random_homogeneous(&mut rng, &model, 2 * i, 5)).collect();
        let data = ChernData::new(ring, q(rng.gen_range(0..5)), a).expect("homogeneous");
        let inverse = total_chern(&data, 6).inverse_unit_series().expect("unit");
        let ctx = |what: &str, n: i64| format!("trial {trial} (q={q_}, seed={seed}): {what} at n={n}");
        for n in 0..=6i64 {
            let s = segre_from_ch(&data, n).expect("n >= 0");
            c.eq(&s, &inverse.homogeneous_part(2 * n as u32), || ctx("determinant vs series inversion", n));
            let mut conv = ring.zero();
            for i in 0..=n {
                conv +=
                    &(&chern_from_ch(&data, i).expect("i >= 0") * &segre_from_ch(&data, n - i).expect("n - i >= 0"));
            }
            c.eq(&conv, &if n == 0 { ring.one() } else { ring.zero() }, || ctx("sum c_i s_(n-i)", n));

            let Some(pair_sum) = c.ok(segre_pair_sum(&model, &wall, n), || ctx("segre sum", n)) else {
                continue;
            };
            c.eq(&sn_closed(&model, n), &pair_sum, || ctx("closed s_n vs determinant sum", n));
            let k2 = &ring.canonical() * &ring.canonical();
            let four_e = model.e_zeta().scale_int(4);
            let mut rhs = in_closed(&model, n).scale_int(2);
            if n >= 2 {
                let coeff = Q::from_integer(binom(n, 2) * 2);
                rhs += &(&k2 * &four_e.pow(n as u32 - 2)).scale(&coeff);
            }
            let lhs = pair_sum.scale(&Q::from_integer(factorial(n as u64)));
            c.eq(&lhs, &rhs, || ctx("n! s_n vs 2 I_n + 2 C(n,2) K^2 (4 e_zeta)^(n-2)", n));
            c.eq(&in_recursive(&model, n), &in_closed(&model, n), || ctx("I_n recursion vs closed form", n));
            c.eq(&in_determinant(&model, n as usize), &in_closed(&model, n), || {
                ctx("I_n determinant vs closed form", n)
            });
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// structural identities

fn structural(grid: &Grid, fault: Option<Fault>) -> PropertyReport {
    let mut c = Checker::new("structural");
    let bound = grid.pair_bound.unwrap_or(20);
    for q_ in grid.q_range(0, 4) {
        for zeta2 in -bound..=-1 {
            for zeta_k in -bound..=bound {
                for p1 in (-bound..=zeta2).filter(|p| (zeta2 - p).rem_euclid(4) == 0) {
                    let Ok(params) = wall_params(p1, q_, zeta2, zeta_k) else {
                        continue;
                    };
                    c.check(params.n_plus + params.n_minus + q_ + 2 * params.l == params.d - 1, || {
                        format!("dimension identity fails at p1={p1} q={q_} zeta2={zeta2} zetaK={zeta_k}")
                    });
                    if let Ok(mirror) = wall_params(p1, q_, zeta2, -zeta_k) {
                        c.check(
                            (mirror.h_plus, mirror.n_plus, mirror.d, mirror.l)
                                == (params.h_minus, params.n_minus, params.d, params.l),
                            || format!("zeta -> -zeta symmetry fails at p1={p1} q={q_} zeta2={zeta2} zetaK={zeta_k}"),
                        );
                    }
                    let h_sign = sign(params.h_plus);
                    let dq_sign = sign(params.d + q_);
                    for w2 in (-bound..=bound).filter(|w| (p1 - w).rem_euclid(4) == 0) {
                        for zeta_w in (-bound..=bound).filter(|x| (zeta2 - 2 * x + w2).rem_euclid(4) == 0) {
                            let x2 = (zeta2 - 2 * zeta_w + w2) / 4;
                            for w_k in (-bound..=bound).filter(|k| (w2 - k).rem_euclid(2) == 0) {
                                if (x2 - (zeta_k - w_k) / 2).rem_euclid(2) != 0 {
                                    continue;
                                }
                                let mut eps = eps_kotschick(zeta2, zeta_w, w2).expect("parity checked");
                                if fault == Some(Fault::EpsSign) {
                                    eps = -eps;
                                }
                                let eps_s = eps_complex(w_k, w2).expect("parity checked");
                                if c.failed() {
                                    return c.report();
                                }
                                c.check(eps_s * h_sign == dq_sign * eps, || {
                                    format!(
                                        "sign identity fails at p1={p1} q={q_} zeta2={zeta2} zetaK={zeta_k} \
                                         zetaW={zeta_w} w2={w2} wK={w_k}"
                                    )
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// leading terms

/// Coefficients (constant first) of the polynomial through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> Vec<Q> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![Q::zero(); n];
    for k in (0..n).rev() {
        // coeffs ← coeffs · (x - xs[k]) + dd[k]
        let mut next = vec![Q::zero(); n];
        for i in 0..n {
            if i + 1 < n {
                next[i + 1] += &coeffs[i];
            }
            next[i] -= &coeffs[i] * &xs[k];
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

fn leading(grid: &Grid) -> PropertyReport {
    let mut c = Checker::new("leading");
    let d_max = grid.d_max.unwrap_or(11);
    for q_ in grid.q_range(0, 2) {
        let blocks = blocks_for(q_).pop().expect("nonempty");
        let mut walls = l0_walls(q_, d_max);
        walls.extend(l1_walls(q_, d_max));
        for wall in walls {
            let l = wall.l();
            for &(sz, sa, a2, k2) in &[(1, 1, -1, 8), (-2, 3, 2, 0), (3, -1, 1, -4)] {
                for r in 0..=wall.d() / 2 {
                    let deg = wall.d() - 2 * r;
                    if deg < 2 * l + q_ {
                        continue;
                    }
                    let modulus = deg - 2 * l - q_ + 2;
                    let mut xs = Vec::new();
                    let mut ys = Vec::new();
                    let mut ok = true;
                    for a in 0..=deg {
                        let p = pairings(wall.zeta2, wall.zeta_k, 2 * a, sz, sa, sigma_k_for(&wall, sz), k2, 0, a2);
                        let vol = model_for(q_, &blocks, &p).expect("valid").vol();
                        let exact = if l == 0 {
                            delta_l0(&wall, &p, &vol, r as u32)
                        } else {
                            delta_l1(&wall, &p, &vol, r as u32)
                        };
                        let lead = delta_leading(&wall, &p, &vol, r as u32);
                        let ctx = || format!("{} {} r={r}", ctx_wall(&wall), ctx_pairings(&p));
                        match (c.ok(exact, ctx), c.ok(lead, ctx)) {
                            (Some(e), Some(t)) => {
                                xs.push(q(a));
                                ys.push(e.value - t.value);
                            }
                            _ => ok = false,
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let coeffs = interpolate(&xs, &ys);
                    let low: Vec<String> =
                        coeffs.iter().take(modulus.max(0) as usize).filter(|x| !x.is_zero()).map(fmt_q).collect();
                    c.check(low.is_empty(), || {
                        format!(
                            "{} sigmaZeta={sz} sigmaAlpha={sa} alpha2={a2} r={r}: difference not divisible by a^{modulus}, \
                             coefficients {:?}",
                            ctx_wall(&wall),
                            coeffs.iter().map(fmt_q).collect::<Vec<_>>()
                        )
                    });
                }
            }
            if c.failed() {
                return c.report();
            }
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// hidden data and scale

fn oracle_value(model: &JacobianModel, wall: &WallGeometry, r: u32) -> Result<Q> {
    if wall.l() == 0 {
        let word = InsertionWord::power(wall.d() as u32, r)?;
        Ok(delta_oracle_l0(model, wall, &word, EmptySideBranch::Auto)?.value)
    } else {
        Ok(delta_oracle_l1(model, wall, r)?.value)
    }
}

fn closed_value(wall: &WallGeometry, p: &Pairings, vol: &Q, r: u32) -> Result<Q> {
    if wall.l() == 0 {
        Ok(delta_l0(wall, p, vol, r)?.value)
    } else {
        Ok(delta_l1(wall, p, vol, r)?.value)
    }
}

fn a_matrix_variants(q_: i64) -> Vec<PairingInput> {
    let dummy = pairings(-1, 1, 0, 0, 0, 0, 0, 0, 0);
    let blocks: Vec<Vec<i64>> = match q_ {
        1 => vec![vec![6], vec![6]],
        2 => vec![vec![1, 6], vec![2, 3], vec![-2, -3], vec![3, 2]],
        _ => vec![vec![1, 2, 3], vec![6, 1, 1], vec![-1, -6, 1]],
    };
    let mut out: Vec<PairingInput> =
        blocks.into_iter().map(|b| PairingInput::with_blocks(q_ as usize, b, dummy.clone())).collect();
    match q_ {
        1 => {
            out[1] =
                PairingInput { q: 1, a_blocks: None, a_matrix: Some(vec![vec![0, 6], vec![-6, 0]]), pairings: dummy }
        }
        2 => out.push(PairingInput {
            q: 2,
            a_blocks: None,
            a_matrix: Some(vec![vec![0, 2, 1, 0], vec![-2, 0, 5, 0], vec![-1, -5, 0, 3], vec![0, 0, -3, 0]]),
            pairings: dummy,
        }),
        _ => {}
    }
    out
}

fn hidden_data() -> PropertyReport {
    let mut c = Checker::new("hidden_data");
    for q_ in 1..=3i64 {
        let mut walls = l0_walls(q_, 8);
        if q_ <= 2 {
            walls.extend(l1_walls(q_, 11));
        }
        for wall in walls {
            let interior = !wall.empty_plus_side() && wall.params.h_minus + wall.q + wall.l() > 0;
            for &(za, sz, sa) in &[(3, 1, -2), (-1, 2, 1)] {
                let base_sk = sigma_k_for(&wall, sz);
                let base = pairings(wall.zeta2, wall.zeta_k, za, sz, sa, base_sk, 4, 1, -1);
                let ctx = |what: &str, r: u32| format!("{what}: {} {} r={r}", ctx_wall(&wall), ctx_pairings(&base));
                for r in 0..=(wall.d() / 2).min(1) as u32 {
                    let mut values = Vec::new();
                    for mut input in a_matrix_variants(q_) {
                        input.pairings = base.clone();
                        let model = build_model(&input).expect("valid");
                        c.q_eq(&model.vol(), &q(6), || ctx("vol of variant", r));
                        if let Some(v) = c.ok(oracle_value(&model, &wall, r), || ctx("oracle", r)) {
                            values.push(v);
                        }
                    }
                    for v in &values[1..] {
                        c.q_eq(v, &values[0], || ctx("a_ij change at fixed vol", r));
                    }
                    let reference = values[0].clone();
                    let blocks = match q_ {
                        1 => vec![6],
                        2 => vec![1, 6],
                        _ => vec![1, 2, 3],
                    };
                    // Σ·K is pinned on walls with an empty ζ side
                    let sk_choices: Vec<i64> =
                        if wall.empty_plus_side() { vec![base_sk] } else { vec![base_sk, -5, 7] };
                    for sk in sk_choices {
                        for ka in [-3, 0, 4] {
                            let mut p = base.clone();
                            p.sigma_k = q(sk);
                            p.k_alpha = q(ka);
                            let model = model_for(q_, &blocks, &p).expect("valid");
                            if let Some(v) = c.ok(oracle_value(&model, &wall, r), || ctx("oracle", r)) {
                                c.q_eq(&v, &reference, || {
                                    format!("{} with sigmaK={sk} Kalpha={ka}", ctx("Sigma.K / K.alpha change", r))
                                });
                            }
                        }
                    }
                    if interior {
                        let flipped = wall.flip_canonical().expect("symmetric conditions");
                        let mut p = base.clone();
                        p.zeta_k = -p.zeta_k.clone();
                        p.sigma_k = -p.sigma_k.clone();
                        p.k_alpha = -p.k_alpha.clone();
                        let model = model_for(q_, &blocks, &p).expect("valid");
                        if let Some(v) = c.ok(oracle_value(&model, &flipped, r), || ctx("oracle", r)) {
                            c.q_eq(&v, &reference, || ctx("K -> -K", r));
                        }
                    }
                }
            }
            if c.failed() {
                return c.report();
            }
        }
    }
    c.report()
}

fn scale() -> PropertyReport {
    let mut c = Checker::new("scale");
    for q_ in 1..=2i64 {
        let mut walls = l0_walls(q_, 7);
        walls.extend(l1_walls(q_, 11));
        for wall in walls {
            for &(za, sz, sa) in &[(3, 1, -2), (-1, 2, 1)] {
                for r in 0..=(wall.d() / 2).min(2) as u32 {
                    let mut seen: Vec<(i64, Q, Q)> = Vec::new();
                    for factor in 1..=3i64 {
                        let blocks = vec![6 / factor; q_ as usize];
                        let p = pairings(
                            wall.zeta2,
                            wall.zeta_k,
                            za,
                            sz * factor,
                            sa * factor,
                            sigma_k_for(&wall, sz) * factor,
                            4,
                            1,
                            -1,
                        );
                        let model = model_for(q_, &blocks, &p).expect("valid");
                        let vol = model.vol();
                        let expected_vol = q(6i64.pow(q_ as u32)) / q(factor.pow(q_ as u32));
                        c.q_eq(&vol, &expected_vol, || format!("vol scaling at factor {factor}"));
                        let ctx = || format!("{} {} r={r} factor={factor}", ctx_wall(&wall), ctx_pairings(&p));
                        let closed = c.ok(closed_value(&wall, &p, &vol, r), ctx);
                        let oracle = c.ok(oracle_value(&model, &wall, r), ctx);
                        if let (Some(a), Some(b)) = (closed, oracle) {
                            seen.push((factor, a, b));
                        }
                    }
                    for (factor, a, b) in &seen {
                        c.q_eq(a, &seen[0].1, || {
                            format!("closed form changes under Sigma -> {factor} Sigma: {}", ctx_wall(&wall))
                        });
                        c.q_eq(b, &seen[0].2, || {
                            format!("ring value changes under Sigma -> {factor} Sigma: {}", ctx_wall(&wall))
                        });
                    }
                }
            }
            if c.failed() {
                return c.report();
            }
        }
    }
    c.report()
}

// ---------------------------------------------------------------------------
// model axioms and the simple-type witness

fn model_axioms(seed: u64) -> PropertyReport {
    let mut c = Checker::new("model_axioms");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for q_ in 0..=4i64 {
        for trial in 0..6 {
            let model = random_model(&mut rng, q_, -4, 0);
            let e = model.big_e();
            let ctx = |what: &str| format!("{what} (q={q_}, trial {trial}, seed={seed})");
            let sigma_omega = (&model.ring().sigma() * model.omega()).scale_int(-2);
            c.eq(&(e * e), &sigma_omega, || ctx("E^2 = -2 Sigma omega"));
            c.check(e.pow(3).is_zero(), || ctx("E^3 = 0"));
            c.check(e.pow(4).is_zero(), || ctx("E^4 = 0"));
            c.check(model.e_top().is_zero(), || ctx("e_S = 0"));
            let closed = model.omega().scale(&(q(-2) * &model.pairings().sigma_alpha));
            c.eq(&model.e_alpha(), &closed, || ctx("e_alpha = -2 (Sigma.alpha) omega"));
            c.eq(&model.e_via_slant(ALPHA), &closed, || ctx("E^2 slant alpha"));
        }
    }
    c.report()
}

/// An `l_ζ = 1` wall on which `δ(x α^(d-2)) ≠ 4 δ(α^d)`.
pub fn simple_type_witness() -> Result<(WallGeometry, Q, Q)> {
    let wall = WallGeometry::with_w_equal_zeta(-8, 0, -4, 0)?;
    let p = pairings(-4, 0, 2, 0, 0, 0, 8, 0, -1);
    let model = model_for(0, &[], &p)?;
    let plain = delta_oracle_l1(&model, &wall, 0)?.value;
    let with_point = delta_oracle_l1(&model, &wall, 1)?.value;
    Ok((wall, plain, with_point))
}

fn simple_type() -> PropertyReport {
    let mut c = Checker::new("simple_type");
    if let Some((wall, plain, with_point)) = c.ok(simple_type_witness(), || "witness".into()) {
        let p = pairings(-4, 0, 2, 0, 0, 0, 8, 0, -1);
        let ctx = || ctx_wall(&wall);
        if let Some(v) = c.ok(delta_l1(&wall, &p, &q(1), 0), ctx) {
            c.q_eq(&v.value, &plain, ctx);
        }
        if let Some(v) = c.ok(delta_l1(&wall, &p, &q(1), 1), ctx) {
            c.q_eq(&v.value, &with_point, ctx);
        }
        c.check(with_point != &plain * q(4), || {
            format!("simple type holds: delta(x alpha^3) = {} = 4 delta(alpha^5)", fmt_q(&with_point))
        });
    }
    c.report()
}
