//! The verification batteries behind the command-line interface.

use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::arith::{check_identity, RationalFunction, DEFAULT_POINTS};
use crate::equivariant::{pushforward_to_point, LocalizedClass, Space};
use crate::fm::{self, FmError, GeometricAction};
use crate::koszul;
use crate::report::{Check, CheckList, Report};
use crate::superrep;

pub const ALGEBRA_MAX_N: usize = 6;
pub const GEOMETRY_MAX_N: usize = 5;
pub const INTERTWINER_MAX_N: usize = 4;
pub const KOSZUL_MAX_RANK: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UsageError {
    #[error("N = {0} outside 1..={ALGEBRA_MAX_N}")]
    BadN(usize),
    #[error("{lambda} is not a weight of V^(x){n}")]
    BadWeight { n: usize, lambda: i32 },
    #[error("rank {0} exceeds the limit {KOSZUL_MAX_RANK}")]
    RankTooLarge(usize),
    #[error("k = {k} outside 0..={rank}")]
    BadK { rank: usize, k: usize },
    #[error("geometry side supports N <= {GEOMETRY_MAX_N}, got {0}")]
    GeometryTooLarge(usize),
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: usize,
    pub seed: u64,
    pub max_weight: Option<i32>,
}

pub fn algebra_checks(n: usize) -> CheckList {
    let mut out = superrep::verify_relations(n);
    let blocks = superrep::weight_blocks(n);
    let dims: Vec<usize> = blocks.iter().map(|b| b.dim()).collect();
    let binom = |k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let ok = blocks.iter().all(|b| b.dim() == binom(b.k)) && dims.iter().sum::<usize>() == 1 << n;
    out.push(Check::from_bool("weight dims C(N,k), total 2^N", ok, format!("{dims:?}")));
    let h = superrep::coproduct_action(superrep::GeneratorName::H, n);
    let h_ok = blocks.iter().all(|b| {
        let idx = superrep::block_indices(n, b.lambda);
        h.submatrix(&idx, &idx).scalar_value().is_some_and(|v| v == crate::arith::LaurentScalar::q_pow(b.lambda))
    });
    out.push(Check::from_bool("H = q^lambda on each block", h_ok, "scalar on every weight block"));
    let mut anti = superrep::verify_antipode();
    anti.checks.iter_mut().for_each(|c| c.name = format!("antipode: {}", c.name));
    out.checks.extend(anti.checks);
    out
}

pub fn localization_checks(n: usize) -> Result<CheckList, FmError> {
    let mut out = CheckList::default();
    for k in 0..=n {
        let space = Space::Grassmannian { n, k };
        let chi = pushforward_to_point(&LocalizedClass::unit(space)?)?;
        out.push(Check::from_bool(&format!("chi(Gr({k},{n}), O) = 1"), chi.is_one(), chi.to_string()));
    }
    let p1 = Space::Grassmannian { n: 2, k: 1 };
    let chi = pushforward_to_point(&LocalizedClass::det_tau_power(p1, 1)?)?;
    out.push(Check::from_bool("chi(P^1, O(-1)) = 0", chi.is_zero(), chi.to_string()));
    Ok(out)
}

fn in_range(lambda: i32, max_weight: Option<i32>) -> bool {
    max_weight.is_none_or(|m| lambda.abs() <= m)
}

pub fn geometry_checks(opts: &VerifyOptions) -> Result<CheckList, FmError> {
    let n = opts.n;
    let g = GeometricAction::new(n)?;
    let mut out = CheckList::default();
    let nil = g.nilpotency()?;
    out.extend(nil, "nilpotency");
    let unit = RationalFunction::one(n) - RationalFunction::q_pow(n, -2 * n as i32);
    let det = (1..=n).fold(RationalFunction::one(n), |acc, i| acc * RationalFunction::x(n, i));
    for lambda in fm::weights(n).into_iter().filter(|&l| in_range(l, opts.max_weight)) {
        let r = g.commutator(lambda)?;
        let name = format!("FE - EF on block {lambda}");
        out.push(match (&r.scalar, r.enriched_sign, r.epsilon) {
            (Some(s), Some(sign), Some(eps)) if r.x_free_after_det => Check::pass(
                &name,
                format!(
                    "= {s}; sign {sign:+} times x_1..x_N (1 - q^-2N); specialized eps = {eps:+}, cone-relation parity {:+}",
                    r.predicted_parity
                ),
            ),
            _ => Check::fail(&name, format!("{r:?}")),
        });
        if let (Some(sign), Some(s)) = (r.enriched_sign, &r.scalar) {
            let lhs = RationalFunction::parse(s, n)?;
            let rhs = (&det * &unit).scale(sign as i64);
            let sz = check_identity(&lhs, &rhs, opts.seed, DEFAULT_POINTS)?;
            out.push(Check::from_bool(
                &format!("FE - EF on block {lambda} (random points)"),
                sz.holds(),
                format!("{DEFAULT_POINTS} points, seed {:#x}", opts.seed),
            ));
        }
    }
    let ex = g.extremal()?;
    out.push(Check::from_bool(
        "highest weight E(N-2)F(N) = +-(1 - q^2N)",
        ex.highest_sign.is_some(),
        format!("{} (sign {:?})", ex.highest, ex.highest_sign),
    ));
    out.push(Check::from_bool(
        "lowest weight F(-N+2)E(-N) = +-(1 - q^2N)",
        ex.lowest_sign.is_some(),
        format!("{} (sign {:?})", ex.lowest, ex.lowest_sign),
    ));
    let rep = fm::normalized_from(&g)?;
    out.extend(rep.relations(), "normalized");
    if n <= INTERTWINER_MAX_N {
        match fm::intertwiner_for(&rep, opts.seed) {
            Ok(phi) => out.extend(fm::verify_intertwiner(&rep, &phi), "intertwiner"),
            Err(e) => out.push(Check::fail("intertwiner", e.to_string())),
        }
    } else {
        out.note(format!("intertwiner solved only for N <= {INTERTWINER_MAX_N}"));
    }
    Ok(out)
}

pub fn run_verify(opts: &VerifyOptions) -> Result<Report, UsageError> {
    let n = opts.n;
    if n == 0 || n > ALGEBRA_MAX_N {
        return Err(UsageError::BadN(n));
    }
    let t = Instant::now();
    let mut list = CheckList::default();
    list.extend(algebra_checks(n), "algebra");
    if n <= GEOMETRY_MAX_N {
        match geometry_checks(opts) {
            Ok(c) => list.extend(c, "geometry"),
            Err(e) => list.push(Check::fail("geometry", e.to_string())),
        }
    } else {
        list.note(format!("geometry side skipped above N = {GEOMETRY_MAX_N}"));
    }
    match localization_checks(n) {
        Ok(c) => list.extend(c, "localization"),
        Err(e) => list.push(Check::fail("localization", e.to_string())),
    }
    if n <= KOSZUL_MAX_RANK {
        for k in 0..=n {
            list.extend(koszul::koszul_battery(n, k), &format!("koszul k={k}"));
        }
    }
    let mut params = Map::new();
    params.insert("n".into(), json!(n));
    params.insert("seed".into(), json!(format!("{:#x}", opts.seed)));
    if let Some(m) = opts.max_weight {
        params.insert("max_weight".into(), json!(m));
    }
    Ok(Report::new("verify", params, list, t.elapsed().as_millis()))
}

pub fn run_koszul(rank: usize, k: usize) -> Result<(Report, Value), UsageError> {
    if rank > KOSZUL_MAX_RANK {
        return Err(UsageError::RankTooLarge(rank));
    }
    if k > rank {
        return Err(UsageError::BadK { rank, k });
    }
    let t = Instant::now();
    let list = koszul::koszul_battery(rank, k);
    let td = koszul::TwistData::generic(rank, Default::default());
    let (minus, plus) = koszul::iterated_cone_classes(rank, k, &td.l, &td.v);
    let target = koszul::generalized_koszul(&(1..=rank as i32 - k as i32).collect(), &td.l, &td.v);
    let dump = json!({
        "target": target.to_json(),
        "cone_minus": minus.to_json(),
        "cone_plus": plus.to_json(),
        "line_bundle": td.l.to_string(),
        "bundle_weights": td.v.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    });
    let mut params = Map::new();
    params.insert("rank".into(), json!(rank));
    params.insert("k".into(), json!(k));
    Ok((Report::new("koszul", params, list, t.elapsed().as_millis()), dump))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Algebra,
    Geometry,
}

/// E(λ), F(λ), K, H blocks at weight λ as JSON, in the canonical basis order of the side.
pub fn matrices(n: usize, lambda: i32, side: Side) -> Result<Value, UsageError> {
    if n == 0 || n > ALGEBRA_MAX_N {
        return Err(UsageError::BadN(n));
    }
    if !superrep::is_weight(n, lambda) {
        return Err(UsageError::BadWeight { n, lambda });
    }
    match side {
        Side::Algebra => {
            use superrep::GeneratorName::*;
            let mut m = Map::new();
            for g in [E, F, K, H] {
                m.insert(g.to_string(), superrep::restrict(g, n, lambda).to_json());
            }
            Ok(json!({ "n": n, "lambda": lambda, "side": "algebra", "blocks": m }))
        }
        Side::Geometry => {
            if n > GEOMETRY_MAX_N {
                return Err(UsageError::GeometryTooLarge(n));
            }
            let err = |_| UsageError::BadWeight { n, lambda };
            let e = fm::matrix_of_functor(&fm::kernel_e(lambda, n).map_err(err)?).map_err(err)?;
            let f = fm::matrix_of_functor(&fm::kernel_f(lambda, n).map_err(err)?).map_err(err)?;
            let id = fm::FunctorMatrix::identity(n, lambda).map_err(err)?;
            let scaled = |e: i32| {
                let mut m = id.clone();
                m.matrix = m.matrix.scale(&RationalFunction::q_pow(n, e));
                m.to_json()
            };
            let mut m = Map::new();
            m.insert("E".into(), e.to_json());
            m.insert("F".into(), f.to_json());
            m.insert("K".into(), scaled(n as i32));
            m.insert("H".into(), scaled(lambda));
            Ok(json!({ "n": n, "lambda": lambda, "side": "geometry", "blocks": m }))
        }
    }
}
