use std::process::ExitCode;
use std::time::{Duration, Instant};

use superk::arith::DEFAULT_SEED;
use superk::equivariant::{pushforward_to_point, LocalizedClass, Space};
use superk::fm::{self, GeometricAction};
use superk::koszul;
use superk::report::CheckList;
use superk::superrep;
use superk::verify;

struct Outcome {
    ok: bool,
    detail: String,
}

fn first_failure(list: &CheckList) -> String {
    list.failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn relations() -> Outcome {
    for n in 1..=6 {
        let list = superrep::verify_relations(n);
        if !list.all_passed() {
            return Outcome { ok: false, detail: format!("N={n} {}", first_failure(&list)) };
        }
    }
    Outcome { ok: true, detail: "E^2 = F^2 = 0, EF+FE = (q^N - q^-N) Id, HEH^-1 = q^2 E, K central; N = 1..6".into() }
}

fn dimensions() -> Outcome {
    for n in 1..=6 {
        let list = verify::algebra_checks(n);
        let c = list.checks.iter().find(|c| c.name.starts_with("weight dims")).expect("dims check");
        if !c.passed() {
            return Outcome { ok: false, detail: format!("N={n} {:?}", c.witness) };
        }
    }
    Outcome { ok: true, detail: "dim (V^N)_(N-2k) = C(N,k), total 2^N; N = 1..6".into() }
}

fn actions() -> Vec<GeometricAction> {
    (1..=5).map(|n| GeometricAction::new(n).expect("geometric action")).collect()
}

fn nilpotency(gs: &[GeometricAction]) -> Outcome {
    for g in gs {
        let list = g.nilpotency().expect("nilpotency");
        if !list.all_passed() {
            return Outcome { ok: false, detail: format!("N={} {}", g.n, first_failure(&list)) };
        }
    }
    Outcome { ok: true, detail: "E(l+2)E(l) = 0, F(l-2)F(l) = 0 for all l; N = 1..5".into() }
}

fn commutators(gs: &[GeometricAction]) -> Outcome {
    let mut agree = 0;
    let mut disagree = 0;
    for g in gs {
        for lambda in fm::weights(g.n) {
            let r = g.commutator(lambda).expect("commutator");
            if !r.passed() {
                return Outcome { ok: false, detail: format!("{r:?}") };
            }
            if r.epsilon == Some(r.predicted_parity) {
                agree += 1;
            } else {
                disagree += 1;
            }
        }
    }
    Outcome {
        ok: true,
        detail: format!(
            "FE - EF = eps (1 - q^2N) Id, x-free; eps vs (-1)^(N-k-1): {agree} agree, {disagree} differ by the global sign"
        ),
    }
}

fn extremal(gs: &[GeometricAction]) -> Outcome {
    let mut signs = Vec::new();
    for g in gs {
        let ex = g.extremal().expect("extremal");
        match (ex.highest_sign, ex.lowest_sign) {
            (Some(h), Some(l)) => signs.push(format!("N={}: {h:+}/{l:+}", g.n)),
            _ => return Outcome { ok: false, detail: format!("{ex:?}") },
        }
    }
    Outcome { ok: true, detail: format!("highest/lowest = +-(1 - q^2N); signs {}", signs.join(", ")) }
}

fn intertwiner_criterion(gs: &[GeometricAction]) -> Outcome {
    let mut dims = Vec::new();
    for g in gs.iter().filter(|g| g.n <= 4) {
        let rep = fm::normalized_from(g).expect("normalized rep");
        let rel = rep.relations();
        if !rel.all_passed() {
            return Outcome { ok: false, detail: format!("N={} {}", g.n, first_failure(&rel)) };
        }
        let phi = match fm::intertwiner_for(&rep, DEFAULT_SEED) {
            Ok(phi) => phi,
            Err(e) => return Outcome { ok: false, detail: format!("N={} {e}", g.n) },
        };
        let checks = fm::verify_intertwiner(&rep, &phi);
        if !checks.all_passed() {
            return Outcome { ok: false, detail: format!("N={} {}", g.n, first_failure(&checks)) };
        }
        dims.push(format!("N={}: {}", g.n, phi.solution_dim));
    }
    Outcome {
        ok: true,
        detail: format!("normalized relations hold, invertible block-diagonal Phi; solution dims {}", dims.join(", ")),
    }
}

fn koszul_identities() -> Outcome {
    let mut count = 0;
    for rank in 0..=4 {
        for k in 0..=rank {
            let list = koszul::koszul_battery(rank, k);
            if !list.all_passed() {
                return Outcome { ok: false, detail: format!("rank {rank} k {k} {}", first_failure(&list)) };
            }
            count += list.checks.len();
        }
    }
    Outcome { ok: true, detail: format!("endpoints, cone-add, cone-/cone+ for rank <= 4, all k; {count} checks") }
}

fn localization() -> Outcome {
    for n in 1..=6 {
        for k in 0..=n {
            let chi = pushforward_to_point(&LocalizedClass::unit(Space::Grassmannian { n, k }).unwrap()).unwrap();
            if !chi.is_one() {
                return Outcome { ok: false, detail: format!("chi(Gr({k},{n}), O) = {chi}") };
            }
        }
    }
    let p1 = pushforward_to_point(&LocalizedClass::det_tau_power(Space::Grassmannian { n: 2, k: 1 }, 1).unwrap()).unwrap();
    if !p1.is_zero() {
        return Outcome { ok: false, detail: format!("chi(P^1, O(-1)) = {p1}") };
    }
    let mut count = 0;
    for n in 1..=5 {
        for k in 0..=n {
            for m in -3..=3 {
                let cls = LocalizedClass::det_tau_power(Space::Grassmannian { n, k }, m).unwrap();
                let chi = pushforward_to_point(&cls).unwrap();
                if !chi.is_laurent_polynomial() {
                    return Outcome { ok: false, detail: format!("Gr({k},{n}), m={m}: {chi}") };
                }
                count += 1;
            }
        }
    }
    Outcome { ok: true, detail: format!("chi(Gr, O) = 1 for N <= 6, chi(P^1, O(-1)) = 0, {count} det-tau pushforwards Laurent") }
}

fn run(id: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let elapsed = t.elapsed();
    let ok = out.ok && elapsed <= budget;
    let tag = if ok { "PASS" } else { "FAIL" };
    let over = if elapsed > budget { format!(" (over budget {budget:?})") } else { String::new() };
    println!("{tag} [{id}] {name}: {} [{:.2?}{over}]", out.detail, elapsed);
    ok
}

fn main() -> ExitCode {
    let t = Instant::now();
    let gs = actions();
    let build = t.elapsed();
    let s = Duration::from_secs;
    let results = [
        run(1, "algebra relations", s(10), relations),
        run(2, "weight dimensions", s(1), dimensions),
        run(3, "geometric nilpotency", s(60), || nilpotency(&gs)),
        run(4, "commutator scalar", s(120), || commutators(&gs)),
        run(5, "highest/lowest weight", s(60), || extremal(&gs)),
        run(6, "normalized rep and intertwiner", s(120), || intertwiner_criterion(&gs)),
        run(7, "Koszul identities", s(30), koszul_identities),
        run(8, "localization sanity", s(60), localization),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} passed (functor matrices built in {build:.2?})", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
