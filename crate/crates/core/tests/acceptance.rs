//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness; the process exits nonzero if any criterion fails.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};
use tyinv::corpus::{category_names, load_category, load_triangulation};
use tyinv::exactnum::{lcm, Cyclotomic, QmodZ, Rational};
use tyinv::gauss::{gauss_sum, gauss_sum_exhaustive, gauss_sum_value, Classification, PreMetricGroup};
use tyinv::statesum::{brute_force_state_sum, invariant, InvariantOptions, Prepared};
use tyinv::triangulation::{skeleton, Perm};
use tyinv::tycat::{verify_axioms, AxiomReport, FusionData, Label, Perturbed, TYData};

type Outcome = Result<String, String>;

const SMALL: [&str; 8] = ["s3_one_tet", "s3_two_tet", "s3_three_tet", "rp3", "l31", "s2xs1", "rp3_two_vertex", "quaternionic"];
const BRUTE_LIMIT: u64 = 20_000_000;

fn categories() -> Vec<(&'static str, TYData)> {
    category_names().into_iter().map(|n| (n, load_category(n).unwrap())).collect()
}

fn prepared(name: &str) -> Prepared {
    Prepared::new(load_triangulation(name).unwrap()).unwrap()
}

fn total(p: &Prepared, cat: &TYData) -> Cyclotomic {
    invariant(p, cat, InvariantOptions::default()).unwrap().total
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let cats = categories();
    let mut n = 0;
    for t in SMALL {
        let p = prepared(t);
        for (c, cat) in &cats {
            let brute = brute_force_state_sum(&p, cat, BRUTE_LIMIT).map_err(|e| format!("{t} {c}: {e}"))?;
            let fast = total(&p, cat);
            ensure(fast == brute.total, || format!("{t} {c}: fpt {fast} != brute {}", brute.total))?;
            n += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 300.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{n} fixture/category pairs agree exactly in {secs:.1}s"))
}

fn per_cocycle_equivalence() -> Outcome {
    let cats = categories();
    let mut n = 0;
    for t in SMALL {
        let p = prepared(t);
        for (c, cat) in &cats {
            let brute = brute_force_state_sum(&p, cat, BRUTE_LIMIT).map_err(|e| e.to_string())?;
            let fast = invariant(&p, cat, InvariantOptions::default()).map_err(|e| e.to_string())?;
            for s in &fast.per_cocycle {
                let b = brute.per_cocycle.get(&s.cocycle).cloned().unwrap_or_else(|| Cyclotomic::zero(cat.order()));
                ensure(s.value == b, || format!("{t} {c} cocycle {}: fpt {} != brute {b}", s.cocycle, s.value))?;
                n += 1;
            }
            // every coloring projects to an enumerated cocycle
            for phi in brute.per_cocycle.keys() {
                ensure(fast.per_cocycle.iter().any(|s| &s.cocycle == phi), || format!("{t} {c}: stray cocycle {phi}"))?;
            }
        }
    }
    Ok(format!("{n} partial sums agree exactly"))
}

/// Random prime-power orders with product at most 200.
fn random_orders(rng: &mut ChaCha8Rng) -> Vec<u64> {
    let choices = [2u64, 4, 8, 16, 3, 9, 27, 5, 25, 7, 49];
    let mut orders = Vec::new();
    let mut size = 1;
    let len = rng.gen_range(1..=4);
    for _ in 0..len {
        let m = *choices.choose(rng).unwrap();
        if size * m <= 200 {
            orders.push(m);
            size *= m;
        }
    }
    orders
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A random pre-metric group; `shape` 1 forces an isolated coordinate on
/// which q vanishes, shape 2 one on which it does not.
fn random_premetric(rng: &mut ChaCha8Rng, shape: u8) -> PreMetricGroup {
    let mut orders = random_orders(rng);
    if shape == 2 && !orders.iter().any(|&m| m % 2 == 0) {
        if orders.iter().product::<u64>() * 2 > 200 {
            orders.pop();
        }
        orders.push(2);
    }
    let k = orders.len();
    let mut gram = vec![vec![QmodZ::zero(); k]; k];
    let mut q = vec![QmodZ::zero(); k];
    for i in 0..k {
        let m = orders[i] as i64;
        // q(g_i) in (1/2m)Z for m even, (1/m)Z for m odd
        q[i] = if m % 2 == 0 { QmodZ::new(rng.gen_range(0..2 * m), 2 * m) } else { QmodZ::new(rng.gen_range(0..m), m) };
        gram[i][i] = q[i].clone() + q[i].clone();
        for j in 0..i {
            let g = gcd(orders[i], orders[j]) as i64;
            let v = QmodZ::new(rng.gen_range(0..g), g);
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    if shape > 0 {
        let i = if shape == 2 { orders.iter().position(|&m| m % 2 == 0).unwrap() } else { rng.gen_range(0..k) };
        for j in 0..k {
            gram[i][j] = QmodZ::zero();
            gram[j][i] = QmodZ::zero();
        }
        // on Z/2^r the function x -> x^2 / 2 has zero polarization
        q[i] = if shape == 2 { QmodZ::new(1, 2) } else { QmodZ::zero() };
    }
    PreMetricGroup::new(orders, q, gram).expect("generator produces valid forms")
}

fn field_order(g: &PreMetricGroup) -> u64 {
    g.orders().iter().fold(8, |acc, &m| lcm(acc, 4 * m))
}

fn gauss_engine() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    let mut primes = [0usize; 4];
    let cases = 600;
    for i in 0..cases {
        let g = random_premetric(&mut rng, (i % 3) as u8);
        let order = field_order(&g);
        let fast = gauss_sum_value(&g, order).map_err(|e| e.to_string())?;
        let slow = gauss_sum_exhaustive(&g, order).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("case {i} {:?}: closed form {fast} != direct {slow}", g))?;
        let kind = match gauss_sum(&g).classification {
            Classification::Nondegenerate => "nondegenerate",
            Classification::Tame => "tame",
            Classification::Wild { .. } => "wild",
        };
        *seen.entry(kind).or_default() += 1;
        for (slot, p) in [2u64, 3, 5, 7].iter().enumerate() {
            if g.orders().iter().any(|m| m % p == 0) {
                primes[slot] += 1;
            }
        }
    }
    ensure(seen.len() == 3, || format!("missing a degeneracy class: {seen:?}"))?;
    ensure(primes.iter().all(|&c| c > 0), || format!("missing a prime: {primes:?}"))?;
    // the four canonical table rows
    let q = |n, d| QmodZ::new(n, d);
    let rows = [
        (PreMetricGroup::new(vec![3], vec![q(2, 3)], vec![vec![q(1, 3)]]), -Cyclotomic::root_of_unity(1, 4)),
        (PreMetricGroup::new(vec![2], vec![q(1, 4)], vec![vec![q(1, 2)]]), Cyclotomic::root_of_unity(1, 8)),
        (
            PreMetricGroup::new(vec![2, 2], vec![q(0, 1), q(0, 1)], vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]]),
            Cyclotomic::one(8),
        ),
        (
            PreMetricGroup::new(vec![2, 2], vec![q(1, 2), q(1, 2)], vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]]),
            -Cyclotomic::one(8),
        ),
    ];
    for (g, want) in rows {
        let g = g.map_err(|e| e.to_string())?;
        let theta = gauss_sum(&g).theta(field_order(&g)).map_err(|e| e.to_string())?;
        ensure(theta == want, || format!("canonical row {:?}: {theta} != {want}", g.orders()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{cases} random forms {seen:?}, 4 canonical rows, {secs:.1}s"))
}

fn topological_invariance() -> Outcome {
    for (c, cat) in categories() {
        let want = Cyclotomic::from_rational(cat.order(), &Rational::new(1.into(), (cat.global_dim() as i64).into()));
        for t in ["s3_one_tet", "s3_two_tet", "s3_three_tet"] {
            let got = total(&prepared(t), &cat);
            ensure(got == want, || format!("{t} {c}: {got} != 1/{}", cat.global_dim()))?;
        }
        let a = total(&prepared("rp3"), &cat);
        let b = total(&prepared("rp3_two_vertex"), &cat);
        ensure(a == b, || format!("{c}: rp3 {a} != rp3_two_vertex {b}"))?;
        let q1 = total(&prepared("quaternionic"), &cat);
        let q2 = total(&prepared("census_q8_30"), &cat);
        ensure(q1 == q2 || q1 == q2.conj(), || format!("{c}: quaternionic {q1} vs census {q2}"))?;
    }
    Ok("S^3 gives 1/(2|A|) on three triangulations; RP^3 and S^3/Q8 agree across triangulations".into())
}

fn connected_sum() -> Outcome {
    for (c, cat) in categories() {
        let r = total(&prepared("rp3"), &cat);
        let s = total(&prepared("rp3_sum_rp3"), &cat);
        let d = Rational::from_integer((cat.global_dim() as i64).into());
        let want = (&r * &r).scale(&d);
        ensure(s == want, || format!("{c}: {s} != D * {r}^2"))?;
    }
    Ok("RP^3 # RP^3 = D |RP^3|^2 for all categories".into())
}

fn axiom_suite() -> Outcome {
    let cats = categories();
    for (c, cat) in &cats {
        ensure(cat.group_size() <= 8, || format!("{c} is larger than expected"))?;
        ensure(verify_axioms(cat).is_pass(), || format!("{c} fails: {:?}", verify_axioms(cat)))?;
    }
    let cat = load_category("z2z2_hyp_minus").unwrap();
    let entry = [Label::M, Label::M, Label::M, Label::M, Label::G(1), Label::G(2)];
    let bad = Perturbed { inner: &cat, entry, factor: Cyclotomic::root_of_unity(1, 4) };
    match verify_axioms(&bad) {
        AxiomReport::Fail { equation, witness } if !witness.is_empty() => {
            Ok(format!("{} categories pass; corrupted F fails {equation} at {witness:?}", cats.len()))
        }
        other => Err(format!("corrupted data not caught: {other:?}")),
    }
}

fn choice_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let cats = categories();
    let perms = Perm::all();
    let fixtures = ["s3_one_tet", "s3_two_tet", "s3_three_tet", "rp3", "rp3_two_vertex", "l31", "s2xs1", "quaternionic", "rp3_sum_rp3", "census_q8_30"];
    let mut trials = 0;
    for t in fixtures {
        let base = load_triangulation(t).unwrap();
        let base_p = Prepared::new(base.clone()).unwrap();
        let reference: Vec<Cyclotomic> = cats.iter().map(|(_, cat)| total(&base_p, cat)).collect();
        let n = base.size();
        for trial in 0..50 {
            let (c, cat) = &cats[trial % cats.len()];
            let mut tet_map: Vec<usize> = (0..n).collect();
            tet_map.shuffle(&mut rng);
            let vertex_maps: Vec<Perm> = (0..n).map(|_| *perms.choose(&mut rng).unwrap()).collect();
            let tri = base.relabel(&tet_map, &vertex_maps);
            let skel = skeleton(&tri);
            let flip: Vec<bool> = (0..skel.num_edges()).map(|_| rng.gen()).collect();
            let p = Prepared::with_skeleton(tri, skel.with_flipped_edges(&flip)).map_err(|e| e.to_string())?;
            // the new tetrahedron 0 is always positive, so the global
            // orientation flips when its old orientation and relabelling disagree
            let old0 = tet_map.iter().position(|&x| x == 0).unwrap();
            let same = base_p.orientation.sign(old0) * vertex_maps[old0].sign() > 0;
            let want = if same { reference[trial % cats.len()].clone() } else { reference[trial % cats.len()].conj() };
            let got = total(&p, cat);
            ensure(got == want, || format!("{t} {c} trial {trial}: {got} != {want}"))?;
            trials += 1;
        }
    }
    Ok(format!("{trials} randomized relabellings, all identical (conjugate under orientation reversal)"))
}

fn scaling() -> Outcome {
    let start = Instant::now();
    let p = prepared("census_q8_30");
    let cat = load_category("z2z2_diag_minus").unwrap();
    let r = invariant(&p, &cat, InvariantOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    ensure(r.per_cocycle.len() == 1 << r.betti1, || format!("{} cocycles for betti1 {}", r.per_cocycle.len(), r.betti1))?;
    ensure(r.per_cocycle.len() == 4, || format!("{} cocycles", r.per_cocycle.len()))?;
    let refused = matches!(brute_force_state_sum(&p, &cat, BRUTE_LIMIT), Err(e) if e.is_guard());
    ensure(refused, || "brute force was not refused".into())?;
    Ok(format!(
        "{} tetrahedra, betti1 {}, {} cocycles in {:.2}s; brute force would need {}^{} colorings",
        p.tri.size(),
        r.betti1,
        r.per_cocycle.len(),
        elapsed.as_secs_f64(),
        cat.labels().len(),
        p.skel.num_edges()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 per-cocycle equivalence", per_cocycle_equivalence),
        ("3 gauss-sum engine", gauss_engine),
        ("4 topological invariance", topological_invariance),
        ("5 connected-sum multiplicativity", connected_sum),
        ("6 axiom suite", axiom_suite),
        ("7 choice independence", choice_independence),
        ("8 scaling on census fixture", scaling),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {name}: {reason}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
