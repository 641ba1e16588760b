use crate::{BettiArgs, BruteArgs, Cli, Command, ComputeArgs, CorpusAction, Failure, GaussArgs};
use serde_json::{json, Value};
use std::time::Instant;
use tyinv::corpus;
use tyinv::exactnum::Cyclotomic;
use tyinv::gauss::{gauss_sum, gauss_sum_exhaustive, Classification, PreMetricGroup};
use tyinv::statesum::{
    brute_force_state_sum, invariant, Constants, InvariantOptions, PartialSum, Prepared, StateSumError,
};
use tyinv::triangulation::{z2_cocycle_basis, Triangulation, TriangulationError};
use tyinv::tycat::{verify_axioms, AxiomReport, CategoryError, FusionData, TYData};

const GUARD: u8 = 2;
const INVALID: u8 = 1;
const MISMATCH: u8 = 3;

pub fn run(cli: &Cli) -> Result<Value, Failure> {
    let digits = cli.digits as usize;
    match &cli.command {
        Command::Compute(args) => compute(args, digits),
        Command::Brute(args) => brute(args, digits),
        Command::Gauss(args) => gauss(args, digits),
        Command::Betti(args) => betti(args),
        Command::CheckAxioms(args) => check_axioms(&load_category(&args.category)?),
        Command::Corpus { action: CorpusAction::List } => Ok(json!({
            "triangulations": corpus::triangulation_names(),
            "categories": corpus::category_names(),
        })),
    }
}

/// `corpus:<name>` or a file path; a bare name that is not a file falls
/// back to the corpus.
fn read_source(arg: &str, kind: &'static str) -> Result<(String, String), Failure> {
    let fetch = |name: &str| {
        let r = if kind == "triangulation" { corpus::triangulation_source(name) } else { corpus::category_source(name) };
        r.map_err(|e| Failure::new(INVALID, "not-found", e.to_string()))
    };
    if let Some(name) = arg.strip_prefix("corpus:") {
        return Ok((name.to_string(), fetch(name)?));
    }
    match std::fs::read_to_string(arg) {
        Ok(text) => Ok((arg.to_string(), text)),
        Err(e) => fetch(arg).map(|t| (arg.to_string(), t)).map_err(|_| Failure::new(INVALID, "io", format!("{arg}: {e}"))),
    }
}

fn load_category(arg: &str) -> Result<TYData, Failure> {
    let (_, text) = read_source(arg, "category")?;
    TYData::from_json(&text).map_err(category_failure)
}

fn load_triangulation(arg: &str) -> Result<(String, Triangulation), Failure> {
    let (name, text) = read_source(arg, "triangulation")?;
    let tri = Triangulation::from_json(&text).map_err(triangulation_failure)?;
    Ok((name, tri))
}

fn category_failure(e: CategoryError) -> Failure {
    let kind = if matches!(e, CategoryError::Json(_)) { "malformed-json" } else { "invalid-category" };
    Failure::new(INVALID, kind, e.to_string())
}

fn triangulation_failure(e: TriangulationError) -> Failure {
    match e {
        TriangulationError::Json(_) => Failure::new(INVALID, "malformed-json", e.to_string()),
        TriangulationError::TooManyCocycles { .. } => Failure::new(GUARD, "guard", e.to_string()),
        _ => Failure::new(INVALID, "invalid-triangulation", e.to_string()),
    }
}

fn statesum_failure(e: StateSumError) -> Failure {
    if e.is_guard() {
        return Failure::new(GUARD, "guard", e.to_string());
    }
    match e {
        StateSumError::Triangulation(t) => triangulation_failure(t),
        StateSumError::Internal(_) => Failure::new(INVALID, "internal", e.to_string()),
        _ => Failure::new(INVALID, "arithmetic", e.to_string()),
    }
}

fn prepare(arg: &str) -> Result<(String, Prepared), Failure> {
    let (name, tri) = load_triangulation(arg)?;
    let p = Prepared::new(tri).map_err(triangulation_failure)?;
    Ok((name, p))
}

fn round(x: f64, digits: usize) -> f64 {
    let r: f64 = format!("{x:.digits$}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn approx(z: &Cyclotomic, digits: usize) -> Value {
    let (re, im) = z.approx();
    json!({ "re": round(re, digits), "im": round(im, digits) })
}

fn classification(c: &Classification) -> &'static str {
    match c {
        Classification::Nondegenerate => "nondegenerate",
        Classification::Tame => "tame",
        Classification::Wild { .. } => "wild",
    }
}

fn partial_json(s: &PartialSum, digits: usize) -> Value {
    json!({
        "cocycle": s.cocycle,
        "counts": s.counts,
        "kernel_order": s.kernel_order.to_string(),
        "form": classification(&s.gauss.classification),
        "radical_order": s.gauss.radical_order.to_string(),
        "blocks": s.gauss.blocks,
        "exact": s.value,
        "approx": approx(&s.value, digits),
    })
}

fn header(name: &str, p: &Prepared, cat_arg: &str) -> Value {
    json!({
        "triangulation": name,
        "category": cat_arg,
        "tetrahedra": p.tri.size(),
        "vertices": p.skel.num_vertices,
        "edges": p.skel.num_edges(),
    })
}

fn compute(args: &ComputeArgs, digits: usize) -> Result<Value, Failure> {
    let cat = load_category(&args.category)?;
    let (name, p) = prepare(&args.triangulation)?;
    let start = Instant::now();
    let constants = if args.literal_constants { Constants::Literal } else { Constants::Derived };
    let opts = InvariantOptions { max_cocycles: args.max_cocycles, constants };
    let result = invariant(&p, &cat, opts).map_err(statesum_failure)?;
    let mut out = header(&name, &p, &args.category);
    out["betti1"] = json!(result.betti1);
    out["cocycles"] = json!(result.per_cocycle.len());
    out["constants"] = json!(if args.literal_constants { "literal" } else { "derived" });
    out["exact"] = serde_json::to_value(&result.total).expect("cyclotomic serializes");
    out["approx"] = approx(&result.total, digits);
    if args.per_cocycle {
        out["per_cocycle"] = result.per_cocycle.iter().map(|s| partial_json(s, digits)).collect();
    }
    if args.verify {
        let brute = brute_force_state_sum(&p, &cat, args.max_colorings).map_err(statesum_failure)?;
        let mut bad: Vec<String> = result
            .per_cocycle
            .iter()
            .filter(|s| brute.per_cocycle.get(&s.cocycle).map_or(!s.value.is_zero(), |b| *b != s.value))
            .map(|s| s.cocycle.to_string())
            .collect();
        if brute.total != result.total && bad.is_empty() {
            bad.push("total".into());
        }
        if !bad.is_empty() {
            let mut f = Failure::new(MISMATCH, "verify-mismatch", format!("oracle disagrees on {}", bad.join(", ")));
            f.extra = Some(json!({ "fpt": result.total, "brute": brute.total }));
            return Err(f);
        }
        out["verified"] = json!(true);
        out["admissible_colorings"] = json!(brute.admissible_colorings);
    }
    if args.timing {
        out["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

fn brute(args: &BruteArgs, digits: usize) -> Result<Value, Failure> {
    let cat = load_category(&args.category)?;
    let (name, p) = prepare(&args.triangulation)?;
    let start = Instant::now();
    let result = brute_force_state_sum(&p, &cat, args.max_colorings).map_err(statesum_failure)?;
    let mut out = header(&name, &p, &args.category);
    out["admissible_colorings"] = json!(result.admissible_colorings);
    out["exact"] = serde_json::to_value(&result.total).expect("cyclotomic serializes");
    out["approx"] = approx(&result.total, digits);
    if args.per_cocycle {
        out["per_cocycle"] = result
            .per_cocycle
            .iter()
            .map(|(phi, v)| json!({ "cocycle": phi, "exact": v, "approx": approx(v, digits) }))
            .collect();
    }
    if args.timing {
        out["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

fn gauss(args: &GaussArgs, digits: usize) -> Result<Value, Failure> {
    let text = if args.form == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::new(INVALID, "io", e.to_string()))?
    } else {
        std::fs::read_to_string(&args.form).map_err(|e| Failure::new(INVALID, "io", format!("{}: {e}", args.form)))?
    };
    let form: PreMetricGroup =
        serde_json::from_str(&text).map_err(|e| Failure::new(INVALID, "invalid-form", e.to_string()))?;
    let g = gauss_sum(&form);
    // Q(zeta_N) must contain sqrt|radical| and every block's value
    let order = form.orders().iter().fold(8u64, |acc, &m| tyinv::exactnum::lcm(acc, 4 * m));
    let theta = g.theta(order).map_err(|e| Failure::new(INVALID, "arithmetic", e.to_string()))?;
    let mut out = json!({
        "form": classification(&g.classification),
        "radical_order": g.radical_order.to_string(),
        "blocks": g.blocks,
        "exact": theta,
        "approx": approx(&theta, digits),
    });
    if let Classification::Wild { witness } = &g.classification {
        out["witness"] = json!(witness);
    }
    if args.exhaustive {
        let sum = gauss_sum_exhaustive(&form, order).map_err(|e| Failure::new(INVALID, "arithmetic", e.to_string()))?;
        let sqrt = tyinv::exactnum::sqrt_natural(&form.size(), order)
            .map_err(|e| Failure::new(INVALID, "arithmetic", e.to_string()))?;
        let agrees = sum == &sqrt * &theta;
        out["exhaustive_sum"] = json!(sum);
        out["agrees"] = json!(agrees);
        if !agrees {
            let mut f = Failure::new(MISMATCH, "verify-mismatch", "closed form disagrees with direct summation");
            f.extra = Some(out);
            return Err(f);
        }
    }
    Ok(out)
}

fn betti(args: &BettiArgs) -> Result<Value, Failure> {
    let (name, p) = prepare(&args.triangulation)?;
    let basis = z2_cocycle_basis(&p.skel);
    let dim = basis.basis.len() as u32;
    let cocycles = if dim < 64 { json!(1u64 << dim) } else { json!(format!("2^{dim}")) };
    Ok(json!({
        "triangulation": name,
        "tetrahedra": p.tri.size(),
        "vertices": p.skel.num_vertices,
        "edges": p.skel.num_edges(),
        "faces": p.skel.num_faces(),
        "betti1": basis.betti1,
        "cocycle_space_dim": dim,
        "cocycles": cocycles,
    }))
}

fn check_axioms(cat: &TYData) -> Result<Value, Failure> {
    match verify_axioms(cat) {
        AxiomReport::Pass => Ok(json!({ "pass": true, "labels": cat.labels().len() })),
        AxiomReport::Fail { equation, witness } => {
            let witness: Vec<String> = witness.iter().map(|l| format!("{l:?}")).collect();
            let mut f = Failure::new(INVALID, "axiom-failure", format!("{equation} fails"));
            f.extra = Some(json!({ "pass": false, "equation": equation, "witness": witness }));
            Err(f)
        }
    }
}
