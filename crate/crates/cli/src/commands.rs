use clap::{Args, ValueEnum};
use degwild::degfun::{
    check_axioms, deg_of_derivation_graded, deg_of_derivation_laurent_sandwich, deg_of_derivation_lnd, delta,
    delta_localized, oracle_check, sample, sample_rng, AxiomConfig, AxiomReport, DegreeFunction, Graded, JumpFn, Lnd,
    Localized, LocalizedElem, TameCertificate, DEFAULT_LND_CAP, RNG_NAME,
};
use degwild::fields::Rational;
use degwild::laurent::PrecisionPolicy;
use degwild::poly::{parse_poly, Derivation, Poly, Weighting};
use degwild::value::GroupValue;
use degwild::wild::{expand, reconstruct, BConfig, ConstructionA, ConstructionB, WitnessRow, DEFAULT_A_TERMS};
use serde_json::json;

use crate::report::{table, CliError, Report};

/// Flags shared by every subcommand.
pub struct Common {
    pub seed: u64,
    pub samples: Option<usize>,
    pub precision: Option<i64>,
}

const DEFAULT_SAMPLES: usize = 500;

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn default_vars(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn parse_weights(text: &str) -> Result<Weighting, CliError> {
    let ws = split_list(text)
        .iter()
        .map(|w| w.parse::<i64>().map_err(|e| CliError::parse("--weights", format!("{w:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if ws.is_empty() {
        return Err(CliError::parse("--weights", "empty list"));
    }
    Ok(Weighting::from_ints(&ws))
}

fn resolve_vars(given: &Option<String>, n: usize) -> Result<Vec<String>, CliError> {
    let vars = match given {
        Some(v) => split_list(v),
        None => default_vars(n),
    };
    if vars.len() != n {
        return Err(CliError::parse("--vars", format!("expected {n} names, got {}", vars.len())));
    }
    Ok(vars)
}

fn parse_one(what: &str, text: &str, vars: &[String]) -> Result<Poly<Rational>, CliError> {
    parse_poly(text, vars).map_err(|e| CliError::parse_poly(what, text, e))
}

fn parse_polys(what: &str, text: &str, vars: &[String]) -> Result<Vec<Poly<Rational>>, CliError> {
    split_list(text).iter().map(|p| parse_one(what, p, vars)).collect()
}

fn parse_derivation(text: &str, vars: &[String]) -> Result<Derivation<Rational>, CliError> {
    let images = parse_polys("--derivation", text, vars)?;
    if images.len() != vars.len() {
        return Err(CliError::parse("--derivation", format!("expected {} images, got {}", vars.len(), images.len())));
    }
    Ok(Derivation::new(images)?)
}

fn names(vars: &[String]) -> Vec<&str> {
    vars.iter().map(String::as_str).collect()
}

fn render(p: &Poly<Rational>, vars: &[String]) -> String {
    p.to_string_with(&names(vars))
}

fn sample_polys(common: &Common, n: usize, max_deg: u32) -> Vec<Poly<Rational>> {
    let count = common.samples.unwrap_or(DEFAULT_SAMPLES);
    (0..count)
        .map(|i| {
            let mut rng = sample_rng(common.seed, i);
            sample::random_nonzero_poly(&mut rng, n, max_deg, 4, |r| sample::small_rational(r, 6))
        })
        .collect()
}

fn certificate_json(cert: &TameCertificate, gens: &[String]) -> serde_json::Value {
    json!({
        "value": cert.value,
        "argmaxGenerator": cert.argmax.map(|i| gens[i].clone()),
        "generators": gens.iter().zip(&cert.deltas).map(|(g, d)| json!({"generator": g, "delta": d})).collect::<Vec<_>>(),
    })
}

fn describe_certificate(report: &mut Report, cert: &TameCertificate, gens: &[String]) {
    report.line(format!("deg(D) = {}", cert.value));
    match cert.argmax {
        Some(i) => report.line(format!("certificate: {} (delta = {})", gens[i], cert.deltas[i])),
        None => report.line("certificate: none (every generator has delta = -inf)"),
    }
    let rows: Vec<Vec<String>> = gens.iter().zip(&cert.deltas).map(|(g, d)| vec![g.clone(), d.to_string()]).collect();
    for l in table(&["generator", "delta"], &rows) {
        report.line(l);
    }
}

fn oracle_section<DF: DegreeFunction<Poly<Rational>>>(
    report: &mut Report,
    df: &DF,
    d: &Derivation<Rational>,
    cert: &TameCertificate,
    common: &Common,
    n: usize,
) -> Result<(), CliError> {
    let polys = sample_polys(common, n, 6);
    let oracle = oracle_check(df, d, &cert.value, &polys)?;
    report.line(format!(
        "oracle: {} samples, {} violations, bound attained by {} samples",
        oracle.checked,
        oracle.violations.len(),
        oracle.attained.len()
    ));
    report.field(
        "oracle",
        json!({
            "samples": oracle.checked,
            "violations": oracle.violations,
            "attained": oracle.attained.len(),
            "seed": common.seed,
            "rng": RNG_NAME,
        }),
    );
    report.require(oracle.passed(), "sampled delta exceeds deg(D)");
    Ok(())
}

#[derive(Args, Debug)]
pub struct TameArgs {
    /// Integer weights of the variables, e.g. `2,3`.
    #[arg(long)]
    pub weights: String,
    /// Variable names, e.g. `x,y`.
    #[arg(long)]
    pub vars: Option<String>,
    /// Images of the variables under D, comma separated.
    #[arg(long, visible_alias = "d")]
    pub derivation: String,
    /// Homogeneous generators over the degree-0 part (default: the variables).
    #[arg(long)]
    pub xs: Option<String>,
    /// Generators of the degree-0 part, up to algebraic closure.
    #[arg(long)]
    pub zs: Option<String>,
}

pub fn tame_eval(args: &TameArgs, common: &Common) -> Result<Report, CliError> {
    let w = parse_weights(&args.weights)?;
    let n = w.var_count();
    let vars = resolve_vars(&args.vars, n)?;
    let d = parse_derivation(&args.derivation, &vars)?;
    let zs = match &args.zs {
        Some(z) => parse_polys("--zs", z, &vars)?,
        None => Vec::new(),
    };
    let xs = match &args.xs {
        Some(x) => parse_polys("--xs", x, &vars)?,
        None => (0..n).map(|i| Poly::var(n, i)).collect(),
    };
    let cert = deg_of_derivation_graded(&w, &zs, &xs, &d)?;
    let gens: Vec<String> = zs.iter().chain(&xs).map(|g| render(g, &vars)).collect();
    let mut report = Report::new(
        "tame-eval",
        json!({
            "weights": w.weights(),
            "vars": vars,
            "derivation": d.display_with(&names(&vars)).to_string(),
            "zs": zs.iter().map(|g| render(g, &vars)).collect::<Vec<_>>(),
            "xs": xs.iter().map(|g| render(g, &vars)).collect::<Vec<_>>(),
        }),
    );
    describe_certificate(&mut report, &cert, &gens);
    report.field("certificate", certificate_json(&cert, &gens));
    oracle_section(&mut report, &Graded::new(w), &d, &cert, common, n)?;
    Ok(report)
}

#[derive(Args, Debug)]
pub struct LndArgs {
    #[arg(long, default_value = "z,t")]
    pub vars: String,
    /// Images of the variables under the locally nilpotent derivation.
    #[arg(long, default_value = "0,1")]
    pub lnd: String,
    /// A local slice: lnd(t) != 0 and lnd(lnd(t)) = 0.
    #[arg(long, default_value = "t")]
    pub t: String,
    /// Kernel generators, up to algebraic closure.
    #[arg(long, default_value = "z")]
    pub zs: String,
    #[arg(long, visible_alias = "d")]
    pub derivation: String,
}

pub fn lnd_eval(args: &LndArgs, common: &Common) -> Result<Report, CliError> {
    let vars = split_list(&args.vars);
    let n = vars.len();
    let lnd = parse_derivation(&args.lnd, &vars)?;
    let d = parse_derivation(&args.derivation, &vars)?;
    let t = parse_one("--t", &args.t, &vars)?;
    let zs = parse_polys("--zs", &args.zs, &vars)?;
    let cert = deg_of_derivation_lnd(&lnd, &t, &zs, &d)?;
    let gens: Vec<String> = zs.iter().chain(std::iter::once(&t)).map(|g| render(g, &vars)).collect();
    let kernel_only = GroupValue::max_of(&cert.deltas[..zs.len()]);
    let mut report = Report::new(
        "lnd-eval",
        json!({
            "vars": vars,
            "lnd": lnd.display_with(&names(&vars)).to_string(),
            "t": render(&t, &vars),
            "zs": zs.iter().map(|g| render(g, &vars)).collect::<Vec<_>>(),
            "derivation": d.display_with(&names(&vars)).to_string(),
            "kernelAlgebraicOverZs": "asserted by caller",
        }),
    );
    describe_certificate(&mut report, &cert, &gens);
    report.line(format!("max delta over kernel generators alone: {kernel_only}"));
    report.field("certificate", certificate_json(&cert, &gens));
    report.field("kernelOnly", &kernel_only);
    let df = Lnd::new(lnd, DEFAULT_LND_CAP)?;
    oracle_section(&mut report, &df, &d, &cert, common, n)?;
    Ok(report)
}

#[derive(Args, Debug)]
pub struct SandwichArgs {
    /// Integer weights, possibly negative, e.g. `1,-1`.
    #[arg(long)]
    pub weights: String,
    #[arg(long)]
    pub vars: Option<String>,
    #[arg(long, visible_alias = "d")]
    pub derivation: String,
}

pub fn sandwich_eval(args: &SandwichArgs, common: &Common) -> Result<Report, CliError> {
    let w = parse_weights(&args.weights)?;
    let n = w.var_count();
    let vars = resolve_vars(&args.vars, n)?;
    let d = parse_derivation(&args.derivation, &vars)?;
    let cert = deg_of_derivation_laurent_sandwich(&w, &d)?;
    let gens = vars.clone();
    let mut report = Report::new(
        "sandwich-eval",
        json!({
            "weights": w.weights(),
            "vars": vars,
            "derivation": d.display_with(&names(&vars)).to_string(),
        }),
    );
    describe_certificate(&mut report, &cert, &gens);
    report.field("certificate", certificate_json(&cert, &gens));
    oracle_section(&mut report, &Graded::new(w), &d, &cert, common, n)?;
    Ok(report)
}

fn witness_lines(report: &mut Report, label: &str, rows: &[WitnessRow]) {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.index.to_string(), r.deg.to_string(), r.deg_d.to_string(), r.delta.to_string()])
        .collect();
    for l in table(&[label, "deg", "degD", "delta"], &cells) {
        report.line(l);
    }
}

fn policy(common: &Common) -> PrecisionPolicy {
    let cap = common.precision.unwrap_or(PrecisionPolicy::default().cap);
    PrecisionPolicy { start: PrecisionPolicy::default().start.min(cap), cap }
}

#[derive(Args, Debug)]
pub struct WildAArgs {
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
    /// Random coefficients (zero with probability 1/4) instead of all ones.
    #[arg(long)]
    pub seeded: bool,
    /// `u` in the generic derivation `u d/dx - v d/dy`.
    #[arg(long, default_value = "x")]
    pub u: String,
    #[arg(long, default_value = "y")]
    pub v: String,
}

pub fn wild_a(args: &WildAArgs, common: &Common) -> Result<Report, CliError> {
    let vars = vec!["x".to_string(), "y".to_string()];
    let u = parse_one("--u", &args.u, &vars)?;
    let v = parse_one("--v", &args.v, &vars)?;
    let policy = policy(common);
    let a = if args.seeded {
        ConstructionA::seeded(common.seed, DEFAULT_A_TERMS)
    } else {
        ConstructionA::ones(DEFAULT_A_TERMS)
    }
    .with_policy(policy);
    let rows = a.witness(args.n_max)?;
    let generic = a.generic_check(&u, &v, args.n_max, policy.cap)?;
    let mut report = Report::new(
        "wild-a",
        json!({
            "nMax": args.n_max,
            "coefficients": if args.seeded { "seeded" } else { "ones" },
            "seed": common.seed,
            "precisionCap": policy.cap,
            "u": render(&u, &vars),
            "v": render(&v, &vars),
        }),
    );
    witness_lines(&mut report, "n", &rows);
    for r in &rows {
        report.require(r.deg == GroupValue::int(0), &format!("deg g_{} = {}, expected 0", r.index, r.deg));
        report.require(r.delta == GroupValue::int(r.index as i64), &format!("delta(g_{}) = {}", r.index, r.delta));
    }
    report.require(rows.windows(2).all(|p| p[0].delta < p[1].delta), "delta column not strictly increasing");
    let skipped = a.skipped(args.n_max);
    if !skipped.is_empty() {
        report.line(format!("skipped (a_n = 0): {skipped:?}"));
    }
    let agree = generic.iter().all(|g| g.agrees);
    report.line(format!("t^n D(g_n) = t^2 (alpha_n + epsilon_n) u - v for n = 0..{}: {}", args.n_max, agree));
    report.require(agree, "generic derivation identity");
    report.field("rows", &rows);
    report.field("skipped", &skipped);
    report.field("genericCheck", &generic);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct WildBArgs {
    #[arg(long, default_value_t = 5)]
    pub steps: usize,
    #[arg(long, default_value_t = 8)]
    pub level: usize,
}

pub fn wild_b(args: &WildBArgs, common: &Common) -> Result<Report, CliError> {
    let config = BConfig { steps: args.steps, level: args.level, window: common.precision.unwrap_or(18) };
    let b = ConstructionB::build(config)?;
    let rows = b.witness(args.steps)?;
    let mut report = Report::new("wild-b", json!({ "steps": config.steps, "level": config.level, "window": config.window }));
    witness_lines(&mut report, "p", &rows);
    for r in &rows {
        let p = r.index as i64;
        report.require(
            r.deg == GroupValue::int(3) && r.deg_d == GroupValue::int(3 * p) && r.delta == GroupValue::int(3 * p - 3),
            &format!("row {p} is not (3, {}, {})", 3 * p, 3 * p - 3),
        );
    }
    let failed: Vec<_> = b.checks().iter().filter(|c| !c.passed).collect();
    report.line(format!("construction checks: {} run, {} failed", b.checks().len(), failed.len()));
    for c in &failed {
        report.require(false, &format!("step {}: {} ({})", c.step, c.name, c.detail));
    }
    report.field("a", b.a().iter().map(|x| x.to_string()).collect::<Vec<_>>());
    report.field("checks", b.checks());
    if b.depth() >= 3 {
        let w = b.negative_degree_element()?;
        report.line(format!("w = {}: deg {}, leading coefficient 2*a0*a3: {}", w.rendered, w.degree, w.leading_matches));
        report.require(w.degree == GroupValue::int(-3) && w.leading_matches, "deg(w) = -3 with leading coefficient 2*a0*a3");
        report.field("negativeDegreeElement", &w);
    }
    report.field("rows", &rows);
    Ok(report)
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    /// The sequence a_0, a_1, ... (polynomials in the base variables).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long)]
    pub poly: String,
    /// Name of the polynomial variable.
    #[arg(long, default_value = "Y")]
    pub y: String,
    /// Base-ring variables, comma separated.
    #[arg(long, default_value = "")]
    pub base_vars: String,
}

pub fn expand_cmd(args: &ExpandArgs, _common: &Common) -> Result<Report, CliError> {
    let mut vars = split_list(&args.base_vars);
    vars.push(args.y.clone());
    let f = parse_one("--poly", &args.poly, &vars)?;
    let a = parse_polys("--a", &args.a, &vars)?;
    let e = expand(&f, &a)?;
    let back = reconstruct(&e, &a, vars.len());
    let stable = expand(&back, &a)? == e;
    let rendered: Vec<String> = e
        .terms
        .iter()
        .map(|t| {
            let set: Vec<String> = t.set.iter().map(usize::to_string).collect();
            format!("({{{}}},{})", set.join(","), render(&t.coeff, &vars))
        })
        .collect();
    let mut report = Report::new(
        "expand",
        json!({
            "a": a.iter().map(|x| render(x, &vars)).collect::<Vec<_>>(),
            "poly": render(&f, &vars),
            "vars": vars,
        }),
    );
    report.line(format!("[{}]", rendered.join(",")));
    report.line(format!("reconstruction matches: {}", back == f));
    report.line(format!("re-expansion stable: {stable}"));
    report.require(back == f, "reconstruction differs from the input");
    report.require(stable, "re-expansion differs");
    report.field(
        "rows",
        e.terms.iter().map(|t| json!({"set": t.set, "coeff": render(&t.coeff, &vars)})).collect::<Vec<_>>(),
    );
    report.field("reconstructs", back == f);
    report.field("stable", stable);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Graded,
    Lnd,
    Localized,
    #[value(name = "laurentA")]
    LaurentA,
    #[value(name = "laurentB")]
    LaurentB,
}

#[derive(Args, Debug)]
pub struct AxiomArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Weights for graded and localized kinds.
    #[arg(long, default_value = "2,3", allow_hyphen_values = true)]
    pub weights: String,
    #[arg(long)]
    pub vars: Option<String>,
    /// Locally nilpotent derivation for the lnd kind (default: d/d of the last variable).
    #[arg(long)]
    pub lnd: Option<String>,
    /// Also check delta(xy) <= max(delta x, delta y) for this derivation.
    #[arg(long, visible_alias = "d")]
    pub derivation: Option<String>,
    /// Total degree bound of sampled polynomials (capped for the Laurent kinds).
    #[arg(long, default_value_t = 4)]
    pub max_degree: u32,
}

fn axiom_lines(report: &mut Report, r: &AxiomReport) {
    report.line(format!(
        "{} samples (seed {}, {}): {} failures, {} undetermined",
        r.samples,
        r.seed,
        r.rng,
        r.failures.len(),
        r.errors.len()
    ));
    for f in r.failures.iter().take(10) {
        report.line(format!("sample {}: {} fails with {} vs {}: {}", f.sample, f.axiom, f.lhs, f.rhs, f.input));
    }
    report.require(r.failures.is_empty(), "axiom failures");
    report.require(r.errors.is_empty(), "samples with undetermined degree");
}

pub fn axioms(args: &AxiomArgs, common: &Common) -> Result<Report, CliError> {
    let cfg = AxiomConfig { samples: common.samples.unwrap_or(DEFAULT_SAMPLES), seed: common.seed };
    let deg = args.max_degree;
    let mut params = json!({ "kind": format!("{:?}", args.kind), "samples": cfg.samples, "seed": cfg.seed, "maxDegree": deg });
    let result = match args.kind {
        Kind::Graded | Kind::Localized | Kind::Lnd => {
            let (n, w) = if args.kind == Kind::Lnd {
                let n = args.vars.as_ref().map_or(2, |v| split_list(v).len());
                (n, None)
            } else {
                let w = parse_weights(&args.weights)?;
                (w.var_count(), Some(w))
            };
            let vars = match (&args.vars, args.kind) {
                (None, Kind::Lnd) => vec!["z".to_string(), "t".to_string()],
                _ => resolve_vars(&args.vars, n)?,
            };
            let d = args.derivation.as_ref().map(|t| parse_derivation(t, &vars)).transpose()?;
            params["vars"] = json!(vars);
            match args.kind {
                Kind::Graded => {
                    let w = w.expect("weights");
                    params["weights"] = json!(w.weights());
                    let df = Graded::new(w);
                    let jump = d.as_ref().map(|d| {
                        let df = &df;
                        move |f: &Poly<Rational>| delta(df, d, f)
                    });
                    check_axioms(
                        &df,
                        &cfg,
                        |rng| (sample::rational_poly(rng, n, deg), sample::rational_poly(rng, n, deg)),
                        jump.as_ref().map(|j| j as JumpFn<'_, Poly<Rational>>),
                    )
                }
                Kind::Localized => {
                    let w = w.expect("weights");
                    params["weights"] = json!(w.weights());
                    let df = Localized::new(Graded::new(w));
                    let jump = d.as_ref().map(|d| {
                        let df = &df;
                        move |e: &LocalizedElem<Rational>| delta_localized(df, d, e)
                    });
                    check_axioms(
                        &df,
                        &cfg,
                        |rng| (sample::localized_elem(rng, n, deg), sample::localized_elem(rng, n, deg)),
                        jump.as_ref().map(|j| j as JumpFn<'_, LocalizedElem<Rational>>),
                    )
                }
                _ => {
                    let lnd = match &args.lnd {
                        Some(t) => parse_derivation(t, &vars)?,
                        None => Derivation::partial(n, n - 1),
                    };
                    params["lnd"] = json!(lnd.display_with(&names(&vars)).to_string());
                    let df = Lnd::new(lnd, DEFAULT_LND_CAP)?;
                    let jump = d.as_ref().map(|d| {
                        let df = &df;
                        move |f: &Poly<Rational>| delta(df, d, f)
                    });
                    check_axioms(
                        &df,
                        &cfg,
                        |rng| (sample::rational_poly(rng, n, deg), sample::rational_poly(rng, n, deg)),
                        jump.as_ref().map(|j| j as JumpFn<'_, Poly<Rational>>),
                    )
                }
            }
        }
        Kind::LaurentA => {
            let deg = deg.min(3);
            params["maxDegree"] = json!(deg);
            params["coefficients"] = json!("seeded");
            let vars = vec!["x".to_string(), "y".to_string()];
            let d = args.derivation.as_ref().map(|t| parse_derivation(t, &vars)).transpose()?;
            let df = ConstructionA::seeded(common.seed, DEFAULT_A_TERMS).with_policy(policy(common)).degree_function();
            let jump = d.as_ref().map(|d| {
                let df = &df;
                move |f: &Poly<Rational>| delta(df, d, f)
            });
            check_axioms(
                &df,
                &cfg,
                |rng| (sample::rational_poly(rng, 2, deg), sample::rational_poly(rng, 2, deg)),
                jump.as_ref().map(|j| j as JumpFn<'_, Poly<Rational>>),
            )
        }
        Kind::LaurentB => {
            if args.derivation.is_some() {
                return Err(CliError::precondition("--derivation is not supported for laurentB"));
            }
            let deg = deg.min(2);
            params["maxDegree"] = json!(deg);
            let config = BConfig { window: common.precision.unwrap_or(18), ..BConfig::default() };
            params["construction"] = json!(config);
            let b = ConstructionB::build(config)?;
            let df = b.degree_function();
            check_axioms(&df, &cfg, |rng| (sample::ratfunc_poly(rng, deg), sample::ratfunc_poly(rng, deg)), None)
        }
    };
    let mut report = Report::new("axioms", params);
    axiom_lines(&mut report, &result);
    if args.kind == Kind::LaurentB {
        let bad: Vec<&GroupValue> =
            result.observed_degrees.iter().filter(|d| d.as_int().map_or(true, |v| v < 0 || v == 1)).collect();
        report.line(format!("observed degrees: {:?}", result.observed_degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>()));
        report.require(bad.is_empty(), "degree outside <2,3>");
    }
    report.field("failures", &result.failures);
    report.field("errors", &result.errors);
    report.field("observedDegrees", &result.observed_degrees);
    report.field("rng", RNG_NAME);
    Ok(report)
}
