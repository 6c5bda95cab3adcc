//! Named scenarios over `charp-core`, each producing a self-checking report.

use serde::Serialize;
use serde_json::{json, Value};

use charp_core::algebra::{Coeff, Fq, GaloisField, Matrix, MultiPoly, RatFunc, UniPoly};
use charp_core::covers::{
    chart_verdict, cubic_degeneracy_census, frobenius_factorization, genericity_sample, lift_rational_points, singular_points, ChartVerdict,
    Cover, GenericityParams,
};
use charp_core::desing::{desingularize, model_equation};
use charp_core::heights::{
    example1_constant_points, example2_blowup_config, example3_bounded_degree, normalize, vojta_violation_demo, ProjPoint, VojtaParams,
};
use charp_core::normalform::normal_form;
use charp_core::picard::{adjunction_class, general_type_threshold, j_invariant, pgl_equivalence, PointConfig};
use charp_core::{Error, Exec, Result};

pub const FORMAT: &str = "charp-report/1";

pub const SCENARIOS: [&str; 13] = [
    "height",
    "northcott-example1",
    "northcott-example2",
    "northcott-example3",
    "cover",
    "normalform",
    "desing",
    "adjunction",
    "isotriviality",
    "frobenius",
    "consequence1",
    "vojta-demo",
    "genericity",
];

pub const DEFAULT_SEED: u64 = 0;

/// Scenario inputs. Unset fields take per-scenario defaults, and the
/// resolved values are written into the report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    pub p: Option<u32>,
    /// Extension degree of the constant field `F_{p^m}`.
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub d: Option<u32>,
    /// Dimension `N` of the base `P^N` for genericity sampling.
    pub dim: Option<u32>,
    /// Number of blown-up points for the adjunction lattice.
    pub k: Option<u32>,
    /// Jet order for the normal form.
    pub r: Option<u32>,
    /// Largest section degree in the Vojta family.
    pub max_degree: Option<u32>,
    /// Polynomial or point input, in the variables `x1, x2, …` and `t`.
    pub input: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub format: String,
    pub scenario: String,
    pub params: Value,
    pub seed: u64,
    pub outputs: Value,
    pub assertions: Vec<Assertion>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} (seed {})\n", self.scenario, self.seed);
        if let Value::Object(params) = &self.params {
            let kv: Vec<String> = params.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
            s.push_str(&format!("  params: {}\n", kv.join(" ")));
        }
        if let Value::Object(out) = &self.outputs {
            for (k, v) in out {
                if let Some(line) = summary_value(v) {
                    s.push_str(&format!("  {k}: {line}\n"));
                }
            }
        }
        for a in &self.assertions {
            s.push_str(&format!("  [{}] {}\n", if a.passed { "pass" } else { "FAIL" }, a.name));
        }
        s
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn summary_value(v: &Value) -> Option<String> {
    match v {
        Value::Array(a) if a.len() > 12 => Some(format!("[{} entries]", a.len())),
        Value::Object(_) => None,
        v => {
            let s = compact(v);
            (s.len() <= 160).then_some(s)
        }
    }
}

struct Checks(Vec<Assertion>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.0.push(Assertion { name: name.into(), passed });
    }
}

fn field(p: u32, m: u32) -> Result<&'static GaloisField> {
    GaloisField::get(p, m)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

type Outcome = Result<(Value, Value, Checks)>;

/// Runs a scenario. Output is a deterministic function of `(name, params, seed)`.
pub fn run_scenario(name: &str, params: &Params, seed: u64, exec: Exec) -> Result<ScenarioReport> {
    let (params, outputs, checks) = match name {
        "height" => height(params)?,
        "northcott-example1" => northcott1(params)?,
        "northcott-example2" => northcott2(params)?,
        "northcott-example3" => northcott3(params)?,
        "cover" => cover(params)?,
        "normalform" => normalform(params)?,
        "desing" => desing(params, exec)?,
        "adjunction" => adjunction(params)?,
        "isotriviality" => isotriviality(params)?,
        "frobenius" => frobenius(params)?,
        "consequence1" => consequence1(params)?,
        "vojta-demo" => vojta(params, seed, exec)?,
        "genericity" => genericity(params, seed, exec)?,
        _ => return Err(Error::UnknownScenario(name.into())),
    };
    Ok(ScenarioReport { format: FORMAT.into(), scenario: name.into(), params, seed, outputs, assertions: checks.0 })
}

/// Re-runs the scenario recorded in a report and compares every field.
pub fn recheck(report: &ScenarioReport, exec: Exec) -> Result<bool> {
    if report.format != FORMAT {
        return Err(Error::Param(format!("unknown report format {}", report.format)));
    }
    let params = params_from_value(&report.params)?;
    Ok(run_scenario(&report.scenario, &params, report.seed, exec)? == *report)
}

pub fn report_from_json(s: &str) -> Result<ScenarioReport> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let get = |k: &str| v.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing field {k}")));
    let assertions = match get("assertions")? {
        Value::Array(a) => a
            .iter()
            .map(|x| {
                Ok(Assertion {
                    name: x.get("name").and_then(Value::as_str).ok_or_else(|| Error::Parse("assertion name".into()))?.into(),
                    passed: x.get("passed").and_then(Value::as_bool).ok_or_else(|| Error::Parse("assertion flag".into()))?,
                })
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::Parse("assertions must be a list".into())),
    };
    Ok(ScenarioReport {
        format: get("format")?.as_str().unwrap_or_default().into(),
        scenario: get("scenario")?.as_str().unwrap_or_default().into(),
        params: get("params")?,
        seed: get("seed")?.as_u64().ok_or_else(|| Error::Parse("seed".into()))?,
        outputs: get("outputs")?,
        assertions,
    })
}

fn params_from_value(v: &Value) -> Result<Params> {
    let num = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as u32);
    Ok(Params {
        p: num("p"),
        m: num("m"),
        n: num("n"),
        d: num("d"),
        dim: num("dim"),
        k: num("k"),
        r: num("r"),
        max_degree: num("max_degree"),
        input: v.get("input").and_then(Value::as_str).map(str::to_string),
    })
}

fn parse_point(f: &'static GaloisField, s: &str) -> Result<ProjPoint> {
    let coords: Vec<RatFunc> = s.split(',').map(|c| RatFunc::parse(f, c.trim(), "t")).collect::<Result<_>>()?;
    normalize(&coords)
}

fn height(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(5), params.m.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "t^3 + 1, t^2/(t+1), 1".into());
    let f = field(p, m)?;
    let point = parse_point(f, &input)?;
    let h = point.height();
    let mut c = Checks::new();
    let coords = point.coords();
    let g = coords.iter().fold(UniPoly::zero(f), |acc, c| acc.gcd(c));
    c.check("coordinates are coprime polynomials", g.is_one());
    c.check("height is the maximal coordinate degree", h == coords.iter().map(UniPoly::deg0).max().unwrap_or(0) as u64);
    let scaled: Vec<RatFunc> = point.as_ratfuncs().iter().map(|x| x.times(&RatFunc::from_poly(UniPoly::from_ints(f, &[1, 1, 1])))).collect();
    c.check("height is invariant under scaling by k(t)^×", normalize(&scaled)?.height() == h);
    let outputs = json!({ "point": point.to_string(), "height": h });
    Ok((json!({ "p": p, "m": m, "input": input }), outputs, c))
}

fn northcott1(params: &Params) -> Outcome {
    let (p, m, n) = (params.p.unwrap_or(3), params.m.unwrap_or(1), params.n.unwrap_or(2));
    let f = field(p, m)?;
    let e = example1_constant_points(n as usize, f)?;
    let q = f.order() as u64;
    let expected: u64 = (0..=n).map(|i| q.pow(i)).sum();
    let mut c = Checks::new();
    c.check("point count is (q^(N+1)-1)/(q-1)", e.family.len() as u64 == expected);
    c.check("every point has height 0", e.family.max_height() == Some(0.into()));
    c.check("no quadric contains the family", e.density_degree2.is_dense() && e.density_degree2.verify(&e.family.points()));
    let outputs = json!({
        "points": e.family.len(),
        "max_height": e.family.max_height().map(|h| h.to_string()),
        "density_degree2": to_value(&e.density_degree2),
        "dense_up_to_degree": e.dense_up_to,
    });
    Ok((json!({ "p": p, "m": m, "n": n }), outputs, c))
}

fn northcott2(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(7), params.m.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "1,0; 0,1; 1,1; 1,t; 1,t^2; 1,t+1".into());
    let f = field(p, m)?;
    let maps: Vec<ProjPoint> = input.split(';').map(|s| parse_point(f, s)).collect::<Result<_>>()?;
    let e = example2_blowup_config(&maps, None)?;
    let mut c = Checks::new();
    c.check("more than N+4 sections", e.r > e.n + 4);
    let recomputed = pgl_equivalence(
        &PointConfig::new(e.n, e.comparison.fiber_b.clone())?,
        &PointConfig::new(e.n, e.comparison.fiber_b_prime.clone())?,
    )?;
    c.check("fiber comparison recomputes", recomputed.is_equivalent() == e.comparison.equivalent);
    let outputs = json!({
        "n": e.n,
        "r": e.r,
        "comparison": to_value(&e.comparison),
        "non_isotrivial": e.non_isotrivial,
        "pullback_height_bound": e.pullback_height_bound,
    });
    Ok((json!({ "p": p, "m": m, "input": input }), outputs, c))
}

fn northcott3(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(7), params.m.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "x1^3 + t".into());
    let f = field(p, m)?;
    let g = MultiPoly::<RatFunc>::parse_kt(f, &input, Some(1), "t")?;
    let xs: Vec<Fq> = f.elements().collect();
    let e = example3_bounded_degree(&g, &xs)?;
    let mut c = Checks::new();
    c.check("at least q points", e.family.len() >= f.order() as usize);
    c.check("field degree at most 2 and height at most A", e.all_bounded());
    let d0 = e.family.records.first().map(|r| r.disc.d);
    c.check("discriminant bound is constant", e.family.records.iter().all(|r| Some(r.disc.d) == d0 && r.disc.is_consistent()));
    let outputs = json!({
        "a": e.a,
        "height_bound": e.height_bound.to_string(),
        "discriminant_bound": e.discriminant_bound.to_string(),
        "squarefree_witness": e.squarefree_witness.to_string(),
        "points": to_value(&e.family),
    });
    Ok((json!({ "p": p, "m": m, "input": input }), outputs, c))
}

fn cover(params: &Params) -> Outcome {
    let (p, m, e) = (params.p.unwrap_or(3), params.m.unwrap_or(1), params.d.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "x1^2*x2 + x2^2*x3 + x3^2*x1 + x1*x2*x3".into());
    let f = field(p, m)?;
    let section = MultiPoly::parse(f, &input, None)?;
    let cov = Cover::projective(section, e)?;
    let mut c = Checks::new();
    c.check("sections and differentials glue on every overlap", cov.overlaps.iter().all(|o| o.sections_agree && o.differentials_agree));
    let mut search = singular_points(&cov, 1)?;
    let mut ext = 1;
    while !search.is_complete() && ext < 4 {
        ext += 1;
        search = singular_points(&cov, ext)?;
    }
    c.check("singular point search is complete", search.is_complete());
    let verdicts: Vec<ChartVerdict> = cov.charts.iter().map(|ch| chart_verdict(&ch.f)).collect::<Result<_>>()?;
    c.check("singular points are nondegenerate", verdicts.iter().all(|v| *v == ChartVerdict::Good));
    let outputs = json!({
        "charts": cov.charts.iter().map(|ch| ch.f.to_string()).collect::<Vec<_>>(),
        "overlaps": cov.overlaps.len(),
        "search_field_order": search.field_order,
        "singular_points": to_value(&search.points),
        "verdicts": to_value(&verdicts),
    });
    Ok((json!({ "p": p, "m": m, "d": e, "input": input }), outputs, c))
}

fn normalform(params: &Params) -> Outcome {
    let (p, m, r) = (params.p.unwrap_or(7), params.m.unwrap_or(1), params.r.unwrap_or(4));
    let input = params.input.clone().unwrap_or_else(|| "x1^2 + x2^2 + x1^2*x2".into());
    let f = field(p, m)?;
    let g = MultiPoly::parse(f, &input, None)?;
    let nf = normal_form(&g, r)?;
    let mut c = Checks::new();
    c.check("f∘φ ≡ a0 + Σ x_i^2 mod m^r", nf.certified);
    c.check("recomposed coordinate change re-certifies", nf.verify(&g)?);
    let outputs = json!({
        "a0": nf.a0.to_string(),
        "extension_degree": nf.extension_degree,
        "steps": to_value(&nf.change.steps),
        "phi": nf.change.composed.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "jet": nf.jet.to_string(),
    });
    Ok((json!({ "p": p, "m": m, "r": r, "input": input }), outputs, c))
}

fn desing(params: &Params, exec: Exec) -> Outcome {
    let (p, n) = (params.p.unwrap_or(5), params.n.unwrap_or(2));
    let f = field(p, 1)?;
    let res = desingularize(p, n as usize, exec)?;
    let mut c = Checks::new();
    c.check("(p-1)/2 blow-ups", res.steps.len() == ((p - 1) / 2) as usize);
    let expected: Vec<MultiPoly<Fq>> = (1..=res.steps.len() as u32).map(|k| model_equation(f, p - 2 * k, n as usize)).collect();
    c.check("z-chart equation after step k is z^(p-2k) = Σ w^2", res.z_chart_equations().into_iter().eq(expected.iter()));
    c.check("every terminal chart has a verified smoothness certificate", res.all_terminal_smooth());
    let ledger = res.pullback_ledger();
    c.check("pullback exponent is 2 at every step", ledger.consistent() && ledger.coefficients().iter().all(|&e| e == 2));
    c.check("strict transforms agree on overlaps", res.overlaps_consistent);
    let outputs = json!({
        "steps": res.steps.len(),
        "z_chart_equations": res.z_chart_equations().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "terminal_charts": res.terminal_charts().len(),
        "ledger": to_value(&ledger),
        "charts": res.steps.iter().map(|s| s.charts.iter().map(|ch| json!({
            "chart": ch.label(), "mu": ch.mu, "strict": ch.strict.to_string(), "smooth": ch.is_certified_smooth(),
        })).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok((json!({ "p": p, "n": n }), outputs, c))
}

fn adjunction(params: &Params) -> Outcome {
    let (p, d, n, k) = (params.p.unwrap_or(3), params.d.unwrap_or(1), params.n.unwrap_or(5), params.k.unwrap_or(0));
    let a = adjunction_class(p, d, n, k as usize);
    let t = general_type_threshold(p, d)?;
    let mut c = Checks::new();
    c.check("closed form agrees with summed constituent classes", a.agree);
    c.check("exceptional coefficient is N-2 = 0", a.exceptional_coefficient == Some(0));
    let outputs = json!({
        "class": [a.closed_form.xi, a.closed_form.h, a.closed_form.e],
        "summed": [a.summed.xi, a.summed.h, a.summed.e],
        "kappa": a.closed_form.h * p as i64,
        "general_type_threshold": to_value(&t),
    });
    Ok((json!({ "p": p, "d": d, "n": n, "k": k }), outputs, c))
}

fn isotriviality(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(7), params.m.unwrap_or(1));
    let f = field(p, m)?;
    let t = RatFunc::t(f);
    let zero = RatFunc::constant(f.zero());
    let one = RatFunc::constant(f.one());
    let j0 = j_invariant(&zero, &t)?;
    let j1 = j_invariant(&t, &one)?;
    let cfg = |l: i64| PointConfig::new(1, vec![vec![f.one(), f.zero()], vec![f.one(), f.one()], vec![f.zero(), f.one()], vec![f.one(), f.from_int(l)]]);
    let (l1, l2) = (2, 3);
    let a = cfg(l1)?;
    let verdict = pgl_equivalence(&a, &cfg(l2)?)?;
    let swap = Matrix::from_rows(&f, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
    let self_verdict = pgl_equivalence(&a, &a.transform(&swap)?)?;
    let mut c = Checks::new();
    c.check("y^2 = x^3 + t has constant j = 0 and is isotrivial", j0.j.is_zero() && j0.isotrivial);
    c.check("y^2 = x^3 + t x + 1 has non-constant j", !j1.j.is_constant() && !j1.isotrivial);
    c.check("distinct cross-ratios are inequivalent", !verdict.is_equivalent());
    c.check("a transformed configuration is equivalent", self_verdict.is_equivalent());
    let outputs = json!({
        "j_x3_plus_t": j0.j.to_string(),
        "j_x3_plus_tx_plus_1": j1.j.to_string(),
        "cross_ratio_pair": [l1, l2],
        "cross_ratio_verdict": to_value(&verdict),
        "transformed_verdict": to_value(&self_verdict),
    });
    Ok((json!({ "p": p, "m": m }), outputs, c))
}

fn frobenius(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(3), params.m.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "t*x1^2 + (t^2+1)/(t+2)*x1*x2 + x2^3".into());
    let f = field(p, m)?;
    let h = MultiPoly::<RatFunc>::parse_kt(f, &input, None, "t")?;
    let fact = frobenius_factorization(&h);
    let mut c = Checks::new();
    c.check("(Σ b_I T^I)^p = h(T^p) after t = s^p", fact.verify());
    let outputs = json!({ "h": fact.h.to_string(), "g_over_k_s": fact.g.to_string().replace('t', "s") });
    Ok((json!({ "p": p, "m": m, "input": input }), outputs, c))
}

fn consequence1(params: &Params) -> Outcome {
    let (p, m) = (params.p.unwrap_or(3), params.m.unwrap_or(1));
    let input = params.input.clone().unwrap_or_else(|| "t*x1 + x2^2".into());
    let f = field(p, m)?;
    let h = MultiPoly::<RatFunc>::parse_kt(f, &input, None, "t")?;
    let fact = frobenius_factorization(&h);
    let nv = h.nvars();
    // all constant parameter tuples with entries in the prime field, plus u = (s, …)
    let mut tuples: Vec<Vec<RatFunc>> = vec![vec![]];
    for _ in 0..nv {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..p as i64).map(move |a| {
                    let mut t = t.clone();
                    t.push(RatFunc::constant(f.from_int(a)));
                    t
                })
            })
            .collect();
    }
    tuples.push(vec![RatFunc::t(f); nv]);
    let lifts = lift_rational_points(&fact, &tuples)?;
    let mut c = Checks::new();
    c.check("every lifted point satisfies z^p = h(x)", lifts.all_verified());
    c.check("lifts of constant parameters have bounded height", lifts.constant_lifts_bounded());
    let outputs = json!({
        "g": fact.g.to_string(),
        "constant_bound": lifts.constant_bound,
        "points": lifts.points.iter().map(|pt| json!({
            "params": pt.params.iter().map(|u| u.to_string_var("s")).collect::<Vec<_>>(),
            "z": pt.z.to_string_var("s"),
            "height_k_prime": pt.height_k_prime,
            "height_k": pt.height_k.to_string(),
        })).collect::<Vec<_>>(),
    });
    Ok((json!({ "p": p, "m": m, "input": input }), outputs, c))
}

fn vojta(params: &Params, seed: u64, exec: Exec) -> Outcome {
    let std = VojtaParams::standard();
    let vp = VojtaParams {
        p: params.p.unwrap_or(std.p),
        d: params.d.unwrap_or(std.d),
        n: params.n.unwrap_or(std.n),
        max_degree: params.max_degree.unwrap_or(std.max_degree),
        seed,
        field_degree: params.m.unwrap_or(std.field_degree),
    };
    let demo = vojta_violation_demo(vp, exec)?;
    let mut c = Checks::new();
    c.check("cover glues and the Frobenius factorization verifies", demo.cover_glues && demo.factorization_verified);
    c.check("every point lies on the cover away from the singular fibers", demo.all_points_valid());
    c.check("discriminant is constant -2", demo.discriminant_constant());
    c.check("heights strictly increase", demo.heights_increasing());
    c.check("every (A, c) row is violated", demo.violations.len() == 6 && demo.violations_hold());
    c.check("height slope agrees with the adjunction class", demo.kappa_consistent());
    let outputs = json!({
        "field_order": demo.field_order,
        "form": demo.form.to_string(),
        "c_h": demo.c_h,
        "kappa": demo.kappa_adjunction,
        "heights": demo.points.iter().map(|p| p.height).collect::<Vec<_>>(),
        "discriminants": demo.points.iter().map(|p| p.disc.d.to_string()).collect::<Vec<_>>(),
        "sections": demo.points.iter().map(|p| p.section.to_string()).collect::<Vec<_>>(),
        "violations": to_value(&demo.violations),
    });
    let params = json!({ "p": vp.p, "m": vp.field_degree, "n": vp.n, "d": vp.d, "max_degree": vp.max_degree });
    Ok((params, outputs, c))
}

fn genericity(params: &Params, seed: u64, exec: Exec) -> Outcome {
    let (p, m, n, d) = (params.p.unwrap_or(3), params.m.unwrap_or(5), params.n.unwrap_or(1), params.d.unwrap_or(1));
    let dim = params.dim.unwrap_or(1);
    let census = cubic_degeneracy_census(field(7, 1)?)?;
    let f = field(p, m)?;
    let r = genericity_sample(f, GenericityParams { dim: dim as usize, d, n, trials: 100, seed }, exec)?;
    let mut c = Checks::new();
    c.check("degenerate cubics over F7 number q^2", census.degenerate == census.predicted);
    c.check("at least 90% of sampled sections are generic", r.fraction() >= 0.9);
    let outputs = json!({
        "census": to_value(&census),
        "good": r.good,
        "trials": r.params.trials,
        "degree": r.degree,
        "failures": r.failures.iter().map(|f| json!({ "trial": f.trial, "reason": f.reason })).collect::<Vec<_>>(),
    });
    Ok((json!({ "p": p, "m": m, "n": n, "d": d, "dim": dim }), outputs, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_scenario() {
        assert_eq!(run_scenario("nope", &Params::default(), 0, Exec::Sequential).unwrap_err(), Error::UnknownScenario("nope".into()));
    }

    #[test]
    fn desing_default_report() {
        let r = run_scenario("desing", &Params::default(), 0, Exec::Sequential).unwrap();
        assert!(r.passed());
        assert_eq!(r.outputs["steps"], 2);
    }

    #[test]
    fn report_round_trip() {
        let r = run_scenario("adjunction", &Params::default(), 0, Exec::Sequential).unwrap();
        let back = report_from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(recheck(&back, Exec::Sequential).unwrap());
        assert_eq!(r.outputs["class"][1], 17);
    }
}
