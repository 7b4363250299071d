use rayon::prelude::*;
use serde_json::{json, Value};
use weierstrass_limits::chain_calculus::{twist_profile, wronskian_multiplicity, TwistReport};
use weierstrass_limits::curves::{
    classify_on_curve, limit_special_classifier, system_at, twisted_ramification, twisted_system, vprime_subspace,
    weierstrass_divisor, CurvePoint, DivisorEntry, HyperellipticCurve, Locus, LocusComponent, Support,
};
use weierstrass_limits::exact::{parse_scalar, scalar_to_string, EXACT};
use weierstrass_limits::family_limits::{
    central_restriction, family_wronskian, saturate, semicontinuity_check, wronskian_t_order, FamilySections,
};
use weierstrass_limits::linear_series::{classify_point, order_sequence, ramification_weight, LocalSystem};
use weierstrass_limits::moduli_classes::{count_bundle, gamma_functional, pair, pencil_functional, solve_e_classes, sw_class};
use weierstrass_limits::verify::{self, CheckOutcome};
use weierstrass_limits::{BigQ, TruncSeries};

use crate::report::{object, poly, scalar, Report, Table};
use crate::{
    family_input, CliError, Command, CurveOp, FamilyOp, GenusRange, HyperellipticArgs, LimitsOp, Outcome, RunConfig,
    Suite,
};

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let report = match cmd {
        Command::Classes { g } => classes(*g)?,
        Command::Testcurves { g, i } => testcurves(*g, *i)?,
        Command::Chain { g, i, j } => chain(*g, *i, *j)?,
        Command::Hyperelliptic(args) => hyperelliptic(args, cfg)?,
        Command::Limits { op: LimitsOp::Classify { gx, gy, j, b_weierstrass, f } } => {
            limits_classify(*gx, *gy, *j, *b_weierstrass, f.as_deref())?
        }
        Command::Family { input, op } => family(input, *op, cfg)?,
        Command::Verify { suite, g } => return verify_suite(*suite, *g),
    };
    Ok(Outcome { report, disagreement: false })
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_genus(g: usize, min: usize) -> Result<(), CliError> {
    if g < min {
        return Err(usage(format!("genus {g} is out of range; need g >= {min}")));
    }
    Ok(())
}

fn classes(range: GenusRange) -> Result<Report, CliError> {
    need_genus(range.lo, 4)?;
    let computed: Vec<_> = range.iter().collect::<Vec<_>>().into_par_iter().map(sw_class).collect();
    let classes = computed.into_iter().collect::<Result<Vec<_>, _>>()?;
    let width = range.hi / 2 + 1;
    let mut header = vec!["g".to_string(), "lambda".to_string()];
    header.extend((0..width).map(|k| format!("delta_{k}")));
    let mut table = Table { header, rows: Vec::new() };
    for c in &classes {
        let mut row = vec![c.g.to_string(), scalar_to_string(&c.lambda)];
        row.extend((0..width).map(|k| c.delta.get(k).map(scalar_to_string).unwrap_or_default()));
        table.rows.push(row);
    }
    let body = object(vec![("classes", serde_json::to_value(&classes).expect("classes serialize"))]);
    Ok(Report::new(body).with_table(table))
}

fn testcurves(g: usize, only: Option<usize>) -> Result<Report, CliError> {
    need_genus(g, 4)?;
    let is: Vec<usize> = match only {
        Some(i) if i >= 1 && i <= g / 2 => vec![i],
        Some(i) => return Err(usage(format!("--i {i} is out of range; need 1 <= i <= {}", g / 2))),
        None => (1..=g / 2).collect(),
    };
    let ec = solve_e_classes(g)?;
    let pencil = pencil_functional(g)?;
    let mut table = Table::new(&["i", "j", "d", "dprime", "dprimeprime", "e", "pairing", "b_derived", "b_printed", "ratio"]);
    let mut curves = Vec::new();
    for &i in &is {
        let gamma = gamma_functional(g, i)?;
        let mut per_j = serde_json::Map::new();
        for (j, class) in [(-1i64, &ec.e_minus), (1, &ec.e_plus)] {
            let cb = count_bundle(g as i64, i as i64, j)?;
            let pairing = pair(&gamma, class)?;
            let cmp = ec.comparison.iter().find(|c| c.j == j && c.i == i).expect("comparison for every (j, i)");
            table.rows.push(vec![
                i.to_string(),
                j.to_string(),
                scalar_to_string(&cb.d),
                scalar_to_string(&cb.dprime),
                scalar_to_string(&cb.dprimeprime),
                scalar_to_string(&cb.e),
                scalar_to_string(&pairing),
                scalar_to_string(&cmp.derived),
                scalar_to_string(&cmp.printed),
                scalar_to_string(&cmp.ratio),
            ]);
            per_j.insert(
                j.to_string(),
                object(vec![
                    ("d", scalar(&cb.d)),
                    ("dprime", scalar(&cb.dprime)),
                    ("dprimeprime", scalar(&cb.dprimeprime)),
                    ("e", scalar(&cb.e)),
                    ("pairing", scalar(&pairing)),
                    ("b_derived", scalar(&cmp.derived)),
                    ("b_printed", scalar(&cmp.printed)),
                    ("ratio", scalar(&cmp.ratio)),
                ]),
            );
        }
        curves.push(object(vec![
            ("i", json!(i)),
            ("functional", functional_json(&gamma.on_lambda, &gamma.on_delta)),
            ("counts", Value::Object(per_j)),
        ]));
    }
    let pencil_pairs = object(vec![
        ("-1", scalar(&pair(&pencil, &ec.e_minus)?)),
        ("1", scalar(&pair(&pencil, &ec.e_plus)?)),
    ]);
    let body = object(vec![
        ("g", json!(g)),
        ("test_curves", Value::Array(curves)),
        ("pencil", object(vec![("functional", functional_json(&pencil.on_lambda, &pencil.on_delta)), ("pairing", pencil_pairs)])),
        ("classes", object(vec![
            ("-1", serde_json::to_value(&ec.e_minus).expect("class serializes")),
            ("1", serde_json::to_value(&ec.e_plus).expect("class serializes")),
        ])),
    ]);
    let mut report = Report::new(body).with_table(table);
    let off: Vec<&_> = ec.comparison.iter().filter(|c| c.ratio != BigQ::from_integer(1.into())).collect();
    if !off.is_empty() {
        report.warnings.push(format!(
            "printed boundary coefficients b(j,i) differ from the test-curve values at g={g}; the classes use the derived values"
        ));
        for c in off {
            report.warnings.push(format!(
                "j={:+} i={}: derived {} printed {} ratio {}",
                c.j,
                c.i,
                scalar_to_string(&c.derived),
                scalar_to_string(&c.printed),
                scalar_to_string(&c.ratio)
            ));
        }
    }
    Ok(report)
}

fn functional_json(on_lambda: &BigQ, on_delta: &[BigQ]) -> Value {
    object(vec![("lambda", scalar(on_lambda)), ("delta", Value::Array(on_delta.iter().map(scalar).collect()))])
}

fn twist_json(t: &TwistReport) -> Value {
    let p = &t.profile;
    let (lo, hi) = t.f_support;
    object(vec![
        ("g", json!(p.g)),
        ("i", json!(p.i)),
        ("j", json!(p.j)),
        ("k", json!(p.k)),
        ("ell", json!(p.ell)),
        ("kprime", json!(p.kprime)),
        ("ellprime", json!(p.ellprime)),
        ("c", json!(p.c)),
        ("cprime", json!(p.cprime)),
        ("D", json!(t.d_coefficients)),
        ("F", json!((lo..=hi).collect::<Vec<_>>())),
        ("degree_table", json!(t.degree_table)),
        ("x_restriction", serde_json::to_value(t.x_restriction).expect("restriction serializes")),
        ("h0_pair", json!([t.h0_pair.0, t.h0_pair.1])),
        ("total_degree", json!(t.total_degree())),
    ])
}

fn chain(g: i64, i: i64, j: Option<i64>) -> Result<Report, CliError> {
    if g < 2 || i < 1 || i > g - 1 {
        return Err(usage(format!("need g >= 2 and 1 <= i <= g-1, got g={g}, i={i}")));
    }
    let js: Vec<i64> = match j {
        Some(j) => vec![j],
        None => (0..i * (g - i)).collect(),
    };
    let reports = js.iter().map(|&j| twist_profile(g, i, j)).collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(&["j", "k", "ell", "kprime", "ellprime", "D", "F", "case", "a_coeff", "b_coeff", "h0"]);
    for t in &reports {
        let p = &t.profile;
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        table.rows.push(vec![
            p.j.to_string(),
            p.k.to_string(),
            p.ell.to_string(),
            p.kprime.to_string(),
            p.ellprime.to_string(),
            join(&t.d_coefficients),
            join(&(t.f_support.0..=t.f_support.1).collect::<Vec<_>>()),
            t.x_restriction.case.to_string(),
            t.x_restriction.a_coeff.to_string(),
            t.x_restriction.b_coeff.to_string(),
            format!("{} {}", t.h0_pair.0, t.h0_pair.1),
        ]);
    }
    let body = match j {
        Some(_) => twist_json(&reports[0]),
        None => {
            let m = wronskian_multiplicity(g, i)?;
            object(vec![
                ("g", json!(g)),
                ("i", json!(i)),
                ("profiles", Value::Array(reports.iter().map(twist_json).collect())),
                ("wronskian_multiplicity", serde_json::to_value(m).expect("multiplicity serializes")),
            ])
        }
    };
    Ok(Report::new(body).with_table(table))
}

fn point_json(p: &CurvePoint) -> Value {
    match p {
        CurvePoint::Infinity => json!("infinity"),
        CurvePoint::Affine { x, y } => object(vec![("x", scalar(x)), ("y", scalar(y))]),
    }
}

fn component_json(k: &LocusComponent, c: &HyperellipticCurve) -> Value {
    object(vec![
        ("x_poly", poly(&k.x_poly)),
        ("sheets", json!(k.sheets)),
        ("branch", json!(k.branch)),
        ("points", json!(k.point_count())),
        ("rational_points", Value::Array(k.rational_points(c).iter().map(point_json).collect())),
    ])
}

fn locus_json(l: &Locus, c: &HyperellipticCurve) -> Value {
    object(vec![
        ("points", json!(l.point_count())),
        ("defining_poly", poly(&l.defining_poly())),
        ("components", Value::Array(l.components.iter().map(|k| component_json(k, c)).collect())),
    ])
}

fn entry_json(e: &DivisorEntry, c: &HyperellipticCurve) -> Value {
    let support = match &e.support {
        Support::Point(p) => object(vec![("point", point_json(p))]),
        Support::Locus(k) => object(vec![("locus", component_json(k, c))]),
    };
    object(vec![("support", support), ("weight", json!(e.weight)), ("points", json!(e.points()))])
}

fn entry_row(e: &DivisorEntry) -> Vec<String> {
    let support = match &e.support {
        Support::Point(CurvePoint::Infinity) => "infinity".to_string(),
        Support::Point(CurvePoint::Affine { x, y }) => format!("({}, {})", scalar_to_string(x), scalar_to_string(y)),
        Support::Locus(k) => format!("x-roots of [{}]", k.x_poly.coeffs().iter().map(scalar_to_string).collect::<Vec<_>>().join(" ")),
    };
    vec![support, e.points().to_string(), e.weight.to_string()]
}

fn series_json(s: &TruncSeries<BigQ>) -> Value {
    let order = if s.order() == EXACT { Value::Null } else { json!(s.order()) };
    object(vec![("coefficients", Value::Array(s.known().iter().map(scalar).collect())), ("order", order)])
}

fn local_system_json(sys: &LocalSystem<BigQ>) -> Value {
    Value::Array(sys.sections.iter().map(series_json).collect())
}

/// `x,y`, a bare `x` (the point with the positive rational square root), or
/// `inf`.
fn parse_point(c: &HyperellipticCurve, s: &str) -> Result<CurvePoint, CliError> {
    let s = s.trim();
    if matches!(s, "inf" | "infinity") {
        return Ok(CurvePoint::Infinity);
    }
    Ok(match s.split_once(',') {
        Some((x, y)) => c.point(parse_scalar(x.trim())?, parse_scalar(y.trim())?)?,
        None => c.point_over(&parse_scalar(s)?)?,
    })
}

fn hyperelliptic(args: &HyperellipticArgs, cfg: &RunConfig) -> Result<Report, CliError> {
    let c = HyperellipticCurve::parse(&args.f)?;
    let points = args.points.iter().map(|p| parse_point(&c, p)).collect::<Result<Vec<_>, _>>()?;
    let curve = object(vec![("f", poly(&c.f)), ("genus", json!(c.genus))]);
    match args.op {
        CurveOp::Weierstrass => {
            need_genus(c.genus, 2)?;
            let entries = weierstrass_divisor(&c)?;
            let total: usize = entries.iter().map(DivisorEntry::total).sum();
            let mut table = Table::new(&["support", "points", "weight"]);
            table.rows.extend(entries.iter().map(entry_row));
            let g = c.genus;
            let body = object(vec![
                ("curve", curve),
                ("entries", Value::Array(entries.iter().map(|e| entry_json(e, &c)).collect())),
                ("total_weight", json!(total)),
                ("expected_total", json!(g * g * g - g)),
            ]);
            Ok(Report::new(body).with_table(table))
        }
        CurveOp::Twisted => {
            let poles = args
                .poles
                .iter()
                .map(|(x, y, m)| Ok((c.point(parse_scalar(x)?, parse_scalar(y)?)?, *m)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let sys = twisted_system(&c, args.n.unwrap_or(0), &poles)?;
            let min = sys.default_truncation();
            let trunc = match cfg.trunc {
                Some(t) if t < min => return Err(usage(format!("--trunc {t} is below the minimum {min} for this system"))),
                Some(t) => t,
                None => min,
            };
            let r = twisted_ramification(&sys, &points)?;
            let mut samples = Vec::new();
            for (p, weight) in &r.samples {
                let local = system_at(&sys, p, trunc)?;
                let o = order_sequence(&local)?;
                samples.push(object(vec![
                    ("point", point_json(p)),
                    ("orders", serde_json::to_value(&o).expect("orders serialize")),
                    ("weight", json!(weight)),
                    ("class", json!(classify_point(&o, sys.dim()).as_str())),
                    ("expansions", local_system_json(&local)),
                ]));
            }
            let mut table = Table::new(&["support", "points", "weight"]);
            table.rows.extend(r.entries.iter().map(entry_row));
            let body = object(vec![
                ("curve", curve),
                ("basis", json!(sys.describe())),
                ("dim", json!(r.n_dim)),
                ("degree", json!(r.degree)),
                ("pluecker_total", json!(r.pluecker_total)),
                ("total_weight", json!(r.total_weight)),
                ("pole_point", point_json(&r.pole_point)),
                ("weight_at_pole_point", json!(r.weight_at_pole_point)),
                ("off_pole_total", json!(r.off_pole_total)),
                ("entries", Value::Array(r.entries.iter().map(|e| entry_json(e, &c)).collect())),
                ("wronskian", object(vec![("a", poly(&r.wronskian.a)), ("b", poly(&r.wronskian.b))])),
                ("truncation", json!(trunc)),
                ("samples", Value::Array(samples)),
            ]);
            Ok(Report::new(body).with_table(table))
        }
        CurveOp::Classify => {
            let g_y = args.n.unwrap_or(1);
            let body = classify_body(&c, g_y, args.j, args.b_weierstrass, &points)?;
            Ok(Report::new(object(vec![("curve", curve), ("result", body)])))
        }
        CurveOp::Vprime => {
            let q = match points.first() {
                Some(q) => q.clone(),
                None => c
                    .rational_branch_points()
                    .into_iter()
                    .next()
                    .ok_or_else(|| usage("no rational branch point; pass --point for Q"))?,
            };
            let v = vprime_subspace(&c, args.n.unwrap_or(1), &q)?;
            let table_json: Vec<Value> = v
                .vanishing_table
                .iter()
                .map(|&(i, lhs, rhs)| object(vec![("i", json!(i)), ("dim_vprime", json!(lhs)), ("h0", json!(rhs))]))
                .collect();
            let mut table = Table::new(&["i", "dim_vprime", "h0"]);
            table.rows.extend(v.vanishing_table.iter().map(|&(i, a, b)| vec![i.to_string(), a.to_string(), b.to_string()]));
            let body = object(vec![
                ("curve", curve),
                ("q", point_json(&q)),
                ("g", json!(v.g)),
                ("orders", serde_json::to_value(&v.orders).expect("orders serialize")),
                ("class", json!(v.class.as_str())),
                ("vanishing_table", Value::Array(table_json)),
                ("vanishing_identity_holds", json!(v.vanishing_identity_holds())),
                ("expansions", local_system_json(&v.system)),
            ]);
            Ok(Report::new(body).with_table(table))
        }
    }
}

fn classify_body(
    c: &HyperellipticCurve,
    g_y: usize,
    j: Option<i8>,
    b_weierstrass: bool,
    points: &[CurvePoint],
) -> Result<Value, CliError> {
    let js: Vec<i8> = match j {
        Some(j) if j == 1 || j == -1 => vec![j],
        Some(j) => return Err(usage(format!("--j must be 1 or -1, got {j}"))),
        None => vec![-1, 1],
    };
    let mut by_j = serde_json::Map::new();
    for j in js {
        let r = limit_special_classifier(c, &CurvePoint::Infinity, g_y, b_weierstrass, j)?;
        by_j.insert(
            j.to_string(),
            object(vec![
                ("g", json!(r.g)),
                ("condition_i", locus_json(&r.condition_i, c)),
                ("condition_ii", locus_json(&r.condition_ii, c)),
            ]),
        );
    }
    let mut samples = Vec::new();
    for p in points {
        let (o, class) = classify_on_curve(c, g_y, p)?;
        samples.push(object(vec![
            ("point", point_json(p)),
            ("orders", serde_json::to_value(&o).expect("orders serialize")),
            ("class", json!(class.as_str())),
        ]));
    }
    Ok(object(vec![
        ("g_y", json!(g_y)),
        ("b_weierstrass", json!(b_weierstrass)),
        ("by_j", Value::Object(by_j)),
        ("samples", Value::Array(samples)),
    ]))
}

fn default_model(gx: usize) -> String {
    if gx == 1 {
        "x^3-x".into()
    } else {
        format!("x^{}-x", 2 * gx + 1)
    }
}

fn limits_classify(gx: usize, gy: usize, j: i8, b_weierstrass: bool, f: Option<&str>) -> Result<Report, CliError> {
    if gx < 1 || gy < 1 {
        return Err(usage(format!("need gx >= 1 and gy >= 1, got gx={gx}, gy={gy}")));
    }
    let model = f.map(str::to_string).unwrap_or_else(|| default_model(gx));
    let c = HyperellipticCurve::parse(&model)?;
    if c.genus != gx {
        return Err(usage(format!("{model} has genus {}, not gx={gx}", c.genus)));
    }
    let body = classify_body(&c, gy, Some(j), b_weierstrass, &[])?;
    Ok(Report::new(object(vec![
        ("curve", object(vec![("f", poly(&c.f)), ("genus", json!(c.genus))])),
        ("gx", json!(gx)),
        ("gy", json!(gy)),
        ("result", body),
    ])))
}

fn grid_json(fs: &FamilySections<BigQ>) -> Value {
    Value::Array(
        fs.sections
            .iter()
            .map(|s| Value::Array(s.known().iter().map(|row| Value::Array(row.known().iter().map(scalar).collect())).collect()))
            .collect(),
    )
}

fn precision(p: usize) -> Value {
    if p == EXACT {
        Value::Null
    } else {
        json!(p)
    }
}

fn family(path: &std::path::Path, op: FamilyOp, cfg: &RunConfig) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let fs = family_input::parse(&text)?.build(cfg.trunc)?;
    let shape = object(vec![
        ("dim", json!(fs.dim())),
        ("trunc_t", json!(fs.trunc_t)),
        ("trunc_x", json!(fs.trunc_x)),
    ]);
    let body = match op {
        FamilyOp::Saturate => {
            let before = wronskian_t_order(&fs)?;
            let sat = saturate(&fs)?;
            object(vec![
                ("input", shape),
                ("t_order_before", json!(before)),
                ("t_order_after", json!(wronskian_t_order(&sat)?)),
                ("sections", grid_json(&sat)),
            ])
        }
        FamilyOp::Wronskian => {
            let w = family_wronskian(&fs)?;
            let det: Vec<Value> = w.det.coeffs().iter().map(poly).collect();
            object(vec![
                ("input", shape),
                ("t_order", json!(wronskian_t_order(&fs)?)),
                ("coefficients", Value::Array(det)),
                ("t_precision", precision(w.t_precision)),
                ("x_precision", precision(w.x_precision)),
            ])
        }
        FamilyOp::Limit => {
            let sat = saturate(&fs)?;
            let central = central_restriction(&sat)?;
            let o = order_sequence(&central)?;
            let n = central.dim();
            let semi = (0..=n + 1)
                .map(|a| {
                    semicontinuity_check(&sat, a).map(|(central, generic)| {
                        object(vec![("a", json!(a)), ("central", json!(central)), ("generic", json!(generic))])
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            object(vec![
                ("input", shape),
                ("orders", serde_json::to_value(&o).expect("orders serialize")),
                ("weight", json!(ramification_weight(&o))),
                ("class", json!(classify_point(&o, n).as_str())),
                ("sections", local_system_json(&central)),
                ("semicontinuity", Value::Array(semi)),
            ])
        }
    };
    Ok(Report::new(body))
}

type Range = std::ops::RangeInclusive<usize>;

#[derive(Default)]
struct Plan {
    jobs: Vec<Box<dyn Fn() -> CheckOutcome>>,
    skipped: Vec<String>,
}

impl Plan {
    fn add(&mut self, name: &str, range: Option<Range>, f: fn(Range) -> CheckOutcome) {
        match range {
            Some(r) => self.jobs.push(Box::new(move || f(r.clone()))),
            None => self.skipped.push(name.to_string()),
        }
    }
}

/// Clamp a genus range to the domain of a criterion; `None` when empty.
fn clamp(r: GenusRange, min: usize) -> Option<Range> {
    let lo = r.lo.max(min);
    (lo <= r.hi).then_some(lo..=r.hi)
}

fn verify_suite(suite: Suite, g: Option<GenusRange>) -> Result<Outcome, CliError> {
    let or = |min: usize, default: Range| match g {
        Some(r) => clamp(r, min),
        None => Some(default),
    };
    let mut plan = Plan::default();
    match suite {
        Suite::All => {
            plan.add("sw by intersection", or(4, 4..=30), verify::sw_by_intersection);
            plan.add("pencil vanishing", or(4, 4..=30), verify::pencil_vanishing);
            plan.add("count identities", or(2, 2..=30), verify::count_identities);
            plan.add("test curve consistency", or(4, 4..=30), verify::test_curve_consistency);
            plan.add("class additivity", or(4, 4..=30), verify::class_additivity);
            plan.add("chain combinatorics", or(2, 2..=20), verify::chain_combinatorics);
            plan.add("chain wronskian", or(2, 2..=10), verify::chain_wronskian);
            plan.jobs.push(Box::new(verify::explicit_pluecker));
            plan.jobs.push(Box::new(|| verify::family_limits_suite(0x5eed, 100)));
            plan.jobs.push(Box::new(verify::classifier_coherence));
        }
        Suite::SwIntersection => plan.add("sw by intersection", or(4, 4..=30), verify::sw_by_intersection),
        Suite::Chain => {
            plan.add("chain combinatorics", or(2, 2..=20), verify::chain_combinatorics);
            plan.add("chain wronskian", or(2, 2..=10), verify::chain_wronskian);
        }
        Suite::Pluecker => {
            plan.jobs.push(Box::new(verify::explicit_pluecker));
            plan.add("canonical totals", or(2, 2..=6), verify::canonical_totals);
        }
    }
    let Plan { jobs, skipped } = plan;
    if jobs.is_empty() {
        return Err(usage("the genus range is outside the domain of every check in this suite"));
    }
    // sequential, so each check's time against its budget is its own
    let outcomes: Vec<CheckOutcome> = jobs.iter().map(|f| f()).collect();
    for o in &outcomes {
        eprintln!("{}", o.summary_line());
    }
    let passed = outcomes.iter().all(CheckOutcome::passed);
    let mut table = Table::new(&["criterion", "name", "result", "cases", "mismatches", "within_budget"]);
    for o in &outcomes {
        table.rows.push(vec![
            o.id.to_string(),
            o.name.to_string(),
            if o.passed() { "pass" } else { "fail" }.to_string(),
            o.cases.to_string(),
            o.mismatches.len().to_string(),
            o.within_budget().to_string(),
        ]);
    }
    let body = object(vec![
        ("passed", json!(passed)),
        ("criteria", Value::Array(outcomes.iter().map(outcome_json).collect())),
        ("skipped", json!(skipped)),
    ]);
    let mut report = Report::new(body).with_table(table);
    for o in &outcomes {
        report.warnings.extend(o.notes.iter().map(|n| format!("criterion {} {}: {n}", o.id, o.name)));
    }
    Ok(Outcome { report, disagreement: !passed })
}

/// Elapsed time goes to stderr only, so stdout stays byte-identical.
fn outcome_json(o: &CheckOutcome) -> Value {
    object(vec![
        ("criterion", json!(o.id)),
        ("name", json!(o.name)),
        ("passed", json!(o.passed())),
        ("cases", json!(o.cases)),
        ("budget_ms", json!(o.budget_ms)),
        ("within_budget", json!(o.within_budget())),
        ("diff", serde_json::to_value(&o.mismatches).expect("mismatches serialize")),
        ("notes", json!(o.notes)),
    ])
}
