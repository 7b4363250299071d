//! The acceptance suites as library functions, shared by the test target
//! and the command line. Each suite returns the cases it ran and every
//! mismatch as expected versus computed text.

use std::fmt::Display;
use std::ops::RangeInclusive;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain_calculus::{chain_system_report, twist_profile, wronskian_multiplicity};
use crate::curves::{
    limit_special_classifier, rr_basis, twisted_ramification, twisted_system, weierstrass_divisor, CurvePoint,
    HyperellipticCurve, Support,
};
use crate::error::{Error, Result};
use crate::exact::{exact_determinant, BigQ, DensePoly, Ring};
use crate::family_limits::{
    central_restriction, family_wronskian, limit_cycle_dr, saturate, semicontinuity_check, wronskian_t_order,
    ComponentCycle, FamilySections, FamilyWronskian, TwistTable,
};
use crate::moduli_classes::{
    a_coeff, count_bundle, derive_sw_by_intersection, e_closed, gamma_functional, pair, pencil_functional,
    solve_e_classes, sw_class, symbolic_identities,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub case: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
    /// Informational lines; never a failure.
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
    pub budget_ms: u64,
}

impl CheckOutcome {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty() && self.cases > 0
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed_ms <= self.budget_ms
    }

    pub fn passed(&self) -> bool {
        self.agrees() && self.within_budget()
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{verdict} criterion {:>2} {}: {} cases, {} mismatches, {} ms (budget {} ms)",
            self.id,
            self.name,
            self.cases,
            self.mismatches.len(),
            self.elapsed_ms,
            self.budget_ms
        );
        if let Some(m) = self.mismatches.first() {
            line.push_str(&format!("; first: {} expected {} computed {}", m.case, m.expected, m.computed));
        }
        line
    }
}

struct Collector {
    cases: usize,
    mismatches: Vec<Mismatch>,
    notes: Vec<String>,
}

impl Collector {
    fn new() -> Self {
        Collector { cases: 0, mismatches: Vec::new(), notes: Vec::new() }
    }

    fn eq<T: PartialEq + Display>(&mut self, case: impl Into<String>, expected: T, computed: T) {
        self.cases += 1;
        if expected != computed {
            self.mismatches.push(Mismatch {
                case: case.into(),
                expected: expected.to_string(),
                computed: computed.to_string(),
            });
        }
    }

    fn holds(&mut self, case: impl Into<String>, ok: bool) {
        self.eq(case, true, ok);
    }

    fn error(&mut self, case: impl Into<String>, e: Error) {
        self.cases += 1;
        self.mismatches.push(Mismatch { case: case.into(), expected: "a result".into(), computed: format!("error: {e}") });
    }

    fn run(&mut self, case: impl Into<String>, f: impl FnOnce(&mut Self) -> Result<()>) {
        let case = case.into();
        if let Err(e) = f(self) {
            self.error(case, e);
        }
    }

    fn finish(self, id: u8, name: &'static str, start: Instant, budget_ms: u64) -> CheckOutcome {
        CheckOutcome {
            id,
            name,
            cases: self.cases,
            mismatches: self.mismatches,
            notes: self.notes,
            elapsed_ms: start.elapsed().as_millis() as u64,
            budget_ms,
        }
    }
}

fn q(n: i64) -> BigQ {
    BigQ::from_int(n)
}

/// The intersection-theory derivation reproduces the printed class.
pub fn sw_by_intersection(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs {
        c.run(format!("g={g}"), |c| {
            c.eq(format!("g={g}"), sw_class(g)?, derive_sw_by_intersection(g)?);
            Ok(())
        });
    }
    c.finish(1, "sw class by intersection", start, 5000)
}

/// The pencil of cubics pairs to zero with the class.
pub fn pencil_vanishing(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs {
        c.run(format!("g={g}"), |c| {
            c.eq(format!("g={g}"), BigQ::zero(), pair(&pencil_functional(g)?, &sw_class(g)?)?);
            Ok(())
        });
    }
    c.finish(2, "pencil vanishing", start, 1000)
}

/// `d + d'' d'` against the closed form for `e`, then symbolically.
pub fn count_identities(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs.map(|g| g as i64) {
        for i in 1..g {
            for j in [-1, 1] {
                let case = format!("g={g} i={i} j={j}");
                match count_bundle(g, i, j) {
                    Ok(b) => c.eq(case, e_closed(g, i, j), b.d + b.dprimeprime * b.dprime),
                    Err(e) => c.error(case, e),
                }
            }
        }
    }
    for id in symbolic_identities() {
        c.holds(format!("symbolic: {}", id.name), id.holds);
    }
    c.finish(3, "counting identities", start, 1000)
}

/// Each boundary test curve sees `e_{-1,i} + e_{1,i}`.
pub fn test_curve_consistency(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs {
        for i in 1..=g / 2 {
            let case = format!("g={g} i={i}");
            c.run(case.clone(), |c| {
                let lhs = pair(&gamma_functional(g, i)?, &sw_class(g)?)?;
                let (gi, ii) = (g as i64, i as i64);
                c.eq(case, e_closed(gi, ii, -1) + e_closed(gi, ii, 1), lhs);
                Ok(())
            });
        }
    }
    c.finish(4, "test-curve consistency", start, 1000)
}

/// `E_{-1} + E_1` is the class, with the `lambda`-coefficients `a_j`; the
/// printed/derived boundary ratio is collected as a note.
pub fn class_additivity(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    let mut ratios = std::collections::BTreeSet::new();
    for g in gs {
        c.run(format!("g={g}"), |c| {
            let e = solve_e_classes(g)?;
            c.eq(format!("g={g} sum"), sw_class(g)?, &e.e_minus + &e.e_plus);
            c.eq(format!("g={g} a_-1"), a_coeff(-1, g as i64)?, e.e_minus.lambda.clone());
            c.eq(format!("g={g} a_1"), a_coeff(1, g as i64)?, e.e_plus.lambda.clone());
            for b in &e.comparison {
                c.eq(format!("g={g} j={} i={} printed/derived", b.j, b.i), q(2), b.ratio.clone());
                ratios.insert(b.ratio.to_string());
            }
            Ok(())
        });
    }
    c.notes.push(format!(
        "printed boundary coefficients b_(j,i) over derived ones: {}",
        ratios.into_iter().collect::<Vec<_>>().join(", ")
    ));
    c.finish(5, "class additivity", start, 1000)
}

/// Exhaustive chain twist combinatorics.
pub fn chain_combinatorics(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs.map(|g| g as i64) {
        for i in 1..g {
            let case = format!("g={g} i={i}");
            c.run(case.clone(), |c| {
                let wm = wronskian_multiplicity(g, i)?;
                c.eq(format!("{case} drop"), i * (g - i) * g / 2, wm.total_drop);
                c.eq(format!("{case} parity"), 0, i * (g - i) * g % 2);
                let mut prev: Option<Vec<i64>> = None;
                for j in 0..i * (g - i) {
                    let r = twist_profile(g, i, j)?;
                    let case = format!("g={g} i={i} j={j}");
                    c.eq(format!("{case} c_i"), j + 1, *r.profile.c.last().expect("i >= 1"));
                    c.eq(format!("{case} degree"), 2 * g - 2, r.total_degree());
                    if let Some(p) = &prev {
                        let (lo, hi) = r.f_support;
                        let step: Vec<i64> = r.d_coefficients.iter().zip(p).map(|(a, b)| a - b).collect();
                        let indicator: Vec<i64> = (1..g).map(|m| i64::from(lo <= m && m <= hi)).collect();
                        c.eq(format!("{case} F"), format!("{indicator:?}"), format!("{step:?}"));
                    }
                    prev = Some(r.d_coefficients);
                }
                Ok(())
            });
        }
    }
    c.finish(6, "chain combinatorics", start, 2000)
}

/// The chain-component Wronskian has `g` zeros off `{P, Q}` and none at them.
pub fn chain_wronskian(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    let params = [(1, 1), (1, -1), (2, 3), (-5, 7)];
    for g in gs {
        for (a, b) in params {
            let case = format!("g={g} alpha={a} beta={b}");
            c.run(case.clone(), |c| {
                let r = chain_system_report(g, &q(a), &q(b))?;
                c.eq(format!("{case} off"), g, r.off_total);
                c.eq(format!("{case} at P"), 0, r.weight_at_p);
                c.eq(format!("{case} at Q"), 0, r.weight_at_q);
                Ok(())
            });
        }
    }
    c.finish(7, "chain Wronskian", start, 2000)
}

/// Explicit curves: canonical totals, a twisted split with an affine pole,
/// and the genus-1 three-division split.
pub fn explicit_pluecker() -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for (f, total) in [("x^5-1", 6usize), ("x^7-x", 24)] {
        c.run(f, |c| {
            let w: usize = weierstrass_divisor(&HyperellipticCurve::parse(f)?)?.iter().map(|e| e.total()).sum();
            c.eq(format!("{f} canonical total"), total, w);
            Ok(())
        });
    }
    c.run("x^5+1, omega(2A), A=(0,1)", |c| {
        let curve = HyperellipticCurve::parse("x^5+1")?;
        let a = curve.point_over(&BigQ::zero())?;
        let r = twisted_ramification(&twisted_system(&curve, 0, &[(a, 2)])?, &[])?;
        c.eq("deg1 total", r.pluecker_total, r.total_weight);
        c.eq("deg1 pole weight", 2, r.weight_at_pole_point);
        c.eq("deg1 off-pole", 16, r.off_pole_total);
        Ok(())
    });
    c.run("x^3-x, O(3 infinity)", |c| {
        let curve = HyperellipticCurve::parse("x^3-x")?;
        let r = twisted_ramification(&rr_basis(&curve, 3)?, &[])?;
        c.eq("genus 1 total", r.pluecker_total, r.total_weight);
        c.eq("genus 1 pole weight", 1, r.weight_at_pole_point);
        c.eq("genus 1 off-pole", 8, r.off_pole_total);
        let off: Vec<String> = r
            .entries
            .iter()
            .filter_map(|e| match &e.support {
                Support::Locus(l) => Some(format!("{} x{} w{}", l.x_poly, l.sheets, e.weight)),
                Support::Point(_) => None,
            })
            .collect();
        c.eq("genus 1 off-pole locus", format!("{} x2 w1", three_division()), off.join("; "));
        Ok(())
    });
    c.finish(8, "explicit-curve Pluecker", start, 5000)
}

/// `g^3 - g` for the canonical systems of `y^2 = x^(2g+1) - 1` and
/// `y^2 = x^(2g+1) - x` across a genus range.
pub fn canonical_totals(gs: RangeInclusive<usize>) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    for g in gs {
        for f in [format!("x^{}-1", 2 * g + 1), format!("x^{}-x", 2 * g + 1)] {
            c.run(f.clone(), |c| {
                let w: usize = weierstrass_divisor(&HyperellipticCurve::parse(&f)?)?.iter().map(|e| e.total()).sum();
                c.eq(format!("{f} canonical total"), g * g * g - g, w);
                Ok(())
            });
        }
    }
    c.finish(8, "canonical Pluecker totals", start, 5000)
}

fn three_division() -> DensePoly<BigQ> {
    DensePoly::from_ints(&[-1, 0, -6, 0, 3])
}

type Grid = Vec<Vec<BigQ>>;

fn random_grid(rng: &mut ChaCha8Rng, tdeg: usize, xdeg: usize, lo: i64, hi: i64) -> Grid {
    (0..=tdeg).map(|_| (0..=xdeg).map(|_| q(rng.gen_range(lo..=hi))).collect()).collect()
}

fn grid_poly(g: &Grid) -> DensePoly<DensePoly<BigQ>> {
    DensePoly::new(g.iter().map(|row| DensePoly::new(row.clone())).collect())
}

fn poly_grid(p: &DensePoly<DensePoly<BigQ>>) -> Grid {
    p.coeffs().iter().map(|c| c.coeffs().to_vec()).collect()
}

/// A family of `n` sections with distinct `x`-orders at `t = 0`, mixed by a
/// random matrix over `Q[t]` whose determinant is a power of `t` times a
/// nonzero constant, so it is generically independent and usually not
/// saturated.
type BiPoly = DensePoly<DensePoly<BigQ>>;

fn random_family(rng: &mut ChaCha8Rng, n: usize, trunc: usize) -> Result<(Vec<BiPoly>, FamilySections<BigQ>)> {
    let base: Vec<DensePoly<DensePoly<BigQ>>> = (0..n)
        .map(|k| {
            let mut g = random_grid(rng, 1, n + 1, -3, 3);
            for (m, v) in g[0].iter_mut().enumerate() {
                if m < k {
                    *v = BigQ::zero();
                }
            }
            g[0][k] = q(rng.gen_range(1..=3));
            grid_poly(&g)
        })
        .collect();
    let tpow = |e: usize| DensePoly::new(vec![DensePoly::zero(); e].into_iter().chain([DensePoly::constant(q(1))]).collect());
    let mut mixed = base.clone();
    // upper triangular with t-power diagonal, then a unimodular shear
    for k in 0..n {
        let mut s = &base[k] * &tpow(rng.gen_range(0..=2));
        for b in base.iter().take(k) {
            let c = DensePoly::constant(DensePoly::constant(q(rng.gen_range(-2..=2))));
            s = s + b * &c;
        }
        mixed[k] = s;
    }
    for k in 1..n {
        let c = q(rng.gen_range(-2..=2));
        let prev = mixed[k - 1].clone();
        mixed[k] = mixed[k].clone() + &prev * &DensePoly::constant(DensePoly::constant(c));
    }
    let grids: Vec<Grid> = mixed.iter().map(poly_grid).collect();
    let fs = FamilySections::from_polys(&grids, trunc, trunc)?.with_degree(trunc - 1, 0);
    Ok((mixed, fs))
}

fn scaled_wronskian(w: &FamilyWronskian<BigQ>, factor: &DensePoly<DensePoly<BigQ>>) -> FamilyWronskian<BigQ> {
    FamilyWronskian { det: &w.det * factor, t_precision: w.t_precision, x_precision: w.x_precision }
}

/// Randomized family checks plus constructed two-component limit cycles.
pub fn family_limits_suite(seed: u64, instances: usize) -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trunc = 12;
    let mut lowered = 0;
    for k in 0..instances {
        let n = rng.gen_range(2..=3);
        let case = format!("instance {k} (n={n})");
        let fam = random_family(&mut rng, n, trunc);
        let u = grid_poly(&random_grid(&mut rng, 1, 1, -2, 2));
        let t_mat: Vec<Vec<DensePoly<BigQ>>> = (0..n)
            .map(|_| (0..n).map(|_| DensePoly::new(vec![q(rng.gen_range(-2..=2)), q(rng.gen_range(-1..=1))])).collect())
            .collect();
        c.run(case.clone(), |c| {
            let (polys, fs) = fam?;
            let sat = saturate(&fs)?;
            c.eq(format!("{case} idempotent"), true, saturate(&sat)? == sat);
            central_restriction(&sat)?;
            let (before, after) = (wronskian_t_order(&fs)?, wronskian_t_order(&sat)?);
            c.holds(format!("{case} saturation lowers the t-order ({before} -> {after})"), after <= before);
            c.eq(format!("{case} saturated t-order"), 0, after);
            if after < before {
                lowered += 1;
            }
            for a in 0..=n + 1 {
                let (central, generic) = semicontinuity_check(&sat, a)?;
                c.holds(format!("{case} semicontinuity a={a} ({central} >= {generic})"), central >= generic);
            }
            let w = family_wronskian(&fs)?;
            c.holds(format!("{case} certified range is nonempty"), w.t_precision > before && w.x_precision > 0);
            if u.is_zero() {
                return Ok(());
            }
            let u_fam: Vec<Grid> = polys.iter().map(|p| poly_grid(&(p * &u))).collect();
            let wu = family_wronskian(&FamilySections::from_polys(&u_fam, trunc, trunc)?)?;
            c.holds(format!("{case} W(u s) = u^n W(s)"), wu.agrees_with(&scaled_wronskian(&w, &Ring::pow(&u, n as u32))));
            let t_fam: Vec<Grid> = (0..n)
                .map(|col| {
                    let mut acc = DensePoly::<DensePoly<BigQ>>::zero();
                    for (row, p) in polys.iter().enumerate() {
                        let entry: DensePoly<DensePoly<BigQ>> =
                            DensePoly::new(t_mat[row][col].coeffs().iter().map(|x| DensePoly::constant(x.clone())).collect());
                        acc = acc + p * &entry;
                    }
                    poly_grid(&acc)
                })
                .collect();
            let det_t = exact_determinant(&t_mat)?;
            let det_t = DensePoly::new(det_t.coeffs().iter().map(|x| DensePoly::constant(x.clone())).collect());
            let wt = family_wronskian(&FamilySections::from_polys(&t_fam, trunc, trunc)?)?;
            c.holds(format!("{case} W(s T) = det T W(s)"), wt.agrees_with(&scaled_wronskian(&w, &det_t)));
            Ok(())
        });
    }
    c.notes.push(format!("{lowered} of {instances} random families were not saturated"));
    for k in 0..instances {
        let case = format!("two components {k}");
        let n = rng.gen_range(1..=4usize);
        let (g1, g2) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
        let d = rng.gen_range(0..=8i64);
        let ell = rng.gen_range(0..n as i64);
        let e1 = rng.gen_range(0..=d);
        let a01 = rng.gen_range(0..=ell);
        let tw = TwistTable { a: vec![vec![0, a01], vec![ell - a01, 0]], node_incidence: vec![(0, 1, "P".into(), 0)] };
        // restricted degrees d_i = e_i + a_ij - a_ii
        let degs = [e1 + a01, d - e1 + ell - a01];
        let cycles: Vec<ComponentCycle> = degs
            .iter()
            .zip([g1, g2])
            .enumerate()
            .map(|(idx, (&di, gi))| {
                let total = n as i64 * di + (n * (n - 1)) as i64 * (gi as i64 - 1);
                let mut cyc = ComponentCycle::default();
                let mut left = total as u64;
                let mut p = 0;
                while left > 0 {
                    let m = rng.gen_range(1..=left);
                    cyc.add_point(&format!("R{idx}_{p}"), m);
                    left -= m;
                    p += 1;
                }
                cyc
            })
            .collect();
        c.run(case.clone(), |c| {
            let out = limit_cycle_dr(&cycles, &tw, n)?;
            let g = (g1 + g2) as i64;
            let n = n as i64;
            c.eq(format!("{case} degree"), (n * d + n * (n - 1) * (g - 1)) as u64, out.degree());
            Ok(())
        });
    }
    c.finish(9, "family limits", start, 5000)
}

/// The genus-1 classifier loci against the three-division computation,
/// and the empty `g = 2` case against the vanishing counts.
pub fn classifier_coherence() -> CheckOutcome {
    let start = Instant::now();
    let mut c = Collector::new();
    c.run("x^3-x", |c| {
        let curve = HyperellipticCurve::parse("x^3-x")?;
        let r = twisted_ramification(&rr_basis(&curve, 3)?, &[])?;
        let torsion: Vec<String> = r
            .entries
            .iter()
            .filter_map(|e| match &e.support {
                Support::Locus(l) => Some(format!("{} x{}", l.x_poly, l.sheets)),
                Support::Point(_) => None,
            })
            .collect();
        let plus = limit_special_classifier(&curve, &CurvePoint::Infinity, 1, true, 1)?;
        let ii: Vec<String> = plus.condition_ii.components.iter().map(|l| format!("{} x{}", l.x_poly, l.sheets)).collect();
        c.eq("j=+1 condition (ii) equals the torsion locus", torsion.join("; "), ii.join("; "));
        c.holds("j=+1 condition (i) empty", plus.condition_i.is_empty());
        let minus = limit_special_classifier(&curve, &CurvePoint::Infinity, 1, true, -1)?;
        c.holds("j=-1 condition (i) empty", minus.condition_i.is_empty());
        c.holds("j=-1 condition (ii) empty", minus.condition_ii.is_empty());
        for j in [-1, 1] {
            c.eq(format!("e_(j={j},1) at g=2"), BigQ::zero(), count_bundle(2, 1, j)?.e);
        }
        Ok(())
    });
    c.finish(10, "classifier coherence", start, 2000)
}

/// Every criterion with its default parameter range.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        sw_by_intersection(4..=30),
        pencil_vanishing(4..=30),
        count_identities(2..=30),
        test_curve_consistency(4..=30),
        class_additivity(4..=30),
        chain_combinatorics(2..=20),
        chain_wronskian(2..=10),
        explicit_pluecker(),
        family_limits_suite(0x5eed, 100),
        classifier_coherence(),
    ]
}
