//! Verification sweeps shared by the command-line tool and the acceptance tests.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use laminations::{
    curve_classes, enumerate_a_laminations, flip_transport_curve, random_congruent_lamination,
    tropical_mutate_a, tropical_mutate_x, word_shear, ALamination, CurveWord, LamCurve, PLamination,
    SampleBounds, State, StatedComponent,
};
use quantum_torus::error::Result;
use quantum_torus::torus::{pointed_normalize, TorusElement};
use quantum_trace::{duality_a, to_congruent_x, trace_curve, trace_stated, transport_x};
use skein_engine::annulus::{
    b_closed_form, b_element, loop_arc_lhs, loop_arc_rhs, recursion_tail_half_exp, stated_tail_half_exp,
    twist_product_lhs, twist_product_rhs, twist_recursion_rhs,
};
use skein_engine::{cut, cut_element, phi_state_clasp, SkeinElement, SkeinEngine};
use surface_combinatorics::curve::{Curve, Multicurve};
use surface_combinatorics::surface::{mat_mul, mutate_exchange, transpose, EdgeKind, Model, Triangulation};

use crate::duality::{shifted_monomial_sides, duality_x, lamination_with_a_coords, pointedness, span_check};
use crate::ensemble::{a_lattice, ensemble_balanced, ensemble_q, quantum_exchange};
use crate::report::{Report, SuiteSummary};

/// Bounds and seed of the sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Total weight of non-peripheral arcs on disks.
    pub max_arcs: i64,
    /// Bound on the absolute value of peripheral weights.
    pub max_peripheral: i64,
    /// Winding bound on the annulus.
    pub max_twist: i64,
    /// Chebyshev degree bound, also the bound on total arc weight on the annulus.
    pub max_degree: i64,
    /// Parallel copies per chord in the positivity sweep.
    pub max_copies: i64,
    /// Distinct components per basis element in the positivity sweep.
    pub max_components: usize,
    /// Random sample size on the disk; the annulus uses `annulus_samples`.
    pub samples: usize,
    pub annulus_samples: usize,
    /// Disks of the positivity sweep.
    pub disks: Vec<u32>,
    /// Largest n for the annulus formulas.
    pub max_n: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2024,
            max_arcs: 2,
            max_peripheral: 1,
            max_twist: 3,
            max_degree: 3,
            max_copies: 3,
            max_components: 2,
            samples: 50,
            annulus_samples: 20,
            disks: vec![3, 4, 5, 6],
            max_n: 6,
        }
    }
}

/// Names of the suites runnable from the command line.
pub const SUITES: [&str; 6] = ["square", "trace-cut", "flip-transport", "positivity", "annulus-formulas", "allegretti"];

/// Runs a suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<SuiteSummary> {
    Some(match name {
        "square" => square_suite(cfg),
        "trace-cut" => trace_cut_suite(cfg),
        "flip-transport" => flip_transport_suite(),
        "positivity" => positivity_suite(cfg),
        "annulus-formulas" => annulus_formulas_suite(cfg),
        "allegretti" => shifted_monomial_suite(cfg),
        _ => return None,
    })
}

fn lam_json(l: &ALamination, tri: &Triangulation) -> Value {
    l.to_json(tri).map(|j| json!(j)).unwrap_or_else(|e| json!(format!("{e}")))
}

fn tri_label(tri: &Triangulation) -> Value {
    json!(format!("{:?}", tri.class_key()))
}

/// Both sides of a check, or the error that prevented it.
fn compare(check: &str, inputs: Value, sides: Result<(TorusElement, TorusElement)>) -> Report {
    match sides {
        Ok((l, r)) => Report::torus(check, inputs, &l, &r),
        Err(e) => Report::error(check, inputs, e),
    }
}

// ---- element sets ----

/// Stated components with all states `-` (negative peripheral weights use `+`).
pub fn stated_components(l: &ALamination) -> Vec<StatedComponent> {
    let mut v = vec![];
    for (c, &w) in &l.components {
        let st = if w < 0 { State::Plus } else { State::Minus };
        for _ in 0..w.abs() {
            v.push(StatedComponent { curve: *c, states: [st; 2] });
        }
    }
    v
}

/// Bracelets basis elements on `D_n`: non-peripheral arc weight at most `max_arcs`.
pub fn disk_elements(n: u32, max_arcs: i64, max_peripheral: i64) -> Vec<ALamination> {
    enumerate_a_laminations(Model::Disk(n), max_arcs, max_peripheral, 0)
}

/// Bracelets basis elements on the annulus: winding at most `max_twist`, arc weight and
/// Chebyshev degree at most `max_degree`.
pub fn annulus_elements(max_twist: i64, max_degree: i64, max_peripheral: i64) -> Vec<ALamination> {
    enumerate_a_laminations(Model::Annulus11, max_degree, max_peripheral, max_twist)
}

/// The triangulations and elements of the square and trace-cut sweeps.
pub fn square_cases(cfg: &SuiteConfig) -> Vec<(Triangulation, ALamination)> {
    let mut out = vec![];
    let disk = disk_elements(5, cfg.max_arcs, cfg.max_peripheral);
    for tri in Triangulation::all_disk_triangulations(5) {
        out.extend(disk.iter().map(|l| (tri.clone(), l.clone())));
    }
    let ann = annulus_elements(cfg.max_twist, cfg.max_degree, cfg.max_peripheral);
    for k in [-1, 0] {
        let tri = Triangulation::annulus(k);
        out.extend(ann.iter().map(|l| (tri.clone(), l.clone())));
    }
    out
}

/// Seeded congruent laminations: `samples` on the fan of D₅ and `annulus_samples` on A₁,₁.
pub fn congruent_sample(cfg: &SuiteConfig) -> Vec<(Triangulation, ALamination)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bounds = SampleBounds { max_components: 3, max_weight: 2, max_peripheral: 2, max_twist: 2 };
    let disk = Triangulation::disk_fan(5);
    let ann = Triangulation::annulus(0);
    let mut out = vec![];
    for _ in 0..cfg.samples {
        out.push((disk.clone(), random_congruent_lamination(&disk, &mut rng, &bounds)));
    }
    for _ in 0..cfg.annulus_samples {
        out.push((ann.clone(), random_congruent_lamination(&ann, &mut rng, &bounds)));
    }
    out
}

fn engines() -> (SkeinEngine, SkeinEngine) {
    (SkeinEngine::new(Model::Disk(5)), SkeinEngine::new(Model::Annulus11))
}

fn engine_for<'a>(model: Model, d5: &'a SkeinEngine, ann: &'a SkeinEngine) -> &'a SkeinEngine {
    if model == Model::Annulus11 {
        ann
    } else {
        d5
    }
}

// ---- single checks ----

/// `ensemble_q(duality_A(L))` against `duality_X(tropical_ensemble(L))`.
pub fn verify_square(engine: &SkeinEngine, l: &ALamination, tri: &Triangulation) -> Report {
    let inputs = json!({"triangulation": tri_label(tri), "lamination": lam_json(l, tri)});
    let sides = (|| {
        let lhs = ensemble_q(&duality_a(l, tri)?, tri)?;
        let rhs = duality_x(engine, &l.tropical_ensemble(), tri)?;
        Ok((lhs, rhs))
    })();
    compare("main square", inputs, sides)
}

/// `ensemble_balanced(Tr(b))` against `Cut(Φ(b))`.
pub fn verify_trace_cut(engine: &SkeinEngine, comps: &[StatedComponent], tri: &Triangulation) -> Report {
    let inputs = json!({"triangulation": tri_label(tri), "components": comps});
    let sides = (|| {
        let lhs = ensemble_balanced(&trace_stated(comps, tri)?, tri)?;
        let rhs = cut_element(engine, &phi_state_clasp(tri.model, comps)?, tri)?;
        Ok((lhs, rhs))
    })();
    compare("trace-cut square", inputs, sides)
}

/// `p*(𝕀_A(L))` against the Weyl monomial of the M-shift in a triangulation containing it.
pub fn shifted_monomial_check(l: &ALamination) -> Report {
    match shifted_monomial_sides(l) {
        Ok((tri, lhs, rhs)) => {
            let inputs = json!({"triangulation": tri_label(&tri), "lamination": lam_json(l, &tri)});
            Report::torus("shifted monomial comparison", inputs, &lhs, &rhs)
        }
        Err(e) => Report::error("shifted monomial comparison", json!(format!("{:?}", l.components)), e),
    }
}

// ---- suites ----

pub fn square_suite(cfg: &SuiteConfig) -> SuiteSummary {
    let (d5, ann) = engines();
    let cases: Vec<(Triangulation, ALamination)> = square_cases(cfg)
        .into_iter()
        .filter(|(tri, l)| l.is_congruent(tri).unwrap_or(false))
        .collect();
    let reports: Vec<Report> =
        cases.par_iter().map(|(tri, l)| verify_square(engine_for(tri.model, &d5, &ann), l, tri)).collect();
    SuiteSummary::new("square", cfg.seed, reports)
}

pub fn trace_cut_suite(cfg: &SuiteConfig) -> SuiteSummary {
    let (d5, ann) = engines();
    let cases = square_cases(cfg);
    let reports: Vec<Report> = cases
        .par_iter()
        .map(|(tri, l)| verify_trace_cut(engine_for(tri.model, &d5, &ann), &stated_components(l), tri))
        .collect();
    SuiteSummary::new("trace-cut", cfg.seed, reports)
}

pub fn shifted_monomial_suite(cfg: &SuiteConfig) -> SuiteSummary {
    let cfg = SuiteConfig { annulus_samples: 0, ..cfg.clone() };
    let reports: Vec<Report> = congruent_sample(&cfg).iter().map(|(_, l)| shifted_monomial_check(l)).collect();
    SuiteSummary::new("allegretti", cfg.seed, reports)
}

/// `Tr(γ)²` in the X-torus; squaring makes every exponent even.
fn congruent_trace(c: &LamCurve, tri: &Triangulation) -> Result<TorusElement> {
    let t = trace_curve(c, tri, [State::Minus; 2])?;
    to_congruent_x(&(&t * &t), tri)
}

/// The curves of the flip compatibility sweep on a surface.
pub fn flip_curves(model: Model) -> Vec<LamCurve> {
    let mut v = match model {
        Model::Annulus11 => curve_classes(model, 2),
        _ => curve_classes(model, 0),
    };
    let np = laminations::num_intervals(model);
    v.extend((0..np).map(LamCurve::Peripheral));
    v
}

/// Transport of traces across every flip of `tri`.
pub fn flip_transport_reports(tri: &Triangulation, curves: &[LamCurve]) -> Vec<Report> {
    let mut out = vec![];
    for kappa in tri.interior_edges() {
        let flipped = match tri.flip(kappa) {
            Ok((t, _)) => t,
            Err(e) => {
                out.push(Report::error("flip transport", json!({"flip": kappa}), e));
                continue;
            }
        };
        for c in curves {
            let inputs = json!({"triangulation": tri_label(tri), "flip": kappa, "curve": format!("{c:?}")});
            let r = (|| {
                let after = congruent_trace(c, &flipped)?;
                let before = congruent_trace(c, tri)?;
                let r = transport_x(&after, tri, kappa)?;
                Ok((r.numerator.clone(), &before * &r.denominator_product()))
            })();
            out.push(compare("flip transport", inputs, r));
        }
    }
    out
}

pub fn flip_transport_suite() -> SuiteSummary {
    let mut reports = vec![];
    for n in [4, 5] {
        let curves = flip_curves(Model::Disk(n));
        for tri in Triangulation::all_disk_triangulations(n) {
            reports.extend(flip_transport_reports(&tri, &curves));
        }
    }
    let curves = flip_curves(Model::Annulus11);
    for k in -2..=2 {
        reports.extend(flip_transport_reports(&Triangulation::annulus(k), &curves));
    }
    SuiteSummary::new("flip-transport", 0, reports)
}

/// Bracelets basis multicurves of interior curves on `D_n`.
pub fn disk_basis_multicurves(n: u32, max_copies: i64, max_components: usize) -> Vec<Multicurve> {
    let chords: Vec<Curve> = curve_classes(Model::Disk(n), 0)
        .into_iter()
        .filter_map(|c| c.m_shift(Model::Disk(n)))
        .collect();
    basis_multicurves(&chords, max_copies, max_components, i64::MAX)
}

/// Bracelets basis multicurves on the annulus within the square bounds.
pub fn annulus_basis_multicurves(max_twist: i64, max_degree: i64) -> Vec<Multicurve> {
    let mut v: Vec<Multicurve> = (1..=max_degree).map(|d| Multicurve::from_pairs([(Curve::Loop, d)])).collect();
    let spans: Vec<Curve> = (-max_twist..=max_twist).map(Curve::Span).collect();
    v.extend(basis_multicurves(&spans, max_degree, 2, max_degree));
    v
}

fn basis_multicurves(curves: &[Curve], max_copies: i64, max_components: usize, max_total: i64) -> Vec<Multicurve> {
    fn rec(
        curves: &[Curve],
        i: usize,
        cur: &mut Vec<(Curve, i64)>,
        caps: (i64, usize, i64),
        out: &mut Vec<Multicurve>,
    ) {
        if i == curves.len() {
            if !cur.is_empty() {
                out.push(Multicurve::from_pairs(cur.iter().copied()));
            }
            return;
        }
        rec(curves, i + 1, cur, caps, out);
        let c = curves[i];
        let used: i64 = cur.iter().map(|(_, k)| k).sum();
        if cur.len() < caps.1 && cur.iter().all(|(d, _)| d.intersection(&c) == 0) {
            for k in 1..=caps.0.min(caps.2 - used) {
                cur.push((c, k));
                rec(curves, i + 1, cur, caps, out);
                cur.pop();
            }
        }
    }
    let mut out = vec![];
    rec(curves, 0, &mut vec![], (max_copies, max_components, max_total), &mut out);
    out
}

/// Structure constants of all ordered pairs; only non-positive ones become failures.
pub fn positivity_reports(engine: &SkeinEngine, basis: &[Multicurve]) -> Vec<Report> {
    let pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let (b1, b2) = (&basis[i], &basis[j]);
            let inputs = json!({"surface": format!("{:?}", engine.model), "b1": b1.to_string(), "b2": b2.to_string()});
            match engine.structure_constants(b1, b2) {
                Ok(s) => {
                    let positive = s.is_positive();
                    let witness = s
                        .terms
                        .iter()
                        .find(|(_, c)| !c.is_nonnegative())
                        .map(|(m, c)| json!({"basis": m.to_string(), "scalar": c}));
                    Report::predicate("positivity", inputs, json!(s.len()), Value::Null, positive, witness)
                }
                Err(e) => Report::error("positivity", inputs, e),
            }
        })
        .collect()
}

pub fn positivity_suite(cfg: &SuiteConfig) -> SuiteSummary {
    let mut reports = vec![];
    for &n in &cfg.disks {
        let engine = SkeinEngine::new(Model::Disk(n));
        reports.extend(positivity_reports(&engine, &disk_basis_multicurves(n, cfg.max_copies, cfg.max_components)));
    }
    let engine = SkeinEngine::new(Model::Annulus11);
    reports.extend(positivity_reports(&engine, &annulus_basis_multicurves(cfg.max_twist, cfg.max_degree)));
    SuiteSummary::new("positivity", cfg.seed, reports)
}

pub fn annulus_formulas_suite(cfg: &SuiteConfig) -> SuiteSummary {
    let engine = SkeinEngine::new(Model::Annulus11);
    let mut reports = vec![];
    let skein = |check: &str, inputs: Value, l: Result<SkeinElement>, r: Result<SkeinElement>| match (l, r) {
        (Ok(l), Ok(r)) => Report::skein(check, inputs, &l, &r),
        (Err(e), _) | (_, Err(e)) => Report::error(check, inputs, e),
    };
    for n in 1..=(cfg.max_n - 1) {
        reports.push(skein("loop times arc", json!({"n": n}), loop_arc_lhs(&engine, n, 0), Ok(loop_arc_rhs(n, 0))));
    }
    for n in 1..=cfg.max_n {
        reports.push(skein("B family", json!({"n": n}), b_element(n), b_closed_form(&engine, n)));
    }
    for n in 2..=cfg.max_n {
        reports.push(skein(
            "twist product recursion",
            json!({"n": n}),
            twist_product_lhs(&engine, n),
            twist_recursion_rhs(&engine, n),
        ));
        reports.push(skein(
            "twist product closed form",
            json!({"n": n, "tail_half_exponent": recursion_tail_half_exp(n)}),
            twist_product_lhs(&engine, n),
            twist_product_rhs(&engine, n, recursion_tail_half_exp(n)),
        ));
    }
    let stated_mismatch: Vec<i64> = (2..=cfg.max_n)
        .filter(|&n| {
            match (twist_product_lhs(&engine, n), twist_product_rhs(&engine, n, stated_tail_half_exp(n))) {
                (Ok(l), Ok(r)) => l != r,
                _ => true,
            }
        })
        .collect();
    let mut s = SuiteSummary::new("annulus-formulas", cfg.seed, reports);
    if !stated_mismatch.is_empty() {
        s = s.with_note(format!(
            "tail q^(-2*ceil((n+1)/2)) disagrees with the engine for n in {stated_mismatch:?}; \
             the recursion-consistent tail q^(-2*floor(n/2)) is checked instead"
        ));
    }
    s
}

// ---- acceptance-only checks ----

/// `p*∘Tr` of the corner arcs of the triangle: the arc opposite edge `i` with states `±`
/// goes to `A_{i+1}^{∓1}`.
pub fn triangle_anchor_reports() -> Vec<Report> {
    let tri = Triangulation::triangle();
    let lat = a_lattice(&tri);
    let mut out = vec![];
    for i in 0..3usize {
        // The corner opposite edge i sits at its head's successor, point i + 2.
        let corner = LamCurve::Peripheral(((i + 2) % 3) as u32);
        for (state, sign) in [(State::Plus, -1), (State::Minus, 1)] {
            let mut want = vec![0; 3];
            want[(i + 1) % 3] = sign;
            let inputs = json!({"edge": i + 1, "state": state});
            let r = trace_curve(&corner, &tri, [state; 2])
                .and_then(|t| ensemble_balanced(&t, &tri))
                .map(|l| (l, TorusElement::monomial(&lat, want)));
            out.push(compare("triangle anchor", inputs, r));
        }
    }
    out
}

/// Matrix mutation and the compatibility identities on every triangulation of `D_n`.
pub fn matrix_reports(ns: &[u32]) -> Vec<Report> {
    let mut out = vec![];
    for &n in ns {
        for tri in Triangulation::all_disk_triangulations(n) {
            let eps = tri.exchange_matrix();
            let pi = tri.compatibility_matrix();
            let p = tri.p_matrix();
            let label = tri_label(&tri);
            for kappa in tri.interior_edges() {
                let k = tri.idx(kappa);
                let got = tri.flip(kappa).map(|(t, _)| t.exchange_matrix());
                let want = mutate_exchange(&eps, k);
                let ok = got.as_ref().map(|g| *g == want).unwrap_or(false);
                out.push(Report::predicate(
                    "matrix mutation",
                    json!({"triangulation": label, "flip": kappa}),
                    json!(got.ok()),
                    json!(want),
                    ok,
                    None,
                ));
            }
            let lhs = mat_mul(&mat_mul(&p, &pi), &transpose(&p));
            let rhs: Vec<Vec<i64>> = eps.iter().map(|r| r.iter().map(|x| -4 * x).collect()).collect();
            out.push(Report::predicate("p Pi p^T = -4 eps", json!({"triangulation": label}), json!(lhs), json!(rhs), lhs == rhs, None));
            let ep = mat_mul(&eps, &pi);
            let mut want = ep.clone();
            for (i, e) in tri.edges.iter().enumerate() {
                if e.kind == EdgeKind::Interior {
                    for (j, x) in want[i].iter_mut().enumerate() {
                        *x = if i == j { 4 } else { 0 };
                    }
                }
            }
            out.push(Report::predicate("eps Pi = 4 delta", json!({"triangulation": label}), json!(ep), json!(want), ep == want, None));
        }
    }
    out
}

/// Shear and a-coordinates from transported words against the tropical mutation formulas.
pub fn tropical_reports(cfg: &SuiteConfig, samples: usize) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7470);
    let mut out = vec![];
    for tri in [Triangulation::disk_fan(5), Triangulation::annulus(0)] {
        let eps = tri.exchange_matrix();
        for _ in 0..samples {
            let l = laminations::random_a_lamination(tri.model, &mut rng, &SampleBounds::default());
            let lp = l.tropical_ensemble();
            for kappa in tri.interior_edges() {
                let k = tri.idx(kappa);
                let inputs = json!({"triangulation": tri_label(&tri), "flip": kappa, "lamination": lam_json(&l, &tri)});
                let r = (|| -> Result<(Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>)> {
                    let (t2, _) = tri.flip(kappa)?;
                    let mut a = vec![0; tri.n()];
                    let mut x = vec![0; tri.n()];
                    for (i, v) in &lp.pinning {
                        x[t2.idx(laminations::interval_edge(&t2, *i)?)] += v;
                    }
                    for (c, w) in &l.components {
                        let moved = flip_transport_curve(&CurveWord::of_curve(c, &tri)?, &tri, kappa)?.reduce();
                        for (pos, e) in t2.edges.iter().enumerate() {
                            a[pos] += w * moved.intersection(e.id);
                        }
                        if !c.is_peripheral() {
                            for (pos, v) in word_shear(&moved, &t2)? {
                                x[pos] += w * v;
                            }
                        }
                    }
                    let want_a = tropical_mutate_a(&l.a_coords_doubled(&tri)?, k, &eps);
                    let want_x = tropical_mutate_x(&lp.shear_coords(&tri)?, k, &eps);
                    Ok((a, want_a, x, want_x))
                })();
                out.push(match r {
                    Ok((a, wa, x, wx)) => Report::predicate(
                        "tropical coordinates",
                        inputs,
                        json!({"a_doubled": a, "shear": x}),
                        json!({"a_doubled": wa, "shear": wx}),
                        a == wa && x == wx,
                        None,
                    ),
                    Err(e) => Report::error("tropical coordinates", inputs, e),
                });
            }
        }
    }
    out
}

/// Lowest term of `duality_A`: pointed at `-a(L)` with coefficient exactly one.
pub fn lowest_term_report(l: &ALamination, tri: &Triangulation) -> Report {
    let inputs = json!({"triangulation": tri_label(tri), "lamination": lam_json(l, tri)});
    let r = (|| -> Result<(Value, Value, bool)> {
        let x = duality_a(l, tri)?;
        let all: Vec<usize> = (0..tri.n()).collect();
        let (_, m) = pointed_normalize(&x, &all)?;
        let a = l.a_coords(tri)?.unwrap_or_default();
        let want: Vec<i64> = a.iter().map(|v| -v).collect();
        let ok = m == want && x.coeff(&m).is_one();
        Ok((json!({"lowest": m, "coefficient": x.coeff(&m)}), json!({"lowest": want, "coefficient": [[0, 1]]}), ok))
    })();
    match r {
        Ok((l, r, ok)) => Report::predicate("lowest term", inputs, l, r, ok, None),
        Err(e) => Report::error("lowest term", inputs, e),
    }
}

/// Pointedness of `duality_X` at the shear coordinates.
pub fn pointedness_report(engine: &SkeinEngine, lp: &PLamination, tri: &Triangulation) -> Report {
    let inputs = json!({"triangulation": tri_label(tri), "lamination": lp.to_json(tri).map(|j| json!(j)).unwrap_or(Value::Null)});
    let r = (|| -> Result<Report> {
        let y = duality_x(engine, lp, tri)?;
        let m = lp.shear_coords(tri)?;
        let p = pointedness(&y, tri, &m);
        let witness = if p.holds() { None } else { Some(json!({"leading_coefficient": p.leading_coeff})) };
        Ok(Report::predicate(
            "pointedness",
            inputs.clone(),
            json!({"leading": m, "offsets": p.offsets}),
            json!({"polynomial": p.polynomial, "leading_coefficient": p.leading_coeff}),
            p.holds(),
            witness,
        ))
    })();
    r.unwrap_or_else(|e| Report::error("pointedness", inputs, e))
}

pub fn lowest_term_reports(cfg: &SuiteConfig) -> Vec<Report> {
    congruent_sample(cfg).iter().map(|(tri, l)| lowest_term_report(l, tri)).collect()
}

pub fn pointedness_reports(cfg: &SuiteConfig) -> Vec<Report> {
    let (d5, ann) = engines();
    congruent_sample(cfg)
        .iter()
        .map(|(tri, l)| pointedness_report(engine_for(tri.model, &d5, &ann), &l.tropical_ensemble(), tri))
        .collect()
}

/// `quantum_exchange(tri, κ) = Cut(κ')` on every triangulation of `D_n`.
pub fn ptolemy_reports(ns: &[u32]) -> Vec<Report> {
    let mut out = vec![];
    for &n in ns {
        let engine = SkeinEngine::new(Model::Disk(n));
        for tri in Triangulation::all_disk_triangulations(n) {
            for kappa in tri.interior_edges() {
                let inputs = json!({"triangulation": tri_label(&tri), "flip": kappa});
                let r = (|| {
                    let (t2, receipt) = tri.flip(kappa)?;
                    let curve = Curve::from_edge_class(t2.edge(receipt.new).class)
                        .ok_or_else(|| quantum_torus::Error::Input("flipped edge has no curve".into()))?;
                    let rhs = cut(&engine, &Multicurve::single(curve), &tri)?;
                    Ok((quantum_exchange(&tri, kappa)?, rhs))
                })();
                out.push(compare("quantum exchange", inputs, r));
            }
        }
    }
    out
}

/// Independence and spanning of `duality_A` images on the fan of D₄ over congruent
/// laminations with `0 ≤ a_α ≤ bound`.
///
/// Leading exponents met while expanding a product are matched by solving for the
/// lamination with those a-coordinates.
pub fn spanning_report(bound: i64) -> Report {
    let tri = Triangulation::disk_fan(4);
    let inputs = json!({"triangulation": tri_label(&tri), "bound": bound});
    let mut family = vec![];
    let mut family_json = vec![];
    for l in enumerate_a_laminations(Model::Disk(4), 2 * bound, 2 * bound, 0) {
        let a = match l.a_coords(&tri) {
            Ok(Some(a)) if a.iter().all(|v| (0..=bound).contains(v)) => a,
            _ => continue,
        };
        match duality_a(&l, &tri) {
            Ok(x) => family.push((a.iter().map(|v| -v).collect::<Vec<i64>>(), x)),
            Err(e) => return Report::error("spanning", inputs, e),
        }
        family_json.push(json!(a));
    }
    let mut cache: BTreeMap<Vec<i64>, Option<TorusElement>> = BTreeMap::new();
    let pool = |m: &[i64]| -> Option<TorusElement> {
        cache
            .entry(m.to_vec())
            .or_insert_with(|| {
                let a: Vec<i64> = m.iter().map(|v| -v).collect();
                lamination_with_a_coords(&tri, &a).and_then(|l| duality_a(&l, &tri).ok())
            })
            .clone()
    };
    let weight = vec![1; tri.n()];
    let s = span_check(&family, pool, &weight);
    let witness = s
        .unexpanded
        .first()
        .map(|(i, j, m)| json!({"product": [family_json[*i], family_json[*j]], "unmatched": m}));
    Report::predicate(
        "spanning",
        inputs,
        json!({"elements": s.elements, "products": s.products, "distinct_leading": s.distinct_leading}),
        json!({"unexpanded": s.unexpanded.len()}),
        s.holds(),
        witness,
    )
}
