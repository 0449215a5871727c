//! Named verification suites. Each suite counts the individual checks it
//! performs and lists every one that fails.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{decompose, Decomposition};
use crate::catalog::{free_parameters, generator, GeneratorId, SymmetryClass};
use crate::error::Result;
use crate::flow::{closed_flow, grid, group_law_residual, invariance_residual, oracle_discrepancy, FlowSpec, DEFAULT_ORACLE_TOL, GRID_PARAM, GRID_Q};
use crate::hard_sphere::{inverse_ft_radial, kernel_matrix, kr_weights, mayer_bond, step_hat, RadialQuadrature};
use crate::jeffrey::jeffrey_identities;
use crate::mat4::{bilinear, symmetric_eigenvalues, Mat4, NumericMat4, NumericVec4};
use crate::printed::{flow_errata, FlowErratum};
use crate::reference::{verify_reference_tables, CellMismatch};
use crate::ring::RingElem;

use GeneratorId::*;

pub const TRIPLETS: [[GeneratorId; 3]; 3] = [[F1, F2, F3], [H1, H2, F3p], [P0, P3, P3p]];

/// Isometric pairs from different families: four boost pairs, the rotation
/// pair, and four rotation-boost pairs.
pub const CROSS_FAMILY_PAIRS: [(GeneratorId, GeneratorId); 9] =
    [(B0, B0p), (B0, B1), (B0p, B2), (B1, B2), (D1, D2), (B0, D1), (B1, D2), (B2, D1), (B0p, D2)];

pub const MAYER_RADII: [f64; 3] = [0.3, 1.0, 2.7];
pub const MAYER_Q: [f64; 5] = [0.01, 0.5, 1.0, PI, 10.0];

/// (r, expected value) pairs for the inverse transform of the unit step.
pub const RADIAL_SPOTS: [(f64, f64); 4] = [(0.0, 1.0), (0.5, 1.0), (1.5, 0.0), (2.0, 0.0)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Tables,
    Symmetry,
    Metric,
    Lie,
    Flows,
    Fmt,
    Jeffrey,
}

impl Suite {
    pub const ALL: [Suite; 7] = [Suite::Tables, Suite::Symmetry, Suite::Metric, Suite::Lie, Suite::Flows, Suite::Fmt, Suite::Jeffrey];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Symmetry => "symmetry",
            Suite::Metric => "metric",
            Suite::Lie => "lie",
            Suite::Flows => "flows",
            Suite::Fmt => "fmt",
            Suite::Jeffrey => "jeffrey",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub mismatches: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: 0, mismatches: Vec::new() }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({} checks, {} mismatches)", self.suite, status, self.checks, self.mismatches.len())
    }
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    match suite {
        Suite::Tables => tables_suite(),
        Suite::Symmetry => Ok(symmetry_suite()),
        Suite::Metric => Ok(metric_suite()),
        Suite::Lie => lie_suite(),
        Suite::Flows => flows_suite(),
        Suite::Fmt => fmt_suite(),
        Suite::Jeffrey => jeffrey_suite(),
    }
}

pub fn run_all() -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(run_suite).collect()
}

fn tables_suite() -> Result<SuiteReport> {
    let diff = verify_reference_tables()?;
    let mut report = SuiteReport::new(Suite::Tables);
    report.checks = diff.cells_checked();
    report.mismatches = diff.mismatches().map(ToString::to_string).collect();
    Ok(report)
}

fn symmetry_suite() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Symmetry);
    for id in GeneratorId::ISOMETRIC {
        let x = generator(id);
        report.check(x.counter_transpose() == -x, || format!("{id}: M·Xᵗ·M ≠ −X"));
    }
    for id in GeneratorId::METAMORPHIC {
        let x = generator(id);
        report.check(&x.counter_transpose() == x, || format!("{id}: M·Xᵗ·M ≠ X"));
    }
    for (class, want) in [(SymmetryClass::Isometric, 6), (SymmetryClass::Metamorphic, 10)] {
        let got = free_parameters(class);
        report.check(got == want, || format!("{class:?} subspace has dimension {got}, expected {want}"));
    }
    report
}

fn metric_suite() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Metric);
    let m = Mat4::metric();
    report.check(&m * &m == Mat4::identity(), || "M² ≠ 1".into());
    let ev = metric_eigenvalues();
    for (got, want) in ev.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
        report.check((got - want).abs() <= 1e-12, || format!("eigenvalue {got} ≠ {want}"));
    }
    report
}

/// Eigenvalues of the metric, ascending.
pub fn metric_eigenvalues() -> [f64; 4] {
    let mut ev = symmetric_eigenvalues(&NumericMat4::metric());
    ev.sort_by(f64::total_cmp);
    ev
}

/// [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]].
pub fn jacobi_sum(x: &Mat4, y: &Mat4, z: &Mat4) -> Mat4 {
    let a = x.commutator(&y.commutator(z));
    let b = y.commutator(&z.commutator(x));
    let c = z.commutator(&x.commutator(y));
    &(&a + &b) + &c
}

pub fn generator_triples() -> Vec<[GeneratorId; 3]> {
    let ids = &GeneratorId::BASIS[1..];
    let mut out = Vec::new();
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            for k in j + 1..ids.len() {
                out.push([ids[i], ids[j], ids[k]]);
            }
        }
    }
    out
}

/// Why the commutator of two generators breaks closure, if it does: support
/// on One, a coefficient that is not a single monomial, or, for two
/// metamorphic generators, anything but a multiple of one isometric generator.
pub fn closure_violation(a: GeneratorId, b: GeneratorId) -> Result<Option<String>> {
    let d = decompose(&generator(a).commutator(generator(b)))?;
    if !d.get(One).is_zero() {
        return Ok(Some(format!("[{a},{b}] has a One component")));
    }
    if let Some((id, c)) = d.iter().find(|(_, c)| c.as_monomial().is_none()) {
        return Ok(Some(format!("[{a},{b}] coefficient of {id} is {c}, not a monomial")));
    }
    let both_meta = GeneratorId::METAMORPHIC.contains(&a) && GeneratorId::METAMORPHIC.contains(&b);
    if both_meta && !d.is_zero() {
        let single_iso = d.len() == 1 && d.iter().all(|(id, _)| GeneratorId::ISOMETRIC.contains(&id));
        if !single_iso {
            return Ok(Some(format!("[{a},{b}] = {d} is not a multiple of one isometric generator")));
        }
    }
    Ok(None)
}

/// Random element of the span: each basis id gets, with probability 1/2, a
/// coefficient ±n/d·q^k·π^l.
pub fn random_decomposition(rng: &mut impl Rng) -> Decomposition {
    GeneratorId::BASIS
        .into_iter()
        .filter_map(|id| {
            if !rng.gen_bool(0.5) {
                return None;
            }
            let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let c = RingElem::term(num, rng.gen_range(1..=9), rng.gen_range(-6..=6), rng.gen_range(-2..=2));
            Some((id, c))
        })
        .collect()
}

pub const ROUNDTRIP_SEED: u64 = 20_260_101;

fn lie_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lie);
    for [x, y, z] in generator_triples() {
        let ok = jacobi_sum(generator(x), generator(y), generator(z)).is_zero();
        report.check(ok, || format!("Jacobi identity fails for ({x}, {y}, {z})"));
    }
    let ids = &GeneratorId::BASIS[1..];
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let violation = closure_violation(a, b)?;
            report.check(violation.is_none(), || violation.clone().unwrap_or_default());
        }
    }
    for triplet in TRIPLETS {
        for i in 0..3 {
            for j in i + 1..3 {
                let (a, b) = (triplet[i], triplet[j]);
                report.check(generator(a).commutator(generator(b)).is_zero(), || format!("[{a},{b}] ≠ 0"));
            }
        }
    }
    for (a, b) in CROSS_FAMILY_PAIRS {
        report.check(generator(a).commutator(generator(b)).is_zero(), || format!("[{a},{b}] ≠ 0"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ROUNDTRIP_SEED);
    for n in 0..100 {
        let d = random_decomposition(&mut rng);
        let back = decompose(&d.reconstruct())?;
        report.check(back == d, || format!("roundtrip {n}: {d} came back as {back}"));
    }
    Ok(report)
}

/// Largest invariance residual of the flow of `id` over the standard grid,
/// with the (q, param) where it occurs.
pub fn worst_invariance(id: GeneratorId) -> Result<(f64, f64, f64)> {
    let mut worst = (0.0, 0.0, 0.0);
    for (q, p) in grid() {
        let r = invariance_residual(&closed_flow(&FlowSpec::new(id, p, q))?);
        if r > worst.0 || r.is_nan() {
            worst = (r, q, p);
        }
    }
    Ok(worst)
}

/// Largest closed-form vs series discrepancy of `id` over the standard grid.
pub fn worst_oracle_discrepancy(id: GeneratorId) -> Result<(f64, f64, f64)> {
    let mut worst = (0.0, 0.0, 0.0);
    for (q, p) in grid() {
        let d = oracle_discrepancy(&FlowSpec::new(id, p, q), DEFAULT_ORACLE_TOL)?;
        if d > worst.0 || d.is_nan() {
            worst = (d, q, p);
        }
    }
    Ok(worst)
}

pub const SCALAR_PRODUCT_SEED: u64 = 4;

fn flows_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Flows);
    for id in GeneratorId::ALL {
        for (q, p) in grid() {
            let d = oracle_discrepancy(&FlowSpec::new(id, p, q), DEFAULT_ORACLE_TOL)?;
            report.check(d <= 1e-9, || format!("exp(param*{id}) at q={q}, param={p}: closed form and series differ by {d:.3e} (relative)"));
        }
    }
    for id in GeneratorId::ISOMETRIC {
        for (q, p) in grid() {
            let r = invariance_residual(&closed_flow(&FlowSpec::new(id, p, q))?);
            report.check(r <= 1e-11, || format!("exp(param*{id}) at q={q}, param={p}: invariance residual {r:.3e}"));
        }
    }
    for id in GeneratorId::ALL.into_iter().filter(|id| !GeneratorId::ISOMETRIC.contains(id)) {
        let (r, _, _) = worst_invariance(id)?;
        report.check(r > 0.1, || format!("exp(param*{id}) never changes the metric by more than 0.1 (max {r:.3e})"));
    }
    for id in GeneratorId::ISOMETRIC {
        for (q, p) in grid() {
            let det = closed_flow(&FlowSpec::new(id, p, q))?.det();
            report.check((det - 1.0).abs() <= 1e-10, || format!("det exp(param*{id}) at q={q}, param={p} is {det:.6e}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SCALAR_PRODUCT_SEED);
    for id in GeneratorId::ISOMETRIC {
        for (q, p) in grid() {
            let a = closed_flow(&FlowSpec::new(id, p, q))?;
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let u = NumericVec4(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                let v = NumericVec4(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
                let before = bilinear(&u, &v);
                let after = bilinear(&a.apply(&u), &a.apply(&v));
                worst = worst.max((after - before).abs() / (1.0 + before.abs()));
            }
            report.check(worst <= 1e-10, || format!("exp(param*{id}) at q={q}, param={p} changes scalar products by {worst:.3e}"));
        }
    }
    for q in GRID_Q {
        for mu in 0..4 {
            for nu in mu + 1..4 {
                for pm in GRID_PARAM {
                    for pn in GRID_PARAM {
                        let a = closed_flow(&FlowSpec::new(GeneratorId::JEFFREY[mu], pm, q))?;
                        let b = closed_flow(&FlowSpec::new(GeneratorId::JEFFREY[nu], pn, q))?;
                        let d = (&a * &b).max_abs_diff(&(&b * &a));
                        report.check(d <= 1e-10, || format!("exp(t{mu}) and exp(t{nu}) at q={q} ({pm}, {pn}) fail to commute by {d:.3e}"));
                    }
                }
            }
        }
    }
    for (id, p1, p2, q) in [(B2, 0.3, 0.4, 1.1), (T1, 0.8, 0.5, 0.7)] {
        let r = group_law_residual(id, p1, p2, q)?;
        report.check(r <= 1e-11, || format!("group law for {id} at ({p1}, {p2}, q={q}) off by {r:.3e}"));
    }
    let errata = flow_errata()?;
    let only_b2 = errata.len() == 1 && (errata[0].gen, errata[0].row, errata[0].col) == (B2, 3, 1);
    report.check(only_b2, || {
        let found: Vec<String> = errata.iter().map(|e| format!("{} ({}, {})", e.gen, e.row, e.col)).collect();
        format!("printed-form errata are [{}], expected only B2 (3, 1)", found.join(", "))
    });
    Ok(report)
}

/// Max-norm difference K_R·K_R' − K_{R+R'}, relative to 1 + ‖K_{R+R'}‖.
pub fn kernel_additivity_error(r1: f64, r2: f64, q: f64) -> Result<f64> {
    let a = kernel_matrix(r1, q)?;
    let b = kernel_matrix(r2, q)?;
    let ab = kernel_matrix(r1 + r2, q)?;
    Ok((&a * &b).max_abs_diff(&ab) / (1.0 + ab.max_norm()))
}

/// Max-norm of K_R·K_R' − K_R'·K_R, relative to 1 + ‖K_{R+R'}‖.
pub fn kernel_commutation_error(r1: f64, r2: f64, q: f64) -> Result<f64> {
    let a = kernel_matrix(r1, q)?;
    let b = kernel_matrix(r2, q)?;
    let scale = 1.0 + kernel_matrix(r1 + r2, q)?.max_norm();
    Ok((&a * &b).max_abs_diff(&(&b * &a)) / scale)
}

fn fmt_suite() -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Fmt);
    for q in MAYER_Q {
        for ra in MAYER_RADII {
            for rb in MAYER_RADII {
                let m = mayer_bond(ra, rb, q)?;
                let s = step_hat(ra + rb, q)?;
                let err = (m - s).abs() / (1.0 + s.abs());
                report.check(err <= 1e-10, || format!("Mayer identity at Ra={ra}, Rb={rb}, q={q}: error {err:.3e}"));

                let add = kernel_additivity_error(ra, rb, q)?;
                report.check(add <= 1e-11, || format!("K_R K_R' ≠ K_(R+R') at R={ra}, R'={rb}, q={q}: {add:.3e}"));
                let com = kernel_commutation_error(ra, rb, q)?;
                report.check(com <= 1e-11, || format!("K_R and K_R' fail to commute at R={ra}, R'={rb}, q={q}: {com:.3e}"));
            }
            let k = kernel_matrix(ra, q)?;
            let w = kr_weights(ra, q)?.to_vec4();
            let err = (0..4).map(|i| (k.0[i][0] - w.0[i]).abs()).fold(0.0, f64::max);
            report.check(err <= 1e-12, || format!("kernel column 0 ≠ weights at R={ra}, q={q}: {err:.3e}"));
        }
    }
    for ra in MAYER_RADII {
        for rb in MAYER_RADII {
            let m = mayer_bond(ra, rb, 1e-6)?;
            let v = 4.0 * PI * (ra + rb).powi(3) / 3.0;
            let err = (m - v).abs() / v;
            report.check(err <= 1e-8, || format!("q→0 Mayer limit at Ra={ra}, Rb={rb}: relative error {err:.3e}"));
        }
    }
    let unit_step = |q: f64| step_hat(1.0, q).unwrap_or(f64::NAN);
    let quad = RadialQuadrature::default();
    for (r, want) in RADIAL_SPOTS {
        let f = inverse_ft_radial(unit_step, r, &quad)?;
        report.check((f - want).abs() <= 5e-3, || format!("inverse transform of the unit step at r={r} is {f:.6}, expected {want}"));
    }
    Ok(report)
}

fn jeffrey_suite() -> Result<SuiteReport> {
    let identities = jeffrey_identities()?;
    let mut report = SuiteReport::new(Suite::Jeffrey);
    for c in identities.checks {
        report.check(c.holds, || format!("{} does not hold", c.name));
    }
    Ok(report)
}

/// Every place where a published table cell or printed finite transform
/// disagrees with what the generator matrices imply.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrataReport {
    pub flows: Vec<FlowErratum>,
    pub tables: Vec<CellMismatch>,
}

pub fn errata_report() -> Result<ErrataReport> {
    let tables = verify_reference_tables()?.mismatches().cloned().collect();
    Ok(ErrataReport { flows: flow_errata()?, tables })
}

impl fmt::Display for ErrataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "printed finite transforms ({}):", self.flows.len())?;
        for e in &self.flows {
            writeln!(f, "  {e}")?;
        }
        writeln!(f, "structure table cells ({}):", self.tables.len())?;
        for m in &self.tables {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}
