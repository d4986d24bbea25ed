//! Sweeps that check the closed-form criteria against brute-force linear
//! algebra and orbit enumeration over a grid of `(r, s, δ, p)`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blocks::{balanced_subs, block_partition, is_balanced, is_semisimple, minimal_balanced_weight, AlgebraParams};
use crate::cell::{
    cell_dim, halverson_multiplicity, hom_space_dim_in, restriction_dim_check, CellLabel, CellModule, Side,
    DEFAULT_CELL_BOUND,
};
use crate::combinatorics::{factorial, removable_boxes, specht_dim, Bipartition};
use crate::diagram::{enumerate_basis, WalledDiagram, DEFAULT_BASIS_BOUND};
use crate::error::{Error, Result};
use crate::geometry::{bfs_bound, bfs_orbit, same_w_orbit, same_wp_orbit, to_weight, GeometryContext, Weight};
use crate::scalar::{DeltaValue, ScalarContext};

pub const REPORT_FORMAT: &str = "wbrauer-verify/1";
pub const DEFAULT_SEED: u64 = 0x5eed_2008;

/// Largest `r + s` each suite accepts.
const COMBINATORIAL_BOUND: usize = 12;
const ORBIT_BOUND: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Dims,
    Assoc,
    Semisimple,
    Keyscalar,
    Twobox,
    BalancedOrbit,
    Minimal,
    Combwp,
    Halverson,
    Restriction,
    Homstab,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Dims,
        Suite::Assoc,
        Suite::Semisimple,
        Suite::Keyscalar,
        Suite::Twobox,
        Suite::BalancedOrbit,
        Suite::Minimal,
        Suite::Combwp,
        Suite::Halverson,
        Suite::Restriction,
        Suite::Homstab,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Dims => "dims",
            Suite::Assoc => "assoc",
            Suite::Semisimple => "semisimple",
            Suite::Keyscalar => "keyscalar",
            Suite::Twobox => "twobox",
            Suite::BalancedOrbit => "balanced-orbit",
            Suite::Minimal => "minimal",
            Suite::Combwp => "combwp",
            Suite::Halverson => "halverson",
            Suite::Restriction => "restriction",
            Suite::Homstab => "homstab",
        }
    }

    /// Whether the suite's grid includes `δ` and `p`.
    fn uses_delta(&self) -> bool {
        matches!(
            self,
            Suite::Semisimple | Suite::Twobox | Suite::BalancedOrbit | Suite::Minimal | Suite::Combwp | Suite::Homstab
        )
    }

    fn max_total(&self) -> usize {
        match self {
            Suite::Dims | Suite::Assoc => DEFAULT_BASIS_BOUND,
            Suite::Semisimple | Suite::Keyscalar | Suite::Twobox => DEFAULT_CELL_BOUND,
            Suite::Homstab => DEFAULT_CELL_BOUND - 2,
            Suite::Combwp => ORBIT_BOUND,
            Suite::BalancedOrbit | Suite::Minimal | Suite::Halverson | Suite::Restriction => COMBINATORIAL_BOUND,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// What to run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub suites: Vec<Suite>,
    pub r_range: (usize, usize),
    pub s_range: (usize, usize),
    /// Optional cap on `r + s`.
    pub total_max: Option<usize>,
    pub deltas: Vec<DeltaValue>,
    pub primes: Vec<u64>,
    pub seed: u64,
    /// Random diagram triples per point for `assoc`.
    pub samples: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            r_range: (0, 2),
            s_range: (0, 2),
            total_max: None,
            deltas: vec![DeltaValue::Integer(0)],
            primes: vec![0],
            seed: DEFAULT_SEED,
            samples: 32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub r: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, s={}", self.r, self.s)?;
        if let Some(d) = &self.delta {
            write!(f, ", δ={d}")?;
        }
        if let Some(p) = self.p {
            write!(f, ", p={p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The point could not be evaluated (bound exceeded, invalid parameters).
    Error,
    /// The suite does not apply at this point.
    Skipped,
}

/// Outcome at one grid point. When something fails, `case`, `expected` and
/// `computed` describe the first failing case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub suite: Suite,
    pub point: GridPoint,
    pub checks: usize,
    pub failures: usize,
    pub verdict: Verdict,
    pub case: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub points: usize,
    pub checks: usize,
    pub failures: usize,
    pub errors: usize,
    /// Smallest grid point with a failure or error.
    pub first_failure: Option<GridPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub format: String,
    pub seed: u64,
    pub spec: SweepSpec,
    pub passed: bool,
    pub summary: Vec<SuiteSummary>,
    pub records: Vec<CheckRecord>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per record; the JSON form is authoritative.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "r", "s", "delta", "p", "checks", "failures", "verdict", "case", "expected", "computed"])
            .expect("in-memory write");
        for rec in &self.records {
            let verdict = serde_json::to_value(rec.verdict).expect("verdict serializes");
            w.write_record([
                rec.suite.name().to_string(),
                rec.point.r.to_string(),
                rec.point.s.to_string(),
                rec.point.delta.as_ref().map(|d| d.to_string()).unwrap_or_default(),
                rec.point.p.map(|p| p.to_string()).unwrap_or_default(),
                rec.checks.to_string(),
                rec.failures.to_string(),
                verdict.as_str().unwrap_or_default().to_string(),
                rec.case.clone(),
                rec.expected.clone(),
                rec.computed.clone(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
    first: Option<(String, String, String)>,
}

impl Tally {
    fn check(&mut self, ok: bool, case: impl FnOnce() -> String, expected: impl fmt::Display, computed: impl fmt::Display) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some((case(), expected.to_string(), computed.to_string()));
            }
        }
    }
}

enum Outcome {
    Done(Tally),
    Skip(String),
}

fn grid(spec: &SweepSpec, suite: Suite) -> Vec<GridPoint> {
    let mut out = Vec::new();
    for r in spec.r_range.0..=spec.r_range.1 {
        for s in spec.s_range.0..=spec.s_range.1 {
            if spec.total_max.is_some_and(|m| r + s > m) {
                continue;
            }
            if suite.uses_delta() {
                for d in &spec.deltas {
                    for &p in &spec.primes {
                        out.push(GridPoint {
                            r,
                            s,
                            delta: Some(d.clone()),
                            p: Some(p),
                        });
                    }
                }
            } else {
                out.push(GridPoint { r, s, delta: None, p: None });
            }
        }
    }
    out
}

/// Runs every selected suite. Grid points are evaluated in parallel and
/// reported in grid order.
pub fn run_suite(spec: &SweepSpec) -> VerifyReport {
    let mut records = Vec::new();
    let mut summary = Vec::new();
    for &suite in &spec.suites {
        let points = grid(spec, suite);
        let recs: Vec<CheckRecord> = points.par_iter().map(|pt| evaluate(suite, pt, spec)).collect();
        let first_failure = recs
            .iter()
            .find(|r| matches!(r.verdict, Verdict::Fail | Verdict::Error))
            .map(|r| r.point.clone());
        summary.push(SuiteSummary {
            suite,
            points: recs.len(),
            checks: recs.iter().map(|r| r.checks).sum(),
            failures: recs.iter().map(|r| r.failures).sum(),
            errors: recs.iter().filter(|r| r.verdict == Verdict::Error).count(),
            first_failure,
        });
        records.extend(recs);
    }
    let passed = summary.iter().all(|s| s.failures == 0 && s.errors == 0);
    VerifyReport {
        format: REPORT_FORMAT.into(),
        seed: spec.seed,
        spec: spec.clone(),
        passed,
        summary,
        records,
    }
}

fn evaluate(suite: Suite, pt: &GridPoint, spec: &SweepSpec) -> CheckRecord {
    let record = |verdict, checks, failures, case: String, expected: String, computed: String| CheckRecord {
        suite,
        point: pt.clone(),
        checks,
        failures,
        verdict,
        case,
        expected,
        computed,
    };
    if pt.r + pt.s > suite.max_total() {
        let e = Error::BoundExceeded {
            what: "r + s",
            value: pt.r + pt.s,
            bound: suite.max_total(),
        };
        return record(Verdict::Error, 0, 0, e.to_string(), String::new(), String::new());
    }
    if pt.delta == Some(DeltaValue::Symbolic) && pt.p.is_some_and(|p| p > 0) {
        let why = "symbolic δ needs characteristic 0".to_string();
        return record(Verdict::Skipped, 0, 0, why, String::new(), String::new());
    }
    let outcome = match suite {
        Suite::Dims => dims(pt),
        Suite::Assoc => assoc(pt, spec),
        Suite::Semisimple => semisimple(pt),
        Suite::Keyscalar => keyscalar(pt),
        Suite::Twobox => twobox(pt),
        Suite::BalancedOrbit => balanced_orbit(pt),
        Suite::Minimal => minimal(pt),
        Suite::Combwp => combwp(pt),
        Suite::Halverson => halverson(pt),
        Suite::Restriction => restriction(pt),
        Suite::Homstab => homstab(pt),
    };
    match outcome {
        Ok(Outcome::Done(t)) => {
            let verdict = if t.failures == 0 { Verdict::Pass } else { Verdict::Fail };
            let (case, expected, computed) = t
                .first
                .unwrap_or_else(|| (format!("all {} cases", t.checks), String::new(), String::new()));
            record(verdict, t.checks, t.failures, case, expected, computed)
        }
        Ok(Outcome::Skip(why)) => record(Verdict::Skipped, 0, 0, why, String::new(), String::new()),
        Err(e) => record(Verdict::Error, 0, 0, e.to_string(), String::new(), String::new()),
    }
}

fn params(pt: &GridPoint) -> Result<AlgebraParams> {
    AlgebraParams::new(pt.r, pt.s, pt.delta.clone().expect("δ grid"), pt.p.expect("p grid"))
}

/// Integer `δ` for suites that need one (reduced mod `p` when `p > 0`).
fn integral(pt: &GridPoint) -> Result<Option<i64>> {
    Ok(params(pt)?.integral_delta())
}

fn dims(pt: &GridPoint) -> Result<Outcome> {
    let mut t = Tally::default();
    let n = enumerate_basis(pt.r, pt.s)?.len() as u64;
    let want = factorial(pt.r + pt.s);
    t.check(n == want, || "basis size".into(), want, n);
    Ok(Outcome::Done(t))
}

fn point_seed(seed: u64, r: usize, s: usize) -> u64 {
    seed ^ ((r as u64) << 32 | s as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn assoc(pt: &GridPoint, spec: &SweepSpec) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(point_seed(spec.seed, pt.r, pt.s));
    let mut t = Tally::default();
    for _ in 0..spec.samples {
        let a = WalledDiagram::random(pt.r, pt.s, &mut rng);
        let b = WalledDiagram::random(pt.r, pt.s, &mut rng);
        let c = WalledDiagram::random(pt.r, pt.s, &mut rng);
        let (l1, ab) = a.multiply(&b)?;
        let (l2, left) = ab.multiply(&c)?;
        let (l3, bc) = b.multiply(&c)?;
        let (l4, right) = a.multiply(&bc)?;
        t.check(
            l1 + l2 == l3 + l4 && left == right,
            || format!("a={} b={} c={}", json(&a), json(&b), json(&c)),
            format!("δ^{} {}", l1 + l2, json(&left)),
            format!("δ^{} {}", l3 + l4, json(&right)),
        );
        // the involution reverses products
        let (l5, rev) = c.involution().multiply(&b.involution())?;
        t.check(
            l5 == l3 && rev == bc.involution(),
            || format!("b={} c={}", json(&b), json(&c)),
            format!("δ^{l3} {}", json(&bc.involution())),
            format!("δ^{l5} {}", json(&rev)),
        );
    }
    Ok(Outcome::Done(t))
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializes")
}

/// Whether the Gram determinant of every cell module is nonzero at the point.
fn all_grams_nonzero(pt: &GridPoint) -> Result<(bool, String)> {
    let delta = pt.delta.clone().expect("δ grid");
    let p = pt.p.expect("p grid");
    let ctx = ScalarContext::new(&delta, p)?;
    for label in CellLabel::all(pt.r, pt.s) {
        let det = CellModule::build(&label)?.gram_det();
        let nonzero = match &ctx {
            ScalarContext::Symbolic => !det.is_zero(),
            ScalarContext::Rational(_) => !det.eval_rational(&delta.as_rational().expect("rational")).is_zero(),
            ScalarContext::Prime(f) => {
                let x = params(pt)?.integral_delta().expect("residue").rem_euclid(f.modulus() as i64) as u64;
                det.eval_mod(x, f.modulus()) != 0
            }
        };
        if !nonzero {
            return Ok((false, format!("det G {label} = {det}")));
        }
    }
    Ok((true, "all nonzero".into()))
}

fn semisimple(pt: &GridPoint) -> Result<Outcome> {
    let v = is_semisimple(&params(pt)?);
    let (grams, why) = all_grams_nonzero(pt)?;
    let mut t = Tally::default();
    t.check(
        v.semisimple == grams,
        || why.clone(),
        format!("semisimple={} ({})", v.semisimple, v.clause.as_str()),
        format!("gram nondegenerate={grams}"),
    );
    Ok(Outcome::Done(t))
}

fn keyscalar(pt: &GridPoint) -> Result<Outcome> {
    let mut t = Tally::default();
    for label in CellLabel::all(pt.r, pt.s) {
        let m = CellModule::build(&label)?;
        let (lhs, rhs) = (m.t_element_matrix(), m.t_element_rhs());
        t.check(lhs == rhs, || label.to_string(), "T acts as the key scalar", "mismatch");
    }
    Ok(Outcome::Done(t))
}

/// Cell modules built once per point.
struct ModuleCache(HashMap<CellLabel, CellModule>);

impl ModuleCache {
    fn new() -> Self {
        Self(HashMap::new())
    }

    fn get(&mut self, label: &CellLabel) -> Result<&CellModule> {
        if !self.0.contains_key(label) {
            self.0.insert(label.clone(), CellModule::build(label)?);
        }
        Ok(&self.0[label])
    }

    fn hom(&mut self, ctx: &ScalarContext, a: &CellLabel, b: &CellLabel) -> Result<usize> {
        self.get(a)?;
        self.get(b)?;
        hom_space_dim_in(ctx, &self.0[a], &self.0[b])
    }
}

fn concrete_field(pt: &GridPoint) -> Result<std::result::Result<ScalarContext, String>> {
    let delta = pt.delta.clone().expect("δ grid");
    if delta == DeltaValue::Symbolic {
        return Ok(Err("needs a value for δ".into()));
    }
    Ok(Ok(ScalarContext::new(&delta, pt.p.expect("p grid"))?))
}

fn twobox(pt: &GridPoint) -> Result<Outcome> {
    let prm = params(pt)?;
    if !prm.sigma_semisimple() {
        return Ok(Outcome::Skip("not Σ-semisimple".into()));
    }
    let ctx = match concrete_field(pt)? {
        Ok(c) => c,
        Err(why) => return Ok(Outcome::Skip(why)),
    };
    let delta = pt.delta.clone().expect("δ grid");
    let mut cache = ModuleCache::new();
    let mut t = Tally::default();
    for lam in CellLabel::all(pt.r, pt.s) {
        for bl in removable_boxes(lam.left()) {
            for br in removable_boxes(lam.right()) {
                let mu = CellLabel::new(
                    pt.r,
                    pt.s,
                    Bipartition::new(lam.left().remove_box(bl)?, lam.right().remove_box(br)?),
                )?;
                // c(λ^L/μ^L) + c(λ^R/μ^R) + δ = 0 in the field
                let c = bl.content() + br.content();
                let zero = match (prm.integral_delta(), prm.p) {
                    (Some(d), 0) => c + d == 0,
                    (Some(d), p) => (c + d).rem_euclid(p as i64) == 0,
                    (None, _) => false,
                };
                let want = usize::from(zero);
                let got = cache.hom(&ctx, &lam, &mu)?;
                t.check(
                    got == want,
                    || format!("Hom({lam}, {mu}) at δ={delta}"),
                    want,
                    got,
                );
            }
        }
    }
    Ok(Outcome::Done(t))
}

fn balanced_orbit(pt: &GridPoint) -> Result<Outcome> {
    if pt.p != Some(0) {
        return Ok(Outcome::Skip("characteristic 0 only".into()));
    }
    let Some(delta) = integral(pt)? else {
        return Ok(Outcome::Skip("integer δ only".into()));
    };
    let ctx = GeometryContext::new(pt.r, pt.s, delta, 0)?;
    let labels = CellLabel::all(pt.r, pt.s);
    let weights: Vec<Weight> = labels.iter().map(|l| to_weight(&l.bip, &ctx)).collect::<Result<_>>()?;
    let mut t = Tally::default();
    for (a, wa) in labels.iter().zip(&weights) {
        for (b, wb) in labels.iter().zip(&weights) {
            let bal = is_balanced(&a.bip, &b.bip, delta, 0);
            let orb = same_w_orbit(wa, wb, &ctx)?;
            t.check(
                bal == orb,
                || format!("{} vs {}", a.bip, b.bip),
                format!("balanced={bal}"),
                format!("same W-orbit={orb}"),
            );
        }
    }
    Ok(Outcome::Done(t))
}

fn minimal(pt: &GridPoint) -> Result<Outcome> {
    let prm = params(pt)?;
    if !prm.sigma_semisimple() {
        return Ok(Outcome::Skip("not Σ-semisimple".into()));
    }
    let Some(delta) = prm.integral_delta() else {
        return Ok(Outcome::Skip("integer δ only".into()));
    };
    let report = block_partition(&prm)?;
    let mut t = Tally::default();
    for class in &report.classes {
        let names = || class.labels.iter().map(|l| l.bip.to_string()).collect::<Vec<_>>().join(" ");
        t.check(class.minimal.is_some(), names, "unique minimal member", "none");
        for label in &class.labels {
            let m = minimal_balanced_weight(&label.bip, delta, prm.p);
            let ok = matches!((&m, &class.minimal), (Ok(x), Some(y)) if x == y);
            t.check(
                ok,
                || format!("minimal weight below {}", label.bip),
                class.minimal.as_ref().map_or("-".into(), |m| m.to_string()),
                match &m {
                    Ok(x) => x.to_string(),
                    Err(e) => e.to_string(),
                },
            );
            let subs = balanced_subs(&label.bip, delta, prm.p);
            for (i, a) in subs.iter().enumerate() {
                for b in &subs[i + 1..] {
                    let meet = a.intersection(b);
                    t.check(
                        is_balanced(&meet, &label.bip, delta, prm.p),
                        || format!("{a} ∩ {b} below {}", label.bip),
                        "balanced",
                        format!("{meet} unbalanced"),
                    );
                }
            }
        }
    }
    Ok(Outcome::Done(t))
}

fn combwp(pt: &GridPoint) -> Result<Outcome> {
    let p = pt.p.expect("p grid");
    if p == 0 {
        return Ok(Outcome::Skip("positive characteristic only".into()));
    }
    let Some(delta) = pt.delta.as_ref().and_then(DeltaValue::as_integer) else {
        return Ok(Outcome::Skip("integer δ only".into()));
    };
    let ctx = GeometryContext::new(pt.r, pt.s, delta, p)?;
    let weights: Vec<Weight> = CellLabel::all(pt.r, pt.s)
        .iter()
        .map(|l| to_weight(&l.bip, &ctx))
        .collect::<Result<_>>()?;
    let bound = weights
        .iter()
        .flat_map(|a| weights.iter().map(move |b| (a, b)))
        .map(|(a, b)| bfs_bound(a, b, &ctx))
        .max()
        .unwrap_or(0);
    // bounded orbits partition the box, so each is searched once
    let mut orbit_of: Vec<Option<usize>> = vec![None; weights.len()];
    let mut orbits: Vec<HashSet<Weight>> = Vec::new();
    for i in 0..weights.len() {
        if orbit_of[i].is_some() {
            continue;
        }
        let orbit: HashSet<Weight> = bfs_orbit(&weights[i], bound, &ctx)?.into_iter().collect();
        for (j, w) in weights.iter().enumerate() {
            if orbit.contains(w) {
                orbit_of[j] = Some(orbits.len());
            }
        }
        orbits.push(orbit);
    }
    let mut t = Tally::default();
    for (i, a) in weights.iter().enumerate() {
        for (j, b) in weights.iter().enumerate() {
            let fast = same_wp_orbit(a, b, &ctx)?;
            let slow = orbit_of[i] == orbit_of[j];
            t.check(
                fast == slow,
                || format!("{a} vs {b}, box ±{bound}"),
                format!("bfs={slow}"),
                format!("matching={fast}"),
            );
        }
    }
    Ok(Outcome::Done(t))
}

fn halverson(pt: &GridPoint) -> Result<Outcome> {
    let mut t = Tally::default();
    let targets = Bipartition::all(pt.r, pt.s);
    for label in CellLabel::all(pt.r, pt.s) {
        let mut total = 0;
        for tg in &targets {
            total += halverson_multiplicity(&label, tg)? * specht_dim(&tg.left) * specht_dim(&tg.right);
        }
        let want = cell_dim(&label);
        t.check(total == want, || label.to_string(), want, total);
    }
    Ok(Outcome::Done(t))
}

fn restriction(pt: &GridPoint) -> Result<Outcome> {
    let mut t = Tally::default();
    for label in CellLabel::all(pt.r, pt.s) {
        for (side, ok) in [(Side::L, pt.r > 0), (Side::R, pt.s > 0)] {
            if ok {
                let holds = restriction_dim_check(&label, side)?;
                t.check(holds, || format!("{label} side {side:?}"), "identity holds", "mismatch");
            }
        }
    }
    Ok(Outcome::Done(t))
}

fn homstab(pt: &GridPoint) -> Result<Outcome> {
    let ctx = match concrete_field(pt)? {
        Ok(c) => c,
        Err(why) => return Ok(Outcome::Skip(why)),
    };
    let mut small = ModuleCache::new();
    let mut big = ModuleCache::new();
    let labels = CellLabel::all(pt.r, pt.s);
    let mut t = Tally::default();
    for a in &labels {
        for b in &labels {
            let h = small.hom(&ctx, a, b)?;
            let g = big.hom(&ctx, &a.globalize(), &b.globalize())?;
            t.check(h == g, || format!("Hom({a}, {b})"), h, g);
        }
    }
    Ok(Outcome::Done(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(suites: &[Suite], r: (usize, usize), s: (usize, usize), deltas: &[&str], primes: &[u64]) -> SweepSpec {
        SweepSpec {
            suites: suites.to_vec(),
            r_range: r,
            s_range: s,
            total_max: None,
            deltas: deltas.iter().map(|d| d.parse().unwrap()).collect(),
            primes: primes.to_vec(),
            seed: DEFAULT_SEED,
            samples: 8,
        }
    }

    #[test]
    fn dims_suite() {
        let mut sp = spec(&[Suite::Dims], (0, 5), (0, 5), &[], &[]);
        sp.total_max = Some(5);
        let rep = run_suite(&sp);
        assert!(rep.passed);
        assert_eq!(rep.summary[0].points, 21);
    }

    #[test]
    fn semisimple_exceptional_point() {
        let rep = run_suite(&spec(&[Suite::Semisimple], (1, 1), (2, 2), &["0"], &[0]));
        assert!(rep.passed, "{}", rep.to_json());
        assert_eq!(rep.records[0].checks, 1);
    }

    #[test]
    fn empty_grid_is_a_pass() {
        let rep = run_suite(&spec(&[Suite::Keyscalar], (1, 0), (0, 0), &[], &[]));
        assert!(rep.passed);
        assert!(rep.records.is_empty());
    }

    #[test]
    fn reports_are_reproducible() {
        let sp = spec(&Suite::ALL, (0, 2), (0, 1), &["-1", "0", "2", "1/2", "symbolic"], &[0, 3]);
        let a = run_suite(&sp);
        let b = run_suite(&sp);
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
        let failing: Vec<_> = a.records.iter().filter(|r| r.verdict == Verdict::Fail).collect();
        // the only failures are hom stability from B_{1,1}(0), see below
        assert!(failing.iter().all(|r| r.suite == Suite::Homstab && r.point.r == 1 && r.point.s == 1));
        assert!(a.records.iter().all(|r| r.verdict != Verdict::Error));
    }

    #[test]
    fn hom_stability_fails_from_b11_at_delta_zero() {
        // B_{1,1}(0) has no localizing idempotent: E acts as 0 on both
        // one-dimensional modules, so they are isomorphic.
        let ctx = ScalarContext::new(&DeltaValue::Integer(0), 0).unwrap();
        let a = CellLabel::from_parts(1, 1, vec![], vec![]).unwrap();
        let b = CellLabel::from_parts(1, 1, vec![1], vec![1]).unwrap();
        let mut cache = ModuleCache::new();
        assert_eq!(cache.hom(&ctx, &a, &b).unwrap(), 1);
        assert_eq!(cache.hom(&ctx, &a.globalize(), &b.globalize()).unwrap(), 0);
    }

    #[test]
    fn bound_violations_are_per_point() {
        let rep = run_suite(&spec(&[Suite::Keyscalar], (3, 4), (3, 3), &[], &[]));
        assert!(!rep.passed);
        assert_eq!(rep.records[0].verdict, Verdict::Pass);
        assert_eq!(rep.records[1].verdict, Verdict::Error);
        assert_eq!(rep.summary[0].first_failure.as_ref().unwrap().r, 4);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), s.name());
        }
    }
}
