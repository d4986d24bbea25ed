//! Acceptance sweep: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails or runs over its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use walled_brauer::blocks::{i_maximal_sub, is_balanced, maximal_balanced_sub};
use walled_brauer::verify::{run_suite, Suite, SweepSpec, Verdict, DEFAULT_SEED};
use walled_brauer::{Bipartition, DeltaValue, YoungBox};

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

fn ints(lo: i64, hi: i64) -> Vec<DeltaValue> {
    (lo..=hi).map(DeltaValue::Integer).collect()
}

fn sweep(
    suite: Suite,
    r: (usize, usize),
    s: (usize, usize),
    total_max: Option<usize>,
    deltas: Vec<DeltaValue>,
    primes: Vec<u64>,
) -> Result<String, String> {
    let spec = SweepSpec {
        suites: vec![suite],
        r_range: r,
        s_range: s,
        total_max,
        deltas,
        primes,
        seed: DEFAULT_SEED,
        samples: 0,
    };
    let report = run_suite(&spec);
    let sum = &report.summary[0];
    let skipped = report.records.iter().filter(|r| r.verdict == Verdict::Skipped).count();
    if let Some(bad) = report.records.iter().find(|r| matches!(r.verdict, Verdict::Fail | Verdict::Error)) {
        return Err(format!(
            "{} failures, {} errors in {} checks; first at {}: {} (expected {}, got {})",
            sum.failures, sum.errors, sum.checks, bad.point, bad.case, bad.expected, bad.computed
        ));
    }
    if sum.checks == 0 {
        return Err("no checks ran".into());
    }
    if skipped > 0 {
        return Err(format!("{skipped} grid points skipped"));
    }
    Ok(format!("{} points, {} checks", sum.points, sum.checks))
}

fn bp(l: &[usize], r: &[usize]) -> Bipartition {
    Bipartition::from_parts(l.to_vec(), r.to_vec()).unwrap()
}

fn worked_example() -> Result<String, String> {
    let lam = bp(&[4, 4, 4, 1, 1, 1], &[5, 5, 2, 2, 2]);
    let mu = bp(&[2, 1], &[4]);
    if !is_balanced(&lam, &mu, 1, 0) {
        return Err(format!("{lam} and {mu} are not 1-balanced"));
    }
    let bx = YoungBox::new(6, 1);
    debug_assert_eq!(bx.content(), -5);
    let want = bp(&[4, 4, 4], &[3, 3, 2, 2, 2]);
    let got = i_maximal_sub(&lam, &mu, bx, 1).map_err(|e| e.to_string())?;
    let all = maximal_balanced_sub(&lam, &mu, 1).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!(
            "box (6,1): expected {want}, got {got}; maximal subs {}",
            all.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
        ));
    }
    if !all.contains(&want) {
        return Err(format!("{want} missing from maximal subs"));
    }
    Ok(format!("{lam} ~ {mu}; box (6,1) -> {got}"))
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "basis size is (r+s)! for r+s <= 7",
        budget: Duration::from_secs(10),
        run: || sweep(Suite::Dims, (0, 7), (0, 7), Some(7), vec![], vec![]),
    },
    Criterion {
        id: 2,
        name: "semisimplicity criterion matches Gram determinants",
        budget: Duration::from_secs(300),
        run: || {
            let mut deltas = ints(-5, 5);
            deltas.push("1/2".parse().unwrap());
            sweep(Suite::Semisimple, (0, 3), (0, 3), None, deltas, vec![0])
        },
    },
    Criterion {
        id: 3,
        name: "T acts by the key scalar, r+s <= 5",
        budget: Duration::from_secs(120),
        run: || sweep(Suite::Keyscalar, (0, 5), (0, 5), Some(5), vec![], vec![]),
    },
    Criterion {
        id: 4,
        name: "two-box homomorphisms",
        budget: Duration::from_secs(600),
        run: || sweep(Suite::Twobox, (0, 3), (0, 3), None, ints(-4, 4), vec![0]),
    },
    Criterion {
        id: 5,
        name: "balanced iff same W-orbit",
        budget: Duration::from_secs(120),
        run: || sweep(Suite::BalancedOrbit, (0, 4), (0, 4), None, ints(-6, 6), vec![0]),
    },
    Criterion {
        id: 6,
        name: "unique minimal block member, balanced intersections",
        budget: Duration::from_secs(120),
        run: || sweep(Suite::Minimal, (0, 4), (0, 4), None, ints(-4, 4), vec![0]),
    },
    Criterion {
        id: 7,
        name: "W_p-orbit matching agrees with BFS",
        budget: Duration::from_secs(300),
        run: || sweep(Suite::Combwp, (0, 4), (0, 4), Some(4), ints(-3, 3), vec![2, 3, 5]),
    },
    Criterion {
        id: 8,
        name: "branching multiplicities recover cell dimensions",
        budget: Duration::from_secs(60),
        run: || sweep(Suite::Halverson, (0, 6), (0, 6), Some(6), vec![], vec![]),
    },
    Criterion {
        id: 9,
        name: "restriction dimension bookkeeping",
        budget: Duration::from_secs(60),
        run: || sweep(Suite::Restriction, (0, 6), (0, 6), Some(6), vec![], vec![]),
    },
    Criterion {
        id: 10,
        name: "hom dimensions stable under globalization",
        budget: Duration::from_secs(600),
        run: || sweep(Suite::Homstab, (1, 2), (1, 2), Some(3), ints(-2, 2).into_iter().step_by(2).collect(), vec![0]),
    },
    Criterion {
        id: 11,
        name: "worked example: balanced pair and maximal sub-bipartition",
        budget: Duration::from_secs(10),
        run: worked_example,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget {:?}", c.budget)),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2}: {} [{:.2}s] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {} passed, {} failed", CRITERIA.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
