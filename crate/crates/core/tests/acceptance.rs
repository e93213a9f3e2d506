//! Runs every acceptance criterion at its stated tolerance and prints one
//! line per criterion. Exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};
use susyqm::verify::{criterion, VerifyConfig, CRITERIA};

fn time_limit(k: u32) -> Option<Duration> {
    match k {
        1 | 2 => Some(Duration::from_secs(1)),
        5 => Some(Duration::from_secs(30)),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let start = Instant::now();
    let mut failed = 0;
    for &(k, title) in CRITERIA {
        let t0 = Instant::now();
        let checks = criterion(k, &cfg);
        let dt = t0.elapsed();
        let bad: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        let slow = time_limit(k).filter(|&lim| dt > lim);
        let ok = !checks.is_empty() && bad.is_empty() && slow.is_none();
        println!(
            "{} criterion {k:>2}: {title} ({} checks, {:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            checks.len(),
            dt.as_secs_f64()
        );
        for c in bad {
            println!("       {}", c.summary());
        }
        if let Some(lim) = slow {
            println!("       runtime {:.2} s over the {:.0} s limit", dt.as_secs_f64(), lim.as_secs_f64());
        }
        if !ok {
            failed += 1;
        }
    }
    let total = start.elapsed();
    let in_time = total < Duration::from_secs(300);
    println!(
        "{} full suite runtime {:.1} s (limit 300 s)",
        if in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64()
    );
    if !in_time {
        failed += 1;
    }
    println!("{} of {} acceptance lines failed", failed, CRITERIA.len() + 1);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
