//! Checks coassociativity and both counit laws of coFrob on a grid of pieces.
//!
//! cargo run --release --example cofrob_coassoc -- [max_arity] [max_genus]

use std::time::Instant;

use omega_cofrob::cofrob::{check_coassoc, chi_of, counit_check, decompose};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max_arity = args.first().copied().unwrap_or(3);
    let max_genus = args.get(1).copied().unwrap_or(1) as u32;
    for g in 0..=max_genus {
        for m in 1..=max_arity {
            for n in 1..=max_arity {
                let chi = chi_of(m, n, g);
                let start = Instant::now();
                let summands = decompose(m, n, chi).expect("valid piece").len();
                let report = check_coassoc(m, n, chi, 50_000_000).expect("within budget");
                let counit = counit_check(m, n, chi).expect("valid piece");
                println!(
                    "({m},{n},χ={chi}) g={g}: {summands} two-level, {} three-level, coassoc {}, counit {}  [{:.2?}]",
                    report.three_level_graphs,
                    if report.agrees { "ok" } else { "FAIL" },
                    if counit { "ok" } else { "FAIL" },
                    start.elapsed()
                );
            }
        }
    }
}
