//! The cobar differential of one generator, d² on its graph bases, and the
//! basis sizes level by level.
//!
//! cargo run --release --example cobar_complex -- [r] [t] [g] [p_max]

use omega_cofrob::cobar::{check_d_squared, d_generator, enumerate_levels, GenLabel};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (r, t, g) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(2), args.get(2).copied().unwrap_or(0));
    let p_max = args.get(3).copied().unwrap_or(3);
    let label = GenLabel::new(r, t, g).expect("(1,1,0) has no generator");

    let d = d_generator(label).expect("valid label");
    println!("d {label} has {} terms", d.len());
    for (graph, c) in &d {
        println!("  {c:>6}  {graph}");
    }
    for (p, level) in enumerate_levels(r, t, g, p_max).iter().enumerate() {
        println!("p={}: {} graphs", p + 1, level.len());
    }
    match check_d_squared(r, t, g, p_max) {
        Ok(n) => println!("d² = 0 on {n} graphs"),
        Err(graph) => println!("d² ≠ 0 on {graph}"),
    }
}
