//! Betti numbers of every cell with `r + t ≤ max_total` and genus
//! `≤ max_genus`, as CSV on stdout.
//!
//! cargo run --release --example homology_table -- [max_total] [max_genus]

use omega_cofrob::cli::grid_cells;
use omega_cofrob::homology::{betti_grid, relation_statuses, Limits};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max_total = args.first().copied().unwrap_or(4);
    let max_genus = args.get(1).copied().unwrap_or(1);
    let cells = grid_cells(Some(max_total), None, max_genus);
    let table = betti_grid(&cells, Limits::default());
    print!("{}", table.to_csv());
    for cell in &table.cells {
        eprintln!("({},{},{}) χ = {} {:?}", cell.r, cell.t, cell.g, cell.euler_from_chains(), cell.status);
    }
    for rel in relation_statuses(&cells, Limits::default().p_max).expect("relation cells") {
        eprintln!("{} in ({},{},{}): cycle {}, boundary {}", rel.relation, rel.r, rel.t, rel.g, rel.cycle, rel.boundary);
    }
}
