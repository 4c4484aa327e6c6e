//! Writes the Planner-versus-Nash comparison as long-format CSV.
//!
//! `cargo run --example figure1 -- out.csv` writes to a file; without an
//! argument the CSV goes to standard output.

use pareto_contracts::cli::figure1_csv;
use pareto_contracts::lq::{figure1_data, g_na_limit, weak_pareto_values, LqParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LqParams::with_costs([[2.0, 1.0], [10.0, 5.0]], 1.0)?;
    let table = figure1_data(&p, &[0.1, 0.25, 0.5, 1.0, 50.0], 99)?;
    let csv = figure1_csv(&table);

    let (g0, g1) = weak_pareto_values(&p);
    eprintln!("g(0) = {g0}, g(1) = {g1}, inf over R of g_NA = {}", g_na_limit(&p));
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
