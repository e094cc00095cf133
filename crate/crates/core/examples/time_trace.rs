//! Clean concurrence and EoF of the readout pair over time, as TSV.

use xxchain::prelude::*;

fn main() -> Result<()> {
    let jm: f64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("J_m must be a number"))
        .unwrap_or(2.86);
    let chain = ChainSpec::proposed(100, jm);
    println!("t\tconcurrence\teof");
    for (t, c, e) in clean_trace(&chain, 30.0, 0.05)? {
        println!("{t:.2}\t{c:.6}\t{e:.6}");
    }
    Ok(())
}
