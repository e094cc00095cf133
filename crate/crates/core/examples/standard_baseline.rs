//! Best clean EoF of the linear chain over a J_m window around its optimum.
//!
//! Pass `--full` to scan the whole `[0.1, 5]` window (slow).

use xxchain::prelude::*;

fn main() -> Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let range = if full { (0.1, 5.0) } else { (2.2, 2.45) };
    let scan = scan_jm(&ChainSpec::standard(100, 1.0), range, 0.01, None, 0.01)?;
    for p in &scan.curve {
        println!("{:.2}\t{:.4}\t{:.6}", p.jm, p.t_star, p.eof_star);
    }
    let b = scan.best;
    println!("best: J_m = {:.2}, t* = {:.3}, EoF* = {:.4}", b.jm, b.t_star, b.eof_star);
    Ok(())
}
