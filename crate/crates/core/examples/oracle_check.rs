//! Compares the reduced solver with brute-force evolution in the full
//! `2^S` Hilbert space for a few random configurations.

use xxchain::oracle::{check_configuration, random_configuration};
use xxchain::prelude::*;

fn main() -> Result<()> {
    let spec = ChainSpec::proposed(6, 1.0);
    for seed in 0..5 {
        let (couplings, noise) = random_configuration(&spec, seed)?;
        let r = check_configuration(&spec, &couplings, &noise, 2.5)?;
        println!(
            "seed {seed}: |dc| {:.1e}  |H/2-K| {:.1e}  |[H,Z]| {:.1e}  leak {:.1e}  |drho| {:.1e}",
            r.amplitude_diff, r.generator_diff, r.commutator, r.leaked_weight, r.pair_density_diff
        );
    }
    Ok(())
}
