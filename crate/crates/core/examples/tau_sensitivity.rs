//! Fluctuating disorder at fixed strength for shrinking refresh periods.

use xxchain::prelude::*;

fn main() -> Result<()> {
    let (jm, t) = (49.98, 20.53);
    let chain = ChainSpec::proposed(100, jm);
    for n_steps in [10, 100, 1000] {
        let config = SweepConfig {
            chain: chain.clone(),
            disorder: DisorderSpec {
                kind: DisorderKind::Fluctuating,
                strength: 0.0,
                channels: Channels::ALL,
                n_steps,
                total_time: t,
                fresh_draws: false,
            },
            p_grid: vec![0.05],
            realizations: 50,
            seed: SeedPolicy { master_seed: 2 },
        };
        let pt = &run_sweep(&config)?.points[0];
        println!(
            "tau = T/{n_steps:<5} mean EoF = {:.4} +/- {:.4}",
            pt.mean, pt.stderr
        );
    }
    Ok(())
}
