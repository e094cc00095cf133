//! Mean EoF against static coupling disorder strength.

use xxchain::prelude::*;

fn main() -> Result<()> {
    let (jm, t) = (2.86, 9.54);
    let config = SweepConfig {
        chain: ChainSpec::proposed(100, jm),
        disorder: DisorderSpec {
            kind: DisorderKind::Static,
            strength: 0.0,
            channels: Channels::COUPLING,
            n_steps: 1,
            total_time: t,
            fresh_draws: false,
        },
        p_grid: vec![0.0, 0.02, 0.04, 0.06, 0.08, 0.10],
        realizations: 200,
        seed: SeedPolicy { master_seed: 1 },
    };
    let result = run_sweep(&config)?;
    print!("{}", xxchain::io::sweep_csv(&result.points));
    eprintln!("{:.2} s, hash {}", result.wall_time_secs, &result.config_hash[..12]);
    Ok(())
}
