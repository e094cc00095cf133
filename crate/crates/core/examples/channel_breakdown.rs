//! Mean EoF at one disorder strength for each channel on its own and all together.
//!
//! Usage: `channel_breakdown [p] [realizations]`.

use xxchain::prelude::*;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.01, |s| s.parse().expect("p"));
    let r: usize = args.next().map_or(200, |s| s.parse().expect("realizations"));
    for (jm, t) in [(2.86, 9.54), (49.98, 20.53)] {
        let chain = ChainSpec::proposed(100, jm);
        let clean = run_realization(&chain, &DisorderSpec::clean(t), 0)?;
        println!("J_m = {jm}: clean {clean:.4}");
        for kind in [DisorderKind::Static, DisorderKind::Dynamic, DisorderKind::Fluctuating] {
            let mut row = format!("  {kind:<12?}");
            for (name, channels) in [
                ("J", Channels::COUPLING),
                ("h", Channels::FIELD),
                ("zz", Channels::ZZ),
                ("all", Channels::ALL),
            ] {
                let config = SweepConfig {
                    chain: chain.clone(),
                    disorder: DisorderSpec {
                        kind,
                        strength: 0.0,
                        channels,
                        n_steps: if kind == DisorderKind::Static { 1 } else { 10 },
                        total_time: t,
                        fresh_draws: false,
                    },
                    p_grid: vec![p],
                    realizations: r,
                    seed: SeedPolicy { master_seed: 11 },
                };
                let pt = &run_sweep(&config)?.points[0];
                row.push_str(&format!(" {name} {:.4}", pt.mean));
            }
            println!("{row}");
        }
    }
    Ok(())
}
