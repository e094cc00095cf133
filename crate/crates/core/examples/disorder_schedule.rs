//! One sampled realization of each disorder kind, printed segment by segment.

use xxchain::prelude::*;

fn main() -> Result<()> {
    let chain = ChainSpec::proposed(6, 2.0);
    for kind in [DisorderKind::Static, DisorderKind::Dynamic, DisorderKind::Fluctuating] {
        let spec = DisorderSpec {
            kind,
            strength: 0.1,
            channels: Channels::ALL,
            n_steps: if kind == DisorderKind::Static { 1 } else { 3 },
            total_time: 3.0,
            fresh_draws: false,
        };
        let schedule = sample(&spec, &chain, derive_seed(SeedPolicy { master_seed: 4 }, 0, 0))?;
        println!("{kind:?}");
        for (k, seg) in schedule.segments().iter().enumerate() {
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:+.3}")).collect::<Vec<_>>().join(" ");
            println!("  segment {k} ({:.2}): J [{}]", seg.duration, fmt(&seg.couplings));
            println!("    h [{}]  zz [{}]", fmt(&seg.noise.fields), fmt(&seg.noise.zz));
        }
    }
    Ok(())
}
