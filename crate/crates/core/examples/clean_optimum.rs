//! Clean readout EoF at the two optimal operating points of the N = 100 chain.

use xxchain::prelude::*;

fn main() -> Result<()> {
    for (jm, t) in [(2.86, 9.54), (49.98, 20.53)] {
        let chain = ChainSpec::proposed(100, jm);
        let e = run_realization(&chain, &DisorderSpec::clean(t), 0)?;
        println!("J_m = {jm:6.2}  t = {t:6.2}  EoF = {e:.6}");
    }
    Ok(())
}
