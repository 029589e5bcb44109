//! Regime table and the parameters of each long-wave regime.
use coriolis_kp::regimes::{params_for, recommend_model, RegimeKind, ScaleClass};

fn main() -> coriolis_kp::Result<()> {
    for g in [ScaleClass::SqrtMu, ScaleClass::Mu] {
        for r in [ScaleClass::SqrtMu, ScaleClass::Mu] {
            println!(
                "gamma {:>7} rot {:>7} -> {}",
                g.name(),
                r.name(),
                recommend_model(g, r)
            );
        }
    }
    for regime in RegimeKind::LONG_WAVE {
        let p = params_for(regime, 0.04)?;
        println!(
            "{regime:>9} mu=0.04: eps={} gamma={} rot={}",
            p.eps, p.gamma, p.rot
        );
    }
    Ok(())
}
