//! E-folding times of the nonzero modes, against `(3 / (nu k^2))^(1/3)`.

use vpfp::experiments::{e_folding_times, predicted_e_folding, ExperimentConfig, ExperimentKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExperimentConfig::new(ExperimentKind::EdScaling);
    println!("nu      k  measured   predicted");
    for nu in [1e-3, 1e-4] {
        let (taus, _, _) = e_folding_times(&cfg, nu, 3)?;
        for (i, tau) in taus.iter().enumerate() {
            println!("{nu:<7e} {}  {tau:8.3}   {:8.3}", i + 1, predicted_e_folding(nu, i as i64 + 1));
        }
    }
    Ok(())
}
