//! Growing root of the bump dispersion relation, continued in the bump amplitude from `M0`.

use vpfp::backgrounds::default_bump;
use vpfp::penrose::{continue_eigenvalue, m0_anchor, ContinuationOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bump = default_bump();
    let opts = ContinuationOptions { delta: 1.5, ..Default::default() };
    println!("gamma    M0        lambda_r     lambda_r/gamma  max |Psi|");
    for gamma in [0.1, 0.05, 0.02, 0.01] {
        let m0 = m0_anchor(gamma, &bump)?;
        let sol = continue_eigenvalue(gamma, m0 + 1.0, &bump, opts)?;
        println!("{gamma:<8} {m0:.6}  {:.6e}  {:.4}          {:.1e}", sol.lambda.re, sol.normalized_rate(), sol.path_residual(&bump)?);
    }
    Ok(())
}
