//! The invariant suite behind `vpfp check`.

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verdicts = vpfp::experiments::run_check_suite(1.0)?;
    for v in &verdicts {
        println!("{}", v.line());
    }
    println!("{}/{} passed", verdicts.iter().filter(|v| v.passed).count(), verdicts.len());
    Ok(())
}
