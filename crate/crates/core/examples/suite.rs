//! The smoke preset on all cores, as `dimlab suite --preset smoke` runs it.
use dimlab::verify::{exit_code, run_suite, Preset};

fn main() -> dimlab::Result<()> {
    let reports = run_suite(&Preset::Smoke.jobs()?, None)?;
    for r in &reports {
        println!("{:<9} {:<8} {}ms", r.check, r.status.to_string(), r.millis);
    }
    println!("exit code {}", exit_code(&reports));
    Ok(())
}
