//! The limiting constants and the integral identities behind them.

use atiyah_lab::consts::constants;
use atiyah_lab::ngon::verify_integral_identities;

fn main() -> atiyah_lab::Result<()> {
    let c = constants();
    println!("zeta(3) = {:.16}", c.zeta3);
    println!("catalan = {:.16}", c.catalan);
    println!("B       = {:.16}", c.b);
    println!("L       = {:.16}", c.l);
    let r = verify_integral_identities()?;
    for (name, check) in [("main", r.main), ("sec", r.sec), ("xsec", r.xsec)] {
        println!("{name:>5}: {:.15} vs {:.15}  err {:.2e}", check.value, check.expected, check.abs_err);
    }
    Ok(())
}
