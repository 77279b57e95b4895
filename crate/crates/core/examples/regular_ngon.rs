//! Regular polygons: direct determinant against the closed form, the
//! sandwich bounds on the cotangent product, and `ln D_n / n^2`.

use atiyah_lab::consts::constants;
use atiyah_lab::ngon::{
    cot_product_bounds, cot_product_ln, log_dn_over_n2, ngon_closed_form, ngon_points, DIRECT_CAP,
};
use atiyah_lab::atiyah_determinant;

fn main() -> atiyah_lab::Result<()> {
    println!("{:>4} {:>22} {:>22} {:>10}", "n", "direct |D|", "closed form", "rel err");
    for n in 3..=DIRECT_CAP {
        let direct = atiyah_determinant(&ngon_points(n)?)?.abs();
        let closed = ngon_closed_form(n)?;
        println!("{n:>4} {direct:>22.15e} {closed:>22.15e} {:>10.2e}", (direct - closed).abs() / closed);
    }

    println!();
    for n in [10, 100, 1000, 10_000] {
        let b = cot_product_bounds(n)?;
        let p = cot_product_ln(n);
        println!("n = {n:>6}: {:.6} <= ln prod = {p:.6} <= {:.6}", b.lower_ln, b.upper_ln);
    }

    println!();
    let l = constants().l;
    for n in [10, 1000, 100_000, 10_000_000] {
        let v = log_dn_over_n2(n)?;
        println!("n = {n:>9}: ln D_n / n^2 = {v:.10}  (limit {l:.10}, gap {:.2e})", l - v);
    }
    Ok(())
}
