//! Semicircle density, CDF and Stieltjes transform at a few points.

use vesd::semicircle::{semicircle_cdf, semicircle_density, semicircle_stieltjes};
use vesd::Complex64;

fn main() -> vesd::Result<()> {
    println!("x,density,cdf");
    for x in [-2.5, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0] {
        println!("{x},{:.6},{:.6}", semicircle_density(x), semicircle_cdf(x));
    }
    println!();
    println!("u,v,re_s,im_s,residual");
    for (u, v) in [(0.0, 1.0), (0.5, 0.1), (3.0, 0.01), (-10.0, 2.0)] {
        let z = Complex64::new(u, v);
        let s = semicircle_stieltjes(z)?;
        // s solves s² + zs + 1 = 0
        println!("{u},{v},{:.8},{:.8},{:.1e}", s.re, s.im, (s * s + z * s + 1.0).norm());
    }
    Ok(())
}
