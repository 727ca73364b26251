//! The complexity `C(σ̂)`: zero below σ̂ = 1, `D(log σ̂ + ½(1/σ̂² − 1))` above,
//! checked against the polar integral over the limiting spectrum.

use fprmt::analytic::{complexity, complexity_via_integral};

fn main() -> fprmt::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12}", "σ̂", "D=1", "D=2", "D=3");
    for k in 0..=12 {
        let s = 0.4 + 0.15 * k as f64;
        let row: Vec<String> = (1..=3).map(|d| complexity(s, d).map(|c| format!("{c:>12.6}"))).collect::<Result<_, _>>()?;
        println!("{s:>6.2} {}", row.join(" "));
    }
    let mut worst = 0.0f64;
    for s in [0.25, 0.5, 2.0, 4.0] {
        for d in 1..=3 {
            worst = worst.max((complexity(s, d)? - complexity_via_integral(s, d, 128)?).abs());
        }
    }
    println!("closed form vs polar quadrature: max |Δ| = {worst:.2e}");
    // one-sided second derivatives at the threshold
    let h = 1e-4;
    for d in 1..=3 {
        let c = |s: f64| complexity(s, d).unwrap();
        let above = (c(1.0 + 2.0 * h) - 2.0 * c(1.0 + h) + c(1.0)) / (h * h);
        let below = (c(1.0 - 2.0 * h) - 2.0 * c(1.0 - h) + c(1.0)) / (h * h);
        println!("D = {d}: C'' just above {above:.4}, just below {below:.4}");
    }
    Ok(())
}
