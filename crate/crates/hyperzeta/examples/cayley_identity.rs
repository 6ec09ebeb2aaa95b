//! Check, three ways, that the auxiliary-variable double sum over a system
//! of Laurent polynomials equals both the subset decomposition into Ψ sums
//! and q^k times the torus solution count.
//!
//! Run with: cargo run --example cayley_identity

use hyperzeta::cyclochar::CharSpec;
use hyperzeta::hsums::verify_cayley;
use hyperzeta::laurent::LaurentPoly;
use hyperzeta::ffield::make_field;
use hyperzeta::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f5 = make_field(5, 1)?;
    let chi = CharSpec::additive(&f5).into();

    // P1 = t1*t2 - 1 and P2 = t1 + t2 on the 2-torus over F_5.
    let p1 = LaurentPoly::new(
        &f5,
        2,
        vec![
            (vec![1, 1], f5.from_int(1)),
            (vec![0, 0], f5.from_int(4)),
        ],
    )?;
    let p2 = LaurentPoly::new(
        &f5,
        2,
        vec![
            (vec![1, 0], f5.from_int(1)),
            (vec![0, 1], f5.from_int(1)),
        ],
    )?;
    println!("P1 = {p1}");
    println!("P2 = {p2}");

    let report = verify_cayley(&chi, 2, &[p1, p2], DEFAULT_BUDGET)?;
    println!("\ndirect double sum      = {}", report.lhs);
    println!("subset decomposition   = {}", report.middle);
    println!(
        "q^k * point count      = {} (count {})",
        report.rhs, report.point_count
    );
    for (subset, value) in &report.subset_values {
        println!("  psi over subset {subset:?} = {value}");
    }
    assert!(report.all_equal);
    println!("\nall three agree exactly");
    Ok(())
}
