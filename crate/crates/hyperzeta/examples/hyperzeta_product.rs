//! The hypergeometric zeta series two ways: as exp of the character-sum
//! generating series over an extension tower, and as a product over
//! Frobenius orbits of torus points weighted by lifted character values.
//!
//! Run with: cargo run --example hyperzeta_product

use hyperzeta::cyclochar::CharSpec;
use hyperzeta::ffield::make_field;
use hyperzeta::laurent::LaurentPoly;
use hyperzeta::zeta::{rho, torus_closed_points, verify_product};
use hyperzeta::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = make_field(3, 1)?;
    let chi = CharSpec::additive(&f3);
    let pi = CharSpec::multiplicative(&f3, 1)?;

    // The Kloosterman-type polynomial t + 1/t with the quadratic character.
    let poly = LaurentPoly::new(
        &f3,
        1,
        vec![(vec![1], f3.from_int(1)), (vec![-1], f3.from_int(1))],
    )?;
    println!("P = {poly}, quadratic character attached to t\n");

    // Closed points of the 1-torus up to degree 3, with their weights.
    let points = torus_closed_points(&f3, 1, 3, DEFAULT_BUDGET)?;
    println!("closed points of the torus (degree ≤ 3):");
    for x in &points {
        let weight = rho(x, &chi, &poly, std::slice::from_ref(&pi))?;
        println!(
            "  degree {}: representative encoding {:?}, rho = {weight}",
            x.degree(),
            x.rep()
                .iter()
                .map(|t| x.emb().ext().encode(t))
                .collect::<Vec<_>>(),
        );
    }

    let report = verify_product(&chi, &poly, &[pi], 3, DEFAULT_BUDGET)?;
    println!("\nexp-series route:  {}", report.direct);
    println!("euler-product route: {}", report.product);
    assert!(report.equal);
    println!("\nboth routes agree coefficient by coefficient");
    Ok(())
}
