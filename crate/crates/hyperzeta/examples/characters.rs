//! Evaluate additive and multiplicative characters exactly, then confirm
//! two classical facts: column orthogonality and the Gauss sum magnitude
//! |Σ χ(t)π(t)| = √q for nontrivial π.
//!
//! Run with: cargo run --example characters

use hyperzeta::cyclochar::{CharSpec, CycloNumber};
use hyperzeta::ffield::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f7 = make_field(7, 1)?;
    let chi = CharSpec::additive(&f7);

    // The additive character sends t to ζ_7^t; its values are exact
    // cyclotomic numbers that embed into the complex plane on demand.
    println!("additive character on F_7:");
    for e in 0..7 {
        let x = f7.decode(e);
        let v = chi.eval(&x)?;
        let z = v.embed_complex();
        println!("  chi({e}) = {v}  ~  {:.4}{:+.4}i", z.re, z.im);
    }

    // Each multiplicative character is indexed by where it sends the
    // generator; summing any nontrivial one over the torus gives zero.
    for index in 0..6 {
        let pi = CharSpec::multiplicative(&f7, index)?;
        let mut acc = CycloNumber::zero();
        for e in 1..7 {
            acc = acc.add(&pi.eval(&f7.decode(e))?);
        }
        println!(
            "sum of pi_{index} over the torus = {acc} (order {})",
            pi.value_order()
        );
        if index == 0 {
            assert_eq!(acc, CycloNumber::from_integer(6));
        } else {
            assert!(acc.is_zero());
        }
    }

    // Gauss sums: Σ χ(t)π(t) has magnitude √q exactly when π is nontrivial.
    for index in 1..6 {
        let pi = CharSpec::multiplicative(&f7, index)?;
        let mut acc = CycloNumber::zero();
        for e in 1..7 {
            let x = f7.decode(e);
            acc = acc.add(&chi.eval(&x)?.mul(&pi.eval(&x)?));
        }
        let magnitude = acc.embed_complex().norm();
        println!("|gauss sum for pi_{index}| = {magnitude:.12}");
        assert!((magnitude - 7f64.sqrt()).abs() <= 1e-9);
    }
    Ok(())
}
