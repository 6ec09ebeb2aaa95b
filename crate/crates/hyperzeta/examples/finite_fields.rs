//! Build prime and extension fields, walk a tower, and check trace, norm,
//! and Frobenius by hand.
//!
//! Run with: cargo run --example finite_fields

use hyperzeta::ffield::{extend, make_field, FieldElement};

// Elements print as polynomials in x, the class of the adjoined root.
fn fmt(x: &FieldElement) -> String {
    let terms: Vec<String> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 if *c == 1 => "x".into(),
            1 => format!("{c}x"),
            _ if *c == 1 => format!("x^{i}"),
            _ => format!("{c}x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f3 = make_field(3, 1)?;
    let f9 = make_field(3, 2)?;
    println!(
        "F_9 = F_3[x] / (defining poly with coefficients {:?}), generator {}",
        f9.defining_poly(),
        fmt(&f9.generator()),
    );

    // The same field reached as an extension of F_3 carries the embedding,
    // Frobenius, and relative trace/norm maps.
    let emb = extend(&f3, 2)?;
    println!("\nelement    frobenius  trace  norm");
    for e in 1..emb.ext().order() {
        let x = emb.ext().decode(e);
        println!(
            "{:<10} {:<10} {:<6} {}",
            fmt(&x),
            fmt(&emb.frobenius(&x)),
            fmt(&emb.rel_trace(&x)?),
            fmt(&emb.rel_norm(&x)?),
        );
    }

    // Frobenius generates the Galois group: applying it twice is the
    // identity on F_9, and its fixed points are exactly the base field.
    let mut fixed = 0;
    for x in emb.ext().elements() {
        assert_eq!(emb.frobenius(&emb.frobenius(&x)), x);
        if emb.frobenius(&x) == x {
            fixed += 1;
        }
    }
    println!("\nfrobenius fixes {fixed} of 9 elements (the copy of F_3)");

    // The generator hits every nonzero element: multiplicative order q - 1.
    assert_eq!(emb.ext().mult_order(&emb.ext().generator())?, 8);
    println!("generator has multiplicative order 8");
    Ok(())
}
