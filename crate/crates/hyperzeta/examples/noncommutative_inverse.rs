//! Invert a 2x2 matrix with quaternion entries through quasideterminants,
//! then check the two charts of the inverse formula against each other on
//! their common domain.
//!
//! Run with: cargo run --example noncommutative_inverse

use hyperzeta::classical::{nc_identity_check, nc_inverse_2x2, NcMatrix2, Quaternion};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Quaternion arithmetic is exact over the rationals, and inverses are
    // conj(x) / norm(x).
    let x = Quaternion::from_integers(1, 2, -1, 3);
    let inv = x.inv()?;
    println!("x       = {x}");
    println!("x^-1    = {inv}");
    assert_eq!(x.mul(&inv), Quaternion::one());
    assert_eq!(inv.mul(&x), Quaternion::one());

    // Invert a full quaternion matrix. Each entry of the inverse is the
    // reciprocal of one quasideterminant of the original, transposed.
    let a = NcMatrix2::new(
        Quaternion::from_integers(1, 1, 0, 0),
        Quaternion::j(),
        Quaternion::k(),
        Quaternion::one(),
    );
    let a_inv = nc_inverse_2x2(&a)?;
    println!("\nA       = [{}, {}; {}, {}]", a.a1, a.b1, a.a2, a.b2);
    println!("A^-1    = [{}, {}; {}, {}]", a_inv.a1, a_inv.b1, a_inv.a2, a_inv.b2);
    let product = a.mul(&a_inv);
    assert_eq!(product, NcMatrix2::identity());
    println!("A * A^-1 = identity");

    // The matrix (i, j; k, 1) has all four quasideterminants equal to
    // zero at once, so the inverse construction names the obstruction.
    let singular = NcMatrix2::new(
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
        Quaternion::one(),
    );
    match nc_inverse_2x2(&singular) {
        Err(err) => println!("\n(i, j; k, 1) rejected: {err}"),
        Ok(_) => panic!("expected a vanishing quasideterminant"),
    }

    // The two charts of the (1,1) entry of the inverse agree wherever both
    // are defined: (a1 - b1 b2^-1 a2)^-1 = -a2^-1 b2 (b1 - a1 a2^-1 b2)^-1.
    let report = nc_identity_check(&a.a1, &a.b1, &a.a2, &a.b2);
    println!(
        "\nchart check on A: lhs = {}, rhs = {}, equal = {:?}",
        report.lhs.as_ref().unwrap(),
        report.rhs.as_ref().unwrap(),
        report.equal
    );
    assert_eq!(report.equal, Some(true));

    // With b2 = 0 the first chart has no meaning and the check says which
    // hypothesis failed rather than comparing anything.
    let report = nc_identity_check(
        &Quaternion::i(),
        &Quaternion::j(),
        &Quaternion::k(),
        &Quaternion::zero(),
    );
    println!(
        "chart check on (i, j; k, 0): lhs obstruction = {:?}, equal = {:?}",
        report.lhs_obstruction, report.equal
    );
    assert_eq!(report.equal, None);
    Ok(())
}
