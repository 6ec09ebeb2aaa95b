//! Zeta series of torus subvarieties from exact point counts, reproducing
//! two closed forms: the 1-torus over F_2 gives (1-T)/(1-2T) and the line
//! t1 + t2 + 1 = 0 in the 2-torus over F_3 gives (1-T)^2/(1-3T).
//!
//! Run with: cargo run --example zeta_varieties

use hyperzeta::ffield::make_field;
use hyperzeta::laurent::LaurentPoly;
use hyperzeta::zeta::zeta_variety;
use hyperzeta::DEFAULT_BUDGET;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f2 = make_field(2, 1)?;
    let torus = zeta_variety(&f2, 1, &[], 6, DEFAULT_BUDGET)?;
    println!("zeta of the 1-torus over F_2:");
    println!("  {torus}");
    // (1-T)/(1-2T) = 1 + T + 2T^2 + 4T^3 + ...
    for (i, expected) in [1i64, 1, 2, 4, 8, 16, 32].iter().enumerate() {
        assert_eq!(torus.coeff(i).as_integer().unwrap(), (*expected).into());
    }

    let f3 = make_field(3, 1)?;
    let line = LaurentPoly::new(
        &f3,
        2,
        vec![
            (vec![1, 0], f3.from_int(1)),
            (vec![0, 1], f3.from_int(1)),
            (vec![0, 0], f3.from_int(1)),
        ],
    )?;
    println!("\nzeta of {{ {line} = 0 }} in the 2-torus over F_3:");
    let z = zeta_variety(&f3, 2, &[line], 6, DEFAULT_BUDGET)?;
    println!("  {z}");
    // The locus has 3^d - 2 points over F_{3^d}: the affine line minus the
    // two coordinate hyperplane sections, giving (1-T)^2/(1-3T).
    for (i, expected) in [1i64, 1, 4, 12, 36, 108, 324].iter().enumerate() {
        assert_eq!(z.coeff(i).as_integer().unwrap(), (*expected).into());
    }
    println!("\nboth closed forms confirmed coefficient by coefficient");
    Ok(())
}
