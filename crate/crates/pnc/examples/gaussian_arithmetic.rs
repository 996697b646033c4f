//! Euclidean division, gcd and Bezout coefficients in Z[i].

use pnc::gaussint::{bezout, gcd, inverse_mod, is_gaussian_prime};
use pnc::GInt;

fn main() -> pnc::Result<()> {
    let a: GInt = "7+11i".parse()?;
    let b: GInt = "3-4i".parse()?;
    let (quo, rem) = a.div_rem(b)?;
    println!(
        "{a} = ({b})({quo}) + {rem}, norm(rem) = {} <= {}/2",
        rem.norm(),
        b.norm()
    );

    let (x, y, g) = bezout(a, b)?;
    println!("gcd({a}, {b}) = {} = ({a})({x}) + ({b})({y})", gcd(a, b)?);
    assert_eq!(a * x + b * y, g);

    let primes: Vec<String> = (-3..=3)
        .flat_map(|re| (0..=3).map(move |im| GInt::new(re, im)))
        .filter(|&z| is_gaussian_prime(z))
        .map(|z| z.to_string())
        .collect();
    println!("Gaussian primes with |re| <= 3, 0 <= im <= 3: {}", primes.join(" "));

    let q = GInt::new(3, 2);
    for w in ["1+i", "2", "-i"] {
        let w: GInt = w.parse()?;
        println!("({w})^-1 mod {q} = {}", inverse_mod(w, q)?);
    }
    Ok(())
}
