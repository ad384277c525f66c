//! Jacobian check and explicit inverses.
use shamsuddin::dynamics::validate_automorphism;
use shamsuddin::expr::parse_map;

fn main() {
    for m in ["(x + y^2, y)", "(y + (x + y^2)^2, x + y^2)", "(x^2, y)"] {
        match validate_automorphism(&parse_map(m).unwrap()) {
            Ok(cert) => match &cert.inverse {
                Some(inv) => println!("{m}: inverse {inv} (checks: {})", cert.verify()),
                None => println!("{m}: Jacobian {} only", cert.jacobian_det),
            },
            Err(e) => println!("{m}: {e}"),
        }
    }
}
