//! Fixed points of plane maps.
use shamsuddin::dynamics::fixed_points;
use shamsuddin::expr::parse_map;

fn main() {
    for m in [
        "(y, x)",
        "(y, y^2 + x - 1)",
        "(x + 1, y)",
        "(x + x^2, y + x)",
    ] {
        let rho = parse_map(m).unwrap();
        let report = fixed_points(&rho).unwrap();
        println!("{m}: {report} (checks: {})", report.verify(&rho));
    }
}
