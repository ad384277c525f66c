//! Detect finite order of automorphisms.
use shamsuddin::dynamics::order_detect;
use shamsuddin::expr::parse_map;

fn main() {
    for m in ["(y, x)", "(-y, x)", "(y, -x - y)", "(x + y^2, y)"] {
        match order_detect(&parse_map(m).unwrap(), 12) {
            Some(n) => println!("{m}: order {n}"),
            None => println!("{m}: no finite order up to 12"),
        }
    }
}
