//! Degree growth under iteration.
use shamsuddin::dynamics::degree_sequence;
use shamsuddin::expr::parse_map;

fn main() {
    for m in ["(y, y^2 + x)", "(x + y^2, y)", "(x + 1, y + x^3)"] {
        let est = degree_sequence(&parse_map(m).unwrap(), 10).unwrap();
        println!("{m}: {est}");
    }
}
