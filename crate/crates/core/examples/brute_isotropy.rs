//! Exhaustive search for commuting automorphisms in a small box.
use shamsuddin::derivation::Derivation;
use shamsuddin::expr::parse_derivation;
use shamsuddin::isotropy::{brute_force_isotropy, default_grid, DEFAULT_PAIR_BUDGET};

fn main() {
    let simple = parse_derivation("shamsuddin a=x; b=1").unwrap();
    let e = brute_force_isotropy(&simple, 2, &default_grid(), DEFAULT_PAIR_BUDGET).unwrap();
    println!(
        "simple derivation: {} map(s), {} pairs",
        e.found.len(),
        e.pairs_examined
    );
    for m in &e.found {
        println!("  {m}");
    }

    let dx = Derivation::partial_x();
    let e = brute_force_isotropy(&dx, 2, &default_grid(), DEFAULT_PAIR_BUDGET).unwrap();
    println!("d/dx: {} maps, first few:", e.found.len());
    for m in e.found.iter().take(6) {
        println!("  {m}");
    }
}
