//! Stable principal ideals and their cofactors.
use shamsuddin::derivation::{invariant_check, lemma_witness, ShamsuddinForm};
use shamsuddin::expr::{parse_derivation, parse_poly};

fn main() {
    let d = parse_derivation("dx=x; dy=2*y").unwrap();
    for f in ["y - x^2", "x*y", "x + y"] {
        match invariant_check(&d, &parse_poly(f).unwrap()).unwrap() {
            Some(w) => println!("({f}) is stable, cofactor {}", w.cofactor()),
            None => println!("({f}) is not stable"),
        }
    }

    let sf = ShamsuddinForm::from_i64(&[], &[0, 0, 3]);
    let w = lemma_witness(&sf).unwrap();
    println!("{sf}: {w}, verifies: {}", w.verify(&sf.to_derivation()));
}
