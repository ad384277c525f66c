//! The textual formats, and what parse errors look like.
use shamsuddin::expr::{format, parse_derivation, parse_map, parse_poly};

fn main() {
    let p = parse_poly("(x - y)^3 / 2 + -x*y").unwrap();
    println!("{}", format(&p));
    println!(
        "{}",
        format(&parse_derivation("shamsuddin a=x; b=x^2+1").unwrap())
    );
    println!("{}", format(&parse_map("( y , x + 2*y^2 )").unwrap()));

    for bad in ["2x", "x^", "(x + 1", "z"] {
        println!("{}", parse_poly(bad).unwrap_err().render(bad));
    }
}
