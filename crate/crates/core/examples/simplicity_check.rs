//! Decide simplicity for a few Shamsuddin derivations.
use shamsuddin::derivation::ShamsuddinForm;
use shamsuddin::expr::parse_upoly;
use shamsuddin::simplicity::shamsuddin_is_simple;

fn main() {
    for (a, b) in [
        ("x", "1"),
        ("x", "0"),
        ("0", "3*x^2"),
        ("5", "x"),
        ("x^2 + 1", "x^3 - x"),
    ] {
        let sf = ShamsuddinForm::new(parse_upoly(a).unwrap(), parse_upoly(b).unwrap());
        let verdict = shamsuddin_is_simple(&sf);
        let checked = verdict
            .witness()
            .is_none_or(|w| w.verify(&sf.to_derivation()));
        println!("{sf}: {verdict} (witness checks: {checked})");
    }
}
