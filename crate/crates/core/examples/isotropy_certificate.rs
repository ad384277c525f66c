//! Print and re-check the triviality certificate for a simple derivation.
use shamsuddin::derivation::ShamsuddinForm;
use shamsuddin::isotropy::shamsuddin_isotropy;

fn main() {
    // a = x^2 - 1, b = x + 2
    let sf = ShamsuddinForm::from_i64(&[-1, 0, 1], &[2, 1]);
    let cert = shamsuddin_isotropy(&sf).expect("simple");
    println!("{cert}");
    println!("re-verified: {}", cert.verify());
}
