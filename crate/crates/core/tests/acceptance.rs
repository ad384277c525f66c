//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shamsuddin::cli::run;
use shamsuddin::derivation::{invariant_check, DarbouxWitness, Derivation, ShamsuddinForm};
use shamsuddin::dynamics::{degree_sequence, fixed_points, DynamicsError, PolyMap};
use shamsuddin::expr::{format, parse_derivation, parse_map, parse_poly, parse_upoly};
use shamsuddin::isotropy::{
    brute_force_isotropy, commutes, shamsuddin_isotropy, IsotropyEnumeration, StepId,
    DEFAULT_PAIR_BUDGET,
};
use shamsuddin::polyring::{int, BPoly, BigRat, UPoly};
use shamsuddin::simplicity::{
    ode_brute_oracle, shamsuddin_is_simple, solve_linear_ode, OdeVerdict, SimplicityVerdict,
};

const CATALOG: &[(&str, &str)] = &[
    ("x", "1"),
    ("x+1", "x"),
    ("2*x-3", "x^2+1"),
    ("-x", "x^3-2"),
    ("x", "x^5+3"),
    ("x^2", "1"),
    ("x^2-1", "x+2"),
    ("x^2+x+1", "x^2"),
    ("3*x^2-2*x", "x^4+x"),
    ("x^2+1", "x^3-x"),
    ("x^2", "x^5-x^2+1"),
    ("x^2-2", "x^3+1/2*x"),
    ("x^3", "1"),
    ("x^3-x+2", "x"),
    ("x^3+2*x^2-1", "x^3+x"),
    ("-x^3+x", "x^4-1"),
    ("x^3", "x^5+x^4+1"),
    ("x^4", "1"),
    ("x^4-2*x+1", "x^5+3"),
    ("x^4+x^3-x", "x^2-x"),
    ("2*x^4-1", "x^4+2*x"),
    ("x^4+1", "x^5"),
    ("1/2*x+1", "x^2-3"),
    ("x-1/3", "2"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn form(a: &str, b: &str) -> ShamsuddinForm {
    ShamsuddinForm::new(parse_upoly(a).unwrap(), parse_upoly(b).unwrap())
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = run(std::iter::once("shamsuddin").chain(args.iter().copied()));
    (out.code, out.stdout)
}

/// Independent completeness bound: a solution of r' = a r + b with
/// deg a >= 1 has deg r = deg b - deg a, and with a = 0 has deg r = deg b + 1.
fn oracle_is_simple(sf: &ShamsuddinForm) -> bool {
    let max_deg = sf.b.degree().unwrap_or(0) + 1;
    matches!(
        ode_brute_oracle(&sf.a, &sf.b, max_deg),
        OdeVerdict::NoSolution
    )
}

fn witness_is_stable(w: &DarbouxWitness, d: &Derivation) -> bool {
    w.verify(d)
        && invariant_check(d, w.f())
            .ok()
            .flatten()
            .is_some_and(|again| again.cofactor() == w.cofactor())
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    let (code, out) = cli(&["simple-check", "--a", "x", "--b", "1"]);
    ok &= code == 0 && out == "Simple\n";
    ok &= oracle_is_simple(&form("x", "1"));

    let expect = [
        ("x", "0", Some(("y", "x"))),
        ("0", "3*x^2", Some(("y - x^3", "0"))),
        ("5", "x", None),
    ];
    for (a, b, expected) in expect {
        let sf = form(a, b);
        let d = sf.to_derivation();
        let (code, out) = cli(&["simple-check", "--a", a, "--b", b]);
        ok &= code == 0 && out.starts_with("NotSimple");
        match shamsuddin_is_simple(&sf) {
            SimplicityVerdict::NotSimple(w) => {
                ok &= witness_is_stable(&w, &d);
                if let Some((f, c)) = expected {
                    ok &=
                        w.f() == &parse_poly(f).unwrap() && w.cofactor() == &parse_poly(c).unwrap();
                }
                notes.push(format!("({a},{b}) -> {}", w.f()));
            }
            SimplicityVerdict::Simple => ok = false,
        }
    }
    outcome(ok, notes.join("; "))
}

struct CatalogRun {
    form: ShamsuddinForm,
    enumeration: IsotropyEnumeration,
}

fn criterion_2(runs: &mut Vec<CatalogRun>) -> Outcome {
    let grid = [int(-1), int(0), int(1), int(2)];
    let mut ok = CATALOG.len() >= 20;
    let mut failures = Vec::new();
    let mut deg_a = BTreeSet::new();
    let mut deg_b = BTreeSet::new();
    for &(a, b) in CATALOG {
        let sf = form(a, b);
        let da = sf.a.degree().unwrap_or(0);
        let db = sf.b.degree().unwrap_or(0);
        deg_a.insert(da);
        deg_b.insert(db);
        let mut good = (1..=4).contains(&da) && db <= 5;
        let (code, out) = cli(&["simple-check", "--a", a, "--b", b]);
        good &= code == 0 && out == "Simple\n" && oracle_is_simple(&sf);

        match shamsuddin_isotropy(&sf) {
            Ok(cert) => {
                let ids: Vec<StepId> = cert.steps.iter().map(|s| s.id).collect();
                good &= ids == [StepId::S1, StepId::S2, StepId::S3, StepId::S4];
                good &= cert.conclusion() == "trivial" && cert.verify();
            }
            Err(_) => good = false,
        }
        match brute_force_isotropy(&sf.to_derivation(), 2, &grid, DEFAULT_PAIR_BUDGET) {
            Ok(e) => {
                good &= e.found == vec![PolyMap::identity()];
                runs.push(CatalogRun {
                    form: sf.clone(),
                    enumeration: e,
                });
            }
            Err(_) => good = false,
        }
        if !good {
            failures.push(format!("({a}, {b})"));
        }
        ok &= good;
    }
    ok &= deg_a == (1..=4).collect() && deg_b == (0..=5).collect();
    let detail = if failures.is_empty() {
        format!(
            "{} forms, certificate and box search both give {{id}}",
            CATALOG.len()
        )
    } else {
        format!("failed: {}", failures.join(", "))
    };
    outcome(ok, detail)
}

fn criterion_3(partial_x: &mut Option<IsotropyEnumeration>) -> Outcome {
    let grid = [int(-1), int(0), int(1)];
    let d = Derivation::partial_x();
    let e = match brute_force_isotropy(&d, 2, &grid, DEFAULT_PAIR_BUDGET) {
        Ok(e) => e,
        Err(err) => return outcome(false, err.to_string()),
    };
    // every (x + p(y), a y + c) in the box, built directly
    let mut expected = BTreeSet::new();
    for p0 in &grid {
        for p1 in &grid {
            for p2 in &grid {
                for a in [int(-1), int(1)] {
                    for c in &grid {
                        let f = BPoly::from_terms([
                            (1, 0, int(1)),
                            (0, 0, p0.clone()),
                            (0, 1, p1.clone()),
                            (0, 2, p2.clone()),
                        ]);
                        let g = BPoly::from_terms([(0, 1, a.clone()), (0, 0, c.clone())]);
                        expected.insert(PolyMap::new(f, g));
                    }
                }
            }
        }
    }
    let found: BTreeSet<PolyMap> = e.found.iter().cloned().collect();
    let ok = found == expected && found.len() == e.found.len() && e.verify(&d);
    let detail = format!("{} maps found, {} expected", e.found.len(), expected.len());
    *partial_x = Some(e);
    outcome(ok, detail)
}

fn criterion_4(runs: &[CatalogRun], partial_x: Option<&IsotropyEnumeration>) -> Outcome {
    let mut ok = true;
    let mut count = 0;
    let maps = runs
        .iter()
        .flat_map(|r| r.enumeration.found.iter())
        .chain(partial_x.into_iter().flat_map(|e| e.found.iter()));
    for m in maps {
        count += 1;
        match degree_sequence(m, 10) {
            Ok(est) => ok &= est.bounded && est.delta_estimate() == 1.0,
            Err(_) => ok = false,
        }
    }
    ok &= partial_x.is_some() && !runs.is_empty();

    let henon = parse_map("(y, y^2+x)").unwrap();
    let (henon_ok, root) = match degree_sequence(&henon, 10) {
        Ok(est) => {
            let doubling: Vec<u32> = (1..=10).map(|n| 1u32 << n).collect();
            let root = est.per_step_roots[9];
            (
                est.degree_sequence == doubling && (root - 2.0).abs() <= 0.02,
                root,
            )
        }
        Err(_) => (false, f64::NAN),
    };
    outcome(
        ok && henon_ok,
        format!("{count} enumerated maps bounded with delta 1; control root at n=10: {root:.4}"),
    )
}

fn random_upoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    let cs: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
    UPoly::from_i64(&cs)
}

fn random_bpoly(rng: &mut ChaCha8Rng, max_deg: u32, max_terms: usize) -> BPoly {
    let n = rng.gen_range(0..=max_terms);
    BPoly::from_terms((0..n).map(|_| {
        let i = rng.gen_range(0..=max_deg);
        let j = rng.gen_range(0..=max_deg - i);
        let c: i64 = rng.gen_range(-5..=5);
        (i, j, int(c))
    }))
}

fn criterion_5(witnesses: &mut Vec<(DarbouxWitness, Derivation)>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0de5);
    let mut agree = 0;
    let mut solutions = 0;
    let mut ok = true;
    for _ in 0..500 {
        let a = random_upoly(&mut rng, 4);
        let b = random_upoly(&mut rng, 6);
        let fast = solve_linear_ode(&a, &b);
        let slow = ode_brute_oracle(&a, &b, b.degree().unwrap_or(0) + 1);
        if fast == slow {
            agree += 1;
        } else {
            ok = false;
        }
        if let OdeVerdict::Solution(_) = &fast {
            solutions += 1;
            ok &= fast.verify(&a, &b);
        }
        let sf = ShamsuddinForm::new(a, b);
        if let SimplicityVerdict::NotSimple(w) = shamsuddin_is_simple(&sf) {
            witnesses.push((w, sf.to_derivation()));
        }
    }
    outcome(
        ok,
        format!("{agree}/500 agree, {solutions} solutions re-verified"),
    )
}

fn criterion_6(witnesses: &[(DarbouxWitness, Derivation)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1eb_1712);
    let mut ok = true;

    let mut leibniz = 0;
    for _ in 0..1000 {
        let d = Derivation::new(random_bpoly(&mut rng, 3, 5), random_bpoly(&mut rng, 3, 5));
        let p = random_bpoly(&mut rng, 3, 5);
        let q = random_bpoly(&mut rng, 3, 5);
        let lhs = d.apply(&(&p * &q));
        let rhs = &(&d.apply(&p) * &q) + &(&p * &d.apply(&q));
        leibniz += usize::from(lhs == rhs);
    }
    ok &= leibniz == 1000;

    let mut homomorphism = 0;
    for _ in 0..1000 {
        let p = random_bpoly(&mut rng, 3, 4);
        let q = random_bpoly(&mut rng, 3, 4);
        let f = random_bpoly(&mut rng, 2, 3);
        let g = random_bpoly(&mut rng, 2, 3);
        let s = |h: &BPoly| h.substitute(&f, &g);
        let good = s(&(&p * &q)) == &s(&p) * &s(&q) && s(&(&p + &q)) == &s(&p) + &s(&q);
        homomorphism += usize::from(good);
    }
    ok &= homomorphism == 1000;

    let mut round_trip = 0;
    for _ in 0..1000 {
        let mut p = random_bpoly(&mut rng, 6, 8);
        if rng.gen_bool(0.3) {
            let den = rng.gen_range(2..=7);
            p = p.scale(&BigRat::new(1.into(), den.into()));
        }
        round_trip += usize::from(parse_poly(&format(&p)).ok() == Some(p));
    }
    ok &= round_trip == 1000;

    let witnesses_ok = witnesses
        .iter()
        .filter(|(w, d)| witness_is_stable(w, d))
        .count();
    ok &= witnesses_ok == witnesses.len() && !witnesses.is_empty();

    let mut points = 0;
    let mut points_ok = 0;
    for k in 0..300 {
        let mut f = random_bpoly(&mut rng, 2, 4);
        let mut g = random_bpoly(&mut rng, 2, 4);
        if k % 2 == 0 {
            // plant a fixed point at (px, py)
            let px: i64 = rng.gen_range(-3..=3);
            let py: i64 = rng.gen_range(-3..=3);
            f = &BPoly::x() + &(&(&BPoly::x() - &BPoly::constant(int(px))) * &f);
            g = &BPoly::y() + &(&(&BPoly::y() - &BPoly::constant(int(py))) * &g);
        }
        let rho = PolyMap::new(f, g);
        match fixed_points(&rho) {
            Ok(report) => {
                for (x, y) in &report.rational_points {
                    points += 1;
                    points_ok += usize::from(rho.eval(x, y) == (x.clone(), y.clone()));
                }
            }
            Err(DynamicsError::IdentityMap) => {}
            Err(_) => ok = false,
        }
    }
    ok &= points_ok == points && points > 0;

    outcome(
        ok,
        format!(
            "leibniz {leibniz}/1000, substitution {homomorphism}/1000, round-trip {round_trip}/1000, \
             witnesses {witnesses_ok}/{}, fixed points {points_ok}/{points}",
            witnesses.len()
        ),
    )
}

fn has_rational_fixed_point(m: &PolyMap) -> bool {
    match fixed_points(m) {
        Ok(report) => !report.rational_points.is_empty(),
        Err(DynamicsError::IdentityMap) => true,
        Err(_) => false,
    }
}

fn criterion_7(runs: &[CatalogRun]) -> Outcome {
    let mut ok = !runs.is_empty();
    let mut checked = 0;
    for run in runs {
        let d = run.form.to_derivation();
        for m in &run.enumeration.found {
            checked += 1;
            if commutes(&d, m) && has_rational_fixed_point(m) {
                ok &= m.is_identity();
            }
        }
    }
    // without simplicity the implication fails: the Euler derivation
    // commutes with (-x, -y), whose only fixed point is the origin
    let euler = parse_derivation("dx=x; dy=y").unwrap();
    let flip = parse_map("(-x, -y)").unwrap();
    let control = commutes(&euler, &flip) && has_rational_fixed_point(&flip) && !flip.is_identity();
    ok &= control;
    outcome(
        ok,
        format!(
            "{checked} enumerated maps over {} simple forms; non-simple control violates it",
            runs.len()
        ),
    )
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration, bool) {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    (out, elapsed, in_time)
}

fn main() -> ExitCode {
    let mut runs = Vec::new();
    let mut partial_x = None;
    let mut witnesses = Vec::new();

    let results = [
        (
            "1",
            "basic simplicity examples",
            timed(Some(Duration::from_secs(1)), criterion_1),
        ),
        (
            "2",
            "trivial isotropy on the catalog",
            timed(Some(Duration::from_secs(60)), || criterion_2(&mut runs)),
        ),
        (
            "3",
            "isotropy of d/dx in the box",
            timed(None, || criterion_3(&mut partial_x)),
        ),
        (
            "4",
            "bounded degrees of commuting maps",
            timed(None, || criterion_4(&runs, partial_x.as_ref())),
        ),
        (
            "5",
            "ODE solver vs dense oracle",
            timed(Some(Duration::from_secs(30)), || {
                criterion_5(&mut witnesses)
            }),
        ),
        (
            "6",
            "algebraic property suites",
            timed(None, || criterion_6(&witnesses)),
        ),
        (
            "7",
            "fixed point implies identity",
            timed(None, || criterion_7(&runs)),
        ),
    ];

    let mut all = true;
    for (id, name, (out, elapsed, in_time)) in &results {
        let pass = out.pass && *in_time;
        all &= pass;
        let late = if *in_time { "" } else { " [over time limit]" };
        println!(
            "criterion {id} {}: {name} ({:.2}s){late} - {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
