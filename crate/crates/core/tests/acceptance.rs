//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::Instant;

use c3_remodel::exactmath::{q, Framing};
use c3_remodel::verify::{
    check_operator_identity, check_half_framing, check_faber_pandharipande, check_framing_independence,
    check_hodge, check_pairing_route, check_structure, standard_framings, VerificationReport,
};
use c3_remodel::Result;

const MARGIN: i64 = 6;
const PROPERTY_CASES: u32 = 128;

fn outcome(rep: Result<VerificationReport>) -> std::result::Result<String, String> {
    match rep {
        Ok(r) if r.passed() => Ok(format!("{} checks", r.checks.len())),
        Ok(r) => Err(r
            .checks
            .iter()
            .filter(|c| c.witness.is_some())
            .map(|c| format!("{}: {}", c.id, c.witness.as_deref().unwrap_or("")))
            .collect::<Vec<_>>()
            .join("; ")),
        Err(e) => Err(e.to_string()),
    }
}

fn both(a: Result<VerificationReport>, b: Result<VerificationReport>) -> std::result::Result<String, String> {
    let (x, y) = (outcome(a), outcome(b));
    match (x, y) {
        (Ok(x), Ok(y)) => Ok(format!("{x} + {y}")),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn series_properties() -> std::result::Result<String, String> {
    for (name, prop) in common::PROPERTIES {
        prop(&mut common::runner(PROPERTY_CASES)).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} properties x {PROPERTY_CASES} cases",
        common::PROPERTIES.len()
    ))
}

fn main() {
    let one = Framing::fixed(q(1, 1)).unwrap();
    let sym = Framing::Symbolic;
    let mut framings = standard_framings();
    framings.push(Framing::Symbolic);

    type Criterion<'a> = (&'a str, Box<dyn Fn() -> std::result::Result<String, String> + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "free energies F_2..F_5 with symbolic framing equal the closed form",
            Box::new(|| outcome(check_faber_pandharipande(5, &sym, MARGIN))),
        ),
        (
            "free energies through F_7 at framing 1 equal the closed form",
            Box::new(|| outcome(check_faber_pandharipande(7, &one, MARGIN))),
        ),
        (
            "F_2 and F_3 agree over framings 1, 2, 3, 5, -1/2 and symbolic",
            Box::new(|| outcome(check_framing_independence(&[2, 3], &framings, MARGIN))),
        ),
        (
            "zeta-basis decomposition: spot values, polynomiality, reflection, zero remainder (g <= 3, n <= 2)",
            Box::new(|| outcome(check_hodge(3, 2, &sym, MARGIN))),
        ),
        (
            "pairing route, collapsed sum and dilaton for g = 2..5",
            Box::new(|| outcome(check_pairing_route(5, &sym, MARGIN))),
        ),
        (
            "symmetry, residues, pole bound, stability, base point and deck invariants (g <= 3, n <= 3)",
            Box::new(|| outcome(check_structure(3, 3, &sym, MARGIN))),
        ),
        (
            "operator identity for b <= 6 and the free energies at framing -1/2",
            Box::new(|| both(check_operator_identity(6, &sym), check_half_framing(MARGIN))),
        ),
        (
            "truncated series property suite",
            Box::new(series_properties),
        ),
    ];

    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS [{}] {name} ({detail}, {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
