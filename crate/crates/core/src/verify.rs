//! Verification suites. Each suite returns a report with one entry per
//! identity checked; a failing entry carries the offending values.
//!
//! Precondition violations (bad genus, degenerate framing) are errors, not
//! report entries. So is running out of precision after the retry.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curve::{MirrorCurve, TPoly};
use crate::error::{Error, Result};
use crate::exactmath::{
    faber_pandharipande, q, Field, FieldScalar, Framing, RatFunc, Rational,
};
use crate::recursion::{
    decompose_in_zeta_basis, default_order, engine, is_stable, reconstruct, with_retry,
    zeta_coefficients, CorrelatorTensor, Recursion,
};
use crate::series::TruncatedSeries;

macro_rules! by_mode {
    ($framing:expr, $f:ident => $body:expr) => {
        match $framing {
            Framing::Symbolic => {
                type $f = RatFunc;
                $body
            }
            Framing::Fixed(_) => {
                type $f = Rational;
                $body
            }
        }
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub framing: String,
    pub order: i64,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl VerificationReport {
    pub fn new(suite: &str, framing: &str, order: i64) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            framing: framing.to_string(),
            order,
            checks: Vec::new(),
            status: Status::Pass,
        }
    }

    /// Records a check; `Err(witness)` marks it failed.
    pub fn record(&mut self, id: impl Into<String>, anchor: &str, outcome: std::result::Result<(), String>) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => {
                self.status = Status::Fail;
                (Status::Fail, Some(w))
            }
        };
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.to_string(),
            status,
            witness,
        });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Checks whose id starts with `prefix`.
    pub fn checks_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    /// Concatenates several reports under one suite name.
    pub fn combine(suite: &str, framing: &str, parts: Vec<VerificationReport>) -> Self {
        let order = parts.iter().map(|p| p.order).max().unwrap_or(0);
        let mut out = VerificationReport::new(suite, framing, order);
        for p in parts {
            if !p.passed() {
                out.status = Status::Fail;
            }
            out.checks.extend(p.checks);
        }
        out
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "suite {} | framing {} | order {} | {}",
            self.suite,
            self.framing,
            self.order,
            status_word(self.status)
        );
        for c in &self.checks {
            let _ = write!(s, "  {:<width$}  {}  {}", c.id, status_word(c.status), c.anchor);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  [{w}]");
            }
            s.push('\n');
        }
        s
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    }
}

fn expect_eq<F: Field>(got: &F, want: &F) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got}, expected {want}"))
    }
}

/// A symbolic expectation, evaluated when the framing is fixed.
fn expected(r: &RatFunc, framing: &Framing) -> Result<FieldScalar> {
    Ok(match framing {
        Framing::Symbolic => FieldScalar::RatFunc(r.clone()),
        Framing::Fixed(f0) => FieldScalar::Rational(r.evaluate(f0)?),
    })
}

fn expect_scalar<F: Field>(got: &F, want: &FieldScalar) -> std::result::Result<(), String> {
    let g = got.to_scalar();
    if &g == want {
        Ok(())
    } else {
        Err(format!("got {g}, expected {want}"))
    }
}

fn rf(s: &str) -> RatFunc {
    s.parse().expect("valid literal")
}

const FP_ANCHOR: &str = "F_g = (-1)^g |B_2g| |B_2g-2| / (2 (2g) (2g-2) (2g-2)!)";

fn energies_at<F: Field>(framing: &Framing, g_max: u32, order: i64) -> Result<Vec<F>> {
    let mut r = engine::<F>(framing, order)?;
    (2..=g_max).map(|g| r.free_energy(g)).collect()
}

/// Free energies against the closed form for `2 <= g <= g_max`, plus a
/// recomputation at order + 2.
pub fn check_faber_pandharipande(g_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    if g_max < 2 {
        return Err(Error::Domain(format!("g_max must be >= 2, got {g_max}")));
    }
    by_mode!(framing, F => fp_impl::<F>(g_max, framing, margin))
}

fn fp_impl<F: Field>(g_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    let (order, vals) = with_retry(default_order(g_max, 1, margin), |o| {
        Ok((o, energies_at::<F>(framing, g_max, o)?))
    })?;
    let mut rep = VerificationReport::new("fp", &framing.to_string(), order);
    for (i, v) in vals.iter().enumerate() {
        let g = i as u32 + 2;
        let want = F::from_rational(&faber_pandharipande(g)?);
        rep.record(format!("fp.g{g}"), FP_ANCHOR, expect_eq(v, &want));
        if framing.is_symbolic() {
            let c = v.to_scalar().as_constant();
            rep.record(
                format!("fp.g{g}.constant"),
                "F_g does not depend on the framing",
                c.map(|_| ()).ok_or_else(|| format!("F_{g} = {v} depends on f")),
            );
        }
    }
    let hi = energies_at::<F>(framing, g_max, order + 2)?;
    rep.record(
        "fp.stable",
        "values unchanged at truncation order + 2",
        if hi == vals {
            Ok(())
        } else {
            Err(format!("order {order}: {vals:?}; order {}: {hi:?}", order + 2))
        },
    );
    Ok(rep)
}

/// The framings used by default for the independence check.
pub fn standard_framings() -> Vec<Framing> {
    [q(1, 1), q(2, 1), q(3, 1), q(5, 1), q(-1, 2)]
        .into_iter()
        .map(|v| Framing::fixed(v).expect("generic"))
        .collect()
}

/// `F_g` for each listed genus is the same rational number for every listed
/// framing (and a constant function when the framing is symbolic).
pub fn check_framing_independence(
    genera: &[u32],
    framings: &[Framing],
    margin: i64,
) -> Result<VerificationReport> {
    let g_max = *genera.iter().max().ok_or_else(|| Error::Domain("no genus given".into()))?;
    if genera.iter().any(|&g| g < 2) {
        return Err(Error::Domain("framing independence is checked for g >= 2".into()));
    }
    let mut table: Vec<(Framing, Vec<FieldScalar>)> = Vec::new();
    let mut order = 0;
    for fr in framings {
        let (o, vals) = by_mode!(fr, F => {
            with_retry(default_order(g_max, 1, margin), |o| {
                let v = energies_at::<F>(fr, g_max, o)?;
                Ok((o, v.iter().map(Field::to_scalar).collect::<Vec<_>>()))
            })?
        });
        order = order.max(o);
        table.push((fr.clone(), vals));
    }
    let label = framings.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",");
    let mut rep = VerificationReport::new("framing", &label, order);
    for &g in genera {
        let idx = (g - 2) as usize;
        let want = faber_pandharipande(g)?;
        let mut bad = Vec::new();
        for (fr, vals) in &table {
            match vals[idx].as_constant() {
                Some(c) if c == want => {}
                _ => bad.push(format!("f={fr}: {}", vals[idx])),
            }
        }
        rep.record(
            format!("framing.g{g}"),
            "F_g is framing-independent",
            if bad.is_empty() {
                Ok(())
            } else {
                Err(format!("expected {want} everywhere; {}", bad.join("; ")))
            },
        );
    }
    Ok(rep)
}

/// The free energy through the one-point Hodge coefficients: the residue
/// pairings, the collapsed route and the dilaton relation.
pub fn check_pairing_route(g_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    if g_max < 2 {
        return Err(Error::Domain(format!("g_max must be >= 2, got {g_max}")));
    }
    by_mode!(framing, F => pairing_route_impl::<F>(g_max, framing, margin))
}

fn pairing_route_impl<F: Field>(g_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    with_retry(default_order(g_max, 1, margin), |order| {
        let mut rep = VerificationReport::new("lemma", &framing.to_string(), order);
        let mut r = engine::<F>(framing, order)?;
        let f = r.curve().f().clone();
        let ff1 = f.mul(&f.add(&F::one()));
        for b in 0..=(3 * g_max as usize - 1) {
            let got = r.curve().residue_pairing(b)?;
            let want = if b == 1 { ff1.inv()? } else { F::zero() };
            rep.record(
                format!("lemma.pairing.b{b}"),
                "R_b = Res phi_-1 dphi_(b-1) is 1/(f(f+1)) at b = 1 and 0 otherwise",
                expect_eq(&got, &want),
            );
        }
        for g in 2..=g_max {
            let fg = r.free_energy(g)?;
            let w = r.correlator(g, 1)?;
            let table = match decompose_in_zeta_basis(r.curve(), &w) {
                Ok(t) => t,
                Err(e) if !e.is_precision() => {
                    rep.record(format!("lemma.route.g{g}"), "zeta-basis decomposition", Err(e.to_string()));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let two_minus = F::from_int(2 - 2 * g as i64);
            let mut route = F::zero();
            for (b, v) in &table.entries {
                route.add_mul(v, &r.curve().residue_pairing(b[0] as usize)?);
            }
            let route = route.div(&two_minus)?;
            rep.record(
                format!("lemma.route.g{g}"),
                "F_g = sum_b <tau_b Gamma_g> R_b / (2 - 2g)",
                expect_eq(&route, &fg),
            );
            let tau1 = table.get(&[1]);
            let collapsed = tau1.div(&two_minus.mul(&ff1))?;
            rep.record(
                format!("lemma.collapsed.g{g}"),
                "F_g = <tau_1 Gamma_g> / ((2 - 2g) f (f+1))",
                expect_eq(&collapsed, &fg),
            );
            let fp = F::from_rational(&faber_pandharipande(g)?);
            let dilaton = F::from_int(-(2 * g as i64 - 2)).mul(&ff1).mul(&fp);
            rep.record(
                format!("lemma.dilaton.g{g}"),
                "dilaton: <tau_1 Gamma_g> = -(2g - 2) f (f+1) F_g",
                expect_eq(&tau1, &dilaton),
            );
        }
        Ok(rep)
    })
}

/// Spot values of the zeta-basis coefficients and their structure for every
/// stable `(g, n)` with `g <= g_max`, `n <= n_max`.
pub fn check_hodge(g_max: u32, n_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    by_mode!(framing, F => hodge_impl::<F>(g_max, n_max, framing, margin))
}

fn hodge_impl<F: Field>(
    g_max: u32,
    n_max: u32,
    framing: &Framing,
    margin: i64,
) -> Result<VerificationReport> {
    let top = (g_max.max(2), n_max);
    with_retry(default_order(top.0, top.1, margin), |order| {
        let mut rep = VerificationReport::new("hodge", &framing.to_string(), order);
        let mut r = engine::<F>(framing, order)?;
        let spots: [(u32, u32, &[u32], &str); 4] = [
            (0, 3, &[0, 0, 0], "1"),
            (1, 1, &[0], "(f^2+f+1)/24"),
            (1, 1, &[1], "(-f^2-f)/24"),
            (2, 1, &[1], "(-f^2-f)/2880"),
        ];
        for (g, n, b, want) in spots {
            let t = r.correlator(g, n)?;
            let got = decompose_in_zeta_basis(r.curve(), &t).map(|h| h.get(b));
            let outcome = match got {
                Ok(v) => expect_scalar(&v, &expected(&rf(want), framing)?),
                Err(e) if e.is_precision() => return Err(e),
                Err(e) => Err(e.to_string()),
            };
            rep.record(
                format!("hodge.W{g}_{n}.b{}", b.iter().map(u32::to_string).collect::<Vec<_>>().join("_")),
                "Hodge coefficient read off the zeta-basis expansion",
                outcome,
            );
        }
        for g in 0..=g_max {
            for n in 1..=n_max {
                if !is_stable(g, n) {
                    continue;
                }
                let t = r.correlator(g, n)?;
                let id = format!("hodge.W{g}_{n}");
                let table = match decompose_in_zeta_basis(r.curve(), &t) {
                    Ok(h) => h,
                    Err(e) if e.is_precision() => return Err(e),
                    Err(e) => {
                        rep.record(format!("{id}.remainder"), "zero remainder in the zeta basis", Err(e.to_string()));
                        continue;
                    }
                };
                let coeffs = zeta_coefficients(r.curve(), &t)?;
                let back = reconstruct(r.curve(), g, n, &coeffs)?;
                rep.record(
                    format!("{id}.remainder"),
                    "zero remainder in the zeta basis",
                    if back.entries() == t.entries() {
                        Ok(())
                    } else {
                        Err("reconstruction differs from the tensor".into())
                    },
                );
                let dim = 3 * g as i64 - 3 + n as i64;
                let over: Vec<_> = table
                    .entries
                    .keys()
                    .filter(|b| b.iter().map(|&x| x as i64).sum::<i64>() > dim)
                    .collect();
                rep.record(
                    format!("{id}.dimension"),
                    "coefficients vanish unless sum b_i <= 3g - 3 + n",
                    if over.is_empty() { Ok(()) } else { Err(format!("nonzero at {over:?}")) },
                );
                if framing.is_symbolic() {
                    let mut bad_poly = Vec::new();
                    let mut bad_refl = Vec::new();
                    for (b, v) in &table.entries {
                        let s = v.to_scalar();
                        if !s.is_polynomial() {
                            bad_poly.push(format!("{b:?}: {s}"));
                        }
                        if s.reflect_framing()? != s {
                            bad_refl.push(format!("{b:?}: {s}"));
                        }
                    }
                    rep.record(
                        format!("{id}.polynomial"),
                        "coefficients are polynomials in f",
                        if bad_poly.is_empty() { Ok(()) } else { Err(bad_poly.join("; ")) },
                    );
                    rep.record(
                        format!("{id}.reflection"),
                        "coefficients are invariant under f -> -1 - f",
                        if bad_refl.is_empty() { Ok(()) } else { Err(bad_refl.join("; ")) },
                    );
                }
            }
        }
        Ok(rep)
    })
}

/// Structural invariants of every stable tensor with `g <= g_max`,
/// `n <= n_max`, the deck map, the base point of the primitive and
/// truncation stability.
pub fn check_structure(g_max: u32, n_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    by_mode!(framing, F => structure_impl::<F>(g_max, n_max, framing, margin))
}

type TensorList<F> = Vec<((u32, u32), Result<CorrelatorTensor<F>>)>;

fn tensors_at<F: Field>(
    framing: &Framing,
    order: i64,
    g_max: u32,
    n_max: u32,
) -> Result<(Recursion<F>, TensorList<F>)> {
    let mut r = engine::<F>(framing, order)?;
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 1..=n_max {
            if !is_stable(g, n) {
                continue;
            }
            match r.correlator(g, n) {
                Ok(t) => out.push(((g, n), Ok((*t).clone()))),
                Err(e) if e.is_precision() => return Err(e),
                Err(e) => out.push(((g, n), Err(e))),
            }
        }
    }
    Ok((r, out))
}

fn structure_impl<F: Field>(
    g_max: u32,
    n_max: u32,
    framing: &Framing,
    margin: i64,
) -> Result<VerificationReport> {
    let (order, (mut r, tensors)) = with_retry(default_order(g_max.max(2), n_max, margin), |o| {
        Ok((o, tensors_at::<F>(framing, o, g_max, n_max)?))
    })?;
    let mut rep = VerificationReport::new("structure", &framing.to_string(), order);
    let (_, hi) = tensors_at::<F>(framing, order + 2, g_max, n_max)?;
    for (((g, n), t), (_, t_hi)) in tensors.iter().zip(&hi) {
        let id = format!("structure.W{g}_{n}");
        let t = match t {
            Ok(t) => t,
            Err(e) => {
                rep.record(format!("{id}.symmetric"), "W^g_n is symmetric in its slots", Err(e.to_string()));
                continue;
            }
        };
        rep.record(format!("{id}.symmetric"), "W^g_n is symmetric in its slots", Ok(()));
        let with_zero: Vec<_> = t.entries().keys().filter(|k| k.contains(&0)).collect();
        rep.record(
            format!("{id}.residue_free"),
            "no u^-1 du term in any slot",
            if with_zero.is_empty() { Ok(()) } else { Err(format!("{with_zero:?}")) },
        );
        let bound = 6 * g + 2 * n - 4;
        let top = t.max_index() + 1;
        rep.record(
            format!("{id}.pole_bound"),
            "maximal pole order per slot is 6g - 4 + 2n",
            if top == bound { Ok(()) } else { Err(format!("max pole order {top}, bound {bound}")) },
        );
        rep.record(
            format!("{id}.stable"),
            "tensor unchanged at truncation order + 2",
            match t_hi {
                Ok(h) if h.entries() == t.entries() => Ok(()),
                Ok(_) => Err("tensor differs at higher order".into()),
                Err(e) => Err(e.to_string()),
            },
        );
    }
    let one = F::one();
    for g in 2..=g_max {
        let a = r.free_energy(g)?;
        let b = r.free_energy_with_base_shift(g, &one)?;
        rep.record(
            format!("structure.F{g}.base_point"),
            "F_g does not depend on the base point of the primitive",
            expect_eq(&b, &a),
        );
    }
    let c = r.curve();
    let s = c.deck();
    let ss = TruncatedSeries::compose(s, s)?;
    let id = TruncatedSeries::monomial(F::one(), 1, ss.trunc_order());
    rep.record(
        "structure.deck.involution",
        "s(s(u)) = u",
        if ss == id { Ok(()) } else { Err(format!("{:?}", ss.to_debug_json())) },
    );
    let gs = TruncatedSeries::compose(c.potential(), s)?.sub(c.potential());
    rep.record(
        "structure.deck.invariance",
        "G(s(u)) = G(u)",
        if gs.is_zero() { Ok(()) } else { Err(format!("{:?}", gs.to_debug_json())) },
    );
    Ok(rep)
}

/// `D^b t = (-1)^b (f+1) phi_b(t)` with `D = -t(ft+1)(t-1)/(f+1) d/dt`, and
/// `t = (f+1) phi_0(t) + 1`.
pub fn check_operator_identity(b_max: u32, framing: &Framing) -> Result<VerificationReport> {
    if b_max < 1 {
        return Err(Error::Domain("b_max must be >= 1".into()));
    }
    by_mode!(framing, F => operator_identity_impl::<F>(b_max, framing))
}

fn operator_identity_impl<F: Field>(b_max: u32, framing: &Framing) -> Result<VerificationReport> {
    let c = MirrorCurve::<F>::build(framing, 8)?;
    let f = c.f().clone();
    let fp1 = f.add(&F::one());
    let mut rep = VerificationReport::new("appendix-a", &framing.to_string(), c.order());
    // t (f t + 1) (t - 1) built factor by factor
    let t = TPoly(vec![F::zero(), F::one()]);
    let ft1 = TPoly(vec![F::one(), f.clone()]);
    let tm1 = TPoly(vec![F::one().neg(), F::one()]);
    let m = t.mul(&ft1).mul(&tm1).scale(&fp1.inv()?.neg());
    let xi0 = t.clone();
    let base = c.phi_b(0)?.scale(&fp1).add(&TPoly(vec![F::one()]));
    rep.record(
        "appendix-a.b0",
        "xi_0 = (f+1) phi_0 + 1 (square-root prefactor divided out)",
        if base == xi0 { Ok(()) } else { Err(format!("{:?}", base.0)) },
    );
    let mut cur = xi0;
    for b in 1..=b_max {
        cur = m.mul(&cur.derivative());
        let sign = if b % 2 == 0 { F::one() } else { F::one().neg() };
        let want = c.phi_b(b as usize)?.scale(&fp1.mul(&sign));
        rep.record(
            format!("appendix-a.b{b}"),
            "D^b xi_0 = (-1)^b (f+1) phi_b",
            if cur == want {
                Ok(())
            } else {
                Err(format!("got {:?}, expected {:?}", cur.0, want.0))
            },
        );
    }
    Ok(rep)
}

/// At `f = -1/2` the curve `x = y^f (1 - y)` squares to `x^2 = (1-y)^2 / y`,
/// and the free energies are the closed-form values.
pub fn check_half_framing(margin: i64) -> Result<VerificationReport> {
    let f0 = q(-1, 2);
    let framing = Framing::fixed(f0.clone())?;
    let (order, vals) = with_retry(default_order(3, 1, margin), |o| {
        Ok((o, energies_at::<Rational>(&framing, 3, o)?))
    })?;
    let mut rep = VerificationReport::new("appendix-b", &framing.to_string(), order);

    // Rational functions of t: y(t) = (1/t + f)/(f + 1) = (1 + f t)/((f + 1) t).
    let fr = RatFunc::from_rational(&f0);
    let one = RatFunc::one();
    let t = RatFunc::var();
    let y = one.add(&fr.mul(&t)).div(&fr.add(&one).mul(&t))?;
    let two_f = &f0 * &q(2, 1);
    let outcome = if !two_f.is_integer() {
        Err(format!("2f = {two_f} is not an integer"))
    } else {
        let e: i64 = two_f.numer().try_into().map_err(|_| Error::Arithmetic("exponent".into()))?;
        let y_pow = if e >= 0 {
            y.pow(e as u32)
        } else {
            y.inv()?.pow((-e) as u32)
        };
        let one_minus_y = one.sub(&y);
        let x_sq = y_pow.mul(&one_minus_y).mul(&one_minus_y);
        let rhs = one_minus_y.mul(&one_minus_y).div(&y)?;
        let curve_eq = x_sq.mul(&y).sub(&one_minus_y.mul(&one_minus_y));
        if x_sq == rhs && curve_eq.is_zero() {
            Ok(())
        } else {
            Err(format!(
                "x^2 = {} but (1-y)^2/y = {}",
                x_sq.to_string_in("t"),
                rhs.to_string_in("t")
            ))
        }
    };
    rep.record(
        "appendix-b.curve",
        "x^2 = (1-y)^2/y is the mirror curve at f = -1/2",
        outcome,
    );
    for (i, v) in vals.iter().enumerate() {
        let g = i as u32 + 2;
        rep.record(
            format!("appendix-b.g{g}"),
            "free energy at f = -1/2 equals the closed form",
            expect_eq(v, &faber_pandharipande(g)?),
        );
    }
    Ok(rep)
}

/// Names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "fp",
    "framing",
    "lemma",
    "hodge",
    "structure",
    "appendix-a",
    "appendix-b",
    "all",
];

/// Runs a named suite with CLI-style parameters.
pub fn run_suite(suite: &str, g_max: u32, framing: &Framing, margin: i64) -> Result<VerificationReport> {
    match suite {
        "fp" => check_faber_pandharipande(g_max, framing, margin),
        "framing" => {
            let mut frs = standard_framings();
            if !frs.contains(framing) {
                frs.push(framing.clone());
            }
            let genera: Vec<u32> = (2..=g_max.clamp(2, 3)).collect();
            check_framing_independence(&genera, &frs, margin)
        }
        "lemma" => check_pairing_route(g_max, framing, margin),
        "hodge" => check_hodge(g_max.min(3), 2, framing, margin),
        "structure" => check_structure(g_max.min(3), 3, framing, margin),
        "appendix-a" => check_operator_identity(6, framing),
        "appendix-b" => check_half_framing(margin),
        "all" => {
            let parts = SUITES
                .iter()
                .filter(|s| **s != "all")
                .map(|s| run_suite(s, g_max, framing, margin))
                .collect::<Result<Vec<_>>>()?;
            Ok(VerificationReport::combine("all", &framing.to_string(), parts))
        }
        other => Err(Error::Parse(format!(
            "unknown suite {other:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
