//! One function per subcommand: checks, a JSON result, and a table for CSV/text output.

use qharm::constructions::{
    alpha_beta_gamma_delta, appendix_f2, appendix_g0_coefficients,
    appendix_g0_coefficients_printed, appendix_operator_check, f1_family, f1_section2,
    f2_rhs_check, f2_rhs_check_with, lift_chain, second_lift_c, second_lift_from_g0, special_c,
    G0Coefficients,
};
use qharm::diffops::{
    commutator_defect, dq, leibniz_defect, nabla, p2, Family, OperatorSpec, QSpec,
};
use qharm::harmonics::{
    frobenius_of, kernels, pij, pij_module_check, singular_scan, special_harmonic_delta_ek,
    special_harmonic_e1m, t_factorial, ScanOptions, SpecialCertificate,
};
use qharm::monomial::Monomial;
use qharm::ring::{binom, rat};
use qharm::symfun::{e_product_raw, elementary, vandermonde, verify_formula, FormulaId, VarSubset};
use qharm::text::{parse_poly, rational_text};
use qharm::{Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::Path;

use crate::config::{Command, Construct, Special, Verify};
use crate::report::{Check, Counterexample};

type P = Polynomial<Rational>;

/// Rows for CSV and text output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// The default table: one row per check.
    fn of_checks(checks: &[Check]) -> Self {
        let mut t = Table::new(&["check", "status", "detail"]);
        for c in checks {
            let status = serde_json::to_value(c.status).unwrap();
            t.push(vec![
                c.name.clone(),
                status.as_str().unwrap_or_default().to_string(),
                c.detail.clone(),
            ]);
        }
        t
    }
}

pub struct Outcome {
    pub checks: Vec<Check>,
    pub result: Value,
    pub table: Table,
}

impl Outcome {
    fn new(checks: Vec<Check>, result: Value) -> Self {
        let table = Table::of_checks(&checks);
        Outcome {
            checks,
            result,
            table,
        }
    }
}

pub fn run(cmd: &Command) -> qharm::Result<Outcome> {
    match cmd {
        Command::VerifyFormulas { n, formulas } => verify_formulas(*n, formulas),
        Command::Construct(Construct::F1 { n, c, .. }) => construct_f1(*n, c.as_ref()),
        Command::Construct(Construct::Lift { n, f0, steps }) => {
            construct_lift(*n, f0.as_deref(), *steps)
        }
        Command::Construct(Construct::F2 { n, u }) => construct_f2(*n, u),
        Command::Verify(Verify::Appendix { n, u }) => verify_appendix(*n, u),
        Command::Verify(Verify::Properties { n, cases, seed }) => {
            verify_properties(*n, *cases, *seed)
        }
        Command::Hilbert {
            n,
            q,
            max_degree,
            frobenius,
        } => hilbert(*n, q, *max_degree, *frobenius),
        Command::Scan {
            n,
            a_max,
            b_max,
            max_degree,
            frobenius,
        } => scan(*n, *a_max, *b_max, *max_degree, *frobenius),
        Command::Special(Special::DeltaEk { n, k }) => {
            certificate("delta-ek", special_harmonic_delta_ek(*n, *k)?)
        }
        Command::Special(Special::E1m { n, k, m }) => {
            certificate("e1m", special_harmonic_e1m(*n, *k, *m)?)
        }
        Command::Special(Special::Pij { n, k, m, i, j }) => special_pij(*n, *k, *m, *i - 1, *j - 1),
    }
}

fn verify_formulas(n: usize, ids: &[FormulaId]) -> qharm::Result<Outcome> {
    let ids: Vec<FormulaId> = if ids.is_empty() {
        FormulaId::ALL.to_vec()
    } else {
        ids.to_vec()
    };
    let all = VarSubset::all(n);
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for id in ids {
        let r = verify_formula(id, &all)?;
        let mut check = Check::new(
            id.name(),
            r.failed == 0,
            format!("{} passed, {} failed", r.passed, r.failed),
        );
        if let Some((params, closed, direct)) = r.counterexample {
            check = check.with_counterexample(Counterexample {
                input: format!("{params:?}"),
                expected: direct.to_string(),
                actual: closed.to_string(),
            });
        }
        checks.push(check);
        rows.push(json!({"id": id.name(), "passed": r.passed, "failed": r.failed}));
    }
    Ok(Outcome::new(checks, json!({"n": n, "formulas": rows})))
}

fn delta(n: usize) -> P {
    vandermonde(&VarSubset::all(n))
}

fn contract_checks(n: usize, f: &P) -> Vec<Check> {
    let all = VarSubset::all(n);
    let d = delta(n);
    (1..=2)
        .map(|k| {
            let want = d.partial(0, k + 1);
            let got = nabla(f, k, &all);
            let ok = got == want;
            let c = Check::new(format!("nabla{k} f1 = d1^{} Delta", k + 1), ok, "");
            if ok {
                c
            } else {
                c.with_counterexample(Counterexample {
                    input: f.to_string(),
                    expected: want.to_string(),
                    actual: got.to_string(),
                })
            }
        })
        .collect()
}

fn construct_f1(n: usize, c: Option<&Rational>) -> qharm::Result<Outcome> {
    let f = match c {
        None => f1_section2(n)?,
        Some(c) => f1_family(n, c)?,
    };
    let checks = contract_checks(n, &f);
    let result = json!({
        "n": n,
        "c": c.map(rational_text),
        "terms": f.len(),
        "polynomial": f.to_string(),
    });
    Ok(Outcome::new(checks, result))
}

fn construct_lift(n: usize, f0: Option<&Path>, steps: usize) -> qharm::Result<Outcome> {
    let all = VarSubset::all(n);
    let f0 = match f0 {
        None => delta(n).partial(0, 1),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                qharm::Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            parse_poly(text.trim(), Some(n))?
        }
    };
    let chain = match lift_chain(n, &f0, steps) {
        Ok(chain) => chain,
        Err(qharm::Error::Infeasible) => {
            let check = Check::new(
                "lift exists",
                false,
                format!("no solution within {steps} steps"),
            )
            .with_counterexample(Counterexample {
                input: f0.to_string(),
                expected: "a consistent linear system".into(),
                actual: "inconsistent".into(),
            });
            return Ok(Outcome::new(vec![check], json!({"n": n, "steps": []})));
        }
        Err(e) => return Err(e),
    };
    let mut checks = Vec::new();
    let mut out = Vec::new();
    let mut prev = f0;
    for (i, s) in chain.iter().enumerate() {
        for k in 1..=2 {
            let ok = nabla(&s.particular, k, &all) == -qharm::diffops::dtilde(&prev, k, &all);
            checks.push(Check::new(format!("step {} nabla{k}", i + 1), ok, ""));
        }
        out.push(json!({
            "step": i + 1,
            "kernel_dim": s.kernel_dim,
            "terms": s.particular.len(),
            "polynomial": s.particular.to_string(),
        }));
        prev = s.particular.clone();
    }
    Ok(Outcome::new(checks, json!({"n": n, "steps": out})))
}

fn g0_json(g: &G0Coefficients) -> Value {
    json!({
        "u": rational_text(&g.u),
        "v": rational_text(&g.v),
        "w": rational_text(&g.w),
        "y": rational_text(&g.y),
        "z": rational_text(&g.z),
    })
}

fn construct_f2(n: usize, u: &Rational) -> qharm::Result<Outcome> {
    let lift = appendix_f2(n, u)?;
    let checks = vec![
        Check::new("nabla1 f2 = -D~1 f1", lift.first, ""),
        Check::new("nabla2 f2 = -D~2 f1", lift.second, ""),
    ];
    let result = json!({
        "n": n,
        "c": rational_text(&lift.c),
        "g0": g0_json(&lift.g0),
        "terms": lift.f2.len(),
        "polynomial": lift.f2.to_string(),
    });
    Ok(Outcome::new(checks, result))
}

fn verify_appendix(n: usize, u: &Rational) -> qharm::Result<Outcome> {
    let c = special_c(n)?;
    let mut checks = vec![Check::new(
        "coefficients reproduce -D~1 f1, -D~2 f1",
        appendix_operator_check(n, &c)?,
        format!("c = {}", rational_text(&c)),
    )];
    let r = f2_rhs_check(n, u)?;
    let mut check = Check::new(
        "reduced equation",
        r.passed(),
        format!("u = {}", rational_text(u)),
    );
    if !r.passed() {
        check = check.with_counterexample(Counterexample {
            input: format!("{:?}", g0_json(&r.coefficients)),
            expected: "0".into(),
            actual: r.defect.to_string(),
        });
    }
    checks.push(check);
    let printed = f2_rhs_check_with(n, &appendix_g0_coefficients_printed(n, u)?)?;
    checks.push(Check::info(
        "reduced equation, printed v w y z",
        if printed.passed() {
            "no defect"
        } else {
            "nonzero defect"
        },
    ));
    let paper = second_lift_from_g0(n, &c, &appendix_g0_coefficients(n, u)?)?;
    checks.push(Check::info(
        "second lift at the printed c",
        if paper.passed() {
            "exists"
        } else {
            "nabla2 equation fails"
        },
    ));
    let fixed = appendix_f2(n, u)?;
    checks.push(Check::new(
        "second lift at the corrected c",
        fixed.passed(),
        format!("c = {}", rational_text(&fixed.c)),
    ));
    let [alpha, beta, gamma, delta] = alpha_beta_gamma_delta(n)?;
    let result = json!({
        "n": n,
        "c": rational_text(&c),
        "alpha": rational_text(&alpha),
        "beta": rational_text(&beta),
        "gamma": rational_text(&gamma),
        "delta": rational_text(&delta),
        "g0": g0_json(&r.coefficients),
        "corrected_c": rational_text(&second_lift_c(n)?),
    });
    Ok(Outcome::new(checks, result))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u16, terms: usize) -> P {
    let mut out = P::zero(n);
    for _ in 0..terms {
        let mut exps = vec![0u16; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
        out.add_term(Monomial::from_slice(&exps), &c);
    }
    out
}

fn verify_properties(n_max: usize, cases: usize, seed: u64) -> qharm::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tally = |name: &str, failures: Vec<String>, total: usize| {
        let ok = failures.is_empty();
        let c = Check::new(
            name,
            ok,
            format!("{} of {total} cases failed", failures.len()),
        );
        match failures.into_iter().next() {
            Some(f) => c.with_counterexample(Counterexample {
                input: f,
                expected: "0".into(),
                actual: "nonzero".into(),
            }),
            None => c,
        }
    };
    let mut checks = Vec::new();
    let mut fails = Vec::new();
    for i in 0..cases {
        let n = 1 + i % n_max;
        let f = random_poly(&mut rng, n, 5, 4);
        let q = rat(rng.gen_range(-20..=20), rng.gen_range(1..=20));
        if !commutator_defect(1, 2, &q, &f)?.is_zero() {
            fails.push(format!("q={q} f={f}"));
        }
    }
    checks.push(tally("commutator [D1,D2] = -q D3", fails, cases));
    let mut fails = Vec::new();
    for i in 0..cases {
        let n = 1 + i % n_max;
        let f = random_poly(&mut rng, n, 3, 3);
        let g = random_poly(&mut rng, n, 3, 3);
        for fam in [Family::Nabla(2), Family::DTilde(1)] {
            let op = OperatorSpec::new(fam);
            if !leibniz_defect(&op, &f, &g)?.is_zero() {
                fails.push(format!("{op}: f={f} g={g}"));
            }
        }
    }
    checks.push(tally("Leibniz rule", fails, cases));
    let mut fails = Vec::new();
    for i in 0..cases {
        let n = 1 + i % n_max;
        let all = VarSubset::all(n);
        let parts: Vec<i64> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(1..=n as i64))
            .collect();
        let g = e_product_raw::<Rational>(parts, &all);
        if nabla(&p2(&g, &all)?, 1, &all) != p2(&nabla(&g, 1, &all), &all)? {
            fails.push(format!("g={g}"));
        }
    }
    checks.push(tally("[nabla1, P2] = 0", fails, cases));
    let mut fails = Vec::new();
    let mut total = 0;
    for n in 1..=n_max {
        let all = VarSubset::all(n);
        for k in 0..=n as i64 {
            let e: P = elementary(k, &all);
            let two_p2 = p2(&e, &all)?.scale(&rat(2, 1));
            if !(&nabla(&nabla(&e, 1, &all), 1, &all) + &two_p2).is_zero() {
                fails.push(format!("n={n} k={k}"));
            }
            total += 1;
        }
        let d = delta(n);
        let q = rat(rng.gen_range(-20..=20), rng.gen_range(1..=20));
        for k in 1..=n as u32 + 1 {
            if !dq(&d, k, &q, &all).is_zero() {
                fails.push(format!("Vandermonde n={n} k={k} q={q}"));
            }
            total += 1;
        }
    }
    checks.push(tally(
        "(nabla1^2 + 2 P2) e_k = 0 and D_k Delta = 0",
        fails,
        total,
    ));
    Ok(Outcome::new(
        checks,
        json!({"n_max": n_max, "cases": cases, "seed": seed}),
    ))
}

fn hilbert(
    n: usize,
    q: &QSpec,
    max_degree: Option<usize>,
    with_frobenius: bool,
) -> qharm::Result<Outcome> {
    let top = binom(n as i64, 2) as usize;
    let max_degree = max_degree.unwrap_or(top);
    let ks = kernels(n, q, max_degree)?;
    let dims: Vec<u64> = ks.iter().map(|k| k.dim() as u64).collect();
    let mut checks = Vec::new();
    if *q == QSpec::Generic {
        let bound = t_factorial(n);
        let ok = dims
            .iter()
            .enumerate()
            .all(|(d, &x)| x <= bound.dims.get(d).copied().unwrap_or(0));
        checks.push(Check::new("coefficient-wise bound by [n]_t!", ok, ""));
        let equal = (0..=max_degree).all(|d| dims[d] == bound.dims.get(d).copied().unwrap_or(0));
        checks.push(Check::info(
            "equality with [n]_t!",
            if equal {
                "observed up to the cutoff"
            } else {
                "not observed"
            },
        ));
    }
    let mut result = json!({"n": n, "q": q.to_string(), "dims": dims, "max_degree": max_degree});
    let mut table = Table::new(&["degree", "dim"]);
    for (d, x) in dims.iter().enumerate() {
        table.push(vec![d.to_string(), x.to_string()]);
    }
    if with_frobenius {
        let f = frobenius_of(n, &ks)?;
        let per_degree: Vec<Value> = f
            .degrees
            .iter()
            .map(|m| Value::Object(m.iter().map(|(l, c)| (l.to_string(), json!(c))).collect()))
            .collect();
        result["frobenius"] = json!(per_degree);
        table = Table::new(&["degree", "dim", "frobenius"]);
        for (d, x) in dims.iter().enumerate() {
            let terms: Vec<String> = f.degrees[d]
                .iter()
                .map(|(l, c)| format!("{c}*s{l}"))
                .collect();
            table.push(vec![d.to_string(), x.to_string(), terms.join(" + ")]);
        }
    }
    Ok(Outcome {
        checks,
        result,
        table,
    })
}

fn scan(
    n: usize,
    a_max: u64,
    b_max: u64,
    max_degree: usize,
    frobenius: bool,
) -> qharm::Result<Outcome> {
    let entries = singular_scan(n, a_max, b_max, max_degree, ScanOptions { frobenius })?;
    let mut table = Table::new(&["q0", "a", "b", "witness_degree", "excess_dim"]);
    let mut rows = Vec::new();
    for e in &entries {
        let witness = e.witness_degree.map(|d| d.to_string()).unwrap_or_default();
        table.push(vec![
            rational_text(&e.q0),
            e.a.to_string(),
            e.b.to_string(),
            witness,
            e.excess_dim.to_string(),
        ]);
        rows.push(json!({
            "q0": rational_text(&e.q0),
            "a": e.a,
            "b": e.b,
            "witness_degree": e.witness_degree,
            "excess_dim": e.excess_dim,
            "status": e.status(max_degree),
            "dims": e.dims,
        }));
    }
    let flagged = entries.iter().filter(|e| e.is_singular()).count();
    let checks = vec![Check::info(
        "singular values",
        format!(
            "{flagged} of {} flagged; the others are not refuted up to degree {max_degree}",
            entries.len()
        ),
    )];
    let result =
        json!({"n": n, "a_max": a_max, "b_max": b_max, "max_degree": max_degree, "entries": rows});
    Ok(Outcome {
        checks,
        result,
        table,
    })
}

fn certificate(kind: &str, c: SpecialCertificate) -> qharm::Result<Outcome> {
    let checks = vec![
        Check::new(
            "annihilated at q0",
            c.annihilated,
            format!("q0 = {}", rational_text(&c.q0)),
        ),
        Check::new("eigen-relations", c.eigen_relations, ""),
        Check::new(
            "not annihilated at control value",
            !c.control_annihilated,
            format!("q = {}", rational_text(&c.control_q0)),
        ),
    ];
    let result = json!({
        "kind": kind,
        "q0": rational_text(&c.q0),
        "degree": c.degree,
        "polynomial": c.polynomial.to_string(),
    });
    Ok(Outcome::new(checks, result))
}

fn special_pij(n: usize, k: usize, m: u32, i: usize, j: usize) -> qharm::Result<Outcome> {
    let r = pij_module_check(n, k, m, i, j)?;
    let checks = vec![
        Check::new("nonzero", r.nonzero, ""),
        Check::new(
            "harmonic at q0",
            r.harmonic,
            format!("q0 = {}", rational_text(&r.q0)),
        ),
        Check::new("antisymmetric", r.antisymmetric, ""),
        Check::new("cocycle", r.cocycle, ""),
        Check::new("equivariant", r.equivariant, ""),
    ];
    let p = pij(n, k, m, i, j)?;
    let result = json!({"q0": rational_text(&r.q0), "polynomial": p.to_string()});
    Ok(Outcome::new(checks, result))
}
