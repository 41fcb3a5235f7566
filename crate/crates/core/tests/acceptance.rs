//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use qharm::constructions::{
    appendix_operator_check, f1_family, f1_section2, f2_rhs_check, lift_chain, lift_step, special_c,
};
use qharm::diffops::{
    commutator_defect, dq, dtilde, leibniz_defect, nabla, p2, Family, OperatorSpec, QSpec,
};
use qharm::harmonics::{
    cocharge_frobenius, frobenius, generic_dim_fraction_free, hilbert_series, kernel_basis_at,
    kernel_basis_generic, pij_module_check, singular_scan, special_harmonic_delta_ek,
    special_harmonic_e1m, t_factorial, ScanOptions, SpecialCertificate,
};
use qharm::repr::Partition;
use qharm::ring::{binom, int, rat};
use qharm::symfun::{elementary, vandermonde, verify_formula, FormulaId, VarSubset};
use qharm::{QPoly, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_poly, random_rational, random_symmetric, P};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: qharm::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let mut cases = 0;
    for n in 1..=6 {
        for id in FormulaId::ALL {
            let check = verify_formula(id, &VarSubset::all(n)).map_err(err)?;
            if let Some((t, _, _)) = &check.counterexample {
                return Err(format!("{} n={n} params={t:?}", id.name()));
            }
            cases += check.passed;
        }
    }
    Ok(format!("{cases} closed forms equal direct application"))
}

fn criterion_2() -> Outcome {
    let check = |n: usize, f: &P, what: &str| -> Result<(), String> {
        let all = VarSubset::all(n);
        let delta: P = vandermonde(&all);
        ensure(
            nabla(f, 1, &all) == delta.partial(0, 2) && nabla(f, 2, &all) == delta.partial(0, 3),
            format!("{what} n={n}"),
        )
    };
    for n in 3..=7 {
        check(n, &f1_section2(n).map_err(err)?, "f1_section2")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 5..=7 {
        let cs = [
            special_c(n).map_err(err)?,
            int(0),
            int(1),
            rat(-2, 3),
            random_rational(&mut rng, 1000),
        ];
        for c in cs {
            check(
                n,
                &f1_family(n, &c).map_err(err)?,
                &format!("f1_family c={c}"),
            )?;
        }
    }
    Ok("f1_section2 for n=3..7, f1_family for n=5..7 and five values of c".into())
}

fn criterion_3() -> Outcome {
    for n in [6, 7, 8] {
        for u in [int(0), int(1), rat(-2, 3)] {
            let r = f2_rhs_check(n, &u).map_err(err)?;
            ensure(r.passed(), format!("f2_rhs_check n={n} u={u}"))?;
        }
    }
    for n in [6, 7] {
        let c = special_c(n).map_err(err)?;
        ensure(
            appendix_operator_check(n, &c).map_err(err)?,
            format!("appendix coefficients n={n}"),
        )?;
    }
    Ok("reduced equation for n=6,7,8; coefficients reproduce -D̃_1 f, -D̃_2 f for n=6,7".into())
}

fn criterion_4() -> Outcome {
    let mut shown = Vec::new();
    for n in 1..=5 {
        let top = binom(n as i64, 2) as usize;
        let h = hilbert_series(n, &QSpec::Value(int(0)), top).map_err(err)?;
        ensure(h == t_factorial(n), format!("n={n}: {:?}", h.dims))?;
        shown.push(format!("n={n} {:?}", h.dims));
    }
    Ok(shown[3].clone() + "; n=1..5 equal [n]_t!")
}

fn criterion_5() -> Outcome {
    let mut equal = Vec::new();
    for n in 2..=4 {
        let top = binom(n as i64, 2) as usize;
        let h = hilbert_series(n, &QSpec::Generic, top + 2).map_err(err)?;
        let bound = t_factorial(n);
        ensure(h.le(&bound), format!("n={n}: {:?} exceeds [n]_t!", h.dims))?;
        ensure(
            h.dims[top + 1..].iter().all(|&x| x == 0),
            format!("n={n}: nonzero beyond C(n,2)"),
        )?;
        if h.dims[..=top] == bound.dims[..] {
            equal.push(n);
        }
    }
    Ok(format!(
        "bound holds for n=2,3,4; equality with [n]_t! observed for n={equal:?}"
    ))
}

fn criterion_6() -> Outcome {
    for n in 1..=4 {
        let top = binom(n as i64, 2) as usize;
        let f = frobenius(n, &QSpec::Value(int(0)), top).map_err(err)?;
        ensure(
            f == cocharge_frobenius(n),
            format!("n={n}: Frobenius differs from cocharge formula"),
        )?;
        let trivial = Partition::new(vec![n]);
        let sign = Partition::new(vec![1; n]);
        ensure(
            f.degrees[0].len() == 1 && f.multiplicity(0, &trivial) == 1,
            format!("n={n}: degree 0 not trivial"),
        )?;
        ensure(
            f.degrees[top].len() == 1 && f.multiplicity(top, &sign) == 1,
            format!("n={n}: top degree not sign"),
        )?;
    }
    Ok("frobenius(n, 0) equals the cocharge expansion for n=1..4".into())
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for n in 2..=5 {
        for k in 1..n {
            let c = special_harmonic_delta_ek(n, k).map_err(err)?;
            ensure(c.passed(), format!("delta-ek n={n} k={k}"))?;
            count += 1;
        }
        for k in 2..=n {
            for m in 1..=6 {
                let c = special_harmonic_e1m(n, k, m).map_err(err)?;
                ensure(c.passed(), format!("e1m n={n} k={k} m={m}"))?;
                count += 1;
            }
        }
    }
    for n in 2..=4 {
        for k in 2..=n {
            for m in 1..=3 {
                for (i, j) in [(0, 1), (1, 0), (0, n - 1)] {
                    let r = pij_module_check(n, k, m, i, j).map_err(err)?;
                    ensure(r.passed(), format!("p_ij n={n} k={k} m={m} ({i},{j})"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} certificates with negative controls"))
}

fn criterion_8() -> Outcome {
    let n = 3;
    let top = 6;
    let scan = singular_scan(n, 3, 6, top, ScanOptions::default()).map_err(err)?;
    let witness = |q0: &Rational| {
        scan.iter()
            .find(|e| &e.q0 == q0)
            .and_then(|e| e.witness_degree)
    };
    let in_kernel = |c: &SpecialCertificate| -> Result<bool, String> {
        Ok(c.passed()
            && kernel_basis_at(n, &c.q0, c.degree)
                .map_err(err)?
                .contains(&c.polynomial))
    };
    let certificates = [
        (rat(-1, 2), special_harmonic_delta_ek(3, 1).map_err(err)?),
        (rat(-1, 1), special_harmonic_e1m(3, 2, 1).map_err(err)?),
        (rat(-2, 5), special_harmonic_e1m(3, 2, 4).map_err(err)?),
        (rat(-1, 3), special_harmonic_e1m(3, 2, 5).map_err(err)?),
    ];
    let mut shown = Vec::new();
    for (q0, cert) in &certificates {
        ensure(
            &cert.q0 == q0,
            format!("certificate for {q0} has q0={}", cert.q0),
        )?;
        ensure(
            in_kernel(cert)?,
            format!("certificate for {q0} not in the kernel"),
        )?;
        let w = witness(q0).ok_or(format!("{q0} not flagged"))?;
        shown.push(format!("{q0}@{w} (certificate degree {})", cert.degree));
    }
    let expected = [(rat(-1, 2), 4), (rat(-2, 5), 5), (rat(-1, 3), 6)];
    for (q0, d) in &expected {
        ensure(
            witness(q0) == Some(*d),
            format!("{q0}: witness {:?}, expected {d}", witness(q0)),
        )?;
    }
    ensure(
        witness(&int(-1)).is_some_and(|w| w <= 3),
        "-1: witness above 3",
    )?;
    let flagged = scan.iter().filter(|e| e.is_singular()).count();
    Ok(format!(
        "{} ({} of {} values flagged)",
        shown.join(", "),
        flagged,
        scan.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for case in 0..100 {
        let n = 1 + case % 4;
        let f = random_poly(&mut rng, n, 5, 4);
        let q = random_rational(&mut rng, 20);
        for (k, h) in [(1, 2), (2, 1), (1, 3), (2, 3)] {
            ensure(
                commutator_defect(k, h, &q, &f).map_err(err)?.is_zero(),
                format!("commutator k={k} h={h} case {case}"),
            )?;
        }
        let fq = f.promote::<QPoly>();
        ensure(
            commutator_defect(1, 2, &QPoly::linear(int(0), int(1)), &fq)
                .map_err(err)?
                .is_zero(),
            format!("generic commutator case {case}"),
        )?;
    }
    for case in 0..100 {
        let n = 1 + case % 4;
        let f = random_poly(&mut rng, n, 3, 3);
        let g = random_poly(&mut rng, n, 3, 3);
        for fam in [Family::Nabla(2), Family::DTilde(1)] {
            let op = OperatorSpec::new(fam);
            ensure(
                leibniz_defect(&op, &f, &g).map_err(err)?.is_zero(),
                format!("Leibniz case {case}"),
            )?;
        }
    }
    for case in 0..40 {
        let n = 2 + case % 3;
        let all = VarSubset::all(n);
        let g = random_symmetric(&mut rng, n, 3);
        let lhs = nabla(&p2(&g, &all).map_err(err)?, 1, &all);
        let rhs = p2(&nabla(&g, 1, &all), &all).map_err(err)?;
        ensure(lhs == rhs, format!("[∇_1, P_2] case {case}"))?;
    }
    for n in 1..=6 {
        let all = VarSubset::all(n);
        for k in 0..=n as i64 {
            let e: P = elementary(k, &all);
            let lhs =
                &nabla(&nabla(&e, 1, &all), 1, &all) + &p2(&e, &all).map_err(err)?.scale(&int(2));
            ensure(lhs.is_zero(), format!("(∇_1² + 2P_2) e_{k}, n={n}"))?;
        }
    }
    for n in 1..=5 {
        let all = VarSubset::all(n);
        let delta: P = vandermonde(&all);
        let q = random_rational(&mut rng, 50);
        for k in 1..=n as u32 + 1 {
            ensure(
                nabla(&delta, k, &all).is_zero()
                    && dtilde(&delta, k, &all).is_zero()
                    && dq(&delta, k, &q, &all).is_zero(),
                format!("Vandermonde annihilation n={n} k={k}"),
            )?;
        }
    }
    let mut ranks = 0;
    for n in 1..=4 {
        let top = binom(n as i64, 2) as usize + 2;
        for d in 0..=top {
            let generic = kernel_basis_generic(n, d).map_err(err)?.dim();
            for _ in 0..2 {
                let mut q0 = random_rational(&mut rng, 10_000);
                while num_traits::Zero::is_zero(&q0) {
                    q0 = random_rational(&mut rng, 10_000);
                }
                let at = kernel_basis_at(n, &q0, d).map_err(err)?.dim();
                ensure(
                    at == generic,
                    format!("rank mismatch n={n} d={d} q0={q0}: {at} vs {generic}"),
                )?;
            }
            if n <= 3 || d <= 4 {
                let ff = generic_dim_fraction_free(n, d).map_err(err)?;
                ensure(
                    ff == generic,
                    format!("fraction-free mismatch n={n} d={d}: {ff} vs {generic}"),
                )?;
            }
            ranks += 1;
        }
    }
    Ok(format!(
        "all identities hold; generic rank cross-checked in {ranks} degrees"
    ))
}

fn criterion_10() -> Outcome {
    let mut shown = Vec::new();
    for n in 2..=5 {
        let all = VarSubset::all(n);
        let delta: P = vandermonde(&all);
        let f0 = delta.partial(0, 1);
        let step = lift_step(n, &f0).map_err(|e| format!("n={n}: {e}"))?;
        if n >= 3 {
            let diff = &step.particular - &f1_section2(n).map_err(err)?;
            ensure(
                nabla(&diff, 1, &all).is_zero() && nabla(&diff, 2, &all).is_zero(),
                format!("n={n}: difference from f1_section2 not in the kernel"),
            )?;
        }
        for k in 1..=2 {
            ensure(
                nabla(&step.particular, k, &all) == -dtilde(&f0, k, &all),
                format!("n={n}: first lift fails ∇_{k}"),
            )?;
        }
        if n <= 4 {
            let chain = lift_chain(n, &f0, 2).map_err(|e| format!("second lift n={n}: {e}"))?;
            let mut prev = f0.clone();
            for (i, s) in chain.iter().enumerate() {
                for k in 1..=2 {
                    ensure(
                        nabla(&s.particular, k, &all) == -dtilde(&prev, k, &all),
                        format!("n={n}: lift {} fails ∇_{k}", i + 1),
                    )?;
                }
                prev = s.particular.clone();
            }
            shown.push(format!(
                "n={n} kernel dims {}/{}",
                chain[0].kernel_dim, chain[1].kernel_dim
            ));
        } else {
            shown.push(format!("n={n} kernel dim {}", step.kernel_dim));
        }
    }
    Ok(shown.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("formula catalog", criterion_1),
        ("f1 contracts", criterion_2),
        ("appendix reduced equation", criterion_3),
        ("classical Hilbert series", criterion_4),
        ("generic Hilbert series bound", criterion_5),
        ("Frobenius characteristic", criterion_6),
        ("special harmonics", criterion_7),
        ("singular scan", criterion_8),
        ("property suites", criterion_9),
        ("lift solver", criterion_10),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} ({name})", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {label}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {label}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
