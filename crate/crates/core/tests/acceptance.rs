//! Acceptance suite. Runs each criterion exactly, prints one PASS/FAIL
//! line per criterion and exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use wcurve_core::arith::{q, Rational};
use wcurve_core::boundary::{build_complex, intersect_curves, spin_balance, ClassCurve};
use wcurve_core::euler::{
    chi_p, chi_q, chi_q_via_rm_prototypes, chi_s, chi_w, chi_w_components, chi_x, h2,
    one_cylinder_cusps,
};
use wcurve_core::prototypes::{enumerate, Kind, Prototype};
use wcurve_core::siegel_veech::{billiards_constant, sv_constant, sv_constant_components};
use wcurve_core::QuadNum;

use common::{classes, disc, discriminants, matches_classes, K};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(D, (num, den) of the rational part, (num, den) of the radical part)`.
type Row = (i64, (i64, i64), (i64, i64));

fn qn(d: i64, rn: i64, rd: i64, sn: i64, sd: i64) -> QuadNum {
    QuadNum::new(d, q(rn, rd), q(sn, sd))
}

fn nonsquare(d: i64) -> bool {
    !disc(d).is_square()
}

/// Reference c_D values for nonsquare 5 <= D < 100.
const C_D_REFERENCE: [Row; 40] = [
    (5, (25, 3), (0, 1)),
    (8, (28, 3), (0, 1)),
    (12, (26, 3), (0, 1)),
    (13, (91, 9), (0, 1)),
    (17, (221, 24), (1, 8)),
    (20, (31, 3), (0, 1)),
    (21, (133, 15), (0, 1)),
    (24, (148, 15), (0, 1)),
    (28, (82, 9), (0, 1)),
    (29, (377, 35), (0, 1)),
    (32, (190, 21), (0, 1)),
    (33, (473, 48), (-11, 144)),
    (37, (9139, 945), (0, 1)),
    (40, (1924, 189), (0, 1)),
    (41, (8897, 960), (-23, 320)),
    (44, (7682, 735), (0, 1)),
    (45, (299, 33), (0, 1)),
    (48, (325, 33), (0, 1)),
    (52, (1283, 135), (0, 1)),
    (53, (228695, 21021), (0, 1)),
    (56, (1796, 195), (0, 1)),
    (57, (23693, 2352), (29, 784)),
    (60, (2158, 231), (0, 1)),
    (61, (194651, 19305), (0, 1)),
    (65, (52429, 5376), (113, 1792)),
    (68, (413, 39), (0, 1)),
    (69, (26611, 2805), (0, 1)),
    (72, (18868, 1785), (0, 1)),
    (73, (3285, 352), (23, 864)),
    (76, (2822, 285), (0, 1)),
    (77, (116699, 12597), (0, 1)),
    (80, (12631, 1254), (0, 1)),
    (84, (487, 51), (0, 1)),
    (85, (336821, 32319), (0, 1)),
    (88, (182236, 18837), (0, 1)),
    (89, (702833, 68640), (-831, 22880)),
    (92, (204178, 21945), (0, 1)),
    (93, (2823449, 270963), (0, 1)),
    (96, (3194, 345), (0, 1)),
    (97, (44329, 4488), (-1145, 40392)),
];

const BILLIARDS_REFERENCE: [Row; 10] = [
    (5, (25, 3), (0, 1)),
    (8, (28, 3), (0, 1)),
    (12, (26, 3), (0, 1)),
    (13, (91, 9), (0, 1)),
    (17, (221, 24), (1, 8)),
    (20, (31, 3), (0, 1)),
    (21, (133, 15), (0, 1)),
    (24, (148, 15), (0, 1)),
    (28, (82, 9), (0, 1)),
    (29, (377, 35), (0, 1)),
];

fn c_d_reference_values() -> Outcome {
    let listed: Vec<i64> = C_D_REFERENCE.iter().map(|r| r.0).collect();
    let expected: Vec<i64> = discriminants(5, 99)
        .into_iter()
        .filter(|&d| nonsquare(d))
        .collect();
    ensure(listed == expected, || {
        "table rows are not the nonsquare D in [5, 100)".into()
    })?;
    for &(d, (rn, rd), (sn, sd)) in &C_D_REFERENCE {
        let reference = qn(d, rn, rd, sn, sd);
        if d % 8 == 1 {
            let (c0, c1) = sv_constant_components(disc(d)).map_err(|e| e.to_string())?;
            ensure(reference == c0 || reference == c1, || {
                format!("D={d}: {reference} not in {{{c0}, {c1}}}")
            })?;
        } else {
            let c = sv_constant(disc(d)).map_err(|e| e.to_string())?;
            ensure(c == reference, || {
                format!("D={d}: got {c}, reference {reference}")
            })?;
        }
    }
    Ok(())
}

fn billiard_constants() -> Outcome {
    for &(d, (rn, rd), (sn, sd)) in &BILLIARDS_REFERENCE {
        let reference = qn(d, rn, rd, sn, sd);
        let c = billiards_constant(disc(d)).map_err(|e| e.to_string())?;
        // the sign of the radical at D = 17 depends on the spin labelling
        let ok = if d == 17 {
            c == reference || c == reference.galois_conjugate()
        } else {
            c == reference
        };
        ensure(ok, || format!("D={d}: got {c}, reference {reference}"))?;
    }
    Ok(())
}

fn h2_lock() -> Outcome {
    let want = [
        (1, -1, 12),
        (4, -7, 12),
        (5, -2, 5),
        (8, -1, 1),
        (9, -25, 12),
        (12, -2, 1),
        (13, -2, 1),
        (16, -55, 12),
    ];
    for (d, n, den) in want {
        let got = h2(d).map_err(|e| e.to_string())?;
        ensure(got == q(n, den), || {
            format!("H(2,{d}) = {got}, want {n}/{den}")
        })?;
    }
    Ok(())
}

fn chi_identities() -> Outcome {
    let e = |r: wcurve_core::Result<Rational>| r.map_err(|e| e.to_string());
    for d in discriminants(5, 500).into_iter().filter(|&d| nonsquare(d)) {
        let dd = disc(d);
        let (x, w, p) = (e(chi_x(dd))?, e(chi_w(dd))?, e(chi_p(dd))?);
        ensure(w == &p - &(Rational::from_int(2) * &x), || {
            format!("D={d}: chi(W) != chi(P) - 2chi(X)")
        })?;
        ensure(w == q(-9, 2) * &x, || {
            format!("D={d}: chi(W) != -9/2 chi(X)")
        })?;
        if let Some((w0, w1)) = chi_w_components(dd).map_err(|e| e.to_string())? {
            ensure(&w0 + &w1 == w, || {
                format!("D={d}: components do not sum to chi(W)")
            })?;
        }
    }
    for r in 3..=30 {
        let dd = disc(r * r);
        let (x, w, p, s) = (e(chi_x(dd))?, e(chi_w(dd))?, e(chi_p(dd))?, e(chi_s(dd))?);
        ensure(w == &p - &s - Rational::from_int(2) * &x, || {
            format!("d={r}: chi(W) != chi(P) - chi(S2) - 2chi(X)")
        })?;
        if let Some((w0, w1)) = chi_w_components(dd).map_err(|e| e.to_string())? {
            ensure(&w0 + &w1 == w, || {
                format!("d={r}: components do not sum to chi(W)")
            })?;
        }
    }
    Ok(())
}

fn chi_q_two_routes() -> Outcome {
    for d in discriminants(5, 300) {
        let a = chi_q(disc(d)).map_err(|e| e.to_string())?;
        let b = chi_q_via_rm_prototypes(disc(d)).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("D={d}: {a} != {b}"))?;
    }
    Ok(())
}

fn quads(ps: &[Prototype]) -> Vec<common::Quad> {
    ps.iter().map(|p| (p.a(), p.b(), p.c(), p.q())).collect()
}

fn y(d: i64, a: i64, b: i64, c: i64) -> Prototype {
    Prototype::new(Kind::Y, d, a, b, c, 0).unwrap()
}

fn follow(start: Prototype, n: usize) -> Result<Vec<Prototype>, String> {
    let mut out = vec![start];
    while out.len() < n {
        let last = *out.last().unwrap();
        if last.is_terminal() {
            break;
        }
        out.push(last.next().map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn prototype_oracle() -> Outcome {
    for d in discriminants(1, 300) {
        for (kind, k) in [(Kind::Y, K::Y), (Kind::W, K::W), (Kind::P, K::P)] {
            let got = quads(&enumerate(disc(d), kind));
            ensure(got.windows(2).all(|w| w[0] < w[1]), || {
                format!("D={d} {kind}: not sorted")
            })?;
            ensure(matches_classes(&got, &classes(d, k)), || {
                format!("D={d} {kind}: differs from brute force")
            })?;
        }
    }

    let as_set = |v: Vec<Prototype>| v.into_iter().collect::<BTreeSet<_>>();
    let y17 = [
        y(17, 1, 1, -4),
        y(17, 2, -3, -1),
        y(17, 2, -1, -2),
        y(17, 1, -3, -2),
        y(17, 1, -1, -4),
    ];
    ensure(
        as_set(enumerate(disc(17), Kind::Y)) == as_set(y17.to_vec()),
        || "D=17 Y list".into(),
    )?;
    let orbit = follow(y17[0], 6)?;
    ensure(orbit[..5] == y17 && orbit[5] == y17[0], || {
        "D=17 orbit is not the listed 5-cycle".into()
    })?;
    ensure(y17[2].multiplicity() == Ok(2), || {
        "mult(2,-1,-2) != 2".into()
    })?;
    ensure(y17.iter().all(|p| p.orbifold_order() == Ok(1)), || {
        "D=17 orbifold orders".into()
    })?;

    let y12 = [y(12, 2, -2, -1), y(12, 1, -2, -2), y(12, 1, 0, -3)];
    ensure(
        as_set(enumerate(disc(12), Kind::Y)) == as_set(y12.to_vec()),
        || "D=12 Y list".into(),
    )?;
    let orbit = follow(y12[0], 4)?;
    ensure(orbit[..3] == y12 && orbit[3] == y12[0], || {
        "D=12 orbit is not the listed 3-cycle".into()
    })?;
    ensure(y12[0].orbifold_order() == Ok(2), || {
        "m(2,-2,-1) != 2".into()
    })?;
    ensure(y12[1..].iter().all(|p| p.orbifold_order() == Ok(1)), || {
        "D=12 other orbifold orders".into()
    })?;

    let y25a = [
        y(25, 1, -5, 0),
        y(25, 1, -3, -4),
        y(25, 1, -1, -6),
        y(25, 1, 1, -6),
        y(25, 1, 3, -4),
    ];
    let y25b = [
        y(25, 2, -5, 0),
        y(25, 2, -1, -3),
        y(25, 2, -3, -2),
        y(25, 2, 1, -3),
    ];
    let all25: Vec<_> = y25a.iter().chain(&y25b).copied().collect();
    ensure(
        as_set(enumerate(disc(25), Kind::Y)) == as_set(all25.clone()),
        || "D=25 Y list".into(),
    )?;
    for orbit in [&y25a[..], &y25b[..]] {
        ensure(orbit[0].is_degenerate(), || {
            format!("{} is not degenerate", orbit[0])
        })?;
        let got = follow(orbit[0], 10)?;
        ensure(got == orbit, || {
            format!("D=25 orbit from {} is {:?}", orbit[0], got)
        })?;
        ensure(got.last().unwrap().is_terminal(), || {
            "D=25 orbit does not end terminal".into()
        })?;
    }
    ensure(all25.iter().all(|p| p.orbifold_order() == Ok(1)), || {
        "D=25 orbifold orders".into()
    })?;
    Ok(())
}

fn cusp_counts() -> Outcome {
    let count = |d: i64, k: Kind| enumerate(disc(d), k).len();
    for d in discriminants(5, 500).into_iter().filter(|&d| nonsquare(d)) {
        ensure(count(d, Kind::W) == count(d, Kind::P), || {
            format!("D={d}: #W != #P")
        })?;
    }
    for r in 3..=30 {
        let d = r * r;
        let term = enumerate(disc(d), Kind::Y)
            .iter()
            .filter(|p| p.is_terminal())
            .count();
        ensure(count(d, Kind::P) == count(d, Kind::W) + term, || {
            format!("d={r}: #P != #W + #terminal")
        })?;
    }
    let c5 = one_cylinder_cusps(5).map_err(|e| e.to_string())?;
    ensure(
        (c5.total, c5.spin0, c5.spin1) == (2, Some(1), Some(1)),
        || format!("d=5: {c5:?}"),
    )?;
    for r in 4..=30 {
        let c = one_cylinder_cusps(r).map_err(|e| e.to_string())?;
        ensure(c.total >= 0, || format!("d={r}: negative total"))?;
        if let (Some(a), Some(b)) = (c.spin0, c.spin1) {
            ensure(a >= 0 && b >= 0 && a + b == c.total, || {
                format!("d={r}: {c:?}")
            })?;
        } else {
            ensure(r % 2 == 0, || format!("d={r}: odd d without a spin split"))?;
        }
    }
    Ok(())
}

fn spin_balance_and_conjugacy() -> Outcome {
    for d in discriminants(5, 500)
        .into_iter()
        .filter(|&d| d % 8 == 1 && nonsquare(d))
    {
        let dd = disc(d);
        let ws = enumerate(dd, Kind::W);
        let over = |base: &Prototype, spin: u8| {
            ws.iter()
                .filter(|w| w.y_image() == *base && w.spin() == Ok(spin))
                .count()
        };
        for p in enumerate(dd, Kind::Y) {
            let t = p.t_involution().map_err(|e| e.to_string())?;
            let (lhs, rhs) = (over(&p, 1), over(&t, 0));
            ensure(lhs == rhs, || {
                format!("D={d} at {p}: {lhs} spin-1 vs {rhs} spin-0 over t(P)")
            })?;
        }
        let cx = build_complex(dd).map_err(|e| e.to_string())?;
        for (p, l, r) in spin_balance(&cx).map_err(|e| e.to_string())? {
            ensure(l == r, || {
                format!("D={d}: complex spin balance fails at {p}")
            })?;
        }
        let (c0, c1) = sv_constant_components(dd).map_err(|e| e.to_string())?;
        ensure(c1 == c0.galois_conjugate(), || {
            format!("D={d}: c1 != conj(c0)")
        })?;
    }
    Ok(())
}

fn ledger() -> Outcome {
    let det = |a: ClassCurve, b: ClassCurve, d: i64| -> Result<Rational, String> {
        let r = intersect_curves(a, b, disc(d)).map_err(|e| e.to_string())?;
        r.value()
            .cloned()
            .ok_or_else(|| format!("D={d}: {a:?}.{b:?} undetermined"))
    };
    for d in discriminants(5, 200).into_iter().filter(|&d| nonsquare(d)) {
        let dd = disc(d);
        ensure(det(ClassCurve::W, ClassCurve::P, d)?.is_zero(), || {
            format!("D={d}: W.P != 0")
        })?;
        let w = chi_w(dd).map_err(|e| e.to_string())?;
        ensure(det(ClassCurve::W, ClassCurve::W, d)? == w * q(1, 3), || {
            format!("D={d}: W.W != chi(W)/3")
        })?;
        let p = chi_p(dd).map_err(|e| e.to_string())?;
        ensure(det(ClassCurve::P, ClassCurve::P, d)? == p, || {
            format!("D={d}: P.P != chi(P)")
        })?;
    }
    for r in 4..=20 {
        let d = r * r;
        let total = one_cylinder_cusps(r).map_err(|e| e.to_string())?.total;
        ensure(
            det(ClassCurve::S1, ClassCurve::W, d)? == Rational::from_int(total),
            || format!("d={r}: S1.W"),
        )?;
        ensure(det(ClassCurve::W, ClassCurve::S2, d)?.is_zero(), || {
            format!("d={r}: W.S2 != 0")
        })?;
    }
    Ok(())
}

fn lambda_after_next(lam: &QuadNum) -> QuadNum {
    let x = lam - &QuadNum::one(lam.disc);
    if x.cmp1(&q(1, 1)).is_ge() {
        x
    } else {
        x.inverse().expect("x > 0")
    }
}

fn first(x: &QuadNum) -> Option<Rational> {
    x.embeddings_square().map(|e| e.0)
}

fn algebraic_properties() -> Outcome {
    for d in discriminants(1, 300) {
        let dd = disc(d);
        let ys = enumerate(dd, Kind::Y);
        for p in &ys {
            if !p.is_terminal() {
                let n = p.next().map_err(|e| e.to_string())?;
                ensure(n.prev() == Ok(*p), || {
                    format!("D={d}: prev(next({p})) != {p}")
                })?;
                // identified representatives carry the other root, so the
                // recursion is only compared away from the identifications
                if !dd.is_square() {
                    ensure(n.lambda() == lambda_after_next(&p.lambda()), || {
                        format!("D={d}: lambda at {p}")
                    })?;
                } else if !p.is_degenerate() && !n.is_terminal() {
                    ensure(
                        first(&n.lambda()) == first(&lambda_after_next(&p.lambda())),
                        || format!("D={d}: lambda at {p}"),
                    )?;
                }
            }
            if !p.is_degenerate() {
                let pr = p.prev().map_err(|e| e.to_string())?;
                ensure(pr.next() == Ok(*p), || {
                    format!("D={d}: next(prev({p})) != {p}")
                })?;
                let t = p.t_involution().map_err(|e| e.to_string())?;
                ensure(t.t_involution() == Ok(*p), || {
                    format!("D={d}: t(t({p})) != {p}")
                })?;
            }
        }
    }

    let mut runner = TestRunner::new(Config {
        cases: 2000,
        failure_persistence: None,
        ..Config::default()
    });
    let ds = prop::sample::select(discriminants(5, 2000));
    let part = || (-500i64..500, 1i64..60);
    runner
        .run(
            &(ds, part(), part(), part(), part()),
            |(d, (a, b), (c, e), (f, g), (h, i))| {
                let x = QuadNum::new(d, q(a, b), q(c, e));
                let y = QuadNum::new(d, q(f, g), q(h, i));
                prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
                Ok(())
            },
        )
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("c_D reference values, D < 100", c_d_reference_values),
        ("billiard table constants", billiard_constants),
        ("H(2,D) series lock", h2_lock),
        ("Euler characteristic identities", chi_identities),
        ("chi(Q) by two routes", chi_q_two_routes),
        ("prototype enumeration oracle", prototype_oracle),
        ("cusp counts", cusp_counts),
        (
            "spin balance and Galois conjugacy",
            spin_balance_and_conjugacy,
        ),
        ("intersection ledger", ledger),
        ("algebraic properties", algebraic_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let secs = || start.elapsed().as_secs_f64();
        match f() {
            Ok(()) => println!("PASS criterion {}: {name} ({:.2}s)", i + 1, secs()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
