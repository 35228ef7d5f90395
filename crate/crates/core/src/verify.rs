//! Sweep every invariant over a range of discriminants.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::arith::{decompose_discriminant, gcd, is_discriminant, isqrt, q, Discriminant, QuadNum};
use crate::boundary::{
    build_complex, intersect_curves, spin_balance, structural_failures, tau_is_automorphism,
    ClassCurve,
};
use crate::error::Result;
use crate::euler::{
    chi_p, chi_q, chi_q_via_rm_prototypes, chi_w, chi_x, consistency_chain, one_cylinder_cusps,
};
use crate::prototypes::{enumerate, spin_of, two_component_regime, Kind, Prototype};
use crate::siegel_veech::{sv_constant, sv_constant_components, unfolding_area, v_of_prototype};

#[derive(Clone, Debug, Serialize)]
pub struct Suite {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn result<T>(&mut self, d: i64, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("D={d}: {e}"));
                None
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub dmin: i64,
    pub dmax: i64,
    pub suites: Vec<Suite>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(Suite::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify D in [{}, {}]", self.dmin, self.dmax)?;
        for s in &self.suites {
            let tag = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "  {tag} {:<28} {:>7} checks, {} failures",
                s.name,
                s.checked,
                s.failures.len()
            )?;
            for msg in s.failures.iter().take(5) {
                writeln!(f, "       {msg}")?;
            }
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        write!(f, "{passed}/{} suites passed", self.suites.len())
    }
}

fn discriminants(dmin: i64, dmax: i64) -> impl Iterator<Item = Discriminant> {
    (dmin.max(1)..=dmax)
        .filter(|&d| is_discriminant(d))
        .map(|d| decompose_discriminant(d).expect("filtered"))
}

/// Straight scan over `a ≥ 1`, `c ≤ 0` for `(a,b,c)` with `b² = D + 4ac`,
/// independent of [`enumerate`].
fn scan(disc: Discriminant, kind: Kind) -> BTreeSet<(i64, i64, i64, i64)> {
    let d = disc.value;
    let mut out = BTreeSet::new();
    for a in 1..=d {
        for c in (-d..=0).rev() {
            let b2 = d + 4 * a * c;
            if b2 < 0 {
                break;
            }
            let r = isqrt(b2);
            if r * r != b2 {
                continue;
            }
            for b in [-r, r] {
                for qq in 0..gcd(a, c).max(1) {
                    if let Ok(p) = Prototype::new(kind, d, a, b, c, qq) {
                        out.insert((p.a(), p.b(), p.c(), p.q()));
                    }
                }
            }
        }
    }
    out
}

fn suite_enumeration(ds: &[Discriminant]) -> Suite {
    let mut s = Suite::new("enumeration");
    for &disc in ds {
        for kind in [Kind::Y, Kind::W, Kind::P] {
            let got: Vec<_> = enumerate(disc, kind)
                .iter()
                .map(|p| (p.a(), p.b(), p.c(), p.q()))
                .collect();
            let sorted = got.windows(2).all(|w| w[0] < w[1]);
            let want: Vec<_> = scan(disc, kind).into_iter().collect();
            s.check(sorted && got == want, || {
                format!("D={} {kind}: enumeration differs from scan", disc.value)
            });
        }
        let (w, p) = (
            enumerate(disc, Kind::W).len(),
            enumerate(disc, Kind::P).len(),
        );
        if disc.is_square() {
            let term = enumerate(disc, Kind::Y)
                .iter()
                .filter(|p| p.is_terminal())
                .count();
            s.check(p == w + term, || {
                format!("D={}: #P={p} != #W={w} + #terminal={term}", disc.value)
            });
        } else {
            s.check(p == w, || format!("D={}: #P={p} != #W={w}", disc.value));
        }
    }
    s
}

fn lambda_next_rule(lam: &QuadNum) -> Option<QuadNum> {
    let x = lam - &QuadNum::one(lam.disc);
    if x.cmp1(&q(1, 1)).is_ge() {
        Some(x)
    } else {
        x.inverse()
    }
}

fn suite_operations(ds: &[Discriminant]) -> Suite {
    let mut s = Suite::new("prototype operations");
    for &disc in ds {
        let d = disc.value;
        let ys = enumerate(disc, Kind::Y);
        let nonterminal: BTreeSet<_> = ys.iter().filter(|p| !p.is_terminal()).copied().collect();
        let nondegenerate: BTreeSet<_> =
            ys.iter().filter(|p| !p.is_degenerate()).copied().collect();
        let mut image = BTreeSet::new();
        for p in &nonterminal {
            let Some(n) = s.result(d, p.next()) else {
                continue;
            };
            image.insert(n);
            let back = s.result(d, n.prev());
            s.check(back == Some(*p), || {
                format!("D={d}: prev(next({p})) != {p}")
            });
            let lam = p.lambda();
            s.check(lam.cmp1(&q(1, 1)).is_ge(), || {
                format!("D={d}: lambda{p} < 1")
            });
            if !disc.is_square() || !(p.is_degenerate() || n.is_terminal()) {
                let want = lambda_next_rule(&lam);
                let got = n.lambda();
                let ok = match (disc.is_square(), want) {
                    (false, Some(w)) => w == got,
                    (true, Some(w)) => {
                        w.embeddings_square().map(|e| e.0) == got.embeddings_square().map(|e| e.0)
                    }
                    (_, None) => false,
                };
                s.check(ok, || format!("D={d}: lambda recursion fails at {p}"));
            }
        }
        s.check(image == nondegenerate, || {
            format!("D={d}: next is not onto the nondegenerate prototypes")
        });
        for p in &nondegenerate {
            let Some(pr) = s.result(d, p.prev()) else {
                continue;
            };
            if !disc.is_square() || !(pr.is_degenerate() || p.is_terminal()) {
                let lam = p.lambda();
                let one = QuadNum::one(d);
                let want = if p.a() - p.b() + p.c() <= 0 {
                    &lam + &one
                } else {
                    &one + &lam.inverse().expect("nondegenerate lambda is invertible")
                };
                let got = pr.lambda();
                let ok = if disc.is_square() {
                    want.embeddings_square().map(|e| e.0) == got.embeddings_square().map(|e| e.0)
                } else {
                    want == got
                };
                s.check(ok, || format!("D={d}: prev lambda rule fails at {p}"));
            }
            let Some(t) = s.result(d, p.t_involution()) else {
                continue;
            };
            let tt = s.result(d, t.t_involution());
            s.check(tt == Some(*p), || format!("D={d}: t(t({p})) != {p}"));
            if !disc.is_square() {
                s.check(!p.is_terminal() && !p.is_initial(), || {
                    format!("D={d}: {p} is terminal or initial")
                });
            }
        }
        for p in &ys {
            s.check(p.orbifold_order().is_ok(), || {
                format!("D={d}: orbifold order of {p} not integral")
            });
        }
        if two_component_regime(d) {
            for w in enumerate(disc, Kind::W) {
                let base = spin_of(w.a(), w.b(), w.c(), w.q(), disc.conductor);
                let ok = (1..4).all(|k| {
                    spin_of(w.a(), w.b(), w.c(), w.q() + k * w.modulus(), disc.conductor) == base
                });
                s.check(ok, || {
                    format!("D={d}: spin of {w} depends on the lift of q")
                });
            }
        }
    }
    s
}

fn suite_euler(ds: &[Discriminant]) -> Suite {
    let mut s = Suite::new("euler characteristics");
    for &disc in ds {
        let d = disc.value;
        if d >= 5 {
            if let Some(chain) = s.result(d, consistency_chain(disc)) {
                for c in chain {
                    s.check(c.pass, || {
                        format!("D={d}: {} ({} vs {})", c.name, c.lhs, c.rhs)
                    });
                }
            }
        }
        if d >= 5 && !disc.is_square() {
            let (Some(x), Some(p)) = (s.result(d, chi_x(disc)), s.result(d, chi_p(disc))) else {
                continue;
            };
            s.check(p == q(-5, 2) * &x, || {
                format!("D={d}: chi(P) != -5/2 chi(X)")
            });
        }
        if d > 4 {
            let (Some(a), Some(b)) = (
                s.result(d, chi_q(disc)),
                s.result(d, chi_q_via_rm_prototypes(disc)),
            ) else {
                continue;
            };
            s.check(a == b, || {
                format!("D={d}: chi(Q) = {a} but the prototype sum is {b}")
            });
        }
        if let Some(r) = disc.root() {
            if r > 3 {
                if let Some(c) = s.result(d, one_cylinder_cusps(r)) {
                    if let (Some(a), Some(b)) = (c.spin0, c.spin1) {
                        s.check(a + b == c.total, || {
                            format!("D={d}: one-cylinder spins do not add up")
                        });
                    }
                }
            }
        }
    }
    s
}

fn suite_boundary(ds: &[Discriminant]) -> Suite {
    let mut s = Suite::new("boundary complex");
    for &disc in ds.iter().filter(|x| x.value >= 5) {
        let d = disc.value;
        let Some(cx) = s.result(d, build_complex(disc)) else {
            continue;
        };
        for msg in structural_failures(&cx) {
            s.check(false, || format!("D={d}: {msg}"));
        }
        let ys = enumerate(disc, Kind::Y);
        s.check(cx.junctions.len() == ys.len(), || {
            format!("D={d}: junction count")
        });
        s.check(
            cx.curves.len() == ys.iter().filter(|p| !p.is_degenerate()).count(),
            || format!("D={d}: curve count"),
        );
        let tau = s.result(d, tau_is_automorphism(&cx));
        s.check(tau == Some(true), || {
            format!("D={d}: t does not preserve the complex")
        });
        if two_component_regime(d) {
            if let Some(rows) = s.result(d, spin_balance(&cx)) {
                for (p, l, r) in rows {
                    s.check(l == r, || {
                        format!("D={d}: spin balance fails on C{p}: {l} vs {r}")
                    });
                }
            }
        }
    }
    s
}

fn suite_ledger(ds: &[Discriminant]) -> Suite {
    use ClassCurve::*;
    let mut s = Suite::new("intersection ledger");
    for &disc in ds.iter().filter(|x| x.value >= 5) {
        let d = disc.value;
        let pair = |a, b| intersect_curves(a, b, disc).map(|i| i.value().cloned());
        match disc.root() {
            None => {
                let (Some(cw), Some(cp)) = (s.result(d, chi_w(disc)), s.result(d, chi_p(disc)))
                else {
                    continue;
                };
                let wp = s.result(d, pair(W, P));
                s.check(wp == Some(Some(q(0, 1))), || format!("D={d}: W.P != 0"));
                let ww = s.result(d, pair(W, W));
                s.check(ww == Some(Some(cw * q(1, 3))), || {
                    format!("D={d}: W.W != chi(W)/3")
                });
                let pp = s.result(d, pair(P, P));
                s.check(pp == Some(Some(cp)), || format!("D={d}: P.P != chi(P)"));
            }
            Some(r) if r > 3 => {
                let Some(cyl) = s.result(d, one_cylinder_cusps(r)) else {
                    continue;
                };
                let s1w = s.result(d, pair(S1, W));
                s.check(s1w == Some(Some(q(cyl.total, 1))), || {
                    format!("D={d}: S1.W != one-cylinder count")
                });
                let ws2 = s.result(d, pair(W, S2));
                s.check(ws2 == Some(Some(q(0, 1))), || format!("D={d}: W.S2 != 0"));
                let s12 = s.result(d, pair(S1, S2));
                let phi = crate::arith::euler_phi(r as u64) as i64;
                s.check(s12 == Some(Some(q(phi, 2))), || {
                    format!("D={d}: S1.S2 != phi(d)/2")
                });
            }
            Some(_) => {}
        }
    }
    s
}

fn suite_siegel_veech(ds: &[Discriminant]) -> Suite {
    let mut s = Suite::new("siegel-veech");
    for &disc in ds.iter().filter(|x| x.value >= 5 && !x.is_square()) {
        let d = disc.value;
        for w in enumerate(disc, Kind::W) {
            if let Some(v) = s.result(d, v_of_prototype(&w)) {
                s.check(v.sign1() > 0, || format!("D={d}: v{w} is not positive"));
            }
        }
        let Some(c) = s.result(d, sv_constant(disc)) else {
            continue;
        };
        if two_component_regime(d) {
            if let Some((c0, c1)) = s.result(d, sv_constant_components(disc)) {
                s.check(c1 == c0.galois_conjugate(), || {
                    format!("D={d}: c1 is not the conjugate of c0")
                });
                s.check((&c0 + &c1).scale(&q(1, 2)) == c, || {
                    format!("D={d}: c_D is not the mean of c0, c1")
                });
            }
        } else {
            s.check(c.is_rational(), || {
                format!("D={d}: c_D = {c} is not rational")
            });
        }
        if let Some(a) = s.result(d, unfolding_area(disc)) {
            s.check(a.sign1() > 0, || {
                format!("D={d}: unfolding area is not positive")
            });
        }
    }
    s
}

/// Run every suite over `dmin ≤ D ≤ dmax`.
pub fn run(dmin: i64, dmax: i64) -> VerifyReport {
    let ds: Vec<_> = discriminants(dmin, dmax).collect();
    let suites = vec![
        suite_enumeration(&ds),
        suite_operations(&ds),
        suite_euler(&ds),
        suite_boundary(&ds),
        suite_ledger(&ds),
        suite_siegel_veech(&ds),
    ];
    VerifyReport { dmin, dmax, suites }
}
