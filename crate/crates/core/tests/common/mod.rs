//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the enumeration or canonicalization code of the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use wcurve_core::{decompose_discriminant, Discriminant};

pub type Quad = (i64, i64, i64, i64);

pub fn disc(d: i64) -> Discriminant {
    decompose_discriminant(d).unwrap()
}

pub fn discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo.max(1)..=hi)
        .filter(|d| d % 4 == 0 || d % 4 == 1)
        .collect()
}

fn g(a: i64, b: i64) -> i64 {
    let (mut x, mut y) = (a.abs(), b.abs());
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum K {
    Y,
    W,
    P,
}

fn modulus(k: K, a: i64, b: i64, c: i64) -> i64 {
    match k {
        K::Y => g(g(a, b), c),
        _ => g(a, c),
    }
}

/// Every raw quadruple satisfying the defining conditions, before any
/// identification.
pub fn raw(d: i64, k: K) -> Vec<Quad> {
    let mut out = Vec::new();
    for a in 1..=d {
        for c in -d..=0 {
            if c == 0 && k != K::Y {
                continue;
            }
            let b2 = d + 4 * a * c;
            if b2 < 0 {
                continue;
            }
            let mut r = (b2 as f64).sqrt() as i64;
            while r * r > b2 {
                r -= 1;
            }
            while (r + 1) * (r + 1) <= b2 {
                r += 1;
            }
            if r * r != b2 {
                continue;
            }
            let roots: &[i64] = if r == 0 { &[0] } else { &[-r, r] };
            for &b in roots {
                let s = a + b + c;
                let ok = match k {
                    K::Y => s < 0 || (s == 0 && c != 0),
                    K::W => s < 0,
                    K::P => s <= 0,
                };
                if !ok {
                    continue;
                }
                let m = modulus(k, a, b, c);
                for q in 0..m {
                    if g(g(g(a, b), c), q) == 1 {
                        out.push((a, b, c, q));
                    }
                }
            }
        }
    }
    out
}

/// Equivalence classes of raw quadruples under the terminal (Y and P) and
/// degenerate (Y) identifications.
pub fn classes(d: i64, k: K) -> Vec<BTreeSet<Quad>> {
    let items = raw(d, k);
    let index: BTreeMap<Quad, usize> = items.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for (i, &(a, b, c, q)) in items.iter().enumerate() {
        let mut partners = Vec::new();
        if k != K::W && a + b + c == 0 {
            partners.push((-c, -b, -a));
        }
        if k == K::Y && c == 0 {
            partners.push((-b - a, b, 0));
        }
        for (a2, b2, c2) in partners {
            let m = modulus(k, a2, b2, c2);
            if let Some(&j) = index.get(&(a2, b2, c2, q.rem_euclid(m))) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<Quad>> = BTreeMap::new();
    for (i, x) in items.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().insert(*x);
    }
    groups.into_values().collect()
}

/// `true` iff `got` picks exactly one member from each class and nothing else.
pub fn matches_classes(got: &[Quad], cls: &[BTreeSet<Quad>]) -> bool {
    if got.len() != cls.len() {
        return false;
    }
    let mut hit = vec![false; cls.len()];
    for x in got {
        match cls.iter().position(|s| s.contains(x)) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => return false,
        }
    }
    true
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|k| k * k <= n)
            .all(|k| !n.is_multiple_of(k))
}

/// `(n/p)` for an odd prime `p` by listing the squares mod `p`.
fn legendre_by_squares(n: i64, p: u64) -> i8 {
    let r = n.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == r) {
        1
    } else {
        -1
    }
}

/// Kronecker symbol from its definition: factor the bottom, use the table
/// for 2 and the quadratic residues for odd primes.
pub fn kronecker_oracle(n: i64, m: u64) -> i8 {
    if m == 0 {
        return if n.abs() == 1 { 1 } else { 0 };
    }
    let mut out = 1i8;
    let mut rest = m;
    let mut p = 2u64;
    while rest > 1 {
        if rest.is_multiple_of(p) && is_prime(p) {
            rest /= p;
            let f = if p == 2 {
                match n.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                }
            } else {
                legendre_by_squares(n, p)
            };
            out *= f;
        } else {
            p += 1;
        }
    }
    out
}
