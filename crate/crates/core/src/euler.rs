//! Euler characteristics of `X_D`, `W_D`, `P_D`, `Q_D` and `S_i`, the
//! coefficients `H(2,D)`, and cusp counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{
    decompose_discriminant, divisors, euler_phi, factorize, gcd, isqrt, mobius_weighted_sum, q,
    sigma, Discriminant, Rational,
};
use crate::error::{Error, Result};
use crate::prototypes::{enumerate, two_component_regime, Kind};

fn check_h2_arg(d: i64) -> Result<()> {
    if d == 0 || crate::arith::is_discriminant(d) {
        Ok(())
    } else {
        Err(Error::InvalidDiscriminant(d))
    }
}

/// `H(2,D) = -(1/5) Σ_{e ≡ D (2)} σ₁((D - e²)/4)`, less `D/10` for square `D`.
pub fn h2(d: i64) -> Result<Rational> {
    check_h2_arg(d)?;
    let r = isqrt(d);
    let mut s = Rational::zero();
    for e in -r..=r {
        if (e - d).rem_euclid(2) == 0 {
            s += &sigma(1, (d - e * e) / 4)?;
        }
    }
    let mut h = -s * q(1, 5);
    if r * r == d {
        h = h - q(d, 10);
    }
    Ok(h)
}

/// Cached `H(2,D)` values for `D` up to a bound.
#[derive(Clone, Debug, Default, Serialize)]
pub struct HTable {
    values: BTreeMap<i64, Rational>,
}

impl HTable {
    pub fn build(dmax: i64) -> Self {
        let values = (0..=dmax)
            .filter(|&d| check_h2_arg(d).is_ok())
            .map(|d| (d, h2(d).expect("argument checked")))
            .collect();
        HTable { values }
    }

    pub fn get(&self, d: i64) -> Option<&Rational> {
        self.values.get(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.values.iter()
    }
}

/// `ζ_{K}(-1) = -H(2,D₀)/12` for a fundamental `D₀ > 1`.
pub fn zeta_minus_one(d0: i64) -> Result<Rational> {
    let disc = decompose_discriminant(d0)?;
    if disc.is_square() || disc.conductor != 1 {
        return Err(Error::Regime(format!(
            "{d0} is not a nonsquare fundamental discriminant"
        )));
    }
    Ok(-h2(d0)? * q(1, 12))
}

fn zeta_of(disc: &Discriminant) -> Result<Rational> {
    if disc.is_square() {
        Ok(q(1, 144))
    } else {
        zeta_minus_one(disc.fundamental)
    }
}

fn weight(disc: &Discriminant) -> Rational {
    mobius_weighted_sum(disc.fundamental, disc.conductor as u64)
}

fn cube(n: i64) -> Rational {
    Rational::from_int(n * n * n)
}

pub fn chi_x(disc: Discriminant) -> Result<Rational> {
    Ok(match disc.value {
        1 => q(1, 36),
        4 => q(1, 6),
        _ => Rational::from_int(2) * cube(disc.conductor) * zeta_of(&disc)? * weight(&disc),
    })
}

pub fn chi_w(disc: Discriminant) -> Result<Rational> {
    if disc.value < 5 {
        return Ok(Rational::zero());
    }
    let s = weight(&disc);
    Ok(match disc.root() {
        Some(d) => -q(d * d * (d - 2), 16) * s,
        None => q(-9, 1) * zeta_of(&disc)? * cube(disc.conductor) * s,
    })
}

/// `(χ(W⁰), χ(W¹))` when `W_D` has two components.
pub fn chi_w_components(disc: Discriminant) -> Result<Option<(Rational, Rational)>> {
    if !two_component_regime(disc.value) {
        return Ok(None);
    }
    Ok(Some(match disc.root() {
        Some(d) => {
            let s = weight(&disc);
            (-q(d * d * (d - 1), 32) * &s, -q(d * d * (d - 3), 32) * &s)
        }
        None => {
            let half = chi_w(disc)? * q(1, 2);
            (half.clone(), half)
        }
    }))
}

fn need_at_least_4(disc: &Discriminant, what: &str) -> Result<()> {
    if disc.value < 4 {
        return Err(Error::Regime(format!(
            "{what} requires D >= 4, got {}",
            disc.value
        )));
    }
    Ok(())
}

pub fn chi_p(disc: Discriminant) -> Result<Rational> {
    need_at_least_4(&disc, "chi(P)")?;
    Ok(match disc.root() {
        Some(2) => q(-1, 6),
        Some(d) => -q(d * d * (5 * d - 6), 144) * weight(&disc),
        None => q(-5, 2) * chi_x(disc)?,
    })
}

pub fn chi_q(disc: Discriminant) -> Result<Rational> {
    need_at_least_4(&disc, "chi(Q)")?;
    Ok(match disc.root() {
        Some(d) => -q(d * d * (5 * d - 6), 72) * weight(&disc),
        None => q(-5, 1) * chi_x(disc)?,
    })
}

/// `ψ(m) = -(m/6) Π_{p | m} (1 + 1/p)`.
pub fn psi(m: u64) -> Rational {
    factorize(m)
        .into_iter()
        .fold(-q(m as i64, 6), |acc, (p, _)| {
            acc * q(p as i64 + 1, p as i64)
        })
}

/// Triples `(e, l, m)` with `D = e² + 4l²m`, `l, m > 0`, `gcd(e, l) = 1`.
pub fn rm_prototypes(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let r = isqrt(d);
    for e in -r..=r {
        let rest = d - e * e;
        if rest <= 0 || rest % 4 != 0 {
            continue;
        }
        let n = rest / 4;
        let mut l = 1;
        while l * l <= n {
            if n % (l * l) == 0 && gcd(e, l) == 1 {
                out.push((e, l, n / (l * l)));
            }
            l += 1;
        }
    }
    out
}

/// `χ(Q_D)` as a sum of `ψ(m)` over real multiplication prototypes.
pub fn chi_q_via_rm_prototypes(disc: Discriminant) -> Result<Rational> {
    need_at_least_4(&disc, "chi(Q)")?;
    Ok(rm_prototypes(disc.value)
        .into_iter()
        .map(|(_, _, m)| psi(m as u64))
        .sum())
}

pub fn chi_s(disc: Discriminant) -> Result<Rational> {
    match disc.root() {
        None => Err(Error::Regime(format!(
            "S_i exists only for square D, got {}",
            disc.value
        ))),
        Some(1) => Err(Error::Regime("S_i requires d >= 2".into())),
        Some(2) => Ok(q(-1, 2)),
        Some(d) => Ok(-q(d * d, 12) * weight(&disc)),
    }
}

pub fn num_components(d: i64) -> u8 {
    if d < 5 {
        0
    } else if two_component_regime(d) {
        2
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneCylinderCusps {
    pub total: i64,
    pub spin0: Option<i64>,
    pub spin1: Option<i64>,
}

fn integral(r: Rational, what: &str) -> Result<i64> {
    match r.to_i64() {
        Some(n) if n >= 0 => Ok(n),
        _ => Err(Error::Internal(format!(
            "{what} = {r} is not a non-negative integer"
        ))),
    }
}

/// One-cylinder cusps of `W_{d²}`, split by spin for odd `d`.
pub fn one_cylinder_cusps(d: i64) -> Result<OneCylinderCusps> {
    if d <= 3 {
        return Err(Error::Regime(format!(
            "one-cylinder cusp formula needs d > 3, got {d}"
        )));
    }
    let s = mobius_weighted_sum(1, d as u64);
    let half_phi = q(euler_phi(d as u64) as i64, 2);
    let total = integral(q(d * d, 6) * &s - &half_phi, "one-cylinder total")?;
    let (spin0, spin1) = if d % 2 == 1 {
        let s0 = integral(q(d * d, 24) * &s, "spin-0 one-cylinder count")?;
        let s1 = integral(q(d * d, 8) * &s - &half_phi, "spin-1 one-cylinder count")?;
        (Some(s0), Some(s1))
    } else {
        (None, None)
    };
    Ok(OneCylinderCusps {
        total,
        spin0,
        spin1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, lhs: Rational, rhs: Rational) -> Self {
        let pass = lhs == rhs;
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            pass,
        }
    }
}

/// The Euler characteristic identities at `D`, each side computed
/// separately.
pub fn consistency_chain(disc: Discriminant) -> Result<Vec<Check>> {
    if disc.value < 5 {
        return Err(Error::Regime(format!(
            "consistency chain needs D >= 5, got {}",
            disc.value
        )));
    }
    let (cx, cw, cp) = (chi_x(disc)?, chi_w(disc)?, chi_p(disc)?);
    let two = Rational::from_int(2);
    let mut out = Vec::new();
    match disc.root() {
        None => {
            out.push(Check::new(
                "chi(W) = chi(P) - 2chi(X)",
                cw.clone(),
                &cp - &two * &cx,
            ));
            out.push(Check::new(
                "chi(W) = -9/2 chi(X)",
                cw.clone(),
                q(-9, 2) * &cx,
            ));
        }
        Some(_) => {
            let cs = chi_s(disc)?;
            out.push(Check::new(
                "chi(W) = chi(P) - chi(S2) - 2chi(X)",
                cw.clone(),
                &cp - &cs - &two * &cx,
            ));
        }
    }
    if let Some((w0, w1)) = chi_w_components(disc)? {
        out.push(Check::new(
            "chi(W0) + chi(W1) = chi(W)",
            &w0 + &w1,
            cw.clone(),
        ));
    }
    if !disc.is_square() {
        let h = h2(disc.value)?;
        let mut sx = Rational::zero();
        let mut sw = Rational::zero();
        for r in divisors(disc.conductor as u64) {
            let r = r as i64;
            let sub = decompose_discriminant(r * r * disc.fundamental)?;
            sx += &chi_x(sub)?;
            sw += &chi_w(sub)?;
        }
        out.push(Check::new(
            "sum_{r|f} chi(X_{r^2 D0}) = -H(2,D)/6",
            sx,
            -&h * q(1, 6),
        ));
        out.push(Check::new(
            "sum_{r|f} chi(W_{r^2 D0}) = 3/4 H(2,D)",
            sw,
            q(3, 4) * &h,
        ));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stratum {
    DoubleZero,
    TwoSimpleZeros,
}

/// The second Lyapunov exponent on a Teichmüller curve in the given stratum.
pub fn lyapunov_lambda2(stratum: Stratum) -> Rational {
    match stratum {
        Stratum::DoubleZero => q(1, 3),
        Stratum::TwoSimpleZeros => q(1, 2),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub chi_x: Rational,
    pub chi_w: Rational,
    pub chi_p: Option<Rational>,
    pub chi_q: Option<Rational>,
    pub chi_s1: Option<Rational>,
    pub chi_s2: Option<Rational>,
    pub chi_w0: Option<Rational>,
    pub chi_w1: Option<Rational>,
    pub components: u8,
    pub cusps_two_cyl: usize,
    pub cusps_one_cyl: Option<i64>,
    pub cusps_p: usize,
}

pub fn euler_report(disc: Discriminant) -> Result<EulerReport> {
    let big_enough = disc.value >= 4;
    let chi_si = match disc.root() {
        Some(d) if d >= 2 => Some(chi_s(disc)?),
        _ => None,
    };
    let (chi_w0, chi_w1) = match chi_w_components(disc)? {
        Some((a, b)) => (Some(a), Some(b)),
        None => (None, None),
    };
    let cusps_one_cyl = match disc.root() {
        Some(d) if d > 3 => Some(one_cylinder_cusps(d)?.total),
        _ => None,
    };
    Ok(EulerReport {
        d: disc.value,
        chi_x: chi_x(disc)?,
        chi_w: chi_w(disc)?,
        chi_p: if big_enough { Some(chi_p(disc)?) } else { None },
        chi_q: if big_enough { Some(chi_q(disc)?) } else { None },
        chi_s1: chi_si.clone(),
        chi_s2: chi_si,
        chi_w0,
        chi_w1,
        components: num_components(disc.value),
        cusps_two_cyl: enumerate(disc, Kind::W).len(),
        cusps_one_cyl,
        cusps_p: enumerate(disc, Kind::P).len(),
    })
}
