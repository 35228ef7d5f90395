//! Siegel–Veech constants of `W_D` and of its spin components, and the
//! cylinder counting constants for the L-shaped billiard tables `P(D)`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, q, Discriminant, QuadNum, Rational};
use crate::error::{Error, Result};
use crate::euler::chi_w;
use crate::prototypes::{enumerate, two_component_regime, Kind, Prototype};

const PI_DIGITS: &str = "31415926535897932384626433832795028841971693993751058209749445923078164062862089986280348253421170679";
const WORK_DIGITS: u32 = 90;
pub const COEFFICIENT_DIGITS: usize = 50;

fn require_nonsquare(disc: &Discriminant, what: &str) -> Result<()> {
    if disc.is_square() {
        return Err(Error::Regime(format!(
            "{what} is only defined for nonsquare D, got square D={}",
            disc.value
        )));
    }
    if disc.value < 5 {
        return Err(Error::Regime(format!(
            "{what} needs D >= 5, got {}",
            disc.value
        )));
    }
    Ok(())
}

/// `Area(X_P) = 1 - (a/c)·λ²` for a prototype with `c < 0`.
fn prototype_area(p: &Prototype) -> QuadNum {
    let lam = p.lambda();
    QuadNum::one(p.d()) - (&lam * &lam).scale(&q(p.a(), p.c()))
}

/// `v(P) = (-c/gcd(a,c))·(1 - (a/c)λ²)·(1 + λ⁻²)`.
pub fn v_of_prototype(p: &Prototype) -> Result<QuadNum> {
    if p.kind() != Kind::W {
        return Err(Error::Regime("v(P) is defined on W-prototypes only".into()));
    }
    require_nonsquare(&p.disc(), "v(P)")?;
    let lam = p.lambda();
    let lam2 = &lam * &lam;
    let inv = lam2.inverse().expect("lambda is a unit in a field");
    let twist = q(-p.c(), gcd(p.a(), p.c()));
    Ok((&prototype_area(p) * &(QuadNum::one(p.d()) + inv)).scale(&twist))
}

fn sum_v<'a>(d: i64, ps: impl Iterator<Item = &'a Prototype>) -> Result<QuadNum> {
    let mut s = QuadNum::zero(d);
    for p in ps {
        s = &s + &v_of_prototype(p)?;
    }
    Ok(s)
}

/// `c_D = Σ v(P) / (-2χ(W_D))`.
pub fn sv_constant(disc: Discriminant) -> Result<QuadNum> {
    require_nonsquare(&disc, "c_D")?;
    let ws = enumerate(disc, Kind::W);
    let den = Rational::from_int(-2) * chi_w(disc)?;
    Ok(sum_v(disc.value, ws.iter())?.scale(&den.recip().expect("chi(W) is nonzero")))
}

/// `(c⁰, c¹)`, each `Σ_{ε(P)=ε} v(P) / (-χ(W_D))`.
pub fn sv_constant_components(disc: Discriminant) -> Result<(QuadNum, QuadNum)> {
    require_nonsquare(&disc, "c_D^e")?;
    if !two_component_regime(disc.value) {
        return Err(Error::Regime(format!(
            "W_D is connected for D={}",
            disc.value
        )));
    }
    let ws = enumerate(disc, Kind::W);
    let inv = (-chi_w(disc)?).recip().expect("chi(W) is nonzero");
    let mut parts = [QuadNum::zero(disc.value), QuadNum::zero(disc.value)];
    for p in &ws {
        let e = p.spin()? as usize;
        parts[e] = &parts[e] + &v_of_prototype(p)?;
    }
    let [c0, c1] = parts;
    Ok((c0.scale(&inv), c1.scale(&inv)))
}

/// `c(D) = c_D` for `D ≢ 1 (mod 8)`, else `c_D^ε` with `ε = (1+f)/2 mod 2`.
pub fn billiards_constant(disc: Discriminant) -> Result<QuadNum> {
    require_nonsquare(&disc, "c(D)")?;
    if disc.value.rem_euclid(8) != 1 {
        return sv_constant(disc);
    }
    let (c0, c1) = sv_constant_components(disc)?;
    Ok(if ((1 + disc.conductor) / 2) % 2 == 0 {
        c0
    } else {
        c1
    })
}

/// The W-prototype whose surface unfolds `P(D)`.
pub fn unfolding_prototype(disc: Discriminant) -> Result<Prototype> {
    require_nonsquare(&disc, "the unfolding of P(D)")?;
    let d = disc.value;
    if d % 2 == 1 {
        Prototype::new(Kind::W, d, 1, -1, (1 - d) / 4, 0)
    } else {
        Prototype::new(Kind::W, d, 1, 0, -d / 4, 0)
    }
}

/// Area of the unfolded surface; `Area(P(D))` is a quarter of this.
pub fn unfolding_area(disc: Discriminant) -> Result<QuadNum> {
    Ok(prototype_area(&unfolding_prototype(disc)?))
}

/// `c(D)·π / (4·Area(P(D)))` to `COEFFICIENT_DIGITS` significant digits.
pub fn billiards_coefficient(c: &QuadNum, area: &QuadNum) -> String {
    let ratio = c * &area.inverse().expect("area is a nonzero field element");
    let x = ratio.scaled1(WORK_DIGITS);
    let pi: BigInt = PI_DIGITS[..WORK_DIGITS as usize + 1]
        .parse()
        .expect("digits");
    format_significant(&(x * pi), 2 * WORK_DIGITS, COEFFICIENT_DIGITS)
}

/// Render `n / 10^scale` with `sig` significant digits, rounding half up.
fn format_significant(n: &BigInt, scale: u32, sig: usize) -> String {
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    if digits == "0" {
        return "0".into();
    }
    let mut int_len = digits.len() as i64 - scale as i64;
    let mut kept: Vec<u8> = digits.bytes().take(sig).map(|b| b - b'0').collect();
    if digits.len() > sig && digits.as_bytes()[sig] >= b'5' {
        let mut i = kept.len();
        loop {
            if i == 0 {
                kept.insert(0, 1);
                kept.pop();
                int_len += 1;
                break;
            }
            i -= 1;
            if kept[i] == 9 {
                kept[i] = 0;
            } else {
                kept[i] += 1;
                break;
            }
        }
    }
    while kept.len() < sig {
        kept.push(0);
    }
    let body: String = kept.iter().map(|d| char::from(b'0' + d)).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if int_len <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-int_len) as usize));
        out.push_str(&body);
    } else if int_len as usize >= body.len() {
        out.push_str(&body);
        out.push_str(&"0".repeat(int_len as usize - body.len()));
    } else {
        out.push_str(&body[..int_len as usize]);
        out.push('.');
        out.push_str(&body[int_len as usize..]);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPair {
    pub c0: QuadNum,
    pub c1: QuadNum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvReport {
    #[serde(rename = "D")]
    pub d: i64,
    pub c_total: QuadNum,
    pub per_component: Option<ComponentPair>,
    pub billiards_c: QuadNum,
    pub unfolding_area: QuadNum,
    pub billiards_coefficient: String,
}

pub fn sv_report(disc: Discriminant) -> Result<SvReport> {
    let c_total = sv_constant(disc)?;
    let per_component = if two_component_regime(disc.value) {
        let (c0, c1) = sv_constant_components(disc)?;
        Some(ComponentPair { c0, c1 })
    } else {
        None
    };
    let billiards_c = billiards_constant(disc)?;
    let unfolding_area = unfolding_area(disc)?;
    let billiards_coefficient = billiards_coefficient(&billiards_c, &unfolding_area);
    Ok(SvReport {
        d: disc.value,
        c_total,
        per_component,
        billiards_c,
        unfolding_area,
        billiards_coefficient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::decompose_discriminant;

    fn disc(d: i64) -> Discriminant {
        decompose_discriminant(d).unwrap()
    }

    fn w(d: i64, a: i64, b: i64, c: i64) -> Prototype {
        Prototype::new(Kind::W, d, a, b, c, 0).unwrap()
    }

    #[test]
    fn v_examples() {
        assert_eq!(
            v_of_prototype(&w(5, 1, -1, -1)).unwrap(),
            QuadNum::from_rational(5, q(5, 1))
        );
        assert_eq!(
            v_of_prototype(&w(8, 1, 0, -2)).unwrap(),
            QuadNum::from_rational(8, q(6, 1))
        );
        assert_eq!(
            v_of_prototype(&w(12, 1, -2, -2)).unwrap(),
            QuadNum::new(12, q(9, 1), q(1, 2))
        );
        assert!(v_of_prototype(&w(25, 1, -3, -4)).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(
            sv_constant(disc(5)).unwrap(),
            QuadNum::from_rational(5, q(25, 3))
        );
        assert_eq!(
            sv_constant(disc(8)).unwrap(),
            QuadNum::from_rational(8, q(28, 3))
        );
        assert_eq!(
            sv_constant(disc(12)).unwrap(),
            QuadNum::from_rational(12, q(26, 3))
        );
        assert!(sv_constant(disc(25)).is_err());
        let (c0, c1) = sv_constant_components(disc(17)).unwrap();
        assert_eq!(c0, QuadNum::new(17, q(221, 24), q(1, 8)));
        assert_eq!(c1, c0.galois_conjugate());
        assert!(sv_constant_components(disc(13)).is_err());
    }

    #[test]
    fn billiards() {
        assert_eq!(
            billiards_constant(disc(5)).unwrap(),
            QuadNum::from_rational(5, q(25, 3))
        );
        assert_eq!(
            billiards_constant(disc(20)).unwrap(),
            QuadNum::from_rational(20, q(31, 3))
        );
        assert_eq!(
            billiards_constant(disc(29)).unwrap(),
            QuadNum::from_rational(29, q(377, 35))
        );
        // f = 1 selects the spin-1 constant
        assert_eq!(
            billiards_constant(disc(17)).unwrap(),
            QuadNum::new(17, q(221, 24), q(-1, 8))
        );
    }

    #[test]
    fn areas() {
        assert_eq!(
            unfolding_area(disc(5)).unwrap(),
            QuadNum::new(5, q(5, 2), q(1, 2))
        );
        assert_eq!(
            unfolding_area(disc(8)).unwrap(),
            QuadNum::from_rational(8, q(2, 1))
        );
        for d in (5..=500).filter(|&d| crate::arith::is_discriminant(d)) {
            let dd = disc(d);
            if !dd.is_square() {
                assert_eq!(unfolding_area(dd).unwrap().sign1(), 1, "D={d}");
            }
        }
    }

    #[test]
    fn decimal_coefficient() {
        // c·π/area at D = 8 is (28/3)·π/2 = 14π/3; digits from an mpmath run at 80 digits
        let s = billiards_coefficient(
            &QuadNum::from_rational(8, q(28, 3)),
            &QuadNum::from_rational(8, q(2, 1)),
        );
        assert_eq!(s, "14.660765716752368446159002455304346792920123863750");
        assert_eq!(s.replace('.', "").len(), COEFFICIENT_DIGITS);
    }

    #[test]
    fn significant_formatting() {
        let n = BigInt::from(99_996);
        assert_eq!(format_significant(&n, 4, 3), "10.0");
        assert_eq!(format_significant(&BigInt::from(123), 5, 3), "0.00123");
        assert_eq!(format_significant(&BigInt::from(-125), 1, 2), "-13");
    }
}
