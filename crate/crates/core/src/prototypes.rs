//! Y-, W- and P-prototypes: integer quadruples `(a, b, c, q̄)` with
//! `b² - 4ac = D` indexing boundary curves and cusps, together with the
//! operations `P⁺`, `P⁻`, `t`, multiplicity, orbifold order and spin.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{decompose_discriminant, gcd, gcd3, isqrt, q, Discriminant, QuadNum};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Y,
    W,
    P,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Y => "Y",
            Kind::W => "W",
            Kind::P => "P",
        };
        f.write_str(s)
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "y" => Ok(Kind::Y),
            "w" => Ok(Kind::W),
            "p" => Ok(Kind::P),
            _ => Err(Error::Parse(format!("unknown prototype kind {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Classification {
    pub terminal: bool,
    pub initial: bool,
    pub degenerate: bool,
}

/// A prototype in canonical form. Fields are read-only; build through
/// [`Prototype::new`] or [`enumerate`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prototype {
    kind: Kind,
    disc: Discriminant,
    a: i64,
    b: i64,
    c: i64,
    q: i64,
    modulus: i64,
}

fn modulus_for(kind: Kind, a: i64, b: i64, c: i64) -> i64 {
    match kind {
        Kind::Y => gcd3(a, b, c),
        Kind::W | Kind::P => gcd(a, c),
    }
}

fn satisfies_kind(kind: Kind, a: i64, b: i64, c: i64) -> bool {
    let s = a + b + c;
    a > 0
        && match kind {
            Kind::Y => c <= 0 && s <= 0 && !(s == 0 && c == 0),
            Kind::W => c < 0 && s < 0,
            Kind::P => c < 0 && s <= 0,
        }
}

/// Representative of `(a,b,c)` under the terminal and degenerate
/// identifications, keeping the smaller `a`.
fn canonical_abc(kind: Kind, a: i64, b: i64, c: i64) -> (i64, i64, i64) {
    if kind == Kind::W {
        return (a, b, c);
    }
    if c == 0 {
        let other = -b - a;
        if other < a {
            return (other, b, 0);
        }
    } else if a + b + c == 0 && -c < a {
        return (-c, -b, -a);
    }
    (a, b, c)
}

impl Prototype {
    /// Validate and canonicalise. `q` is reduced modulo the modulus.
    pub fn new(kind: Kind, d: i64, a: i64, b: i64, c: i64, q: i64) -> Result<Self> {
        let disc = decompose_discriminant(d)?;
        Self::with_disc(kind, disc, a, b, c, q)
    }

    fn with_disc(kind: Kind, disc: Discriminant, a: i64, b: i64, c: i64, q: i64) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidPrototype(format!(
                "{kind}({a},{b},{c},{q}) for D={}: {why}",
                disc.value
            )))
        };
        if b * b - 4 * a * c != disc.value {
            return bad("b^2 - 4ac != D");
        }
        if !satisfies_kind(kind, a, b, c) {
            return bad("sign conditions fail");
        }
        let (a, b, c) = canonical_abc(kind, a, b, c);
        let modulus = modulus_for(kind, a, b, c);
        let q = q.rem_euclid(modulus);
        if gcd(gcd3(a, b, c), q) != 1 {
            return bad("gcd(a,b,c,q) != 1");
        }
        Ok(Prototype {
            kind,
            disc,
            a,
            b,
            c,
            q,
            modulus,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn disc(&self) -> Discriminant {
        self.disc
    }
    pub fn d(&self) -> i64 {
        self.disc.value
    }
    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn modulus(&self) -> i64 {
        self.modulus
    }
    pub fn abc(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }
    fn key(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.q)
    }

    pub fn is_terminal(&self) -> bool {
        self.a + self.b + self.c == 0
    }
    pub fn is_initial(&self) -> bool {
        self.a - self.b + self.c == 0
    }
    pub fn is_degenerate(&self) -> bool {
        self.c == 0
    }

    pub fn classification(&self) -> Classification {
        Classification {
            terminal: self.is_terminal(),
            initial: self.is_initial(),
            degenerate: self.is_degenerate(),
        }
    }

    fn sibling(&self, a: i64, b: i64, c: i64) -> Prototype {
        Prototype::with_disc(self.kind, self.disc, a, b, c, self.q)
            .expect("prototype operation left the prototype set")
    }

    fn require_y(&self, op: &str) -> Result<()> {
        if self.kind != Kind::Y {
            return Err(Error::Regime(format!(
                "{op} is defined on Y-prototypes only"
            )));
        }
        Ok(())
    }

    /// `λ(P) = (-b + √D)/2a`.
    pub fn lambda(&self) -> QuadNum {
        QuadNum::new(self.d(), q(-self.b, 2 * self.a), q(1, 2 * self.a))
    }

    /// The next prototype `P⁺`.
    pub fn next(&self) -> Result<Prototype> {
        self.require_y("next")?;
        if self.is_terminal() {
            return Err(Error::Regime(format!("next of terminal prototype {self}")));
        }
        let (a, b, c) = self.abc();
        Ok(if 4 * a + 2 * b + c <= 0 {
            self.sibling(a, 2 * a + b, a + b + c)
        } else {
            self.sibling(-a - b - c, -2 * a - b, -a)
        })
    }

    /// The previous prototype `P⁻`.
    pub fn prev(&self) -> Result<Prototype> {
        self.require_y("prev")?;
        if self.is_degenerate() {
            return Err(Error::Regime(format!(
                "prev of degenerate prototype {self}"
            )));
        }
        let (a, b, c) = self.abc();
        Ok(if a - b + c <= 0 {
            self.sibling(a, -2 * a + b, a - b + c)
        } else {
            self.sibling(-c, -b + 2 * c, -a + b - c)
        })
    }

    pub fn t_involution(&self) -> Result<Prototype> {
        self.require_y("t")?;
        if self.is_degenerate() {
            return Err(Error::Regime(format!("t of degenerate prototype {self}")));
        }
        let (a, b, c) = self.abc();
        Ok(if a - b + c <= 0 {
            self.sibling(a, -b, c)
        } else {
            self.sibling(-c, b, -a)
        })
    }

    /// `gcd(a,c)/gcd(a,b,c)`: the number of W- (and P-) cusps on `C_P`.
    pub fn multiplicity(&self) -> Result<i64> {
        if self.is_degenerate() {
            return Err(Error::Regime(format!(
                "multiplicity of degenerate prototype {self}"
            )));
        }
        Ok(gcd(self.a, self.c) / gcd3(self.a, self.b, self.c))
    }

    /// Order of the orbifold point `c_P`, computed on the primitive triple
    /// `(a,b,c)/gcd(a,b,c)`.
    pub fn orbifold_order(&self) -> Result<i64> {
        let g = gcd3(self.a, self.b, self.c);
        let (a, b, c) = (self.a / g, self.b / g, self.c / g);
        let den = gcd(a, c) * gcd(a, b + c);
        if a % den != 0 {
            return Err(Error::Internal(format!(
                "non-integral orbifold order at {self}"
            )));
        }
        Ok(a / den)
    }

    /// Spin `ε(P) ≡ (b - f)/2 + (a+1)(q + c + qc) mod 2`, defined when `W_D`
    /// has two components.
    pub fn spin(&self) -> Result<u8> {
        if self.kind != Kind::W {
            return Err(Error::Regime("spin is defined on W-prototypes only".into()));
        }
        if !two_component_regime(self.d()) {
            return Err(Error::Regime(format!(
                "spin is undefined for D={}: W_D is not split into two components",
                self.d()
            )));
        }
        Ok(spin_of(self.a, self.b, self.c, self.q, self.disc.conductor))
    }

    /// The Y-prototype under a W- or P-prototype.
    pub fn y_image(&self) -> Prototype {
        let (a, b, c) = self.abc();
        Prototype::with_disc(Kind::Y, self.disc, a, b, c, self.q)
            .expect("W and P prototypes always lie over a Y-prototype")
    }

    /// Inverse of [`from_splitting_prototype`].
    pub fn to_splitting_prototype(&self) -> (i64, i64, i64, i64) {
        (self.q, -self.c, self.a, self.b)
    }
}

/// Raw spin formula; `q` may be any lift.
pub fn spin_of(a: i64, b: i64, c: i64, q: i64, f: i64) -> u8 {
    let e = (b - f).div_euclid(2) + (a + 1) * (q + c + q * c);
    e.rem_euclid(2) as u8
}

/// `D ≡ 1 (mod 8)`, `D ≠ 9`, `D ≥ 5`.
pub fn two_component_regime(d: i64) -> bool {
    d >= 5 && d.rem_euclid(8) == 1 && d != 9
}

/// Map a splitting prototype `(a,b,c,e)` to the W-prototype
/// `(c, e, -b, a mod gcd(c, b))`.
pub fn from_splitting_prototype(a: i64, b: i64, c: i64, e: i64) -> Result<Prototype> {
    let d = e * e + 4 * b * c;
    Prototype::new(Kind::W, d, c, e, -b, a).map_err(|err| {
        Error::InvalidPrototype(format!("splitting prototype ({a},{b},{c},{e}): {err}"))
    })
}

impl fmt::Display for Prototype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.c, self.q)
    }
}

impl fmt::Debug for Prototype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}[D={}]", self.kind, self, self.d())
    }
}

impl PartialOrd for Prototype {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prototype {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.kind, self.disc.value, self.key()).cmp(&(other.kind, other.disc.value, other.key()))
    }
}

#[derive(Serialize, Deserialize)]
struct PrototypeRecord {
    kind: Kind,
    #[serde(rename = "D")]
    d: i64,
    a: i64,
    b: i64,
    c: i64,
    q: i64,
    modulus: i64,
    terminal: bool,
    initial: bool,
    degenerate: bool,
    lambda: QuadNum,
}

impl Serialize for Prototype {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let cl = self.classification();
        PrototypeRecord {
            kind: self.kind,
            d: self.d(),
            a: self.a,
            b: self.b,
            c: self.c,
            q: self.q,
            modulus: self.modulus,
            terminal: cl.terminal,
            initial: cl.initial,
            degenerate: cl.degenerate,
            lambda: self.lambda(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Prototype {
    /// Re-validates; the derived fields must agree with the recomputed ones.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PrototypeRecord::deserialize(d)?;
        let p = Prototype::new(r.kind, r.d, r.a, r.b, r.c, r.q).map_err(D::Error::custom)?;
        let cl = p.classification();
        let consistent = p.abc() == (r.a, r.b, r.c)
            && p.q == r.q
            && p.modulus == r.modulus
            && cl
                == Classification {
                    terminal: r.terminal,
                    initial: r.initial,
                    degenerate: r.degenerate,
                }
            && p.lambda() == r.lambda;
        if !consistent {
            return Err(D::Error::custom(format!(
                "prototype record {p} is not canonical"
            )));
        }
        Ok(p)
    }
}

/// All prototypes of the given kind and discriminant, one per class,
/// sorted by `(a, b, c, q)`.
pub fn enumerate(disc: Discriminant, kind: Kind) -> Vec<Prototype> {
    let d = disc.value;
    let mut out = Vec::new();
    let mut push_all = |a: i64, b: i64, c: i64| {
        if !satisfies_kind(kind, a, b, c) || canonical_abc(kind, a, b, c) != (a, b, c) {
            return;
        }
        let m = modulus_for(kind, a, b, c);
        let g = gcd3(a, b, c);
        for q in 0..m {
            if gcd(g, q) == 1 {
                out.push(Prototype {
                    kind,
                    disc,
                    a,
                    b,
                    c,
                    q,
                    modulus: m,
                });
            }
        }
    };
    let r = isqrt(d);
    for b in -r..=r {
        if (b - d).rem_euclid(2) != 0 || b * b >= d {
            continue;
        }
        let n = (d - b * b) / 4;
        for a in crate::arith::divisors(n as u64) {
            let a = a as i64;
            push_all(a, b, -n / a);
        }
    }
    if kind == Kind::Y && r * r == d {
        for a in 1..r {
            push_all(a, -r, 0);
        }
    }
    out.sort();
    out
}
