//! Combinatorics of the boundary of `Y_D`: the curves `C_P`, the junction
//! points `c_P`, the curves `S1`, `S2` for square `D`, and the cusps of
//! `W_D` and `P_D` lying on them. Also the intersection pairing on the
//! classes of these curves.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::{euler_phi, mobius_weighted_sum, q, Discriminant, Rational};
use crate::error::{Error, Result};
use crate::euler::{chi_x, one_cylinder_cusps, OneCylinderCusps};
use crate::prototypes::{enumerate, two_component_regime, Kind, Prototype};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    Curve(usize),
    S1,
    S2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WMarker {
    pub prototype: Prototype,
    pub spin: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Curve {
    pub prototype: Prototype,
    pub w_markers: Vec<WMarker>,
    pub p_markers: Vec<Prototype>,
    pub s1_contacts: usize,
    pub s2_contacts: usize,
}

impl Curve {
    pub fn w_count(&self, spin: u8) -> usize {
        self.w_markers
            .iter()
            .filter(|m| m.spin == Some(spin))
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Junction {
    pub prototype: Prototype,
    pub order: i64,
    pub from: Node,
    pub to: Node,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspComplex {
    #[serde(rename = "D")]
    pub d: i64,
    pub square: bool,
    pub curves: Vec<Curve>,
    pub junctions: Vec<Junction>,
    /// Curve indices along each cycle (nonsquare) or chain from `S1` to
    /// `S2` (square).
    pub chains: Vec<Vec<usize>>,
    pub s1_s2_points: Option<u64>,
    pub s1_one_cylinder: Option<OneCylinderCusps>,
}

impl CuspComplex {
    pub fn curve_index(&self, p: &Prototype) -> Option<usize> {
        self.curves.iter().position(|c| c.prototype == *p)
    }
}

pub fn build_complex(disc: Discriminant) -> Result<CuspComplex> {
    if disc.value < 5 {
        return Err(Error::Regime(format!(
            "boundary complex needs D >= 5, got {}",
            disc.value
        )));
    }
    let ys = enumerate(disc, Kind::Y);
    let mut index = HashMap::new();
    let mut curves = Vec::new();
    for p in ys.iter().filter(|p| !p.is_degenerate()) {
        index.insert(*p, curves.len());
        curves.push(Curve {
            prototype: *p,
            w_markers: Vec::new(),
            p_markers: Vec::new(),
            s1_contacts: usize::from(p.prev()?.is_degenerate()),
            s2_contacts: usize::from(p.is_terminal()),
        });
    }
    let split = two_component_regime(disc.value);
    for w in enumerate(disc, Kind::W) {
        let spin = if split { Some(w.spin()?) } else { None };
        curves[index[&w.y_image()]]
            .w_markers
            .push(WMarker { prototype: w, spin });
    }
    for p in enumerate(disc, Kind::P) {
        curves[index[&p.y_image()]].p_markers.push(p);
    }

    let mut junctions = Vec::new();
    for p in &ys {
        let (from, to) = if p.is_degenerate() {
            (Node::S1, Node::Curve(index[&p.next()?]))
        } else if p.is_terminal() {
            (Node::Curve(index[p]), Node::S2)
        } else {
            (Node::Curve(index[p]), Node::Curve(index[&p.next()?]))
        };
        junctions.push(Junction {
            prototype: *p,
            order: p.orbifold_order()?,
            from,
            to,
        });
    }

    let mut chains = Vec::new();
    if disc.is_square() {
        for head in ys.iter().filter(|p| p.is_degenerate()) {
            let mut chain = Vec::new();
            let mut p = head.next()?;
            loop {
                chain.push(index[&p]);
                if p.is_terminal() {
                    break;
                }
                p = p.next()?;
            }
            chains.push(chain);
        }
    } else {
        let mut seen = vec![false; curves.len()];
        for start in 0..curves.len() {
            if seen[start] {
                continue;
            }
            let mut chain = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                chain.push(i);
                i = index[&curves[i].prototype.next()?];
            }
            chains.push(chain);
        }
    }

    let (s1_s2_points, s1_one_cylinder) = match disc.root() {
        Some(2) => (Some(1), None),
        Some(d) => {
            let cyl = if d > 3 {
                Some(one_cylinder_cusps(d)?)
            } else {
                None
            };
            (Some(euler_phi(d as u64) / 2), cyl)
        }
        None => (None, None),
    };

    Ok(CuspComplex {
        d: disc.value,
        square: disc.is_square(),
        curves,
        junctions,
        chains,
        s1_s2_points,
        s1_one_cylinder,
    })
}

/// Structural problems with a complex; empty when all invariants hold.
pub fn structural_failures(cx: &CuspComplex) -> Vec<String> {
    let mut bad = Vec::new();
    let covered: usize = cx.chains.iter().map(Vec::len).sum();
    if covered != cx.curves.len() {
        bad.push(format!(
            "chains cover {covered} of {} curves",
            cx.curves.len()
        ));
    }
    for chain in &cx.chains {
        let first = &cx.curves[chain[0]];
        let last = &cx.curves[*chain.last().expect("chains are nonempty")];
        if cx.square {
            if first.s1_contacts != 1 || last.s2_contacts != 1 {
                bad.push(format!(
                    "chain at {} does not run from S1 to S2",
                    first.prototype
                ));
            }
        } else {
            match last.prototype.next() {
                Ok(n) if n == first.prototype => {}
                _ => bad.push(format!("cycle at {} does not close", first.prototype)),
            }
        }
    }
    for c in &cx.curves {
        let p = &c.prototype;
        let (nw, np) = (c.w_markers.len(), c.p_markers.len());
        if np != nw + c.s2_contacts {
            bad.push(format!(
                "C{p}: {np} P-markers vs {nw} W-markers + {} S2",
                c.s2_contacts
            ));
        }
        let expected_w = if p.is_terminal() {
            0
        } else {
            p.multiplicity().unwrap_or(0) as usize
        };
        if nw != expected_w {
            bad.push(format!(
                "C{p}: {nw} W-markers, multiplicity says {expected_w}"
            ));
        }
        if p.is_initial() && !p.is_terminal() && (nw, np, c.s1_contacts) != (1, 1, 1) {
            bad.push(format!("initial C{p} should meet W, P and S1 once each"));
        }
        if p.is_terminal() && (nw, np, c.s2_contacts) != (0, 1, 1) {
            bad.push(format!(
                "terminal C{p} should meet P and S2 once and miss W"
            ));
        }
    }
    bad
}

/// Compare W-marker spins on `C_P` and `C_{t(P)}`, one entry per curve:
/// `(curve, lhs, rhs)` with `lhs = #W¹(C_P) + #S2(C_P)` and
/// `rhs = #W⁰(C_{t(P)})`.
pub fn spin_balance(cx: &CuspComplex) -> Result<Vec<(Prototype, usize, usize)>> {
    if !two_component_regime(cx.d) {
        return Err(Error::Regime(format!("no spin components for D={}", cx.d)));
    }
    let mut out = Vec::new();
    for c in &cx.curves {
        let t = c.prototype.t_involution()?;
        let other = &cx.curves[cx.curve_index(&t).expect("t preserves the curve set")];
        out.push((c.prototype, c.w_count(1) + c.s2_contacts, other.w_count(0)));
    }
    Ok(out)
}

/// Whether `C_P ↦ C_{t(P)}`, `S1 ↔ S2` maps the junction graph onto itself.
pub fn tau_is_automorphism(cx: &CuspComplex) -> Result<bool> {
    let mut image = Vec::with_capacity(cx.curves.len());
    for c in &cx.curves {
        let t = c.prototype.t_involution()?;
        image.push(cx.curve_index(&t).expect("t preserves the curve set"));
    }
    let tau = |n: Node| match n {
        Node::Curve(i) => Node::Curve(image[i]),
        Node::S1 => Node::S2,
        Node::S2 => Node::S1,
    };
    let unordered = |a: Node, b: Node| if a <= b { (a, b) } else { (b, a) };
    let mut before: Vec<_> = cx
        .junctions
        .iter()
        .map(|j| unordered(j.from, j.to))
        .collect();
    let mut after: Vec<_> = cx
        .junctions
        .iter()
        .map(|j| unordered(tau(j.from), tau(j.to)))
        .collect();
    before.sort();
    after.sort();
    Ok(before == after)
}

fn list_attr(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(" ")
}

/// Render the complex as a Graphviz digraph.
pub fn export_dot(cx: &CuspComplex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph Y_{} {{", cx.d);
    for (i, c) in cx.curves.iter().enumerate() {
        let _ = write!(s, "  n{i} [label=\"C{}\"", c.prototype);
        if !c.w_markers.is_empty() {
            let _ = write!(
                s,
                ", wcusps=\"{}\"",
                list_attr(c.w_markers.iter().map(|m| m.prototype.to_string()))
            );
            if c.w_markers.iter().all(|m| m.spin.is_some()) {
                let spins = list_attr(
                    c.w_markers
                        .iter()
                        .filter_map(|m| m.spin)
                        .map(|e| e.to_string()),
                );
                let _ = write!(s, ", spin=\"{spins}\"");
            }
        }
        if !c.p_markers.is_empty() {
            let _ = write!(
                s,
                ", pcusps=\"{}\"",
                list_attr(c.p_markers.iter().map(|p| p.to_string()))
            );
        }
        s.push_str("];\n");
    }
    if cx.square {
        let _ = write!(s, "  S1 [label=\"S1\"");
        if let Some(cyl) = &cx.s1_one_cylinder {
            let _ = write!(s, ", onecyl=\"{}\"", cyl.total);
        }
        s.push_str("];\n  S2 [label=\"S2\"];\n");
        if let Some(n) = cx.s1_s2_points {
            let _ = writeln!(s, "  S1 -> S2 [dir=none, style=dashed, label=\"{n} pts\"];");
        }
    }
    let name = |n: Node| match n {
        Node::Curve(i) => format!("n{i}"),
        Node::S1 => "S1".into(),
        Node::S2 => "S2".into(),
    };
    for j in &cx.junctions {
        let _ = write!(s, "  {} -> {}", name(j.from), name(j.to));
        if j.order > 1 {
            let _ = write!(s, " [label=\"m={}\"]", j.order);
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}

/// The boundary-part symbols a class may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BSym {
    W,
    W0,
    W1,
    P,
    S1,
    S2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassCurve {
    W,
    W0,
    W1,
    P,
    S1,
    S2,
}

/// `w1·[ω₁] + w2·[ω₂] + j_coeff·j + Σ coeff·π_B[sym]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohClass {
    pub w1: Rational,
    pub w2: Rational,
    pub j_coeff: Rational,
    pub bpart: BTreeMap<BSym, Rational>,
}

impl CohClass {
    fn new(w1: Rational, w2: Rational, j: i64, sym: BSym) -> Self {
        CohClass {
            w1,
            w2,
            j_coeff: Rational::from_int(j),
            bpart: BTreeMap::from([(sym, Rational::one())]),
        }
    }

    pub fn add(&self, other: &CohClass) -> CohClass {
        let mut bpart = self.bpart.clone();
        for (k, v) in &other.bpart {
            let e = bpart.entry(*k).or_insert_with(Rational::zero);
            *e += v;
        }
        bpart.retain(|_, v| !v.is_zero());
        CohClass {
            w1: &self.w1 + &other.w1,
            w2: &self.w2 + &other.w2,
            j_coeff: &self.j_coeff + &other.j_coeff,
            bpart,
        }
    }

    pub fn scale(&self, k: &Rational) -> CohClass {
        CohClass {
            w1: &self.w1 * k,
            w2: &self.w2 * k,
            j_coeff: &self.j_coeff * k,
            bpart: self
                .bpart
                .iter()
                .filter(|_| !k.is_zero())
                .map(|(s, v)| (*s, v * k))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Intersection {
    Determined(Rational),
    Undetermined(String),
}

impl Intersection {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            Intersection::Determined(r) => Some(r),
            Intersection::Undetermined(_) => None,
        }
    }
}

fn ledger_regime(disc: &Discriminant) -> Result<()> {
    if disc.value < 5 {
        return Err(Error::Regime(format!(
            "intersection ledger needs D >= 5, got {}",
            disc.value
        )));
    }
    if let Some(d) = disc.root() {
        if d <= 3 {
            return Err(Error::Regime(format!(
                "intersection ledger is disabled for D = {}",
                disc.value
            )));
        }
    }
    Ok(())
}

pub fn fundamental_class(curve: ClassCurve, disc: Discriminant) -> Result<CohClass> {
    ledger_regime(&disc)?;
    let split = two_component_regime(disc.value);
    if matches!(curve, ClassCurve::W0 | ClassCurve::W1) && !split {
        return Err(Error::Regime(format!(
            "W_D is not split into spin components for D={}",
            disc.value
        )));
    }
    let root = disc.root();
    if matches!(curve, ClassCurve::S1 | ClassCurve::S2) && root.is_none() {
        return Err(Error::Regime(format!(
            "S1 and S2 exist only for square D, got {}",
            disc.value
        )));
    }
    // coefficient factors 1 - k/d; identically 1 for nonsquare D
    let factor = |k: i64| match root {
        Some(d) => Rational::one() - q(k, d),
        None => Rational::one(),
    };
    Ok(match curve {
        ClassCurve::W => CohClass::new(q(3, 2) * factor(2), q(9, 2) * factor(2), 0, BSym::W),
        ClassCurve::W0 => CohClass::new(q(3, 4) * factor(1), q(9, 4) * factor(1), 1, BSym::W0),
        ClassCurve::W1 => CohClass::new(q(3, 4) * factor(3), q(9, 4) * factor(3), -1, BSym::W1),
        ClassCurve::P => {
            let c = match root {
                Some(d) => q(5, 2) - q(3, d),
                None => q(5, 2),
            };
            CohClass::new(c.clone(), c, 0, BSym::P)
        }
        ClassCurve::S1 => {
            CohClass::new(q(6, root.expect("checked")), Rational::zero(), 0, BSym::S1)
        }
        ClassCurve::S2 => {
            CohClass::new(Rational::zero(), q(6, root.expect("checked")), 0, BSym::S2)
        }
    })
}

/// Rewrite symbols in terms of the ones the ledger pairs directly.
fn expand(sym: BSym, square: bool) -> Vec<(BSym, Rational)> {
    match (sym, square) {
        (BSym::W1, true) => vec![(BSym::W, Rational::one()), (BSym::W0, -Rational::one())],
        _ => vec![(sym, Rational::one())],
    }
}

fn nonsquare_pair(x: BSym, y: BSym, chi: &Rational) -> Option<Rational> {
    let spin = |s: BSym| matches!(s, BSym::W0 | BSym::W1);
    match (spin(x), spin(y)) {
        (false, false) => Some(q(-15, 1) * chi),
        (true, false) | (false, true) => Some(q(-15, 2) * chi),
        (true, true) => None,
    }
}

fn square_pair(x: BSym, y: BSym, d: i64) -> Option<Rational> {
    use BSym::*;
    let s = mobius_weighted_sum(1, d as u64);
    let half_phi = q(euler_phi(d as u64) as i64, 2);
    let (d1, d2, d3) = (
        Rational::from_int(d),
        Rational::from_int(d * d),
        Rational::from_int(d * d * d),
    );
    let poly = |c3: Rational, c2: Rational, c1: Rational| (c3 * &d3 + c2 * &d2 + c1 * &d1) * &s;
    let z = Rational::zero;
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let w_sq = poly(q(-5, 24), q(19, 24), q(-3, 4));
    let s2_w = poly(z(), q(-1, 8), q(1, 4));
    let w0_p = poly(q(-5, 48), q(11, 48), q(-1, 8));
    let w0_s2 = poly(z(), q(-1, 16), q(1, 16));
    Some(match (x, y) {
        (P, S1) | (P, S2) => poly(z(), q(-5, 24), q(1, 4)),
        (S1, S1) | (S2, S2) => poly(z(), q(-1, 12), z()),
        (S1, S2) => poly(z(), z(), q(-1, 2)) + half_phi,
        (W, S2) => s2_w,
        (W, W) => w_sq,
        (P, P) => poly(q(-5, 24), q(11, 24), q(-1, 4)),
        (W, S1) => poly(z(), q(-5, 24), q(3, 4)) - half_phi,
        // π_B[P] = π_B[W] + π_B[S2]
        (W, P) => w_sq + s2_w,
        (W0, P) => w0_p,
        (W0, S2) => w0_s2,
        (W0, S1) => poly(z(), q(-7, 48), q(3, 16)),
        (W, W0) => w0_p - w0_s2,
        _ => return None,
    })
}

/// Pair two classes. Pairings the ledger does not determine (those
/// needing `j²` or an unknown boundary product) come back as
/// [`Intersection::Undetermined`].
pub fn intersect(x: &CohClass, y: &CohClass, disc: Discriminant) -> Result<Intersection> {
    ledger_regime(&disc)?;
    let chi = chi_x(disc)?;
    let mut total = (&x.w1 * &y.w2 + &x.w2 * &y.w1) * &chi;
    if !x.j_coeff.is_zero() && !y.j_coeff.is_zero() {
        return Ok(Intersection::Undetermined("pairing needs j·j".into()));
    }
    let square = disc.is_square();
    for (sx, cx) in &x.bpart {
        for (sy, cy) in &y.bpart {
            for (ex, kx) in expand(*sx, square) {
                for (ey, ky) in expand(*sy, square) {
                    let v = match disc.root() {
                        Some(d) => square_pair(ex, ey, d),
                        None => nonsquare_pair(ex, ey, &chi),
                    };
                    match v {
                        Some(v) => total += &(v * cx * cy * &kx * &ky),
                        None => {
                            return Ok(Intersection::Undetermined(format!(
                                "boundary product {ex:?}.{ey:?} is not determined"
                            )))
                        }
                    }
                }
            }
        }
    }
    Ok(Intersection::Determined(total))
}

/// Pair the fundamental classes of two named curves.
pub fn intersect_curves(a: ClassCurve, b: ClassCurve, disc: Discriminant) -> Result<Intersection> {
    intersect(
        &fundamental_class(a, disc)?,
        &fundamental_class(b, disc)?,
        disc,
    )
}
