//! Curves with one place at infinity: the germ at the point at infinity,
//! barycentric shears, the embedded line test and genus bookkeeping.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactalg::{rat_str, resultant_y, rint, BiPoly, Rat, UPoly};
use crate::invariants::milnor_number;
use crate::newton::{newton_polygon, single_root_face};
use crate::tower::{build_tower, Tower};
use crate::Error;

/// Default cap on the degree of generated examples.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// An elementary automorphism, read as a map of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoStep {
    /// (x, y) -> (x - B(y), y).
    Shear(UPoly<Rat>),
    /// (x, y) -> (y, x).
    Swap,
    /// (x, y) -> M (x, y) + c with det M != 0.
    Affine { m: [[Rat; 2]; 2], c: [Rat; 2] },
}

fn y_poly(b: &UPoly<Rat>) -> BiPoly<Rat> {
    BiPoly::from_terms(b.coeffs().iter().enumerate().map(|(i, c)| ((0, i as u32), c.clone())))
}

fn lin(a: &Rat, b: &Rat, c: &Rat) -> BiPoly<Rat> {
    BiPoly::from_terms([((1, 0), a.clone()), ((0, 1), b.clone()), ((0, 0), c.clone())])
}

impl AutoStep {
    pub fn inverse(&self) -> AutoStep {
        match self {
            AutoStep::Shear(b) => AutoStep::Shear(b.map(|c| -c)),
            AutoStep::Swap => AutoStep::Swap,
            AutoStep::Affine { m, c } => {
                let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
                let inv = [[&m[1][1] / &det, -&m[0][1] / &det], [-&m[1][0] / &det, &m[0][0] / &det]];
                let c2 = [-(&inv[0][0] * &c[0] + &inv[0][1] * &c[1]), -(&inv[1][0] * &c[0] + &inv[1][1] * &c[1])];
                AutoStep::Affine { m: inv, c: c2 }
            }
        }
    }

    /// Components of the point map, evaluated on polynomials (X, Y).
    pub fn map(&self, x: &BiPoly<Rat>, y: &BiPoly<Rat>) -> (BiPoly<Rat>, BiPoly<Rat>) {
        match self {
            AutoStep::Shear(b) => (x.sub(&y_poly(b).compose(x, y)), y.clone()),
            AutoStep::Swap => (y.clone(), x.clone()),
            AutoStep::Affine { m, c } => {
                let px = x.scale(&m[0][0]).add(&y.scale(&m[0][1])).add(&BiPoly::constant(c[0].clone()));
                let py = x.scale(&m[1][0]).add(&y.scale(&m[1][1])).add(&BiPoly::constant(c[1].clone()));
                (px, py)
            }
        }
    }

    /// F composed with the point map.
    pub fn pullback(&self, f: &BiPoly<Rat>) -> BiPoly<Rat> {
        match self {
            AutoStep::Swap => f.swap_xy(),
            AutoStep::Affine { m, c } => f.compose(&lin(&m[0][0], &m[0][1], &c[0]), &lin(&m[1][0], &m[1][1], &c[1])),
            AutoStep::Shear(_) => {
                let (px, py) = self.map(&BiPoly::x(), &BiPoly::y());
                f.compose(&px, &py)
            }
        }
    }

    /// The image of the curve {F = 0}: F composed with the inverse map.
    pub fn apply(&self, f: &BiPoly<Rat>) -> BiPoly<Rat> {
        self.inverse().pullback(f)
    }
}

impl fmt::Display for AutoStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutoStep::Shear(b) => write!(f, "shear x -> x - ({})", b.render_in("y")),
            AutoStep::Swap => write!(f, "swap"),
            AutoStep::Affine { m, c } => write!(
                f,
                "affine [[{}, {}], [{}, {}]] + ({}, {})",
                rat_str(&m[0][0]),
                rat_str(&m[0][1]),
                rat_str(&m[1][0]),
                rat_str(&m[1][1]),
                rat_str(&c[0]),
                rat_str(&c[1])
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AutoSeq {
    pub steps: Vec<AutoStep>,
}

impl AutoSeq {
    pub fn new() -> Self {
        AutoSeq { steps: Vec::new() }
    }

    pub fn push(&mut self, s: AutoStep) {
        self.steps.push(s);
    }

    pub fn then(&self, o: &AutoSeq) -> AutoSeq {
        AutoSeq { steps: self.steps.iter().chain(o.steps.iter()).cloned().collect() }
    }

    pub fn inverse(&self) -> AutoSeq {
        AutoSeq { steps: self.steps.iter().rev().map(|s| s.inverse()).collect() }
    }

    /// Image of {F = 0} under the composite map.
    pub fn apply(&self, f: &BiPoly<Rat>) -> BiPoly<Rat> {
        self.steps.iter().fold(f.clone(), |g, s| s.apply(&g))
    }

    /// F composed with the composite map.
    pub fn pullback(&self, f: &BiPoly<Rat>) -> BiPoly<Rat> {
        self.steps.iter().rev().fold(f.clone(), |g, s| s.pullback(&g))
    }

    /// Components of the composite point map.
    pub fn components(&self) -> (BiPoly<Rat>, BiPoly<Rat>) {
        self.steps.iter().fold((BiPoly::x(), BiPoly::y()), |(x, y), s| s.map(&x, &y))
    }

    pub fn shears(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, AutoStep::Shear(_))).count()
    }
}

fn top_form(f: &BiPoly<Rat>, n: u32) -> BiPoly<Rat> {
    BiPoly::from_terms(f.terms().iter().filter(|(k, _)| k.0 + k.1 == n).map(|(k, c)| (*k, c.clone())))
}

fn affine(m: [[i64; 2]; 2], r: Option<(usize, usize, Rat)>, c: [Rat; 2]) -> AutoStep {
    let mut mm = [[rint(m[0][0]), rint(m[0][1])], [rint(m[1][0]), rint(m[1][1])]];
    if let Some((i, j, v)) = r {
        mm[i][j] = v;
    }
    AutoStep::Affine { m: mm, c }
}

/// F with top form y^n and no y^{n-1} term, and the map that produced it.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub f: BiPoly<Rat>,
    pub n: u32,
    pub seq: AutoSeq,
}

/// Move the point at infinity to (1:0:0) by a linear change over Q.
pub fn normalize(f: &BiPoly<Rat>) -> Result<Normalized, Error> {
    let n = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::Precondition("polynomial is constant".into()));
    }
    let top = top_form(f, n);
    let nn = rint(n as i64);
    let cy = top.coeff(0, n);
    let cx = top.coeff(n, 0);
    let mut seq = AutoSeq::new();
    let (step, lead) = if !cy.is_zero() {
        // top = c (y + r x)^n; send y + r x to y
        let r = top.coeff(1, n - 1) / (&nn * &cy);
        let want = BiPoly::from_terms([((0, 1), Rat::one()), ((1, 0), r.clone())]).pow(n).scale(&cy);
        if want != top {
            return Err(Error::NotApplicable("top form is not a power of a linear form over Q".into()));
        }
        let step = if r.is_zero() { None } else { Some(affine([[1, 0], [0, 1]], Some((1, 0, r)), [rint(0), rint(0)])) };
        (step, cy)
    } else if !cx.is_zero() {
        // top = c (x + r y)^n; send x + r y to y and y to x
        let r = top.coeff(n - 1, 1) / (&nn * &cx);
        let want = BiPoly::from_terms([((1, 0), Rat::one()), ((0, 1), r.clone())]).pow(n).scale(&cx);
        if want != top {
            return Err(Error::NotApplicable("top form is not a power of a linear form over Q".into()));
        }
        let step =
            if r.is_zero() { AutoStep::Swap } else { affine([[0, 1], [1, 0]], Some((1, 1, r)), [rint(0), rint(0)]) };
        (Some(step), cx)
    } else {
        return Err(Error::NotApplicable("top form is not a power of a linear form over Q".into()));
    };
    let mut g = f.scale(&(Rat::one() / lead));
    if let Some(s) = step {
        g = s.apply(&g);
        seq.push(s);
    }
    if n >= 2 {
        let e = g.coeff(0, n - 1);
        if !e.is_zero() {
            let s = affine([[1, 0], [0, 1]], None, [rint(0), e / &nn]);
            g = s.apply(&g);
            seq.push(s);
        }
    }
    debug_assert_eq!(top_form(&g, n), BiPoly::monomial(Rat::one(), 0, n));
    Ok(Normalized { f: g, n, seq })
}

/// u^n F(1/u, v/u) - t u^n for F with top form y^n, written in (x, y) = (u, v).
pub fn germ_at_infinity(f: &BiPoly<Rat>, n: u32, t_shift: &Rat) -> BiPoly<Rat> {
    let mut g = BiPoly::zero();
    for ((i, j), c) in f.terms() {
        g.add_term((n - i - j, *j), c);
    }
    g.add_term((n, 0), &(-t_shift.clone()));
    g.with_names(["u", "v"])
}

/// First face (v^{a_1} + xi u^{b_1})^{A_2} of a germ at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstFace {
    pub a1: u64,
    pub b1: u64,
    pub xi: Rat,
    pub big_a2: u64,
}

impl FirstFace {
    pub fn c1(&self) -> i64 {
        self.a1 as i64 - self.b1 as i64
    }
}

pub fn first_face(germ: &BiPoly<Rat>) -> Result<FirstFace, Error> {
    let np = newton_polygon(germ)?;
    if np.faces.len() != 1 || np.vertices[0].0 != 0 || np.vertices[1].1 != 0 {
        return Err(Error::Reducible("the germ at infinity has more than one branch".into()));
    }
    let fr = single_root_face(&np.faces[0].weight, germ)?;
    Ok(FirstFace { a1: fr.weight.paper_a() as u64, b1: fr.weight.paper_b() as u64, xi: fr.xi, big_a2: fr.mult as u64 })
}

#[derive(Clone, Debug)]
pub struct InfinityReport {
    /// Normalized polynomial, top form y^n.
    pub f: BiPoly<Rat>,
    pub normalization: AutoSeq,
    pub n: u32,
    /// Germ at (1:0:0) in the chart (u, v) = (1/x, y/x).
    pub f_local: BiPoly<Rat>,
    pub line: bool,
    pub face: Option<FirstFace>,
    pub tower: Option<Tower>,
    pub c1: Option<i64>,
    pub mu_inf: Option<i64>,
}

pub fn compactify(f: &BiPoly<Rat>, t_shift: &Rat) -> Result<InfinityReport, Error> {
    let nz = normalize(f)?;
    let f_local = germ_at_infinity(&nz.f, nz.n, t_shift);
    let mut rep = InfinityReport {
        f: nz.f,
        normalization: nz.seq,
        n: nz.n,
        f_local,
        line: nz.n == 1,
        face: None,
        tower: None,
        c1: None,
        mu_inf: None,
    };
    if rep.line {
        return Ok(rep);
    }
    let face = first_face(&rep.f_local)?;
    let tower = build_tower(&rep.f_local)?;
    rep.c1 = Some(face.c1());
    rep.mu_inf = Some(milnor_number(&tower));
    rep.face = Some(face);
    rep.tower = Some(tower);
    Ok(rep)
}

/// B(y) = -(coefficient of x^{d-1}) / (d * leading coefficient), F of x-degree d.
pub fn barycenter(f: &BiPoly<Rat>) -> Result<UPoly<Rat>, Error> {
    let xs = f.swap_xy().y_coeffs();
    let d = xs
        .len()
        .checked_sub(1)
        .filter(|d| *d >= 1)
        .ok_or_else(|| Error::NotApplicable("polynomial does not involve x".into()))?;
    let lead = &xs[d];
    if lead.degree() != Some(0) {
        return Err(Error::NotApplicable("leading x-coefficient depends on y; barycenter is not polynomial".into()));
    }
    let k = -(Rat::one() / (rint(d as i64) * lead.coeff(0)));
    Ok(xs[d - 1].map(|c| c * &k))
}

#[derive(Clone, Debug)]
pub struct ShearResult {
    /// Normalization followed by the shear.
    pub seq: AutoSeq,
    pub b: UPoly<Rat>,
    pub f: BiPoly<Rat>,
}

/// One barycentric shear for a curve with c_1 = 1 at infinity.
pub fn barycentric_shear(f: &BiPoly<Rat>) -> Result<ShearResult, Error> {
    let nz = normalize(f)?;
    if nz.n < 2 {
        return Err(Error::Precondition("curve is already a line".into()));
    }
    let face = first_face(&germ_at_infinity(&nz.f, nz.n, &rint(0)))?;
    if face.c1() != 1 {
        return Err(Error::Precondition(format!("c_1 = {} is not 1", face.c1())));
    }
    let b = barycenter(&nz.f)?;
    let step = AutoStep::Shear(b.clone());
    let g = step.apply(&nz.f);
    if g.total_degree().unwrap_or(0) >= nz.n {
        return Err(Error::Verification("barycentric shear did not lower the degree".into()));
    }
    let mut seq = nz.seq;
    seq.push(step);
    Ok(ShearResult { seq, b, f: g })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmsTrace {
    pub degree: u32,
    pub a1: u64,
    pub b1: u64,
    pub c1: i64,
}

#[derive(Clone, Debug)]
pub enum AmsVerdict {
    Line,
    NotLine { n: u32, a1: u64, c1: i64, genus: Option<GenusProfile> },
}

#[derive(Clone, Debug)]
pub struct AmsResult {
    pub verdict: AmsVerdict,
    /// Applying this to F gives the final curve (a line for LINE).
    pub seq: AutoSeq,
    pub final_f: BiPoly<Rat>,
    pub trace: Vec<AmsTrace>,
    pub bound: usize,
}

impl AmsResult {
    pub fn is_line(&self) -> bool {
        matches!(self.verdict, AmsVerdict::Line)
    }
}

pub fn ceil_log2(n: u32) -> usize {
    (32 - n.saturating_sub(1).leading_zeros()) as usize
}

/// Shear while c_1 = 1; stop at a line or at c_1 >= 2.
pub fn ams_line_test(f: &BiPoly<Rat>) -> Result<AmsResult, Error> {
    let n0 = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    let bound = ceil_log2(n0) + 1;
    let mut seq = AutoSeq::new();
    let mut cur = f.clone();
    let mut trace = Vec::new();
    loop {
        let nz = normalize(&cur)?;
        seq = seq.then(&nz.seq);
        cur = nz.f;
        if nz.n == 1 {
            return Ok(AmsResult { verdict: AmsVerdict::Line, seq, final_f: cur, trace, bound });
        }
        let face = first_face(&germ_at_infinity(&cur, nz.n, &rint(0)))?;
        trace.push(AmsTrace { degree: nz.n, a1: face.a1, b1: face.b1, c1: face.c1() });
        if face.c1() >= 2 {
            let genus = genus_profile(&cur).ok();
            let verdict = AmsVerdict::NotLine { n: nz.n, a1: face.a1, c1: face.c1(), genus };
            return Ok(AmsResult { verdict, seq, final_f: cur, trace, bound });
        }
        if seq.shears() >= bound {
            return Err(Error::Verification(format!("more than {} shears", bound)));
        }
        let sh = barycentric_shear(&cur)?;
        seq = seq.then(&sh.seq);
        cur = sh.f;
    }
}

/// b_i = a_{i-1} a_i - 1 for all levels, with a_0 = 1.
pub fn weight_constraints_check(t: &Tower) -> bool {
    (1..=t.k()).all(|i| {
        let prev = if i == 1 { 1 } else { t.a(i - 1) };
        t.b(i) == prev * t.a(i) - 1
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Verified,
    Unverified,
}

#[derive(Clone, Debug)]
pub struct GenusProfile {
    pub n: u32,
    pub mu_inf: i64,
    pub genus: i64,
    pub smoothness: Smoothness,
    pub weights: Vec<(u64, u64)>,
    pub big_a: Vec<u64>,
    pub c1: i64,
}

/// No common zero of F, F_x, F_y: projections to x of the zeros of (F, F_x)
/// and (F, F_y) are disjoint after some shear x -> x + l y.
pub fn affine_smoothness(f: &BiPoly<Rat>) -> Smoothness {
    for l in [0i64, 1, -1, 2, 3, -2] {
        let g = f.compose(&BiPoly::x().add(&BiPoly::y().scale(&rint(l))), &BiPoly::y());
        if !g.is_monic_y() && g.lead_y().degree() != Some(0) {
            continue;
        }
        let r1 = resultant_y(&g, &g.partial_x());
        let r2 = resultant_y(&g, &g.partial_y());
        if r1.degree().is_none() || r2.degree().is_none() {
            continue;
        }
        if r1.gcd(&r2).degree() == Some(0) {
            return Smoothness::Verified;
        }
    }
    Smoothness::Unverified
}

/// Genus of a curve smooth in the affine plane with one place at infinity.
pub fn genus_profile(f: &BiPoly<Rat>) -> Result<GenusProfile, Error> {
    let rep = compactify(f, &rint(0))?;
    let n = rep.n as i64;
    let (mu, weights, big_a, c1) = match &rep.tower {
        Some(t) => {
            (milnor_number(t), t.levels.iter().map(|l| (l.a(), l.b())).collect(), t.big_a.clone(), rep.c1.unwrap_or(0))
        }
        None => (0, vec![], vec![1], 0),
    };
    let twice = (n - 1) * (n - 2) - mu;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Verification(format!("(n-1)(n-2) - mu = {} is not a nonnegative even number", twice)));
    }
    let smoothness = affine_smoothness(&rep.f);
    Ok(GenusProfile { n: rep.n, mu_inf: mu, genus: twice / 2, smoothness, weights, big_a, c1 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusLedger {
    /// sum (A_i - 1) b_i A_{i+1} and (A_1 - 1)^2 - 2g.
    pub a_g: (i64, i64),
    /// sum a_i b_i A_{i+1}^2 and A_1^2.
    pub b: (i64, i64),
    /// A_2 and the bound (2g-1)/((a_1-1)(c_1-1)-1), when the denominator is positive.
    pub star: Option<(i64, Rat)>,
    /// k and log2(2g-1) + 1 as a float free comparison: 2^(k-1) <= 2g-1.
    pub length_bound: bool,
}

#[derive(Clone, Debug)]
pub struct LowGenusClassification {
    pub genus: i64,
    pub reduction: AutoSeq,
    pub model: BiPoly<Rat>,
    pub n: u32,
    pub k: usize,
    pub a1: u64,
    pub c1: i64,
    pub ledger: GenusLedger,
    pub description: Option<&'static str>,
}

pub fn genus_ledger(p: &GenusProfile) -> GenusLedger {
    let a = |i: usize| p.big_a.get(i - 1).copied().unwrap_or(1) as i64;
    let k = p.weights.len();
    let g = p.genus;
    let mut lhs_a = 0;
    let mut lhs_b = 0;
    for (i, (ai, bi)) in p.weights.iter().enumerate() {
        let i = i + 1;
        lhs_a += (a(i) - 1) * *bi as i64 * a(i + 1);
        lhs_b += *ai as i64 * *bi as i64 * a(i + 1) * a(i + 1);
    }
    let star = p.weights.first().and_then(|(a1, _)| {
        let den = (*a1 as i64 - 1) * (p.c1 - 1) - 1;
        (den > 0).then(|| (a(2), Rat::new((2 * g - 1).into(), den.into())))
    });
    let length_bound = k == 0 || (g >= 1 && (1i64 << (k - 1)) < 2 * g);
    GenusLedger { a_g: (lhs_a, (a(1) - 1).pow(2) - 2 * g), b: (lhs_b, a(1) * a(1)), star, length_bound }
}

/// Reduce by barycentric shears, then classify genus 1 and 2.
pub fn classify_low_genus(f: &BiPoly<Rat>) -> Result<LowGenusClassification, Error> {
    let ams = ams_line_test(f)?;
    let AmsVerdict::NotLine { n, a1, c1, .. } = ams.verdict else {
        return Err(Error::NotApplicable("genus 0: the curve is an embedded line, see the line test".into()));
    };
    let p = genus_profile(&ams.final_f)?;
    if p.smoothness != Smoothness::Verified {
        return Err(Error::Precondition("affine smoothness could not be verified".into()));
    }
    let ledger = genus_ledger(&p);
    if ledger.a_g.0 != ledger.a_g.1 || ledger.b.0 > ledger.b.1 {
        return Err(Error::Verification(format!("genus ledger fails: {:?}", ledger)));
    }
    if let Some((a2, bound)) = &ledger.star {
        if rint(*a2) > *bound {
            return Err(Error::Verification(format!("A_2 = {} exceeds {}", a2, bound)));
        }
    }
    let k = p.weights.len();
    let description = match (p.genus, k, a1, c1, n) {
        (1, 1, 3, 2, 3) => Some("smooth cubic, tangency order 3 at infinity"),
        (2, 1, 5, 2, 5) => Some("quintic with a non-degenerate cusp at infinity"),
        (1, ..) | (2, ..) => {
            return Err(Error::Verification(format!(
                "genus {} curve reduced to k={}, a_1={}, c_1={}, n={}",
                p.genus, k, a1, c1, n
            )))
        }
        _ => None,
    };
    Ok(LowGenusClassification {
        genus: p.genus,
        reduction: ams.seq,
        model: ams.final_f,
        n,
        k,
        a1,
        c1,
        ledger,
        description,
    })
}

#[derive(Clone, Debug)]
pub struct GeneratedExample {
    pub a: Vec<u32>,
    pub n: u32,
    pub f: BiPoly<Rat>,
    /// The maps (x_i, x_{i+1}) -> (x_{i+1}, x_{i+2}); they send {F = 0} to {y = 0}.
    pub seq: AutoSeq,
    pub weights: Vec<(u64, u64)>,
    /// h_1, ..., h_k in the chart (u, v); h_k is the germ at infinity.
    pub roots: Vec<BiPoly<Rat>>,
    pub mu: i64,
}

/// x_0 = x, x_1 = y, x_{i+2} = x_i + x_{i+1}^{a_{i+1}}, F = x_{k+1}.
pub fn generate_example(a: &[u32], cap: usize) -> Result<GeneratedExample, Error> {
    if a.is_empty() || a.iter().any(|&ai| ai < 2) {
        return Err(Error::Precondition("weights must be integers >= 2".into()));
    }
    let n: u64 = a.iter().map(|&ai| ai as u64).product();
    if n > cap as u64 {
        return Err(Error::DegreeCap { degree: n as usize, cap });
    }
    let mut xs = vec![BiPoly::<Rat>::x(), BiPoly::y()];
    for (i, &ai) in a.iter().enumerate() {
        let next = xs[i].add(&xs[i + 1].pow(ai));
        xs.push(next);
    }
    let f = xs[a.len() + 1].clone();
    // (p, q) -> (q, p + q^a) is a shear by -y^a followed by a swap
    let mut seq = AutoSeq::new();
    for &ai in a {
        seq.push(AutoStep::Shear(UPoly::monomial(-Rat::one(), ai as usize)));
        seq.push(AutoStep::Swap);
    }
    let u = BiPoly::<Rat>::x().with_names(["u", "v"]);
    let mut hs = vec![BiPoly::<Rat>::y().with_names(["u", "v"])];
    let mut prod_before = 1u32;
    for (i, &ai) in a.iter().enumerate() {
        let prev_a = if i == 0 { 1 } else { a[i - 1] };
        let e = prod_before / prev_a.max(1) * (prev_a * ai - 1);
        let lower = if i == 0 { BiPoly::one() } else { hs[i - 1].clone() };
        let h = hs[i].pow(ai).add(&lower.mul(&u.pow(e)));
        hs.push(h);
        prod_before *= ai;
    }
    let weights = (0..a.len())
        .map(|i| {
            let prev = if i == 0 { 1 } else { a[i - 1] as u64 };
            (a[i] as u64, prev * a[i] as u64 - 1)
        })
        .collect();
    let nn = n as i64;
    Ok(GeneratedExample {
        a: a.to_vec(),
        n: n as u32,
        f,
        seq,
        weights,
        roots: hs[1..].to_vec(),
        mu: (nn - 1) * (nn - 2),
    })
}
