//! Numerical invariants of a tower: intersection multiplicities, the
//! monodromy zeta function and the Milnor number.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactalg::{resultant_y_order, BiPoly, Rat, UPoly};
use crate::newton::{Subdivision, Weight};
use crate::tower::{strict_transform_profile, Tower};
use crate::Error;

/// Product of (1 - t^e)^s over its factors, kept in order of first
/// appearance with equal exponents merged.
#[derive(Clone, Debug)]
pub struct ZetaFn {
    factors: Vec<(u64, i64)>,
    pub milnor: i64,
}

impl ZetaFn {
    pub fn from_factors(it: impl IntoIterator<Item = (u64, i64)>, milnor: i64) -> Self {
        let mut factors: Vec<(u64, i64)> = Vec::new();
        for (e, s) in it {
            match factors.iter_mut().find(|f| f.0 == e) {
                Some(f) => f.1 += s,
                None => factors.push((e, s)),
            }
        }
        factors.retain(|f| f.1 != 0);
        ZetaFn { factors, milnor }
    }

    /// (exponent, power) pairs after cancellation.
    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    pub fn canonical(&self) -> BTreeMap<u64, i64> {
        self.factors.iter().copied().collect()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(e, s)| *e as i64 * s).sum()
    }

    /// Power series coefficients up to t^terms.
    pub fn series(&self, terms: usize) -> Vec<Rat> {
        let mut acc = vec![Rat::zero(); terms + 1];
        acc[0] = Rat::from_integer(1.into());
        for (e, s) in &self.factors {
            let e = *e as usize;
            for _ in 0..s.unsigned_abs() {
                if *s > 0 {
                    for i in (e..=terms).rev() {
                        let v = acc[i - e].clone();
                        acc[i] -= v;
                    }
                } else {
                    for i in e..=terms {
                        let v = acc[i - e].clone();
                        acc[i] += v;
                    }
                }
            }
        }
        acc
    }
}

impl PartialEq for ZetaFn {
    fn eq(&self, o: &Self) -> bool {
        self.canonical() == o.canonical()
    }
}

impl fmt::Display for ZetaFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sign: i64| -> (String, usize) {
            let mut s = String::new();
            let mut count = 0;
            for (e, p) in &self.factors {
                if p.signum() == sign {
                    for _ in 0..p.unsigned_abs() {
                        s.push_str(&format!("(1-t^{})", e));
                        count += 1;
                    }
                }
            }
            (s, count)
        };
        let (num, _) = part(1);
        let (den, dc) = part(-1);
        let num = if num.is_empty() { "1".to_string() } else { num };
        match dc {
            0 => write!(f, "{}", num),
            1 => write!(f, "{}/{}", num, den),
            _ => write!(f, "{}/({})", num, den),
        }
    }
}

pub fn milnor_number(t: &Tower) -> i64 {
    let mut mu = 1 - t.big_a(1) as i64;
    for i in 1..=t.k() {
        mu += (t.big_a(i) as i64 - 1) * t.b(i) as i64 * t.big_a(i + 1) as i64;
    }
    mu
}

pub fn zeta_function(t: &Tower) -> Result<ZetaFn, Error> {
    let mut fs = vec![(t.big_a(1), -1)];
    for i in 1..=t.k() {
        fs.push((t.m_f(i), 1));
        fs.push((t.m_f(i) / t.a(i), -1));
    }
    let z = ZetaFn::from_factors(fs, milnor_number(t));
    if z.degree() != z.milnor - 1 {
        return Err(Error::Verification(format!("deg zeta = {} but mu - 1 = {}", z.degree(), z.milnor - 1)));
    }
    Ok(z)
}

/// Milnor number from characteristic pairs by the classical conductor
/// formula.
pub fn milnor_from_puiseux(pairs: &[(u64, u64)]) -> i64 {
    if pairs.is_empty() {
        return 0;
    }
    let n: Vec<i64> = pairs.iter().map(|p| p.0 as i64).collect();
    let beta0: i64 = n.iter().product();
    let mut e_prev = beta0;
    let mut mu = 0;
    for (i, (_, m)) in pairs.iter().enumerate() {
        let beta: i64 = *m as i64 * n[i + 1..].iter().product::<i64>();
        let e = num_integer::gcd(e_prev, beta);
        mu += (beta - 1) * (e_prev - e);
        e_prev = e;
    }
    mu
}

/// mu = I(f_x, f_y) for a Weierstrass polynomial, through the resultant.
pub fn milnor_oracle(f: &BiPoly<Rat>) -> Result<i64, Error> {
    match intersection_oracle(&f.partial_y(), &f.partial_x())? {
        IntersectionValue::Finite(v) => Ok(v as i64),
        IntersectionValue::Infinite => Err(Error::Precondition("singularity is not isolated".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for IntersectionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntersectionValue::Finite(v) => write!(f, "{}", v),
            IntersectionValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Recursion through the strict transforms.
    Tower,
    /// Closed sum over common levels plus the face term I(P, P').
    Lemma,
    /// Closed form for pairs of approximate-root curves.
    RootTable,
    /// Closed form for D_a against C_i.
    DivisorTable,
    /// Order of the resultant.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub curves: (String, String),
    pub depth: Option<usize>,
    pub value: IntersectionValue,
    pub route: Route,
}

/// I(P, P') for two face weights; the axis case E1 stands for v^{A'}.
pub fn face_pair_number(p: &Weight, q: &Weight) -> u64 {
    if *q == Weight::E1 {
        return p.paper_b() as u64;
    }
    let (a, b) = (p.paper_a(), p.paper_b());
    let (a2, b2) = (q.paper_a(), q.paper_b());
    (a * b2).min(a2 * b) as u64
}

/// I(C, {g = 0}) through the tower of C, cross-checked by the closed sum.
pub fn intersection_tower(t: &Tower, g: &BiPoly<Rat>) -> Result<IntersectionRecord, Error> {
    let pr = strict_transform_profile(g, t)?;
    let curves = ("C".to_string(), g.render());
    let Some(v) = pr.intersection else {
        return Ok(IntersectionRecord {
            curves,
            depth: Some(pr.depth),
            value: IntersectionValue::Infinite,
            route: Route::Tower,
        });
    };
    if let (Some((q, _, mult)), true) = (&pr.face, pr.depth < t.k()) {
        let lv = &t.levels[pr.depth];
        let same_root = *q == lv.weight;
        let term = if same_root { lv.a() * lv.b() } else { face_pair_number(&lv.weight, q) }
            * t.big_a(pr.depth + 2)
            * *mult as u64;
        let lemma: u64 = pr.contributions[..pr.depth].iter().sum::<u64>() + term;
        if lemma != v {
            return Err(Error::Verification(format!("closed sum {} differs from the recursion {}", lemma, v)));
        }
    }
    Ok(IntersectionRecord { curves, depth: Some(pr.depth), value: IntersectionValue::Finite(v), route: Route::Tower })
}

fn pure_power(p: &UPoly<Rat>) -> Option<usize> {
    let nz: Vec<usize> = (0..p.coeffs().len()).filter(|&i| !p.coeffs()[i].is_zero()).collect();
    if nz.len() == 1 {
        Some(nz[0])
    } else {
        None
    }
}

fn full_power(p: &BiPoly<Rat>) -> bool {
    pure_power(&p.at_x0()) == Some(p.deg_y().unwrap_or(0) as usize)
}

/// ord_x Res_y(f, g). One of f(0, y), g(0, y) must be a nonzero multiple of
/// y^{deg_y}, so that all its y-roots tend to 0 and the order counts only
/// the intersection at the origin.
pub fn intersection_oracle(f: &BiPoly<Rat>, g: &BiPoly<Rat>) -> Result<IntersectionValue, Error> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !full_power(f) && !full_power(g) {
        return Err(Error::Precondition("neither f(0, y) nor g(0, y) is c*y^deg".into()));
    }
    Ok(match resultant_y_order(f, g) {
        Some(o) => IntersectionValue::Finite(o as u64),
        None => IntersectionValue::Infinite,
    })
}

/// I(C_l, C_j) for l < j and I(D_a, C_i) from the closed forms.
#[derive(Clone, Debug)]
pub struct TschirnTable {
    /// ((l, j), I(C_l, C_j)) for 1 <= l < j <= k; C_k is the curve itself.
    pub roots: Vec<((usize, usize), u64)>,
    /// I(D_a, C_i) for proper divisors a of n; D_a for a = a_1...a_s is C_s.
    pub divisors: Vec<DivisorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorEntry {
    pub a: u64,
    /// Largest s with a_1...a_s | a.
    pub s: usize,
    pub i: usize,
    pub value: IntersectionValue,
    pub route: Route,
}

impl TschirnTable {
    pub fn root_pair(&self, l: usize, j: usize) -> IntersectionValue {
        if l == j {
            return IntersectionValue::Infinite;
        }
        let (l, j) = (l.min(j), l.max(j));
        self.roots
            .iter()
            .find(|r| r.0 == (l, j))
            .map(|r| IntersectionValue::Finite(r.1))
            .unwrap_or(IntersectionValue::Infinite)
    }

    pub fn divisor(&self, a: u64, i: usize) -> Option<IntersectionValue> {
        self.divisors.iter().find(|d| d.a == a && d.i == i).map(|d| d.value)
    }
}

fn exact_quotient(num: u64, den: u64, what: &str) -> Result<u64, Error> {
    if !num.is_multiple_of(den) {
        return Err(Error::Verification(format!("{}: {}/{} is not an integer", what, num, den)));
    }
    Ok(num / den)
}

/// The closed forms cover D_a against C_i except when a is not a product
/// a_1...a_s and i = s, where the value depends on more than the weights.
pub fn tschirn_intersection_table(t: &Tower) -> Result<TschirnTable, Error> {
    let k = t.k();
    let term = |i: usize| t.a(i) * t.b(i) * t.big_a(i + 1) * t.big_a(i + 1);
    let mut roots = Vec::new();
    for l in 1..=k {
        for j in l + 1..=k {
            let s: u64 = (1..=l + 1).map(term).sum();
            roots.push(((l, j), exact_quotient(s, t.big_a(l + 1) * t.big_a(j + 1), "root table")?));
        }
    }
    let table = TschirnTable { roots, divisors: Vec::new() };
    let n = t.n;
    let mut divisors = Vec::new();
    for a in (1..n).filter(|a| n.is_multiple_of(*a)) {
        let mut s = 0;
        let mut prod = 1;
        while s < k && a % (prod * t.a(s + 1)) == 0 {
            prod *= t.a(s + 1);
            s += 1;
        }
        for i in 1..=k {
            if prod == a && s > 0 {
                divisors.push(DivisorEntry { a, s, i, value: table.root_pair(s, i), route: Route::RootTable });
                continue;
            }
            if i == s {
                continue;
            }
            let alpha = s.min(i);
            let num: u64 = (1..=alpha + 1).map(term).sum();
            let v = exact_quotient(num, t.big_a(i + 1) * (n / a), "divisor table")?;
            divisors.push(DivisorEntry { a, s, i, value: IntersectionValue::Finite(v), route: Route::DivisorTable });
        }
    }
    Ok(TschirnTable { divisors, ..table })
}

/// One exceptional divisor of the resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorData {
    /// Level i whose modification creates the divisor.
    pub level: usize,
    pub weight: Weight,
    pub multiplicity: u64,
    /// Number of points where the divisor meets the rest of the total
    /// transform.
    pub delta: u32,
}

/// Multiplicities and valences of all exceptional divisors, and the zeta
/// function they give by A'Campo's formula.
pub fn exceptional_multiplicities(t: &Tower) -> Result<(Vec<DivisorData>, ZetaFn), Error> {
    let mut out = Vec::new();
    for i in 0..t.k() {
        let lv = &t.levels[i];
        let mut verts = lv.subdivision.vertices.clone();
        if i == 0 && verts[1] == lv.weight {
            // keep the divisor next to x = 0 distinct from E(P_1)
            verts.insert(1, Weight::new(lv.weight.coeff_x() + 1, 1)?);
        }
        let sub = Subdivision { vertices: verts };
        if !sub.is_regular() {
            return Err(Error::Verification(format!("level {}: subdivision is not regular", i)));
        }
        let last = sub.vertices.len() - 2;
        for (j, w) in sub.vertices.iter().enumerate().take(last + 1).skip(1) {
            let d_local = (w.coeff_y() as u64 * t.big_a(i + 1)).min(w.coeff_x() as u64 * lv.b() * t.big_a(i + 2));
            let m = w.coeff_x() as u64 * t.m_f(i) + d_local;
            let delta = if *w == lv.weight {
                3
            } else if j == last || (i == 0 && j == 1) {
                1
            } else {
                2
            };
            out.push(DivisorData { level: i, weight: *w, multiplicity: m, delta });
        }
    }
    let z = ZetaFn::from_factors(
        out.iter().filter(|d| d.delta != 2).map(|d| (d.multiplicity, d.delta as i64 - 2)),
        crate::invariants::milnor_number(t),
    );
    let direct = zeta_function(t)?;
    if z != direct {
        return Err(Error::Verification(format!("A'Campo zeta {} differs from {}", z, direct)));
    }
    Ok((out, z))
}
