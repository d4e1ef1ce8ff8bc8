//! Tschirnhausen resolution towers of irreducible germs: weight vectors,
//! face roots, approximate-root coordinates and multiplicities.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exactalg::modular::{inv_mod, mul_mod, rat_mod};
use crate::exactalg::{resultant_y_order, BiPoly, Rat, Reversion, TruncSeries, XSeries};
use crate::newton::{
    perturbed_refinement, regular_refinement, single_root_face, FaceRoot, NewtonPolygon, Subdivision, Weight,
};
use crate::tschirn::approximate_root;
use crate::Error;

/// How the regular subdivision of each level is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    Minimal,
    /// Minimal refinement with this many mediants inserted after P.
    ExtraMediants(u32),
}

impl Refinement {
    fn subdivision(&self, anchors: &[Weight]) -> Result<Subdivision, Error> {
        match self {
            Refinement::Minimal => regular_refinement(anchors),
            Refinement::ExtraMediants(k) => perturbed_refinement(anchors, *k),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TowerOptions {
    pub refinement: Refinement,
    /// Initial series precision in the exceptional coordinate.
    pub initial_precision: usize,
    /// Number of precision doublings allowed at any one level.
    pub max_retries: u32,
    /// Bound on the precision a level may request for itself.
    pub max_precision: Option<usize>,
}

impl Default for TowerOptions {
    fn default() -> Self {
        TowerOptions { refinement: Refinement::Minimal, initial_precision: 8, max_retries: 6, max_precision: None }
    }
}

#[derive(Clone, Debug)]
struct Transition {
    p: Weight,
    q: Weight,
    xi: Rat,
    rev: Arc<Reversion>,
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    /// 1-based level index i.
    pub index: usize,
    pub weight: Weight,
    /// Face root in the coordinates of the minimal charts.
    pub xi: Rat,
    /// Face root in the coordinates actually used.
    pub xi_raw: Rat,
    pub face: FaceRoot,
    /// h_i, the approximate root of degree n / A_{i+1}.
    pub h: BiPoly<Rat>,
    /// m_i(f).
    pub m_f: u64,
    /// (l, m_i(h_l)) for l >= i.
    pub m_h: Vec<(usize, u64)>,
    /// Columns P_i and the successor P_i' used for the chart.
    pub chart: [[i64; 2]; 2],
    /// G_i with Phi_i^* f = u_i^{m_i(f)} G_i(u_i, v_i).
    pub local_f: TruncSeries,
    pub subdivision: Subdivision,
}

impl TowerLevel {
    pub fn a(&self) -> u64 {
        self.weight.paper_a() as u64
    }
    pub fn b(&self) -> u64 {
        self.weight.paper_b() as u64
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    pub f: BiPoly<Rat>,
    pub n: u64,
    pub levels: Vec<TowerLevel>,
    /// A_1, ..., A_{k+1}.
    pub big_a: Vec<u64>,
    pub puiseux: Vec<(u64, u64)>,
    pub precision: usize,
    pub retries: u32,
    pub refinement: Refinement,
    transitions: Vec<Transition>,
}

/// The chart independent part of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSignature {
    pub k: usize,
    pub weights: Vec<Weight>,
    pub xis: Vec<Rat>,
    pub m_f: Vec<u64>,
}

fn rpow(r: &Rat, e: i64) -> Rat {
    let p = num_traits::pow::pow(r.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        Rat::one() / p
    } else {
        p
    }
}

fn precision_error() -> Error {
    Error::Precision { retries: 0 }
}

fn is_precision(e: &Error) -> bool {
    matches!(e, Error::Precision { .. } | Error::OutOfBox { .. })
}

/// Smallest weight value that an unknown coefficient could have.
fn box_limit(p: &Weight, g: &TruncSeries) -> Option<i64> {
    let mut l: Option<i64> = None;
    if !g.bound_x().is_exact() {
        l = Some(p.coeff_x() * (g.nx() as i64 + 1));
    }
    if !g.bound_y().is_exact() {
        let v = p.coeff_y() * (g.ny() as i64 + 1);
        l = Some(l.map_or(v, |x| x.min(v)));
    }
    l
}

fn certified_d(p: &Weight, g: &TruncSeries) -> Result<i64, Error> {
    let m = g.support().map(|((al, be), _)| p.eval((al as u32, be as u32))).min();
    match (m, box_limit(p, g)) {
        (Some(m), Some(l)) if m < l => Ok(m),
        (Some(m), None) => Ok(m),
        (None, None) => Err(Error::ZeroPolynomial),
        _ => Err(precision_error()),
    }
}

fn precision_after(g: &TruncSeries, p: &Weight, d: i64, cap: usize) -> Result<usize, Error> {
    match box_limit(p, g) {
        None => Ok(cap),
        Some(l) => {
            let t = l - 1 - d;
            if t < 0 {
                Err(precision_error())
            } else {
                Ok((t as usize).min(cap))
            }
        }
    }
}

/// (w + s)^y truncated at w^wmax.
fn binomial_shift(y: u64, s: &Rat, wmax: usize) -> Vec<Rat> {
    let top = (y as usize).min(wmax);
    let mut out = vec![Rat::zero(); top + 1];
    let mut sp = rpow(s, (y as usize - top) as i64);
    let mut c = crate::exactalg::binom(y, top as u64);
    for j in (0..=top).rev() {
        out[j] = Rat::from_integer(c.clone()) * &sp;
        if j > 0 {
            // C(y, j-1) = C(y, j) * j / (y - j + 1)
            c = c * num_bigint::BigInt::from(j) / num_bigint::BigInt::from(y as usize - j + 1);
            sp *= s;
        }
    }
    out
}

/// Rows in w of Y^{a'e} sum g_{ab} X^{a al + b be - d} Y^{a' al + b' be} at
/// Y = w - xi, to X-precision t and w-degree wmax.
#[allow(clippy::too_many_arguments)]
fn pull_back(g: &TruncSeries, e: u64, p: Weight, q: Weight, xi: &Rat, d: i64, t: usize, wmax: usize) -> Vec<XSeries> {
    let mut rows = vec![vec![Rat::zero(); t + 1]; wmax + 1];
    let mut cache: HashMap<u64, Vec<Rat>> = HashMap::new();
    let shift = -xi.clone();
    for ((al, be), c) in g.support() {
        let xe = p.coeff_x() * al as i64 + p.coeff_y() * be as i64 - d;
        debug_assert!(xe >= 0);
        if xe < 0 || xe as usize > t {
            continue;
        }
        let ye = (q.coeff_x() as u64) * (al as u64 + e) + (q.coeff_y() as u64) * be as u64;
        let coefs = cache.entry(ye).or_insert_with(|| binomial_shift(ye, &shift, wmax));
        for (j, k) in coefs.iter().enumerate() {
            if !k.is_zero() {
                rows[j][xe as usize] += c * k;
            }
        }
    }
    rows.into_iter().map(|r| XSeries::from_coeffs(r, t)).collect()
}

fn step(g: &TruncSeries, e: u64, tr: &Transition) -> Result<(i64, u64, TruncSeries), Error> {
    let d = certified_d(&tr.p, g)?;
    let t = precision_after(g, &tr.p, d, tr.rev.t)?;
    let rows = pull_back(g, e, tr.p, tr.q, &tr.xi, d, t, tr.rev.s + t);
    let out = tr.rev.compose(&rows);
    Ok((d, tr.p.coeff_x() as u64 * e + d as u64, out))
}

fn exact_series(g: &BiPoly<Rat>) -> TruncSeries {
    TruncSeries::from_bipoly(g, g.deg_x().unwrap_or(0) as usize, g.deg_y().unwrap_or(0) as usize)
}

/// (u-exponent, local series) of g at every level reached by `trs`.
fn transport_all(g: &BiPoly<Rat>, trs: &[Transition]) -> Result<Vec<(u64, TruncSeries)>, Error> {
    let mut s = exact_series(g);
    let mut e = 0;
    let mut out = vec![(0, s.clone())];
    for tr in trs {
        let (_, e2, s2) = step(&s, e, tr)?;
        s = s2;
        e = e2;
        out.push((e, s.clone()));
    }
    Ok(out)
}

fn v_order(g: &TruncSeries) -> Result<usize, Error> {
    (0..=g.ny()).find(|&b| !g.row(b).get(0).is_zero()).ok_or_else(precision_error)
}

fn read_face(g: &TruncSeries, big_a: usize, level: usize) -> Result<FaceRoot, Error> {
    if g.row(0).is_zero() {
        return Err(if g.bound_x().is_exact() {
            Error::Reducible(format!("level {}: v divides the local equation", level))
        } else {
            precision_error()
        });
    }
    let pts: Vec<(u32, u32)> =
        g.support().filter(|((_, b), _)| *b <= big_a).map(|((a, b), _)| (a as u32, b as u32)).collect();
    let np = NewtonPolygon::from_points(pts)?;
    if np.vertices[0] != (0, big_a as u32) {
        return Err(Error::Verification(format!("level {}: polygon does not start at (0,{})", level, big_a)));
    }
    if np.faces.len() != 1 {
        return Err(Error::Reducible(format!("level {}: Newton polygon has {} faces", level, np.faces.len())));
    }
    let fc = &np.faces[0];
    let face = BiPoly::from_terms(
        g.support()
            .filter(|((a, b), _)| fc.weight.eval((*a as u32, *b as u32)) == fc.d)
            .map(|((a, b), c)| ((a as u32, b as u32), c.clone())),
    );
    single_root_face(&fc.weight, &face)
}

fn check_weierstrass(f: &BiPoly<Rat>) -> Result<usize, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic_y() {
        return Err(Error::NotWeierstrass("not monic in y".into()));
    }
    let n = f.deg_y().unwrap() as usize;
    if n == 0 {
        return Err(Error::NotWeierstrass("degree 0 in y".into()));
    }
    let f0 = f.at_x0();
    if f0.coeffs().iter().take(n).any(|c| !c.is_zero()) {
        return Err(Error::NotWeierstrass("f(0, y) is not y^n".into()));
    }
    if n == 1 {
        return Err(Error::SmoothGerm);
    }
    Ok(n)
}

/// Degree of gcd(g, g') for g given low degree first with a unit leading
/// coefficient mod p.
fn gcd_with_derivative_mod(g: &[u64], p: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a = g.to_vec();
    let mut b: Vec<u64> = g.iter().enumerate().skip(1).map(|(i, c)| mul_mod(*c, i as u64 % p, p)).collect();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let k = mul_mod(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + p - mul_mod(k, *c, p)) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// A squarefree specialization certifies squarefreeness, first tried modulo
/// primes; the resultant settles the rest.
fn has_repeated_factor(f: &BiPoly<Rat>) -> bool {
    for p in [1_000_003u64, 998_244_353] {
        for x0 in [3i64, 7, -5] {
            let x0 = Rat::from_integer(x0.into());
            let g: Option<Vec<u64>> = f.y_coeffs().iter().map(|c| rat_mod(&c.eval(&x0), p)).collect();
            if g.is_some_and(|g| gcd_with_derivative_mod(&g, p) == 0) {
                return false;
            }
        }
    }
    let fy = f.partial_y();
    for x0 in [3i64, 7, -5, 11, 2] {
        let x0 = Rat::from_integer(x0.into());
        let p = crate::exactalg::UPoly::new(f.y_coeffs().iter().map(|c| c.eval(&x0)).collect());
        let dp = p.derivative();
        if p.gcd(&dp).degree() == Some(0) {
            return false;
        }
    }
    resultant_y_order(f, &fy).is_none()
}

pub fn build_tower(f: &BiPoly<Rat>) -> Result<Tower, Error> {
    build_tower_with(f, &TowerOptions::default())
}

pub fn build_tower_with(f: &BiPoly<Rat>, opts: &TowerOptions) -> Result<Tower, Error> {
    check_weierstrass(f)?;
    if has_repeated_factor(f) {
        return Err(Error::Reducible("f has a repeated factor".into()));
    }
    build_planned(f, opts, opts.initial_precision.max(2))
}

/// Face of f read at a level: (a, b, A) with the face (v^a + xi u^b)^A.
type FaceShape = (usize, usize, usize);

/// Series targets (x-precision, v-rows) at levels 1..=faces.len(), planned
/// backwards so that every step can deliver what the next level asks for.
fn plan(faces: &[FaceShape], own: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let m = faces.len();
    let mut out = vec![(0, 0); m + 1];
    for l in (1..=m).rev() {
        let (mut t, mut s) = own[l];
        if l < m {
            let (a, b, big_a) = faces[l];
            let need = a * b * big_a + out[l + 1].0 + 1;
            t = t.max(need.div_ceil(a) - 1);
            s = s.max(need.div_ceil(b) - 1);
        }
        out[l] = (t, s);
    }
    out
}

/// State after a level is built, reusable while its target is unchanged.
struct Snapshot {
    target: (usize, usize),
    tr: Transition,
    level: TowerLevel,
    g: TruncSeries,
    e: u64,
    cu: Rat,
    cv: Rat,
}

enum Stop {
    /// The face at this level was read for the first time.
    Face(FaceShape),
    /// Series precision ran out at this level.
    Short(usize),
    Fatal(Error),
}

fn build_planned(f: &BiPoly<Rat>, opts: &TowerOptions, base: usize) -> Result<Tower, Error> {
    let own_for = |big_a: usize| (base, big_a + (base / 4).max(1));
    let mut faces: Vec<FaceShape> = Vec::new();
    let mut own = vec![(0, 0)];
    let mut doublings = vec![0u32];
    let mut retries = 0;
    let mut cache = Vec::new();
    loop {
        let targets = plan(&faces, &own);
        match build_at(f, opts.refinement, &faces, &targets, &mut cache) {
            Ok(mut t) => {
                t.precision = base;
                t.retries = retries;
                return Ok(t);
            }
            Err(Stop::Face(shape)) => {
                faces.push(shape);
                own.push(own_for(shape.2));
                doublings.push(0);
            }
            Err(Stop::Short(lvl)) => {
                let lvl = lvl.clamp(1, faces.len().max(1));
                if lvl >= own.len() {
                    return Err(Error::Precision { retries });
                }
                let (t, s) = targets[lvl];
                let big_a = faces[lvl - 1].2;
                let next = (2 * t, big_a + 2 * (s - big_a).max(1));
                if doublings[lvl] >= opts.max_retries || opts.max_precision.is_some_and(|m| next.0 > m) {
                    return Err(Error::Precision { retries });
                }
                retries += 1;
                doublings[lvl] += 1;
                own[lvl] = next;
            }
            Err(Stop::Fatal(e)) => return Err(e),
        }
    }
}

fn fatal_or_short(lvl: usize) -> impl Fn(Error) -> Stop {
    move |e| if is_precision(&e) { Stop::Short(lvl) } else { Stop::Fatal(e) }
}

fn build_at(
    f: &BiPoly<Rat>,
    refinement: Refinement,
    faces: &[FaceShape],
    targets: &[(usize, usize)],
    cache: &mut Vec<Snapshot>,
) -> Result<Tower, Stop> {
    let n = f.deg_y().unwrap() as usize;
    let mut g = exact_series(f);
    let mut e: u64 = 0;
    let mut big_a = n;
    let mut big_as = vec![n as u64];
    let mut transitions: Vec<Transition> = Vec::new();
    let mut levels: Vec<TowerLevel> = Vec::new();
    let (mut cu, mut cv) = (Rat::one(), Rat::one());
    for lvl in 0.. {
        let short = fatal_or_short(lvl);
        let ord = v_order(&g).map_err(&short)?;
        if ord != big_a {
            return Err(Stop::Fatal(Error::Verification(format!(
                "level {}: local equation has order {} in v, expected {}",
                lvl, ord, big_a
            ))));
        }
        if big_a == 1 {
            if lvl > 0 {
                let clean = g.support().all(|((a, b), c)| (a, b) == (0, 1) && c.is_one());
                if !clean {
                    return Err(Stop::Fatal(Error::Verification(format!(
                        "level {}: local equation is not u^m v",
                        lvl
                    ))));
                }
            }
            break;
        }
        let face = read_face(&g, big_a, lvl).map_err(&short)?;
        let p = face.weight;
        let a = p.coeff_x() as usize;
        let b = p.coeff_y() as usize;
        if a == 1 {
            if lvl == 0 {
                return Err(Stop::Fatal(Error::NotApplicable(
                    "a_1 = 1: the germ is tangent to a graph y = c x^b; swap coordinates or shear first".into(),
                )));
            }
            return Err(Stop::Fatal(Error::Verification(format!("level {}: a = 1 in Tschirnhausen coordinates", lvl))));
        }
        if !big_a.is_multiple_of(a) || face.mult as usize * a != big_a {
            return Err(Stop::Fatal(Error::Verification(format!("level {}: face multiplicity mismatch", lvl))));
        }
        let next_a = big_a / a;
        if lvl == faces.len() {
            return Err(Stop::Face((a, b, next_a)));
        }
        if faces[lvl] != (a, b, next_a) {
            return Err(Stop::Fatal(Error::Verification(format!("level {}: face changed with precision", lvl))));
        }
        let (t_next, s_next) = targets[lvl + 1];
        if let Some(sn) = cache.get(lvl).filter(|sn| sn.target == targets[lvl + 1]) {
            transitions.push(sn.tr.clone());
            levels.push(sn.level.clone());
            g = sn.g.clone();
            e = sn.e;
            cu = sn.cu.clone();
            cv = sn.cv.clone();
            big_a = next_a;
            big_as.push(next_a as u64);
            continue;
        }
        cache.truncate(lvl);
        let h = approximate_root(f, (n / next_a) as u32).map_err(Stop::Fatal)?.root;
        let (e_h, g_h) = transport_all(&h, &transitions).map_err(&short)?.pop().unwrap();
        let h_face = read_face_of_h(&g_h, &p, lvl).map_err(&short)?;
        if h_face.xi != face.xi || h_face.mult != 1 {
            return Err(Stop::Fatal(Error::Verification(format!("level {}: face of h is not the binomial of f", lvl))));
        }
        let sub = refinement.subdivision(&[p]).map_err(Stop::Fatal)?;
        let q = sub.successor(&p).ok_or_else(|| Stop::Fatal(Error::Verification("missing successor".into())))?;
        let canon = regular_refinement(&[p]).map_err(Stop::Fatal)?.successor(&p).unwrap();
        let d_h = certified_d(&p, &g_h).map_err(&short)?;
        let t_h = precision_after(&g_h, &p, d_h, t_next).map_err(&short)?;
        let rows_h = pull_back(&g_h, e_h, p, q, &face.xi, d_h, t_h, s_next + t_h);
        let rev = Reversion::new(&rows_h, t_h, s_next).map_err(Stop::Fatal)?;
        let tr = Transition { p, q, xi: face.xi.clone(), rev: Arc::new(rev) };
        let (d, e_new, g_new) = step(&g, e, &tr).map_err(fatal_or_short(lvl + 1))?;
        let e_h_new = a as u64 * e_h + d_h as u64;
        if d as usize != a * b * next_a || e_h_new * next_a as u64 != e_new {
            return Err(Stop::Fatal(Error::Verification(format!("level {}: multiplicity recursion fails", lvl + 1))));
        }
        // constants relating the coordinates used to those of the minimal charts
        let k_extra = (q.coeff_x() - canon.coeff_x()) / p.coeff_x();
        let xi_hat = &face.xi * rpow(&cu, b as i64) * rpow(&cv, -(a as i64));
        let lambda = rpow(&cu, canon.coeff_y()) * rpow(&cv, -canon.coeff_x());
        let cu_new = lambda * rpow(&-face.xi.clone(), -k_extra);
        let cv_new = rpow(&cu_new, -(e_h_new as i64));
        levels.push(TowerLevel {
            index: lvl + 1,
            weight: p,
            xi: xi_hat,
            xi_raw: face.xi.clone(),
            face,
            h,
            m_f: e_new,
            m_h: Vec::new(),
            chart: [[p.coeff_x(), q.coeff_x()], [p.coeff_y(), q.coeff_y()]],
            local_f: g_new.clone(),
            subdivision: sub,
        });
        cache.push(Snapshot {
            target: targets[lvl + 1],
            tr: tr.clone(),
            level: levels.last().unwrap().clone(),
            g: g_new.clone(),
            e: e_new,
            cu: cu_new.clone(),
            cv: cv_new.clone(),
        });
        transitions.push(tr);
        cu = cu_new;
        cv = cv_new;
        g = g_new;
        e = e_new;
        big_a = next_a;
        big_as.push(next_a as u64);
    }
    let k = levels.len();
    for lv in levels.iter_mut() {
        lv.m_h = (lv.index..=k).map(|l| (l, lv.m_f / big_as[l])).collect();
    }
    let mut t = Tower {
        f: f.clone(),
        n: n as u64,
        levels,
        big_a: big_as,
        puiseux: Vec::new(),
        precision: 0,
        retries: 0,
        refinement,
        transitions,
    };
    t.puiseux = puiseux_pairs(&t);
    Ok(t)
}

fn read_face_of_h(g_h: &TruncSeries, p: &Weight, lvl: usize) -> Result<FaceRoot, Error> {
    let d = certified_d(p, g_h)?;
    let face = BiPoly::from_terms(
        g_h.support()
            .filter(|((a, b), _)| p.eval((*a as u32, *b as u32)) == d)
            .map(|((a, b), c)| ((a as u32, b as u32), c.clone())),
    );
    single_root_face(p, &face).map_err(|e| Error::Verification(format!("level {}: h face: {}", lvl, e)))
}

impl Tower {
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    /// a_i for 1 <= i <= k.
    pub fn a(&self, i: usize) -> u64 {
        self.levels[i - 1].a()
    }

    pub fn b(&self, i: usize) -> u64 {
        self.levels[i - 1].b()
    }

    /// A_i for 1 <= i <= k + 1.
    pub fn big_a(&self, i: usize) -> u64 {
        self.big_a[i - 1]
    }

    /// m_i(f) with m_0(f) = 0.
    pub fn m_f(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.levels[i - 1].m_f
        }
    }

    pub fn signature(&self) -> TowerSignature {
        TowerSignature {
            k: self.k(),
            weights: self.levels.iter().map(|l| l.weight).collect(),
            xis: self.levels.iter().map(|l| l.xi.clone()).collect(),
            m_f: self.levels.iter().map(|l| l.m_f).collect(),
        }
    }

    /// The same tower recomputed with a larger series precision.
    fn at_precision(&self, base: usize) -> Result<Tower, Error> {
        let opts = TowerOptions { refinement: self.refinement, ..TowerOptions::default() };
        build_planned(&self.f, &opts, base)
    }

    /// (u-exponent, local series) of g at levels 0..=k.
    pub fn transport(&self, g: &BiPoly<Rat>) -> Result<Vec<(u64, TruncSeries)>, Error> {
        transport_all(g, &self.transitions)
    }
}

/// Multiplicity data of a tower: m_i(f) from the recursion and the closed
/// form, and m_i(h_l) for l >= i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplicities {
    pub m_f: Vec<u64>,
    pub closed_form: Vec<u64>,
    /// m_h[i-1] lists (l, m_i(h_l)) for l >= i.
    pub m_h: Vec<Vec<(usize, u64)>>,
}

pub fn multiplicities(t: &Tower) -> Result<Multiplicities, Error> {
    let k = t.k();
    let mut rec = Vec::with_capacity(k);
    let mut prev = 0u64;
    for i in 1..=k {
        let m = t.a(i) * prev + t.a(i) * t.b(i) * t.big_a(i + 1);
        rec.push(m);
        prev = m;
    }
    let closed: Vec<u64> = (1..=k)
        .map(|i| {
            let s: u64 = (1..=i).map(|l| t.a(l) * t.b(l) * t.big_a(l + 1) * t.big_a(l + 1)).sum();
            s / t.big_a(i + 1)
        })
        .collect();
    let built: Vec<u64> = t.levels.iter().map(|l| l.m_f).collect();
    if rec != closed || rec != built {
        return Err(Error::Verification(format!(
            "m_i(f): recursion {:?}, closed form {:?}, tower {:?}",
            rec, closed, built
        )));
    }
    let m_h = (1..=k).map(|i| (i..=k).map(|l| (l, rec[i - 1] / t.big_a(l + 1))).collect()).collect();
    Ok(Multiplicities { m_f: rec, closed_form: closed, m_h })
}

/// Characteristic pairs (n_i, m_i) read off the weights.
pub fn puiseux_pairs(t: &Tower) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if t.k() == 0 {
        return out;
    }
    let (a1, b1) = (t.a(1), t.b(1));
    let mut m_prev = a1.max(b1);
    if b1 != 1 {
        out.push((a1.min(b1), a1.max(b1)));
    }
    for i in 2..=t.k() {
        let m = t.b(i) + t.a(i) * m_prev;
        out.push((t.a(i), m));
        m_prev = m;
    }
    out
}

/// Data of the strict transform of g along the tower of f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictProfile {
    /// Largest level whose center lies on the strict transform of g.
    pub depth: usize,
    /// d(P_{i+1}; g at level i) * A_{i+2} for i < depth, then the final term.
    pub contributions: Vec<u64>,
    /// Face data (P', xi', A') of g at level `depth` when g is a single
    /// tangential direction there; P' = E1 marks the axis case v^{A'}.
    pub face: Option<(Weight, Option<Rat>, u32)>,
    /// None when g contains the curve.
    pub intersection: Option<u64>,
}

fn profile_once(g: &BiPoly<Rat>, t: &Tower) -> Result<StrictProfile, Error> {
    let k = t.k();
    let mut s = exact_series(g);
    let mut e = 0u64;
    let mut contributions = Vec::new();
    if !s.coeff(0, 0)?.is_zero() {
        return Ok(StrictProfile { depth: 0, contributions, face: None, intersection: Some(0) });
    }
    let mut lvl = 0;
    loop {
        if lvl == k {
            // the transform of f is {v = 0}
            let row = s.row(0);
            return match row.ord() {
                Some(o) => {
                    contributions.push(o as u64);
                    let face = local_face(&s);
                    Ok(StrictProfile {
                        depth: lvl,
                        contributions: contributions.clone(),
                        face,
                        intersection: Some(contributions.iter().sum()),
                    })
                }
                None if s.bound_x().is_exact() || resultant_y_order(&t.f, g).is_none() => {
                    Ok(StrictProfile { depth: lvl, contributions, face: None, intersection: None })
                }
                None => Err(precision_error()),
            };
        }
        let tr = &t.transitions[lvl];
        let (d, e2, s2) = step(&s, e, tr)?;
        contributions.push(d as u64 * t.big_a(lvl + 2));
        if !s2.coeff(0, 0)?.is_zero() {
            let face = local_face(&s);
            return Ok(StrictProfile {
                depth: lvl,
                contributions: contributions.clone(),
                face,
                intersection: Some(contributions.iter().sum()),
            });
        }
        s = s2;
        e = e2;
        lvl += 1;
    }
}

/// Single tangential direction of a local series at the origin, if any.
fn local_face(s: &TruncSeries) -> Option<(Weight, Option<Rat>, u32)> {
    let a0 = (0..=s.ny()).find(|&b| !s.row(b).get(0).is_zero())?;
    if s.row(0).is_zero() {
        return if s.support().all(|((_, b), _)| b >= a0) { Some((Weight::E1, None, a0 as u32)) } else { None };
    }
    let pts: Vec<(u32, u32)> =
        s.support().filter(|((_, b), _)| *b <= a0).map(|((a, b), _)| (a as u32, b as u32)).collect();
    let np = NewtonPolygon::from_points(pts).ok()?;
    if np.faces.len() != 1 {
        return None;
    }
    let fc = &np.faces[0];
    let face = BiPoly::from_terms(
        s.support()
            .filter(|((a, b), _)| fc.weight.eval((*a as u32, *b as u32)) == fc.d)
            .map(|((a, b), c)| ((a as u32, b as u32), c.clone())),
    );
    match single_root_face(&fc.weight, &face) {
        Ok(r) => Some((fc.weight, Some(r.xi), r.mult)),
        Err(_) => None,
    }
}

/// Depth and intersection data of g along the tower of f, retrying with more
/// precision when a transform is not determined.
pub fn strict_transform_profile(g: &BiPoly<Rat>, t: &Tower) -> Result<StrictProfile, Error> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut current = t.clone();
    for retry in 0..=6u32 {
        match profile_once(g, &current) {
            Err(e) if is_precision(&e) => {
                if retry == 6 {
                    return Err(Error::Precision { retries: retry });
                }
                current = current.at_precision(current.precision * 2)?;
            }
            other => return other,
        }
    }
    unreachable!()
}

/// Outcome of the cross checks on a tower.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub refinements_checked: Vec<u32>,
    pub normal_forms_checked: usize,
    pub root_faces_checked: usize,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rebuild with perturbed refinements, check the normal form u^m v of every
/// h_i at its own level, and check that the P_{i+1}-face of each H_a at
/// level i is the matching approximate root of the binomial face of f.
pub fn verify_tower(f: &BiPoly<Rat>, t: &Tower, extra_mediants: &[u32]) -> Result<VerificationReport, Error> {
    let mut rep = VerificationReport::default();
    let sig = t.signature();
    for &m in extra_mediants {
        let opts = TowerOptions { refinement: Refinement::ExtraMediants(m), ..TowerOptions::default() };
        let other = build_tower_with(f, &opts)?;
        rep.refinements_checked.push(m);
        if other.signature() != sig {
            rep.failures.push(format!("refinement with {} extra mediants: {:?} vs {:?}", m, other.signature(), sig));
        }
    }
    for lv in &t.levels {
        let i = lv.index;
        let tr = t.transport(&lv.h)?;
        let (e, s) = &tr[i];
        let clean = s.support().all(|((a, b), c)| (a, b) == (0, 1) && c.is_one());
        rep.normal_forms_checked += 1;
        if *e != lv.m_h[0].1 || !clean {
            rep.failures.push(format!("level {}: h_{} is not u^{} v", i, i, lv.m_h[0].1));
        }
    }
    let n = t.n;
    for lvl in 0..t.k() {
        let step_deg = n / t.big_a(lvl + 1);
        let lv = &t.levels[lvl];
        let binom_face = FaceRoot { c: Rat::one(), ..lv.face.clone() }.expand();
        for a in (1..n).filter(|a| n.is_multiple_of(*a) && a % step_deg == 0) {
            let ha = approximate_root(f, a as u32)?.root;
            let tr = t.transport(&ha)?;
            let (_, s) = &tr[lvl];
            let d = certified_d(&lv.weight, s)?;
            let face = BiPoly::from_terms(
                s.support()
                    .filter(|((x, y), _)| lv.weight.eval((*x as u32, *y as u32)) == d)
                    .map(|((x, y), c)| ((x as u32, y as u32), c.clone())),
            );
            let deg = (a * t.big_a(lvl + 1) / n) as u32;
            let lead = face.coeff(0, deg);
            rep.root_faces_checked += 1;
            if lead.is_zero() {
                rep.failures.push(format!("level {}: H_{} face has no v^{} term", lvl, a, deg));
                continue;
            }
            let want = approximate_root(&binom_face, deg)?.root;
            if face.scale(&(Rat::one() / lead)) != want {
                rep.failures.push(format!("level {}: H_{} face is not the approximate root", lvl, a));
            }
        }
    }
    Ok(rep)
}
