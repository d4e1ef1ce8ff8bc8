//! Newton polygons, weight vectors, regular subdivisions of the positive
//! quadrant, face factorization over Q and mixed areas.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactalg::{BiPoly, Rat, UPoly};
use crate::Error;

/// Primitive weight acting on x^alpha y^beta by `coeff_x*alpha + coeff_y*beta`.
/// The face of a weight (a, b) is a power of y^a + xi x^b, so `coeff_x` is a
/// and `coeff_y` is b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    cx: i64,
    cy: i64,
}

impl Weight {
    pub const E1: Weight = Weight { cx: 1, cy: 0 };
    pub const E2: Weight = Weight { cx: 0, cy: 1 };

    pub fn new(coeff_x: i64, coeff_y: i64) -> Result<Self, Error> {
        if coeff_x < 0 || coeff_y < 0 || (coeff_x == 0 && coeff_y == 0) {
            return Err(Error::Precondition(format!("({}, {}) is not a weight", coeff_x, coeff_y)));
        }
        if coeff_x.gcd(&coeff_y) != 1 {
            return Err(Error::Precondition(format!("({}, {}) is not primitive", coeff_x, coeff_y)));
        }
        Ok(Weight { cx: coeff_x, cy: coeff_y })
    }

    /// Primitive weight orthogonal to the edge from `l` to `r` (l above-left).
    fn of_edge(l: (u32, u32), r: (u32, u32)) -> Self {
        let da = r.0 as i64 - l.0 as i64;
        let db = l.1 as i64 - r.1 as i64;
        let g = da.gcd(&db);
        Weight { cx: db / g, cy: da / g }
    }

    pub fn coeff_x(&self) -> i64 {
        self.cx
    }
    pub fn coeff_y(&self) -> i64 {
        self.cy
    }
    /// The exponent of y in the binomial y^a + xi x^b of this weight.
    pub fn paper_a(&self) -> i64 {
        self.cx
    }
    /// The exponent of x in the binomial y^a + xi x^b of this weight.
    pub fn paper_b(&self) -> i64 {
        self.cy
    }

    pub fn eval(&self, p: (u32, u32)) -> i64 {
        self.cx * p.0 as i64 + self.cy * p.1 as i64
    }

    pub fn det(&self, o: &Weight) -> i64 {
        self.cx * o.cy - self.cy * o.cx
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { cx: self.cx + o.cx, cy: self.cy + o.cy }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.cx, self.cy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub weight: Weight,
    /// Endpoint with the smaller x-exponent.
    pub left: (u32, u32),
    pub right: (u32, u32),
    pub d: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Vertices of the compact boundary, by increasing x-exponent.
    pub vertices: Vec<(u32, u32)>,
    /// Compact faces, ordered with det(P_i, P_{i+1}) > 0.
    pub faces: Vec<Face>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl NewtonPolygon {
    /// Boundary of the convex hull of the points plus the positive quadrant.
    pub fn from_points(points: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, Error> {
        let mut pts: Vec<(u32, u32)> = points.into_iter().collect();
        if pts.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        pts.sort();
        // staircase: strictly decreasing beta as alpha grows
        let mut stair: Vec<(u32, u32)> = Vec::new();
        for p in pts {
            if stair.last().map(|l| p.1 < l.1).unwrap_or(true) {
                stair.push(p);
            }
        }
        let mut hull: Vec<(u32, u32)> = Vec::new();
        for p in stair {
            while hull.len() >= 2 {
                let n = hull.len();
                let o = (hull[n - 2].0 as i64, hull[n - 2].1 as i64);
                let a = (hull[n - 1].0 as i64, hull[n - 1].1 as i64);
                if cross(o, a, (p.0 as i64, p.1 as i64)) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let faces = hull
            .windows(2)
            .map(|w| {
                let weight = Weight::of_edge(w[0], w[1]);
                Face { weight, left: w[0], right: w[1], d: weight.eval(w[0]) }
            })
            .collect();
        Ok(NewtonPolygon { vertices: hull, faces })
    }

    /// Minimum of the weight over the polygon (attained at a vertex).
    pub fn d(&self, p: &Weight) -> i64 {
        self.vertices.iter().map(|v| p.eval(*v)).min().expect("nonempty")
    }
}

pub fn newton_polygon<C: crate::exactalg::Coef>(f: &BiPoly<C>) -> Result<NewtonPolygon, Error> {
    NewtonPolygon::from_points(f.support())
}

/// d(P; f) and the face function of P.
pub fn weight_data<C: crate::exactalg::Coef>(p: &Weight, f: &BiPoly<C>) -> Result<(i64, BiPoly<C>), Error> {
    let d = f.support().map(|v| p.eval(v)).min().ok_or(Error::ZeroPolynomial)?;
    let face = BiPoly::from_terms(f.terms().iter().filter(|(k, _)| p.eval(**k) == d).map(|(k, c)| (*k, c.clone())));
    Ok((d, face))
}

pub fn dual_newton_diagram<C: crate::exactalg::Coef>(f: &BiPoly<C>) -> Result<Vec<Weight>, Error> {
    Ok(newton_polygon(f)?.faces.iter().map(|fc| fc.weight).collect())
}

/// Regular simplicial subdivision T_0 = E1, ..., T_{m+1} = E2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub vertices: Vec<Weight>,
}

impl Subdivision {
    pub fn is_regular(&self) -> bool {
        self.vertices.windows(2).all(|w| w[0].det(&w[1]) == 1)
    }

    pub fn position(&self, p: &Weight) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn successor(&self, p: &Weight) -> Option<Weight> {
        let i = self.position(p)?;
        self.vertices.get(i + 1).copied()
    }
}

fn check_anchors(anchors: &[Weight]) -> Result<Vec<Weight>, Error> {
    let mut chain = vec![Weight::E1];
    chain.extend(anchors.iter().copied().filter(|w| *w != Weight::E1 && *w != Weight::E2));
    chain.push(Weight::E2);
    for w in chain.windows(2) {
        if w[0].det(&w[1]) <= 0 {
            return Err(Error::Precondition(format!("anchors {} and {} are not ordered", w[0], w[1])));
        }
    }
    Ok(chain)
}

/// Minimal regular chain from u to v (exclusive of v).
fn hj_chain(u: Weight, v: Weight, out: &mut Vec<Weight>) {
    let mut u = u;
    out.push(u);
    loop {
        let d = u.det(&v);
        if d == 1 {
            return;
        }
        // the lattice point w = (v + k u)/d with 0 <= k < d
        let k =
            (0..d).find(|k| (v.cx + k * u.cx) % d == 0 && (v.cy + k * u.cy) % d == 0).expect("unimodular step exists");
        let w = Weight { cx: (v.cx + k * u.cx) / d, cy: (v.cy + k * u.cy) / d };
        out.push(w);
        u = w;
    }
}

/// The minimal regular subdivision through all anchors.
pub fn regular_refinement(anchors: &[Weight]) -> Result<Subdivision, Error> {
    let chain = check_anchors(anchors)?;
    let mut out = Vec::new();
    for w in chain.windows(2) {
        hj_chain(w[0], w[1], &mut out);
    }
    out.push(Weight::E2);
    Ok(Subdivision { vertices: out })
}

/// The minimal refinement with `extra` mediants inserted right after each
/// anchor, so the successor of an anchor P becomes P' + extra * P.
pub fn perturbed_refinement(anchors: &[Weight], extra: u32) -> Result<Subdivision, Error> {
    let base = regular_refinement(anchors)?;
    let mut out = Vec::new();
    for (i, v) in base.vertices.iter().enumerate() {
        out.push(*v);
        if anchors.contains(v) && i + 1 < base.vertices.len() {
            let next = base.vertices[i + 1];
            let mut mids: Vec<Weight> =
                (1..=extra as i64).map(|k| Weight { cx: next.cx + k * v.cx, cy: next.cy + k * v.cy }).collect();
            mids.reverse();
            out.extend(mids);
        }
    }
    Ok(Subdivision { vertices: out })
}

/// Face written as c x^r y^s (y^a + xi x^b)^mult.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRoot {
    pub weight: Weight,
    pub xi: Rat,
    pub mult: u32,
    pub c: Rat,
    pub r: u32,
    pub s: u32,
}

impl FaceRoot {
    pub fn expand(&self) -> BiPoly<Rat> {
        let a = self.weight.paper_a() as u32;
        let b = self.weight.paper_b() as u32;
        let bin = BiPoly::from_terms([((0, a), Rat::one()), ((b, 0), self.xi.clone())]);
        bin.pow(self.mult).mul_monomial(self.r, self.s).scale(&self.c)
    }
}

/// The face polynomial phi(t) = sum_k c_k t^(K-k) where the face is
/// x^r y^s sum_k c_k (y^a)^(K-k) (x^b)^k.
fn face_univariate(p: &Weight, face: &BiPoly<Rat>) -> (UPoly<Rat>, u32, u32) {
    let a = p.paper_a() as u32;
    let b = p.paper_b() as u32;
    let r = face.support().map(|v| v.0).min().unwrap();
    let s = face.support().map(|v| v.1).min().unwrap();
    let top = face.support().map(|v| v.1).max().unwrap();
    let kk = if a == 0 { 0 } else { (top - s) / a };
    let mut c = vec![Rat::zero(); kk as usize + 1];
    for ((al, be), v) in face.terms() {
        let j = if a == 0 { 0 } else { (be - s) / a };
        debug_assert!(b == 0 || (al - r) == b * (kk - j));
        c[j as usize] = v.clone();
    }
    (UPoly::new(c), r, s)
}

/// Squarefree factorization phi = c * prod g_i^i (Yun).
fn squarefree(phi: &UPoly<Rat>) -> Vec<(UPoly<Rat>, u32)> {
    let mut out = Vec::new();
    let d = phi.derivative();
    let mut a = phi.gcd(&d);
    if a.degree().is_none() {
        a = UPoly::constant(Rat::one());
    }
    let mut b = phi.div_rem(&a).unwrap().0;
    let mut c = d.div_rem(&a).unwrap().0;
    let mut i = 1;
    loop {
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        let e = crate::exactalg::Coef::sub(&c, &b.derivative());
        let g = b.gcd(&e);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.clone(), i));
        }
        b = b.div_rem(&g).unwrap().0;
        c = e.div_rem(&g).unwrap().0;
        i += 1;
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut ds = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            ds.push(BigInt::from(i));
            if i * i != n {
                ds.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(ds)
}

/// Rational roots of a squarefree polynomial, `None` if the search is out of
/// reach (coefficients too large).
fn rational_roots(p: &UPoly<Rat>) -> Option<Vec<Rat>> {
    let mut roots = Vec::new();
    let mut q = p.clone();
    if q.coeff(0).is_zero() {
        roots.push(Rat::zero());
        q = UPoly::new(q.coeffs()[1..].to_vec());
    }
    if q.degree().unwrap_or(0) == 0 {
        return Some(roots);
    }
    let lcm = q.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.coeffs().iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    let nums = small_divisors(&ints[0])?;
    let dens = small_divisors(ints.last().unwrap())?;
    for pn in &nums {
        for qd in &dens {
            for sign in [1, -1] {
                let cand = Rat::new(pn * sign, qd.clone());
                if q.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

/// Recover the face of P as c x^r y^s (y^a + xi x^b)^A and certify it.
pub fn single_root_face(p: &Weight, f: &BiPoly<Rat>) -> Result<FaceRoot, Error> {
    let (_, face) = weight_data(p, f)?;
    if p.paper_a() == 0 || p.paper_b() == 0 {
        return Err(Error::Precondition(format!("{} is an axis weight", p)));
    }
    let (phi, r, s) = face_univariate(p, &face);
    let kk = phi.degree().unwrap_or(0) as u32;
    if kk == 0 {
        return Err(Error::Precondition(format!("the face of {} is a vertex", p)));
    }
    let c = phi.lead();
    let xi = phi.coeff(kk as usize - 1) / (&c * Rat::from_integer(kk.into()));
    let cand = FaceRoot { weight: *p, xi: xi.clone(), mult: kk, c, r, s };
    if cand.expand() == face {
        return Ok(cand);
    }
    let parts = squarefree(&phi);
    if parts.len() >= 2 {
        return Err(Error::Reducible(format!("face of {} has several distinct roots", p)));
    }
    let g = &parts[0].0;
    match rational_roots(g) {
        Some(rs) if !rs.is_empty() => Err(Error::Reducible(format!("face of {} has several distinct roots", p))),
        _ => Err(Error::NonRationalRoot(format!("face of {} has no rational root", p))),
    }
}

/// One face of a non-degeneracy report: roots gamma with multiplicities nu
/// of face = c x^r y^s prod (y^a - gamma x^b)^nu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFactors {
    pub weight: Weight,
    pub roots: Vec<(Rat, u32)>,
}

impl FaceFactors {
    pub fn max_nu(&self) -> u32 {
        self.roots.iter().map(|r| r.1).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegReport {
    pub faces: Vec<FaceFactors>,
    pub nondegenerate: bool,
}

pub fn nondegenerate(f: &BiPoly<Rat>) -> Result<NondegReport, Error> {
    let np = newton_polygon(f)?;
    let mut faces = Vec::new();
    for fc in &np.faces {
        let (_, face) = weight_data(&fc.weight, f)?;
        let (phi, _, _) = face_univariate(&fc.weight, &face);
        let mut roots = Vec::new();
        for (g, nu) in squarefree(&phi) {
            let rs = rational_roots(&g)
                .ok_or_else(|| Error::NonRationalRoot(format!("root search out of range on {}", fc.weight)))?;
            if rs.len() != g.degree().unwrap_or(0) {
                return Err(Error::NonRationalRoot(format!("face of {} does not split over Q", fc.weight)));
            }
            roots.extend(rs.into_iter().map(|r| (r, nu)));
        }
        roots.sort();
        faces.push(FaceFactors { weight: fc.weight, roots });
    }
    let nondegenerate = faces.iter().all(|f| f.max_nu() <= 1);
    Ok(NondegReport { faces, nondegenerate })
}

/// Convex polygon with rational vertices in counterclockwise order; points
/// and segments are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<(Rat, Rat)>,
}

fn rcross(o: &(Rat, Rat), a: &(Rat, Rat), b: &(Rat, Rat)) -> Rat {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl Polygon {
    pub fn hull(points: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut pts: Vec<(Rat, Rat)> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Polygon { vertices: pts };
        }
        let mut lower: Vec<(Rat, Rat)> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && rcross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Rat::zero() {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<(Rat, Rat)> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && rcross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Rat::zero() {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Polygon { vertices: lower }
    }

    pub fn lattice(points: &[(i64, i64)]) -> Self {
        Self::hull(points.iter().map(|p| (Rat::from_integer(p.0.into()), Rat::from_integer(p.1.into()))))
    }

    /// Accept a vertex list only if it is convex in counterclockwise order.
    pub fn from_vertices(v: Vec<(Rat, Rat)>) -> Result<Self, Error> {
        let n = v.len();
        if n >= 3 {
            for i in 0..n {
                if rcross(&v[i], &v[(i + 1) % n], &v[(i + 2) % n]) < Rat::zero() {
                    return Err(Error::Precondition("polygon is not convex".into()));
                }
            }
        }
        Ok(Self::hull(v))
    }

    pub fn area(&self) -> Rat {
        let n = self.vertices.len();
        if n < 3 {
            return Rat::zero();
        }
        let mut s = Rat::zero();
        for i in 0..n {
            let (a, b) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            s += &a.0 * &b.1 - &a.1 * &b.0;
        }
        s.abs() / Rat::from_integer(2.into())
    }

    pub fn minkowski(&self, o: &Polygon) -> Polygon {
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &o.vertices {
                pts.push((&a.0 + &b.0, &a.1 + &b.1));
            }
        }
        Polygon::hull(pts)
    }

    pub fn scale(&self, k: &Rat) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|(a, b)| (a * k, b * k)).collect() }
    }

    pub fn contains(&self, p: &(Rat, Rat)) -> bool {
        let n = self.vertices.len();
        match n {
            0 => false,
            1 => self.vertices[0] == *p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                rcross(a, b, p).is_zero()
                    && p.0 >= a.0.clone().min(b.0.clone())
                    && p.0 <= a.0.clone().max(b.0.clone())
                    && p.1 >= a.1.clone().min(b.1.clone())
                    && p.1 <= a.1.clone().max(b.1.clone())
            }
            _ => (0..n).all(|i| rcross(&self.vertices[i], &self.vertices[(i + 1) % n], p) >= Rat::zero()),
        }
    }
}

/// 2 V_2(P, Q) = Area(P + Q) - Area(P) - Area(Q).
pub fn mixed_area(p: &Polygon, q: &Polygon) -> Rat {
    p.minkowski(q).area() - p.area() - q.area()
}

/// Newton polygon of f together with the origin, as a convex polygon.
pub fn newton_polytope_with_origin<C: crate::exactalg::Coef>(f: &BiPoly<C>) -> Polygon {
    Polygon::lattice(&f.support().map(|(a, b)| (a as i64, b as i64)).chain([(0, 0)]).collect::<Vec<_>>())
}

const DIAGRAM_WIDTH: usize = 72;

/// Support grid with hull vertices marked `o`, other support points `*`,
/// followed by the face list.
pub fn render_diagram<C: crate::exactalg::Coef>(f: &BiPoly<C>) -> Result<String, Error> {
    let np = newton_polygon(f)?;
    let max_a = f.deg_x().unwrap_or(0) as usize;
    let max_b = f.deg_y().unwrap_or(0) as usize;
    let step = max_a / DIAGRAM_WIDTH + 1;
    let cols = max_a / step + 1;
    let mut grid = vec![vec!['.'; cols]; max_b + 1];
    for (a, b) in f.support() {
        let c = &mut grid[b as usize][a as usize / step];
        if *c == '.' {
            *c = '*';
        }
    }
    for (a, b) in &np.vertices {
        grid[*b as usize][*a as usize / step] = 'o';
    }
    let mut out = String::new();
    for b in (0..=max_b).rev() {
        out.push_str(&format!("{:>4} |", b));
        out.extend(grid[b].iter());
        out.push('\n');
    }
    out.push_str(&format!("     +{}\n", "-".repeat(cols)));
    if step > 1 {
        out.push_str(&format!("     x-exponents compressed by {}\n", step));
    }
    for fc in &np.faces {
        out.push_str(&format!(
            "face P={} d={} from ({},{}) to ({},{})\n",
            fc.weight, fc.d, fc.left.0, fc.left.1, fc.right.0, fc.right.1
        ));
    }
    let dual: Vec<String> = np.faces.iter().map(|fc| fc.weight.to_string()).collect();
    out.push_str(&format!("dual diagram: E1 {} E2\n", dual.join(" ")));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_bipoly, rat, rint};

    fn p(s: &str) -> BiPoly<Rat> {
        parse_bipoly(s).unwrap()
    }

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b).unwrap()
    }

    const EX: &str = "(y^4+x^3)^6+x^17*y^3";

    #[test]
    fn calibration_of_weight_convention() {
        let np = newton_polygon(&p(EX)).unwrap();
        assert_eq!(np.faces.len(), 1);
        let fc = &np.faces[0];
        assert_eq!(fc.weight, w(4, 3));
        assert_eq!(fc.d, 72);
        assert_eq!((fc.left, fc.right), ((0, 24), (18, 0)));
        assert_eq!(fc.weight.eval((18, 0)), 72);
        assert_eq!(fc.weight.eval((0, 24)), 72);
        assert_eq!((fc.weight.paper_a(), fc.weight.paper_b()), (4, 3));
    }

    #[test]
    fn monomial_and_three_term_polygons() {
        let np = newton_polygon(&p("x^5")).unwrap();
        assert!(np.faces.is_empty());
        assert_eq!(np.vertices, vec![(5, 0)]);
        // hull of (0,2), (2,1), (3,0): (2,1) lies above the segment
        let np = newton_polygon(&p("y^2 + x^3 + x^2*y")).unwrap();
        assert_eq!(np.faces.len(), 1);
        assert_eq!(np.faces[0].weight, w(2, 3));
        assert_eq!(np.vertices, vec![(0, 2), (3, 0)]);
        let np = newton_polygon(&p("y^4 + x*y^2 + x^4")).unwrap();
        assert_eq!(np.faces.iter().map(|f| f.weight).collect::<Vec<_>>(), vec![w(2, 1), w(2, 3)]);
    }

    #[test]
    fn weight_data_examples() {
        let (d, face) = weight_data(&w(4, 3), &p(EX)).unwrap();
        assert_eq!(d, 72);
        assert_eq!(face, p("(y^4+x^3)^6"));
        let (d, face) = weight_data(&Weight::E2, &p("y^3 + x*y + x^2 + 5")).unwrap();
        assert_eq!(d, 0);
        assert_eq!(face, p("x^2 + 5"));
        let (d, face) = weight_data(&w(1, 1), &p("y^2 + x^3 + x^2*y")).unwrap();
        assert_eq!(d, 2);
        assert_eq!(face, p("y^2"));
    }

    #[test]
    fn refinements() {
        let s = regular_refinement(&[w(4, 3)]).unwrap();
        assert_eq!(s.vertices, vec![w(1, 0), w(2, 1), w(3, 2), w(4, 3), w(1, 1), w(0, 1)]);
        assert!(s.is_regular());
        let s = regular_refinement(&[]).unwrap();
        assert_eq!(s.vertices, vec![w(1, 0), w(0, 1)]);
        let s = regular_refinement(&[w(6, 5)]).unwrap();
        assert_eq!(s.vertices, vec![w(1, 0), w(2, 1), w(3, 2), w(4, 3), w(5, 4), w(6, 5), w(1, 1), w(0, 1)]);
        let t = perturbed_refinement(&[w(4, 3)], 2).unwrap();
        assert!(t.is_regular());
        assert_eq!(t.successor(&w(4, 3)), Some(w(9, 7)));
        assert!(regular_refinement(&[w(1, 1), w(4, 3)]).is_err());
    }

    #[test]
    fn face_roots() {
        let r = single_root_face(&w(4, 3), &p(EX)).unwrap();
        assert_eq!((r.xi.clone(), r.mult, r.c.clone(), r.r, r.s), (rint(1), 6, rint(1), 0, 0));
        let r = single_root_face(&w(1, 1), &p("(y+2*x)^3")).unwrap();
        assert_eq!((r.xi, r.mult), (rint(2), 3));
        let r = single_root_face(&w(2, 3), &p("y^2+x^3")).unwrap();
        assert_eq!((r.xi, r.mult), (rint(1), 1));
        let r = single_root_face(&w(2, 3), &p("x^2*y*(3*y^2 - 1/2*x^3)^2")).unwrap();
        assert_eq!((r.xi, r.c, r.r, r.s), (rat(-1, 6), rint(9), 2, 1));
        assert!(matches!(single_root_face(&w(1, 1), &p("(y-x)*(y-2*x)")), Err(Error::Reducible(_))));
        assert!(matches!(single_root_face(&w(1, 1), &p("y^2 - 2*x^2")), Err(Error::NonRationalRoot(_))));
    }

    #[test]
    fn nondegeneracy() {
        assert!(nondegenerate(&p("y^4+x^3")).unwrap().nondegenerate);
        let r = nondegenerate(&p(EX)).unwrap();
        assert!(!r.nondegenerate);
        assert_eq!(r.faces[0].max_nu(), 6);
        let r = nondegenerate(&p("(y-x)*(y-2*x)")).unwrap();
        assert!(r.nondegenerate);
        assert_eq!(r.faces[0].roots, vec![(rint(1), 1), (rint(2), 1)]);
    }

    #[test]
    fn mixed_areas() {
        let t = Polygon::lattice(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(mixed_area(&t, &t), rint(1));
        let (m, n, ak) = (25i64, 24i64, 6i64);
        let big = Polygon::lattice(&[(0, 0), (m, 0), (0, n)]);
        let small = big.scale(&rat(1, ak));
        assert_eq!(mixed_area(&big, &small), rat(n * m, ak));
        let pt = Polygon::lattice(&[(3, 4)]);
        assert_eq!(mixed_area(&big, &pt), rint(0));
        assert!(Polygon::from_vertices(vec![
            (rint(0), rint(0)),
            (rint(2), rint(0)),
            (rint(1), rint(1) / rint(4)),
            (rint(2), rint(2)),
        ])
        .is_err());
    }

    #[test]
    fn diagram_mentions_faces() {
        let s = render_diagram(&p("y^2 + x^3")).unwrap();
        assert!(s.contains("face P=(2,3) d=6"));
        assert!(s.lines().all(|l| l.chars().count() <= 80));
    }
}
