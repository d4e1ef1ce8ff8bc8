//! Equisingularity certificates for one-parameter families f_t over Q[t].

use std::fmt;

use crate::exactalg::{parse_bipoly_qt, rat, resultant_y, rint, BiPoly, Rat, UPoly, QT};
use crate::invariants::{intersection_oracle, milnor_number, milnor_oracle, IntersectionValue};
use crate::newton::{mixed_area, newton_polytope_with_origin, weight_data, Polygon};
use crate::tower::{build_tower, Tower};
use crate::tschirn::approximate_root;
use crate::Error;

/// Parameter values used for spot checks.
pub const SAMPLE_TAUS: [(i64, i64); 3] = [(1, 1), (-1, 1), (1, 2)];

#[derive(Clone, Debug)]
pub struct Family {
    pub f: BiPoly<QT>,
    pub base: BiPoly<Rat>,
}

impl Family {
    pub fn new(f: BiPoly<QT>) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_monic_y() {
            return Err(Error::NotMonic);
        }
        let base = f.at_t(&rint(0));
        Ok(Family { f, base })
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        Family::new(parse_bipoly_qt(text)?)
    }

    pub fn at(&self, tau: &Rat) -> BiPoly<Rat> {
        self.f.at_t(tau)
    }

    pub fn is_constant(&self) -> bool {
        self.f.t_degree() == 0
    }
}

/// Orders of a resultant whose x-coefficients are polynomials in a parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamOrder {
    /// Order for a generic parameter value; also the minimum over all values.
    pub generic: IntersectionValue,
    /// Maximum over all complex parameter values.
    pub worst: IntersectionValue,
    /// Maximum over all nonzero parameter values.
    pub worst_nonzero: IntersectionValue,
}

fn only_root_is_zero(g: &QT) -> bool {
    g.coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count() == 1
}

/// Orders of ord_x r(x, s) as s varies. The order at s0 exceeds i exactly
/// when s0 is a common root of the coefficients of x^0, ..., x^i.
pub fn param_order(r: &UPoly<QT>) -> ParamOrder {
    let cs = r.coeffs();
    let generic = match cs.iter().position(|c| c.degree().is_some()) {
        Some(i) => IntersectionValue::Finite(i as u64),
        None => IntersectionValue::Infinite,
    };
    let mut worst = IntersectionValue::Infinite;
    let mut worst_nonzero = IntersectionValue::Infinite;
    let mut g = QT::new(vec![]);
    for (i, c) in cs.iter().enumerate() {
        g = g.gcd(c);
        if g.degree().is_none() {
            continue;
        }
        if worst_nonzero == IntersectionValue::Infinite && only_root_is_zero(&g) {
            worst_nonzero = IntersectionValue::Finite(i as u64);
        }
        if g.degree() == Some(0) {
            worst = IntersectionValue::Finite(i as u64);
            break;
        }
    }
    ParamOrder { generic, worst, worst_nonzero }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition61 {
    /// a_k I(C_{k-1}, C(t)) <= I(C(0), C(s)) < inf for all t and all s != 0.
    Holds {
        equality: bool,
    },
    Fails(String),
    /// k = 1: only finiteness of I(C(0), C(s)) and constancy of mu at the
    /// sampled parameters are checked.
    Degenerate {
        finite: bool,
        mu_constant: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equisingular,
    EquisingularDegenerate,
    Inconclusive(String),
    Violated(Vec<String>),
}

impl Verdict {
    pub fn certified(&self) -> bool {
        matches!(self, Verdict::Equisingular | Verdict::EquisingularDegenerate)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equisingular => write!(f, "equisingular"),
            Verdict::EquisingularDegenerate => write!(f, "equisingular (k=1 degenerate criterion)"),
            Verdict::Inconclusive(r) => write!(f, "inconclusive: {}", r),
            Verdict::Violated(rs) => write!(f, "violated: {}", rs.join("; ")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MuRoute {
    Tower,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSample {
    pub tau: Rat,
    pub mu: Option<i64>,
    pub route: MuRoute,
}

#[derive(Clone, Debug)]
pub struct EquisingReport {
    pub n: u64,
    pub k: usize,
    pub a_k: u64,
    pub mu_base: i64,
    /// The initial face of f_t has the same order and face function as f_0.
    pub face_t_free: bool,
    /// h_i(x, y, t) is free of t, i = 1..k-1.
    pub roots_t_free: Vec<bool>,
    /// I(C_{k-1}, C(t)) over t: generic and worst case; None when k = 1.
    pub left_order: Option<ParamOrder>,
    /// a_k times the worst case of I(C_{k-1}, C(t)).
    pub left: Option<IntersectionValue>,
    /// I(C(0), C(s)) over s.
    pub right_order: ParamOrder,
    /// I(C(0), C(s)) at the sampled s, by the resultant over Q.
    pub right_samples: Vec<(Rat, IntersectionValue)>,
    pub condition_61: Condition61,
    pub mu_samples: Vec<MuSample>,
    pub verdict: Verdict,
}

fn mu_at(f: &BiPoly<Rat>) -> (Option<i64>, MuRoute) {
    match build_tower(f) {
        Ok(t) => (Some(milnor_number(&t)), MuRoute::Tower),
        Err(Error::SmoothGerm) => (Some(0), MuRoute::Tower),
        Err(_) => (milnor_oracle(f).ok(), MuRoute::Oracle),
    }
}

fn face_is_t_free(fam: &Family, t: &Tower) -> Result<bool, Error> {
    let p1 = &t.levels[0].weight;
    let (d_t, face_t) = weight_data(p1, &fam.f)?;
    let (d_0, face_0) = weight_data(p1, &fam.base)?;
    Ok(d_t == d_0 && face_t.t_degree() == 0 && face_t.at_t(&rint(0)) == face_0)
}

/// Check the hypotheses of the equisingularity criterion for the family.
pub fn check_family(fam: &Family) -> Result<EquisingReport, Error> {
    let t = build_tower(&fam.base)?;
    let k = t.k();
    let a_k = t.a(k);
    let mu_base = milnor_number(&t);
    let face_t_free = face_is_t_free(fam, &t)?;

    let mut roots_t_free = Vec::new();
    for i in 1..k {
        let deg = (t.n / t.big_a(i + 1)) as u32;
        let h = approximate_root(&fam.f, deg)?.root;
        roots_t_free.push(h.t_degree() == 0 && h.at_t(&rint(0)) == t.levels[i - 1].h);
    }

    let f0 = fam.base.to_qt();
    let right_order = param_order(&resultant_y(&f0, &fam.f));
    let mut right_samples = Vec::new();
    for (p, q) in SAMPLE_TAUS.iter().chain([(3, 1)].iter()) {
        let s = rat(*p, *q);
        right_samples.push((s.clone(), intersection_oracle(&fam.base, &fam.at(&s))?));
    }

    let mut mu_samples = Vec::new();
    for (p, q) in SAMPLE_TAUS {
        let tau = rat(p, q);
        let (mu, route) = mu_at(&fam.at(&tau));
        mu_samples.push(MuSample { tau, mu, route });
    }
    let mu_constant = mu_samples.iter().all(|s| s.mu == Some(mu_base));

    let (left_order, left) = if k >= 2 {
        let h = t.levels[k - 2].h.to_qt();
        let o = param_order(&resultant_y(&h, &fam.f));
        let l = match o.worst {
            IntersectionValue::Finite(v) => IntersectionValue::Finite(a_k * v),
            IntersectionValue::Infinite => IntersectionValue::Infinite,
        };
        (Some(o), Some(l))
    } else {
        (None, None)
    };

    let right_finite = right_order.worst_nonzero != IntersectionValue::Infinite;
    let condition_61 = match left {
        None => Condition61::Degenerate { finite: right_finite, mu_constant },
        Some(l) => match (l, right_order.generic, right_finite) {
            (_, _, false) => Condition61::Fails("I(C(0), C(s)) is infinite for some s != 0".into()),
            (IntersectionValue::Infinite, _, _) => Condition61::Fails("I(C_{k-1}, C(t)) is infinite for some t".into()),
            (IntersectionValue::Finite(lv), IntersectionValue::Finite(rv), true) => {
                if lv <= rv {
                    Condition61::Holds { equality: lv == rv }
                } else {
                    Condition61::Fails(format!("{} > {}", lv, rv))
                }
            }
            (_, IntersectionValue::Infinite, true) => unreachable!("finite worst case with infinite generic order"),
        },
    };

    let verdict = if fam.is_constant() {
        Verdict::Inconclusive("family is constant".into())
    } else if right_order.generic == IntersectionValue::Infinite {
        Verdict::Inconclusive("C(0) and C(s) share a component for generic s".into())
    } else {
        let mut why = Vec::new();
        if !face_t_free {
            why.push("initial face depends on t".to_string());
        }
        if roots_t_free.iter().any(|b| !b) {
            why.push("an approximate root depends on t".to_string());
        }
        match &condition_61 {
            Condition61::Holds { .. } => {}
            Condition61::Fails(r) => why.push(format!("intersection condition fails: {}", r)),
            Condition61::Degenerate { finite, mu_constant } => {
                if !finite {
                    why.push("I(C(0), C(s)) is infinite for some s != 0".into());
                }
                if !mu_constant {
                    why.push("Milnor number is not constant at the sampled parameters".into());
                }
            }
        }
        if !why.is_empty() {
            Verdict::Violated(why)
        } else if k == 1 {
            Verdict::EquisingularDegenerate
        } else {
            Verdict::Equisingular
        }
    };
    if verdict == Verdict::Equisingular && !mu_constant {
        return Err(Error::Verification("certified family has a sampled Milnor number jump".into()));
    }

    Ok(EquisingReport {
        n: t.n,
        k,
        a_k,
        mu_base,
        face_t_free,
        roots_t_free,
        left_order,
        left,
        right_order,
        right_samples,
        condition_61,
        mu_samples,
        verdict,
    })
}

/// The family f + t x^m together with the intersection checks for it.
#[derive(Clone, Debug)]
pub struct MonomialDeformation {
    pub family: Family,
    pub n: u64,
    pub m: u64,
    pub nm: u64,
    pub k: usize,
    pub a_k: u64,
    /// I(C(0), C(s)) for generic s, through the resultant over Q[s].
    pub generic_intersection: IntersectionValue,
    /// I(C(t), C(s)) at sampled pairs t != s.
    pub sampled: Vec<((Rat, Rat), IntersectionValue)>,
    /// a_k max_t I(C_{k-1}, C(t)); None when k = 1.
    pub left: Option<u64>,
    /// 2 V_2(Delta, Delta(h_{k-1} + eps)).
    pub mixed_bound: Option<Rat>,
    /// 2 V_2(Delta, Delta / a_k) = nm / a_k.
    pub triangle_bound: Rat,
}

fn in_triangle(p: (u32, u32), n: u64, m: u64) -> bool {
    (p.0 as u64) * n + (p.1 as u64) * m <= n * m
}

pub fn monomial_deformation(f: &BiPoly<Rat>, m: u64) -> Result<MonomialDeformation, Error> {
    let t = build_tower(f)?;
    let n = t.n;
    let b1a2 = t.b(1) * t.big_a(2);
    if m <= b1a2 {
        return Err(Error::Precondition(format!("m = {} must exceed b_1 A_2 = {}", m, b1a2)));
    }
    if let Some(p) = f.support().find(|&p| !in_triangle(p, n, m)) {
        return Err(Error::Precondition(format!(
            "x^{} y^{} lies outside the triangle with vertices (0,{}), ({},0), ({},0)",
            p.0, p.1, n, b1a2, m
        )));
    }
    let mut ft = f.to_qt();
    ft.add_term((m as u32, 0), &QT::new(vec![rint(0), rint(1)]));
    let family = Family::new(ft)?;
    let nm = n * m;

    let generic_intersection = param_order(&resultant_y(&f.to_qt(), &family.f)).generic;
    let mut sampled = Vec::new();
    for ((p1, q1), (p2, q2)) in [((1, 1), (-1, 1)), ((2, 1), (1, 2)), ((-3, 1), (5, 1))] {
        let (a, b) = (rat(p1, q1), rat(p2, q2));
        sampled.push(((a.clone(), b.clone()), intersection_oracle(&family.at(&a), &family.at(&b))?));
    }
    let bad = std::iter::once(&generic_intersection)
        .chain(sampled.iter().map(|(_, v)| v))
        .find(|v| **v != IntersectionValue::Finite(nm));
    if let Some(v) = bad {
        return Err(Error::Verification(format!("I(C(t), C(s)) = {} instead of nm = {}", v, nm)));
    }

    let k = t.k();
    let a_k = t.a(k);
    let big = Polygon::lattice(&[(0, 0), (m as i64, 0), (0, n as i64)]);
    let shrunk = big.scale(&rat(1, a_k as i64));
    let triangle_bound = mixed_area(&big, &shrunk);
    if triangle_bound != rat(nm as i64, a_k as i64) {
        return Err(Error::Verification("mixed area of the triangles is not nm / a_k".into()));
    }
    let (left, mixed_bound) = if k >= 2 {
        let h = &t.levels[k - 2].h;
        let hp = newton_polytope_with_origin(h);
        if !hp.vertices.iter().all(|v| shrunk.contains(v)) {
            return Err(Error::Verification("Newton polygon of h_{k-1} is not inside Delta / a_k".into()));
        }
        let mv = mixed_area(&newton_polytope_with_origin(&family.at(&rint(1))), &hp);
        let o = param_order(&resultant_y(&h.to_qt(), &family.f));
        let IntersectionValue::Finite(worst) = o.worst else {
            return Err(Error::Verification("I(C_{k-1}, C(t)) is infinite for some t".into()));
        };
        if rint(worst as i64) > mv || mv > triangle_bound {
            return Err(Error::Verification(format!("bound chain {} <= {} <= {} fails", worst, mv, triangle_bound)));
        }
        if a_k * worst > nm {
            return Err(Error::Verification(format!("a_k I = {} exceeds nm = {}", a_k * worst, nm)));
        }
        (Some(a_k * worst), Some(mv))
    } else {
        (None, None)
    };

    Ok(MonomialDeformation {
        family,
        n,
        m,
        nm,
        k,
        a_k,
        generic_intersection,
        sampled,
        left,
        mixed_bound,
        triangle_bound,
    })
}
