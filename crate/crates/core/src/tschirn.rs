//! Euclidean expansions with respect to a monic polynomial and
//! Tschirnhausen approximate roots.

use crate::exactalg::{gen_binom, rint, BiPoly, Coef, Rat, UPoly};
use crate::Error;

/// P = sum_{i=0}^{s} c_i * base^(s-i) with deg_y c_i < deg_y base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TschirnExpansion<C: Coef> {
    pub base: BiPoly<C>,
    /// c_0 first; zero coefficients are kept so positions stay meaningful.
    pub coeffs: Vec<BiPoly<C>>,
    pub represented: BiPoly<C>,
}

impl<C: Coef> TschirnExpansion<C> {
    pub fn reconstruct(&self) -> BiPoly<C> {
        let mut acc = BiPoly::zero();
        for c in &self.coeffs {
            acc = acc.mul(&self.base).add(c);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxRoot<C: Coef> {
    pub source: BiPoly<C>,
    pub index: u32,
    pub root: BiPoly<C>,
}

type YPoly<C> = UPoly<UPoly<C>>;

fn as_ypoly<C: Coef>(p: &BiPoly<C>) -> YPoly<C> {
    UPoly::new(p.y_coeffs())
}

fn from_ypoly<C: Coef>(p: &YPoly<C>) -> BiPoly<C> {
    BiPoly::from_y_coeffs(p.coeffs())
}

/// Expand `p` in powers of the monic (in y) polynomial `h`.
pub fn euclid_expand<C: Coef>(p: &BiPoly<C>, h: &BiPoly<C>) -> Result<TschirnExpansion<C>, Error> {
    if h.is_zero() || !h.is_monic_y() {
        return Err(Error::NotMonic);
    }
    let a = h.deg_y().unwrap() as usize;
    if a == 0 {
        return Err(Error::Precondition("base must have positive degree in y".into()));
    }
    let hy = as_ypoly(h);
    let s = p.deg_y().map(|d| d as usize / a).unwrap_or(0);
    let mut rest = as_ypoly(p);
    let mut low_first = Vec::with_capacity(s + 1);
    for _ in 0..=s {
        let (q, r) = rest.div_rem(&hy).expect("monic division");
        low_first.push(from_ypoly(&r));
        rest = q;
    }
    debug_assert!(rest.is_zero());
    low_first.reverse();
    Ok(TschirnExpansion { base: h.clone(), coeffs: low_first, represented: p.clone() })
}

/// The monic H of y-degree `a` with deg_y(f - H^(n/a)) < n - a.
pub fn approximate_root<C: Coef>(f: &BiPoly<C>, a: u32) -> Result<ApproxRoot<C>, Error> {
    if f.is_zero() || !f.is_monic_y() {
        return Err(Error::NotMonic);
    }
    let n = f.deg_y().unwrap();
    if a == 0 || !n.is_multiple_of(a) {
        return Err(Error::Divisibility(format!("{} does not divide {}", a, n)));
    }
    let big_n = Rat::from_integer((n / a).into());
    let p = Rat::from_integer(1.into()) / &big_n;
    let ys = f.y_coeffs();
    // c_i is the coefficient of y^(n-i)
    let c = |i: usize| -> UPoly<C> { ys.get(n as usize - i).cloned().unwrap_or_else(UPoly::zero) };
    // power-series root of 1 + c_1 z + c_2 z^2 + ...: i g_i = sum ((p+1) j - i) c_j g_{i-j}
    let mut g: Vec<UPoly<C>> = vec![UPoly::one()];
    for i in 1..=a as usize {
        let mut acc = UPoly::zero();
        for j in 1..=i {
            let k = (&p + rint(1)) * rint(j as i64) - rint(i as i64);
            if k == rint(0) {
                continue;
            }
            let cj = c(j);
            if cj.is_zero() || g[i - j].is_zero() {
                continue;
            }
            acc = acc.add(&cj.mul(&g[i - j]).scale(&k));
        }
        g.push(acc.scale(&(Rat::from_integer(1.into()) / rint(i as i64))));
    }
    let mut coeffs: Vec<UPoly<C>> = vec![UPoly::zero(); a as usize + 1];
    for (i, gi) in g.into_iter().enumerate() {
        coeffs[a as usize - i] = gi;
    }
    let root = BiPoly::from_y_coeffs(&coeffs);
    Ok(ApproxRoot { source: f.clone(), index: a, root })
}

/// Witnesses of the hereditary property for a chain a | ab | n.
#[derive(Clone, Debug)]
pub struct HereditaryRecord<C: Coef> {
    pub outer: ApproxRoot<C>,
    pub inner: ApproxRoot<C>,
    pub inner_of_outer: ApproxRoot<C>,
    pub expansion: TschirnExpansion<C>,
}

/// Check that the a-th degree root of the ab-th degree root of f is the
/// a-th degree root of f, and that the second coefficient of the expansion
/// of the ab-th degree root in the a-th degree one vanishes.
pub fn hereditary_check<C: Coef>(f: &BiPoly<C>, a: u32, b: u32) -> Result<HereditaryRecord<C>, Error> {
    if a < 1 || b < 1 {
        return Err(Error::Divisibility("factors must be positive".into()));
    }
    let n = f.deg_y().ok_or(Error::ZeroPolynomial)?;
    if n % (a * b) != 0 {
        return Err(Error::Divisibility(format!("{}*{} does not divide {}", a, b, n)));
    }
    let outer = approximate_root(f, a * b)?;
    let inner = approximate_root(f, a)?;
    let inner_of_outer = approximate_root(&outer.root, a)?;
    if inner_of_outer.root != inner.root {
        return Err(Error::Verification(format!("roots of degree {} disagree", a)));
    }
    let expansion = euclid_expand(&outer.root, &inner.root)?;
    if expansion.coeffs.len() > 1 && !expansion.coeffs[1].is_zero() {
        return Err(Error::Verification("second expansion coefficient is not zero".into()));
    }
    Ok(HereditaryRecord { outer, inner, inner_of_outer, expansion })
}

/// y^(ac/d) * Trunc_{floor(c/d)} (1 + xi z^b / y^a)^(c/d), written with z
/// as the first variable.
pub fn trunc_binomial_root(a: u32, b: u32, c: u32, d: u32, xi: &Rat) -> Result<BiPoly<Rat>, Error> {
    if a == 0 || num_integer::gcd(a, b) != 1 {
        return Err(Error::Precondition(format!("gcd({}, {}) is not 1", a, b)));
    }
    if d == 0 || !(a * c).is_multiple_of(d) {
        return Err(Error::Divisibility(format!("{} does not divide {}", d, a * c)));
    }
    let e = Rat::new(c.into(), d.into());
    let top = a * c / d;
    let mut out = BiPoly::zero();
    for j in 0..=(c / d) {
        let coeff = gen_binom(&e, j) * num_traits::pow::pow(xi.clone(), j as usize);
        out.add_term((b * j, top - a * j), &coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_bipoly, parse_bipoly_qt};

    fn p(s: &str) -> BiPoly<Rat> {
        parse_bipoly(s).unwrap()
    }

    const EX: &str = "(y^4+x^3)^6+x^17*y^3";

    #[test]
    fn roots_of_the_model_germ() {
        let f = p(EX);
        let cases = [
            (2, "y^2"),
            (3, "y^3"),
            (4, "y^4+x^3"),
            (6, "y^6 + 3/2*x^3*y^2"),
            (8, "(y^4+x^3)^2"),
            (12, "(y^4+x^3)^3"),
            (24, EX),
        ];
        for (a, want) in cases {
            assert_eq!(approximate_root(&f, a).unwrap().root, p(want), "a = {}", a);
        }
    }

    #[test]
    fn expansion_examples() {
        let e = euclid_expand(&p("y^3+1"), &p("y")).unwrap();
        assert_eq!(e.coeffs, vec![p("1"), p("0"), p("0"), p("1")]);
        let h = p("y^2 + x*y + 3");
        let e = euclid_expand(&h, &h).unwrap();
        assert_eq!(e.coeffs, vec![p("1"), p("0")]);
        let f = p(EX);
        let h12 = approximate_root(&f, 12).unwrap().root;
        let e = euclid_expand(&f, &h12).unwrap();
        assert!(e.coeffs[1].is_zero());
        assert_eq!(e.reconstruct(), f);
        assert!(euclid_expand(&f, &p("2*y")).is_err());
    }

    #[test]
    fn defining_inequality_and_errors() {
        let f = p("y^6 + x*y^5 + 3*x^2*y^3 - y + x^7");
        for a in [1, 2, 3, 6] {
            let h = approximate_root(&f, a).unwrap().root;
            let diff = f.sub(&h.pow(6 / a));
            assert!(diff.deg_y().map(|d| d < 6 - a).unwrap_or(true));
        }
        assert!(matches!(approximate_root(&f, 4), Err(Error::Divisibility(_))));
        assert!(matches!(approximate_root(&p("2*y^2"), 1), Err(Error::NotMonic)));
    }

    #[test]
    fn hereditary_on_model() {
        let r = hereditary_check(&p(EX), 4, 3).unwrap();
        assert_eq!(r.inner.root, p("y^4+x^3"));
        assert_eq!(r.expansion.coeffs.len(), 4);
    }

    #[test]
    fn binomial_roots() {
        let h = trunc_binomial_root(4, 3, 6, 4, &rint(1)).unwrap();
        assert_eq!(h, p("y^6 + 3/2*x^3*y^2"));
        let f = p("(y^4+x^3)^6");
        assert_eq!(approximate_root(&f, 6).unwrap().root, h);
        assert_eq!(trunc_binomial_root(2, 3, 2, 4, &rint(1)).unwrap(), p("y"));
        assert_eq!(trunc_binomial_root(2, 3, 5, 5, &rint(7)).unwrap(), p("y^2 + 7*x^3"));
        assert!(trunc_binomial_root(2, 4, 1, 1, &rint(1)).is_err());
    }

    #[test]
    fn roots_over_parameter_ring() {
        let f = parse_bipoly_qt("y^4 + t*x*y^3 + x^3 - t^2*y").unwrap();
        let h = approximate_root(&f, 2).unwrap().root;
        for tau in [rint(0), rint(2), Rat::new((-1).into(), 3.into())] {
            let direct = approximate_root(&f.at_t(&tau), 2).unwrap().root;
            assert_eq!(h.at_t(&tau), direct);
        }
    }
}
