use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{Coef, Rat, UPoly};

/// Sparse polynomial in two variables. Keys are (x-exponent, y-exponent);
/// zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
    names: [&'static str; 2],
}

impl<C: Coef> PartialEq for BiPoly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}
impl<C: Coef> Eq for BiPoly<C> {}

impl<C: Coef> Default for BiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coef> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new(), names: ["x", "y"] }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn monomial(c: C, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert((a, b), c);
        }
        p
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), C)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn with_names(mut self, names: [&'static str; 2]) -> Self {
        self.names = names;
        self
    }

    pub fn names(&self) -> [&'static str; 2] {
        self.names
    }

    pub fn add_term(&mut self, k: (u32, u32), c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), C> {
        &self.terms
    }

    pub fn coeff(&self, a: u32, b: u32) -> C {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c);
        }
        r
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(), names: self.names }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut acc: BTreeMap<(u32, u32), C> = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                let k = (ka.0 + kb.0, ka.1 + kb.1);
                let p = ca.mul(cb);
                match acc.get_mut(&k) {
                    Some(v) => *v = v.add(&p),
                    None => {
                        acc.insert(k, p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc, names: self.names }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (*k, c.scale(r)))).with_names(self.names)
    }

    pub fn mul_coef(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.mul(c)))).with_names(self.names)
    }

    pub fn mul_monomial(&self, a: u32, b: u32) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| ((k.0 + a, k.1 + b), c.clone())).collect(), names: self.names }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Swap the roles of x and y.
    pub fn swap_xy(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(k, c)| ((k.1, k.0), c.clone())).collect(), names: self.names }
    }

    pub fn map_coef<D: Coef>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        let mut p = BiPoly::<D>::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))));
        p.names = self.names;
        p
    }

    /// Coefficients of y^j as polynomials in x, index j.
    pub fn y_coeffs(&self) -> Vec<UPoly<C>> {
        let Some(dy) = self.deg_y() else {
            return vec![];
        };
        let mut rows: Vec<Vec<C>> = vec![Vec::new(); dy as usize + 1];
        for ((a, b), c) in &self.terms {
            let row = &mut rows[*b as usize];
            if row.len() <= *a as usize {
                row.resize(*a as usize + 1, C::zero());
            }
            row[*a as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_y_coeffs(cs: &[UPoly<C>]) -> Self {
        let mut p = Self::zero();
        for (j, c) in cs.iter().enumerate() {
            for (i, v) in c.coeffs().iter().enumerate() {
                p.add_term((i as u32, j as u32), v);
            }
        }
        p
    }

    /// Leading coefficient in y as a polynomial in x.
    pub fn lead_y(&self) -> UPoly<C> {
        self.y_coeffs().pop().unwrap_or_else(|| UPoly::new(vec![]))
    }

    /// Monic in y with leading coefficient exactly 1.
    pub fn is_monic_y(&self) -> bool {
        let l = self.lead_y();
        l.degree() == Some(0) && l.coeff(0).is_one()
    }

    /// Substitute x = 0.
    pub fn at_x0(&self) -> UPoly<C> {
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut v = vec![C::zero(); dy + 1];
        for ((a, b), c) in &self.terms {
            if *a == 0 {
                v[*b as usize] = c.clone();
            }
        }
        UPoly::new(v)
    }

    /// Evaluate both variables.
    pub fn eval(&self, x: &C, y: &C) -> C {
        let mut acc = C::zero();
        for ((a, b), c) in &self.terms {
            acc = acc.add(&c.mul(&x.pow(*a)).mul(&y.pow(*b)));
        }
        acc
    }

    /// Substitute polynomials for x and y.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let dx = self.deg_x().unwrap_or(0);
        let dy = self.deg_y().unwrap_or(0);
        let mut xp = vec![Self::one()];
        for i in 1..=dx as usize {
            let n = xp[i - 1].mul(px);
            xp.push(n);
        }
        let mut yp = vec![Self::one()];
        for i in 1..=dy as usize {
            let n = yp[i - 1].mul(py);
            yp.push(n);
        }
        let mut acc = Self::zero();
        for ((a, b), c) in &self.terms {
            acc = acc.add(&xp[*a as usize].mul(&yp[*b as usize]).mul_coef(c));
        }
        acc.with_names(self.names)
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(k, c)| ((k.0 - 1, k.1), c.scale(&super::rint(k.0 as i64)))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(k, c)| ((k.0, k.1 - 1), c.scale(&super::rint(k.1 as i64)))),
        )
    }

    /// Terms in display order: total degree descending, then higher x first.
    pub fn ordered_terms(&self) -> Vec<((u32, u32), &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by(|(a, _), (b, _)| display_order(*a, *b));
        v
    }

    pub fn render(&self) -> String {
        let [xn, yn] = self.names;
        let mut out = String::new();
        for (idx, ((a, b), c)) in self.ordered_terms().into_iter().enumerate() {
            let mut mon: Vec<String> = Vec::new();
            match a {
                0 => {}
                1 => mon.push(xn.to_string()),
                _ => mon.push(format!("{}^{}", xn, a)),
            }
            match b {
                0 => {}
                1 => mon.push(yn.to_string()),
                _ => mon.push(format!("{}^{}", yn, b)),
            }
            let (cs, atomic) = c.render();
            let (neg, body_c, atomic) = match cs.strip_prefix('-') {
                Some(rest) if atomic_after_neg(rest) => (true, rest.to_string(), true),
                _ => (false, cs, atomic),
            };
            let body = if mon.is_empty() {
                if atomic || idx == 0 {
                    body_c
                } else {
                    format!("({})", body_c)
                }
            } else if body_c == "1" {
                mon.join("*")
            } else if atomic || body_c.parse::<f64>().is_ok() || is_plain_fraction(&body_c) {
                format!("{}*{}", body_c, mon.join("*"))
            } else {
                format!("({})*{}", body_c, mon.join("*"))
            };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if neg { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn is_plain_fraction(s: &str) -> bool {
    let mut parts = s.splitn(2, '/');
    let a = parts.next().unwrap_or("");
    let b = parts.next().unwrap_or("");
    !a.is_empty() && !b.is_empty() && a.chars().all(|c| c.is_ascii_digit()) && b.chars().all(|c| c.is_ascii_digit())
}

fn atomic_after_neg(rest: &str) -> bool {
    rest.chars().all(|c| c.is_ascii_digit() || c == '/')
}

fn display_order(a: (u32, u32), b: (u32, u32)) -> Ordering {
    (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0))
}

impl BiPoly<Rat> {
    pub fn to_qt(&self) -> BiPoly<super::QT> {
        self.map_coef(|c| UPoly::constant(c.clone()))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl BiPoly<super::QT> {
    /// Evaluate the parameter t.
    pub fn at_t(&self, tau: &Rat) -> BiPoly<Rat> {
        self.map_coef(|c| c.eval(tau))
    }

    /// Largest t-degree among coefficients.
    pub fn t_degree(&self) -> usize {
        self.terms.values().filter_map(|c| c.degree()).max().unwrap_or(0)
    }
}

impl<C: Coef> fmt::Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
