use std::fmt;

use super::{Coef, Rat};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct UPoly<C>(Vec<C>);

impl<C: Coef> UPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: C, e: usize) -> Self {
        let mut v = vec![C::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> C {
        self.0.get(i).cloned().unwrap_or_else(C::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn lead(&self) -> C {
        self.0.last().cloned().unwrap_or_else(C::zero)
    }

    /// Order of vanishing at 0, `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn map<D: Coef>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::new(self.0.iter().map(f).collect())
    }

    pub fn shift(&self, e: usize) -> Self {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut v = vec![C::zero(); e];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c.scale(&super::rint(i as i64))).collect())
    }

    /// Division with remainder by a divisor whose leading coefficient divides
    /// every leading coefficient met on the way.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.lead();
        let mut r = self.0.clone();
        let mut q = vec![C::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            if !c.is_zero() {
                let qc = c.exact_div(&lc)?;
                let s = top - dd;
                for (i, dc) in d.0.iter().enumerate() {
                    r[s + i] = r[s + i].sub(&qc.mul(dc));
                }
                q[s] = qc;
            }
            r.pop();
        }
        Some((Self::new(q), Self::new(r)))
    }

    /// Pseudo-remainder lc(d)^(deg self - deg d + 1) * self mod d.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("prem by zero");
        let Some(ds) = self.degree() else {
            return self.clone();
        };
        if ds < dd {
            return self.clone();
        }
        let lc = d.lead();
        let mut r = self.0.clone();
        for top in (dd..=ds).rev() {
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x = x.mul(&lc);
            }
            if !c.is_zero() {
                let s = top - dd;
                for (i, dc) in d.0.iter().enumerate() {
                    r[s + i] = r[s + i].sub(&c.mul(dc));
                }
            }
            r.truncate(top);
        }
        Self::new(r)
    }

    pub fn pow_u(&self, e: u32) -> Self {
        Coef::pow(self, e)
    }

    /// Composition self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = UPoly::new(vec![]);
        for c in self.0.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }
}

impl UPoly<Rat> {
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while b.degree().is_some() {
            let (_, r) = a.div_rem(&b).expect("field division");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(_) => {
                let l = self.lead();
                self.map(|c| c / &l)
            }
        }
    }

    pub fn render_in(&self, var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rat::from_integer(0.into());
            let a = if neg { -c.clone() } else { c.clone() };
            let mon = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let body = if mon.is_empty() {
                super::rat_str(&a)
            } else if a == Rat::from_integer(1.into()) {
                mon
            } else {
                format!("{}*{}", super::rat_str(&a), mon)
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

impl<C: Coef> Coef for UPoly<C> {
    fn zero() -> Self {
        UPoly(vec![])
    }
    fn one() -> Self {
        UPoly(vec![C::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new(
            (0..n)
                .map(|i| match (self.0.get(i), o.0.get(i)) {
                    (Some(a), Some(b)) => a.add(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => C::zero(),
                })
                .collect(),
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(v)
    }
    fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| c.neg()).collect())
    }
    fn from_rat(r: Rat) -> Self {
        Self::new(vec![C::from_rat(r)])
    }
    fn scale(&self, r: &Rat) -> Self {
        Self::new(self.0.iter().map(|c| c.scale(r)).collect())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(o)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn as_rat(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::from_integer(0.into())),
            1 => self.0[0].as_rat(),
            _ => None,
        }
    }
    fn param() -> Option<Self> {
        Some(UPoly::new(vec![C::zero(), C::one()]))
    }
    fn render(&self) -> (String, bool) {
        match self.as_rat() {
            Some(r) => r.render(),
            None => {
                let rs: Option<Vec<Rat>> = self.0.iter().map(|c| c.as_rat()).collect();
                let s = match rs {
                    Some(v) => UPoly::new(v).render_in("t"),
                    None => format!("{:?}", self),
                };
                let atomic = self.0.iter().filter(|c| !c.is_zero()).count() == 1 && !s.starts_with('-');
                (s, atomic)
            }
        }
    }
}

impl<C: Coef> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render().0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rint;

    fn p(v: &[i64]) -> UPoly<Rat> {
        UPoly::new(v.iter().map(|&x| rint(x)).collect())
    }

    #[test]
    fn div_rem_and_prem() {
        let a = p(&[1, 0, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[1, -1, 1]));
        assert!(r.is_zero());
        let b2 = p(&[0, 2]);
        let pr = a.prem(&b2);
        // 2^3 (x^3+1) mod 2x = 8
        assert_eq!(pr, p(&[8]));
    }

    #[test]
    fn gcd_and_compose() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(b.compose(&b), p(&[2, 1]));
        assert_eq!(a.derivative(), p(&[0, 2]));
    }

    #[test]
    fn qt_render() {
        let t: UPoly<Rat> = Coef::param().unwrap();
        let e = t.mul(&t).sub(&UPoly::constant(rint(3)));
        assert_eq!(e.render().0, "t^2 - 3");
    }
}
