use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{binom, BiPoly, Rat};
use crate::Error;

/// Coefficients over a common denominator, for gcd-free convolution.
struct Scaled {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Scaled {
    fn new(c: &[Rat]) -> Self {
        let den = c.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let num = c.iter().map(|x| if x.is_zero() { BigInt::zero() } else { x.numer() * (&den / x.denom()) }).collect();
        Scaled { num, den }
    }

    /// acc[i + j] += num[i] * o.num[j] for i + j <= p.
    fn convolve_into(&self, o: &Scaled, acc: &mut [BigInt]) {
        let p = acc.len() - 1;
        for (i, a) in self.num.iter().enumerate().take(p + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate().take(p + 1 - i) {
                if !b.is_zero() {
                    acc[i + j] += a * b;
                }
            }
        }
    }
}

/// sum over pairs of a * b with one reduction per coefficient.
fn sum_of_products(pairs: &[(&XSeries, &XSeries)], prec: usize) -> XSeries {
    let scaled: Vec<(Scaled, Scaled)> = pairs.iter().map(|(a, b)| (Scaled::new(&a.0), Scaled::new(&b.0))).collect();
    let den = scaled.iter().fold(BigInt::one(), |d, (a, b)| d.lcm(&(&a.den * &b.den)));
    let mut acc = vec![BigInt::zero(); prec + 1];
    let mut part = vec![BigInt::zero(); prec + 1];
    for (a, b) in &scaled {
        part.iter_mut().for_each(|x| x.set_zero());
        a.convolve_into(b, &mut part);
        let m = &den / (&a.den * &b.den);
        for (x, y) in acc.iter_mut().zip(&part) {
            if !y.is_zero() {
                *x += y * &m;
            }
        }
    }
    XSeries(acc.into_iter().map(|n| Rat::new(n, den.clone())).collect())
}

/// Truncated power series in one variable; every stored coefficient is
/// correct and nothing is known beyond the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries(Vec<Rat>);

impl XSeries {
    pub fn zero(prec: usize) -> Self {
        XSeries(vec![Rat::zero(); prec + 1])
    }

    pub fn constant(c: Rat, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.0[0] = c;
        s
    }

    pub fn from_coeffs(mut v: Vec<Rat>, prec: usize) -> Self {
        v.resize(prec + 1, Rat::zero());
        XSeries(v)
    }

    pub fn prec(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.0[i]
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        v.resize(prec + 1, Rat::zero());
        XSeries(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// First nonzero index within the known range.
    pub fn ord(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        XSeries((0..=p).map(|i| &self.0[i] + &o.0[i]).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        XSeries((0..=p).map(|i| &self.0[i] - &o.0[i]).collect())
    }

    pub fn add_assign_scaled(&mut self, o: &Self, k: &Rat) {
        let p = self.prec().min(o.prec());
        self.0.truncate(p + 1);
        for i in 0..=p {
            if !o.0[i].is_zero() {
                self.0[i] += &o.0[i] * k;
            }
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        XSeries(self.0.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec().min(o.prec());
        sum_of_products(&[(self, o)], p)
    }

    /// Multiplicative inverse of a unit.
    pub fn inv(&self) -> Option<Self> {
        if self.0[0].is_zero() {
            return None;
        }
        let p = self.prec();
        let c0inv = Rat::one() / &self.0[0];
        let mut out = vec![Rat::zero(); p + 1];
        out[0] = c0inv.clone();
        for k in 1..=p {
            let mut s = Rat::zero();
            for j in 1..=k {
                if !self.0[j].is_zero() && !out[k - j].is_zero() {
                    s += &self.0[j] * &out[k - j];
                }
            }
            out[k] = -s * &c0inv;
        }
        Some(XSeries(out))
    }

    /// Multiply by X^e, keeping the precision.
    pub fn shift_up(&self, e: usize) -> Self {
        let p = self.prec();
        let mut v = vec![Rat::zero(); p + 1];
        for i in 0..=p {
            if i + e <= p {
                v[i + e] = self.0[i].clone();
            }
        }
        XSeries(v)
    }
}

/// Direction bound of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Coefficients known up to this degree; nothing known beyond.
    Trunc(usize),
    /// The object has no support beyond this degree.
    Exact(usize),
}

impl Bound {
    pub fn degree(&self) -> usize {
        match self {
            Bound::Trunc(n) | Bound::Exact(n) => *n,
        }
    }
    pub fn is_exact(&self) -> bool {
        matches!(self, Bound::Exact(_))
    }
}

/// Truncated bivariate power series in (x, y) over Q, stored densely by
/// y-degree. Reading outside the known box is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    rows: Vec<XSeries>,
    exact_x: bool,
    exact_y: bool,
}

impl TruncSeries {
    pub fn zero(nx: usize, ny: usize) -> Self {
        TruncSeries { rows: vec![XSeries::zero(nx); ny + 1], exact_x: false, exact_y: false }
    }

    pub fn from_rows(rows: Vec<XSeries>, exact_x: bool, exact_y: bool) -> Self {
        assert!(!rows.is_empty());
        let nx = rows.iter().map(|r| r.prec()).min().unwrap();
        let rows = rows.into_iter().map(|r| r.truncate(nx)).collect();
        TruncSeries { rows, exact_x, exact_y }
    }

    pub fn from_bipoly(p: &BiPoly<Rat>, nx: usize, ny: usize) -> Self {
        let mut s = Self::zero(nx, ny);
        for ((a, b), c) in p.terms() {
            let (a, b) = (*a as usize, *b as usize);
            if a <= nx && b <= ny {
                s.rows[b].0[a] = c.clone();
            }
        }
        s.exact_x = p.deg_x().map(|d| d as usize <= nx).unwrap_or(true);
        s.exact_y = p.deg_y().map(|d| d as usize <= ny).unwrap_or(true);
        // a polynomial cut in one direction is still exact in the other only
        // when nothing was dropped
        if !(s.exact_x && s.exact_y) {
            let dropped = p.support().any(|(a, b)| a as usize > nx || b as usize > ny);
            if dropped {
                s.exact_x = s.exact_x && p.support().all(|(a, _)| a as usize <= nx);
                s.exact_y = s.exact_y && p.support().all(|(_, b)| b as usize <= ny);
            }
        }
        s
    }

    pub fn nx(&self) -> usize {
        self.rows[0].prec()
    }

    pub fn ny(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn bound_x(&self) -> Bound {
        if self.exact_x {
            Bound::Exact(self.nx())
        } else {
            Bound::Trunc(self.nx())
        }
    }

    pub fn bound_y(&self) -> Bound {
        if self.exact_y {
            Bound::Exact(self.ny())
        } else {
            Bound::Trunc(self.ny())
        }
    }

    pub fn rows(&self) -> &[XSeries] {
        &self.rows
    }

    pub fn row(&self, b: usize) -> &XSeries {
        &self.rows[b]
    }

    /// Coefficient of x^a y^b; an error when the box does not determine it.
    pub fn coeff(&self, a: usize, b: usize) -> Result<Rat, Error> {
        let in_x = a <= self.nx();
        let in_y = b <= self.ny();
        if in_x && in_y {
            return Ok(self.rows[b].0[a].clone());
        }
        if (!in_x && !self.exact_x) || (!in_y && !self.exact_y) {
            return Err(Error::OutOfBox { a, b, nx: self.nx(), ny: self.ny() });
        }
        Ok(Rat::zero())
    }

    pub fn set(&mut self, a: usize, b: usize, c: Rat) {
        self.rows[b].0[a] = c;
    }

    /// Nonzero coefficients inside the box.
    pub fn support(&self) -> impl Iterator<Item = ((usize, usize), &Rat)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(b, r)| r.0.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(a, c)| ((a, b), c)))
    }

    pub fn is_zero_in_box(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn truncate(&self, nx: usize, ny: usize) -> Self {
        let nx2 = nx.min(self.nx());
        let ny2 = ny.min(self.ny());
        let rows: Vec<XSeries> = self.rows[..=ny2].iter().map(|r| r.truncate(nx2)).collect();
        let mut s = TruncSeries { rows, exact_x: false, exact_y: false };
        s.exact_x = self.exact_x && self.support().all(|((a, _), _)| a <= nx2);
        s.exact_y = self.exact_y && self.support().all(|((_, b), _)| b <= ny2);
        s
    }

    fn max_degs(&self) -> (usize, usize) {
        let mut mx = 0;
        let mut my = 0;
        for ((a, b), _) in self.support() {
            mx = mx.max(a);
            my = my.max(b);
        }
        (mx, my)
    }

    pub fn add(&self, o: &Self) -> Self {
        let nx = self.nx().min(o.nx());
        let ny = self.ny().min(o.ny());
        let rows = (0..=ny).map(|b| self.rows[b].truncate(nx).add(&o.rows[b].truncate(nx))).collect();
        let mut s = TruncSeries { rows, exact_x: false, exact_y: false };
        let (ax, ay) = self.max_degs();
        let (bx, by) = o.max_degs();
        s.exact_x = self.exact_x
            && o.exact_x
            && ax.max(bx) <= nx
            && (self.ny() <= ny || self.exact_y)
            && (o.ny() <= ny || o.exact_y);
        s.exact_y = self.exact_y
            && o.exact_y
            && ay.max(by) <= ny
            && (self.nx() <= nx || self.exact_x)
            && (o.nx() <= nx || o.exact_x);
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        TruncSeries {
            rows: self.rows.iter().map(|r| r.scale(k)).collect(),
            exact_x: self.exact_x,
            exact_y: self.exact_y,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let nx = self.nx().min(o.nx());
        let ny = self.ny().min(o.ny());
        let mut rows = vec![XSeries::zero(nx); ny + 1];
        for (i, ra) in self.rows.iter().enumerate().take(ny + 1) {
            if ra.is_zero() {
                continue;
            }
            let ra = ra.truncate(nx);
            for (j, rb) in o.rows.iter().enumerate().take(ny + 1 - i) {
                if rb.is_zero() {
                    continue;
                }
                let p = ra.mul(&rb.truncate(nx));
                rows[i + j] = rows[i + j].add(&p);
            }
        }
        let (ax, ay) = self.max_degs();
        let (bx, by) = o.max_degs();
        let full_x = self.exact_x && o.exact_x && self.exact_y && o.exact_y;
        TruncSeries {
            rows,
            exact_x: full_x && ax + bx <= nx && ay + by <= ny,
            exact_y: full_x && ax + bx <= nx && ay + by <= ny,
        }
    }

    /// Terms inside the box as a polynomial.
    pub fn to_bipoly(&self) -> BiPoly<Rat> {
        BiPoly::from_terms(self.support().map(|((a, b), c)| ((a as u32, b as u32), c.clone())))
    }
}

/// Data of the inverse of a local coordinate change v = V(x, w): the root
/// W0(x) of V(x, w) = 0 and the table of powers of W - W0 in v.
#[derive(Clone, Debug)]
pub(crate) struct Reversion {
    pub t: usize,
    pub s: usize,
    pub w0: XSeries,
    /// pw[q][s] = coefficient of v^s in (W - W0)^q, for 1 <= q <= s <= S.
    pub pw: Vec<Vec<XSeries>>,
}

/// Evaluate sum_q rows[q](x) * s(x)^q for an x-series s with s(0) = 0.
fn eval_rows_at(rows: &[XSeries], s: &XSeries, t: usize) -> XSeries {
    let mut acc = XSeries::zero(t);
    for r in rows.iter().rev() {
        acc = acc.mul(s).add(&r.truncate(t));
    }
    acc
}

fn taylor_at(rows: &[XSeries], w0: &XSeries, t: usize, upto: usize, w0_pows: &[XSeries]) -> Vec<XSeries> {
    // E_q = sum_k binom(q+k, q) rows[q+k] w0^k, w0^k has order >= k
    let zero = w0.is_zero();
    (0..=upto)
        .map(|q| {
            let mut e = XSeries::zero(t);
            if q < rows.len() {
                e = rows[q].truncate(t);
            }
            if !zero {
                for k in 1..=t {
                    let r = q + k;
                    if r >= rows.len() {
                        break;
                    }
                    if rows[r].is_zero() {
                        continue;
                    }
                    let c = Rat::from_integer(binom(r as u64, q as u64));
                    let term = rows[r].truncate(t).mul(&w0_pows[k]);
                    e.add_assign_scaled(&term, &c);
                }
            }
            e
        })
        .collect()
}

fn powers(s: &XSeries, t: usize) -> Vec<XSeries> {
    let mut v = vec![XSeries::constant(Rat::one(), t)];
    for k in 1..=t {
        let n = v[k - 1].mul(s);
        v.push(n);
    }
    v
}

impl Reversion {
    /// Invert v = V(x, w) where `rows[q]` is the coefficient of w^q. The rows
    /// must be exact in w (every w-power listed). Precision t in x, s in v.
    pub fn new(rows: &[XSeries], t: usize, s: usize) -> Result<Self, Error> {
        if rows.len() < 2 {
            return Err(Error::NotLocalCoordinate);
        }
        let t = rows.iter().map(|r| r.prec()).min().unwrap().min(t);
        if !rows[0].get(0).is_zero() || rows[1].get(0).is_zero() {
            return Err(Error::NotLocalCoordinate);
        }
        // root of V(x, w0(x)) = 0 by Newton iteration in x
        let deriv: Vec<XSeries> =
            (1..rows.len()).map(|q| rows[q].truncate(t).scale(&Rat::from_integer((q as i64).into()))).collect();
        let mut w0 = XSeries::zero(t);
        if !rows[0].truncate(t).is_zero() {
            let mut prec = 1usize;
            loop {
                let val = eval_rows_at(rows, &w0, t);
                let d = eval_rows_at(&deriv, &w0, t).inv().ok_or(Error::NotLocalCoordinate)?;
                w0 = w0.sub(&val.mul(&d));
                if prec > t {
                    break;
                }
                prec *= 2;
            }
            debug_assert!(eval_rows_at(rows, &w0, t).is_zero());
        }
        let w0_pows = powers(&w0, t);
        let e = taylor_at(rows, &w0, t, s, &w0_pows);
        debug_assert!(e[0].is_zero());
        let e1inv = e[1].inv().ok_or(Error::NotLocalCoordinate)?;
        // pw[q][k] for 1 <= q <= k <= s; index pw[q][k], row 0 unused
        let mut pw: Vec<Vec<XSeries>> = vec![vec![XSeries::zero(t); s + 1]; s + 1];
        for k in 1..=s {
            for q in (2..=k).rev() {
                let pairs: Vec<(&XSeries, &XSeries)> = (1..=(k + 1 - q))
                    .map(|r| (&pw[1][r], &pw[q - 1][k - r]))
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .collect();
                pw[q][k] = sum_of_products(&pairs, t);
            }
            let wk = if k == 1 {
                e1inv.clone()
            } else {
                let pairs: Vec<(&XSeries, &XSeries)> = (2..=k)
                    .filter(|&q| q < e.len() && !e[q].is_zero() && !pw[q][k].is_zero())
                    .map(|q| (&e[q], &pw[q][k]))
                    .collect();
                sum_of_products(&pairs, t).mul(&e1inv).scale(&-Rat::one())
            };
            pw[1][k] = wk;
        }
        Ok(Reversion { t, s, w0, pw })
    }

    /// W(x, v) as a truncated series.
    pub fn inverse_series(&self) -> TruncSeries {
        let mut rows = vec![self.w0.clone()];
        for k in 1..=self.s {
            rows.push(self.pw[1][k].clone());
        }
        TruncSeries::from_rows(rows, false, false)
    }

    /// K(x, W(x, v)) for K given by rows exact in w, each of x-precision
    /// at least `t` where the result is wanted.
    pub fn compose(&self, rows: &[XSeries]) -> TruncSeries {
        let t = rows.iter().map(|r| r.prec()).min().unwrap_or(self.t).min(self.t);
        let w0 = self.w0.truncate(t);
        let pows = powers(&w0, t);
        let e = taylor_at(rows, &w0, t, self.s, &pows);
        let mut out = vec![XSeries::zero(t); self.s + 1];
        out[0] = e[0].clone();
        for k in 1..=self.s {
            let tr: Vec<XSeries> = (1..=k)
                .filter(|&q| !e[q].is_zero() && !self.pw[q][k].is_zero())
                .map(|q| self.pw[q][k].truncate(t))
                .collect();
            let qs = (1..=k).filter(|&q| !e[q].is_zero() && !self.pw[q][k].is_zero());
            let pairs: Vec<(&XSeries, &XSeries)> = qs.zip(&tr).map(|(q, p)| (&e[q], p)).collect();
            out[k] = sum_of_products(&pairs, t);
        }
        TruncSeries::from_rows(out, false, false)
    }
}

/// Invert v = v_expr(x, w) in its second variable: returns W(x, v) with
/// v_expr(x, W(x, v)) = v inside the box (nx of v_expr, ny_out).
pub fn series_compose_invert(v_expr: &TruncSeries, ny_out: usize) -> Result<TruncSeries, Error> {
    let t = v_expr.nx();
    let need = if v_expr.rows[0].is_zero() { ny_out } else { ny_out + t };
    if !v_expr.exact_y && v_expr.ny() < need {
        return Err(Error::OutOfBox { a: t, b: need, nx: v_expr.nx(), ny: v_expr.ny() });
    }
    let rev = Reversion::new(&v_expr.rows, t, ny_out)?;
    Ok(rev.inverse_series())
}

/// Pull back f along x = X^a Y^a', y = X^b Y^b' (the columns of `m` are
/// (a, b) and (a', b')) and recenter Y = w + shift. The result is given in
/// the box nx_out in X; each X-row is exact in w.
pub fn substitute_monomial_map(
    f: &TruncSeries,
    m: [[u32; 2]; 2],
    shift: &Rat,
    nx_out: usize,
) -> Result<TruncSeries, Error> {
    let (a, a2, b, b2) = (m[0][0] as usize, m[0][1] as usize, m[1][0] as usize, m[1][1] as usize);
    if (a * b2) as i64 - (a2 * b) as i64 != 1 && (a * b2) as i64 - (a2 * b) as i64 != -1 {
        return Err(Error::Precondition("chart matrix is not unimodular".into()));
    }
    // every (alpha, beta) with a*alpha + b*beta <= nx_out must be known
    let need_x = if a == 0 { usize::MAX } else { nx_out / a };
    let need_y = if b == 0 { usize::MAX } else { nx_out / b };
    let ok_x = f.exact_x || need_x <= f.nx();
    let ok_y = f.exact_y || need_y <= f.ny();
    if !ok_x || !ok_y {
        return Err(Error::OutOfBox { a: need_x.min(1 << 20), b: need_y.min(1 << 20), nx: f.nx(), ny: f.ny() });
    }
    let mut by_x: Vec<BiPoly<Rat>> = vec![BiPoly::zero(); nx_out + 1];
    for ((al, be), c) in f.support() {
        let e = a * al + b * be;
        if e > nx_out {
            continue;
        }
        let ye = (a2 * al + b2 * be) as u32;
        by_x[e].add_term((0, ye), c);
    }
    let ymax = by_x.iter().filter_map(|p| p.deg_y()).max().unwrap_or(0) as usize;
    let shifted: Vec<Vec<Rat>> = by_x.iter().map(|p| shift_univariate(p, shift, ymax)).collect();
    let rows: Vec<XSeries> =
        (0..=ymax).map(|q| XSeries::from_coeffs(shifted.iter().map(|r| r[q].clone()).collect(), nx_out)).collect();
    Ok(TruncSeries::from_rows(rows, false, true))
}

/// Coefficients of p(shift + w) in w where p is given as powers of y.
pub(crate) fn shift_univariate(p: &BiPoly<Rat>, shift: &Rat, ymax: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); ymax + 1];
    for ((_, e), v) in p.terms() {
        c[*e as usize] += v;
    }
    taylor_shift(&mut c, shift);
    c
}

/// In place: c(y) -> c(y + s).
pub(crate) fn taylor_shift(c: &mut [Rat], s: &Rat) {
    if s.is_zero() {
        return;
    }
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let v = &c[j + 1] * s;
            c[j] += v;
        }
    }
}
