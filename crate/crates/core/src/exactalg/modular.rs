//! Arithmetic modulo word-size primes and the order in x of a resultant
//! recovered from its images modulo enough primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::{BiPoly, Rat};

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// r mod p, or None when p divides the denominator.
pub(crate) fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let m = BigInt::from(p);
    let reduce = |x: &BigInt| -> u64 { x.mod_floor(&m).try_into().expect("reduced below p") };
    let d = reduce(r.denom());
    (d != 0).then(|| mul_mod(reduce(r.numer()), inv_mod(d, p), p))
}

/// Primes below 2^61 in decreasing order.
pub(crate) fn word_primes() -> impl Iterator<Item = u64> {
    (0u64..).map(|k| (1u64 << 61) - 1 - 2 * k).filter(|&n| primal_check::miller_rabin(n))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Res(a, b) over F_p for nonzero a, b given low degree first.
fn resultant_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    let mut acc = 1u64;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            acc = p - acc;
        }
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let lb = *b.last().unwrap();
        if db == 0 {
            return mul_mod(acc, pow_mod(lb, da as u64, p), p);
        }
        let inv = inv_mod(lb, p);
        let mut r = a;
        for top in (db..=da).rev() {
            let q = mul_mod(r[top], inv, p);
            if q != 0 {
                for (i, c) in b.iter().enumerate() {
                    let s = top - db + i;
                    r[s] = (r[s] + p - mul_mod(q, *c, p)) % p;
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if da % 2 == 1 && db % 2 == 1 {
            acc = p - acc;
        }
        acc = mul_mod(acc, pow_mod(lb, (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

fn eval_mod(c: &[u64], x: u64, p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, v| (mul_mod(acc, x, p) + v) % p)
}

/// Coefficients of the polynomial of degree < xs.len() through the points.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let span = (xs[n - 1] - xs[0]) as usize;
    // inverses of 1..=span by the linear recurrence
    let mut inv = vec![0u64, 1];
    for k in 2..=span as u64 {
        let v = mul_mod(p - p / k, inv[(p % k) as usize], p);
        inv.push(v);
    }
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let d = (xs[i] - xs[i - j]) as usize;
            c[i] = mul_mod((c[i] + p - c[i - 1]) % p, inv[d], p);
        }
    }
    let mut poly = vec![0u64; n];
    poly[0] = c[n - 1];
    let mut deg = 0;
    for i in (0..n - 1).rev() {
        // poly = poly * (x - xs[i]) + c[i]
        deg += 1;
        for k in (1..=deg).rev() {
            poly[k] = (poly[k - 1] + p - mul_mod(poly[k], xs[i] % p, p)) % p;
        }
        poly[0] = (c[i] + p - mul_mod(poly[0], xs[i] % p, p)) % p;
    }
    poly
}

/// Bits of the sum of absolute values of the coefficients of c f, with c
/// the least common denominator.
fn l1_bits(f: &BiPoly<Rat>) -> u64 {
    let den = f.terms().values().fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
    let s: BigInt = f.terms().values().map(|c| (c.numer() * (&den / c.denom())).abs()).sum();
    s.bits()
}

/// ord_x Res_y(f, g) with the formal y-degrees of f and g, or None when the
/// resultant vanishes. Exact: every coefficient of the integral resultant
/// is bounded by |f|_1^deg g |g|_1^deg f, and the primes used have a larger
/// product, so a coefficient vanishing modulo all of them is zero.
pub fn resultant_y_order(f: &BiPoly<Rat>, g: &BiPoly<Rat>) -> Option<usize> {
    if f.is_zero() || g.is_zero() {
        return None;
    }
    let (m, n) = (f.deg_y().unwrap() as u64, g.deg_y().unwrap() as u64);
    if m == 0 && n == 0 {
        return Some(0);
    }
    let (dxf, dxg) = (f.deg_x().unwrap() as u64, g.deg_x().unwrap() as u64);
    let deg_bound = (n * dxf + m * dxg) as usize;
    let need_bits = n * l1_bits(f) + m * l1_bits(g) + 2;
    let mut have_bits = 0u64;
    let mut best: Option<usize> = None;
    for p in word_primes() {
        if have_bits > need_bits {
            break;
        }
        let reduce = |h: &BiPoly<Rat>| -> Option<Vec<Vec<u64>>> {
            h.y_coeffs().iter().map(|c| c.coeffs().iter().map(|r| rat_mod(r, p)).collect()).collect()
        };
        let (Some(fm), Some(gm)) = (reduce(f), reduce(g)) else { continue };
        have_bits += 60;
        let (lf, lg) = (fm.last().unwrap(), gm.last().unwrap());
        let mut xs = Vec::with_capacity(deg_bound + 1);
        let mut ys = Vec::with_capacity(deg_bound + 1);
        let mut x = 0u64;
        while xs.len() <= deg_bound {
            // points where a leading coefficient vanishes would drop a degree
            if eval_mod(lf, x, p) != 0 && eval_mod(lg, x, p) != 0 {
                let fa: Vec<u64> = fm.iter().map(|c| eval_mod(c, x, p)).collect();
                let ga: Vec<u64> = gm.iter().map(|c| eval_mod(c, x, p)).collect();
                xs.push(x);
                ys.push(resultant_mod(&fa, &ga, p));
            }
            x += 1;
        }
        let r = interpolate_mod(&xs, &ys, p);
        if let Some(o) = r.iter().position(|&c| c != 0) {
            best = Some(best.map_or(o, |b| b.min(o)));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_bipoly, resultant_y};

    #[test]
    fn modular_helpers() {
        let p = (1u64 << 61) - 1;
        assert_eq!(word_primes().next(), Some(p));
        assert_eq!(mul_mod(inv_mod(12345, p), 12345, p), 1);
        assert_eq!(rat_mod(&Rat::new(1.into(), 2.into()), 7), Some(4));
        assert_eq!(rat_mod(&Rat::new(1.into(), 7.into()), 7), None);
        // (x - 2)(x - 3) through three points
        let c = interpolate_mod(&[0, 1, 4], &[6, 2, 2], 101);
        assert_eq!(c, vec![6, 96, 1]);
        // Res(y^2 - 2, y - 3) = 7, Res(y - 3, y^2 - 2) = 7
        assert_eq!(resultant_mod(&[99, 0, 1], &[98, 1], 101), 7);
        assert_eq!(resultant_mod(&[98, 1], &[99, 0, 1], 101), 7);
    }

    #[test]
    fn order_matches_the_subresultant() {
        let cases = [
            ("y^2+x^3", "y^3+x^2"),
            ("(y^4+x^3)^6+x^17*y^3", "y^4+x^3"),
            ("y^2-x^3", "2*y-3/2*x^2+x*y^3"),
            ("x*y^2+y+x^5", "y^3-x"),
            ("y+x", "3"),
        ];
        for (a, b) in cases {
            let (f, g) = (parse_bipoly(a).unwrap(), parse_bipoly(b).unwrap());
            assert_eq!(resultant_y_order(&f, &g), resultant_y(&f, &g).ord(), "{} {}", a, b);
        }
        let f = parse_bipoly("(y-x)*(y^2+x^3)").unwrap();
        assert_eq!(resultant_y_order(&f, &parse_bipoly("(y-x)*(y+1)").unwrap()), None);
    }
}
