use super::{BiPoly, Coef, Rat, UPoly};

fn pow_c<R: Coef>(c: &R, e: usize) -> R {
    c.pow(e as u32)
}

/// Resultant of two univariate polynomials over an integral domain with exact
/// division, by the subresultant pseudo-remainder sequence.
pub fn resultant<R: Coef>(a: &UPoly<R>, b: &UPoly<R>) -> R {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return R::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut neg = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            neg = true;
        }
    }
    let sign = |neg: bool, r: R| if neg { r.neg() } else { r };
    let mut deg_a = a.degree().unwrap();
    let mut deg_b = b.degree().unwrap();
    if deg_b == 0 {
        return sign(neg, pow_c(&b.lead(), deg_a));
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = deg_a - deg_b;
        if deg_a % 2 == 1 && deg_b % 2 == 1 {
            neg = !neg;
        }
        let r = a.prem(&b);
        a = b;
        let Some(dr) = r.degree() else {
            return R::zero();
        };
        let div = g.mul(&pow_c(&h, delta));
        b = UPoly::new(r.coeffs().iter().map(|c| c.exact_div(&div).expect("subresultant division is exact")).collect());
        g = a.lead();
        h = if delta == 0 {
            h
        } else {
            pow_c(&g, delta).exact_div(&pow_c(&h, delta - 1)).expect("subresultant division is exact")
        };
        deg_a = a.degree().unwrap();
        deg_b = dr;
        if deg_b == 0 {
            break;
        }
    }
    let num = pow_c(&b.lead(), deg_a);
    let res = if deg_a == 0 {
        num.mul(&h)
    } else {
        num.exact_div(&pow_c(&h, deg_a - 1)).expect("subresultant division is exact")
    };
    sign(neg, res)
}

/// Res_y(f, g) as a polynomial in x.
pub fn resultant_y<C: Coef>(f: &BiPoly<C>, g: &BiPoly<C>) -> UPoly<C> {
    let a = UPoly::new(f.y_coeffs());
    let b = UPoly::new(g.y_coeffs());
    resultant(&a, &b)
}

/// Determinant of the Sylvester matrix of f(x0, y) and g(x0, y) using the
/// formal y-degrees of f and g. Independent of the subresultant code.
pub fn sylvester_resultant_at(f: &BiPoly<Rat>, g: &BiPoly<Rat>, x0: &Rat) -> Rat {
    let fc: Vec<Rat> = f.y_coeffs().iter().map(|c| c.eval(x0)).collect();
    let gc: Vec<Rat> = g.y_coeffs().iter().map(|c| c.eval(x0)).collect();
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return Rat::one();
    }
    let mut mat = vec![vec![Rat::zero(); size]; size];
    for i in 0..n {
        for (j, c) in fc.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in gc.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    determinant(mat)
}

pub(crate) fn determinant(mut mat: Vec<Vec<Rat>>) -> Rat {
    let n = mat.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] / &p;
            for c in col..n {
                let v = &mat[col][c] * &factor;
                mat[r][c] -= v;
            }
        }
    }
    det
}
