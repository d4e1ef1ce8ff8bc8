use curvetower::exactalg::{rat, rint, BiPoly, Rat, UPoly};
use curvetower::newton::{mixed_area, Polygon};
use curvetower::tschirn::{approximate_root, euclid_expand, hereditary_check, trunc_binomial_root};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    let n = rng.gen_range(-4..=4);
    let d = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    rat(n, d)
}

fn random_upoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UPoly<Rat> {
    let deg = rng.gen_range(0..=max_deg);
    UPoly::new((0..=deg).map(|_| if rng.gen_bool(0.5) { small_rat(rng) } else { Rat::zero() }).collect())
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// A monic polynomial in y of degree n with random coefficients in Q[x].
pub fn random_monic(rng: &mut ChaCha8Rng, max_n: u32) -> BiPoly<Rat> {
    let n = rng.gen_range(1..=max_n) as usize;
    let mut cs: Vec<UPoly<Rat>> = (0..n).map(|_| random_upoly(rng, 3)).collect();
    cs.push(UPoly::constant(Rat::one()));
    BiPoly::from_y_coeffs(&cs)
}

pub fn deg_y(p: &BiPoly<Rat>) -> i64 {
    p.deg_y().map_or(-1, |d| d as i64)
}

/// Reconstruction, the defining inequality, c_1 = 0 and uniqueness under a
/// perturbation of one coefficient of the root.
pub fn check_expansion(f: &BiPoly<Rat>, a: u32, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = f.deg_y().unwrap();
    let big_n = n / a;
    let h = approximate_root(f, a).map_err(|e| e.to_string())?.root;
    if !h.is_monic_y() || h.deg_y() != Some(a) {
        return Err(format!("root of degree {} is not monic of that degree", a));
    }
    let rest = f.sub(&h.pow(big_n));
    if deg_y(&rest) >= (n - a) as i64 {
        return Err(format!("deg_y(f - H^{}) = {} >= {}", big_n, deg_y(&rest), n - a));
    }
    let ex = euclid_expand(f, &h).map_err(|e| e.to_string())?;
    if ex.reconstruct() != *f {
        return Err("expansion does not reconstruct f".into());
    }
    if ex.coeffs.iter().any(|c| deg_y(c) >= a as i64) {
        return Err("expansion coefficient of too high degree".into());
    }
    if ex.coeffs[0] != BiPoly::one() {
        return Err("c_0 is not 1".into());
    }
    if ex.coeffs.len() > 1 && !ex.coeffs[1].is_zero() {
        return Err("c_1 is not 0".into());
    }
    let j = rng.gen_range(0..a);
    let i = rng.gen_range(0..3);
    let mut delta = small_rat(rng);
    if delta.is_zero() {
        delta = rint(1);
    }
    let mut h2 = h.clone();
    h2.add_term((i, j), &delta);
    if deg_y(&f.sub(&h2.pow(big_n))) < (n - a) as i64 {
        return Err("perturbed root also satisfies the defining inequality".into());
    }
    Ok(())
}

pub fn check_hereditary(f: &BiPoly<Rat>, a: u32, b: u32) -> Result<(), String> {
    let rec = hereditary_check(f, a, b).map_err(|e| e.to_string())?;
    // independent restatement: the a-root of H_ab is H_a, and H_ab expanded
    // in H_a has no term one step below the top
    let hab = approximate_root(f, a * b).map_err(|e| e.to_string())?.root;
    let ha = approximate_root(f, a).map_err(|e| e.to_string())?.root;
    if approximate_root(&hab, a).map_err(|e| e.to_string())?.root != ha {
        return Err("a-root of H_ab differs from H_a".into());
    }
    let ex = euclid_expand(&hab, &ha).map_err(|e| e.to_string())?;
    if ex.coeffs.len() > 1 && !ex.coeffs[1].is_zero() {
        return Err("c_1 of H_ab in H_a is not 0".into());
    }
    if rec.inner.root != ha || rec.outer.root != hab {
        return Err("proof record disagrees with direct roots".into());
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// (a, b, c, d, xi) with gcd(a, b) = 1 and d | ac.
pub fn random_binomial_data(rng: &mut ChaCha8Rng) -> (u32, u32, u32, u32, Rat) {
    loop {
        let a = rng.gen_range(1..=6);
        let b = rng.gen_range(1..=6);
        if gcd(a, b) != 1 {
            continue;
        }
        let c = rng.gen_range(1..=6);
        let ds = divisors(a * c);
        let d = ds[rng.gen_range(0..ds.len())];
        let mut xi = small_rat(rng);
        if xi.is_zero() {
            xi = rint(-1);
        }
        return (a, b, c, d, xi);
    }
}

/// The truncated binomial is the (ac/d)-degree approximate root of
/// (y^a + xi x^b)^c and is weighted homogeneous.
pub fn check_binomial_root(a: u32, b: u32, c: u32, d: u32, xi: &Rat) -> Result<(), String> {
    let h = trunc_binomial_root(a, b, c, d, xi).map_err(|e| e.to_string())?;
    let face = BiPoly::from_terms([((0, a), Rat::one()), ((b, 0), xi.clone())]).pow(c);
    let root = approximate_root(&face, a * c / d).map_err(|e| e.to_string())?.root;
    if h != root {
        return Err(format!("{} differs from the approximate root {}", h.render(), root.render()));
    }
    let deg = (a * b * c / d) as i64;
    if h.support().any(|(al, be)| a as i64 * al as i64 + b as i64 * be as i64 != deg) {
        return Err("not weighted homogeneous".into());
    }
    Ok(())
}

fn random_points(rng: &mut ChaCha8Rng, k: usize, r: i64) -> Vec<(i64, i64)> {
    (0..k).map(|_| (rng.gen_range(0..=r), rng.gen_range(0..=r))).collect()
}

/// (P, P' containing P, Q) random lattice polygons.
pub fn random_polygons(rng: &mut ChaCha8Rng) -> (Polygon, Polygon, Polygon) {
    let k = rng.gen_range(1..=6);
    let base = random_points(rng, k, 8);
    let mut bigger = base.clone();
    let extra = rng.gen_range(0..=3);
    bigger.extend(random_points(rng, extra, 10));
    let kq = rng.gen_range(1..=6);
    let q = random_points(rng, kq, 8);
    (Polygon::lattice(&base), Polygon::lattice(&bigger), Polygon::lattice(&q))
}

pub fn check_mixed_area(p: &Polygon, big: &Polygon, q: &Polygon) -> Result<(), String> {
    let pq = mixed_area(p, q);
    if pq != mixed_area(q, p) {
        return Err("mixed area is not symmetric".into());
    }
    if pq < Rat::zero() {
        return Err("mixed area is negative".into());
    }
    if pq > mixed_area(big, q) {
        return Err(format!("monotonicity fails: {} > {}", pq, mixed_area(big, q)));
    }
    // the mixed area of a polygon with itself is twice its area
    if mixed_area(p, p) != p.area() * rint(2) {
        return Err("2V(P, P) != 2 Area(P)".into());
    }
    Ok(())
}
