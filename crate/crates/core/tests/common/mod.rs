#![allow(dead_code)]

pub mod checks;

use curvetower::exactalg::{parse_bipoly, rint, BiPoly, Rat, UPoly};
use curvetower::infinity::{AutoSeq, AutoStep};
use curvetower::tower::{build_tower, Tower};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const EX49: &str = "(y^4+x^3)^6+x^17*y^3";

pub fn p(s: &str) -> BiPoly<Rat> {
    parse_bipoly(s).unwrap()
}

/// All sequences a_1, ..., a_k with a_i >= 2 and product at most `max`.
pub fn weight_sequences(max: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, prod: u32, max: u32, out: &mut Vec<Vec<u32>>) {
        for a in 2..=max / prod {
            prefix.push(a);
            out.push(prefix.clone());
            rec(prefix, prod * a, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 1, max, &mut out);
    out
}

fn small(rng: &mut ChaCha8Rng, h: i64) -> Rat {
    loop {
        let v = rng.gen_range(-h..=h);
        if v != 0 {
            return rint(v);
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A germ (y^a + c x^b)^A plus terms above the face, irreducible by
/// construction of its tower. Degree in y at most `max_n`.
pub fn random_germ(rng: &mut ChaCha8Rng, max_n: u32) -> (BiPoly<Rat>, Tower) {
    loop {
        let a = rng.gen_range(2..=max_n.min(6));
        let big_a = rng.gen_range(1..=max_n / a);
        let b = rng.gen_range(1..=7u32);
        if gcd(a, b) != 1 {
            continue;
        }
        let n = a * big_a;
        let d = a * b * big_a;
        let face = BiPoly::from_terms([((0, a), rint(1)), ((b, 0), small(rng, 3))]).pow(big_a);
        let mut f = face;
        for _ in 0..rng.gen_range(1..=3) {
            let q = rng.gen_range(0..n);
            // x^p y^q strictly above the face: b*q + a*p > d
            let pmin = (d.saturating_sub(b * q)) / a + 1;
            let pe = pmin + rng.gen_range(0..3);
            f.add_term((pe, q), &small(rng, 3));
        }
        if let Ok(t) = build_tower(&f) {
            return (f, t);
        }
    }
}

fn random_step(rng: &mut ChaCha8Rng) -> AutoStep {
    match rng.gen_range(0..3) {
        0 => {
            let deg = rng.gen_range(1..=4usize);
            let mut c: Vec<Rat> = (0..deg).map(|_| rint(rng.gen_range(-3..=3))).collect();
            c.push(small(rng, 3));
            AutoStep::Shear(UPoly::new(c))
        }
        1 => AutoStep::Swap,
        _ => loop {
            let m: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
            if m[0] * m[3] - m[1] * m[2] != 0 {
                break AutoStep::Affine {
                    m: [[rint(m[0]), rint(m[1])], [rint(m[2]), rint(m[3])]],
                    c: [rint(rng.gen_range(-3..=3)), rint(rng.gen_range(-3..=3))],
                };
            }
        },
    }
}

/// x composed with a random automorphism of at most four elementary steps.
pub fn random_line(rng: &mut ChaCha8Rng, max_deg: u32) -> (BiPoly<Rat>, AutoSeq) {
    loop {
        let len = rng.gen_range(1..=4);
        let seq = AutoSeq { steps: (0..len).map(|_| random_step(rng)).collect() };
        let f = seq.pullback(&BiPoly::x());
        if f.total_degree().map(|d| d <= max_deg).unwrap_or(false) {
            return (f, seq);
        }
    }
}
