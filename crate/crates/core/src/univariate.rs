//! Dense univariate polynomials over GF(p), coefficients low degree first.
//! Used to find rational points on curves by slicing.

use rand::Rng;

use crate::field::PrimeField;
use crate::rng::random_element;

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(f: PrimeField, a: &[u64], b: &[u64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.mul_add(out[i + j], x, y);
        }
    }
    trim(out)
}

pub fn sub(f: PrimeField, a: &[u64], b: &[u64]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(f: PrimeField, a: &[u64], b: &[u64]) -> Poly {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    r
}

pub fn monic(f: PrimeField, a: Poly) -> Poly {
    let a = trim(a);
    match a.last() {
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
        None => a,
    }
}

pub fn gcd(f: PrimeField, a: &[u64], b: &[u64]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, x)
}

/// `base^e mod m`.
pub fn pow_mod(f: PrimeField, base: &[u64], mut e: u64, m: &[u64]) -> Poly {
    let mut result = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

pub fn evaluate(f: PrimeField, a: &[u64], x: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Distinct roots in GF(p), sorted ascending.
pub fn roots<R: Rng + ?Sized>(f: PrimeField, a: &[u64], rng: &mut R) -> Vec<u64> {
    let a = monic(f, a.to_vec());
    let Some(d) = degree(&a) else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let p = f.modulus();
    // product of the distinct linear factors: gcd(a, X^p − X)
    let xp = pow_mod(f, &[0, 1], p, &a);
    let split = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split_roots(f, split, rng, &mut out);
    out.sort_unstable();
    out
}

fn split_roots<R: Rng + ?Sized>(f: PrimeField, a: Poly, rng: &mut R, out: &mut Vec<u64>) {
    match degree(&a) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(a[0], f.inv(a[1])))),
        Some(d) => {
            if f.modulus() == 2 {
                for x in 0..2 {
                    if evaluate(f, &a, x) == 0 {
                        out.push(x);
                    }
                }
                return;
            }
            loop {
                let delta = random_element(f, rng);
                let h = pow_mod(f, &[delta, 1], (f.modulus() - 1) / 2, &a);
                let g = gcd(f, &a, &sub(f, &h, &[1]));
                let dg = degree(&g).unwrap_or(0);
                if dg > 0 && dg < d {
                    let cofactor = divide_exact(f, &a, &g);
                    split_roots(f, g, rng, out);
                    split_roots(f, cofactor, rng, out);
                    return;
                }
            }
        }
    }
}

/// Quotient of `a` by a divisor `b`.
pub fn divide_exact(f: PrimeField, a: &[u64], b: &[u64]) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let Some(da) = degree(a) else {
        return Vec::new();
    };
    let lead_inv = f.inv(b[db]);
    let mut r = a[..=da].to_vec();
    let mut q = vec![0; da + 1 - db.min(da)];
    for i in (0..=da.saturating_sub(db)).rev() {
        if da < db {
            break;
        }
        let c = f.mul(r[i + db], lead_inv);
        q[i] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[i + j] = f.sub(r[i + j], f.mul(c, bj));
        }
    }
    trim(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn roots_of_product_of_linears() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = rng_from_seed(3);
        // (X − 5)(X − 17)(X − 31000)(X^2 + 1)  [−1 is a non-residue mod 32003]
        let mut a = vec![1];
        for r in [5u64, 17, 31000] {
            a = mul(f, &a, &[f.neg(r), 1]);
        }
        a = mul(f, &a, &[1, 0, 1]);
        assert_eq!(roots(f, &a, &mut rng), vec![5, 17, 31000]);
    }

    #[test]
    fn gcd_and_division() {
        let f = PrimeField::new(101).unwrap();
        let a = mul(f, &[1, 1], &[2, 0, 1]);
        let b = mul(f, &[1, 1], &[3, 1]);
        assert_eq!(gcd(f, &a, &b), vec![1, 1]);
        assert_eq!(divide_exact(f, &a, &[1, 1]), vec![2, 0, 1]);
    }

    #[test]
    fn repeated_roots_counted_once() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = rng_from_seed(1);
        let a = mul(f, &mul(f, &[f.neg(4), 1], &[f.neg(4), 1]), &[f.neg(9), 1]);
        assert_eq!(roots(f, &a, &mut rng), vec![4, 9]);
    }
}
