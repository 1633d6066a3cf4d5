//! Characteristic polynomials of rational matrices by Hessenberg reduction
//! modulo word-sized primes and Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::RationalMatrix;
use crate::poly::Rational;

/// Characteristic polynomial `det(xI - M)`, lowest coefficient first.
pub fn characteristic_polynomial(m: &RationalMatrix) -> Vec<Rational> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "square matrix");
    let scale = (0..n)
        .flat_map(|i| m.row(i).iter())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let a: Vec<Vec<BigInt>> =
        (0..n).map(|i| m.row(i).iter().map(|v| v.numer() * (&scale / v.denom())).collect()).collect();

    let bound = coefficient_bound(&a);
    let mut modulus = BigInt::one();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut primes = Primes::new();
    while modulus <= &bound * 2 {
        let p = primes.next_prime();
        let residues = charpoly_mod(&a, p);
        let m_mod_p = (&modulus % p).to_u64().expect("reduced");
        let inv = pow_mod(m_mod_p, p - 2, p);
        for (c, r) in coeffs.iter_mut().zip(residues) {
            let c_mod_p = c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced");
            let t = mul_mod((r + p - c_mod_p) % p, inv, p);
            *c += &modulus * t;
        }
        modulus *= p;
    }
    let half = &modulus / 2;
    coeffs
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let c = if c > half { c - &modulus } else { c };
            Rational::new(c, num_traits::pow(scale.clone(), n - j))
        })
        .collect()
}

/// `(1 + R)^n` with `R` at least the largest Euclidean row norm; every
/// coefficient is a signed sum of principal minors and is bounded by it.
fn coefficient_bound(a: &[Vec<BigInt>]) -> BigInt {
    let r2 = a.iter().map(|row| row.iter().map(|v| v * v).sum::<BigInt>()).max().unwrap_or_default();
    let r = r2.sqrt() + 2;
    num_traits::pow(r, a.len())
}

fn charpoly_mod(a: &[Vec<BigInt>], p: u64) -> Vec<u64> {
    let n = a.len();
    let bp = BigInt::from(p);
    let mut h: Vec<Vec<u64>> =
        a.iter().map(|row| row.iter().map(|v| v.mod_floor(&bp).to_u64().expect("reduced")).collect()).collect();
    for c in 0..n.saturating_sub(2) {
        let Some(r) = (c + 1..n).find(|&r| h[r][c] != 0) else {
            continue;
        };
        if r != c + 1 {
            h.swap(r, c + 1);
            for row in h.iter_mut() {
                row.swap(r, c + 1);
            }
        }
        let inv = pow_mod(h[c + 1][c], p - 2, p);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = mul_mod(h[i][c], inv, p);
            for k in 0..n {
                let sub = mul_mod(f, h[c + 1][k], p);
                h[i][k] = (h[i][k] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(f, row[i], p);
                row[c + 1] = (row[c + 1] + add) % p;
            }
        }
    }

    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            next[d] = (next[d] + p - mul_mod(c, h[k][k], p)) % p;
        }
        let mut prod = 1u64;
        for i in (0..k).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(h[i][k], prod, p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Miller–Rabin with a base set that is deterministic below `2^64`.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes { next: (1u64 << 62) - 1 }
    }

    fn next_prime(&mut self) -> u64 {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        p
    }
}
