//! Primality and factorization for the factored text format.
//!
//! Trial division strips small primes, the cofactor is tested with a
//! Baillie–PSW test (strong base-2 Miller–Rabin plus a strong Lucas test) and
//! split with perfect-power detection and Brent's variant of Pollard rho.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u32 = 1 << 16;

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn strong_probable_prime(n: &BigUint, base: u32) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    if n.sqrt().pow(2) == *n {
        return false;
    }
    let n_int = BigInt::from(n.clone());
    // Selfridge parameters: first D in 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d_abs: i64 = 5;
    let mut sign: i64 = 1;
    let d = loop {
        let d = BigInt::from(sign * d_abs);
        match jacobi(&d, &n_int) {
            -1 => break d,
            0 if BigInt::from(d_abs) != n_int => return false,
            _ => {}
        }
        d_abs += 2;
        sign = -sign;
    };
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4;
    let modn = |x: BigInt| x.mod_floor(&n_int);
    let half = |x: BigInt| {
        let x = if x.is_odd() { x + &n_int } else { x };
        modn(x >> 1)
    };

    let n_plus_1: BigInt = &n_int + 1;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let k = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = modn(q.clone());
    let bits = k.bits();
    for i in (0..bits - 1).rev() {
        u = modn(&u * &v);
        v = modn(&v * &v - &qk - &qk);
        qk = modn(&qk * &qk);
        if k.bit(i) {
            let nu = half(&p * &u + &v);
            let nv = half(&d * &u + &p * &v);
            u = nu;
            v = nv;
            qk = modn(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = modn(&v * &v - &qk - &qk);
        if v.is_zero() {
            return true;
        }
        qk = modn(&qk * &qk);
    }
    false
}

/// Baillie–PSW primality test. Exact for every input below 2^64 and with no
/// known counterexample above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &p in small_primes().iter().take(64) {
            if small == p as u64 {
                return true;
            }
            if small % p as u64 == 0 {
                return false;
            }
        }
    } else {
        for &p in small_primes().iter().take(64) {
            if (n % p).is_zero() {
                return false;
            }
        }
    }
    strong_probable_prime(n, 2) && strong_lucas_probable_prime(n)
}

fn brent_rho(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut g = BigUint::one();
    let mut q = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// `n = r^k` with `k` prime. Callers have already removed every factor below
/// 2^16, so `k` never exceeds `bits/16`.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let max_k = (n.bits() / 16) as u32;
    for &k in small_primes().iter().take_while(|&&k| k <= max_k) {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

fn split_into(n: BigUint, mult: u32, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push((n, mult));
        return;
    }
    if let Some((root, k)) = perfect_power(&n) {
        split_into(root, mult * k, out);
        return;
    }
    let mut c = 1;
    let divisor = loop {
        if let Some(g) = brent_rho(&n, c) {
            break g;
        }
        c += 1;
    };
    let other = &n / &divisor;
    split_into(divisor, mult, out);
    split_into(other, mult, out);
}

/// Prime factorization of a positive integer as ascending `(prime, exponent)`
/// pairs. The factorization of 1 is empty.
///
/// # Panics
///
/// Panics on zero.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
    }
    let mut large = Vec::new();
    split_into(rest, 1, &mut large);
    large.sort();
    for (p, e) in large {
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => out.push((p, e)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn small_primality() {
        let primes: Vec<u64> = (0..200).filter(|&n| is_prime(&BigUint::from(n))).collect();
        assert_eq!(&primes[..10], &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes.len(), 46);
    }

    #[test]
    fn pseudoprimes_are_rejected() {
        // Carmichael numbers and strong pseudoprimes to base 2.
        for n in [
            561u64,
            1105,
            2047,
            3277,
            4033,
            4681,
            8321,
            3215031751,
            3825123056546413051,
        ] {
            assert!(!is_prime(&BigUint::from(n)), "{n}");
        }
    }

    #[test]
    fn large_primes() {
        assert!(is_prime(&big("18446744073709551557")));
        assert!(is_prime(&big("170141183460469231731687303715884105727")));
        assert!(is_prime(&big("49789008475889939")));
        assert!(!is_prime(&big("170141183460469231731687303715884105729")));
    }

    #[test]
    fn factor_table_numbers() {
        let n = BigUint::from(2u32).pow(44) * BigUint::from(121u32);
        assert_eq!(
            factorize(&n),
            vec![(BigUint::from(2u32), 44), (BigUint::from(11u32), 2)]
        );
        let m = big("49789008475889939") * big("11740987");
        assert_eq!(
            factorize(&m),
            vec![(big("11740987"), 1), (big("49789008475889939"), 1)]
        );
    }

    #[test]
    fn factor_semiprime_and_power() {
        let p = big("4294967311");
        let q = big("4294967357");
        assert_eq!(factorize(&(&p * &q)), vec![(p.clone(), 1), (q.clone(), 1)]);
        assert_eq!(factorize(&p.pow(3)), vec![(p, 3)]);
        assert!(factorize(&BigUint::one()).is_empty());
    }
}
