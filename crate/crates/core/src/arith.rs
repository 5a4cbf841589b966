//! Elementary number theory on machine integers.

use std::collections::HashMap;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin; the first twelve prime bases suffice below 2^64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
        let mut ys = 2u64;
        let mut r = 1u64;
        const M: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..M.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Prime factorisation as `(p, e)` pairs with increasing `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn of(n: u64) -> Self {
        assert!(n >= 1, "cannot factor 0");
        let mut primes = Vec::new();
        let mut m = n;
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            while m.is_multiple_of(p) {
                primes.push(p);
                m /= p;
            }
        }
        let mut stack = vec![m];
        while let Some(k) = stack.pop() {
            if k == 1 {
                continue;
            }
            if is_prime(k) {
                primes.push(k);
                continue;
            }
            let d = pollard_brent(k);
            stack.push(d);
            stack.push(k / d);
        }
        primes.sort_unstable();
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

pub fn euler_phi(n: u64) -> u64 {
    Factorization::of(n).euler_phi()
}

pub fn mobius(n: u64) -> i8 {
    let f = Factorization::of(n);
    if !f.is_squarefree() {
        0
    } else if f.factors().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorted list of the positive divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    let f = Factorization::of(n);
    let mut out = vec![1u64];
    for &(p, e) in f.factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Smallest-prime-factor table for fast factorisation of small integers.
#[derive(Clone, Debug)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn smallest_prime_factor(&self, n: usize) -> u64 {
        self.spf[n] as u64
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && self.spf[n] as usize == n
    }

    /// `(p, e)` pairs of `n`, with increasing `p`.
    pub fn factor(&self, mut n: usize) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p as u64, e));
        }
        out
    }

    pub fn mobius(&self, n: usize) -> i8 {
        let f = self.factor(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Mobius values `mu(0..=n)` (index 0 unused).
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    if n >= 1 {
        mu[0] = 0;
    }
    let mut is_comp = vec![false; n + 1];
    for p in 2..=n {
        if is_comp[p] {
            continue;
        }
        let mut j = p;
        while j <= n {
            if j > p {
                is_comp[j] = true;
            }
            mu[j] = -mu[j];
            j += p;
        }
        let pp = p.saturating_mul(p);
        let mut j = pp;
        while j <= n {
            mu[j] = 0;
            j += pp;
        }
    }
    mu
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Discrete logarithm of `x` to base `g` modulo `m`, where `g` has order
/// `order` with the given factorisation. Returns `None` if `x` is not a power of `g`.
pub fn discrete_log(g: u64, x: u64, m: u64, order: u64, order_factors: &[(u64, u32)]) -> Option<u64> {
    let mut residues = Vec::with_capacity(order_factors.len());
    for &(r, f) in order_factors {
        let rf = r.pow(f);
        let cof = order / rf;
        let gi = pow_mod(g, cof, m);
        let xi = pow_mod(x, cof, m);
        let gamma = pow_mod(gi, rf / r, m);
        let gi_inv = inv_mod(gi, m)?;
        let mut k = 0u64;
        let mut rj = 1u64;
        for j in 0..f {
            let h = mul_mod(pow_mod(gi_inv, k, m), xi, m);
            let h = pow_mod(h, r.pow(f - 1 - j), m);
            let d = bsgs(gamma, h, m, r)?;
            k += d * rj;
            rj *= r;
        }
        residues.push((k, rf));
    }
    let mut acc = 0u64;
    let mut modulus = 1u64;
    for (k, rf) in residues {
        // acc + modulus * t == k (mod rf)
        let inv = inv_mod(modulus % rf, rf)?;
        let diff = (k + rf - acc % rf) % rf;
        let t = mul_mod(diff, inv, rf);
        acc += modulus * t;
        modulus *= rf;
    }
    Some(acc % order.max(1))
}

/// Baby-step giant-step for `g^k = h (mod m)` with `0 <= k < n`.
fn bsgs(g: u64, h: u64, m: u64, n: u64) -> Option<u64> {
    let step = (n as f64).sqrt().ceil() as u64 + 1;
    let mut table = HashMap::with_capacity(step as usize);
    let mut e = 1u64 % m;
    for j in 0..step {
        table.entry(e).or_insert(j);
        e = mul_mod(e, g, m);
    }
    let factor = inv_mod(pow_mod(g, step, m), m)?;
    let mut gamma = h % m;
    for i in 0..=step {
        if let Some(&j) = table.get(&gamma) {
            let k = i * step + j;
            if k < n.max(1) {
                return Some(k);
            }
        }
        gamma = mul_mod(gamma, factor, m);
    }
    None
}
