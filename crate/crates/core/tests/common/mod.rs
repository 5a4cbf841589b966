//! Exact arithmetic in cyclotomic rings, shared by the integration tests.

#![allow(dead_code)]

/// Integer polynomial in `x`, lowest degree first.
pub type Poly = Vec<i64>;

pub fn poly_divrem(mut a: Poly, b: &Poly) -> (Poly, Poly) {
    let db = b.len() - 1;
    assert_eq!(*b.last().unwrap(), 1, "monic divisor");
    if a.len() <= db {
        return (vec![0], a);
    }
    let mut q = vec![0; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = a[i];
        if c != 0 {
            q[i - db] = c;
            for (j, bj) in b.iter().enumerate() {
                a[i - db + j] -= c * bj;
            }
        }
    }
    a.truncate(db.max(1));
    (q, a)
}

/// Cyclotomic polynomial by dividing `x^n - 1` by `Phi_d` for proper divisors.
pub fn cyclotomic(n: u64) -> Poly {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divrem(p, &cyclotomic(d));
            assert!(r.iter().all(|&c| c == 0));
            p = q;
        }
    }
    p
}

/// True when `sum_j hist[j] e(j/n)` vanishes.
pub fn vanishes_in_cyclotomic_ring(hist: Vec<i64>, n: u64) -> bool {
    let (_, r) = poly_divrem(hist, &cyclotomic(n));
    r.iter().all(|&c| c == 0)
}
