//! Dirichlet characters.
//!
//! A character modulo `q` is stored as one exponent per cyclic factor of
//! `(Z/qZ)^*`: the factor generated by a primitive root for each odd prime
//! power, and the factors generated by `-1` and `5` for the power of two.
//! Values are exact roots of unity `e(num/den)`.

use std::fmt;
use std::sync::Arc;

use crate::arith::{discrete_log, gcd, inv_mod, lcm, pow_mod, valuation, Factorization};
use crate::error::{Error, Result};

/// Default limit on the number of characters `enumerate_characters` will build.
pub const DEFAULT_CHARACTER_CAP: u64 = 1 << 20;

/// A character value: either zero or the root of unity `e(num/den)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub const ONE: CharValue = CharValue::Root { num: 0, den: 1 };

    /// The root `e(num/den)` in lowest terms.
    pub fn root(num: u64, den: u64) -> Self {
        assert!(den > 0);
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            return CharValue::ONE;
        }
        CharValue::Root {
            num: num / g,
            den: den / g,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn mul(self, other: CharValue) -> CharValue {
        match (self, other) {
            (CharValue::Root { num: a, den: b }, CharValue::Root { num: c, den: d }) => {
                let den = lcm(b, d);
                let n = (a as u128 * (den / b) as u128 + c as u128 * (den / d) as u128) % den as u128;
                CharValue::root(n as u64, den)
            }
            _ => CharValue::Zero,
        }
    }

    pub fn pow(self, k: u64) -> CharValue {
        match self {
            CharValue::Zero if k == 0 => CharValue::ONE,
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => {
                CharValue::root(((num as u128 * k as u128) % den as u128) as u64, den)
            }
        }
    }

    pub fn conj(self) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => CharValue::root(den - num, den),
        }
    }

    /// The value as an integer when it is real (0, 1 or -1).
    pub fn as_real(&self) -> Option<i8> {
        match self {
            CharValue::Zero => Some(0),
            CharValue::Root { den: 1, .. } => Some(1),
            CharValue::Root { den: 2, .. } => Some(-1),
            _ => None,
        }
    }

    /// Floating-point approximation, for display and non-rigorous use.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            CharValue::Zero => (0.0, 0.0),
            CharValue::Root { num, den } => {
                let t = std::f64::consts::TAU * (*num as f64) / (*den as f64);
                (t.cos(), t.sin())
            }
        }
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharValue::Zero => f.write_str("0"),
            CharValue::Root { den: 1, .. } => f.write_str("1"),
            CharValue::Root { den: 2, .. } => f.write_str("-1"),
            CharValue::Root { num, den } => write!(f, "e({num}/{den})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FactorKind {
    Odd,
    MinusOne,
    Five,
}

#[derive(Clone, Debug)]
struct CyclicFactor {
    kind: FactorKind,
    prime: u64,
    exponent: u32,
    prime_power: u64,
    generator: u64,
    order: u64,
    order_factors: Vec<(u64, u32)>,
    /// The generator lifted to a residue mod q that is 1 on the other components.
    lifted: u64,
}

/// The unit group `(Z/qZ)^*` as a product of cyclic factors.
#[derive(Debug)]
pub struct UnitGroup {
    modulus: u64,
    factorization: Factorization,
    factors: Vec<CyclicFactor>,
    phi: u64,
    exponent: u64,
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fac = Factorization::of(p - 1);
    (2..p)
        .find(|&g| fac.primes().all(|r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("odd primes have primitive roots")
}

fn crt_lift(residue: u64, prime_power: u64, modulus: u64) -> u64 {
    // x = residue mod prime_power, x = 1 mod (modulus / prime_power)
    let other = modulus / prime_power;
    if other == 1 {
        return residue % modulus;
    }
    let inv = inv_mod(other % prime_power, prime_power).expect("coprime components");
    // x = 1 + other * t with other * t = residue - 1 (mod prime_power)
    let diff = (residue % prime_power + prime_power - 1 % prime_power) % prime_power;
    let t = (diff as u128 * inv as u128 % prime_power as u128) as u64;
    ((1 + other as u128 * t as u128) % modulus as u128) as u64
}

impl UnitGroup {
    pub fn new(q: u64) -> Arc<UnitGroup> {
        assert!(q >= 1, "modulus must be positive");
        let factorization = Factorization::of(q);
        let mut factors = Vec::new();
        for &(p, e) in factorization.factors() {
            let pe = p.pow(e);
            if p == 2 {
                if e >= 2 {
                    factors.push(CyclicFactor {
                        kind: FactorKind::MinusOne,
                        prime: 2,
                        exponent: e,
                        prime_power: pe,
                        generator: pe - 1,
                        order: 2,
                        order_factors: vec![(2, 1)],
                        lifted: crt_lift(pe - 1, pe, q),
                    });
                }
                if e >= 3 {
                    factors.push(CyclicFactor {
                        kind: FactorKind::Five,
                        prime: 2,
                        exponent: e,
                        prime_power: pe,
                        generator: 5,
                        order: 1 << (e - 2),
                        order_factors: vec![(2, e - 2)],
                        lifted: crt_lift(5, pe, q),
                    });
                }
            } else {
                let mut g = primitive_root(p);
                if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
                    g += p;
                }
                let order = (p - 1) * p.pow(e - 1);
                factors.push(CyclicFactor {
                    kind: FactorKind::Odd,
                    prime: p,
                    exponent: e,
                    prime_power: pe,
                    generator: g,
                    order,
                    order_factors: Factorization::of(order).factors().to_vec(),
                    lifted: crt_lift(g, pe, q),
                });
            }
        }
        let phi = factorization.euler_phi();
        let exponent = factors.iter().map(|f| f.order).fold(1, lcm);
        Arc::new(UnitGroup {
            modulus: q,
            factorization,
            factors,
            phi,
            exponent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn order(&self) -> u64 {
        self.phi
    }

    /// Orders of the cyclic factors.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.order).collect()
    }

    /// Generators as residues modulo `q`.
    pub fn generators(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.lifted).collect()
    }

    /// Discrete logarithms of a unit on each cyclic factor.
    pub fn logs(&self, n: u64) -> Vec<u64> {
        self.factors.iter().map(|f| factor_log(f, n)).collect()
    }
}

fn factor_log(f: &CyclicFactor, n: u64) -> u64 {
    let x = n % f.prime_power;
    match f.kind {
        FactorKind::MinusOne => u64::from(x % 4 == 3),
        FactorKind::Five => {
            let y = if x % 4 == 1 { x } else { f.prime_power - x };
            discrete_log(5, y, f.prime_power, f.order, &f.order_factors)
                .expect("units = 1 mod 4 are powers of 5")
        }
        FactorKind::Odd => discrete_log(f.generator, x, f.prime_power, f.order, &f.order_factors)
            .expect("generator is a primitive root"),
    }
}

/// A Dirichlet character modulo `q`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    order: u64,
    conductor: u64,
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter(q={}, exps={:?}, order={}, conductor={})",
            self.modulus(),
            self.exponents,
            self.order,
            self.conductor
        )
    }
}

impl DirichletCharacter {
    /// The character sending the `i`-th generator to `e(exponents[i]/order_i)`.
    pub fn from_exponents(group: Arc<UnitGroup>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != group.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "modulus {} needs {} exponents, got {}",
                group.modulus,
                group.factors.len(),
                exponents.len()
            )));
        }
        let mut exponents = exponents;
        for (e, f) in exponents.iter_mut().zip(&group.factors) {
            *e %= f.order;
        }
        let order = group
            .factors
            .iter()
            .zip(&exponents)
            .map(|(f, &e)| f.order / gcd(f.order, e))
            .fold(1, lcm);
        let conductor = conductor_of(&group, &exponents);
        Ok(DirichletCharacter {
            group,
            exponents,
            order,
            conductor,
        })
    }

    pub fn principal(q: u64) -> Self {
        let group = UnitGroup::new(q);
        let n = group.factors.len();
        DirichletCharacter::from_exponents(group, vec![0; n]).expect("well-formed")
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// `chi(-1)`: `false` for even characters, `true` for odd ones.
    pub fn is_odd(&self) -> bool {
        self.modulus() > 2 && self.eval(-1) != CharValue::ONE
    }

    pub fn eval(&self, n: i64) -> CharValue {
        let q = self.modulus();
        let r = n.rem_euclid(q as i64) as u64;
        self.eval_residue(r)
    }

    pub fn eval_u64(&self, n: u64) -> CharValue {
        self.eval_residue(n % self.modulus())
    }

    fn eval_residue(&self, r: u64) -> CharValue {
        let q = self.modulus();
        if q == 1 {
            return CharValue::ONE;
        }
        if gcd(r, q) != 1 {
            return CharValue::Zero;
        }
        if self.order == 1 {
            return CharValue::ONE;
        }
        let den = self.group.exponent;
        let mut num: u128 = 0;
        for (f, &e) in self.group.factors.iter().zip(&self.exponents) {
            if e == 0 {
                continue;
            }
            let l = factor_log(f, r) as u128;
            num += (e as u128 * l % f.order as u128) * (den / f.order) as u128;
        }
        CharValue::root((num % den as u128) as u64, den)
    }

    /// Integer value of a real character.
    pub fn real_value(&self, n: i64) -> Option<i8> {
        self.eval(n).as_real()
    }

    /// Values at the residues `0..q`.
    pub fn value_table(&self) -> Vec<CharValue> {
        (0..self.modulus()).map(|r| self.eval_residue(r)).collect()
    }

    pub fn conj(&self) -> DirichletCharacter {
        let exps = self
            .group
            .factors
            .iter()
            .zip(&self.exponents)
            .map(|(f, &e)| (f.order - e) % f.order)
            .collect();
        DirichletCharacter::from_exponents(self.group.clone(), exps).expect("same group")
    }

    /// Pointwise product of two characters with the same modulus.
    pub fn product(&self, other: &DirichletCharacter) -> Result<DirichletCharacter> {
        if self.modulus() != other.modulus() {
            return Err(Error::ModulusMismatch(self.modulus(), other.modulus()));
        }
        let exps = self
            .group
            .factors
            .iter()
            .zip(self.exponents.iter().zip(&other.exponents))
            .map(|(f, (&a, &b))| (a + b) % f.order)
            .collect();
        DirichletCharacter::from_exponents(self.group.clone(), exps)
    }

    /// The primitive character modulo the conductor that induces this one.
    pub fn primitive(&self) -> DirichletCharacter {
        let f = self.conductor;
        let q = self.modulus();
        let target = UnitGroup::new(f);
        let mut exps = Vec::with_capacity(target.factors.len());
        for tf in &target.factors {
            let mut n = tf.lifted;
            while gcd(n, q) != 1 {
                n += f;
            }
            let e = match self.eval_u64(n) {
                CharValue::Root { num, den } => {
                    assert_eq!(tf.order % den, 0, "value order divides generator order");
                    num * (tf.order / den)
                }
                CharValue::Zero => unreachable!("n is a unit"),
            };
            exps.push(e);
        }
        DirichletCharacter::from_exponents(target, exps).expect("matching group")
    }

    /// Same character viewed modulo a multiple `m` of the modulus.
    pub fn lift_to(&self, m: u64) -> Result<DirichletCharacter> {
        let q = self.modulus();
        if !m.is_multiple_of(q) {
            return Err(Error::InvalidArgument(format!("{m} is not a multiple of {q}")));
        }
        let target = UnitGroup::new(m);
        let mut exps = Vec::with_capacity(target.factors.len());
        for tf in &target.factors {
            let e = match self.eval_u64(tf.lifted) {
                CharValue::Root { num, den } => num * (tf.order / den),
                CharValue::Zero => unreachable!("lifted generators are units mod q"),
            };
            exps.push(e);
        }
        DirichletCharacter::from_exponents(target, exps)
    }
}

fn conductor_of(group: &UnitGroup, exponents: &[u64]) -> u64 {
    let mut cond = 1u64;
    let mut two_a = 0u64;
    let mut two_b: Option<(u64, u32)> = None;
    for (f, &k) in group.factors.iter().zip(exponents) {
        match f.kind {
            FactorKind::Odd => {
                if k != 0 {
                    let v = valuation(k, f.prime).min(f.exponent - 1);
                    cond *= f.prime.pow(f.exponent - v);
                }
            }
            FactorKind::MinusOne => two_a = k,
            FactorKind::Five => two_b = Some((k, f.exponent)),
        }
    }
    match two_b {
        Some((b, e)) if b != 0 => cond *= 1 << (e - valuation(b, 2)),
        _ => {
            if two_a != 0 {
                cond *= 4;
            }
        }
    }
    cond
}

/// All characters modulo `q`, principal first, with the exponent of the first
/// cyclic factor varying fastest.
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    enumerate_characters_capped(q, DEFAULT_CHARACTER_CAP)
}

pub fn enumerate_characters_capped(q: u64, cap: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let group = UnitGroup::new(q);
    if group.phi > cap {
        return Err(Error::CapExceeded {
            what: "number of characters",
            count: group.phi,
            cap,
        });
    }
    let orders = group.factor_orders();
    let mut out = Vec::with_capacity(group.phi as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter::from_exponents(group.clone(), exps.clone())?);
        let mut i = 0;
        loop {
            if i == orders.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// The characters of order exactly 2 modulo `q`, in enumeration order.
pub fn real_quadratic_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let group = UnitGroup::new(q);
    let orders = group.factor_orders();
    let even: Vec<usize> = (0..orders.len()).filter(|&i| orders[i].is_multiple_of(2)).collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << even.len()) {
        let mut exps = vec![0u64; orders.len()];
        for (bit, &i) in even.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                exps[i] = orders[i] / 2;
            }
        }
        out.push(DirichletCharacter::from_exponents(group.clone(), exps)?);
    }
    Ok(out)
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return i8::from(a == 1 || a == -1);
    }
    let mut result: i8 = 1;
    let mut n = n;
    let mut a = a as i128;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut n = n as i128;
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 && (a.rem_euclid(8) == 3 || a.rem_euclid(8) == 5) {
            result = -result;
        }
        n >>= v;
    }
    // Jacobi symbol (a/n) with n odd and positive.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}
