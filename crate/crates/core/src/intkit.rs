//! Exact integer foundations: factorization, the Kronecker symbol and
//! periodic continued fractions of quadratic irrationals.
//!
//! Everything here works on `i64`/`i128` with checked arithmetic; an
//! overflow surfaces as [`Error::Overflow`] instead of wrapping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this bound trial division hands off to Pollard rho.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000_000_000;

/// Witnesses making Miller-Rabin deterministic for every `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: i64,
    pub sign: i8,
    /// `(prime, exponent)` with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Recombines `sign * prod p^e`, checking for overflow.
    pub fn recombine(&self) -> Result<i64> {
        let mut acc: i64 = self.sign as i64;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc
                    .checked_mul(i64::try_from(p).map_err(|_| Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(acc)
    }
}

/// Factors a nonzero integer into sign and ascending prime powers.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("cannot factor 0"));
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut primes = Vec::new();

    for p in [2u64, 3, 5] {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
    }
    // wheel over residues coprime to 30
    const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p <= TRIAL_DIVISION_LIMIT.min(m) && p.saturating_mul(p) <= m {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
        p += WHEEL[i];
        i = (i + 1) % WHEEL.len();
    }
    if m > 1 {
        split_large(m, &mut primes);
    }

    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization {
        value: n,
        sign,
        factors,
    })
}

fn split_large(m: u64, out: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        out.push(m);
        return;
    }
    let d = pollard_rho(m);
    split_large(d, out);
    split_large(m / d, out);
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    // Brent's variant with a deterministic sequence of constants.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho exhausts constants only for primes")
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic Miller-Rabin primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_WITNESSES {
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

/// Kronecker symbol `(a / n)`, extending Jacobi to every integer `n`.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut k: i8 = 1;
    let v = n.trailing_zeros();
    n >>= v;
    if v % 2 == 1 && (a & 7 == 3 || a & 7 == 5) {
        k = -k;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // n odd positive: Jacobi symbol
    a = a.rem_euclid(n);
    while a != 0 {
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && (n & 7 == 3 || n & 7 == 5) {
            k = -k;
        }
        if a & 3 == 3 && n & 3 == 3 {
            k = -k;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Floor of the square root.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n as u128);
        r * r == n as u128
    }
}

/// The quadratic irrational `(p + sqrt(d)) / q` with its continued fraction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicCf {
    pub p: i128,
    pub q: i128,
    pub d: i128,
    pub preperiod: Vec<i128>,
    pub period: Vec<i128>,
}

impl PeriodicCf {
    /// Partial quotient `a_i` of the infinite expansion.
    pub fn term(&self, i: usize) -> i128 {
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Convergents `p_i / q_i` for `i = 0..count`.
    pub fn convergents(&self, count: usize) -> Result<Vec<(i128, i128)>> {
        let mut out = Vec::with_capacity(count);
        let (mut p_prev, mut p) = (0i128, 1i128);
        let (mut q_prev, mut q) = (1i128, 0i128);
        for i in 0..count {
            let a = self.term(i);
            let p_next = checked_mul_add(a, p, p_prev)?;
            let q_next = checked_mul_add(a, q, q_prev)?;
            (p_prev, p) = (p, p_next);
            (q_prev, q) = (q, q_next);
            out.push((p, q));
        }
        Ok(out)
    }
}

fn checked_mul_add(a: i128, x: i128, y: i128) -> Result<i128> {
    a.checked_mul(x)
        .and_then(|ax| ax.checked_add(y))
        .ok_or(Error::Overflow)
}

/// Expands `(p + sqrt(d)) / q` into its eventually periodic continued fraction.
///
/// The state `(P, Q)` is normalized so that `Q | d - P^2`; the period closes
/// at the first repeated state.
pub fn cf_expand(p: i128, q: i128, d: i128) -> Result<PeriodicCf> {
    if d <= 0 || is_square(d) {
        return Err(Error::invalid(format!(
            "d = {d} must be a positive non-square"
        )));
    }
    if q == 0 {
        return Err(Error::invalid("denominator q must be nonzero"));
    }
    let (mut sp, mut sq, mut sd) = (p, q, d);
    let rem = d.checked_sub(p.checked_mul(p).ok_or(Error::Overflow)?);
    if rem.ok_or(Error::Overflow)? % q != 0 {
        let aq = q.abs();
        sp = p.checked_mul(aq).ok_or(Error::Overflow)?;
        sq = q.checked_mul(aq).ok_or(Error::Overflow)?;
        sd = d
            .checked_mul(q.checked_mul(q).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
    }
    let root = isqrt(sd as u128) as i128;

    let mut seen: Vec<(i128, i128)> = Vec::new();
    let mut terms: Vec<i128> = Vec::new();
    loop {
        if let Some(start) = seen.iter().position(|&s| s == (sp, sq)) {
            let period = terms.split_off(start);
            return Ok(PeriodicCf {
                p,
                q,
                d,
                preperiod: terms,
                period,
            });
        }
        seen.push((sp, sq));
        let a = if sq > 0 {
            (sp + root).div_euclid(sq)
        } else {
            (-sp - root - 1).div_euclid(-sq)
        };
        terms.push(a);
        let next_p = a.checked_mul(sq).ok_or(Error::Overflow)? - sp;
        let next_q = (sd - next_p.checked_mul(next_p).ok_or(Error::Overflow)?) / sq;
        (sp, sq) = (next_p, next_q);
    }
}
