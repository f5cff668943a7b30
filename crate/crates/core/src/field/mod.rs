//! Exact arithmetic in F_{p^n}.
//!
//! Elements are integer codes `0..q`: the base-p digits of a code are the
//! coefficients (low to high) of its polynomial-basis representative, so
//! addition is digit-wise and, for p = 2, a plain XOR. Multiplication goes
//! through log/exp tables over a fixed primitive element; the tables are
//! built on first use and the field is immutable afterwards.

mod embed;
pub(crate) mod poly;

pub use embed::Embedding;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Canonical element code in `0..q`.
pub type Elem = u32;

/// Default limit on the field order (and thus on every table length).
pub const DEFAULT_TABLE_CAP: usize = 1 << 22;

pub struct FieldSpec {
    p: u32,
    n: u32,
    q: usize,
    modulus: Vec<u32>,
    /// Modulus as a bit pattern, only meaningful for p = 2.
    modulus_bits: u64,
    tables: OnceLock<Tables>,
}

struct Tables {
    generator: Elem,
    /// exp[i] = g^i for i in 0..2(q-1), doubled so that log sums need no reduction.
    exp: Vec<Elem>,
    log: Vec<u32>,
    /// Tr(x) = parity(x & trace_mask) when p = 2.
    trace_mask: u32,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self)
    }
}

/// The single-line field record `p n c_0 c_1 ... c_n`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.p, self.n)?;
        for c in &self.modulus {
            write!(f, " {}", c)?;
        }
        Ok(())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl FieldSpec {
    /// Builds F_{p^n} under the default table cap. Without a modulus the
    /// smallest irreducible monic polynomial of degree n is used.
    pub fn new(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_cap(p, n, modulus, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(p: u32, n: u32, modulus: Option<&[u32]>, cap: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(n)
            .filter(|&q| q <= cap as u64 && q <= u32::MAX as u64)
            .ok_or(Error::CapExceeded { p, n, cap })? as usize;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if let Some(c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::BadModulus(format!("coefficient {} is not below p = {}", c, p)));
                }
                if !poly::is_irreducible(m, p) {
                    return Err(Error::Reducible(format!("{:?}", m)));
                }
                m.to_vec()
            }
            None => poly::smallest_irreducible(p, n),
        };
        let modulus_bits = if p == 2 {
            modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i))
        } else {
            0
        };
        Ok(FieldSpec {
            p,
            n,
            q,
            modulus,
            modulus_bits,
            tables: OnceLock::new(),
        })
    }

    pub fn build(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Arc<Self>> {
        Self::new(p, n, modulus).map(Arc::new)
    }

    /// F_{2^n} with the default modulus.
    pub fn binary(n: u32) -> Result<Arc<Self>> {
        Self::build(2, n, None)
    }

    /// Parses the field record written by `Display`.
    pub fn parse_record(line: &str) -> Result<Arc<Self>> {
        Self::parse_record_with_cap(line, DEFAULT_TABLE_CAP)
    }

    pub fn parse_record_with_cap(line: &str, cap: usize) -> Result<Arc<Self>> {
        let nums: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad field record token `{}`", t))))
            .collect::<Result<_>>()?;
        if nums.len() < 2 {
            return Err(Error::Parse("field record needs `p n c_0 ... c_n`".into()));
        }
        let (p, n) = (nums[0], nums[1]);
        if nums.len() != n as usize + 3 {
            return Err(Error::Parse(format!(
                "field record for n = {} needs {} modulus coefficients, got {}",
                n,
                n + 1,
                nums.len() - 2
            )));
        }
        Self::with_cap(p, n, Some(&nums[2..]), cap).map(Arc::new)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Modulus coefficients c_0..c_n, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_binary(&self) -> bool {
        self.p == 2
    }

    pub fn check_elem(&self, x: u64) -> Result<Elem> {
        if (x as usize) < self.q && x <= u32::MAX as u64 {
            Ok(x as Elem)
        } else {
            Err(Error::ElementOutOfRange { code: x, q: self.q })
        }
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| self.build_tables())
    }

    /// The fixed primitive element: the smallest code of multiplicative order q - 1.
    pub fn generator(&self) -> Elem {
        self.tables().generator
    }

    /// Discrete log base `generator()`; panics on zero.
    pub fn log(&self, x: Elem) -> u32 {
        assert!(x != 0, "log of zero");
        self.tables().log[x as usize]
    }

    pub fn exp(&self, i: u64) -> Elem {
        let t = self.tables();
        t.exp[(i % (self.q as u64 - 1)) as usize]
    }

    // ---- arithmetic ------------------------------------------------------

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let (mut r, mut place) = (0u32, 1u32);
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        r
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let (mut r, mut place) = (0u32, 1u32);
        while a > 0 {
            r += ((p - a % p) % p) * place;
            place = place.wrapping_mul(p);
            a /= p;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        let t = self.tables();
        let l = t.log[a as usize] as usize;
        Ok(t.exp[(self.q - 1 - l) % (self.q - 1)])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// x^e with 0^0 = 1.
    #[inline]
    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let t = self.tables();
        let order = self.q as u64 - 1;
        let idx = (t.log[x as usize] as u64 * (e % order)) % order;
        t.exp[idx as usize]
    }

    /// x^e for a signed exponent; negative powers of zero give zero.
    pub fn pow_signed(&self, x: Elem, e: i64) -> Elem {
        if e >= 0 {
            return self.pow(x, e as u64);
        }
        if x == 0 {
            return 0;
        }
        let order = self.q as i64 - 1;
        self.pow(x, e.rem_euclid(order) as u64)
    }

    /// x^(p^k).
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        if x == 0 {
            return 0;
        }
        let order = self.q as u64 - 1;
        let mut e = 1u64 % order;
        for _ in 0..k {
            e = e * self.p as u64 % order;
        }
        self.pow(x, e)
    }

    /// Tr_{p^n / p^t}(x) = sum over k < n/t of x^((p^t)^k).
    pub fn trace_relative(&self, x: Elem, t: u32) -> Result<Elem> {
        if t == 0 || !self.n.is_multiple_of(t) {
            return Err(Error::NotDivisor { what: "relative trace", t: t as u64, n: self.n as u64 });
        }
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n / t {
            acc = self.add(acc, y);
            y = self.frobenius(y, t);
        }
        Ok(acc)
    }

    /// Absolute trace into F_p; the result is a code below p.
    #[inline]
    pub fn trace(&self, x: Elem) -> Elem {
        if self.p == 2 {
            return (x & self.tables().trace_mask).count_ones() & 1;
        }
        self.trace_relative(x, 1).expect("1 divides n")
    }

    /// Bit mask with Tr(x) = parity(x & mask) on binary fields.
    pub fn trace_mask(&self) -> Result<u32> {
        if self.p != 2 {
            return Err(Error::Unsupported("trace mask is defined for p = 2 only".into()));
        }
        Ok(self.tables().trace_mask)
    }

    pub fn is_cube(&self, x: Elem) -> bool {
        if x == 0 {
            return true;
        }
        let order = self.q as u64 - 1;
        if !order.is_multiple_of(3) {
            return true;
        }
        self.pow(x, order / 3) == 1
    }

    pub fn in_subfield(&self, x: Elem, m: u32) -> bool {
        self.frobenius(x, m) == x
    }

    /// The subfield of order p^m as a sorted list of codes.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Elem>> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotDivisor { what: "subfield degree", t: m as u64, n: self.n as u64 });
        }
        let order = self.q as u64 - 1;
        let sub_order = (self.p as u64).pow(m) - 1;
        let step = order / sub_order;
        let mut out: Vec<Elem> = std::iter::once(0)
            .chain((0..sub_order).map(|i| self.exp(i * step)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Dual basis of (u1, u2) for F_{p^(2m)} over F_{p^m} with respect to the
    /// relative trace: Tr(u_i v_j) = [i = j].
    pub fn dual_basis(&self, u1: Elem, u2: Elem, m: u32) -> Result<(Elem, Elem)> {
        if 2 * m != self.n {
            return Err(Error::Unsupported(format!(
                "dual basis over the half field needs n = 2m, got n = {}, m = {}",
                self.n, m
            )));
        }
        let c1 = self.frobenius(u1, m);
        let c2 = self.frobenius(u2, m);
        let delta = self.sub(self.mul(u1, c2), self.mul(c1, u2));
        if delta == 0 {
            return Err(Error::NotBasis { u1, u2 });
        }
        let v1 = self.div(c2, delta)?;
        let v2 = self.neg(self.div(c1, delta)?);
        Ok((v1, v2))
    }

    // ---- table construction ---------------------------------------------

    /// Schoolbook product reduced by the modulus; used only to build tables.
    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            let (a, b) = (a as u64, b as u64);
            let mut prod = 0u64;
            for i in 0..self.n {
                if (b >> i) & 1 == 1 {
                    prod ^= a << i;
                }
            }
            let n = self.n;
            for bit in (n..2 * n).rev() {
                if (prod >> bit) & 1 == 1 {
                    prod ^= self.modulus_bits << (bit - n);
                }
            }
            return prod as Elem;
        }
        let len = self.n as usize;
        let da = poly::digits(a as u64, self.p, len);
        let db = poly::digits(b as u64, self.p, len);
        let r = poly::rem(&poly::mul(&da, &db, self.p), &self.modulus, self.p);
        poly::from_digits(&r, self.p) as Elem
    }

    fn slow_pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut result = 1;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let generator = (1..q as Elem)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("a primitive element exists");
        let mut exp = vec![0 as Elem; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut cur: Elem = 1;
        for (i, e) in exp[..q - 1].iter_mut().enumerate() {
            *e = cur;
            log[cur as usize] = i as u32;
            cur = self.slow_mul(cur, generator);
        }
        debug_assert_eq!(cur, 1);
        for i in 0..q - 1 {
            exp[q - 1 + i] = exp[i];
        }
        let mut trace_mask = 0u32;
        if self.p == 2 {
            for i in 0..self.n {
                let b: Elem = 1 << i;
                let mut acc = 0;
                let mut y = b;
                for _ in 0..self.n {
                    acc ^= y;
                    y = self.slow_mul(y, y);
                }
                debug_assert!(acc <= 1);
                trace_mask |= acc << i;
            }
        }
        Tables { generator, exp, log, trace_mask }
    }
}
