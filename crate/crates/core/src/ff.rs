//! Finite fields GF(p^r) over native integers.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of the polynomial representative (constant term in the least
//! significant digit). The integer order is therefore the canonical element
//! order used throughout the crate: "smallest primitive element" and
//! "smallest irreducible polynomial" both refer to it.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, is_prime, mul_mod, prime_factors};
use crate::error::{Error, Result};

/// Fields up to this order get a full exponent/logarithm table; larger ones
/// fall back to baby-step giant-step.
pub const LOG_TABLE_LIMIT: u64 = 1 << 20;

/// An element of some [`FieldCtx`], in the integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElem(pub u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
enum LogStrategy {
    Table {
        exp: Vec<u64>,
        log: Vec<u64>,
    },
    BabyGiant {
        step: u64,
        baby: HashMap<u64, u64>,
        giant: FieldElem,
    },
}

/// A concrete finite field GF(p^r) with a fixed modulus polynomial and a
/// fixed generator of its multiplicative group.
///
/// Immutable once built; every table is populated in [`FieldCtx::new`].
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    degree: u32,
    order: u64,
    /// Monic, constant term first, `degree + 1` entries.
    modulus: Vec<u64>,
    primitive: FieldElem,
    group_factors: Vec<u64>,
    logs: LogStrategy,
}

impl FieldCtx {
    /// GF(p^r) with the smallest monic irreducible modulus of degree `r` and
    /// the smallest primitive element.
    pub fn new(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::DegreeZero);
        }
        let order = p
            .checked_pow(degree)
            .filter(|&q| q <= 1 << 32)
            .ok_or(Error::OrderOverflow { p, degree })?;
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, degree as usize)
        };
        let mut ctx = FieldCtx {
            p,
            degree,
            order,
            modulus,
            primitive: FieldElem::ONE,
            group_factors: prime_factors(order - 1),
            logs: LogStrategy::Table {
                exp: Vec::new(),
                log: Vec::new(),
            },
        };
        ctx.primitive = (1..order)
            .map(FieldElem)
            .find(|&x| ctx.has_full_order(x))
            .expect("multiplicative group of a finite field is cyclic");
        ctx.logs = ctx.build_logs();
        Ok(ctx)
    }

    /// GF(p^r) for the prime power `q = p^r`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, r) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, r)
    }

    /// The quadratic extension GF(q^2) of GF(q).
    pub fn quadratic_extension(q: u64) -> Result<Self> {
        let (p, r) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, 2 * r)
    }

    fn build_logs(&self) -> LogStrategy {
        let n = self.order - 1;
        if self.order <= LOG_TABLE_LIMIT {
            let mut exp = Vec::with_capacity(n as usize);
            let mut log = vec![u64::MAX; self.order as usize];
            let mut x = FieldElem::ONE;
            for k in 0..n {
                exp.push(x.0);
                log[x.0 as usize] = k;
                x = self.mul(x, self.primitive);
            }
            LogStrategy::Table { exp, log }
        } else {
            let step = (n as f64).sqrt().ceil() as u64;
            let mut baby = HashMap::with_capacity(step as usize);
            let mut x = FieldElem::ONE;
            for j in 0..step {
                baby.entry(x.0).or_insert(j);
                x = self.mul(x, self.primitive);
            }
            // x == g^step here
            let giant = self.inv(x).expect("g^step is nonzero");
            LogStrategy::BabyGiant { step, baby, giant }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of elements, `q = p^r`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus polynomial, constant term first.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> FieldElem {
        self.primitive
    }

    pub fn has_log_table(&self) -> bool {
        matches!(self.logs, LogStrategy::Table { .. })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Checked conversion from the integer encoding.
    pub fn elem(&self, value: u64) -> Result<FieldElem> {
        if value < self.order {
            Ok(FieldElem(value))
        } else {
            Err(Error::NotAnElement {
                value,
                order: self.order,
            })
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::NotAnElement {
                value: u64::MAX,
                order: self.order,
            });
        }
        let mut v = 0;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::NotAnElement {
                    value: c,
                    order: self.order,
                });
            }
            v = v * self.p + c;
        }
        Ok(FieldElem(v))
    }

    /// Coefficient vector of length `r`, constant term first.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        let mut v = x.0;
        (0..self.degree)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return FieldElem((a.0 + b.0) % self.p);
        }
        self.digitwise(a, b, |x, y, p| (x + y) % p)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.degree == 1 {
            return FieldElem((a.0 + self.p - b.0) % self.p);
        }
        self.digitwise(a, b, |x, y, p| (x + p - y) % p)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.sub(FieldElem::ZERO, a)
    }

    fn digitwise(
        &self,
        a: FieldElem,
        b: FieldElem,
        op: impl Fn(u64, u64, u64) -> u64,
    ) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += op(x % self.p, y % self.p, self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    /// Polynomial product reduced modulo the modulus polynomial.
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.p;
        if self.degree == 1 {
            return FieldElem(mul_mod(a.0, b.0, p));
        }
        let r = self.degree as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        for d in (r..2 * r - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // x^d = x^(d-r) * x^r and x^r = -(lower terms of the modulus)
            for k in 0..r {
                let t = mul_mod(c, self.modulus[k], p);
                prod[d - r + k] = (prod[d - r + k] + p - t) % p;
            }
            prod[d] = 0;
        }
        let mut v = 0;
        for &c in prod[..r].iter().rev() {
            v = v * p + c;
        }
        FieldElem(v)
    }

    pub fn pow(&self, mut base: FieldElem, mut exp: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn has_full_order(&self, x: FieldElem) -> bool {
        !x.is_zero()
            && self
                .group_factors
                .iter()
                .all(|&f| self.pow(x, (self.order - 1) / f) != FieldElem::ONE)
    }

    /// Smallest `k ≥ 1` with `x^k = 1`.
    pub fn element_order(&self, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut order = self.order - 1;
        for &f in &self.group_factors {
            while order.is_multiple_of(f) && self.pow(x, order / f) == FieldElem::ONE {
                order /= f;
            }
        }
        Ok(order)
    }

    pub fn is_primitive(&self, x: FieldElem) -> bool {
        x.0 < self.order && self.has_full_order(x)
    }

    /// Every generator of the multiplicative group, in canonical order.
    pub fn primitive_elements(&self) -> Vec<FieldElem> {
        let n = self.order - 1;
        if n == 1 {
            return vec![FieldElem::ONE];
        }
        let mut out: Vec<FieldElem> = (1..n)
            .filter(|&k| num_integer::gcd(k, n) == 1)
            .map(|k| self.exp_primitive(k))
            .collect();
        out.sort_unstable();
        out
    }

    /// Logarithm of `x` to the context's own generator.
    fn log_primitive(&self, x: FieldElem) -> u64 {
        match &self.logs {
            LogStrategy::Table { log, .. } => log[x.0 as usize],
            LogStrategy::BabyGiant { step, baby, giant } => {
                let mut y = x;
                for i in 0..*step {
                    if let Some(&j) = baby.get(&y.0) {
                        return (i * step + j) % (self.order - 1);
                    }
                    y = self.mul(y, *giant);
                }
                unreachable!("every nonzero element is a power of the generator")
            }
        }
    }

    /// `theta^k` for the context's generator, using the table when present.
    pub fn exp_primitive(&self, k: u64) -> FieldElem {
        match &self.logs {
            LogStrategy::Table { exp, .. } => FieldElem(exp[(k % (self.order - 1)) as usize]),
            LogStrategy::BabyGiant { .. } => self.pow(self.primitive, k),
        }
    }

    /// The unique `e ∈ [0, q−2]` with `theta^e = x`.
    pub fn discrete_log(&self, theta: FieldElem, x: FieldElem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        self.elem(x.0)?;
        if theta.is_zero() || theta.0 >= self.order {
            return Err(Error::NotPrimitive(theta.0));
        }
        let n = self.order - 1;
        if n == 1 {
            return Ok(0);
        }
        let lt = self.log_primitive(theta);
        let lt_inv = inv_mod(lt, n).ok_or(Error::NotPrimitive(theta.0))?;
        Ok(mul_mod(self.log_primitive(x), lt_inv, n))
    }

    /// Evaluates a polynomial (constant term first, coefficients in GF(p)) at `x`.
    pub fn eval_prime_poly(&self, poly: &[u64], x: FieldElem) -> FieldElem {
        poly.iter().rev().fold(FieldElem::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), FieldElem(c % self.p))
        })
    }

    /// Elements fixed by `x ↦ x^s`. For `s` a power of `p` dividing the
    /// field appropriately this is the subfield of order `s`.
    pub fn fixed_by_power(&self, s: u64) -> Vec<FieldElem> {
        self.elements().filter(|&x| self.pow(x, s) == x).collect()
    }

    /// Embeds the field `sub` into `self` by sending the generator `x` of
    /// `sub`'s polynomial basis to the smallest root of `sub`'s modulus.
    pub fn embedding(&self, sub: &FieldCtx) -> Result<Embedding> {
        if sub.p != self.p || !self.degree.is_multiple_of(sub.degree) {
            return Err(Error::NotASubfield {
                sub: sub.order,
                field: self.order,
            });
        }
        let root = self
            .elements()
            .find(|&x| self.eval_prime_poly(&sub.modulus, x).is_zero())
            .ok_or_else(|| Error::InvariantViolation("subfield modulus has no root".into()))?;
        let mut image = Vec::with_capacity(sub.order as usize);
        for a in sub.elements() {
            let y = sub.coeffs(a).iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                self.add(self.mul(acc, root), FieldElem(c))
            });
            image.push(y);
        }
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, y)| (*y, FieldElem(i as u64)))
            .collect();
        Ok(Embedding { image, preimage })
    }
}

/// A field homomorphism GF(p^s) → GF(p^r), `s | r`.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<FieldElem>,
    preimage: HashMap<FieldElem, FieldElem>,
}

impl Embedding {
    pub fn embed(&self, x: FieldElem) -> FieldElem {
        self.image[x.0 as usize]
    }

    /// The preimage of `y`, if `y` lies in the image.
    pub fn restrict(&self, y: FieldElem) -> Option<FieldElem> {
        self.preimage.get(&y).copied()
    }

    /// The image set, in the order of the subfield's canonical elements.
    pub fn image(&self) -> &[FieldElem] {
        &self.image
    }
}

fn smallest_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let count = p.pow(degree as u32);
    for tail in 0..count {
        let mut poly = digits(tail, p, degree);
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

/// Irreducibility of a monic polynomial by trial division against every
/// monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for tail in 0..p.pow(d as u32) {
            let mut divisor = digits(tail, p, d);
            divisor.push(1);
            if rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn rem_is_zero(poly: &[u64], divisor: &[u64], p: u64) -> bool {
    let d = divisor.len() - 1;
    let mut rem = poly.to_vec();
    for i in (d..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        for (k, &dk) in divisor.iter().enumerate() {
            let t = mul_mod(c, dk, p);
            rem[i - d + k] = (rem[i - d + k] + p - t) % p;
        }
    }
    rem[..d].iter().all(|&c| c == 0)
}

/// Human-readable form of a polynomial given constant term first, e.g. `x^4 + x + 2`.
pub fn format_poly(poly: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in poly.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match i {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
