//! The classical modular sonar constructions: quadratic, shift, exponential
//! and logarithmic Welch, and Golomb (Lempel when α = β).

use crate::arith::{is_prime, is_primitive_root, pow_mod};
use crate::error::{Error, Result};
use crate::ff::{FieldCtx, FieldElem};
use crate::sequence::{SeqProvenance, SonarSeq};

/// `f_i = a i² + b i + c (mod p)` for `i = 1..=p+1`: a `p × (p+1)` sequence.
pub fn quadratic(p: u64, a: i64, b: i64, c: i64) -> Result<SonarSeq> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let pm = p as i128;
    if (a as i128).rem_euclid(pm) == 0 {
        return Err(Error::ANotInvertible { a, p });
    }
    let values = (1..=pm + 1)
        .map(|i| (a as i128 * i * i + b as i128 * i + c as i128).rem_euclid(pm) as u64)
        .collect();
    let prov = SeqProvenance::new("quadratic")
        .with("p", p)
        .with("a", a)
        .with("b", b)
        .with("c", c);
    Ok(SonarSeq::modular(p, values)?.with_provenance(prov))
}

/// Index of the window start for the shift construction: the trace
/// `α^{iq} + α^i` vanishes exactly when `α^{i(q−1)} = −1`, i.e. for
/// `i ≡ (q+1)/2 (mod q+1)` when `q` is odd and `i ≡ 0` when `q` is even.
/// The `q` indices following a zero are all defined.
pub fn shift_offset(q: u64) -> u64 {
    if q % 2 == 1 {
        q.div_ceil(2)
    } else {
        0
    }
}

/// `f_i = log_β(α^{(i+t)q} + α^{i+t})` for `i = 1..=q`, `t = shift_offset(q)`:
/// a `(q−1) × q` sequence.
///
/// `ext` is GF(q²) and `base` is GF(q); `α` is primitive in `ext`, `β` in
/// `base`. The sum `α^{iq} + α^i` is the trace of `α^i`, so it lies in the
/// subfield; it is carried back into `base` through the canonical embedding.
/// For even `q` the offset is 0 and this is the unshifted window `1..=q`;
/// for odd `q` that window contains a zero trace, so it is moved past it.
pub fn shift(
    ext: &FieldCtx,
    base: &FieldCtx,
    alpha: FieldElem,
    beta: FieldElem,
) -> Result<SonarSeq> {
    let q = base.order();
    if ext.characteristic() != base.characteristic() || ext.degree() != 2 * base.degree() {
        return Err(Error::NotASubfield {
            sub: q,
            field: ext.order(),
        });
    }
    if !ext.is_primitive(alpha) {
        return Err(Error::NotPrimitive(alpha.0));
    }
    if !base.is_primitive(beta) {
        return Err(Error::NotPrimitive(beta.0));
    }
    let emb = ext.embedding(base)?;
    let offset = shift_offset(q);
    let mut values = Vec::with_capacity(q as usize);
    let alpha_q = ext.pow(alpha, q);
    let mut ai = ext.pow(alpha, offset + 1);
    let mut aiq = ext.pow(alpha_q, offset + 1);
    for i in offset + 1..=offset + q {
        let y = ext.add(aiq, ai);
        if ext.pow(y, q) != y {
            return Err(Error::InvariantViolation(format!(
                "shift: alpha^({i}q) + alpha^{i} is not in the base field"
            )));
        }
        if y.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "shift: alpha^({i}q) + alpha^{i} = 0"
            )));
        }
        let y_base = emb
            .restrict(y)
            .ok_or_else(|| Error::InvariantViolation("embedding image mismatch".into()))?;
        values.push(base.discrete_log(beta, y_base)?);
        ai = ext.mul(ai, alpha);
        aiq = ext.mul(aiq, alpha_q);
    }
    let prov = SeqProvenance::new("shift")
        .with("q", q)
        .with("alpha", alpha.0)
        .with("beta", beta.0)
        .with("offset", offset);
    Ok(SonarSeq::modular(q - 1, values)?.with_provenance(prov))
}

/// Extended exponential Welch, `f_i = α^{i+s} mod p`.
///
/// With `extended`, `i` runs over `0..p` and the result is `p × p`; the
/// stored sequence is re-indexed so `f(1)` holds `f_0`.
/// Without it (`s = 0` in the classical statement) `i` runs over `1..p`,
/// giving `p × (p−1)`.
pub fn welch_exp(p: u64, alpha: u64, s: i64, extended: bool) -> Result<SonarSeq> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha >= p || !is_primitive_root(alpha, p) {
        return Err(Error::NotPrimitive(alpha));
    }
    let start = if extended { 0 } else { 1 };
    let period = p as i128 - 1;
    let values = (start..p)
        .map(|i| {
            let e = (i as i128 + s as i128).rem_euclid(period) as u64;
            pow_mod(alpha, e, p)
        })
        .collect();
    let (name, origin) = if extended {
        ("welch-exp", 0)
    } else {
        ("welch-exp-short", 1)
    };
    let prov = SeqProvenance::new(name)
        .with("p", p)
        .with("alpha", alpha)
        .with("s", s)
        .with("index_origin", origin);
    Ok(SonarSeq::modular(p, values)?.with_provenance(prov))
}

/// `f_i = log_α i` for `i = 1..p`: a `(p−1) × (p−1)` sequence.
pub fn welch_log(p: u64, alpha: u64) -> Result<SonarSeq> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if alpha >= p || !is_primitive_root(alpha, p) {
        return Err(Error::NotPrimitive(alpha));
    }
    let mut log = vec![0u64; p as usize];
    let mut x = 1;
    for k in 0..p - 1 {
        log[x as usize] = k;
        x = x * alpha % p;
    }
    let prov = SeqProvenance::new("welch-log")
        .with("p", p)
        .with("alpha", alpha);
    Ok(SonarSeq::modular((p - 1).max(1), log[1..].to_vec())?.with_provenance(prov))
}

/// `f_i = j` where `α^i + β^j = 1`, `i = 1..=q−2`: a `(q−1) × (q−2)` sequence.
pub fn golomb(field: &FieldCtx, alpha: FieldElem, beta: FieldElem) -> Result<SonarSeq> {
    let q = field.order();
    if q <= 2 {
        return Err(Error::QTooSmall(q));
    }
    for x in [alpha, beta] {
        if !field.is_primitive(x) {
            return Err(Error::NotPrimitive(x.0));
        }
    }
    let mut values = Vec::with_capacity(q as usize - 2);
    let mut ai = alpha;
    for _ in 1..=q - 2 {
        // α^i ≠ 1 for i < q − 1, so 1 − α^i is nonzero
        let rhs = field.sub(FieldElem::ONE, ai);
        values.push(field.discrete_log(beta, rhs)?);
        ai = field.mul(ai, alpha);
    }
    let prov = SeqProvenance::new("golomb")
        .with("q", q)
        .with("alpha", alpha.0)
        .with("beta", beta.0);
    Ok(SonarSeq::modular(q - 1, values)?.with_provenance(prov))
}
