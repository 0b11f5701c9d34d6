//! Exact arithmetic for commutative local rings with 1/2.
//!
//! Five concrete kinds are supported: prime fields GF(p), truncated
//! integers Z/p^k, the localization Z_(p), dual numbers GF(p)[eps],
//! and formal quadratic extensions R[s]/(s^2 - r). In every case p is
//! an odd prime, so 2 is a unit. Values are kept in canonical form and
//! equality is representation equality.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Shared handle to a ring context.
pub type Ring = Arc<RingCtx>;

/// Which concrete local ring a context describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    /// GF(p), the residue field case (radical is zero).
    PrimeField { p: u64 },
    /// Z/p^k with k >= 1; radical generated by p, nilpotency k.
    ZMod { p: u64, k: u32 },
    /// Z localized at (p): fractions with denominator coprime to p.
    ZLocal { p: u64 },
    /// GF(p)[eps]/(eps^2); radical generated by eps, nilpotency 2.
    Dual { p: u64 },
    /// base[s]/(s^2 - r) for a unit r, taken formally.
    SqrtExt { base: Ring, r: RingValue },
}

/// A ring context. Immutable after construction; share via [`Ring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    kind: RingKind,
    /// Cached modulus p^k for the ZMod case.
    modulus: u64,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl RingCtx {
    /// GF(p) for an odd prime p.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_odd_prime(p) {
            return Err(Error::Precondition("p must be an odd prime"));
        }
        Ok(Arc::new(RingCtx { kind: RingKind::PrimeField { p }, modulus: p }))
    }

    /// Z/p^k for an odd prime p and k >= 1.
    pub fn zmod(p: u64, k: u32) -> Result<Ring> {
        if !is_odd_prime(p) {
            return Err(Error::Precondition("p must be an odd prime"));
        }
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1"));
        }
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .ok_or(Error::Precondition("p^k overflows u64"))?;
        }
        Ok(Arc::new(RingCtx { kind: RingKind::ZMod { p, k }, modulus }))
    }

    /// Z localized at the prime p.
    pub fn zlocal(p: u64) -> Result<Ring> {
        if !is_odd_prime(p) {
            return Err(Error::Precondition("p must be an odd prime"));
        }
        Ok(Arc::new(RingCtx { kind: RingKind::ZLocal { p }, modulus: 0 }))
    }

    /// Dual numbers GF(p)[eps].
    pub fn dual(p: u64) -> Result<Ring> {
        if !is_odd_prime(p) {
            return Err(Error::Precondition("p must be an odd prime"));
        }
        Ok(Arc::new(RingCtx { kind: RingKind::Dual { p }, modulus: p }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    /// The residue characteristic p.
    pub fn p(&self) -> u64 {
        match &self.kind {
            RingKind::PrimeField { p }
            | RingKind::ZMod { p, .. }
            | RingKind::ZLocal { p }
            | RingKind::Dual { p } => *p,
            RingKind::SqrtExt { base, .. } => base.p(),
        }
    }

    /// Smallest N with J^N = 0, or None when the radical is not
    /// nilpotent (Z_(p)).
    pub fn radical_nilpotency(&self) -> Option<u32> {
        match &self.kind {
            RingKind::PrimeField { .. } => Some(1),
            RingKind::ZMod { k, .. } => Some(*k),
            RingKind::ZLocal { .. } => None,
            RingKind::Dual { .. } => Some(2),
            RingKind::SqrtExt { base, .. } => base.radical_nilpotency(),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::PrimeField { .. })
    }
}

/// Canonical representation of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Residue class in [0, modulus) for PrimeField / ZMod.
    Mod(u64),
    /// Reduced fraction with denominator coprime to p, positive.
    Frac(BigRational),
    /// a + b*eps with both components in [0, p).
    Dual(u64, u64),
    /// a + b*s with components in the base ring.
    Ext(Box<(RingValue, RingValue)>),
}

/// An element of a concrete ring, with its context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingValue {
    ctx: Ring,
    repr: Repr,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn invmod(a: u64, m: u64) -> Option<u64> {
    // extended Euclid; m may be a prime power
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Construct elements of a context.
pub trait RingOps {
    fn zero(self: &Arc<Self>) -> RingValue;
    fn one(self: &Arc<Self>) -> RingValue;
    fn from_i64(self: &Arc<Self>, n: i64) -> RingValue;
    fn half(self: &Arc<Self>) -> RingValue;
}

impl RingOps for RingCtx {
    fn zero(self: &Ring) -> RingValue {
        self.from_i64(0)
    }

    fn one(self: &Ring) -> RingValue {
        self.from_i64(1)
    }

    fn from_i64(self: &Ring, n: i64) -> RingValue {
        let repr = match &self.kind {
            RingKind::PrimeField { .. } | RingKind::ZMod { .. } => {
                Repr::Mod((n as i128).rem_euclid(self.modulus as i128) as u64)
            }
            RingKind::ZLocal { .. } => Repr::Frac(BigRational::from(BigInt::from(n))),
            RingKind::Dual { p } => Repr::Dual((n as i128).rem_euclid(*p as i128) as u64, 0),
            RingKind::SqrtExt { base, .. } => {
                Repr::Ext(Box::new((base.from_i64(n), base.zero())))
            }
        };
        RingValue { ctx: self.clone(), repr }
    }

    fn half(self: &Ring) -> RingValue {
        self.from_i64(2)
            .invert()
            .expect("2 is a unit in every supported ring")
    }
}

/// Fraction constructor for Z_(p); `den` must be coprime to p.
pub fn zlocal_fraction(ctx: &Ring, num: i64, den: i64) -> Result<RingValue> {
    match ctx.kind {
        RingKind::ZLocal { p } => {
            if den == 0 || den.unsigned_abs() % p == 0 {
                return Err(Error::Precondition("denominator must be coprime to p"));
            }
            Ok(RingValue {
                ctx: ctx.clone(),
                repr: Repr::Frac(BigRational::new(BigInt::from(num), BigInt::from(den))),
            })
        }
        _ => Err(Error::Precondition("fraction literal needs a Z_(p) context")),
    }
}

/// Assemble a + b*eps from residue-field components.
pub fn dual_from_residue(ctx: &Ring, a: &RingValue, b: &RingValue) -> Result<RingValue> {
    match (ctx.kind(), &a.repr, &b.repr) {
        (RingKind::Dual { .. }, Repr::Mod(x), Repr::Mod(y)) => Ok(RingValue {
            ctx: ctx.clone(),
            repr: Repr::Dual(*x, *y),
        }),
        _ => Err(Error::Precondition("components must come from the residue field")),
    }
}

/// Build a + b*eps in a dual-number context.
pub fn dual_pair(ctx: &Ring, a: i64, b: i64) -> Result<RingValue> {
    match ctx.kind {
        RingKind::Dual { p } => Ok(RingValue {
            ctx: ctx.clone(),
            repr: Repr::Dual(
                (a as i128).rem_euclid(p as i128) as u64,
                (b as i128).rem_euclid(p as i128) as u64,
            ),
        }),
        _ => Err(Error::Precondition("pair literal needs a dual-number context")),
    }
}

/// Extend `base` by a formal square root of the unit `r`.
pub fn adjoin_sqrt(base: &Ring, r: &RingValue) -> Result<Ring> {
    if r.ctx.as_ref() != base.as_ref() {
        return Err(Error::ContextMismatch);
    }
    if !r.is_unit() {
        return Err(Error::NonUnit);
    }
    if matches!(base.kind, RingKind::SqrtExt { .. }) {
        return Err(Error::UnsupportedRing("nested quadratic extensions"));
    }
    Ok(Arc::new(RingCtx {
        kind: RingKind::SqrtExt { base: base.clone(), r: r.clone() },
        modulus: 0,
    }))
}

/// Build a + b*s in a quadratic-extension context from base-ring parts.
pub fn ext_parts(ctx: &Ring, a: RingValue, b: RingValue) -> Result<RingValue> {
    match &ctx.kind {
        RingKind::SqrtExt { base, .. } => {
            if a.ctx.as_ref() != base.as_ref() || b.ctx.as_ref() != base.as_ref() {
                return Err(Error::ContextMismatch);
            }
            Ok(RingValue { ctx: ctx.clone(), repr: Repr::Ext(Box::new((a, b))) })
        }
        _ => Err(Error::Precondition("ext literal needs a sqrt-extension context")),
    }
}

/// The generator s with s^2 = r of a quadratic extension.
pub fn sqrt_gen(ctx: &Ring) -> Result<RingValue> {
    match &ctx.kind {
        RingKind::SqrtExt { base, .. } => ext_parts(ctx, base.zero(), base.one()),
        _ => Err(Error::Precondition("sqrt generator needs a sqrt-extension context")),
    }
}

/// Embed a base-ring element into a quadratic extension.
pub fn ext_embed(ctx: &Ring, a: &RingValue) -> Result<RingValue> {
    match &ctx.kind {
        RingKind::SqrtExt { base, .. } => ext_parts(ctx, a.clone(), base.zero()),
        _ => Err(Error::Precondition("embedding needs a sqrt-extension context")),
    }
}

impl RingValue {
    pub fn ctx(&self) -> &Ring {
        &self.ctx
    }

    fn same_ctx(&self, other: &RingValue) -> Result<()> {
        if self.ctx.as_ref() == other.ctx.as_ref() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mod(x) => *x == 0,
            Repr::Frac(q) => q.is_zero(),
            Repr::Dual(a, b) => *a == 0 && *b == 0,
            Repr::Ext(p) => p.0.is_zero() && p.1.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ctx.one()
    }

    pub fn add(&self, other: &RingValue) -> RingValue {
        self.checked_add(other).expect("ring context mismatch")
    }

    pub fn checked_add(&self, other: &RingValue) -> Result<RingValue> {
        self.same_ctx(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod((a + b) % self.ctx.modulus),
            (Repr::Frac(a), Repr::Frac(b)) => Repr::Frac(a + b),
            (Repr::Dual(a, b), Repr::Dual(c, d)) => {
                let p = self.ctx.p();
                Repr::Dual((a + c) % p, (b + d) % p)
            }
            (Repr::Ext(x), Repr::Ext(y)) => {
                Repr::Ext(Box::new((x.0.add(&y.0), x.1.add(&y.1))))
            }
            _ => unreachable!("repr matches context"),
        };
        Ok(RingValue { ctx: self.ctx.clone(), repr })
    }

    pub fn neg(&self) -> RingValue {
        let repr = match &self.repr {
            Repr::Mod(a) => Repr::Mod(if *a == 0 { 0 } else { self.ctx.modulus - a }),
            Repr::Frac(q) => Repr::Frac(-q),
            Repr::Dual(a, b) => {
                let p = self.ctx.p();
                Repr::Dual(if *a == 0 { 0 } else { p - a }, if *b == 0 { 0 } else { p - b })
            }
            Repr::Ext(x) => Repr::Ext(Box::new((x.0.neg(), x.1.neg()))),
        };
        RingValue { ctx: self.ctx.clone(), repr }
    }

    pub fn sub(&self, other: &RingValue) -> RingValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingValue) -> RingValue {
        self.checked_mul(other).expect("ring context mismatch")
    }

    pub fn checked_mul(&self, other: &RingValue) -> Result<RingValue> {
        self.same_ctx(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mod(a), Repr::Mod(b)) => Repr::Mod(mulmod(*a, *b, self.ctx.modulus)),
            (Repr::Frac(a), Repr::Frac(b)) => Repr::Frac(a * b),
            (Repr::Dual(a, b), Repr::Dual(c, d)) => {
                let p = self.ctx.p();
                // (a + b eps)(c + d eps) = ac + (ad + bc) eps
                Repr::Dual(mulmod(*a, *c, p), (mulmod(*a, *d, p) + mulmod(*b, *c, p)) % p)
            }
            (Repr::Ext(x), Repr::Ext(y)) => {
                let r = match &self.ctx.kind {
                    RingKind::SqrtExt { r, .. } => r,
                    _ => unreachable!(),
                };
                // (a + b s)(c + d s) = ac + bd r + (ad + bc) s
                let re = x.0.mul(&y.0).add(&x.1.mul(&y.1).mul(r));
                let im = x.0.mul(&y.1).add(&x.1.mul(&y.0));
                Repr::Ext(Box::new((re, im)))
            }
            _ => unreachable!("repr matches context"),
        };
        Ok(RingValue { ctx: self.ctx.clone(), repr })
    }

    /// Scale by a small integer.
    pub fn mul_i64(&self, n: i64) -> RingValue {
        self.mul(&self.ctx.from_i64(n))
    }

    pub fn in_radical(&self) -> bool {
        match &self.repr {
            Repr::Mod(x) => x % self.ctx.p() == 0,
            Repr::Frac(q) => (q.numer() % BigInt::from(self.ctx.p())).is_zero(),
            Repr::Dual(a, _) => *a == 0,
            Repr::Ext(x) => {
                let r = match &self.ctx.kind {
                    RingKind::SqrtExt { r, .. } => r,
                    _ => unreachable!(),
                };
                // a + b s is a unit iff its norm a^2 - b^2 r is
                let norm = x.0.mul(&x.0).sub(&x.1.mul(&x.1).mul(r));
                norm.in_radical()
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.in_radical()
    }

    pub fn invert(&self) -> Result<RingValue> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let repr = match &self.repr {
            Repr::Mod(a) => Repr::Mod(invmod(*a, self.ctx.modulus).ok_or(Error::NonUnit)?),
            Repr::Frac(q) => Repr::Frac(q.recip()),
            Repr::Dual(a, b) => {
                let p = self.ctx.p();
                // (a + b eps)^-1 = a^-1 - a^-2 b eps
                let ai = invmod(*a, p).ok_or(Error::NonUnit)?;
                let m = mulmod(mulmod(ai, ai, p), *b, p);
                Repr::Dual(ai, if m == 0 { 0 } else { p - m })
            }
            Repr::Ext(x) => {
                let r = match &self.ctx.kind {
                    RingKind::SqrtExt { r, .. } => r,
                    _ => unreachable!(),
                };
                let norm = x.0.mul(&x.0).sub(&x.1.mul(&x.1).mul(r));
                let ni = norm.invert()?;
                Repr::Ext(Box::new((x.0.mul(&ni), x.1.neg().mul(&ni))))
            }
        };
        Ok(RingValue { ctx: self.ctx.clone(), repr })
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_i64(&self, e: i64) -> Result<RingValue> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = self.ctx.one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// The ring this value's residue lives in (k = R/J, or the formal
    /// quotient for extensions).
    pub fn residue_ring(ctx: &Ring) -> Ring {
        match &ctx.kind {
            RingKind::PrimeField { .. } => ctx.clone(),
            RingKind::ZMod { p, .. } | RingKind::ZLocal { p } | RingKind::Dual { p } => {
                RingCtx::prime_field(*p).expect("p validated at construction")
            }
            RingKind::SqrtExt { base, r } => {
                let base_res = RingValue::residue_ring(base);
                let r_res = r.residue();
                adjoin_sqrt(&base_res, &r_res).expect("residue of a unit is a unit")
            }
        }
    }

    /// Reduction modulo the radical, landing in [`residue_ring`].
    pub fn residue(&self) -> RingValue {
        let target = RingValue::residue_ring(&self.ctx);
        match &self.repr {
            Repr::Mod(x) => target.from_i64((x % self.ctx.p()) as i64),
            Repr::Frac(q) => {
                let p = BigInt::from(self.ctx.p());
                let n = q.numer().mod_floor(&p);
                let d = q.denom().mod_floor(&p);
                let ni: i64 = n.try_into().expect("residue fits i64");
                let di: i64 = d.try_into().expect("residue fits i64");
                let dv = target.from_i64(di).invert().expect("denominator coprime to p");
                target.from_i64(ni).mul(&dv)
            }
            Repr::Dual(a, _) => target.from_i64(*a as i64),
            Repr::Ext(x) => ext_parts(&target, x.0.residue(), x.1.residue())
                .expect("component contexts match"),
        }
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mod(x) => write!(f, "{x}"),
            Repr::Frac(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Dual(a, b) => write!(f, "{a}+{b}*eps"),
            Repr::Ext(x) => write!(f, "{}+{}*sqrt", x.0, x.1),
        }
    }
}

/// Names used by descriptors and error messages.
pub fn kind_name(ctx: &RingCtx) -> &'static str {
    match ctx.kind {
        RingKind::PrimeField { .. } => "gfp",
        RingKind::ZMod { .. } => "zmod",
        RingKind::ZLocal { .. } => "zloc",
        RingKind::Dual { .. } => "dual",
        RingKind::SqrtExt { .. } => "sqrt-ext",
    }
}

/// A fraction in lowest terms for Z_(p) values, as (numer, denom)
/// decimal strings. Used by the CLI formatting layer.
pub fn frac_parts(v: &RingValue) -> Option<(String, String)> {
    use alloc::string::ToString;
    match &v.repr {
        Repr::Frac(q) => Some((q.numer().to_string(), q.denom().to_string())),
        _ => None,
    }
}

/// Components (a, b) of pair-represented values: a + b*eps or a + b*s.
pub fn pair_parts(v: &RingValue) -> Option<(RingValue, RingValue)> {
    match &v.repr {
        Repr::Dual(a, b) => {
            let base = RingValue::residue_ring(&v.ctx);
            Some((base.from_i64(*a as i64), base.from_i64(*b as i64)))
        }
        Repr::Ext(x) => Some((x.0.clone(), x.1.clone())),
        _ => None,
    }
}

/// All elements of a finite context, for exhaustive checks. Only
/// sensible at desk scale; None for Z_(p) and large extensions.
pub fn enumerate(ctx: &Ring, limit: usize) -> Option<Vec<RingValue>> {
    match &ctx.kind {
        RingKind::PrimeField { .. } | RingKind::ZMod { .. } => {
            let m = ctx.modulus;
            if m as usize > limit {
                return None;
            }
            Some((0..m).map(|x| ctx.from_i64(x as i64)).collect())
        }
        RingKind::Dual { p } => {
            if (p * p) as usize > limit {
                return None;
            }
            let mut out = Vec::new();
            for a in 0..*p {
                for b in 0..*p {
                    out.push(dual_pair(ctx, a as i64, b as i64).unwrap());
                }
            }
            Some(out)
        }
        RingKind::ZLocal { .. } => None,
        RingKind::SqrtExt { base, .. } => {
            let inner = enumerate(base, limit)?;
            if inner.len() * inner.len() > limit {
                return None;
            }
            let mut out = Vec::new();
            for a in &inner {
                for b in &inner {
                    out.push(ext_parts(ctx, a.clone(), b.clone()).unwrap());
                }
            }
            Some(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let z9 = RingCtx::zmod(3, 2).unwrap();
        // 5 + 7 = 3 in Z/9
        assert_eq!(z9.from_i64(5).add(&z9.from_i64(7)), z9.from_i64(3));
        // 3 * 3 = 0 (radical product)
        assert!(z9.from_i64(3).mul(&z9.from_i64(3)).is_zero());
        // invert(2) = 5
        assert_eq!(z9.from_i64(2).invert().unwrap(), z9.from_i64(5));
        // invert(3) fails
        assert_eq!(z9.from_i64(3).invert(), Err(Error::NonUnit));
    }

    #[test]
    fn dual_basics() {
        let d7 = RingCtx::dual(7).unwrap();
        let x = dual_pair(&d7, 1, 3).unwrap();
        let y = dual_pair(&d7, 6, 4).unwrap();
        assert!(x.add(&y).is_zero());
        let a = dual_pair(&d7, 2, 1).unwrap();
        let b = dual_pair(&d7, 3, 1).unwrap();
        assert_eq!(a.mul(&b), dual_pair(&d7, 6, 5).unwrap());
        // invert(1 + eps) = 1 + 6 eps
        let u = dual_pair(&d7, 1, 1).unwrap();
        assert_eq!(u.invert().unwrap(), dual_pair(&d7, 1, 6).unwrap());
    }

    #[test]
    fn zlocal_basics() {
        let z5 = RingCtx::zlocal(5).unwrap();
        let a = zlocal_fraction(&z5, 1, 2).unwrap();
        let b = zlocal_fraction(&z5, 1, 3).unwrap();
        assert_eq!(a.add(&b), zlocal_fraction(&z5, 5, 6).unwrap());
        assert!(zlocal_fraction(&z5, 3, 7).unwrap().is_unit());
        // residue(2/3) = 2 * 3^-1 = 4 mod 5
        let r = zlocal_fraction(&z5, 2, 3).unwrap().residue();
        let gf5 = RingCtx::prime_field(5).unwrap();
        assert_eq!(r, gf5.from_i64(4));
        assert!(zlocal_fraction(&z5, 1, 5).is_err());
    }

    #[test]
    fn sqrt_ext_basics() {
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let s2 = adjoin_sqrt(&z9, &z9.from_i64(2)).unwrap();
        let s = sqrt_gen(&s2).unwrap();
        // (1 + sqrt2)^2 = 3 + 2 sqrt2
        let u = ext_parts(&s2, z9.from_i64(1), z9.from_i64(1)).unwrap();
        assert_eq!(u.mul(&u), ext_parts(&s2, z9.from_i64(3), z9.from_i64(2)).unwrap());
        assert_eq!(s.mul(&s), ext_embed(&s2, &z9.from_i64(2)).unwrap());
        assert!(s.is_unit());
        // r must be a unit
        assert_eq!(adjoin_sqrt(&z9, &z9.from_i64(3)).unwrap_err(), Error::NonUnit);
        // reducible case is allowed: s^2 = 4 over GF(7)
        let gf7 = RingCtx::prime_field(7).unwrap();
        assert!(adjoin_sqrt(&gf7, &gf7.from_i64(4)).is_ok());
    }

    #[test]
    fn radical_predicates() {
        let z27 = RingCtx::zmod(3, 3).unwrap();
        assert!(z27.from_i64(6).in_radical());
        assert!(!z27.from_i64(6).is_unit());
        let gf7 = RingCtx::prime_field(7).unwrap();
        for x in 0..7 {
            let v = gf7.from_i64(x);
            assert_eq!(v.in_radical(), x == 0);
        }
    }

    #[test]
    fn residue_maps() {
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gf3 = RingCtx::prime_field(3).unwrap();
        assert_eq!(z9.from_i64(7).residue(), gf3.from_i64(1));
        let d7 = RingCtx::dual(7).unwrap();
        let gf7 = RingCtx::prime_field(7).unwrap();
        assert_eq!(dual_pair(&d7, 3, 5).unwrap().residue(), gf7.from_i64(3));
    }

    #[test]
    fn half_exists_everywhere() {
        for ctx in [
            RingCtx::prime_field(7).unwrap(),
            RingCtx::zmod(3, 3).unwrap(),
            RingCtx::zlocal(5).unwrap(),
            RingCtx::dual(7).unwrap(),
        ] {
            let h = ctx.half();
            assert!(h.add(&h).is_one());
        }
    }
}
