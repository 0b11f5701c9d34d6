//! Deterministic sampling of ring elements for randomized checks.
//!
//! The verification suites take an explicit seed so CI runs are
//! reproducible; a tiny xorshift generator keeps the core crate free
//! of RNG dependencies.

use crate::ring::{dual_pair, ext_parts, Ring, RingKind, RingOps, RingValue};

/// xorshift64* generator. Deterministic and seed-stable.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed.wrapping_add(0x9E37_79B9_7F4A_7C15))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn i64_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// An arbitrary element of the ring.
pub fn element(ctx: &Ring, rng: &mut Rng) -> RingValue {
    match ctx.kind() {
        RingKind::PrimeField { p } => ctx.from_i64(rng.below(*p) as i64),
        RingKind::ZMod { p, k } => {
            let m = (0..*k).fold(1u64, |m, _| m * p);
            ctx.from_i64(rng.below(m) as i64)
        }
        RingKind::ZLocal { p } => {
            let num = rng.i64_in(-30, 30);
            let mut den = rng.i64_in(1, 30);
            while den as u64 % p == 0 {
                den = rng.i64_in(1, 30);
            }
            crate::ring::zlocal_fraction(ctx, num, den).expect("den coprime to p")
        }
        RingKind::Dual { p } => {
            dual_pair(ctx, rng.below(*p) as i64, rng.below(*p) as i64).expect("dual ctx")
        }
        RingKind::SqrtExt { base, .. } => {
            let a = element(base, rng);
            let b = element(base, rng);
            ext_parts(ctx, a, b).expect("component contexts match")
        }
    }
}

/// A unit of the ring (rejection sampling; units are dense).
pub fn unit(ctx: &Ring, rng: &mut Rng) -> RingValue {
    loop {
        let v = element(ctx, rng);
        if v.is_unit() {
            return v;
        }
    }
}

/// A radical element (zero in a field).
pub fn radical(ctx: &Ring, rng: &mut Rng) -> RingValue {
    match ctx.kind() {
        RingKind::PrimeField { .. } => ctx.zero(),
        RingKind::ZMod { p, .. } => element(ctx, rng).mul(&ctx.from_i64(*p as i64)),
        RingKind::ZLocal { p } => element(ctx, rng).mul(&ctx.from_i64(*p as i64)),
        RingKind::Dual { p } => dual_pair(ctx, 0, rng.below(*p) as i64).expect("dual ctx"),
        RingKind::SqrtExt { base, .. } => {
            let a = radical(base, rng);
            let b = radical(base, rng);
            ext_parts(ctx, a, b).expect("component contexts match")
        }
    }
}

/// A nonzero radical element, if the ring has one.
pub fn radical_nonzero(ctx: &Ring, rng: &mut Rng) -> Option<RingValue> {
    if ctx.is_field() {
        return None;
    }
    for _ in 0..64 {
        let v = radical(ctx, rng);
        if !v.is_zero() {
            return Some(v);
        }
    }
    None
}

/// A unit congruent to 1 mod the radical.
pub fn one_plus_radical(ctx: &Ring, rng: &mut Rng) -> RingValue {
    ctx.one().add(&radical(ctx, rng))
}
