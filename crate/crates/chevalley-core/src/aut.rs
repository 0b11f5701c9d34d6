//! Standard automorphisms: ring automorphisms acting entrywise, inner
//! automorphisms by conjugation, central automorphisms (trivial on the
//! elementary adjoint group), and the torus lift into a quadratic
//! extension.

use alloc::vec::Vec;

use crate::group::{Group, GroupElement};
use crate::ring::{
    adjoin_sqrt, dual_from_residue, ext_embed, pair_parts, sqrt_gen, Ring, RingKind, RingOps,
    RingValue,
};
use crate::roots::SignedRoot;
use crate::{Error, Result};

/// Ring-automorphism descriptors for the supported rings. The menu is
/// short on purpose: identity everywhere, the rescaling eps -> u eps on
/// dual numbers, and Frobenius on prime fields (where it is trivial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingAut {
    Identity,
    /// eps -> u * eps for a unit u (acting through its constant part).
    DualRescale(RingValue),
    /// x -> x^p on GF(p); the identity map, kept for completeness.
    Frobenius,
}

impl RingAut {
    pub fn apply(&self, ctx: &Ring, v: &RingValue) -> Result<RingValue> {
        match self {
            RingAut::Identity => Ok(v.clone()),
            RingAut::DualRescale(u) => {
                if !matches!(ctx.kind(), RingKind::Dual { .. }) {
                    return Err(Error::UnsupportedRing("eps rescale needs dual numbers"));
                }
                if u.ctx().as_ref() != ctx.as_ref() || !u.is_unit() {
                    return Err(Error::NonUnit);
                }
                let (a, b) = pair_parts(v).expect("dual value");
                let (u0, _) = pair_parts(u).expect("dual value");
                dual_from_residue(ctx, &a, &b.mul(&u0))
            }
            RingAut::Frobenius => {
                if !ctx.is_field() {
                    return Err(Error::UnsupportedRing("Frobenius needs a prime field"));
                }
                v.pow_i64(ctx.p() as i64)
            }
        }
    }
}

/// The standard automorphism types.
#[derive(Debug, Clone)]
pub enum StandardAutomorphism {
    /// Entrywise application of a ring automorphism.
    Ring(RingAut),
    /// Conjugation x -> g x g^{-1}.
    Inner(GroupElement),
    /// Central automorphisms are identical on the elementary adjoint
    /// group; represented for API completeness.
    Central,
    /// Applied left to right.
    Composite(Vec<StandardAutomorphism>),
}

impl StandardAutomorphism {
    /// Build an inner automorphism, spot-checking that the conjugator
    /// respects the group's generators: each conjugated x_{alpha_i}(1)
    /// and w_{alpha_i}(1) must keep a unit determinant, and
    /// radical-congruent conjugates must be reconstructible as
    /// torus-unipotent products.
    pub fn inner(gp: &Group, g: GroupElement) -> Result<Self> {
        if !g.mat.det().is_unit() {
            return Err(Error::NotInvertible);
        }
        let one = gp.ring.one();
        let reconstructible = gp.ring.radical_nilpotency().is_some();
        for i in 1..=gp.ch.rank() {
            let s = gp.ch.rs().simple_signed(i);
            for h in [gp.x_elem(s, &one), gp.w_elem(s, &one)?] {
                let c = gp.conj(&g, &h)?;
                if !c.mat.det().is_unit() {
                    return Err(Error::Precondition("conjugate left the group shape"));
                }
                if reconstructible && gp.is_radical_congruent(&c) {
                    crate::bruhat::reconstruct(gp, &c.mat)?;
                }
            }
        }
        Ok(StandardAutomorphism::Inner(g))
    }

    pub fn apply(&self, gp: &Group, g: &GroupElement) -> Result<GroupElement> {
        match self {
            StandardAutomorphism::Ring(sigma) => {
                let mut mat = g.mat.clone();
                for r in 0..mat.n() {
                    for c in 0..mat.n() {
                        mat.set(r, c, sigma.apply(&gp.ring, mat.get(r, c))?);
                    }
                }
                Ok(GroupElement { mat, word: None })
            }
            StandardAutomorphism::Inner(conj) => gp.conj(conj, g),
            StandardAutomorphism::Central => Ok(g.clone()),
            StandardAutomorphism::Composite(list) => {
                let mut cur = g.clone();
                for a in list {
                    cur = a.apply(gp, &cur)?;
                }
                Ok(cur)
            }
        }
    }
}

/// Which basic torus element to lift: supported on alpha_1 or alpha_l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusKind {
    First,
    Last,
}

/// Lift the torus element chi_{alpha_k}(r) into the quadratic
/// extension S = R[s]/(s^2 - r):
///
///   t_1 = h_{a1}(s^2) h_{a2}(s^2) ... h_{a_{l-1}}(s^2) h_{a_l}(s)
///   t_l = h_{a1}(s^2) h_{a2}(s^4) ... h_{a_{l-1}}(s^{2(l-1)}) h_{a_l}(s^l)
///
/// Conjugation by the result multiplies each x_alpha(xi) parameter by
/// r^k, k the alpha_1- (resp. alpha_l-) coefficient of alpha; the
/// action is verified on every generator before returning.
pub fn lift_torus(gp: &Group, kind: TorusKind, r: &RingValue) -> Result<(Group, GroupElement)> {
    if !r.is_unit() {
        return Err(Error::NonUnit);
    }
    let l = gp.ch.rank();
    let ext = adjoin_sqrt(&gp.ring, r)?;
    let s = sqrt_gen(&ext)?;
    let egp = Group::new(gp.ch.clone(), ext.clone());
    let mut t = egp.identity();
    for i in 1..=l {
        let exponent: i64 = match kind {
            TorusKind::First => {
                if i < l {
                    2
                } else {
                    1
                }
            }
            TorusKind::Last => {
                if i < l {
                    2 * i as i64
                } else {
                    l as i64
                }
            }
        };
        let param = s.pow_i64(exponent)?;
        t = egp.mul(&t, &egp.h_elem(egp.ch.rs().simple_signed(i), &param)?)?;
    }
    let which = match kind {
        TorusKind::First => 1,
        TorusKind::Last => l,
    };
    let r_ext = ext_embed(&ext, r)?;
    for a in gp.ch.rs().all_signed().collect::<Vec<_>>() {
        let k = i64::from(gp.ch.rs().coeffs_of(a)[which - 1]);
        let lhs = egp.conj(&t, &egp.x_elem(a, &ext.one()))?;
        let rhs = egp.x_elem(a, &r_ext.pow_i64(k)?);
        if lhs != rhs {
            return Err(Error::Precondition("torus lift acts wrongly on a generator"));
        }
    }
    Ok((egp, t))
}

/// True iff g commutes with every generator x_{+-alpha_i}(1).
pub fn is_central(gp: &Group, g: &GroupElement) -> Result<bool> {
    let one = gp.ring.one();
    for i in 1..=gp.ch.rank() {
        let s = gp.ch.rs().simple_signed(i);
        for gen in [gp.x_elem(s, &one), gp.x_elem(s.opposite(), &one)] {
            if gp.mul(g, &gen)? != gp.mul(&gen, g)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lift a base-ring group element into a quadratic extension of its
/// ring (entrywise embedding).
pub fn embed_element(ext_gp: &Group, g: &GroupElement) -> Result<GroupElement> {
    let ext = &ext_gp.ring;
    let mut mat = crate::group::RMat::identity(ext, g.mat.n());
    for r in 0..g.mat.n() {
        for c in 0..g.mat.n() {
            mat.set(r, c, ext_embed(ext, g.mat.get(r, c))?);
        }
    }
    Ok(GroupElement { mat, word: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chevalley;
    use crate::ring::{dual_pair, RingCtx};
    use crate::sample;
    use alloc::sync::Arc;

    fn group(l: usize, ring: Ring) -> Group {
        Group::new(Arc::new(Chevalley::new(l).unwrap()), ring)
    }

    #[test]
    fn ring_identity_and_frobenius() {
        let gf7 = RingCtx::prime_field(7).unwrap();
        let gp = group(2, gf7.clone());
        let g = gp.x_elem(SignedRoot::pos(0), &gf7.from_i64(3));
        let id = StandardAutomorphism::Ring(RingAut::Identity);
        assert_eq!(id.apply(&gp, &g).unwrap(), g);
        let frob = StandardAutomorphism::Ring(RingAut::Frobenius);
        assert_eq!(frob.apply(&gp, &g).unwrap(), g);
    }

    #[test]
    fn ring_aut_maps_x_to_x_sigma() {
        // sigma = eps -> 2 eps on GF(7)[eps]: x_alpha(t) -> x_alpha(sigma t)
        let d7 = RingCtx::dual(7).unwrap();
        let gp = group(2, d7.clone());
        let u = dual_pair(&d7, 2, 0).unwrap();
        let sigma = RingAut::DualRescale(u.clone());
        let aut = StandardAutomorphism::Ring(sigma.clone());
        let mut rng = sample::Rng::new(3);
        for s in gp.ch.rs().all_signed().collect::<alloc::vec::Vec<_>>() {
            let t = sample::element(&d7, &mut rng);
            let lhs = aut.apply(&gp, &gp.x_elem(s, &t)).unwrap();
            let rhs = gp.x_elem(s, &sigma.apply(&d7, &t).unwrap());
            assert_eq!(lhs, rhs);
        }
        // and it is a ring homomorphism on sampled pairs
        for _ in 0..50 {
            let a = sample::element(&d7, &mut rng);
            let b = sample::element(&d7, &mut rng);
            let f = |v: &RingValue| sigma.apply(&d7, v).unwrap();
            assert_eq!(f(&a.add(&b)), f(&a).add(&f(&b)));
            assert_eq!(f(&a.mul(&b)), f(&a).mul(&f(&b)));
        }
    }

    #[test]
    fn inner_torus_conjugation() {
        // Inner(h_elem(alpha, u)) maps x_beta(xi) to x_beta(u^<beta,alpha> xi)
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, z9.clone());
        let u = z9.from_i64(2);
        let h = gp.h_elem(SignedRoot::pos(0), &u).unwrap();
        let aut = StandardAutomorphism::inner(&gp, h).unwrap();
        let rs = gp.ch.rs().clone();
        for b in rs.all_signed() {
            let xi = z9.from_i64(5);
            let k = rs.pairing(&rs.root_of(b), &rs.root_of(SignedRoot::pos(0)));
            let lhs = aut.apply(&gp, &gp.x_elem(b, &xi)).unwrap();
            let rhs = gp.x_elem(b, &u.pow_i64(k as i64).unwrap().mul(&xi));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn apply_is_homomorphism() {
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, z9.clone());
        let mut rng = sample::Rng::new(17);
        let w = gp.w_elem(SignedRoot::pos(1), &z9.one()).unwrap();
        let auts = [
            StandardAutomorphism::Ring(RingAut::Identity),
            StandardAutomorphism::inner(&gp, w).unwrap(),
            StandardAutomorphism::Central,
        ];
        for aut in &auts {
            for _ in 0..5 {
                let t = sample::element(&z9, &mut rng);
                let u = sample::element(&z9, &mut rng);
                let g = gp.x_elem(SignedRoot::pos(0), &t);
                let h = gp.x_elem(SignedRoot::negv(2), &u);
                let lhs = aut.apply(&gp, &gp.mul(&g, &h).unwrap()).unwrap();
                let rhs = gp
                    .mul(&aut.apply(&gp, &g).unwrap(), &aut.apply(&gp, &h).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lift_torus_examples() {
        // r = 1: the lift acts trivially on every generator
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, z9.clone());
        let (egp, t) = lift_torus(&gp, TorusKind::First, &z9.one()).unwrap();
        for a in gp.ch.rs().all_signed().collect::<alloc::vec::Vec<_>>() {
            let x = egp.x_elem(a, &egp.ring.one());
            assert_eq!(egp.conj(&t, &x).unwrap(), x);
        }
        // l=2, kind=First, r=2 over Z/9: conj multiplies the alpha_1
        // parameter by 2 and fixes the alpha_2 parameter
        let (egp, t) = lift_torus(&gp, TorusKind::First, &z9.from_i64(2)).unwrap();
        let r2 = ext_embed(&egp.ring, &z9.from_i64(2)).unwrap();
        let a1 = gp.ch.rs().simple_signed(1);
        let a2 = gp.ch.rs().simple_signed(2);
        assert_eq!(
            egp.conj(&t, &egp.x_elem(a1, &egp.ring.one())).unwrap(),
            egp.x_elem(a1, &r2)
        );
        assert_eq!(
            egp.conj(&t, &egp.x_elem(a2, &egp.ring.one())).unwrap(),
            egp.x_elem(a2, &egp.ring.one())
        );
        // l=3, kind=Last, r=4 over GF(7): alpha_3 parameter scales by 4
        let gf7 = RingCtx::prime_field(7).unwrap();
        let gp3 = group(3, gf7.clone());
        let (egp3, t3) = lift_torus(&gp3, TorusKind::Last, &gf7.from_i64(4)).unwrap();
        let a3 = gp3.ch.rs().simple_signed(3);
        let r4 = ext_embed(&egp3.ring, &gf7.from_i64(4)).unwrap();
        assert_eq!(
            egp3.conj(&t3, &egp3.x_elem(a3, &egp3.ring.one())).unwrap(),
            egp3.x_elem(a3, &r4)
        );
        // non-unit r rejected
        assert!(matches!(
            lift_torus(&gp, TorusKind::First, &z9.from_i64(3)),
            Err(Error::NonUnit)
        ));
    }

    #[test]
    fn lift_normalizes_generators() {
        // conjugates of all x_{+-alpha_i}(+-1) have entries in the
        // embedded copy of R
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, z9.clone());
        let (egp, t) = lift_torus(&gp, TorusKind::Last, &z9.from_i64(2)).unwrap();
        for i in 1..=2 {
            for sign in [1i64, -1] {
                for s in
                    [gp.ch.rs().simple_signed(i), gp.ch.rs().simple_signed(i).opposite()]
                {
                    let x = egp.x_elem(s, &egp.ring.from_i64(sign));
                    let c = egp.conj(&t, &x).unwrap();
                    for r in 0..c.mat.n() {
                        for cc in 0..c.mat.n() {
                            let (_, b) = pair_parts(c.mat.get(r, cc)).unwrap();
                            assert!(b.is_zero(), "entry stays in the embedded base ring");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn centrality() {
        let z9 = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, z9.clone());
        assert!(is_central(&gp, &gp.identity()).unwrap());
        let h = gp.h_elem(SignedRoot::pos(0), &z9.from_i64(-1)).unwrap();
        assert!(!is_central(&gp, &h).unwrap());
        // over the adjoint group, the only central h_{alpha_i}(-1) is
        // the one that is literally the identity matrix: for the short
        // simple root every pairing <beta, alpha_l> is even
        let gp3 = group(3, RingCtx::prime_field(7).unwrap());
        for i in 1..=3 {
            let h = gp3
                .h_elem(gp3.ch.rs().simple_signed(i), &gp3.ring.from_i64(-1))
                .unwrap();
            if i < 3 {
                assert!(!is_central(&gp3, &h).unwrap());
            } else {
                assert!(h.mat.is_identity());
                assert!(is_central(&gp3, &h).unwrap());
            }
        }
    }
}
