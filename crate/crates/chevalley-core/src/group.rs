//! Group generators and group-element arithmetic over a chosen ring.
//!
//! Generators follow the Steinberg presentation built on the integral
//! adjoint matrices of [`crate::algebra`]:
//!
//! * x_alpha(t) = 1 + t M_alpha + t^2 M_alpha^2/2 with M = -ad x_alpha,
//! * w_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t),
//! * h_alpha(t) = the diagonal t^<beta, alpha> on the weight spaces
//!   (equal to w_alpha(t) w_alpha(1)^{-1}).
//!
//! Matrices are dense over exact ring values; inverses use Gauss-Jordan
//! elimination with unit pivots, which succeeds over a local ring
//! exactly when the determinant is a unit.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{Chevalley, IMat};
use crate::ring::{Ring, RingOps, RingValue};
use crate::roots::SignedRoot;
use crate::{Error, Result};

/// Dense matrix over a ring context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RMat {
    ctx: Ring,
    n: usize,
    a: Vec<RingValue>,
}

impl RMat {
    pub fn zero(ctx: &Ring, n: usize) -> Self {
        RMat { ctx: ctx.clone(), n, a: alloc::vec![ctx.zero(); n * n] }
    }

    pub fn identity(ctx: &Ring, n: usize) -> Self {
        let mut m = RMat::zero(ctx, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_int(ctx: &Ring, m: &IMat) -> Self {
        let mut out = RMat::zero(ctx, m.n());
        for (r, c, v) in m.entries() {
            out.set(r, c, ctx.from_i64(v));
        }
        out
    }

    pub fn ctx(&self) -> &Ring {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &RingValue {
        &self.a[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingValue) {
        self.a[r * self.n + c] = v;
    }

    pub fn mul(&self, other: &RMat) -> Result<RMat> {
        if self.ctx.as_ref() != other.ctx.as_ref() {
            return Err(Error::ContextMismatch);
        }
        let n = self.n;
        let mut out = RMat::zero(&self.ctx, n);
        for i in 0..n {
            for k in 0..n {
                let v = self.get(i, k);
                if v.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let w = other.get(k, j);
                    if !w.is_zero() {
                        let cur = out.get(i, j).add(&v.mul(w));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &RMat) -> Result<RMat> {
        if self.ctx.as_ref() != other.ctx.as_ref() {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = x.add(y);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RMat) -> Result<RMat> {
        if self.ctx.as_ref() != other.ctx.as_ref() {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(&other.a) {
            *x = x.sub(y);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &RingValue) -> RMat {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = x.mul(k);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == RMat::identity(&self.ctx, self.n)
    }

    /// Entrywise reduction modulo the radical.
    pub fn residue(&self) -> RMat {
        let target = RingValue::residue_ring(&self.ctx);
        let mut out = RMat::zero(&target, self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r, c, self.get(r, c).residue());
            }
        }
        out
    }

    /// True when the matrix is congruent to the identity mod J.
    pub fn is_radical_congruent(&self) -> bool {
        for r in 0..self.n {
            for c in 0..self.n {
                let mut v = self.get(r, c).clone();
                if r == c {
                    v = v.sub(&self.ctx.one());
                }
                if !v.in_radical() {
                    return false;
                }
            }
        }
        true
    }

    /// Gauss-Jordan inverse with unit pivots. Over a local ring this
    /// succeeds iff the matrix is invertible.
    pub fn inverse(&self) -> Result<RMat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = RMat::identity(&self.ctx, n);
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a.get(r, col).is_unit())
                .ok_or(Error::NotInvertible)?;
            if piv != col {
                for j in 0..n {
                    let (x, y) = (a.get(piv, j).clone(), a.get(col, j).clone());
                    a.set(piv, j, y);
                    a.set(col, j, x);
                    let (x, y) = (inv.get(piv, j).clone(), inv.get(col, j).clone());
                    inv.set(piv, j, y);
                    inv.set(col, j, x);
                }
            }
            let d = a.get(col, col).invert()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&d));
                inv.set(col, j, inv.get(col, j).mul(&d));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                    let v = inv.get(r, j).sub(&f.mul(inv.get(col, j)));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Determinant via elimination with unit pivots. When elimination
    /// stalls the determinant is a non-unit; callers only branch on
    /// unitness, so a radical value (zero) is returned in that case.
    pub fn det(&self) -> RingValue {
        let n = self.n;
        let mut a = self.clone();
        let mut det = self.ctx.one();
        for col in 0..n {
            let piv = match (col..n).find(|&r| a.get(r, col).is_unit()) {
                Some(p) => p,
                None => return self.ctx.zero(),
            };
            if piv != col {
                det = det.neg();
                for j in 0..n {
                    let (x, y) = (a.get(piv, j).clone(), a.get(col, j).clone());
                    a.set(piv, j, y);
                    a.set(col, j, x);
                }
            }
            let d = a.get(col, col).clone();
            det = det.mul(&d);
            let di = d.invert().expect("pivot is a unit");
            for r in (col + 1)..n {
                let f = a.get(r, col).mul(&di);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }
}

/// A character of the root lattice: its values on the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCharacter {
    values: Vec<RingValue>,
}

impl TorusCharacter {
    /// All values must be units.
    pub fn new(values: Vec<RingValue>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Precondition("character needs rank many values"));
        }
        for v in &values {
            if !v.is_unit() {
                return Err(Error::NonUnit);
            }
        }
        Ok(TorusCharacter { values })
    }

    /// The character chi_{alpha, u}: alpha_i -> u^<alpha_i, alpha>.
    pub fn for_root(gp: &Group, alpha: SignedRoot, u: &RingValue) -> Result<Self> {
        if !u.is_unit() {
            return Err(Error::NonUnit);
        }
        let rs = gp.ch.rs();
        let a = rs.root_of(alpha);
        let values = (1..=rs.rank())
            .map(|i| u.pow_i64(rs.pairing(rs.simple(i), &a) as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusCharacter { values })
    }

    /// The character with chi(alpha_k) = s and chi(alpha_j) = 1 else.
    pub fn basis_char(gp: &Group, k: usize, s: &RingValue) -> Result<Self> {
        if !s.is_unit() {
            return Err(Error::NonUnit);
        }
        let mut values = alloc::vec![gp.ring.one(); gp.ch.rank()];
        values[k - 1] = s.clone();
        Ok(TorusCharacter { values })
    }

    pub fn values(&self) -> &[RingValue] {
        &self.values
    }

    /// chi(beta) through the simple-root coefficients of beta.
    pub fn eval(&self, gp: &Group, beta: SignedRoot) -> RingValue {
        let coeffs = gp.ch.rs().coeffs_of(beta);
        let mut out = gp.ring.one();
        for (v, c) in self.values.iter().zip(&coeffs) {
            out = out.mul(&v.pow_i64(i64::from(*c)).expect("character values are units"));
        }
        out
    }
}

/// One named generator factor of a group-element word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Unipotent { root: SignedRoot, t: RingValue },
    Weyl { root: SignedRoot, t: RingValue },
    Torus { root: SignedRoot, t: RingValue },
    Char(TorusCharacter),
}

/// A group element: matrix plus an optional generator word. The word
/// is bookkeeping only; the matrix is authoritative.
#[derive(Debug, Clone)]
pub struct GroupElement {
    pub mat: RMat,
    pub word: Option<Vec<Factor>>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

/// Binds the rank tables to a ring: the factory for group elements.
#[derive(Debug, Clone)]
pub struct Group {
    pub ch: Arc<Chevalley>,
    pub ring: Ring,
}

impl Group {
    pub fn new(ch: Arc<Chevalley>, ring: Ring) -> Self {
        Group { ch, ring }
    }

    pub fn dim(&self) -> usize {
        self.ch.basis.n
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { mat: RMat::identity(&self.ring, self.dim()), word: Some(Vec::new()) }
    }

    /// The unipotent generator x_alpha(t) = exp(t M_alpha).
    pub fn x_elem(&self, s: SignedRoot, t: &RingValue) -> GroupElement {
        let mut mat = RMat::identity(&self.ring, self.dim());
        let t2 = t.mul(t);
        for (r, c, v) in self.ch.gen_matrix(s).entries() {
            let add = t.mul_i64(v);
            mat.set(r, c, mat.get(r, c).add(&add));
        }
        for (r, c, v) in self.ch.gen_matrix_sq_half(s).entries() {
            let add = t2.mul_i64(v);
            mat.set(r, c, mat.get(r, c).add(&add));
        }
        GroupElement {
            mat,
            word: Some(alloc::vec![Factor::Unipotent { root: s, t: t.clone() }]),
        }
    }

    /// w_alpha(t) = x_alpha(t) x_{-alpha}(-1/t) x_alpha(t); t must be a unit.
    pub fn w_elem(&self, s: SignedRoot, t: &RingValue) -> Result<GroupElement> {
        let ti = t.invert()?;
        let x1 = self.x_elem(s, t);
        let x2 = self.x_elem(s.opposite(), &ti.neg());
        let mat = x1.mat.mul(&x2.mat)?.mul(&x1.mat)?;
        Ok(GroupElement {
            mat,
            word: Some(alloc::vec![Factor::Weyl { root: s, t: t.clone() }]),
        })
    }

    /// h_alpha(t): diagonal t^<beta, alpha> on v_beta, identity on the
    /// V block. Equals w_alpha(t) w_alpha(1)^{-1}.
    pub fn h_elem(&self, s: SignedRoot, t: &RingValue) -> Result<GroupElement> {
        let chi = TorusCharacter::for_root(self, s, t)?;
        let mut g = self.h_char(&chi)?;
        g.word = Some(alloc::vec![Factor::Torus { root: s, t: t.clone() }]);
        Ok(g)
    }

    /// h(chi): diagonal chi(beta) on v_beta, 1 on the V block.
    pub fn h_char(&self, chi: &TorusCharacter) -> Result<GroupElement> {
        if chi.values().len() != self.ch.rank() {
            return Err(Error::Precondition("character rank mismatch"));
        }
        let mut mat = RMat::identity(&self.ring, self.dim());
        for s in self.ch.rs().all_signed() {
            let p = self.ch.basis.of_signed(s);
            mat.set(p, p, chi.eval(self, s));
        }
        Ok(GroupElement { mat, word: Some(alloc::vec![Factor::Char(chi.clone())]) })
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let mat = a.mat.mul(&b.mat)?;
        let word = match (&a.word, &b.word) {
            (Some(x), Some(y)) => {
                let mut w = x.clone();
                w.extend(y.iter().cloned());
                Some(w)
            }
            _ => None,
        };
        Ok(GroupElement { mat, word })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        let mat = g.mat.inverse()?;
        let word = match &g.word {
            Some(fs) => {
                let mut out = Vec::with_capacity(fs.len());
                for f in fs.iter().rev() {
                    out.push(match f {
                        Factor::Unipotent { root, t } => {
                            Factor::Unipotent { root: *root, t: t.neg() }
                        }
                        Factor::Weyl { root, t } => Factor::Weyl { root: *root, t: t.neg() },
                        Factor::Torus { root, t } => {
                            Factor::Torus { root: *root, t: t.invert()? }
                        }
                        Factor::Char(chi) => {
                            let inv = chi
                                .values()
                                .iter()
                                .map(|v| v.invert())
                                .collect::<Result<Vec<_>>>()?;
                            Factor::Char(TorusCharacter::new(inv)?)
                        }
                    });
                }
                Some(out)
            }
            None => None,
        };
        Ok(GroupElement { mat, word })
    }

    /// conj(g, h) = g h g^{-1}, the mapping i_g.
    pub fn conj(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        let gi = self.inv(g)?;
        self.mul(&self.mul(g, h)?, &gi)
    }

    /// True iff g is congruent to the identity entrywise mod J.
    pub fn is_radical_congruent(&self, g: &GroupElement) -> bool {
        g.mat.is_radical_congruent()
    }

    /// The same rank tables over the residue ring.
    pub fn residue_group(&self) -> Group {
        Group { ch: self.ch.clone(), ring: RingValue::residue_ring(&self.ring) }
    }

    pub fn residue(&self, g: &GroupElement) -> GroupElement {
        GroupElement { mat: g.mat.residue(), word: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingCtx;
    use crate::roots::SignedRoot as S;
    use crate::sample;

    fn group(l: usize, ring: Ring) -> Group {
        Group::new(Arc::new(Chevalley::new(l).unwrap()), ring)
    }

    fn rings() -> Vec<Ring> {
        alloc::vec![
            RingCtx::prime_field(7).unwrap(),
            RingCtx::zmod(3, 2).unwrap(),
            RingCtx::zmod(3, 3).unwrap(),
            RingCtx::dual(7).unwrap(),
            RingCtx::zlocal(5).unwrap(),
        ]
    }

    #[test]
    fn one_parameter_property() {
        let mut rng = sample::Rng::new(11);
        for ring in rings() {
            for l in [2usize, 3] {
                let gp = group(l, ring.clone());
                for s in gp.ch.rs().all_signed().collect::<Vec<_>>() {
                    let t = sample::element(&ring, &mut rng);
                    let u = sample::element(&ring, &mut rng);
                    let lhs = gp.mul(&gp.x_elem(s, &t), &gp.x_elem(s, &u)).unwrap();
                    let rhs = gp.x_elem(s, &t.add(&u));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn x_at_zero_is_identity() {
        let gp = group(2, RingCtx::zmod(3, 2).unwrap());
        let z = gp.ring.zero();
        assert!(gp.x_elem(S::pos(0), &z).mat.is_identity());
    }

    #[test]
    fn h_is_w_quotient_and_multiplicative() {
        let mut rng = sample::Rng::new(5);
        for ring in rings() {
            let gp = group(3, ring.clone());
            for s in [S::pos(0), S::pos(2), S::pos(8)] {
                let t = sample::unit(&ring, &mut rng);
                let wt = gp.w_elem(s, &t).unwrap();
                let w1i = gp.inv(&gp.w_elem(s, &gp.ring.one()).unwrap()).unwrap();
                assert_eq!(gp.mul(&wt, &w1i).unwrap(), gp.h_elem(s, &t).unwrap());
                let u = sample::unit(&ring, &mut rng);
                let lhs = gp
                    .mul(&gp.h_elem(s, &t).unwrap(), &gp.h_elem(s, &u).unwrap())
                    .unwrap();
                assert_eq!(lhs, gp.h_elem(s, &t.mul(&u)).unwrap());
            }
        }
    }

    #[test]
    fn w_has_order_four() {
        let gp = group(3, RingCtx::zmod(3, 3).unwrap());
        for i in 1..=3 {
            let s = gp.ch.rs().simple_signed(i);
            let w = gp.w_elem(s, &gp.ring.one()).unwrap();
            let w2 = gp.mul(&w, &w).unwrap();
            assert_eq!(w2, gp.h_elem(s, &gp.ring.from_i64(-1)).unwrap());
            let w4 = gp.mul(&w2, &w2).unwrap();
            assert!(w4.mat.is_identity());
            let winv = gp.w_elem(s, &gp.ring.from_i64(-1)).unwrap();
            assert!(gp.mul(&w, &winv).unwrap().mat.is_identity());
        }
    }

    #[test]
    fn determinants() {
        let mut rng = sample::Rng::new(9);
        for ring in rings() {
            let gp = group(2, ring.clone());
            let t = sample::element(&ring, &mut rng);
            assert!(gp.x_elem(S::pos(3), &t).mat.det().is_one());
            let w = gp.w_elem(S::pos(0), &gp.ring.one()).unwrap();
            let d = w.mat.det();
            assert!(d.is_one() || d.neg().is_one());
            let u = sample::unit(&ring, &mut rng);
            let chi = TorusCharacter::new(alloc::vec![u.clone(), u.mul(&u)]).unwrap();
            assert!(gp.h_char(&chi).unwrap().mat.det().is_unit());
        }
    }

    #[test]
    fn inverse_and_conj() {
        let mut rng = sample::Rng::new(23);
        let ring = RingCtx::zmod(5, 2).unwrap();
        let gp = group(2, ring.clone());
        let t = sample::element(&ring, &mut rng);
        let g = gp.x_elem(S::pos(1), &t);
        assert!(gp.mul(&g, &gp.inv(&g).unwrap()).unwrap().mat.is_identity());
        let h = gp.w_elem(S::pos(0), &gp.ring.one()).unwrap();
        assert_eq!(gp.conj(&gp.identity(), &h).unwrap(), h);
        // word inverse reproduces the matrix inverse
        let w = gp.mul(&g, &h).unwrap();
        let wi = gp.inv(&w).unwrap();
        let mut acc = gp.identity();
        for f in wi.word.clone().unwrap() {
            let e = match f {
                Factor::Unipotent { root, t } => gp.x_elem(root, &t),
                Factor::Weyl { root, t } => gp.w_elem(root, &t).unwrap(),
                Factor::Torus { root, t } => gp.h_elem(root, &t).unwrap(),
                Factor::Char(chi) => gp.h_char(&chi).unwrap(),
            };
            acc = gp.mul(&acc, &e).unwrap();
        }
        assert_eq!(acc, wi);
    }

    #[test]
    fn radical_congruence() {
        let ring = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, ring.clone());
        assert!(gp.is_radical_congruent(&gp.identity()));
        let j = ring.from_i64(3);
        assert!(gp.is_radical_congruent(&gp.x_elem(S::pos(0), &j)));
        let h = gp.h_elem(S::pos(0), &ring.from_i64(-1)).unwrap();
        assert!(!gp.is_radical_congruent(&h));
    }

    #[test]
    fn residue_commutes_with_constructors() {
        let mut rng = sample::Rng::new(31);
        for ring in rings() {
            let gp = group(2, ring.clone());
            let res_gp = gp.residue_group();
            let t = sample::element(&ring, &mut rng);
            for s in [S::pos(0), S::pos(1)] {
                let a = gp.residue(&gp.x_elem(s, &t));
                let b = res_gp.x_elem(s, &t.residue());
                assert_eq!(a, b);
            }
            let u = sample::unit(&ring, &mut rng);
            let a = gp.residue(&gp.h_elem(S::pos(0), &u).unwrap());
            let b = res_gp.h_elem(S::pos(0), &u.residue()).unwrap();
            assert_eq!(a, b);
            // and with multiplication / inversion
            let g1 = gp.x_elem(S::pos(2), &t);
            let g2 = gp.w_elem(S::pos(0), &gp.ring.one()).unwrap();
            let prod = gp.mul(&g1, &g2).unwrap();
            assert_eq!(
                gp.residue(&prod).mat,
                gp.residue(&g1).mat.mul(&gp.residue(&g2).mat).unwrap()
            );
            assert_eq!(
                gp.residue(&gp.inv(&prod).unwrap()).mat,
                gp.residue(&prod).mat.inverse().unwrap()
            );
        }
    }

    #[test]
    fn h_char_examples() {
        // l = 2, chi(a1) = 2, chi(a2) = 1 over Z/9: entry at v_{e1+e2} is 2
        let ring = RingCtx::zmod(3, 2).unwrap();
        let gp = group(2, ring.clone());
        let chi =
            TorusCharacter::new(alloc::vec![ring.from_i64(2), ring.from_i64(1)]).unwrap();
        let h = gp.h_char(&chi).unwrap();
        let p = gp.ch.basis.of_signed(S::pos(3)); // e1 + e2 = a1 + 2 a2
        assert_eq!(*h.mat.get(p, p), ring.from_i64(2));
        // chi == 1 gives the identity
        let one = TorusCharacter::new(alloc::vec![ring.one(), ring.one()]).unwrap();
        assert!(gp.h_char(&one).unwrap().mat.is_identity());
        // chi_{alpha,u} consistency
        let u = ring.from_i64(2);
        let chi = TorusCharacter::for_root(&gp, S::pos(0), &u).unwrap();
        assert_eq!(gp.h_char(&chi).unwrap(), gp.h_elem(S::pos(0), &u).unwrap());
    }
}
