//! Radical-congruent products lambda * torus * positive * negative
//! unipotents, and their unique reconstruction from n + 1 designated
//! matrix positions.
//!
//! X = lambda t_{alpha_1}(s_1) ... t_{alpha_l}(s_l)
//!       x_{alpha_1}(t_1) ... x_{alpha_m}(t_m)
//!       x_{-alpha_1}(u_1) ... x_{-alpha_m}(u_m)
//!
//! with lambda, s_k in 1 + J and t_i, u_i in J. Reconstruction follows
//! the staged reading order along the gamma sequence: the diagonal
//! entries at (-gamma_r, -gamma_r) determine the torus data through
//! consecutive ratios, off-diagonal pairs determine the coefficients of
//! roots expressible as gamma_i - gamma_s, and h-block rows/columns
//! determine the rest. Nonlinear coupling is resolved by Jacobi-style
//! sweeps, which terminate within the radical nilpotency degree.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::algebra::Chevalley;
use crate::group::{Group, RMat, TorusCharacter};
use crate::ring::{RingOps, RingValue};
use crate::roots::SignedRoot;
use crate::{Error, Result};

/// The coefficient tuple (lambda, s_1..s_l, t_1..t_m, u_1..u_m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalCoefficients {
    pub lambda: RingValue,
    pub s: Vec<RingValue>,
    pub t: Vec<RingValue>,
    pub u: Vec<RingValue>,
}

impl RadicalCoefficients {
    /// All-trivial coefficients (composing to the identity).
    pub fn trivial(gp: &Group) -> Self {
        let (l, m) = (gp.ch.rank(), gp.ch.basis.m);
        RadicalCoefficients {
            lambda: gp.ring.one(),
            s: alloc::vec![gp.ring.one(); l],
            t: alloc::vec![gp.ring.zero(); m],
            u: alloc::vec![gp.ring.zero(); m],
        }
    }

    /// Shape and congruence invariants: counts, lambda and s in 1 + J,
    /// t and u in J.
    pub fn validate(&self, gp: &Group) -> Result<()> {
        let (l, m) = (gp.ch.rank(), gp.ch.basis.m);
        if self.s.len() != l || self.t.len() != m || self.u.len() != m {
            return Err(Error::InvalidCoefficients("length mismatch".to_string()));
        }
        let one = gp.ring.one();
        if !self.lambda.sub(&one).in_radical() {
            return Err(Error::InvalidCoefficients("lambda not in 1 + J".to_string()));
        }
        for (k, v) in self.s.iter().enumerate() {
            if !v.sub(&one).in_radical() {
                return Err(Error::InvalidCoefficients(alloc::format!(
                    "s_{} not in 1 + J",
                    k + 1
                )));
            }
        }
        for (k, v) in self.t.iter().enumerate() {
            if !v.in_radical() {
                return Err(Error::InvalidCoefficients(alloc::format!("t_{} not in J", k + 1)));
            }
        }
        for (k, v) in self.u.iter().enumerate() {
            if !v.in_radical() {
                return Err(Error::InvalidCoefficients(alloc::format!("u_{} not in J", k + 1)));
            }
        }
        Ok(())
    }
}

/// Evaluate the product. The torus factors collapse into one diagonal
/// h(chi) with chi(alpha_k) = s_k; lambda scales the whole matrix.
pub fn compose(gp: &Group, c: &RadicalCoefficients) -> Result<RMat> {
    c.validate(gp)?;
    let chi = TorusCharacter::new(c.s.clone())?;
    let mut mat = gp.h_char(&chi)?.mat;
    for (i, t) in c.t.iter().enumerate() {
        if !t.is_zero() {
            mat = mat.mul(&gp.x_elem(SignedRoot::pos(i), t).mat)?;
        }
    }
    for (i, u) in c.u.iter().enumerate() {
        if !u.is_zero() {
            mat = mat.mul(&gp.x_elem(SignedRoot::negv(i), u).mat)?;
        }
    }
    Ok(mat.scale(&c.lambda))
}

/// How a positive root's pair of coefficients is read off.
#[derive(Debug, Clone, Copy)]
enum Mechanism {
    /// root = gamma_i - gamma_s: t at (-gamma_s, -gamma_i) and u at
    /// (-gamma_i, -gamma_s).
    Stage { s: usize, i: usize },
    /// t at (V_jt, -root), u at (-root, V_ju). Used for the gammas
    /// themselves and for roots not expressible as a gamma difference
    /// (those exist from rank 4 on).
    HBlock { jt: usize, ju: usize },
}

/// The reading plan: gamma sequence, the simple roots subtracted along
/// its first l steps, and per-root mechanisms in stage order.
#[derive(Debug, Clone)]
struct Plan {
    /// positive-root indices of gamma_1 .. gamma_{2l-1}
    gamma: Vec<usize>,
    /// 1-based indices k_r of the simple roots gamma_r - gamma_{r+1}
    subtracted: Vec<usize>,
    order: Vec<(usize, Mechanism)>,
}

fn build_plan(ch: &Chevalley) -> Plan {
    let rs = ch.rs();
    let l = ch.rank();
    let gseq = rs.gamma_sequence();
    let gamma: Vec<usize> = gseq
        .iter()
        .map(|g| rs.index_of(g).expect("gammas are positive roots"))
        .collect();
    let subtracted: Vec<usize> = (0..l)
        .map(|r| {
            let d = gseq[r].sub(&gseq[r + 1]);
            rs.index_of(&d).expect("difference is simple") + 1
        })
        .collect();
    let gamma_set: Vec<bool> = {
        let mut v = alloc::vec![false; rs.num_positive()];
        for g in &gamma {
            v[*g] = true;
        }
        v
    };
    let mut order: Vec<(usize, Mechanism)> = Vec::new();
    let mut covered = alloc::vec![false; rs.num_positive()];
    for s in 1..gamma.len() {
        for i in 0..s {
            let d = gseq[i].sub(&gseq[s]);
            if !d.is_root() {
                continue;
            }
            let idx = rs.index_of(&d).expect("positive difference of gammas");
            if gamma_set[idx] || covered[idx] {
                continue;
            }
            covered[idx] = true;
            order.push((idx, Mechanism::Stage { s, i }));
        }
    }
    for idx in 0..rs.num_positive() {
        if covered[idx] {
            continue;
        }
        let root = rs.positive(idx);
        let jt = (1..=l)
            .find(|j| rs.coeff(idx, *j) != 0)
            .expect("positive roots have a nonzero coefficient");
        let ju = (1..=l)
            .find(|j| rs.simple(*j).dot(root) != 0)
            .expect("some simple root pairs nontrivially");
        order.push((idx, Mechanism::HBlock { jt, ju }));
    }
    Plan { gamma, subtracted, order }
}

/// The n + 1 designated (row, col) basis positions of the lemma, in
/// reading order: the l + 1 diagonal positions (-gamma_r, -gamma_r),
/// then the coefficient pair of every positive root.
pub fn designated_positions(ch: &Chevalley) -> Vec<(usize, usize)> {
    let plan = build_plan(ch);
    let b = ch.basis;
    let l = ch.rank();
    let neg = |idx: usize| b.of_signed(SignedRoot::negv(idx));
    let mut out = Vec::new();
    for r in 0..=l {
        out.push((neg(plan.gamma[r]), neg(plan.gamma[r])));
    }
    for (idx, mech) in &plan.order {
        match mech {
            Mechanism::Stage { s, i } => {
                out.push((neg(plan.gamma[*s]), neg(plan.gamma[*i]))); // t position
                out.push((neg(plan.gamma[*i]), neg(plan.gamma[*s]))); // u position
            }
            Mechanism::HBlock { jt, ju } => {
                out.push((b.of_h(*jt), neg(*idx)));
                out.push((neg(*idx), b.of_h(*ju)));
            }
        }
    }
    out
}

/// d_mu = lambda * chi(mu) at the weight mu = -gamma_r.
fn d_at(gp: &Group, c: &RadicalCoefficients, root_idx: usize) -> RingValue {
    let coeffs = gp.ch.rs().coeffs_of(SignedRoot::negv(root_idx));
    let mut out = c.lambda.clone();
    for (k, e) in coeffs.iter().enumerate() {
        out = out.mul(&c.s[k].pow_i64(i64::from(*e)).expect("s_k is a unit"));
    }
    out
}

/// Reconstruct the unique coefficients with compose(c) = X. Requires a
/// nilpotent radical or a field; X must be congruent to the identity
/// modulo J.
pub fn reconstruct(gp: &Group, x: &RMat) -> Result<RadicalCoefficients> {
    let nilp = match gp.ring.radical_nilpotency() {
        Some(n) => n,
        None => {
            return Err(Error::UnsupportedRing(
                "reconstruction needs a nilpotent radical or a field",
            ))
        }
    };
    if x.n() != gp.dim() {
        return Err(Error::Precondition("matrix dimension mismatch"));
    }
    if !x.is_radical_congruent() {
        return Err(Error::NotRadicalCongruent);
    }
    let plan = build_plan(&gp.ch);
    let b = gp.ch.basis;
    let l = gp.ch.rank();
    let neg = |idx: usize| b.of_signed(SignedRoot::negv(idx));

    let mut c = RadicalCoefficients::trivial(gp);
    let max_sweeps = nilp + 2;
    let mut done = false;
    for _ in 0..max_sweeps {
        let m = compose(gp, &c)?;
        if m == *x {
            done = true;
            break;
        }
        let mut next = c.clone();
        // torus data from the diagonal entries: the entry at
        // (-gamma_r, -gamma_r) is d_{-gamma_r} (1 + eps) with eps built
        // from products of t, u; correct with the current eps estimate.
        let mut d_hat = Vec::with_capacity(l + 1);
        for r in 0..=l {
            let pos = neg(plan.gamma[r]);
            let d_cur = d_at(gp, &c, plan.gamma[r]);
            let eps_factor = m.get(pos, pos).mul(&d_cur.invert()?); // = 1 + eps
            d_hat.push(x.get(pos, pos).mul(&eps_factor.invert()?));
        }
        for r in 0..l {
            // d_{-gamma_r} / d_{-gamma_{r+1}} = s_{k_r}^{-1}
            next.s[plan.subtracted[r] - 1] = d_hat[r + 1].mul(&d_hat[r].invert()?);
        }
        // lambda = d_{-gamma_1} * prod s_k^{c_k(gamma_1)}
        let mut lam = d_hat[0].clone();
        for (k, e) in gp
            .ch
            .rs()
            .coeffs_of(SignedRoot::pos(plan.gamma[0]))
            .iter()
            .enumerate()
        {
            lam = lam.mul(&next.s[k].pow_i64(i64::from(*e))?);
        }
        next.lambda = lam;
        // unipotent coefficients, in stage order
        for (idx, mech) in &plan.order {
            let (t_pos, u_pos, t_row, u_row) = match mech {
                Mechanism::Stage { s, i } => (
                    (neg(plan.gamma[*s]), neg(plan.gamma[*i])),
                    (neg(plan.gamma[*i]), neg(plan.gamma[*s])),
                    Some(plan.gamma[*s]),
                    Some(plan.gamma[*i]),
                ),
                Mechanism::HBlock { jt, ju } => {
                    ((b.of_h(*jt), neg(*idx)), (neg(*idx), b.of_h(*ju)), None, None)
                }
            };
            // pivot integer coefficients from the generator matrices
            let t_piv = gp.ch.gen_matrix(SignedRoot::pos(*idx)).get(t_pos.0, t_pos.1);
            let u_piv = gp.ch.gen_matrix(SignedRoot::negv(*idx)).get(u_pos.0, u_pos.1);
            debug_assert!(t_piv != 0 && u_piv != 0, "designated pivot must be nonzero");
            // row scaling: rows in the root block carry d_mu, rows in
            // the h block carry plain lambda
            let t_scale = match t_row {
                Some(g) => d_at(gp, &c, g),
                None => c.lambda.clone(),
            };
            let u_scale = match u_row {
                Some(g) => d_at(gp, &c, g),
                None => c.lambda.clone(),
            };
            let dt = x.get(t_pos.0, t_pos.1).sub(m.get(t_pos.0, t_pos.1));
            let du = x.get(u_pos.0, u_pos.1).sub(m.get(u_pos.0, u_pos.1));
            next.t[*idx] = c.t[*idx].add(&dt.mul(&t_scale.mul_i64(t_piv).invert()?));
            next.u[*idx] = c.u[*idx].add(&du.mul(&u_scale.mul_i64(u_piv).invert()?));
        }
        if next == c {
            break;
        }
        c = next;
    }
    if !done && compose(gp, &c)? != *x {
        return Err(Error::ReconstructionMismatch);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingCtx;
    use crate::sample;
    use alloc::sync::Arc;

    fn group(l: usize, ring: crate::ring::Ring) -> Group {
        Group::new(Arc::new(Chevalley::new(l).unwrap()), ring)
    }

    fn random_coeffs(gp: &Group, rng: &mut sample::Rng) -> RadicalCoefficients {
        let (l, m) = (gp.ch.rank(), gp.ch.basis.m);
        RadicalCoefficients {
            lambda: sample::one_plus_radical(&gp.ring, rng),
            s: (0..l).map(|_| sample::one_plus_radical(&gp.ring, rng)).collect(),
            t: (0..m).map(|_| sample::radical(&gp.ring, rng)).collect(),
            u: (0..m).map(|_| sample::radical(&gp.ring, rng)).collect(),
        }
    }

    #[test]
    fn designated_position_counts() {
        for l in 2..=5 {
            let ch = Chevalley::new(l).unwrap();
            let pos = designated_positions(&ch);
            assert_eq!(pos.len(), ch.basis.n + 1, "count is n + 1 at rank {l}");
            for (a, p) in pos.iter().enumerate() {
                for q in &pos[a + 1..] {
                    assert_ne!(p, q, "positions pairwise distinct");
                }
            }
            // first position is the diagonal at -gamma_1
            let b = ch.basis;
            let g1 = ch.rs().index_of(&ch.rs().gamma_sequence()[0]).unwrap();
            let p1 = b.of_signed(crate::roots::SignedRoot::negv(g1));
            assert_eq!(pos[0], (p1, p1));
        }
    }

    #[test]
    fn compose_trivial_and_single() {
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        let c = RadicalCoefficients::trivial(&gp);
        assert!(compose(&gp, &c).unwrap().is_identity());
        // only u_1 = j nonzero: product is x_{-alpha_1}(j)
        let mut c = RadicalCoefficients::trivial(&gp);
        let j = gp.ring.from_i64(3);
        c.u[0] = j.clone();
        assert_eq!(compose(&gp, &c).unwrap(), gp.x_elem(SignedRoot::negv(0), &j).mat);
    }

    #[test]
    fn compose_is_radical_congruent() {
        let mut rng = sample::Rng::new(27);
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        for _ in 0..10 {
            let c = random_coeffs(&gp, &mut rng);
            assert!(compose(&gp, &c).unwrap().is_radical_congruent());
        }
    }

    #[test]
    fn reconstruct_identity_and_single_factor() {
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        let id = RMat::identity(&gp.ring, gp.dim());
        let c = reconstruct(&gp, &id).unwrap();
        assert_eq!(c, RadicalCoefficients::trivial(&gp));
        // X = x_{alpha_1}(3) over Z/27
        let j = gp.ring.from_i64(3);
        let x = gp.x_elem(SignedRoot::pos(0), &j).mat;
        let c = reconstruct(&gp, &x).unwrap();
        let mut expect = RadicalCoefficients::trivial(&gp);
        expect.t[0] = j;
        assert_eq!(c, expect);
    }

    #[test]
    fn round_trip_z27_and_dual() {
        let mut rng = sample::Rng::new(99);
        for ring in [RingCtx::zmod(3, 3).unwrap(), RingCtx::dual(7).unwrap()] {
            for l in [2usize, 3] {
                let gp = group(l, ring.clone());
                for _ in 0..25 {
                    let c = random_coeffs(&gp, &mut rng);
                    let x = compose(&gp, &c).unwrap();
                    let back = reconstruct(&gp, &x).unwrap();
                    assert_eq!(back, c, "round trip at rank {l}");
                }
            }
        }
    }

    #[test]
    fn round_trip_rank4() {
        // beyond the gamma-coverage break at l = 4, the h-block
        // fallback keeps reconstruction total
        let mut rng = sample::Rng::new(7);
        let gp = group(4, RingCtx::zmod(3, 2).unwrap());
        for _ in 0..5 {
            let c = random_coeffs(&gp, &mut rng);
            let x = compose(&gp, &c).unwrap();
            assert_eq!(reconstruct(&gp, &x).unwrap(), c);
        }
    }

    #[test]
    fn reconstruct_rejections() {
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        // non-congruent input
        let h = gp.h_elem(SignedRoot::pos(0), &gp.ring.from_i64(-1)).unwrap();
        assert_eq!(reconstruct(&gp, &h.mat), Err(Error::NotRadicalCongruent));
        // non-nilpotent radical
        let gpz = group(2, RingCtx::zlocal(5).unwrap());
        let id = RMat::identity(&gpz.ring, gpz.dim());
        assert!(matches!(reconstruct(&gpz, &id), Err(Error::UnsupportedRing(_))));
        // field: identity is the unique radical-congruent element
        let gpf = group(2, RingCtx::prime_field(7).unwrap());
        let idf = RMat::identity(&gpf.ring, gpf.dim());
        assert_eq!(reconstruct(&gpf, &idf).unwrap(), RadicalCoefficients::trivial(&gpf));
    }

    #[test]
    fn injectivity_on_designated_positions() {
        let mut rng = sample::Rng::new(55);
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        let pos = designated_positions(&gp.ch);
        for _ in 0..10 {
            let c1 = random_coeffs(&gp, &mut rng);
            let c2 = random_coeffs(&gp, &mut rng);
            if c1 == c2 {
                continue;
            }
            let x1 = compose(&gp, &c1).unwrap();
            let x2 = compose(&gp, &c2).unwrap();
            let differ = pos.iter().any(|(r, cc)| x1.get(*r, *cc) != x2.get(*r, *cc));
            assert!(differ, "distinct tuples differ on a designated position");
        }
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let gp = group(2, RingCtx::zmod(3, 3).unwrap());
        let mut c = RadicalCoefficients::trivial(&gp);
        c.t[0] = gp.ring.from_i64(2); // a unit, not in J
        assert!(compose(&gp, &c).is_err());
    }
}
