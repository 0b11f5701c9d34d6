//! Chevalley basis of the Lie algebra of type B_l and the integral
//! matrices of the adjoint representation.
//!
//! The structure constants are extracted from the concrete realization
//! so(2l+1): long root vectors E_ij - E_{-j,-i} and friends, short root
//! vectors 2 E_{i,0} - E_{0,-i}. One calibration flip (the sign of
//! x_{+-e_l}) pins the basis so that the rank-3 adjoint matrices come
//! out entry-for-entry in the form the fixtures use.
//!
//! The adjoint module carries the weight-vector basis
//! v_{alpha_1}, v_{-alpha_1}, ..., v_{alpha_m}, v_{-alpha_m},
//! V_{h_1}, ..., V_{h_l}, where v_beta = -(beta,beta)/2 x_beta and
//! V_j = (alpha_j,alpha_j)/2 h_{alpha_j}. In that scaling the matrix
//! of ad x_alpha is integral with the entries
//!
//!   (v_{alpha+beta}, v_beta)  = N(alpha,beta) (beta,beta)/(alpha+beta,alpha+beta)
//!   (V_j, v_{-alpha})         = -c_j(alpha)        [alpha_j-coefficient]
//!   (v_alpha, V_j)            = 2 (alpha_j, alpha)/(alpha,alpha)
//!
//! and the group generators are x_alpha(t) = exp(t ad x_alpha).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::roots::{Root, RootSystem, SignedRoot};
use crate::{Error, Result};

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    n: usize,
    a: Vec<i64>,
}

impl IMat {
    pub fn zero(n: usize) -> Self {
        IMat { n, a: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.a[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.a[r * self.n + c] = v;
    }

    pub fn add(&self, other: &IMat) -> IMat {
        debug_assert_eq!(self.n, other.n);
        IMat {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        debug_assert_eq!(self.n, other.n);
        IMat {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> IMat {
        IMat { n: self.n, a: self.a.iter().map(|x| x * k).collect() }
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IMat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let v = self.get(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    let w = other.get(k, j);
                    if w != 0 {
                        out.a[i * n + j] += v * w;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| *x == 0)
    }

    /// Entries halved, asserting evenness.
    pub fn halved(&self) -> IMat {
        IMat {
            n: self.n,
            a: self
                .a
                .iter()
                .map(|x| {
                    debug_assert!(x % 2 == 0, "divided power must be integral");
                    x / 2
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let n = self.n;
        self.a
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(move |(i, v)| (i / n, i % n, *v))
    }

    /// Extract the square block at rows/cols [lo, lo + k).
    pub fn block(&self, lo: usize, k: usize) -> IMat {
        let mut out = IMat::zero(k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(lo + i, lo + j));
            }
        }
        out
    }
}

/// Index bookkeeping for the adjoint basis.
#[derive(Debug, Clone, Copy)]
pub struct BasisIndex {
    pub rank: usize,
    pub m: usize,
    pub n: usize,
}

impl BasisIndex {
    pub fn new(rank: usize) -> Self {
        let m = rank * rank;
        BasisIndex { rank, m, n: rank + 2 * m }
    }

    pub fn of_signed(&self, s: SignedRoot) -> usize {
        2 * s.idx + usize::from(s.neg)
    }

    /// Position of V_{h_j}, 1-based j.
    pub fn of_h(&self, j: usize) -> usize {
        2 * self.m + (j - 1)
    }

    pub fn to_signed(&self, pos: usize) -> Option<SignedRoot> {
        if pos < 2 * self.m {
            Some(SignedRoot { idx: pos / 2, neg: pos % 2 == 1 })
        } else {
            None
        }
    }

    pub fn label(&self, pos: usize) -> String {
        match self.to_signed(pos) {
            Some(s) if s.neg => format!("-a{}", s.idx + 1),
            Some(s) => format!("a{}", s.idx + 1),
            None => format!("h{}", pos - 2 * self.m + 1),
        }
    }

    pub fn parse_label(&self, s: &str) -> Option<usize> {
        if let Some(rest) = s.strip_prefix("h") {
            let j: usize = rest.parse().ok()?;
            if j >= 1 && j <= self.rank {
                return Some(self.of_h(j));
            }
            return None;
        }
        let (neg, rest) = match s.strip_prefix("-a") {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix("a")?),
        };
        let i: usize = rest.parse().ok()?;
        if i >= 1 && i <= self.m {
            Some(self.of_signed(SignedRoot { idx: i - 1, neg }))
        } else {
            None
        }
    }
}

// --- the so(2l+1) realization -------------------------------------------

/// Matrix-unit index set {0, 1..l, -1..-l} flattened to 0..2l.
fn so_pos(l: usize, i: i64) -> usize {
    if i == 0 {
        0
    } else if i > 0 {
        i as usize
    } else {
        l + (-i) as usize
    }
}

fn so_unit(l: usize, r: i64, c: i64) -> IMat {
    let mut m = IMat::zero(2 * l + 1);
    m.set(so_pos(l, r), so_pos(l, c), 1);
    m
}

/// Chevalley root vector of so(2l+1) for the given root, including the
/// calibration flip of x_{+-e_l}.
fn so_root_vector(l: usize, root: &Root) -> IMat {
    let c = root.coords();
    let nz: Vec<(usize, i32)> = c
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != 0)
        .map(|(i, v)| (i + 1, *v))
        .collect();
    let m = match nz.as_slice() {
        // short roots +-e_i
        [(i, 1)] => {
            let i = *i as i64;
            so_unit(l, i, 0).scale(2).sub(&so_unit(l, 0, -i))
        }
        [(i, -1)] => {
            let i = *i as i64;
            so_unit(l, 0, i).sub(&so_unit(l, -i, 0).scale(2))
        }
        // e_i - e_j and e_j - e_i
        [(i, 1), (j, -1)] => so_unit(l, *i as i64, *j as i64)
            .sub(&so_unit(l, -(*j as i64), -(*i as i64))),
        [(i, -1), (j, 1)] => so_unit(l, *j as i64, *i as i64)
            .sub(&so_unit(l, -(*i as i64), -(*j as i64))),
        // e_i + e_j (i < j) and its negative
        [(i, 1), (j, 1)] => so_unit(l, *i as i64, -(*j as i64))
            .sub(&so_unit(l, *j as i64, -(*i as i64))),
        [(i, -1), (j, -1)] => so_unit(l, -(*j as i64), *i as i64)
            .sub(&so_unit(l, -(*i as i64), *j as i64)),
        _ => unreachable!("not a B_l root"),
    };
    // calibration: flip the short simple pair x_{+-e_l} (pins the
    // rank-3 adjoint matrices to the fixture sign convention) and the
    // maximal-root pair x_{+-(e_1+e_2)} (pins the w_2 fixture signs on
    // the (a8, a9) string)
    let is_el = nz.len() == 1 && nz[0].0 == l;
    let is_max = matches!(nz.as_slice(), [(1, 1), (2, 1)] | [(1, -1), (2, -1)]);
    if is_el || is_max {
        m.scale(-1)
    } else {
        m
    }
}

/// Coroot matrix h_{alpha_j} of so(2l+1), 1-based j.
fn so_coroot(l: usize, j: usize) -> IMat {
    if j < l {
        let (j, j1) = (j as i64, j as i64 + 1);
        so_unit(l, j, j)
            .sub(&so_unit(l, j1, j1))
            .sub(&so_unit(l, -j, -j))
            .add(&so_unit(l, -j1, -j1))
    } else {
        let j = j as i64;
        so_unit(l, j, j).sub(&so_unit(l, -j, -j)).scale(2)
    }
}

fn commutator(a: &IMat, b: &IMat) -> IMat {
    a.mul(b).sub(&b.mul(a))
}

/// Express `m` as an integer multiple of the nonzero matrix `unit`,
/// if it is one.
fn as_multiple(m: &IMat, unit: &IMat) -> Option<i64> {
    let (r, c, v) = unit.entries().next()?;
    let k = m.get(r, c);
    if v != 0 && k % v == 0 && *m == unit.scale(k / v) {
        Some(k / v)
    } else {
        None
    }
}

// --- structure constants and adjoint matrices ---------------------------

/// Structure-constant table and the integral adjoint matrices for B_l.
#[derive(Debug, Clone)]
pub struct Chevalley {
    rs: RootSystem,
    pub basis: BasisIndex,
    /// N(a, b) for signed roots (by basis position), where a + b is a root.
    n_table: Vec<Vec<Option<i64>>>,
    /// Matrices of ad x_alpha per signed root, basis position order.
    /// These are also the exponential generators: x_alpha(t) is
    /// 1 + t ad + t^2 ad^2/2.
    ad: Vec<IMat>,
    ad_sq_half: Vec<IMat>,
}

impl Chevalley {
    pub fn new(rank: usize) -> Result<Self> {
        let rs = RootSystem::new(rank)?;
        let basis = BasisIndex::new(rank);
        let m = basis.m;

        // structure constants out of so(2l+1)
        let so_x: Vec<IMat> = (0..2 * m)
            .map(|p| {
                let s = basis.to_signed(p).unwrap();
                so_root_vector(rank, &rs.root_of(s))
            })
            .collect();
        let mut n_table = vec![vec![None; 2 * m]; 2 * m];
        for pa in 0..2 * m {
            let sa = basis.to_signed(pa).unwrap();
            let ra = rs.root_of(sa);
            for pb in 0..2 * m {
                let sb = basis.to_signed(pb).unwrap();
                let rb = rs.root_of(sb);
                let sum = ra.add(&rb);
                if sum.is_zero() || !sum.is_root() {
                    continue;
                }
                let target = rs.signed_index_of(&sum).expect("closed under root sums");
                let com = commutator(&so_x[pa], &so_x[pb]);
                let k = as_multiple(&com, &so_x[basis.of_signed(target)])
                    .expect("bracket lands in the target root space");
                n_table[pa][pb] = Some(k);
            }
        }

        // integral ad matrices in the scaled weight basis
        let mut ad = Vec::with_capacity(2 * m);
        for pa in 0..2 * m {
            let sa = basis.to_signed(pa).unwrap();
            let ra = rs.root_of(sa);
            let mut x = IMat::zero(basis.n);
            for pb in 0..2 * m {
                let sb = basis.to_signed(pb).unwrap();
                let rb = rs.root_of(sb);
                let sum = ra.add(&rb);
                if let Some(nval) = n_table[pa][pb] {
                    let target = rs.signed_index_of(&sum).unwrap();
                    let num = nval * rb.norm2() as i64;
                    let den = sum.norm2() as i64;
                    debug_assert!(num % den == 0, "scaled entry must be integral");
                    x.set(basis.of_signed(target), pb, num / den);
                }
            }
            // column of v_{-alpha}: -(alpha_j-coefficients of alpha)
            let coeffs = rs.coeffs_of(sa);
            for j in 1..=rank {
                let v = -i64::from(coeffs[j - 1]);
                if v != 0 {
                    x.set(basis.of_h(j), basis.of_signed(sa.opposite()), v);
                }
            }
            // columns of V_j: 2 (alpha_j, alpha)/(alpha, alpha)
            for j in 1..=rank {
                let v = 2 * rs.simple(j).dot(&ra) as i64 / ra.norm2() as i64;
                if v != 0 {
                    x.set(pa, basis.of_h(j), v);
                }
            }
            ad.push(x);
        }

        let ad_sq_half: Vec<IMat> = ad.iter().map(|g| g.mul(g).halved()).collect();
        Ok(Chevalley { rs, basis, n_table, ad, ad_sq_half })
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    /// N(a, b) with [x_a, x_b] = N(a, b) x_{a+b}, when a + b is a root.
    pub fn structure_constant(&self, a: SignedRoot, b: SignedRoot) -> Option<i64> {
        self.n_table[self.basis.of_signed(a)][self.basis.of_signed(b)]
    }

    /// Matrix of ad x_alpha in the scaled weight basis.
    pub fn ad_matrix(&self, s: SignedRoot) -> &IMat {
        &self.ad[self.basis.of_signed(s)]
    }

    /// Matrix of ad x_alpha for an arbitrary root vector.
    pub fn ad_matrix_of_root(&self, r: &Root) -> Result<&IMat> {
        let s = self.rs.signed_index_of(r).ok_or(Error::NotARoot)?;
        Ok(self.ad_matrix(s))
    }

    /// The exponential generator: x_alpha(t) = 1 + t M + t^2 M^2/2
    /// with M = ad x_alpha.
    pub fn gen_matrix(&self, s: SignedRoot) -> &IMat {
        &self.ad[self.basis.of_signed(s)]
    }

    /// (ad x_alpha)^2 / 2, integral by the divided-power property.
    pub fn gen_matrix_sq_half(&self, s: SignedRoot) -> &IMat {
        &self.ad_sq_half[self.basis.of_signed(s)]
    }

    /// The weight-coefficient diagonal T_i: entry c_i(beta) at v_beta,
    /// zero on the V block.
    pub fn coefficient_diagonal(&self, i: usize) -> IMat {
        let mut t = IMat::zero(self.basis.n);
        for s in self.rs.all_signed() {
            let p = self.basis.of_signed(s);
            t.set(p, p, i64::from(self.rs.coeffs_of(s)[i - 1]));
        }
        t
    }

    /// x_alpha(t) over the integers.
    pub fn x_int(&self, s: SignedRoot, t: i64) -> IMat {
        let g = self.gen_matrix(s);
        let g2 = self.gen_matrix_sq_half(s);
        IMat::identity(self.basis.n).add(&g.scale(t)).add(&g2.scale(t * t))
    }

    /// w_alpha(1) = x_alpha(1) x_{-alpha}(-1) x_alpha(1) over the integers.
    pub fn w_int(&self, s: SignedRoot) -> IMat {
        self.x_int(s, 1).mul(&self.x_int(s.opposite(), -1)).mul(&self.x_int(s, 1))
    }

    /// h_{alpha}(-1): diagonal with (-1)^<beta, alpha> at v_beta.
    pub fn h_int_m1(&self, s: SignedRoot) -> IMat {
        let alpha = self.rs.root_of(s);
        let mut d = IMat::identity(self.basis.n);
        for b in self.rs.all_signed() {
            let beta = self.rs.root_of(b);
            let k = self.rs.pairing(&beta, &alpha);
            let p = self.basis.of_signed(b);
            d.set(p, p, if k % 2 == 0 { 1 } else { -1 });
        }
        d
    }

    /// The l x l Cartan block of w_{alpha_i}(1), the "w tilde" matrices.
    pub fn weyl_cartan_block(&self, i: usize) -> IMat {
        let w = self.w_int(self.rs.simple_signed(i));
        w.block(2 * self.basis.m, self.rank())
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }
}
