//! The root system of type B_l.
//!
//! Roots live in Z^l in the orthonormal e_i basis: the long roots are
//! +-e_i +- e_j (i < j) and the short roots are +-e_i. Simple roots are
//! alpha_1 = e_1 - e_2, ..., alpha_{l-1} = e_{l-1} - e_l, alpha_l = e_l.
//! Positive roots are listed in a fixed total order (height, then
//! lexicographically decreasing coordinates), which for l = 3 is exactly
//! the numbering alpha_1 ... alpha_9 used by the rank-3 fixtures.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A root as an exact integer coordinate vector in the e_i basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    coords: Vec<i32>,
}

impl Root {
    pub fn new(coords: Vec<i32>) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Squared length: 2 for long roots, 1 for short.
    pub fn norm2(&self) -> i32 {
        self.coords.iter().map(|c| c * c).sum()
    }

    pub fn is_long(&self) -> bool {
        self.norm2() == 2
    }

    pub fn is_short(&self) -> bool {
        self.norm2() == 1
    }

    pub fn dot(&self, other: &Root) -> i32 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }

    /// True when the coordinates form a B_l root.
    pub fn is_root(&self) -> bool {
        self.norm2() == 1 || (self.norm2() == 2 && self.coords.iter().all(|c| c.abs() <= 1))
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().find(|c| **c != 0).is_some_and(|c| *c > 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            match (*c, first) {
                (0, _) => continue,
                (1, true) => write!(f, "e{}", i + 1)?,
                (-1, true) => write!(f, "-e{}", i + 1)?,
                (1, false) => write!(f, "+e{}", i + 1)?,
                (-1, false) => write!(f, "-e{}", i + 1)?,
                _ => unreachable!("B_l coordinates are -1, 0, 1"),
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A signed reference into the positive-root list of a [`RootSystem`]:
/// `idx` indexes the positive roots, `neg` selects the negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedRoot {
    pub idx: usize,
    pub neg: bool,
}

impl SignedRoot {
    pub fn pos(idx: usize) -> Self {
        SignedRoot { idx, neg: false }
    }

    pub fn negv(idx: usize) -> Self {
        SignedRoot { idx, neg: true }
    }

    pub fn opposite(self) -> Self {
        SignedRoot { idx: self.idx, neg: !self.neg }
    }
}

/// The complete B_l root system with its fixed positive-root order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rank: usize,
    positive: Vec<Root>,
    simple_indices: Vec<usize>,
    /// coefficient vectors: positive[i] = sum_j coeff[i][j] alpha_j
    coeffs: Vec<Vec<i32>>,
}

fn height_order_key(r: &Root, coeffs: &[i32]) -> (i32, Vec<i32>) {
    let height: i32 = coeffs.iter().sum();
    // lexicographically decreasing coordinates within a height class
    (height, r.coords().iter().map(|c| -c).collect())
}

/// Simple-root coefficients of an arbitrary vector in the e basis.
fn simple_coeffs(coords: &[i32]) -> Vec<i32> {
    // e_i = alpha_i + ... + alpha_{l-1} + alpha_l, so the alpha_j
    // coefficient of sum b_i e_i is b_1 + ... + b_j for j < l and
    // b_1 + ... + b_l for j = l.
    let l = coords.len();
    let mut out = Vec::with_capacity(l);
    let mut acc = 0;
    for (j, b) in coords.iter().enumerate() {
        acc += b;
        let _ = j;
        out.push(acc);
    }
    out
}

impl RootSystem {
    /// Enumerate the B_l system for rank l >= 2.
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankTooSmall(rank));
        }
        let mut positive: Vec<Root> = Vec::new();
        for i in 0..rank {
            let mut c = alloc::vec![0i32; rank];
            c[i] = 1;
            positive.push(Root::new(c)); // e_i
            for j in (i + 1)..rank {
                for s in [-1i32, 1] {
                    let mut c = alloc::vec![0i32; rank];
                    c[i] = 1;
                    c[j] = s;
                    positive.push(Root::new(c)); // e_i +- e_j
                }
            }
        }
        positive.sort_by_key(|r| height_order_key(r, &simple_coeffs(r.coords())));
        let coeffs: Vec<Vec<i32>> = positive.iter().map(|r| simple_coeffs(r.coords())).collect();
        let simple_indices = (0..rank)
            .map(|j| {
                positive
                    .iter()
                    .position(|r| {
                        let c = simple_coeffs(r.coords());
                        c.iter().sum::<i32>() == 1 && c[j] == 1
                    })
                    .expect("simple roots are positive roots")
            })
            .collect();
        Ok(RootSystem { rank, positive, simple_indices, coeffs })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots, m = l^2.
    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    /// Dimension of the adjoint module, n = l + 2m.
    pub fn adjoint_dim(&self) -> usize {
        self.rank + 2 * self.num_positive()
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn positive(&self, idx: usize) -> &Root {
        &self.positive[idx]
    }

    pub fn root_of(&self, s: SignedRoot) -> Root {
        let r = &self.positive[s.idx];
        if s.neg { r.neg() } else { r.clone() }
    }

    /// The i-th simple root (1-based), alpha_i.
    pub fn simple(&self, i: usize) -> &Root {
        &self.positive[self.simple_indices[i - 1]]
    }

    pub fn simple_signed(&self, i: usize) -> SignedRoot {
        SignedRoot::pos(self.simple_indices[i - 1])
    }

    /// Index of a positive root in the fixed order.
    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.positive.iter().position(|p| p == r)
    }

    /// Signed index of an arbitrary root.
    pub fn signed_index_of(&self, r: &Root) -> Option<SignedRoot> {
        if r.is_positive() {
            self.index_of(r).map(SignedRoot::pos)
        } else {
            self.index_of(&r.neg()).map(SignedRoot::negv)
        }
    }

    /// Iterate all 2 l^2 roots as signed references.
    pub fn all_signed(&self) -> impl Iterator<Item = SignedRoot> + '_ {
        (0..self.num_positive())
            .flat_map(|i| [SignedRoot::pos(i), SignedRoot::negv(i)])
    }

    /// Simple-root coefficient vector of a signed root.
    pub fn coeffs_of(&self, s: SignedRoot) -> Vec<i32> {
        let c = &self.coeffs[s.idx];
        if s.neg { c.iter().map(|x| -x).collect() } else { c.clone() }
    }

    /// Coefficient of alpha_j (1-based) in the positive root idx.
    pub fn coeff(&self, idx: usize, j: usize) -> i32 {
        self.coeffs[idx][j - 1]
    }

    /// Cartan pairing <beta, alpha> = 2 (beta, alpha) / (alpha, alpha).
    pub fn pairing(&self, beta: &Root, alpha: &Root) -> i32 {
        2 * beta.dot(alpha) / alpha.norm2()
    }

    /// Reflection of beta in the hyperplane of alpha.
    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Root {
        let k = self.pairing(beta, alpha);
        let mut out = beta.clone();
        for (o, a) in out.coords.iter_mut().zip(alpha.coords()) {
            *o -= k * a;
        }
        out
    }

    /// The alpha-string through beta: maximal p, q >= 0 with
    /// beta - p alpha, ..., beta + q alpha all roots.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> (i32, i32) {
        let mut p = 0;
        let mut cur = beta.sub(alpha);
        while cur.is_root() {
            p += 1;
            cur = cur.sub(alpha);
        }
        let mut q = 0;
        let mut cur = beta.add(alpha);
        while cur.is_root() {
            q += 1;
            cur = cur.add(alpha);
        }
        (p, q)
    }

    /// The gamma sequence of 2l - 1 roots descending from the maximal
    /// root e_1 + e_2 by simple-root subtractions. For l >= 3 this is
    /// the chain e_1+e_2, e_1+e_3, ..., e_1+e_l, e_2+e_l, e_2,
    /// e_2-e_l, ..., e_2-e_3. The written pattern degenerates at
    /// l = 2, where the unique admissible chain is
    /// e_1+e_2, e_1, e_2 (subtracting alpha_2 then alpha_1).
    pub fn gamma_sequence(&self) -> Vec<Root> {
        let l = self.rank;
        let e = |i: usize| -> Vec<i32> {
            let mut c = alloc::vec![0i32; l];
            c[i - 1] = 1;
            c
        };
        let mut out = Vec::with_capacity(2 * l - 1);
        if l == 2 {
            out.push(Root::new(alloc::vec![1, 1]));
            out.push(Root::new(e(1)));
            out.push(Root::new(e(2)));
            return out;
        }
        for j in 2..=l {
            let mut c = e(1);
            c[j - 1] = 1;
            out.push(Root::new(c)); // e_1 + e_j
        }
        let mut c = e(2);
        c[l - 1] = 1;
        out.push(Root::new(c)); // e_2 + e_l
        out.push(Root::new(e(2))); // e_2
        for j in (3..=l).rev() {
            let mut c = e(2);
            c[j - 1] = -1;
            out.push(Root::new(c)); // e_2 - e_j, down to e_2 - e_3
        }
        out
    }

    /// Label such as "a4" / "-a4" for the signed root, matching the
    /// rank-3 numbering of the fixtures.
    pub fn label(&self, s: SignedRoot) -> String {
        use alloc::format;
        if s.neg {
            format!("-a{}", s.idx + 1)
        } else {
            format!("a{}", s.idx + 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn root(c: &[i32]) -> Root {
        Root::new(c.to_vec())
    }

    #[test]
    fn b3_order_matches_paper_numbering() {
        let rs = RootSystem::new(3).unwrap();
        let expect = [
            vec![1, -1, 0],
            vec![0, 1, -1],
            vec![0, 0, 1],
            vec![1, 0, -1],
            vec![0, 1, 0],
            vec![1, 0, 0],
            vec![0, 1, 1],
            vec![1, 0, 1],
            vec![1, 1, 0],
        ];
        assert_eq!(rs.num_positive(), 9);
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(rs.positive(i).coords(), &e[..], "alpha_{}", i + 1);
        }
    }

    #[test]
    fn b2_order() {
        let rs = RootSystem::new(2).unwrap();
        let expect = [vec![1, -1], vec![0, 1], vec![1, 0], vec![1, 1]];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(rs.positive(i).coords(), &e[..]);
        }
    }

    #[test]
    fn counts() {
        for l in 2..=5 {
            let rs = RootSystem::new(l).unwrap();
            assert_eq!(rs.num_positive(), l * l);
            assert_eq!(rs.adjoint_dim(), l + 2 * l * l);
        }
        assert_eq!(RootSystem::new(4).unwrap().num_positive() * 2, 32);
        assert!(RootSystem::new(1).is_err());
    }

    #[test]
    fn pairing_examples() {
        let rs = RootSystem::new(3).unwrap();
        let a1 = rs.simple(1).clone();
        let a2 = rs.simple(2).clone();
        assert_eq!(rs.pairing(&a1, &a1), 2);
        // <e_1 - e_2, e_2> = -2
        assert_eq!(rs.pairing(&root(&[1, -1, 0]), &root(&[0, 1, 0])), -2);
        assert_eq!(rs.pairing(&a1, &a2), -1);
    }

    #[test]
    fn reflect_examples() {
        let rs = RootSystem::new(3).unwrap();
        // s_{e_1 - e_2}(e_1) = e_2
        assert_eq!(rs.reflect(&root(&[1, -1, 0]), &root(&[1, 0, 0])), root(&[0, 1, 0]));
        // s_{alpha_2}(alpha_3) = e_2 for alpha_2 = e_2 - e_3, alpha_3 = e_3
        assert_eq!(rs.reflect(rs.simple(2), rs.simple(3)), root(&[0, 1, 0]));
        let a = root(&[0, 1, 1]);
        assert_eq!(rs.reflect(&a, &a), a.neg());
    }

    #[test]
    fn root_string_examples() {
        let rs = RootSystem::new(3).unwrap();
        // alpha = e_2, beta = e_1 - e_2: string e_1-e_2, e_1, e_1+e_2
        assert_eq!(rs.root_string(&root(&[0, 1, 0]), &root(&[1, -1, 0])), (0, 2));
        // orthogonal pair with no sums
        assert_eq!(rs.root_string(&root(&[1, -1, 0]), &root(&[0, 0, 1])), (0, 0));
        // alpha = e_1 - e_2, beta = e_2 - e_3
        assert_eq!(rs.root_string(&root(&[1, -1, 0]), &root(&[0, 1, -1])), (0, 1));
    }

    #[test]
    fn string_pairing_identity_exhaustive() {
        for l in 2..=5 {
            let rs = RootSystem::new(l).unwrap();
            let all: Vec<Root> = rs
                .all_signed()
                .map(|s| rs.root_of(s))
                .collect();
            for a in &all {
                for b in &all {
                    if a == b || *a == b.neg() {
                        continue;
                    }
                    let (p, q) = rs.root_string(a, b);
                    assert_eq!(p - q, rs.pairing(b, a), "{a} through {b}");
                }
            }
        }
    }

    #[test]
    fn reflections_preserve_roots() {
        let rs = RootSystem::new(4).unwrap();
        let all: Vec<Root> = rs.all_signed().map(|s| rs.root_of(s)).collect();
        for a in &all {
            for b in &all {
                let r = rs.reflect(a, b);
                assert!(r.is_root());
                assert_eq!(r.norm2(), b.norm2());
                assert_eq!(rs.reflect(a, &r), *b);
            }
        }
    }

    #[test]
    fn gamma_sequence_b3() {
        let rs = RootSystem::new(3).unwrap();
        let g = rs.gamma_sequence();
        let expect = [
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 1, 0],
            vec![0, 1, -1],
        ];
        assert_eq!(g.len(), 5);
        for (got, e) in g.iter().zip(expect.iter()) {
            assert_eq!(got.coords(), &e[..]);
        }
    }

    #[test]
    fn gamma_sequence_properties() {
        for l in 2..=5 {
            let rs = RootSystem::new(l).unwrap();
            let g = rs.gamma_sequence();
            assert_eq!(g.len(), 2 * l - 1);
            // gamma_1 is the maximal root: its coefficient vector
            // dominates every positive root's.
            let top = simple_coeffs(g[0].coords());
            for r in rs.positive_roots() {
                let c = simple_coeffs(r.coords());
                assert!(c.iter().zip(&top).all(|(a, b)| a <= b));
            }
            // e_1 + e_2 = alpha_1 + 2 alpha_2 + ... + 2 alpha_l
            let mut want = alloc::vec![2i32; l];
            want[0] = 1;
            assert_eq!(top, want);
            // last member is simple; consecutive differences simple,
            // the first l of them pairwise distinct
            assert_eq!(simple_coeffs(g.last().unwrap().coords()).iter().sum::<i32>(), 1);
            let mut subtracted = Vec::new();
            for w in g.windows(2) {
                let d = w[0].sub(&w[1]);
                let c = simple_coeffs(d.coords());
                assert_eq!(c.iter().sum::<i32>(), 1, "difference must be simple");
                subtracted.push(d);
            }
            let first_l = &subtracted[..l];
            for i in 0..l {
                for j in 0..i {
                    assert_ne!(first_l[i], first_l[j], "first l subtracted roots distinct");
                }
            }
            // coverage: every positive root is a gamma or a difference of
            // two gammas. True for l = 2, 3; fails from l = 4 on (the
            // statement's A_l/D_l wording does not transfer to B_l), so we
            // pin the counterexample instead.
            let uncovered: Vec<&Root> = rs
                .positive_roots()
                .iter()
                .filter(|r| {
                    !(g.contains(r)
                        || g.iter().any(|gi| g.iter().any(|gj| gi.sub(gj) == **r)))
                })
                .collect();
            if l <= 3 {
                assert!(uncovered.is_empty(), "uncovered roots at l={l}: {uncovered:?}");
            } else {
                let e2e3 = {
                    let mut c = alloc::vec![0i32; l];
                    c[1] = 1;
                    c[2] = 1;
                    Root::new(c)
                };
                assert!(uncovered.iter().any(|r| **r == e2e3));
            }
        }
    }

    #[test]
    fn coeff_vectors() {
        let rs = RootSystem::new(3).unwrap();
        // alpha_9 = e_1 + e_2 = alpha_1 + 2 alpha_2 + 2 alpha_3
        assert_eq!(rs.coeffs_of(SignedRoot::pos(8)), vec![1, 2, 2]);
        assert_eq!(rs.coeffs_of(SignedRoot::negv(8)), vec![-1, -2, -2]);
    }
}
