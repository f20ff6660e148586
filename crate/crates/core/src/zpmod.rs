//! Integral representations of `Z/p` and their (Tate) cohomology.
//!
//! A module is a lattice `Z^n` with the action of a fixed generator `t` given
//! by an `n × n` integer matrix `A` with `A^p = I`.

use crate::abelian::{is_prime, FGAbelianGroup};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{cokernel_structure, pure_kernel, IntMatrix};

/// Default ceiling on the rank of an exterior power.
pub const DEFAULT_MAX_EXT_DIM: u128 = 20_000;

/// Reads `CRYSTALK_MAX_EXT_DIM`, falling back to [`DEFAULT_MAX_EXT_DIM`].
pub fn max_exterior_dim() -> u128 {
    std::env::var("CRYSTALK_MAX_EXT_DIM")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_EXT_DIM)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A `Z[Z/p]`-module, torsion-free as an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZpModule {
    p: u64,
    action: IntMatrix,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

impl ZpModule {
    /// Validates that `action` is square with `action^p = I`.
    pub fn new(p: u64, action: IntMatrix) -> Result<Self> {
        check_prime(p)?;
        if !action.is_square() {
            return Err(Error::Shape(format!("action is {}x{}, expected square", action.rows(), action.cols())));
        }
        if !action.pow(p as u32).is_identity() {
            return Err(Error::WrongOrder(format!("action^{p} is not the identity")));
        }
        Ok(ZpModule { p, action })
    }

    pub(crate) fn new_unchecked(p: u64, action: IntMatrix) -> Self {
        ZpModule { p, action }
    }

    pub fn trivial(p: u64, rank: usize) -> Result<Self> {
        check_prime(p)?;
        Ok(ZpModule { p, action: IntMatrix::identity(rank) })
    }

    /// `Z[Z/p]` with `t` permuting the basis `1, t, ..., t^{p-1}` cyclically.
    pub fn regular(p: u64) -> Result<Self> {
        check_prime(p)?;
        let n = p as usize;
        let mut a = IntMatrix::zeros(n, n);
        for j in 0..n {
            a[((j + 1) % n, j)] = Int::ONE;
        }
        Ok(ZpModule { p, action: a })
    }

    /// `Z[ζ]` in the basis `1, ζ, ..., ζ^{p-2}`: the companion matrix of
    /// `1 + x + ... + x^{p-1}`.
    pub fn cyclotomic(p: u64) -> Result<Self> {
        check_prime(p)?;
        let n = p as usize - 1;
        let mut a = IntMatrix::zeros(n, n);
        for j in 0..n - 1 {
            a[(j + 1, j)] = Int::ONE;
        }
        for i in 0..n {
            a[(i, n - 1)] = Int::from(-1);
        }
        Ok(ZpModule { p, action: a })
    }

    /// The `k`-fold direct sum of [`ZpModule::cyclotomic`].
    pub fn cyclotomic_power(p: u64, k: usize) -> Result<Self> {
        let c = Self::cyclotomic(p)?;
        let mut m = ZpModule { p, action: IntMatrix::zeros(0, 0) };
        for _ in 0..k {
            m = m.direct_sum(&c)?;
        }
        Ok(m)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.action.rows()
    }

    pub fn action(&self) -> &IntMatrix {
        &self.action
    }

    /// Exact check that the action has order dividing `p`.
    pub fn has_valid_order(&self) -> bool {
        self.action.pow(self.p as u32).is_identity()
    }

    fn same_p(&self, other: &ZpModule) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MismatchedPrime(self.p, other.p))
        }
    }

    pub fn direct_sum(&self, other: &ZpModule) -> Result<ZpModule> {
        self.same_p(other)?;
        Ok(ZpModule { p: self.p, action: self.action.block_diag(&other.action) })
    }

    /// Tensor product over `Z`, basis `e_i ⊗ f_j` in lexicographic order.
    pub fn tensor(&self, other: &ZpModule) -> Result<ZpModule> {
        self.same_p(other)?;
        Ok(ZpModule { p: self.p, action: self.action.kron(&other.action) })
    }

    /// The contragredient module in the transpose convention.
    pub fn dual(&self) -> ZpModule {
        ZpModule { p: self.p, action: self.action.transpose() }
    }

    /// `Λ^m`, basis the lexicographically ordered `m`-subsets of the standard
    /// basis, acting by the `m`-th compound matrix.
    pub fn exterior_power(&self, m: usize) -> Result<ZpModule> {
        let n = self.rank();
        if m > n {
            return Err(Error::DegreeOutOfRange(format!("exterior power {m} of a rank {n} module")));
        }
        let dim = binomial(n as u64, m as u64);
        let limit = max_exterior_dim();
        if dim > limit {
            return Err(Error::ExteriorTooLarge { n, m, dim, limit });
        }
        Ok(ZpModule { p: self.p, action: compound_matrix(&self.action, m) })
    }

    /// `N = Σ_{j<p} A^j`.
    pub fn norm_matrix(&self) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.rank());
        let mut pw = IntMatrix::identity(self.rank());
        for _ in 1..self.p {
            pw = self.action.mul(&pw);
            acc = acc.add(&pw);
        }
        acc
    }

    fn augmentation(&self) -> IntMatrix {
        self.action.sub(&IntMatrix::identity(self.rank()))
    }

    /// Splits the module along the connected components of the nonzero
    /// pattern of the action. Each component spans an invariant coordinate
    /// sublattice, so the module is their direct sum.
    pub fn components(&self) -> Vec<ZpModule> {
        let n = self.rank();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = x;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        for i in 0..n {
            for j in 0..n {
                if !self.action[(i, j)].is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        groups
            .into_iter()
            .map(|idx| ZpModule { p: self.p, action: self.action.select(&idx, &idx) })
            .collect()
    }

    /// Rank and pure basis of the fixed sublattice `M^G = ker(A - I)`.
    pub fn invariants(&self) -> (usize, IntMatrix) {
        let k = pure_kernel(&self.augmentation());
        (k.rank(), k.basis)
    }

    /// Rank of `M^G`, computed blockwise.
    pub fn invariants_rank(&self) -> usize {
        self.components().iter().map(|c| c.invariants().0).sum()
    }

    /// `M_G = coker(A - I)`.
    pub fn coinvariants(&self) -> FGAbelianGroup {
        self.components()
            .iter()
            .map(|c| cokernel_structure(&c.augmentation()))
            .fold(FGAbelianGroup::trivial(), |a, b| a.direct_sum(&b))
    }

    /// Tate cohomology `Ĥ^i(Z/p; M)`, 2-periodic in `i`.
    pub fn tate(&self, i: i64) -> Result<FGAbelianGroup> {
        let mut acc = FGAbelianGroup::trivial();
        for c in self.components() {
            acc = acc.direct_sum(&c.tate_block(i)?);
        }
        Ok(acc)
    }

    fn tate_block(&self, i: i64) -> Result<FGAbelianGroup> {
        let (ambient, image) = if i.rem_euclid(2) == 0 {
            // M^G / N·M
            (self.augmentation(), self.norm_matrix())
        } else {
            // ker N / (A - I)·M
            (self.norm_matrix(), self.augmentation())
        };
        let k = pure_kernel(&ambient);
        let coords = k.coordinates_of(&image).ok_or_else(|| {
            Error::Internal(format!("Tate degree {i}: image not contained in kernel (p = {})", self.p))
        })?;
        Ok(cokernel_structure(&coords))
    }

    /// `H^i(Z/p; M)` for `i ≥ 0`.
    pub fn group_cohomology(&self, i: i64) -> Result<FGAbelianGroup> {
        match i {
            i if i < 0 => Err(Error::DegreeOutOfRange(format!("cohomological degree {i}"))),
            0 => Ok(FGAbelianGroup::free(self.invariants_rank())),
            _ => self.tate(i),
        }
    }

    /// `H_i(Z/p; M)` for `i ≥ 0`.
    pub fn group_homology(&self, i: i64) -> Result<FGAbelianGroup> {
        match i {
            i if i < 0 => Err(Error::DegreeOutOfRange(format!("homological degree {i}"))),
            0 => Ok(self.coinvariants()),
            _ => self.tate(-i - 1),
        }
    }
}

/// All `m`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..m).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..m).rev().find(|&i| cur[i] < n - m + i) else { break };
        cur[i] += 1;
        for j in i + 1..m {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// The `m`-th compound matrix: entry `(I, J)` is the minor on rows `I` and
/// columns `J`, subsets in lexicographic order.
pub fn compound_matrix(a: &IntMatrix, m: usize) -> IntMatrix {
    let n = a.rows();
    let sets = subsets(n, m);
    let d = sets.len();
    let mut out = IntMatrix::zeros(d, d);
    if m == 0 {
        out[(0, 0)] = Int::ONE;
        return out;
    }
    for (r, rows) in sets.iter().enumerate() {
        let support: Vec<bool> = (0..n).map(|j| rows.iter().any(|&i| !a[(i, j)].is_zero())).collect();
        for (c, cols) in sets.iter().enumerate() {
            if cols.iter().any(|&j| !support[j]) {
                continue;
            }
            out[(r, c)] = a.select(rows, cols).determinant();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let c3 = ZpModule::cyclotomic(3).unwrap();
        assert_eq!(*c3.action(), IntMatrix::from_rows(&[[0, -1], [1, -1]]));
        assert_eq!(*ZpModule::regular(2).unwrap().action(), IntMatrix::from_rows(&[[0, 1], [1, 0]]));
        assert_eq!(*ZpModule::cyclotomic(2).unwrap().action(), IntMatrix::from_rows(&[[-1]]));
        for p in [2, 3, 5, 7] {
            let c = ZpModule::cyclotomic(p).unwrap();
            assert!(ZpModule::new(p, c.action().clone()).is_ok());
            assert!(!c.action().is_identity());
        }
        assert_eq!(ZpModule::cyclotomic(4), Err(Error::NotPrime(4)));
        assert!(matches!(ZpModule::new(3, IntMatrix::from_rows(&[[0, 1], [1, 0]])), Err(Error::WrongOrder(_))));
    }

    #[test]
    fn sums_and_tensors() {
        let a = ZpModule::trivial(3, 2).unwrap();
        let b = ZpModule::trivial(3, 3).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap(), ZpModule::trivial(3, 5).unwrap());
        let c = ZpModule::cyclotomic(3).unwrap();
        assert_eq!(ZpModule::trivial(3, 1).unwrap().tensor(&c).unwrap(), c);
        assert_eq!(c.tensor(&c).unwrap().invariants_rank(), 2);
        let other = ZpModule::trivial(5, 1).unwrap();
        assert_eq!(a.direct_sum(&other), Err(Error::MismatchedPrime(3, 5)));
    }

    #[test]
    fn exterior_powers() {
        let c = ZpModule::cyclotomic(3).unwrap();
        assert_eq!(c.exterior_power(0).unwrap(), ZpModule::trivial(3, 1).unwrap());
        assert_eq!(c.exterior_power(2).unwrap(), ZpModule::trivial(3, 1).unwrap());
        assert!(matches!(c.exterior_power(3), Err(Error::DegreeOutOfRange(_))));
        let c7 = ZpModule::cyclotomic(7).unwrap();
        for m in 0..=6 {
            let e = c7.exterior_power(m).unwrap();
            assert_eq!(e.rank() as u128, binomial(6, m as u64));
            assert!(e.has_valid_order());
        }
        assert_eq!(subsets(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn duals() {
        let c = ZpModule::cyclotomic(3).unwrap();
        assert_eq!(*c.dual().action(), IntMatrix::from_rows(&[[0, 1], [-1, -1]]));
        let t = ZpModule::trivial(5, 3).unwrap();
        assert_eq!(t.dual(), t);
        let r = ZpModule::regular(5).unwrap();
        assert_eq!(r.dual().tate(0).unwrap(), FGAbelianGroup::trivial());
        assert_eq!(r.dual().invariants_rank(), 1);
    }

    #[test]
    fn invariants_and_coinvariants() {
        let t = ZpModule::trivial(3, 4).unwrap();
        assert_eq!(t.invariants_rank(), 4);
        assert_eq!(t.coinvariants(), FGAbelianGroup::free(4));
        for p in [2, 3, 5, 7] {
            assert_eq!(ZpModule::cyclotomic(p).unwrap().invariants_rank(), 0);
            let r = ZpModule::regular(p).unwrap();
            let (rank, basis) = r.invariants();
            assert_eq!(rank, 1);
            let v = basis.column(0);
            assert!(v.iter().all(|x| *x == v[0]) && v[0].abs().is_one());
            assert_eq!(r.coinvariants(), FGAbelianGroup::free(1));
        }
        assert_eq!(ZpModule::cyclotomic(3).unwrap().coinvariants(), FGAbelianGroup::cyclic(3));
    }

    #[test]
    fn tate_examples() {
        for p in [2, 3, 5, 7] {
            let z = ZpModule::trivial(p, 1).unwrap();
            assert_eq!(z.tate(0).unwrap(), FGAbelianGroup::cyclic(p));
            assert_eq!(z.tate(1).unwrap(), FGAbelianGroup::trivial());
            let r = ZpModule::regular(p).unwrap();
            for i in -2..=2 {
                assert!(r.tate(i).unwrap().is_trivial());
            }
            let c = ZpModule::cyclotomic(p).unwrap();
            assert!(c.tate(0).unwrap().is_trivial());
            assert_eq!(c.tate(1).unwrap(), FGAbelianGroup::cyclic(p));
        }
    }

    #[test]
    fn group_cohomology_and_homology() {
        let c = ZpModule::cyclotomic(3).unwrap();
        assert_eq!(c.group_cohomology(1).unwrap(), FGAbelianGroup::cyclic(3));
        assert_eq!(c.group_cohomology(1).unwrap(), c.coinvariants());
        assert_eq!(c.group_cohomology(0).unwrap(), FGAbelianGroup::trivial());
        let z = ZpModule::trivial(3, 1).unwrap();
        assert_eq!(z.group_homology(1).unwrap(), FGAbelianGroup::cyclic(3));
        assert_eq!(z.group_homology(2).unwrap(), FGAbelianGroup::trivial());
        assert_eq!(z.group_cohomology(2).unwrap(), FGAbelianGroup::cyclic(3));
        assert!(z.group_homology(-1).is_err());
    }

    #[test]
    fn components_split_block_sums() {
        let m = ZpModule::cyclotomic_power(5, 3).unwrap();
        let parts = m.components();
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|c| c.rank() == 4));
    }

    #[test]
    fn guardrail() {
        let big = ZpModule::trivial(3, 30).unwrap();
        assert!(matches!(big.exterior_power(15), Err(Error::ExteriorTooLarge { .. })));
    }
}
