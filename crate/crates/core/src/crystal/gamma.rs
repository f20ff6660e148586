use serde::{Deserialize, Serialize};

use crate::abelian::{is_prime, FGAbelianGroup};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{cokernel_structure, kernel_basis, IntMatrix};
use crate::repring::r_sum_identities;
use crate::zpmod::ZpModule;

/// A validated group `Γ = Z^n ⋊_ρ Z/p` with `ρ` free away from the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaDescriptor {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    pub rho: IntMatrix,
    /// True when `ρ` is the block sum of `k` cyclotomic companion matrices.
    pub canonical: bool,
}

impl GammaDescriptor {
    /// `ρ` as a `Z[Z/p]`-module.
    pub fn module(&self) -> ZpModule {
        ZpModule::new_unchecked(self.p, self.rho.clone())
    }

    /// `p^k`, the number of conjugacy classes of nontrivial finite subgroups.
    pub fn p_to_k(&self) -> u64 {
        self.p.pow(self.k as u32)
    }
}

/// Checks, in order: `p` prime, `ρ` square, `(p-1) | n`, `ρ^p = I` with
/// `ρ ≠ I`, and `ker(ρ - I) = 0`.
pub fn validate_gamma(p: u64, rho: IntMatrix) -> Result<GammaDescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !rho.is_square() {
        return Err(Error::Shape(format!("rho is {}x{}, expected square", rho.rows(), rho.cols())));
    }
    let n = rho.rows();
    if n == 0 || n % (p as usize - 1) != 0 {
        return Err(Error::BadRank { n, p_minus_one: p - 1 });
    }
    if rho.is_identity() {
        return Err(Error::WrongOrder("rho is the identity".into()));
    }
    if !rho.pow(p as u32).is_identity() {
        return Err(Error::WrongOrder(format!("rho^{p} is not the identity")));
    }
    let fixed = kernel_basis(&rho.sub(&IntMatrix::identity(n)));
    if fixed.cols() > 0 {
        let v = fixed.column(0).iter().map(Int::to_string).collect();
        return Err(Error::NotFree { fixed_vector: v });
    }
    let k = n / (p as usize - 1);
    let canonical = rho == *ZpModule::cyclotomic_power(p, k)?.action();
    Ok(GammaDescriptor { p, n, k, rho, canonical })
}

/// The descriptor with `ρ` the `k`-fold block sum of the cyclotomic module.
pub fn canonical_gamma(p: u64, k: usize) -> Result<GammaDescriptor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::BadRank { n: 0, p_minus_one: p - 1 });
    }
    validate_gamma(p, ZpModule::cyclotomic_power(p, k)?.action().clone())
}

/// Conjugacy classes of nontrivial finite subgroups and torus fixed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteSubgroupData {
    pub cokernel: FGAbelianGroup,
    pub class_count: u64,
    pub fixed_point_count: u64,
}

/// `coker(ρ - I)`, whose order counts the conjugacy classes, and
/// `|det(ρ - I)|`, the Lefschetz count of fixed points of `ρ` on the torus.
/// Both must equal `p^k`.
pub fn finite_subgroup_data(g: &GammaDescriptor) -> Result<FiniteSubgroupData> {
    let shifted = g.rho.sub(&IntMatrix::identity(g.n));
    let cokernel = cokernel_structure(&shifted);
    let expected = FGAbelianGroup::elementary(g.p, g.k);
    if cokernel != expected {
        return Err(Error::CokernelMismatch(format!("coker(rho - I) = {cokernel}, expected {expected}")));
    }
    let class_count = cokernel.torsion_order().to_u64().ok_or_else(|| Error::Internal("class count overflow".into()))?;
    let fixed_point_count = shifted
        .determinant()
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Internal("fixed point count overflow".into()))?;
    let pk = g.p_to_k();
    if class_count != pk || fixed_point_count != pk {
        return Err(Error::CokernelMismatch(format!(
            "class count {class_count}, fixed points {fixed_point_count}, expected {pk}"
        )));
    }
    Ok(FiniteSubgroupData { cokernel, class_count, fixed_point_count })
}

/// `Γ/[Γ,Γ] = coker(ρ - I) ⊕ Z/p`, checked to be `(Z/p)^{k+1}`.
pub fn abelianization(g: &GammaDescriptor) -> Result<FGAbelianGroup> {
    let coker = cokernel_structure(&g.rho.sub(&IntMatrix::identity(g.n)));
    let ab = coker.direct_sum(&FGAbelianGroup::cyclic(g.p));
    let expected = FGAbelianGroup::elementary(g.p, g.k + 1);
    if ab != expected {
        return Err(Error::CokernelMismatch(format!("abelianization {ab}, expected {expected}")));
    }
    Ok(ab)
}

/// Euler characteristic of the quotient of the torus by `Z/p`: the free
/// part contributes nothing and the `p^k` fixed points contribute
/// `(p-1)/p` each. Checked against the alternating sum of the `r_m`.
pub fn euler_characteristic_quotient(g: &GammaDescriptor) -> Result<i64> {
    let chi = ((g.p - 1) * g.p_to_k() / g.p) as i64;
    let alt = r_sum_identities(g.p, g.k as u64)?.alternating;
    if chi != alt {
        return Err(Error::Internal(format!("Euler characteristic {chi} != alternating r-sum {alt}")));
    }
    Ok(chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let g = validate_gamma(3, IntMatrix::from_rows(&[[0, -1], [1, -1]])).unwrap();
        assert_eq!((g.n, g.k, g.canonical), (2, 1, true));
        assert!(matches!(validate_gamma(3, IntMatrix::identity(2)), Err(Error::WrongOrder(_))));
        let d = validate_gamma(2, IntMatrix::from_rows(&[[-1]])).unwrap();
        assert_eq!((d.n, d.k), (1, 1));
        assert_eq!(validate_gamma(4, IntMatrix::identity(3)), Err(Error::NotPrime(4)));
        assert!(matches!(validate_gamma(3, IntMatrix::zeros(2, 3)), Err(Error::Shape(_))));
        assert!(matches!(validate_gamma(3, IntMatrix::identity(3)), Err(Error::BadRank { .. })));
        let swap = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        match validate_gamma(2, swap) {
            Err(Error::NotFree { fixed_vector }) => assert_eq!(fixed_vector.len(), 2),
            other => panic!("expected NotFree, got {other:?}"),
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_gamma(3, 1).unwrap().rho, IntMatrix::from_rows(&[[0, -1], [1, -1]]));
        let d = canonical_gamma(2, 3).unwrap();
        assert_eq!(d.rho, IntMatrix::identity(3).neg());
        assert_eq!(canonical_gamma(5, 2).unwrap().n, 8);
    }

    #[test]
    fn structure_constants() {
        let f = finite_subgroup_data(&canonical_gamma(3, 1).unwrap()).unwrap();
        assert_eq!((f.cokernel, f.class_count), (FGAbelianGroup::cyclic(3), 3));
        let f = finite_subgroup_data(&canonical_gamma(2, 1).unwrap()).unwrap();
        assert_eq!((f.class_count, f.fixed_point_count), (2, 2));
        let f = finite_subgroup_data(&canonical_gamma(3, 2).unwrap()).unwrap();
        assert_eq!(f.cokernel, FGAbelianGroup::elementary(3, 2));
        assert_eq!(f.fixed_point_count, 9);
        assert_eq!(abelianization(&canonical_gamma(3, 1).unwrap()).unwrap(), FGAbelianGroup::elementary(3, 2));
        assert_eq!(abelianization(&canonical_gamma(2, 1).unwrap()).unwrap(), FGAbelianGroup::elementary(2, 2));
        assert_eq!(abelianization(&canonical_gamma(5, 2).unwrap()).unwrap(), FGAbelianGroup::elementary(5, 3));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic_quotient(&canonical_gamma(3, 1).unwrap()).unwrap(), 2);
        assert_eq!(euler_characteristic_quotient(&canonical_gamma(3, 2).unwrap()).unwrap(), 6);
        assert_eq!(euler_characteristic_quotient(&canonical_gamma(2, 1).unwrap()).unwrap(), 1);
    }
}
