//! Brute-force derivations from the module layer, independent of the
//! closed forms.

use crate::abelian::{FGAbelianGroup, GroupExpression};
use crate::crystal::GammaDescriptor;
use crate::error::Result;
use crate::zpmod::ZpModule;

/// `H^m(BΓ)` assembled as `⊕_{i+j=m} H^i(Z/p; Λ^j(Z^n_ρ*))`, where the
/// dual lattice carries the transpose action; the `i = 0` term is the
/// invariant lattice and the terms with `i ≥ 1` are Tate groups.
pub fn brute_force_cohomology_bgamma(g: &GammaDescriptor, m: i64) -> Result<GroupExpression> {
    let dual = g.module().dual();
    let mut acc = FGAbelianGroup::trivial();
    for j in 0..=m.min(g.n as i64) {
        let lam = dual.exterior_power(j as usize)?;
        acc = acc.direct_sum(&lam.group_cohomology(m - j)?);
    }
    Ok(GroupExpression::from_group(&acc))
}

/// [`brute_force_cohomology_bgamma`] for every `0 ≤ m ≤ max_m`, computing
/// each exterior power and its cohomology once.
pub fn brute_force_cohomology_table(g: &GammaDescriptor, max_m: i64) -> Result<Vec<GroupExpression>> {
    let dual = g.module().dual();
    let top = max_m.min(g.n as i64);
    let mut pieces = Vec::new();
    for j in 0..=top {
        let lam = dual.exterior_power(j as usize)?;
        let h0 = FGAbelianGroup::free(lam.invariants_rank());
        pieces.push([h0, lam.tate(0)?, lam.tate(1)?]);
    }
    let mut out = Vec::new();
    for m in 0..=max_m {
        let mut acc = FGAbelianGroup::trivial();
        for j in 0..=m.min(top) {
            let i = m - j;
            let piece = match i {
                0 => &pieces[j as usize][0],
                i if i % 2 == 0 => &pieces[j as usize][1],
                _ => &pieces[j as usize][2],
            };
            acc = acc.direct_sum(piece);
        }
        out.push(GroupExpression::from_group(&acc));
    }
    Ok(out)
}

/// `H_m(BΓ)` assembled as `⊕_{i+j=m} H_i(Z/p; Λ^j(Z^n_ρ))`.
pub fn brute_force_homology_bgamma(g: &GammaDescriptor, m: i64) -> Result<GroupExpression> {
    let module = g.module();
    let mut acc = FGAbelianGroup::trivial();
    for j in 0..=m.min(g.n as i64) {
        let lam = module.exterior_power(j as usize)?;
        acc = acc.direct_sum(&lam.group_homology(m - j)?);
    }
    Ok(GroupExpression::from_group(&acc))
}

/// [`brute_force_homology_bgamma`] for every `0 ≤ m ≤ max_m`.
pub fn brute_force_homology_table(g: &GammaDescriptor, max_m: i64) -> Result<Vec<GroupExpression>> {
    let module = g.module();
    let top = max_m.min(g.n as i64);
    let mut pieces = Vec::new();
    for j in 0..=top {
        let lam = module.exterior_power(j as usize)?;
        pieces.push([lam.coinvariants(), lam.tate(0)?, lam.tate(1)?]);
    }
    let mut out = Vec::new();
    for m in 0..=max_m {
        let mut acc = FGAbelianGroup::trivial();
        for j in 0..=m.min(top) {
            let piece = match m - j {
                0 => &pieces[j as usize][0],
                i if i % 2 == 1 => &pieces[j as usize][1],
                _ => &pieces[j as usize][2],
            };
            acc = acc.direct_sum(piece);
        }
        out.push(GroupExpression::from_group(&acc));
    }
    Ok(out)
}

/// Rank of the invariants of `Λ^m` of the module of `g`.
pub fn fixed_rank(g: &GammaDescriptor, m: usize) -> Result<usize> {
    Ok(g.module().exterior_power(m)?.invariants_rank())
}

/// `Ĥ^i(Z/p; Λ^j)` for the module of `g`.
pub fn tate_of_exterior(module: &ZpModule, j: usize, i: i64) -> Result<FGAbelianGroup> {
    module.exterior_power(j)?.tate(i)
}
