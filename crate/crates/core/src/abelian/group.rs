use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Int;
use crate::linalg::normal_forms::divisibility_chain;

/// A finitely generated abelian group `Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` in invariant
/// factor form: `d_1 | d_2 | ... | d_t`, every `d_i ≥ 2`.
///
/// The representation is canonical, so `==` is isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FGAbelianGroup {
    /// Builds the group `Z^free_rank ⊕ ⊕ Z/c` for arbitrary cyclic orders `c`.
    /// Orders are taken in absolute value; orders 0 add a free summand and
    /// orders 1 vanish.
    pub fn new(free_rank: usize, cyclic_orders: impl IntoIterator<Item = Int>) -> Self {
        let mut free = free_rank;
        let mut rest = Vec::new();
        for c in cyclic_orders {
            let c = c.abs();
            if c.is_zero() {
                free += 1;
            } else if !c.is_one() {
                rest.push(c);
            }
        }
        let torsion = divisibility_chain(rest).into_iter().filter(|d| !d.is_one()).collect();
        FGAbelianGroup { free_rank: free, torsion }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [Int::from(order)])
    }

    /// `(Z/p)^count`.
    pub fn elementary(p: u64, count: usize) -> Self {
        Self::new(0, std::iter::repeat_n(Int::from(p), count))
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().fold(Int::ONE, |acc, d| &acc * d)
    }

    pub fn direct_sum(&self, other: &FGAbelianGroup) -> FGAbelianGroup {
        FGAbelianGroup::new(
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    /// `Hom(A, Z)`.
    pub fn hom_dual(&self) -> FGAbelianGroup {
        FGAbelianGroup::free(self.free_rank)
    }

    /// `Ext¹(A, Z)`, isomorphic to the torsion subgroup.
    pub fn ext_dual(&self) -> FGAbelianGroup {
        self.torsion_subgroup()
    }

    pub fn torsion_subgroup(&self) -> FGAbelianGroup {
        FGAbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Primary decomposition `(prime, exponent, multiplicity)`, sorted.
    ///
    /// Panics if an invariant factor does not fit in a `u64`.
    pub fn primary_decomposition(&self) -> Vec<(u64, u32, usize)> {
        let mut out: Vec<(u64, u32, usize)> = Vec::new();
        for d in &self.torsion {
            let d = d.to_u64().expect("invariant factor too large to factor");
            for (q, e) in factorize(d) {
                match out.iter_mut().find(|x| x.0 == q && x.1 == e) {
                    Some(x) => x.2 += 1,
                    None => out.push((q, e, 1)),
                }
            }
        }
        out.sort();
        out
    }

    /// Number of cyclic factors of order exactly `p` when the torsion is
    /// elementary abelian of exponent `p`, else `None`.
    pub fn elementary_rank(&self, p: u64) -> Option<usize> {
        let p = Int::from(p);
        self.torsion.iter().all(|d| *d == p).then_some(self.torsion.len())
    }
}

/// Trial-division factorization.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `KO_m(pt)`, or the connective `ko_m(pt)` which vanishes for `m < 0`.
pub fn ko_point_table(m: i64, connective: bool) -> FGAbelianGroup {
    if connective && m < 0 {
        return FGAbelianGroup::trivial();
    }
    match m.rem_euclid(8) {
        0 | 4 => FGAbelianGroup::free(1),
        1 | 2 => FGAbelianGroup::cyclic(2),
        _ => FGAbelianGroup::trivial(),
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::abelian::GroupExpression::from_group(self))
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FG(Z^{}", self.free_rank)?;
        for d in &self.torsion {
            write!(f, " + Z/{d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_merges() {
        let g = FGAbelianGroup::cyclic(2).direct_sum(&FGAbelianGroup::cyclic(3));
        assert_eq!(g, FGAbelianGroup::cyclic(6));
        let h = FGAbelianGroup::free(1).direct_sum(&FGAbelianGroup::free(2));
        assert_eq!(h, FGAbelianGroup::free(3));
        let c = FGAbelianGroup::cyclic(2).direct_sum(&FGAbelianGroup::cyclic(4));
        assert_eq!(c.torsion(), &[Int::from(2), Int::from(4)]);
    }

    #[test]
    fn duals() {
        let g = FGAbelianGroup::new(3, [Int::from(5)]);
        assert_eq!(g.hom_dual(), FGAbelianGroup::free(3));
        assert_eq!(g.ext_dual(), FGAbelianGroup::cyclic(5));
        assert_eq!(FGAbelianGroup::cyclic(7).hom_dual(), FGAbelianGroup::trivial());
        assert_eq!(FGAbelianGroup::free(4).ext_dual(), FGAbelianGroup::trivial());
        let t = FGAbelianGroup::new(0, [Int::from(2), Int::from(4)]);
        assert_eq!(t.ext_dual(), t);
    }

    #[test]
    fn ko_table() {
        assert_eq!(ko_point_table(0, false), FGAbelianGroup::free(1));
        assert_eq!(ko_point_table(-4, false), FGAbelianGroup::free(1));
        assert_eq!(ko_point_table(-1, true), FGAbelianGroup::trivial());
        assert_eq!(ko_point_table(-1, false), FGAbelianGroup::trivial());
        assert_eq!(ko_point_table(-7, false), FGAbelianGroup::cyclic(2));
        let row: Vec<_> = (0..8).map(|m| ko_point_table(m, true)).collect();
        assert_eq!(row[1], FGAbelianGroup::cyclic(2));
        assert_eq!(row[2], FGAbelianGroup::cyclic(2));
        assert!(row[3].is_trivial() && row[5].is_trivial());
    }

    #[test]
    fn primary_parts() {
        let g = FGAbelianGroup::new(0, [Int::from(12), Int::from(2)]);
        assert_eq!(g.primary_decomposition(), vec![(2, 1, 1), (2, 2, 1), (3, 1, 1)]);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
    }
}
