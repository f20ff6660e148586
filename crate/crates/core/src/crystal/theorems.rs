//! Closed-form evaluators. Every value depends only on `(p, k)`.

use serde::{Deserialize, Serialize};

use crate::abelian::{Bounds, GroupExpression, Summand};
use crate::crystal::GammaDescriptor;
use crate::error::{Error, Result};
use crate::repring::{a_vector, r_sum_identities, r_vector, RSums};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Cohomology,
    Homology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Space {
    BGamma,
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Field {
    Complex,
    Real,
}

/// Kernel of `H^m(Γ) → H^m(Z^n)^{Z/p}` and torsion of the image of
/// `H^m(Γ) → ⊕_P H^m(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionData {
    pub kernel: GroupExpression,
    pub image_torsion: GroupExpression,
}

/// The three terms of `0 → left → middle → right → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSequence {
    pub left: GroupExpression,
    pub middle: GroupExpression,
    pub right: GroupExpression,
}

impl ExactSequence {
    pub fn ranks_additive(&self) -> bool {
        self.left.free_rank() + self.right.free_rank() == self.middle.free_rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSequences {
    pub complex: ExactSequence,
    /// Present for odd `p` only.
    pub real: Option<ExactSequence>,
}

/// The numbers every theorem is stated in: `r_l`, `a_j`, `s_m` and `p^k`.
#[derive(Clone, Debug)]
pub struct Theorems {
    pub p: u64,
    pub k: u64,
    pub n: u64,
    pub pk: u64,
    r: Vec<u64>,
    a: Vec<u64>,
    pub sums: RSums,
}

impl Theorems {
    pub fn new(g: &GammaDescriptor) -> Result<Self> {
        Self::for_parameters(g.p, g.k as u64)
    }

    pub fn for_parameters(p: u64, k: u64) -> Result<Self> {
        let r = r_vector(p, k)?;
        let a = a_vector(p, k);
        let sums = r_sum_identities(p, k)?;
        Ok(Theorems { p, k, n: k * (p - 1), pk: p.pow(k as u32), r, a, sums })
    }

    /// `r_l`, zero outside `[0, n]`.
    pub fn r(&self, l: i64) -> u64 {
        usize::try_from(l).ok().and_then(|i| self.r.get(i)).copied().unwrap_or(0)
    }

    pub fn a(&self, j: i64) -> u64 {
        usize::try_from(j).ok().and_then(|i| self.a.get(i)).copied().unwrap_or(0)
    }

    /// `s_m = Σ_{j<m} a_j`.
    pub fn s(&self, m: i64) -> u64 {
        if m <= 0 {
            return 0;
        }
        self.a.iter().take(m as usize).sum()
    }

    pub fn r_values(&self) -> &[u64] {
        &self.r
    }

    pub fn a_values(&self) -> &[u64] {
        &self.a
    }

    fn r_parity_sum(&self, m: i64) -> u64 {
        if m.rem_euclid(2) == 0 {
            self.sums.sum_even
        } else {
            self.sums.sum_odd
        }
    }

    fn require_odd(&self, what: &'static str) -> Result<()> {
        if self.p == 2 {
            Err(Error::POddRequired(what))
        } else {
            Ok(())
        }
    }

    fn nonneg(m: i64) -> Result<()> {
        if m < 0 {
            Err(Error::DegreeOutOfRange(format!("degree {m} must be nonnegative")))
        } else {
            Ok(())
        }
    }

    fn free_plus_elementary(&self, free: u64, torsion: u64) -> GroupExpression {
        GroupExpression::new([Summand::Free(free), Summand::Cyclic { prime: self.p, exponent: 1, mult: torsion }])
    }

    /// `H^m(BΓ)`.
    pub fn cohomology_bgamma(&self, m: i64) -> Result<GroupExpression> {
        Self::nonneg(m)?;
        let t = if m % 2 == 0 { self.s(m) } else { 0 };
        Ok(self.free_plus_elementary(self.r(m), t))
    }

    /// `H_m(BΓ)`.
    pub fn homology_bgamma(&self, m: i64) -> Result<GroupExpression> {
        Self::nonneg(m)?;
        let t = if m % 2 == 1 { self.s(m + 1) } else { 0 };
        Ok(self.free_plus_elementary(self.r(m), t))
    }

    /// `H^m` of the quotient of `R^n` by `Γ`.
    pub fn cohomology_quotient(&self, m: i64) -> Result<GroupExpression> {
        Self::nonneg(m)?;
        Ok(match m {
            1 => GroupExpression::zero(),
            m if m % 2 == 0 => GroupExpression::free(self.r(m)),
            m => self.free_plus_elementary(self.r(m), self.pk - self.s(m)),
        })
    }

    /// `H_m` of the quotient.
    pub fn homology_quotient(&self, m: i64) -> Result<GroupExpression> {
        Self::nonneg(m)?;
        Ok(match m {
            0 => GroupExpression::free(1),
            m if m % 2 == 1 => GroupExpression::free(self.r(m)),
            m => self.free_plus_elementary(self.r(m), self.pk - self.s(m + 1)),
        })
    }

    pub fn restriction_map_data(&self, m: i64) -> Result<RestrictionData> {
        Self::nonneg(m)?;
        if m % 2 == 1 || m == 0 {
            return Ok(RestrictionData { kernel: GroupExpression::zero(), image_torsion: GroupExpression::zero() });
        }
        Ok(RestrictionData {
            kernel: GroupExpression::elementary(self.p, self.s(m)),
            image_torsion: GroupExpression::elementary(self.p, self.s(m + 1)),
        })
    }

    /// `T^1` with layer bounds `p^k - s_{2i+1}`, `i = 1, ..., floor(n/2)`.
    pub fn t1(&self) -> Summand {
        let bounds = (1..=(self.n / 2) as i64).map(|i| self.pk - self.s(2 * i + 1)).collect();
        Summand::Unknown { tag: "T1".into(), bounds: Bounds::Layers(bounds) }
    }

    pub fn k_theory_bgamma(&self, m: i64, variant: Variant) -> GroupExpression {
        let even = m.rem_euclid(2) == 0;
        let free = Summand::Free(self.r_parity_sum(m));
        let extra = (self.p - 1) * self.pk;
        match (variant, even) {
            (Variant::Cohomology, true) => GroupExpression::new([free, Summand::PAdic { prime: self.p, rank: extra }]),
            (Variant::Homology, false) => GroupExpression::new([free, Summand::Pruefer { prime: self.p, rank: extra }]),
            _ => GroupExpression::new([free]),
        }
    }

    pub fn k_theory_quotient(&self, m: i64, variant: Variant) -> GroupExpression {
        let even = m.rem_euclid(2) == 0;
        let free = Summand::Free(self.r_parity_sum(m));
        let with_t1 = match variant {
            Variant::Cohomology => !even,
            Variant::Homology => even,
        };
        if with_t1 {
            GroupExpression::new([free, self.t1()])
        } else {
            GroupExpression::new([free])
        }
    }

    /// `⊕_l KO_{m-l}(pt)^{r_l}`.
    fn ko_homological(&self, m: i64) -> GroupExpression {
        GroupExpression::new((0..=self.n as i64).map(|l| Summand::ko(m - l, self.r(l))))
    }

    /// `⊕_l KO^{m-l}(pt)^{r_l} = ⊕_l KO_{l-m}(pt)^{r_l}`.
    fn ko_cohomological(&self, m: i64) -> GroupExpression {
        GroupExpression::new((0..=self.n as i64).map(|l| Summand::ko(l - m, self.r(l))))
    }

    /// `TO^{2m'+1}` with layer bounds `p^k - s_{4i+(-1)^{m'}}` for
    /// `1 ≤ i < floor((n + 4 - (-1)^{m'}) / 4)`.
    pub fn to_odd(&self, m_prime: i64) -> Summand {
        let sign: i64 = if m_prime.rem_euclid(2) == 0 { 1 } else { -1 };
        let top = (self.n as i64 + 4 - sign).div_euclid(4);
        let bounds = (1..top).map(|i| self.pk - self.s(4 * i + sign)).collect();
        let degree = (2 * m_prime + 1).rem_euclid(8);
        Summand::Unknown { tag: format!("TO^{{{degree}}}"), bounds: Bounds::Layers(bounds) }
    }

    fn half_real(&self) -> u64 {
        self.pk * (self.p - 1) / 2
    }

    pub fn ko_theory(&self, m: i64, space: Space, variant: Variant) -> Result<GroupExpression> {
        self.require_odd("KO-theory")?;
        let even = m.rem_euclid(2) == 0;
        Ok(match (space, variant) {
            (Space::BGamma, Variant::Cohomology) => {
                let sum = self.ko_cohomological(m);
                if even {
                    sum.with(Summand::PAdic { prime: self.p, rank: self.half_real() })
                } else {
                    sum
                }
            }
            (Space::BGamma, Variant::Homology) => {
                let sum = self.ko_homological(m);
                if even {
                    sum
                } else {
                    sum.with(Summand::Pruefer { prime: self.p, rank: self.half_real() })
                }
            }
            (Space::Quotient, Variant::Cohomology) => {
                let sum = self.ko_cohomological(m);
                if even {
                    sum
                } else {
                    sum.with(self.to_odd((m - 1).div_euclid(2)))
                }
            }
            (Space::Quotient, Variant::Homology) => {
                let sum = self.ko_homological(m);
                if even {
                    sum.with(self.to_odd(m.div_euclid(2) + 2))
                } else {
                    sum
                }
            }
        })
    }

    /// `(d_ev, d_odd)`: ranks of `K_0` and `K_1` of the reduced complex group
    /// C*-algebra, from the closed form and cross-checked against the
    /// equivariant rank formula.
    pub fn d_ev_odd(&self) -> Result<(u64, u64)> {
        let two_n = 2u64.checked_pow(self.n as u32).ok_or_else(|| Error::Internal("2^n overflows u64".into()))?;
        let (d_ev, d_odd) = if self.p == 2 {
            (3 * (two_n / 2), 0)
        } else {
            let (p, pk1) = (self.p, self.pk / self.p);
            let base = (two_n + p - 1) / (2 * p);
            let corr = (p - 1) * pk1 / 2;
            (base + corr + (p - 1) * self.pk, base - corr)
        };
        let eq_ev = (self.p - 1) * self.pk + self.sums.sum_even;
        let eq_odd = self.sums.sum_odd;
        if (d_ev, d_odd) != (eq_ev, eq_odd) {
            return Err(Error::Internal(format!(
                "d_ev/d_odd = {d_ev}/{d_odd} but equivariant ranks are {eq_ev}/{eq_odd} (p={}, k={})",
                self.p, self.k
            )));
        }
        Ok((d_ev, d_odd))
    }

    pub fn cstar_k_theory(&self, m: i64, field: Field) -> Result<GroupExpression> {
        let even = m.rem_euclid(2) == 0;
        match field {
            Field::Complex => {
                let (d_ev, d_odd) = self.d_ev_odd()?;
                Ok(GroupExpression::free(if even { d_ev } else { d_odd }))
            }
            Field::Real => {
                self.require_odd("real C*-algebra K-theory")?;
                let sum = self.ko_homological(m);
                Ok(if even { sum.with(Summand::Free(self.half_real())) } else { sum })
            }
        }
    }

    /// Equivariant complex K-theory of the classifying space for proper
    /// actions; cohomology and homology agree.
    pub fn equivariant_k(&self, m: i64, _variant: Variant) -> GroupExpression {
        if m.rem_euclid(2) == 0 {
            GroupExpression::free((self.p - 1) * self.pk + self.sums.sum_even)
        } else {
            GroupExpression::free(self.sums.sum_odd)
        }
    }

    pub fn equivariant_ko(&self, m: i64, variant: Variant) -> Result<GroupExpression> {
        self.require_odd("equivariant KO-theory")?;
        let sum = match variant {
            Variant::Cohomology => self.ko_cohomological(m),
            Variant::Homology => self.ko_homological(m),
        };
        Ok(if m.rem_euclid(2) == 0 { sum.with(Summand::Free(self.half_real())) } else { sum })
    }

    /// The sequences `0 → ⊕_P R̃(P) → K_m(C*_r Γ) → K_m(quotient) → 0` and
    /// their real analogues; the left term vanishes in odd degrees.
    pub fn equivariant_exact_sequences(&self, m: i64) -> Result<ExactSequences> {
        let even = m.rem_euclid(2) == 0;
        let complex = ExactSequence {
            left: GroupExpression::free(if even { (self.p - 1) * self.pk } else { 0 }),
            middle: self.cstar_k_theory(m, Field::Complex)?,
            right: self.k_theory_quotient(m, Variant::Homology),
        };
        let real = if self.p == 2 {
            None
        } else {
            Some(ExactSequence {
                left: GroupExpression::free(if even { self.half_real() } else { 0 }),
                middle: self.cstar_k_theory(m, Field::Real)?,
                right: self.ko_theory(m, Space::Quotient, Variant::Homology)?,
            })
        };
        for seq in std::iter::once(&complex).chain(real.as_ref()) {
            if !seq.ranks_additive() {
                return Err(Error::Internal(format!("free ranks not additive in degree {m}: {seq:?}")));
            }
        }
        Ok(ExactSequences { complex, real })
    }

    /// Connective real K-homology; zero in negative degrees.
    pub fn connective_ko(&self, m: i64, space: Space) -> Result<GroupExpression> {
        self.require_odd("connective ko-homology")?;
        if m < 0 {
            return Ok(GroupExpression::zero());
        }
        let top = match space {
            Space::BGamma => self.n as i64,
            Space::Quotient => m.min(self.n as i64),
        };
        let sum = GroupExpression::new((0..=top).map(|i| Summand::KoConnective { degree: m - i, mult: self.r(i) }));
        let unknown = Summand::Unknown { tag: format!("to_{m}"), bounds: Bounds::Unbounded };
        let with_unknown = match space {
            Space::BGamma => m % 2 == 1,
            Space::Quotient => m % 2 == 0 && m > 0,
        };
        Ok(if with_unknown { sum.with(unknown) } else { sum })
    }
}
