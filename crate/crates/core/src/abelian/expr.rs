//! Symbolic group values.
//!
//! Text grammar, summands separated by ` (+) `:
//!
//! ```text
//! Z^a  (Z/q^e)^b  Zp^[p]^c  Pruefer[p]^d  KO[m](pt)^r  ko[m](pt)^r
//! T{tag; bounds=[b1,b2,...]}  T{tag; bounds=?}
//! ```
//!
//! The trivial group is written `0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::abelian::group::{ko_point_table, FGAbelianGroup};
use crate::int::Int;

/// Known filtration bounds of an undetermined finite `p`-group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bounds {
    /// Layer `i` of the filtration is `(Z/p)^{x_i}` with `0 ≤ x_i ≤ bound_i`.
    Layers(Vec<u64>),
    /// Finite, with no proven bound.
    Unbounded,
}

/// One summand kind. Variant order is the canonical sort order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Summand {
    Free(u64),
    Cyclic { prime: u64, exponent: u32, mult: u64 },
    PAdic { prime: u64, rank: u64 },
    Pruefer { prime: u64, rank: u64 },
    /// `KO_degree(pt)^mult`, degree stored mod 8.
    KoPeriodic { degree: u8, mult: u64 },
    /// Connective `ko_degree(pt)^mult`.
    KoConnective { degree: i64, mult: u64 },
    Unknown { tag: String, bounds: Bounds },
}

impl Summand {
    pub fn ko(degree: i64, mult: u64) -> Summand {
        Summand::KoPeriodic { degree: degree.rem_euclid(8) as u8, mult }
    }

    fn mult(&self) -> Option<u64> {
        match self {
            Summand::Free(r) => Some(*r),
            Summand::Cyclic { mult, .. }
            | Summand::KoPeriodic { mult, .. }
            | Summand::KoConnective { mult, .. } => Some(*mult),
            Summand::PAdic { rank, .. } | Summand::Pruefer { rank, .. } => Some(*rank),
            Summand::Unknown { .. } => None,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Summand::Unknown { bounds: Bounds::Layers(b), .. } => b.iter().all(|&x| x == 0),
            Summand::Unknown { .. } => false,
            Summand::KoConnective { degree, .. } if *degree < 0 => true,
            Summand::Cyclic { exponent: 0, .. } => true,
            s => s.mult() == Some(0),
        }
    }

    // merge key: two summands with equal keys add their multiplicities
    fn key(&self) -> Option<Summand> {
        let mut k = self.clone();
        match &mut k {
            Summand::Free(r) => *r = 0,
            Summand::Cyclic { mult, .. }
            | Summand::KoPeriodic { mult, .. }
            | Summand::KoConnective { mult, .. } => *mult = 0,
            Summand::PAdic { rank, .. } | Summand::Pruefer { rank, .. } => *rank = 0,
            Summand::Unknown { .. } => return None,
        }
        Some(k)
    }

    fn scaled(self, factor: u64) -> Summand {
        let m = self.mult().unwrap_or(0);
        let mut k = self.key().expect("scaling a mergeable summand");
        k.add_mult(m * factor);
        k
    }

    fn add_mult(&mut self, extra: u64) {
        match self {
            Summand::Free(r) => *r += extra,
            Summand::Cyclic { mult, .. }
            | Summand::KoPeriodic { mult, .. }
            | Summand::KoConnective { mult, .. } => *mult += extra,
            Summand::PAdic { rank, .. } | Summand::Pruefer { rank, .. } => *rank += extra,
            Summand::Unknown { .. } => unreachable!("unknown summands never merge"),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Free(r) => write!(f, "Z^{r}"),
            Summand::Cyclic { prime, exponent, mult } => write!(f, "(Z/{prime}^{exponent})^{mult}"),
            Summand::PAdic { prime, rank } => write!(f, "Zp^[{prime}]^{rank}"),
            Summand::Pruefer { prime, rank } => write!(f, "Pruefer[{prime}]^{rank}"),
            Summand::KoPeriodic { degree, mult } => write!(f, "KO[{degree}](pt)^{mult}"),
            Summand::KoConnective { degree, mult } => write!(f, "ko[{degree}](pt)^{mult}"),
            Summand::Unknown { tag, bounds: Bounds::Unbounded } => write!(f, "T{{{tag}; bounds=?}}"),
            Summand::Unknown { tag, bounds: Bounds::Layers(b) } => {
                let list: Vec<String> = b.iter().map(u64::to_string).collect();
                write!(f, "T{{{tag}; bounds=[{}]}}", list.join(","))
            }
        }
    }
}

/// A normalized direct sum of [`Summand`]s.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupExpression {
    summands: Vec<Summand>,
}

impl GroupExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(summands: impl IntoIterator<Item = Summand>) -> Self {
        let mut e = GroupExpression { summands: summands.into_iter().collect() };
        e.normalize();
        e
    }

    pub fn free(rank: u64) -> Self {
        Self::new([Summand::Free(rank)])
    }

    /// `(Z/p)^mult`.
    pub fn elementary(p: u64, mult: u64) -> Self {
        Self::new([Summand::Cyclic { prime: p, exponent: 1, mult }])
    }

    pub fn from_group(g: &FGAbelianGroup) -> Self {
        let mut s = vec![Summand::Free(g.free_rank() as u64)];
        for (prime, exponent, mult) in g.primary_decomposition() {
            s.push(Summand::Cyclic { prime, exponent, mult: mult as u64 });
        }
        Self::new(s)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Merges like summands, drops trivial ones and sorts.
    pub fn normalize(&mut self) {
        let mut merged: Vec<Summand> = Vec::with_capacity(self.summands.len());
        for s in self.summands.drain(..) {
            if s.is_zero() {
                continue;
            }
            match s.key() {
                Some(k) => match merged.iter_mut().find(|m| m.key().as_ref() == Some(&k)) {
                    Some(m) => m.add_mult(s.mult().unwrap_or(0)),
                    None => merged.push(s),
                },
                None => merged.push(s),
            }
        }
        merged.sort();
        self.summands = merged;
    }

    pub fn plus(&self, other: &GroupExpression) -> GroupExpression {
        Self::new(self.summands.iter().chain(&other.summands).cloned())
    }

    pub fn with(mut self, s: Summand) -> GroupExpression {
        self.summands.push(s);
        self.normalize();
        self
    }

    /// Replaces every KO/ko point summand by its table value.
    pub fn evaluate(&self) -> GroupExpression {
        let mut out = Vec::new();
        for s in &self.summands {
            let table = match s {
                Summand::KoPeriodic { degree, mult } => Some((ko_point_table(*degree as i64, false), *mult)),
                Summand::KoConnective { degree, mult } => Some((ko_point_table(*degree, true), *mult)),
                _ => None,
            };
            match table {
                Some((g, mult)) => {
                    out.extend(GroupExpression::from_group(&g).summands.into_iter().map(|e| e.scaled(mult)));
                }
                None => out.push(s.clone()),
            }
        }
        Self::new(out)
    }

    /// Total rank of `Z` summands after evaluation.
    pub fn free_rank(&self) -> u64 {
        self.evaluate()
            .summands
            .iter()
            .map(|s| if let Summand::Free(r) = s { *r } else { 0 })
            .sum()
    }

    /// The finitely generated group this expression denotes, if it has only
    /// `Z`, `Z/q^e` and KO/ko point summands.
    pub fn to_group(&self) -> Option<FGAbelianGroup> {
        let mut free = 0usize;
        let mut cyc = Vec::new();
        for s in self.evaluate().summands {
            match s {
                Summand::Free(r) => free += r as usize,
                Summand::Cyclic { prime, exponent, mult } => {
                    let order = Int::from(prime).pow(exponent);
                    cyc.extend(std::iter::repeat_n(order, mult as usize));
                }
                _ => return None,
            }
        }
        Some(FGAbelianGroup::new(free, cyc))
    }

    /// Drops every unknown-torsion summand.
    pub fn without_unknowns(&self) -> GroupExpression {
        Self::new(self.summands.iter().filter(|s| !matches!(s, Summand::Unknown { .. })).cloned())
    }

    pub fn unknowns(&self) -> impl Iterator<Item = (&str, &Bounds)> {
        self.summands.iter().filter_map(|s| match s {
            Summand::Unknown { tag, bounds } => Some((tag.as_str(), bounds)),
            _ => None,
        })
    }
}

impl From<&FGAbelianGroup> for GroupExpression {
    fn from(g: &FGAbelianGroup) -> Self {
        GroupExpression::from_group(g)
    }
}

impl fmt::Display for GroupExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                write!(f, " (+) ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group expression term `{0}`")]
pub struct ParseExprError(pub String);

fn between<'a>(s: &'a str, open: &str, close: &str) -> Option<(&'a str, &'a str)> {
    let start = s.find(open)? + open.len();
    let end = start + s[start..].find(close)?;
    Some((&s[start..end], &s[end + close.len()..]))
}

fn parse_term(t: &str) -> Option<Summand> {
    if let Some(inner) = t.strip_prefix("T{").and_then(|r| r.strip_suffix('}')) {
        let (tag, b) = inner.rsplit_once("; bounds=")?;
        let bounds = if b == "?" {
            Bounds::Unbounded
        } else {
            let list = b.strip_prefix('[')?.strip_suffix(']')?;
            let v = if list.is_empty() {
                Vec::new()
            } else {
                list.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<u64>>>()?
            };
            Bounds::Layers(v)
        };
        return Some(Summand::Unknown { tag: tag.to_string(), bounds });
    }
    if let Some(r) = t.strip_prefix("Z^") {
        return Some(Summand::Free(r.parse().ok()?));
    }
    if let Some(r) = t.strip_prefix("(Z/") {
        let (q, rest) = r.split_once('^')?;
        let (e, rest) = rest.split_once(")^")?;
        return Some(Summand::Cyclic { prime: q.parse().ok()?, exponent: e.parse().ok()?, mult: rest.parse().ok()? });
    }
    if t.starts_with("Zp^[") {
        let (p, rest) = between(t, "[", "]")?;
        return Some(Summand::PAdic { prime: p.parse().ok()?, rank: rest.strip_prefix('^')?.parse().ok()? });
    }
    if t.starts_with("Pruefer[") {
        let (p, rest) = between(t, "[", "]")?;
        return Some(Summand::Pruefer { prime: p.parse().ok()?, rank: rest.strip_prefix('^')?.parse().ok()? });
    }
    let connective = t.starts_with("ko[");
    if connective || t.starts_with("KO[") {
        let (d, rest) = between(t, "[", "]")?;
        let mult = rest.strip_prefix("(pt)^")?.parse().ok()?;
        let degree: i64 = d.parse().ok()?;
        return Some(if connective {
            Summand::KoConnective { degree, mult }
        } else {
            Summand::ko(degree, mult)
        });
    }
    None
}

impl FromStr for GroupExpression {
    type Err = ParseExprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(GroupExpression::zero());
        }
        let terms = s
            .split(" (+) ")
            .map(|t| parse_term(t.trim()).ok_or_else(|| ParseExprError(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupExpression::new(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let e = GroupExpression::new([Summand::ko(1, 3)]).evaluate();
        assert_eq!(e, GroupExpression::elementary(2, 3));
        assert!(GroupExpression::new([Summand::ko(3, 5)]).evaluate().is_zero());
        let f = GroupExpression::new([Summand::Free(2), Summand::ko(4, 1)]).evaluate();
        assert_eq!(f, GroupExpression::free(3));
    }

    #[test]
    fn normalization_merges_and_drops() {
        let e = GroupExpression::new([
            Summand::Free(1),
            Summand::Unknown { tag: "T1".into(), bounds: Bounds::Layers(vec![0, 0]) },
            Summand::Free(2),
            Summand::Cyclic { prime: 3, exponent: 1, mult: 0 },
            Summand::KoConnective { degree: -2, mult: 4 },
            Summand::ko(-4, 1),
        ]);
        assert_eq!(e.to_string(), "Z^3 (+) KO[4](pt)^1");
        let kept = GroupExpression::new([Summand::Unknown { tag: "to_3".into(), bounds: Bounds::Unbounded }]);
        assert_eq!(kept.to_string(), "T{to_3; bounds=?}");
    }

    #[test]
    fn render_and_parse_round_trip() {
        let e = GroupExpression::new([
            Summand::Pruefer { prime: 3, rank: 6 },
            Summand::Free(2),
            Summand::PAdic { prime: 3, rank: 6 },
            Summand::Cyclic { prime: 3, exponent: 1, mult: 2 },
            Summand::KoConnective { degree: 2, mult: 1 },
            Summand::Unknown { tag: "TO^{5}".into(), bounds: Bounds::Layers(vec![3, 0]) },
        ]);
        let s = e.to_string();
        assert_eq!(
            s,
            "Z^2 (+) (Z/3^1)^2 (+) Zp^[3]^6 (+) Pruefer[3]^6 (+) ko[2](pt)^1 (+) T{TO^{5}; bounds=[3,0]}"
        );
        assert_eq!(s.parse::<GroupExpression>().unwrap(), e);
        assert_eq!("0".parse::<GroupExpression>().unwrap(), GroupExpression::zero());
        assert!("Q^2".parse::<GroupExpression>().is_err());
    }

    #[test]
    fn from_group_uses_primary_parts() {
        let g = FGAbelianGroup::new(1, [Int::from(6)]);
        assert_eq!(GroupExpression::from_group(&g).to_string(), "Z^1 (+) (Z/2^1)^1 (+) (Z/3^1)^1");
        assert_eq!(GroupExpression::from_group(&g).to_group().unwrap(), g);
    }
}
