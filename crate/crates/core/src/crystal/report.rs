//! Assembled theorem reports and their text/JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupExpression;
use crate::crystal::{
    abelianization, brute_force_cohomology_table, euler_characteristic_quotient, finite_subgroup_data, Field,
    GammaDescriptor, Space, Theorems, Variant,
};
use crate::error::{Error, Result};
use crate::int::Int;

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Overrides every degree window when set.
    pub degrees: Option<(i64, i64)>,
    pub run_oracles: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { degrees: None, run_oracles: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorSummary {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    pub canonical: bool,
    pub rho: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scalars {
    pub d_ev: u64,
    pub d_odd: u64,
    pub class_count: u64,
    pub euler: i64,
    pub fixed_points: u64,
    pub cokernel: String,
    pub abelianization: String,
}

pub type DegreeMap = BTreeMap<i64, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub descriptor: DescriptorSummary,
    pub scalars: Scalars,
    pub headline: BTreeMap<String, String>,
    pub groups: BTreeMap<String, DegreeMap>,
    pub warnings: Vec<String>,
}

fn window(default: (i64, i64), opts: &ReportOptions) -> std::ops::RangeInclusive<i64> {
    let (a, b) = opts.degrees.unwrap_or(default);
    a..=b
}

fn nonneg_window(default: (i64, i64), opts: &ReportOptions) -> std::ops::RangeInclusive<i64> {
    let w = window(default, opts);
    (*w.start()).max(0)..=*w.end()
}

fn fill(
    groups: &mut BTreeMap<String, DegreeMap>,
    name: &str,
    degrees: impl IntoIterator<Item = i64>,
    mut f: impl FnMut(i64) -> Result<GroupExpression>,
) -> Result<()> {
    let mut map = DegreeMap::new();
    for m in degrees {
        map.insert(m, f(m)?.to_string());
    }
    groups.insert(name.to_string(), map);
    Ok(())
}

impl TheoremReport {
    pub fn build(g: &GammaDescriptor, opts: &ReportOptions) -> Result<TheoremReport> {
        let th = Theorems::new(g)?;
        let fsd = finite_subgroup_data(g)?;
        let (d_ev, d_odd) = th.d_ev_odd()?;
        let scalars = Scalars {
            d_ev,
            d_odd,
            class_count: fsd.class_count,
            euler: euler_characteristic_quotient(g)?,
            fixed_points: fsd.fixed_point_count,
            cokernel: GroupExpression::from_group(&fsd.cokernel).to_string(),
            abelianization: GroupExpression::from_group(&abelianization(g)?).to_string(),
        };
        let mut headline = BTreeMap::new();
        headline.insert("K0_cstar".to_string(), th.cstar_k_theory(0, Field::Complex)?.to_string());
        headline.insert("K1_cstar".to_string(), th.cstar_k_theory(1, Field::Complex)?.to_string());

        let n = g.n as i64;
        let hom = nonneg_window((0, n), opts);
        let kw = window((0, 1), opts);
        let kow = window((0, 7), opts);
        let cw = window((0, n + 8), opts);
        let mut groups = BTreeMap::new();
        let mut warnings = Vec::new();

        fill(&mut groups, "H^*(BGamma)", hom.clone(), |m| th.cohomology_bgamma(m))?;
        fill(&mut groups, "H_*(BGamma)", hom.clone(), |m| th.homology_bgamma(m))?;
        fill(&mut groups, "H^*(quotient)", hom.clone(), |m| th.cohomology_quotient(m))?;
        fill(&mut groups, "H_*(quotient)", hom.clone(), |m| th.homology_quotient(m))?;
        fill(&mut groups, "restriction kernel", hom.clone(), |m| Ok(th.restriction_map_data(m)?.kernel))?;
        fill(&mut groups, "restriction image torsion", hom.clone(), |m| {
            Ok(th.restriction_map_data(m)?.image_torsion)
        })?;
        fill(&mut groups, "K^*(BGamma)", kw.clone(), |m| Ok(th.k_theory_bgamma(m, Variant::Cohomology)))?;
        fill(&mut groups, "K_*(BGamma)", kw.clone(), |m| Ok(th.k_theory_bgamma(m, Variant::Homology)))?;
        fill(&mut groups, "K^*(quotient)", kw.clone(), |m| Ok(th.k_theory_quotient(m, Variant::Cohomology)))?;
        fill(&mut groups, "K_*(quotient)", kw.clone(), |m| Ok(th.k_theory_quotient(m, Variant::Homology)))?;
        fill(&mut groups, "K_*(C*_r)", kw.clone(), |m| th.cstar_k_theory(m, Field::Complex))?;
        fill(&mut groups, "equivariant K_*", kw.clone(), |m| Ok(th.equivariant_k(m, Variant::Homology)))?;
        fill(&mut groups, "K sequence left", kw.clone(), |m| Ok(th.equivariant_exact_sequences(m)?.complex.left))?;

        if g.p == 2 {
            warnings.push("p odd required: KO and ko groups omitted".to_string());
        } else {
            let spaces = [
                ("KO^*(BGamma)", Space::BGamma, Variant::Cohomology),
                ("KO_*(BGamma)", Space::BGamma, Variant::Homology),
                ("KO^*(quotient)", Space::Quotient, Variant::Cohomology),
                ("KO_*(quotient)", Space::Quotient, Variant::Homology),
            ];
            for (name, space, variant) in spaces {
                fill(&mut groups, name, kow.clone(), |m| Ok(th.ko_theory(m, space, variant)?.evaluate()))?;
            }
            fill(&mut groups, "KO_*(C*_r;R)", kow.clone(), |m| Ok(th.cstar_k_theory(m, Field::Real)?.evaluate()))?;
            fill(&mut groups, "equivariant KO_*", kow.clone(), |m| {
                Ok(th.equivariant_ko(m, Variant::Homology)?.evaluate())
            })?;
            fill(&mut groups, "KO sequence left", kow.clone(), |m| {
                let seq = th.equivariant_exact_sequences(m)?.real.ok_or_else(|| Error::Internal("no real sequence".into()))?;
                Ok(seq.left)
            })?;
            fill(&mut groups, "ko_*(BGamma)", cw.clone(), |m| Ok(th.connective_ko(m, Space::BGamma)?.evaluate()))?;
            fill(&mut groups, "ko_*(quotient)", cw.clone(), |m| Ok(th.connective_ko(m, Space::Quotient)?.evaluate()))?;
        }

        if opts.run_oracles && !hom.is_empty() {
            match brute_force_cohomology_table(g, *hom.end()) {
                Ok(table) => {
                    let mut map = DegreeMap::new();
                    for m in hom.clone() {
                        let brute = &table[m as usize];
                        let closed = th.cohomology_bgamma(m)?;
                        if *brute != closed {
                            warnings.push(format!("oracle mismatch for H^{m}(BGamma): brute force {brute}, closed form {closed}"));
                        }
                        map.insert(m, brute.to_string());
                    }
                    groups.insert("H^*(BGamma) oracle".to_string(), map);
                }
                Err(e @ Error::ExteriorTooLarge { .. }) => warnings.push(format!("oracle skipped: {e}")),
                Err(e) => return Err(e),
            }
        }

        Ok(TheoremReport {
            descriptor: DescriptorSummary { p: g.p, n: g.n, k: g.k, canonical: g.canonical, rho: g.rho.to_rows() },
            scalars,
            headline,
            groups,
            warnings,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<TheoremReport, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let d = &self.descriptor;
        let s = &self.scalars;
        let mut out = String::new();
        let rho: Vec<String> = d
            .rho
            .iter()
            .map(|r| format!("[{}]", r.iter().map(Int::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(out, "Gamma = Z^{} x| Z/{}  (k = {}, {})", d.n, d.p, d.k, if d.canonical { "canonical" } else { "non-canonical" });
        let _ = writeln!(out, "rho = [{}]", rho.join(","));
        let _ = writeln!(out, "d_ev = {}, d_odd = {}", s.d_ev, s.d_odd);
        let _ = writeln!(out, "conjugacy classes = {}, fixed points = {}, euler = {}", s.class_count, s.fixed_points, s.euler);
        let _ = writeln!(out, "coker(rho - I) = {}", s.cokernel);
        let _ = writeln!(out, "abelianization = {}", s.abelianization);
        for (key, val) in &self.headline {
            let _ = writeln!(out, "{key} = {val}");
        }
        for (name, map) in &self.groups {
            let _ = writeln!(out, "\n{name}");
            for (m, val) in map {
                let _ = writeln!(out, "  {m:>3}: {val}");
            }
        }
        if !self.warnings.is_empty() {
            let _ = writeln!(out, "\nwarnings");
            for w in &self.warnings {
                let _ = writeln!(out, "  {w}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::canonical_gamma;

    #[test]
    fn p3_k1() {
        let r = TheoremReport::build(&canonical_gamma(3, 1).unwrap(), &ReportOptions::default()).unwrap();
        assert_eq!(r.headline["K0_cstar"], "Z^8");
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        assert_eq!(r.groups["H^*(BGamma)"], r.groups["H^*(BGamma) oracle"]);
        assert_eq!(r.groups["KO_*(C*_r;R)"][&0], "Z^4");
        let json = r.to_json();
        let back = TheoremReport::from_json(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn p2_omits_ko() {
        let r = TheoremReport::build(&canonical_gamma(2, 1).unwrap(), &ReportOptions::default()).unwrap();
        assert_eq!(r.headline["K0_cstar"], "Z^3");
        assert!(!r.groups.contains_key("KO_*(BGamma)"));
        assert!(r.warnings.iter().any(|w| w.contains("p odd required")));
    }

    #[test]
    fn degree_override() {
        let opts = ReportOptions { degrees: Some((-2, 2)), run_oracles: false };
        let r = TheoremReport::build(&canonical_gamma(3, 1).unwrap(), &opts).unwrap();
        assert_eq!(r.groups["K_*(C*_r)"].len(), 5);
        assert_eq!(r.groups["H^*(BGamma)"].len(), 3);
        assert!(!r.groups.contains_key("H^*(BGamma) oracle"));
    }
}
