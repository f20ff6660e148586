//! The invariant grid: every consistency property of the library, evaluated
//! for one group and collected into a pass/fail table.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::{FGAbelianGroup, GroupExpression};
use crate::crystal::{
    abelianization, brute_force_cohomology_table, brute_force_homology_table, euler_characteristic_quotient,
    finite_subgroup_data, Field, GammaDescriptor, Space, Theorems, Variant,
};
use crate::error::Error;
use crate::linalg::{divisibility_chain, smith_normal_form, IntMatrix};
use crate::repring::{
    a_j_inclusion_exclusion, a_vector, lambda_class, lambda_class_table, r_sum_identities, RepClass,
};
use crate::zpmod::{binomial, ZpModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub p: u64,
    pub k: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = format!("verify p={} k={}\n", self.p, self.k);
        for c in &self.checks {
            out.push_str(&format!("{:<width$}  {}", c.name, c.status));
            if !c.detail.is_empty() {
                out.push_str("  ");
                out.push_str(&c.detail);
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{passed}/{} passed\n", self.checks.len()));
        out
    }
}

/// A hard error raised inside a check, with the cell that produced it.
#[derive(Debug)]
pub struct InternalFailure {
    pub check: &'static str,
    pub p: u64,
    pub k: usize,
    pub m: Option<i64>,
    pub i: Option<i64>,
    pub source: Error,
}

impl fmt::Display for InternalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
        write!(
            f,
            "internal error in `{}`; reproduce with (p, k, m, i) = ({}, {}, {}, {}): {}",
            self.check,
            self.p,
            self.k,
            show(self.m),
            show(self.i),
            self.source
        )
    }
}

impl std::error::Error for InternalFailure {}

struct Located {
    m: Option<i64>,
    i: Option<i64>,
    err: Error,
}

trait At<T> {
    fn at(self, m: Option<i64>, i: Option<i64>) -> Result<T, Located>;
    fn plain(self) -> Result<T, Located>
    where
        Self: Sized,
    {
        self.at(None, None)
    }
    fn deg(self, m: i64) -> Result<T, Located>
    where
        Self: Sized,
    {
        self.at(Some(m), None)
    }
}

impl<T> At<T> for crate::error::Result<T> {
    fn at(self, m: Option<i64>, i: Option<i64>) -> Result<T, Located> {
        self.map_err(|err| Located { m, i, err })
    }
}

enum Outcome {
    Checked(Vec<String>),
    Skipped(String),
}

type CheckFn = fn(&Ctx) -> Result<Outcome, Located>;

struct TateRow {
    /// `Ĥ^i` for `i = -3, ..., 5`.
    values: Vec<FGAbelianGroup>,
}

impl TateRow {
    fn get(&self, i: i64) -> &FGAbelianGroup {
        &self.values[(i + 3) as usize]
    }
}

struct Ctx<'a> {
    g: &'a GammaDescriptor,
    th: Theorems,
    module: ZpModule,
    /// `Λ^j` of the module with its Tate groups, or the guardrail message.
    ext: Result<Vec<(ZpModule, TateRow)>, String>,
}

impl Ctx<'_> {
    fn n(&self) -> i64 {
        self.g.n as i64
    }
}

fn build_ctx(g: &GammaDescriptor) -> Result<Ctx<'_>, Located> {
    let th = Theorems::new(g).plain()?;
    let module = g.module();
    let mut ext = Vec::new();
    let mut guard = None;
    for j in 0..=g.n {
        match module.exterior_power(j) {
            Ok(lam) => {
                let values = (-3..=5).map(|i| lam.tate(i).at(Some(j as i64), Some(i))).collect::<Result<_, _>>()?;
                ext.push((lam, TateRow { values }));
            }
            Err(e @ Error::ExteriorTooLarge { .. }) => {
                guard = Some(e.to_string());
                break;
            }
            Err(e) => return Err(Located { m: Some(j as i64), i: None, err: e }),
        }
    }
    let ext = match guard {
        Some(msg) => Err(msg),
        None => Ok(ext),
    };
    Ok(Ctx { g, th, module, ext })
}

macro_rules! expect {
    ($fails:expr, $cond:expr, $($fmt:tt)+) => {
        if !$cond {
            $fails.push(format!($($fmt)+));
        }
    };
}

fn check_snf(ctx: &Ctx) -> Result<Outcome, Located> {
    let mut fails = Vec::new();
    let n = ctx.g.n;
    let mut mats = vec![
        ("rho - I", ctx.g.rho.sub(&IntMatrix::identity(n))),
        ("N(rho)", ctx.module.norm_matrix()),
        ("fixed example", IntMatrix::from_rows(&[[2, 4], [6, 8]])),
    ];
    if n >= 2 && n <= 8 {
        let lam = ctx.module.exterior_power(2).plain()?;
        mats.push(("Lambda^2(rho) - I", lam.action().sub(&IntMatrix::identity(lam.rank()))));
    }
    for (name, m) in mats {
        let (d, u, v) = smith_normal_form(&m);
        expect!(fails, u.mul(&m).mul(&v) == d, "{name}: U*M*V != D");
        expect!(fails, u.is_unimodular() && v.is_unimodular(), "{name}: transform not unimodular");
        let mut diag = Vec::new();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r != c {
                    expect!(fails, d[(r, c)].is_zero(), "{name}: off-diagonal entry at ({r},{c})");
                } else if !d[(r, c)].is_zero() {
                    diag.push(d[(r, c)].clone());
                }
            }
        }
        expect!(fails, diag.iter().all(|x| x.signum() > 0), "{name}: nonpositive invariant");
        expect!(fails, diag.windows(2).all(|w| w[0].divides(&w[1])), "{name}: divisibility chain broken");
        expect!(fails, divisibility_chain(diag.clone()) == diag, "{name}: chain not canonical");
    }
    Ok(Outcome::Checked(fails))
}

fn check_structure(ctx: &Ctx) -> Result<Outcome, Located> {
    let mut fails = Vec::new();
    let pk = ctx.g.p_to_k();
    match finite_subgroup_data(ctx.g) {
        Ok(f) => {
            expect!(fails, f.cokernel == FGAbelianGroup::elementary(ctx.g.p, ctx.g.k), "coker(rho - I) = {}", f.cokernel);
            expect!(fails, f.class_count == pk, "class count {}", f.class_count);
            expect!(fails, f.fixed_point_count == pk, "fixed points {}", f.fixed_point_count);
        }
        Err(e) => fails.push(e.to_string()),
    }
    match abelianization(ctx.g) {
        Ok(ab) => expect!(fails, ab == FGAbelianGroup::elementary(ctx.g.p, ctx.g.k + 1), "abelianization {ab}"),
        Err(e) => fails.push(e.to_string()),
    }
    Ok(Outcome::Checked(fails))
}

fn exterior<'a>(ctx: &'a Ctx) -> Result<&'a [(ZpModule, TateRow)], Outcome> {
    ctx.ext.as_deref().map_err(|msg| Outcome::Skipped(msg.clone()))
}

fn check_r_oracle(ctx: &Ctx) -> Result<Outcome, Located> {
    let ext = match exterior(ctx) {
        Ok(e) => e,
        Err(o) => return Ok(o),
    };
    let mut fails = Vec::new();
    for (m, (lam, _)) in ext.iter().enumerate() {
        let r = ctx.th.r(m as i64) as usize;
        let fixed = lam.invariants_rank();
        expect!(fails, fixed == r, "r_{m}: representation ring {r}, fixed rank {fixed}");
        let co = lam.coinvariants().free_rank();
        expect!(fails, co == r, "r_{m}: coinvariant rank {co}");
    }
    Ok(Outcome::Checked(fails))
}

fn check_k1_closed_form(ctx: &Ctx) -> Result<Outcome, Located> {
    if ctx.g.k != 1 {
        return Ok(Outcome::Skipped("k = 1 only".into()));
    }
    let p = ctx.g.p;
    let mut fails = Vec::new();
    for m in 0..=ctx.n() + 2 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let num = binomial(p - 1, m as u64) as i128 + sign * (p as i128 - 1);
        let expected = if m as u64 >= p { 0 } else { num / p as i128 };
        expect!(fails, m as u64 >= p || num % p as i128 == 0, "m={m}: non-integral closed form");
        let r = ctx.th.r(m) as i128;
        expect!(fails, r == expected, "r_{m} = {r}, closed form {expected}");
    }
    Ok(Outcome::Checked(fails))
}

fn check_sums(ctx: &Ctx) -> Result<Outcome, Located> {
    let (p, k) = (ctx.g.p, ctx.g.k as u64);
    let mut fails = Vec::new();
    let sums = match r_sum_identities(p, k) {
        Ok(s) => s,
        Err(e) => return Ok(Outcome::Checked(vec![e.to_string()])),
    };
    let r = ctx.th.r_values();
    let all: u64 = r.iter().sum();
    let even: u64 = r.iter().step_by(2).sum();
    let odd: u64 = r.iter().skip(1).step_by(2).sum();
    let n = ctx.g.n as u32;
    let expected_all = if p == 2 { 1u128 << (k - 1) } else { ((1u128 << n) - 1) / p as u128 + 1 };
    expect!(fails, all as u128 == expected_all, "sum r_m = {all}, closed form {expected_all}");
    expect!(fails, sums.sum_all == all && sums.sum_even == even && sums.sum_odd == odd, "split sums {sums:?}");
    let alt = (p - 1) * p.pow(k as u32 - 1);
    expect!(fails, sums.alternating == alt as i64 && even as i64 - odd as i64 == alt as i64, "alternating sum != {alt}");
    Ok(Outcome::Checked(fails))
}

fn check_rep_ring(ctx: &Ctx) -> Result<Outcome, Located> {
    let p = ctx.g.p;
    let mut fails = Vec::new();
    let classes: Vec<RepClass> = (0..p as i64).map(|l| lambda_class(p, l)).collect::<Result<_, _>>().plain()?;
    let reg = RepClass::regular(p);
    for l in 1..p as usize {
        let lhs = &classes[l] + &classes[l - 1];
        let rhs = reg.scale(&BigRational::new(BigInt::from(binomial(p, l as u64)), BigInt::from(p)));
        expect!(fails, lhs == rhs, "consecutive classes at l={l}");
    }
    if p != 2 {
        let total = classes.iter().fold(RepClass::zero(p), |a, b| &a + b);
        let coeff = BigRational::new(BigInt::from((1u128 << (p - 1)) - 1), BigInt::from(p));
        let expected = &RepClass::trivial(p) + &reg.scale(&coeff);
        expect!(fails, total == expected, "total class {total:?}");
    }
    let table = lambda_class_table(p, ctx.g.k as u64).plain()?;
    for (m, c) in table.iter().enumerate() {
        expect!(fails, c.is_effective(), "class of Lambda^{m} not effective");
        let dim = BigRational::from_integer(BigInt::from(binomial(ctx.g.n as u64, m as u64)));
        expect!(fails, c.dim() == dim, "class of Lambda^{m} has dimension {}", c.dim());
    }
    Ok(Outcome::Checked(fails))
}

fn check_a(ctx: &Ctx) -> Result<Outcome, Located> {
    let (p, k, n) = (ctx.g.p, ctx.g.k as u64, ctx.g.n);
    let mut fails = Vec::new();
    let a = a_vector(p, k);
    expect!(fails, a.len() == n + 1, "a has length {}", a.len());
    for j in 0..=n + 2 {
        let dp = a.get(j).copied().unwrap_or(0);
        let ie = a_j_inclusion_exclusion(p, k, j as u64);
        expect!(fails, dp == ie, "a_{j}: dynamic programming {dp}, inclusion-exclusion {ie}");
    }
    expect!(fails, a.iter().zip(a.iter().rev()).all(|(x, y)| x == y), "a not symmetric");
    expect!(fails, a.iter().sum::<u64>() == ctx.th.pk, "sum a_j != p^k");
    expect!(fails, a[0] == 1 && a[1] == k, "a_0, a_1 = {}, {}", a[0], a[1]);
    expect!(fails, ctx.th.s(1) == 1 && ctx.th.s(2) == k + 1, "s_1, s_2 wrong");
    for m in ctx.n() + 1..=ctx.n() + 3 {
        expect!(fails, ctx.th.s(m) == ctx.th.pk, "s_{m} != p^k");
    }
    for m in 0..=ctx.n() {
        expect!(fails, ctx.th.s(m + 1) == ctx.th.s(m) + ctx.th.a(m), "s_{} != s_{m} + a_{m}", m + 1);
    }
    Ok(Outcome::Checked(fails))
}

fn check_orders(ctx: &Ctx) -> Result<Outcome, Located> {
    let mut fails = Vec::new();
    let m = &ctx.module;
    expect!(fails, m.has_valid_order(), "module");
    expect!(fails, m.dual().has_valid_order(), "dual");
    let t = m.tensor(m).plain()?;
    expect!(fails, t.has_valid_order(), "tensor square");
    if let Ok(ext) = &ctx.ext {
        for (j, (lam, _)) in ext.iter().enumerate() {
            expect!(fails, lam.has_valid_order(), "Lambda^{j}");
            expect!(fails, lam.dual().has_valid_order(), "dual of Lambda^{j}");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_checkerboard(ctx: &Ctx) -> Result<Outcome, Located> {
    let ext = match exterior(ctx) {
        Ok(e) => e,
        Err(o) => return Ok(o),
    };
    let mut fails = Vec::new();
    for (j, (_, row)) in ext.iter().enumerate() {
        for i in 0..=3i64 {
            let expected = if (i + j as i64) % 2 == 0 {
                FGAbelianGroup::elementary(ctx.g.p, ctx.th.a(j as i64) as usize)
            } else {
                FGAbelianGroup::trivial()
            };
            expect!(fails, *row.get(i) == expected, "j={j}, i={i}: {} expected {expected}", row.get(i));
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_periodicity(ctx: &Ctx) -> Result<Outcome, Located> {
    let ext = match exterior(ctx) {
        Ok(e) => e,
        Err(o) => return Ok(o),
    };
    let mut fails = Vec::new();
    for (j, (_, row)) in ext.iter().enumerate() {
        for i in -3..=3 {
            expect!(fails, row.get(i) == row.get(i + 2), "j={j}, i={i}");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_norm_sequence(ctx: &Ctx) -> Result<Outcome, Located> {
    let ext = match exterior(ctx) {
        Ok(e) => e,
        Err(o) => return Ok(o),
    };
    let mut fails = Vec::new();
    for (j, (lam, row)) in ext.iter().enumerate() {
        let co = lam.coinvariants();
        expect!(fails, co.free_rank() == lam.invariants_rank(), "j={j}: coinvariant and invariant ranks differ");
        expect!(fails, co.torsion_subgroup() == *row.get(-1), "j={j}: torsion of coinvariants != Tate H^-1");
    }
    Ok(Outcome::Checked(fails))
}

fn check_tate_duality(ctx: &Ctx) -> Result<Outcome, Located> {
    let ext = match exterior(ctx) {
        Ok(e) => e,
        Err(o) => return Ok(o),
    };
    let mut fails = Vec::new();
    for (j, (lam, row)) in ext.iter().enumerate() {
        let dual = lam.dual();
        for i in [0i64, 1] {
            let d = dual.tate(-i).at(Some(j as i64), Some(i))?;
            expect!(fails, *row.get(i) == d, "j={j}, i={i}: {} vs dual {d}", row.get(i));
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_dual_conventions(ctx: &Ctx) -> Result<Outcome, Located> {
    if ctx.ext.is_err() {
        return Ok(Outcome::Skipped("exterior guardrail".into()));
    }
    let mut fails = Vec::new();
    let p = ctx.g.p;
    let transpose = ctx.module.dual();
    let inverse = ZpModule::new(p, ctx.g.rho.pow(p as u32 - 1).transpose()).plain()?;
    for j in 0..=ctx.g.n {
        let a = transpose.exterior_power(j).deg(j as i64)?;
        let b = inverse.exterior_power(j).deg(j as i64)?;
        expect!(fails, a.invariants_rank() == b.invariants_rank(), "j={j}: invariant ranks differ");
        for i in [0i64, 1] {
            let (ta, tb) = (a.tate(i).at(Some(j as i64), Some(i))?, b.tate(i).at(Some(j as i64), Some(i))?);
            expect!(fails, ta == tb, "j={j}, i={i}: {ta} vs {tb}");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn oracle_table(
    ctx: &Ctx,
    brute: crate::error::Result<Vec<GroupExpression>>,
    closed: impl Fn(i64) -> crate::error::Result<GroupExpression>,
) -> Result<Outcome, Located> {
    let table = match brute {
        Ok(t) => t,
        Err(e @ Error::ExteriorTooLarge { .. }) => return Ok(Outcome::Skipped(e.to_string())),
        Err(e) => return Err(Located { m: None, i: None, err: e }),
    };
    let mut fails = Vec::new();
    for m in 0..=ctx.n() {
        let c = closed(m).deg(m)?;
        let b = &table[m as usize];
        expect!(fails, *b == c, "m={m}: brute force {b}, closed form {c}");
    }
    Ok(Outcome::Checked(fails))
}

fn check_brute_cohomology(ctx: &Ctx) -> Result<Outcome, Located> {
    oracle_table(ctx, brute_force_cohomology_table(ctx.g, ctx.n()), |m| ctx.th.cohomology_bgamma(m))
}

fn check_brute_homology(ctx: &Ctx) -> Result<Outcome, Located> {
    oracle_table(ctx, brute_force_homology_table(ctx.g, ctx.n()), |m| ctx.th.homology_bgamma(m))
}

fn group(e: GroupExpression, m: i64) -> Result<FGAbelianGroup, Located> {
    e.to_group()
        .ok_or_else(|| Located { m: Some(m), i: None, err: Error::Internal(format!("{e} is not finitely generated")) })
}

fn check_uct(ctx: &Ctx) -> Result<Outcome, Located> {
    let th = &ctx.th;
    let mut fails = Vec::new();
    type Eval<'a> = Box<dyn Fn(i64) -> crate::error::Result<GroupExpression> + 'a>;
    let spaces: [(&str, Eval, Eval); 2] = [
        ("BGamma", Box::new(|m| th.cohomology_bgamma(m)), Box::new(|m| th.homology_bgamma(m))),
        ("quotient", Box::new(|m| th.cohomology_quotient(m)), Box::new(|m| th.homology_quotient(m))),
    ];
    for (name, coh, hom) in spaces {
        for m in 0..=ctx.n() {
            let h = group(hom(m).deg(m)?, m)?;
            let c0 = group(coh(m).deg(m)?, m)?;
            let c1 = group(coh(m + 1).deg(m + 1)?, m + 1)?;
            let uct = c0.hom_dual().direct_sum(&c1.ext_dual());
            expect!(fails, h == uct, "{name} m={m}: H_m = {h}, dual of cohomology = {uct}");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_triangle(ctx: &Ctx) -> Result<Outcome, Located> {
    let th = &ctx.th;
    let mut fails = Vec::new();
    let (d_ev, d_odd) = match th.d_ev_odd() {
        Ok(d) => d,
        Err(e) => return Ok(Outcome::Checked(vec![e.to_string()])),
    };
    let even: u64 = th.r_values().iter().step_by(2).sum();
    let odd: u64 = th.r_values().iter().skip(1).step_by(2).sum();
    expect!(fails, d_ev == (th.p - 1) * th.pk + even, "d_ev = {d_ev}");
    expect!(fails, d_odd == odd, "d_odd = {d_odd}");
    for m in [0i64, 1] {
        let seq = th.equivariant_exact_sequences(m).deg(m)?;
        let d = if m == 0 { d_ev } else { d_odd };
        let c = &seq.complex;
        expect!(fails, c.left.free_rank() + c.right.free_rank() == d, "m={m}: complex sequence ranks");
        expect!(fails, th.equivariant_k(m, Variant::Cohomology).free_rank() == d, "m={m}: equivariant rank");
        if let Some(r) = &seq.real {
            expect!(fails, r.ranks_additive(), "m={m}: real sequence ranks");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_cstar_free(ctx: &Ctx) -> Result<Outcome, Located> {
    let mut fails = Vec::new();
    for m in -2..=3 {
        let e = ctx.th.cstar_k_theory(m, Field::Complex).deg(m)?;
        expect!(fails, group(e.clone(), m)?.is_free(), "K_{m} = {e} has torsion");
    }
    Ok(Outcome::Checked(fails))
}

fn check_euler(ctx: &Ctx) -> Result<Outcome, Located> {
    let mut fails = Vec::new();
    let chi = match euler_characteristic_quotient(ctx.g) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::Checked(vec![e.to_string()])),
    };
    let mut alt = 0i64;
    for m in 0..=ctx.n() {
        let rank = ctx.th.cohomology_quotient(m).deg(m)?.free_rank() as i64;
        alt += if m % 2 == 0 { rank } else { -rank };
    }
    expect!(fails, alt == chi, "alternating rank sum {alt}, euler {chi}");
    expect!(fails, chi as u64 == (ctx.g.p - 1) * ctx.th.pk / ctx.g.p, "euler {chi}");
    Ok(Outcome::Checked(fails))
}

fn elementary(e: &GroupExpression, p: u64, m: i64) -> Result<usize, Located> {
    let g = group(e.clone(), m)?;
    g.elementary_rank(p)
        .ok_or_else(|| Located { m: Some(m), i: None, err: Error::Internal(format!("{g} is not elementary")) })
}

fn check_five_term(ctx: &Ctx) -> Result<Outcome, Located> {
    let th = &ctx.th;
    let (p, pk) = (th.p, th.pk);
    let mut fails = Vec::new();
    for m in 1..=ctx.n() / 2 {
        let (e, o) = (2 * m, 2 * m + 1);
        expect!(fails, th.s(e) + th.s(o) <= 2 * pk, "m={m}: s_{e} + s_{o} > 2p^k");
        let bg_even = th.cohomology_bgamma(e).deg(e)?;
        let q_even = th.cohomology_quotient(e).deg(e)?;
        let bg_odd = th.cohomology_bgamma(o).deg(o)?;
        let q_odd = th.cohomology_quotient(o).deg(o)?;
        let res = th.restriction_map_data(e).deg(e)?;
        let kernel = elementary(&res.kernel, p, e)?;
        let image = elementary(&res.image_torsion, p, e)?;
        let coker = elementary(&GroupExpression::from_group(&group(q_odd.clone(), o)?.torsion_subgroup()), p, o)?;
        let tors_even = elementary(&GroupExpression::from_group(&group(bg_even.clone(), e)?.torsion_subgroup()), p, e)?;
        expect!(fails, kernel == tors_even, "m={m}: kernel {kernel} != torsion exponent of H^{e} {tors_even}");
        expect!(fails, image as u64 + coker as u64 == pk, "m={m}: image {image} + cokernel {coker} != p^k");
        expect!(fails, bg_even.free_rank() == q_even.free_rank(), "m={m}: ranks in degree {e}");
        expect!(fails, bg_odd.free_rank() == q_odd.free_rank(), "m={m}: ranks in degree {o}");
        let alt = tors_even as i64 - (kernel as i64) + (pk as i64) - (image as i64) - (coker as i64);
        expect!(fails, alt == 0, "m={m}: alternating torsion exponents sum to {alt}");
    }
    Ok(Outcome::Checked(fails))
}

fn check_restriction(ctx: &Ctx) -> Result<Outcome, Located> {
    let th = &ctx.th;
    let mut fails = Vec::new();
    for m in 0..=ctx.n() {
        let res = th.restriction_map_data(m).deg(m)?;
        let (kernel, image) = (elementary(&res.kernel, th.p, m)?, elementary(&res.image_torsion, th.p, m)?);
        if m % 2 == 1 || m == 0 {
            expect!(fails, kernel == 0 && image == 0, "m={m}: nonzero data");
        } else {
            expect!(fails, kernel as u64 == th.s(m), "m={m}: kernel {kernel}");
            expect!(fails, image as u64 == th.s(m) + th.a(m), "m={m}: image {image} != s_m + a_m");
        }
    }
    Ok(Outcome::Checked(fails))
}

fn check_ko_ranks(ctx: &Ctx) -> Result<Outcome, Located> {
    if ctx.g.p == 2 {
        return Ok(Outcome::Skipped("p odd required".into()));
    }
    let mut fails = Vec::new();
    for m in 0..=ctx.n() + 8 {
        let b = ctx.th.connective_ko(m, Space::BGamma).deg(m)?.evaluate().free_rank();
        let q = ctx.th.connective_ko(m, Space::Quotient).deg(m)?.evaluate().free_rank();
        expect!(fails, b == q, "m={m}: ko ranks {b} vs {q}");
    }
    Ok(Outcome::Checked(fails))
}

fn check_ko_free_ranks(ctx: &Ctx) -> Result<Outcome, Located> {
    if ctx.g.p == 2 {
        return Ok(Outcome::Skipped("p odd required".into()));
    }
    let th = &ctx.th;
    let half = th.pk * (th.p - 1) / 2;
    let mut fails = Vec::new();
    for m in 0..8i64 {
        let point: u64 = (0..=ctx.n()).filter(|l| (m - l).rem_euclid(4) == 0).map(|l| th.r(l)).sum();
        let expected = point + if m % 2 == 0 { half } else { 0 };
        let cstar = th.cstar_k_theory(m, Field::Real).deg(m)?.evaluate().free_rank();
        let equiv = th.equivariant_ko(m, Variant::Homology).deg(m)?.evaluate().free_rank();
        let bg = th.ko_theory(m, Space::BGamma, Variant::Homology).deg(m)?.evaluate().free_rank();
        let quot = th.ko_theory(m, Space::Quotient, Variant::Homology).deg(m)?.evaluate().free_rank();
        expect!(fails, cstar == expected, "m={m}: KO free rank {cstar}, expected {expected}");
        expect!(fails, equiv == cstar, "m={m}: equivariant rank {equiv}");
        expect!(fails, bg == point && quot == point, "m={m}: point-sum ranks {bg}, {quot}, expected {point}");
    }
    Ok(Outcome::Checked(fails))
}

const CHECKS: &[(&str, CheckFn)] = &[
    ("smith normal form", check_snf),
    ("structure constants", check_structure),
    ("r oracle", check_r_oracle),
    ("k = 1 closed form", check_k1_closed_form),
    ("sum identities", check_sums),
    ("representation ring relations", check_rep_ring),
    ("a_j and s_m", check_a),
    ("module orders", check_orders),
    ("tate checkerboard", check_checkerboard),
    ("tate periodicity", check_periodicity),
    ("norm sequence", check_norm_sequence),
    ("tate duality", check_tate_duality),
    ("dual conventions", check_dual_conventions),
    ("brute-force cohomology", check_brute_cohomology),
    ("brute-force homology", check_brute_homology),
    ("universal coefficients", check_uct),
    ("consistency triangle", check_triangle),
    ("C* K-theory torsion-free", check_cstar_free),
    ("euler characteristic", check_euler),
    ("five-term sequence", check_five_term),
    ("restriction maps", check_restriction),
    ("ko ranks after inverting p", check_ko_ranks),
    ("KO free ranks", check_ko_free_ranks),
];

/// Names of the checks in table order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs every check for `g`. A check that raises an internal error aborts
/// the run with a reproducer.
pub fn verify(g: &GammaDescriptor, parallel: bool) -> Result<VerifyReport, InternalFailure> {
    let fail = |check, l: Located| InternalFailure { check, p: g.p, k: g.k, m: l.m, i: l.i, source: l.err };
    let ctx = build_ctx(g).map_err(|l| fail("setup", l))?;
    let run = |&(name, f): &(&'static str, CheckFn)| -> Result<CheckResult, InternalFailure> {
        let (status, detail) = match f(&ctx).map_err(|l| fail(name, l))? {
            Outcome::Checked(fails) if fails.is_empty() => (Status::Pass, String::new()),
            Outcome::Checked(fails) => (Status::Fail, fails.join("; ")),
            Outcome::Skipped(why) => (Status::Skip, why),
        };
        Ok(CheckResult { name, status, detail })
    };
    let checks = if parallel {
        CHECKS.par_iter().map(run).collect::<Result<Vec<_>, _>>()?
    } else {
        CHECKS.iter().map(run).collect::<Result<Vec<_>, _>>()?
    };
    Ok(VerifyReport { p: g.p, k: g.k, checks })
}

/// The `(p, k)` grid used by the default suites.
pub fn default_grid() -> Vec<(u64, usize)> {
    [2u64, 3, 5, 7].iter().flat_map(|&p| [(p, 1), (p, 2)]).collect()
}
