//! Batch verification: sweep configuration, instance generation, seeded
//! Goppa and character-sum sampling, and report rendering.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bombieri::{char_sum_check, sample_nondegenerate, SumSquare};
use crate::curve::Curve;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::ff::{build_tower, FieldTower};
use crate::poly::Poly;
use crate::rrspace::RationalFunction;
use crate::theorem::{
    check_hypotheses, corollary_k_range, goppa_case, goppa_divisor, verify_with, ReportRow,
    TheoremReport,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `G = k·P∞` for every `k` in the corollary range.
    Corollary,
    Explicit(Vec<String>),
    /// `count` Goppa polynomials per tower, built from irreducible factors
    /// of degree `min_degree..=max_degree`.
    Goppa {
        count: usize,
        min_degree: usize,
        max_degree: usize,
        max_factors: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub towers: Vec<(u64, u32, u32)>,
    pub curves: Vec<String>,
    pub family: Family,
    pub seed: u64,
    pub format: Format,
    pub drop_zero_columns: bool,
    pub include_failing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            towers: Vec::new(),
            curves: vec!["p1".into()],
            family: Family::Corollary,
            seed: 0,
            format: Format::Csv,
            drop_zero_columns: false,
            include_failing: false,
        }
    }
}

pub fn parse_tower(s: &str) -> Result<(u64, u32, u32)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [p, r, m] = parts[..] else {
        return Err(Error::Parse(format!("tower `{s}` must be p,r,m")));
    };
    let bad = |_| Error::Parse(format!("bad tower `{s}`"));
    Ok((
        p.parse().map_err(bad)?,
        r.parse().map_err(bad)?,
        m.parse().map_err(bad)?,
    ))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Config(format!(
            "`{key}` expects true or false, got `{v}`"
        ))),
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Config(format!("`{key}` expects a number, got `{v}`")))
}

fn list(v: &str) -> Vec<String> {
    v.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

impl SweepConfig {
    /// Parses the flat `key = value` format. Lists are `;`-separated and
    /// `#` starts a comment.
    ///
    /// ```text
    /// towers = 2,1,2; 2,1,3
    /// curves = p1
    /// family = goppa
    /// goppa_count = 20
    /// seed = 42
    /// ```
    pub fn parse(text: &str) -> Result<SweepConfig> {
        let mut cfg = SweepConfig::default();
        let mut family = "corollary".to_string();
        let mut divisors = Vec::new();
        let (mut count, mut min_degree, mut max_degree, mut max_factors) = (20, 2, 3, 2);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "towers" => {
                    cfg.towers = list(value)
                        .iter()
                        .map(|t| parse_tower(t))
                        .collect::<Result<_>>()?
                }
                "curves" => cfg.curves = list(value),
                "family" => family = value.to_string(),
                "divisors" => divisors = list(value),
                "goppa_count" => count = parse_num(key, value)?,
                "goppa_min_degree" => min_degree = parse_num(key, value)?,
                "goppa_max_degree" => max_degree = parse_num(key, value)?,
                "goppa_max_factors" => max_factors = parse_num(key, value)?,
                "seed" => cfg.seed = parse_num(key, value)?,
                "format" => cfg.format = value.parse()?,
                "drop_zero_columns" => cfg.drop_zero_columns = parse_bool(key, value)?,
                "include_failing" => cfg.include_failing = parse_bool(key, value)?,
                _ => return Err(Error::Config(format!("unknown key `{key}`"))),
            }
        }
        cfg.family = match family.as_str() {
            "corollary" => Family::Corollary,
            "explicit" => {
                if divisors.is_empty() {
                    return Err(Error::Config("explicit family needs `divisors`".into()));
                }
                Family::Explicit(divisors)
            }
            "goppa" => {
                if min_degree < 2 || max_degree < min_degree || max_factors == 0 {
                    return Err(Error::Config(
                        "goppa degrees must satisfy 2 <= min <= max".into(),
                    ));
                }
                Family::Goppa {
                    count,
                    min_degree,
                    max_degree,
                    max_factors,
                }
            }
            other => return Err(Error::Config(format!("unknown family `{other}`"))),
        };
        if cfg.towers.is_empty() {
            return Err(Error::Config("no towers given".into()));
        }
        Ok(cfg)
    }
}

/// Samples a Goppa polynomial as a product of uniformly chosen monic
/// irreducibles of degree ≥ 2 (so it has no zeros in the field), each
/// raised to a multiplicity in `1..=q`.
pub fn sample_goppa<R: Rng + ?Sized>(
    f: &FieldTower,
    min_degree: usize,
    max_degree: usize,
    max_factors: usize,
    rng: &mut R,
) -> Poly {
    let factors = rng.gen_range(1..=max_factors);
    let mut g = Poly::one();
    for _ in 0..factors {
        let d = rng.gen_range(min_degree..=max_degree);
        let e = rng.gen_range(1..=f.q());
        g = g.mul(&Poly::random_irreducible(d, f, rng).pow(e, f), f);
    }
    g
}

/// `count` seeded Goppa polynomials; without `include_failing` only those
/// passing the validity condition are kept.
pub fn goppa_polynomials(
    f: &FieldTower,
    count: usize,
    min_degree: usize,
    max_degree: usize,
    max_factors: usize,
    include_failing: bool,
    seed: u64,
) -> Result<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 10_000 * count.max(1);
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let g = sample_goppa(f, min_degree, max_degree, max_factors, &mut rng);
        if include_failing || goppa_case(&g, f)?.valid {
            out.push(g);
        }
    }
    if out.len() < count {
        return Err(Error::Config(format!(
            "found only {} of {count} valid Goppa polynomials over F_{}",
            out.len(),
            f.order()
        )));
    }
    Ok(out)
}

/// Per-tower seed so adding a tower does not reshuffle the others.
fn tower_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64))
}

#[derive(Clone, Debug)]
struct Instance {
    curve: Curve,
    divisor: Divisor,
}

fn instances(cfg: &SweepConfig) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (ti, &(p, r, m)) in cfg.towers.iter().enumerate() {
        let tower = Arc::new(build_tower(p, r, m)?);
        for spec in &cfg.curves {
            let curve = Curve::parse(spec, tower.clone())?;
            let divisors = match &cfg.family {
                Family::Corollary => corollary_k_range(curve.genus(), &tower)
                    .map(Divisor::at_infinity)
                    .collect(),
                Family::Explicit(list) => list
                    .iter()
                    .map(|s| Divisor::parse(s, &curve))
                    .collect::<Result<Vec<_>>>()?,
                Family::Goppa {
                    count,
                    min_degree,
                    max_degree,
                    max_factors,
                } => {
                    if !curve.is_projective_line() {
                        return Err(Error::Config("Goppa family needs curves = p1".into()));
                    }
                    goppa_polynomials(
                        &tower,
                        *count,
                        *min_degree,
                        *max_degree,
                        *max_factors,
                        cfg.include_failing,
                        tower_seed(cfg.seed, ti),
                    )?
                    .iter()
                    .map(|g| goppa_divisor(g, &tower))
                    .collect::<Result<Vec<_>>>()?
                }
            };
            for divisor in divisors {
                if cfg.include_failing || check_hypotheses(&curve, &divisor).all() {
                    out.push(Instance {
                        curve: curve.clone(),
                        divisor,
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub instances: usize,
    pub hypotheses_held: usize,
    pub matched: usize,
    pub mismatched_held: usize,
    pub mismatched_unheld: usize,
    pub invariant_failures: usize,
}

impl Summary {
    pub fn of(reports: &[TheoremReport]) -> Summary {
        let mut s = Summary {
            instances: reports.len(),
            ..Summary::default()
        };
        for r in reports {
            let held = r.hypotheses.all();
            s.hypotheses_held += held as usize;
            s.matched += r.matched as usize;
            s.mismatched_held += (held && !r.matched) as usize;
            s.mismatched_unheld += (!held && !r.matched) as usize;
            s.invariant_failures += !r.invariants_hold() as usize;
        }
        s
    }

    pub fn success(&self, reports: &[TheoremReport]) -> bool {
        reports.iter().all(TheoremReport::passes)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instances={} hypotheses_held={} matched={} mismatched_held={} mismatched_unheld={} invariant_failures={}",
            self.instances,
            self.hypotheses_held,
            self.matched,
            self.mismatched_held,
            self.mismatched_unheld,
            self.invariant_failures
        )
    }
}

/// Verifies every instance of the sweep, in parallel, in instance order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<TheoremReport>> {
    let list = instances(cfg)?;
    list.par_iter()
        .map(|inst| verify_with(&inst.curve, &inst.divisor, cfg.drop_zero_columns))
        .collect()
}

pub fn render_reports(reports: &[TheoremReport], format: Format) -> Result<String> {
    let rows: Vec<ReportRow> = reports.iter().map(TheoremReport::row).collect();
    match format {
        Format::Csv => render_csv(&rows),
        Format::Json => render_json(&rows),
        Format::Text => Ok(reports.iter().map(render_text).collect()),
    }
}

fn render_text(r: &TheoremReport) -> String {
    let h = r.hypotheses;
    format!(
        "tower      p={} q={} m={}\n\
         curve      {} (genus {})\n\
         divisor    {}\n\
         code       n={} k={}\n\
         hypotheses h0={} c1={} c2={}{}\n\
         dimension  predicted={} computed={} match={}\n\
         subspaces  dimK={} dimE={} K=E={}\n\
         invariants eq3={} bounds={} E<=K={} prop1={} delsarte={}\n\
         verdict    {}\n",
        r.p,
        r.q,
        r.m,
        r.curve,
        r.genus,
        r.divisor,
        r.n,
        r.k,
        h.h0,
        h.c1,
        h.c2,
        if h.boundary { " (boundary)" } else { "" },
        r.predicted,
        r.computed,
        r.matched,
        r.dim_k,
        r.dim_e,
        r.k_equals_e,
        r.eq3,
        r.bounds,
        r.e_in_k,
        r.prop1.map_or("n/a".to_string(), |b| b.to_string()),
        r.delsarte,
        if r.passes() { "ok" } else { "FAIL" },
    )
}

fn render_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Config(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_json<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// One sampled polynomial in a character-sum study.
#[derive(Clone, Debug, Serialize)]
pub struct BombieriRow {
    pub p: u32,
    pub q: u64,
    pub m: u32,
    pub poly: String,
    pub degree: i64,
    pub t: i64,
    pub d_inf: i64,
    pub counts: String,
    pub bound_sq: String,
    pub sum_abs_sq: String,
    pub pass: bool,
}

/// Checks Bombieri's bound for `count` seeded non-degenerate polynomials
/// of degree at most `max_degree` on the projective line.
pub fn bombieri_study(
    tower: (u64, u32, u32),
    count: usize,
    max_degree: usize,
    seed: u64,
) -> Result<Vec<BombieriRow>> {
    let (p, r, m) = tower;
    let f = Arc::new(build_tower(p, r, m)?);
    let curve = Curve::projective_line(f.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys: Vec<Poly> = (0..count)
        .map(|_| sample_nondegenerate(max_degree, &f, &mut rng))
        .collect();
    polys
        .par_iter()
        .map(|g| {
            let res = char_sum_check(&curve, &RationalFunction::polynomial(g.clone()))?;
            Ok(BombieriRow {
                p: f.p(),
                q: f.q(),
                m: f.m(),
                poly: g.to_index_list(),
                degree: g.degree_i64(),
                t: res.t,
                d_inf: res.d_inf,
                counts: res
                    .counts
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                bound_sq: res.bound_sq.to_string(),
                sum_abs_sq: match res.sum_abs_sq {
                    SumSquare::Exact(v) => v.to_string(),
                    SumSquare::Approx(v) => format!("{v:.9}"),
                },
                pass: res.pass,
            })
        })
        .collect()
}

pub fn render_bombieri(rows: &[BombieriRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
        Format::Text => Ok(rows
            .iter()
            .map(|r| {
                format!(
                    "f=[{}] deg={} t={} d_inf={} |S|^2={} bound^2={} {}\n",
                    r.poly,
                    r.degree,
                    r.t,
                    r.d_inf,
                    r.sum_abs_sq,
                    r.bound_sq,
                    if r.pass { "ok" } else { "FAIL" }
                )
            })
            .collect()),
    }
}
