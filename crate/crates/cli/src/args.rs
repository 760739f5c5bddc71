//! Flag grammars: ψ/β̄ descriptors, n ranges, p lists, and the key = value
//! config file whose entries are overridden by flags.

use std::collections::BTreeMap;
use std::path::Path;
use trigapprox::{BetaSequence, PsiSequence};

/// Power-law exponent, optionally coupled to n (`r=n+1`, `r=n^2`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RExpr {
    Const(f64),
    NPlus(f64),
    NSquared,
}

impl RExpr {
    pub fn eval(&self, n: usize) -> f64 {
        match self {
            RExpr::Const(r) => *r,
            RExpr::NPlus(c) => n as f64 + c,
            RExpr::NSquared => (n * n) as f64,
        }
    }
}

/// Parsed `--psi` argument; the power-law exponent may depend on n.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiArg {
    Power(RExpr),
    Exp { alpha: f64, r: f64 },
    Table(Vec<f64>),
}

impl PsiArg {
    pub fn sequence(&self, n: usize) -> Result<PsiSequence, trigapprox::Error> {
        match self {
            PsiArg::Power(r) => PsiSequence::power_law(r.eval(n)),
            PsiArg::Exp { alpha, r } => PsiSequence::exp_power(*alpha, *r),
            PsiArg::Table(values) => PsiSequence::table(values.clone()),
        }
    }
}

fn parse_r_expr(s: &str) -> Result<RExpr, String> {
    let s = s.trim();
    if s == "n^2" || s == "n*n" {
        return Ok(RExpr::NSquared);
    }
    if let Some(rest) = s.strip_prefix("n+") {
        let c: f64 = rest
            .parse()
            .map_err(|_| format!("bad exponent offset in r={s}"))?;
        return Ok(RExpr::NPlus(c));
    }
    let r: f64 = s.parse().map_err(|_| format!("bad exponent r={s}"))?;
    if !(r > 0.0) {
        return Err(format!("power-law exponent must be positive, got {r}"));
    }
    Ok(RExpr::Const(r))
}

/// `power:r=5 | power:r=n+1 | power:r=n^2 | exp:alpha=1,r=2 | table:1,0.5,0.25`
///
/// The n-coupled exponent forms are a CLI nicety for grid runs; everything
/// else delegates to the library grammar.
pub fn parse_psi(s: &str) -> Result<PsiArg, String> {
    if let Some(r) = s.strip_prefix("power:r=") {
        return Ok(PsiArg::Power(parse_r_expr(r)?));
    }
    match PsiSequence::parse(s).map_err(|e| e.to_string())? {
        PsiSequence::PowerLaw { r } => Ok(PsiArg::Power(RExpr::Const(r))),
        PsiSequence::ExpPower { alpha, r } => Ok(PsiArg::Exp { alpha, r }),
        PsiSequence::Table { values } => Ok(PsiArg::Table(values)),
    }
}

/// `const:0.5 | list:0,1,2`
pub fn parse_beta(s: &str) -> Result<BetaSequence, String> {
    BetaSequence::parse(s).map_err(|e| e.to_string())
}

/// `4 | 2..8 | 2,4,8` → sorted, deduplicated, nonempty.
pub fn parse_n_set(s: &str) -> Result<Vec<usize>, String> {
    let mut out: Vec<usize> = Vec::new();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start `{lo}`"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty n range `{s}`"));
        }
        out.extend(lo..=hi);
    } else {
        for part in s.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("bad n value `{part}`"))?;
            out.push(v);
        }
    }
    out.retain(|&n| n >= 1);
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err("n set is empty".into());
    }
    Ok(out)
}

/// `2 | inf | 1,2,inf`
pub fn parse_p_list(s: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        out.push(parse_p(part.trim())?);
    }
    if out.is_empty() {
        return Err("p list is empty".into());
    }
    Ok(out)
}

pub fn parse_p(s: &str) -> Result<f64, String> {
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    let p: f64 = s.parse().map_err(|_| format!("bad p `{s}`"))?;
    if !(p >= 1.0) {
        return Err(format!("p must be in [1, inf], got {p}"));
    }
    Ok(p)
}

/// Plain-text `key = value` file; `#` starts a comment. Flags win over
/// file entries.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}
