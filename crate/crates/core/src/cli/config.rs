//! Run configuration: defaults, a flat `key = value` file, then flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::latticeft::{point_budget, DEFAULT_POINT_BUDGET};
use crate::qfield::check_odd_prime;
use crate::scalar::Depth;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?} (md, csv, json)"))),
        }
    }
}

/// Named verification suites, in canonical report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Gauss,
    Chartab,
    PsOracle,
    Table1,
    Induction,
    Homogeneity,
    Census,
    FtVanish,
    Kim,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Gauss,
        Suite::Chartab,
        Suite::PsOracle,
        Suite::Table1,
        Suite::Induction,
        Suite::Homogeneity,
        Suite::Census,
        Suite::FtVanish,
        Suite::Kim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gauss => "gauss",
            Suite::Chartab => "chartab",
            Suite::PsOracle => "ps-oracle",
            Suite::Table1 => "table1",
            Suite::Induction => "induction",
            Suite::Homogeneity => "homogeneity",
            Suite::Census => "census",
            Suite::FtVanish => "ft-vanish",
            Suite::Kim => "kim",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// Parse a comma list of suites; `all` selects every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::InvalidInput("no suite selected".into()));
    }
    Ok(out)
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let p: u64 = part.parse().map_err(|_| Error::Parse(format!("bad prime {part:?}")))?;
        out.push(check_odd_prime(p)?);
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("empty prime list".into()));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q_list: Vec<u64>,
    pub p_list: Vec<u64>,
    pub depth_max: Depth,
    pub suites: Vec<Suite>,
    pub ell_max: u32,
    pub point_budget: u128,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_list: vec![3],
            p_list: vec![3],
            depth_max: Depth::integral(2),
            suites: Suite::ALL.to_vec(),
            ell_max: 2,
            point_budget: DEFAULT_POINT_BUDGET,
            format: Format::Md,
            output: None,
        }
    }
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub q: Option<String>,
    pub p: Option<String>,
    pub depth_max: Option<String>,
    pub suites: Option<String>,
    pub ell_max: Option<u32>,
    pub point_budget: Option<u128>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
}

/// Parse a `key = value` file. `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", n + 1)))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

impl RunConfig {
    /// Defaults, then `file`, then `BERNSTEIN_BUDGET`, then flags. When no
    /// `p` is given anywhere, the `q` list is used.
    pub fn resolve(file: Option<&Path>, flags: &Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut p_set = false;
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
            for (k, v) in parse_config_text(&text)? {
                match k.as_str() {
                    "q" | "q_list" => cfg.q_list = parse_primes(&v)?,
                    "p" | "p_list" => {
                        cfg.p_list = parse_primes(&v)?;
                        p_set = true;
                    }
                    "depth_max" => cfg.depth_max = v.parse()?,
                    "suite" | "suites" => cfg.suites = parse_suites(&v)?,
                    "ell_max" => cfg.ell_max = parse_num(&k, &v)?,
                    "point_budget" => cfg.point_budget = parse_num(&k, &v)?,
                    "format" => cfg.format = v.parse()?,
                    "output" => cfg.output = Some(PathBuf::from(v)),
                    other => return Err(Error::InvalidInput(format!("unknown config key {other:?}"))),
                }
            }
        }
        if std::env::var_os("BERNSTEIN_BUDGET").is_some() {
            cfg.point_budget = point_budget();
        }
        if let Some(v) = &flags.q {
            cfg.q_list = parse_primes(v)?;
        }
        if let Some(v) = &flags.p {
            cfg.p_list = parse_primes(v)?;
            p_set = true;
        }
        if !p_set {
            cfg.p_list = cfg.q_list.clone();
        }
        if let Some(v) = &flags.depth_max {
            cfg.depth_max = v.parse()?;
        }
        if let Some(v) = &flags.suites {
            cfg.suites = parse_suites(v)?;
        }
        if let Some(v) = flags.ell_max {
            cfg.ell_max = v;
        }
        if let Some(v) = flags.point_budget {
            cfg.point_budget = v;
        }
        if let Some(v) = &flags.format {
            cfg.format = v.parse()?;
        }
        if let Some(v) = &flags.output {
            cfg.output = Some(v.clone());
        }
        if cfg.point_budget == 0 {
            return Err(Error::InvalidInput("point_budget must be positive".into()));
        }
        Ok(cfg)
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.replace('_', "").parse().map_err(|_| Error::Parse(format!("{key}: bad number {v:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let dir = std::env::temp_dir().join(format!("bernstein-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.cfg");
        std::fs::write(&path, "# demo\nq = 5,3\ndepth-max = 3/2\nsuites = gauss, census\nformat = csv\n").unwrap();
        let cfg = RunConfig::resolve(Some(&path), &Overrides::default()).unwrap();
        assert_eq!(cfg.q_list, vec![3, 5]);
        assert_eq!(cfg.p_list, vec![3, 5]);
        assert_eq!(cfg.depth_max, "3/2".parse().unwrap());
        assert_eq!(cfg.suites, vec![Suite::Gauss, Suite::Census]);
        assert_eq!(cfg.format, Format::Csv);
        let flags = Overrides { q: Some("7".into()), format: Some("json".into()), ..Default::default() };
        let cfg = RunConfig::resolve(Some(&path), &flags).unwrap();
        assert_eq!(cfg.q_list, vec![7]);
        assert_eq!(cfg.format, Format::Json);
        std::fs::remove_dir_all(dir).ok();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_primes("3,4").is_err());
        assert!(parse_primes("2").is_err());
        assert!(parse_suites("gauss,nope").is_err());
        assert_eq!(parse_suites("all").unwrap().len(), 9);
        assert!(parse_config_text("q 3").is_err());
        let missing = RunConfig::resolve(Some(Path::new("/nonexistent/x.cfg")), &Overrides::default());
        assert!(matches!(missing, Err(Error::Io { .. })));
    }
}
