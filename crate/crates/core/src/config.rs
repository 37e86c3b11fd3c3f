//! Parsing of marking specifications and element lists, and seeded random
//! markings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poset::{Element, MarkingSet, Poset};

/// Marking specification: `P`, `A`, `random[:<seed>:<density>]`, or an
/// explicit element list `"(i,j);(i,j);…"`.
#[derive(Debug, Clone, PartialEq)]
pub enum OSpec {
    Full,
    Diagonal,
    Random { seed: Option<u64>, density: f64 },
    Explicit(Vec<Element>),
}

pub const DEFAULT_DENSITY: f64 = 0.5;

impl FromStr for OSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "P" => return Ok(OSpec::Full),
            "A" => return Ok(OSpec::Diagonal),
            "random" => return Ok(OSpec::Random { seed: None, density: DEFAULT_DENSITY }),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let (seed, density) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected random:<seed>:<density>, got `{s}`")))?;
            let seed = seed.parse::<u64>().map_err(|_| Error::Parse(format!("bad seed `{seed}`")))?;
            let density = density.parse::<f64>().map_err(|_| Error::Parse(format!("bad density `{density}`")))?;
            check_density(density)?;
            return Ok(OSpec::Random { seed: Some(seed), density });
        }
        if s.starts_with('(') {
            return parse_elements(s).map(OSpec::Explicit);
        }
        Err(Error::Parse(format!("unrecognized marking `{s}`; use P, A, random:<seed>:<density> or (i,j);…")))
    }
}

impl fmt::Display for OSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OSpec::Full => write!(f, "P"),
            OSpec::Diagonal => write!(f, "A"),
            OSpec::Random { seed: Some(s), density } => write!(f, "random:{s}:{density}"),
            OSpec::Random { seed: None, density } => write!(f, "random:?:{density}"),
            OSpec::Explicit(es) => {
                let parts: Vec<String> = es.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

impl OSpec {
    /// Resolves against a poset; `default_seed` fills in a bare `random`.
    pub fn resolve(&self, poset: &Poset, default_seed: u64) -> Result<MarkingSet> {
        match self {
            OSpec::Full => Ok(MarkingSet::full(poset)),
            OSpec::Diagonal => Ok(MarkingSet::diagonal(poset)),
            OSpec::Random { seed, density } => random_marking(poset, seed.unwrap_or(default_seed), *density),
            OSpec::Explicit(es) => MarkingSet::from_elements(poset, es),
        }
    }
}

fn check_density(density: f64) -> Result<()> {
    if (0.0..=1.0).contains(&density) {
        Ok(())
    } else {
        Err(Error::Domain(format!("density {density} is outside [0, 1]")))
    }
}

/// Parses `(i,j)` groups separated by commas, semicolons or whitespace.
pub fn parse_elements(s: &str) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == ',' || c == ';' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` at `{rest}`")))?;
        let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed `(` in `{s}`")))?;
        let (pair, tail) = body.split_at(close);
        let (i, j) = pair
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `i,j` in `({pair})`")))?;
        let parse = |t: &str| t.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad index `{}`", t.trim())));
        out.push(Element::new(parse(i)?, parse(j)?));
        rest = &tail[1..];
    }
    Ok(out)
}

/// `A` together with each off-diagonal element, in canonical order, kept
/// independently with probability `density` from a ChaCha8 stream.
pub fn random_marking(poset: &Poset, seed: u64, density: f64) -> Result<MarkingSet> {
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members = poset.diagonal();
    for idx in 0..poset.len() {
        if poset.diagonal().contains(idx) {
            continue;
        }
        if rng.gen_bool(density) {
            members.insert(idx);
        }
    }
    MarkingSet::new(poset, members)
}

/// Memory guard in megabytes, from `MCOP_GUARD_MB` (default 1024).
pub fn guard_mb() -> u64 {
    std::env::var("MCOP_GUARD_MB").ok().and_then(|v| v.parse().ok()).unwrap_or(1024)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Kind;

    #[test]
    fn parse_specs() {
        assert_eq!("P".parse::<OSpec>().unwrap(), OSpec::Full);
        assert_eq!("A".parse::<OSpec>().unwrap(), OSpec::Diagonal);
        assert_eq!(
            "random:3:0.25".parse::<OSpec>().unwrap(),
            OSpec::Random { seed: Some(3), density: 0.25 }
        );
        assert!("random:3:1.5".parse::<OSpec>().is_err());
        assert!("Q".parse::<OSpec>().is_err());
        let OSpec::Explicit(es) = "(1,1);(2,2);(1,-2)".parse::<OSpec>().unwrap() else { panic!() };
        assert_eq!(es, vec![Element::new(1, 1), Element::new(2, 2), Element::new(1, -2)]);
    }

    #[test]
    fn element_lists() {
        let es = parse_elements("(1,1),(1,2), (1,4);(2,2) (2,3)").unwrap();
        assert_eq!(es.len(), 5);
        assert!(parse_elements("(1,1").is_err());
        assert!(parse_elements("(1;1)").is_err());
        assert!(parse_elements("1,1").is_err());
        assert!(parse_elements("").unwrap().is_empty());
    }

    #[test]
    fn explicit_marking_needs_diagonal() {
        let p = Poset::new(Kind::A, 2).unwrap();
        let spec: OSpec = "(1,1);(1,2)".parse().unwrap();
        assert!(spec.resolve(&p, 0).is_err());
        let spec: OSpec = "(1,1);(2,2)".parse().unwrap();
        assert_eq!(spec.resolve(&p, 0).unwrap().members(), p.diagonal());
    }

    #[test]
    fn random_extremes() {
        for (kind, n) in [(Kind::A, 4), (Kind::C, 3)] {
            let p = Poset::new(kind, n).unwrap();
            for seed in 0..5 {
                assert_eq!(random_marking(&p, seed, 1.0).unwrap().members(), p.full());
                assert_eq!(random_marking(&p, seed, 0.0).unwrap().members(), p.diagonal());
            }
        }
    }

    #[test]
    fn random_is_reproducible() {
        let p = Poset::new(Kind::C, 3).unwrap();
        let a = random_marking(&p, 9, 0.5).unwrap();
        let b = random_marking(&p, 9, 0.5).unwrap();
        assert_eq!(a, b);
    }
}
