//! Exact Turán numbers at small orders and related searches.

mod exact;
mod maxsat;
mod partition;
mod sample;

pub use exact::{turan_exact, SearchOutcome, SearchStats, SearchStatus, TuranConfig};
pub use maxsat::{export_maxsat, Wcnf, DEFAULT_COPY_LIMIT};
pub use partition::{best_partition, PartitionConfig, PartitionResult};
pub use sample::random_free_sample;

use std::fmt;
use std::path::Path;

use crate::constructions::{make_pattern, PatternTag};
use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph3;
use crate::io::parse_h3;

/// How membership of one forbidden pattern is tested during search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Detector {
    /// Codegree above `t`.
    Codegree(u32),
    /// The polynomial F5^t test.
    F5t(u32),
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forbidden {
    pub label: String,
    pub pattern: Hypergraph3,
    pub detector: Detector,
}

/// A non-empty list of forbidden patterns, each with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenFamily {
    members: Vec<Forbidden>,
}

impl ForbiddenFamily {
    pub fn new(members: Vec<Forbidden>) -> Result<Self> {
        if members.is_empty() {
            return invalid("a forbidden family needs at least one pattern");
        }
        if let Some(m) = members.iter().find(|m| m.pattern.edge_count() == 0) {
            return invalid(format!("pattern {} has no edges", m.label));
        }
        Ok(ForbiddenFamily { members })
    }

    pub fn f5t(t: u32) -> Self {
        ForbiddenFamily::new(vec![Forbidden::tagged(PatternTag::F5t, t)]).unwrap()
    }

    pub fn of_tags(tags: &[(PatternTag, u32)]) -> Self {
        ForbiddenFamily::new(tags.iter().map(|&(tag, t)| Forbidden::tagged(tag, t)).collect()).unwrap()
    }

    pub fn from_patterns(patterns: Vec<Hypergraph3>) -> Result<Self> {
        ForbiddenFamily::new(
            patterns
                .into_iter()
                .enumerate()
                .map(|(i, p)| Forbidden {
                    label: format!("pattern{}", i + 1),
                    pattern: p,
                    detector: Detector::Generic,
                })
                .collect(),
        )
    }

    /// Comma-separated `f5t:<t>`, `f2t:<t>`, `k4minus`, `f5prime`,
    /// `fhat`, `file:<path.h3>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut members = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (head, arg) = match item.split_once(':') {
                Some((h, a)) => (h, Some(a)),
                None => (item, None),
            };
            let num = |a: Option<&str>| -> Result<u32> {
                match a.map(str::parse::<u32>) {
                    Some(Ok(t)) => Ok(t),
                    _ => invalid(format!("`{item}` needs a non-negative integer argument")),
                }
            };
            let m = match head.to_ascii_lowercase().as_str() {
                "f5t" => Forbidden::tagged(PatternTag::F5t, num(arg)?),
                "f2t" => Forbidden::tagged(PatternTag::F2t, num(arg)?),
                "f5" => Forbidden::tagged(PatternTag::F5t, 0),
                "k4minus" => Forbidden::tagged(PatternTag::K4Minus, 0),
                "f5prime" => Forbidden::tagged(PatternTag::F5Prime, 0),
                "fhat" => Forbidden::tagged(PatternTag::FHat, 0),
                "file" => {
                    let Some(path) = arg else {
                        return invalid("`file:` needs a path");
                    };
                    Forbidden::from_file(Path::new(path))?
                }
                _ => return invalid(format!("unknown forbidden pattern `{item}`")),
            };
            members.push(m);
        }
        ForbiddenFamily::new(members)
    }

    pub fn members(&self) -> &[Forbidden] {
        &self.members
    }

    pub fn patterns(&self) -> impl Iterator<Item = &Hypergraph3> {
        self.members.iter().map(|m| &m.pattern)
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self.members.iter().map(|m| m.label.as_str()).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

impl Forbidden {
    pub fn tagged(tag: PatternTag, t: u32) -> Self {
        let (label, detector) = match tag {
            PatternTag::F5t => (format!("F5^{t}"), Detector::F5t(t)),
            PatternTag::F2t => (format!("F2^{t}"), Detector::Codegree(t)),
            _ => (tag.to_string(), Detector::Generic),
        };
        Forbidden {
            label,
            pattern: make_pattern(tag, t),
            detector,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .or_else(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Ok(Forbidden {
            label: path.display().to_string(),
            pattern: parse_h3(&text)?,
            detector: Detector::Generic,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_family() {
        let f = ForbiddenFamily::parse("k4minus, f5t:0").unwrap();
        assert_eq!(f.members().len(), 2);
        assert_eq!(f.members()[1].detector, Detector::F5t(0));
        assert_eq!(f.to_string(), "{K4minus, F5^0}");
        assert!(ForbiddenFamily::parse("").is_err());
        assert!(ForbiddenFamily::parse("f2t").is_err());
        assert!(ForbiddenFamily::parse("octopus").is_err());
    }
}
