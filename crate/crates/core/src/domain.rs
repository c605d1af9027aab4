//! Applicability domains: the sets of bounds under which an application's
//! function must reduce to an abstraction.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ApplicabilityDomain {
    /// every natural number
    Omega,
    /// a finite non-empty set, kept sorted and free of duplicates
    FinSet(Vec<u64>),
    Empty,
}

impl ApplicabilityDomain {
    pub fn finite(items: impl IntoIterator<Item = u64>) -> ApplicabilityDomain {
        let mut v: Vec<u64> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            ApplicabilityDomain::Empty
        } else {
            ApplicabilityDomain::FinSet(v)
        }
    }

    pub fn member(&self, n: u64) -> bool {
        match self {
            ApplicabilityDomain::Omega => true,
            ApplicabilityDomain::FinSet(v) => v.binary_search(&n).is_ok(),
            ApplicabilityDomain::Empty => false,
        }
    }

    /// The least member not below `n0`.
    pub fn least_geq(&self, n0: u64) -> Option<u64> {
        match self {
            ApplicabilityDomain::Omega => Some(n0),
            ApplicabilityDomain::FinSet(v) => v.iter().copied().find(|&n| n >= n0),
            ApplicabilityDomain::Empty => None,
        }
    }

    pub fn exists_geq(&self, n0: u64) -> bool {
        self.least_geq(n0).is_some()
    }
}

/// `a1 <= a2` iff every member of `a1` is bounded above by a member of `a2`.
pub fn domain_leq(a1: &ApplicabilityDomain, a2: &ApplicabilityDomain) -> bool {
    match a1 {
        ApplicabilityDomain::Empty => true,
        ApplicabilityDomain::FinSet(v) => a2.exists_geq(*v.last().expect("non-empty")),
        ApplicabilityDomain::Omega => *a2 == ApplicabilityDomain::Omega,
    }
}

impl fmt::Display for ApplicabilityDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApplicabilityDomain::Omega => f.write_str("omega"),
            ApplicabilityDomain::Empty => f.write_str("empty"),
            ApplicabilityDomain::FinSet(v) => {
                let items: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "set:{}", items.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("bad domain `{0}`: expected omega, empty or set:N,N,...")]
pub struct DomainParseError(String);

impl FromStr for ApplicabilityDomain {
    type Err = DomainParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "omega" => return Ok(ApplicabilityDomain::Omega),
            "empty" => return Ok(ApplicabilityDomain::Empty),
            _ => {}
        }
        let items = s.strip_prefix("set:").ok_or_else(|| DomainParseError(s.to_string()))?;
        if items.trim().is_empty() {
            return Ok(ApplicabilityDomain::Empty);
        }
        items
            .split(',')
            .map(|n| n.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map(ApplicabilityDomain::finite)
            .map_err(|_| DomainParseError(s.to_string()))
    }
}
