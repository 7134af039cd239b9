//! Edge timesteps such as `3`, `2-1` or `4_b`.
//!
//! The first component is all digits; branch components after a `-` or `_`
//! are alphanumeric. Both separators mean the same thing and are not kept.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::TimestepError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Timestep {
    components: Vec<String>,
}

impl Timestep {
    pub fn from_components<I, S>(components: I) -> Result<Self, TimestepError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let components: Vec<String> = components.into_iter().map(Into::into).collect();
        let Some(first) = components.first() else {
            return Err(TimestepError {
                offset: 0,
                reason: "empty timestep",
            });
        };
        if !is_digits(first) {
            return Err(TimestepError {
                offset: 0,
                reason: "timestep must start with digits",
            });
        }
        let mut offset = first.len();
        for c in &components[1..] {
            offset += 1;
            if c.is_empty() || !c.chars().all(|ch| ch.is_ascii_alphanumeric()) {
                return Err(TimestepError {
                    offset,
                    reason: "branch component must be alphanumeric",
                });
            }
            offset += c.len();
        }
        Ok(Timestep { components })
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    /// True if `self` is a branch point of `other` (a proper prefix).
    pub fn precedes_branch(&self, other: &Timestep) -> bool {
        self.components.len() < other.components.len()
            && other.components.starts_with(&self.components)
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Timestep {
    type Err = TimestepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits_end = s.bytes().take_while(u8::is_ascii_digit).count();
        if digits_end == 0 {
            return Err(TimestepError {
                offset: 0,
                reason: "timestep must start with digits",
            });
        }
        let mut components = vec![s[..digits_end].to_string()];
        let mut rest = &s[digits_end..];
        let mut offset = digits_end;
        while let Some(sep) = rest.chars().next() {
            if sep != '-' && sep != '_' {
                return Err(TimestepError {
                    offset,
                    reason: "expected '-' or '_' between timestep components",
                });
            }
            let body = &rest[1..];
            let len = body.bytes().take_while(u8::is_ascii_alphanumeric).count();
            if len == 0 {
                return Err(TimestepError {
                    offset: offset + 1,
                    reason: "branch component must be alphanumeric",
                });
            }
            components.push(body[..len].to_string());
            rest = &body[len..];
            offset += 1 + len;
        }
        Ok(Timestep { components })
    }
}

impl fmt::Display for Timestep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.components.join("-"))
    }
}

/// Total order on timesteps.
///
/// Components compare pairwise; a proper prefix precedes its extensions, so a
/// branch point comes before its branches.
pub fn compare_timesteps(a: &Timestep, b: &Timestep) -> Ordering {
    for (x, y) in a.components.iter().zip(&b.components) {
        match compare_component(x, y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.components.len().cmp(&b.components.len())
}

/// Numeric prefix first (numerically; a missing prefix sorts first), then the
/// remainder lexicographically, then the raw text so that `01` and `1` differ.
fn compare_component(x: &str, y: &str) -> Ordering {
    let (xn, xr) = split_numeric_prefix(x);
    let (yn, yr) = split_numeric_prefix(y);
    let prefix = match (xn.is_empty(), yn.is_empty()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => compare_decimal(xn, yn),
    };
    prefix.then_with(|| xr.cmp(yr)).then_with(|| x.cmp(y))
}

fn split_numeric_prefix(s: &str) -> (&str, &str) {
    let n = s.bytes().take_while(u8::is_ascii_digit).count();
    s.split_at(n)
}

fn compare_decimal(x: &str, y: &str) -> Ordering {
    let x = x.trim_start_matches('0');
    let y = y.trim_start_matches('0');
    x.len().cmp(&y.len()).then_with(|| x.cmp(y))
}

impl Ord for Timestep {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_timesteps(self, other)
    }
}

impl PartialOrd for Timestep {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
