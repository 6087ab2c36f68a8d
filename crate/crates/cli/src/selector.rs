use std::str::FromStr;

use anyhow::{bail, Context};
use arrangement_core::generators::example_localization_flat;
use arrangement_core::{Arrangement, Flat};

/// How a flat is named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    /// A single hyperplane, by index.
    Hyperplane(usize),
    /// The closure of the intersection of the listed hyperplanes.
    Closure(Vec<usize>),
    /// The distinguished flat of A^1_ℓ(r) whose localization is A^0_{ℓ-1}(r).
    Example29,
}

impl FromStr for Selector {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let s = s.trim();
        if s == "example-2.9" {
            return Ok(Selector::Example29);
        }
        let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']'));
        let list = inner.unwrap_or(s);
        let indices = list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .with_context(|| format!("bad hyperplane index {t:?}"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        match (inner.is_some(), indices.as_slice()) {
            (false, [i]) => Ok(Selector::Hyperplane(*i)),
            (false, []) => bail!("empty selector"),
            _ => Ok(Selector::Closure(indices)),
        }
    }
}

impl Selector {
    pub fn resolve(&self, a: &Arrangement) -> anyhow::Result<Flat> {
        Ok(match self {
            Selector::Hyperplane(i) => a.hyperplane_flat(*i)?,
            Selector::Closure(idx) => a.closure(idx)?,
            Selector::Example29 => example_localization_flat(a)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("3".parse::<Selector>().unwrap(), Selector::Hyperplane(3));
        assert_eq!(
            "0,2".parse::<Selector>().unwrap(),
            Selector::Closure(vec![0, 2])
        );
        assert_eq!(
            "[4]".parse::<Selector>().unwrap(),
            Selector::Closure(vec![4])
        );
        assert_eq!("[]".parse::<Selector>().unwrap(), Selector::Closure(vec![]));
        assert_eq!(
            "example-2.9".parse::<Selector>().unwrap(),
            Selector::Example29
        );
        assert!("".parse::<Selector>().is_err());
        assert!("x".parse::<Selector>().is_err());
        assert!("1,-2".parse::<Selector>().is_err());
    }
}
