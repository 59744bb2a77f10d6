use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::StrataError;

/// A generator of `H^2(M̄_{g,n}, ℚ)`.
///
/// The derived order (ψ's, then κ₁, then δ_irr, then separating classes by
/// `(h, subset)`) is the generator order used everywhere.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DivisorClass {
    Psi(usize),
    Kappa1,
    DeltaIrr,
    /// Curves with a separating node; the genus-`h` component carries the
    /// markings in `subset` (sorted).
    DeltaSep { h: u32, subset: Vec<usize> },
}

fn complement(subset: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|i| !subset.contains(i)).collect()
}

/// Canonical representative of `class` on `M̄_{g,n}`.
///
/// Separating classes are stored with `h < g - h`; when `h = g - h` the
/// lexicographically smaller of `S` and its complement is kept.
pub fn canonical_divisor(g: u32, n: usize, class: &DivisorClass) -> Result<DivisorClass, StrataError> {
    match class {
        DivisorClass::Psi(i) => {
            if *i == 0 || *i > n {
                return Err(StrataError::InvalidMarking { index: *i, n });
            }
            Ok(class.clone())
        }
        DivisorClass::Kappa1 => Ok(class.clone()),
        DivisorClass::DeltaIrr => {
            if g == 0 {
                return Err(StrataError::UnstableDivisor(class.to_string()));
            }
            Ok(class.clone())
        }
        DivisorClass::DeltaSep { h, subset } => {
            if let Some(&bad) = subset.iter().find(|&&i| i == 0 || i > n) {
                return Err(StrataError::InvalidMarking { index: bad, n });
            }
            let mut s: Vec<usize> = subset.clone();
            s.sort_unstable();
            s.dedup();
            if *h > g {
                return Err(StrataError::UnstableDivisor(class.to_string()));
            }
            let c = complement(&s, n);
            let side_stable = |genus: u32, marks: usize| genus > 0 || marks >= 2;
            if !side_stable(*h, s.len()) || !side_stable(g - h, c.len()) {
                return Err(StrataError::UnstableDivisor(class.to_string()));
            }
            let (h, subset) = match (2 * h).cmp(&g) {
                std::cmp::Ordering::Less => (*h, s),
                std::cmp::Ordering::Greater => (g - h, c),
                std::cmp::Ordering::Equal => (*h, s.min(c)),
            };
            Ok(DivisorClass::DeltaSep { h, subset })
        }
    }
}

/// All canonical generators of `H^2(M̄_{g,n})` in the standard order.
pub fn divisor_generators(g: u32, n: usize) -> Result<Vec<DivisorClass>, StrataError> {
    if g == 0 {
        return Err(StrataError::UnsupportedGenus(g));
    }
    if 2 * g as usize + n <= 2 {
        return Err(StrataError::Unstable { g, n });
    }
    let mut classes: BTreeSet<DivisorClass> = (1..=n).map(DivisorClass::Psi).collect();
    classes.insert(DivisorClass::Kappa1);
    classes.insert(DivisorClass::DeltaIrr);
    for h in 0..=g {
        for mask in 0u64..(1 << n) {
            let subset: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            if let Ok(c) = canonical_divisor(g, n, &DivisorClass::DeltaSep { h, subset }) {
                classes.insert(c);
            }
        }
    }
    Ok(classes.into_iter().collect())
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorClass::Psi(i) => write!(f, "psi_{i}"),
            DivisorClass::Kappa1 => write!(f, "kappa_1"),
            DivisorClass::DeltaIrr => write!(f, "delta_irr"),
            DivisorClass::DeltaSep { h, subset } => {
                let items: Vec<String> = subset.iter().map(ToString::to_string).collect();
                write!(f, "delta_{{{h},{{{}}}}}", items.join(","))
            }
        }
    }
}

impl FromStr for DivisorClass {
    type Err = StrataError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StrataError::Parse(s.to_string());
        match s {
            "kappa_1" => return Ok(DivisorClass::Kappa1),
            "delta_irr" => return Ok(DivisorClass::DeltaIrr),
            _ => {}
        }
        if let Some(i) = s.strip_prefix("psi_") {
            return i.parse().map(DivisorClass::Psi).map_err(|_| bad());
        }
        let body = s
            .strip_prefix("delta_{")
            .and_then(|b| b.strip_suffix("}}"))
            .ok_or_else(bad)?;
        let (h, list) = body.split_once(",{").ok_or_else(bad)?;
        let h = h.parse().map_err(|_| bad())?;
        let subset = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<Vec<usize>, _>>()?
        };
        Ok(DivisorClass::DeltaSep { h, subset })
    }
}
