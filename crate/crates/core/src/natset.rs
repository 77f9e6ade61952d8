//! Eventually periodic subsets of ω, and the finite/cofinite special case.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::{CubeSet, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed set of naturals: {0}")]
pub struct NatSetError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FinCofKind {
    Finite,
    Cofinite,
}

/// A finite set (the exceptions themselves) or a cofinite one (ω minus the
/// exceptions).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinCof {
    pub kind: FinCofKind,
    pub exceptions: BTreeSet<u64>,
}

impl FinCof {
    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        FinCof {
            kind: FinCofKind::Finite,
            exceptions: members.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Self {
        FinCof {
            kind: FinCofKind::Cofinite,
            exceptions: missing.into_iter().collect(),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self.kind {
            FinCofKind::Finite => self.exceptions.contains(&n),
            FinCofKind::Cofinite => !self.exceptions.contains(&n),
        }
    }

    pub fn complement(&self) -> Self {
        let kind = match self.kind {
            FinCofKind::Finite => FinCofKind::Cofinite,
            FinCofKind::Cofinite => FinCofKind::Finite,
        };
        FinCof {
            kind,
            exceptions: self.exceptions.clone(),
        }
    }
}

/// Subset of ω given by a finite prefix of bits followed by a repeating
/// cycle; stored as a one-dimensional [`CubeSet`] and therefore canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NatSet(CubeSet);

impl NatSet {
    pub fn empty() -> Self {
        NatSet(CubeSet::empty(1))
    }

    pub fn all() -> Self {
        NatSet(CubeSet::full(1))
    }

    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        let pts: Vec<Point> = members.into_iter().map(|n| Point(vec![n])).collect();
        NatSet(CubeSet::from_points(1, &pts).expect("dimension 1"))
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Self {
        NatSet::finite(missing).complement()
    }

    /// `{n : n ≥ start}`.
    pub fn at_least(start: u64) -> Self {
        NatSet::finite(0..start).complement()
    }

    pub fn periodic(prefix: &[bool], cycle: &[bool]) -> Result<Self, NatSetError> {
        let bits = |bs: &[bool]| bs.iter().map(|&b| CubeSet::bit(b)).collect();
        CubeSet::from_columns(bits(prefix), bits(cycle))
            .map(NatSet)
            .map_err(|e| NatSetError(e.to_string()))
    }

    /// Residues `offset mod modulus`.
    pub fn residues(modulus: usize, offset: usize) -> Self {
        let cycle: Vec<bool> = (0..modulus.max(1))
            .map(|i| i == offset % modulus.max(1))
            .collect();
        NatSet::periodic(&[], &cycle).expect("nonempty cycle")
    }

    pub fn evens() -> Self {
        NatSet::residues(2, 0)
    }

    pub fn from_cube(set: CubeSet) -> Result<Self, NatSetError> {
        if set.dim() != 1 {
            return Err(NatSetError(format!(
                "expected dimension 1, got {}",
                set.dim()
            )));
        }
        Ok(NatSet(set))
    }

    pub fn as_cube(&self) -> &CubeSet {
        &self.0
    }

    pub fn contains(&self, n: u64) -> bool {
        self.0.column(n).and_then(CubeSet::as_bit).unwrap_or(false)
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.union(&other.0).expect("dimension 1"))
    }

    pub fn intersection(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.intersection(&other.0).expect("dimension 1"))
    }

    pub fn difference(&self, other: &NatSet) -> NatSet {
        NatSet(self.0.difference(&other.0).expect("dimension 1"))
    }

    pub fn complement(&self) -> NatSet {
        NatSet(self.0.complement())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_fubini_positive()
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.difference(other).is_empty()
    }

    /// `self ⊆* other`: all but finitely many members of `self` lie in `other`.
    pub fn almost_subset(&self, other: &NatSet) -> bool {
        !self.difference(other).is_infinite()
    }

    /// Length of the non-periodic prefix.
    pub fn prefix_len(&self) -> usize {
        self.0.prefix().len()
    }

    pub fn period(&self) -> usize {
        self.0.cycle().len()
    }

    /// Members below `bound`.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&n| self.contains(n)).collect()
    }

    pub fn to_fincof(&self) -> Option<FinCof> {
        let cycle = self.0.cycle();
        let bits: Vec<bool> = self.0.prefix().iter().filter_map(CubeSet::as_bit).collect();
        let p = bits.len() as u64;
        match cycle
            .iter()
            .map(|c| c.as_bit())
            .collect::<Vec<_>>()
            .as_slice()
        {
            [Some(false)] => Some(FinCof::finite((0..p).filter(|&i| bits[i as usize]))),
            [Some(true)] => Some(FinCof::cofinite((0..p).filter(|&i| !bits[i as usize]))),
            _ => None,
        }
    }

    pub fn from_fincof(f: &FinCof) -> NatSet {
        let fin = NatSet::finite(f.exceptions.iter().copied());
        match f.kind {
            FinCofKind::Finite => fin,
            FinCofKind::Cofinite => fin.complement(),
        }
    }
}

impl From<FinCof> for NatSet {
    fn from(f: FinCof) -> Self {
        NatSet::from_fincof(&f)
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NatSet({})",
            serde_json::to_string(self).map_err(|_| fmt::Error)?
        )
    }
}

/// JSON shape: finite/cofinite sets use `{"kind", "exceptions"}`; other
/// periodic sets use `{"kind": "periodic", "prefix": [0|1...], "cycle": [0|1...]}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Wire {
    Finite { exceptions: BTreeSet<u64> },
    Cofinite { exceptions: BTreeSet<u64> },
    Periodic { prefix: Vec<u8>, cycle: Vec<u8> },
}

impl Serialize for NatSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let wire = match self.to_fincof() {
            Some(FinCof {
                kind: FinCofKind::Finite,
                exceptions,
            }) => Wire::Finite { exceptions },
            Some(FinCof {
                kind: FinCofKind::Cofinite,
                exceptions,
            }) => Wire::Cofinite { exceptions },
            None => {
                let bits = |cs: &[CubeSet]| {
                    cs.iter()
                        .map(|c| c.as_bit().unwrap_or(false) as u8)
                        .collect()
                };
                Wire::Periodic {
                    prefix: bits(self.0.prefix()),
                    cycle: bits(self.0.cycle()),
                }
            }
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NatSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        Ok(match Wire::deserialize(deserializer)? {
            Wire::Finite { exceptions } => NatSet::finite(exceptions),
            Wire::Cofinite { exceptions } => NatSet::cofinite(exceptions),
            Wire::Periodic { prefix, cycle } => {
                let to_bits = |v: Vec<u8>| -> Result<Vec<bool>, D::Error> {
                    v.into_iter()
                        .map(|b| match b {
                            0 => Ok(false),
                            1 => Ok(true),
                            _ => Err(D::Error::custom("bits must be 0 or 1")),
                        })
                        .collect()
                };
                NatSet::periodic(&to_bits(prefix)?, &to_bits(cycle)?).map_err(D::Error::custom)?
            }
        })
    }
}
