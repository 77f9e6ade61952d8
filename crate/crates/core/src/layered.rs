//! Subsets of the ladder `L = Σ_{n∈ω} L_n`, where layer `L_n` is a copy of
//! `ω^(n+1)`, so that `L` itself has order type `ω^ω`.
//!
//! A [`LayeredSet`] stores explicit columns `A ∩ L_n` for a finite prefix of
//! layers; every later layer is either empty or full according to a
//! repeating tail mask.
//!
//! The ideal `I` on `L` consists of the sets into which `L` does not embed.
//! Membership is decided through the S-sets
//! `S^m_A = {n : type(A ∩ L_n) ≥ ω^(m+1)}`: `A ∈ I` iff some `S^m_A` is empty.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cube::CubeSet;
use crate::natset::NatSet;
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayerError {
    #[error("column {index} must have dimension {expected}, found {found}")]
    ColumnDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("tail mask must be nonempty")]
    EmptyTail,
    #[error("set belongs to the ideal I")]
    InIdeal,
    #[error("fusion needs at least one set")]
    FusionEmpty,
    #[error("fusion precondition failed: A_{n} belongs to the ideal I")]
    FusionNotPositive { n: usize },
    #[error("fusion precondition failed: S is not almost contained in S^{m} of A_{n}")]
    FusionNotReduction { m: usize, n: usize },
    #[error("prefix of {len} columns exceeds the configured cap {cap}")]
    PrefixTooLong { len: usize, cap: usize },
    #[error("malformed layered set: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct LayeredSet {
    prefix: Vec<CubeSet>,
    tail: Vec<bool>,
}

/// Dimension of layer `n`.
pub fn layer_dim(n: usize) -> usize {
    n + 1
}

fn layer_const(n: usize, full: bool) -> CubeSet {
    if full {
        CubeSet::full(layer_dim(n))
    } else {
        CubeSet::empty(layer_dim(n))
    }
}

impl LayeredSet {
    pub fn empty() -> Self {
        Self::canonical(Vec::new(), vec![false])
    }

    pub fn full() -> Self {
        Self::canonical(Vec::new(), vec![true])
    }

    /// Explicit columns followed by a tail whose layer `prefix.len() + j` is
    /// full iff `tail[j mod tail.len()]`.
    pub fn new(prefix: Vec<CubeSet>, tail: Vec<bool>) -> Result<Self, LayerError> {
        if tail.is_empty() {
            return Err(LayerError::EmptyTail);
        }
        for (index, col) in prefix.iter().enumerate() {
            if col.dim() != layer_dim(index) {
                return Err(LayerError::ColumnDimension {
                    index,
                    expected: layer_dim(index),
                    found: col.dim(),
                });
            }
        }
        Ok(Self::canonical(prefix, tail))
    }

    /// Only the given columns; every later layer empty.
    pub fn with_empty_tail(prefix: Vec<CubeSet>) -> Result<Self, LayerError> {
        Self::new(prefix, vec![false])
    }

    pub fn with_full_tail(prefix: Vec<CubeSet>) -> Result<Self, LayerError> {
        Self::new(prefix, vec![true])
    }

    /// The union of the layers `L_n` for `n ∈ s`.
    pub fn layers(s: &NatSet) -> Self {
        Self::full().restrict(s)
    }

    fn canonical(mut prefix: Vec<CubeSet>, mut tail: Vec<bool>) -> Self {
        let n = tail.len();
        if let Some(d) =
            (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| tail[i] == tail[(i + d) % n]))
        {
            tail.truncate(d);
        }
        while let Some(last) = prefix.last() {
            let idx = prefix.len() - 1;
            if *last != layer_const(idx, *tail.last().expect("nonempty tail")) {
                break;
            }
            prefix.pop();
            tail.rotate_right(1);
        }
        LayeredSet { prefix, tail }
    }

    pub fn prefix(&self) -> &[CubeSet] {
        &self.prefix
    }

    pub fn tail(&self) -> &[bool] {
        &self.tail
    }

    fn tail_full_at(&self, n: usize) -> bool {
        debug_assert!(n >= self.prefix.len());
        self.tail[(n - self.prefix.len()) % self.tail.len()]
    }

    /// `A ∩ L_n`, a subset of `ω^(n+1)`.
    pub fn column(&self, n: usize) -> CubeSet {
        match self.prefix.get(n) {
            Some(c) => c.clone(),
            None => layer_const(n, self.tail_full_at(n)),
        }
    }

    fn zip(
        &self,
        other: &LayeredSet,
        f: impl Fn(&CubeSet, &CubeSet) -> CubeSet,
        g: impl Fn(bool, bool) -> bool,
    ) -> LayeredSet {
        let p = self.prefix.len().max(other.prefix.len());
        let c = self.tail.len().lcm(&other.tail.len());
        let prefix = (0..p)
            .map(|n| f(&self.column(n), &other.column(n)))
            .collect();
        let tail = (p..p + c)
            .map(|n| g(self.tail_full_at(n), other.tail_full_at(n)))
            .collect();
        Self::canonical(prefix, tail)
    }

    pub fn union(&self, other: &LayeredSet) -> LayeredSet {
        self.zip(other, |a, b| a.union(b).expect("same layer"), |a, b| a || b)
    }

    pub fn intersection(&self, other: &LayeredSet) -> LayeredSet {
        self.zip(
            other,
            |a, b| a.intersection(b).expect("same layer"),
            |a, b| a && b,
        )
    }

    pub fn difference(&self, other: &LayeredSet) -> LayeredSet {
        self.zip(
            other,
            |a, b| a.difference(b).expect("same layer"),
            |a, b| a && !b,
        )
    }

    pub fn complement(&self) -> LayeredSet {
        Self::full().difference(self)
    }

    pub fn is_subset(&self, other: &LayeredSet) -> bool {
        self.difference(other) == Self::empty()
    }

    /// `A ∩ ⋃_{k∈s} L_k`.
    pub fn restrict(&self, s: &NatSet) -> LayeredSet {
        let p = self.prefix.len().max(s.prefix_len());
        let c = self.tail.len().lcm(&s.period());
        let prefix = (0..p)
            .map(|n| {
                if s.contains(n as u64) {
                    self.column(n)
                } else {
                    layer_const(n, false)
                }
            })
            .collect();
        let tail = (p..p + c)
            .map(|n| s.contains(n as u64) && self.tail_full_at(n))
            .collect();
        Self::canonical(prefix, tail)
    }

    /// Layers at or beyond the prefix whose tail bit is set.
    fn tail_layers(&self) -> NatSet {
        NatSet::periodic(&vec![false; self.prefix.len()], &self.tail).expect("nonempty tail")
    }

    /// `S^m_A = {n : type(A ∩ L_n) ≥ ω^(m+1)}`.
    pub fn s_set(&self, m: usize) -> NatSet {
        let threshold = Ordinal::omega_pow(Ordinal::nat(layer_dim(m) as u64));
        let explicit = NatSet::finite(
            self.prefix
                .iter()
                .enumerate()
                .filter(|(_, c)| c.order_type() >= threshold)
                .map(|(n, _)| n as u64),
        );
        // a full layer n reaches ω^(m+1) iff n ≥ m
        explicit.union(&self.tail_layers().intersection(&NatSet::at_least(m as u64)))
    }

    /// `supp A = {n : A ∩ L_n ≠ ∅}`.
    pub fn support(&self) -> NatSet {
        let explicit = NatSet::finite(
            self.prefix
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_empty())
                .map(|(n, _)| n as u64),
        );
        explicit.union(&self.tail_layers())
    }

    /// Largest `m` that needs checking in [`LayeredSet::in_ideal`]: past the
    /// prefix, every layer is uniformly empty or full.
    pub fn ideal_search_bound(&self) -> usize {
        self.prefix.len() + 1
    }

    /// `A ∈ I` iff `S^m_A = ∅` for some `m`.
    pub fn in_ideal(&self) -> bool {
        (0..=self.ideal_search_bound()).any(|m| self.s_set(m).is_empty())
    }

    /// `A ⊆_I B`, i.e. `A ∖ B ∈ I`.
    pub fn subset_mod_ideal(&self, other: &LayeredSet) -> bool {
        self.difference(other).in_ideal()
    }

    /// Truncated reduction test: `s ∖ S^m_A` is finite for every
    /// `m ≤ m_max`. Rejects `A ∈ I`.
    pub fn is_reduction(&self, s: &NatSet, m_max: usize) -> Result<bool, LayerError> {
        if self.in_ideal() {
            return Err(LayerError::InIdeal);
        }
        Ok((0..=m_max).all(|m| s.almost_subset(&self.s_set(m))))
    }

    /// Ordinal sum of the layer types.
    pub fn order_type(&self) -> Ordinal {
        let head = self
            .prefix
            .iter()
            .fold(Ordinal::zero(), |acc, c| &acc + &c.order_type());
        if self.tail.iter().any(|&b| b) {
            // infinitely many full layers ω^(n+1) sum to ω^ω
            &head + &Ordinal::omega_pow(Ordinal::omega())
        } else {
            head
        }
    }
}

/// One stage of the fusion construction, for `r = sets.len() − 1`:
/// `S_r = S ∩ ⋂_{m,n ≤ r} S^m_{A_n}` and `B_r = A_r ∩ ⋃_{k ∈ S_r} L_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionStage {
    pub s_r: NatSet,
    pub b_r: LayeredSet,
}

pub fn fusion_stage(sets: &[LayeredSet], s: &NatSet) -> Result<FusionStage, LayerError> {
    let r = sets.len().checked_sub(1).ok_or(LayerError::FusionEmpty)?;
    if let Some(n) = sets.iter().position(LayeredSet::in_ideal) {
        return Err(LayerError::FusionNotPositive { n });
    }
    let mut s_r = s.clone();
    for (n, a) in sets.iter().enumerate() {
        for m in 0..=r {
            let sm = a.s_set(m);
            if !s.almost_subset(&sm) {
                return Err(LayerError::FusionNotReduction { m, n });
            }
            s_r = s_r.intersection(&sm);
        }
    }
    let b_r = sets[r].restrict(&s_r);
    Ok(FusionStage { s_r, b_r })
}

/// `B_r` of the fusion construction; see [`fusion_stage`].
pub fn fusion(sets: &[LayeredSet], s: &NatSet) -> Result<LayeredSet, LayerError> {
    fusion_stage(sets, s).map(|st| st.b_r)
}

/// JSON shape: `{"prefix": [<CubeSet of dim n+1>...], "tail": "empty" | "full" | [0|1...]}`.
#[derive(Serialize, Deserialize)]
struct Wire {
    prefix: Vec<CubeSet>,
    tail: TailWire,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TailWire {
    Named(String),
    Mask(Vec<u8>),
}

impl TryFrom<Wire> for LayeredSet {
    type Error = LayerError;

    fn try_from(w: Wire) -> Result<Self, Self::Error> {
        let tail = match w.tail {
            TailWire::Named(s) if s == "empty" => vec![false],
            TailWire::Named(s) if s == "full" => vec![true],
            TailWire::Named(s) => {
                return Err(LayerError::Malformed(format!("unknown tail {s:?}")));
            }
            TailWire::Mask(bits) => bits
                .into_iter()
                .map(|b| match b {
                    0 => Ok(false),
                    1 => Ok(true),
                    _ => Err(LayerError::Malformed("tail bits must be 0 or 1".into())),
                })
                .collect::<Result<_, _>>()?,
        };
        LayeredSet::new(w.prefix, tail)
    }
}

impl From<LayeredSet> for Wire {
    fn from(s: LayeredSet) -> Self {
        let tail = match s.tail.as_slice() {
            [false] => TailWire::Named("empty".into()),
            [true] => TailWire::Named("full".into()),
            bits => TailWire::Mask(bits.iter().map(|&b| b as u8).collect()),
        };
        Wire {
            prefix: s.prefix,
            tail,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Point;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    /// Only layer `k` full.
    fn only_layer(k: usize) -> LayeredSet {
        LayeredSet::layers(&NatSet::finite([k as u64]))
    }

    fn even_layers() -> LayeredSet {
        LayeredSet::layers(&NatSet::evens())
    }

    #[test]
    fn canonical_form() {
        let a =
            LayeredSet::new(vec![CubeSet::full(1), CubeSet::full(2)], vec![true, true]).unwrap();
        assert_eq!(a, LayeredSet::full());
        assert!(a.prefix().is_empty());
        assert!(LayeredSet::new(vec![CubeSet::full(2)], vec![true]).is_err());
        assert_eq!(LayeredSet::new(vec![], vec![]), Err(LayerError::EmptyTail));
    }

    #[test]
    fn s_sets() {
        for m in 0..6 {
            assert_eq!(LayeredSet::full().s_set(m), NatSet::at_least(m as u64));
            assert!(LayeredSet::empty().s_set(m).is_empty());
        }
        let a = only_layer(5);
        assert_eq!(a.s_set(3), NatSet::finite([5]));
        assert!(a.s_set(7).is_empty());
        assert_eq!(even_layers().s_set(0), NatSet::evens());
    }

    #[test]
    fn support() {
        assert_eq!(LayeredSet::full().support(), NatSet::all());
        assert!(LayeredSet::empty().support().is_empty());
        let pt = CubeSet::singleton(&Point(vec![0, 4]));
        let a = LayeredSet::with_empty_tail(vec![CubeSet::empty(1), pt]).unwrap();
        assert_eq!(a.support(), NatSet::finite([1]));
        assert!(a.s_set(0).is_empty());
    }

    #[test]
    fn ideal_membership() {
        let prefix_only =
            LayeredSet::with_empty_tail(vec![CubeSet::full(1), CubeSet::full(2), CubeSet::full(3)])
                .unwrap();
        assert!(prefix_only.in_ideal());
        assert!(!LayeredSet::full().in_ideal());
        let emptied = LayeredSet::with_full_tail(vec![
            CubeSet::empty(1),
            CubeSet::empty(2),
            CubeSet::empty(3),
        ])
        .unwrap();
        assert!(!emptied.in_ideal());
        assert!(!even_layers().in_ideal());
    }

    #[test]
    fn ideal_inclusion() {
        let full = LayeredSet::full();
        let prefix_only = LayeredSet::with_empty_tail(vec![CubeSet::full(1)]).unwrap();
        assert!(prefix_only.subset_mod_ideal(&full));
        assert!(!full.subset_mod_ideal(&prefix_only));
        let holed = full.difference(&only_layer(3));
        assert!(full.subset_mod_ideal(&holed));
        assert!(!full.is_subset(&holed));
    }

    #[test]
    fn reductions() {
        let full = LayeredSet::full();
        assert_eq!(full.is_reduction(&NatSet::all(), 12), Ok(true));
        assert_eq!(full.is_reduction(&NatSet::evens(), 10), Ok(true));
        assert_eq!(even_layers().is_reduction(&NatSet::all(), 1), Ok(false));
        assert_eq!(even_layers().is_reduction(&NatSet::evens(), 6), Ok(true));
        assert_eq!(
            LayeredSet::empty().is_reduction(&NatSet::all(), 1),
            Err(LayerError::InIdeal)
        );
    }

    #[test]
    fn fusion_examples() {
        let full = LayeredSet::full();
        let three = vec![full.clone(), full.clone(), full.clone()];
        assert_eq!(
            fusion(&three, &NatSet::all()),
            Ok(LayeredSet::layers(&NatSet::at_least(2)))
        );
        assert_eq!(
            fusion(std::slice::from_ref(&full), &NatSet::evens()),
            Ok(even_layers())
        );
        let two = vec![full.clone(), full.clone()];
        assert_eq!(
            fusion(&two, &NatSet::at_least(5)),
            Ok(LayeredSet::layers(&NatSet::at_least(5)))
        );
    }

    #[test]
    fn fusion_preconditions() {
        let full = LayeredSet::full();
        assert_eq!(fusion(&[], &NatSet::all()), Err(LayerError::FusionEmpty));
        assert_eq!(
            fusion(&[full.clone(), LayeredSet::empty()], &NatSet::all()),
            Err(LayerError::FusionNotPositive { n: 1 })
        );
        assert_eq!(
            fusion(&[full, even_layers()], &NatSet::all()),
            Err(LayerError::FusionNotReduction { m: 0, n: 1 })
        );
    }

    #[test]
    fn order_types() {
        assert_eq!(LayeredSet::full().order_type(), o("w^(w)"));
        let two = LayeredSet::with_empty_tail(vec![CubeSet::full(1), CubeSet::full(2)]).unwrap();
        assert_eq!(two.order_type(), o("w^2"));
        assert_eq!(LayeredSet::empty().order_type(), Ordinal::zero());
        assert_eq!(even_layers().order_type(), o("w^(w)"));
    }

    #[test]
    fn json_schema() {
        let a = LayeredSet::with_empty_tail(vec![CubeSet::full(1)]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"prefix":[{"dim":1,"prefix":[],"cycle":[1]}],"tail":"empty"}"#
        );
        assert_eq!(serde_json::from_str::<LayeredSet>(&s).unwrap(), a);
        let e: LayeredSet = serde_json::from_str(r#"{"prefix":[],"tail":[1,0]}"#).unwrap();
        assert_eq!(e, even_layers());
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"prefix":[],"tail":[1,0]}"#
        );
        assert!(serde_json::from_str::<LayeredSet>(r#"{"prefix":[],"tail":"half"}"#).is_err());
    }
}
