//! Eventually periodic subsets of `ω^n`.
//!
//! A point of `ω^n` is a tuple `(i₁, …, iₙ)` of naturals, ordered
//! lexicographically, which is the ordinal order under
//! `(i₁, …, iₙ) ↦ ω^(n−1)·i₁ + ⋯ + iₙ`. A [`CubeSet`] of dimension `n ≥ 1` is
//! the sequence of its columns `A ∩ ({i} × ω^(n−1))`, each a `CubeSet` of
//! dimension `n − 1`, given by a finite prefix followed by a repeating
//! cycle. Dimension 0 is a single bit.
//!
//! Values are kept in canonical form (shortest cycle, then shortest prefix,
//! applied recursively), so `==` is semantic equality.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cycle must be nonempty")]
    EmptyCycle,
    #[error("ordinal {xi} is not below the order type {order_type}")]
    OutOfRange { xi: Ordinal, order_type: Ordinal },
    #[error("ordinal {alpha} exceeds the ambient order w^({dim})")]
    ExceedsAmbient { alpha: Ordinal, dim: usize },
    #[error("set is not contained in the encoded initial segment of {alpha}")]
    NotInSegment { alpha: Ordinal },
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    TooDeep { dim: usize, cap: usize },
    #[error("malformed set: {0}")]
    Malformed(String),
}

/// A point of `ω^n`, most significant coordinate first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<u64>);

impl Point {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `ω^(n−1)·i₁ + ⋯ + iₙ`.
    pub fn to_ordinal(&self) -> Ordinal {
        let n = self.0.len() as u64;
        let terms = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(j, &c)| (Ordinal::nat(n - 1 - j as u64), c));
        Ordinal::from_terms(terms).expect("exponents strictly decrease")
    }

    /// Inverse of [`Point::to_ordinal`]; requires `xi < ω^dim`.
    pub fn from_ordinal(dim: usize, xi: &Ordinal) -> Result<Point, CubeError> {
        if *xi >= Ordinal::omega_pow(Ordinal::nat(dim as u64)) {
            return Err(CubeError::ExceedsAmbient {
                alpha: xi.clone(),
                dim,
            });
        }
        let coords = (0..dim)
            .map(|j| xi.coefficient_of(&Ordinal::nat((dim - 1 - j) as u64)))
            .collect();
        Ok(Point(coords))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    Complement,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub struct CubeSet {
    node: Node,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Node {
    Bit(bool),
    Stream {
        dim: usize,
        prefix: Vec<CubeSet>,
        cycle: Vec<CubeSet>,
    },
}

impl CubeSet {
    pub fn bit(b: bool) -> Self {
        CubeSet { node: Node::Bit(b) }
    }

    pub fn empty(dim: usize) -> Self {
        Self::constant(dim, false)
    }

    pub fn full(dim: usize) -> Self {
        Self::constant(dim, true)
    }

    fn constant(dim: usize, b: bool) -> Self {
        if dim == 0 {
            return Self::bit(b);
        }
        CubeSet {
            node: Node::Stream {
                dim,
                prefix: Vec::new(),
                cycle: vec![Self::constant(dim - 1, b)],
            },
        }
    }

    /// Column `i` is `prefix[i]` for `i < prefix.len()`, and
    /// `cycle[(i − prefix.len()) mod cycle.len()]` afterwards.
    pub fn from_columns(prefix: Vec<CubeSet>, cycle: Vec<CubeSet>) -> Result<Self, CubeError> {
        let Some(first) = cycle.first() else {
            return Err(CubeError::EmptyCycle);
        };
        let child_dim = first.dim();
        if let Some(bad) = prefix.iter().chain(&cycle).find(|c| c.dim() != child_dim) {
            return Err(CubeError::DimensionMismatch {
                expected: child_dim,
                found: bad.dim(),
            });
        }
        Ok(Self::stream(child_dim + 1, prefix, cycle))
    }

    /// Finitely many given columns, then empty ones.
    pub fn stack(child_dim: usize, columns: Vec<CubeSet>) -> Result<Self, CubeError> {
        Self::from_columns(columns, vec![Self::empty(child_dim)])
    }

    fn stream(dim: usize, mut prefix: Vec<CubeSet>, mut cycle: Vec<CubeSet>) -> Self {
        let n = cycle.len();
        if let Some(d) =
            (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| cycle[i] == cycle[(i + d) % n]))
        {
            cycle.truncate(d);
        }
        while prefix.last().is_some_and(|p| Some(p) == cycle.last()) {
            prefix.pop();
            cycle.rotate_right(1);
        }
        CubeSet {
            node: Node::Stream { dim, prefix, cycle },
        }
    }

    pub fn singleton(p: &Point) -> Self {
        Self::singleton_from(&p.0)
    }

    fn singleton_from(coords: &[u64]) -> Self {
        match coords.split_first() {
            None => Self::bit(true),
            Some((&i, rest)) => {
                let child_dim = rest.len();
                let mut prefix = vec![Self::empty(child_dim); i as usize];
                prefix.push(Self::singleton_from(rest));
                Self::stream(child_dim + 1, prefix, vec![Self::empty(child_dim)])
            }
        }
    }

    pub fn from_points<'a, I>(dim: usize, points: I) -> Result<Self, CubeError>
    where
        I: IntoIterator<Item = &'a Point>,
    {
        let mut acc = Self::empty(dim);
        for p in points {
            check_dim(dim, p.dim())?;
            acc = acc.union(&Self::singleton(p))?;
        }
        Ok(acc)
    }

    pub fn dim(&self) -> usize {
        match &self.node {
            Node::Bit(_) => 0,
            Node::Stream { dim, .. } => *dim,
        }
    }

    /// The bit of a dimension-0 set.
    pub fn as_bit(&self) -> Option<bool> {
        match self.node {
            Node::Bit(b) => Some(b),
            Node::Stream { .. } => None,
        }
    }

    pub fn prefix(&self) -> &[CubeSet] {
        match &self.node {
            Node::Bit(_) => &[],
            Node::Stream { prefix, .. } => prefix,
        }
    }

    pub fn cycle(&self) -> &[CubeSet] {
        match &self.node {
            Node::Bit(_) => &[],
            Node::Stream { cycle, .. } => cycle,
        }
    }

    /// Column `i`, i.e. `A ∩ ({i} × ω^(n−1))`; `None` in dimension 0.
    pub fn column(&self, i: u64) -> Option<&CubeSet> {
        match &self.node {
            Node::Bit(_) => None,
            Node::Stream { prefix, cycle, .. } => Some(column_of(prefix, cycle, i)),
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::empty(self.dim())
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.dim())
    }

    /// Number of nodes in the representation.
    pub fn size(&self) -> usize {
        match &self.node {
            Node::Bit(_) => 1,
            Node::Stream { prefix, cycle, .. } => {
                1 + prefix.iter().chain(cycle).map(CubeSet::size).sum::<usize>()
            }
        }
    }

    pub fn contains(&self, p: &Point) -> Result<bool, CubeError> {
        check_dim(self.dim(), p.dim())?;
        let mut cur = self;
        for &i in &p.0 {
            cur = cur.column(i).expect("dimension checked");
        }
        Ok(cur.as_bit().expect("dimension checked"))
    }

    /// Pointwise Boolean combination; `other` is ignored for
    /// [`BoolOp::Complement`] and required otherwise.
    pub fn combine(&self, op: BoolOp, other: Option<&CubeSet>) -> Result<CubeSet, CubeError> {
        let f: fn(bool, bool) -> bool = match op {
            BoolOp::Union => |a, b| a || b,
            BoolOp::Intersection => |a, b| a && b,
            BoolOp::Difference => |a, b| a && !b,
            BoolOp::Complement => return Ok(self.map_bits(&|a| !a)),
        };
        let other =
            other.ok_or_else(|| CubeError::Malformed("binary operation needs two sets".into()))?;
        check_dim(self.dim(), other.dim())?;
        Ok(self.zip_bits(other, &f))
    }

    pub fn union(&self, other: &CubeSet) -> Result<CubeSet, CubeError> {
        self.combine(BoolOp::Union, Some(other))
    }

    pub fn intersection(&self, other: &CubeSet) -> Result<CubeSet, CubeError> {
        self.combine(BoolOp::Intersection, Some(other))
    }

    pub fn difference(&self, other: &CubeSet) -> Result<CubeSet, CubeError> {
        self.combine(BoolOp::Difference, Some(other))
    }

    pub fn complement(&self) -> CubeSet {
        self.map_bits(&|a| !a)
    }

    pub fn is_subset(&self, other: &CubeSet) -> Result<bool, CubeError> {
        Ok(self.difference(other)?.is_empty())
    }

    fn map_bits(&self, f: &dyn Fn(bool) -> bool) -> CubeSet {
        match &self.node {
            Node::Bit(b) => Self::bit(f(*b)),
            Node::Stream { dim, prefix, cycle } => Self::stream(
                *dim,
                prefix.iter().map(|c| c.map_bits(f)).collect(),
                cycle.iter().map(|c| c.map_bits(f)).collect(),
            ),
        }
    }

    fn zip_bits(&self, other: &CubeSet, f: &dyn Fn(bool, bool) -> bool) -> CubeSet {
        match (&self.node, &other.node) {
            (Node::Bit(a), Node::Bit(b)) => Self::bit(f(*a, *b)),
            (
                Node::Stream {
                    dim,
                    prefix: pa,
                    cycle: ca,
                },
                Node::Stream {
                    prefix: pb,
                    cycle: cb,
                    ..
                },
            ) => {
                let p = pa.len().max(pb.len()) as u64;
                let c = ca.len().lcm(&cb.len()) as u64;
                let col = |i: u64| column_of(pa, ca, i).zip_bits(column_of(pb, cb, i), f);
                Self::stream(
                    *dim,
                    (0..p).map(col).collect(),
                    (p..p + c).map(col).collect(),
                )
            }
            _ => unreachable!("dimensions checked by caller"),
        }
    }

    /// Window comparison of two representations without relying on
    /// canonical form: columns are compared up to
    /// `|prefix₁| + |prefix₂| + lcm(|cycle₁|, |cycle₂|)`, recursively.
    pub fn semantic_eq(&self, other: &CubeSet) -> bool {
        match (&self.node, &other.node) {
            (Node::Bit(a), Node::Bit(b)) => a == b,
            (
                Node::Stream {
                    dim: da,
                    prefix: pa,
                    cycle: ca,
                },
                Node::Stream {
                    dim: db,
                    prefix: pb,
                    cycle: cb,
                },
            ) => {
                da == db && {
                    let window = (pa.len() + pb.len() + ca.len().lcm(&cb.len())) as u64;
                    (0..window).all(|i| column_of(pa, ca, i).semantic_eq(column_of(pb, cb, i)))
                }
            }
            _ => false,
        }
    }

    /// Order type of `⟨A, lex⟩`: the ordinal sum of the column types, where
    /// the periodic part contributes `c·ω = ω^(e+1)` for a positive block
    /// sum `c` with leading exponent `e`.
    pub fn order_type(&self) -> Ordinal {
        match &self.node {
            Node::Bit(b) => Ordinal::nat(*b as u64),
            Node::Stream { prefix, cycle, .. } => {
                let head = sum_types(prefix);
                let block = sum_types(cycle);
                match block.leading_exponent() {
                    None => head,
                    Some(e) => &head + &Ordinal::omega_pow(e + &Ordinal::one()),
                }
            }
        }
    }

    /// `A ∉ Fin^n`: infinitely many columns are `Fin^(n−1)`-positive, which
    /// for a periodic column stream means some cycle column is.
    pub fn is_fubini_positive(&self) -> bool {
        match &self.node {
            Node::Bit(b) => *b,
            Node::Stream { cycle, .. } => cycle.iter().any(CubeSet::is_fubini_positive),
        }
    }

    /// The `xi`-th element of `A` in lex order.
    pub fn select(&self, xi: &Ordinal) -> Result<Point, CubeError> {
        let order_type = self.order_type();
        if *xi >= order_type {
            return Err(CubeError::OutOfRange {
                xi: xi.clone(),
                order_type,
            });
        }
        let mut coords = Vec::with_capacity(self.dim());
        self.select_into(xi.clone(), &mut coords);
        Ok(Point(coords))
    }

    fn select_into(&self, mut xi: Ordinal, out: &mut Vec<u64>) {
        let Node::Stream { prefix, cycle, .. } = &self.node else {
            debug_assert!(xi.is_zero());
            return;
        };
        for (i, col) in prefix.iter().enumerate() {
            let t = col.order_type();
            if xi < t {
                out.push(i as u64);
                return col.select_into(xi, out);
            }
            xi = xi.left_sub(&t);
        }
        let block = sum_types(cycle);
        let e = block
            .leading_exponent()
            .expect("xi below order type")
            .clone();
        let c0 = block.leading_coefficient().expect("nonzero block");
        let q = if xi.leading_exponent() == Some(&e) {
            xi.leading_coefficient().unwrap_or(0)
        } else {
            0
        };
        let mut k = q / c0;
        let blocks = |k: u64| &block * &Ordinal::nat(k);
        while k > 0 && blocks(k) > xi {
            k -= 1;
        }
        while blocks(k + 1) <= xi {
            k += 1;
        }
        xi = xi.left_sub(&blocks(k));
        let base = prefix.len() as u64 + k * cycle.len() as u64;
        for (j, col) in cycle.iter().enumerate() {
            let t = col.order_type();
            if xi < t {
                out.push(base + j as u64);
                return col.select_into(xi, out);
            }
            xi = xi.left_sub(&t);
        }
        unreachable!("remainder is below one block");
    }

    /// Position of `p` in the lex enumeration of `A`, or `None` when
    /// `p ∉ A`; inverse of [`CubeSet::select`].
    pub fn rank_of(&self, p: &Point) -> Result<Option<Ordinal>, CubeError> {
        check_dim(self.dim(), p.dim())?;
        Ok(self.rank_from(&p.0))
    }

    fn rank_from(&self, coords: &[u64]) -> Option<Ordinal> {
        let (prefix, cycle) = match &self.node {
            Node::Bit(b) => return b.then(Ordinal::zero),
            Node::Stream { prefix, cycle, .. } => (prefix, cycle),
        };
        let (&i, rest) = coords.split_first().expect("dimension checked");
        let p = prefix.len() as u64;
        let before = if i < p {
            sum_types(&prefix[..i as usize])
        } else {
            let c = cycle.len() as u64;
            let (k, j) = ((i - p) / c, ((i - p) % c) as usize);
            let blocks = &sum_types(cycle) * &Ordinal::nat(k);
            &(&sum_types(prefix) + &blocks) + &sum_types(&cycle[..j])
        };
        let within = column_of(prefix, cycle, i).rank_from(rest)?;
        Some(&before + &within)
    }

    /// The set `{p ∈ ω^dim : point_to_ord(p) < alpha}`, for `alpha ≤ ω^dim`.
    pub fn initial_segment(dim: usize, alpha: &Ordinal) -> Result<CubeSet, CubeError> {
        let ambient = Ordinal::omega_pow(Ordinal::nat(dim as u64));
        if *alpha > ambient {
            return Err(CubeError::ExceedsAmbient {
                alpha: alpha.clone(),
                dim,
            });
        }
        if *alpha == ambient {
            return Ok(Self::full(dim));
        }
        if dim == 0 {
            return Ok(Self::bit(false));
        }
        let lead = Ordinal::nat(dim as u64 - 1);
        let a = alpha.coefficient_of(&lead);
        let rest = alpha.left_sub(&Ordinal::monomial(lead, a));
        let mut prefix = vec![Self::full(dim - 1); a as usize];
        prefix.push(Self::initial_segment(dim - 1, &rest)?);
        Ok(Self::stream(dim, prefix, vec![Self::empty(dim - 1)]))
    }

    /// Whether `A ∈ P(alpha)`, with `alpha` encoded as an initial segment of
    /// `ω^n` and `A` required to lie inside it.
    pub fn is_copy(&self, alpha: &Ordinal) -> Result<bool, CubeError> {
        let segment = Self::initial_segment(self.dim(), alpha)?;
        if !self.is_subset(&segment)? {
            return Err(CubeError::NotInSegment {
                alpha: alpha.clone(),
            });
        }
        Ok(self.order_type() == *alpha)
    }

    /// `A × B` under the lex order, as a subset of `ω^(n+m)`.
    pub fn lex_product(&self, other: &CubeSet) -> CubeSet {
        match &self.node {
            Node::Bit(true) => other.clone(),
            Node::Bit(false) => Self::empty(other.dim()),
            Node::Stream { dim, prefix, cycle } => Self::stream(
                dim + other.dim(),
                prefix.iter().map(|c| c.lex_product(other)).collect(),
                cycle.iter().map(|c| c.lex_product(other)).collect(),
            ),
        }
    }

    /// Members whose coordinates are all below `side`, in lex order.
    pub fn points_in_box(&self, side: u64) -> Vec<Point> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(self.dim());
        self.collect_box(side, &mut buf, &mut out);
        out
    }

    fn collect_box(&self, side: u64, buf: &mut Vec<u64>, out: &mut Vec<Point>) {
        match &self.node {
            Node::Bit(b) => {
                if *b {
                    out.push(Point(buf.clone()));
                }
            }
            Node::Stream { prefix, cycle, .. } => {
                for i in 0..side {
                    buf.push(i);
                    column_of(prefix, cycle, i).collect_box(side, buf, out);
                    buf.pop();
                }
            }
        }
    }
}

fn column_of<'a>(prefix: &'a [CubeSet], cycle: &'a [CubeSet], i: u64) -> &'a CubeSet {
    let p = prefix.len() as u64;
    if i < p {
        &prefix[i as usize]
    } else {
        &cycle[((i - p) % cycle.len() as u64) as usize]
    }
}

fn sum_types(cols: &[CubeSet]) -> Ordinal {
    cols.iter()
        .fold(Ordinal::zero(), |acc, c| &acc + &c.order_type())
}

fn check_dim(expected: usize, found: usize) -> Result<(), CubeError> {
    if expected == found {
        Ok(())
    } else {
        Err(CubeError::DimensionMismatch { expected, found })
    }
}

impl fmt::Debug for CubeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Bit(b) => write!(f, "{}", *b as u8),
            Node::Stream { prefix, cycle, .. } => {
                write!(f, "{prefix:?}{cycle:?}*")
            }
        }
    }
}

impl fmt::Display for CubeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&json)
    }
}

/// JSON shape: dimension-0 sets are `0`/`1`, others
/// `{"dim": n, "prefix": [...], "cycle": [...]}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Bit(u8),
    Node {
        dim: usize,
        prefix: Vec<Wire>,
        cycle: Vec<Wire>,
    },
}

impl TryFrom<Wire> for CubeSet {
    type Error = CubeError;

    fn try_from(w: Wire) -> Result<Self, Self::Error> {
        match w {
            Wire::Bit(0) => Ok(CubeSet::bit(false)),
            Wire::Bit(1) => Ok(CubeSet::bit(true)),
            Wire::Bit(b) => Err(CubeError::Malformed(format!("bit must be 0 or 1, got {b}"))),
            Wire::Node { dim, prefix, cycle } => {
                if dim == 0 {
                    return Err(CubeError::Malformed(
                        "dim-0 sets are written as 0 or 1".into(),
                    ));
                }
                let convert = |ws: Vec<Wire>| -> Result<Vec<CubeSet>, CubeError> {
                    ws.into_iter().map(CubeSet::try_from).collect()
                };
                let set = CubeSet::from_columns(convert(prefix)?, convert(cycle)?)?;
                check_dim(dim, set.dim())?;
                Ok(set)
            }
        }
    }
}

impl From<CubeSet> for Wire {
    fn from(s: CubeSet) -> Self {
        match s.node {
            Node::Bit(b) => Wire::Bit(b as u8),
            Node::Stream { dim, prefix, cycle } => Wire::Node {
                dim,
                prefix: prefix.into_iter().map(Wire::from).collect(),
                cycle: cycle.into_iter().map(Wire::from).collect(),
            },
        }
    }
}
