//! Finite pre-orders: separativity, the separative modification and
//! quotient, products, and isomorphism search.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exec::Exec;

/// Default size cap for [`iso`].
pub const ISO_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation matrix is not square")]
    NotSquare,
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("isomorphism search is capped at {cap} elements, got {size}")]
    TooLarge { size: usize, cap: usize },
    #[error("poset text, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A reflexive, transitive relation `≤` on `{0, …, size−1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    size: usize,
    rel: Vec<bool>,
}

impl FinPoset {
    pub fn from_matrix(rows: Vec<Vec<bool>>) -> Result<Self, PosetError> {
        let size = rows.len();
        if rows.iter().any(|r| r.len() != size) {
            return Err(PosetError::NotSquare);
        }
        let p = FinPoset {
            size,
            rel: rows.into_iter().flatten().collect(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), PosetError> {
        let n = self.size;
        if let Some(i) = (0..n).find(|&i| !self.le(i, i)) {
            return Err(PosetError::NotReflexive(i));
        }
        for a in 0..n {
            for b in 0..n {
                if !self.le(a, b) {
                    continue;
                }
                if let Some(c) = (0..n).find(|&c| self.le(b, c) && !self.le(a, c)) {
                    return Err(PosetError::NotTransitive(a, b, c));
                }
            }
        }
        Ok(())
    }

    /// Reflexive-transitive closure of the given pairs `a ≤ b`.
    pub fn closure<I: IntoIterator<Item = (usize, usize)>>(size: usize, pairs: I) -> Self {
        let mut rel = vec![false; size * size];
        for i in 0..size {
            rel[i * size + i] = true;
        }
        for (a, b) in pairs {
            rel[a * size + b] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if rel[i * size + k] {
                    for j in 0..size {
                        if rel[k * size + j] {
                            rel[i * size + j] = true;
                        }
                    }
                }
            }
        }
        FinPoset { size, rel }
    }

    /// `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        Self::closure(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn antichain(n: usize) -> Self {
        Self::closure(n, [])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.size + b]
    }

    pub fn matrix(&self) -> Vec<Vec<bool>> {
        self.rel
            .chunks(self.size.max(1))
            .take(self.size)
            .map(<[bool]>::to_vec)
            .collect()
    }

    pub fn is_partial_order(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| a == b || !(self.le(a, b) && self.le(b, a))))
    }

    /// Some `r` lies below both.
    pub fn compatible(&self, a: usize, b: usize) -> bool {
        (0..self.size).any(|r| self.le(r, a) && self.le(r, b))
    }

    /// For all `p ≰ q` there is `r ≤ p` incompatible with `q`.
    pub fn is_separative(&self) -> bool {
        let n = self.size;
        (0..n).all(|p| {
            (0..n).all(|q| self.le(p, q) || (0..n).any(|r| self.le(r, p) && !self.compatible(r, q)))
        })
    }

    /// The separative modification: `p ≤* q` iff every `r ≤ p` has some
    /// `s ≤ r` with `s ≤ q`.
    pub fn sep_mod(&self) -> FinPoset {
        let n = self.size;
        let mut rel = vec![false; n * n];
        for p in 0..n {
            for q in 0..n {
                rel[p * n + q] = (0..n)
                    .filter(|&r| self.le(r, p))
                    .all(|r| (0..n).any(|s| self.le(s, r) && self.le(s, q)));
            }
        }
        FinPoset { size: n, rel }
    }

    /// The separative quotient together with the class index of each
    /// element. Classes are numbered by their least member.
    pub fn sep_quot_with_classes(&self) -> (FinPoset, Vec<usize>) {
        let sm = self.sep_mod();
        let n = self.size;
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for p in 0..n {
            if class_of[p] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(p);
            for (q, class) in class_of.iter_mut().enumerate().skip(p) {
                if sm.le(p, q) && sm.le(q, p) {
                    *class = id;
                }
            }
        }
        let k = reps.len();
        let mut rel = vec![false; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                rel[i * k + j] = sm.le(a, b);
            }
        }
        (FinPoset { size: k, rel }, class_of)
    }

    pub fn sep_quot(&self) -> FinPoset {
        self.sep_quot_with_classes().0
    }

    /// Coordinatewise order on pairs; `(a, b)` has index `a · |Q| + b`.
    pub fn product(&self, other: &FinPoset) -> FinPoset {
        let (m, k) = (self.size, other.size);
        let n = m * k;
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                rel[x * n + y] = self.le(x / k, y / k) && other.le(x % k, y % k);
            }
        }
        FinPoset { size: n, rel }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for a in 0..self.size {
            let row: Vec<&str> = (0..self.size)
                .map(|b| if self.le(a, b) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for FinPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPoset({:?})", self.to_text())
    }
}

/// Text format: the size `m` on the first line, then `m` rows of `0`/`1`
/// entries (row `a`, column `b` is `a ≤ b`), optionally space-separated.
impl FromStr for FinPoset {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or(PosetError::Parse {
            line: 1,
            msg: "missing size line".into(),
        })?;
        let m: usize = header.parse().map_err(|_| PosetError::Parse {
            line: first,
            msg: format!("expected the size, got {header:?}"),
        })?;
        let mut rows = Vec::with_capacity(m);
        for (line, text) in lines.by_ref().take(m) {
            let row = text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(PosetError::Parse {
                        line,
                        msg: format!("unexpected character {c:?}"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != m {
                return Err(PosetError::Parse {
                    line,
                    msg: format!("expected {m} entries, got {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != m {
            return Err(PosetError::Parse {
                line: first + rows.len() + 1,
                msg: format!("expected {m} rows, got {}", rows.len()),
            });
        }
        if let Some((line, _)) = lines.next() {
            return Err(PosetError::Parse {
                line,
                msg: "trailing input".into(),
            });
        }
        FinPoset::from_matrix(rows)
    }
}

/// All pre-orders on `{0, …, n−1}` (not up to isomorphism).
pub fn all_preorders(n: usize) -> Vec<FinPoset> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    (0u64..1 << off.len())
        .filter_map(|mask| {
            let mut rel = vec![false; n * n];
            for i in 0..n {
                rel[i * n + i] = true;
            }
            for (bit, &(a, b)) in off.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    rel[a * n + b] = true;
                }
            }
            let p = FinPoset { size: n, rel };
            p.validate().is_ok().then_some(p)
        })
        .collect()
}

/// An order isomorphism `P → Q` (as the image of each element), if any.
/// Capped at [`ISO_CAP`] elements.
pub fn iso(p: &FinPoset, q: &FinPoset) -> Result<Option<Vec<usize>>, PosetError> {
    iso_with_cap(p, q, ISO_CAP, Exec::default())
}

pub fn iso_with_cap(
    p: &FinPoset,
    q: &FinPoset,
    cap: usize,
    exec: Exec,
) -> Result<Option<Vec<usize>>, PosetError> {
    for s in [p.size, q.size] {
        if s > cap {
            return Err(PosetError::TooLarge { size: s, cap });
        }
    }
    if p.size != q.size {
        return Ok(None);
    }
    let n = p.size;
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (cp, cq) = refine_colors(p, q);
    let mut hist_p = cp.clone();
    let mut hist_q = cq.clone();
    hist_p.sort_unstable();
    hist_q.sort_unstable();
    if hist_p != hist_q {
        return Ok(None);
    }
    // Most constrained elements first.
    let class_size = |c: u32| cp.iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size(cp[v]), v));

    let search = Search {
        p,
        q,
        cp: &cp,
        cq: &cq,
        order: &order,
    };
    let first = order[0];
    let candidates: Vec<usize> = (0..n).filter(|&w| cq[w] == cp[first]).collect();
    Ok(exec.find_map_first(candidates.len() as u64, |i| {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let w = candidates[i as usize];
        map[first] = w;
        used[w] = true;
        search.extend(1, &mut map, &mut used).then_some(map)
    }))
}

struct Search<'a> {
    p: &'a FinPoset,
    q: &'a FinPoset,
    cp: &'a [u32],
    cq: &'a [u32],
    order: &'a [usize],
}

impl Search<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        let Some(&v) = self.order.get(depth) else {
            return true;
        };
        for w in 0..self.q.size {
            if used[w] || self.cq[w] != self.cp[v] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let x = map[u];
                self.p.le(u, v) == self.q.le(x, w) && self.p.le(v, u) == self.q.le(w, x)
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
}

/// Joint color refinement of both pre-orders, starting from down/up degrees
/// and iterating on the multisets of strict-below and strict-above colors.
/// Isomorphisms preserve colors, so only same-colored elements are paired.
fn refine_colors(p: &FinPoset, q: &FinPoset) -> (Vec<u32>, Vec<u32>) {
    let degrees = |g: &FinPoset| -> Vec<(usize, usize)> {
        (0..g.size)
            .map(|v| {
                let down = (0..g.size).filter(|&u| g.le(u, v)).count();
                let up = (0..g.size).filter(|&u| g.le(v, u)).count();
                (down, up)
            })
            .collect()
    };
    let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
    let mut intern = |k: (usize, usize)| {
        let next = ids.len() as u32;
        *ids.entry(k).or_insert(next)
    };
    let mut cp: Vec<u32> = degrees(p).into_iter().map(&mut intern).collect();
    let mut cq: Vec<u32> = degrees(q).into_iter().map(&mut intern).collect();
    loop {
        let mut ids: HashMap<(u32, Vec<u32>, Vec<u32>), u32> = HashMap::new();
        let mut step = |g: &FinPoset, c: &[u32]| -> Vec<u32> {
            (0..g.size)
                .map(|v| {
                    let mut below: Vec<u32> = (0..g.size)
                        .filter(|&u| u != v && g.le(u, v))
                        .map(|u| c[u])
                        .collect();
                    let mut above: Vec<u32> = (0..g.size)
                        .filter(|&u| u != v && g.le(v, u))
                        .map(|u| c[u])
                        .collect();
                    below.sort_unstable();
                    above.sort_unstable();
                    let next = ids.len() as u32;
                    *ids.entry((c[v], below, above)).or_insert(next)
                })
                .collect()
        };
        let np = step(p, &cp);
        let nq = step(q, &cq);
        let classes = |a: &[u32], b: &[u32]| {
            let mut v = [a, b].concat();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        // new colors extend the old ones, so an equal class count means stable
        let stable = classes(&np, &nq) == classes(&cp, &cq);
        cp = np;
        cq = nq;
        if stable {
            return (cp, cq);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two atoms below a common top.
    fn vee() -> FinPoset {
        FinPoset::closure(3, [(0, 2), (1, 2)])
    }

    fn is_iso(p: &FinPoset, q: &FinPoset) -> bool {
        iso_with_cap(p, q, 64, Exec::Sequential).unwrap().is_some()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(
            FinPoset::from_matrix(vec![vec![true, false], vec![false, false]]),
            Err(PosetError::NotReflexive(1))
        );
        let not_transitive = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(
            FinPoset::from_matrix(not_transitive),
            Err(PosetError::NotTransitive(0, 1, 2))
        );
        assert_eq!(
            FinPoset::from_matrix(vec![vec![true, true]]),
            Err(PosetError::NotSquare)
        );
    }

    #[test]
    fn separativity() {
        assert!(FinPoset::antichain(3).is_separative());
        assert!(!FinPoset::chain(2).is_separative());
        assert!(vee().is_separative());
    }

    #[test]
    fn separative_modification() {
        assert_eq!(vee().sep_mod(), vee());
        let sm = FinPoset::chain(2).sep_mod();
        assert!((0..2).all(|a| (0..2).all(|b| sm.le(a, b))));
        let a3 = FinPoset::antichain(3);
        assert_eq!(a3.sep_mod(), a3);
    }

    #[test]
    fn separative_quotient() {
        assert_eq!(FinPoset::antichain(4).sep_quot(), FinPoset::antichain(4));
        assert_eq!(FinPoset::chain(2).sep_quot(), FinPoset::chain(1));
        let prod = FinPoset::chain(2).product(&FinPoset::antichain(2));
        let sq = prod.sep_quot();
        assert!(is_iso(&sq, &FinPoset::antichain(2)));
        let (_, classes) = prod.sep_quot_with_classes();
        assert_eq!(classes, vec![0, 1, 0, 1]);
    }

    #[test]
    fn products() {
        let c2 = FinPoset::chain(2);
        assert_eq!(c2.product(&FinPoset::chain(1)), c2);
        assert_eq!(
            FinPoset::antichain(2).product(&FinPoset::antichain(2)),
            FinPoset::antichain(4)
        );
        // bottom 0 = (0,0), top 3 = (1,1), 1 and 2 incomparable
        let diamond = FinPoset::closure(4, [(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(c2.product(&c2), diamond);
    }

    #[test]
    fn isomorphism() {
        let v = vee();
        let id = iso(&v, &v).unwrap().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(v.le(a, b), v.le(id[a], id[b]));
            }
        }
        assert_eq!(iso(&FinPoset::chain(2), &FinPoset::antichain(2)), Ok(None));
        let sq = FinPoset::chain(2)
            .product(&FinPoset::antichain(2))
            .sep_quot();
        assert!(iso(&sq, &FinPoset::antichain(2)).unwrap().is_some());
        let wedge = FinPoset::closure(3, [(2, 0), (2, 1)]);
        assert_eq!(iso(&v, &wedge), Ok(None));
        assert_eq!(
            iso(&FinPoset::chain(11), &FinPoset::chain(11)),
            Err(PosetError::TooLarge { size: 11, cap: 10 })
        );
    }

    #[test]
    fn isomorphism_of_relabelled_posets() {
        // Relabel the diamond by a permutation; search must recover a map.
        let diamond = FinPoset::closure(4, [(0, 1), (0, 2), (1, 3), (2, 3)]);
        let perm = [2, 0, 3, 1];
        let relabelled = FinPoset::closure(
            4,
            [
                (perm[0], perm[1]),
                (perm[0], perm[2]),
                (perm[1], perm[3]),
                (perm[2], perm[3]),
            ],
        );
        let map = iso(&diamond, &relabelled).unwrap().unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(diamond.le(a, b), relabelled.le(map[a], map[b]));
            }
        }
    }

    #[test]
    fn preorder_enumeration_counts() {
        // Labelled pre-orders on n points: 1, 1, 4, 29, 355.
        let counts: Vec<usize> = (0..5).map(|n| all_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn text_format() {
        let p: FinPoset = "3\n1 0 1\n0 1 1\n0 0 1\n".parse().unwrap();
        assert_eq!(p, vee());
        assert_eq!(p.to_text().parse::<FinPoset>().unwrap(), p);
        assert_eq!(
            "2\n10\n01".parse::<FinPoset>().unwrap(),
            FinPoset::antichain(2)
        );
        assert!(matches!(
            "2\n1 0\n".parse::<FinPoset>(),
            Err(PosetError::Parse { .. })
        ));
        assert!(matches!(
            "2\n1 0\n0 2\n".parse::<FinPoset>(),
            Err(PosetError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            "x".parse::<FinPoset>(),
            Err(PosetError::Parse { line: 1, .. })
        ));
    }
}
