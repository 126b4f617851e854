//! Hereditarily finite sets in canonical form, and the trace encoding.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use sha2::{Digest, Sha256};

struct Node {
    /// Structural digest: equal digests are taken to mean equal sets.
    digest: [u8; 16],
    rank: usize,
    elems: Vec<Hf>,
}

/// A hereditarily finite set. Elements are kept sorted by digest and
/// duplicate-free, so a set is determined by its digest.
///
/// Kuratowski pairs repeat their first component, so nested tuples share
/// subterms heavily. Comparing digests instead of trees keeps equality and
/// ordering constant-time.
#[derive(Clone)]
pub struct Hf(Arc<Node>);

impl PartialEq for Hf {
    fn eq(&self, other: &Hf) -> bool {
        self.0.digest == other.0.digest
    }
}

impl Eq for Hf {}

impl PartialOrd for Hf {
    fn partial_cmp(&self, other: &Hf) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hf {
    fn cmp(&self, other: &Hf) -> Ordering {
        self.0.digest.cmp(&other.0.digest)
    }
}

impl Hash for Hf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.digest.hash(state)
    }
}

impl Hf {
    /// Builds a node from elements already sorted and deduplicated.
    fn node(elems: Vec<Hf>) -> Hf {
        let mut h = Sha256::new();
        h.update((elems.len() as u64).to_le_bytes());
        for e in &elems {
            h.update(e.0.digest);
        }
        let mut digest = [0u8; 16];
        digest.copy_from_slice(&h.finalize()[..16]);
        let rank = elems.iter().map(|y| y.0.rank + 1).max().unwrap_or(0);
        Hf(Arc::new(Node { digest, rank, elems }))
    }

    pub fn empty() -> Hf {
        Hf::node(Vec::new())
    }

    pub fn singleton(a: Hf) -> Hf {
        Hf::node(alloc::vec![a])
    }

    pub fn elements(&self) -> &[Hf] {
        &self.0.elems
    }

    pub fn len(&self) -> usize {
        self.0.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.elems.is_empty()
    }

    pub fn contains(&self, x: &Hf) -> bool {
        self.0.elems.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &Hf) -> bool {
        self.len() <= other.len() && self.0.elems.iter().all(|x| other.contains(x))
    }

    pub fn union(&self, other: &Hf) -> Hf {
        Hf::from_iter(self.0.elems.iter().chain(other.0.elems.iter()).cloned())
    }

    /// `rank(∅) = 0`, `rank(x) = max(rank(y) + 1)` over `y ∈ x`.
    pub fn rank(&self) -> usize {
        self.0.rank
    }

    /// The von Neumann natural `n = {0, ..., n-1}`.
    pub fn nat(n: usize) -> Hf {
        let mut acc: Vec<Hf> = Vec::with_capacity(n);
        for _ in 0..n {
            let next = Hf::from_iter(acc.iter().cloned());
            acc.push(next);
        }
        Hf::from_iter(acc)
    }

    pub fn as_nat(&self) -> Option<usize> {
        // `n + 1 = n ∪ {n}`: walk down the element of highest rank.
        let n = self.len();
        let mut x = self;
        while !x.is_empty() {
            let k = x.len();
            if x.rank() != k {
                return None;
            }
            let y = x.elements().iter().find(|e| e.rank() == k - 1)?;
            if y.len() != k - 1 || !y.elements().iter().all(|e| x.contains(e)) {
                return None;
            }
            x = y;
        }
        Some(n)
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn pair(a: Hf, b: Hf) -> Hf {
        Hf::from_iter([Hf::singleton(a.clone()), Hf::from_iter([a, b])])
    }

    pub fn unpair(&self) -> Option<(Hf, Hf)> {
        match self.elements() {
            [x] if x.len() == 1 => Some((x.0.elems[0].clone(), x.0.elems[0].clone())),
            [x, y] => {
                let (s, d) = if x.len() == 1 { (x, y) } else { (y, x) };
                if s.len() != 1 || d.len() != 2 || !d.contains(&s.0.elems[0]) {
                    return None;
                }
                let a = s.0.elems[0].clone();
                let b = d.0.elems.iter().find(|e| **e != a)?.clone();
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Right-nested tuple: `⟨⟩ = ∅`, `⟨a, rest…⟩ = (a, ⟨rest…⟩)`.
    pub fn tuple(items: impl IntoIterator<Item = Hf>) -> Hf {
        let items: Vec<Hf> = items.into_iter().collect();
        items.into_iter().rev().fold(Hf::empty(), |acc, a| Hf::pair(a, acc))
    }

    pub fn untuple(&self) -> Option<Vec<Hf>> {
        let mut out = Vec::new();
        let mut t = self.clone();
        while !t.is_empty() {
            let (a, rest) = t.unpair()?;
            out.push(a);
            t = rest;
        }
        Some(out)
    }

    /// The set whose elements are coded by the binary digits of `n`.
    pub fn from_ackermann(n: u64) -> Hf {
        Hf::from_iter((0..64).filter(|i| n >> i & 1 == 1).map(Hf::from_ackermann))
    }

    /// The first `limit` sets of rank at most `r`, in Ackermann order. These
    /// are the subsets of `V_r`, so the codes are an initial segment.
    pub fn rank_at_most(r: usize, limit: usize) -> Vec<Hf> {
        // Only the first 63 sets of the level below are needed for any
        // limit that fits a u64 mask.
        let base = if r == 0 { Vec::new() } else { Hf::rank_at_most(r - 1, 63) };
        let total = 1u64.checked_shl(base.len() as u32).unwrap_or(u64::MAX);
        (0..total.min(limit as u64))
            .map(|mask| {
                Hf::from_iter(base.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, h)| h.clone()))
            })
            .collect()
    }

    pub fn to_ackermann(&self) -> Option<u64> {
        // Codes below 2^64 have rank at most 5.
        if self.rank() > 5 {
            return None;
        }
        let mut n: u64 = 0;
        for e in self.elements() {
            let i = e.to_ackermann()?;
            if i >= 64 {
                return None;
            }
            n |= 1 << i;
        }
        Some(n)
    }
}

/// `app(u, x) = {z | (x, z) ∈ u}`.
pub fn aczel_app(u: &Hf, x: &Hf) -> Hf {
    Hf::from_iter(u.elements().iter().filter_map(|p| match p.unpair() {
        Some((a, z)) if &a == x => Some(z),
        _ => None,
    }))
}

/// `lam(f) = ⋃ {x} × f(x)` over a finite graph.
pub fn aczel_lam<'a>(graph: impl IntoIterator<Item = (&'a Hf, &'a Hf)>) -> Hf {
    Hf::from_iter(graph.into_iter().flat_map(|(x, y)| y.elements().iter().map(move |z| Hf::pair(x.clone(), z.clone()))))
}

pub fn encode_tuple(items: &[Hf]) -> Hf {
    Hf::tuple(items.iter().cloned())
}

/// Iterated application `app(app(u, x1), x2)…`.
pub fn aczel_apps(u: &Hf, xs: &[Hf]) -> Hf {
    xs.iter().fold(u.clone(), |acc, x| aczel_app(&acc, x))
}

impl FromIterator<Hf> for Hf {
    fn from_iter<I: IntoIterator<Item = Hf>>(items: I) -> Hf {
        let mut v: Vec<Hf> = items.into_iter().collect();
        v.sort();
        v.dedup();
        Hf::node(v)
    }
}

impl fmt::Display for Hf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_nat() {
            return write!(f, "{}", n);
        }
        if let Some(items) = self.untuple() {
            f.write_str("⟨")?;
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x)?;
            }
            return f.write_str("⟩");
        }
        f.write_str("{")?;
        for (i, x) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Hf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
