//! A finite group engine over explicit permutations.
//!
//! Groups are built as the closure of permutation generators, with
//! elements canonically sorted (lexicographically by image vectors) so
//! element ids are reproducible across runs. Multiplication is a
//! precomputed table; at the scale this toolkit targets (orders up to a
//! few hundred) tables beat anything cleverer.

mod catalog;

pub use catalog::{catalog_group, catalog_group_with_cap, full_catalog};

use crate::exact::{gcd, lcm};
use crate::{Error, Result};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Default cap on group order; construction beyond it is a resource error.
pub const DEFAULT_ORDER_CAP: usize = 360;

/// Permutations act on at most this many points.
pub const DEGREE_CAP: usize = 128;

/// Element id within a [`Group`]'s canonical element table.
pub type ElementId = u16;

/// A permutation of `{0..degree-1}`, stored as the image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 || n > DEGREE_CAP {
            return Err(Error::Domain(format!(
                "degree must be between 1 and {DEGREE_CAP}, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::Domain(format!(
                    "not a permutation of 0..{n}: {images:?}"
                )));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `self` followed by `other`: `x ↦ other[self[x]]`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm{:?}", self.images)
    }
}

static NEXT_GROUP_TOKEN: AtomicU64 = AtomicU64::new(1);

/// Identity token used to detect subgroups passed to the wrong parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupToken(u64);

/// A finite group: canonical element table plus multiplication and
/// inverse tables.
#[derive(Clone)]
pub struct Group {
    token: GroupToken,
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    mult: Vec<ElementId>,
    inv: Vec<ElementId>,
    identity: ElementId,
}

impl Group {
    /// Closure of the generators under composition, canonically sorted.
    pub fn from_generators(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<Group> {
        if degree == 0 || degree > DEGREE_CAP {
            return Err(Error::Domain(format!(
                "degree must be between 1 and {DEGREE_CAP}, got {degree}"
            )));
        }
        let cap = cap.min(u16::MAX as usize);
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Domain(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        // breadth-first closure from the identity
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: std::collections::HashSet<Permutation> =
            elements.iter().cloned().collect();
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            frontier += 1;
            for g in &gens {
                let next = cur.then(g);
                if seen.insert(next.clone()) {
                    if elements.len() >= cap {
                        return Err(Error::Resource(format!(
                            "closure exceeds the group order cap {cap}"
                        )));
                    }
                    elements.push(next);
                }
            }
        }
        elements.sort_unstable();

        let n = elements.len();
        let index_of = |p: &Permutation| -> ElementId {
            elements.binary_search(p).expect("closure is complete") as ElementId
        };
        let mut mult = vec![0 as ElementId; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index_of(&elements[a].then(&elements[b]));
            }
        }
        let identity = index_of(&Permutation::identity(degree));
        let mut inv = vec![0 as ElementId; n];
        for a in 0..n {
            inv[a] = index_of(&elements[a].inverse());
        }

        let g = Group {
            token: GroupToken(NEXT_GROUP_TOKEN.fetch_add(1, Ordering::Relaxed)),
            name: name.into(),
            degree,
            elements,
            mult,
            inv,
            identity,
        };
        g.check_axioms()?;
        Ok(g)
    }

    /// Identity and inverse laws over the whole table, associativity in
    /// full for small groups and on a deterministic sample otherwise.
    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        let e = self.identity;
        for a in 0..n as ElementId {
            if self.mul(e, a) != a || self.mul(a, e) != a {
                return Err(Error::Domain("identity law violated".into()));
            }
            if self.mul(a, self.inv(a)) != e || self.mul(self.inv(a), a) != e {
                return Err(Error::Domain("inverse law violated".into()));
            }
        }
        let check = |a: ElementId, b: ElementId, c: ElementId| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 64 {
            for a in 0..n as ElementId {
                for b in 0..n as ElementId {
                    for c in 0..n as ElementId {
                        if !check(a, b, c) {
                            return Err(Error::Domain("associativity violated".into()));
                        }
                    }
                }
            }
        } else {
            let mut x: u64 = 0x9e3779b97f4a7c15;
            for _ in 0..100_000 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = ((x >> 16) % n as u64) as ElementId;
                let b = ((x >> 32) % n as u64) as ElementId;
                let c = ((x >> 48) % n as u64) as ElementId;
                if !check(a, b, c) {
                    return Err(Error::Domain("associativity violated".into()));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn token(&self) -> GroupToken {
        self.token
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn element(&self, id: ElementId) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mult[a as usize * self.order() + b as usize]
    }

    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        0..self.order() as ElementId
    }

    /// Direct product acting on the disjoint union of the point sets.
    pub fn direct_product(name: impl Into<String>, a: &Group, b: &Group, cap: usize) -> Result<Group> {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for p in a.generating_permutations() {
            let mut images: Vec<u8> = p.images().to_vec();
            images.extend(a.degree as u8..degree as u8);
            gens.push(Permutation::new(images)?);
        }
        for p in b.generating_permutations() {
            let mut images: Vec<u8> = (0..a.degree as u8).collect();
            images.extend(p.images().iter().map(|&x| x + a.degree as u8));
            gens.push(Permutation::new(images)?);
        }
        Group::from_generators(name, degree, gens, cap)
    }

    /// All elements regenerate the group; fine as a generating set for
    /// product construction.
    fn generating_permutations(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    /// Closes a subset of element ids under multiplication (in a finite
    /// group this already gives inverses).
    pub fn close_subset(&self, seed: &[ElementId]) -> Vec<ElementId> {
        let mut in_set = vec![false; self.order()];
        let mut members = vec![self.identity];
        in_set[self.identity as usize] = true;
        let mut stack: Vec<ElementId> = Vec::new();
        for &s in seed {
            if !in_set[s as usize] {
                in_set[s as usize] = true;
                members.push(s);
                stack.push(s);
            }
        }
        // close pairwise products until fixpoint
        let mut frontier = 0usize;
        while frontier < members.len() {
            let x = members[frontier];
            frontier += 1;
            for i in 0..members.len() {
                let y = members[i];
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[z as usize] {
                        in_set[z as usize] = true;
                        members.push(z);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Builds a subgroup from explicitly listed members, verifying the
    /// subgroup laws.
    pub fn subgroup(&self, mut members: Vec<ElementId>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.binary_search(&self.identity).is_err() {
            return Err(Error::Domain("subgroup must contain the identity".into()));
        }
        for &a in &members {
            if members.binary_search(&self.inv(a)).is_err() {
                return Err(Error::Domain("subgroup not closed under inverse".into()));
            }
            for &b in &members {
                if members.binary_search(&self.mul(a, b)).is_err() {
                    return Err(Error::Domain("subgroup not closed under product".into()));
                }
            }
        }
        if self.order() % members.len() != 0 {
            return Err(Error::Domain("subgroup order does not divide |G|".into()));
        }
        Ok(Subgroup {
            parent: self.token,
            index: (self.order() / members.len()) as u64,
            members,
        })
    }

    /// Subgroup generated by the given elements.
    pub fn generated_subgroup(&self, seed: &[ElementId]) -> Subgroup {
        let members = self.close_subset(seed);
        Subgroup {
            parent: self.token,
            index: (self.order() / members.len()) as u64,
            members,
        }
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order())
    }
}

/// A subgroup, stored as a sorted set of element ids of its parent.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupToken,
    members: Vec<ElementId>,
    index: u64,
}

impl Subgroup {
    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn parent_token(&self) -> GroupToken {
        self.parent
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(index {}, members {:?})", self.index, self.members)
    }
}

pub(crate) fn check_parent(g: &Group, s: &Subgroup) -> Result<()> {
    if s.parent != g.token {
        return Err(Error::Usage(
            "subgroup does not belong to this group".into(),
        ));
    }
    Ok(())
}

/// Complete list of subgroups, sorted by (order, member sequence).
///
/// Cyclic extension: repeatedly extend each known subgroup by one extra
/// element and close; every subgroup has a generating chain, so the
/// fixpoint is the full lattice.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen: std::collections::HashSet<Vec<ElementId>> = std::collections::HashSet::new();
    let trivial = vec![g.identity()];
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    let mut frontier = 0usize;
    while frontier < queue.len() {
        let base = queue[frontier].clone();
        frontier += 1;
        if base.len() == n {
            continue;
        }
        let mut in_base = vec![false; n];
        for &m in &base {
            in_base[m as usize] = true;
        }
        for x in 0..n as ElementId {
            if in_base[x as usize] {
                continue;
            }
            let mut seed = base.clone();
            seed.push(x);
            let closed = g.close_subset(&seed);
            if !seen.contains(&closed) {
                seen.insert(closed.clone());
                queue.push(closed);
            }
        }
    }
    let mut subs: Vec<Subgroup> = queue
        .into_iter()
        .map(|members| Subgroup {
            parent: g.token(),
            index: (n / members.len()) as u64,
            members,
        })
        .collect();
    subs.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    for s in &subs {
        debug_assert_eq!(g.order() % s.order(), 0); // Lagrange
    }
    subs
}

/// A coset given by its least representative and full member set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub rep: ElementId,
    pub members: Vec<ElementId>,
}

/// The left cosets `xU`, ordered by least representative.
pub fn left_cosets(g: &Group, u: &Subgroup) -> Result<Vec<Coset>> {
    check_parent(g, u)?;
    let n = g.order();
    let mut seen = vec![false; n];
    let mut cosets = Vec::with_capacity(u.index() as usize);
    for x in 0..n as ElementId {
        if seen[x as usize] {
            continue;
        }
        let mut members: Vec<ElementId> = u.members().iter().map(|&m| g.mul(x, m)).collect();
        members.sort_unstable();
        for &m in &members {
            seen[m as usize] = true;
        }
        cosets.push(Coset { rep: x, members });
    }
    debug_assert_eq!(cosets.len() as u64, u.index());
    Ok(cosets)
}

/// Fixed-size bitset over the element ids of one group.
#[derive(Clone, PartialEq, Eq)]
pub struct ElementSet {
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(n: usize) -> ElementSet {
        ElementSet {
            words: vec![0; n.div_ceil(64)],
            len: n,
        }
    }

    pub fn insert(&mut self, x: ElementId) {
        self.words[x as usize / 64] |= 1 << (x as usize % 64);
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.words[x as usize / 64] >> (x as usize % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_count(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint_from(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.len as u32).filter_map(move |i| {
            if self.words[i as usize / 64] >> (i % 64) & 1 == 1 {
                Some(i as ElementId)
            } else {
                None
            }
        })
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }
}

/// The product set `UV = {uv : u ∈ U, v ∈ V}` as a bitset.
pub fn product_set(g: &Group, u: &Subgroup, v: &Subgroup) -> ElementSet {
    let mut set = ElementSet::empty(g.order());
    for &a in u.members() {
        for &b in v.members() {
            set.insert(g.mul(a, b));
        }
    }
    set
}

/// Size and index data for a pair of subgroups.
///
/// `alpha` is the integer with `[G:U∩V] = lcm([G:U],[G:V]) · alpha`; the
/// product size always equals `|G|·[G:U∩V] / ([G:U]·[G:V])`, and both
/// routes are computed and compared here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairStats {
    pub product_size: u64,
    pub intersection_index: u64,
    pub alpha: u64,
}

pub fn product_stats(g: &Group, u: &Subgroup, v: &Subgroup) -> Result<PairStats> {
    check_parent(g, u)?;
    check_parent(g, v)?;
    let product_size = product_set(g, u, v).count() as u64;
    let inter = u
        .members()
        .iter()
        .filter(|&&m| v.contains(m))
        .count() as u64;
    let order = g.order() as u64;
    let intersection_index = order / inter;
    let l = lcm(u.index(), v.index());
    assert_eq!(
        intersection_index % l,
        0,
        "lcm of indices must divide the intersection index"
    );
    assert_eq!(
        product_size,
        order * intersection_index / (u.index() * v.index()),
        "product size disagrees with the index formula"
    );
    Ok(PairStats {
        product_size,
        intersection_index,
        alpha: intersection_index / l,
    })
}

/// The partition of `G` into double cosets `UxV`, ordered by least rep.
///
/// Every piece has size divisible by `|G| / gcd([G:U],[G:V])`, which is
/// asserted on return.
pub fn double_cosets(g: &Group, u: &Subgroup, v: &Subgroup) -> Result<Vec<Coset>> {
    check_parent(g, u)?;
    check_parent(g, v)?;
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n as ElementId {
        if seen[x as usize] {
            continue;
        }
        let mut members = Vec::new();
        for &a in u.members() {
            let ax = g.mul(a, x);
            for &b in v.members() {
                let y = g.mul(ax, b);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        let unit = n as u64 / gcd(u.index(), v.index());
        assert_eq!(
            members.len() as u64 % unit,
            0,
            "double coset size must be divisible by |G|/gcd of indices"
        );
        out.push(Coset { rep: x, members });
    }
    Ok(out)
}

/// Parses the plain-text group format: a `degree` line, a `name` line,
/// then one generator per line as space-separated images of `0..degree-1`.
/// Lines starting with `#` and blank lines are skipped.
pub fn parse_group(text: &str, cap: usize) -> Result<Group> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let degree_line = lines
        .next()
        .ok_or_else(|| Error::Domain("empty group file".into()))?;
    let degree: usize = degree_line
        .strip_prefix("degree ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Domain(format!("expected `degree <d>`, got `{degree_line}`")))?;
    let name_line = lines
        .next()
        .ok_or_else(|| Error::Domain("group file missing `name` line".into()))?;
    let name = name_line
        .strip_prefix("name ")
        .map(str::trim)
        .ok_or_else(|| Error::Domain(format!("expected `name <string>`, got `{name_line}`")))?;
    let mut gens = Vec::new();
    for line in lines {
        let images: Vec<u8> = line
            .split_whitespace()
            .map(|t| t.parse::<u8>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Domain(format!("bad generator line `{line}`")))?;
        if images.len() != degree {
            return Err(Error::Domain(format!(
                "generator has {} images, expected {degree}",
                images.len()
            )));
        }
        gens.push(Permutation::new(images)?);
    }
    Group::from_generators(name, degree, gens, cap)
}
