//! Enumeration of admissible index tuples for a group order `N`.
//!
//! A multiplicity-free coset partition of a group of order `N` forces its
//! subgroup indices `a_1 < ... < a_n` to be divisors of `N` greater than 2
//! with `Σ 1/a_i = 1` and pairwise non-coprime. This module enumerates
//! exactly those tuples, classifies them by the divisibility of their gcd,
//! and applies the four pattern filters that rule out tuples containing a
//! sub-tuple known not to be realizable by disjoint subgroup cosets.

use crate::exact::{divisors, factorize, gcd, sum_reciprocals, Rational};
use crate::{Error, Result};
use rayon::prelude::*;
use std::fmt;

/// Indices smaller than 3 cannot occur in a minimal multiplicity-free
/// partition, so enumeration starts at 3 by default.
pub const DEFAULT_MIN_INDEX: u64 = 3;

/// Hard cap on tuple length; exceeding it is a resource error rather than
/// silent truncation. Distinct divisors ≥ 3 of orders below 1440 stay far
/// below this.
const TUPLE_LEN_CAP: usize = 64;

/// A strictly increasing tuple of candidate subgroup indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexTuple {
    entries: Vec<u64>,
}

impl IndexTuple {
    pub fn new(entries: Vec<u64>) -> Result<IndexTuple> {
        if entries.is_empty() {
            return Err(Error::Domain("empty index tuple".into()));
        }
        if entries[0] < 2 {
            return Err(Error::Domain("index tuple entries must be >= 2".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "index tuple entries must be strictly increasing".into(),
            ));
        }
        Ok(IndexTuple { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Divisibility of `gcd(a_1,...,a_n)` by 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcdClass {
    Two,
    Three,
    Both,
    None,
}

impl GcdClass {
    pub fn has_two(self) -> bool {
        matches!(self, GcdClass::Two | GcdClass::Both)
    }

    pub fn has_three(self) -> bool {
        matches!(self, GcdClass::Three | GcdClass::Both)
    }
}

impl fmt::Display for GcdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GcdClass::Two => "2",
            GcdClass::Three => "3",
            GcdClass::Both => "both",
            GcdClass::None => "none",
        };
        f.write_str(s)
    }
}

/// The four tuple shapes that cannot be realized by pairwise disjoint
/// subgroup cosets in any group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternId {
    /// `(2r1, 2r2, 2r3)` with pairwise coprime `r`.
    P2,
    /// `(3r1, 3r2, 3r3, 3r4)` with pairwise coprime `r`.
    P3,
    /// `(2r1, 4r2, 4r3, 4r4)` with pairwise coprime `r`, `r1` odd.
    P244,
    /// `(3, 3r2, 6r3, 6r4, 6r5)` with pairwise coprime `r`, `r2` odd.
    P5,
}

impl PatternId {
    pub const ALL: [PatternId; 4] = [PatternId::P2, PatternId::P3, PatternId::P244, PatternId::P5];

    /// Multiplier of each role slot in the pattern.
    fn coefficients(self) -> &'static [u64] {
        match self {
            PatternId::P2 => &[2, 2, 2],
            PatternId::P3 => &[3, 3, 3, 3],
            PatternId::P244 => &[2, 4, 4, 4],
            PatternId::P5 => &[3, 3, 6, 6, 6],
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternId::P2 => "P2",
            PatternId::P3 => "P3",
            PatternId::P244 => "P244",
            PatternId::P5 => "P5",
        };
        f.write_str(s)
    }
}

/// A verified occurrence of a pattern inside an index tuple: for each role
/// slot, the tuple position it matched and the extracted `r` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternMatch {
    pub pattern: PatternId,
    roles: Vec<(usize, u64)>,
}

impl PatternMatch {
    /// Matched tuple positions in role order.
    pub fn positions(&self) -> Vec<usize> {
        self.roles.iter().map(|&(p, _)| p).collect()
    }

    /// Extracted `r` values in role order.
    pub fn r_values(&self) -> Vec<u64> {
        self.roles.iter().map(|&(_, r)| r).collect()
    }

    /// Re-checks the certificate against the tuple: substituting the `r`
    /// values reproduces the matched entries and all side conditions hold.
    pub fn verify(&self, t: &IndexTuple) -> bool {
        let coeffs = self.pattern.coefficients();
        if self.roles.len() != coeffs.len() {
            return false;
        }
        for (k, &(pos, r)) in self.roles.iter().enumerate() {
            match t.entries().get(pos) {
                Some(&e) if coeffs[k] * r == e => {}
                _ => return false,
            }
        }
        let rs = self.r_values();
        let coprime = |xs: &[u64]| {
            (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| gcd(xs[i], xs[j]) == 1))
        };
        match self.pattern {
            PatternId::P2 | PatternId::P3 => coprime(&rs),
            PatternId::P244 => rs[0] % 2 == 1 && coprime(&rs),
            PatternId::P5 => rs[0] == 1 && rs[1] % 2 == 1 && coprime(&rs),
        }
    }
}

/// Everything computed about one group order.
#[derive(Clone, Debug)]
pub struct OrderReport {
    pub order: u64,
    /// Candidates surviving the "gcd divisible by 2 or 3" filter.
    pub stage1_candidates: Vec<IndexTuple>,
    /// Aggregate gcd class over the stage-1 candidates.
    pub gcd_class: GcdClass,
    /// For each stage-1 candidate, the first pattern eliminating it.
    pub eliminations: Vec<Option<PatternMatch>>,
    /// Squarefree orders are resolved by structural group theory rather
    /// than these filters; recorded as an annotation only.
    pub squarefree_pyramidal: bool,
    /// True iff some stage-1 candidate has no eliminating pattern.
    pub survives: bool,
}

/// All strictly increasing tuples of divisors of `n` with entries
/// `>= min_index`, reciprocal sum exactly 1, and pairwise gcd > 1, in
/// lexicographic order.
pub fn enumerate_candidates(n: u64, min_index: u64) -> Result<Vec<IndexTuple>> {
    if !(2..=1_000_000).contains(&n) {
        return Err(Error::Domain(format!("order {n} out of range 2..=10^6")));
    }
    let divs: Vec<u64> = divisors(n)?
        .into_iter()
        .filter(|&d| d >= min_index)
        .collect();
    // 1/d = (n/d)/n, so a tuple qualifies iff its weights sum to exactly n.
    let weights: Vec<u64> = divs.iter().map(|&d| n / d).collect();
    let mut suffix = vec![0u64; divs.len() + 1];
    for i in (0..divs.len()).rev() {
        suffix[i] = suffix[i + 1] + weights[i];
    }

    struct Dfs<'a> {
        n: u64,
        divs: &'a [u64],
        weights: &'a [u64],
        suffix: &'a [u64],
        chosen: Vec<usize>,
        out: Vec<IndexTuple>,
    }

    impl Dfs<'_> {
        fn run(&mut self, start: usize, sum: u64) -> Result<()> {
            for i in start..self.divs.len() {
                let s = sum + self.weights[i];
                if s + self.suffix[i + 1] < self.n {
                    // even taking every remaining divisor cannot reach 1,
                    // and later starts only have less mass available
                    break;
                }
                if s > self.n {
                    continue;
                }
                if self
                    .chosen
                    .iter()
                    .any(|&j| gcd(self.divs[j], self.divs[i]) == 1)
                {
                    continue;
                }
                if self.chosen.len() >= TUPLE_LEN_CAP {
                    return Err(Error::Resource(format!(
                        "tuple length cap {TUPLE_LEN_CAP} exceeded"
                    )));
                }
                self.chosen.push(i);
                if s == self.n {
                    let entries = self.chosen.iter().map(|&j| self.divs[j]).collect();
                    self.out.push(IndexTuple { entries });
                } else {
                    self.run(i + 1, s)?;
                }
                self.chosen.pop();
            }
            Ok(())
        }
    }

    let mut dfs = Dfs {
        n,
        divs: &divs,
        weights: &weights,
        suffix: &suffix,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    dfs.run(0, 0)?;
    Ok(dfs.out)
}

/// Classifies the divisibility of `gcd(a_1,...,a_n)` by 2 and 3.
pub fn gcd_class(t: &IndexTuple) -> GcdClass {
    let g = t.entries().iter().copied().fold(0u64, gcd);
    match (g % 2 == 0, g % 3 == 0) {
        (true, true) => GcdClass::Both,
        (true, false) => GcdClass::Two,
        (false, true) => GcdClass::Three,
        (false, false) => GcdClass::None,
    }
}

/// Searches sub-tuples of `t` for the given pattern; when several match,
/// returns the one with lexicographically least positions.
pub fn match_pattern(t: &IndexTuple, pattern: PatternId) -> Option<PatternMatch> {
    let k = pattern.coefficients().len();
    let n = t.len();
    if n < k {
        return None;
    }
    let mut found = None;
    for_each_combination(n, k, &mut |positions| {
        if let Some(roles) = try_assign(t, pattern, positions) {
            found = Some(PatternMatch { pattern, roles });
            return false; // combinations come in lex order; first hit wins
        }
        true
    });
    if let Some(m) = &found {
        debug_assert!(m.verify(t));
    }
    found
}

/// Lexicographic k-combinations of `0..n`; the visitor returns `false` to
/// stop early.
fn for_each_combination(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pairwise_coprime(xs: &[u64]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| gcd(xs[i], xs[j]) == 1))
}

/// Tries to fill the pattern's role slots from the entries at `positions`.
/// Role assignment within a combination is forced by residue classes, so
/// there is at most one candidate assignment to check.
fn try_assign(t: &IndexTuple, pattern: PatternId, positions: &[usize]) -> Option<Vec<(usize, u64)>> {
    let e: Vec<u64> = positions.iter().map(|&p| t.entries()[p]).collect();
    match pattern {
        PatternId::P2 => {
            if e.iter().any(|&x| x % 2 != 0) {
                return None;
            }
            let rs: Vec<u64> = e.iter().map(|&x| x / 2).collect();
            if !pairwise_coprime(&rs) {
                return None;
            }
            Some(positions.iter().copied().zip(rs).collect())
        }
        PatternId::P3 => {
            if e.iter().any(|&x| x % 3 != 0) {
                return None;
            }
            let rs: Vec<u64> = e.iter().map(|&x| x / 3).collect();
            if !pairwise_coprime(&rs) {
                return None;
            }
            Some(positions.iter().copied().zip(rs).collect())
        }
        PatternId::P244 => {
            // exactly one entry ≡ 2 (mod 4) takes the 2r1 slot (r1 odd),
            // the other three must be divisible by 4
            let twos: Vec<usize> = (0..4).filter(|&i| e[i] % 4 == 2).collect();
            if twos.len() != 1 || (0..4).any(|i| i != twos[0] && e[i] % 4 != 0) {
                return None;
            }
            let lead = twos[0];
            let mut roles = vec![(positions[lead], e[lead] / 2)];
            roles.extend(
                (0..4)
                    .filter(|&i| i != lead)
                    .map(|i| (positions[i], e[i] / 4)),
            );
            let rs: Vec<u64> = roles.iter().map(|&(_, r)| r).collect();
            if !pairwise_coprime(&rs) {
                return None;
            }
            Some(roles)
        }
        PatternId::P5 => {
            // one literal 3, one odd multiple of 3 (the 3r2 slot), and
            // three multiples of 6
            let lit: Vec<usize> = (0..5).filter(|&i| e[i] == 3).collect();
            let odd3: Vec<usize> = (0..5)
                .filter(|&i| e[i] != 3 && e[i] % 3 == 0 && (e[i] / 3) % 2 == 1)
                .collect();
            let six: Vec<usize> = (0..5).filter(|&i| e[i] % 6 == 0).collect();
            if lit.len() != 1 || odd3.len() != 1 || six.len() != 3 {
                return None;
            }
            let mut roles = vec![(positions[lit[0]], 1), (positions[odd3[0]], e[odd3[0]] / 3)];
            roles.extend(six.iter().map(|&i| (positions[i], e[i] / 6)));
            let rs: Vec<u64> = roles.iter().map(|&(_, r)| r).collect();
            if !pairwise_coprime(&rs) {
                return None;
            }
            Some(roles)
        }
    }
}

/// First pattern eliminating `t`, trying P2, P3, P244, P5 in that order.
pub fn first_eliminating_pattern(t: &IndexTuple) -> Option<PatternMatch> {
    PatternId::ALL.iter().find_map(|&p| match_pattern(t, p))
}

/// True iff `d(N) < 1`, i.e. every candidate tuple for this order must
/// contain a prime-power index for arithmetic reasons alone.
pub fn prime_power_forced(n: u64) -> Result<bool> {
    if !(2..=1_000_000).contains(&n) {
        return Err(Error::Domain(format!("order {n} out of range 2..=10^6")));
    }
    Ok(crate::exact::d_composite(n)? < Rational::ONE)
}

/// Builds the per-order report for every `3 <= N < max_order`.
///
/// Orders are processed independently and merged in ascending order, so
/// the result is identical at any parallelism degree.
pub fn theorem_a_report(max_order: u64) -> Result<Vec<OrderReport>> {
    if !(3..=10_000).contains(&max_order) {
        return Err(Error::Domain(format!(
            "max order {max_order} out of range 3..=10^4"
        )));
    }
    (3..max_order)
        .into_par_iter()
        .map(order_report)
        .collect::<Result<Vec<_>>>()
}

/// The report for a single order.
pub fn order_report(n: u64) -> Result<OrderReport> {
    let candidates = enumerate_candidates(n, DEFAULT_MIN_INDEX)?;
    let stage1_candidates: Vec<IndexTuple> = candidates
        .into_iter()
        .filter(|t| gcd_class(t) != GcdClass::None)
        .collect();
    let (mut has2, mut has3) = (false, false);
    for t in &stage1_candidates {
        let c = gcd_class(t);
        has2 |= c.has_two();
        has3 |= c.has_three();
        debug_assert!(check_candidate(n, t));
    }
    let gcd_class = match (has2, has3) {
        (true, true) => GcdClass::Both,
        (true, false) => GcdClass::Two,
        (false, true) => GcdClass::Three,
        (false, false) => GcdClass::None,
    };
    let eliminations: Vec<Option<PatternMatch>> = stage1_candidates
        .iter()
        .map(first_eliminating_pattern)
        .collect();
    let survives = eliminations.iter().any(|e| e.is_none());
    Ok(OrderReport {
        order: n,
        stage1_candidates,
        gcd_class,
        eliminations,
        squarefree_pyramidal: factorize(n)?.is_squarefree(),
        survives,
    })
}

/// Every emitted tuple must satisfy the defining constraints exactly.
fn check_candidate(n: u64, t: &IndexTuple) -> bool {
    let e = t.entries();
    e.iter().all(|&a| a >= 3 && n % a == 0)
        && e.windows(2).all(|w| w[0] < w[1])
        && (0..e.len()).all(|i| (i + 1..e.len()).all(|j| gcd(e[i], e[j]) > 1))
        && sum_reciprocals(e).unwrap() == Rational::ONE
}
