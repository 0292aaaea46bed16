//! Z-harmonicity: does a tuple of moduli `(a_1,...,a_n)` admit residues
//! `m_i` making the progressions `m_i + a_i Z` pairwise disjoint?
//!
//! Two progressions `m + aZ` and `k + bZ` are disjoint exactly when
//! `m ≢ k (mod gcd(a, b))`; the search below backtracks over residues
//! under that pairwise criterion. Tuples containing one of the four
//! pigeonhole shapes (a coprime pair, or the P2/P3/P244 shapes) are
//! refuted without search.

use crate::exact::{gcd, lcm};
use crate::{Error, Result};
use std::fmt;

/// Default cap on tuple length for the exhaustive search.
pub const DEFAULT_LEN_CAP: usize = 8;

/// Backtracking node budget; exceeding it is a resource error.
const NODE_BUDGET: u64 = 100_000_000;

/// Residues certifying pairwise disjointness of the progressions
/// `m_i + a_i Z`. Self-checking via [`ResidueWitness::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueWitness {
    pub moduli: Vec<u64>,
    pub residues: Vec<u64>,
}

impl ResidueWitness {
    /// True iff the witness is internally valid: same lengths, residues in
    /// range, and `m_i ≢ m_j (mod gcd(a_i, a_j))` for every pair.
    pub fn verify(&self) -> bool {
        let (a, m) = (&self.moduli, &self.residues);
        a.len() == m.len()
            && m.iter().zip(a).all(|(&mi, &ai)| mi < ai)
            && (0..a.len()).all(|i| {
                (i + 1..a.len()).all(|j| progressions_disjoint(a[i], m[i] as i64, a[j], m[j] as i64))
            })
    }
}

impl fmt::Display for ResidueWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Why a tuple is not Z-harmonic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonHarmonicReason {
    /// Some pair of entries is coprime; progressions with coprime moduli
    /// always intersect.
    CoprimePair,
    /// Three entries `(2r1, 2r2, 2r3)`, `r` pairwise coprime: three
    /// residues cannot be pairwise distinct mod 2.
    P2Pigeonhole,
    /// Four entries `(3r1,...,3r4)`, `r` pairwise coprime: four residues
    /// cannot be pairwise distinct mod 3.
    P3Pigeonhole,
    /// Entries `(2r1, 4r2, 4r3, 4r4)`, `r` pairwise coprime, `r1` odd:
    /// three residues of equal parity cannot be pairwise distinct mod 4.
    P244Pigeonhole,
    /// The exhaustive residue search found no assignment.
    Exhausted,
}

impl fmt::Display for NonHarmonicReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NonHarmonicReason::CoprimePair => "COPRIME_PAIR",
            NonHarmonicReason::P2Pigeonhole => "P2_PIGEONHOLE",
            NonHarmonicReason::P3Pigeonhole => "P3_PIGEONHOLE",
            NonHarmonicReason::P244Pigeonhole => "P244_PIGEONHOLE",
            NonHarmonicReason::Exhausted => "EXHAUSTED",
        };
        f.write_str(s)
    }
}

/// Outcome of the Z-harmonicity decision: a verified witness, or a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZVerdict {
    Harmonic(ResidueWitness),
    NotHarmonic(NonHarmonicReason),
}

impl ZVerdict {
    pub fn is_harmonic(&self) -> bool {
        matches!(self, ZVerdict::Harmonic(_))
    }

    pub fn witness(&self) -> Option<&ResidueWitness> {
        match self {
            ZVerdict::Harmonic(w) => Some(w),
            ZVerdict::NotHarmonic(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NonHarmonicReason> {
        match self {
            ZVerdict::Harmonic(_) => None,
            ZVerdict::NotHarmonic(r) => Some(*r),
        }
    }
}

/// True iff `(m + aZ) ∩ (k + bZ) = ∅`, decided by the gcd congruence test.
pub fn progressions_disjoint(a: u64, m: i64, b: u64, k: i64) -> bool {
    debug_assert!(a >= 2 && b >= 2, "moduli below 2 have no disjoint partner");
    let g = gcd(a, b) as i64;
    (m - k).rem_euclid(g) != 0
}

/// Decides Z-harmonicity with the default length cap.
pub fn is_z_harmonic(t: &[u64]) -> Result<ZVerdict> {
    is_z_harmonic_with_cap(t, DEFAULT_LEN_CAP)
}

/// Decides Z-harmonicity; sound and complete for tuples up to `len_cap`.
///
/// Positive answers carry the lexicographically least residue vector
/// (with `m_1 = 0`); negative answers carry the first matching pigeonhole
/// shape, or `EXHAUSTED` if refutation required the full search.
pub fn is_z_harmonic_with_cap(t: &[u64], len_cap: usize) -> Result<ZVerdict> {
    if t.is_empty() {
        return Err(Error::Domain("empty tuple".into()));
    }
    if t.len() > len_cap {
        return Err(Error::Resource(format!(
            "tuple length {} over the cap {len_cap}",
            t.len()
        )));
    }
    if let Some(&bad) = t.iter().find(|&&a| a < 2) {
        return Err(Error::Domain(format!(
            "entry {bad} < 2: its progression has no room for a disjoint one"
        )));
    }
    if let Some(reason) = pigeonhole_shape(t) {
        debug_assert!(search_lex_least(t).map(|w| w.is_none()).unwrap_or(true));
        return Ok(ZVerdict::NotHarmonic(reason));
    }
    match search_lex_least(t)? {
        Some(residues) => {
            let w = ResidueWitness {
                moduli: t.to_vec(),
                residues,
            };
            debug_assert!(w.verify());
            Ok(ZVerdict::Harmonic(w))
        }
        None => Ok(ZVerdict::NotHarmonic(NonHarmonicReason::Exhausted)),
    }
}

/// The exhaustive residue search alone, with the pigeonhole shortcuts
/// disabled. Decides the same predicate as [`is_z_harmonic`]; validation
/// suites run both routes and compare.
pub fn is_z_harmonic_by_search(t: &[u64]) -> Result<ZVerdict> {
    if t.is_empty() {
        return Err(Error::Domain("empty tuple".into()));
    }
    if let Some(&bad) = t.iter().find(|&&a| a < 2) {
        return Err(Error::Domain(format!(
            "entry {bad} < 2: its progression has no room for a disjoint one"
        )));
    }
    match search_lex_least(t)? {
        Some(residues) => Ok(ZVerdict::Harmonic(ResidueWitness {
            moduli: t.to_vec(),
            residues,
        })),
        None => Ok(ZVerdict::NotHarmonic(NonHarmonicReason::Exhausted)),
    }
}

/// Scans sub-tuples for the shapes that refute harmonicity by pigeonhole.
fn pigeonhole_shape(t: &[u64]) -> Option<NonHarmonicReason> {
    let n = t.len();
    for i in 0..n {
        for j in i + 1..n {
            if gcd(t[i], t[j]) == 1 {
                return Some(NonHarmonicReason::CoprimePair);
            }
        }
    }
    if has_p2_triple(t) {
        return Some(NonHarmonicReason::P2Pigeonhole);
    }
    if has_p3_quad(t) {
        return Some(NonHarmonicReason::P3Pigeonhole);
    }
    if has_p244_quad(t) {
        return Some(NonHarmonicReason::P244Pigeonhole);
    }
    None
}

fn pairwise_coprime(xs: &[u64]) -> bool {
    (0..xs.len()).all(|i| (i + 1..xs.len()).all(|j| gcd(xs[i], xs[j]) == 1))
}

/// Three entries `2r` with pairwise coprime `r` (pairwise gcd exactly 2).
fn has_p2_triple(t: &[u64]) -> bool {
    let evens: Vec<u64> = t.iter().copied().filter(|a| a % 2 == 0).collect();
    combos(evens.len(), 3).any(|c| pairwise_coprime(&c.iter().map(|&i| evens[i] / 2).collect::<Vec<_>>()))
}

/// Four entries `3r` with pairwise coprime `r`.
fn has_p3_quad(t: &[u64]) -> bool {
    let threes: Vec<u64> = t.iter().copied().filter(|a| a % 3 == 0).collect();
    combos(threes.len(), 4).any(|c| pairwise_coprime(&c.iter().map(|&i| threes[i] / 3).collect::<Vec<_>>()))
}

/// One entry `2r1` (`r1` odd) and three entries `4r` with all `r`
/// pairwise coprime.
fn has_p244_quad(t: &[u64]) -> bool {
    let leads: Vec<u64> = t.iter().copied().filter(|a| a % 4 == 2).collect();
    let fours: Vec<u64> = t.iter().copied().filter(|a| a % 4 == 0).collect();
    leads.iter().any(|&lead| {
        combos(fours.len(), 3).any(|c| {
            let mut rs = vec![lead / 2];
            rs.extend(c.iter().map(|&i| fours[i] / 4));
            pairwise_coprime(&rs)
        })
    })
}

/// Iterator over k-combinations of `0..n` as index vectors.
fn combos(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let cur = state.clone()?;
        let next = {
            let mut idx = cur.clone();
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < i + n - k {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if advanced {
                Some(idx)
            } else {
                None
            }
        };
        state = next;
        Some(cur)
    })
}

/// Exhaustive lexicographic backtracking over residues.
///
/// Each `m_i` only matters modulo `L_i = lcm_j gcd(a_i, a_j)` (a divisor
/// of `a_i`), and the lexicographically least witness automatically has
/// `m_i < L_i`, so domains are `0..L_i` and the first solution found in
/// index order with ascending residues is the canonical witness.
fn search_lex_least(t: &[u64]) -> Result<Option<Vec<u64>>> {
    let n = t.len();
    let mut g = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = gcd(t[i], t[j]);
        }
    }
    let eff: Vec<u64> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).fold(1u64, |l, j| lcm(l, g[i][j])))
        .collect();

    let mut m = vec![0u64; n];
    let mut budget = NODE_BUDGET;
    fn place(
        k: usize,
        n: usize,
        g: &[Vec<u64>],
        eff: &[u64],
        m: &mut [u64],
        budget: &mut u64,
    ) -> Result<bool> {
        if k == n {
            return Ok(true);
        }
        for cand in 0..eff[k] {
            if *budget == 0 {
                return Err(Error::Resource("residue search budget exhausted".into()));
            }
            *budget -= 1;
            if (0..k).all(|j| cand % g[k][j] != m[j] % g[k][j]) {
                m[k] = cand;
                if place(k + 1, n, g, eff, m, budget)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
    if place(0, n, &g, &eff, &mut m, &mut budget)? {
        Ok(Some(m))
    } else {
        Ok(None)
    }
}

/// Classification of a tuple of length ≤ 4: Z-harmonic with witness, or
/// exactly one of the four non-realizable shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmallClass {
    Harmonic(ResidueWitness),
    /// Some pair of entries is coprime.
    CoprimePair,
    /// A triple with all pairwise gcds equal to 2.
    GcdTwoTriple,
    /// The whole tuple is `(3r1, 3r2, 3r3, 3r4)` with pairwise coprime `r`.
    B3Shape,
    /// The whole tuple is `(2r1, 4r2, 4r3, 4r4)`, `r` pairwise coprime,
    /// `r1` odd.
    B2Shape,
}

impl SmallClass {
    pub fn is_harmonic(&self) -> bool {
        matches!(self, SmallClass::Harmonic(_))
    }
}

/// Classifies tuples of length ≤ 4.
///
/// Every non-Z-harmonic tuple of length at most 4 contains a coprime pair
/// or one of the three shapes; the returned tag always agrees with
/// [`is_z_harmonic`] on the same input.
pub fn classify_small(t: &[u64]) -> Result<SmallClass> {
    if t.len() > 4 {
        return Err(Error::Usage(format!(
            "classify_small takes tuples of length <= 4, got {}",
            t.len()
        )));
    }
    match is_z_harmonic_with_cap(t, 4)? {
        ZVerdict::Harmonic(w) => Ok(SmallClass::Harmonic(w)),
        ZVerdict::NotHarmonic(_) => {
            let n = t.len();
            for i in 0..n {
                for j in i + 1..n {
                    if gcd(t[i], t[j]) == 1 {
                        return Ok(SmallClass::CoprimePair);
                    }
                }
            }
            if has_p2_triple(t) {
                return Ok(SmallClass::GcdTwoTriple);
            }
            if n == 4 && t.iter().all(|&a| a % 3 == 0) {
                let rs: Vec<u64> = t.iter().map(|&a| a / 3).collect();
                if pairwise_coprime(&rs) {
                    return Ok(SmallClass::B3Shape);
                }
            }
            if n == 4 && has_p244_quad(t) {
                return Ok(SmallClass::B2Shape);
            }
            unreachable!("non-harmonic tuple {t:?} of length <= 4 outside the known taxonomy");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(t: &[u64]) -> Vec<u64> {
        match is_z_harmonic(t).unwrap() {
            ZVerdict::Harmonic(w) => w.residues,
            ZVerdict::NotHarmonic(r) => panic!("{t:?} unexpectedly not harmonic ({r})"),
        }
    }

    fn reason(t: &[u64]) -> NonHarmonicReason {
        is_z_harmonic(t).unwrap().reason().expect("expected non-harmonic")
    }

    #[test]
    fn disjointness_examples() {
        assert!(progressions_disjoint(2, 0, 4, 1));
        assert!(!progressions_disjoint(2, 0, 4, 2));
        assert!(progressions_disjoint(6, 0, 10, 1));
    }

    #[test]
    fn disjointness_agrees_with_period_scan() {
        for a in 2..=12u64 {
            for b in 2..=12u64 {
                let period = lcm(a, b);
                for m in 0..a {
                    for k in 0..b {
                        let scan = (0..period).all(|x| !(x % a == m && x % b == k));
                        assert_eq!(
                            progressions_disjoint(a, m as i64, b, k as i64),
                            scan,
                            "a={a} m={m} b={b} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn harmonic_witnesses() {
        assert_eq!(witness(&[2, 4]), vec![0, 1]);
        assert_eq!(witness(&[2, 4, 4]), vec![0, 1, 3]);
        assert_eq!(witness(&[6, 10, 15]), vec![0, 1, 2]);
        assert_eq!(witness(&[4, 6]), vec![0, 1]);
        assert_eq!(witness(&[5]), vec![0]);
    }

    #[test]
    fn non_harmonic_reasons() {
        assert_eq!(reason(&[4, 6, 10]), NonHarmonicReason::P2Pigeonhole);
        assert_eq!(reason(&[3, 9, 15, 21]), NonHarmonicReason::P3Pigeonhole);
        assert_eq!(reason(&[6, 4, 20, 8]), NonHarmonicReason::P244Pigeonhole);
        assert_eq!(reason(&[2, 3]), NonHarmonicReason::CoprimePair);
        // the five-entry shape has no shortcut tag; search refutes it
        assert_eq!(reason(&[3, 9, 6, 12, 30]), NonHarmonicReason::Exhausted);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(is_z_harmonic(&[1, 4]).is_err());
        assert!(is_z_harmonic(&[]).is_err());
        assert!(is_z_harmonic(&[2; 9]).is_err());
    }

    #[test]
    fn witness_shift_remains_valid() {
        // translation invariance: shifting all residues by c (mod a_i)
        // preserves every pairwise congruence constraint
        let t = [6u64, 10, 15];
        let w = is_z_harmonic(&t).unwrap().witness().unwrap().clone();
        for c in 0..30u64 {
            let shifted = ResidueWitness {
                moduli: w.moduli.clone(),
                residues: w
                    .residues
                    .iter()
                    .zip(&t)
                    .map(|(&m, &a)| (m + c) % a)
                    .collect(),
            };
            assert!(shifted.verify(), "shift {c}");
        }
    }

    #[test]
    fn classify_small_examples() {
        assert_eq!(classify_small(&[4, 6, 10]).unwrap(), SmallClass::GcdTwoTriple);
        assert_eq!(classify_small(&[3, 6, 9, 15]).unwrap(), SmallClass::B3Shape);
        assert_eq!(classify_small(&[6, 4, 20, 8]).unwrap(), SmallClass::B2Shape);
        assert_eq!(classify_small(&[9, 10]).unwrap(), SmallClass::CoprimePair);
        assert!(classify_small(&[6, 10, 15]).unwrap().is_harmonic());
        assert!(classify_small(&[2, 3, 4, 5, 6]).is_err());
    }
}
