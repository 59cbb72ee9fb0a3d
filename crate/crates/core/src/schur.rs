//! Real Schur roots via the braid group action on complete exceptional
//! sequences, and via the absolute order below the Coxeter element.

use crate::cartan::{CartanData, RootVector};
use crate::error::{Error, Result};
use crate::weyl::{
    coxeter_element, dual_root, finite_roots, reflect, reflection, AbsoluteLengths, RootSet,
};
use rayon::prelude::*;
use std::collections::{BTreeSet, HashSet};

/// A complete real exceptional sequence of positive real roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExceptionalSequence {
    pub entries: Vec<RootVector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidDirection {
    Forward,
    Inverse,
}

impl ExceptionalSequence {
    /// `(alpha_1, ..., alpha_n)`.
    pub fn standard(n: usize) -> Self {
        ExceptionalSequence { entries: (0..n).map(|i| RootVector::simple(n, i)).collect() }
    }

    /// `<beta_i, beta_j> = 0` for all `i > j`.
    pub fn is_exceptional(&self, data: &CartanData) -> Result<bool> {
        for i in 0..self.entries.len() {
            for j in 0..i {
                if data.euler_form(&self.entries[i], &self.entries[j])? != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(RootVector::max_abs).max().unwrap_or(0)
    }
}

fn positive_representative(r: RootVector) -> Result<RootVector> {
    let r = if r.0.iter().any(|&x| x < 0) { r.neg() } else { r };
    if r.is_positive() {
        Ok(r)
    } else {
        Err(Error::InvariantBroken)
    }
}

/// The braid generator `sigma_i` (0-based `i`, acting on positions `i, i+1`)
/// or its inverse, followed by sign normalization to positive roots.
pub fn braid_move(
    data: &CartanData,
    seq: &ExceptionalSequence,
    i: usize,
    direction: BraidDirection,
) -> Result<ExceptionalSequence> {
    if i + 1 >= seq.entries.len() {
        return Err(Error::IndexOutOfRange(i + 1));
    }
    let (a, b) = (&seq.entries[i], &seq.entries[i + 1]);
    let (first, second) = match direction {
        BraidDirection::Forward => (reflect(data, a, b)?, a.clone()),
        BraidDirection::Inverse => (b.clone(), reflect(data, b, a)?),
    };
    let mut entries = seq.entries.clone();
    entries[i] = positive_representative(first)?;
    entries[i + 1] = positive_representative(second)?;
    let out = ExceptionalSequence { entries };
    if !out.is_exceptional(data)? {
        return Err(Error::InvariantBroken);
    }
    Ok(out)
}

/// Result of the braid search: the roots found plus every visited sequence.
#[derive(Debug, Clone)]
pub struct BraidSearch {
    pub roots: RootSet,
    pub sequences: Vec<ExceptionalSequence>,
}

fn neighbours(
    data: &CartanData,
    seq: &ExceptionalSequence,
    bound: i64,
) -> Result<Vec<ExceptionalSequence>> {
    let n = seq.entries.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n.saturating_sub(1) {
        for dir in [BraidDirection::Forward, BraidDirection::Inverse] {
            let next = braid_move(data, seq, i, dir)?;
            if next.max_abs() <= bound {
                out.push(next);
            }
        }
    }
    Ok(out)
}

/// Level-synchronous breadth-first search over exceptional sequences whose
/// entries stay inside the coordinate box. With `parallel` the frontier is
/// expanded on the current rayon pool; the result is identical either way.
pub fn braid_search(data: &CartanData, bound: i64, parallel: bool) -> Result<BraidSearch> {
    if bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    let start = ExceptionalSequence::standard(data.rank());
    let mut visited: HashSet<ExceptionalSequence> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let expanded: Vec<Vec<ExceptionalSequence>> = if parallel {
            frontier.par_iter().map(|s| neighbours(data, s, bound)).collect::<Result<_>>()?
        } else {
            frontier.iter().map(|s| neighbours(data, s, bound)).collect::<Result<_>>()?
        };
        let next: BTreeSet<ExceptionalSequence> = expanded
            .into_iter()
            .flatten()
            .filter(|s| !visited.contains(s))
            .collect();
        frontier = next.into_iter().collect();
        visited.extend(frontier.iter().cloned());
        all.extend(frontier.iter().cloned());
    }
    let roots = RootSet::from_iter(bound, all.iter().flat_map(|s| s.entries.iter().cloned()));
    Ok(BraidSearch { roots, sequences: all })
}

/// Union of all entries of complete exceptional sequences reachable from
/// `(alpha_1, ..., alpha_n)` without leaving the box `max|b_i| <= bound`.
pub fn enumerate_schur(data: &CartanData, bound: i64) -> Result<RootSet> {
    braid_search(data, bound, false).map(|s| s.roots)
}

/// Like [`enumerate_schur`] but expands each BFS level in parallel.
pub fn enumerate_schur_parallel(data: &CartanData, bound: i64) -> Result<RootSet> {
    braid_search(data, bound, true).map(|s| s.roots)
}

/// Absolute-order test `s_beta <= s_1 ... s_n` against a precomputed
/// length table.
pub fn is_schur_with(
    data: &CartanData,
    table: &AbsoluteLengths,
    beta: &RootVector,
) -> Result<bool> {
    let w = reflection(data, beta)?.compose(&coxeter_element(data));
    let l = table.length(&w).ok_or_else(|| Error::NotARealRoot(beta.clone()))?;
    Ok(l + 1 == data.rank())
}

/// Absolute-order test for a single positive real root (finite type).
pub fn is_schur_absolute(data: &CartanData, beta: &RootVector) -> Result<bool> {
    let roots = finite_roots(data)?;
    if !beta.is_positive() || !roots.contains(beta) {
        return Err(Error::NotARealRoot(beta.clone()));
    }
    is_schur_with(data, &AbsoluteLengths::new(data)?, beta)
}

/// Positive real roots within `bound` that pass the absolute-order test.
pub fn schur_absolute(data: &CartanData, bound: i64) -> Result<RootSet> {
    if bound < 1 {
        return Err(Error::BoundTooSmall);
    }
    let roots = finite_roots(data)?;
    let table = AbsoluteLengths::new(data)?;
    let mut out = Vec::new();
    for beta in roots.positive() {
        if beta.max_abs() <= bound && is_schur_with(data, &table, &beta)? {
            out.push(beta);
        }
    }
    Ok(RootSet::from_iter(bound, out))
}

/// Pairs each Schur root of `data` with its dual root, checking that every
/// dual is a Schur root of the transposed datum (searched with bound
/// `c * bound`). In finite type the pairing must be onto.
pub fn dual_schur_check(data: &CartanData, bound: i64) -> Result<Vec<(RootVector, RootVector)>> {
    let schur = enumerate_schur(data, bound)?;
    let transposed = data.transpose()?;
    let dual_schur = enumerate_schur(&transposed, data.c() * bound)?;
    let mut pairs = Vec::with_capacity(schur.len());
    let mut images = BTreeSet::new();
    for beta in &schur.roots {
        let d = dual_root(data, beta)?;
        if !dual_schur.contains(&d) || !images.insert(d.clone()) {
            return Err(Error::DualMissing(d));
        }
        pairs.push((beta.clone(), d));
    }
    if crate::weyl::is_finite_type(data) && images.len() != dual_schur.len() {
        let missing = dual_schur.roots.iter().find(|r| !images.contains(*r)).cloned();
        return Err(Error::DualMissing(missing.unwrap_or_else(|| RootVector::zero(data.rank()))));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::examples::*;

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    fn roots(v: &[&[i64]]) -> Vec<RootVector> {
        let mut out: Vec<RootVector> = v.iter().map(|x| rv(x)).collect();
        out.sort();
        out
    }

    #[test]
    fn braid_move_examples() {
        let a2 = a2();
        let s = ExceptionalSequence::standard(2);
        let f = braid_move(&a2, &s, 0, BraidDirection::Forward).unwrap();
        assert_eq!(f.entries, vec![rv(&[1, 1]), rv(&[1, 0])]);
        assert_eq!(braid_move(&a2, &f, 0, BraidDirection::Inverse).unwrap(), s);

        let b3 = b3();
        let s = ExceptionalSequence::standard(3);
        let f = braid_move(&b3, &s, 1, BraidDirection::Forward).unwrap();
        assert_eq!(f.entries[1..], [rv(&[0, 1, 1]), rv(&[0, 1, 0])]);
        assert_eq!(
            braid_move(&b3, &s, 2, BraidDirection::Forward),
            Err(Error::IndexOutOfRange(3))
        );
    }

    #[test]
    fn b3_schur_roots_match_listing() {
        let expected = roots(&[
            &[1, 1, 1],
            &[0, 1, 1],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 2, 2],
            &[0, 1, 2],
            &[1, 0, 0],
            &[0, 1, 0],
            &[1, 1, 2],
        ]);
        assert_eq!(enumerate_schur(&b3(), 3).unwrap().roots, expected);
        assert_eq!(schur_absolute(&b3(), 3).unwrap().roots, expected);
    }

    #[test]
    fn a2_schur_roots() {
        let expected = roots(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(enumerate_schur(&a2(), 2).unwrap().roots, expected);
        assert!(is_schur_absolute(&a2(), &rv(&[1, 1])).unwrap());
    }

    #[test]
    fn c2_affine_family_members_found() {
        let s = enumerate_schur(&c2_affine(), 6).unwrap();
        assert!(s.contains(&rv(&[2, 2, 1])));
        assert!(s.contains(&rv(&[2, 4, 1])));
        assert!(!s.contains(&rv(&[1, 2, 1])));
    }

    #[test]
    fn absolute_test_errors() {
        assert_eq!(
            is_schur_absolute(&c2_affine(), &rv(&[1, 0, 0])),
            Err(Error::InfiniteType)
        );
        assert_eq!(
            is_schur_absolute(&b3(), &rv(&[1, 0, 1])),
            Err(Error::NotARealRoot(rv(&[1, 0, 1])))
        );
    }

    #[test]
    fn dual_pairs() {
        let pairs = dual_schur_check(&b3(), 3).unwrap();
        assert_eq!(pairs.len(), 9);
        assert!(pairs.contains(&(rv(&[1, 1, 2]), rv(&[1, 1, 1]))));
        assert!(pairs.contains(&(rv(&[0, 1, 1]), rv(&[0, 2, 1]))));
        let a2_pairs = dual_schur_check(&a2(), 2).unwrap();
        assert!(a2_pairs.iter().all(|(a, b)| a == b));
        assert_eq!(a2_pairs.len(), 3);
    }

    #[test]
    fn parallel_search_matches_serial() {
        for (_, d) in finite_battery() {
            assert_eq!(enumerate_schur(&d, 4).unwrap(), enumerate_schur_parallel(&d, 4).unwrap());
        }
    }
}
