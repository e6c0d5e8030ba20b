//! Degeneracy words and admissible index sequences.
//!
//! A degeneracy word records a composite of degeneracy operators. Words are
//! stored outermost-first: `[i_r, ..., i_1]` denotes `s_{i_r} ∘ ... ∘ s_{i_1}`,
//! so the rightmost index is applied first. The relation
//! `s_i s_j = s_{j+1} s_i` for `i <= j` rewrites any word into a unique
//! *admissible* word, one whose indices strictly decrease left to right.
//! Every degenerate simplex is then `s_W(g)` for a unique admissible `W` and
//! a unique nondegenerate `g`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// A composite of degeneracy operators, outermost operator first.
///
/// The empty word is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
    pub fn new(indices: Vec<usize>) -> Self {
        DegeneracyWord(indices)
    }

    pub fn empty() -> Self {
        DegeneracyWord(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether the indices strictly decrease left to right.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// The unique admissible word representing the same composite operator.
    ///
    /// Idempotent; total on all words.
    pub fn normal_form(&self) -> DegeneracyWord {
        let mut out: Vec<usize> = Vec::new();
        for &i in self.0.iter().rev() {
            left_compose(&mut out, i);
        }
        DegeneracyWord(out)
    }
}

impl fmt::Debug for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let mut first = true;
        for i in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "s{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// Rewrites `s_i ∘ s_W` into admissible form in place, assuming `word` is
/// already admissible. Indices `>= i` move inward and get bumped by one;
/// `i` lands just before the first smaller index.
pub(crate) fn left_compose(word: &mut Vec<usize>, i: usize) {
    let pos = word.iter().position(|&w| w < i).unwrap_or(word.len());
    for w in &mut word[..pos] {
        *w += 1;
    }
    word.insert(pos, i);
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("sequence {0:?} is not strictly decreasing")]
    NotAdmissible(Vec<usize>),
}

/// A strictly decreasing index sequence `(i_r, ..., i_1)`.
///
/// Equal-length sequences are totally ordered by comparing entries from the
/// top index downward: `I < J` when the first position (scanning from `i_r`)
/// at which they differ has the smaller entry in `I`. On the stored
/// representation this is plain lexicographic order. The derived `Ord`
/// compares length first so that sequences of all lengths sort by block.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissibleSeq(Vec<usize>);

impl AdmissibleSeq {
    pub fn new(indices: Vec<usize>) -> Result<Self, SeqError> {
        if indices.windows(2).all(|w| w[0] > w[1]) {
            Ok(AdmissibleSeq(indices))
        } else {
            Err(SeqError::NotAdmissible(indices))
        }
    }

    pub fn empty() -> Self {
        AdmissibleSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// The reversal `χ(I) = (i_1, ..., i_r)`: the face indices whose
    /// composite retracts the degeneracy composite `s_I`.
    pub fn chi(&self) -> Vec<usize> {
        self.0.iter().rev().copied().collect()
    }

    pub fn word(&self) -> DegeneracyWord {
        DegeneracyWord(self.0.clone())
    }
}

impl PartialOrd for AdmissibleSeq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AdmissibleSeq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for AdmissibleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AdmissibleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|i| i.to_string()).join(","))
    }
}

/// All admissible sequences of length `r` with entries in `0..index_bound`,
/// sorted ascending. There are `C(index_bound, r)` of them; the list is
/// empty when `r > index_bound`.
pub fn enumerate_admissible(index_bound: usize, r: usize) -> Vec<AdmissibleSeq> {
    if r == 0 {
        return vec![AdmissibleSeq::empty()];
    }
    let mut out: Vec<AdmissibleSeq> = (0..index_bound)
        .combinations(r)
        .map(|mut c| {
            c.reverse();
            AdmissibleSeq(c)
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(ix: &[usize]) -> DegeneracyWord {
        DegeneracyWord::new(ix.to_vec())
    }

    #[test]
    fn normal_form_basic_rewrites() {
        assert_eq!(word(&[0, 0]).normal_form(), word(&[1, 0]));
        assert_eq!(word(&[0, 1]).normal_form(), word(&[2, 0]));
        assert_eq!(word(&[2, 0]).normal_form(), word(&[2, 0]));
    }

    #[test]
    fn normal_form_is_idempotent_and_admissible() {
        for w in [
            word(&[]),
            word(&[0, 0, 0]),
            word(&[1, 2, 0, 2]),
            word(&[3, 3, 3]),
            word(&[0, 1, 2, 3]),
        ] {
            let nf = w.normal_form();
            assert!(nf.is_admissible(), "{nf} not admissible");
            assert_eq!(nf.normal_form(), nf);
            assert_eq!(nf.len(), w.len());
        }
    }

    #[test]
    fn repeated_s0_normalizes_to_full_staircase() {
        // s_0^n = s_{n-1} s_{n-2} ... s_0
        for n in 1..7 {
            let w = word(&vec![0; n]).normal_form();
            let expect: Vec<usize> = (0..n).rev().collect();
            assert_eq!(w.indices(), &expect[..]);
        }
    }

    #[test]
    fn chi_reverses() {
        let s = AdmissibleSeq::new(vec![2, 0]).unwrap();
        assert_eq!(s.chi(), vec![0, 2]);
        assert_eq!(AdmissibleSeq::empty().chi(), Vec::<usize>::new());
        let s = AdmissibleSeq::new(vec![3, 1, 0]).unwrap();
        assert_eq!(s.chi(), vec![0, 1, 3]);
    }

    #[test]
    fn admissibility_is_enforced() {
        assert!(AdmissibleSeq::new(vec![1, 1]).is_err());
        assert!(AdmissibleSeq::new(vec![0, 1]).is_err());
        assert!(AdmissibleSeq::new(vec![4, 2, 1]).is_ok());
    }

    #[test]
    fn enumeration_matches_binomial_counts() {
        let seqs = enumerate_admissible(3, 2);
        let shown: Vec<&[usize]> = seqs.iter().map(|s| s.indices()).collect();
        assert_eq!(shown, vec![&[1, 0][..], &[2, 0], &[2, 1]]);

        assert_eq!(enumerate_admissible(4, 0).len(), 1);
        assert!(enumerate_admissible(4, 0)[0].is_empty());

        let seqs = enumerate_admissible(4, 2);
        assert_eq!(seqs.len(), 6);
        assert_eq!(seqs.first().unwrap().indices(), &[1, 0]);
        assert_eq!(seqs.last().unwrap().indices(), &[3, 2]);

        assert!(enumerate_admissible(2, 3).is_empty());
        assert_eq!(enumerate_admissible(0, 0).len(), 1);
    }

    /// Literal transcription of the defining order: `I < J` when there is a
    /// position `p` with all higher entries equal and `i_p < j_p`.
    fn order_by_definition(a: &AdmissibleSeq, b: &AdmissibleSeq) -> std::cmp::Ordering {
        assert_eq!(a.len(), b.len());
        let r = a.len();
        // position k counts from 1 (innermost) to r (outermost); stored
        // vectors are outermost-first, so entry k sits at index r - k.
        for p in (1..=r).rev() {
            let (ip, jp) = (a.indices()[r - p], b.indices()[r - p]);
            if ip != jp {
                return ip.cmp(&jp);
            }
        }
        std::cmp::Ordering::Equal
    }

    #[test]
    fn order_agrees_with_definition_and_is_total() {
        for bound in 0..=7usize {
            for r in 0..=4.min(bound) {
                let seqs = enumerate_admissible(bound, r);
                for a in &seqs {
                    for b in &seqs {
                        assert_eq!(a.cmp(b), order_by_definition(a, b));
                        // trichotomy: distinct sequences are strictly comparable
                        if a != b {
                            assert_ne!(a.cmp(b), std::cmp::Ordering::Equal);
                        }
                    }
                }
                // enumerate_admissible returns a strictly sorted list
                for w in seqs.windows(2) {
                    assert!(w[0] < w[1]);
                }
                // transitivity on all triples
                for a in &seqs {
                    for b in &seqs {
                        for c in &seqs {
                            if a < b && b < c {
                                assert!(a < c);
                            }
                        }
                    }
                }
            }
        }
    }
}
