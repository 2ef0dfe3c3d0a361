//! Permutations of S_∞ in one-line notation, together with their codes,
//! diagrams, and reduced words.
//!
//! A [`Permutation`] is stored in canonical form: trailing fixed points are
//! stripped, so `1243`, `12435`, and `124356`'s prefix `1243` all denote the
//! same element. Leading fixed points are kept, since they record how deeply a
//! permutation is embedded (`1^n × w`).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of S_∞, finitely supported, in canonical one-line notation.
///
/// Ordering is lexicographic on the canonical word; this is the order used for
/// every emitted term list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self { word: Vec::new() }
    }

    /// Builds a permutation from a one-line word, validating that it is a
    /// bijection of `{1..n}`.
    pub fn from_word(word: impl Into<Vec<usize>>) -> Result<Self> {
        let word = word.into();
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for (pos, &value) in word.iter().enumerate() {
            if value == 0 || value > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {value} at position {} is outside 1..={n}",
                    pos + 1
                )));
            }
            if seen[value] {
                return Err(Error::InvalidPermutation(format!(
                    "value {value} repeated at position {}",
                    pos + 1
                )));
            }
            seen[value] = true;
        }
        Ok(Self::from_word_unchecked(word))
    }

    /// Caller guarantees `word` is a bijection of `{1..word.len()}`.
    pub(crate) fn from_word_unchecked(mut word: Vec<usize>) -> Self {
        while let Some(&last) = word.last() {
            if last == word.len() {
                word.pop();
            } else {
                break;
            }
        }
        Self { word }
    }

    /// The simple transposition `s_i = t_{i,i+1}`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple transpositions are indexed from 1");
        let mut word: Vec<usize> = (1..=i + 1).collect();
        word.swap(i - 1, i);
        Self { word }
    }

    /// The longest element `w0 = n(n-1)…1` of S_n.
    pub fn longest(n: usize) -> Self {
        Self::from_word_unchecked((1..=n).rev().collect())
    }

    /// Every permutation of S_n, in lexicographic order of the full length-n word.
    pub fn all(n: usize) -> Vec<Self> {
        let mut word: Vec<usize> = (1..=n).collect();
        let mut out = vec![Self::from_word_unchecked(word.clone())];
        // next-permutation in lexicographic order
        while let Some(i) = (1..n).rev().find(|&i| word[i - 1] < word[i]) {
            let j = (i..n).rev().find(|&j| word[j] > word[i - 1]).unwrap();
            word.swap(i - 1, j);
            word[i..].reverse();
            out.push(Self::from_word_unchecked(word.clone()));
        }
        out
    }

    /// The canonical one-line word (empty for the identity).
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The one-line word padded with fixed points to length `n` (never truncated).
    pub fn word_padded(&self, n: usize) -> Vec<usize> {
        let mut word = self.word.clone();
        word.extend(word.len() + 1..=n);
        word
    }

    /// Smallest `n` with `self ∈ S_n`.
    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `w(i)` for a 1-based position `i`; positions past the word are fixed.
    pub fn at(&self, i: usize) -> usize {
        if i >= 1 && i <= self.word.len() {
            self.word[i - 1]
        } else {
            i
        }
    }

    /// `w⁻¹(value)`.
    pub fn position_of(&self, value: usize) -> usize {
        match self.word.iter().position(|&v| v == value) {
            Some(p) => p + 1,
            None => value,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.word.len()];
        for (pos, &value) in self.word.iter().enumerate() {
            inv[value - 1] = pos + 1;
        }
        Self::from_word_unchecked(inv)
    }

    /// Composition `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.size().max(other.size());
        Self::from_word_unchecked((1..=n).map(|i| self.at(other.at(i))).collect())
    }

    /// `w t_{ij}`: exchange the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut word = self.word_padded(i.max(j));
        word.swap(i - 1, j - 1);
        Self::from_word_unchecked(word)
    }

    /// `t_{ab} w`: exchange the values `a` and `b` wherever they occur.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let word = self
            .word_padded(a.max(b))
            .into_iter()
            .map(|v| {
                if v == a {
                    b
                } else if v == b {
                    a
                } else {
                    v
                }
            })
            .collect();
        Self::from_word_unchecked(word)
    }

    /// Number of inversions ℓ(w).
    pub fn length(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .sum()
    }

    /// The Lehmer code `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Code {
        let w = &self.word;
        Code::new(
            (0..w.len())
                .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
                .collect(),
        )
    }

    /// The unique permutation with the given code.
    pub fn from_code(code: &Code) -> Self {
        let c = code.entries();
        let n = c
            .iter()
            .enumerate()
            .map(|(i, &ci)| i + 1 + ci)
            .max()
            .unwrap_or(0);
        let mut unused: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for i in 0..n {
            let ci = c.get(i).copied().unwrap_or(0);
            word.push(unused.remove(ci));
        }
        Self::from_word_unchecked(word)
    }

    /// `w × u` with `w` read in `S_m` for `m = max(|w|, pad)`: the word
    /// `w(1)…w(m)` followed by `u` shifted up by `m`.
    pub fn cross(w: &Self, u: &Self, pad: usize) -> Self {
        let m = w.size().max(pad);
        let mut word = w.word_padded(m);
        word.extend(u.word.iter().map(|&x| x + m));
        Self::from_word_unchecked(word)
    }

    /// `1^n × w`.
    pub fn shifted(&self, n: usize) -> Self {
        Self::cross(&Self::identity(), self, n)
    }

    /// Splits `w = 1^k × v` with `v(1) ≠ 1` (or `v` the identity).
    pub fn strip_leading_fixed(&self) -> (usize, Self) {
        let k = self
            .word
            .iter()
            .enumerate()
            .take_while(|&(i, &x)| x == i + 1)
            .count();
        if k == self.word.len() {
            return (k, Self::identity());
        }
        let word = self.word[k..].iter().map(|&x| x - k).collect();
        (k, Self::from_word_unchecked(word))
    }

    /// All `i` with `w(i) > w(i+1)`, ascending.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, pair)| pair[0] > pair[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn last_descent(&self) -> Option<usize> {
        (1..self.word.len())
            .rev()
            .find(|&i| self.word[i - 1] > self.word[i])
    }

    /// At most one descent.
    pub fn is_grassmannian(&self) -> bool {
        self.word.windows(2).filter(|p| p[0] > p[1]).count() <= 1
    }

    /// `w⁻¹(1)`.
    pub fn one_position(&self) -> usize {
        self.position_of(1)
    }

    pub fn stats(&self) -> PermStats {
        let descents = self.descents();
        PermStats {
            length: self.length(),
            last_descent: descents.last().copied(),
            is_grassmannian: descents.len() <= 1,
            one_position: self.one_position(),
            descents,
        }
    }

    /// The Rothe diagram `D(w) = {(i, j) : w(i) > j, w⁻¹(j) > i}`.
    pub fn diagram(&self) -> Diagram {
        let inv = self.inverse();
        let mut boxes = BTreeSet::new();
        for i in 1..=self.size() {
            for j in 1..self.at(i) {
                if inv.at(j) > i {
                    boxes.insert((i, j));
                }
            }
        }
        Diagram { boxes }
    }

    /// Every reduced word `(a_1, …, a_p)` with `s_{a_1}⋯s_{a_p} = w`, sorted.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        let mut words = reduced_words_memo(self, &mut memo).as_ref().clone();
        words.sort();
        words
    }

    /// One reduced word, found by repeatedly peeling the first descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        while let Some(&i) = w.descents().first() {
            rev.push(i);
            w = w.swap_positions(i, i + 1);
        }
        rev.reverse();
        rev
    }

    /// Human-readable form: compact digits when every letter is ≤ 9, else commas.
    /// The identity prints as `1`.
    pub fn to_compact(&self) -> String {
        if self.word.is_empty() {
            "1".to_string()
        } else if self.word.iter().all(|&x| x <= 9) {
            self.word.iter().map(|x| x.to_string()).collect()
        } else {
            self.to_commas()
        }
    }

    /// Comma-separated form; the identity prints as `1`.
    pub fn to_commas(&self) -> String {
        if self.word.is_empty() {
            return "1".to_string();
        }
        self.word
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn reduced_words_memo(
    w: &Permutation,
    memo: &mut HashMap<Permutation, std::rc::Rc<Vec<Vec<usize>>>>,
) -> std::rc::Rc<Vec<Vec<usize>>> {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let result = if w.is_identity() {
        vec![Vec::new()]
    } else {
        let mut out = Vec::new();
        // w = (w s_i) s_i for every descent i
        for i in w.descents() {
            let shorter = w.swap_positions(i, i + 1);
            for prefix in reduced_words_memo(&shorter, memo).iter() {
                let mut word = prefix.clone();
                word.push(i);
                out.push(word);
            }
        }
        out
    };
    let result = std::rc::Rc::new(result);
    memo.insert(w.clone(), result.clone());
    result
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.to_compact())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts a compact digit string (`3241`) or a comma-separated word
    /// (`10,2,3,1,…`). Whitespace around letters is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPermutation("empty input".into()));
        }
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .enumerate()
                .map(|(i, part)| {
                    let part = part.trim();
                    part.parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!(
                            "entry {} ({part:?}) is not a positive integer",
                            i + 1
                        ))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .enumerate()
                .map(|(i, ch)| {
                    ch.to_digit(10).map(|d| d as usize).ok_or_else(|| {
                        Error::InvalidPermutation(format!(
                            "unexpected character {ch:?} at position {}",
                            i + 1
                        ))
                    })
                })
                .collect::<Result<_>>()?
        };
        Self::from_word(word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// A finitely supported sequence of nonnegative integers, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Code(Vec<usize>);

impl Code {
    pub fn new(mut entries: Vec<usize>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Self(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// ℓ(c): the index of the last nonzero entry (0 for the empty code).
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Summary statistics of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub length: usize,
    pub descents: Vec<usize>,
    pub last_descent: Option<usize>,
    pub is_grassmannian: bool,
    pub one_position: usize,
}

/// A set of boxes `(row, column)`, both 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Diagram {
    boxes: BTreeSet<(usize, usize)>,
}

impl Diagram {
    pub fn boxes(&self) -> &BTreeSet<(usize, usize)> {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.boxes.contains(&(row, col))
    }

    /// Number of boxes in each row `1..=max_row`.
    pub fn row_counts(&self) -> Vec<usize> {
        let rows = self.boxes.iter().map(|&(r, _)| r).max().unwrap_or(0);
        let mut counts = vec![0; rows];
        for &(r, _) in &self.boxes {
            counts[r - 1] += 1;
        }
        counts
    }

    /// The same diagram moved down and right by `k`, as `D(1^k × w)` is to `D(w)`.
    pub fn translated(&self, k: usize) -> Self {
        Self {
            boxes: self.boxes.iter().map(|&(r, c)| (r + k, c + k)).collect(),
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.boxes.iter().map(|&(r, _)| r).max().unwrap_or(0);
        let cols = self.boxes.iter().map(|&(_, c)| c).max().unwrap_or(0);
        for r in 1..=rows {
            let line: String = (1..=cols)
                .map(|c| if self.contains(r, c) { '#' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
