//! Sequences over integer alphabets and generalized Davenport-Schinzel
//! patterns.
//!
//! A sequence is `l`-regular when every window of `l` consecutive terms has
//! pairwise distinct symbols. The two forbidden patterns handled here are
//!
//! - `up(l,t)`: `l` distinct symbols `a_1..a_l` repeated `t` times in the same
//!   order, length `l*t`;
//! - `up-down-up(l)`: `a_1..a_l a_{l-1}..a_1 a_2..a_l`, length `3l-2`.
//!
//! Containment is decided by a depth-first search over the symbol
//! assignment `a_1, a_2, ...`. A fixed assignment turns the pattern into a
//! concrete word, and a word is a subsequence iff the greedy leftmost
//! embedding (driven by per-symbol occurrence lists) succeeds. Restricting the
//! pattern to the first `j` assigned symbols gives a necessary condition, which
//! prunes the search.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Symbol = u32;

/// Default length cap for [`longest_l_regular_subsequence`].
pub const DEFAULT_EXACT_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("symbol {symbol} is outside the alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: Symbol, alphabet_size: u32 },
    #[error("sequence of length {len} exceeds the exact-search cap {cap}")]
    CapExceeded { len: usize, cap: usize },
    #[error("exact regular-subsequence search supports l in 1..=3, got {0}")]
    UnsupportedRegularity(usize),
}

/// A finite sequence of symbol ids `< alphabet_size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sequence {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>, alphabet_size: u32) -> Result<Self, SequenceError> {
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(SequenceError::SymbolOutOfRange {
                symbol,
                alphabet_size,
            });
        }
        Ok(Self {
            symbols,
            alphabet_size,
        })
    }

    /// Builds a sequence whose alphabet is `0..=max(symbols)`.
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let alphabet_size = symbols.iter().max().map_or(0, |&m| m + 1);
        Self {
            symbols,
            alphabet_size,
        }
    }

    /// Maps single characters to ids in first-occurrence order, skipping
    /// whitespace and commas. Handy for writing `"a b c a b c"` in tests.
    pub fn from_letters(text: &str) -> Self {
        let mut table = SymbolTable::default();
        let symbols = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| table.intern(&c.to_string()))
            .collect();
        Self {
            symbols,
            alphabet_size: table.len() as u32,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// Number of distinct symbols that actually occur.
    pub fn distinct_count(&self) -> usize {
        let mut seen = vec![false; self.alphabet_size as usize];
        self.symbols
            .iter()
            .filter(|&&s| !std::mem::replace(&mut seen[s as usize], true))
            .count()
    }

    /// The subsequence at the given (increasing) positions, same alphabet.
    pub fn subsequence(&self, positions: &[usize]) -> Sequence {
        Sequence {
            symbols: positions.iter().map(|&p| self.symbols[p]).collect(),
            alphabet_size: self.alphabet_size,
        }
    }

    /// True iff every `l` consecutive terms are pairwise distinct.
    ///
    /// `l <= 1` and sequences shorter than two terms are vacuously regular.
    pub fn is_l_regular(&self, l: usize) -> bool {
        if l <= 1 {
            return true;
        }
        // It suffices that each term differs from the l-1 terms before it.
        self.symbols.iter().enumerate().all(|(i, s)| {
            let lo = i.saturating_sub(l - 1);
            !self.symbols[lo..i].contains(s)
        })
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.symbols {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PatternKind {
    Up,
    UpDownUp,
}

/// Positions in a host sequence at which a forbidden pattern occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub l: usize,
    /// Repetition count; `None` for up-down-up.
    pub t: Option<usize>,
    pub positions: Vec<usize>,
}

impl PatternWitness {
    /// Replays the witness against `host`, checking every invariant of its
    /// pattern type. Independent of how the witness was found.
    pub fn is_valid_for(&self, host: &Sequence) -> bool {
        let Some(template) = pattern_template(self.kind, self.l, self.t) else {
            return false;
        };
        if self.positions.len() != template.len()
            || self.positions.windows(2).any(|w| w[0] >= w[1])
            || self.positions.last().is_some_and(|&p| p >= host.len())
        {
            return false;
        }
        let word: Vec<Symbol> = self.positions.iter().map(|&p| host.symbols[p]).collect();
        // First l terms pairwise distinct.
        let head = &word[..self.l];
        if (0..head.len()).any(|i| head[i + 1..].contains(&head[i])) {
            return false;
        }
        template
            .iter()
            .zip(&word)
            .all(|(&slot, &sym)| head[slot] == sym)
    }

    /// The symbols `a_1..a_l` the pattern is built from.
    pub fn letters(&self, host: &Sequence) -> Vec<Symbol> {
        self.positions[..self.l]
            .iter()
            .map(|&p| host.symbols[p])
            .collect()
    }
}

/// The pattern as indices into the letter tuple `a_1..a_l` (0-based).
///
/// Returns `None` for illegal parameters (`l < 2`, or `t < 2` for `up`).
pub fn pattern_template(kind: PatternKind, l: usize, t: Option<usize>) -> Option<Vec<usize>> {
    if l < 2 {
        return None;
    }
    match kind {
        PatternKind::Up => {
            let t = t?;
            if t < 2 {
                return None;
            }
            Some((0..l * t).map(|p| p % l).collect())
        }
        PatternKind::UpDownUp => {
            if t.is_some() {
                return None;
            }
            let up = 0..l;
            let down = (0..l - 1).rev();
            let up_again = 1..l;
            Some(up.chain(down).chain(up_again).collect())
        }
    }
}

/// Finds a subsequence of type `up(l,t)`, if one exists.
pub fn contains_up(s: &Sequence, l: usize, t: usize) -> Option<PatternWitness> {
    let template = pattern_template(PatternKind::Up, l, Some(t))?;
    find_pattern(s, &template, l).map(|positions| PatternWitness {
        kind: PatternKind::Up,
        l,
        t: Some(t),
        positions,
    })
}

/// Finds a subsequence of type `up-down-up(l)`, if one exists.
pub fn contains_up_down_up(s: &Sequence, l: usize) -> Option<PatternWitness> {
    let template = pattern_template(PatternKind::UpDownUp, l, None)?;
    find_pattern(s, &template, l).map(|positions| PatternWitness {
        kind: PatternKind::UpDownUp,
        l,
        t: None,
        positions,
    })
}

struct Occurrences {
    by_symbol: Vec<Vec<usize>>,
}

impl Occurrences {
    fn new(s: &Sequence) -> Self {
        let mut by_symbol = vec![Vec::new(); s.alphabet_size as usize];
        for (i, &sym) in s.symbols.iter().enumerate() {
            by_symbol[sym as usize].push(i);
        }
        Self { by_symbol }
    }

    fn next_at_or_after(&self, sym: Symbol, pos: usize) -> Option<usize> {
        let occ = &self.by_symbol[sym as usize];
        let idx = occ.partition_point(|&p| p < pos);
        occ.get(idx).copied()
    }

    /// Greedy leftmost embedding of `word`; optimal for a fixed word.
    fn embed(&self, word: impl Iterator<Item = Symbol>, out: &mut Vec<usize>) -> bool {
        out.clear();
        let mut pos = 0;
        for sym in word {
            match self.next_at_or_after(sym, pos) {
                Some(p) => {
                    out.push(p);
                    pos = p + 1;
                }
                None => return false,
            }
        }
        true
    }
}

fn find_pattern(s: &Sequence, template: &[usize], l: usize) -> Option<Vec<usize>> {
    if s.len() < template.len() {
        return None;
    }
    let occ = Occurrences::new(s);
    let mut need = vec![0usize; l];
    for &slot in template {
        need[slot] += 1;
    }
    let min_need = need.iter().copied().min().unwrap_or(0);

    // Candidate letters in first-occurrence order, with enough occurrences
    // for at least the least demanding slot.
    let mut candidates: Vec<Symbol> = (0..s.alphabet_size)
        .filter(|&sym| occ.by_symbol[sym as usize].len() >= min_need)
        .collect();
    if candidates.len() < l {
        return None;
    }
    candidates.sort_by_key(|&sym| occ.by_symbol[sym as usize][0]);

    let mut search = PatternSearch {
        occ: &occ,
        template,
        need: &need,
        candidates: &candidates,
        used: vec![false; s.alphabet_size as usize],
        letters: Vec::with_capacity(l),
        scratch: Vec::with_capacity(template.len()),
        l,
    };
    if search.extend() {
        let mut positions = Vec::with_capacity(template.len());
        let ok = occ.embed(
            template.iter().map(|&slot| search.letters[slot]),
            &mut positions,
        );
        debug_assert!(ok);
        Some(positions)
    } else {
        None
    }
}

struct PatternSearch<'a> {
    occ: &'a Occurrences,
    template: &'a [usize],
    need: &'a [usize],
    candidates: &'a [Symbol],
    used: Vec<bool>,
    letters: Vec<Symbol>,
    scratch: Vec<usize>,
    l: usize,
}

impl PatternSearch<'_> {
    fn extend(&mut self) -> bool {
        let j = self.letters.len();
        if j == self.l {
            return true;
        }
        for &sym in self.candidates {
            if self.used[sym as usize] || self.occ.by_symbol[sym as usize].len() < self.need[j] {
                continue;
            }
            self.letters.push(sym);
            let letters = &self.letters;
            let feasible = self.occ.embed(
                self.template
                    .iter()
                    .filter(|&&slot| slot <= j)
                    .map(|&slot| letters[slot]),
                &mut self.scratch,
            );
            if feasible {
                self.used[sym as usize] = true;
                if self.extend() {
                    return true;
                }
                self.used[sym as usize] = false;
            }
            self.letters.pop();
        }
        false
    }
}

/// Left-to-right scan keeping a term iff its symbol differs from the last
/// `min(l-1, kept)` kept symbols. The output is always `l`-regular.
pub fn extract_l_regular_greedy(s: &Sequence, l: usize) -> Sequence {
    let window = l.saturating_sub(1);
    let mut kept: Vec<Symbol> = Vec::with_capacity(s.len());
    for &sym in &s.symbols {
        let lo = kept.len().saturating_sub(window);
        if !kept[lo..].contains(&sym) {
            kept.push(sym);
        }
    }
    Sequence {
        symbols: kept,
        alphabet_size: s.alphabet_size,
    }
}

/// Maximum-length `l`-regular subsequence for `l <= 3`, with the default cap.
pub fn longest_l_regular_subsequence(s: &Sequence, l: usize) -> Result<Sequence, SequenceError> {
    longest_l_regular_subsequence_with_cap(s, l, DEFAULT_EXACT_CAP)
}

/// Dynamic program over states "last `l-1` kept symbols".
pub fn longest_l_regular_subsequence_with_cap(
    s: &Sequence,
    l: usize,
    cap: usize,
) -> Result<Sequence, SequenceError> {
    if !(1..=3).contains(&l) {
        return Err(SequenceError::UnsupportedRegularity(l));
    }
    if s.len() > cap {
        return Err(SequenceError::CapExceeded { len: s.len(), cap });
    }
    if l == 1 {
        return Ok(s.clone());
    }

    // State: (second-to-last kept, last kept). For l = 2 only `last` matters.
    type State = (Option<Symbol>, Option<Symbol>);
    // Back-pointer arena: (position, parent node).
    let mut nodes: Vec<(usize, Option<usize>)> = Vec::new();
    let mut best: BTreeMap<State, (usize, Option<usize>)> = BTreeMap::new();
    best.insert((None, None), (0, None));

    for (i, &sym) in s.symbols.iter().enumerate() {
        let mut next = best.clone();
        for (&(prev, last), &(len, node)) in &best {
            let blocked = last == Some(sym) || (l == 3 && prev == Some(sym));
            if blocked {
                continue;
            }
            let state = if l == 3 {
                (last, Some(sym))
            } else {
                (None, Some(sym))
            };
            let better = next.get(&state).is_none_or(|&(cur, _)| len + 1 > cur);
            if better {
                nodes.push((i, node));
                next.insert(state, (len + 1, Some(nodes.len() - 1)));
            }
        }
        best = next;
    }

    let (_, &(_, mut node)) = best
        .iter()
        .max_by_key(|(_, &(len, _))| len)
        .expect("start state is always present");
    let mut positions = Vec::new();
    while let Some(n) = node {
        positions.push(nodes[n].0);
        node = nodes[n].1;
    }
    positions.reverse();
    Ok(s.subsequence(&positions))
}

/// Token <-> id table for the text format (ids in first-occurrence order).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    ids: HashMap<String, Symbol>,
    tokens: Vec<String>,
}

impl SymbolTable {
    pub fn intern(&mut self, token: &str) -> Symbol {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.tokens.len() as Symbol;
        self.ids.insert(token.to_owned(), id);
        self.tokens.push(token.to_owned());
        id
    }

    pub fn token(&self, id: Symbol) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Parses the sequence text format: one sequence per line, whitespace
/// separated tokens. Blank lines and lines starting with `#` are skipped.
/// All sequences share one table and therefore one alphabet.
pub fn parse_sequences(text: &str) -> (Vec<Sequence>, SymbolTable) {
    let mut table = SymbolTable::default();
    let raw: Vec<Vec<Symbol>> = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(|line| line.split_whitespace().map(|tok| table.intern(tok)).collect())
        .collect();
    let alphabet_size = table.len() as u32;
    let seqs = raw
        .into_iter()
        .map(|symbols| Sequence {
            symbols,
            alphabet_size,
        })
        .collect();
    (seqs, table)
}

/// Writes a sequence as one line, using `table` tokens when given.
pub fn format_sequence(s: &Sequence, table: Option<&SymbolTable>) -> String {
    s.symbols
        .iter()
        .map(|&id| match table.and_then(|t| t.token(id)) {
            Some(tok) => tok.to_owned(),
            None => id.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
