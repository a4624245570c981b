//! Canonical-order generation of every well-formed program, and the Goldbach
//! witness search.
//!
//! Programs are ordered by (length, lexicographic over the numeric symbol
//! codes). Generation is by recursive construction with bracket-balance
//! pruning rather than generate-and-filter, and any position in the stream
//! can be reached directly by unranking against a completion-count table, so
//! long censuses can be chunked across workers or resumed from a one-line
//! cursor.

use std::fmt;

use thiserror::Error;

use crate::vm::{Dialect, Instruction, Program};

/// Completion counts for the balanced-bracket language: `count(rem, depth)`
/// is the number of ways to finish a string with `rem` symbols left to place
/// and `depth` open brackets.
#[derive(Debug, Clone)]
struct CountTable {
    /// `counts[rem][depth]`, depth ranging over 0..=rem.
    counts: Vec<Vec<u128>>,
}

impl CountTable {
    fn new(dialect: Dialect, input_free: bool, max_len: u32) -> CountTable {
        let n = max_len as usize;
        let neutrals = neutral_symbols(dialect, input_free).len() as u128;
        let mut counts: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
        counts.push(vec![1u128]); // rem = 0: complete only at depth 0
        for rem in 1..=n {
            let mut row = vec![0u128; rem + 1];
            for (depth, slot) in row.iter_mut().enumerate() {
                let prev = &counts[rem - 1];
                let mut total = neutrals * prev.get(depth).copied().unwrap_or(0);
                total += prev.get(depth + 1).copied().unwrap_or(0); // open
                if depth > 0 {
                    total += prev.get(depth - 1).copied().unwrap_or(0); // close
                }
                *slot = total;
            }
            counts.push(row);
        }
        CountTable { counts }
    }

    fn completions(&self, rem: usize, depth: usize) -> u128 {
        self.counts
            .get(rem)
            .and_then(|row| row.get(depth))
            .copied()
            .unwrap_or(0)
    }

    fn count_len(&self, n: usize) -> u128 {
        self.completions(n, 0)
    }
}

fn neutral_symbols(dialect: Dialect, input_free: bool) -> Vec<Instruction> {
    let mut symbols = Vec::new();
    for code in 0..dialect.symbol_count() {
        let i = Instruction::from_code(code, dialect).unwrap();
        if matches!(i, Instruction::Open | Instruction::Close) {
            continue;
        }
        if input_free && i == Instruction::Read {
            continue;
        }
        symbols.push(i);
    }
    symbols
}

/// Number of well-formed programs of length exactly `n`, computed
/// combinatorially (balanced-bracket strings over the dialect's neutral
/// symbols plus one bracket pair).
pub fn count_valid(n: u32, dialect: Dialect, input_free: bool) -> u128 {
    CountTable::new(dialect, input_free, n).count_len(n as usize)
}

/// Total number of well-formed programs of length `<= max_len`.
pub fn count_valid_upto(max_len: u32, dialect: Dialect, input_free: bool) -> u128 {
    let table = CountTable::new(dialect, input_free, max_len);
    (0..=max_len as usize).map(|n| table.count_len(n)).sum()
}

/// A resumable position in the canonical stream: the program of rank `index`
/// among well-formed programs of exactly `length` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCursor {
    pub dialect: Dialect,
    pub length: u32,
    pub index: u128,
}

impl EnumerationCursor {
    pub fn start(dialect: Dialect) -> EnumerationCursor {
        EnumerationCursor {
            dialect,
            length: 0,
            index: 0,
        }
    }

    /// One-line serialization, `dialect:length:index` in decimal.
    pub fn serialize(&self) -> String {
        format!("{}:{}:{}", self.dialect, self.length, self.index)
    }

    pub fn parse(s: &str) -> Result<EnumerationCursor, CursorParseError> {
        let mut parts = s.trim().split(':');
        let dialect = parts
            .next()
            .and_then(Dialect::parse)
            .ok_or(CursorParseError)?;
        let length = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or(CursorParseError)?;
        let index = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or(CursorParseError)?;
        if parts.next().is_some() {
            return Err(CursorParseError);
        }
        Ok(EnumerationCursor {
            dialect,
            length,
            index,
        })
    }
}

impl fmt::Display for EnumerationCursor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("malformed cursor; expected dialect:length:index")]
pub struct CursorParseError;

/// Ordered stream of every well-formed program of length `<= max_len`,
/// optionally restricted to input-free programs (no `read`).
pub struct ProgramEnumerator {
    dialect: Dialect,
    input_free: bool,
    max_len: u32,
    table: CountTable,
    cursor: EnumerationCursor,
    /// Symbol codes of the next program to yield, or None when the stream at
    /// the current length is exhausted / not yet materialized.
    current: Option<Vec<u8>>,
}

impl ProgramEnumerator {
    pub fn new(max_len: u32, dialect: Dialect, input_free: bool) -> ProgramEnumerator {
        Self::from_cursor(EnumerationCursor::start(dialect), max_len, input_free)
    }

    /// Resume from a cursor; the stream continues exactly where a previous
    /// enumeration with the same parameters left off.
    pub fn from_cursor(
        cursor: EnumerationCursor,
        max_len: u32,
        input_free: bool,
    ) -> ProgramEnumerator {
        let table = CountTable::new(cursor.dialect, input_free, max_len);
        let mut e = ProgramEnumerator {
            dialect: cursor.dialect,
            input_free,
            max_len,
            table,
            cursor,
            current: None,
        };
        e.seek();
        e
    }

    /// Cursor naming the next program this enumerator will yield.
    pub fn cursor(&self) -> EnumerationCursor {
        self.cursor
    }

    /// Advance `cursor` to the first populated position at or after it, and
    /// materialize the symbol string there by unranking.
    fn seek(&mut self) {
        loop {
            if self.cursor.length > self.max_len {
                self.current = None;
                return;
            }
            let len_total = self.table.count_len(self.cursor.length as usize);
            if self.cursor.index >= len_total {
                self.cursor.length += 1;
                self.cursor.index = 0;
                continue;
            }
            self.current = Some(self.unrank(self.cursor.length as usize, self.cursor.index));
            return;
        }
    }

    /// Symbol codes of the program of rank `index` at exactly `length`.
    fn unrank(&self, length: usize, mut index: u128) -> Vec<u8> {
        let mut codes = Vec::with_capacity(length);
        let mut depth = 0usize;
        for pos in 0..length {
            let rem = length - pos - 1;
            for code in 0..self.dialect.symbol_count() {
                if self.input_free && code == Instruction::Read.code() {
                    continue;
                }
                let next_depth = match code {
                    c if c == Instruction::Open.code() => depth + 1,
                    c if c == Instruction::Close.code() => {
                        if depth == 0 {
                            continue;
                        }
                        depth - 1
                    }
                    _ => depth,
                };
                if next_depth > rem {
                    continue;
                }
                let ways = self.table.completions(rem, next_depth);
                if index < ways {
                    codes.push(code);
                    depth = next_depth;
                    break;
                }
                index -= ways;
            }
        }
        debug_assert_eq!(codes.len(), length);
        codes
    }

    /// In-place successor within the current length; false when exhausted.
    fn advance(&mut self) -> bool {
        let codes = match &mut self.current {
            Some(c) => c,
            None => return false,
        };
        // Depth before each position, so carries can resume mid-string.
        let len = codes.len();
        if len == 0 {
            return false;
        }
        let mut depths = Vec::with_capacity(len);
        let mut d = 0usize;
        for &c in codes.iter() {
            depths.push(d);
            if c == Instruction::Open.code() {
                d += 1;
            } else if c == Instruction::Close.code() {
                d = d.saturating_sub(1);
            }
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            let depth = depths[pos];
            let rem = len - pos - 1;
            let mut found = None;
            for code in codes[pos] + 1..self.dialect.symbol_count() {
                if self.input_free && code == Instruction::Read.code() {
                    continue;
                }
                let next_depth = match code {
                    c if c == Instruction::Open.code() => depth + 1,
                    c if c == Instruction::Close.code() => {
                        if depth == 0 {
                            continue;
                        }
                        depth - 1
                    }
                    _ => depth,
                };
                if next_depth > rem || self.table.completions(rem, next_depth) == 0 {
                    continue;
                }
                found = Some((code, next_depth));
                break;
            }
            if let Some((code, mut depth)) = found {
                codes[pos] = code;
                // Fill the suffix with the lexicographically least completion.
                for fill in pos + 1..len {
                    let rem = len - fill - 1;
                    for code in 0..self.dialect.symbol_count() {
                        if self.input_free && code == Instruction::Read.code() {
                            continue;
                        }
                        let next_depth = match code {
                            c if c == Instruction::Open.code() => depth + 1,
                            c if c == Instruction::Close.code() => {
                                if depth == 0 {
                                    continue;
                                }
                                depth - 1
                            }
                            _ => depth,
                        };
                        if next_depth > rem || self.table.completions(rem, next_depth) == 0 {
                            continue;
                        }
                        codes[fill] = code;
                        depth = next_depth;
                        break;
                    }
                }
                return true;
            }
        }
    }
}

impl Iterator for ProgramEnumerator {
    type Item = Program;

    fn next(&mut self) -> Option<Program> {
        let codes = self.current.as_ref()?.clone();
        let instructions = codes
            .iter()
            .map(|&c| Instruction::from_code(c, self.dialect).unwrap())
            .collect();
        let program = Program::from_instructions_unchecked(self.dialect, instructions);
        // Advance.
        self.cursor.index += 1;
        if !self.advance() {
            self.cursor.length += 1;
            self.cursor.index = 0;
            self.current = None;
            self.seek();
        }
        Some(program)
    }
}

/// Convenience wrapper matching the operation name: all well-formed programs
/// of length `<= max_len` in canonical order.
pub fn enumerate_programs(max_len: u32, dialect: Dialect, input_free: bool) -> ProgramEnumerator {
    ProgramEnumerator::new(max_len, dialect, input_free)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GoldbachError {
    #[error("goldbach witness is defined for even integers greater than 2")]
    InvalidInput,
    /// Never observed below 4 * 10^18; kept so the search is total.
    #[error("no decomposition found for {0}")]
    NoWitness(u64),
}

/// Sieve of Eratosthenes over 0..=limit.
fn sieve(limit: usize) -> Vec<bool> {
    let mut is_prime = vec![true; limit + 1];
    is_prime[0] = false;
    if limit >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2usize;
    while p * p <= limit {
        if is_prime[p] {
            let mut m = p * p;
            while m <= limit {
                is_prime[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    is_prime
}

/// Smallest-p decomposition of an even `n > 2` as a sum of two primes, both
/// certified by a deterministic sieve.
///
/// The classical conjecture is stated for even integers; odd integers have
/// no such guarantee (11 is a counterexample to the loose phrasing) and are
/// rejected as invalid input.
pub fn goldbach_witness(n: u64) -> Result<(u64, u64), GoldbachError> {
    if n <= 2 || n % 2 != 0 {
        return Err(GoldbachError::InvalidInput);
    }
    let is_prime = sieve(n as usize);
    witness_with_sieve(n, &is_prime)
}

fn witness_with_sieve(n: u64, is_prime: &[bool]) -> Result<(u64, u64), GoldbachError> {
    for p in 2..=n / 2 {
        if is_prime[p as usize] && is_prime[(n - p) as usize] {
            return Ok((p, n - p));
        }
    }
    Err(GoldbachError::NoWitness(n))
}

/// Outcome of scanning every even integer in `4..=limit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GoldbachScan {
    pub checked: u64,
    /// The largest minimal `p` needed anywhere in the range.
    pub max_min_p: u64,
    /// An `n` attaining it.
    pub hardest_n: u64,
}

/// Verify that every even integer in `4..=limit` has a two-prime
/// decomposition. A check of the search, not a proof of the conjecture.
pub fn goldbach_scan(limit: u64) -> Result<GoldbachScan, GoldbachError> {
    if limit < 4 {
        return Err(GoldbachError::InvalidInput);
    }
    let is_prime = sieve(limit as usize);
    let mut checked = 0;
    let mut max_min_p = 0;
    let mut hardest_n = 0;
    let mut n = 4u64;
    while n <= limit {
        let (p, _) = witness_with_sieve(n, &is_prime)?;
        checked += 1;
        if p > max_min_p {
            max_min_p = p;
            hardest_n = n;
        }
        n += 2;
    }
    Ok(GoldbachScan {
        checked,
        max_min_p,
        hardest_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: generate every string over the alphabet and keep
    /// the well-formed ones. Independent of the pruning construction.
    fn brute_force(max_len: u32, dialect: Dialect, input_free: bool) -> Vec<String> {
        let mut all = Vec::new();
        let symbols: Vec<char> = (0..dialect.symbol_count())
            .map(|c| Instruction::from_code(c, dialect).unwrap().to_char())
            .collect();
        for len in 0..=max_len as usize {
            let mut indices = vec![0usize; len];
            loop {
                let s: String = indices.iter().map(|&i| symbols[i]).collect();
                if let Ok(p) = Program::parse(&s, dialect) {
                    if !(input_free && p.contains_read()) {
                        all.push(s);
                    }
                }
                // Odometer.
                let mut pos = len;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < symbols.len() {
                        break;
                    }
                    indices[pos] = 0;
                }
                if indices.iter().all(|&i| i == 0) {
                    break;
                }
                if len == 0 {
                    break;
                }
            }
        }
        all
    }

    #[test]
    fn frozen_counts_from_brute_force() {
        // Derived by brute force over all strings of each length.
        assert_eq!(count_valid(0, Dialect::A, false), 1);
        assert_eq!(count_valid(1, Dialect::A, false), 6);
        assert_eq!(count_valid(2, Dialect::A, false), 37);
        assert_eq!(count_valid(3, Dialect::A, false), 234);
        let upto2: u128 = count_valid_upto(2, Dialect::A, false);
        assert_eq!(upto2, 44);
    }

    #[test]
    fn counts_match_brute_force_oracle() {
        for dialect in [Dialect::A, Dialect::B] {
            for input_free in [false, true] {
                let oracle = brute_force(4, dialect, input_free);
                for n in 0..=4u32 {
                    let expected = oracle.iter().filter(|s| s.chars().count() == n as usize).count();
                    assert_eq!(
                        count_valid(n, dialect, input_free),
                        expected as u128,
                        "n={n} dialect={dialect} input_free={input_free}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force_exactly() {
        for dialect in [Dialect::A, Dialect::B] {
            for input_free in [false, true] {
                let expected = brute_force(4, dialect, input_free);
                let got: Vec<String> = enumerate_programs(4, dialect, input_free)
                    .map(|p| p.text())
                    .collect();
                assert_eq!(got, expected, "dialect={dialect} input_free={input_free}");
            }
        }
    }

    #[test]
    fn max_len_zero_yields_only_empty() {
        let all: Vec<Program> = enumerate_programs(0, Dialect::A, false).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn max_len_one_dialect_a() {
        let all: Vec<String> = enumerate_programs(1, Dialect::A, false)
            .map(|p| p.text())
            .collect();
        assert_eq!(all, vec!["", "+", "-", "<", ">", ",", "."]);
    }

    #[test]
    fn cursor_resumption_is_seamless() {
        let full: Vec<String> = enumerate_programs(3, Dialect::A, false)
            .map(|p| p.text())
            .collect();
        for split in [0, 1, 7, 20, full.len() - 1] {
            let mut first = enumerate_programs(3, Dialect::A, false);
            let mut head: Vec<String> = Vec::new();
            for _ in 0..split {
                head.push(first.next().unwrap().text());
            }
            let cursor = EnumerationCursor::parse(&first.cursor().serialize()).unwrap();
            let tail: Vec<String> = ProgramEnumerator::from_cursor(cursor, 3, false)
                .map(|p| p.text())
                .collect();
            let mut joined = head;
            joined.extend(tail);
            assert_eq!(joined, full, "split at {split}");
        }
    }

    #[test]
    fn cursor_serialization_roundtrip() {
        let c = EnumerationCursor {
            dialect: Dialect::B,
            length: 7,
            index: 123456,
        };
        assert_eq!(c.serialize(), "B:7:123456");
        assert_eq!(EnumerationCursor::parse("B:7:123456").unwrap(), c);
        assert!(EnumerationCursor::parse("Q:1:2").is_err());
        assert!(EnumerationCursor::parse("A:1").is_err());
    }

    #[test]
    fn unranking_agrees_with_iteration() {
        let table_iter: Vec<String> = enumerate_programs(3, Dialect::B, true)
            .map(|p| p.text())
            .collect();
        // Jump straight to each (length, index) and compare.
        let mut seen = Vec::new();
        for len in 0..=3u32 {
            let total = count_valid(len, Dialect::B, true);
            let mut i = 0u128;
            while i < total {
                let cursor = EnumerationCursor {
                    dialect: Dialect::B,
                    length: len,
                    index: i,
                };
                let mut e = ProgramEnumerator::from_cursor(cursor, 3, true);
                seen.push(e.next().unwrap().text());
                i += 1;
            }
        }
        assert_eq!(seen, table_iter);
    }

    #[test]
    fn goldbach_examples() {
        assert_eq!(goldbach_witness(4).unwrap(), (2, 2));
        assert_eq!(goldbach_witness(10).unwrap(), (3, 7));
        assert_eq!(goldbach_witness(100).unwrap(), (3, 97));
        assert_eq!(goldbach_witness(11), Err(GoldbachError::InvalidInput));
        assert_eq!(goldbach_witness(2), Err(GoldbachError::InvalidInput));
    }

    #[test]
    fn goldbach_scan_small_range() {
        let scan = goldbach_scan(1000).unwrap();
        assert_eq!(scan.checked, 499);
        assert!(scan.max_min_p >= 3);
    }
}
