//! Bounded Kolmogorov complexity over MTL, by exhaustive search.
//!
//! True complexity is uncomputable; what is measured here is K_{L,f}(s): the
//! length in instructions of the shortest input-free program of length <= L
//! that halts within fuel f with output exactly s. Every claim the module
//! makes is stated relative to those bounds, which is exactly what makes it
//! checkable: the counting bound, fuel monotonicity, dialect invariance, and
//! the Berry-style short-description demonstration all become finite tests.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::enumerate::{count_valid, count_valid_upto, EnumerationCursor, ProgramEnumerator};
use crate::vm::{execute, literal_printer, Dialect, MachineConfig, Program};

/// Whether an entry's program is known minimal within the table's bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryStatus {
    /// Every shorter program (and every equal-length program earlier in
    /// canonical order) ran under this fuel without producing the output.
    Exact,
    /// A producer is known but minimality was not established.
    UpperBoundOnly,
}

impl EntryStatus {
    fn as_str(self) -> &'static str {
        match self {
            EntryStatus::Exact => "exact",
            EntryStatus::UpperBoundOnly => "upper",
        }
    }
}

/// First canonical producer of one output string.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub program: Program,
    pub status: EntryStatus,
}

impl TableEntry {
    pub fn k(&self) -> u32 {
        self.program.len() as u32
    }
}

/// Map from output byte string to its shortest known producing program,
/// together with the search bounds that give the numbers meaning.
#[derive(Debug, Clone)]
pub struct ComplexityTable {
    pub dialect: Dialect,
    pub max_len: u32,
    pub fuel: u64,
    /// Tables are built over input-free programs only.
    pub input_free: bool,
    /// Set when a resource budget stopped the search early.
    pub partial: bool,
    entries: HashMap<Vec<u8>, TableEntry>,
}

impl ComplexityTable {
    pub fn k_of(&self, s: &[u8]) -> Option<&TableEntry> {
        self.entries.get(s)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &TableEntry)> {
        self.entries.iter()
    }

    /// Entries sorted by (K, output hex), the canonical file order.
    pub fn sorted_entries(&self) -> Vec<(&Vec<u8>, &TableEntry)> {
        let mut rows: Vec<_> = self.entries.iter().collect();
        rows.sort_by(|(sa, ea), (sb, eb)| (ea.k(), *sa).cmp(&(eb.k(), *sb)));
        rows
    }

    /// Largest n such that every output with K <= n is certainly present,
    /// i.e. the table's own desk-scale horizon (just `max_len` when the
    /// search completed).
    pub fn complete_horizon(&self) -> u32 {
        if self.partial {
            0
        } else {
            self.max_len
        }
    }

    /// Line-oriented persistence: a header naming the search bounds, then
    /// one `K= out= prog= status=` record per entry sorted by (K, out hex).
    pub fn write_to(&self, mut w: impl Write) -> io::Result<()> {
        write!(
            w,
            "ulab-ktable v1 dialect={} max_len={} fuel={} input_free={}",
            self.dialect,
            self.max_len,
            self.fuel,
            if self.input_free { 1 } else { 0 }
        )?;
        if self.partial {
            write!(w, " partial=true")?;
        }
        writeln!(w)?;
        for (s, e) in self.sorted_entries() {
            writeln!(
                w,
                "K={} out={} prog={} status={}",
                e.k(),
                hex(s),
                e.program.text(),
                e.status.as_str()
            )?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<ComplexityTable, TableFormatError> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or(TableFormatError::MissingHeader)?
            .map_err(TableFormatError::Io)?;
        let mut fields = header.split(' ');
        if fields.next() != Some("ulab-ktable") || fields.next() != Some("v1") {
            return Err(TableFormatError::MissingHeader);
        }
        let mut dialect = None;
        let mut max_len = None;
        let mut fuel = None;
        let mut input_free = None;
        let mut partial = false;
        for field in fields {
            let (key, value) = field.split_once('=').ok_or_else(|| bad(&header))?;
            match key {
                "dialect" => dialect = Dialect::parse(value),
                "max_len" => max_len = value.parse().ok(),
                "fuel" => fuel = value.parse().ok(),
                "input_free" => input_free = Some(value == "1"),
                "partial" => partial = value == "true",
                _ => return Err(bad(&header)),
            }
        }
        let dialect = dialect.ok_or_else(|| bad(&header))?;
        let mut table = ComplexityTable {
            dialect,
            max_len: max_len.ok_or_else(|| bad(&header))?,
            fuel: fuel.ok_or_else(|| bad(&header))?,
            input_free: input_free.ok_or_else(|| bad(&header))?,
            partial,
            entries: HashMap::new(),
        };
        for line in lines {
            let line = line.map_err(TableFormatError::Io)?;
            if line.is_empty() {
                continue;
            }
            let mut k = None;
            let mut out = None;
            let mut prog = None;
            let mut status = None;
            for field in line.split(' ') {
                let (key, value) = field.split_once('=').ok_or_else(|| bad(&line))?;
                match key {
                    "K" => k = value.parse::<u32>().ok(),
                    "out" => out = unhex(value),
                    "prog" => {
                        prog = Some(
                            Program::parse(value, dialect).map_err(|_| bad(&line))?,
                        )
                    }
                    "status" => {
                        status = match value {
                            "exact" => Some(EntryStatus::Exact),
                            "upper" => Some(EntryStatus::UpperBoundOnly),
                            _ => None,
                        }
                    }
                    _ => return Err(bad(&line)),
                }
            }
            let program = prog.ok_or_else(|| bad(&line))?;
            let k = k.ok_or_else(|| bad(&line))?;
            if k != program.len() as u32 {
                return Err(bad(&line));
            }
            table.entries.insert(
                out.ok_or_else(|| bad(&line))?,
                TableEntry {
                    program,
                    status: status.ok_or_else(|| bad(&line))?,
                },
            );
        }
        Ok(table)
    }
}

fn bad(line: &str) -> TableFormatError {
    TableFormatError::MalformedLine(line.to_string())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> Option<Vec<u8>> {
    if s.len() % 2 != 0 {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
        .collect()
}

#[derive(Debug, Error)]
pub enum TableFormatError {
    #[error("missing or malformed ulab-ktable header")]
    MissingHeader,
    #[error("malformed table line: {0}")]
    MalformedLine(String),
    #[error(transparent)]
    Io(io::Error),
}

/// Optional limits on a census; when one trips, the search stops at a chunk
/// boundary and the table collected so far is returned marked partial.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchBudget {
    pub max_entries: Option<usize>,
    pub max_wall: Option<Duration>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    /// 0 means "use the current rayon pool / all cores".
    pub workers: usize,
    pub budget: SearchBudget,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("resource budget exceeded; partial table returned")]
    ResourceBudgetExceeded { partial: Box<ComplexityTable> },
}

/// Programs per unranked work unit. Fixed regardless of worker count so that
/// chunk boundaries (and therefore budget cut points) never depend on
/// parallelism.
const CHUNK: u128 = 8_192;
/// Chunks per merge round; the budget is checked between rounds.
const GROUP: usize = 64;

/// Exhaustively run every input-free well-formed program of length
/// `<= max_len` under `fuel`, recording for each distinct halting output the
/// first producer in canonical (length, lex) order.
pub fn exhaustive_k(max_len: u32, fuel: u64, dialect: Dialect) -> ComplexityTable {
    match exhaustive_k_with(max_len, fuel, dialect, SearchOptions::default()) {
        Ok(t) => t,
        Err(SearchError::ResourceBudgetExceeded { .. }) => unreachable!("no budget configured"),
    }
}

/// A chunk of the canonical stream: `count` programs starting at `start`.
#[derive(Debug, Clone, Copy)]
struct Chunk {
    start: EnumerationCursor,
    count: u128,
}

fn chunks_for(max_len: u32, dialect: Dialect, input_free: bool) -> Vec<Chunk> {
    let mut chunks = Vec::new();
    for length in 0..=max_len {
        let total = count_valid(length, dialect, input_free);
        let mut index = 0u128;
        while index < total {
            let count = CHUNK.min(total - index);
            chunks.push(Chunk {
                start: EnumerationCursor {
                    dialect,
                    length,
                    index,
                },
                count,
            });
            index += count;
        }
    }
    chunks
}

/// Canonical rank of a program: shorter first, then lexicographic by codes.
type Rank = (u32, Vec<u8>);

fn run_chunk(chunk: Chunk, max_len: u32, fuel: u64) -> HashMap<Vec<u8>, (Rank, Program)> {
    let cfg = MachineConfig::with_fuel(fuel);
    let mut found: HashMap<Vec<u8>, (Rank, Program)> = HashMap::new();
    let e = ProgramEnumerator::from_cursor(chunk.start, max_len, true);
    for program in e.take(chunk.count as usize) {
        if let crate::vm::ExecutionOutcome::Halted { output, .. } = execute(&program, &[], cfg) {
            // Within a chunk the stream is already canonical, so first
            // producer wins.
            found
                .entry(output)
                .or_insert_with(|| ((program.len() as u32, program.codes()), program));
        }
    }
    found
}

fn merge(
    into: &mut HashMap<Vec<u8>, (Rank, Program)>,
    from: HashMap<Vec<u8>, (Rank, Program)>,
) {
    for (output, candidate) in from {
        match into.get_mut(&output) {
            Some(existing) => {
                if candidate.0 < existing.0 {
                    *existing = candidate;
                }
            }
            None => {
                into.insert(output, candidate);
            }
        }
    }
}

pub fn exhaustive_k_with(
    max_len: u32,
    fuel: u64,
    dialect: Dialect,
    opts: SearchOptions,
) -> Result<ComplexityTable, SearchError> {
    let started = Instant::now();
    let chunks = chunks_for(max_len, dialect, true);
    let mut best: HashMap<Vec<u8>, (Rank, Program)> = HashMap::new();
    let mut exceeded = false;

    for group in chunks.chunks(GROUP) {
        let results = run_group(group, max_len, fuel, opts.workers);
        for r in results {
            merge(&mut best, r);
        }
        if let Some(max_entries) = opts.budget.max_entries {
            if best.len() > max_entries {
                exceeded = true;
            }
        }
        if let Some(max_wall) = opts.budget.max_wall {
            if started.elapsed() > max_wall {
                exceeded = true;
            }
        }
        if exceeded {
            break;
        }
    }

    let table = ComplexityTable {
        dialect,
        max_len,
        fuel,
        input_free: true,
        partial: exceeded,
        entries: best
            .into_iter()
            .map(|(output, (_, program))| {
                (
                    output,
                    TableEntry {
                        program,
                        // Groups complete in canonical order, so every
                        // recorded producer had its whole prefix searched.
                        status: EntryStatus::Exact,
                    },
                )
            })
            .collect(),
    };
    if exceeded {
        Err(SearchError::ResourceBudgetExceeded {
            partial: Box::new(table),
        })
    } else {
        Ok(table)
    }
}

#[cfg(feature = "parallel")]
fn run_group(
    group: &[Chunk],
    max_len: u32,
    fuel: u64,
    workers: usize,
) -> Vec<HashMap<Vec<u8>, (Rank, Program)>> {
    use rayon::prelude::*;
    if workers == 1 {
        return group
            .iter()
            .map(|&c| run_chunk(c, max_len, fuel))
            .collect();
    }
    let work = || {
        group
            .par_iter()
            .map(|&c| run_chunk(c, max_len, fuel))
            .collect()
    };
    if workers == 0 {
        work()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("building a rayon pool");
        pool.install(work)
    }
}

#[cfg(not(feature = "parallel"))]
fn run_group(
    group: &[Chunk],
    max_len: u32,
    fuel: u64,
    _workers: usize,
) -> Vec<HashMap<Vec<u8>, (Rank, Program)>> {
    group
        .iter()
        .map(|&c| run_chunk(c, max_len, fuel))
        .collect()
}

/// Length of the straight-line printer for `s`: the trivial upper bound on
/// K(s) for any table whose bounds reach it.
pub fn k_upper_bound(s: &[u8]) -> u32 {
    literal_printer(s).len() as u32
}

/// One row of the invariance comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceRow {
    pub s: Vec<u8>,
    pub k_a: u32,
    pub k_b: u32,
}

/// Dialect A vs dialect B complexity, for every string Exact in both tables.
///
/// Two finite-translator inequalities must hold: K_B <= K_A because every
/// A-program is a B-program unchanged, and K_A <= 3 K_B because macro
/// expansion gives an A-witness at most three times as long.
#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub rows: Vec<InvarianceRow>,
    pub max_gap: i64,
    pub violations: Vec<InvarianceRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("tables were built under different fuel budgets")]
pub struct IncompatibleTables;

pub fn invariance_report(
    table_a: &ComplexityTable,
    table_b: &ComplexityTable,
) -> Result<InvarianceReport, IncompatibleTables> {
    if table_a.fuel != table_b.fuel {
        return Err(IncompatibleTables);
    }
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut max_gap = 0i64;
    for (s, ea) in table_a.sorted_entries() {
        if ea.status != EntryStatus::Exact {
            continue;
        }
        let Some(eb) = table_b.k_of(s) else { continue };
        if eb.status != EntryStatus::Exact {
            continue;
        }
        let row = InvarianceRow {
            s: s.clone(),
            k_a: ea.k(),
            k_b: eb.k(),
        };
        max_gap = max_gap.max(row.k_a as i64 - row.k_b as i64);
        if !(row.k_b <= row.k_a && row.k_a <= 3 * row.k_b) {
            violations.push(row.clone());
        }
        rows.push(row);
    }
    Ok(InvarianceReport {
        rows,
        max_gap,
        violations,
    })
}

/// Pigeonhole check: the number of distinct strings with K(s) <= n cannot
/// exceed the number of input-free well-formed programs of length <= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingBoundReport {
    pub n: u32,
    pub strings_with_k_at_most_n: u128,
    pub programs_up_to_n: u128,
    pub holds: bool,
}

pub fn counting_bound_check(table: &ComplexityTable, n: u32) -> CountingBoundReport {
    assert!(n <= table.max_len, "n exceeds the table's search bound");
    let lhs = table
        .iter()
        .filter(|(_, e)| e.status == EntryStatus::Exact && e.k() <= n)
        .count() as u128;
    let rhs = count_valid_upto(n, table.dialect, true);
    CountingBoundReport {
        n,
        strings_with_k_at_most_n: lhs,
        programs_up_to_n: rhs,
        holds: lhs <= rhs,
    }
}

/// More fuel can only help: every output found at low fuel must persist at
/// high fuel with K no larger.
#[derive(Debug, Clone)]
pub struct FuelMonotonicityReport {
    pub shared: usize,
    /// Strings in the low table missing from the high table (must be empty).
    pub lost: Vec<Vec<u8>>,
    /// Shared strings where K increased (must be empty).
    pub regressions: Vec<Vec<u8>>,
    /// Strings only the high-fuel table resolved.
    pub gained: usize,
    /// Shared strings with strictly smaller K at high fuel.
    pub strict_improvements: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FuelCheckError {
    #[error("tables differ in dialect or max_len")]
    Mismatched,
    #[error("low-fuel table has the larger budget")]
    NotOrdered,
}

pub fn fuel_monotonicity_check(
    low: &ComplexityTable,
    high: &ComplexityTable,
) -> Result<FuelMonotonicityReport, FuelCheckError> {
    if low.dialect != high.dialect || low.max_len != high.max_len {
        return Err(FuelCheckError::Mismatched);
    }
    if low.fuel > high.fuel {
        return Err(FuelCheckError::NotOrdered);
    }
    let mut shared = 0;
    let mut lost = Vec::new();
    let mut regressions = Vec::new();
    let mut strict_improvements = 0;
    for (s, e_low) in low.iter() {
        match high.k_of(s) {
            None => lost.push(s.clone()),
            Some(e_high) => {
                shared += 1;
                if e_high.k() > e_low.k() {
                    regressions.push(s.clone());
                } else if e_high.k() < e_low.k() {
                    strict_improvements += 1;
                }
            }
        }
    }
    let gained = high.len() - shared;
    let holds = lost.is_empty() && regressions.is_empty();
    Ok(FuelMonotonicityReport {
        shared,
        lost,
        regressions,
        gained,
        strict_improvements,
        holds,
    })
}

/// Bits assigned to the fixed part of the description "the first string with
/// bounded complexity above B". Stands in for the constant-size program
/// skeleton; only the threshold itself scales, by ceil(log2(B+1)) bits.
pub const DESCRIPTION_OVERHEAD_BITS: u32 = 16;

/// Bits per instruction for the 8-symbol dialect-A alphabet.
pub const BITS_PER_INSTRUCTION: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BerryWitness {
    pub witness: Vec<u8>,
    pub k: u32,
    pub k_bits: u32,
    pub description_bits: u32,
    /// The paradox-flavored fact: the description is shorter than the
    /// complexity it names. Only resource bounds keep this consistent.
    pub description_shorter: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BerryError {
    #[error("no fully resolved string has complexity above the threshold")]
    NoWitness,
}

/// First string s, in (length, lex) order, that is fully resolved by the
/// table (every program up to its literal-printer bound was searched) and
/// has K(s) > threshold.
pub fn berry_demo(threshold: u32, table: &ComplexityTable) -> Result<BerryWitness, BerryError> {
    if table.partial {
        return Err(BerryError::NoWitness);
    }
    let mut resolved: Vec<(&Vec<u8>, &TableEntry)> = table
        .iter()
        .filter(|(s, e)| e.status == EntryStatus::Exact && k_upper_bound(s) <= table.max_len)
        .collect();
    resolved.sort_by(|(sa, _), (sb, _)| (sa.len(), *sa).cmp(&(sb.len(), *sb)));
    for (s, e) in resolved {
        if e.k() > threshold {
            let description_bits = DESCRIPTION_OVERHEAD_BITS + ceil_log2(threshold as u64 + 1);
            let k_bits = e.k() * BITS_PER_INSTRUCTION;
            return Ok(BerryWitness {
                witness: s.clone(),
                k: e.k(),
                k_bits,
                description_bits,
                description_shorter: description_bits < k_bits,
            });
        }
    }
    Err(BerryError::NoWitness)
}

fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x >= 1);
    if x == 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(9), 4);
    }

    fn small_table() -> ComplexityTable {
        exhaustive_k(4, 100, Dialect::A)
    }

    #[test]
    fn frozen_small_k_values() {
        // Derived by exhaustive search over all programs of length <= 2.
        let t = small_table();
        assert_eq!(t.k_of(&[]).unwrap().k(), 0);
        assert_eq!(t.k_of(&[0x00]).unwrap().k(), 1);
        assert_eq!(t.k_of(&[0x00]).unwrap().program.text(), ".");
        assert_eq!(t.k_of(&[0x01]).unwrap().k(), 2);
        assert_eq!(t.k_of(&[0x01]).unwrap().program.text(), "+.");
        assert_eq!(t.k_of(&[0xFF]).unwrap().k(), 2);
        assert_eq!(t.k_of(&[0xFF]).unwrap().program.text(), "-.");
        assert_eq!(t.k_of(&[0x00, 0x00]).unwrap().k(), 2);
        assert_eq!(t.k_of(&[0x00, 0x00]).unwrap().program.text(), "..");
    }

    #[test]
    fn partition_independence() {
        let base = exhaustive_k_with(5, 64, Dialect::A, SearchOptions::default()).unwrap();
        for workers in [1, 2, 5] {
            let t = exhaustive_k_with(
                5,
                64,
                Dialect::A,
                SearchOptions {
                    workers,
                    ..Default::default()
                },
            )
            .unwrap();
            let mut a = Vec::new();
            base.write_to(&mut a).unwrap();
            let mut b = Vec::new();
            t.write_to(&mut b).unwrap();
            assert_eq!(a, b, "workers={workers}");
        }
    }

    #[test]
    fn canonical_minimality_spot_check() {
        let t = small_table();
        let cfg = MachineConfig::with_fuel(t.fuel);
        for (s, e) in t.iter() {
            let out = execute(&e.program, &[], cfg);
            assert!(out.halted());
            assert_eq!(out.output(), s.as_slice());
        }
    }

    #[test]
    fn k_never_exceeds_literal_printer_bound() {
        let t = small_table();
        for (s, e) in t.iter() {
            if k_upper_bound(s) <= t.max_len {
                assert!(e.k() <= k_upper_bound(s), "s={s:?}");
            }
        }
    }

    #[test]
    fn k_upper_bound_examples() {
        assert_eq!(k_upper_bound(&[]), 0);
        assert_eq!(k_upper_bound(&[0x00]), 1);
        // Stated construction applied by hand: +++ . then zero-delta .
        assert_eq!(k_upper_bound(&[0x03, 0x03]), 5);
    }

    #[test]
    fn counting_bound_small() {
        let t = small_table();
        let r0 = counting_bound_check(&t, 0);
        assert_eq!(r0.strings_with_k_at_most_n, 1);
        assert_eq!(r0.programs_up_to_n, 1);
        assert!(r0.holds);
        let r1 = counting_bound_check(&t, 1);
        assert_eq!(r1.strings_with_k_at_most_n, 2); // empty and [0x00]
        assert_eq!(r1.programs_up_to_n, 6); // 1 + 5 neutral non-read symbols
        assert!(r1.holds);
        let r2 = counting_bound_check(&t, 2);
        assert_eq!(r2.programs_up_to_n, 1 + 5 + 26);
        assert!(r2.holds);
    }

    #[test]
    fn fuel_monotonicity_small() {
        // "-[.-]" halts in 767 steps emitting 255 bytes, so it is absent at
        // fuel 10 and present at fuel 1000: a strict improvement.
        let slow = Program::parse("-[.-]", Dialect::A).unwrap();
        let out = execute(&slow, &[], MachineConfig::with_fuel(1000));
        assert!(out.halted());
        assert!(out.steps() > 10);
        let low = exhaustive_k(5, 10, Dialect::A);
        let high = exhaustive_k(5, 1000, Dialect::A);
        assert!(low.k_of(out.output()).is_none());
        assert!(high.k_of(out.output()).is_some());
        let report = fuel_monotonicity_check(&low, &high).unwrap();
        assert!(report.holds, "lost={:?}", report.lost);
        assert!(report.gained > 0);
        // Identical fuels give identical tables.
        let again = exhaustive_k(5, 10, Dialect::A);
        let r2 = fuel_monotonicity_check(&low, &again).unwrap();
        assert!(r2.holds);
        assert_eq!(r2.gained, 0);
        assert_eq!(r2.strict_improvements, 0);
    }

    #[test]
    fn invariance_small() {
        let a = exhaustive_k(4, 100, Dialect::A);
        let b = exhaustive_k(4, 100, Dialect::B);
        let report = invariance_report(&a, &b).unwrap();
        assert!(report.violations.is_empty());
        let zero = report
            .rows
            .iter()
            .find(|r| r.s == vec![0x00])
            .expect("0x00 resolved in both");
        assert_eq!(zero.k_a, 1);
        assert_eq!(zero.k_b, 1);
        // Mixed fuels are rejected.
        let b2 = exhaustive_k(4, 99, Dialect::B);
        assert!(invariance_report(&a, &b2).is_err());
    }

    #[test]
    fn macro_expansion_gives_the_invariance_witness() {
        // A B-program using `zero` expands to an A-program at most 3x longer
        // with identical output; this is the constructive side of K_A <= 3 K_B.
        let b = Program::parse("+z.", Dialect::B).unwrap();
        let a = crate::vm::expand_macros(&b);
        assert!(a.len() <= 3 * b.len());
        let cfg = MachineConfig::with_fuel(1000);
        assert_eq!(execute(&a, &[], cfg).output(), execute(&b, &[], cfg).output());
    }

    #[test]
    fn berry_demo_small() {
        let t = exhaustive_k(4, 100, Dialect::A);
        let w0 = berry_demo(0, &t).unwrap();
        assert_eq!(w0.witness, vec![0x00]);
        assert_eq!(w0.k, 1);
        let w1 = berry_demo(1, &t).unwrap();
        assert_eq!(w1.witness, vec![0x01]);
        assert_eq!(w1.k, 2);
        let max_k = t.iter().map(|(_, e)| e.k()).max().unwrap();
        assert_eq!(berry_demo(max_k, &t), Err(BerryError::NoWitness));
    }

    #[test]
    fn budget_produces_partial_table() {
        let err = exhaustive_k_with(
            6,
            100,
            Dialect::A,
            SearchOptions {
                workers: 1,
                budget: SearchBudget {
                    max_entries: Some(1),
                    max_wall: None,
                },
            },
        )
        .unwrap_err();
        let SearchError::ResourceBudgetExceeded { partial } = err;
        assert!(partial.partial);
        assert!(partial.len() >= 1);
    }

    #[test]
    fn table_file_roundtrip() {
        let t = small_table();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("ulab-ktable v1 dialect=A max_len=4 fuel=100 input_free=1\n"));
        assert!(text.contains("K=1 out=00 prog=. status=exact"));
        let back = ComplexityTable::read_from(&buf[..]).unwrap();
        assert_eq!(back.len(), t.len());
        let mut buf2 = Vec::new();
        back.write_to(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }
}
