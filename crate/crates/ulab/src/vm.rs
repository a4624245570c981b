//! The minimal tape language (MTL) and its fuel-bounded interpreter.
//!
//! Dialect A has eight instructions over an unbounded tape of wrapping 8-bit
//! cells; dialect B adds a `zero` instruction that clears the current cell.
//! Every run is total: a step budget ("fuel") turns the halting question into
//! a three-way observable outcome, so higher layers never have to wait on a
//! loop that will not finish.

use std::fmt;

use thiserror::Error;

/// Which instruction alphabet a program is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dialect {
    /// The eight-instruction base language.
    A,
    /// Base language plus `zero` (`z`).
    B,
}

impl Dialect {
    /// Number of symbols in this dialect's alphabet.
    pub fn symbol_count(self) -> u8 {
        match self {
            Dialect::A => 8,
            Dialect::B => 9,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Dialect::A => "A",
            Dialect::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<Dialect> {
        match s {
            "A" => Some(Dialect::A),
            "B" => Some(Dialect::B),
            _ => None,
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One MTL instruction. The discriminant is the instruction's numeric code,
/// which also fixes the canonical alphabet order used by enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Instruction {
    Inc = 0,
    Dec = 1,
    Left = 2,
    Right = 3,
    Open = 4,
    Close = 5,
    Read = 6,
    Write = 7,
    Zero = 8,
}

impl Instruction {
    /// Numeric code, 0..=7 in dialect A, 0..=8 in dialect B.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8, dialect: Dialect) -> Option<Instruction> {
        use Instruction::*;
        let instr = match code {
            0 => Inc,
            1 => Dec,
            2 => Left,
            3 => Right,
            4 => Open,
            5 => Close,
            6 => Read,
            7 => Write,
            8 => Zero,
            _ => return None,
        };
        if instr.code() < dialect.symbol_count() {
            Some(instr)
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        use Instruction::*;
        match self {
            Inc => '+',
            Dec => '-',
            Left => '<',
            Right => '>',
            Open => '[',
            Close => ']',
            Read => ',',
            Write => '.',
            Zero => 'z',
        }
    }

    pub fn from_char(c: char, dialect: Dialect) -> Option<Instruction> {
        use Instruction::*;
        let instr = match c {
            '+' => Inc,
            '-' => Dec,
            '<' => Left,
            '>' => Right,
            '[' => Open,
            ']' => Close,
            ',' => Read,
            '.' => Write,
            'z' => Zero,
            _ => return None,
        };
        if instr.code() < dialect.symbol_count() {
            Some(instr)
        } else {
            None
        }
    }
}

/// Why a string failed to parse as a program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParseError {
    /// A `]` with no matching `[`, or a `[` never closed; the position is the
    /// first offending instruction.
    #[error("unbalanced bracket at position {0}")]
    UnbalancedBracket(usize),
    /// A character outside the dialect's alphabet. Whitespace counts: the
    /// text form is bit-exact, nothing is skipped.
    #[error("unknown symbol at position {0}")]
    UnknownSymbol(usize),
}

/// A validated MTL program: balanced brackets, all instructions in the
/// dialect's alphabet, with bracket matches precomputed at parse time.
///
/// Immutable after construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    dialect: Dialect,
    instructions: Vec<Instruction>,
    /// `jumps[i]` is the matching bracket index for `Open`/`Close`, else `i`.
    jumps: Vec<u32>,
}

impl Program {
    /// Parse the one-character-per-instruction text form. Whitespace and any
    /// other foreign characters are rejected, not skipped.
    pub fn parse(text: &str, dialect: Dialect) -> Result<Program, ParseError> {
        let mut instructions = Vec::with_capacity(text.len());
        for (pos, c) in text.chars().enumerate() {
            match Instruction::from_char(c, dialect) {
                Some(i) => instructions.push(i),
                None => return Err(ParseError::UnknownSymbol(pos)),
            }
        }
        Program::from_instructions(dialect, instructions)
    }

    /// Build a program from already-decoded instructions, validating bracket
    /// balance and alphabet membership.
    pub fn from_instructions(
        dialect: Dialect,
        instructions: Vec<Instruction>,
    ) -> Result<Program, ParseError> {
        for (pos, i) in instructions.iter().enumerate() {
            if i.code() >= dialect.symbol_count() {
                return Err(ParseError::UnknownSymbol(pos));
            }
        }
        let jumps = compute_jumps(&instructions)?;
        Ok(Program {
            dialect,
            instructions,
            jumps,
        })
    }

    /// Build from numeric codes (0..=7 for A, 0..=8 for B).
    pub fn from_codes(codes: &[u8], dialect: Dialect) -> Result<Program, ParseError> {
        let mut instructions = Vec::with_capacity(codes.len());
        for (pos, &c) in codes.iter().enumerate() {
            match Instruction::from_code(c, dialect) {
                Some(i) => instructions.push(i),
                None => return Err(ParseError::UnknownSymbol(pos)),
            }
        }
        Program::from_instructions(dialect, instructions)
    }

    /// Internal constructor for callers that guarantee balance (the
    /// enumerator generates only well-formed strings).
    pub(crate) fn from_instructions_unchecked(
        dialect: Dialect,
        instructions: Vec<Instruction>,
    ) -> Program {
        let jumps = compute_jumps(&instructions).expect("caller guarantees balanced brackets");
        Program {
            dialect,
            instructions,
            jumps,
        }
    }

    pub fn dialect(&self) -> Dialect {
        self.dialect
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Text form, one character per instruction.
    pub fn text(&self) -> String {
        self.instructions.iter().map(|i| i.to_char()).collect()
    }

    /// Numeric form.
    pub fn codes(&self) -> Vec<u8> {
        self.instructions.iter().map(|i| i.code()).collect()
    }

    pub fn contains_read(&self) -> bool {
        self.instructions.contains(&Instruction::Read)
    }

    /// Reinterpret in dialect B (every dialect-A program is a dialect-B
    /// program unchanged; this is the identity embedding).
    pub fn embed_in_b(&self) -> Program {
        Program {
            dialect: Dialect::B,
            instructions: self.instructions.clone(),
            jumps: self.jumps.clone(),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

fn compute_jumps(instructions: &[Instruction]) -> Result<Vec<u32>, ParseError> {
    let mut jumps: Vec<u32> = (0..instructions.len() as u32).collect();
    let mut stack: Vec<usize> = Vec::new();
    for (pos, i) in instructions.iter().enumerate() {
        match i {
            Instruction::Open => stack.push(pos),
            Instruction::Close => {
                let open = stack.pop().ok_or(ParseError::UnbalancedBracket(pos))?;
                jumps[open] = pos as u32;
                jumps[pos] = open as u32;
            }
            _ => {}
        }
    }
    if let Some(&open) = stack.first() {
        return Err(ParseError::UnbalancedBracket(open));
    }
    Ok(jumps)
}

/// Interpreter configuration. Cells are 8-bit wrapping, the tape is unbounded
/// in both directions with all cells initially zero, and a `read` past the
/// end of input writes 0; only the step budget varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MachineConfig {
    /// Hard step budget; every instruction, including a bracket jump, costs
    /// exactly one step.
    pub fuel: u64,
}

impl MachineConfig {
    pub fn with_fuel(fuel: u64) -> MachineConfig {
        MachineConfig { fuel }
    }
}

impl Default for MachineConfig {
    fn default() -> Self {
        MachineConfig { fuel: 1_000_000 }
    }
}

/// The total answer the interpreter gives for any (program, input, fuel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExecutionOutcome {
    Halted {
        output: Vec<u8>,
        steps: u64,
    },
    FuelExhausted {
        steps: u64,
        /// Index of the instruction that was about to execute.
        ip: usize,
        output_so_far: Vec<u8>,
    },
}

impl ExecutionOutcome {
    pub fn halted(&self) -> bool {
        matches!(self, ExecutionOutcome::Halted { .. })
    }

    pub fn output(&self) -> &[u8] {
        match self {
            ExecutionOutcome::Halted { output, .. } => output,
            ExecutionOutcome::FuelExhausted { output_so_far, .. } => output_so_far,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            ExecutionOutcome::Halted { steps, .. } => *steps,
            ExecutionOutcome::FuelExhausted { steps, .. } => *steps,
        }
    }
}

/// Tape of 8-bit cells, unbounded in both directions. Negative indices live
/// in `neg`, with cell -1 at `neg[0]`.
#[derive(Debug, Clone, Default)]
pub struct Tape {
    pos: Vec<u8>,
    neg: Vec<u8>,
}

impl Tape {
    pub fn new() -> Tape {
        Tape::default()
    }

    /// Preload cells `0..image.len()` with `image`.
    pub fn from_image(image: &[u8]) -> Tape {
        Tape {
            pos: image.to_vec(),
            neg: Vec::new(),
        }
    }

    /// Read a cell anywhere on the tape; untouched cells are 0.
    pub fn cell(&self, index: i64) -> u8 {
        if index >= 0 {
            self.pos.get(index as usize).copied().unwrap_or(0)
        } else {
            self.neg.get((-index - 1) as usize).copied().unwrap_or(0)
        }
    }

    /// Snapshot cells `0..len` as a byte vector.
    pub fn image(&self, len: usize) -> Vec<u8> {
        (0..len as i64).map(|i| self.cell(i)).collect()
    }

    /// Highest touched extents, as (lowest index, one past highest index).
    pub fn touched_range(&self) -> (i64, i64) {
        (-(self.neg.len() as i64), self.pos.len() as i64)
    }

    #[inline]
    fn slot(&mut self, index: i64) -> &mut u8 {
        if index >= 0 {
            let i = index as usize;
            if i >= self.pos.len() {
                self.pos.resize(i + 1, 0);
            }
            &mut self.pos[i]
        } else {
            let i = (-index - 1) as usize;
            if i >= self.neg.len() {
                self.neg.resize(i + 1, 0);
            }
            &mut self.neg[i]
        }
    }
}

/// Result of a run that also exposes the final machine state, for callers
/// that need to inspect the tape (the diagonal analyzers read their verdict
/// from cell 0).
#[derive(Debug, Clone)]
pub struct RunResult {
    pub outcome: ExecutionOutcome,
    pub tape: Tape,
    pub head: i64,
}

/// Run `program` on `input` starting from an all-zero tape.
pub fn execute(program: &Program, input: &[u8], cfg: MachineConfig) -> ExecutionOutcome {
    run_from(program, input, Tape::new(), cfg).outcome
}

/// Run `program` with cells `0..tape_image.len()` preloaded and the head at
/// cell 0.
pub fn execute_on_tape(
    program: &Program,
    tape_image: &[u8],
    input: &[u8],
    cfg: MachineConfig,
) -> RunResult {
    run_from(program, input, Tape::from_image(tape_image), cfg)
}

fn run_from(program: &Program, input: &[u8], mut tape: Tape, cfg: MachineConfig) -> RunResult {
    let code = &program.instructions;
    let jumps = &program.jumps;
    let len = code.len();
    let mut output = Vec::new();
    let mut head: i64 = 0;
    let mut input_pos = 0usize;
    let mut ip = 0usize;
    let mut steps: u64 = 0;

    while ip < len {
        if steps == cfg.fuel {
            return RunResult {
                outcome: ExecutionOutcome::FuelExhausted {
                    steps,
                    ip,
                    output_so_far: output,
                },
                tape,
                head,
            };
        }
        steps += 1;
        match code[ip] {
            Instruction::Inc => {
                let c = tape.slot(head);
                *c = c.wrapping_add(1);
                ip += 1;
            }
            Instruction::Dec => {
                let c = tape.slot(head);
                *c = c.wrapping_sub(1);
                ip += 1;
            }
            Instruction::Left => {
                head -= 1;
                ip += 1;
            }
            Instruction::Right => {
                head += 1;
                ip += 1;
            }
            Instruction::Open => {
                if tape.cell(head) == 0 {
                    ip = jumps[ip] as usize + 1;
                } else {
                    ip += 1;
                }
            }
            Instruction::Close => {
                if tape.cell(head) != 0 {
                    // Back to the loop start; the matching open tested on
                    // entry, so execution resumes with the body.
                    ip = jumps[ip] as usize + 1;
                } else {
                    ip += 1;
                }
            }
            Instruction::Read => {
                let byte = input.get(input_pos).copied().unwrap_or(0);
                input_pos += 1;
                *tape.slot(head) = byte;
                ip += 1;
            }
            Instruction::Write => {
                output.push(tape.cell(head));
                ip += 1;
            }
            Instruction::Zero => {
                *tape.slot(head) = 0;
                ip += 1;
            }
        }
    }

    RunResult {
        outcome: ExecutionOutcome::Halted {
            output,
            steps,
        },
        tape,
        head,
    }
}

/// Build the straight-line dialect-A program that prints `s` and halts: for
/// each byte, adjust the current cell from its previous value by the shorter
/// of the two wrapping directions, then `write`. Length is exactly
/// sum(min(delta, 256 - delta) + 1); ties at delta 128 increment.
pub fn literal_printer(s: &[u8]) -> Program {
    let mut instructions = Vec::new();
    let mut current: u8 = 0;
    for &b in s {
        let up = b.wrapping_sub(current);
        let down = current.wrapping_sub(b);
        if up <= down {
            instructions.extend(std::iter::repeat(Instruction::Inc).take(up as usize));
        } else {
            instructions.extend(std::iter::repeat(Instruction::Dec).take(down as usize));
        }
        instructions.push(Instruction::Write);
        current = b;
    }
    Program::from_instructions_unchecked(Dialect::A, instructions)
}

/// Translate a dialect-B program into dialect A by expanding each `zero`
/// into `[-]`. Behavior is identical on every input when both halt; step
/// counts differ, and the result is at most three times as long.
pub fn expand_macros(p: &Program) -> Program {
    let mut instructions = Vec::with_capacity(p.len());
    for &i in p.instructions() {
        match i {
            Instruction::Zero => {
                instructions.push(Instruction::Open);
                instructions.push(Instruction::Dec);
                instructions.push(Instruction::Close);
            }
            other => instructions.push(other),
        }
    }
    Program::from_instructions_unchecked(Dialect::A, instructions)
}
