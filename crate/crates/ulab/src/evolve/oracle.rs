//! Ground truth for the complement task: the shortest genome, in canonical
//! (length, lexicographic) order, whose developmental decoding is the perfect
//! phenome — found by searching the genome space outright.
//!
//! Whatever the GA discovers can only be this length or longer, and the gap
//! between the GA's best and this baseline is the artifact's concrete
//! exhibit of the compression limit: a search process cannot be relied on to
//! find every (in particular the minimal) genome for a target.

use thiserror::Error;

use crate::evolve::{complement_fitness, decode, Decoder, Environment, Genome, Task};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("no genome of length <= max_len decodes to the perfect phenome")]
    NotFound,
    #[error("the oracle only handles the complement task with a developmental decoder")]
    UnsupportedTask,
}

/// Exhaustively search genomes of length 1..=max_len for the shortest one
/// whose phenome is exactly the complement of the environment string.
///
/// Feasible only at desk scale (the space is 256^len), which is rather the
/// point: the GA plays against an oracle that cannot scale.
pub fn minimal_genome_oracle(
    env: &Environment,
    decoder: Decoder,
    max_len: usize,
) -> Result<Genome, OracleError> {
    if env.task != Task::Complement || !matches!(decoder, Decoder::Developmental { .. }) {
        return Err(OracleError::UnsupportedTask);
    }
    let perfect = 8.0 * env.e.len() as f64;
    for len in 1..=max_len {
        if let Some(g) = search_length(env, decoder, len, perfect) {
            return Ok(g);
        }
    }
    Err(OracleError::NotFound)
}

fn is_perfect(bytes: &[u8], env: &Environment, decoder: Decoder, perfect: f64) -> bool {
    let genome = Genome(bytes.to_vec());
    complement_fitness(&decode(decoder, &genome), env) >= perfect
}

/// Scan all 256^len genomes of one length in lexicographic order, returning
/// the first perfect one. Parallel builds fan the first byte out across
/// workers; the minimum over first bytes preserves canonical order.
fn search_length(env: &Environment, decoder: Decoder, len: usize, perfect: f64) -> Option<Genome> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        return (0u16..256)
            .into_par_iter()
            .filter_map(|first| {
                let mut bytes = vec![0u8; len];
                bytes[0] = first as u8;
                scan_suffix(&mut bytes, env, decoder, perfect).map(|g| (first, g))
            })
            .min_by_key(|(first, _)| *first)
            .map(|(_, g)| g);
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut bytes = vec![0u8; len];
        let mut first = 0u16;
        loop {
            bytes[0] = first as u8;
            if let Some(g) = scan_suffix(&mut bytes, env, decoder, perfect) {
                return Some(g);
            }
            first += 1;
            if first == 256 {
                return None;
            }
        }
    }
}

/// Odometer over bytes[1..] with bytes[0] fixed, in lexicographic order.
fn scan_suffix(
    bytes: &mut [u8],
    env: &Environment,
    decoder: Decoder,
    perfect: f64,
) -> Option<Genome> {
    for b in bytes[1..].iter_mut() {
        *b = 0;
    }
    loop {
        if is_perfect(bytes, env, decoder, perfect) {
            return Some(Genome(bytes.to_vec()));
        }
        // Increment the suffix.
        let mut pos = bytes.len();
        loop {
            if pos <= 1 {
                return None;
            }
            pos -= 1;
            let (v, carry) = bytes[pos].overflowing_add(1);
            bytes[pos] = v;
            if !carry {
                break;
            }
        }
    }
}
