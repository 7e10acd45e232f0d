use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::numberfield::{QuadFieldElem, Rational};

use super::GeneratorSet;

/// Default bound on the number of enumerated words.
pub const DEFAULT_WORD_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceVerdict {
    /// Some trace has a nonzero `sqrt(d)` coordinate, so the traces
    /// generate all of `K`.
    GeneratesK,
    /// Every trace seen so far is rational. Longer words might still
    /// produce an irrational trace.
    ProperSubfieldSoFar,
}

impl TraceVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TraceVerdict::GeneratesK => "GENERATES_K",
            TraceVerdict::ProperSubfieldSoFar => "PROPER_SUBFIELD_SO_FAR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceProbe {
    /// Distinct values `+-tr(w)`, in order of first appearance.
    pub traces: Vec<QuadFieldElem>,
    pub verdict: TraceVerdict,
    pub words_enumerated: usize,
    /// Shortest (then lexicographically first) word with an irrational trace.
    pub witness_word: Option<String>,
}

#[derive(Clone, Copy)]
struct Letter {
    generator: usize,
    inverse: bool,
}

fn word_label(labels: &[&str], word: &[Letter]) -> String {
    let mut s = String::new();
    for (k, l) in word.iter().enumerate() {
        if k > 0 {
            s.push('*');
        }
        s.push_str(labels[l.generator]);
        if l.inverse {
            s.push_str("^-1");
        }
    }
    s
}

/// Collects traces of all freely reduced words of length `1..=max_word_length`
/// in the generators and their inverses. Words are visited by length, then
/// lexicographically with letters ordered `g1, g1^-1, g2, g2^-1, ...`.
///
/// Fails with [`Error::WordBudgetExceeded`] before doing any work when the
/// number of such words exceeds `word_cap`.
pub fn trace_field_probe(
    gens: &GeneratorSet,
    max_word_length: usize,
    word_cap: usize,
) -> Result<TraceProbe> {
    if max_word_length == 0 {
        return Err(Error::InvalidWordLength);
    }
    // k letters give k (k-1)^(l-1) reduced words of length l.
    let k = 2 * gens.len();
    let mut total = 0usize;
    let mut at_length = k;
    for _ in 0..max_word_length {
        total = total.saturating_add(at_length);
        if total > word_cap {
            return Err(Error::WordBudgetExceeded { cap: word_cap });
        }
        at_length = at_length.saturating_mul(k - 1);
    }

    let labels: Vec<&str> = gens.labels().collect();
    let mut alphabet: Vec<(Letter, Matrix)> = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.elements().enumerate() {
        alphabet.push((
            Letter {
                generator: i,
                inverse: false,
            },
            g.matrix().clone(),
        ));
        alphabet.push((
            Letter {
                generator: i,
                inverse: true,
            },
            g.inverse().matrix().clone(),
        ));
    }

    let mut traces: Vec<QuadFieldElem> = Vec::new();
    let mut seen: BTreeSet<(Rational, Rational)> = BTreeSet::new();
    let mut witness_word = None;
    let mut words_enumerated = 0usize;
    let mut record = |word: &[Letter], m: &Matrix, traces: &mut Vec<QuadFieldElem>| {
        let t = m.trace();
        if witness_word.is_none() && !t.is_rational() {
            witness_word = Some(word_label(&labels, word));
        }
        for v in [t.clone(), -t] {
            if seen.insert((v.a().clone(), v.b().clone())) {
                traces.push(v);
            }
        }
    };

    let mut level: Vec<(Vec<Letter>, Matrix)> = Vec::new();
    for (letter, m) in &alphabet {
        words_enumerated += 1;
        let word = alloc::vec![*letter];
        record(&word, m, &mut traces);
        level.push((word, m.clone()));
    }

    for _ in 1..max_word_length {
        let mut next = Vec::with_capacity(level.len() * alphabet.len().saturating_sub(1));
        for (word, m) in &level {
            let last = *word.last().expect("words are nonempty");
            for (letter, step) in &alphabet {
                if letter.generator == last.generator && letter.inverse != last.inverse {
                    continue;
                }
                words_enumerated += 1;
                let product = m * step;
                let mut extended = word.clone();
                extended.push(*letter);
                record(&extended, &product, &mut traces);
                next.push((extended, product));
            }
        }
        level = next;
    }

    let verdict = if witness_word.is_some() {
        TraceVerdict::GeneratesK
    } else {
        TraceVerdict::ProperSubfieldSoFar
    };
    Ok(TraceProbe {
        traces,
        verdict,
        words_enumerated,
        witness_word,
    })
}
