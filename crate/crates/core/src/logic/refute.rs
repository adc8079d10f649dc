use std::fmt;
use std::str::FromStr;

use super::ast::Sentence;
use super::enumerate::{enumerate_structures_capped, Filter, MAX_LATTICE_SIZE};
use super::eval::{eval, eval_at};
use crate::contact::ContactSemilattice;
use crate::error::Result;

/// The theory whose finite models are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    D1,
    D1D2,
}

impl Theory {
    pub fn filters(self) -> &'static [Filter] {
        match self {
            Theory::D1 => &[Filter::Weak, Filter::D1],
            Theory::D1D2 => &[Filter::Weak, Filter::D1, Filter::D2],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Theory::D1 => "d1",
            Theory::D1D2 => "d1d2",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "d1" => Ok(Theory::D1),
            "d1d2" | "d1+d2" => Ok(Theory::D1D2),
            other => Err(format!("unknown theory '{other}' (expected d1 or d1d2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountermodelResult {
    /// A model of the theory falsifying the sentence at `assignment`.
    Found {
        structure: ContactSemilattice,
        assignment: Vec<usize>,
        structures_checked: usize,
    },
    /// Every model of size at most `bound` satisfies the sentence. This
    /// says nothing about larger models.
    NoneUpTo {
        bound: usize,
        structures_checked: usize,
    },
}

impl CountermodelResult {
    pub fn is_found(&self) -> bool {
        matches!(self, CountermodelResult::Found { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub prune_iso: bool,
    pub cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune_iso: false,
            cap: MAX_LATTICE_SIZE,
        }
    }
}

pub fn refute(sentence: &Sentence, theory: Theory, max_size: usize) -> Result<CountermodelResult> {
    refute_with(sentence, theory, max_size, SearchOptions::default())
}

/// Scans the models of `theory` up to `max_size` in enumeration order and
/// returns the first one falsifying `sentence`.
pub fn refute_with(
    sentence: &Sentence,
    theory: Theory,
    max_size: usize,
    options: SearchOptions,
) -> Result<CountermodelResult> {
    let stream =
        enumerate_structures_capped(max_size, theory.filters(), options.prune_iso, options.cap)?;
    let mut checked = 0;
    for cs in stream {
        checked += 1;
        if let Some(assignment) = eval(sentence, &cs).falsifying {
            assert!(!eval_at(sentence, &cs, &assignment));
            assert!(theory.filters().iter().all(|f| f.passes(&cs)));
            return Ok(CountermodelResult::Found {
                structure: cs,
                assignment,
                structures_checked: checked,
            });
        }
    }
    Ok(CountermodelResult::NoneUpTo {
        bound: max_size,
        structures_checked: checked,
    })
}
