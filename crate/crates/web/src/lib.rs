//! WebAssembly bindings for the browser demo in `www/`. Every operation
//! takes and returns plain text; errors come back as a rejected string.

use std::fmt::Write as _;

use csl_core::contact::{check, Axiom};
use csl_core::fixtures::load_fixture;
use csl_core::logic::{describe_assignment, parse_sentence, refute, CountermodelResult, Theory};
use csl_core::representation::{overlap_embed, weak_embed};
use csl_core::structure_file::{parse_structure, print_structure};
use csl_core::Error;
use wasm_bindgen::prelude::*;

/// Largest model size the page lets a search reach.
pub const MAX_BROWSER_REFUTE_SIZE: usize = 8;

pub fn fixture_text_impl(name: &str) -> Result<String, String> {
    let f = load_fixture(name).map_err(|e| e.to_string())?;
    let mut text = format!("# fixture {}\n", f.name);
    for note in &f.notes {
        let _ = writeln!(text, "# note: {note}");
    }
    text.push_str(&print_structure(&f.structure));
    Ok(text)
}

pub fn check_axioms_impl(structure: &str) -> Result<String, String> {
    let cs = parse_structure(structure).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for axiom in Axiom::ALL {
        let _ = writeln!(out, "{}", check(&cs, axiom).describe(cs.lattice()));
    }
    Ok(out)
}

pub fn embed_impl(structure: &str, weak: bool, bounded: bool) -> Result<String, String> {
    let cs = parse_structure(structure).map_err(|e| e.to_string())?;
    let attempt = if weak {
        weak_embed(&cs, bounded)
    } else {
        overlap_embed(&cs, bounded)
    };
    match attempt {
        Ok(w) => Ok(w.certificate()),
        Err(Error::PreconditionFailed(report)) => Ok(format!(
            "precondition: {}\nverified: no\n",
            report.describe(cs.lattice())
        )),
        Err(e) => Err(e.to_string()),
    }
}

pub fn refute_impl(sentence: &str, theory: &str, max_size: usize) -> Result<String, String> {
    if max_size > MAX_BROWSER_REFUTE_SIZE {
        return Err(format!("max size is limited to {MAX_BROWSER_REFUTE_SIZE} here"));
    }
    let sentence = parse_sentence(sentence).map_err(|e| e.to_string())?;
    let theory: Theory = theory.parse()?;
    match refute(&sentence, theory, max_size).map_err(|e| e.to_string())? {
        CountermodelResult::Found {
            structure,
            assignment,
            structures_checked,
        } => Ok(format!(
            "result: countermodel\nsize: {}\nstructures checked: {structures_checked}\nassignment: {}\n{}",
            structure.size(),
            describe_assignment(&sentence, &structure, &assignment),
            print_structure(&structure)
        )),
        CountermodelResult::NoneUpTo {
            bound,
            structures_checked,
        } => Ok(format!(
            "result: none up to size {bound}\nstructures checked: {structures_checked}\n"
        )),
    }
}

#[wasm_bindgen(js_name = fixtureText)]
pub fn fixture_text(name: &str) -> Result<String, JsError> {
    fixture_text_impl(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkAxioms)]
pub fn check_axioms(structure: &str) -> Result<String, JsError> {
    check_axioms_impl(structure).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn embed(structure: &str, weak: bool, bounded: bool) -> Result<String, JsError> {
    embed_impl(structure, weak, bounded).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = refute)]
pub fn refute_sentence(sentence: &str, theory: &str, max_size: usize) -> Result<String, JsError> {
    refute_impl(sentence, theory, max_size).map_err(|e| JsError::new(&e))
}
