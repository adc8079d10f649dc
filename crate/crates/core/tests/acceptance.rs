//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are printed by `cargo test`; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use csl_core::cli;
use csl_core::contact::{
    check, check_add, check_d1, check_d2, check_d2_sequences, check_d2_subsets, check_d1plus,
    check_weak, reproduces, Axiom, AxiomReport, ContactSemilattice, Witness,
    DEFAULT_D2_PAIR_LIMIT,
};
use csl_core::fixtures::{
    fixture, free_d_elements, free_d_leq_oracle, load_fixture, verify_z4z4_embedding,
    FIXTURE_NAMES,
};
use csl_core::logic::{
    all_symmetric_structures, enumerate_lattices, enumerate_structures, naive_structure_count,
    parse_sentence, refute, CountermodelResult, Filter, Theory,
};
use csl_core::order::Distributivity;
use csl_core::representation::{
    brute_quotient_oracle_capped, overlap_embed, quotient, verify_embedding, weak_embed,
};
use csl_core::structure_file::print_structure;
use csl_core::Error;

const ADD: &str = "forall a b c. a C (b+c) -> (a C b | a C c)";
const D1: &str = "forall a b c0 c1. (b <= a+c0 & b <= a+c1 & ~(c0 C c1)) -> b <= a";

/// Element ceiling for the brute-force quotient oracle here: the largest
/// fixture it can materialize is z4z4 (15 elements, 2^14 subsets).
const ORACLE_CAP: usize = 16;

type Outcome = Result<String, String>;

/// Number, title, time limit in seconds and check.
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lines(cs: &ContactSemilattice, axioms: &[Axiom]) -> Vec<String> {
    axioms
        .iter()
        .map(|&a| check(cs, a).describe(cs.lattice()))
        .collect()
}

fn cli_axioms(name: &str, axioms: &str) -> Result<cli::Outcome, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join(format!("{name}.csl"));
    std::fs::write(&path, print_structure(&fixture(name).map_err(|e| e.to_string())?))
        .map_err(|e| e.to_string())?;
    Ok(cli::run([
        "csl",
        "axioms",
        path.to_str().unwrap(),
        "--axioms",
        axioms,
    ]))
}

fn m3_overlap_axioms() -> Outcome {
    let out = cli_axioms("m3_overlap", "sym,emp,ext,ref,add")?;
    let expected = "sym: pass\nemp: pass\next: pass\nref: pass\nadd: FAIL witness (c,a,b)\n";
    ensure(out.stdout == expected && out.code == 1, || {
        format!("got exit {} and\n{}", out.code, out.stdout)
    })?;
    Ok("add: FAIL witness (c,a,b); weak axioms pass".into())
}

fn m3_delta_axioms() -> Outcome {
    let cs = fixture("m3_delta").map_err(|e| e.to_string())?;
    let got = lines(&cs, &[Axiom::Add, Axiom::D1]);
    ensure(got == ["add: pass", "d1: FAIL witness (a,b,b,c)"], || format!("{got:?}"))?;
    for (mode, result) in [("overlap", overlap_embed(&cs, false)), ("weak", weak_embed(&cs, false))] {
        match result {
            Err(Error::PreconditionFailed(r)) if r.axiom == Axiom::D1 => {}
            other => return Err(format!("{mode}_embed: {other:?}")),
        }
    }
    Ok("add pass; d1 FAIL (a,b,b,c); both embeddings refuse on d1".into())
}

fn b8_axioms() -> Outcome {
    let out = cli_axioms("b8", "d1,add")?;
    ensure(out.stdout == "d1: pass\nadd: FAIL witness (c,a,b)\n" && out.code == 1, || {
        out.stdout.clone()
    })?;
    let cs = fixture("b8").map_err(|e| e.to_string())?;
    let d2 = check_d2(&cs);
    ensure(!d2.passed() && reproduces(&cs, &d2), || "d2 should fail reproducibly".into())?;
    let w = weak_embed(&cs, false).map_err(|e| e.to_string())?;
    ensure(verify_embedding(&w).verified(), || w.report.describe(cs.lattice()))?;
    Ok(format!(
        "d1 pass; add FAIL (c,a,b); {}; weak embedding into base {} verified",
        d2.describe(cs.lattice()),
        w.target.base_size()
    ))
}

fn free_d_checks() -> Outcome {
    let f = load_fixture("free_d").map_err(|e| e.to_string())?;
    let cs = &f.structure;
    let s = cs.lattice();
    ensure(check_add(cs).passed(), || "add should pass".into())?;
    ensure(check_d1(cs).passed(), || "d1 should pass".into())?;
    let d2 = check_d2(cs);
    let Some(Witness::Schema { a, b, pairs, .. }) = &d2.witness else {
        return Err("d2 should fail with a schema witness".into());
    };
    let named: Vec<(String, String)> = pairs
        .iter()
        .map(|&(p, q)| (s.name(p).into_owned(), s.name(q).into_owned()))
        .collect();
    let want = [("c".to_string(), "d".to_string()), ("e".to_string(), "f".to_string())];
    ensure(
        s.name(*a) == "x" && s.name(*b) == "y" && named == want,
        || d2.describe(s),
    )?;
    let elems = free_d_elements();
    let mut agree = 0;
    for (i, &p) in elems.iter().enumerate() {
        for (j, &q) in elems.iter().enumerate() {
            if free_d_leq_oracle(p, q) == s.leq(i, j) {
                agree += 1;
            }
        }
    }
    let total = elems.len() * elems.len();
    ensure(agree == total, || format!("oracle agrees on {agree}/{total} pairs"))?;
    ensure(f.notes.iter().any(|n| n.contains("x+y ")), || format!("{:?}", f.notes))?;
    Ok(format!(
        "{} elements; add, d1 pass; {}; order oracle {agree}/{total}; note: {}",
        s.size(),
        d2.describe(s),
        f.notes[1]
    ))
}

fn embedding_suite(filters: &[Filter], weak: bool) -> Outcome {
    let mut count = 0;
    for cs in enumerate_structures(5, filters, false).map_err(|e| e.to_string())? {
        count += 1;
        for bounded in [false, true] {
            let w = if weak {
                weak_embed(&cs, bounded)
            } else {
                overlap_embed(&cs, bounded)
            }
            .map_err(|e| format!("{}: {e}", print_structure(&cs)))?;
            ensure(verify_embedding(&w).verified(), || print_structure(&cs))?;
            let image = w.target.to_contact_semilattice().map_err(|e| e.to_string())?;
            let all_weak = check_weak(&image).iter().all(AxiomReport::passed);
            let extra = weak || (check_d1(&image).passed() && check_d2(&image).passed());
            ensure(all_weak && extra, || format!("target axioms fail for\n{}", print_structure(&cs)))?;
        }
    }
    Ok(format!("{count} structures, 0 failures"))
}

fn overlap_suite() -> Outcome {
    embedding_suite(&[Filter::D1, Filter::D2], false)
}

fn weak_suite() -> Outcome {
    embedding_suite(&[Filter::D1], true)
}

fn d2_consequences() -> Outcome {
    let mut checked = 0;
    for cs in all_symmetric_structures(4).map_err(|e| e.to_string())? {
        checked += 1;
        if check_d2(&cs).passed() {
            for a in [Axiom::Sym, Axiom::Emp, Axiom::Ext, Axiom::Add] {
                ensure(check(&cs, a).passed(), || format!("d2 holds, {a} fails:\n{}", print_structure(&cs)))?;
            }
        }
        if check_d1(&cs).passed() {
            ensure(check(&cs, Axiom::Ref).passed(), || print_structure(&cs))?;
        }
    }
    Ok(format!("{checked} symmetric relations on lattices of size <= 4, 0 violations"))
}

fn d1_implies_d1plus() -> Outcome {
    let mut checked = 0;
    for cs in all_symmetric_structures(4).map_err(|e| e.to_string())? {
        if check_d1(&cs).passed() {
            checked += 1;
            ensure(check_d1plus(&cs, 3).passed(), || print_structure(&cs))?;
        }
    }
    Ok(format!("{checked} d1 structures, d1plus(3) holds on all"))
}

fn distd1_implies_d1plus() -> Outcome {
    let mut distributive = 0;
    let lattices = enumerate_lattices(6).map_err(|e| e.to_string())?;
    for s in &lattices {
        if s.is_distributive() == Distributivity::Holds {
            distributive += 1;
            let cs = ContactSemilattice::with_overlap((*s).clone());
            ensure(check_add(&cs).passed(), || print_structure(&cs))?;
        }
    }
    Ok(format!("{distributive} of {} lattices distributive, overlap additive on all", lattices.len()))
}

fn oracle_suite() -> Outcome {
    let mut quotients = 0;
    let mut skipped = Vec::new();
    let mut compare = |cs: &ContactSemilattice, label: &str| -> Result<(), String> {
        for bounded in [false, true] {
            let oracle = match brute_quotient_oracle_capped(cs, bounded, ORACLE_CAP) {
                Ok(o) => o,
                Err(Error::TooLarge { size, .. }) => {
                    if !bounded {
                        skipped.push(format!("{label} ({size} elements)"));
                    }
                    return Ok(());
                }
                Err(e) => return Err(e.to_string()),
            };
            let q = match overlap_embed(cs, bounded) {
                Ok(w) => w.quotient,
                Err(Error::PreconditionFailed(_)) => quotient(cs, bounded),
                Err(e) => return Err(e.to_string()),
            };
            oracle.agrees_with(&q).map_err(|e| format!("{label}: {e}"))?;
            quotients += 1;
        }
        Ok(())
    };
    for name in FIXTURE_NAMES {
        compare(&fixture(name).map_err(|e| e.to_string())?, name)?;
    }
    for cs in enumerate_structures(6, &[Filter::D1, Filter::D2], false).map_err(|e| e.to_string())? {
        compare(&cs, "enumerated")?;
    }

    let mut d2_checked = 0;
    for cs in all_symmetric_structures(4).map_err(|e| e.to_string())? {
        d2_checked += 1;
        let by_sequences = check_d2_sequences(&cs, 3).is_empty();
        let by_subsets = check_d2_subsets(&cs, DEFAULT_D2_PAIR_LIMIT)
            .map_err(|e| e.to_string())?
            .passed();
        let by_fold = check_d2(&cs).passed();
        ensure(by_sequences == by_subsets && by_subsets == by_fold, || {
            format!(
                "sequences {by_sequences}, subsets {by_subsets}, fold {by_fold}:\n{}",
                print_structure(&cs)
            )
        })?;
    }

    for n in 1..=3 {
        let fast = enumerate_structures(n, &[Filter::Weak], false)
            .map_err(|e| e.to_string())?
            .count();
        let naive = naive_structure_count(n, &[]).map_err(|e| e.to_string())?;
        ensure(fast == naive, || format!("size {n}: {fast} vs {naive}"))?;
    }
    let skipped = if skipped.is_empty() {
        String::new()
    } else {
        format!("; beyond brute force: {}", skipped.join(", "))
    };
    Ok(format!(
        "(i) {quotients} quotients agree{skipped}; (ii) {d2_checked} relations agree; (iii) counts agree"
    ))
}

fn separations() -> Outcome {
    let add = parse_sentence(ADD).map_err(|e| e.to_string())?;
    let d1 = parse_sentence(D1).map_err(|e| e.to_string())?;
    let found = refute(&add, Theory::D1, 8).map_err(|e| e.to_string())?;
    let CountermodelResult::Found { structure, .. } = &found else {
        return Err(format!("refute(add, d1, 8): {found:?}"));
    };
    let size = structure.size();
    let none = refute(&add, Theory::D1D2, 5).map_err(|e| e.to_string())?;
    ensure(matches!(none, CountermodelResult::NoneUpTo { bound: 5, .. }), || {
        format!("refute(add, d1d2, 5): {none:?}")
    })?;
    let none = refute(&d1, Theory::D1, 4).map_err(|e| e.to_string())?;
    ensure(matches!(none, CountermodelResult::NoneUpTo { bound: 4, .. }), || {
        format!("refute(d1, d1, 4): {none:?}")
    })?;
    Ok(format!("add vs d1: countermodel of size {size}; add vs d1d2: none up to 5; d1 vs d1: none up to 4"))
}

fn z4z4() -> Outcome {
    let r = verify_z4z4_embedding();
    ensure(r.verified(), || r.describe())?;
    Ok(format!(
        "{} subgroups by filtering, {} by generators; m3_delta embeds",
        r.count_by_filter, r.count_by_generators
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "m3_overlap axioms", 1, m3_overlap_axioms),
        (2, "m3_delta axioms and embeddings", 1, m3_delta_axioms),
        (3, "b8 axioms and weak embedding", 1, b8_axioms),
        (4, "free_d axioms, order and notes", 30, free_d_checks),
        (5, "overlap representation suite, size <= 5", 600, overlap_suite),
        (6, "weak representation suite, size <= 5", 600, weak_suite),
        (7, "d2 consequences suite, size <= 4", 300, d2_consequences),
        (8, "d1 implies d1plus suite, size <= 4", 300, d1_implies_d1plus),
        (9, "distributive overlap additivity, size <= 6", 60, distd1_implies_d1plus),
        (10, "oracle agreements", 900, oracle_suite),
        (11, "universal consequence separations", 600, separations),
        (12, "z4 x z4 subgroup embedding", 10, z4z4),
    ];
    let mut failures = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; exceeded the {limit} s limit"))
            }
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:2}: PASS {title} [{secs:.2} s, limit {limit} s]: {detail}"),
            Err(why) => {
                failures += 1;
                println!("criterion {id:2}: FAIL {title} [{secs:.2} s, limit {limit} s]: {why}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
