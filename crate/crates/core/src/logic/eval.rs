use super::ast::{Formula, Relation, Sentence, Term};
use crate::contact::ContactSemilattice;

/// Outcome of evaluating a sentence on a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    /// The first falsifying assignment in lexicographic order (first
    /// variable most significant), if any.
    pub falsifying: Option<Vec<usize>>,
}

impl Evaluation {
    pub fn holds(&self) -> bool {
        self.falsifying.is_none()
    }
}

fn term(cs: &ContactSemilattice, t: &Term, env: &[usize]) -> usize {
    match t {
        Term::Var(i) => env[*i],
        Term::Zero => cs.lattice().zero(),
        Term::Join(l, r) => cs.lattice().join(term(cs, l, env), term(cs, r, env)),
    }
}

fn formula(cs: &ContactSemilattice, f: &Formula, env: &[usize]) -> bool {
    match f {
        Formula::Atom(rel, l, r) => {
            let (x, y) = (term(cs, l, env), term(cs, r, env));
            match rel {
                Relation::Leq => cs.lattice().leq(x, y),
                Relation::Eq => x == y,
                Relation::Contact => cs.related(x, y),
            }
        }
        Formula::Not(g) => !formula(cs, g, env),
        Formula::And(l, r) => formula(cs, l, env) && formula(cs, r, env),
        Formula::Or(l, r) => formula(cs, l, env) || formula(cs, r, env),
        Formula::Implies(l, r) => !formula(cs, l, env) || formula(cs, r, env),
    }
}

/// Truth of the matrix under one assignment of the quantified variables.
pub fn eval_at(sentence: &Sentence, cs: &ContactSemilattice, assignment: &[usize]) -> bool {
    assert_eq!(assignment.len(), sentence.variables.len());
    formula(cs, &sentence.matrix, assignment)
}

pub fn eval(sentence: &Sentence, cs: &ContactSemilattice) -> Evaluation {
    let n = cs.size();
    let k = sentence.variables.len();
    let mut env = vec![0; k];
    loop {
        if !formula(cs, &sentence.matrix, &env) {
            return Evaluation {
                falsifying: Some(env),
            };
        }
        let Some(pos) = (0..k).rev().find(|&i| env[i] + 1 < n) else {
            return Evaluation { falsifying: None };
        };
        env[pos] += 1;
        env[pos + 1..].fill(0);
    }
}

/// `a -> c, b -> a, ...` with element names.
pub fn describe_assignment(
    sentence: &Sentence,
    cs: &ContactSemilattice,
    assignment: &[usize],
) -> String {
    sentence
        .variables
        .iter()
        .zip(assignment)
        .map(|(v, &e)| format!("{v} -> {}", cs.name(e)))
        .collect::<Vec<_>>()
        .join(", ")
}
