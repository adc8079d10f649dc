use std::fmt;
use std::str::FromStr;

use crate::order::JoinSemilattice;

/// The contact axioms and conditions the checkers decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Sym,
    Emp,
    Ext,
    Ref,
    Add,
    D1,
    D1Plus,
    D2,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::Sym,
        Axiom::Emp,
        Axiom::Ext,
        Axiom::Ref,
        Axiom::Add,
        Axiom::D1,
        Axiom::D1Plus,
        Axiom::D2,
    ];

    pub const WEAK: [Axiom; 4] = [Axiom::Sym, Axiom::Emp, Axiom::Ext, Axiom::Ref];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Sym => "sym",
            Axiom::Emp => "emp",
            Axiom::Ext => "ext",
            Axiom::Ref => "ref",
            Axiom::Add => "add",
            Axiom::D1 => "d1",
            Axiom::D1Plus => "d1plus",
            Axiom::D2 => "d2",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axiom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "sym" => Axiom::Sym,
            "emp" => Axiom::Emp,
            "ext" => Axiom::Ext,
            "ref" => Axiom::Ref,
            "add" => Axiom::Add,
            "d1" => Axiom::D1,
            "d1plus" | "d1+" => Axiom::D1Plus,
            "d2" => Axiom::D2,
            other => return Err(format!("unknown axiom `{other}`")),
        })
    }
}

/// Elements instantiating a failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Sym/Emp `(a, b)`, Ext `(a, b, a1, b1)`, Ref `(n)`, Add `(a, b, c)`,
    /// D1 `(a, b, c0, c1)`.
    Tuple(Vec<usize>),
    /// An instance of one of the pair schemas (D1+ or D2): the two
    /// distinguished elements, the δ-unrelated pairs and the selector sums.
    /// For D1+ the sums include `a`; for D2 they are the bare selector sums
    /// and the violated fact is `a δ b`.
    Schema {
        a: usize,
        b: usize,
        pairs: Vec<(usize, usize)>,
        sums: Vec<usize>,
    },
}

/// Outcome of one axiom check. The witness is present iff the check failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub fn pass(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            witness: None,
        }
    }

    pub fn fail(axiom: Axiom, witness: Witness) -> Self {
        AxiomReport {
            axiom,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    /// One report line with element names, e.g. `add: FAIL witness (c,a,b)`.
    pub fn describe(&self, s: &JoinSemilattice) -> String {
        match &self.witness {
            None => format!("{}: pass", self.axiom),
            Some(w) => format!("{}: FAIL witness {}", self.axiom, describe_witness(w, s)),
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.axiom),
            Some(Witness::Tuple(t)) => write!(f, "{}: FAIL witness {t:?}", self.axiom),
            Some(Witness::Schema { a, b, pairs, .. }) => {
                write!(f, "{}: FAIL witness a={a} b={b} pairs={pairs:?}", self.axiom)
            }
        }
    }
}

pub fn describe_witness(w: &Witness, s: &JoinSemilattice) -> String {
    let name = |i: usize| s.name(i).into_owned();
    match w {
        Witness::Tuple(t) => {
            let parts: Vec<String> = t.iter().map(|&i| name(i)).collect();
            format!("({})", parts.join(","))
        }
        Witness::Schema { a, b, pairs, sums } => {
            let pairs: Vec<String> = pairs
                .iter()
                .map(|&(c0, c1)| format!("({},{})", name(c0), name(c1)))
                .collect();
            let sums: Vec<String> = sums.iter().map(|&x| name(x)).collect();
            format!(
                "a={} b={} n={} pairs={} sums={}",
                name(*a),
                name(*b),
                pairs.len(),
                if pairs.is_empty() { "-".to_string() } else { pairs.join(",") },
                sums.join(",")
            )
        }
    }
}
