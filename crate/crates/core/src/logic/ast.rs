use std::fmt;

/// A term over the quantified variables, indexed by their position in the
/// prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Zero,
    Join(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Leq,
    Eq,
    Contact,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Leq => "<=",
            Relation::Eq => "=",
            Relation::Contact => "C",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(Relation, Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

/// `forall v1 .. vk. matrix`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub variables: Vec<String>,
    pub matrix: Formula,
}

struct TermDisplay<'a> {
    term: &'a Term,
    vars: &'a [String],
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |term| TermDisplay {
            term,
            vars: self.vars,
        };
        match self.term {
            Term::Var(i) => write!(f, "{}", self.vars[*i]),
            Term::Zero => write!(f, "0"),
            Term::Join(l, r) => match **r {
                Term::Join(..) => write!(f, "{} + ({})", sub(l), sub(r)),
                _ => write!(f, "{} + {}", sub(l), sub(r)),
            },
        }
    }
}

struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vars: &'a [String],
}

impl FormulaDisplay<'_> {
    fn child(&self, g: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = FormulaDisplay {
            formula: g,
            vars: self.vars,
        };
        match g {
            Formula::Atom(..) | Formula::Not(_) => write!(f, "{d}"),
            _ => write!(f, "({d})"),
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |term| TermDisplay {
            term,
            vars: self.vars,
        };
        let (l, op, r) = match self.formula {
            Formula::Atom(rel, l, r) => {
                return write!(f, "{} {} {}", term(l), rel.symbol(), term(r));
            }
            Formula::Not(g) => {
                write!(f, "~")?;
                return self.child(g, f);
            }
            Formula::And(l, r) => (l, "&", r),
            Formula::Or(l, r) => (l, "|", r),
            Formula::Implies(l, r) => (l, "->", r),
        };
        self.child(l, f)?;
        write!(f, " {op} ")?;
        self.child(r, f)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = FormulaDisplay {
            formula: &self.matrix,
            vars: &self.variables,
        };
        write!(f, "forall {}. {body}", self.variables.join(" "))
    }
}
