use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BoolFnError, CoordSet, Point};

/// A literal: a variable index (1-based) with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// Signed-integer encoding: `3` is x3, `-3` is ¬x3.
    pub fn signed(v: i64) -> Self {
        assert!(v != 0);
        Literal {
            var: v.unsigned_abs() as usize,
            positive: v > 0,
        }
    }

    pub fn negated(&self) -> Literal {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn satisfied_by(&self, x: Point) -> bool {
        x.get(self.var) == self.positive
    }
}

/// Canonical literal order: by variable, negated before positive.
impl Ord for Literal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.var, self.positive).cmp(&(other.var, other.positive))
    }
}

impl PartialOrd for Literal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "~x{}", self.var)
        }
    }
}

/// A conjunction of literals, stored as a sorted, contradiction-free literal
/// set. The empty term is the constant-1 function.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    literals: Vec<Literal>,
}

impl Term {
    pub const TRUE: Term = Term {
        literals: Vec::new(),
    };

    pub fn new(mut literals: Vec<Literal>) -> Result<Self, BoolFnError> {
        literals.sort();
        literals.dedup();
        for w in literals.windows(2) {
            if w[0].var == w[1].var {
                return Err(BoolFnError::ContradictoryTerm(w[0].var));
            }
        }
        Ok(Term { literals })
    }

    pub fn of(signed: &[i64]) -> Self {
        Term::new(signed.iter().map(|&v| Literal::signed(v)).collect()).unwrap()
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> CoordSet {
        CoordSet::from_iter(self.literals.iter().map(|l| l.var))
    }

    pub fn max_var(&self) -> usize {
        self.literals.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    /// 1 iff every literal is satisfied by `x`.
    pub fn eval(&self, x: Point) -> bool {
        self.literals.iter().all(|l| l.satisfied_by(x))
    }

    /// Number of falsified literals; 0 iff `eval` is 1.
    pub fn dist(&self, x: Point) -> usize {
        self.literals.iter().filter(|l| !l.satisfied_by(x)).count()
    }

    /// Literal-set intersection, as a term.
    pub fn intersect(&self, other: &Term) -> Term {
        Term {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|l| other.contains(*l))
                .collect(),
        }
    }

    /// Literal-set difference, as a term.
    pub fn minus(&self, other: &Term) -> Term {
        Term {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|l| !other.contains(*l))
                .collect(),
        }
    }

    /// Symmetric difference as a raw literal set. The result may contain a
    /// variable with both polarities, so it is not a `Term`.
    pub fn sym_diff(&self, other: &Term) -> LiteralSet {
        let mut out = LiteralSet::default();
        for &l in &self.literals {
            if !other.contains(l) {
                out.insert(l);
            }
        }
        for &l in &other.literals {
            if !self.contains(l) {
                out.insert(l);
            }
        }
        out
    }

    /// The one satisfying assignment pattern: completes `base` so that the
    /// term is satisfied, leaving non-term coordinates untouched.
    pub fn force_onto(&self, base: Point) -> Point {
        let mut p = base;
        for l in &self.literals {
            p = p.with(l.var, l.positive);
        }
        p
    }
}

/// Canonical term order: first by width, then lexicographically on the
/// sorted literal sequence. This is the tie-break order used everywhere a
/// deterministic "first" term is needed.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width()
            .cmp(&other.width())
            .then_with(|| self.literals.cmp(&other.literals))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "T");
        }
        let parts: Vec<String> = self.literals.iter().map(|l| format!("{l:?}")).collect();
        write!(f, "{}", parts.join("&"))
    }
}

/// A plain set of literals, possibly containing both polarities of a
/// variable (used for cluster labels and symmetric differences).
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiteralSet {
    literals: Vec<Literal>,
}

impl LiteralSet {
    pub fn insert(&mut self, lit: Literal) {
        if let Err(pos) = self.literals.binary_search(&lit) {
            self.literals.insert(pos, lit);
        }
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.binary_search(&lit).is_ok()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Literal> + '_ {
        self.literals.iter().copied()
    }

    pub fn vars(&self) -> CoordSet {
        CoordSet::from_iter(self.literals.iter().map(|l| l.var))
    }

    /// True when for every literal, its negation is present too.
    pub fn closed_under_negation(&self) -> bool {
        self.literals.iter().all(|l| self.contains(l.negated()))
    }

    pub fn union_with(&mut self, other: &LiteralSet) {
        for l in other.iter() {
            self.insert(l);
        }
    }
}

impl FromIterator<Literal> for LiteralSet {
    fn from_iter<T: IntoIterator<Item = Literal>>(iter: T) -> Self {
        let mut s = LiteralSet::default();
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl fmt::Debug for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.literals.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_term_examples() {
        let t = Term::of(&[1, -3]);
        assert!(t.eval(Point::parse("100").unwrap()));
        assert!(!t.eval(Point::parse("101").unwrap()));
        assert!(Term::TRUE.eval(Point::parse("101").unwrap()));
    }

    #[test]
    fn dist_point_term_examples() {
        let t = Term::of(&[1, -3]);
        assert_eq!(t.dist(Point::parse("101").unwrap()), 1);
        assert_eq!(t.dist(Point::parse("100").unwrap()), 0);
        let t3 = Term::of(&[1, 2, 3]);
        assert_eq!(t3.dist(Point::parse("000").unwrap()), 3);
    }

    #[test]
    fn term_set_ops_examples() {
        let t12 = Term::of(&[1, 2]);
        let t1 = Term::of(&[1]);
        assert_eq!(t12.minus(&t1), Term::of(&[2]));
        assert_eq!(t12.minus(&t12), Term::TRUE);
        let t1n2 = Term::of(&[1, -2]);
        let sd = t12.sym_diff(&t1n2);
        assert_eq!(sd.len(), 2);
        assert!(sd.contains(Literal::pos(2)) && sd.contains(Literal::neg(2)));
        assert!(sd.closed_under_negation());
        assert_eq!(t12.intersect(&t1n2), t1);
    }

    #[test]
    fn contradiction_rejected() {
        assert_eq!(
            Term::new(vec![Literal::pos(2), Literal::neg(2)]),
            Err(BoolFnError::ContradictoryTerm(2))
        );
    }

    #[test]
    fn canonical_order() {
        // Width dominates; within a width, negated sorts before positive.
        let a = Term::of(&[4]);
        let b = Term::of(&[1, 2]);
        assert!(a < b);
        assert!(Term::of(&[-1]) < Term::of(&[1]));
        assert!(Term::of(&[1, -3]) < Term::of(&[1, 3]));
    }
}
