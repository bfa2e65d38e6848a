use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BoolFnError, CoordSet, Point, Term};

/// A disjunction of terms over `{0,1}^n`. The empty disjunction is the
/// constant-0 function.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dnf {
    terms: Vec<Term>,
    n: usize,
}

impl Dnf {
    pub fn new(terms: Vec<Term>, n: usize) -> Result<Self, BoolFnError> {
        for t in &terms {
            if t.max_var() > n {
                return Err(BoolFnError::IndexOutOfRange(t.max_var(), n));
            }
        }
        Ok(Dnf { terms, n })
    }

    pub fn constant_zero(n: usize) -> Self {
        Dnf { terms: vec![], n }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn eval(&self, x: Point) -> bool {
        self.terms.iter().any(|t| t.eval(x))
    }

    pub fn min_width(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.width()).min()
    }

    /// A new DNF over the same dimension keeping the terms at `indices`.
    pub fn sub_dnf(&self, indices: &[usize]) -> Dnf {
        Dnf {
            terms: indices.iter().map(|&i| self.terms[i].clone()).collect(),
            n: self.n,
        }
    }
}

impl fmt::Debug for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{t:?}")).collect();
        write!(f, "[n={}] {}", self.n, parts.join(" | "))
    }
}

/// A head conjunction together with a tail disjunction on disjoint
/// variables: evaluates as `head ∧ (tail_1 ∨ … ∨ tail_r)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredDnf {
    head: Term,
    tail: Vec<Term>,
    n: usize,
    r: usize,
    mu: usize,
}

impl FactoredDnf {
    /// Checks the structural invariants: head variables disjoint from tail
    /// variables, at most `r` tail terms, at most `mu` distinct tail
    /// variables.
    pub fn new(
        head: Term,
        tail: Vec<Term>,
        n: usize,
        r: usize,
        mu: usize,
    ) -> Result<Self, BoolFnError> {
        let mut tail_vars = CoordSet::EMPTY;
        for t in &tail {
            if t.max_var() > n {
                return Err(BoolFnError::IndexOutOfRange(t.max_var(), n));
            }
            tail_vars = tail_vars.union(t.vars());
        }
        if head.max_var() > n {
            return Err(BoolFnError::IndexOutOfRange(head.max_var(), n));
        }
        if !head.vars().intersect(tail_vars).is_empty() {
            return Err(BoolFnError::Parse(
                "head and tail variables must be disjoint".into(),
            ));
        }
        if tail.len() > r {
            return Err(BoolFnError::Parse(format!(
                "tail has {} terms, limit {r}",
                tail.len()
            )));
        }
        if tail_vars.len() > mu {
            return Err(BoolFnError::Parse(format!(
                "tail spans {} variables, limit {mu}",
                tail_vars.len()
            )));
        }
        Ok(FactoredDnf {
            head,
            tail,
            n,
            r,
            mu,
        })
    }

    pub fn head(&self) -> &Term {
        &self.head
    }

    pub fn tail(&self) -> &[Term] {
        &self.tail
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn tail_vars(&self) -> CoordSet {
        self.tail
            .iter()
            .fold(CoordSet::EMPTY, |acc, t| acc.union(t.vars()))
    }

    pub fn eval(&self, x: Point) -> bool {
        self.head.eval(x) && self.tail.iter().any(|t| t.eval(x))
    }

    /// Flatten to an equivalent plain DNF (head conjoined into each tail
    /// term).
    pub fn to_dnf(&self) -> Dnf {
        let terms = self
            .tail
            .iter()
            .map(|t| {
                let mut lits: Vec<_> = self.head.literals().to_vec();
                lits.extend_from_slice(t.literals());
                Term::new(lits).expect("disjoint head/tail cannot contradict")
            })
            .collect();
        Dnf { terms, n: self.n }
    }
}

impl fmt::Debug for FactoredDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tail.iter().map(|t| format!("{t:?}")).collect();
        write!(f, "{:?} & ({})", self.head, parts.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dnf_eval() {
        let f = Dnf::new(vec![Term::of(&[1, 2]), Term::of(&[-3])], 3).unwrap();
        assert!(f.eval(Point::parse("110").unwrap()));
        assert!(f.eval(Point::parse("000").unwrap()));
        assert!(!f.eval(Point::parse("011").unwrap()));
        assert!(!Dnf::constant_zero(3).eval(Point::parse("000").unwrap()));
    }

    #[test]
    fn factored_invariants() {
        let ok = FactoredDnf::new(Term::of(&[4]), vec![Term::of(&[1]), Term::of(&[-2])], 4, 2, 2);
        assert!(ok.is_ok());
        let overlap =
            FactoredDnf::new(Term::of(&[1]), vec![Term::of(&[1, 2])], 4, 2, 2);
        assert!(overlap.is_err());
        let too_many_vars =
            FactoredDnf::new(Term::of(&[4]), vec![Term::of(&[1, 2, 3])], 4, 2, 2);
        assert!(too_many_vars.is_err());
    }

    #[test]
    fn factored_eval_matches_flattened() {
        let h = FactoredDnf::new(Term::of(&[4]), vec![Term::of(&[1]), Term::of(&[-2])], 4, 2, 2)
            .unwrap();
        let flat = h.to_dnf();
        for idx in 0..16 {
            let x = Point::from_index(idx, 4);
            assert_eq!(h.eval(x), flat.eval(x));
        }
    }
}
