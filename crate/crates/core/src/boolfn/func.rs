use std::sync::Arc;

use super::{CoordSet, Dnf, FactoredDnf, Point, Term};

/// Black-box view of a Boolean function over `{0,1}^n`.
pub trait BoolFn: Send + Sync {
    fn n(&self) -> usize;
    fn eval(&self, x: Point) -> bool;
}

impl BoolFn for Dnf {
    fn n(&self) -> usize {
        self.n()
    }
    fn eval(&self, x: Point) -> bool {
        Dnf::eval(self, x)
    }
}

impl BoolFn for FactoredDnf {
    fn n(&self) -> usize {
        self.n()
    }
    fn eval(&self, x: Point) -> bool {
        FactoredDnf::eval(self, x)
    }
}

/// A term viewed as a function needs an ambient dimension.
pub struct TermFn {
    pub term: Term,
    pub n: usize,
}

impl BoolFn for TermFn {
    fn n(&self) -> usize {
        self.n
    }
    fn eval(&self, x: Point) -> bool {
        self.term.eval(x)
    }
}

impl<F: BoolFn + ?Sized> BoolFn for Arc<F> {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, x: Point) -> bool {
        (**self).eval(x)
    }
}

impl<F: BoolFn + ?Sized> BoolFn for &F {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, x: Point) -> bool {
        (**self).eval(x)
    }
}

/// A closure viewed as a Boolean function.
pub struct ClosureFn<F> {
    n: usize,
    f: F,
}

impl<F: Fn(Point) -> bool + Send + Sync> ClosureFn<F> {
    pub fn new(n: usize, f: F) -> Self {
        ClosureFn { n, f }
    }
}

impl<F: Fn(Point) -> bool + Send + Sync> BoolFn for ClosureFn<F> {
    fn n(&self) -> usize {
        self.n
    }
    fn eval(&self, x: Point) -> bool {
        (self.f)(x)
    }
}

/// `base` with the coordinates in `fixed_set` pinned to the values of
/// `fixed_values`. The restricted function is still indexed over the full
/// coordinate range; pinned coordinates simply ignore the query point.
pub struct Restriction<F> {
    base: F,
    fixed_set: CoordSet,
    fixed_values: Point,
}

impl<F: BoolFn> Restriction<F> {
    pub fn new(base: F, fixed_set: CoordSet, fixed_values: Point) -> Self {
        Restriction {
            base,
            fixed_set,
            fixed_values,
        }
    }
}

impl<F: BoolFn> BoolFn for Restriction<F> {
    fn n(&self) -> usize {
        self.base.n()
    }
    fn eval(&self, x: Point) -> bool {
        self.base.eval(x.overwrite(self.fixed_set, self.fixed_values))
    }
}

/// Restrict `f` by pinning the coordinates in `set` to the values of `u`.
pub fn restrict<F: BoolFn>(f: F, set: CoordSet, u: Point) -> Restriction<F> {
    Restriction::new(f, set, u)
}
