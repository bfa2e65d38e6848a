use super::{BoolFn, BoolFnError, Point, Rat, TruthTable, ENUM_CAP};

/// Exact relative distance `|f^{-1}(1) △ g^{-1}(1)| / |f^{-1}(1)|` by full
/// enumeration. Asymmetric, and may exceed 1.
pub fn reldist_exhaustive<F: BoolFn + ?Sized, G: BoolFn + ?Sized>(
    f: &F,
    g: &G,
) -> Result<Rat, BoolFnError> {
    let n = f.n();
    if n != g.n() {
        return Err(BoolFnError::DimensionMismatch(n, g.n()));
    }
    if n > ENUM_CAP {
        return Err(BoolFnError::DimensionTooLarge(n, ENUM_CAP));
    }
    let mut support = 0u64;
    let mut sym_diff = 0u64;
    for idx in 0..(1usize << n) {
        let x = Point::from_index(idx, n);
        let fv = f.eval(x);
        let gv = g.eval(x);
        if fv {
            support += 1;
        }
        if fv != gv {
            sym_diff += 1;
        }
    }
    if support == 0 {
        return Err(BoolFnError::EmptySupport);
    }
    Ok(Rat::new(sym_diff, support))
}

/// Same quantity computed from materialized tables.
pub fn reldist_tables(f: &TruthTable, g: &TruthTable) -> Result<Rat, BoolFnError> {
    if f.n() != g.n() {
        return Err(BoolFnError::DimensionMismatch(f.n(), g.n()));
    }
    let support = f.support_size() as u64;
    if support == 0 {
        return Err(BoolFnError::EmptySupport);
    }
    Ok(Rat::new(f.sym_diff_size(g) as u64, support))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{Dnf, Term};

    #[test]
    fn reldist_examples() {
        let f = Dnf::new(vec![Term::of(&[1])], 2).unwrap();
        assert_eq!(reldist_exhaustive(&f, &f).unwrap(), Rat::ZERO);

        let g = Dnf::new(vec![Term::of(&[1, 2])], 2).unwrap();
        assert_eq!(reldist_exhaustive(&f, &g).unwrap(), Rat::new(1, 2));

        let f1 = Dnf::new(vec![Term::of(&[1])], 1).unwrap();
        let g1 = Dnf::new(vec![Term::of(&[-1])], 1).unwrap();
        assert_eq!(reldist_exhaustive(&f1, &g1).unwrap(), Rat::int(2));
    }

    #[test]
    fn empty_support_rejected() {
        let z = Dnf::constant_zero(2);
        let f = Dnf::new(vec![Term::of(&[1])], 2).unwrap();
        assert_eq!(reldist_exhaustive(&z, &f), Err(BoolFnError::EmptySupport));
    }

    #[test]
    fn tables_agree_with_enumeration() {
        let f = Dnf::new(vec![Term::of(&[1, -2]), Term::of(&[3])], 3).unwrap();
        let g = Dnf::new(vec![Term::of(&[2, 3])], 3).unwrap();
        let tf = TruthTable::from_fn(&f).unwrap();
        let tg = TruthTable::from_fn(&g).unwrap();
        assert_eq!(
            reldist_exhaustive(&f, &g).unwrap(),
            reldist_tables(&tf, &tg).unwrap()
        );
    }
}
