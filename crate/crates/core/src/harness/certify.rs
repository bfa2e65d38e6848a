use super::HarnessError;
use crate::boolfn::{Dnf, Literal, Rat, Term, TruthTable};

/// Exact minimum relative distance to the class of DNFs with at most `s`
/// terms, with a witness. The search enumerates all terms over the
/// dimension, so it is capped hard.
#[derive(Clone, Debug)]
pub struct FarCertificate {
    pub min_reldist: Rat,
    pub nearest: Dnf,
}

const CERT_N_CAP: usize = 10;
const CERT_S_CAP: usize = 2;

/// All 3^n terms over n variables as truth tables (word vectors), paired
/// with their literal encodings.
fn all_terms(n: usize) -> (Vec<Vec<u64>>, Vec<Term>) {
    let size = 1usize << n;
    let words = size.div_ceil(64);
    let var_tables: Vec<Vec<u64>> = (1..=n)
        .map(|v| {
            let mut t = vec![0u64; words];
            for idx in 0..size {
                if (idx >> (v - 1)) & 1 == 1 {
                    t[idx / 64] |= 1 << (idx % 64);
                }
            }
            t
        })
        .collect();
    let full: Vec<u64> = {
        let mut t = vec![u64::MAX; words];
        if size % 64 != 0 {
            let last = words - 1;
            t[last] = (1u64 << (size % 64)) - 1;
        }
        t
    };

    let mut tables = Vec::with_capacity(3usize.pow(n as u32));
    let mut terms = Vec::with_capacity(tables.capacity());
    let mut state = vec![0u8; n];
    loop {
        let mut t = full.clone();
        let mut lits = Vec::new();
        for v in 1..=n {
            match state[v - 1] {
                0 => {}
                1 => {
                    for (w, x) in t.iter_mut().zip(&var_tables[v - 1]) {
                        *w &= *x;
                    }
                    lits.push(Literal::pos(v));
                }
                _ => {
                    for (w, x) in t.iter_mut().zip(&var_tables[v - 1]) {
                        *w &= !*x;
                    }
                    for (w, f) in t.iter_mut().zip(&full) {
                        *w &= *f;
                    }
                    lits.push(Literal::neg(v));
                }
            }
        }
        tables.push(t);
        terms.push(Term::new(lits).unwrap());
        let mut pos = 0;
        loop {
            if pos == n {
                return (tables, terms);
            }
            state[pos] += 1;
            if state[pos] < 3 {
                break;
            }
            state[pos] = 0;
            pos += 1;
        }
    }
}

fn sym_diff_count(f: &[u64], g: &[u64]) -> u64 {
    f.iter()
        .zip(g)
        .map(|(a, b)| (a ^ b).count_ones() as u64)
        .sum()
}

/// Exact nearest `<= s`-term DNF under relative distance, by enumerating
/// all multisets of terms (a multiset's union equals the union of its
/// distinct elements, so subsets suffice).
pub fn certify_far(table: &TruthTable, s: usize) -> Result<FarCertificate, HarnessError> {
    let n = table.n();
    if n > CERT_N_CAP {
        return Err(HarnessError::CapExceeded(format!(
            "certify_far: n {n} over {CERT_N_CAP}"
        )));
    }
    if s == 0 || s > CERT_S_CAP {
        return Err(HarnessError::CapExceeded(format!(
            "certify_far: s {s} outside 1..={CERT_S_CAP}"
        )));
    }
    let support = table.support_size() as u64;
    if support == 0 {
        return Err(HarnessError::BoolFn(crate::boolfn::BoolFnError::EmptySupport));
    }
    let f_words = table.words();
    let (term_tables, terms) = all_terms(n);

    // The empty DNF (constant 0) is an s-term DNF too.
    let zero_dist = Rat::new(support, support); // |f^{-1}(1)| / |f^{-1}(1)| = 1
    let mut best = (zero_dist, Dnf::constant_zero(n));

    for i in 0..term_tables.len() {
        let sym = sym_diff_count(f_words, &term_tables[i]);
        let d = Rat::new(sym, support);
        if d < best.0 {
            best = (d, Dnf::new(vec![terms[i].clone()], n).unwrap());
            if best.0.is_zero() {
                return Ok(FarCertificate {
                    min_reldist: best.0,
                    nearest: best.1,
                });
            }
        }
    }
    if s >= 2 {
        let words = f_words.len();
        let mut buf = vec![0u64; words];
        for i in 0..term_tables.len() {
            let ti = &term_tables[i];
            // Lower bound: the pair's distance is at least the count of
            // support points missed by both terms; cheap pruning is not
            // worthwhile at these sizes, so enumerate directly.
            for j in i..term_tables.len() {
                let tj = &term_tables[j];
                let mut sym = 0u64;
                for w in 0..words {
                    buf[w] = ti[w] | tj[w];
                    sym += (buf[w] ^ f_words[w]).count_ones() as u64;
                }
                if Rat::new(sym, support) < best.0 {
                    best = (
                        Rat::new(sym, support),
                        Dnf::new(vec![terms[i].clone(), terms[j].clone()], n).unwrap(),
                    );
                    if best.0.is_zero() {
                        return Ok(FarCertificate {
                            min_reldist: best.0,
                            nearest: best.1,
                        });
                    }
                }
            }
        }
    }
    Ok(FarCertificate {
        min_reldist: best.0,
        nearest: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{reldist_tables, BoolFn, Point};
    use crate::harness::gen::{gen_random_dnf, WidthDist};
    use crate::oracle::SeedTree;

    #[test]
    fn dnf_instance_certifies_at_zero() {
        let mut rng = SeedTree::new(4).rng();
        let f = gen_random_dnf(6, 2, WidthDist::Uniform { lo: 2, hi: 4 }, &mut rng).unwrap();
        let t = TruthTable::from_fn(&f).unwrap();
        let cert = certify_far(&t, 2).unwrap();
        assert!(cert.min_reldist.is_zero());
    }

    #[test]
    fn xor_at_distance_one_half() {
        // n=2, s=1, f = XOR: nearest conjunction is x1&~x2 or ~x1&x2 at
        // relative distance 1/2.
        struct Xor;
        impl BoolFn for Xor {
            fn n(&self) -> usize {
                2
            }
            fn eval(&self, p: Point) -> bool {
                p.get(1) != p.get(2)
            }
        }
        let t = TruthTable::from_fn(&Xor).unwrap();
        let cert = certify_far(&t, 1).unwrap();
        assert_eq!(cert.min_reldist, Rat::new(1, 2));
        let nearest_table = TruthTable::from_fn(&cert.nearest).unwrap();
        assert_eq!(
            reldist_tables(&t, &nearest_table).unwrap(),
            Rat::new(1, 2)
        );
    }

    #[test]
    fn min_distance_monotone_in_s() {
        let mut rng = SeedTree::new(5).rng();
        for trial in 0..100 {
            let n = 5;
            let mut t = TruthTable::constant(n, false);
            for idx in 0..t.size() {
                if rng.gen_range(0..4u32) == 0 {
                    t.set_index(idx, true);
                }
            }
            if t.support_size() == 0 {
                continue;
            }
            let d1 = certify_far(&t, 1).unwrap().min_reldist;
            let d2 = certify_far(&t, 2).unwrap().min_reldist;
            assert!(d2 <= d1, "trial {trial}: {d2:?} > {d1:?}");
        }
    }

    #[test]
    fn caps_enforced() {
        let t = TruthTable::constant(11, true);
        assert!(matches!(
            certify_far(&t, 1),
            Err(HarnessError::CapExceeded(_))
        ));
        let t = TruthTable::constant(4, true);
        assert!(certify_far(&t, 3).is_err());
    }

    use rand::Rng;
}
