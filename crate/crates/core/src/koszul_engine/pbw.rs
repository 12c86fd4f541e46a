//! Products in `U(n)` expanded in the PBW basis.
//!
//! A PBW monomial is a nondecreasing word of basis indices of `n`. Any word is
//! straightened by rewriting its first descent, `e_a e_b = e_b e_a + N_{a,b} e_{a+b}`;
//! the bracket term is a shorter word of the same weight, so the rewriting
//! terminates.

use std::collections::{BTreeMap, HashMap};

use crate::lie_core::NilpotentAlgebra;

pub type PbwVector = BTreeMap<Vec<usize>, i64>;

pub struct Pbw<'a> {
    alg: &'a NilpotentAlgebra,
    memo: HashMap<Vec<usize>, PbwVector>,
}

impl<'a> Pbw<'a> {
    pub fn new(alg: &'a NilpotentAlgebra) -> Self {
        Pbw { alg, memo: HashMap::new() }
    }

    /// The product `e_{w_0} e_{w_1} ... e_{w_k}` in the PBW basis.
    pub fn straighten(&mut self, word: &[usize]) -> PbwVector {
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let out = match word.windows(2).position(|p| p[0] > p[1]) {
            None => PbwVector::from([(word.to_vec(), 1)]),
            Some(i) => {
                let (a, b) = (word[i], word[i + 1]);
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut acc = self.straighten(&swapped);
                if let Some((c, n)) = self.alg.bracket(a, b) {
                    let mut merged = word[..i].to_vec();
                    merged.push(c);
                    merged.extend_from_slice(&word[i + 2..]);
                    for (k, v) in self.straighten(&merged) {
                        let e = acc.entry(k).or_insert(0);
                        *e = e.checked_add(n.checked_mul(v).expect("PBW coefficient overflow")).expect("PBW coefficient overflow");
                    }
                    acc.retain(|_, v| *v != 0);
                }
                acc
            }
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }
}

/// PBW monomials of weight `lambda`: nondecreasing words whose roots sum to it.
pub fn pbw_basis(alg: &NilpotentAlgebra, lambda: &crate::root_data::GradingVector) -> Vec<Vec<usize>> {
    fn rec(
        alg: &NilpotentAlgebra,
        start: usize,
        rest: &crate::root_data::GradingVector,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        for k in start..alg.dim() {
            if alg.root(k).le(rest) {
                cur.push(k);
                rec(alg, k, &rest.sub(alg.root(k)), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if lambda.in_positive_cone() {
        rec(alg, 0, lambda, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::chevalley_constants;
    use crate::root_data::{kostant_partition, GradingVector, RootSystem};

    #[test]
    fn commutator_in_a2() {
        let alg = chevalley_constants(&RootSystem::preset("A2").unwrap()).unwrap();
        let mut pbw = Pbw::new(&alg);
        let n = alg.constant(1, 0);
        // e_2 e_1 = e_1 e_2 + N_{2,1} e_3
        let v = pbw.straighten(&[1, 0]);
        assert_eq!(v, PbwVector::from([(vec![0, 1], 1), (vec![2], n)]));
    }

    #[test]
    fn straightening_is_associative() {
        let alg = chevalley_constants(&RootSystem::preset("B2").unwrap()).unwrap();
        let mut pbw = Pbw::new(&alg);
        let word = [3, 1, 0, 2, 1];
        // multiply the straightened prefix by the suffix, compare with the whole word
        let prefix = pbw.straighten(&word[..3]);
        let mut lhs = PbwVector::new();
        for (mono, c) in prefix {
            let mut w = mono.clone();
            w.extend_from_slice(&word[3..]);
            for (k, v) in pbw.straighten(&w) {
                *lhs.entry(k).or_insert(0) += c * v;
            }
        }
        lhs.retain(|_, v| *v != 0);
        assert_eq!(lhs, pbw.straighten(&word));
    }

    #[test]
    fn basis_size_is_kostant_partition() {
        let rs = RootSystem::preset("G2").unwrap();
        let alg = chevalley_constants(&rs).unwrap();
        for lambda in GradingVector::cone_up_to(2, 5) {
            assert_eq!(pbw_basis(&alg, &lambda).len() as u64, kostant_partition(&rs, &lambda));
        }
    }
}
