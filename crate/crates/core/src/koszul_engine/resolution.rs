//! Minimal graded free resolutions over `Sym(W)`, built degree by degree with
//! plain linear algebra. Used as an oracle for the Koszul-complex Tor.
//!
//! Level `k` chooses minimal generators of `Z_k`, where `Z_0 = M` and
//! `Z_k = ker(G_{k-1} -> Z_{k-1})`. In each degree the new generators are a
//! complement of the span of `x^m g` for the generators `g` already chosen.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::koszul_engine::tor::{free_piece, quotient_piece, FreePiece, GradedModule, QuotientPiece};
use crate::lie_core::GradedDims;
use crate::linalg::{independent_subset, QMatrix, Q};
use crate::root_data::GradingVector;

/// Element of a free module: `(generator, exponents) -> coefficient`.
type FreeElement = BTreeMap<(usize, Vec<u32>), Q>;

fn shift(e: &FreeElement, mono: &[u32]) -> FreeElement {
    e.iter()
        .map(|((g, ex), c)| ((*g, ex.iter().zip(mono).map(|(a, b)| a + b).collect()), c.clone()))
        .collect()
}

struct Level {
    degrees: Vec<GradingVector>,
    images: Vec<FreeElement>,
}

struct Resolver<'a> {
    m: &'a GradedModule,
    quotients: HashMap<GradingVector, QuotientPiece>,
    frees: HashMap<(usize, GradingVector), FreePiece>,
    levels: Vec<Level>,
}

impl Resolver<'_> {
    fn quotient(&mut self, delta: &GradingVector) -> &QuotientPiece {
        let m = self.m;
        self.quotients.entry(delta.clone()).or_insert_with(|| quotient_piece(m, delta))
    }

    /// Basis of `G_{k-1}` in degree `delta` (`k >= 1`).
    fn free(&mut self, k: usize, delta: &GradingVector) -> &FreePiece {
        let (space, gens) = (&self.m.space, &self.levels[k - 1].degrees);
        self.frees.entry((k, delta.clone())).or_insert_with(|| free_piece(space, gens, delta))
    }

    /// Coordinates of an element of the ambient of level `k` (the presentation
    /// module `F` reduced to `M` for `k = 0`, the free module `G_{k-1}` otherwise).
    fn coords(&mut self, k: usize, delta: &GradingVector, e: &FreeElement) -> Vec<Q> {
        if k == 0 {
            let piece = self.quotient(delta);
            let mut v = vec![Q::zero(); piece.free.basis.len()];
            for (key, c) in e {
                v[piece.free.index[key]] += c;
            }
            piece.reduce(v)
        } else {
            let piece = self.free(k, delta);
            let mut v = vec![Q::zero(); piece.basis.len()];
            for (key, c) in e {
                v[piece.index[key]] += c;
            }
            v
        }
    }

    fn ambient_dim(&mut self, k: usize, delta: &GradingVector) -> usize {
        if k == 0 {
            self.quotient(delta).dim()
        } else {
            self.free(k, delta).basis.len()
        }
    }

    /// Turns a coordinate vector of the level-`k` ambient back into an element.
    fn lift(&mut self, k: usize, delta: &GradingVector, v: &[Q]) -> FreeElement {
        let basis: Vec<(usize, Vec<u32>)> = if k == 0 {
            let piece = self.quotient(delta);
            piece.basis_cols.iter().map(|&c| piece.free.basis[c].clone()).collect()
        } else {
            self.free(k, delta).basis.clone()
        };
        basis.into_iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(b, c)| (b, c.clone())).collect()
    }

    /// Basis of `Z_k` in degree `delta`, in ambient coordinates.
    fn cycles(&mut self, k: usize, delta: &GradingVector) -> Vec<Vec<Q>> {
        let n = self.ambient_dim(k, delta);
        if k == 0 {
            return (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        }
        let basis = self.free(k, delta).basis.clone();
        let columns: Vec<Vec<Q>> = basis
            .iter()
            .map(|(g, mono)| {
                let e = shift(&self.levels[k - 1].images[*g], mono);
                self.coords(k - 1, delta, &e)
            })
            .collect();
        let rows = self.ambient_dim(k - 1, delta);
        if rows == 0 {
            return (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        }
        QMatrix::from_rows(&columns).transpose().kernel()
    }
}

/// Graded Betti numbers `beta_{k, delta}` of a minimal free resolution of `M`,
/// for all degrees of height at most `bound`.
pub fn minimal_resolution_betti(m: &GradedModule, bound: u32) -> GradedDims<GradingVector> {
    let degrees = GradingVector::cone_up_to(m.space.lattice_rank(), bound);
    let mut r = Resolver { m, quotients: HashMap::new(), frees: HashMap::new(), levels: Vec::new() };
    let mut out = GradedDims::new();
    out.bound = Some(bound);
    for k in 0..=m.space.dim() + 1 {
        let mut level = Level { degrees: Vec::new(), images: Vec::new() };
        for delta in &degrees {
            let z = r.cycles(k, delta);
            if z.is_empty() {
                continue;
            }
            let mut span = Vec::new();
            for (deg, img) in level.degrees.iter().zip(&level.images) {
                let rest = delta.sub(deg);
                if rest.is_zero() || !rest.in_positive_cone() {
                    continue;
                }
                for mono in m.space.monomials(&rest) {
                    span.push(r.coords(k, delta, &shift(img, &mono)));
                }
            }
            let offset = span.len();
            let dim = z[0].len();
            span.extend(z);
            let (chosen, _) = independent_subset(&span, dim);
            for &c in chosen.iter().filter(|&&c| c >= offset) {
                let img = r.lift(k, delta, &span[c]);
                level.degrees.push(delta.clone());
                level.images.push(img);
                out.add(delta.clone(), k as i64, 1);
            }
        }
        let done = level.degrees.is_empty();
        r.levels.push(level);
        if done {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul_engine::tor::GradedSpace;
    use crate::linalg::q;

    #[test]
    fn resolution_of_residue_field() {
        let m = GradedModule::residue_field(GradedSpace::standard(2));
        let b = minimal_resolution_betti(&m, 4);
        let g = |d| GradingVector(vec![d]);
        assert_eq!(b.get(&g(0), 0), 1);
        assert_eq!(b.get(&g(1), 1), 2);
        assert_eq!(b.get(&g(2), 2), 1);
        assert_eq!(b.total(), 4);
    }

    #[test]
    fn redundant_presentation_is_minimized() {
        // two generators, the second equal to x * first: M = Sym(W)
        let w = GradedSpace::standard(1);
        let m = GradedModule::new(
            w,
            vec![GradingVector(vec![0]), GradingVector(vec![1])],
            vec![vec![
                crate::koszul_engine::tor::Term { generator: 1, exponents: vec![0], coefficient: q(1) },
                crate::koszul_engine::tor::Term { generator: 0, exponents: vec![1], coefficient: q(-1) },
            ]],
        )
        .unwrap();
        let b = minimal_resolution_betti(&m, 5);
        assert_eq!(b.total(), 1);
    }

    #[test]
    fn complete_intersection_of_quadric() {
        let w = GradedSpace::standard(3);
        let m = GradedModule::cyclic_quotient(w, vec![(vec![1, 1, 0], q(1)), (vec![0, 0, 2], q(-1))]).unwrap();
        let b = minimal_resolution_betti(&m, 6);
        assert_eq!(b.get(&GradingVector(vec![0]), 0), 1);
        assert_eq!(b.get(&GradingVector(vec![2]), 1), 1);
        assert_eq!(b.total(), 2);
    }
}
