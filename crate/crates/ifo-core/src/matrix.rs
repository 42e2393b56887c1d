//! Binary matrices as relations on automaton states.
//!
//! A word over an automaton induces the relation "state j is reachable
//! from state i under that word"; events are the generators. Matrices are
//! stored row-major as bit blocks, so boolean multiplication is a union
//! of rows selected by the bits of the left operand.

use crate::alphabet::Alphabet;
use crate::bitset::{blocks_for, StateSet};
use crate::error::CoreError;
use crate::nfa::Nfa;

/// An `n x n` boolean matrix; entry `(i, j)` is 1 iff the pair is in the
/// relation. Compares and hashes by value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    bits: Box<[u64]>,
}

impl BinaryMatrix {
    /// The zero matrix.
    pub fn zero(n: usize) -> BinaryMatrix {
        BinaryMatrix {
            n,
            bits: vec![0; n * blocks_for(n)].into_boxed_slice(),
        }
    }

    pub fn identity(n: usize) -> BinaryMatrix {
        let mut m = BinaryMatrix::zero(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn from_entries(n: usize, entries: &[(usize, usize)]) -> BinaryMatrix {
        let mut m = BinaryMatrix::zero(n);
        for &(i, j) in entries {
            m.set(i, j);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn row_blocks(&self) -> usize {
        blocks_for(self.n)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n);
        let rb = self.row_blocks();
        self.bits[i * rb + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        let rb = self.row_blocks();
        self.bits[i * rb + j / 64] & (1 << (j % 64)) != 0
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        let rb = self.row_blocks();
        &self.bits[i * rb..(i + 1) * rb]
    }

    /// Row `i` as a state set over `0..n`.
    pub fn row_set(&self, i: usize) -> StateSet {
        let mut s = StateSet::new(self.n);
        s.union_with_blocks(self.row(i));
        s
    }

    /// True iff row `i` has a 1 in some column of `cols`.
    #[inline]
    pub fn row_intersects(&self, i: usize, cols: &StateSet) -> bool {
        debug_assert_eq!(cols.width(), self.n);
        self.row(i)
            .iter()
            .zip(cols.blocks())
            .any(|(a, b)| a & b != 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.row_set(i).iter().map(move |j| (i, j)).collect::<Vec<_>>())
    }

    pub fn is_identity(&self) -> bool {
        *self == BinaryMatrix::identity(self.n)
    }
}

impl std::fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", if self.get(i, j) { 1 } else { 0 })?;
            }
            if i + 1 < self.n {
                write!(f, "|")?;
            }
        }
        Ok(())
    }
}

/// Boolean matrix product: `c_ij = max_k (x_ik * y_kj)`.
///
/// Row `i` of the result is the union of the rows of `y` selected by the
/// bits of row `i` of `x`.
pub fn bool_mul(x: &BinaryMatrix, y: &BinaryMatrix) -> Result<BinaryMatrix, CoreError> {
    if x.n != y.n {
        return Err(CoreError::DimensionMismatch(x.n, y.n));
    }
    let n = x.n;
    let rb = x.row_blocks();
    let mut out = BinaryMatrix::zero(n);
    for i in 0..n {
        let xrow = &x.bits[i * rb..(i + 1) * rb];
        let orow = &mut out.bits[i * rb..(i + 1) * rb];
        for (bi, &block) in xrow.iter().enumerate() {
            let mut rest = block;
            while rest != 0 {
                let k = bi * 64 + rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let yrow = &y.bits[k * rb..(k + 1) * rb];
                for (o, &b) in orow.iter_mut().zip(yrow) {
                    *o |= b;
                }
            }
        }
    }
    Ok(out)
}

/// The relation matrix of one observable event: `(i, j)` is 1 iff
/// `j ∈ δ(i, e)`. The automaton must be projected.
pub fn matrix_of_event(a: &Nfa, event: &str) -> Result<BinaryMatrix, CoreError> {
    debug_assert!(!a.alphabet().has_unobservable());
    let e = a
        .alphabet()
        .index_of(event)
        .ok_or_else(|| CoreError::UnknownEvent(event.to_string()))?;
    Ok(matrix_of_event_id(a, e))
}

pub(crate) fn matrix_of_event_id(a: &Nfa, event: usize) -> BinaryMatrix {
    let n = a.state_count();
    let mut m = BinaryMatrix::zero(n);
    for i in 0..n {
        for j in a.successors(i, event).iter() {
            m.set(i, j);
        }
    }
    m
}

/// Builds the automaton whose events realize the given matrices: one
/// observable event per matrix, named `e0`, `e1`, ..., with a transition
/// `i -> j` exactly where the matrix has a 1. `matrix_of_event` inverts
/// this construction.
pub fn automaton_from_matrices(mats: &[BinaryMatrix]) -> Result<Nfa, CoreError> {
    let n = mats
        .first()
        .ok_or(CoreError::NoGenerators)?
        .dim();
    if n == 0 {
        return Err(CoreError::InvalidFamilyParam("dimension must be >= 1".into()));
    }
    for m in mats {
        if m.dim() != n {
            return Err(CoreError::DimensionMismatch(n, m.dim()));
        }
    }
    let names: Vec<String> = (0..mats.len()).map(|k| format!("e{k}")).collect();
    let alphabet = Alphabet::all_observable(names)?;
    let mut nfa = Nfa::new(n, alphabet);
    for (k, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in m.row_set(i).iter() {
                nfa.add(i, k, j)?;
            }
        }
    }
    Ok(nfa)
}

/// All `n x n` binary matrices in a fixed enumeration order (row-major
/// cell bits of the index). Only sensible for tiny `n`.
pub fn all_matrices(n: usize) -> Vec<BinaryMatrix> {
    let cells = n * n;
    assert!(cells <= 16, "2^{cells} matrices is out of range");
    (0..1u32 << cells)
        .map(|code| {
            let mut m = BinaryMatrix::zero(n);
            for c in 0..cells {
                if code & (1 << c) != 0 {
                    m.set(c / n, c % n);
                }
            }
            m
        })
        .collect()
}

/// The three generator matrices of the full semigroup of 2x2 binary
/// matrices: a swap, a lower-triangular collapse, and a rank-one drop.
pub fn b2_generators() -> [BinaryMatrix; 3] {
    [
        BinaryMatrix::from_entries(2, &[(0, 1), (1, 0)]),
        BinaryMatrix::from_entries(2, &[(0, 0), (1, 0), (1, 1)]),
        BinaryMatrix::from_entries(2, &[(0, 0)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::a2_automaton;

    #[test]
    fn event_matrices_of_a2() {
        let a = a2_automaton();
        assert_eq!(
            matrix_of_event(&a, "a").unwrap(),
            BinaryMatrix::from_entries(2, &[(0, 1), (1, 0)])
        );
        assert_eq!(
            matrix_of_event(&a, "b").unwrap(),
            BinaryMatrix::from_entries(2, &[(0, 0), (1, 0), (1, 1)])
        );
        // An event with no transitions is the zero matrix.
        let empty = Nfa::new(2, Alphabet::all_observable(vec!["x"]).unwrap());
        assert_eq!(matrix_of_event(&empty, "x").unwrap(), BinaryMatrix::zero(2));
        assert!(matches!(
            matrix_of_event(&empty, "nope"),
            Err(CoreError::UnknownEvent(_))
        ));
    }

    #[test]
    fn bool_mul_cases() {
        let id = BinaryMatrix::identity(3);
        let m = BinaryMatrix::from_entries(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(bool_mul(&id, &m).unwrap(), m);
        assert_eq!(bool_mul(&m, &id).unwrap(), m);
        assert_eq!(
            bool_mul(&BinaryMatrix::zero(3), &m).unwrap(),
            BinaryMatrix::zero(3)
        );

        // Over A2: (a)(b)(a)(b) is the all-ones matrix.
        let a = a2_automaton();
        let ma = matrix_of_event(&a, "a").unwrap();
        let mb = matrix_of_event(&a, "b").unwrap();
        let abab = bool_mul(&bool_mul(&bool_mul(&ma, &mb).unwrap(), &ma).unwrap(), &mb).unwrap();
        assert_eq!(
            abab,
            BinaryMatrix::from_entries(2, &[(0, 0), (0, 1), (1, 0), (1, 1)])
        );

        assert!(matches!(
            bool_mul(&id, &BinaryMatrix::zero(2)),
            Err(CoreError::DimensionMismatch(3, 2))
        ));
    }

    #[test]
    fn matrices_to_automaton_and_back() {
        let gens = b2_generators();
        let nfa = automaton_from_matrices(&gens).unwrap();
        // Same transition structure as A2 (event names differ).
        let a2 = a2_automaton();
        for e in 0..3 {
            for q in 0..2 {
                assert_eq!(nfa.successors(q, e), a2.successors(q, e));
            }
        }
        for (k, g) in gens.iter().enumerate() {
            assert_eq!(&matrix_of_event_id(&nfa, k), g);
        }

        // A single identity matrix: self-loops on one event.
        let nfa = automaton_from_matrices(&[BinaryMatrix::identity(4)]).unwrap();
        assert!(nfa.is_deterministic());
        for q in 0..4 {
            assert!(nfa.successors(q, 0).contains(q));
            assert_eq!(nfa.successors(q, 0).len(), 1);
        }

        // All 2^(n^2) matrices for n = 2: a 16-event automaton.
        let all = all_matrices(2);
        assert_eq!(all.len(), 16);
        let nfa = automaton_from_matrices(&all).unwrap();
        assert_eq!(nfa.alphabet().len(), 16);
        for (k, m) in all.iter().enumerate() {
            assert_eq!(&matrix_of_event_id(&nfa, k), m);
        }
    }
}
