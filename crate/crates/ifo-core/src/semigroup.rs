//! Breadth-first closure of a set of binary matrices under boolean
//! multiplication, with a shortest product word retained per element.

use crate::error::CoreError;
use crate::limits::Limits;
use crate::matrix::{bool_mul, BinaryMatrix};
use indexmap::IndexSet;
use std::ops::ControlFlow;

const DEADLINE_STRIDE: u64 = 1024;

/// How a closure run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    /// Every product of elements is already an element.
    Complete,
    /// The visitor stopped the run at the given element index.
    Stopped { element: usize },
    /// The element limit was hit; the closure is a proper prefix.
    LimitExceeded,
    /// The deadline passed; the closure is a proper prefix.
    TimedOut,
}

/// The semigroup generated by a list of matrices, in discovery order.
///
/// Element 0..k are the distinct generators; every later element is a
/// product (earlier element) x (generator). Each element records which
/// generator produced it and from where, so a shortest generator-index
/// word is reconstructible per element.
pub struct SemigroupClosure {
    dim: usize,
    generator_count: usize,
    elements: IndexSet<BinaryMatrix>,
    // provenance[i] = (generator index in the input list, parent element);
    // parent is None for the generators themselves.
    provenance: Vec<(usize, Option<usize>)>,
}

impl SemigroupClosure {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn element(&self, index: usize) -> &BinaryMatrix {
        self.elements.get_index(index).expect("element index in range")
    }

    pub fn contains(&self, m: &BinaryMatrix) -> bool {
        self.elements.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BinaryMatrix> {
        self.elements.iter()
    }

    /// A shortest discovered generator-index word whose product is the
    /// element, left to right.
    pub fn witness(&self, index: usize) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cursor = Some(index);
        while let Some(i) = cursor {
            let (gen, parent) = self.provenance[i];
            word.push(gen);
            cursor = parent;
        }
        word.reverse();
        word
    }
}

/// Closes `generators` under boolean multiplication, breadth first.
///
/// The worklist pops elements in discovery order and multiplies each on
/// the right by every generator; unseen products are appended. `visitor`
/// is invoked exactly once per distinct element, generators included, in
/// discovery order; returning `ControlFlow::Break` stops the run. The
/// element limit and deadline of `limits` turn oversized closures into a
/// reported partial result.
pub fn generate_semigroup<F>(
    generators: &[BinaryMatrix],
    limits: &Limits,
    mut visitor: F,
) -> Result<(SemigroupClosure, ClosureOutcome), CoreError>
where
    F: FnMut(usize, &BinaryMatrix) -> ControlFlow<()>,
{
    let dim = generators.first().ok_or(CoreError::NoGenerators)?.dim();
    for g in generators {
        if g.dim() != dim {
            return Err(CoreError::DimensionMismatch(dim, g.dim()));
        }
    }

    let mut elements: IndexSet<BinaryMatrix> = IndexSet::new();
    let mut provenance: Vec<(usize, Option<usize>)> = Vec::new();
    // Distinct generators to multiply by, remembering the input index the
    // witness words will refer to.
    let mut muls: Vec<(usize, usize)> = Vec::new(); // (element index, input index)

    for (gi, g) in generators.iter().enumerate() {
        let (idx, new) = elements.insert_full(g.clone());
        if new {
            provenance.push((gi, None));
            muls.push((idx, gi));
        }
    }
    let generator_count = elements.len();

    let finish = |elements, provenance, outcome| {
        (
            SemigroupClosure {
                dim,
                generator_count,
                elements,
                provenance,
            },
            outcome,
        )
    };

    // Visit the generators first.
    for i in 0..generator_count {
        if visitor(i, elements.get_index(i).unwrap()) == ControlFlow::Break(()) {
            return Ok(finish(elements, provenance, ClosureOutcome::Stopped { element: i }));
        }
    }
    if elements.len() as u64 > limits.element_limit {
        return Ok(finish(elements, provenance, ClosureOutcome::LimitExceeded));
    }

    let mut cursor = 0usize;
    let mut products = 0u64;
    while cursor < elements.len() {
        for mi in 0..muls.len() {
            let (gen_elem, gen_input) = muls[mi];
            products += 1;
            if products % DEADLINE_STRIDE == 0 && limits.past_deadline() {
                return Ok(finish(elements, provenance, ClosureOutcome::TimedOut));
            }
            let product = bool_mul(
                elements.get_index(cursor).unwrap(),
                elements.get_index(gen_elem).unwrap(),
            )
            .expect("equal dimensions by construction");
            let (idx, new) = elements.insert_full(product);
            if !new {
                continue;
            }
            provenance.push((gen_input, Some(cursor)));
            if visitor(idx, elements.get_index(idx).unwrap()) == ControlFlow::Break(()) {
                return Ok(finish(elements, provenance, ClosureOutcome::Stopped { element: idx }));
            }
            if elements.len() as u64 > limits.element_limit {
                return Ok(finish(elements, provenance, ClosureOutcome::LimitExceeded));
            }
        }
        cursor += 1;
    }
    Ok(finish(elements, provenance, ClosureOutcome::Complete))
}

/// Closure without a visitor or early exit.
pub fn close(
    generators: &[BinaryMatrix],
    limits: &Limits,
) -> Result<(SemigroupClosure, ClosureOutcome), CoreError> {
    generate_semigroup(generators, limits, |_, _| ControlFlow::Continue(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{all_matrices, b2_generators};

    fn closure_of(gens: &[BinaryMatrix]) -> SemigroupClosure {
        let (c, outcome) = close(gens, &Limits::default()).unwrap();
        assert_eq!(outcome, ClosureOutcome::Complete);
        c
    }

    #[test]
    fn b2_generators_close_to_sixteen() {
        let c = closure_of(&b2_generators());
        assert_eq!(c.len(), 16);
        assert_eq!(c.generator_count(), 3);
    }

    #[test]
    fn identity_alone_closes_to_itself() {
        let c = closure_of(&[BinaryMatrix::identity(3)]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn full_matrix_sets_are_closed() {
        // 2^(n^2) matrices generate themselves, n = 1, 2, 3.
        assert_eq!(closure_of(&all_matrices(1)).len(), 2);
        assert_eq!(closure_of(&all_matrices(2)).len(), 16);
        assert_eq!(closure_of(&all_matrices(3)).len(), 512);
    }

    #[test]
    fn closure_is_closed_under_products() {
        let c = closure_of(&b2_generators());
        for x in c.iter() {
            for y in c.iter() {
                assert!(c.contains(&bool_mul(x, y).unwrap()));
            }
        }
    }

    #[test]
    fn witnesses_reproduce_their_elements() {
        let gens = b2_generators();
        let c = closure_of(&gens);
        for i in 0..c.len() {
            let word = c.witness(i);
            assert!(!word.is_empty());
            let mut m = gens[word[0]].clone();
            for &g in &word[1..] {
                m = bool_mul(&m, &gens[g]).unwrap();
            }
            assert_eq!(&m, c.element(i));
        }
    }

    #[test]
    fn limit_is_reported() {
        let limits = Limits::default().with_budget(5);
        let (c, outcome) = generate_semigroup(&b2_generators(), &limits, |_, _| {
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(outcome, ClosureOutcome::LimitExceeded);
        assert!(c.len() <= 6);
    }

    #[test]
    fn visitor_sees_each_element_once_and_can_stop() {
        let gens = b2_generators();
        let mut seen = Vec::new();
        let (_, outcome) = generate_semigroup(&gens, &Limits::default(), |i, _| {
            seen.push(i);
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(outcome, ClosureOutcome::Complete);
        assert_eq!(seen, (0..16).collect::<Vec<_>>());

        let (_, outcome) = generate_semigroup(&gens, &Limits::default(), |i, _| {
            if i == 4 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(outcome, ClosureOutcome::Stopped { element: 4 });
    }

    #[test]
    fn rejects_empty_and_mismatched_generators() {
        assert!(matches!(
            close(&[], &Limits::default()),
            Err(CoreError::NoGenerators)
        ));
        let gens = [BinaryMatrix::identity(2), BinaryMatrix::identity(3)];
        assert!(matches!(
            close(&gens, &Limits::default()),
            Err(CoreError::DimensionMismatch(2, 3))
        ));
    }
}
