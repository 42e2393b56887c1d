//! Generators of the named instance families used by tests and
//! benchmarks: the full-relation-semigroup automata, random two-event
//! automata, partially ordered and partial-transformation families, and
//! a general seeded random generator.
//!
//! Every generator is deterministic per seed (see [`crate::rng`]).

use crate::alphabet::Alphabet;
use crate::error::CoreError;
use crate::matrix::{all_matrices, automaton_from_matrices, BinaryMatrix};
use crate::nfa::Nfa;
use crate::rng::SplitMix64;
use crate::verifier::IfoInstance;
use std::collections::BTreeSet;

fn diagonal(n: usize) -> BTreeSet<(usize, usize)> {
    (0..n).map(|i| (i, i)).collect()
}

/// The two-state, three-event automaton whose event relations generate
/// all sixteen 2x2 boolean relations: `a` swaps the states, `b` sends
/// both to the first and keeps the second, `c` keeps the first only.
pub fn a2_automaton() -> Nfa {
    let alphabet = Alphabet::all_observable(vec!["a", "b", "c"]).expect("fixed names");
    let mut nfa = Nfa::new(2, alphabet);
    for (src, event, dst) in [
        (0, "a", 1),
        (1, "a", 0),
        (0, "b", 0),
        (1, "b", 0),
        (1, "b", 1),
        (0, "c", 0),
    ] {
        nfa.add_by_name(src, event, dst).expect("in range");
    }
    nfa
}

/// [`a2_automaton`] with the diagonal as both pair sets: the canonical
/// positive instance on which the trellis engine must build all sixteen
/// relations.
pub fn family_b2() -> IfoInstance {
    IfoInstance::new(a2_automaton(), diagonal(2), diagonal(2)).expect("pairs in range")
}

/// The n-state automaton with one observable event per n x n boolean
/// matrix (`2^(n^2)` events) and diagonal pair sets. The semigroup of
/// its event relations is the full matrix semigroup.
pub fn family_bn(n: usize) -> Result<IfoInstance, CoreError> {
    if !(1..=3).contains(&n) {
        return Err(CoreError::InvalidFamilyParam(format!(
            "full matrix family needs 1 <= n <= 3, got {n}"
        )));
    }
    let nfa = automaton_from_matrices(&all_matrices(n))?;
    IfoInstance::new(nfa, diagonal(n), diagonal(n))
}

/// A seeded n-state automaton with two observable events, each realized
/// by a uniformly random n x n relation with exactly `ones` ones, and
/// diagonal pair sets. Requires `n < ones <= n^2`.
pub fn family_random_two_event(n: usize, ones: usize, seed: u64) -> Result<IfoInstance, CoreError> {
    if n == 0 || ones <= n || ones > n * n {
        return Err(CoreError::InvalidFamilyParam(format!(
            "two-event family needs n < ones <= n^2, got n={n}, ones={ones}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let alphabet = Alphabet::all_observable(vec!["a", "b"])?;
    let mut nfa = Nfa::new(n, alphabet);
    for event in 0..2 {
        for cell in rng.distinct(n * n, ones) {
            nfa.add(cell / n, event, cell % n)?;
        }
    }
    IfoInstance::new(nfa, diagonal(n), diagonal(n))
}

/// A partially ordered automaton whose events are all upper-triangular
/// n x n relations except the identity (`2^(n(n+1)/2) - 1` of them),
/// with diagonal pair sets.
pub fn family_upper_triangular(n: usize) -> Result<IfoInstance, CoreError> {
    if !(1..=3).contains(&n) {
        return Err(CoreError::InvalidFamilyParam(format!(
            "upper triangular family needs 1 <= n <= 3, got {n}"
        )));
    }
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let mut mats = Vec::new();
    for code in 0u32..(1 << cells.len()) {
        let mut m = BinaryMatrix::zero(n);
        for (k, &(i, j)) in cells.iter().enumerate() {
            if code & (1 << k) != 0 {
                m.set(i, j);
            }
        }
        if !m.is_identity() {
            mats.push(m);
        }
    }
    let nfa = automaton_from_matrices(&mats)?;
    IfoInstance::new(nfa, diagonal(n), diagonal(n))
}

/// The four partial transformations used as events of the deterministic
/// family: the full cycle, the transposition of the first two points,
/// the collapse of point 1 onto point 0, and the partial identity
/// undefined on the last point. Together they generate every partial
/// function on `0..n` (the test suite verifies this by brute-force
/// closure for n <= 4).
pub fn partial_transformation_generators(n: usize) -> [BinaryMatrix; 4] {
    let mut cycle = BinaryMatrix::zero(n);
    let mut transposition = BinaryMatrix::zero(n);
    let mut collapse = BinaryMatrix::zero(n);
    let mut partial_identity = BinaryMatrix::zero(n);
    for q in 0..n {
        cycle.set(q, (q + 1) % n);
        let swapped = match q {
            0 => 1,
            1 => 0,
            _ => q,
        };
        transposition.set(q, swapped);
        collapse.set(q, if q == 1 { 0 } else { q });
        if q != n - 1 {
            partial_identity.set(q, q);
        }
    }
    [cycle, transposition, collapse, partial_identity]
}

/// A deterministic, fully observable automaton whose four events realize
/// a generating set of the partial transformations on `0..n`, with
/// diagonal pair sets. The relation semigroup over it has exactly
/// `(n+1)^n` elements.
pub fn family_partial_transformations(n: usize) -> Result<IfoInstance, CoreError> {
    if !(2..=4).contains(&n) {
        return Err(CoreError::InvalidFamilyParam(format!(
            "partial transformation family needs 2 <= n <= 4, got {n}"
        )));
    }
    let nfa = automaton_from_matrices(&partial_transformation_generators(n))?;
    IfoInstance::new(nfa, diagonal(n), diagonal(n))
}

/// Parameters of the general seeded random family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub states: usize,
    pub events: usize,
    /// How many of the events are unobservable (the last ones).
    pub unobservable_events: usize,
    /// Probability of each (state, event, state) transition.
    pub density: f64,
    pub secret_pairs: usize,
    pub nonsecret_pairs: usize,
    pub seed: u64,
}

impl RandomSpec {
    fn validate(&self) -> Result<(), CoreError> {
        let cells = self.states * self.states;
        if self.states == 0
            || self.events == 0
            || self.unobservable_events > self.events
            || !(0.0..=1.0).contains(&self.density)
            || self.secret_pairs > cells
            || self.nonsecret_pairs > cells
        {
            return Err(CoreError::InvalidFamilyParam(format!("{self:?}")));
        }
        Ok(())
    }
}

/// A seeded random instance: transitions drawn cell by cell with the
/// given density, pair sets drawn as distinct pairs of the requested
/// sizes. Identical spec, identical instance.
pub fn family_random(spec: &RandomSpec) -> Result<IfoInstance, CoreError> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let names: Vec<String> = (0..spec.events)
        .map(|e| {
            if e < spec.events - spec.unobservable_events {
                format!("e{e}")
            } else {
                format!("u{e}")
            }
        })
        .collect();
    let observable_count = spec.events - spec.unobservable_events;
    let alphabet = Alphabet::new(
        names
            .into_iter()
            .enumerate()
            .map(|(e, name)| (name, e < observable_count))
            .collect(),
    )?;
    let mut nfa = Nfa::new(spec.states, alphabet);
    for src in 0..spec.states {
        for event in 0..spec.events {
            for dst in 0..spec.states {
                if rng.chance(spec.density) {
                    nfa.add(src, event, dst)?;
                }
            }
        }
    }
    let n = spec.states;
    let mut draw_pairs = |count: usize| -> BTreeSet<(usize, usize)> {
        rng.distinct(n * n, count)
            .into_iter()
            .map(|cell| (cell / n, cell % n))
            .collect()
    };
    let secret = draw_pairs(spec.secret_pairs);
    let nonsecret = draw_pairs(spec.nonsecret_pairs);
    IfoInstance::new(nfa, secret, nonsecret)
}

/// A family selector plus its parameters, the unit the command line and
/// corpus builders work in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilySpec {
    B2,
    Bn { n: usize },
    TwoEvent { n: usize, ones: usize, seed: u64 },
    UpperTriangular { n: usize },
    PartialTransformations { n: usize },
    Random(RandomSpec),
}

impl FamilySpec {
    pub fn generate(&self) -> Result<IfoInstance, CoreError> {
        match *self {
            FamilySpec::B2 => Ok(family_b2()),
            FamilySpec::Bn { n } => family_bn(n),
            FamilySpec::TwoEvent { n, ones, seed } => family_random_two_event(n, ones, seed),
            FamilySpec::UpperTriangular { n } => family_upper_triangular(n),
            FamilySpec::PartialTransformations { n } => family_partial_transformations(n),
            FamilySpec::Random(ref spec) => family_random(spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::semigroup::close;
    use crate::trellis::{semigroup_observer_correspondence, trellis_verify};
    use crate::verifier::VerdictKind;

    #[test]
    fn b2_transition_table() {
        let inst = family_b2();
        let a = &inst.automaton;
        let succ = |q: usize, e: &str, r: usize| {
            a.successors(q, a.alphabet().index_of(e).unwrap()).contains(r)
        };
        // 1-based in the description: δ(1,a)={2}, δ(2,a)={1}, δ(1,b)={1},
        // δ(2,b)={1,2}, δ(1,c)={1}.
        assert!(succ(0, "a", 1) && succ(1, "a", 0));
        assert!(succ(0, "b", 0) && succ(1, "b", 0) && succ(1, "b", 1));
        assert!(succ(0, "c", 0));
        assert_eq!(a.transition_triples().count(), 6);

        let v = trellis_verify(&inst, &Limits::default());
        assert_eq!(v.kind, VerdictKind::Opaque);
        assert_eq!(v.stats.explored, 16);
    }

    #[test]
    fn bn_event_counts_and_closures() {
        let one = family_bn(1).unwrap();
        assert_eq!(one.automaton.alphabet().len(), 2);
        assert_eq!(one.automaton.state_count(), 1);

        let two = family_bn(2).unwrap();
        assert_eq!(two.automaton.alphabet().len(), 16);
        let v = trellis_verify(&two, &Limits::default());
        assert_eq!(v.stats.explored, 16);
        assert_eq!(v.kind, VerdictKind::Opaque);

        assert!(family_bn(0).is_err());
        assert!(family_bn(4).is_err());
    }

    #[test]
    fn two_event_family() {
        // ones = n^2 makes both events the complete relation; the closure
        // has at most two elements (the all-ones matrix is idempotent).
        let n = 3;
        let inst = family_random_two_event(n, n * n, 99).unwrap();
        let v = trellis_verify(&inst, &Limits::default());
        assert!(v.stats.explored <= 2);

        // Seed determinism.
        let a = family_random_two_event(5, 8, 1234).unwrap();
        let b = family_random_two_event(5, 8, 1234).unwrap();
        assert_eq!(a, b);
        let c = family_random_two_event(5, 8, 1235).unwrap();
        assert_ne!(a, c);

        // Each event has exactly `ones` transitions.
        let counts = a
            .automaton
            .transition_triples()
            .fold([0usize; 2], |mut acc, (_, e, _)| {
                acc[e] += 1;
                acc
            });
        assert_eq!(counts, [8, 8]);

        assert!(family_random_two_event(3, 3, 0).is_err());
        assert!(family_random_two_event(3, 10, 0).is_err());
    }

    #[test]
    fn upper_triangular_family() {
        let two = family_upper_triangular(2).unwrap();
        assert_eq!(two.automaton.alphabet().len(), 7); // 2^3 - 1
        assert!(two.automaton.is_partially_ordered());

        let three = family_upper_triangular(3).unwrap();
        assert_eq!(three.automaton.alphabet().len(), 63);
        assert!(three.automaton.is_partially_ordered());
        // Products of non-identity upper triangular relations never give
        // the identity back, so the closure misses exactly one element.
        let v = trellis_verify(&three, &Limits::default());
        assert_eq!(v.stats.explored, 63);
        assert_eq!(v.kind, VerdictKind::Opaque);
    }

    #[test]
    fn partial_transformation_family() {
        for (n, expected) in [(2usize, 9usize), (3, 64), (4, 625)] {
            let gens = partial_transformation_generators(n);
            let (closure, _) = close(&gens, &Limits::default()).unwrap();
            assert_eq!(closure.len(), expected, "n = {n}");
            // Every element is a partial function: at most one 1 per row.
            for m in closure.iter() {
                for i in 0..n {
                    assert!(m.row_set(i).len() <= 1);
                }
            }
        }
        let inst = family_partial_transformations(3).unwrap();
        assert!(inst.automaton.is_deterministic());
        let v = trellis_verify(&inst, &Limits::default());
        assert_eq!(v.stats.explored, 64);

        let counts =
            semigroup_observer_correspondence(&inst.automaton, &Limits::default()).unwrap();
        assert_eq!(counts.semigroup_size, counts.observer_nonempty_word_states);

        assert!(family_partial_transformations(1).is_err());
        assert!(family_partial_transformations(5).is_err());
    }

    #[test]
    fn random_family_determinism_and_degenerate_density() {
        let spec = RandomSpec {
            states: 5,
            events: 3,
            unobservable_events: 1,
            density: 0.3,
            secret_pairs: 4,
            nonsecret_pairs: 6,
            seed: 2024,
        };
        let a = family_random(&spec).unwrap();
        let b = family_random(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.secret_pairs.len(), 4);
        assert_eq!(a.nonsecret_pairs.len(), 6);
        assert_eq!(a.automaton.alphabet().len(), 3);
        assert!(a.automaton.alphabet().has_unobservable());

        // Density zero: no transitions at all; opaque iff the pairwise
        // ε-condition holds, which the engines must agree on.
        let empty = family_random(&RandomSpec {
            density: 0.0,
            ..spec
        })
        .unwrap();
        assert_eq!(empty.automaton.transition_triples().count(), 0);

        assert!(family_random(&RandomSpec {
            density: 1.5,
            ..spec
        })
        .is_err());
    }
}
