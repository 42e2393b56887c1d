//! Opacity verification through the semigroup of relations generated by
//! the observable events.
//!
//! Every observation word induces a relation on states; the instance is
//! opaque iff no generated relation connects a secret pair without also
//! connecting a nonsecret one. On negative instances the run stops at
//! the first violating element; positive instances force the whole
//! semigroup to be built.

use crate::bitset::StateSet;
use crate::limits::Limits;
use crate::matrix::{matrix_of_event_id, BinaryMatrix};
use crate::nfa::{disjoint_union, MarkedNfa, Nfa};
use crate::observer::observer;
use crate::semigroup::{generate_semigroup, ClosureOutcome};
use crate::verifier::{cluster_pairs, IfoInstance, StopReason, Verdict, VerdictKind, VerifyStats};
use std::ops::ControlFlow;
use std::time::Instant;

/// A clustered pair list with closure-adjusted targets, checked against
/// matrix rows.
fn adjusted_clusters(
    raw: &std::collections::BTreeSet<(usize, usize)>,
    automaton: &Nfa,
) -> Vec<(usize, StateSet)> {
    cluster_pairs(raw, automaton.state_count())
        .entries
        .into_iter()
        .map(|(s, targets)| (s, automaton.adjust_finals(&targets)))
        .collect()
}

/// The Algorithm-1 condition on one relation: some secret row meets its
/// targets while no nonsecret row does.
fn violates(
    m: &BinaryMatrix,
    secret: &[(usize, StateSet)],
    nonsecret: &[(usize, StateSet)],
) -> bool {
    secret.iter().any(|(s, t)| m.row_intersects(*s, t))
        && !nonsecret.iter().any(|(s, t)| m.row_intersects(*s, t))
}

/// Verifies opacity by enumerating the semigroup generated by the
/// observable-event relations of the projected automaton.
///
/// The empty observation is checked separately against the identity
/// relation, since secret states reachable by unobservable-only strings
/// would otherwise escape checking.
pub fn trellis_verify(inst: &IfoInstance, limits: &Limits) -> Verdict {
    let start = Instant::now();
    let stats = |explored: u64, start: Instant| VerifyStats {
        algorithm: "trellis",
        explored,
        wall: start.elapsed(),
        ..VerifyStats::default()
    };

    let secret = adjusted_clusters(&inst.secret_pairs, &inst.automaton);
    if secret.is_empty() {
        return Verdict::new(VerdictKind::Opaque, None, stats(0, start));
    }
    let nonsecret = adjusted_clusters(&inst.nonsecret_pairs, &inst.automaton);

    let projected = inst.automaton.project();
    let n = projected.state_count();

    // The empty observation: the identity relation row s meets T iff s is
    // in T.
    let identity_secret = secret.iter().any(|(s, t)| t.contains(*s));
    let identity_nonsecret = nonsecret.iter().any(|(s, t)| t.contains(*s));
    if identity_secret && !identity_nonsecret {
        return Verdict::new(VerdictKind::NotOpaque, Some(Vec::new()), stats(0, start));
    }

    let generators: Vec<BinaryMatrix> = (0..projected.alphabet().len())
        .map(|e| matrix_of_event_id(&projected, e))
        .collect();
    if generators.is_empty() || n == 0 {
        // No nonempty observation exists.
        return Verdict::new(VerdictKind::Opaque, None, stats(0, start));
    }

    let (closure, outcome) = generate_semigroup(&generators, limits, |_, m| {
        if violates(m, &secret, &nonsecret) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .expect("nonempty generators of equal dimension");

    let explored = closure.len() as u64;
    match outcome {
        ClosureOutcome::Complete => {
            Verdict::new(VerdictKind::Opaque, None, stats(explored, start))
        }
        ClosureOutcome::Stopped { element } => {
            // Generator index i is event i of the projected alphabet.
            let witness = closure
                .witness(element)
                .into_iter()
                .map(|e| projected.alphabet().name(e).to_string())
                .collect();
            Verdict::new(VerdictKind::NotOpaque, Some(witness), stats(explored, start))
        }
        ClosureOutcome::LimitExceeded => Verdict::new(
            VerdictKind::Inconclusive(StopReason::ElementLimit),
            None,
            stats(explored, start),
        ),
        ClosureOutcome::TimedOut => Verdict::new(
            VerdictKind::Inconclusive(StopReason::Timeout),
            None,
            stats(explored, start),
        ),
    }
}

/// The two sides of the semigroup-observer correspondence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrespondenceCounts {
    pub semigroup_size: usize,
    pub observer_nonempty_word_states: usize,
}

/// Counts both sides of the correspondence between the relation
/// semigroup of `a` and the observer of the disjoint union of one copy
/// of `a` per state, copy `i` starting in state `i`: the semigroup size
/// must equal the number of observer macrostates reachable by at least
/// one nonempty word.
pub fn semigroup_observer_correspondence(
    a: &Nfa,
    limits: &Limits,
) -> Result<CorrespondenceCounts, StopReason> {
    let projected = a.project();
    let n = projected.state_count();
    let generators: Vec<BinaryMatrix> = (0..projected.alphabet().len())
        .map(|e| matrix_of_event_id(&projected, e))
        .collect();
    if generators.is_empty() || n == 0 {
        return Ok(CorrespondenceCounts {
            semigroup_size: 0,
            observer_nonempty_word_states: 0,
        });
    }

    let (closure, outcome) =
        generate_semigroup(&generators, limits, |_, _| ControlFlow::Continue(()))
            .expect("nonempty generators of equal dimension");
    match outcome {
        ClosureOutcome::Complete => {}
        ClosureOutcome::LimitExceeded => return Err(StopReason::ElementLimit),
        ClosureOutcome::TimedOut => return Err(StopReason::Timeout),
        ClosureOutcome::Stopped { .. } => unreachable!("no visitor break"),
    }

    let copies: Vec<MarkedNfa> = (0..n)
        .map(|i| {
            MarkedNfa::new(
                projected.clone(),
                StateSet::from_iter(n, [i]),
                StateSet::new(n),
            )
        })
        .collect();
    let (union, _) = disjoint_union(&copies).expect("copies share one alphabet");
    let obs = observer(&union);

    // Macrostates reachable by a nonempty word are exactly the transition
    // targets; the reachable set is closed under successors, so one sweep
    // over all (macrostate, event) edges collects them.
    let mut reached_nonempty = vec![false; obs.len()];
    for m in 0..obs.len() {
        for e in 0..union.nfa.alphabet().len() {
            reached_nonempty[obs.successor(m, e)] = true;
        }
    }
    let observer_nonempty_word_states = reached_nonempty.iter().filter(|&&x| x).count();

    Ok(CorrespondenceCounts {
        semigroup_size: closure.len(),
        observer_nonempty_word_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::families::{a2_automaton, family_b2};
    use crate::verifier::verify_bruteforce;
    use std::collections::BTreeSet;

    fn pairs(items: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        items.iter().copied().collect()
    }

    #[test]
    fn identical_pair_sets_generate_everything() {
        let inst = family_b2();
        let v = trellis_verify(&inst, &Limits::default());
        assert_eq!(v.kind, VerdictKind::Opaque);
        assert_eq!(v.stats.explored, 16);
    }

    #[test]
    fn agrees_with_bruteforce_on_a2_pairs() {
        let inst = IfoInstance::new(a2_automaton(), pairs(&[(0, 1)]), pairs(&[(1, 1)])).unwrap();
        let trellis = trellis_verify(&inst, &Limits::default());
        let brute = verify_bruteforce(&inst, 8);
        assert_eq!(trellis.kind, brute.kind);
        assert_eq!(trellis.kind, VerdictKind::NotOpaque);
        assert_eq!(trellis.witness, Some(vec!["a".to_string()]));
    }

    #[test]
    fn unobservable_only_secret_is_caught() {
        // 0 -u-> 1 with u unobservable: the secret run has observation ε,
        // which only the identity check sees.
        let alpha = Alphabet::new(vec![("a", true), ("u", false)]).unwrap();
        let mut nfa = Nfa::new(2, alpha);
        nfa.add_by_name(0, "u", 1).unwrap();
        nfa.add_by_name(1, "a", 1).unwrap();
        let inst = IfoInstance::new(nfa, pairs(&[(0, 1)]), pairs(&[(1, 0)])).unwrap();
        let v = trellis_verify(&inst, &Limits::default());
        assert_eq!(v.kind, VerdictKind::NotOpaque);
        assert_eq!(v.witness, Some(Vec::new()));
        assert_eq!(verify_bruteforce(&inst, 4).kind, VerdictKind::NotOpaque);
    }

    #[test]
    fn element_limit_is_inconclusive() {
        let inst = family_b2();
        let limits = Limits::default().with_budget(4);
        let v = trellis_verify(&inst, &limits);
        assert_eq!(v.kind, VerdictKind::Inconclusive(StopReason::ElementLimit));
    }

    #[test]
    fn correspondence_on_a2() {
        let counts =
            semigroup_observer_correspondence(&a2_automaton(), &Limits::default()).unwrap();
        assert_eq!(counts.semigroup_size, 16);
        assert_eq!(counts.observer_nonempty_word_states, 16);
    }

    #[test]
    fn correspondence_on_one_state_loop() {
        let mut nfa = Nfa::new(1, Alphabet::all_observable(vec!["a"]).unwrap());
        nfa.add(0, 0, 0).unwrap();
        let counts = semigroup_observer_correspondence(&nfa, &Limits::default()).unwrap();
        assert_eq!(counts.semigroup_size, 1);
        assert_eq!(counts.observer_nonempty_word_states, 1);
    }

    #[test]
    fn correspondence_limit_propagates() {
        let limits = Limits::default().with_budget(3);
        assert_eq!(
            semigroup_observer_correspondence(&a2_automaton(), &limits),
            Err(StopReason::ElementLimit)
        );
    }
}
