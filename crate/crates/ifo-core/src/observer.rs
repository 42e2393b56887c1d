//! The subset construction: a complete deterministic automaton over the
//! observable alphabet whose states are sets of source states.

use crate::bitset::StateSet;
use crate::nfa::MarkedNfa;
use std::collections::HashMap;

/// The reachable part of the subset construction, completed with an empty
/// sink macrostate where needed. Macrostate 0 is the initial one.
#[derive(Clone, Debug)]
pub struct Observer {
    pub macrostates: Vec<StateSet>,
    // transitions[m * |Σ| + e] = successor macrostate index
    transitions: Vec<usize>,
    pub accepting: Vec<bool>,
    event_count: usize,
}

impl Observer {
    pub fn successor(&self, macrostate: usize, event: usize) -> usize {
        self.transitions[macrostate * self.event_count + event]
    }

    pub fn len(&self) -> usize {
        self.macrostates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.macrostates.is_empty()
    }
}

/// Builds the observer of `a`.
///
/// `a` must not have unobservable transitions; project first. The result
/// is deterministic and complete, every macrostate is reachable from the
/// initial one, and a macrostate accepts iff it intersects the finals.
pub fn observer(a: &MarkedNfa) -> Observer {
    debug_assert!(
        !a.nfa.alphabet().has_unobservable(),
        "observer input must be projected"
    );
    let event_count = a.nfa.alphabet().len();
    let mut macrostates = vec![a.initials.clone()];
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    index.insert(a.initials.clone(), 0);
    let mut transitions = Vec::new();
    let mut work = 0;
    while work < macrostates.len() {
        let current = macrostates[work].clone();
        for e in 0..event_count {
            let next = a.nfa.step(&current, e);
            let id = *index.entry(next.clone()).or_insert_with(|| {
                macrostates.push(next);
                macrostates.len() - 1
            });
            transitions.push(id);
        }
        work += 1;
    }
    let accepting = macrostates
        .iter()
        .map(|m| m.intersects(&a.finals))
        .collect();
    Observer {
        macrostates,
        transitions,
        accepting,
        event_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::nfa::Nfa;

    fn set(width: usize, items: &[usize]) -> StateSet {
        StateSet::from_iter(width, items.iter().copied())
    }

    /// Asserts the structural invariants the construction promises.
    fn check_invariants(obs: &Observer, a: &MarkedNfa) {
        let events = a.nfa.alphabet().len();
        // Pairwise distinct macrostates.
        for i in 0..obs.len() {
            for j in (i + 1)..obs.len() {
                assert_ne!(obs.macrostates[i], obs.macrostates[j]);
            }
        }
        // Complete and closed under transitions; acceptance consistent.
        for m in 0..obs.len() {
            for e in 0..events {
                let succ = obs.successor(m, e);
                assert!(succ < obs.len());
                assert_eq!(obs.macrostates[succ], a.nfa.step(&obs.macrostates[m], e));
            }
            assert_eq!(obs.accepting[m], obs.macrostates[m].intersects(&a.finals));
        }
        // Reachability from 0 (breadth-first sweep).
        let mut seen = vec![false; obs.len()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(m) = stack.pop() {
            for e in 0..events {
                let s = obs.successor(m, e);
                if !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn deterministic_input_is_isomorphic_to_reachable_part() {
        let mut nfa = Nfa::new(3, Alphabet::all_observable(vec!["a"]).unwrap());
        nfa.add(0, 0, 1).unwrap();
        nfa.add(1, 0, 2).unwrap();
        nfa.add(2, 0, 2).unwrap();
        let m = MarkedNfa::new(nfa, set(3, &[0]), set(3, &[2]));
        let obs = observer(&m);
        // Complete already (state 2 loops), so exactly the three singletons.
        assert_eq!(obs.len(), 3);
        assert!(obs.macrostates.iter().all(|s| s.len() == 1));
        check_invariants(&obs, &m);
    }

    #[test]
    fn branching_example() {
        // 1 -a-> {1,2}, 2 -a-> {2} (0-based: 0 -a-> {0,1}, 1 -a-> {1}).
        let mut nfa = Nfa::new(2, Alphabet::all_observable(vec!["a"]).unwrap());
        nfa.add(0, 0, 0).unwrap();
        nfa.add(0, 0, 1).unwrap();
        nfa.add(1, 0, 1).unwrap();
        let m = MarkedNfa::new(nfa, set(2, &[0]), set(2, &[1]));
        let obs = observer(&m);
        assert_eq!(obs.macrostates, vec![set(2, &[0]), set(2, &[0, 1])]);
        check_invariants(&obs, &m);
    }

    #[test]
    fn sink_added_when_incomplete() {
        let mut nfa = Nfa::new(2, Alphabet::all_observable(vec!["a", "b"]).unwrap());
        nfa.add(0, 0, 1).unwrap();
        let m = MarkedNfa::new(nfa, set(2, &[0]), set(2, &[1]));
        let obs = observer(&m);
        assert!(obs.macrostates.contains(&set(2, &[])));
        check_invariants(&obs, &m);
    }

    #[test]
    fn macrostate_count_bounded() {
        // 2^n + 1 is an absolute cap: subsets of Q plus the sink.
        let mut nfa = Nfa::new(3, Alphabet::all_observable(vec!["a", "b"]).unwrap());
        for q in 0..3 {
            for r in 0..3 {
                nfa.add(q, 0, r).unwrap();
                if q != r {
                    nfa.add(q, 1, r).unwrap();
                }
            }
        }
        let m = MarkedNfa::new(nfa, set(3, &[0]), set(3, &[2]));
        let obs = observer(&m);
        assert!(obs.len() <= (1 << 3) + 1);
        check_invariants(&obs, &m);
    }
}
