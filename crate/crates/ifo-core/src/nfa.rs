//! Nondeterministic finite automata over a partitioned alphabet, plus the
//! constructions shared by every verification algorithm: projection with
//! eliminated unobservable transitions, disjoint union, and bounded
//! language enumeration.
//!
//! States are the integers `0..state_count`. Instance files use 1-based
//! state names; the parser converts.

use crate::alphabet::Alphabet;
use crate::bitset::StateSet;
use crate::error::CoreError;
use std::collections::VecDeque;

/// An automaton `(Q, Σ, δ)` without designated initial or final states.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    // transitions[q * |Σ| + e] = successor set of (q, e)
    transitions: Vec<StateSet>,
}

impl Nfa {
    pub fn new(state_count: usize, alphabet: Alphabet) -> Nfa {
        let transitions = vec![StateSet::new(state_count); state_count * alphabet.len()];
        Nfa {
            alphabet,
            state_count,
            transitions,
        }
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    #[inline]
    fn slot(&self, state: usize, event: usize) -> usize {
        debug_assert!(state < self.state_count);
        debug_assert!(event < self.alphabet.len());
        state * self.alphabet.len() + event
    }

    /// Adds the transition `src --event--> dst`.
    pub fn add(&mut self, src: usize, event: usize, dst: usize) -> Result<(), CoreError> {
        for s in [src, dst] {
            if s >= self.state_count {
                return Err(CoreError::StateOutOfRange {
                    state: s,
                    count: self.state_count,
                });
            }
        }
        if event >= self.alphabet.len() {
            return Err(CoreError::UnknownEvent(format!("event id {event}")));
        }
        let slot = self.slot(src, event);
        self.transitions[slot].insert(dst);
        Ok(())
    }

    /// Adds a transition by event name.
    pub fn add_by_name(&mut self, src: usize, event: &str, dst: usize) -> Result<(), CoreError> {
        let e = self
            .alphabet
            .index_of(event)
            .ok_or_else(|| CoreError::UnknownEvent(event.to_string()))?;
        self.add(src, e, dst)
    }

    /// Successor set of `(state, event)`.
    #[inline]
    pub fn successors(&self, state: usize, event: usize) -> &StateSet {
        &self.transitions[self.slot(state, event)]
    }

    /// Image of a state set under one event.
    pub fn step(&self, from: &StateSet, event: usize) -> StateSet {
        let mut out = StateSet::new(self.state_count);
        for q in from.iter() {
            out.union_with(self.successors(q, event));
        }
        out
    }

    pub fn transition_triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.state_count).flat_map(move |q| {
            (0..self.alphabet.len())
                .flat_map(move |e| self.successors(q, e).iter().map(move |r| (q, e, r)))
        })
    }

    /// True iff every `(state, event)` has at most one successor.
    pub fn is_deterministic(&self) -> bool {
        self.transitions.iter().all(|s| s.len() <= 1)
    }

    /// Least superset of `from` closed under unobservable transitions.
    pub fn unobservable_closure(&self, from: &StateSet) -> StateSet {
        let unobs: Vec<usize> = self.alphabet.unobservable_ids().collect();
        if unobs.is_empty() {
            return from.clone();
        }
        let mut closed = from.clone();
        let mut stack: Vec<usize> = from.iter().collect();
        while let Some(q) = stack.pop() {
            for &e in &unobs {
                for r in self.successors(q, e).iter() {
                    if !closed.contains(r) {
                        closed.insert(r);
                        stack.push(r);
                    }
                }
            }
        }
        closed
    }

    /// Per-state unobservable closures, computed once for reuse.
    fn singleton_closures(&self) -> Vec<StateSet> {
        (0..self.state_count)
            .map(|q| self.unobservable_closure(&StateSet::from_iter(self.state_count, [q])))
            .collect()
    }

    /// The projected automaton: same states, observable alphabet only,
    /// successor(q, a) = closure(step(closure({q}), a)).
    ///
    /// Together with [`Nfa::adjust_finals`] this preserves projected
    /// languages exactly, including the empty observation.
    pub fn project(&self) -> Nfa {
        let obs_alpha = self.alphabet.observable_only();
        let mut out = Nfa::new(self.state_count, obs_alpha);
        if !self.alphabet.has_unobservable() {
            out.transitions = self.transitions.clone();
            return out;
        }
        let closures = self.singleton_closures();
        for (new_e, e) in self.alphabet.observable_ids().enumerate() {
            for q in 0..self.state_count {
                let mut after = StateSet::new(self.state_count);
                for p in closures[q].iter() {
                    after.union_with(self.successors(p, e));
                }
                let mut closed = StateSet::new(self.state_count);
                for r in after.iter() {
                    closed.union_with(&closures[r]);
                }
                let slot = q * out.alphabet.len() + new_e;
                out.transitions[slot] = closed;
            }
        }
        out
    }

    /// Rewrites a final-state set for use alongside [`Nfa::project`]:
    /// a state is final afterwards iff its unobservable closure meets
    /// `finals`.
    pub fn adjust_finals(&self, finals: &StateSet) -> StateSet {
        if !self.alphabet.has_unobservable() {
            return finals.clone();
        }
        let mut out = StateSet::new(self.state_count);
        for q in 0..self.state_count {
            if self
                .unobservable_closure(&StateSet::from_iter(self.state_count, [q]))
                .intersects(finals)
            {
                out.insert(q);
            }
        }
        out
    }

    /// True iff reachability is a partial order, i.e. the only cycles in
    /// the transition graph are self-loops.
    pub fn is_partially_ordered(&self) -> bool {
        // Iterative DFS with the classic three colors; self-loops skipped.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        let mut color = vec![Color::White; self.state_count];
        for root in 0..self.state_count {
            if color[root] != Color::White {
                continue;
            }
            // (state, successor iterator position) handled via explicit stack
            let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
            let push = |q: usize| {
                let mut succs = StateSet::new(self.state_count);
                for e in 0..self.alphabet.len() {
                    succs.union_with(self.successors(q, e));
                }
                let succs: Vec<usize> = succs.iter().filter(|&r| r != q).collect();
                (q, succs, 0)
            };
            color[root] = Color::Gray;
            stack.push(push(root));
            while let Some((q, succs, idx)) = stack.last_mut() {
                if let Some(&r) = succs.get(*idx) {
                    *idx += 1;
                    match color[r] {
                        Color::Gray => return false,
                        Color::White => {
                            color[r] = Color::Gray;
                            let frame = push(r);
                            stack.push(frame);
                        }
                        Color::Black => {}
                    }
                } else {
                    color[*q] = Color::Black;
                    stack.pop();
                }
            }
        }
        true
    }
}

/// An automaton together with initial and final state sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MarkedNfa {
    pub nfa: Nfa,
    pub initials: StateSet,
    pub finals: StateSet,
}

impl MarkedNfa {
    pub fn new(nfa: Nfa, initials: StateSet, finals: StateSet) -> MarkedNfa {
        debug_assert_eq!(initials.width(), nfa.state_count());
        debug_assert_eq!(finals.width(), nfa.state_count());
        MarkedNfa {
            nfa,
            initials,
            finals,
        }
    }

    /// Projects the underlying automaton and adjusts the finals, so that
    /// the marked language of the result is the projection of the marked
    /// language of `self`.
    pub fn project(&self) -> MarkedNfa {
        MarkedNfa {
            finals: self.nfa.adjust_finals(&self.finals),
            initials: self.initials.clone(),
            nfa: self.nfa.project(),
        }
    }

    /// All accepted words of length at most `max_len`, as event-id words,
    /// in breadth-first (shortest-first) order.
    ///
    /// This is the enumeration oracle: a queue of (state set, word) nodes
    /// expanded event by event. Branches whose state set is empty accept
    /// nothing and are not expanded.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut queue: VecDeque<(StateSet, Vec<usize>)> = VecDeque::new();
        queue.push_back((self.initials.clone(), Vec::new()));
        while let Some((set, word)) = queue.pop_front() {
            if set.intersects(&self.finals) {
                out.push(word.clone());
            }
            if word.len() == max_len || set.is_empty() {
                continue;
            }
            for e in 0..self.nfa.alphabet().len() {
                let next = self.nfa.step(&set, e);
                let mut next_word = word.clone();
                next_word.push(e);
                queue.push_back((next, next_word));
            }
        }
        out
    }

    /// Renders an event-id word using the alphabet's names.
    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter()
            .map(|&e| self.nfa.alphabet().name(e).to_string())
            .collect()
    }
}

/// How disjoint union renamed part states: part `k`'s state `q` becomes
/// `offset(k) + q`.
#[derive(Clone, Debug)]
pub struct UnionMap {
    offsets: Vec<usize>,
}

impl UnionMap {
    pub fn map(&self, part: usize, state: usize) -> usize {
        self.offsets[part] + state
    }

    pub fn offset(&self, part: usize) -> usize {
        self.offsets[part]
    }
}

/// Disjoint union of marked automata over one common alphabet.
///
/// States are renamed by fixed offsets in part order; the accepted
/// language is the union of the parts' languages.
pub fn disjoint_union(parts: &[MarkedNfa]) -> Result<(MarkedNfa, UnionMap), CoreError> {
    let first = parts
        .first()
        .ok_or_else(|| CoreError::AlphabetMismatch("disjoint union of zero parts".into()))?;
    let alphabet = first.nfa.alphabet().clone();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0usize;
    for part in parts {
        if part.nfa.alphabet() != &alphabet {
            return Err(CoreError::AlphabetMismatch(
                "disjoint union parts use different alphabets".into(),
            ));
        }
        offsets.push(total);
        total += part.nfa.state_count();
    }
    let mut nfa = Nfa::new(total, alphabet);
    let mut initials = StateSet::new(total);
    let mut finals = StateSet::new(total);
    for (k, part) in parts.iter().enumerate() {
        let off = offsets[k];
        for (q, e, r) in part.nfa.transition_triples() {
            nfa.add(off + q, e, off + r)?;
        }
        for q in part.initials.iter() {
            initials.insert(off + q);
        }
        for q in part.finals.iter() {
            finals.insert(off + q);
        }
    }
    Ok((MarkedNfa::new(nfa, initials, finals), UnionMap { offsets }))
}
