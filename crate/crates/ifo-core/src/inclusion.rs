//! Language inclusion `L(left) ⊆ L(right)` for marked, projected NFAs.
//!
//! Both engines search the product of the left automaton with the
//! complemented determinization of the right one for a pair (accepting
//! left state, non-accepting macrostate); a reachable pair yields a
//! counterexample word. The observer engine determinizes the right side
//! up front; the antichain engine computes macrostates on the fly and
//! keeps only subset-minimal ones per left state, which preserves every
//! counterexample because successors and acceptance are monotone in the
//! macrostate.

use crate::bitset::StateSet;
use crate::error::CoreError;
use crate::limits::Limits;
use crate::nfa::MarkedNfa;
use crate::observer::observer;
use crate::verifier::StopReason;
use std::collections::HashSet;
use std::time::{Duration, Instant};

const DEADLINE_STRIDE: u64 = 512;

/// A search node: a state of the left automaton paired with a macrostate
/// of the right one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductPair {
    pub left: usize,
    pub right: StateSet,
}

/// True iff retaining `kept` makes `candidate` redundant: same left
/// state and `kept.right ⊆ candidate.right`.
pub fn subsumes(kept: &ProductPair, candidate: &ProductPair) -> bool {
    kept.left == candidate.left && kept.right.is_subset(&candidate.right)
}

/// Counters reported by both engines.
#[derive(Clone, Copy, Debug, Default)]
pub struct InclusionStats {
    /// Product pairs popped from the worklist and expanded.
    pub nodes_expanded: u64,
    /// Observer macrostates built, or antichain pairs retained at
    /// insertion time.
    pub macrostates_created: u64,
    /// Peak number of simultaneously retained antichain pairs.
    pub antichain_peak: u64,
    pub wall: Duration,
}

/// Outcome of an inclusion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InclusionOutcome {
    Holds,
    /// A word accepted by the left automaton and rejected by the right
    /// one, as event ids of the shared alphabet.
    Fails { counterexample: Vec<usize> },
    Inconclusive(StopReason),
}

#[derive(Clone, Debug)]
pub struct InclusionVerdict {
    pub outcome: InclusionOutcome,
    pub stats: InclusionStats,
}

impl InclusionVerdict {
    pub fn holds(&self) -> bool {
        self.outcome == InclusionOutcome::Holds
    }
}

fn check_preconditions(left: &MarkedNfa, right: &MarkedNfa) {
    assert_eq!(
        left.nfa.alphabet(),
        right.nfa.alphabet(),
        "inclusion inputs must share one observable alphabet"
    );
    assert!(
        !left.nfa.alphabet().has_unobservable(),
        "inclusion inputs must be projected"
    );
}

/// True iff some run of `a` from an initial state over `word` (given as
/// event ids) ends in a final state.
pub fn check_membership_ids(word: &[usize], a: &MarkedNfa) -> bool {
    let mut current = a.initials.clone();
    for &e in word {
        current = a.nfa.step(&current, e);
        if current.is_empty() {
            return false;
        }
    }
    current.intersects(&a.finals)
}

/// [`check_membership_ids`] with the word given by event names.
pub fn check_membership<S: AsRef<str>>(word: &[S], a: &MarkedNfa) -> Result<bool, CoreError> {
    let ids = word
        .iter()
        .map(|name| {
            a.nfa
                .alphabet()
                .index_of(name.as_ref())
                .ok_or_else(|| CoreError::UnknownEvent(name.as_ref().to_string()))
        })
        .collect::<Result<Vec<usize>, CoreError>>()?;
    Ok(check_membership_ids(&ids, a))
}

// Search nodes live in an arena; parents reconstruct the path labels.
struct Node {
    left: usize,
    right: usize, // macrostate index (observer) or arena-local set id (antichain)
    parent: usize,
    label: usize,
    dead: bool,
}

const NO_PARENT: usize = usize::MAX;

fn path_labels(arena: &[Node], mut at: usize) -> Vec<usize> {
    let mut word = Vec::new();
    while arena[at].parent != NO_PARENT {
        word.push(arena[at].label);
        at = arena[at].parent;
    }
    word.reverse();
    word
}

/// Inclusion via the full observer of the right automaton.
///
/// Builds the complete determinization of `right`, then breadth-first
/// explores the product with `left` from every (left initial, initial
/// macrostate) pair. The inclusion fails iff a pair of an accepting left
/// state with a non-accepting macrostate is reachable.
pub fn observer_inclusion(
    left: &MarkedNfa,
    right: &MarkedNfa,
    limits: &Limits,
) -> InclusionVerdict {
    check_preconditions(left, right);
    let start = Instant::now();
    let obs = observer(right);
    let mut stats = InclusionStats {
        macrostates_created: obs.len() as u64,
        ..InclusionStats::default()
    };
    if obs.len() as u64 > limits.node_budget || limits.past_deadline() {
        let reason = if limits.past_deadline() {
            StopReason::Timeout
        } else {
            StopReason::NodeBudget
        };
        stats.wall = start.elapsed();
        return InclusionVerdict {
            outcome: InclusionOutcome::Inconclusive(reason),
            stats,
        };
    }

    let event_count = left.nfa.alphabet().len();
    let mut arena: Vec<Node> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut violation = None;

    let create = |arena: &mut Vec<Node>,
                      seen: &mut HashSet<(usize, usize)>,
                      q: usize,
                      m: usize,
                      parent: usize,
                      label: usize|
     -> Option<usize> {
        if !seen.insert((q, m)) {
            return None;
        }
        arena.push(Node {
            left: q,
            right: m,
            parent,
            label,
            dead: false,
        });
        if left.finals.contains(q) && !obs.accepting[m] {
            Some(arena.len() - 1)
        } else {
            None
        }
    };

    for q in left.initials.iter() {
        if let Some(v) = create(&mut arena, &mut seen, q, 0, NO_PARENT, 0) {
            violation = Some(v);
            break;
        }
    }

    let mut cursor = 0;
    'bfs: while violation.is_none() && cursor < arena.len() {
        if stats.nodes_expanded >= limits.node_budget {
            stats.wall = start.elapsed();
            return InclusionVerdict {
                outcome: InclusionOutcome::Inconclusive(StopReason::NodeBudget),
                stats,
            };
        }
        if stats.nodes_expanded % DEADLINE_STRIDE == 0 && limits.past_deadline() {
            stats.wall = start.elapsed();
            return InclusionVerdict {
                outcome: InclusionOutcome::Inconclusive(StopReason::Timeout),
                stats,
            };
        }
        stats.nodes_expanded += 1;
        let (q, m) = (arena[cursor].left, arena[cursor].right);
        for e in 0..event_count {
            let m_next = obs.successor(m, e);
            for q_next in left.nfa.successors(q, e).iter() {
                if let Some(v) = create(&mut arena, &mut seen, q_next, m_next, cursor, e) {
                    violation = Some(v);
                    break 'bfs;
                }
            }
        }
        cursor += 1;
    }

    stats.wall = start.elapsed();
    let outcome = match violation {
        Some(at) => InclusionOutcome::Fails {
            counterexample: path_labels(&arena, at),
        },
        None => InclusionOutcome::Holds,
    };
    InclusionVerdict { outcome, stats }
}

/// Inclusion with antichain subsumption pruning.
///
/// Macrostates of the right automaton are computed on the fly. Per left
/// state, only subset-minimal macrostates are retained: a candidate with
/// a retained subset is discarded, and retained supersets of a new
/// candidate are flagged dead and skipped when popped.
pub fn antichain_inclusion(
    left: &MarkedNfa,
    right: &MarkedNfa,
    limits: &Limits,
) -> InclusionVerdict {
    check_preconditions(left, right);
    let start = Instant::now();
    let event_count = left.nfa.alphabet().len();
    let mut stats = InclusionStats::default();

    let mut arena: Vec<Node> = Vec::new();
    let mut sets: Vec<StateSet> = Vec::new();
    // antichain[q] = arena indices of the retained pairs with left state q
    let mut antichain: Vec<Vec<usize>> = vec![Vec::new(); left.nfa.state_count()];
    let mut live = 0u64;
    let mut violation = None;

    // Returns Some(arena index) when the inserted pair is a violation.
    let insert = |arena: &mut Vec<Node>,
                      sets: &mut Vec<StateSet>,
                      antichain: &mut Vec<Vec<usize>>,
                      live: &mut u64,
                      stats: &mut InclusionStats,
                      q: usize,
                      set: StateSet,
                      parent: usize,
                      label: usize|
     -> Option<usize> {
        let chain = &mut antichain[q];
        if chain
            .iter()
            .any(|&kept| sets[arena[kept].right].is_subset(&set))
        {
            return None;
        }
        chain.retain(|&kept| {
            if set.is_subset(&sets[arena[kept].right]) {
                arena[kept].dead = true;
                *live -= 1;
                false
            } else {
                true
            }
        });
        let accepting_violation = left.finals.contains(q) && !set.intersects(&right.finals);
        sets.push(set);
        arena.push(Node {
            left: q,
            right: sets.len() - 1,
            parent,
            label,
            dead: false,
        });
        let idx = arena.len() - 1;
        chain.push(idx);
        *live += 1;
        stats.macrostates_created += 1;
        stats.antichain_peak = stats.antichain_peak.max(*live);
        #[cfg(debug_assertions)]
        {
            // Store invariant: no retained pair subsumes another.
            for (a, &i) in chain.iter().enumerate() {
                for &j in &chain[a + 1..] {
                    let (si, sj) = (&sets[arena[i].right], &sets[arena[j].right]);
                    debug_assert!(
                        !si.is_subset(sj) && !sj.is_subset(si),
                        "antichain store holds comparable macrostates"
                    );
                }
            }
        }
        accepting_violation.then_some(idx)
    };

    let initial_macro = right.initials.clone();
    for q in left.initials.iter() {
        if let Some(v) = insert(
            &mut arena,
            &mut sets,
            &mut antichain,
            &mut live,
            &mut stats,
            q,
            initial_macro.clone(),
            NO_PARENT,
            0,
        ) {
            violation = Some(v);
            break;
        }
    }

    let mut cursor = 0;
    'bfs: while violation.is_none() && cursor < arena.len() {
        if arena[cursor].dead {
            cursor += 1;
            continue;
        }
        if stats.nodes_expanded >= limits.node_budget {
            stats.wall = start.elapsed();
            return InclusionVerdict {
                outcome: InclusionOutcome::Inconclusive(StopReason::NodeBudget),
                stats,
            };
        }
        if stats.nodes_expanded % DEADLINE_STRIDE == 0 && limits.past_deadline() {
            stats.wall = start.elapsed();
            return InclusionVerdict {
                outcome: InclusionOutcome::Inconclusive(StopReason::Timeout),
                stats,
            };
        }
        stats.nodes_expanded += 1;
        let q = arena[cursor].left;
        for e in 0..event_count {
            let next_set = right.nfa.step(&sets[arena[cursor].right], e);
            for q_next in left.nfa.successors(q, e).iter() {
                if let Some(v) = insert(
                    &mut arena,
                    &mut sets,
                    &mut antichain,
                    &mut live,
                    &mut stats,
                    q_next,
                    next_set.clone(),
                    cursor,
                    e,
                ) {
                    violation = Some(v);
                    break 'bfs;
                }
            }
        }
        cursor += 1;
    }

    stats.wall = start.elapsed();
    let outcome = match violation {
        Some(at) => InclusionOutcome::Fails {
            counterexample: path_labels(&arena, at),
        },
        None => InclusionOutcome::Holds,
    };
    InclusionVerdict { outcome, stats }
}
