//! The opacity problem model: instances, pair clustering, secret and
//! nonsecret side automata, fast-path detection, algorithm dispatch, and
//! the brute-force oracle.
//!
//! An instance is opaque when every observation of a secret run (from a
//! secret pair's source to its target) is also the observation of some
//! nonsecret run. Verification reduces to the language inclusion
//! `P(L_S) ⊆ P(L_NS)` over the two side automata.

use crate::bitset::StateSet;
use crate::error::CoreError;
use crate::inclusion::{self, InclusionOutcome};
use crate::limits::Limits;
use crate::nfa::{disjoint_union, MarkedNfa, Nfa};
use crate::trellis;
use std::collections::BTreeSet;
use std::collections::VecDeque;
use std::time::{Duration, Instant};

/// A verification problem: an automaton plus secret and nonsecret sets of
/// (source, target) state pairs. Observability lives in the automaton's
/// alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IfoInstance {
    pub automaton: Nfa,
    pub secret_pairs: BTreeSet<(usize, usize)>,
    pub nonsecret_pairs: BTreeSet<(usize, usize)>,
}

impl IfoInstance {
    /// Validates that every pair component is a state of the automaton.
    pub fn new(
        automaton: Nfa,
        secret_pairs: BTreeSet<(usize, usize)>,
        nonsecret_pairs: BTreeSet<(usize, usize)>,
    ) -> Result<IfoInstance, CoreError> {
        let n = automaton.state_count();
        for &(s, f) in secret_pairs.iter().chain(&nonsecret_pairs) {
            for state in [s, f] {
                if state >= n {
                    return Err(CoreError::StateOutOfRange { state, count: n });
                }
            }
        }
        Ok(IfoInstance {
            automaton,
            secret_pairs,
            nonsecret_pairs,
        })
    }
}

/// A pair set grouped by source: one `(source, target set)` entry per
/// source that occurs, sources strictly increasing, targets nonempty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClusteredPairs {
    pub entries: Vec<(usize, StateSet)>,
}

impl ClusteredPairs {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Groups a pair relation by source state.
pub fn cluster_pairs(pairs: &BTreeSet<(usize, usize)>, state_count: usize) -> ClusteredPairs {
    let mut entries: Vec<(usize, StateSet)> = Vec::new();
    for &(s, f) in pairs {
        match entries.last_mut() {
            Some((src, targets)) if *src == s => targets.insert(f),
            _ => entries.push((s, StateSet::from_iter(state_count, [f]))),
        }
    }
    ClusteredPairs { entries }
}

/// Recognizes a pair set that is exactly a Cartesian product `I x F`,
/// returning the factors; `I` is the set of sources and `F` the union of
/// targets.
pub fn detect_cartesian(
    pairs: &BTreeSet<(usize, usize)>,
    state_count: usize,
) -> Option<(StateSet, StateSet)> {
    let sources = StateSet::from_iter(state_count, pairs.iter().map(|&(s, _)| s));
    let targets = StateSet::from_iter(state_count, pairs.iter().map(|&(_, f)| f));
    if pairs.len() == sources.len() * targets.len() {
        Some((sources, targets))
    } else {
        None
    }
}

/// The disjoint union of one marked copy of `a` per clustered entry, the
/// copy for `(s, T)` starting in `s` and accepting in `T`. Its language
/// is the union of the entries' languages; at most `n` copies, so at
/// most `n^2` states.
pub fn build_side_nfa(a: &Nfa, clustered: &ClusteredPairs) -> MarkedNfa {
    if clustered.is_empty() {
        return MarkedNfa::new(
            Nfa::new(0, a.alphabet().clone()),
            StateSet::new(0),
            StateSet::new(0),
        );
    }
    let parts: Vec<MarkedNfa> = clustered
        .entries
        .iter()
        .map(|(s, targets)| {
            MarkedNfa::new(
                a.clone(),
                StateSet::from_iter(a.state_count(), [*s]),
                targets.clone(),
            )
        })
        .collect();
    let (side, _) = disjoint_union(&parts).expect("copies share one alphabet");
    side
}

/// The verification algorithms on offer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algo {
    Trellis,
    Observer,
    Antichain,
    Auto,
}

impl Algo {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algo::Trellis => "trellis",
            Algo::Observer => "observer",
            Algo::Antichain => "antichain",
            Algo::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Algo, String> {
        match s {
            "trellis" => Ok(Algo::Trellis),
            "observer" => Ok(Algo::Observer),
            "antichain" => Ok(Algo::Antichain),
            "auto" => Ok(Algo::Auto),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

impl std::fmt::Display for Algo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a run stopped without a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    ElementLimit,
    NodeBudget,
    Timeout,
}

/// The outcome of a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Opaque,
    NotOpaque,
    Inconclusive(StopReason),
}

/// Search statistics attached to every verdict.
#[derive(Clone, Debug, Default)]
pub struct VerifyStats {
    pub algorithm: &'static str,
    /// Semigroup elements generated or product pairs expanded.
    pub explored: u64,
    /// Observer macrostates (observer engine) or retained pairs created
    /// (antichain engine).
    pub macrostates: u64,
    /// Peak number of simultaneously retained antichain pairs.
    pub antichain_peak: u64,
    /// States of the right-hand automaton handed to an inclusion engine.
    pub right_states: usize,
    /// Whether the Cartesian nonsecret fast path was taken.
    pub cartesian_fast_path: bool,
    pub wall: Duration,
}

/// The result of a verification run. A not-opaque verdict always carries
/// a witness observation: a word in `P(L_S)` but not in `P(L_NS)`.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Vec<String>>,
    pub stats: VerifyStats,
}

impl Verdict {
    pub(crate) fn new(kind: VerdictKind, witness: Option<Vec<String>>, stats: VerifyStats) -> Verdict {
        debug_assert!(witness.is_some() == matches!(kind, VerdictKind::NotOpaque));
        Verdict {
            kind,
            witness,
            stats,
        }
    }
}

/// Knobs for [`verify_with`]; [`verify`] uses the defaults.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub algo: Algo,
    pub limits: Limits,
    /// Replace the nonsecret side by a single marked copy when the
    /// nonsecret pairs form a Cartesian product.
    pub cartesian_fast_path: bool,
}

impl VerifyOptions {
    pub fn new(algo: Algo) -> VerifyOptions {
        VerifyOptions {
            algo,
            limits: Limits::default(),
            cartesian_fast_path: true,
        }
    }
}

/// Decides opacity of `inst` with the selected algorithm and default
/// limits.
pub fn verify(inst: &IfoInstance, algo: Algo) -> Verdict {
    verify_with(inst, &VerifyOptions::new(algo))
}

/// Decides opacity of `inst`: opaque iff `P(L_S) ⊆ P(L_NS)`.
///
/// Degenerate pair sets are answered before any engine runs: an empty
/// secret set is vacuously opaque, and an empty nonsecret set is opaque
/// exactly when the projected secret language is empty. `Auto` selects
/// the antichain engine.
pub fn verify_with(inst: &IfoInstance, options: &VerifyOptions) -> Verdict {
    let start = Instant::now();
    let algo = options.algo;

    if inst.secret_pairs.is_empty() {
        let stats = VerifyStats {
            algorithm: algo.as_str(),
            wall: start.elapsed(),
            ..VerifyStats::default()
        };
        return Verdict::new(VerdictKind::Opaque, None, stats);
    }
    if inst.nonsecret_pairs.is_empty() {
        // P(L_NS) is empty, so the instance is opaque iff P(L_S) is.
        let clustered = cluster_pairs(&inst.secret_pairs, inst.automaton.state_count());
        let side = build_side_nfa(&inst.automaton, &clustered).project();
        let witness = shortest_accepted_word(&side);
        let stats = VerifyStats {
            algorithm: algo.as_str(),
            wall: start.elapsed(),
            ..VerifyStats::default()
        };
        return match witness {
            Some(word) => {
                let names = side.word_names(&word);
                Verdict::new(VerdictKind::NotOpaque, Some(names), stats)
            }
            None => Verdict::new(VerdictKind::Opaque, None, stats),
        };
    }

    match algo {
        Algo::Trellis => trellis::trellis_verify(inst, &options.limits),
        Algo::Observer | Algo::Antichain | Algo::Auto => {
            let n = inst.automaton.state_count();
            let clustered_s = cluster_pairs(&inst.secret_pairs, n);
            let left = build_side_nfa(&inst.automaton, &clustered_s).project();

            let cartesian = if options.cartesian_fast_path {
                detect_cartesian(&inst.nonsecret_pairs, n)
            } else {
                None
            };
            let fast_path = cartesian.is_some();
            let right = match cartesian {
                Some((initials, finals)) => {
                    MarkedNfa::new(inst.automaton.clone(), initials, finals).project()
                }
                None => {
                    let clustered_ns = cluster_pairs(&inst.nonsecret_pairs, n);
                    build_side_nfa(&inst.automaton, &clustered_ns).project()
                }
            };
            let right_states = right.nfa.state_count();

            let engine = match algo {
                Algo::Observer => inclusion::observer_inclusion,
                _ => inclusion::antichain_inclusion,
            };
            let name = match algo {
                Algo::Observer => "observer",
                _ => "antichain",
            };
            let iv = engine(&left, &right, &options.limits);
            let stats = VerifyStats {
                algorithm: name,
                explored: iv.stats.nodes_expanded,
                macrostates: iv.stats.macrostates_created,
                antichain_peak: iv.stats.antichain_peak,
                right_states,
                cartesian_fast_path: fast_path,
                wall: start.elapsed(),
            };
            match iv.outcome {
                InclusionOutcome::Holds => Verdict::new(VerdictKind::Opaque, None, stats),
                InclusionOutcome::Fails { counterexample } => {
                    let names = left.word_names(&counterexample);
                    Verdict::new(VerdictKind::NotOpaque, Some(names), stats)
                }
                InclusionOutcome::Inconclusive(reason) => {
                    Verdict::new(VerdictKind::Inconclusive(reason), None, stats)
                }
            }
        }
    }
}

/// Shortest accepted word of a marked automaton, by plain breadth-first
/// reachability from the initial states (language emptiness check).
fn shortest_accepted_word(a: &MarkedNfa) -> Option<Vec<usize>> {
    let n = a.nfa.state_count();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n]; // (prev state, event)
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for q in a.initials.iter() {
        seen[q] = true;
        queue.push_back(q);
    }
    let mut hit = None;
    'search: {
        for q in a.initials.iter() {
            if a.finals.contains(q) {
                hit = Some(q);
                break 'search;
            }
        }
        while let Some(q) = queue.pop_front() {
            for e in 0..a.nfa.alphabet().len() {
                for r in a.nfa.successors(q, e).iter() {
                    if !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((q, e));
                        if a.finals.contains(r) {
                            hit = Some(r);
                            break 'search;
                        }
                        queue.push_back(r);
                    }
                }
            }
        }
    }
    let mut q = hit?;
    let mut word = Vec::new();
    while let Some((prev, e)) = parent[q] {
        word.push(e);
        q = prev;
    }
    word.reverse();
    Some(word)
}

/// Independent oracle: enumerates the projected secret-side words up to
/// `bound` and tests each for membership in the projected nonsecret
/// side.
///
/// Sound for not-opaque verdicts at any bound; complete once `bound`
/// reaches `|states(A_S)| * 2^|states(A_NS)|`, the shortest-counterexample
/// bound in the product with the determinized complement. Intended for
/// tiny instances.
pub fn verify_bruteforce(inst: &IfoInstance, bound: usize) -> Verdict {
    let start = Instant::now();
    let n = inst.automaton.state_count();
    let secret = build_side_nfa(&inst.automaton, &cluster_pairs(&inst.secret_pairs, n)).project();
    let nonsecret =
        build_side_nfa(&inst.automaton, &cluster_pairs(&inst.nonsecret_pairs, n)).project();
    let words = secret.enumerate_language(bound);
    let explored = words.len() as u64;
    let mut verdict = None;
    for word in words {
        if !inclusion::check_membership_ids(&word, &nonsecret) {
            verdict = Some(word);
            break;
        }
    }
    let stats = VerifyStats {
        algorithm: "bruteforce",
        explored,
        wall: start.elapsed(),
        ..VerifyStats::default()
    };
    match verdict {
        Some(word) => {
            let names = secret.word_names(&word);
            Verdict::new(VerdictKind::NotOpaque, Some(names), stats)
        }
        None => Verdict::new(VerdictKind::Opaque, None, stats),
    }
}

/// The complete word-length bound for [`verify_bruteforce`] on `inst`.
pub fn bruteforce_complete_bound(inst: &IfoInstance) -> usize {
    let n = inst.automaton.state_count();
    let secret_states = cluster_pairs(&inst.secret_pairs, n).len() * n;
    let nonsecret_states = cluster_pairs(&inst.nonsecret_pairs, n).len() * n;
    secret_states.saturating_mul(1usize << nonsecret_states.min(63))
}
