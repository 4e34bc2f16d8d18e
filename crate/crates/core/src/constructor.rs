//! Building a network, together with an edge-to-element mapping, from a
//! discrete polymatroid.
//!
//! Step 1 picks a saturated vector and creates one source node per element of
//! its support. Step 2 repeatedly adds a relay `i'` feeding a new node `i`
//! for an element `i` not yet covered, using a circuit vector through `i`
//! whose other elements are covered. Step 3 adds sinks that decode a source
//! message from the other elements of a circuit vector.
//!
//! Every free choice is recorded in a [`ChoiceScript`]; passing a script back
//! in reproduces a construction exactly.

use thiserror::Error;

use crate::coding::{code_from_representation, CodingError, PolymatroidMapping, VectorLinearCode};
use crate::network::{EdgeId, Network, NodeId};
use crate::polymatroid::{DiscretePolymatroid, GroundVector, PolymatroidError};
use crate::representation::{Representation, RepresentationError};
use crate::{mask_elements, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructorError {
    #[error("step 1 vector {0} is not a saturated vector")]
    NotSaturated(GroundVector),
    #[error("no saturated vector available")]
    NoSaturated,
    #[error("vector {u} is not a circuit vector through element {}", .i + 1)]
    NotCircuit { i: usize, u: GroundVector },
    #[error("step 2 choice ({}, {u}) is not eligible: element already covered or support not covered", .i + 1)]
    Step2Ineligible { i: usize, u: GroundVector },
    #[error("step 3 choice ({}, {u}): element is not a source", .i + 1)]
    Step3NotSource { i: usize, u: GroundVector },
    #[error("step 3 choice ({}, {u}): support is not covered", .i + 1)]
    Step3Support { i: usize, u: GroundVector },
    #[error("vector {u} has length {found}, ground set has size {n}")]
    Length { u: GroundVector, found: usize, n: usize },
    #[error("replayed code does not verify: {0}")]
    ReplayFailed(String),
    #[error(transparent)]
    Polymatroid(#[from] PolymatroidError),
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
}

/// The free choices of a construction. Element indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceScript {
    pub step1: GroundVector,
    pub step2: Vec<(usize, GroundVector)>,
    pub step3: Vec<(usize, GroundVector)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub network: Network,
    pub mapping: PolymatroidMapping,
    /// Every choice actually applied.
    pub transcript: ChoiceScript,
    /// Elements never reached by step 2, in increasing order.
    pub uncovered: Vec<usize>,
}

fn node_name(i: usize) -> NodeId {
    NodeId((i + 1).to_string())
}

fn relay_name(i: usize) -> NodeId {
    NodeId(format!("{}'", i + 1))
}

struct Builder {
    net: Network,
    f: PolymatroidMapping,
    next_edge: u32,
}

impl Builder {
    fn edge(&mut self, tail: NodeId, head: NodeId, element: usize) {
        let id = self.next_edge;
        self.next_edge += 1;
        self.net.add_edge(id, tail, head);
        self.f.insert(EdgeId(id), element);
    }
}

/// Runs the three steps. Without a script every choice is lexicographic:
/// the smallest saturated vector of largest support, then the smallest
/// eligible `(i, u)` pair until none is left, then one sink per distinct
/// `(i, u)` with `i` a source and `u` covered.
///
/// A script's step 2 list is applied first, after which default step 2
/// choices continue until none is eligible. A non-empty step 3 list in the
/// script is applied verbatim; otherwise the default enumeration runs,
/// stopping after `step3_rounds` sinks when that is given.
pub fn construct(
    d: &DiscretePolymatroid,
    script: Option<&ChoiceScript>,
    step3_rounds: Option<usize>,
) -> Result<ConstructionResult, ConstructorError> {
    let n = d.n();
    let check_len = |u: &GroundVector| {
        if u.len() != n {
            Err(ConstructorError::Length { u: u.clone(), found: u.len(), n })
        } else {
            Ok(())
        }
    };

    // Step 1
    let saturated = d.saturated_vectors()?;
    let v = match script {
        Some(s) => {
            check_len(&s.step1)?;
            if !saturated.contains(&s.step1) {
                return Err(ConstructorError::NotSaturated(s.step1.clone()));
            }
            s.step1.clone()
        }
        None => {
            let best = saturated.iter().map(|u| u.support().count_ones()).max().ok_or(ConstructorError::NoSaturated)?;
            saturated
                .iter()
                .find(|u| u.support().count_ones() == best)
                .expect("maximum attained")
                .clone()
        }
    };
    let sources = v.support();
    let mut b = Builder { net: Network::new(), f: PolymatroidMapping::default(), next_edge: 1 };
    let message_of = |i: usize| (sources & ((1u32 << i) - 1)).count_ones() as usize + 1;
    for i in mask_elements(sources) {
        let node = b.net.add_node(node_name(i));
        let id = b.next_edge;
        b.next_edge += 1;
        b.net.add_input(id, node, message_of(i));
        b.f.insert(EdgeId(id), i);
    }
    let mut covered = sources;

    let circuits: Vec<Vec<GroundVector>> = (0..n).map(|i| d.circuit_vectors(i)).collect::<Result<_, _>>()?;
    let rest_support = |i: usize, u: &GroundVector| u.support() & !(1u32 << i);

    // Step 2
    let mut step2 = Vec::new();
    let mut apply_step2 = |b: &mut Builder, covered: &mut u32, i: usize, u: &GroundVector| {
        let relay = b.net.add_node(relay_name(i));
        for j in mask_elements(rest_support(i, u)) {
            b.edge(node_name(j), relay.clone(), j);
        }
        let node = b.net.add_node(node_name(i));
        b.edge(relay, node, i);
        *covered |= 1 << i;
        step2.push((i, u.clone()));
    };
    if let Some(s) = script {
        for (i, u) in &s.step2 {
            check_len(u)?;
            if *i >= n || !circuits[*i].contains(u) {
                return Err(ConstructorError::NotCircuit { i: *i, u: u.clone() });
            }
            if covered >> i & 1 == 1 || rest_support(*i, u) & !covered != 0 {
                return Err(ConstructorError::Step2Ineligible { i: *i, u: u.clone() });
            }
            apply_step2(&mut b, &mut covered, *i, u);
        }
    }
    loop {
        let next = (0..n).filter(|&i| covered >> i & 1 == 0).find_map(|i| {
            circuits[i].iter().find(|u| rest_support(i, u) & !covered == 0).map(|u| (i, u.clone()))
        });
        match next {
            Some((i, u)) => apply_step2(&mut b, &mut covered, i, &u),
            None => break,
        }
    }

    // Step 3
    let mut sink_counter = n;
    let mut step3 = Vec::new();
    let mut add_sink = |b: &mut Builder, i: usize, u: &GroundVector| {
        sink_counter += 1;
        let sink = b.net.add_node(NodeId(sink_counter.to_string()));
        for j in mask_elements(rest_support(i, u)) {
            b.edge(node_name(j), sink.clone(), j);
        }
        b.net.add_demand(sink, message_of(i));
        step3.push((i, u.clone()));
    };
    match script.filter(|s| !s.step3.is_empty()) {
        Some(s) => {
            for (i, u) in &s.step3 {
                check_len(u)?;
                if *i >= n || !circuits[*i].contains(u) {
                    return Err(ConstructorError::NotCircuit { i: *i, u: u.clone() });
                }
                if sources >> i & 1 == 0 {
                    return Err(ConstructorError::Step3NotSource { i: *i, u: u.clone() });
                }
                if u.support() & !covered != 0 {
                    return Err(ConstructorError::Step3Support { i: *i, u: u.clone() });
                }
                add_sink(&mut b, *i, u);
            }
        }
        None => {
            let limit = step3_rounds.unwrap_or(usize::MAX);
            let mut added = 0;
            'outer: for i in mask_elements(sources) {
                for u in &circuits[i] {
                    if added >= limit {
                        break 'outer;
                    }
                    if u.support() & !covered == 0 {
                        add_sink(&mut b, i, u);
                        added += 1;
                    }
                }
            }
        }
    }

    let uncovered = (0..n).filter(|&i| covered >> i & 1 == 0).collect();
    Ok(ConstructionResult {
        network: b.net,
        mapping: b.f,
        transcript: ChoiceScript { step1: v, step2, step3 },
        uncovered,
    })
}

/// Turns a construction into a code using a representation of the
/// polymatroid it was built from, with `k` the largest singleton rank, and
/// checks that the code verifies.
pub fn replay_check(
    result: &ConstructionResult,
    rep: &Representation,
) -> Result<VectorLinearCode, ConstructorError> {
    let k = rep.rank_table()?.rho_max() as usize;
    let code = code_from_representation(&result.network, rep, &result.mapping, k)?;
    match code.verify(&result.network)? {
        Verdict::Ok => Ok(code),
        Verdict::Violation(v) => Err(ConstructorError::ReplayFailed(v.to_string())),
    }
}
