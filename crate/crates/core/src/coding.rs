//! Vector linear network codes.
//!
//! A code of dimension `k` over `F_q` on a network with `m` messages assigns
//! every edge an `mk x k` global encoding matrix. This module verifies codes,
//! checks whether a network is discrete polymatroidal with respect to a rank
//! table and a mapping, converts in both directions between codes and
//! representable polymatroids, and searches exhaustively for scalar codes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::ff_linalg::{mat_rank, solve_right, EchelonBasis, FieldSpec, FqMatrix, LinalgError};
use crate::network::{EdgeId, Network, NetworkError, NetworkViolation, NodeId};
use crate::polymatroid::{format_subset, GroundVector, RankTable};
use crate::representation::{Representation, RepresentationError};
use crate::{elements_mask, Verdict};

/// Default cap on the a-priori size of the scalar search tree.
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("invalid network: {0}")]
    InvalidNetwork(NetworkViolation),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("code has {code} messages, network has {network}")]
    MessageCount { code: usize, network: usize },
    #[error("no encoding for edge {0}")]
    MissingEncoding(EdgeId),
    #[error("encoding given for edge {0}, which is not in the network")]
    ExtraEncoding(EdgeId),
    #[error("encoding of edge {edge} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    Shape { edge: EdgeId, rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("mapping has no image for edge {0}")]
    MappingNotTotal(EdgeId),
    #[error("edge {edge} maps to element {element}, outside the ground set of size {n}")]
    MappingOutOfRange { edge: EdgeId, element: usize, n: usize },
    #[error("subspace of element {element} has dimension {dim}, more than k={k}")]
    WidthExceedsK { element: usize, dim: usize, k: usize },
    #[error("input subspaces span dimension {rank}, expected {expected}")]
    InputBlockRank { rank: usize, expected: usize },
    #[error("subspace of edge {0} lies outside the span of the input subspaces")]
    OutsideInputSpan(EdgeId),
    #[error("code does not verify: {0}")]
    CodeInvalid(CodeViolation),
    #[error("search tree bound {bound} exceeds budget {budget}")]
    BudgetExceeded { bound: u128, budget: u128 },
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeViolation {
    /// Input edge of `message` is not the matching identity block column.
    InputEncoding { edge: EdgeId, message: usize },
    /// Edge encoding is not a combination of the encodings entering its tail.
    LocalEncoding { edge: EdgeId },
    /// `node` cannot decode `message` from its incoming edges.
    Decoding { node: NodeId, message: usize },
}

impl fmt::Display for CodeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeViolation::InputEncoding { edge, message } => {
                write!(f, "N1: input edge {edge} does not carry message {message} verbatim")
            }
            CodeViolation::LocalEncoding { edge } => {
                write!(f, "N3: edge {edge} is not a function of the edges entering its tail")
            }
            CodeViolation::Decoding { node, message } => {
                write!(f, "N2: node {node} cannot decode message {message}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpnViolation {
    /// Two input edges share a ground element.
    NotInjective { first: EdgeId, second: EdgeId, element: usize },
    /// The `rho_max` multiple of the indicator of the input image is not a member.
    SourcesNotMember { support: u32 },
    /// `rho(f(In(x))) != rho(f(In(x) + Out(x)))`.
    NodeRank { node: NodeId, inputs: u32, all: u32 },
}

impl fmt::Display for DpnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DpnViolation::NotInjective { first, second, element } => write!(
                f,
                "DN1: input edges {first} and {second} both map to element {}",
                element + 1
            ),
            DpnViolation::SourcesNotMember { support } => write!(
                f,
                "DN2: rho_max times the indicator of {} is not a member",
                format_subset(*support)
            ),
            DpnViolation::NodeRank { node, inputs, all } => write!(
                f,
                "DN3: at node {node}, rank of {} differs from rank of {}",
                format_subset(*inputs),
                format_subset(*all)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorLinearCode {
    field: FieldSpec,
    k: usize,
    m: usize,
    encodings: BTreeMap<EdgeId, FqMatrix>,
}

impl VectorLinearCode {
    /// Every encoding must be `mk x k` with reduced entries.
    pub fn new(
        field: FieldSpec,
        k: usize,
        m: usize,
        encodings: BTreeMap<EdgeId, FqMatrix>,
    ) -> Result<Self, CodingError> {
        for (&edge, mat) in &encodings {
            if mat.rows() != m * k || mat.cols() != k {
                return Err(CodingError::Shape {
                    edge,
                    rows: mat.rows(),
                    cols: mat.cols(),
                    expected_rows: m * k,
                    expected_cols: k,
                });
            }
            mat.check_reduced(field)?;
        }
        Ok(Self { field, k, m, encodings })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn encodings(&self) -> &BTreeMap<EdgeId, FqMatrix> {
        &self.encodings
    }

    pub fn encoding(&self, e: EdgeId) -> Option<&FqMatrix> {
        self.encodings.get(&e)
    }

    /// Replaces one edge's encoding (shape is not rechecked).
    pub fn set_encoding(&mut self, e: EdgeId, mat: FqMatrix) {
        self.encodings.insert(e, mat);
    }

    /// `E_j`, the encoding every input edge of message `j` must carry.
    pub fn message_block(&self, msg: usize) -> FqMatrix {
        FqMatrix::identity_block_column(self.m * self.k, msg - 1, self.k)
    }

    fn check_shape(&self, net: &Network) -> Result<(), CodingError> {
        if let Verdict::Violation(v) = net.validate() {
            return Err(CodingError::InvalidNetwork(v));
        }
        if self.m != net.message_count() {
            return Err(CodingError::MessageCount { code: self.m, network: net.message_count() });
        }
        let ids = net.edge_ids();
        for &e in &ids {
            if !self.encodings.contains_key(&e) {
                return Err(CodingError::MissingEncoding(e));
            }
        }
        for &e in self.encodings.keys() {
            if !ids.contains(&e) {
                return Err(CodingError::ExtraEncoding(e));
            }
        }
        Ok(())
    }

    fn span_of(&self, edges: &[EdgeId]) -> EchelonBasis {
        let mut basis = EchelonBasis::new(self.m * self.k, self.field);
        for e in edges {
            basis.insert_columns(&self.encodings[e]);
        }
        basis
    }

    fn stacked(&self, edges: &[EdgeId]) -> FqMatrix {
        let blocks: Vec<&FqMatrix> = edges.iter().map(|e| &self.encodings[e]).collect();
        FqMatrix::hcat(self.m * self.k, &blocks).expect("shapes checked")
    }

    /// Checks input encodings, then local encodings in ancestral order, then
    /// decoding at every demand.
    pub fn verify(&self, net: &Network) -> Result<Verdict<CodeViolation>, CodingError> {
        self.check_shape(net)?;
        let mut inputs: Vec<_> = net.inputs.iter().collect();
        inputs.sort_by_key(|s| s.msg);
        for s in inputs {
            if self.encodings[&s.edge] != self.message_block(s.msg) {
                return Ok(Verdict::Violation(CodeViolation::InputEncoding { edge: s.edge, message: s.msg }));
            }
        }
        for e in net.ancestral_order()? {
            let Some(edge) = net.edge(e) else { continue };
            let span = self.span_of(&net.in_edges(&edge.tail));
            if !span.contains_columns(&self.encodings[&e]) {
                return Ok(Verdict::Violation(CodeViolation::LocalEncoding { edge: e }));
            }
        }
        for v in &net.nodes {
            let demanded = net.demands_at(v);
            if demanded.is_empty() {
                continue;
            }
            let span = self.span_of(&net.in_edges(v));
            for j in demanded {
                if !span.contains_columns(&self.message_block(j)) {
                    return Ok(Verdict::Violation(CodeViolation::Decoding { node: v.clone(), message: j }));
                }
            }
        }
        Ok(Verdict::Ok)
    }

    /// Local encoding matrices `W_p` with `M_e = sum_p M_{i_p} W_p` over the
    /// edges `i_p` entering the tail of `e`, or `None` if none exist.
    pub fn local_coefficients(
        &self,
        net: &Network,
        e: EdgeId,
    ) -> Result<Option<Vec<(EdgeId, FqMatrix)>>, CodingError> {
        let edge = net.edge(e).ok_or(NetworkError::UnknownEdge(e))?;
        let ins = net.in_edges(&edge.tail);
        let target = self.encodings.get(&e).ok_or(CodingError::MissingEncoding(e))?;
        self.split_solution(&ins, target)
    }

    /// Decoding matrices `D_p` with `E_msg = sum_p M_{i_p} D_p` over the
    /// edges entering `node`.
    pub fn decoding_matrices(
        &self,
        net: &Network,
        node: &NodeId,
        msg: usize,
    ) -> Result<Option<Vec<(EdgeId, FqMatrix)>>, CodingError> {
        if !net.has_node(node) {
            return Err(NetworkError::UnknownNode(node.clone()).into());
        }
        self.split_solution(&net.in_edges(node), &self.message_block(msg))
    }

    fn split_solution(
        &self,
        ins: &[EdgeId],
        target: &FqMatrix,
    ) -> Result<Option<Vec<(EdgeId, FqMatrix)>>, CodingError> {
        for e in ins {
            if !self.encodings.contains_key(e) {
                return Err(CodingError::MissingEncoding(*e));
            }
        }
        let a = self.stacked(ins);
        let Some(x) = solve_right(&a, target, self.field)? else {
            return Ok(None);
        };
        let mut out = Vec::with_capacity(ins.len());
        for (p, &e) in ins.iter().enumerate() {
            let mut w = FqMatrix::zeros(self.k, target.cols());
            for r in 0..self.k {
                for c in 0..target.cols() {
                    w.set(r, c, x.get(p * self.k + r, c));
                }
            }
            out.push((e, w));
        }
        Ok(Some(out))
    }
}

/// `verify_code` as a free function.
pub fn verify_code(net: &Network, code: &VectorLinearCode) -> Result<Verdict<CodeViolation>, CodingError> {
    code.verify(net)
}

/// A map from edges to ground elements (0-based).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolymatroidMapping {
    f: BTreeMap<EdgeId, usize>,
}

impl PolymatroidMapping {
    pub fn new(f: BTreeMap<EdgeId, usize>) -> Self {
        Self { f }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, usize)>) -> Self {
        Self { f: pairs.into_iter().map(|(e, i)| (EdgeId(e), i)).collect() }
    }

    pub fn get(&self, e: EdgeId) -> Option<usize> {
        self.f.get(&e).copied()
    }

    pub fn insert(&mut self, e: EdgeId, element: usize) {
        self.f.insert(e, element);
    }

    pub fn entries(&self) -> &BTreeMap<EdgeId, usize> {
        &self.f
    }

    /// Fails unless every network edge has an image inside `0..n`.
    pub fn check_total(&self, net: &Network, n: usize) -> Result<(), CodingError> {
        for e in net.edge_ids() {
            let element = self.get(e).ok_or(CodingError::MappingNotTotal(e))?;
            if element >= n {
                return Err(CodingError::MappingOutOfRange { edge: e, element, n });
            }
        }
        Ok(())
    }

    fn image(&self, edges: &[EdgeId]) -> u32 {
        elements_mask(edges.iter().map(|e| self.f[e]))
    }
}

/// Checks DN1 (injective on input edges), DN2 (the `rho_max` multiple of the
/// indicator of the inputs' image is a member) and DN3 at every node.
pub fn check_dpn(
    net: &Network,
    t: &RankTable,
    f: &PolymatroidMapping,
) -> Result<Verdict<DpnViolation>, CodingError> {
    if let Verdict::Violation(v) = net.validate() {
        return Err(CodingError::InvalidNetwork(v));
    }
    f.check_total(net, t.n())?;
    let mut owner: HashMap<usize, EdgeId> = HashMap::new();
    let mut inputs: Vec<_> = net.inputs.iter().collect();
    inputs.sort_by_key(|s| s.msg);
    for s in &inputs {
        let element = f.f[&s.edge];
        if let Some(&first) = owner.get(&element) {
            return Ok(Verdict::Violation(DpnViolation::NotInjective { first, second: s.edge, element }));
        }
        owner.insert(element, s.edge);
    }
    let support = f.image(&inputs.iter().map(|s| s.edge).collect::<Vec<_>>());
    let top = GroundVector::from_support(t.n(), support, t.rho_max());
    if !t.admits(top.components()) {
        return Ok(Verdict::Violation(DpnViolation::SourcesNotMember { support }));
    }
    for v in &net.nodes {
        let (ins, outs) = net.in_out_sets(v)?;
        let a = f.image(&ins);
        let b = a | f.image(&outs);
        if t.rank(a) != t.rank(b) {
            return Ok(Verdict::Violation(DpnViolation::NodeRank { node: v.clone(), inputs: a, all: b }));
        }
    }
    Ok(Verdict::Ok)
}

/// Builds a code from a representation: every edge carries the subspace of
/// its ground element, expressed in the coordinates given by the input
/// edges' subspaces.
///
/// Each `A_i` is first reduced to a column basis and zero-padded to width
/// `k`. With `B = [A_{f(s_1)} ... A_{f(s_m)}]` of full column rank `km`,
/// edge `e` gets the unique `M_e` with `B M_e = A_{f(e)}`; when `B` is square
/// this is `B^{-1} A_{f(e)}`.
pub fn code_from_representation(
    net: &Network,
    rep: &Representation,
    f: &PolymatroidMapping,
    k: usize,
) -> Result<VectorLinearCode, CodingError> {
    if let Verdict::Violation(v) = net.validate() {
        return Err(CodingError::InvalidNetwork(v));
    }
    f.check_total(net, rep.n())?;
    let field = rep.field();
    let mut padded = Vec::with_capacity(rep.n());
    for (element, a) in rep.matrices().iter().enumerate() {
        let basis = a.column_basis(field);
        if basis.cols() > k {
            return Err(CodingError::WidthExceedsK { element, dim: basis.cols(), k });
        }
        padded.push(basis.resized_columns(k));
    }
    let m = net.message_count();
    let mut inputs: Vec<_> = net.inputs.iter().collect();
    inputs.sort_by_key(|s| s.msg);
    let blocks: Vec<&FqMatrix> = inputs.iter().map(|s| &padded[f.f[&s.edge]]).collect();
    let b = FqMatrix::hcat(rep.rows(), &blocks)?;
    let rank = mat_rank(&b, field);
    if rank != m * k {
        return Err(CodingError::InputBlockRank { rank, expected: m * k });
    }
    let mut encodings = BTreeMap::new();
    for e in net.edge_ids() {
        let target = &padded[f.f[&e]];
        let x = solve_right(&b, target, field)?.ok_or(CodingError::OutsideInputSpan(e))?;
        encodings.insert(e, x);
    }
    VectorLinearCode::new(field, k, m, encodings)
}

/// The representation formed by the column spans of a verified code's
/// encodings, with ground elements the edges in increasing id order.
pub fn representation_from_code(
    net: &Network,
    code: &VectorLinearCode,
) -> Result<(Representation, PolymatroidMapping), CodingError> {
    if let Verdict::Violation(v) = code.verify(net)? {
        return Err(CodingError::CodeInvalid(v));
    }
    let mut ids = net.edge_ids();
    ids.sort();
    let mats: Vec<FqMatrix> = ids.iter().map(|e| code.encodings[e].clone()).collect();
    let rep = Representation::new(code.field, code.m * code.k, mats)?;
    let f = PolymatroidMapping { f: ids.iter().enumerate().map(|(i, &e)| (e, i)).collect() };
    Ok((rep, f))
}

/// Rank table of the code's subspaces and the edge-to-element mapping. The
/// result's `rho_max` is the largest encoding rank, which is at most `k`.
pub fn polymatroid_from_code(
    net: &Network,
    code: &VectorLinearCode,
) -> Result<(RankTable, PolymatroidMapping), CodingError> {
    let (rep, f) = representation_from_code(net, code)?;
    Ok((rep.rank_table()?, f))
}

/// Number of leaves the scalar search may visit at most: for each
/// intermediate edge, the number of one-dimensional subspaces of a space of
/// dimension `indeg(tail)`, or one if that is zero. Saturates at `u128::MAX`.
pub fn scalar_search_bound(net: &Network, field: FieldSpec) -> u128 {
    let q = field.p() as u128;
    let mut bound: u128 = 1;
    for e in &net.edges {
        let d = net.in_edges(&e.tail).len() as u32;
        let choices = if d == 0 {
            1
        } else {
            q.checked_pow(d).map_or(u128::MAX, |x| (x - 1) / (q - 1))
        };
        bound = bound.saturating_mul(choices.max(1));
    }
    bound
}

/// Exhaustive search for a scalar (`k = 1`) linear solution over `field`.
///
/// Global encoding vectors are assigned edge by edge in ancestral order. An
/// edge may carry any vector in the span of the vectors entering its tail;
/// since all checks depend only on spans, it suffices to try one nonzero
/// vector per one-dimensional subspace of that span (and the zero vector when
/// the span is zero), because replacing a zero or rescaled choice by a
/// nonzero one only enlarges spans further down. Demands are checked as soon
/// as every edge entering a node is assigned.
///
/// Returns `Ok(None)` only after the whole space has been exhausted.
pub fn search_scalar_solution(
    net: &Network,
    field: FieldSpec,
    budget: u128,
) -> Result<Option<VectorLinearCode>, CodingError> {
    if let Verdict::Violation(v) = net.validate() {
        return Err(CodingError::InvalidNetwork(v));
    }
    let bound = scalar_search_bound(net, field);
    if bound > budget {
        return Err(CodingError::BudgetExceeded { bound, budget });
    }
    let m = net.message_count();
    let order: Vec<EdgeId> = net.ancestral_order()?.into_iter().filter(|&e| !net.is_input(e)).collect();
    let mut global: HashMap<EdgeId, Vec<u32>> = HashMap::new();
    for s in &net.inputs {
        let mut v = vec![0; m];
        v[s.msg - 1] = 1;
        global.insert(s.edge, v);
    }
    let mut missing: HashMap<&NodeId, usize> = net.nodes.iter().map(|v| (v, 0)).collect();
    for e in &net.edges {
        *missing.get_mut(&e.head).expect("validated") += 1;
    }
    let mut state = Search { net, field, m, order, global, missing };
    for v in &net.nodes {
        if state.missing[v] == 0 && !state.decodes(v) {
            return Ok(None);
        }
    }
    if !state.go(0) {
        return Ok(None);
    }
    let encodings = state
        .global
        .into_iter()
        .map(|(e, v)| (e, FqMatrix::from_columns(m, &[v]).expect("length m")))
        .collect();
    let code = VectorLinearCode::new(field, 1, m, encodings)?;
    debug_assert!(code.verify(net).map(|v| v.is_ok()).unwrap_or(false));
    Ok(Some(code))
}

struct Search<'a> {
    net: &'a Network,
    field: FieldSpec,
    m: usize,
    order: Vec<EdgeId>,
    global: HashMap<EdgeId, Vec<u32>>,
    missing: HashMap<&'a NodeId, usize>,
}

impl<'a> Search<'a> {
    fn span(&self, v: &NodeId) -> EchelonBasis {
        let mut b = EchelonBasis::new(self.m, self.field);
        for e in self.net.in_edges(v) {
            b.insert(&self.global[&e]);
        }
        b
    }

    fn decodes(&self, v: &NodeId) -> bool {
        let span = self.span(v);
        self.net.demands_at(v).into_iter().all(|j| {
            let mut unit = vec![0; self.m];
            unit[j - 1] = 1;
            span.contains(&unit)
        })
    }

    fn go(&mut self, pos: usize) -> bool {
        let Some(&e) = self.order.get(pos) else {
            return true;
        };
        let edge = self.net.edge(e).expect("intermediate");
        let span = self.span(&edge.tail);
        let head = self.net.nodes.iter().find(|v| **v == edge.head).expect("validated");
        *self.missing.get_mut(head).expect("node") -= 1;
        let complete = self.missing[head] == 0;
        let mut found = false;
        for v in projective_points(&span, self.field, self.m) {
            self.global.insert(e, v);
            if complete && !self.decodes(head) {
                continue;
            }
            if self.go(pos + 1) {
                found = true;
                break;
            }
        }
        if !found {
            self.global.remove(&e);
            *self.missing.get_mut(head).expect("node") += 1;
        }
        found
    }
}

/// One nonzero vector per one-dimensional subspace of the span (coefficient
/// vectors over the echelon basis whose first nonzero entry is one), or just
/// the zero vector if the span is zero.
fn projective_points(span: &EchelonBasis, field: FieldSpec, dim: usize) -> Vec<Vec<u32>> {
    let basis = span.vectors();
    let d = basis.len();
    if d == 0 {
        return vec![vec![0; dim]];
    }
    let q = field.p();
    let mut out = Vec::new();
    for lead in 0..d {
        let tail_len = d - lead - 1;
        let mut coeffs = vec![0u32; tail_len];
        loop {
            let mut v = basis[lead].clone();
            for (t, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (x, &b) in v.iter_mut().zip(&basis[lead + 1 + t]) {
                        *x = field.add(*x, field.mul(c, b));
                    }
                }
            }
            out.push(v);
            let mut i = tail_len;
            let mut done = true;
            while i > 0 {
                i -= 1;
                if coeffs[i] + 1 < q {
                    coeffs[i] += 1;
                    done = false;
                    break;
                }
                coeffs[i] = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}
