//! Worked objects: rank tables, representations, networks, codes, mappings
//! and construction scripts used throughout the tests and by the CLI.
//!
//! Element and message indices inside [`ChoiceScript`] and
//! [`PolymatroidMapping`] values are 0-based, as everywhere in memory.

use std::collections::BTreeMap;

use crate::coding::{PolymatroidMapping, VectorLinearCode};
use crate::constructor::ChoiceScript;
use crate::ff_linalg::{FieldSpec, FqMatrix};
use crate::io::Document;
use crate::matroid::Matroid;
use crate::network::{EdgeId, Network};
use crate::polymatroid::{GroundVector, RankTable};
use crate::representation::Representation;

fn field(p: u32) -> FieldSpec {
    FieldSpec::new(p).expect("prime")
}

fn rows(p: u32, rows: &[&[i64]]) -> FqMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    FqMatrix::from_rows(field(p), &rows).expect("rectangular")
}

/// An `8 x len(cols)` matrix whose columns are unit vectors `e_r` (1-based),
/// or zero for `r = 0`.
fn units(cols: &[usize]) -> FqMatrix {
    let columns: Vec<Vec<u32>> = cols
        .iter()
        .map(|&r| {
            let mut c = vec![0; 8];
            if r > 0 {
                c[r - 1] = 1;
            }
            c
        })
        .collect();
    FqMatrix::from_columns(8, &columns).expect("8 rows")
}

fn gv(v: &[u32]) -> GroundVector {
    GroundVector::new(v.to_vec())
}

/// Two elements: `rho({1}) = 3`, `rho({2}) = rho({1,2}) = 5`.
pub fn two_element_rank() -> RankTable {
    RankTable::new(vec![0, 3, 5, 5]).expect("power of two")
}

/// Three elements: `rho({1}) = 1`, `rho({2}) = rho({3}) = rho({1,3}) = 2`,
/// `rho({1,2}) = 3`, `rho({2,3}) = rho({1,2,3}) = 4`.
pub fn three_element_rank() -> RankTable {
    RankTable::new(vec![0, 1, 2, 3, 2, 2, 4, 4]).expect("power of two")
}

/// Four elements: `rho(X) = 2|X|` for `|X| <= 2`, else 4.
pub fn u24_doubled_rank() -> RankTable {
    RankTable::from_fn(4, |m| (2 * m.count_ones()).min(4)).expect("small")
}

/// Rank function of the uniform matroid `U_{2,4}`.
pub fn u24_rank() -> RankTable {
    RankTable::from_fn(4, |m| m.count_ones().min(2)).expect("small")
}

/// Four 2-dimensional subspaces of `F_2^4` realising [`u24_doubled_rank`].
pub fn u24_doubled_f2_representation() -> Representation {
    let mats = vec![
        rows(2, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]),
        rows(2, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]),
        rows(2, &[&[1, 0], &[0, 1], &[0, 1], &[1, 0]]),
        rows(2, &[&[1, 0], &[0, 1], &[1, 0], &[1, 1]]),
    ];
    Representation::new(field(2), 4, mats).expect("consistent")
}

/// The columns of `[[1,0,1,1],[0,1,1,2]]` over `F_3`, one per element.
pub fn u24_f3_representation() -> Representation {
    let a = rows(3, &[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
    let mats = (0..4).map(|c| FqMatrix::from_columns(2, &[a.column(c)]).expect("2 rows")).collect();
    Representation::new(field(3), 2, mats).expect("consistent")
}

/// Nine `6 x 2` matrices over `F_3`, a dimension-2 multi-linear
/// representation of the non-Pappus matroid.
pub fn non_pappus_f3_representation() -> Representation {
    let mats = vec![
        rows(3, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0], &[0, 0], &[0, 0]]),
        rows(3, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0], &[1, 0], &[0, 1]]),
        rows(3, &[&[0, 0], &[0, 0], &[0, 0], &[0, 0], &[1, 0], &[0, 1]]),
        rows(3, &[&[1, 0], &[0, 1], &[1, 0], &[0, 2], &[0, 1], &[2, 1]]),
        rows(3, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1], &[0, 0], &[0, 0]]),
        rows(3, &[&[1, 0], &[0, 1], &[2, 1], &[2, 0], &[0, 1], &[2, 1]]),
        rows(3, &[&[1, 0], &[0, 1], &[0, 1], &[1, 2], &[0, 0], &[0, 0]]),
        rows(3, &[&[1, 0], &[0, 1], &[1, 0], &[0, 2], &[1, 1], &[1, 0]]),
        rows(3, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1], &[1, 0], &[0, 1]]),
    ];
    Representation::new(field(3), 6, mats).expect("consistent")
}

/// Rank function of the non-Pappus matroid, read off [`non_pappus_f3_representation`]
/// by halving every subspace-sum dimension.
pub fn non_pappus_rank() -> RankTable {
    let t = non_pappus_f3_representation().rank_table().expect("nine elements");
    RankTable::new(t.values().iter().map(|&v| v / 2).collect()).expect("same size")
}

const SOLUTION1_COLUMNS: [[usize; 2]; 12] = [
    [1, 2],
    [3, 4],
    [5, 6],
    [7, 8],
    [1, 4],
    [2, 3],
    [5, 8],
    [6, 7],
    [2, 5],
    [2, 8],
    [3, 5],
    [3, 8],
];

const SOLUTION2_EXTRA: [usize; 8] = [1, 1, 4, 4, 6, 7, 6, 7];

/// The twelve `8 x 2` matrices of the M-network routing solution over `F_2`.
pub fn m_network_solution1_representation() -> Representation {
    let mats = SOLUTION1_COLUMNS.iter().map(|c| units(c)).collect();
    Representation::new(field(2), 8, mats).expect("consistent")
}

/// Twenty matrices of the second M-network solution: the first twelve as in
/// the first solution, the last eight spanning single unit vectors (stored
/// with a zero second column).
pub fn m_network_solution2_representation() -> Representation {
    let mut mats: Vec<FqMatrix> = SOLUTION1_COLUMNS.iter().map(|c| units(c)).collect();
    mats.extend(SOLUTION2_EXTRA.iter().map(|&r| units(&[r, 0])));
    Representation::new(field(2), 8, mats).expect("consistent")
}

/// The M-network. Two source nodes each receive two messages; edges 5 and 8
/// bypass the middle node, edges 6 and 7 feed it, and four sinks each get one
/// edge from the middle node and one from each bypass relay.
pub fn m_network() -> Network {
    let mut n = Network::new();
    for v in ["a", "b", "c", "d", "e", "t1", "t2", "t3", "t4"] {
        n.add_node(v);
    }
    n.add_input(1, "a", 1);
    n.add_input(2, "a", 2);
    n.add_input(3, "b", 3);
    n.add_input(4, "b", 4);
    n.add_edge(5, "a", "d");
    n.add_edge(6, "a", "c");
    n.add_edge(7, "b", "c");
    n.add_edge(8, "b", "e");
    for (t, sink) in ["t1", "t2", "t3", "t4"].iter().enumerate() {
        let t = t as u32;
        n.add_edge(9 + t, "c", *sink);
        n.add_edge(13 + t, "d", *sink);
        n.add_edge(17 + t, "e", *sink);
    }
    for (sink, a, b) in [("t1", 1, 3), ("t2", 1, 4), ("t3", 2, 3), ("t4", 2, 4)] {
        n.add_demand(sink, a);
        n.add_demand(sink, b);
    }
    n
}

/// Edges 1-12 to elements 1-12, edges 13-16 to element 5, 17-20 to element 8
/// (0-based in memory).
pub fn m_network_mapping1() -> PolymatroidMapping {
    PolymatroidMapping::from_pairs((1..=20u32).map(|e| {
        let element = match e {
            1..=12 => e as usize - 1,
            13..=16 => 4,
            _ => 7,
        };
        (e, element)
    }))
}

/// Edge `i` to element `i`.
pub fn m_network_mapping2() -> PolymatroidMapping {
    PolymatroidMapping::from_pairs((1..=20u32).map(|e| (e, e as usize - 1)))
}

fn code_from_matrices(p: u32, k: usize, m: usize, mats: Vec<(u32, FqMatrix)>) -> VectorLinearCode {
    let encodings: BTreeMap<EdgeId, FqMatrix> = mats.into_iter().map(|(e, a)| (EdgeId(e), a)).collect();
    VectorLinearCode::new(field(p), k, m, encodings).expect("shapes")
}

/// M-network code with every edge carrying the matrix of its element under
/// [`m_network_mapping1`].
pub fn m_network_solution1_code() -> VectorLinearCode {
    let rep = m_network_solution1_representation();
    let f = m_network_mapping1();
    let mats = (1..=20u32).map(|e| (e, rep.matrix(f.get(EdgeId(e)).expect("total")).clone())).collect();
    code_from_matrices(2, 2, 4, mats)
}

/// M-network code with edge `i` carrying the `i`-th matrix of
/// [`m_network_solution2_representation`].
pub fn m_network_solution2_code() -> VectorLinearCode {
    let rep = m_network_solution2_representation();
    let mats = (1..=20u32).map(|e| (e, rep.matrix(e as usize - 1).clone())).collect();
    code_from_matrices(2, 2, 4, mats)
}

/// Builds a network in the shape produced by the construction: sources
/// `1..=sources`, then for each relay entry `(i, preds)` a node `i'` fed by
/// `preds` and an edge `i' -> i`, then sinks numbered from `first_sink`, each
/// fed by `preds` and demanding message `i`. Nodes and edges are numbered in
/// that order.
fn layered_network(sources: usize, relays: &[(usize, &[usize])], sinks: &[(usize, &[usize])], first_sink: usize) -> Network {
    let mut n = Network::new();
    let mut edge = 1u32;
    for i in 1..=sources {
        n.add_node(i.to_string().as_str());
        n.add_input(edge, i.to_string().as_str(), i);
        edge += 1;
    }
    for &(i, preds) in relays {
        let relay = format!("{i}'");
        n.add_node(relay.as_str());
        for &j in preds {
            n.add_edge(edge, j.to_string().as_str(), relay.as_str());
            edge += 1;
        }
        n.add_node(i.to_string().as_str());
        n.add_edge(edge, relay.as_str(), i.to_string().as_str());
        edge += 1;
    }
    for (s, &(i, preds)) in sinks.iter().enumerate() {
        let sink = (first_sink + s).to_string();
        n.add_node(sink.as_str());
        for &j in preds {
            n.add_edge(edge, j.to_string().as_str(), sink.as_str());
            edge += 1;
        }
        n.add_demand(sink.as_str(), i);
    }
    n
}

/// The network built from [`u24_doubled_rank`]: sources 1 and 2, relays into
/// nodes 3 and 4, and six sinks 5-10.
pub fn u24_doubled_network() -> Network {
    layered_network(
        2,
        &[(3, &[1, 2]), (4, &[1, 2])],
        &[(2, &[1, 3]), (1, &[2, 3]), (2, &[1, 4]), (1, &[2, 4]), (1, &[3, 4]), (2, &[3, 4])],
        5,
    )
}

pub fn u24_doubled_script() -> ChoiceScript {
    ChoiceScript {
        step1: gv(&[2, 2, 0, 0]),
        step2: vec![(2, gv(&[2, 2, 1, 0])), (3, gv(&[2, 2, 0, 1]))],
        step3: vec![
            (1, gv(&[2, 1, 2, 0])),
            (0, gv(&[1, 2, 2, 0])),
            (1, gv(&[2, 1, 0, 2])),
            (0, gv(&[1, 2, 0, 2])),
            (0, gv(&[1, 0, 2, 2])),
            (1, gv(&[0, 1, 2, 2])),
        ],
    }
}

/// The network built from the polymatroid of
/// [`m_network_solution1_representation`]: sources 1-4, relays into nodes
/// 5, 7, 8, 9, 10, 6, 11, 12 (in that order), and twelve sinks 13-24.
pub fn m_polymatroid_network() -> Network {
    layered_network(
        4,
        &[
            (5, &[1, 2]),
            (7, &[3, 4]),
            (8, &[3, 4]),
            (9, &[1, 7]),
            (10, &[1, 7]),
            (6, &[2, 9]),
            (11, &[6, 7]),
            (12, &[10, 11]),
        ],
        &[
            (1, &[5, 6]),
            (1, &[5, 10]),
            (1, &[5, 9]),
            (2, &[5, 6]),
            (2, &[5, 11]),
            (2, &[5, 12]),
            (4, &[8, 12]),
            (3, &[8, 11]),
            (3, &[7, 8]),
            (4, &[8, 10]),
            (3, &[8, 9]),
            (4, &[7, 8]),
        ],
        13,
    )
}

fn v12(entries: &[(usize, u32)]) -> GroundVector {
    let mut v = vec![0; 12];
    for &(i, x) in entries {
        v[i - 1] = x;
    }
    GroundVector::new(v)
}

pub fn m_polymatroid_script() -> ChoiceScript {
    let s2 = |i: usize, rest: &[(usize, u32)]| {
        let mut e = rest.to_vec();
        e.push((i, 1));
        (i - 1, v12(&e))
    };
    ChoiceScript {
        step1: v12(&[(1, 2), (2, 2), (3, 2), (4, 2)]),
        step2: vec![
            s2(5, &[(1, 2), (2, 2)]),
            s2(7, &[(3, 2), (4, 2)]),
            s2(8, &[(3, 2), (4, 2)]),
            s2(9, &[(1, 2), (7, 2)]),
            s2(10, &[(1, 2), (7, 2)]),
            s2(6, &[(2, 2), (9, 2)]),
            s2(11, &[(6, 2), (7, 2)]),
            s2(12, &[(10, 2), (11, 2)]),
        ],
        step3: vec![
            s2(1, &[(5, 2), (6, 2)]),
            s2(1, &[(5, 2), (10, 2)]),
            s2(1, &[(5, 2), (9, 2)]),
            s2(2, &[(5, 2), (6, 2)]),
            s2(2, &[(5, 2), (11, 2)]),
            s2(2, &[(5, 2), (12, 2)]),
            s2(4, &[(8, 2), (12, 2)]),
            s2(3, &[(8, 2), (11, 2)]),
            s2(3, &[(7, 2), (8, 2)]),
            s2(4, &[(8, 2), (10, 2)]),
            s2(3, &[(8, 2), (9, 2)]),
            s2(4, &[(7, 2), (8, 2)]),
        ],
    }
}

/// The two-source butterfly: both sinks demand both messages, and one
/// bottleneck edge must carry a combination.
pub fn butterfly_network() -> Network {
    let mut n = Network::new();
    for v in ["a", "b", "c", "d", "t1", "t2"] {
        n.add_node(v);
    }
    n.add_input(1, "a", 1);
    n.add_input(2, "b", 2);
    n.add_edge(3, "a", "c");
    n.add_edge(4, "b", "c");
    n.add_edge(5, "c", "d");
    n.add_edge(6, "a", "t1");
    n.add_edge(7, "d", "t1");
    n.add_edge(8, "b", "t2");
    n.add_edge(9, "d", "t2");
    for t in ["t1", "t2"] {
        n.add_demand(t, 1);
        n.add_demand(t, 2);
    }
    n
}

/// Every bundled object under its file name (without extension).
pub fn all() -> Vec<(&'static str, Document)> {
    vec![
        ("two-element", Document::Polymatroid(two_element_rank())),
        ("three-element", Document::Polymatroid(three_element_rank())),
        ("u24-doubled", Document::Polymatroid(u24_doubled_rank())),
        ("u24-doubled-f2", Document::Representation(u24_doubled_f2_representation())),
        ("u24-f3", Document::Representation(u24_f3_representation())),
        ("non-pappus-f3", Document::Representation(non_pappus_f3_representation())),
        ("u24", Document::Matroid(Matroid::from_rank(u24_rank()).expect("small"))),
        ("non-pappus", Document::Matroid(Matroid::from_rank(non_pappus_rank()).expect("small"))),
        ("m-network", Document::Network(m_network())),
        ("m-solution1-representation", Document::Representation(m_network_solution1_representation())),
        ("m-solution2-representation", Document::Representation(m_network_solution2_representation())),
        ("m-mapping1", Document::Mapping(m_network_mapping1())),
        ("m-mapping2", Document::Mapping(m_network_mapping2())),
        ("m-solution1", Document::Code(m_network_solution1_code())),
        ("m-solution2", Document::Code(m_network_solution2_code())),
        ("u24-doubled-network", Document::Network(u24_doubled_network())),
        ("u24-doubled-script", Document::Script(u24_doubled_script())),
        ("m-polymatroid-network", Document::Network(m_polymatroid_network())),
        ("m-polymatroid-script", Document::Script(m_polymatroid_script())),
        ("butterfly", Document::Network(butterfly_network())),
    ]
}

pub fn by_name(name: &str) -> Option<Document> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, d)| d)
}
