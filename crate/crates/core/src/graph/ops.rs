//! Composition operators. Operands are relabeled into consecutive index
//! blocks in argument order (first operand gets the lowest indices).

use std::ops::Range;

use super::{Configuration, LoopGraph};
use crate::error::{Error, Result};

/// Places the operands side by side without cross edges; returns the blocks.
fn stack(parts: &[&Configuration]) -> (LoopGraph, Vec<super::Opinion>, Vec<Range<usize>>) {
    let n = parts.iter().map(|c| c.order()).sum();
    let mut g = LoopGraph::loops_only(n);
    let mut opinions = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for part in parts {
        for (u, v) in part.graph().edges() {
            g.insert_edge(offset + u, offset + v);
        }
        opinions.extend_from_slice(part.opinions());
        blocks.push(offset..offset + part.order());
        offset += part.order();
    }
    (g, opinions, blocks)
}

fn connect_all(g: &mut LoopGraph, a: Range<usize>, b: Range<usize>) {
    for u in a {
        for v in b.clone() {
            g.insert_edge(u, v);
        }
    }
}

/// `(2i, 2i+1)` of block `a` are matched to vertex `i` of block `b`.
fn connect_two_to_one(g: &mut LoopGraph, a: Range<usize>, b: Range<usize>) {
    for (i, v) in b.enumerate() {
        g.insert_edge(a.start + 2 * i, v);
        g.insert_edge(a.start + 2 * i + 1, v);
    }
}

fn assemble(g: LoopGraph, opinions: Vec<super::Opinion>) -> Configuration {
    Configuration::new(g, opinions).expect("stacked opinions cover every vertex")
}

/// Join: both operands plus every edge between them.
pub fn join(a: &Configuration, b: &Configuration) -> Configuration {
    let (mut g, ops, blocks) = stack(&[a, b]);
    connect_all(&mut g, blocks[0].clone(), blocks[1].clone());
    assemble(g, ops)
}

/// Double join: complete cross edges `A×B` and `B×C`, nothing between A and C.
pub fn double_join(a: &Configuration, b: &Configuration, c: &Configuration) -> Configuration {
    let (mut g, ops, blocks) = stack(&[a, b, c]);
    connect_all(&mut g, blocks[0].clone(), blocks[1].clone());
    connect_all(&mut g, blocks[1].clone(), blocks[2].clone());
    assemble(g, ops)
}

/// 2-to-1 matching: each vertex of `a` gains one neighbor in `b`, each vertex
/// of `b` gains two in `a`. Requires `|a| = 2|b|`.
pub fn matching_2to1(a: &Configuration, b: &Configuration) -> Result<Configuration> {
    if a.order() != 2 * b.order() {
        return Err(Error::MatchingSize {
            left: a.order(),
            right: b.order(),
        });
    }
    let (mut g, ops, blocks) = stack(&[a, b]);
    connect_two_to_one(&mut g, blocks[0].clone(), blocks[1].clone());
    Ok(assemble(g, ops))
}

/// Hybrid join: `a` to `b` by 2-to-1 matching, `b` to `c` by join.
pub fn hybrid_join(
    a: &Configuration,
    b: &Configuration,
    c: &Configuration,
) -> Result<Configuration> {
    if a.order() != 2 * b.order() {
        return Err(Error::MatchingSize {
            left: a.order(),
            right: b.order(),
        });
    }
    let (mut g, ops, blocks) = stack(&[a, b, c]);
    connect_two_to_one(&mut g, blocks[0].clone(), blocks[1].clone());
    connect_all(&mut g, blocks[1].clone(), blocks[2].clone());
    Ok(assemble(g, ops))
}

pub fn disjoint_union(a: &Configuration, b: &Configuration) -> Configuration {
    let (g, ops, _) = stack(&[a, b]);
    assemble(g, ops)
}
