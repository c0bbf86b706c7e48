#![allow(dead_code, clippy::needless_range_loop)]

use proptest::prelude::*;
use torus_rigidity::{GainVector, PeriodicOrbitGraph};

/// Multigraph on `1..=max_n` vertices with `2n - 2 + extra` edges and small
/// gains, zero about a third of the time.
pub fn counted_graph(
    max_n: u32,
    extra: std::ops::RangeInclusive<i32>,
    k: i64,
) -> impl Strategy<Value = PeriodicOrbitGraph> {
    (1..=max_n, extra).prop_flat_map(move |(n, extra)| {
        let m = (2 * n as i32 - 2 + extra).max(0) as usize;
        prop::collection::vec((1..=n, 1..=n, -k..=k, -k..=k, 0u8..3), m..=m).prop_map(move |raw| {
            let triples: Vec<_> = raw
                .into_iter()
                .map(|(t, h, a, b, z)| (t, h, if z == 0 { (0, 0) } else { (a, b) }))
                .collect();
            PeriodicOrbitGraph::from_triples(n, &triples).unwrap()
        })
    })
}

/// Shifts every edge gain by `pot(tail) - pot(head)`.
pub fn switch(graph: &PeriodicOrbitGraph, pot: &[(i64, i64)]) -> PeriodicOrbitGraph {
    let p = |v: u32| GainVector::from(pot[(v as usize - 1) % pot.len()]);
    graph.map_gains(|e| p(e.tail) + e.gain - p(e.head))
}

/// Rank of the fixed-torus rigidity matrix at integer positions on the
/// torus `scale · Z²`, by Gaussian elimination modulo a 61-bit prime.
pub fn rank_mod_p(graph: &PeriodicOrbitGraph, positions: &[(i64, i64)], scale: i64) -> usize {
    const P: u128 = (1 << 61) - 1;
    let modp = |x: i64| (x as i128).rem_euclid(P as i128) as u128;
    let n = graph.vertex_count();
    let mut rows: Vec<Vec<u128>> = Vec::new();
    for e in graph.edges() {
        let mut row = vec![0u128; 2 * n];
        if e.tail != e.head {
            let (pi, pj) = (
                positions[e.tail as usize - 1],
                positions[e.head as usize - 1],
            );
            let d = [
                pi.0 - pj.0 - scale * e.gain.a,
                pi.1 - pj.1 - scale * e.gain.b,
            ];
            for c in 0..2 {
                row[2 * (e.tail as usize - 1) + c] = modp(d[c]);
                row[2 * (e.head as usize - 1) + c] = modp(-d[c]);
            }
        }
        rows.push(row);
    }
    let pow = |mut b: u128, mut e: u128| {
        let mut r = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..2 * n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][col], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col] * inv % P;
                for c in col..2 * n {
                    let sub = f * rows[rank][c] % P;
                    rows[r][c] = (rows[r][c] + P - sub) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}
