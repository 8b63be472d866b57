use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::graph::{BipartiteGraph, Graph};
use crate::rational::Rational;

/// Rows of a 0/1 matrix as bitsets.
pub(crate) fn rows(
    len: usize,
    width: usize,
    mut set: impl FnMut(usize, &mut FixedBitSet),
) -> Vec<FixedBitSet> {
    (0..len)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(width);
            set(i, &mut row);
            row
        })
        .collect()
}

pub(crate) fn and_count(x: &FixedBitSet, y: &FixedBitSet) -> usize {
    x.as_slice()
        .iter()
        .zip(y.as_slice())
        .map(|(a, b)| (a & b).count_ones() as usize)
        .sum()
}

pub(crate) fn and3_count(x: &FixedBitSet, y: &FixedBitSet, z: &FixedBitSet) -> usize {
    x.as_slice()
        .iter()
        .zip(y.as_slice())
        .zip(z.as_slice())
        .map(|((a, b), c)| (a & b & c).count_ones() as usize)
        .sum()
}

/// Neighborhood of every A-vertex as a bitset over B positions.
pub(crate) fn a_rows_over_b(h: &BipartiteGraph) -> Vec<FixedBitSet> {
    let a = h.side_a().as_slice();
    rows(a.len(), h.side_b().len(), |i, row| {
        for &b in h.neighbors(a[i]) {
            row.insert(h.index_in_side(b).expect("cross edge"));
        }
    })
}

/// Auxiliary graph on side A (vertex `i` is `h.side_a()[i]`): `x ~ y` iff
/// their codegree in `h` is at least `t_codeg`.
pub fn build_gamma(h: &BipartiteGraph, t_codeg: &Rational) -> Graph {
    let cutoff = t_codeg.ceil_i128();
    let a_rows = a_rows_over_b(h);
    let m = a_rows.len();
    let adjacency: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|x| {
            (0..m)
                .filter(|&y| y != x && and_count(&a_rows[x], &a_rows[y]) as i128 >= cutoff)
                .collect()
        })
        .collect();
    Graph::from_raw_adjacency(adjacency)
}
