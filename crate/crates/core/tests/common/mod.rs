//! Brute-force oracles shared by the integration tests. None of these go
//! through the face-membership shortcuts the library uses.

#![allow(dead_code)]

use std::collections::HashSet;

use involab::rzk::{Cell, CubicalSurface};
use involab::SimplicialComplex;

/// True iff some cell of the built complex contains a point fixed by the
/// coordinate negation with support `g`. Each cell is convex, so it holds a
/// fixed point of an involution mapping it to itself exactly when its
/// center does; fixed points on a cell's boundary are found on the lower
/// cells, which are scanned too.
pub fn brute_force_fixed(c: &CubicalSurface, g: u64) -> bool {
    let m = c.m();
    (0..=c.dim()).any(|d| {
        c.cells(d).iter().any(|cell| {
            let center = center(m, cell);
            let image: Vec<f64> = center
                .iter()
                .enumerate()
                .map(|(k, &x)| if g >> k & 1 == 1 { -x } else { x })
                .collect();
            image == center
        })
    })
}

fn center(m: usize, cell: &Cell) -> Vec<f64> {
    (0..m)
        .map(|k| {
            if cell.free >> k & 1 == 1 {
                0.0
            } else if cell.signs >> k & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        })
        .collect()
}

/// Every linear subspace of GF(2)^m for m ≤ 6, each encoded as the set of
/// its elements (a 64-bit indicator). Built by closing under "add one
/// vector", independently of any echelon form.
pub fn all_subspaces(m: usize) -> Vec<u64> {
    assert!(m <= 6);
    let n = 1u64 << m;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut frontier = vec![1u64]; // {0}
    seen.insert(1);
    while let Some(s) = frontier.pop() {
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            let mut t = s;
            for x in 0..n {
                if s >> x & 1 == 1 {
                    t |= 1u64 << (x ^ v);
                }
            }
            if seen.insert(t) {
                frontier.push(t);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Rank of a subspace given as an element indicator.
pub fn subspace_rank(s: u64) -> usize {
    s.count_ones().trailing_zeros() as usize
}

/// Free iff no nonzero element is a face.
pub fn subspace_is_free(k: &SimplicialComplex, s: u64) -> bool {
    (1..64u64).filter(|&x| s >> x & 1 == 1).all(|x| !k.contains_mask(x))
}

/// Size of the image of a GF(2) map given by its column images.
pub fn image_size(columns: &[u64]) -> usize {
    let mut img: HashSet<u64> = HashSet::new();
    for combo in 0u64..1 << columns.len() {
        let v = columns
            .iter()
            .enumerate()
            .filter(|(i, _)| combo >> i & 1 == 1)
            .fold(0, |acc, (_, &c)| acc ^ c);
        img.insert(v);
    }
    img.len()
}

/// `1 + 2^(n-1)(n-2)` by repeated doubling.
pub fn g_of_n(n: u32) -> i128 {
    let mut p: i128 = 1;
    for _ in 1..n {
        p *= 2;
    }
    1 + p * (n as i128 - 2)
}
