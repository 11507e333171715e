//! Combinatorial checks shared by cubical surfaces and cover complexes.
//!
//! A 2-cell is described by its oriented boundary: a list of
//! `(edge index, ±1)` occurrences, where `+1` means the edge is traversed
//! along its reference direction.

use std::collections::VecDeque;

/// One edge occurrence in a 2-cell boundary.
pub type Occurrence = (usize, i8);

/// Number of boundary occurrences of each edge.
pub fn edge_occurrences(num_edges: usize, cells: &[Vec<Occurrence>]) -> Vec<usize> {
    let mut count = vec![0usize; num_edges];
    for cell in cells {
        for &(e, _) in cell {
            count[e] += 1;
        }
    }
    count
}

/// True iff every edge occurs in exactly two 2-cell boundary slots.
pub fn every_edge_twice(num_edges: usize, cells: &[Vec<Occurrence>]) -> bool {
    edge_occurrences(num_edges, cells).iter().all(|&c| c == 2)
}

/// Minimal union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.sets -= 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    pub fn count(&self) -> usize {
        self.sets
    }
}

/// Number of connected components of the 1-skeleton.
pub fn components(num_vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut dsu = DisjointSets::new(num_vertices);
    for &(a, b) in edges {
        dsu.union(a, b);
    }
    dsu.count()
}

/// Result of propagating 2-cell orientations across shared edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// A consistent choice of ±1 per 2-cell.
    Consistent(Vec<i8>),
    /// A cell reached with both signs, found while crossing `edge`.
    Reversing { edge: usize },
}

impl Orientation {
    pub fn is_orientable(&self) -> bool {
        matches!(self, Orientation::Consistent(_))
    }

    pub fn signs(&self) -> Option<&[i8]> {
        match self {
            Orientation::Consistent(s) => Some(s),
            Orientation::Reversing { .. } => None,
        }
    }
}

/// Breadth-first orientation propagation.
///
/// Requires every edge to occur exactly twice. Two occurrences
/// `(f, s)` and `(f', s')` of an edge are compatible when
/// `o(f)·s + o(f')·s' = 0`, i.e. the edge is crossed in opposite directions.
pub fn orient(num_edges: usize, cells: &[Vec<Occurrence>]) -> Orientation {
    // slot = (cell, position in boundary, direction)
    let mut slots: Vec<Vec<(usize, usize, i8)>> = vec![Vec::with_capacity(2); num_edges];
    for (f, cell) in cells.iter().enumerate() {
        for (pos, &(e, s)) in cell.iter().enumerate() {
            slots[e].push((f, pos, s));
        }
    }
    debug_assert!(slots.iter().all(|s| s.len() == 2));

    let mut sign = vec![0i8; cells.len()];
    let mut queue = VecDeque::new();
    for start in 0..cells.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        queue.push_back(start);
        while let Some(f) = queue.pop_front() {
            for (pos, &(e, s)) in cells[f].iter().enumerate() {
                let pair = &slots[e];
                let other = if (pair[0].0, pair[0].1) == (f, pos) { pair[1] } else { pair[0] };
                let (g, _, s2) = other;
                let want = -sign[f] * s * s2;
                if sign[g] == 0 {
                    sign[g] = want;
                    queue.push_back(g);
                } else if sign[g] != want {
                    return Orientation::Reversing { edge: e };
                }
            }
        }
    }
    Orientation::Consistent(sign)
}
