//! Finite simplicial complexes on the vertex set `[m] = {1, ..., m}`.
//!
//! Vertices are 1-based at the API boundary and 0-based bit positions
//! internally: vertex `i` is bit `i - 1` of a face mask.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Widest vertex set a face mask can address.
pub const MAX_VERTICES: usize = 63;

/// A downward-closed family of subsets of `[m]`, stored as bit masks.
///
/// The empty face is always present.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    m: usize,
    faces: Vec<u64>,
    lookup: HashSet<u64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

/// Mask of a 1-based vertex list.
pub fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0, |acc, &v| acc | 1u64 << (v - 1))
}

/// Sorted 1-based vertex list of a mask.
pub fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl SimplicialComplex {
    /// Boundary of the m-gon: the empty face, all vertices and the edges
    /// `{i, i+1}` with indices taken modulo `m`.
    pub fn polygon_boundary(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidPolygon(m));
        }
        if m > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: m,
                cap: MAX_VERTICES,
            });
        }
        let edges: Vec<u64> = (0..m).map(|i| 1u64 << i | 1u64 << ((i + 1) % m)).collect();
        Ok(Self::from_masks(m, &edges))
    }

    /// The full simplex on `[m]`: every subset is a face.
    pub fn simplex(m: usize) -> Result<Self> {
        let all: Vec<usize> = (1..=m).collect();
        Self::from_facets(m, &[all])
    }

    /// Downward closure of the given facets (1-based vertex lists).
    pub fn from_facets(m: usize, facets: &[Vec<usize>]) -> Result<Self> {
        if m > MAX_VERTICES {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: m,
                cap: MAX_VERTICES,
            });
        }
        let mut masks = Vec::with_capacity(facets.len());
        for facet in facets {
            for &v in facet {
                if v == 0 || v > m {
                    return Err(Error::Validation(format!(
                        "vertex {v} is outside [1, {m}]"
                    )));
                }
            }
            masks.push(mask_of(facet));
        }
        Ok(Self::from_masks(m, &masks))
    }

    /// Downward closure of facet masks. Masks must already lie inside `[m]`.
    pub(crate) fn from_masks(m: usize, facets: &[u64]) -> Self {
        let mut lookup = HashSet::new();
        lookup.insert(0u64);
        for &facet in facets {
            if lookup.contains(&facet) {
                continue;
            }
            // walk every subset of the facet
            let mut sub = facet;
            loop {
                lookup.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & facet;
            }
        }
        let mut faces: Vec<u64> = lookup.iter().copied().collect();
        faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
        Self { m, faces, lookup }
    }

    /// Parse the complex text format: first line `m`, then one facet per
    /// line as space-separated 1-based indices. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut m: Option<usize> = None;
        let mut facets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        msg: format!("`{tok}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match m {
                None => {
                    if nums.len() != 1 {
                        return Err(Error::Parse {
                            line: idx + 1,
                            msg: "first line must hold the vertex count only".into(),
                        });
                    }
                    m = Some(nums[0]);
                }
                Some(_) => facets.push(nums),
            }
        }
        let m = m.ok_or(Error::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        })?;
        Self::from_facets(m, &facets)
    }

    /// Render in the text format, one maximal face per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.m);
        for facet in self.facets() {
            let vs: Vec<String> = vertices_of(facet).iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", vs.join(" "));
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// All faces including the empty one, ordered by size then mask.
    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Membership test for a face mask.
    pub fn contains_mask(&self, mask: u64) -> bool {
        self.lookup.contains(&mask)
    }

    /// Membership test for a 1-based vertex list.
    pub fn is_face(&self, vertices: &[usize]) -> bool {
        if vertices.iter().any(|&v| v == 0 || v > self.m) {
            return false;
        }
        self.contains_mask(mask_of(vertices))
    }

    /// Largest face size; 0 for the void-plus-empty complex.
    pub fn max_face_size(&self) -> usize {
        self.faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    /// Faces not contained in any other face.
    pub fn facets(&self) -> Vec<u64> {
        let vmask = self.vertex_mask();
        let mut out: Vec<u64> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| {
                f != 0
                    && (0..self.m)
                        .map(|b| 1u64 << b)
                        .filter(|bit| vmask & bit != 0 && f & bit == 0)
                        .all(|bit| !self.contains_mask(f | bit))
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn vertex_mask(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    /// Every subset of every face is a face.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|&f| {
            (0..64)
                .filter(|b| f >> b & 1 == 1)
                .all(|b| self.contains_mask(f & !(1u64 << b)))
        })
    }
}
