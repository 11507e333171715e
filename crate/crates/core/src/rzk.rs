//! The real moment-angle complex `([-1,1], {-1,1})^K` as an explicit
//! cubical complex inside the cube `[-1,1]^m`.
//!
//! A cell is a pair `(I, ε)`: the coordinates in the face `I` range over
//! `[-1,1]`, every other coordinate is fixed at `ε_k = ±1`. Both parts are
//! `m`-bit masks; a set sign bit means `-1`, and sign bits on `I` are zero.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scomplex::SimplicialComplex;
use crate::surface::{self, DisjointSets, Occurrence, Orientation};

/// Default largest `m` that [`CubicalSurface::build`] will materialize.
pub const DEFAULT_BUILD_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    /// Coordinates ranging over `[-1, 1]`.
    pub free: u64,
    /// Coordinates fixed at `-1`; disjoint from `free`.
    pub signs: u64,
}

impl Cell {
    pub fn new(free: u64, signs: u64) -> Self {
        Self {
            free,
            signs: signs & !free,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.count_ones() as usize
    }

    /// Sign of coordinate `k` (0-based) for a fixed coordinate.
    pub fn sign(&self, k: usize) -> i8 {
        if self.signs >> k & 1 == 1 {
            -1
        } else {
            1
        }
    }

    /// Codimension-one faces with their cubical incidence coefficients.
    ///
    /// For free coordinates `i_1 < ... < i_k`, the face at `x_{i_r} = ±1`
    /// carries `±(-1)^(r-1)`.
    pub fn boundary(&self) -> Vec<(Cell, i8)> {
        let mut out = Vec::with_capacity(2 * self.dim());
        let mut rest = self.free;
        let mut r = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= rest - 1;
            let sign: i8 = if r % 2 == 0 { 1 } else { -1 };
            let free = self.free & !bit;
            out.push((Cell::new(free, self.signs), sign));
            out.push((Cell::new(free, self.signs | bit), -sign));
            r += 1;
        }
        out
    }

    /// True iff the cell's closure contains the vertex `signs`.
    pub fn contains_vertex(&self, vertex_signs: u64) -> bool {
        vertex_signs & !self.free == self.signs
    }
}

/// The cubical complex `RZ_K` with signed incidences.
#[derive(Clone, Debug)]
pub struct CubicalSurface {
    m: usize,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    /// `boundary[d][c]`: faces of cell `c` of dimension `d`, as indices into
    /// dimension `d - 1`. Empty for `d = 0`.
    boundary: Vec<Vec<Vec<Occurrence>>>,
}

/// Flags produced by [`CubicalSurface::verify_closed_surface`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub edges_in_two_squares: bool,
    pub vertex_links_are_cycles: bool,
    pub connected: bool,
    pub closed_surface: bool,
    pub min_squares_per_vertex: usize,
    pub max_squares_per_vertex: usize,
}

/// Machine-readable summary with frozen field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RzkReport {
    pub m: usize,
    #[serde(rename = "V")]
    pub v: usize,
    #[serde(rename = "E")]
    pub e: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub chi: i64,
    pub closed_surface: bool,
    pub orientable: Option<bool>,
    pub genus: Option<u64>,
}

/// `Σ_{I ∈ K} (-1)^|I| · 2^(m - |I|)`, without building any cells.
pub fn euler_characteristic(k: &SimplicialComplex) -> i128 {
    let m = k.m() as u32;
    k.faces()
        .iter()
        .map(|f| {
            let d = f.count_ones();
            let term = 1i128 << (m - d);
            if d % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Genus of `RZ_K` for the m-gon, `1 + 2^(m-3)(m-4)`, in exact arithmetic.
pub fn polygon_genus_formula(m: usize) -> Result<u128> {
    if m < 3 {
        return Err(Error::InvalidPolygon(m));
    }
    if m == 3 {
        return Ok(0);
    }
    Ok(1 + (1u128 << (m - 3)) * (m as u128 - 4))
}

/// Orientable genus `(2 - χ)/2` or nonorientable genus `2 - χ`.
pub fn genus_from_chi(chi: i64, orientable: bool) -> Result<u64> {
    let deficit = 2 - chi;
    if deficit < 0 || (orientable && deficit % 2 != 0) {
        return Err(Error::Contract(format!(
            "Euler characteristic {chi} does not belong to a closed {} surface",
            if orientable { "orientable" } else { "nonorientable" }
        )));
    }
    Ok(if orientable { deficit as u64 / 2 } else { deficit as u64 })
}

/// Every subset of `mask`, starting at 0.
fn subsets(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

impl CubicalSurface {
    /// Build with the default cap on `m`.
    pub fn build(k: &SimplicialComplex) -> Result<Self> {
        Self::build_with_cap(k, DEFAULT_BUILD_CAP)
    }

    /// One cell per face `I ∈ K` and sign pattern on `[m] \ I`.
    pub fn build_with_cap(k: &SimplicialComplex, cap: usize) -> Result<Self> {
        let m = k.m();
        if m > cap {
            return Err(Error::CapExceeded {
                what: "m for cubical build",
                value: m,
                cap,
            });
        }
        let full = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
        let top = k.max_face_size();
        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); top + 1];
        for &face in k.faces() {
            let rest = full & !face;
            let d = face.count_ones() as usize;
            cells[d].extend(subsets(rest).map(|signs| Cell::new(face, signs)));
        }
        for layer in cells.iter_mut() {
            layer.sort_unstable();
        }
        let index: Vec<HashMap<Cell, usize>> = cells
            .iter()
            .map(|layer| layer.iter().enumerate().map(|(i, &c)| (c, i)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(cells.len());
        boundary.push(vec![Vec::new(); cells[0].len()]);
        for d in 1..cells.len() {
            let lower = &index[d - 1];
            let layer = cells[d]
                .iter()
                .map(|c| {
                    c.boundary()
                        .into_iter()
                        .map(|(face, coef)| {
                            let idx = *lower
                                .get(&face)
                                .expect("faces of a cell over a face of K are cells");
                            (idx, coef)
                        })
                        .collect()
                })
                .collect();
            boundary.push(layer);
        }
        Ok(Self {
            m,
            cells,
            index,
            boundary,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Top cell dimension.
    pub fn dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn num_vertices(&self) -> usize {
        self.count(0)
    }

    pub fn num_edges(&self) -> usize {
        self.count(1)
    }

    pub fn num_squares(&self) -> usize {
        self.count(2)
    }

    pub fn index_of(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell.dim())?.get(cell).copied()
    }

    /// Incidences of cell `idx` of dimension `dim`.
    pub fn boundary(&self, dim: usize, idx: usize) -> &[Occurrence] {
        &self.boundary[dim][idx]
    }

    /// Alternating sum of cell counts over all dimensions.
    pub fn chi(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, layer)| {
                if d % 2 == 0 {
                    layer.len() as i64
                } else {
                    -(layer.len() as i64)
                }
            })
            .sum()
    }

    /// Connected components of the 1-skeleton.
    pub fn components(&self) -> usize {
        let mut dsu = DisjointSets::new(self.num_vertices());
        if let Some(edges) = self.boundary.get(1) {
            for inc in edges {
                dsu.union(inc[0].0, inc[1].0);
            }
        }
        dsu.count()
    }

    /// Check the closed-surface conditions on a complex of dimension ≤ 2.
    pub fn verify_closed_surface(&self) -> Result<SurfaceReport> {
        if self.dim() > 2 {
            return Err(Error::Unsupported(format!(
                "complex has cells of dimension {}; only dimension <= 2 is checked",
                self.dim()
            )));
        }
        let nv = self.num_vertices();
        let ne = self.num_edges();
        let squares: &[Vec<Occurrence>] = self.boundary.get(2).map(|v| v.as_slice()).unwrap_or(&[]);
        let edges_in_two_squares = ne > 0 && surface::every_edge_twice(ne, squares);

        // vertex -> incident edges, vertex -> incident squares
        let mut vertex_edges: Vec<Vec<usize>> = vec![Vec::new(); nv];
        if ne > 0 {
            for (e, inc) in self.boundary[1].iter().enumerate() {
                for &(v, _) in inc {
                    vertex_edges[v].push(e);
                }
            }
        }
        let mut vertex_squares: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (s, inc) in squares.iter().enumerate() {
            let mut seen: Vec<usize> = inc
                .iter()
                .flat_map(|&(e, _)| self.boundary[1][e].iter().map(|&(v, _)| v))
                .collect();
            seen.sort_unstable();
            seen.dedup();
            for v in seen {
                vertex_squares[v].push(s);
            }
        }

        let mut links_ok = nv > 0;
        let mut min_sq = usize::MAX;
        let mut max_sq = 0;
        for v in 0..nv {
            let sq = &vertex_squares[v];
            min_sq = min_sq.min(sq.len());
            max_sq = max_sq.max(sq.len());
            if !links_ok {
                continue;
            }
            let local: HashMap<usize, usize> = vertex_edges[v]
                .iter()
                .enumerate()
                .map(|(i, &e)| (e, i))
                .collect();
            if local.is_empty() {
                links_ok = false;
                continue;
            }
            let mut degree = vec![0usize; local.len()];
            let mut dsu = DisjointSets::new(local.len());
            for &s in sq {
                let at_v: Vec<usize> = squares[s]
                    .iter()
                    .map(|&(e, _)| e)
                    .filter(|e| local.contains_key(e))
                    .collect();
                if at_v.len() != 2 {
                    links_ok = false;
                    break;
                }
                let (a, b) = (local[&at_v[0]], local[&at_v[1]]);
                degree[a] += 1;
                degree[b] += 1;
                dsu.union(a, b);
            }
            if links_ok && (degree.iter().any(|&d| d != 2) || dsu.count() != 1) {
                links_ok = false;
            }
        }
        if nv == 0 {
            min_sq = 0;
        }

        let connected = self.components() == 1;
        Ok(SurfaceReport {
            edges_in_two_squares,
            vertex_links_are_cycles: links_ok,
            connected,
            closed_surface: edges_in_two_squares && links_ok && connected,
            min_squares_per_vertex: min_sq,
            max_squares_per_vertex: max_sq,
        })
    }

    fn require_surface(&self) -> Result<()> {
        let report = self.verify_closed_surface()?;
        if !report.closed_surface {
            return Err(Error::Contract(format!(
                "complex is not a closed surface: {report:?}"
            )));
        }
        Ok(())
    }

    /// Propagate 2-cell orientations across shared edges.
    ///
    /// A square `(I = {i < j}, ε)` with sign `+1` carries the frame
    /// `(x_i, x_j)`.
    pub fn orientability(&self) -> Result<Orientation> {
        self.require_surface()?;
        Ok(surface::orient(self.num_edges(), &self.boundary[2]))
    }

    /// `(orientable, genus)` of a closed surface, from `V - E + F`.
    pub fn genus(&self) -> Result<(bool, u64)> {
        let orientable = self.orientability()?.is_orientable();
        Ok((orientable, genus_from_chi(self.chi(), orientable)?))
    }

    /// Summary record; orientability and genus are `None` for non-surfaces.
    pub fn report(&self) -> RzkReport {
        let closed = self
            .verify_closed_surface()
            .map(|r| r.closed_surface)
            .unwrap_or(false);
        let (orientable, genus) = if closed {
            match self.genus() {
                Ok((o, g)) => (Some(o), Some(g)),
                Err(_) => (None, None),
            }
        } else {
            (None, None)
        };
        RzkReport {
            m: self.m,
            v: self.num_vertices(),
            e: self.num_edges(),
            f: self.num_squares(),
            chi: self.chi(),
            closed_surface: closed,
            orientable,
            genus,
        }
    }
}
