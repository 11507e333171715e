//! Regular `Z_2^n` covers of closed surfaces.
//!
//! A base surface is a single polygon with one vertex whose sides are
//! glued by the standard word. A GF(2) matrix `φ` (columns indexed by the
//! generators) gives a homomorphism from the mod-2 abelianized fundamental
//! group onto a subgroup of `Z_2^n`; the cover has vertex set `Z_2^n`, an
//! edge `(a_i, q)` from `q` to `q + φ(a_i)` and one lifted polygon per
//! starting vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, Gf2Matrix};
use crate::rzk::genus_from_chi;
use crate::surface::{self, Occurrence, Orientation};

/// Largest deck rank whose cover is materialized.
pub const MAX_DECK_RANK: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePresentation {
    orientable: bool,
    genus: usize,
    word: Vec<Letter>,
    /// Orientation character on the generators.
    w: u64,
}

impl SurfacePresentation {
    /// `a1 b1 a1⁻¹ b1⁻¹ … ag bg ag⁻¹ bg⁻¹` (generators `a_i = 2i-2`,
    /// `b_i = 2i-1`) or `a1 a1 … ah ah`.
    pub fn new(orientable: bool, genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Unsupported(
                "the sphere has no one-vertex standard word".into(),
            ));
        }
        let d = if orientable { 2 * genus } else { genus };
        if d > 63 {
            return Err(Error::CapExceeded {
                what: "generator count",
                value: d,
                cap: 63,
            });
        }
        let letter = |generator, inverse| Letter { generator, inverse };
        let word = if orientable {
            (0..genus)
                .flat_map(|i| {
                    let (a, b) = (2 * i, 2 * i + 1);
                    [letter(a, false), letter(b, false), letter(a, true), letter(b, true)]
                })
                .collect()
        } else {
            (0..genus).flat_map(|i| [letter(i, false), letter(i, false)]).collect()
        };
        let w = if orientable { 0 } else { (1u64 << d) - 1 };
        Ok(Self {
            orientable,
            genus,
            word,
            w,
        })
    }

    pub fn orientable(&self) -> bool {
        self.orientable
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn generators(&self) -> usize {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus
        }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn orientation_character(&self) -> u64 {
        self.w
    }

    /// `V - E + F` of the one-vertex gluing.
    pub fn chi(&self) -> i64 {
        2 - self.generators() as i64
    }

    /// Maximum rank of a free `Z_2^n` deck group with this quotient.
    pub fn rank_bound(&self) -> usize {
        self.generators()
    }

    /// Human-readable word, e.g. `a1 b1 a1^-1 b1^-1`.
    pub fn word_string(&self) -> String {
        let name = |g: usize| {
            if self.orientable {
                format!("{}{}", if g.is_multiple_of(2) { 'a' } else { 'b' }, g / 2 + 1)
            } else {
                format!("a{}", g + 1)
            }
        };
        self.word
            .iter()
            .map(|l| format!("{}{}", name(l.generator), if l.inverse { "^-1" } else { "" }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_dims(base: &SurfacePresentation, phi: &Gf2Matrix) -> Result<()> {
    if phi.ncols() != base.generators() {
        return Err(Error::DimensionMismatch {
            expected: base.generators(),
            got: phi.ncols(),
        });
    }
    Ok(())
}

/// True iff the cover defined by `φ` is orientable: the orientation
/// character vanishes on `ker φ`, i.e. lies in the row space of `φ`.
pub fn cover_orientable(base: &SurfacePresentation, phi: &Gf2Matrix) -> Result<bool> {
    check_dims(base, phi)?;
    Ok(gf2::in_span(phi.rows(), base.orientation_character()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseSummary {
    pub orientable: bool,
    pub genus: usize,
}

/// Frozen machine-readable cover summary. `genus` is that of one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub n: usize,
    pub base: BaseSummary,
    pub chi: i64,
    pub components: usize,
    pub orientable: bool,
    pub genus: u64,
}

#[derive(Clone, Debug)]
pub struct CoverComplex {
    base: SurfacePresentation,
    phi: Gf2Matrix,
    /// `edges[gen·2^n + q] = (q, q + φ(gen))`
    edges: Vec<(usize, usize)>,
    /// `cells[q]`: the polygon lifted at start vertex `q`.
    cells: Vec<Vec<Occurrence>>,
}

impl CoverComplex {
    pub fn build(base: &SurfacePresentation, phi: &Gf2Matrix) -> Result<Self> {
        check_dims(base, phi)?;
        let n = phi.nrows();
        if n > MAX_DECK_RANK {
            return Err(Error::CapExceeded {
                what: "deck rank",
                value: n,
                cap: MAX_DECK_RANK,
            });
        }
        let sheets = 1usize << n;
        let d = base.generators();
        let image: Vec<usize> = (0..d).map(|c| phi.column(c) as usize).collect();

        let mut edges = Vec::with_capacity(d * sheets);
        for (g, &img) in image.iter().enumerate() {
            debug_assert_eq!(edges.len(), g * sheets);
            edges.extend((0..sheets).map(|q| (q, q ^ img)));
        }

        let mut cells = Vec::with_capacity(sheets);
        for q in 0..sheets {
            let mut at = q;
            let mut boundary = Vec::with_capacity(base.word.len());
            for letter in &base.word {
                let img = image[letter.generator];
                if letter.inverse {
                    // arrive at `at` along the lift of a_i that ends here
                    boundary.push((letter.generator * sheets + (at ^ img), -1));
                } else {
                    boundary.push((letter.generator * sheets + at, 1));
                }
                at ^= img;
            }
            if at != q {
                return Err(Error::Contract(format!(
                    "relator lifted at sheet {q} ends at sheet {at}"
                )));
            }
            cells.push(boundary);
        }
        Ok(Self {
            base: base.clone(),
            phi: phi.clone(),
            edges,
            cells,
        })
    }

    pub fn deck_rank(&self) -> usize {
        self.phi.nrows()
    }

    pub fn base(&self) -> &SurfacePresentation {
        &self.base
    }

    pub fn phi(&self) -> &Gf2Matrix {
        &self.phi
    }

    pub fn num_vertices(&self) -> usize {
        1 << self.deck_rank()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cells(&self) -> &[Vec<Occurrence>] {
        &self.cells
    }

    pub fn chi(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_cells() as i64
    }

    pub fn components(&self) -> usize {
        surface::components(self.num_vertices(), &self.edges)
    }

    pub fn every_edge_twice(&self) -> bool {
        surface::every_edge_twice(self.num_edges(), &self.cells)
    }

    /// Orientation propagation on the built cells.
    pub fn orientation(&self) -> Result<Orientation> {
        if !self.every_edge_twice() {
            return Err(Error::Contract("cover has an edge not shared by two cells".into()));
        }
        Ok(surface::orient(self.num_edges(), &self.cells))
    }

    /// Action of the deck translation `t` on a vertex, edge or cell index.
    pub fn translate_vertex(&self, t: usize, q: usize) -> usize {
        q ^ t
    }

    pub fn translate_edge(&self, t: usize, e: usize) -> usize {
        let sheets = self.num_vertices();
        (e / sheets) * sheets + ((e % sheets) ^ t)
    }

    pub fn translate_cell(&self, t: usize, c: usize) -> usize {
        c ^ t
    }

    /// Summary, cross-checking the algebraic orientability criterion
    /// against orientation propagation. A disagreement is an error.
    pub fn report(&self) -> Result<CoverReport> {
        let bfs = self.orientation()?.is_orientable();
        let algebraic = cover_orientable(&self.base, &self.phi)?;
        if bfs != algebraic {
            return Err(Error::Contract(format!(
                "orientability mismatch: propagation says {bfs}, kernel criterion says {algebraic}"
            )));
        }
        let components = self.components();
        let chi = self.chi();
        let genus = genus_from_chi(chi / components as i64, bfs)?;
        Ok(CoverReport {
            n: self.deck_rank(),
            base: BaseSummary {
                orientable: self.base.orientable,
                genus: self.base.genus,
            },
            chi,
            components,
            orientable: bfs,
            genus,
        })
    }
}

/// Coordinate projections of the mod-2 abelianization, killing `a1`, then
/// `b1`, and so on: ranks `d, d-1, …, 1`.
pub fn prop2_tower(base: &SurfacePresentation) -> Vec<(usize, Gf2Matrix)> {
    let d = base.generators();
    (1..=d)
        .rev()
        .map(|n| {
            let rows = (d - n..d).map(|j| 1u64 << j).collect();
            (n, Gf2Matrix::new(d, rows).expect("unit rows fit"))
        })
        .collect()
}
