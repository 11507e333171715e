//! The coordinate action of `Z_2^m` on `RZ_K`.
//!
//! An element is identified with its support, the set of coordinates it
//! negates; composition is XOR. A point of `RZ_K` fixed by `g` has
//! `x_i = 0` on the support, and the zero set of any point of `RZ_K` is a
//! face of `K`. So `g` has a fixed point iff its support is a face.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2;
use crate::rzk::{Cell, CubicalSurface};
use crate::scomplex::{mask_of, vertices_of, SimplicialComplex};

/// Largest `m` accepted by [`max_free_rank`].
pub const SEARCH_CAP: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignElement(pub u64);

impl SignElement {
    pub const IDENTITY: SignElement = SignElement(0);

    /// The reflection `ψ_i` (1-based).
    pub fn psi(i: usize) -> Self {
        SignElement(1u64 << (i - 1))
    }

    /// Product of the `ψ_i` for the given 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        SignElement(indices.iter().fold(0, |acc, &i| acc ^ 1u64 << (i - 1)))
    }

    pub fn support(&self) -> u64 {
        self.0
    }

    pub fn indices(&self) -> Vec<usize> {
        vertices_of(self.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == 0
    }

    pub fn compose(self, other: SignElement) -> SignElement {
        SignElement(self.0 ^ other.0)
    }

    /// Flip the fixed signs on `support \ I`; the free set is unchanged.
    pub fn apply(&self, cell: Cell) -> Cell {
        Cell::new(cell.free, cell.signs ^ (self.0 & !cell.free))
    }

    /// `+1` if the support has even size, else `-1`.
    pub fn parity(&self) -> i8 {
        if self.0.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl std::ops::Mul for SignElement {
    type Output = SignElement;
    fn mul(self, rhs: SignElement) -> SignElement {
        self.compose(rhs)
    }
}

/// A subgroup of `Z_2^m` with a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    m: usize,
    basis: Vec<u64>,
}

impl Subgroup {
    pub fn trivial(m: usize) -> Self {
        Self {
            m,
            basis: Vec::new(),
        }
    }

    /// Subgroup generated by the given elements, reduced to RREF.
    pub fn generated_by(m: usize, gens: &[SignElement]) -> Result<Self> {
        let limit = if m >= 64 { u64::MAX } else { (1u64 << m) - 1 };
        if let Some(g) = gens.iter().find(|g| g.0 & !limit != 0) {
            return Err(Error::Validation(format!(
                "element {:?} has support outside [1, {m}]",
                g.indices()
            )));
        }
        let raw: Vec<u64> = gens.iter().map(|g| g.0).collect();
        Ok(Self {
            m,
            basis: gf2::rref(&raw),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<SignElement> {
        self.basis.iter().map(|&b| SignElement(b)).collect()
    }

    /// All `2^rank` elements, starting with the identity.
    pub fn elements(&self) -> Vec<SignElement> {
        gf2::span(&self.basis).into_iter().map(SignElement).collect()
    }

    pub fn contains(&self, g: SignElement) -> bool {
        gf2::in_span(&self.basis, g.0)
    }

    /// Basis as sorted 1-based index lists.
    pub fn index_lists(&self) -> Vec<Vec<usize>> {
        self.basis.iter().map(|&b| vertices_of(b)).collect()
    }

    /// Parse one basis vector per line, as 1-based indices.
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut ids = Vec::new();
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    msg: format!("`{tok}` is not an index"),
                })?;
                if v == 0 || v > m {
                    return Err(Error::Validation(format!("index {v} is outside [1, {m}]")));
                }
                ids.push(v);
            }
            gens.push(SignElement(mask_of(&ids)));
        }
        Self::generated_by(m, &gens)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for list in self.index_lists() {
            let parts: Vec<String> = list.iter().map(|i| i.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// True iff `g` fixes some point of `RZ_K`. The identity fixes everything.
pub fn has_fixed_point(k: &SimplicialComplex, g: SignElement) -> bool {
    g.is_identity() || k.contains_mask(g.0)
}

/// True iff no nonidentity element of `h` has its support in `K`.
pub fn is_free_subgroup(k: &SimplicialComplex, h: &Subgroup) -> bool {
    gf2::span(&h.basis)
        .into_iter()
        .skip(1)
        .all(|s| !k.contains_mask(s))
}

/// The explicit rank `m - 2` free subgroup on the m-gon surface.
///
/// `m = 2k`: `ψ1ψ3, ψ3ψ5, …, ψ(2k-3)ψ(2k-1)` and `ψ2ψ4, …, ψ(2k-2)ψ(2k)`.
/// `m = 2k+1`: the same two families plus `ψ1ψ(2k)ψ(2k+1)`.
pub fn lemma_generators(m: usize) -> Result<Subgroup> {
    if m < 3 {
        return Err(Error::InvalidPolygon(m));
    }
    let k = m / 2;
    let mut gens = Vec::with_capacity(m - 2);
    for i in (1..k).map(|t| 2 * t - 1) {
        gens.push(SignElement::from_indices(&[i, i + 2]));
    }
    for i in (1..k).map(|t| 2 * t) {
        gens.push(SignElement::from_indices(&[i, i + 2]));
    }
    if m % 2 == 1 {
        gens.push(SignElement::from_indices(&[1, 2 * k, 2 * k + 1]));
    }
    Subgroup::generated_by(m, &gens)
}

/// Degree of `g` on an orientable closed surface: `+1` if it carries the
/// computed orientation to itself, `-1` if it reverses it.
///
/// The induced map on a square `(I, ε) → (I, ε')` negates the coordinates
/// in `support ∩ I`, so its local degree is `o(c) · (-1)^|support ∩ I| · o(gc)`.
/// Every square must agree; a disagreement is reported as a contract error.
pub fn orientation_sign(c: &CubicalSurface, g: SignElement) -> Result<i8> {
    let orientation = c.orientability()?;
    let signs = orientation
        .signs()
        .ok_or_else(|| Error::Contract("surface is not orientable".into()))?;
    let mut degree: Option<i8> = None;
    for (idx, &sq) in c.cells(2).iter().enumerate() {
        let image = g.apply(sq);
        let j = c
            .index_of(&image)
            .ok_or_else(|| Error::Contract("action does not preserve the complex".into()))?;
        let flips = (g.0 & sq.free).count_ones();
        let local_frame: i8 = if flips.is_multiple_of(2) { 1 } else { -1 };
        let local = signs[idx] * local_frame * signs[j];
        match degree {
            None => degree = Some(local),
            Some(d) if d != local => {
                return Err(Error::Contract(
                    "transported orientation is inconsistent across squares".into(),
                ))
            }
            _ => {}
        }
    }
    degree.ok_or_else(|| Error::Contract("surface has no 2-cells".into()))
}

/// State of one branch-and-bound node.
struct Search<'a> {
    k: &'a SimplicialComplex,
    m: usize,
    ceiling: usize,
    best_rank: usize,
    best: Vec<u64>,
}

impl Search<'_> {
    /// Depth-first over canonical RREF bases. Basis vectors are added in
    /// increasing pivot (highest bit) order and must vanish on all earlier
    /// pivots, so each subspace is visited once, in increasing mask order.
    fn descend(&mut self, basis: &mut Vec<u64>, span: &mut Vec<u64>, pivots: u64, next_bit: usize) {
        if basis.len() > self.best_rank {
            self.best_rank = basis.len();
            self.best = basis.clone();
        }
        if self.best_rank >= self.ceiling {
            return;
        }
        // free pivot positions still available bound the reachable rank
        let reachable = basis.len() + (self.m - next_bit);
        if reachable <= self.best_rank {
            return;
        }
        for p in next_bit..self.m {
            if basis.len() + (self.m - p) <= self.best_rank {
                return;
            }
            let low = (1u64 << p) - 1;
            let high = 1u64 << p;
            let choices = low & !pivots;
            // every v with pivot p and zero bits at earlier pivots
            let mut tail = 0u64;
            loop {
                let v = high | tail;
                if self.extends_freely(span, v) {
                    let before = span.len();
                    for i in 0..before {
                        let w = span[i] ^ v;
                        span.push(w);
                    }
                    basis.push(v);
                    self.descend(basis, span, pivots | high, p + 1);
                    basis.pop();
                    span.truncate(before);
                    if self.best_rank >= self.ceiling {
                        return;
                    }
                }
                if tail == choices {
                    break;
                }
                tail = (tail.wrapping_sub(choices)) & choices;
            }
        }
    }

    fn extends_freely(&self, span: &[u64], v: u64) -> bool {
        span.iter().all(|&s| !self.k.contains_mask(s ^ v))
    }
}

/// Maximum rank of a subgroup of `Z_2^m` acting freely on `RZ_K`, with
/// the first maximal witness in canonical search order.
///
/// Any face `σ` spans a coordinate subspace made entirely of faces, so a
/// free subgroup meets it trivially and has rank at most `m - |σ|`; the
/// search stops as soon as it reaches that ceiling.
pub fn max_free_rank(k: &SimplicialComplex) -> Result<(usize, Subgroup)> {
    let m = k.m();
    if m > SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "m for free-rank search",
            value: m,
            cap: SEARCH_CAP,
        });
    }
    let ceiling = m - k.max_face_size();
    let mut search = Search {
        k,
        m,
        ceiling,
        best_rank: 0,
        best: Vec::new(),
    };
    search.descend(&mut Vec::new(), &mut vec![0], 0, 0);
    Ok((
        search.best_rank,
        Subgroup {
            m,
            basis: search.best,
        },
    ))
}

/// Same result as [`max_free_rank`], with first-level branches (choice of
/// the first basis vector) explored on the rayon pool. The winner is the
/// lowest first vector reaching the overall maximum, which is exactly the
/// sequential answer.
pub fn max_free_rank_parallel(k: &SimplicialComplex) -> Result<(usize, Subgroup)> {
    let m = k.m();
    if m > SEARCH_CAP {
        return Err(Error::CapExceeded {
            what: "m for free-rank search",
            value: m,
            cap: SEARCH_CAP,
        });
    }
    let ceiling = m - k.max_face_size();
    let firsts: Vec<u64> = (1u64..1u64 << m).filter(|&v| !k.contains_mask(v)).collect();
    let results: Vec<(usize, Vec<u64>)> = firsts
        .par_iter()
        .map(|&v| {
            let p = gf2::pivot(v) as usize;
            let mut search = Search {
                k,
                m,
                ceiling,
                best_rank: 1,
                best: vec![v],
            };
            search.descend(&mut vec![v], &mut vec![0, v], 1u64 << p, p + 1);
            (search.best_rank, search.best)
        })
        .collect();
    let best = results
        .into_iter()
        .fold((0usize, Vec::new()), |acc, r| if r.0 > acc.0 { r } else { acc });
    Ok((best.0, Subgroup { m, basis: best.1 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polygon(m: usize) -> SimplicialComplex {
        SimplicialComplex::polygon_boundary(m).unwrap()
    }

    #[test]
    fn apply_examples() {
        let v = Cell::new(0, 0);
        assert_eq!(SignElement::IDENTITY.apply(v), v);
        assert_eq!(SignElement::psi(1).apply(v), Cell::new(0, 0b001));
        let sq = Cell::new(0b0011, 0);
        let img = SignElement::from_indices(&[1, 3]).apply(sq);
        assert_eq!(img, Cell::new(0b0011, 0b0100));
    }

    #[test]
    fn fixed_point_examples() {
        let k = polygon(5);
        assert!(!has_fixed_point(&k, SignElement::from_indices(&[1, 3])));
        assert!(has_fixed_point(&k, SignElement::from_indices(&[2, 3])));
        assert!(has_fixed_point(&k, SignElement::IDENTITY));
        let full = SimplicialComplex::simplex(3).unwrap();
        assert!((1..8).all(|s| has_fixed_point(&full, SignElement(s))));
    }

    #[test]
    fn freeness_examples() {
        let sq = polygon(4);
        let h = Subgroup::generated_by(4, &[SignElement::from_indices(&[1, 3]), SignElement::from_indices(&[2, 4])])
            .unwrap();
        assert!(is_free_subgroup(&sq, &h));
        let pent = polygon(5);
        let h = Subgroup::generated_by(
            5,
            &[
                SignElement::from_indices(&[1, 3]),
                SignElement::from_indices(&[2, 4]),
                SignElement::from_indices(&[1, 4, 5]),
            ],
        )
        .unwrap();
        assert_eq!(h.rank(), 3);
        assert!(is_free_subgroup(&pent, &h));
        let bad = Subgroup::generated_by(5, &[SignElement::from_indices(&[1, 2])]).unwrap();
        assert!(!is_free_subgroup(&pent, &bad));
    }

    #[test]
    fn lemma_generator_lists() {
        let lists = |m| {
            let mut l = lemma_generators(m).unwrap().basis().iter().map(|g| g.indices()).collect::<Vec<_>>();
            l.sort();
            l
        };
        assert_eq!(lists(3), vec![vec![1, 2, 3]]);
        // RREF of {13, 24} is itself
        assert_eq!(lists(4), vec![vec![1, 3], vec![2, 4]]);
        let raw = [[1, 3], [3, 5], [2, 4], [4, 6]];
        let g6 = lemma_generators(6).unwrap();
        assert_eq!(g6.rank(), 4);
        for r in raw {
            assert!(g6.contains(SignElement::from_indices(&r)));
        }
        assert!(lemma_generators(2).is_err());
        for m in 3..=12 {
            let h = lemma_generators(m).unwrap();
            assert_eq!(h.rank(), m - 2);
            assert!(is_free_subgroup(&polygon(m), &h));
        }
    }

    #[test]
    fn orientation_parity_examples() {
        let c4 = CubicalSurface::build(&polygon(4)).unwrap();
        assert_eq!(orientation_sign(&c4, SignElement::from_indices(&[1, 3])).unwrap(), 1);
        assert_eq!(orientation_sign(&c4, SignElement::IDENTITY).unwrap(), 1);
        let c5 = CubicalSurface::build(&polygon(5)).unwrap();
        assert_eq!(orientation_sign(&c5, SignElement::from_indices(&[1, 4, 5])).unwrap(), -1);
        assert_eq!(orientation_sign(&c5, SignElement::psi(2)).unwrap(), -1);
    }

    #[test]
    fn orientation_sign_rejects_non_surface() {
        let k = SimplicialComplex::from_facets(2, &[vec![1, 2]]).unwrap();
        let c = CubicalSurface::build(&k).unwrap();
        assert!(orientation_sign(&c, SignElement::psi(1)).is_err());
    }

    #[test]
    fn free_rank_of_small_complexes() {
        for m in 3..=7 {
            let (rank, witness) = max_free_rank(&polygon(m)).unwrap();
            assert_eq!(rank, m - 2);
            assert_eq!(witness.rank(), m - 2);
            assert!(is_free_subgroup(&polygon(m), &witness));
        }
        let full = SimplicialComplex::simplex(4).unwrap();
        assert_eq!(max_free_rank(&full).unwrap().0, 0);
        let point = SimplicialComplex::from_facets(1, &[vec![1]]).unwrap();
        let (r, w) = max_free_rank(&point).unwrap();
        assert_eq!((r, w.rank()), (0, 0));
        let void = SimplicialComplex::from_facets(3, &[]).unwrap();
        assert_eq!(max_free_rank(&void).unwrap().0, 3);
    }

    #[test]
    fn parallel_search_matches_sequential() {
        for m in 3..=9 {
            assert_eq!(max_free_rank(&polygon(m)).unwrap(), max_free_rank_parallel(&polygon(m)).unwrap());
        }
        let k = SimplicialComplex::from_facets(6, &[vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![5, 6], vec![4, 6]])
            .unwrap();
        assert_eq!(max_free_rank(&k).unwrap(), max_free_rank_parallel(&k).unwrap());
    }

    #[test]
    fn search_cap() {
        let k = SimplicialComplex::polygon_boundary(25).unwrap();
        assert!(matches!(max_free_rank(&k), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn subgroup_text_round_trip() {
        let h = lemma_generators(6).unwrap();
        let back = Subgroup::parse(6, &h.to_string()).unwrap();
        assert_eq!(back, h);
        assert!(Subgroup::parse(3, "1 4\n").is_err());
    }
}
