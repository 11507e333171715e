//! The extremal function `f(g)`: the largest `n` such that `Z_2^n` acts
//! freely on the closed orientable surface of genus `g`.
//!
//! The upper bound comes from writing `χ = 2 - 2g = a·2^n` with `a ≤ 1`
//! and `n ≤ 2 - a`, `n` maximal. For even `a` this is exact. For odd `a`
//! only `n - 1 ≤ f(g) ≤ n` follows directly; [`f_exact`] closes the gap by
//! building a regular cover of the nonorientable surface with Euler
//! characteristic `a` and checking it.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{cover_orientable, CoverComplex, CoverReport, SurfacePresentation};
use crate::gf2::Gf2Matrix;
use crate::lambert::lambert_w;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusDecomposition {
    pub g: u64,
    pub chi: i128,
    /// Euler characteristic of the quotient.
    pub a: i128,
    /// Rank of the deck group.
    pub n: u32,
    pub a_even: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Formula,
    CoverResolver,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FValue {
    pub g: u64,
    pub lower: u32,
    pub upper: u32,
    pub exact: Option<u32>,
    pub method: Method,
    pub resolved: bool,
}

/// Witness that `Z_2^n` acts freely on the genus-`g` surface: a regular
/// cover of the given base with deck group `Z_2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub base: SurfacePresentation,
    pub phi: Gf2Matrix,
    pub cover: CoverReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FExact {
    pub value: FValue,
    pub certificate: Option<Certificate>,
}

/// Limits on the covers the odd-`a` resolver may build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolverBudget {
    /// Largest nonorientable base genus `2 - a`.
    pub max_base_genus: u64,
    /// Largest deck rank `n`, i.e. `2^n` sheets.
    pub max_rank: u32,
    /// Largest `n·(2 - a)` for the exhaustive fallback over all matrices.
    pub max_exhaustive_bits: u64,
}

impl Default for ResolverBudget {
    fn default() -> Self {
        Self {
            max_base_genus: 16,
            max_rank: 16,
            max_exhaustive_bits: 20,
        }
    }
}

/// Decompose `2 - 2g = a·2^n` with `a ≤ 1`, `n ≤ 2 - a`, `n` maximal.
/// For the torus (`χ = 0`) the cap `n ≤ 2` gives `(a, n) = (0, 2)`.
pub fn decompose(g: u64) -> GenusDecomposition {
    let chi = 2 - 2 * g as i128;
    if chi == 0 {
        return GenusDecomposition {
            g,
            chi,
            a: 0,
            n: 2,
            a_even: true,
        };
    }
    let top = chi.trailing_zeros();
    for n in (0..=top).rev() {
        let a = chi >> n;
        if a <= 1 && n as i128 <= 2 - a {
            return GenusDecomposition {
                g,
                chi,
                a,
                n,
                a_even: a % 2 == 0,
            };
        }
    }
    unreachable!("n = 0 is always admissible for g >= 1 and n = 1 for g = 0")
}

pub fn f_bounds(g: u64) -> FValue {
    let d = decompose(g);
    let lower = if d.a_even { d.n } else { d.n - 1 };
    FValue {
        g,
        lower,
        upper: d.n,
        exact: None,
        method: Method::Formula,
        resolved: false,
    }
}

/// Build and check the cover for `phi`; returns the certificate if it is a
/// connected orientable surface of genus `g`.
fn certify(base: &SurfacePresentation, phi: &Gf2Matrix, g: u64) -> Option<Certificate> {
    if !phi.is_surjective() || !cover_orientable(base, phi).ok()? {
        return None;
    }
    let cover = CoverComplex::build(base, phi).ok()?.report().ok()?;
    (cover.components == 1 && cover.orientable && cover.genus == g).then(|| Certificate {
        base: base.clone(),
        phi: phi.clone(),
        cover,
    })
}

/// Exact `f(g)`: the formula value for even `a`, the cover resolver for odd
/// `a`. Outside the budget the bounds are returned with `resolved = false`.
pub fn f_exact(g: u64, budget: &ResolverBudget) -> FExact {
    let d = decompose(g);
    let mut value = f_bounds(g);
    if d.a_even {
        value.exact = Some(d.n);
        value.resolved = true;
        return FExact {
            value,
            certificate: None,
        };
    }
    value.method = Method::CoverResolver;

    let h = (2 - d.a) as u64;
    if h > budget.max_base_genus || d.n > budget.max_rank {
        return FExact {
            value,
            certificate: None,
        };
    }
    let Ok(base) = SurfacePresentation::new(false, h as usize) else {
        return FExact {
            value,
            certificate: None,
        };
    };
    let n = d.n as usize;
    let cols = h as usize;

    // orientation character first, then unit vectors
    let mut rows = vec![base.orientation_character()];
    rows.extend((0..n - 1).map(|j| 1u64 << j));
    let canonical = Gf2Matrix::new(cols, rows).expect("rows fit in h columns");
    let mut found = certify(&base, &canonical, g);
    let mut exhausted = false;
    if found.is_none() && (n as u64) * h <= budget.max_exhaustive_bits {
        found = Gf2Matrix::all(n, cols).find_map(|phi| certify(&base, &phi, g));
        exhausted = true;
    }
    match found {
        Some(cert) => {
            value.exact = Some(d.n);
            value.resolved = true;
            FExact {
                value,
                certificate: Some(cert),
            }
        }
        None if exhausted => {
            value.exact = Some(d.n - 1);
            value.resolved = true;
            FExact {
                value,
                certificate: None,
            }
        }
        None => FExact {
            value,
            certificate: None,
        },
    }
}

/// `g(n) = 1 + 2^(n-1)(n-2)`, the genus of the `(n+2)`-gon surface.
pub fn envelope_genus(n: u32) -> i128 {
    assert!((1..=120).contains(&n), "n out of range");
    1 + (1i128 << (n - 1)) * (n as i128 - 2)
}

/// `Some(n)` iff `g = 1 + 2^(n-1)(n-2)` for an integer `n ≥ 1`.
pub fn equality_rank(g: u64) -> Option<u32> {
    let g = g as i128;
    (1..=120u32)
        .map(|n| (n, envelope_genus(n)))
        .take_while(|&(_, gn)| gn <= g)
        .find(|&(_, gn)| gn == g)
        .map(|(n, _)| n)
}

/// All `(n, g(n))` with `g(n) ≤ max_genus`, starting at the sphere `(1, 0)`.
pub fn equality_genera(max_genus: u64) -> Vec<(u32, u64)> {
    (1..=120u32)
        .map(|n| (n, envelope_genus(n)))
        .take_while(|&(_, gn)| gn <= max_genus as i128)
        .map(|(n, gn)| (n, gn as u64))
        .collect()
}

/// [`equality_genera`] with the degenerate sphere point `(1, 0)` optional.
pub fn equality_genera_with(max_genus: u64, include_sphere: bool) -> Vec<(u32, u64)> {
    equality_genera(max_genus)
        .into_iter()
        .filter(|&(n, _)| include_sphere || n != 1)
        .collect()
}

/// `H(x) = W((x - 1)·ln2 / 2) / ln2 + 2` for real `x ≥ 0`.
pub fn envelope_real(x: f64) -> f64 {
    let w = lambert_w(0.5 * (x - 1.0) * LN_2).expect("argument >= -ln2/2 > -1/e");
    w / LN_2 + 2.0
}

/// `H(g)`, exact when `g` is an equality genus.
pub fn envelope(g: u64) -> f64 {
    match equality_rank(g) {
        Some(n) => n as f64,
        None => envelope_real(g as f64),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub g: u64,
    pub f_lower: u32,
    pub f_upper: u32,
    pub f_exact: Option<u32>,
    #[serde(rename = "H")]
    pub h: f64,
    pub equality: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct FigureOptions {
    pub budget: ResolverBudget,
    /// Count the sphere `(n, g) = (1, 0)` as an equality point.
    pub include_sphere: bool,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            budget: ResolverBudget::default(),
            include_sphere: true,
        }
    }
}

/// One row per genus `0..=g_max`, in ascending order.
pub fn figure1_data(g_max: u64, opts: &FigureOptions) -> Vec<FigureRow> {
    (0..=g_max)
        .into_par_iter()
        .map(|g| {
            let f = f_exact(g, &opts.budget).value;
            let equality = match equality_rank(g) {
                Some(1) => opts.include_sphere,
                Some(_) => true,
                None => false,
            };
            FigureRow {
                g,
                f_lower: f.lower,
                f_upper: f.upper,
                f_exact: f.exact,
                h: envelope(g),
                equality,
            }
        })
        .collect()
}

/// CSV with header `g,f_lower,f_upper,f_exact,H,equality`; an unresolved
/// exact value is an empty field.
pub fn figure_csv(rows: &[FigureRow]) -> String {
    let mut out = String::from("g,f_lower,f_upper,f_exact,H,equality\n");
    for r in rows {
        let exact = r.f_exact.map(|e| e.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{:.9},{}",
            r.g, r.f_lower, r.f_upper, exact, r.h, r.equality
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decomposition_examples() {
        let d = decompose(17);
        assert_eq!((d.a, d.n, d.a_even), (-2, 4, true));
        let d = decompose(5);
        assert_eq!((d.a, d.n, d.a_even), (-1, 3, false));
        let d = decompose(0);
        assert_eq!((d.a, d.n), (1, 1));
        let d = decompose(1);
        assert_eq!((d.chi, d.a, d.n), (0, 0, 2));
        let d = decompose(4);
        assert_eq!((d.chi, d.a, d.n), (-6, -3, 1));
        let d = decompose(9);
        assert_eq!((d.a, d.n), (-2, 3));
    }

    #[test]
    fn bounds_examples() {
        let v = |g| {
            let f = f_bounds(g);
            (f.lower, f.upper)
        };
        assert_eq!(v(17), (4, 4));
        assert_eq!(v(2), (0, 1));
        assert_eq!(v(1), (2, 2));
        assert_eq!(v(4), (0, 1));
    }

    #[test]
    fn resolver_examples() {
        let b = ResolverBudget::default();
        let f2 = f_exact(2, &b);
        assert_eq!(f2.value.exact, Some(1));
        let cert = f2.certificate.unwrap();
        assert_eq!((cert.cover.chi, cert.cover.genus, cert.cover.orientable), (-2, 2, true));
        assert_eq!(cert.base.genus(), 3);
        assert_eq!(f_exact(5, &b).value.exact, Some(3));
        let f0 = f_exact(0, &b);
        assert_eq!(f0.value.exact, Some(1));
        assert_eq!(f0.certificate.unwrap().cover.chi, 2);
        assert_eq!(f_exact(3, &b).value.exact, Some(2));
        let f17 = f_exact(17, &b);
        assert_eq!((f17.value.exact, f17.value.method), (Some(4), Method::Formula));
    }

    #[test]
    fn resolver_budget() {
        // g = 200: chi = -398 = -199·2, base genus 201
        let f = f_exact(200, &ResolverBudget::default());
        assert!(!f.value.resolved);
        assert_eq!(f.value.exact, None);
        assert_eq!((f.value.lower, f.value.upper), (0, 1));
        // g = 30: chi = -58 = -29·2, base genus 31
        assert!(!f_exact(30, &ResolverBudget::default()).value.resolved);
        let wide = ResolverBudget {
            max_base_genus: 40,
            ..Default::default()
        };
        let f = f_exact(30, &wide);
        assert_eq!(f.value.exact, Some(1));
        assert_eq!(f.certificate.unwrap().cover.genus, 30);
    }

    #[test]
    fn equality_examples() {
        assert_eq!(equality_genera(17), vec![(1, 0), (2, 1), (3, 5), (4, 17)]);
        assert_eq!(equality_genera(0), vec![(1, 0)]);
        assert!(equality_genera(129).contains(&(6, 129)));
        assert_eq!(equality_genera_with(17, false), vec![(2, 1), (3, 5), (4, 17)]);
        assert_eq!(equality_rank(49), Some(5));
        assert_eq!(equality_rank(50), None);
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(envelope(1), 2.0);
        assert_eq!(envelope(5), 3.0);
        assert!((envelope_real(5.0) - 3.0).abs() < 1e-9);
        assert!((envelope_real(17.0) - 4.0).abs() < 1e-9);
        assert!((envelope_real(0.0) - 1.0).abs() < 1e-9);
        // bisection on g(x) = 9 over [2, 5]
        let (mut lo, mut hi) = (2.0f64, 5.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if 1.0 + 2f64.powf(mid - 1.0) * (mid - 2.0) < 9.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((envelope(9) - lo).abs() < 1e-9);
        assert!((envelope(9) - 3.456_999_559_134_59).abs() < 1e-9);
    }

    #[test]
    fn figure_rows() {
        let rows = figure1_data(17, &FigureOptions::default());
        assert_eq!(rows.len(), 18);
        let eq: Vec<u64> = rows.iter().filter(|r| r.equality).map(|r| r.g).collect();
        assert_eq!(eq, vec![0, 1, 5, 17]);
        assert_eq!(rows[4].f_exact, Some(1));
        let csv = figure_csv(&figure1_data(0, &FigureOptions::default()));
        assert_eq!(csv, "g,f_lower,f_upper,f_exact,H,equality\n0,0,1,1,1.000000000,true\n");
        let no_sphere = FigureOptions {
            include_sphere: false,
            ..Default::default()
        };
        assert!(!figure1_data(0, &no_sphere)[0].equality);
    }

    #[test]
    fn unresolved_csv_field_is_empty() {
        let row = FigureRow {
            g: 200,
            f_lower: 0,
            f_upper: 1,
            f_exact: None,
            h: 5.0,
            equality: false,
        };
        assert_eq!(figure_csv(&[row]).lines().nth(1), Some("200,0,1,,5.000000000,false"));
    }
}
