mod common;

use involab::action::{self, SignElement};
use involab::cover::{self, CoverComplex, SurfacePresentation};
use involab::fgenus;
use involab::gf2::Gf2Matrix;
use involab::rzk::{self, Cell, CubicalSurface};
use involab::SimplicialComplex;
use proptest::prelude::*;

fn facets(m: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    proptest::collection::vec(proptest::collection::btree_set(1..=m, 0..=3), 0..6)
        .prop_map(|fs| fs.into_iter().map(|s| s.into_iter().collect()).collect())
}

proptest! {
    #[test]
    fn closure_is_downward_closed(fs in facets(7)) {
        let k = SimplicialComplex::from_facets(7, &fs).unwrap();
        prop_assert!(k.is_downward_closed());
        prop_assert!(k.is_face(&[]));
        for f in &fs {
            prop_assert!(k.is_face(f));
        }
        // exhaustive subset test against the stored family
        for s in 0u64..1 << 7 {
            let listed = k.faces().contains(&s);
            prop_assert_eq!(listed, k.contains_mask(s));
        }
    }

    #[test]
    fn built_chi_matches_closed_form(fs in facets(6)) {
        let k = SimplicialComplex::from_facets(6, &fs).unwrap();
        let c = CubicalSurface::build(&k).unwrap();
        prop_assert_eq!(c.chi() as i128, rzk::euler_characteristic(&k));
        prop_assert_eq!(c.num_vertices(), 64);
    }

    #[test]
    fn fixed_point_criterion_matches_cell_scan(fs in facets(5), g in 1u64..32) {
        let k = SimplicialComplex::from_facets(5, &fs).unwrap();
        let c = CubicalSurface::build(&k).unwrap();
        prop_assert_eq!(action::has_fixed_point(&k, SignElement(g)), common::brute_force_fixed(&c, g));
    }

    #[test]
    fn action_is_an_involution(g in 0u64..256, h in 0u64..256, free in 0u64..256, signs in 0u64..256) {
        let cell = Cell::new(free, signs);
        let (g, h) = (SignElement(g), SignElement(h));
        prop_assert_eq!(g.apply(g.apply(cell)), cell);
        prop_assert_eq!(g.apply(h.apply(cell)), (g * h).apply(cell));
        prop_assert_eq!(g.apply(cell).free, cell.free);
    }

    #[test]
    fn cover_chi_is_multiplicative(orientable in any::<bool>(), genus in 1usize..4, n in 0usize..4, seed in any::<u64>()) {
        let b = SurfacePresentation::new(orientable, genus).unwrap();
        let d = b.generators();
        let mask = (1u64 << d) - 1;
        let rows = (0..n).map(|r| seed.rotate_left(13 * r as u32) & mask).collect();
        let phi = Gf2Matrix::new(d, rows).unwrap();
        let c = CoverComplex::build(&b, &phi).unwrap();
        prop_assert_eq!(c.chi(), (1i64 << n) * b.chi());
        prop_assert_eq!(c.components(), 1usize << (n - phi.rank()));
        let r = c.report().unwrap();
        prop_assert_eq!(r.orientable, cover::cover_orientable(&b, &phi).unwrap());
    }
}

#[test]
fn decomposition_up_to_ten_thousand() {
    for g in 0..=10_000u64 {
        let d = fgenus::decompose(g);
        assert_eq!(d.a * (1i128 << d.n), 2 - 2 * g as i128);
        assert!(common::g_of_n(d.n) <= g as i128);
        assert_eq!(fgenus::equality_rank(g).is_some(), common::g_of_n(d.n) == g as i128);
        let f = fgenus::f_bounds(g);
        assert!(f.upper - f.lower <= 1);
        assert!(f.upper as f64 <= fgenus::envelope(g) + 1e-9);
    }
}

#[test]
fn lambert_relative_residual_on_grid() {
    let lo = -std::f64::consts::LN_2 / 2.0;
    for i in 0..1000 {
        let x = lo + 10f64.powf(-6.0 + 12.0 * i as f64 / 999.0);
        let w = involab::lambert::lambert_w(x).unwrap();
        assert!((w * w.exp() - x).abs() <= 1e-12 * x.abs().max(1.0), "x = {x}");
    }
}

#[test]
fn non_polygon_surfaces() {
    // two disjoint triangles: every vertex of K is a face, so the whole cube
    // 1-skeleton is present, but each vertex link is two triangles
    let k = SimplicialComplex::from_facets(6, &[vec![1, 2], vec![2, 3], vec![1, 3], vec![4, 5], vec![5, 6], vec![4, 6]])
        .unwrap();
    let c = CubicalSurface::build(&k).unwrap();
    let rep = c.verify_closed_surface().unwrap();
    assert!(!rep.vertex_links_are_cycles);
    assert!(rep.edges_in_two_squares);
    assert!(!rep.closed_surface);
    // brute-force component count over edges
    let mut seen = vec![false; c.num_vertices()];
    let mut comps = 0;
    for s in 0..c.num_vertices() {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for e in 0..c.num_edges() {
                let b = c.boundary(1, e);
                let (a, z) = (b[0].0, b[1].0);
                for (p, q) in [(a, z), (z, a)] {
                    if p == v && !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
    }
    assert_eq!(comps, c.components());
    assert_eq!(comps, 1);
    assert!(rep.connected);

    // a complex missing a vertex does disconnect: K = {∅, {1}} on m = 2
    let k = SimplicialComplex::from_facets(2, &[vec![1]]).unwrap();
    let c = CubicalSurface::build(&k).unwrap();
    assert_eq!(c.components(), 2);
    assert!(!c.verify_closed_surface().unwrap().connected);
}
