use proptest::prelude::*;
use slanted_rain_core::vdw::{
    eval_expr, mono_aps, mono_cubes, sr_expr, sr_n_expr, vdw_number, ColoredCube, KnownValues, Trust, VdwBudget,
};
use slanted_rain_core::{find_mono_ap, find_mono_cube};

/// Every monochromatic `n`-AP as `(start, step)`, by scanning all pairs.
fn brute_aps(colors: &[u32], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for start in 0..colors.len() {
        for step in 1..colors.len().max(1) {
            let last = start + (n - 1) * step;
            if last >= colors.len() {
                break;
            }
            if (0..n).all(|i| colors[start + i * step] == colors[start]) {
                out.push((start, step));
            }
        }
    }
    out
}

fn coloring(max_len: usize, h: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..h, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ap_search_matches_brute_force(colors in coloring(30, 3), n in 2usize..6) {
        let found: Vec<(usize, usize)> = mono_aps(&colors, n).map(|w| (w.start, w.step)).collect();
        prop_assert_eq!(&found, &brute_aps(&colors, n));
        let first = find_mono_ap(&colors, n);
        prop_assert_eq!(first.is_some(), !found.is_empty());
        if let Some(w) = first {
            prop_assert!(w.holds_in(&colors));
            prop_assert_eq!((w.start, w.step), found[0]);
        }
    }

    #[test]
    fn one_dimensional_cubes_agree(colors in coloring(30, 2), n in 2usize..6) {
        prop_assume!(!colors.is_empty());
        let cube = ColoredCube::new(1, colors.len(), colors.clone()).unwrap();
        let from_cube = find_mono_cube(&cube, n).map(|w| (w.origin[0], w.scale, w.color));
        let from_ap = find_mono_ap(&colors, n).map(|w| (w.start, w.step, w.color));
        prop_assert_eq!(from_cube, from_ap);
    }

    #[test]
    fn cube_witnesses_hold(colors in prop::collection::vec(0u32..2, 36), n in 2usize..4) {
        let cube = ColoredCube::new(2, 6, colors).unwrap();
        for w in mono_cubes(&cube, n) {
            prop_assert!(w.holds_in(&cube));
        }
        // Presence agrees with a scan over all corners and scales.
        let brute = (0..6).any(|x| (0..6).any(|y| (1..6).any(|s| {
            x + (n - 1) * s < 6 && y + (n - 1) * s < 6
                && (0..n).all(|i| (0..n).all(|j| cube.get(&[x + i * s, y + j * s]) == cube.get(&[x, y])))
        })));
        prop_assert_eq!(find_mono_cube(&cube, n).is_some(), brute);
    }
}

#[test]
fn small_vdw_numbers_and_monotonicity() {
    let budget = VdwBudget::default();
    let mut table = std::collections::BTreeMap::new();
    for (h, n) in [(1, 3), (1, 4), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
        let out = vdw_number(h, n, &budget).unwrap();
        let slanted_rain_core::vdw::VdwOutcome::Exact { value, extremal, .. } = out else {
            panic!("vdW({h},{n}) not exact: {out:?}")
        };
        assert_eq!(extremal.len(), value - 1);
        assert!(find_mono_ap(&extremal, n).is_none());
        assert!(extremal.iter().all(|&c| c < h));
        table.insert((h, n), value);
    }
    assert_eq!(table[&(2, 3)], 9);
    assert_eq!(table[&(3, 3)], 27);
    assert_eq!(table[&(2, 4)], 35);
    for (&(h, n), &v) in &table {
        if let Some(&w) = table.get(&(h, n + 1)) {
            assert!(v <= w);
        }
        if let Some(&w) = table.get(&(h + 1, n)) {
            assert!(v <= w);
        }
    }
}

#[test]
fn sr_expressions() {
    assert_eq!(sr_expr(1).to_string(), "2");
    assert_eq!(sr_expr(2).to_string(), "vdW_2(5)");
    assert_eq!(sr_expr(3).to_string(), "vdW_3(f(vdW_2(5)))");
    assert_eq!(sr_n_expr(2, 3).normalize(), sr_expr(3));
    let mut table = KnownValues::new();
    assert_eq!(eval_expr(&sr_expr(1), &table), Some(2u32.into()));
    assert_eq!(eval_expr(&sr_expr(2), &table), None);
    table.insert_ap(2, 5, 178, Trust::External);
    assert_eq!(eval_expr(&sr_expr(2), &table), Some(178u32.into()));
    assert_eq!(eval_expr(&sr_expr(3), &table), None);
}
