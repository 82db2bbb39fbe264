use std::str::FromStr;

use num_bigint::BigInt;
use proptest::prelude::*;
use slanted_rain::cert_json::{parse_files, simplex_from_vertices, to_json, CertificateFile, ShapeError};
use slanted_rain::files::FsLoader;
use slanted_rain::known::{bundled, parse_table, render_table};
use slanted_rain_core::coloring::hash_color;
use slanted_rain_core::vdw::{eval_expr_detailed, sr_expr, Trust, VdwKey};
use slanted_rain_core::{
    find_unit_simplex, find_unit_triangle, verify_certificate, Certificate, Coloring, ColoringSpec, Point, Rational,
    SearchBudget, StandardSimplex,
};

fn round_trip(certs: &[Certificate]) -> Vec<Certificate> {
    parse_files(&to_json(certs))
        .unwrap()
        .iter()
        .map(|f| {
            let (spec, target, trace) = f.parts(&FsLoader::default()).unwrap();
            let simplex = simplex_from_vertices(&f.points().unwrap()).unwrap();
            Certificate { simplex, color: f.color, spec, target, trace }
        })
        .collect()
}

#[test]
fn found_certificates_round_trip() {
    let budget = SearchBudget::default();
    let a = find_unit_triangle(&ColoringSpec::seeded_hash(3, 11).unwrap(), &budget).unwrap();
    let b = find_unit_simplex(&ColoringSpec::seeded_hash(2, 12).unwrap(), 3, &budget).unwrap();
    assert_eq!(round_trip(std::slice::from_ref(&a)), vec![a.clone()]);
    assert_eq!(round_trip(&[a.clone(), b.clone()]), vec![a, b]);
}

#[test]
fn single_certificate_is_an_object() {
    let c = find_unit_triangle(&ColoringSpec::constant(1, 0).unwrap(), &SearchBudget::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&to_json(std::slice::from_ref(&c))).unwrap();
    assert_eq!(v["schema"], "slanted-rain-certificate");
    assert_eq!(v["version"], 1);
    let v: serde_json::Value = serde_json::from_str(&to_json(&[c.clone(), c])).unwrap();
    assert!(v.is_array());
}

#[test]
fn shape_errors() {
    let p = |s: &str| Point::from_str(s).unwrap();
    assert_eq!(
        simplex_from_vertices(&[p("(0,0)"), p("(1,0)")]),
        Err(ShapeError::VertexCount { expected: 3, found: 2 })
    );
    assert_eq!(
        simplex_from_vertices(&[p("(0,0)"), p("(1,1)"), p("(0,1)")]),
        Err(ShapeError::NotAxisAligned { vertex: 1, axis: 0 })
    );
    assert_eq!(
        simplex_from_vertices(&[p("(0,0)"), p("(1,0)"), p("(0,-1)")]),
        Err(ShapeError::NonPositiveEdge { axis: 1 })
    );
    assert_eq!(
        simplex_from_vertices(&[p("(0,0)"), p("(1,0,0)"), p("(0,1)")]),
        Err(ShapeError::Dimension { vertex: 1, expected: 2, found: 3 })
    );
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i128>(), any::<i128>(), 1u128.., 1u64..).prop_map(|(a, b, c, d)| {
        let n = BigInt::from(a) * BigInt::from(b);
        let d = BigInt::from(c) * BigInt::from(d);
        Rational::from(n) / Rational::from(d)
    })
}

proptest! {
    #[test]
    fn arbitrary_size_rationals_round_trip(origin in prop::collection::vec(big_rational(), 2..5), seed in any::<u64>()) {
        let n = origin.len();
        let edges: Vec<Rational> = (1..=n as i64).map(Rational::integer).collect();
        let simplex = StandardSimplex::new(Point::new(origin).unwrap(), edges).unwrap();
        let target = simplex.edge_product();
        let spec = ColoringSpec::seeded_hash(5, seed).unwrap();
        let color = spec.color_at(simplex.origin()).unwrap();
        let cert = Certificate { simplex, color, spec, target, trace: Vec::new() };
        let back = round_trip(std::slice::from_ref(&cert));
        prop_assert_eq!(&back[0], &cert);
        // Whether it verifies is the colouring's business; the file must not change the answer.
        prop_assert_eq!(verify_certificate(&back[0]).is_ok(), verify_certificate(&cert).is_ok());
    }
}

#[test]
fn file_struct_serialises_canonically() {
    let c = find_unit_triangle(&ColoringSpec::seeded_hash(2, 5).unwrap(), &SearchBudget::default()).unwrap();
    let f = CertificateFile::from_certificate(&c);
    let text = serde_json::to_string(&f).unwrap();
    let again: CertificateFile = serde_json::from_str(&text).unwrap();
    assert_eq!(again, f);
}

#[test]
fn seeded_hash_golden() {
    let text = include_str!("golden/seeded_hash.txt");
    let mut rows = 0;
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let fields: Vec<&str> = line.split(' ').collect();
        let point = Point::from_str(fields[0]).unwrap();
        let seed = u64::from_str_radix(fields[1].trim_start_matches("0x"), 16).unwrap();
        let colors: u32 = fields[2].parse().unwrap();
        let expected: u32 = fields[3].parse().unwrap();
        assert_eq!(hash_color(&point, seed, colors), expected, "{line}");
        let spec = ColoringSpec::seeded_hash(colors, seed).unwrap();
        assert_eq!(spec.color_at(&point).unwrap(), expected);
        rows += 1;
    }
    assert_eq!(rows, 100);
}

#[test]
fn bundled_table() {
    let table = bundled();
    assert_eq!(eval_expr_detailed(&sr_expr(2), &table).unwrap(), 178u32.into());
    let entry = table.get(&VdwKey::Ap { colors: 2, length: 4u32.into() }).unwrap();
    assert_eq!(entry.trust, Trust::Verified);
    assert_eq!(parse_table(&render_table(&table)).unwrap(), table);
}

#[test]
fn table_errors_name_the_line() {
    let err = parse_table("# header\n2 3 9 verified\n2 4 x verified\n").unwrap_err();
    assert_eq!(err.line, 3);
    assert!(parse_table("2 3 9 trusted\n").is_err());
    let grid = parse_table("2 2^2 5 external\n").unwrap();
    assert!(grid.get(&VdwKey::Grid { colors: 2, dim: 2, side: 2u32.into() }).is_some());
}
