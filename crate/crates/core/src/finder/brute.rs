use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::certificate::{Certificate, RainRecord};
use crate::coloring::{Coloring, ColoringSpec};
use crate::error::Error;
use crate::rain::DEFAULT_POINT_LIMIT;
use crate::rational::Rational;
use crate::simplex::StandardSimplex;

/// Every monochromatic edge-product-1 standard simplex whose vertices all lie
/// in the rain, by enumerating the rain's points. Sorted by origin, then
/// edges. Fails if the rain has more than the default point limit.
pub fn brute_force_unit_simplices(rain: &RainRecord, spec: &ColoringSpec) -> Result<Vec<Certificate>, Error> {
    brute_force_with_limit(rain, spec, DEFAULT_POINT_LIMIT)
}

pub fn brute_force_with_limit(rain: &RainRecord, spec: &ColoringSpec, limit: u128) -> Result<Vec<Certificate>, Error> {
    let points = rain.enumerate_points(limit)?;
    let dim = rain.dim();
    let mut colors = BTreeMap::new();
    for p in &points {
        colors.insert(p.clone(), spec.color_at(p)?);
    }
    // For each axis, the points grouped by their other coordinates.
    let lines: Vec<BTreeMap<Vec<Rational>, Vec<Rational>>> = (0..dim)
        .map(|axis| {
            let mut m: BTreeMap<Vec<Rational>, Vec<Rational>> = BTreeMap::new();
            for p in &points {
                let mut key = p.coords().to_vec();
                let x = key.remove(axis);
                m.entry(key).or_default().push(x);
            }
            m
        })
        .collect();

    let mut out = Vec::new();
    for origin in colors.keys() {
        let color = colors[origin];
        // Edge choices per axis that land on a same-coloured rain point.
        let mut choices: Vec<Vec<Rational>> = Vec::with_capacity(dim);
        for (axis, m) in lines.iter().enumerate() {
            let mut key = origin.coords().to_vec();
            let x0 = key.remove(axis);
            let mut edges: Vec<Rational> = m
                .get(&key)
                .into_iter()
                .flatten()
                .filter(|x| **x > x0)
                .filter(|x| colors[&origin.shifted(axis, &(*x - &x0))] == color)
                .map(|x| x - &x0)
                .collect();
            edges.sort();
            choices.push(edges);
        }
        let mut current = Vec::with_capacity(dim);
        collect_products(&choices, &mut current, &Rational::one(), &mut |edges| {
            let simplex = StandardSimplex::new(origin.clone(), edges.to_vec()).expect("positive edges");
            out.push(Certificate {
                simplex,
                color,
                spec: spec.clone(),
                target: Rational::one(),
                trace: Vec::new(),
            });
        });
    }
    Ok(out)
}

/// Calls `emit` for every choice of one edge per axis whose product is 1.
/// `rest` is the product still needed from the remaining axes.
fn collect_products(
    choices: &[Vec<Rational>],
    current: &mut Vec<Rational>,
    rest: &Rational,
    emit: &mut dyn FnMut(&[Rational]),
) {
    let axis = current.len();
    if axis == choices.len() {
        if rest == &Rational::one() {
            emit(current);
        }
        return;
    }
    if axis + 1 == choices.len() {
        if choices[axis].binary_search(rest).is_ok() {
            current.push(rest.clone());
            emit(current);
            current.pop();
        }
        return;
    }
    for e in &choices[axis] {
        current.push(e.clone());
        collect_products(choices, current, &(rest / e), emit);
        current.pop();
    }
}

