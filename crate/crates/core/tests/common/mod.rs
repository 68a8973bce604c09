//! Oracles computed straight from tuples, independent of the library's tables.
#![allow(dead_code)]

use relcyl::setalg::{abstract_unit, SetClass, Unit};
use relcyl::{Dimension, Element, FiniteBao};

pub type Tuple = Vec<usize>;

pub fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

pub fn square(n: usize, class: SetClass) -> (Unit, FiniteBao) {
    let v = Unit::full(dim(n), 2).unwrap();
    let a = abstract_unit(&v, class).unwrap();
    (v, a)
}

pub fn agree_off(x: &[usize], y: &[usize], i: usize) -> bool {
    x.iter().zip(y).enumerate().all(|(k, (p, q))| k == i || p == q)
}

/// `[i|j]|y`: coordinate `i` takes the value of coordinate `j`.
pub fn sub_act(y: &[usize], i: usize, j: usize) -> Tuple {
    let mut t = y.to_vec();
    t[i] = y[j];
    t
}

pub fn swap_act(y: &[usize], i: usize, j: usize) -> Tuple {
    let mut t = y.to_vec();
    t.swap(i, j);
    t
}

/// `C_i(D_ij ∩ V) = V` for all `i ≠ j`, from the definitions.
pub fn oracle_is_d(v: &[Tuple], n: usize) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| {
            i == j
                || v.iter()
                    .all(|y| v.iter().any(|z| z[i] == z[j] && agree_off(y, z, i)))
        })
    })
}

/// Closure under every map `n → n`.
pub fn oracle_closed(v: &[Tuple], n: usize) -> bool {
    let maps = all_maps(n);
    v.iter().all(|y| maps.iter().all(|m| v.contains(&m.iter().map(|&k| y[k]).collect())))
}

pub fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (0..n).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .collect();
    }
    out
}

/// Every non-empty subset of `ⁿbase`, as sorted tuple lists in bitmask order.
pub fn subsets(n: usize, base: usize) -> Vec<Vec<Tuple>> {
    let full: Vec<Tuple> = all_tuples(n, base);
    (1u64..(1 << full.len()))
        .map(|mask| (0..full.len()).filter(|k| mask >> k & 1 == 1).map(|k| full[k].clone()).collect())
        .collect()
}

pub fn all_tuples(n: usize, base: usize) -> Vec<Tuple> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Tuple| {
                (0..base).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// The atom of `v` holding tuple `t`.
pub fn atom(v: &Unit, t: &[usize]) -> Element {
    Element::singleton(v.index_of(t).expect("tuple in unit"))
}

pub fn tuple_of(v: &Unit, a: Element) -> Tuple {
    v.tuples()[a.as_atom().expect("atom")].clone()
}
