//! Relativized set algebras over explicit units of tuples.
//!
//! Subsets of a unit are [`Element`]s indexed by the unit's tuples in
//! lexicographic order, which is also the atom order of [`abstract_unit`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bao::{BaoParts, Dimension, Element, FiniteBao, Op, Signature};
use crate::config::{Limits, ATOM_CAPACITY};
use crate::error::{Error, Result};
use crate::transform::{FiniteTransformation, Generator};

pub type Tuple = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    dim: Dimension,
    base: usize,
    tuples: Vec<Tuple>,
}

#[derive(Serialize, Deserialize)]
struct UnitFile {
    dimension: usize,
    base: usize,
    tuples: Vec<Tuple>,
}

impl Unit {
    /// Sorts and deduplicates `tuples`; every coordinate must be below `base`.
    pub fn new(dim: Dimension, base: usize, mut tuples: Vec<Tuple>) -> Result<Self> {
        let n = dim.get();
        for t in &tuples {
            if t.len() != n {
                return Err(Error::Format(format!("tuple {t:?} does not have length {n}")));
            }
            if let Some(&v) = t.iter().find(|&&v| v >= base) {
                return Err(Error::Format(format!("tuple {t:?} uses {v} ≥ base {base}")));
            }
        }
        tuples.sort();
        tuples.dedup();
        if tuples.len() > ATOM_CAPACITY {
            return Err(Error::Format(format!(
                "{} tuples exceed the capacity of {ATOM_CAPACITY}",
                tuples.len()
            )));
        }
        Ok(Unit { dim, base, tuples })
    }

    /// The full cartesian power `ⁿbase`.
    pub fn full(dim: Dimension, base: usize) -> Result<Self> {
        let n = dim.get();
        let count = base.pow(n as u32);
        let tuples = (0..count)
            .map(|mut code| {
                let mut t = vec![0; n];
                for k in (0..n).rev() {
                    t[k] = code % base;
                    code /= base;
                }
                t
            })
            .collect();
        Unit::new(dim, base, tuples)
    }

    /// Every non-empty sub-unit of `ⁿbase`, in ascending bitmask order.
    pub fn all_subunits(dim: Dimension, base: usize) -> Result<Vec<Unit>> {
        let full = Unit::full(dim, base)?;
        if full.len() > 20 {
            return Err(Error::Budget(format!("2^{} sub-units", full.len())));
        }
        Ok((1u64..1 << full.len())
            .map(|mask| full.restrict(Element::from_bits(mask)))
            .collect())
    }

    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let f: UnitFile = serde_json::from_str(text)?;
        Unit::new(Dimension::with_limits(f.dimension, limits)?, f.base, f.tuples)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&UnitFile {
            dimension: self.dim.get(),
            base: self.base,
            tuples: self.tuples.clone(),
        })
        .expect("unit serializes")
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim.get()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.tuples.binary_search_by(|u| u.as_slice().cmp(t)).ok()
    }

    pub fn all(&self) -> Element {
        Element::full(self.len())
    }

    /// The sub-unit made of the tuples in `x`.
    pub fn restrict(&self, x: Element) -> Unit {
        Unit {
            dim: self.dim,
            base: self.base,
            tuples: x.atoms().map(|a| self.tuples[a].clone()).collect(),
        }
    }

    /// The first tuple `y` (in unit order) with `τ|y` outside the unit.
    pub fn escaping(&self, tau: &FiniteTransformation) -> Option<(Tuple, Tuple)> {
        self.tuples.iter().find_map(|y| {
            let image = tau.act(y);
            self.index_of(&image).is_none().then(|| (y.clone(), image))
        })
    }

    fn generators(&self, swaps: bool) -> impl Iterator<Item = Generator> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| {
            (0..n).filter(move |&j| i != j).flat_map(move |j| {
                let mut gs = vec![Generator::Sub(i, j)];
                if swaps && i < j {
                    gs.push(Generator::Swap(i, j));
                }
                gs
            })
        })
    }

    pub(crate) fn check_closed(&self, swaps: bool) -> Result<()> {
        for g in self.generators(swaps) {
            if let Some((y, image)) = self.escaping(&g.transformation(self.n())) {
                return Err(Error::Closure(format!(
                    "{g}|{y:?} = {image:?} is not in the unit"
                )));
            }
        }
        Ok(())
    }

    fn map_index(&self, tau: &FiniteTransformation, a: usize) -> Option<usize> {
        self.index_of(&tau.act(&self.tuples[a]))
    }

    /// `C_i X = {y ∈ V : y^i_u ∈ X for some u}`.
    pub fn cyl(&self, i: usize, x: Element) -> Element {
        Element::from_atoms((0..self.len()).filter(|&a| {
            let y = &self.tuples[a];
            x.atoms().any(|b| {
                let z = &self.tuples[b];
                (0..self.n()).all(|k| k == i || y[k] == z[k])
            })
        }))
    }

    /// `D_ij = {y ∈ V : y_i = y_j}`.
    pub fn diag(&self, i: usize, j: usize) -> Element {
        Element::from_atoms((0..self.len()).filter(|&a| self.tuples[a][i] == self.tuples[a][j]))
    }

    /// `{τ|y : y ∈ X} ∩ V`, and whether the intersection removed anything.
    pub fn image(&self, tau: &FiniteTransformation, x: Element) -> (Element, bool) {
        let mut escaped = false;
        let mut out = Element::EMPTY;
        for a in x.atoms() {
            match self.map_index(tau, a) {
                Some(b) => out = out | Element::singleton(b),
                None => escaped = true,
            }
        }
        (out, escaped)
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, t) in self.tuples.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (m, v) in t.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

/// Concrete classes, named by the operators their algebras carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetClass {
    /// Cylindrifications and diagonals.
    Crs,
    /// Cylindrifications only.
    Drs,
    /// Cylindrifications, substitutions and transpositions.
    Prs,
    /// All four operator families.
    Pers,
    /// Cylindrifications and substitutions.
    Srs,
}

impl SetClass {
    pub fn signature(self) -> Signature {
        match self {
            SetClass::Crs => Signature::pta(),
            SetClass::Drs => Signature::diagonal_free(),
            SetClass::Prs => Signature::ta(),
            SetClass::Pers => Signature::tea(),
            SetClass::Srs => Signature::sa(),
        }
    }
}

impl FromStr for SetClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "crs" => Ok(SetClass::Crs),
            "drs" => Ok(SetClass::Drs),
            "prs" => Ok(SetClass::Prs),
            "pers" => Ok(SetClass::Pers),
            "srs" => Ok(SetClass::Srs),
            _ => Err(Error::Format(format!("unknown set-algebra class {s:?}"))),
        }
    }
}

/// A full powerset algebra over a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetAlgebra {
    pub unit: Unit,
    pub class: SetClass,
}

/// Evaluates an operator definitionally on subsets of the unit.
pub fn setalg_op(s: &SetAlgebra, op: Op, args: &[Element]) -> Result<Element> {
    let unit = &s.unit;
    let sig = s.class.signature();
    let dim = unit.dim();
    let idx = |i: usize| dim.check(i);
    let all = unit.all();
    if let Some(bad) = args.iter().find(|x| !x.is_subset(all)) {
        return Err(Error::Format(format!("{bad} is not a subset of the unit")));
    }
    let arg = |k: usize| {
        args.get(k)
            .copied()
            .ok_or_else(|| Error::Format(format!("{op} is missing argument {k}")))
    };
    match op {
        Op::C(i) => {
            idx(i)?;
            Ok(unit.cyl(i, arg(0)?))
        }
        Op::Diag(i, j) => {
            idx(i)?;
            idx(j)?;
            if !sig.has_d {
                return Err(Error::MissingOperator(format!("D_{i}{j}")));
            }
            Ok(unit.diag(i, j))
        }
        Op::Sub(i, j) => {
            idx(i)?;
            idx(j)?;
            if !sig.has_sub && !sig.has_d {
                return Err(Error::MissingOperator(format!("S^{i}_{j}")));
            }
            let x = arg(0)?;
            Ok(if i == j { x } else { unit.cyl(i, unit.diag(i, j) & x) })
        }
        Op::Swap(i, j) => {
            idx(i)?;
            idx(j)?;
            if !sig.has_swap {
                return Err(Error::MissingOperator(format!("S_{i}{j}")));
            }
            Ok(unit.image(&FiniteTransformation::swap(unit.n(), i, j), arg(0)?).0)
        }
        Op::Join => Ok(arg(0)? | arg(1)?),
        Op::Meet => Ok(arg(0)? & arg(1)?),
        Op::Complement => Ok(arg(0)?.complement(unit.len())),
        Op::Zero => Ok(Element::EMPTY),
        Op::One => Ok(all),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitFlags {
    pub is_d: bool,
    pub is_dp: bool,
    pub is_dpe: bool,
    pub is_ds: bool,
    pub closed_under_finite_transformations: bool,
}

/// Unit classification. `is_d` is decided through `C_i(D_ij ∩ V) = V`; the
/// other three through `S_[i|j] V = V`, read as closure of `V` under `[i|j]`.
pub fn classify_unit(v: &Unit) -> UnitFlags {
    let n = v.n();
    let all = v.all();
    let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
    let is_d = pairs().all(|(i, j)| i == j || v.cyl(i, v.diag(i, j) & all) == all);
    let sub_closed = pairs().all(|(i, j)| v.escaping(&FiniteTransformation::sub(n, i, j)).is_none());
    let swap_closed = pairs().all(|(i, j)| v.escaping(&FiniteTransformation::swap(n, i, j)).is_none());
    UnitFlags {
        is_d,
        is_dp: sub_closed,
        is_dpe: sub_closed,
        is_ds: sub_closed,
        closed_under_finite_transformations: sub_closed && swap_closed,
    }
}

/// The atom structure of the full powerset algebra over `s.unit`: one atom per
/// tuple. Substitutions and transpositions need the unit closed under the
/// corresponding tuple actions.
pub fn abstract_algebra(s: &SetAlgebra) -> Result<FiniteBao> {
    let v = &s.unit;
    if v.is_empty() {
        return Err(Error::Precondition("the unit is empty".into()));
    }
    let sig = s.class.signature();
    if sig.has_sub {
        v.check_closed(false)?;
    }
    if sig.has_swap {
        v.check_closed(true)?;
    }
    let n = v.n();
    let atoms = v.len();
    let c = (0..n)
        .map(|i| (0..atoms).map(|a| v.cyl(i, Element::singleton(a))).collect())
        .collect();
    let dual = |make: fn(usize, usize, usize) -> FiniteTransformation| -> Vec<Vec<Vec<usize>>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let tau = make(n, i, j);
                        (0..atoms)
                            .map(|a| v.map_index(&tau, a).expect("closure checked"))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let parts = BaoParts {
        dim: n,
        num_atoms: atoms,
        sig,
        c,
        sub_dual: sig.has_sub.then(|| dual(FiniteTransformation::sub)),
        swap_dual: sig.has_swap.then(|| dual(FiniteTransformation::swap)),
        d: sig
            .has_d
            .then(|| (0..n).map(|i| (0..n).map(|j| v.diag(i, j)).collect()).collect()),
    };
    FiniteBao::from_parts(parts)
}

/// Shorthand for [`abstract_algebra`] on a unit and class.
pub fn abstract_unit(unit: &Unit, class: SetClass) -> Result<FiniteBao> {
    abstract_algebra(&SetAlgebra {
        unit: unit.clone(),
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize) -> Unit {
        Unit::full(Dimension::new(n).unwrap(), 2).unwrap()
    }

    fn unit2(tuples: &[[usize; 2]]) -> Unit {
        Unit::new(Dimension::new(2).unwrap(), 2, tuples.iter().map(|t| t.to_vec()).collect()).unwrap()
    }

    fn set(v: &Unit, tuples: &[[usize; 2]]) -> Element {
        Element::from_atoms(tuples.iter().map(|t| v.index_of(t).unwrap()))
    }

    #[test]
    fn definitional_operations() {
        let v = sq(2);
        let s = SetAlgebra { unit: v.clone(), class: SetClass::Pers };
        assert_eq!(
            setalg_op(&s, Op::C(0), &[set(&v, &[[0, 1]])]).unwrap(),
            set(&v, &[[0, 1], [1, 1]])
        );
        assert_eq!(setalg_op(&s, Op::Diag(0, 1), &[]).unwrap(), set(&v, &[[0, 0], [1, 1]]));
        let lonely = unit2(&[[0, 1]]);
        let s = SetAlgebra { unit: lonely.clone(), class: SetClass::Crs };
        assert_eq!(setalg_op(&s, Op::Sub(0, 1), &[lonely.all()]).unwrap(), Element::EMPTY);
        assert!(matches!(
            setalg_op(&s, Op::C(2), &[lonely.all()]),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }

    #[test]
    fn classification_examples() {
        let f = classify_unit(&sq(2));
        assert!(f.is_d && f.is_dp && f.is_dpe && f.is_ds && f.closed_under_finite_transformations);
        assert!(!classify_unit(&unit2(&[[0, 1]])).is_d);
        let f = classify_unit(&unit2(&[[0, 0]]));
        assert!(f.is_d && f.is_dpe && f.closed_under_finite_transformations);
    }

    #[test]
    fn substitution_flags_agree_with_is_d() {
        for v in Unit::all_subunits(Dimension::new(2).unwrap(), 2).unwrap() {
            let f = classify_unit(&v);
            assert_eq!(f.is_d, f.is_ds, "{v}");
        }
    }

    #[test]
    fn abstraction_examples() {
        let a = abstract_unit(&sq(2), SetClass::Pers).unwrap();
        assert_eq!(a.num_atoms(), 4);
        assert!(a.validate().is_empty());
        let one = abstract_unit(&unit2(&[[0, 0]]), SetClass::Pers).unwrap();
        assert_eq!(one.num_atoms(), 1);
        assert_eq!(one.c(0, one.one()).unwrap(), one.one());
        match abstract_unit(&unit2(&[[0, 1]]), SetClass::Pers) {
            Err(Error::Closure(msg)) => assert!(msg.contains("[0, 1]"), "{msg}"),
            other => panic!("expected closure error, got {other:?}"),
        }
    }

    #[test]
    fn atom_tables_reproduce_tuple_operations() {
        let v = sq(2);
        let s = SetAlgebra { unit: v.clone(), class: SetClass::Pers };
        let a = abstract_algebra(&s).unwrap();
        let mut ops = vec![Op::Complement];
        for i in 0..2 {
            ops.push(Op::C(i));
            for j in 0..2 {
                ops.push(Op::Sub(i, j));
                ops.push(Op::Swap(i, j));
            }
        }
        for x in a.elements() {
            for &op in &ops {
                assert_eq!(a.eval_op(op, &[x]).unwrap(), setalg_op(&s, op, &[x]).unwrap(), "{op} {x}");
            }
        }
    }

    #[test]
    fn image_flags_escapes() {
        let v = unit2(&[[0, 1], [1, 1]]);
        let (img, escaped) = v.image(&FiniteTransformation::swap(2, 0, 1), v.all());
        assert_eq!(img, set(&v, &[[1, 1]]));
        assert!(escaped);
    }

    #[test]
    fn unit_json_is_canonical() {
        let v = unit2(&[[1, 1], [0, 0]]);
        let text = v.to_json();
        assert_eq!(Unit::from_json(&text, &Limits::default()).unwrap(), v);
        let compact: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(compact["tuples"], serde_json::json!([[0, 0], [1, 1]]));
    }
}
