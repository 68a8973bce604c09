//! Finite Boolean algebras with operators, stored through their atom structure.
//!
//! An algebra of dimension `n` carries cylindrifications `c_i`, elementary
//! substitutions `s^i_j`, transpositions `s_ij` and diagonal constants `d_ij`,
//! each family optional according to its [`Signature`]. Every value of the
//! algebra is an [`Element`]: a set of atoms. Cylindrifications are given by
//! the image of each atom; substitutions and transpositions by their dual
//! atom maps, so `s x = {a : dual(a) ∈ x}` is a Boolean endomorphism by
//! construction.

use std::fmt;
use std::ops::{BitAnd, BitOr};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::{Limits, ATOM_CAPACITY, DIM_CAPACITY};
use crate::error::{Error, Result};

/// A set of atom indices, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u64);

impl Element {
    pub const EMPTY: Element = Element(0);

    pub const fn from_bits(bits: u64) -> Self {
        Element(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(atom: usize) -> Self {
        debug_assert!(atom < ATOM_CAPACITY);
        Element(1u64 << atom)
    }

    pub fn full(num_atoms: usize) -> Self {
        if num_atoms >= 64 {
            Element(u64::MAX)
        } else {
            Element((1u64 << num_atoms) - 1)
        }
    }

    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> Self {
        atoms
            .into_iter()
            .fold(Element::EMPTY, |acc, a| acc | Element::singleton(a))
    }

    pub fn contains(self, atom: usize) -> bool {
        atom < 64 && self.0 >> atom & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, num_atoms: usize) -> Element {
        Element(!self.0 & Element::full(num_atoms).0)
    }

    pub fn minus(self, other: Element) -> Element {
        Element(self.0 & !other.0)
    }

    /// The single atom, if this element is an atom.
    pub fn as_atom(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn least_atom(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let a = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(a)
            }
        })
    }
}

impl BitOr for Element {
    type Output = Element;
    fn bitor(self, rhs: Element) -> Element {
        Element(self.0 | rhs.0)
    }
}

impl BitAnd for Element {
    type Output = Element;
    fn bitand(self, rhs: Element) -> Element {
        Element(self.0 & rhs.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, a) in self.atoms().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.atoms())
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let atoms = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = atoms.iter().find(|&&a| a >= ATOM_CAPACITY) {
            return Err(serde::de::Error::custom(format!(
                "atom index {bad} exceeds capacity {ATOM_CAPACITY}"
            )));
        }
        Ok(Element::from_atoms(atoms))
    }
}

/// Dimension `n` of an algebra; always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if (2..=DIM_CAPACITY).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::BadDimension(n, DIM_CAPACITY))
        }
    }

    pub fn with_limits(n: usize, limits: &Limits) -> Result<Self> {
        if n < 2 || n > limits.max_dim {
            return Err(Error::BadDimension(n, limits.max_dim));
        }
        Dimension::new(n)
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, index: usize) -> Result<()> {
        if index < self.0 {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim: self.0 })
        }
    }
}

/// Which operator families an algebra carries. Cylindrifications are always present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    #[serde(rename = "c")]
    pub has_c: bool,
    #[serde(rename = "sub")]
    pub has_sub: bool,
    #[serde(rename = "swap")]
    pub has_swap: bool,
    #[serde(rename = "d")]
    pub has_d: bool,
}

impl Signature {
    const fn of(has_sub: bool, has_swap: bool, has_d: bool) -> Self {
        Signature {
            has_c: true,
            has_sub,
            has_swap,
            has_d,
        }
    }

    /// Cylindrifications and diagonals; substitutions are the derived `c_i(d_ij · x)`.
    pub const fn pta() -> Self {
        Signature::of(false, false, true)
    }

    pub const fn ta() -> Self {
        Signature::of(true, true, false)
    }

    pub const fn sa() -> Self {
        Signature::of(true, false, false)
    }

    pub const fn tea() -> Self {
        Signature::of(true, true, true)
    }

    /// The partial transposition reduct of a TEA signature.
    pub const fn pt_reduct() -> Self {
        Signature::of(true, false, true)
    }

    /// Cylindrifications only.
    pub const fn diagonal_free() -> Self {
        Signature::of(false, false, false)
    }

    pub fn is_subset_of(self, other: Signature) -> bool {
        (!self.has_c || other.has_c)
            && (!self.has_sub || other.has_sub)
            && (!self.has_swap || other.has_swap)
            && (!self.has_d || other.has_d)
    }
}

/// An operator of the signature, or a Boolean operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    C(usize),
    Sub(usize, usize),
    Swap(usize, usize),
    Diag(usize, usize),
    Join,
    Meet,
    Complement,
    Zero,
    One,
}

impl Op {
    fn arity(self) -> usize {
        match self {
            Op::Diag(..) | Op::Zero | Op::One => 0,
            Op::Join | Op::Meet => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::C(i) => write!(f, "c_{i}"),
            Op::Sub(i, j) => write!(f, "s^{i}_{j}"),
            Op::Swap(i, j) => write!(f, "s_{i}{j}"),
            Op::Diag(i, j) => write!(f, "d_{i}{j}"),
            Op::Join => write!(f, "+"),
            Op::Meet => write!(f, "·"),
            Op::Complement => write!(f, "-"),
            Op::Zero => write!(f, "0"),
            Op::One => write!(f, "1"),
        }
    }
}

/// Raw tables of an algebra. This is also the on-disk JSON shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaoParts {
    #[serde(rename = "dimension")]
    pub dim: usize,
    #[serde(rename = "atoms")]
    pub num_atoms: usize,
    #[serde(rename = "signature")]
    pub sig: Signature,
    pub c: Vec<Vec<Element>>,
    pub sub_dual: Option<Vec<Vec<Vec<usize>>>>,
    pub swap_dual: Option<Vec<Vec<Vec<usize>>>>,
    pub d: Option<Vec<Vec<Element>>>,
}

/// One failed structural invariant of a [`FiniteBao`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaoViolation {
    pub condition: String,
    pub location: String,
}

impl fmt::Display for BaoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.condition, self.location)
    }
}

type DualTable = Vec<Vec<Vec<usize>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteBao {
    dim: Dimension,
    num_atoms: usize,
    sig: Signature,
    c_table: Vec<Vec<Element>>,
    sub_dual: Option<DualTable>,
    swap_dual: Option<DualTable>,
    d: Option<Vec<Vec<Element>>>,
}

fn check_dual_shape(name: &str, table: &DualTable, n: usize, atoms: usize) -> Result<()> {
    if table.len() != n || table.iter().any(|row| row.len() != n) {
        return Err(Error::Format(format!("{name} must be an {n}×{n} array")));
    }
    for (i, row) in table.iter().enumerate() {
        for (j, map) in row.iter().enumerate() {
            if map.len() != atoms {
                return Err(Error::Format(format!(
                    "{name}[{i}][{j}] has length {} instead of {atoms}",
                    map.len()
                )));
            }
            if let Some(&bad) = map.iter().find(|&&b| b >= atoms) {
                return Err(Error::Format(format!(
                    "{name}[{i}][{j}] mentions atom {bad} ≥ {atoms}"
                )));
            }
        }
    }
    Ok(())
}

impl FiniteBao {
    /// Builds an algebra from raw tables, checking shapes and index ranges only.
    /// Semantic invariants are left to [`FiniteBao::validate`].
    pub fn from_parts(parts: BaoParts) -> Result<Self> {
        let dim = Dimension::new(parts.dim)?;
        let n = dim.get();
        let atoms = parts.num_atoms;
        if atoms == 0 {
            return Err(Error::Format("an algebra needs at least one atom".into()));
        }
        if atoms > ATOM_CAPACITY {
            return Err(Error::Format(format!(
                "{atoms} atoms exceed the capacity of {ATOM_CAPACITY}"
            )));
        }
        if !parts.sig.has_c {
            return Err(Error::Format("cylindrifications are mandatory".into()));
        }
        let full = Element::full(atoms);
        if parts.c.len() != n || parts.c.iter().any(|row| row.len() != atoms) {
            return Err(Error::Format(format!(
                "c must be an array of {n} arrays of {atoms} elements"
            )));
        }
        if parts.c.iter().flatten().any(|e| !e.is_subset(full)) {
            return Err(Error::Format("c mentions an atom out of range".into()));
        }
        let presence = |name: &str, wanted: bool, present: bool| -> Result<()> {
            match (wanted, present) {
                (true, false) => Err(Error::Format(format!(
                    "signature declares {name} but the table is null"
                ))),
                (false, true) => Err(Error::Format(format!(
                    "signature omits {name} but a table is given"
                ))),
                _ => Ok(()),
            }
        };
        presence("sub", parts.sig.has_sub, parts.sub_dual.is_some())?;
        presence("swap", parts.sig.has_swap, parts.swap_dual.is_some())?;
        presence("d", parts.sig.has_d, parts.d.is_some())?;
        if let Some(t) = &parts.sub_dual {
            check_dual_shape("sub_dual", t, n, atoms)?;
        }
        if let Some(t) = &parts.swap_dual {
            check_dual_shape("swap_dual", t, n, atoms)?;
        }
        if let Some(d) = &parts.d {
            if d.len() != n || d.iter().any(|row| row.len() != n) {
                return Err(Error::Format(format!("d must be an {n}×{n} array")));
            }
            if d.iter().flatten().any(|e| !e.is_subset(full)) {
                return Err(Error::Format("d mentions an atom out of range".into()));
            }
        }
        Ok(FiniteBao {
            dim,
            num_atoms: atoms,
            sig: parts.sig,
            c_table: parts.c,
            sub_dual: parts.sub_dual,
            swap_dual: parts.swap_dual,
            d: parts.d,
        })
    }

    pub fn into_parts(self) -> BaoParts {
        BaoParts {
            dim: self.dim.get(),
            num_atoms: self.num_atoms,
            sig: self.sig,
            c: self.c_table,
            sub_dual: self.sub_dual,
            swap_dual: self.swap_dual,
            d: self.d,
        }
    }

    pub fn to_parts(&self) -> BaoParts {
        self.clone().into_parts()
    }

    /// Parses the canonical JSON algebra format and applies the size limits.
    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let parts: BaoParts = serde_json::from_str(text)?;
        Dimension::with_limits(parts.dim, limits)?;
        if parts.num_atoms > limits.max_atoms {
            return Err(Error::Format(format!(
                "{} atoms exceed the configured maximum {}",
                parts.num_atoms, limits.max_atoms
            )));
        }
        FiniteBao::from_parts(parts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_parts()).expect("algebra serializes")
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.dim.get()
    }

    pub fn num_atoms(&self) -> usize {
        self.num_atoms
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn zero(&self) -> Element {
        Element::EMPTY
    }

    pub fn one(&self) -> Element {
        Element::full(self.num_atoms)
    }

    pub fn atom(&self, a: usize) -> Element {
        debug_assert!(a < self.num_atoms);
        Element::singleton(a)
    }

    pub fn atoms(&self) -> impl Iterator<Item = Element> {
        (0..self.num_atoms).map(Element::singleton)
    }

    /// All `2^atoms` elements in ascending bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        let top = self.one().bits();
        (0..=top).map(Element::from_bits)
    }

    pub fn complement(&self, x: Element) -> Element {
        x.complement(self.num_atoms)
    }

    /// Image of a single atom under `c_i`.
    pub fn c_image(&self, i: usize, atom: usize) -> Element {
        self.c_table[i][atom]
    }

    pub fn c(&self, i: usize, x: Element) -> Result<Element> {
        self.dim.check(i)?;
        Ok(self.c_unchecked(i, x))
    }

    pub(crate) fn c_unchecked(&self, i: usize, x: Element) -> Element {
        x.atoms()
            .fold(Element::EMPTY, |acc, a| acc | self.c_table[i][a])
    }

    pub fn diag(&self, i: usize, j: usize) -> Result<Element> {
        self.dim.check(i)?;
        self.dim.check(j)?;
        match &self.d {
            Some(d) => Ok(d[i][j]),
            None => Err(Error::MissingOperator(format!("d_{i}{j}"))),
        }
    }

    pub fn sub_dual_map(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.sub_dual.as_ref().map(|t| t[i][j].as_slice())
    }

    pub fn swap_dual_map(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.swap_dual.as_ref().map(|t| t[i][j].as_slice())
    }

    fn preimage(&self, map: &[usize], x: Element) -> Element {
        Element::from_atoms((0..self.num_atoms).filter(|&a| x.contains(map[a])))
    }

    /// `s^i_j x`; derived as `c_i(d_ij · x)` (and the identity for `i = j`) when
    /// substitutions are not primitive but diagonals are present.
    pub fn sub(&self, i: usize, j: usize, x: Element) -> Result<Element> {
        self.dim.check(i)?;
        self.dim.check(j)?;
        if let Some(t) = &self.sub_dual {
            return Ok(self.preimage(&t[i][j], x));
        }
        if i == j {
            if self.d.is_some() {
                return Ok(x);
            }
        } else if let Some(d) = &self.d {
            return Ok(self.c_unchecked(i, d[i][j] & x));
        }
        Err(Error::MissingOperator(format!("s^{i}_{j}")))
    }

    pub fn swap(&self, i: usize, j: usize, x: Element) -> Result<Element> {
        self.dim.check(i)?;
        self.dim.check(j)?;
        match &self.swap_dual {
            Some(t) => Ok(self.preimage(&t[i][j], x)),
            None => Err(Error::MissingOperator(format!("s_{i}{j}"))),
        }
    }

    /// Evaluates one operator on its arguments.
    pub fn eval_op(&self, op: Op, args: &[Element]) -> Result<Element> {
        if args.len() != op.arity() {
            return Err(Error::Format(format!(
                "{op} expects {} argument(s), got {}",
                op.arity(),
                args.len()
            )));
        }
        let full = self.one();
        if let Some(bad) = args.iter().find(|x| !x.is_subset(full)) {
            return Err(Error::Format(format!(
                "element {bad} is not an element of a {}-atom algebra",
                self.num_atoms
            )));
        }
        match op {
            Op::C(i) => self.c(i, args[0]),
            Op::Sub(i, j) => self.sub(i, j, args[0]),
            Op::Swap(i, j) => self.swap(i, j, args[0]),
            Op::Diag(i, j) => self.diag(i, j),
            Op::Join => Ok(args[0] | args[1]),
            Op::Meet => Ok(args[0] & args[1]),
            Op::Complement => Ok(self.complement(args[0])),
            Op::Zero => Ok(Element::EMPTY),
            Op::One => Ok(full),
        }
    }

    /// Reports every failed structural invariant; empty iff well formed.
    pub fn validate(&self) -> Vec<BaoViolation> {
        let mut out = Vec::new();
        let n = self.n();
        let atoms = self.num_atoms;
        let mut push = |condition: String, location: String| {
            out.push(BaoViolation {
                condition,
                location,
            })
        };
        for i in 0..n {
            let row = &self.c_table[i];
            for a in 0..atoms {
                if !row[a].contains(a) {
                    push(format!("c_{i} increasing"), format!("c[{i}][{a}]"));
                }
                for b in row[a].atoms() {
                    if !row[b].contains(a) {
                        push(
                            format!("c_{i} symmetric"),
                            format!("c[{i}][{a}] contains {b} but c[{i}][{b}] lacks {a}"),
                        );
                    }
                    if !row[b].is_subset(row[a]) {
                        push(
                            format!("c_{i} transitive"),
                            format!("c[{i}][{b}] ⊄ c[{i}][{a}]"),
                        );
                    }
                }
            }
        }
        if let Some(t) = &self.sub_dual {
            for i in 0..n {
                if let Some(a) = (0..atoms).find(|&a| t[i][i][a] != a) {
                    push(
                        "sub_dual identity".into(),
                        format!("sub_dual[{i}][{i}][{a}]"),
                    );
                }
            }
        }
        if let Some(t) = &self.swap_dual {
            for i in 0..n {
                for j in 0..n {
                    let map = &t[i][j];
                    if i == j {
                        if let Some(a) = (0..atoms).find(|&a| map[a] != a) {
                            push(
                                "swap_dual identity".into(),
                                format!("swap_dual[{i}][{i}][{a}]"),
                            );
                        }
                        continue;
                    }
                    if i < j && t[i][j] != t[j][i] {
                        push(
                            "swap_dual symmetric".into(),
                            format!("swap_dual[{i}][{j}] ≠ swap_dual[{j}][{i}]"),
                        );
                    }
                    if let Some(a) = (0..atoms).find(|&a| map[map[a]] != a) {
                        push(
                            "swap_dual involution".into(),
                            format!("swap_dual[{i}][{j}] at atom {a}"),
                        );
                    }
                }
            }
        }
        if let Some(d) = &self.d {
            let full = Element::full(atoms);
            for i in 0..n {
                if d[i][i] != full {
                    push("d_ii full".into(), format!("d[{i}][{i}]"));
                }
            }
        }
        out
    }

    /// Drops every operator family outside `target`.
    pub fn reduct(&self, target: Signature) -> Result<FiniteBao> {
        if !target.has_c {
            return Err(Error::SignatureMismatch(
                "cylindrifications cannot be dropped".into(),
            ));
        }
        if !target.is_subset_of(self.sig) {
            return Err(Error::SignatureMismatch(format!(
                "target {target:?} requests operators absent from {:?}",
                self.sig
            )));
        }
        let mut out = self.clone();
        out.sig = target;
        if !target.has_sub {
            out.sub_dual = None;
        }
        if !target.has_swap {
            out.swap_dual = None;
        }
        if !target.has_d {
            out.d = None;
        }
        Ok(out)
    }

    /// Installs diagonals `d_ij = ⋂{y : s^i_j y = 1}`, computed by enumerating
    /// every element. `max_atoms` bounds the enumeration.
    pub fn define_diagonals(&self, max_atoms: usize) -> Result<FiniteBao> {
        let Some(sub) = &self.sub_dual else {
            return Err(Error::MissingOperator(
                "primitive substitutions s^i_j".into(),
            ));
        };
        if self.num_atoms > max_atoms {
            return Err(Error::Budget(format!(
                "diagonal definition enumerates 2^{} elements; limit is 2^{max_atoms}",
                self.num_atoms
            )));
        }
        let n = self.n();
        let full = self.one();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        use rayon::prelude::*;
        let values: Vec<Element> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let map = &sub[i][j];
                self.elements()
                    .filter(|&y| self.preimage(map, y) == full)
                    .fold(full, |acc, y| acc & y)
            })
            .collect();
        let mut d = vec![vec![Element::EMPTY; n]; n];
        for (&(i, j), v) in pairs.iter().zip(values) {
            d[i][j] = v;
        }
        let mut out = self.clone();
        out.sig.has_d = true;
        out.d = Some(d);
        Ok(out)
    }

    /// A finite Boolean algebra is complete and atomic, hence its own canonical
    /// extension.
    pub fn canonical_extension(&self) -> FiniteBao {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Full square ²{0,1}: atoms 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1).
    fn square() -> FiniteBao {
        let e = |v: &[usize]| Element::from_atoms(v.iter().copied());
        FiniteBao::from_parts(BaoParts {
            dim: 2,
            num_atoms: 4,
            sig: Signature::tea(),
            c: vec![
                vec![e(&[0, 2]), e(&[1, 3]), e(&[0, 2]), e(&[1, 3])],
                vec![e(&[0, 1]), e(&[0, 1]), e(&[2, 3]), e(&[2, 3])],
            ],
            sub_dual: Some(vec![
                vec![vec![0, 1, 2, 3], vec![0, 3, 0, 3]],
                vec![vec![0, 0, 3, 3], vec![0, 1, 2, 3]],
            ]),
            swap_dual: Some(vec![
                vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]],
                vec![vec![0, 2, 1, 3], vec![0, 1, 2, 3]],
            ]),
            d: Some(vec![
                vec![e(&[0, 1, 2, 3]), e(&[0, 3])],
                vec![e(&[0, 3]), e(&[0, 1, 2, 3])],
            ]),
        })
        .unwrap()
    }

    #[test]
    fn cylindrification_of_atom() {
        let a = square();
        assert_eq!(a.c(0, a.atom(1)).unwrap(), Element::from_atoms([1, 3]));
        assert_eq!(a.c(1, Element::EMPTY).unwrap(), Element::EMPTY);
    }

    #[test]
    fn transposition_of_atom() {
        let a = square();
        assert_eq!(a.swap(0, 1, a.atom(1)).unwrap(), a.atom(2));
    }

    #[test]
    fn substitution_fixes_diagonal_to_one() {
        let a = square();
        for (i, j) in [(0, 1), (1, 0), (0, 0)] {
            let d = a.diag(i, j).unwrap();
            assert_eq!(a.sub(i, j, d).unwrap(), a.one());
        }
    }

    #[test]
    fn index_errors() {
        let a = square();
        assert_eq!(
            a.eval_op(Op::C(2), &[a.one()]),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        );
        let df = a.reduct(Signature::diagonal_free()).unwrap();
        assert!(matches!(
            df.eval_op(Op::Diag(0, 1), &[]),
            Err(Error::MissingOperator(_))
        ));
        assert!(matches!(
            df.sub(0, 1, df.one()),
            Err(Error::MissingOperator(_))
        ));
    }

    #[test]
    fn derived_substitution_matches_primitive() {
        let a = square();
        let pta = a.reduct(Signature::pta()).unwrap();
        for x in a.elements() {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(a.sub(i, j, x), pta.sub(i, j, x));
                }
            }
        }
    }

    #[test]
    fn validation_flags_constructed_violations() {
        assert!(square().validate().is_empty());

        let mut p = square().into_parts();
        p.swap_dual.as_mut().unwrap()[0][1] = vec![0, 2, 3, 3];
        let report = FiniteBao::from_parts(p).unwrap().validate();
        assert!(report.iter().any(|v| v.condition == "swap_dual involution"));

        let mut p = square().into_parts();
        p.c[0][1] = Element::from_atoms([3]);
        let report = FiniteBao::from_parts(p).unwrap().validate();
        assert!(report.iter().any(|v| v.condition == "c_0 increasing"));
    }

    #[test]
    fn reduct_to_same_signature_is_identity() {
        let a = square();
        assert_eq!(a.reduct(a.signature()).unwrap(), a);
        let pt = a.reduct(Signature::pt_reduct()).unwrap();
        assert_eq!(pt.to_parts().c, a.to_parts().c);
        assert_eq!(pt.to_parts().sub_dual, a.to_parts().sub_dual);
        assert_eq!(pt.to_parts().d, a.to_parts().d);
        assert!(pt.to_parts().swap_dual.is_none());
        assert!(pt.reduct(Signature::tea()).is_err());
    }

    #[test]
    fn diagonals_recovered_by_enumeration() {
        let a = square();
        let df = a.reduct(Signature::ta()).unwrap();
        let back = df.define_diagonals(20).unwrap();
        assert_eq!(back.diag(0, 1).unwrap(), Element::from_atoms([0, 3]));
        assert_eq!(back.diag(1, 1).unwrap(), back.one());
        assert_eq!(back, a);
    }

    #[test]
    fn trivial_algebra_diagonals_are_full() {
        let one = FiniteBao::from_parts(BaoParts {
            dim: 3,
            num_atoms: 1,
            sig: Signature::sa(),
            c: vec![vec![Element::singleton(0)]; 3],
            sub_dual: Some(vec![vec![vec![0]; 3]; 3]),
            swap_dual: None,
            d: None,
        })
        .unwrap();
        let with_d = one.define_diagonals(20).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(with_d.diag(i, j).unwrap(), with_d.one());
            }
        }
        assert_eq!(one.canonical_extension(), one);
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let a = square();
        let text = a.to_json();
        let back = FiniteBao::from_json(&text, &Limits::default()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(), text);
        assert!(text.find("\"dimension\"").unwrap() < text.find("\"atoms\"").unwrap());
    }

    #[test]
    fn zero_atoms_rejected() {
        let mut p = square().into_parts();
        p.num_atoms = 0;
        assert!(matches!(FiniteBao::from_parts(p), Err(Error::Format(_))));
    }
}
