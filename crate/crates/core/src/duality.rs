//! Frames, complex algebras, tuple frames of units, zigzag products and a
//! brute-force superamalgam search.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{check_class, AxiomSystem, CheckOptions};
use crate::bao::{BaoParts, Dimension, Element, FiniteBao, Signature};
use crate::config::{Limits, ATOM_CAPACITY};
use crate::error::{Error, Result};
use crate::setalg::Unit;
use crate::transform::FiniteTransformation;

pub type World = usize;
pub type Pair = (World, World);
pub type Relation = BTreeSet<Pair>;

/// Worlds `0..worlds` with accessibility relations. `S_sub` and `S_swap` are
/// either empty (operator absent) or `n × n`; `D` is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub worlds: usize,
    #[serde(rename = "C")]
    pub c: Vec<Relation>,
    #[serde(rename = "S_sub", default)]
    pub s_sub: Vec<Vec<Relation>>,
    #[serde(rename = "S_swap", default)]
    pub s_swap: Vec<Vec<Relation>>,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<BTreeSet<World>>>>,
}

impl Frame {
    pub fn n(&self) -> usize {
        self.c.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Frame = serde_json::from_str(text)?;
        f.check_shape()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("frame serializes")
    }

    pub fn check_shape(&self) -> Result<()> {
        let n = Dimension::new(self.n())?.get();
        if self.worlds == 0 || self.worlds > ATOM_CAPACITY {
            return Err(Error::Format(format!("{} worlds (need 1..={ATOM_CAPACITY})", self.worlds)));
        }
        let square = |name: &str, t: &Vec<Vec<Relation>>| -> Result<()> {
            if !t.is_empty() && (t.len() != n || t.iter().any(|r| r.len() != n)) {
                return Err(Error::Format(format!("{name} must be empty or {n}×{n}")));
            }
            Ok(())
        };
        square("S_sub", &self.s_sub)?;
        square("S_swap", &self.s_swap)?;
        let rels = self.c.iter().chain(self.s_sub.iter().flatten()).chain(self.s_swap.iter().flatten());
        for r in rels {
            if let Some(p) = r.iter().find(|(x, y)| *x >= self.worlds || *y >= self.worlds) {
                return Err(Error::Format(format!("pair {p:?} leaves the {} worlds", self.worlds)));
            }
        }
        if let Some(d) = &self.d {
            if d.len() != n || d.iter().any(|r| r.len() != n) {
                return Err(Error::Format(format!("D must be {n}×{n}")));
            }
            if let Some(w) = d.iter().flatten().flatten().find(|&&w| w >= self.worlds) {
                return Err(Error::Format(format!("D mentions world {w}")));
            }
        }
        Ok(())
    }
}

/// For every world `s`, the unique `t` with `(t, s) ∈ r`, or the first world
/// where that fails.
fn inverse_function(r: &Relation, worlds: usize) -> std::result::Result<Vec<usize>, World> {
    let mut dual = vec![None; worlds];
    for &(t, s) in r {
        if dual[s].replace(t).is_some() {
            return Err(s);
        }
    }
    dual.into_iter().enumerate().map(|(s, t)| t.ok_or(s)).collect()
}

fn dual_table(
    name: &str,
    t: &[Vec<Relation>],
    worlds: usize,
    report: &mut Vec<String>,
) -> Option<Vec<Vec<Vec<usize>>>> {
    if t.is_empty() {
        return None;
    }
    let mut out = Vec::with_capacity(t.len());
    for (i, row) in t.iter().enumerate() {
        let mut maps = Vec::with_capacity(row.len());
        for (j, r) in row.iter().enumerate() {
            match inverse_function(r, worlds) {
                Ok(m) => maps.push(m),
                Err(s) => {
                    report.push(format!("{name}[{i}][{j}] is not functional onto world {s}; operator dropped"));
                    return None;
                }
            }
        }
        out.push(maps);
    }
    Some(out)
}

/// The complex algebra: atoms are worlds, `c_i {w} = {s : (w, s) ∈ C_i}`,
/// `s X = {s : ∃t ∈ X, (t, s) ∈ S}`. Substitution families that are not
/// functional in that direction are dropped and reported, together with
/// every failure of [`FiniteBao::validate`].
pub fn complex_algebra(f: &Frame) -> Result<(FiniteBao, Vec<String>)> {
    f.check_shape()?;
    let n = f.n();
    let w = f.worlds;
    let mut report = Vec::new();
    let c = f
        .c
        .iter()
        .map(|r| {
            let mut row = vec![Element::EMPTY; w];
            for &(x, y) in r {
                row[x] = row[x] | Element::singleton(y);
            }
            row
        })
        .collect();
    let sub_dual = dual_table("S_sub", &f.s_sub, w, &mut report);
    let swap_dual = dual_table("S_swap", &f.s_swap, w, &mut report);
    let d = f.d.as_ref().map(|d| {
        d.iter()
            .map(|row| row.iter().map(|s| Element::from_atoms(s.iter().copied())).collect())
            .collect()
    });
    let sig = Signature { has_c: true, has_sub: sub_dual.is_some(), has_swap: swap_dual.is_some(), has_d: d.is_some() };
    let a = FiniteBao::from_parts(BaoParts { dim: n, num_atoms: w, sig, c, sub_dual, swap_dual, d })?;
    report.extend(a.validate().iter().map(ToString::to_string));
    Ok((a, report))
}

/// The frame of an algebra's atom structure; its complex algebra is the algebra.
pub fn atom_frame(a: &FiniteBao) -> Frame {
    let n = a.n();
    let w = a.num_atoms();
    let c = (0..n)
        .map(|i| (0..w).flat_map(|p| a.c_image(i, p).atoms().map(move |q| (p, q))).collect())
        .collect();
    let sig = a.signature();
    let grid = |has: bool, swap: bool| -> Vec<Vec<Relation>> {
        if !has {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let map = if swap { a.swap_dual_map(i, j) } else { a.sub_dual_map(i, j) };
                        map.map(|m| m.iter().enumerate().map(|(s, &t)| (t, s)).collect()).unwrap_or_default()
                    })
                    .collect()
            })
            .collect()
    };
    let s_sub = grid(sig.has_sub, false);
    let s_swap = grid(sig.has_swap, true);
    let d = sig.has_d.then(|| {
        (0..n)
            .map(|i| (0..n).map(|j| a.diag(i, j).expect("has d").atoms().collect()).collect())
            .collect()
    });
    Frame { worlds: w, c, s_sub, s_swap, d }
}

/// Worlds are the tuples of `v` in order; `(x, y) ∈ C_i` iff they agree off
/// `i`; `(x, y) ∈ S_sub[i][j]` iff `[i|j]|y = x`; `(x, y) ∈ S_swap[i][j]` iff
/// `[i,j]|x = y`; `D[i][j]` holds the tuples with equal `i`, `j` entries.
pub fn tuple_frame(v: &Unit) -> Result<Frame> {
    v.check_closed(true)?;
    let n = v.n();
    let ts = v.tuples();
    let w = ts.len();
    let idx = |t: &[usize]| v.index_of(t).expect("closure checked");
    let c = (0..n)
        .map(|i| {
            let mut r = Relation::new();
            for x in 0..w {
                for y in 0..w {
                    if (0..n).all(|k| k == i || ts[x][k] == ts[y][k]) {
                        r.insert((x, y));
                    }
                }
            }
            r
        })
        .collect();
    let s_sub = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let tau = FiniteTransformation::sub(n, i, j);
                    (0..w).map(|y| (idx(&tau.act(&ts[y])), y)).collect()
                })
                .collect()
        })
        .collect();
    let s_swap = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let tau = FiniteTransformation::swap(n, i, j);
                    (0..w).map(|x| (x, idx(&tau.act(&ts[x])))).collect()
                })
                .collect()
        })
        .collect();
    let d = (0..n)
        .map(|i| (0..n).map(|j| (0..w).filter(|&x| ts[x][i] == ts[x][j]).collect()).collect())
        .collect();
    Ok(Frame { worlds: w, c, s_sub, s_swap, d: Some(d) })
}

/// The substructure of `∏ frames` on `carrier` (one world per factor). Every
/// projection of the carrier must be onto its factor.
pub fn zigzag_product(frames: &[Frame], carrier: &[Vec<World>]) -> Result<Frame> {
    let first = frames.first().ok_or_else(|| Error::Format("no frames given".into()))?;
    let n = first.n();
    for f in frames {
        f.check_shape()?;
        if f.n() != n
            || f.s_sub.is_empty() != first.s_sub.is_empty()
            || f.s_swap.is_empty() != first.s_swap.is_empty()
            || f.d.is_some() != first.d.is_some()
        {
            return Err(Error::SignatureMismatch("factors must share dimension and relations".into()));
        }
    }
    let mut carrier: Vec<Vec<World>> = carrier.to_vec();
    carrier.sort();
    carrier.dedup();
    for u in &carrier {
        if u.len() != frames.len() || u.iter().zip(frames).any(|(&x, f)| x >= f.worlds) {
            return Err(Error::Format(format!("carrier element {u:?} is not in the product")));
        }
    }
    for (k, f) in frames.iter().enumerate() {
        let hit: BTreeSet<World> = carrier.iter().map(|u| u[k]).collect();
        if let Some(world) = (0..f.worlds).find(|x| !hit.contains(x)) {
            return Err(Error::Zigzag { factor: k, world });
        }
    }
    let w = carrier.len();
    let lift = |rel: &dyn Fn(&Frame) -> &Relation| -> Relation {
        let mut r = Relation::new();
        for x in 0..w {
            for y in 0..w {
                if frames.iter().enumerate().all(|(k, f)| rel(f).contains(&(carrier[x][k], carrier[y][k]))) {
                    r.insert((x, y));
                }
            }
        }
        r
    };
    let c = (0..n).map(|i| lift(&|f| &f.c[i])).collect();
    let grid = |empty: bool, pick: &dyn Fn(&Frame, usize, usize) -> &Relation| -> Vec<Vec<Relation>> {
        if empty {
            return Vec::new();
        }
        (0..n).map(|i| (0..n).map(|j| lift(&|f| pick(f, i, j))).collect()).collect()
    };
    let s_sub = grid(first.s_sub.is_empty(), &|f, i, j| &f.s_sub[i][j]);
    let s_swap = grid(first.s_swap.is_empty(), &|f, i, j| &f.s_swap[i][j]);
    let d = first.d.as_ref().map(|_| {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..w)
                            .filter(|&x| {
                                frames.iter().enumerate().all(|(k, f)| {
                                    f.d.as_ref().expect("shared")[i][j].contains(&carrier[x][k])
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    });
    Ok(Frame { worlds: w, c, s_sub, s_swap, d })
}

/// A map between algebras given by the image of each source atom.
pub type AtomMap = Vec<Element>;

fn image(map: &AtomMap, x: Element) -> Element {
    x.atoms().fold(Element::EMPTY, |acc, p| acc | map[p])
}

/// Failures of `map` being an injective homomorphism `src → dst`, checked on
/// atoms and on every operator the two signatures share.
pub fn embedding_failures(src: &FiniteBao, dst: &FiniteBao, map: &AtomMap) -> Vec<String> {
    let mut out = Vec::new();
    if src.n() != dst.n() {
        out.push(format!("dimensions {} and {} differ", src.n(), dst.n()));
        return out;
    }
    if map.len() != src.num_atoms() {
        out.push(format!("{} images for {} atoms", map.len(), src.num_atoms()));
        return out;
    }
    let mut seen = Element::EMPTY;
    for (p, &m) in map.iter().enumerate() {
        if m.is_empty() {
            out.push(format!("atom {p} goes to 0"));
        }
        if !(m & seen).is_empty() {
            out.push(format!("the image of atom {p} overlaps earlier images"));
        }
        seen = seen | m;
    }
    if seen != dst.one() {
        out.push("atom images do not cover 1".into());
    }
    let (s, t) = (src.signature(), dst.signature());
    let n = src.n();
    for i in 0..n {
        for p in 0..src.num_atoms() {
            let x = Element::singleton(p);
            if image(map, src.c_unchecked(i, x)) != dst.c_unchecked(i, map[p]) {
                out.push(format!("c_{i} is not preserved at atom {p}"));
            }
            for j in 0..n {
                if s.has_sub && t.has_sub {
                    let (l, r) = (src.sub(i, j, x), dst.sub(i, j, map[p]));
                    if l.map(|l| image(map, l)) != r {
                        out.push(format!("s^{i}_{j} is not preserved at atom {p}"));
                    }
                }
                if s.has_swap && t.has_swap {
                    let (l, r) = (src.swap(i, j, x), dst.swap(i, j, map[p]));
                    if l.map(|l| image(map, l)) != r {
                        out.push(format!("s_{i}{j} is not preserved at atom {p}"));
                    }
                }
            }
        }
        if s.has_d && t.has_d {
            for j in 0..n {
                if src.diag(i, j).map(|d| image(map, d)) != dst.diag(i, j) {
                    out.push(format!("d_{i}{j} is not preserved"));
                }
            }
        }
    }
    out
}

/// `A0` embedded into `A1` and `A2`.
#[derive(Clone, Debug)]
pub struct AmalgamProblem {
    pub a0: FiniteBao,
    pub a1: FiniteBao,
    pub a2: FiniteBao,
    pub i1: AtomMap,
    pub i2: AtomMap,
}

#[derive(Serialize, Deserialize)]
struct AmalgamFile {
    a0: BaoParts,
    a1: BaoParts,
    a2: BaoParts,
    i1: AtomMap,
    i2: AtomMap,
}

impl AmalgamProblem {
    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let f: AmalgamFile = serde_json::from_str(text)?;
        let load = |p: BaoParts| -> Result<FiniteBao> {
            Dimension::with_limits(p.dim, limits)?;
            FiniteBao::from_parts(p)
        };
        let p = AmalgamProblem { a0: load(f.a0)?, a1: load(f.a1)?, a2: load(f.a2)?, i1: f.i1, i2: f.i2 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, dst, map) in [("i1", &self.a1, &self.i1), ("i2", &self.a2, &self.i2)] {
            if let Some(why) = embedding_failures(&self.a0, dst, map).first() {
                return Err(Error::Precondition(format!("{name} is not an embedding: {why}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// Carrier of the zigzag product of the two atom frames.
    pub carrier: Vec<(World, World)>,
    pub m1: AtomMap,
    pub m2: AtomMap,
    pub element_pairs_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmalgamOutcome {
    Found { d: FiniteBao, certificate: Certificate },
    NotFoundWithinBound,
}

/// Looks for a superamalgam among complex algebras of zigzag products of the
/// atom frames of `A1` and `A2` with at most `bound` worlds. The embeddings
/// are the inverse projections. Carriers are tried by size, then by bitmask;
/// the first success is returned.
pub fn search_superamalgam(p: &AmalgamProblem, bound: usize, limits: &Limits) -> Result<AmalgamOutcome> {
    p.validate()?;
    for a in [&p.a0, &p.a1, &p.a2] {
        let r = check_class(a, AxiomSystem::Ta, CheckOptions::default(), limits)?;
        if !r.is_empty() {
            return Err(Error::Precondition(format!("{} TA axiom failures, e.g. {}", r.len(), r.labels().next().unwrap_or(""))));
        }
    }
    let (w1, w2) = (p.a1.num_atoms(), p.a2.num_atoms());
    // pairs over a common atom of A0, which the commuting square forces
    let above = |map: &AtomMap, x: usize| map.iter().position(|m| m.contains(x)).expect("embedding covers 1");
    let pairs: Vec<Pair> = (0..w1)
        .flat_map(|x| (0..w2).map(move |y| (x, y)))
        .filter(|&(x, y)| above(&p.i1, x) == above(&p.i2, y))
        .collect();
    if pairs.len() > 24 {
        return Err(Error::Budget(format!("2^{} candidate carriers", pairs.len())));
    }
    let cost = (1u128 << pairs.len()) * (1u128 << (w1 + w2));
    if cost > limits.max_assignments as u128 * 64 {
        return Err(Error::Budget(format!("about {cost} checks")));
    }
    let mut masks: Vec<u32> = (1..(1u32 << pairs.len()))
        .filter(|m| (m.count_ones() as usize) <= bound)
        .collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let frames = [atom_frame(&p.a1), atom_frame(&p.a2)];
    let found = masks.par_iter().find_map_first(|&mask| {
        let carrier: Vec<Vec<World>> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(x, y))| vec![x, y])
            .collect();
        let frame = zigzag_product(&frames, &carrier).ok()?;
        let (d, report) = complex_algebra(&frame).ok()?;
        if !report.is_empty() || d.signature() != p.a1.signature() {
            return None;
        }
        let proj = |k: usize, w: usize| -> AtomMap {
            (0..w)
                .map(|x| Element::from_atoms(carrier.iter().enumerate().filter(|(_, u)| u[k] == x).map(|(s, _)| s)))
                .collect()
        };
        let (m1, m2) = (proj(0, w1), proj(1, w2));
        if !embedding_failures(&p.a1, &d, &m1).is_empty() || !embedding_failures(&p.a2, &d, &m2).is_empty() {
            return None;
        }
        let checked = certify(p, &m1, &m2).ok()?;
        let certificate = Certificate {
            carrier: carrier.iter().map(|u| (u[0], u[1])).collect(),
            m1,
            m2,
            element_pairs_checked: checked,
        };
        Some((d, certificate))
    });
    Ok(match found {
        Some((d, certificate)) => AmalgamOutcome::Found { d, certificate },
        None => AmalgamOutcome::NotFoundWithinBound,
    })
}

/// Checks `m1∘i1 = m2∘i2` and, for all `x ∈ A1`, `y ∈ A2` with
/// `m1(x) ≤ m2(y)`, some `z ∈ A0` with `x ≤ i1(z)` and `i2(z) ≤ y`
/// (and symmetrically). Returns the number of element pairs examined.
pub fn certify(p: &AmalgamProblem, m1: &AtomMap, m2: &AtomMap) -> Result<usize> {
    for q in 0..p.a0.num_atoms() {
        if image(m1, p.i1[q]) != image(m2, p.i2[q]) {
            return Err(Error::Invariant(format!("m1∘i1 and m2∘i2 differ at atom {q}")));
        }
    }
    let zs: Vec<(Element, Element)> = p.a0.elements().map(|z| (image(&p.i1, z), image(&p.i2, z))).collect();
    let mut checked = 0;
    for x in p.a1.elements() {
        for y in p.a2.elements() {
            checked += 1;
            let (mx, my) = (image(m1, x), image(m2, y));
            if mx.is_subset(my) && !zs.iter().any(|&(z1, z2)| x.is_subset(z1) && z2.is_subset(y)) {
                return Err(Error::Invariant(format!("no interpolant for m1({x}) ≤ m2({y})")));
            }
            if my.is_subset(mx) && !zs.iter().any(|&(z1, z2)| y.is_subset(z2) && z1.is_subset(x)) {
                return Err(Error::Invariant(format!("no interpolant for m2({y}) ≤ m1({x})")));
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setalg::{abstract_unit, SetClass};

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn square_tuple_frame_counts() {
        let v = Unit::full(dim(2), 2).unwrap();
        let f = tuple_frame(&v).unwrap();
        assert_eq!(f.worlds, 4);
        assert_eq!(f.c[0].len(), 8);
        let (a, report) = complex_algebra(&f).unwrap();
        assert!(report.is_empty(), "{report:?}");
        assert_eq!(a, abstract_unit(&v, SetClass::Pers).unwrap());
    }

    #[test]
    fn tuple_frame_needs_closure() {
        let v = Unit::new(dim(2), 2, vec![vec![0, 1]]).unwrap();
        let err = tuple_frame(&v).unwrap_err();
        assert!(matches!(err, Error::Closure(ref m) if m.contains("[0, 1]")), "{err}");
        let v = Unit::new(dim(2), 2, vec![vec![0, 0]]).unwrap();
        let f = tuple_frame(&v).unwrap();
        assert_eq!(f.worlds, 1);
        assert!(f.c.iter().chain(f.s_sub.iter().flatten()).all(|r| r == &Relation::from([(0, 0)])));
    }

    #[test]
    fn empty_relations_are_flagged() {
        let f = Frame { worlds: 2, c: vec![Relation::new(), Relation::new()], ..Frame::default() };
        let (_, report) = complex_algebra(&f).unwrap();
        assert!(report.iter().any(|r| r.starts_with("c_0 increasing")), "{report:?}");
    }

    #[test]
    fn single_world_identity_frame() {
        let id = Relation::from([(0, 0)]);
        let f = Frame {
            worlds: 1,
            c: vec![id.clone(); 2],
            s_sub: vec![vec![id.clone(); 2]; 2],
            s_swap: vec![vec![id; 2]; 2],
            d: None,
        };
        let (a, report) = complex_algebra(&f).unwrap();
        assert!(report.is_empty());
        assert_eq!(a.num_atoms(), 1);
    }

    #[test]
    fn non_functional_substitution_is_dropped() {
        let v = Unit::full(dim(2), 2).unwrap();
        let mut f = tuple_frame(&v).unwrap();
        f.s_sub[0][1].insert((1, 0));
        let (a, report) = complex_algebra(&f).unwrap();
        assert!(!a.signature().has_sub);
        assert!(report[0].contains("S_sub[0][1]"));
    }

    #[test]
    fn atom_frame_round_trips() {
        let v = Unit::full(dim(2), 2).unwrap();
        let a = abstract_unit(&v, SetClass::Pers).unwrap();
        let (b, report) = complex_algebra(&atom_frame(&a)).unwrap();
        assert!(report.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn zigzag_diagonal_is_the_frame() {
        let v = Unit::full(dim(2), 2).unwrap();
        let f = tuple_frame(&v).unwrap();
        let diag: Vec<Vec<World>> = (0..4).map(|x| vec![x, x]).collect();
        let z = zigzag_product(&[f.clone(), f.clone()], &diag).unwrap();
        assert_eq!(z, f);
        let partial: Vec<Vec<World>> = (0..4).flat_map(|x| (0..3).map(move |y| vec![x, y])).collect();
        assert_eq!(zigzag_product(&[f.clone(), f], &partial).unwrap_err(), Error::Zigzag { factor: 1, world: 3 });
    }

    fn identity_problem(v: &Unit) -> AmalgamProblem {
        let a = abstract_unit(v, SetClass::Prs).unwrap();
        let id: AtomMap = a.atoms().collect();
        AmalgamProblem { a0: a.clone(), a1: a.clone(), a2: a, i1: id.clone(), i2: id }
    }

    #[test]
    fn trivial_and_diagonal_amalgams() {
        let one = Unit::new(dim(2), 1, vec![vec![0, 0]]).unwrap();
        let two = Unit::new(dim(2), 2, vec![vec![0, 0], vec![1, 1]]).unwrap();
        let lim = Limits::default();
        for v in [one, two] {
            let p = identity_problem(&v);
            match search_superamalgam(&p, 4, &lim).unwrap() {
                AmalgamOutcome::Found { d, certificate } => {
                    assert_eq!(d, p.a0);
                    assert_eq!(certificate.carrier.len(), v.len());
                }
                AmalgamOutcome::NotFoundWithinBound => panic!("expected an amalgam for {v}"),
            }
            assert_eq!(search_superamalgam(&p, 0, &lim).unwrap(), AmalgamOutcome::NotFoundWithinBound);
        }
    }
}
