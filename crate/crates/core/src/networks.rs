//! Pre-networks over an algebra, their validity conditions, the `t^i_j`
//! operation and the partial transposition / transposition constructors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bao::{Element, FiniteBao};
use crate::error::{Error, Result};
use crate::terms::s_tau;
use crate::transform::{substitution_word, FiniteTransformation, Generator, SubstWord};

pub type Node = usize;
pub type Tuple = Vec<Node>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NetMode {
    #[serde(rename = "PTA")]
    Pta,
    #[serde(rename = "TEA")]
    Tea,
}

impl std::str::FromStr for NetMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PTA" => Ok(NetMode::Pta),
            "TEA" => Ok(NetMode::Tea),
            _ => Err(Error::Format(format!("unknown mode {s:?}"))),
        }
    }
}

/// A finite set of nodes with a partial labelling of `n`-tuples of nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PreNetwork {
    pub nodes: BTreeSet<Node>,
    pub edges: BTreeMap<Tuple, Element>,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    tuple: Tuple,
    label: Element,
}

#[derive(Serialize, Deserialize)]
struct NetworkFile {
    nodes: Vec<Node>,
    edges: Vec<EdgeFile>,
}

impl PreNetwork {
    pub fn new() -> Self {
        PreNetwork::default()
    }

    pub fn label(&self, t: &[Node]) -> Option<Element> {
        self.edges.get(t).copied()
    }

    /// Adds an edge (and its nodes). Relabelling an existing edge is an error.
    pub fn insert(&mut self, t: Tuple, label: Element) -> Result<()> {
        if let Some(old) = self.edges.get(&t) {
            if *old != label {
                return Err(Error::Invariant(format!(
                    "edge {t:?} already labelled {old}, refusing {label}"
                )));
            }
            return Ok(());
        }
        self.nodes.extend(t.iter().copied());
        self.edges.insert(t, label);
        Ok(())
    }

    /// Copies every edge of `other` into `self`; labels must agree on overlaps.
    pub fn merge(&mut self, other: &PreNetwork) -> Result<()> {
        self.nodes.extend(other.nodes.iter().copied());
        for (t, &l) in &other.edges {
            self.insert(t.clone(), l)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("network serializes")
    }

    pub(crate) fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("network serializes")
    }

    fn to_file(&self) -> NetworkFile {
        NetworkFile {
            nodes: self.nodes.iter().copied().collect(),
            edges: self
                .edges
                .iter()
                .map(|(t, &label)| EdgeFile { tuple: t.clone(), label })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: NetworkFile = serde_json::from_str(text)?;
        let mut net = PreNetwork::new();
        net.nodes.extend(f.nodes);
        for e in f.edges {
            if !e.tuple.iter().all(|v| net.nodes.contains(v)) {
                return Err(Error::Format(format!("edge {:?} uses an undeclared node", e.tuple)));
            }
            if net.edges.insert(e.tuple.clone(), e.label).is_some() {
                return Err(Error::Format(format!("edge {:?} listed twice", e.tuple)));
            }
        }
        Ok(net)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkViolation {
    pub condition: String,
    pub edges: Vec<Tuple>,
    pub detail: String,
}

impl fmt::Display for NetworkViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.condition, self.edges, self.detail)
    }
}

pub const DOMAIN: &str = "domain closure";
pub const COND_A: &str = "condition (a)";
pub const COND_B: &str = "condition (b)";
pub const COND_C: &str = "condition (c)";
pub const LABEL_RANGE: &str = "label range";

fn generators(n: usize, mode: NetMode) -> Vec<Generator> {
    let mut gs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gs.push(Generator::Sub(i, j));
                if mode == NetMode::Tea && i < j {
                    gs.push(Generator::Swap(i, j));
                }
            }
        }
    }
    gs
}

/// Checks conditions (a), (b) and, in TEA mode, (c) for the listed edges
/// against the whole network, plus label range. Pairs for (b) are checked in
/// both orders whenever at least one member is listed.
pub fn check_edges(a: &FiniteBao, net: &PreNetwork, which: &[Tuple], mode: NetMode) -> Vec<NetworkViolation> {
    check_edges_by(a, |t| net.label(t), net.nodes.iter().copied(), which, mode)
}

/// [`check_edges`] over any labelling, e.g. a network with tentative additions.
pub fn check_edges_by<L, I>(a: &FiniteBao, label: L, nodes: I, which: &[Tuple], mode: NetMode) -> Vec<NetworkViolation>
where
    L: Fn(&[Node]) -> Option<Element>,
    I: IntoIterator<Item = Node>,
{
    let nodes: Vec<Node> = nodes.into_iter().collect();
    let n = a.n();
    let mut out = Vec::new();
    let one = a.one();
    for x in which {
        let Some(lx) = label(x) else { continue };
        if x.len() != n || !lx.is_subset(one) {
            out.push(NetworkViolation {
                condition: LABEL_RANGE.into(),
                edges: vec![x.clone()],
                detail: format!("label {lx} on a tuple of length {}", x.len()),
            });
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let below = match a.diag(i, j) {
                    Ok(d) => lx.is_subset(d),
                    Err(e) => {
                        out.push(NetworkViolation {
                            condition: COND_A.into(),
                            edges: vec![x.clone()],
                            detail: e.to_string(),
                        });
                        return out;
                    }
                };
                if below != (x[i] == x[j]) {
                    out.push(NetworkViolation {
                        condition: COND_A.into(),
                        edges: vec![x.clone()],
                        detail: format!("label {lx} ≤ d_{i}{j} is {below} but the nodes say {}", x[i] == x[j]),
                    });
                }
            }
        }
        for i in 0..n {
            for &z in &nodes {
                let mut y = x.clone();
                y[i] = z;
                let Some(ly) = label(&y) else { continue };
                for (p, q, lp, lq) in [(x, &y, lx, ly), (&y, x, ly, lx)] {
                    if (lp & a.c_unchecked(i, lq)).is_empty() {
                        out.push(NetworkViolation {
                            condition: COND_B.into(),
                            edges: vec![p.clone(), q.clone()],
                            detail: format!("N·c_{i}N' = 0 for labels {lp}, {lq}"),
                        });
                    }
                }
            }
        }
        if mode == NetMode::Tea {
            for i in 0..n {
                for j in i + 1..n {
                    let y = FiniteTransformation::swap(n, i, j).act(x);
                    let expected = match a.swap(i, j, lx) {
                        Ok(e) => e,
                        Err(e) => {
                            out.push(NetworkViolation {
                                condition: COND_C.into(),
                                edges: vec![x.clone()],
                                detail: e.to_string(),
                            });
                            return out;
                        }
                    };
                    if let Some(ly) = label(&y) {
                        if ly != expected {
                            out.push(NetworkViolation {
                                condition: COND_C.into(),
                                edges: vec![x.clone(), y],
                                detail: format!("label {ly} but s_{i}{j} gives {expected}"),
                            });
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|p, q| (&p.condition, &p.edges).cmp(&(&q.condition, &q.edges)));
    out.dedup();
    out
}

/// Edges whose generator images fall outside the domain.
pub fn check_domain(net: &PreNetwork, n: usize, mode: NetMode) -> Vec<NetworkViolation> {
    let gs = generators(n, mode);
    let mut out = Vec::new();
    for x in net.edges.keys() {
        if x.len() != n {
            continue;
        }
        for g in &gs {
            let y = g.transformation(n).act(x);
            if !net.edges.contains_key(&y) {
                out.push(NetworkViolation {
                    condition: DOMAIN.into(),
                    edges: vec![x.clone(), y],
                    detail: format!("{g}|x̄ is not an edge"),
                });
            }
        }
    }
    out
}

/// Empty iff `net` is a network over `a` in the given mode.
pub fn check_network(a: &FiniteBao, net: &PreNetwork, mode: NetMode) -> Vec<NetworkViolation> {
    let mut out = check_domain(net, a.n(), mode);
    let all: Vec<Tuple> = net.edges.keys().cloned().collect();
    out.extend(check_edges(a, net, &all, mode));
    out
}

/// `t^i_j x = d_ij · c_i x`, and `t^i_i x = x`.
pub fn t_op(a: &FiniteBao, i: usize, j: usize, x: Element) -> Result<Element> {
    if i == j {
        a.dim().check(i)?;
        return Ok(x);
    }
    Ok(a.diag(i, j)? & a.c(i, x)?)
}

/// The t-word matching `word` (all generators must be `[i|j]`): the last
/// letter acts first, so an atom for a tuple `ȳ` goes to the atom for `ŵ|ȳ`.
pub fn t_word(a: &FiniteBao, word: &SubstWord, x: Element) -> Result<Element> {
    word.iter().rev().try_fold(x, |acc, g| match *g {
        Generator::Sub(i, j) => t_op(a, i, j, acc),
        Generator::Swap(..) => Err(Error::Precondition(format!("t-words have no transposition {g}"))),
    })
}

fn range(x: &[Node]) -> Vec<Node> {
    let mut r: Vec<Node> = x.to_vec();
    r.sort_unstable();
    r.dedup();
    r
}

/// Every `n`-tuple over `nodes`, lexicographically.
pub fn tuples_over(nodes: &[Node], n: usize) -> Vec<Tuple> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                nodes.iter().map(move |&v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
    }
    out
}

/// A transformation `ρ` with `ρ|x̄ = ȳ`, choosing the least index for each
/// value; `None` if `ȳ` leaves the range of `x̄`.
pub fn reach(x: &[Node], y: &[Node]) -> Option<FiniteTransformation> {
    let map = y
        .iter()
        .map(|v| x.iter().position(|u| u == v))
        .collect::<Option<Vec<_>>>()?;
    FiniteTransformation::new(map).ok()
}

/// A substitution word `w` with `ŵ|x̄ = ȳ`, certified by re-applying it.
pub fn word_to(x: &[Node], y: &[Node]) -> Option<SubstWord> {
    let rho = reach(x, y)?;
    let w = substitution_word(&rho)?;
    (crate::transform::hat(&w, x.len()).act(x) == y).then_some(w)
}

fn check_profile(a: &FiniteBao, atom: Element, x: &[Node]) -> Result<()> {
    let n = a.n();
    if atom.as_atom().is_none() || !atom.is_subset(a.one()) {
        return Err(Error::Precondition(format!("{atom} is not an atom")));
    }
    if x.len() != n {
        return Err(Error::Precondition(format!("x̄ must have {n} nodes")));
    }
    for i in 0..n {
        for j in 0..n {
            if (x[i] == x[j]) != atom.is_subset(a.diag(i, j)?) {
                return Err(Error::Precondition(format!(
                    "x_{i} = x_{j} must hold exactly when {atom} ≤ d_{i}{j}"
                )));
            }
        }
    }
    Ok(())
}

fn atomic(label: Element, what: &str) -> Result<Element> {
    label
        .as_atom()
        .map(|_| label)
        .ok_or_else(|| Error::Invariant(format!("{what} produced the non-atom {label}")))
}

/// The partial transposition network on tuples over `Range(x̄)` with fewer
/// than `n` distinct nodes.
pub fn build_pt(a: &FiniteBao, atom: Element, x: &[Node]) -> Result<PreNetwork> {
    check_profile(a, atom, x)?;
    let n = a.n();
    let mut net = PreNetwork::new();
    for y in tuples_over(&range(x), n) {
        if range(&y).len() == n {
            continue;
        }
        let w = word_to(x, &y).ok_or_else(|| Error::Invariant(format!("{y:?} not reachable from {x:?}")))?;
        let label = atomic(t_word(a, &w, atom)?, "a t-word")?;
        net.insert(y, label)?;
    }
    net.nodes.extend(x.iter().copied());
    Ok(net)
}

/// A permutation `σ` with `σ|r̄ = ȳ`, by greedy matching of equal nodes.
fn matching_permutation(r: &[Node], y: &[Node]) -> Option<FiniteTransformation> {
    let mut used = vec![false; r.len()];
    let map = y
        .iter()
        .map(|v| {
            let m = (0..r.len()).find(|&m| !used[m] && r[m] == *v)?;
            used[m] = true;
            Some(m)
        })
        .collect::<Option<Vec<_>>>()?;
    FiniteTransformation::new(map).ok()
}

fn sorted(t: &[Node]) -> Tuple {
    let mut s = t.to_vec();
    s.sort_unstable();
    s
}

/// The transposition network on all tuples over `Range(x̄)`. Each class of
/// tuples under permutation has one representative: `x̄` for its own class,
/// the lexicographically least member otherwise. A tuple `σ|r̄` gets
/// `s_{σ⁻¹}` of the representative's label.
pub fn build_t(a: &FiniteBao, atom: Element, x: &[Node]) -> Result<PreNetwork> {
    check_profile(a, atom, x)?;
    let n = a.n();
    let all = tuples_over(&range(x), n);
    let mut reps: BTreeMap<Tuple, (Tuple, Element)> = BTreeMap::new();
    let own = sorted(x);
    reps.insert(own, (x.to_vec(), atom));
    let mut net = PreNetwork::new();
    for y in &all {
        let key = sorted(y);
        if !reps.contains_key(&key) {
            let w = word_to(x, y).ok_or_else(|| {
                Error::Invariant(format!("representative {y:?} not reachable from {x:?}"))
            })?;
            let label = atomic(t_word(a, &w, atom)?, "a t-word")?;
            reps.insert(key.clone(), (y.clone(), label));
        }
        let (r, lr) = &reps[&key];
        let sigma = matching_permutation(r, y).expect("same multiset");
        let inv = sigma.inverse().expect("permutation");
        let label = atomic(s_tau(a, &inv, *lr)?, "a transposition image")?;
        net.insert(y.clone(), label)?;
    }
    Ok(net)
}

/// Failures of the atom-level consequences of the partial transposition axioms:
/// `t^i_j x ≤ d_ij`; `x ≤ d_ij ⇒ t^k_i x ≤ d_ij·d_ik·d_jk`;
/// `a ≤ c_i b ⇔ c_i a = c_i b` for atoms; `c_i t^i_j x = c_i x`.
/// Every element is visited.
pub fn atom_lemma_report(a: &FiniteBao) -> Result<Vec<String>> {
    let n = a.n();
    let mut out = Vec::new();
    let d = |i, j| a.diag(i, j);
    for x in a.elements() {
        for i in 0..n {
            for j in 0..n {
                let t = t_op(a, i, j, x)?;
                if !t.is_subset(d(i, j)?) {
                    out.push(format!("(i) t^{i}_{j} {x} = {t} is not below d_{i}{j}"));
                }
                if a.c(i, t)? != a.c(i, x)? {
                    out.push(format!("(iv) c_{i} t^{i}_{j} {x} ≠ c_{i} {x}"));
                }
                if x.is_subset(d(i, j)?) {
                    let bound = d(i, j)?;
                    for k in 0..n {
                        let b = bound & d(i, k)? & d(j, k)?;
                        if !t_op(a, k, i, x)?.is_subset(b) {
                            out.push(format!("(ii) t^{k}_{i} {x} is not below d_{i}{j}·d_{i}{k}·d_{j}{k}"));
                        }
                    }
                }
            }
        }
    }
    for i in 0..n {
        for p in a.atoms() {
            for q in a.atoms() {
                let lhs = p.is_subset(a.c(i, q)?);
                let rhs = a.c(i, p)? == a.c(i, q)?;
                if lhs != rhs {
                    out.push(format!("(iii) {p} ≤ c_{i} {q} is {lhs} but c_{i}-equality is {rhs}"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::Dimension;
    use crate::setalg::{abstract_unit, SetClass, Unit};

    fn square(n: usize) -> (Unit, FiniteBao) {
        let v = Unit::full(Dimension::new(n).unwrap(), 2).unwrap();
        let a = abstract_unit(&v, SetClass::Pers).unwrap();
        (v, a)
    }

    fn atom_of(v: &Unit, t: &[usize]) -> Element {
        Element::singleton(v.index_of(t).unwrap())
    }

    #[test]
    fn t_op_examples() {
        let (v, a) = square(2);
        assert_eq!(t_op(&a, 0, 1, atom_of(&v, &[1, 0])).unwrap(), atom_of(&v, &[0, 0]));
        for x in a.elements() {
            assert_eq!(t_op(&a, 1, 1, x).unwrap(), x);
            assert!(t_op(&a, 0, 1, x).unwrap().is_subset(a.diag(0, 1).unwrap()));
        }
    }

    /// Node `k` of x̄ = (0,1,…) stands for coordinate `k` of the atom's tuple.
    fn meaning(v: &Unit, atom: Element, x: &[Node], y: &[Node]) -> Element {
        let base = &v.tuples()[atom.as_atom().unwrap()];
        let image: Vec<usize> = y.iter().map(|node| base[x.iter().position(|u| u == node).unwrap()]).collect();
        atom_of(v, &image)
    }

    #[test]
    fn pt_network_on_the_square() {
        let (v, a) = square(2);
        let atom = atom_of(&v, &[0, 1]);
        let net = build_pt(&a, atom, &[0, 1]).unwrap();
        let domain: Vec<_> = net.edges.keys().cloned().collect();
        assert_eq!(domain, vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(net.label(&[0, 0]).unwrap(), atom_of(&v, &[0, 0]));
        assert_eq!(net.label(&[1, 1]).unwrap(), atom_of(&v, &[1, 1]));
        assert!(matches!(
            build_pt(&a, atom_of(&v, &[1, 1]), &[0, 1]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn constructors_match_tuple_meaning() {
        for n in [2, 3] {
            let (v, a) = square(n);
            for (k, t) in v.tuples().iter().enumerate() {
                let atom = Element::singleton(k);
                // nodes named after the first coordinate holding each value
                let x: Vec<Node> = (0..n).map(|i| t.iter().position(|u| *u == t[i]).unwrap()).collect();
                let pt = build_pt(&a, atom, &x).unwrap();
                let tn = build_t(&a, atom, &x).unwrap();
                for (y, &l) in pt.edges.iter().chain(tn.edges.iter()) {
                    assert_eq!(l, meaning(&v, atom, &x, y), "n={n} atom {t:?} edge {y:?}");
                }
                assert!(check_network(&a, &tn, NetMode::Tea).is_empty());
                let pt_report = check_network(&a, &pt, NetMode::Pta);
                assert!(pt_report.is_empty(), "{pt_report:?}");
            }
        }
    }

    #[test]
    fn t_network_classes() {
        let (v, a) = square(2);
        let atom = atom_of(&v, &[0, 1]);
        let net = build_t(&a, atom, &[0, 1]).unwrap();
        assert_eq!(net.edges.len(), 4);
        assert_eq!(net.label(&[1, 0]).unwrap(), a.swap(0, 1, atom).unwrap());
        let diag = atom_of(&v, &[1, 1]);
        let single = build_t(&a, diag, &[0, 0]).unwrap();
        assert_eq!(single.edges.len(), 1);
        assert_eq!(single.label(&[0, 0]), Some(diag));
    }

    #[test]
    fn detects_constructed_violations() {
        let (v, a) = square(2);
        let mut net = PreNetwork::new();
        net.insert(vec![0, 0], atom_of(&v, &[0, 1])).unwrap();
        let r = check_network(&a, &net, NetMode::Pta);
        assert!(r.iter().any(|x| x.condition == COND_A));

        let mut net = build_t(&a, atom_of(&v, &[0, 1]), &[0, 1]).unwrap();
        net.edges.insert(vec![1, 0], atom_of(&v, &[0, 1]));
        let r = check_network(&a, &net, NetMode::Tea);
        assert!(r.iter().any(|x| x.condition == COND_C));

        let mut net = PreNetwork::new();
        net.insert(vec![0, 1], atom_of(&v, &[0, 1])).unwrap();
        let r = check_network(&a, &net, NetMode::Pta);
        assert!(r.iter().any(|x| x.condition == DOMAIN));
    }

    #[test]
    fn atom_lemma_holds_on_squares() {
        for n in [2, 3] {
            let (_, a) = square(n);
            assert!(atom_lemma_report(&a).unwrap().is_empty());
        }
    }

    #[test]
    fn network_json_round_trip() {
        let (v, a) = square(2);
        let net = build_t(&a, atom_of(&v, &[0, 1]), &[0, 1]).unwrap();
        let text = net.to_json();
        assert_eq!(PreNetwork::from_json(&text).unwrap(), net);
    }
}
