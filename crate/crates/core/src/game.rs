//! The representation game: ∀'s fair scheduler and ∃'s strategy, which keeps
//! an atomic companion network `M` next to the public network `N`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bao::{Element, FiniteBao};
use crate::error::{Error, Result};
use crate::networks::{build_pt, build_t, check_edges_by, check_network, NetMode, Node, PreNetwork, Tuple};
use crate::terms::s_tau;
use crate::transform::{FiniteTransformation, Generator};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// `N` is kept equal to the atomic `M`; split moves are never scheduled.
    #[default]
    AtomicFast,
    Faithful,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atomic-fast" => Ok(Strategy::AtomicFast),
            "faithful" => Ok(Strategy::Faithful),
            _ => Err(Error::Format(format!("unknown strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub mode: NetMode,
    pub strategy: Strategy,
    pub max_rounds: usize,
    pub max_nodes: usize,
    /// Try to answer moves with existing nodes before creating fresh ones.
    pub reuse: bool,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig { mode: NetMode::Pta, strategy: Strategy::AtomicFast, max_rounds: 10_000, max_nodes: 512, reuse: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Place a non-zero element somewhere.
    Place { element: Element },
    /// Decide the edge for `element` or its complement.
    Split { edge: Tuple, element: Element },
    /// Demand an `index`-variant of `edge` carrying `element`.
    Witness { edge: Tuple, index: usize, element: Element },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Place { element } => write!(f, "place {element}"),
            Move::Split { edge, element } => write!(f, "split {edge:?} by {element}"),
            Move::Witness { edge, index, element } => write!(f, "witness {edge:?} at {index} for {element}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obligation {
    pub edge: Tuple,
    pub index: usize,
    pub atom: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub round: usize,
    #[serde(rename = "move")]
    pub mv: Move,
    pub response: String,
    pub node_count: usize,
    pub pending_obligations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Saturated,
    BudgetExhausted { pending: usize },
}

impl Outcome {
    pub fn is_saturated(&self) -> bool {
        matches!(self, Outcome::Saturated)
    }

    pub fn pending(&self) -> usize {
        match self {
            Outcome::Saturated => 0,
            Outcome::BudgetExhausted { pending } => *pending,
        }
    }
}

/// A finished play: its transcript and the final networks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Play {
    pub config: GameConfig,
    pub rounds: Vec<Round>,
    pub outcome: Outcome,
    pub m: PreNetwork,
    pub n: PreNetwork,
}

impl Play {
    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "config": self.config,
            "rounds": self.rounds,
            "outcome": self.outcome,
            "final_m": self.m.to_value(),
            "final_n": self.n.to_value(),
        });
        serde_json::to_string_pretty(&v).expect("play serializes")
    }
}

/// Key under which an edge witnesses obligations: the edge with coordinate
/// `i` blanked, the index and the label.
type WitnessKey = (Tuple, usize, Element);

fn witness_key(t: &[Node], i: usize, label: Element) -> WitnessKey {
    let mut k = t.to_vec();
    k[i] = Node::MAX;
    (k, i, label)
}

fn variant(x: &[Node], i: usize, z: Node) -> Tuple {
    let mut t = x.to_vec();
    t[i] = z;
    t
}

pub struct GameState<'a> {
    a: &'a FiniteBao,
    cfg: GameConfig,
    round: usize,
    m: PreNetwork,
    n: PreNetwork,
    next_atom: usize,
    splits: VecDeque<(Tuple, Element)>,
    obligations: VecDeque<Obligation>,
    witnessed: BTreeSet<WitnessKey>,
    permutations: Vec<FiniteTransformation>,
    rounds: Vec<Round>,
}

impl<'a> GameState<'a> {
    pub fn new(a: &'a FiniteBao, cfg: GameConfig) -> Result<Self> {
        let sig = a.signature();
        if !sig.has_c || !sig.has_d {
            return Err(Error::SignatureMismatch("the game needs cylindrifications and diagonals".into()));
        }
        if cfg.mode == NetMode::Tea && !sig.has_swap {
            return Err(Error::SignatureMismatch("TEA mode needs transpositions".into()));
        }
        let permutations = match cfg.mode {
            NetMode::Tea => FiniteTransformation::all(a.n()).filter(|t| t.is_permutation()).collect(),
            NetMode::Pta => Vec::new(),
        };
        Ok(GameState {
            a,
            cfg,
            round: 0,
            m: PreNetwork::new(),
            n: PreNetwork::new(),
            next_atom: 0,
            splits: VecDeque::new(),
            obligations: VecDeque::new(),
            witnessed: BTreeSet::new(),
            permutations,
            rounds: Vec::new(),
        })
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn m(&self) -> &PreNetwork {
        &self.m
    }

    pub fn n(&self) -> &PreNetwork {
        &self.n
    }

    pub fn rounds(&self) -> &[Round] {
        &self.rounds
    }

    fn faithful(&self) -> bool {
        self.cfg.strategy == Strategy::Faithful
    }

    fn is_witnessed(&self, o: &Obligation) -> bool {
        self.witnessed.contains(&witness_key(&o.edge, o.index, o.atom))
    }

    /// Moves ∀ still owes: unplaced atoms, queued splits and unwitnessed obligations.
    pub fn pending(&self) -> usize {
        (self.a.num_atoms() - self.next_atom)
            + self.splits.len()
            + self.obligations.iter().filter(|o| !self.is_witnessed(o)).count()
    }

    /// ∀'s next move; `None` once everything is placed, split and witnessed.
    pub fn schedule_forall(&mut self) -> Option<Move> {
        if self.next_atom < self.a.num_atoms() {
            self.next_atom += 1;
            return Some(Move::Place { element: self.a.atom(self.next_atom - 1) });
        }
        if let Some((edge, element)) = self.splits.pop_front() {
            return Some(Move::Split { edge, element });
        }
        while let Some(o) = self.obligations.pop_front() {
            if !self.is_witnessed(&o) {
                return Some(Move::Witness { edge: o.edge, index: o.index, element: o.atom });
            }
        }
        None
    }

    fn label_n(&self, t: &[Node]) -> Result<Element> {
        self.n.label(t).ok_or_else(|| Error::IllegalMove(format!("{t:?} is not an edge")))
    }

    fn label_m(&self, t: &[Node]) -> Element {
        self.m.label(t).expect("M and N share edges")
    }

    /// Checks the move against the current network.
    pub fn legal(&self, mv: &Move) -> Result<()> {
        let one = self.a.one();
        match mv {
            Move::Place { element } => {
                if element.is_empty() || !element.is_subset(one) {
                    return Err(Error::IllegalMove(format!("placement needs a non-zero element, got {element}")));
                }
            }
            Move::Split { edge, element } => {
                self.label_n(edge)?;
                if !element.is_subset(one) {
                    return Err(Error::IllegalMove(format!("{element} is not an element")));
                }
            }
            Move::Witness { edge, index, element } => {
                let l = self.label_n(edge)?;
                self.a.dim().check(*index)?;
                if !element.is_subset(one) || !l.is_subset(self.a.c(*index, *element)?) {
                    return Err(Error::IllegalMove(format!("N{edge:?} = {l} is not below c_{index} {element}")));
                }
            }
        }
        Ok(())
    }

    /// ∃'s answer. Returns a one-line summary of what changed.
    pub fn exists_respond(&mut self, mv: &Move) -> Result<String> {
        self.legal(mv)?;
        let summary = match mv {
            Move::Place { element } => self.place(*element)?,
            Move::Split { edge, element } => {
                self.split(edge, *element)?;
                "refined N".to_string()
            }
            Move::Witness { edge, index, element } => self.witness(edge, *index, *element)?,
        };
        self.round += 1;
        self.rounds.push(Round {
            round: self.round,
            mv: mv.clone(),
            response: summary.clone(),
            node_count: self.m.nodes.len(),
            pending_obligations: self.pending(),
        });
        Ok(summary)
    }

    fn fresh_nodes(&self, count: usize) -> Result<Node> {
        if self.m.nodes.len() + count > self.cfg.max_nodes {
            return Err(Error::Budget(format!("node budget {} reached", self.cfg.max_nodes)));
        }
        Ok(self.m.nodes.last().map_or(0, |v| v + 1))
    }

    /// The atomic network ∃ lays over `x̄` when it carries `atom`.
    fn local(&self, atom: Element, x: &[Node]) -> Result<PreNetwork> {
        match self.cfg.mode {
            NetMode::Pta => {
                let mut g = build_pt(self.a, atom, x)?;
                g.insert(x.to_vec(), atom)?;
                Ok(g)
            }
            NetMode::Tea => build_t(self.a, atom, x),
        }
    }

    fn place(&mut self, element: Element) -> Result<String> {
        if self.cfg.reuse {
            let found = self.m.edges.iter().find(|(_, l)| l.is_subset(element)).map(|(t, _)| t.clone());
            if let Some(t) = found {
                if self.faithful() {
                    self.narrow_family(&t, element)?;
                }
                return Ok(format!("reused edge {t:?}"));
            }
        }
        let atom = self.a.atom(element.least_atom().expect("legal placement is non-zero"));
        let n = self.a.n();
        let mut pattern = Vec::with_capacity(n);
        let mut distinct = 0;
        for k in 0..n {
            let mut same = None;
            for j in 0..k {
                if atom.is_subset(self.a.diag(j, k)?) {
                    same = Some(pattern[j]);
                    break;
                }
            }
            pattern.push(same.unwrap_or_else(|| {
                distinct += 1;
                distinct - 1
            }));
        }
        let base = self.fresh_nodes(distinct)?;
        let x: Tuple = pattern.iter().map(|p| base + p).collect();
        let g = self.local(atom, &x)?;
        let new: BTreeMap<Tuple, Element> = g.edges;
        let mut top = element;
        for i in 0..n {
            for j in 0..n {
                if x[i] == x[j] {
                    top = top & self.a.diag(i, j)?;
                }
            }
        }
        self.commit(new, &x, top)?;
        Ok(format!("placed {atom} on fresh {x:?}"))
    }

    /// `N(σ|x̄) ← N(σ|x̄) · s_{σ⁻¹} e` for the identity, and every permutation in TEA mode.
    fn narrow_family(&mut self, x: &[Node], e: Element) -> Result<()> {
        let mut updates = vec![(x.to_vec(), e)];
        for sigma in &self.permutations {
            let inv = sigma.inverse().expect("permutation");
            updates.push((sigma.act(x), s_tau(self.a, &inv, e)?));
        }
        for (t, e) in updates {
            let old = self.label_n(&t)?;
            let new = old & e;
            if !self.label_m(&t).is_subset(new) {
                return Err(Error::Invariant(format!("narrowing {t:?} would drop below M")));
            }
            self.n.edges.insert(t, new);
        }
        Ok(())
    }

    fn split(&mut self, x: &[Node], e: Element) -> Result<()> {
        if !self.faithful() {
            return Ok(());
        }
        let keep = if self.label_m(x).is_subset(e) { e } else { self.a.complement(e) };
        self.narrow_family(x, keep)
    }

    fn witness(&mut self, x: &[Node], i: usize, b: Element) -> Result<String> {
        let ax = self.label_m(x);
        for &z in &self.m.nodes {
            if let Some(l) = self.m.label(&variant(x, i, z)) {
                if l.is_subset(b) {
                    self.assert_witness(x, i, z, b)?;
                    return Ok(format!("witnessed by node {z}"));
                }
            }
        }
        let g = self.local(ax, x)?;
        for (t, &l) in &g.edges {
            if self.m.label(t) != Some(l) {
                return Err(Error::Invariant(format!("the network on {x:?} disagrees with M at {t:?}")));
            }
        }
        let candidates: Vec<Element> = (self.a.c(i, ax)? & b).atoms().map(Element::singleton).collect();
        if self.cfg.reuse {
            let nodes: Vec<Node> = self.m.nodes.iter().copied().collect();
            for z in nodes {
                let t = variant(x, i, z);
                if self.m.edges.contains_key(&t) {
                    continue;
                }
                for &bm in &candidates {
                    if let Some(new) = self.attach(&t, bm)? {
                        self.commit(new, &t, b)?;
                        self.assert_witness(x, i, z, b)?;
                        return Ok(format!("attached {bm} at {t:?}"));
                    }
                }
            }
        }
        let bm = *candidates
            .first()
            .ok_or_else(|| Error::Invariant(format!("no atom below c_{i} {ax} · {b}")))?;
        let z = self.fresh_nodes(1)?;
        let t = variant(x, i, z);
        let new = self
            .attach(&t, bm)?
            .ok_or_else(|| Error::Invariant(format!("amalgamating {bm} at {t:?} with M failed")))?;
        self.commit(new, &t, b)?;
        self.assert_witness(x, i, z, b)?;
        Ok(format!("new node {z} with {bm} at {t:?}"))
    }

    fn assert_witness(&self, x: &[Node], i: usize, z: Node, b: Element) -> Result<()> {
        let lt = self.m.label(&variant(x, i, z)).unwrap_or(Element::EMPTY);
        let ok = !lt.is_empty() && lt.is_subset(b) && self.label_m(x).is_subset(self.a.c(i, lt)?);
        if ok {
            Ok(())
        } else {
            Err(Error::Invariant(format!("node {z} does not witness {x:?} at {i} for {b}")))
        }
    }

    /// The edges the local network of `bm` over `t̄` adds to `M`, or `None`
    /// if it clashes with `M` or breaks a network condition.
    fn attach(&self, t: &[Node], bm: Element) -> Result<Option<BTreeMap<Tuple, Element>>> {
        let n = self.a.n();
        for p in 0..n {
            for q in 0..n {
                if (t[p] == t[q]) != bm.is_subset(self.a.diag(p, q)?) {
                    return Ok(None);
                }
            }
        }
        let g = self.local(bm, t)?;
        let mut new = BTreeMap::new();
        for (e, l) in g.edges {
            match self.m.label(&e) {
                Some(old) if old != l => return Ok(None),
                Some(_) => {}
                None => {
                    new.insert(e, l);
                }
            }
        }
        let which: Vec<Tuple> = new.keys().cloned().collect();
        let nodes = self.m.nodes.iter().copied().chain(t.iter().copied()).collect::<BTreeSet<_>>();
        let label = |e: &[Node]| self.m.label(e).or_else(|| new.get(e).copied());
        if !check_edges_by(self.a, label, nodes, &which, self.cfg.mode).is_empty() {
            return Ok(None);
        }
        Ok(Some(new))
    }

    /// Adds `new` to `M` and to `N`, where the edge `top` gets the requested
    /// element (narrowed to its diagonal profile), its permutations the
    /// matching images and every other new edge the meet of its diagonals.
    fn commit(&mut self, new: BTreeMap<Tuple, Element>, top: &[Node], request: Element) -> Result<()> {
        let n = self.a.n();
        let mut n_labels: BTreeMap<Tuple, Element> = BTreeMap::new();
        if self.faithful() {
            let mut top_label = request;
            for i in 0..n {
                for j in 0..n {
                    if top[i] == top[j] {
                        top_label = top_label & self.a.diag(i, j)?;
                    }
                }
            }
            if new.contains_key(top) {
                n_labels.insert(top.to_vec(), top_label);
            }
            for sigma in &self.permutations {
                let y = sigma.act(top);
                if new.contains_key(&y) {
                    let img = s_tau(self.a, &sigma.inverse().expect("permutation"), top_label)?;
                    let slot = n_labels.entry(y).or_insert(self.a.one());
                    *slot = *slot & img;
                }
            }
            for e in new.keys() {
                if !n_labels.contains_key(e) {
                    let mut l = self.a.one();
                    for i in 0..n {
                        for j in 0..n {
                            if e[i] == e[j] {
                                l = l & self.a.diag(i, j)?;
                            }
                        }
                    }
                    n_labels.insert(e.clone(), l);
                }
            }
        }
        for (e, &l) in &new {
            self.m.insert(e.clone(), l)?;
            let nl = if self.faithful() { n_labels[e] } else { l };
            if !l.is_subset(nl) {
                return Err(Error::Invariant(format!("N{e:?} = {nl} is not above M = {l}")));
            }
            self.n.insert(e.clone(), nl)?;
            for i in 0..n {
                self.witnessed.insert(witness_key(e, i, l));
            }
        }
        self.check_new(&new)?;
        for (e, &l) in &new {
            if self.faithful() {
                for bits in 0..(1u64 << self.a.num_atoms()) {
                    self.splits.push_back((e.clone(), Element::from_bits(bits)));
                }
            }
            for i in 0..n {
                for b in self.a.atoms() {
                    let o = Obligation { edge: e.clone(), index: i, atom: b };
                    if l.is_subset(self.a.c(i, b)?) && !self.is_witnessed(&o) {
                        self.obligations.push_back(o);
                    }
                }
            }
        }
        Ok(())
    }

    /// Domain closure and the edge conditions for freshly added edges.
    fn check_new(&self, new: &BTreeMap<Tuple, Element>) -> Result<()> {
        let n = self.a.n();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    gens.push(Generator::Sub(i, j));
                    if self.cfg.mode == NetMode::Tea && i < j {
                        gens.push(Generator::Swap(i, j));
                    }
                }
            }
        }
        for e in new.keys() {
            for g in &gens {
                let y = g.transformation(n).act(e);
                if !self.m.edges.contains_key(&y) {
                    return Err(Error::Invariant(format!("{g}|{e:?} fell outside the domain of M")));
                }
            }
        }
        let which: Vec<Tuple> = new.keys().cloned().collect();
        let report = check_edges_by(self.a, |t| self.m.label(t), self.m.nodes.iter().copied(), &which, self.cfg.mode);
        match report.first() {
            None => Ok(()),
            Some(v) => Err(Error::Invariant(format!("M stopped being a network: {v}"))),
        }
    }

    fn finish(self, outcome: Outcome) -> Play {
        Play { config: self.cfg, rounds: self.rounds, outcome, m: self.m, n: self.n }
    }
}

/// Plays until ∀ runs out of moves or a budget is hit. Deterministic.
pub fn play(a: &FiniteBao, cfg: GameConfig) -> Result<Play> {
    let mut st = GameState::new(a, cfg)?;
    loop {
        if st.round >= st.cfg.max_rounds {
            let pending = st.pending();
            if pending > 0 {
                return Ok(st.finish(Outcome::BudgetExhausted { pending }));
            }
        }
        let Some(mv) = st.schedule_forall() else { break };
        match st.exists_respond(&mv) {
            Ok(_) => {}
            Err(Error::Budget(_)) => {
                let pending = st.pending() + 1;
                return Ok(st.finish(Outcome::BudgetExhausted { pending }));
            }
            Err(e) => return Err(e),
        }
    }
    let report = check_network(a, &st.m, st.cfg.mode);
    if let Some(v) = report.first() {
        return Err(Error::Invariant(format!("final M is not a network: {v}")));
    }
    Ok(st.finish(Outcome::Saturated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::Dimension;
    use crate::setalg::{abstract_unit, SetClass, Unit};

    fn square(n: usize, class: SetClass) -> (Unit, FiniteBao) {
        let v = Unit::full(Dimension::new(n).unwrap(), 2).unwrap();
        let a = abstract_unit(&v, class).unwrap();
        (v, a)
    }

    #[test]
    fn first_move_is_atom_zero() {
        let (_, a) = square(2, SetClass::Crs);
        let mut st = GameState::new(&a, GameConfig::default()).unwrap();
        assert_eq!(st.schedule_forall(), Some(Move::Place { element: a.atom(0) }));
    }

    #[test]
    fn zero_placement_is_illegal() {
        let (_, a) = square(2, SetClass::Crs);
        let mut st = GameState::new(&a, GameConfig::default()).unwrap();
        let err = st.exists_respond(&Move::Place { element: Element::EMPTY }).unwrap_err();
        assert!(matches!(err, Error::IllegalMove(_)));
    }

    #[test]
    fn placing_an_off_diagonal_atom() {
        let (v, a) = square(2, SetClass::Crs);
        let mut st = GameState::new(&a, GameConfig::default()).unwrap();
        let atom = Element::singleton(v.index_of(&[0, 1]).unwrap());
        st.exists_respond(&Move::Place { element: atom }).unwrap();
        assert_eq!(st.m().nodes.len(), 2);
        assert_eq!(st.m().edges.len(), 3);
        assert!(check_network(&a, st.m(), NetMode::Pta).is_empty());
    }

    #[test]
    fn existing_witness_adds_no_node() {
        let (v, a) = square(2, SetClass::Crs);
        let mut st = GameState::new(&a, GameConfig::default()).unwrap();
        let at = |t: &[usize]| Element::singleton(v.index_of(t).unwrap());
        st.exists_respond(&Move::Place { element: at(&[0, 1]) }).unwrap();
        let before = st.m().nodes.len();
        // (1,1) sits on (x1,x1) and shares its 0-class with (0,1)
        st.exists_respond(&Move::Witness { edge: vec![0, 1], index: 0, element: at(&[1, 1]) }).unwrap();
        assert_eq!(st.m().nodes.len(), before);
    }

    #[test]
    fn square_plays_saturate_in_both_modes() {
        for (mode, class) in [(NetMode::Pta, SetClass::Crs), (NetMode::Tea, SetClass::Pers)] {
            let (_, a) = square(2, class);
            let p = play(&a, GameConfig { mode, ..GameConfig::default() }).unwrap();
            assert!(p.outcome.is_saturated(), "{mode:?}: {:?}", p.outcome);
            assert!(check_network(&a, &p.m, mode).is_empty());
        }
    }

    #[test]
    fn faithful_and_fast_agree_on_m() {
        for (mode, class) in [(NetMode::Pta, SetClass::Crs), (NetMode::Tea, SetClass::Pers)] {
            let (_, a) = square(2, class);
            let fast = play(&a, GameConfig { mode, ..GameConfig::default() }).unwrap();
            let cfg = GameConfig { mode, strategy: Strategy::Faithful, ..GameConfig::default() };
            let faithful = play(&a, cfg).unwrap();
            assert!(faithful.outcome.is_saturated());
            assert_eq!(fast.m, faithful.m);
            for (e, l) in &faithful.m.edges {
                assert!(l.is_subset(faithful.n.label(e).unwrap()));
            }
        }
    }

    #[test]
    fn single_atom_saturates_fast() {
        let v = Unit::new(Dimension::new(3).unwrap(), 2, vec![vec![0, 0, 0]]).unwrap();
        let a = abstract_unit(&v, SetClass::Pers).unwrap();
        let p = play(&a, GameConfig::default()).unwrap();
        assert!(p.outcome.is_saturated());
        assert!(p.rounds.len() <= 4);
    }

    #[test]
    fn starved_budget_reports_pending() {
        let (_, a) = square(2, SetClass::Crs);
        let p = play(&a, GameConfig { max_rounds: 1, ..GameConfig::default() }).unwrap();
        assert!(p.outcome.pending() > 0);
    }

    #[test]
    fn transcripts_are_deterministic() {
        let (_, a) = square(2, SetClass::Pers);
        let cfg = GameConfig { mode: NetMode::Tea, ..GameConfig::default() };
        assert_eq!(play(&a, cfg.clone()).unwrap().to_json(), play(&a, cfg).unwrap().to_json());
    }
}
