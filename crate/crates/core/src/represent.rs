//! Representations read off a play, and their verification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bao::{Element, FiniteBao};
use crate::error::{Error, Result};
use crate::game::Play;
use crate::networks::{NetMode, Tuple};
use crate::transform::FiniteTransformation;

/// `h` on atoms, as sorted index lists into `edges`. An edge lies in `h(x)`
/// iff its (atomic) label is below `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representation {
    pub edges: Vec<Tuple>,
    pub h_atoms: Vec<Vec<usize>>,
    pub saturated: bool,
    pub pending: usize,
}

pub fn extract(a: &FiniteBao, play: &Play) -> Representation {
    let edges: Vec<Tuple> = play.m.edges.keys().cloned().collect();
    let mut h_atoms = vec![Vec::new(); a.num_atoms()];
    for (k, label) in play.m.edges.values().enumerate() {
        for atom in label.atoms() {
            h_atoms[atom].push(k);
        }
    }
    Representation { edges, h_atoms, saturated: play.outcome.is_saturated(), pending: play.outcome.pending() }
}

impl Representation {
    pub fn from_json(text: &str) -> Result<Self> {
        let r: Representation = serde_json::from_str(text)?;
        let n = r.edges.first().map_or(0, Vec::len);
        if r.edges.iter().any(|e| e.len() != n) {
            return Err(Error::Format("edges of different lengths".into()));
        }
        if r.h_atoms.iter().flatten().any(|&k| k >= r.edges.len()) {
            return Err(Error::Format("h_atoms refers to a missing edge".into()));
        }
        Ok(r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation serializes")
    }

    /// `h(x)` as a set of edge indices.
    pub fn h(&self, x: Element) -> BTreeSet<usize> {
        x.atoms()
            .filter_map(|k| self.h_atoms.get(k))
            .flatten()
            .copied()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepCheck {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<RepCheck>,
    /// Number of distinct `h`-images of atoms; the image algebra has `2^k` elements.
    pub image_atoms: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &RepCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const INJECTIVE: &str = "injective";
pub const BOOLEAN: &str = "boolean homomorphism";
pub const DIAGONALS: &str = "diagonals";
pub const CYLINDRIFICATIONS: &str = "cylindrifications";
pub const SUBSTITUTIONS: &str = "substitutions";
pub const UNIT: &str = "unit classification";

fn check(name: &str, failures: Vec<String>) -> RepCheck {
    RepCheck { name: name.into(), passed: failures.is_empty(), failures }
}

/// Runs every check against `a`; failures are collected, never raised.
pub fn verify(a: &FiniteBao, rep: &Representation, mode: NetMode) -> VerifyReport {
    let n = a.n();
    let edges = &rep.edges;
    let all: BTreeSet<usize> = (0..edges.len()).collect();
    let index = |t: &Tuple| edges.binary_search(t).ok();
    let sorted = edges.windows(2).all(|w| w[0] < w[1]);
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    let atoms = a.num_atoms();
    if rep.h_atoms.len() != atoms {
        fails.push(format!("h is given on {} atoms, the algebra has {atoms}", rep.h_atoms.len()));
    }
    let images: Vec<BTreeSet<usize>> = (0..atoms).map(|k| rep.h(Element::singleton(k))).collect();
    for p in 0..atoms {
        for q in p + 1..atoms {
            if images[p] == images[q] {
                fails.push(format!("atoms {p} and {q} have the same image"));
            }
        }
    }
    let image_atoms = images.iter().filter(|s| !s.is_empty()).collect::<BTreeSet<_>>().len();
    checks.push(check(INJECTIVE, fails));

    let mut fails = Vec::new();
    for p in 0..atoms {
        for q in p + 1..atoms {
            if let Some(k) = images[p].intersection(&images[q]).next() {
                fails.push(format!("edge {:?} lies in the images of atoms {p} and {q}", edges[*k]));
            }
        }
    }
    let covered: BTreeSet<usize> = images.iter().flatten().copied().collect();
    if let Some(k) = all.difference(&covered).next() {
        fails.push(format!("edge {:?} lies in no atom's image, so h(1) ≠ E", edges[*k]));
    }
    if !sorted {
        fails.push("edges are not strictly sorted".into());
    }
    checks.push(check(BOOLEAN, fails));

    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let Ok(d) = a.diag(i, j) else {
                fails.push(format!("the algebra has no d_{i}{j}"));
                continue;
            };
            let want: BTreeSet<usize> = all.iter().copied().filter(|&k| edges[k][i] == edges[k][j]).collect();
            if rep.h(d) != want {
                fails.push(format!("h(d_{i}{j}) differs from the edges with equal coordinates {i}, {j}"));
            }
        }
    }
    checks.push(check(DIAGONALS, fails));

    let mut fails = Vec::new();
    let nodes: BTreeSet<usize> = edges.iter().flatten().copied().collect();
    for i in 0..n {
        for p in 0..atoms {
            let hp = &images[p];
            let mut cyl = BTreeSet::new();
            for &k in hp {
                for &z in &nodes {
                    let mut y = edges[k].clone();
                    y[i] = z;
                    if let Some(m) = index(&y) {
                        cyl.insert(m);
                    }
                }
            }
            let hc = rep.h(a.c_unchecked(i, Element::singleton(p)));
            if !cyl.is_subset(&hc) {
                fails.push(format!("C_{i} h({p}) is not inside h(c_{i} {p})"));
            } else if cyl != hc {
                let why = if rep.saturated {
                    String::new()
                } else {
                    format!(" (play unsaturated, {} pending)", rep.pending)
                };
                fails.push(format!("h(c_{i} {p}) has edges with no {i}-variant in h({p}){why}"));
            }
        }
    }
    checks.push(check(CYLINDRIFICATIONS, fails));

    let mut fails = Vec::new();
    let preimage = |tau: &FiniteTransformation, x: &BTreeSet<usize>| -> BTreeSet<usize> {
        all.iter()
            .copied()
            .filter(|&k| index(&tau.act(&edges[k])).is_some_and(|m| x.contains(&m)))
            .collect()
    };
    for i in 0..n {
        for j in 0..n {
            for p in 0..atoms {
                let x = Element::singleton(p);
                if let Ok(s) = a.sub(i, j, x) {
                    if rep.h(s) != preimage(&FiniteTransformation::sub(n, i, j), &images[p]) {
                        fails.push(format!("h(s^{i}_{j} {p}) ≠ S^{i}_{j} h({p})"));
                    }
                }
                if mode == NetMode::Tea && i < j {
                    match a.swap(i, j, x) {
                        Ok(s) => {
                            if rep.h(s) != preimage(&FiniteTransformation::swap(n, i, j), &images[p]) {
                                fails.push(format!("h(s_{i}{j} {p}) ≠ S_{i}{j} h({p})"));
                            }
                        }
                        Err(e) => fails.push(e.to_string()),
                    }
                }
            }
        }
    }
    checks.push(check(SUBSTITUTIONS, fails));

    let mut fails = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut gens = vec![("substitution", FiniteTransformation::sub(n, i, j))];
            if mode == NetMode::Tea && i < j {
                gens.push(("transposition", FiniteTransformation::swap(n, i, j)));
            }
            for (what, tau) in gens {
                if let Some(k) = all.iter().find(|&&k| index(&tau.act(&edges[k])).is_none()) {
                    fails.push(format!("{what} {tau}|{:?} leaves E", edges[*k]));
                }
            }
        }
    }
    checks.push(check(UNIT, fails));

    VerifyReport { checks, image_atoms }
}

/// True iff the atoms' images cover `E`.
pub fn check_complete(rep: &Representation) -> bool {
    let covered: BTreeSet<usize> = rep.h_atoms.iter().flatten().copied().collect();
    covered.len() == rep.edges.len() && covered.iter().all(|&k| k < rep.edges.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::Dimension;
    use crate::game::{play, GameConfig};
    use crate::setalg::{abstract_unit, SetClass, Unit};

    fn square_rep(mode: NetMode, class: SetClass, cfg: GameConfig) -> (FiniteBao, Representation) {
        let v = Unit::full(Dimension::new(2).unwrap(), 2).unwrap();
        let a = abstract_unit(&v, class).unwrap();
        let p = play(&a, GameConfig { mode, ..cfg }).unwrap();
        let r = extract(&a, &p);
        (a, r)
    }

    #[test]
    fn saturated_square_verifies() {
        for (mode, class) in [(NetMode::Pta, SetClass::Crs), (NetMode::Tea, SetClass::Pers)] {
            let (a, r) = square_rep(mode, class, GameConfig::default());
            assert!(r.saturated);
            let report = verify(&a, &r, mode);
            assert!(report.passed(), "{:?}", report.failed().collect::<Vec<_>>());
            assert_eq!(report.image_atoms, 4);
            assert!(check_complete(&r));
            assert!(r.h_atoms.iter().all(|h| !h.is_empty()));
            assert!(r.h(Element::EMPTY).is_empty());
            assert_eq!(r.h(a.one()).len(), r.edges.len());
        }
    }

    #[test]
    fn h_is_additive() {
        let (a, r) = square_rep(NetMode::Pta, SetClass::Crs, GameConfig::default());
        for x in a.elements() {
            for y in a.elements() {
                let union: BTreeSet<usize> = r.h(x).union(&r.h(y)).copied().collect();
                assert_eq!(r.h(x | y), union);
            }
        }
    }

    #[test]
    fn forged_duplicate_breaks_injectivity() {
        let (a, mut r) = square_rep(NetMode::Pta, SetClass::Crs, GameConfig::default());
        r.h_atoms[1] = r.h_atoms[0].clone();
        let report = verify(&a, &r, NetMode::Pta);
        let inj = report.checks.iter().find(|c| c.name == INJECTIVE).unwrap();
        assert_eq!(inj.failures, vec!["atoms 0 and 1 have the same image".to_string()]);
    }

    #[test]
    fn truncated_play_fails_cylindrification_equality() {
        let cfg = GameConfig { max_rounds: 4, ..GameConfig::default() };
        let (a, r) = square_rep(NetMode::Pta, SetClass::Crs, cfg);
        assert!(!r.saturated && r.pending > 0);
        let report = verify(&a, &r, NetMode::Pta);
        let cyl = report.checks.iter().find(|c| c.name == CYLINDRIFICATIONS).unwrap();
        assert!(!cyl.passed);
        assert!(cyl.failures.iter().all(|f| f.contains("pending")));
    }

    #[test]
    fn empty_representation_is_complete() {
        let r = Representation { edges: vec![], h_atoms: vec![], saturated: true, pending: 0 };
        assert!(check_complete(&r));
    }

    #[test]
    fn json_round_trip() {
        let (_, r) = square_rep(NetMode::Tea, SetClass::Pers, GameConfig::default());
        assert_eq!(Representation::from_json(&r.to_json()).unwrap(), r);
    }
}
