//! The four finite axiom systems and a checker reporting every failure.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bao::{Element, FiniteBao, Signature};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::terms::build::{c, d, join, meet, not, sub, swap, x};
use crate::terms::{check_equation, CheckMode, CheckOutcome, Equation, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomSystem {
    #[serde(rename = "PTA")]
    Pta,
    #[serde(rename = "TA")]
    Ta,
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "TEA")]
    Tea,
}

impl AxiomSystem {
    pub const ALL: [AxiomSystem; 4] = [AxiomSystem::Pta, AxiomSystem::Ta, AxiomSystem::Sa, AxiomSystem::Tea];

    /// The operators an algebra must carry to be checked against this system.
    pub fn required(self) -> Signature {
        match self {
            AxiomSystem::Pta => Signature::pta(),
            AxiomSystem::Ta => Signature::ta(),
            AxiomSystem::Sa => Signature::sa(),
            AxiomSystem::Tea => Signature::tea(),
        }
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomSystem::Pta => "PTA",
            AxiomSystem::Ta => "TA",
            AxiomSystem::Sa => "SA",
            AxiomSystem::Tea => "TEA",
        })
    }
}

impl FromStr for AxiomSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PTA" => Ok(AxiomSystem::Pta),
            "TA" => Ok(AxiomSystem::Ta),
            "SA" => Ok(AxiomSystem::Sa),
            "TEA" => Ok(AxiomSystem::Tea),
            _ => Err(Error::Format(format!("unknown class {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomInstance {
    pub label: &'static str,
    pub indices: Vec<usize>,
    pub equation: Equation,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Read the seventh substitution-algebra schema as `s^j_k s^i_k x = s^i_k s^j_k x`.
    pub s7_alt: bool,
    pub mode: CheckMode,
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(i, j)| (0..n).map(move |k| (i, j, k)))
}

/// `(i, j, m, k)` with `i ≠ j`, `m ∉ {i,j}`, `k ∉ {i,j,m}`.
fn mgr_indices(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    pairs(n)
        .filter(|(i, j)| i != j)
        .flat_map(move |(i, j)| {
            (0..n)
                .filter(move |&m| m != i && m != j)
                .flat_map(move |m| {
                    (0..n)
                        .filter(move |&k| k != i && k != j && k != m)
                        .map(move |k| (i, j, m, k))
                })
        })
}

/// `s^i_j` spelled in the cylindric signature.
fn derived_sub(i: usize, j: usize, t: Term) -> Term {
    if i == j {
        t
    } else {
        c(i, meet(d(i, j), t))
    }
}

struct Builder {
    out: Vec<AxiomInstance>,
}

impl Builder {
    fn push(&mut self, label: &'static str, indices: &[usize], equation: Equation) {
        self.out.push(AxiomInstance {
            label,
            indices: indices.to_vec(),
            equation,
        });
    }

    fn boolean_endomorphism(&mut self, label: &'static str, idx: &[usize], op: impl Fn(Term) -> Term) {
        self.push(label, idx, Equation::eq(op(join(x(0), x(1))), join(op(x(0)), op(x(1)))));
        self.push(label, idx, Equation::eq(op(not(x(0))), not(op(x(0)))));
    }

    /// Schemas shared by TA, TEA and SA, in the cylindric-substitution signature.
    fn substitution_core(&mut self, n: usize, p: &'static [&'static str; 6]) {
        let [l1, l2, l3, l4, l5, l6] = *p;
        for i in 0..n {
            self.push(l1, &[i], Equation::le(x(0), c(i, x(0))));
        }
        for i in 0..n {
            self.push(l2, &[i], Equation::eq(c(i, join(x(0), x(1))), join(c(i, x(0)), c(i, x(1)))));
        }
        for (i, j) in pairs(n) {
            self.push(l3, &[i, j], Equation::eq(sub(i, j, c(i, x(0))), c(i, x(0))));
        }
        for (i, j) in pairs(n).filter(|(i, j)| i != j) {
            self.push(l4, &[i, j], Equation::eq(c(i, sub(i, j, x(0))), sub(i, j, x(0))));
        }
        for (i, j) in pairs(n) {
            for (k, m) in pairs(n).filter(|&(k, m)| ![k, m].contains(&i) && ![k, m].contains(&j)) {
                self.push(
                    l5,
                    &[i, j, k, m],
                    Equation::eq(sub(i, j, sub(k, m, x(0))), sub(k, m, sub(i, j, x(0)))),
                );
            }
        }
        for (i, j) in pairs(n) {
            self.boolean_endomorphism(l6, &[i, j], |t| sub(i, j, t));
        }
    }

    /// Transposition schemas shared by TA and TEA (zeroth-schema parts, endomorphism, 7–9).
    fn transposition_core(&mut self, n: usize, l0: &'static str, p: &'static [&'static str; 4]) {
        let [l6, l7, l8, l9] = *p;
        for i in 0..n {
            self.push(l0, &[i], Equation::eq(swap(i, i, x(0)), x(0)));
        }
        for (i, j) in pairs(n).filter(|(i, j)| i < j) {
            self.push(l0, &[i, j], Equation::eq(swap(i, j, x(0)), swap(j, i, x(0))));
        }
        for (i, j) in pairs(n) {
            self.boolean_endomorphism(l6, &[i, j], |t| swap(i, j, t));
        }
        for (i, j) in pairs(n) {
            self.push(l7, &[i, j], Equation::eq(swap(i, j, swap(i, j, x(0))), x(0)));
        }
        for (i, j, k) in triples(n).filter(|&(i, j, k)| i != j && j != k && i != k) {
            self.push(
                l8,
                &[i, j, k],
                Equation::eq(swap(i, j, swap(i, k, x(0))), swap(j, k, swap(i, j, x(0)))),
            );
        }
        for (i, j) in pairs(n) {
            self.push(l9, &[i, j], Equation::eq(swap(i, j, sub(i, j, x(0))), sub(j, i, x(0))));
        }
    }
}

fn mgr(label: &'static str, b: &mut Builder, n: usize, s: impl Fn(usize, usize, Term) -> Term) {
    for (i, j, m, k) in mgr_indices(n) {
        // s^k_i s^i_j s^j_m s^m_k c_k x = s^k_m s^m_i s^i_j s^j_k c_k x
        let lhs = s(k, i, s(i, j, s(j, m, s(m, k, c(k, x(0))))));
        let rhs = s(k, m, s(m, i, s(i, j, s(j, k, c(k, x(0))))));
        b.push(label, &[i, j, m, k], Equation::eq(lhs, rhs));
    }
}

/// Position of a schema in its system: the number in its label, MGR last.
fn schema_number(label: &str) -> u32 {
    let digits: String = label.chars().filter(char::is_ascii_digit).collect();
    digits.parse().unwrap_or(u32::MAX)
}

/// All ground instances of `sys` at dimension `n`, schema by schema, indices
/// in lexicographic order.
pub fn axiom_instances(sys: AxiomSystem, n: usize, opts: CheckOptions) -> Vec<AxiomInstance> {
    let mut b = Builder { out: Vec::new() };
    match sys {
        AxiomSystem::Pta => {
            for i in 0..n {
                b.push("C_0", &[i], Equation::eq(c(i, Term::Zero), Term::Zero));
            }
            for i in 0..n {
                b.push("C_1", &[i], Equation::le(x(0), c(i, x(0))));
            }
            for i in 0..n {
                b.push("C_2", &[i], Equation::eq(c(i, join(x(0), x(1))), join(c(i, x(0)), c(i, x(1)))));
            }
            for i in 0..n {
                b.push("C_3", &[i], Equation::eq(c(i, c(i, x(0))), c(i, x(0))));
                b.push("C_3", &[i], Equation::eq(c(i, not(c(i, x(0)))), not(c(i, x(0)))));
            }
            for (i, j, k) in triples(n).filter(|&(i, j, k)| k != i && k != j) {
                b.push(
                    "C_4*",
                    &[i, j, k],
                    Equation::le(meet(c(j, c(i, x(0))), d(j, k)), c(i, c(j, x(0)))),
                );
            }
            for i in 0..n {
                b.push("C_5", &[i], Equation::eq(d(i, i), Term::One));
            }
            for (i, j, k) in triples(n).filter(|&(i, j, k)| k != i && k != j) {
                b.push("C_6", &[i, j, k], Equation::eq(d(i, j), c(k, meet(d(i, k), d(k, j)))));
            }
            for (i, j) in pairs(n).filter(|(i, j)| i != j) {
                b.push("C_7", &[i, j], Equation::le(meet(d(i, j), c(i, meet(d(i, j), x(0)))), x(0)));
            }
            mgr("MGR", &mut b, n, derived_sub);
        }
        AxiomSystem::Ta | AxiomSystem::Tea => {
            let tea = sys == AxiomSystem::Tea;
            let (l0, core, trans) = if tea {
                ("Fe_0", &["Fe_1", "Fe_2", "Fe_3", "Fe_4", "Fe_5*", "Fe_6"], &["Fe_6", "Fe_7", "Fe_8", "Fe_9"])
            } else {
                ("F_0", &["F_1", "F_2", "F_3", "F_4", "F_5*", "F_6"], &["F_6", "F_7", "F_8", "F_9"])
            };
            for i in 0..n {
                b.push(l0, &[i], Equation::eq(sub(i, i, x(0)), x(0)));
            }
            if tea {
                for i in 0..n {
                    b.push(l0, &[i], Equation::eq(d(i, i), Term::One));
                }
            }
            b.transposition_core(n, l0, trans);
            b.substitution_core(n, core);
            if tea {
                for (i, j) in pairs(n) {
                    b.push("Fe_10", &[i, j], Equation::eq(sub(i, j, d(i, j)), Term::One));
                }
                for (i, j) in pairs(n) {
                    b.push("Fe_11", &[i, j], Equation::le(meet(x(0), d(i, j)), sub(i, j, x(0))));
                }
            }
        }
        AxiomSystem::Sa => {
            for i in 0..n {
                b.push("S_0", &[i], Equation::eq(sub(i, i, x(0)), x(0)));
            }
            b.substitution_core(n, &["S_1", "S_2", "S_3", "S_4", "S_5*", "S_6"]);
            for (i, j, k) in triples(n) {
                let e = if opts.s7_alt {
                    Equation::eq(sub(j, k, sub(i, k, x(0))), sub(i, k, sub(j, k, x(0))))
                } else {
                    Equation::eq(sub(k, k, sub(j, k, x(0))), sub(k, i, sub(j, i, x(0))))
                };
                b.push("S_7", &[i, j, k], e);
            }
            mgr("S_8", &mut b, n, sub);
        }
    }
    b.out.sort_by_key(|inst| schema_number(inst.label));
    b.out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub label: String,
    pub indices: Vec<usize>,
    pub equation: String,
    pub assignment: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}: {} fails at [", self.label, self.indices, self.equation)?;
        for (k, a) in self.assignment.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{k}={a}")?;
        }
        write!(f, "] with lhs {} and rhs {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ViolationReport(pub Vec<Violation>);

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|v| v.label.as_str())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Label for the atom-level consequence checked alongside the TEA schemas.
pub const SWAP_FIXES_DIAGONAL_ATOMS: &str = "s_ij a = a for atoms a <= d_ij";

/// Checks every instance of `sys` on `a`; the report lists all failures in
/// instance order.
pub fn check_class(
    a: &FiniteBao,
    sys: AxiomSystem,
    opts: CheckOptions,
    limits: &Limits,
) -> Result<ViolationReport> {
    let sig = a.signature();
    let need = sys.required();
    if !need.is_subset_of(sig) {
        return Err(Error::SignatureMismatch(format!(
            "{sys} needs {need:?}, the algebra has {sig:?}"
        )));
    }
    let instances = axiom_instances(sys, a.n(), opts);
    let results: Vec<Result<Option<Violation>>> = instances
        .par_iter()
        .map(|inst| {
            Ok(match check_equation(a, &inst.equation, opts.mode, limits)? {
                CheckOutcome::Holds => None,
                CheckOutcome::Fails(cex) => Some(Violation {
                    label: inst.label.to_string(),
                    indices: inst.indices.clone(),
                    equation: inst.equation.to_string(),
                    assignment: cex.assignment,
                    lhs: cex.lhs,
                    rhs: cex.rhs,
                }),
            })
        })
        .collect();
    let mut report = Vec::new();
    for r in results {
        if let Some(v) = r? {
            report.push(v);
        }
    }
    if sys == AxiomSystem::Tea {
        for (i, j) in pairs(a.n()).filter(|(i, j)| i < j) {
            let dij = a.diag(i, j)?;
            for atom in dij.atoms() {
                let at = Element::singleton(atom);
                let image = a.swap(i, j, at)?;
                if image != at {
                    report.push(Violation {
                        label: SWAP_FIXES_DIAGONAL_ATOMS.to_string(),
                        indices: vec![i, j],
                        equation: format!("s{i},{j} x0 = x0"),
                        assignment: vec![at],
                        lhs: image,
                        rhs: at,
                    });
                }
            }
        }
    }
    Ok(ViolationReport(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(sys: AxiomSystem, n: usize, label: &str) -> usize {
        axiom_instances(sys, n, CheckOptions::default())
            .iter()
            .filter(|i| i.label == label)
            .count()
    }

    #[test]
    fn instance_counts() {
        assert_eq!(count(AxiomSystem::Pta, 4, "MGR"), 24);
        assert_eq!(count(AxiomSystem::Pta, 3, "MGR"), 0);
        assert_eq!(count(AxiomSystem::Pta, 3, "C_5"), 3);
        assert_eq!(count(AxiomSystem::Sa, 4, "S_8"), 24);
        // C4*: ordered (i, j) times the n - |{i, j}| choices of k.
        assert_eq!(count(AxiomSystem::Pta, 3, "C_4*"), 3 * 2 + 6);
        assert_eq!(count(AxiomSystem::Tea, 3, "Fe_8"), 6);
    }

    #[test]
    fn labels_follow_schema_order() {
        let labels: Vec<_> = axiom_instances(AxiomSystem::Tea, 2, CheckOptions::default())
            .into_iter()
            .map(|i| i.label)
            .fold(Vec::new(), |mut acc, l| {
                if acc.last() != Some(&l) {
                    acc.push(l);
                }
                acc
            });
        assert_eq!(
            labels,
            ["Fe_0", "Fe_1", "Fe_2", "Fe_3", "Fe_4", "Fe_5*", "Fe_6", "Fe_7", "Fe_9", "Fe_10", "Fe_11"]
        );
    }

    #[test]
    fn pta_expands_substitutions() {
        let inst = axiom_instances(AxiomSystem::Pta, 4, CheckOptions::default());
        let mgr = inst.iter().find(|i| i.label == "MGR").unwrap();
        assert!(!mgr.equation.to_string().contains('/'));
    }

    #[test]
    fn parse_system_names() {
        assert_eq!("tea".parse::<AxiomSystem>().unwrap(), AxiomSystem::Tea);
        assert!("XYZ".parse::<AxiomSystem>().is_err());
    }
}
