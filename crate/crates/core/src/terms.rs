//! Terms over the signature, a parser and printer, evaluation, equation
//! checking and the composite operator `s_τ`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! sum     := product ('+' product)*
//! product := unary ('*' unary)*
//! unary   := '-' unary | 'c'i unary | 's'i'/'j unary | 's'i','j unary | atom
//! atom    := '0' | '1' | 'x'k | 'd'ij | '(' sum ')'
//! ```
//!
//! Indices of `d` are single digits; all other indices may have several.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bao::{Dimension, Element, FiniteBao};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::transform::{decompose, FiniteTransformation, Generator, SubstWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(usize),
    Diag(usize, usize),
    Not(Box<Term>),
    C(usize, Box<Term>),
    /// `s^i_j`
    Sub(usize, usize, Box<Term>),
    /// `s_ij`
    Swap(usize, usize, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
}

/// Shorthand constructors, used heavily when writing axiom schemas.
pub mod build {
    use super::Term;

    pub fn x(k: usize) -> Term {
        Term::Var(k)
    }
    pub fn d(i: usize, j: usize) -> Term {
        Term::Diag(i, j)
    }
    pub fn not(t: Term) -> Term {
        Term::Not(Box::new(t))
    }
    pub fn c(i: usize, t: Term) -> Term {
        Term::C(i, Box::new(t))
    }
    pub fn sub(i: usize, j: usize, t: Term) -> Term {
        Term::Sub(i, j, Box::new(t))
    }
    pub fn swap(i: usize, j: usize, t: Term) -> Term {
        Term::Swap(i, j, Box::new(t))
    }
    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }
    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }
}

impl Term {
    /// Number of variables, i.e. one more than the largest variable index.
    pub fn arity(&self) -> usize {
        match self {
            Term::Var(k) => k + 1,
            Term::Zero | Term::One | Term::Diag(..) => 0,
            Term::Not(t) | Term::C(_, t) | Term::Sub(_, _, t) | Term::Swap(_, _, t) => t.arity(),
            Term::Join(a, b) | Term::Meet(a, b) => a.arity().max(b.arity()),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.arity() == 0
    }

    /// Complement is applied to ground subterms only, so the term is monotone.
    pub fn is_monotone(&self) -> bool {
        match self {
            Term::Zero | Term::One | Term::Var(_) | Term::Diag(..) => true,
            Term::Not(t) => t.is_ground(),
            Term::C(_, t) | Term::Sub(_, _, t) | Term::Swap(_, _, t) => t.is_monotone(),
            Term::Join(a, b) | Term::Meet(a, b) => a.is_monotone() && b.is_monotone(),
        }
    }

    /// `t(x̄) = t(0̄) + Σ t(0̄[v := a])` over variables `v` and atoms `a ≤ x_v`.
    /// Holds because every operator is additive and normal; meets are allowed
    /// only against a ground side.
    pub fn is_affine_additive(&self) -> bool {
        match self {
            Term::Zero | Term::One | Term::Var(_) | Term::Diag(..) => true,
            Term::Not(t) => t.is_ground(),
            Term::C(_, t) | Term::Sub(_, _, t) | Term::Swap(_, _, t) => t.is_affine_additive(),
            Term::Join(a, b) => a.is_affine_additive() && b.is_affine_additive(),
            Term::Meet(a, b) => {
                (a.is_ground() && b.is_affine_additive()) || (b.is_ground() && a.is_affine_additive())
            }
        }
    }

    pub fn check_indices(&self, n: usize) -> Result<()> {
        let check = |i: usize| {
            if i < n {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index: i, dim: n })
            }
        };
        match self {
            Term::Zero | Term::One | Term::Var(_) => Ok(()),
            Term::Diag(i, j) => check(*i).and(check(*j)),
            Term::Not(t) => t.check_indices(n),
            Term::C(i, t) => check(*i).and(t.check_indices(n)),
            Term::Sub(i, j, t) | Term::Swap(i, j, t) => {
                check(*i).and(check(*j)).and(t.check_indices(n))
            }
            Term::Join(a, b) | Term::Meet(a, b) => a.check_indices(n).and(b.check_indices(n)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Var(k) => write!(f, "x{k}"),
            Term::Diag(i, j) => write!(f, "d{i}{j}"),
            Term::Not(t) => write!(f, "-{t}"),
            Term::C(i, t) => write!(f, "c{i} {t}"),
            Term::Sub(i, j, t) => write!(f, "s{i}/{j} {t}"),
            Term::Swap(i, j, t) => write!(f, "s{i},{j} {t}"),
            Term::Join(a, b) => write!(f, "({a} + {b})"),
            Term::Meet(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
    pub rel: Relation,
}

impl Equation {
    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs, rel: Relation::Eq }
    }

    pub fn le(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs, rel: Relation::Le }
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity().max(self.rhs.arity())
    }

    pub fn holds_for(&self, lhs: Element, rhs: Element) -> bool {
        match self.rel {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs.is_subset(rhs),
        }
    }

    /// Whether checking generator assignments alone decides the equation.
    pub fn generator_decidable(&self) -> bool {
        match self.rel {
            Relation::Eq => self.lhs.is_affine_additive() && self.rhs.is_affine_additive(),
            Relation::Le => self.lhs.is_affine_additive() && self.rhs.is_monotone(),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.rel {
            Relation::Eq => "=",
            Relation::Le => "<=",
        };
        write!(f, "{} {rel} {}", self.lhs, self.rhs)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digit(&mut self) -> Result<usize> {
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok((c - b'0') as usize)
            }
            _ => self.err("expected a digit"),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    fn index(&mut self) -> Result<usize> {
        let i = self.number()?;
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.n,
            });
        }
        Ok(i)
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        while self.eat(b'+') {
            t = build::join(t, self.product()?);
        }
        Ok(t)
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.unary()?;
        while self.eat(b'*') {
            t = build::meet(t, self.unary()?);
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(build::not(self.unary()?))
            }
            Some(b'c') => {
                self.pos += 1;
                let i = self.index()?;
                Ok(build::c(i, self.unary()?))
            }
            Some(b's') => {
                self.pos += 1;
                let i = self.index()?;
                let swap = match self.src.get(self.pos) {
                    Some(b'/') => false,
                    Some(b',') => true,
                    _ => return self.err("expected '/' or ',' after s<i>"),
                };
                self.pos += 1;
                let j = self.index()?;
                let body = self.unary()?;
                Ok(if swap {
                    build::swap(i, j, body)
                } else {
                    build::sub(i, j, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Term::Var(self.number()?))
            }
            Some(b'd') => {
                self.pos += 1;
                let at = self.pos;
                let i = self.digit()?;
                let j = self.digit()?;
                for k in [i, j] {
                    if k >= self.n {
                        self.pos = at;
                        return Err(Error::IndexOutOfRange { index: k, dim: self.n });
                    }
                }
                Ok(Term::Diag(i, j))
            }
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(t)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("trailing '{}'", c as char)),
        }
    }
}

pub fn parse_term(text: &str, n: Dimension) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n: n.get(),
    };
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs` or `lhs <= rhs`.
pub fn parse_equation(text: &str, n: Dimension) -> Result<Equation> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        n: n.get(),
    };
    let lhs = p.sum()?;
    let rel = if p.eat(b'<') {
        if !p.eat(b'=') {
            return p.err("expected '<='");
        }
        Relation::Le
    } else if p.eat(b'=') {
        Relation::Eq
    } else {
        return p.err("expected '=' or '<='");
    };
    let rhs = p.sum()?;
    p.finish()?;
    Ok(Equation { lhs, rhs, rel })
}

pub fn eval_term(a: &FiniteBao, t: &Term, assignment: &[Element]) -> Result<Element> {
    Ok(match t {
        Term::Zero => Element::EMPTY,
        Term::One => a.one(),
        Term::Var(k) => *assignment.get(*k).ok_or(Error::UnboundVariable(*k))?,
        Term::Diag(i, j) => a.diag(*i, *j)?,
        Term::Not(t) => a.complement(eval_term(a, t, assignment)?),
        Term::C(i, t) => a.c(*i, eval_term(a, t, assignment)?)?,
        Term::Sub(i, j, t) => a.sub(*i, *j, eval_term(a, t, assignment)?)?,
        Term::Swap(i, j, t) => a.swap(*i, *j, eval_term(a, t, assignment)?)?,
        Term::Join(l, r) => eval_term(a, l, assignment)? | eval_term(a, r, assignment)?,
        Term::Meet(l, r) => eval_term(a, l, assignment)? & eval_term(a, r, assignment)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckMode {
    /// Every assignment of elements to variables.
    AllElements,
    /// Generator assignments when the equation's shape makes them decisive
    /// (see [`Equation::generator_decidable`]), every assignment otherwise.
    #[default]
    Generators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub assignment: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Fails(Counterexample),
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }
}

fn test_assignment(a: &FiniteBao, e: &Equation, asg: &[Element]) -> Result<Option<Counterexample>> {
    let lhs = eval_term(a, &e.lhs, asg)?;
    let rhs = eval_term(a, &e.rhs, asg)?;
    Ok((!e.holds_for(lhs, rhs)).then(|| Counterexample {
        assignment: asg.to_vec(),
        lhs,
        rhs,
    }))
}

/// Decides `e` on `a`. Exhaustive modes return the first counterexample with
/// variables ordered and elements in ascending bitmask order.
pub fn check_equation(
    a: &FiniteBao,
    e: &Equation,
    mode: CheckMode,
    limits: &Limits,
) -> Result<CheckOutcome> {
    let k = e.arity();
    let mut asg = vec![Element::EMPTY; k];
    if k == 0 {
        return Ok(match test_assignment(a, e, &asg)? {
            Some(cex) => CheckOutcome::Fails(cex),
            None => CheckOutcome::Holds,
        });
    }
    if mode == CheckMode::Generators && e.generator_decidable() {
        if let Some(cex) = test_assignment(a, e, &asg)? {
            return Ok(CheckOutcome::Fails(cex));
        }
        for v in 0..k {
            for atom in 0..a.num_atoms() {
                asg[v] = Element::singleton(atom);
                if let Some(cex) = test_assignment(a, e, &asg)? {
                    return Ok(CheckOutcome::Fails(cex));
                }
            }
            asg[v] = Element::EMPTY;
        }
        return Ok(CheckOutcome::Holds);
    }
    let bits = (a.num_atoms() as u32).saturating_mul(k as u32);
    if bits >= 64 || 1u64 << bits > limits.max_assignments {
        return Err(Error::Budget(format!(
            "{e} needs 2^{bits} assignments; limit is {}",
            limits.max_assignments
        )));
    }
    let top = a.one().bits();
    loop {
        if let Some(cex) = test_assignment(a, e, &asg)? {
            return Ok(CheckOutcome::Fails(cex));
        }
        // Odometer over variables, last variable fastest.
        let mut v = k;
        loop {
            if v == 0 {
                return Ok(CheckOutcome::Holds);
            }
            v -= 1;
            if asg[v].bits() < top {
                asg[v] = Element::from_bits(asg[v].bits() + 1);
                break;
            }
            asg[v] = Element::EMPTY;
        }
    }
}

fn apply_generator(a: &FiniteBao, g: Generator, x: Element) -> Result<Element> {
    match g {
        Generator::Sub(i, j) => a.sub(i, j, x),
        Generator::Swap(i, j) => a.swap(i, j, x),
    }
}

/// `s_w x` for a word `w = g1…gm`: `s_{g1}` is applied first, so that the
/// result is `{y : ŵ|y ∈ x}` on set algebras.
pub fn eval_word(a: &FiniteBao, word: &SubstWord, x: Element) -> Result<Element> {
    word.check(a.n())?;
    if word.uses_swap() && !a.signature().has_swap {
        return Err(Error::SignatureMismatch(format!(
            "{word} needs transpositions, which the algebra lacks"
        )));
    }
    word.iter().try_fold(x, |acc, &g| apply_generator(a, g, acc))
}

/// `s_τ x`, evaluated through the canonical decomposition of `τ`.
pub fn s_tau(a: &FiniteBao, tau: &FiniteTransformation, x: Element) -> Result<Element> {
    if tau.n() != a.n() {
        return Err(Error::SignatureMismatch(format!(
            "transformation on {} points for dimension {}",
            tau.n(),
            a.n()
        )));
    }
    eval_word(a, &decompose(tau), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bao::{BaoParts, Signature};

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    /// Full square ²{0,1}, atoms in lexicographic tuple order.
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
            d: Some(vec![vec![e(&[0, 1, 2, 3]), e(&[0, 3])], vec![e(&[0, 3]), e(&[0, 1, 2, 3])]]),
        })
        .unwrap()
    }

    #[test]
    fn parses_derived_substitution() {
        let t = parse_term("c0 (d01 * x0)", dim(2)).unwrap();
        assert_eq!(t, build::c(0, build::meet(build::d(0, 1), build::x(0))));
        let t = parse_term("s0,1 s0,1 x0", dim(2)).unwrap();
        assert_eq!(t, build::swap(0, 1, build::swap(0, 1, build::x(0))));
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = parse_term("c2 x0", dim(2)).unwrap_err();
        assert_eq!(err.to_string(), "index 2 ≥ dimension 2");
    }

    #[test]
    fn precedence_and_round_trip() {
        let t = parse_term("-c0 x0 * x1 + s1/0 d01", dim(2)).unwrap();
        assert_eq!(
            t,
            build::join(
                build::meet(build::not(build::c(0, build::x(0))), build::x(1)),
                build::sub(1, 0, build::d(0, 1))
            )
        );
        let printed = t.to_string();
        assert_eq!(parse_term(&printed, dim(2)).unwrap(), t);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(
            parse_term("c0 (x0 + x1", dim(2)),
            Err(Error::Syntax { pos: 11, .. })
        ));
        assert!(matches!(parse_term("x0 x1", dim(2)), Err(Error::Syntax { .. })));
        assert!(matches!(parse_equation("x0 x0", dim(2)), Err(Error::Syntax { .. })));
    }

    #[test]
    fn evaluates_examples() {
        let a = square();
        let excluded_middle = parse_term("x0 + -x0", dim(2)).unwrap();
        for x in a.elements() {
            assert_eq!(eval_term(&a, &excluded_middle, &[x]).unwrap(), a.one());
        }
        let s = parse_term("c0(d01 * x0)", dim(2)).unwrap();
        assert_eq!(
            eval_term(&a, &s, &[a.atom(3)]).unwrap(),
            Element::from_atoms([1, 3])
        );
        let d = parse_term("d01", dim(2)).unwrap();
        assert_eq!(eval_term(&a, &d, &[]).unwrap(), Element::from_atoms([0, 3]));
        assert_eq!(eval_term(&a, &build::x(1), &[a.one()]), Err(Error::UnboundVariable(1)));
    }

    #[test]
    fn checks_equations() {
        let a = square();
        let lim = Limits::default();
        let fe7 = parse_equation("s0,1 s0,1 x0 = x0", dim(2)).unwrap();
        assert!(check_equation(&a, &fe7, CheckMode::AllElements, &lim).unwrap().holds());
        let refl = parse_equation("x0 = x0", dim(2)).unwrap();
        assert!(check_equation(&a, &refl, CheckMode::Generators, &lim).unwrap().holds());

        let mut p = a.to_parts();
        p.c[0][3] = Element::from_atoms([0, 1, 3]);
        let broken = FiniteBao::from_parts(p).unwrap();
        let c7 = parse_equation("d01 * c0 (d01 * x0) <= x0", dim(2)).unwrap();
        for mode in [CheckMode::AllElements, CheckMode::Generators] {
            match check_equation(&broken, &c7, mode, &lim).unwrap() {
                CheckOutcome::Fails(cex) => assert!(!cex.lhs.is_subset(cex.rhs)),
                CheckOutcome::Holds => panic!("C7 should fail"),
            }
        }
    }

    #[test]
    fn generator_mode_agrees_with_exhaustive_mode() {
        let a = square();
        let mut p = a.to_parts();
        p.c[1][2] = Element::from_atoms([1, 2]);
        let broken = FiniteBao::from_parts(p).unwrap();
        let lim = Limits::default();
        let eqs = [
            "c0 (x0 + x1) = c0 x0 + c1 x1",
            "c1 c0 x0 = c0 c1 x0",
            "s0/1 c1 x0 <= c0 x0",
            "x0 <= c1 x0",
            "c1 (x0 * d01) = s1/0 x0",
            "d01 * c0 (d01 * x0) <= x0",
        ];
        for algebra in [&a, &broken] {
            for text in eqs {
                let e = parse_equation(text, dim(2)).unwrap();
                assert!(e.generator_decidable(), "{text}");
                let fast = check_equation(algebra, &e, CheckMode::Generators, &lim).unwrap();
                let slow = check_equation(algebra, &e, CheckMode::AllElements, &lim).unwrap();
                assert_eq!(fast.holds(), slow.holds(), "{text}");
            }
        }
    }

    #[test]
    fn budget_guard() {
        let a = square();
        let lim = Limits {
            max_assignments: 255,
            ..Limits::default()
        };
        let e = parse_equation("x0 * x1 = x1 * x0", dim(2)).unwrap();
        assert!(matches!(
            check_equation(&a, &e, CheckMode::AllElements, &lim),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn s_tau_examples() {
        let a = square();
        let id = FiniteTransformation::identity(2);
        let swap = FiniteTransformation::swap(2, 0, 1);
        for x in a.elements() {
            assert_eq!(s_tau(&a, &id, x).unwrap(), x);
        }
        assert_eq!(s_tau(&a, &swap, a.atom(1)).unwrap(), a.atom(2));
        for tau in FiniteTransformation::all(2) {
            for i in 0..2 {
                for j in 0..2 {
                    let lhs = s_tau(&a, &tau, a.diag(i, j).unwrap()).unwrap();
                    assert_eq!(lhs, a.diag(tau.get(i), tau.get(j)).unwrap());
                }
            }
        }
        let sa = a.reduct(Signature::sa()).unwrap();
        assert!(matches!(s_tau(&sa, &swap, a.one()), Err(Error::SignatureMismatch(_))));
    }
}
