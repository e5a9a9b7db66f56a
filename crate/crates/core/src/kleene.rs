//! Three-valued Kleene matrices and the logics B3, PWK, K3 and P3.
//!
//! Formula syntax: `~` binds tightest, then `&`, then `|`; both binary
//! connectives associate to the left. Constants are `0` and `1`, variables
//! match `[a-z][a-z0-9]*`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tv {
    Zero,
    Half,
    One,
}

impl Tv {
    pub const ALL: [Tv; 3] = [Tv::Zero, Tv::Half, Tv::One];

    /// Position in the universe `0, h, 1` of the builtin three-element algebras.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Tv> {
        Tv::ALL.get(i).copied()
    }

    pub fn token(self) -> &'static str {
        match self {
            Tv::Zero => "0",
            Tv::Half => "h",
            Tv::One => "1",
        }
    }
}

impl fmt::Display for Tv {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Tv {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => Ok(Tv::Zero),
            "h" | "1/2" | "½" => Ok(Tv::Half),
            "1" => Ok(Tv::One),
            other => Err(LogicError::BadValue(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Matrix {
    /// `½` is contagious.
    Weak,
    /// Min/max over `0 < ½ < 1`.
    Strong,
}

impl Matrix {
    pub fn and(self, a: Tv, b: Tv) -> Tv {
        match self {
            Matrix::Weak if a == Tv::Half || b == Tv::Half => Tv::Half,
            _ => a.min(b),
        }
    }

    pub fn or(self, a: Tv, b: Tv) -> Tv {
        match self {
            Matrix::Weak if a == Tv::Half || b == Tv::Half => Tv::Half,
            _ => a.max(b),
        }
    }

    pub fn not(self, a: Tv) -> Tv {
        match a {
            Tv::Zero => Tv::One,
            Tv::Half => Tv::Half,
            Tv::One => Tv::Zero,
        }
    }
}

/// A matrix with its designated values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    /// Weak tables, `{1}` designated.
    B3,
    /// Weak tables, `{½, 1}` designated.
    Pwk,
    /// Strong tables, `{1}` designated.
    K3,
    /// Strong tables, `{½, 1}` designated.
    P3,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::B3, Logic::Pwk, Logic::K3, Logic::P3];

    pub fn matrix(self) -> Matrix {
        match self {
            Logic::B3 | Logic::Pwk => Matrix::Weak,
            Logic::K3 | Logic::P3 => Matrix::Strong,
        }
    }

    pub fn designated(self, v: Tv) -> bool {
        match self {
            Logic::B3 | Logic::K3 => v == Tv::One,
            Logic::Pwk | Logic::P3 => v != Tv::Zero,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Logic::B3 => "b3",
            Logic::Pwk => "pwk",
            Logic::K3 => "k3",
            Logic::P3 => "p3",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Logic {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Logic::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| LogicError::UnknownLogic(s.to_string()))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("variable {0} has no value")]
    Unbound(String),
    #[error("unknown truth value {0:?} (use 0, h or 1)")]
    BadValue(String),
    #[error("unknown logic {0:?} (use b3, pwk, k3 or p3)")]
    UnknownLogic(String),
    #[error("{0} variables; at most {MAX_VARIABLES} are supported")]
    TooManyVariables(usize),
}

/// Valuation sweeps visit `3^k` rows, so `k` is capped.
pub const MAX_VARIABLES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(String),
    Const(Tv),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    pub fn negation(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Const(_) => {}
            Formula::Not(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Const(_) => true,
            Formula::Not(a) => a.has_constants(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_constants() || b.has_constants(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Const(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Var(v) => f.write_str(v),
            Formula::Const(c) => write!(f, "{c}"),
            Formula::Not(a) => write!(f, "~{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

impl FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, LogicError> {
        Err(LogicError::Parse { column: self.pos + 1, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                Ok(Formula::negation(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(b')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'0') => {
                self.pos += 1;
                Ok(Formula::Const(Tv::Zero))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Formula::Const(Tv::One))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII slice");
                Ok(Formula::var(name))
            }
            Some(_) => self.error("expected a variable, constant, '~' or '('"),
            None => self.error("unexpected end of formula"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.disjunction()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}

pub type Valuation = BTreeMap<String, Tv>;

pub fn evaluate(f: &Formula, v: &Valuation, m: Matrix) -> Result<Tv, LogicError> {
    Ok(match f {
        Formula::Var(name) => *v.get(name).ok_or_else(|| LogicError::Unbound(name.clone()))?,
        Formula::Const(c) => *c,
        Formula::Not(a) => m.not(evaluate(a, v, m)?),
        Formula::And(a, b) => m.and(evaluate(a, v, m)?, evaluate(b, v, m)?),
        Formula::Or(a, b) => m.or(evaluate(a, v, m)?, evaluate(b, v, m)?),
    })
}

/// Every valuation of `vars`, in lexicographic order with `0 < ½ < 1` and the
/// first variable most significant.
fn valuations(vars: &BTreeSet<String>) -> Result<impl Iterator<Item = Valuation> + '_, LogicError> {
    if vars.len() > MAX_VARIABLES {
        return Err(LogicError::TooManyVariables(vars.len()));
    }
    let k = vars.len() as u32;
    Ok((0..3usize.pow(k)).map(move |code| {
        let mut c = code;
        let mut digits = vec![Tv::Zero; vars.len()];
        for d in digits.iter_mut().rev() {
            *d = Tv::ALL[c % 3];
            c /= 3;
        }
        vars.iter().cloned().zip(digits).collect()
    }))
}

/// `Ok(None)` when valid; otherwise the first countervaluation.
pub fn is_tautology(f: &Formula, logic: Logic) -> Result<Option<Valuation>, LogicError> {
    consequence(&[], f, logic)
}

/// Whether every valuation designating all premises designates the
/// conclusion. `Ok(None)` when it does; otherwise the first countervaluation.
pub fn consequence(premises: &[Formula], conclusion: &Formula, logic: Logic) -> Result<Option<Valuation>, LogicError> {
    let mut vars = conclusion.variables();
    for p in premises {
        vars.extend(p.variables());
    }
    let m = logic.matrix();
    for v in valuations(&vars)? {
        let mut premises_hold = true;
        for p in premises {
            premises_hold &= logic.designated(evaluate(p, &v, m)?);
        }
        if premises_hold && !logic.designated(evaluate(conclusion, &v, m)?) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

pub fn format_valuation(v: &Valuation) -> String {
    let parts: Vec<String> = v.iter().map(|(k, t)| format!("{k}={t}")).collect();
    parts.join(" ")
}

/// Outcome of sampling constant-free formulas and evaluating each at the
/// all-`½` valuation under the weak tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub samples: usize,
    pub max_depth: usize,
    pub seed: u64,
    /// Formulas that did not evaluate to `½`.
    pub violations: Vec<Formula>,
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples: {} (depth <= {}, seed {})", self.samples, self.max_depth, self.seed)?;
        write!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

const PROBE_VARIABLES: [&str; 4] = ["p", "q", "r", "s"];

/// A random constant-free formula of depth at most `depth`.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return Formula::var(PROBE_VARIABLES[rng.gen_range(0..PROBE_VARIABLES.len())]);
    }
    match rng.gen_range(0..3) {
        0 => Formula::negation(random_formula(rng, depth - 1)),
        1 => Formula::and(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        _ => Formula::or(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
    }
}

pub fn no_tautology_probe(depth: usize, samples: usize, seed: u64) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for _ in 0..samples {
        let f = random_formula(&mut rng, depth);
        let v: Valuation = f.variables().into_iter().map(|x| (x, Tv::Half)).collect();
        if evaluate(&f, &v, Matrix::Weak) != Ok(Tv::Half) {
            violations.push(f);
        }
    }
    ProbeReport { samples, max_depth: depth, seed, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraTable;
    use crate::builtin::{builtin, BuiltinName};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn val(pairs: &[(&str, Tv)]) -> Valuation {
        pairs.iter().map(|&(k, t)| (k.to_string(), t)).collect()
    }

    /// Term evaluation in an algebra table, independent of the matrices.
    fn eval_in(alg: &AlgebraTable, f: &Formula, v: &BTreeMap<String, usize>) -> usize {
        match f {
            Formula::Var(x) => v[x],
            Formula::Const(Tv::Zero) => alg.zero().unwrap(),
            Formula::Const(Tv::One) => alg.one().unwrap(),
            Formula::Const(Tv::Half) => unreachable!("no constant for h"),
            Formula::Not(a) => alg.neg(eval_in(alg, a, v)).unwrap(),
            Formula::And(a, b) => alg.meet(eval_in(alg, a, v), eval_in(alg, b, v)),
            Formula::Or(a, b) => alg.join(eval_in(alg, a, v), eval_in(alg, b, v)),
        }
    }

    #[test]
    fn parsing_and_precedence() {
        assert_eq!(f("p | q & ~r"), Formula::or(f("p"), Formula::and(f("q"), Formula::negation(f("r")))));
        assert_eq!(f("(p | q) & 1").to_string(), "((p | q) & 1)");
        assert_eq!(f("~~x1"), Formula::negation(Formula::negation(Formula::var("x1"))));
        assert!(matches!(parse_formula("p &"), Err(LogicError::Parse { column: 4, .. })));
        assert!(matches!(parse_formula("p q"), Err(LogicError::Parse { column: 3, .. })));
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("P").is_err());
    }

    #[test]
    fn table_entries() {
        let v = val(&[("p", Tv::Zero), ("q", Tv::Half)]);
        assert_eq!(evaluate(&f("p & q"), &v, Matrix::Weak), Ok(Tv::Half));
        assert_eq!(evaluate(&f("p & q"), &v, Matrix::Strong), Ok(Tv::Zero));
        assert_eq!(evaluate(&f("1"), &Valuation::new(), Matrix::Weak), Ok(Tv::One));
        assert_eq!(evaluate(&f("r"), &v, Matrix::Weak), Err(LogicError::Unbound("r".into())));
    }

    #[test]
    fn excluded_middle() {
        let lem = f("p | ~p");
        assert_eq!(is_tautology(&lem, Logic::Pwk), Ok(None));
        assert_eq!(is_tautology(&lem, Logic::P3), Ok(None));
        assert_eq!(is_tautology(&lem, Logic::K3), Ok(Some(val(&[("p", Tv::Half)]))));
        assert_eq!(is_tautology(&lem, Logic::B3), Ok(Some(val(&[("p", Tv::Half)]))));
    }

    #[test]
    fn consequences() {
        for logic in Logic::ALL {
            assert_eq!(consequence(&[f("p")], &f("p"), logic), Ok(None));
        }
        let counter = consequence(&[f("p"), f("~p")], &f("q"), Logic::Pwk).unwrap().unwrap();
        assert_eq!(counter, val(&[("p", Tv::Half), ("q", Tv::Zero)]));
        assert_eq!(consequence(&[f("p & q")], &f("p"), Logic::B3), Ok(None));
        // Addition fails in B3: p=1, q=h.
        assert_eq!(consequence(&[f("p")], &f("p | q"), Logic::B3), Ok(Some(val(&[("p", Tv::One), ("q", Tv::Half)]))));
    }

    #[test]
    fn matrices_agree_with_builtin_algebras() {
        let cases = ["p & q", "p | q", "~p", "p | (q & ~p)", "~(p & ~q) | (q & 1) | 0"];
        for (matrix, name) in [(Matrix::Weak, BuiltinName::WeakKleene3), (Matrix::Strong, BuiltinName::StrongKleene3)] {
            let alg = builtin(name);
            for case in cases {
                let formula = f(case);
                for a in Tv::ALL {
                    for b in Tv::ALL {
                        let v = val(&[("p", a), ("q", b)]);
                        let idx = v.iter().map(|(k, t)| (k.clone(), t.index())).collect();
                        let expected = Tv::from_index(eval_in(&alg, &formula, &idx)).unwrap();
                        assert_eq!(evaluate(&formula, &v, matrix), Ok(expected), "{case} at {v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn contagion_examples() {
        let all_half = val(&[("p", Tv::Half), ("q", Tv::Half)]);
        assert_eq!(evaluate(&f("p | (q & ~p)"), &all_half, Matrix::Weak), Ok(Tv::Half));
        assert_eq!(evaluate(&f("p"), &all_half, Matrix::Weak), Ok(Tv::Half));
    }

    #[test]
    fn probe_finds_nothing_and_is_reproducible() {
        let report = no_tautology_probe(8, 1000, 7);
        assert!(report.violations.is_empty());
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_formula(&mut a, 6), random_formula(&mut b, 6));
    }

    #[test]
    fn constants_escape_the_probe() {
        // The constant 1 alone is designated in every logic.
        assert_eq!(is_tautology(&f("1"), Logic::B3), Ok(None));
        assert!(f("p | 1").has_constants());
    }
}
