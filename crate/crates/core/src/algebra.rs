//! Attribute algebras and their morphisms.
//!
//! Three kinds of algebra are supported: terms over an operation signature
//! and a set of variables, the naturals with `+`, and finite enumerations
//! without operations. A morphism out of a term algebra is a variable
//! assignment extended homomorphically; every other morphism is an identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Lit(u64),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::App("+".into(), vec![a, b])
    }

    pub fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Lit(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.variables(out)),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Lit(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Lit(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Parses `u + (v + 1)`, `f(u, v)`; `+` associates to the left.
    pub fn parse(src: &str) -> Result<Term> {
        let mut p = Parser {
            chars: src.char_indices().peekable(),
            src,
        };
        let t = p.sum()?;
        p.skip_ws();
        match p.chars.peek() {
            None => Ok(t),
            Some(&(i, c)) => Err(Error::Term(format!(
                "unexpected `{c}` at column {} in `{src}`",
                i + 1
            ))),
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn sum(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            self.skip_ws();
            if self.chars.peek().map(|&(_, c)| c) != Some('+') {
                return Ok(t);
            }
            self.chars.next();
            t = Term::plus(t, self.atom()?);
        }
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        let Some(&(start, c)) = self.chars.peek() else {
            return Err(Error::Term(format!("unexpected end of `{}`", self.src)));
        };
        if c == '(' {
            self.chars.next();
            let t = self.sum()?;
            self.skip_ws();
            return match self.chars.next() {
                Some((_, ')')) => Ok(t),
                _ => Err(Error::Term(format!("missing `)` in `{}`", self.src))),
            };
        }
        if c.is_ascii_digit() {
            let text = self.take_while(start, |c| c.is_ascii_digit());
            return text
                .parse()
                .map(Term::Lit)
                .map_err(|_| Error::Term(format!("literal `{text}` out of range")));
        }
        if c.is_ascii_lowercase() || c == '_' {
            let name = self
                .take_while(start, |c| c.is_ascii_alphanumeric() || c == '_')
                .to_string();
            self.skip_ws();
            if self.chars.peek().map(|&(_, c)| c) == Some('(') {
                self.chars.next();
                let mut args = Vec::new();
                self.skip_ws();
                if self.chars.peek().map(|&(_, c)| c) == Some(')') {
                    self.chars.next();
                    return Ok(Term::App(name, args));
                }
                loop {
                    args.push(self.sum()?);
                    self.skip_ws();
                    match self.chars.next() {
                        Some((_, ',')) => continue,
                        Some((_, ')')) => return Ok(Term::App(name, args)),
                        _ => {
                            return Err(Error::Term(format!(
                                "malformed arguments in `{}`",
                                self.src
                            )))
                        }
                    }
                }
            }
            return Ok(Term::Var(name));
        }
        Err(Error::Term(format!(
            "unexpected `{c}` at column {} in `{}`",
            start + 1,
            self.src
        )))
    }

    fn take_while(&mut self, start: usize, keep: impl Fn(char) -> bool) -> &str {
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if !keep(c) {
                break;
            }
            end = i + c.len_utf8();
            self.chars.next();
        }
        &self.src[start..end]
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Lit(n) => write!(f, "{n}"),
            Term::App(op, args) if op == "+" && args.len() == 2 => {
                write!(f, "{}+", args[0])?;
                match &args[1] {
                    t @ Term::App(o, a) if o == "+" && a.len() == 2 => write!(f, "({t})"),
                    t => write!(f, "{t}"),
                }
            }
            Term::App(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A carrier element of one of the supported algebras.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Nat(u64),
    Sym(String),
    Term(Term),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(n) => write!(f, "{n}"),
            Value::Sym(s) => f.write_str(s),
            Value::Term(t) => write!(f, "{t}"),
        }
    }
}

/// A finite set of carrier values.
pub type LabelSet = BTreeSet<Value>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpSignature {
    ops: BTreeMap<String, usize>,
}

impl OpSignature {
    pub fn new(ops: impl IntoIterator<Item = (String, usize)>) -> Result<Self> {
        let mut sig = OpSignature::default();
        for (op, arity) in ops {
            if sig.ops.insert(op.clone(), arity).is_some() {
                return Err(Error::Term(format!("duplicate operation `{op}`")));
            }
        }
        Ok(sig)
    }

    /// The signature `{+ : 2}`.
    pub fn plus() -> Self {
        OpSignature::new([("+".to_string(), 2)]).unwrap()
    }

    pub fn arity(&self, op: &str) -> Option<usize> {
        self.ops.get(op).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    /// Terms over `ops` and `vars`; decimal literals are constants.
    Terms {
        ops: OpSignature,
        vars: BTreeSet<String>,
    },
    /// The naturals, interpreting `+` as addition.
    Nat,
    /// A finite set of symbols with no operations.
    Enum(BTreeSet<String>),
}

impl Algebra {
    pub fn terms<I, S>(vars: I) -> Arc<Algebra>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Arc::new(Algebra::Terms {
            ops: OpSignature::plus(),
            vars: vars.into_iter().map(Into::into).collect(),
        })
    }

    pub fn enumeration<I, S>(values: I) -> Arc<Algebra>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Arc::new(Algebra::Enum(values.into_iter().map(Into::into).collect()))
    }

    pub fn nat() -> Arc<Algebra> {
        Arc::new(Algebra::Nat)
    }

    pub fn variables(&self) -> Option<&BTreeSet<String>> {
        match self {
            Algebra::Terms { vars, .. } => Some(vars),
            _ => None,
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            Algebra::Terms { .. } => "term",
            Algebra::Nat => "natural-number",
            Algebra::Enum(_) => "enumerated",
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Algebra::Nat, Value::Nat(_)) => true,
            (Algebra::Enum(vals), Value::Sym(s)) => vals.contains(s),
            (Algebra::Terms { ops, vars }, Value::Term(t)) => well_formed(t, ops, vars),
            _ => false,
        }
    }

    /// Reads a label written in the concrete syntax of this algebra.
    pub fn parse_value(&self, text: &str) -> Result<Value> {
        let v = match self {
            Algebra::Nat => {
                text.trim()
                    .parse()
                    .map(Value::Nat)
                    .map_err(|_| Error::NotInCarrier {
                        value: text.into(),
                        algebra: self.describe().into(),
                    })?
            }
            Algebra::Enum(_) => Value::Sym(text.trim().to_string()),
            Algebra::Terms { .. } => Value::Term(Term::parse(text)?),
        };
        if !self.contains(&v) {
            return Err(Error::NotInCarrier {
                value: text.into(),
                algebra: self.describe().into(),
            });
        }
        Ok(v)
    }
}

fn well_formed(t: &Term, ops: &OpSignature, vars: &BTreeSet<String>) -> bool {
    match t {
        Term::Var(v) => vars.contains(v),
        Term::Lit(_) => true,
        Term::App(op, args) => {
            ops.arity(op) == Some(args.len()) && args.iter().all(|a| well_formed(a, ops, vars))
        }
    }
}

/// An algebra homomorphism. Out of a term algebra it is determined by the
/// images of the variables; otherwise it is an identity.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    /// Empty exactly when the morphism is an identity.
    assignment: BTreeMap<String, Value>,
}

impl PartialEq for AlgebraMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.source, &other.source)
            && same_algebra(&self.target, &other.target)
            && self.assignment == other.assignment
    }
}

impl Eq for AlgebraMorphism {}

pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraMorphism {
    pub fn identity(a: Arc<Algebra>) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a,
            assignment: BTreeMap::new(),
        }
    }

    /// The homomorphism out of a term algebra sending each variable to the
    /// given value.
    pub fn assignment(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        assignment: BTreeMap<String, Value>,
    ) -> Result<Self> {
        let Algebra::Terms { vars, .. } = &*source else {
            if same_algebra(&source, &target) && assignment.is_empty() {
                return Ok(AlgebraMorphism::identity(source));
            }
            return Err(Error::AlgebraMismatch(
                "only identities leave a non-term algebra".into(),
            ));
        };
        for v in vars {
            match assignment.get(v) {
                None => return Err(Error::UnassignedVariable(v.clone())),
                Some(val) if !target.contains(val) => {
                    return Err(Error::NotInCarrier {
                        value: val.to_string(),
                        algebra: target.describe().into(),
                    })
                }
                _ => {}
            }
        }
        if let Some(extra) = assignment.keys().find(|k| !vars.contains(*k)) {
            return Err(Error::AlgebraMismatch(format!(
                "`{extra}` is not a variable of the source algebra"
            )));
        }
        let is_identity = same_algebra(&source, &target)
            && assignment
                .iter()
                .all(|(k, v)| matches!(v, Value::Term(Term::Var(x)) if x == k));
        if is_identity {
            return Ok(AlgebraMorphism::identity(source));
        }
        if vars.is_empty() && same_algebra(&source, &target) {
            return Ok(AlgebraMorphism::identity(source));
        }
        Ok(AlgebraMorphism {
            source,
            target,
            assignment,
        })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn assignment_map(&self) -> &BTreeMap<String, Value> {
        &self.assignment
    }

    pub fn is_identity(&self) -> bool {
        self.assignment.is_empty() && same_algebra(&self.source, &self.target)
    }

    /// Image of a carrier value of the source algebra.
    pub fn apply(&self, v: &Value) -> Result<Value> {
        if self.is_identity() {
            return Ok(v.clone());
        }
        match v {
            Value::Term(t) => evaluate_term(t, self),
            other => Err(Error::NotInCarrier {
                value: other.to_string(),
                algebra: self.source.describe().into(),
            }),
        }
    }
}

/// Homomorphic image of `t` under `h`: variables by the assignment,
/// operations by their interpretation in the target.
pub fn evaluate_term(t: &Term, h: &AlgebraMorphism) -> Result<Value> {
    if h.is_identity() {
        return Ok(Value::Term(t.clone()));
    }
    match &*h.target {
        Algebra::Nat => eval_nat(t, h).map(Value::Nat),
        Algebra::Terms { ops, .. } => substitute(t, h, ops).map(Value::Term),
        Algebra::Enum(_) => match t {
            Term::Var(v) => h
                .assignment
                .get(v)
                .cloned()
                .ok_or_else(|| Error::UnassignedVariable(v.clone())),
            Term::Lit(n) => Err(Error::UninterpretedOp {
                op: n.to_string(),
                algebra: "enumerated".into(),
            }),
            Term::App(op, _) => Err(Error::UninterpretedOp {
                op: op.clone(),
                algebra: "enumerated".into(),
            }),
        },
    }
}

fn eval_nat(t: &Term, h: &AlgebraMorphism) -> Result<u64> {
    match t {
        Term::Var(v) => match h.assignment.get(v) {
            Some(Value::Nat(n)) => Ok(*n),
            Some(other) => Err(Error::NotInCarrier {
                value: other.to_string(),
                algebra: "natural-number".into(),
            }),
            None => Err(Error::UnassignedVariable(v.clone())),
        },
        Term::Lit(n) => Ok(*n),
        Term::App(op, args) if op == "+" && args.len() == 2 => {
            let (a, b) = (eval_nat(&args[0], h)?, eval_nat(&args[1], h)?);
            a.checked_add(b)
                .ok_or_else(|| Error::Overflow(t.to_string()))
        }
        Term::App(op, _) => Err(Error::UninterpretedOp {
            op: op.clone(),
            algebra: "natural-number".into(),
        }),
    }
}

fn substitute(t: &Term, h: &AlgebraMorphism, ops: &OpSignature) -> Result<Term> {
    match t {
        Term::Var(v) => match h.assignment.get(v) {
            Some(Value::Term(img)) => Ok(img.clone()),
            Some(other) => Err(Error::NotInCarrier {
                value: other.to_string(),
                algebra: "term".into(),
            }),
            None => Err(Error::UnassignedVariable(v.clone())),
        },
        Term::Lit(n) => Ok(Term::Lit(*n)),
        Term::App(op, args) => {
            if ops.arity(op) != Some(args.len()) {
                return Err(Error::UninterpretedOp {
                    op: op.clone(),
                    algebra: "term".into(),
                });
            }
            let args = args
                .iter()
                .map(|a| substitute(a, h, ops))
                .collect::<Result<_>>()?;
            Ok(Term::App(op.clone(), args))
        }
    }
}

/// `g ∘ f`.
pub fn compose_algebra(g: &AlgebraMorphism, f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
    if !same_algebra(&f.target, &g.source) {
        return Err(Error::Composition("algebra morphisms do not meet".into()));
    }
    if f.is_identity() {
        return Ok(g.clone());
    }
    if g.is_identity() {
        return Ok(f.clone());
    }
    let assignment = f
        .assignment
        .iter()
        .map(|(k, v)| Ok((k.clone(), g.apply(v)?)))
        .collect::<Result<_>>()?;
    AlgebraMorphism::assignment(f.source.clone(), g.target.clone(), assignment)
}

/// Elementwise image of a label set.
pub fn apply_to_labelset(h: &AlgebraMorphism, s: &LabelSet) -> Result<LabelSet> {
    if h.is_identity() {
        return Ok(s.clone());
    }
    s.iter().map(|v| h.apply(v)).collect()
}
