//! Terms over a finite operation signature, written as s-expressions.
//!
//! ```text
//! term := var | const | "(" op term* ")"
//! ```
//!
//! `(comp (dom x) y)` applies the binary `comp` to `(dom x)` and `y`.
//! Constants may be written bare (`id`) or applied to nothing (`(id)`).
//! Variables must be declared up front and may not reuse an operation name.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new(ops: impl IntoIterator<Item = (impl Into<String>, usize)>) -> Self {
        Signature { ops: ops.into_iter().map(|(name, arity)| OpSymbol { name: name.into(), arity }).collect() }
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn name(&self, op: usize) -> &str {
        &self.ops[op].name
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// Index into the declared variable list.
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(op: usize, args: Vec<Term>) -> Term {
        Term::App(op, args)
    }

    pub fn parse(src: &str, sig: &Signature, vars: &[&str]) -> Result<Term> {
        if let Some(v) = vars.iter().find(|v| sig.find(v).is_some()) {
            return Err(Error::input(format!("variable `{v}` clashes with an operation name")));
        }
        let tokens = tokenize(src);
        let mut pos = 0;
        let t = parse_term(&tokens, &mut pos, sig, vars)?;
        if pos != tokens.len() {
            return Err(Error::input(format!("unexpected `{}` after the term", tokens[pos])));
        }
        Ok(t)
    }

    /// Checks arities against `sig` and variables against a declared count.
    pub fn validate(&self, sig: &Signature, var_count: usize) -> Result<()> {
        match self {
            Term::Var(i) if *i < var_count => Ok(()),
            Term::Var(i) => Err(Error::input(format!("unbound variable x{}", i + 1))),
            Term::App(op, args) => {
                if *op >= sig.len() {
                    return Err(Error::input(format!("unknown operation #{op}")));
                }
                if sig.arity(*op) != args.len() {
                    return Err(Error::input(format!(
                        "`{}` expects {} argument(s), got {}",
                        sig.name(*op),
                        sig.arity(*op),
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.validate(sig, var_count))
            }
        }
    }

    /// Nesting depth of operation applications; a bare variable has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Number of occurrences of each variable, indexed by variable.
    pub fn occurrences(&self, var_count: usize) -> Vec<usize> {
        let mut counts = alloc::vec![0; var_count];
        self.count_into(&mut counts);
        counts
    }

    fn count_into(&self, counts: &mut Vec<usize>) {
        match self {
            Term::Var(i) => {
                if *i >= counts.len() {
                    counts.resize(i + 1, 0);
                }
                counts[*i] += 1;
            }
            Term::App(_, args) => args.iter().for_each(|a| a.count_into(counts)),
        }
    }

    /// No variable occurs more than once.
    pub fn is_linear(&self) -> bool {
        self.occurrences(0).iter().all(|&c| c <= 1)
    }

    /// The variables that occur, ascending, without repeats.
    pub fn variables(&self) -> Vec<usize> {
        self.occurrences(0).iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, _)| i).collect()
    }

    /// Replaces every `Var(i)` by `Var(map[i])`.
    pub fn rename(&self, map: &[usize]) -> Term {
        match self {
            Term::Var(i) => Term::Var(map[*i]),
            Term::App(op, args) => Term::App(*op, args.iter().map(|a| a.rename(map)).collect()),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Bottom-up evaluation with `apply(op, args)` at every node.
    pub fn eval<T: Clone>(&self, env: &[T], apply: &mut impl FnMut(usize, &[T]) -> T) -> Result<T> {
        match self {
            Term::Var(i) => env.get(*i).cloned().ok_or_else(|| Error::input(format!("unbound variable x{}", i + 1))),
            Term::App(op, args) => {
                let vals = args.iter().map(|a| a.eval(env, apply)).collect::<Result<Vec<T>>>()?;
                Ok(apply(*op, &vals))
            }
        }
    }

    pub fn display(&self, sig: &Signature, vars: &[&str]) -> String {
        match self {
            Term::Var(i) => vars.get(*i).map(|v| v.to_string()).unwrap_or_else(|| format!("x{}", i + 1)),
            Term::App(op, args) if args.is_empty() => sig.name(*op).to_string(),
            Term::App(op, args) => {
                let inner: Vec<String> = args.iter().map(|a| a.display(sig, vars)).collect();
                format!("({} {})", sig.name(*op), inner.join(" "))
            }
        }
    }
}

fn tokenize(src: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if !cur.is_empty() {
                out.push(core::mem::take(&mut cur));
            }
            if !ch.is_whitespace() {
                out.push(ch.to_string());
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_term(tokens: &[String], pos: &mut usize, sig: &Signature, vars: &[&str]) -> Result<Term> {
    let tok = tokens.get(*pos).ok_or_else(|| Error::input("unexpected end of term"))?;
    *pos += 1;
    match tok.as_str() {
        ")" => Err(Error::input("unexpected `)`")),
        "(" => {
            let name = tokens.get(*pos).ok_or_else(|| Error::input("unexpected end of term"))?;
            *pos += 1;
            let op = sig.find(name).ok_or_else(|| Error::input(format!("unknown operation `{name}`")))?;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_term(tokens, pos, sig, vars)?),
                    None => return Err(Error::input("missing `)`")),
                }
            }
            let t = Term::App(op, args);
            t.validate(sig, usize::MAX)?;
            Ok(t)
        }
        name => {
            if let Some(i) = vars.iter().position(|v| v == &name) {
                Ok(Term::Var(i))
            } else if let Some(op) = sig.find(name) {
                let t = Term::App(op, Vec::new());
                t.validate(sig, 0)?;
                Ok(t)
            } else {
                Err(Error::input(format!("unbound variable `{name}`")))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sig() -> Signature {
        Signature::new([("comp", 2), ("dom", 1), ("id", 0)])
    }

    #[test]
    fn parses_nested_terms() {
        let t = Term::parse("(comp (dom x) y)", &sig(), &["x", "y"]).unwrap();
        assert_eq!(t, Term::app(0, vec![Term::app(1, vec![Term::var(0)]), Term::var(1)]));
        assert_eq!(t.depth(), 2);
        assert!(t.is_linear());
        assert_eq!(t.display(&sig(), &["x", "y"]), "(comp (dom x) y)");
    }

    #[test]
    fn constants_bare_or_applied() {
        let a = Term::parse("id", &sig(), &[]).unwrap();
        let b = Term::parse("(id)", &sig(), &[]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.depth(), 1);
    }

    #[test]
    fn rejects_bad_terms() {
        for bad in ["(comp x)", "(dom x y)", "(foo x)", "z", "(dom x", "x)", "", "(id x)"] {
            assert!(Term::parse(bad, &sig(), &["x", "y"]).is_err(), "{bad}");
        }
        assert!(Term::parse("x", &sig(), &["dom"]).is_err());
    }

    #[test]
    fn linearity() {
        let t = Term::parse("(comp x x)", &sig(), &["x"]).unwrap();
        assert!(!t.is_linear());
        assert_eq!(t.occurrences(1), vec![2]);
        let u = Term::parse("(comp z x)", &sig(), &["x", "y", "z"]).unwrap();
        assert_eq!(u.variables(), vec![0, 2]);
        assert_eq!(u.rename(&[0, 0, 1]), Term::parse("(comp y x)", &sig(), &["x", "y"]).unwrap());
    }

    #[test]
    fn eval_reports_unbound() {
        let t = Term::parse("(comp x y)", &sig(), &["x", "y"]).unwrap();
        let r: Result<u32> = t.eval(&[1], &mut |_, a| a.iter().sum());
        assert!(r.is_err());
        assert_eq!(t.eval(&[1, 2], &mut |_, a: &[u32]| a.iter().sum()).unwrap(), 3);
    }
}
