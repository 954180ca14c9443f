//! Diagram terms over the bialgebra generators plus `h`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// μ: 2 → 1
    Mu,
    /// η: 0 → 1
    Eta,
    /// Δ: 1 → 2
    Delta,
    /// ε: 1 → 0
    Eps,
    /// h: 1 → 1
    H,
}

impl Generator {
    pub const ALL: [Generator; 5] = [Generator::Mu, Generator::Eta, Generator::Delta, Generator::Eps, Generator::H];

    /// `(inputs, outputs)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::Mu => (2, 1),
            Generator::Eta => (0, 1),
            Generator::Delta => (1, 2),
            Generator::Eps => (1, 0),
            Generator::H => (1, 1),
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Generator::Mu => "mu",
            Generator::Eta => "eta",
            Generator::Delta => "delta",
            Generator::Eps => "eps",
            Generator::H => "h",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(Generator),
    Id,
    Empty,
    Sym,
    /// `Compose(f, g)` is `f ∘ g`: `g` runs first.
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
    /// Feeds the first output back into the first input.
    Trace(Box<Term>),
}

pub fn mu() -> Term {
    Term::Gen(Generator::Mu)
}
pub fn eta() -> Term {
    Term::Gen(Generator::Eta)
}
pub fn delta() -> Term {
    Term::Gen(Generator::Delta)
}
pub fn eps() -> Term {
    Term::Gen(Generator::Eps)
}
pub fn h() -> Term {
    Term::Gen(Generator::H)
}
pub fn id() -> Term {
    Term::Id
}
pub fn sym() -> Term {
    Term::Sym
}

pub fn compose(f: Term, g: Term) -> Term {
    Term::Compose(Box::new(f), Box::new(g))
}

pub fn tensor(f: Term, g: Term) -> Term {
    Term::Tensor(Box::new(f), Box::new(g))
}

pub fn trace(f: Term) -> Term {
    Term::Trace(Box::new(f))
}

/// `f₁ ∘ f₂ ∘ … ∘ fₖ`; the empty chain is [`Term::Empty`].
pub fn compose_all(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut v: Vec<Term> = terms.into_iter().collect();
    let Some(mut acc) = v.pop() else { return Term::Empty };
    while let Some(f) = v.pop() {
        acc = compose(f, acc);
    }
    acc
}

/// `f₁ ⊗ … ⊗ fₖ`; the empty product is [`Term::Empty`].
pub fn tensor_all(terms: impl IntoIterator<Item = Term>) -> Term {
    let mut v: Vec<Term> = terms.into_iter().collect();
    let Some(mut acc) = v.pop() else { return Term::Empty };
    while let Some(f) = v.pop() {
        acc = tensor(f, acc);
    }
    acc
}

/// `id^{⊗n}`.
pub fn ids(n: usize) -> Term {
    tensor_all(std::iter::repeat(Term::Id).take(n))
}

impl Term {
    /// `(inputs, outputs)`, or an arity error naming the offending subterm path.
    pub fn arity(&self) -> Result<(usize, usize)> {
        self.arity_at("root")
    }

    fn arity_at(&self, path: &str) -> Result<(usize, usize)> {
        Ok(match self {
            Term::Gen(g) => g.arity(),
            Term::Id => (1, 1),
            Term::Empty => (0, 0),
            Term::Sym => (2, 2),
            Term::Compose(f, g) => {
                let (fi, fo) = f.arity_at(&format!("{path}.0"))?;
                let (gi, go) = g.arity_at(&format!("{path}.1"))?;
                if go != fi {
                    return Err(Error::Arity {
                        path: path.to_string(),
                        message: format!("compose: right side has {go} outputs but left side takes {fi} inputs"),
                    });
                }
                (gi, fo)
            }
            Term::Tensor(f, g) => {
                let (fi, fo) = f.arity_at(&format!("{path}.0"))?;
                let (gi, go) = g.arity_at(&format!("{path}.1"))?;
                (fi + gi, fo + go)
            }
            Term::Trace(f) => {
                let (i, o) = f.arity_at(&format!("{path}.0"))?;
                if i == 0 || o == 0 {
                    return Err(Error::Arity {
                        path: path.to_string(),
                        message: format!("trace needs a wire to feed back, inner term is {i} -> {o}"),
                    });
                }
                (i - 1, o - 1)
            }
        })
    }

    pub fn contains_trace(&self) -> bool {
        match self {
            Term::Trace(_) => true,
            Term::Compose(f, g) | Term::Tensor(f, g) => f.contains_trace() || g.contains_trace(),
            _ => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Compose(f, g) | Term::Tensor(f, g) => 1 + f.depth().max(g.depth()),
            Term::Trace(f) => 1 + f.depth(),
            _ => 0,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => f.write_str(g.keyword()),
            Term::Id => f.write_str("id"),
            Term::Empty => f.write_str("empty"),
            Term::Sym => f.write_str("sigma"),
            Term::Compose(a, b) => write!(f, "(c {a} {b})"),
            Term::Tensor(a, b) => write!(f, "(t {a} {b})"),
            Term::Trace(a) => write!(f, "(tr {a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arities() {
        assert_eq!(compose(mu(), tensor(eta(), id())).arity().unwrap(), (1, 1));
        assert_eq!(trace(sym()).arity().unwrap(), (1, 1));
        assert_eq!(ids(3).arity().unwrap(), (3, 3));
        assert_eq!(ids(0), Term::Empty);
    }

    #[test]
    fn arity_errors_carry_the_path() {
        let bad = tensor(id(), compose(mu(), mu()));
        match bad.arity() {
            Err(Error::Arity { path, .. }) => assert_eq!(path, "root.1"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(trace(eta()).arity(), Err(Error::Arity { .. })));
    }

    #[test]
    fn nary_builders_are_right_nested() {
        assert_eq!(compose_all([h(), h(), h()]), compose(h(), compose(h(), h())));
        assert_eq!(tensor_all([id()]), id());
    }
}
