//! Words in creation and annihilation symbols, their normal ordering under
//! `a_i a⁺_j = δ_{i,j} + Σ c_{i,j,k,l} a⁺_k a_l`, and their action on the
//! tensor algebra.
//!
//! Only the `C`-relation is used as a rewrite rule. Within the creator and
//! annihilator blocks the order is left as it is.

use std::collections::BTreeMap;
use std::fmt;

use crate::contraction::ContractionEngine;
use crate::error::{Error, Result};
use crate::grammar::{lex, Parser, Tok};
use crate::scalar::Scalar;
use crate::tensor::{Signature, Tensor};
use crate::twist::TwistSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// `a⁺_j`, written `Aj`.
    Cre(usize),
    /// `a_i`, written `ai`.
    Ann(usize),
}

impl Symbol {
    pub fn index(self) -> usize {
        match self {
            Symbol::Cre(i) | Symbol::Ann(i) => i,
        }
    }

    pub fn is_creator(self) -> bool {
        matches!(self, Symbol::Cre(_))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Cre(j) => write!(f, "A{j}"),
            Symbol::Ann(i) => write!(f, "a{i}"),
        }
    }
}

pub type Monomial = Vec<Symbol>;

/// Annihilator/creator pairs in the wrong order.
pub fn inversions(m: &[Symbol]) -> usize {
    let mut anns = 0;
    let mut inv = 0;
    for s in m {
        if s.is_creator() {
            inv += anns;
        } else {
            anns += 1;
        }
    }
    inv
}

/// `#creators - #annihilators`.
pub fn net_degree(m: &[Symbol]) -> isize {
    m.iter().map(|s| if s.is_creator() { 1 } else { -1 }).sum()
}

/// Formal linear combination of symbol words; zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpWord {
    terms: BTreeMap<Monomial, Scalar>,
}

impl OpWord {
    pub fn zero() -> Self {
        OpWord::default()
    }

    /// The empty word `ε`.
    pub fn identity() -> Self {
        OpWord::monomial(Scalar::one(), Vec::new())
    }

    pub fn monomial(c: Scalar, symbols: Monomial) -> Self {
        let mut w = OpWord::zero();
        w.add_term(symbols, c);
        w
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        OpWord::monomial(Scalar::one(), symbols.to_vec())
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[Symbol]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &OpWord) -> OpWord {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> OpWord {
        let mut out = OpWord::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.mul(c));
        }
        out
    }

    /// Concatenation product `self · other`.
    pub fn mul(&self, other: &OpWord) -> OpWord {
        let mut out = OpWord::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.mul(b));
            }
        }
        out
    }

    /// Longest monomial.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_normal_ordered(&self) -> bool {
        self.terms.keys().all(|m| inversions(m) == 0)
    }

    pub fn check_indices(&self, dim: usize) -> Result<()> {
        for s in self.terms.keys().flatten() {
            if s.index() == 0 || s.index() > dim {
                return Err(Error::IndexOutOfRange { index: s.index(), dim });
            }
        }
        Ok(())
    }

    /// Parses `a1 A2`, `2*A1 a1 + q^-1 ε` and the like. Coefficients use the
    /// scalar grammar; `q` is accepted only when `allow_q` is set.
    pub fn parse(src: &str, allow_q: bool) -> Result<OpWord> {
        let toks = lex(src, true)?;
        let mut p = Parser::new(&toks, src, allow_q);
        let mut out = OpWord::zero();
        let mut sign = Scalar::one();
        if p.peek() == Some(&Tok::Minus) {
            p.bump();
            sign = sign.neg();
        }
        loop {
            let (m, c) = parse_term(&mut p)?;
            out.add_term(m, c.mul(&sign));
            match p.peek() {
                None => break,
                Some(Tok::Plus) => sign = Scalar::one(),
                Some(Tok::Minus) => sign = Scalar::from_int(-1),
                Some(_) => {
                    return Err(Error::Parse {
                        column: p.col(),
                        message: "expected `+`, `-` or end of input".into(),
                    })
                }
            }
            p.bump();
        }
        Ok(out)
    }
}

fn parse_term(p: &mut Parser<'_>) -> Result<(Monomial, Scalar)> {
    let mut coeff = Scalar::one();
    let mut had_coeff = false;
    if matches!(p.peek(), Some(Tok::Int(_) | Tok::Q | Tok::LParen | Tok::Minus)) {
        coeff = p.term()?;
        had_coeff = true;
        if p.peek() == Some(&Tok::Star) {
            p.bump();
        }
    }
    let mut m = Vec::new();
    let mut eps = false;
    loop {
        match p.peek() {
            Some(Tok::Op { creator, index }) => {
                m.push(if *creator { Symbol::Cre(*index) } else { Symbol::Ann(*index) });
                p.bump();
            }
            Some(Tok::Epsilon) if m.is_empty() && !eps => {
                eps = true;
                p.bump();
            }
            _ => break,
        }
    }
    if m.is_empty() && !eps && !had_coeff {
        return Err(Error::Parse {
            column: p.col(),
            message: "expected a coefficient, an operator or `ε`".into(),
        });
    }
    Ok((m, coeff))
}

impl fmt::Display for OpWord {
    /// Parseable form, e.g. `ε + A1 a1` or `q^-1 A2 a1 - 2 A1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let shown = c.to_string();
            let (neg, mag) = match shown.strip_prefix('-') {
                Some(rest) if !c.needs_parens() => (true, rest.to_string()),
                _ => (false, shown),
            };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let word: Vec<String> = m.iter().map(Symbol::to_string).collect();
            let word = if word.is_empty() { "ε".to_string() } else { word.join(" ") };
            if mag == "1" {
                f.write_str(&word)?;
            } else if c.needs_parens() {
                write!(f, "({mag}) {word}")?;
            } else {
                write!(f, "{mag} {word}")?;
            }
        }
        Ok(())
    }
}

/// Bookkeeping from one normal-ordering run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub rewrites: usize,
    /// Longest chain of rewrites leading to any monomial.
    pub max_depth: usize,
    /// Largest inversion count among the input monomials; bounds `max_depth`.
    pub initial_inversions: usize,
}

/// Rewrites until no annihilator stands left of a creator.
pub fn normal_order(ts: &TwistSystem, w: &OpWord) -> OpWord {
    normal_order_with_stats(ts, w).0
}

pub fn normal_order_with_stats(ts: &TwistSystem, w: &OpWord) -> (OpWord, RewriteStats) {
    let mut stats = RewriteStats {
        initial_inversions: w.terms.keys().map(|m| inversions(m)).max().unwrap_or(0),
        ..Default::default()
    };
    let mut done = OpWord::zero();
    let mut pending: BTreeMap<Monomial, (Scalar, usize)> =
        w.terms.iter().map(|(m, c)| (m.clone(), (c.clone(), 0))).collect();
    while let Some((m, (c, depth))) = pending.pop_first() {
        stats.max_depth = stats.max_depth.max(depth);
        let Some(p) = m.windows(2).position(|s| !s[0].is_creator() && s[1].is_creator()) else {
            done.add_term(m, c);
            continue;
        };
        stats.rewrites += 1;
        let (i, j) = (m[p].index(), m[p + 1].index());
        let mut push = |word: Monomial, coeff: Scalar| {
            debug_assert!(inversions(&word) < inversions(&m));
            let e = pending.entry(word).or_insert((Scalar::zero(), 0));
            e.0 = e.0.add(&coeff);
            e.1 = e.1.max(depth + 1);
        };
        if i == j {
            let mut word = m[..p].to_vec();
            word.extend_from_slice(&m[p + 2..]);
            push(word, c.clone());
        }
        for (kl, x) in ts.c().column(i, j) {
            let mut word = m[..p].to_vec();
            word.push(Symbol::Cre(kl[0] as usize));
            word.push(Symbol::Ann(kl[1] as usize));
            word.extend_from_slice(&m[p + 2..]);
            push(word, c.mul(x));
        }
        pending.retain(|_, (c, _)| !c.is_zero());
    }
    (done, stats)
}

/// Concrete action on `y ∈ E^{⊗n}`, symbols applied right to left. Every
/// monomial must change the degree by the same amount. A zero result of the
/// zero word (which has no degree) carries the degree of `y`; one that would
/// land below degree 0 carries degree 0.
pub fn act_on(ts: &TwistSystem, w: &OpWord, y: &Tensor, cap: usize) -> Result<Tensor> {
    w.check_indices(ts.dim())?;
    if !y.signature().is_covariant() {
        return Err(Error::SignatureMismatch {
            left: Signature::covariant(y.degree()).to_string(),
            right: y.signature().to_string(),
        });
    }
    let eng = ContractionEngine::new(ts, cap)?;
    let mut target: Option<isize> = None;
    let mut acc: Option<Tensor> = None;
    for (m, c) in &w.terms {
        let deg = y.degree() as isize + net_degree(m);
        match target {
            None => target = Some(deg),
            Some(t) if t != deg => {
                return Err(Error::Invalid(
                    "operator word is not homogeneous: its monomials change the degree differently".into(),
                ))
            }
            _ => {}
        }
        let mut cur = y.clone();
        for s in m.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = match s {
                Symbol::Cre(j) => eng.create(*j, &cur)?,
                Symbol::Ann(i) => eng.annihilate(*i, &cur)?,
            };
        }
        if cur.is_zero() {
            continue;
        }
        match &mut acc {
            None => acc = Some(cur.scale(c)),
            Some(a) => a.add_scaled(&cur, c),
        }
    }
    let deg = target.unwrap_or(y.degree() as isize).max(0) as usize;
    Ok(acc.unwrap_or_else(|| Tensor::zero(Signature::covariant(deg))))
}

/// Coefficient of `ε` in the normal-ordered form.
pub fn vacuum_expectation(ts: &TwistSystem, w: &OpWord) -> Scalar {
    normal_order(ts, w).coeff(&[])
}
