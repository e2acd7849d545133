//! Mixed-variance word spaces and sparse exact tensors.
//!
//! A slot is either covariant (an `E` factor, basis `f1..fd`) or
//! contravariant (an `E*` factor, basis `e1..ed`). Basis indices are
//! 1-based throughout. Slot positions passed to [`apply_two_slot`] are
//! 1-based as well: position `k` addresses slots `k` and `k + 1`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variance {
    /// An `E` slot.
    Covariant,
    /// An `E*` slot.
    Contravariant,
}

impl Variance {
    fn letter(self) -> char {
        match self {
            Variance::Covariant => 'f',
            Variance::Contravariant => 'e',
        }
    }
}

use Variance::{Contravariant, Covariant};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<Variance>);

impl Signature {
    pub fn new(slots: Vec<Variance>) -> Self {
        Signature(slots)
    }

    /// The scalar level `E^0`.
    pub fn empty() -> Self {
        Signature(Vec::new())
    }

    /// `E^{⊗n}`.
    pub fn covariant(n: usize) -> Self {
        Signature(vec![Covariant; n])
    }

    pub fn slots(&self) -> &[Variance] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_covariant(&self) -> bool {
        self.0.iter().all(|v| *v == Covariant)
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Signature(v)
    }

    pub fn prepend(&self, v: Variance) -> Signature {
        let mut s = Vec::with_capacity(self.0.len() + 1);
        s.push(v);
        s.extend_from_slice(&self.0);
        Signature(s)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "C");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|v| match v {
                Covariant => "E",
                Contravariant => "E*",
            })
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// Index sequence of a basis word; the signature lives with the tensor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn new(indices: &[usize]) -> Self {
        Word(indices.iter().map(|&i| i as u8).collect())
    }

    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, pos: usize) -> usize {
        self.0[pos] as usize
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, i: usize) -> Word {
        let mut v: SmallVec<[u8; 8]> = SmallVec::with_capacity(self.0.len() + 1);
        v.push(i as u8);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Replaces the two letters at 0-based `at`, `at + 1` with `mid`.
    fn splice(&self, at: usize, mid: &[u8]) -> Word {
        let mut v: SmallVec<[u8; 8]> = SmallVec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(mid);
        v.extend_from_slice(&self.0[at + 2..]);
        Word(v)
    }
}

/// All words of length `n` over `1..=dim`, in lexicographic order.
pub fn all_words(dim: usize, n: usize) -> impl Iterator<Item = Word> {
    let total = dim.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut code| {
        let mut v: SmallVec<[u8; 8]> = smallvec::smallvec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = (code % dim + 1) as u8;
            code /= dim;
        }
        Word(v)
    })
}

/// A word together with its signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    pub signature: Signature,
    pub word: Word,
}

impl BasisWord {
    pub fn new(signature: Signature, word: Word) -> Result<Self> {
        if signature.len() != word.len() {
            return Err(Error::DimensionMismatch {
                expected: signature.len(),
                found: word.len(),
            });
        }
        Ok(BasisWord { signature, word })
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_word(f, &self.signature, &self.word)
    }
}

fn fmt_word(f: &mut fmt::Formatter<'_>, sig: &Signature, w: &Word) -> fmt::Result {
    if w.is_empty() {
        return write!(f, "1");
    }
    for (k, (v, i)) in sig.slots().iter().zip(w.indices()).enumerate() {
        if k > 0 {
            write!(f, "⊗")?;
        }
        write!(f, "{}{}", v.letter(), i)?;
    }
    Ok(())
}

/// Runtime resource limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Longest signature any constructed tensor may have.
    pub max_word_len: usize,
    /// Largest ambient basis size (`d^n`) a computation may enumerate.
    pub max_space_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_word_len: 8,
            max_space_dim: 100_000,
        }
    }
}

impl Limits {
    pub fn check_len(&self, n: usize) -> Result<()> {
        if n > self.max_word_len {
            return Err(Error::Resource(format!(
                "word length {n} exceeds the configured maximum {}",
                self.max_word_len
            )));
        }
        Ok(())
    }

    /// Fails when `dim^n` exceeds the space cap (or overflows).
    pub fn check_space(&self, dim: usize, n: usize) -> Result<usize> {
        self.check_len(n)?;
        match dim.checked_pow(n as u32) {
            Some(s) if s <= self.max_space_dim => Ok(s),
            _ => Err(Error::Resource(format!(
                "space of dimension {dim}^{n} exceeds the cap {}",
                self.max_space_dim
            ))),
        }
    }
}

/// A finite linear combination of basis words sharing one signature.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    sig: Signature,
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero(sig: Signature) -> Self {
        Tensor {
            sig,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar `1` at level `E^0`.
    pub fn unit() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        let mut t = Self::zero(Signature::empty());
        t.add_term(Word::empty(), c);
        t
    }

    pub fn basis(sig: Signature, indices: &[usize]) -> Self {
        assert_eq!(sig.len(), indices.len(), "signature/index length mismatch");
        let mut t = Self::zero(sig);
        t.add_term(Word::new(indices), Scalar::one());
        t
    }

    /// `f_{i1} ⊗ … ⊗ f_{in}`.
    pub fn covariant(indices: &[usize]) -> Self {
        Self::basis(Signature::covariant(indices.len()), indices)
    }

    /// Builds a tensor from `(word, coefficient)` pairs, summing repeats.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut t = Self::zero(sig);
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn degree(&self) -> usize {
        self.sig.len()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Coefficient on the empty word of a scalar-level tensor.
    pub fn scalar_value(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        debug_assert_eq!(w.len(), self.sig.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`, signatures assumed equal.
    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        debug_assert_eq!(self.sig, other.sig);
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), if c.is_one() { a.clone() } else { a.mul(c) });
        }
    }

    fn check_same(&self, other: &Tensor) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig.to_string(),
                right: other.sig.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other)?;
        let mut t = self.clone();
        t.add_scaled(other, &Scalar::one());
        Ok(t)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same(other)?;
        let mut t = self.clone();
        t.add_scaled(other, &Scalar::from_int(-1));
        Ok(t)
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.sig.clone());
        }
        Tensor {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&Scalar::from_int(-1))
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut t = Tensor::zero(self.sig.concat(&other.sig));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                t.add_term(u.concat(v), a.mul(b));
            }
        }
        t
    }

    /// `x_i ⊗ self` for a single basis vector of the given variance.
    pub fn prepend_basis(&self, v: Variance, i: usize) -> Tensor {
        Tensor {
            sig: self.sig.prepend(v),
            terms: self.terms.iter().map(|(w, a)| (w.prepend(i), a.clone())).collect(),
        }
    }

    /// Coefficient-wise map, dropping terms that become zero.
    pub fn try_map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<Tensor> {
        let mut t = Tensor::zero(self.sig.clone());
        for (w, a) in &self.terms {
            t.add_term(w.clone(), f(a)?);
        }
        Ok(t)
    }
}

/// Bilinear tensor product.
pub fn tensor_product(s: &Tensor, t: &Tensor) -> Tensor {
    s.tensor(t)
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                if c.needs_parens() {
                    write!(f, "({c})*")?;
                } else {
                    write!(f, "{c}*")?;
                }
            }
            fmt_word(f, &self.sig, w)?;
        }
        Ok(())
    }
}

/// A linear map on two adjacent slots, stored as sparse columns of a
/// `d² × d²` matrix. The evaluation `E*⊗E → C` is the case with no output
/// slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSlotMap {
    dim: usize,
    input: [Variance; 2],
    output: Option<[Variance; 2]>,
    /// Column `(a-1)*d + (b-1)` holds the image of the input pair `(a, b)`.
    cols: Vec<Vec<(SmallVec<[u8; 2]>, Scalar)>>,
}

impl TwoSlotMap {
    /// Map with entries `m_{i,j,k,l}`: input pair `(i, j)` goes to
    /// `Σ m_{i,j,k,l} (k, l)`.
    pub fn from_entries(
        dim: usize,
        input: [Variance; 2],
        output: [Variance; 2],
        entries: impl IntoIterator<Item = ([usize; 4], Scalar)>,
        name: &'static str,
    ) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut cols = vec![Vec::new(); dim * dim];
        for ([i, j, k, l], c) in entries {
            for x in [i, j, k, l] {
                if x == 0 || x > dim {
                    return Err(Error::IndexOutOfRange { index: x, dim });
                }
            }
            if !seen.insert((i, j, k, l)) {
                return Err(Error::DuplicateEntry(i, j, k, l, name));
            }
            if !c.is_zero() {
                cols[(i - 1) * dim + (j - 1)].push((SmallVec::from_slice(&[k as u8, l as u8]), c));
            }
        }
        for col in &mut cols {
            col.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok(TwoSlotMap {
            dim,
            input,
            output: Some(output),
            cols,
        })
    }

    pub fn identity(dim: usize, pair: [Variance; 2]) -> Self {
        let mut cols = vec![Vec::new(); dim * dim];
        for a in 1..=dim {
            for b in 1..=dim {
                cols[(a - 1) * dim + (b - 1)].push((SmallVec::from_slice(&[a as u8, b as u8]), Scalar::one()));
            }
        }
        TwoSlotMap {
            dim,
            input: pair,
            output: Some(pair),
            cols,
        }
    }

    /// `ev(e_i ⊗ f_j) = δ_{i,j}`.
    pub fn evaluation(dim: usize) -> Self {
        let mut cols = vec![Vec::new(); dim * dim];
        for a in 1..=dim {
            cols[(a - 1) * dim + (a - 1)].push((SmallVec::new(), Scalar::one()));
        }
        TwoSlotMap {
            dim,
            input: [Contravariant, Covariant],
            output: None,
            cols,
        }
    }

    /// A bilinear pairing `E* ⊗ E → K` with `p(e_i ⊗ f_j) = m_{i,j}`.
    pub fn pairing(dim: usize, entries: impl IntoIterator<Item = ([usize; 2], Scalar)>) -> Result<Self> {
        let mut cols = vec![Vec::new(); dim * dim];
        for ([i, j], c) in entries {
            for x in [i, j] {
                if x == 0 || x > dim {
                    return Err(Error::IndexOutOfRange { index: x, dim });
                }
            }
            let col: &mut Vec<(SmallVec<[u8; 2]>, Scalar)> = &mut cols[(i - 1) * dim + (j - 1)];
            if !col.is_empty() {
                return Err(Error::DuplicateEntry(i, j, 0, 0, "pairing"));
            }
            if !c.is_zero() {
                col.push((SmallVec::new(), c));
            }
        }
        Ok(TwoSlotMap {
            dim,
            input: [Contravariant, Covariant],
            output: None,
            cols,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn input(&self) -> [Variance; 2] {
        self.input
    }

    pub fn output(&self) -> Option<[Variance; 2]> {
        self.output
    }

    /// Image of the input pair `(a, b)` as `(output indices, coefficient)`.
    pub fn column(&self, a: usize, b: usize) -> &[(SmallVec<[u8; 2]>, Scalar)] {
        &self.cols[(a - 1) * self.dim + (b - 1)]
    }

    /// Matrix element `m_{i,j,k,l}`.
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        self.column(i, j)
            .iter()
            .find(|(o, _)| o.as_slice() == [k as u8, l as u8])
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Nonzero entries in `(i, j, k, l)` lexicographic order.
    pub fn entries(&self) -> Vec<([usize; 4], Scalar)> {
        let mut out = Vec::new();
        for i in 1..=self.dim {
            for j in 1..=self.dim {
                for (o, c) in self.column(i, j) {
                    if o.len() == 2 {
                        out.push(([i, j, o[0] as usize, o[1] as usize], c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &TwoSlotMap) -> Result<TwoSlotMap> {
        if other.output != Some(self.input) || self.dim != other.dim {
            return Err(Error::Invalid("two-slot maps do not compose".into()));
        }
        let d = self.dim;
        let mut cols = vec![Vec::new(); d * d];
        for a in 1..=d {
            for b in 1..=d {
                let mut acc: BTreeMap<SmallVec<[u8; 2]>, Scalar> = BTreeMap::new();
                for (mid, c1) in other.column(a, b) {
                    for (out, c2) in self.column(mid[0] as usize, mid[1] as usize) {
                        let e = acc.entry(out.clone()).or_default();
                        *e = e.add(&c1.mul(c2));
                    }
                }
                cols[(a - 1) * d + (b - 1)] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            }
        }
        Ok(TwoSlotMap {
            dim: d,
            input: other.input,
            output: self.output,
            cols,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.output == Some(self.input) && *self == TwoSlotMap::identity(self.dim, self.input)
    }

    /// Entry-wise map of the coefficients (used for specializing `q`).
    pub fn try_map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<TwoSlotMap> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for col in &self.cols {
            let mut new = Vec::with_capacity(col.len());
            for (o, c) in col {
                let v = f(c)?;
                if !v.is_zero() {
                    new.push((o.clone(), v));
                }
            }
            cols.push(new);
        }
        Ok(TwoSlotMap { cols, ..self.clone() })
    }
}

/// Applies `m` to slots `pos`, `pos + 1` (1-based) of every term of `t`.
pub fn apply_two_slot(m: &TwoSlotMap, t: &Tensor, pos: usize) -> Result<Tensor> {
    let slots = t.sig.slots();
    if pos == 0 || pos + 1 > slots.len() {
        return Err(Error::SlotOutOfRange { pos, len: slots.len() });
    }
    let at = pos - 1;
    if slots[at..at + 2] != m.input {
        return Err(Error::SlotMismatch {
            pos,
            expected: m.input.to_vec(),
            found: slots[at..at + 2].to_vec(),
        });
    }
    let mut sig = Vec::with_capacity(slots.len());
    sig.extend_from_slice(&slots[..at]);
    if let Some(out) = m.output {
        sig.extend_from_slice(&out);
    }
    sig.extend_from_slice(&slots[at + 2..]);
    let mut out = Tensor::zero(Signature(sig));
    for (w, a) in &t.terms {
        for (o, c) in m.column(w.get(at), w.get(at + 1)) {
            out.add_term(w.splice(at, o), a.mul(c));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flip(dim: usize, input: [Variance; 2], output: [Variance; 2]) -> TwoSlotMap {
        let entries = (1..=dim).flat_map(|i| (1..=dim).map(move |j| ([i, j, j, i], Scalar::one())));
        TwoSlotMap::from_entries(dim, input, output, entries, "flip").unwrap()
    }

    #[test]
    fn evaluation_pairs_dual_basis() {
        let ev = TwoSlotMap::evaluation(2);
        let t = Tensor::basis(Signature::new(vec![Contravariant, Covariant]), &[1, 1]);
        assert_eq!(apply_two_slot(&ev, &t, 1).unwrap(), Tensor::unit());
        let t = Tensor::basis(Signature::new(vec![Contravariant, Covariant]), &[1, 2]);
        assert!(apply_two_slot(&ev, &t, 1).unwrap().is_zero());
    }

    #[test]
    fn boson_twist_moves_dual_vector() {
        let c = flip(2, [Contravariant, Covariant], [Covariant, Contravariant]);
        let t = Tensor::basis(Signature::new(vec![Contravariant, Covariant, Covariant]), &[1, 2, 1]);
        let want = Tensor::basis(Signature::new(vec![Covariant, Contravariant, Covariant]), &[2, 1, 1]);
        assert_eq!(apply_two_slot(&c, &t, 1).unwrap(), want);
    }

    #[test]
    fn identity_is_neutral() {
        let id = TwoSlotMap::identity(3, [Covariant, Covariant]);
        let mut t = Tensor::covariant(&[1, 2, 3]);
        t.add_term(Word::new(&[3, 3, 1]), Scalar::q());
        for pos in 1..=2 {
            assert_eq!(apply_two_slot(&id, &t, pos).unwrap(), t);
        }
        assert!(id.is_identity());
    }

    #[test]
    fn slot_errors() {
        let c = flip(2, [Contravariant, Covariant], [Covariant, Contravariant]);
        let t = Tensor::covariant(&[1, 2]);
        assert!(matches!(apply_two_slot(&c, &t, 1), Err(Error::SlotMismatch { .. })));
        assert!(matches!(apply_two_slot(&c, &t, 2), Err(Error::SlotOutOfRange { .. })));
        assert!(matches!(apply_two_slot(&c, &t, 0), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn product_and_sums() {
        let f1 = Tensor::covariant(&[1]);
        let f2 = Tensor::covariant(&[2]);
        assert_eq!(tensor_product(&f1, &f2), Tensor::covariant(&[1, 2]));
        let s = f1.add(&f2).unwrap();
        let want = Tensor::covariant(&[1, 1]).add(&Tensor::covariant(&[2, 1])).unwrap();
        assert_eq!(tensor_product(&s, &f1), want);
        let lhs = tensor_product(&f1.scale(&Scalar::from_int(2)), &f2.scale(&Scalar::q()));
        assert_eq!(lhs, Tensor::covariant(&[1, 2]).scale(&Scalar::from_int(2).mul(&Scalar::q())));
        assert!(f1.add(&f1.neg()).unwrap().is_zero());
        let zero = Tensor::zero(Signature::covariant(1));
        assert_eq!(zero.add(&f1).unwrap(), f1);
        assert!(matches!(f1.add(&Tensor::covariant(&[1, 1])), Err(Error::SignatureMismatch { .. })));
    }

    #[test]
    fn words_enumerate_lexicographically() {
        let ws: Vec<Word> = all_words(2, 2).collect();
        assert_eq!(ws, vec![Word::new(&[1, 1]), Word::new(&[1, 2]), Word::new(&[2, 1]), Word::new(&[2, 2])]);
        assert_eq!(all_words(3, 0).count(), 1);
    }

    #[test]
    fn rejects_bad_entries() {
        let cc = [Covariant, Covariant];
        let e = TwoSlotMap::from_entries(2, cc, cc, [([1, 2, 3, 1], Scalar::one())], "B");
        assert_eq!(e, Err(Error::IndexOutOfRange { index: 3, dim: 2 }));
        let e = TwoSlotMap::from_entries(2, cc, cc, [([1, 2, 2, 1], Scalar::one()), ([1, 2, 2, 1], Scalar::one())], "B");
        assert_eq!(e, Err(Error::DuplicateEntry(1, 2, 2, 1, "B")));
    }
}
