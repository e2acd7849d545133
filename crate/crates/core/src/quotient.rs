//! Exact linear algebra for the graded ideal `J`, the dual relation space
//! `J₂*`, the projections `π_n` and the induced operators `d_i`, `d_i⁺` on
//! the quotient `A = TE/J`.
//!
//! Subspaces are kept in reduced echelon form where the pivot of each row is
//! its lexicographically greatest word. Coset representatives are then the
//! reductions modulo the rows, spanned by the non-pivot words.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use crate::contraction::ContractionEngine;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{all_words, apply_two_slot, Limits, Signature, Tensor, TwoSlotMap, Variance, Word};
use crate::twist::TwistSystem;

type Row = BTreeMap<Word, Scalar>;

fn axpy(v: &mut Row, row: &Row, c: &Scalar) {
    for (u, a) in row {
        let delta = a.mul(c);
        match v.get_mut(u) {
            Some(x) => {
                let s = x.add(&delta);
                if s.is_zero() {
                    v.remove(u);
                } else {
                    *x = s;
                }
            }
            None => {
                if !delta.is_zero() {
                    v.insert(u.clone(), delta);
                }
            }
        }
    }
}

/// Incremental semi-echelon basis: every row has coefficient 1 on its
/// pivot (greatest word) and no other word of any row exceeds its pivot.
/// Optionally tracks a preimage per row, which turns it into a solver for
/// `M x = b` when rows are inserted as `(M x_k, x_k)`.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    sig: Signature,
    rows: BTreeMap<Word, (Row, Option<Tensor>)>,
}

impl EchelonBuilder {
    pub fn new(sig: Signature) -> Self {
        EchelonBuilder {
            sig,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Sweeps `v` from its largest word downwards, eliminating pivots.
    /// Returns the accumulated combination of tracked preimages.
    fn reduce_row(&self, v: &mut Row, track: Option<&Signature>) -> Option<Tensor> {
        let mut comb = track.map(|s| Tensor::zero(s.clone()));
        let mut bound: Option<Word> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(w) = next else { break };
            if let Some((row, pre)) = self.rows.get(&w) {
                let c = v[&w].clone();
                axpy(v, row, &c.neg());
                if let (Some(acc), Some(p)) = (comb.as_mut(), pre) {
                    acc.add_scaled(p, &c);
                }
            }
            bound = Some(w);
        }
        comb
    }

    /// Remainder of `t` modulo the span.
    pub fn reduce(&self, t: &Tensor) -> Tensor {
        let mut v = t.terms().clone();
        self.reduce_row(&mut v, None);
        Tensor::from_terms(self.sig.clone(), v)
    }

    /// Adds `t` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, t: &Tensor) -> bool {
        self.insert_tracked(t, None)
    }

    /// Adds `image` with a known preimage.
    pub fn insert_tracked(&mut self, image: &Tensor, preimage: Option<&Tensor>) -> bool {
        debug_assert_eq!(image.signature(), &self.sig);
        let mut v = image.terms().clone();
        let comb = self.reduce_row(&mut v, preimage.map(|p| p.signature()));
        let Some((pivot, lead)) = v.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.inv().expect("pivot coefficient is nonzero");
        let row: Row = v.into_iter().map(|(w, c)| (w, c.mul(&inv))).collect();
        let pre = match (preimage, comb) {
            (Some(p), Some(c)) => Some(p.sub(&c).expect("same signature").scale(&inv)),
            _ => None,
        };
        self.rows.insert(pivot, (row, pre));
        true
    }

    /// Preimage of `target` when it lies in the span of tracked rows.
    pub fn solve(&self, target: &Tensor) -> std::result::Result<Tensor, Tensor> {
        let domain = self
            .rows
            .values()
            .find_map(|(_, p)| p.as_ref().map(|p| p.signature().clone()))
            .unwrap_or_default();
        let mut v = target.terms().clone();
        let comb = self.reduce_row(&mut v, Some(&domain));
        if v.is_empty() {
            Ok(comb.expect("tracking requested"))
        } else {
            Err(Tensor::from_terms(self.sig.clone(), v))
        }
    }

    /// Back-substitutes into reduced echelon form.
    pub fn finish(self) -> Subspace {
        let mut done: BTreeMap<Word, Row> = BTreeMap::new();
        for (pivot, (mut row, _)) in self.rows {
            let hits: Vec<(Word, Scalar)> = row
                .iter()
                .filter(|(w, _)| **w != pivot && done.contains_key(*w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            for (w, c) in hits {
                axpy(&mut row, &done[&w], &c.neg());
            }
            done.insert(pivot, row);
        }
        Subspace {
            sig: self.sig,
            rows: done,
        }
    }
}

/// A subspace of a word space in reduced echelon form. Two equal subspaces
/// have identical row lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    sig: Signature,
    rows: BTreeMap<Word, Row>,
}

impl Subspace {
    pub fn zero(sig: Signature) -> Self {
        Subspace {
            sig,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<'a>(sig: Signature, gens: impl IntoIterator<Item = &'a Tensor>) -> Self {
        let mut b = EchelonBuilder::new(sig);
        for g in gens {
            b.insert(g);
        }
        b.finish()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, w: &Word) -> bool {
        self.rows.contains_key(w)
    }

    /// Basis rows in increasing pivot order.
    pub fn basis(&self) -> Vec<Tensor> {
        self.rows
            .values()
            .map(|r| Tensor::from_terms(self.sig.clone(), r.iter().map(|(w, c)| (w.clone(), c.clone()))))
            .collect()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Word> {
        self.rows.keys()
    }

    fn check_sig(&self, t: &Tensor) -> Result<()> {
        if t.signature() != &self.sig {
            return Err(Error::SignatureMismatch {
                left: self.sig.to_string(),
                right: t.signature().to_string(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `t` modulo the subspace.
    pub fn reduce(&self, t: &Tensor) -> Result<Tensor> {
        self.check_sig(t)?;
        let mut v = t.terms().clone();
        for (w, c) in t.terms() {
            if let Some(row) = self.rows.get(w) {
                axpy(&mut v, row, &c.neg());
            }
        }
        Ok(Tensor::from_terms(self.sig.clone(), v))
    }

    /// Membership test; the remainder is the witness (zero iff member).
    pub fn membership(&self, t: &Tensor) -> Result<(bool, Tensor)> {
        let r = self.reduce(t)?;
        Ok((r.is_zero(), r))
    }

    pub fn contains(&self, t: &Tensor) -> Result<bool> {
        Ok(self.reduce(t)?.is_zero())
    }

    /// Non-pivot words, i.e. the basis of the canonical complement.
    pub fn complement_words(&self, dim: usize) -> Vec<Word> {
        all_words(dim, self.sig.len()).filter(|w| !self.rows.contains_key(w)).collect()
    }
}

/// `Im(1 - M)` for a two-slot endomorphism on its own slot pair.
fn image_of_one_minus(m: &TwoSlotMap) -> Subspace {
    let sig = Signature::new(m.input().to_vec());
    let d = m.dim();
    let mut b = EchelonBuilder::new(sig.clone());
    for w in all_words(d, 2) {
        let x = Tensor::basis(sig.clone(), &[w.get(0), w.get(1)]);
        let mx = apply_two_slot(m, &x, 1).expect("endomorphism of its slot pair");
        b.insert(&x.sub(&mx).expect("same signature"));
    }
    b.finish()
}

/// `J_n`: `J_0 = J_1 = 0`, `J_2 = Im(1 - B)`, `J_n = E ⊗ J_{n-1} + J_{n-1} ⊗ E`.
pub fn ideal_level(ts: &TwistSystem, n: usize, limits: &Limits) -> Result<Subspace> {
    let q = Quotient::new(ts.clone(), *limits);
    Ok(q.ideal(n)?.as_ref().clone())
}

/// One graded piece `A^{⊙n} = E^{⊗n} / J_n`.
#[derive(Clone, Debug)]
pub struct QuotientLevel {
    pub degree: usize,
    pub dim: usize,
    pub ideal: Arc<Subspace>,
}

impl QuotientLevel {
    /// `π_n`, realized as reduction to the canonical representative.
    pub fn project(&self, t: &Tensor) -> Result<Tensor> {
        self.ideal.reduce(t)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim.pow(self.degree as u32)
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim() - self.ideal.dim()
    }

    /// Basis words of the complement.
    pub fn representatives(&self) -> Vec<Word> {
        self.ideal.complement_words(self.dim)
    }
}

const STATUS_UNKNOWN: u8 = 0;
const STATUS_OK: u8 = 1;
const STATUS_BAD: u8 = 2;

/// The quotient algebra `TE/J` of a twist system, with levels built on
/// demand and memoized.
#[derive(Debug)]
pub struct Quotient {
    ts: TwistSystem,
    limits: Limits,
    levels: Mutex<Vec<Arc<Subspace>>>,
    dual: OnceLock<Arc<Subspace>>,
    status: AtomicU8,
    status_reason: Mutex<String>,
}

impl Quotient {
    pub fn new(ts: TwistSystem, limits: Limits) -> Self {
        Quotient {
            ts,
            limits,
            levels: Mutex::new(Vec::new()),
            dual: OnceLock::new(),
            status: AtomicU8::new(STATUS_UNKNOWN),
            status_reason: Mutex::new(String::new()),
        }
    }

    pub fn twist(&self) -> &TwistSystem {
        &self.ts
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `J_n` (built bottom-up, sequentially).
    pub fn ideal(&self, n: usize) -> Result<Arc<Subspace>> {
        let d = self.ts.dim();
        self.limits.check_space(d, n)?;
        let mut levels = self.levels.lock().expect("ideal cache poisoned");
        while levels.len() <= n {
            let k = levels.len();
            let sig = Signature::covariant(k);
            let level = match k {
                0 | 1 => Subspace::zero(sig),
                2 => image_of_one_minus(self.ts.b()),
                _ => {
                    let prev = levels[k - 1].basis();
                    let mut b = EchelonBuilder::new(sig);
                    for v in &prev {
                        for i in 1..=d {
                            let f = Tensor::covariant(&[i]);
                            b.insert(&f.tensor(v));
                            b.insert(&v.tensor(&f));
                        }
                    }
                    b.finish()
                }
            };
            levels.push(Arc::new(level));
        }
        Ok(levels[n].clone())
    }

    pub fn level(&self, n: usize) -> Result<QuotientLevel> {
        Ok(QuotientLevel {
            degree: n,
            dim: self.ts.dim(),
            ideal: self.ideal(n)?,
        })
    }

    /// `J₂* = Im(1 - B̃) ⊂ E* ⊗ E*`.
    pub fn dual_relations(&self) -> Arc<Subspace> {
        self.dual
            .get_or_init(|| Arc::new(image_of_one_minus(self.ts.btilde())))
            .clone()
    }

    pub fn project(&self, t: &Tensor) -> Result<Tensor> {
        if !t.signature().is_covariant() {
            return Err(Error::SignatureMismatch {
                left: Signature::covariant(t.degree()).to_string(),
                right: t.signature().to_string(),
            });
        }
        self.ideal(t.degree())?.reduce(t)
    }

    /// Records the outcome of the well-definedness checks.
    pub fn record_well_defined(&self, ok: bool, reason: &str) {
        self.status.store(if ok { STATUS_OK } else { STATUS_BAD }, Ordering::SeqCst);
        *self.status_reason.lock().expect("status poisoned") = reason.to_string();
    }

    /// `Some(true/false)` once a check has recorded a verdict.
    pub fn well_defined(&self) -> Option<bool> {
        match self.status.load(Ordering::SeqCst) {
            STATUS_OK => Some(true),
            STATUS_BAD => Some(false),
            _ => None,
        }
    }

    fn gate(&self) -> Result<()> {
        if self.status.load(Ordering::SeqCst) == STATUS_BAD {
            return Err(Error::NotWellDefined(self.status_reason.lock().expect("status poisoned").clone()));
        }
        Ok(())
    }

    fn engine(&self) -> Result<ContractionEngine<'_>> {
        ContractionEngine::new(&self.ts, self.limits.max_word_len)
    }

    /// `d_{n,i} = π_{n-1} ∘ a_{n,i}` on a canonical representative.
    pub fn annihilate(&self, i: usize, rep: &Tensor) -> Result<Tensor> {
        self.gate()?;
        self.annihilate_unchecked(i, rep)
    }

    /// `d⁺_{n,j} = π_{n+1} ∘ a⁺_{n,j}` on a canonical representative.
    pub fn create(&self, j: usize, rep: &Tensor) -> Result<Tensor> {
        self.gate()?;
        self.create_unchecked(j, rep)
    }

    pub(crate) fn annihilate_unchecked(&self, i: usize, rep: &Tensor) -> Result<Tensor> {
        let a = self.engine()?.annihilate(i, rep)?;
        if rep.degree() == 0 {
            return Ok(a);
        }
        self.project(&a)
    }

    pub(crate) fn create_unchecked(&self, j: usize, rep: &Tensor) -> Result<Tensor> {
        let c = self.engine()?.create(j, rep)?;
        self.project(&c)
    }

    /// `n -> (d^n, dim J_n, dim A^{⊙n})` for `n = 0..=max_degree`.
    pub fn dimension_table(&self, max_degree: usize) -> Result<Vec<(usize, usize, usize, usize)>> {
        (0..=max_degree)
            .map(|n| {
                let lvl = self.level(n)?;
                Ok((n, lvl.ambient_dim(), lvl.ideal.dim(), lvl.quotient_dim()))
            })
            .collect()
    }
}

/// Subspace of `E* ⊗ E*` or `E ⊗ E` checks need as a witness signature.
pub fn pair_signature(v: Variance) -> Signature {
    Signature::new(vec![v, v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::builtin_preset;

    fn quotient(name: &str, d: usize) -> Quotient {
        Quotient::new(builtin_preset(name, d).unwrap(), Limits::default())
    }

    #[test]
    fn boson_and_fermion_second_level() {
        let q = quotient("boson", 2);
        assert_eq!(q.ideal(2).unwrap().dim(), 1);
        assert_eq!(q.level(2).unwrap().quotient_dim(), 3);
        let f = quotient("fermion", 2);
        assert_eq!(f.ideal(2).unwrap().dim(), 3);
        assert_eq!(f.level(2).unwrap().quotient_dim(), 1);
    }

    #[test]
    fn identity_b_gives_zero_ideal() {
        let ts = TwistSystem::new(2, (1..=2).flat_map(|i| (1..=2).map(move |j| ([i, j, i, j], Scalar::one()))), [], []).unwrap();
        let q = Quotient::new(ts, Limits::default());
        for n in 0..=4 {
            assert_eq!(q.ideal(n).unwrap().dim(), 0);
        }
    }

    #[test]
    fn membership_examples() {
        let antisym = Tensor::covariant(&[1, 2]).sub(&Tensor::covariant(&[2, 1])).unwrap();
        let b = quotient("boson", 2);
        assert!(b.ideal(2).unwrap().contains(&antisym).unwrap());
        assert!(b.ideal(2).unwrap().contains(&Tensor::zero(Signature::covariant(2))).unwrap());
        let f = quotient("fermion", 2);
        let (member, rem) = f.ideal(2).unwrap().membership(&antisym).unwrap();
        assert!(!member);
        assert!(!rem.is_zero());
        assert!(f.ideal(2).unwrap().membership(&Tensor::covariant(&[1])).is_err());
    }

    #[test]
    fn projection_identifies_flipped_words() {
        let b = quotient("boson", 2);
        let a = b.project(&Tensor::covariant(&[2, 1])).unwrap();
        assert_eq!(a, b.project(&Tensor::covariant(&[1, 2])).unwrap());
        // representatives are the lexicographically smallest words
        assert_eq!(a, Tensor::covariant(&[1, 2]));
        let ts = b.twist().clone();
        for w in all_words(2, 2) {
            let x = Tensor::basis(Signature::covariant(2), &[w.get(0), w.get(1)]);
            let bx = apply_two_slot(ts.b(), &x, 1).unwrap();
            assert_eq!(b.project(&x).unwrap(), b.project(&bx).unwrap());
        }
    }

    #[test]
    fn quotient_annihilation() {
        let b = quotient("boson", 2);
        let rep = b.project(&Tensor::covariant(&[2, 1])).unwrap();
        assert_eq!(b.annihilate(1, &rep).unwrap(), Tensor::covariant(&[2]));
        b.record_well_defined(false, "test");
        assert!(matches!(b.annihilate(1, &rep), Err(Error::NotWellDefined(_))));
        assert!(matches!(b.create(1, &rep), Err(Error::NotWellDefined(_))));
    }

    #[test]
    fn echelon_form_is_canonical() {
        let sig = Signature::covariant(2);
        let x = Tensor::covariant(&[1, 2]);
        let y = Tensor::covariant(&[2, 1]).scale(&Scalar::q());
        let s1 = Subspace::spanned_by(sig.clone(), [&x, &y]);
        let xy = x.add(&y).unwrap();
        let s2 = Subspace::spanned_by(sig, [&xy, &x.scale(&Scalar::from_int(3))]);
        assert_eq!(s1, s2);
    }

    #[test]
    fn tracked_solver() {
        let sig = Signature::covariant(2);
        let mut b = EchelonBuilder::new(sig.clone());
        let pre1 = Tensor::covariant(&[1]);
        let pre2 = Tensor::covariant(&[2]);
        let img1 = Tensor::covariant(&[1, 2]).add(&Tensor::covariant(&[2, 2])).unwrap();
        let img2 = Tensor::covariant(&[2, 2]).scale(&Scalar::from_int(2));
        b.insert_tracked(&img1, Some(&pre1));
        b.insert_tracked(&img2, Some(&pre2));
        let target = Tensor::covariant(&[1, 2]);
        // target = img1 - img2/2
        let want = pre1.sub(&pre2.scale(&Scalar::ratio(1, 2))).unwrap();
        assert_eq!(b.solve(&target).unwrap(), want);
        assert!(b.solve(&Tensor::covariant(&[1, 1])).is_err());
    }
}
