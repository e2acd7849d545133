//! The C-twisted contraction and the partial creation/annihilation
//! operators on the tensor algebra.
//!
//! `ct_n` pairs a dual vector with each of the `n` following vectors in
//! turn, threading it rightwards through `C` before each pairing:
//!
//! ```text
//! ct_n = Σ_{k=1..n} (1_{k-1} ⊗ ev ⊗ 1_{n-k}) C^{(k-1)} … C^{(1)}
//! ```
//!
//! Positions are 1-based slot numbers, so the operators here apply behind
//! any prefix of `E`/`E*` slots.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{apply_two_slot, Signature, Tensor, TwoSlotMap, Variance};
use crate::twist::TwistSystem;

#[derive(Clone, Debug)]
pub struct ContractionEngine<'a> {
    ts: &'a TwistSystem,
    ev: TwoSlotMap,
    max_degree: usize,
}

impl<'a> ContractionEngine<'a> {
    pub fn new(ts: &'a TwistSystem, max_degree: usize) -> Result<Self> {
        if max_degree == 0 {
            return Err(Error::Invalid("degree cap must be at least 1".into()));
        }
        Ok(ContractionEngine {
            ts,
            ev: TwoSlotMap::evaluation(ts.dim()),
            max_degree,
        })
    }

    /// Engine whose degree-1 contraction is an arbitrary pairing instead of
    /// the evaluation; the C-Leibniz recursion extends it to all degrees.
    pub fn with_pairing(ts: &'a TwistSystem, pairing: TwoSlotMap, max_degree: usize) -> Result<Self> {
        if pairing.input() != [Variance::Contravariant, Variance::Covariant] || pairing.output().is_some() {
            return Err(Error::Invalid("a pairing maps E* ⊗ E to scalars".into()));
        }
        if pairing.dim() != ts.dim() {
            return Err(Error::DimensionMismatch { expected: ts.dim(), found: pairing.dim() });
        }
        let mut eng = Self::new(ts, max_degree)?;
        eng.ev = pairing;
        Ok(eng)
    }

    pub fn twist(&self) -> &TwistSystem {
        self.ts
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Length of the run of `E` slots right after position `pos`.
    pub fn covariant_run(sig: &Signature, pos: usize) -> usize {
        sig.slots()
            .iter()
            .skip(pos)
            .take_while(|v| **v == Variance::Covariant)
            .count()
    }

    fn check_shape(&self, t: &Tensor, pos: usize, n: usize) -> Result<()> {
        let slots = t.signature().slots();
        if pos == 0 || pos > slots.len() {
            return Err(Error::SlotOutOfRange { pos, len: slots.len() });
        }
        if slots[pos - 1] != Variance::Contravariant {
            return Err(Error::SlotMismatch {
                pos,
                expected: vec![Variance::Contravariant],
                found: vec![slots[pos - 1]],
            });
        }
        if n == 0 || Self::covariant_run(t.signature(), pos) < n {
            return Err(Error::SlotMismatch {
                pos: pos + 1,
                expected: vec![Variance::Covariant; n.max(1)],
                found: slots[pos..].iter().copied().take(n.max(1)).collect(),
            });
        }
        if n > self.max_degree {
            return Err(Error::Resource(format!(
                "contraction over {n} slots exceeds the degree cap {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    /// `ct_1` (the evaluation, or the configured pairing) at slots `pos`, `pos + 1`.
    pub fn ct1(&self, t: &Tensor, pos: usize) -> Result<Tensor> {
        apply_two_slot(&self.ev, t, pos)
    }

    /// `C^{(pos)}` on slots `pos`, `pos + 1`.
    pub fn twist_at(&self, t: &Tensor, pos: usize) -> Result<Tensor> {
        apply_two_slot(self.ts.c(), t, pos)
    }

    /// `C^{(from + steps - 1)} … C^{(from)}`: moves the dual vector at
    /// `from` past `steps` vectors.
    pub fn thread(&self, t: &Tensor, from: usize, steps: usize) -> Result<Tensor> {
        let mut cur = t.clone();
        for s in 0..steps {
            cur = self.twist_at(&cur, from + s)?;
        }
        Ok(cur)
    }

    /// Contraction of the `E*` slot at `pos` against the maximal run of
    /// `E` slots following it.
    pub fn contract(&self, t: &Tensor, pos: usize) -> Result<Tensor> {
        let n = Self::covariant_run(t.signature(), pos);
        self.contract_n(t, pos, n)
    }

    /// Contraction against exactly `n` following `E` slots; later slots are
    /// left untouched.
    pub fn contract_n(&self, t: &Tensor, pos: usize, n: usize) -> Result<Tensor> {
        self.check_shape(t, pos, n)?;
        let mut acc = self.ct1(t, pos)?;
        let mut cur = t.clone();
        for k in 1..n {
            cur = self.twist_at(&cur, pos + k - 1)?;
            acc.add_scaled(&self.ct1(&cur, pos + k)?, &Scalar::one());
        }
        Ok(acc)
    }

    /// The same contraction, each summand recomputed from scratch as
    /// `ct_1^{(pos+k-1)} C^{(pos+k-2)} … C^{(pos)}`.
    pub fn contract_by_definition(&self, t: &Tensor, pos: usize, n: usize) -> Result<Tensor> {
        self.check_shape(t, pos, n)?;
        let mut acc: Option<Tensor> = None;
        for k in 1..=n {
            let term = self.ct1(&self.thread(t, pos, k - 1)?, pos + k - 1)?;
            match &mut acc {
                None => acc = Some(term),
                Some(a) => a.add_scaled(&term, &Scalar::one()),
            }
        }
        Ok(acc.expect("n >= 1"))
    }

    /// Contraction through the C-Leibniz recursion
    /// `ct_n^{(k)} = ct_1^{(k)} + ct_{n-1}^{(k+1)} C^{(k)}`.
    pub fn contract_via_leibniz(&self, t: &Tensor, pos: usize) -> Result<Tensor> {
        let n = Self::covariant_run(t.signature(), pos);
        self.check_shape(t, pos, n)?;
        self.leibniz(t, pos, n)
    }

    pub fn contract_via_leibniz_n(&self, t: &Tensor, pos: usize, n: usize) -> Result<Tensor> {
        self.check_shape(t, pos, n)?;
        self.leibniz(t, pos, n)
    }

    fn leibniz(&self, t: &Tensor, pos: usize, n: usize) -> Result<Tensor> {
        let mut head = self.ct1(t, pos)?;
        if n > 1 {
            let rest = self.leibniz(&self.twist_at(t, pos)?, pos + 1, n - 1)?;
            head.add_scaled(&rest, &Scalar::one());
        }
        Ok(head)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.ts.dim() {
            return Err(Error::IndexOutOfRange { index: i, dim: self.ts.dim() });
        }
        Ok(())
    }

    fn check_covariant(y: &Tensor) -> Result<()> {
        if !y.signature().is_covariant() {
            return Err(Error::SlotMismatch {
                pos: 1,
                expected: vec![Variance::Covariant; y.degree()],
                found: y.signature().slots().to_vec(),
            });
        }
        Ok(())
    }

    /// `a_{n,i}(y) = ct_n^{(1)}(e_i ⊗ y)`; zero on scalars.
    pub fn annihilate(&self, i: usize, y: &Tensor) -> Result<Tensor> {
        self.check_index(i)?;
        Self::check_covariant(y)?;
        if y.degree() == 0 {
            return Ok(Tensor::zero(Signature::empty()));
        }
        self.contract(&y.prepend_basis(Variance::Contravariant, i), 1)
    }

    /// `a⁺_{n,j}(y) = f_j ⊗ y`.
    pub fn create(&self, j: usize, y: &Tensor) -> Result<Tensor> {
        self.check_index(j)?;
        Self::check_covariant(y)?;
        if y.degree() + 1 > self.max_degree {
            return Err(Error::Resource(format!(
                "creation would reach degree {} above the cap {}",
                y.degree() + 1,
                self.max_degree
            )));
        }
        Ok(y.prepend_basis(Variance::Covariant, j))
    }
}
