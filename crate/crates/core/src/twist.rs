//! Twist systems `(B, B̃, C)` and the builtin deformation families.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::{TwoSlotMap, Variance};

use Variance::{Contravariant, Covariant};

pub type Entry = ([usize; 4], Scalar);

/// The twists defining a deformed commutation relation algebra:
///
/// * `B(f_i ⊗ f_j) = Σ b_{i,j,k,l} f_k ⊗ f_l` generates the ideal `J`,
/// * `B̃(e_i ⊗ e_j) = Σ b̃_{i,j,k,l} e_k ⊗ e_l` generates `J₂*`,
/// * `C(e_i ⊗ f_j) = Σ c_{i,j,k,l} f_k ⊗ e_l` twists the contraction,
/// * `C̃` on `E ⊗ E` has entries `c̃_{i,j,k,l} = c_{j,l,i,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSystem {
    dim: usize,
    b: TwoSlotMap,
    btilde: TwoSlotMap,
    c: TwoSlotMap,
    ctilde: TwoSlotMap,
}

fn ctilde_of(dim: usize, c: &TwoSlotMap) -> Result<TwoSlotMap> {
    let entries = c
        .entries()
        .into_iter()
        .map(|([a, b, k, l], v)| ([k, a, l, b], v));
    TwoSlotMap::from_entries(dim, [Covariant, Covariant], [Covariant, Covariant], entries, "C̃")
}

impl TwistSystem {
    pub fn new(
        dim: usize,
        entries_b: impl IntoIterator<Item = Entry>,
        entries_btilde: impl IntoIterator<Item = Entry>,
        entries_c: impl IntoIterator<Item = Entry>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        if dim > u8::MAX as usize {
            return Err(Error::Resource(format!("dimension {dim} exceeds 255")));
        }
        let b = TwoSlotMap::from_entries(dim, [Covariant; 2], [Covariant; 2], entries_b, "B")?;
        let btilde =
            TwoSlotMap::from_entries(dim, [Contravariant; 2], [Contravariant; 2], entries_btilde, "Btilde")?;
        let c = TwoSlotMap::from_entries(dim, [Contravariant, Covariant], [Covariant, Contravariant], entries_c, "C")?;
        Self::from_maps(b, btilde, c)
    }

    /// Assembles a system from already built maps, checking their shapes.
    pub fn from_maps(b: TwoSlotMap, btilde: TwoSlotMap, c: TwoSlotMap) -> Result<Self> {
        let dim = b.dim();
        let shape_ok = b.input() == [Covariant; 2]
            && b.output() == Some([Covariant; 2])
            && btilde.input() == [Contravariant; 2]
            && btilde.output() == Some([Contravariant; 2])
            && c.input() == [Contravariant, Covariant]
            && c.output() == Some([Covariant, Contravariant]);
        if !shape_ok {
            return Err(Error::Invalid("twist maps have the wrong slot variances".into()));
        }
        for m in [&btilde, &c] {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
            }
        }
        let ctilde = ctilde_of(dim, &c)?;
        Ok(TwistSystem { dim, b, btilde, c, ctilde })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn b(&self) -> &TwoSlotMap {
        &self.b
    }

    pub fn btilde(&self) -> &TwoSlotMap {
        &self.btilde
    }

    pub fn c(&self) -> &TwoSlotMap {
        &self.c
    }

    pub fn ctilde(&self) -> &TwoSlotMap {
        &self.ctilde
    }

    /// True when some entry depends on `q`.
    pub fn is_symbolic(&self) -> bool {
        [&self.b, &self.btilde, &self.c]
            .iter()
            .any(|m| m.entries().iter().any(|(_, v)| !v.is_rational()))
    }

    /// Substitutes `q = q0` in every entry.
    pub fn specialize(&self, q0: &BigRational) -> Result<TwistSystem> {
        let ev = |s: &Scalar| s.eval(q0).map(Scalar::from_rational);
        Self::from_maps(
            self.b.try_map_coeffs(ev)?,
            self.btilde.try_map_coeffs(ev)?,
            self.c.try_map_coeffs(ev)?,
        )
    }

    pub fn preset(preset: Preset, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        // All presets are scaled flips: x_i ⊗ y_j ↦ s(i, j) y_j ⊗ x_i.
        let flip = |scale: &dyn Fn(i64, i64) -> Scalar| -> Vec<Entry> {
            let mut v = Vec::new();
            for i in 1..=dim {
                for j in 1..=dim {
                    v.push(([i, j, j, i], scale(i as i64, j as i64)));
                }
            }
            v
        };
        let sign = |e: i64| Scalar::from_int(if e.rem_euclid(2) == 0 { 1 } else { -1 });
        let (b, c) = match preset {
            Preset::Boson => (flip(&|_, _| Scalar::one()), flip(&|_, _| Scalar::one())),
            Preset::Fermion => (flip(&|_, _| Scalar::from_int(-1)), flip(&|_, _| Scalar::from_int(-1))),
            Preset::Mixed => (flip(&|i, j| sign(i - j)), flip(&|i, j| sign(i - j))),
            Preset::QDeform => (flip(&|i, j| Scalar::q_pow(j - i)), flip(&|i, j| Scalar::q_pow(i - j))),
            Preset::QDeformAlt => (flip(&|i, j| Scalar::q_pow(i - j)), flip(&|i, j| Scalar::q_pow(i - j))),
        };
        Self::new(dim, b.clone(), b, c)
    }
}

/// Builtin twist families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `b = b̃ = c = δ_{i,l} δ_{j,k}`.
    Boson,
    /// `b = b̃ = c = -δ_{i,l} δ_{j,k}`.
    Fermion,
    /// `b = b̃ = c = (-1)^{i-j} δ_{i,l} δ_{j,k}`.
    Mixed,
    /// `b = b̃ = q^{j-i} δ_{i,l} δ_{j,k}`, `c = q^{i-j} δ_{i,l} δ_{j,k}`.
    QDeform,
    /// `b = b̃ = c = q^{i-j} δ_{i,l} δ_{j,k}`, the exponent convention that
    /// precedes the q-deformed example.
    QDeformAlt,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Boson,
        Preset::Fermion,
        Preset::Mixed,
        Preset::QDeform,
        Preset::QDeformAlt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Boson => "boson",
            Preset::Fermion => "fermion",
            Preset::Mixed => "mixed",
            Preset::QDeform => "qdeform",
            Preset::QDeformAlt => "qdeform-alt",
        }
    }

    pub fn uses_q(self) -> bool {
        matches!(self, Preset::QDeform | Preset::QDeformAlt)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Builtin system by name.
pub fn builtin_preset(name: &str, dim: usize) -> Result<TwistSystem> {
    TwistSystem::preset(name.parse()?, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boson_entries_are_the_flip() {
        let ts = builtin_preset("boson", 2).unwrap();
        for m in [ts.b(), ts.btilde(), ts.c()] {
            let e = m.entries();
            assert_eq!(e.len(), 4);
            for ([i, j, k, l], v) in e {
                assert_eq!((i, j), (l, k));
                assert!(v.is_one());
            }
        }
    }

    #[test]
    fn fermion_entries_are_negated_flip() {
        let ts = builtin_preset("fermion", 2).unwrap();
        assert_eq!(ts.c().entry(1, 2, 2, 1), Scalar::from_int(-1));
        assert_eq!(ts.b().entry(2, 2, 2, 2), Scalar::from_int(-1));
        assert!(ts.b().entry(1, 2, 1, 2).is_zero());
    }

    #[test]
    fn mixed_sign() {
        let ts = builtin_preset("mixed", 2).unwrap();
        assert_eq!(ts.b().entry(1, 2, 2, 1), Scalar::from_int(-1));
        assert_eq!(ts.b().entry(1, 1, 1, 1), Scalar::one());
    }

    #[test]
    fn qdeform_exponents() {
        let ts = builtin_preset("qdeform", 3).unwrap();
        assert_eq!(ts.b().entry(1, 3, 3, 1), Scalar::q_pow(2));
        assert_eq!(ts.btilde().entry(1, 2, 2, 1), Scalar::q_pow(1));
        assert_eq!(ts.c().entry(1, 2, 2, 1), Scalar::q_pow(-1));
        let alt = builtin_preset("qdeform-alt", 3).unwrap();
        assert_eq!(alt.b().entry(1, 3, 3, 1), Scalar::q_pow(-2));
        assert!(ts.is_symbolic());
    }

    #[test]
    fn boson_in_dimension_one_is_identity() {
        let ts = builtin_preset("boson", 1).unwrap();
        assert!(ts.b().is_identity());
    }

    #[test]
    fn presets_square_to_identity() {
        for p in Preset::ALL {
            for d in 1..=4 {
                let ts = TwistSystem::preset(p, d).unwrap();
                assert!(ts.b().compose(ts.b()).unwrap().is_identity(), "{p} d={d}");
                assert!(ts.btilde().compose(ts.btilde()).unwrap().is_identity(), "{p} d={d}");
            }
        }
    }

    #[test]
    fn ctilde_index_rule() {
        let ts = builtin_preset("boson", 3).unwrap();
        assert_eq!(ts.ctilde(), ts.b());
        // qdeform: c̃ = b entry by entry
        let q = builtin_preset("qdeform", 3).unwrap();
        assert_eq!(q.ctilde(), q.b());
        let c = q.c();
        for i in 1..=3 {
            for j in 1..=3 {
                for k in 1..=3 {
                    for l in 1..=3 {
                        assert_eq!(q.ctilde().entry(i, j, k, l), c.entry(j, l, i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn unknown_preset() {
        assert_eq!(builtin_preset("anyon", 2), Err(Error::UnknownPreset("anyon".into())));
    }

    #[test]
    fn specialization() {
        let q = builtin_preset("qdeform", 2).unwrap();
        let at_one = q.specialize(&BigRational::from_integer(1.into())).unwrap();
        assert_eq!(at_one, builtin_preset("boson", 2).unwrap());
        let at_minus = q.specialize(&BigRational::from_integer((-1).into())).unwrap();
        assert_eq!(at_minus, builtin_preset("mixed", 2).unwrap());
        assert!(q.specialize(&BigRational::from_integer(0.into())).is_err());
    }
}
