//! Seeded random twist systems and tensors, plus a dense contraction oracle
//! written directly from the sum formula over matrix entries.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twistwick::tensor::{Signature, Tensor, Variance, Word};
use twistwick::twist::Entry;
use twistwick::{Scalar, TwistSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/m` with `|n| ≤ 3`, `1 ≤ m ≤ 3`; may be zero.
pub fn small_rational(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(r.gen_range(-3..=3), r.gen_range(1..=3))
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = small_rational(r);
        if !s.is_zero() {
            return s;
        }
    }
}

/// Small rational, sometimes times a power of `q`.
pub fn small_scalar(r: &mut ChaCha8Rng, symbolic: bool) -> Scalar {
    let s = small_rational(r);
    if symbolic && r.gen_bool(0.4) {
        s.mul(&Scalar::q_pow(r.gen_range(-2..=2)))
    } else {
        s
    }
}

pub fn random_entries(r: &mut ChaCha8Rng, d: usize, density: f64, symbolic: bool) -> Vec<Entry> {
    let mut out = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            for k in 1..=d {
                for l in 1..=d {
                    if r.gen_bool(density) {
                        let v = small_scalar(r, symbolic);
                        if !v.is_zero() {
                            out.push(([i, j, k, l], v));
                        }
                    }
                }
            }
        }
    }
    out
}

fn identity_entries(d: usize) -> Vec<Entry> {
    (1..=d).flat_map(|i| (1..=d).map(move |j| ([i, j, i, j], Scalar::one()))).collect()
}

fn flip_entries(d: usize, mut scale: impl FnMut(usize, usize) -> Scalar) -> Vec<Entry> {
    let mut out = Vec::new();
    for i in 1..=d {
        for j in 1..=d {
            out.push(([i, j, j, i], scale(i, j)));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Independent random entries for all three maps.
    Dense,
    /// Scaled flips tuned so every consistency condition holds.
    ConsistentFlip,
    /// A consistent scaled flip with one entry of one map disturbed.
    PerturbedFlip,
    /// `B = id` (so `J = 0`), random `B̃` and `C`.
    TrivialB,
    /// `B̃ = id` (so `J₂* = 0`), random `B` and `C`.
    TrivialBtilde,
    /// Scaled flips with independent random scales.
    RandomFlip,
}

pub const FAMILIES: [Family; 6] = [
    Family::Dense,
    Family::ConsistentFlip,
    Family::PerturbedFlip,
    Family::TrivialB,
    Family::TrivialBtilde,
    Family::RandomFlip,
];

/// Scales `β` of a consistent flip: `β_ij β_ji = 1`, diagonal `±1`.
fn consistent_scales(r: &mut ChaCha8Rng, d: usize) -> (BTreeMap<(usize, usize), Scalar>, BTreeMap<usize, Scalar>) {
    let mut beta = BTreeMap::new();
    let mut gamma_diag = BTreeMap::new();
    for i in 1..=d {
        for j in i + 1..=d {
            let v = nonzero_rational(r);
            beta.insert((j, i), v.inv().unwrap());
            beta.insert((i, j), v);
        }
        if r.gen_bool(0.5) {
            beta.insert((i, i), Scalar::one());
            gamma_diag.insert(i, nonzero_rational(r));
        } else {
            beta.insert((i, i), Scalar::from_int(-1));
            gamma_diag.insert(i, Scalar::from_int(-1));
        }
    }
    (beta, gamma_diag)
}

pub fn random_twist(r: &mut ChaCha8Rng, d: usize, family: Family) -> TwistSystem {
    let density = r.gen_range(0.2..0.6);
    match family {
        Family::Dense => TwistSystem::new(
            d,
            random_entries(r, d, density, false),
            random_entries(r, d, density, false),
            random_entries(r, d, density, false),
        )
        .unwrap(),
        Family::ConsistentFlip | Family::PerturbedFlip => {
            let (beta, gdiag) = consistent_scales(r, d);
            // γ_ij = β_ji off the diagonal, B̃ = B
            let b = flip_entries(d, |i, j| beta[&(i, j)].clone());
            let c = flip_entries(d, |i, j| if i == j { gdiag[&i].clone() } else { beta[&(j, i)].clone() });
            let mut maps = [b.clone(), b, c];
            if family == Family::PerturbedFlip {
                let which = r.gen_range(0..3);
                let m = &mut maps[which];
                let pick = r.gen_range(0..m.len());
                m[pick].1 = m[pick].1.add(&nonzero_rational(r));
                if r.gen_bool(0.5) {
                    // an off-flip entry as well
                    let (i, j, k, l) = (r.gen_range(1..=d), r.gen_range(1..=d), r.gen_range(1..=d), r.gen_range(1..=d));
                    if !m.iter().any(|(e, _)| *e == [i, j, k, l]) {
                        m.push(([i, j, k, l], nonzero_rational(r)));
                    }
                }
            }
            let [b, bt, c] = maps;
            TwistSystem::new(d, b, bt, c).unwrap()
        }
        Family::TrivialB => TwistSystem::new(
            d,
            identity_entries(d),
            random_entries(r, d, density, false),
            random_entries(r, d, density, false),
        )
        .unwrap(),
        Family::TrivialBtilde => TwistSystem::new(
            d,
            random_entries(r, d, density, false),
            identity_entries(d),
            random_entries(r, d, density, false),
        )
        .unwrap(),
        Family::RandomFlip => {
            let b = flip_entries(d, |_, _| nonzero_rational(r));
            let c = flip_entries(d, |_, _| nonzero_rational(r));
            TwistSystem::new(d, b.clone(), b, c).unwrap()
        }
    }
}

pub fn any_twist(r: &mut ChaCha8Rng, d: usize) -> (Family, TwistSystem) {
    let f = *FAMILIES.choose(r).unwrap();
    (f, random_twist(r, d, f))
}

/// Random twist with dense, possibly `q`-valued entries.
pub fn symbolic_twist(r: &mut ChaCha8Rng, d: usize) -> TwistSystem {
    let density = r.gen_range(0.2..0.6);
    TwistSystem::new(
        d,
        random_entries(r, d, density, true),
        random_entries(r, d, density, true),
        random_entries(r, d, density, true),
    )
    .unwrap()
}

pub fn random_word(r: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<usize> {
    (0..n).map(|_| r.gen_range(1..=d)).collect()
}

pub fn random_tensor(r: &mut ChaCha8Rng, sig: Signature, d: usize, terms: usize, symbolic: bool) -> Tensor {
    let n = sig.len();
    let mut t = Tensor::zero(sig);
    for _ in 0..terms {
        t.add_term(Word::new(&random_word(r, d, n)), small_scalar(r, symbolic));
    }
    t
}

pub fn covariant_tensor(r: &mut ChaCha8Rng, d: usize, n: usize, terms: usize) -> Tensor {
    random_tensor(r, Signature::covariant(n), d, terms, false)
}

/// Dense evaluation of `Σ_k p^{(k)} C^{(k-1)} … C^{(1)}` on `e_i ⊗ f_{js}`,
/// where `p(l, j)` is the degree-1 pairing.
pub fn oracle_contract_with(ts: &TwistSystem, pairing: &dyn Fn(usize, usize) -> Scalar, i: usize, js: &[usize]) -> BTreeMap<Vec<usize>, Scalar> {
    let d = ts.dim();
    let mut out: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
    // (emitted prefix, current dual index) -> coefficient
    let mut states: BTreeMap<(Vec<usize>, usize), Scalar> = BTreeMap::new();
    states.insert((Vec::new(), i), Scalar::one());
    for k in 0..js.len() {
        for ((prefix, l), coeff) in &states {
            let p = pairing(*l, js[k]);
            if p.is_zero() {
                continue;
            }
            let mut w = prefix.clone();
            w.extend_from_slice(&js[k + 1..]);
            let e = out.entry(w).or_default();
            *e = e.add(&coeff.mul(&p));
        }
        let mut next: BTreeMap<(Vec<usize>, usize), Scalar> = BTreeMap::new();
        for ((prefix, l), coeff) in &states {
            for a in 1..=d {
                for b in 1..=d {
                    let c = ts.c().entry(*l, js[k], a, b);
                    if !c.is_zero() {
                        let mut w = prefix.clone();
                        w.push(a);
                        let e = next.entry((w, b)).or_default();
                        *e = e.add(&coeff.mul(&c));
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Oracle for `ct_n^{(1)}` on a tensor in `E* ⊗ E^{⊗n}`.
pub fn oracle_contract(ts: &TwistSystem, t: &Tensor) -> Tensor {
    oracle_contract_tensor_with(ts, &|l, j| Scalar::from_int((l == j) as i64), t)
}

pub fn oracle_contract_tensor_with(ts: &TwistSystem, pairing: &dyn Fn(usize, usize) -> Scalar, t: &Tensor) -> Tensor {
    assert_eq!(t.signature().slots()[0], Variance::Contravariant);
    let n = t.degree() - 1;
    let mut out = Tensor::zero(Signature::covariant(n - 1));
    for (w, a) in t.terms() {
        let idx: Vec<usize> = w.indices().collect();
        for (word, c) in oracle_contract_with(ts, pairing, idx[0], &idx[1..]) {
            out.add_term(Word::new(&word), a.mul(&c));
        }
    }
    out
}

/// `e_i ⊗ y`.
pub fn with_dual(i: usize, y: &Tensor) -> Tensor {
    y.prepend_basis(Variance::Contravariant, i)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
