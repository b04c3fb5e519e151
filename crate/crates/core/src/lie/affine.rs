//! Real affine roots, the affine Weyl group `W ⋉ M`, and alcove geometry.
//!
//! Translations act on Cartan points by `R_t(x) = x + t`, and on affine
//! roots (as functions `nδ + α : x ↦ n + (α|x)`) by
//! `R_t(γ) = γ ∘ R_{-t}`, i.e. `R_t(nδ + α) = (n - (α|t))δ + α`.

use std::fmt;

use num_traits::{One, Signed};

use super::root_system::RootDatum;
use super::weight::{Weight, Q};
use super::weyl::WeylElement;
use crate::error::{Error, Result};

/// `nδ + α` with `α` a finite root (or zero for imaginary roots).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub n: i64,
    pub alpha: Weight,
}

impl AffineRoot {
    pub fn new(n: i64, alpha: Weight) -> Self {
        AffineRoot { n, alpha }
    }

    pub fn is_real(&self) -> bool {
        !self.alpha.is_zero()
    }

    /// Positive iff `n > 0`, or `n = 0` and `α` is a positive root.
    pub fn is_positive(&self, datum: &RootDatum) -> bool {
        self.n > 0 || (self.n == 0 && self.is_real() && datum.is_positive_root(&self.alpha))
    }

    /// Value at a Cartan point with `δ ↦ 1`.
    pub fn evaluate(&self, datum: &RootDatum, x: &Weight) -> Q {
        Q::from_integer(self.n) + datum.pair(&self.alpha, x)
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}δ+{}", self.n, self.alpha)
    }
}

impl fmt::Debug for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sample point in the open fundamental alcove, `ρ / h∨`.
pub fn alcove_sample(datum: &RootDatum) -> Weight {
    datum.rho().scale(Q::new(1, datum.dual_coxeter()))
}

/// `R_t(γ)` for a real affine root and `t ∈ M`.
///
/// The δ-coefficient form is cross-checked against evaluation of `γ` at
/// `R_{-t}(c₀)` for an interior alcove sample `c₀`.
pub fn translate_affine_root(datum: &RootDatum, gamma: &AffineRoot, t: &Weight) -> Result<AffineRoot> {
    if !gamma.is_real() {
        return Err(Error::ImaginaryRoot(gamma.to_string()));
    }
    let shift = datum.pair(&gamma.alpha, t);
    assert!(shift.is_integer(), "(α|t) = {shift} is not an integer; t = {t} is not in M");
    let out = AffineRoot::new(gamma.n - shift.to_integer(), gamma.alpha.clone());
    debug_assert_eq!(
        out.is_positive(datum),
        translated_sign_by_evaluation(datum, gamma, t, &alcove_sample(datum)),
    );
    Ok(out)
}

/// Positivity of `R_t(γ)` read off as the sign of `γ(R_{-t}(c₀))`.
pub fn translated_sign_by_evaluation(datum: &RootDatum, gamma: &AffineRoot, t: &Weight, c0: &Weight) -> bool {
    let moved = c0 - t;
    gamma.evaluate(datum, &moved).is_positive()
}

/// `x ↦ finite(x) + translation`, with `translation ∈ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWeylElement {
    pub finite: WeylElement,
    pub translation: Weight,
}

impl AffineWeylElement {
    pub fn identity(rank: usize) -> Self {
        AffineWeylElement {
            finite: WeylElement::identity(rank),
            translation: Weight::zero(rank),
        }
    }

    pub fn translation(t: Weight) -> Self {
        AffineWeylElement {
            finite: WeylElement::identity(t.rank()),
            translation: t,
        }
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        &self.finite.apply(x) + &self.translation
    }

    /// `self ∘ other`.
    pub fn compose(&self, datum: &RootDatum, other: &Self) -> Self {
        AffineWeylElement {
            finite: self.finite.compose(datum, &other.finite),
            translation: &self.finite.apply(&other.translation) + &self.translation,
        }
    }

    /// Determinant of the linear part.
    pub fn sign(&self) -> i64 {
        self.finite.sign()
    }

    pub fn is_identity(&self) -> bool {
        self.finite.is_identity() && self.translation.is_zero()
    }
}

/// Whether `x` lies in the closed fundamental alcove
/// `{(α_i|x) ≥ 0, (θ|x) ≤ 1}`.
pub fn in_closed_alcove(datum: &RootDatum, x: &Weight) -> bool {
    datum.is_dominant(x) && datum.theta_pair(x) <= Q::one()
}

/// Whether `x` lies in the open fundamental alcove.
pub fn in_open_alcove(datum: &RootDatum, x: &Weight) -> bool {
    x.coords().iter().all(Signed::is_positive) && datum.theta_pair(x) < Q::one()
}

/// Whether `x` lies on some affine wall `(α|x) ∈ ℤ`; returns the root.
pub fn affine_wall(datum: &RootDatum, x: &Weight) -> Option<Weight> {
    datum
        .positive_roots()
        .iter()
        .find(|r| r.pair(x).is_integer())
        .map(|r| r.weight.clone())
}

/// Reduces `x` into the closed fundamental alcove.
///
/// Returns `(c, σ)` with `σ(x) = c`. On walls the finite part of `σ` is the
/// unique minimal-length choice.
pub fn alcove_reduce(datum: &RootDatum, x: &Weight) -> (Weight, AffineWeylElement) {
    let n = datum.rank();
    let theta = datum.theta().clone();
    let theta_co = theta.coroot();
    let mut y = x.clone();
    let mut columns: Vec<Weight> = (0..n).map(|j| Weight::unit(n, j)).collect();
    let mut t = Weight::zero(n);
    loop {
        if let Some(i) = (0..n).find(|&i| y[i].is_negative()) {
            y = datum.reflect(i, &y);
            for c in columns.iter_mut() {
                *c = datum.reflect(i, c);
            }
            t = datum.reflect(i, &t);
        } else if datum.theta_pair(&y) > Q::one() {
            // s_0(z) = s_θ(z) + θ∨
            y = &datum.reflect_root(&theta, &y) + &theta_co;
            for c in columns.iter_mut() {
                *c = datum.reflect_root(&theta, c);
            }
            t = &datum.reflect_root(&theta, &t) + &theta_co;
        } else {
            break;
        }
    }
    let matrix: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|j| columns[j][r].to_integer()).collect())
        .collect();
    let mut sigma = AffineWeylElement {
        finite: WeylElement::from_matrix(datum, matrix),
        translation: t,
    };

    // Minimal-length representative of Stab(c)·σ: descend along reflections
    // through c while they shorten the finite part.
    let walls: Vec<(usize, Q)> = datum
        .positive_roots()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let v = r.pair(&y);
            v.is_integer().then_some((i, v))
        })
        .collect();
    if !walls.is_empty() {
        loop {
            let w_rho = sigma.finite.apply(datum.rho());
            let Some(&(i, level)) = walls
                .iter()
                .find(|(i, _)| datum.positive_roots()[*i].pair(&w_rho).is_negative())
            else {
                break;
            };
            let root = &datum.positive_roots()[i];
            let refl_cols: Vec<Weight> = (0..n).map(|j| datum.reflect_root(root, &Weight::unit(n, j))).collect();
            let refl_matrix: Vec<Vec<i64>> = (0..n)
                .map(|r| (0..n).map(|j| refl_cols[j][r].to_integer()).collect())
                .collect();
            let reflection = AffineWeylElement {
                finite: WeylElement::from_matrix(datum, refl_matrix),
                translation: root.coroot().scale(level),
            };
            sigma = reflection.compose(datum, &sigma);
        }
    }
    debug_assert_eq!(sigma.apply(x), y);
    (y, sigma)
}

/// Finds `t ∈ M` with `x + t ∈ W(C̄)`.
///
/// `W(C̄) = {y : |(α|y)| ≤ 1 for every root α}` is a fundamental domain
/// for translations by `M`; points forced onto its boundary are rejected.
pub fn tile_translate(datum: &RootDatum, x: &Weight) -> Result<(Weight, Weight)> {
    let (c, sigma) = alcove_reduce(datum, x);
    let y = sigma.finite.apply_inverse(datum, &c);
    if datum
        .positive_roots()
        .iter()
        .any(|r| r.pair(&y).abs() == Q::one())
    {
        return Err(Error::OnBoundary(y));
    }
    let t = &y - x;
    Ok((t, y))
}

/// Whether `y` lies in the interior of `W(C̄)`.
pub fn in_weyl_alcove_interior(datum: &RootDatum, y: &Weight) -> bool {
    datum.positive_roots().iter().all(|r| r.pair(y).abs() < Q::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::weight::q;
    use crate::lie::lattice::lattice_m;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn w1(x: Q) -> Weight {
        Weight(vec![x])
    }

    #[test]
    fn a1_reduction_examples() {
        let d = datum("A1");
        let (c, s) = alcove_reduce(&d, &w1(q(-1, 10)));
        assert_eq!(c, w1(q(1, 10)));
        assert_eq!(s.finite.word(), &[0]);
        assert!(s.translation.is_zero());

        let (c, s) = alcove_reduce(&d, &w1(q(-3, 2)));
        assert_eq!(c, w1(q(1, 2)));
        assert!(s.finite.is_identity());
        assert_eq!(s.translation, Weight::from_ints(&[2]));

        let (c, s) = alcove_reduce(&d, &w1(q(1, 3)));
        assert_eq!(c, w1(q(1, 3)));
        assert!(s.is_identity());
    }

    #[test]
    fn wall_tie_break_prefers_identity() {
        let d = datum("A2");
        // On the wall (α_1|x) = 0 the identity already works.
        let x = Weight(vec![q(0, 1), q(1, 3)]);
        let (c, s) = alcove_reduce(&d, &x);
        assert_eq!(c, x);
        assert!(s.is_identity());
        // Origin: stabilizer is all of W, so σ must be the identity.
        let (c, s) = alcove_reduce(&d, &Weight::zero(2));
        assert!(c.is_zero());
        assert!(s.is_identity());
        // A lattice point of M reduces to 0 by a pure translation.
        let (c, s) = alcove_reduce(&d, &Weight::from_ints(&[-1, 2]));
        assert!(c.is_zero());
        assert!(s.finite.is_identity());
    }

    #[test]
    fn reduction_is_idempotent() {
        let d = datum("G2");
        let x = Weight(vec![q(-17, 5), q(9, 7)]);
        let (c, s) = alcove_reduce(&d, &x);
        assert!(in_closed_alcove(&d, &c));
        let m = lattice_m(&d);
        assert!(m.contains(&s.translation));
        let (c2, s2) = alcove_reduce(&d, &c);
        assert_eq!(c2, c);
        assert!(s2.is_identity());
    }

    #[test]
    fn tile_translate_examples() {
        let d = datum("A1");
        let (t, y) = tile_translate(&d, &w1(q(-8, 5))).unwrap();
        assert_eq!(t, Weight::from_ints(&[2]));
        assert_eq!(y, w1(q(2, 5)));
        let (t, _) = tile_translate(&d, &w1(q(1, 2))).unwrap();
        assert!(t.is_zero());
        let (t, y) = tile_translate(&d, &w1(q(-1, 2))).unwrap();
        assert!(t.is_zero());
        assert_eq!(y, w1(q(-1, 2)));
        assert!(matches!(
            tile_translate(&d, &w1(q(3, 1))),
            Err(Error::OnBoundary(_))
        ));
    }

    #[test]
    fn affine_root_translation_examples() {
        let d = datum("A1");
        let alpha = d.simple_root(0);
        let t = alpha.clone();
        let plus = translate_affine_root(&d, &AffineRoot::new(1, alpha.clone()), &t).unwrap();
        assert_eq!(plus.n, -1);
        assert!(!plus.is_positive(&d));
        let minus = translate_affine_root(&d, &AffineRoot::new(1, -&alpha), &t).unwrap();
        assert_eq!(minus.n, 3);
        assert!(minus.is_positive(&d));
        let zero = Weight::zero(1);
        let same = translate_affine_root(&d, &AffineRoot::new(2, alpha.clone()), &zero).unwrap();
        assert_eq!(same, AffineRoot::new(2, alpha));
        assert!(matches!(
            translate_affine_root(&d, &AffineRoot::new(1, zero.clone()), &zero),
            Err(Error::ImaginaryRoot(_))
        ));
    }
}
