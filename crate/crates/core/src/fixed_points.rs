//! Torus fixed points of the Cartesian and fusion products of two
//! coadjoint orbits, with translation and sign bookkeeping.
//!
//! A fixed point is labelled by `(u, v) ∈ W × W`. Its Cartesian image is
//! `q = u(a) + v(b)`; its fusion image is `c = q + t ∈ W(C)` with `t ∈ M`.
//! Records whose `c` lies in the fundamental alcove `C` are the ones the
//! localization identities are stated for. A record with `c ∈ w_c(C)` is
//! handled in its *frame*: conjugating by `w_c⁻¹` moves it to a record in
//! `C`, and the affine statements are checked there.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::require_in_alcove;
use crate::lie::weight::dist_to_int;
use crate::lie::{
    affine_wall, in_open_alcove, tile_translate, translate_affine_root, AffineRoot, RootDatum, Weight, WeylElement, Q,
};

/// A positive root index together with a sign: the root `sign · α_index`.
pub type SignedRoot = (usize, i8);

/// The pair `a = λ/k`, `b = λ'/k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPair {
    pub lambda: Weight,
    pub mu: Weight,
    pub level: u32,
    pub a: Weight,
    pub b: Weight,
}

impl OrbitPair {
    pub fn new(datum: &RootDatum, lambda: Weight, mu: Weight, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::DegenerateConfiguration("level must be positive".into()));
        }
        require_in_alcove(datum, &lambda, k)?;
        require_in_alcove(datum, &mu, k)?;
        let inv = Q::new(1, k as i64);
        Ok(OrbitPair {
            a: lambda.scale(inv),
            b: mu.scale(inv),
            lambda,
            mu,
            level: k,
        })
    }
}

impl fmt::Display for OrbitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ={} λ'={} k={}", self.lambda, self.mu, self.level)
    }
}

/// One fixed point `(u, v)` with its images, translation and sign data.
#[derive(Clone, Debug)]
pub struct FixedPointRecord {
    pub u: WeylElement,
    pub v: WeylElement,
    pub ua: Weight,
    pub vb: Weight,
    /// `u(a) + v(b)`.
    pub q_image: Weight,
    /// `q_image` moved off every wall it sits on, along `v(ρ)`; the chamber
    /// data, flip set and signs are read off here.
    pub q_resolved: Weight,
    pub t: Weight,
    /// `q_image + t`, interior to `W(C)`.
    pub c: Weight,
    /// Chamber element of `q_image`: `w⁻¹(q_image)` is dominant.
    pub w: WeylElement,
    /// Chamber element of `c`: `c ∈ w_c(C)`.
    pub w_c: WeylElement,
    /// Indices of positive roots with `|(α|q)| > 1` at the resolved point `q_resolved`.
    pub flip_set: Vec<usize>,
    /// Tangent-weight signs at `q` and at `p`, per positive root.
    pub eps_q: Vec<i8>,
    pub eps_p: Vec<i8>,
    /// `c` lies in the open fundamental alcove.
    pub principal: bool,
    /// `u(α)`, `v(α)`, `w(α)`, `w_c(α)` for each positive root `α`.
    pub u_roots: Vec<SignedRoot>,
    pub v_roots: Vec<SignedRoot>,
    pub w_roots: Vec<SignedRoot>,
    pub wc_roots: Vec<SignedRoot>,
}

impl FixedPointRecord {
    pub fn in_flip_set(&self, i: usize) -> bool {
        self.flip_set.contains(&i)
    }

    /// Short description used in failure messages.
    pub fn label(&self) -> String {
        format!(
            "(u={:?}, v={:?}) q={} t={} c={}",
            self.u.word(),
            self.v.word(),
            self.q_image,
            self.t,
            self.c
        )
    }
}

fn sign_of(x: Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn root_images(datum: &RootDatum, w: &WeylElement) -> Vec<SignedRoot> {
    datum
        .positive_roots()
        .iter()
        .map(|r| {
            datum
                .root_index(&w.apply(&r.weight))
                .expect("Weyl group permutes roots")
        })
        .collect()
}

/// Checks that `a`, `b` are interior and that no `u(a) + v(b)` lies on an
/// affine wall.
pub fn genericity_check(datum: &RootDatum, lambda: &Weight, mu: &Weight, k: u32) -> Result<()> {
    let pair = OrbitPair::new(datum, lambda.clone(), mu.clone(), k)?;
    check_pair(datum, &pair)
}

fn check_pair(datum: &RootDatum, pair: &OrbitPair) -> Result<()> {
    for (name, x) in [("a", &pair.a), ("b", &pair.b)] {
        if !in_open_alcove(datum, x) {
            return Err(Error::DegenerateConfiguration(format!(
                "{name} = {x} is not in the open alcove ({pair})"
            )));
        }
    }
    let group = datum.weyl_group()?;
    let a_orbit: Vec<Weight> = group.elements().iter().map(|u| u.apply(&pair.a)).collect();
    let b_orbit: Vec<Weight> = group.elements().iter().map(|v| v.apply(&pair.b)).collect();
    for (i, ua) in a_orbit.iter().enumerate() {
        for (j, vb) in b_orbit.iter().enumerate() {
            let x = ua + vb;
            if let Err(Error::OnBoundary(y)) = tile_translate(datum, &x) {
                let root = affine_wall(datum, &y).expect("boundary points lie on a wall");
                return Err(Error::DegenerateConfiguration(format!(
                    "u(a)+v(b) = {x} translates to {y} on the wall (α|y) = ±1 of α = {root} (u={:?}, v={:?}; {pair})",
                    group.elements()[i].word(),
                    group.elements()[j].word()
                )));
            }
        }
    }
    Ok(())
}

/// `x + ε dx` with `ε > 0` small enough that no `(α|x)` or `⟨α∨, x⟩`
/// crosses an integer it does not already sit on.
///
/// `dx = v(ρ)` is regular with `|⟨α∨, dx⟩| < 4h∨`, so `ε = m / (8h∨)`
/// with `m` the least nonzero distance of those pairings to `ℤ` will do.
fn perturbed_point(datum: &RootDatum, x: &Weight, dx: &Weight) -> Weight {
    let m = datum
        .positive_roots()
        .iter()
        .flat_map(|r| [dist_to_int(r.pair(x)), dist_to_int(r.coroot_pair(x))])
        .filter(|v| !v.is_zero())
        .min()
        .unwrap_or_else(Q::one);
    x + &dx.scale(m / Q::from_integer(8 * datum.dual_coxeter()))
}

/// `S = {α > 0 : |(α|q)| > 1}`. For simply laced types this is the
/// coroot pairing; for short roots of B, C, G only the form pairing
/// matches the affine criterion.
fn flip_set_of(datum: &RootDatum, q: &Weight) -> Vec<usize> {
    datum
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.pair(q).abs() > Q::one())
        .map(|(i, _)| i)
        .collect()
}

/// `ε_q(α) = sign(α|u(a)) · sign(α|v(b)) · sign(α|q)`.
fn eps_q_of(datum: &RootDatum, ua: &Weight, vb: &Weight, q: &Weight) -> Result<Vec<i8>> {
    datum
        .positive_roots()
        .iter()
        .map(|r| {
            let s = sign_of(r.pair(ua)) * sign_of(r.pair(vb)) * sign_of(r.pair(q));
            if s == 0 {
                Err(Error::DegenerateConfiguration(format!(
                    "root {} is orthogonal to one of u(a)={ua}, v(b)={vb}, q={q}",
                    r.weight
                )))
            } else {
                Ok(s)
            }
        })
        .collect()
}

fn eps_p_of(eps_q: &[i8], flips: &[usize]) -> Vec<i8> {
    eps_q
        .iter()
        .enumerate()
        .map(|(i, &e)| if flips.contains(&i) { -e } else { e })
        .collect()
}

/// `{w(α)} ⊎ {ε_q(α)α} = {u(α)} ⊎ {v(α)}` as multisets of roots.
fn check_multiset(record: &FixedPointRecord) -> Result<()> {
    let mut count: HashMap<SignedRoot, i64> = HashMap::new();
    for (i, &e) in record.eps_q.iter().enumerate() {
        *count.entry(record.w_roots[i]).or_default() += 1;
        *count.entry((i, e)).or_default() += 1;
        *count.entry(record.u_roots[i]).or_default() -= 1;
        *count.entry(record.v_roots[i]).or_default() -= 1;
    }
    if count.values().all(|&c| c == 0) {
        Ok(())
    } else {
        Err(Error::IdentityViolated(format!(
            "tangent weights at q do not match u and v: {}",
            record.label()
        )))
    }
}

fn build_record(datum: &RootDatum, pair: &OrbitPair, u: &WeylElement, v: &WeylElement) -> Result<FixedPointRecord> {
    let ua = u.apply(&pair.a);
    let vb = v.apply(&pair.b);
    let q = &ua + &vb;
    let (t, c) = tile_translate(datum, &q)?;
    let q_moved = perturbed_point(datum, &q, &v.apply(datum.rho()));
    let c_moved = &q_moved + &t;
    let w = WeylElement::chamber_of(datum, &q_moved);
    let w_c = WeylElement::chamber_of(datum, &c_moved);
    let flip_set = flip_set_of(datum, &q_moved);
    let eps_q = eps_q_of(datum, &ua, &vb, &q_moved)?;
    let eps_p = eps_p_of(&eps_q, &flip_set);
    let record = FixedPointRecord {
        u_roots: root_images(datum, u),
        v_roots: root_images(datum, v),
        w_roots: root_images(datum, &w),
        wc_roots: root_images(datum, &w_c),
        principal: in_open_alcove(datum, &c_moved),
        u: u.clone(),
        v: v.clone(),
        ua,
        vb,
        q_image: q,
        q_resolved: q_moved,
        t,
        c,
        w,
        w_c,
        flip_set,
        eps_q,
        eps_p,
    };
    check_multiset(&record)?;
    Ok(record)
}

/// All `|W|²` fixed points, ordered by `(u, v)` in Weyl-group order.
pub fn enumerate_fixed_points(datum: &RootDatum, pair: &OrbitPair) -> Result<Vec<FixedPointRecord>> {
    check_pair(datum, pair)?;
    let group = datum.weyl_group()?;
    let elements = group.elements();
    let records = elements
        .par_iter()
        .map(|u| {
            elements
                .iter()
                .map(|v| build_record(datum, pair, u, v))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let interior = records.iter().filter(|r| r.principal).count();
    log::debug!("{pair}: {} fixed points, {interior} in the fundamental alcove", records.len());
    if interior != group.order() {
        return Err(Error::IdentityViolated(format!(
            "{interior} fixed points have c in the fundamental alcove, expected |W| = {} ({pair})",
            group.order()
        )));
    }
    Ok(records)
}

/// `S` by the finite criterion `|(α|q)| > 1`.
pub fn sign_flip_set_finite(datum: &RootDatum, record: &FixedPointRecord) -> Vec<usize> {
    flip_set_of(datum, &record.q_resolved)
}

/// `t` and `w_c⁻¹` applied to a positive root, in the record's frame.
fn frame_translation(datum: &RootDatum, record: &FixedPointRecord) -> Weight {
    record.w_c.apply_inverse(datum, &record.t)
}

/// `S` by the affine criterion: `α ∈ S` iff `R_{t'}(δ + β) < 0` or
/// `R_{t'}(δ - β) < 0`, where `t' = w_c⁻¹(t)` and `β` is the positive root
/// on the line of `w_c⁻¹(α)`. On records in the fundamental alcove
/// `w_c = 1` and this is the criterion verbatim.
pub fn sign_flip_set_affine(datum: &RootDatum, record: &FixedPointRecord) -> Result<Vec<usize>> {
    let t = frame_translation(datum, record);
    let mut out = Vec::new();
    for (i, r) in datum.positive_roots().iter().enumerate() {
        let image = record.w_c.apply_inverse(datum, &r.weight);
        let beta = if datum.is_positive_root(&image) { image } else { -&image };
        let plus = translate_affine_root(datum, &AffineRoot::new(1, beta.clone()), &t)?;
        let minus = translate_affine_root(datum, &AffineRoot::new(1, -&beta), &t)?;
        if !plus.is_positive(datum) || !minus.is_positive(datum) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Positive real affine roots sent to negative roots by `R_t`.
///
/// Only `nδ ± α` with `n ≤ max_α |(α|t)|` can change sign.
pub fn flipped_affine_roots(datum: &RootDatum, t: &Weight) -> Result<Vec<AffineRoot>> {
    let bound = datum
        .positive_roots()
        .iter()
        .map(|r| r.pair(t).abs().to_integer())
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    for n in 0..=bound {
        for r in datum.positive_roots() {
            let candidates = if n == 0 {
                vec![r.weight.clone()]
            } else {
                vec![r.weight.clone(), -&r.weight]
            };
            for alpha in candidates {
                let gamma = AffineRoot::new(n, alpha);
                if !translate_affine_root(datum, &gamma, t)?.is_positive(datum) {
                    out.push(gamma);
                }
            }
        }
    }
    Ok(out)
}

/// Sign bookkeeping of one record.
#[derive(Clone, Debug, Serialize)]
pub struct SignReport {
    pub principal: bool,
    pub chamber_length: usize,
    pub flip_finite: Vec<usize>,
    pub flip_affine: Vec<usize>,
    /// Flipped positive affine roots of the frame translation `t' = w_c⁻¹(t)`.
    pub flipped: Vec<String>,
    pub flip_count: usize,
    /// Largest `n` among flipped roots `nδ ± α`.
    pub max_flipped_n: i64,
    pub finite_part_sum: Weight,
    /// `h∨ t'`.
    pub h_dual_t_frame: Weight,
    /// `N(w) - Σ_{α∈S} ε_q(α)α - N(w_c)`, `N(x) = Σ_{α>0, xα<0} (-xα)`.
    pub record_exponent: Weight,
    /// `h∨ t`.
    pub h_dual_t: Weight,
    /// `(-1)^{|w| + #S + |w_c|}`.
    pub parity: i64,
    /// `(-1)^{|w| + #S}`; equals `parity` on records in the fundamental alcove.
    pub literal_parity: i64,
}

impl SignReport {
    pub fn flip_sets_agree(&self) -> bool {
        self.flip_finite == self.flip_affine
    }

    pub fn sum_identity_holds(&self) -> bool {
        self.finite_part_sum == self.h_dual_t_frame && self.record_exponent == self.h_dual_t
    }

    pub fn holds(&self) -> bool {
        self.flip_sets_agree()
            && self.sum_identity_holds()
            && self.flip_count.is_multiple_of(2)
            && self.parity == 1
            && self.max_flipped_n <= 1
    }
}

fn negated_sum(datum: &RootDatum, images: &[SignedRoot]) -> Weight {
    let mut acc = Weight::zero(datum.rank());
    for &(j, s) in images {
        if s < 0 {
            acc = &acc + &datum.positive_roots()[j].weight;
        }
    }
    acc
}

fn parity(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Flip sets by both criteria, the flipped affine roots of the frame
/// translation, their finite-part sum against `h∨ t'`, the record's own
/// phase exponent against `h∨ t`, and the parities.
pub fn sign_report(datum: &RootDatum, record: &FixedPointRecord) -> Result<SignReport> {
    let h = datum.dual_coxeter();
    let t_frame = frame_translation(datum, record);
    let flipped = flipped_affine_roots(datum, &t_frame)?;
    let mut finite_part_sum = Weight::zero(datum.rank());
    for g in &flipped {
        finite_part_sum = &finite_part_sum + &g.alpha;
    }
    let mut exponent = &negated_sum(datum, &record.w_roots) - &negated_sum(datum, &record.wc_roots);
    for &i in &record.flip_set {
        let alpha = &datum.positive_roots()[i].weight;
        exponent = &exponent - &alpha.scale_int(record.eps_q[i] as i64);
    }
    let s = record.flip_set.len();
    let report = SignReport {
        principal: record.principal,
        chamber_length: record.w_c.length(),
        flip_finite: sign_flip_set_finite(datum, record),
        flip_affine: sign_flip_set_affine(datum, record)?,
        flip_count: flipped.len(),
        max_flipped_n: flipped.iter().map(|g| g.n).max().unwrap_or(0),
        flipped: flipped.iter().map(ToString::to_string).collect(),
        finite_part_sum,
        h_dual_t_frame: t_frame.scale_int(h),
        record_exponent: exponent,
        h_dual_t: record.t.scale_int(h),
        parity: parity(record.w.length() + s + record.w_c.length()),
        literal_parity: parity(record.w.length() + s),
    };
    if report.holds() {
        Ok(report)
    } else {
        Err(Error::IdentityViolated(format!(
            "sign bookkeeping fails at {}: {report:?}",
            record.label()
        )))
    }
}

/// `(ε_q, ε_p)` recomputed from the record's images, with the multiset
/// identity `{w(α)} ⊎ {ε_q(α)α} = {u(α)} ⊎ {v(α)}` checked.
pub fn epsilon_signs(datum: &RootDatum, record: &FixedPointRecord) -> Result<(Vec<i8>, Vec<i8>)> {
    let eps_q = eps_q_of(datum, &record.ua, &record.vb, &record.q_resolved)?;
    let flips = sign_flip_set_finite(datum, record);
    let eps_p = eps_p_of(&eps_q, &flips);
    let mut probe = record.clone();
    probe.eps_q = eps_q.clone();
    check_multiset(&probe)?;
    Ok((eps_q, eps_p))
}

/// All generic pairs `(λ, λ')` in `P^k_+`, in alcove order.
pub fn generic_pairs(datum: &RootDatum, k: u32) -> Vec<OrbitPair> {
    let weights: Vec<Weight> = crate::fusion::alcove_weights(datum, k)
        .into_iter()
        .filter(|w| w.coords().iter().all(|c| !c.is_zero()))
        .collect();
    let mut out = Vec::new();
    for l in &weights {
        for m in &weights {
            if let Ok(pair) = OrbitPair::new(datum, l.clone(), m.clone(), k) {
                if check_pair(datum, &pair).is_ok() {
                    out.push(pair);
                }
            }
        }
    }
    out
}
