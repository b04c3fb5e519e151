//! Fixed-point contributions of the Cartesian and fusion products to
//! equivariant Riemann-Roch, and the character identities they imply.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{char_value, phase, weyl_denominator, TorusPoint};
use crate::error::{Error, Result};
use crate::fixed_points::{enumerate_fixed_points, FixedPointRecord, OrbitPair, SignedRoot};
use crate::fusion::{kac_walton_product, require_in_alcove, VerlindeEngine};
use crate::lie::{lattice_m, RootDatum, Weight, Q};
use crate::tolerances::{self, relative_error};

/// One Atiyah-Bott term `e(k·x) / Π(1 - e(-β))`.
#[derive(Clone, Debug, Serialize)]
pub struct Contribution {
    pub value: Complex64,
    /// `(k·x | τ)` for the fixed point `x`.
    pub exponent: Q,
    /// Tangent weights `β` with their factors `1 - e(-β)`.
    pub factors: Vec<(Weight, Complex64)>,
}

/// `e(±α_j)` from the tabulated `e(α_j)`; `|e(α)| = 1`, so the inverse is
/// the conjugate.
fn signed_phase(phases: &[Complex64], (j, s): SignedRoot) -> Complex64 {
    if s > 0 {
        phases[j]
    } else {
        phases[j].conj()
    }
}

fn contribution(
    datum: &RootDatum,
    tau: &TorusPoint,
    phases: &[Complex64],
    exponent: Q,
    weights: impl Iterator<Item = SignedRoot>,
) -> Result<Contribution> {
    let roots = datum.positive_roots();
    let mut denominator = Complex64::new(1.0, 0.0);
    let mut factors = Vec::with_capacity(2 * roots.len());
    for (j, s) in weights {
        let f = Complex64::new(1.0, 0.0) - signed_phase(phases, (j, -s));
        if f.norm() <= tolerances::DENOMINATOR {
            return Err(Error::RegularityError {
                tau: tau.tau().clone(),
                root: roots[j].weight.clone(),
            });
        }
        denominator *= f;
        factors.push((roots[j].weight.scale_int(s as i64), f));
    }
    Ok(Contribution {
        value: phase(exponent) / denominator,
        exponent,
        factors,
    })
}

fn eps_roots(eps: &[i8]) -> impl Iterator<Item = SignedRoot> + '_ {
    eps.iter().enumerate().map(|(i, &s)| (i, s))
}

/// `FC_q = e(k·q) / Π_{α>0} (1 - e(-u(α)))(1 - e(-v(α)))`.
///
/// The same value is computed in the form `e(k·q) / Π(1 - e(-w(α))) ·
/// Π(1 - e(-ε_q(α)α))` and the two are required to agree.
pub fn fc_cartesian(datum: &RootDatum, record: &FixedPointRecord, tau: &TorusPoint, k: u32) -> Result<Contribution> {
    tau.require_regular(datum)?;
    let phases = tau.root_phases(datum);
    fc_cartesian_with(datum, record, tau, k, &phases)
}

fn fc_cartesian_with(
    datum: &RootDatum,
    record: &FixedPointRecord,
    tau: &TorusPoint,
    k: u32,
    phases: &[Complex64],
) -> Result<Contribution> {
    let exponent = tau.pairing(&record.q_image) * Q::from_integer(k as i64);
    let product = contribution(
        datum,
        tau,
        phases,
        exponent,
        record.u_roots.iter().chain(&record.v_roots).copied(),
    )?;
    let chamber = contribution(
        datum,
        tau,
        phases,
        exponent,
        record.w_roots.iter().copied().chain(eps_roots(&record.eps_q)),
    )?;
    if (product.value - chamber.value).norm() > tolerances::SINGLE * (1.0 + product.value.norm()) {
        return Err(Error::IdentityViolated(format!(
            "denominator forms disagree at {}: {} vs {}",
            record.label(),
            product.value,
            chamber.value
        )));
    }
    Ok(product)
}

/// `FC_p = e(k·c) / Π_{α>0} (1 - e(-w_c(α))) · Π_{α>0} (1 - e(-ε_p(α)α))`.
///
/// For `c` in the fundamental alcove `w_c = 1` and the first product is the
/// plain `Π(1 - e(-α))`.
pub fn fc_fusion(datum: &RootDatum, record: &FixedPointRecord, tau: &TorusPoint, k: u32) -> Result<Contribution> {
    tau.require_regular(datum)?;
    let phases = tau.root_phases(datum);
    fc_fusion_with(datum, record, tau, k, &phases)
}

fn fc_fusion_with(
    datum: &RootDatum,
    record: &FixedPointRecord,
    tau: &TorusPoint,
    k: u32,
    phases: &[Complex64],
) -> Result<Contribution> {
    let exponent = tau.pairing(&record.c) * Q::from_integer(k as i64);
    contribution(
        datum,
        tau,
        phases,
        exponent,
        record.wc_roots.iter().copied().chain(eps_roots(&record.eps_p)),
    )
}

/// Phase-relation errors at one `τ`, split by record kind.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PhaseReport {
    pub records: usize,
    pub principal: usize,
    pub max_error_principal: f64,
    pub max_error_extrapolated: f64,
}

impl PhaseReport {
    pub fn merge(&mut self, other: &PhaseReport) {
        self.records += other.records;
        self.principal += other.principal;
        self.max_error_principal = self.max_error_principal.max(other.max_error_principal);
        self.max_error_extrapolated = self.max_error_extrapolated.max(other.max_error_extrapolated);
    }
}

/// `|FC_p - e((k+h∨)t)·FC_q| ≤ 1e-9·(1 + |FC_q|)` on every record.
pub fn verify_phase_relation(datum: &RootDatum, pair: &OrbitPair, tau: &TorusPoint) -> Result<PhaseReport> {
    let records = enumerate_fixed_points(datum, pair)?;
    phase_relation_on(datum, pair.level, &records, tau, tolerances::SINGLE)
}

/// As [`verify_phase_relation`] on already enumerated records.
pub fn phase_relation_on(
    datum: &RootDatum,
    k: u32,
    records: &[FixedPointRecord],
    tau: &TorusPoint,
    tolerance: f64,
) -> Result<PhaseReport> {
    tau.require_regular(datum)?;
    let phases = tau.root_phases(datum);
    let shift = Q::from_integer(k as i64 + datum.dual_coxeter());
    let mut report = PhaseReport::default();
    for r in records {
        let q = fc_cartesian_with(datum, r, tau, k, &phases)?.value;
        let p = fc_fusion_with(datum, r, tau, k, &phases)?.value;
        let expected = phase(tau.pairing(&r.t) * shift) * q;
        let err = (p - expected).norm() / (1.0 + q.norm());
        report.records += 1;
        if r.principal {
            report.principal += 1;
            report.max_error_principal = report.max_error_principal.max(err);
        } else {
            report.max_error_extrapolated = report.max_error_extrapolated.max(err);
        }
        if err > tolerance {
            return Err(Error::IdentityViolated(format!(
                "phase relation fails at {} τ={}: FC_p={p} expected {expected} (error {err:.3e})",
                r.label(),
                tau.tau()
            )));
        }
    }
    Ok(report)
}

/// Which product the Riemann-Roch total is summed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Product {
    Fusion,
    Cartesian,
}

impl FromStr for Product {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fusion" => Ok(Product::Fusion),
            "cartesian" => Ok(Product::Cartesian),
            other => Err(format!("unknown product {other:?}, expected fusion or cartesian")),
        }
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::Fusion => "fusion",
            Product::Cartesian => "cartesian",
        })
    }
}

/// `(k + h∨)τ ∈ M*`.
pub fn is_torsion_point(datum: &RootDatum, k: u32, tau: &TorusPoint) -> bool {
    let q = Q::from_integer(k as i64 + datum.dual_coxeter());
    lattice_m(datum).dual_contains(datum, &tau.tau().scale(q))
}

/// `Σ FC` over all `|W|²` fixed points, summed in record order.
///
/// The fusion total is only meaningful at torsion points of level `k`;
/// elsewhere this returns `DegenerateConfiguration`.
pub fn rr_total(datum: &RootDatum, pair: &OrbitPair, tau: &TorusPoint, which: Product) -> Result<Complex64> {
    let records = enumerate_fixed_points(datum, pair)?;
    rr_total_on(datum, pair.level, &records, tau, which)
}

/// As [`rr_total`] on already enumerated records.
pub fn rr_total_on(
    datum: &RootDatum,
    k: u32,
    records: &[FixedPointRecord],
    tau: &TorusPoint,
    which: Product,
) -> Result<Complex64> {
    tau.require_regular(datum)?;
    if which == Product::Fusion && !is_torsion_point(datum, k, tau) {
        return Err(Error::DegenerateConfiguration(format!(
            "{} is not a level-{k} torsion point",
            tau.tau()
        )));
    }
    let phases = tau.root_phases(datum);
    let mut acc = Complex64::new(0.0, 0.0);
    for r in records {
        acc += match which {
            Product::Fusion => fc_fusion_with(datum, r, tau, k, &phases)?.value,
            Product::Cartesian => fc_cartesian_with(datum, r, tau, k, &phases)?.value,
        };
    }
    Ok(acc)
}

/// `tr(s | H⁰) = Σ_c N_{λλ'}^c χ_c(τ)`, the coefficients taken from the
/// Kac-Walton product.
pub fn h0_character(datum: &RootDatum, lambda: &Weight, mu: &Weight, k: u32, tau: &TorusPoint) -> Result<Complex64> {
    require_in_alcove(datum, lambda, k)?;
    require_in_alcove(datum, mu, k)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, n) in kac_walton_product(datum, lambda, mu, k)? {
        acc += char_value(datum, &c, tau)? * n as f64;
    }
    Ok(acc)
}

/// Largest relative error of `Σ_c m_c χ_c(s) = χ_λ(s) χ_λ'(s)` over the
/// regular torsion points, the `m_c` being the engine's Verlinde sums.
pub fn h0_identity_error(engine: &VerlindeEngine<'_>, lambda: &Weight, mu: &Weight) -> Result<f64> {
    let i = engine.index_of(lambda)?;
    let j = engine.index_of(mu)?;
    let a = engine.character_values(lambda)?;
    let b = engine.character_values(mu)?;
    let mut h0 = vec![Complex64::new(0.0, 0.0); a.len()];
    for (c, w) in engine.weights().iter().enumerate() {
        let m = engine.coefficient_by_index(i, j, c)?.value;
        if m == 0 {
            continue;
        }
        for (acc, x) in h0.iter_mut().zip(engine.character_values(w)?) {
            *acc += x * m as f64;
        }
    }
    Ok(h0
        .iter()
        .zip(a.iter().zip(b))
        .map(|(h, (x, y))| relative_error(*h, x * y))
        .fold(0.0, f64::max))
}

/// Per-level outcome of the orthogonality sum.
#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub level: u32,
    pub points: usize,
    pub max_error: f64,
}

/// `((-1)^{|Δ+|} / |M*/qM|) Σ_{c∈P^k_+} χ_c(s) χ_c̄(s) D(s)² = 1` at every
/// regular torsion point `s`.
pub fn orthogonality_check(datum: &RootDatum, k: u32) -> Result<OrthogonalityReport> {
    if k == 0 {
        return Err(Error::DegenerateConfiguration("level must be positive".into()));
    }
    let engine = VerlindeEngine::new(datum, k)?;
    orthogonality_on(&engine, tolerances::SUM)
}

/// As [`orthogonality_check`] with a prepared engine.
pub fn orthogonality_on(engine: &VerlindeEngine<'_>, tolerance: f64) -> Result<OrthogonalityReport> {
    let datum = engine.datum();
    let torsion = engine.torsion();
    let sign = if datum.num_positive_roots().is_multiple_of(2) { 1.0 } else { -1.0 };
    let norm = sign / torsion.index().to_f64().unwrap_or(f64::NAN);
    let points: Vec<&TorusPoint> = torsion.regular_points().collect();
    let errors = points
        .par_iter()
        .enumerate()
        .map(|(s, tau)| {
            let d = weyl_denominator(datum, tau)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, w) in engine.weights().iter().enumerate() {
                let chi = engine.character_values(w)?[s];
                let dual = engine.character_values(&engine.weights()[engine.dual_index(c)])?[s];
                acc += chi * dual;
            }
            let total = acc * d * d * norm;
            let err = (total - 1.0).norm();
            if err > tolerance {
                return Err(Error::IdentityViolated(format!(
                    "orthogonality sum is {total} at τ={} (level {})",
                    tau.tau(),
                    engine.level()
                )));
            }
            Ok(err)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(OrthogonalityReport {
        level: engine.level(),
        points: points.len(),
        max_error: errors.into_iter().fold(0.0, f64::max),
    })
}
