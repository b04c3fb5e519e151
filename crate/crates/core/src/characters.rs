//! Weight systems, Weyl characters at torus points, the Weyl denominator,
//! torsion-point sets and Weyl induction of torus characters.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lie::weight::frac;
use crate::lie::{lattice_m, RootDatum, Weight, Q};

/// `exp(2πi x)`, reducing `x` modulo 1 exactly before going to floats.
pub fn phase(x: Q) -> Complex64 {
    let f = frac(x);
    let angle = 2.0 * PI * f.to_f64().unwrap_or(f64::NAN);
    Complex64::from_polar(1.0, angle)
}

/// A torus element `s = exp(2πi τ)` with `τ` an exact Cartan point.
#[derive(Clone, Debug)]
pub struct TorusPoint {
    tau: Weight,
    lowered: Vec<Q>,
}

impl TorusPoint {
    pub fn new(datum: &RootDatum, tau: Weight) -> Self {
        let lowered = datum.lower(&tau);
        TorusPoint { tau, lowered }
    }

    pub fn tau(&self) -> &Weight {
        &self.tau
    }

    /// `(λ|τ)`, exact.
    pub fn pairing(&self, lambda: &Weight) -> Q {
        lambda.dot(&self.lowered)
    }

    /// `e(λ) = exp(2πi (λ|τ))`.
    pub fn e(&self, lambda: &Weight) -> Complex64 {
        phase(self.pairing(lambda))
    }

    /// The first positive root with `(α|τ) ∈ ℤ`, if any.
    pub fn singular_root(&self, datum: &RootDatum) -> Option<Weight> {
        datum
            .positive_roots()
            .iter()
            .find(|r| self.pairing(&r.weight).is_integer())
            .map(|r| r.weight.clone())
    }

    pub fn is_regular(&self, datum: &RootDatum) -> bool {
        self.singular_root(datum).is_none()
    }

    pub fn require_regular(&self, datum: &RootDatum) -> Result<()> {
        match self.singular_root(datum) {
            None => Ok(()),
            Some(root) => Err(Error::RegularityError {
                tau: self.tau.clone(),
                root,
            }),
        }
    }

    /// `min_α dist((α|τ), ℤ)`, the distance to the nearest root wall.
    pub fn wall_distance(&self, datum: &RootDatum) -> Q {
        datum
            .positive_roots()
            .iter()
            .map(|r| crate::lie::weight::dist_to_int(self.pairing(&r.weight)))
            .min()
            .unwrap_or_else(Q::one)
    }

    /// `e(α)` for every positive root, in `datum.positive_roots()` order.
    pub fn root_phases(&self, datum: &RootDatum) -> Vec<Complex64> {
        datum.positive_roots().iter().map(|r| self.e(&r.weight)).collect()
    }
}

/// Multiset of weights of an irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn require_dominant_integral(datum: &RootDatum, lambda: &Weight) -> Result<()> {
    datum.check_rank(lambda)?;
    if !lambda.is_integral() {
        return Err(Error::NotIntegral(lambda.clone()));
    }
    if !datum.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.clone()));
    }
    Ok(())
}

/// Weight multiplicities of `V(λ)` by Freudenthal's recursion.
///
/// Multiplicities are computed on dominant weights in order of depth below
/// `λ` and spread over Weyl orbits at the end.
pub fn freudenthal_weights(datum: &RootDatum, lambda: &Weight) -> Result<WeightSystem> {
    require_dominant_integral(datum, lambda)?;
    let roots = datum.positive_roots();

    let mut dominant = vec![lambda.clone()];
    let mut seen: HashSet<Weight> = dominant.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < dominant.len() {
        let mu = dominant[cursor].clone();
        cursor += 1;
        for r in roots {
            let nu = &mu - &r.weight;
            if datum.is_dominant(&nu) && seen.insert(nu.clone()) {
                dominant.push(nu);
            }
        }
    }
    let depth = |mu: &Weight| -> Q { datum.root_coordinates(&(lambda - mu)).into_iter().sum() };
    let mut keyed: Vec<(Q, Weight)> = dominant.into_iter().map(|m| (depth(&m), m)).collect();
    keyed.sort();

    let lr = lambda + datum.rho();
    let top = datum.pair(&lr, &lr);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    for (_, mu) in keyed {
        if &mu == lambda {
            mult.insert(mu, 1);
            continue;
        }
        let mut num = Q::zero();
        for r in roots {
            let mut j = 1;
            loop {
                let nu = &mu + &r.weight.scale_int(j);
                let (dom, _) = datum.to_dominant(&nu);
                let Some(&m) = mult.get(&dom) else { break };
                num += Q::from_integer(m as i64) * r.pair(&nu);
                j += 1;
            }
        }
        let mr = &mu + datum.rho();
        let den = top - datum.pair(&mr, &mr);
        let m = Q::from_integer(2) * num / den;
        debug_assert!(m.is_integer() && m.is_positive(), "Freudenthal gave {m} at {mu}");
        mult.insert(mu, m.to_integer() as u64);
    }

    let mut entries = BTreeMap::new();
    for (mu, m) in mult {
        for nu in datum.orbit(&mu) {
            entries.insert(nu, m);
        }
    }
    Ok(WeightSystem { entries })
}

/// `Π_{α>0} (λ+ρ|α)/(ρ|α)`.
pub fn weyl_dim(datum: &RootDatum, lambda: &Weight) -> Result<u64> {
    require_dominant_integral(datum, lambda)?;
    let lr = lambda + datum.rho();
    let mut d = Q::one();
    for r in datum.positive_roots() {
        d *= r.pair(&lr) / r.pair(datum.rho());
    }
    debug_assert!(d.is_integer());
    Ok(d.to_integer() as u64)
}

/// `D(τ) = Σ_w (-1)^{|w|} e(w(ρ))`.
pub fn weyl_denominator(datum: &RootDatum, tau: &TorusPoint) -> Result<Complex64> {
    let group = datum.weyl_group()?;
    Ok(group
        .elements()
        .iter()
        .map(|w| tau.e(&w.apply(datum.rho())) * w.sign() as f64)
        .sum())
}

/// Precomputed alternating orbit `{(ε(w), w(λ+ρ))}` for Weyl-quotient evaluation.
#[derive(Clone, Debug)]
pub struct WeylNumerator {
    pub highest: Weight,
    terms: Vec<(f64, Weight)>,
}

impl WeylNumerator {
    pub fn new(datum: &RootDatum, lambda: &Weight) -> Result<Self> {
        let group = datum.weyl_group()?;
        let shifted = lambda + datum.rho();
        let terms = group
            .elements()
            .iter()
            .map(|w| (w.sign() as f64, w.apply(&shifted)))
            .collect();
        Ok(WeylNumerator {
            highest: lambda.clone(),
            terms,
        })
    }

    pub fn evaluate(&self, tau: &TorusPoint) -> Complex64 {
        self.terms.iter().map(|(s, mu)| tau.e(mu) * *s).sum()
    }
}

/// `χ_λ(τ)` by the Weyl quotient; `None` at non-regular points.
pub fn char_value_weyl_quotient(datum: &RootDatum, lambda: &Weight, tau: &TorusPoint) -> Result<Option<Complex64>> {
    require_dominant_integral(datum, lambda)?;
    if !tau.is_regular(datum) {
        return Ok(None);
    }
    let num = WeylNumerator::new(datum, lambda)?.evaluate(tau);
    let den = WeylNumerator::new(datum, &Weight::zero(datum.rank()))?.evaluate(tau);
    Ok(Some(num / den))
}

/// `χ_λ(τ) = Σ_μ mult(μ) e(μ)`.
pub fn char_value_weight_sum(datum: &RootDatum, lambda: &Weight, tau: &TorusPoint) -> Result<Complex64> {
    let ws = freudenthal_weights(datum, lambda)?;
    Ok(weight_sum(&ws, tau))
}

pub fn weight_sum(ws: &WeightSystem, tau: &TorusPoint) -> Complex64 {
    ws.entries.iter().map(|(mu, &m)| tau.e(mu) * m as f64).sum()
}

/// Which formula produced a character value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharacterBranch {
    WeylQuotient,
    WeightSum,
}

/// `χ_λ(τ)`: the Weyl quotient at regular points, the weight sum elsewhere.
pub fn char_value_with_branch(
    datum: &RootDatum,
    lambda: &Weight,
    tau: &TorusPoint,
) -> Result<(Complex64, CharacterBranch)> {
    match char_value_weyl_quotient(datum, lambda, tau)? {
        Some(v) => Ok((v, CharacterBranch::WeylQuotient)),
        None => Ok((char_value_weight_sum(datum, lambda, tau)?, CharacterBranch::WeightSum)),
    }
}

pub fn char_value(datum: &RootDatum, lambda: &Weight, tau: &TorusPoint) -> Result<Complex64> {
    char_value_with_branch(datum, lambda, tau).map(|(v, _)| v)
}

/// Torsion points `exp(2πi μ/q)` for `μ ∈ M*/(qM)`, `q = k + h∨`.
#[derive(Clone, Debug)]
pub struct TorsionSet {
    pub level: u32,
    pub modulus: u64,
    pub reps: Vec<Weight>,
    /// Indices into `reps` of regular representatives.
    pub regular: Vec<usize>,
    pub points: Vec<TorusPoint>,
}

impl TorsionSet {
    /// `|M*/(qM)|`.
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn regular_points(&self) -> impl Iterator<Item = &TorusPoint> {
        self.regular.iter().map(move |&i| &self.points[i])
    }

    pub fn regular_count(&self) -> usize {
        self.regular.len()
    }
}

pub fn torsion_points(datum: &RootDatum, k: u32) -> TorsionSet {
    let q = k as u64 + datum.dual_coxeter() as u64;
    let lattice = lattice_m(datum);
    let reps = lattice.torsion_representatives(q);
    let inv_q = Q::new(1, q as i64);
    let points: Vec<TorusPoint> = reps.iter().map(|mu| TorusPoint::new(datum, mu.scale(inv_q))).collect();
    let regular = points
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_regular(datum))
        .map(|(i, _)| i)
        .collect();
    TorsionSet {
        level: k,
        modulus: q,
        reps,
        regular,
        points,
    }
}

/// Weyl induction of a single monomial `e^μ`.
///
/// `Σ_w w(e^μ / Π(1 - e^{-α}))` is `0` when `μ + ρ` is singular and
/// `(-1)^{|w|} χ_{w(μ+ρ)-ρ}` otherwise, `w` taking `μ + ρ` to the dominant
/// chamber.
pub fn monomial_to_character(datum: &RootDatum, mu: &Weight) -> Option<(i64, Weight)> {
    let shifted = mu + datum.rho();
    let (dom, word) = datum.to_dominant(&shifted);
    if dom.coords().iter().any(Zero::is_zero) {
        return None;
    }
    let sign = if word.len() % 2 == 0 { 1 } else { -1 };
    Some((sign, &dom - datum.rho()))
}

/// A finite integer combination of torus monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TCharacter {
    pub terms: BTreeMap<Weight, i64>,
}

impl TCharacter {
    pub fn monomial(mu: Weight) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mu, 1);
        TCharacter { terms }
    }

    pub fn from_weight_system(ws: &WeightSystem) -> Self {
        TCharacter {
            terms: ws.entries.iter().map(|(w, &m)| (w.clone(), m as i64)).collect(),
        }
    }

    pub fn add_term(&mut self, mu: Weight, coeff: i64) {
        let e = self.terms.entry(mu).or_insert(0);
        *e += coeff;
    }

    pub fn evaluate(&self, tau: &TorusPoint) -> Complex64 {
        self.terms.iter().map(|(mu, &c)| tau.e(mu) * c as f64).sum()
    }

    /// `Σ_w w(f / Π(1 - e^{-α}))` at a regular point, evaluated directly as
    /// `Σ_μ c_μ Σ_w ε(w) e(w(μ+ρ)) / D`.
    pub fn induced_value(&self, datum: &RootDatum, tau: &TorusPoint) -> Result<Complex64> {
        tau.require_regular(datum)?;
        let group = datum.weyl_group()?;
        let den = weyl_denominator(datum, tau)?;
        let mut num = Complex64::zero();
        for (mu, &c) in &self.terms {
            let shifted = mu + datum.rho();
            for w in group.elements() {
                num += tau.e(&w.apply(&shifted)) * (w.sign() * c) as f64;
            }
        }
        Ok(num / den)
    }
}

/// Writes the Weyl induction of `f` as `Σ_c m_c χ_c`; zero coefficients
/// are dropped.
pub fn decompose_tcharacter(datum: &RootDatum, f: &TCharacter) -> BTreeMap<Weight, i64> {
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (mu, &c) in &f.terms {
        if let Some((sign, lambda)) = monomial_to_character(datum, mu) {
            *out.entry(lambda).or_insert(0) += sign * c;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::weight::q;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn adjoint_of_a2() {
        let d = datum("A2");
        let ws = freudenthal_weights(&d, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(ws.total(), 8);
        assert_eq!(ws.multiplicity(&Weight::zero(2)), 2);
        assert_eq!(ws.len(), 7);
        for r in d.positive_roots() {
            assert_eq!(ws.multiplicity(&r.weight), 1);
            assert_eq!(ws.multiplicity(&-&r.weight), 1);
        }
    }

    #[test]
    fn rank_one_weights() {
        let d = datum("A1");
        for k in 0..6i64 {
            let ws = freudenthal_weights(&d, &Weight::from_ints(&[k])).unwrap();
            let expect: BTreeMap<Weight, u64> = (0..=k).map(|j| (Weight::from_ints(&[k - 2 * j]), 1)).collect();
            assert_eq!(ws.entries, expect);
        }
    }

    #[test]
    fn trivial_weight_system() {
        let d = datum("G2");
        let ws = freudenthal_weights(&d, &Weight::zero(2)).unwrap();
        assert_eq!(ws.total(), 1);
        assert_eq!(weyl_dim(&d, &Weight::zero(2)).unwrap(), 1);
    }

    #[test]
    fn dimensions() {
        let a2 = datum("A2");
        assert_eq!(weyl_dim(&a2, &Weight::from_ints(&[1, 0])).unwrap(), 3);
        let a1 = datum("A1");
        for k in 0..10 {
            assert_eq!(weyl_dim(&a1, &Weight::from_ints(&[k])).unwrap(), k as u64 + 1);
        }
        // G2 fundamental representations: 7 and 14
        let g2 = datum("G2");
        assert_eq!(weyl_dim(&g2, &Weight::from_ints(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dim(&g2, &Weight::from_ints(&[0, 1])).unwrap(), 14);
        // E8 adjoint
        let e8 = datum("E8");
        let mut adj = vec![0; 8];
        adj[7] = 1;
        assert_eq!(weyl_dim(&e8, &Weight::from_ints(&adj)).unwrap(), 248);
    }

    #[test]
    fn freudenthal_totals_match_weyl_dimension() {
        for (s, lams) in [
            ("B2", vec![vec![1, 1], vec![2, 1], vec![0, 3]]),
            ("G2", vec![vec![1, 1], vec![2, 0]]),
            ("A3", vec![vec![1, 0, 1], vec![2, 1, 0]]),
            ("C3", vec![vec![0, 1, 1]]),
        ] {
            let d = datum(s);
            for l in lams {
                let lam = Weight::from_ints(&l);
                let ws = freudenthal_weights(&d, &lam).unwrap();
                assert_eq!(ws.total(), weyl_dim(&d, &lam).unwrap(), "{s} {lam}");
            }
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let d = datum("A2");
        assert!(matches!(
            weyl_dim(&d, &Weight::from_ints(&[1, -1])),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            freudenthal_weights(&d, &Weight(vec![q(1, 2), q(0, 1)])),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn char_value_examples() {
        let a1 = datum("A1");
        // ⟨α,τ⟩ = 1/3 means τ = (1/3)ω₁ since (α|ω₁) = 1
        let tau = TorusPoint::new(&a1, Weight(vec![q(1, 3)]));
        let v = char_value(&a1, &Weight::from_ints(&[1]), &tau).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        let zero = TorusPoint::new(&a1, Weight::zero(1));
        let (v, branch) = char_value_with_branch(&a1, &Weight::from_ints(&[4]), &zero).unwrap();
        assert_eq!(branch, CharacterBranch::WeightSum);
        assert!((v - Complex64::new(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn denominator_examples() {
        let a1 = datum("A1");
        let zero = TorusPoint::new(&a1, Weight::zero(1));
        assert!(weyl_denominator(&a1, &zero).unwrap().norm() < 1e-12);
        let half = TorusPoint::new(&a1, Weight(vec![q(1, 2)]));
        assert!((weyl_denominator(&a1, &half).unwrap().norm() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn torsion_set_sizes() {
        let a1 = datum("A1");
        let ts = torsion_points(&a1, 1);
        assert_eq!(ts.index(), 6);
        for (i, mu) in ts.reps.iter().enumerate() {
            let pairing = d_pair(&a1, mu);
            assert_eq!(ts.regular.contains(&i), !(pairing % 3).is_zero());
        }
        let a2 = datum("A2");
        assert_eq!(torsion_points(&a2, 1).index(), 48);
    }

    fn d_pair(d: &RootDatum, mu: &Weight) -> Q {
        d.positive_roots()[0].pair(mu)
    }

    #[test]
    fn regular_iff_denominator_nonzero() {
        for (s, k) in [("A1", 3), ("A2", 2), ("B2", 2), ("G2", 1)] {
            let d = datum(s);
            let ts = torsion_points(&d, k);
            assert!(ts.regular_count() > 0);
            for (i, p) in ts.points.iter().enumerate() {
                let big = weyl_denominator(&d, p).unwrap().norm() > 1e-9;
                assert_eq!(big, ts.regular.contains(&i), "{s} k={k} {}", p.tau());
            }
        }
    }

    #[test]
    fn monomial_induction_examples() {
        let a1 = datum("A1");
        assert_eq!(
            monomial_to_character(&a1, &Weight::from_ints(&[3])),
            Some((1, Weight::from_ints(&[3])))
        );
        assert_eq!(monomial_to_character(&a1, &Weight::from_ints(&[-1])), None);
        assert_eq!(
            monomial_to_character(&a1, &Weight::from_ints(&[-2])),
            Some((-1, Weight::from_ints(&[0])))
        );
    }

    #[test]
    fn decomposition_examples() {
        let a1 = datum("A1");
        assert!(decompose_tcharacter(&a1, &TCharacter::default()).is_empty());
        let single = decompose_tcharacter(&a1, &TCharacter::monomial(Weight::from_ints(&[2])));
        assert_eq!(single.into_iter().collect::<Vec<_>>(), vec![(Weight::from_ints(&[2]), 1)]);
        let ws = freudenthal_weights(&a1, &Weight::from_ints(&[2])).unwrap();
        let dec = decompose_tcharacter(&a1, &TCharacter::from_weight_system(&ws));
        assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(Weight::from_ints(&[2]), 1)]);
    }

    #[test]
    fn induction_of_a_character_is_itself() {
        let d = datum("B2");
        for l in [[1, 0], [0, 1], [1, 1], [2, 1]] {
            let lam = Weight::from_ints(&l);
            let ws = freudenthal_weights(&d, &lam).unwrap();
            let dec = decompose_tcharacter(&d, &TCharacter::from_weight_system(&ws));
            assert_eq!(dec.into_iter().collect::<Vec<_>>(), vec![(lam, 1)]);
        }
    }
}
