//! Level-`k` fusion coefficients: the torsion-point character sum, the
//! Kac-Walton algorithm, classical tensor products, and fusion tables.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{
    freudenthal_weights, monomial_to_character, torsion_points, weyl_dim, TorsionSet, TorusPoint, WeylNumerator,
};
use crate::error::{Error, Result};
use crate::lie::{alcove_reduce, in_open_alcove, RootDatum, SimpleType, Weight, Q};
use crate::tolerances;

/// A dominant integral weight with `(θ|λ) ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlcoveWeight {
    pub weight: Weight,
    pub level: u32,
}

impl AlcoveWeight {
    pub fn new(datum: &RootDatum, weight: Weight, level: u32) -> Result<Self> {
        require_in_alcove(datum, &weight, level)?;
        Ok(AlcoveWeight { weight, level })
    }
}

pub fn in_level_alcove(datum: &RootDatum, lambda: &Weight, k: u32) -> bool {
    lambda.rank() == datum.rank()
        && datum.is_dominant_integral(lambda)
        && datum.level_of(lambda) <= Q::from_integer(k as i64)
}

pub(crate) fn require_in_alcove(datum: &RootDatum, lambda: &Weight, k: u32) -> Result<()> {
    datum.check_rank(lambda)?;
    if in_level_alcove(datum, lambda, k) {
        Ok(())
    } else {
        Err(Error::NotInAlcove {
            weight: lambda.clone(),
            level: k,
        })
    }
}

/// All of `P^k_+`, in lexicographic order of coordinates.
pub fn level_alcove(datum: &RootDatum, k: u32) -> Vec<AlcoveWeight> {
    alcove_weights(datum, k)
        .into_iter()
        .map(|weight| AlcoveWeight { weight, level: k })
        .collect()
}

/// `P^k_+` as bare weights.
pub fn alcove_weights(datum: &RootDatum, k: u32) -> Vec<Weight> {
    fn fill(comarks: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
        let i = prefix.len();
        if i == comarks.len() {
            out.push(Weight::from_ints(prefix));
            return;
        }
        let mut v = 0;
        while v * comarks[i] <= budget {
            prefix.push(v);
            fill(comarks, budget - v * comarks[i], prefix, out);
            prefix.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    fill(datum.comarks(), k as i64, &mut Vec::new(), &mut out);
    out
}

/// The rounded value of one Verlinde sum and how far it was from an integer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerlindeValue {
    pub value: u64,
    pub residual: f64,
    pub imaginary: f64,
}

/// Characters of `P^k_+` tabulated at the regular torsion points.
///
/// `m_c = ((-1)^{|Δ+|} / (|W|·|M*/qM|)) Σ_s χ_c̄(s) D(s)² χ_λ(s) χ_λ'(s)`,
/// the sum running over every regular torsion point in a fixed order.
pub struct VerlindeEngine<'a> {
    datum: &'a RootDatum,
    level: u32,
    torsion: TorsionSet,
    /// `(-1)^{|Δ+|} D(s)² / (|W|·|M*/qM|)` per regular point.
    measure: Vec<Complex64>,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
    /// `characters[i][j] = χ_{weights[i]}(s_j)`.
    characters: Vec<Vec<Complex64>>,
    duals: Vec<usize>,
    tolerance: f64,
}

impl<'a> VerlindeEngine<'a> {
    pub fn new(datum: &'a RootDatum, k: u32) -> Result<Self> {
        let group = datum.weyl_group()?;
        let torsion = torsion_points(datum, k);
        let norm = (group.order() * torsion.index()) as f64;
        let sign = if datum.num_positive_roots().is_multiple_of(2) { 1.0 } else { -1.0 };
        let rho_num = WeylNumerator::new(datum, &Weight::zero(datum.rank()))?;
        let denominators: Vec<Complex64> = torsion.regular_points().map(|s| rho_num.evaluate(s)).collect();
        let measure = denominators.iter().map(|d| d * d * sign / norm).collect();

        let weights = alcove_weights(datum, k);
        let index: HashMap<Weight, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let points: Vec<&TorusPoint> = torsion.regular_points().collect();
        let characters = weights
            .par_iter()
            .map(|lambda| {
                let num = WeylNumerator::new(datum, lambda)?;
                Ok(points
                    .iter()
                    .zip(&denominators)
                    .map(|(s, d)| num.evaluate(s) / d)
                    .collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        let duals = weights.iter().map(|w| index[&datum.dual_weight(w)]).collect();
        log::debug!(
            "{} level {k}: {} weights, {} of {} torsion points regular",
            datum.simple_type(),
            weights.len(),
            torsion.regular_count(),
            torsion.index()
        );
        Ok(VerlindeEngine {
            datum,
            level: k,
            torsion,
            measure,
            weights,
            index,
            characters,
            duals,
            tolerance: tolerances::ROUNDING,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn datum(&self) -> &RootDatum {
        self.datum
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn torsion(&self) -> &TorsionSet {
        &self.torsion
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn index_of(&self, lambda: &Weight) -> Result<usize> {
        self.index.get(lambda).copied().ok_or_else(|| Error::NotInAlcove {
            weight: lambda.clone(),
            level: self.level,
        })
    }

    /// `χ_λ` at each regular torsion point, in `torsion().regular` order.
    pub fn character_values(&self, lambda: &Weight) -> Result<&[Complex64]> {
        Ok(&self.characters[self.index_of(lambda)?])
    }

    /// Index of the dual weight `-w₀(λ)` in `weights()`.
    pub fn dual_index(&self, i: usize) -> usize {
        self.duals[i]
    }

    /// The raw complex sum before rounding.
    pub fn raw_sum(&self, i: usize, j: usize, c: usize) -> Complex64 {
        let cbar = &self.characters[self.duals[c]];
        let a = &self.characters[i];
        let b = &self.characters[j];
        let mut acc = Complex64::new(0.0, 0.0);
        for s in 0..self.measure.len() {
            acc += cbar[s] * self.measure[s] * a[s] * b[s];
        }
        acc
    }

    pub fn coefficient_by_index(&self, i: usize, j: usize, c: usize) -> Result<VerlindeValue> {
        let raw = self.raw_sum(i, j, c);
        let rounded = raw.re.round();
        let residual = (raw.re - rounded).abs();
        let imaginary = raw.im.abs();
        if residual >= self.tolerance || imaginary >= self.tolerance || rounded < 0.0 {
            return Err(Error::ResidualTooLarge {
                what: format!(
                    "N_{{{},{}}}^{{{}}} at level {}",
                    self.weights[i], self.weights[j], self.weights[c], self.level
                ),
                residual: if rounded < 0.0 { raw.re.abs() } else { residual },
                imaginary,
                tolerance: self.tolerance,
            });
        }
        Ok(VerlindeValue {
            value: rounded as u64,
            residual,
            imaginary,
        })
    }

    pub fn coefficient(&self, lambda: &Weight, mu: &Weight, c: &Weight) -> Result<VerlindeValue> {
        self.coefficient_by_index(self.index_of(lambda)?, self.index_of(mu)?, self.index_of(c)?)
    }
}

/// A single fusion coefficient `N_{λλ'}^c` by the torsion-point sum.
pub fn verlinde_coefficient(datum: &RootDatum, lambda: &Weight, mu: &Weight, c: &Weight, k: u32) -> Result<u64> {
    for w in [lambda, mu, c] {
        require_in_alcove(datum, w, k)?;
    }
    VerlindeEngine::new(datum, k)?.coefficient(lambda, mu, c).map(|v| v.value)
}

/// Multiplicities of the irreducible summands of `V(λ) ⊗ V(λ')`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalDecomposition {
    pub entries: BTreeMap<Weight, u64>,
}

impl ClassicalDecomposition {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }
}

/// Brauer-Klimyk: `V(λ) ⊗ V(λ') = Σ_ν mult(ν) · ind(e^{λ+ν})`, with `ν`
/// running over the weights of the smaller factor.
pub fn classical_tensor(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<ClassicalDecomposition> {
    let dl = weyl_dim(datum, lambda)?;
    let dm = weyl_dim(datum, mu)?;
    let (big, small) = if dl >= dm { (lambda, mu) } else { (mu, lambda) };
    let ws = freudenthal_weights(datum, small)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, &m) in &ws.entries {
        if let Some((sign, top)) = monomial_to_character(datum, &(big + nu)) {
            *acc.entry(top).or_insert(0) += sign * m as i64;
        }
    }
    let mut entries = BTreeMap::new();
    let mut total = 0u64;
    for (w, m) in acc {
        if m < 0 {
            return Err(Error::IdentityViolated(format!(
                "Klimyk gave multiplicity {m} for {w} in {lambda} ⊗ {mu}"
            )));
        }
        if m > 0 {
            total += m as u64 * weyl_dim(datum, &w)?;
            entries.insert(w, m as u64);
        }
    }
    if total != dl * dm {
        return Err(Error::IdentityViolated(format!(
            "dimensions of {lambda} ⊗ {mu} add up to {total}, expected {}",
            dl * dm
        )));
    }
    Ok(ClassicalDecomposition { entries })
}

/// The level-`k` fusion product `λ ⊗_k λ'` by Kac-Walton: each classical
/// summand `μ` is moved by the level-`(k+h∨)` shifted affine Weyl action
/// into the alcove, with sign, and summands on a wall are dropped.
pub fn kac_walton_product(datum: &RootDatum, lambda: &Weight, mu: &Weight, k: u32) -> Result<BTreeMap<Weight, u64>> {
    require_in_alcove(datum, lambda, k)?;
    require_in_alcove(datum, mu, k)?;
    let q = Q::from_integer(k as i64 + datum.dual_coxeter());
    let classical = classical_tensor(datum, lambda, mu)?;
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, &m) in &classical.entries {
        let x = (nu + datum.rho()).scale(q.recip());
        let (c, sigma) = alcove_reduce(datum, &x);
        if !in_open_alcove(datum, &c) {
            continue;
        }
        let top = &c.scale(q) - datum.rho();
        *acc.entry(top).or_insert(0) += sigma.sign() * m as i64;
    }
    let mut out = BTreeMap::new();
    for (w, m) in acc {
        if m < 0 {
            return Err(Error::IdentityViolated(format!(
                "Kac-Walton gave {m} for {w} in {lambda} ⊗_{k} {mu}"
            )));
        }
        if m > 0 {
            out.insert(w, m as u64);
        }
    }
    Ok(out)
}

/// `N_{λλ'}^c` by Kac-Walton.
pub fn kac_walton(datum: &RootDatum, lambda: &Weight, mu: &Weight, c: &Weight, k: u32) -> Result<u64> {
    require_in_alcove(datum, c, k)?;
    Ok(kac_walton_product(datum, lambda, mu, k)?.get(c).copied().unwrap_or(0))
}

/// One nonzero structure constant, in integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub nu: Vec<i64>,
    pub n: u64,
}

/// All structure constants `N_{λλ'}^c` over `P^k_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTable {
    pub ty: SimpleType,
    pub level: u32,
    pub weights: Vec<Weight>,
    /// `n³` entries, `coefficients[(i·n + j)·n + c]`.
    coefficients: Vec<u64>,
    duals: Vec<usize>,
}

/// Summary of a table computed by the torsion-point sum.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ResidualSummary {
    pub max_residual: f64,
    pub max_imaginary: f64,
}

impl FusionTable {
    fn from_fn(
        datum: &RootDatum,
        k: u32,
        weights: Vec<Weight>,
        f: impl Fn(usize, usize) -> Result<Vec<u64>> + Sync,
    ) -> Result<Self> {
        let n = weights.len();
        let rows = (0..n * n)
            .into_par_iter()
            .map(|ij| f(ij / n, ij % n))
            .collect::<Result<Vec<Vec<u64>>>>()?;
        let index: HashMap<&Weight, usize> = weights.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let duals = weights.iter().map(|w| index[&datum.dual_weight(w)]).collect();
        Ok(FusionTable {
            ty: datum.simple_type(),
            level: k,
            coefficients: rows.into_iter().flatten().collect(),
            weights,
            duals,
        })
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn index_of(&self, lambda: &Weight) -> Option<usize> {
        self.weights.iter().position(|w| w == lambda)
    }

    pub fn by_index(&self, i: usize, j: usize, c: usize) -> u64 {
        let n = self.size();
        self.coefficients[(i * n + j) * n + c]
    }

    pub fn get(&self, lambda: &Weight, mu: &Weight, c: &Weight) -> Option<u64> {
        Some(self.by_index(self.index_of(lambda)?, self.index_of(mu)?, self.index_of(c)?))
    }

    /// The nonzero entries in `(λ, λ', c)` order.
    pub fn entries(&self) -> Vec<FusionEntry> {
        let n = self.size();
        let ints = |i: usize| self.weights[i].to_ints().expect("integral");
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    let v = self.by_index(i, j, c);
                    if v != 0 {
                        out.push(FusionEntry {
                            lambda: ints(i),
                            mu: ints(j),
                            nu: ints(c),
                            n: v,
                        });
                    }
                }
            }
        }
        out
    }

    /// Rebuilds a table from its nonzero entries.
    pub fn from_entries(datum: &RootDatum, k: u32, entries: &[FusionEntry]) -> Result<Self> {
        let weights = alcove_weights(datum, k);
        let n = weights.len();
        let index: HashMap<Weight, usize> = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let lookup = |v: &[i64]| -> Result<usize> {
            let w = Weight::from_ints(v);
            index.get(&w).copied().ok_or(Error::NotInAlcove { weight: w, level: k })
        };
        let mut coefficients = vec![0; n * n * n];
        for e in entries {
            let (i, j, c) = (lookup(&e.lambda)?, lookup(&e.mu)?, lookup(&e.nu)?);
            coefficients[(i * n + j) * n + c] = e.n;
        }
        let duals = weights.iter().map(|w| index[&datum.dual_weight(w)]).collect();
        Ok(FusionTable {
            ty: datum.simple_type(),
            level: k,
            weights,
            coefficients,
            duals,
        })
    }

    fn violation(&self, what: &str, detail: String) -> Error {
        Error::IdentityViolated(format!("{} level {}: {what}: {detail}", self.ty, self.level))
    }

    pub fn check_commutativity(&self) -> Result<()> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    if self.by_index(i, j, c) != self.by_index(j, i, c) {
                        return Err(self.violation("commutativity", self.triple(i, j, c)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `N_{λ,0}^c = δ_{λc}`; the trivial weight is index 0.
    pub fn check_unit(&self) -> Result<()> {
        let n = self.size();
        debug_assert!(self.weights[0].is_zero());
        for i in 0..n {
            for c in 0..n {
                let expect = u64::from(i == c);
                if self.by_index(i, 0, c) != expect || self.by_index(0, i, c) != expect {
                    return Err(self.violation("unit", self.triple(i, 0, c)));
                }
            }
        }
        Ok(())
    }

    /// `N_{λλ'}^c = N_{λc̄}^{λ̄'}`, and `N_{λλ'}^c = N_{λ̄λ̄'}^{c̄}`.
    pub fn check_conjugation(&self) -> Result<()> {
        let n = self.size();
        let d = &self.duals;
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    let v = self.by_index(i, j, c);
                    if v != self.by_index(i, d[c], d[j]) || v != self.by_index(d[i], d[j], d[c]) {
                        return Err(self.violation("conjugation", self.triple(i, j, c)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Σ_e N_{λλ'}^e N_{eλ''}^f = Σ_e N_{λ'λ''}^e N_{λe}^f`.
    pub fn check_associativity(&self) -> Result<()> {
        let n = self.size();
        let bad = (0..n).into_par_iter().find_map_first(|a| {
            for b in 0..n {
                for c in 0..n {
                    for f in 0..n {
                        let left: u64 = (0..n).map(|e| self.by_index(a, b, e) * self.by_index(e, c, f)).sum();
                        let right: u64 = (0..n).map(|e| self.by_index(b, c, e) * self.by_index(a, e, f)).sum();
                        if left != right {
                            return Some(format!(
                                "({} ⊗ {}) ⊗ {} vs {} ⊗ ({} ⊗ {}) at {}: {left} ≠ {right}",
                                self.weights[a],
                                self.weights[b],
                                self.weights[c],
                                self.weights[a],
                                self.weights[b],
                                self.weights[c],
                                self.weights[f]
                            ));
                        }
                    }
                }
            }
            None
        });
        match bad {
            Some(detail) => Err(self.violation("associativity", detail)),
            None => Ok(()),
        }
    }

    pub fn check_invariants(&self) -> Result<()> {
        self.check_commutativity()?;
        self.check_unit()?;
        self.check_conjugation()?;
        self.check_associativity()
    }

    fn triple(&self, i: usize, j: usize, c: usize) -> String {
        format!(
            "N_{{{},{}}}^{{{}}} = {}",
            self.weights[i],
            self.weights[j],
            self.weights[c],
            self.by_index(i, j, c)
        )
    }
}

/// The fusion table by the torsion-point sum, with its invariants checked.
pub fn fusion_table(datum: &RootDatum, k: u32) -> Result<FusionTable> {
    fusion_table_with_residuals(datum, k, tolerances::ROUNDING).map(|(t, _)| t)
}

pub fn fusion_table_with_residuals(datum: &RootDatum, k: u32, tolerance: f64) -> Result<(FusionTable, ResidualSummary)> {
    let engine = VerlindeEngine::new(datum, k)?.with_tolerance(tolerance);
    let n = engine.weights().len();
    let values = (0..n * n)
        .into_par_iter()
        .map(|ij| {
            (0..n)
                .map(|c| engine.coefficient_by_index(ij / n, ij % n, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<Vec<VerlindeValue>>>>()?;
    let mut summary = ResidualSummary::default();
    for v in values.iter().flatten() {
        summary.max_residual = summary.max_residual.max(v.residual);
        summary.max_imaginary = summary.max_imaginary.max(v.imaginary);
    }
    let table = FusionTable::from_fn(datum, k, engine.weights().to_vec(), |i, j| {
        Ok(values[i * n + j].iter().map(|v| v.value).collect())
    })?;
    table.check_invariants()?;
    Ok((table, summary))
}

/// The fusion table by Kac-Walton.
pub fn kac_walton_table(datum: &RootDatum, k: u32) -> Result<FusionTable> {
    let weights = alcove_weights(datum, k);
    let lookup = weights.clone();
    FusionTable::from_fn(datum, k, weights, |i, j| {
        let product = kac_walton_product(datum, &lookup[i], &lookup[j], k)?;
        Ok(lookup.iter().map(|c| product.get(c).copied().unwrap_or(0)).collect())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap()).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    #[test]
    fn alcove_enumeration() {
        let a1 = datum("A1");
        for k in 0..6 {
            assert_eq!(alcove_weights(&a1, k), (0..=k as i64).map(|j| w(&[j])).collect::<Vec<_>>());
        }
        let a2 = datum("A2");
        assert_eq!(alcove_weights(&a2, 1), vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]);
        assert_eq!(alcove_weights(&datum("G2"), 0), vec![w(&[0, 0])]);
        for l in level_alcove(&datum("B3"), 3) {
            assert!(in_level_alcove(&datum("B3"), &l.weight, 3));
        }
    }

    #[test]
    fn rank_one_verlinde_examples() {
        let a1 = datum("A1");
        assert_eq!(verlinde_coefficient(&a1, &w(&[1]), &w(&[1]), &w(&[0]), 1).unwrap(), 1);
        assert_eq!(verlinde_coefficient(&a1, &w(&[1]), &w(&[1]), &w(&[1]), 1).unwrap(), 0);
        assert_eq!(verlinde_coefficient(&a1, &w(&[1]), &w(&[1]), &w(&[0]), 2).unwrap(), 1);
        assert_eq!(verlinde_coefficient(&a1, &w(&[1]), &w(&[1]), &w(&[2]), 2).unwrap(), 1);
    }

    #[test]
    fn rejects_weights_outside_alcove() {
        let a1 = datum("A1");
        assert!(matches!(
            verlinde_coefficient(&a1, &w(&[3]), &w(&[1]), &w(&[0]), 2),
            Err(Error::NotInAlcove { .. })
        ));
    }

    #[test]
    fn classical_examples() {
        let a2 = datum("A2");
        let d = classical_tensor(&a2, &w(&[1, 0]), &w(&[1, 0])).unwrap();
        assert_eq!(d.entries.len(), 2);
        assert_eq!(d.multiplicity(&w(&[0, 1])), 1);
        assert_eq!(d.multiplicity(&w(&[2, 0])), 1);
        let a1 = datum("A1");
        let d = classical_tensor(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(d.entries.into_iter().collect::<Vec<_>>(), vec![(w(&[0]), 1), (w(&[2]), 1)]);
        let g2 = datum("G2");
        let d = classical_tensor(&g2, &w(&[1, 1]), &w(&[0, 0])).unwrap();
        assert_eq!(d.entries.into_iter().collect::<Vec<_>>(), vec![(w(&[1, 1]), 1)]);
    }

    #[test]
    fn adjoint_squared_of_a2() {
        // 8 ⊗ 8 = 1 + 8 + 8 + 10 + 10bar + 27
        let a2 = datum("A2");
        let d = classical_tensor(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(d.multiplicity(&w(&[1, 1])), 2);
        assert_eq!(d.multiplicity(&w(&[0, 0])), 1);
        assert_eq!(d.multiplicity(&w(&[3, 0])), 1);
        assert_eq!(d.multiplicity(&w(&[0, 3])), 1);
        assert_eq!(d.multiplicity(&w(&[2, 2])), 1);
    }

    #[test]
    fn kac_walton_examples() {
        let a2 = datum("A2");
        let p = kac_walton_product(&a2, &w(&[1, 0]), &w(&[1, 0]), 1).unwrap();
        assert_eq!(p.into_iter().collect::<Vec<_>>(), vec![(w(&[0, 1]), 1)]);
    }

    #[test]
    fn rank_one_kac_walton_closed_form() {
        let a1 = datum("A1");
        for k in 1..7i64 {
            for a in 0..=k {
                for b in 0..=k {
                    for c in 0..=k {
                        let expect = (a - b).abs() <= c && c <= (a + b).min(2 * k - a - b) && (a + b - c) % 2 == 0;
                        let got = kac_walton(&a1, &w(&[a]), &w(&[b]), &w(&[c]), k as u32).unwrap();
                        assert_eq!(got, u64::from(expect), "k={k} {a} {b} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_on_small_cases() {
        for (s, k) in [("A1", 3), ("A2", 2), ("B2", 2), ("G2", 1), ("C3", 1)] {
            let d = datum(s);
            let v = fusion_table(&d, k).unwrap();
            let o = kac_walton_table(&d, k).unwrap();
            assert_eq!(v, o, "{s} level {k}");
        }
    }

    #[test]
    fn level_one_a2_is_z3() {
        let d = datum("A2");
        let t = fusion_table(&d, 1).unwrap();
        // weights are 0, ω₂, ω₁, i.e. classes 0, 2, 1 of ℤ/3
        let class = |x: usize| [0, 2, 1][x];
        for i in 0..3 {
            for j in 0..3 {
                for c in 0..3 {
                    let want = u64::from((class(i) + class(j)) % 3 == class(c));
                    assert_eq!(t.by_index(i, j, c), want, "{i} {j} {c}");
                }
            }
        }
    }

    #[test]
    fn entries_round_trip() {
        let d = datum("A1");
        let t = fusion_table(&d, 2).unwrap();
        let entries = t.entries();
        assert_eq!(entries.len(), 10);
        assert_eq!(FusionTable::from_entries(&d, 2, &entries).unwrap(), t);
    }

    #[test]
    fn broken_table_is_caught() {
        let d = datum("A1");
        let mut entries = fusion_table(&d, 2).unwrap().entries();
        entries.retain(|e| !(e.lambda == [1] && e.mu == [2]));
        let t = FusionTable::from_entries(&d, 2, &entries).unwrap();
        assert!(t.check_commutativity().is_err());
    }
}
