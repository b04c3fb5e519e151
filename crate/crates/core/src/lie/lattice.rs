use num_traits::Signed;

use super::linalg::{determinant, hermite_rows, inverse, QMatrix};
use super::root_system::RootDatum;
use super::weight::{Weight, Q};

/// The translation lattice `M`, spanned by the Weyl orbit of `θ∨`, and its
/// dual `M* = {x : (x|M) ⊆ ℤ}`.
#[derive(Clone, Debug)]
pub struct LatticeM {
    /// Basis of `M` in weight coordinates (Hermite normal form rows).
    pub basis: Vec<Weight>,
    /// Basis of `M*` dual to `basis`: `(dual_basis[i] | basis[j]) = δ_ij`.
    pub dual_basis: Vec<Weight>,
    /// `(basis[i] | basis[j])`, an integer matrix.
    pub gram: Vec<Vec<i64>>,
    dual_lowered: Vec<Vec<Q>>,
}

impl LatticeM {
    /// `|M*/M|`.
    pub fn dual_index(&self) -> u64 {
        let g: QMatrix = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        determinant(&g).abs().to_integer() as u64
    }

    /// `|M*/(q M)| = q^rank · |M*/M|`.
    pub fn torsion_index(&self, q: u64) -> u64 {
        q.pow(self.basis.len() as u32) * self.dual_index()
    }

    /// Integer coordinates of `x` in `basis`, or `None` if `x ∉ M`.
    pub fn coordinates(&self, x: &Weight) -> Option<Vec<i64>> {
        let coeffs: Vec<Q> = self.dual_lowered.iter().map(|y| x.dot(y)).collect();
        let ints = coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        (self.combine(&ints) == *x).then_some(ints)
    }

    pub fn contains(&self, x: &Weight) -> bool {
        self.coordinates(x).is_some()
    }

    /// Whether `x` pairs integrally with all of `M`.
    pub fn dual_contains(&self, datum: &RootDatum, x: &Weight) -> bool {
        self.basis.iter().all(|b| datum.pair(b, x).is_integer())
    }

    pub fn combine(&self, coeffs: &[i64]) -> Weight {
        combine(&self.basis, coeffs)
    }

    /// Coset representatives of `M*/(q M)`, in weight coordinates.
    ///
    /// In the dual basis `qM` is the row lattice of `q·gram`; its Hermite
    /// form is triangular, so the box `0 ≤ z_i < h_ii` holds exactly one
    /// representative per coset.
    pub fn torsion_representatives(&self, q: u64) -> Vec<Weight> {
        let q = q as i64;
        let rows: Vec<Vec<i64>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| x * q).collect())
            .collect();
        let h = hermite_rows(&rows);
        let bounds: Vec<i64> = (0..h.len()).map(|i| h[i][i]).collect();
        let mut out = Vec::new();
        let mut z = vec![0i64; bounds.len()];
        loop {
            out.push(combine(&self.dual_basis, &z));
            let mut i = 0;
            loop {
                if i == z.len() {
                    return out;
                }
                z[i] += 1;
                if z[i] < bounds[i] {
                    break;
                }
                z[i] = 0;
                i += 1;
            }
        }
    }
}

fn combine(basis: &[Weight], coeffs: &[i64]) -> Weight {
    let n = basis.first().map_or(0, Weight::rank);
    let mut out = Weight::zero(n);
    for (c, b) in coeffs.iter().zip(basis) {
        if *c != 0 {
            out = &out + &b.scale_int(*c);
        }
    }
    out
}

/// Builds `M` and `M*` for a root datum by exact lattice arithmetic.
pub fn lattice_m(datum: &RootDatum) -> LatticeM {
    let n = datum.rank();
    let orbit = datum.orbit(&datum.theta_coroot());
    let rows: Vec<Vec<i64>> = orbit
        .iter()
        .map(|w| w.to_ints().expect("coroots are integral in weight coordinates"))
        .collect();
    let hnf = hermite_rows(&rows);
    assert_eq!(hnf.len(), n, "orbit of θ∨ spans the Cartan");
    let basis: Vec<Weight> = hnf.iter().map(|r| Weight::from_ints(r)).collect();

    // Rows y_i with (y_i | b_j) = δ_ij: with L = (G b_j)_j as rows,
    // L Y^T = I, so y_i is column i of L^{-1}.
    let lowered: QMatrix = basis.iter().map(|b| datum.lower(b)).collect();
    let inv = inverse(&lowered).expect("basis is independent");
    let dual_basis: Vec<Weight> = (0..n)
        .map(|i| Weight((0..n).map(|r| inv[r][i]).collect()))
        .collect();
    let gram: Vec<Vec<i64>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| {
                    let v = datum.pair(a, b);
                    assert!(v.is_integer(), "M is an integral lattice");
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let dual_lowered = dual_basis.iter().map(|y| datum.lower(y)).collect();
    LatticeM {
        basis,
        dual_basis,
        gram,
        dual_lowered,
    }
}
