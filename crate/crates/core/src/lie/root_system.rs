use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{inverse, QMatrix};
use super::weight::{Weight, Q};
use super::weyl::WeylGroup;
use crate::error::{Error, Result};

/// Default cap on the order of an enumerated Weyl group.
pub const WEYL_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A simple Lie type such as `A2` or `G2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(Error::InvalidType {
                series: series.letter(),
                rank,
            })
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().unwrap_or(' ');
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType {
            series: letter,
            rank: 0,
        })?;
        let series = Series::from_letter(letter).ok_or(Error::InvalidType {
            series: letter,
            rank,
        })?;
        SimpleType::new(series, rank)
    }
}

/// A positive root, in both simple-root and fundamental-weight coordinates.
#[derive(Clone, Debug)]
pub struct Root {
    /// Coefficients in the simple-root basis (nonnegative integers).
    pub simple: Vec<i64>,
    /// The same root in fundamental-weight coordinates.
    pub weight: Weight,
    /// `(α|α)` under the normalized form.
    pub norm: Q,
    /// Row vector `ℓ` with `(α|x) = ℓ · x` for `x` in weight coordinates.
    functional: Vec<Q>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    /// `(α|x)`.
    pub fn pair(&self, x: &Weight) -> Q {
        x.dot(&self.functional)
    }

    /// `⟨x, α∨⟩ = 2(α|x)/(α|α)`.
    pub fn coroot_pair(&self, x: &Weight) -> Q {
        self.pair(x) * Q::from_integer(2) / self.norm
    }

    /// `α∨ = 2α/(α|α)` under the identification of the Cartan with its dual.
    pub fn coroot(&self) -> Weight {
        self.weight.scale(Q::from_integer(2) / self.norm)
    }

    pub fn is_long(&self) -> bool {
        self.norm == Q::from_integer(2)
    }
}

/// Immutable root-system data for one simple type, with the invariant form
/// normalized so that the highest root has square length 2.
pub struct RootDatum {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    simple_gram: QMatrix,
    gram: QMatrix,
    half_norms: Vec<Q>,
    positive: Vec<Root>,
    root_lookup: HashMap<Vec<i64>, usize>,
    theta: usize,
    rho: Weight,
    comarks: Vec<i64>,
    dual_coxeter: i64,
    weyl: OnceLock<std::result::Result<WeylGroup, Error>>,
    weyl_cap: usize,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("type", &self.ty)
            .field("positive_roots", &self.positive.len())
            .field("dual_coxeter", &self.dual_coxeter)
            .finish()
    }
}

/// Relative square lengths and Dynkin edges, Bourbaki numbering (0-based).
fn dynkin(ty: SimpleType) -> (Vec<Q>, Vec<(usize, usize)>) {
    let n = ty.rank;
    let two = Q::from_integer(2);
    let one = Q::one();
    let chain = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match ty.series {
        Series::A => (vec![two; n], chain(n)),
        Series::B => {
            let mut l = vec![two; n];
            l[n - 1] = one;
            (l, chain(n))
        }
        Series::C => {
            let mut l = vec![one; n];
            l[n - 1] = two;
            (l, chain(n))
        }
        Series::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (vec![two; n], e)
        }
        Series::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            (vec![two; n], e)
        }
        Series::F => (vec![two, two, one, one], chain(4)),
        Series::G => (vec![Q::new(2, 3), two], chain(2)),
    }
}

/// Builds the root datum of a simple type.
pub fn build_root_datum(ty: SimpleType) -> Result<RootDatum> {
    RootDatum::new(ty)
}

impl RootDatum {
    pub fn new(ty: SimpleType) -> Result<Self> {
        Self::with_weyl_cap(ty, WEYL_GROUP_CAP)
    }

    pub fn with_weyl_cap(ty: SimpleType, weyl_cap: usize) -> Result<Self> {
        let ty = SimpleType::new(ty.series, ty.rank)?;
        let n = ty.rank;
        let (lengths, edges) = dynkin(ty);

        // (α_i|α_j) before normalization: bonded pairs pair to -max(L)/2.
        let mut b: QMatrix = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            b[i][i] = lengths[i];
        }
        for &(i, j) in &edges {
            let v = -std::cmp::max(lengths[i], lengths[j]) / Q::from_integer(2);
            b[i][j] = v;
            b[j][i] = v;
        }
        // a_ij = <α_j, α_i∨> = 2(α_i|α_j)/(α_i|α_i)
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = Q::from_integer(2) * b[i][j] / b[i][i];
                        debug_assert!(a.is_integer());
                        a.to_integer()
                    })
                    .collect()
            })
            .collect();

        let positive_simple = positive_roots_by_closure(&cartan);
        let top = positive_simple
            .iter()
            .enumerate()
            .max_by_key(|(_, r)| r.iter().sum::<i64>())
            .map(|(i, _)| i)
            .expect("nonempty root system");
        let theta_norm = quad(&b, &positive_simple[top]);
        let scale = Q::from_integer(2) / theta_norm;
        for row in b.iter_mut() {
            for x in row.iter_mut() {
                *x *= scale;
            }
        }
        let half_norms: Vec<Q> = (0..n).map(|i| b[i][i] / Q::from_integer(2)).collect();

        // (ω_i|ω_j) = (D B^{-1} D)_ij with D = diag((α_i|α_i)/2).
        let b_inv = inverse(&b).expect("Cartan form is nondegenerate");
        let gram: QMatrix = (0..n)
            .map(|i| (0..n).map(|j| half_norms[i] * b_inv[i][j] * half_norms[j]).collect())
            .collect();

        let positive: Vec<Root> = positive_simple
            .into_iter()
            .map(|simple| {
                let weight = Weight(
                    (0..n)
                        .map(|i| Q::from_integer((0..n).map(|j| simple[j] * cartan[i][j]).sum()))
                        .collect(),
                );
                let norm = quad(&b, &simple);
                let functional = (0..n).map(|i| Q::from_integer(simple[i]) * half_norms[i]).collect();
                Root {
                    simple,
                    weight,
                    norm,
                    functional,
                }
            })
            .collect();
        let mut root_lookup = HashMap::new();
        for (i, r) in positive.iter().enumerate() {
            root_lookup.insert(r.weight.to_ints().expect("roots are integral"), i);
        }

        let rho = Weight(vec![Q::one(); n]);
        let theta = top;
        let comarks: Vec<i64> = (0..n)
            .map(|i| {
                let c = positive[theta].pair(&Weight::unit(n, i));
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        let h = Q::one() + positive[theta].coroot_pair(&rho);
        debug_assert!(h.is_integer());

        Ok(RootDatum {
            ty,
            cartan,
            simple_gram: b,
            gram,
            half_norms,
            positive,
            root_lookup,
            theta,
            rho,
            comarks,
            dual_coxeter: h.to_integer(),
            weyl: OnceLock::new(),
            weyl_cap,
        })
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    /// `a_ij = ⟨α_j, α_i∨⟩`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i|α_j)` for simple roots.
    pub fn simple_gram(&self) -> &QMatrix {
        &self.simple_gram
    }

    /// `(ω_i|ω_j)`; all pairings of weight-coordinate vectors go through it.
    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|j| Q::from_integer(self.cartan[j][i])).collect())
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| self.simple_root(i)).collect()
    }

    pub fn fundamental_weights(&self) -> Vec<Weight> {
        (0..self.rank()).map(|i| Weight::unit(self.rank(), i)).collect()
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn theta(&self) -> &Root {
        &self.positive[self.theta]
    }

    /// `θ∨`, which equals `θ` because `(θ|θ) = 2`.
    pub fn theta_coroot(&self) -> Weight {
        self.theta().coroot()
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// `(θ|ω_i)`; the level of `λ` is `Σ comarks_i λ_i`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dimension(&self) -> usize {
        self.rank() + 2 * self.positive.len()
    }

    /// `(x|y)` via the Gram matrix.
    pub fn pair(&self, x: &Weight, y: &Weight) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Q::zero();
            for j in 0..n {
                row += self.gram[i][j] * y[j];
            }
            s += x[i] * row;
        }
        s
    }

    /// `G·x`, so that `(y|x) = y · (G·x)`.
    pub fn lower(&self, x: &Weight) -> Vec<Q> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.gram[i][j] * x[j]).sum())
            .collect()
    }

    /// `(α_i|x)` for a simple root.
    pub fn simple_pair(&self, i: usize, x: &Weight) -> Q {
        self.half_norms[i] * x[i]
    }

    /// `(θ|x)`.
    pub fn theta_pair(&self, x: &Weight) -> Q {
        self.theta().pair(x)
    }

    /// Level of a weight, `(θ|λ)`.
    pub fn level_of(&self, lambda: &Weight) -> Q {
        self.theta_pair(lambda)
    }

    pub fn check_rank(&self, x: &Weight) -> Result<()> {
        if x.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                got: x.rank(),
            })
        }
    }

    pub fn is_dominant(&self, x: &Weight) -> bool {
        !x.has_negative()
    }

    pub fn is_dominant_integral(&self, x: &Weight) -> bool {
        x.is_integral() && self.is_dominant(x)
    }

    /// Simple reflection `s_i(x) = x - ⟨x, α_i∨⟩ α_i`.
    pub fn reflect(&self, i: usize, x: &Weight) -> Weight {
        let c = x[i];
        if c.is_zero() {
            return x.clone();
        }
        Weight(
            (0..self.rank())
                .map(|j| x[j] - c * Q::from_integer(self.cartan[j][i]))
                .collect(),
        )
    }

    /// Reflection in the hyperplane orthogonal to a positive root.
    pub fn reflect_root(&self, root: &Root, x: &Weight) -> Weight {
        let c = root.coroot_pair(x);
        x - &root.weight.scale(c)
    }

    /// Moves `x` into the closed dominant chamber by simple reflections.
    ///
    /// Returns the dominant representative and the word `[j1, .., jm]` with
    /// `x = s_j1 ... s_jm (dominant)`.
    pub fn to_dominant(&self, x: &Weight) -> (Weight, Vec<usize>) {
        let mut y = x.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| y[i].is_negative()) {
            y = self.reflect(i, &y);
            word.push(i);
        }
        (y, word)
    }

    /// Index and sign of a root given in weight coordinates.
    pub fn root_index(&self, x: &Weight) -> Option<(usize, i8)> {
        let ints = x.to_ints()?;
        if let Some(&i) = self.root_lookup.get(&ints) {
            return Some((i, 1));
        }
        let neg: Vec<i64> = ints.iter().map(|v| -v).collect();
        self.root_lookup.get(&neg).map(|&i| (i, -1))
    }

    /// Whether a root (in weight coordinates) is positive.
    pub fn is_positive_root(&self, x: &Weight) -> bool {
        matches!(self.root_index(x), Some((_, 1)))
    }

    /// The W-orbit of a weight, breadth-first from `x`.
    pub fn orbit(&self, x: &Weight) -> Vec<Weight> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(x.clone());
        queue.push_back(x.clone());
        while let Some(y) = queue.pop_front() {
            for i in 0..self.rank() {
                let z = self.reflect(i, &y);
                if seen.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
            out.push(y);
        }
        out
    }

    /// The full Weyl group, enumerated on first use.
    pub fn weyl_group(&self) -> Result<&WeylGroup> {
        self.weyl
            .get_or_init(|| WeylGroup::enumerate(self, self.weyl_cap))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn weyl_cap(&self) -> usize {
        self.weyl_cap
    }

    /// `-w₀(λ)`, the highest weight of the dual representation.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        self.to_dominant(&-lambda).0
    }

    /// Coordinates of a weight in the simple-root basis.
    pub fn root_coordinates(&self, x: &Weight) -> Vec<Q> {
        // (α_i|x) = Σ_j c_j (α_i|α_j)  =>  c = B^{-1} (α_i|x)_i
        let n = self.rank();
        let rhs: Vec<Q> = (0..n).map(|i| self.simple_pair(i, x)).collect();
        let b_inv = inverse(&self.simple_gram).expect("nondegenerate");
        (0..n)
            .map(|i| (0..n).map(|j| b_inv[i][j] * rhs[j]).sum())
            .collect()
    }
}

fn quad(b: &QMatrix, v: &[i64]) -> Q {
    let n = v.len();
    let mut s = Q::zero();
    for i in 0..n {
        for j in 0..n {
            s += b[i][j] * Q::from_integer(v[i] * v[j]);
        }
    }
    s
}

/// Positive roots in the simple-root basis, generated height by height via
/// root strings: `β + α_i` is a root iff `q - ⟨β, α_i∨⟩ > 0` where `q` is
/// the length of the downward `α_i`-string through `β`.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut index: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut cursor = 0;
    while cursor < roots.len() {
        let beta = roots[cursor].clone();
        cursor += 1;
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let mut q = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if index.contains(&down) {
                    q += 1;
                } else {
                    break;
                }
            }
            if q - pairing > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if index.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots
}
