use std::collections::HashMap;

use super::root_system::RootDatum;
use super::weight::{Weight, Q};
use crate::error::{Error, Result};

/// An element of the finite Weyl group.
///
/// `word = [i1, .., ik]` means `w = s_i1 s_i2 ... s_ik`; the word is
/// reduced so `length == word.len()`. `matrix` acts on weight coordinates
/// (column `j` is `w(ω_j)`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let matrix = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement {
            word: Vec::new(),
            matrix,
        }
    }

    /// Builds `s_i1 ... s_ik`; the word is reduced on the way through the
    /// image of `ρ`, so non-reduced input is accepted.
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Self {
        let n = datum.rank();
        let columns: Vec<Weight> = (0..n)
            .map(|j| {
                let mut x = Weight::unit(n, j);
                for &i in word.iter().rev() {
                    x = datum.reflect(i, &x);
                }
                x
            })
            .collect();
        Self::from_columns(datum, &columns)
    }

    fn from_columns(datum: &RootDatum, columns: &[Weight]) -> Self {
        let n = datum.rank();
        let matrix: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        debug_assert!(columns[j][i].is_integer());
                        columns[j][i].to_integer()
                    })
                    .collect()
            })
            .collect();
        Self::from_matrix(datum, matrix)
    }

    /// The element with the given action matrix; its reduced word is read
    /// off from the image of `ρ`.
    pub fn from_matrix(datum: &RootDatum, matrix: Vec<Vec<i64>>) -> Self {
        let rho = datum.rho();
        let image = apply_int(&matrix, rho);
        let (dominant, word) = datum.to_dominant(&image);
        debug_assert_eq!(&dominant, rho, "matrix is not a Weyl group element");
        WeylElement { word, matrix }
    }

    /// The chamber element of a point: `w` with `w⁻¹(x)` dominant, of
    /// minimal length.
    pub fn chamber_of(datum: &RootDatum, x: &Weight) -> Self {
        let (_, word) = datum.to_dominant(x);
        Self::from_word(datum, &word)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// `(-1)^length`, also the determinant of the action.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, x: &Weight) -> Weight {
        apply_int(&self.matrix, x)
    }

    pub fn apply_inverse(&self, datum: &RootDatum, x: &Weight) -> Weight {
        let mut y = x.clone();
        for &i in &self.word {
            y = datum.reflect(i, &y);
        }
        y
    }

    pub fn inverse(&self, datum: &RootDatum) -> Self {
        let rev: Vec<usize> = self.word.iter().rev().copied().collect();
        Self::from_word(datum, &rev)
    }

    /// `self ∘ other`.
    pub fn compose(&self, datum: &RootDatum, other: &Self) -> Self {
        let n = self.matrix.len();
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum())
                    .collect()
            })
            .collect();
        Self::from_matrix(datum, m)
    }

    pub fn determinant(&self) -> i64 {
        let q: Vec<Vec<Q>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        super::linalg::determinant(&q).to_integer()
    }
}

fn apply_int(m: &[Vec<i64>], x: &Weight) -> Weight {
    Weight(
        m.iter()
            .map(|row| row.iter().zip(x.coords()).map(|(&a, b)| b * a).sum())
            .collect(),
    )
}

/// The enumerated finite Weyl group, in breadth-first (length) order.
#[derive(Debug)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    by_rho_image: HashMap<Vec<i64>, usize>,
    longest: usize,
}

impl WeylGroup {
    pub(crate) fn enumerate(datum: &RootDatum, cap: usize) -> Result<Self> {
        let n = datum.rank();
        let id = WeylElement::identity(n);
        let mut elements = vec![id];
        let mut by_rho_image = HashMap::new();
        by_rho_image.insert(datum.rho().to_ints().expect("integral"), 0usize);
        let mut cursor = 0;
        while cursor < elements.len() {
            let w = elements[cursor].clone();
            cursor += 1;
            for i in 0..n {
                // s_i ∘ w
                let matrix: Vec<Vec<i64>> = {
                    let cols: Vec<Weight> = (0..n)
                        .map(|j| {
                            let col = Weight((0..n).map(|r| Q::from_integer(w.matrix[r][j])).collect());
                            datum.reflect(i, &col)
                        })
                        .collect();
                    (0..n)
                        .map(|r| (0..n).map(|j| cols[j][r].to_integer()).collect())
                        .collect()
                };
                let key = apply_int(&matrix, datum.rho()).to_ints().expect("integral");
                if by_rho_image.contains_key(&key) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge {
                        ty: datum.simple_type(),
                        cap,
                    });
                }
                let mut word = Vec::with_capacity(w.word.len() + 1);
                word.push(i);
                word.extend_from_slice(&w.word);
                by_rho_image.insert(key, elements.len());
                elements.push(WeylElement { word, matrix });
            }
        }
        let longest = elements.len() - 1;
        Ok(WeylGroup {
            elements,
            by_rho_image,
            longest,
        })
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    /// Position of an element in `elements()`.
    pub fn index_of(&self, w: &WeylElement) -> usize {
        let key: Vec<i64> = w
            .matrix
            .iter()
            .map(|row| row.iter().sum())
            .collect();
        self.by_rho_image[&key]
    }
}

/// Complete enumeration of the Weyl group of `datum`.
pub fn weyl_group(datum: &RootDatum) -> Result<&WeylGroup> {
    datum.weyl_group()
}
