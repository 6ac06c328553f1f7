use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Element a + b*phi of Z[phi], phi^2 = phi + 1. The coefficient ring for
/// root coordinates of H3 and H4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub a: i64,
    pub b: i64,
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { a: 0, b: 0 };
    pub const ONE: GoldenInt = GoldenInt { a: 1, b: 0 };
    pub const PHI: GoldenInt = GoldenInt { a: 0, b: 1 };

    pub fn from_int(n: i64) -> Self {
        GoldenInt { a: n, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of the real number a + b*phi.
    pub fn is_positive(&self) -> bool {
        // a + b*phi > 0  iff  (2a + b) + b*sqrt(5) > 0.
        let u = 2 * self.a + self.b;
        let v = self.b;
        if u >= 0 && v >= 0 {
            u != 0 || v != 0
        } else if u <= 0 && v <= 0 {
            false
        } else if u > 0 {
            u * u > 5 * v * v
        } else {
            5 * v * v > u * u
        }
    }
}

impl std::ops::Add for GoldenInt {
    type Output = GoldenInt;
    fn add(self, o: GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl std::ops::Sub for GoldenInt {
    type Output = GoldenInt;
    fn sub(self, o: GoldenInt) -> GoldenInt {
        GoldenInt {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl std::ops::Mul for GoldenInt {
    type Output = GoldenInt;
    fn mul(self, o: GoldenInt) -> GoldenInt {
        // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        GoldenInt {
            a: self.a * o.a + self.b * o.b,
            b: self.a * o.b + self.b * o.a + self.b * o.b,
        }
    }
}

impl std::ops::Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}phi"),
            (a, b) => write!(f, "{a}{b:+}phi"),
        }
    }
}

/// Ring of root coordinates: exact arithmetic plus a total-positivity test.
pub trait RootCoeff: Copy + Eq + Hash + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
}

impl RootCoeff for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn neg(self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_positive(&self) -> bool {
        *self > 0
    }
}

impl RootCoeff for GoldenInt {
    fn zero() -> Self {
        GoldenInt::ZERO
    }
    fn one() -> Self {
        GoldenInt::ONE
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn neg(self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        GoldenInt::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        GoldenInt::is_positive(self)
    }
}

/// Signed root index: positive root r is encoded as r<<1, its negative as
/// r<<1|1.
pub type SignedRoot = u32;

pub fn signed(root: usize, negative: bool) -> SignedRoot {
    ((root as u32) << 1) | negative as u32
}

/// Positive roots of a finite root system together with the action of each
/// simple reflection on them, as signed permutations.
#[derive(Debug, Clone)]
pub struct RootTable {
    pub num_positive: usize,
    /// generator_action[s][r] = image of positive root r under s.
    pub generator_action: Vec<Vec<SignedRoot>>,
    /// Printable coordinates of each positive root in the simple-root basis.
    pub coordinates: Vec<Vec<String>>,
}

/// Enumerate the positive roots from a Cartan-style matrix: the reflection
/// s_i updates coordinate i of v to v_i - sum_j cartan[i][j] v_j. Errors if
/// the closure exceeds `cap` roots, which signals a non-finite system.
pub fn build_root_table<T: RootCoeff>(cartan: &[Vec<T>], cap: usize) -> Result<RootTable> {
    let rank = cartan.len();
    let mut roots: Vec<Vec<T>> = Vec::new();
    let mut index: HashMap<Vec<T>, usize> = HashMap::new();
    for i in 0..rank {
        let mut v = vec![T::zero(); rank];
        v[i] = T::one();
        index.insert(v.clone(), i);
        roots.push(v);
    }

    let mut frontier: Vec<usize> = (0..rank).collect();
    while let Some(r) = frontier.pop() {
        for s in 0..rank {
            let image = reflect(cartan, &roots[r], s);
            match root_sign(&image) {
                Sign::Positive => {
                    if !index.contains_key(&image) {
                        if roots.len() >= cap {
                            return Err(Error::BudgetExceeded {
                                what: "positive root enumeration".into(),
                                needed: roots.len() + 1,
                                cap,
                            });
                        }
                        index.insert(image.clone(), roots.len());
                        frontier.push(roots.len());
                        roots.push(image);
                    }
                }
                Sign::Negative => {}
                Sign::Mixed => {
                    return Err(Error::InvalidCoxeterMatrix(
                        "reflection produced a mixed-sign vector; not a root system".into(),
                    ))
                }
            }
        }
    }

    // Record each generator as a signed permutation of the positive roots.
    let mut generator_action = Vec::with_capacity(rank);
    for s in 0..rank {
        let mut perm = Vec::with_capacity(roots.len());
        for r in 0..roots.len() {
            let image = reflect(cartan, &roots[r], s);
            match root_sign(&image) {
                Sign::Positive => perm.push(signed(index[&image], false)),
                Sign::Negative => {
                    let negated: Vec<T> = image.iter().map(|x| x.neg()).collect();
                    perm.push(signed(index[&negated], true));
                }
                Sign::Mixed => unreachable!(),
            }
        }
        generator_action.push(perm);
    }

    let coordinates = roots
        .iter()
        .map(|v| v.iter().map(|x| format!("{x}")).collect())
        .collect();

    Ok(RootTable {
        num_positive: roots.len(),
        generator_action,
        coordinates,
    })
}

enum Sign {
    Positive,
    Negative,
    Mixed,
}

fn root_sign<T: RootCoeff>(v: &[T]) -> Sign {
    let mut pos = false;
    let mut neg = false;
    for x in v {
        if x.is_zero() {
            continue;
        }
        if x.is_positive() {
            pos = true;
        } else {
            neg = true;
        }
    }
    match (pos, neg) {
        (true, false) => Sign::Positive,
        (false, true) => Sign::Negative,
        _ => Sign::Mixed,
    }
}

fn reflect<T: RootCoeff>(cartan: &[Vec<T>], v: &[T], s: usize) -> Vec<T> {
    let mut pairing = T::zero();
    for (j, x) in v.iter().enumerate() {
        pairing = pairing.add(cartan[s][j].mul(*x));
    }
    let mut out = v.to_vec();
    out[s] = out[s].sub(pairing);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_sign() {
        assert!(GoldenInt { a: 1, b: 0 }.is_positive());
        assert!(GoldenInt { a: 0, b: 1 }.is_positive());
        assert!(!GoldenInt { a: 0, b: 0 }.is_positive());
        // 2 - phi = (3 - sqrt(5))/2 > 0
        assert!(GoldenInt { a: 2, b: -1 }.is_positive());
        // 1 - phi < 0
        assert!(!GoldenInt { a: 1, b: -1 }.is_positive());
        // phi^2 = phi + 1
        assert_eq!(GoldenInt::PHI * GoldenInt::PHI, GoldenInt { a: 1, b: 1 });
    }

    #[test]
    fn a2_roots() {
        // A2 Cartan matrix.
        let cartan = vec![vec![2i64, -1], vec![-1, 2]];
        let table = build_root_table(&cartan, 100).unwrap();
        assert_eq!(table.num_positive, 3);
        // Each generator sends exactly one positive root negative.
        for s in 0..2 {
            let negs = table.generator_action[s]
                .iter()
                .filter(|&&x| x & 1 == 1)
                .count();
            assert_eq!(negs, 1);
        }
    }

    #[test]
    fn h3_roots() {
        let phi = GoldenInt::PHI;
        let two = GoldenInt::from_int(2);
        let m1 = GoldenInt::from_int(-1);
        let z = GoldenInt::ZERO;
        let cartan = vec![
            vec![two, -phi, z],
            vec![-phi, two, m1],
            vec![z, m1, two],
        ];
        let table = build_root_table(&cartan, 100).unwrap();
        assert_eq!(table.num_positive, 15);
    }

    #[test]
    fn infinite_type_hits_cap() {
        // Affine A1: bond of infinite order approximated by a Cartan matrix
        // with product 4 gives an infinite root string.
        let cartan = vec![vec![2i64, -2], vec![-2, 2]];
        assert!(build_root_table(&cartan, 50).is_err());
    }
}
