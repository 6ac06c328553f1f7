//! The Solomon descent algebra of a finite Coxeter group: the subset basis
//! {x_J}, structure constants from double cosets, the parabolic table of
//! marks with its fixed-point cross-check, the character map theta, and
//! radical bases over any supported field.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coxeter::{coxeter_classes, CoxeterClasses, CoxeterGroup, Mask};
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, ScalarMat, SpanBasis};

/// Sparse structure constants: for each pair (J, K) of generator subsets,
/// the multiset of masks L = w^{-1}Jw n K over the double coset
/// representatives w, i.e. x_J x_K = sum_L a_JKL x_L.
pub struct StructureConstants {
    pub rank: usize,
    table: Vec<Vec<(Mask, u64)>>,
}

impl StructureConstants {
    pub fn build(group: &CoxeterGroup) -> Self {
        let rank = group.rank;
        let subsets = 1usize << rank;
        let mut table = Vec::with_capacity(subsets * subsets);
        for j in 0..subsets {
            for k in 0..subsets {
                let mut counts = vec![0u64; subsets];
                for (_, mask) in group.double_coset_reps(j as Mask, k as Mask) {
                    counts[mask as usize] += 1;
                }
                let sparse: Vec<(Mask, u64)> = counts
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c > 0)
                    .map(|(l, &c)| (l as Mask, c))
                    .collect();
                table.push(sparse);
            }
        }
        StructureConstants { rank, table }
    }

    pub fn product_terms(&self, j: Mask, k: Mask) -> &[(Mask, u64)] {
        &self.table[(j as usize) << self.rank | k as usize]
    }
}

/// An element of the descent algebra: one exact coefficient per subset of S.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentElement {
    pub field: Field,
    pub coeffs: Vec<Scalar>,
}

impl DescentElement {
    pub fn zero(field: Field, rank: usize) -> Self {
        DescentElement {
            field,
            coeffs: vec![field.zero(); 1 << rank],
        }
    }

    pub fn basis(field: Field, rank: usize, mask: Mask) -> Self {
        let mut e = Self::zero(field, rank);
        e.coeffs[mask as usize] = field.one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        DescentElement {
            field: self.field,
            coeffs: crate::linalg::vec_add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DescentElement {
            field: self.field,
            coeffs: crate::linalg::vec_sub(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DescentElement {
            field: self.field,
            coeffs: crate::linalg::vec_scale(&self.coeffs, c),
        }
    }
}

/// The parabolic table of marks beta_JK over the ordered Coxeter classes.
pub struct MarkTable {
    /// beta[j][k] for class representatives j, k; lower triangular under
    /// the class order.
    pub beta: Vec<Vec<u64>>,
}

/// A descent algebra bound to its group, classes, structure constants, and
/// marks. Immutable once built; all queries are read-only.
pub struct DescentAlgebra {
    pub group: CoxeterGroup,
    pub classes: CoxeterClasses,
    pub constants: StructureConstants,
    pub marks: MarkTable,
}

impl DescentAlgebra {
    /// Builds classes, constants, and marks. The marks are computed both as
    /// a_JKK and by counting fixed points of the Coxeter element of W_K on
    /// W/W_J; disagreement is an internal-consistency failure.
    pub fn new(group: CoxeterGroup) -> Result<Self> {
        let classes = coxeter_classes(&group);
        let constants = StructureConstants::build(&group);
        let marks = Self::build_marks(&group, &classes, &constants)?;
        Ok(DescentAlgebra {
            group,
            classes,
            constants,
            marks,
        })
    }

    fn build_marks(
        group: &CoxeterGroup,
        classes: &CoxeterClasses,
        constants: &StructureConstants,
    ) -> Result<MarkTable> {
        let n = classes.len();
        let mut beta = vec![vec![0u64; n]; n];
        for (ji, &j) in classes.reps.iter().enumerate() {
            for (ki, &k) in classes.reps.iter().enumerate() {
                let via_constants = constants
                    .product_terms(j, k)
                    .iter()
                    .find(|(l, _)| *l == k)
                    .map_or(0, |(_, c)| *c);
                let via_fixed_points = Self::fixed_point_mark(group, j, k);
                if via_constants != via_fixed_points {
                    return Err(Error::CrossCheckFailed(format!(
                        "marks disagree at (J={j:#b}, K={k:#b}): a_JKK = {via_constants}, fixed points = {via_fixed_points}"
                    )));
                }
                beta[ji][ki] = via_constants;
            }
        }
        Ok(MarkTable { beta })
    }

    /// |Fix_{W_K}(W/W_J)| counted directly: cosets of W_J fixed by the
    /// Coxeter element of W_K acting on the left.
    fn fixed_point_mark(group: &CoxeterGroup, j: Mask, k: Mask) -> u64 {
        let ck = group.coxeter_element(k);
        group
            .min_coset_reps(j)
            .into_iter()
            .filter(|&x| group.coset_min_rep(group.mul(ck, x), j) == x)
            .count() as u64
    }

    pub fn rank(&self) -> usize {
        self.group.rank
    }

    pub fn dimension(&self) -> usize {
        1 << self.group.rank
    }

    /// The two-sided identity x_S.
    pub fn identity(&self, field: Field) -> DescentElement {
        let full = ((1u16 << self.group.rank) - 1) as Mask;
        DescentElement::basis(field, self.group.rank, full)
    }

    pub fn multiply(&self, a: &DescentElement, b: &DescentElement) -> Result<DescentElement> {
        if a.field != b.field {
            return Err(Error::FieldMismatch(format!(
                "{} versus {}",
                a.field, b.field
            )));
        }
        let mut out = DescentElement::zero(a.field, self.group.rank);
        for (j, aj) in a.coeffs.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (k, bk) in b.coeffs.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let factor = aj * bk;
                for (l, count) in self.constants.product_terms(j as Mask, k as Mask) {
                    let term = &factor * &a.field.from_i64(*count as i64);
                    out.coeffs[*l as usize] = &out.coeffs[*l as usize] + &term;
                }
            }
        }
        Ok(out)
    }

    /// Product of integer coefficient vectors over the subset basis.
    pub fn multiply_int(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dimension()];
        for (j, aj) in a.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (k, bk) in b.iter().enumerate() {
                if bk.is_zero() {
                    continue;
                }
                let factor = aj * bk;
                for (l, count) in self.constants.product_terms(j as Mask, k as Mask) {
                    out[*l as usize] += &factor * BigInt::from(*count);
                }
            }
        }
        out
    }

    /// Mark of (class of J, class index k): the character of the coset
    /// module for W_J evaluated at the Coxeter element of class k.
    pub fn mark_of(&self, j: Mask, k_class: usize) -> u64 {
        self.marks.beta[self.classes.class_index(j)][k_class]
    }

    /// theta(x) as the tuple of character values at the class Coxeter
    /// elements, over the element's field.
    pub fn theta(&self, x: &DescentElement) -> Vec<Scalar> {
        let field = x.field;
        let n = self.classes.len();
        let mut out = vec![field.zero(); n];
        for (j, cj) in x.coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for k in 0..n {
                let beta = field.from_bigint(&BigInt::from(self.mark_of(j as Mask, k)));
                out[k] = &out[k] + &(cj * &beta);
            }
        }
        out
    }

    /// Indices (into the class order) of the q-Coxeter classes: classes
    /// whose normalizer index is nonzero in the field.
    pub fn q_classes(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| {
                let diag = self.marks.beta[i][i];
                p == 0 || diag % p != 0
            })
            .collect()
    }

    /// The principal submatrix of the mark table on the given classes,
    /// reduced into the field.
    pub fn mark_matrix(&self, field: Field, class_indices: &[usize]) -> ScalarMat {
        let n = class_indices.len();
        let mut m = ScalarMat::zero(field, n, n);
        for (a, &i) in class_indices.iter().enumerate() {
            for (b, &j) in class_indices.iter().enumerate() {
                m.set(
                    a,
                    b,
                    field.from_bigint(&BigInt::from(self.marks.beta[i][j])),
                );
            }
        }
        m
    }

    /// Basis of the radical over the field: the within-class differences
    /// x_J - x_K together with the x_L whose class normalizer index
    /// vanishes mod p, reduced to an independent set with the chain
    /// differences preferred as pivots.
    pub fn radical_basis(&self, field: Field) -> Vec<DescentElement> {
        let p = field.characteristic();
        let rank = self.group.rank;
        let mut span = SpanBasis::new(field, self.dimension());
        let mut basis = Vec::new();

        for members in &self.classes.members {
            for pair in members.windows(2) {
                let elem = DescentElement::basis(field, rank, pair[0])
                    .sub(&DescentElement::basis(field, rank, pair[1]));
                if span.insert(&elem.coeffs) {
                    basis.push(elem);
                }
            }
        }
        if p > 0 {
            for l in 0..self.dimension() {
                let diag = self.marks.beta[self.classes.class_index(l as Mask)]
                    [self.classes.class_index(l as Mask)];
                if diag % p == 0 {
                    let elem = DescentElement::basis(field, rank, l as Mask);
                    if span.insert(&elem.coeffs) {
                        basis.push(elem);
                    }
                }
            }
        }
        basis
    }
}

/// Independent oracle for the structure constants: multiply the coset-sum
/// elements inside the group algebra ZW by direct convolution.
pub fn group_algebra_product(group: &CoxeterGroup, j: Mask, k: Mask) -> Vec<u64> {
    let mut acc = vec![0u64; group.size];
    for &u in &group.min_coset_reps(j) {
        for &v in &group.min_coset_reps(k) {
            acc[group.mul(u, v) as usize] += 1;
        }
    }
    acc
}

/// The group-algebra vector predicted by the structure constants:
/// sum_L a_JKL x_L expanded over W.
pub fn group_algebra_prediction(
    group: &CoxeterGroup,
    constants: &StructureConstants,
    j: Mask,
    k: Mask,
) -> Vec<u64> {
    let mut acc = vec![0u64; group.size];
    for (l, count) in constants.product_terms(j, k) {
        for &w in &group.min_coset_reps(*l) {
            acc[w as usize] += count;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_coxeter_system, enumerate_elements, CoxeterType};

    fn algebra(t: CoxeterType) -> DescentAlgebra {
        let g = enumerate_elements(build_coxeter_system(t).unwrap(), 100_000).unwrap();
        DescentAlgebra::new(g).unwrap()
    }

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn a2_product_examples() {
        let d = algebra(CoxeterType::A(2));
        let x = |m: Mask| DescentElement::basis(q(), 2, m);
        // x_{s0} x_{s1} = x_{} + x_{s1}
        let prod = d.multiply(&x(0b01), &x(0b10)).unwrap();
        let expected = x(0b00).add(&x(0b10));
        assert_eq!(prod, expected);
        // x_S is a two-sided identity.
        for m in 0..4 {
            assert_eq!(d.multiply(&x(0b11), &x(m)).unwrap(), x(m));
            assert_eq!(d.multiply(&x(m), &x(0b11)).unwrap(), x(m));
        }
        // x_{} x_{} = |W| x_{}
        let sq = d.multiply(&x(0), &x(0)).unwrap();
        assert_eq!(sq, x(0).scale(&q().from_i64(6)));
        // (x_{s0} - x_{s1})^2 = 0
        let r = x(0b01).sub(&x(0b10));
        assert!(d.multiply(&r, &r).unwrap().is_zero());
    }

    #[test]
    fn a3_radical_square_example() {
        let d = algebra(CoxeterType::A(3));
        let x = |m: Mask| DescentElement::basis(q(), 3, m);
        let r = x(0b011).sub(&x(0b110));
        let sq = d.multiply(&r, &r).unwrap();
        let expected = x(0b001)
            .sub(&x(0b010).scale(&q().from_i64(2)))
            .add(&x(0b100));
        assert_eq!(sq, expected);
    }

    #[test]
    fn associativity_exhaustive() {
        for t in [
            CoxeterType::A(2),
            CoxeterType::A(3),
            CoxeterType::B(2),
            CoxeterType::I2(5),
        ] {
            let d = algebra(t);
            let dim = d.dimension() as u16;
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        let xa = DescentElement::basis(q(), d.rank(), a as Mask);
                        let xb = DescentElement::basis(q(), d.rank(), b as Mask);
                        let xc = DescentElement::basis(q(), d.rank(), c as Mask);
                        let left = d.multiply(&d.multiply(&xa, &xb).unwrap(), &xc).unwrap();
                        let right = d.multiply(&xa, &d.multiply(&xb, &xc).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn a2_mark_table() {
        let d = algebra(CoxeterType::A(2));
        assert_eq!(d.marks.beta, vec![
            vec![6, 0, 0],
            vec![3, 1, 0],
            vec![1, 1, 1],
        ]);
    }

    #[test]
    fn mark_laws() {
        for t in [CoxeterType::A(3), CoxeterType::B(3), CoxeterType::I2(5)] {
            let d = algebra(t);
            let n = d.classes.len();
            for i in 0..n {
                // beta_{}{} = |W| in the first row.
                for j in 0..n {
                    let b = d.marks.beta[i][j];
                    if b != 0 {
                        assert!(d.classes.leq_w(j, i), "beta nonzero needs K below J");
                        assert_eq!(b % d.marks.beta[i][i], 0, "diagonal divides row");
                    }
                    if j > i {
                        assert_eq!(b, 0, "lower triangular");
                    }
                }
            }
            assert_eq!(d.marks.beta[0][0] as usize, d.group.size);
        }
    }

    #[test]
    fn mackey_pointwise() {
        // theta is multiplicative: theta(x_J) theta(x_K) = theta(x_J x_K)
        // evaluated at every class Coxeter element.
        for t in [CoxeterType::A(2), CoxeterType::A(3), CoxeterType::B(2), CoxeterType::I2(5)] {
            let d = algebra(t);
            let dim = d.dimension() as u16;
            for j in 0..dim {
                for k in 0..dim {
                    let xj = DescentElement::basis(q(), d.rank(), j as Mask);
                    let xk = DescentElement::basis(q(), d.rank(), k as Mask);
                    let lhs: Vec<Scalar> = d
                        .theta(&xj)
                        .iter()
                        .zip(d.theta(&xk))
                        .map(|(a, b)| a * &b)
                        .collect();
                    let rhs = d.theta(&d.multiply(&xj, &xk).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn q_classes_a2() {
        let d = algebra(CoxeterType::A(2));
        assert_eq!(d.q_classes(0), vec![0, 1, 2]);
        assert_eq!(d.q_classes(2), vec![1, 2]);
        assert_eq!(d.q_classes(3), vec![1, 2]);
        assert_eq!(d.q_classes(5), vec![0, 1, 2]);
    }

    #[test]
    fn radical_bases() {
        let d = algebra(CoxeterType::A(2));
        let rad0 = d.radical_basis(Field::Rational);
        assert_eq!(rad0.len(), 1);
        let expected = DescentElement::basis(q(), 2, 0b01).sub(&DescentElement::basis(q(), 2, 0b10));
        assert_eq!(rad0[0], expected);
        let rad2 = d.radical_basis(Field::Fp(2));
        assert_eq!(rad2.len(), 2);

        let i4 = algebra(CoxeterType::I2(4));
        assert!(i4.radical_basis(Field::Rational).is_empty());

        // Dimension law: 2^|S| - |R_q|.
        for t in [CoxeterType::A(3), CoxeterType::B(2), CoxeterType::I2(5)] {
            let d = algebra(t);
            for p in [0u64, 2, 3, 5] {
                let field = if p == 0 { Field::Rational } else { Field::Fp(p) };
                assert_eq!(
                    d.radical_basis(field).len(),
                    d.dimension() - d.q_classes(p).len()
                );
            }
        }
    }

    #[test]
    fn theta_kills_radical() {
        for t in [CoxeterType::A(3), CoxeterType::B(2)] {
            let d = algebra(t);
            for p in [0u64, 2, 3] {
                let field = if p == 0 { Field::Rational } else { Field::Fp(p) };
                let qcls = d.q_classes(p);
                for r in d.radical_basis(field) {
                    let th = d.theta(&r);
                    for &c in &qcls {
                        assert!(th[c].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_agreement_small() {
        let d = algebra(CoxeterType::A(2));
        for j in 0..4u16 {
            for k in 0..4u16 {
                let direct = group_algebra_product(&d.group, j as Mask, k as Mask);
                let predicted =
                    group_algebra_prediction(&d.group, &d.constants, j as Mask, k as Mask);
                assert_eq!(direct, predicted);
            }
        }
    }

    #[test]
    fn structure_constant_row_sums() {
        // sum_L a_JKL = |X_JK| and a_JKL = 0 unless L is inside K.
        let d = algebra(CoxeterType::A(3));
        for j in 0..16u16 {
            for k in 0..16u16 {
                let terms = d.constants.product_terms(j as Mask, k as Mask);
                let total: u64 = terms.iter().map(|(_, c)| *c).sum();
                let reps = d.group.double_coset_reps(j as Mask, k as Mask);
                assert_eq!(total as usize, reps.len());
                for (l, _) in terms {
                    assert_eq!(l & !(k as Mask), 0);
                }
            }
        }
    }
}
