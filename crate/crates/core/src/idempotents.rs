//! Primitive orthogonal idempotents. The generic machinery lifts an element
//! that is idempotent modulo the radical to a true idempotent by iterating
//! a -> 3a^2 - 2a^3, and orthogonalizes a family of pre-idempotents through
//! the telescoping f' recursion. The descent-algebra instance derives its
//! pre-idempotents from the inverse of the mark matrix.

use crate::descent::{DescentAlgebra, DescentElement};
use crate::error::{Error, Result};
use crate::linalg::{vec_add, vec_scale, vec_sub, zero_vec, Field, Scalar};

/// Hard cap on lifting iterations; convergence doubles the radical depth
/// each step, so anything beyond this signals a precondition violation.
pub const LIFT_ITERATION_CAP: usize = 64;

/// Iterate a -> 3a^2 - 2a^3 until exactly idempotent. The input must be
/// idempotent modulo a nilpotent ideal.
pub fn lift_idempotent_with<F>(mul: &F, field: Field, a: Vec<Scalar>) -> Result<Vec<Scalar>>
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
{
    let three = field.from_i64(3);
    let minus_two = field.from_i64(-2);
    let mut cur = a;
    for _ in 0..LIFT_ITERATION_CAP {
        let sq = mul(&cur, &cur);
        if sq == cur {
            return Ok(cur);
        }
        let cube = mul(&sq, &cur);
        cur = vec_add(&vec_scale(&sq, &three), &vec_scale(&cube, &minus_two));
    }
    Err(Error::NoConvergence(LIFT_ITERATION_CAP))
}

/// Orthogonalize pre-idempotents g_1,...,g_m whose images in the semisimple
/// quotient are the orthogonal characters summing to one: f'_1 = 1,
/// f'_{i+1} = lift(f'_i g_{>= i+1} f'_i), e_i = f'_i - f'_{i+1}. Returns
/// (f' sequence including the final zero, idempotents).
pub fn orthogonal_idempotents_with<F>(
    mul: &F,
    field: Field,
    one: &[Scalar],
    pre: &[Vec<Scalar>],
) -> Result<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)>
where
    F: Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
{
    let m = pre.len();
    let dim = one.len();
    let mut fprime: Vec<Vec<Scalar>> = vec![one.to_vec()];
    for i in 1..m {
        let mut suffix = zero_vec(field, dim);
        for g in &pre[i..] {
            suffix = vec_add(&suffix, g);
        }
        let prev = &fprime[i - 1];
        let sandwich = mul(&mul(prev, &suffix), prev);
        fprime.push(lift_idempotent_with(mul, field, sandwich)?);
    }
    fprime.push(zero_vec(field, dim));
    let idempotents = (0..m)
        .map(|i| vec_sub(&fprime[i], &fprime[i + 1]))
        .collect();
    Ok((fprime, idempotents))
}

/// The complete idempotent data of a descent algebra over one field.
pub struct IdempotentSystem {
    pub field: Field,
    /// Indices into the class order, ascending: the q-Coxeter classes.
    pub q_class_indices: Vec<usize>,
    /// Pre-idempotents f_J from the inverse mark matrix, in q-class order.
    pub f: Vec<DescentElement>,
    /// The f' sequence, ending with zero.
    pub fprime: Vec<DescentElement>,
    /// Primitive orthogonal idempotents e_J, in q-class order.
    pub e: Vec<DescentElement>,
}

/// f_J = sum_K b_JK x_K where (b_JK) inverts the q-class mark matrix.
pub fn f_elements(d: &DescentAlgebra, field: Field) -> Result<Vec<DescentElement>> {
    let qcls = d.q_classes(field.characteristic());
    let m = d.mark_matrix(field, &qcls);
    let inv = m.inverse().ok_or(Error::SingularMarkMatrix)?;
    let rank = d.rank();
    let mut out = Vec::with_capacity(qcls.len());
    for row in 0..qcls.len() {
        let mut f = DescentElement::zero(field, rank);
        for (col, &kcls) in qcls.iter().enumerate() {
            let rep = d.classes.reps[kcls];
            f.coeffs[rep as usize] = inv.get(row, col).clone();
        }
        out.push(f);
    }
    Ok(out)
}

pub fn lift_idempotent(d: &DescentAlgebra, a: &DescentElement) -> Result<DescentElement> {
    let field = a.field;
    let mul = |x: &[Scalar], y: &[Scalar]| {
        let xe = DescentElement {
            field,
            coeffs: x.to_vec(),
        };
        let ye = DescentElement {
            field,
            coeffs: y.to_vec(),
        };
        d.multiply(&xe, &ye).expect("uniform field").coeffs
    };
    let coeffs = lift_idempotent_with(&mul, field, a.coeffs.clone())?;
    Ok(DescentElement { field, coeffs })
}

pub fn primitive_idempotents(d: &DescentAlgebra, field: Field) -> Result<IdempotentSystem> {
    let q_class_indices = d.q_classes(field.characteristic());
    let f = f_elements(d, field)?;
    let mul = |x: &[Scalar], y: &[Scalar]| {
        let xe = DescentElement {
            field,
            coeffs: x.to_vec(),
        };
        let ye = DescentElement {
            field,
            coeffs: y.to_vec(),
        };
        d.multiply(&xe, &ye).expect("uniform field").coeffs
    };
    let one = d.identity(field);
    let pre: Vec<Vec<Scalar>> = f.iter().map(|x| x.coeffs.clone()).collect();
    let (fprime, es) = orthogonal_idempotents_with(&mul, field, &one.coeffs, &pre)?;
    let wrap = |v: Vec<Scalar>| DescentElement { field, coeffs: v };
    Ok(IdempotentSystem {
        field,
        q_class_indices,
        f,
        fprime: fprime.into_iter().map(wrap).collect(),
        e: es.into_iter().map(wrap).collect(),
    })
}

/// Exact verification of the idempotent-system laws; returns a description
/// of the first violated law.
pub fn verify_idempotent_system(d: &DescentAlgebra, sys: &IdempotentSystem) -> Result<()> {
    let field = sys.field;
    let m = sys.e.len();
    let fail = |msg: String| Err(Error::CrossCheckFailed(msg));

    // Pairwise products and idempotency.
    for i in 0..m {
        for j in 0..m {
            let prod = d.multiply(&sys.e[i], &sys.e[j])?;
            if i == j {
                if prod != sys.e[i] {
                    return fail(format!("e_{i} is not idempotent over {field}"));
                }
            } else if !prod.is_zero() {
                return fail(format!("e_{i} e_{j} is nonzero over {field}"));
            }
        }
    }
    // Completeness.
    let mut total = DescentElement::zero(field, d.rank());
    for e in &sys.e {
        total = total.add(e);
    }
    if total != d.identity(field) {
        return fail(format!("idempotents do not sum to the identity over {field}"));
    }
    // theta(e_J) is the characteristic function of J on the q-classes.
    for (i, e) in sys.e.iter().enumerate() {
        let th = d.theta(e);
        for (j, &cls) in sys.q_class_indices.iter().enumerate() {
            let expected = if i == j { field.one() } else { field.zero() };
            if th[cls] != expected {
                return fail(format!(
                    "theta(e_{i}) differs from the characteristic function at class {cls}"
                ));
            }
        }
    }
    // Leading coefficient and support: e_J = gamma_J^{-1} x_J plus terms on
    // classes strictly below J.
    for (i, e) in sys.e.iter().enumerate() {
        let cls = sys.q_class_indices[i];
        let rep = d.classes.reps[cls];
        let gamma = d.marks.beta[cls][cls];
        let lead = field.from_i64(gamma as i64).inv();
        if e.coeffs[rep as usize] != lead {
            return fail(format!("leading coefficient of e at class {cls} is not 1/{gamma}"));
        }
        for (mask, c) in e.coeffs.iter().enumerate() {
            if c.is_zero() || mask == rep as usize {
                continue;
            }
            let kcls = d.classes.class_index(mask as crate::coxeter::Mask);
            if !d.classes.strictly_below(kcls, cls) {
                return fail(format!(
                    "support of e at class {cls} leaks to class {kcls} over {field}"
                ));
            }
        }
    }
    Ok(())
}

/// Reduce a rational descent element mod p; None when a denominator
/// vanishes mod p.
pub fn reduce_element_mod_p(x: &DescentElement, p: u64) -> Option<DescentElement> {
    let field = Field::Fp(p);
    let coeffs: Option<Vec<Scalar>> = x
        .coeffs
        .iter()
        .map(|c| field.from_rational(c.as_rational()?))
        .collect();
    Some(DescentElement {
        field,
        coeffs: coeffs?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{build_coxeter_system, enumerate_elements, CoxeterType, Mask};

    fn algebra(t: CoxeterType) -> DescentAlgebra {
        let g = enumerate_elements(build_coxeter_system(t).unwrap(), 100_000).unwrap();
        DescentAlgebra::new(g).unwrap()
    }

    #[test]
    fn f_elements_a2() {
        let d = algebra(CoxeterType::A(2));
        let f = f_elements(&d, Field::Rational).unwrap();
        // f for the empty class is x_{}/|W|.
        let mut expected = DescentElement::zero(Field::Rational, 2);
        expected.coeffs[0] = &Field::Rational.one() * &Field::Rational.from_i64(6).inv();
        assert_eq!(f[0], expected);
        // The f_J sum to the identity.
        let total = f.iter().fold(DescentElement::zero(Field::Rational, 2), |a, b| a.add(b));
        assert_eq!(total, d.identity(Field::Rational));
    }

    #[test]
    fn f_support_condition() {
        for t in [CoxeterType::A(3), CoxeterType::B(3)] {
            let d = algebra(t);
            for p in [0u64, 2, 5] {
                let field = if p == 0 { Field::Rational } else { Field::Fp(p) };
                let qcls = d.q_classes(p);
                let f = f_elements(&d, field).unwrap();
                for (i, fi) in f.iter().enumerate() {
                    for (mask, c) in fi.coeffs.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let kcls = d.classes.class_index(mask as Mask);
                        assert!(
                            d.classes.leq_w(kcls, qcls[i]),
                            "b_JK nonzero off the ideal"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lifting_fixed_points() {
        let d = algebra(CoxeterType::A(2));
        let one = d.identity(Field::Rational);
        assert_eq!(lift_idempotent(&d, &one).unwrap(), one);
        let zero = DescentElement::zero(Field::Rational, 2);
        assert_eq!(lift_idempotent(&d, &zero).unwrap(), zero);
        // Lifting a pre-idempotent yields a true idempotent with the same
        // theta image.
        let f = f_elements(&d, Field::Rational).unwrap();
        let lifted = lift_idempotent(&d, &f[1]).unwrap();
        let sq = d.multiply(&lifted, &lifted).unwrap();
        assert_eq!(sq, lifted);
        assert_eq!(d.theta(&lifted), d.theta(&f[1]));
    }

    #[test]
    fn a2_idempotents_by_field() {
        let d = algebra(CoxeterType::A(2));
        let over_q = primitive_idempotents(&d, Field::Rational).unwrap();
        assert_eq!(over_q.e.len(), 3);
        verify_idempotent_system(&d, &over_q).unwrap();
        // e for the empty class is exactly x_{}/6.
        let mut expected = DescentElement::zero(Field::Rational, 2);
        expected.coeffs[0] = Field::Rational.from_i64(6).inv();
        assert_eq!(over_q.e[0], expected);

        let over_f2 = primitive_idempotents(&d, Field::Fp(2)).unwrap();
        assert_eq!(over_f2.e.len(), 2);
        assert_eq!(over_f2.q_class_indices, vec![1, 2]);
        verify_idempotent_system(&d, &over_f2).unwrap();
    }

    #[test]
    fn idempotent_laws_across_groups_and_fields() {
        for t in [CoxeterType::A(3), CoxeterType::B(2), CoxeterType::I2(5)] {
            let d = algebra(t);
            for p in [0u64, 2, 3, 5, 7] {
                let field = if p == 0 { Field::Rational } else { Field::Fp(p) };
                let sys = primitive_idempotents(&d, field).unwrap();
                assert_eq!(sys.e.len(), d.q_classes(p).len());
                verify_idempotent_system(&d, &sys).unwrap();
            }
        }
    }

    #[test]
    fn good_prime_coefficients_reduce() {
        // For p not dividing |W|, the F_p idempotents are the mod-p
        // reductions of the rational ones, coefficient by coefficient.
        let d = algebra(CoxeterType::A(2));
        for p in [5u64, 7, 11] {
            let over_q = primitive_idempotents(&d, Field::Rational).unwrap();
            let over_p = primitive_idempotents(&d, Field::Fp(p)).unwrap();
            assert_eq!(over_q.e.len(), over_p.e.len());
            for (eq, ep) in over_q.e.iter().zip(&over_p.e) {
                assert_eq!(&reduce_element_mod_p(eq, p).unwrap(), ep);
            }
        }
    }
}
