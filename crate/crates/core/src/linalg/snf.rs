use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::Result;

/// Elementary divisors d_1 | d_2 | ... | d_r of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

/// Smith normal form by integer-only pivoting: repeated gcd reduction of a
/// pivot against its row and column, then divisibility fix-ups. No rationals
/// appear at any point.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let n = rows.min(cols);
    let mut diag = Vec::new();

    for t in 0..n {
        // Choose the nonzero entry of smallest magnitude in the trailing
        // block as the pivot; small pivots keep intermediate entries small.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a.get(i, j).is_zero() {
                    continue;
                }
                match &pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if a.get(i, j).abs() < a.get(*pi, *pj).abs() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);

        loop {
            // Clear the pivot column with Euclidean row steps.
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(i, t), a.get(t, t));
                if !q.is_zero() {
                    for j in t..cols {
                        let v = a.get(i, j) - &q * a.get(t, j);
                        a.set(i, j, v);
                    }
                }
                if !a.get(i, t).is_zero() {
                    swap_rows(&mut a, t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Clear the pivot row with Euclidean column steps.
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = div_nearest(a.get(t, j), a.get(t, t));
                if !q.is_zero() {
                    for i in t..rows {
                        let v = a.get(i, j) - &q * a.get(i, t);
                        a.set(i, j, v);
                    }
                }
                if !a.get(t, j).is_zero() {
                    swap_cols(&mut a, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot must divide every remaining entry; if not, fold the
            // offending row into the pivot row and reduce again.
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a.get(i, j).mod_floor(&a.get(t, t).abs()).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a.get(t, j) + a.get(i, j);
                        a.set(t, j, v);
                    }
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }

    SmithForm { diag }
}

fn swap_rows(a: &mut IntegerMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        let x = a.get(r1, j).clone();
        let y = a.get(r2, j).clone();
        a.set(r1, j, y);
        a.set(r2, j, x);
    }
}

fn swap_cols(a: &mut IntegerMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows {
        let x = a.get(i, c1).clone();
        let y = a.get(i, c2).clone();
        a.set(i, c1, y);
        a.set(i, c2, x);
    }
}

/// Quotient rounded to nearest, so remainders satisfy |r| <= |d|/2.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if &(r.abs() * 2u8) > &d.abs() {
        if d.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// gcd of all s x s minors, computed as the product d_1 ... d_s of elementary
/// divisors. Zero when s exceeds the rank.
pub fn gcd_minors(m: &IntegerMatrix, s: usize) -> Result<BigInt> {
    m.check_minor_size(s)?;
    let snf = smith_normal_form(m);
    if s > snf.rank() {
        return Ok(BigInt::zero());
    }
    let mut acc = BigInt::from(1);
    for d in snf.diag.iter().take(s) {
        acc *= d;
    }
    Ok(acc)
}

/// Independent oracle: enumerate every s x s submatrix and gcd the
/// determinants directly. Exponential; only for cross-checks on small input.
pub fn gcd_minors_bruteforce(m: &IntegerMatrix, s: usize) -> Result<BigInt> {
    m.check_minor_size(s)?;
    let row_sets = combinations(m.rows, s);
    let col_sets = combinations(m.cols, s);
    let mut acc = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let mut sub = IntegerMatrix::zero(s, s);
            for (i, &ri) in rs.iter().enumerate() {
                for (j, &cj) in cs.iter().enumerate() {
                    sub.set(i, j, m.get(ri, cj).clone());
                }
            }
            acc = acc.gcd(&sub.determinant());
            if acc == BigInt::from(1) {
                return Ok(acc);
            }
        }
    }
    Ok(acc)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<i64> {
        let m = IntegerMatrix::from_i64_rows(rows);
        smith_normal_form(&m)
            .diag
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(diag_of(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(
            diag_of(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn gcd_minor_examples() {
        let m = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(gcd_minors(&m, 1).unwrap(), BigInt::from(1));
        assert_eq!(gcd_minors(&m, 2).unwrap(), BigInt::from(6));
        let row = IntegerMatrix::from_i64_rows(&[vec![1, -1, 0]]);
        assert_eq!(gcd_minors(&row, 1).unwrap(), BigInt::from(1));
        assert!(gcd_minors(&row, 2).is_err());
    }

    #[test]
    fn zero_when_past_rank() {
        let m = IntegerMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(gcd_minors(&m, 2).unwrap(), BigInt::zero());
    }

    proptest! {
        #[test]
        fn snf_matches_bruteforce_minor_gcds(
            rows in 1usize..=5,
            cols in 1usize..=5,
            seed in proptest::collection::vec(-9i64..=9, 25),
        ) {
            let mut data = Vec::new();
            for i in 0..rows {
                data.push(seed[i * 5..i * 5 + cols].to_vec());
            }
            let m = IntegerMatrix::from_i64_rows(&data);
            let snf = smith_normal_form(&m);
            // Divisibility chain.
            for w in snf.diag.windows(2) {
                prop_assert!(w[1].mod_floor(&w[0]).is_zero());
            }
            for s in 1..=rows.min(cols) {
                let fast = gcd_minors(&m, s).unwrap();
                let slow = gcd_minors_bruteforce(&m, s).unwrap();
                prop_assert_eq!(fast, slow);
            }
        }

        #[test]
        fn modular_rank_never_exceeds_rational_rank(
            seed in proptest::collection::vec(-20i64..=20, 16),
        ) {
            let rows: Vec<Vec<i64>> = (0..4).map(|i| seed[i * 4..(i + 1) * 4].to_vec()).collect();
            let m = IntegerMatrix::from_i64_rows(&rows);
            let rq = m.rank_nullspace(crate::linalg::Field::Rational).0;
            for p in [2u64, 3, 5] {
                let rp = m.rank_nullspace(crate::linalg::Field::Fp(p)).0;
                prop_assert!(rp <= rq);
            }
        }
    }
}
