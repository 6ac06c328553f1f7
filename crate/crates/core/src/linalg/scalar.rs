use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A coefficient field: the rationals, or a prime field F_p with p < 2^61.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Fp(u64),
}

impl Field {
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Fp(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Mod { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Fp(p) => Scalar::Mod { val: 1 % p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(*p as i64) as u64;
                Scalar::Mod { val: r, p: *p }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Fp(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m);
                let (_, digits) = r.to_u64_digits();
                let val = digits.first().copied().unwrap_or(0);
                Scalar::Mod { val, p: *p }
            }
        }
    }

    /// Reduce a rational into this field. Over F_p the denominator must be
    /// invertible, i.e. coprime to p.
    pub fn from_rational(&self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Rat(q.clone())),
            Field::Fp(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                if den.is_zero() {
                    return None;
                }
                Some(&num * &den.inv())
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact scalar: a rational in lowest terms, or a residue in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod { val, p } => *val == 1 % p,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(q) => {
                assert!(!q.is_zero(), "division by zero");
                Scalar::Rat(q.recip())
            }
            Scalar::Mod { val, p } => {
                assert!(*val != 0, "division by zero mod {p}");
                Scalar::Mod {
                    val: mod_inverse(*val, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Render the scalar the way reports expect: "num/den" for rationals
    /// (plain integer when the denominator is 1), decimal residue mod p.
    pub fn display_string(&self) -> String {
        match self {
            Scalar::Rat(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { val, .. } => val.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_string())
    }
}

fn same_p(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "mixed moduli {a} and {b}");
    a
}

fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                let p = same_p(*p, *q);
                Scalar::Mod {
                    val: mod_add(*a, *b, p),
                    p,
                }
            }
            _ => panic!("mixed fields in scalar addition"),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                let p = same_p(*p, *q);
                Scalar::Mod {
                    val: mod_mul(*a, *b, p),
                    p,
                }
            }
            _ => panic!("mixed fields in scalar multiplication"),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { val, p } => Scalar::Mod {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Signed remainder helper used when reducing big integers into small fields.
pub fn bigint_sign_abs(n: &BigInt) -> (bool, BigInt) {
    (n.is_negative(), n.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_stays_reduced() {
        let f = Field::Rational;
        let a = f.from_i64(2);
        let b = f.from_i64(4);
        let q = &a * &b.inv();
        assert_eq!(q.display_string(), "1/2");
    }

    #[test]
    fn fp_arithmetic() {
        let f = Field::Fp(7);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Mod { val: 4, p: 7 });
        let b = f.from_i64(5);
        assert_eq!((&a * &b).display_string(), "6");
        assert!((&a * &a.inv()).is_one());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(23));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(6700417 * 3));
    }
}
