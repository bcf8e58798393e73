//! Reference arithmetic written independently of the library: every element
//! is a pair `(a, b)` meaning `a + b*w` with `w^2 = t`, over `Q` or reduced
//! mod `p`. Library values are lifted into it and recomputed from scratch.

use isoform::{FieldElement, FieldKind, FieldSpec, Matrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Elt = (BigRational, BigRational);

#[derive(Clone, Debug)]
pub struct Arith {
    modulus: Option<BigInt>,
    /// `w^2`; `None` when the field has no second coordinate.
    omega_sq: Option<BigInt>,
}

/// Smallest quadratic non-residue mod `p`, found with Euler's criterion.
pub fn non_residue(p: u64) -> u64 {
    (2..p)
        .find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1)
        .unwrap()
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Arith {
    pub fn of(field: FieldSpec) -> Self {
        match field.kind() {
            FieldKind::Prime { p } => Arith {
                modulus: Some(p.into()),
                omega_sq: None,
            },
            FieldKind::PrimeSquare { p, s } => {
                assert_eq!(
                    s,
                    non_residue(p),
                    "extension must use the smallest non-residue"
                );
                Arith {
                    modulus: Some(p.into()),
                    omega_sq: Some(s.into()),
                }
            }
            FieldKind::Rationals => Arith {
                modulus: None,
                omega_sq: None,
            },
            FieldKind::QuadraticNumber { d } => Arith {
                modulus: None,
                omega_sq: Some(d.into()),
            },
        }
    }

    fn reduce_q(&self, x: BigRational) -> BigRational {
        match &self.modulus {
            None => x,
            Some(p) => {
                assert!(x.denom().is_one(), "finite-field value with a denominator");
                BigRational::from_integer(x.numer().mod_floor(p))
            }
        }
    }

    fn reduce(&self, (a, b): Elt) -> Elt {
        (self.reduce_q(a), self.reduce_q(b))
    }

    pub fn zero(&self) -> Elt {
        (BigRational::zero(), BigRational::zero())
    }

    pub fn lift(&self, e: &FieldElement) -> Elt {
        if let Some((a, b)) = e.residues() {
            let a = BigRational::from_integer(a.into());
            let b = BigRational::from_integer(b.into());
            self.reduce((a, b))
        } else {
            e.rationals().unwrap()
        }
    }

    pub fn add(&self, x: &Elt, y: &Elt) -> Elt {
        self.reduce((&x.0 + &y.0, &x.1 + &y.1))
    }

    pub fn sub(&self, x: &Elt, y: &Elt) -> Elt {
        self.reduce((&x.0 - &y.0, &x.1 - &y.1))
    }

    pub fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        let t = BigRational::from_integer(self.omega_sq.clone().unwrap_or_default());
        self.reduce((&x.0 * &y.0 + t * &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0))
    }

    pub fn conj(&self, x: &Elt) -> Elt {
        self.reduce((x.0.clone(), -x.1.clone()))
    }

    pub fn is_zero(&self, x: &Elt) -> bool {
        x.0.is_zero() && x.1.is_zero()
    }

    pub fn is_fixed(&self, x: &Elt) -> bool {
        x.1.is_zero()
    }

    pub fn inv(&self, x: &Elt) -> Elt {
        assert!(!self.is_zero(x));
        let n = self.mul(x, &self.conj(x)).0;
        let n_inv = match &self.modulus {
            None => n.recip(),
            Some(p) => {
                let p64: u64 = p.try_into().unwrap();
                let n64: u64 = n.numer().try_into().unwrap();
                BigRational::from_integer(pow_mod(n64, p64 - 2, p64).into())
            }
        };
        self.mul(&self.conj(x), &(n_inv, BigRational::zero()))
    }

    pub fn matrix(&self, m: &Matrix) -> Vec<Vec<Elt>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|e| self.lift(e)).collect())
            .collect()
    }

    pub fn vector(&self, v: &[FieldElement]) -> Vec<Elt> {
        v.iter().map(|e| self.lift(e)).collect()
    }

    pub fn mat_mul(&self, a: &[Vec<Elt>], b: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
        let inner = b.len();
        let cols = if inner == 0 { 0 } else { b[0].len() };
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        (0..inner).fold(self.zero(), |acc, k| {
                            self.add(&acc, &self.mul(&row[k], &b[k][j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self, a: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
        if a.is_empty() {
            return Vec::new();
        }
        (0..a[0].len())
            .map(|j| a.iter().map(|r| r[j].clone()).collect())
            .collect()
    }

    pub fn mat_conj(&self, a: &[Vec<Elt>]) -> Vec<Vec<Elt>> {
        a.iter()
            .map(|r| r.iter().map(|x| self.conj(x)).collect())
            .collect()
    }

    /// `(v, w) = sum_ij v_i conj(w_j) H_ij`.
    pub fn pair(&self, h: &[Vec<Elt>], v: &[Elt], w: &[Elt]) -> Elt {
        let mut acc = self.zero();
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                acc = self.add(&acc, &self.mul(&self.mul(vi, &self.conj(wj)), &h[i][j]));
            }
        }
        acc
    }

    pub fn rank(&self, a: &[Vec<Elt>]) -> usize {
        let mut m: Vec<Vec<Elt>> = a.to_vec();
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| !self.is_zero(&m[i][c])) else {
                continue;
            };
            m.swap(r, piv);
            let inv = self.inv(&m[r][c]);
            for i in 0..rows {
                if i != r && !self.is_zero(&m[i][c]) {
                    let f = self.mul(&m[i][c], &inv);
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x = self.sub(x, &self.mul(&f, y));
                    }
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_diagonal(&self, a: &[Vec<Elt>]) -> bool {
        a.iter()
            .enumerate()
            .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || self.is_zero(x)))
    }
}

/// Integer arithmetic in `F_{p^2} = F_p[w]/(w^2 - s)` for exhaustive loops.
#[derive(Clone, Copy, Debug)]
pub struct SmallExt {
    pub p: u64,
    pub s: u64,
}

impl SmallExt {
    pub fn new(p: u64) -> Self {
        SmallExt {
            p,
            s: non_residue(p),
        }
    }

    /// `(a + bw)(a - bw) = a^2 - s b^2`.
    pub fn norm(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        (a * a % p + p - self.s * (b * b % p) % p) % p
    }
}

pub fn is_square_rational(x: &BigRational) -> bool {
    if x.is_negative() {
        return false;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    root(x.numer()) && root(x.denom())
}
