//! Exact rational linear algebra for torus vectors and Weyl-group decisions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-3/2"` or a terminating decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let err = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    s.parse::<BigInt>().map(Q::from_integer).map_err(|_| err())
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serializes a rational vector as strings such as `"3/2"`.
pub fn ser_qvec<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

pub fn ser_opt_qvec<S: serde::Serializer>(
    v: &Option<Vec<Q>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_qvec(v, s),
        None => s.serialize_none(),
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : rows · x = 0}` in `ncols` unknowns.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// The primitive integer vector on the ray through `v` (zero stays zero).
pub fn primitive_integer(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Converts to `i64` when every entry is small enough for the i128 fast path.
pub fn small_ints(v: &[BigInt]) -> Option<Vec<i64>> {
    const LIMIT: i64 = 1 << 50;
    v.iter()
        .map(|x| x.to_i64().filter(|y| y.abs() < LIMIT))
        .collect()
}

/// An exact linear subspace of ℚⁿ with an integral annihilator for fast
/// membership tests.
#[derive(Clone, Debug)]
pub struct ExactSpan {
    ambient: usize,
    basis: Vec<Vec<Q>>,
    annihilator: Vec<Vec<BigInt>>,
    annihilator_small: Option<Vec<Vec<i64>>>,
}

impl ExactSpan {
    pub fn new(ambient: usize, vectors: &[Vec<Q>]) -> Self {
        let (basis, _) = if vectors.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            rref(vectors)
        };
        let annihilator: Vec<Vec<BigInt>> = nullspace(&basis, ambient)
            .iter()
            .map(|v| primitive_integer(v))
            .collect();
        let annihilator_small = annihilator.iter().map(|r| small_ints(r)).collect();
        Self {
            ambient,
            basis,
            annihilator,
            annihilator_small,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduced echelon basis.
    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.contains_big(&primitive_integer(v))
    }

    pub fn contains_big(&self, v: &[BigInt]) -> bool {
        self.annihilator.iter().all(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum::<BigInt>()
                .is_zero()
        })
    }

    /// Exact membership for an integer vector with entries below 2⁵⁰.
    pub fn contains_small(&self, v: &[i64]) -> bool {
        match &self.annihilator_small {
            Some(rows) => rows.iter().all(|row| {
                row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum::<i128>()
                    == 0
            }),
            None => self.contains_big(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()),
        }
    }

    pub fn contains_span(&self, other: &ExactSpan) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/2").unwrap(), qr(3, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert_eq!(parse_q("-0.25").unwrap(), qr(-1, 4));
        assert_eq!(fmt_q(&qr(6, 4)), "3/2");
        assert_eq!(fmt_q(&q(-2)), "-2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn nullspace_of_trace_row() {
        let row = vec![vec![q(1), q(1), q(1)]];
        let ns = nullspace(&row, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.iter().cloned().sum::<Q>().is_zero());
        }
    }

    #[test]
    fn span_membership() {
        let span = ExactSpan::new(
            5,
            &[
                vec![q(2), q(-2), q(0), q(0), q(0)],
                vec![q(4), q(2), q(0), q(-2), q(-4)],
            ],
        );
        assert_eq!(span.dim(), 2);
        assert!(span.contains(&[q(1), q(-1), q(0), q(0), q(0)]));
        assert!(!span.contains(&[q(3), q(1), q(0), q(-1), q(-3)]));
        assert!(span.contains_small(&[6, 0, 0, -2, -4]));
        assert!(span.contains(&vec![q(0); 5]));
    }

    #[test]
    fn primitive_vector() {
        let v = primitive_integer(&[qr(1, 2), qr(-3, 4), q(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
