//! Hadamard matrices from Sylvester doubling and the Paley-I construction.

use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};

/// Square `±1` matrix with pairwise orthogonal rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl HadamardMatrix {
    /// Wraps a row-major `±1` matrix after checking `H·Hᵀ = nI`.
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidOrder {
                order,
                reason: "matrix is not square".into(),
            });
        }
        let entries: Vec<i8> = rows.into_iter().flatten().collect();
        if entries.iter().any(|&x| x != 1 && x != -1) {
            return Err(Error::InvalidOrder {
                order,
                reason: "entries must be +1 or -1".into(),
            });
        }
        let h = HadamardMatrix { order, entries };
        if let Some((i, j)) = h.non_orthogonal_pair() {
            return Err(Error::InvalidOrder {
                order,
                reason: format!("rows {i} and {j} are not orthogonal"),
            });
        }
        Ok(h)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.order)
    }

    /// First pair of rows whose inner product is nonzero.
    pub fn non_orthogonal_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        for i in 0..n {
            for j in i + 1..n {
                let dot: i64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(&a, &b)| (a * b) as i64)
                    .sum();
                if dot != 0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Gram matrix `H·Hᵀ`, row-major.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.order;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(&a, &b)| (a * b) as i64)
                    .sum();
            }
        }
        out
    }

    /// Negates rows, then columns, so that the first column and first row
    /// are all `+1`.
    pub fn normalized(&self) -> Self {
        let n = self.order;
        let mut e = self.entries.clone();
        for i in 0..n {
            if e[i * n] == -1 {
                for j in 0..n {
                    e[i * n + j] = -e[i * n + j];
                }
            }
        }
        for j in 0..n {
            if e[j] == -1 {
                for i in 0..n {
                    e[i * n + j] = -e[i * n + j];
                }
            }
        }
        HadamardMatrix {
            order: n,
            entries: e,
        }
    }

    /// Sylvester doubling `[[H, H], [H, -H]]`.
    pub fn doubled(&self) -> Self {
        let n = self.order;
        let m = 2 * n;
        let mut e = vec![0i8; m * m];
        for i in 0..n {
            for j in 0..n {
                let x = self.get(i, j);
                e[i * m + j] = x;
                e[i * m + j + n] = x;
                e[(i + n) * m + j] = x;
                e[(i + n) * m + j + n] = -x;
            }
        }
        HadamardMatrix {
            order: m,
            entries: e,
        }
    }
}

/// Paley-I matrix of order `q + 1` for a prime power `q ≡ 3 (mod 4)`.
pub fn paley_one(q: u64) -> Result<HadamardMatrix> {
    let field = FiniteField::of_order(q)?;
    if q % 4 != 3 {
        return Err(Error::InvalidOrder {
            order: (q + 1) as usize,
            reason: format!("Paley-I needs q = 3 mod 4, got q = {q}"),
        });
    }
    let q = q as usize;
    let n = q + 1;
    let chi = |a: u32| -> i8 {
        if a == 0 {
            0
        } else if field.is_square(a) {
            1
        } else {
            -1
        }
    };
    // H = I + S with S = [[0, 1ᵀ], [-1, Q]], Q the Jacobsthal matrix.
    let mut e = vec![0i8; n * n];
    for j in 1..n {
        e[j] = 1;
        e[j * n] = -1;
    }
    for a in 0..q {
        for b in 0..q {
            e[(a + 1) * n + b + 1] = chi(field.sub(a as u32, b as u32));
        }
    }
    for i in 0..n {
        e[i * n + i] += 1;
    }
    let h = HadamardMatrix {
        order: n,
        entries: e,
    };
    debug_assert!(h.non_orthogonal_pair().is_none());
    Ok(h)
}

/// A Hadamard matrix of order `n`, deterministic for each `n`.
///
/// Powers of two use Sylvester doubling from order 1. Other orders try
/// Paley-I with `q = n - 1`, then doubling a matrix of order `n / 2`.
pub fn hadamard_matrix(n: usize) -> Result<HadamardMatrix> {
    let mut tried = Vec::new();
    match build(n, &mut tried) {
        Some(h) => Ok(h),
        None => Err(Error::HadamardOrder {
            order: n,
            tried: tried.join(", "),
        }),
    }
}

fn build(n: usize, tried: &mut Vec<String>) -> Option<HadamardMatrix> {
    if n == 1 {
        return Some(HadamardMatrix {
            order: 1,
            entries: vec![1],
        });
    }
    if n == 0 || (n != 2 && !n.is_multiple_of(4)) {
        tried.push(format!("order {n} is not 1, 2 or a multiple of 4"));
        return None;
    }
    if n.is_power_of_two() {
        return build(n / 2, tried).map(|h| h.doubled());
    }
    let q = (n - 1) as u64;
    if prime_power(q).is_some() && q % 4 == 3 {
        return paley_one(q).ok();
    }
    tried.push(format!("Paley-I (q = {q} is not a prime power = 3 mod 4)"));
    tried.push(format!("Sylvester doubling from order {}", n / 2));
    build(n / 2, tried).map(|h| h.doubled())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_hadamard(h: &HadamardMatrix) {
        let n = h.order();
        let g = h.gram();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(g[i * n + j], if i == j { n as i64 } else { 0 });
            }
        }
    }

    #[test]
    fn order_two() {
        let h = hadamard_matrix(2).unwrap();
        assert_eq!(h.row(0), &[1, 1]);
        assert_eq!(h.row(1), &[1, -1]);
    }

    #[test]
    fn order_four_is_sylvester() {
        let h = hadamard_matrix(4).unwrap();
        assert_eq!(h, hadamard_matrix(2).unwrap().doubled());
        assert_hadamard(&h);
    }

    #[test]
    fn order_twelve_is_paley() {
        let h = hadamard_matrix(12).unwrap();
        assert_eq!(h, paley_one(11).unwrap());
        assert_hadamard(&h);
    }

    #[test]
    fn constructible_orders() {
        for n in [1, 2, 4, 8, 12, 16, 20, 24, 28, 32, 40, 44, 48, 60, 64] {
            let h = hadamard_matrix(n).unwrap();
            assert_eq!(h.order(), n);
            assert_hadamard(&h);
            assert_hadamard(&h.normalized());
        }
    }

    #[test]
    fn unconstructible_orders() {
        assert!(matches!(hadamard_matrix(6), Err(Error::HadamardOrder { .. })));
        // 92 = 4 * 23: 91 = 7 * 13 and 46 is not a multiple of 4
        let err = hadamard_matrix(92).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Paley-I"), "{msg}");
        assert!(msg.contains("Sylvester"), "{msg}");
    }

    #[test]
    fn normalization_gives_plus_border() {
        let h = hadamard_matrix(20).unwrap().normalized();
        for i in 0..20 {
            assert_eq!(h.get(i, 0), 1);
            assert_eq!(h.get(0, i), 1);
        }
    }

    #[test]
    fn from_rows_rejects_non_orthogonal() {
        assert!(HadamardMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(HadamardMatrix::from_rows(vec![vec![1, 1], vec![1, -1]]).is_ok());
        assert!(HadamardMatrix::from_rows(vec![vec![1, 0], vec![1, -1]]).is_err());
    }
}
