use fixedbitset::FixedBitSet;

use super::{SymmetricDesign, TransversalDesign};
use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::hadamard::HadamardMatrix;

fn field_of_order(q: usize) -> Result<FiniteField> {
    prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
    FiniteField::of_order(q as u64)
}

/// PG(2, q): points are 1-spaces of GF(q)^3, lines are 2-spaces.
///
/// Both are indexed by normalized vectors (first nonzero coordinate 1) in the
/// order `(0,0,1)`, `(0,1,b)`, `(1,a,b)`; line `[l]` contains point `(p)` iff
/// `l · p = 0`.
pub fn projective_plane(q: usize) -> Result<SymmetricDesign> {
    let f = field_of_order(q)?;
    let q32 = q as u32;
    let mut vecs: Vec<[u32; 3]> = vec![[0, 0, 1]];
    vecs.extend((0..q32).map(|b| [0, 1, b]));
    for a in 0..q32 {
        vecs.extend((0..q32).map(|b| [1, a, b]));
    }
    let v = vecs.len();
    let dot = |l: &[u32; 3], p: &[u32; 3]| {
        (0..3).fold(0, |acc, i| f.add(acc, f.mul(l[i], p[i])))
    };
    let blocks = vecs
        .iter()
        .map(|l| {
            let mut set = FixedBitSet::with_capacity(v);
            for (x, p) in vecs.iter().enumerate() {
                if dot(l, p) == 0 {
                    set.insert(x);
                }
            }
            set
        })
        .collect();
    Ok(SymmetricDesign::from_bitsets(v, q + 1, 1, blocks))
}

/// Hadamard 2-design from a Hadamard matrix of order `4t >= 8`:
/// parameters `(4t - 1, 2t - 1, t - 1)`.
///
/// After normalization the first row and column are dropped; block `i` is
/// the set of columns where row `i` carries `+1`.
pub fn hadamard_design(h: &HadamardMatrix) -> Result<SymmetricDesign> {
    let n = h.order();
    if n < 8 || !n.is_multiple_of(4) {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "Hadamard designs need order 4t >= 8".into(),
        });
    }
    let h = h.normalized();
    let v = n - 1;
    let t = n / 4;
    let blocks = (1..n)
        .map(|i| {
            let mut set = FixedBitSet::with_capacity(v);
            for j in 1..n {
                if h.get(i, j) == 1 {
                    set.insert(j - 1);
                }
            }
            set
        })
        .collect();
    Ok(SymmetricDesign::from_bitsets(v, 2 * t - 1, t - 1, blocks))
}

/// STD_1[q; q]: AG(2, q) without its vertical parallel class.
///
/// Point `(x, y)` has index `x·q + y`; block `(m, c)`, the line
/// `y = m·x + c`, has index `m·q + c`. Point classes are the vertical lines.
pub fn biaffine_plane(q: usize) -> Result<TransversalDesign> {
    let f = field_of_order(q)?;
    let v = q * q;
    let mut blocks = Vec::with_capacity(v);
    for m in 0..q as u32 {
        for c in 0..q as u32 {
            let mut set = FixedBitSet::with_capacity(v);
            for x in 0..q as u32 {
                let y = f.add(f.mul(m, x), c);
                set.insert(x as usize * q + y as usize);
            }
            blocks.push(set);
        }
    }
    let classes = (0..q).map(|x| (x * q..(x + 1) * q).collect()).collect();
    Ok(TransversalDesign::from_parts(q, q, 1, classes, blocks))
}

/// STD_λ[2λ; 2] from a Hadamard matrix of order `2λ`.
///
/// Point `(i, ε)` has index `2i + ε`, block `(j, δ)` index `2j + δ`; the
/// block contains the point iff `H[i][j]·(-1)^(ε+δ) = +1`. Point classes are
/// `{(i, 0), (i, 1)}`.
pub fn hadamard_std(h: &HadamardMatrix) -> Result<TransversalDesign> {
    let n = h.order();
    if n < 2 || (n != 2 && !n.is_multiple_of(4)) {
        return Err(Error::InvalidOrder {
            order: n,
            reason: "need order 2λ with λ = 1 or λ even".into(),
        });
    }
    let lambda = n / 2;
    let v = 2 * n;
    let mut blocks = Vec::with_capacity(v);
    for j in 0..n {
        for delta in 0..2 {
            let mut set = FixedBitSet::with_capacity(v);
            for i in 0..n {
                for eps in 0..2 {
                    let sign = if (eps + delta) % 2 == 0 { 1 } else { -1 };
                    if h.get(i, j) * sign == 1 {
                        set.insert(2 * i + eps);
                    }
                }
            }
            blocks.push(set);
        }
    }
    let classes = (0..n).map(|i| vec![2 * i, 2 * i + 1]).collect();
    Ok(TransversalDesign::from_parts(2, n, lambda, classes, blocks))
}

/// The order-1 design `(v, v-1, v-2)`: block `i` is every point but `i`.
/// Its incidence graph is `K_{v,v}` minus a perfect matching.
pub fn trivial_design(v: usize) -> Result<SymmetricDesign> {
    if v < 3 {
        return Err(Error::Precondition(format!("need v >= 3, got {v}")));
    }
    let blocks = (0..v)
        .map(|i| {
            let mut set = FixedBitSet::with_capacity(v);
            set.insert_range(..);
            set.set(i, false);
            set
        })
        .collect();
    Ok(SymmetricDesign::from_bitsets(v, v - 1, v - 2, blocks))
}
