//! Exact linear algebra over ℚ(i).
//!
//! The workhorse is [`solve_linear`]: a fraction-free (Bareiss-style)
//! forward elimination over rows scaled to Gaussian-integer entries,
//! followed by exact back-substitution. The outcome distinguishes an
//! inconsistent system from a solved one, and a solved system always
//! carries one particular solution plus a basis of the kernel, so
//! callers can detect non-uniqueness.
//!
//! On top of the solver sit the span utilities ([`rank`], [`in_span`],
//! [`span_eq`]) used throughout the structural checks, together with
//! coordinate helpers for sparse [`FinVec`] vectors.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Zero};

use crate::finvec::FinVec;
use crate::scalar::Scalar;

/// Result of solving `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// No solution exists.
    Inconsistent,
    /// At least one solution exists.
    Solution {
        /// One solution (free variables set to zero).
        particular: Vec<Scalar>,
        /// Basis of the solution space of `A·x = 0`; empty iff the
        /// solution is unique.
        kernel: Vec<Vec<Scalar>>,
    },
}

/// Scales a row by the lcm of all coefficient denominators so that
/// every entry becomes a Gaussian integer. This keeps the subsequent
/// Bareiss elimination fraction-free without changing the row space.
fn integerize_row(row: &mut [Scalar]) {
    let mut lcm = BigInt::one();
    for entry in row.iter() {
        lcm = lcm.lcm(entry.re.denom());
        lcm = lcm.lcm(entry.im.denom());
    }
    if lcm.is_one() {
        return;
    }
    let factor = Scalar { re: BigRational::from_integer(lcm), im: BigRational::zero() };
    for entry in row.iter_mut() {
        *entry *= &factor;
    }
}

/// In-place forward elimination on augmented rows; returns the pivot
/// column of each eliminated row (echelon order).
fn forward_eliminate(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    for row in rows.iter_mut() {
        integerize_row(row);
    }
    let mut pivots = Vec::new();
    let mut prev_pivot = Scalar::one();
    let mut next_row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot_row);
        let pivot = rows[next_row][col].clone();
        for r in next_row + 1..rows.len() {
            if rows[r][col].is_zero() && pivot.is_one() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..rows[r].len() {
                // Bareiss step: exact division by the previous pivot.
                let num = &(&pivot * &rows[r][c]) - &(&factor * &rows[next_row][c]);
                rows[r][c] = &num / &prev_pivot;
            }
            debug_assert!(rows[r][col].is_zero());
        }
        prev_pivot = pivot;
        pivots.push(col);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

/// Solves `A·x = b` exactly; `a` is given by rows.
pub fn solve_linear(a: &[Vec<Scalar>], b: &[Scalar]) -> SolveOutcome {
    assert_eq!(a.len(), b.len(), "matrix/rhs size mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut aug = row.clone();
            aug.push(rhs.clone());
            aug
        })
        .collect();
    let pivots = forward_eliminate(&mut rows, cols);

    // A zero coefficient row with nonzero rhs means no solution.
    for row in rows.iter().skip(pivots.len()) {
        if !row[cols].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }

    // Back-substitute to reduced echelon form (field division is exact).
    for (r, &col) in pivots.iter().enumerate().rev() {
        let inv = rows[r][col].inv();
        for c in 0..=cols {
            rows[r][c] = &rows[r][c] * &inv;
        }
        for above in 0..r {
            if rows[above][col].is_zero() {
                continue;
            }
            let factor = rows[above][col].clone();
            for c in 0..=cols {
                let delta = &factor * &rows[r][c];
                rows[above][c] = &rows[above][c] - &delta;
            }
        }
    }

    let mut particular = vec![Scalar::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = rows[r][cols].clone();
    }

    let pivot_set: Vec<bool> = {
        let mut set = vec![false; cols];
        for &col in &pivots {
            set[col] = true;
        }
        set
    };
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_set[free] {
            continue;
        }
        let mut vec = vec![Scalar::zero(); cols];
        vec[free] = Scalar::one();
        for (r, &col) in pivots.iter().enumerate() {
            vec[col] = -rows[r][free].clone();
        }
        kernel.push(vec);
    }
    SolveOutcome::Solution { particular, kernel }
}

/// Rank of a matrix given by rows.
pub fn rank(a: &[Vec<Scalar>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut rows = a.to_vec();
    forward_eliminate(&mut rows, cols).len()
}

/// Whether `target` lies in the linear span of `gens` (all rows).
pub fn in_span(target: &[Scalar], gens: &[Vec<Scalar>]) -> bool {
    if target.iter().all(Scalar::is_zero) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    // Columns of the system are the generators.
    let rows = target.len();
    let a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| gens.iter().map(|g| g[r].clone()).collect())
        .collect();
    solve_linear(&a, target) != SolveOutcome::Inconsistent
}

/// Whether two row families span the same subspace.
pub fn span_eq(xs: &[Vec<Scalar>], ys: &[Vec<Scalar>]) -> bool {
    let rx = rank(xs);
    let ry = rank(ys);
    if rx != ry {
        return false;
    }
    let mut joint = xs.to_vec();
    joint.extend_from_slice(ys);
    rank(&joint) == rx
}

/// Assigns coordinates to the union of supports of a vector family,
/// in deterministic key order.
pub fn key_index<K: Ord + Clone>(vecs: &[FinVec<K>]) -> BTreeMap<K, usize> {
    let mut keys = BTreeMap::new();
    for v in vecs {
        for (k, _) in v.iter() {
            keys.entry(k.clone()).or_insert(0usize);
        }
    }
    for (slot, (_, idx)) in keys.iter_mut().enumerate() {
        *idx = slot;
    }
    keys
}

/// Dense coordinates of `v` with respect to a key index. Keys outside
/// the index must not occur in `v` (panics otherwise).
pub fn coords<K: Ord + Clone + std::fmt::Debug>(
    v: &FinVec<K>,
    index: &BTreeMap<K, usize>,
) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); index.len()];
    for (k, c) in v.iter() {
        let slot = index
            .get(k)
            .unwrap_or_else(|| panic!("key {k:?} outside coordinate index"));
        out[*slot] = c.clone();
    }
    out
}

/// Rank of a family of sparse vectors.
pub fn fin_rank<K: Ord + Clone + std::fmt::Debug>(vecs: &[FinVec<K>]) -> usize {
    let index = key_index(vecs);
    let rows: Vec<Vec<Scalar>> = vecs.iter().map(|v| coords(v, &index)).collect();
    rank(&rows)
}

/// Whether a sparse vector lies in the span of a sparse family.
pub fn fin_in_span<K: Ord + Clone + std::fmt::Debug>(
    target: &FinVec<K>,
    gens: &[FinVec<K>],
) -> bool {
    let mut all: Vec<FinVec<K>> = gens.to_vec();
    all.push(target.clone());
    let index = key_index(&all);
    let rows: Vec<Vec<Scalar>> = gens.iter().map(|v| coords(v, &index)).collect();
    in_span(&coords(target, &index), &rows)
}

/// Whether two sparse families span the same subspace.
pub fn fin_span_eq<K: Ord + Clone + std::fmt::Debug>(
    xs: &[FinVec<K>],
    ys: &[FinVec<K>],
) -> bool {
    let mut all: Vec<FinVec<K>> = xs.to_vec();
    all.extend_from_slice(ys);
    let index = key_index(&all);
    let rx: Vec<Vec<Scalar>> = xs.iter().map(|v| coords(v, &index)).collect();
    let ry: Vec<Vec<Scalar>> = ys.iter().map(|v| coords(v, &index)).collect();
    span_eq(&rx, &ry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn row(ts: &[&str]) -> Vec<Scalar> {
        ts.iter().map(|t| s(t)).collect()
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1  =>  x = 2, y = 1.
        let a = vec![row(&["1", "1"]), row(&["1", "-1"])];
        let b = row(&["3", "1"]);
        match solve_linear(&a, &b) {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(particular, row(&["2", "1"]));
                assert!(kernel.is_empty());
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn complex_coefficients() {
        // i·x = 1  =>  x = -i.
        let a = vec![row(&["i"])];
        let b = row(&["1"]);
        match solve_linear(&a, &b) {
            SolveOutcome::Solution { particular, .. } => {
                assert_eq!(particular, row(&["-i"]));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn inconsistent_detected() {
        let a = vec![row(&["1", "1"]), row(&["2", "2"])];
        let b = row(&["1", "3"]);
        assert_eq!(solve_linear(&a, &b), SolveOutcome::Inconsistent);
    }

    #[test]
    fn kernel_of_rank_deficient_system() {
        // x + y + z = 1 with a duplicate equation: kernel dim 2.
        let a = vec![row(&["1", "1", "1"]), row(&["2", "2", "2"])];
        let b = row(&["1", "2"]);
        match solve_linear(&a, &b) {
            SolveOutcome::Solution { particular, kernel } => {
                assert_eq!(kernel.len(), 2);
                // The particular solution satisfies the system.
                let total: Scalar = particular
                    .iter()
                    .fold(Scalar::zero(), |acc, c| acc + c);
                assert_eq!(total, Scalar::one());
                // Kernel vectors satisfy the homogeneous system.
                for k in &kernel {
                    let total: Scalar =
                        k.iter().fold(Scalar::zero(), |acc, c| acc + c);
                    assert!(total.is_zero());
                }
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn rank_and_span_utilities() {
        let xs = vec![row(&["1", "0", "1"]), row(&["0", "1", "1"])];
        let ys = vec![row(&["1", "1", "2"]), row(&["1", "-1", "0"])];
        assert_eq!(rank(&xs), 2);
        assert!(span_eq(&xs, &ys));
        assert!(in_span(&row(&["2", "3", "5"]), &xs));
        assert!(!in_span(&row(&["1", "0", "0"]), &xs));
        assert!(!span_eq(&xs, &[row(&["1", "0", "1"])]));
    }

    #[test]
    fn sparse_span_utilities() {
        use crate::finvec::Elem;
        let e = |l: &str| Elem::basis(l.to_string());
        let xs = vec![e("a").add(&e("b")), e("b").add(&e("c"))];
        assert!(fin_in_span(&e("a").sub(&e("c")), &xs));
        assert!(!fin_in_span(&e("a"), &xs));
        assert_eq!(fin_rank(&xs), 2);
        let ys = vec![
            e("a").add(&e("b")).scale(&s("2")),
            e("a").sub(&e("c")),
        ];
        assert!(fin_span_eq(&xs, &ys));
    }
}
