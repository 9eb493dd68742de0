use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::factorize;
use crate::error::{Error, Result};
use crate::Rational;

/// Row-style Hermite normal form over ℤ using unimodular row operations.
///
/// Returns the nonzero rows in echelon form: positive pivots, strictly
/// increasing pivot columns, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column among the unprocessed rows
            let best = (pivot_row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                let pivot = rows[pivot_row].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        let pivot = rows[pivot_row].clone();
        for row in rows.iter_mut().take(pivot_row) {
            let q = row[col].div_floor(&pivot[col]);
            if !q.is_zero() {
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &q * p;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

/// Basis (in Hermite normal form) of `{ m ∈ ℤ^len : ∏ values_i^{m_i} = 1 }`.
pub fn relation_lattice(values: &[Rational]) -> Result<Vec<Vec<i64>>> {
    let factored = values.iter().map(factorize).collect::<Result<Vec<_>>>()?;
    let primes: Vec<u64> = factored
        .iter()
        .flat_map(|f| f.primes())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let len = values.len();
    let width = primes.len() + len;
    // [exponent column of value i | e_i]
    let rows: Vec<Vec<BigInt>> = factored
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut row = vec![BigInt::zero(); width];
            for (j, &p) in primes.iter().enumerate() {
                row[j] = BigInt::from(f.get(p));
            }
            row[primes.len() + i] = BigInt::one();
            row
        })
        .collect();
    let reduced = hermite_rows(rows);
    let kernel: Vec<Vec<BigInt>> = reduced
        .into_iter()
        .filter(|r| r[..primes.len()].iter().all(Zero::is_zero))
        .map(|r| r[primes.len()..].to_vec())
        .collect();
    hermite_rows(kernel)
        .into_iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::Domain("relation exponent overflow".into())))
                .collect()
        })
        .collect()
}

/// Solves `target = ∏ generators_i^{k_i}` over ℤ, returning `k` when it exists.
pub fn in_subgroup(generators: &[Rational], target: &Rational) -> Result<Option<Vec<i64>>> {
    let mut values = Vec::with_capacity(generators.len() + 1);
    values.push(target.clone());
    values.extend_from_slice(generators);
    let basis = relation_lattice(&values)?;
    Ok(basis
        .first()
        .filter(|row| row[0] == 1)
        .map(|row| row[1..].iter().map(|m| -m).collect()))
}
