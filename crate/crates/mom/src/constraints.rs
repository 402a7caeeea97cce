//! The k linear constraints on weighted row sums that cut the MoM pattern
//! sets out of the unconstrained Gelfand-Tsetlin patterns.
//!
//! Both counting paths share this module as their single source of truth.
//! A constraint is a statement `sum_(j in left block) e_j = sum_(j in right
//! block) e_j` over the per-variable weight exponents `e_j`; expanding the
//! exponents as row-sum brackets yields per-row integer coefficients.
//!
//! Two coordinate systems are supported:
//! - pattern side: coefficients over the rows of the full pattern (the top
//!   rows fixed to `<N^(2kb)>` included);
//! - relabelled side: homogeneous coefficients over the rows of the integer
//!   arrays obtained by stripping the fixed triangle of N entries.

use crate::error::{Error, Result};
use crate::Group;
use std::collections::BTreeMap;

/// One linear constraint, in both the block view (which weight variables
/// appear on which side) and the expanded per-row view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    /// Sign of weight variable `j` (0-based storage for `j = 1..=2kb`):
    /// `+1` on the left block, `-1` on the right block, `0` outside.
    pub block_signs: Vec<i8>,
    /// Expanded coefficients over pattern rows (1-based keys). Rows touched
    /// with a net zero coefficient are kept. For Sp the coefficients multiply
    /// plain row sums. For SO they multiply absolute row sums and are exact
    /// for the all-plus sign vector; for other sign vectors the odd-starter
    /// sign products modulate each bracket (see `row_coefficients_signed`).
    pub row_coefficients: BTreeMap<usize, i64>,
}

impl Constraint {
    /// First and last weight-variable block (1-based, inclusive).
    pub fn block_span(&self) -> (usize, usize) {
        let first = self.block_signs.iter().position(|&s| s != 0).unwrap() + 1;
        let last = self.block_signs.iter().rposition(|&s| s != 0).unwrap() + 1;
        (first, last)
    }
}

/// The `k` constraints for parameters `(group, k, beta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub group: Group,
    pub k: usize,
    pub beta: usize,
    pub constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    pub fn variables(&self) -> usize {
        2 * self.k * self.beta
    }

    /// The constraint owning weight-variable block `j` (1-based): blocks
    /// partition `1..=2kb` into `k` runs of length `2 beta`.
    pub fn constraint_of_block(&self, j: usize) -> usize {
        (j - 1) / (2 * self.beta)
    }

    /// Sign (+1 left / -1 right) of block `j` within its constraint.
    pub fn sign_of_block(&self, j: usize) -> i64 {
        let i = self.constraint_of_block(j);
        i64::from(self.constraints[i].block_signs[j - 1])
    }

    /// Whether consuming block `j` closes its constraint (the accumulator is
    /// then checked against zero).
    pub fn closes_constraint(&self, j: usize) -> bool {
        j % (2 * self.beta) == 0
    }
}

/// Builds the constraint system of the MoM counting problem. Each constraint
/// `i = 1..=k` equates the weight-exponent sum of variable block
/// `(2i-2)b+1 ..= (2i-1)b` with that of block `(2i-1)b+1 ..= 2ib`.
pub fn build_constraints(group: Group, k: usize, beta: usize) -> ConstraintSystem {
    assert!(k >= 1 && beta >= 1);
    let vars = 2 * k * beta;
    let max_row = group.pattern_rows(k, beta);
    let mut constraints = Vec::with_capacity(k);
    for i in 1..=k {
        let mut block_signs = vec![0i8; vars];
        let mut rows: BTreeMap<usize, i64> = BTreeMap::new();
        for j in (2 * i - 2) * beta + 1..=2 * i * beta {
            let sign: i64 = if j <= (2 * i - 1) * beta { 1 } else { -1 };
            block_signs[j - 1] = sign as i8;
            for (row, c) in bracket_rows(group, j) {
                if row >= 1 && row <= max_row as i64 {
                    *rows.entry(row as usize).or_insert(0) += sign * c;
                }
            }
        }
        constraints.push(Constraint { block_signs, row_coefficients: rows });
    }
    ConstraintSystem { group, k, beta, constraints }
}

/// Rows and coefficients of the weight-exponent bracket of variable `j`:
/// `r(2j) - 2 r(2j-1) + r(2j-2)` for Sp, `A(2j-1) - 2 A(2j-2) + A(2j-3)` for
/// SO. Out-of-range rows are the caller's to drop.
fn bracket_rows(group: Group, j: usize) -> [(i64, i64); 3] {
    let j = j as i64;
    match group {
        Group::Sp => [(2 * j, 1), (2 * j - 1, -2), (2 * j - 2, 1)],
        Group::So => [(2 * j - 1, 1), (2 * j - 2, -2), (2 * j - 3, 1)],
    }
}

/// Per-row coefficients of one constraint over absolute row sums for a fixed
/// odd-starter sign vector (SO only; for Sp the plain coefficients are exact
/// and `epsilon` is ignored). `epsilon` is indexed by starter (1-based
/// conceptually, 0-based storage) and must have length `2kb`.
pub fn row_coefficients_signed(
    system: &ConstraintSystem,
    constraint: usize,
    epsilon: &[i8],
) -> Result<BTreeMap<usize, i64>> {
    if system.group == Group::Sp {
        return Ok(system.constraints[constraint].row_coefficients.clone());
    }
    if epsilon.len() != system.variables() {
        return Err(Error::invalid(format!(
            "sign vector must have length {}, got {}",
            system.variables(),
            epsilon.len()
        )));
    }
    let max_row = system.group.pattern_rows(system.k, system.beta) as i64;
    let mut rows: BTreeMap<usize, i64> = BTreeMap::new();
    let c = &system.constraints[constraint];
    for j in 1..=system.variables() {
        let sign = i64::from(c.block_signs[j - 1]);
        if sign == 0 {
            continue;
        }
        let eps = |idx: usize| -> i64 {
            if idx == 0 {
                1
            } else {
                i64::from(epsilon[idx - 1])
            }
        };
        let factor = eps(j) * eps(j - 1);
        for (row, coeff) in bracket_rows(Group::So, j) {
            if row >= 1 && row <= max_row {
                *rows.entry(row as usize).or_insert(0) += sign * factor * coeff;
            }
        }
    }
    Ok(rows)
}

/// Number of rows of the relabelled integer arrays: `4kb - 1` for Sp,
/// `4kb - 3` for SO.
pub fn relabelled_rows(group: Group, k: usize, beta: usize) -> usize {
    match group {
        Group::Sp => 4 * k * beta - 1,
        Group::So => 4 * k * beta - 3,
    }
}

/// Length of relabelled row `m` (1-based): full rows below the middle, the
/// mirrored lengths above.
pub fn relabelled_row_length(group: Group, k: usize, beta: usize, m: usize) -> usize {
    let half = match group {
        Group::Sp => 2 * k * beta,
        Group::So => 2 * k * beta - 1,
    };
    if m <= half {
        (m + 1) / 2
    } else {
        let i = relabelled_rows(group, k, beta) + 1 - m;
        (i + 1) / 2
    }
}

/// The homogeneous constraints over the relabelled arrays, expanded to
/// per-row coefficients and ordered bottom-to-top (the polytope solve order).
/// For SO a sign vector of length `2kb` is required; for Sp it is ignored.
///
/// Constraint `t` (1-based) in this order determines the last coordinate of
/// row `4tb` (Sp) / `4tb - 1` (SO) for `t < k`, and the single coordinate of
/// the top row for `t = k`.
pub fn relabelled_constraints(
    group: Group,
    k: usize,
    beta: usize,
    epsilon: Option<&[i8]>,
) -> Result<Vec<BTreeMap<usize, i64>>> {
    let vars = 2 * k * beta;
    let eps_vec: Vec<i8>;
    let eps: &[i8] = match (group, epsilon) {
        (Group::Sp, _) => {
            eps_vec = vec![1; vars];
            &eps_vec
        }
        (Group::So, Some(e)) => {
            if e.len() != vars {
                return Err(Error::invalid(format!(
                    "sign vector must have length {vars}, got {}",
                    e.len()
                )));
            }
            e
        }
        (Group::So, None) => {
            return Err(Error::invalid("SO relabelled constraints require a sign vector"));
        }
    };
    let max_row = relabelled_rows(group, k, beta) as i64;
    let eps_at = |idx: usize| -> i64 {
        if idx == 0 {
            1
        } else {
            i64::from(eps[idx - 1])
        }
    };
    // Bracket of variable j in the bottom-half coordinates.
    let lower_bracket = |j: usize| -> ([(i64, i64); 3], i64) {
        (bracket_rows(group, j), eps_at(j) * eps_at(j - 1))
    };
    // Mirrored bracket of variable j in the top-half coordinates.
    let upper_bracket = |j: usize| -> ([(i64, i64); 3], i64) {
        let jj = j as i64;
        let n = 4 * (k * beta) as i64;
        match group {
            Group::Sp => (([(n - 2 * jj, 1), (n - 2 * jj + 1, -2), (n - 2 * jj + 2, 1)]), 1),
            Group::So => (
                [(n - 2 * jj - 1, 1), (n - 2 * jj, -2), (n - 2 * jj + 1, 1)],
                eps_at(vars - j + 1) * eps_at(vars - j),
            ),
        }
    };
    let add =
        |rows: &mut BTreeMap<usize, i64>, bracket: ([(i64, i64); 3], i64), sign: i64| {
            let (entries, factor) = bracket;
            for (row, c) in entries {
                if row >= 1 && row <= max_row {
                    *rows.entry(row as usize).or_insert(0) += sign * factor * c;
                }
            }
        };

    let half_k = k / 2;
    let mut ordered = Vec::with_capacity(k);
    // Bottom-half constraints, i = 1..=floor(k/2).
    for i in 1..=half_k {
        let mut rows = BTreeMap::new();
        for j in (2 * i - 2) * beta + 1..=2 * i * beta {
            let sign = if j <= (2 * i - 1) * beta { 1 } else { -1 };
            add(&mut rows, lower_bracket(j), sign);
        }
        ordered.push(rows);
    }
    // Middle constraint for odd k: lower brackets equal mirrored brackets
    // over the same variable range.
    if k % 2 == 1 {
        let mut rows = BTreeMap::new();
        for j in (k - 1) * beta + 1..=k * beta {
            add(&mut rows, lower_bracket(j), 1);
            add(&mut rows, upper_bracket(j), -1);
        }
        ordered.push(rows);
    }
    // Top-half constraints, mirrored, from the middle upwards.
    for i in (1..=half_k).rev() {
        let mut rows = BTreeMap::new();
        for j in (2 * i - 2) * beta + 1..=2 * i * beta {
            let sign = if j <= (2 * i - 1) * beta { 1 } else { -1 };
            add(&mut rows, upper_bracket(j), sign);
        }
        ordered.push(rows);
    }
    Ok(ordered)
}

/// The relabelled coordinate `(row, position)` (1-based) determined by
/// bottom-to-top constraint `t` (1-based).
pub fn determined_coordinate(group: Group, k: usize, beta: usize, t: usize) -> (usize, usize) {
    assert!((1..=k).contains(&t));
    if t < k {
        let row = match group {
            Group::Sp => 4 * t * beta,
            Group::So => 4 * t * beta - 1,
        };
        (row, relabelled_row_length(group, k, beta, row))
    } else {
        (relabelled_rows(group, k, beta), 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(pairs: &[(usize, i64)]) -> BTreeMap<usize, i64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn sp_k1_b1_row_coefficients() {
        let sys = build_constraints(Group::Sp, 1, 1);
        assert_eq!(sys.constraints.len(), 1);
        assert_eq!(sys.constraints[0].block_signs, vec![1, -1]);
        assert_eq!(sys.constraints[0].row_coefficients, rows(&[(1, -2), (2, 0), (3, 2), (4, -1)]));
    }

    #[test]
    fn sp_k1_b3_row_coefficients_alternate() {
        let sys = build_constraints(Group::Sp, 1, 3);
        let c = &sys.constraints[0].row_coefficients;
        let expect = rows(&[
            (1, -2),
            (2, 2),
            (3, -2),
            (4, 2),
            (5, -2),
            (6, 0),
            (7, 2),
            (8, -2),
            (9, 2),
            (10, -2),
            (11, 2),
            (12, -1),
        ]);
        assert_eq!(*c, expect);
    }

    #[test]
    fn sp_k2_b1_two_constraints_overlap_row() {
        let sys = build_constraints(Group::Sp, 2, 1);
        assert_eq!(sys.constraints.len(), 2);
        assert_eq!(sys.constraints[0].row_coefficients, rows(&[(1, -2), (2, 0), (3, 2), (4, -1)]));
        assert_eq!(
            sys.constraints[1].row_coefficients,
            rows(&[(4, 1), (5, -2), (6, 0), (7, 2), (8, -1)])
        );
        // Row 4 is the overlap row: -1 from the first constraint, +1 from the second.
        assert_eq!(sys.constraint_of_block(1), 0);
        assert_eq!(sys.constraint_of_block(3), 1);
        assert!(sys.closes_constraint(2) && sys.closes_constraint(4));
        assert!(!sys.closes_constraint(1) && !sys.closes_constraint(3));
    }

    #[test]
    fn so_k1_b1_all_plus() {
        let sys = build_constraints(Group::So, 1, 1);
        assert_eq!(sys.constraints[0].block_signs, vec![1, -1]);
        // e_1 - e_2 with all-plus signs: A1 - (A3 - 2 A2 + A1) = 2 A2 - A3.
        assert_eq!(sys.constraints[0].row_coefficients, rows(&[(1, 0), (2, 2), (3, -1)]));
        let signed = row_coefficients_signed(&sys, 0, &[1, -1]).unwrap();
        // eps = (+1, -1): e_1 = A1, e_2 = -(A3 - 2A2 + A1): net A1 + A3 - 2A2 + A1.
        assert_eq!(signed, rows(&[(1, 2), (2, -2), (3, 1)]));
    }

    #[test]
    fn relabelled_sp_k1_b1() {
        // Single homogeneous constraint y_1^(3) = y_1^(1).
        let cs = relabelled_constraints(Group::Sp, 1, 1, None).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0], rows(&[(1, -2), (2, 0), (3, 2)]));
        assert_eq!(determined_coordinate(Group::Sp, 1, 1, 1), (3, 1));
    }

    #[test]
    fn relabelled_sp_k2_b1_solve_order() {
        let cs = relabelled_constraints(Group::Sp, 2, 1, None).unwrap();
        assert_eq!(cs.len(), 2);
        // Bottom constraint lives in rows 1..=4, the mirrored one in rows 4..=7.
        assert_eq!(cs[0], rows(&[(1, -2), (2, 0), (3, 2), (4, -1)]));
        assert_eq!(cs[1], rows(&[(4, -1), (5, 2), (6, 0), (7, -2)]));
        assert_eq!(determined_coordinate(Group::Sp, 2, 1, 1), (4, 2));
        assert_eq!(determined_coordinate(Group::Sp, 2, 1, 2), (7, 1));
    }

    #[test]
    fn relabelled_row_lengths() {
        // Sp k=2, b=1: rows 1..=7 with lengths 1,1,2,2,2,1,1.
        let lens: Vec<usize> =
            (1..=7).map(|m| relabelled_row_length(Group::Sp, 2, 1, m)).collect();
        assert_eq!(lens, vec![1, 1, 2, 2, 2, 1, 1]);
        // SO k=2, b=1: rows 1..=5 with lengths 1,1,2,1,1.
        let lens: Vec<usize> =
            (1..=5).map(|m| relabelled_row_length(Group::So, 2, 1, m)).collect();
        assert_eq!(lens, vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn relabelled_so_requires_epsilon() {
        assert!(relabelled_constraints(Group::So, 1, 1, None).is_err());
        let cs = relabelled_constraints(Group::So, 2, 1, Some(&[1, 1, 1, 1])).unwrap();
        assert_eq!(cs.len(), 2);
    }
}
