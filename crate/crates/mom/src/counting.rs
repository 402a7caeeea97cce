//! The exact counting core: dynamic programming over pattern rows for the
//! constrained counts, the coordinate-relabelling bijections, and a naive
//! brute-force oracle.
//!
//! The DP walks the pattern bottom-up one weight-variable block at a time
//! (two consecutive rows per block), so each block's exponent bracket is
//! fully determined inside a single transition. Blocks partition the
//! variables among the k constraints, hence exactly one constraint
//! accumulator is live at any point of the walk. Accumulators can be
//! negative mid-stream; a per-block feasible-swing bound prunes branches
//! that cannot return to zero.

use crate::constraints::{self, build_constraints, ConstraintSystem};
use crate::error::{Error, Result};
use crate::patterns::{
    self, interlaces_entries, o_weight_exponents, sp_weight_exponents, OrthogonalPattern,
    Signature, SymplecticPattern,
};
use crate::{Count, Group};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

/// Which side of the relabelling bijection the count runs on. Both must
/// agree; the relabelled side exists as a cross-check and is enumeration
/// based, so keep it to small parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountSide {
    #[default]
    Pattern,
    Relabelled,
}

/// Resource limits for a counting run. Exceeding a cap is an error, never a
/// silent truncation.
#[derive(Debug, Clone)]
pub struct CountConfig {
    /// Cap on live DP states.
    pub state_cap: usize,
    /// Cap on enumeration nodes for the brute-force and relabelled paths.
    pub node_cap: u64,
    pub side: CountSide,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { state_cap: 100_000_000, node_cap: 50_000_000, side: CountSide::Pattern }
    }
}

/// An exact count with its parameters and run statistics.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub value: Count,
    pub group: Group,
    pub n: i64,
    pub k: usize,
    pub beta: usize,
    /// Total number of distinct DP states (or enumeration nodes) explored.
    pub states_explored: u64,
    pub wall: std::time::Duration,
}

/// Sign vector over the odd starters (and the top-row label as its final
/// entry), length `2kb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("sign vector entries must be +1 or -1"));
        }
        Ok(SignVector(signs))
    }

    pub fn all_plus(len: usize) -> Self {
        SignVector(vec![1; len])
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^len` sign vectors, in binary order with +1 first.
    pub fn enumerate(len: usize) -> Vec<SignVector> {
        let mut out = Vec::with_capacity(1 << len);
        for mask in 0u32..(1 << len) {
            let signs = (0..len).map(|i| if mask >> i & 1 == 0 { 1 } else { -1 }).collect();
            out.push(SignVector(signs));
        }
        out
    }
}

#[derive(Debug, Clone)]
enum SignPolicy {
    /// Sum over all admissible sign assignments.
    Free,
    /// Restrict to one sign class: zero starters only belong to the +1 class.
    Fixed(Vec<i8>),
}

/// Crude bound on |bracket_j|: every row entry lies in [0, n].
fn bracket_swing(j: usize, n: i64) -> i64 {
    2 * j as i64 * n
}

/// Remaining feasible swing after consuming block `j` of its constraint.
fn remaining_swing(system: &ConstraintSystem, j: usize, n: i64) -> i64 {
    let end = (system.constraint_of_block(j) + 1) * 2 * system.beta;
    (j + 1..=end).map(|jj| bracket_swing(jj, n)).sum()
}

fn check_params(n: i64, k: usize, beta: usize) -> Result<()> {
    if n < 0 {
        return Err(Error::invalid("n must be >= 0"));
    }
    if k < 1 || beta < 1 {
        return Err(Error::invalid("k and beta must be >= 1"));
    }
    Ok(())
}

/// Exact count of `GT_Sp(N;k;beta)`: `(4kb)`-symplectic patterns with top row
/// `<N^(2kb)>` satisfying the k constraints. Equals `MoM_Sp(2N)(k, beta)`.
pub fn count_constrained_sp(n: i64, k: usize, beta: usize, cfg: &CountConfig) -> Result<CountResult> {
    check_params(n, k, beta)?;
    match cfg.side {
        CountSide::Pattern => sp_pattern_dp(n, k, beta, cfg),
        CountSide::Relabelled => count_relabelled(Group::Sp, n, k, beta, &SignPolicy::Free, cfg),
    }
}

/// Exact count of `GT_SO(N;k;beta)` summed over both top-row labels and all
/// odd-starter sign configurations. Equals `MoM_SO(2N)(k, beta)`.
pub fn count_constrained_so(n: i64, k: usize, beta: usize, cfg: &CountConfig) -> Result<CountResult> {
    check_params(n, k, beta)?;
    match cfg.side {
        CountSide::Pattern => so_pattern_dp(n, k, beta, &SignPolicy::Free, cfg),
        CountSide::Relabelled => count_relabelled(Group::So, n, k, beta, &SignPolicy::Free, cfg),
    }
}

/// Count of the single sign class `GT^eps_SO(N;k;beta)`: starter signs equal
/// `eps` entrywise (`sgn(0) = +1`, so a zero starter only matches `+1`) and
/// the top-row label equals the final entry of `eps`. Summing over all
/// `2^(2kb)` classes reproduces `count_constrained_so`.
pub fn count_constrained_so_signed(
    n: i64,
    k: usize,
    beta: usize,
    eps: &SignVector,
    cfg: &CountConfig,
) -> Result<CountResult> {
    check_params(n, k, beta)?;
    if eps.len() != 2 * k * beta {
        return Err(Error::invalid(format!(
            "sign vector must have length {}, got {}",
            2 * k * beta,
            eps.len()
        )));
    }
    let policy = SignPolicy::Fixed(eps.signs().to_vec());
    match cfg.side {
        CountSide::Pattern => so_pattern_dp(n, k, beta, &policy, cfg),
        CountSide::Relabelled => count_relabelled(Group::So, n, k, beta, &policy, cfg),
    }
}

/// Exact count of `SP_<n^s>`: `(2s)`-symplectic patterns with top row
/// `<n^s>` and no linear constraints (the symmetry-point moments).
pub fn count_sp_fixed_top(n: i64, s: usize, cfg: &CountConfig) -> Result<CountResult> {
    if n < 0 || s < 1 {
        return Err(Error::invalid("require n >= 0 and s >= 1"));
    }
    let start = Instant::now();
    let top: Vec<i64> = vec![n; s];
    let mut states: HashMap<Vec<i64>, Count> = HashMap::new();
    states.insert(Vec::new(), Count::one());
    let mut explored = 0u64;
    for row_idx in 1..=2 * s {
        let len = patterns::row_length(row_idx);
        let mut next: HashMap<Vec<i64>, Count> = HashMap::new();
        for (prev, count) in &states {
            patterns::for_each_interlacing_upper(prev, len, n, &mut |row| {
                if row_idx == 2 * s && row != top.as_slice() {
                    return;
                }
                next.entry(row.to_vec())
                    .and_modify(|c| *c += count)
                    .or_insert_with(|| count.clone());
            });
        }
        explored += next.len() as u64;
        if next.len() > cfg.state_cap {
            return Err(Error::ResourceLimit(format!(
                "{} DP states at row {row_idx} exceeds cap {}",
                next.len(),
                cfg.state_cap
            )));
        }
        states = next;
    }
    let value = states.into_values().fold(Count::zero(), |acc, c| acc + c);
    Ok(CountResult {
        value,
        group: Group::Sp,
        n,
        k: s,
        beta: 0,
        states_explored: explored,
        wall: start.elapsed(),
    })
}

fn sp_pattern_dp(n: i64, k: usize, beta: usize, cfg: &CountConfig) -> Result<CountResult> {
    let start = Instant::now();
    let system = build_constraints(Group::Sp, k, beta);
    let vars = 2 * k * beta;
    let top: Vec<i64> = vec![n; vars];
    // State after block j: the even row 2j plus the live accumulator.
    let mut states: HashMap<Vec<i64>, BTreeMap<i64, Count>> = HashMap::new();
    states.insert(Vec::new(), BTreeMap::from([(0i64, Count::one())]));
    let mut explored = 0u64;
    for j in 1..=vars {
        let sign = system.sign_of_block(j);
        let closes = system.closes_constraint(j);
        let swing = remaining_swing(&system, j, n);
        let mut next: HashMap<Vec<i64>, BTreeMap<i64, Count>> = HashMap::new();
        let mut next_states = 0usize;
        for (prev_even, accs) in &states {
            let prev_sum: i64 = prev_even.iter().sum();
            patterns::for_each_interlacing_upper(prev_even, j, n, &mut |odd| {
                let odd_vec = odd.to_vec();
                let odd_sum: i64 = odd.iter().sum();
                let mut emit = |even: &[i64]| {
                    let bracket = even.iter().sum::<i64>() - 2 * odd_sum + prev_sum;
                    let entry = next.entry(even.to_vec()).or_default();
                    for (acc, count) in accs {
                        let acc2 = acc + sign * bracket;
                        if closes {
                            if acc2 != 0 {
                                continue;
                            }
                        } else if acc2.abs() > swing {
                            continue;
                        }
                        let key = if closes { 0 } else { acc2 };
                        entry
                            .entry(key)
                            .and_modify(|c| *c += count)
                            .or_insert_with(|| count.clone());
                    }
                };
                if j == vars {
                    // Top row is pinned to <N^(2kb)>.
                    if interlaces_entries(&odd_vec, &top).unwrap_or(false) {
                        emit(&top);
                    }
                } else {
                    patterns::for_each_interlacing_upper(&odd_vec, j, n, &mut emit);
                }
            });
            next_states = next.values().map(|m| m.len()).sum();
            if next_states > cfg.state_cap {
                return Err(Error::ResourceLimit(format!(
                    "{next_states} DP states at block {j} exceeds cap {}",
                    cfg.state_cap
                )));
            }
        }
        next.retain(|_, accs| !accs.is_empty());
        explored += next_states as u64;
        states = next;
    }
    let value = states
        .into_values()
        .flat_map(|m| m.into_values())
        .fold(Count::zero(), |acc, c| acc + c);
    Ok(CountResult { value, group: Group::Sp, n, k, beta, states_explored: explored, wall: start.elapsed() })
}

fn so_pattern_dp(
    n: i64,
    k: usize,
    beta: usize,
    policy: &SignPolicy,
    cfg: &CountConfig,
) -> Result<CountResult> {
    let start = Instant::now();
    let system = build_constraints(Group::So, k, beta);
    let vars = 2 * k * beta;
    let top: Vec<i64> = vec![n; vars];
    // State after block j: the odd row 2j-1 in absolute values, the sign of
    // its starter, and the live accumulator.
    type Key = (Vec<i64>, i8);
    let mut states: HashMap<Key, BTreeMap<i64, Count>> = HashMap::new();
    states.insert((Vec::new(), 1), BTreeMap::from([(0i64, Count::one())]));
    let mut explored = 0u64;
    for j in 1..=vars {
        let sign = system.sign_of_block(j);
        let closes = system.closes_constraint(j);
        let swing = remaining_swing(&system, j, n);
        let is_top = j == vars;
        let mut next: HashMap<Key, BTreeMap<i64, Count>> = HashMap::new();
        let mut next_states = 0usize;
        for ((prev_odd, eps_prev), accs) in &states {
            let prev_abs_sum: i64 = prev_odd.iter().sum();
            let eps_prev = i64::from(*eps_prev);
            // Even row 2j-2 (absent for j = 1), then odd row 2j-1.
            let mut with_even = |even: &[i64]| {
                let even_sum: i64 = even.iter().sum();
                let even_vec = even.to_vec();
                let mut with_odd = |odd: &[i64]| {
                    let bracket = odd.iter().sum::<i64>() - 2 * even_sum + prev_abs_sum;
                    let starter_abs = *odd.last().unwrap();
                    // Admissible class signs for this starter.
                    let choices: &[i8] = match policy {
                        SignPolicy::Free => {
                            if is_top || starter_abs > 0 {
                                &[1, -1]
                            } else {
                                &[1]
                            }
                        }
                        SignPolicy::Fixed(eps) => {
                            let want = eps[j - 1];
                            if !is_top && starter_abs == 0 && want == -1 {
                                &[]
                            } else if want == 1 {
                                &[1]
                            } else {
                                &[-1]
                            }
                        }
                    };
                    for &class_sign in choices {
                        // Arithmetic sign: sgn of the actual starter value;
                        // a degenerate top label (N = 0) reads as +1.
                        let arith = if starter_abs == 0 { 1 } else { i64::from(class_sign) };
                        let contrib = sign * arith * eps_prev * bracket;
                        let entry = next.entry((odd.to_vec(), class_sign)).or_default();
                        for (acc, count) in accs {
                            let acc2 = acc + contrib;
                            if closes {
                                if acc2 != 0 {
                                    continue;
                                }
                            } else if acc2.abs() > swing {
                                continue;
                            }
                            let key = if closes { 0 } else { acc2 };
                            entry
                                .entry(key)
                                .and_modify(|c| *c += count)
                                .or_insert_with(|| count.clone());
                        }
                    }
                };
                if is_top {
                    if interlaces_entries(&even_vec, &top).unwrap_or(false) {
                        with_odd(&top);
                    }
                } else {
                    patterns::for_each_interlacing_upper(&even_vec, j, n, &mut with_odd);
                }
            };
            if j == 1 {
                with_even(&[]);
            } else {
                patterns::for_each_interlacing_upper(prev_odd, j - 1, n, &mut with_even);
            }
            next_states = next.values().map(|m| m.len()).sum();
            if next_states > cfg.state_cap {
                return Err(Error::ResourceLimit(format!(
                    "{next_states} DP states at block {j} exceeds cap {}",
                    cfg.state_cap
                )));
            }
        }
        next.retain(|_, accs| !accs.is_empty());
        explored += next_states as u64;
        states = next;
    }
    let value = states
        .into_values()
        .flat_map(|m| m.into_values())
        .fold(Count::zero(), |acc, c| acc + c);
    Ok(CountResult { value, group: Group::So, n, k, beta, states_explored: explored, wall: start.elapsed() })
}

/// Counts by naive depth-first enumeration of full patterns, checking the
/// constraints only at the leaves through the weight-exponent formulas. The
/// independent oracle for the DP.
pub fn brute_force_count(group: Group, n: i64, k: usize, beta: usize, cfg: &CountConfig) -> Result<CountResult> {
    check_params(n, k, beta)?;
    let start = Instant::now();
    let system = build_constraints(group, k, beta);
    let mut nodes = 0u64;
    let total = match group {
        Group::Sp => brute_sp(n, k, beta, &system, cfg, &mut nodes)?,
        Group::So => brute_so(n, k, beta, &system, cfg, &mut nodes)?,
    };
    Ok(CountResult { value: total, group, n, k, beta, states_explored: nodes, wall: start.elapsed() })
}

fn constraints_hold(system: &ConstraintSystem, exponents: &[i64]) -> bool {
    system.constraints.iter().all(|c| {
        exponents
            .iter()
            .zip(&c.block_signs)
            .map(|(e, &s)| e * i64::from(s))
            .sum::<i64>()
            == 0
    })
}

fn brute_sp(
    n: i64,
    k: usize,
    beta: usize,
    system: &ConstraintSystem,
    cfg: &CountConfig,
    nodes: &mut u64,
) -> Result<Count> {
    let total_rows = 4 * k * beta;
    let top: Vec<i64> = vec![n; 2 * k * beta];
    let mut count = Count::zero();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(total_rows);
    brute_sp_rec(n, total_rows, &top, system, cfg, nodes, &mut rows, &mut count)?;
    Ok(count)
}

fn brute_sp_rec(
    n: i64,
    total_rows: usize,
    top: &[i64],
    system: &ConstraintSystem,
    cfg: &CountConfig,
    nodes: &mut u64,
    rows: &mut Vec<Vec<i64>>,
    count: &mut Count,
) -> Result<()> {
    if rows.len() == total_rows {
        let signatures: Vec<Signature> =
            rows.iter().map(|r| Signature::from_entries_unchecked(r.clone())).collect();
        let pattern = SymplecticPattern::new(signatures)
            .map_err(|e| Error::Internal(format!("brute force produced an invalid pattern: {e}")))?;
        if constraints_hold(system, &sp_weight_exponents(&pattern).exponents) {
            *count += Count::one();
        }
        return Ok(());
    }
    let row_idx = rows.len() + 1;
    let len = patterns::row_length(row_idx);
    let prev: Vec<i64> = rows.last().cloned().unwrap_or_default();
    let mut candidates = Vec::new();
    patterns::for_each_interlacing_upper(&prev, len, n, &mut |row| {
        if row_idx == total_rows && row != top {
            return;
        }
        candidates.push(row.to_vec());
    });
    *nodes += candidates.len() as u64;
    if *nodes > cfg.node_cap {
        return Err(Error::ResourceLimit(format!(
            "brute-force enumeration exceeded {} nodes",
            cfg.node_cap
        )));
    }
    for row in candidates {
        rows.push(row);
        brute_sp_rec(n, total_rows, top, system, cfg, nodes, rows, count)?;
        rows.pop();
    }
    Ok(())
}

fn brute_so(
    n: i64,
    k: usize,
    beta: usize,
    system: &ConstraintSystem,
    cfg: &CountConfig,
    nodes: &mut u64,
) -> Result<Count> {
    let total_rows = 4 * k * beta - 1;
    let top: Vec<i64> = vec![n; 2 * k * beta];
    let mut count = Count::zero();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(total_rows);
    brute_so_rec(n, total_rows, &top, system, cfg, nodes, &mut rows, &mut count)?;
    Ok(count)
}

fn brute_so_rec(
    n: i64,
    total_rows: usize,
    top: &[i64],
    system: &ConstraintSystem,
    cfg: &CountConfig,
    nodes: &mut u64,
    rows: &mut Vec<Vec<i64>>,
    count: &mut Count,
) -> Result<()> {
    if rows.len() == total_rows {
        // Distribute signs over the nonzero odd starters; the top label is
        // counted for both signs even when degenerate.
        let starters: Vec<i64> = (1..=(total_rows + 1) / 2)
            .map(|i| *rows[2 * i - 2].last().unwrap())
            .collect();
        let mut sign_sets: Vec<Vec<i64>> = starters
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                if idx + 1 == starters.len() || a > 0 {
                    vec![1, -1]
                } else {
                    vec![1]
                }
            })
            .collect();
        // The recursion below walks the cartesian product of sign choices.
        let mut assignment = vec![1i64; starters.len()];
        walk_signs(&mut sign_sets, 0, &mut assignment, &mut |signs| {
            let signed_rows: Vec<Signature> = rows
                .iter()
                .enumerate()
                .map(|(idx, r)| {
                    let mut entries = r.clone();
                    if (idx + 1) % 2 == 1 {
                        let starter_idx = (idx + 1 + 1) / 2 - 1;
                        let last = entries.len() - 1;
                        entries[last] *= signs[starter_idx];
                    }
                    Signature::from_entries_unchecked(entries)
                })
                .collect();
            let pattern = OrthogonalPattern::new(signed_rows).expect("enumerated pattern must be valid");
            if constraints_hold(system, &o_weight_exponents(&pattern).exponents) {
                *count += Count::one();
            }
        });
        return Ok(());
    }
    let row_idx = rows.len() + 1;
    let len = patterns::row_length(row_idx);
    let prev: Vec<i64> = rows.last().cloned().unwrap_or_default();
    let mut candidates = Vec::new();
    patterns::for_each_interlacing_upper(&prev, len, n, &mut |row| {
        if row_idx == total_rows && row != top {
            return;
        }
        candidates.push(row.to_vec());
    });
    *nodes += candidates.len() as u64;
    if *nodes > cfg.node_cap {
        return Err(Error::ResourceLimit(format!(
            "brute-force enumeration exceeded {} nodes",
            cfg.node_cap
        )));
    }
    for row in candidates {
        rows.push(row);
        brute_so_rec(n, total_rows, top, system, cfg, nodes, rows, count)?;
        rows.pop();
    }
    Ok(())
}

fn walk_signs(
    sets: &mut [Vec<i64>],
    idx: usize,
    assignment: &mut Vec<i64>,
    f: &mut impl FnMut(&[i64]),
) {
    if idx == sets.len() {
        f(assignment);
        return;
    }
    let options = sets[idx].clone();
    for s in options {
        assignment[idx] = s;
        walk_signs(sets, idx + 1, assignment, f);
    }
}

/// Counting on the relabelled (integer-array) side: direct enumeration of
/// arrays satisfying the shape, bound, and homogeneous constraint conditions.
fn count_relabelled(
    group: Group,
    n: i64,
    k: usize,
    beta: usize,
    policy: &SignPolicy,
    cfg: &CountConfig,
) -> Result<CountResult> {
    let start = Instant::now();
    let total_rows = constraints::relabelled_rows(group, k, beta);
    let half = match group {
        Group::Sp => 2 * k * beta,
        Group::So => 2 * k * beta - 1,
    };
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(total_rows);
    let mut count = Count::zero();
    let mut nodes = 0u64;
    relabelled_rec(group, n, k, beta, total_rows, half, policy, cfg, &mut nodes, &mut rows, &mut count)?;
    Ok(CountResult { value: count, group, n, k, beta, states_explored: nodes, wall: start.elapsed() })
}

#[allow(clippy::too_many_arguments)]
fn relabelled_rec(
    group: Group,
    n: i64,
    k: usize,
    beta: usize,
    total_rows: usize,
    half: usize,
    policy: &SignPolicy,
    cfg: &CountConfig,
    nodes: &mut u64,
    rows: &mut Vec<Vec<i64>>,
    count: &mut Count,
) -> Result<()> {
    if rows.len() == total_rows {
        relabelled_leaf(group, n, k, beta, policy, rows, count)?;
        return Ok(());
    }
    let m = rows.len() + 1;
    let len = constraints::relabelled_row_length(group, k, beta, m);
    let prev: Vec<i64> = rows.last().cloned().unwrap_or_default();
    let mut candidates = Vec::new();
    if m <= half {
        patterns::for_each_interlacing_upper(&prev, len, n, &mut |row| candidates.push(row.to_vec()));
    } else {
        // Above the middle the arrays shrink: the new row interlaces into the
        // previous one.
        patterns::for_each_interlacing_lower(&prev, len, &mut |row| candidates.push(row.to_vec()));
    }
    *nodes += candidates.len() as u64;
    if *nodes > cfg.node_cap {
        return Err(Error::ResourceLimit(format!(
            "relabelled enumeration exceeded {} nodes",
            cfg.node_cap
        )));
    }
    for row in candidates {
        rows.push(row);
        relabelled_rec(group, n, k, beta, total_rows, half, policy, cfg, nodes, rows, count)?;
        rows.pop();
    }
    Ok(())
}

fn relabelled_leaf(
    group: Group,
    n: i64,
    k: usize,
    beta: usize,
    policy: &SignPolicy,
    rows: &[Vec<i64>],
    count: &mut Count,
) -> Result<()> {
    let eval = |eps: &[i8]| -> Result<bool> {
        let cs = constraints::relabelled_constraints(group, k, beta, Some(eps))?;
        Ok(cs.iter().all(|c| {
            c.iter().map(|(&row, &coeff)| coeff * rows[row - 1].iter().sum::<i64>()).sum::<i64>() == 0
        }))
    };
    match group {
        Group::Sp => {
            if eval(&vec![1; 2 * k * beta])? {
                *count += Count::one();
            }
        }
        Group::So => {
            let starters: Vec<i64> =
                (1..=2 * k * beta - 1).map(|i| *rows[2 * i - 2].last().unwrap()).collect();
            let class_sets: Vec<Vec<i8>> = match policy {
                SignPolicy::Free => {
                    let mut sets: Vec<Vec<i8>> =
                        starters.iter().map(|&a| if a > 0 { vec![1, -1] } else { vec![1] }).collect();
                    sets.push(vec![1, -1]); // top label, disjoint even when degenerate
                    sets
                }
                SignPolicy::Fixed(eps) => {
                    let mut sets = Vec::with_capacity(eps.len());
                    for (idx, &want) in eps.iter().enumerate() {
                        let inner = idx + 1 < eps.len();
                        if inner && starters[idx] == 0 && want == -1 {
                            return Ok(()); // class is empty for this array
                        }
                        sets.push(vec![want]);
                    }
                    sets
                }
            };
            let mut assignment = vec![1i8; 2 * k * beta];
            let mut ok_count = 0u64;
            walk_sign_classes(&class_sets, 0, &mut assignment, &mut |eps| {
                // Arithmetic signs: a degenerate top label (N = 0) reads +1.
                let mut arith = eps.to_vec();
                if n == 0 {
                    arith[2 * k * beta - 1] = 1;
                }
                if eval(&arith).unwrap_or(false) {
                    ok_count += 1;
                }
            });
            *count += Count::from(ok_count);
        }
    }
    Ok(())
}

fn walk_sign_classes(
    sets: &[Vec<i8>],
    idx: usize,
    assignment: &mut Vec<i8>,
    f: &mut impl FnMut(&[i8]),
) {
    if idx == sets.len() {
        f(assignment);
        return;
    }
    for &s in &sets[idx] {
        assignment[idx] = s;
        walk_sign_classes(sets, idx + 1, assignment, f);
    }
}

/// Integer array image of the relabelling bijections: the free coordinates of
/// a constrained pattern after stripping the fixed triangle of `N` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelledArray {
    pub group: Group,
    pub n: i64,
    /// Product `k * beta` (the bijection depends only on it).
    pub kb: usize,
    pub rows: Vec<Signature>,
}

impl RelabelledArray {
    fn expect_shape(&self) -> Result<()> {
        let rows_expected = constraints::relabelled_rows(self.group, self.kb, 1);
        if self.rows.len() != rows_expected {
            return Err(Error::invalid(format!(
                "relabelled array must have {rows_expected} rows, got {}",
                self.rows.len()
            )));
        }
        for (idx, row) in self.rows.iter().enumerate() {
            let want = constraints::relabelled_row_length(self.group, self.kb, 1, idx + 1);
            if row.len() != want {
                return Err(Error::invalid(format!(
                    "relabelled row {} must have length {want}, got {}",
                    idx + 1,
                    row.len()
                )));
            }
            if row.entries().iter().any(|&e| e < 0 || e > self.n) {
                return Err(Error::invalid(format!(
                    "relabelled row {} entries must lie in [0, {}]",
                    idx + 1,
                    self.n
                )));
            }
        }
        Ok(())
    }
}

fn top_row_value(top: &Signature) -> Result<i64> {
    let abs: Vec<i64> = top.entries().iter().map(|e| e.abs()).collect();
    let n = abs[0];
    if abs.iter().any(|&e| e != n) {
        return Err(Error::invalid("top row is not of the form <N^M> (up to the label sign)"));
    }
    Ok(n)
}

/// Strips the fixed upper-right triangle of `N` entries from a pattern with
/// top row `<N^(2kb)>` and renames the free coordinates.
pub fn relabel_sp(p: &SymplecticPattern) -> Result<RelabelledArray> {
    let top = p.top_row();
    if !top.is_non_negative() {
        return Err(Error::invalid("top row must be non-negative"));
    }
    let n = top_row_value(top)?;
    let kb2 = top.len(); // 2kb
    if kb2 % 2 != 0 {
        return Err(Error::invalid("top row length must be even"));
    }
    let kb = kb2 / 2;
    let total = 4 * kb; // pattern rows
    debug_assert_eq!(p.rows().len(), total);
    let mut rows = Vec::with_capacity(total - 1);
    for m in 1..=total - 1 {
        let lam = p.rows()[m - 1].entries();
        let keep = constraints::relabelled_row_length(Group::Sp, kb, 1, m);
        let fixed = lam.len() - keep;
        if lam[..fixed].iter().any(|&e| e != n) {
            return Err(Error::invalid(format!(
                "row {m} does not carry the fixed prefix of N entries"
            )));
        }
        rows.push(Signature::from_entries_unchecked(lam[fixed..].to_vec()));
    }
    let array = RelabelledArray { group: Group::Sp, n, kb, rows };
    array.expect_shape()?;
    Ok(array)
}

/// Inverse of [`relabel_sp`]: reconstructs the pattern exactly.
pub fn relabel_sp_inverse(a: &RelabelledArray) -> Result<SymplecticPattern> {
    if a.group != Group::Sp {
        return Err(Error::invalid("array does not belong to the symplectic bijection"));
    }
    a.expect_shape()?;
    let total = 4 * a.kb;
    let mut rows = Vec::with_capacity(total);
    for m in 1..=total - 1 {
        let want = patterns::row_length(m);
        let free = a.rows[m - 1].entries();
        let mut entries = vec![a.n; want - free.len()];
        entries.extend_from_slice(free);
        rows.push(Signature::new(entries)?);
    }
    rows.push(Signature::constant(a.n, 2 * a.kb));
    SymplecticPattern::new(rows)
}

/// Strips the fixed triangle from an orthogonal pattern with top row
/// `<N^(2kb)>` or its negated-label variant, extracting the starter signs.
pub fn relabel_so(p: &OrthogonalPattern) -> Result<(RelabelledArray, SignVector)> {
    let top = p.top_row();
    let n = top_row_value(top)?;
    let kb2 = top.len();
    if kb2 % 2 != 0 {
        return Err(Error::invalid("top row length must be even"));
    }
    let kb = kb2 / 2;
    let total = 4 * kb - 1;
    debug_assert_eq!(p.rows().len(), total);
    let mut signs = Vec::with_capacity(kb2);
    for i in 1..=kb2 {
        signs.push(patterns::sgn(p.odd_starter(i)) as i8);
    }
    let mut rows = Vec::with_capacity(total - 2);
    for m in 1..=total - 2 {
        let lam = p.rows()[m - 1].entries();
        let keep = constraints::relabelled_row_length(Group::So, kb, 1, m);
        let fixed = lam.len() - keep;
        if lam[..fixed].iter().any(|&e| e != n) {
            return Err(Error::invalid(format!(
                "row {m} does not carry the fixed prefix of N entries"
            )));
        }
        let mut entries = lam[fixed..].to_vec();
        let last = entries.len() - 1;
        entries[last] = entries[last].abs();
        rows.push(Signature::from_entries_unchecked(entries));
    }
    let array = RelabelledArray { group: Group::So, n, kb, rows };
    array.expect_shape()?;
    Ok((array, SignVector::new(signs)?))
}

/// Inverse of [`relabel_so`].
pub fn relabel_so_inverse(a: &RelabelledArray, eps: &SignVector) -> Result<OrthogonalPattern> {
    if a.group != Group::So {
        return Err(Error::invalid("array does not belong to the orthogonal bijection"));
    }
    a.expect_shape()?;
    if eps.len() != 2 * a.kb {
        return Err(Error::invalid(format!(
            "sign vector must have length {}, got {}",
            2 * a.kb,
            eps.len()
        )));
    }
    let total = 4 * a.kb - 1;
    let mut rows = Vec::with_capacity(total);
    for m in 1..=total - 2 {
        let want = patterns::row_length(m);
        let free = a.rows[m - 1].entries();
        let mut entries = vec![a.n; want - free.len()];
        entries.extend_from_slice(free);
        if m % 2 == 1 {
            let i = (m + 1) / 2;
            let last = entries.len() - 1;
            entries[last] *= i64::from(eps.signs()[i - 1]);
        }
        rows.push(Signature::new(entries)?);
    }
    rows.push(Signature::constant(a.n, 2 * a.kb - 1));
    let mut top = vec![a.n; 2 * a.kb];
    let last = top.len() - 1;
    top[last] *= i64::from(eps.signs()[2 * a.kb - 1]);
    rows.push(Signature::new(top)?);
    OrthogonalPattern::new(rows)
}
