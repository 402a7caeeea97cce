//! Signatures, interlacing, half patterns, and symplectic / orthogonal
//! Gelfand-Tsetlin patterns with their weight exponents.
//!
//! Conventions: signatures store entries most-significant-first (they are
//! non-increasing), matching the usual `lambda_1 >= lambda_2 >= ...`
//! indexing; all row and column indices appearing in reports are 1-based.
//! Half-integer orthogonal entries are not supported: every entry is an
//! integer. The sign convention is `sgn(0) = +1` throughout.

use crate::error::{Error, Result};

/// A non-increasing integer vector; the atomic row of every pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    entries: Vec<i64>,
}

impl Signature {
    /// Builds a signature, rejecting vectors that are not non-increasing.
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("signature must have length >= 1"));
        }
        if !is_non_increasing(&entries) {
            return Err(Error::invalid(format!("entries {entries:?} are not non-increasing")));
        }
        Ok(Signature { entries })
    }

    /// The constant signature `<n^m>`.
    pub fn constant(n: i64, m: usize) -> Self {
        Signature { entries: vec![n; m] }
    }

    /// `lambda^-`: negate the last entry. Defined for non-negative signatures.
    pub fn negate_last(&self) -> Result<Self> {
        if !self.is_non_negative() {
            return Err(Error::invalid("negate_last requires a non-negative signature"));
        }
        let mut entries = self.entries.clone();
        let last = entries.len() - 1;
        entries[last] = -entries[last];
        Ok(Signature { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<i64>) -> Self {
        debug_assert!(is_non_increasing(&entries));
        Signature { entries }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_non_negative(&self) -> bool {
        *self.entries.last().unwrap_or(&0) >= 0
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Sum of absolute values of the entries.
    pub fn abs_sum(&self) -> i64 {
        self.entries.iter().map(|e| e.abs()).sum()
    }
}

fn is_non_increasing(entries: &[i64]) -> bool {
    entries.windows(2).all(|w| w[0] >= w[1])
}

/// `sgn(x)` with the convention `sgn(0) = +1`.
pub fn sgn(x: i64) -> i64 {
    if x >= 0 {
        1
    } else {
        -1
    }
}

/// Tests whether `lower` interlaces `upper` (`lower < upper` in the pattern
/// ordering): the chain `u_1 >= l_1 >= u_2 >= l_2 >= ...` holds, dropping the
/// final bound on `u_{M+1}` in the equal-length case.
///
/// `upper` must have the same length as `lower` or exactly one more entry.
pub fn interlaces(lower: &Signature, upper: &Signature) -> Result<bool> {
    interlaces_entries(lower.entries(), upper.entries())
}

pub(crate) fn interlaces_entries(lower: &[i64], upper: &[i64]) -> Result<bool> {
    if upper.len() != lower.len() && upper.len() != lower.len() + 1 {
        return Err(Error::invalid(format!(
            "interlacing requires len(upper) in {{len(lower), len(lower)+1}}, got {} vs {}",
            upper.len(),
            lower.len()
        )));
    }
    for i in 0..lower.len() {
        if upper[i] < lower[i] {
            return Ok(false);
        }
        if i + 1 < upper.len() && lower[i] < upper[i + 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Visits, in lexicographically ascending order, every non-negative signature
/// `nu` of length `target_length` with entries `<= ceiling` such that
/// `previous` interlaces `nu`. `previous` may be empty (no constraint beyond
/// the ceiling). The visitor receives the candidate entries as a slice that is
/// only valid for the duration of the call.
pub(crate) fn for_each_interlacing_upper<F: FnMut(&[i64])>(
    previous: &[i64],
    target_length: usize,
    ceiling: i64,
    f: &mut F,
) {
    debug_assert!(target_length == previous.len() || target_length == previous.len() + 1);
    let mut buf = vec![0i64; target_length];
    fill_upper(previous, ceiling, &mut buf, 0, f);
}

fn fill_upper<F: FnMut(&[i64])>(prev: &[i64], ceiling: i64, buf: &mut [i64], i: usize, f: &mut F) {
    if i == buf.len() {
        f(buf);
        return;
    }
    // nu_i <= nu_{i-1}; nu_i <= prev_{i-1} (chain prev_{i-1} >= nu_i); nu_i >= prev_i or 0.
    let mut hi = if i == 0 { ceiling } else { buf[i - 1] };
    if i >= 1 && i - 1 < prev.len() {
        hi = hi.min(prev[i - 1]);
    }
    let lo = if i < prev.len() { prev[i] } else { 0 };
    for v in lo..=hi {
        buf[i] = v;
        fill_upper(prev, ceiling, buf, i + 1, f);
    }
}

/// Visits every non-negative signature `lam` of length `target_length` with
/// `lam` interlacing `previous` (`lam < previous`), entries implicitly bounded
/// by `previous`. Used when walking a pattern from the top row downwards.
pub(crate) fn for_each_interlacing_lower<F: FnMut(&[i64])>(
    previous: &[i64],
    target_length: usize,
    f: &mut F,
) {
    debug_assert!(target_length == previous.len() || target_length + 1 == previous.len());
    let mut buf = vec![0i64; target_length];
    fill_lower(previous, &mut buf, 0, f);
}

fn fill_lower<F: FnMut(&[i64])>(prev: &[i64], buf: &mut [i64], i: usize, f: &mut F) {
    if i == buf.len() {
        f(buf);
        return;
    }
    // prev_i >= lam_i >= prev_{i+1} (or >= 0 when prev_{i+1} is absent).
    let hi = prev[i];
    let lo = if i + 1 < prev.len() { prev[i + 1] } else { 0 };
    for v in lo..=hi {
        buf[i] = v;
        fill_lower(prev, buf, i + 1, f);
    }
}

/// Streams the non-negative signatures of `target_length` that `previous`
/// interlaces with, entries `<= ceiling`, in lexicographic order.
pub fn iterate_interlacing_rows(
    previous: &Signature,
    target_length: usize,
    ceiling: i64,
) -> Result<Vec<Signature>> {
    iterate_interlacing_entries(previous.entries(), target_length, ceiling)
}

pub(crate) fn iterate_interlacing_entries(
    previous: &[i64],
    target_length: usize,
    ceiling: i64,
) -> Result<Vec<Signature>> {
    if target_length != previous.len() && target_length != previous.len() + 1 {
        return Err(Error::invalid(format!(
            "target_length must be len(previous) or len(previous)+1, got {} vs {}",
            target_length,
            previous.len()
        )));
    }
    if ceiling < 0 {
        return Err(Error::invalid("ceiling must be >= 0"));
    }
    let mut out = Vec::new();
    for_each_interlacing_upper(previous, target_length, ceiling, &mut |row| {
        out.push(Signature::from_entries_unchecked(row.to_vec()));
    });
    Ok(out)
}

/// Length of row `i` (1-based) of a half pattern.
pub fn row_length(i: usize) -> usize {
    (i + 1) / 2
}

/// A stack of interlacing signatures; row `i` has length `floor((i+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfPattern {
    rows: Vec<Signature>,
}

impl HalfPattern {
    /// Builds a half pattern from rows, checking shape and interlacing.
    pub fn new(rows: Vec<Signature>) -> Result<Self> {
        let report = validate_half(&rows, false);
        if let Some(v) = report.violations.first() {
            return Err(Error::invalid(v.to_string()));
        }
        Ok(HalfPattern { rows })
    }

    pub fn rows(&self) -> &[Signature] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Row `i`, 1-based.
    pub fn row(&self, i: usize) -> &Signature {
        &self.rows[i - 1]
    }

    /// The odd starter `lambda_i^(2i-1)` (1-based `i`).
    pub fn odd_starter(&self, i: usize) -> i64 {
        *self.rows[2 * i - 2].entries().last().unwrap()
    }
}

/// One invariant violation, with 1-based row/column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "row {}, column {}: {}", self.row, self.column, self.message)
    }
}

/// Outcome of a validation pass: `ok` or the first violation found per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn validate_half(rows: &[Signature], signed_starters: bool) -> ValidationReport {
    let mut violations = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let i = idx + 1;
        let expect = row_length(i);
        if row.len() != expect {
            violations.push(Violation {
                row: i,
                column: 1,
                message: format!("row has length {}, expected {}", row.len(), expect),
            });
            continue;
        }
        // In a signed (orthogonal) pattern the interlacing is checked on the
        // absolute-value-adjusted rows; the starter bounds are exactly the
        // abs-adjusted interlacing inequalities.
        let cur = if signed_starters { abs_adjusted(rows, idx) } else { row.entries().to_vec() };
        if !is_non_increasing(&cur) {
            let col = cur.windows(2).position(|w| w[0] < w[1]).unwrap() + 1;
            violations.push(Violation {
                row: i,
                column: col,
                message: "entries are not non-increasing".into(),
            });
            continue;
        }
        if idx > 0 {
            let prev = if signed_starters { abs_adjusted(rows, idx - 1) } else { rows[idx - 1].entries().to_vec() };
            if prev.len() == cur.len() || prev.len() + 1 == cur.len() {
                if !interlaces_entries(&prev, &cur).unwrap_or(false) {
                    violations.push(Violation {
                        row: i,
                        column: 1,
                        message: format!("row does not interlace with row {}", i - 1),
                    });
                    continue;
                }
            } else {
                violations.push(Violation {
                    row: i,
                    column: 1,
                    message: "row length does not follow the half-pattern shape".into(),
                });
                continue;
            }
        }
    }
    ValidationReport { violations }
}

fn abs_adjusted(rows: &[Signature], idx: usize) -> Vec<i64> {
    let mut v = rows[idx].entries().to_vec();
    if (idx + 1) % 2 == 1 {
        let last = v.len() - 1;
        v[last] = v[last].abs();
    }
    v
}

/// Validates the rows of a would-be symplectic pattern: half-pattern shape,
/// interlacing, and non-negativity of every entry. Nothing is thrown; the
/// report pinpoints the first violation per row.
pub fn validate_symplectic(rows: &[Signature]) -> ValidationReport {
    let mut report = validate_half(rows, false);
    if rows.len() % 2 != 0 {
        report.violations.insert(
            0,
            Violation { row: rows.len(), column: 1, message: "symplectic pattern length must be even".into() },
        );
    }
    for (idx, row) in rows.iter().enumerate() {
        if report.violations.iter().any(|v| v.row == idx + 1) {
            continue;
        }
        if let Some(col) = row.entries().iter().position(|&e| e < 0) {
            report.violations.push(Violation {
                row: idx + 1,
                column: col + 1,
                message: format!("entry {} is negative", row.entries()[col]),
            });
        }
    }
    report.violations.sort_by_key(|v| (v.row, v.column));
    report
}

/// Validates the rows of a would-be orthogonal pattern: shape, interlacing of
/// the absolute-value-adjusted rows, non-negativity of the non-starters, and
/// the odd-starter bounds.
pub fn validate_orthogonal(rows: &[Signature]) -> ValidationReport {
    let mut report = validate_half(rows, true);
    if rows.len() % 2 != 1 {
        report.violations.insert(
            0,
            Violation { row: rows.len(), column: 1, message: "orthogonal pattern length must be odd".into() },
        );
    }
    for (idx, row) in rows.iter().enumerate() {
        if report.violations.iter().any(|v| v.row == idx + 1) {
            continue;
        }
        let i = idx + 1;
        let entries = row.entries();
        let starter_cols = if i % 2 == 1 { entries.len() - 1 } else { entries.len() };
        if let Some(col) = entries[..starter_cols].iter().position(|&e| e < 0) {
            report.violations.push(Violation {
                row: i,
                column: col + 1,
                message: format!("non-starter entry {} is negative", entries[col]),
            });
            continue;
        }
        if i % 2 == 1 {
            // |starter| <= next even row's last entry and <= previous even
            // row's last entry (whichever neighbours exist).
            let s = *entries.last().unwrap();
            let mut bound = i64::MAX;
            if idx > 0 {
                bound = bound.min(*rows[idx - 1].entries().last().unwrap());
            }
            if idx + 1 < rows.len() {
                bound = bound.min(*rows[idx + 1].entries().last().unwrap());
            }
            if bound != i64::MAX && s.abs() > bound {
                report.violations.push(Violation {
                    row: i,
                    column: entries.len(),
                    message: format!("odd starter {s} exceeds the bound |{s}| <= {bound}"),
                });
            }
        }
    }
    report.violations.sort_by_key(|v| (v.row, v.column));
    report
}

/// A half pattern of even length with non-negative integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticPattern {
    base: HalfPattern,
}

impl SymplecticPattern {
    /// Validates eagerly; operations on the pattern may assume validity.
    pub fn new(rows: Vec<Signature>) -> Result<Self> {
        let report = validate_symplectic(&rows);
        if let Some(v) = report.violations.first() {
            return Err(Error::invalid(format!("invalid symplectic pattern: {v}")));
        }
        Ok(SymplecticPattern { base: HalfPattern { rows } })
    }

    pub fn base(&self) -> &HalfPattern {
        &self.base
    }

    pub fn rows(&self) -> &[Signature] {
        self.base.rows()
    }

    /// The top row, which indexes the Schur polynomial set `SP_nu`.
    pub fn top_row(&self) -> &Signature {
        self.base.rows().last().unwrap()
    }

    /// Number of weight variables (half the pattern length).
    pub fn variables(&self) -> usize {
        self.base.len() / 2
    }
}

/// A half pattern of odd length whose odd starters may be negative within the
/// stated bounds; all other entries are non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalPattern {
    base: HalfPattern,
}

impl OrthogonalPattern {
    /// Validates eagerly; operations on the pattern may assume validity.
    pub fn new(rows: Vec<Signature>) -> Result<Self> {
        let report = validate_orthogonal(&rows);
        if let Some(v) = report.violations.first() {
            return Err(Error::invalid(format!("invalid orthogonal pattern: {v}")));
        }
        Ok(OrthogonalPattern { base: HalfPattern { rows } })
    }

    pub fn base(&self) -> &HalfPattern {
        &self.base
    }

    pub fn rows(&self) -> &[Signature] {
        self.base.rows()
    }

    pub fn top_row(&self) -> &Signature {
        self.base.rows().last().unwrap()
    }

    /// Number of weight variables: `(length + 1) / 2`.
    pub fn variables(&self) -> usize {
        (self.base.len() + 1) / 2
    }

    /// The odd starter `lambda_i^(2i-1)`, 1-based `i`.
    pub fn odd_starter(&self, i: usize) -> i64 {
        self.base.odd_starter(i)
    }
}

/// Per-variable weight exponents; the pattern weight is `prod x_i^(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightExponent {
    pub exponents: Vec<i64>,
}

/// Exponent vector of `w_sp(P)`: `e_i = r(2i) - 2 r(2i-1) + r(2i-2)` where
/// `r(m)` is the sum of row `m` and `r(0) = 0`.
pub fn sp_weight_exponents(p: &SymplecticPattern) -> WeightExponent {
    let sums: Vec<i64> = p.rows().iter().map(|r| r.sum()).collect();
    WeightExponent { exponents: sp_exponents_from_row_sums(&sums) }
}

/// `w_sp` exponents from plain row sums (row 1 first).
pub(crate) fn sp_exponents_from_row_sums(sums: &[i64]) -> Vec<i64> {
    let r = |m: i64| -> i64 {
        if m <= 0 {
            0
        } else {
            sums[(m - 1) as usize]
        }
    };
    let n = sums.len() as i64 / 2;
    (1..=n).map(|i| r(2 * i) - 2 * r(2 * i - 1) + r(2 * i - 2)).collect()
}

/// `w_o` exponents from absolute row sums and per-starter signs
/// (`signs[i-1]` is the sign of the i-th odd starter, `sgn(0) = +1`).
pub(crate) fn o_exponents_from_abs_sums(abs_sums: &[i64], signs: &[i64]) -> Vec<i64> {
    let a = |m: i64| -> i64 {
        if m <= 0 {
            0
        } else {
            abs_sums[(m - 1) as usize]
        }
    };
    let s = |i: usize| -> i64 {
        if i == 0 {
            1
        } else {
            signs[i - 1]
        }
    };
    let n = (abs_sums.len() as i64 + 1) / 2;
    (1..=n)
        .map(|i| {
            let m = i;
            s(i as usize) * s(i as usize - 1) * (a(2 * m - 1) - 2 * a(2 * m - 2) + a(2 * m - 3))
        })
        .collect()
}

/// Exponent vector of `w_o(P)`:
/// `e_i = sgn(s_i) sgn(s_{i-1}) [A(2i-1) - 2 A(2i-2) + A(2i-3)]` where `s_i`
/// is the i-th odd starter (`s_0 = 0`), `A(m)` the absolute row sum, and rows
/// `0`, `-1` are zero.
pub fn o_weight_exponents(p: &OrthogonalPattern) -> WeightExponent {
    let abs_sums: Vec<i64> = p.rows().iter().map(|r| r.abs_sum()).collect();
    let signs: Vec<i64> = (1..=p.variables()).map(|i| sgn(p.odd_starter(i))).collect();
    WeightExponent { exponents: o_exponents_from_abs_sums(&abs_sums, &signs) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(entries: &[i64]) -> Signature {
        Signature::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn interlaces_examples() {
        assert!(interlaces(&sig(&[1]), &sig(&[2, 1])).unwrap());
        assert!(!interlaces(&sig(&[3]), &sig(&[2, 1])).unwrap());
        // equal-length variant: 2 >= 2 >= 1 >= 0
        assert!(interlaces(&sig(&[2, 0]), &sig(&[2, 1])).unwrap());
        // length mismatch outside {0, +1}
        assert!(interlaces(&sig(&[1, 1, 1]), &sig(&[2])).is_err());
    }

    #[test]
    fn iterate_examples() {
        let rows = iterate_interlacing_rows(&sig(&[1]), 2, 1).unwrap();
        assert_eq!(rows, vec![sig(&[1, 0]), sig(&[1, 1])]);

        let empty = Signature { entries: vec![] };
        let rows = iterate_interlacing_entries(empty.entries(), 1, 2).unwrap();
        assert_eq!(rows, vec![sig(&[0]), sig(&[1]), sig(&[2])]);

        let rows = iterate_interlacing_rows(&sig(&[2, 2]), 2, 2).unwrap();
        assert_eq!(rows, vec![sig(&[2, 2])]);
    }

    #[test]
    fn iterate_matches_interlaces_exhaustively() {
        // Round trip for ceiling <= 3 and lengths <= 3: the yielded set is
        // exactly the set of rows the predicate accepts.
        fn all_signatures(len: usize, ceiling: i64) -> Vec<Vec<i64>> {
            let mut out = Vec::new();
            fn rec(buf: &mut Vec<i64>, len: usize, hi: i64, out: &mut Vec<Vec<i64>>) {
                if buf.len() == len {
                    out.push(buf.clone());
                    return;
                }
                for v in 0..=hi {
                    buf.push(v);
                    rec(buf, len, v, out);
                    buf.pop();
                }
            }
            rec(&mut Vec::new(), len, ceiling, &mut out);
            out
        }
        for ceiling in 0..=3i64 {
            for prev_len in 1..=2usize {
                for prev in all_signatures(prev_len, ceiling) {
                    let prev_sig = Signature::new(prev.clone()).unwrap();
                    for target in [prev_len, prev_len + 1] {
                        if target > 3 {
                            continue;
                        }
                        let yielded = iterate_interlacing_rows(&prev_sig, target, ceiling).unwrap();
                        let expected: Vec<Signature> = all_signatures(target, ceiling)
                            .into_iter()
                            .map(|e| Signature::new(e).unwrap())
                            .filter(|nu| interlaces(&prev_sig, nu).unwrap())
                            .collect();
                        assert_eq!(yielded, expected, "prev={prev:?} target={target} ceil={ceiling}");
                    }
                }
            }
        }
    }

    #[test]
    fn validate_symplectic_examples() {
        // Figure 2(a): rows (1),(2),(2,1),(3,2)
        let rows = vec![sig(&[1]), sig(&[2]), sig(&[2, 1]), sig(&[3, 2])];
        assert!(validate_symplectic(&rows).is_ok());

        let zero = vec![sig(&[0]), sig(&[0]), sig(&[0, 0]), sig(&[0, 0])];
        assert!(validate_symplectic(&zero).is_ok());

        let bad = vec![sig(&[2]), sig(&[1]), sig(&[1, 1]), sig(&[1, 1])];
        let report = validate_symplectic(&bad);
        assert!(!report.is_ok());
        assert_eq!(report.violations[0].row, 2);
    }

    #[test]
    fn validate_orthogonal_examples() {
        // Figure 2(b): rows (-1),(1),(2,0),(2,2),(4,2,-2)
        let rows = vec![sig(&[-1]), sig(&[1]), sig(&[2, 0]), sig(&[2, 2]), sig(&[4, 2, -2])];
        assert!(validate_orthogonal(&rows).is_ok());

        let zero = vec![sig(&[0]), sig(&[0]), sig(&[0, 0])];
        assert!(validate_orthogonal(&zero).is_ok());

        let bad = vec![sig(&[-2]), sig(&[1]), sig(&[1, 1])];
        let report = validate_orthogonal(&bad);
        assert!(!report.is_ok());
        assert_eq!(report.violations[0].row, 1);
    }

    #[test]
    fn sp_weights() {
        let p = SymplecticPattern::new(vec![sig(&[1]), sig(&[2]), sig(&[2, 1]), sig(&[3, 2])]).unwrap();
        assert_eq!(sp_weight_exponents(&p).exponents, vec![0, 1]);

        let zero = SymplecticPattern::new(vec![sig(&[0]), sig(&[0]), sig(&[0, 0]), sig(&[0, 0])]).unwrap();
        assert_eq!(sp_weight_exponents(&zero).exponents, vec![0, 0]);

        let n = 5;
        let p = SymplecticPattern::new(vec![sig(&[0]), sig(&[n])]).unwrap();
        assert_eq!(sp_weight_exponents(&p).exponents, vec![n]);
    }

    #[test]
    fn o_weights() {
        let p = OrthogonalPattern::new(vec![sig(&[-1]), sig(&[1]), sig(&[2, 0]), sig(&[2, 2]), sig(&[4, 2, -2])])
            .unwrap();
        assert_eq!(o_weight_exponents(&p).exponents, vec![-1, -1, -2]);

        let zero = OrthogonalPattern::new(vec![sig(&[0]), sig(&[0]), sig(&[0, 0])]).unwrap();
        assert_eq!(o_weight_exponents(&zero).exponents, vec![0, 0]);

        let p = OrthogonalPattern::new(vec![sig(&[-1])]).unwrap();
        assert_eq!(o_weight_exponents(&p).exponents, vec![-1]);
    }

    #[test]
    fn sp_weight_linearity_under_scaling() {
        let rows = vec![sig(&[1]), sig(&[2]), sig(&[2, 1]), sig(&[3, 2])];
        let p = SymplecticPattern::new(rows.clone()).unwrap();
        let base = sp_weight_exponents(&p).exponents;
        for c in 2..=4i64 {
            let scaled: Vec<Signature> = rows
                .iter()
                .map(|r| Signature::new(r.entries().iter().map(|e| c * e).collect()).unwrap())
                .collect();
            let q = SymplecticPattern::new(scaled).unwrap();
            let got = sp_weight_exponents(&q).exponents;
            let want: Vec<i64> = base.iter().map(|e| c * e).collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn o_weight_sign_flip() {
        // Flipping the sign of a nonzero odd starter changes the exponents as
        // dictated by the sign products.
        let plus = OrthogonalPattern::new(vec![sig(&[1]), sig(&[1]), sig(&[2, 1])]).unwrap();
        let minus = OrthogonalPattern::new(vec![sig(&[-1]), sig(&[1]), sig(&[2, 1])]).unwrap();
        let ep = o_weight_exponents(&plus).exponents;
        let em = o_weight_exponents(&minus).exponents;
        // e_1 flips sign; e_2 carries sgn(s_1) so it flips as well.
        assert_eq!(ep[0], -em[0]);
        assert_eq!(ep[1], -em[1]);
    }

    #[test]
    fn negate_last() {
        assert_eq!(sig(&[2, 1]).negate_last().unwrap(), sig(&[2, -1]));
        assert_eq!(sig(&[2, 0]).negate_last().unwrap(), sig(&[2, 0]));
        assert!(sig(&[2, -1]).negate_last().is_err());
    }
}
