//! Symplectic and orthogonal Schur polynomial evaluation, both as weighted
//! pattern sums and through the Weyl determinantal formulas, plus the two
//! classical expressions for Haar averages of products of characteristic
//! polynomials. The two Schur routes and the two average routes cross-check
//! each other numerically.
//!
//! Complex arithmetic is double precision throughout; exactness lives in the
//! counting modules.

use crate::error::{Error, Result};
use crate::numeric::determinant;
use crate::patterns::{self, row_length, sgn, Signature};
use crate::{Complex, Group};
use std::collections::BTreeMap;

/// A determinant or denominator factor below this magnitude triggers the
/// near-singular error: double-precision ratios degrade past this point and
/// the combinatorial path is exact.
pub const GENERICITY_TOL: f64 = 1e-12;

/// Default cap on pattern enumeration nodes for the combinatorial path.
pub const DEFAULT_ENUMERATION_CAP: u64 = 20_000_000;

/// A Schur evaluation request: a non-negative signature and one complex point
/// per signature entry. Determinantal evaluation additionally assumes the
/// points are generic (pairwise distinct, no `x_i = x_j^(-1)`), which is
/// enforced a posteriori by the near-singular guard.
#[derive(Debug, Clone)]
pub struct EvaluationRequest {
    pub signature: Signature,
    pub points: Vec<Complex>,
}

impl EvaluationRequest {
    pub fn new(signature: Signature, points: Vec<Complex>) -> Result<Self> {
        if !signature.is_non_negative() {
            return Err(Error::invalid("Schur evaluation requires a non-negative signature"));
        }
        if points.len() != signature.len() {
            return Err(Error::invalid(format!(
                "need one point per signature entry: {} vs {}",
                points.len(),
                signature.len()
            )));
        }
        if points.iter().any(|p| !p.re.is_finite() || !p.im.is_finite()) {
            return Err(Error::invalid("points must have finite components"));
        }
        Ok(EvaluationRequest { signature, points })
    }
}

/// Multiset of weight-exponent vectors over all `(2M)`-symplectic patterns
/// with top row `nu`, with multiplicities.
fn sp_weight_multiset(nu: &[i64], cap: u64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let total_rows = 2 * nu.len();
    let mut rows: Vec<Vec<i64>> = vec![nu.to_vec()];
    let mut nodes = 0u64;
    let mut multiset = BTreeMap::new();
    descend_sp(total_rows, &mut rows, &mut nodes, cap, &mut multiset)?;
    Ok(multiset)
}

fn descend_sp(
    total_rows: usize,
    rows: &mut Vec<Vec<i64>>,
    nodes: &mut u64,
    cap: u64,
    multiset: &mut BTreeMap<Vec<i64>, u64>,
) -> Result<()> {
    if rows.len() == total_rows {
        let sums: Vec<i64> = rows.iter().rev().map(|r| r.iter().sum()).collect();
        let e = patterns::sp_exponents_from_row_sums(&sums);
        *multiset.entry(e).or_insert(0) += 1;
        return Ok(());
    }
    // rows holds the top part; the next row below has index total_rows - rows.len().
    let below = total_rows - rows.len();
    let len = row_length(below);
    let prev = rows.last().unwrap().clone();
    let mut candidates = Vec::new();
    patterns::for_each_interlacing_lower(&prev, len, &mut |row| candidates.push(row.to_vec()));
    *nodes += candidates.len() as u64;
    if *nodes > cap {
        return Err(Error::ResourceLimit(format!("Schur enumeration exceeded {cap} nodes")));
    }
    for row in candidates {
        rows.push(row);
        descend_sp(total_rows, rows, nodes, cap, multiset)?;
        rows.pop();
    }
    Ok(())
}

/// Multiset of weight-exponent vectors over the `(2M-1)`-orthogonal patterns
/// with the given signed top row (entries non-negative except possibly the
/// last). Sign freedom of the inner odd starters is expanded here.
fn o_weight_multiset(top: &[i64], cap: u64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let m = top.len();
    let total_rows = 2 * m - 1;
    let top_abs: Vec<i64> = top.iter().map(|e| e.abs()).collect();
    if !top_abs.windows(2).all(|w| w[0] >= w[1]) {
        return Err(Error::invalid("top row is not valid for an orthogonal pattern"));
    }
    let top_sign = sgn(top[m - 1]);
    let mut rows: Vec<Vec<i64>> = vec![top_abs];
    let mut nodes = 0u64;
    let mut multiset = BTreeMap::new();
    descend_o(total_rows, top_sign, &mut rows, &mut nodes, cap, &mut multiset)?;
    Ok(multiset)
}

fn descend_o(
    total_rows: usize,
    top_sign: i64,
    rows: &mut Vec<Vec<i64>>,
    nodes: &mut u64,
    cap: u64,
    multiset: &mut BTreeMap<Vec<i64>, u64>,
) -> Result<()> {
    if rows.len() == total_rows {
        // rows are in top-down order and hold absolute values.
        let abs_sums: Vec<i64> = rows.iter().rev().map(|r| r.iter().sum()).collect();
        let variables = (total_rows + 1) / 2;
        // Starter i sits in row 2i-1 (bottom-up), i.e. rows[total_rows - (2i-1)].
        let starter_abs: Vec<i64> =
            (1..=variables).map(|i| *rows[total_rows - (2 * i - 1)].last().unwrap()).collect();
        let mut signs = vec![1i64; variables];
        signs[variables - 1] = top_sign;
        expand_starter_signs(&starter_abs, &mut signs, 0, variables - 1, &mut |signs| {
            let e = patterns::o_exponents_from_abs_sums(&abs_sums, signs);
            *multiset.entry(e).or_insert(0) += 1;
        });
        return Ok(());
    }
    let below = total_rows - rows.len();
    let len = row_length(below);
    let prev = rows.last().unwrap().clone();
    let mut candidates = Vec::new();
    patterns::for_each_interlacing_lower(&prev, len, &mut |row| candidates.push(row.to_vec()));
    *nodes += candidates.len() as u64;
    if *nodes > cap {
        return Err(Error::ResourceLimit(format!("Schur enumeration exceeded {cap} nodes")));
    }
    for row in candidates {
        rows.push(row);
        descend_o(total_rows, top_sign, rows, nodes, cap, multiset)?;
        rows.pop();
    }
    Ok(())
}

fn expand_starter_signs(
    starter_abs: &[i64],
    signs: &mut Vec<i64>,
    i: usize,
    stop: usize,
    f: &mut impl FnMut(&[i64]),
) {
    if i == stop {
        f(signs);
        return;
    }
    signs[i] = 1;
    expand_starter_signs(starter_abs, signs, i + 1, stop, f);
    if starter_abs[i] > 0 {
        signs[i] = -1;
        expand_starter_signs(starter_abs, signs, i + 1, stop, f);
        signs[i] = 1;
    }
}

fn eval_multiset(multiset: &BTreeMap<Vec<i64>, u64>, points: &[Complex]) -> Complex {
    let mut total = Complex::new(0.0, 0.0);
    for (exponents, &mult) in multiset {
        let mut term = Complex::new(mult as f64, 0.0);
        for (e, x) in exponents.iter().zip(points) {
            term *= x.powi(*e as i32);
        }
        total += term;
    }
    total
}

/// Symplectic Schur polynomial as the exact weighted sum over all
/// `(2M)`-symplectic patterns with top row `nu`.
pub fn sp_schur_combinatorial(req: &EvaluationRequest) -> Result<Complex> {
    sp_schur_combinatorial_capped(req, DEFAULT_ENUMERATION_CAP)
}

pub fn sp_schur_combinatorial_capped(req: &EvaluationRequest, cap: u64) -> Result<Complex> {
    let multiset = sp_weight_multiset(req.signature.entries(), cap)?;
    Ok(eval_multiset(&multiset, &req.points))
}

/// Orthogonal Schur polynomial: the weighted sum over `OP_nu` and `OP_(nu-)`
/// (both branches contribute even when they coincide as sets, matching the
/// determinantal normalization).
pub fn o_schur_combinatorial(req: &EvaluationRequest) -> Result<Complex> {
    o_schur_combinatorial_capped(req, DEFAULT_ENUMERATION_CAP)
}

pub fn o_schur_combinatorial_capped(req: &EvaluationRequest, cap: u64) -> Result<Complex> {
    let nu = req.signature.entries();
    let mut total = Complex::new(0.0, 0.0);
    for branch in [false, true] {
        let mut top = nu.to_vec();
        if branch {
            let last = top.len() - 1;
            top[last] = -top[last];
        }
        let multiset = o_weight_multiset(&top, cap)?;
        total += eval_multiset(&multiset, &req.points);
    }
    Ok(total)
}

fn schur_determinantal(
    nu: &[i64],
    points: &[Complex],
    shift: i64,
    plus: bool,
    prefactor: f64,
) -> Result<Complex> {
    let m = nu.len();
    let build = |exps: &[i64]| -> Vec<Vec<Complex>> {
        points
            .iter()
            .map(|x| {
                exps.iter()
                    .map(|&p| {
                        let a = x.powi(p as i32);
                        let b = x.powi(-(p as i32));
                        if plus {
                            a + b
                        } else {
                            a - b
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let num_exps: Vec<i64> = (0..m).map(|j| nu[j] + (m - j - 1) as i64 + shift).collect();
    let den_exps: Vec<i64> = (0..m).map(|j| (m - j - 1) as i64 + shift).collect();
    let den = determinant(build(&den_exps));
    if den.norm() < GENERICITY_TOL {
        return Err(Error::NearSingular(format!(
            "denominator determinant magnitude {:.3e} is below {GENERICITY_TOL:e}; \
             fall back to the combinatorial path",
            den.norm()
        )));
    }
    let num = determinant(build(&num_exps));
    Ok(num / den * prefactor)
}

/// Symplectic Schur polynomial by the Weyl determinantal formula
/// `det(x_i^(nu_j+M-j+1) - x_i^-(nu_j+M-j+1)) / det(x_i^(M-j+1) - x_i^-(M-j+1))`.
pub fn sp_schur_determinantal(req: &EvaluationRequest) -> Result<Complex> {
    schur_determinantal(req.signature.entries(), &req.points, 1, false, 1.0)
}

/// Orthogonal Schur polynomial by the determinantal formula
/// `2 det(x_i^(nu_j+M-j) + x_i^-(nu_j+M-j)) / det(x_i^(M-j) + x_i^-(M-j))`.
pub fn o_schur_determinantal(req: &EvaluationRequest) -> Result<Complex> {
    schur_determinantal(req.signature.entries(), &req.points, 0, true, 2.0)
}

/// Haar average `E[prod_j det(I - x_j g)]` over `Sp(2N)` or `SO(2N)` via the
/// prefactor times the Schur value at top row `<N^M>`. Tries the
/// determinantal route first and falls back to the combinatorial sum when the
/// points are near-singular.
pub fn bump_gamburd_average(group: Group, n: i64, points: &[Complex]) -> Result<Complex> {
    if n < 0 {
        return Err(Error::invalid("n must be >= 0"));
    }
    if points.is_empty() {
        return Err(Error::invalid("need at least one point"));
    }
    let m = points.len();
    let nu = Signature::constant(n, m);
    let req = EvaluationRequest::new(nu, points.to_vec())?;
    let schur = match group {
        Group::Sp => sp_schur_determinantal(&req)
            .or_else(|e| if matches!(e, Error::NearSingular(_)) { sp_schur_combinatorial(&req) } else { Err(e) })?,
        Group::So => o_schur_determinantal(&req)
            .or_else(|e| if matches!(e, Error::NearSingular(_)) { o_schur_combinatorial(&req) } else { Err(e) })?,
    };
    let prefactor = points.iter().fold(Complex::new(1.0, 0.0), |acc, x| acc * x.powi(n as i32));
    Ok(prefactor * schur)
}

/// The same Haar average through the sign-summed rational expression
/// `(x_1...x_M)^N sum_(eps) prod_j x_j^(eps_j N) / prod (1 - x_i^(-eps_i) x_j^(-eps_j))`
/// with `i <= j` for Sp and `i < j` for SO. Removable singularities are not
/// resolved: a vanishing denominator factor is an error and the caller must
/// perturb the points.
pub fn cfkrs_average(group: Group, n: i64, points: &[Complex]) -> Result<Complex> {
    if n < 0 {
        return Err(Error::invalid("n must be >= 0"));
    }
    if points.is_empty() {
        return Err(Error::invalid("need at least one point"));
    }
    let m = points.len();
    let mut total = Complex::new(0.0, 0.0);
    for mask in 0u32..(1 << m) {
        let eps = |i: usize| -> i64 {
            if mask >> i & 1 == 0 {
                1
            } else {
                -1
            }
        };
        let mut numerator = Complex::new(1.0, 0.0);
        for (j, x) in points.iter().enumerate() {
            numerator *= x.powi((eps(j) * n) as i32);
        }
        let mut denominator = Complex::new(1.0, 0.0);
        for i in 0..m {
            let j_start = match group {
                Group::Sp => i,
                Group::So => i + 1,
            };
            for j in j_start..m {
                let factor = Complex::new(1.0, 0.0)
                    - points[i].powi(-(eps(i) as i32)) * points[j].powi(-(eps(j) as i32));
                if factor.norm() < GENERICITY_TOL {
                    return Err(Error::NearSingular(format!(
                        "denominator factor 1 - x_{}^(-e) x_{}^(-e) has magnitude {:.3e}",
                        i + 1,
                        j + 1,
                        factor.norm()
                    )));
                }
                denominator *= factor;
            }
        }
        total += numerator / denominator;
    }
    let prefactor = points.iter().fold(Complex::new(1.0, 0.0), |acc, x| acc * x.powi(n as i32));
    Ok(prefactor * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn req(nu: &[i64], points: &[Complex]) -> EvaluationRequest {
        EvaluationRequest::new(Signature::new(nu.to_vec()).unwrap(), points.to_vec()).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn assert_close(a: Complex, b: Complex, tol: f64) {
        assert!((a - b).norm() <= tol * (1.0 + b.norm()), "{a} vs {b}");
    }

    #[test]
    fn sp_combinatorial_examples() {
        let v = sp_schur_combinatorial(&req(&[1], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.5, 0.0), 1e-12);

        let v = sp_schur_combinatorial(&req(&[0, 0], &[c(1.3, 0.2), c(0.4, -0.1)])).unwrap();
        assert_close(v, c(1.0, 0.0), 1e-12);

        let phi = std::f64::consts::PI / 3.0;
        let v = sp_schur_combinatorial(&req(&[1], &[Complex::from_polar(1.0, phi)])).unwrap();
        assert_close(v, c(1.0, 0.0), 1e-12); // 2 cos(pi/3)
    }

    #[test]
    fn sp_determinantal_examples() {
        let v = sp_schur_determinantal(&req(&[1], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.5, 0.0), 1e-12);

        let v = sp_schur_determinantal(&req(&[0], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(1.0, 0.0), 1e-12);

        let points = [c(2.0, 0.0), c(3.0, 0.0)];
        let det = sp_schur_determinantal(&req(&[1, 1], &points)).unwrap();
        let comb = sp_schur_combinatorial(&req(&[1, 1], &points)).unwrap();
        assert_close(det, comb, 1e-9);
    }

    #[test]
    fn o_combinatorial_examples() {
        let v = o_schur_combinatorial(&req(&[1], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.5, 0.0), 1e-12);

        // Both zero branches contribute for nu = (0).
        let v = o_schur_combinatorial(&req(&[0], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.0, 0.0), 1e-12);

        let v = o_schur_combinatorial(&req(&[1], &[Complex::from_polar(1.0, std::f64::consts::FRAC_PI_2)]))
            .unwrap();
        assert!(v.norm() < 1e-12); // 2 cos(pi/2)
    }

    #[test]
    fn o_determinantal_examples() {
        let v = o_schur_determinantal(&req(&[1], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.5, 0.0), 1e-12);

        let v = o_schur_determinantal(&req(&[0], &[c(2.0, 0.0)])).unwrap();
        assert_close(v, c(2.0, 0.0), 1e-12);
    }

    #[test]
    fn schur_cross_check_sweep() {
        // Combinatorial and determinantal evaluations agree within 1e-9
        // relative for all nu with entries <= 4, M <= 3, at random generic
        // points with |x| in [0.3, 3].
        let mut rng = StdRng::seed_from_u64(0x5EED_0001);
        for m in 1..=3usize {
            for nu in signatures_up_to(4, m) {
                for _ in 0..3 {
                    let points: Vec<Complex> = (0..m)
                        .map(|_| {
                            let r = rng.gen_range(0.3..3.0);
                            let phi = rng.gen_range(0.1..std::f64::consts::PI - 0.1);
                            Complex::from_polar(r, phi)
                        })
                        .collect();
                    let r = req(&nu, &points);
                    let a = sp_schur_combinatorial(&r).unwrap();
                    let b = sp_schur_determinantal(&r).unwrap();
                    assert_close(a, b, 1e-9);
                    let a = o_schur_combinatorial(&r).unwrap();
                    let b = o_schur_determinantal(&r).unwrap();
                    assert_close(a, b, 1e-9);
                }
            }
        }
    }

    fn signatures_up_to(max: i64, len: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        fn rec(buf: &mut Vec<i64>, len: usize, hi: i64, out: &mut Vec<Vec<i64>>) {
            if buf.len() == len {
                out.push(buf.clone());
                return;
            }
            for v in (0..=hi).rev() {
                buf.push(v);
                rec(buf, len, v, out);
                buf.pop();
            }
        }
        rec(&mut Vec::new(), len, max, &mut out);
        out
    }

    #[test]
    fn bump_gamburd_examples() {
        let v = bump_gamburd_average(Group::Sp, 1, &[c(0.5, 0.0)]).unwrap();
        assert_close(v, c(1.25, 0.0), 1e-12);

        let v = bump_gamburd_average(Group::Sp, 0, &[c(0.5, 0.0)]).unwrap();
        assert_close(v, c(1.0, 0.0), 1e-12);

        let bg = bump_gamburd_average(Group::So, 1, &[c(0.5, 0.0)]).unwrap();
        let cf = cfkrs_average(Group::So, 1, &[c(0.5, 0.0)]).unwrap();
        assert_close(bg, cf, 1e-9);
    }

    #[test]
    fn cfkrs_examples() {
        let v = cfkrs_average(Group::Sp, 1, &[c(0.5, 0.0)]).unwrap();
        assert_close(v, c(1.25, 0.0), 1e-12);

        let v = cfkrs_average(Group::Sp, 0, &[c(0.5, 0.0)]).unwrap();
        assert_close(v, c(1.0, 0.0), 1e-12);

        let points = [c(0.3, 0.0), c(0.7, 0.0)];
        let bg = bump_gamburd_average(Group::So, 2, &points).unwrap();
        let cf = cfkrs_average(Group::So, 2, &points).unwrap();
        assert_close(bg, cf, 1e-9);
    }

    #[test]
    fn averages_cross_check_sweep() {
        // Bump-Gamburd equals CFKRS within 1e-9 relative for M <= 4, N <= 3.
        let mut rng = StdRng::seed_from_u64(0x5EED_0002);
        for m in 1..=4usize {
            for n in 0..=3i64 {
                for _ in 0..3 {
                    let points: Vec<Complex> = (0..m)
                        .map(|_| {
                            let r = rng.gen_range(0.4..2.2);
                            let phi = rng.gen_range(0.15..2.9);
                            Complex::from_polar(r, phi)
                        })
                        .collect();
                    let bg = bump_gamburd_average(Group::Sp, n, &points).unwrap();
                    let cf = cfkrs_average(Group::Sp, n, &points).unwrap();
                    assert_close(bg, cf, 1e-9);
                    let bg = bump_gamburd_average(Group::So, n, &points).unwrap();
                    let cf = cfkrs_average(Group::So, n, &points).unwrap();
                    assert_close(bg, cf, 1e-9);
                }
            }
        }
    }

    #[test]
    fn reality_for_conjugate_pairs() {
        let mut rng = StdRng::seed_from_u64(0x5EED_0003);
        for _ in 0..5 {
            let z = Complex::from_polar(rng.gen_range(0.5..1.8), rng.gen_range(0.2..2.7));
            let points = [z, z.conj()];
            for group in [Group::Sp, Group::So] {
                for n in 1..=2 {
                    let bg = bump_gamburd_average(group, n, &points).unwrap();
                    assert!(bg.im.abs() < 1e-9, "{group} bg at {z}: {bg}");
                    let cf = cfkrs_average(group, n, &points).unwrap();
                    assert!(cf.im.abs() < 1e-9, "{group} cf at {z}: {cf}");
                }
            }
        }
    }

    #[test]
    fn unit_circle_symmetry() {
        // sp at e^(i phi) equals the conjugate of its value at e^(-i phi).
        for phi in [0.3, 1.1, 2.0] {
            let plus = sp_schur_combinatorial(&req(&[2], &[Complex::from_polar(1.0, phi)])).unwrap();
            let minus = sp_schur_combinatorial(&req(&[2], &[Complex::from_polar(1.0, -phi)])).unwrap();
            assert_close(plus, minus.conj(), 1e-12);
        }
    }

    #[test]
    fn near_singular_errors() {
        // x = 1 collapses the symplectic denominator determinant.
        let r = req(&[1], &[c(1.0, 0.0)]);
        assert!(matches!(sp_schur_determinantal(&r), Err(Error::NearSingular(_))));

        // x_1 x_2 = 1 collapses a CFKRS factor.
        let points = [c(2.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(cfkrs_average(Group::Sp, 1, &points), Err(Error::NearSingular(_))));

        // bump_gamburd falls back to the combinatorial path at x = 1:
        // sp_<1>(1) = 1 + 1 = 2, prefactor 1.
        let v = bump_gamburd_average(Group::Sp, 1, &[c(1.0, 0.0)]).unwrap();
        assert_close(v, c(2.0, 0.0), 1e-12);
    }

    #[test]
    fn enumeration_cap() {
        let r = req(&[4, 4, 4], &[c(1.1, 0.0), c(0.9, 0.1), c(0.7, 0.2)]);
        assert!(matches!(
            sp_schur_combinatorial_capped(&r, 10),
            Err(Error::ResourceLimit(_))
        ));
    }
}
