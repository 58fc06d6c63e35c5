//! Eigendecompositions for Hermitian and unitary matrices, and the matrix
//! exponential built on top of them.
//!
//! The Hermitian solver is a cyclic complex Jacobi iteration: at the
//! dimensions this crate works at (a few to a few dozen) it reaches residuals
//! near machine precision in a handful of sweeps and is fully deterministic.
//! Unitary (more generally normal) matrices are diagonalized through their
//! commuting Hermitian parts `(W + W^dag)/2` and `(W - W^dag)/(2i)`: the first
//! is diagonalized outright, then the second is rediagonalized inside each
//! (near-)degenerate eigenspace of the first.

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::matrix::SquareComplexMatrix;
use crate::phase::wrap_phase;

/// Hermiticity tolerance (scaled by entry size) for decomposition inputs.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Unitarity tolerance for `unitary_eig` inputs.
pub const UNITARY_TOL: f64 = 1e-9;
/// Phase distance below which unitary eigenspaces are treated as degenerate.
pub const PHASE_GROUP_TOL: f64 = 1e-8;

/// Eigenvalue gap under which eigenspaces of the Hermitian part are merged
/// before the second diagonalization pass. See `unitary_eig`.
const CLUSTER_TOL: f64 = 1e-10;

/// Result of a Hermitian eigendecomposition: `values` ascending, `vectors`
/// holding the matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: SquareComplexMatrix,
}

/// Result of a unitary eigendecomposition: `phases` in `(-pi, pi]` ascending,
/// `vectors` holding the matching orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct UnitaryEig {
    pub phases: Vec<f64>,
    pub vectors: SquareComplexMatrix,
}

/// Diagonalize a Hermitian matrix.
///
/// Rejects inputs whose asymmetry `max |H - H^dag|` exceeds `1e-12` (scaled
/// by the largest entry), naming the offending asymmetry in the error.
pub fn hermitian_eig(h: &SquareComplexMatrix) -> Result<HermitianEig> {
    h.check_hermitian(HERMITIAN_TOL)?;
    Ok(jacobi_hermitian(h))
}

/// Jacobi iteration without the Hermiticity gate, for internal callers that
/// construct exactly Hermitian inputs.
fn jacobi_hermitian(h: &SquareComplexMatrix) -> HermitianEig {
    let n = h.dim();
    let mut a = h.clone();
    let mut v = SquareComplexMatrix::identity(n);

    if n > 1 {
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        let tol = 1e-15 * scale;
        // Cyclic sweeps; quadratic convergence makes ~60 a generous cap.
        for _ in 0..60 {
            let mut off = 0.0_f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a[(p, q)].norm());
                }
            }
            if off <= tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = SquareComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        let fixed = gauge_fixed(&v.column(src));
        for row in 0..n {
            vectors[(row, col)] = fixed[row];
        }
    }
    HermitianEig { values, vectors }
}

/// One complex Jacobi rotation zeroing the `(p, q)` entry.
fn rotate(a: &mut SquareComplexMatrix, v: &mut SquareComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // Pull the phase out of the pivot so the 2x2 block becomes real
    // symmetric, then apply the classic symmetric Jacobi rotation.
    let phase = apq / mag; // e^{i alpha}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.dim();
    let se_m = phase.conj() * s; // s * e^{-i alpha}
    let ce_m = phase.conj() * c; // c * e^{-i alpha}
    let se_p = phase * s; // s * e^{+i alpha}
    let ce_p = phase * c; // c * e^{+i alpha}

    // A <- U^dag A U, columns first then rows.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c - aiq * se_m;
        a[(i, q)] = aip * s + aiq * ce_m;
    }
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c - aqj * se_p;
        a[(q, j)] = apj * s + aqj * ce_p;
    }
    // Clamp the pivot pair to the exact fixed point of the rotation.
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * se_m;
        v[(i, q)] = vip * s + viq * ce_m;
    }
}

/// Rotate a vector's global phase so its largest-modulus entry is real and
/// positive. Keeps eigenvector output deterministic.
fn gauge_fixed(column: &[C64]) -> Vec<C64> {
    let mut best = 0usize;
    let mut best_mag = -1.0_f64;
    for (i, z) in column.iter().enumerate() {
        let m = z.norm();
        if m > best_mag + 1e-14 {
            best_mag = m;
            best = i;
        }
    }
    let z = column[best];
    let m = z.norm();
    if m == 0.0 {
        return column.to_vec();
    }
    let phase = z.conj() / m;
    column.iter().map(|w| w * phase).collect()
}

/// `exp(-i H t)` through the eigendecomposition of Hermitian `H`.
pub fn evolve_exp(h: &SquareComplexMatrix, t: f64) -> Result<SquareComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(exp_from_eig(&eig, t))
}

/// `exp(-i H t)` from a precomputed eigendecomposition of `H`.
pub fn exp_from_eig(eig: &HermitianEig, t: f64) -> SquareComplexMatrix {
    let n = eig.vectors.dim();
    let phases: Vec<C64> = eig
        .values
        .iter()
        .map(|&lambda| C64::from_polar(1.0, -lambda * t))
        .collect();
    let v = &eig.vectors;
    SquareComplexMatrix::from_fn(n, |i, j| {
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
        }
        acc
    })
}

/// Diagonalize a unitary matrix, returning principal-value eigenphases in
/// `(-pi, pi]` sorted ascending with orthonormal eigenvectors.
///
/// Phases closer than `1e-8` are treated as one eigenspace and the vectors
/// re-orthonormalized inside it.
pub fn unitary_eig(w: &SquareComplexMatrix) -> Result<UnitaryEig> {
    w.check_unitary(UNITARY_TOL)?;
    let n = w.dim();
    let wd = w.adjoint();
    let re_part = w.add(&wd)?.scale_re(0.5);
    let im_part = w.sub(&wd)?.scale(C64::new(0.0, -0.5));

    let base = jacobi_hermitian(&re_part);
    let mut vectors = base.vectors.clone();

    // Rediagonalize the antisymmetric part inside each (near-)degenerate
    // eigenspace of the symmetric part. Gaps below CLUSTER_TOL mean the
    // first pass cannot have resolved the subspace reliably.
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && (base.values[end] - base.values[end - 1]).abs() <= CLUSTER_TOL {
            end += 1;
        }
        if end - start > 1 {
            rediagonalize_block(&mut vectors, &im_part, start, end);
        }
        start = end;
    }

    // Rayleigh-quotient phases off the two Hermitian parts.
    let mut pairs: Vec<(f64, Vec<C64>)> = (0..n)
        .map(|k| {
            let col = vectors.column(k);
            let cos_part = rayleigh(&re_part, &col);
            let sin_part = rayleigh(&im_part, &col);
            (wrap_phase(sin_part.atan2(cos_part)), gauge_fixed(&col))
        })
        .collect();

    pairs.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then_with(|| lex_real(&a.1, &b.1))
    });

    let phases: Vec<f64> = pairs.iter().map(|(p, _)| *p).collect();
    let mut out = SquareComplexMatrix::zeros(n);
    for (col, (_, vec)) in pairs.iter().enumerate() {
        for row in 0..n {
            out[(row, col)] = vec[row];
        }
    }

    // Tighten orthonormality inside phase-degenerate groups.
    for group in phase_groups(&phases, PHASE_GROUP_TOL) {
        gram_schmidt_columns(&mut out, &group);
    }

    Ok(UnitaryEig {
        phases,
        vectors: out,
    })
}

/// Largest eigen-residual `max_k ||W v_k - e^{i phi_k} v_k||_2`.
pub fn unitary_eig_residual(w: &SquareComplexMatrix, eig: &UnitaryEig) -> f64 {
    let n = w.dim();
    let mut worst = 0.0_f64;
    for k in 0..n {
        let col = eig.vectors.column(k);
        let wv = w.mul_vec(&col).unwrap();
        let phase = C64::from_polar(1.0, eig.phases[k]);
        let res: f64 = wv
            .iter()
            .zip(&col)
            .map(|(a, b)| (a - b * phase).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(res);
    }
    worst
}

/// Largest eigen-residual `max_k ||H v_k - lambda_k v_k||_2`.
pub fn hermitian_eig_residual(h: &SquareComplexMatrix, eig: &HermitianEig) -> f64 {
    let n = h.dim();
    let mut worst = 0.0_f64;
    for k in 0..n {
        let col = eig.vectors.column(k);
        let hv = h.mul_vec(&col).unwrap();
        let res: f64 = hv
            .iter()
            .zip(&col)
            .map(|(a, b)| (a - b * eig.values[k]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(res);
    }
    worst
}

fn rayleigh(m: &SquareComplexMatrix, v: &[C64]) -> f64 {
    let mv = m.mul_vec(v).unwrap();
    let acc: C64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
    acc.re
}

fn lex_real(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap() {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Project `im_part` onto the column subspace `[start, end)` of `vectors`,
/// diagonalize the small block, and rotate those columns accordingly.
fn rediagonalize_block(
    vectors: &mut SquareComplexMatrix,
    im_part: &SquareComplexMatrix,
    start: usize,
    end: usize,
) {
    let n = vectors.dim();
    let m = end - start;
    let cols: Vec<Vec<C64>> = (start..end).map(|k| vectors.column(k)).collect();
    let mapped: Vec<Vec<C64>> = cols.iter().map(|c| im_part.mul_vec(c).unwrap()).collect();
    let block = SquareComplexMatrix::from_fn(m, |i, j| {
        cols[i]
            .iter()
            .zip(&mapped[j])
            .map(|(a, b)| a.conj() * b)
            .sum()
    });
    // The projected block is Hermitian up to rounding; symmetrize exactly.
    let block = block.add(&block.adjoint()).unwrap().scale_re(0.5);
    let sub = jacobi_hermitian(&block);
    for row in 0..n {
        for new in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for (old, col) in cols.iter().enumerate() {
                acc += col[row] * sub.vectors[(old, new)];
            }
            vectors[(row, start + new)] = acc;
        }
    }
}

/// Group sorted phases whose circular distance is within `tol`, merging the
/// group at `+pi` with the group at `-pi` when they meet across the seam.
fn phase_groups(phases: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let n = phases.len();
    if n == 0 {
        return Vec::new();
    }
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for k in 1..n {
        if wrap_phase(phases[k] - phases[k - 1]).abs() <= tol {
            groups.last_mut().unwrap().push(k);
        } else {
            groups.push(vec![k]);
        }
    }
    if groups.len() > 1 {
        let seam = wrap_phase(phases[0] - phases[n - 1]).abs();
        if seam <= tol {
            let last = groups.pop().unwrap();
            groups[0].splice(0..0, last);
        }
    }
    groups
}

/// Modified Gram-Schmidt over the listed columns, in place.
fn gram_schmidt_columns(m: &mut SquareComplexMatrix, cols: &[usize]) {
    let n = m.dim();
    for (pos, &j) in cols.iter().enumerate() {
        let mut v = m.column(j);
        for &earlier in &cols[..pos] {
            let e = m.column(earlier);
            let proj: C64 = e.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for i in 0..n {
                v[i] -= proj * e[i];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for i in 0..n {
                m[(i, j)] = v[i] / norm;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix::SquareComplexMatrix as M;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_matrix_eigensystem() {
        let eig = hermitian_eig(&M::zeros(2)).unwrap();
        assert_eq!(eig.values, vec![0.0, 0.0]);
        assert!(eig.vectors.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_sorted_ascending() {
        let h = M::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let eig = hermitian_eig(&h).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pauli_x_eigensystem() {
        let eig = hermitian_eig(&M::pauli_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
        let inv = 1.0 / 2.0_f64.sqrt();
        // lambda = -1 vector is (1, -1)/sqrt2 up to phase; gauge fixing makes
        // the first entry real positive.
        assert!((eig.vectors[(0, 0)].re - inv).abs() < 1e-12);
        assert!((eig.vectors[(1, 0)].re + inv).abs() < 1e-12);
        assert!((eig.vectors[(0, 1)].re - inv).abs() < 1e-12);
        assert!((eig.vectors[(1, 1)].re - inv).abs() < 1e-12);
        assert!(hermitian_eig_residual(&M::pauli_x(), &eig) < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = M::zeros(3);
        m[(0, 1)] = c(0.5, 0.0);
        m[(1, 0)] = c(0.4, 0.0);
        match hermitian_eig(&m) {
            Err(Error::NotHermitian { max_asymmetry, .. }) => {
                assert!((max_asymmetry - 0.1).abs() < 1e-12)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn evolve_exp_pauli_z_quarter_turn() {
        let u = evolve_exp(&M::pauli_z(), FRAC_PI_2).unwrap();
        let expect = M::new(2, vec![c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert!(u.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn evolve_exp_zero_time_is_identity() {
        let h = M::pauli_y();
        let u = evolve_exp(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&M::identity(2)) < 1e-13);
    }

    #[test]
    fn evolve_exp_pauli_x_half_turn() {
        let u = evolve_exp(&M::pauli_x(), PI).unwrap();
        let minus_id = M::identity(2).scale_re(-1.0);
        assert!(u.max_abs_diff(&minus_id) < 1e-12);
    }

    #[test]
    fn unitary_eig_identity() {
        let eig = unitary_eig(&M::identity(3)).unwrap();
        for p in &eig.phases {
            assert!(p.abs() < 1e-12);
        }
        assert!(unitary_eig_residual(&M::identity(3), &eig) < 1e-12);
    }

    #[test]
    fn unitary_eig_diagonal_phases() {
        let w = M::new(
            2,
            vec![
                C64::from_polar(1.0, FRAC_PI_4),
                c(0.0, 0.0),
                c(0.0, 0.0),
                C64::from_polar(1.0, -FRAC_PI_4),
            ],
        )
        .unwrap();
        let eig = unitary_eig(&w).unwrap();
        assert!((eig.phases[0] + FRAC_PI_4).abs() < 1e-12);
        assert!((eig.phases[1] - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn unitary_eig_rejects_non_unitary() {
        let m = M::identity(2).scale_re(1.1);
        assert!(matches!(unitary_eig(&m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn unitary_eig_minus_identity_phase_is_plus_pi() {
        let w = M::identity(2).scale_re(-1.0);
        let eig = unitary_eig(&w).unwrap();
        for p in &eig.phases {
            assert!((p - PI).abs() < 1e-12, "expected +pi, got {p}");
        }
    }
}
