// Fixed-size vector helpers shared by the geometry modules.

pub(crate) fn sub<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] - b[i])
}

pub(crate) fn add<const N: usize>(a: &[f64; N], b: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] + b[i])
}

pub(crate) fn scale<const N: usize>(a: &[f64; N], k: f64) -> [f64; N] {
    a.map(|x| x * k)
}

/// `a + k * v`
pub(crate) fn axpy<const N: usize>(a: &[f64; N], k: f64, v: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| a[i] + k * v[i])
}

pub(crate) fn dot<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sq<const N: usize>(a: &[f64; N]) -> f64 {
    dot(a, a)
}

pub(crate) fn norm<const N: usize>(a: &[f64; N]) -> f64 {
    norm_sq(a).sqrt()
}

pub(crate) fn normalize<const N: usize>(a: &[f64; N]) -> Option<[f64; N]> {
    let n = norm(a);
    (n.is_finite() && n > 0.0).then(|| scale(a, 1.0 / n))
}

/// Normalized rejection of `g` from the line spanned by `n`:
/// `|g - (g.n̂)n̂| / max(|g|, 1)`. Zero when `g` is parallel to `n`.
pub(crate) fn rejection<const N: usize>(g: &[f64; N], n: &[f64; N]) -> f64 {
    let Some(unit) = normalize(n) else {
        return f64::INFINITY;
    };
    let along = dot(g, &unit);
    let rej = axpy(g, -along, &unit);
    norm(&rej) / norm(g).max(1.0)
}

/// Orthonormal basis of the hyperplane `{v : n.v = 0}`.
pub(crate) fn hyperplane_basis<const N: usize>(n: &[f64; N]) -> Vec<[f64; N]> {
    let Some(unit) = normalize(n) else {
        return Vec::new();
    };
    let mut basis: Vec<[f64; N]> = Vec::with_capacity(N.saturating_sub(1));
    // Gram-Schmidt over the coordinate axes, skipping the one most aligned with n.
    for axis in 0..N {
        let mut v = [0.0; N];
        v[axis] = 1.0;
        let mut w = axpy(&v, -dot(&v, &unit), &unit);
        for b in &basis {
            w = axpy(&w, -dot(&w, b), b);
        }
        if norm(&w) > 1e-6 {
            basis.push(normalize(&w).expect("nonzero"));
        }
        if basis.len() + 1 == N {
            break;
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperplane_basis_is_orthonormal_and_orthogonal_to_normal() {
        let n = [0.3, -1.2, 0.7];
        let basis = hyperplane_basis(&n);
        assert_eq!(basis.len(), 2);
        for (i, b) in basis.iter().enumerate() {
            assert!(dot(b, &n).abs() < 1e-12);
            assert!((norm(b) - 1.0).abs() < 1e-12);
            for c in &basis[i + 1..] {
                assert!(dot(b, c).abs() < 1e-12);
            }
        }
        assert_eq!(hyperplane_basis(&[0.0, 2.0]).len(), 1);
    }

    #[test]
    fn rejection_is_zero_for_parallel_and_scale_free() {
        assert_eq!(rejection(&[2.0, 0.0], &[-5.0, 0.0]), 0.0);
        assert!((rejection(&[0.0, 3.0], &[1.0, 0.0]) - 1.0).abs() < 1e-15);
        assert!((rejection(&[0.0, 0.5], &[1.0, 0.0]) - 0.5).abs() < 1e-15);
    }
}
