//! Seeded generators of exact test data: rational matrices, skew forms of
//! prescribed rank, and symplectic matrices built from transvections.

use rand::Rng;

use crate::free_module::QMatrix;
use crate::scalar::Rational;

/// Rational `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ 3`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(rng.gen_range(-bound..=bound), rng.gen_range(1..=3))
}

pub fn small_integer<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::from(rng.gen_range(-bound..=bound))
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| small_rational(rng, 4))
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Random skew matrix with integer entries and nonzero determinant; `n`
/// must be even.
pub fn random_nondegenerate_skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> QMatrix {
    assert!(n.is_multiple_of(2), "nondegenerate skew forms need even size");
    loop {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = small_integer(rng, 3);
                m[(j, i)] = -&v;
                m[(i, j)] = v;
            }
        }
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Random skew `n×n` matrix of rank exactly `2m`, as `A·J_m·ᵗA` for a random
/// `n×2m` integer matrix `A` of full column rank.
pub fn random_skew_of_rank<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> QMatrix {
    assert!(2 * m <= n, "rank exceeds size");
    let j = QMatrix::standard_symplectic(m);
    loop {
        let a = QMatrix::from_fn(n, 2 * m, |_, _| small_integer(rng, 3));
        let omega = a.mul(&j).mul(&a.transpose());
        if omega.rank() == 2 * m {
            return omega;
        }
    }
}

/// Symplectic transvection `x ↦ x + c·ω(v, x)·v`, i.e. `I + c·v·ᵗv·J`.
pub fn transvection(v: &[Rational], c: &Rational) -> QMatrix {
    let n = v.len();
    let j = QMatrix::standard_symplectic(n / 2);
    let vt_j: Vec<Rational> = (0..n).map(|col| (0..n).map(|k| &v[k] * &j[(k, col)]).sum()).collect();
    QMatrix::from_fn(n, n, |r, col| {
        let delta = if r == col { Rational::one() } else { Rational::zero() };
        delta + c * &(&v[r] * &vt_j[col])
    })
}

/// Product of `factors` random transvections in `Sp(2m, ℚ)`.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, m: usize, factors: usize) -> QMatrix {
    let mut acc = QMatrix::identity(2 * m);
    for _ in 0..factors {
        let v: Vec<Rational> = (0..2 * m).map(|_| small_integer(rng, 2)).collect();
        let c = [Rational::one(), -Rational::one(), Rational::from(2), Rational::new(1, 2)][rng.gen_range(0..4)].clone();
        acc = acc.mul(&transvection(&v, &c));
    }
    acc
}

/// `S·diag(D, D⁻¹)·S⁻¹` with `S` random symplectic: a symplectic matrix
/// whose spectrum is `eigenvalues` together with their reciprocals.
pub fn planted_symplectic<R: Rng + ?Sized>(rng: &mut R, eigenvalues: &[Rational]) -> QMatrix {
    let m = eigenvalues.len();
    let mut diag: Vec<Rational> = eigenvalues.to_vec();
    diag.extend(eigenvalues.iter().map(|l| l.inverse().expect("nonzero eigenvalue")));
    let s = random_symplectic(rng, m, 2 * m + 1);
    let j = QMatrix::standard_symplectic(m);
    let s_inv = j.mul(&s.transpose()).mul(&j).neg();
    s.mul(&QMatrix::diagonal(&diag)).mul(&s_inv)
}

/// Random nonzero rational from a small palette, for planted spectra.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let palette = [
        Rational::from(2),
        Rational::from(3),
        Rational::from(-2),
        Rational::new(2, 3),
        Rational::new(-5, 2),
        Rational::one(),
        -Rational::one(),
        Rational::from(4),
    ];
    palette[rng.gen_range(0..palette.len())].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn is_symplectic(m: &QMatrix) -> bool {
        let j = QMatrix::standard_symplectic(m.rows() / 2);
        m.transpose().mul(&j).mul(m) == j
    }

    #[test]
    fn transvections_are_symplectic() {
        let v = vec![Rational::from(1), Rational::from(-2), Rational::from(3), Rational::from(1)];
        assert!(is_symplectic(&transvection(&v, &Rational::new(3, 2))));
    }

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 1..=3 {
            assert!(is_symplectic(&random_symplectic(&mut rng, m, 5)));
            let omega = random_skew_of_rank(&mut rng, 2 * m + 1, m);
            assert_eq!(omega.rank(), 2 * m);
            assert_eq!(omega.transpose(), omega.neg());
            let nd = random_nondegenerate_skew(&mut rng, 2 * m);
            assert_eq!(nd.rank(), 2 * m);
        }
        let planted = planted_symplectic(&mut rng, &[Rational::from(2), Rational::new(-1, 3)]);
        assert!(is_symplectic(&planted));
        assert_eq!(planted.trace(), Rational::from(2) + Rational::new(1, 2) + Rational::new(-1, 3) + Rational::from(-3));
    }
}
