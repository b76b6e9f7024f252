//! Sandwich transforms `x⊗y⊗z ↦ PxQ⁻¹ ⊗ QyR⁻¹ ⊗ RzP⁻¹`, which fix
//! `S(m,n,p)` and so turn algorithms into algorithms.

use rand::Rng;

use super::map::SegreMap;
use crate::algorithm::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::exact::{rational, ExactMatrix};
use crate::tensor::structure_tensor;

fn square_size(m: &ExactMatrix, name: &str) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::dim(format!("{name} is {}x{}", m.rows(), m.cols())));
    }
    Ok(m.rows())
}

/// Left multiplication by `a` and right multiplication by `b` on row-major
/// coordinates: `vec(aXb) = (a ⊗ bᵀ) vec(X)`.
fn two_sided(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.kron(&b.transpose())
}

/// Builds the sandwich map and checks that it fixes `S(m,n,p)`.
pub fn sandwich(p: &ExactMatrix, q: &ExactMatrix, r: &ExactMatrix) -> Result<SegreMap> {
    let m = square_size(p, "P")?;
    let n = square_size(q, "Q")?;
    let pp = square_size(r, "R")?;
    let p_inv = p.inverse().map_err(|_| Error::Singular("P".into()))?;
    let q_inv = q.inverse().map_err(|_| Error::Singular("Q".into()))?;
    let r_inv = r.inverse().map_err(|_| Error::Singular("R".into()))?;
    let target = structure_tensor(m, n, pp)?;
    let g = SegreMap::new(
        target.shape().clone(),
        vec![0, 1, 2],
        vec![two_sided(p, &q_inv), two_sided(q, &r_inv), two_sided(r, &p_inv)],
    )?;
    if g.apply_dense(&target)? != target {
        return Err(Error::NotFixing(format!("sandwich on S({m},{n},{pp})")));
    }
    Ok(g)
}

/// A uniformly sampled invertible `n×n` matrix with entries in `{-2..2}`.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ExactMatrix {
    loop {
        let data: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
        let m = ExactMatrix::from_i64(n, n, &data).expect("n*n entries");
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random invertible `(P, Q, R)` of sizes `m, n, p` and their sandwich map.
pub fn random_sandwich<R: Rng + ?Sized>(
    mnp: (usize, usize, usize),
    rng: &mut R,
) -> Result<(SegreMap, [ExactMatrix; 3])> {
    let p = random_invertible(mnp.0, rng);
    let q = random_invertible(mnp.1, rng);
    let r = random_invertible(mnp.2, rng);
    let g = sandwich(&p, &q, &r)?;
    Ok((g, [p, q, r]))
}

/// Applies `g` termwise. Fails unless `g` fixes the algorithm's target.
pub fn transform_algorithm(g: &SegreMap, alg: &BilinearAlgorithm) -> Result<BilinearAlgorithm> {
    if g.shape() != alg.shape() {
        return Err(Error::dim(format!(
            "map on {:?}, algorithm on {:?}",
            g.shape().dims(),
            alg.shape().dims()
        )));
    }
    if &g.apply_dense(alg.target())? != alg.target() {
        return Err(Error::NotFixing("map moves the target tensor".into()));
    }
    let terms = alg
        .terms()
        .iter()
        .map(|t| g.apply(t))
        .collect::<Result<Vec<_>>>()?;
    BilinearAlgorithm::new(alg.mnp(), terms)
}

/// Diagonal matrix helper for small examples.
pub fn diagonal(values: &[i64]) -> ExactMatrix {
    let n = values.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m.set(i, i, rational::int(v));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::{naive_algorithm, strassen_algorithm};
    use crate::segre::generators::t2;
    use crate::segre::group::is_automorphism_of;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_sandwich() {
        let i = ExactMatrix::identity(2);
        assert!(sandwich(&i, &i, &i).unwrap().is_identity());
    }

    #[test]
    fn swap_sandwich_gives_new_algorithm() {
        let g = sandwich(&t2(), &t2(), &t2()).unwrap();
        let s = transform_algorithm(&g, &strassen_algorithm()).unwrap();
        assert_eq!(s.terms().len(), 7);
        assert!(s.verify());
    }

    #[test]
    fn diagonal_sandwich_moves_the_terms() {
        let i = ExactMatrix::identity(2);
        let g = sandwich(&diagonal(&[1, 2]), &i, &i).unwrap();
        assert!(!is_automorphism_of(&g, &strassen_algorithm()).unwrap());
        assert!(transform_algorithm(&g, &strassen_algorithm()).unwrap().verify());
    }

    #[test]
    fn rectangular_formats() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for mnp in [(1, 2, 3), (3, 2, 2), (2, 1, 1)] {
            let (g, _) = random_sandwich(mnp, &mut rng).unwrap();
            let alg = transform_algorithm(&g, &naive_algorithm(mnp.0, mnp.1, mnp.2).unwrap()).unwrap();
            assert!(alg.verify());
        }
    }

    #[test]
    fn singular_rejected() {
        let z = ExactMatrix::from_i64(2, 2, &[1, 1, 1, 1]).unwrap();
        let i = ExactMatrix::identity(2);
        assert!(matches!(sandwich(&i, &z, &i), Err(Error::Singular(_))));
    }

    #[test]
    fn non_fixing_map_rejected() {
        let i = ExactMatrix::identity(4);
        let mut maps = vec![i.clone(), i.clone(), i];
        maps[0] = maps[0].scale(&rational::int(2));
        let g = SegreMap::new(strassen_algorithm().shape().clone(), vec![0, 1, 2], maps).unwrap();
        assert!(matches!(
            transform_algorithm(&g, &strassen_algorithm()),
            Err(Error::NotFixing(_))
        ));
    }
}
