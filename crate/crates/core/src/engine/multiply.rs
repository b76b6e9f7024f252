//! Naive, recursive Strassen, and algorithm-driven block multiplication.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::matrix::{OperationCounter, RingMatrix};
use super::ring::Ring;
use crate::algorithm::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

/// Row-by-column product. An `n×m` by `m×p` product costs `n·m·p`
/// multiplications and `n·(m-1)·p` additions.
pub fn naive_multiply<R: Ring>(
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    if a.cols() != b.rows() {
        return Err(Error::dim(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (n, m, p) = (a.rows(), a.cols(), b.cols());
    let mut out = RingMatrix::zeros(n, p);
    if m == 0 {
        return Ok(out);
    }
    for i in 0..n {
        for k in 0..p {
            let mut acc = a.get(i, 0).try_mul(b.get(0, k))?;
            for j in 1..m {
                acc = acc.try_add(&a.get(i, j).try_mul(b.get(j, k))?)?;
            }
            out.set(i, k, acc);
        }
    }
    counter.multiplications += (n * m * p) as u64;
    counter.additions += (n * (m - 1) * p) as u64;
    Ok(out)
}

fn check_square_pair<R: Ring>(a: &RingMatrix<R>, b: &RingMatrix<R>, cutoff: usize) -> Result<()> {
    if a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows() {
        return Err(Error::dim(format!(
            "Strassen needs two equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.rows() == 0 {
        return Err(Error::dim("empty matrices"));
    }
    if cutoff == 0 {
        return Err(Error::input("cutoff must be at least 1"));
    }
    Ok(())
}

/// Recursive Strassen product of two `N×N` matrices.
///
/// Inputs are zero-padded to the next power of two; blocks of size at most
/// `cutoff` are multiplied naively. The counter records every operation
/// executed, including those on padding.
pub fn strassen_multiply<R: Ring>(
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    cutoff: usize,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    strassen_with_depth(a, b, cutoff, 0, counter)
}

/// As [`strassen_multiply`], evaluating the seven sub-products of the top
/// `par_depth` recursion levels on the rayon pool. Results and counter totals
/// are identical to the sequential schedule.
pub fn strassen_multiply_parallel<R: Ring>(
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    cutoff: usize,
    par_depth: usize,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    strassen_with_depth(a, b, cutoff, par_depth, counter)
}

fn strassen_with_depth<R: Ring>(
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    cutoff: usize,
    par_depth: usize,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    check_square_pair(a, b, cutoff)?;
    let n = a.rows();
    let size = n.next_power_of_two();
    let (pa, pb) = (a.resized(size, size), b.resized(size, size));
    let c = strassen_rec(&pa, &pb, cutoff, par_depth, counter)?;
    Ok(c.resized(n, n))
}

fn strassen_rec<R: Ring>(
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    cutoff: usize,
    par_depth: usize,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let n = a.rows();
    if n <= cutoff || n == 1 {
        return naive_multiply(a, b, counter);
    }
    let h = n / 2;
    let (a11, a12, a21, a22) = (a.block(0, 0, h), a.block(0, h, h), a.block(h, 0, h), a.block(h, h, h));
    let (b11, b12, b21, b22) = (b.block(0, 0, h), b.block(0, h, h), b.block(h, 0, h), b.block(h, h, h));

    let c = counter;
    // p1 = a11(b12+b22)        p2 = (a11-a12)b22     p3 = (-a21+a22)b11
    // p4 = a22(b11+b21)        p5 = (a11+a22)(b11+b22)
    // p6 = (a11+a21)(b11-b12)  p7 = (a12+a22)(b21-b22)
    let operands = vec![
        (a11.clone(), b12.add(&b22, c)?),
        (a11.sub(&a12, c)?, b22.clone()),
        (a22.sub(&a21, c)?, b11.clone()),
        (a22.clone(), b11.add(&b21, c)?),
        (a11.add(&a22, c)?, b11.add(&b22, c)?),
        (a11.add(&a21, c)?, b11.sub(&b12, c)?),
        (a12.add(&a22, c)?, b21.sub(&b22, c)?),
    ];

    let products: Vec<RingMatrix<R>> = if par_depth > 0 {
        let results = operands
            .into_par_iter()
            .map(|(l, r)| {
                let mut local = OperationCounter::new();
                strassen_rec(&l, &r, cutoff, par_depth - 1, &mut local).map(|p| (p, local))
            })
            .collect::<Result<Vec<_>>>()?;
        results
            .into_iter()
            .map(|(p, local)| {
                c.merge(&local);
                p
            })
            .collect()
    } else {
        operands
            .iter()
            .map(|(l, r)| strassen_rec(l, r, cutoff, 0, c))
            .collect::<Result<Vec<_>>>()?
    };
    let [p1, p2, p3, p4, p5, p6, p7]: [RingMatrix<R>; 7] =
        products.try_into().expect("seven products");

    // c11 = -p2-p4+p5+p7   c12 = p1-p2   c21 = -p3+p4   c22 = -p1-p3+p5-p6
    let c11 = p5.add(&p7, c)?.sub(&p2, c)?.sub(&p4, c)?;
    let c12 = p1.sub(&p2, c)?;
    let c21 = p4.sub(&p3, c)?;
    let c22 = p5.sub(&p1, c)?.sub(&p3, c)?.sub(&p6, c)?;

    let mut out = RingMatrix::zeros(n, n);
    out.set_block(0, 0, &c11);
    out.set_block(0, h, &c12);
    out.set_block(h, 0, &c21);
    out.set_block(h, h, &c22);
    Ok(out)
}

/// Operation counts [`strassen_multiply`] would report for an `n×n` input,
/// obtained by walking the same recursion without doing arithmetic.
pub fn strassen_op_counts(n: usize, cutoff: usize) -> Result<OperationCounter> {
    if n == 0 || cutoff == 0 {
        return Err(Error::input("size and cutoff must be positive"));
    }
    fn walk(n: u64, cutoff: u64) -> OperationCounter {
        if n <= cutoff || n == 1 {
            return OperationCounter {
                multiplications: n * n * n,
                additions: n * (n - 1) * n,
            };
        }
        let h = n / 2;
        let sub = walk(h, cutoff);
        OperationCounter {
            multiplications: 7 * sub.multiplications,
            additions: 7 * sub.additions + 18 * h * h,
        }
    }
    Ok(walk(n.next_power_of_two() as u64, cutoff as u64))
}

fn combine<R: Ring>(
    coeffs: &[Rational],
    blocks: &[RingMatrix<R>],
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let mut acc: Option<RingMatrix<R>> = None;
    for (c, blk) in coeffs.iter().zip(blocks) {
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None if c.is_one() => blk.clone(),
            None => blk.scale(c)?,
            Some(s) if c.is_one() => s.add(blk, counter)?,
            Some(s) if rational::is_negative_one(c) => s.sub(blk, counter)?,
            Some(s) => s.add(&blk.scale(c)?, counter)?,
        });
    }
    acc.ok_or_else(|| Error::Validation("all-zero term factor".into()))
}

type BlockProduct<'a, R> =
    dyn Fn(&RingMatrix<R>, &RingMatrix<R>, &mut OperationCounter) -> Result<RingMatrix<R>> + 'a;

/// One level of the bilinear algorithm over `s×s` blocks: `a` is `m×n`
/// blocks, `b` is `n×p` blocks, the result is `m×p` blocks.
fn apply_blockwise<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    s: usize,
    inner: &BlockProduct<'_, R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let (m, n, p) = alg.mnp();
    let a_blocks: Vec<RingMatrix<R>> = (0..m * n).map(|q| a.block((q / n) * s, (q % n) * s, s)).collect();
    let b_blocks: Vec<RingMatrix<R>> = (0..n * p).map(|q| b.block((q / p) * s, (q % p) * s, s)).collect();
    let mut c_blocks: Vec<Option<RingMatrix<R>>> = vec![None; m * p];
    for term in alg.terms() {
        let left = combine(term.factor(0), &a_blocks, counter)?;
        let right = combine(term.factor(1), &b_blocks, counter)?;
        let prod = inner(&left, &right, counter)?;
        // w lives in M_{p×m}; its (k, i) coordinate feeds output block (i, k).
        for (q, coef) in term.factor(2).iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let (k, i) = (q / m, q % m);
            let slot = &mut c_blocks[i * p + k];
            *slot = Some(match slot.take() {
                None if coef.is_one() => prod.clone(),
                None => prod.scale(coef)?,
                Some(acc) if coef.is_one() => acc.add(&prod, counter)?,
                Some(acc) if rational::is_negative_one(coef) => acc.sub(&prod, counter)?,
                Some(acc) => acc.add(&prod.scale(coef)?, counter)?,
            });
        }
    }
    let mut out = RingMatrix::zeros(m * s, p * s);
    for (q, blk) in c_blocks.into_iter().enumerate() {
        if let Some(blk) = blk {
            out.set_block((q / p) * s, (q % p) * s, &blk);
        }
    }
    Ok(out)
}

fn require_verified(alg: &BilinearAlgorithm) -> Result<()> {
    if !alg.verify() {
        return Err(Error::Unverified(format!(
            "{} terms do not sum to the target",
            alg.terms().len()
        )));
    }
    Ok(())
}

/// `AB = Σ (A,u_i)(B,v_i) w_iᵀ` with ring entries: exactly one ring
/// multiplication per term.
pub(crate) fn execute_entrywise<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let (m, n, p) = alg.mnp();
    if (a.rows(), a.cols(), b.rows(), b.cols()) != (m, n, n, p) {
        return Err(Error::dim(format!(
            "algorithm is for ({m},{n},{p}), got {}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    require_verified(alg)?;
    apply_blockwise(alg, a, b, 1, &|l, r, c| naive_multiply(l, r, c), counter)
}

/// One level of block multiplication driven by `alg`, with naive inner
/// products. Inputs are zero-padded to `(m·s)×(n·s)` and `(n·s)×(p·s)` for the
/// smallest block size `s` that fits; the result is cropped back.
pub fn algorithm_multiply<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    if a.cols() != b.rows() {
        return Err(Error::dim(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.rows() == 0 || a.cols() == 0 || b.cols() == 0 {
        return Err(Error::dim("empty matrices"));
    }
    require_verified(alg)?;
    let (m, n, p) = alg.mnp();
    let s = a.rows().div_ceil(m).max(a.cols().div_ceil(n)).max(b.cols().div_ceil(p));
    let pa = a.resized(m * s, n * s);
    let pb = b.resized(n * s, p * s);
    let c = apply_blockwise(alg, &pa, &pb, s, &|l, r, c| naive_multiply(l, r, c), counter)?;
    Ok(c.resized(a.rows(), b.cols()))
}

/// Fully recursive application of a square-format algorithm `(k,k,k)` to
/// `N×N` inputs with `N` a power of `k`, down to `1×1` blocks.
pub fn algorithm_multiply_recursive<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let (m, n, p) = alg.mnp();
    if m != n || n != p || m < 2 {
        return Err(Error::input(format!(
            "recursive application needs a square format (k,k,k) with k >= 2, got ({m},{n},{p})"
        )));
    }
    let size = a.rows();
    if a.cols() != size || b.rows() != size || b.cols() != size || size == 0 {
        return Err(Error::dim("recursive application needs equal square inputs"));
    }
    let mut t = size;
    while t.is_multiple_of(m) {
        t /= m;
    }
    if t != 1 {
        return Err(Error::input(format!("size {size} is not a power of {m}")));
    }
    require_verified(alg)?;
    recurse_blocks(alg, a, b, counter)
}

fn recurse_blocks<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    let (m, _, _) = alg.mnp();
    let size = a.rows();
    if size == 1 {
        return naive_multiply(a, b, counter);
    }
    apply_blockwise(alg, a, b, size / m, &|l, r, c| recurse_blocks(alg, l, r, c), counter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::{naive_algorithm, strassen_algorithm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ints(n: usize, seed: u64) -> RingMatrix<i64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RingMatrix::from_fn(n, n, |_, _| rng.gen_range(-5..=5))
    }

    fn rect(rows: usize, cols: usize, seed: u64) -> RingMatrix<i64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        RingMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-5..=5))
    }

    fn naive(a: &RingMatrix<i64>, b: &RingMatrix<i64>) -> RingMatrix<i64> {
        naive_multiply(a, b, &mut OperationCounter::new()).unwrap()
    }

    #[test]
    fn naive_identity_counts() {
        let id = RingMatrix::from_vec(2, 2, vec![1i64, 0, 0, 1]).unwrap();
        let mut c = OperationCounter::new();
        assert_eq!(naive_multiply(&id, &id, &mut c).unwrap(), id);
        assert_eq!(c, OperationCounter { multiplications: 8, additions: 4 });
        let one = RingMatrix::from_vec(1, 1, vec![3i64]).unwrap();
        let mut c = OperationCounter::new();
        assert_eq!(naive_multiply(&one, &one, &mut c).unwrap().get(0, 0), &9);
        assert_eq!(c, OperationCounter { multiplications: 1, additions: 0 });
    }

    #[test]
    fn naive_rectangular_counts() {
        let (a, b) = (rect(2, 3, 1), rect(3, 4, 2));
        let mut c = OperationCounter::new();
        naive_multiply(&a, &b, &mut c).unwrap();
        assert_eq!(c, OperationCounter { multiplications: 24, additions: 16 });
        assert!(naive_multiply(&a, &a, &mut c).is_err());
    }

    #[test]
    fn strassen_small_counts() {
        for (n, mults, adds) in [(1, 1, 0), (2, 7, 18), (8, 343, 1674)] {
            let mut c = OperationCounter::new();
            let (a, b) = (ints(n, 3), ints(n, 4));
            assert_eq!(strassen_multiply(&a, &b, 1, &mut c).unwrap(), naive(&a, &b));
            assert_eq!(c, OperationCounter { multiplications: mults, additions: adds });
            assert_eq!(strassen_op_counts(n, 1).unwrap(), c);
        }
    }

    #[test]
    fn strassen_pads_odd_sizes() {
        for n in [3, 5, 6, 7, 9] {
            let (a, b) = (ints(n, n as u64), ints(n, 100 + n as u64));
            let mut c = OperationCounter::new();
            assert_eq!(strassen_multiply(&a, &b, 2, &mut c).unwrap(), naive(&a, &b));
            assert_eq!(strassen_op_counts(n, 2).unwrap(), c);
        }
    }

    #[test]
    fn strassen_rejects_bad_input() {
        let mut c = OperationCounter::new();
        assert!(strassen_multiply(&rect(2, 3, 0), &rect(3, 2, 0), 1, &mut c).is_err());
        assert!(strassen_multiply(&ints(2, 0), &ints(2, 0), 0, &mut c).is_err());
    }

    #[test]
    fn strassen_overflow_is_reported() {
        let big = RingMatrix::from_vec(2, 2, vec![i64::MAX; 4]).unwrap();
        let mut c = OperationCounter::new();
        assert!(matches!(
            strassen_multiply(&big, &big, 1, &mut c),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn parallel_matches_sequential() {
        let (a, b) = (ints(16, 7), ints(16, 8));
        let mut cs = OperationCounter::new();
        let mut cp = OperationCounter::new();
        let s = strassen_multiply(&a, &b, 2, &mut cs).unwrap();
        let p = strassen_multiply_parallel(&a, &b, 2, 2, &mut cp).unwrap();
        assert_eq!(s, p);
        assert_eq!(cs, cp);
    }

    #[test]
    fn algorithm_multiply_blocks() {
        let strassen = strassen_algorithm();
        let (a, b) = (ints(4, 11), ints(4, 12));
        let mut c = OperationCounter::new();
        assert_eq!(algorithm_multiply(&strassen, &a, &b, &mut c).unwrap(), naive(&a, &b));
        assert_eq!(c.multiplications, 7 * 8);

        let naive222 = naive_algorithm(2, 2, 2).unwrap();
        let (a, b) = (ints(2, 13), ints(2, 14));
        let mut c = OperationCounter::new();
        assert_eq!(algorithm_multiply(&naive222, &a, &b, &mut c).unwrap(), naive(&a, &b));
        assert_eq!(c.multiplications, 8);
    }

    #[test]
    fn algorithm_multiply_pads_rectangles() {
        let alg = naive_algorithm(2, 3, 1).unwrap();
        let (a, b) = (rect(5, 4, 21), rect(4, 3, 22));
        let mut c = OperationCounter::new();
        assert_eq!(algorithm_multiply(&alg, &a, &b, &mut c).unwrap(), naive(&a, &b));
        assert!(algorithm_multiply(&alg, &a, &a, &mut c).is_err());
    }

    #[test]
    fn recursive_application() {
        let strassen = strassen_algorithm();
        let (a, b) = (ints(8, 31), ints(8, 32));
        let mut c = OperationCounter::new();
        assert_eq!(
            algorithm_multiply_recursive(&strassen, &a, &b, &mut c).unwrap(),
            naive(&a, &b)
        );
        assert_eq!(c.multiplications, 343);
        assert!(algorithm_multiply_recursive(&strassen, &ints(6, 0), &ints(6, 0), &mut c).is_err());
    }

    #[test]
    fn unverified_algorithm_rejected() {
        let mut terms = strassen_algorithm().terms().to_vec();
        terms.remove(0);
        let broken = BilinearAlgorithm::new((2, 2, 2), terms).unwrap();
        let mut c = OperationCounter::new();
        assert!(matches!(
            algorithm_multiply(&broken, &ints(2, 0), &ints(2, 1), &mut c),
            Err(Error::Unverified(_))
        ));
    }

    #[test]
    fn rational_coefficients_on_integers() {
        let strassen = strassen_algorithm();
        let g = crate::segre::sandwich(
            &crate::exact::ExactMatrix::from_i64(2, 2, &[2, 0, 0, 1]).unwrap(),
            &crate::exact::ExactMatrix::identity(2),
            &crate::exact::ExactMatrix::identity(2),
        )
        .unwrap();
        let moved = crate::segre::transform_algorithm(&g, &strassen).unwrap();
        let mut c = OperationCounter::new();
        // 1/2 appears among the coefficients, which i64 cannot absorb
        assert!(moved
            .terms()
            .iter()
            .flat_map(|t| t.factors().iter().flatten())
            .any(|x| !x.is_integer()));
        assert!(matches!(
            algorithm_multiply(&moved, &ints(2, 1), &ints(2, 2), &mut c),
            Err(Error::Coefficient(_))
        ));
        let ra = RingMatrix::from_fn(2, 2, |r, c| rational::int((r * 2 + c) as i64));
        let got = algorithm_multiply(&moved, &ra, &ra, &mut c).unwrap();
        assert_eq!(got, naive_multiply(&ra, &ra, &mut c).unwrap());
    }
}
