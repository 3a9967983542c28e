//! Exact integer linear algebra.
//!
//! Determinants, ranks and kernel vectors are computed without floating
//! point. Small matrices go through fraction-free (Bareiss) elimination,
//! whose intermediate divisions are exact by the Sylvester minor identity.
//! Larger matrices are handled modulo several random 62-bit primes with the
//! kernel vector lifted back to the integers by Chinese remaindering and
//! rational reconstruction. Every kernel vector, whichever path produced
//! it, is re-verified by an exact integer matrix-vector product before it
//! is returned.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest dimension handled by plain fraction-free elimination before the
/// modular path takes over.
pub const FRACTION_FREE_LIMIT: usize = 64;

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    w: Vec<Vec<BigInt>>,
    pivot_cols: Vec<usize>,
    /// Parity of the row swaps performed.
    sign: i8,
}

fn bareiss_echelon(m: &ExactMatrix) -> Echelon {
    let rows = m.rows();
    let cols = m.cols();
    let mut w: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.get(r, c).clone()).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        if pr != r {
            w.swap(r, pr);
            sign = -sign;
        }
        let pivot = w[r][c].clone();
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &pivot * &w[i][j] - &w[i][c] * &w[r][j];
                // Exact by the Sylvester identity: `num` is divisible by the
                // previous pivot.
                w[i][j] = num / &prev;
            }
            w[i][c] = BigInt::zero();
        }
        prev = pivot;
        pivot_cols.push(c);
        r += 1;
    }
    Echelon {
        w,
        pivot_cols,
        sign,
    }
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &ExactMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::MismatchedOperands(format!(
            "determinant of {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let ech = bareiss_echelon(m);
    if ech.pivot_cols.len() < n {
        return Ok(BigInt::zero());
    }
    let last = ech.w[n - 1][n - 1].clone();
    Ok(if ech.sign < 0 { -last } else { last })
}

/// Exact rank by fraction-free elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    bareiss_echelon(m).pivot_cols.len()
}

fn first_free_column(pivot_cols: &[usize], cols: usize) -> Option<usize> {
    let mut is_pivot = vec![false; cols];
    for &c in pivot_cols {
        is_pivot[c] = true;
    }
    (0..cols).find(|&c| !is_pivot[c])
}

/// Scales a rational vector to a primitive integer vector with positive
/// leading entry.
fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in x {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    let mut out: Vec<BigInt> = x
        .iter()
        .map(|v| (v * BigRational::from(lcm.clone())).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for v in &out {
        content = content.gcd(v);
    }
    if !content.is_zero() && !content.is_one() {
        for v in &mut out {
            *v = &*v / &content;
        }
    }
    if let Some(first) = out.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut out {
                *v = -v.clone();
            }
        }
    }
    out
}

/// Kernel vector by fraction-free elimination and rational back
/// substitution. Returns a primitive integer vector, or `None` when the
/// matrix has full column rank. Deterministic: the first free column gets
/// coefficient 1.
fn kernel_vector_exact(m: &ExactMatrix) -> Option<Vec<BigInt>> {
    let cols = m.cols();
    let ech = bareiss_echelon(m);
    let free = first_free_column(&ech.pivot_cols, cols)?;
    let mut x = vec![BigRational::zero(); cols];
    x[free] = BigRational::one();
    for t in (0..ech.pivot_cols.len()).rev() {
        let pc = ech.pivot_cols[t];
        let mut s = BigRational::zero();
        for j in (pc + 1)..cols {
            if !x[j].is_zero() && !ech.w[t][j].is_zero() {
                s += BigRational::from(ech.w[t][j].clone()) * &x[j];
            }
        }
        x[pc] = -s / BigRational::from(ech.w[t][pc].clone());
    }
    Some(clear_denominators(&x))
}

fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// How a nullity result was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NullityMethod {
    FractionFree,
    Modular { primes: Vec<u64> },
}

/// Exact nullity of a matrix together with one verified kernel vector when
/// the nullity is positive.
#[derive(Clone, Debug)]
pub struct NullityCertificate {
    pub nullity: usize,
    pub kernel_vector: Option<Vec<BigInt>>,
    pub method: NullityMethod,
}

/// Computes the nullity of `m` and, when positive, a nonzero integer kernel
/// vector. Dimensions up to [`FRACTION_FREE_LIMIT`] use exact elimination;
/// beyond that, rank is measured modulo at least three random 62-bit primes
/// (drawn from `seed`) and the kernel vector is lifted by rational
/// reconstruction. The returned vector always satisfies `m * v = 0` in
/// exact integer arithmetic; if the modular lift cannot be verified the
/// computation falls back to the exact path.
pub fn nullity_certificate(m: &ExactMatrix, seed: u64) -> Result<NullityCertificate> {
    if m.rows().max(m.cols()) <= FRACTION_FREE_LIMIT {
        return Ok(nullity_fraction_free(m));
    }
    match nullity_modular(m, seed) {
        Some(cert) => Ok(cert),
        None => Ok(nullity_fraction_free(m)),
    }
}

fn nullity_fraction_free(m: &ExactMatrix) -> NullityCertificate {
    let r = rank(m);
    let nullity = m.cols() - r;
    let kernel_vector = if nullity > 0 {
        let v = kernel_vector_exact(m).expect("rank deficiency implies a kernel vector");
        let image = m.matvec(&v).expect("dimensions agree");
        assert!(
            is_zero_vector(&image) && !is_zero_vector(&v),
            "exact kernel vector failed verification"
        );
        Some(v)
    } else {
        None
    };
    NullityCertificate {
        nullity,
        kernel_vector,
        method: NullityMethod::FractionFree,
    }
}

// ---------------------------------------------------------------------------
// Modular path.

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime.
    pow_mod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn random_prime_62(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let p_big = BigInt::from(p);
    let mut r = v % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    r.to_u64().expect("residue fits in u64")
}

struct ModularRref {
    w: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
}

fn rref_mod(m: &ExactMatrix, p: u64) -> ModularRref {
    let rows = m.rows();
    let cols = m.cols();
    let mut w: Vec<Vec<u64>> = (0..rows)
        .map(|r| (0..cols).map(|c| reduce_mod(m.get(r, c), p)).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| w[i][c] != 0) else {
            continue;
        };
        w.swap(r, pr);
        let inv = inv_mod(w[r][c], p);
        for j in c..cols {
            w[r][j] = mul_mod(w[r][j], inv, p);
        }
        for i in 0..rows {
            if i != r && w[i][c] != 0 {
                let factor = w[i][c];
                for j in c..cols {
                    let sub = mul_mod(factor, w[r][j], p);
                    w[i][j] = (w[i][j] + p - sub) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    ModularRref { w, pivot_cols }
}

/// Canonical kernel vector mod p: first free column set to 1, remaining
/// free columns 0, pivot coordinates read off the reduced form.
fn kernel_mod(rref: &ModularRref, cols: usize, p: u64) -> Option<Vec<u64>> {
    let free = first_free_column(&rref.pivot_cols, cols)?;
    let mut x = vec![0u64; cols];
    x[free] = 1;
    for (t, &pc) in rref.pivot_cols.iter().enumerate() {
        // Row t reads x[pc] + w[t][free] * x[free] = 0.
        x[pc] = (p - rref.w[t][free]) % p;
    }
    Some(x)
}

fn crt_pair(r1: &BigInt, m1: &BigInt, r2: u64, p2: u64) -> (BigInt, BigInt) {
    // Assumes gcd(m1, p2) = 1.
    let p2_big = BigInt::from(p2);
    let m1_mod = reduce_mod(m1, p2);
    let inv = inv_mod(m1_mod, p2);
    let diff = reduce_mod(&(BigInt::from(r2) - r1), p2);
    let t = mul_mod(inv, diff, p2);
    (r1 + m1 * BigInt::from(t), m1 * &p2_big)
}

/// Rational reconstruction of `r` mod `modulus`: a fraction num/den with
/// |num|, den <= sqrt(modulus/2) congruent to `r`. Standard half-extended
/// Euclid; returns `None` when no admissible fraction exists.
fn rational_reconstruct(r: &BigInt, modulus: &BigInt) -> Option<BigRational> {
    let bound_sq = modulus / 2;
    let mut a0 = modulus.clone();
    let mut a1 = r.mod_floor(modulus);
    let mut x0 = BigInt::zero();
    let mut x1 = BigInt::one();
    while &a1 * &a1 > bound_sq {
        if a1.is_zero() {
            return None;
        }
        let q = &a0 / &a1;
        let a2 = &a0 - &q * &a1;
        a0 = std::mem::replace(&mut a1, a2);
        let x2 = &x0 - &q * &x1;
        x0 = std::mem::replace(&mut x1, x2);
    }
    if x1.is_zero() {
        return None;
    }
    let (mut num, mut den) = (a1, x1);
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    if &den * &den > bound_sq {
        return None;
    }
    if num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn nullity_modular(m: &ExactMatrix, seed: u64) -> Option<NullityCertificate> {
    const BASE_PRIMES: usize = 3;
    const MAX_PRIMES: usize = 10;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes: Vec<u64> = Vec::new();
    let mut rrefs: Vec<ModularRref> = Vec::new();
    while primes.len() < BASE_PRIMES {
        let p = random_prime_62(&mut rng);
        if primes.contains(&p) {
            continue;
        }
        rrefs.push(rref_mod(m, p));
        primes.push(p);
    }

    let best_rank = rrefs.iter().map(|r| r.pivot_cols.len()).max()?;
    let nullity = m.cols() - best_rank;
    if nullity == 0 {
        return Some(NullityCertificate {
            nullity: 0,
            kernel_vector: None,
            method: NullityMethod::Modular { primes },
        });
    }

    // Keep only primes agreeing with the best rank and pivot set; the
    // canonical kernel coordinates are then reductions of one rational
    // vector and CRT across primes is meaningful.
    let reference: Vec<usize> = rrefs
        .iter()
        .find(|r| r.pivot_cols.len() == best_rank)?
        .pivot_cols
        .clone();
    loop {
        let good: Vec<usize> = (0..primes.len())
            .filter(|&i| rrefs[i].pivot_cols == reference)
            .collect();
        if good.len() >= BASE_PRIMES {
            let cols = m.cols();
            let mut combined: Vec<BigInt> = Vec::new();
            let mut modulus = BigInt::one();
            for (k, &i) in good.iter().enumerate() {
                let x = kernel_mod(&rrefs[i], cols, primes[i])?;
                if k == 0 {
                    combined = x.iter().map(|&v| BigInt::from(v)).collect();
                    modulus = BigInt::from(primes[i]);
                } else {
                    let mut next = Vec::with_capacity(cols);
                    let mut new_mod = modulus.clone();
                    for (idx, r1) in combined.iter().enumerate() {
                        let (merged, nm) = crt_pair(r1, &modulus, x[idx], primes[i]);
                        new_mod = nm;
                        next.push(merged);
                    }
                    combined = next;
                    modulus = new_mod;
                }
            }
            let mut rational = Vec::with_capacity(cols);
            for r in &combined {
                rational.push(rational_reconstruct(r, &modulus)?);
            }
            let v = clear_denominators(&rational);
            if is_zero_vector(&v) {
                return None;
            }
            let image = m.matvec(&v).ok()?;
            if !is_zero_vector(&image) {
                return None;
            }
            return Some(NullityCertificate {
                nullity,
                kernel_vector: Some(v),
                method: NullityMethod::Modular { primes },
            });
        }
        if primes.len() >= MAX_PRIMES {
            return None;
        }
        let p = random_prime_62(&mut rng);
        if primes.contains(&p) {
            continue;
        }
        rrefs.push(rref_mod(m, p));
        primes.push(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::shifted;

    fn det_by_cofactor(m: &ExactMatrix) -> BigInt {
        // Independent reference, exponential and only for tiny matrices.
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            if m.get(0, c).is_zero() {
                continue;
            }
            let minor = ExactMatrix::from_fn(n - 1, n - 1, |r2, c2| {
                m.get(r2 + 1, if c2 < c { c2 } else { c2 + 1 }).clone()
            });
            let term = m.get(0, c) * det_by_cofactor(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let cases = [
            ExactMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap(),
            ExactMatrix::from_rows(&[vec![2, 3], vec![5, 7]]).unwrap(),
            ExactMatrix::from_rows(&[
                vec![1, 2, 3, 4],
                vec![4, 3, 2, 1],
                vec![0, 0, 5, 1],
                vec![7, 0, 0, 2],
            ])
            .unwrap(),
        ];
        for m in &cases {
            assert_eq!(det(m).unwrap(), det_by_cofactor(m));
        }
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        let m = ExactMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::zero());
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn determinant_requires_square() {
        let m = ExactMatrix::zero(2, 3);
        assert!(det(&m).is_err());
    }

    #[test]
    fn nullity_of_zero_matrix_is_full() {
        let z = ExactMatrix::zero(4, 4);
        let cert = nullity_certificate(&z, 0).unwrap();
        assert_eq!(cert.nullity, 4);
        let v = cert.kernel_vector.unwrap();
        assert!(!v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn nullity_of_identity_is_zero() {
        let cert = nullity_certificate(&ExactMatrix::identity(5), 0).unwrap();
        assert_eq!(cert.nullity, 0);
        assert!(cert.kernel_vector.is_none());
    }

    #[test]
    fn shifted_diagonal_has_unit_kernel() {
        let m = ExactMatrix::from_rows(&[vec![3, 0], vec![0, 2]]).unwrap();
        let s = shifted(&m, 3).unwrap();
        let cert = nullity_certificate(&s, 0).unwrap();
        assert_eq!(cert.nullity, 1);
        let v = cert.kernel_vector.unwrap();
        assert_eq!(v, vec![BigInt::from(1), BigInt::zero()]);
    }

    #[test]
    fn kernel_vector_handles_rational_back_substitution() {
        // Kernel of [[2, 1, 0], [0, 3, 1]] needs non-integer intermediate
        // values; the returned vector must still be integral and primitive.
        let m = ExactMatrix::from_rows(&[vec![2, 1, 0], vec![0, 3, 1]]).unwrap();
        let cert = nullity_certificate(&m, 0).unwrap();
        assert_eq!(cert.nullity, 1);
        let v = cert.kernel_vector.unwrap();
        assert!(m.matvec(&v).unwrap().iter().all(|x| x.is_zero()));
        let content = v
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        assert_eq!(content, BigInt::one());
    }

    #[test]
    fn modular_path_agrees_with_exact_on_large_singular_matrix() {
        // 80x80, rank 79: forced onto the modular path by size.
        let n = 80;
        let m = ExactMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::from((r as i64 % 7) - 3)
            } else if c == r + 1 {
                BigInt::from(1)
            } else if r == n - 1 && c == 0 {
                // Make the last row a copy of a linear combination to force
                // singularity: row n-1 equals row 0 shifted and scaled.
                BigInt::zero()
            } else {
                BigInt::zero()
            }
        });
        // Zero out the last row entirely: rank n-1, nullity 1.
        let mut m = m;
        for c in 0..n {
            m.set(n - 1, c, BigInt::zero());
        }
        m.set(n - 1, n - 1, BigInt::zero());
        let cert = nullity_certificate(&m, 7).unwrap();
        assert!(matches!(cert.method, NullityMethod::Modular { .. }));
        assert_eq!(cert.nullity, rref_nullity_reference(&m));
        if let Some(v) = cert.kernel_vector {
            assert!(m.matvec(&v).unwrap().iter().all(|x| x.is_zero()));
            assert!(!v.iter().all(|x| x.is_zero()));
        } else {
            panic!("expected kernel vector");
        }
    }

    fn rref_nullity_reference(m: &ExactMatrix) -> usize {
        // Independent nullity via rational Gauss elimination.
        let rows = m.rows();
        let cols = m.cols();
        let mut w: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|c| BigRational::from(m.get(r, c).clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0usize;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&i| !w[i][c].is_zero()) else {
                continue;
            };
            w.swap(rank, pr);
            let pivot = w[rank][c].clone();
            for j in c..cols {
                let t = &w[rank][j] / &pivot;
                w[rank][j] = t;
            }
            for i in 0..rows {
                if i != rank && !w[i][c].is_zero() {
                    let f = w[i][c].clone();
                    for j in c..cols {
                        let t = &w[i][j] - &f * &w[rank][j];
                        w[i][j] = t;
                    }
                }
            }
            rank += 1;
        }
        cols - rank
    }

    #[test]
    fn rational_reconstruction_recovers_small_fractions() {
        // 22/7 mod a large modulus reconstructs exactly.
        let modulus = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        let seven_inv = {
            // Extended Euclid via the library.
            let e = BigInt::from(7).extended_gcd(&modulus);
            e.x.mod_floor(&modulus)
        };
        let r = (BigInt::from(22) * seven_inv).mod_floor(&modulus);
        let rec = rational_reconstruct(&r, &modulus).unwrap();
        assert_eq!(rec, BigRational::new(BigInt::from(22), BigInt::from(7)));
    }

    #[test]
    fn prime_generation_is_seeded_and_prime() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p1 = random_prime_62(&mut rng);
        let mut rng2 = ChaCha8Rng::seed_from_u64(0);
        let p2 = random_prime_62(&mut rng2);
        assert_eq!(p1, p2);
        assert!(is_prime_u64(p1));
        assert!(p1 >= (1 << 61) && p1 < (1 << 62));
    }
}
