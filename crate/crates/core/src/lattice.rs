//! Exact rational/integer linear algebra on desk-scale matrices.
//!
//! Weight detection and face enumeration need three primitives: the rank and
//! nullspace of small rational matrices, the saturated integer kernel of an
//! integer matrix, and the lexicographically smallest strictly positive
//! integer vector of a kernel lattice. Everything here is exact (BigInt /
//! BigRational) and assumes the tiny sizes of exponent supports (n ≤ ~6,
//! a few dozen rows).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Row-reduce a rational matrix in place; returns the pivot columns.
fn row_reduce(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let mut pivots = Vec::new();
    if rows.is_empty() {
        return pivots;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let s = &rows[r][j] * &f;
                    rows[i][j] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of { x : rows · x = 0 } over the rationals.
pub(crate) fn rational_nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to a primitive integer vector (gcd 1). The sign of
/// the first nonzero entry is made positive.
pub(crate) fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    ints
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve a · y = t over the integers. Returns a particular solution together
/// with a saturated basis of the homogeneous solutions, or None if no integer
/// solution exists.
fn row_solve(a: &[BigInt], t: &BigInt) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let k = a.len();
    // Column operations U with a·U = (0,…,0,±g,0,…,0).
    let mut u: Vec<Vec<BigInt>> = (0..k)
        .map(|i| {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut w = a.to_vec();
    loop {
        let nz: Vec<usize> = (0..k).filter(|&i| !w[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let &imin = nz
            .iter()
            .min_by_key(|&&i| w[i].abs())
            .expect("nonempty nonzero set");
        // Reduce every other entry modulo the minimal one; remainders shrink
        // strictly, so the loop is Euclidean-terminating.
        for &i in &nz {
            if i == imin {
                continue;
            }
            let q = &w[i] / &w[imin];
            if !q.is_zero() {
                w[i] = &w[i] - &q * &w[imin];
                let sub: Vec<BigInt> = u[imin].iter().map(|x| x * &q).collect();
                for (ui, s) in u[i].iter_mut().zip(sub) {
                    *ui -= s;
                }
            }
        }
    }
    match (0..k).find(|&i| !w[i].is_zero()) {
        None => {
            if t.is_zero() {
                Some((vec![BigInt::zero(); k], u))
            } else {
                None
            }
        }
        Some(i) => {
            let g = w[i].clone();
            let (q, r) = t.div_rem(&g);
            if !r.is_zero() {
                return None;
            }
            let point: Vec<BigInt> = u[i].iter().map(|x| x * &q).collect();
            let kernel: Vec<Vec<BigInt>> = (0..k).filter(|&j| j != i).map(|j| u[j].clone()).collect();
            Some((point, kernel))
        }
    }
}

/// Saturated integer kernel of an integer matrix acting on ℤ^ncols, i.e. a
/// lattice basis of { x ∈ ℤ^ncols : rows · x = 0 }.
pub(crate) fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut basis: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| {
            let mut e = vec![BigInt::zero(); ncols];
            e[i] = BigInt::one();
            e
        })
        .collect();
    for a in rows {
        if basis.is_empty() {
            break;
        }
        let w: Vec<BigInt> = basis.iter().map(|b| dot(a, b)).collect();
        let (_, kern) = row_solve(&w, &BigInt::zero()).expect("t = 0 is always solvable");
        basis = kern
            .iter()
            .map(|y| {
                let mut v = vec![BigInt::zero(); ncols];
                for (yi, b) in y.iter().zip(&basis) {
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj += yi * bj;
                    }
                }
                v
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
    }
    basis
}

/// Linear constraint c · y ≥ rhs used by the Fourier–Motzkin relaxation.
#[derive(Clone)]
struct Ineq {
    coeffs: Vec<BigRational>,
    rhs: BigRational,
}

/// Rational feasibility of a system of ≥-constraints by Fourier–Motzkin
/// elimination. Used only as a pruning relaxation for the integer search.
fn fm_feasible(mut cons: Vec<Ineq>, nvars: usize) -> bool {
    for v in 0..nvars {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for c in cons {
            if c.coeffs[v].is_positive() {
                pos.push(c);
            } else if c.coeffs[v].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let alpha = p.coeffs[v].clone();
                let beta = -q.coeffs[v].clone();
                let coeffs: Vec<BigRational> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| a * &beta + b * &alpha)
                    .collect();
                let rhs = &p.rhs * &beta + &q.rhs * &alpha;
                rest.push(Ineq { coeffs, rhs });
            }
        }
        cons = rest;
    }
    cons.iter().all(|c| !c.rhs.is_positive())
}

/// State of the coordinate-by-coordinate search: an affine lattice
/// { point + Σ yᵢ basisᵢ } in the ambient q-space.
struct Affine {
    point: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
}

fn to_rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Find the lexicographically smallest vector q in the lattice spanned by
/// `basis` with q_j ≥ 1 for all coordinates and e · q ≥ 1 for every row of
/// `extra`. Entries are searched up to `bound`; None means no solution was
/// found within the bound (for the exponent lattices handled here the true
/// solutions are tiny, so the bound only guards pathological inputs).
pub(crate) fn lexmin_positive(
    basis: &[Vec<BigInt>],
    extra: &[Vec<BigInt>],
    bound: i64,
) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].len();
    let start = Affine {
        point: vec![BigInt::zero(); n],
        basis: basis.to_vec(),
    };
    search(&start, 0, n, extra, bound)
}

fn feasible_relaxation(aff: &Affine, level: usize, n: usize, extra: &[Vec<BigInt>]) -> bool {
    let k = aff.basis.len();
    let mut cons = Vec::new();
    let one = BigRational::one();
    for m in level..n {
        cons.push(Ineq {
            coeffs: aff.basis.iter().map(|b| to_rat(&b[m])).collect(),
            rhs: &one - to_rat(&aff.point[m]),
        });
    }
    for e in extra {
        cons.push(Ineq {
            coeffs: aff.basis.iter().map(|b| to_rat(&dot(e, b))).collect(),
            rhs: &one - to_rat(&dot(e, &aff.point)),
        });
    }
    fm_feasible(cons, k)
}

fn search(aff: &Affine, level: usize, n: usize, extra: &[Vec<BigInt>], bound: i64) -> Option<Vec<BigInt>> {
    if level == n {
        let ok = extra.iter().all(|e| dot(e, &aff.point) >= BigInt::one());
        return if ok { Some(aff.point.clone()) } else { None };
    }
    if aff.basis.is_empty() {
        // Fully pinned; remaining coordinates must already be positive.
        if aff.point[level..].iter().all(|x| x >= &BigInt::one()) {
            let ok = extra.iter().all(|e| dot(e, &aff.point) >= BigInt::one());
            return if ok { Some(aff.point.clone()) } else { None };
        }
        return None;
    }
    if !feasible_relaxation(aff, level, n, extra) {
        return None;
    }
    let w: Vec<BigInt> = aff.basis.iter().map(|b| b[level].clone()).collect();
    let mut g = BigInt::zero();
    for x in &w {
        g = g.gcd(x);
    }
    let pj = aff.point[level].clone();
    if g.is_zero() {
        if pj < BigInt::one() {
            return None;
        }
        return search(aff, level + 1, n, extra, bound);
    }
    // Smallest attainable value ≥ 1 in the congruence class pj + gℤ.
    let mut c = {
        let diff = BigInt::one() - &pj;
        let q = diff.div_ceil(&g);
        &pj + &g * q
    };
    let step = g.clone();
    let limit = BigInt::from(bound);
    while c <= limit {
        if let Some((y0, kern)) = row_solve(&w, &(&c - &pj)) {
            let mut point = aff.point.clone();
            for (yi, b) in y0.iter().zip(&aff.basis) {
                for (pm, bm) in point.iter_mut().zip(b) {
                    *pm += yi * bm;
                }
            }
            let new_basis: Vec<Vec<BigInt>> = kern
                .iter()
                .map(|y| {
                    let mut v = vec![BigInt::zero(); aff.point.len()];
                    for (yi, b) in y.iter().zip(&aff.basis) {
                        for (vj, bj) in v.iter_mut().zip(b) {
                            *vj += yi * bj;
                        }
                    }
                    v
                })
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect();
            let next = Affine { point, basis: new_basis };
            if feasible_relaxation(&next, level + 1, n, extra) {
                if let Some(sol) = search(&next, level + 1, n, extra, bound) {
                    return Some(sol);
                }
            }
        }
        c += &step;
    }
    None
}
