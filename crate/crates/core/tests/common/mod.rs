#![allow(dead_code)]

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use recpos::exactmath::rational::{int, rat};
use recpos::{PolyQ, Rational, Recurrence, TridiagonalMatrix};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    rat(n, d)
}

pub fn z(n: i64) -> Rational {
    int(n)
}

pub fn poly(c: &[i64]) -> PolyQ {
    PolyQ::from_ints(c)
}

pub fn constant_rec(b: Rational, c: Rational, u0: Rational, u1: Rational) -> Recurrence {
    Recurrence::new(PolyQ::constant(z(1)), PolyQ::constant(b), PolyQ::constant(c), u0, u1).unwrap()
}

pub fn random_rational(r: &mut StdRng, lo: i64, hi: i64, den: i64) -> Rational {
    q(r.gen_range(lo..=hi), r.gen_range(1..=den))
}

/// Fraction-free determinant over `i128`; independent of the library's
/// rational elimination.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Total nonnegativity by every minor of every order.
pub fn tn_all_minors(m: &[Vec<i128>]) -> bool {
    let n = m.len();
    for r in 1..=n {
        let sets = subsets(n, r);
        for rows in &sets {
            for cols in &sets {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                if det_i128(&sub) < 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Random nonnegative tridiagonal matrix with positive off-diagonal bands,
/// as integer rows and as the library type.
pub fn random_irreducible_tridiagonal(r: &mut StdRng, k: usize) -> (Vec<Vec<i128>>, TridiagonalMatrix) {
    let diag: Vec<i64> = (0..k).map(|_| r.gen_range(0..=5)).collect();
    let sup: Vec<i64> = (1..k).map(|_| r.gen_range(1..=3)).collect();
    let sub: Vec<i64> = (1..k).map(|_| r.gen_range(1..=3)).collect();
    let mut rows = vec![vec![0i128; k]; k];
    for i in 0..k {
        rows[i][i] = diag[i] as i128;
        if i + 1 < k {
            rows[i][i + 1] = sup[i] as i128;
            rows[i + 1][i] = sub[i] as i128;
        }
    }
    let t = TridiagonalMatrix::new(
        diag.into_iter().map(z).collect(),
        sup.into_iter().map(z).collect(),
        sub.into_iter().map(z).collect(),
    )
    .unwrap();
    (rows, t)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn corpus_rec(spec: &str) -> Recurrence {
    recpos::corpus::corpus_lookup(spec).unwrap().rec
}
