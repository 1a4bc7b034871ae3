//! Independent reference implementations used as test oracles. Everything
//! here works on plain `Vec<u8>` bit lists or dense complex matrices and does
//! not call into the library's arithmetic.
#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64;

use qsync::cyclic::CyclicCodePair;
use qsync::gf2::{BinaryPolynomial, BitVector};
use qsync::pairing::{build_pairing_basis, PairingBasis};
use qsync::pauli::PauliOperator;

pub fn poly(s: &str) -> BinaryPolynomial {
    BinaryPolynomial::parse(s).unwrap()
}

pub fn bv(s: &str) -> BitVector {
    BitVector::parse(s).unwrap()
}

pub fn bits(v: &BitVector) -> Vec<u8> {
    (0..v.len()).map(|i| v.get(i) as u8).collect()
}

pub fn from_bits(b: &[u8]) -> BitVector {
    BitVector::from_bools(&b.iter().map(|&x| x == 1).collect::<Vec<_>>())
}

/// Coefficient list (index = power) of a polynomial, trimmed.
pub fn coeffs(p: &BinaryPolynomial) -> Vec<u8> {
    let mut c: Vec<u8> = (0..128).map(|i| p.coeff(i) as u8).collect();
    trim(&mut c);
    c
}

pub fn trim(c: &mut Vec<u8>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Schoolbook product over GF(2).
pub fn naive_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] ^= x & y;
        }
    }
    trim(&mut out);
    out
}

/// Reduction modulo x^n - 1 by folding exponents.
pub fn naive_mod_cyclic(a: &[u8], n: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    for (i, &x) in a.iter().enumerate() {
        out[i % n] ^= x;
    }
    trim(&mut out);
    out
}

/// Long division; returns (quotient, remainder).
pub fn naive_divmod(a: &[u8], b: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut q = vec![0u8; r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        q[shift] = 1;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] ^= c;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// x^n - 1 over GF(2).
pub fn cyclic_modulus(n: usize) -> Vec<u8> {
    let mut m = vec![0u8; n + 1];
    m[0] = 1;
    m[n] = 1;
    m
}

pub fn dot(a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (x, y)| acc ^ (x & y))
}

/// Right cyclic shift by `alpha` (negative shifts left).
pub fn naive_shift(v: &[u8], alpha: i64) -> Vec<u8> {
    let n = v.len() as i64;
    let mut out = vec![0u8; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[((i as i64 + alpha).rem_euclid(n)) as usize] = x;
    }
    out
}

/// Every codeword of the span of `gens` (length `n`), by subset sums.
pub fn codewords(gens: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    assert!(gens.len() <= 22, "oracle enumeration too large");
    let mut out = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << gens.len()) {
        let mut w = vec![0u8; n];
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for (a, b) in w.iter_mut().zip(g) {
                    *a ^= b;
                }
            }
        }
        out.insert(w);
    }
    out.into_iter().collect()
}

pub fn weight(v: &[u8]) -> u32 {
    v.iter().map(|&b| b as u32).sum()
}

/// Minimum nonzero weight by enumeration; `None` for the zero code.
pub fn brute_min_distance(gens: &[Vec<u8>], n: usize) -> Option<u32> {
    codewords(gens, n).iter().map(|w| weight(w)).filter(|&w| w > 0).min()
}

/// Every vector orthogonal to all of `gens`, by scanning F_2^n.
pub fn brute_dual(gens: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    assert!(n <= 20);
    (0u32..(1 << n))
        .map(|v| (0..n).map(|i| (v >> i & 1) as u8).collect::<Vec<u8>>())
        .filter(|v| gens.iter().all(|g| dot(g, v) == 0))
        .collect()
}

pub fn rows_bits(rows: &[BitVector]) -> Vec<Vec<u8>> {
    rows.iter().map(bits).collect()
}

/// Dimension of a span, by counting its codewords.
pub fn brute_dim(gens: &[Vec<u8>], n: usize) -> usize {
    codewords(gens, n).len().trailing_zeros() as usize
}

// ---- dense Pauli matrices ----

pub type Matrix = Vec<Vec<Complex64>>;

fn zero_matrix(d: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); d]; d]
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = zero_matrix(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = zero_matrix(d);
    for i in 0..d {
        for j in 0..d {
            out[j][i] = a[i][j].conj();
        }
    }
    out
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < 1e-9)
}

/// i^phase X(x) Z(z) with qubit 0 as the most significant tensor factor.
pub fn pauli_matrix(op: &PauliOperator) -> Matrix {
    let n = op.num_qubits();
    let d = 1usize << n;
    let (x, z) = (op.x(), op.z());
    let phase = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [op.phase() as usize % 4];
    let mut m = zero_matrix(d);
    for col in 0..d {
        // Z acts first on |col>, then X flips bits
        let mut sign = 1.0;
        let mut row = col;
        for q in 0..n {
            let bit = col >> (n - 1 - q) & 1;
            if z.get(q) && bit == 1 {
                sign = -sign;
            }
            if x.get(q) {
                row ^= 1 << (n - 1 - q);
            }
        }
        m[row][col] = phase * sign;
    }
    m
}

pub fn cnot_matrix(n: usize, control: usize, target: usize) -> Matrix {
    let d = 1usize << n;
    let mut m = zero_matrix(d);
    for col in 0..d {
        let row = if col >> (n - 1 - control) & 1 == 1 { col ^ (1 << (n - 1 - target)) } else { col };
        m[row][col] = Complex64::new(1.0, 0.0);
    }
    m
}

// ---- fixtures ----

/// [7,4] Hamming code inside the full space.
pub fn hamming_pair() -> (CyclicCodePair, PairingBasis) {
    let pair = CyclicCodePair::from_polys(7, poly("1+x+x^3"), poly("1")).unwrap();
    let basis = build_pairing_basis(&pair).unwrap();
    (pair, basis)
}

/// Length-21 pair whose larger code D has distance 3.
pub fn distance_three_pair() -> (CyclicCodePair, PairingBasis) {
    let pair = CyclicCodePair::from_polys(21, poly("1+x^3+x^9"), poly("1+x^2+x^4+x^5+x^6")).unwrap();
    let basis = build_pairing_basis(&pair).unwrap();
    (pair, basis)
}

pub fn steane_stabilizers() -> Vec<PauliOperator> {
    let rows = ["1010101", "0110011", "0001111"];
    let mut out: Vec<PauliOperator> = rows.iter().map(|r| PauliOperator::x_type(bv(r))).collect();
    out.extend(rows.iter().map(|r| PauliOperator::z_type(bv(r))));
    out
}

/// Corpus lengths that admit at least one valid pair.
pub const CORPUS: [usize; 5] = [7, 15, 21, 23, 31];

/// Rank by Gaussian elimination on bit lists.
pub fn naive_rank(rows: &[Vec<u8>]) -> usize {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Generator pairs (p, q) of valid pairs C ⊂ D of length n with C⊥ ⊊ C,
/// found by trial division of every candidate polynomial.
pub fn brute_pairs(n: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let modulus = cyclic_modulus(n);
    let divisors: Vec<Vec<u8>> = (0u64..(1u64 << n))
        .map(|v| {
            let mut c: Vec<u8> = (0..n).map(|i| (v >> i & 1) as u8).collect();
            trim(&mut c);
            c
        })
        .filter(|c| !c.is_empty() && naive_divmod(&modulus, c).1.is_empty())
        .collect();
    let mut out = Vec::new();
    for p in &divisors {
        let k_c = n - (p.len() - 1);
        if 2 * k_c <= n {
            continue;
        }
        let (h, _) = naive_divmod(&modulus, p);
        let mut h_rev = h.clone();
        h_rev.reverse();
        trim(&mut h_rev);
        // C⊥ is generated by the reversed check polynomial
        if !naive_divmod(&h_rev, p).1.is_empty() {
            continue;
        }
        for q in &divisors {
            if q != p && naive_divmod(p, q).1.is_empty() {
                out.push((p.clone(), q.clone()));
            }
        }
    }
    out
}

pub fn coeffs_to_string(c: &[u8]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &b)| b == 1)
        .map(|(i, _)| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join("+") }
}
