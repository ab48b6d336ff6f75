//! Polynomial factorization.
//!
//! * Over GF(p): square-free factorization (with `p`-th roots for
//!   characteristic-`p` derivatives), distinct-degree factorization and
//!   Cantor–Zassenhaus equal-degree splitting. The randomness of the last
//!   step comes from a fixed-seed generator, so results are deterministic.
//! * Over ℚ: square-free decomposition in characteristic zero followed by
//!   Zassenhaus' algorithm on each primitive integer part: factor modulo a
//!   suitable prime, Hensel-lift quadratically past a coefficient bound, and
//!   recombine lifted factors by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arith::{Arith, Fp, Qq};
use super::field::{is_prime, reduce_bigint};
use super::poly::{is_one, padd, pdivrem, pderiv, pgcd, pmonic, pmul, ppowmod, prem, psub};

/// Seed of the equal-degree splitting generator.
const EDF_SEED: u64 = 0x5eed_f00d;

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

/// Factors `f` over GF(p) into monic irreducibles with multiplicities.
pub(crate) fn factor_fp(p: u32, f: &[u32]) -> Vec<(Vec<u32>, usize)> {
    let ar = Fp(p);
    let f = pmonic(&ar, f);
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut out = Vec::new();
    for (sq, mult) in square_free_fp(p, &f) {
        for (g, d) in distinct_degree(p, &sq) {
            for h in equal_degree(p, &g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    merge(out)
}

fn merge(mut v: Vec<(Vec<u32>, usize)>) -> Vec<(Vec<u32>, usize)> {
    v.sort();
    let mut out: Vec<(Vec<u32>, usize)> = Vec::new();
    for (f, e) in v {
        match out.last_mut() {
            Some((g, m)) if *g == f => *m += e,
            _ => out.push((f, e)),
        }
    }
    out
}

/// Square-free decomposition of a monic polynomial over GF(p): pairs
/// `(square-free factor, multiplicity)` whose powers multiply to `f`.
fn square_free_fp(p: u32, f: &[u32]) -> Vec<(Vec<u32>, usize)> {
    let ar = Fp(p);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let d = pderiv(&ar, f);
    let mut c = pgcd(&ar, f, &d);
    let mut w = pdivrem(&ar, f, &c).0;
    let mut i = 1;
    while !is_one(&ar, &w) {
        let y = pgcd(&ar, &w, &c);
        let fac = pdivrem(&ar, &w, &y).0;
        if fac.len() > 1 {
            out.push((pmonic(&ar, &fac), i));
        }
        w = y;
        c = pdivrem(&ar, &c, &w).0;
        i += 1;
    }
    if c.len() > 1 {
        // c is a polynomial in x^p; over a prime field its p-th root just
        // keeps every p-th coefficient.
        let root: Vec<u32> = c.iter().step_by(p as usize).copied().collect();
        for (g, e) in square_free_fp(p, &pmonic(&ar, &root)) {
            out.push((g, e * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free monic polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
fn distinct_degree(p: u32, f: &[u32]) -> Vec<(Vec<u32>, usize)> {
    let ar = Fp(p);
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0, 1];
    let mut h = prem(&ar, &x, &f);
    let mut d = 1;
    let pe = BigUint::from(p);
    while f.len() - 1 >= 2 * d {
        h = ppowmod(&ar, &h, &pe, &f);
        let g = pgcd(&ar, &psub(&ar, &h, &x), &f);
        if !is_one(&ar, &g) {
            f = pdivrem(&ar, &f, &g).0;
            h = prem(&ar, &h, &f);
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Splits a product of distinct monic irreducibles of degree `d`.
fn equal_degree(p: u32, f: &[u32], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let ar = Fp(p);
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    loop {
        let mut a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        super::poly::trim(&ar, &mut a);
        if a.len() <= 1 {
            continue;
        }
        let t = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)).
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = ppowmod(&ar, &cur, &BigUint::from(2u32), f);
                acc = padd(&ar, &acc, &cur);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            psub(&ar, &ppowmod(&ar, &a, &e, f), &[1])
        };
        let g = pgcd(&ar, &t, f);
        if g.len() > 1 && g.len() < f.len() {
            let h = pdivrem(&ar, f, &g).0;
            let mut out = equal_degree(p, &g, d, rng);
            out.extend(equal_degree(p, &pmonic(&ar, &h), d, rng));
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// ℚ
// ---------------------------------------------------------------------------

/// Factors `f` over ℚ into monic irreducibles with multiplicities.
pub(crate) fn factor_q(f: &[BigRational]) -> Vec<(Vec<BigRational>, usize)> {
    let ar = Qq;
    let f = pmonic(&ar, f);
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    // Yun's square-free decomposition (characteristic zero).
    let d = pderiv(&ar, &f);
    let a0 = pgcd(&ar, &f, &d);
    let mut b = pdivrem(&ar, &f, &a0).0;
    let mut c = pdivrem(&ar, &d, &a0).0;
    let mut dd = psub(&ar, &c, &pderiv(&ar, &b));
    let mut i = 1;
    while b.len() > 1 {
        let a = pgcd(&ar, &b, &dd);
        if a.len() > 1 {
            for g in zassenhaus(&to_primitive(&a)) {
                out.push((pmonic(&ar, &from_int(&g)), i));
            }
        }
        b = pdivrem(&ar, &b, &a).0;
        c = pdivrem(&ar, &dd, &a).0;
        dd = psub(&ar, &c, &pderiv(&ar, &b));
        i += 1;
    }
    out
}

fn to_primitive(f: &[BigRational]) -> Vec<BigInt> {
    let l = f.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let v: Vec<BigInt> = f.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    primitive_part(&v)
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    v.iter().map(|c| c / &g * &sign).collect()
}

fn from_int(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Factors a square-free primitive integer polynomial with positive leading
/// coefficient into primitive irreducible integer polynomials.
fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // A prime not dividing lc for which f stays square-free.
    let mut p: u32 = 3;
    let modp = loop {
        if is_prime(p as u64) && !(&lc % BigInt::from(p)).is_zero() {
            let ar = Fp(p);
            let fm: Vec<u32> = f.iter().map(|c| reduce_bigint(c, p)).collect();
            if pgcd(&ar, &fm, &pderiv(&ar, &fm)).len() == 1 {
                break fm;
            }
        }
        p += 2;
    };
    let factors: Vec<Vec<u32>> = factor_fp(p, &modp).into_iter().map(|(g, _)| g).collect();
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    // Coefficient bound for factors of lc·f (Mignotte-style, generous).
    let norm2 = f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound: BigInt = (BigInt::one() << n) * norm2 * lc.abs();
    let mut modulus = BigInt::from(p);
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift_all(f, p, &factors, &modulus);

    // Recombination by trial division, smallest subsets first.
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut g = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in subsets(remaining.len(), size) {
            let lcg = g.last().unwrap().clone();
            let mut cand = vec![lcg.clone()];
            for &k in &subset {
                cand = zmod(&zmul(&cand, &remaining[k]), &modulus);
            }
            let cand = primitive_part(&symmetric(&cand, &modulus));
            if let Some(q) = exact_div(&g, &cand) {
                out.push(cand);
                g = q;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !subset.contains(k))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(primitive_part(&g));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Exact quotient of integer polynomials, if the division is exact over ℤ.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = pdivrem(&Qq, &from_int(a), &from_int(b));
    if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.iter().map(|c| c.to_integer()).collect())
}

fn ztrim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zmod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut w: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    ztrim(&mut w);
    w
}

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    ztrim(&mut v);
    v
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut v: Vec<BigInt> = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    ztrim(&mut v);
    v
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let nb: Vec<BigInt> = b.iter().map(|c| -c).collect();
    zadd(a, &nb)
}

/// Division with remainder modulo `m` by a monic polynomial `b`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = zmod(a, m);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone();
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
        ztrim(&mut r);
    }
    ztrim(&mut q);
    (q, r)
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible modulo the lifting modulus");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc · ∏ factors (mod p)` (factors monic) to monic factors
/// modulo `modulus`, a power of `p`.
fn hensel_lift_all(f: &[BigInt], p: u32, factors: &[Vec<u32>], modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let lc = f.last().unwrap();
    let inv = inv_mod_big(lc, modulus);
    let monic: Vec<BigInt> = zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), modulus);
    lift_tree(&monic, p, factors, modulus)
}

fn lift_tree(f: &[BigInt], p: u32, factors: &[Vec<u32>], modulus: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let ar = Fp(p);
    let half = factors.len() / 2;
    let prod = |fs: &[Vec<u32>]| fs.iter().fold(vec![1u32], |acc, g| pmul(&ar, &acc, g));
    let g0 = prod(&factors[..half]);
    let h0 = prod(&factors[half..]);
    let (g, h) = hensel_two(f, p, &g0, &h0, modulus);
    let mut out = lift_tree(&g, p, &factors[..half], modulus);
    out.extend(lift_tree(&h, p, &factors[half..], modulus));
    out
}

/// Quadratic Hensel lifting of a monic `f ≡ g·h (mod p)` with monic coprime
/// `g`, `h` to modulus at least `modulus`, then reduced modulo `modulus`.
fn hensel_two(f: &[BigInt], p: u32, g0: &[u32], h0: &[u32], modulus: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let ar = Fp(p);
    // s·g + t·h ≡ 1 (mod p).
    let (s0, t0) = ext_gcd_fp(&ar, g0, h0);
    let lift = |v: &[u32]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let (mut g, mut h, mut s, mut t) = (lift(g0), lift(h0), lift(&s0), lift(&t0));
    let mut m = BigInt::from(p);
    while &m < modulus {
        m = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m);
        let g1 = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m);
        let h1 = zmod(&zadd(&h, &r), &m);
        let b = zmod(&zsub(&zadd(&zmul(&s, &g1), &zmul(&t, &h1)), &[BigInt::one()]), &m);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h1, &m);
        let s1 = zmod(&zsub(&s, &d), &m);
        let t1 = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g1)), &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
    }
    (zmod(&g, modulus), zmod(&h, modulus))
}

/// Returns `(s, t)` with `s·a + t·b = 1` over GF(p), for coprime `a`, `b`.
fn ext_gcd_fp(ar: &Fp, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    while !r1.is_empty() {
        let (q, r) = pdivrem(ar, &r0, &r1);
        let s2 = psub(ar, &s0, &pmul(ar, &q, &s1));
        let t2 = psub(ar, &t0, &pmul(ar, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    // r0 is a non-zero constant.
    let inv = ar.inv(&r0[0]);
    let sc = |v: &[u32]| v.iter().map(|c| ar.mul(c, &inv)).collect::<Vec<_>>();
    (sc(&s0), sc(&t0))
}
