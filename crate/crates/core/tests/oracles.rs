//! Cross-checks against independent oracles: Möbius-product cyclotomics,
//! floating-point root evaluation, and brute-force enumeration of complements
//! and spectra.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spectile::arith::{divisors, factorize, totient};
use spectile::{
    all_spectra, cyclo_at_one, cyclotomic, cyclotomic_divisors, find_complement, is_root,
    is_spectrum, poly_divrem, profile, spectrum_search, unit_fraction_order, IntPoly, Reduced,
    Spectrum, TileSet,
};

fn sets(n: usize, max_elem: u64) -> Vec<TileSet> {
    fn rec(start: u64, max: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<TileSet>) {
        if left == 0 {
            out.push(TileSet::new(cur.clone()).unwrap());
            return;
        }
        for a in start..=max {
            cur.push(a);
            rec(a + 1, max, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max_elem, n - 1, &mut vec![0], &mut out);
    out
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Φ_n = Π_{d | n} (x^d - 1)^{μ(n/d)}`, built without the recursive table.
fn mobius_cyclotomic(n: u64) -> IntPoly {
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    let (q, r) = poly_divrem(&num, &den).unwrap();
    assert!(r.is_zero());
    q
}

#[test]
fn cyclotomics_match_mobius_formula() {
    for n in 1..=120 {
        assert_eq!(cyclotomic(n).unwrap(), mobius_cyclotomic(n), "n = {n}");
    }
}

#[test]
fn cyclotomic_degrees_and_products() {
    for n in 1..=200u64 {
        let phi = cyclotomic(n).unwrap();
        assert_eq!(phi.degree(), Some(totient(n) as usize), "deg Φ_{n}");
        assert!(phi.is_monic());
        let product = divisors(n)
            .into_iter()
            .fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
        assert_eq!(product, IntPoly::x_pow_minus_one(n as usize), "n = {n}");
        assert_eq!(phi.eval_at_one(), BigInt::from(cyclo_at_one(n)), "Φ_{n}(1)");
    }
}

fn mask_at(set: &TileSet, k: u64, n: u64) -> Complex64 {
    set.elements()
        .iter()
        .map(|&a| Complex64::from_polar(1.0, std::f64::consts::TAU * ((a * k) % n) as f64 / n as f64))
        .sum()
}

#[test]
fn divisors_match_numeric_root_evaluation() {
    for n in 2..=6 {
        for a in sets(n, 11) {
            let exact = cyclotomic_divisors(&a);
            let deg = a.max_element();
            let numeric: Vec<u64> = (2..=2 * deg * deg)
                .filter(|&m| totient(m) <= deg)
                .filter(|&m| mask_at(&a, 1, m).norm() < 1e-9)
                .collect();
            assert_eq!(exact, numeric, "A = {a}");
            let poly = a.mask_poly();
            for m in 2..=2 * deg * deg {
                if totient(m) <= deg {
                    let (_, r) = poly_divrem(&poly, &cyclotomic(m).unwrap()).unwrap();
                    assert_eq!(r.is_zero(), exact.contains(&m));
                }
            }
        }
    }
}

#[test]
fn root_sets_are_closed_under_conjugation() {
    for a in sets(4, 9) {
        for n in 2..=24u64 {
            for k in (1..n).filter(|k| num_integer::gcd(*k, n) == 1) {
                let q = Reduced::frac(k as i64, n);
                assert_eq!(is_root(&a, q).unwrap(), is_root(&a, q.neg()).unwrap(), "A = {a}, q = {q}");
            }
        }
    }
}

/// Whether some `B ⊂ Z_n` with `0 ∈ B`, `#B = n/#A` tiles, by trying every subset.
fn brute_force_tiles(a: &TileSet, n: u64) -> bool {
    let k = n as usize / a.len();
    let others: Vec<u64> = (1..n).collect();
    let mut found = false;
    fn rec(a: &TileSet, n: u64, others: &[u64], left: usize, b: &mut Vec<u64>, found: &mut bool) {
        if *found {
            return;
        }
        if left == 0 {
            let mut hit = vec![0u8; n as usize];
            for &x in b.iter() {
                for &e in a.elements() {
                    hit[((x + e) % n) as usize] += 1;
                }
            }
            *found = hit.iter().all(|&h| h == 1);
            return;
        }
        for (i, &x) in others.iter().enumerate() {
            b.push(x);
            rec(a, n, &others[i + 1..], left - 1, b, found);
            b.pop();
        }
    }
    rec(a, n, &others, k - 1, &mut vec![0], &mut found);
    found
}

#[test]
fn complement_search_matches_brute_force() {
    for n in 2..=4usize {
        for a in sets(n, 9) {
            for period in (n as u64..=16).step_by(n) {
                let fast = find_complement(&a, period).unwrap();
                if let Some(c) = &fast {
                    assert!(c.verify(&a));
                }
                assert_eq!(fast.is_some(), brute_force_tiles(&a, period), "A = {a}, n = {period}");
            }
        }
    }
}

/// All `N`-subsets of `(1/D)Z/Z` containing 0 that verify, in lexicographic order.
fn brute_force_spectra(a: &TileSet, d: u64) -> Vec<Spectrum> {
    let mut out = Vec::new();
    fn rec(a: &TileSet, d: u64, start: u64, cur: &mut Vec<u64>, out: &mut Vec<Spectrum>) {
        if cur.len() == a.len() {
            let s = Spectrum::new(cur.iter().map(|&v| Reduced::frac(v as i64, d)).collect()).unwrap();
            if is_spectrum(a, &s) {
                out.push(s);
            }
            return;
        }
        for v in start..d {
            cur.push(v);
            rec(a, d, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(a, d, 1, &mut vec![0], &mut out);
    out
}

#[test]
fn clique_search_matches_brute_force() {
    for n in 2..=4 {
        for a in sets(n, 9) {
            let p = profile(&a);
            let d = p.divisors_lcm().unwrap();
            if d > 60 {
                continue;
            }
            let brute = if p.divisors.is_empty() { vec![] } else { brute_force_spectra(&a, d) };
            assert_eq!(all_spectra(&p, None, usize::MAX).unwrap(), brute, "A = {a}");
            assert_eq!(spectrum_search(&a), brute.first().cloned(), "A = {a}");
        }
    }
}

#[test]
fn unit_fraction_law_on_random_inputs() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut checked = 0;
    while checked < 200 {
        let count = rng.gen_range(1..=4);
        let mut parts = Vec::new();
        let mut used = Vec::new();
        for _ in 0..count {
            let p = primes[rng.gen_range(0..primes.len())];
            if used.contains(&p) {
                continue;
            }
            used.push(p);
            let s = p.pow(rng.gen_range(1..=2));
            let k = loop {
                let k = rng.gen_range(-50i64..50);
                if k.rem_euclid(s as i64) as u64 % p != 0 {
                    break k;
                }
            };
            parts.push((k, s));
        }
        let product: u64 = parts.iter().map(|&(_, s)| s).product();
        assert_eq!(unit_fraction_order(&parts).unwrap(), product, "{parts:?}");
        checked += 1;
    }
}
