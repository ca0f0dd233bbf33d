//! Independent oracles and seeded property suites shared by the integration
//! tests and the acceptance target.
#![allow(dead_code)]

use std::collections::HashMap;

use detarr::derivations::Derivation;
use detarr::graphs::Graph;
use detarr::polymatrix::PolyMatrix;
use detarr::polyring::{Polynomial, Ring, VarId};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeds for the property suites, one per suite, fixed so failures replay.
pub const RING_AXIOM_SEED: u64 = 0x5eed_0001;
pub const LEIBNIZ_SEED: u64 = 0x5eed_0002;
pub const DET_ORACLE_SEED: u64 = 0x5eed_0003;
pub const EVAL_HOM_SEED: u64 = 0x5eed_0004;
pub const PROPERTY_TRIALS: usize = 120;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All pairs `(i, j)`, `1 <= i < j <= n`, in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect()
}

/// The labeled graph whose edge set is selected by the bits of `mask` over
/// [`all_pairs`].
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = all_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, e)| e);
    Graph::new(n, edges).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = all_pairs(n)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Every simple cycle of length >= 3, each listed once: it starts at its
/// smallest vertex and its second vertex is smaller than its last.
pub fn simple_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for w in g.neighbors(last).collect::<Vec<_>>() {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if w > start && !path.contains(&w) {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 1..=g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

pub fn has_chord(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    (0..k).any(|a| (a + 2..k).any(|b| !(a == 0 && b == k - 1) && g.has_edge(cycle[a], cycle[b])))
}

/// Chordal iff every cycle of length >= 4 has a chord.
pub fn oracle_is_chordal(g: &Graph) -> bool {
    simple_cycles(g)
        .iter()
        .filter(|c| c.len() >= 4)
        .all(|c| has_chord(g, c))
}

/// Length of the longest cycle of length >= 4 without a chord.
pub fn oracle_longest_hole(g: &Graph) -> Option<usize> {
    simple_cycles(g)
        .iter()
        .filter(|c| c.len() >= 4 && !has_chord(g, c))
        .map(Vec::len)
        .max()
}

/// All permutations of `0..k` with their signs.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in signed_permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            let t = (p.len() - pos) as i32;
            out.push((q, if t % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// `Σ_σ sgn(σ) ∏_r m[r][σ(r)]`.
pub fn leibniz_det(m: &PolyMatrix) -> Polynomial {
    let k = m.rows();
    let ring = m.ring();
    let mut acc = ring.zero();
    for (perm, sign) in signed_permutations(k) {
        let mut term = ring.one();
        for (r, &c) in perm.iter().enumerate() {
            term = &term * m.get(r, c);
            if term.is_zero() {
                break;
            }
        }
        acc = if sign > 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `a_(m,k)` by summing over all orderings of `T_k = {4..n} \ {k}`: the
/// first `m` entries contribute `x`, the rest `y`; each subset is hit
/// `m!·(|T_k|−m)!` times.
pub fn a_coeff_oracle(m: usize, k: usize, n: usize) -> Polynomial {
    let ring = Ring::new(n);
    let rest: Vec<usize> = (4..=n).filter(|&t| t != k).collect();
    let mut acc = ring.zero();
    for (perm, _) in signed_permutations(rest.len()) {
        let mut term = ring.one();
        for (pos, &idx) in perm.iter().enumerate() {
            let t = rest[idx];
            term = &term * &if pos < m { ring.x(t) } else { ring.y(t) };
        }
        acc = &acc + &term;
    }
    let d = factorial(m) * factorial(rest.len() - m);
    let terms: Vec<_> = acc
        .terms()
        .map(|(mono, c)| {
            assert!((c % &d).is_zero());
            (mono.clone(), c / &d)
        })
        .collect();
    Polynomial::from_terms(n, terms)
}

/// `Π_{i<s<=n} (x_i − x_s)`.
pub fn vandermonde_row(i: usize, n: usize) -> Polynomial {
    let ring = Ring::new(n);
    (i + 1..=n).fold(ring.one(), |acc, s| &acc * &(&ring.x(i) - &ring.x(s)))
}

pub fn random_poly(
    rng: &mut impl Rng,
    ring: Ring,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let vars: Vec<VarId> = ring.variables().collect();
    ring.random(rng, &vars, max_degree, max_terms, 9)
}

pub fn random_matrix(rng: &mut impl Rng, ring: Ring, k: usize, max_degree: u32) -> PolyMatrix {
    let entries = (0..k * k)
        .map(|_| random_poly(rng, ring, max_degree, 3))
        .collect();
    PolyMatrix::new(ring, k, k, entries).unwrap()
}

pub fn random_diagonal(rng: &mut impl Rng, ring: Ring, k: usize, max_degree: u32) -> PolyMatrix {
    let diag = (0..k)
        .map(|_| loop {
            let p = random_poly(rng, ring, max_degree, 3);
            if !p.is_zero() {
                break p;
            }
        })
        .collect();
    PolyMatrix::diagonal(ring, diag).unwrap()
}

pub fn random_derivation(rng: &mut impl Rng, ring: Ring) -> Derivation {
    let n = ring.n();
    let xs = (0..n).map(|_| random_poly(rng, ring, 2, 3)).collect();
    let ys = (0..n).map(|_| random_poly(rng, ring, 2, 3)).collect();
    Derivation::new(ring, xs, ys).unwrap()
}

pub fn random_point(rng: &mut impl Rng, ring: Ring) -> HashMap<VarId, BigInt> {
    ring.variables()
        .map(|v| (v, BigInt::from(rng.gen_range(-50i64..=50))))
        .collect()
}

/// Commutative ring axioms on random polynomials.
pub fn ring_axioms(seed: u64, trials: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for t in 0..trials {
        let ring = Ring::new(r.gen_range(1..=3));
        let a = random_poly(&mut r, ring, 3, 5);
        let b = random_poly(&mut r, ring, 3, 5);
        let c = random_poly(&mut r, ring, 3, 5);
        let checks = [
            (&a + &b == &b + &a, "a+b = b+a"),
            (&a * &b == &b * &a, "ab = ba"),
            (&(&a + &b) + &c == &a + &(&b + &c), "(a+b)+c = a+(b+c)"),
            (&(&a * &b) * &c == &a * &(&b * &c), "(ab)c = a(bc)"),
            (&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "a(b+c) = ab+ac"),
            (&a + &ring.zero() == a, "a+0 = a"),
            (&a * &ring.one() == a, "a·1 = a"),
            ((&a + &a.scale(&BigInt::from(-1))).is_zero(), "a+(−a) = 0"),
        ];
        if let Some((_, name)) = checks.iter().find(|(ok, _)| !ok) {
            return Err(format!(
                "trial {t}: {name} fails for a = {a}, b = {b}, c = {c}"
            ));
        }
    }
    Ok(())
}

/// `θ(fg) = f·θ(g) + g·θ(f)` for random derivations.
pub fn leibniz_rule(seed: u64, trials: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for t in 0..trials {
        let ring = Ring::new(r.gen_range(1..=3));
        let d = random_derivation(&mut r, ring);
        let f = random_poly(&mut r, ring, 3, 4);
        let g = random_poly(&mut r, ring, 3, 4);
        let lhs = d.apply(&(&f * &g)).map_err(|e| e.to_string())?;
        let rhs = &(&f * &d.apply(&g).unwrap()) + &(&g * &d.apply(&f).unwrap());
        if lhs != rhs {
            return Err(format!(
                "trial {t}: θ(fg) ≠ fθ(g)+gθ(f) for f = {f}, g = {g}"
            ));
        }
    }
    Ok(())
}

/// Bareiss and cofactor determinants agree with the permutation sum.
pub fn det_oracle_agreement(seed: u64, trials: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for t in 0..trials {
        let ring = Ring::new(r.gen_range(1..=2));
        let k = r.gen_range(1..=4);
        let m = random_matrix(&mut r, ring, k, 2);
        let oracle = leibniz_det(&m);
        let bareiss = m.det_bareiss().map_err(|e| e.to_string())?;
        let cofactor = m.det_cofactor().map_err(|e| e.to_string())?;
        if bareiss != oracle || cofactor != oracle {
            return Err(format!("trial {t}: determinant disagreement on\n{m}"));
        }
    }
    Ok(())
}

/// Evaluation at integer points respects `+` and `·`.
pub fn eval_homomorphism(seed: u64, trials: usize) -> Result<(), String> {
    let mut r = rng(seed);
    for t in 0..trials {
        let ring = Ring::new(r.gen_range(1..=3));
        let a = random_poly(&mut r, ring, 4, 5);
        let b = random_poly(&mut r, ring, 4, 5);
        let pt = random_point(&mut r, ring);
        let ev = |p: &Polynomial| p.eval(&pt).unwrap();
        if ev(&(&a + &b)) != ev(&a) + ev(&b) || ev(&(&a * &b)) != ev(&a) * ev(&b) {
            return Err(format!(
                "trial {t}: eval is not a homomorphism for a = {a}, b = {b}"
            ));
        }
    }
    Ok(())
}
