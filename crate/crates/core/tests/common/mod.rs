//! Shared test machinery: a deterministic RNG, the seeded charge grid, and
//! a brute-force representation oracle over a prime field.
//!
//! The oracle builds explicit matrices, enumerates *all* subspace tuples of
//! the relevant dimensions, and intersects the subrepresentation data of
//! several random samples. It never calls the generic hom/ext recursion it
//! is used to check.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use kacstab::charge::CentralCharge;
use kacstab::gauss::Gaussian;
use kacstab::quiver::Quiver;
use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type I = i128;

// ---------------------------------------------------------------- rng

/// SplitMix64: tiny, stable forever, good enough for test sampling.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

// ---------------------------------------------------------------- charges

/// Deterministic grid of valid charges: small rational parts, including
/// boundary rays and repeated phases.
pub fn charge_grid(n: usize, count: usize, seed: u64) -> Vec<CentralCharge<I>> {
    let mut rng = SplitMix(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut vals = Vec::with_capacity(n);
        for _ in 0..n {
            let den = rng.range_i64(1, 4);
            let y = rng.range_i64(0, 5);
            let mut x = rng.range_i64(-5, 5);
            if y == 0 {
                x = -(x.abs().max(1));
            }
            vals.push(Gaussian::new(
                Ratio::new(x as I, den as I),
                Ratio::new(y as I, den as I),
            ));
        }
        out.push(CentralCharge::validate(vals).expect("grid charges are valid"));
    }
    out
}

// ---------------------------------------------------------------- GF(p)

pub const P: u64 = 101;

fn gf_inv(a: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut base = a % P;
    let mut exp = P - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

/// Representation with arrow matrices over GF(p), canonical arrow order.
#[derive(Debug, Clone)]
pub struct FRep {
    pub dims: Vec<usize>,
    /// `(source, target, matrix)` with matrix shaped `dims[target] × dims[source]`.
    pub mats: Vec<(usize, usize, Vec<Vec<u64>>)>,
}

pub fn random_frep(q: &Quiver, dims: &[usize], rng: &mut SplitMix) -> FRep {
    let mats = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let m = (0..dims[t])
                .map(|_| (0..dims[s]).map(|_| rng.below(P)).collect())
                .collect();
            (s, t, m)
        })
        .collect();
    FRep {
        dims: dims.to_vec(),
        mats,
    }
}

/// All subspaces of GF(p)^d for d ≤ 2, as row-echelon basis lists.
fn subspaces(d: usize) -> Vec<Vec<Vec<u64>>> {
    match d {
        0 => vec![vec![]],
        1 => vec![vec![], vec![vec![1]]],
        2 => {
            let mut out = vec![vec![]];
            for t in 0..P {
                out.push(vec![vec![1, t]]);
            }
            out.push(vec![vec![0, 1]]);
            out.push(vec![vec![1, 0], vec![0, 1]]);
            out
        }
        _ => panic!("oracle supports vertex dimensions up to 2"),
    }
}

fn mat_apply(m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (a, b)| (acc + a * b) % P)
        })
        .collect()
}

/// Reduces `v` against an echelon basis; returns true iff `v` lies in the span.
fn in_span(basis: &[Vec<u64>], v: &[u64]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let lead = b.iter().position(|&x| x != 0).expect("nonzero basis row");
        if v[lead] != 0 {
            let f = v[lead] * gf_inv(b[lead]) % P;
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + P * P - f * y % P) % P;
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// Every subrepresentation dimension vector of `rep`, with one witness
/// subspace tuple each. Exhaustive over all subspace tuples.
pub fn subrep_data(rep: &FRep) -> BTreeMap<Vec<usize>, Vec<Vec<Vec<u64>>>> {
    let per_vertex: Vec<Vec<Vec<Vec<u64>>>> =
        rep.dims.iter().map(|&d| subspaces(d)).collect();
    let mut out: BTreeMap<Vec<usize>, Vec<Vec<Vec<u64>>>> = BTreeMap::new();
    let n = rep.dims.len();
    let mut idx = vec![0usize; n];
    'outer: loop {
        let tuple: Vec<&Vec<Vec<u64>>> =
            (0..n).map(|v| &per_vertex[v][idx[v]]).collect();
        let stable = rep.mats.iter().all(|(s, t, m)| {
            tuple[*s]
                .iter()
                .all(|u| in_span(tuple[*t], &mat_apply(m, u)))
        });
        if stable {
            let dims: Vec<usize> = tuple.iter().map(|b| b.len()).collect();
            out.entry(dims)
                .or_insert_with(|| tuple.iter().map(|b| (*b).clone()).collect());
        }
        let mut k = 0;
        loop {
            if k == n {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    out
}

/// Quotient of `rep` by the witness subrepresentation (explicit matrices on
/// complement coordinates).
pub fn quotient_frep(rep: &FRep, witness: &[Vec<Vec<u64>>]) -> FRep {
    // Per vertex: echelon basis rows; quotient coordinates are the
    // non-pivot positions after reduction.
    let mut proj: Vec<(Vec<usize>, Vec<Vec<u64>>)> = Vec::new(); // (free positions, basis)
    for (v, basis) in witness.iter().enumerate() {
        let pivots: Vec<usize> = basis
            .iter()
            .map(|b| b.iter().position(|&x| x != 0).expect("nonzero row"))
            .collect();
        let free: Vec<usize> = (0..rep.dims[v]).filter(|i| !pivots.contains(i)).collect();
        proj.push((free, basis.clone()));
    }
    let reduce = |v: usize, vec: &[u64]| -> Vec<u64> {
        let (free, basis) = &proj[v];
        let mut w = vec.to_vec();
        for b in basis {
            let lead = b.iter().position(|&x| x != 0).unwrap();
            if w[lead] != 0 {
                let f = w[lead] * gf_inv(b[lead]) % P;
                for (x, y) in w.iter_mut().zip(b) {
                    *x = (*x + P * P - f * y % P) % P;
                }
            }
        }
        free.iter().map(|&i| w[i]).collect()
    };
    let dims: Vec<usize> = proj.iter().map(|(f, _)| f.len()).collect();
    let mats = rep
        .mats
        .iter()
        .map(|(s, t, m)| {
            let cols = &proj[*s].0;
            let mut out = vec![vec![0u64; cols.len()]; dims[*t]];
            for (j, &c) in cols.iter().enumerate() {
                // image of the j-th quotient basis vector e_c
                let col: Vec<u64> = (0..rep.dims[*t]).map(|r| m[r][c]).collect();
                let q = reduce(*t, &col);
                for (r, val) in q.iter().enumerate() {
                    out[r][j] = *val;
                }
            }
            (*s, *t, out)
        })
        .collect();
    FRep { dims, mats }
}

// ---------------------------------------------------------------- oracle

/// Exact phase comparison for positive classes under a charge: compares
/// `arg Z(a)` and `arg Z(b)` inside the semiclosed upper half plane by a
/// rational cross product.
pub fn phase_cmp(z: &CentralCharge<I>, a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    let eval = |dims: &[usize]| {
        let mut re = Ratio::new(0, 1);
        let mut im = Ratio::new(0, 1);
        for (c, v) in dims.iter().zip(z.values()) {
            let f = Ratio::new(*c as I, 1);
            re += v.re.clone() * f.clone();
            im += v.im.clone() * f;
        }
        (re, im)
    };
    let (xa, ya) = eval(a);
    let (xb, yb) = eval(b);
    // Both points lie in arg ∈ (0, 1]; the cross product orders the rays.
    let cross = xa * yb - ya * xb;
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_zero() {
        std::cmp::Ordering::Equal
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Charge-independent generic subrepresentation data for one dimension
/// vector: the intersection of several samples plus one sample realizing it.
pub struct OracleRep {
    pub alpha: Vec<usize>,
    pub subdims: BTreeSet<Vec<usize>>,
    pub sample: FRep,
    pub sample_data: BTreeMap<Vec<usize>, Vec<Vec<Vec<u64>>>>,
}

pub fn oracle_rep(q: &Quiver, alpha: &[usize], seed: u64) -> OracleRep {
    let mut rng = SplitMix(seed ^ 0xABCD_EF01_2345_6789);
    let mut sets: Vec<(FRep, BTreeMap<Vec<usize>, Vec<Vec<Vec<u64>>>>)> = Vec::new();
    for _ in 0..3 {
        let rep = random_frep(q, alpha, &mut rng);
        let data = subrep_data(&rep);
        sets.push((rep, data));
    }
    let mut inter: BTreeSet<Vec<usize>> = sets[0].1.keys().cloned().collect();
    for (_, d) in &sets[1..] {
        inter.retain(|k| d.contains_key(k));
    }
    // A sample whose subrepresentation profile matches the intersection.
    for _ in 0..20 {
        if let Some((rep, data)) = sets
            .iter()
            .find(|(_, d)| d.keys().cloned().collect::<BTreeSet<_>>() == inter)
        {
            return OracleRep {
                alpha: alpha.to_vec(),
                subdims: inter,
                sample: rep.clone(),
                sample_data: data.clone(),
            };
        }
        let rep = random_frep(q, alpha, &mut rng);
        let data = subrep_data(&rep);
        inter.retain(|k| data.contains_key(k));
        sets.push((rep, data));
    }
    panic!("no sample realizes the generic subrepresentation profile");
}

/// Brute-force semistability of the class `alpha`: no subrepresentation of
/// the generic sample has strictly larger phase.
pub fn oracle_semistable(o: &OracleRep, z: &CentralCharge<I>) -> bool {
    o.subdims.iter().all(|beta| {
        if beta.iter().all(|&x| x == 0) || beta == &o.alpha {
            return true;
        }
        phase_cmp(z, beta, &o.alpha) != std::cmp::Ordering::Greater
    })
}

/// Object-level filtration of the generic sample: repeatedly split off the
/// subrepresentation of maximal phase (then maximal total dimension, then
/// lexicographically largest) and pass to the explicit quotient.
pub fn oracle_hn(
    o: &OracleRep,
    z: &CentralCharge<I>,
    cache: &mut HashMap<Vec<Vec<usize>>, (FRep, BTreeMap<Vec<usize>, Vec<Vec<Vec<u64>>>>)>,
) -> Vec<Vec<usize>> {
    let mut chain: Vec<Vec<usize>> = Vec::new();
    let mut parts = Vec::new();
    let mut cur_rep = o.sample.clone();
    let mut cur_data = o.sample_data.clone();
    loop {
        if cur_rep.dims.iter().all(|&d| d == 0) {
            return parts;
        }
        let mut best: Option<Vec<usize>> = None;
        for beta in cur_data.keys() {
            if beta.iter().all(|&x| x == 0) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => {
                    match phase_cmp(z, beta, b) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => {
                            let hb: usize = beta.iter().sum();
                            let hbest: usize = b.iter().sum();
                            hb > hbest || (hb == hbest && beta > b)
                        }
                    }
                }
            };
            if better {
                best = Some(beta.clone());
            }
        }
        let beta = best.expect("nonzero representation has nonzero subreps");
        let witness = cur_data[&beta].clone();
        parts.push(beta.clone());
        chain.push(beta.clone());
        if let Some((r, d)) = cache.get(&chain) {
            cur_rep = r.clone();
            cur_data = d.clone();
        } else {
            let qrep = quotient_frep(&cur_rep, &witness);
            let qdata = subrep_data(&qrep);
            cache.insert(chain.clone(), (qrep.clone(), qdata.clone()));
            cur_rep = qrep;
            cur_data = qdata;
        }
    }
}

// ---------------------------------------------------------------- quivers

pub fn a2() -> Quiver {
    Quiver::new(2, &[(0, 1)]).unwrap()
}
pub fn a3() -> Quiver {
    Quiver::new(3, &[(0, 1), (1, 2)]).unwrap()
}
pub fn a4() -> Quiver {
    Quiver::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
}
pub fn d4() -> Quiver {
    Quiver::new(4, &[(0, 3), (1, 3), (2, 3)]).unwrap()
}
pub fn k2() -> Quiver {
    Quiver::new(2, &[(0, 1), (0, 1)]).unwrap()
}
pub fn k3() -> Quiver {
    Quiver::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
}
/// Acyclic orientations of the affine triangle.
pub fn affine_a2_a() -> Quiver {
    Quiver::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
}
pub fn affine_a2_b() -> Quiver {
    Quiver::new(3, &[(0, 1), (2, 1), (0, 2)]).unwrap()
}

/// All nonzero dimension vectors with entries ≤ 2.
pub fn small_alphas(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for mut code in 1..total {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(code % 3);
            code /= 3;
        }
        out.push(v);
    }
    out
}
