//! Instance generators: random graphs, cluster graphs, the square-root
//! family for completion, and the reduction from numerical 3D matching.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EditSet, Graph, Instance, Variant};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("k = {0} is not a perfect square")]
    NotSquare(usize),
    #[error("n = {n} does not split into groups of {root} after {root} isolated vertices")]
    BadOrder { n: usize, root: usize },
    #[error("invalid N3DM input: {0}")]
    N3dm(String),
    #[error("triples do not form a perfect matching: {0}")]
    Matching(String),
}

pub fn gen_random(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

pub fn gen_cluster(sizes: &[usize]) -> Graph {
    Graph::cluster(sizes)
}

/// `sqrt(k)` isolated vertices followed by `(n - sqrt(k)) / sqrt(k)` cliques
/// of size `sqrt(k)`, with `eta = 1`.
pub fn gen_example1(k: usize, n: usize) -> Result<Instance, GenError> {
    let root = (k as f64).sqrt().round() as usize;
    if root * root != k || k == 0 {
        return Err(GenError::NotSquare(k));
    }
    if n < root || !(n - root).is_multiple_of(root) {
        return Err(GenError::BadOrder { n, root });
    }
    let mut sizes = vec![1; root];
    sizes.extend(std::iter::repeat_n(root, (n - root) / root));
    Ok(Instance::new(Graph::cluster(&sizes), k, 1, Variant::Bcc).expect("cluster graph"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N3DMInput {
    pub t: u64,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
}

impl N3DMInput {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Checks positivity, `t > x` for every entry, `x <= n^d`, and that the
    /// entries sum to `n t`.
    pub fn validate(&self, d: u32) -> Result<(), GenError> {
        let n = self.n();
        if n == 0 || self.b.len() != n || self.c.len() != n {
            return Err(GenError::N3dm(format!(
                "sequence lengths {}, {}, {}",
                self.a.len(),
                self.b.len(),
                self.c.len()
            )));
        }
        if d == 0 {
            return Err(GenError::N3dm("d must be positive".into()));
        }
        let cap = (n as u64)
            .checked_pow(d)
            .ok_or_else(|| GenError::N3dm("n^d overflows".into()))?;
        for &x in self.a.iter().chain(&self.b).chain(&self.c) {
            if x == 0 {
                return Err(GenError::N3dm("entries must be positive".into()));
            }
            if x >= self.t {
                return Err(GenError::N3dm(format!(
                    "entry {x} is not below t = {}",
                    self.t
                )));
            }
            if x > cap {
                return Err(GenError::N3dm(format!("entry {x} exceeds n^d = {cap}")));
            }
        }
        let total: u64 = self.a.iter().chain(&self.b).chain(&self.c).sum();
        if total != n as u64 * self.t {
            return Err(GenError::N3dm(format!(
                "entries sum to {total}, expected {}",
                n as u64 * self.t
            )));
        }
        Ok(())
    }
}

/// Offsets and sizes of the reduction for a validated input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hardness {
    pub big_a: u64,
    pub big_b: u64,
    pub big_c: u64,
    pub t_prime: u64,
    /// Clique sizes in vertex order: all `a'`, then all `b'`, then all `c'`.
    pub sizes: Vec<usize>,
    pub instance: Instance,
}

pub fn gen_hardness(input: &N3DMInput, d: u32) -> Result<Hardness, GenError> {
    input.validate(d)?;
    let n = input.n() as u64;
    let pow = |e: u32| {
        n.checked_pow(e)
            .ok_or_else(|| GenError::N3dm(format!("n^{e} overflows")))
    };
    let (big_a, big_b, big_c) = (pow(2 * d)?, pow(3 * d)?, pow(7 * d)?);
    let t_prime = input.t + big_a + big_b + big_c;
    let sizes: Vec<usize> = input
        .a
        .iter()
        .map(|x| x + big_a)
        .chain(input.b.iter().map(|x| x + big_b))
        .chain(input.c.iter().map(|x| x + big_c))
        .map(|x| x as usize)
        .collect();
    let g = Graph::cluster(&sizes);
    let choose2 = |x: u64| x * (x - 1) / 2;
    let k = n * choose2(t_prime) - g.m() as u64;
    let instance = Instance::new(g, k as usize, 0, Variant::Bcc).expect("cluster graph");
    Ok(Hardness {
        big_a,
        big_b,
        big_c,
        t_prime,
        sizes,
        instance,
    })
}

/// Additions merging clique `a_i`, `b_j`, `c_l` for every triple `(i, j, l)`.
/// The triples must use each index of each sequence exactly once.
pub fn hardness_witness(
    h: &Hardness,
    triples: &[(usize, usize, usize)],
) -> Result<EditSet, GenError> {
    let n = h.sizes.len() / 3;
    let mut used = [vec![false; n], vec![false; n], vec![false; n]];
    for &(i, j, l) in triples {
        for (s, x) in [i, j, l].into_iter().enumerate() {
            if x >= n || used[s][x] {
                return Err(GenError::Matching(format!("index {x} in sequence {s}")));
            }
            used[s][x] = true;
        }
    }
    if triples.len() != n {
        return Err(GenError::Matching(format!(
            "{} triples for n = {n}",
            triples.len()
        )));
    }
    let mut start = vec![0; h.sizes.len()];
    for c in 1..h.sizes.len() {
        start[c] = start[c - 1] + h.sizes[c - 1];
    }
    let block = |c: usize| start[c]..start[c] + h.sizes[c];
    let mut f = EditSet::new();
    for &(i, j, l) in triples {
        let parts = [i, n + j, 2 * n + l];
        for x in 0..3 {
            for y in x + 1..3 {
                for u in block(parts[x]) {
                    for v in block(parts[y]) {
                        f.add(u, v);
                    }
                }
            }
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_extremes() {
        assert_eq!(gen_random(5, 0.0, 7).unwrap().m(), 0);
        assert_eq!(gen_random(5, 1.0, 7).unwrap().m(), 10);
        assert_eq!(
            gen_random(9, 0.5, 3).unwrap(),
            gen_random(9, 0.5, 3).unwrap()
        );
        assert!(gen_random(3, 1.5, 0).is_err());
    }

    #[test]
    fn example1_shape() {
        let inst = gen_example1(4, 8).unwrap();
        assert_eq!(inst.graph.components().sizes(), vec![1, 1, 2, 2, 2]);
        assert_eq!((inst.k, inst.eta), (4, 1));
        assert_eq!(gen_example1(5, 8), Err(GenError::NotSquare(5)));
        assert!(gen_example1(4, 7).is_err());
    }

    #[test]
    fn cluster_shape() {
        let g = gen_cluster(&[3, 3]);
        assert_eq!(g.m(), 6);
        assert_eq!(g.components().count(), 2);
    }

    #[test]
    fn rejects_bad_n3dm() {
        let bad = N3DMInput {
            t: 4,
            a: vec![1, 2],
            b: vec![1, 1],
            c: vec![2, 2],
        };
        assert!(gen_hardness(&bad, 1).is_err());
        let big = N3DMInput {
            t: 9,
            a: vec![3, 3],
            b: vec![3, 3],
            c: vec![3, 3],
        };
        assert!(gen_hardness(&big, 1).is_err());
    }
}
