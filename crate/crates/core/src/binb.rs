//! Balls-in-bins with a per-pair cost table and a global budget, solved with
//! polynomials whose exponents are ball-subset masks.

use std::collections::BTreeSet;

/// `assignment[i]` is the bin holding ball `i`.
pub type Assignment = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinBInstance {
    pub balls: Vec<u64>,
    pub bins: Vec<u64>,
    /// `cost[i][j]`: cost of putting ball `i` into bin `j`.
    pub cost: Vec<Vec<u64>>,
    pub budget: u64,
}

impl BinBInstance {
    pub fn new(balls: Vec<u64>, bins: Vec<u64>, cost: Vec<Vec<u64>>, budget: u64) -> Self {
        assert_eq!(cost.len(), balls.len(), "cost table needs one row per ball");
        assert!(cost.iter().all(|r| r.len() == bins.len()), "cost row width");
        BinBInstance {
            balls,
            bins,
            cost,
            budget,
        }
    }

    pub fn s(&self) -> usize {
        self.balls.len()
    }

    pub fn t(&self) -> usize {
        self.bins.len()
    }

    pub fn assignment_cost(&self, a: &[usize]) -> u64 {
        a.iter().enumerate().map(|(i, &j)| self.cost[i][j]).sum()
    }

    /// Volumes respected and total cost within budget.
    pub fn assignment_ok(&self, a: &[usize]) -> bool {
        if a.len() != self.s() || a.iter().any(|&j| j >= self.t()) {
            return false;
        }
        let mut vol = vec![0u64; self.t()];
        for (i, &j) in a.iter().enumerate() {
            vol[j] += self.balls[i];
        }
        vol.iter().zip(&self.bins).all(|(v, c)| v <= c) && self.assignment_cost(a) <= self.budget
    }

    fn subset_volume(&self, mask: u64) -> u64 {
        bits(mask).map(|i| self.balls[i]).sum()
    }

    fn subset_cost(&self, mask: u64, j: usize) -> u64 {
        bits(mask).map(|i| self.cost[i][j]).sum()
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Characteristic vector of a ball set, read as an integer.
pub fn chi(balls: &[usize]) -> u64 {
    balls.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// A polynomial in representative form: only which monomials occur matters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MaskPolynomial {
    pub width: u32,
    pub present: BTreeSet<u64>,
}

impl MaskPolynomial {
    pub fn new(width: u32) -> Self {
        MaskPolynomial {
            width,
            present: BTreeSet::new(),
        }
    }

    pub fn from_exponents(width: u32, exps: impl IntoIterator<Item = u64>) -> Self {
        MaskPolynomial {
            width,
            present: exps.into_iter().collect(),
        }
    }

    pub fn contains(&self, e: u64) -> bool {
        self.present.contains(&e)
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn union_with(&mut self, other: &MaskPolynomial) {
        self.present.extend(other.present.iter().copied());
    }
}

/// Keeps the monomials whose exponent has Hamming weight exactly `i`.
pub fn hamming_project(p: &MaskPolynomial, i: u32) -> MaskPolynomial {
    MaskPolynomial {
        width: p.width,
        present: p
            .present
            .iter()
            .copied()
            .filter(|e| e.count_ones() == i)
            .collect(),
    }
}

/// Product of two polynomials; exponents add as integers.
pub fn poly_multiply(pa: &MaskPolynomial, pb: &MaskPolynomial) -> MaskPolynomial {
    assert_eq!(pa.width, pb.width);
    let limit = 1u128 << (pa.width + 1);
    let mut out = MaskPolynomial::new(pa.width);
    for &a in &pa.present {
        for &b in &pb.present {
            let e = a + b;
            assert!((e as u128) < limit, "exponent overflow");
            out.present.insert(e);
        }
    }
    out
}

/// Product followed by the Hamming projection onto weight `i`; carries always
/// change the weight, so only disjoint pairs survive.
fn multiply_project(pa: &MaskPolynomial, pb: &MaskPolynomial, i: u32, out: &mut MaskPolynomial) {
    for &a in &pa.present {
        for &b in &pb.present {
            let e = a + b;
            if e.count_ones() == i {
                out.present.insert(e);
            }
        }
    }
}

/// The dynamic-programming tables: `a[j][i][q]` holds the subsets of size `i`
/// fitting bin `j` at cost at most `q`; `p[j][i][q]` the subsets of size `i`
/// placeable into bins `0..=j` at total cost at most `q`.
#[derive(Debug, Clone)]
pub struct BinBTables {
    pub s: usize,
    pub t: usize,
    pub w: usize,
    pub a: Vec<Vec<Vec<MaskPolynomial>>>,
    pub p: Vec<Vec<Vec<MaskPolynomial>>>,
}

impl BinBTables {
    pub fn build(inst: &BinBInstance) -> Self {
        let s = inst.s();
        let t = inst.t();
        assert!(s <= 30, "too many balls for mask exponents");
        let w = inst.budget as usize;
        let width = s as u32;
        let empty = vec![vec![vec![MaskPolynomial::new(width); w + 1]; s + 1]; t];
        let mut a = empty.clone();
        for (j, aj) in a.iter_mut().enumerate() {
            for mask in 0..(1u64 << s) {
                let c = inst.subset_cost(mask, j) as usize;
                if inst.subset_volume(mask) > inst.bins[j] || c > w {
                    continue;
                }
                let i = mask.count_ones() as usize;
                for slot in &mut aj[i][c..=w] {
                    slot.present.insert(mask);
                }
            }
        }
        let mut p = empty;
        if t > 0 {
            p[0] = a[0].clone();
        }
        for j in 1..t {
            for i in 0..=s {
                for q in 0..=w {
                    let mut acc = MaskPolynomial::new(width);
                    for i2 in 0..=i {
                        for q2 in 0..=q {
                            multiply_project(
                                &a[j][i2][q2],
                                &p[j - 1][i - i2][q - q2],
                                i as u32,
                                &mut acc,
                            );
                        }
                    }
                    p[j][i][q] = acc;
                }
            }
        }
        BinBTables { s, t, w, a, p }
    }

    /// Whether ball set `mask` fits into bins `0..=j` at cost at most `q`.
    pub fn placeable(&self, mask: u64, j: usize, q: usize) -> bool {
        self.p[j][mask.count_ones() as usize][q].contains(mask)
    }

    /// Least budget `q <= w` for which all balls can be placed.
    pub fn min_budget(&self) -> Option<usize> {
        if self.t == 0 {
            return if self.s == 0 { Some(0) } else { None };
        }
        let full = (1u64 << self.s) - 1;
        (0..=self.w).find(|&q| self.placeable(full, self.t - 1, q))
    }

    /// Recovers an assignment of `mask` into bins `0..=j` within cost `q`.
    pub fn backtrack(&self, mask: u64, j: usize, q: usize) -> Option<Assignment> {
        let mut out = vec![usize::MAX; self.s];
        let (mut mask, mut q) = (mask, q);
        for jj in (0..=j).rev() {
            if jj == 0 {
                let i = mask.count_ones() as usize;
                if !self.a[0][i][q].contains(mask) {
                    return None;
                }
                for b in bits(mask) {
                    out[b] = 0;
                }
                break;
            }
            let mut found = None;
            let mut sub = mask;
            'search: loop {
                let i2 = sub.count_ones() as usize;
                for q2 in 0..=q {
                    if self.a[jj][i2][q2].contains(sub)
                        && self.placeable(mask ^ sub, jj - 1, q - q2)
                    {
                        found = Some((sub, q2));
                        break 'search;
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
            let (sub, q2) = found?;
            for b in bits(sub) {
                out[b] = jj;
            }
            mask ^= sub;
            q -= q2;
        }
        Some(out)
    }
}

/// Decides the instance and recovers a cheapest assignment when one exists.
pub fn solve_binb(inst: &BinBInstance) -> Option<Assignment> {
    solve_binb_min(inst).map(|(a, _)| a)
}

/// Cheapest feasible assignment within budget, with its cost.
pub fn solve_binb_min(inst: &BinBInstance) -> Option<(Assignment, u64)> {
    if inst.s() == 0 {
        return Some((Vec::new(), 0));
    }
    if inst.t() == 0 {
        return None;
    }
    let tables = BinBTables::build(inst);
    let q = tables.min_budget()?;
    let full = (1u64 << inst.s()) - 1;
    let a = tables
        .backtrack(full, inst.t() - 1, q)
        .expect("backtracking must succeed on an accepted instance");
    debug_assert!(inst.assignment_ok(&a));
    let c = inst.assignment_cost(&a);
    Some((a, c))
}

/// Subset dynamic program over bins, `O(t 3^s)`; returns the minimum cost
/// when it is within budget.
pub fn solve_binb_dp3(inst: &BinBInstance) -> Option<u64> {
    let s = inst.s();
    if s == 0 {
        return Some(0);
    }
    let full = (1u64 << s) - 1;
    let size = 1usize << s;
    let mut best = vec![u64::MAX; size];
    best[0] = 0;
    for j in 0..inst.t() {
        let mut next = best.clone();
        for mask in 1..size as u64 {
            let mut sub = mask;
            while sub != 0 {
                let rest = (mask ^ sub) as usize;
                if best[rest] != u64::MAX && inst.subset_volume(sub) <= inst.bins[j] {
                    let c = best[rest] + inst.subset_cost(sub, j);
                    if c < next[mask as usize] {
                        next[mask as usize] = c;
                    }
                }
                sub = (sub - 1) & mask;
            }
        }
        best = next;
    }
    let c = best[full as usize];
    (c <= inst.budget).then_some(c)
}
