//! Integer partitions, nested partitions, and the merge/split operations on
//! cluster graphs that they describe.

use std::collections::BTreeMap;

use crate::graph::{EditSet, Graph, GraphError};

/// All partitions of `l` as non-increasing part lists, in lexicographically
/// decreasing order (`[l]` first, all ones last).
pub fn partitions(l: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if l > 0 {
        rec(l, l, &mut Vec::new(), &mut out);
    }
    out
}

/// Sum of pairwise products over unordered pairs of parts.
pub fn spp(parts: &[usize]) -> usize {
    let total: usize = parts.iter().sum();
    let sq: usize = parts.iter().map(|x| x * x).sum();
    (total * total - sq) / 2
}

/// Multiplicities of a multiset of sizes.
pub fn multiplicities(sizes: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in sizes {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// `x'` can be realized by distinct components whose sizes are `cs`.
pub fn is_valid_for_sizes(xp: &[usize], cs: &[usize]) -> bool {
    let have = multiplicities(cs);
    multiplicities(xp)
        .into_iter()
        .all(|(x, c)| have.get(&x).copied().unwrap_or(0) >= c)
}

pub fn is_g_valid(xp: &[usize], g: &Graph) -> bool {
    is_valid_for_sizes(xp, &g.components().sizes())
}

/// `(cs \ remove) ∪ add`, sorted. Panics if `remove` is not a sub-multiset.
pub fn replace_sizes(cs: &[usize], remove: &[usize], add: &[usize]) -> Vec<usize> {
    let mut out = cs.to_vec();
    for x in remove {
        let pos = out.iter().position(|y| y == x).expect("size not present");
        out.swap_remove(pos);
    }
    out.extend_from_slice(add);
    out.sort_unstable();
    out
}

/// An outer partition together with one inner partition per outer part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedPartition {
    pub outer: Vec<usize>,
    pub inner: Vec<Vec<usize>>,
}

impl NestedPartition {
    /// Union of the inner partitions, sorted non-increasingly.
    pub fn flattened(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.inner.iter().flatten().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn cost(&self) -> usize {
        self.inner.iter().map(|p| spp(p)).sum()
    }
}

/// Calls `f` on every inner-partition multiset of `outer`. Equal outer parts
/// get non-increasing inner indices so each multiset appears once. Stops early
/// when `f` returns `Some`.
pub fn for_each_inner<T>(
    outer: &[usize],
    table: &[Vec<Vec<usize>>],
    mut f: impl FnMut(&NestedPartition) -> Option<T>,
) -> Option<T> {
    fn rec<T>(
        outer: &[usize],
        table: &[Vec<Vec<usize>>],
        idx: &mut Vec<usize>,
        f: &mut dyn FnMut(&NestedPartition) -> Option<T>,
    ) -> Option<T> {
        let pos = idx.len();
        if pos == outer.len() {
            let np = NestedPartition {
                outer: outer.to_vec(),
                inner: outer
                    .iter()
                    .zip(idx.iter())
                    .map(|(&x, &i)| table[x][i].clone())
                    .collect(),
            };
            return f(&np);
        }
        let x = outer[pos];
        let start = if pos > 0 && outer[pos - 1] == x {
            idx[pos - 1]
        } else {
            0
        };
        for i in start..table[x].len() {
            idx.push(i);
            let r = rec(outer, table, idx, f);
            idx.pop();
            if r.is_some() {
                return r;
            }
        }
        None
    }
    rec(outer, table, &mut Vec::new(), &mut f)
}

/// `table[x]` = partitions of `x` for `x <= l`.
pub fn partition_table(l: usize) -> Vec<Vec<Vec<usize>>> {
    (0..=l).map(partitions).collect()
}

/// All nested partitions of `l` in enumeration order.
pub fn nested_partitions(l: usize) -> Vec<NestedPartition> {
    let table = partition_table(l);
    let mut out = Vec::new();
    for outer in partitions(l) {
        for_each_inner(&outer, &table, |np| {
            out.push(np.clone());
            None::<()>
        });
    }
    out
}

/// Picks, for each requested size, an unused component of that size with the
/// smallest vertex id. Returns member lists in request order.
pub fn choose_components(g: &Graph, sizes: &[usize]) -> Result<Vec<Vec<usize>>, GraphError> {
    let comps = g.components();
    if !comps.all_cliques(g) {
        return Err(GraphError::NotCluster);
    }
    let mut used = vec![false; comps.count()];
    let mut out = Vec::with_capacity(sizes.len());
    for &x in sizes {
        let id = (0..comps.count())
            .find(|&c| !used[c] && comps.members[c].len() == x)
            .ok_or(GraphError::NotCluster)?;
        used[id] = true;
        out.push(comps.members[id].clone());
    }
    Ok(out)
}

fn merge_edits(groups: &[Vec<usize>], f: &mut EditSet) {
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            for &u in a {
                for &v in b {
                    f.add(u, v);
                }
            }
        }
    }
}

fn split_edits(members: &[usize], parts: &[usize], f: &mut EditSet) {
    let mut groups = Vec::new();
    let mut start = 0;
    for &p in parts {
        groups.push(members[start..start + p].to_vec());
        start += p;
    }
    for (i, a) in groups.iter().enumerate() {
        for b in &groups[i + 1..] {
            for &u in a {
                for &v in b {
                    f.delete(u, v);
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PartitionError {
    #[error("partition {0:?} is not realizable by the graph's components")]
    NotValid(Vec<usize>),
    #[error("input is not a cluster graph")]
    NotCluster,
}

/// Completion: for every block, merge components of the inner sizes into one clique.
pub fn completion_wrt(g: &Graph, np: &NestedPartition) -> Result<(Graph, EditSet), PartitionError> {
    if !g.is_cluster_graph() {
        return Err(PartitionError::NotCluster);
    }
    let flat = np.flattened();
    if !is_g_valid(&flat, g) {
        return Err(PartitionError::NotValid(flat));
    }
    let order: Vec<usize> = np.inner.iter().flatten().copied().collect();
    let chosen = choose_components(g, &order).map_err(|_| PartitionError::NotValid(flat))?;
    let mut f = EditSet::new();
    let mut it = chosen.into_iter();
    for block in &np.inner {
        let groups: Vec<Vec<usize>> = it.by_ref().take(block.len()).collect();
        merge_edits(&groups, &mut f);
    }
    let h = crate::graph::apply_edits(g, &f).expect("merge edits are additions of non-edges");
    Ok((h, f))
}

/// Deletion: every chosen component of size `y_j` is split into cliques of
/// sizes `Y_j`, slicing its sorted vertex list.
pub fn deletion_wrt(g: &Graph, np: &NestedPartition) -> Result<(Graph, EditSet), PartitionError> {
    if !g.is_cluster_graph() {
        return Err(PartitionError::NotCluster);
    }
    if !is_g_valid(&np.outer, g) {
        return Err(PartitionError::NotValid(np.outer.clone()));
    }
    let chosen =
        choose_components(g, &np.outer).map_err(|_| PartitionError::NotValid(np.outer.clone()))?;
    let mut f = EditSet::new();
    for (members, parts) in chosen.iter().zip(&np.inner) {
        split_edits(members, parts, &mut f);
    }
    let h = crate::graph::apply_edits(g, &f).expect("split edits delete existing edges");
    Ok((h, f))
}

/// Merges components of sizes `balls` into components of sizes `bins`
/// following `assignment` (ball index -> bin index).
pub fn merge_by_assignment(
    g: &Graph,
    balls: &[usize],
    bins: &[usize],
    assignment: &[usize],
) -> Result<(Graph, EditSet), PartitionError> {
    let chosen =
        choose_components(g, balls).map_err(|_| PartitionError::NotValid(balls.to_vec()))?;
    let mut f = EditSet::new();
    for j in 0..bins.len() {
        let groups: Vec<Vec<usize>> = (0..balls.len())
            .filter(|&i| assignment[i] == j)
            .map(|i| chosen[i].clone())
            .collect();
        merge_edits(&groups, &mut f);
    }
    let h = crate::graph::apply_edits(g, &f).expect("merge edits are additions of non-edges");
    Ok((h, f))
}

/// Splits components of sizes `bins` into pieces of sizes `balls` following
/// `assignment` (ball index -> bin index).
pub fn split_by_assignment(
    g: &Graph,
    bins: &[usize],
    balls: &[usize],
    assignment: &[usize],
) -> Result<(Graph, EditSet), PartitionError> {
    let chosen = choose_components(g, bins).map_err(|_| PartitionError::NotValid(bins.to_vec()))?;
    let mut f = EditSet::new();
    for (j, members) in chosen.iter().enumerate() {
        let parts: Vec<usize> = (0..balls.len())
            .filter(|&i| assignment[i] == j)
            .map(|i| balls[i])
            .collect();
        split_edits(members, &parts, &mut f);
    }
    let h = crate::graph::apply_edits(g, &f).expect("split edits delete existing edges");
    Ok((h, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partitions() {
        assert_eq!(partitions(1), vec![vec![1]]);
        assert_eq!(
            partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn spp_examples() {
        assert_eq!(spp(&[1, 4, 6, 6]), 100);
        assert_eq!(spp(&[5]), 0);
        assert_eq!(spp(&[2, 3]), 6);
    }

    #[test]
    fn validity() {
        let g = Graph::cluster(&[1, 2, 3]);
        assert!(is_g_valid(&[1, 2], &g));
        assert!(!is_g_valid(&[2, 2], &g));
        assert!(is_g_valid(&[], &g));
    }

    #[test]
    fn nested_has_no_duplicates() {
        let all = nested_partitions(6);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn completion_examples() {
        let g = Graph::cluster(&[1, 2]);
        let np = NestedPartition {
            outer: vec![3],
            inner: vec![vec![2, 1]],
        };
        let (h, f) = completion_wrt(&g, &np).unwrap();
        assert_eq!(h.components().sizes(), vec![3]);
        assert_eq!(f.len(), 2);

        let g = Graph::cluster(&[1, 1, 1]);
        let np = NestedPartition {
            outer: vec![3],
            inner: vec![vec![1, 1, 1]],
        };
        let (_, f) = completion_wrt(&g, &np).unwrap();
        assert_eq!(f.len(), 3);

        let np = NestedPartition {
            outer: vec![2, 1],
            inner: vec![vec![2], vec![1]],
        };
        let (h, f) = completion_wrt(&Graph::cluster(&[1, 2]), &np).unwrap();
        assert_eq!(h, Graph::cluster(&[1, 2]));
        assert!(f.is_empty());
    }

    #[test]
    fn deletion_examples() {
        let np = NestedPartition {
            outer: vec![3],
            inner: vec![vec![2, 1]],
        };
        let (h, f) = deletion_wrt(&Graph::cluster(&[3]), &np).unwrap();
        assert_eq!(h.components().sizes(), vec![1, 2]);
        assert_eq!(f.len(), 2);

        let np = NestedPartition {
            outer: vec![4],
            inner: vec![vec![2, 2]],
        };
        let (h, f) = deletion_wrt(&Graph::cluster(&[4]), &np).unwrap();
        assert_eq!(h.components().sizes(), vec![2, 2]);
        assert_eq!(f.len(), 4);

        let np = NestedPartition {
            outer: vec![4],
            inner: vec![vec![4]],
        };
        let (_, f) = deletion_wrt(&Graph::cluster(&[4]), &np).unwrap();
        assert!(f.is_empty());
    }
}
