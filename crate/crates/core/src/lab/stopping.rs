use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::graph::BipartiteGraph;
use crate::error::{Error, Result};
use crate::numerics::binomial;

/// Largest block length handled by exhaustive (2^N) enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 24;
/// Largest number of subsets visited when enumerating by size.
pub const SUBSET_BUDGET: u64 = 1 << 26;
/// Largest number of ordered stopping-set pairs examined by [`census`].
pub const PAIR_BUDGET: u64 = 200_000_000;

fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// No check sees exactly one edge from the subset (parallel edges count
/// separately). The empty set qualifies.
pub fn is_stopping_set(graph: &BipartiteGraph, subset: &[usize]) -> bool {
    let mut counts = vec![0u32; graph.num_checks()];
    let mut seen = vec![false; graph.n()];
    for &v in subset {
        if v >= graph.n() || std::mem::replace(&mut seen[v], true) {
            continue;
        }
        for &ch in graph.var_checks(v) {
            counts[ch as usize] += 1;
        }
    }
    counts.iter().all(|&k| k != 1)
}

pub fn is_stopping_mask(graph: &BipartiteGraph, mask: u64) -> bool {
    is_stopping_set(graph, &members(mask))
}

/// Peeling decoder with reusable scratch space.
#[derive(Debug, Clone)]
pub struct Peeler<'g> {
    graph: &'g BipartiteGraph,
    counts: Vec<u32>,
    erased: Vec<bool>,
    queue: Vec<u32>,
}

impl<'g> Peeler<'g> {
    pub fn new(graph: &'g BipartiteGraph) -> Self {
        Peeler {
            graph,
            counts: vec![0; graph.num_checks()],
            erased: vec![false; graph.n()],
            queue: Vec::new(),
        }
    }

    /// Decodes the erasure pattern `erased` (one flag per variable) and
    /// returns the number of variables left erased.
    pub fn run(&mut self, erased: impl IntoIterator<Item = bool>) -> usize {
        let g = self.graph;
        self.counts.iter_mut().for_each(|k| *k = 0);
        let mut left = 0;
        for (v, e) in erased.into_iter().enumerate().take(g.n()) {
            self.erased[v] = e;
            if e {
                left += 1;
                for &ch in g.var_checks(v) {
                    self.counts[ch as usize] += 1;
                }
            }
        }
        self.queue.clear();
        self.queue
            .extend((0..g.num_checks() as u32).filter(|&ch| self.counts[ch as usize] == 1));
        while let Some(ch) = self.queue.pop() {
            if self.counts[ch as usize] != 1 {
                continue;
            }
            let v = g
                .check_vars(ch as usize)
                .iter()
                .copied()
                .find(|&v| self.erased[v as usize])
                .expect("a check with one erased edge has an erased neighbour") as usize;
            self.erased[v] = false;
            left -= 1;
            for &c2 in g.var_checks(v) {
                let k = &mut self.counts[c2 as usize];
                *k -= 1;
                if *k == 1 {
                    self.queue.push(c2);
                }
            }
        }
        left
    }

    pub fn run_mask(&mut self, mask: u64) -> u64 {
        let n = self.graph.n();
        self.run((0..n).map(|v| mask >> v & 1 == 1));
        self.residual_mask()
    }

    pub fn residual(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.erased[v]).collect()
    }

    fn residual_mask(&self) -> u64 {
        self.erased
            .iter()
            .enumerate()
            .fold(0, |m, (v, &e)| if e { m | 1 << v } else { m })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    pub success: bool,
    /// The largest stopping set inside the erased set.
    pub residual: Vec<usize>,
}

pub fn peel_decode(graph: &BipartiteGraph, erased: &[usize]) -> PeelResult {
    let mut flags = vec![false; graph.n()];
    for &v in erased {
        if v < graph.n() {
            flags[v] = true;
        }
    }
    let mut p = Peeler::new(graph);
    let left = p.run(flags);
    PeelResult {
        success: left == 0,
        residual: p.residual(),
    }
}

// Gray-code walk over all 2^N subsets keeping per-check edge counts and the
// number of checks that see exactly one edge.
fn gray_walk(graph: &BipartiteGraph, mut visit: impl FnMut(u64, u32)) {
    let n = graph.n();
    let mut counts = vec![0u32; graph.num_checks()];
    let mut ones = 0usize;
    let mut mask = 0u64;
    let mut size = 0u32;
    visit(0, 0);
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let adding = mask >> v & 1 == 0;
        for &ch in graph.var_checks(v) {
            let k = &mut counts[ch as usize];
            if *k == 1 {
                ones -= 1;
            }
            if adding {
                *k += 1;
            } else {
                *k -= 1;
            }
            if *k == 1 {
                ones += 1;
            }
        }
        mask ^= 1 << v;
        size = if adding { size + 1 } else { size - 1 };
        if ones == 0 {
            visit(mask, size);
        }
    }
}

// Visits all subsets of size <= max_size in lexicographic order.
fn subsets_up_to(n: usize, max_size: usize, mut visit: impl FnMut(u64)) {
    fn rec(n: usize, start: usize, left: usize, mask: u64, visit: &mut impl FnMut(u64)) {
        visit(mask);
        if left == 0 {
            return;
        }
        for v in start..n {
            rec(n, v + 1, left - 1, mask | 1 << v, visit);
        }
    }
    rec(n, 0, max_size, 0, &mut visit);
}

/// All stopping sets (as bit masks, ascending) with at most `max_size`
/// variables, the empty set included.
pub fn stopping_sets(graph: &BipartiteGraph, max_size: usize) -> Result<Vec<u64>> {
    let n = graph.n();
    let max_size = max_size.min(n);
    let mut out = Vec::new();
    if n <= EXHAUSTIVE_MAX_N {
        gray_walk(graph, |m, s| {
            if s as usize <= max_size {
                out.push(m);
            }
        });
    } else {
        if n > 64 {
            return Err(Error::Resource(format!("stopping-set search needs N <= 64, got {n}")));
        }
        let visits: BigUint = (0..=max_size as u64).map(|k| binomial(n as u64, k)).sum();
        if visits > BigUint::from(SUBSET_BUDGET) {
            return Err(Error::Resource(format!(
                "{visits} subsets of size <= {max_size} exceed the budget of {SUBSET_BUDGET}"
            )));
        }
        subsets_up_to(n, max_size, |m| {
            if is_stopping_mask(graph, m) {
                out.push(m);
            }
        });
    }
    out.sort_unstable();
    Ok(out)
}

/// Size of the smallest nonempty stopping set of size at most `max_size`.
pub fn min_stopping_size(graph: &BipartiteGraph, max_size: usize) -> Result<Option<u32>> {
    Ok(stopping_sets(graph, max_size)?
        .into_iter()
        .filter(|&m| m != 0)
        .map(u64::count_ones)
        .min())
}

/// Stopping-set counts of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoppingSpectrum {
    pub n: usize,
    pub max_size_enumerated: usize,
    /// `s_counts[k]` = number of stopping sets with `k` variables.
    pub s_counts: Vec<u64>,
    /// Ordered pairs `(S1, S2)`, identical pairs included, keyed by
    /// `(|S1|, |S2|, |S1 & S2|)`. Symmetric under swapping the sizes.
    pub pair_counts: BTreeMap<(u32, u32, u32), u64>,
}

impl StoppingSpectrum {
    pub fn s(&self, k: usize) -> u64 {
        self.s_counts.get(k).copied().unwrap_or(0)
    }

    pub fn pair(&self, i: u32, j: u32, k: u32) -> u64 {
        self.pair_counts.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// Pairs of distinct sets counted once each: `i > j` as ordered, and for
    /// `i = j` (where `k < j` is forced) each unordered pair once.
    pub fn convention_pair(&self, i: u32, j: u32, k: u32) -> u64 {
        if i > j && k <= j {
            self.pair(i, j, k)
        } else if i == j && k < j {
            self.pair(i, i, k) / 2
        } else {
            0
        }
    }

    /// The nonzero entries of [`Self::convention_pair`].
    pub fn convention_pairs(&self) -> BTreeMap<(u32, u32, u32), u64> {
        self.pair_counts
            .keys()
            .map(|&(i, j, k)| ((i, j, k), self.convention_pair(i, j, k)))
            .filter(|&(_, v)| v > 0)
            .collect()
    }
}

/// Exact stopping-set and pair counts for sets of at most `max_size`
/// variables.
pub fn census(graph: &BipartiteGraph, max_size: usize) -> Result<StoppingSpectrum> {
    let sets = stopping_sets(graph, max_size)?;
    let max_size = max_size.min(graph.n());
    let m = sets.len() as u64;
    if m.saturating_mul(m) > PAIR_BUDGET {
        return Err(Error::Resource(format!(
            "{m} stopping sets give {} ordered pairs, over the budget of {PAIR_BUDGET}",
            m.saturating_mul(m)
        )));
    }
    let mut s_counts = vec![0u64; max_size + 1];
    for &s in &sets {
        s_counts[s.count_ones() as usize] += 1;
    }
    let mut pair_counts = BTreeMap::new();
    for &a in &sets {
        for &b in &sets {
            *pair_counts
                .entry((a.count_ones(), b.count_ones(), (a & b).count_ones()))
                .or_insert(0) += 1;
        }
    }
    Ok(StoppingSpectrum {
        n: graph.n(),
        max_size_enumerated: max_size,
        s_counts,
        pair_counts,
    })
}

fn check_exhaustive(graph: &BipartiteGraph) -> Result<()> {
    if graph.n() > EXHAUSTIVE_MAX_N {
        return Err(Error::Resource(format!(
            "exhaustive enumeration needs N <= {EXHAUSTIVE_MAX_N}, got {}",
            graph.n()
        )));
    }
    Ok(())
}

// Positions p in 0..64 grouped by popcount.
const fn popcount_classes() -> [u64; 7] {
    let mut out = [0u64; 7];
    let mut p = 0;
    while p < 64 {
        out[(p as u64).count_ones() as usize] |= 1 << p;
        p += 1;
    }
    out
}

const CLASSES: [u64; 7] = popcount_classes();
// Bits p with bit b of p clear, for b < 6.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// `counts[l]` = number of erasure sets of size `l` that contain a nonempty
/// stopping set, i.e. on which peeling fails.
///
/// Marks the nonempty stopping sets in a 2^N bitmap and closes it under
/// supersets, one variable at a time.
pub fn failure_counts(graph: &BipartiteGraph) -> Result<Vec<u64>> {
    check_exhaustive(graph)?;
    let n = graph.n();
    let words = ((1usize << n) + 63) / 64;
    let mut bits = vec![0u64; words];
    gray_walk(graph, |m, _| {
        if m != 0 {
            bits[(m >> 6) as usize] |= 1 << (m & 63);
        }
    });
    for b in 0..n {
        if b < 6 {
            for w in bits.iter_mut() {
                *w |= (*w & LOW[b]) << (1 << b);
            }
        } else {
            let stride = 1usize << (b - 6);
            for j in 0..words {
                if j & stride != 0 {
                    bits[j] |= bits[j ^ stride];
                }
            }
        }
    }
    let mut counts = vec![0u64; n + 1];
    for (j, &w) in bits.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let base = j.count_ones() as usize;
        for (k, class) in CLASSES.iter().enumerate() {
            let c = (w & class).count_ones() as u64;
            if c > 0 {
                counts[base + k] += c;
            }
        }
    }
    Ok(counts)
}

/// [`failure_counts`] computed by running the peeling decoder on every
/// subset. Slower; kept as an independent cross-check.
pub fn failure_counts_peel(graph: &BipartiteGraph) -> Result<Vec<u64>> {
    check_exhaustive(graph)?;
    let n = graph.n();
    let mut p = Peeler::new(graph);
    let mut counts = vec![0u64; n + 1];
    for m in 0u64..(1 << n) {
        if p.run_mask(m) != 0 {
            counts[m.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// Both sides of a counting identity over all erasure sets of size `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub l: usize,
    pub lhs: u128,
    pub rhs: u128,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

const IDENTITY_MAX_N: usize = 16;

fn size_l_masks(n: usize, l: usize) -> impl Iterator<Item = u64> {
    (0u64..(1 << n)).filter(move |m| m.count_ones() as usize == l)
}

fn binom_u128(n: usize, k: usize) -> u128 {
    use num_traits::ToPrimitive;
    binomial(n as u64, k as u64).to_u128().expect("binomial fits in u128 for N <= 16")
}

/// Sum over size-`l` sets of their nonempty stopping subsets, against
/// `sum_k C(N - k, l - k) S_k`.
pub fn union_count_identity(graph: &BipartiteGraph, l: usize) -> Result<IdentityCheck> {
    let n = graph.n();
    if n > IDENTITY_MAX_N {
        return Err(Error::Resource(format!("identity check needs N <= {IDENTITY_MAX_N}, got {n}")));
    }
    if l > n {
        return Err(Error::domain(format!("l = {l} exceeds N = {n}")));
    }
    let sets: Vec<u64> = stopping_sets(graph, n)?.into_iter().filter(|&m| m != 0).collect();
    let lhs = size_l_masks(n, l)
        .map(|m| sets.iter().filter(|&&s| s & !m == 0).count() as u128)
        .sum();
    let mut s_k = vec![0u128; n + 1];
    for &s in &sets {
        s_k[s.count_ones() as usize] += 1;
    }
    let rhs = (1..=l).map(|k| binom_u128(n - k, l - k) * s_k[k]).sum();
    Ok(IdentityCheck { l, lhs, rhs })
}

/// Sum over size-`l` sets of the number of unordered pairs of distinct
/// nonempty stopping subsets, against the pair-count expansion
/// `sum C(N - (i + j - k), l - (i + j - k)) S_{i,j,k}` over the pair
/// convention of [`StoppingSpectrum::convention_pair`].
pub fn pair_count_identity(graph: &BipartiteGraph, l: usize) -> Result<IdentityCheck> {
    let n = graph.n();
    if n > IDENTITY_MAX_N {
        return Err(Error::Resource(format!("identity check needs N <= {IDENTITY_MAX_N}, got {n}")));
    }
    if l > n {
        return Err(Error::domain(format!("l = {l} exceeds N = {n}")));
    }
    let sets: Vec<u64> = stopping_sets(graph, n)?.into_iter().filter(|&m| m != 0).collect();
    let lhs = size_l_masks(n, l)
        .map(|m| {
            let t = sets.iter().filter(|&&s| s & !m == 0).count() as u128;
            t * t.saturating_sub(1) / 2
        })
        .sum();
    let spec = census(graph, n)?;
    let mut rhs = 0u128;
    for (&(i, j, k), &count) in &spec.convention_pairs() {
        let union = (i + j - k) as usize;
        if j >= 1 && union <= l {
            rhs += binom_u128(n - union, l - union) * count as u128;
        }
    }
    Ok(IdentityCheck { l, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerators::EnsembleParams;
    use crate::lab::graph::sample_graph;

    fn graph(c: u32, d: u32, n: u32, seed: u64) -> BipartiteGraph {
        sample_graph(&EnsembleParams::with_length(c, d, n).unwrap(), seed).unwrap()
    }

    #[test]
    fn stopping_set_basics() {
        let g = graph(3, 6, 12, 4);
        assert!(is_stopping_set(&g, &[]));
        assert!(is_stopping_set(&g, &(0..12).collect::<Vec<_>>()));
        // a variable with three distinct checks
        let simple = (0..12).find(|&v| {
            let mut cs = g.var_checks(v).to_vec();
            cs.sort();
            cs.dedup();
            cs.len() == 3
        });
        if let Some(v) = simple {
            assert!(!is_stopping_set(&g, &[v]));
        }
    }

    #[test]
    fn double_edge_counts_twice() {
        // (2, 4, 2): variable 0 owns sockets 0, 1; map both into check 0
        let p = EnsembleParams::with_length(2, 4, 2).unwrap();
        let g = BipartiteGraph::from_permutation(&p, vec![0, 1, 2, 3]).unwrap();
        assert!(is_stopping_set(&g, &[0]));
        assert!(is_stopping_set(&g, &[1]));
    }

    #[test]
    fn peel_examples() {
        let g = graph(3, 6, 12, 11);
        let r = peel_decode(&g, &[]);
        assert!(r.success && r.residual.is_empty());
        let sets = stopping_sets(&g, 12).unwrap();
        let s = *sets.iter().find(|&&m| m != 0).unwrap();
        let r = peel_decode(&g, &members(s));
        assert!(!r.success);
        assert_eq!(r.residual, members(s));
    }

    #[test]
    fn residual_is_maximal_stopping_subset() {
        for seed in 0..4 {
            let g = graph(3, 6, 10, seed);
            let sets = stopping_sets(&g, 10).unwrap();
            let mut p = Peeler::new(&g);
            for m in 0u64..(1 << 10) {
                let res = p.run_mask(m);
                assert!(is_stopping_mask(&g, res));
                let union = sets.iter().filter(|&&s| s & !m == 0).fold(0, |a, &s| a | s);
                assert_eq!(res, union);
            }
        }
    }

    #[test]
    fn gray_walk_matches_direct_test() {
        let g = graph(3, 6, 12, 2);
        let sets = stopping_sets(&g, 12).unwrap();
        let direct: Vec<u64> = (0u64..(1 << 12)).filter(|&m| is_stopping_mask(&g, m)).collect();
        assert_eq!(sets, direct);
    }

    #[test]
    fn size_limited_search_matches_exhaustive() {
        let g = graph(3, 6, 12, 5);
        let all = stopping_sets(&g, 12).unwrap();
        let mut small = Vec::new();
        subsets_up_to(12, 5, |m| {
            if is_stopping_mask(&g, m) {
                small.push(m)
            }
        });
        small.sort();
        let want: Vec<u64> = all.into_iter().filter(|m| m.count_ones() <= 5).collect();
        assert_eq!(small, want);
    }

    #[test]
    fn census_basics() {
        let g = graph(3, 6, 14, 8);
        let s = census(&g, 14).unwrap();
        assert_eq!(s.s(0), 1);
        for i in 0..=14u32 {
            assert_eq!(s.pair(i, i, i), s.s(i as usize));
        }
        for (&(i, j, k), &v) in &s.pair_counts {
            assert_eq!(s.pair(j, i, k), v);
        }
        assert_eq!(s.s(14), 1);
    }

    #[test]
    fn census_budget() {
        let g = graph(3, 6, 40, 1);
        assert!(matches!(stopping_sets(&g, 20), Err(Error::Resource(_))));
        assert!(stopping_sets(&g, 3).is_ok());
    }

    #[test]
    fn failure_counts_agree_with_peeling() {
        for (c, d, n, seed) in [(2, 4, 8, 1), (3, 6, 12, 3), (3, 6, 4, 0), (2, 4, 2, 0)] {
            let g = graph(c, d, n, seed);
            assert_eq!(failure_counts(&g).unwrap(), failure_counts_peel(&g).unwrap());
        }
    }

    #[test]
    fn rank_bound_fast_path() {
        // every set larger than the number of checks contains a codeword
        let g = graph(3, 6, 16, 21);
        let f = failure_counts(&g).unwrap();
        for l in 9..=16 {
            assert_eq!(f[l], binomial(16, l as u64).to_string().parse::<u64>().unwrap());
        }
    }

    #[test]
    fn counting_identities() {
        for seed in 1..=5 {
            let g = graph(2, 4, 8, seed);
            for l in 0..=8 {
                assert!(union_count_identity(&g, l).unwrap().holds());
                assert!(pair_count_identity(&g, l).unwrap().holds(), "seed {seed} l {l}");
            }
            let all = union_count_identity(&g, 8).unwrap();
            assert_eq!(all.lhs as usize, stopping_sets(&g, 8).unwrap().len() - 1);
        }
    }
}
