//! Layered partition of the implication clauses.
//!
//! The C2 clauses (one per variable as positive element) are split into
//! n^delta groups, each group recursively into n^delta subgroups, down to
//! layer 1/delta - 1. Group membership at each layer yields the tables
//! f_k / f-bar_k (k = 2..1/delta, the subgroup index seen from the deepest
//! layer upwards) and g_j / g-bar_j (j = 1..1/delta-1, the rank of an index
//! inside its layer group).

use super::{PcMaxError, ReductionParams};
use crate::sat_prime::SatPrimeInstance;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    pub n: u64,
    pub rho: u32,
    /// n^delta.
    pub t: u64,
    /// f[k-2][i-1] for k in 2..=rho.
    f: Vec<Vec<u64>>,
    f_bar: Vec<Vec<u64>>,
    /// g[j-1][i-1] for j in 1..=rho-1.
    g: Vec<Vec<u64>>,
    g_bar: Vec<Vec<u64>>,
    /// C2 clauses sorted by positive index: pos_partner[i-1] = k for (z_i v ~z_k).
    pos_partner: Vec<u32>,
    /// C1 slot polarity of every variable.
    c1_polarity: Vec<bool>,
    /// (j, f-suffix f_(j+1)..f_rho, g_j) -> i, for decoding agent identities.
    inv_pos: HashMap<(u32, Vec<u64>, u64), u32>,
    inv_neg: HashMap<(u32, Vec<u64>, u64), u32>,
}

impl LayerPartition {
    pub fn f(&self, k: u32, i: u64) -> u64 {
        self.f[(k - 2) as usize][(i - 1) as usize]
    }

    pub fn f_bar(&self, k: u32, i: u64) -> u64 {
        self.f_bar[(k - 2) as usize][(i - 1) as usize]
    }

    pub fn g(&self, j: u32, i: u64) -> u64 {
        self.g[(j - 1) as usize][(i - 1) as usize]
    }

    pub fn g_bar(&self, j: u32, i: u64) -> u64 {
        self.g_bar[(j - 1) as usize][(i - 1) as usize]
    }

    /// Signed accessor: positive tables for `positive`, barred otherwise.
    pub fn f_signed(&self, positive: bool, k: u32, i: u64) -> u64 {
        if positive {
            self.f(k, i)
        } else {
            self.f_bar(k, i)
        }
    }

    pub fn g_signed(&self, positive: bool, j: u32, i: u64) -> u64 {
        if positive {
            self.g(j, i)
        } else {
            self.g_bar(j, i)
        }
    }

    /// Negative partner of the positive literal i in C2.
    pub fn c2_partner(&self, i: u64) -> u64 {
        self.pos_partner[(i - 1) as usize] as u64
    }

    pub fn c1_polarity(&self, i: u64) -> bool {
        self.c1_polarity[(i - 1) as usize]
    }

    /// f_(j+1)(i) .. f_rho(i), in ascending k.
    pub fn f_suffix(&self, positive: bool, j: u32, i: u64) -> Vec<u64> {
        (j + 1..=self.rho).map(|k| self.f_signed(positive, k, i)).collect()
    }

    /// Decodes (sign, layer j, f-suffix, rank g_j) back to the variable index.
    pub fn invert(&self, positive: bool, j: u32, suffix: &[u64], gj: u64) -> Option<u64> {
        let m = if positive { &self.inv_pos } else { &self.inv_neg };
        m.get(&(j, suffix.to_vec(), gj)).map(|&i| i as u64)
    }
}

/// Builds the partition and asserts its defining observations:
/// value ranges, group alignment with C2 pairs, rank monotonicity, and
/// per-value preimage counts.
pub fn build_partition(s: &SatPrimeInstance, params: &ReductionParams) -> Result<LayerPartition, PcMaxError> {
    let n = params.n;
    let t = params.t;
    let rho = params.rho;
    if s.num_vars as u64 != n {
        return Err(PcMaxError::Input(format!(
            "instance has {} variables, params built for {n}",
            s.num_vars
        )));
    }
    if s.c2.len() as u64 != n {
        return Err(PcMaxError::Invariant(format!("expected {n} C2 clauses, found {}", s.c2.len())));
    }

    // Canonical clause order: ascending positive index. The occurrence
    // invariant guarantees each index appears exactly once on each side.
    let mut clauses: Vec<(u32, u32)> = s.c2.clone();
    clauses.sort_unstable();
    let mut pos_partner = vec![0u32; n as usize];
    for (idx, &(i, k)) in clauses.iter().enumerate() {
        if i as usize != idx + 1 {
            return Err(PcMaxError::Invariant(format!("positive literal {} missing or duplicated in C2", idx + 1)));
        }
        pos_partner[idx] = k;
    }

    let mut c1_polarity = vec![false; n as usize];
    let mut seen = vec![false; n as usize];
    for cl in &s.c1 {
        if cl.slots.len() != 3 {
            return Err(PcMaxError::Input("reduction requires width-3 C1 clauses".into()));
        }
        for &(v, p) in &cl.slots {
            if seen[(v - 1) as usize] {
                return Err(PcMaxError::Invariant(format!("variable {v} occurs twice in C1")));
            }
            seen[(v - 1) as usize] = true;
            c1_polarity[(v - 1) as usize] = p;
        }
    }

    let layers = rho - 1;
    let mut f = vec![vec![0u64; n as usize]; (rho - 1) as usize];
    let mut f_bar = vec![vec![0u64; n as usize]; (rho - 1) as usize];
    let mut g = vec![vec![0u64; n as usize]; layers as usize];
    let mut g_bar = vec![vec![0u64; n as usize]; layers as usize];

    for layer in 1..=layers {
        // Layer-j groups are consecutive chunks of n / t^j clauses.
        let group_size = n / t.pow(layer);
        if group_size * t.pow(layer) != n {
            return Err(PcMaxError::Invariant("partition does not divide evenly".into()));
        }
        let f_level = rho - layer + 1; // assigned table index k
        let g_level = rho - layer;
        for chunk_idx in 0..(n / group_size) {
            let start = (chunk_idx * group_size) as usize;
            let chunk = &clauses[start..start + group_size as usize];
            let k_j = (chunk_idx % t) + 1;
            let mut pos: Vec<u64> = chunk.iter().map(|&(i, _)| i as u64).collect();
            let mut neg: Vec<u64> = chunk.iter().map(|&(_, k)| k as u64).collect();
            pos.sort_unstable();
            neg.sort_unstable();
            for (rank, &i) in pos.iter().enumerate() {
                f[(f_level - 2) as usize][(i - 1) as usize] = k_j;
                g[(g_level - 1) as usize][(i - 1) as usize] = rank as u64 + 1;
            }
            for (rank, &i) in neg.iter().enumerate() {
                f_bar[(f_level - 2) as usize][(i - 1) as usize] = k_j;
                g_bar[(g_level - 1) as usize][(i - 1) as usize] = rank as u64 + 1;
            }
        }
    }

    let mut part = LayerPartition {
        n,
        rho,
        t,
        f,
        f_bar,
        g,
        g_bar,
        pos_partner,
        c1_polarity,
        inv_pos: HashMap::new(),
        inv_neg: HashMap::new(),
    };
    for i in 1..=n {
        for j in 1..=layers {
            part.inv_pos.insert((j, part.f_suffix(true, j, i), part.g(j, i)), i as u32);
            part.inv_neg.insert((j, part.f_suffix(false, j, i), part.g_bar(j, i)), i as u32);
        }
    }
    check_observations(&part)?;
    Ok(part)
}

fn check_observations(p: &LayerPartition) -> Result<(), PcMaxError> {
    let (n, t, rho) = (p.n, p.t, p.rho);
    // Observation 1: value ranges.
    for i in 1..=n {
        for k in 2..=rho {
            for (name, v) in [("f", p.f(k, i)), ("f_bar", p.f_bar(k, i))] {
                if v < 1 || v > t {
                    return Err(PcMaxError::Invariant(format!("{name}_{k}({i}) = {v} out of [1, {t}]")));
                }
            }
        }
        for j in 1..=rho - 1 {
            let cap = t.pow(j);
            for (name, v) in [("g", p.g(j, i)), ("g_bar", p.g_bar(j, i))] {
                if v < 1 || v > cap {
                    return Err(PcMaxError::Invariant(format!("{name}_{j}({i}) = {v} out of [1, {cap}]")));
                }
            }
        }
    }
    // Observation 2: groups align along C2 pairs at every level.
    for i in 1..=n {
        let k2 = p.c2_partner(i);
        for k in 2..=rho {
            if p.f(k, i) != p.f_bar(k, k2) {
                return Err(PcMaxError::Invariant(format!(
                    "f_{k}({i}) = {} but f_bar_{k}({}) = {}",
                    p.f(k, i),
                    k2,
                    p.f_bar(k, k2)
                )));
            }
        }
    }
    // Observation 3: within a common group prefix, ranks ascend with index.
    // Equivalent per-group form: for each layer group, the ranks of its
    // sorted member indices are strictly increasing.
    for j in 1..=rho - 1 {
        let mut by_suffix_pos: HashMap<Vec<u64>, Vec<(u64, u64)>> = HashMap::new();
        let mut by_suffix_neg: HashMap<Vec<u64>, Vec<(u64, u64)>> = HashMap::new();
        for i in 1..=n {
            by_suffix_pos.entry(p.f_suffix(true, j, i)).or_default().push((i, p.g(j, i)));
            by_suffix_neg.entry(p.f_suffix(false, j, i)).or_default().push((i, p.g_bar(j, i)));
        }
        for groups in [by_suffix_pos, by_suffix_neg] {
            for (_, mut members) in groups {
                members.sort_unstable();
                for w in members.windows(2) {
                    if w[0].1 >= w[1].1 {
                        return Err(PcMaxError::Invariant(format!(
                            "rank monotonicity violated at layer {j}: {:?} vs {:?}",
                            w[0], w[1]
                        )));
                    }
                }
            }
        }
    }
    // Observation 4: every value tau has exactly n^(1-delta) preimages.
    let want = n / t;
    for k in 2..=rho {
        for tau in 1..=t {
            let cf = (1..=n).filter(|&i| p.f(k, i) == tau).count() as u64;
            let cb = (1..=n).filter(|&i| p.f_bar(k, i) == tau).count() as u64;
            if cf != want || cb != want {
                return Err(PcMaxError::Invariant(format!(
                    "preimage count of tau={tau} at level {k}: {cf}/{cb}, expected {want}"
                )));
            }
        }
    }
    Ok(())
}
