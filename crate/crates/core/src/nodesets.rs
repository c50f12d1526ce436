//! Even sets of nodes and binary codes with restricted weights.
//!
//! A set of `r` nodes whose exceptional curves sum to a 2-divisible class
//! carries a double cover with `chi(O_X) = 2 chi(O_S) - r/4`. On a quintic
//! this restricts the weights of the code of even sets; whether a code of
//! the required dimension exists is settled by an exhaustive search, with
//! the MacWilliams identities as a cheap necessary filter in front.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Largest code length handled by the search.
pub const MAX_LENGTH: usize = 40;
/// Largest dimension handled by the search.
pub const MAX_DIMENSION: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSetParams {
    #[serde(rename = "chi_S")]
    pub chi_s: i64,
    pub r: i64,
}

impl EvenSetParams {
    pub fn new(chi_s: i64, r: i64) -> Result<Self> {
        if r < 0 {
            return Err(Error::invalid(format!("node count {r} is negative")));
        }
        if r % 4 != 0 {
            return Err(Error::invalid(format!("an even set has r = 0 mod 4, got {r}")));
        }
        Ok(EvenSetParams { chi_s, r })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiOutcome {
    #[serde(with = "crate::serde_str")]
    pub chi_x: Ratio<i64>,
    /// `false` when `r` is not a multiple of 4: no such even set exists.
    pub integral: bool,
    /// `chi(O_X) < chi(O_S)`, which forces `q(X) > 0` and a splitting of the
    /// even set into two even subsets.
    pub forces_splitting: bool,
}

/// `chi(O_X) = 2 chi(O_S) - r/4` for the double cover branched over `r` nodes.
pub fn chi_double_cover(chi_s: i64, r: i64) -> Result<ChiOutcome> {
    if r < 0 {
        return Err(Error::invalid(format!("node count {r} is negative")));
    }
    let chi_x = Ratio::from_integer(2 * chi_s) - Ratio::new(r, 4);
    Ok(ChiOutcome {
        integral: chi_x.is_integer(),
        forces_splitting: chi_x < Ratio::from_integer(chi_s),
        chi_x,
    })
}

/// `K_j(i)` for `j, i` in `0..=n`, by the three-term recurrence
/// `(j+1) K_{j+1}(i) = (n - 2i) K_j(i) - (n - j + 1) K_{j-1}(i)`.
pub fn krawtchouk_table(n: usize) -> Vec<Vec<i128>> {
    let ni = n as i128;
    let mut k = vec![vec![0i128; n + 1]; n + 1];
    for i in 0..=n {
        k[0][i] = 1;
        if n >= 1 {
            k[1][i] = ni - 2 * i as i128;
        }
        for j in 1..n {
            let jj = j as i128;
            let num = (ni - 2 * i as i128) * k[j][i] - (ni - jj + 1) * k[j - 1][i];
            debug_assert_eq!(num % (jj + 1), 0);
            k[j + 1][i] = num / (jj + 1);
        }
    }
    k
}

/// Weight distribution `A_0..A_n` of a code of dimension `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub k: usize,
    pub counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn new(n: usize, k: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::invalid(format!("expected {} counts, got {}", n + 1, counts.len())));
        }
        if counts[0] != 1 {
            return Err(Error::invalid("A_0 must be 1"));
        }
        if k > 62 || counts.iter().sum::<u64>() != 1u64 << k {
            return Err(Error::invalid(format!("counts do not sum to 2^{k}")));
        }
        Ok(WeightDistribution { n, k, counts })
    }

    /// Distribution of the span of `rows` (bit `c` of a row is column `c`).
    pub fn of_code(n: usize, rows: &[u64]) -> Self {
        let k = rows.len();
        let mut counts = vec![0u64; n + 1];
        for word in span(rows) {
            counts[word.count_ones() as usize] += 1;
        }
        WeightDistribution { n, k, counts }
    }
}

/// All `2^k` codewords spanned by `rows`, in Gray-code order.
pub fn span(rows: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << rows.len());
    let mut word = 0u64;
    out.push(word);
    for step in 1u64..(1 << rows.len()) {
        word ^= rows[step.trailing_zeros() as usize];
        out.push(word);
    }
    out
}

/// `B_j = 2^{-k} sum_i A_i K_j(i)`, exact.
pub fn macwilliams_transform(n: usize, k: usize, a: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), n + 1);
    let kt = krawtchouk_table(n);
    let scale = Rational::new(1, 1i128 << k);
    (0..=n)
        .map(|j| {
            let s: Rational = (0..=n)
                .map(|i| a[i] * Rational::from_integer(kt[j][i]))
                .sum();
            s * scale
        })
        .collect()
}

/// Dual weight distribution predicted by the MacWilliams identities.
pub fn macwilliams_dual(dist: &WeightDistribution) -> Vec<Rational> {
    let a: Vec<Rational> = dist
        .counts
        .iter()
        .map(|&c| Rational::from_integer(c as i128))
        .collect();
    macwilliams_transform(dist.n, dist.k, &a)
}

/// Length, dimension and the permitted nonzero weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCodeProblem {
    pub n: usize,
    pub k: usize,
    pub allowed: Vec<usize>,
}

impl WeightCodeProblem {
    pub fn new(n: usize, k: usize, allowed: &[usize]) -> Result<Self> {
        if k > n {
            return Err(Error::invalid(format!("dimension {k} exceeds length {n}")));
        }
        let mut allowed = allowed.to_vec();
        allowed.sort_unstable();
        allowed.dedup();
        if let Some(&w) = allowed.iter().find(|&&w| w == 0 || w > n) {
            return Err(Error::invalid(format!("weight {w} outside 1..={n}")));
        }
        Ok(WeightCodeProblem { n, k, allowed })
    }

    fn allowed_mask(&self) -> u64 {
        self.allowed.iter().fold(0, |m, &w| m | 1 << w)
    }
}

impl fmt::Display for WeightCodeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.allowed.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}, {}] weights {{{}}}", self.n, self.k, w.join(","))
    }
}

/// Default cap on the number of candidate distributions enumerated.
pub const DEFAULT_DISTRIBUTION_BUDGET: u128 = 10_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Every weight distribution supported on `allowed` whose MacWilliams dual
/// is nonnegative and integral. An empty result proves nonexistence.
pub fn feasible_distributions(
    problem: &WeightCodeProblem,
    budget: u128,
) -> Result<Vec<WeightDistribution>> {
    let s = problem.allowed.len();
    let words = (1u128 << problem.k) - 1;
    if s == 0 {
        return Ok(if words == 0 {
            vec![WeightDistribution::of_code(problem.n, &[])]
        } else {
            Vec::new()
        });
    }
    let candidates = binomial(words + s as u128 - 1, s as u128 - 1);
    if candidates > budget {
        return Err(Error::resource(format!(
            "{candidates} candidate distributions exceed the budget {budget}"
        )));
    }
    let kt = krawtchouk_table(problem.n);
    let mut out = Vec::new();
    let mut parts = vec![0u64; s];
    enumerate_compositions(words as u64, 0, &mut parts, &mut |parts| {
        let mut counts = vec![0u64; problem.n + 1];
        counts[0] = 1;
        for (&w, &c) in problem.allowed.iter().zip(parts) {
            counts[w] = c;
        }
        let feasible = (0..=problem.n).all(|j| {
            let total: i128 = (0..=problem.n).map(|i| counts[i] as i128 * kt[j][i]).sum();
            total >= 0 && total % (1i128 << problem.k) == 0
        });
        if feasible {
            out.push(WeightDistribution {
                n: problem.n,
                k: problem.k,
                counts,
            });
        }
    });
    Ok(out)
}

fn enumerate_compositions(rest: u64, at: usize, parts: &mut [u64], visit: &mut impl FnMut(&[u64])) {
    if at + 1 == parts.len() {
        parts[at] = rest;
        visit(parts);
        return;
    }
    for c in 0..=rest {
        parts[at] = c;
        enumerate_compositions(rest - c, at + 1, parts, visit);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CodeSearchOutcome {
    /// Generator rows in reduced echelon form, as bitstrings.
    Exists { generator: Vec<String> },
    Nonexistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSearchReport {
    pub outcome: CodeSearchOutcome,
    /// Partial column-multiplicity assignments examined.
    pub nodes: u64,
}

impl CodeSearchReport {
    pub fn exists(&self) -> bool {
        matches!(self.outcome, CodeSearchOutcome::Exists { .. })
    }
}

/// Default cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000_000;

/// Exhaustive search for a `k`-dimensional code of length `n` whose nonzero
/// words all have allowed weights.
///
/// A code is determined up to column permutation by how many columns carry
/// each vector of `F_2^k`, so the search assigns column multiplicities one
/// generator row at a time. Rows are taken as a minimum-weight basis (each
/// row is a lightest word outside the span of the previous rows), which every
/// code admits. Any partial span with a disallowed weight is cut.
pub fn code_search(problem: &WeightCodeProblem, node_budget: u64) -> Result<CodeSearchReport> {
    if problem.n > MAX_LENGTH || problem.k > MAX_DIMENSION {
        return Err(Error::resource(format!(
            "search bounds are n <= {MAX_LENGTH}, k <= {MAX_DIMENSION}; got {problem}"
        )));
    }
    let mut search = Search {
        k: problem.k,
        allowed: problem.allowed_mask(),
        nodes: 0,
        budget: node_budget,
    };
    let start = vec![problem.n as u32];
    let found = search.extend(&start, 0, 0)?;
    let outcome = match found {
        Some(mult) => {
            let rows = generator_from_multiplicities(problem.n, problem.k, &mult);
            let dist = WeightDistribution::of_code(problem.n, &rows);
            assert!(
                dist.counts
                    .iter()
                    .enumerate()
                    .skip(1)
                    .all(|(w, &c)| c == 0 || problem.allowed.contains(&w)),
                "witness failed word-by-word verification"
            );
            let rows = rref_rows(rows);
            assert_eq!(rows.len(), problem.k, "witness generator is not of full rank");
            CodeSearchOutcome::Exists {
                generator: rows.iter().map(|&r| bitstring(r, problem.n)).collect(),
            }
        }
        None => CodeSearchOutcome::Nonexistent,
    };
    Ok(CodeSearchReport {
        outcome,
        nodes: search.nodes,
    })
}

struct Search {
    k: usize,
    allowed: u64,
    nodes: u64,
    budget: u64,
}

impl Search {
    /// `mult[v]`: number of columns equal to `v` on the first `j` rows.
    fn extend(&mut self, mult: &[u32], j: usize, prev_weight: usize) -> Result<Option<Vec<u32>>> {
        if j == self.k {
            return Ok(Some(mult.to_vec()));
        }
        let classes = mult.len();
        // weight of u0 + e_j is base[u0] + sum_v sign(u0, v) * x_v
        let mut base = vec![0i64; classes];
        for (u0, b) in base.iter_mut().enumerate() {
            *b = (0..classes)
                .filter(|&v| (u0 & v).count_ones() % 2 == 1)
                .map(|v| mult[v] as i64)
                .sum();
        }
        // remaining positive/negative swing of each u0 over classes t..
        let mut pos_rem = vec![vec![0i64; classes]; classes + 1];
        let mut neg_rem = vec![vec![0i64; classes]; classes + 1];
        for t in (0..classes).rev() {
            for u0 in 0..classes {
                let m = mult[t] as i64;
                let plus = (u0 & t).count_ones() % 2 == 0;
                pos_rem[t][u0] = pos_rem[t + 1][u0] + if plus { m } else { 0 };
                neg_rem[t][u0] = neg_rem[t + 1][u0] + if plus { 0 } else { m };
            }
        }
        let mut ctx = RowCtx {
            mult,
            pos_rem: &pos_rem,
            neg_rem: &neg_rem,
            x: vec![0u32; classes],
            cur: base.clone(),
            prev_weight: prev_weight as i64,
        };
        self.choose(&mut ctx, 0, j)
    }

    fn feasible(&self, lo: i64, hi: i64) -> bool {
        let lo = lo.max(1);
        if hi < lo {
            return false;
        }
        let width = (hi - lo + 1) as u32;
        let window = if width >= 64 { u64::MAX } else { (1u64 << width) - 1 };
        (self.allowed >> lo) & window != 0
    }

    fn choose(&mut self, ctx: &mut RowCtx, t: usize, j: usize) -> Result<Option<Vec<u32>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::resource(format!("code search exceeded {} nodes", self.budget)));
        }
        let classes = ctx.mult.len();
        if t == classes {
            let w_new = ctx.cur[0];
            // minimum-weight basis: the new row is a lightest word off the span
            if w_new < ctx.prev_weight || ctx.cur.iter().any(|&w| w < w_new) {
                return Ok(None);
            }
            if ctx.cur.iter().any(|&w| w < 1 || self.allowed >> w & 1 == 0) {
                return Ok(None);
            }
            let mut next = vec![0u32; 2 * classes];
            for v in 0..classes {
                next[v] = ctx.mult[v] - ctx.x[v];
                next[v | classes] = ctx.x[v];
            }
            return self.extend(&next, j + 1, w_new as usize);
        }
        let m = ctx.mult[t];
        for xv in 0..=m {
            ctx.x[t] = xv;
            let mut ok = true;
            for u0 in 0..classes {
                let plus = (u0 & t).count_ones() % 2 == 0;
                let delta = if plus { xv as i64 } else { -(xv as i64) };
                ctx.cur[u0] += delta;
                if ok {
                    let lo = ctx.cur[u0] - ctx.neg_rem[t + 1][u0];
                    let hi = ctx.cur[u0] + ctx.pos_rem[t + 1][u0];
                    ok = self.feasible(lo, hi);
                }
            }
            if ok {
                // lightest-row bound on the new row itself
                let hi0 = ctx.cur[0] + ctx.pos_rem[t + 1][0];
                ok = hi0 >= ctx.prev_weight;
            }
            if ok {
                if let Some(found) = self.choose(ctx, t + 1, j)? {
                    return Ok(Some(found));
                }
            }
            for u0 in 0..classes {
                let plus = (u0 & t).count_ones() % 2 == 0;
                ctx.cur[u0] -= if plus { xv as i64 } else { -(xv as i64) };
            }
        }
        ctx.x[t] = 0;
        Ok(None)
    }
}

struct RowCtx<'a> {
    mult: &'a [u32],
    pos_rem: &'a [Vec<i64>],
    neg_rem: &'a [Vec<i64>],
    x: Vec<u32>,
    cur: Vec<i64>,
    prev_weight: i64,
}

/// Lays out `mult[v]` copies of each column vector `v`, ascending in `v`.
fn generator_from_multiplicities(n: usize, k: usize, mult: &[u32]) -> Vec<u64> {
    let mut rows = vec![0u64; k];
    let mut col = 0;
    for (v, &m) in mult.iter().enumerate() {
        for _ in 0..m {
            for (i, row) in rows.iter_mut().enumerate() {
                if v >> i & 1 == 1 {
                    *row |= 1 << col;
                }
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, n);
    rows
}

/// Reduced row echelon form with pivots leftmost (bit 0 is the first column).
pub fn rref_rows(mut rows: Vec<u64>) -> Vec<u64> {
    let mut next = 0;
    for col in 0..64 {
        let Some(p) = (next..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(next, p);
        let pivot = rows[next];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != next && *r >> col & 1 == 1 {
                *r ^= pivot;
            }
        }
        next += 1;
    }
    rows.truncate(next);
    rows
}

pub fn bitstring(row: u64, n: usize) -> String {
    (0..n).map(|c| if row >> c & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Result<u64> {
    if s.len() > 64 {
        return Err(Error::invalid("bitstring longer than 64"));
    }
    s.chars().enumerate().try_fold(0u64, |acc, (c, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << c),
        _ => Err(Error::invalid(format!("bad bit {ch:?}"))),
    })
}

/// Which stage settled a code problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecidingStage {
    /// No weight distribution survives the MacWilliams filter; the search
    /// confirms.
    Macwilliams,
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeProblemReport {
    pub problem: WeightCodeProblem,
    pub feasible_distributions: Vec<WeightDistribution>,
    pub search: CodeSearchReport,
    pub decided_by: DecidingStage,
}

/// Runs the MacWilliams filter and then the authoritative search.
pub fn decide_code_problem(
    problem: &WeightCodeProblem,
    distribution_budget: u128,
    node_budget: u64,
) -> Result<CodeProblemReport> {
    let feasible = feasible_distributions(problem, distribution_budget)?;
    let search = code_search(problem, node_budget)?;
    if let CodeSearchOutcome::Exists { generator } = &search.outcome {
        let rows: Vec<u64> = generator.iter().map(|g| parse_bitstring(g)).collect::<Result<_>>()?;
        let dist = WeightDistribution::of_code(problem.n, &rows);
        assert!(feasible.contains(&dist), "MacWilliams filter excluded a real code");
    }
    Ok(CodeProblemReport {
        problem: problem.clone(),
        decided_by: if feasible.is_empty() {
            DecidingStage::Macwilliams
        } else {
            DecidingStage::Search
        },
        feasible_distributions: feasible,
        search,
    })
}

/// Inputs to the 32-node argument for quintic surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuinticParams {
    /// Second Betti number of the resolved surface.
    pub b2: i64,
    pub nodes: i64,
    /// Smallest possible even set (Castelnuovo's bound).
    pub min_even: i64,
    /// Second size realized by known even sets.
    pub second_even: i64,
    /// `chi(O_S)` of the resolved quintic.
    pub chi_s: i64,
}

impl Default for QuinticParams {
    fn default() -> Self {
        QuinticParams {
            b2: 53,
            nodes: 32,
            min_even: 16,
            second_even: 20,
            chi_s: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateStep {
    pub claim: String,
    pub arithmetic: String,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    /// No code of the forced dimension exists: the configuration is impossible.
    Contradiction,
    /// The kernel bound is not positive, or a code meeting every constraint
    /// exists; nothing follows.
    NoClaim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: QuinticParams,
    pub steps: Vec<CertificateStep>,
    pub code_problem: Option<CodeProblemReport>,
    pub verdict: CertificateVerdict,
    pub conclusion: String,
}

/// Replays the numeric chain from the node count to a code problem and
/// decides it.
pub fn quintic_certificate(params: QuinticParams, node_budget: u64) -> Result<Certificate> {
    let QuinticParams {
        b2,
        nodes,
        min_even,
        second_even,
        chi_s,
    } = params;
    let mut steps = Vec::new();
    let mut step = |claim: String, arithmetic: String, source: &str| {
        steps.push(CertificateStep {
            claim,
            arithmetic,
            source: source.to_string(),
        })
    };

    step(
        "an even set of r nodes has r divisible by 4".into(),
        format!("chi(O_X) = 2*{chi_s} - r/4 must be an integer"),
        "double cover Euler characteristic",
    );
    // smallest r that forces chi(O_X) < chi(O_S)
    let split_from = (4 * chi_s / 4 + 1) * 4;
    let at_split = chi_double_cover(chi_s, split_from)?;
    step(
        format!("every even set with r >= {split_from} splits into two even subsets"),
        format!(
            "chi(O_X) = 2*{chi_s} - {split_from}/4 = {} < {chi_s}, so q(X) > 0 and Pic(X)[2] != 0",
            at_split.chi_x
        ),
        "double cover Euler characteristic + key lemma",
    );
    let doubled = 2 * min_even;
    step(
        format!("an even set with r >= {split_from} has r >= {doubled}"),
        format!("both halves have at least {min_even} nodes: 2*{min_even} = {doubled}"),
        "splitting argument",
    );
    let allowed: Vec<usize> = (1..=nodes)
        .filter(|w| w % 4 == 0 && *w >= min_even && (*w < split_from || *w >= doubled))
        .map(|w| w as usize)
        .collect();
    let second = chi_double_cover(chi_s, second_even)?;
    step(
        format!("admissible even set sizes among {nodes} nodes: {allowed:?}"),
        format!(
            "r = {second_even} gives chi(O_X) = {} (no splitting forced); r in [{split_from}, {doubled}) excluded",
            second.chi_x
        ),
        "weight restriction",
    );
    let isotropic = b2.div_euclid(2);
    step(
        "the image of the node classes in H^2(S, Z/2) is totally isotropic".into(),
        format!("dim image <= floor({b2}/2) = {isotropic}"),
        "isotropy bound",
    );
    let kernel_dim = nodes - isotropic;
    step(
        "the code of even sets has dimension at least nodes - isotropic bound".into(),
        format!("dim kernel >= {nodes} - {isotropic} = {kernel_dim}"),
        "rank-nullity",
    );
    if kernel_dim <= 0 {
        return Ok(Certificate {
            params,
            steps,
            code_problem: None,
            verdict: CertificateVerdict::NoClaim,
            conclusion: format!("kernel bound {kernel_dim} is not positive; no claim"),
        });
    }
    let problem = WeightCodeProblem::new(nodes as usize, kernel_dim as usize, &allowed)?;
    let report = decide_code_problem(&problem, DEFAULT_DISTRIBUTION_BUDGET, node_budget)?;
    let (verdict, conclusion) = match &report.search.outcome {
        CodeSearchOutcome::Nonexistent => (
            CertificateVerdict::Contradiction,
            format!("no code {problem} exists: no quintic with {nodes} nodes admits this configuration"),
        ),
        CodeSearchOutcome::Exists { .. } => (
            CertificateVerdict::NoClaim,
            format!("a code {problem} exists; the weight constraints alone do not exclude {nodes} nodes (no claim)"),
        ),
    };
    steps.push(CertificateStep {
        claim: format!("code problem {problem}"),
        arithmetic: format!(
            "{} feasible weight distributions; search {} after {} nodes",
            report.feasible_distributions.len(),
            if report.search.exists() { "found a code" } else { "exhausted" },
            report.search.nodes
        ),
        source: "macwilliams filter + exhaustive code search".into(),
    });
    Ok(Certificate {
        params,
        steps,
        code_problem: Some(report),
        verdict,
        conclusion,
    })
}
