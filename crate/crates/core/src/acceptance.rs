//! The acceptance suite behind `hypercol verify`.
//!
//! Every check is exact and seeded, and reports carry no timings, so two
//! runs render byte-identical tables. Where a check needs an oracle it uses
//! a deliberately naive one written here (signature classes, explicit
//! colour sets, exhaustive witness enumeration) rather than the code under
//! test.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{
    chi_strong, chi_strong_auto, chi_strong_bruteforce, chi_t_ell, colourable, rainbow_forced, ChiMethod, Colouring,
};
use crate::generators::{
    complete_uniform, construction_42, construction_42_link_colouring, planted_bromeliad, random_graph,
    random_hypergraph, random_t_intersecting, sunflower_gen, DEFAULT_VERTEX_CAP,
};
use crate::hypergraph::{find_sunflower, Hypergraph, VertexSet};
use crate::procedures::{
    extend_split_degenerate, prune, split_colour_bound, theorem41_colouring, theorem44_colouring, trace_main_loop,
    validate_trace, BromeliadChoice, ExtensionOutcome, PruneOutcome, Thm41Outcome, Thm44Outcome, TraceParams,
    TraceTermination,
};
use crate::structure::{bromeliad_witness, red_clique_to_bromeliad, regions, subsequence_check, triple_classify, TripleColour};

/// One line of the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<6} {:<34} {}", self.id, self.title, self.detail)
    }
}

fn report(id: &str, title: &str, passed: bool, detail: String) -> Report {
    Report { id: id.into(), title: title.into(), passed, detail }
}

/// Case counter that keeps the first failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    fn case(&mut self, ok: bool, why: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail_with(why());
        }
    }

    fn fail_with(&mut self, why: String) {
        self.failures += 1;
        self.first_failure.get_or_insert(why);
    }

    pub fn passed(&self, min_cases: usize) -> bool {
        self.failures == 0 && self.cases >= min_cases
    }

    fn summary(&self) -> String {
        match &self.first_failure {
            None => format!("{}/{}", self.cases, self.cases),
            Some(why) => format!("{}/{} (first failure: {why})", self.cases - self.failures, self.cases),
        }
    }
}

type Check = fn() -> Report;

const CHECKS: [Check; 9] = [
    extremal_anchor,
    weak_anchor,
    construction_grid,
    theorem41_suite,
    pruning_suite,
    structure_suites,
    theorem44_suite,
    extension_suite,
    trace_fixtures,
];

/// Runs every check in order on the current thread.
pub fn run_all() -> Vec<Report> {
    CHECKS.iter().map(|check| check()).collect()
}

/// Runs the checks on a pool of `jobs` threads; the reports (and their
/// order) are the same as [`run_all`].
pub fn run_all_with_jobs(jobs: usize) -> Vec<Report> {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(|| CHECKS.par_iter().map(|check| check()).collect()),
        Err(_) => run_all(),
    }
}

pub fn render(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", reports.len()));
    out
}

// ---- naive oracles ----

fn naive_strong(h: &Hypergraph, colours: &[usize], c: usize) -> bool {
    h.edges().iter().all(|e| {
        let seen: BTreeSet<usize> = e.iter().map(|v| colours[v]).collect();
        seen.len() >= c.min(e.len())
    })
}

fn seen_by(e: &VertexSet, colours: &[usize]) -> usize {
    e.iter().map(|v| colours[v]).collect::<BTreeSet<_>>().len()
}

/// Signature of every vertex: the set of sequence positions whose edges
/// contain it.
fn signatures(n: usize, seq: &[VertexSet]) -> Vec<Vec<usize>> {
    (0..n).map(|v| (0..seq.len()).filter(|&i| seq[i].contains(v)).collect()).collect()
}

/// Regions as signature classes, then the two clauses of split-degeneracy
/// for each edge against its predecessors.
fn naive_split(n: usize, seq: &[VertexSet], k: usize) -> bool {
    (0..seq.len()).all(|j| {
        let sigs = signatures(n, &seq[..j]);
        let mut classes: BTreeMap<&Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (v, s) in sigs.iter().enumerate() {
            classes.entry(s).or_default().push(v);
        }
        let e = &seq[j];
        let met = classes.values().filter(|vs| vs.iter().any(|&v| e.contains(v))).count();
        let swallowed = classes.values().any(|vs| vs.iter().all(|&v| e.contains(v)));
        met <= k && !swallowed
    })
}

/// The three clauses of the bromeliad definition for an arbitrary
/// core/petal choice.
fn naive_bromeliad(edges: &[VertexSet], cores: &[VertexSet], petals: &[VertexSet]) -> bool {
    let b = edges.len();
    if b == 0 || cores.len() != b || petals.len() != b {
        return false;
    }
    let partitions = (0..b).all(|i| cores[i].is_disjoint(&petals[i]) && cores[i].union(&petals[i]) == edges[i]);
    let nested = cores[0] == edges[0]
        && (1..b).all(|i| cores[i].is_subset(&cores[i - 1]) && cores[i] != cores[i - 1])
        && !cores[b - 1].is_empty();
    let mut parts: Vec<&VertexSet> = petals.iter().collect();
    parts.push(&cores[0]);
    let disjoint = parts.iter().tuple_combinations().all(|(x, y)| x.is_disjoint(y));
    partitions && nested && disjoint
}

/// Every witness of `edges`, found by trying each core `C_i ⊆ e_i`
/// (subsets outside `C_{i−1}` cannot nest and are skipped).
fn all_witnesses(edges: &[VertexSet]) -> Vec<Vec<VertexSet>> {
    fn go(edges: &[VertexSet], cores: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        let i = cores.len();
        if i == edges.len() {
            let petals: Vec<VertexSet> = edges.iter().zip(cores.iter()).map(|(e, c)| e.difference(c)).collect();
            if naive_bromeliad(edges, cores, &petals) {
                out.push(cores.clone());
            }
            return;
        }
        let pool: Vec<usize> = edges[i].intersection(&cores[i - 1]).iter().collect();
        for mask in 0u32..(1 << pool.len()) {
            let core: VertexSet = (0..pool.len()).filter(|&b| mask >> b & 1 == 1).map(|b| pool[b]).collect();
            cores.push(core);
            go(edges, cores, out);
            cores.pop();
        }
    }
    let mut out = Vec::new();
    if let Some(first) = edges.first() {
        go(edges, &mut vec![first.clone()], &mut out);
    }
    out
}

/// Edges of `h` in seeded random order, kept greedily while the sequence
/// stays k-split-degenerate (by the naive check).
fn greedy_split_sequence(h: &Hypergraph, k: usize, rng: &mut ChaCha8Rng) -> Vec<VertexSet> {
    let mut pool = h.edges().to_vec();
    pool.shuffle(rng);
    let mut seq = Vec::new();
    for e in pool {
        seq.push(e);
        if !naive_split(h.n(), &seq, k) {
            seq.pop();
        }
    }
    seq
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---- 1, 2: numeric anchors ----

pub fn extremal_anchor() -> Report {
    let h = complete_uniform(6, 4).expect("K_6^(4) is within every cap");
    let r = chi_strong(&h, 3);
    let strong = naive_strong(&h, r.witness.colours(), 3) && r.witness.num_used() == r.chi;
    let four = chi_strong_bruteforce(&h, 3, 4);
    let five = chi_strong_bruteforce(&h, 3, 5);
    let passed = r.chi == 5 && strong && four == Ok(false) && five == Ok(true);
    let detail = format!(
        "chi_strong(K_6^(4), 3) = {}; brute force: 4 colours {}, 5 colours {}",
        r.chi,
        verdict(&four),
        verdict(&five)
    );
    report("1", "extremal anchor", passed, detail)
}

pub fn weak_anchor() -> Report {
    let h = Hypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).expect("triangle");
    let r = chi_strong(&h, 2);
    let two = chi_strong_bruteforce(&h, 2, 2);
    let three = chi_strong_bruteforce(&h, 2, 3);
    let passed = r.chi == 3 && naive_strong(&h, r.witness.colours(), 2) && two == Ok(false) && three == Ok(true);
    let detail =
        format!("chi_strong(triangle, 2) = {}; brute force: 2 colours {}, 3 colours {}", r.chi, verdict(&two), verdict(&three));
    report("2", "weak-colouring anchor", passed, detail)
}

fn verdict<E>(r: &Result<bool, E>) -> &'static str {
    match r {
        Ok(true) => "suffice",
        Ok(false) => "do not suffice",
        Err(_) => "too large",
    }
}

// ---- 3: the extremal construction ----

pub const CONSTRUCTION_GRID: [(usize, usize, usize); 6] = [(1, 2, 2), (1, 2, 3), (2, 2, 2), (2, 2, 3), (3, 2, 2), (1, 3, 2)];

/// All checks for one grid point of the construction.
pub fn construction_point(t: usize, ell: usize, k: usize) -> Tally {
    let mut tally = Tally::default();
    let tag = format!("({t},{ell},{k})");
    let (h, spec) = match construction_42(t, ell, k, DEFAULT_VERTEX_CAP) {
        Ok(built) => built,
        Err(e) => {
            tally.cases += 1;
            tally.fail_with(format!("{tag}: {e}"));
            return tally;
        }
    };
    let n = h.n();
    let c = t + ell;
    let expected = k.pow(spec.tau as u32) + t + 2 * ell - 4;

    let pairwise = h.edges().iter().tuple_combinations().all(|(e, f)| e.intersection_len(f) >= t);
    tally.case(pairwise && h.is_t_intersecting(t), || format!("{tag}: not {t}-intersecting"));

    let forced = (0..n).tuple_combinations().all(|(u, v)| h.edges().iter().any(|e| e.len() <= c && e.contains(u) && e.contains(v)));
    tally.case(forced && rainbow_forced(&h, c), || format!("{tag}: some vertex pair is not forced apart"));

    let auto = chi_strong_auto(&h, c);
    let search = chi_strong(&h, c);
    let ok = auto.method == ChiMethod::RainbowForced
        && auto.chi == expected
        && search.chi == expected
        && naive_strong(&h, search.witness.colours(), c);
    tally.case(ok, || format!("{tag}: chi {} / search {} != {expected}", auto.chi, search.chi));
    if n <= 8 {
        let below = chi_strong_bruteforce(&h, c, expected - 1);
        let at = chi_strong_bruteforce(&h, c, expected);
        tally.case(below == Ok(false) && at == Ok(true), || format!("{tag}: brute force disagrees at {expected}"));
    }

    let bound = spec.link_chi_bound();
    for s in (0..n).combinations(t).map(VertexSet::from_sorted) {
        let link = h.link(&s);
        let ok = match construction_42_link_colouring(&spec, &s) {
            Ok(col) => {
                col.num_vertices() == link.hypergraph.n()
                    && naive_strong(&link.hypergraph, col.colours(), ell)
                    && col.num_used() <= bound
            }
            Err(_) => false,
        };
        tally.case(ok, || format!("{tag}: link certificate for {s} fails"));
    }
    let exact = chi_t_ell(&h, t, ell).value;
    tally.case(exact <= bound, || format!("{tag}: chi_t_ell = {exact} > {bound}"));
    tally
}

pub fn construction_grid() -> Report {
    let mut all = Tally::default();
    let mut points = 0;
    for (t, ell, k) in CONSTRUCTION_GRID {
        let tally = construction_point(t, ell, k);
        points += usize::from(tally.failures == 0);
        all.cases += tally.cases;
        all.failures += tally.failures;
        if let Some(why) = tally.first_failure {
            all.first_failure.get_or_insert(why);
        }
    }
    let passed = all.passed(CONSTRUCTION_GRID.len());
    let detail = format!("{points}/{} grid points; checks {}", CONSTRUCTION_GRID.len(), all.summary());
    report("3", "extremal construction grid", passed, detail)
}

// ---- 4: the (c−2)-intersecting extremal procedure, c = 3 ----

pub const THM41_SEEDS: u64 = 400;
pub const THM41_MIN_APPLIED: usize = 50;

/// A 1-intersecting host: a centre joined to every edge of a dense random
/// graph on 6..=8 vertices, a few larger star edges, and a few edges
/// covering all but one graph vertex. Labels are shuffled.
pub fn thm41_instance(seed: u64) -> Hypergraph {
    let mut rng = rng(seed);
    let m = rng.gen_range(6..=8);
    let g = random_graph(m, 0.8, rng.gen());
    let shift = |e: &VertexSet| -> VertexSet { e.iter().map(|v| v + 1).collect() };
    let centre = VertexSet::from_sorted(vec![0]);
    let mut edges: BTreeSet<VertexSet> = g.edges().iter().map(|e| shift(e).union(&centre)).collect();
    let others: Vec<usize> = (1..=m).collect();
    for _ in 0..rng.gen_range(0..=3) {
        let size = rng.gen_range(3..=4);
        let star: VertexSet = others.choose_multiple(&mut rng, size).copied().collect();
        edges.insert(star.union(&centre));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let skip = rng.gen_range(1..=m);
        edges.insert(others.iter().copied().filter(|&v| v != skip).collect());
    }
    let mut labels: Vec<usize> = (0..=m).collect();
    labels.shuffle(&mut rng);
    let relabelled = edges.iter().map(|e| e.iter().map(|v| labels[v]).collect::<VertexSet>());
    Hypergraph::from_sets(m + 1, relabelled).expect("relabelled edges are valid")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Thm41Summary {
    pub instances: usize,
    pub applied: usize,
    pub lower_bound_sets: usize,
    pub tally: Tally,
}

pub fn theorem41_summary() -> Thm41Summary {
    let mut s = Thm41Summary::default();
    for seed in 0..THM41_SEEDS {
        let h = thm41_instance(seed);
        s.instances += 1;
        s.tally.case(h.is_t_intersecting(1), || format!("seed {seed}: host is not intersecting"));
        match theorem41_colouring(&h, 3) {
            Ok(Thm41Outcome::Applied { certificate, set, link_chi }) => {
                s.applied += 1;
                let lc = chi_t_ell(&h, 1, 2);
                let theta = &certificate.colouring;
                let chi = chi_strong(&h, 3).chi;
                let ok = naive_strong(&h, theta.colours(), 3)
                    && lc.value >= 6
                    && Some(&set) == lc.argmax.as_ref()
                    && link_chi == lc.value
                    && theta.num_used() == lc.value + 1
                    && chi == lc.value + 1;
                s.tally.case(ok, || {
                    format!("seed {seed}: theta uses {} colours, chi_t_ell + 1 = {}, chi = {chi}", theta.num_used(), lc.value + 1)
                });
            }
            Ok(Thm41Outcome::NotApplicable { .. }) => {}
            Err(e) => s.tally.fail_with(format!("seed {seed}: {e}")),
        }
        for v in 0..h.n() {
            let set = VertexSet::from_sorted(vec![v]);
            let link_chi = chi_strong(&h.link(&set).hypergraph, 2).chi;
            if link_chi < 2 {
                continue;
            }
            s.lower_bound_sets += 1;
            let (star, _) = h.filter_edges(|e| e.contains(v));
            let chi = chi_strong(&star, 3).chi;
            s.tally.case(chi > link_chi, || format!("seed {seed}, S = {set}: chi {chi} <= link chi {link_chi}"));
        }
    }
    s
}

pub fn theorem41_suite() -> Report {
    let s = theorem41_summary();
    let passed = s.tally.passed(1) && s.applied >= THM41_MIN_APPLIED;
    let detail = format!(
        "{} instances, guard held on {} (need {THM41_MIN_APPLIED}); {} lower-bound sets; checks {}",
        s.instances,
        s.applied,
        s.lower_bound_sets,
        s.tally.summary()
    );
    report("4", "link-extremal colouring (c = 3)", passed, detail)
}

// ---- 5: pruning threshold law ----

pub const PRUNE_FIXTURES: u64 = 120;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PruneSummary {
    pub fixtures: usize,
    pub sub_hypergraph: usize,
    pub coloured: usize,
    pub high_chi: usize,
    pub tally: Tally,
}

/// Checks one pruning call against the exact oracles.
fn check_prune(h: &Hypergraph, edges: &[VertexSet], r: usize, tally: &mut Tally, tag: &str) -> Option<bool> {
    let b = edges.len();
    let bromeliad = match bromeliad_witness(edges) {
        Ok(w) => w,
        Err(e) => {
            tally.fail_with(format!("{tag}: planted sequence is not a bromeliad: {e}"));
            return None;
        }
    };
    match prune(h, &bromeliad, r) {
        Ok(PruneOutcome::SubHypergraph { j, edge_indices, hypergraph }) => {
            let petal = &bromeliad.petals[j.saturating_sub(1).min(b - 1)];
            let kept: Vec<&VertexSet> = edge_indices.iter().filter_map(|&i| h.edge(i)).collect();
            let all_disjoint = (0..h.num_edges()).all(|i| {
                let e = &h.edges()[i];
                e.is_disjoint(petal) == edge_indices.contains(&i)
            });
            let hard = r == 0 || colourable_naive(&hypergraph, b - 1, r - 1) == Some(false);
            let ok = (2..=b).contains(&j)
                && all_disjoint
                && kept.iter().copied().eq(hypergraph.edges().iter())
                && hard;
            tally.case(ok, || format!("{tag}: sub-hypergraph branch j = {j} does not verify"));
            Some(false)
        }
        Ok(PruneOutcome::Coloured { certificate, bound }) => {
            let col = &certificate.colouring;
            let limit = (b as u128) * ((r - 1) as u128).pow((b - 1) as u32);
            let ok = naive_strong(h, col.colours(), b - 1) && bound == limit && col.num_used() as u128 <= limit;
            tally.case(ok, || format!("{tag}: colouring branch uses {} colours (bound {limit})", col.num_used()));
            Some(true)
        }
        Err(e) => {
            tally.fail_with(format!("{tag}: {e}"));
            None
        }
    }
}

/// Brute force when the search space is small, otherwise `None`.
fn colourable_naive(h: &Hypergraph, c: usize, k: usize) -> Option<bool> {
    chi_strong_bruteforce(h, c, k).ok()
}

fn with_clique(h: &Hypergraph, size: usize) -> Hypergraph {
    let n = h.n();
    let clique = (n..n + size).tuple_combinations().map(|(u, v)| VertexSet::from_sorted(vec![u, v]));
    Hypergraph::from_sets(n + size, h.edges().iter().cloned().chain(clique)).expect("fresh vertices")
}

pub fn pruning_summary() -> PruneSummary {
    let mut s = PruneSummary::default();
    for seed in 0..PRUNE_FIXTURES {
        let planted = match planted_bromeliad(3, 8, 4 + (seed % 5) as usize, seed) {
            Ok(p) => p,
            Err(e) => {
                s.tally.fail_with(format!("seed {seed}: {e}"));
                continue;
            }
        };
        s.fixtures += 1;
        // Odd seeds get a K_4 or K_5 on fresh vertices, so the threshold
        // clause is exercised.
        let h = &if seed % 2 == 1 { with_clique(&planted.hypergraph, 4 + (seed % 4 == 3) as usize) } else { planted.hypergraph.clone() };
        let chi = chi_strong(h, 2).chi;
        let tag = format!("seed {seed}");
        match check_prune(h, &planted.bromeliad, 2, &mut s.tally, &tag) {
            Some(true) => {
                s.coloured += 1;
                s.tally.case(chi < 4, || format!("{tag}: chi = {chi} >= 4 but the colouring branch was taken"));
            }
            Some(false) => {
                s.sub_hypergraph += 1;
                s.high_chi += usize::from(chi >= 4);
            }
            None => {}
        }
    }
    s
}

pub fn pruning_suite() -> Report {
    let s = pruning_summary();
    let passed = s.tally.passed(1) && s.fixtures >= 100;
    let detail = format!(
        "{} fixtures (b = 3, r = 2): {} sub-hypergraph ({} with chi >= 4), {} colouring branch; checks {}",
        s.fixtures,
        s.sub_hypergraph,
        s.high_chi,
        s.coloured,
        s.tally.summary()
    );
    report("5", "pruning threshold law", passed, detail)
}

// ---- 6: structure property suites ----

pub const STRUCTURE_MIN_CASES: usize = 500;

pub fn regions_suite() -> Tally {
    let mut tally = Tally::default();
    for seed in 0..STRUCTURE_MIN_CASES as u64 {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=8);
        let h = random_hypergraph(n, rng.gen_range(1..=8), n, seed);
        let len = rng.gen_range(0..=h.num_edges().min(5));
        let seq: Vec<VertexSet> = h.edges().choose_multiple(&mut rng, len).cloned().collect();
        let ok = match regions(&h, &seq) {
            Ok(p) => {
                let sigs = signatures(n, &seq);
                let mut covered = vec![0usize; n];
                let blocks_ok = p.blocks.iter().all(|r| {
                    !r.vertices.is_empty()
                        && r.vertices.iter().all(|v| {
                            covered[v] += 1;
                            sigs[v].iter().map(|i| i + 1).eq(r.signature.iter().copied())
                        })
                });
                let distinct = p.blocks.iter().map(|r| &r.signature).all_unique();
                blocks_ok && distinct && covered.iter().all(|&c| c == 1)
            }
            Err(_) => false,
        };
        tally.case(ok, || format!("seed {seed}: regions do not partition the vertices by signature"));
    }
    tally
}

pub fn subsequence_suite() -> Tally {
    let mut tally = Tally::default();
    for seed in 0..STRUCTURE_MIN_CASES as u64 {
        let mut rng = rng(seed ^ 0x5eed);
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=3);
        let h = random_hypergraph(n, rng.gen_range(2..=10), n, seed);
        let seq = greedy_split_sequence(&h, k, &mut rng);
        let indices: Vec<usize> = (0..seq.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let sub: Vec<VertexSet> = indices.iter().map(|&i| seq[i].clone()).collect();
        let ok = crate::structure::is_k_split_degenerate(&h, &seq, k).is_ok()
            && subsequence_check(&h, &seq, k, &indices).is_ok()
            && naive_split(n, &sub, k);
        tally.case(ok, || format!("seed {seed}: subsequence {indices:?} of a {k}-split-degenerate sequence"));
    }
    tally
}

pub fn witness_suite() -> Tally {
    let mut tally = Tally::default();
    for seed in 0..STRUCTURE_MIN_CASES as u64 {
        let mut rng = rng(seed ^ 0xb0b);
        let seq: Vec<VertexSet> = if seed % 2 == 0 {
            let b = rng.gen_range(2..=4);
            match planted_bromeliad(b, 8, 0, seed) {
                Ok(p) => p.bromeliad,
                Err(e) => {
                    tally.fail_with(format!("seed {seed}: {e}"));
                    continue;
                }
            }
        } else {
            let n = rng.gen_range(2..=7);
            let h = random_t_intersecting(n, rng.gen_range(2..=5).min(1 << (n - 1)), 1, seed).unwrap_or_else(|_| random_hypergraph(n, 4, n, seed));
            let len = rng.gen_range(1..=h.num_edges().min(3));
            h.edges().choose_multiple(&mut rng, len).cloned().collect()
        };
        let found = all_witnesses(&seq);
        let ok = match bromeliad_witness(&seq) {
            Ok(w) => found.len() == 1 && found[0] == w.cores,
            Err(_) => found.is_empty(),
        };
        tally.case(ok, || format!("seed {seed}: {} witnesses for {seq:?}", found.len()));
    }
    tally
}

pub fn red_clique_suite() -> Tally {
    let mut tally = Tally::default();
    let mut seed = 0u64;
    while tally.cases < STRUCTURE_MIN_CASES && seed < 20_000 {
        let mut rng = rng(seed ^ 0x4ed);
        let n = rng.gen_range(4..=8);
        let k = rng.gen_range(2..=4);
        let Ok(h) = random_t_intersecting(n, rng.gen_range(4..=10), 1, seed) else {
            seed += 1;
            continue;
        };
        let seq = greedy_split_sequence(&h, k, &mut rng);
        for size in 3..=4 {
            for clique in (0..seq.len()).combinations(size) {
                let red = clique
                    .iter()
                    .tuple_combinations()
                    .all(|(&x, &y, &z)| triple_classify(&seq[x], &seq[y], &seq[z]) == TripleColour::Red);
                if !red {
                    continue;
                }
                let edges: Vec<VertexSet> = clique.iter().map(|&i| seq[i].clone()).collect();
                let ok = match red_clique_to_bromeliad(&h, &seq, k, &clique) {
                    Ok(b) => b.edges == edges && naive_bromeliad(&b.edges, &b.cores, &b.petals),
                    Err(_) => false,
                };
                tally.case(ok, || format!("seed {seed}: red clique {clique:?} is not a bromeliad"));
            }
        }
        seed += 1;
    }
    tally
}

pub fn sunflower_suite() -> Tally {
    let mut tally = Tally::default();
    for seed in 0..STRUCTURE_MIN_CASES as u64 {
        let mut rng = rng(seed ^ 0x5f1);
        let n = rng.gen_range(2..=8);
        let t = rng.gen_range(1..=3);
        let m = rng.gen_range(2..=8);
        let h = if seed % 2 == 0 {
            random_t_intersecting(n, m.min(1 << (n - t.min(n))), t.min(n), seed).unwrap_or_else(|_| random_hypergraph(n, m, n, seed))
        } else {
            random_hypergraph(n, m, n, seed)
        };
        let pairwise = h.edges().iter().tuple_combinations().all(|(e, f)| e.intersection_len(f) >= t);
        let found = find_sunflower(&h, 2, t - 1);
        let valid = found.as_ref().is_none_or(|s| s.check(&h).is_ok() && s.kernel.len() < t && s.num_petals() == 2);
        let ok = valid && h.is_t_intersecting(t) == pairwise && pairwise == found.is_none();
        tally.case(ok, || format!("seed {seed}: t = {t}, pairwise {pairwise}, sunflower {}", found.is_some()));
    }
    tally
}

pub fn link_chi_suite() -> Tally {
    let mut tally = Tally::default();
    for seed in 0..STRUCTURE_MIN_CASES as u64 {
        let mut rng = rng(seed ^ 0x11c);
        let n = rng.gen_range(1..=7);
        let t = rng.gen_range(0..=2);
        let ell = rng.gen_range(1..=2);
        let h = random_hypergraph(n, rng.gen_range(1..=8), n, seed);
        let link = chi_t_ell(&h, t, ell).value;
        let whole = chi_strong(&h, t + ell).chi;
        tally.case(link <= whole, || format!("seed {seed}: chi_t_ell({t},{ell}) = {link} > chi = {whole}"));
    }
    tally
}

pub fn solver_suite() -> Tally {
    let mut tally = Tally::default();
    let mut seed = 0u64;
    while tally.cases < STRUCTURE_MIN_CASES {
        let mut rng = rng(seed ^ 0x501);
        let n = rng.gen_range(1..=6);
        let h = random_hypergraph(n, rng.gen_range(1..=7), n, seed);
        for c in 1..=4 {
            for k in 1..=4 {
                let fast = colourable(&h, c, k);
                let slow = chi_strong_bruteforce(&h, c, k);
                let valid = fast.as_ref().is_none_or(|col| col.num_used() <= k && naive_strong(&h, col.colours(), c));
                let ok = valid && slow == Ok(fast.is_some());
                tally.case(ok, || format!("seed {seed}: c = {c}, k = {k}: solver {}, brute force {slow:?}", fast.is_some()));
            }
        }
        let chi = chi_strong(&h, 2).chi;
        tally.case(chi == 0 || chi_strong_bruteforce(&h, 2, chi - 1) == Ok(false), || format!("seed {seed}: chi not minimal"));
        seed += 1;
    }
    tally
}

pub fn structure_suites() -> Report {
    let suites = [
        ("regions", regions_suite()),
        ("subsequence", subsequence_suite()),
        ("witness", witness_suite()),
        ("red-clique", red_clique_suite()),
        ("sunflower", sunflower_suite()),
        ("link-chi", link_chi_suite()),
        ("solver", solver_suite()),
    ];
    let passed = suites.iter().all(|(_, t)| t.passed(STRUCTURE_MIN_CASES));
    let detail = suites.iter().map(|(name, t)| format!("{name} {}", t.summary())).join("; ");
    report("6", "structure property suites", passed, detail)
}

// ---- 7: sunflower procedure ----

pub const THM44_PAIRS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
pub const THM44_SEEDS: u64 = 8;

/// A sunflower with `t+ℓ` petals and kernel `t+ℓ−2`, plus random edges
/// kept only while the family stays t-intersecting.
pub fn thm44_host(t: usize, ell: usize, seed: u64) -> Hypergraph {
    let p = t + ell;
    let base = sunflower_gen(p, p - 2, 1 + (seed % 2) as usize).expect("small sunflower");
    let n = base.n() + 2;
    let mut edges = base.edges().to_vec();
    for e in random_hypergraph(n, 12, n, seed).edges() {
        if !edges.contains(e) && edges.iter().all(|f| f.intersection_len(e) >= t) {
            edges.push(e.clone());
        }
    }
    Hypergraph::from_sets(n, edges).expect("distinct edges")
}

pub fn theorem44_pair(t: usize, ell: usize) -> Tally {
    let mut tally = Tally::default();
    let c = t + ell;
    for seed in 0..THM44_SEEDS {
        let h = thm44_host(t, ell, seed);
        match theorem44_colouring(&h, t, ell) {
            Ok(Thm44Outcome::Applied { certificate, sunflower, link_chi, bound }) => {
                let col = &certificate.colouring;
                let exact = chi_t_ell(&h, t, ell).value;
                let exp = (0..t).fold(1u128, |acc, i| acc * (c - 2 - i) as u128 / (i + 1) as u128);
                let limit = (c as u128) * (exact as u128).pow(exp as u32) + sunflower.kernel.len() as u128;
                let ok = naive_strong(&h, col.colours(), c) && link_chi == exact && bound == limit && (col.num_used() as u128) <= limit;
                tally.case(ok, || format!("seed {seed}: {} colours against bound {limit}", col.num_used()));
            }
            Ok(Thm44Outcome::NotApplicable) => tally.fail_with(format!("seed {seed}: no sunflower found")),
            Err(e) => {
                tally.cases += 1;
                tally.fail_with(format!("seed {seed}: {e}"));
            }
        }
    }
    tally
}

pub fn theorem44_suite() -> Report {
    let pairs: Vec<(usize, usize, Tally)> = THM44_PAIRS.iter().map(|&(t, l)| (t, l, theorem44_pair(t, l))).collect();
    let passed = pairs.iter().all(|(_, _, tally)| tally.passed(1));
    let detail = pairs.iter().map(|(t, l, tally)| format!("({t},{l}) {}", tally.summary())).join("; ");
    report("7", "sunflower-petal colouring", passed, detail)
}

// ---- 8: extension dichotomy ----

pub const EXTENSION_CASES: u64 = 240;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionSummary {
    pub extended: usize,
    pub certified: usize,
    pub tally: Tally,
}

pub fn extension_summary() -> ExtensionSummary {
    const PAIRS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];
    let mut s = ExtensionSummary::default();
    for seed in 0..EXTENSION_CASES {
        let mut rng = rng(seed ^ 0xe87);
        let n = rng.gen_range(3..=7);
        let (t, ell) = PAIRS[rng.gen_range(0..PAIRS.len())];
        let (c, k) = (t + ell, t + ell - 1);
        let h = random_hypergraph(n, rng.gen_range(3..=8), 4, seed);
        let mut seq = greedy_split_sequence(&h, k, &mut rng);
        seq.truncate(rng.gen_range(0..=seq.len()));
        let supplied: Option<BTreeMap<usize, Colouring>> =
            (seed % 3 == 0).then(|| (0..n).map(|v| (v, Colouring::rainbow(n))).collect());
        let tag = format!("seed {seed} (t={t}, ℓ={ell}, |seq|={})", seq.len());
        let ext = match extend_split_degenerate(&h, &seq, t, ell, supplied.as_ref()) {
            Ok(ext) => ext,
            Err(e) => {
                s.tally.cases += 1;
                s.tally.fail_with(format!("{tag}: {e}"));
                continue;
            }
        };
        let product = ext.product.colours();
        let within = ext.bound == split_colour_bound(t, ell, seq.len(), ext.link_colours)
            && (ext.product.num_used() as u128) <= ext.bound;
        match &ext.outcome {
            ExtensionOutcome::Extended { edge_index, edge, sequence } => {
                s.extended += 1;
                let ok = h.edge(*edge_index) == Some(edge)
                    && sequence[..seq.len()] == seq[..]
                    && sequence.len() == seq.len() + 1
                    && &sequence[seq.len()] == edge
                    && seen_by(edge, product) < c.min(edge.len())
                    && naive_split(n, sequence, k)
                    && within;
                s.tally.case(ok, || format!("{tag}: extension by {edge} does not re-validate"));
            }
            ExtensionOutcome::Certified { certificate } => {
                s.certified += 1;
                let ok = certificate.colouring == ext.product && naive_strong(&h, product, c) && within;
                s.tally.case(ok, || format!("{tag}: certificate does not re-validate"));
            }
        }
    }
    s
}

pub fn extension_suite() -> Report {
    let s = extension_summary();
    let passed = s.tally.passed(200);
    let detail = format!("{} extended, {} certified; checks {}", s.extended, s.certified, s.tally.summary());
    report("8", "split-degenerate extension", passed, detail)
}

// ---- trace fixtures ----

/// A nested chain `{i, .., 8}` (i = 0..8) next to a K_5 on 9..13. Taking the
/// first compatible bromeliad at each step drives the trace to a 3-bromeliad
/// among its pruned edges, so the final check runs.
pub fn diagonal_fixture() -> (Hypergraph, TraceParams) {
    let mut edges: Vec<Vec<usize>> = (0..=8).map(|i| (i..=8).collect()).collect();
    edges.extend((9..14).tuple_combinations().map(|(u, v)| vec![u, v]));
    let h = Hypergraph::new(14, edges).expect("fixture");
    let params =
        TraceParams { t: 1, ell: 1, p: 2, thresholds: vec![4, 3, 2, 1, 0], step_cap: 16, choice: BromeliadChoice::First };
    (h, params)
}

/// One pruning step: the bromeliad `{0,1,2},{0,1,3},{0,4}` beside a K_5.
pub fn single_step_fixture() -> (Hypergraph, TraceParams) {
    let mut edges = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 4]];
    edges.extend((5..10).tuple_combinations().map(|(u, v)| vec![u, v]));
    let h = Hypergraph::new(10, edges).expect("fixture");
    let params = TraceParams { t: 1, ell: 1, p: 2, thresholds: vec![4, 3], step_cap: 16, choice: BromeliadChoice::Minimal };
    (h, params)
}

pub fn trace_fixtures() -> Report {
    let mut tally = Tally::default();
    let mut diagonal_seen = false;

    let (h, params) = diagonal_fixture();
    match trace_main_loop(&h, &params) {
        Ok(record) => {
            let diagonal = match &record.termination {
                TraceTermination::Completed { diagonal: Some(d) } => d.dagger && d.precedes && d.diagonal_crown < d.chosen_crown,
                _ => false,
            };
            diagonal_seen = diagonal;
            tally.case(diagonal, || "diagonal fixture: no (†)-satisfying diagonal with B′ ≺ B_{i1}".into());
            tally.case(validate_trace(&h, &record).is_ok(), || "diagonal fixture: record does not validate".into());
        }
        Err(e) => tally.fail_with(format!("diagonal fixture: {e}")),
    }
    let minimal = TraceParams { choice: BromeliadChoice::Minimal, ..params };
    match trace_main_loop(&h, &minimal) {
        Ok(record) => {
            let no_diagonal = !matches!(record.termination, TraceTermination::Completed { diagonal: Some(_) });
            tally.case(no_diagonal && validate_trace(&h, &record).is_ok(), || "minimal trace reached the diagonal".into());
        }
        Err(e) => tally.fail_with(format!("minimal trace: {e}")),
    }

    let (h, params) = single_step_fixture();
    match trace_main_loop(&h, &params) {
        Ok(record) => {
            let ok = record.steps.len() == 1
                && matches!(record.termination, TraceTermination::Completed { diagonal: None })
                && validate_trace(&h, &record).is_ok();
            tally.case(ok, || "single-step fixture does not validate".into());
        }
        Err(e) => tally.fail_with(format!("single-step fixture: {e}")),
    }

    for seed in 0..24 {
        let Ok(h) = random_t_intersecting(7, 9, 1, seed) else { continue };
        let params = TraceParams { t: 1, ell: 1, p: 2, thresholds: vec![3, 2, 1, 0], step_cap: 16, choice: BromeliadChoice::Minimal };
        match trace_main_loop(&h, &params) {
            Ok(record) => {
                let why = validate_trace(&h, &record).err();
                tally.case(why.is_none(), || format!("random trace {seed}: {}", why.unwrap_or_default()));
            }
            Err(e) => tally.fail_with(format!("random trace {seed}: {e}")),
        }
    }
    let passed = tally.passed(4) && diagonal_seen;
    let detail = format!("records validated {}; diagonal check reached: {diagonal_seen}", tally.summary());
    report("T", "trace record fixtures", passed, detail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_split_matches_definition() {
        let n = 5;
        let e = |v: &[usize]| VertexSet::from_unsorted(v.to_vec());
        assert!(naive_split(n, &[e(&[0, 1])], 1));
        // {0,1} then {0,1}: swallows the region {0,1}.
        assert!(!naive_split(n, &[e(&[0, 1]), e(&[0, 1])], 3));
        // {2,3} would swallow a region on four vertices; on five, {1,2}
        // then meets the two regions {0,1} and {2,3}.
        assert!(!naive_split(4, &[e(&[0, 1]), e(&[2, 3])], 2));
        assert!(!naive_split(n, &[e(&[0, 1]), e(&[2, 3]), e(&[1, 2])], 1));
        assert!(naive_split(n, &[e(&[0, 1]), e(&[2, 3]), e(&[1, 2])], 2));
    }

    #[test]
    fn witness_enumeration_finds_the_canonical_one() {
        let e = |v: &[usize]| VertexSet::from_unsorted(v.to_vec());
        let seq = [e(&[0, 1, 2]), e(&[0, 1, 3]), e(&[0, 4])];
        let all = all_witnesses(&seq);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], bromeliad_witness(&seq).unwrap().cores);
        assert!(all_witnesses(&[e(&[0, 1]), e(&[2])]).is_empty());
    }

    #[test]
    fn render_counts_passes() {
        let r = vec![report("1", "a", true, "ok".into()), report("2", "b", false, "no".into())];
        let text = render(&r);
        assert!(text.starts_with("PASS  1"));
        assert!(text.ends_with("1/2 criteria passed\n"));
    }
}
