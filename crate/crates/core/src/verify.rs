//! The exhaustive small-instance verification suite.
//!
//! Every check runs over a canonical corpus in a fixed order. Cases run in
//! parallel but results are collected in corpus order, so a report depends
//! only on the configuration.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bond::{
    build_bond_lattice, chromatic_polynomial, chromatic_polynomial_whitney, down_set_product_mismatches, mu_explicit,
    nbc_bases, orientation_counts_vs_chromatic, phi_recursive, psi_prime, rota_check, unique_sink_orientations,
    EdgeOrder,
};
use crate::corpus::{connected_simple_graphs_up_to, eulerian_digraphs, veblen_multigraphs};
use crate::error::{Error, Result};
use crate::harary::{
    associated_coefficient, associated_coefficient_via_rootings, charpoly_determinant_oracle,
    circuit_partition_of_orientation, decomposition_classes, decompositions, elementary_subgraph_formula,
    hs_characteristic_polynomial, rooting_classes, undirected_circuit_count, weight, VeblenMultigraph,
};
use crate::heaps::{
    count_full_pyramids, cycle_piece_system, decomposition_pyramids, pyramid_recursion_check, pyramid_to_trail,
    trail_to_pyramid,
};
use crate::lattice::{
    build_t_by_filter, cancellation_from, circuit_partition_counts_by_filter, cycle_partitions, identity_from,
    las_vergnas_divisibility, EulerianSemilattice, Fault,
};
use crate::trails::{count_circuits_best, eulerian_circuits, eulerian_trails_ending_at};
use crate::{Digraph, Multigraph, SimpleGraph};

pub const SCHEMA_VERSION: u32 = 1;
const MAX_SAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_digraph_edges: usize,
    pub max_graph_vertices: usize,
    pub max_veblen_edges: usize,
    /// Random edge orders per graph in the bijection check.
    pub edge_orders: usize,
    #[serde(skip)]
    pub fault: Fault,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            max_digraph_edges: 8,
            max_graph_vertices: 6,
            max_veblen_edges: 8,
            edge_orders: 3,
            fault: Fault::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    pub failure_samples: Vec<String>,
    pub cap_violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub config: VerifyConfig,
    pub fault_injected: bool,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

/// Runs `case` on every item. A case returns its failure messages; a size cap
/// error is recorded as a cap violation, any other error as a failure.
fn run_check<I, F>(name: &str, items: &[I], case: F) -> CheckReport
where
    I: Sync + Debug,
    F: Fn(&I) -> Result<Vec<String>> + Sync,
{
    let outcomes: Vec<(usize, Result<Vec<String>>)> =
        items.par_iter().enumerate().map(|(i, it)| (i, case(it))).collect();
    let mut failures = 0;
    let mut samples = Vec::new();
    let mut caps = Vec::new();
    for (i, out) in outcomes {
        let msgs = match out {
            Ok(m) => m,
            Err(e @ Error::SizeCap { .. }) => {
                caps.push(format!("case {i}: {e}"));
                continue;
            }
            Err(e) => vec![format!("error: {e}")],
        };
        if !msgs.is_empty() {
            failures += 1;
            if samples.len() < MAX_SAMPLES {
                samples.push(format!("case {i} {:?}: {}", items[i], msgs.join("; ")));
            }
        }
    }
    CheckReport {
        name: name.to_string(),
        passed: failures == 0,
        cases: items.len(),
        failures,
        failure_samples: samples,
        cap_violations: caps,
    }
}

fn expect(msgs: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        msgs.push(what());
    }
}

fn semilattice_checks(ds: &[Digraph], fault: Fault) -> Vec<CheckReport> {
    let build = |d: &Digraph| EulerianSemilattice::build_with(d, fault);
    vec![
        run_check("semilattice", ds, |d| {
            let t = build(d)?;
            let mut m = Vec::new();
            expect(&mut m, t.is_join_closed(), || "not join-closed".into());
            if d.edge_count() <= 10 {
                let filtered = build_t_by_filter(d)?;
                expect(&mut m, filtered == t.elements(), || "filter route disagrees".into());
            }
            Ok(m)
        }),
        run_check("cancellation", ds, |d| {
            let r = cancellation_from(&build(d)?);
            let mut m = Vec::new();
            expect(&mut m, r.holds(), || {
                format!("alternating sum {} (single cycle: {})", r.alternating_sum, r.single_cycle)
            });
            Ok(m)
        }),
        run_check("mobius", ds, |d| {
            let t = build(d)?;
            let mut m = Vec::new();
            for i in 0..t.len() {
                if !t.minimal().contains(&i) {
                    let g = t.g(i);
                    expect(&mut m, g.is_zero(), || format!("G = {g} at non-minimal {}", t.elements()[i]));
                }
            }
            let (f_top, inverted) = t.mobius_inversion();
            expect(&mut m, f_top == inverted, || format!("F(1) = {f_top} but inversion gives {inverted}"));
            Ok(m)
        }),
        run_check("martin-chromatic-identity", ds, |d| {
            let r = identity_from(&build(d)?)?;
            let mut m = Vec::new();
            expect(&mut m, r.holds(), || format!("s sides {} vs {}", r.s_lhs, r.s_rhs));
            match las_vergnas_divisibility(d) {
                Ok(lv) => expect(&mut m, lv.divisible(), || "divisibility fails".into()),
                Err(Error::DegreeTooSmall(_)) => {}
                Err(e) => return Err(e),
            }
            Ok(m)
        }),
    ]
}

fn circuit_checks(ds: &[Digraph]) -> Vec<CheckReport> {
    vec![
        run_check("circuit-count", ds, |d| {
            let listed = BigInt::from(eulerian_circuits(d).len());
            let best = count_circuits_best(d)?;
            let mut m = Vec::new();
            expect(&mut m, listed == best, || format!("enumerated {listed}, BEST {best}"));
            Ok(m)
        }),
        run_check("circuit-partition-counts", ds, |d| {
            let t = EulerianSemilattice::build(d)?;
            let f = t.circuit_partition_counts();
            let mut m = Vec::new();
            let filtered = circuit_partition_counts_by_filter(d)?;
            expect(&mut m, filtered == f, || format!("filter route {filtered:?} vs {f:?}"));
            for (i, fk) in f.iter().enumerate() {
                let k = i + 1;
                let via = circuit_partition_of_orientation(d, k)?;
                expect(&mut m, &via == fk, || format!("f_{k}: decompositions give {via}, lattice {fk}"));
            }
            Ok(m)
        }),
        run_check("trail-pyramid", ds, |d| {
            let trails = eulerian_trails_ending_at(d, 0)?;
            let pyramids = decomposition_pyramids(d, 0)?;
            let mut m = Vec::new();
            expect(&mut m, trails.len() == pyramids.len(), || {
                format!("{} trails vs {} pyramids", trails.len(), pyramids.len())
            });
            for w in &trails {
                let back = pyramid_to_trail(d, 0, &trail_to_pyramid(d, w)?)?;
                expect(&mut m, &back == w, || format!("round trip changes {:?}", w.edges()));
            }
            Ok(m)
        }),
        run_check("pyramid-balance", ds, |d| {
            let mut m = Vec::new();
            for a in cycle_partitions(d)? {
                let ps = cycle_piece_system(d, &a);
                let k = ps.len();
                let counts = (0..k).map(|b| count_full_pyramids(&ps, b)).collect::<Result<Vec<_>>>()?;
                expect(&mut m, counts.windows(2).all(|w| w[0] == w[1]), || format!("counts {counts:?} for {a}"));
                let l = build_bond_lattice(ps.graph());
                let mu = l.mobius_from_bottom()[l.top()];
                let sign = if k % 2 == 1 { 1 } else { -1 };
                expect(&mut m, mu as i128 == sign * counts[0] as i128, || {
                    format!("mu(0,1) = {mu}, pyramids {} for {a}", counts[0])
                });
                for (b1, b2) in ps.graph().edges() {
                    let r = pyramid_recursion_check(&ps, *b1, *b2)?;
                    expect(&mut m, r.holds(), || format!("pyramid recursion at ({b1},{b2}) for {a}"));
                }
            }
            Ok(m)
        }),
    ]
}

/// The identity order followed by `count` random edge orders drawn from
/// `seed`.
pub fn edge_orders(g: &SimpleGraph, count: usize, seed: u64) -> Vec<EdgeOrder> {
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    let mut ords = vec![EdgeOrder::identity(g.edge_count())];
    ords.extend((0..count).map(|_| EdgeOrder::random(g.edge_count(), rng)));
    ords
}

/// NBC bases against unique-sink orientations under each order: counts,
/// explicit against recursive construction, both round trips and Rota's
/// theorem. Returns the failures.
pub fn bijection_check(g: &SimpleGraph, ords: &[EdgeOrder]) -> Result<Vec<String>> {
    let mut m = Vec::new();
    let l = build_bond_lattice(g);
    for ord in ords {
        let rota = rota_check(&l, ord)?;
        expect(&mut m, rota.holds(), || format!("Rota fails under {:?}", ord.perm()));
        let bases = nbc_bases(g, ord)?;
        for x in 0..g.vertex_count() {
            let usos = unique_sink_orientations(g, x)?;
            expect(&mut m, bases.len() == usos.len(), || {
                format!("{} NBC bases vs {} orientations with sink {x}", bases.len(), usos.len())
            });
            for &t in &bases {
                let a = mu_explicit(t, g, x, ord)?;
                let b = phi_recursive(t, g, x, ord)?;
                expect(&mut m, a == b, || format!("explicit and recursive differ on {t:#b} at {x}"));
                let back = psi_prime(&a, g, x, ord)?;
                expect(&mut m, back == t, || format!("psi'(phi'({t:#b})) = {back:#b}"));
            }
            for o in &usos {
                let t = psi_prime(o, g, x, ord)?;
                let again = mu_explicit(t, g, x, ord)?;
                expect(&mut m, &again == o, || format!("phi'(psi'(o)) != o at {x}"));
            }
        }
    }
    Ok(m)
}

fn bond_checks(gs: &[SimpleGraph], cfg: &VerifyConfig) -> Vec<CheckReport> {
    let seeded: Vec<(usize, &SimpleGraph)> = gs.iter().enumerate().collect();
    vec![
        run_check("bijection", &seeded, |(i, g)| {
            bijection_check(g, &edge_orders(g, cfg.edge_orders, cfg.seed.wrapping_add(*i as u64)))
        }),
        run_check("orientation-counts", gs, |g| {
            let c = orientation_counts_vs_chromatic(g)?;
            let mut m = Vec::new();
            expect(&mut m, c.total_matches_minus_one, || {
                format!("{} acyclic vs |P(-1)| = {}", c.acyclic_total, c.chromatic_at_minus_one_abs)
            });
            expect(&mut m, c.unique_sink_matches_linear, || {
                format!("unique-sink {:?} vs |[t]P| = {}", c.unique_sink, c.linear_coefficient_abs)
            });
            Ok(m)
        }),
        run_check("bond-lattice", gs, |g| {
            let mut m = Vec::new();
            let dc = chromatic_polynomial(g);
            let wh = chromatic_polynomial_whitney(g, &EdgeOrder::identity(g.edge_count()))?;
            expect(&mut m, dc == wh, || "Whitney and deletion-contraction differ".into());
            let l = build_bond_lattice(g);
            for b in 0..l.len() {
                let bad = down_set_product_mismatches(&l, b);
                expect(&mut m, bad.is_empty(), || format!("down-set of {} is not a product: {bad:?}", l.elements()[b]));
            }
            Ok(m)
        }),
        run_check("charpoly", gs, |g| {
            let det = charpoly_determinant_oracle(g);
            let hs = hs_characteristic_polynomial(g)?;
            let el = elementary_subgraph_formula(g)?;
            let mut m = Vec::new();
            expect(&mut m, hs == det, || format!("infragraph sum {:?} vs det {:?}", hs.coeffs(), det.coeffs()));
            expect(&mut m, el == det, || format!("elementary {:?} vs det {:?}", el.coeffs(), det.coeffs()));
            Ok(m)
        }),
    ]
}

fn veblen_checks(xs: &[Multigraph]) -> Vec<CheckReport> {
    vec![
        run_check("veblen-weight", xs, |x| {
            let v = VeblenMultigraph::new(x.clone())?;
            let mut m = Vec::new();
            let w = weight(&v, 1)?;
            for n in 2..=4 {
                expect(&mut m, weight(&v, n)? == w, || format!("weight changes with n = {n}"));
            }
            if decompositions(&v)?.len() > 1 {
                expect(&mut m, w.is_zero(), || format!("decomposable with weight {w}"));
            }
            for c in decomposition_classes(&v)? {
                let want = c.predicted_size(v.m_x());
                expect(&mut m, BigInt::from(c.size) == want, || format!("class size {} vs {want}", c.size));
            }
            Ok(m)
        }),
        run_check("associated-coefficient", xs, |x| {
            let v = VeblenMultigraph::new(x.clone())?;
            let mut m = Vec::new();
            let a = associated_coefficient(&v)?;
            let b = associated_coefficient_via_rootings(&v)?;
            expect(&mut m, a == b, || format!("circuits give {a}, rootings give {b}"));
            let direct = BigInt::from(undirected_circuit_count(x, x.all_edges()));
            expect(
                &mut m,
                &a * crate::Rational::from_integer(v.m_x().clone()) == crate::Rational::from_integer(direct),
                || "direct circuit count disagrees".into(),
            );
            for c in rooting_classes(&v)? {
                expect(&mut m, c.size_matches(), || {
                    format!("rooting class of size {} vs N/K = {}/{}", c.size, c.n_d, c.k_d)
                });
            }
            Ok(m)
        }),
    ]
}

pub fn run_verification_suite(cfg: &VerifyConfig) -> SuiteReport {
    let ds = eulerian_digraphs(cfg.max_digraph_edges);
    let gs = connected_simple_graphs_up_to(cfg.max_graph_vertices);
    let xs = veblen_multigraphs(cfg.max_veblen_edges);
    let mut checks = semilattice_checks(&ds, cfg.fault);
    checks.extend(circuit_checks(&ds));
    checks.extend(bond_checks(&gs, cfg));
    checks.extend(veblen_checks(&xs));
    SuiteReport {
        schema: SCHEMA_VERSION,
        config: cfg.clone(),
        fault_injected: cfg.fault != Fault::None,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
