//! Named verification suites. Each suite runs a family of exact checks over
//! a range of `n` and reports every instance it looked at.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::{gcd, lcm};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::composition::rot_census;
use crate::dynamics::{for_each_orbit, full_census, homomesy_check, CensusOptions, Indicator, OrbitCensus};
use crate::error::{Error, Result};
use crate::graph::{forest_code, nonisomorphic_trees, two_component_forests, Graph};
use crate::labeling::Labeling;
use crate::orientation::{AcyclicOrientation, Bijection};
use crate::promotion::{
    cyc_broken_word, permutoric_word, permutoric_word_from_orientation, phi_word, power_decomposition, power_word,
    remark_word, toric_word, tpro_beta_d_word, IndependentSet,
};
use crate::sieving::{broken_interval_poly, broken_r_poly, csp_verify, main_poly, CspReport};
use crate::stones::fence::fence_with_transversal;
use crate::stones::omega::omega_census;
use crate::stones::Timeline;
use crate::word::{first_disagreement, OperatorWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: Vec<usize>,
    /// Restrict to one `d`; `None` runs every admissible `d`.
    #[serde(default)]
    pub d: Option<usize>,
    /// Number of seed labelings to sample; `None` means all of them.
    #[serde(default)]
    pub seeds: Option<usize>,
    /// Random instances for suites that sample (homomesy).
    #[serde(default = "default_instances")]
    pub instances: usize,
    #[serde(default)]
    pub rng_seed: u64,
}

fn default_instances() -> usize {
    200
}

impl SuiteConfig {
    pub fn new(n: impl IntoIterator<Item = usize>) -> Self {
        Self { n: n.into_iter().collect(), d: None, seeds: None, instances: default_instances(), rng_seed: 0 }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    fn ds(&self, range: impl Iterator<Item = usize>) -> Vec<usize> {
        range.filter(|&d| self.d.is_none_or(|x| x == d)).collect()
    }

    /// Seed labelings of size `n`: all of them, or a deterministic sample.
    fn seed_labelings(&self, n: usize) -> Vec<Labeling> {
        match self.seeds {
            None => Labeling::all(n).collect(),
            Some(k) => {
                let mut rng = StdRng::seed_from_u64(self.rng_seed ^ n as u64);
                (0..k)
                    .map(|_| {
                        let mut img: Vec<usize> = (1..=n).collect();
                        img.shuffle(&mut rng);
                        Labeling::new(img).expect("shuffled identity")
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Instance {
    pub label: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub config: SuiteConfig,
    pub checked: usize,
    pub failed: usize,
    pub passed: bool,
    pub instances: Vec<Instance>,
}

impl SuiteReport {
    fn new(suite: &'static str, config: &SuiteConfig, instances: Vec<Instance>) -> Self {
        let failed = instances.iter().filter(|i| !i.passed).count();
        Self { suite, config: config.clone(), checked: instances.len(), failed, passed: failed == 0, instances }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|i| !i.passed)
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport>;
}

fn opts() -> CensusOptions {
    CensusOptions { parallel: true, ..CensusOptions::default() }
}

fn sizes_json(sizes: &BTreeMap<u64, u64>) -> Value {
    Value::Object(sizes.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn csp_json(r: &CspReport) -> Value {
    json!({ "omega": r.omega, "burnside": r.burnside, "mismatches": r.mismatches().map(|m| m.k).collect::<Vec<_>>() })
}

struct ThmToric;
struct ThmMain;
struct ThmBroken1d;
struct ThmBrokenR;
struct PropDivisibility;
struct PropHomomesy;
struct PropTproBro;
struct OmegaCounts;
struct FenceLaws;

impl Suite for ThmToric {
    fn name(&self) -> &'static str {
        "thm-toric"
    }
    fn summary(&self) -> &'static str {
        "TPro orbit sizes on trees (n-1) and two-component forests ((n-1)t/gcd(t,n))"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let w = toric_word(n)?;
            for g in nonisomorphic_trees(n) {
                let c = full_census(&g, &w, opts())?;
                let passed = c.sizes.keys().all(|&s| s == n as u64 - 1);
                out.push(Instance {
                    label: format!("tree n={n} {}", forest_code(&g)),
                    passed,
                    detail: json!({ "n": n, "edges": g.edges(), "sizes": sizes_json(&c.sizes) }),
                });
            }
            for g in two_component_forests(n) {
                let mut bad = 0usize;
                let mut sizes = BTreeMap::new();
                for_each_orbit(n, &|s: &mut Labeling| w.apply_in_place(s, &g), |orbit| {
                    *sizes.entry(orbit.len() as u64).or_insert(0u64) += 1;
                    for sigma in orbit {
                        let t = g.component_size(sigma.vertex_of(1));
                        if (n - 1) * t / gcd(t, n) != orbit.len() {
                            bad += 1;
                        }
                    }
                });
                out.push(Instance {
                    label: format!("forest n={n} {}", forest_code(&g)),
                    passed: bad == 0,
                    detail: json!({ "n": n, "edges": g.edges(), "sizes": sizes_json(&sizes), "violations": bad }),
                });
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

/// Order and sieving check for one operator.
fn order_and_csp(
    label: String,
    g: &Graph,
    w: &OperatorWord,
    order: u128,
    poly: &crate::qpoly::QPolynomial,
    extra: Value,
) -> Result<Instance> {
    let c = full_census(g, w, opts())?;
    let r = csp_verify(&c, poly);
    Ok(Instance {
        label,
        passed: c.order == order && r.passed,
        detail: json!({
            "word": w.to_string(),
            "expected_order": order as u64,
            "order": c.order as u64,
            "sizes": sizes_json(&c.sizes),
            "csp": csp_json(&r),
            "params": extra,
        }),
    })
}

impl Suite for ThmMain {
    fn name(&self) -> &'static str {
        "thm-main"
    }
    fn summary(&self) -> &'static str {
        "TPro_π has order d(n-d) and sieves with n(d-1)!(n-d-1)![n-d]_{q^d}[n-1 choose d-1]_q"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let g = Graph::path(n)?;
            let wanted = cfg.ds(1..n);
            let polys: BTreeMap<usize, _> = wanted.iter().map(|&d| Ok((d, main_poly(n, d)?))).collect::<Result<_>>()?;
            if n <= 6 {
                for pi in Bijection::all(n) {
                    let d = AcyclicOrientation::from_pi(&pi).d();
                    let Some(poly) = polys.get(&d) else { continue };
                    let w = permutoric_word(&pi);
                    let label = format!("n={n} pi={:?} d={d}", pi.values());
                    out.push(order_and_csp(label, &g, &w, (d * (n - d)) as u128, poly, json!({ "n": n, "d": d, "pi": pi.values() }))?);
                }
            } else {
                for &d in &wanted {
                    let beta = AcyclicOrientation::source_d_sink_n(n, d)?;
                    let w = permutoric_word_from_orientation(&beta);
                    let label = format!("n={n} d={d} beta=source-d-sink-n");
                    out.push(order_and_csp(label, &g, &w, (d * (n - d)) as u128, &polys[&d], json!({ "n": n, "d": d }))?);
                }
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

impl Suite for ThmBroken1d {
    fn name(&self) -> &'static str {
        "thm-broken-1d"
    }
    fn summary(&self) -> &'static str {
        "cyc Bro_{1..d} has order (n-d)n with its sieving polynomial"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let g = Graph::path(n)?;
            for d in cfg.ds(1..n) {
                let set: BTreeSet<usize> = (1..=d).collect();
                let w = cyc_broken_word(n, &set)?;
                let poly = broken_interval_poly(n, d)?;
                out.push(order_and_csp(format!("n={n} d={d}"), &g, &w, ((n - d) * n) as u128, &poly, json!({ "n": n, "d": d }))?);
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

impl Suite for ThmBrokenR {
    fn name(&self) -> &'static str {
        "thm-broken-R"
    }
    fn summary(&self) -> &'static str {
        "cyc Bro_R (canonical R) has order dn with its sieving polynomial"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let g = Graph::path(n)?;
            for d in cfg.ds(1..=n / 2) {
                let s = IndependentSet::canonical(n, d)?;
                let w = cyc_broken_word(n, &s.r_set())?;
                let poly = broken_r_poly(n, d)?;
                let extra = json!({ "n": n, "d": d, "S": s.elements(), "R": s.r_set() });
                out.push(order_and_csp(format!("n={n} d={d}"), &g, &w, (d * n) as u128, &poly, extra)?);
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

impl Suite for PropDivisibility {
    fn name(&self) -> &'static str {
        "prop-divisibility"
    }
    fn summary(&self) -> &'static str {
        "every TPro_β orbit size is divisible by lcm(d, n-d)"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let g = Graph::path(n)?;
            for d in cfg.ds(1..n) {
                let m = lcm(d, n - d) as u64;
                for beta in AcyclicOrientation::all_with_d(n, d) {
                    let c = full_census(&g, &permutoric_word_from_orientation(&beta), opts())?;
                    out.push(Instance {
                        label: format!("n={n} d={d} ccw={:?}", beta.ccw()),
                        passed: c.divisible_by(m),
                        detail: json!({ "n": n, "d": d, "ccw": beta.ccw(), "lcm": m, "sizes": sizes_json(&c.sizes) }),
                    });
                }
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

/// A connected graph: a random recursive tree plus extra random edges.
pub fn random_connected_graph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut edges: BTreeSet<(usize, usize)> = (2..=n).map(|v| (rng.gen_range(1..v), v)).collect();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.gen_bool(0.25) {
                edges.insert((a, b));
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("edges are in range")
}

/// One homomesy instance: orbit averages of `1_{v,i}` under `cyc Bro_B`.
pub fn homomesy_instance(g: &Graph, b: &BTreeSet<usize>, v: usize, i: usize) -> Result<Instance> {
    let n = g.n();
    let w = cyc_broken_word(n, b)?;
    let r = homomesy_check(g, &w, &Indicator { vertex: v, label: i }, Ratio::new(1, n as i64));
    let expected = Ratio::new(1, n as i64);
    let bad: Vec<&str> = r.averages.iter().filter(|a| a.value != expected).map(|a| a.average.as_str()).collect();
    Ok(Instance {
        label: format!("n={n} B={b:?} v={v} i={i}"),
        passed: r.homomesic,
        detail: json!({ "n": n, "edges": g.edges(), "B": b, "v": v, "i": i, "orbits": r.averages.len(), "off_averages": bad }),
    })
}

impl Suite for PropHomomesy {
    fn name(&self) -> &'static str {
        "prop-homomesy"
    }
    fn summary(&self) -> &'static str {
        "1_{v,i} has average 1/n on every cyc Bro_B orbit when G is connected and i-1 ∉ B"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let ns: Vec<usize> = cfg.n.iter().copied().filter(|&n| n >= 2).collect();
        if ns.is_empty() {
            return Ok(SuiteReport::new(self.name(), cfg, Vec::new()));
        }
        let mut rng = StdRng::seed_from_u64(cfg.rng_seed);
        let mut out = Vec::with_capacity(cfg.instances);
        for _ in 0..cfg.instances {
            let n = *ns.choose(&mut rng).expect("nonempty");
            let g = random_connected_graph(n, &mut rng);
            let b: BTreeSet<usize> = loop {
                let b: BTreeSet<usize> = (1..=n).filter(|_| rng.gen_bool(0.5)).collect();
                if b.len() < n {
                    break b;
                }
            };
            let allowed: Vec<usize> = (1..=n).filter(|&i| !b.contains(&(if i == 1 { n } else { i - 1 }))).collect();
            let i = *allowed.choose(&mut rng).expect("B is proper");
            let v = rng.gen_range(1..=n);
            out.push(homomesy_instance(&g, &b, v, i)?);
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

fn map_instance(label: String, n: usize, lhs: &OperatorWord, rhs: &OperatorWord, extra: Value) -> Result<Instance> {
    let g = Graph::path(n)?;
    let bad = first_disagreement(n, lhs.on(&g), rhs.on(&g));
    Ok(Instance {
        label,
        passed: bad.is_none(),
        detail: json!({ "n": n, "counterexample": bad, "params": extra }),
    })
}

impl Suite for PropTproBro {
    fn name(&self) -> &'static str {
        "prop-tpro-bro"
    }
    fn summary(&self) -> &'static str {
        "TPro_β^γ = cyc^{-q} Bro_J (cyc Bro_R)^q with |J| = r, plus the word identities for TPro_β^d and Φ"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            for d in cfg.ds(1..=n / 2) {
                let s = IndependentSet::canonical(n, d)?;
                let tpro = permutoric_word_from_orientation(&s.orientation());
                for gamma in 1..=2 * lcm(d, n - d) {
                    let pd = power_decomposition(&s, gamma);
                    let mut inst = map_instance(
                        format!("power n={n} d={d} gamma={gamma}"),
                        n,
                        &tpro.pow(gamma as i64),
                        &power_word(&s, &pd)?,
                        json!({ "d": d, "gamma": gamma, "q": pd.q, "r": pd.r, "J": pd.j }),
                    )?;
                    inst.passed &= pd.j.len() == pd.r;
                    out.push(inst);
                }
            }
            for d in cfg.ds(1..n) {
                let beta = permutoric_word_from_orientation(&AcyclicOrientation::source_d_sink_n(n, d)?);
                let power = beta.pow(d as i64);
                out.push(map_instance(format!("tpro-beta-d n={n} d={d}"), n, &tpro_beta_d_word(n, d)?, &power, json!({ "d": d }))?);
                out.push(map_instance(format!("remark n={n} d={d}"), n, &remark_word(n, d)?, &power, json!({ "d": d }))?);
                let phi = phi_word(n, d)?.pow((n / gcd(n, d)) as i64);
                let rhs = beta.pow(lcm(d, n - d) as i64);
                out.push(map_instance(format!("phi-power n={n} d={d}"), n, &phi, &rhs, json!({ "d": d }))?);
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

/// The TPro_β orbit-size multiset predicted from the rotation census:
/// `{((n-d) k_i)^{n (d-1)! (n-d-1)! m_i}}`.
pub fn predicted_tpro_sizes(n: usize, d: usize) -> BTreeMap<u64, u64> {
    let f = |k: usize| (1..=k).product::<usize>() as u64;
    let scale = n as u64 * f(d - 1) * f(n - d - 1);
    rot_census(n, d).sizes.iter().map(|(&k, &m)| ((n - d) as u64 * k, scale * m)).collect()
}

impl Suite for OmegaCounts {
    fn name(&self) -> &'static str {
        "omega-counts"
    }
    fn summary(&self) -> &'static str {
        "|Ω(O)| = (d/n)|O| and every rotation orbit has d!(n-d)! preimages; reconstructed TPro census"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let g = Graph::path(n)?;
            for d in cfg.ds(1..n) {
                let r = omega_census(n, d, cfg.seeds.is_none())?;
                let predicted = predicted_tpro_sizes(n, d);
                let beta = AcyclicOrientation::source_d_sink_n(n, d)?;
                let direct: OrbitCensus = full_census(&g, &permutoric_word_from_orientation(&beta), opts())?;
                let reconstructed = predicted == direct.sizes;
                out.push(Instance {
                    label: format!("n={n} d={d}"),
                    passed: r.passed() && reconstructed,
                    detail: json!({
                        "n": n,
                        "d": d,
                        "phi_orbits": r.orbits.len(),
                        "fibers": r.fibers,
                        "scaling": r.scaling,
                        "fibers_uniform": r.fibers_uniform,
                        "well_defined": r.well_defined,
                        "surjective": r.surjective,
                        "predicted_tpro_sizes": sizes_json(&predicted),
                        "direct_tpro_sizes": sizes_json(&direct.sizes),
                    }),
                });
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

/// Fence laws and energy rotation for one seed.
pub fn fence_instance(seed: &Labeling, d: usize) -> Result<Instance> {
    let n = seed.n();
    let mut tl = Timeline::new(seed.clone(), d)?;
    let (fence, tr) = fence_with_transversal(&mut tl)?;
    let diamond = fence.diamond_law();
    let half = fence.half_diamond_law();
    let timing = fence.half_diamond_timing();
    let mut transversals = 0usize;
    let mut rotation = true;
    for a in 0..fence.nodes.len() {
        if let Some(t) = fence.transversal_from(a) {
            if let Some(img) = fence.phi_of(&t) {
                transversals += 1;
                rotation &= img.energy == t.energy.rot();
            }
        }
    }
    Ok(Instance {
        label: format!("n={n} d={d} seed={:?}", seed.image()),
        passed: diamond && half && timing && rotation && transversals > 0,
        detail: json!({
            "n": n,
            "d": d,
            "seed": seed.image(),
            "period": fence.period,
            "nodes": fence.nodes.len(),
            "diamonds": fence.diamonds().len(),
            "half_diamonds": fence.half_diamonds().len(),
            "diamond_law": diamond,
            "half_diamond_law": half,
            "timing": timing,
            "transversals": transversals,
            "energy_rotates": rotation,
            "energy": tr.energy.to_string(),
        }),
    })
}

impl Suite for FenceLaws {
    fn name(&self) -> &'static str {
        "fence-laws"
    }
    fn summary(&self) -> &'static str {
        "diamond, half-diamond and m(n-d) timing laws on Hasse fences; E(φ(tr)) = Rot(E(tr))"
    }
    fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut out = Vec::new();
        for &n in cfg.n.iter().filter(|&&n| n >= 2) {
            let seeds = cfg.seed_labelings(n);
            for d in cfg.ds(1..n) {
                let batch: Vec<Result<Instance>> = {
                    use rayon::prelude::*;
                    seeds.par_iter().map(|s| fence_instance(s, d)).collect()
                };
                for inst in batch {
                    out.push(inst?);
                }
            }
        }
        Ok(SuiteReport::new(self.name(), cfg, out))
    }
}

static SUITES: [&dyn Suite; 9] = [
    &ThmToric,
    &ThmMain,
    &ThmBroken1d,
    &ThmBrokenR,
    &PropDivisibility,
    &PropHomomesy,
    &PropTproBro,
    &OmegaCounts,
    &FenceLaws,
];

pub fn suites() -> &'static [&'static dyn Suite] {
    &SUITES
}

pub fn lookup(name: &str) -> Result<&'static dyn Suite> {
    SUITES
        .iter()
        .copied()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Unknown { kind: "suite", name: name.to_string() })
}

pub fn run(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    lookup(name)?.run(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_distinct_suites() {
        let names: BTreeSet<&str> = suites().iter().map(|s| s.name()).collect();
        assert_eq!(names.len(), 9);
        assert!(matches!(lookup("thm-nope"), Err(Error::Unknown { .. })));
    }

    #[test]
    fn small_runs_pass() {
        for s in suites() {
            let mut cfg = SuiteConfig::new(2..=4);
            cfg.instances = 10;
            let r = s.run(&cfg).unwrap();
            assert!(r.checked > 0, "{} checked nothing", s.name());
            assert!(r.passed, "{}: {:?}", s.name(), r.failures().next());
        }
    }

    #[test]
    fn d_filter() {
        let r = run("thm-broken-1d", &SuiteConfig::new([5]).with_d(2)).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.passed);
    }

    #[test]
    fn predicted_census_for_five_two() {
        // Comp_2(5) has two rotation orbits of size 2, so TPro_β has 2*5*1*2 = 20 orbits of size 6
        assert_eq!(predicted_tpro_sizes(5, 2), BTreeMap::from([(6, 20)]));
    }
}
