//! The experiment catalog behind the `verba` command.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde_json::json;

use crate::bounds::{nu_recursive, BetaOracle, BoundFunction, EmpiricalBeta, StubBeta};
use crate::census::{all_subgroups, count_normal_of_index};
use crate::error::{Error, Result};
use crate::group::{
    center, cyclic, derived_subgroup, dihedral, direct_product, is_elementary_abelian, is_nilpotent, is_semisimple,
    prime_factors, quaternion, quotient, symmetric, alternating, GroupHandle,
};
use crate::height::{height, verify_height_chain};
use crate::holt::{holt_k_group, holt_symbolic, holt_width_lower_bound, least_cover_exponent, sl2_element, sl2_group, sl2_order, HoltParams};
use crate::pgroup::{
    all_elements_are_mth_powers, alternating_rank_width, block_commutator_witness, exact_commutator_width,
    free_class2_group, mp_witness_params, FreeClass2,
};
use crate::report::ExperimentReport;
use crate::simple_table::SimpleExponentTable;
use crate::spec::GroupSpec;
use crate::word::{check_translation_invariance, parse_word, word_width, Word, INVARIANCE_SAMPLES};

pub const CATALOG: &[&str] = &[
    "holt-perfect",
    "holt-width",
    "width-grid-r12",
    "sl2-power-width",
    "mp-width",
    "mp-powers",
    "census",
    "height",
    "nu-bound",
    "perfect-no-prime-index",
];

/// Experiment parameters as `key -> text`, parsed on demand.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.values.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.values.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidInput(format!("unexpected parameter --{k} (accepted: {})", keys.join(", ")))),
            None => Ok(()),
        }
    }

    fn get<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Error::InvalidInput(format!("--{key}: cannot parse {v:?}"))),
        }
    }

    /// `a,b,c` or an inclusive range `a..b`.
    fn list(&self, key: &str, default: &[u64]) -> Result<Vec<u64>> {
        let Some(v) = self.values.get(key) else { return Ok(default.to_vec()) };
        let bad = || Error::InvalidInput(format!("--{key}: expected a list or range, got {v:?}"));
        if let Some((a, b)) = v.split_once("..") {
            let (a, b): (u64, u64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b || b - a > 100_000 {
                return Err(bad());
            }
            return Ok((a..=b).collect());
        }
        v.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
    }

    fn group(&self, default: Option<&str>) -> Result<GroupSpec> {
        match (self.values.get("group"), default) {
            (Some(text), _) => GroupSpec::load(text),
            (None, Some(text)) => GroupSpec::load(text),
            (None, None) => Err(Error::InvalidInput("--group is required".into())),
        }
    }
}

/// Runs a catalog experiment.
pub fn run_experiment(id: &str, params: &Params, seed: u64) -> Result<ExperimentReport> {
    let mut r = ExperimentReport::new(id, seed);
    match id {
        "holt-perfect" => holt_perfect(params, &mut r)?,
        "holt-width" => holt_width(params, seed, &mut r)?,
        "width-grid-r12" => width_grid(params, &mut r)?,
        "sl2-power-width" => sl2_power_width(params, &mut r)?,
        "mp-width" => mp_width(params, &mut r)?,
        "mp-powers" => mp_powers(params, &mut r)?,
        "census" => census(params, &mut r)?,
        "height" => height_experiment(params, &mut r)?,
        "nu-bound" | "nu" => nu_bound(params, &mut r)?,
        "perfect-no-prime-index" => perfect_no_prime_index(params, &mut r)?,
        other => return Err(Error::InvalidInput(format!("unknown experiment {other:?}; known: {}", CATALOG.join(", ")))),
    }
    Ok(r)
}

fn holt_params(p: &Params, r: &mut ExperimentReport) -> Result<HoltParams> {
    let q: u64 = p.get("q", 5)?;
    let rr: u32 = p.get("r", 1)?;
    r.input("q", q);
    r.input("r", rr);
    HoltParams::new(q, rr)
}

fn holt_perfect(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["q", "r"])?;
    let params = holt_params(p, r)?;
    let k = holt_k_group(&params)?;
    let sym = holt_symbolic(&params)?;
    let g = &k.group;
    let order = g.order() as u64;
    r.output("order", order);
    r.output("order_n", k.n.count());
    r.output("order_p", k.p.count());
    r.check(
        "order",
        BigUint::from(order) == sym.order_k && order == sl2_order(params.q) * k.p.count() as u64,
        format!("|K| = {order} = |SL2({})| * |P| = {} * {}", params.q, sl2_order(params.q), k.p.count()),
    );
    let perfect = derived_subgroup(g).is_full();
    r.output("perfect", perfect);
    r.check("perfect", perfect, "derived subgroup equals K");
    let central = k.n.is_subset(&center(g));
    r.check("n_central", central, "N lies in the center of K");
    let n_order = BigUint::from(k.n.count());
    r.check(
        "n_elementary_abelian",
        is_elementary_abelian(g, &k.n) && n_order == sym.order_n,
        format!("|N| = {n_order} = q^(r(r+1)/2)"),
    );
    let kp = quotient(g, &k.p)?.group.order() as u64;
    r.output("order_k_mod_p", kp);
    r.check("quotient_by_p", kp == sl2_order(params.q), format!("|K/P| = {kp}"));
    Ok(())
}

fn holt_width(p: &Params, seed: u64, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["q", "r", "samples"])?;
    let params = holt_params(p, r)?;
    let samples: usize = p.get("samples", INVARIANCE_SAMPLES)?;
    r.input("samples", samples);
    let k = holt_k_group(&params)?;
    let g = &k.group;
    let char_p = crate::field::prime_power(params.q).expect("validated").0;
    let w = Word::commutator_times_power(char_p as i64);
    r.input("word", w.to_string());
    let width = word_width(g, &w)?;
    r.output("width", &width);
    r.check("verbal_subgroup_is_k", width.subgroup_order == g.order(), format!("|w(K)| = {}", width.subgroup_order));
    let inv = check_translation_invariance(g, &w, &k.n, samples, seed)?;
    r.output("invariance", &inv);
    r.check(
        "n_invariance",
        inv.violations == 0,
        format!("{} argument tuples x {} N-tuples, {} violations", inv.argument_tuples, inv.translations_per_tuple, inv.violations),
    );
    let counting = least_cover_exponent(
        &BigUint::from(g.order() / k.n.count()),
        w.arity() as u32,
        &BigUint::from(width.subgroup_order),
    )
    .expect("K/N is nontrivial");
    let symbolic = holt_width_lower_bound(&params, 3)?;
    r.output("counting_lower_bound", counting);
    r.output("holt_lower_bound", symbolic);
    r.check(
        "counting_bound_le_width",
        inv.violations == 0 && counting as usize <= width.width,
        format!("{counting} <= {}", width.width),
    );
    r.check("symbolic_bound_le_width", symbolic as usize <= width.width, format!("{symbolic} <= {}", width.width));
    Ok(())
}

fn width_grid(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["q", "r"])?;
    let qs = p.list("q", &[5, 7, 9, 11, 13])?;
    let rs = p.list("r", &(1..=50).collect::<Vec<_>>())?;
    r.input("q", &qs);
    r.input("r", &rs);
    let mut grid = BTreeMap::new();
    for &q in &qs {
        let mut row = Vec::with_capacity(rs.len());
        let mut bad = Vec::new();
        for &rr in &rs {
            let f = holt_width_lower_bound(&HoltParams::new(q, rr as u32)?, 3)?;
            if 12 * f <= rr {
                bad.push(rr);
            }
            row.push(f);
        }
        r.check(format!("q={q}: 12f > r"), bad.is_empty(), format!("{} cells, failing r: {bad:?}", rs.len()));
        grid.insert(q.to_string(), row);
    }
    r.output("least_f", grid);
    Ok(())
}

fn sl2_power_width(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["q", "m"])?;
    let q: u64 = p.get("q", 5)?;
    let ms = p.list("m", &[2, 3, 4, 6, 7, 11])?;
    r.input("q", q);
    r.input("m", &ms);
    let g = sl2_group(q)?;
    let order = g.order() as u64;
    let mut widths = BTreeMap::new();
    for &m in &ms {
        let rep = word_width(&g, &Word::power(Word::Var(1), m as i64))?;
        if m.gcd(&order) == 1 {
            r.check(
                format!("m={m}: coprime power map is onto"),
                rep.width == 1 && rep.value_count == g.order(),
                format!("width {}, |G_w| = {}", rep.width, rep.value_count),
            );
        } else {
            r.check(format!("m={m}: width <= 4"), rep.width <= 4, format!("width {}", rep.width));
        }
        widths.insert(m.to_string(), rep);
    }
    r.output("widths", widths);
    if q % 2 == 1 {
        let s = sl2_element(&g, q, [0, 1, -1, 0])?;
        let minus_one = sl2_element(&g, q, [-1, 0, 0, -1])?;
        r.check("minus_one_is_a_square", g.mul(s, s) == minus_one, "[[0,1],[-1,0]]^2 = -I");
    }
    Ok(())
}

fn mp_width(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["p", "d"])?;
    let prime: u64 = p.get("p", 3)?;
    let ds = p.list("d", &[2, 3, 4])?;
    r.input("p", prime);
    r.input("d", &ds);
    let comm = parse_word("[x1,x2]")?;
    let mut rows = BTreeMap::new();
    for &d in &ds {
        let oracle = exact_commutator_width(d as usize, prime)?;
        let bfs = match free_class2_group(d as usize, prime) {
            Ok(g) => Some(word_width(&g, &comm)?.width),
            Err(e) if e.is_resource() => None,
            Err(e) => return Err(e),
        };
        match bfs {
            Some(b) => r.check(format!("d={d}: bfs = rank oracle"), b == oracle && oracle == d as usize / 2, format!("bfs {b}, oracle {oracle}")),
            None => r.check(format!("d={d}: rank oracle"), oracle == d as usize / 2, format!("oracle {oracle}, too large for bfs")),
        };
        rows.insert(d.to_string(), json!({ "oracle_width": oracle, "bfs_width": bfs }));
    }
    r.output("widths", rows);
    let (d, expected) = mp_witness_params(prime)?;
    let w = FreeClass2::new(d, prime)?;
    let witness = block_commutator_witness(&w);
    let witness_width = alternating_rank_width(&w, &witness)?;
    r.output(
        "witness",
        json!({
            "d": d,
            "p": prime,
            "rank": 2 * witness_width,
            "width": witness_width,
            "certification": "oracle-certified, not BFS-certified",
        }),
    );
    r.check(
        "witness width exceeds p",
        witness_width == expected && witness_width as u64 > prime,
        format!("W({d},{prime}) witness of rank {} needs {witness_width} commutators", 2 * witness_width),
    );
    Ok(())
}

fn mp_powers(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["p", "m", "d"])?;
    let primes = p.list("p", &[3, 5])?;
    let ms = p.list("m", &(1..=10).collect::<Vec<_>>())?;
    let d: usize = p.get("d", 2)?;
    r.input("p", &primes);
    r.input("m", &ms);
    r.input("d", d);
    let mut table = BTreeMap::new();
    for &prime in &primes {
        let g = free_class2_group(d, prime)?;
        let surj: Vec<bool> = ms.iter().map(|&m| all_elements_are_mth_powers(&g, m as i64)).collect();
        let bad: Vec<u64> =
            ms.iter().zip(&surj).filter(|(&m, &s)| s != (m.gcd(&prime) == 1)).map(|(&m, _)| m).collect();
        r.check(format!("p={prime}: onto iff gcd(m,p)=1"), bad.is_empty(), format!("mismatched m: {bad:?}"));
        table.insert(prime.to_string(), surj);
    }
    r.output("surjective", table);
    Ok(())
}

fn census(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["group", "max-index"])?;
    let spec = p.group(None)?;
    let max_index: u64 = p.get("max-index", 10)?;
    r.input("group", spec.to_json());
    r.input("max-index", max_index);
    let g = spec.build()?;
    let lat = all_subgroups(&g)?;
    let counts: BTreeMap<u64, u64> = lat.counts_by_index().into_iter().filter(|(i, _)| *i <= max_index).collect();
    let s_n: Vec<u64> = (1..=max_index).map(|n| lat.s_n(n)).collect();
    r.output("counts", counts.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>());
    r.output("s_n", &s_n);
    r.output("total", lat.total());
    r.check("s_1 = 1", s_n.first().is_none_or(|&s| s == 1), "only G has index 1");
    r.check("s_n nondecreasing", s_n.windows(2).all(|w| w[0] <= w[1]), "");
    r.check(
        "lagrange",
        lat.subgroups.iter().all(|s| g.order() % s.count() == 0),
        "every subgroup order divides |G|",
    );
    r.check(
        "contains trivial and whole group",
        lat.subgroups.first() == Some(&g.trivial_set()) && lat.subgroups.last() == Some(&g.full_set()),
        "",
    );
    Ok(())
}

fn height_experiment(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["group"])?;
    let spec = p.group(None)?;
    r.input("group", spec.to_json());
    let g = spec.build()?;
    let cert = height(&g)?;
    r.output("height", cert.height);
    r.output("chain_orders", cert.chain_orders());
    r.output("factor_labels", &cert.factor_labels);
    r.check("certificate chain verified", verify_height_chain(&g, &cert)?, "normal in G, labelled factors");
    let one_layer = is_nilpotent(&g) || is_semisimple(&g);
    r.check(
        "height 1 iff nilpotent or semisimple",
        (cert.height == 1) == one_layer || g.order() == 1,
        format!("height {}, single layer {one_layer}", cert.height),
    );
    Ok(())
}

/// Small groups whose prime-power subgroups feed the empirical β oracle.
pub fn corpus() -> Result<Vec<GroupHandle>> {
    let c3 = cyclic(3)?;
    Ok(vec![
        symmetric(3)?,
        symmetric(4)?,
        dihedral(8)?,
        quaternion()?,
        cyclic(12)?,
        alternating(4)?,
        direct_product(&c3, &c3)?,
        alternating(5)?,
        symmetric(5)?,
        sl2_group(5)?,
        free_class2_group(2, 3)?,
    ])
}

fn nu_bound(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["m", "q", "f", "beta"])?;
    let m: u64 = p.get("m", 6)?;
    let q: u32 = p.get("q", 2)?;
    let f: BoundFunction = p.get("f", BoundFunction::linear(1))?;
    let beta_name: String = p.get("beta", "stub".to_string())?;
    r.input("m", m);
    r.input("q", q);
    r.input("f", f.to_string());
    r.input("beta", &beta_name);
    let beta: Box<dyn BetaOracle> = match beta_name.as_str() {
        "stub" => Box::new(StubBeta),
        "empirical" => Box::new(EmpiricalBeta::from_groups(&corpus()?)?),
        other => return Err(Error::InvalidInput(format!("unknown beta oracle {other:?} (stub, empirical)"))),
    };
    let table = SimpleExponentTable::standard();
    let trace = nu_recursive(m, q, &f, beta.as_ref(), &table)?;
    let product = trace.levels.iter().fold(BigUint::one(), |acc, l| acc * &l.nu1);
    r.check("trace recomposes", product == trace.result, "product of per-level nu1 equals result");
    if q > 1 {
        let prev = nu_recursive(m, q - 1, &f, beta.as_ref(), &table)?;
        r.check("nondecreasing in q", prev.result <= trace.result, format!("nu_{} <= nu_{q}", q - 1));
    }
    if (m, q, f.to_string().as_str(), beta_name.as_str()) == (6, 2, "n", "stub") {
        let golden = BigUint::from(6u32).pow(26);
        r.check("golden value", trace.result == golden, format!("expected 6^26 = {golden}"));
    }
    r.output("trace", &trace);
    Ok(())
}

fn perfect_no_prime_index(p: &Params, r: &mut ExperimentReport) -> Result<()> {
    p.allow(&["group"])?;
    let spec = p.group(Some(r#"{"type":"holt_k","q":5,"r":1}"#))?;
    r.input("group", spec.to_json());
    let g = spec.build()?;
    let perfect = derived_subgroup(&g).is_full();
    r.output("perfect", perfect);
    let mut counts = BTreeMap::new();
    for (prime, _) in prime_factors(g.order() as u64) {
        counts.insert(prime.to_string(), count_normal_of_index(&g, prime));
    }
    let all_zero = counts.values().all(|&c| c == 0);
    r.output("normal_subgroups_of_prime_index", &counts);
    r.check("perfect implies no prime index", !perfect || all_zero, format!("perfect {perfect}, counts {counts:?}"));
    Ok(())
}
