use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use postlie_core::catalog::{self, Built, Suite, ENTRIES};
use postlie_core::combinat::{compositions, partitions, permutations};
use postlie_core::fdalgebra;
use postlie_core::freepostlie::{
    corolla_forest, corolla_multiplicity, corolla_star_expansion, enumerate_linearizations, is_primitive, l_of_x,
    star_power, EnvElt,
};
use postlie_core::pstruct::{self, FreeContext};
use postlie_core::report::{CheckRecord, CheckReport, Status, Witness};
use postlie_core::scalars::{is_prime, Field, EXACT_COUNT_PRIME};

use crate::file::{AlgebraFile, Source};
use crate::report::{print_json, records, RecordJson};
use crate::Failure;

pub struct Opts {
    pub json: bool,
    pub seed: u64,
}

fn input(msg: impl ToString) -> Failure {
    Failure::Input(msg.to_string())
}

fn verdict(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn load(path: &str) -> Result<Built, Failure> {
    AlgebraFile::read(path).and_then(|f| f.to_built()).map_err(input)
}

/// The suites behind `all`: the file's claims, or else every core suite
/// its tables allow.
fn all_suites(b: &Built) -> Vec<Suite> {
    if !b.claims.is_empty() {
        return b.claims.clone();
    }
    let a = &b.algebra;
    let mut s = vec![Suite::Lie];
    if a.pmap.is_some() {
        s.push(Suite::Restricted);
    }
    if a.postlie.is_some() {
        s.push(Suite::PostLie);
        if a.pmap.is_some() && a.p() <= fdalgebra::MAX_FD_PRIME {
            s.extend([Suite::TriviallyRestricted, Suite::RestrictedPostLie]);
        }
    }
    s
}

#[derive(Serialize)]
struct CheckJson<'a> {
    suites: Vec<&'static str>,
    seed: u64,
    passed: bool,
    records: Vec<RecordJson<'a>>,
}

pub fn check(opts: &Opts, path: &str, names: &[String]) -> Result<(), Failure> {
    let b = load(path)?;
    let mut suites = Vec::new();
    for n in names {
        if n == "all" {
            suites.extend(all_suites(&b));
        } else {
            suites.push(Suite::parse(n).ok_or_else(|| input(format!("unknown suite {n:?}")))?);
        }
    }
    suites.dedup();
    if suites.contains(&Suite::QuasiShuffle) && b.quasi_shuffle.is_none() {
        return Err(input("the quasi-shuffle suite needs a quasi-shuffle source entry"));
    }
    let r = catalog::run_suites(&b.algebra, &suites, &b, opts.seed).map_err(input)?;
    if opts.json {
        print_json(&CheckJson {
            suites: suites.iter().map(|s| s.name()).collect(),
            seed: opts.seed,
            passed: r.passed(),
            records: records(&r),
        });
    } else {
        let names: Vec<_> = suites.iter().map(|s| s.name()).collect();
        print!("{r}");
        println!("{}: {}", names.join(", "), if r.passed() { "PASS" } else { "FAIL" });
    }
    verdict(r.passed())
}

#[derive(Serialize)]
struct SubJson<'a> {
    bracket: Vec<(String, String, String)>,
    pmap: Vec<(String, String)>,
    restricted: bool,
    records: Vec<RecordJson<'a>>,
}

pub fn subadjacent(opts: &Opts, path: &str) -> Result<(), Failure> {
    let b = load(path)?;
    let a = &b.algebra;
    let s = fdalgebra::sub_adjacent(a).map_err(input)?;
    let r = fdalgebra::sub_adjacent_restricted_check(a, opts.seed).map_err(input)?;
    let mut bracket = Vec::new();
    for i in 0..a.dim {
        for j in i + 1..a.dim {
            bracket.push((a.names[i].clone(), a.names[j].clone(), s.fmt(&s.bracket[i][j])));
        }
    }
    let pm = s.pmap.as_ref().expect("set for every basis vector");
    let pmap: Vec<_> = (0..a.dim).map(|i| (a.names[i].clone(), s.fmt(&pm[i]))).collect();
    if opts.json {
        print_json(&SubJson { bracket, pmap, restricted: r.passed(), records: records(&r) });
    } else {
        let p = a.p();
        for (x, y, v) in &bracket {
            println!("⟦{x},{y}⟧ = {v}");
        }
        for (x, v) in &pmap {
            println!("{x}^[{p}]▶ = {v}");
        }
        print!("{r}");
        println!("sub-adjacent algebra restricted: {}", if r.passed() { "yes" } else { "no" });
    }
    verdict(r.passed())
}

fn record(axiom: &str, instances: u64, failure: Option<Witness>) -> CheckRecord {
    CheckRecord {
        axiom: axiom.into(),
        status: if failure.is_some() { Status::Fail } else { Status::Pass },
        instances,
        witness: failure,
        seed: None,
    }
}

fn mismatch(inputs: String, lhs: impl ToString, rhs: impl ToString) -> Witness {
    Witness { inputs: vec![inputs], lhs: lhs.to_string(), rhs: rhs.to_string() }
}

#[derive(Serialize)]
struct FreeJson<'a> {
    p: u32,
    passed: bool,
    records: Vec<RecordJson<'a>>,
}

pub fn free_verify(opts: &Opts, p: u32) -> Result<(), Failure> {
    if ![2, 3, 5].contains(&p) {
        return Err(input(format!("free-verify supports p = 2, 3, 5, got {p}")));
    }
    let f = Field::prime(p);
    let mut r = CheckReport::new();
    let mut times = Vec::new();

    let t = Instant::now();
    let lhs = l_of_x(f).map_err(input)?;
    let rhs = pstruct::l_closed_form(&FreeContext { field: f }, &EnvElt::x(f)).map_err(input)?;
    r.push(record("free.l_of_x", 1, (lhs != rhs).then(|| mismatch(format!("p={p}"), &lhs, &rhs))));
    r.push(record("free.l_primitive", 1, (!is_primitive(&lhs)).then(|| mismatch(format!("p={p}"), &lhs, "primitive"))));
    times.push(t.elapsed());

    let t = Instant::now();
    let exact = Field::prime(EXACT_COUNT_PRIME);
    let mut bad = None;
    let mut count = 0;
    for n in 1..=p {
        let iterated = star_power(&EnvElt::x(exact), n);
        let reduced = star_power(&EnvElt::x(f), n);
        for c in compositions(n) {
            count += 1;
            let forest = corolla_forest(&c);
            let closed = corolla_multiplicity(&c);
            let lin = enumerate_linearizations(&forest).map_err(input)?.len() as u64;
            let star = iterated.coeff(&forest);
            if bad.is_none() && (star != exact.from_int(closed as i64) || lin != closed) {
                bad = Some(mismatch(format!("n={n} {forest}"), format!("{star:?}"), format!("{closed} / {lin}")));
            }
        }
        let expansion = corolla_star_expansion(n, f).map_err(input)?;
        if bad.is_none() && reduced != expansion {
            bad = Some(mismatch(format!("n={n}"), &reduced, &expansion));
        }
    }
    r.push(record("free.bullet_star_power", count, bad));
    times.push(t.elapsed());

    let t = Instant::now();
    let ctx = FreeContext { field: f };
    let x = EnvElt::x(f);
    let e = pstruct::expansion_theorem(&ctx, &x).map_err(input)?;
    let s = pstruct::sub_adjacent_pmap(&ctx, &x).map_err(input)?;
    r.push(record("free.expansion", 1, (e != s).then(|| mismatch(format!("p={p}"), &e, &s))));
    times.push(t.elapsed());

    if opts.json {
        print_json(&FreeJson { p, passed: r.passed(), records: records(&r) });
    } else {
        print!("{r}");
        let labels = ["L(x) and primitivity", "•^⋆n three-way", "expansion"];
        for (l, d) in labels.iter().zip(&times) {
            println!("time {l}: {:.3} s", d.as_secs_f64());
        }
        println!("free p={p}: {}", if r.passed() { "PASS" } else { "FAIL" });
    }
    verdict(r.passed())
}

/// Permutations β fed to the Friedrich sums: all of them up to 6 parts,
/// otherwise a seeded sample of 20.
fn betas(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if n <= 6 {
        return permutations(n);
    }
    (0..20)
        .map(|_| {
            let mut b: Vec<usize> = (0..n).collect();
            b.shuffle(rng);
            b
        })
        .collect()
}

#[derive(Serialize)]
struct CoeffsJson<'a> {
    p: u32,
    c: Vec<(Vec<u32>, String)>,
    hooks: Vec<(Vec<u32>, String)>,
    passed: bool,
    records: Vec<RecordJson<'a>>,
}

pub fn coeffs(opts: &Opts, p: u32) -> Result<(), Failure> {
    if !is_prime(p) || p > 11 {
        return Err(input(format!("coeffs needs a prime p ≤ 11, got {p}")));
    }
    let f = Field::prime(p);
    let c: Vec<_> = compositions(p).into_iter().map(|l| {
        let v = f.fmt_scalar(pstruct::coefficient_c(&l, f));
        (l, v)
    }).collect();

    let mut r = CheckReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut count = 0;
    let mut bad = None;
    for lam in partitions(p).into_iter().filter(|l| l.len() >= 2) {
        let n = lam.len();
        for beta in betas(n, &mut rng) {
            for s in 1..n {
                for reversed in [false, true] {
                    count += 1;
                    let v = pstruct::friedrich_sum(&lam, s, &beta, reversed, f).map_err(input)?;
                    if bad.is_none() && !v.is_zero() {
                        let at = format!("λ={lam:?} s={s} β={beta:?} reversed={reversed}");
                        bad = Some(mismatch(at, f.fmt_scalar(v), "0"));
                    }
                }
            }
        }
    }
    r.push(CheckRecord { seed: (p >= 7).then_some(opts.seed), ..record("coeffs.friedrich", count, bad) });

    // hook forms live in the free Lie algebra on p + 1 letters; beyond
    // p = 7 only the coefficient tables are produced
    let mut hooks = Vec::new();
    if p <= 7 {
        let mut bad = None;
        for n in 1..=p {
            let lam = pstruct::hook_partition(p, n);
            let value = pstruct::p_lambda(&lam, f);
            let closed = pstruct::hook_closed_form(n, f).map_err(input)?;
            if bad.is_none() && value != closed {
                bad = Some(mismatch(format!("λ={lam:?}"), &value, &closed));
            }
            hooks.push((lam, value.to_string()));
        }
        r.push(record("coeffs.hook", p as u64, bad));
    }

    if opts.json {
        print_json(&CoeffsJson { p, c, hooks, passed: r.passed(), records: records(&r) });
    } else {
        for (l, v) in &c {
            println!("C({}) = {v}", join(l));
        }
        for (l, v) in &hooks {
            println!("P({}) = {v}", join(l));
        }
        print!("{r}");
        println!("coeffs p={p}: {}", if r.passed() { "PASS" } else { "FAIL" });
    }
    verdict(r.passed())
}

fn join(l: &[u32]) -> String {
    l.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct EntryJson {
    name: &'static str,
    params: &'static [&'static str],
    field: &'static str,
    summary: &'static str,
    claims: Vec<&'static str>,
}

pub fn catalog_list(opts: &Opts) -> Result<(), Failure> {
    if opts.json {
        let v: Vec<_> = ENTRIES
            .iter()
            .map(|e| EntryJson {
                name: e.name,
                params: e.params,
                field: e.field,
                summary: e.summary,
                claims: e.claims.iter().map(|s| s.name()).collect(),
            })
            .collect();
        print_json(&v);
    } else {
        for e in ENTRIES {
            println!("{:<22} [{}] over {}: {}", e.name, e.params.join(", "), e.field, e.summary);
        }
    }
    Ok(())
}

fn parse_params(s: &str) -> Result<Vec<i64>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| input(format!("bad parameter {t:?}")))).collect()
}

pub fn catalog_build(name: &str, params: &str, out: Option<&str>) -> Result<(), Failure> {
    let params = parse_params(params)?;
    let b = catalog::catalog_build_full(name, &params).map_err(input)?;
    let source = Source { entry: name.into(), params };
    let text = AlgebraFile::from_built(&b, Some(source)).to_json();
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| input(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
