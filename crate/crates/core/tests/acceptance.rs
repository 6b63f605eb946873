//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use higher_auslander::classify::{
    admissible_sets, count_wide_with, enumerate_collections, recognize_wide, subcategory_of, wide_closure,
    wide_closure_by, CountOptions,
};
use higher_auslander::linalg::PrimeField;
use higher_auslander::tuples::{
    cokernel_witness, e_ext, e_hom, generate_tuples, kernel_witness, sets_interlace, tuples_interlace,
    tuples_of_set, Context, IncTuple,
};
use higher_auslander::verify::{exactness_suite, formula_grid};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn count_within(n: u32, d: u32, expected: u64, limit: Duration) -> Result<f64, String> {
    let opts = CountOptions { budget: Some(limit), ..Default::default() };
    let start = Instant::now();
    let report = count_wide_with(n, d, &opts).map_err(|e| format!("w({n},{d}): {e}"))?;
    let secs = start.elapsed().as_secs_f64();
    if report.count != BigUint::from(expected) {
        return Err(format!("w({n},{d}) = {} but expected {expected}", report.count));
    }
    if start.elapsed() > limit {
        return Err(format!("w({n},{d}) took {secs:.1}s"));
    }
    Ok(secs)
}

fn table_values() -> Outcome {
    let mut cases: Vec<(u32, u32, u64)> = Vec::new();
    cases.extend((1..=7).map(|d| (1, d, 2)));
    cases.extend([5, 8, 12, 19, 30, 48, 77].into_iter().zip(1..).map(|(w, d)| (2, d, w)));
    cases.extend([2, 5, 14, 42, 132, 429, 1430, 4862].into_iter().zip(1..).map(|(w, n)| (n, 1, w)));
    cases.extend([(3, 2, 47), (4, 2, 374), (5, 2, 4083), (3, 3, 237), (3, 4, 1724)]);
    let mut slowest = 0.0f64;
    for (n, d, w) in &cases {
        slowest = slowest.max(count_within(*n, *d, *w, Duration::from_secs(60))?);
    }
    Ok(format!("{} values exact, slowest {slowest:.3}s (limit 60s each)", cases.len()))
}

fn stretch_values() -> Outcome {
    let limit = Duration::from_secs(15 * 60);
    let mut parts = Vec::new();
    for (n, d, w) in [(4, 3, 16830), (6, 2, 62824), (3, 5, 17934)] {
        parts.push(format!("w({n},{d})={w} in {:.3}s", count_within(n, d, w, limit)?));
    }
    Ok(parts.join(", "))
}

fn optional_values() -> Outcome {
    // Larger entries: must match exactly whenever they finish inside the budget.
    let limit = Duration::from_secs(15 * 60);
    let mut parts = Vec::new();
    for (n, d, w) in [
        (7, 2, 1_376_012),
        (8, 2, 42_579_642),
        (5, 3, 4_597_078),
        (3, 6, 273_092),
        (3, 7, 5_732_137),
        (4, 4, 3_499_884),
    ] {
        match count_within(n, d, w, limit) {
            Ok(secs) => parts.push(format!("w({n},{d}) in {secs:.2}s")),
            Err(e) if e.contains("budget") => parts.push(format!("w({n},{d}) not computed")),
            Err(e) => return Err(e),
        }
    }
    Ok(parts.join(", "))
}

const GRID: [(u32, u32); 4] = [(5, 1), (4, 2), (3, 3), (2, 4)];

fn formula_grids(check_intermediate: bool) -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for p in [2, 32003] {
        let field = PrimeField::new(p).unwrap();
        for (n, d) in GRID {
            let r = formula_grid(n, d, field).map_err(|e| e.to_string())?;
            pairs += r.pairs;
            if check_intermediate {
                if !r.intermediate_violations.is_empty() {
                    return Err(format!("p={p} ({n},{d}): {:?}", r.intermediate_violations));
                }
            } else if !r.hom_mismatches.is_empty() || !r.ext_mismatches.is_empty() {
                return Err(format!(
                    "p={p} ({n},{d}): hom {:?} ext {:?}",
                    r.hom_mismatches, r.ext_mismatches
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs > 300.0 {
        return Err(format!("took {secs:.1}s, limit 300s"));
    }
    Ok(format!("{pairs} ordered pairs over p in {{2, 32003}}, {secs:.2}s"))
}

fn exactness() -> Outcome {
    let field = PrimeField::new(32003).unwrap();
    let mut parts = Vec::new();
    for (n, d) in [(4, 2), (3, 3), (5, 1), (2, 4)] {
        let r = exactness_suite(n, d, field).map_err(|e| e.to_string())?;
        if !r.is_clean() {
            return Err(format!("({n},{d}): {:?}", r.failures));
        }
        parts.push(format!("({n},{d}): {} sequences, {} resolutions", r.sequences, r.resolutions));
    }
    Ok(parts.join("; "))
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let mut buf = Vec::new();
    let code =
        higher_auslander::cli::run(std::iter::once("higher-auslander").chain(args.iter().copied()), &mut buf);
    let text = String::from_utf8(buf).map_err(|e| e.to_string())?;
    if code != 0 {
        return Err(format!("{args:?} exited {code}"));
    }
    Ok(text)
}

fn worked_example() -> Outcome {
    let closure = run_cli(&["closure", "4", "2", "1,3,6", "2,4,6"])?;
    if closure != "{{1,2,3,4,6}}\n" {
        return Err(format!("closure printed {closure:?}"));
    }
    let expected = ["1,2,3", "1,2,4", "1,2,6", "1,3,4", "1,3,6", "1,4,6", "2,3,4", "2,3,6", "2,4,6", "3,4,6"];
    let ctx = Context::category(4, 2).unwrap();
    let c =
        wide_closure(ctx, &[IncTuple::parse(ctx, "1,3,6").unwrap(), IncTuple::parse(ctx, "2,4,6").unwrap()])
            .map_err(|e| e.to_string())?;
    let sub: Vec<String> =
        subcategory_of(&c).map_err(|e| e.to_string())?.iter().map(|x| x.to_string()).collect();
    if sub != expected {
        return Err(format!("subcategory {sub:?}"));
    }
    let mut args = vec!["recognize", "4", "2"];
    args.extend(expected);
    let recognized = run_cli(&args)?;
    if recognized != closure {
        return Err(format!("recognize printed {recognized:?}"));
    }
    Ok("closure {{1,2,3,4,6}} with its 10 indecomposables, recognized back".into())
}

fn bijection() -> Outcome {
    let collections: Vec<_> = enumerate_collections(3, 2, None).map_err(|e| e.to_string())?.collect();
    let unique: BTreeSet<_> = collections.iter().cloned().collect();
    if unique.len() != collections.len() {
        return Err("duplicate collections".into());
    }
    let mut subs = BTreeSet::new();
    for c in &collections {
        let sub = subcategory_of(c).map_err(|e| e.to_string())?;
        if recognize_wide(c.context(), &sub).map_err(|e| e.to_string())?.as_ref() != Some(c) {
            return Err(format!("round trip failed on {c}"));
        }
        subs.insert(sub);
    }
    let count = count_wide_with(3, 2, &CountOptions::default()).map_err(|e| e.to_string())?.count;
    if collections.len() != 47 || subs.len() != 47 || count != BigUint::from(47u32) {
        return Err(format!(
            "{} collections, {} subcategories, count {count}",
            collections.len(),
            subs.len()
        ));
    }
    Ok("47 collections, round trip identity, count agrees".into())
}

fn property_suite() -> Outcome {
    // Greedy set interlacing against brute force.
    let mut set_pairs = 0;
    for (n, d) in [(3, 1), (4, 1), (3, 2), (2, 3)] {
        let sets = admissible_sets(n, d).map_err(|e| e.to_string())?;
        for s in &sets {
            for t in &sets {
                let (xs, ys) = (tuples_of_set(s), tuples_of_set(t));
                let brute = xs.iter().any(|x| ys.iter().any(|y| tuples_interlace(x, y).unwrap()));
                if sets_interlace(s, t).unwrap() != brute {
                    return Err(format!("({n},{d}) {s} {t}"));
                }
                set_pairs += 1;
            }
        }
    }

    // Merge-order independence.
    let ctx = Context::category(4, 2).unwrap();
    let tuples = generate_tuples(ctx);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let orders = 200;
    for _ in 0..orders {
        let size = rng.random_range(2..=6);
        let picks: Vec<IncTuple> =
            (0..size).map(|_| tuples[rng.random_range(0..tuples.len())].clone()).collect();
        let reference = wide_closure(ctx, &picks).unwrap();
        let shuffled = wide_closure_by(ctx, &picks, |k| rng.random_range(0..k)).unwrap();
        if shuffled != reference {
            return Err(format!("merge order changed closure of {picks:?}"));
        }
    }

    // Witnesses and extension middle terms lie in the closure.
    let mut contained = 0;
    for (x, y) in tuples.iter().cartesian_product(&tuples) {
        let inside = || subcategory_of(&wide_closure(ctx, &[x.clone(), y.clone()]).unwrap()).unwrap();
        if e_hom(x, y).unwrap() {
            let sub = inside();
            let mut witnesses: Vec<IncTuple> =
                (1..=2).filter_map(|k| kernel_witness(x, y, k).unwrap()).collect();
            witnesses.extend((0..2).filter_map(|k| cokernel_witness(x, y, k).unwrap()));
            for w in witnesses {
                if !sub.contains(&w) {
                    return Err(format!("witness {w} of ({x}, {y}) outside the closure"));
                }
                contained += 1;
            }
        }
        if e_ext(x, y).unwrap() {
            let sub = inside();
            for bits in 0..8u32 {
                let e: Vec<u32> = (0..3)
                    .map(|i| if bits >> i & 1 == 1 { x.entries()[i] } else { y.entries()[i] })
                    .collect();
                if let Ok(z) = IncTuple::new(ctx, e) {
                    if !sub.contains(&z) {
                        return Err(format!("middle term {z} of ({x}, {y}) outside the closure"));
                    }
                    contained += 1;
                }
            }
        }
    }
    Ok(format!("{set_pairs} set pairs, {orders} merge orders, {contained} containments"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 table reproduction", table_values),
        ("2 stretch counts", stretch_values),
        ("2b larger table entries", optional_values),
        ("3 formula/oracle equivalence", || formula_grids(false)),
        ("4 intermediate Ext vanishing", || formula_grids(true)),
        ("5 exactness", exactness),
        ("6 worked example", worked_example),
        ("7 bijection round trip", bijection),
        ("8 property suite", property_suite),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
