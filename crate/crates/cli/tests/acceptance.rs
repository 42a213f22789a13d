//! Acceptance criteria 1 to 10. Each test prints one line,
//! `[PASS]` or `[FAIL]`, naming the criterion and every failed check.
//!
//! Run with `cargo test -p braidfan-cli --test acceptance -- --nocapture --test-threads=1`.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use braidfan_core::fixtures;
use braidfan_core::oracle::{all_tree_posets, enumerate_coarsenings};
use braidfan_core::{
    braid_fan, factor_to_braid, is_complete_coarsening, is_smooth, is_unimodular_extendable,
    preposet_of_rays, rays_of, star_subdivide_rays, sum_vectors, validate_fan, verify_step,
    Coverage, FactorOptions, FactorizationTrace, Fan, LatticeVector, Preposet,
};

const EXACT_SMALL: Duration = Duration::from_millis(1);
const P2_BUDGET: Duration = Duration::from_millis(10);
const MERGED_BUDGET: Duration = Duration::from_millis(100);
const CORPUS_BUDGET: Duration = Duration::from_secs(1);
const TREE_SWEEP_BUDGET: Duration = Duration::from_secs(60);
/// Best-of runs for the sub-millisecond criteria.
const REPEATS: usize = 5;

struct Verdict {
    id: u32,
    title: &'static str,
    failed: Vec<String>,
}

impl Verdict {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            failed: Vec::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.check(
            format!("took {elapsed:?}, limit {limit:?}"),
            elapsed < limit,
        );
    }

    fn finish(self) {
        if self.failed.is_empty() {
            println!("[PASS] criterion {}: {}", self.id, self.title);
        } else {
            println!(
                "[FAIL] criterion {}: {} ({})",
                self.id,
                self.title,
                self.failed.join("; ")
            );
            panic!("criterion {} failed: {}", self.id, self.failed.join("; "));
        }
    }
}

fn best_of<T>(mut f: impl FnMut() -> T) -> (T, Duration) {
    let mut best = Duration::MAX;
    let mut out = None;
    for _ in 0..REPEATS {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed());
        out = Some(v);
    }
    (out.expect("REPEATS > 0"), best)
}

fn e(n: usize, a: &[usize]) -> LatticeVector {
    LatticeVector::indicator(n, a).unwrap()
}

fn pp(n: usize, rels: &[(usize, usize)]) -> Preposet {
    Preposet::from_relations(n, rels.iter().copied()).unwrap()
}

/// Every step of `trace` matches the ray-level star subdivision of the
/// previous fan.
fn steps_agree(trace: &FactorizationTrace) -> bool {
    let mut before = &trace.initial;
    for step in &trace.steps {
        let by_rays = star_subdivide_rays(before, &step.center.tau).unwrap();
        if by_rays.new_ray != step.new_ray
            || !matches!(by_rays.to_fan(), Some(Ok(ref f)) if f == &step.result)
        {
            return false;
        }
        before = &step.result;
    }
    true
}

/// `|det|` of the chart matrix by fraction-free elimination in `i128`.
fn abs_det(rows: &[Vec<i64>]) -> i128 {
    let m = rows.len();
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..m {
        let Some(p) = (k..m).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    (sign * a[m - 1][m - 1]).abs()
}

#[test]
fn criterion_01_braid_fan_three() {
    let mut v = Verdict::new(1, "B(3) has the 6 linear orders as cones and rays e_A");
    let (fan, elapsed) = best_of(|| braid_fan(3).unwrap());
    let orders: BTreeSet<Preposet> = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ]
    .iter()
    .map(|o| Preposet::chain(o).unwrap())
    .collect();
    let labels: BTreeSet<Preposet> = fan.labels().cloned().collect();
    v.check("6 maximal cones", fan.maximal().len() == 6);
    v.check("cones are the linear orders", labels == orders);
    let rays: BTreeSet<_> = [&[1][..], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]
        .iter()
        .map(|a| e(3, a))
        .collect();
    v.check(
        "ray set {e_1, e_2, e_3, e_12, e_13, e_23}",
        fan.ray_set() == rays,
    );
    v.within(elapsed, EXACT_SMALL);
    v.finish();
}

#[test]
fn criterion_02_contractions_of_tree_poset() {
    let mut v = Verdict::new(2, "the poset 4<2, 2<1, 2<3 has exactly 8 contractions");
    let p = fixtures::claw_poset();
    let (all, elapsed) = best_of(|| p.all_contractions().unwrap());
    let expected: BTreeSet<Preposet> = [
        pp(4, &[(4, 2), (2, 1), (2, 3)]),
        pp(4, &[(2, 4), (4, 2), (2, 1), (2, 3)]),
        pp(4, &[(4, 2), (2, 3), (3, 2), (2, 1)]),
        pp(4, &[(4, 2), (2, 1), (1, 2), (2, 3)]),
        pp(4, &[(2, 3), (3, 2), (2, 4), (4, 2), (2, 1)]),
        pp(4, &[(1, 2), (2, 1), (2, 4), (4, 2), (2, 3)]),
        pp(4, &[(4, 2), (1, 2), (2, 1), (2, 3), (3, 2)]),
        pp(4, &[(1, 2), (2, 1), (2, 3), (3, 2), (2, 4), (4, 2)]),
    ]
    .into_iter()
    .collect();
    let partitions: Vec<Vec<Vec<usize>>> = all.iter().map(|q| q.classes().to_vec()).collect();
    let listed: Vec<Vec<Vec<usize>>> = vec![
        vec![vec![1], vec![2], vec![3], vec![4]],
        vec![vec![1], vec![2, 4], vec![3]],
        vec![vec![1], vec![2, 3], vec![4]],
        vec![vec![1, 2], vec![3], vec![4]],
        vec![vec![1], vec![2, 3, 4]],
        vec![vec![1, 2, 4], vec![3]],
        vec![vec![1, 2, 3], vec![4]],
        vec![vec![1, 2, 3, 4]],
    ];
    v.check("exactly 8 preposets", all.len() == 8);
    v.check(
        "class partitions as listed",
        partitions.iter().collect::<BTreeSet<_>>() == listed.iter().collect::<BTreeSet<_>>(),
    );
    v.check(
        "cover structure as drawn",
        all.iter().cloned().collect::<BTreeSet<_>>() == expected,
    );
    v.within(elapsed, EXACT_SMALL);
    v.finish();
}

#[test]
fn criterion_03_star_rays_sum_to_hub() {
    let mut v = Verdict::new(3, "star 1<3, 2<3 has rays e_23, e_13 summing to e_3");
    let star = pp(3, &[(1, 3), (2, 3)]);
    let ((rays, sum), elapsed) = best_of(|| {
        let rays = rays_of(&star).unwrap();
        let sum = sum_vectors(&rays).unwrap();
        (rays, sum)
    });
    let rays: BTreeSet<_> = rays.into_iter().collect();
    v.check(
        "rays {e_23, e_13}",
        rays == BTreeSet::from([e(3, &[2, 3]), e(3, &[1, 3])]),
    );
    v.check("sum is e_3", sum == e(3, &[3]));
    v.within(elapsed, EXACT_SMALL);
    v.finish();
}

#[test]
fn criterion_04_p2_factors_in_three_steps() {
    let mut v = Verdict::new(4, "the three-star fan factors to B(3) in 3 verified steps");
    let fan = fixtures::p2_fan();
    let opts = FactorOptions {
        verify: true,
        ..Default::default()
    };
    let (trace, elapsed) = best_of(|| factor_to_braid(&fan, &opts).unwrap());
    v.check("exactly 3 steps", trace.len() == 3);
    let mut before = &trace.initial;
    for (i, step) in trace.steps.iter().enumerate() {
        let ok = verify_step(before, &step.result, &step.center.tau).unwrap();
        v.check(format!("step {} passes verify_step", i + 1), ok);
        before = &step.result;
    }
    v.check(
        "final fan is B(3)",
        trace.final_fan() == &braid_fan(3).unwrap(),
    );
    let added: BTreeSet<_> = trace.added_rays().into_iter().collect();
    v.check(
        "added {e_1, e_2, e_3}",
        added == BTreeSet::from([e(3, &[1]), e(3, &[2]), e(3, &[3])]),
    );
    v.within(elapsed, P2_BUDGET);
    v.finish();
}

/// The object as literally described: B(4) with only the chambers `1234`
/// and `2134` merged. It has 14 rays, not 13, and is not a fan.
#[test]
fn criterion_05_merged_chamber_fan() {
    let mut v = Verdict::new(
        5,
        "B(4) with 1234, 2134 merged: 23 cones, 13 rays, one step adding e_34",
    );
    let fan = fixtures::merged_chamber_fan_n4();
    let start = Instant::now();
    let result = factor_to_braid(&fan, &FactorOptions::default());
    let elapsed = start.elapsed();
    v.check("23 maximal cones", fan.maximal().len() == 23);
    v.check(
        format!("13 rays (found {})", fan.ray_set().len()),
        fan.ray_set().len() == 13,
    );
    match result {
        Ok(trace) => {
            v.check("exactly 1 step", trace.len() == 1);
            v.check("adds e_34", trace.added_rays() == vec![e(4, &[3, 4])]);
            v.check(
                "final fan is B(4)",
                trace.final_fan() == &braid_fan(4).unwrap(),
            );
        }
        Err(err) => v.check(format!("factorization succeeds (got: {err})"), false),
    }
    v.within(elapsed, MERGED_BUDGET);
    v.finish();
}

/// Smallest fan one subdivision below B(4): the chamber pairs 1234 | 2134
/// and 1243 | 2143 merged, so that e_34 is no longer a ray.
#[test]
fn criterion_05b_blowdown_fan() {
    let mut v = Verdict::new(
        5,
        "(supplement) B(4) without e_34: 22 cones, 13 rays, one step adding e_34",
    );
    let fan = fixtures::blowdown_fan_n4();
    let opts = FactorOptions {
        verify: true,
        ..Default::default()
    };
    let start = Instant::now();
    let trace = factor_to_braid(&fan, &opts).unwrap();
    let elapsed = start.elapsed();
    v.check("valid fan", validate_fan(&fan).ok);
    v.check("22 maximal cones", fan.maximal().len() == 22);
    v.check("13 rays", fan.ray_set().len() == 13);
    v.check("exactly 1 step", trace.len() == 1);
    v.check("adds e_34", trace.added_rays() == vec![e(4, &[3, 4])]);
    v.check(
        "final fan is B(4)",
        trace.final_fan() == &braid_fan(4).unwrap(),
    );
    v.within(elapsed, MERGED_BUDGET);
    v.finish();
}

#[test]
fn criterion_06_every_n3_coarsening_factors() {
    let mut v = Verdict::new(6, "all 18 coarsenings of B(3) factor with l = 6 - |rays|");
    let start = Instant::now();
    let fans = enumerate_coarsenings(3).unwrap();
    let braid = braid_fan(3).unwrap();
    v.check(
        format!("18 coarsenings (found {})", fans.len()),
        fans.len() == 18,
    );
    for (i, fan) in fans.iter().enumerate() {
        let trace = match factor_to_braid(fan, &FactorOptions::default()) {
            Ok(t) => t,
            Err(err) => {
                v.check(format!("fan {i} factors (got: {err})"), false);
                continue;
            }
        };
        v.check(
            format!("fan {i}: l = 6 - |rays|"),
            trace.len() == 6 - fan.ray_set().len(),
        );
        v.check(
            format!("fan {i}: ends at B(3)"),
            trace.final_fan() == &braid,
        );
        let all_valid = std::iter::once(fan)
            .chain(trace.steps.iter().map(|s| &s.result))
            .all(|f| validate_fan(f).ok);
        v.check(
            format!("fan {i}: every intermediate fan is valid"),
            all_valid,
        );
    }
    v.within(start.elapsed(), CORPUS_BUDGET);
    v.finish();
}

#[test]
fn criterion_07_tree_poset_rays() {
    let mut v = Verdict::new(
        7,
        "tree posets for n = 4, 5, 6: unimodular rays that invert",
    );
    for (n, count) in [(4, 128), (5, 2000), (6, 41472)] {
        let start = Instant::now();
        let trees = all_tree_posets(n).unwrap();
        v.check(
            format!("n = {n}: {count} tree posets (found {})", trees.len()),
            trees.len() == count,
        );
        let mut bad = 0usize;
        for p in &trees {
            let rays = rays_of(p).unwrap();
            let charts: Vec<Vec<i64>> = rays.iter().map(LatticeVector::chart).collect();
            let ok = rays.len() == n - 1
                && is_unimodular_extendable(&rays) == Ok(true)
                && abs_det(&charts) == 1
                && preposet_of_rays(n, &rays).as_ref() == Ok(p);
            bad += usize::from(!ok);
        }
        v.check(format!("n = {n}: {bad} posets fail"), bad == 0);
        if n == 6 {
            v.within(start.elapsed(), TREE_SWEEP_BUDGET);
        }
    }
    v.finish();
}

#[test]
fn criterion_08_poset_and_ray_subdivisions_agree() {
    let mut v = Verdict::new(8, "poset-level steps equal ray-level star subdivisions");
    let opts = FactorOptions::default();
    let mut fans = vec![("three-star fan".to_string(), fixtures::p2_fan())];
    fans.push(("B(4) without e_34".into(), fixtures::blowdown_fan_n4()));
    for (i, f) in enumerate_coarsenings(3).unwrap().into_iter().enumerate() {
        fans.push((format!("n = 3 coarsening {i}"), f));
    }
    let mut steps = 0;
    for (name, fan) in &fans {
        let trace = factor_to_braid(fan, &opts).unwrap();
        steps += trace.len();
        v.check(format!("{name}: steps agree"), steps_agree(&trace));
    }
    v.check("some steps were compared", steps > 0);

    // The merged-chamber object yields no poset-level step to compare.
    let merged = fixtures::merged_chamber_fan_n4();
    v.check(
        "merged-chamber object is refused at the poset level",
        factor_to_braid(&merged, &opts).is_err(),
    );
    v.finish();
}

#[test]
fn criterion_09_negative_controls() {
    let mut v = Verdict::new(
        9,
        "diamond fan is not smooth; P2 minus a cone is incomplete",
    );
    v.check(
        "diamond fan fails is_smooth",
        !is_smooth(&fixtures::diamond_fan()),
    );

    let p2 = fixtures::p2_fan();
    let partial = Fan::new(3, p2.maximal()[1..].to_vec()).unwrap();
    match is_complete_coarsening(&partial).unwrap() {
        Coverage::Complete => v.check("incomplete fan is detected", false),
        Coverage::Defect { order, covering } => {
            v.check("witness is uncovered", covering == 0);
            let inside = |l: &Preposet| l.linear_extensions().unwrap().contains(&order);
            v.check(
                format!("witness {order:?} extends no remaining label"),
                !partial.labels().any(inside),
            );
            v.check(
                format!("witness {order:?} extends the deleted label"),
                p2.maximal()[0]
                    .label()
                    .linear_extensions()
                    .unwrap()
                    .contains(&order),
            );
        }
    }
    v.finish();
}

#[test]
fn criterion_10_factor_output_is_deterministic() {
    let mut v = Verdict::new(10, "repeated factor runs write byte-identical traces");
    let dir = tempfile::tempdir().unwrap();
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    for input in ["p2-fan.json", "blowdown-n4.json"] {
        let mut outputs = Vec::new();
        for run in 0..3 {
            let out = dir.path().join(format!("{input}.{run}.trace"));
            let status = Command::new(env!("CARGO_BIN_EXE_braidfan"))
                .arg("factor")
                .arg(data.join(input))
                .args(["--verify", "--verbose", "-o"])
                .arg(&out)
                .output()
                .unwrap()
                .status;
            v.check(format!("{input} run {run} exits 0"), status.success());
            outputs.push(fs::read(&out).unwrap_or_default());
        }
        v.check(
            format!("{input}: traces are non-empty"),
            !outputs[0].is_empty(),
        );
        v.check(
            format!("{input}: traces identical"),
            outputs.windows(2).all(|w| w[0] == w[1]),
        );
    }
    v.finish();
}
