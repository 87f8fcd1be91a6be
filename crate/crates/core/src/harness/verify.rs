use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{all_segments, enumerate_multisegments, Filter};
use super::sample::{random_balanced, random_ladder, random_multisegment, random_regular, random_segment};
use crate::combinatorics::{hom_pi_lamina, matching_condition, star_balanced, star_segment, star_segment_right};
use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::multiseg::{
    balanced_witness, is_balanced, quiver_dims, sigma_index, BasicRep, Multisegment, PatternType, Permutation,
    Segment, SigmaIndex,
};
use crate::pp::{Engine, RandomizedVerdict};
use crate::quiver::{hom_ext_by_solve, multisegment_from_ranks, normal_form, rank_profile};

pub const SUITES: [&str; 9] = [
    "lm-sweep",
    "balanced-vs-rigid",
    "mw-involution",
    "duality-star",
    "matching-vs-star",
    "recipes-vs-randomized",
    "paper-examples",
    "quiver-formulas",
    "orbit-roundtrip",
];

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl CaseResult {
    fn check(label: impl Into<String>, outcome: Result<(bool, String)>) -> Self {
        let label = label.into();
        match outcome {
            Ok((pass, detail)) => CaseResult { label, pass, detail },
            Err(e) => CaseResult { label, pass: false, detail: format!("error: {e}") },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: &str, cases: Vec<CaseResult>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        SuiteReport { suite: suite.to_string(), passed, failed: cases.len() - passed, cases }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && !self.cases.is_empty()
    }

    pub fn total(&self) -> usize {
        self.cases.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// Optional overrides; unset fields take each suite's default.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub samples: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub seed: u64,
}

fn run_cases<T: Sync>(inputs: &[T], f: impl Fn(&T) -> CaseResult + Sync + Send) -> Vec<CaseResult> {
    inputs.par_iter().map(f).collect()
}

fn rng_for(params: &SuiteParams, salt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(salt);
    rng
}

pub fn run_suite(name: &str, engine: &Engine, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "lm-sweep" => Ok(lm_sweep(engine, params)),
        "balanced-vs-rigid" => Ok(balanced_vs_rigid(engine, params)),
        "mw-involution" => Ok(mw_involution(engine, params)),
        "duality-star" => Ok(duality_star(engine, params)),
        "matching-vs-star" => Ok(matching_vs_star(engine, params)),
        "recipes-vs-randomized" => Ok(recipes_vs_randomized(engine, params)),
        "paper-examples" => Ok(worked_examples(engine)),
        "quiver-formulas" => Ok(quiver_formulas(params)),
        "orbit-roundtrip" => orbit_roundtrip(params),
        other => Err(Error::Parse { text: other.to_string(), reason: format!("unknown suite; expected one of {}", SUITES.join(", ")) }),
    }
}

/// Rigidity of the multisegment of `w` against 1324/2143 avoidance.
pub fn lm_sweep(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let ks: Vec<usize> = match params.k {
        Some(k) => vec![k],
        None => (2..=5).collect(),
    };
    let perms: Vec<Permutation> = ks.iter().flat_map(|&k| Permutation::all(k)).collect();
    let cases = run_cases(&perms, |w| {
        CaseResult::check(format!("w={w}"), (|| {
            let m = w.multisegment();
            let rigid = engine.is_rigid(&m)?.value;
            let avoids = w.avoids_1324_2143()?;
            Ok((rigid == avoids, format!("{m}: rigid={rigid} avoids={avoids}")))
        })())
    });
    SuiteReport::new("lm-sweep", cases)
}

/// Balanced against rigid on uniformly sampled regular multisegments.
pub fn balanced_vs_rigid(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let samples = params.samples.unwrap_or(200);
    let n_max = params.n.unwrap_or(8).max(1);
    let n_min = 4.min(n_max);
    let mut rng = rng_for(params, 1);
    let inputs: Vec<Multisegment> =
        (0..samples)
        .map(|_| {
            let n = rng.gen_range(n_min..=n_max);
            random_regular(&mut rng, n, 6)
        })
        .collect();
    let cases = run_cases(&inputs, |m| {
        CaseResult::check(m.to_string(), (|| {
            let balanced = is_balanced(m)?;
            let rigid = engine.is_rigid(m)?.value;
            Ok((balanced == rigid, format!("balanced={balanced} rigid={rigid}")))
        })())
    });
    SuiteReport::new("balanced-vs-rigid", cases)
}

pub fn mw_involution(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let samples = params.samples.unwrap_or(500);
    let n_max = params.n.unwrap_or(8).max(1);
    let mut rng = rng_for(params, 2);
    let inputs: Vec<Multisegment> =
        (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            random_multisegment(&mut rng, n, 6)
        })
        .collect();
    let cases = run_cases(&inputs, |m| {
        CaseResult::check(m.to_string(), (|| {
            let t = engine.mw(m)?.value;
            let back = engine.mw(&t)?.value;
            Ok((back == *m && t.grdim() == m.grdim(), format!("mw={t} mw∘mw={back}")))
        })())
    });
    SuiteReport::new("mw-involution", cases)
}

pub fn duality_star(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let samples = params.samples.unwrap_or(200);
    let n_max = params.n.unwrap_or(7).max(1);
    let mut rng = rng_for(params, 3);
    let inputs: Vec<(Multisegment, Multisegment)> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            (random_multisegment(&mut rng, n, 4), random_multisegment(&mut rng, n, 4))
        })
        .collect();
    let cases = run_cases(&inputs, |(m, n)| {
        CaseResult::check(format!("{m} * {n}"), (|| {
            let lhs = engine.star(m, n)?.value.dual();
            let rhs = engine.star(&n.dual(), &m.dual())?.value;
            Ok((lhs == rhs, format!("star^∨={lhs} dual-side={rhs}")))
        })())
    });
    SuiteReport::new("duality-star", cases)
}

/// Pairs with a ladder on at least one side.
pub fn matching_vs_star(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let samples = params.samples.unwrap_or(300);
    let n_max = params.n.unwrap_or(7).max(1);
    let mut rng = rng_for(params, 4);
    let inputs: Vec<(Multisegment, Multisegment)> = (0..samples)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            let lad = random_ladder(&mut rng, n, 4);
            let other = random_multisegment(&mut rng, n, 4);
            if rng.gen_bool(0.5) { (lad, other) } else { (other, lad) }
        })
        .collect();
    let cases = run_cases(&inputs, |(m, n)| {
        CaseResult::check(format!("{m} * {n}"), (|| {
            let holds = matching_condition(n, m)?.holds;
            let split = engine.star(m, n)?.value == m.sum(n);
            let lam_mn = hom_pi_lamina(m, n)?;
            let lam_nm = hom_pi_lamina(n, m)?;
            let hom_mn = engine.hom_pi(m, n)?.value;
            let hom_nm = engine.hom_pi(n, m)?.value;
            let pass = holds == split && lam_mn == hom_mn && lam_nm == hom_nm;
            Ok((pass, format!("M(n,m)={holds} star=sum:{split} lamina=({lam_mn},{lam_nm}) hom=({hom_mn},{hom_nm})")))
        })())
    });
    SuiteReport::new("matching-vs-star", cases)
}

pub fn recipes_vs_randomized(engine: &Engine, params: &SuiteParams) -> SuiteReport {
    let segment_samples = params.samples.unwrap_or(300);
    let balanced_samples = params.samples.map_or(200, |s| (2 * s).div_ceil(3));
    let n_max = params.n.unwrap_or(7).max(1);
    let mut rng = rng_for(params, 5);
    let seg_inputs: Vec<(Segment, Multisegment, bool)> = (0..segment_samples)
        .map(|_| {
            let n = rng.gen_range(1..=n_max);
            (random_segment(&mut rng, n), random_multisegment(&mut rng, n, 4), rng.gen_bool(0.5))
        })
        .collect();
    let mut cases = run_cases(&seg_inputs, |(d, n, mirrored)| {
        let label = if *mirrored { format!("{n} * {d}") } else { format!("{d} * {n}") };
        CaseResult::check(format!("segment {label}"), (|| {
            let single = Multisegment::single(n.n(), *d);
            let (recipe, oracle) = if *mirrored {
                (star_segment_right(engine, n, *d)?, engine.star(n, &single)?.value)
            } else {
                (star_segment(engine, *d, n)?, engine.star(&single, n)?.value)
            };
            Ok((recipe == oracle, format!("recipe={recipe} randomized={oracle}")))
        })())
    });
    let bal_inputs: Vec<(Multisegment, Multisegment)> = (0..balanced_samples)
        .map(|_| {
            let n = rng.gen_range(2.min(n_max)..=n_max);
            (random_balanced(&mut rng, n, 4), random_multisegment(&mut rng, n, 3))
        })
        .collect();
    cases.extend(run_cases(&bal_inputs, |(m, n)| {
        CaseResult::check(format!("balanced {m} * {n}"), (|| {
            let recipe = star_balanced(engine, m, n)?;
            let oracle = engine.star(m, n)?.value;
            Ok((recipe == oracle, format!("recipe={recipe} randomized={oracle}")))
        })())
    }));
    SuiteReport::new("recipes-vs-randomized", cases)
}

/// Quiver hom/ext formulas against direct solves on normal forms.
pub fn quiver_formulas(params: &SuiteParams) -> SuiteReport {
    let field = Field::default();
    let mut inputs: Vec<(Multisegment, Multisegment)> = Vec::new();
    for n in 1..=5 {
        let segs = all_segments(n);
        for &a in &segs {
            for &b in &segs {
                inputs.push((Multisegment::single(n, a), Multisegment::single(n, b)));
            }
        }
    }
    let mut rng = rng_for(params, 6);
    let samples = params.samples.unwrap_or(100);
    for _ in 0..samples {
        let n = rng.gen_range(1..=7);
        inputs.push((random_multisegment(&mut rng, n, 5), random_multisegment(&mut rng, n, 5)));
    }
    let cases = run_cases(&inputs, |(m, n)| {
        let formula = quiver_dims(m, n);
        let solved = hom_ext_by_solve(&normal_form(m, field), &normal_form(n, field));
        CaseResult {
            label: format!("{m} vs {n} (n={})", m.n()),
            pass: formula == solved,
            detail: format!("formula={formula:?} solve={solved:?}"),
        }
    });
    SuiteReport::new("quiver-formulas", cases)
}

/// Recovery of multisegments from the ranks of their normal forms.
pub fn orbit_roundtrip(params: &SuiteParams) -> Result<SuiteReport> {
    let field = Field::default();
    let mut inputs = Vec::new();
    for n in 1..=4 {
        inputs.extend(enumerate_multisegments(n, 4, Filter::All)?);
    }
    let mut rng = rng_for(params, 7);
    let samples = params.samples.unwrap_or(500);
    for _ in 0..samples {
        let n = rng.gen_range(5..=8);
        inputs.push(random_multisegment(&mut rng, n, 8));
    }
    let cases = run_cases(&inputs, |m| {
        CaseResult::check(format!("{m} (n={})", m.n()), (|| {
            let back = multisegment_from_ranks(&rank_profile(&normal_form(m, field)))?;
            Ok((back == *m, format!("recovered {back}")))
        })())
    });
    Ok(SuiteReport::new("orbit-roundtrip", cases))
}

fn ms(text: &str, n: usize) -> Multisegment {
    Multisegment::parse(text, n).expect("well-formed literal")
}

fn verdict_case<T: PartialEq + std::fmt::Debug>(label: &str, got: Result<RandomizedVerdict<T>>, want: T) -> CaseResult {
    CaseResult::check(label, got.map(|v| {
        let pass = v.value == want && v.error_bound < 2f64.powi(-40);
        (pass, format!("value={:?} error_bound={:e}", v.value, v.error_bound))
    }))
}

fn value_case<T: PartialEq + std::fmt::Display>(label: &str, got: Result<T>, want: T) -> CaseResult {
    CaseResult::check(label, got.map(|v| (v == want, format!("got {v}, expected {want}"))))
}

/// Worked examples with known values.
pub fn worked_examples(engine: &Engine) -> SuiteReport {
    let nonrigid = ms("[4,5]+[2,4]+[3,3]+[1,2]", 5);
    let cc = ms("[4,7]+[5,6]+[2,5]+[3,4]+[1,3]", 7);
    let cc_star = ms("[4,7]+[2,7]+[5,6]+[3,6]+[4,5]+[1,5]+[2,4]+[3,3]+[1,3]", 7);
    let m1 = ms("[1,1]+[3,4]+[4,7]", 8);
    let m2 = ms("[2,4]+[5,6]+[8,8]", 8);
    let lad = ms("[1,4]+[3,6]+[4,8]", 8);
    let e = engine;
    let cases = vec![
        value_case("non-rigid canonical form", Ok(nonrigid.to_string()), "[4,5]+[3,3]+[2,4]+[1,2]".to_string()),
        value_case("non-rigid grdim", Ok(nonrigid.grdim().to_string()), "(1,2,2,2,1)".to_string()),
        value_case("non-rigid self-dual", Ok(nonrigid.dual()), nonrigid.clone()),
        verdict_case("non-rigid End", e.hom_pi(&nonrigid, &nonrigid), 3),
        verdict_case("non-rigid Ext¹", e.ext1_pi(&nonrigid, &nonrigid), 2),
        verdict_case("non-rigid rigid", e.is_rigid(&nonrigid), false),
        verdict_case("non-rigid strongly commutes with itself", e.strongly_commute(&nonrigid, &nonrigid), true),
        verdict_case("non-rigid star with itself", e.star(&nonrigid, &nonrigid), nonrigid.sum(&nonrigid)),
        CaseResult::check("non-rigid 4231 witness", balanced_witness(&nonrigid).map(|w| {
            let expected = [Segment::of(2, 4), Segment::of(4, 5), Segment::of(3, 3), Segment::of(1, 2)];
            let ok = w.as_ref().is_some_and(|w| w.kind == PatternType::T4231 && w.segments == expected);
            (ok, format!("{w:?}"))
        })),
        verdict_case("five-segment star", e.star(&cc, &cc), cc_star.clone()),
        verdict_case("five-segment rigid", e.is_rigid(&cc), false),
        verdict_case("five-segment star rigid", e.is_rigid(&cc_star), true),
        verdict_case("two-ladder star", e.star(&m1, &m2), lad.clone()),
        verdict_case("two-ladder factor", e.factor(&lad, &m1), Some(m2.clone())),
        value_case("two-ladder balanced recipe", star_balanced(e, &m1, &m2), lad.clone()),
        verdict_case("quasi-lamina rigid", e.is_rigid(&lad), true),
        value_case("dual of [4,5] on 5 sites", Ok(ms("[4,5]", 5).dual()), ms("[1,2]", 5)),
        value_case("Hom_Q([2,3],[1,2])", Ok(quiver_dims(&ms("[2,3]", 4), &ms("[1,2]", 4)).0), 1),
        value_case("Ext_Q([1,2],[2,3])", Ok(quiver_dims(&ms("[1,2]", 4), &ms("[2,3]", 4)).1), 1),
        value_case("[1,2]+[2,3]+[3,3] not split", Ok(crate::multiseg::is_split(&ms("[1,2]+[2,3]+[3,3]", 3))), false),
        value_case(
            "σ-index Z([1,3]) of [1,3]+[2,3]+[1,2]",
            Ok(sigma_index(&ms("[1,3]+[2,3]+[1,2]", 4), BasicRep::z(Segment::of(1, 3))).to_string()),
            SigmaIndex::Finite(2).to_string(),
        ),
        value_case(
            "σ-index Z([1,3]) of [1,4]",
            Ok(sigma_index(&ms("[1,4]", 4), BasicRep::z(Segment::of(1, 3))).to_string()),
            SigmaIndex::NegInfinity.to_string(),
        ),
        value_case("C_w for the identity in S_2", Ok(Permutation::identity(2).multisegment()), ms("[1,2]+[2,3]", 3)),
        verdict_case("mw([1,3])", e.mw(&ms("[1,3]", 3)), ms("[1,1]+[2,2]+[3,3]", 3)),
    ];
    SuiteReport::new("paper-examples", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", &Engine::default(), &SuiteParams::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let e = Engine::default();
        let p = SuiteParams { samples: Some(10), n: Some(5), k: Some(3), seed: 1 };
        for name in SUITES {
            let r = run_suite(name, &e, &p).unwrap();
            assert!(r.ok(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
