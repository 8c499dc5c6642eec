//! End-to-end acceptance checks. Runs without the libtest harness and prints
//! one PASS/FAIL line per criterion; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use quiver_cones::cone::HCone;
use quiver_cones::dw::{theta, verify_dw, Circ, DwReport, DEFAULT_ENUMERATION_BUDGET};
use quiver_cones::linalg::{int_vec, primitive};
use quiver_cones::oracle::{
    is_semistable, random_rep, si_weights_by_degree, CountPolicy, DEFAULT_BUDGET,
    DEFAULT_MONOMIAL_BUDGET,
};
use quiver_cones::{mu, sigma_cone, DimensionVector, HomExt, Quiver, SamplingPolicy, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn dv(v: &[u32]) -> DimensionVector {
    DimensionVector::new(v.to_vec())
}

fn instances() -> Vec<(&'static str, Quiver, DimensionVector)> {
    vec![
        ("A2", Quiver::linear(2), dv(&[1, 1])),
        ("A2", Quiver::linear(2), dv(&[2, 1])),
        ("A3", Quiver::linear(3), dv(&[1, 1, 1])),
        ("K2", Quiver::kronecker(2), dv(&[1, 1])),
        ("K2", Quiver::kronecker(2), dv(&[2, 2])),
        ("K3", Quiver::kronecker(3), dv(&[1, 1])),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn h_description() -> Outcome {
    let mut total = 0;
    for (name, q, beta) in instances() {
        let sigma = sigma_cone(&q, &beta).map_err(|e| e.to_string())?;
        let weights = si_weights_by_degree(&q, &beta, 6, DEFAULT_MONOMIAL_BUDGET).map_err(|e| e.to_string())?;
        let mut gens: Vec<Vec<BigInt>> = Vec::new();
        for w in &weights {
            let v = int_vec(w.sigma.entries());
            ensure(sigma.contains(&v), || format!("{name} {beta}: weight {} outside the cone", w.sigma))?;
            if !w.sigma.is_zero() {
                let p = primitive(v);
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        let generated = HCone::generated_by(q.num_vertices(), &gens).map_err(|e| e.to_string())?;
        let (a, b) = (sigma.rays(), generated.rays());
        ensure(a.rays == b.rays && a.lineality == b.lineality, || {
            format!(
                "{name} {beta}: cone rays {:?} but semi-invariant weights generate rays {:?}",
                a.rays_i64(),
                b.rays_i64()
            )
        })?;
        total += a.rays.len();
    }
    Ok(format!("6 instances, {total} rays matched against degree <= 6 weights"))
}

fn saturation() -> Outcome {
    for (name, q, beta) in instances() {
        let base = sigma_cone(&q, &beta).map_err(|e| e.to_string())?;
        for k in [2, 3] {
            let scaled = sigma_cone(&q, &beta.scale(k)).map_err(|e| e.to_string())?;
            ensure(scaled.same_cone(&base), || format!("{name}: cone of {k}*{beta} differs"))?;
        }
    }
    Ok("k = 2, 3 on 6 instances".into())
}

fn closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_251);
    let mut premises = 0;
    for (name, q) in [
        ("A2", Quiver::linear(2)),
        ("A3", Quiver::linear(3)),
        ("K2", Quiver::kronecker(2)),
        ("K3", Quiver::kronecker(3)),
    ] {
        let he = HomExt::new(&q);
        let n = q.num_vertices();
        let mut draw = || dv(&(0..n).map(|_| rng.gen_range(0..=3)).collect::<Vec<_>>());
        for _ in 0..200 {
            let (a, b, c) = (draw(), draw(), draw());
            let gs = |x: &DimensionVector| he.is_generic_subdim(&a, &a.add(x)).unwrap();
            if gs(&b) && gs(&c) {
                premises += 1;
                ensure(gs(&b.add(&c)), || format!("{name}: alpha={a} beta={b} gamma={c}"))?;
            }
        }
    }
    Ok(format!("800 triples, {premises} with both premises, no counterexample"))
}

fn euler_identity() -> Outcome {
    let policy = SamplingPolicy {
        trials: 3,
        primes: vec![32003, 65537],
        seed: 4,
    };
    let mut pairs = 0;
    for (name, q) in [
        ("K2", Quiver::kronecker(2)),
        ("K3", Quiver::kronecker(3)),
        ("A3", Quiver::linear(3)),
    ] {
        let he = HomExt::new(&q);
        let top = DimensionVector::new(vec![3; q.num_vertices()]);
        let all: Vec<_> = top.sub_vectors().collect();
        for a in &all {
            for b in &all {
                let s = he.generic_hom(a, b, &policy).map_err(|e| e.to_string())?;
                let r = he.recursive(a, b).map_err(|e| e.to_string())?;
                let euler = q.euler_form(a, b).unwrap();
                ensure(s.hom as i64 - s.ext as i64 == euler, || format!("{name} {a} {b}: sampled"))?;
                ensure(r.hom as i64 - r.ext as i64 == euler, || format!("{name} {a} {b}: recursive"))?;
                ensure(s.ext == r.ext, || {
                    format!("{name} ({a}, {b}): sampled ext {} vs recursive {}", s.ext, r.ext)
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, 2 primes x 3 seeds each"))
}

struct DwCase {
    name: &'static str,
    quiver: Quiver,
    beta: DimensionVector,
    s_max: usize,
}

fn dw_cases() -> Vec<DwCase> {
    vec![
        DwCase { name: "A2", quiver: Quiver::linear(2), beta: dv(&[1, 1]), s_max: 2 },
        DwCase { name: "K2", quiver: Quiver::kronecker(2), beta: dv(&[1, 1]), s_max: 2 },
        DwCase { name: "K2", quiver: Quiver::kronecker(2), beta: dv(&[2, 2]), s_max: 2 },
        DwCase { name: "A3", quiver: Quiver::linear(3), beta: dv(&[1, 1, 1]), s_max: 3 },
    ]
}

fn dw_report(case: &DwCase) -> Result<DwReport, String> {
    let he = HomExt::new(&case.quiver);
    let circ = Circ::new(&he, CountPolicy::with_seed(7));
    verify_dw(&circ, &case.beta, case.s_max, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())
}

fn sets_at(r: &DwReport, s: usize) -> Vec<Vec<DimensionVector>> {
    r.steps[s - 1].sets.iter().map(|x| x.parts.clone()).collect()
}

fn bijection(reports: &[(DwCase, DwReport)]) -> Outcome {
    for (case, r) in reports {
        ensure(r.bijective(), || format!("{} {}: {:?}", case.name, case.beta, r.steps))?;
        for st in &r.steps {
            ensure(st.linear_independence.holds(), || format!("{} {}: dependent parts", case.name, case.beta))?;
        }
    }
    let expect = |i: usize, parts: Vec<Vec<DimensionVector>>| -> Result<(), String> {
        let got = sets_at(&reports[i].1, 2);
        ensure(got == parts, || format!("{} {}: W_2 = {got:?}", reports[i].0.name, reports[i].0.beta))
    };
    expect(0, vec![vec![dv(&[0, 1]), dv(&[1, 0])]])?;
    expect(1, vec![vec![dv(&[0, 1]), dv(&[1, 0])]])?;
    expect(2, vec![vec![dv(&[0, 2]), dv(&[2, 0])]])?;
    let rejected = &reports[2].1.steps[1].rejected;
    let twice = rejected
        .iter()
        .find(|r| r.parts == vec![dv(&[1, 1]), dv(&[1, 1])])
        .ok_or("{(1,1),(1,1)} not examined")?;
    ensure(twice.failures.iter().all(|(_, c)| c.count == 2), || {
        format!("{{(1,1),(1,1)}} rejected with counts {:?}", twice.failures)
    })?;
    Ok("A2 (1,1), K2 (1,1), K2 (2,2), A3 (1,1,1): bijective and independent; {(1,1),(1,1)} rejected with count 2".into())
}

fn codimension(reports: &[(DwCase, DwReport)]) -> Outcome {
    let mut n = 0;
    for (case, r) in reports {
        for st in &r.steps {
            for set in &st.sets {
                ensure(set.exact && set.face.codim == st.s, || {
                    format!("{} {}: {:?} has codim {}", case.name, case.beta, set.parts, set.face.codim)
                })?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} decomposition sets, each of codimension equal to its size"))
}

fn mu_halfspace(reports: &[(DwCase, DwReport)]) -> Outcome {
    let mut n = 0;
    for (case, r) in reports {
        let q = &case.quiver;
        let sigma = sigma_cone(q, &case.beta).map_err(|e| e.to_string())?;
        let rays = sigma.rays().rays_i64();
        for st in &r.steps {
            for set in &st.sets {
                let d = set.certificate.as_ref().ok_or("missing certificate")?;
                let (face, _) = theta(&set.parts, &sigma).map_err(|e| e.to_string())?;
                let on_face: Vec<Vec<i64>> = face.rays.iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect();
                for ray in &rays {
                    let m = mu(q, 1, &Weight::new(ray.clone()), d).unwrap();
                    ensure(m <= 0, || format!("{} {d}: mu({ray:?}) = {m}", case.name))?;
                    ensure((m == 0) == on_face.contains(ray), || {
                        format!("{} {d}: mu({ray:?}) = {m} but face rays are {on_face:?}", case.name)
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} (decomposition, ray) pairs"))
}

fn king_bridge() -> Outcome {
    let mut checks = 0;
    for (name, q) in [("A2", Quiver::linear(2)), ("K2", Quiver::kronecker(2))] {
        let beta = dv(&[1, 1]);
        let sigma = sigma_cone(&q, &beta).map_err(|e| e.to_string())?;
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if a + b != 0 {
                    continue;
                }
                let w = Weight::new(vec![a, b]);
                let member = sigma.contains(&int_vec(&[a, b]));
                for t in 0..5u64 {
                    let rep = random_rep(&q, &beta, 32003, 100 + t).map_err(|e| e.to_string())?;
                    let ss = is_semistable(&q, &rep, &w, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    ensure(ss == member, || format!("{name} sigma={w} sample {t}: semistable={ss}, member={member}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} samples agree with cone membership"))
}

fn pointedness() -> Outcome {
    for (name, q, beta) in instances() {
        let v = sigma_cone(&q, &beta).map_err(|e| e.to_string())?.rays();
        ensure(v.is_pointed(), || format!("{name} {beta}: lineality {:?}", v.lineality))?;
    }
    Ok("trivial lineality on 6 instances".into())
}

fn determinism() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_quiver-cones");
    let runs: Vec<Vec<&str>> = vec![
        vec!["cone", "--quiver", "A2", "--beta", "1,1"],
        vec!["cone", "--quiver", "K2", "--beta", "2,2"],
        vec!["faces", "--quiver", "A3", "--beta", "1,1,1", "--max-codim", "3"],
        vec!["schur", "--quiver", "K2", "--beta", "2,2"],
        vec!["candecomp", "--quiver", "A2", "--beta", "2,1"],
        vec!["decomp", "--quiver", "A3", "--beta", "1,1,1", "--s-max", "3", "--seed", "7"],
        vec!["dw-verify", "--quiver", "A2", "--beta", "1,1", "--s-max", "2", "--seed", "7"],
        vec!["dw-verify", "--quiver", "K2", "--beta", "1,1", "--s-max", "2", "--seed", "7"],
        vec!["dw-verify", "--quiver", "K2", "--beta", "2,2", "--s-max", "2", "--seed", "7"],
        vec!["dw-verify", "--quiver", "A3", "--beta", "1,1,1", "--s-max", "3", "--seed", "7"],
        vec!["oracle", "hom", "--quiver", "K3", "--alpha", "1,2", "--beta", "2,1", "--seed", "5"],
        vec!["oracle", "ext", "--quiver", "A3", "--alpha", "1,0,0", "--beta", "0,1,1", "--seed", "5"],
        vec!["oracle", "circ", "--quiver", "K2", "--alpha", "1,1", "--beta", "1,1", "--seed", "5"],
        vec!["oracle", "ss", "--quiver", "K2", "--beta", "1,1", "--sigma", "1,-1", "--seed", "5"],
        vec!["oracle", "si", "--quiver", "K2", "--beta", "1,1", "--deg", "3"],
    ];
    for args in &runs {
        let run = || {
            Command::new(exe)
                .args(args)
                .output()
                .map_err(|e| format!("cannot run {exe}: {e}"))
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || {
            format!("`{}` exited with {:?}", args.join(" "), a.status.code())
        })?;
        ensure(a.stdout == b.stdout && a.status.code() == b.status.code(), || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
    }
    Ok(format!("{} commands, byte-identical reports", runs.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, title: &str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title} ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {detail} ({secs:.1}s)");
            }
        }
    };
    report(1, "H-description matches semi-invariant weights", &h_description);
    report(2, "saturation", &saturation);
    report(3, "closure of generic subdimensions", &closure);
    report(4, "Euler identity and recursive/sampled ext", &euler_identity);
    let reports: Vec<(DwCase, DwReport)> = dw_cases()
        .into_iter()
        .filter_map(|c| match dw_report(&c) {
            Ok(r) => Some((c, r)),
            Err(e) => {
                println!("verification of {} {} failed to run: {e}", c.name, c.beta);
                None
            }
        })
        .collect();
    let complete = reports.len() == 4;
    let need = |f: fn(&[(DwCase, DwReport)]) -> Outcome| {
        let r = &reports;
        move || if complete { f(r) } else { Err("verification did not run on every case".into()) }
    };
    report(5, "well-covering decompositions parametrize faces", &need(bijection));
    report(6, "codimension law", &need(codimension));
    report(7, "mu halfspace", &need(mu_halfspace));
    report(8, "King semistability matches cone membership", &king_bridge);
    report(9, "pointedness", &pointedness);
    report(10, "determinism of reports", &determinism);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
