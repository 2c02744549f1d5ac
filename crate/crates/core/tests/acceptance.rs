//! One line per acceptance criterion; exits nonzero if any fails.

use extremal_spectra::bounds::{lb_ck_explicit, table, ub_ck, BoundValue, TableKind};
use extremal_spectra::constructions::{build, inertia_report, sk_certify, CertifyMode, Family};
use extremal_spectra::graphs::{build_thck, build_thng_pair, build_thp};
use extremal_spectra::lab::{check_lob, check_th1_spro, check_weyl, LabConfig, PropertyRun};
use extremal_spectra::linalg::{rowsums, IntSymMatrix, PmOneMatrix};
use extremal_spectra::search::{search_sk, SearchConfig, SearchStatus};
use extremal_spectra::spectra::spectrum;
use extremal_spectra::srg::{seidel_shift_spectrum, srg_spectrum, taylor_complement_params, taylor_params, taylor_spectra, ExactSpectrum, QSurd, SrgParams};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

const TOL: f64 = 1e-8;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn builds() -> Vec<(Family, usize)> {
    let mut v: Vec<_> = (2..=5).map(|s| (Family::Thkhn, s)).collect();
    v.extend([2, 4].map(|s| (Family::Thj, s)));
    v.extend((2..=4).map(|s| (Family::Thj1, s)));
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for (family, s) in builds() {
        let c = build(family, s, None).map_err(|e| e.to_string())?;
        let k = (s * s) as u64;
        let cert = sk_certify(&c.matrix, k, CertifyMode::Exact).map_err(|e| e.to_string())?;
        ensure(cert.is_member(), || format!("{family} s={s} not certified"))?;
        let n = c.recipe.n as i64;
        let b = c.matrix.as_sym();
        let rs = rowsums(b).map_err(|e| e.to_string())?;
        match family {
            Family::Thkhn => {
                ensure(rs.iter().all(|&r| r == 0), || format!("thkhn s={s} rowsums {rs:?}"))?;
                ensure(b.diagonal().iter().all(|&d| d == -1), || format!("thkhn s={s} diagonal"))?;
            }
            Family::Thj => {
                // constant rowsums is exactly "all-ones is an eigenvector"
                ensure(rs.iter().all(|&r| r == rs[0]), || format!("thj s={s} rowsums {rs:?}"))?;
                ensure(b.diagonal().iter().all(|&d| d == 1), || format!("thj s={s} diagonal"))?;
            }
            Family::Thj1 => ensure(rs.iter().all(|&r| r == -n), || format!("thj1 s={s} rowsums {rs:?}"))?,
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("9 builds certified exactly, contracts hold, {:.2} s", took.as_secs_f64()))
}

fn criterion_2() -> (Outcome, String) {
    let mut info = Vec::new();
    let mut run = || -> Outcome {
        let mut shown = 0;
        for (family, s) in builds() {
            let c = build(family, s, None).map_err(|e| e.to_string())?;
            let r = inertia_report(&c).map_err(|e| e.to_string())?;
            let eig = (r.eigensolver.plus as i64, r.eigensolver.minus as i64);
            ensure(eig == (r.trace_derived.plus, r.trace_derived.minus), || format!("{family} s={s}: {eig:?} vs {:?}", r.trace_derived))?;
            if s >= 3 {
                ensure(r.printed != r.trace_derived && !r.discrepancies.is_empty(), || format!("{family} s={s}: no discrepancy"))?;
                shown += 1;
            }
            let diff = r.trace_derived.plus - r.trace_derived.minus;
            if diff != family.stated_difference(s) {
                info.push(format!("{family} s={s}: n+ - n- = {diff}, stated {}", family.stated_difference(s)));
            }
        }
        Ok(format!("eigensolver matches trace-derived inertia for all 9 builds, {shown} printed-count discrepancies reported"))
    };
    let out = run();
    let line = if info.is_empty() {
        "stated differences all match".into()
    } else {
        format!("stated difference unattainable for {}", info.join("; "))
    };
    (out, line)
}

fn criterion_3() -> Outcome {
    let mut got = Vec::new();
    for t in 1..=3 {
        let g = build_thp(2, t).map_err(|e| e.to_string())?;
        let v = spectrum(g.graph.as_sym()).map_err(|e| e.to_string())?.singular_value(5).map_err(|e| e.to_string())?;
        ensure(g.graph.order() == 8 * t && (v - 2.0 * t as f64).abs() < TOL, || format!("t={t}: order {} λ*_5 = {v}", g.graph.order()))?;
        got.push(v);
    }
    let g = build_thp(3, 1).map_err(|e| e.to_string())?;
    let v = spectrum(g.graph.as_sym()).map_err(|e| e.to_string())?.singular_value(10).map_err(|e| e.to_string())?;
    ensure(g.graph.order() == 12 && (v - 2.0).abs() < TOL, || format!("s=3: order {} λ*_10 = {v}", g.graph.order()))?;
    Ok(format!("λ*_5 = {got:.9?} for t = 1..3, λ*_10 = {v:.9} at order 12"))
}

fn criterion_4() -> Outcome {
    let g = build_thck(2, Some(4), 1).map_err(|e| e.to_string())?;
    let s = spectrum(g.graph.as_sym()).map_err(|e| e.to_string())?;
    let kf = s.ky_fan(4).map_err(|e| e.to_string())?;
    let formula = 0.5 * 3.0 * 2.0 * 4.0;
    let bound = 0.5 * (1.0 + 2.0) * 8.0;
    ensure((kf - 12.0).abs() < TOL && formula == 12.0 && bound == 12.0, || format!("Ky Fan 4-norm {kf}"))?;
    let g = build_thck(4, None, 1).map_err(|e| e.to_string())?;
    let kf16 = spectrum(g.graph.as_sym()).map_err(|e| e.to_string())?.ky_fan(16).map_err(|e| e.to_string())?;
    ensure((kf16 - 40.0).abs() < TOL, || format!("Ky Fan 16-norm {kf16}"))?;
    Ok(format!("Ky Fan 4-norm {kf:.9} = bound 12, Ky Fan 16-norm {kf16:.9}"))
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    for (s, n) in [(2, Some(4)), (2, None), (4, None)] {
        for t in 1..=2 {
            let g = build_thck(s, n, t).map_err(|e| e.to_string())?;
            let a = g.graph.as_sym();
            let b = IntSymMatrix::from_fn(a.order(), |i, j| 1 - 2 * a.get(i, j)).map_err(|e| e.to_string())?;
            let b = PmOneMatrix::new(b).map_err(|e| e.to_string())?;
            let cert = sk_certify(&b, (s * s) as u64, CertifyMode::Exact).map_err(|e| e.to_string())?;
            ensure(cert.is_member(), || format!("s={s} t={t}: J - 2A not in S_{}", s * s))?;
            count += 1;
        }
    }
    Ok(format!("J - 2A certified in S_(s²) for {count} thck outputs"))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for t in 1..=2 {
        let pair = build_thng_pair(2, t).map_err(|e| e.to_string())?;
        let n = pair.graph.order();
        ensure(n == 8 * t, || format!("order {n}"))?;
        let sg = spectrum(pair.graph.as_sym()).map_err(|e| e.to_string())?;
        let sc = spectrum(pair.complement.as_sym()).map_err(|e| e.to_string())?;
        let x = 8.0 * t as f64 / 2.0;
        let up = sg.lambda(3).map_err(|e| e.to_string())? + sc.lambda(3).map_err(|e| e.to_string())?;
        let low = sg.lambda(n - 1).map_err(|e| e.to_string())?.abs() + sc.lambda(n - 1).map_err(|e| e.to_string())?.abs();
        ensure(up >= x - 2.0 - TOL && low >= x - TOL, || format!("t={t}: {up} vs {}, {low} vs {x}", x - 2.0))?;
        ensure(pair.verify(TOL).map_err(|e| e.to_string())?.passed(), || format!("t={t}: certificate claims fail"))?;
        parts.push(format!("t={t}: {up:.6} >= {}, {low:.6} >= {x}", x - 2.0));
    }
    Ok(parts.join("; "))
}

fn ints(s: &ExactSpectrum) -> Vec<(f64, u64)> {
    s.parts.iter().map(|(v, m)| (v.to_f64(), *m)).collect()
}

fn criterion_7() -> Outcome {
    let s = srg_spectrum(SrgParams::new(9, 4, 1, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(s.lambda(5) == Some(QSurd::int(1)), || format!("λ_5 = {:?}", s.lambda(5)))?;
    let (t, tc) = taylor_spectra(3).map_err(|e| e.to_string())?;
    ensure(ints(&t) == vec![(10.0, 1), (1.0, 20), (-5.0, 6)], || format!("T(3) = {:?}", ints(&t)))?;
    ensure(ints(&tc) == vec![(16.0, 1), (4.0, 6), (-2.0, 20)], || format!("complement = {:?}", ints(&tc)))?;
    let sh = seidel_shift_spectrum(3).map_err(|e| e.to_string())?;
    ensure(ints(&sh) == vec![(8.0, 6), (5.0, 1), (-4.0, 20)], || format!("shift = {:?}", ints(&sh)))?;
    for q in [3u64, 5, 7, 9, 11, 13] {
        let v = (q * q * q) as i64;
        let sh = seidel_shift_spectrum(q).map_err(|e| e.to_string())?;
        ensure(sh.power_sum(1) == QSurd::int(-v) && sh.power_sum(2) == QSurd::int(v * v), || format!("q={q} shift traces"))?;
        let (t, tc) = taylor_spectra(q).map_err(|e| e.to_string())?;
        let degrees = [taylor_params(q), taylor_complement_params(q)].map(|p| p.map(|p| p.k as i64));
        for (x, d) in [&t, &tc].into_iter().zip(degrees) {
            let d = d.map_err(|e| e.to_string())?;
            ensure(x.power_sum(1) == QSurd::int(0) && x.power_sum(2) == QSurd::int(v * d), || format!("q={q} adjacency traces"))?;
        }
    }
    Ok("golden spectra match, trace identities exact for q = 3..13".into())
}

fn criterion_8() -> Outcome {
    let exact = |k: u64| -> Result<QSurd, String> {
        match lb_ck_explicit(k).map_err(|e| e.to_string())?.remove(0).value {
            BoundValue::Exact(q) => Ok(q),
            v => Err(format!("k={k}: {v:?}")),
        }
    };
    let mut want: Vec<(u64, String)> = vec![(5, "2/9".into()), (6, "1/5".into())];
    want.extend((8..=10).map(|k| (k, "2/15".into())));
    want.extend((11..=15).map(|k| (k, "2/21".into())));
    for (k, w) in &want {
        let got = exact(*k)?.to_string();
        ensure(&got == w, || format!("c_{k} >= {got}, expected {w}"))?;
    }
    let c7 = exact(7)?.to_f64();
    ensure((c7 - (13f64.sqrt() + 1.0) / 26.0).abs() < 1e-15, || format!("c_7 >= {c7}"))?;
    for k in 5..=15 {
        let v = exact(k)?.to_f64();
        ensure(v >= 1.0 / (k as f64 - 0.5) - 1e-15, || format!("c_{k} >= {v} below 1/(k - 1/2)"))?;
        let u = ub_ck(k).map_err(|e| e.to_string())?[0].value.approx().unwrap_or(f64::NAN);
        ensure(v <= u, || format!("k={k}: lower {v} above upper {u}"))?;
    }
    for kind in [TableKind::Ck, TableKind::Ckstar, TableKind::Ng, TableKind::Kyfan] {
        let rows = table(kind, 200);
        if let Some(r) = rows.iter().find(|r| r.crosses()) {
            return Err(format!("{kind:?} bracket crosses at k={}", r.k));
        }
    }
    Ok("c_5..c_15 lower bounds reproduced, all >= 1/(k - 1/2), no bracket crosses for k <= 200".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let cfg = |n_max| LabConfig { n_max, samples: 0, seed: 0, tolerance: TOL };
    let mut runs: Vec<PropertyRun> = vec![check_lob(2, &cfg(7), 0).map_err(|e| e.to_string())?];
    runs.extend(check_weyl(&cfg(6), 0).map_err(|e| e.to_string())?);
    runs.extend(check_th1_spro(&cfg(6)).map_err(|e| e.to_string())?);
    let took = start.elapsed();
    let mut summary = Vec::new();
    for r in &runs {
        ensure(r.passed(), || format!("{}: {} violations, first {:?}", r.property_name, r.violations.len(), r.violations.first()))?;
        summary.push(format!("{} {} graphs", r.property_name, r.instances));
    }
    ensure(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("{}, zero violations, {:.1} s", summary.join(", "), took.as_secs_f64()))
}

fn criterion_10() -> Outcome {
    for (k, n) in [(2, 2), (4, 4)] {
        let r = search_sk(&SearchConfig::new(k, n, 10_000)).map_err(|e| e.to_string())?;
        ensure(r.status == SearchStatus::Found, || format!("k={k} order {n}: {:?}", r.status))?;
        let w = r.witness.ok_or("no witness")?;
        ensure(sk_certify(&w, k, CertifyMode::Exact).map_err(|e| e.to_string())?.is_member(), || "witness fails".into())?;
    }
    for n in 1..=24 {
        let r = search_sk(&SearchConfig::new(3, n, 10_000)).map_err(|e| e.to_string())?;
        ensure(r.status == SearchStatus::Obstructed && r.nodes_expanded == 0, || format!("k=3 order {n}: {:?}", r.status))?;
    }
    let r = search_sk(&SearchConfig::new(6, 6, 10_000_000)).map_err(|e| e.to_string())?;
    ensure(matches!(r.status, SearchStatus::Found | SearchStatus::Exhausted), || format!("S_6 order 6: {:?}", r.status))?;
    Ok(format!(
        "k=2/n=2 and k=4/n=4 found, k=3 obstructed at orders 1..24; evidence: S_6 at order 6 {:?} after {} nodes",
        r.status, r.nodes_expanded
    ))
}

fn main() {
    let (c2, info) = criterion_2();
    let results: Vec<(&str, Outcome)> = vec![
        ("1", criterion_1()),
        ("2", c2),
        ("3", criterion_3()),
        ("4", criterion_4()),
        ("5", criterion_5()),
        ("6", criterion_6()),
        ("7", criterion_7()),
        ("8", criterion_8()),
        ("9", criterion_9()),
        ("10", criterion_10()),
    ];
    let mut failed = 0;
    for (id, r) in &results {
        match r {
            Ok(msg) => println!("criterion {id}: PASS  {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id}: FAIL  {msg}");
            }
        }
        if *id == "2" {
            println!("criterion 2b: INFO  {info}");
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
