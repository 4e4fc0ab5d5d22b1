//! Acceptance suite. Runs without the libtest harness so that one
//! `PASS`/`FAIL` line per criterion is always printed; exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use repknot::cohomology::cocycle_report;
use repknot::corpus::{default_corpus, Corpus};
use repknot::diagram::goeritz_pieces;
use repknot::dihedral::{enumerate_classes, lift_to_su2};
use repknot::doublecover::{b_map, h1_sigma2, max_commutator_deviation_so3};
use repknot::presentation::{alexander_polynomial, invariants, wirtinger, WirtingerPresentation};
use repknot::variety::{character_distance, scan, Classification, ScanOptions};
use repknot_cli::without_timing;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn presentation(c: &Corpus, name: &str) -> WirtingerPresentation {
    wirtinger(&c.get(name).unwrap().diagram)
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, format!("{what} took {e:?}, limit {limit:?}"))
}

fn klassen_count(c: &Corpus) -> Check {
    let expected = [
        ("0_1", 0),
        ("3_1", 1),
        ("4_1", 2),
        ("5_1", 2),
        ("5_2", 3),
        ("6_1", 4),
        ("7_4", 7),
    ];
    for (name, count) in expected {
        let t = Instant::now();
        let e = c.get(name).unwrap();
        let det = invariants(&e.diagram).map_err(|e| e.to_string())?.det;
        let n = enumerate_classes(&wirtinger(&e.diagram), det as u64)
            .map_err(|e| e.to_string())?
            .len();
        within(t, Duration::from_secs(1), name)?;
        ensure(n == count, format!("{name}: {n} classes, expected {count}"))?;
        ensure(
            n as u128 == (det - 1) / 2,
            format!("{name}: {n} ≠ (det − 1)/2"),
        )?;
    }
    Ok("class counts 0 1 2 2 3 4 7".into())
}

fn trefoil_shape(c: &Corpus) -> Check {
    let p = presentation(c, "3_1");
    let mut min_gap = f64::INFINITY;
    for rng in [1, 2, 3] {
        let t = Instant::now();
        let s = scan(&p, ScanOptions::new(200, rng, true)).map_err(|e| e.to_string())?;
        within(t, Duration::from_secs(30), "trefoil scan")?;
        ensure(
            s.count(Classification::Reducible) == 1,
            format!(
                "rng {rng}: {} reducible clusters",
                s.count(Classification::Reducible)
            ),
        )?;
        let irr: Vec<_> = s.irreducible().collect();
        ensure(
            irr.len() == 1,
            format!("rng {rng}: {} irreducible clusters", irr.len()),
        )?;
        let k = irr[0];
        ensure(
            k.classification == Classification::Dihedral,
            format!("rng {rng}: not dihedral"),
        )?;
        ensure(
            k.dimension == 1,
            format!("rng {rng}: dimension {}", k.dimension),
        )?;
        ensure(
            k.rank_gap >= 1e2,
            format!("rng {rng}: rank gap {:.3e}", k.rank_gap),
        )?;
        min_gap = min_gap.min(k.rank_gap);
    }
    Ok(format!(
        "point + dihedral circle for rng 1,2,3; min rank gap {min_gap:.1e}"
    ))
}

fn unknot_rigidity(c: &Corpus) -> Check {
    let s =
        scan(&presentation(c, "0_1"), ScanOptions::new(200, 1, true)).map_err(|e| e.to_string())?;
    let n = s.irreducible().count();
    ensure(n == 0, format!("{n} irreducible clusters"))?;
    Ok(format!(
        "{} converged seeds, no irreducible cluster",
        s.n_converged
    ))
}

fn torus_knot_refutation(c: &Corpus) -> Check {
    let t = Instant::now();
    let s = scan(&presentation(c, "8_19"), ScanOptions::new(200, 1, true))
        .map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(60), "8_19 scan")?;
    let other = s.count(Classification::OtherIrreducible);
    ensure(other >= 1, "no non-dihedral irreducible cluster")?;
    for k in s.irreducible() {
        let r = k.routes.ok_or("irreducible cluster without routes")?;
        ensure(
            r.involution == Some(r.frame),
            format!("frame {} vs involution {:?}", r.frame, r.involution),
        )?;
    }
    Ok(format!(
        "{other} non-dihedral irreducible clusters; frame and involution tests agree"
    ))
}

fn nondegeneracy(c: &Corpus) -> Check {
    let mut n = 0;
    let mut min_gap = f64::INFINITY;
    for name in ["3_1", "4_1", "5_1", "5_2"] {
        let p = presentation(c, name);
        let det = invariants(&c.get(name).unwrap().diagram).unwrap().det;
        for k in enumerate_classes(&p, det as u64).map_err(|e| e.to_string())? {
            let r = cocycle_report(&lift_to_su2(&k, &p), &p).map_err(|e| format!("{name}: {e}"))?;
            ensure(r.dim_h1 == 1, format!("{name}: dim H¹ = {}", r.dim_h1))?;
            ensure(r.restriction_onto, format!("{name}: restriction not onto"))?;
            ensure(
                r.rank_gap >= 1e2,
                format!("{name}: rank gap {:.3e}", r.rank_gap),
            )?;
            min_gap = min_gap.min(r.rank_gap);
            n += 1;
        }
    }
    Ok(format!(
        "{n} classes with H¹ = 1 and onto restriction; min rank gap {min_gap:.1e}"
    ))
}

fn congruences(c: &Corpus) -> Check {
    for e in &c.entries {
        let r = invariants(&e.diagram).map_err(|x| format!("{}: {x}", e.name))?;
        let det = r.det as i128;
        let sign = if (r.sigma / 2).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        if r.components == 1 {
            ensure(
                (det - sign).rem_euclid(4) == 0,
                format!("{}: det mod 4", e.name),
            )?;
            ensure(
                r.alexander_at_minus1 == sign * det,
                format!("{}: Δ(−1)", e.name),
            )?;
        }
        if r.components == 2 {
            let lk = e.diagram.linking_number(0, 1).unwrap() as i128;
            ensure(
                (det - 2 * lk).rem_euclid(4) == 0,
                format!("{}: det ≢ 2 lk mod 4", e.name),
            )?;
        }
        let h = h1_sigma2(&e.diagram).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(
            h.mod2_rank == r.components - 1,
            format!("{}: mod 2 rank {}", e.name, h.mod2_rank),
        )?;
    }
    Ok(format!("{} diagrams", c.entries.len()))
}

fn cross_oracles(c: &Corpus) -> Check {
    let mut knots = 0;
    let mut matched = 0;
    for e in &c.entries {
        let p = wirtinger(&e.diagram);
        let fox = alexander_polynomial(&p)
            .unwrap()
            .eval_at_minus_one()
            .unsigned_abs();
        let goeritz = goeritz_pieces(&e.diagram)
            .unwrap()
            .first()
            .map(|g| g.determinant().unwrap().unsigned_abs())
            .unwrap_or(1);
        if e.diagram.n_components == 1 {
            ensure(
                fox == goeritz,
                format!("{}: Fox {fox} vs Goeritz {goeritz}", e.name),
            )?;
            knots += 1;
        }
        let det = fox;
        if det == 0 || det > 15 {
            continue;
        }
        let lifts: Vec<_> = enumerate_classes(&p, det as u64)
            .unwrap()
            .iter()
            .map(|k| lift_to_su2(k, &p))
            .collect();
        let s = scan(&p, ScanOptions::new(300, 4, true)).map_err(|x| x.to_string())?;
        let dihedral: Vec<_> = s
            .clusters
            .iter()
            .filter(|k| k.classification == Classification::Dihedral)
            .collect();
        ensure(
            dihedral.len() == lifts.len(),
            format!(
                "{}: {} clusters vs {} classes",
                e.name,
                dihedral.len(),
                lifts.len()
            ),
        )?;
        let mut hit = BTreeSet::new();
        for k in &dihedral {
            let near: Vec<usize> = (0..lifts.len())
                .filter(|&i| {
                    character_distance(&lifts[i].character, &k.representative.character) < 1e-6
                })
                .collect();
            ensure(
                near.len() == 1,
                format!("{}: cluster matches {} classes", e.name, near.len()),
            )?;
            hit.insert(near[0]);
        }
        ensure(
            hit.len() == lifts.len(),
            format!("{}: not a bijection", e.name),
        )?;
        matched += lifts.len();
    }
    Ok(format!(
        "{knots} knot determinants agree; {matched} classes matched to clusters"
    ))
}

fn b_image(c: &Corpus) -> Check {
    let mut witnesses = 0;
    let mut min_dev = f64::INFINITY;
    for e in &c.entries {
        let p = wirtinger(&e.diagram);
        let det = invariants(&e.diagram).unwrap().det;
        let s = scan(&p, ScanOptions::new(200, 1, true)).map_err(|x| x.to_string())?;
        for k in s
            .clusters
            .iter()
            .filter(|k| k.classification == Classification::OtherIrreducible)
        {
            let b = b_map(&k.representative, &p, det).map_err(|x| format!("{}: {x}", e.name))?;
            let dev = max_commutator_deviation_so3(&b);
            ensure(
                dev > 1e-3,
                format!("{}: commutator deviation {dev:.3e}", e.name),
            )?;
            min_dev = min_dev.min(dev);
            witnesses += 1;
        }
    }
    ensure(
        witnesses >= 1,
        "no non-dihedral irreducible anywhere in the corpus",
    )?;
    Ok(format!(
        "{witnesses} witnesses, min commutator deviation {min_dev:.3}"
    ))
}

fn cli_json(args: &[&str], threads: Option<&str>) -> Result<String, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_repknot"));
    cmd.args(args).arg("--json");
    if let Some(n) = threads {
        cmd.env("REPKNOT_THREADS", n);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!("{args:?} exited {:?}", out.status.code()),
    )?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    without_timing(&text).ok_or_else(|| format!("{args:?}: output is not a JSON envelope"))
}

fn determinism() -> Check {
    let mut runs = vec![];
    for rng in ["1", "2", "3"] {
        runs.push(vec![
            "scan",
            "--input",
            "3_1",
            "--seeds",
            "200",
            "--rng",
            rng,
            "--pin-meridian",
        ]);
    }
    runs.push(vec![
        "scan",
        "--input",
        "U",
        "--seeds",
        "200",
        "--rng",
        "1",
        "--pin-meridian",
    ]);
    runs.push(vec![
        "simplicity",
        "--input",
        "8_19",
        "--seeds",
        "200",
        "--rng",
        "1",
        "--pin-meridian",
    ]);
    runs.push(vec![
        "report",
        "--input",
        "BR[2;1,1,1]",
        "--seeds",
        "200",
        "--rng",
        "7",
    ]);
    for args in &runs {
        let a = cli_json(args, None)?;
        let b = cli_json(args, Some("1"))?;
        ensure(a == b, format!("{args:?}: reports differ"))?;
    }
    Ok(format!(
        "{} invocations byte-identical across runs and thread counts",
        runs.len()
    ))
}

fn main() {
    let c = default_corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 dihedral class count", Box::new(|| klassen_count(&c))),
        ("2 trefoil variety shape", Box::new(|| trefoil_shape(&c))),
        ("3 unknot rigidity", Box::new(|| unknot_rigidity(&c))),
        (
            "4 torus knot T(3,4) not simple",
            Box::new(|| torus_knot_refutation(&c)),
        ),
        (
            "5 nondegeneracy of dihedral classes",
            Box::new(|| nondegeneracy(&c)),
        ),
        ("6 congruence suite", Box::new(|| congruences(&c))),
        ("7 cross-oracle equivalence", Box::new(|| cross_oracles(&c))),
        (
            "8 non-abelian branched cover image",
            Box::new(|| b_image(&c)),
        ),
        ("9 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let r = check();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS  criterion {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
