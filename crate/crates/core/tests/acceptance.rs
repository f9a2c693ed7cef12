//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

mod common;

use std::time::Instant;

use polycert::expected::Expected;
use polycert::hankel::objectives::{build_bound_polys, Variant};
use polycert::hankel::q00::q00_chain_verify;
use polycert::hankel::report::BoundReport;
use polycert::hankel::theorems::{verify_h2_theorem, verify_h3_theorem, H3Outcome};
use polycert::maminda::{phi_report, re_positivity_check, ExtremalKind, PhiSpec};
use polycert::parallel::Execution;
use polycert::rational::{int, rat, Rational};
use polycert::reproduce::{computed_tables, extremal_check, ComputedTables, QUADRANT_NAMES};
use polycert::series::DEFAULT_ORDER;
use polycert::MultiPoly;

type Check = Result<(), String>;
type Criterion = (&'static str, fn(&Ctx) -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same_matrices(label: &str, want: &[Vec<Vec<Rational>>], got: &polycert::bernstein::BernsteinTensor) -> Check {
    ensure(want.len() == got.degrees()[2] + 1, || format!("{label}: layer count"))?;
    for (k, m) in want.iter().enumerate() {
        let layer = got.layer(k);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let g = layer.get(i).and_then(|r| r.get(j));
                ensure(g == Some(v), || format!("{label} M_{k}[{i}][{j}]: expected {v}, got {g:?}"))?;
            }
        }
    }
    Ok(())
}

fn case<'a>(r: &'a BoundReport, name: &str) -> Result<&'a polycert::hankel::report::SubResult, String> {
    r.cases.iter().find(|c| c.name == name).ok_or_else(|| format!("{}: no case {name:?}", r.title))
}

fn holds_with(r: &BoundReport, name: &str, value: Option<&str>) -> Check {
    let c = case(r, name)?;
    ensure(c.holds, || format!("{name} does not hold: {}", c.detail))?;
    if let Some(v) = value {
        ensure(c.value.as_deref() == Some(v), || format!("{name}: expected {v}, got {:?}", c.value))?;
    }
    Ok(())
}

struct Ctx {
    expected: Expected,
    tables: ComputedTables,
    h3: H3Outcome,
}

fn criterion_1(c: &Ctx) -> Check {
    let (max, arg) = c.tables.rtilde_whole.max();
    ensure(*max == int(17) && arg == [1, 1, 0], || format!("max {max} at {arg:?}"))?;
    same_matrices("R~", &c.expected.rtilde_whole.matrices, &c.tables.rtilde_whole)?;
    let count: usize = c.expected.rtilde_whole.matrices.iter().flatten().map(Vec::len).sum();
    ensure(count == 140, || format!("{count} entries compared"))
}

fn criterion_2(c: &Ctx) -> Check {
    let grid = c.tables.grid_maxima();
    ensure(grid.len() == 64, || format!("{} boxes", grid.len()))?;
    ensure(grid[0] == rat(1025, 64), || format!("M00 = {}", grid[0]))?;
    let other = grid[1..].iter().max().cloned().unwrap_or_default();
    ensure(other == rat(83341001, 5242880), || format!("other max {other}"))?;
    for (n, (want, got)) in c.expected.rtilde_grid.concat().iter().zip(&grid).enumerate() {
        ensure(want == got, || format!("M_{}{}: expected {want}, got {got}", n / 8, n % 8))?;
    }
    Ok(())
}

fn criterion_3(c: &Ctx) -> Check {
    let q = q00_chain_verify(Variant::Printed, Execution::Parallel).map_err(|e| e.to_string())?;
    ensure(q.is_proved(), || format!("chain fails at {:?}", q.first_failure()))?;
    holds_with(&q, "O(1/8)", Some("995753/4096"))?;
    holds_with(&q, "L(1/8)", Some("26167/2048"))?;
    holds_with(&q, "P floor", Some("237/32"))?;
    holds_with(&q, "V discriminant", Some("-666"))?;
    let d = q00_chain_verify(Variant::Derived, Execution::Parallel).map_err(|e| e.to_string())?;
    ensure(d.is_proved(), || format!("derived chain fails at {:?}", d.first_failure()))?;
    for v in [Variant::Printed, Variant::Derived] {
        holds_with(&c.h3.report, &format!("R1 <= 16 ({v})"), Some("16"))?;
        holds_with(&c.h3.report, &format!("R1 attained ({v})"), None)?;
    }
    let r1 = &build_bound_polys(Variant::Derived).map_err(|e| e.to_string())?.r1;
    let at = r1.partial_eval("p", &int(0)).and_then(|q| q.partial_eval("x", &int(0))).map_err(|e| e.to_string())?;
    ensure(at == MultiPoly::constant(&["t"], int(16)), || format!("R1(0,0,t) = {at}"))
}

fn criterion_4(c: &Ctx) -> Check {
    let (max, arg) = c.tables.r2tilde_whole.max();
    ensure(*max == rat(84, 5) && arg == [3, 3, 0], || format!("max {max} at {arg:?}"))?;
    same_matrices("R~2", &c.expected.r2tilde_whole.matrices, &c.tables.r2tilde_whole)?;
    let want = [rat(1571, 128), rat(1761, 128), rat(9667, 768), rat(7939, 576)];
    for ((name, t), (w, e)) in QUADRANT_NAMES
        .iter()
        .zip(&c.tables.r2tilde_quadrants)
        .zip(want.iter().zip(&c.expected.r2tilde_quadrants))
    {
        ensure(t.max().0 == w, || format!("quadrant {name}: max {}", t.max().0))?;
        same_matrices(&format!("R~2 quadrant {name}"), &e.matrices, t)?;
    }
    ensure(c.h3.r2_bound_printed == rat(7939, 576), || format!("R2 bound {}", c.h3.r2_bound_printed))?;
    holds_with(&c.h3.report, &format!("R2 bound ({})", Variant::Printed), Some("7939/576"))
}

fn criterion_5(_: &Ctx) -> Check {
    let r = verify_h2_theorem(Execution::Parallel).map_err(|e| e.to_string())?;
    ensure(r.is_proved(), || format!("fails at {:?}", r.first_failure()))?;
    ensure(r.claimed_bound == rat(1, 4), || format!("bound {}", r.claimed_bound))?;
    for name in ["c1 = 0", "interior split", "A~C~ >= 0", "|B~| >= 2(1-|C~|)", "F~ <= 3"] {
        holds_with(&r, name, None)?;
    }
    holds_with(&r, "F~ rewrite", None)?;
    holds_with(&r, "c1 = 1", Some("7/48"))?;
    holds_with(&r, "conclusion", Some("1/4"))
}

fn criterion_6(_: &Ctx) -> Check {
    ensure(DEFAULT_ORDER == 16, || format!("series order {DEFAULT_ORDER}"))?;
    for (m, n) in [(1, 2), (1, 3), (2, 5)] {
        let spec = PhiSpec::new(m, n).map_err(|e| e.to_string())?;
        let h2 = extremal_check(ExtremalKind::H2, &spec).map_err(|e| e.to_string())?;
        let a5 = Rational::new((n + 2 * m).into(), (8 * n).into()).to_string();
        ensure(h2.coeffs == ["0", "1/2", "0", a5.as_str()], || format!("H2 m={m} n={n}: {:?}", h2.coeffs))?;
        ensure(h2.hankel == "-1/4" && h2.residual_vanishes, || format!("H2 m={m} n={n}: {h2:?}"))?;
        let h3 = extremal_check(ExtremalKind::H3, &spec).map_err(|e| e.to_string())?;
        ensure(h3.coeffs[2] == "1/3", || format!("H3 m={m} n={n}: a4 = {}", h3.coeffs[2]))?;
        ensure(h3.hankel == "-1/9" && h3.residual_vanishes, || format!("H3 m={m} n={n}: {h3:?}"))?;
    }
    Ok(())
}

fn criterion_7(_: &Ctx) -> Check {
    for (m, n) in [(1, 2), (1, 3), (2, 5)] {
        let r = phi_report(&PhiSpec::new(m, n).map_err(|e| e.to_string())?);
        ensure(r.all_pass() && r.admissible, || format!("m={m} n={n}: {r:?}"))?;
    }
    let one = PhiSpec::new(1, 1).map_err(|e| e.to_string())?;
    let r = phi_report(&one);
    let w = r.univalence.witness.as_ref().ok_or("no witness for m = n = 1")?;
    ensure(!r.univalence.univalent && w.verify(&one), || format!("witness {w:?}"))?;
    let below = re_positivity_check(&PhiSpec::new(85, 100).map_err(|e| e.to_string())?);
    let above = re_positivity_check(&PhiSpec::new(86, 100).map_err(|e| e.to_string())?);
    ensure(below.positive && !above.positive, || format!("85/100: {below:?}, 86/100: {above:?}"))
}

fn criterion_8(_: &Ctx) -> Check {
    common::check_enclosure_soundness(11, 200).map_err(|e| format!("enclosure: {e}"))?;
    common::check_disk_max_grid(31, 30).map_err(|e| format!("disk maximum: {e}"))?;
    common::check_hankel_identities(32, 100).map_err(|e| format!("hankel identities: {e}"))?;
    common::check_replay_and_tamper().map_err(|e| format!("replay: {e}"))
}

fn main() {
    let start = Instant::now();
    let exec = Execution::Parallel;
    let ctx = match (computed_tables(exec), verify_h3_theorem(exec)) {
        (Ok(tables), Ok(h3)) => Ctx {
            expected: Expected::embedded(),
            tables,
            h3,
        },
        (Err(e), _) | (_, Err(e)) => {
            println!("acceptance setup failed: {e}");
            std::process::exit(1);
        }
    };
    let criteria: [Criterion; 8] = [
        ("R~ whole-cube Bernstein matrices", criterion_1),
        ("R~ 8x8x1 grid maxima", criterion_2),
        ("Q00 chain and R1 <= 16", criterion_3),
        ("R~2 whole cube, quadrants and R2 bound", criterion_4),
        ("|H2(2)| <= 1/4", criterion_5),
        ("extremal functions", criterion_6),
        ("phi property gates", criterion_7),
        (
            "property suites (enclosure, disk maximum within 1e-3, Hankel identities, replay)",
            criterion_8,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&ctx) {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {}/8 passed in {:.1?}", 8 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
