#![allow(dead_code)]

use num_traits::ToPrimitive;
use polycert::bernstein::Region;
use polycert::rational::{gauss, int, rat, GaussianRational, Rational};
use polycert::MultiPoly;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rational(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(r.gen_range(-num..=num), r.gen_range(1..=den))
}

/// A rational in `[0, 1]` with denominator `den`.
pub fn rand_unit(r: &mut ChaCha8Rng, den: i64) -> Rational {
    rat(r.gen_range(0..=den), den)
}

pub fn rand_poly(r: &mut ChaCha8Rng, vars: &[&str], max_deg: usize) -> MultiPoly {
    let n = vars.len();
    let terms: Vec<(Vec<usize>, Rational)> = (0..r.gen_range(1..=8))
        .map(|_| {
            let e = (0..n).map(|_| r.gen_range(0..=max_deg)).collect();
            (e, rand_rational(r, 9, 4))
        })
        .collect();
    MultiPoly::from_terms(vars, terms).unwrap()
}

pub fn rand_box(r: &mut ChaCha8Rng, dim: usize) -> Region {
    let bounds = (0..dim)
        .map(|_| {
            let lo = rand_rational(r, 4, 4);
            let w = rat(r.gen_range(1..=8), r.gen_range(1..=4));
            (lo.clone(), lo + w)
        })
        .collect();
    Region::from_bounds(bounds).unwrap()
}

/// A point `modulus * (cos, sin)` with rational coordinates, from the
/// rational parametrization of the unit circle.
pub fn on_circle(r: &mut ChaCha8Rng, modulus: &Rational) -> GaussianRational {
    let s = rand_rational(r, 12, 5);
    let d = int(1) + &s * &s;
    let (c, si) = ((int(1) - &s * &s) / &d, int(2) * &s / &d);
    let (c, si) = match r.gen_range(0..4) {
        0 => (c, si),
        1 => (-si, c),
        2 => (-c, -si),
        _ => (si, -c),
    };
    gauss(modulus * c, modulus * si)
}

pub fn rand_disk(r: &mut ChaCha8Rng) -> GaussianRational {
    let m = rand_unit(r, 16);
    on_circle(r, &m)
}

pub fn f64_of(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}

/// Dense `f64` evaluation, independent of the exact evaluator.
pub fn eval_f64(p: &MultiPoly, pt: &[f64]) -> f64 {
    p.terms()
        .map(|(e, c)| {
            e.iter()
                .zip(pt)
                .fold(f64_of(c), |acc, (&k, &x)| acc * x.powi(k as i32))
        })
        .sum()
}

/// `max |A + Bz + Cz^2| + 1 - |z|^2` over a polar grid of the closed disk.
pub fn disk_grid_max(a: f64, b: f64, c: f64, n: usize) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let rr = i as f64 / n as f64;
        for j in 0..n {
            let th = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
            let (zr, zi) = (rr * th.cos(), rr * th.sin());
            let (z2r, z2i) = (zr * zr - zi * zi, 2.0 * zr * zi);
            let re = a + b * zr + c * z2r;
            let im = b * zi + c * z2i;
            let v = (re * re + im * im).sqrt() + 1.0 - rr * rr;
            if v > best {
                best = v;
            }
        }
    }
    best
}

pub const DISK_MAX_TOLERANCE: f64 = 1e-3;
pub const DISK_MAX_GRID: usize = 400;
pub const ENCLOSURE_GRID: usize = 20;

/// Every polynomial value on a `20^3` grid lies inside its Bernstein enclosure.
pub fn check_enclosure_soundness(seed: u64, polys: usize) -> Result<(), String> {
    use polycert::bernstein::{enclosure_bounds, to_bernstein};
    let mut r = rng(seed);
    let vars = ["x", "y", "z"];
    for _ in 0..polys {
        let p = rand_poly(&mut r, &vars, 3);
        let region = rand_box(&mut r, 3);
        let bt = to_bernstein(&p, p.degree_bounds(), &region).map_err(|e| e.to_string())?;
        let (lo, hi) = enclosure_bounds(&bt);
        let (lo, hi) = (f64_of(&lo), f64_of(&hi));
        let iv: Vec<(f64, f64)> = region.intervals().iter().map(|i| (f64_of(&i.lo), f64_of(&i.hi))).collect();
        let at = |k: usize, a: usize| iv[k].0 + (iv[k].1 - iv[k].0) * a as f64 / (ENCLOSURE_GRID - 1) as f64;
        let tol = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
        for a in 0..ENCLOSURE_GRID {
            for b in 0..ENCLOSURE_GRID {
                for c in 0..ENCLOSURE_GRID {
                    let v = eval_f64(&p, &[at(0, a), at(1, b), at(2, c)]);
                    if v < lo - tol || v > hi + tol {
                        return Err(format!("{p} on {region}: {v} outside [{lo}, {hi}]"));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `y_upper` is never below the polar-grid maximum by more than the tolerance.
pub fn check_disk_max_grid(seed: u64, triples: usize) -> Result<(), String> {
    use polycert::hankel::disk_max::{y_upper, YInputs};
    let mut r = rng(seed);
    for _ in 0..triples {
        let (a, b, c) = (rand_rational(&mut r, 12, 6), rand_rational(&mut r, 12, 6), rand_rational(&mut r, 12, 6));
        let y = y_upper(&YInputs::new(a.clone(), b.clone(), c.clone()));
        let grid = disk_grid_max(f64_of(&a), f64_of(&b), f64_of(&c), DISK_MAX_GRID);
        if grid > y.value.to_f64() + DISK_MAX_TOLERANCE {
            return Err(format!("Y({a}, {b}, {c}) = {} ({:?}) below the grid maximum {grid}", y.value, y.case));
        }
    }
    Ok(())
}

/// Parametrized and direct routes give the same `H2(2)` and `H3(1)`.
pub fn check_hankel_identities(seed: u64, trials: usize) -> Result<(), String> {
    use polycert::hankel::coeffs::{h2_parametrized, h3_parametrized, hankel_from_params};
    use polycert::schwarz::SchwarzParams;
    let mut r = rng(seed);
    for _ in 0..trials {
        let sp = SchwarzParams::new(rand_unit(&mut r, 16), rand_disk(&mut r), rand_disk(&mut r), rand_disk(&mut r))
            .map_err(|e| e.to_string())?;
        let t = rat(r.gen_range(1..=12), 24);
        let (h2, h3) = hankel_from_params(&sp, &t).map_err(|e| e.to_string())?;
        if h2 != h2_parametrized(&sp, &t).map_err(|e| e.to_string())? {
            return Err(format!("H2 differs at {sp:?}, t = {t}"));
        }
        if h3 != h3_parametrized(&sp, &t).map_err(|e| e.to_string())? {
            return Err(format!("H3 differs at {sp:?}, t = {t}"));
        }
    }
    Ok(())
}

/// A proved certificate replays, and altered copies are rejected.
pub fn check_replay_and_tamper() -> Result<(), String> {
    use polycert::bernstein::{certify_upper_bound, replay, Policy, SubProofRegistry, Verdict};
    let reg = SubProofRegistry::new();
    let p = polycert::PolyRing::new(&["x", "y"]).parse("1 - x^2 - y^2 + x*y/2").map_err(|e| e.to_string())?;
    let region = Region::from_bounds(vec![(int(-1), int(1)), (int(-1), int(1))]).map_err(|e| e.to_string())?;
    let cert = certify_upper_bound(&p, &region, &rat(21, 20), &Policy::adaptive(10), &reg).map_err(|e| e.to_string())?;
    if replay(&cert, &reg) != Ok(Verdict::Proved) {
        return Err("honest certificate did not replay".into());
    }
    let leaf = cert.leaves().next().map(|n| n.index).ok_or("no leaves")?;
    let mut t = cert.clone();
    t.nodes[leaf].max_beta += rat(1, 1000);
    if replay(&t, &reg).is_ok() {
        return Err("altered maximum accepted".into());
    }
    let mut t = cert.clone();
    t.bound = rat(1, 2);
    if replay(&t, &reg).is_ok() {
        return Err("tightened bound accepted".into());
    }
    let mut t = cert;
    let parent = t.nodes[leaf].parent.ok_or("leaf is the root")?;
    t.nodes[parent].children.retain(|&c| c != leaf);
    if replay(&t, &reg).is_ok() {
        return Err("coverage gap accepted".into());
    }
    Ok(())
}
