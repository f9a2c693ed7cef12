mod common;

use common::{check_enclosure_soundness, rand_box, rand_poly, rng};
use num_traits::Zero;
use polycert::bernstein::{
    certify_upper_bound, enclosure_bounds, replay, subdivide, to_bernstein, Certificate, Policy, Region,
    SubProofRegistry, Verdict,
};
use polycert::parallel::Execution;
use polycert::rational::{int, rat, Rational};
use polycert::{MultiPoly, PolyRing};

const VARS: [&str; 3] = ["x", "y", "z"];

#[test]
fn enclosure_contains_grid_values() {
    check_enclosure_soundness(11, 200).unwrap();
}

#[test]
fn corners_interpolate() {
    let mut r = rng(12);
    for _ in 0..50 {
        let p = rand_poly(&mut r, &VARS, 3);
        let region = rand_box(&mut r, 3);
        let d = p.degree_bounds().to_vec();
        let bt = to_bernstein(&p, &d, &region).unwrap();
        for mask in 0..8u32 {
            let upper: Vec<bool> = (0..3).map(|k| mask >> k & 1 == 1).collect();
            let idx: Vec<usize> = (0..3).map(|k| if upper[k] { d[k] } else { 0 }).collect();
            assert_eq!(bt.get(&idx), &p.eval(&region.corner(&upper)).unwrap());
        }
    }
}

#[test]
fn subdivision_refines_the_enclosure() {
    let mut r = rng(13);
    for _ in 0..40 {
        let p = rand_poly(&mut r, &VARS, 3);
        let region = rand_box(&mut r, 3);
        let d = p.degree_bounds().to_vec();
        let (lo, hi) = enclosure_bounds(&to_bernstein(&p, &d, &region).unwrap());
        let parts = subdivide(&p, &d, &region, &[2, 3, 1], Execution::Sequential).unwrap();
        assert_eq!(parts.len(), 6);
        let mut covered = Rational::zero();
        let mask = vec![true; 3];
        for (b, t) in &parts {
            let (l, h) = enclosure_bounds(t);
            assert!(l >= lo && h <= hi);
            assert_eq!(t, &to_bernstein(&p, &d, b).unwrap());
            covered += b.measure(&mask);
        }
        assert_eq!(covered, region.measure(&mask));
    }
}

#[test]
fn degree_elevation_keeps_the_range_sound() {
    let p = MultiPoly::parse(&["x"], "x - x^2").unwrap();
    let unit = Region::unit(1);
    let (_, hi2) = enclosure_bounds(&to_bernstein(&p, &[2], &unit).unwrap());
    let (_, hi5) = enclosure_bounds(&to_bernstein(&p, &[5], &unit).unwrap());
    assert_eq!(hi2, rat(1, 2));
    assert!(hi5 >= rat(1, 4) && hi5 <= hi2);
    assert!(to_bernstein(&p, &[1], &unit).is_err());
}

fn proved_certificate() -> Certificate {
    let p = PolyRing::new(&["x", "y"]).parse("1 - x^2 - y^2 + x*y/2").unwrap();
    let region = Region::from_bounds(vec![(int(-1), int(1)), (int(-1), int(1))]).unwrap();
    let cert = certify_upper_bound(&p, &region, &rat(21, 20), &Policy::adaptive(10), &SubProofRegistry::new()).unwrap();
    assert_eq!(cert.verdict, Verdict::Proved);
    assert!(cert.nodes.len() > 4);
    cert
}

fn rejected(cert: &Certificate) -> bool {
    replay(cert, &SubProofRegistry::new()).is_err()
}

#[test]
fn replay_accepts_and_detects_tampering() {
    let cert = proved_certificate();
    assert_eq!(replay(&cert, &SubProofRegistry::new()), Ok(Verdict::Proved));
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(replay(&back, &SubProofRegistry::new()), Ok(Verdict::Proved));

    let leaf = cert.leaves().next().unwrap().index;

    let mut t = cert.clone();
    t.nodes[leaf].max_beta += rat(1, 1000);
    assert!(rejected(&t), "altered maximum");

    let mut t = cert.clone();
    t.bound = rat(1, 2);
    assert!(rejected(&t), "tightened bound");

    let mut t = cert.clone();
    t.objective = &t.objective + &MultiPoly::constant(&["x", "y"], int(1));
    assert!(rejected(&t), "objective changed under the same hash");

    let mut t = cert.clone();
    t.objective_hash = t.objective.content_hash();
    t.objective = &t.objective + &MultiPoly::constant(&["x", "y"], rat(1, 1000));
    t.objective_hash = t.objective.content_hash();
    assert!(rejected(&t), "objective changed with a fresh hash");

    let mut t = cert.clone();
    let parent = t.nodes[leaf].parent.unwrap();
    t.nodes[parent].children.retain(|&c| c != leaf);
    assert!(rejected(&t), "dropped child");
}

#[test]
fn replay_rejects_coverage_gaps() {
    let cert = proved_certificate();
    let split = cert.nodes.iter().find(|n| n.verdict == Verdict::Split).unwrap().index;
    let child = cert.nodes[split].children[0];
    let mut t = cert.clone();
    let k = (0..2).find(|&k| !t.nodes[child].region.interval(k).is_degenerate()).unwrap();
    let iv = t.nodes[child].region.interval(k).clone();
    let shrunk = Region::new(
        (0..2)
            .map(|j| {
                if j == k {
                    polycert::bernstein::Interval::new(iv.lo.clone(), iv.midpoint()).unwrap()
                } else {
                    t.nodes[child].region.interval(j).clone()
                }
            })
            .collect(),
    );
    t.nodes[child].region = shrunk;
    let err = replay(&t, &SubProofRegistry::new()).unwrap_err();
    assert!(!err.path.is_empty());
}

#[test]
fn failed_certificates_carry_a_checked_witness() {
    let p = MultiPoly::parse(&["x"], "x^2").unwrap();
    let cert = certify_upper_bound(&p, &Region::unit(1), &rat(1, 2), &Policy::adaptive(4), &SubProofRegistry::new()).unwrap();
    assert_eq!(cert.verdict, Verdict::Failed);
    assert_eq!(replay(&cert, &SubProofRegistry::new()), Ok(Verdict::Failed));
    let mut t = cert.clone();
    let f = t.nodes.iter().position(|n| n.verdict == Verdict::Failed).unwrap();
    t.nodes[f].witness.as_mut().unwrap().value = int(0);
    assert!(rejected(&t));
}

#[test]
fn execution_mode_does_not_change_certificates() {
    let p = PolyRing::new(&["x", "y"]).parse("1 - x^2 - y^2 + x*y/2").unwrap();
    let region = Region::from_bounds(vec![(int(-1), int(1)), (int(-1), int(1))]).unwrap();
    let reg = SubProofRegistry::new();
    let seq = certify_upper_bound(&p, &region, &rat(21, 20), &Policy::adaptive(10).with_exec(Execution::Sequential), &reg).unwrap();
    let par = certify_upper_bound(&p, &region, &rat(21, 20), &Policy::adaptive(10).with_exec(Execution::Parallel), &reg).unwrap();
    assert_eq!(seq.to_json(), par.to_json());
}
