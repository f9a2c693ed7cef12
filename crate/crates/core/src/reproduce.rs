//! Recomputes every tabulated matrix and constant and diffs it against
//! [`Expected`], together with the two theorem reports and the `phi` gates.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bernstein::BernsteinTensor;
use crate::error::Result;
use crate::expected::{Expected, ExpectedConstants, ExpectedTensor};
use crate::hankel::coeffs::hankel_values;
use crate::hankel::objectives::{build_bound_polys, Variant};
use crate::hankel::q00::q00_chain_verify;
use crate::hankel::report::BoundReport;
use crate::hankel::theorems::{grid_tensors, verify_h2_theorem, verify_h3_theorem, whole_cube, H3Outcome, SHARPNESS_SPECS};
use crate::maminda::{
    extremal_function, phi_report, schwarz_power, subordination_roundtrip, ExtremalKind, PhiReport, PhiSpec,
};
use crate::parallel::Execution;
use crate::rational::{int, rat, real, Rational};
use crate::series::DEFAULT_ORDER;
use crate::tables::{layers, MatrixTable};

pub const EXPECTED_VERSION: u32 = 1;
pub const QUADRANT_NAMES: [&str; 4] = ["11", "12", "21", "22"];

/// The first `(m, n)` pairs checked by the `phi` gates.
pub const PHI_SPECS: [(u64, u64); 4] = [(1, 2), (1, 3), (2, 5), (1, 1)];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub item: String,
    pub expected: String,
    pub actual: String,
}

/// Bernstein data of the printed objectives in the layout of [`Expected`].
#[derive(Debug, Clone)]
pub struct ComputedTables {
    pub rtilde_whole: BernsteinTensor,
    pub r2tilde_whole: BernsteinTensor,
    /// 64 boxes, `p` index slowest.
    pub rtilde_grid: Vec<BernsteinTensor>,
    pub r2tilde_quadrants: Vec<BernsteinTensor>,
}

pub fn computed_tables(exec: Execution) -> Result<ComputedTables> {
    let set = build_bound_polys(Variant::Printed)?;
    Ok(ComputedTables {
        rtilde_whole: whole_cube(&set.rtilde)?,
        r2tilde_whole: whole_cube(&set.r2tilde)?,
        rtilde_grid: grid_tensors(&set.rtilde, &[8, 8, 1], exec)?,
        r2tilde_quadrants: grid_tensors(&set.r2tilde, &[2, 2, 1], exec)?,
    })
}

impl ComputedTables {
    pub fn matrices(&self) -> Vec<MatrixTable> {
        let mut out = layers("R~", &self.rtilde_whole);
        out.extend(layers("R~2", &self.r2tilde_whole));
        for (name, t) in QUADRANT_NAMES.iter().zip(&self.r2tilde_quadrants) {
            out.extend(layers(&format!("R~2 quadrant {name}"), t));
        }
        out
    }

    pub fn grid_maxima(&self) -> Vec<Rational> {
        self.rtilde_grid.iter().map(|t| t.max().0.clone()).collect()
    }
}

fn tensor_entry(name: Option<&str>, t: &BernsteinTensor, with_argmax: bool) -> ExpectedTensor {
    let (max, arg) = t.max();
    ExpectedTensor {
        name: name.map(str::to_string),
        max: max.clone(),
        argmax: with_argmax.then_some(arg),
        matrices: (0..=t.degrees()[2]).map(|k| t.layer(k)).collect(),
    }
}

fn case_value(report: &BoundReport, name: &str) -> Rational {
    report
        .cases
        .iter()
        .find(|c| c.name == name)
        .and_then(|c| c.value.as_deref())
        .and_then(|v| crate::rational::parse_rational(v).ok())
        .unwrap_or_else(|| int(-1))
}

fn proved_value(report: &BoundReport, name: &str) -> Rational {
    if report.is_proved() {
        case_value(report, name)
    } else {
        int(-1)
    }
}

/// Assembles the computed counterpart of [`Expected`].
pub fn computed_expected(
    tables: &ComputedTables,
    q00: &BoundReport,
    h2: &BoundReport,
    h3: &H3Outcome,
) -> Expected {
    let grid = tables.grid_maxima();
    let r1_name = format!("R1 <= 16 ({})", Variant::Printed);
    Expected {
        version: EXPECTED_VERSION,
        rtilde_whole: tensor_entry(None, &tables.rtilde_whole, true),
        r2tilde_whole: tensor_entry(None, &tables.r2tilde_whole, true),
        rtilde_grid: grid.chunks(8).map(<[Rational]>::to_vec).collect(),
        rtilde_grid_other_max: grid[1..].iter().max().cloned().unwrap_or_else(|| int(-1)),
        r2tilde_quadrants: QUADRANT_NAMES
            .iter()
            .zip(&tables.r2tilde_quadrants)
            .map(|(n, t)| tensor_entry(Some(n), t, false))
            .collect(),
        constants: ExpectedConstants {
            o_at_eighth: case_value(q00, "O(1/8)"),
            l_at_eighth: case_value(q00, "L(1/8)"),
            p_floor_at_eighth: case_value(q00, "P floor"),
            v_discriminant: case_value(q00, "V discriminant"),
            r1_bound: case_value(&h3.report, &r1_name),
            r2_bound: h3.r2_bound_printed.clone(),
            h2_c1_one: case_value(h2, "c1 = 1"),
            h2_bound: proved_value(h2, "conclusion"),
            h3_bound: proved_value(&h3.report, "conclusion"),
        },
    }
}

struct Differ {
    out: Vec<Mismatch>,
}

impl Differ {
    fn value<T: ToString + PartialEq>(&mut self, item: impl Into<String>, expected: &T, actual: &T) {
        if expected != actual {
            self.out.push(Mismatch {
                item: item.into(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn shape(&mut self, item: &str, expected: usize, actual: usize) -> bool {
        self.value(format!("{item} size"), &expected, &actual);
        expected == actual
    }

    fn tensor(&mut self, label: &str, e: &ExpectedTensor, a: &ExpectedTensor) {
        self.value(format!("{label} max"), &e.max, &a.max);
        if let (Some(ea), Some(aa)) = (&e.argmax, &a.argmax) {
            self.value(format!("{label} argmax"), &format!("{ea:?}"), &format!("{aa:?}"));
        }
        if !self.shape(&format!("{label} layers"), e.matrices.len(), a.matrices.len()) {
            return;
        }
        for (k, (em, am)) in e.matrices.iter().zip(&a.matrices).enumerate() {
            if !self.shape(&format!("{label} M_{k} rows"), em.len(), am.len()) {
                continue;
            }
            for (i, (er, ar)) in em.iter().zip(am).enumerate() {
                if !self.shape(&format!("{label} M_{k} row {i}"), er.len(), ar.len()) {
                    continue;
                }
                for (j, (x, y)) in er.iter().zip(ar).enumerate() {
                    self.value(format!("{label} M_{k}[{i}][{j}]"), x, y);
                }
            }
        }
    }
}

/// Every differing entry, in a fixed order (tables first, then constants).
pub fn diff(expected: &Expected, actual: &Expected) -> Vec<Mismatch> {
    let mut d = Differ { out: Vec::new() };
    d.value("version", &expected.version, &actual.version);
    d.tensor("R~", &expected.rtilde_whole, &actual.rtilde_whole);
    if d.shape("R~ grid", expected.rtilde_grid.len(), actual.rtilde_grid.len()) {
        for (i, (er, ar)) in expected.rtilde_grid.iter().zip(&actual.rtilde_grid).enumerate() {
            if d.shape(&format!("R~ grid row {i}"), er.len(), ar.len()) {
                for (j, (x, y)) in er.iter().zip(ar).enumerate() {
                    d.value(format!("M_{{{i}{j}}}"), x, y);
                }
            }
        }
    }
    d.value(
        "R~ grid max over the other 63 boxes",
        &expected.rtilde_grid_other_max,
        &actual.rtilde_grid_other_max,
    );
    d.tensor("R~2", &expected.r2tilde_whole, &actual.r2tilde_whole);
    if d.shape("R~2 quadrants", expected.r2tilde_quadrants.len(), actual.r2tilde_quadrants.len()) {
        for (e, a) in expected.r2tilde_quadrants.iter().zip(&actual.r2tilde_quadrants) {
            let name = e.name.clone().unwrap_or_default();
            d.value("R~2 quadrant name", &name, &a.name.clone().unwrap_or_default());
            d.tensor(&format!("R~2 quadrant {name}"), e, a);
        }
    }
    let (ec, ac) = (&expected.constants, &actual.constants);
    d.value("O(1/8)", &ec.o_at_eighth, &ac.o_at_eighth);
    d.value("L(1/8)", &ec.l_at_eighth, &ac.l_at_eighth);
    d.value("P floor at 1/8", &ec.p_floor_at_eighth, &ac.p_floor_at_eighth);
    d.value("V discriminant x^2 coefficient", &ec.v_discriminant, &ac.v_discriminant);
    d.value("R1 bound", &ec.r1_bound, &ac.r1_bound);
    d.value("R2 bound", &ec.r2_bound, &ac.r2_bound);
    d.value("H2 at c1 = 1, t = 1/2", &ec.h2_c1_one, &ac.h2_c1_one);
    d.value("H2 bound", &ec.h2_bound, &ac.h2_bound);
    d.value("H3 bound", &ec.h3_bound, &ac.h3_bound);
    d.out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCheck {
    pub kind: ExtremalKind,
    pub m: u64,
    pub n: u64,
    /// `a2..a5` as rational strings.
    pub coeffs: Vec<String>,
    pub hankel: String,
    pub residual_vanishes: bool,
    pub holds: bool,
}

/// Coefficients, Hankel value and the subordination residual of one extremal function.
pub fn extremal_check(kind: ExtremalKind, spec: &PhiSpec) -> Result<ExtremalCheck> {
    let f = extremal_function(kind, spec, DEFAULT_ORDER)?;
    let w = schwarz_power(kind.power(), DEFAULT_ORDER);
    let residual_vanishes = subordination_roundtrip(&f, &w, spec)?.is_zero();
    let a: Vec<Rational> = (2..=5).map(|k| f.coeff(k)).collect();
    let tc = crate::hankel::coeffs::TaylorCoeffs {
        a2: real(a[0].clone()),
        a3: real(a[1].clone()),
        a4: real(a[2].clone()),
        a5: real(a[3].clone()),
    };
    let (h2, h3) = hankel_values(&tc);
    let (hankel, holds) = match kind {
        ExtremalKind::H2 => {
            let a5 = Rational::new((spec.n + 2 * spec.m).into(), (8 * spec.n).into());
            let want = [int(0), rat(1, 2), int(0), a5];
            (h2.re.clone(), a == want && h2 == real(rat(-1, 4)))
        }
        ExtremalKind::H3 => (h3.re.clone(), a[2] == rat(1, 3) && h3 == real(rat(-1, 9))),
    };
    Ok(ExtremalCheck {
        kind,
        m: spec.m,
        n: spec.n,
        coeffs: a.iter().map(Rational::to_string).collect(),
        hankel: hankel.to_string(),
        residual_vanishes,
        holds: holds && residual_vanishes,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Reproduction {
    pub passed: bool,
    pub mismatches: Vec<Mismatch>,
    pub computed: Expected,
    pub grid: Vec<String>,
    pub q00: BoundReport,
    pub h2: BoundReport,
    pub h3: H3Outcome,
    pub phi: Vec<PhiReport>,
    pub extremal: Vec<ExtremalCheck>,
}

/// Runs the full reproduction against `expected`.
pub fn reproduce(expected: &Expected, exec: Execution) -> Result<Reproduction> {
    let tables = computed_tables(exec)?;
    let q00 = q00_chain_verify(Variant::Printed, exec)?;
    let h2 = verify_h2_theorem(exec)?;
    let h3 = verify_h3_theorem(exec)?;
    let computed = computed_expected(&tables, &q00, &h2, &h3);
    let mut mismatches = diff(expected, &computed);

    let mut phi = Vec::new();
    for (m, n) in PHI_SPECS {
        let r = phi_report(&PhiSpec::new(m, n)?);
        let want = 2 * m <= n;
        if r.all_pass() != want {
            mismatches.push(Mismatch {
                item: format!("phi gates m={m} n={n}"),
                expected: want.to_string(),
                actual: r.all_pass().to_string(),
            });
        }
        phi.push(r);
    }
    let mut extremal = Vec::new();
    for kind in [ExtremalKind::H2, ExtremalKind::H3] {
        for (m, n) in SHARPNESS_SPECS {
            let c = extremal_check(kind, &PhiSpec::new(m, n)?)?;
            if !c.holds {
                mismatches.push(Mismatch {
                    item: format!("extremal {kind:?} m={m} n={n}"),
                    expected: "holds".into(),
                    actual: format!("coeffs {:?}, value {}", c.coeffs, c.hankel),
                });
            }
            extremal.push(c);
        }
    }
    for (name, r) in [("H2 report", &h2), ("H3 report", &h3.report), ("Q00 chain (printed)", &q00)] {
        if let Some(f) = r.first_failure() {
            mismatches.push(Mismatch {
                item: format!("{name}: {}", f.name),
                expected: "holds".into(),
                actual: f.detail.clone(),
            });
        }
    }
    let grid = computed
        .rtilde_grid
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, v)| format!("M_{{{i}{j}}} = {v}")))
        .collect();
    Ok(Reproduction {
        passed: mismatches.is_empty(),
        mismatches,
        computed,
        grid,
        q00,
        h2,
        h3,
        phi,
        extremal,
    })
}

impl Reproduction {
    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Reproduction report\n");
        let _ = writeln!(s, "Result: **{}**\n", if self.passed { "PASS" } else { "FAIL" });
        if !self.mismatches.is_empty() {
            let _ = writeln!(s, "| item | expected | actual |\n|---|---|---|");
            for m in &self.mismatches {
                let _ = writeln!(s, "| {} | {} | {} |", m.item, m.expected, m.actual);
            }
            s.push('\n');
        }
        let c = &self.computed;
        let _ = writeln!(s, "## Bernstein tables\n");
        let _ = writeln!(s, "- R~ whole cube max {} at {:?}", c.rtilde_whole.max, c.rtilde_whole.argmax.as_deref().unwrap_or(&[]));
        let _ = writeln!(s, "- R~2 whole cube max {} at {:?}", c.r2tilde_whole.max, c.r2tilde_whole.argmax.as_deref().unwrap_or(&[]));
        let _ = writeln!(s, "- R~ 8x8x1 grid, max over boxes other than M_{{00}}: {}", c.rtilde_grid_other_max);
        for q in &c.r2tilde_quadrants {
            let _ = writeln!(s, "- R~2 quadrant {}: max {}", q.name.as_deref().unwrap_or(""), q.max);
        }
        let _ = writeln!(s, "\n```");
        for line in &self.grid {
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "```\n");
        let k = &c.constants;
        let _ = writeln!(s, "## Constants\n");
        let _ = writeln!(s, "- O(1/8) = {}, L(1/8) = {}, P floor at 1/8 = {}", k.o_at_eighth, k.l_at_eighth, k.p_floor_at_eighth);
        let _ = writeln!(s, "- discriminant of V: {} x^2", k.v_discriminant);
        let _ = writeln!(s, "- R1 <= {}, R2 <= {}", k.r1_bound, k.r2_bound);
        let _ = writeln!(s, "- |H2(2)| <= {}, |H3(1)| <= {}\n", k.h2_bound, k.h3_bound);
        s.push_str(&self.h2.to_markdown());
        s.push('\n');
        s.push_str(&self.h3.report.to_markdown());
        s.push('\n');
        s.push_str(&self.q00.to_markdown());
        let _ = writeln!(s, "\n## phi gates\n");
        let _ = writeln!(s, "| m | n | 2m <= n | univalent | starlike wrt 1 | Re phi > 0 |\n|---|---|---|---|---|---|");
        for r in &self.phi {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                r.spec.m, r.spec.n, r.admissible, r.univalence.univalent, r.starlike.starlike, r.re_positivity.positive
            );
        }
        let _ = writeln!(s, "\n## Extremal functions\n");
        let _ = writeln!(s, "| kind | m | n | a2, a3, a4, a5 | value | residual zero |\n|---|---|---|---|---|---|");
        for e in &self.extremal {
            let _ = writeln!(
                s,
                "| {:?} | {} | {} | {} | {} | {} |",
                e.kind,
                e.m,
                e.n,
                e.coeffs.join(", "),
                e.hankel,
                e.residual_vanishes
            );
        }
        s
    }
}
