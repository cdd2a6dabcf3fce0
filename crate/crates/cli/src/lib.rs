//! Commands behind the `qrf` binary. Each returns an [`Outcome`]: a versioned
//! JSON document, a table for humans, and whether every embedded check passed.

use std::fmt::Write as _;

use qrf_core::algebra::StarAlgebra;
use qrf_core::group::{charge_eigenstate, RepDocument, DEFAULT_DIM_CAP};
use qrf_core::json::{decode_entries, encode_entries};
use qrf_core::matrix::{eigensystem_normal, pauli, tensor, ComplexMatrix, Tolerance};
use qrf_core::perspectives::{
    lattice_perspective, momentum_ambiguity, perspective_report, table1, MomentumAmbiguity, Table1,
};
use qrf_core::random::{random_density_matrix, seeded_rng};
use qrf_core::scenario::theorem::{theorem1_report_for, Theorem1Report};
use qrf_core::scenario::{literal_diag2, literal_diag3};
use qrf_core::symmetry::{is_symmetric, strong_twirl_normalized, symmetric_algebra, twirl};
use qrf_core::{
    charge_decomposition, charge_observable, shift_representation, AlgebraReport, FiniteAbelianRep, SymmetryKind,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub tol: Tolerance,
    pub seed: u64,
    pub format: Format,
    pub dim_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            seed: DEFAULT_SEED,
            format: Format::Json,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub ok: bool,
    pub json: String,
    pub table: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Table => &self.table,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: u32,
    command: &'a str,
    ok: bool,
    report: &'a T,
}

fn outcome<T: Serialize>(command: &str, ok: bool, report: &T, table: String) -> anyhow::Result<Outcome> {
    let json = serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        command,
        ok,
        report,
    })?;
    Ok(Outcome { ok, json, table })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------- example-z3

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub eigenvalue: [f64; 2],
    pub multiplicity: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ExampleZ3Report {
    pub spectrum: Vec<SpectrumEntry>,
    pub sector_dims: Vec<usize>,
    /// Diagonal of the charge observable in the charge basis.
    pub charge_diagonal: Vec<f64>,
    pub charge_offdiagonal_max: f64,
    pub eigenstates_orthonormal: bool,
    /// 1 where a twirled full-rank state may have a nonzero entry (charge basis).
    pub weak_mask: Vec<Vec<u8>>,
    pub strong_mask: Vec<Vec<u8>>,
    pub masks_match_blocks: bool,
}

fn mask(m: &ComplexMatrix, tol: &Tolerance) -> Vec<Vec<u8>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| u8::from(m[(i, j)].norm() > tol.rank_tol)).collect())
        .collect()
}

fn expected_mask(charges: &[usize], keep: impl Fn(usize, usize) -> bool) -> Vec<Vec<u8>> {
    charges
        .iter()
        .map(|&ci| charges.iter().map(|&cj| u8::from(keep(ci, cj))).collect())
        .collect()
}

fn mask_table(out: &mut String, title: &str, m: &[Vec<u8>]) {
    let _ = writeln!(out, "{title}");
    for row in m {
        let line: String = row.iter().map(|&b| if b == 1 { " *" } else { " ." }).collect();
        let _ = writeln!(out, " {line}");
    }
}

pub fn cmd_example_z3(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let rep = shift_representation(3, 2)?;
    let spectrum = eigensystem_normal(rep.generator(), tol)?
        .into_iter()
        .map(|s| SpectrumEntry {
            eigenvalue: [s.eigenvalue.re, s.eigenvalue.im],
            multiplicity: s.rank(),
        })
        .collect::<Vec<_>>();
    let dec = charge_decomposition(&rep, tol)?;
    let c = charge_observable(&dec, tol)?;
    let in_basis = dec.to_charge_basis(&c.matrix);
    let charge_diagonal: Vec<f64> = (0..9).map(|i| in_basis[(i, i)].re).collect();
    let charge_offdiagonal_max = (0..9)
        .flat_map(|i| (0..9).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| in_basis[(i, j)].norm())
        .fold(0.0, f64::max);

    let states = (0..3)
        .flat_map(|c| (0..3).map(move |r| (c, r)))
        .map(|(c, r)| charge_eigenstate(3, c, r))
        .collect::<Result<Vec<_>, _>>()?;
    let mut gram_dev: f64 = 0.0;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            gram_dev = gram_dev.max((qrf_core::matrix::inner(a, b) - want).norm());
        }
    }

    let rho = random_density_matrix(9, &mut seeded_rng(cfg.seed));
    let charges = dec.basis_charges();
    let weak_mask = mask(&dec.to_charge_basis(&twirl(&rep, &rho, SymmetryKind::Weak)?), tol);
    let strong_mask = mask(&dec.to_charge_basis(&twirl(&rep, &rho, SymmetryKind::Strong)?), tol);
    let masks_match_blocks = weak_mask == expected_mask(&charges, |a, b| a == b)
        && strong_mask == expected_mask(&charges, |a, b| a == 0 && b == 0);

    let sector_dims = dec.dimensions();
    let expected_diag: Vec<f64> = charges.iter().map(|&k| c.eigenvalue_for(k)).collect();
    let ok = sector_dims == vec![3, 3, 3]
        && spectrum.iter().all(|s| s.multiplicity == 3)
        && charge_diagonal
            .iter()
            .zip(&expected_diag)
            .all(|(a, b)| (a - b).abs() < tol.eq_tol)
        && charge_offdiagonal_max < tol.eq_tol
        && gram_dev < tol.eq_tol
        && masks_match_blocks;

    let report = ExampleZ3Report {
        spectrum,
        sector_dims,
        charge_diagonal,
        charge_offdiagonal_max,
        eigenstates_orthonormal: gram_dev < tol.eq_tol,
        weak_mask,
        strong_mask,
        masks_match_blocks,
    };
    let mut t = String::new();
    let _ = writeln!(t, "Z3 on two systems (dim 9)");
    for s in &report.spectrum {
        let _ = writeln!(
            t,
            "  eigenvalue {:+.4}{:+.4}i  multiplicity {}",
            s.eigenvalue[0], s.eigenvalue[1], s.multiplicity
        );
    }
    let _ = writeln!(t, "  sector dims {:?}", report.sector_dims);
    let diag: Vec<String> = report
        .charge_diagonal
        .iter()
        .map(|v| format!("{:.0}", (v * 3.0 / (2.0 * std::f64::consts::PI)).round() + 0.0))
        .collect();
    let _ = writeln!(t, "  C = (2pi/3) diag({})", diag.join(","));
    mask_table(&mut t, "weak-twirled state, charge basis", &report.weak_mask);
    mask_table(&mut t, "strong-twirled state, charge basis", &report.strong_mask);
    let _ = writeln!(t, "{}", pass_fail(ok));
    outcome("example-z3", ok, &report, t)
}

// -------------------------------------------------------------------- table1

#[derive(Debug, Serialize)]
struct Table1Checks {
    strong_inside_weak: bool,
    bicommutant: bool,
}

#[derive(Debug, Serialize)]
struct Table1Document<'a> {
    table: &'a Table1,
    checks: Table1Checks,
}

pub fn cmd_table1(cfg: &RunConfig, order: usize, systems: usize) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let table = table1(order, systems, tol, cfg.dim_cap)?;
    let rep = shift_representation(order, systems)?;
    let weak = symmetric_algebra(&rep, SymmetryKind::Weak, tol)?.with_seed(cfg.seed);
    let strong = symmetric_algebra(&rep, SymmetryKind::Strong, tol)?.with_seed(cfg.seed);
    let strong_inside_weak = strong
        .basis()
        .iter()
        .map(|b| weak.contains(b))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|b| b);
    let bicommutant = weak.bicommutant_holds()? && strong.bicommutant_holds()?;
    let ok = strong_inside_weak && bicommutant;

    let mut t = String::new();
    let _ = writeln!(t, "Z{order} on {systems} system(s), dim {}", table.dim);
    let _ = writeln!(t, "{:<28}{:<18}{:<18}", "", "weak", "strong");
    let row = |label: &str, f: &dyn Fn(&qrf_core::perspectives::Table1Row) -> String| {
        format!("{:<28}{:<18}{:<18}\n", label, f(&table.rows[0]), f(&table.rows[1]))
    };
    t.push_str(&row("symmetric algebra blocks", &|r| format!("{:?}", r.symmetric_algebra.blocks)));
    t.push_str(&row("nature", &|r| (if r.factor { "factor" } else { "non-factor" }).to_string()));
    t.push_str(&row("reversible", &|r| yes_no(r.reversible).to_string()));
    t.push_str(&row("total charge accessible", &|r| yes_no(r.charge_accessible).to_string()));
    t.push_str(&row("perspectives scalar", &|r| yes_no(r.perspectival_is_scalar).to_string()));
    let _ = writeln!(t, "{}", pass_fail(ok));
    let doc = Table1Document {
        table: &table,
        checks: Table1Checks {
            strong_inside_weak,
            bicommutant,
        },
    };
    outcome("table1", ok, &doc, t)
}

// ------------------------------------------------------------------ theorem1

#[derive(Debug, Serialize, Deserialize)]
pub struct ChargeChain {
    /// `I ⊗ X` lies in Alice's perspectival algebra.
    pub x_b_in_alice_perspective: bool,
    /// `X ⊗ I` lies in Bob's.
    pub x_a_in_bob_perspective: bool,
    /// Their product `X ⊗ X` lies in the collaborative algebra.
    pub product_in_collaborative: bool,
    pub product_residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Theorem1Document {
    pub theorem: Theorem1Report,
    pub chain: ChargeChain,
}

pub fn cmd_theorem1(cfg: &RunConfig, inject_fault: bool) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let mut diag2 = literal_diag2();
    if inject_fault {
        diag2.gates.pop();
    }
    let theorem = theorem1_report_for(&diag2, &literal_diag3(), tol)?;

    let ix = tensor(&pauli::id(), &pauli::x());
    let xi = tensor(&pauli::x(), &pauli::id());
    let xx = xi.matmul(&ix);
    let weak = perspective_report(2, 2, SymmetryKind::Weak, tol, cfg.dim_cap)?;
    let alice = lattice_perspective(2, 2, 0, SymmetryKind::Weak, tol, cfg.dim_cap)?;
    let bob = lattice_perspective(2, 2, 1, SymmetryKind::Weak, tol, cfg.dim_cap)?;
    let product_residual = weak.collaborative.residual(&xx)?;
    let chain = ChargeChain {
        x_b_in_alice_perspective: alice.contains(&ix)?,
        x_a_in_bob_perspective: bob.contains(&xi)?,
        product_in_collaborative: product_residual < tol.eq_tol,
        product_residual,
    };
    let ok = theorem.passed
        && chain.x_b_in_alice_perspective
        && chain.x_a_in_bob_perspective
        && chain.product_in_collaborative;

    let mut t = String::new();
    let _ = writeln!(t, "diagram deviation           {:.3e}", theorem.diag_deviation);
    let _ = writeln!(t, "convention deviation        {:.3e}", theorem.convention_deviation);
    let _ = writeln!(t, "relativization deviation    {:.3e}", theorem.relativization_deviation);
    let _ = writeln!(t, "mode picture deviation      {:.3e}", theorem.mode_deviation);
    let _ = writeln!(t, "observable vs I(x)X         {:.3e}", theorem.observable_deviation);
    let _ = writeln!(t, "yen(X) vs I(x)X             {:.3e}", theorem.yen_deviation);
    let _ = writeln!(t, "X(x)X in collaborative      {}", yes_no(chain.product_in_collaborative));
    let _ = writeln!(t, "{} (eq_tol {:e})", pass_fail(ok), tol.eq_tol);
    let doc = Theorem1Document { theorem, chain };
    outcome("theorem1", ok, &doc, t)
}

// --------------------------------------------------------------------- twirl

/// Representation document plus the operator to twirl, flat `[re, im]` entries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwirlInput {
    #[serde(flatten)]
    pub rep: RepDocument,
    pub rho: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TwirlReport {
    pub kind: SymmetryKind,
    pub dim: usize,
    pub output: Vec<[f64; 2]>,
    pub trace: [f64; 2],
    pub symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<[f64; 2]>>,
}

pub fn cmd_twirl(cfg: &RunConfig, kind: SymmetryKind, input: &str) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let doc: TwirlInput = serde_json::from_str(input)?;
    let rep = FiniteAbelianRep::from_document(&doc.rep, tol)?;
    let rho = decode_entries(rep.dim(), &doc.rho)?;
    let out = twirl(&rep, &rho, kind)?;
    let symmetric = is_symmetric(&rep, &out, kind, tol)?;
    let normalized = match kind {
        SymmetryKind::Strong => strong_twirl_normalized(&rep, &rho, tol)?.map(|m| encode_entries(&m)),
        SymmetryKind::Weak => None,
    };
    let tr = out.trace();
    let report = TwirlReport {
        kind,
        dim: rep.dim(),
        output: encode_entries(&out),
        trace: [tr.re, tr.im],
        symmetric,
        normalized,
    };
    let mut t = String::new();
    let _ = writeln!(t, "{kind} twirl, dim {}", rep.dim());
    for i in 0..out.dim() {
        let row: Vec<String> = (0..out.dim())
            .map(|j| format!("{:+.4}{:+.4}i", out[(i, j)].re, out[(i, j)].im))
            .collect();
        let _ = writeln!(t, "  {}", row.join(" "));
    }
    let _ = writeln!(t, "trace {:+.6}{:+.6}i, symmetric {}", tr.re, tr.im, yes_no(symmetric));
    outcome("twirl", symmetric, &report, t)
}

// ------------------------------------------------------------------- algebra

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraInput {
    pub dim: usize,
    pub generators: Vec<Vec<[f64; 2]>>,
    #[serde(default = "default_true")]
    pub unital: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub algebra: AlgebraReport,
    pub adjoint_residual: f64,
    pub product_residual: f64,
    pub bicommutant: bool,
}

pub fn cmd_algebra(cfg: &RunConfig, input: &str) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let doc: AlgebraInput = serde_json::from_str(input)?;
    let generators = doc
        .generators
        .iter()
        .map(|g| decode_entries(doc.dim, g))
        .collect::<Result<Vec<_>, _>>()?;
    let alg = StarAlgebra::generate(&generators, doc.unital, tol)?.with_seed(cfg.seed);
    let (adjoint_residual, product_residual) = alg.closure_residuals();
    let report = AlgebraDocument {
        algebra: alg.report()?,
        adjoint_residual,
        product_residual,
        bicommutant: alg.bicommutant_holds()?,
    };
    let ok = report.bicommutant && adjoint_residual < tol.eq_tol && product_residual < tol.eq_tol;
    let a = &report.algebra;
    let mut t = String::new();
    let _ = writeln!(t, "ambient dim        {}", a.dim);
    let _ = writeln!(t, "algebra dim        {}", a.algebra_dim);
    let _ = writeln!(t, "center dim         {}", a.center_dim);
    let _ = writeln!(t, "blocks             {:?}", a.blocks);
    let _ = writeln!(t, "multiplicities     {:?}", a.multiplicities);
    let _ = writeln!(t, "factor             {}", yes_no(a.is_factor));
    let _ = writeln!(t, "contains identity  {}", yes_no(a.contains_identity));
    let _ = writeln!(t, "{}", pass_fail(ok));
    outcome("algebra", ok, &report, t)
}

// ------------------------------------------------------------- charge-access

#[derive(Debug, Serialize, Deserialize)]
pub struct AccessRow {
    pub kind: SymmetryKind,
    pub perspectives: Vec<String>,
    pub charge_in_each_perspective: Vec<bool>,
    pub collaborative: AlgebraReport,
    pub charge_accessible: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AccessDocument {
    pub order: usize,
    pub systems: usize,
    pub rows: Vec<AccessRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub momentum_ambiguity: Option<MomentumAmbiguity>,
}

pub fn cmd_charge_access(cfg: &RunConfig, order: usize, systems: usize) -> anyhow::Result<Outcome> {
    let tol = &cfg.tol;
    let rows = SymmetryKind::ALL
        .iter()
        .map(|&kind| {
            let p = perspective_report(order, systems, kind, tol, cfg.dim_cap)?;
            Ok(AccessRow {
                kind,
                perspectives: p.perspectival_algebras.iter().map(|(n, _)| n.clone()).collect(),
                charge_in_each_perspective: p.charge_in_each_perspective.clone(),
                collaborative: p.collaborative.clone().with_seed(cfg.seed).report()?,
                charge_accessible: p.charge_in_collaborative,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let momentum_ambiguity = if systems == 2 && order % 2 == 1 {
        Some(momentum_ambiguity(order, tol)?)
    } else {
        None
    };
    let ok = momentum_ambiguity.as_ref().is_none_or(|m| m.is_witness(tol));
    let mut t = String::new();
    for r in &rows {
        let _ = writeln!(
            t,
            "{:<7} collaborative dim {:<5} total charge accessible: {}",
            r.kind.name(),
            r.collaborative.algebra_dim,
            yes_no(r.charge_accessible)
        );
    }
    if let Some(m) = &momentum_ambiguity {
        let _ = writeln!(
            t,
            "shift by {} x total charge: commutators moved {:.1e}, charge in join {} -> {}",
            m.alpha,
            m.commutator_deviation,
            yes_no(m.original_contains_charge),
            yes_no(m.shifted_contains_charge)
        );
    }
    let _ = writeln!(t, "{}", pass_fail(ok));
    let doc = AccessDocument {
        order,
        systems,
        rows,
        momentum_ambiguity,
    };
    outcome("charge-access", ok, &doc, t)
}
