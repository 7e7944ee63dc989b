//! Check groups and their orchestration.

use std::fmt;
use std::thread;

use num_traits::{One, Zero};
use rand::Rng;

use crate::boolalg::{filter_to_closed_set, is_partition_of_unity, BoolElem, FinitePowerAlgebra, Filter};
use crate::chaos;
use crate::geometry::{Embedding, ATOM_SCAN_CELLS};
use crate::model::{LawOptions, Model, NoiseModel, RandomVariable, EXACT_POINT_CAP};
use crate::random::{self, SweepRng};
use crate::regopen::{self, dyadic_grid_space, grid_encode, FiniteSpace, RegOpen, Sampler};
use crate::scalar::{format_rational, frac, pow2_recip, Rational, Scalar};
use crate::spectrum::{self, SpectralMeasure, SpectralSet, SpectralSpace};

use super::config::{Backend, Experiment, ModelConfig};
use super::report::{CheckResult, Report};

/// Largest point count for the float backend.
pub const FLOAT_POINT_CAP: usize = 1 << 14;

/// Randomized cases per sweep inside the suite.
const SWEEP_CASES: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Selection {
    Laws,
    Chaos,
    Spectrum,
    Regopen,
    Geometry,
    #[default]
    All,
}

impl Selection {
    fn includes(self, group: Selection) -> bool {
        self == Selection::All || self == group
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selection::Laws => "laws",
            Selection::Chaos => "chaos",
            Selection::Spectrum => "spectrum",
            Selection::Regopen => "regopen",
            Selection::Geometry => "geometry",
            Selection::All => "all",
        })
    }
}

/// Command-line overrides of the configuration.
#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub selection: Selection,
    pub seed: Option<u64>,
    pub backend: Option<Backend>,
    pub depth: Option<u32>,
}

/// Settings shared by all groups.
struct Ctx<'a> {
    exp: &'a Experiment,
    seed: u64,
    backend: Backend,
    depth: u32,
    limit: usize,
}

impl Ctx<'_> {
    fn model(&self) -> &NoiseModel {
        &self.exp.model
    }

    fn rng(&self, salt: u64) -> SweepRng {
        random::rng(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }

    fn exact_cap(&self, group: &str, name: &str) -> Option<CheckResult> {
        let n = self.model().size();
        (n > EXACT_POINT_CAP).then(|| {
            CheckResult::skip(
                group,
                name,
                format!("N = {n} exceeds the exact cap {EXACT_POINT_CAP}"),
                true,
            )
        })
    }

    fn exhaustive_cap(&self, group: &str, name: &str) -> Option<CheckResult> {
        let n = self.model().size();
        (n > self.limit).then(|| {
            CheckResult::skip(
                group,
                name,
                format!("N = {n} exceeds the exhaustive limit {}", self.limit),
                true,
            )
        })
    }
}

/// Runs the selected groups in parallel and assembles the report in a
/// fixed group order.
pub fn run_verification_suite(cfg: &ModelConfig, label: &str, opts: &SuiteOptions) -> crate::Result<Report> {
    let exp = cfg.build()?;
    let ctx = Ctx {
        exp: &exp,
        seed: opts.seed.unwrap_or(cfg.seed),
        backend: opts.backend.unwrap_or(cfg.backend),
        depth: opts.depth.unwrap_or(cfg.depth),
        limit: cfg.exhaustive_limit,
    };
    if ctx.depth > crate::geometry::MAX_BASE_DEPTH {
        return Err(crate::Error::Config {
            path: "depth".into(),
            message: format!("depth {} exceeds {}", ctx.depth, crate::geometry::MAX_BASE_DEPTH),
        });
    }
    type Group = fn(&Ctx) -> Vec<CheckResult>;
    let groups: [(Selection, Group); 5] = [
        (Selection::Laws, laws_group),
        (Selection::Chaos, chaos_group),
        (Selection::Spectrum, spectrum_group),
        (Selection::Regopen, regopen_group),
        (Selection::Geometry, geometry_group),
    ];
    let results: Vec<Vec<CheckResult>> = thread::scope(|s| {
        let handles: Vec<_> = groups
            .iter()
            .filter(|(sel, _)| opts.selection.includes(*sel))
            .map(|(_, run)| {
                let ctx = &ctx;
                s.spawn(move || run(ctx))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check group panicked"))
            .collect()
    });
    Ok(Report {
        config: label.to_string(),
        backend: ctx.backend.to_string(),
        seed: ctx.seed,
        depth: ctx.depth,
        cells: exp.model.n_cells(),
        points: exp.model.size(),
        checks: results.into_iter().flatten().collect(),
    })
}

fn pairs_of(alg: FinitePowerAlgebra, exhaustive: bool, rng: &mut SweepRng, samples: usize) -> Vec<(BoolElem, BoolElem)> {
    if exhaustive {
        alg.elements()
            .flat_map(|x| alg.elements().map(move |y| (x, y)))
            .collect()
    } else {
        (0..samples)
            .map(|_| (random::element(rng, alg), random::element(rng, alg)))
            .collect()
    }
}

// ---------------------------------------------------------------- laws

fn laws_group(ctx: &Ctx) -> Vec<CheckResult> {
    const G: &str = "laws";
    let mut out = vec![boolean_laws(ctx)];
    let model = ctx.model();
    match ctx.backend {
        Backend::Exact => {
            if let Some(skip) = ctx.exact_cap(G, "projection") {
                out.push(skip);
                return out;
            }
            out.push(projection_laws(ctx, model));
            out.push(oracle_check(ctx, model));
            out.push(walsh_identities(ctx, model));
        }
        Backend::Float => {
            if model.size() > FLOAT_POINT_CAP {
                out.push(CheckResult::skip(
                    G,
                    "projection",
                    format!("N = {} exceeds the float cap {FLOAT_POINT_CAP}", model.size()),
                    true,
                ));
                return out;
            }
            let float = model.with_backend::<f64>();
            out.push(projection_laws(ctx, &float));
            out.push(oracle_check(ctx, &float));
            out.push(walsh_identities(ctx, &float));
        }
    }
    out
}

fn boolean_laws(ctx: &Ctx) -> CheckResult {
    let alg = ctx.model().algebra();
    let exhaustive = alg.n_cells() <= 4;
    let mut rng = ctx.rng(1);
    let triples: Vec<(BoolElem, BoolElem, BoolElem)> = if exhaustive {
        alg.elements()
            .flat_map(|x| alg.elements().flat_map(move |y| alg.elements().map(move |z| (x, y, z))))
            .collect()
    } else {
        (0..1000)
            .map(|_| {
                (
                    random::element(&mut rng, alg),
                    random::element(&mut rng, alg),
                    random::element(&mut rng, alg),
                )
            })
            .collect()
    };
    let mut witnesses = Vec::new();
    for &(x, y, z) in &triples {
        let ok = x.meet(y.meet(z)) == x.meet(y).meet(z)
            && x.join(y.join(z)) == x.join(y).join(z)
            && x.meet(y) == y.meet(x)
            && x.join(y) == y.join(x)
            && x.meet(y.join(z)) == x.meet(y).join(x.meet(z))
            && x.join(y.meet(z)) == x.join(y).meet(x.join(z))
            && x.meet(y).complement() == x.complement().join(y.complement())
            && x.meet(x.complement()).is_zero()
            && x.join(x.complement()).is_one();
        if !ok && witnesses.len() < 3 {
            witnesses.push(format!("x = {}, y = {}, z = {}", x.label(), y.label(), z.label()));
        }
    }
    // Stone duality on principal filters
    let pairs = pairs_of(alg, alg.n_cells() <= 4, &mut rng, 1000);
    for &(g, x) in &pairs {
        let f = Filter::principal(g);
        let clopen = alg.clopen(x);
        let inside = filter_to_closed_set(&f).iter().all(|c| clopen.contains(c));
        if inside != f.member(x) && witnesses.len() < 3 {
            witnesses.push(format!("Stone duality fails at Φ = ↑{}, x = {}", g.label(), x.label()));
        }
    }
    for (name, b) in &ctx.exp.subalgebras {
        if !is_partition_of_unity(alg.n_cells(), b.atoms()) {
            witnesses.push(format!("atoms of {name} are not a partition of unity"));
        }
    }
    CheckResult::new(
        "laws",
        "boolean",
        witnesses.is_empty(),
        format!(
            "{} triples{}, {} filter pairs",
            triples.len(),
            if exhaustive { " (exhaustive)" } else { "" },
            pairs.len()
        ),
    )
    .with_witnesses(witnesses)
}

fn projection_laws<T: Scalar>(ctx: &Ctx, model: &Model<T>) -> CheckResult {
    let opts = LawOptions {
        seed: ctx.seed,
        ..LawOptions::default()
    };
    let r = model.verify_projection_laws(&opts);
    let detail = format!(
        "{} pairs{}, {} columns, {} superadditivity checks{}",
        r.pairs_checked,
        if r.exhaustive { " (exhaustive)" } else { "" },
        r.columns_checked,
        r.superadditivity_checks,
        r.strict_witness
            .map(|(x, y)| format!(", strict at x = {}, y = {}", x.label(), y.label()))
            .unwrap_or_default()
    );
    CheckResult::new("laws", "projection", r.passed(), detail).with_witnesses(
        r.violations
            .iter()
            .take(3)
            .map(|v| format!("{:?} at x = {}, y = {}: {}", v.law, v.x.label(), v.y.label(), v.detail)),
    )
}

fn oracle_check<T: Scalar>(ctx: &Ctx, model: &Model<T>) -> CheckResult {
    let alg = model.algebra();
    let exhaustive = model.size() <= ctx.limit && alg.n_cells() <= 8;
    let mut rng = ctx.rng(2);
    let vectors: Vec<RandomVariable<T>> = if exhaustive {
        (0..model.size()).map(|m| model.walsh_vector(m)).collect()
    } else {
        (0..8).map(|_| model.random_variable(&mut rng)).collect()
    };
    let xs: Vec<BoolElem> = if alg.n_cells() <= 8 {
        alg.elements().collect()
    } else {
        (0..64).map(|_| random::element(&mut rng, alg)).collect()
    };
    let mut witnesses = Vec::new();
    for &x in &xs {
        for (i, v) in vectors.iter().enumerate() {
            if !model.project(x, v).near(&model.project_oracle(x, v)) && witnesses.len() < 3 {
                witnesses.push(format!("x = {}, vector {i}", x.label()));
            }
        }
    }
    CheckResult::new(
        "laws",
        "oracle",
        witnesses.is_empty(),
        format!(
            "Walsh projection = conditional expectation on {} elements × {} {}",
            xs.len(),
            vectors.len(),
            if exhaustive { "basis vectors" } else { "random vectors" }
        ),
    )
    .with_witnesses(witnesses)
}

fn walsh_identities<T: Scalar>(ctx: &Ctx, model: &Model<T>) -> CheckResult {
    let alg = model.algebra();
    let mut rng = ctx.rng(3);
    let mut witnesses = Vec::new();
    let mut note = |ok: bool, what: String| {
        if !ok && witnesses.len() < 3 {
            witnesses.push(what);
        }
    };
    for i in 0..4 {
        let f = model.random_variable(&mut rng);
        let g = model.random_variable(&mut rng);
        note(
            model.reconstruct(&model.coefficients(&f)).near(&f),
            format!("round trip of random vector {i}"),
        );
        for _ in 0..8 {
            let x = random::element(&mut rng, alg);
            let qf = model.project(x, &f);
            note(model.project(x, &qf).near(&qf), format!("Q_x idempotent at x = {}", x.label()));
            let lhs = model.inner_product(&qf, &g).expect("same model");
            let rhs = model.inner_product(&f, &model.project(x, &g)).expect("same model");
            note(lhs.near(&rhs), format!("Q_x self-adjoint at x = {}", x.label()));
        }
    }
    let n = model.size();
    let pairs: Vec<(usize, usize)> = if n <= ctx.limit {
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    } else {
        (0..256).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect()
    };
    let mut products = 0;
    for &(a, b) in &pairs {
        if !model.support(a).is_disjoint(model.support(b)) {
            continue;
        }
        products += 1;
        // disjoint supports occupy disjoint digits, so indices add
        let prod = &model.walsh_vector(a) * &model.walsh_vector(b);
        note(prod.near(&model.walsh_vector(a + b)), format!("e_{a} e_{b} ≠ e_{}", a + b));
    }
    CheckResult::new(
        "laws",
        "walsh",
        witnesses.is_empty(),
        format!("round trip, idempotence, self-adjointness, {products} tensor products"),
    )
    .with_witnesses(witnesses)
}

// --------------------------------------------------------------- chaos

fn chaos_group(ctx: &Ctx) -> Vec<CheckResult> {
    const G: &str = "chaos";
    let model = ctx.model();
    if let Some(skip) = ctx.exhaustive_cap(G, "first_chaos") {
        let mut out = vec![skip];
        out.extend(named_defects(ctx));
        return out;
    }
    let mut out = Vec::new();
    let chaos_space = chaos::first_chaos_basis(model);
    let expected: usize = model.radices().iter().map(|k| k - 1).sum();
    let walsh = chaos::walsh_first_chaos(model);
    let ok = chaos_space.dimension() == expected && chaos_space.same_span(&walsh) && chaos_space.verify(model);
    out.push(CheckResult::new(
        G,
        "first_chaos",
        ok,
        format!("dimension {} (Σ(k_i − 1) = {expected}), equals span of single-cell Walsh vectors", chaos_space.dimension()),
    ));

    let all_splits = chaos::first_chaos_basis_all_splits(model);
    let mut agree = chaos_space.same_span(all_splits.basis());
    let mut detail = "agrees with the all-splits system".to_string();
    if model.algebra().size() <= 16 {
        agree &= chaos_space.same_span(chaos::first_chaos_basis_pairwise(model).basis());
        detail.push_str(" and the pairwise system");
    }
    out.push(CheckResult::new(G, "elimination", agree, detail));

    out.push(split_product(ctx));

    let report = chaos::classify(model);
    let degenerate = if report.degenerate { ", degenerate (single point)" } else { "" };
    let classified_ok = report.degenerate || report.class == chaos::Classification::Classical;
    out.push(CheckResult::new(
        G,
        "classify",
        classified_ok,
        format!("{:?}{degenerate}", report.class),
    ));

    let additive = chaos_space
        .basis()
        .iter()
        .chain(&walsh)
        .all(|v| chaos::norm_is_additive(model, v));
    out.push(CheckResult::new(
        G,
        "norm_additive",
        additive,
        "x ↦ ‖Q_x ψ‖² is additive on H^(1)",
    ));

    out.extend(named_defects(ctx));
    out.push(defect_sweep(ctx));
    out
}

fn split_product(ctx: &Ctx) -> CheckResult {
    let model = ctx.model();
    let alg = model.algebra();
    let mut rng = ctx.rng(4);
    let xs: Vec<BoolElem> = if alg.n_cells() <= 4 {
        alg.elements().collect()
    } else {
        (0..16).map(|_| random::element(&mut rng, alg)).collect()
    };
    let mut family: Vec<RandomVariable> = (0..model.size()).map(|m| model.walsh_vector(m)).collect();
    family.extend((0..4).map(|_| model.random_variable(&mut rng)));
    let mut witnesses = Vec::new();
    for &x in &xs {
        if !chaos::split_subspace_matches_walsh(model, x) && witnesses.len() < 3 {
            witnesses.push(format!("split subspace differs at x = {}", x.label()));
        }
        for (i, psi) in family.iter().enumerate() {
            if chaos::split_check(model, psi, x) != chaos::product_test(model, psi, x) && witnesses.len() < 3 {
                witnesses.push(format!("split ≠ product test at x = {}, vector {i}", x.label()));
            }
        }
    }
    CheckResult::new(
        "chaos",
        "split_product",
        witnesses.is_empty(),
        format!("{} elements × {} vectors", xs.len(), family.len()),
    )
    .with_witnesses(witnesses)
}

fn named_defects(ctx: &Ctx) -> Vec<CheckResult> {
    let model = ctx.model();
    let mut out = Vec::new();
    for (sname, b) in &ctx.exp.subalgebras {
        for (vname, psi) in &ctx.exp.vectors {
            let name = format!("defect[{sname},{vname}]");
            if model.size() > ctx.limit.max(256) {
                out.push(CheckResult::skip("chaos", &name, format!("N = {} too large", model.size()), true));
                continue;
            }
            match chaos::atomless_defect(model, psi, b) {
                Err(_) => out.push(CheckResult::new(
                    "chaos",
                    &name,
                    true,
                    format!("{vname} is not additive on {sname}"),
                )),
                Ok(cert) => {
                    let failed: Vec<String> = cert
                        .witnesses
                        .iter()
                        .filter(|w| !w.passed)
                        .take(3)
                        .map(|w| format!("bound fails at x = {} (attained {:.12})", w.x.label(), w.attained))
                        .collect();
                    let tight = cert
                        .witnesses
                        .iter()
                        .filter(|w| w.attained >= cert.delta - crate::scalar::FLOAT_TOLERANCE && !cert.delta_sq.is_zero())
                        .count();
                    let ok = failed.is_empty() && cert.finest_is_minimal();
                    out.push(
                        CheckResult::new(
                            "chaos",
                            &name,
                            ok,
                            format!(
                                "δ² = {}, δ = {:.12}, bound holds at {} splits, tight at {}",
                                format_rational(&cert.delta_sq),
                                cert.delta,
                                cert.witnesses.len(),
                                tight
                            ),
                        )
                        .with_witnesses(failed),
                    );
                }
            }
        }
    }
    out
}

fn defect_sweep(ctx: &Ctx) -> CheckResult {
    let model = ctx.model();
    let alg = model.algebra();
    let mut rng = ctx.rng(5);
    let mut witnesses = Vec::new();
    let mut zero_defect = 0;
    for case in 0..SWEEP_CASES {
        let b = random::subalgebra(&mut rng, alg, 3);
        let raw = model.random_variable(&mut rng);
        // every fifth case keeps only the constant, forcing δ = 0
        let psi = if case % 5 == 4 {
            RandomVariable::zeros(model.size())
        } else {
            chaos::make_additive(model, &raw, &b)
        };
        let x = random::element(&mut rng, alg);
        match chaos::defect_bound_check(model, &psi, &b, x) {
            Ok(r) => {
                if !r.passed() && witnesses.len() < 3 {
                    witnesses.push(format!("case {case}: bound fails at x = {}", x.label()));
                }
                if r.delta_sq.is_zero() {
                    zero_defect += 1;
                    if !psi.is_zero() && witnesses.len() < 3 {
                        witnesses.push(format!("case {case}: δ = 0 but ψ ≠ 0"));
                    }
                }
            }
            Err(e) => witnesses.push(format!("case {case}: {e}")),
        }
    }
    CheckResult::new(
        "chaos",
        "defect_sweep",
        witnesses.is_empty(),
        format!("{SWEEP_CASES} random (ψ, b, x), {zero_defect} with δ = 0"),
    )
    .with_witnesses(witnesses)
}

// ------------------------------------------------------------ spectrum

fn spectrum_group(ctx: &Ctx) -> Vec<CheckResult> {
    const G: &str = "spectrum";
    if let Some(skip) = ctx.exact_cap(G, "space") {
        return vec![skip];
    }
    let model = ctx.model();
    let space = SpectralSpace::build(model);
    let alg = space.algebra();
    let mut rng = ctx.rng(6);
    let mut out = Vec::new();

    let total: Rational = space.atoms().map(|a| space.mass(a).clone()).sum();
    let dims_ok = space.atoms().all(|a| {
        space.dim(a) == a.cells().map(|i| model.radices()[i] as u64 - 1).product::<u64>()
    });
    out.push(CheckResult::new(
        G,
        "space",
        total.is_one() && space.measure_class_unique() && dims_ok,
        format!("{} atoms, canonical mass 1, multiplicities Π(k_i − 1)", space.atom_count()),
    ));

    let exhaustive = alg.n_cells() <= 6;
    let pairs = pairs_of(alg, exhaustive, &mut rng, 256);
    let mut strict = 0;
    let mut sets_ok = space.spectral_set(alg.zero()).atoms() == vec![alg.zero()];
    for &(x, y) in &pairs {
        let r = space.spectral_set_report(x, y);
        sets_ok &= r.passed();
        strict += usize::from(r.union_strict);
    }
    out.push(CheckResult::new(
        G,
        "spectral_sets",
        sets_ok,
        format!("S_x ∩ S_y = S_(x∧y) on {} pairs, union strict on {strict}", pairs.len()),
    ));

    out.push(match ctx.exhaustive_cap(G, "measure") {
        Some(skip) => skip,
        None => {
            let mut vectors: Vec<(String, RandomVariable)> = ctx.exp.vectors.clone();
            vectors.extend((0..10).map(|i| (format!("random {i}"), model.random_variable(&mut rng))));
            let bad: Vec<String> = vectors
                .iter()
                .filter(|(_, v)| !spectrum::verify_measure_of_projections(model, v))
                .map(|(n, _)| format!("μ_ψ(S_x) ≠ ‖Q_x ψ‖² for {n}"))
                .collect();
            CheckResult::new(
                G,
                "measure",
                bad.is_empty(),
                format!("μ_ψ(S_x) = ‖Q_x ψ‖² for {} vectors and all x", vectors.len()),
            )
            .with_witnesses(bad)
        }
    });

    if alg.n_cells() > 8 {
        out.push(CheckResult::skip(G, "sigma", "more than 8 cells", true));
    } else {
        let pairs = pairs_of(alg, alg.n_cells() <= 4, &mut rng, 64);
        let mut witnesses = Vec::new();
        for x in alg.elements() {
            if space.sigma_x(x) != space.sigma_x_by_trace(x) || !space.check_atom_of_sigma_x(x) {
                witnesses.push(format!("Σ_x at x = {}", x.label()));
            }
        }
        for &(x, y) in &pairs {
            if !space.verify_sigma_join(x, y) || !space.verify_sigma_monotone(x, y) {
                witnesses.push(format!("join or monotonicity at x = {}, y = {}", x.label(), y.label()));
            }
        }
        witnesses.truncate(3);
        out.push(
            CheckResult::new(
                G,
                "sigma",
                witnesses.is_empty(),
                format!("Σ_x ∨ Σ_y = Σ_(x∨y) on {} pairs, S_x′ a block of Σ_x", pairs.len()),
            )
            .with_witnesses(witnesses),
        );

        let mut witnesses = Vec::new();
        let mut checked = 0;
        for &(x, y) in pairs.iter().filter(|(x, y)| x.is_disjoint(*y)) {
            checked += 1;
            match space.verify_independence(x, y) {
                Ok(r) if r.independent && r.product_measure && (!x.join(y).is_one() || r.generates_all) => {}
                _ => witnesses.push(format!("x = {}, y = {}", x.label(), y.label())),
            }
        }
        witnesses.truncate(3);
        out.push(
            CheckResult::new(
                G,
                "independence",
                witnesses.is_empty(),
                format!("{checked} disjoint pairs independent under the canonical product measure"),
            )
            .with_witnesses(witnesses),
        );
    }

    out.push(match ctx.exhaustive_cap(G, "events") {
        Some(skip) => skip,
        None => {
            let mut witnesses = Vec::new();
            for x in alg.elements() {
                if !spectrum::verify_event_of_spectral_set(model, &space, x) {
                    witnesses.push(format!("H(S_x) ≠ H_x at x = {}", x.label()));
                }
            }
            for i in 0..10 {
                let mut pick = || -> Vec<BoolElem> { alg.elements().filter(|_| rng.gen_bool(0.5)).collect() };
                let e1 = SpectralSet::from_atoms(alg.n_cells(), &pick());
                let e2 = SpectralSet::from_atoms(alg.n_cells(), &pick());
                if !spectrum::verify_event_lattice(model, &e1, &e2).passed() {
                    witnesses.push(format!("lattice identities fail on random event pair {i}"));
                }
            }
            witnesses.truncate(3);
            CheckResult::new(
                G,
                "events",
                witnesses.is_empty(),
                "H(S_x) = H_x for all x, lattice identities on 10 random event pairs",
            )
            .with_witnesses(witnesses)
        }
    });

    let filters_ok = if alg.n_cells() <= 6 {
        space.atoms().all(|a| space.verify_filter_law(a))
    } else {
        (0..16).all(|_| space.verify_filter_law(random::element(&mut rng, alg)))
    };
    let mu_equiv = SpectralMeasure::of(model, &model.constant(Rational::one()));
    out.push(CheckResult::new(
        G,
        "filters",
        filters_ok && space.canonical_measure().equivalent(&space.canonical_measure()) && !mu_equiv.total().is_zero(),
        "Φ_s is the principal filter of s; filter law on all atoms",
    ));
    out
}

// ------------------------------------------------------------- regopen

fn regopen_group(ctx: &Ctx) -> Vec<CheckResult> {
    const G: &str = "regopen";
    let mut out = Vec::new();
    let r = regopen::verify_reg_laws(Sampler::Rational { max_denominator: 12 }, 200, 2, ctx.seed);
    out.push(
        CheckResult::new(
            G,
            "laws",
            r.passed(),
            format!(
                "{} pairs, {} triples; strict Cl(r∧s) on {}, strict Int(r∨s) on {}",
                r.pairs_checked, r.triples_checked, r.strict_closure_meets, r.strict_interior_joins
            ),
        )
        .with_witnesses(r.violations.into_iter().take(3)),
    );

    let half = frac(1, 2);
    let left = RegOpen::new(&[(Rational::zero(), half.clone())]).expect("interval");
    let right = RegOpen::new(&[(half.clone(), Rational::one())]).expect("interval");
    let join = left.join(&right);
    let union = left.to_set().union(&right.to_set());
    let ok = join.is_one() && !union.contains(&half) && join.interior() != union;
    out.push(CheckResult::new(
        G,
        "strictness",
        ok,
        format!("{left} ∨ {right} = {join}, union misses 1/2"),
    ));

    let mut witnesses = Vec::new();
    let named = [
        ("discrete(3)", FiniteSpace::discrete(3), 8),
        ("sierpinski", FiniteSpace::sierpinski(), 2),
        ("indiscrete(2)", FiniteSpace::indiscrete(2), 2),
    ];
    for (name, space, expected) in &named {
        let r = space.verify_reg_laws();
        if !r.passed() || r.elements != *expected {
            witnesses.push(format!("{name}: {} regular open sets", r.elements));
        }
    }
    for depth in 0..=2 {
        let space = dyadic_grid_space(depth).expect("grid space fits");
        let grid = RegOpen::grid_elements(depth);
        let mut encoded: Vec<u32> = grid.iter().map(|r| grid_encode(r, depth)).collect();
        let ops_agree = grid.iter().all(|r| {
            let e = grid_encode(r, depth);
            grid.iter().all(|s| {
                let f = grid_encode(s, depth);
                grid_encode(&r.meet(s), depth) == space.meet(e, f)
                    && grid_encode(&r.join(s), depth) == space.join(e, f)
            }) && grid_encode(&r.complement(), depth) == space.complement(e)
        });
        encoded.sort_unstable();
        if !ops_agree || encoded != space.regular_opens() || !space.verify_reg_laws().passed() {
            witnesses.push(format!("grid quotient at depth {depth} disagrees"));
        }
    }
    out.push(
        CheckResult::new(
            G,
            "finite",
            witnesses.is_empty(),
            "brute force on 3 small spaces and grid quotients of depth ≤ 2",
        )
        .with_witnesses(witnesses),
    );
    out
}

// ------------------------------------------------------------ geometry

fn geometry_group(ctx: &Ctx) -> Vec<CheckResult> {
    const G: &str = "geometry";
    let Some(emb) = &ctx.exp.embedding else {
        return vec![CheckResult::skip(G, "embedding", "no embedding in config", false)];
    };
    let depth = ctx.depth;
    let mut out = Vec::new();

    let r = emb.verify_homomorphism(depth.min(2), depth.max(1), 200, ctx.seed);
    out.push(
        CheckResult::new(
            G,
            "homomorphism",
            r.passed(),
            format!("h preserves ∧, ∨, ′ on {} pairs", r.pairs_checked),
        )
        .with_witnesses(r.counterexample.map(|(a, b)| format!("a = {a}, b = {b}"))),
    );

    out.push(check_closure(ctx, emb));

    let alg = crate::boolalg::FinitePowerAlgebra::new(emb.n_cells()).expect("cell count");
    let mut witnesses = Vec::new();
    let mut separating = 0;
    for m in alg.elements() {
        for d in 0..=depth {
            match emb.spectral_set_map(m, d) {
                Ok(img) if img.within_bound() => separating = separating.max(img.separating_depth),
                _ => witnesses.push(format!("F_D at M = {}, D = {d}", m.label())),
            }
        }
    }
    witnesses.truncate(3);
    out.push(
        CheckResult::new(
            G,
            "spectral_sets",
            witnesses.is_empty(),
            format!("F(M) ⊆ F_D(M) within 2^(1−D) for D ≤ {depth}; components separate by depth {separating}"),
        )
        .with_witnesses(witnesses),
    );

    let rising: Vec<RegOpen> = (1..=depth.max(2))
        .map(|n| RegOpen::new(&[(Rational::zero(), Rational::one() - pow2_recip(n))]).expect("interval"))
        .collect();
    let half = RegOpen::new(&[(Rational::zero(), frac(1, 2))]).expect("interval");
    let mut ok = true;
    let mut detail = Vec::new();
    for (label, chain) in [("[0,1−2^−n)", rising), ("[0,1/2)", vec![half; 3])] {
        match emb.monotone_limit_check(&chain) {
            Ok(r) => {
                ok &= r.equivalent;
                detail.push(format!("{label}: sup h = {}", r.sup.label()));
            }
            Err(e) => {
                ok = false;
                detail.push(format!("{label}: {e}"));
            }
        }
    }
    out.push(CheckResult::new(G, "monotone_limit", ok, detail.join("; ")));

    out.push(dichotomy_sweep(ctx, emb));

    let mut witnesses = Vec::new();
    for a in RegOpen::grid_elements(2) {
        match emb.shrink_chain_check(&a) {
            Ok(r) if r.passed() => {}
            _ => witnesses.push(format!("shrink chain of {a}")),
        }
    }
    witnesses.truncate(3);
    out.push(
        CheckResult::new(
            G,
            "shrink_chain",
            witnesses.is_empty(),
            "Cl(a_n) ⊆ Int(a) and h(a_n′) ↓ h(a′) for 16 grid elements",
        )
        .with_witnesses(witnesses),
    );
    out
}

fn check_closure(ctx: &Ctx, emb: &Embedding) -> CheckResult {
    let mut elements = RegOpen::grid_elements(ctx.depth.min(2));
    for d in 1..=ctx.depth {
        let base = crate::geometry::DyadicBase::new(d);
        elements.extend(
            base.elements(crate::geometry::BaseOrder::Forward)
                .into_iter()
                .map(|(i, j)| base.regopen(i, j)),
        );
    }
    match emb.verify_3b1_many(&elements, ctx.seed) {
        Ok(r) => CheckResult::new(
            "geometry",
            "closure_test",
            r.passed(),
            format!(
                "S_h(a) = {{M : F(M) ⊆ Cl(a)}} for {} dyadic elements, base order independent: {}",
                r.elements_checked, r.order_independent
            ),
        )
        .with_witnesses(
            r.mismatches
                .iter()
                .take(3)
                .map(|(a, m)| format!("a = {a}, M = {}", m.label())),
        ),
        Err(e) => CheckResult::new("geometry", "closure_test", false, e.to_string()),
    }
}

/// Random regular open sets whose endpoints mix dyadic rationals, other
/// rationals, and the sample points themselves.
pub fn random_boundary_case(rng: &mut SweepRng, emb: &Embedding) -> RegOpen {
    let endpoint = |rng: &mut SweepRng| -> Rational {
        match rng.gen_range(0..3) {
            0 => emb.points()[rng.gen_range(0..emb.n_cells().max(1))].clone(),
            1 => frac(rng.gen_range(0..=16), 16),
            _ => {
                let d = rng.gen_range(1..=12);
                frac(rng.gen_range(0..=d), d)
            }
        }
    };
    let count = rng.gen_range(0..=3);
    let raw: Vec<(Rational, Rational)> = (0..count)
        .map(|_| {
            let (a, b) = (endpoint(rng), endpoint(rng));
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    RegOpen::new(&raw).expect("endpoints lie in [0,1]")
}

fn dichotomy_sweep(ctx: &Ctx, emb: &Embedding) -> CheckResult {
    if emb.n_cells() == 0 {
        return CheckResult::skip("geometry", "dichotomy", "no sample points", false);
    }
    let mut rng = ctx.rng(7);
    let mut witnesses = Vec::new();
    let mut hitting = 0;
    let cases = 200;
    for case in 0..cases {
        let r = random_boundary_case(&mut rng, emb);
        let d = emb.boundary_dichotomy(&r);
        hitting += usize::from(!d.points_on_boundary.is_empty());
        if !d.passed() && witnesses.len() < 3 {
            witnesses.push(format!("case {case}: r = {r}"));
        }
    }
    let scan = if emb.n_cells() <= ATOM_SCAN_CELLS { "all atoms" } else { "singleton atoms" };
    CheckResult::new(
        "geometry",
        "dichotomy",
        witnesses.is_empty(),
        format!("{cases} random r, {hitting} with a sample point on Bd(r); {scan} scanned"),
    )
    .with_witnesses(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ModelConfig {
        ModelConfig::from_json(text).unwrap()
    }

    #[test]
    fn two_coins_all_pass() {
        let c = cfg(r#"{"cells": [{"probs": ["1/2", "1/2"]}, {"probs": ["1/2", "1/2"]}]}"#);
        let r = run_verification_suite(&c, "two", &SuiteOptions::default()).unwrap();
        assert!(!r.any_failed(), "{}", r.to_text());
        assert_eq!(r.find("geometry.embedding").unwrap().status, super::super::Status::Skip);
        assert_eq!(r.exit_code(true), 0);
    }

    #[test]
    fn selection_and_determinism() {
        let c = cfg(r#"{"cells": [{"probs": ["1/3", "2/3"]}, {"probs": ["1/4", "1/4", "1/2"]}], "embedding": {"points": ["1/3", "3/5"]}}"#);
        let opts = SuiteOptions {
            selection: Selection::Geometry,
            seed: Some(3),
            ..SuiteOptions::default()
        };
        let a = run_verification_suite(&c, "c", &opts).unwrap();
        let b = run_verification_suite(&c, "c", &opts).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert!(a.checks.iter().all(|c| c.group == "geometry"));
        assert!(!a.any_failed(), "{}", a.to_text());
    }

    #[test]
    fn exact_cap_is_a_resource_skip() {
        let cells = vec![r#"{"probs": ["1/2", "1/2"]}"#; 13].join(",");
        let c = cfg(&format!(r#"{{"cells": [{cells}]}}"#));
        let opts = SuiteOptions {
            selection: Selection::Spectrum,
            ..SuiteOptions::default()
        };
        let r = run_verification_suite(&c, "big", &opts).unwrap();
        assert!(r.any_resource_skip());
        assert_eq!(r.exit_code(true), 3);
        assert_eq!(r.exit_code(false), 0);
    }
}
