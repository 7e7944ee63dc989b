//! The ten acceptance criteria, one line of output each.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_traits::Zero;
use rand::Rng;

use noise_lab::chaos::{self, Classification};
use noise_lab::geometry::{BaseOrder, DyadicBase, Embedding};
use noise_lab::harness::random_boundary_case;
use noise_lab::model::{LawOptions, EXACT_POINT_CAP};
use noise_lab::random;
use noise_lab::regopen::{verify_reg_laws, Sampler};
use noise_lab::scalar::{frac, int, pow2_recip};
use noise_lab::spectrum::{self, SpectralSpace};
use noise_lab::{Cell, FloatModel, NoiseModel, RandomVariable, Rational, RegOpen};

type Outcome = Result<String, String>;

/// Ordered tuples of outcome counts in `kmin..=kmax`, with at most
/// `max_cells` entries and product at most `max_points`.
fn shapes(max_cells: usize, kmin: usize, kmax: usize, max_points: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(Vec::new(), 1usize)];
    while let Some((shape, n)) = stack.pop() {
        if !shape.is_empty() {
            out.push(shape.clone());
        }
        if shape.len() == max_cells {
            continue;
        }
        for k in kmin..=kmax {
            if n * k <= max_points {
                let mut next = shape.clone();
                next.push(k);
                stack.push((next, n * k));
            }
        }
    }
    out.sort();
    out
}

/// One uniform and one random nonuniform model per shape.
fn models(shapes: &[Vec<usize>], rng: &mut random::SweepRng) -> Vec<NoiseModel> {
    shapes
        .iter()
        .flat_map(|shape| [uniform(shape), skewed(shape, rng)])
        .collect()
}

/// One model per shape, alternating uniform and nonuniform probabilities.
fn one_per_shape(shapes: &[Vec<usize>], rng: &mut random::SweepRng) -> Vec<NoiseModel> {
    shapes
        .iter()
        .enumerate()
        .map(|(i, shape)| if i % 2 == 0 { uniform(shape) } else { skewed(shape, rng) })
        .collect()
}

fn uniform(shape: &[usize]) -> NoiseModel {
    NoiseModel::new(shape.iter().map(|&k| Cell::uniform(k).unwrap()).collect()).unwrap()
}

fn skewed(shape: &[usize], rng: &mut random::SweepRng) -> NoiseModel {
    let cells = shape
        .iter()
        .map(|&k| Cell::new(random::probabilities(rng, k)).unwrap())
        .collect();
    NoiseModel::new(cells).unwrap()
}

fn shape_of(model: &NoiseModel) -> String {
    format!("{:?}", model.radices())
}

fn projection_lattice() -> Outcome {
    let start = Instant::now();
    let mut rng = random::rng(0);
    let exact = models(&shapes(4, 2, 3, 81), &mut rng);
    let mut pairs = 0;
    for model in &exact {
        let r = model.verify_projection_laws(&LawOptions::default());
        if !r.exhaustive || !r.passed() {
            return Err(format!("exact laws fail on {}: {:?}", shape_of(model), r.violations.first()));
        }
        pairs += r.pairs_checked;
    }
    for case in 0..100 {
        let n = rng.gen_range(5..=6);
        let model = FloatModel::new(random::cells(&mut rng, n, &[2, 3])).unwrap();
        let r = model.verify_projection_laws(&LawOptions {
            exhaustive_pair_limit: 0,
            column_limit: 0,
            seed: case,
            ..LawOptions::default()
        });
        if !r.passed() {
            return Err(format!("float laws fail on case {case}: {:?}", r.violations.first()));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!(
        "{} exact models, {pairs} pairs with zero tolerance; 100 float models; {secs:.2} s",
        exact.len()
    ))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = random::rng(1);
    let all = one_per_shape(&shapes(6, 2, 64, 64), &mut rng);
    let mut checks = 0;
    for model in &all {
        let basis: Vec<_> = (0..model.size())
            .map(|m| {
                let e = model.walsh_vector(m);
                let c = model.coefficients(&e);
                (e, c)
            })
            .collect();
        for x in model.algebra().elements() {
            for (e, c) in &basis {
                let mut kept = c.clone();
                model.restrict_coeffs(&mut kept, |s| s.le(x));
                if model.reconstruct(&kept) != model.project_oracle(x, e) {
                    return Err(format!("{} at x = {}", shape_of(model), x.label()));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{} models with N ≤ 64, {checks} exact comparisons", all.len()))
}

fn first_chaos() -> Outcome {
    let mut rng = random::rng(2);
    let all = models(&shapes(4, 2, 3, 81), &mut rng);
    for model in &all {
        let space = chaos::first_chaos_basis(model);
        let expected: usize = model.radices().iter().map(|k| k - 1).sum();
        if space.dimension() != expected || !space.same_span(&chaos::walsh_first_chaos(model)) {
            return Err(format!("{}: dimension {}", shape_of(model), space.dimension()));
        }
        if chaos::classify(model).class != Classification::Classical {
            return Err(format!("{} not classical", shape_of(model)));
        }
    }
    Ok(format!("{} models with n ≤ 4, k ≤ 3", all.len()))
}

fn split_product() -> Outcome {
    let mut rng = random::rng(3);
    // cell order is a relabeling, so nondecreasing shapes cover every model up to it
    let sorted: Vec<Vec<usize>> = shapes(6, 2, 64, 64)
        .into_iter()
        .filter(|s| s.windows(2).all(|w| w[0] <= w[1]))
        .collect();
    let all = one_per_shape(&sorted, &mut rng);
    let mut checks = 0;
    for model in &all {
        let mut family: Vec<_> = (0..model.size()).map(|m| model.walsh_vector(m)).collect();
        family.extend((0..3).map(|_| model.random_variable(&mut rng)));
        for x in model.algebra().elements() {
            // the equations for x and x′ coincide, so solve each pair once
            if !x.contains(0) && !chaos::split_subspace_matches_walsh(model, x) {
                return Err(format!("split subspace differs on {} at x = {}", shape_of(model), x.label()));
            }
            let product = chaos::ProductTest::new(model, x);
            for psi in &family {
                if chaos::split_check(model, psi, x) != product.holds(psi) {
                    return Err(format!("{} at x = {}", shape_of(model), x.label()));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{} model shapes with N ≤ 64, {checks} (ψ, x) pairs", all.len()))
}

fn quantitative_bound() -> Outcome {
    let model = NoiseModel::coins(4);
    let alg = model.algebra();
    let r: Vec<_> = (0..4).map(|i| model.sign(i)).collect();
    let psi = &(&r[0] * &r[1]) + &(&r[2] * &r[3]);
    let b = alg
        .subalgebra(vec![alg.element(&[0, 1]).unwrap(), alg.element(&[2, 3]).unwrap()])
        .unwrap();
    let cert = chaos::atomless_defect(&model, &psi, &b).map_err(|e| e.to_string())?;
    if cert.delta_sq != int(1) {
        return Err(format!("δ² = {}", cert.delta_sq));
    }
    let x = alg.element(&[0, 2]).unwrap();
    let report = chaos::defect_bound_check(&model, &psi, &b, x).map_err(|e| e.to_string())?;
    let lhs = model.expectation(&(&(&psi * &r[0]) * &r[1]));
    let rhs_sq = model.norm_sq(&r[0]) * model.norm_sq(&r[1]) * &cert.delta_sq;
    if !report.passed() || !report.tight || lhs.clone() * lhs.clone() != rhs_sq || lhs != int(1) {
        return Err(format!("at x = {{1,3}}: E(ψ r1 r2) = {lhs}, report {report:?}"));
    }

    let mut rng = random::rng(0);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4);
        let model = NoiseModel::new(random::cells(&mut rng, n, &[2, 3])).unwrap();
        let alg = model.algebra();
        let b = random::subalgebra(&mut rng, alg, 3);
        let psi = chaos::make_additive(&model, &model.random_variable(&mut rng), &b);
        let x = random::element(&mut rng, alg);
        let r = chaos::defect_bound_check(&model, &psi, &b, x).map_err(|e| e.to_string())?;
        violations += usize::from(!r.passed());
    }
    if violations > 0 {
        return Err(format!("{violations} violations in 1000 random cases"));
    }
    Ok("δ = 1, equality at ξ = r1, η = r2 for x = {1,3}; 1000 random cases, 0 violations".into())
}

fn degenerate_direction() -> Outcome {
    let mut rng = random::rng(6);
    let (mut additive, mut zero_defect) = (0, 0);
    for case in 0..500 {
        let n = rng.gen_range(1..=4);
        let model = NoiseModel::new(random::cells(&mut rng, n, &[2, 3])).unwrap();
        let alg = model.algebra();
        let b = random::subalgebra(&mut rng, alg, 3);
        // a random zero-mean component on each atom, kept with probability 1/2
        let mut psi = RandomVariable::zeros(model.size());
        for &atom in b.atoms() {
            if rng.gen_bool(0.5) {
                let q = model.project(atom, &model.random_variable(&mut rng));
                let centred = &q + &model.constant(-model.expectation(&q));
                psi = &psi + &centred;
            }
        }
        if !chaos::satisfies_additivity(&model, &psi, &b) {
            return Err(format!("case {case}: constructed vector is not additive"));
        }
        additive += 1;
        let cert = chaos::atomless_defect(&model, &psi, &b).map_err(|e| e.to_string())?;
        if cert.delta_sq.is_zero() {
            zero_defect += 1;
            if !psi.is_zero() {
                return Err(format!("case {case}: δ = 0 but ψ ≠ 0"));
            }
        }
    }
    if zero_defect == 0 {
        return Err("no case with δ = 0 was generated".into());
    }
    Ok(format!("{additive} additive vectors, {zero_defect} with δ = 0, all of them zero"))
}

fn spectrum_checks() -> Outcome {
    let mut rng = random::rng(7);
    let all = models(&shapes(4, 2, 3, 81), &mut rng);
    let mut pairs = 0;
    for model in &all {
        let space = SpectralSpace::build(model);
        let alg = space.algebra();
        for x in alg.elements() {
            if !space.check_atom_of_sigma_x(x) {
                return Err(format!("{}: S_x′ not a block of Σ_x at x = {}", shape_of(model), x.label()));
            }
            for y in alg.elements() {
                pairs += 1;
                let fail = |what: &str| format!("{}: {what} at x = {}, y = {}", shape_of(model), x.label(), y.label());
                if !space.spectral_set_report(x, y).passed() {
                    return Err(fail("spectral set identity"));
                }
                if !space.verify_sigma_join(x, y) {
                    return Err(fail("Σ join"));
                }
                if x.is_disjoint(y) {
                    let r = space.verify_independence(x, y).map_err(|e| e.to_string())?;
                    if !r.independent || !r.product_measure || (x.join(y).is_one() && !r.generates_all) {
                        return Err(fail("independence"));
                    }
                }
            }
        }
    }
    let model = NoiseModel::new(vec![Cell::uniform(3).unwrap(), Cell::fair_coin(), Cell::new(vec![frac(1, 5), frac(4, 5)]).unwrap()]).unwrap();
    for i in 0..100 {
        let psi = model.random_variable(&mut rng);
        if !spectrum::verify_measure_of_projections(&model, &psi) {
            return Err(format!("μ_ψ(S_x) ≠ ‖Q_x ψ‖² for random vector {i}"));
        }
    }
    Ok(format!("{} models with n ≤ 4, {pairs} pairs exhaustive; 100 random ψ", all.len()))
}

fn regular_open() -> Outcome {
    let r = verify_reg_laws(Sampler::Rational { max_denominator: 24 }, 1000, 0, 0);
    if !r.passed() {
        return Err(format!("violations: {:?}", &r.violations[..r.violations.len().min(3)]));
    }
    let half = frac(1, 2);
    let left = RegOpen::new(&[(Rational::zero(), half.clone())]).unwrap();
    let right = RegOpen::new(&[(half.clone(), int(1))]).unwrap();
    let join = left.join(&right);
    let union = left.to_set().union(&right.to_set());
    if !join.is_one() || union.contains(&half) || !join.contains(&half) {
        return Err(format!("{left} ∨ {right} = {join}"));
    }
    Ok(format!(
        "{} random pairs exact; [0, 1/2) ∨ (1/2, 1] = [0, 1] while the union misses 1/2",
        r.pairs_checked
    ))
}

fn geometry() -> Outcome {
    let model = NoiseModel::coins(3);
    let emb = Embedding::new(&model, vec![frac(1, 5), frac(1, 3), frac(2, 3)]).map_err(|e| e.to_string())?;
    let alg = model.algebra();

    let mut elements = RegOpen::grid_elements(3);
    for d in 1..=6 {
        let base = DyadicBase::new(d);
        elements.extend(base.elements(BaseOrder::Forward).into_iter().map(|(i, j)| base.regopen(i, j)));
    }
    let mut rng = random::rng(9);
    let sampler = Sampler::Dyadic { depth: 6 };
    elements.extend((0..500).map(|_| sampler.sample(&mut rng)));
    let r = emb.verify_3b1_many(&elements, 0).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("closure test mismatches: {:?}", &r.mismatches[..r.mismatches.len().min(3)]));
    }

    let f13 = emb.f_exact(alg.element(&[0, 2]).unwrap());
    if f13 != vec![frac(1, 5), frac(2, 3)] {
        return Err(format!("F({{1,3}}) = {f13:?}"));
    }

    let chain: Vec<RegOpen> = (1..=8)
        .map(|n| RegOpen::new(&[(Rational::zero(), int(1) - pow2_recip(n))]).unwrap())
        .collect();
    let m = emb.monotone_limit_check(&chain).map_err(|e| e.to_string())?;
    if !m.equivalent || !m.sup_is_one || !m.all_atoms_covered {
        return Err(format!("monotone limit: {m:?}"));
    }

    let third = RegOpen::new(&[(Rational::zero(), frac(1, 3))]).unwrap();
    let d = emb.boundary_dichotomy(&third);
    let expected_join = alg.element(&[0, 2]).unwrap();
    if d.h_minus.join(d.h_minus_complement) != expected_join
        || d.join_is_one
        || d.witness_atom != Some(alg.element(&[1]).unwrap())
        || !d.passed()
    {
        return Err(format!("r = [0,1/3): {d:?}"));
    }
    let mut hitting = 0;
    for case in 0..1000 {
        let r = random_boundary_case(&mut rng, &emb);
        let d = emb.boundary_dichotomy(&r);
        if !d.passed() {
            return Err(format!("dichotomy fails at case {case}, r = {r}"));
        }
        hitting += usize::from(!d.points_on_boundary.is_empty());
    }
    Ok(format!(
        "S_h(a) = {{M : F(M) ⊆ Cl(a)}} on {} dyadic elements of depth ≤ 6; F({{1,3}}) = {{1/5, 2/3}}; chain limit; \
         dichotomy on 1000 random r, {hitting} boundary-hitting",
        r.elements_checked
    ))
}

fn reproducibility() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_noise-lab"))
            .current_dir(dir)
            .args(["verify", "examples/two-coins.json", "--seed", "0"])
            .output()
            .map_err(|e| e.to_string())
    };
    let start = Instant::now();
    let first = run()?;
    let second = run()?;
    let secs = start.elapsed().as_secs_f64();
    if first.status.code() != Some(0) {
        return Err(format!("exit {:?}:\n{}", first.status.code(), String::from_utf8_lossy(&first.stdout)));
    }
    if first.stdout != second.stdout {
        return Err("reports differ between runs".into());
    }
    if secs / 2.0 >= 60.0 {
        return Err(format!("suite took {secs:.1} s"));
    }
    Ok(format!("exit 0, {} identical bytes, {:.2} s per run", first.stdout.len(), secs / 2.0))
}

/// Numeric arguments select criteria; without any, all of them run.
fn main() {
    assert!(EXACT_POINT_CAP >= 81);
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("projection lattice", projection_lattice),
        ("oracle equivalence", oracle_equivalence),
        ("first chaos", first_chaos),
        ("split and product", split_product),
        ("quantitative defect bound", quantitative_bound),
        ("zero defect forces zero", degenerate_direction),
        ("spectrum", spectrum_checks),
        ("regular open algebra", regular_open),
        ("geometry", geometry),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.2} s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
