//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use catqm::cli::{print_term, rel_nobase, stage_count};
use catqm::constructions::{
    basis_structure, decoherence, global_phase_equal, measurement_coalgebra_check, no_cloning_witness,
    non_projectivity_witness, projector_laws, random_qubit_state, spectral_projectors, wproj_double,
    SpectralDecomposition,
};
use catqm::kernel::{Object, Path as TermPath, Signature, Term};
use catqm::matrix::{evaluate, Matrix, Model};
use catqm::protocols::{
    beta_matrices, born_probabilities, build_cnot_teleportation, build_entanglement_swapping,
    build_logic_gate_teleportation, build_teleportation, cnot_matrix, cnot_relations, hadamard_matrix, make_bell_base,
    maps_from_prebase, swap_projector, unitary_corrections, validate_teleportation_base, Setting,
};
use catqm::rewrite::{apply_rule, catalog, semantic_equal, Sampler};
use catqm::scalars::{BoolScalar, QiSqrt2};

type M = Matrix<QiSqrt2>;
type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let spent = start.elapsed();
    ensure(spent < limit, format!("took {spent:?}, limit {limit:?}"))
}

fn q() -> Object {
    Object::gen("Q")
}

fn eval(t: &Term, st: &Setting) -> Result<M, String> {
    evaluate(t, &st.sig, &st.model).map_err(|e| e.to_string())
}

fn vstack_copies(m: &M, n: usize, weight: &QiSqrt2) -> M {
    let block = m.scale(weight);
    Matrix::vstack(&vec![block; n]).unwrap()
}

fn teleportation() -> Outcome {
    let start = Instant::now();
    let st = Setting::standard();
    let (lhs, rhs) = build_teleportation();
    let (l, r) = (eval(&lhs, &st)?, eval(&rhs, &st)?);
    ensure(l.shape() == (8, 2), format!("lhs shape {:?}", l.shape()))?;
    ensure(l == r, format!("sides differ at {:?}", l.first_difference(&r)))?;
    ensure(l == vstack_copies(&Matrix::identity(2), 4, &QiSqrt2::ratio(1, 2)), "lhs is not half of four identities")?;
    within(start, Duration::from_secs(1))
}

fn logic_gate_teleportation() -> Outcome {
    let gates = ["beta1", "beta2", "beta3", "beta4", "H"];
    let betas = beta_matrices();
    let mut matrices = betas.to_vec();
    matrices.push(hadamard_matrix());
    for (gate, f) in gates.iter().zip(&matrices) {
        let start = Instant::now();
        for (i, (beta, phi)) in betas.iter().zip(unitary_corrections(f).map_err(|e| e.to_string())?).enumerate() {
            let expected = f.mul(beta).unwrap().mul(&f.adjoint()).unwrap();
            ensure(phi == expected, format!("{gate}: phi{} is not f beta f†", i + 1))?;
            ensure(f.mul(beta).unwrap() == phi.mul(f).unwrap(), format!("{gate}: f beta{} != phi f", i + 1))?;
        }
        let mut st = Setting::standard();
        let (lhs, rhs) = build_logic_gate_teleportation(&mut st, gate).map_err(|e| e.to_string())?;
        let (l, r) = (eval(&lhs, &st)?, eval(&rhs, &st)?);
        ensure(l.shape() == (8, 2), format!("{gate}: shape {:?}", l.shape()))?;
        ensure(l == r, format!("{gate}: sides differ at {:?}", l.first_difference(&r)))?;
        ensure(l == vstack_copies(f, 4, &QiSqrt2::ratio(1, 2)), format!("{gate}: lhs is not half of four copies"))?;
        within(start, Duration::from_secs(1))?;
    }
    Ok(())
}

fn cnot_teleportation() -> Outcome {
    let start = Instant::now();
    let cnot = cnot_matrix();
    let relations = cnot_relations(&cnot);
    ensure(relations.len() == 6, format!("{} relations", relations.len()))?;
    for (what, ok) in &relations {
        ensure(*ok, format!("relation {what} fails"))?;
    }
    let st = Setting::standard();
    let (lhs, rhs) = build_cnot_teleportation(&st).map_err(|e| e.to_string())?;
    let (l, r) = (eval(&lhs, &st)?, eval(&rhs, &st)?);
    ensure(l.shape() == (64, 4), format!("shape {:?}", l.shape()))?;
    ensure(l == r, format!("sides differ at {:?}", l.first_difference(&r)))?;
    ensure(l == vstack_copies(&cnot, 16, &QiSqrt2::ratio(1, 4)), "lhs is not a quarter of sixteen CNOTs")?;
    within(start, Duration::from_secs(10))
}

fn entanglement_swapping() -> Outcome {
    let start = Instant::now();
    let st = Setting::standard();
    let (lhs, rhs) = build_entanglement_swapping();
    let (l, r) = (eval(&lhs, &st)?, eval(&rhs, &st)?);
    ensure(l.shape() == (64, 1), format!("shape {:?}", l.shape()))?;
    ensure(l == r, format!("sides differ at {:?}", l.first_difference(&r)))?;
    let vec_id = Matrix::new(4, 1, [1, 0, 0, 1].map(QiSqrt2::integer).to_vec()).unwrap();
    let branch = vec_id.kron(&vec_id).scale(&QiSqrt2::ratio(1, 4));
    for k in 0..4 {
        let got = Matrix::from_fn(16, 1, |i, _| r.get(16 * k + i, 0).clone());
        ensure(got == branch, format!("branch {k} is not a quarter of vec I ⊗ vec I"))?;
    }
    for i in 1..=4 {
        let p = eval(&swap_projector(i), &st)?;
        ensure(p.mul(&p).unwrap() == p, format!("P{i} not idempotent"))?;
        ensure(p.adjoint() == p, format!("P{i} not self-adjoint"))?;
    }
    within(start, Duration::from_secs(5))
}

fn born_rule() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0e1);
    let bell = make_bell_base().base().adjoint();
    let id = Matrix::identity(2);
    for k in 0..100 {
        let psi = random_qubit_state(&mut rng, 8);
        let phi = random_qubit_state(&mut rng, 8);
        for (what, u, state, parts) in
            [("base_Q", &id, psi.clone(), &[1, 1][..]), ("bell", &bell, psi.kron(&phi), &[1, 1, 1, 1][..])]
        {
            let ps = born_probabilities(u, &state, parts).map_err(|e| format!("state {k} {what}: {e}"))?;
            let image = u.mul(&state).unwrap();
            for (j, p) in ps.iter().enumerate() {
                let c = image.get(j, 0);
                ensure(*p == c * &c.conj(), format!("state {k} {what}: outcome {j} is not |c|²"))?;
                ensure(p.conj() == *p, format!("state {k} {what}: outcome {j} not self-adjoint"))?;
            }
            let total = ps.iter().fold(QiSqrt2::zero(), |a, p| &a + p);
            ensure(total == QiSqrt2::one(), format!("state {k} {what}: sum is {total}"))?;
        }
    }
    Ok(())
}

fn rewrite_soundness() -> Outcome {
    let start = Instant::now();
    for (k, r) in catalog().iter().enumerate() {
        let mut s = Sampler::new(0xacce + k as u64);
        for n in 0..100 {
            let lhs = (r.sample)(&mut s);
            let rhs = apply_rule(&lhs, r, &TermPath::root(), s.signature())
                .map_err(|e| format!("{} instance {n}: {e}", r.name))?;
            let exact = semantic_equal(&lhs, &rhs, s.signature(), s.exact()).map_err(|e| e.to_string())?;
            ensure(exact, format!("{} instance {n}: unequal in fdhilb-exact", r.name))?;
            let rel = semantic_equal(&lhs, &rhs, s.signature(), s.rel()).map_err(|e| e.to_string())?;
            ensure(rel, format!("{} instance {n}: unequal in rel", r.name))?;
        }
    }
    within(start, Duration::from_secs(30))
}

fn rel_counterexample() -> Outcome {
    let start = Instant::now();
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    ensure(perms.len() == 24, "24 permutations")?;
    for p in &perms {
        let prebase = Matrix::<BoolScalar>::permutation(4, |k| p[k]);
        // a permutation column names a map with a single nonzero entry
        for b in maps_from_prebase(&prebase) {
            let ones = b.entries().iter().filter(|x| x.0).count();
            ensure(ones == 1, format!("{p:?}: map with {ones} nonzero entries"))?;
        }
        for s in [false, true] {
            let report = validate_teleportation_base(&prebase, &BoolScalar(s)).map_err(|e| e.to_string())?;
            ensure(!report.equal, format!("{p:?} with s = {} accepted", u8::from(s)))?;
        }
    }
    ensure(rel_nobase().map_err(|e| e.to_string())?.equal, "library search disagrees")?;
    within(start, Duration::from_secs(1))
}

fn objects_up_to_dim(max: usize) -> Vec<(Object, usize)> {
    fn dual(a: &Object) -> Object {
        Object::dual(a.clone())
    }
    let atoms = [(Object::Unit, 1), (q(), 2)];
    let mut by_atoms: Vec<Vec<(Object, usize)>> =
        vec![Vec::new(), atoms.iter().flat_map(|(a, n)| [(a.clone(), *n), (dual(a), *n)]).collect()];
    for k in 2..=3 {
        let mut level = Vec::new();
        for i in 1..k {
            for (a, m) in &by_atoms[i] {
                for (b, n) in &by_atoms[k - i] {
                    for (c, d) in
                        [(Object::tensor(a.clone(), b.clone()), m * n), (Object::biprod(a.clone(), b.clone()), m + n)]
                    {
                        if d <= max {
                            level.push((dual(&c), d));
                            level.push((c, d));
                        }
                    }
                }
            }
        }
        by_atoms.push(level);
    }
    let mut seen = std::collections::BTreeSet::new();
    by_atoms.into_iter().flatten().filter(|(a, _)| seen.insert(format!("{:?}", a.strictify()))).collect()
}

fn kernel() -> Outcome {
    let mut model = Model::<QiSqrt2>::new();
    let mut sig_q = Signature::new();
    sig_q.declare_object("Q").unwrap();
    model.set_dim("Q", 2);
    let objects = objects_up_to_dim(8);
    ensure(objects.len() > 20, format!("only {} objects enumerated", objects.len()))?;
    for (a, n) in &objects {
        let ad = Object::dual(a.clone());
        let left = Term::compose_all([
            Term::LambdaInv(a.clone()),
            Term::tensor(Term::Epsilon(a.clone()), Term::id(a.clone())),
            Term::Alpha(a.clone(), ad.clone(), a.clone()),
            Term::tensor(Term::id(a.clone()), Term::Eta(a.clone())),
            Term::Rho(a.clone()),
        ]);
        let right = Term::compose_all([
            Term::RhoInv(ad.clone()),
            Term::tensor(Term::id(ad.clone()), Term::Epsilon(a.clone())),
            Term::AlphaInv(ad.clone(), a.clone(), ad.clone()),
            Term::tensor(Term::Eta(a.clone()), Term::id(ad.clone())),
            Term::Lambda(ad.clone()),
        ]);
        for (what, t) in [("first triangle", &left), ("second triangle", &right)] {
            let m = evaluate(t, &sig_q, &model).map_err(|e| format!("{what} on {a:?}: {e}"))?;
            ensure(m == Matrix::identity(*n), format!("{what} on {a:?} is not the identity"))?;
        }
        let eps = evaluate(&Term::Epsilon(a.clone()), &sig_q, &model).map_err(|e| e.to_string())?;
        let via_eta = Term::compose(Term::dagger(Term::Eta(a.clone())), Term::Sigma(a.clone(), ad.clone()));
        let via_eta = evaluate(&via_eta, &sig_q, &model).map_err(|e| e.to_string())?;
        let oracle = Matrix::from_fn(1, n * n, |_, c| if c % (n + 1) == 0 { QiSqrt2::one() } else { QiSqrt2::zero() });
        ensure(eps == oracle, format!("epsilon on {a:?} is not the flattened identity"))?;
        ensure(eps == via_eta, format!("epsilon != eta† σ on {a:?}"))?;
    }

    let mut s = Sampler::new(0x1a9e);
    for k in 0..100 {
        let n = 1 + k % 4;
        let a = Object::gen("A");
        let mut sig = Signature::new();
        sig.declare_object("A").unwrap();
        sig.declare_morphism("psi", &Object::Unit, &a).unwrap();
        sig.declare_morphism("phi", &Object::Unit, &a).unwrap();
        let (psi, phi) = (s.exact_vector(n), s.exact_vector(n));
        let mut model = Model::new();
        model.set_dim("A", n);
        model.set_generator("psi", psi.clone());
        model.set_generator("phi", phi.clone());
        let decomposed = Term::compose_all([
            Term::Epsilon(a.clone()),
            Term::tensor(Term::gen("phi"), Term::conj(Term::gen("psi"))),
            Term::tensor(Term::id(Object::Unit), Term::UnitIso),
            Term::Rho(Object::Unit),
        ]);
        let adjoint = Term::compose(Term::dagger(Term::gen("psi")), Term::gen("phi"));
        let d = evaluate(&decomposed, &sig, &model).map_err(|e| format!("vector {k}: {e}"))?;
        let j = evaluate(&adjoint, &sig, &model).map_err(|e| format!("vector {k}: {e}"))?;
        let oracle = (0..n).fold(QiSqrt2::zero(), |acc, i| &acc + &(&psi.get(i, 0).conj() * phi.get(i, 0)));
        ensure(d == j, format!("vector {k}: decomposition differs from ψ† ∘ φ"))?;
        ensure(*j.get(0, 0) == oracle, format!("vector {k}: ψ† ∘ φ differs from Σ conj(ψ_i) φ_i"))?;
    }
    Ok(())
}

fn check_projectors(name: &str, ps: &[M], n: usize) -> Outcome {
    let mut total = Matrix::zeros(n, n);
    for (i, p) in ps.iter().enumerate() {
        ensure(p.mul(p).unwrap() == *p, format!("{name}: P{i} not idempotent"))?;
        ensure(p.adjoint() == *p, format!("{name}: P{i} not self-adjoint"))?;
        for (j, r) in ps.iter().enumerate() {
            if i != j {
                ensure(p.mul(r).unwrap() == Matrix::zeros(n, n), format!("{name}: P{i} P{j} != 0"))?;
            }
        }
        total = total.add(p).unwrap();
    }
    ensure(total.is_identity(), format!("{name}: projectors do not resolve the identity"))?;
    for (what, ok) in projector_laws(ps) {
        ensure(ok, format!("{name}: library law {what} fails"))?;
    }
    Ok(())
}

fn spectral() -> Outcome {
    let bell = make_bell_base().base().adjoint();
    for (name, u, parts) in [
        ("base_Q", Matrix::identity(2), vec![1, 1]),
        ("hadamard", hadamard_matrix(), vec![1, 1]),
        ("bell", bell, vec![1, 1, 1, 1]),
    ] {
        let n = u.rows();
        let d = SpectralDecomposition::new(u.clone(), parts).map_err(|e| e.to_string())?;
        let ps = spectral_projectors(&d);
        // row j of u spans the j-th eigenspace
        for (j, p) in ps.iter().enumerate() {
            let row = Matrix::from_fn(1, n, |_, c| u.get(j, c).clone());
            ensure(*p == row.adjoint().mul(&row).unwrap(), format!("{name}: P{j} is not u_j† u_j"))?;
        }
        check_projectors(name, &ps, n)?;
    }
    Ok(())
}

fn constructions() -> Outcome {
    for n in 2..=4 {
        let b = basis_structure(n).map_err(|e| e.to_string())?;
        let copy_oracle =
            Matrix::from_fn(n * n, n, |r, c| if r == c * (n + 1) { QiSqrt2::one() } else { QiSqrt2::zero() });
        ensure(b.copy == copy_oracle, format!("n = {n}: copy is not |i⟩ ↦ |ii⟩"))?;
        for (what, ok) in b.comonoid_laws() {
            ensure(ok, format!("n = {n}: {what}"))?;
        }
        ensure(b.frobenius(), format!("n = {n}: Frobenius identity"))?;
        ensure(measurement_coalgebra_check(&b), format!("n = {n}: measurement coalgebra square"))?;
        let id = Matrix::identity(n);
        let manual = id.kron(&b.copy.adjoint()).mul(&b.copy.kron(&id)).unwrap();
        let other = b.copy.adjoint().kron(&id).mul(&id.kron(&b.copy)).unwrap();
        ensure(manual == b.copy.mul(&b.copy.adjoint()).unwrap(), format!("n = {n}: Frobenius oracle"))?;
        ensure(other == manual, format!("n = {n}: Frobenius mirror oracle"))?;
        let diagonal =
            Matrix::from_fn(
                n * n,
                n * n,
                |r, c| if r == c && r % (n + 1) == 0 { QiSqrt2::one() } else { QiSqrt2::zero() },
            );
        ensure(decoherence(&b) == diagonal, format!("n = {n}: decoherence is not the diagonal selector"))?;
        ensure(b.copy.mul(&b.copy.adjoint()).unwrap() == diagonal, format!("n = {n}: Copy Copy† oracle"))?;
    }

    let mut s = Sampler::new(0xd0b);
    let phases = [QiSqrt2::one(), QiSqrt2::integer(-1), QiSqrt2::i(), QiSqrt2::from_ints(0, 0, -1, 0)];
    for k in 0..100 {
        let (f, g) = (s.exact_matrix(2, 2), s.exact_matrix(2, 2));
        let gf = g.mul(&f).unwrap();
        ensure(
            wproj_double(&g).mul(&wproj_double(&f)).unwrap() == wproj_double(&gf),
            format!("pair {k}: doubling is not functorial"),
        )?;
        let u = &phases[k % 4];
        let uf = f.scale(u);
        let w = global_phase_equal(&f, &uf).map_err(|e| e.to_string())?;
        let w = w.ok_or(format!("pair {k}: f and u•f not phase-equal"))?;
        ensure(f.scale(&w.s) == uf.scale(&w.t), format!("pair {k}: s•f != t•(u•f)"))?;
        ensure(&w.s * &w.s.conj() == &w.t * &w.t.conj(), format!("pair {k}: |s| != |t|"))?;
    }
    ensure(
        global_phase_equal(&Matrix::identity(2), &beta_matrices()[1]).map_err(|e| e.to_string())?.is_none(),
        "1 and beta2 reported phase-equal",
    )?;

    let copy = basis_structure(2).unwrap().copy;
    let h = QiSqrt2::half_sqrt2();
    let plus = Matrix::new(2, 1, vec![h.clone(), h]).unwrap();
    ensure(copy.mul(&plus).unwrap() != plus.kron(&plus), "copy clones |+⟩")?;
    let report = no_cloning_witness();
    ensure(report.equal, format!("no-cloning witness: {:?}", report.failures))?;

    let i_plus = plus.scale(&QiSqrt2::i());
    let rank_one = |v: &M| Matrix::from_fn(2, 2, |r, c| v.get(r, 0) * &v.get(c, 0).conj());
    ensure(rank_one(&plus) == rank_one(&i_plus) && plus != i_plus, "|+⟩ and i|+⟩ oracle")?;
    let report = non_projectivity_witness();
    ensure(report.equal, format!("non-projectivity witness: {:?}", report.failures))
}

fn golden(name: &str) -> Result<String, String> {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))
}

fn catqm(args: &[&str], jobs: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_catqm"))
        .args(args)
        .env("CATQM_JOBS", jobs)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), format!("catqm {args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    String::from_utf8(out.stdout).map_err(|e| e.to_string())
}

fn cli() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let printed = catqm(&["fmt", dir.join("sample.cq").to_str().unwrap()], "1")?;
    ensure(printed == golden("sample.fmt.cq")?, "fmt output differs from golden")?;
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let again = tmp.path().join("again.cq");
    fs::write(&again, &printed).map_err(|e| e.to_string())?;
    ensure(catqm(&["fmt", again.to_str().unwrap()], "1")? == printed, "fmt is not idempotent")?;

    let one = catqm(&["verify", "all", "--no-timing"], "1")?;
    ensure(one == catqm(&["verify", "all", "--no-timing"], "4")?, "verify output depends on job count")?;
    ensure(one == golden("verify_all.jsonl")?, "verify output differs from golden")?;

    let file = tmp.path().join("teleport.cq");
    fs::write(&file, format!("(term {})\n", print_term(&build_teleportation().1))).map_err(|e| e.to_string())?;
    let dot = catqm(&["export-dot", file.to_str().unwrap()], "1")?;
    ensure(dot == catqm(&["export-dot", file.to_str().unwrap()], "1")?, "DOT export not stable")?;
    ensure(stage_count(&dot) == 6, "DOT export does not show six stages")?;
    ensure(dot == golden("teleportation.dot")?, "DOT export differs from golden")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("teleportation", teleportation),
        ("logic-gate teleportation", logic_gate_teleportation),
        ("CNOT teleportation", cnot_teleportation),
        ("entanglement swapping", entanglement_swapping),
        ("Born rule", born_rule),
        ("rewrite soundness", rewrite_soundness),
        ("Rel has no teleportation base", rel_counterexample),
        ("compact-closure kernel", kernel),
        ("spectral projectors", spectral),
        ("constructions", constructions),
        ("CLI golden files", cli),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({ms} ms)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
