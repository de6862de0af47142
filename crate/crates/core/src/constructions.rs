//! Doubling constructions (global phases, completely positive maps),
//! basis structures and spectral projectors, all on exact matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::matrix::{
    coname_matrix, counit_vector, inner_product, name_matrix, swap_matrix, Matrix, MatrixError, ModelKind,
};
use crate::protocols::{beta_matrices, born_probabilities, hadamard_matrix, make_bell_base, VerificationReport};
use crate::scalars::{QiSqrt2, Semiring};

type M = Matrix<QiSqrt2>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("shape mismatch: {0:?} vs {1:?}")]
    Shape((usize, usize), (usize, usize)),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("basis structure needs n >= 1")]
    EmptyBasis,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `f ⊗ f†` realized on the doubled space as `f ⊗ f̄`.
pub fn wproj_double<S: Semiring>(f: &Matrix<S>) -> Matrix<S> {
    f.kron(&f.conjugate())
}

/// Witnesses that two maps agree up to a global phase.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseWitness {
    /// `⌜f⌝† ∘ ⌜f⌝`
    pub s: QiSqrt2,
    /// `⌜g⌝† ∘ ⌜f⌝`
    pub t: QiSqrt2,
}

/// `Some` iff the doubles of `f` and `g` coincide.
///
/// Panics if the witnesses fail `s • f = t • g` and `s s† = t t†`, which
/// would contradict equal doubles.
pub fn global_phase_equal(f: &M, g: &M) -> Result<Option<PhaseWitness>, ConstructionError> {
    if f.shape() != g.shape() {
        return Err(ConstructionError::Shape(f.shape(), g.shape()));
    }
    if wproj_double(f) != wproj_double(g) {
        return Ok(None);
    }
    let (nf, ng) = (name_matrix(f), name_matrix(g));
    let s = inner_product(&nf, &nf)?;
    let t = inner_product(&ng, &nf)?;
    assert_eq!(f.scale(&s), g.scale(&t), "phase witnesses relate the maps");
    assert_eq!(&s * &s.conj(), &t * &t.conj(), "phase witnesses have equal modulus");
    Ok(Some(PhaseWitness { s, t }))
}

/// The CPM image of `f : A → B ⊗ C`, a map `A ⊗ A* → B ⊗ B*`:
/// `(1_B ⊗ ε_C ⊗ 1_{B*}) ∘ (1_{B⊗C} ⊗ σ_{B*,C*}) ∘ (f ⊗ f_*)`.
pub fn cpm_superoperator<S: Semiring>(
    f: &Matrix<S>,
    dim_b: usize,
    dim_c: usize,
) -> Result<Matrix<S>, ConstructionError> {
    if f.rows() != dim_b * dim_c {
        return Err(ConstructionError::Shape(f.shape(), (dim_b * dim_c, f.cols())));
    }
    let doubled = f.kron(&f.conjugate());
    let swap = Matrix::identity(dim_b * dim_c).kron(&swap_matrix(dim_b, dim_c));
    let contract = Matrix::identity(dim_b).kron(&counit_vector(dim_c)).kron(&Matrix::identity(dim_b));
    Ok(contract.mul(&swap)?.mul(&doubled)?)
}

/// Copy and delete for the computational basis of an `n`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisStructure {
    pub n: usize,
    /// `|i⟩ ↦ |ii⟩`, `n² × n`.
    pub copy: M,
    /// `|i⟩ ↦ 1`, `1 × n`.
    pub delete: M,
}

pub fn basis_structure(n: usize) -> Result<BasisStructure, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::EmptyBasis);
    }
    let copy = Matrix::from_fn(n * n, n, |r, c| if r == c * n + c { QiSqrt2::one() } else { QiSqrt2::zero() });
    let delete = Matrix::from_fn(1, n, |_, _| QiSqrt2::one());
    Ok(BasisStructure { n, copy, delete })
}

impl BasisStructure {
    fn id(&self) -> M {
        Matrix::identity(self.n)
    }

    fn eq(a: Result<M, MatrixError>, b: Result<M, MatrixError>) -> bool {
        matches!((a, b), (Ok(x), Ok(y)) if x == y)
    }

    /// Coassociativity, cocommutativity and both counit laws.
    pub fn comonoid_laws(&self) -> Vec<(&'static str, bool)> {
        let (c, d, i) = (&self.copy, &self.delete, self.id());
        vec![
            ("coassociative", Self::eq(c.kron(&i).mul(c), i.kron(c).mul(c))),
            ("cocommutative", Self::eq(swap_matrix(self.n, self.n).mul(c), Ok(c.clone()))),
            ("left counit", Self::eq(d.kron(&i).mul(c), Ok(i.clone()))),
            ("right counit", Self::eq(i.kron(d).mul(c), Ok(i.clone()))),
        ]
    }

    /// `(1 ⊗ Copy†) ∘ (Copy ⊗ 1) = Copy ∘ Copy† = (Copy† ⊗ 1) ∘ (1 ⊗ Copy)`.
    pub fn frobenius(&self) -> bool {
        let (c, i) = (&self.copy, self.id());
        let cd = c.adjoint();
        let middle = c.mul(&cd);
        Self::eq(i.kron(&cd).mul(&c.kron(&i)), middle.clone()) && Self::eq(cd.kron(&i).mul(&i.kron(c)), middle)
    }
}

/// With `Measure = Copy`: measuring twice agrees with copying the
/// outcome, and deleting the outcome gives back the identity.
pub fn measurement_coalgebra_check(b: &BasisStructure) -> bool {
    let (m, i) = (&b.copy, b.id());
    let square = BasisStructure::eq(i.kron(m).mul(m), b.copy.kron(&i).mul(m));
    let counit = BasisStructure::eq(b.delete.kron(&i).mul(m), Ok(i));
    square && counit
}

/// `Copy ∘ Copy†`, which keeps the diagonal of a vectorized density matrix.
pub fn decoherence(b: &BasisStructure) -> M {
    b.copy.mul(&b.copy.adjoint()).expect("copy shapes agree")
}

/// A unitary `U : A → ⊕ A_j` with the dimensions of the parts.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    u: M,
    parts: Vec<usize>,
}

impl SpectralDecomposition {
    pub fn new(u: M, parts: Vec<usize>) -> Result<Self, ConstructionError> {
        if !u.is_unitary() {
            return Err(ConstructionError::NotUnitary);
        }
        let total: usize = parts.iter().sum();
        if total != u.rows() {
            return Err(ConstructionError::Shape(u.shape(), (total, u.cols())));
        }
        Ok(Self { u, parts })
    }

    pub fn unitary(&self) -> &M {
        &self.u
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
}

/// `P_j = ψ_j ∘ π_j` with `ψ_j = U† ∘ q_j` and `π_j = p_j ∘ U`.
pub fn spectral_projectors(d: &SpectralDecomposition) -> Vec<M> {
    let ud = d.u.adjoint();
    let mut offset = 0;
    d.parts
        .iter()
        .map(|&n| {
            let q =
                Matrix::from_fn(d.u.rows(), n, |r, c| if r == offset + c { QiSqrt2::one() } else { QiSqrt2::zero() });
            offset += n;
            let psi = ud.mul(&q).expect("shapes agree");
            psi.mul(&psi.adjoint()).expect("shapes agree")
        })
        .collect()
}

/// Idempotence, self-adjointness, orthogonality and resolution of the
/// identity, as named checks.
pub fn projector_laws(ps: &[M]) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for (i, p) in ps.iter().enumerate() {
        out.push((format!("P{i} idempotent"), p.mul(p).is_ok_and(|q| q == *p)));
        out.push((format!("P{i} self-adjoint"), p.adjoint() == *p));
        for (j, r) in ps.iter().enumerate().skip(i + 1) {
            out.push((format!("P{i} P{j} = 0"), p.mul(r).is_ok_and(|m| m == Matrix::zeros(m.rows(), m.cols()))));
        }
    }
    let total = ps.iter().skip(1).try_fold(ps[0].clone(), |acc, p| acc.add(p));
    out.push(("sum = 1".to_string(), total.is_ok_and(|t| t.is_identity())));
    out
}

fn ket(entries: &[QiSqrt2]) -> M {
    Matrix::new(entries.len(), 1, entries.to_vec()).expect("length matches")
}

/// Copy clones basis vectors but not `|+⟩`, and Delete fails on `|+⟩`.
pub fn no_cloning_witness() -> VerificationReport {
    let b = basis_structure(2).expect("n = 2");
    let (zero, one) = (ket(&[QiSqrt2::one(), QiSqrt2::zero()]), ket(&[QiSqrt2::zero(), QiSqrt2::one()]));
    let s = QiSqrt2::half_sqrt2();
    let plus = ket(&[s.clone(), s]);
    let copied = b.copy.mul(&plus).expect("2 columns");
    let mut r = VerificationReport::new("no-cloning", ModelKind::FdHilbExact);
    r.lhs_shape = copied.shape();
    r.rhs_shape = (4, 1);
    r.require("Copy|0> = |00>", b.copy.mul(&zero).is_ok_and(|v| v == zero.kron(&zero)));
    r.require("Copy|1> = |11>", b.copy.mul(&one).is_ok_and(|v| v == one.kron(&one)));
    r.require("Copy|+> != |+>|+>", copied != plus.kron(&plus));
    r.require("Delete|+> != 1", b.delete.mul(&plus).is_ok_and(|v| !v.get(0, 0).is_one()));
    r
}

/// `ψ` and `i • ψ` for `ψ = |+⟩`: equal as projectors `ψ ∘ ψ†`, different
/// as states.
pub fn non_projectivity_witness() -> VerificationReport {
    let s = QiSqrt2::half_sqrt2();
    let psi = ket(&[s.clone(), s]);
    let phi = psi.scale(&QiSqrt2::i());
    let mut r = VerificationReport::new("non-projectivity", ModelKind::FdHilbExact);
    r.lhs_shape = (2, 2);
    r.rhs_shape = (2, 2);
    let proj = |v: &M| v.mul(&v.adjoint()).expect("column times row");
    r.require("psi psi† = phi phi†", proj(&psi) == proj(&phi));
    r.require("psi != phi", psi != phi);
    r.require("doubles agree", matches!(global_phase_equal(&psi, &phi), Ok(Some(_))));
    r
}

/// `P_f = ⌜f⌝ ∘ ⌞f_*⌟` normalized by `s_f = (⌞f_*⌟ ∘ ⌜f⌝)⁻¹`, or `None`
/// when that scalar is not invertible.
pub fn bipartite_projector(f: &M) -> Option<M> {
    let name = name_matrix(f);
    let coname = coname_matrix(&f.conjugate());
    let loop_scalar = coname.mul(&name).ok()?.as_scalar().ok()?;
    let sf = loop_scalar.inverse().ok()?;
    Some(name.mul(&coname).ok()?.scale(&sf))
}

/// Gates used to draw random states: `β₁..β₄`, `H` and `i • 1`.
pub fn state_gates() -> Vec<M> {
    let mut gates = beta_matrices().to_vec();
    gates.push(hadamard_matrix());
    gates.push(Matrix::identity(2).scale(&QiSqrt2::i()));
    gates
}

/// `U|0⟩` for a random word `U` of at most `max_len` gates from
/// [`state_gates`].
pub fn random_qubit_state(rng: &mut impl Rng, max_len: usize) -> M {
    let gates = state_gates();
    let len = rng.gen_range(0..=max_len);
    (0..len).fold(ket(&[QiSqrt2::one(), QiSqrt2::zero()]), |v, _| {
        gates[rng.gen_range(0..gates.len())].mul(&v).expect("2x2 on 2x1")
    })
}

/// Born-rule checks over `count` seeded random states, measured in the
/// computational basis and, tensored with a second random state, in the
/// Bell basis.
pub fn born_rule_report(seed: u64, count: usize) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = VerificationReport::new("born-rule", ModelKind::FdHilbExact);
    let bell = make_bell_base().base().adjoint();
    let id = Matrix::identity(2);
    for k in 0..count {
        let psi = random_qubit_state(&mut rng, 8);
        let phi = random_qubit_state(&mut rng, 8);
        for (what, u, state, parts) in
            [("base_Q", &id, psi.clone(), &[1, 1][..]), ("bell", &bell, psi.kron(&phi), &[1, 1, 1, 1][..])]
        {
            match born_probabilities(u, &state, parts) {
                Ok(ps) => {
                    let total = ps.iter().fold(QiSqrt2::zero(), |a, p| &a + p);
                    r.require(format!("state {k} {what}: self-adjoint"), ps.iter().all(|p| p.conj() == *p));
                    r.require(format!("state {k} {what}: sum = 1"), total.is_one());
                }
                Err(e) => r.require(format!("state {k} {what}: {e}"), false),
            }
        }
    }
    r.lhs_shape = (1, 1);
    r.rhs_shape = (1, 1);
    r
}

fn from_checks<S: Into<String>>(case: &str, checks: impl IntoIterator<Item = (S, bool)>) -> VerificationReport {
    let mut r = VerificationReport::new(case, ModelKind::FdHilbExact);
    for (what, ok) in checks {
        r.require(what, ok);
    }
    r
}

/// Every construction check as one report per case, sorted by case name.
pub fn suite() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let b = basis_structure(n).expect("n >= 1");
        let mut checks: Vec<(String, bool)> =
            b.comonoid_laws().into_iter().map(|(w, ok)| (w.to_string(), ok)).collect();
        checks.push(("frobenius".into(), b.frobenius()));
        checks.push(("measurement coalgebra".into(), measurement_coalgebra_check(&b)));
        let diagonal =
            Matrix::from_fn(
                n * n,
                n * n,
                |r, c| {
                    if r == c && r % (n + 1) == 0 {
                        QiSqrt2::one()
                    } else {
                        QiSqrt2::zero()
                    }
                },
            );
        checks.push(("decoherence selects the diagonal".into(), decoherence(&b) == diagonal));
        let mut r = from_checks(&format!("basis-structure-{n}"), checks);
        r.lhs_shape = b.copy.shape();
        r.rhs_shape = b.copy.shape();
        out.push(r);
    }
    out.push(born_rule_report(0x5eed, 100));
    out.push(doubling_report(0xd0b1e, 100));
    out.push(no_cloning_witness());
    out.push(non_projectivity_witness());
    let bell = make_bell_base().base().adjoint();
    for (name, u, parts) in [
        ("base_Q", Matrix::identity(2), vec![1, 1]),
        ("hadamard", hadamard_matrix(), vec![1, 1]),
        ("bell", bell, vec![1, 1, 1, 1]),
    ] {
        let d = SpectralDecomposition::new(u, parts).expect("unitary");
        let ps = spectral_projectors(&d);
        let mut r = from_checks(&format!("spectral-{name}"), projector_laws(&ps));
        r.lhs_shape = ps[0].shape();
        r.rhs_shape = ps[0].shape();
        out.push(r);
    }
    let mut gates = beta_matrices().to_vec();
    gates.push(hadamard_matrix());
    let checks = gates.iter().enumerate().flat_map(|(k, f)| {
        let name = name_matrix(f);
        match bipartite_projector(f) {
            Some(p) => vec![
                (format!("gate {k}: idempotent"), p.mul(&p).is_ok_and(|q| q == p)),
                (format!("gate {k}: absorbs its name"), p.mul(&name).is_ok_and(|v| v == name)),
            ],
            None => vec![(format!("gate {k}: loop scalar invertible"), false)],
        }
    });
    let mut r = from_checks("bipartite-projectors", checks);
    r.lhs_shape = (4, 4);
    r.rhs_shape = (4, 4);
    out.push(r);
    out.sort_by(|a, b| a.case.cmp(&b.case));
    out
}

/// Doubling functoriality and phase invariance over seeded random pairs.
pub fn doubling_report(seed: u64, count: usize) -> VerificationReport {
    let mut s = crate::rewrite::Sampler::new(seed);
    let mut r = VerificationReport::new("doubling", ModelKind::FdHilbExact);
    let phases = [QiSqrt2::one(), QiSqrt2::integer(-1), QiSqrt2::i(), -QiSqrt2::i()];
    r.require("double(1) = 1", wproj_double(&Matrix::<QiSqrt2>::identity(2)).is_identity());
    for k in 0..count {
        let f = s.exact_matrix(2, 2);
        let g = s.exact_matrix(2, 2);
        let functorial =
            g.mul(&f).is_ok_and(|gf| wproj_double(&g).mul(&wproj_double(&f)).is_ok_and(|d| d == wproj_double(&gf)));
        r.require(format!("pair {k}: functorial"), functorial);
        let u = &phases[k % phases.len()];
        let uf = f.scale(u);
        r.require(format!("pair {k}: phase invariant"), wproj_double(&uf) == wproj_double(&f));
        // a zero map has zero witnesses, which still satisfy both equations
        r.require(format!("pair {k}: witnesses"), matches!(global_phase_equal(&f, &uf), Ok(Some(_))));
    }
    r.lhs_shape = (4, 4);
    r.rhs_shape = (4, 4);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> M {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| QiSqrt2::integer(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn phase_examples() {
        let id = Matrix::identity(2);
        let w = global_phase_equal(&id, &id.scale(&QiSqrt2::i())).unwrap().unwrap();
        assert_eq!(w.s, QiSqrt2::integer(2));
        assert_eq!(w.t, QiSqrt2::from_ints(0, 0, -2, 0));
        assert!(global_phase_equal(&id, &beta_matrices()[1]).unwrap().is_none());
        let psi = ket(&[QiSqrt2::one(), QiSqrt2::half_sqrt2()]);
        assert!(global_phase_equal(&psi, &psi.scale(&QiSqrt2::i())).unwrap().is_some());
        assert!(global_phase_equal(&psi, &id).is_err());
        assert_eq!(wproj_double(&Matrix::<QiSqrt2>::zeros(2, 2)), Matrix::zeros(4, 4));
    }

    #[test]
    fn cpm_of_states_and_identities() {
        let psi = ket(&[QiSqrt2::one(), QiSqrt2::i()]);
        let rho = psi.mul(&psi.adjoint()).unwrap();
        let vec_rho = Matrix::from_fn(4, 1, |r, _| rho.get(r / 2, r % 2).clone());
        assert_eq!(cpm_superoperator(&psi, 2, 1).unwrap(), vec_rho);
        assert!(cpm_superoperator(&Matrix::<QiSqrt2>::identity(2), 2, 1).unwrap().is_identity());
        let b = basis_structure(2).unwrap();
        assert_eq!(cpm_superoperator(&b.copy, 2, 2).unwrap(), decoherence(&b));
        assert!(cpm_superoperator(&psi, 3, 1).is_err());
    }

    #[test]
    fn cpm_commutes_with_dagger() {
        let mut s = crate::rewrite::Sampler::new(11);
        for _ in 0..20 {
            let f = s.exact_matrix(2, 2);
            let lhs = cpm_superoperator(&f.adjoint(), 2, 1).unwrap();
            assert_eq!(lhs, cpm_superoperator(&f, 2, 1).unwrap().adjoint());
        }
    }

    #[test]
    fn basis_structures() {
        let b = basis_structure(2).unwrap();
        assert_eq!(b.copy, qm(&[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]));
        assert!(b.comonoid_laws().iter().all(|(_, ok)| *ok));
        assert!(b.frobenius());
        assert!(measurement_coalgebra_check(&b));
        assert!(measurement_coalgebra_check(&basis_structure(4).unwrap()));
        let mut bad = b.clone();
        bad.copy.set(1, 0, QiSqrt2::one());
        assert!(!measurement_coalgebra_check(&bad));
        assert_eq!(decoherence(&b), qm(&[&[1, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1]]));
        let d = decoherence(&b);
        assert_eq!(d.mul(&d).unwrap(), d);
        let s = QiSqrt2::half_sqrt2();
        let plus = ket(&[s.clone(), s]);
        let v = plus.kron(&plus.conjugate());
        let half = QiSqrt2::ratio(1, 2);
        assert_eq!(d.mul(&v).unwrap(), ket(&[half.clone(), QiSqrt2::zero(), QiSqrt2::zero(), half]));
        assert_eq!(basis_structure(0), Err(ConstructionError::EmptyBasis));
    }

    #[test]
    fn spectral_examples() {
        let d = SpectralDecomposition::new(Matrix::identity(2), vec![1, 1]).unwrap();
        assert_eq!(spectral_projectors(&d), vec![qm(&[&[1, 0], &[0, 0]]), qm(&[&[0, 0], &[0, 1]])]);
        let h = SpectralDecomposition::new(hadamard_matrix(), vec![1, 1]).unwrap();
        let half = QiSqrt2::ratio(1, 2);
        let ps = spectral_projectors(&h);
        assert_eq!(ps[0], qm(&[&[1, 1], &[1, 1]]).scale(&half));
        assert_eq!(ps[1], qm(&[&[1, -1], &[-1, 1]]).scale(&half));
        let base = make_bell_base();
        let bell = SpectralDecomposition::new(base.base().adjoint(), vec![1, 1, 1, 1]).unwrap();
        for (p, b) in spectral_projectors(&bell).iter().zip(base.betas.iter()) {
            let v = name_matrix(b).scale(&base.s);
            assert_eq!(*p, v.mul(&v.adjoint()).unwrap());
        }
        assert!(SpectralDecomposition::new(qm(&[&[1, 1], &[0, 1]]), vec![1, 1]).is_err());
        assert!(SpectralDecomposition::new(Matrix::identity(2), vec![1]).is_err());
    }

    #[test]
    fn no_cloning() {
        let r = no_cloning_witness();
        assert!(r.equal, "{:?}", r.failures);
        let b = basis_structure(2).unwrap();
        let s = QiSqrt2::half_sqrt2();
        let plus = ket(&[s.clone(), s.clone()]);
        assert_eq!(b.copy.mul(&plus).unwrap().get(0, 0), &s);
        assert_eq!(plus.kron(&plus).get(0, 0), &QiSqrt2::ratio(1, 2));
        assert_eq!(b.delete.mul(&plus).unwrap().get(0, 0), &QiSqrt2::sqrt2());
    }

    #[test]
    fn suite_passes() {
        for r in suite() {
            assert!(r.equal, "{}: {:?}", r.case, r.failures);
        }
    }
}
