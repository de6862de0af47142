use crate::kernel::{Object, Term};
use crate::matrix::Matrix;
use crate::scalars::QiSqrt2;

use super::bell::{beta_inverse, cnot_relations, unitary_corrections};
use super::{ProtocolError, Setting};

fn q() -> Object {
    Object::gen("Q")
}

fn qs() -> Object {
    Object::dual(q())
}

fn s() -> QiSqrt2 {
    QiSqrt2::half_sqrt2()
}

/// `⊕ f_i = ⟨f_i ∘ p_i⟩` over the summands `doms`.
pub fn direct_sum(doms: &[Object], fs: Vec<Term>) -> Term {
    assert_eq!(doms.len(), fs.len(), "one domain per summand");
    Term::Pair(fs.into_iter().enumerate().map(|(i, f)| Term::compose(f, Term::Proj(i, doms.to_vec()))).collect())
}

/// `n·f`, the direct sum of `n` copies of `f : dom → _`.
pub fn copies(n: usize, dom: &Object, f: &Term) -> Term {
    direct_sum(&vec![dom.clone(); n], vec![f.clone(); n])
}

/// `⟨w • 1_A⟩` with `n` branches, the scalars of `weight` applied
/// innermost last.
pub fn weighted_diagonal(n: usize, weight: &[QiSqrt2], a: &Object) -> Term {
    let branch = weight.iter().rev().fold(Term::Id(a.clone()), |t, w| Term::scale(w.clone(), t));
    Term::Pair(vec![branch; n])
}

/// A permutation of tensor factors built from adjacent swaps: output
/// position `k` carries input factor `order[k]`.
pub fn permutation_term(factors: &[Object], order: &[usize]) -> Term {
    let n = factors.len();
    let mut seen = vec![false; n];
    assert!(order.len() == n && order.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true)));
    // rank[j] is the target position of the factor currently at j
    let mut rank: Vec<usize> = (0..n).map(|j| order.iter().position(|&k| k == j).expect("bijection")).collect();
    let mut cur = factors.to_vec();
    let mut swaps = Vec::new();
    for pass in 0..n {
        for p in 0..n.saturating_sub(1 + pass) {
            if rank[p] > rank[p + 1] {
                let mut parts: Vec<Term> = cur[..p].iter().cloned().map(Term::Id).collect();
                parts.push(Term::Sigma(cur[p].clone(), cur[p + 1].clone()));
                parts.extend(cur[p + 2..].iter().cloned().map(Term::Id));
                swaps.push(Term::tensor_all(parts));
                cur.swap(p, p + 1);
                rank.swap(p, p + 1);
            }
        }
    }
    if swaps.is_empty() {
        return Term::Id(Object::tensor_all(factors.iter().cloned()));
    }
    swaps.reverse();
    Term::compose_all(swaps)
}

/// `⟨s† • ⌞β_i⌟⟩ : Q ⊗ Q* → 4·I`.
fn bell_observation() -> Term {
    Term::Pair((1..=4).map(|i| Term::scale(s().conj(), Term::coname(Term::gen(format!("beta{i}"))))).collect())
}

/// `⟨p_i ⊗ 1_A⟩ : (n·I) ⊗ A → n·A`.
fn communicate(n: usize, a: &Object) -> Term {
    let units = vec![Object::Unit; n];
    Term::Pair((0..n).map(|i| Term::tensor(Term::Proj(i, units.clone()), Term::Id(a.clone()))).collect())
}

/// `⟨1_A ⊗ p_i⟩ : A ⊗ (n·I) → n·A`.
fn communicate_right(n: usize, a: &Object) -> Term {
    let units = vec![Object::Unit; n];
    Term::Pair((0..n).map(|i| Term::tensor(Term::Id(a.clone()), Term::Proj(i, units.clone()))).collect())
}

fn teleportation_rhs(state: Term, corrections: Vec<Term>) -> Term {
    let comm = Term::compose(
        Term::Pair(
            (0..4)
                .map(|i| Term::compose(Term::LambdaInv(q()), Term::Proj(i, vec![Object::tensor(Object::Unit, q()); 4])))
                .collect(),
        ),
        communicate(4, &q()),
    );
    Term::compose_all([
        direct_sum(&[q(), q(), q(), q()], corrections),
        comm,
        Term::tensor(bell_observation(), Term::Id(q())),
        Term::Alpha(q(), qs(), q()),
        Term::tensor(Term::Id(q()), state),
        Term::Rho(q()),
    ])
}

/// Teleportation over the Bell base, both sides `Q → 4·Q`.
///
/// The right side has six stages: EPR preparation, rebracketing,
/// observation, communication and correction, applied to `ρ`.
pub fn build_teleportation() -> (Term, Term) {
    let lhs = weighted_diagonal(4, &[s().conj(), s()], &q());
    let state = Term::scale(s(), Term::name(Term::Id(q())));
    let rhs = teleportation_rhs(state, (1..=4).map(beta_inverse).collect());
    (lhs, rhs)
}

/// Teleportation of the gate `gate` (a `Q → Q` generator of `setting`).
///
/// Declares the corrections `phi{i}_{gate}` in `setting`.
pub fn build_logic_gate_teleportation(setting: &mut Setting, gate: &str) -> Result<(Term, Term), ProtocolError> {
    let f = gate_matrix(setting, gate, (2, 2))?;
    let phis = unitary_corrections(&f)?;
    let mut corrections = Vec::with_capacity(4);
    for (i, phi) in phis.into_iter().enumerate() {
        let name = format!("phi{}_{gate}", i + 1);
        setting.ensure(&name, &q(), &q(), phi)?;
        corrections.push(Term::dagger(Term::gen(name)));
    }
    let lhs = Term::compose(weighted_diagonal(4, &[s().conj(), s()], &q()), Term::gen(gate));
    let state = Term::scale(s(), Term::name(Term::gen(gate)));
    Ok((lhs, teleportation_rhs(state, corrections)))
}

fn gate_matrix(setting: &Setting, gate: &str, shape: (usize, usize)) -> Result<Matrix<QiSqrt2>, ProtocolError> {
    let m =
        setting.model.generator(gate).ok_or_else(|| crate::matrix::MatrixError::MissingGenerator(gate.to_string()))?;
    if m.shape() != shape {
        return Err(ProtocolError::Shape { what: gate.to_string(), expected: shape, found: m.shape() });
    }
    Ok(m.clone())
}

fn beta_or_id(k: usize) -> Term {
    if k == 1 {
        Term::Id(q())
    } else {
        beta_inverse(k)
    }
}

/// Inverses of the factored CNOT corrections `φ₁(β_i)` and `φ₂(β_i)`,
/// read off the six commutation relations.
pub fn cnot_corrections() -> ([Term; 4], [Term; 4]) {
    // (first factor, second factor) as beta indices, 1 standing for the identity
    const FIRST: [(usize, usize); 4] = [(1, 1), (2, 2), (3, 1), (4, 2)];
    const SECOND: [(usize, usize); 4] = [(1, 1), (1, 2), (3, 3), (3, 4)];
    let inv = |(a, b): (usize, usize)| Term::tensor(beta_or_id(a), beta_or_id(b));
    (FIRST.map(inv), SECOND.map(inv))
}

/// Teleportation of `CNOT` through two Bell pairs, both sides
/// `Q ⊗ Q → 16·(Q ⊗ Q)`.
pub fn build_cnot_teleportation(setting: &Setting) -> Result<(Term, Term), ProtocolError> {
    let cnot = gate_matrix(setting, "CNOT", (4, 4))?;
    if let Some((what, _)) = cnot_relations(&cnot).into_iter().find(|(_, ok)| !ok) {
        return Err(ProtocolError::Relation(what));
    }
    let qq = Object::tensor(q(), q());
    let sst = &s().conj() * &s();
    let lhs = Term::compose(weighted_diagonal(16, &[sst.clone(), sst], &qq), Term::gen("CNOT"));

    // a1 a2 b1* b2* c1 c2 -> a1 b1* c1 c2 a2 b2*
    let six = [q(), q(), qs(), qs(), q(), q()];
    let delocate = permutation_term(&six, &[0, 2, 4, 5, 1, 3]);
    let rest = Object::tensor_all([q(), q(), q(), qs()]);
    let (first, second) = cnot_corrections();
    let leftover = Object::tensor(q(), qs());
    let correct1 = direct_sum(
        &vec![rest.clone(); 4],
        first.into_iter().map(|c| Term::tensor(c, Term::Id(leftover.clone()))).collect(),
    );
    let observe2 = copies(4, &rest, &Term::tensor(Term::Id(qq.clone()), bell_observation()));
    let units = Object::copies(4, &Object::Unit);
    let comm2 = copies(4, &Object::tensor(qq.clone(), units), &communicate_right(4, &qq));
    let inner = direct_sum(&vec![qq.clone(); 4], second.to_vec());
    let correct2 = copies(4, &Object::copies(4, &qq), &inner);
    let rhs = Term::compose_all([
        correct2,
        comm2,
        observe2,
        correct1,
        communicate(4, &rest),
        Term::tensor(bell_observation(), Term::Id(rest.clone())),
        delocate,
        Term::tensor(Term::Id(qq.clone()), Term::scale(&s() * &s(), Term::name(Term::gen("CNOT")))),
        Term::Rho(qq),
    ]);
    Ok((lhs, rhs))
}

/// `P_i = s†s • (⌜(β_i)_*⌝ ∘ ⌞β_i⌟) : Q ⊗ Q* → Q ⊗ Q*` (`i` is 1-based).
pub fn swap_projector(i: usize) -> Term {
    let b = Term::gen(format!("beta{i}"));
    Term::scale(&s().conj() * &s(), Term::compose(Term::name(Term::conj(b.clone())), Term::coname(b)))
}

/// Entanglement swapping, both sides `I → 4·(Q* ⊗ Q ⊗ Q* ⊗ Q)`.
pub fn build_entanglement_swapping() -> (Term, Term) {
    let eprs = Term::tensor(Term::name(Term::Id(q())), Term::name(Term::Id(q())));
    let s3 = &(&s() * &s()) * &s();
    let lhs = Term::Pair(vec![Term::scale(s().conj(), Term::scale(s3, eprs.clone())); 4]);

    let pair = Object::tensor(q(), qs());
    let four = vec![pair.clone(); 4];
    let theta = Term::tensor_all([Term::Id(qs()), Term::Pair((1..=4).map(swap_projector).collect()), Term::Id(q())]);
    let route = Term::Pair(
        (0..4).map(|i| Term::tensor_all([Term::Id(qs()), Term::Proj(i, four.clone()), Term::Id(q())])).collect(),
    );
    let all = Object::tensor_all([qs(), q(), qs(), q()]);
    let regroup = copies(4, &all, &permutation_term(&[qs(), q(), qs(), q()], &[2, 1, 0, 3]));
    let zeta = direct_sum(
        &vec![all.clone(); 4],
        (1..=4)
            .map(|i| {
                let inv = beta_inverse(i);
                Term::tensor(
                    Term::tensor(Term::Id(qs()), Term::dual(Term::conj(inv.clone()))),
                    Term::tensor(Term::Id(qs()), inv),
                )
            })
            .collect(),
    );
    let rhs = Term::compose_all([
        zeta,
        Term::compose(regroup, route),
        theta,
        Term::Alpha(qs(), q(), Object::tensor(qs(), q())),
        Term::scale(&s() * &s(), eprs),
    ]);
    (lhs, rhs)
}
