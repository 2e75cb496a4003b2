//! Cross-module consistency at rank 3: the combinatorial product formulas
//! agree with reduction in the ring presentations, and the classical limits
//! match. The full-scope battery lives in the CLI crate's acceptance suite.

use qschubert::perm::{CurveDegree, Permutation, Space};
use qschubert::qprod::ProductCtx;
use qschubert::qring::Presentation;
use qschubert::schubert::classical_schubert_all;

#[test]
fn products_match_ring_reduction_rank_three() {
    for space in [Space::FlagVariety, Space::SchubertDivisorX] {
        let pres = Presentation::quantum(space, 3).unwrap();
        let ctx = ProductCtx::new(space, 3);
        for u in pres.basis_perms() {
            for v in pres.basis_perms() {
                let combinatorial = ctx.product(u, v).unwrap();
                let prod = &pres.schubert_polynomial(u).unwrap().clone()
                    * &pres.schubert_polynomial(v).unwrap().clone();
                let reduced = pres.reduce(&prod).unwrap();
                assert_eq!(combinatorial, reduced, "mismatch at {u} * {v} in {space}");
            }
        }
    }
}

#[test]
fn quantum_products_degenerate_to_classical_rank_three() {
    for space in [Space::FlagVariety, Space::SchubertDivisorX] {
        let quantum = Presentation::quantum(space, 3).unwrap();
        let classical = Presentation::classical(space, 3).unwrap();
        let ctx = ProductCtx::new(space, 3);
        let cls = classical_schubert_all(3);
        for u in quantum.basis_perms() {
            for v in quantum.basis_perms() {
                let qpart = ctx.product(u, v).unwrap().classical_part();
                let cpart = classical.reduce(&(&cls[u] * &cls[v])).unwrap();
                assert_eq!(qpart, cpart, "classical limit mismatch at {u} * {v}");
            }
        }
    }
}

#[test]
fn quantum_square_of_top_divisor_class() {
    // the unique degree-adding quantum correction at rank 3:
    // sigma^{s2} * sigma^{s2} = sigma^{231} + q2 sigma^{id}
    let pres = Presentation::quantum(Space::FlagVariety, 3).unwrap();
    let s2 = Permutation::parse("s:2", 3).unwrap();
    let square = {
        let p = pres.schubert_polynomial(&s2).unwrap().clone();
        &p * &p
    };
    let e = pres.reduce(&square).unwrap();
    assert_eq!(e.len(), 2);
    assert_eq!(
        e.coefficient(
            &Permutation::new(vec![2, 3, 1]).unwrap(),
            &CurveDegree::zero(3)
        ),
        1.into()
    );
    assert_eq!(
        e.coefficient(&Permutation::identity(3), &CurveDegree::new(vec![0, 1])),
        1.into()
    );
}
