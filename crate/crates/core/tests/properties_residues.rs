use lambda_adic::characters::is_even_pair;
use lambda_adic::eisenstein::minimal_level;
use lambda_adic::padic_lfun::is_delta_pair;
use lambda_adic::residues::{residue_ring, total_residue, total_residue_fricke};
use lambda_adic::DirichletCharacter;

fn pairs(p: u64) -> Vec<(DirichletCharacter, DirichletCharacter)> {
    let mut rhos = vec![DirichletCharacter::trivial(1)];
    for d in [-4i64, -3, 8] {
        rhos.push(DirichletCharacter::quadratic(d).unwrap());
    }
    let mut out = Vec::new();
    for rho in &rhos {
        for psi in &rhos[..3] {
            for k in 0..(p as i64 - 1) {
                let theta = rho.mul(&DirichletCharacter::omega_pow(p, k));
                let both_trivial = theta.primitive().is_trivial() && psi.is_trivial();
                if is_even_pair(&theta, psi) && !both_trivial && theta.modulus() * psi.modulus() <= 120 {
                    out.push((theta, psi.clone()));
                }
            }
        }
    }
    out
}

#[test]
fn residue_theorem_over_sampled_pairs() {
    for p in [5u64, 7] {
        let mut branches = [0usize; 2];
        for (theta, psi) in pairs(p) {
            let n = minimal_level(&theta, &psi, 1, p);
            let ring = residue_ring(&theta, &psi, p);
            let total = total_residue(&theta, &psi, n * p, &ring, 6).unwrap();
            assert!(total.is_zero(), "p = {}, {:?} {:?}: {}", p, theta, psi, total);
            branches[is_delta_pair(&theta, &psi, p) as usize] += 1;
        }
        assert!(branches[0] > 0 && branches[1] > 0, "p = {}: {:?}", p, branches);
    }
}

#[test]
fn residue_theorem_after_fricke() {
    let p = 5;
    let one = DirichletCharacter::trivial(1);
    let q4 = DirichletCharacter::quadratic(-4).unwrap();
    let om = DirichletCharacter::omega_pow(p, 1);
    for (theta0, psi0, t) in [(om.clone(), q4.clone(), 1u64), (om.clone(), q4.clone(), 2), (om, q4.clone(), 3), (q4.clone(), one, 2)] {
        let n = minimal_level(&theta0, &psi0, t, p);
        let ring = residue_ring(&theta0, &psi0, p);
        let total = total_residue_fricke(&theta0, &psi0, t, n * p, &ring, 6).unwrap();
        assert!(total.is_zero(), "t = {}: {}", t, total);
    }
}

#[test]
fn trivial_pair_is_refused() {
    let p = 5;
    let theta = DirichletCharacter::trivial(p);
    let one = DirichletCharacter::trivial(1);
    let ring = residue_ring(&theta, &one, p);
    assert!(matches!(total_residue(&theta, &one, p, &ring, 4), Err(lambda_adic::Error::Inadmissible(_))));
}
