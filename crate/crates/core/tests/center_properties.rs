use lasagna_core::center::{
    admissible_basis, balanced_matchings, bracket_matching, balanced_span_check, center_presented, dual_membership, expected_rank,
    matching_functional, psi_phi_negative, psi_phi_positive, relation_matrix, subsets, AdmissibleCoordinates,
    CenterElement, DualFunctional, DualLattice, ParityPermutation, PartialMatching, SignConvention, Subset,
};
use lasagna_core::intlinalg::{determinant, smith_normal_form, IntMatrix};
use lasagna_core::lincomb::LinComb;
use lasagna_core::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn all_matchings(points: usize, k: usize) -> Vec<PartialMatching> {
    fn go(points: usize, k: usize, used: u64, cur: &mut Vec<(usize, usize)>, out: &mut Vec<PartialMatching>) {
        if cur.len() == k {
            out.push(PartialMatching::new(cur.clone()).unwrap());
            return;
        }
        let start = cur.last().map_or(1, |p| p.0 + 1);
        for i in start..=points {
            if used >> i & 1 == 1 {
                continue;
            }
            for j in 1..=points {
                if j != i && used >> j & 1 == 0 {
                    cur.push((i, j));
                    go(points, k, used | 1 << i | 1 << j, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(points, k, 0, &mut Vec::new(), &mut out);
    out
}

#[test]
fn pieces_are_free_of_ballot_rank() {
    for n in 0..=4 {
        for k in 0..=2 * n {
            let piece = center_presented(n, k);
            assert!(piece.group.torsion.is_empty(), "n={n} k={k}");
            assert_eq!(piece.group.free_rank, expected_rank(n, k), "n={n} k={k}");
        }
    }
}

#[test]
fn admissible_monomials_complete_the_relations_to_a_basis() {
    // [relations | admissible unit vectors] is unimodular onto Z^{monomials}.
    for n in 1..=4 {
        for k in 0..=n {
            let (monomials, _, rel) = relation_matrix(n, k);
            let adm = admissible_basis(n, k);
            assert_eq!(adm.len(), expected_rank(n, k));
            let units: Vec<Vec<(usize, BigInt)>> =
                adm.iter().map(|s| vec![(monomials.iter().position(|m| m == s).unwrap(), BigInt::one())]).collect();
            let stacked = rel.hstack(&IntMatrix::from_columns(monomials.len(), &units));
            let snf = smith_normal_form(&stacked);
            assert_eq!(snf.rank(), monomials.len(), "n={n} k={k}");
            assert!(snf.diagonal.iter().all(One::is_one), "n={n} k={k}");
        }
    }
}

#[test]
fn admissible_coordinates_kill_relations() {
    for n in 1..=4 {
        for k in 0..=n {
            let coords = AdmissibleCoordinates::new(n, k).unwrap();
            let (monomials, _, rel) = relation_matrix(n, k);
            assert!(coords.transform.mul(&rel).is_zero());
            for (i, s) in coords.basis.iter().enumerate() {
                let v = coords.reduce(&CenterElement::single(*s, 1));
                for (r, x) in v.iter().enumerate() {
                    assert_eq!(*x, BigInt::from(i64::from(r == i)));
                }
            }
            assert_eq!(coords.monomials, monomials);
        }
    }
}

#[test]
fn dual_lattice_pairs_unimodularly_with_admissible_basis() {
    for n in 1..=4 {
        for k in 0..=n {
            let lattice = DualLattice::from_kernel(n, k);
            assert_eq!(lattice.rank(), expected_rank(n, k));
            let adm = admissible_basis(n, k);
            let rows: Vec<Vec<i64>> = adm
                .iter()
                .map(|s| (0..lattice.rank()).map(|c| lattice.basis_functional(c).evaluate(*s)).collect())
                .collect();
            let pairing = if rows.is_empty() { IntMatrix::zeros(0, 0) } else { IntMatrix::from_rows(&rows) };
            assert!(determinant(&pairing).abs().is_one(), "n={n} k={k}");
        }
    }
}

#[test]
fn bracket_basis_is_balanced_and_triangular() {
    for n in 1..=5 {
        for k in 0..=n {
            let adm = admissible_basis(n, k);
            let sum = |s: &Subset| s.elements().iter().sum::<usize>();
            for a in &adm {
                let m = bracket_matching(*a);
                assert!(m.is_balanced());
                assert_eq!(m.len(), k);
                let f = matching_functional(n, &m);
                assert_eq!(f.evaluate(*a), 1);
                for b in adm.iter().filter(|b| *b != a && f.evaluate(**b) != 0) {
                    assert!(sum(b) < sum(a));
                }
            }
        }
    }
}

#[test]
fn dual_lattice_constructions_agree() {
    for n in 0..=4 {
        for k in 0..=2 * n {
            let fast = DualLattice::new(n, k);
            let slow = DualLattice::from_kernel(n, k);
            assert_eq!(fast.rank(), slow.rank());
            let fs: Vec<_> = (0..slow.rank()).map(|c| slow.basis_functional(c)).collect();
            let change = fast.coordinates_of_all(&fs).unwrap();
            assert!(determinant(&change).abs().is_one(), "n={n} k={k}");
        }
    }
}

#[test]
fn matching_functionals_are_in_the_dual() {
    for n in 1..=3 {
        for k in 0..=n {
            let lattice = DualLattice::new(n, k);
            for m in all_matchings(2 * n, k) {
                let f = matching_functional(n, &m);
                assert!(dual_membership(&f), "n={n} m={m:?}");
                assert!(lattice.coordinates(&f).is_ok());
            }
        }
    }
    let f = DualFunctional::new(2, 1, LinComb::single(Subset::from_elements(&[1]), 1));
    assert!(!dual_membership(&f));
    assert!(matches!(DualLattice::new(2, 1).coordinates(&f), Err(Error::NotInDual)));
}

#[test]
fn balanced_functionals_span() {
    for n in 1..=4 {
        for k in 0..=n {
            assert!(balanced_span_check(n, k).unwrap(), "n={n} k={k}");
            assert!(balanced_matchings(n, k).iter().all(PartialMatching::is_balanced));
        }
    }
}

#[test]
fn relations_are_permutation_stable() {
    for n in 1..=3 {
        for k in 0..=n {
            let (monomials, labels, rel) = relation_matrix(n, k);
            for sigma in ParityPermutation::generators(n) {
                let rows: Vec<usize> =
                    monomials.iter().map(|s| monomials.iter().position(|t| *t == sigma.apply_subset(*s)).unwrap()).collect();
                let cols: Vec<usize> =
                    labels.iter().map(|s| labels.iter().position(|t| *t == sigma.apply_subset(*s)).unwrap()).collect();
                for (r, &sr) in rows.iter().enumerate() {
                    for (c, &sc) in cols.iter().enumerate() {
                        assert_eq!(rel.get(sr, sc), rel.get(r, c));
                    }
                }
            }
        }
    }
}

#[test]
fn structure_maps_commute_with_permutations() {
    for signs in SignConvention::all() {
        for n in 1..=3 {
            for sigma in ParityPermutation::generators(n) {
                let ext = sigma.extended();
                for k in 0..=n {
                    for s in subsets(2 * n, k) {
                        let x = CenterElement::single(s, 1);
                        let (psi, phi) = psi_phi_positive(n, &sigma.act(&x), signs);
                        let (psi0, phi0) = psi_phi_positive(n, &x, signs);
                        assert_eq!(psi, ext.act(&psi0));
                        assert_eq!(phi, ext.act(&phi0));
                    }
                    let lattice = DualLattice::new(n, k);
                    for c in 0..lattice.rank() {
                        let f = lattice.basis_functional(c);
                        let (psi, phi) = psi_phi_negative(&sigma.act_dual(&f), signs);
                        let (psi0, phi0) = psi_phi_negative(&f, signs);
                        assert_eq!(psi, ext.act_dual(&psi0));
                        assert_eq!(phi, ext.act_dual(&phi0));
                    }
                }
            }
        }
    }
}

#[test]
fn dual_maps_land_in_the_dual() {
    for signs in SignConvention::all() {
        for n in 0..=3 {
            for k in 0..=n {
                let lattice = DualLattice::new(n, k);
                for c in 0..lattice.rank() {
                    let (psi, phi) = psi_phi_negative(&lattice.basis_functional(c), signs);
                    assert!(dual_membership(&psi) && dual_membership(&phi), "n={n} k={k}");
                }
            }
        }
    }
}

#[test]
fn psi_extends_matchings() {
    for signs in SignConvention::all() {
        for n in 1..=3 {
            for k in 0..=n {
                for m in balanced_matchings(n, k) {
                    let (psi, _) = psi_phi_negative(&matching_functional(n, &m), signs);
                    let extended = m.with_pair(2 * n + 2, 2 * n + 1).unwrap();
                    assert_eq!(psi, matching_functional(n + 1, &extended).scaled(signs.psi));
                }
            }
        }
    }
}

#[test]
fn positive_maps_vanish_on_relations() {
    // psi and phi are well defined on the quotient.
    for signs in SignConvention::all() {
        for n in 1..=3 {
            for k in 0..=n {
                let (monomials, _, rel) = relation_matrix(n, k);
                let psi_target = AdmissibleCoordinates::new(n + 1, k + 1).unwrap();
                let phi_target = AdmissibleCoordinates::new(n + 1, k + 2);
                for c in 0..rel.cols() {
                    let x: CenterElement = rel
                        .column(c)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(r, _)| (monomials[r], 1))
                        .collect();
                    let (psi, phi) = psi_phi_positive(n, &x, signs);
                    assert!(psi_target.is_zero(&psi));
                    if let Ok(t) = &phi_target {
                        assert!(t.is_zero(&phi));
                    }
                }
            }
        }
    }
}

#[test]
fn dual_phi_is_an_isomorphism_in_degree_zero() {
    for signs in SignConvention::all() {
        for n in 0..=4 {
            let (_, phi) = psi_phi_negative(&DualLattice::new(n, 0).basis_functional(0), signs);
            let coords = DualLattice::new(n + 1, 0).coordinates(&phi).unwrap();
            assert_eq!(coords.len(), 1);
            assert!(coords[0].abs().is_one());
        }
    }
}

#[test]
fn parity_mixing_is_rejected() {
    assert!(matches!(ParityPermutation::from_images(vec![2, 1]), Err(Error::ParityMixing)));
    assert!(ParityPermutation::transposition(2, 1, 2).is_err());
    assert!(ParityPermutation::from_parts(&[1, 0], &[0, 1]).is_ok());
}
