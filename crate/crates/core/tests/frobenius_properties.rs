use lasagna_core::frobenius::{FrobBasisElt, Frobenius, Strand, TensorElt};

const NN: [Strand; 2] = [Strand::Negative, Strand::Negative];

fn mult_tensor(alg: &Frobenius, a: usize, b: usize) -> Option<usize> {
    alg.multiply(FrobBasisElt::new(a), FrobBasisElt::new(b)).map(|x| x.exponent)
}

#[test]
fn coassociative() {
    for n in 1..=5 {
        let alg = Frobenius::new(n).unwrap();
        for x in alg.basis() {
            let d = alg.comultiply(x).unwrap();
            let left = d.comultiply_at(&alg, 0).unwrap();
            let right = d.comultiply_at(&alg, 1).unwrap();
            assert_eq!(left.with_tags(vec![Strand::Negative; 3]), right.with_tags(vec![Strand::Negative; 3]), "N={n} x={x:?}");
        }
    }
}

#[test]
fn counital() {
    for n in 1..=5 {
        let alg = Frobenius::new(n).unwrap();
        for x in alg.basis() {
            let d = alg.comultiply(x).unwrap();
            for pos in 0..2 {
                let reduced = d.counit_at(&alg, pos).unwrap();
                let expect = TensorElt::pure(vec![Strand::Negative], vec![x.exponent]);
                assert_eq!(reduced.with_tags(vec![Strand::Negative]), expect, "N={n} x={x:?} pos={pos}");
            }
        }
    }
}

#[test]
fn frobenius_identity() {
    // Delta(ab) = (a (x) 1) Delta(b) = Delta(a) (1 (x) b).
    for n in 1..=5 {
        let alg = Frobenius::new(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                let lhs = match mult_tensor(&alg, a, b) {
                    Some(e) => alg.comultiply(FrobBasisElt::new(e)).unwrap(),
                    None => TensorElt::zero(NN.to_vec()),
                };
                let mut left = TensorElt::zero(NN.to_vec());
                for (t, c) in alg.comultiply(FrobBasisElt::new(b)).unwrap().terms() {
                    if let Some(e) = mult_tensor(&alg, a, t[0]) {
                        left.add_term(vec![e, t[1]], c);
                    }
                }
                let mut right = TensorElt::zero(NN.to_vec());
                for (t, c) in alg.comultiply(FrobBasisElt::new(a)).unwrap().terms() {
                    if let Some(e) = mult_tensor(&alg, t[1], b) {
                        right.add_term(vec![t[0], e], c);
                    }
                }
                assert_eq!(lhs, left, "N={n} a={a} b={b}");
                assert_eq!(lhs, right, "N={n} a={a} b={b}");
            }
        }
    }
}

#[test]
fn multiplication_is_associative_and_commutative() {
    for n in 1..=5 {
        let alg = Frobenius::new(n).unwrap();
        for a in 0..n {
            for b in 0..n {
                assert_eq!(mult_tensor(&alg, a, b), mult_tensor(&alg, b, a));
                for c in 0..n {
                    let ab_c = mult_tensor(&alg, a, b).and_then(|e| mult_tensor(&alg, e, c));
                    let a_bc = mult_tensor(&alg, b, c).and_then(|e| mult_tensor(&alg, a, e));
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }
}

#[test]
fn structure_maps_are_graded() {
    // Multiplication has degree N - 1 and comultiplication degree N - 1.
    for n in 1..=5 {
        let alg = Frobenius::new(n).unwrap();
        let shift = n as i64 - 1;
        for a in alg.basis() {
            for b in alg.basis() {
                if let Some(p) = alg.multiply(a, b) {
                    assert_eq!(alg.degree(p), alg.degree(a) + alg.degree(b) + shift);
                }
            }
            let d = alg.comultiply(a).unwrap();
            assert_eq!(d.degree(&alg), Some(alg.degree(a) + shift));
            if alg.counit(a).unwrap() != 0 {
                assert_eq!(alg.degree(a), shift);
            }
        }
    }
}

#[test]
fn bad_exponents_are_rejected() {
    let alg = Frobenius::new(3).unwrap();
    assert!(alg.comultiply(FrobBasisElt::new(3)).is_err());
    assert!(alg.counit(FrobBasisElt::new(7)).is_err());
    assert!(Frobenius::new(0).is_err());
}
