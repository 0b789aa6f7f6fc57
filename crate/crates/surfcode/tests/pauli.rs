use proptest::prelude::*;
use surfcode::lattice::{build_lattice, Boundary, HoleSpec, LatticeBuilder, PlaquetteKind};
use surfcode::pauli::{
    ground_degeneracy, logical_pair, pair_logicals, Pauli, PauliString, Phase, StabilizerGroup,
};

#[test]
fn single_site_algebra() {
    let x = PauliString::single(1, 0, Pauli::X).unwrap();
    let z = PauliString::single(1, 0, Pauli::Z).unwrap();
    let y = PauliString::single(1, 0, Pauli::Y).unwrap();
    let xz = x.multiply(&z).unwrap();
    assert_eq!(xz, y.clone().with_phase(Phase::MINUS_I));
    assert_eq!(xz.to_string(), "-iY0");
    assert_eq!(z.multiply(&x).unwrap(), y.clone().with_phase(Phase::I));
    assert!(y.multiply(&y).unwrap().is_identity());
    assert_eq!(y.multiply(&y).unwrap().phase(), Phase::ONE);
}

#[test]
fn mismatched_lengths_fail() {
    let a = PauliString::identity(3);
    let b = PauliString::identity(4);
    assert!(a.multiply(&b).is_err());
    assert!(a.commutes(&b).is_err());
}

#[test]
fn plaquette_operators() {
    let lat = build_lattice(6, 6, Boundary::Open, &[]).unwrap();
    let group = StabilizerGroup::from_lattice(&lat).unwrap();
    let g = &group.generators()[10];
    let sq = g.multiply(g).unwrap();
    assert!(sq.is_identity());
    assert_eq!(sq.phase(), Phase::ONE);
    // adjacent Z and X plaquettes share two sites and commute
    let z = lat
        .plaquettes()
        .iter()
        .position(|p| p.origin == (2, 2) && p.kind == PlaquetteKind::Z)
        .unwrap();
    let x = lat
        .plaquettes()
        .iter()
        .position(|p| p.origin == (3, 2) && p.kind == PlaquetteKind::X)
        .unwrap();
    let (pz, px) = (&group.generators()[z], &group.generators()[x]);
    assert_eq!(pz.support().iter().filter(|s| px.support().contains(s)).count(), 2);
    assert!(pz.commutes(px).unwrap());
    assert!(pz.commutes(&PauliString::identity(36)).unwrap());
}

#[test]
fn torus_degeneracy() {
    for (w, h, q) in [(4, 4, 4), (6, 4, 4), (6, 6, 4), (4, 5, 2), (5, 4, 2), (5, 5, 2), (6, 7, 2)] {
        let lat = build_lattice(w, h, Boundary::Torus, &[]).unwrap();
        assert_eq!(ground_degeneracy(&lat).unwrap().q, q, "{w}x{h}");
    }
}

#[test]
fn open_degeneracy_counts_holes() {
    let cases: Vec<(usize, usize, Vec<HoleSpec>)> = vec![
        (4, 4, vec![]),
        (5, 4, vec![]),
        (7, 6, vec![]),
        (5, 4, vec![HoleSpec::plaquette(2, 1)]),
        (8, 8, vec![HoleSpec::new(2, 2, 5, 5)]),
        (8, 8, vec![HoleSpec::new(2, 3, 4, 4)]),
        (9, 8, vec![HoleSpec::new(1, 1, 3, 6), HoleSpec::new(5, 2, 7, 4)]),
        (9, 6, vec![HoleSpec::plaquette(2, 1), HoleSpec::plaquette(4, 3)]),
        (
            12,
            7,
            vec![HoleSpec::plaquette(2, 3), HoleSpec::new(5, 2, 7, 5), HoleSpec::plaquette(9, 2)],
        ),
    ];
    for (w, h, holes) in cases {
        let lat = build_lattice(w, h, Boundary::Open, &holes).unwrap();
        let d = ground_degeneracy(&lat).unwrap();
        assert_eq!(d.logical_qubits, holes.len(), "{w}x{h} {holes:?}");
        assert_eq!(d.q, 1 << holes.len());
    }
}

#[test]
fn edge_touching_holes_still_count() {
    let lat = LatticeBuilder::new(4, 4)
        .holes([HoleSpec::plaquette(1, 0), HoleSpec::plaquette(1, 2)])
        .clearance(0)
        .build()
        .unwrap();
    assert_eq!(ground_degeneracy(&lat).unwrap().q, 4);
}

#[test]
fn logical_pairs_are_valid() {
    let holes = [HoleSpec::plaquette(2, 3), HoleSpec::new(5, 2, 7, 5), HoleSpec::plaquette(9, 2)];
    let lat = build_lattice(12, 7, Boundary::Open, &holes).unwrap();
    let group = StabilizerGroup::from_lattice(&lat).unwrap();
    let pairs: Vec<_> = (0..3).map(|l| logical_pair(&lat, l).unwrap()).collect();
    for (l, p) in pairs.iter().enumerate() {
        assert!(group.commutes_with_all(&p.tau_z).unwrap());
        assert!(group.commutes_with_all(&p.tau_x).unwrap());
        assert!(!p.tau_z.commutes(&p.tau_x).unwrap());
        assert!(!group.contains(&p.tau_z));
        assert!(!group.contains(&p.tau_x));
        assert!(p.tau_z.multiply(&p.tau_z).unwrap().is_identity());
        for (m, q) in pairs.iter().enumerate() {
            if m != l {
                assert!(p.tau_z.commutes(&q.tau_x).unwrap());
                assert!(p.tau_z.commutes(&q.tau_z).unwrap());
            }
        }
    }
}

#[test]
fn one_plaquette_hole_tau_z_is_the_missing_plaquette() {
    let lat = build_lattice(6, 6, Boundary::Open, &[HoleSpec::plaquette(2, 1)]).unwrap();
    let pair = logical_pair(&lat, 0).unwrap();
    assert_eq!(pair.tau_z.weight(), 4);
    let corners: Vec<usize> = [(2, 1), (3, 1), (3, 2), (2, 2)]
        .into_iter()
        .map(|(x, y)| lat.site_at(x, y).unwrap())
        .collect();
    for s in corners {
        assert_eq!(pair.tau_z.get(s), Pauli::X);
    }
}

#[test]
fn pair_logicals_equal_products_up_to_stabilizers() {
    let holes = [HoleSpec::plaquette(2, 3), HoleSpec::plaquette(5, 2)];
    let lat = build_lattice(9, 7, Boundary::Open, &holes).unwrap();
    let group = StabilizerGroup::from_lattice(&lat).unwrap();
    let (zz, xx) = pair_logicals(&lat, 0, 1).unwrap();
    let (a, b) = (logical_pair(&lat, 0).unwrap(), logical_pair(&lat, 1).unwrap());
    let zz_ref = a.tau_z.multiply(&b.tau_z).unwrap();
    let xx_ref = a.tau_x.multiply(&b.tau_x).unwrap();
    assert!(group.contains(&zz.multiply(&zz_ref).unwrap()));
    assert!(group.contains(&xx.multiply(&xx_ref).unwrap()));
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0u8..4, n), 0u32..4).prop_map(move |(ops, k)| {
        let ops = ops.into_iter().enumerate().map(|(s, o)| {
            (s, [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][o as usize])
        });
        PauliString::from_ops(n, ops).unwrap().with_phase(Phase::from_power(k))
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in pauli_strategy(70), b in pauli_strategy(70), c in pauli_strategy(70)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hermitian_strings_square_to_one(a in pauli_strategy(9)) {
        let h = a.with_phase(Phase::ONE);
        let sq = h.multiply(&h).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert_eq!(sq.phase(), Phase::ONE);
    }

    #[test]
    fn commutation_matches_products(a in pauli_strategy(8), b in pauli_strategy(8)) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        let same = ab == ba;
        prop_assert_eq!(a.commutes(&b).unwrap(), same);
    }

    #[test]
    fn dense_action_matches_algebra(a in pauli_strategy(5), b in pauli_strategy(5)) {
        // (ab)|psi> = a(b|psi>) on a basis state
        use num_complex::Complex64;
        let mut psi = vec![Complex64::new(0.0, 0.0); 32];
        psi[13] = Complex64::new(1.0, 0.0);
        let lhs = a.multiply(&b).unwrap().apply(&psi);
        let rhs = a.apply(&b.apply(&psi));
        for (l, r) in lhs.iter().zip(&rhs) {
            prop_assert!((l - r).norm() < 1e-14);
        }
    }
}
