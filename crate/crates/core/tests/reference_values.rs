use std::collections::BTreeMap;

use num_traits::Zero;

use spherocheck_core::exactla::{q, QMatrix, SampleConfig, Q};
use spherocheck_core::lie::{
    decompose, sym_power_character, weight_multiplicities, weyl_dim, ProductSystem, RootSystem,
    RootType,
};
use spherocheck_core::mult_free::{multiplicity_profile, sym_decomposition};
use spherocheck_core::pair_spec::parse_pair_spec;
use spherocheck_core::rep_build::{assemble, SubalgebraInGl, DEFAULT_DIM_CAP};
use spherocheck_core::sphericity::{
    grassmannian_tangent_rank, is_bounded, normalizer_condition_holds, normalizer_in_gl,
    projective_tangent_rank, Certificate, Status,
};
use spherocheck_core::table61::{builtin_table, enumerate, verify_entry, Reading};

fn sub(text: &str) -> SubalgebraInGl {
    assemble(&parse_pair_spec(text).unwrap(), DEFAULT_DIM_CAP).unwrap()
}

fn a1() -> RootSystem {
    RootSystem::new(RootType::A, 1).unwrap()
}

/// Clebsch–Gordan for sl2, written out directly: V_a ⊗ V_b = ⊕_k V_{a+b-2k}.
fn clebsch_gordan(parts: &[i32]) -> BTreeMap<i32, i64> {
    let mut acc: BTreeMap<i32, i64> = [(0, 1)].into();
    for &b in parts {
        let mut next = BTreeMap::new();
        for (&a, &m) in &acc {
            for k in 0..=a.min(b) {
                *next.entry(a + b - 2 * k).or_insert(0) += m;
            }
        }
        acc = next;
    }
    acc
}

fn a1_decomposition(chi: &spherocheck_core::lie::Character) -> BTreeMap<i32, i64> {
    decompose(chi, &ProductSystem::simple(a1()))
        .unwrap()
        .into_iter()
        .map(|(w, m)| (w[0], m))
        .collect()
}

#[test]
fn sl2_tensor_powers() {
    let v = weight_multiplicities(&a1(), &[1]).unwrap();
    assert_eq!(a1_decomposition(&v.mul(&v)), clebsch_gordan(&[1, 1]));
    assert_eq!(a1_decomposition(&v.mul(&v).mul(&v)), clebsch_gordan(&[1, 1, 1]));
    assert_eq!(clebsch_gordan(&[1, 1, 1]), [(1, 2), (3, 1)].into());
    let s2 = sym_power_character(&v, 1, 2);
    assert_eq!(s2, weight_multiplicities(&a1(), &[2]).unwrap());
}

#[test]
fn a2_standard_is_irreducible() {
    let rs = RootSystem::new(RootType::A, 2).unwrap();
    let chi = weight_multiplicities(&rs, &[1, 0]).unwrap();
    assert_eq!(decompose(&chi, &ProductSystem::simple(rs)).unwrap(), vec![(vec![1, 0], 1)]);
}

#[test]
fn exceptional_and_spin_dimensions() {
    // (type, rank, weight, dimension by the classical constructions)
    let cases: [(RootType, usize, &[i32], u64); 6] = [
        (RootType::B, 3, &[0, 0, 1], 1 << 3),
        (RootType::B, 4, &[0, 0, 0, 1], 1 << 4),
        (RootType::D, 5, &[0, 0, 0, 1, 0], 1 << 4),
        (RootType::D, 5, &[0, 0, 0, 0, 1], 1 << 4),
        (RootType::G2, 2, &[1, 0], 7),
        (RootType::E6, 6, &[1, 0, 0, 0, 0, 0], 27),
    ];
    for (t, r, w, want) in cases {
        let rs = RootSystem::new(t, r).unwrap();
        assert_eq!(weyl_dim(&rs, w).unwrap(), want, "{t}{r} {w:?}");
    }
}

#[test]
fn assembled_dimensions() {
    let s = sub("sl(3)+sp(4): w1*w1");
    let (n, m) = (3usize, 2usize);
    assert_eq!(s.dim(), (n * n - 1) + m * (2 * m + 1));
    assert_eq!(s.ambient_dim, n * 2 * m);
    assert!(s.check_closure());

    let s = sub("sl(3): w1 ++ w2 [h(1,-1)]");
    let want = QMatrix::diagonal(&[q(1), q(1), q(1), q(-1), q(-1), q(-1)]);
    assert_eq!(s.center, vec![want.clone()]);
    assert!(want.trace().is_zero());
}

#[test]
fn tangent_ranks() {
    let cfg = SampleConfig::default();
    let mut sampler = spherocheck_core::exactla::Sampler::new(&cfg).unwrap();
    let sp4 = sub("sp(4): w1 [h1]");
    let w = sampler.next_nonzero_vector(4);
    assert_eq!(projective_tangent_rank(&sp4, &w).unwrap(), 3);

    let plane: Vec<Vec<Q>> = (0..2).map(|_| sampler.next_nonzero_vector(4)).collect();
    assert_eq!(grassmannian_tangent_rank(&sub("sl(4): w1"), &plane).unwrap(), 4);
    assert_eq!(grassmannian_tangent_rank(&sp4, &plane).unwrap(), 4);
    assert_eq!(
        grassmannian_tangent_rank(&sp4, &plane[..1]).unwrap(),
        projective_tangent_rank(&sp4, &plane[0]).unwrap()
    );
}

#[test]
fn boundedness_examples() {
    let cfg = SampleConfig::default();
    for text in ["sp(4): w1", "sp(6): w1", "g2: w1"] {
        assert_eq!(is_bounded(&sub(text), &cfg).unwrap().status, Status::Spherical, "{text}");
    }
    let v = is_bounded(&sub("sl(2): 4w1"), &cfg).unwrap();
    assert_eq!(v.status, Status::NotSpherical);
    assert!(matches!(v.certificate, Some(Certificate::DimensionCount { borel_dim: 2, target: 4 })));
}

#[test]
fn normalizers_of_standard_representations() {
    for n in 2..=4 {
        let s = sub(&format!("sl({n}): w1"));
        assert_eq!(normalizer_in_gl(&s.basis, n).len(), n * n);
        assert!(normalizer_condition_holds(&parse_pair_spec(&format!("sl({n}): w1 [h1]")).unwrap()).unwrap());
        assert!(!normalizer_condition_holds(&parse_pair_spec(&format!("sl({n}): w1")).unwrap()).unwrap());
    }
    assert!(normalizer_in_gl(&[], 3).len() == 9);
}

#[test]
fn multiplicity_free_examples() {
    // S²(V ⊗ V') = S²V ⊗ S²V' ⊕ Λ²V ⊗ Λ²V' for two copies of sl2.
    let g = sym_decomposition(&parse_pair_spec("sl(2)+sl(2): w1*w1").unwrap(), 2).unwrap();
    let mut got: Vec<_> = g.components.iter().map(|c| (c.highest_weights.clone(), c.multiplicity)).collect();
    got.sort();
    assert_eq!(got, vec![(vec![vec![0], vec![0]], 1), (vec![vec![2], vec![2]], 1)]);

    let profile = multiplicity_profile(&parse_pair_spec("sl(2): 2w1").unwrap(), 4).unwrap();
    assert_eq!(profile, vec![(1, 1), (2, 1), (3, 1), (4, 1)]);
}

#[test]
fn catalogue_spot_checks() {
    let cfg = SampleConfig::default();
    let e = enumerate(&builtin_table(), 16).unwrap();
    let find = |id: &str, text: &str| {
        e.instances
            .iter()
            .find(|i| i.entry_id == id && i.spec.to_string() == text && i.reading == Reading::Assert)
            .unwrap_or_else(|| panic!("{id} {text}"))
    };
    for (id, text, dim) in [("i.3", "sp(4): w1 [h1]", 4), ("iii.12", "sl(2): w1 ++ w1", 4), ("i.9", "so(9): w4", 16)] {
        let r = verify_entry(find(id, text), &cfg);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.dim_w, dim);
        assert!(r.profile.iter().all(|&(_, m)| m == 1));
    }
    // The listed center of iii.12 is empty while the commutant of sl2 on
    // two copies of the standard module is gl2.
    let r = verify_entry(find("iii.12", "sl(2): w1 ++ w1"), &cfg);
    let listed = r.listed_normalizer.unwrap();
    assert_eq!((listed.centralizer_dim, listed.holds), (4, false));
}
