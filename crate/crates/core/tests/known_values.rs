//! Decompositions and multiplicities computed once with the Kostant reference
//! and frozen here, plus a few classical dimension identities.

mod common;

use common::{sc, w};
use weightlab::charcalc::{character, weyl_dimension};
use weightlab::tensor::tensor_decompose;

type Table<'a> = &'a [(&'a [i64], i64)];

const TENSORS: &[(&str, &[i64], &[i64], Table)] = &[
    (
        "G2",
        &[1, 0],
        &[1, 0],
        &[(&[0, 0], 1), (&[0, 1], 1), (&[1, 0], 1), (&[2, 0], 1)],
    ),
    (
        "G2",
        &[0, 1],
        &[1, 1],
        &[
            (&[1, 0], 1),
            (&[1, 1], 2),
            (&[1, 2], 1),
            (&[2, 0], 1),
            (&[2, 1], 1),
            (&[3, 0], 1),
            (&[4, 0], 1),
        ],
    ),
    (
        "B2",
        &[1, 1],
        &[0, 1],
        &[(&[0, 2], 1), (&[1, 0], 1), (&[1, 2], 1), (&[2, 0], 1)],
    ),
    (
        "A3",
        &[1, 0, 1],
        &[0, 1, 0],
        &[
            (&[0, 0, 2], 1),
            (&[0, 1, 0], 1),
            (&[1, 1, 1], 1),
            (&[2, 0, 0], 1),
        ],
    ),
    (
        "C3",
        &[0, 1, 0],
        &[1, 0, 0],
        &[(&[0, 0, 1], 1), (&[1, 0, 0], 1), (&[1, 1, 0], 1)],
    ),
    (
        "B3",
        &[0, 0, 1],
        &[0, 0, 1],
        &[
            (&[0, 0, 0], 1),
            (&[0, 0, 2], 1),
            (&[0, 1, 0], 1),
            (&[1, 0, 0], 1),
        ],
    ),
    (
        "A1xA2",
        &[1, 1, 0],
        &[1, 0, 1],
        &[
            (&[0, 0, 0], 1),
            (&[0, 1, 1], 1),
            (&[2, 0, 0], 1),
            (&[2, 1, 1], 1),
        ],
    ),
];

const CHARACTERS: &[(&str, &[i64], Table)] = &[
    ("B3", &[1, 0, 1], &[(&[0, 0, 1], 3), (&[1, 0, 1], 1)]),
    (
        "G2",
        &[2, 1],
        &[
            (&[0, 0], 9),
            (&[1, 0], 8),
            (&[2, 0], 5),
            (&[3, 0], 2),
            (&[0, 1], 6),
            (&[1, 1], 3),
            (&[2, 1], 1),
            (&[0, 2], 1),
        ],
    ),
    (
        "C3",
        &[1, 1, 0],
        &[(&[1, 0, 0], 4), (&[1, 1, 0], 1), (&[0, 0, 1], 2)],
    ),
    (
        "D4",
        &[1, 0, 1, 1],
        &[
            (&[0, 0, 0, 0], 14),
            (&[2, 0, 0, 0], 3),
            (&[0, 1, 0, 0], 7),
            (&[0, 0, 2, 0], 3),
            (&[1, 0, 1, 1], 1),
            (&[0, 0, 0, 2], 3),
        ],
    ),
];

#[test]
fn frozen_tensor_products() {
    for (t, a, b, expect) in TENSORS {
        let d = sc(t);
        let got = tensor_decompose(&d, &w(a), &w(b)).unwrap();
        assert_eq!(got.summands.len(), expect.len(), "{t} {a:?} ⊗ {b:?}");
        for (nu, m) in *expect {
            assert_eq!(got.multiplicity(&w(nu)), *m, "{t} {a:?} ⊗ {b:?} at {nu:?}");
        }
    }
}

#[test]
fn frozen_dominant_multiplicities() {
    for (t, lam, expect) in CHARACTERS {
        let d = sc(t);
        let chi = character(&d, &w(lam)).unwrap();
        assert_eq!(chi.len(), expect.len(), "{t} {lam:?}");
        for (mu, m) in *expect {
            assert_eq!(chi.get(&w(mu)), *m, "{t} {lam:?} at {mu:?}");
        }
    }
}

#[test]
fn classical_dimensions() {
    let cases: &[(&str, &[i64], u64)] = &[
        ("E6", &[1, 0, 0, 0, 0, 0], 27),
        ("E6", &[0, 1, 0, 0, 0, 0], 78),
        ("E7", &[0, 0, 0, 0, 0, 0, 1], 56),
        ("E8", &[0, 0, 0, 0, 0, 0, 0, 1], 248),
        ("F4", &[0, 0, 0, 1], 26),
        ("F4", &[1, 0, 0, 0], 52),
        ("G2", &[1, 1], 64),
        ("B3", &[0, 0, 1], 8),
        ("D4", &[0, 1, 0, 0], 28),
    ];
    for (t, lam, dim) in cases {
        assert_eq!(
            weyl_dimension(&sc(t), &w(lam)).unwrap(),
            (*dim).into(),
            "{t} {lam:?}"
        );
    }
}

#[test]
fn e6_minuscule_square() {
    let d = sc("E6");
    let got = tensor_decompose(&d, &w(&[1, 0, 0, 0, 0, 0]), &w(&[0, 0, 0, 0, 0, 1])).unwrap();
    let mut dims: Vec<u64> = got
        .summands
        .iter()
        .map(|(nu, m)| {
            assert_eq!(m, 1);
            weyl_dimension(&d, nu).unwrap().try_into().unwrap()
        })
        .collect();
    dims.sort();
    assert_eq!(dims, vec![1, 78, 650]);
}

#[test]
fn f4_small_square() {
    let d = sc("F4");
    let got = tensor_decompose(&d, &w(&[0, 0, 0, 1]), &w(&[0, 0, 0, 1])).unwrap();
    let mut dims: Vec<u64> = got
        .summands
        .iter()
        .map(|(nu, _)| weyl_dimension(&d, nu).unwrap().try_into().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![1, 26, 52, 273, 324]);
}
