use modlie::decomp::{petravchuk_fixture, verify};
use modlie::exactla::{FieldSpec, Scalar, Subspace};
use modlie::liecore::{satisfies, Identity, StructureAlgebra};
use proptest::prelude::*;

const P: i64 = 3;

/// Random structure constants over GF(3) as a flat `c[i][j][k]` table.
fn table(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..P, dim * dim * dim)
}

fn algebra(dim: usize, c: &[i64]) -> StructureAlgebra {
    let f = FieldSpec::prime(P as u8).unwrap();
    let names = (0..dim).map(|i| format!("x{i}")).collect();
    StructureAlgebra::from_fn(f, names, |i, j| {
        (0..dim).map(|k| f.from_i64(c[(i * dim + j) * dim + k])).collect()
    })
    .unwrap()
}

/// Product of basis-coordinate vectors with plain integer arithmetic mod 3.
fn mul(dim: usize, c: &[i64], x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = vec![0; dim];
    for i in 0..dim {
        for j in 0..dim {
            for (k, o) in out.iter_mut().enumerate() {
                *o = (*o + x[i] * y[j] * c[(i * dim + j) * dim + k]) % P;
            }
        }
    }
    out
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    (0..dim).map(|k| i64::from(k == i)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % P).collect()
}

fn brute(dim: usize, c: &[i64], id: Identity) -> bool {
    let e: Vec<Vec<i64>> = (0..dim).map(|i| unit(dim, i)).collect();
    let m = |x: &[i64], y: &[i64]| mul(dim, c, x, y);
    let zero = |v: &[i64]| v.iter().all(|&x| x % P == 0);
    let neg = |v: &[i64]| v.iter().map(|x| (P - x % P) % P).collect::<Vec<_>>();
    let triples = (0..dim).flat_map(|a| (0..dim).flat_map(move |b| (0..dim).map(move |d| (a, b, d))));
    match id {
        Identity::Lie => {
            (0..dim).all(|i| zero(&m(&e[i], &e[i])))
                && (0..dim).all(|i| (0..dim).all(|j| zero(&add(&m(&e[i], &e[j]), &m(&e[j], &e[i])))))
                && triples.clone().all(|(a, b, d)| {
                    let t = add(&add(&m(&m(&e[a], &e[b]), &e[d]), &m(&m(&e[b], &e[d]), &e[a])), &m(&m(&e[d], &e[a]), &e[b]));
                    zero(&t)
                })
        }
        Identity::Associative => triples
            .clone()
            .all(|(a, b, d)| zero(&add(&m(&m(&e[a], &e[b]), &e[d]), &neg(&m(&e[a], &m(&e[b], &e[d])))))),
        Identity::Commutative => {
            (0..dim).all(|i| (0..dim).all(|j| zero(&add(&m(&e[i], &e[j]), &neg(&m(&e[j], &e[i]))))))
        }
        _ => unreachable!(),
    }
}

fn vectors(f: FieldSpec, raw: &[Vec<i64>]) -> Vec<Vec<Scalar>> {
    raw.iter().map(|v| v.iter().map(|&x| f.from_i64(x)).collect()).collect()
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::GF2),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::Rationals)
    ]
}

fn raw_vectors(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..3, dim), 0..=dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn validator_matches_brute_force(dim in 1usize..=3, seed in any::<u64>()) {
        // sparse tables hit the identities often enough to exercise both outcomes
        let mut s = seed;
        let c: Vec<i64> = (0..dim * dim * dim)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if (s >> 33) % 4 == 0 { ((s >> 40) % P as u64) as i64 } else { 0 }
            })
            .collect();
        let a = algebra(dim, &c);
        for id in [Identity::Lie, Identity::Associative, Identity::Commutative] {
            prop_assert_eq!(satisfies(&a, id), brute(dim, &c, id), "{:?} on {:?}", id, c);
        }
    }

    #[test]
    fn dense_tables_agree_too(c in table(2)) {
        let a = algebra(2, &c);
        for id in [Identity::Lie, Identity::Associative, Identity::Commutative] {
            prop_assert_eq!(satisfies(&a, id), brute(2, &c, id));
        }
    }

    #[test]
    fn algebra_json_round_trip(c in table(3)) {
        let a = algebra(3, &c);
        let back: StructureAlgebra = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn subspace_dimension_formula(f in field(), u in raw_vectors(4), v in raw_vectors(4)) {
        let u = Subspace::from_vectors(f, 4, &vectors(f, &u)).unwrap();
        let v = Subspace::from_vectors(f, 4, &vectors(f, &v)).unwrap();
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains(&u).unwrap() && sum.contains(&v).unwrap());
        prop_assert!(u.contains(&meet).unwrap() && v.contains(&meet).unwrap());
        for w in meet.vectors() {
            prop_assert!(u.contains_vector(&w).unwrap() && v.contains_vector(&w).unwrap());
        }
    }

    #[test]
    fn subspace_json_round_trip(f in field(), u in raw_vectors(5)) {
        let u = Subspace::from_vectors(f, 5, &vectors(f, &u)).unwrap();
        let back: Subspace = serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
        prop_assert_eq!(u, back);
    }

    #[test]
    fn coordinates_recombine(f in field(), u in raw_vectors(4), w in prop::collection::vec(-2i64..3, 4)) {
        let u = Subspace::from_vectors(f, 4, &vectors(f, &u)).unwrap();
        let w = &vectors(f, &[w])[0];
        match u.coordinates(w).unwrap() {
            Some(c) => prop_assert_eq!(&u.combine(&c), w),
            None => prop_assert!(!u.contains_vector(w).unwrap()),
        }
    }

    #[test]
    fn verify_is_symmetric(n in raw_vectors(5), m in raw_vectors(5)) {
        let (l, _, _) = petravchuk_fixture();
        let f = l.field();
        let n = Subspace::from_vectors(f, 5, &vectors(f, &n)).unwrap();
        let m = Subspace::from_vectors(f, 5, &vectors(f, &m)).unwrap();
        let a = verify(&l, &n, &m);
        let b = verify(&l, &m, &n);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.n_nilpotency_index, b.m_nilpotency_index);
            prop_assert_eq!(a.is_direct, b.is_direct);
        }
    }
}
