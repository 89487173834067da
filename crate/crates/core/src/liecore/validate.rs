use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::algebra::StructureAlgebra;
use crate::error::Error;
use crate::exactla::{is_zero_vector, Scalar, Vector};

/// Identities the validator knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Lie = 0,
    Associative = 1,
    Commutative = 2,
    /// Left-symmetric and right-commutative.
    LeftNovikov = 3,
    /// Right-symmetric and left-commutative (identities of the opposite of a left Novikov algebra).
    RightNovikov = 4,
}

impl Identity {
    pub const COUNT: usize = 5;
    pub const ALL: [Identity; 5] = [
        Identity::Lie,
        Identity::Associative,
        Identity::Commutative,
        Identity::LeftNovikov,
        Identity::RightNovikov,
    ];
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "lie" => Ok(Identity::Lie),
            "associative" | "assoc" => Ok(Identity::Associative),
            "commutative" | "comm" => Ok(Identity::Commutative),
            "left-novikov" => Ok(Identity::LeftNovikov),
            "right-novikov" => Ok(Identity::RightNovikov),
            other => Err(Error::UnsupportedIdentity(other.to_string())),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::Lie => "lie",
            Identity::Associative => "associative",
            Identity::Commutative => "commutative",
            Identity::LeftNovikov => "left-novikov",
            Identity::RightNovikov => "right-novikov",
        };
        f.write_str(s)
    }
}

/// A basis tuple on which a law fails, with the nonzero defect vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub law: &'static str,
    pub indices: Vec<usize>,
    pub names: Vec<String>,
    pub defect: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub identity: Identity,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}: pass", self.identity),
            Some(w) => {
                let defect: Vec<String> = w.defect.iter().map(Scalar::to_string).collect();
                write!(
                    f,
                    "{}: FAIL ({} on ({})) defect [{}]",
                    self.identity,
                    w.law,
                    w.names.join(", "),
                    defect.join(" ")
                )
            }
        }
    }
}

pub fn validate(a: &StructureAlgebra, identity: Identity) -> ValidationReport {
    let witness = find_witness(a, identity);
    let _ = a.cached_verdict(identity).set(witness.is_none());
    ValidationReport {
        identity,
        passed: witness.is_none(),
        witness,
    }
}

/// Cached pass/fail verdict.
pub fn satisfies(a: &StructureAlgebra, identity: Identity) -> bool {
    *a.cached_verdict(identity)
        .get_or_init(|| find_witness(a, identity).is_none())
}

pub fn validate_named(a: &StructureAlgebra, identity: &str) -> Result<ValidationReport, Error> {
    Ok(validate(a, identity.parse()?))
}

struct Ctx<'a> {
    a: &'a StructureAlgebra,
}

impl Ctx<'_> {
    fn e(&self, i: usize) -> Vector {
        self.a.basis_vector(i)
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.a.product(x, y).expect("vectors built from this algebra")
    }

    /// (x y) z with basis inputs.
    fn left(&self, i: usize, j: usize, k: usize) -> Vector {
        let xy = self.mul(&self.e(i), &self.e(j));
        self.a.times_basis(&xy, k)
    }

    /// x (y z) with basis inputs.
    fn right(&self, i: usize, j: usize, k: usize) -> Vector {
        let yz = self.mul(&self.e(j), &self.e(k));
        self.a.basis_times(i, &yz)
    }

    fn witness(&self, law: &'static str, indices: Vec<usize>, defect: Vector) -> Option<Witness> {
        if is_zero_vector(&defect) {
            return None;
        }
        let names = indices.iter().map(|&i| self.a.basis_names()[i].clone()).collect();
        Some(Witness { law, indices, names, defect })
    }
}

fn sub(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn find_witness(a: &StructureAlgebra, identity: Identity) -> Option<Witness> {
    let c = Ctx { a };
    let d = a.dim();
    let pairs = || (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)));
    let triples = || pairs().flat_map(move |(i, j)| (0..d).map(move |k| (i, j, k)));
    match identity {
        Identity::Lie => {
            for i in 0..d {
                let w = c.witness("alternation x*x = 0", vec![i, i], c.mul(&c.e(i), &c.e(i)));
                if w.is_some() {
                    return w;
                }
            }
            for (i, j) in pairs().filter(|(i, j)| i < j) {
                let defect = add(&c.mul(&c.e(i), &c.e(j)), &c.mul(&c.e(j), &c.e(i)));
                if let Some(w) = c.witness("anticommutativity", vec![i, j], defect) {
                    return Some(w);
                }
            }
            triples().find_map(|(i, j, k)| {
                // [[x,y],z] + [[y,z],x] + [[z,x],y]
                let defect = add(&add(&c.left(i, j, k), &c.left(j, k, i)), &c.left(k, i, j));
                c.witness("Jacobi", vec![i, j, k], defect)
            })
        }
        Identity::Associative => {
            triples().find_map(|(i, j, k)| c.witness("associativity", vec![i, j, k], sub(&c.left(i, j, k), &c.right(i, j, k))))
        }
        Identity::Commutative => pairs().find_map(|(i, j)| {
            c.witness("commutativity", vec![i, j], sub(&c.mul(&c.e(i), &c.e(j)), &c.mul(&c.e(j), &c.e(i))))
        }),
        Identity::LeftNovikov => triples().find_map(|(i, j, k)| {
            let assoc_ijk = sub(&c.left(i, j, k), &c.right(i, j, k));
            let assoc_jik = sub(&c.left(j, i, k), &c.right(j, i, k));
            c.witness("left symmetry", vec![i, j, k], sub(&assoc_ijk, &assoc_jik))
                .or_else(|| c.witness("right commutativity", vec![i, j, k], sub(&c.left(i, j, k), &c.left(i, k, j))))
        }),
        Identity::RightNovikov => triples().find_map(|(i, j, k)| {
            let assoc_ijk = sub(&c.left(i, j, k), &c.right(i, j, k));
            let assoc_ikj = sub(&c.left(i, k, j), &c.right(i, k, j));
            c.witness("right symmetry", vec![i, j, k], sub(&assoc_ijk, &assoc_ikj))
                .or_else(|| c.witness("left commutativity", vec![i, j, k], sub(&c.right(i, j, k), &c.right(j, i, k))))
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unknown_identity_is_rejected() {
        assert!(matches!("jordan".parse::<Identity>(), Err(Error::UnsupportedIdentity(_))));
    }

    #[test]
    fn square_violation_is_reported_first() {
        let f = FieldSpec::GF2;
        let mut a = StructureAlgebra::zero(f, vec!["x".into(), "y".into()]);
        a.set_product(0, 0, &f.unit_vector(2, 1)).unwrap();
        let r = validate(&a, Identity::Lie);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert_eq!(w.indices, vec![0, 0]);
        assert!(w.law.starts_with("alternation"));
    }

    /// Direct expansion of the Jacobiator on basis elements, independent of the validator.
    fn jacobiator(a: &StructureAlgebra, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let d = a.dim();
        let f = a.field();
        let mut out = f.zeros(d);
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for m in 0..d {
                let cxy = a.structure_constant(x, y, m);
                for (n, o) in out.iter_mut().enumerate() {
                    *o += &(&cxy * &a.structure_constant(m, z, n));
                }
            }
        }
        out
    }

    #[test]
    fn random_alternating_gf2_algebras_fail_on_jacobi() {
        let f = FieldSpec::GF2;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut failures = 0;
        for _ in 0..200 {
            let mut a = StructureAlgebra::zero(f, vec!["a".into(), "b".into(), "c".into()]);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let v: Vec<Scalar> = (0..3).map(|_| f.from_i64(rng.random_range(0..2))).collect();
                a.set_product(i, j, &v).unwrap();
                a.set_product(j, i, &v).unwrap();
            }
            let r = validate(&a, Identity::Lie);
            let brute_ok = (0..3).all(|i| (0..3).all(|j| (0..3).all(|k| is_zero_vector(&jacobiator(&a, i, j, k)))));
            assert_eq!(r.passed, brute_ok);
            if let Some(w) = r.witness {
                failures += 1;
                assert_eq!(w.law, "Jacobi");
                let (i, j, k) = (w.indices[0], w.indices[1], w.indices[2]);
                assert_eq!(jacobiator(&a, i, j, k), w.defect);
            }
        }
        assert!(failures > 100);
    }

    #[test]
    fn verdict_cache_matches_validator() {
        let f = FieldSpec::Rationals;
        let a = StructureAlgebra::zero(f, vec!["x".into()]);
        for id in Identity::ALL {
            assert!(satisfies(&a, id));
            assert!(validate(&a, id).passed);
        }
    }
}
