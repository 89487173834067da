use std::time::Instant;

use modlie_census::{
    census, census_sets, conjecture_check, lr_overlap, lr_report, CensusConfig, CensusResult, Which,
};

fn cfg(threads: usize) -> CensusConfig {
    CensusConfig {
        threads,
        ..CensusConfig::default()
    }
}

#[test]
fn table_rows_one_to_three() {
    let expected = [(1, 1, 1, 1), (2, 14, 21, 5), (3, 19292, 38472, 48)];
    for (n, t_left, t_lr, t_sym) in expected {
        let start = Instant::now();
        let r = census(n, Which::all(), &CensusConfig::default()).unwrap();
        assert_eq!(r.t_left, Some(t_left), "n={n}");
        assert_eq!(r.t_lr, Some(t_lr), "n={n}");
        assert_eq!(r.t_sym, Some(t_sym), "n={n}");
        assert_eq!(r.t_sym_comm, Some(t_sym), "n={n}");
        assert!(r.bounds_violation().is_none());
        assert!(start.elapsed().as_secs() < 10);
    }
}

#[test]
fn left_and_right_sets_consistent() {
    for n in 1..=3 {
        let r = lr_report(n, &cfg(4)).unwrap();
        assert_eq!(r.t_left, r.t_right, "n={n}");
        assert_eq!(r.t_lr, 2 * r.t_left - r.overlap, "n={n}");
        assert_eq!(lr_overlap(n, &cfg(1)).unwrap(), r.overlap);
    }
    assert_eq!(lr_overlap(1, &cfg(1)).unwrap(), 1);
    assert_eq!(lr_overlap(2, &cfg(1)).unwrap(), 7);
    assert_eq!(lr_overlap(3, &cfg(2)).unwrap(), 112);
}

#[test]
fn parallel_and_single_threaded_agree() {
    for n in 1..=3 {
        let a = census(n, Which::all(), &cfg(1)).unwrap();
        for t in [2, 3, 8] {
            let b = census(n, Which::all(), &cfg(t)).unwrap();
            assert_eq!((a.t_left, a.t_lr, a.t_sym, a.t_sym_comm), (b.t_left, b.t_lr, b.t_sym, b.t_sym_comm));
        }
        assert_eq!(census_sets(n, &cfg(1)).unwrap(), census_sets(n, &cfg(4)).unwrap());
    }
}

#[test]
fn symmetric_members_decode_to_symmetric_tables() {
    let sets = census_sets(3, &cfg(4)).unwrap();
    assert_eq!(sets.sym.len(), 48);
    for k in &sets.sym {
        let t = k.decode();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let v = t[x * 9 + y * 3 + z];
                    for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                        assert_eq!(t[a * 9 + b * 3 + c], v);
                    }
                }
            }
        }
        assert!(sets.left.binary_search(k).is_ok());
    }
}

#[test]
fn commutative_sets_coincide() {
    for n in 1..=3 {
        let c = conjecture_check(n, &cfg(4)).unwrap();
        assert!(c.equal_sets, "n={n}");
        assert!(c.witness.is_none());
        assert_eq!(c.t_sym, c.t_sym_comm);
        let sets = census_sets(n, &cfg(2)).unwrap();
        assert_eq!(sets.sym, sets.sym_comm);
    }
}

#[test]
fn result_json_round_trip() {
    let r = census(2, "left".parse().unwrap(), &cfg(1)).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert!(s.contains("\"t_left\":14"));
    assert!(!s.contains("t_lr"));
    let back: CensusResult = serde_json::from_str(&s).unwrap();
    assert_eq!(back.t_left, Some(14));
    assert_eq!(back.ops_enumerated, 16);
}
