use modlie_census::{left_table, op_count, right_table, BinaryOpTable, TernaryMapKey};
use proptest::prelude::*;

fn op_strategy() -> impl Strategy<Value = BinaryOpTable> {
    (1usize..=4).prop_flat_map(|n| (Just(n), 0..op_count(n))).prop_map(|(n, i)| BinaryOpTable::from_index(n, i).unwrap())
}

proptest! {
    #[test]
    fn key_encoding_round_trips(n in 1usize..=4, seed in any::<u64>()) {
        let mut s = seed;
        let table: Vec<u8> = (0..n * n * n).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); ((s >> 33) % n as u64) as u8 }).collect();
        let k = TernaryMapKey::encode(n, &table).unwrap();
        prop_assert_eq!(k.decode(), table);
        let json = serde_json::to_string(&k).unwrap();
        prop_assert_eq!(serde_json::from_str::<TernaryMapKey>(&json).unwrap(), k);
    }

    #[test]
    fn op_index_round_trips(op in op_strategy()) {
        prop_assert_eq!(BinaryOpTable::from_index(op.n(), op.index()).unwrap(), op);
    }

    #[test]
    fn reversal_maps_left_onto_right(op in op_strategy()) {
        // the bijection behind |left set| = |right set|
        let n = op.n();
        let l = left_table(&op.reversed());
        let r = right_table(&op);
        for x in 0..n { for y in 0..n { for z in 0..n {
            prop_assert_eq!(l.get(x, y, z), r.get(z, y, x));
        }}}
    }

    #[test]
    fn left_form_matches_definition(op in op_strategy()) {
        let n = op.n();
        let l = left_table(&op);
        for x in 0..n { for y in 0..n { for z in 0..n {
            prop_assert_eq!(l.get(x, y, z), op.apply(op.apply(x, y), z));
        }}}
    }
}
