use std::collections::BTreeMap;

use ckalg::algebra::Algebra;
use ckalg::base::BaseFamily;
use ckalg::formula::{evaluate, evaluate_direct, parse, random_formula};
use ckalg::product::CyclicAlgebra;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family() -> impl Strategy<Value = BaseFamily> {
    prop_oneof![
        Just(BaseFamily::Two),
        Just(BaseFamily::Three),
        Just(BaseFamily::Four)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    // the expanded (primitive) route and the derived-operation route agree
    #[test]
    fn expansion_agrees_with_direct(seed in any::<u64>(), k in 1usize..=3, fam in family(), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let alg = CyclicAlgebra::full(fam, k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &["p", "q", "r"], 5, true);
        let els = alg.elements();
        let v: BTreeMap<String, _> = ["p", "q", "r"].iter().zip(&picks).map(|(x, i)| (x.to_string(), *i.get(&els))).collect();
        prop_assert_eq!(evaluate(&f, &alg, &v).unwrap(), evaluate_direct(&f, &alg, &v).unwrap(), "{}", f);
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &["p", "q", "x_1"], 7, true);
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn shift_has_period_k(k in 1usize..=4, fam in family(), i in any::<prop::sample::Index>()) {
        let alg = CyclicAlgebra::full(fam, k).unwrap();
        let x = *i.get(&alg.elements());
        prop_assert_eq!(alg.shift_pow(x, k), x);
        prop_assert_eq!(alg.neg(alg.neg(x)), x);
        // (tm) x ∨ ∼x ≤ x ∨ x*
        prop_assert!(alg.le(alg.join(x, alg.neg(x)), alg.join(x, alg.pseudo(x))));
    }

    #[test]
    fn de_morgan_and_pseudocomplement(k in 1usize..=3, fam in family(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let alg = CyclicAlgebra::full(fam, k).unwrap();
        let els = alg.elements();
        let (x, y) = (*i.get(&els), *j.get(&els));
        prop_assert_eq!(alg.neg(alg.meet(x, y)), alg.join(alg.neg(x), alg.neg(y)));
        prop_assert_eq!(alg.meet(x, alg.pseudo(x)), alg.zero());
        prop_assert_eq!(alg.meet(x, y) == alg.zero(), alg.le(y, alg.pseudo(x)));
        prop_assert_eq!(alg.shift(alg.meet(x, y)), alg.meet(alg.shift(x), alg.shift(y)));
    }
}
