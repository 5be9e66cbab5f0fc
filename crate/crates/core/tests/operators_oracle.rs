mod common;

use common::{check_operators, PlanarInstance, OPERATORS};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operators_agree_with_pointwise_oracle(seed in any::<u64>()) {
        let inst = PlanarInstance::random(&mut ChaCha8Rng::seed_from_u64(seed));
        let (agree, gap) = check_operators(&inst, 0.02);
        for (name, a) in OPERATORS.iter().zip(agree) {
            prop_assert!(a.fraction() >= 0.99, "{name}: {}/{} on {inst:?}", a.agree, a.total);
        }
        prop_assert!(gap < 1e-3, "robust vs precise union gap {gap}");
    }
}
