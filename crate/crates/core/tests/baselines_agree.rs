mod common;

use common::random_reach_problem;
use polysynth::baselines::{alg1_reach, alg3_nts_reach, target_cells};
use polysynth::geometry::Region;
use polysynth::sysdyn::Partition;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn polytopic_and_nts_fixed_points_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2 {
        let p = random_reach_problem(&mut rng);
        let part = Partition::initial(&p.system, &p.predicates);
        let targets = target_cells(&part, p.target_guard().unwrap());
        assert_eq!(targets.len(), 1);
        let r1 = alg1_reach(&p.system, &Region::from_disjoint(2, part.polys(&targets)));
        let r3 = alg3_nts_reach(&p.system, &p.predicates, &part, &targets);
        let sym = r1.x_init.difference(&r3.x_init).volume() + r3.x_init.difference(&r1.x_init).volume();
        assert!(
            sym <= 0.01 * r1.x_init.volume().max(1e-9),
            "sym diff {sym} of {}",
            r1.x_init.volume()
        );
        assert!(r1.x_init.volume() >= part.cell(targets[0]).poly.volume() - 1e-9);
    }
}
