use linked_bandits::env::{
    parse_means, play, record, ArmStats, BanditInstance, Environment, PlayLedger, PlayRequest, RngStream, SamplingMode,
};
use linked_bandits::Error;
use proptest::prelude::*;

#[test]
fn prefix_law_two_arms() {
    let inst = BanditInstance::new(vec![0.3, 0.5]).unwrap();
    let req = PlayRequest::full(2).unwrap();
    let mut rng = RngStream::new(9, 0);
    let plays = 100_000;
    let (mut first, mut second) = (0u32, 0u32);
    for _ in 0..plays {
        match play(&inst, &req, &mut rng).unwrap().success_arm() {
            Some(0) => first += 1,
            Some(1) => second += 1,
            _ => {}
        }
    }
    assert!((f64::from(first) / plays as f64 - 0.3).abs() < 0.01);
    assert!((f64::from(second) / plays as f64 - 0.35).abs() < 0.01);
}

#[test]
fn deterministic_feedback() {
    let mut rng = RngStream::new(0, 0);
    let zeros = BanditInstance::new(vec![0.0; 4]).unwrap();
    let fb = play(&zeros, &PlayRequest::full(4).unwrap(), &mut rng).unwrap();
    assert_eq!(fb.sampled(), &[0, 1, 2, 3]);
    assert!(fb.rewards().iter().all(|&r| !r));

    let sure = BanditInstance::new(vec![1.0, 0.2, 0.7]).unwrap();
    let fb = play(&sure, &PlayRequest::full(3).unwrap(), &mut rng).unwrap();
    assert_eq!((fb.sampled(), fb.rewards()), (&[0][..], &[true][..]));
}

#[test]
fn record_examples() {
    let inst = BanditInstance::new(vec![0.0, 1.0, 0.0]).unwrap();
    let mut rng = RngStream::new(0, 0);
    let mut stats = ArmStats::new(3);
    let mut ledger = PlayLedger::new(3);
    let fb = play(&inst, &PlayRequest::new(vec![0, 1], 3).unwrap(), &mut rng).unwrap();
    record(&mut stats, &mut ledger, &fb);
    assert_eq!(stats.sample_count(), &[1, 1, 0]);
    assert_eq!(stats.cum_reward(), &[0, 1, 0]);
    assert_eq!((ledger.success_count(), ledger.total_plays()), (&[0, 1, 0][..], 1));
    assert_eq!(stats.empirical_means(), vec![Some(0.0), Some(1.0), None]);

    let fb = play(&inst, &PlayRequest::new(vec![0, 2], 3).unwrap(), &mut rng).unwrap();
    record(&mut stats, &mut ledger, &fb);
    assert_eq!((ledger.empty_count(), ledger.total_plays()), (1, 2));
    assert!(ledger.is_balanced());
}

#[test]
fn invalid_requests_are_rejected() {
    assert_eq!(PlayRequest::new(vec![], 3).unwrap_err(), Error::EmptyRequest);
    assert_eq!(
        PlayRequest::new(vec![0, 3], 3).unwrap_err(),
        Error::ArmOutOfRange { arm: 3, n: 3 }
    );
    assert_eq!(
        PlayRequest::new(vec![2, 1], 3).unwrap_err(),
        Error::NotIncreasing { prev: 2, next: 1 }
    );
    assert!(matches!(
        PlayRequest::new(vec![1, 1], 3),
        Err(Error::NotIncreasing { .. })
    ));

    let mut e = Environment::new(BanditInstance::new(vec![0.5, 0.5]).unwrap(), RngStream::new(0, 0));
    let wide = PlayRequest::full(3).unwrap();
    assert!(e.play(&wide).is_err());
    assert_eq!(e.total_plays(), 0);
}

#[test]
fn invalid_instances_are_rejected() {
    assert_eq!(BanditInstance::new(vec![]).unwrap_err(), Error::NoArms);
    assert!(matches!(
        BanditInstance::new(vec![0.2, 1.2]),
        Err(Error::InvalidMean { arm: 1, .. })
    ));
    assert!(matches!(
        BanditInstance::new(vec![f64::NAN]),
        Err(Error::InvalidMean { .. })
    ));
    assert!(matches!(
        parse_means("0.1\nabc\n"),
        Err(Error::MeansFormat { line: 2, .. })
    ));
    let inst = parse_means("# comment\n\n0.1\n0.4\n").unwrap();
    assert_eq!(inst.means(), &[0.1, 0.4]);
    assert!(matches!(
        BanditInstance::new(vec![0.4, 0.4]).unwrap().best_arm(),
        Err(Error::NoUniqueBest { .. })
    ));
}

fn instance() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), Just(1.0), 0.0..=1.0f64], 1..=8)
}

proptest! {
    #[test]
    fn at_most_one_success_and_only_last(means in instance(), seed in any::<u64>()) {
        let n = means.len();
        let inst = BanditInstance::new(means).unwrap();
        let mut rng = RngStream::new(seed, 0);
        for _ in 0..20 {
            let fb = play(&inst, &PlayRequest::full(n).unwrap(), &mut rng).unwrap();
            let wins = fb.rewards().iter().filter(|&&r| r).count();
            prop_assert!(wins <= 1);
            if wins == 1 {
                prop_assert!(*fb.rewards().last().unwrap());
            } else {
                prop_assert_eq!(fb.len(), n);
            }
        }
    }

    #[test]
    fn ledger_balances_under_any_interleaving(
        means in instance(),
        seed in any::<u64>(),
        masks in prop::collection::vec(1u32..256, 1..60),
        aggregated in any::<bool>(),
    ) {
        let n = means.len();
        let mode = if aggregated { SamplingMode::Aggregated } else { SamplingMode::PerPlay };
        let mut e = Environment::new(BanditInstance::new(means).unwrap(), RngStream::new(seed, 1)).with_mode(mode);
        for (k, mask) in masks.iter().enumerate() {
            let arms: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if arms.is_empty() {
                continue;
            }
            let req = PlayRequest::new(arms, n).unwrap();
            if k % 3 == 0 {
                e.play_repeated(&req, 1 + k as u64).unwrap();
            } else {
                e.play(&req).unwrap();
            }
            prop_assert!(e.ledger().is_balanced());
        }
        prop_assert_eq!(e.stats().total_samples() >= e.total_plays(), true);
    }
}
