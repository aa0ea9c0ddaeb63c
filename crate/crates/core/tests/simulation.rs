use cmacr::binary::BinaryScenario;
use cmacr::gf2::{run_sim, RelayDecoder, SimConfig, SimReport, DEFAULT_CAP};
use cmacr::Error;

fn config(eps: (f64, f64, f64), n: usize, k1: usize, k2: usize, decoder: RelayDecoder) -> SimConfig {
    SimConfig {
        scenario: BinaryScenario::new(eps.0, eps.1, eps.2).unwrap(),
        n,
        k1,
        k2,
        num_blocks: 4,
        trials: 300,
        master_seed: 11,
        relay_decoder: decoder,
        cap: DEFAULT_CAP,
    }
}

#[test]
fn report_counts_are_consistent() {
    for decoder in [RelayDecoder::Xor, RelayDecoder::Joint] {
        let cfg = config((0.08, 0.12, 0.1), 20, 5, 3, decoder);
        let r = run_sim(&cfg).unwrap();
        let per_block = (r.trials * r.blocks as u64) as f64;
        assert_eq!(r.relay_error_rate, r.relay_errors as f64 / per_block);
        assert_eq!(r.rx1_error_rate, r.rx1_errors as f64 / per_block);
        assert_eq!(r.end_to_end_error_rate, r.failed_trials as f64 / r.trials as f64);
        assert!(r.end_to_end_error_rate >= r.rx1_error_rate.max(r.rx2_error_rate));
        assert!(r.failed_trials <= r.trials);
        assert_eq!((r.seed, r.config.clone()), (11, cfg));
    }
}

#[test]
fn seeds_change_outcomes_but_not_structure() {
    let a = run_sim(&config((0.1, 0.1, 0.1), 16, 4, 4, RelayDecoder::Xor)).unwrap();
    let mut cfg = config((0.1, 0.1, 0.1), 16, 4, 4, RelayDecoder::Xor);
    cfg.master_seed = 12;
    let b = run_sim(&cfg).unwrap();
    assert_ne!(a.relay_errors, b.relay_errors);
    assert_eq!(run_sim(&cfg).unwrap(), b);
}

#[test]
fn useless_relay_link_fails_the_relay() {
    let r = run_sim(&config((0.0, 0.0, 0.5), 16, 4, 4, RelayDecoder::Xor)).unwrap();
    assert!(r.relay_error_rate > 0.8, "{}", r.relay_error_rate);
}

#[test]
fn report_round_trips_through_json() {
    let r = run_sim(&config((0.05, 0.05, 0.05), 12, 3, 2, RelayDecoder::Joint)).unwrap();
    let back: SimReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
    assert_eq!(r.csv_record().len(), SimReport::CSV_HEADER.len());
}

#[test]
fn caps_are_reported_distinctly() {
    let cfg = config((0.1, 0.1, 0.1), 40, 17, 2, RelayDecoder::Xor);
    assert!(matches!(run_sim(&cfg), Err(Error::CapExceeded { needed: 17, cap: 16 })));
    let cfg = config((0.1, 0.1, 0.1), 40, 12, 10, RelayDecoder::Joint);
    assert!(matches!(run_sim(&cfg), Err(Error::CapExceeded { needed: 22, cap: 20 })));
    let cfg = config((0.1, 0.1, 0.1), 8, 5, 4, RelayDecoder::Xor);
    assert!(matches!(run_sim(&cfg), Err(Error::Config(_))));
}
