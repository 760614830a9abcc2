use qconv::system::isf_candidates;
use qconv::{
    CodeBundle, CosetOracle, DecodeOptions, ErrorFrame, Gf2, Metric, Pauli, PauliCosts, QuantumDecoder, Representation,
    StabilizerSpec, SyndromeDecoder, Termination,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec() -> StabilizerSpec {
    "qcc n=3 k=1 m=1\nXXXXZY\nZZZZYX\n".parse().unwrap()
}

fn bits_of(s: u64, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((s >> i) & 1) as u8).collect()
}

fn gf2(v: &[u8]) -> Vec<Gf2> {
    v.iter().map(|&b| Gf2::new(b != 0)).collect()
}

/// Syndrome positions covered by `blocks` data blocks of the [3,1,1] code.
fn positions(blocks: usize) -> usize {
    blocks + 1
}

fn check_against_oracle(dec: &QuantumDecoder, blocks: usize) {
    let spec = dec.spec();
    let oracle = CosetOracle::new(&spec.block_check(), blocks, positions(blocks)).unwrap();
    let table = oracle.table().unwrap();
    let mut unique = 0;
    for (s, leader) in table.iter().enumerate() {
        let leader = leader.expect("every syndrome is reachable");
        let mut syn = bits_of(s as u64, oracle.syndrome_bits());
        syn.extend([0, 0]);
        let res = dec.decode(&syn, blocks).unwrap();
        assert_eq!(res.error.bit_weight() as u32, leader.weight, "syndrome {s:#x}");
        let padded = res.error.padded(6);
        assert_eq!(spec.syndrome_of(&padded).unwrap(), syn, "syndrome {s:#x}");
        if leader.unique() {
            unique += 1;
            assert_eq!(res.error.bits(), leader.bits(oracle.data_bits()), "syndrome {s:#x}");
        }
    }
    assert!(unique > 0);
}

#[test]
fn binary_pipeline_is_ml_on_four_blocks() {
    let dec = QuantumDecoder::new(&spec(), Representation::Binary, Metric::Hamming).unwrap();
    check_against_oracle(&dec, 4);
}

#[test]
fn quaternary_pipeline_is_ml_on_four_blocks() {
    let dec = QuantumDecoder::new(&spec(), Representation::Quaternary, Metric::Hamming).unwrap();
    check_against_oracle(&dec, 4);
}

#[test]
fn binary_pipeline_is_ml_on_five_blocks() {
    let dec = QuantumDecoder::new(&spec(), Representation::Binary, Metric::Hamming).unwrap();
    check_against_oracle(&dec, 5);
}

#[test]
fn iir_isf_gives_same_metrics() {
    let spec = spec();
    let h = spec.block_check();
    let base = CodeBundle::derive(h.clone()).unwrap();
    let iir = isf_candidates(&h).unwrap().into_iter().find(|l| !l.is_polynomial()).unwrap();
    let alt = base.with_isf(iir).unwrap();
    assert!(!alt.isf().is_fir());
    let a = QuantumDecoder::from_binary_bundle(&spec, base, Metric::Hamming).unwrap();
    let b = QuantumDecoder::from_binary_bundle(&spec, alt, Metric::Hamming).unwrap();
    for s in 0..1u64 << 10 {
        let mut syn = bits_of(s, 10);
        syn.extend([0, 0]);
        let ra = a.decode(&syn, 4).unwrap();
        let rb = b.decode(&syn, 4).unwrap();
        assert_eq!(ra.path_metric, rb.path_metric, "syndrome {s:#x}");
        assert_eq!(ra.error.bit_weight(), rb.error.bit_weight());
    }
}

#[test]
fn oracle_single_x_is_unique() {
    let spec = spec();
    let oracle = CosetOracle::new(&spec.block_check(), 5, 6).unwrap();
    let mut e = ErrorFrame::identity(15);
    e.set_pauli(7, Pauli::X);
    let s = spec.syndrome_of(&e.padded(6)).unwrap();
    let leader = oracle.query(CosetOracle::pack_syndrome(&s)).unwrap().unwrap();
    assert_eq!((leader.weight, leader.multiplicity), (1, 1));
    assert_eq!(leader.bits(30), e.bits());
    assert_eq!(oracle.query(0).unwrap().unwrap().weight, 0);
}

#[test]
fn codewords_decode_to_zero_error() {
    let bundle = CodeBundle::derive(spec().block_check()).unwrap();
    let dec = SyndromeDecoder::new(bundle, Metric::Hamming).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let u: Vec<u8> = (0..4 * 8).map(|_| rng.gen_range(0..2)).collect();
        let c = dec.bundle().gen().run_for(&gf2(&u), 10).unwrap();
        let s = dec.syndrome(&c, 12).unwrap();
        assert!(s.iter().all(|x| !x.bit()));
        let res = dec.decode(&s, 0..10).unwrap();
        assert_eq!(res.path_metric, 0);
        assert!(res.error.iter().all(|x| !x.bit()));
    }
}

#[test]
fn every_single_bit_flip_is_corrected() {
    let spec = spec();
    let dec = QuantumDecoder::new(&spec, Representation::Binary, Metric::Hamming).unwrap();
    for bit in 0..2 * 3 * 6 {
        let mut bits = vec![0u8; 36];
        bits[bit] = 1;
        let e = ErrorFrame::from_bits(bits).unwrap();
        let s = spec.syndrome_of(&e.padded(6)).unwrap();
        let res = dec.decode(&s, 6).unwrap();
        assert_eq!(res.error, e, "bit {bit}");
    }
}

#[test]
fn weight_two_patterns_within_a_block_pair_are_corrected() {
    let spec = spec();
    let dec = QuantumDecoder::new(&spec, Representation::Binary, Metric::Hamming).unwrap();
    let oracle = CosetOracle::new(&spec.block_check(), 5, 6).unwrap();
    for a in 0..30 {
        for b in a + 1..30 {
            let mut bits = vec![0u8; 30];
            bits[a] = 1;
            bits[b] = 1;
            let e = ErrorFrame::from_bits(bits).unwrap();
            let s = spec.syndrome_of(&e.padded(6)).unwrap();
            let leader = oracle.query(CosetOracle::pack_syndrome(&s)).unwrap().unwrap();
            let res = dec.decode(&s, 5).unwrap();
            assert_eq!(res.error.bit_weight() as u32, leader.weight);
            if leader.weight == 2 && leader.unique() {
                assert_eq!(res.error, e);
            }
        }
    }
}

fn sample(rng: &mut ChaCha8Rng, qubits: usize, p: f64) -> ErrorFrame {
    ErrorFrame::from_bits((0..2 * qubits).map(|_| rng.gen_bool(p) as u8).collect()).unwrap()
}

#[test]
fn pauli_metric_agrees_with_hamming() {
    let spec = spec();
    let ham = QuantumDecoder::new(&spec, Representation::Binary, Metric::Hamming).unwrap();
    let pauli = QuantumDecoder::new(&spec, Representation::Binary, Metric::Pauli(PauliCosts::independent_flips(0.05))).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let e = sample(&mut rng, 30, 0.05);
        let s = spec.syndrome_of(&e.padded(6)).unwrap();
        assert_eq!(ham.decode(&s, 10).unwrap().error, pauli.decode(&s, 10).unwrap().error);
    }
}

#[test]
fn quaternary_and_binary_weights_agree_on_long_frames() {
    let spec = spec();
    let bin = QuantumDecoder::new(&spec, Representation::Binary, Metric::Hamming).unwrap();
    let quat = QuantumDecoder::new(&spec, Representation::Quaternary, Metric::Hamming).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let e = sample(&mut rng, 300, 0.05);
        let s = spec.syndrome_of(&e.padded(6)).unwrap();
        let rb = bin.decode(&s, 100).unwrap();
        let rq = quat.decode(&s, 100).unwrap();
        assert_eq!(rb.error.bit_weight(), rq.error.bit_weight());
        assert!(rb.error.bit_weight() <= e.bit_weight());
        assert_eq!(spec.syndrome_of(&rq.error.padded(6)).unwrap(), s);
        assert_eq!(spec.syndrome_of(&rb.error.padded(6)).unwrap(), s);
    }
}

#[test]
fn isf_output_of_correctable_error_decodes_back() {
    let bundle = CodeBundle::derive(spec().block_check()).unwrap();
    let dec = SyndromeDecoder::new(bundle, Metric::Hamming).unwrap();
    let oracle = CosetOracle::new(dec.bundle().check(), 5, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    while checked < 200 {
        let e: Vec<u8> = (0..30).map(|_| rng.gen_bool(0.04) as u8).collect();
        let s = dec.syndrome(&gf2(&e), 6).unwrap();
        let packed = CosetOracle::pack_syndrome(&s.iter().map(|x| x.bit() as u8).collect::<Vec<_>>());
        let leader = oracle.query(packed).unwrap().unwrap();
        if !leader.unique() || leader.bits(30) != e {
            continue;
        }
        let res = dec.decode(&s, 0..5).unwrap();
        assert_eq!(res.error, gf2(&e));
        checked += 1;
    }
}

#[test]
fn dropping_the_tail_constraint_is_observable() {
    let spec = spec();
    let bundle = CodeBundle::derive(spec.block_check()).unwrap();
    let dec = SyndromeDecoder::new(bundle, Metric::Hamming).unwrap();
    let loose = DecodeOptions { pin_outside_data: false, termination: Some(Termination::Free) };
    let mut differs = 0;
    for s in 0..1u64 << 10 {
        let syn = gf2(&bits_of(s, 10));
        let tight = dec.decode(&syn, 0..4).unwrap();
        let free = dec.decode_with(&syn, 0..4, loose).unwrap();
        assert!(free.path_metric <= tight.path_metric);
        if free.error != tight.error {
            differs += 1;
        }
    }
    assert!(differs > 0);
}

#[test]
fn nonzero_syndrome_outside_support_has_no_path() {
    let dec = QuantumDecoder::new(&spec(), Representation::Binary, Metric::Hamming).unwrap();
    let mut syn = vec![0u8; 12];
    syn[11] = 1;
    assert!(dec.decode(&syn, 4).is_err());
    assert!(dec.decode(&[0u8; 6], 4).is_err());
}

#[test]
fn zero_syndrome_gives_identity() {
    for rep in [Representation::Binary, Representation::Quaternary] {
        let dec = QuantumDecoder::new(&spec(), rep, Metric::Hamming).unwrap();
        let res = dec.decode(&[0u8; 2 * 302], 300).unwrap();
        assert_eq!(res.error, ErrorFrame::identity(900));
    }
}

#[test]
fn trellis_sizes() {
    let b = QuantumDecoder::new(&spec(), Representation::Binary, Metric::Hamming).unwrap();
    let q = QuantumDecoder::new(&spec(), Representation::Quaternary, Metric::Hamming).unwrap();
    assert_eq!(b.trellis_states(), 4);
    assert_eq!(q.trellis_states(), 4);
}
