//! Memoryless Pauli channel with independent X and Z flips.

use rand::Rng;

use crate::error::SimError;
use crate::pauli::ErrorFrame;
use crate::trellis::PauliCosts;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    p: f64,
}

impl ChannelParams {
    /// `p` is the flip probability of each binary component, in `[0, 0.5)`.
    pub fn new(p: f64) -> Result<Self, SimError> {
        if !(0.0..0.5).contains(&p) {
            return Err(SimError::Config(format!("flip probability {p} outside [0, 0.5)")));
        }
        Ok(ChannelParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// `[P(I), P(X), P(Y), P(Z)]`.
    pub fn probabilities(&self) -> [f64; 4] {
        let p = self.p;
        [(1.0 - p) * (1.0 - p), p - p * p, p * p, p - p * p]
    }

    /// Probability that a qubit is hit by anything but I.
    pub fn raw_error_rate(&self) -> f64 {
        1.0 - (1.0 - self.p) * (1.0 - self.p)
    }

    /// Decoder costs matched to the channel; `None` at `p = 0`.
    pub fn costs(&self) -> Option<PauliCosts> {
        (self.p > 0.0).then(|| PauliCosts::independent_flips(self.p))
    }

    /// Error on `qubits` qubits followed by `padding` error-free qubits.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, qubits: usize, padding: usize) -> ErrorFrame {
        let mut bits = Vec::with_capacity(2 * (qubits + padding));
        bits.extend((0..2 * qubits).map(|_| rng.gen_bool(self.p) as u8));
        bits.resize(2 * (qubits + padding), 0);
        ErrorFrame::from_bits(bits).expect("even length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn probabilities_sum_to_one() {
        let c = ChannelParams::new(0.1).unwrap();
        let pr = c.probabilities();
        assert!((pr.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(pr[1], pr[3]);
        assert!(ChannelParams::new(0.5).is_err());
        assert!(ChannelParams::new(-0.1).is_err());
    }

    #[test]
    fn zero_probability_gives_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let e = ChannelParams::new(0.0).unwrap().sample(&mut rng, 900, 6);
        assert_eq!(e, ErrorFrame::identity(906));
    }

    #[test]
    fn padding_is_clean_and_seed_is_reproducible() {
        let c = ChannelParams::new(0.3).unwrap();
        let a = c.sample(&mut ChaCha8Rng::seed_from_u64(9), 30, 6);
        let b = c.sample(&mut ChaCha8Rng::seed_from_u64(9), 30, 6);
        assert_eq!(a, b);
        assert!((30..36).all(|i| a.pauli(i) == Pauli::I));
    }

    #[test]
    fn empirical_marginals_within_three_sigma() {
        let c = ChannelParams::new(0.1).unwrap();
        let n = 1_000_000;
        let e = c.sample(&mut ChaCha8Rng::seed_from_u64(1), n, 0);
        let mut counts = [0usize; 4];
        for i in 0..n {
            counts[e.pauli(i) as usize] += 1;
        }
        let pr = c.probabilities();
        for (idx, p) in [(Pauli::X as usize, pr[1]), (Pauli::Y as usize, pr[2]), (Pauli::Z as usize, pr[3])] {
            let freq = counts[idx] as f64 / n as f64;
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((freq - p).abs() < 3.0 * sigma, "{idx}: {freq} vs {p}");
        }
    }
}
