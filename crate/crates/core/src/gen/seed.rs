use std::fmt;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A master seed plus a hierarchical substream label such as `3.17.0`.
///
/// Each `(master, stream)` pair maps to its own ChaCha8 key/stream, so work
/// items can derive generators from their labels alone without touching
/// any shared generator state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub master: u64,
    pub stream: Vec<u64>,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Seed {
    pub fn new(master: u64) -> Self {
        Seed { master, stream: Vec::new() }
    }

    pub fn with_stream(master: u64, stream: &[u64]) -> Self {
        Seed { master, stream: stream.to_vec() }
    }

    /// Substream `self.stream ++ [label]`.
    pub fn child(&self, label: u64) -> Seed {
        let mut stream = self.stream.clone();
        stream.push(label);
        Seed { master: self.master, stream }
    }

    /// 64-bit digest of the label path (length included, so `[]` and `[0]` differ).
    fn stream_id(&self) -> u64 {
        let mut h = splitmix64(self.stream.len() as u64);
        for &s in &self.stream {
            h = splitmix64(h.wrapping_mul(GOLDEN) ^ splitmix64(s));
        }
        h
    }

    /// A single 64-bit value identifying this seed; reported in CSV output.
    pub fn fingerprint(&self) -> u64 {
        splitmix64(splitmix64(self.master) ^ self.stream_id())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        let mut z = self.master;
        for chunk in key.chunks_exact_mut(8) {
            z = splitmix64(z);
            chunk.copy_from_slice(&z.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_id());
        rng
    }

    /// Dot-separated label, e.g. `2.0.15`; empty for the root stream.
    pub fn stream_label(&self) -> String {
        self.stream.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }

    pub fn parse_stream_label(label: &str) -> Option<Vec<u64>> {
        if label.is_empty() {
            return Some(Vec::new());
        }
        label.split('.').map(|p| p.parse().ok()).collect()
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stream.is_empty() {
            write!(f, "{}", self.master)
        } else {
            write!(f, "{}:{}", self.master, self.stream_label())
        }
    }
}
