//! Counter-style random streams.
//!
//! Every random quantity is drawn from its own ChaCha8 stream whose key is the
//! full logical address of the draw: master seed, replicate index, a role tag
//! and a role-specific salt (dimension, vector law, ...). Execution order and
//! worker count therefore never influence any sampled value.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StreamRole {
    Matrix,
    Vector,
    Truncation,
}

impl StreamRole {
    fn tag(self) -> u64 {
        match self {
            StreamRole::Matrix => 0x6d61_7472_6978,
            StreamRole::Vector => 0x7665_6374_6f72,
            StreamRole::Truncation => 0x0074_7275_6e63,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub master_seed: u64,
    pub replicate: u64,
    pub role: StreamRole,
    pub salt: u64,
}

impl StreamKey {
    pub fn new(master_seed: u64, replicate: u64, role: StreamRole, salt: u64) -> Self {
        Self {
            master_seed,
            replicate,
            role,
            salt,
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        seed[0..8].copy_from_slice(&self.master_seed.to_le_bytes());
        seed[8..16].copy_from_slice(&self.replicate.to_le_bytes());
        seed[16..24].copy_from_slice(&self.role.tag().to_le_bytes());
        seed[24..32].copy_from_slice(&self.salt.to_le_bytes());
        ChaCha8Rng::from_seed(seed)
    }
}

/// Mixes several small identifiers into one salt word (splitmix64 finalizer).
pub(crate) fn mix(parts: &[u64]) -> u64 {
    let mut h = 0x9e37_79b9_7f4a_7c15u64;
    for &p in parts {
        h ^= p;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}
