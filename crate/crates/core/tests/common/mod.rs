#![allow(dead_code)]

use std::sync::Arc;

use ncgeom::algebra::{double_quiver, Quiver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn jordan_double() -> Arc<Quiver> {
    Arc::new(double_quiver(&Quiver::jordan()).unwrap())
}

pub fn a2_double() -> Arc<Quiver> {
    Arc::new(double_quiver(&Quiver::linear(2)).unwrap())
}

/// Double of the oriented 3-cycle plus a loop at the first vertex.
pub fn cyclic_double() -> Arc<Quiver> {
    let arrows = [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("l", "1", "1")]
        .map(|(n, t, h)| (n.to_string(), t.to_string(), h.to_string()));
    Arc::new(double_quiver(&Quiver::new(["1", "2", "3"], arrows).unwrap()).unwrap())
}

pub fn quivers() -> Vec<Arc<Quiver>> {
    vec![jordan_double(), a2_double(), cyclic_double(), Arc::new(double_quiver(&Quiver::loops(2)).unwrap())]
}

/// Picks a quiver from [`quivers`] by seed.
pub fn quiver_for(seed: u64) -> Arc<Quiver> {
    let qs = quivers();
    qs[(seed % qs.len() as u64) as usize].clone()
}
