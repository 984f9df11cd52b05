//! Uniform sampling by rejection from the coordinate box `[-1, 1]^(2 dim)`.
//!
//! Every entry of a matrix of operator norm `< 1` lies in the unit disk, and
//! the Lie ball sits inside the unit ball of `C^n`, so the box covers the
//! domain in every classical case.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{diagonal_norm_if_inside, fill_row_major, DomainPoint, DomainType};
use crate::error::Result;

/// Accepted points plus the observed acceptance rate, an estimate of
/// `Leb(domain) / Leb(box)`.
#[derive(Clone, Debug)]
pub struct Sample {
    pub points: Vec<DomainPoint>,
    pub proposals: u64,
    pub acceptance_rate: f64,
}

/// Stateful rejection sampler over one generator stream.
pub struct Sampler {
    domain: DomainType,
    rows: usize,
    cols: usize,
    rng: ChaCha8Rng,
    coords: Vec<Complex64>,
    flat: Vec<Complex64>,
    scratch: Vec<Complex64>,
    proposals: u64,
}

impl Sampler {
    pub fn new(domain: DomainType, seed: u64) -> Result<Self> {
        Self::with_stream(domain, seed, 0)
    }

    /// Independent stream `stream` of the generator seeded by `seed`.
    pub fn with_stream(domain: DomainType, seed: u64, stream: u64) -> Result<Self> {
        domain.require_classical("sampling")?;
        let (rows, cols) = domain.point_shape()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(Self {
            domain,
            rows,
            cols,
            rng,
            coords: vec![Complex64::new(0.0, 0.0); domain.ambient_dim() as usize],
            flat: vec![Complex64::new(0.0, 0.0); rows * cols],
            scratch: Vec::new(),
            proposals: 0,
        })
    }

    pub fn proposals(&self) -> u64 {
        self.proposals
    }

    /// Draws until acceptance; returns `N(p, p)` of the accepted point, whose
    /// row-major entries are left in the sampler.
    pub fn next_norm(&mut self) -> f64 {
        loop {
            self.proposals += 1;
            for c in self.coords.iter_mut() {
                *c = Complex64::new(
                    2.0 * self.rng.random::<f64>() - 1.0,
                    2.0 * self.rng.random::<f64>() - 1.0,
                );
            }
            fill_row_major(self.domain, &self.coords, &mut self.flat);
            if let Some(n) =
                diagonal_norm_if_inside(self.domain, &self.flat, self.rows, self.cols, &mut self.scratch)
            {
                return n;
            }
        }
    }

    pub fn next_point(&mut self) -> DomainPoint {
        self.next_norm();
        DomainPoint::from_coordinates(self.domain, &self.coords)
            .expect("sampler coordinates have the domain's shape")
    }
}

/// `count` i.i.d. Lebesgue-uniform points of a classical domain.
pub fn sample_uniform(d: DomainType, seed: u64, count: usize) -> Result<Sample> {
    let mut sampler = Sampler::new(d, seed)?;
    let points: Vec<DomainPoint> = (0..count).map(|_| sampler.next_point()).collect();
    let proposals = sampler.proposals();
    Ok(Sample {
        acceptance_rate: if proposals == 0 { 0.0 } else { count as f64 / proposals as f64 },
        points,
        proposals,
    })
}
