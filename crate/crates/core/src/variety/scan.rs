use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    character_distance, dihedral_routes, is_reducible, jacobian, numerical_rank, singular_values,
    solve_from_seed, DihedralRoutes, RepPoint, SolveOptions, CLUSTER_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::presentation::WirtingerPresentation;
use crate::quaternion::Quaternion;

/// Relative singular-value threshold for the local dimension estimate.
pub const RANK_THRESHOLD: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub n_seeds: usize,
    pub rng_seed: u64,
    pub pinned: bool,
    pub solve: SolveOptions,
}

impl ScanOptions {
    pub fn new(n_seeds: usize, rng_seed: u64, pinned: bool) -> Self {
        ScanOptions {
            n_seeds,
            rng_seed,
            pinned,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Reducible,
    Dihedral,
    OtherIrreducible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cluster {
    /// Lowest-residual member.
    pub representative: RepPoint,
    pub members: usize,
    pub classification: Classification,
    pub routes: Option<DihedralRoutes>,
    /// Nullity of the linearized system at the representative: the tangent
    /// dimension of the solution set itself (1 for a circle of conjugates).
    pub dimension: usize,
    /// Dimension of the conjugation orbit through the representative.
    pub orbit_dimension: usize,
    /// `dimension − orbit_dimension`: directions not explained by conjugation.
    pub character_dimension: i64,
    pub rank_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugacyClassSet {
    pub clusters: Vec<Cluster>,
    pub n_seeds: usize,
    pub n_converged: usize,
    pub pinned: bool,
    pub rng_seed: u64,
}

impl ConjugacyClassSet {
    pub fn count(&self, c: Classification) -> usize {
        self.clusters
            .iter()
            .filter(|k| k.classification == c)
            .count()
    }

    pub fn irreducible(&self) -> impl Iterator<Item = &Cluster> {
        self.clusters
            .iter()
            .filter(|k| k.classification != Classification::Reducible)
    }
}

fn random_traceless(rng: &mut ChaCha8Rng) -> Quaternion {
    loop {
        let v: [f64; 3] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2 = v.iter().map(|x| x * x).sum::<f64>();
        if (1e-4..=1.0).contains(&n2) {
            return Quaternion::pure(v).normalize();
        }
    }
}

/// Seeds are drawn up front in a fixed order, so the result depends only on
/// `rng_seed`, never on scheduling.
fn seeds(p: &WirtingerPresentation, opts: &ScanOptions) -> Vec<Vec<Quaternion>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    (0..opts.n_seeds)
        .map(|_| {
            let mut s: Vec<Quaternion> = (0..p.n_generators())
                .map(|_| random_traceless(&mut rng))
                .collect();
            if opts.pinned {
                s[p.distinguished_meridian] = Quaternion::I;
            }
            s
        })
        .collect()
}

fn solve_all(
    seeds: &[Vec<Quaternion>],
    p: &WirtingerPresentation,
    opts: &ScanOptions,
) -> Vec<Option<RepPoint>> {
    let run = || {
        seeds
            .par_iter()
            .map(|s| solve_from_seed(s, p, opts.pinned, opts.solve).ok())
            .collect()
    };
    let cap = std::env::var("REPKNOT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

fn build_cluster(
    members: Vec<RepPoint>,
    p: &WirtingerPresentation,
    pinned: bool,
) -> Result<Cluster> {
    let count = members.len();
    let representative = members
        .into_iter()
        .reduce(|a, b| if b.residual < a.residual { b } else { a })
        .expect("clusters are nonempty");
    let reducible = is_reducible(&representative);
    let (classification, routes) = if reducible {
        (Classification::Reducible, None)
    } else {
        let routes = dihedral_routes(&representative, p);
        if let Some(inv) = routes.involution {
            if inv != routes.frame {
                return Err(Error::TestDisagreement {
                    frame: routes.frame,
                    involution: inv,
                });
            }
        }
        let c = if routes.frame {
            Classification::Dihedral
        } else {
            Classification::OtherIrreducible
        };
        (c, Some(routes))
    };
    let j = jacobian(&representative.images, p, pinned);
    let (rank, rank_gap) = numerical_rank(&singular_values(&j), RANK_THRESHOLD);
    let dimension = j.ncols() - rank;
    let orbit_dimension = match (pinned, reducible) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    };
    Ok(Cluster {
        representative,
        members: count,
        classification,
        routes,
        dimension,
        orbit_dimension,
        character_dimension: dimension as i64 - orbit_dimension as i64,
        rank_gap,
    })
}

/// Seeded scan of the meridian-traceless variety (of `R(K, i)` when pinned).
/// Converged points are grouped greedily by character, in seed order; each
/// cluster is classified at its representative, and clusters are reported
/// in lexicographic order of their representative characters.
pub fn scan(p: &WirtingerPresentation, opts: ScanOptions) -> Result<ConjugacyClassSet> {
    let seeds = seeds(p, &opts);
    let points: Vec<RepPoint> = solve_all(&seeds, p, &opts).into_iter().flatten().collect();
    let n_converged = points.len();
    let mut groups: Vec<Vec<RepPoint>> = Vec::new();
    for pt in points {
        match groups
            .iter_mut()
            .find(|g| character_distance(&g[0].character, &pt.character) < CLUSTER_TOLERANCE)
        {
            Some(g) => g.push(pt),
            None => groups.push(vec![pt]),
        }
    }
    let mut clusters = groups
        .into_iter()
        .map(|g| build_cluster(g, p, opts.pinned))
        .collect::<Result<Vec<_>>>()?;
    clusters.sort_by(|a, b| {
        let (x, y) = (&a.representative.character, &b.representative.character);
        x.iter()
            .zip(y)
            .map(|(u, v)| u.total_cmp(v))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(ConjugacyClassSet {
        clusters,
        n_seeds: opts.n_seeds,
        n_converged,
        pinned: opts.pinned,
        rng_seed: opts.rng_seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// A non-dihedral irreducible cluster exists.
    Refuted {
        cluster: usize,
        character: Vec<f64>,
        routes: Option<DihedralRoutes>,
    },
    /// Every irreducible cluster found is dihedral. One-sided evidence only:
    /// the scan may have missed components.
    Consistent {
        n_seeds: usize,
        n_converged: usize,
        note: String,
    },
}

pub fn simplicity_verdict(s: &ConjugacyClassSet) -> Verdict {
    match s
        .clusters
        .iter()
        .position(|c| c.classification == Classification::OtherIrreducible)
    {
        Some(i) => Verdict::Refuted {
            cluster: i,
            character: s.clusters[i].representative.character.clone(),
            routes: s.clusters[i].routes,
        },
        None => Verdict::Consistent {
            n_seeds: s.n_seeds,
            n_converged: s.n_converged,
            note: "no non-dihedral irreducible found; a finite scan does not prove simplicity"
                .into(),
        },
    }
}
