//! Serializable views of each computation.

use serde::Serialize;

use repknot::cohomology::cocycle_report;
use repknot::diagram::LinkDiagram;
use repknot::dihedral::{
    enumerate_classes, image_order, lift_to_su2, meridian_form_check, DihedralClass,
    MeridianFormVerdict,
};
use repknot::doublecover::{
    b_map, even_subgroup_generators, h1_sigma2, is_abelian_so3, max_commutator_deviation_so3,
};
use repknot::presentation::{
    invariants, wirtinger, CongruenceChecks, Letter, WirtingerPresentation,
};
use repknot::variety::{
    scan, simplicity_verdict, Classification, ConjugacyClassSet, DihedralRoutes, RepPoint,
    ScanOptions, Verdict,
};
use repknot::{Error, Result};

pub struct Subject {
    pub diagram: LinkDiagram,
    pub presentation: WirtingerPresentation,
}

impl Subject {
    pub fn new(diagram: LinkDiagram) -> Self {
        let presentation = wirtinger(&diagram);
        Subject {
            diagram,
            presentation,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsOut {
    pub det: u128,
    pub sigma: i64,
    pub alexander: String,
    pub alex_low: i64,
    pub alex_coeffs: Vec<i128>,
    pub components: usize,
    pub linking_numbers: Vec<(usize, usize, i64)>,
    pub checks: CongruenceChecks,
}

pub fn invariants_out(s: &Subject) -> Result<InvariantsOut> {
    let r = invariants(&s.diagram)?;
    Ok(InvariantsOut {
        det: r.det,
        sigma: r.sigma,
        alexander: r.alexander().to_string(),
        alex_low: r.alex_low,
        alex_coeffs: r.alex_coeffs,
        components: r.components,
        linking_numbers: r.linking_numbers,
        checks: r.checks,
    })
}

#[derive(Debug, Serialize)]
pub struct ClassOut {
    pub index: usize,
    pub labels: Vec<u64>,
    pub image_order: u64,
}

#[derive(Debug, Serialize)]
pub struct DihedralOut {
    pub delta: u64,
    pub classes: Vec<ClassOut>,
    /// Present for two-component links with `det ≡ 2 (mod 4)`.
    pub meridian_form: Option<MeridianFormVerdict>,
}

pub fn classes(s: &Subject, modulus: Option<u64>) -> Result<(u64, Vec<DihedralClass>)> {
    let det = invariants(&s.diagram)?.det;
    let delta = modulus.unwrap_or(det as u64);
    Ok((delta, enumerate_classes(&s.presentation, delta)?))
}

pub fn dihedral_out(s: &Subject, modulus: Option<u64>) -> Result<DihedralOut> {
    let det = invariants(&s.diagram)?.det;
    let (delta, cs) = classes(s, modulus)?;
    let meridian_form = if s.diagram.n_components == 2 && det % 4 == 2 {
        Some(meridian_form_check(&cs, &s.diagram, &s.presentation, det)?)
    } else {
        None
    };
    Ok(DihedralOut {
        delta,
        classes: cs
            .iter()
            .enumerate()
            .map(|(index, c)| ClassOut {
                index,
                labels: c.labels.clone(),
                image_order: image_order(c),
            })
            .collect(),
        meridian_form,
    })
}

#[derive(Debug, Serialize)]
pub struct ClusterOut {
    pub index: usize,
    pub classification: Classification,
    pub members: usize,
    pub dimension: usize,
    pub orbit_dimension: usize,
    pub character_dimension: i64,
    /// `None` when no singular value was discarded.
    pub rank_gap: Option<f64>,
    pub routes: Option<DihedralRoutes>,
    pub residual: f64,
    pub character: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct ScanOut {
    pub pinned: bool,
    pub n_seeds: usize,
    pub n_converged: usize,
    pub rng_seed: u64,
    pub reducible: usize,
    pub dihedral: usize,
    pub other_irreducible: usize,
    pub clusters: Vec<ClusterOut>,
}

pub fn scan_out(set: &ConjugacyClassSet) -> ScanOut {
    ScanOut {
        pinned: set.pinned,
        n_seeds: set.n_seeds,
        n_converged: set.n_converged,
        rng_seed: set.rng_seed,
        reducible: set.count(Classification::Reducible),
        dihedral: set.count(Classification::Dihedral),
        other_irreducible: set.count(Classification::OtherIrreducible),
        clusters: set
            .clusters
            .iter()
            .enumerate()
            .map(|(index, c)| ClusterOut {
                index,
                classification: c.classification,
                members: c.members,
                dimension: c.dimension,
                orbit_dimension: c.orbit_dimension,
                character_dimension: c.character_dimension,
                rank_gap: c.rank_gap.is_finite().then_some(c.rank_gap),
                routes: c.routes,
                residual: c.representative.residual,
                character: c.representative.character.clone(),
            })
            .collect(),
    }
}

pub fn run_scan(s: &Subject, opts: ScanOptions) -> Result<ConjugacyClassSet> {
    scan(&s.presentation, opts)
}

#[derive(Debug, Serialize)]
pub struct SimplicityOut {
    pub verdict: Verdict,
    pub scan: ScanOut,
}

pub fn simplicity_out(set: &ConjugacyClassSet) -> SimplicityOut {
    SimplicityOut {
        verdict: simplicity_verdict(set),
        scan: scan_out(set),
    }
}

/// Where a representation came from.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Class(usize),
    Scan(usize),
}

#[derive(Debug, Serialize)]
pub struct CohomologyOut {
    pub source: Source,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub restriction_onto: bool,
    pub rank_gap: Option<f64>,
    /// Image order of the dihedral class, when the source is a class.
    pub image_order: Option<u64>,
}

pub fn cohomology_out(
    s: &Subject,
    r: &RepPoint,
    source: Source,
    order: Option<u64>,
) -> Result<CohomologyOut> {
    let c = cocycle_report(r, &s.presentation)?;
    Ok(CohomologyOut {
        source,
        dim_z1: c.dim_z1,
        dim_b1: c.dim_b1,
        dim_h1: c.dim_h1,
        restriction_onto: c.restriction_onto,
        rank_gap: c.rank_gap.is_finite().then_some(c.rank_gap),
        image_order: order,
    })
}

#[derive(Debug, Serialize)]
pub struct BImage {
    pub source: Source,
    pub abelian: bool,
    pub max_commutator_deviation: f64,
}

#[derive(Debug, Serialize)]
pub struct CoverOut {
    pub h1_order: u128,
    pub mod2_rank: usize,
    pub generator_words: Vec<String>,
    pub filling_words: Vec<String>,
    /// Whether the image of `B(ρ)` is abelian, when a representation was given.
    pub abelian: Option<bool>,
    pub b_image: Option<BImage>,
}

pub fn render_word(w: &[Letter]) -> String {
    w.iter()
        .map(|l| {
            if l.exponent > 0 {
                format!("S{}", l.generator)
            } else {
                format!("S{}^-1", l.generator)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cover_out(s: &Subject, rep: Option<(&RepPoint, Source)>) -> Result<CoverOut> {
    let h = h1_sigma2(&s.diagram)?;
    let words = even_subgroup_generators(&s.presentation);
    let b_image = match rep {
        None => None,
        Some((r, source)) => {
            let b = b_map(r, &s.presentation, h.order)?;
            Some(BImage {
                source,
                abelian: is_abelian_so3(&b),
                max_commutator_deviation: max_commutator_deviation_so3(&b),
            })
        }
    };
    Ok(CoverOut {
        h1_order: h.order,
        mod2_rank: h.mod2_rank,
        generator_words: words.generators.iter().map(|w| render_word(w)).collect(),
        filling_words: words.filling.iter().map(|(_, w)| render_word(w)).collect(),
        abelian: b_image.as_ref().map(|b| b.abelian),
        b_image,
    })
}

/// A representation picked by dihedral class index or pinned-scan cluster.
pub fn pick_rep(
    s: &Subject,
    class: Option<usize>,
    cluster: Option<usize>,
    opts: ScanOptions,
) -> Result<Option<(RepPoint, Source, Option<u64>)>> {
    if let Some(k) = class {
        let (_, cs) = classes(s, None)?;
        let c = cs.get(k).ok_or_else(|| {
            Error::HypothesisViolation(format!("class {k} requested but only {} exist", cs.len()))
        })?;
        return Ok(Some((
            lift_to_su2(c, &s.presentation),
            Source::Class(k),
            Some(image_order(c)),
        )));
    }
    if let Some(j) = cluster {
        let set = run_scan(s, opts)?;
        let c = set.clusters.get(j).ok_or_else(|| {
            Error::HypothesisViolation(format!(
                "cluster {j} requested but the scan found {}",
                set.clusters.len()
            ))
        })?;
        return Ok(Some((c.representative.clone(), Source::Scan(j), None)));
    }
    Ok(None)
}

#[derive(Debug, Serialize)]
pub struct FullReport {
    pub invariants: InvariantsOut,
    pub dihedral: Option<DihedralOut>,
    pub simplicity: SimplicityOut,
    pub cohomology: Vec<CohomologyOut>,
    pub cover: CoverOut,
}

pub fn full_report(s: &Subject, opts: ScanOptions) -> Result<FullReport> {
    let inv = invariants_out(s)?;
    let dihedral = if inv.det == 0 {
        None
    } else {
        Some(dihedral_out(s, None)?)
    };
    let set = run_scan(s, opts)?;
    let (_, cs) = if inv.det == 0 {
        (0, Vec::new())
    } else {
        classes(s, None)?
    };
    let cohomology = cs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let r = lift_to_su2(c, &s.presentation);
            cohomology_out(s, &r, Source::Class(k), Some(image_order(c)))
        })
        .collect::<Result<Vec<_>>>()?;
    let witness = set
        .clusters
        .iter()
        .position(|c| c.classification == Classification::OtherIrreducible);
    let cover = match (witness, inv.det) {
        (_, 0) => cover_out(s, None)?,
        (Some(j), _) => cover_out(s, Some((&set.clusters[j].representative, Source::Scan(j))))?,
        (None, _) => match cs.first() {
            Some(c) => cover_out(
                s,
                Some((&lift_to_su2(c, &s.presentation), Source::Class(0))),
            )?,
            None => cover_out(s, None)?,
        },
    };
    Ok(FullReport {
        invariants: inv,
        dihedral,
        simplicity: simplicity_out(&set),
        cohomology,
        cover,
    })
}

#[derive(Debug, Serialize)]
pub struct CorpusRow {
    pub name: String,
    pub notation: String,
    pub components: usize,
    pub det: u128,
    pub sigma: i64,
    pub congruences: bool,
    pub mod2_rank: usize,
    pub classes: Option<usize>,
    /// Knots only: class count equals `(det − 1)/2`.
    pub class_count_matches: Option<bool>,
    pub reducible: usize,
    pub dihedral: usize,
    pub other_irreducible: usize,
    pub verdict: &'static str,
}

pub fn corpus_row(name: &str, notation: &str, s: &Subject, opts: ScanOptions) -> Result<CorpusRow> {
    let inv = invariants(&s.diagram)?;
    let h = h1_sigma2(&s.diagram)?;
    let classes = if inv.det == 0 {
        None
    } else {
        Some(enumerate_classes(&s.presentation, inv.det as u64)?.len())
    };
    let set = run_scan(s, opts)?;
    let verdict = match simplicity_verdict(&set) {
        Verdict::Refuted { .. } => "refuted",
        Verdict::Consistent { .. } => "consistent",
    };
    Ok(CorpusRow {
        name: name.to_string(),
        notation: notation.to_string(),
        components: inv.components,
        det: inv.det,
        sigma: inv.sigma,
        congruences: inv.checks.all_pass(),
        mod2_rank: h.mod2_rank,
        class_count_matches: classes
            .filter(|_| inv.components == 1)
            .map(|n| n as u128 == (inv.det - 1) / 2),
        classes,
        reducible: set.count(Classification::Reducible),
        dihedral: set.count(Classification::Dihedral),
        other_irreducible: set.count(Classification::OtherIrreducible),
        verdict,
    })
}
