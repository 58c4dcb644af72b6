//! Two-generator Schottky groups `Γ_t`, their nested-disk limit sets and a
//! covering-sum estimate of the Hausdorff dimension.

mod moebius;
pub mod render;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::pairwise_sum;

pub use moebius::{circle_image, Circle, MoebiusMap, C64, DET_TOLERANCE};

/// Largest refinement depth; `4·3¹¹ ≈ 7·10⁵` disks.
pub const DEPTH_CAP: usize = 11;
pub const NESTING_SLACK: f64 = 1e-10;
pub const TANGENCY_SLACK: f64 = 1e-9;
pub const SIGN_BAND: f64 = 0.02;
pub const CROSSING_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Generator {
    G1,
    G2,
    G1Inv,
    G2Inv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::G1, Generator::G2, Generator::G1Inv, Generator::G2Inv];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn inverse(self) -> Self {
        Self::ALL[(self.index() + 2) % 4]
    }

    pub fn letter(self) -> char {
        ['a', 'b', 'A', 'B'][self.index()]
    }

    /// Center of the fundamental disk this generator maps the outside of
    /// its inverse's disk into.
    pub fn target_center(self) -> C64 {
        let s3 = 3f64.sqrt();
        match self {
            Generator::G1 => C64::new(0.0, 1.0),
            Generator::G1Inv => C64::new(0.0, -1.0),
            Generator::G2 => C64::new(-s3, 0.0),
            Generator::G2Inv => C64::new(s3, 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchottkyParams {
    pub t: f64,
    pub depth: usize,
}

impl SchottkyParams {
    pub fn new(t: f64, depth: usize) -> Result<Self> {
        check_t(t)?;
        if depth > DEPTH_CAP {
            return Err(Error::DepthCapExceeded { depth, cap: DEPTH_CAP });
        }
        Ok(Self { t, depth })
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidParameter(format!("Schottky parameter t must lie in (0, 1], got {t}")));
    }
    Ok(())
}

/// `[g₁, g₂, g₁⁻¹, g₂⁻¹]`, indexed like [`Generator`].
pub fn generators(t: f64) -> Result<[MoebiusMap; 4]> {
    check_t(t)?;
    let s3 = 3f64.sqrt();
    let k = 1.0 / t;
    let c = |re: f64, im: f64| C64::new(k * re, k * im);
    let g1 = MoebiusMap::new(c(1.0, 0.0), c(0.0, 1.0 - t * t), c(0.0, -1.0), c(1.0, 0.0))?;
    let g2 = MoebiusMap::new(c(s3, 0.0), c(t * t - 3.0, 0.0), c(-1.0, 0.0), c(s3, 0.0))?;
    Ok([g1, g2, g1.inverse(), g2.inverse()])
}

/// Image of `base` under the composition of `word`, read left to right as
/// maps applied last to first.
#[derive(Debug, Clone, PartialEq)]
pub struct Disk {
    pub center: C64,
    pub radius: f64,
    pub word: Vec<Generator>,
    pub base: Generator,
}

impl Disk {
    /// Letter whose fundamental disk contains this one.
    pub fn target(&self) -> Generator {
        self.word.first().copied().unwrap_or(self.base)
    }

    pub fn label(&self) -> String {
        let mut s: String = self.word.iter().map(|g| g.letter()).collect();
        s.push('[');
        s.push(self.base.letter());
        s.push(']');
        s
    }

    pub fn is_reduced(&self) -> bool {
        let full: Vec<_> = self.word.iter().chain(std::iter::once(&self.base)).collect();
        full.windows(2).all(|w| *w[1] != w[0].inverse())
    }

    fn order_key(&self, other: &Self) -> Ordering {
        self.word
            .iter()
            .chain(std::iter::once(&self.base))
            .cmp(other.word.iter().chain(std::iter::once(&other.base)))
    }
}

pub fn disk_image(m: &MoebiusMap, disk: &Disk) -> Result<Disk> {
    let c = circle_image(m, disk.center, disk.radius)?;
    Ok(Disk { center: c.center, radius: c.radius, word: disk.word.clone(), base: disk.base })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiskLevel {
    pub k: usize,
    pub t: f64,
    pub disks: Vec<Disk>,
}

impl DiskLevel {
    pub fn max_radius(&self) -> f64 {
        self.disks.iter().map(|d| d.radius).fold(0.0, f64::max)
    }

    pub fn centers(&self) -> Vec<C64> {
        self.disks.iter().map(|d| d.center).collect()
    }

    /// Smallest `|c − c′| − r − r′` over all pairs; negative when two disks
    /// overlap.
    pub fn min_gap(&self) -> f64 {
        let best = std::cell::Cell::new(f64::INFINITY);
        sweep_pairs(&self.disks, f64::INFINITY, |_, _, gap| best.set(best.get().min(gap)), |gap| gap < best.get());
        best.get()
    }

    pub fn is_disjoint(&self) -> bool {
        self.min_gap() > 0.0
    }
}

/// Visits disk pairs close enough to matter, in a sweep over the real part
/// of the centers. `keep_going(bound)` decides whether pairs whose gap is at
/// least `bound` may still be relevant.
fn sweep_pairs(
    disks: &[Disk],
    tol: f64,
    mut visit: impl FnMut(usize, usize, f64),
    keep_going: impl Fn(f64) -> bool,
) {
    let mut order: Vec<usize> = (0..disks.len()).collect();
    order.sort_by(|&i, &j| disks[i].center.re.total_cmp(&disks[j].center.re).then(i.cmp(&j)));
    let rmax = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
    for (pos, &i) in order.iter().enumerate() {
        let di = &disks[i];
        for &j in &order[pos + 1..] {
            let dj = &disks[j];
            let dx = dj.center.re - di.center.re;
            let lower = dx - di.radius - rmax;
            if lower > tol || !keep_going(lower) {
                break;
            }
            let gap = (di.center - dj.center).norm() - di.radius - dj.radius;
            visit(i.min(j), i.max(j), gap);
        }
    }
}

/// The four disks of radius `t` about `±i` and `±√3`.
pub fn fundamental_disks(t: f64) -> Result<DiskLevel> {
    check_t(t)?;
    let disks = Generator::ALL
        .iter()
        .map(|&g| Disk { center: g.target_center(), radius: t, word: Vec::new(), base: g })
        .collect();
    Ok(DiskLevel { k: 0, t, disks })
}

/// Next level: each disk spawns its images under the three generators that
/// do not cancel its leading letter.
pub fn refine(level: &DiskLevel) -> Result<DiskLevel> {
    let t = level.t;
    let gens = generators(t)?;
    let slack = if t >= 1.0 { TANGENCY_SLACK } else { NESTING_SLACK };
    let children: Vec<Result<Vec<Disk>>> = level
        .disks
        .par_iter()
        .map(|parent| {
            let lead = parent.target();
            let mut out = Vec::with_capacity(3);
            for g in Generator::ALL {
                if g == lead.inverse() {
                    continue;
                }
                let mut child = disk_image(&gens[g.index()], parent)?;
                child.word.insert(0, g);
                let excess = (child.center - g.target_center()).norm() + child.radius - t;
                if excess > slack {
                    return Err(Error::SchottkyViolation { word: child.label(), excess });
                }
                out.push(child);
            }
            Ok(out)
        })
        .collect();
    let mut disks = Vec::with_capacity(3 * level.disks.len());
    for c in children {
        disks.extend(c?);
    }
    disks.par_sort_by(Disk::order_key);
    Ok(DiskLevel { k: level.k + 1, t, disks })
}

/// Levels `0..=depth`.
pub fn levels(params: &SchottkyParams) -> Result<Vec<DiskLevel>> {
    let mut out = vec![fundamental_disks(params.t)?];
    for _ in 0..params.depth {
        let next = refine(out.last().expect("level 0 present"))?;
        out.push(next);
    }
    Ok(out)
}

/// Root `d` of `Σ radius^d = 1`.
pub fn covering_root(level: &DiskLevel) -> Result<f64> {
    if level.disks.is_empty() {
        return Err(Error::EmptyLevel);
    }
    if level.disks.len() < 2 {
        return Err(Error::NoCoveringRoot("a single disk covers with any exponent".into()));
    }
    let logs: Vec<f64> = level.disks.iter().map(|d| d.radius.ln()).collect();
    if logs.iter().any(|l| *l >= 0.0) {
        return Err(Error::NoCoveringRoot(format!(
            "level {} has a disk of radius ≥ 1, the covering sum never drops below 1",
            level.k
        )));
    }
    let f = |d: f64| {
        let terms: Vec<f64> = logs.iter().map(|l| (d * l).exp()).collect();
        pairwise_sum(&terms) - 1.0
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    while f(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NoCoveringRoot("upper bracket diverged".into()));
        }
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub t: f64,
    /// Reading at the deepest level.
    pub d: f64,
    /// `d_k` for every level supplied, shallowest first.
    pub sequence: Vec<f64>,
}

pub fn dimension_estimate(levels: &[DiskLevel]) -> Result<DimensionEstimate> {
    let Some(last) = levels.last() else {
        return Err(Error::EmptyLevel);
    };
    if levels.len() < 2 || last.k < 3 {
        return Err(Error::InvalidParameter(format!(
            "dimension estimate needs at least two levels reaching depth 3 (got {} levels, deepest {})",
            levels.len(),
            last.k
        )));
    }
    let sequence = levels.iter().map(covering_root).collect::<Result<Vec<_>>>()?;
    Ok(DimensionEstimate { t: last.t, d: *sequence.last().expect("nonempty"), sequence })
}

pub fn dimension_at(t: f64, depth: usize) -> Result<DimensionEstimate> {
    dimension_estimate(&levels(&SchottkyParams::new(t, depth)?)?)
}

/// Upper bound `−log 3 / (2 log t)` from the covering by level-`k` disks.
pub fn dimension_bound(t: f64) -> f64 {
    -(3f64.ln()) / (2.0 * t.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarSign {
    Positive,
    Zero,
    Negative,
}

/// Sign of the scalar curvature of the conformally flat metric on the
/// quotient, read off against the threshold `dim Λ = 1`.
pub fn scalar_sign_predict(d: f64, band: f64) -> Result<ScalarSign> {
    if !(d >= 0.0) || !(band >= 0.0) {
        return Err(Error::InvalidParameter(format!("need d ≥ 0 and band ≥ 0 (d = {d}, band = {band})")));
    }
    Ok(if d < 1.0 - band {
        ScalarSign::Positive
    } else if d > 1.0 + band {
        ScalarSign::Negative
    } else {
        ScalarSign::Zero
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Probe {
    pub t: f64,
    pub d: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Crossing {
    pub t_star: f64,
    pub d_star: f64,
    pub depth: usize,
    pub transcript: Vec<Probe>,
}

/// Bisection in `t` for `dimension = 1` at a fixed refinement depth.
pub fn crossing_bisect(t_lo: f64, t_hi: f64, depth: usize) -> Result<Crossing> {
    if !(t_lo >= 0.3 && t_hi <= 0.99 && t_lo < t_hi) {
        return Err(Error::InvalidBracket(format!("need 0.3 ≤ lo < hi ≤ 0.99, got ({t_lo}, {t_hi})")));
    }
    let probe = |t: f64| dimension_at(t, depth).map(|e| Probe { t, d: e.d });
    let (lo, hi) = (probe(t_lo)?, probe(t_hi)?);
    if !(lo.d < 1.0 && hi.d > 1.0) {
        return Err(Error::InvalidBracket(format!(
            "estimate does not cross 1 on ({t_lo}, {t_hi}) at depth {depth}: d = {} and {}",
            lo.d, hi.d
        )));
    }
    let mut transcript = vec![lo, hi];
    let (mut a, mut b) = (t_lo, t_hi);
    let mut last = lo;
    while b - a > 1e-6 {
        let p = probe(0.5 * (a + b))?;
        transcript.push(p);
        if p.d < 1.0 {
            a = p.t;
        } else {
            b = p.t;
        }
        last = p;
    }
    if (last.d - 1.0).abs() >= SIGN_BAND {
        return Err(Error::NoCoveringRoot(format!(
            "bisection stalled at t = {} with d = {}",
            last.t, last.d
        )));
    }
    Ok(Crossing { t_star: last.t, d_star: last.d, depth, transcript })
}

/// Index pairs `(i, j)`, `i < j`, of disks whose boundaries touch within
/// `tol`.
pub fn tangency_graph(level: &DiskLevel, tol: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    sweep_pairs(
        &level.disks,
        tol,
        |i, j, gap| {
            if gap.abs() < tol {
                edges.push((i, j));
            }
        },
        |_| true,
    );
    edges.sort_unstable();
    edges
}

/// Centers of the deepest disks, an approximation of `Λ_t` to within the
/// largest radius.
pub fn limit_set_cloud(params: &SchottkyParams) -> Result<Vec<C64>> {
    let all = levels(params)?;
    Ok(all.last().expect("level 0 present").centers())
}

/// Largest distance from a point of `a` to the nearest point of `b`.
pub fn directed_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    let mut sorted = b.to_vec();
    sorted.sort_by(|p, q| p.re.total_cmp(&q.re));
    let mut worst: f64 = 0.0;
    for p in a {
        let start = sorted.partition_point(|q| q.re < p.re);
        let mut best = f64::INFINITY;
        for q in sorted[start..].iter() {
            if q.re - p.re > best {
                break;
            }
            best = best.min((q - p).norm());
        }
        for q in sorted[..start].iter().rev() {
            if p.re - q.re > best {
                break;
            }
            best = best.min((q - p).norm());
        }
        worst = worst.max(best);
    }
    worst
}

/// Hausdorff distance between `points` and its image under `f`.
pub fn symmetry_defect(points: &[C64], f: impl Fn(C64) -> C64) -> f64 {
    let image: Vec<C64> = points.iter().map(|z| f(*z)).collect();
    directed_distance(points, &image).max(directed_distance(&image, points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const T_GRID: [f64; 4] = [0.3, 0.5, 0.7, 0.9];

    #[test]
    fn generator_determinants() {
        for i in 1..=20 {
            let t = 0.05 * i as f64;
            for g in generators(t).unwrap() {
                assert!((g.det() - 1.0).norm() < DET_TOLERANCE);
            }
        }
        assert!(generators(0.0).is_err() && generators(1.2).is_err());
    }

    #[test]
    fn generators_match_map_formulas() {
        let s3 = 3f64.sqrt();
        let i = C64::new(0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in [0.2, 0.5, 0.9, 1.0] {
            let [g1, g2, g1i, g2i] = generators(t).unwrap();
            for _ in 0..100 {
                let z = C64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
                let w1 = t * t / (z + i) + i;
                let w2 = -t * t / (z - s3) - s3;
                assert!((g1.apply(z) - w1).norm() < 1e-12 * w1.norm().max(1.0));
                assert!((g2.apply(z) - w2).norm() < 1e-12 * w2.norm().max(1.0));
                assert!((g1i.apply(g1.apply(z)) - z).norm() < 1e-10 * z.norm().max(1.0));
                assert!((g2i.apply(g2.apply(z)) - z).norm() < 1e-10 * z.norm().max(1.0));
            }
        }
    }

    #[test]
    fn limiting_group_matrices() {
        let [g1, g2, ..] = generators(1.0).unwrap();
        let c = |re: f64, im: f64| C64::new(re, im);
        let s3 = 3f64.sqrt();
        assert!(g1.approx_eq(&MoebiusMap { a: c(1.0, 0.0), b: c(0.0, 0.0), c: c(0.0, -1.0), d: c(1.0, 0.0) }, 1e-15));
        assert!(g2.approx_eq(&MoebiusMap { a: c(s3, 0.0), b: c(-2.0, 0.0), c: c(-1.0, 0.0), d: c(s3, 0.0) }, 1e-15));
    }

    #[test]
    fn boundary_point_goes_to_boundary() {
        let t = 0.5;
        let [g1, ..] = generators(t).unwrap();
        let w = g1.apply(C64::new(t, -1.0));
        assert!((w - C64::new(t, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn fundamental_configuration() {
        let l = fundamental_disks(0.5).unwrap();
        assert_eq!(l.disks.len(), 4);
        assert!(l.disks.iter().all(|d| d.word.is_empty() && d.radius == 0.5));
        let mut dists: Vec<f64> = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                dists.push((l.disks[i].center - l.disks[j].center).norm());
            }
        }
        dists.sort_by(f64::total_cmp);
        for (d, e) in dists.iter().zip([2.0, 2.0, 2.0, 2.0, 2.0, 2.0 * 3f64.sqrt()]) {
            assert!((d - e).abs() < 1e-14);
        }
        assert!(l.is_disjoint());
        assert!(!fundamental_disks(1.0).unwrap().is_disjoint());
    }

    #[test]
    fn nesting_count_and_disjointness() {
        for t in T_GRID {
            let all = levels(&SchottkyParams::new(t, 6).unwrap()).unwrap();
            for (k, l) in all.iter().enumerate() {
                assert_eq!(l.k, k);
                assert_eq!(l.disks.len(), 4 * 3usize.pow(k as u32));
                assert!(l.is_disjoint(), "t = {t}, k = {k}, gap {}", l.min_gap());
                assert!(l.disks.iter().all(|d| d.word.len() == k && d.is_reduced()));
                for d in &l.disks {
                    let target = d.target().target_center();
                    assert!((d.center - target).norm() + d.radius < t + NESTING_SLACK);
                }
            }
        }
    }

    #[test]
    fn first_refinement_sits_inside_fundamental_disks() {
        let l1 = refine(&fundamental_disks(0.5).unwrap()).unwrap();
        assert_eq!(l1.disks.len(), 12);
        for d in &l1.disks {
            assert!((d.center - d.target().target_center()).norm() + d.radius < 0.5);
        }
    }

    #[test]
    fn levels_are_in_word_order() {
        let all = levels(&SchottkyParams::new(0.4, 3).unwrap()).unwrap();
        for l in &all {
            assert!(l.disks.windows(2).all(|w| w[0].order_key(&w[1]) == Ordering::Less));
        }
    }

    #[test]
    fn radius_law_in_its_window() {
        for t in [0.3, 0.4, 0.5] {
            for l in levels(&SchottkyParams::new(t, 6).unwrap()).unwrap() {
                assert!(l.max_radius() < t.powi(2 * l.k as i32), "t = {t}, k = {}", l.k);
            }
        }
        let l3 = &levels(&SchottkyParams::new(0.4, 3).unwrap()).unwrap()[3];
        assert!(l3.max_radius() < 4.096e-3);
    }

    #[test]
    fn levels_are_symmetric() {
        for t in T_GRID {
            for l in levels(&SchottkyParams::new(t, 4).unwrap()).unwrap() {
                let c = l.centers();
                assert!(symmetry_defect(&c, |z| -z) < 1e-10);
                assert!(symmetry_defect(&c, |z| z.conj()) < 1e-10);
            }
        }
    }

    #[test]
    fn limiting_group_refines_with_tangencies() {
        let all = levels(&SchottkyParams::new(1.0, 3).unwrap()).unwrap();
        assert_eq!(all[3].disks.len(), 108);
        let g = tangency_graph(&all[0], 1e-9);
        assert_eq!(g, tangency_graph(&all[0], 1e-3));
        let has = |a: Generator, b: Generator| {
            let (i, j) = (a.index().min(b.index()), a.index().max(b.index()));
            g.contains(&(i, j))
        };
        assert!(has(Generator::G1, Generator::G2Inv));
        assert!(has(Generator::G1, Generator::G1Inv));
        assert!(!has(Generator::G2, Generator::G2Inv));
        assert_eq!(g.len(), 5);
        assert!(tangency_graph(&fundamental_disks(0.5).unwrap(), 1e-6).is_empty());
    }

    #[test]
    fn tangency_sweep_matches_brute_force() {
        let l = &levels(&SchottkyParams::new(1.0, 2).unwrap()).unwrap()[2];
        let mut brute = Vec::new();
        for i in 0..l.disks.len() {
            for j in i + 1..l.disks.len() {
                let (a, b) = (&l.disks[i], &l.disks[j]);
                if ((a.center - b.center).norm() - a.radius - b.radius).abs() < 1e-6 {
                    brute.push((i, j));
                }
            }
        }
        assert_eq!(tangency_graph(l, 1e-6), brute);
    }

    #[test]
    fn covering_root_of_level_zero() {
        for t in [0.1, 0.5, 0.8] {
            let d = covering_root(&fundamental_disks(t).unwrap()).unwrap();
            assert!((d - 4f64.ln() / (1.0 / t).ln()).abs() < 1e-9);
        }
        assert!(covering_root(&fundamental_disks(1.0).unwrap()).is_err());
        assert!(matches!(
            covering_root(&DiskLevel { k: 0, t: 0.5, disks: vec![] }),
            Err(Error::EmptyLevel)
        ));
    }

    #[test]
    fn dimension_below_bound() {
        for t in [0.1, 0.2, 0.3, 0.4, 0.5] {
            let e = dimension_at(t, 6).unwrap();
            assert!(e.d <= dimension_bound(t) * 1.05, "t = {t}: {} vs {}", e.d, dimension_bound(t));
            assert_eq!(e.sequence.len(), 7);
        }
        assert!((dimension_bound(0.3) - 0.4562).abs() < 1e-4);
        assert!((dimension_bound(0.5) - 0.7925).abs() < 1e-4);
    }

    #[test]
    fn dimension_requires_depth() {
        let two = levels(&SchottkyParams::new(0.5, 2).unwrap()).unwrap();
        assert!(dimension_estimate(&two).is_err());
        assert!(dimension_estimate(&[]).is_err());
    }

    #[test]
    fn level_sequence_settles() {
        for t in [0.3, 0.5, 0.7] {
            let e = dimension_at(t, 7).unwrap();
            let steps: Vec<f64> = e.sequence.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
            assert!(steps.windows(2).all(|s| s[1] < s[0]), "t = {t}: {steps:?}");
        }
    }

    #[test]
    fn sign_prediction() {
        assert_eq!(scalar_sign_predict(0.5, SIGN_BAND).unwrap(), ScalarSign::Positive);
        assert_eq!(scalar_sign_predict(1.0, SIGN_BAND).unwrap(), ScalarSign::Zero);
        assert_eq!(scalar_sign_predict(1.4, SIGN_BAND).unwrap(), ScalarSign::Negative);
        assert!(scalar_sign_predict(-0.1, SIGN_BAND).is_err());
    }

    #[test]
    fn crossing_brackets() {
        assert!(matches!(crossing_bisect(0.3, 0.35, 6), Err(Error::InvalidBracket(_))));
        assert!(crossing_bisect(0.2, 0.9, 6).is_err());
        let a = crossing_bisect(0.5, 0.98, 6).unwrap();
        let b = crossing_bisect(0.5, 0.98, 6).unwrap();
        assert_eq!(a, b);
        assert!(a.t_star > 0.5 && a.t_star < 0.98 && (a.d_star - 1.0).abs() < SIGN_BAND);
    }

    #[test]
    fn cloud_and_cap() {
        let c0 = limit_set_cloud(&SchottkyParams::new(0.4, 0).unwrap()).unwrap();
        assert_eq!(c0.len(), 4);
        let c2 = limit_set_cloud(&SchottkyParams::new(0.4, 2).unwrap()).unwrap();
        assert_eq!(c2.len(), 36);
        assert!(matches!(SchottkyParams::new(0.4, 12), Err(Error::DepthCapExceeded { .. })));
    }

    #[test]
    fn cloud_points_are_near_deeper_points() {
        // deep centers stand in for limit points
        let t = 0.4;
        let shallow = limit_set_cloud(&SchottkyParams::new(t, 2).unwrap()).unwrap();
        let deep = limit_set_cloud(&SchottkyParams::new(t, 7).unwrap()).unwrap();
        assert!(directed_distance(&shallow, &deep) < t.powi(5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn nesting_holds_for_random_t(t in 0.05f64..0.95) {
            let all = levels(&SchottkyParams::new(t, 4).unwrap()).unwrap();
            for l in &all {
                prop_assert_eq!(l.disks.len(), 4 * 3usize.pow(l.k as u32));
                prop_assert!(l.is_disjoint());
            }
        }

        #[test]
        fn reversed_symmetry(t in 0.05f64..0.95) {
            let l = &levels(&SchottkyParams::new(t, 3).unwrap()).unwrap()[3];
            let c = l.centers();
            prop_assert!(symmetry_defect(&c, |z| -z) < 1e-10);
            prop_assert!(symmetry_defect(&c, |z| z.conj()) < 1e-10);
        }

        #[test]
        fn radius_law_for_small_t(t in 0.05f64..=0.5) {
            for l in levels(&SchottkyParams::new(t, 5).unwrap()).unwrap() {
                prop_assert!(l.max_radius() < t.powi(2 * l.k as i32));
            }
        }
    }
}
