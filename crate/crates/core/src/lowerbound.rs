//! Valid clusterings of frequency sets and the separating functional that
//! rules out sum-of-squares certificates supported on them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::soscert::facet_functional;
use crate::trigspace::{check_modulus, residue, FrequencySet, TrigPoly};

/// Signed representative of `k` in `{−⌈N/2⌉+1, …, ⌊N/2⌋}`.
pub fn mod_star(k: i64, n: usize) -> i64 {
    let r = residue(k, n);
    if r > n / 2 {
        r as i64 - n as i64
    } else {
        r as i64
    }
}

/// A partition of `K` together with the parameter `γ` and the sorted
/// pairwise distances `d_i` with prefix sums `S_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    pub n: usize,
    pub k: FrequencySet,
    pub clusters: Vec<FrequencySet>,
    pub gamma: usize,
    pub distances: Vec<usize>,
    pub prefix_sums: Vec<usize>,
    /// Number of merges performed before the clustering became valid.
    pub merges: usize,
}

impl Clustering {
    pub fn new(k: FrequencySet, clusters: Vec<FrequencySet>, gamma: usize) -> Self {
        Clustering { n: k.modulus(), k, clusters, gamma, distances: Vec::new(), prefix_sums: Vec::new(), merges: 0 }
    }

    pub fn cluster_lists(&self) -> Vec<Vec<usize>> {
        self.clusters.iter().map(FrequencySet::to_vec).collect()
    }
}

/// Disjoint clusters covering `K`, each of in-diameter at most `γ`,
/// pairwise more than `γ` apart, with `1 ≤ γ < N/2`.
pub fn is_valid_clustering(c: &Clustering) -> bool {
    let n = c.n;
    if c.gamma == 0 || 2 * c.gamma >= n || c.k.modulus() != n {
        return false;
    }
    let mut union = FrequencySet::empty(n);
    let mut count = 0;
    for cl in &c.clusters {
        if cl.is_empty() || cl.modulus() != n {
            return false;
        }
        count += cl.len();
        union = union.union(cl);
    }
    if count != union.len() || union != c.k {
        return false;
    }
    if c.clusters.iter().any(|cl| cl.in_diameter().map_or(true, |d| d > c.gamma)) {
        return false;
    }
    for (a, ca) in c.clusters.iter().enumerate() {
        for cb in &c.clusters[a + 1..] {
            if ca.distance_to(cb) <= c.gamma {
                return false;
            }
        }
    }
    true
}

/// Outcome of the greedy merge loop, including any invariant breach seen
/// along the way.
#[derive(Debug, Clone)]
pub struct GreedyTrace {
    pub clustering: Option<Clustering>,
    pub distances: Vec<usize>,
    pub prefix_sums: Vec<usize>,
    pub breaches: Vec<String>,
}

fn sorted_pairs(k: &FrequencySet) -> Vec<(usize, usize, usize)> {
    let n = k.modulus();
    let elems = k.to_vec();
    let mut pairs = Vec::with_capacity(elems.len() * elems.len().saturating_sub(1) / 2);
    for (a, &x) in elems.iter().enumerate() {
        for &y in &elems[a + 1..] {
            let d = crate::trigspace::cyclic_dist(x, y, n);
            pairs.push((d, x, y));
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Greedy agglomerative clustering: start from singletons, merge along
/// pairs in increasing distance (ties by `(min, max)`), and stop at the
/// first valid clustering with `γ` the largest in-diameter.
pub fn greedy_clustering_traced(k: &FrequencySet) -> GreedyTrace {
    let n = k.modulus();
    let pairs = sorted_pairs(k);
    let distances: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let prefix_sums: Vec<usize> = distances
        .iter()
        .scan(0usize, |acc, d| {
            *acc += d;
            Some(*acc)
        })
        .collect();
    let mut breaches = Vec::new();
    let elems = k.to_vec();
    // cluster id per element, indexed like `elems`
    let mut owner: Vec<usize> = (0..elems.len()).collect();
    let pos = |x: usize| elems.binary_search(&x).expect("pair element in K");

    let snapshot = |owner: &[usize]| -> Vec<FrequencySet> {
        let mut ids: Vec<usize> = owner.to_vec();
        ids.sort_unstable();
        ids.dedup();
        ids.iter()
            .map(|&id| {
                FrequencySet::new(n, elems.iter().zip(owner).filter(|(_, &o)| o == id).map(|(&x, _)| x as i64))
            })
            .collect()
    };
    let finish = |clusters: Vec<FrequencySet>, gamma: usize, merges: usize, breaches: Vec<String>| {
        let mut c = Clustering::new(k.clone(), clusters, gamma);
        c.distances = distances.clone();
        c.prefix_sums = prefix_sums.clone();
        c.merges = merges;
        GreedyTrace { clustering: Some(c), distances: distances.clone(), prefix_sums: prefix_sums.clone(), breaches }
    };

    if k.is_empty() {
        return GreedyTrace { clustering: None, distances, prefix_sums, breaches };
    }
    let start = snapshot(&owner);
    if is_valid_clustering(&Clustering::new(k.clone(), start.clone(), 1)) {
        return finish(start, 1, 0, breaches);
    }
    let mut merges = 0;
    for (i, &(_, x, y)) in pairs.iter().enumerate() {
        let (a, b) = (owner[pos(x)], owner[pos(y)]);
        if a != b {
            for o in owner.iter_mut() {
                if *o == b {
                    *o = a;
                }
            }
            merges += 1;
        }
        let clusters = snapshot(&owner);
        if let Some(&next) = distances.get(i + 1) {
            for (p, cp) in clusters.iter().enumerate() {
                for cq in &clusters[p + 1..] {
                    if cp.distance_to(cq) < next {
                        breaches.push(format!("step {}: clusters closer than d_{}", i + 1, i + 2));
                    }
                }
            }
        }
        let diam: Vec<usize> = clusters.iter().map(|c| c.in_diameter().unwrap_or(0)).collect();
        if diam.iter().any(|&d| d > prefix_sums[i]) {
            breaches.push(format!("step {}: in-diameter exceeds S_{}", i + 1, i + 1));
        }
        if a == b {
            continue;
        }
        let gamma = diam.iter().copied().max().unwrap_or(0).max(1);
        if is_valid_clustering(&Clustering::new(k.clone(), clusters.clone(), gamma)) {
            return finish(clusters, gamma, merges, breaches);
        }
    }
    GreedyTrace { clustering: None, distances, prefix_sums, breaches }
}

pub fn greedy_clustering(k: &FrequencySet) -> Option<Clustering> {
    greedy_clustering_traced(k).clustering
}

/// `L(e_k) = e^{−iπ·mod*(k)/N}` when `d(0, k) ≤ γ`, zero otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparatingFunctional {
    pub n: usize,
    pub gamma: usize,
}

pub fn separating_functional(gamma: usize, n: usize) -> Result<SeparatingFunctional> {
    check_modulus(n)?;
    if gamma == 0 || 2 * gamma >= n {
        return Err(Error::InvalidArgument(format!("gamma must satisfy 1 <= gamma < N/2, got {gamma} for N = {n}")));
    }
    Ok(SeparatingFunctional { n, gamma })
}

impl SeparatingFunctional {
    pub fn value(&self, k: i64) -> Complex64 {
        let m = mod_star(k, self.n);
        if m.unsigned_abs() as usize > self.gamma {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(1.0, -PI * m as f64 / self.n as f64)
    }

    pub fn apply(&self, f: &TrigPoly) -> Complex64 {
        f.terms().map(|(k, c)| c * self.value(k as i64)).sum()
    }
}

/// `Σ_α |Σ_{k∈C_α} h_k e^{−iπ·mod*(k − a_α)/N}|²`, with `a_α` the start of
/// the shortest arc holding `C_α`; equals `Re L(|h|²)` for a valid
/// clustering.
pub fn closed_form_l_h2(c: &Clustering, h: &TrigPoly) -> f64 {
    let n = c.n;
    c.clusters
        .iter()
        .map(|cl| {
            let a = arc_start(cl);
            let s: Complex64 = cl
                .iter()
                .map(|k| h.coeff(k as i64) * Complex64::from_polar(1.0, -PI * mod_star(k as i64 - a as i64, n) as f64 / n as f64))
                .sum();
            s.norm_sqr()
        })
        .sum()
}

/// First element after the largest cyclic gap.
fn arc_start(cl: &FrequencySet) -> usize {
    let n = cl.modulus();
    let v = cl.to_vec();
    let mut best = (v[0] + n - v[v.len() - 1], v[0]);
    for w in v.windows(2) {
        if w[1] - w[0] > best.0 {
            best = (w[1] - w[0], w[1]);
        }
    }
    best.1
}

/// Uniform sample from the complex unit disk.
fn unit_disk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    let t = 2.0 * PI * rng.random::<f64>();
    Complex64::from_polar(r, t)
}

pub fn random_supported<R: Rng + ?Sized>(k: &FrequencySet, rng: &mut R) -> TrigPoly {
    TrigPoly::from_terms(k.modulus(), k.iter().map(|x| (x as i64, unit_disk(rng))))
}

pub const H_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RefutationReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
    pub gamma: usize,
    #[serde(rename = "L_ell")]
    pub l_ell: f64,
    #[serde(rename = "min_L_h2")]
    pub min_l_h2: f64,
    pub max_abs_im_l_h2: f64,
    pub closed_form_gap: f64,
    pub merges: usize,
}

impl RefutationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Attempts to show `K` cannot carry a certificate for the facet
/// functional. `Ok(None)` means no valid clustering was found; an error
/// means an internal invariant failed.
pub fn refute_sos_valid<R: Rng + ?Sized>(k: &FrequencySet, rng: &mut R) -> Result<Option<RefutationReport>> {
    let n = k.modulus();
    check_modulus(n)?;
    let trace = greedy_clustering_traced(k);
    if let Some(b) = trace.breaches.first() {
        return Err(Error::InvariantBreach(b.clone()));
    }
    let Some(c) = trace.clustering else { return Ok(None) };
    if !is_valid_clustering(&c) {
        return Err(Error::InvariantBreach("greedy output is not a valid clustering".into()));
    }
    let l = separating_functional(c.gamma, n)?;
    let l_ell = l.apply(&facet_functional(n)?);
    let mut min_re = f64::INFINITY;
    let mut max_im: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for _ in 0..H_SAMPLES {
        let h = random_supported(k, rng);
        let v = l.apply(&h.abs_sq());
        min_re = min_re.min(v.re);
        max_im = max_im.max(v.im.abs());
        gap = gap.max((v.re - closed_form_l_h2(&c, &h)).abs());
    }
    if l_ell.re >= 0.0 || l_ell.im.abs() > 1e-12 || min_re < -1e-10 || max_im > 1e-10 {
        return Err(Error::InvariantBreach(format!(
            "separating functional failed: L(ell) = {l_ell}, min Re L(|h|^2) = {min_re:.3e}, max |Im| = {max_im:.3e}"
        )));
    }
    Ok(Some(RefutationReport {
        n,
        k: k.to_vec(),
        clusters: c.cluster_lists(),
        gamma: c.gamma,
        l_ell: l_ell.re,
        min_l_h2: min_re,
        max_abs_im_l_h2: max_im,
        closed_form_gap: gap,
        merges: c.merges,
    }))
}

/// `ln(N/2)/2`, the minimum support size of any certificate for the facet
/// functional.
pub fn support_lower_bound(n: usize) -> f64 {
    (n as f64 / 2.0).ln() / 2.0
}

/// Largest size `s` with `s < ln(N/2)`.
pub fn log_bound_max_size(n: usize) -> usize {
    let b = (n as f64 / 2.0).ln();
    let s = b.ceil() as usize;
    if (s as f64) < b {
        s
    } else {
        s.saturating_sub(1)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LogBoundStats {
    pub n: usize,
    pub trials: usize,
    pub max_size: usize,
    pub successes: usize,
    /// Samples with `indiam(K) < N/2`, clustered as a single cluster.
    pub narrow: usize,
    /// Samples without a pair at distance one.
    pub no_adjacent_pair: usize,
    /// Samples meeting both standing assumptions of the general argument.
    pub general: usize,
    pub invariant_breaches: usize,
    pub max_gamma: usize,
}

/// Samples `trials` sets with `|K| < ln(N/2)` (size uniform, then a
/// uniform subset) and runs the greedy clustering on each.
pub fn log_bound_check<R: Rng + ?Sized>(n: usize, trials: usize, rng: &mut R) -> Result<LogBoundStats> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("log bound check needs N >= 8, got {n}")));
    }
    let max_size = log_bound_max_size(n);
    let mut stats = LogBoundStats { n, trials, max_size, ..Default::default() };
    for _ in 0..trials {
        let size = rng.random_range(1..=max_size);
        let picks = rand::seq::index::sample(rng, n, size);
        let k = FrequencySet::new(n, picks.iter().map(|x| x as i64));
        record_sample(&mut stats, &k);
    }
    Ok(stats)
}

fn record_sample(stats: &mut LogBoundStats, k: &FrequencySet) {
    let n = k.modulus();
    let narrow = 2 * k.in_diameter().unwrap_or(0) < n;
    let adjacent = sorted_pairs(k).first().is_some_and(|p| p.0 == 1);
    if narrow {
        stats.narrow += 1;
    }
    if !adjacent {
        stats.no_adjacent_pair += 1;
    }
    if !narrow && adjacent {
        stats.general += 1;
    }
    let trace = greedy_clustering_traced(k);
    if !trace.breaches.is_empty() {
        stats.invariant_breaches += 1;
    }
    if let Some(c) = trace.clustering {
        if is_valid_clustering(&c) {
            stats.successes += 1;
            stats.max_gamma = stats.max_gamma.max(c.gamma);
        }
    }
}

/// Greedy statistics over caller-supplied sets.
pub fn clustering_stats<'a>(n: usize, sets: impl IntoIterator<Item = &'a FrequencySet>) -> LogBoundStats {
    let mut stats = LogBoundStats { n, max_size: log_bound_max_size(n), ..Default::default() };
    for k in sets {
        stats.trials += 1;
        record_sample(&mut stats, k);
    }
    stats
}

/// `{0, 1, 3, 7, …, 2^{size−1} − 1}`.
pub fn adversarial_doubling_set(n: usize, size: usize) -> Result<FrequencySet> {
    if size == 0 || size > 62 || (1u64 << (size - 1)) > n as u64 {
        return Err(Error::InvalidArgument(format!("doubling set of size {size} does not fit in Z_{n}")));
    }
    Ok(FrequencySet::new(n, (0..size).map(|i| (1i64 << i) - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soscert::{hierarchy_certificate, powers_of_two_certificate, verify_certificate};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(n: usize, ks: &[i64]) -> FrequencySet {
        FrequencySet::new(n, ks.iter().copied())
    }

    #[test]
    fn mod_star_examples() {
        for n in 3..=64usize {
            assert_eq!(mod_star(n as i64 - 1, n), -1);
            assert_eq!(mod_star((n / 2) as i64, n), (n / 2) as i64);
            assert_eq!(mod_star(0, n), 0);
            for k in -200i64..200 {
                let m = mod_star(k, n);
                assert!(-(n.div_ceil(2) as i64) < m && m <= (n / 2) as i64);
                assert_eq!(residue(m - k, n), 0);
            }
            for gamma in 1..n.div_ceil(2) {
                for k in 0..=gamma as i64 {
                    for kp in 0..=gamma as i64 {
                        assert_eq!(mod_star(kp - k, n), mod_star(kp, n) - mod_star(k, n));
                    }
                }
            }
        }
    }

    #[test]
    fn validity_examples() {
        let k = set(20, &[0, 1, 3, 7]);
        let c = Clustering::new(k.clone(), vec![set(20, &[0, 1]), set(20, &[3]), set(20, &[7])], 1);
        assert!(is_valid_clustering(&c));
        let single = set(20, &[2, 5, 9]);
        let c = Clustering::new(single.clone(), vec![single.clone()], 7);
        assert!(is_valid_clustering(&c));
        // distance exactly gamma
        let k2 = set(20, &[0, 2]);
        let c = Clustering::new(k2.clone(), vec![set(20, &[0]), set(20, &[2])], 2);
        assert!(!is_valid_clustering(&c));
        // gamma = N/2 is out of range
        let c = Clustering::new(single.clone(), vec![single], 10);
        assert!(!is_valid_clustering(&c));
        // missing element
        let c = Clustering::new(k, vec![set(20, &[0, 1]), set(20, &[3])], 1);
        assert!(!is_valid_clustering(&c));
    }

    #[test]
    fn greedy_examples() {
        let c = greedy_clustering(&set(20, &[0, 1, 3, 7])).unwrap();
        assert_eq!(c.cluster_lists(), vec![vec![0, 1], vec![3], vec![7]]);
        assert_eq!(c.gamma, 1);
        assert_eq!(c.merges, 1);
        assert_eq!(c.distances, vec![1, 2, 3, 4, 6, 7]);
        assert_eq!(c.prefix_sums, vec![1, 3, 6, 10, 16, 23]);

        let c = greedy_clustering(&set(30, &[0, 3, 7, 12, 20])).unwrap();
        assert_eq!(c.merges, 0);
        assert_eq!(c.gamma, 1);
        assert_eq!(c.clusters.len(), 5);

        for n in 2..=10u32 {
            let cert = powers_of_two_certificate(n).unwrap();
            assert!(greedy_clustering(&cert.hermitian_support()).is_none(), "n = {n}");
        }
        let k = set(64, &[0, 1, 2, 4, 8, 16]).symmetric_closure();
        assert!(greedy_clustering(&k).is_none());
        assert!(greedy_clustering(&FrequencySet::empty(10)).is_none());
    }

    #[test]
    fn functional_examples() {
        for n in [3usize, 4, 7, 16, 101] {
            let l = separating_functional(1, n).unwrap();
            assert!((l.apply(&TrigPoly::e(n, 0)) - 1.0).norm() < 1e-15);
            let want = Complex64::from_polar(1.0, PI / n as f64);
            assert!((l.apply(&TrigPoly::e(n, n as i64 - 1)) - want).norm() < 1e-15);
            let got = l.apply(&facet_functional(n).unwrap());
            assert!((got.re - ((PI / n as f64).cos() - 1.0)).abs() <= 1e-14);
            assert!(got.im.abs() <= 1e-15);
        }
        assert!(separating_functional(0, 10).is_err());
        assert!(separating_functional(5, 10).is_err());
        let l = separating_functional(3, 20).unwrap();
        for k in 0..20i64 {
            let v = l.value(k);
            if mod_star(k, 20).abs() > 3 {
                assert_eq!(v.norm(), 0.0);
            } else {
                assert!((v.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn refutation_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = refute_sos_valid(&set(16, &[0, 2, 4]), &mut rng).unwrap().unwrap();
        assert_eq!(r.gamma, 1);
        assert_eq!(r.clusters.len(), 3);
        assert!(r.min_l_h2 >= -1e-10);
        assert!(r.closed_form_gap <= 1e-12);

        let r = refute_sos_valid(&set(40, &[0, 1, 2, 3]), &mut rng).unwrap().unwrap();
        assert_eq!(r.clusters.len(), 1);
        assert_eq!(r.gamma, 3);
        assert_eq!(r.merges, 3);

        for n in 2..=10u32 {
            let k = powers_of_two_certificate(n).unwrap().hermitian_support();
            assert!(refute_sos_valid(&k, &mut rng).unwrap().is_none());
        }
        let json = refute_sos_valid(&set(20, &[0, 1, 3, 7]), &mut rng).unwrap().unwrap().to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["n", "K", "clusters", "gamma", "L_ell", "min_L_h2"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(RefutationReport::from_json(&json).unwrap().k, vec![0, 1, 3, 7]);
    }

    #[test]
    fn refutations_do_not_hit_verified_certificates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut corpus = vec![crate::soscert::hexagon_certificate()];
        corpus.extend((2..=8).map(|n| powers_of_two_certificate(n).unwrap()));
        corpus.extend((3..=30).map(|n| hierarchy_certificate(n).unwrap()));
        for cert in &corpus {
            assert!(verify_certificate(cert, 1e-8).passed);
            let k = cert.hermitian_support();
            assert!(refute_sos_valid(&k, &mut rng).unwrap().is_none(), "N = {}", cert.n);
            assert!(k.len() as f64 >= support_lower_bound(cert.n));
        }
    }

    #[test]
    fn log_bound_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = log_bound_check(64, 1000, &mut rng).unwrap();
        assert_eq!(s.max_size, 3);
        assert_eq!(s.successes, 1000);
        assert_eq!(s.invariant_breaches, 0);
        assert_eq!(log_bound_max_size(1 << 20), 13);
        assert!(log_bound_check(4, 1, &mut rng).is_err());

        for n in [64usize, 1 << 10, 1 << 20] {
            let size = log_bound_max_size(n);
            let k = adversarial_doubling_set(n, size).unwrap();
            let t = greedy_clustering_traced(&k);
            assert!(t.breaches.is_empty());
            assert!(is_valid_clustering(&t.clustering.unwrap()), "N = {n}");
        }
        assert_eq!(adversarial_doubling_set(64, 4).unwrap().to_vec(), vec![0, 1, 3, 7]);
        assert!(adversarial_doubling_set(8, 5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn greedy_output_is_valid(n in 8usize..200, ks in proptest::collection::btree_set(0usize..200, 1..9)) {
            let k = FrequencySet::new(n, ks.iter().map(|&x| x as i64));
            let t = greedy_clustering_traced(&k);
            prop_assert!(t.breaches.is_empty(), "{:?}", t.breaches);
            if let Some(c) = t.clustering {
                prop_assert!(is_valid_clustering(&c));
            }
        }

        #[test]
        fn l_positivity(n in 8usize..120, ks in proptest::collection::btree_set(0usize..120, 1..7), seed in any::<u64>()) {
            let k = FrequencySet::new(n, ks.iter().map(|&x| x as i64));
            if let Some(c) = greedy_clustering(&k) {
                let l = separating_functional(c.gamma, n).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for cl in &c.clusters {
                    let h = random_supported(cl, &mut rng);
                    let v = l.apply(&h.abs_sq());
                    prop_assert!(v.re >= -1e-12);
                    prop_assert!((v.re - closed_form_l_h2(&c, &h)).abs() <= 1e-12);
                    prop_assert!(v.im.abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn small_sets_always_cluster(exp in 4u32..21, seed in any::<u64>()) {
            let n = 1usize << exp;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = log_bound_check(n, 5, &mut rng).unwrap();
            prop_assert_eq!(s.successes, 5);
            prop_assert_eq!(s.invariant_breaches, 0);
        }
    }
}
