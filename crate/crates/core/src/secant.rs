//! Dimensions of secant varieties of ν_k(G(k, n+1)).
//!
//! [`terracini_dim`] is the projective dimension of the span of the tangent
//! spaces at the points of a [`Configuration`]. [`apolar_dim`] computes
//! `N - dim W`, with `W` the degree `n+1-k` part of the intersection of the
//! squared ideals of the subspaces. The two agree on every configuration;
//! at generic configurations they equal `dim X^s`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlinalg::{
    intersect_subspaces, Field, FieldMode, Matrix, PrimeField, RationalField, ALT_PRIME,
    MERSENNE_61,
};
use crate::exterior::{binomial, to_matrix, ExtVector, GradedBasis};
use crate::grassmann::{GrassmannParams, VSubspace};

/// Which dimension computation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Terracini,
    Apolar,
    Both,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Terracini => "terracini",
            Method::Apolar => "apolar",
            Method::Both => "both",
        }
    }
}

/// How the subspaces of a configuration were chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// `blocks` consecutive coordinate blocks, optionally the diagonal
    /// subspace, then `random` random subspaces.
    NormalForm {
        blocks: usize,
        diagonal: bool,
        random: usize,
    },
    Random,
    User,
}

impl Provenance {
    /// True when the configuration involves no random choices.
    pub fn is_deterministic(&self) -> bool {
        match self {
            Provenance::NormalForm { random, .. } => *random == 0,
            Provenance::Random => false,
            Provenance::User => true,
        }
    }
}

/// `s` distinct k-dimensional subspaces of K^{n+1}.
#[derive(Debug, Clone)]
pub struct Configuration<F: Field> {
    ambient: usize,
    k: usize,
    subspaces: Vec<VSubspace<F>>,
    provenance: Provenance,
}

impl<F: Field> Configuration<F> {
    pub fn new(subspaces: Vec<VSubspace<F>>, provenance: Provenance) -> Result<Self> {
        let first = subspaces.first().ok_or(Error::NoSubspaces)?;
        let (ambient, k) = (first.ambient(), first.k());
        GrassmannParams::new(ambient, k)?;
        for (i, p) in subspaces.iter().enumerate() {
            if p.ambient() != ambient || p.k() != k {
                return Err(Error::InvalidConfiguration(format!(
                    "subspace {i} lives in G({}, {}), expected G({k}, {ambient})",
                    p.k(),
                    p.ambient()
                )));
            }
            if subspaces[..i].contains(p) {
                return Err(Error::InvalidConfiguration(format!(
                    "subspace {i} repeats an earlier one"
                )));
            }
        }
        Ok(Self {
            ambient,
            k,
            subspaces,
            provenance,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.subspaces.len()
    }

    pub fn subspaces(&self) -> &[VSubspace<F>] {
        &self.subspaces
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn field(&self) -> &F {
        self.subspaces[0].field()
    }

    /// The first `s` subspaces.
    pub fn prefix(&self, s: usize) -> Result<Self> {
        Self::new(self.subspaces[..s.min(self.s())].to_vec(), self.provenance)
    }
}

fn check_ranges(ambient: usize, k: usize, s: usize) -> Result<GrassmannParams> {
    let params = GrassmannParams::new(ambient, k)?;
    if s == 0 {
        return Err(Error::InvalidParams("s must be at least 1".into()));
    }
    Ok(params)
}

/// `min(C(n+1,k) - 1, s·k(n+1-k) + s - 1)`.
pub fn expected_dim(ambient: usize, k: usize, s: usize) -> Result<u64> {
    let params = check_ranges(ambient, k, s)?;
    let s = s as u64;
    Ok(params.projective_dim().min(s * params.grass_dim() + s - 1))
}

/// The subspace spanned by `Σ_j e_{jk+i}`, `i = 0..k`, over `blocks` blocks.
fn diagonal_subspace<F: Field>(
    field: &F,
    ambient: usize,
    k: usize,
    blocks: usize,
) -> Result<VSubspace<F>> {
    let mut m = Matrix::zeros(field, k, ambient);
    for i in 0..k {
        for j in 0..blocks {
            m.set(i, j * k + i, field.one());
        }
    }
    VSubspace::from_matrix(&m)
}

fn push_random<F: Field>(
    field: &F,
    ambient: usize,
    k: usize,
    out: &mut Vec<VSubspace<F>>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    loop {
        let p = VSubspace::random(field, ambient, k, rng)?;
        if !out.contains(&p) {
            out.push(p);
            return Ok(());
        }
    }
}

/// The configurations used to realise generic dimensions.
///
/// The first `⌊(n+1)/k⌋` subspaces are consecutive coordinate blocks. When
/// `k` divides `n+1` the next one is the diagonal subspace
/// `⟨e_i + e_{k+i} + …⟩`; anything beyond is random.
pub fn normal_form_configuration<F: Field>(
    field: &F,
    ambient: usize,
    k: usize,
    s: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Configuration<F>> {
    check_ranges(ambient, k, s)?;
    let full_blocks = ambient / k;
    let blocks = full_blocks.min(s);
    let mut subspaces = Vec::with_capacity(s);
    for b in 0..blocks {
        let idx: Vec<usize> = (b * k..(b + 1) * k).collect();
        subspaces.push(VSubspace::coordinate(field, ambient, &idx)?);
    }
    let diagonal = s > blocks && ambient.is_multiple_of(k) && full_blocks >= 2;
    if diagonal {
        subspaces.push(diagonal_subspace(field, ambient, k, full_blocks)?);
    }
    let random = s - subspaces.len();
    for _ in 0..random {
        push_random(field, ambient, k, &mut subspaces, rng)?;
    }
    Configuration::new(
        subspaces,
        Provenance::NormalForm {
            blocks,
            diagonal,
            random,
        },
    )
}

/// `s` independent uniformly random subspaces.
pub fn random_configuration<F: Field>(
    field: &F,
    ambient: usize,
    k: usize,
    s: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Configuration<F>> {
    check_ranges(ambient, k, s)?;
    let mut subspaces = Vec::with_capacity(s);
    for _ in 0..s {
        push_random(field, ambient, k, &mut subspaces, rng)?;
    }
    Configuration::new(subspaces, Provenance::Random)
}

/// Stacked affine tangent cones, `s·(k(n+1-k)+1)` rows over `Λ^k`.
pub fn terracini_matrix<F: Field>(config: &Configuration<F>) -> Matrix<F> {
    let basis = GradedBasis::new(config.ambient, config.k).expect("ambient checked");
    let tangents: Vec<ExtVector<F>> = config
        .subspaces
        .iter()
        .flat_map(|p| p.tangent_cone_basis())
        .collect();
    to_matrix(config.field(), &basis, &tangents).expect("tangent vectors have grade k")
}

/// Projective dimension of the span of the tangent spaces.
pub fn terracini_dim<F: Field>(config: &Configuration<F>) -> usize {
    terracini_matrix(config).rank() - 1
}

/// Output of [`apolar_dim`].
#[derive(Debug, Clone)]
pub struct ApolarResult<F: Field> {
    pub dim: usize,
    pub w_dim: usize,
    pub w_basis: Vec<ExtVector<F>>,
}

/// `[C(n+1,k) - 1] - dim W` with `W = (I_1² ∩ … ∩ I_s²)_{n+1-k}`.
pub fn apolar_dim<F: Field>(config: &Configuration<F>) -> ApolarResult<F> {
    let field = config.field();
    let ambient = config.ambient;
    let degree = ambient - config.k;
    let projective = (binomial(ambient, config.k) - 1) as usize;
    if degree < 2 {
        // squares of ideals start in degree 2
        return ApolarResult {
            dim: projective,
            w_dim: 0,
            w_basis: Vec::new(),
        };
    }
    let basis = GradedBasis::new(ambient, degree).expect("ambient checked");
    let pieces: Vec<Matrix<F>> = config
        .subspaces
        .iter()
        .map(|p| {
            let gens = p.ideal_square_basis(degree).expect("degree >= 2");
            to_matrix(field, &basis, &gens).expect("grade matches")
        })
        .collect();
    let w = intersect_subspaces(&pieces, basis.len()).expect("at least one subspace");
    let w_basis = (0..w.rows())
        .map(|i| ExtVector::from_dense(field, &basis, w.row(i)).expect("row length"))
        .collect();
    ApolarResult {
        dim: projective - w.rows(),
        w_dim: w.rows(),
        w_basis,
    }
}

/// Runs the requested method(s) on one configuration.
pub fn configuration_dim<F: Field>(config: &Configuration<F>, method: Method) -> Result<usize> {
    match method {
        Method::Terracini => Ok(terracini_dim(config)),
        Method::Apolar => Ok(apolar_dim(config).dim),
        Method::Both => {
            let terracini = terracini_dim(config);
            let apolar = apolar_dim(config).dim;
            if terracini != apolar {
                return Err(Error::InternalInconsistency { terracini, apolar });
            }
            Ok(terracini)
        }
    }
}

/// A user-supplied configuration with integer entries, read in whichever
/// field the computation runs over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub ambient: usize,
    pub k: usize,
    pub subspaces: Vec<Vec<Vec<i64>>>,
}

impl ConfigFile {
    pub fn to_configuration<F: Field>(&self, field: &F) -> Result<Configuration<F>> {
        GrassmannParams::new(self.ambient, self.k)?;
        let subspaces = self
            .subspaces
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                if rows.len() != self.k || rows.iter().any(|r| r.len() != self.ambient) {
                    return Err(Error::InvalidConfiguration(format!(
                        "subspace {i} must have {} rows of length {}",
                        self.k, self.ambient
                    )));
                }
                let rows = rows
                    .iter()
                    .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                    .collect();
                VSubspace::from_matrix(&Matrix::from_rows(field, self.ambient, rows)?).map_err(
                    |_| Error::InvalidConfiguration(format!("subspace {i} has dependent rows")),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(subspaces, Provenance::User)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(u64),
    Rational,
}

impl Default for FieldChoice {
    fn default() -> Self {
        FieldChoice::Prime(MERSENNE_61)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum PointSource {
    #[default]
    NormalForm,
    Random,
    User(ConfigFile),
}

/// Knobs for [`secant_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    pub field: FieldChoice,
    pub seed: u64,
    /// Random configurations tried per field; the maximum is kept.
    pub trials: usize,
    pub method: Method,
    pub source: PointSource,
    /// Replace `k > (n+1)/2` by `n+1-k` (not applied to user configurations).
    pub dualize: bool,
    /// Confirm a defect over a second prime and over Q before reporting it.
    pub certify_defects: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            field: FieldChoice::default(),
            seed: 0,
            trials: 3,
            method: Method::Both,
            source: PointSource::NormalForm,
            dualize: true,
            certify_defects: true,
        }
    }
}

fn as_decimal<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_optional_decimal<S: Serializer>(
    v: &Option<u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(p) => s.serialize_str(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// Everything known about one `(n+1, k, s)` triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecantReport {
    pub ambient: usize,
    pub k: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub projective_dim: u64,
    pub grass_dim: u64,
    pub expected_dim: u64,
    pub computed_dim: u64,
    pub w_dim: u64,
    pub defect: u64,
    pub w_surplus: i64,
    pub method: Method,
    pub field: &'static str,
    #[serde(serialize_with = "as_optional_decimal")]
    pub prime: Option<u64>,
    #[serde(serialize_with = "as_decimal")]
    pub seed: u64,
    pub trials: usize,
    pub certified_nondefective: bool,
}

/// `dim W` expected when the subspaces are in general position, before
/// clamping at zero: `C(n+1,k) - s[k(n+1-k)+1]`.
pub fn expected_w_unclamped(ambient: usize, k: usize, s: usize) -> i64 {
    let params = GrassmannParams::new(ambient, k).expect("valid params");
    binomial(ambient, k) as i64 - s as i64 * (params.grass_dim() as i64 + 1)
}

/// `(defect, w_surplus)`: the clamped secant defect and the excess of `dim W`
/// over its unclamped expectation.
pub fn defect_measures(report: &SecantReport) -> (u64, i64) {
    let defect = report.expected_dim - report.computed_dim;
    let surplus = report.w_dim as i64 - expected_w_unclamped(report.ambient, report.k, report.s);
    (defect, surplus)
}

struct RunOutcome {
    dim: usize,
    trials: usize,
}

fn run_trials<F: Field>(
    field: &F,
    ambient: usize,
    k: usize,
    s: usize,
    opts: &ReportOptions,
    method: Method,
) -> Result<RunOutcome> {
    let mut best = 0;
    let mut trials = 0;
    for t in 0..opts.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(t as u64));
        let config = match &opts.source {
            PointSource::NormalForm => normal_form_configuration(field, ambient, k, s, &mut rng)?,
            PointSource::Random => random_configuration(field, ambient, k, s, &mut rng)?,
            PointSource::User(file) => file.to_configuration(field)?,
        };
        best = best.max(configuration_dim(&config, method)?);
        trials += 1;
        if config.provenance().is_deterministic() || best as u64 == expected_dim(ambient, k, s)? {
            break;
        }
    }
    Ok(RunOutcome { dim: best, trials })
}

/// Computes the secant dimension for `(n+1, k, s)` and everything derived
/// from it.
///
/// Over F_p a dimension below the expected one is only reported after the
/// same value is reproduced over a second prime and over Q (Terracini route,
/// normal form or user configuration).
pub fn secant_report(
    ambient: usize,
    k: usize,
    s: usize,
    opts: &ReportOptions,
) -> Result<SecantReport> {
    let params = check_ranges(ambient, k, s)?;
    if opts.trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    if let PointSource::User(file) = &opts.source {
        if file.ambient != ambient || file.k != k || file.subspaces.len() != s {
            return Err(Error::InvalidConfiguration(format!(
                "file describes G({}, {}) with {} subspaces, requested G({k}, {ambient}) with s = {s}",
                file.k,
                file.ambient,
                file.subspaces.len()
            )));
        }
    }
    let work_k = match opts.source {
        PointSource::User(_) => k,
        _ if opts.dualize => params.canonical().k(),
        _ => k,
    };
    let expected = expected_dim(ambient, k, s)?;

    let (mode, outcome) = match opts.field {
        FieldChoice::Prime(p) => {
            let field = PrimeField::new(p)?;
            let outcome = run_trials(&field, ambient, work_k, s, opts, opts.method)?;
            if opts.certify_defects && (outcome.dim as u64) < expected {
                certify_defect(p, ambient, work_k, s, opts, outcome.dim)?;
            }
            (field.mode(), outcome)
        }
        FieldChoice::Rational => {
            let outcome = run_trials(&RationalField, ambient, work_k, s, opts, opts.method)?;
            (FieldMode::Rational, outcome)
        }
    };

    let projective_dim = params.projective_dim();
    let computed_dim = outcome.dim as u64;
    let mut report = SecantReport {
        ambient,
        k,
        s,
        projective_dim,
        grass_dim: params.grass_dim(),
        expected_dim: expected,
        computed_dim,
        w_dim: projective_dim - computed_dim,
        defect: 0,
        w_surplus: 0,
        method: opts.method,
        field: mode.name(),
        prime: mode.prime(),
        seed: opts.seed,
        trials: outcome.trials,
        certified_nondefective: computed_dim == expected,
    };
    let (defect, w_surplus) = defect_measures(&report);
    report.defect = defect;
    report.w_surplus = w_surplus;
    Ok(report)
}

fn certify_defect(
    prime: u64,
    ambient: usize,
    k: usize,
    s: usize,
    opts: &ReportOptions,
    observed: usize,
) -> Result<()> {
    let other = if prime == ALT_PRIME {
        MERSENNE_61
    } else {
        ALT_PRIME
    };
    let second = run_trials(&PrimeField::new(other)?, ambient, k, s, opts, opts.method)?;
    if second.dim != observed {
        return Err(Error::UnluckyPrime(format!(
            "dimension {observed} mod {prime} but {} mod {other}",
            second.dim
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let config = match &opts.source {
        PointSource::User(file) => file.to_configuration(&RationalField)?,
        _ => normal_form_configuration(&RationalField, ambient, k, s, &mut rng)?,
    };
    let rational = terracini_dim(&config);
    if rational != observed {
        return Err(Error::UnluckyPrime(format!(
            "dimension {observed} mod {prime} but {rational} over Q"
        )));
    }
    Ok(())
}

/// Smallest `s` whose secant variety fills `P^N`.
pub fn typical_rank(ambient: usize, k: usize, opts: &ReportOptions) -> Result<usize> {
    let params = GrassmannParams::new(ambient, k)?;
    let n = params.projective_dim();
    for s in 1..=(n as usize + 1) {
        let report = secant_report(ambient, k, s, opts)?;
        if report.computed_dim == n {
            return Ok(s);
        }
    }
    Err(Error::InvalidParams(format!(
        "G({k}, {ambient}) never filled its ambient space"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn f() -> PrimeField {
        PrimeField::default()
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn report(ambient: usize, k: usize, s: usize) -> SecantReport {
        secant_report(ambient, k, s, &ReportOptions::default()).unwrap()
    }

    #[test]
    fn expected_dim_examples() {
        assert_eq!(expected_dim(8, 4, 3).unwrap(), 50);
        assert_eq!(expected_dim(7, 3, 3).unwrap(), 34);
        for (ambient, k) in [(5, 2), (8, 3), (10, 4)] {
            assert_eq!(
                expected_dim(ambient, k, 1).unwrap(),
                (k * (ambient - k)) as u64
            );
        }
        assert!(expected_dim(5, 0, 1).is_err());
        assert!(expected_dim(5, 2, 0).is_err());
    }

    fn rows_of(p: &VSubspace<PrimeField>) -> Vec<Vec<u64>> {
        p.basis().row_vecs()
    }

    #[test]
    fn normal_forms() {
        let field = f();
        let c = normal_form_configuration(&field, 8, 4, 3, &mut rng(0)).unwrap();
        assert_eq!(
            c.provenance(),
            Provenance::NormalForm {
                blocks: 2,
                diagonal: true,
                random: 0
            }
        );
        assert_eq!(
            c.subspaces()[0],
            VSubspace::coordinate(&field, 8, &[0, 1, 2, 3]).unwrap()
        );
        assert_eq!(
            c.subspaces()[1],
            VSubspace::coordinate(&field, 8, &[4, 5, 6, 7]).unwrap()
        );
        assert_eq!(
            rows_of(&c.subspaces()[2]),
            vec![
                vec![1, 0, 0, 0, 1, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 1, 0, 0],
                vec![0, 0, 1, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 1, 0, 0, 0, 1],
            ]
        );

        let c = normal_form_configuration(&field, 9, 3, 4, &mut rng(0)).unwrap();
        assert_eq!(
            c.provenance(),
            Provenance::NormalForm {
                blocks: 3,
                diagonal: true,
                random: 0
            }
        );
        assert_eq!(
            rows_of(&c.subspaces()[3]),
            vec![
                vec![1, 0, 0, 1, 0, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 1, 0, 0, 1, 0],
                vec![0, 0, 1, 0, 0, 1, 0, 0, 1],
            ]
        );

        let c = normal_form_configuration(&field, 6, 3, 2, &mut rng(0)).unwrap();
        assert_eq!(
            c.provenance(),
            Provenance::NormalForm {
                blocks: 2,
                diagonal: false,
                random: 0
            }
        );

        let c = normal_form_configuration(&field, 7, 3, 3, &mut rng(0)).unwrap();
        assert_eq!(
            c.provenance(),
            Provenance::NormalForm {
                blocks: 2,
                diagonal: false,
                random: 1
            }
        );

        let c = normal_form_configuration(&field, 8, 4, 5, &mut rng(0)).unwrap();
        assert_eq!(
            c.provenance(),
            Provenance::NormalForm {
                blocks: 2,
                diagonal: true,
                random: 2
            }
        );
    }

    #[test]
    fn configuration_validation() {
        let field = f();
        let a = VSubspace::coordinate(&field, 6, &[0, 1]).unwrap();
        let b = VSubspace::coordinate(&field, 6, &[0, 1, 2]).unwrap();
        assert!(Configuration::new(vec![a.clone(), a.clone()], Provenance::User).is_err());
        assert!(Configuration::new(vec![a, b], Provenance::User).is_err());
        assert_eq!(
            Configuration::<PrimeField>::new(vec![], Provenance::User).unwrap_err(),
            Error::NoSubspaces
        );
    }

    #[test]
    fn single_point_is_the_grassmannian() {
        let field = f();
        for (ambient, k) in [(4, 2), (6, 3), (9, 4), (5, 1)] {
            let c = normal_form_configuration(&field, ambient, k, 1, &mut rng(0)).unwrap();
            assert_eq!(terracini_dim(&c), k * (ambient - k));
            assert_eq!(apolar_dim(&c).dim, k * (ambient - k));
        }
    }

    #[test]
    fn g48_three_points() {
        let c = normal_form_configuration(&f(), 8, 4, 3, &mut rng(0)).unwrap();
        assert_eq!(terracini_dim(&c), 49);
        let ap = apolar_dim(&c);
        assert_eq!((ap.w_dim, ap.dim), (20, 49));
        assert_eq!(ap.w_basis.len(), 20);
    }

    #[test]
    fn g39_four_points() {
        let c = normal_form_configuration(&f(), 9, 3, 4, &mut rng(0)).unwrap();
        assert_eq!(terracini_dim(&c), 73);
        let ap = apolar_dim(&c);
        assert_eq!((ap.w_dim, ap.dim), (10, 73));
    }

    #[test]
    fn g37_with_e6_plane() {
        // blocks ⟨e0,e1,e2⟩, ⟨e3,e4,e5⟩ and ⟨e6, v, w⟩ with v, w random
        let field = f();
        let mut r = rng(9);
        let b1 = VSubspace::coordinate(&field, 7, &[0, 1, 2]).unwrap();
        let b2 = VSubspace::coordinate(&field, 7, &[3, 4, 5]).unwrap();
        let mut rows = vec![vec![0u64; 7]];
        rows[0][6] = 1;
        for _ in 0..2 {
            rows.push((0..7).map(|_| field.random(&mut r)).collect());
        }
        let third = VSubspace::from_matrix(&Matrix::from_rows(&field, 7, rows).unwrap()).unwrap();
        let c = Configuration::new(vec![b1, b2, third], Provenance::User).unwrap();
        let ap = apolar_dim(&c);
        assert_eq!((ap.w_dim, ap.dim), (1, 33));
        assert_eq!(terracini_dim(&c), 33);
    }

    #[test]
    fn report_examples() {
        let r = report(7, 3, 3);
        assert_eq!(
            (r.computed_dim, r.expected_dim, r.defect, r.w_dim),
            (33, 34, 1, 1)
        );
        assert!(!r.certified_nondefective);

        let r = report(12, 3, 5);
        assert_eq!((r.computed_dim, r.expected_dim, r.defect), (139, 139, 0));
        assert!(r.certified_nondefective);

        let r = secant_report(
            12,
            4,
            4,
            &ReportOptions {
                method: Method::Terracini,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!((r.computed_dim, r.expected_dim, r.defect), (131, 131, 0));
    }

    #[test]
    fn report_invariants_hold() {
        for (ambient, k, s) in [(6, 2, 2), (7, 3, 2), (8, 4, 2), (9, 3, 3), (8, 3, 4)] {
            let r = report(ambient, k, s);
            assert_eq!(r.computed_dim, r.projective_dim - r.w_dim);
            assert!(r.computed_dim <= r.expected_dim && r.expected_dim <= r.projective_dim);
            assert_eq!(r.defect, r.expected_dim - r.computed_dim);
        }
    }

    #[test]
    fn typical_rank_examples() {
        let opts = ReportOptions {
            method: Method::Terracini,
            ..Default::default()
        };
        assert_eq!(typical_rank(6, 2, &opts).unwrap(), 3);
        assert_eq!(typical_rank(6, 3, &opts).unwrap(), 2);
        assert_eq!(typical_rank(8, 4, &opts).unwrap(), 5);
    }

    #[test]
    fn defect_measure_examples() {
        let r = report(8, 2, 2);
        assert_eq!(r.w_dim, 6);
        assert_eq!(defect_measures(&r), (4, 4));

        let r = report(6, 2, 2);
        assert_eq!(r.w_dim, 1);
        assert_eq!(r.computed_dim, 13);
        assert_eq!(defect_measures(&r), (1, 4));

        let r = report(9, 3, 2);
        assert_eq!(defect_measures(&r), (0, 0));
    }

    #[test]
    fn dualized_report_matches_direct() {
        let direct = secant_report(
            8,
            5,
            2,
            &ReportOptions {
                dualize: false,
                ..Default::default()
            },
        )
        .unwrap();
        let dual = report(8, 5, 2);
        assert_eq!(direct.computed_dim, dual.computed_dim);
        assert_eq!(dual.k, 5);
    }

    #[test]
    fn rational_field_reports() {
        let opts = ReportOptions {
            field: FieldChoice::Rational,
            ..Default::default()
        };
        let r = secant_report(7, 3, 3, &opts).unwrap();
        assert_eq!(r.computed_dim, 33);
        assert_eq!(r.field, "rational");
        assert_eq!(r.prime, None);
    }

    #[test]
    fn user_configuration_reports() {
        let file = ConfigFile {
            ambient: 6,
            k: 3,
            subspaces: vec![
                vec![
                    vec![1, 0, 0, 0, 0, 0],
                    vec![0, 1, 0, 0, 0, 0],
                    vec![0, 0, 1, 0, 0, 0],
                ],
                vec![
                    vec![0, 0, 0, 1, 0, 0],
                    vec![0, 0, 0, 0, 1, 0],
                    vec![0, 0, 0, 0, 0, 1],
                ],
            ],
        };
        let opts = ReportOptions {
            source: PointSource::User(file.clone()),
            ..Default::default()
        };
        assert_eq!(secant_report(6, 3, 2, &opts).unwrap().computed_dim, 19);
        assert!(secant_report(6, 3, 3, &opts).is_err());

        let mut bad = file;
        bad.subspaces[1][2] = vec![0, 0, 0, 1, 1, 0];
        bad.subspaces[1][1] = vec![0, 0, 0, 1, 1, 0];
        assert!(matches!(
            bad.to_configuration(&f()),
            Err(Error::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn bad_options_are_rejected() {
        let opts = ReportOptions {
            trials: 0,
            ..Default::default()
        };
        assert!(secant_report(6, 2, 2, &opts).is_err());
        let opts = ReportOptions {
            field: FieldChoice::Prime(97),
            ..Default::default()
        };
        assert!(matches!(
            secant_report(6, 2, 2, &opts),
            Err(Error::InvalidPrime(97, _))
        ));
    }

    #[test]
    fn monotone_in_s_on_nested_configurations() {
        let field = f();
        let mut r = rng(21);
        for _ in 0..5 {
            let ambient = r.gen_range(5..9);
            let k = r.gen_range(2..ambient - 1);
            let step = k * (ambient - k) + 1;
            let c = random_configuration(&field, ambient, k, 5, &mut r).unwrap();
            let mut prev = None;
            for s in 1..=5 {
                let d = terracini_dim(&c.prefix(s).unwrap());
                if let Some(p) = prev {
                    assert!(d >= p && d - p <= step);
                }
                prev = Some(d);
            }
        }
    }

    #[test]
    fn invariant_under_basis_recombination() {
        let field = f();
        let mut r = rng(33);
        let (ambient, k) = (7, 3);
        let c = random_configuration(&field, ambient, k, 3, &mut r).unwrap();
        let recombined: Vec<_> = c
            .subspaces()
            .iter()
            .map(|p| {
                let a_rows = (0..k)
                    .map(|_| (0..k).map(|_| field.random(&mut r)).collect())
                    .collect();
                let a = Matrix::from_rows(&field, k, a_rows).unwrap();
                VSubspace::from_matrix(&a.mul(p.basis()).unwrap()).unwrap()
            })
            .collect();
        let c2 = Configuration::new(recombined, Provenance::User).unwrap();
        assert_eq!(terracini_dim(&c), terracini_dim(&c2));
        assert_eq!(apolar_dim(&c).dim, apolar_dim(&c2).dim);
    }

    #[test]
    fn special_configuration_lower_bounds_generic() {
        // all three planes inside a common 5-space: far from generic
        let field = f();
        let c = Configuration::new(
            vec![
                VSubspace::coordinate(&field, 8, &[0, 1]).unwrap(),
                VSubspace::coordinate(&field, 8, &[2, 3]).unwrap(),
                VSubspace::coordinate(&field, 8, &[1, 4]).unwrap(),
            ],
            Provenance::User,
        )
        .unwrap();
        let generic = report(8, 2, 3).computed_dim as usize;
        assert!(terracini_dim(&c) <= generic);
        assert_eq!(terracini_dim(&c), apolar_dim(&c).dim);
    }

    #[test]
    fn report_json_is_stable() {
        let r = report(7, 3, 3);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            "{\"ambient\":7,\"k\":3,\"s\":3,\"N\":34,\"grass_dim\":12,\"expected_dim\":34,\
             \"computed_dim\":33,\"w_dim\":1,\"defect\":1,\"w_surplus\":5,\"method\":\"both\",\
             \"field\":\"prime\",\"prime\":\"2305843009213693951\",\"seed\":\"0\",\"trials\":3,\
             \"certified_nondefective\":false}"
        );
    }
}
