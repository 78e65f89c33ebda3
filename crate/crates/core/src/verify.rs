//! The regression suite of known secant dimensions, shared by the
//! `verify-paper` command.
//!
//! Each [`Check`] recomputes one published result from scratch and reports
//! whether it matched.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactlinalg::{Field, PrimeField, ALT_PRIME, MERSENNE_61};
use crate::exterior::{binomial, perp, to_matrix, ExtMonomial, ExtVector, GradedBasis};
use crate::grassmann::VSubspace;
use crate::monomial::{dim_w_bruteforce, dim_w_formula, MonomialCaseParams};
use crate::secant::{
    apolar_dim, normal_form_configuration, random_configuration, secant_report, terracini_dim,
    typical_rank, FieldChoice, Method, PointSource, ReportOptions,
};

/// One entry of the suite.
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    /// The published statement being reproduced.
    pub claim: &'static str,
    pub time_limit: Duration,
    run: fn() -> Result<(bool, String)>,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub claim: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub time_limit: Duration,
}

impl Check {
    pub fn run(&self) -> CheckOutcome {
        let start = Instant::now();
        let (passed, detail) = match (self.run)() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let elapsed = start.elapsed();
        CheckOutcome {
            id: self.id,
            name: self.name,
            claim: self.claim,
            passed,
            detail,
            elapsed,
            time_limit: self.time_limit,
        }
    }
}

impl CheckOutcome {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.time_limit
    }
}

fn opts(method: Method) -> ReportOptions {
    ReportOptions {
        method,
        ..Default::default()
    }
}

fn mono(ambient: usize, idx: &[usize]) -> ExtVector<PrimeField> {
    let f = PrimeField::default();
    ExtVector::from_monomial(&f, ExtMonomial::new(ambient, idx).expect("sorted"), 1)
}

/// `e_a∧e_b`, sorted with sign.
fn e2(a: usize, b: usize) -> ExtVector<PrimeField> {
    let f = PrimeField::default();
    let (x, y) = (
        ExtVector::basis_vector(&f, 8, a).expect("index < 8"),
        ExtVector::basis_vector(&f, 8, b).expect("index < 8"),
    );
    x.wedge(&y).expect("same ambient")
}

fn plus_minus(u: &ExtVector<PrimeField>, v: &ExtVector<PrimeField>) -> [ExtVector<PrimeField>; 2] {
    let f = PrimeField::default();
    [
        u.add(v).expect("same grade"),
        u.add(&v.scale(&f.neg(&1))).expect("same grade"),
    ]
}

/// The 20 quartic forms spanning `W` for three generic 4-planes in K^8, as
/// families of sign resolutions; a family is satisfied when any member is in
/// `W`.
pub fn g48_listed_forms() -> Vec<(String, Vec<ExtVector<PrimeField>>)> {
    let mut out = Vec::new();
    for idx in [
        [0, 1, 4, 5],
        [0, 2, 4, 6],
        [0, 3, 4, 7],
        [1, 2, 5, 6],
        [1, 3, 5, 7],
        [2, 3, 6, 7],
    ] {
        out.push((format!("e{:?}", idx), vec![mono(8, &idx)]));
    }
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&x| x != i).collect();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let (j, k) = (others[a], others[b]);
            let head = e2(i, i + 4);
            let [p, m] = plus_minus(&e2(j, k + 4), &e2(k, j + 4));
            let family = vec![
                head.wedge(&p).expect("ambient"),
                head.wedge(&m).expect("ambient"),
            ];
            out.push((
                format!("e{i}^e{}^(e{j}^e{} ± e{k}^e{})", i + 4, k + 4, j + 4),
                family,
            ));
        }
    }
    let products = [((0, 5, 1, 4), (2, 7, 3, 6)), ((0, 6, 2, 4), (1, 7, 3, 5))];
    for ((a, b, c, d), (p, q, r, t)) in products {
        let left = plus_minus(&e2(a, b), &e2(c, d));
        let right = plus_minus(&e2(p, q), &e2(r, t));
        let family = left
            .iter()
            .flat_map(|l| right.iter().map(move |r| l.wedge(r).expect("ambient")))
            .collect();
        out.push((
            format!("(e{a}^e{b} ± e{c}^e{d})^(e{p}^e{q} ± e{r}^e{t})"),
            family,
        ));
    }
    out
}

fn check_g37() -> Result<(bool, String)> {
    let r = secant_report(7, 3, 3, &opts(Method::Both))?;
    let ok = r.computed_dim == 33 && r.expected_dim == 34 && r.defect == 1 && r.w_dim == 1;
    Ok((
        ok,
        format!(
            "dim {} expected {} defect {} dim W {}",
            r.computed_dim, r.expected_dim, r.defect, r.w_dim
        ),
    ))
}

fn check_g48_three() -> Result<(bool, String)> {
    let f = PrimeField::default();
    let config = normal_form_configuration(&f, 8, 4, 3, &mut ChaCha8Rng::seed_from_u64(0))?;
    let ap = apolar_dim(&config);
    let terr = terracini_dim(&config);
    let basis = GradedBasis::new(8, 4)?;
    let w = to_matrix(&f, &basis, &ap.w_basis)?;
    let mut failed = Vec::new();
    for (label, family) in g48_listed_forms() {
        let mut any = false;
        for v in &family {
            any |= w.contains(&v.to_dense(&basis)?)?;
        }
        if !any {
            failed.push(label);
        }
    }
    let ok = ap.w_dim == 20 && ap.dim == 49 && terr == 49 && failed.is_empty();
    Ok((
        ok,
        format!(
            "dim W {} dim {} (terracini {terr}); forms outside W: {failed:?}",
            ap.w_dim, ap.dim
        ),
    ))
}

fn check_g39() -> Result<(bool, String)> {
    let r = secant_report(9, 3, 4, &opts(Method::Both))?;
    let ok = r.w_dim == 10 && r.computed_dim == 73 && r.expected_dim == 75;
    Ok((
        ok,
        format!(
            "dim W {} dim {} expected {}",
            r.w_dim, r.computed_dim, r.expected_dim
        ),
    ))
}

fn check_g48_five() -> Result<(bool, String)> {
    let r = secant_report(8, 4, 5, &opts(Method::Both))?;
    let e = typical_rank(8, 4, &opts(Method::Terracini))?;
    let ok = r.computed_dim == 69 && r.projective_dim == 69 && e == 5;
    Ok((
        ok,
        format!(
            "dim {} of {}; typical rank {e}",
            r.computed_dim, r.projective_dim
        ),
    ))
}

fn check_twelve() -> Result<(bool, String)> {
    let a = secant_report(12, 3, 5, &opts(Method::Both))?;
    let b = secant_report(12, 4, 4, &opts(Method::Both))?;
    let ok = (
        a.computed_dim,
        a.expected_dim,
        b.computed_dim,
        b.expected_dim,
    ) == (139, 139, 131, 131);
    Ok((
        ok,
        format!(
            "G(3,12)^5: {}/{}; G(4,12)^4: {}/{}",
            a.computed_dim, a.expected_dim, b.computed_dim, b.expected_dim
        ),
    ))
}

fn check_lines() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for ambient in 5..=12usize {
        let n = ambient - 1;
        for s in 1..ambient / 2 {
            let r = secant_report(ambient, 2, s, &opts(Method::Both))?;
            let w = binomial(n + 1 - 2 * s, 2);
            let surplus = 2 * (s as i64) * (s as i64 - 1);
            if r.w_dim != w || r.w_surplus != surplus {
                bad.push(format!(
                    "({ambient},{s}): W {} vs {w}, surplus {} vs {surplus}",
                    r.w_dim, r.w_surplus
                ));
            }
        }
        let e = typical_rank(ambient, 2, &opts(Method::Terracini))?;
        if e != ambient / 2 {
            bad.push(format!("E(2,{ambient}) = {e}"));
        }
    }
    Ok((
        bad.is_empty(),
        if bad.is_empty() {
            "all rows match".into()
        } else {
            bad.join("; ")
        },
    ))
}

fn check_monomial_case() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut rows = 0;
    for ambient in 6..=13usize {
        for k in 3..ambient {
            for s in 1..=ambient / k {
                let r = secant_report(ambient, k, s, &opts(Method::Terracini))?;
                rows += 1;
                if r.computed_dim != r.expected_dim {
                    bad.push(format!(
                        "G({k},{ambient})^{s}: {} vs {}",
                        r.computed_dim, r.expected_dim
                    ));
                }
            }
        }
    }
    let e36 = typical_rank(6, 3, &opts(Method::Both))?;
    let fill = secant_report(6, 3, 2, &opts(Method::Both))?;
    if e36 != 2 || fill.computed_dim != 19 {
        bad.push(format!("E(3,6) = {e36}, dim {}", fill.computed_dim));
    }
    Ok((bad.is_empty(), format!("{rows} triples; failures: {bad:?}")))
}

fn check_oracle() -> Result<(bool, String)> {
    let f = PrimeField::default();
    let mut bad = Vec::new();
    for ambient in 3..=13usize {
        for k in 2..ambient {
            for s in 1..=ambient / k {
                let p = MonomialCaseParams::new(ambient, k, s)?;
                let formula = dim_w_formula(&p);
                let brute = dim_w_bruteforce(&p)?;
                let config = normal_form_configuration(
                    &f,
                    ambient,
                    k,
                    s,
                    &mut ChaCha8Rng::seed_from_u64(0),
                )?;
                let engine = apolar_dim(&config).w_dim as u64;
                if formula != brute || brute != engine {
                    bad.push(format!("({ambient},{k},{s}): {formula}/{brute}/{engine}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("failures: {bad:?}")))
}

fn check_cross_methods() -> Result<(bool, String)> {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for i in 0..50 {
        let ambient = rng.gen_range(4..=10);
        let k = rng.gen_range(1..ambient);
        let s = rng.gen_range(1..=4);
        let config = random_configuration(&f, ambient, k, s, &mut rng)?;
        let (t, a) = (terracini_dim(&config), apolar_dim(&config).dim);
        if t != a {
            bad.push(format!("#{i} G({k},{ambient})^{s}: {t} vs {a}"));
        }
    }
    for i in 0..20 {
        let ambient = rng.gen_range(4..=10);
        let k = rng.gen_range(1..ambient);
        let s = rng.gen_range(1..=4);
        let o = ReportOptions {
            method: Method::Terracini,
            source: PointSource::Random,
            dualize: false,
            seed: i,
            ..Default::default()
        };
        let d1 = secant_report(ambient, k, s, &o)?.computed_dim;
        let d2 = secant_report(ambient, ambient - k, s, &o)?.computed_dim;
        if d1 != d2 {
            bad.push(format!("duality G({k},{ambient})^{s}: {d1} vs {d2}"));
        }
    }
    Ok((bad.is_empty(), format!("failures: {bad:?}")))
}

fn check_perp_laws() -> Result<(bool, String)> {
    let f = PrimeField::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut bad = Vec::new();
    for i in 0..50 {
        let ambient = rng.gen_range(3..=8);
        let k = rng.gen_range(1..ambient);
        let basis = GradedBasis::new(ambient, k)?;
        let count = rng.gen_range(0..=basis.len());
        let gens: Vec<ExtVector<PrimeField>> = (0..count)
            .map(|_| {
                let coords: Vec<u64> = (0..basis.len()).map(|_| f.random(&mut rng)).collect();
                ExtVector::from_dense(&f, &basis, &coords)
            })
            .collect::<Result<_>>()?;
        let y = to_matrix(&f, &basis, &gens)?;
        let yp = perp(&f, ambient, k, &gens)?;
        let ypp = to_matrix(&f, &basis, &perp(&f, ambient, ambient - k, &yp)?)?;
        if y.rank() + yp.len() != basis.len() || !ypp.same_row_space(&y) {
            bad.push(format!("Y#{i}"));
        }
    }
    for i in 0..20 {
        let ambient = rng.gen_range(4..=9);
        let k = rng.gen_range(2..=ambient / 2);
        let p = VSubspace::random(&f, ambient, k, &mut rng)?;
        let d = ambient - k;
        let dual = GradedBasis::new(ambient, d)?;
        let lhs = to_matrix(&f, &dual, &perp(&f, ambient, k, &p.tangent_cone_basis())?)?;
        let rhs = to_matrix(&f, &dual, &p.ideal_square_piece(d)?)?;
        if !lhs.same_row_space(&rhs) {
            bad.push(format!("point#{i} G({k},{ambient})"));
        }
    }
    Ok((bad.is_empty(), format!("failures: {bad:?}")))
}

fn check_g48_four() -> Result<(bool, String)> {
    let mut values = Vec::new();
    for prime in [MERSENNE_61, ALT_PRIME] {
        for seed in [0, 1, 2] {
            let o = ReportOptions {
                field: FieldChoice::Prime(prime),
                seed,
                ..Default::default()
            };
            values.push(secant_report(8, 4, 4, &o)?.computed_dim);
        }
    }
    let first = values[0];
    let expected = crate::secant::expected_dim(8, 4, 4)?;
    let ok = values.iter().all(|&v| v == first);
    Ok((
        ok,
        format!(
            "dim {first} vs expected {expected} (defect {}; 4 was anticipated); values {values:?}",
            expected - first
        ),
    ))
}

/// The whole suite in order.
pub fn checks() -> Vec<Check> {
    let secs = Duration::from_secs;
    vec![
        Check { id: 1, name: "G(3,7)^3", claim: "secant planes of G(3,7) have dimension 33, defect 1, dim W = 1", time_limit: secs(1), run: check_g37 },
        Check { id: 2, name: "G(4,8)^3", claim: "dim W = 20 and dimension 49 instead of 50; W contains the 20 listed forms", time_limit: secs(2), run: check_g48_three },
        Check { id: 3, name: "G(3,9)^4", claim: "dim W = 10, dimension 73 instead of 75", time_limit: secs(2), run: check_g39 },
        Check { id: 4, name: "G(4,8)^5", claim: "fills P^69; typical rank E(4,8) = 5", time_limit: secs(2), run: check_g48_five },
        Check { id: 5, name: "G(3,12)^5, G(4,12)^4", claim: "not defective (139 and 131)", time_limit: secs(10), run: check_twelve },
        Check { id: 6, name: "lines", claim: "k = 2: dim W = C(n-2s+1, 2), surplus 2s(s-1), E(2,n+1) = floor((n+1)/2)", time_limit: secs(5), run: check_lines },
        Check { id: 7, name: "monomial case", claim: "k >= 3, ks <= n+1: expected dimension; E(3,6) = 2 and the 2-secant fills the ambient", time_limit: secs(10), run: check_monomial_case },
        Check { id: 8, name: "oracle", claim: "closed form = enumeration = engine on coordinate blocks", time_limit: secs(10), run: check_oracle },
        Check { id: 9, name: "methods", claim: "Terracini = apolar on random configurations; k <-> n+1-k duality", time_limit: secs(15), run: check_cross_methods },
        Check { id: 10, name: "perp laws", claim: "dim Y + dim Y^perp = C(n+1,k), double perp, perp of tangent = squared ideal", time_limit: secs(5), run: check_perp_laws },
        Check { id: 11, name: "G(4,8)^4", claim: "exploratory: reproducible across seeds and primes", time_limit: secs(30), run: check_g48_four },
    ]
}

/// Runs every check.
pub fn run_all() -> Vec<CheckOutcome> {
    checks().iter().map(Check::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_listed_forms() {
        let forms = g48_listed_forms();
        assert_eq!(forms.len(), 20);
        assert_eq!(forms.iter().filter(|(_, f)| f.len() == 1).count(), 6);
        assert_eq!(forms.iter().filter(|(_, f)| f.len() == 2).count(), 12);
        assert_eq!(forms.iter().filter(|(_, f)| f.len() == 4).count(), 2);
    }

    #[test]
    fn small_checks_pass() {
        for check in checks().iter().filter(|c| [1, 3].contains(&c.id)) {
            let outcome = check.run();
            assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
        }
    }
}
