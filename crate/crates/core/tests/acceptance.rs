//! Acceptance suite: one pass/fail line per criterion, non-zero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hermrep::classifier::{classify, classify_domain, Bounded, Curvature, Family, GroupSpec, RepData};
use hermrep::fockspace::{ccr_check, vacuum_characterization, weyl_convergence, FockBasis};
use hermrep::jhtriple::{check_axioms, TripleKind, TripleSign, TripleSystem};
use hermrep::kernelver::{cross_validate_with, GramOptions};
use hermrep::liealg::{check_lie, theta_exp_residual};
use hermrep::rootdata::{compactness_sign, roots_of, Compactness, HermitianModel, RealForm, Sector};
use hermrep::sampling::{gaussian_vector, rng};
use hermrep::weights::{orbit_average, weight_set};
use hermrep::{IndexSet, Rational, Weight, WeylType, C64};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: summary }
    } else {
        Outcome { pass: false, detail: format!("{summary}; {}", failures.join("; ")) }
    }
}

/// `x <= tol`, false for NaN.
fn within(x: f64, tol: f64) -> bool {
    x <= tol
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn z(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn w(pairs: &[(u32, i64)]) -> Weight {
    Weight::from_ints(pairs).unwrap()
}

fn wq(pairs: &[(u32, Rational)]) -> Weight {
    Weight::new(pairs.iter().copied()).unwrap()
}

// ---------------------------------------------------------------- 1. classification table

struct Case {
    name: &'static str,
    spec: GroupSpec,
    rep: RepData,
    inducible: bool,
    bounded: Option<Bounded>,
}

fn case(name: &'static str, spec: GroupSpec, rep: RepData, inducible: bool) -> Case {
    Case { name, spec, rep, inducible, bounded: None }
}

fn i_inf(curv: Curvature) -> GroupSpec {
    GroupSpec::type_i(curv, IndexSet::Infinite, IndexSet::Infinite)
}

/// `J₊` infinite, `J₋ = {1..q}`.
fn i_fin(curv: Curvature, q: u32) -> GroupSpec {
    GroupSpec::type_i(curv, IndexSet::Infinite, IndexSet::finite(q).unwrap())
}

fn single(f: Family, curv: Curvature) -> GroupSpec {
    GroupSpec::single(f, curv)
}

fn flat(c: Rational) -> RepData {
    RepData::single(Weight::zero(), c)
}

/// Verdicts worked out by hand from the classification statements.
fn table() -> Vec<Case> {
    use Curvature::{Cdual, Domain};
    use Family::{II, III, IV};
    let pair = |p: Weight, m: Weight, c: Option<Rational>| RepData::pair(p, m, c);
    let one = |l: Weight, c: Rational| RepData::single(l, c);
    let mut t = vec![
        // flat: inducible iff c >= 0
        case("flat c=1", GroupSpec::flat(), flat(z(1)), true),
        case("flat c=0", GroupSpec::flat(), flat(z(0)), true),
        case("flat c=1/2", GroupSpec::flat(), flat(r(1, 2)), true),
        case("flat c=-1", GroupSpec::flat(), flat(z(-1)), false),
        // I_inf domain: c in |supp l+| + |supp l-| + N0 with l+ >= 0 >= l-
        case("I_inf l+=e1 l-=-e1 c=2", i_inf(Domain), pair(w(&[(1, 1)]), w(&[(1, -1)]), Some(z(2))), true),
        case("I_inf l+=e1 l-=-e1 c=1", i_inf(Domain), pair(w(&[(1, 1)]), w(&[(1, -1)]), Some(z(1))), false),
        case("I_inf l+=e1 l-=-e1 c=5", i_inf(Domain), pair(w(&[(1, 1)]), w(&[(1, -1)]), Some(z(5))), true),
        case("I_inf trivial c=0", i_inf(Domain), pair(Weight::zero(), Weight::zero(), Some(z(0))), true),
        case("I_inf l+=-e1 c=3", i_inf(Domain), pair(w(&[(1, -1)]), Weight::zero(), Some(z(3))), false),
        case("I_inf l+=2e1+e2 c=2", i_inf(Domain), pair(w(&[(1, 2), (2, 1)]), Weight::zero(), Some(z(2))), true),
        case("I_inf l+=2e1+e2 c=3/2", i_inf(Domain), pair(w(&[(1, 2), (2, 1)]), Weight::zero(), Some(r(3, 2))), false),
        // I_fin domain, J- = {1..q}: c = -max l-, a = |supp l+| + |supp(l- + c)|,
        // b = a - 1 + |J- \ supp(l- + c)|, inducible iff c in {a..b} or c > b.
        // Scalar type: a = 0, b = q - 1.
        case("I_fin q=2 scalar c=1/2", i_fin(Domain, 2), RepData::scalar_ifin(2, r(1, 2)).unwrap(), false),
        case("I_fin q=2 scalar c=3/2", i_fin(Domain, 2), RepData::scalar_ifin(2, r(3, 2)).unwrap(), true),
        case("I_fin q=2 scalar c=0", i_fin(Domain, 2), RepData::scalar_ifin(2, z(0)).unwrap(), true),
        case("I_fin q=3 scalar c=3/2", i_fin(Domain, 3), RepData::scalar_ifin(3, r(3, 2)).unwrap(), false),
        case("I_fin q=3 scalar c=5/2", i_fin(Domain, 3), RepData::scalar_ifin(3, r(5, 2)).unwrap(), true),
        case("I_fin q=3 scalar c=2", i_fin(Domain, 3), RepData::scalar_ifin(3, z(2)).unwrap(), true),
        // c = 2, l- + c = (0, -1): a = 1 + 1, b = 2 - 1 + 1
        case("I_fin q=2 l+=e1 l-=(-2,-3)", i_fin(Domain, 2), pair(w(&[(1, 1)]), w(&[(1, -2), (2, -3)]), None), true),
        // c = 1, a = b = 2
        case("I_fin q=2 l+=e1 l-=(-1,-2)", i_fin(Domain, 2), pair(w(&[(1, 1)]), w(&[(1, -1), (2, -2)]), None), false),
        case("I_fin q=2 l+=-e1", i_fin(Domain, 2), pair(w(&[(1, -1)]), Weight::zero(), None), false),
        // c = 3, a = 2, b = 3
        case("I_fin q=2 l+=e1+e2 l-=(-3,-3)", i_fin(Domain, 2), pair(w(&[(1, 1), (2, 1)]), w(&[(1, -3), (2, -3)]), None), true),
        // c = 5/2, a = 2, b = 3
        case(
            "I_fin q=2 l+=e1+e2 l-=(-5/2,-5/2)",
            i_fin(Domain, 2),
            pair(w(&[(1, 1), (2, 1)]), wq(&[(1, r(-5, 2)), (2, r(-5, 2))]), None),
            false,
        ),
        // II domain: l >= 0 and c in |supp l| + N0
        case("II trivial c=0", single(II, Domain), one(Weight::zero(), z(0)), true),
        case("II l=e1 c=1", single(II, Domain), one(w(&[(1, 1)]), z(1)), true),
        case("II l=2e1+e2 c=1", single(II, Domain), one(w(&[(1, 2), (2, 1)]), z(1)), false),
        case("II l=e1 c=-1", single(II, Domain), one(w(&[(1, 1)]), z(-1)), false),
        case("II l=-e1 c=3", single(II, Domain), one(w(&[(1, -1)]), z(3)), false),
        // III domain: l >= 0 and 2c in |supp l| + |{l_j > 1}| + N0
        case("III trivial c=1/2", single(III, Domain), one(Weight::zero(), r(1, 2)), true),
        case("III l=e1 c=1/2", single(III, Domain), one(w(&[(1, 1)]), r(1, 2)), true),
        case("III l=2e1 c=1/2", single(III, Domain), one(w(&[(1, 2)]), r(1, 2)), false),
        case("III l=2e1 c=1", single(III, Domain), one(w(&[(1, 2)]), z(1)), true),
        case("III l=3e1+e2 c=3/2", single(III, Domain), one(w(&[(1, 3), (2, 1)]), r(3, 2)), true),
        case("III l=-e1 c=2", single(III, Domain), one(w(&[(1, -1)]), z(2)), false),
        // IV domain: only the trivial representation
        case("IV mu=e1 c=1", single(IV, Domain), one(w(&[(1, 1)]), z(1)), false),
        case("IV mu=0 c=1", single(IV, Domain), one(Weight::zero(), z(1)), false),
        case("IV trivial", single(IV, Domain), one(Weight::zero(), z(0)), true),
        // I_inf c-dual: c + max l+ <= min l-
        case("I_inf* l+=l-=0 c=-1", i_inf(Cdual), pair(Weight::zero(), Weight::zero(), Some(z(-1))), true),
        case("I_inf* l+=-2e1 l-=e1 c=0", i_inf(Cdual), pair(w(&[(1, -2)]), w(&[(1, 1)]), Some(z(0))), true),
        case("I_inf* l+=l-=0 c=1", i_inf(Cdual), pair(Weight::zero(), Weight::zero(), Some(z(1))), false),
        case("I_inf* l+=e1 c=-1", i_inf(Cdual), pair(w(&[(1, 1)]), Weight::zero(), Some(z(-1))), true),
        case("I_inf* l-=-e1 c=0", i_inf(Cdual), pair(Weight::zero(), w(&[(1, -1)]), Some(z(0))), false),
        // I_fin c-dual: max l+ <= min l-
        case("I_fin* q=2 l+=-e1 l-=(2,1)", i_fin(Cdual, 2), pair(w(&[(1, -1)]), w(&[(1, 2), (2, 1)]), None), true),
        case("I_fin* q=2 l-=(2,-1)", i_fin(Cdual, 2), pair(Weight::zero(), w(&[(1, 2), (2, -1)]), None), false),
        // II c-dual: c + mu_j + mu_k <= 0 for j != k
        case("II* mu=e1 c=-1", single(II, Cdual), one(w(&[(1, 1)]), z(-1)), true),
        case("II* mu=e1+e2 c=-1", single(II, Cdual), one(w(&[(1, 1), (2, 1)]), z(-1)), false),
        case("II* mu=3e1 c=-3", single(II, Cdual), one(w(&[(1, 3)]), z(-3)), true),
        case("II* mu=0 c=1", single(II, Cdual), one(Weight::zero(), z(1)), false),
        // III c-dual: c + mu_j <= 0 for all j
        case("III* mu=e1 c=-1", single(III, Cdual), one(w(&[(1, 1)]), z(-1)), true),
        case("III* mu=e1 c=-1/2", single(III, Cdual), one(w(&[(1, 1)]), r(-1, 2)), false),
        case("III* mu=0 c=-1/2", single(III, Cdual), one(Weight::zero(), r(-1, 2)), true),
        case("III* mu=-2e1 c=0", single(III, Cdual), one(w(&[(1, -2)]), z(0)), true),
        // IV c-dual: c >= 0 and |mu_j| <= c
        case("IV* mu=e1 c=1", single(IV, Cdual), one(w(&[(1, 1)]), z(1)), true),
        case("IV* mu=2e1 c=1", single(IV, Cdual), one(w(&[(1, 2)]), z(1)), false),
        case("IV* mu=e2-e1 c=1", single(IV, Cdual), one(w(&[(1, -1), (2, 1)]), z(1)), true),
        case("IV* mu=0 c=-1", single(IV, Cdual), one(Weight::zero(), z(-1)), false),
    ];
    // c-dual highest weight representations of I_inf, II, III are bounded iff c = 0
    let growth = |c: i64| Some(Bounded::No { growth: z(c) });
    let expectations = [("I_inf* l+=l-=0 c=-1", growth(-1)), ("I_inf* l+=-2e1 l-=e1 c=0", Some(Bounded::Yes)), ("II* mu=3e1 c=-3", growth(-3)), ("III* mu=-2e1 c=0", Some(Bounded::Yes))];
    for (name, b) in expectations {
        t.iter_mut().find(|c| c.name == name).unwrap().bounded = b;
    }
    t
}

fn classification_fidelity() -> Outcome {
    let cases = table();
    let mut failures = Vec::new();
    for c in &cases {
        match classify(&c.spec, &c.rep) {
            Ok(v) => {
                if v.inducible != c.inducible {
                    failures.push(format!("{}: got inducible={} ({})", c.name, v.inducible, v.reason.message));
                }
                if let Some(b) = c.bounded {
                    if v.bounded != b {
                        failures.push(format!("{}: got bounded={:?}", c.name, v.bounded));
                    }
                }
            }
            Err(e) => failures.push(format!("{}: error {e}", c.name)),
        }
    }
    outcome(failures, format!("{} cases", cases.len()))
}

// ---------------------------------------------------------------- 2. kernel cross-validation

fn kernel_cross_validation() -> Outcome {
    let grid = [z(0), r(1, 2), z(1), r(3, 2), z(2), z(3)];
    let opts = GramOptions::new(40, 7, 1e-8);
    let mut failures = Vec::new();
    let mut gap = None;
    for (p, q) in [(1, 1), (2, 2)] {
        let spec = GroupSpec::type_i(Curvature::Domain, IndexSet::finite(p).unwrap(), IndexSet::finite(q).unwrap());
        let table = match cross_validate_with(&spec, &grid, &opts, &classify_domain) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("U({p},{q}): {e}"));
                continue;
            }
        };
        for row in table.rows.iter().filter(|row| !row.agree) {
            failures.push(format!("U({p},{q}) c={}: classifier {} vs gram {}", row.c, row.classifier, row.numeric));
        }
        if (p, q) == (2, 2) {
            gap = table.rows.iter().find(|row| row.c == r(1, 2)).and_then(|row| row.statistic);
        }
    }
    match gap {
        Some(x) if x < -1e-6 => {}
        other => failures.push(format!("U(2,2) c=1/2 min eigenvalue {other:?} is not < -1e-6")),
    }
    outcome(failures, format!("2 groups x {} charges, U(2,2) c=1/2 min eig {:.3e}", grid.len(), gap.unwrap_or(f64::NAN)))
}

// ---------------------------------------------------------------- 3. algebraic identities

fn algebraic_systems() -> Vec<TripleSystem> {
    let mut kinds = Vec::new();
    for p in 1..=4 {
        for q in p..=4 {
            kinds.push(TripleKind::I { p, q });
        }
    }
    for n in 1..=4 {
        // II(1) is the zero triple
        if n > 1 {
            kinds.push(TripleKind::II { n });
        }
        kinds.push(TripleKind::III { n });
        kinds.push(TripleKind::IV { n });
    }
    kinds
        .into_iter()
        .flat_map(|k| [TripleSign::Positive, TripleSign::Negative].map(|s| TripleSystem::new(k, s).unwrap()))
        .collect()
}

fn algebraic_identities() -> Outcome {
    const TOL: f64 = 1e-10;
    let systems = algebraic_systems();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for sys in &systems {
        let ax = check_axioms(sys, 100, TOL, 11).unwrap();
        let lie = check_lie::<C64>(sys, 100, TOL, 11).unwrap();
        let metrics = [
            ("jh1", ax.jh1),
            ("jh2", ax.jh2),
            ("jh3", ax.jh3),
            ("kkt_jacobi", lie.kkt_jacobi),
            ("hat_jacobi", lie.hat_jacobi),
            ("motion_jacobi", lie.motion_jacobi),
            ("cocycle", lie.cocycle),
        ];
        for (name, value) in metrics {
            worst = worst.max(value);
            if !within(value, TOL) {
                failures.push(format!("{sys} {name} = {value:.3e}"));
            }
        }
    }
    let theta = theta_exp_residual(&TripleSystem::positive(TripleKind::I { p: 2, q: 2 }).unwrap()).unwrap();
    if !within(theta, 1e-8) {
        failures.push(format!("theta = exp(pi ad d) residual {theta:.3e} on I(2,2)"));
    }
    outcome(failures, format!("{} systems, worst residual {worst:.2e}, theta residual {theta:.2e}", systems.len()))
}

// ---------------------------------------------------------------- 4. Fock suite

fn fock_suite() -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let mut g = rng(23);
    for m in 1..=3 {
        for n in 1..=6 {
            let basis = FockBasis::new(m, n).unwrap();
            for _ in 0..5 {
                let v = gaussian_vector(&mut g, m);
                let w = gaussian_vector(&mut g, m);
                let c = ccr_check(&basis, &v, &w).unwrap();
                let e = c.annihilators.max(c.creators).max(c.canonical);
                worst = worst.max(e);
                if !within(e, 1e-12) {
                    failures.push(format!("CCR m={m} N={n} residual {e:.3e}"));
                }
            }
        }
        if !vacuum_characterization(m, 6).unwrap() {
            failures.push(format!("vacuum not unique for m={m}"));
        }
    }
    let conv = weyl_convergence(1, &[C64::new(1.0, 0.0)], &[C64::new(0.0, 1.0)], 20, 40, 2).unwrap();
    if !within(conv.error_large, 1e-6) {
        failures.push(format!("Weyl error {:.3e} at N=40", conv.error_large));
    }
    if conv.ratio.is_nan() || conv.ratio < 4.0 {
        failures.push(format!("Weyl error shrinks only {:.2}x from N=20 to N=40", conv.ratio));
    }
    outcome(failures, format!("CCR worst {worst:.2e}, Weyl N=40 {:.2e}, shrink {:.1}x", conv.error_large, conv.ratio))
}

// ---------------------------------------------------------------- 5. weight combinatorics

/// Dominant conjugate under the Weyl group of type `t` on `n` coordinates.
fn dominant(x: &[i64], t: WeylType) -> Vec<i64> {
    let mut v: Vec<i64> = match t {
        WeylType::A => x.to_vec(),
        _ => x.iter().map(|a| a.abs()).collect(),
    };
    v.sort_unstable_by(|a, b| b.cmp(a));
    let odd_negatives = x.iter().filter(|a| **a < 0).count() % 2 == 1;
    if t == WeylType::D && odd_negatives && !x.contains(&0) {
        let last = v.len() - 1;
        v[last] = -v[last];
    }
    v
}

/// Whether `d` is a non-negative combination of simple roots (real coefficients).
fn in_positive_cone(d: &[i64], t: WeylType) -> bool {
    let n = d.len();
    let s: Vec<i64> = d.iter().scan(0, |acc, x| {
        *acc += x;
        Some(*acc)
    }).collect();
    match t {
        WeylType::A => s[..n - 1].iter().all(|x| *x >= 0) && s[n - 1] == 0,
        WeylType::C => s.iter().all(|x| *x >= 0),
        WeylType::D if n == 1 => d[0] == 0,
        // simple roots e_i - e_{i+1}, e_{n-1} + e_n
        WeylType::D => s[..n - 2].iter().all(|x| *x >= 0) && s[n - 1] >= 0 && 2 * s[n - 2] >= s[n - 1],
    }
}

fn in_root_lattice(d: &[i64], t: WeylType) -> bool {
    let sum: i64 = d.iter().sum();
    match t {
        WeylType::A => sum == 0,
        WeylType::C => sum % 2 == 0,
        WeylType::D if d.len() == 1 => d[0] == 0,
        WeylType::D => sum % 2 == 0,
    }
}

/// Weights of the representation with extremal weight `lambda`: lattice points `mu` in the box
/// whose dominant conjugate lies below the dominant conjugate of `lambda`.
fn brute_force(lambda: &[i64], t: WeylType) -> BTreeSet<Vec<i64>> {
    let n = lambda.len();
    let top = dominant(lambda, t);
    let bound = lambda.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    let side = (2 * bound + 1) as usize;
    for code in 0..side.pow(n as u32) {
        let mu: Vec<i64> = (0..n).map(|i| (code / side.pow(i as u32) % side) as i64 - bound).collect();
        let diff: Vec<i64> = mu.iter().zip(lambda).map(|(a, b)| a - b).collect();
        if !in_root_lattice(&diff, t) {
            continue;
        }
        let gap: Vec<i64> = top.iter().zip(dominant(&mu, t)).map(|(a, b)| a - b).collect();
        if in_positive_cone(&gap, t) {
            out.insert(mu);
        }
    }
    out
}

fn weight_combinatorics() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let values: Vec<i64> = (-3..=3).filter(|v| *v != 0).collect();
    for n in 1..=4u32 {
        let window: Vec<u32> = (1..=n).collect();
        let mut lambdas: Vec<Vec<(u32, i64)>> = vec![vec![]];
        for i in 1..=n {
            for &a in &values {
                lambdas.push(vec![(i, a)]);
                for j in i + 1..=n {
                    for &b in &values {
                        lambdas.push(vec![(i, a), (j, b)]);
                    }
                }
            }
        }
        for pairs in &lambdas {
            let lambda = w(pairs);
            let dense: Vec<i64> = window.iter().map(|&j| lambda.get(j).to_integer()).collect();
            for t in [WeylType::A, WeylType::C, WeylType::D] {
                let got: BTreeSet<Vec<i64>> = weight_set(&lambda, t, &window)
                    .unwrap()
                    .iter()
                    .map(|mu| mu.dense(&window).iter().map(|x| x.to_integer()).collect())
                    .collect();
                checked += 1;
                if got != brute_force(&dense, t) {
                    failures.push(format!("weight_set {t:?} of {dense:?}"));
                }
            }
        }
    }
    let mut g = rng(5);
    for n in 1..=5usize {
        for _ in 0..20 {
            let x: Vec<Rational> = (0..n).map(|_| r(g.random_range(-20..=20), g.random_range(1..=6))).collect();
            let mut sum = vec![z(0); n];
            let mut count = 0i64;
            permutations(n, &mut |perm| {
                for (i, &p) in perm.iter().enumerate() {
                    sum[i] += x[p];
                }
                count += 1;
            });
            let full: Vec<Rational> = sum.iter().map(|s| s / z(count)).collect();
            if orbit_average(&x).unwrap() != full {
                failures.push(format!("orbit_average of {x:?}"));
            }
        }
    }
    failures.truncate(5);
    outcome(failures, format!("{checked} weight sets, 100 averages"))
}

fn permutations(n: usize, f: &mut impl FnMut(&[usize])) {
    fn go(k: usize, perm: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, f);
            perm.swap(k, i);
        }
    }
    go(0, &mut (0..n).collect(), f);
}

// ---------------------------------------------------------------- 6. root-data tables

type Row = (BTreeMap<u32, i64>, Sector);

fn root(coeffs: &[(u32, i64)], sector: Sector) -> Row {
    (coeffs.iter().copied().collect(), sector)
}

/// Root tables on the window {1, 2, 3}, copied from the model descriptions.
fn expected_tables() -> Vec<(&'static str, HermitianModel, Vec<Row>)> {
    use Sector::{PMinus, PPlus, K};
    let win = [1u32, 2, 3];
    let pairs: Vec<(u32, u32)> = win.iter().flat_map(|&j| win.iter().filter(move |&&k| k != j).map(move |&k| (j, k))).collect();
    let unordered: Vec<(u32, u32)> = pairs.iter().copied().filter(|(j, k)| j < k).collect();

    // u(p,q): e_j - e_k, compact inside J+ or J-, p+ from J+ to J-, p- back
    let type_i = |plus: &[u32]| -> Vec<Row> {
        pairs
            .iter()
            .map(|&(j, k)| {
                let sector = match (plus.contains(&j), plus.contains(&k)) {
                    (true, false) => PPlus,
                    (false, true) => PMinus,
                    _ => K,
                };
                root(&[(j, 1), (k, -1)], sector)
            })
            .collect()
    };
    // compact e_j - e_k, p± = ±(e_j + e_k)
    let mut type_ii: Vec<Row> = pairs.iter().map(|&(j, k)| root(&[(j, 1), (k, -1)], K)).collect();
    for &(j, k) in &unordered {
        type_ii.push(root(&[(j, 1), (k, 1)], PPlus));
        type_ii.push(root(&[(j, -1), (k, -1)], PMinus));
    }
    // type II plus p± = ±2e_j
    let mut type_iii = type_ii.clone();
    for &j in &win {
        type_iii.push(root(&[(j, 2)], PPlus));
        type_iii.push(root(&[(j, -2)], PMinus));
    }
    // j0 = 1: compact ±e_j ± e_k off j0, p± = ±e1 ± e_j
    let mut type_iv = Vec::new();
    for (sj, sk) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
        type_iv.push(root(&[(2, sj), (3, sk)], K));
    }
    for j in [2, 3] {
        for s in [1, -1] {
            type_iv.push(root(&[(1, 1), (j, s)], PPlus));
            type_iv.push(root(&[(1, -1), (j, s)], PMinus));
        }
    }
    vec![
        ("I J+={1} J-={2,3}", HermitianModel::I { plus: vec![1], minus: vec![2, 3] }, type_i(&[1])),
        ("I J+={1,2} J-={3}", HermitianModel::I { plus: vec![1, 2], minus: vec![3] }, type_i(&[1, 2])),
        ("II", HermitianModel::II { window: win.to_vec() }, type_ii),
        ("III", HermitianModel::III { window: win.to_vec() }, type_iii),
        ("IV j0=1", HermitianModel::IV { window: win.to_vec(), j0: 1 }, type_iv),
    ]
}

fn root_tables() -> Outcome {
    let mut failures = Vec::new();
    let mut emitted = 0;
    for (name, model, expected) in expected_tables() {
        for real in [RealForm::Domain, RealForm::Cdual] {
            let roots = roots_of(&model, real).unwrap();
            let got: Vec<(Row, Compactness)> = roots
                .iter()
                .map(|c| (root(&c.root.form.coefficients(), c.sector), c.compactness))
                .collect();
            // the domain is noncompact exactly on p; the c-dual is a compact form
            let want: BTreeSet<(Row, Compactness)> = expected
                .iter()
                .map(|row| {
                    let compact = real == RealForm::Cdual || row.1 == Sector::K;
                    (row.clone(), if compact { Compactness::Compact } else { Compactness::Noncompact })
                })
                .collect();
            let got_set: BTreeSet<(Row, Compactness)> = got.iter().cloned().collect();
            if got_set.len() != got.len() || got_set != want {
                failures.push(format!("{name} {real:?}: table differs"));
            }
            for c in &roots {
                emitted += 1;
                let want = if c.compactness == Compactness::Compact { 1 } else { -1 };
                match compactness_sign(&c.root.form, &model, real) {
                    Ok(s) if s == want => {}
                    other => failures.push(format!("{name} {real:?} {}: sign {other:?}", c.root.form)),
                }
            }
        }
    }
    outcome(failures, format!("5 models x 2 real forms, {emitted} roots"))
}

// ----------------------------------------------------------------

/// Name, check and runtime budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("1 classification fidelity", classification_fidelity, Some(Duration::from_secs(1))),
        ("2 kernel cross-validation", kernel_cross_validation, Some(Duration::from_secs(60))),
        ("3 algebraic identity suites", algebraic_identities, Some(Duration::from_secs(30))),
        ("4 Fock suite", fock_suite, Some(Duration::from_secs(60))),
        ("5 weight combinatorics oracle", weight_combinatorics, Some(Duration::from_secs(10))),
        ("6 root-data tables", root_tables, None),
    ];
    let mut all = true;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let pass = out.pass && in_time;
        all &= pass;
        let timing = if in_time { String::new() } else { format!(" over budget {:?}", budget.unwrap_or_default()) };
        println!("{} {name} [{:.2}s{timing}] {}", if pass { "PASS" } else { "FAIL" }, elapsed.as_secs_f64(), out.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
