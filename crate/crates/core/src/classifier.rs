//! Exact inducibility and boundedness verdicts for bounded irreducible representations of
//! `K`, by family (types I-IV and the flat Heisenberg case) and curvature (symmetric Hilbert
//! domain or its compact dual).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, half, Rational};
use crate::weights::{canonical, ExtendedNat, IndexSet, Weight, WeightError, WeylType};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error("{field}: {value} must be {required}")]
    Integrality { field: &'static str, value: String, required: &'static str },
    #[error("charge {given} does not match the charge {derived} determined by the weights")]
    ChargeMismatch { given: String, derived: String },
    #[error("a central charge c is required for this family")]
    MissingCharge,
    #[error("weights are not of scalar type")]
    NotScalar,
    #[error("{field}: {source}")]
    Weight { field: &'static str, source: WeightError },
    #[error("weight mu must vanish at the distinguished index j0 = {0}")]
    TouchesJ0(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curvature {
    Domain,
    Cdual,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub family: Family,
    pub curvature: Curvature,
    #[serde(rename = "Jplus", default, skip_serializing_if = "Option::is_none")]
    pub j_plus: Option<IndexSet>,
    #[serde(rename = "Jminus", default, skip_serializing_if = "Option::is_none")]
    pub j_minus: Option<IndexSet>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0: Option<u32>,
}

/// The four type I shapes and the single-index families, after validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    IInf,
    IFin { plus: IndexSet, minus: IndexSet },
    Single(IndexSet),
    Flat,
}

impl GroupSpec {
    pub fn flat() -> Self {
        GroupSpec { family: Family::Flat, curvature: Curvature::Flat, j_plus: None, j_minus: None, j: None, j0: None }
    }

    pub fn type_i(curvature: Curvature, plus: IndexSet, minus: IndexSet) -> Self {
        GroupSpec { family: Family::I, curvature, j_plus: Some(plus), j_minus: Some(minus), j: None, j0: None }
    }

    pub fn single(family: Family, curvature: Curvature) -> Self {
        GroupSpec { family, curvature, j_plus: None, j_minus: None, j: Some(IndexSet::Infinite), j0: None }
    }

    pub fn shape(&self) -> Result<Shape, ClassifyError> {
        let spec_err = |s: &str| Err(ClassifyError::Spec(s.to_string()));
        if (self.family == Family::Flat) != (self.curvature == Curvature::Flat) {
            return spec_err("curvature \"flat\" goes with family \"Flat\" and only with it");
        }
        if self.j0.is_some() && self.family != Family::IV {
            return spec_err("j0 is only used by type IV");
        }
        for set in [self.j_plus, self.j_minus, self.j].into_iter().flatten() {
            set.validate().map_err(|e| ClassifyError::Spec(e.to_string()))?;
        }
        match self.family {
            Family::Flat => {
                if self.j_plus.is_some() || self.j_minus.is_some() || self.j.is_some() {
                    return spec_err("the flat case takes no index sets");
                }
                Ok(Shape::Flat)
            }
            Family::I => {
                let (Some(plus), Some(minus), None) = (self.j_plus, self.j_minus, self.j) else {
                    return spec_err("type I needs Jplus and Jminus and no J");
                };
                if plus.is_infinite() && minus.is_infinite() {
                    Ok(Shape::IInf)
                } else {
                    Ok(Shape::IFin { plus, minus })
                }
            }
            _ => {
                let (None, None, Some(j)) = (self.j_plus, self.j_minus, self.j) else {
                    return spec_err("types II, III and IV need J and no Jplus/Jminus");
                };
                if !j.is_infinite() {
                    return spec_err("types II, III and IV are classified for an infinite index set J");
                }
                if let Some(0) = self.j0 {
                    return spec_err("j0 must be a positive index");
                }
                Ok(Shape::Single(j))
            }
        }
    }
}

/// Highest-weight data: `λ₊, λ₋` for type I, `λ` (or `μ`) in `lambda_plus` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepData {
    #[serde(default, alias = "lambda", alias = "mu")]
    pub lambda_plus: Weight,
    #[serde(default)]
    pub lambda_minus: Weight,
    #[serde(default, with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    #[serde(default)]
    pub scalar_type: bool,
}

impl RepData {
    pub fn single(lambda: Weight, c: Rational) -> Self {
        RepData { lambda_plus: lambda, lambda_minus: Weight::zero(), c: Some(c), scalar_type: false }
    }

    pub fn pair(plus: Weight, minus: Weight, c: Option<Rational>) -> Self {
        RepData { lambda_plus: plus, lambda_minus: minus, c, scalar_type: false }
    }

    /// Scalar type-I datum on a finite `J₋ = {1..q}`: `λ₊ = 0`, `λ₋ ≡ -c`.
    pub fn scalar_ifin(q: u32, c: Rational) -> Result<Self, ClassifyError> {
        let minus = Weight::new((1..=q).map(|j| (j, -c))).map_err(|source| ClassifyError::Weight { field: "lambda_minus", source })?;
        Ok(RepData { lambda_plus: Weight::zero(), lambda_minus: minus, c: Some(c), scalar_type: true })
    }
}

/// Group spec and representation in one JSON object, as accepted by `classify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyInput {
    pub family: Family,
    pub curvature: Curvature,
    #[serde(rename = "Jplus", default, skip_serializing_if = "Option::is_none")]
    pub j_plus: Option<IndexSet>,
    #[serde(rename = "Jminus", default, skip_serializing_if = "Option::is_none")]
    pub j_minus: Option<IndexSet>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j0: Option<u32>,
    #[serde(default, alias = "lambda", alias = "mu")]
    pub lambda_plus: Weight,
    #[serde(default)]
    pub lambda_minus: Weight,
    #[serde(default, with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub c: Option<Rational>,
    #[serde(default)]
    pub scalar_type: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho1: Option<Rho1>,
    #[serde(default)]
    pub separable: bool,
}

impl ClassifyInput {
    pub fn split(&self) -> (GroupSpec, RepData) {
        (
            GroupSpec { family: self.family, curvature: self.curvature, j_plus: self.j_plus, j_minus: self.j_minus, j: self.j, j0: self.j0 },
            RepData { lambda_plus: self.lambda_plus.clone(), lambda_minus: self.lambda_minus.clone(), c: self.c, scalar_type: self.scalar_type },
        )
    }

    pub fn descriptor(&self) -> RhoDescriptor {
        let (spec, rep) = self.split();
        RhoDescriptor { spec, rep, rho1: self.rho1.unwrap_or(Rho1::Trivial), separable: self.separable }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rho1 {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bounded {
    Yes,
    /// Unbounded; the values of `-i d` on the weight set grow like `growth * |F|`.
    No { growth: Rational },
    NotApplicable,
}

impl Serialize for Bounded {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bounded::Yes => s.serialize_bool(true),
            Bounded::No { .. } => s.serialize_bool(false),
            Bounded::NotApplicable => s.serialize_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<ExtendedNat>,
    #[serde(with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub charge: Option<Rational>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub supports: BTreeMap<&'static str, u64>,
    #[serde(rename = "M", with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub big_m: Option<Rational>,
    #[serde(with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub m: Option<Rational>,
    #[serde(with = "crate::rational::opt_string", skip_serializing_if = "Option::is_none")]
    pub growth: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violated_condition: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub tag: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub inducible: bool,
    pub bounded: Bounded,
    pub parameters: Parameters,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(inducible: bool, parameters: Parameters, tag: &'static str, message: String) -> Self {
        Verdict { inducible, bounded: Bounded::NotApplicable, parameters, reason: Reason { tag, message }, notes: Vec::new() }
    }

    fn violated(mut parameters: Parameters, condition: &str, tag: &'static str, message: String) -> Self {
        parameters.violated_condition = Some(condition.to_string());
        Verdict::new(false, parameters, tag, message)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", if self.inducible { "inducible" } else { "not inducible" }, self.reason.message)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn show(r: Rational) -> String {
    format_rational(&r)
}

fn need_charge(rep: &RepData) -> Result<Rational, ClassifyError> {
    rep.c.ok_or(ClassifyError::MissingCharge)
}

fn require_integral(w: &Weight, field: &'static str) -> Result<(), ClassifyError> {
    if let Some((_, v)) = w.entries().iter().find(|(_, v)| !v.is_integer()) {
        return Err(ClassifyError::Integrality { field, value: show(*v), required: "an integer" });
    }
    Ok(())
}

fn require_integer_charge(c: Rational) -> Result<(), ClassifyError> {
    if !c.is_integer() {
        return Err(ClassifyError::Integrality { field: "c", value: show(c), required: "an integer" });
    }
    Ok(())
}

fn require_half_integer_charge(c: Rational) -> Result<(), ClassifyError> {
    if !(c * q(2)).is_integer() {
        return Err(ClassifyError::Integrality { field: "c", value: show(c), required: "a half-integer" });
    }
    Ok(())
}

fn check_in(w: &Weight, set: &IndexSet, field: &'static str) -> Result<(), ClassifyError> {
    w.check_in(set).map_err(|source| ClassifyError::Weight { field, source })
}

fn require_empty(w: &Weight, field: &'static str) -> Result<(), ClassifyError> {
    if !w.is_zero() {
        return Err(ClassifyError::Spec(format!("{field} is not used by this family")));
    }
    Ok(())
}

/// On a finite side the weight may be shifted by a common fraction (universal covering of
/// `U(H)`); on an infinite side it is integral.
fn require_side_integrality(w: &Weight, set: &IndexSet, field: &'static str) -> Result<(), ClassifyError> {
    match set {
        IndexSet::Infinite => require_integral(w, field),
        IndexSet::Finite { n } => {
            let frac = |v: Rational| v - v.floor();
            let mut values: Vec<Rational> = (1..=*n).map(|j| w.get(j)).collect();
            values.dedup();
            let f0 = frac(values[0]);
            match values.iter().find(|v| frac(**v) != f0) {
                Some(v) => Err(ClassifyError::Integrality {
                    field,
                    value: show(*v),
                    required: "congruent modulo 1 to the other entries on the finite index set",
                }),
                None => Ok(()),
            }
        }
    }
}

/// Number of indices in `set` where `w` differs from the constant `s` (co-support counts when
/// `s != 0`, which only happens on finite sets for valid inputs).
fn count_differing(w: &Weight, set: &IndexSet, s: Rational) -> ExtendedNat {
    match set {
        IndexSet::Finite { n } => ExtendedNat::Finite((1..=*n).filter(|&j| w.get(j) != s).count() as u64),
        IndexSet::Infinite if s == q(0) => ExtendedNat::Finite(w.support_len() as u64),
        IndexSet::Infinite => ExtendedNat::Infinite,
    }
}

fn is_scalar(shape: &Shape, rep: &RepData) -> bool {
    let constant = |w: &Weight, set: &IndexSet| match set {
        IndexSet::Finite { n } => (1..=*n).all(|j| w.get(j) == w.get(1)),
        IndexSet::Infinite => w.is_zero(),
    };
    match shape {
        Shape::IFin { plus, minus } => constant(&rep.lambda_plus, plus) && constant(&rep.lambda_minus, minus),
        _ => rep.lambda_plus.is_zero() && rep.lambda_minus.is_zero(),
    }
}

/// Whether `x` lies in `{a, a+1, ..., b} ∪ ]b, ∞[`.
fn in_gap_set(x: Rational, a: u64, b: ExtendedNat) -> bool {
    let a = q(a as i64);
    match b {
        ExtendedNat::Infinite => x >= a && (x - a).is_integer(),
        ExtendedNat::Finite(b) => x > q(b as i64) || (x >= a && (x - a).is_integer()),
    }
}

fn describe_gap(a: u64, b: ExtendedNat) -> String {
    match b {
        ExtendedNat::Infinite => format!("{a} + N0"),
        ExtendedNat::Finite(b) if b >= a => format!("{{{a},...,{b}}} U ]{b},inf["),
        ExtendedNat::Finite(b) => format!("]{b},inf["),
    }
}

pub fn classify_flat(rep: &RepData) -> Result<Verdict, ClassifyError> {
    let c = need_charge(rep)?;
    let params = Parameters { charge: Some(c), ..Default::default() };
    let mut v = if c >= q(0) {
        Verdict::new(true, params, "flat_charge_nonnegative", format!("c = {} >= 0", show(c)))
    } else {
        Verdict::violated(params, "c >= 0", "flat_charge_negative", format!("c = {} < 0", show(c)))
    };
    if c == q(0) {
        v.notes.push("factors through K".to_string());
    }
    Ok(v)
}

fn validate(spec: &GroupSpec, rep: &RepData) -> Result<Shape, ClassifyError> {
    let shape = spec.shape()?;
    match shape {
        Shape::Flat => {}
        Shape::IInf | Shape::IFin { .. } => {
            let (plus, minus) = (spec.j_plus.unwrap(), spec.j_minus.unwrap());
            check_in(&rep.lambda_plus, &plus, "lambda_plus")?;
            check_in(&rep.lambda_minus, &minus, "lambda_minus")?;
        }
        Shape::Single(_) => require_empty(&rep.lambda_minus, "lambda_minus")?,
    }
    if rep.scalar_type && !is_scalar(&shape, rep) {
        return Err(ClassifyError::NotScalar);
    }
    Ok(shape)
}

pub fn classify_domain(spec: &GroupSpec, rep: &RepData) -> Result<Verdict, ClassifyError> {
    let shape = validate(spec, rep)?;
    if spec.curvature != Curvature::Domain {
        return Err(ClassifyError::Spec("classify_domain needs curvature \"domain\"".into()));
    }
    let lp = &rep.lambda_plus;
    let lm = &rep.lambda_minus;
    match (shape, spec.family) {
        (Shape::IInf, _) => {
            require_integral(lp, "lambda_plus")?;
            require_integral(lm, "lambda_minus")?;
            let c = need_charge(rep)?;
            let a = (lp.support_len() + lm.support_len()) as u64;
            let mut params = Parameters {
                a: Some(a),
                b: Some(ExtendedNat::Infinite),
                charge: Some(c),
                supports: [("lambda_plus", lp.support_len() as u64), ("lambda_minus", lm.support_len() as u64)].into(),
                ..Default::default()
            };
            if lp.min_over(&IndexSet::Infinite) < q(0) || lm.max_over(&IndexSet::Infinite) > q(0) {
                params.a = None;
                params.b = None;
                return Ok(Verdict::violated(params, "lambda_plus >= 0 >= lambda_minus", "sign_condition", "weights violate lambda_plus >= 0 >= lambda_minus".into()));
            }
            Ok(gap_verdict(params, c, a, ExtendedNat::Infinite))
        }
        (Shape::IFin { plus, minus }, _) => classify_ifin_domain(rep, plus, minus),
        (Shape::Single(_), Family::II) => {
            require_integral(lp, "lambda")?;
            let c = need_charge(rep)?;
            let a = lp.support_len() as u64;
            let params = Parameters { a: Some(a), charge: Some(c), supports: [("lambda", a)].into(), ..Default::default() };
            if lp.min_over(&IndexSet::Infinite) < q(0) {
                return Ok(Verdict::violated(params, "lambda >= 0", "sign_condition", "weight violates lambda >= 0".into()));
            }
            Ok(gap_verdict(params, c, a, ExtendedNat::Infinite))
        }
        (Shape::Single(_), Family::III) => {
            require_integral(lp, "lambda")?;
            let c = need_charge(rep)?;
            require_half_integer_charge(c)?;
            let big = lp.entries().values().filter(|v| **v > q(1)).count() as u64;
            let a = lp.support_len() as u64 + big;
            let params = Parameters {
                a: Some(a),
                charge: Some(c),
                supports: [("lambda", lp.support_len() as u64), ("lambda_gt_1", big)].into(),
                ..Default::default()
            };
            if lp.min_over(&IndexSet::Infinite) < q(0) {
                return Ok(Verdict::violated(params, "lambda >= 0", "sign_condition", "weight violates lambda >= 0".into()));
            }
            let two_c = c * q(2);
            if two_c >= q(a as i64) && two_c.is_integer() {
                Ok(Verdict::new(true, params, "charge_in_range", format!("2c = {} lies in {a} + N0", show(two_c))))
            } else {
                Ok(Verdict::violated(params, &format!("2c in {a} + N0"), "charge_out_of_range", format!("2c = {} is not in {a} + N0", show(two_c))))
            }
        }
        (Shape::Single(_), Family::IV) => {
            require_integral(lp, "mu")?;
            let c = need_charge(rep)?;
            let params = Parameters { charge: Some(c), supports: [("mu", lp.support_len() as u64)].into(), ..Default::default() };
            if lp.is_zero() && c == q(0) {
                Ok(Verdict::new(true, params, "trivial", "the trivial representation".into()))
            } else {
                Ok(Verdict::violated(params, "trivial representation", "type_iv_no_go", "type IV domains admit only the trivial representation".into()))
            }
        }
        _ => Err(ClassifyError::Spec("the flat case has no domain curvature".into())),
    }
}

fn gap_verdict(params: Parameters, c: Rational, a: u64, b: ExtendedNat) -> Verdict {
    let set = describe_gap(a, b);
    if in_gap_set(c, a, b) {
        Verdict::new(true, params, "charge_in_range", format!("c = {} lies in {set}", show(c)))
    } else {
        Verdict::violated(params, &format!("c in {set}"), "charge_out_of_range", format!("c = {} is not in {set}", show(c)))
    }
}

/// Type I with at least one finite side. The classification is invariant under shifting both
/// weights by the same constant, so it is stated with `M = min λ₊`, `m = max λ₋`:
/// `a = |supp(λ₊ - M)| + |supp(λ₋ - m)|`, `b = a - 1 + min(|J₊ \ supp(λ₊ - M)|, |J₋ \ supp(λ₋ - m)|)`
/// and inducibility iff `M - m ∈ {a, ..., b} ∪ ]b, ∞[`. An infinite side pins `M = 0` or `m = 0`.
fn classify_ifin_domain(rep: &RepData, plus: IndexSet, minus: IndexSet) -> Result<Verdict, ClassifyError> {
    let lp = &rep.lambda_plus;
    let lm = &rep.lambda_minus;
    require_side_integrality(lp, &plus, "lambda_plus")?;
    require_side_integrality(lm, &minus, "lambda_minus")?;
    let big_m = lp.min_over(&plus);
    let m = lm.max_over(&minus);
    let charge = big_m - m;
    if let Some(c) = rep.c {
        if c != charge {
            return Err(ClassifyError::ChargeMismatch { given: show(c), derived: show(charge) });
        }
    }
    let mut params = Parameters {
        charge: Some(charge),
        big_m: Some(big_m),
        m: Some(m),
        supports: [("lambda_plus", lp.support_len() as u64), ("lambda_minus", lm.support_len() as u64)].into(),
        ..Default::default()
    };
    if big_m < m {
        return Ok(Verdict::violated(params, "min(lambda_plus) >= max(lambda_minus)", "sign_condition", "min(lambda_plus) < max(lambda_minus)".into()));
    }
    let qpp = count_differing(lp, &plus, big_m);
    let ppp = count_differing(lm, &minus, m);
    let (ExtendedNat::Finite(qpp), ExtendedNat::Finite(ppp)) = (qpp, ppp) else {
        return Ok(Verdict::violated(params, "lambda_plus >= 0 >= lambda_minus", "sign_condition", "the weights are not constant off a finite set".into()));
    };
    let a = qpp + ppp;
    let rest_plus = plus.cardinality().minus(qpp);
    let rest_minus = minus.cardinality().minus(ppp);
    let min_rest = match (rest_plus, rest_minus) {
        (ExtendedNat::Finite(x), ExtendedNat::Finite(y)) => x.min(y),
        (ExtendedNat::Finite(x), ExtendedNat::Infinite) | (ExtendedNat::Infinite, ExtendedNat::Finite(x)) => x,
        _ => unreachable!("at least one side is finite"),
    };
    // a side never lies entirely inside supp(λ - extremum), so min_rest >= 1
    let b = ExtendedNat::Finite(a + min_rest - 1);
    params.a = Some(a);
    params.b = Some(b);
    Ok(gap_verdict(params, charge, a, b))
}

pub fn classify_cdual(spec: &GroupSpec, rep: &RepData) -> Result<Verdict, ClassifyError> {
    let shape = validate(spec, rep)?;
    if spec.curvature != Curvature::Cdual {
        return Err(ClassifyError::Spec("classify_cdual needs curvature \"cdual\"".into()));
    }
    let lp = &rep.lambda_plus;
    let lm = &rep.lambda_minus;
    let inf = IndexSet::Infinite;
    let mut v = match (shape, spec.family) {
        (Shape::IInf, _) => {
            require_integral(lp, "lambda_plus")?;
            require_integral(lm, "lambda_minus")?;
            let c = need_charge(rep)?;
            require_integer_charge(c)?;
            let (mx, mn) = (lp.max_over(&inf), lm.min_over(&inf));
            let params = Parameters { charge: Some(c), big_m: Some(mx), m: Some(mn), ..Default::default() };
            anti_dominance(params, c + mx <= mn, "c + max(lambda_plus) <= min(lambda_minus)")
        }
        (Shape::IFin { plus, minus }, _) => {
            require_side_integrality(lp, &plus, "lambda_plus")?;
            require_side_integrality(lm, &minus, "lambda_minus")?;
            let (mx, mn) = (lp.max_over(&plus), lm.min_over(&minus));
            let params = Parameters { big_m: Some(mx), m: Some(mn), ..Default::default() };
            let mut v = anti_dominance(params, mx <= mn, "max(lambda_plus) <= min(lambda_minus)");
            if rep.c.is_some() {
                v.notes.push("c is not used for type I with a finite side".into());
            }
            v
        }
        (Shape::Single(_), Family::II) => {
            require_integral(lp, "mu")?;
            let c = need_charge(rep)?;
            require_integer_charge(c)?;
            let top = top_two_sum(lp);
            let params = Parameters { charge: Some(c), big_m: Some(top), ..Default::default() };
            anti_dominance(params, c + top <= q(0), "c + mu_j + mu_k <= 0 for j != k")
        }
        (Shape::Single(_), Family::III) => {
            let c = need_charge(rep)?;
            require_half_integer_charge(c)?;
            let mx = lp.max_over(&inf);
            let params = Parameters { charge: Some(c), big_m: Some(mx), ..Default::default() };
            anti_dominance(params, c + mx <= q(0), "c + mu_j <= 0 for all j")
        }
        (Shape::Single(_), Family::IV) => {
            require_integral(lp, "mu")?;
            let c = need_charge(rep)?;
            require_integer_charge(c)?;
            if let Some(j0) = spec.j0 {
                if lp.get(j0) != q(0) {
                    return Err(ClassifyError::TouchesJ0(j0));
                }
            }
            let mx = lp.entries().values().map(|v| v.abs()).max().unwrap_or_else(|| q(0));
            let params = Parameters { charge: Some(c), big_m: Some(mx), ..Default::default() };
            anti_dominance(params, c >= mx && c >= q(0), "c +- mu_j >= 0 for j != j0")
        }
        _ => return Err(ClassifyError::Spec("the flat case has no c-dual curvature".into())),
    };
    v.bounded = is_bounded_hw(spec, rep)?;
    if let Bounded::No { growth } = v.bounded {
        v.parameters.growth = Some(growth);
    }
    Ok(v)
}

fn anti_dominance(params: Parameters, holds: bool, condition: &str) -> Verdict {
    if holds {
        Verdict::new(true, params, "anti_dominant", format!("{condition} holds"))
    } else {
        Verdict::violated(params, condition, "not_anti_dominant", format!("{condition} fails"))
    }
}

/// Largest value of `μ_j + μ_k` over distinct indices of an infinite set.
fn top_two_sum(mu: &Weight) -> Rational {
    let mut values: Vec<Rational> = mu.entries().values().copied().chain([q(0), q(0)]).collect();
    values.sort_by(|a, b| b.cmp(a));
    values[0] + values[1]
}

/// Boundedness of the highest weight representation behind a c-dual verdict: bounded iff
/// `c = 0`, otherwise the weight differences on `-i d` grow like `c |F|`.
pub fn is_bounded_hw(spec: &GroupSpec, rep: &RepData) -> Result<Bounded, ClassifyError> {
    let shape = spec.shape()?;
    let applies = spec.curvature == Curvature::Cdual
        && (shape == Shape::IInf || matches!((shape, spec.family), (Shape::Single(_), Family::II | Family::III)));
    if !applies {
        return Ok(Bounded::NotApplicable);
    }
    let c = need_charge(rep)?;
    Ok(if c == q(0) { Bounded::Yes } else { Bounded::No { growth: c } })
}

pub fn classify(spec: &GroupSpec, rep: &RepData) -> Result<Verdict, ClassifyError> {
    match spec.curvature {
        Curvature::Flat => {
            validate(spec, rep)?;
            classify_flat(rep)
        }
        Curvature::Domain => classify_domain(spec, rep),
        Curvature::Cdual => classify_cdual(spec, rep),
    }
}

/// The dissipativity inequality on the weights: `sup μ₊ <= inf μ₋` on the c-dual side and
/// `inf μ₊ >= sup μ₋` on the domain side, extrema taken over `J₊`, `J₋`.
pub fn necessary_condition(spec: &GroupSpec, mu_plus: &Weight, mu_minus: &Weight) -> Result<bool, ClassifyError> {
    necessary_condition_shifted(spec, mu_plus, mu_minus, q(0))
}

/// [`necessary_condition`] for `μ₊ + s` (a constant shift of the `J₊` part).
pub fn necessary_condition_shifted(spec: &GroupSpec, mu_plus: &Weight, mu_minus: &Weight, s: Rational) -> Result<bool, ClassifyError> {
    let (Some(plus), Some(minus)) = (spec.j_plus, spec.j_minus) else {
        return Err(ClassifyError::Spec("the weight inequality needs Jplus and Jminus".into()));
    };
    Ok(match spec.curvature {
        Curvature::Cdual => mu_plus.max_over(&plus) + s <= mu_minus.min_over(&minus),
        Curvature::Domain => mu_plus.min_over(&plus) + s >= mu_minus.max_over(&minus),
        Curvature::Flat => return Err(ClassifyError::Spec("the flat case has no weight inequality".into())),
    })
}

/// Descending integer weights supported on `1..=k` (k up to `max_support`) with entries in
/// `[-max_entry, max_entry] \ {0}`; nonnegative only when `nonneg`.
fn canonical_weights(max_support: u32, max_entry: i64, nonneg: bool) -> Vec<Weight> {
    let values: Vec<i64> = (-max_entry..=max_entry).rev().filter(|&v| v != 0 && (!nonneg || v > 0)).collect();
    let mut out = vec![Weight::zero()];
    let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..max_support {
        let mut next = Vec::new();
        for seq in &layer {
            for &v in &values {
                if seq.last().is_none_or(|&last| v <= last) {
                    let mut s = seq.clone();
                    s.push(v);
                    next.push(s);
                }
            }
        }
        out.extend(next.iter().map(|s| Weight::new((1u32..).zip(s.iter().map(|&v| q(v)))).unwrap()));
        layer = next;
    }
    out
}

/// Canonical weight list for a side: on a finite set of size `n` supports stop at `n`.
fn side_weights(set: &IndexSet, max_support: u32, max_entry: i64) -> Vec<Weight> {
    let k = match set {
        IndexSet::Finite { n } => max_support.min(*n),
        IndexSet::Infinite => max_support,
    };
    canonical_weights(k, max_entry, false)
}

fn charge_grid(max_charge: Rational, step: Rational) -> Vec<Rational> {
    let mut grid = Vec::new();
    let mut c = -(max_charge / step).floor() * step;
    while c <= max_charge {
        grid.push(c);
        c += step;
    }
    grid
}

/// Every inducible representation with canonical-form weights inside the bounds, in
/// deterministic order (weights in generation order, then increasing charge).
pub fn enumerate_inducible(spec: &GroupSpec, max_charge: Rational, max_support: u32, max_entry: i64) -> Result<Vec<(RepData, Verdict)>, ClassifyError> {
    let shape = spec.shape()?;
    let step = if spec.family == Family::III { half() } else { q(1) };
    let grid = charge_grid(max_charge, step);
    let mut candidates: Vec<RepData> = Vec::new();
    match shape {
        Shape::IInf | Shape::IFin { .. } => {
            let (plus, minus) = (spec.j_plus.unwrap(), spec.j_minus.unwrap());
            let lps = side_weights(&plus, max_support, max_entry);
            let lms = side_weights(&minus, max_support, max_entry);
            for lp in &lps {
                for lm in &lms {
                    if shape == Shape::IInf {
                        candidates.extend(grid.iter().map(|&c| RepData::pair(lp.clone(), lm.clone(), Some(c))));
                    } else {
                        let charge = lp.min_over(&plus) - lm.max_over(&minus);
                        if spec.curvature == Curvature::Cdual || charge.abs() <= max_charge {
                            candidates.push(RepData::pair(lp.clone(), lm.clone(), None));
                        }
                    }
                }
            }
        }
        Shape::Single(_) if spec.family == Family::IV && spec.curvature == Curvature::Domain => {
            candidates.push(RepData::single(Weight::zero(), q(0)));
        }
        Shape::Single(_) | Shape::Flat => {
            let nonneg = spec.family == Family::IV;
            for lambda in canonical_weights(max_support, max_entry, nonneg) {
                let lambda = match spec.j0 {
                    Some(j0) if spec.family == Family::IV => shift_off(&lambda, j0),
                    _ => lambda,
                };
                candidates.extend(grid.iter().map(|&c| RepData::single(lambda.clone(), c)));
            }
        }
    }
    let verdicts: Vec<Result<Verdict, ClassifyError>> = candidates.par_iter().map(|rep| classify(spec, rep)).collect();
    let mut out = Vec::new();
    for (rep, v) in candidates.into_iter().zip(verdicts) {
        let v = v?;
        if v.inducible {
            out.push((rep, v));
        }
    }
    Ok(out)
}

/// Relabels a weight supported on `1..k` so that it avoids the index `j0`.
fn shift_off(w: &Weight, j0: u32) -> Weight {
    Weight::new(w.entries().iter().map(|(&j, &v)| (if j >= j0 { j + 1 } else { j }, v))).unwrap()
}

/// A representation `ρ = ρ₀ ⊗ ρ₁` with `ρ₀` of highest weight and `ρ₁` a representation of
/// `K / K_∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoDescriptor {
    pub spec: GroupSpec,
    pub rep: RepData,
    pub rho1: Rho1,
    pub separable: bool,
}

/// Inducibility of `ρ₀ ⊗ ρ₁` is decided by `ρ₀`; returns that verdict and the `ρ₁` factor
/// (trivial whenever the representation space is separable).
pub fn reduction_split(rho: &RhoDescriptor) -> Result<(Verdict, Rho1), ClassifyError> {
    let mut v = classify(&rho.spec, &rho.rep)?;
    let rho1 = if rho.separable { Rho1::Trivial } else { rho.rho1 };
    if rho.separable && rho.rho1 == Rho1::Nontrivial {
        v.notes.push("separable representation space: rho1 is trivial".into());
    }
    if rho1 == Rho1::Nontrivial {
        v.notes.push("rho1 tensor factor pass-through".into());
    }
    Ok((v, rho1))
}

/// Weyl type used for weight equivalence in each family.
pub fn weyl_type(family: Family) -> WeylType {
    match family {
        Family::IV => WeylType::D,
        _ => WeylType::A,
    }
}

/// Equivalent representative: canonical weights, same charge.
pub fn canonical_rep(spec: &GroupSpec, rep: &RepData) -> RepData {
    let t = weyl_type(spec.family);
    let mut out = rep.clone();
    match spec.shape() {
        Ok(Shape::IInf) | Ok(Shape::Single(_)) | Ok(Shape::Flat) => {
            out.lambda_plus = canonical(&rep.lambda_plus, t);
            out.lambda_minus = canonical(&rep.lambda_minus, t);
        }
        _ => {}
    }
    out
}
