//! Finitely supported weights, signed-permutation Weyl groups of types A, C, D, orbits and
//! weight sets `conv(W lambda) ∩ (lambda + Q)`.
//!
//! Infinite index sets stay symbolic. Anything that needs concrete coordinates takes an
//! explicit finite window of indices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::lp::in_convex_hull;
use crate::rational::{ceil_int, den_bound, floor_int, format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("entry {value} at index {index} is not in (1/2)Z")]
    NotHalfIntegral { index: u32, value: String },
    #[error("entry {value} at index {index} does not fit denominator bound {den}")]
    DenominatorBound { index: u32, value: String, den: u8 },
    #[error("denominator bound must be 1 or 2, got {0}")]
    BadDenominatorBound(u8),
    #[error("index 0 is not allowed; indices start at 1")]
    ZeroIndex,
    #[error("bad index key {0:?}")]
    BadIndexKey(String),
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("sign changes are not part of the Weyl group of type A")]
    InvalidAction,
    #[error("type D admits only an even number of sign changes, got {0}")]
    OddSignChanges(usize),
    #[error("window does not contain support index {0}")]
    WindowTooSmall(u32),
    #[error("window lists index {0} twice")]
    DuplicateWindowIndex(u32),
    #[error("index {index} lies outside the finite index set of size {n}")]
    OutOfRange { index: u32, n: u32 },
    #[error("a finite index set needs n >= 1")]
    EmptyIndexSet,
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("cannot average over an empty index set")]
    EmptyAverage,
}

/// A cardinality: a natural number or countably infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Infinite,
}

impl ExtendedNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedNat::Finite(n) => Some(n),
            ExtendedNat::Infinite => None,
        }
    }

    /// Saturating difference, `inf - n = inf`.
    pub fn minus(self, k: u64) -> ExtendedNat {
        match self {
            ExtendedNat::Finite(n) => ExtendedNat::Finite(n.saturating_sub(k)),
            ExtendedNat::Infinite => ExtendedNat::Infinite,
        }
    }
}

impl Add for ExtendedNat {
    type Output = ExtendedNat;
    fn add(self, rhs: ExtendedNat) -> ExtendedNat {
        match (self, rhs) {
            (ExtendedNat::Finite(a), ExtendedNat::Finite(b)) => ExtendedNat::Finite(a + b),
            _ => ExtendedNat::Infinite,
        }
    }
}

impl From<u64> for ExtendedNat {
    fn from(n: u64) -> Self {
        ExtendedNat::Finite(n)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(n) => s.serialize_u64(*n),
            ExtendedNat::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(ExtendedNat::Finite(n)),
            Raw::S(s) if s == "inf" => Ok(ExtendedNat::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {s:?}"))),
        }
    }
}

/// An index set `{1..=n}` or a countably infinite one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum IndexSet {
    #[serde(rename = "finite")]
    Finite { n: u32 },
    #[serde(rename = "inf")]
    Infinite,
}

impl IndexSet {
    pub fn finite(n: u32) -> Result<Self, WeightError> {
        let s = IndexSet::Finite { n };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        match self {
            IndexSet::Finite { n: 0 } => Err(WeightError::EmptyIndexSet),
            _ => Ok(()),
        }
    }

    pub fn cardinality(&self) -> ExtendedNat {
        match self {
            IndexSet::Finite { n } => ExtendedNat::Finite(*n as u64),
            IndexSet::Infinite => ExtendedNat::Infinite,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, IndexSet::Infinite)
    }

    pub fn contains(&self, index: u32) -> bool {
        match self {
            IndexSet::Finite { n } => (1..=*n).contains(&index),
            IndexSet::Infinite => index >= 1,
        }
    }

    /// Whether some index outside a support of size `support` remains.
    pub fn has_cosupport(&self, support: usize) -> bool {
        match self {
            IndexSet::Finite { n } => (*n as usize) > support,
            IndexSet::Infinite => true,
        }
    }
}

/// A finitely supported function `J -> (1/2)Z`. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    entries: BTreeMap<u32, Rational>,
}

impl Weight {
    pub fn zero() -> Self {
        Weight::default()
    }

    pub fn new<I: IntoIterator<Item = (u32, Rational)>>(entries: I) -> Result<Self, WeightError> {
        let mut map = BTreeMap::new();
        for (index, value) in entries {
            if index == 0 {
                return Err(WeightError::ZeroIndex);
            }
            if den_bound(&value).is_none() {
                return Err(WeightError::NotHalfIntegral { index, value: format_rational(&value) });
            }
            if !value.is_zero() {
                map.insert(index, value);
            }
        }
        Ok(Weight { entries: map })
    }

    /// Integer-valued weight from `(index, value)` pairs.
    pub fn from_ints(pairs: &[(u32, i64)]) -> Result<Self, WeightError> {
        Weight::new(pairs.iter().map(|&(i, v)| (i, Rational::from_integer(v))))
    }

    /// Weight whose entries are `values[k]` at `window[k]`.
    pub fn from_dense(window: &[u32], values: &[Rational]) -> Result<Self, WeightError> {
        Weight::new(window.iter().copied().zip(values.iter().copied()))
    }

    pub fn get(&self, index: u32) -> Rational {
        self.entries.get(&index).copied().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> &BTreeMap<u32, Rational> {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1 if integral, 2 if some entry is a proper half-integer.
    pub fn den(&self) -> u8 {
        if self.entries.values().all(|v| v.is_integer()) {
            1
        } else {
            2
        }
    }

    pub fn is_integral(&self) -> bool {
        self.den() == 1
    }

    pub fn dense(&self, window: &[u32]) -> Vec<Rational> {
        window.iter().map(|&i| self.get(i)).collect()
    }

    pub fn check_in(&self, set: &IndexSet) -> Result<(), WeightError> {
        if let IndexSet::Finite { n } = set {
            if let Some(&i) = self.entries.keys().find(|&&i| i > *n) {
                return Err(WeightError::OutOfRange { index: i, n: *n });
            }
        }
        Ok(())
    }

    /// Maximum over the ambient index set: unlisted indices count as 0 when present.
    pub fn max_over(&self, set: &IndexSet) -> Rational {
        let zero = set.has_cosupport(self.entries.len()).then(Rational::zero);
        self.entries.values().copied().chain(zero).max().unwrap_or_else(Rational::zero)
    }

    /// Minimum over the ambient index set, see [`Weight::max_over`].
    pub fn min_over(&self, set: &IndexSet) -> Rational {
        let zero = set.has_cosupport(self.entries.len()).then(Rational::zero);
        self.entries.values().copied().chain(zero).min().unwrap_or_else(Rational::zero)
    }

    pub fn map_values(&self, f: impl Fn(Rational) -> Rational) -> Result<Weight, WeightError> {
        Weight::new(self.entries.iter().map(|(&i, &v)| (i, f(v))))
    }

    /// Adds `s` to every entry on the finite set `{1..=n}` (shift by a constant function).
    pub fn shifted_on(&self, n: u32, s: Rational) -> Result<Weight, WeightError> {
        Weight::new((1..=n).map(|i| (i, self.get(i) + s)))
    }

    pub fn max_index(&self) -> u32 {
        self.entries.keys().next_back().copied().unwrap_or(0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{}", format_rational(v))?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    entries: BTreeMap<String, String>,
    den: u8,
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WeightJson {
            entries: self.entries.iter().map(|(i, v)| (i.to_string(), format_rational(v))).collect(),
            den: self.den(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = WeightJson::deserialize(d)?;
        weight_from_json(raw).map_err(serde::de::Error::custom)
    }
}

fn weight_from_json(raw: WeightJson) -> Result<Weight, WeightError> {
    if raw.den != 1 && raw.den != 2 {
        return Err(WeightError::BadDenominatorBound(raw.den));
    }
    let mut pairs = Vec::with_capacity(raw.entries.len());
    for (k, v) in raw.entries {
        let index: u32 = k.trim().parse().map_err(|_| WeightError::BadIndexKey(k.clone()))?;
        let value = parse_rational(&v).map_err(|_| WeightError::BadRational(v.clone()))?;
        match den_bound(&value) {
            Some(d) if d <= raw.den => {}
            _ => {
                return Err(WeightError::DenominatorBound { index, value: v, den: raw.den });
            }
        }
        pairs.push((index, value));
    }
    Weight::new(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylType {
    A,
    C,
    D,
}

/// A finitary signed permutation: first relabel by `perm`, then negate at `flips`.
///
/// `perm` stores only moved indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeylElement {
    perm: BTreeMap<u32, u32>,
    flips: BTreeSet<u32>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement::default()
    }

    pub fn transposition(i: u32, j: u32) -> Self {
        let mut perm = BTreeMap::new();
        if i != j {
            perm.insert(i, j);
            perm.insert(j, i);
        }
        WeylElement { perm, flips: BTreeSet::new() }
    }

    pub fn flip(i: u32) -> Self {
        WeylElement { perm: BTreeMap::new(), flips: [i].into() }
    }

    /// Relabeling `i -> map[i]`; must be a bijection of its key set.
    pub fn permutation(map: BTreeMap<u32, u32>) -> Result<Self, WeightError> {
        let keys: BTreeSet<u32> = map.keys().copied().collect();
        let vals: BTreeSet<u32> = map.values().copied().collect();
        if keys != vals || vals.len() != map.len() {
            return Err(WeightError::BadPermutation(format!("{map:?} is not a bijection of its domain")));
        }
        let perm = map.into_iter().filter(|(a, b)| a != b).collect();
        Ok(WeylElement { perm, flips: BTreeSet::new() })
    }

    /// The reflection in `e_i + e_j`: `x_i -> -x_j`, `x_j -> -x_i`.
    pub fn reflect_sum(i: u32, j: u32) -> Self {
        let mut w = WeylElement::transposition(i, j);
        w.flips = [i, j].into();
        w
    }

    fn image(&self, i: u32) -> u32 {
        self.perm.get(&i).copied().unwrap_or(i)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &WeylElement) -> WeylElement {
        let mut domain: BTreeSet<u32> = self.perm.keys().copied().collect();
        domain.extend(next.perm.keys().copied());
        let perm = domain
            .into_iter()
            .map(|i| (i, next.image(self.image(i))))
            .filter(|(a, b)| a != b)
            .collect();
        let moved: BTreeSet<u32> = self.flips.iter().map(|&i| next.image(i)).collect();
        let flips = moved.symmetric_difference(&next.flips).copied().collect();
        WeylElement { perm, flips }
    }

    pub fn sign_changes(&self) -> usize {
        self.flips.len()
    }

    pub fn check_type(&self, t: WeylType) -> Result<(), WeightError> {
        match t {
            WeylType::A if !self.flips.is_empty() => Err(WeightError::InvalidAction),
            WeylType::D if self.flips.len() % 2 == 1 => Err(WeightError::OddSignChanges(self.flips.len())),
            _ => Ok(()),
        }
    }
}

pub fn apply_weyl(w: &WeylElement, lambda: &Weight, t: WeylType) -> Result<Weight, WeightError> {
    w.check_type(t)?;
    Weight::new(lambda.entries.iter().map(|(&i, &v)| {
        let j = w.image(i);
        (j, if w.flips.contains(&j) { -v } else { v })
    }))
}

/// Simple reflections of type `t` acting on `window`.
pub fn generators(t: WeylType, window: &[u32]) -> Vec<WeylElement> {
    let mut g: Vec<WeylElement> =
        window.windows(2).map(|p| WeylElement::transposition(p[0], p[1])).collect();
    match t {
        WeylType::A => {}
        WeylType::C => {
            if let Some(&last) = window.last() {
                g.push(WeylElement::flip(last));
            }
        }
        WeylType::D => {
            if window.len() >= 2 {
                let n = window.len();
                g.push(WeylElement::reflect_sum(window[n - 2], window[n - 1]));
            }
        }
    }
    g
}

fn check_window(lambda: &Weight, window: &[u32]) -> Result<(), WeightError> {
    let mut seen = BTreeSet::new();
    for &i in window {
        if i == 0 {
            return Err(WeightError::ZeroIndex);
        }
        if !seen.insert(i) {
            return Err(WeightError::DuplicateWindowIndex(i));
        }
    }
    if let Some(i) = lambda.support().find(|i| !seen.contains(i)) {
        return Err(WeightError::WindowTooSmall(i));
    }
    Ok(())
}

/// All weights `w lambda` for `w` in the Weyl group of type `t` on `window`.
pub fn orbit(lambda: &Weight, t: WeylType, window: &[u32]) -> Result<BTreeSet<Weight>, WeightError> {
    check_window(lambda, window)?;
    let values: Vec<Rational> = lambda.entries.values().copied().collect();
    let k = values.len();
    let n = window.len();
    let mut out = BTreeSet::new();
    let mut slots = Vec::with_capacity(k);
    let mut used = vec![false; n];
    place(&values, window, t, k < n, &mut slots, &mut used, &mut out);
    Ok(out)
}

fn place(
    values: &[Rational],
    window: &[u32],
    t: WeylType,
    spare_zero: bool,
    slots: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut BTreeSet<Weight>,
) {
    if slots.len() == values.len() {
        let k = values.len();
        let patterns: u32 = if t == WeylType::A { 1 } else { 1 << k };
        for mask in 0..patterns {
            // a spare zero coordinate absorbs any parity defect in type D
            if t == WeylType::D && !spare_zero && mask.count_ones() % 2 == 1 {
                continue;
            }
            let w = Weight::new(slots.iter().enumerate().map(|(a, &s)| {
                let v = if mask >> a & 1 == 1 { -values[a] } else { values[a] };
                (window[s], v)
            }))
            .expect("orbit entries inherit validity");
            out.insert(w);
        }
        return;
    }
    for s in 0..window.len() {
        if !used[s] {
            used[s] = true;
            slots.push(s);
            place(values, window, t, spare_zero, slots, used, out);
            slots.pop();
            used[s] = false;
        }
    }
}

/// Whether `x - lambda` lies in the root lattice of type `t` on a window of size `n`.
fn in_root_lattice(diff: &[Rational], t: WeylType) -> bool {
    if diff.iter().any(|d| !d.is_integer()) {
        return false;
    }
    let n = diff.len();
    let sum: i64 = diff.iter().map(|d| d.to_integer()).sum();
    match t {
        WeylType::A => sum == 0,
        WeylType::C => sum % 2 == 0,
        WeylType::D if n == 1 => diff[0].is_zero(),
        WeylType::D => sum % 2 == 0,
    }
}

/// Dominant representative under the finite Weyl group on the window.
fn dominant(x: &[Rational], t: WeylType) -> Vec<Rational> {
    let mut v: Vec<Rational> = match t {
        WeylType::A => x.to_vec(),
        WeylType::C | WeylType::D => x.iter().map(|a| a.abs()).collect(),
    };
    v.sort_by(|a, b| b.cmp(a));
    if t == WeylType::D {
        let negatives = x.iter().filter(|a| a.is_negative()).count();
        let has_zero = x.iter().any(|a| a.is_zero());
        if negatives % 2 == 1 && !has_zero {
            let last = v.len() - 1;
            v[last] = -v[last];
        }
    }
    v
}

/// `conv(W lambda) ∩ (lambda + Q)` over weights supported in `window`.
pub fn weight_set(lambda: &Weight, t: WeylType, window: &[u32]) -> Result<BTreeSet<Weight>, WeightError> {
    let vertices: Vec<Vec<Rational>> = orbit(lambda, t, window)?.iter().map(|w| w.dense(window)).collect();
    let base = lambda.dense(window);
    let n = window.len();
    if n == 0 {
        return Ok([Weight::zero()].into());
    }
    let ranges: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let lo = vertices.iter().map(|v| v[i]).min().expect("orbit is nonempty");
            let hi = vertices.iter().map(|v| v[i]).max().expect("orbit is nonempty");
            (ceil_int(&(lo - base[i]))..=floor_int(&(hi - base[i])))
                .map(|s| base[i] + Rational::from_integer(s))
                .collect()
        })
        .collect();
    let mut cache: HashMap<Vec<Rational>, bool> = HashMap::new();
    let mut out = BTreeSet::new();
    let mut x = vec![Rational::zero(); n];
    scan(0, &ranges, &mut x, &mut |x| {
        let diff: Vec<Rational> = x.iter().zip(&base).map(|(a, b)| a - b).collect();
        if !in_root_lattice(&diff, t) {
            return;
        }
        let key = dominant(x, t);
        let inside = *cache.entry(key).or_insert_with(|| in_convex_hull(&vertices, x));
        if inside {
            out.insert(Weight::from_dense(window, x).expect("lattice points stay half-integral"));
        }
    });
    Ok(out)
}

fn scan(i: usize, ranges: &[Vec<Rational>], x: &mut Vec<Rational>, f: &mut impl FnMut(&[Rational])) {
    if i == ranges.len() {
        f(x);
        return;
    }
    for &v in &ranges[i] {
        x[i] = v;
        scan(i + 1, ranges, x, f);
    }
}

/// Canonical orbit representative on an infinite index set: support relabeled to `1..k`,
/// values sorted descending (absolute values for C and D).
pub fn canonical(lambda: &Weight, t: WeylType) -> Weight {
    let mut values: Vec<Rational> = lambda
        .entries
        .values()
        .map(|v| if t == WeylType::A { *v } else { v.abs() })
        .collect();
    values.sort_by(|a, b| b.cmp(a));
    Weight::new((1u32..).zip(values)).expect("canonical form keeps entries")
}

/// Orbit equivalence under the Weyl group of an infinite index set.
pub fn equivalent_weights(lambda: &Weight, mu: &Weight, t: WeylType) -> bool {
    canonical(lambda, t) == canonical(mu, t)
}

/// The `S_n`-average of a vector on a finite index set, i.e. the constant vector at its mean.
pub fn orbit_average(x: &[Rational]) -> Result<Vec<Rational>, WeightError> {
    if x.is_empty() {
        return Err(WeightError::EmptyAverage);
    }
    let mean = x.iter().sum::<Rational>() / Rational::from_integer(x.len() as i64);
    Ok(vec![mean; x.len()])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportStats {
    pub support: u64,
    pub positive: u64,
    pub negative: u64,
    #[serde(with = "crate::rational::as_string")]
    pub max: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub min: Rational,
}

pub fn support_stats(lambda: &Weight, set: &IndexSet) -> SupportStats {
    let positive = lambda.entries.values().filter(|v| v.is_positive()).count() as u64;
    SupportStats {
        support: lambda.support_len() as u64,
        positive,
        negative: lambda.support_len() as u64 - positive,
        max: lambda.max_over(set),
        min: lambda.min_over(set),
    }
}
