//! Finite-poset kernel: Möbius functions, intervals, Galois connections and
//! graded characteristic evaluations.
//!
//! Every order in the crate implements [`Poset`]. The trait only asks for a
//! comparison and an enumerable carrier; up-sets and down-sets default to
//! filtering the carrier and are overridden where a cheaper route exists.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_budget, Error, Result};

pub trait Poset: Sync {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// Every element of the poset.
    fn carrier(&self) -> Result<Vec<Self::Elem>>;

    /// `{ y : x <= y }`, containing `x`.
    fn upset(&self, x: &Self::Elem) -> Result<Vec<Self::Elem>> {
        Ok(self.carrier()?.into_iter().filter(|y| self.leq(x, y)).collect())
    }

    /// `{ y : y <= x }`, containing `x`.
    fn downset(&self, x: &Self::Elem) -> Result<Vec<Self::Elem>> {
        Ok(self.carrier()?.into_iter().filter(|y| self.leq(y, x)).collect())
    }

    fn describe(&self, x: &Self::Elem) -> String {
        format!("{x:?}")
    }

    /// Whether `x` lives in this poset's ambient.
    fn contains(&self, _x: &Self::Elem) -> bool {
        true
    }

    fn mobius_cache(&self) -> Option<&MobiusCache<Self::Elem>> {
        None
    }
}

/// Memo of `x -> { y -> μ(x, y) }` over the up-set of `x`.
pub struct MobiusCache<E> {
    rows: Mutex<HashMap<E, Arc<BTreeMap<E, i64>>>>,
}

impl<E> Default for MobiusCache<E> {
    fn default() -> Self {
        MobiusCache {
            rows: Mutex::new(HashMap::new()),
        }
    }
}

impl<E: Clone + Eq + Hash> MobiusCache<E> {
    fn get(&self, x: &E) -> Option<Arc<BTreeMap<E, i64>>> {
        self.rows.lock().unwrap().get(x).cloned()
    }

    fn put(&self, x: E, row: Arc<BTreeMap<E, i64>>) {
        self.rows.lock().unwrap().insert(x, row);
    }
}

/// Orders `elems` so that `a < b` implies `a` comes first: the number of
/// elements below an element strictly grows along the order.
fn linear_extension<P: Poset + ?Sized>(p: &P, elems: &[P::Elem]) -> Vec<P::Elem> {
    let mut keyed: Vec<(usize, &P::Elem)> = elems
        .iter()
        .map(|z| (elems.iter().filter(|w| p.leq(w, z)).count(), z))
        .collect();
    keyed.sort();
    keyed.into_iter().map(|(_, z)| z.clone()).collect()
}

/// `μ(x, y)` for every `y` in the up-set of `x`.
pub fn mobius_row<P: Poset + ?Sized>(p: &P, x: &P::Elem) -> Result<Arc<BTreeMap<P::Elem, i64>>> {
    if let Some(row) = p.mobius_cache().and_then(|c| c.get(x)) {
        return Ok(row);
    }
    let up = p.upset(x)?;
    let order = linear_extension(p, &up);
    let mut row: BTreeMap<P::Elem, i64> = BTreeMap::new();
    for z in &order {
        let value = if z == x {
            1
        } else {
            -row.iter().filter(|(w, _)| p.leq(w, z)).map(|(_, m)| *m).sum::<i64>()
        };
        row.insert(z.clone(), value);
    }
    let row = Arc::new(row);
    if let Some(c) = p.mobius_cache() {
        c.put(x.clone(), row.clone());
    }
    Ok(row)
}

fn not_comparable<P: Poset + ?Sized>(p: &P, x: &P::Elem, y: &P::Elem) -> Error {
    Error::NotComparable {
        x: p.describe(x),
        y: p.describe(y),
    }
}

/// The Möbius function `μ(x, y)`; fails unless `x <= y`.
pub fn mobius<P: Poset + ?Sized>(p: &P, x: &P::Elem, y: &P::Elem) -> Result<i64> {
    if !p.leq(x, y) {
        return Err(not_comparable(p, x, y));
    }
    let row = mobius_row(p, x)?;
    row.get(y).copied().ok_or_else(|| not_comparable(p, x, y))
}

/// `[x, y]`, deduplicated and sorted.
pub fn interval<P: Poset + ?Sized>(p: &P, x: &P::Elem, y: &P::Elem) -> Result<Vec<P::Elem>> {
    if !p.leq(x, y) {
        return Err(not_comparable(p, x, y));
    }
    let set: BTreeSet<P::Elem> = p.upset(x)?.into_iter().filter(|z| p.leq(z, y)).collect();
    Ok(set.into_iter().collect())
}

/// Which Möbius endpoint weights the characteristic sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Σ_{x<=z<=y} μ(x, z) t^ℓ(z)`.
    Lower,
    /// `Σ_{x<=z<=y} μ(z, y) t^ℓ(z)`.
    Upper,
}

/// Integer polynomial in one variable; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, i64>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (u32, i64)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    /// `t (t-1) ... (t-n+1)`.
    pub fn falling_factorial(n: u32) -> Self {
        let mut p = Self::from_coeffs([(0, 1)]);
        for k in 0..n as i64 {
            p = p.mul(&Self::from_coeffs([(1, 1), (0, -k)]));
        }
        p
    }

    pub fn add_term(&mut self, exponent: u32, coeff: i64) {
        let c = self.coeffs.entry(exponent).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn coeff(&self, exponent: u32) -> i64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.terms().map(|(e, c)| c * t.pow(e)).sum()
    }

    /// JSON map `{"exponent": coefficient}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, i64> = self.terms().map(|(e, c)| (e.to_string(), c)).collect();
        serde_json::to_value(map).expect("map of integers serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let map: BTreeMap<String, i64> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Self::zero();
        for (k, c) in map {
            let e: u32 = k.parse().map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        IntPolynomial::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Characteristic polynomial of `[x, y]` graded by `grading`, weighted by the
/// Möbius function at the chosen endpoint.
pub fn graded_char_poly<P, G>(p: &P, x: &P::Elem, y: &P::Elem, grading: G, side: Side) -> Result<IntPolynomial>
where
    P: Poset + ?Sized,
    G: Fn(&P::Elem) -> u32,
{
    let mut poly = IntPolynomial::zero();
    let lower = mobius_row(p, x)?;
    for z in interval(p, x, y)? {
        let m = match side {
            Side::Lower => lower[&z],
            Side::Upper => mobius(p, &z, y)?,
        };
        poly.add_term(grading(&z), m);
    }
    Ok(poly)
}

pub fn graded_char_eval<P, G>(p: &P, x: &P::Elem, y: &P::Elem, grading: G, side: Side, t: i64) -> Result<i64>
where
    P: Poset + ?Sized,
    G: Fn(&P::Elem) -> u32,
{
    Ok(graded_char_poly(p, x, y, grading, side)?.eval(t))
}

/// First failure found by [`check_galois`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisFailure {
    /// `a <= b` in the source but `f(a) <= f(b)` fails.
    LeftNotMonotone { a: String, b: String },
    /// `a <= b` in the target but `g(a) <= g(b)` fails.
    RightNotMonotone { a: String, b: String },
    /// `f(x) <= y` and `x <= g(y)` disagree.
    Biconditional {
        x: String,
        y: String,
        left: bool,
        right: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    pub pairs_checked: usize,
    pub failure: Option<GaloisFailure>,
}

impl GaloisReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exhaustively checks that `f ⊣ g`: both maps are monotone and
/// `f(x) <= y ⟺ x <= g(y)` for every `x` in `p` and `y` in `q`.
pub fn check_galois<P, Q, F, G>(p: &P, q: &Q, f: F, g: G) -> Result<GaloisReport>
where
    P: Poset + ?Sized,
    Q: Poset + ?Sized,
    F: Fn(&P::Elem) -> Q::Elem,
    G: Fn(&Q::Elem) -> P::Elem,
{
    let ps = p.carrier()?;
    let qs = q.carrier()?;
    let fx: Vec<Q::Elem> = ps.iter().map(&f).collect();
    let gy: Vec<P::Elem> = qs.iter().map(&g).collect();
    let mut checked = 0usize;
    for (i, a) in ps.iter().enumerate() {
        for (j, b) in ps.iter().enumerate() {
            if p.leq(a, b) && !q.leq(&fx[i], &fx[j]) {
                return Ok(GaloisReport {
                    pairs_checked: checked,
                    failure: Some(GaloisFailure::LeftNotMonotone {
                        a: p.describe(a),
                        b: p.describe(b),
                    }),
                });
            }
        }
    }
    for (i, a) in qs.iter().enumerate() {
        for (j, b) in qs.iter().enumerate() {
            if q.leq(a, b) && !p.leq(&gy[i], &gy[j]) {
                return Ok(GaloisReport {
                    pairs_checked: checked,
                    failure: Some(GaloisFailure::RightNotMonotone {
                        a: q.describe(a),
                        b: q.describe(b),
                    }),
                });
            }
        }
    }
    for (i, x) in ps.iter().enumerate() {
        for (j, y) in qs.iter().enumerate() {
            checked += 1;
            let left = q.leq(&fx[i], y);
            let right = p.leq(x, &gy[j]);
            if left != right {
                return Ok(GaloisReport {
                    pairs_checked: checked,
                    failure: Some(GaloisFailure::Biconditional {
                        x: p.describe(x),
                        y: q.describe(y),
                        left,
                        right,
                    }),
                });
            }
        }
    }
    Ok(GaloisReport {
        pairs_checked: checked,
        failure: None,
    })
}

/// Both sides of the Möbius transfer identity across a Galois connection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotaSums {
    /// `Σ_{x <= y, f(y) = b} μ_P(x, y)`.
    pub source: i64,
    /// `Σ_{a <= b, g(a) = x} μ_Q(a, b)`.
    pub target: i64,
}

impl RotaSums {
    pub fn holds(&self) -> bool {
        self.source == self.target
    }
}

pub fn rota_transfer_check<P, Q, F, G>(p: &P, q: &Q, f: F, g: G, x: &P::Elem, b: &Q::Elem) -> Result<RotaSums>
where
    P: Poset + ?Sized,
    Q: Poset + ?Sized,
    F: Fn(&P::Elem) -> Q::Elem,
    G: Fn(&Q::Elem) -> P::Elem,
{
    let row = mobius_row(p, x)?;
    let source = row.iter().filter(|(y, _)| f(y) == *b).map(|(_, m)| *m).sum();
    let mut target = 0;
    for a in q.downset(b)? {
        if g(&a) == *x {
            target += mobius(q, &a, b)?;
        }
    }
    Ok(RotaSums { source, target })
}

/// Reflexivity, antisymmetry and transitivity over the whole carrier,
/// computed from up-sets. Returns a description of the first violation.
pub fn check_partial_order<P: Poset + ?Sized>(p: &P) -> Result<Option<String>> {
    let elems = p.carrier()?;
    let mut ups: HashMap<&P::Elem, BTreeSet<P::Elem>> = HashMap::new();
    for x in &elems {
        ups.insert(x, p.upset(x)?.into_iter().collect());
    }
    for x in &elems {
        let up = &ups[x];
        if !up.contains(x) || !p.leq(x, x) {
            return Ok(Some(format!("not reflexive at {}", p.describe(x))));
        }
        for y in up {
            if y != x && ups.get(y).is_some_and(|u| u.contains(x)) {
                return Ok(Some(format!(
                    "not antisymmetric at {} and {}",
                    p.describe(x),
                    p.describe(y)
                )));
            }
            let Some(yu) = ups.get(y) else {
                return Ok(Some(format!("{} escapes the carrier", p.describe(y))));
            };
            if let Some(z) = yu.iter().find(|z| !up.contains(*z)) {
                return Ok(Some(format!(
                    "not transitive at {} <= {} <= {}",
                    p.describe(x),
                    p.describe(y),
                    p.describe(z)
                )));
            }
        }
    }
    Ok(None)
}

type Comparator<T> = Box<dyn Fn(&T, &T) -> bool + Send + Sync>;

/// A poset given by an explicit element list and comparison.
pub struct ExplicitPoset<T> {
    elems: Vec<T>,
    leq: Comparator<T>,
    budget: usize,
    cache: MobiusCache<T>,
}

impl<T: Clone + Ord + Hash + Debug + Send + Sync> ExplicitPoset<T> {
    pub fn new(elems: Vec<T>, leq: impl Fn(&T, &T) -> bool + Send + Sync + 'static) -> Self {
        let mut elems = elems;
        elems.sort();
        elems.dedup();
        ExplicitPoset {
            elems,
            leq: Box::new(leq),
            budget: crate::error::DEFAULT_BUDGET,
            cache: MobiusCache::default(),
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

impl<T: Clone + Ord + Hash + Debug + Send + Sync> Poset for ExplicitPoset<T> {
    type Elem = T;

    fn leq(&self, a: &T, b: &T) -> bool {
        (self.leq)(a, b)
    }

    fn carrier(&self) -> Result<Vec<T>> {
        ensure_budget("explicit carrier", self.elems.len() as u128, self.budget)?;
        Ok(self.elems.clone())
    }

    fn mobius_cache(&self) -> Option<&MobiusCache<T>> {
        Some(&self.cache)
    }
}

/// Componentwise order on `P × Q`.
pub struct ProductPoset<'a, P: Poset + ?Sized, Q: Poset + ?Sized> {
    pub left: &'a P,
    pub right: &'a Q,
    pub budget: usize,
    cache: MobiusCache<(P::Elem, Q::Elem)>,
}

impl<'a, P: Poset + ?Sized, Q: Poset + ?Sized> ProductPoset<'a, P, Q> {
    pub fn new(left: &'a P, right: &'a Q) -> Self {
        ProductPoset {
            left,
            right,
            budget: crate::error::DEFAULT_BUDGET,
            cache: MobiusCache::default(),
        }
    }

    fn product(&self, a: Vec<P::Elem>, b: Vec<Q::Elem>) -> Result<Vec<(P::Elem, Q::Elem)>> {
        ensure_budget("product carrier", a.len() as u128 * b.len() as u128, self.budget)?;
        Ok(a.iter()
            .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
            .collect())
    }
}

impl<P: Poset + ?Sized, Q: Poset + ?Sized> Poset for ProductPoset<'_, P, Q> {
    type Elem = (P::Elem, Q::Elem);

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.left.leq(&a.0, &b.0) && self.right.leq(&a.1, &b.1)
    }

    fn carrier(&self) -> Result<Vec<Self::Elem>> {
        self.product(self.left.carrier()?, self.right.carrier()?)
    }

    fn upset(&self, x: &Self::Elem) -> Result<Vec<Self::Elem>> {
        self.product(self.left.upset(&x.0)?, self.right.upset(&x.1)?)
    }

    fn downset(&self, x: &Self::Elem) -> Result<Vec<Self::Elem>> {
        self.product(self.left.downset(&x.0)?, self.right.downset(&x.1)?)
    }

    fn describe(&self, x: &Self::Elem) -> String {
        format!("({}, {})", self.left.describe(&x.0), self.right.describe(&x.1))
    }

    fn contains(&self, x: &Self::Elem) -> bool {
        self.left.contains(&x.0) && self.right.contains(&x.1)
    }

    fn mobius_cache(&self) -> Option<&MobiusCache<Self::Elem>> {
        Some(&self.cache)
    }
}
