//! Exact linear algebra over structure carriers: sparse vectors with rational
//! coefficients, the zeta pairing, the inverted basis, and executable versions
//! of the adjunction and duality theorems.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::label::{proper_splits, splits, LabelSet};
use crate::order::FamilyPoset;
use crate::poset::{check_galois, mobius_row, rota_transfer_check, GaloisReport, Poset, ProductPoset};
use crate::species::{AdjunctionSpec, CheckOutcome, OrderSpec, Product, Species};

/// A finite linear combination of basis elements `K` with exact rational
/// coefficients. Zero coefficients are never stored, so `==` is equality of
/// vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeVector<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

/// Elements of `kF[S] ⊗ kF[T]`.
pub type TensorVector<A, B = A> = FreeVector<(A, B)>;

impl<K: Ord> Default for FreeVector<K> {
    fn default() -> Self {
        FreeVector { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FreeVector<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::from_ints([(k, 1)])
    }

    pub fn from_ints(terms: impl IntoIterator<Item = (K, i64)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_int(k, c);
        }
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigRational)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_int(&mut self, k: K, c: i64) {
        self.add_term(k, BigRational::from_integer(BigInt::from(c)));
    }

    pub fn coeff(&self, k: &K) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, &BigRational::one());
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    /// Linear extension of `f` from basis elements.
    pub fn map_linear<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FreeVector<K2>) -> FreeVector<K2> {
        let mut out = FreeVector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Fallible linear extension.
    pub fn try_map_linear<K2: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Result<FreeVector<K2>>,
    ) -> Result<FreeVector<K2>> {
        let mut out = FreeVector::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    pub fn tensor<K2: Ord + Clone>(&self, other: &FreeVector<K2>) -> TensorVector<K, K2> {
        let mut out = FreeVector::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term((a.clone(), b.clone()), x * y);
            }
        }
        out
    }

    /// `{"ambient": ..., "terms": {"<encoding>": "p/q", ...}}` with keys in
    /// string order.
    pub fn to_json(&self, ambient: &str, encode: impl Fn(&K) -> String) -> Value {
        let terms: BTreeMap<String, String> = self.terms.iter().map(|(k, c)| (encode(k), c.to_string())).collect();
        json!({ "ambient": ambient, "terms": terms })
    }

    /// Inverse of [`FreeVector::to_json`]; returns the ambient tag too.
    pub fn from_json(v: &Value, parse: impl Fn(&str) -> Result<K>) -> Result<(String, Self)> {
        let ambient = v
            .get("ambient")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing `ambient`".into()))?
            .to_string();
        let terms = v
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing `terms`".into()))?;
        let mut out = Self::zero();
        for (k, c) in terms {
            let c = c
                .as_str()
                .ok_or_else(|| Error::Parse(format!("coefficient of `{k}` is not a string")))?;
            out.add_term(parse(k)?, parse_rational(c)?);
        }
        Ok((ambient, out))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl<K: Ord + fmt::Debug> fmt::Debug for FreeVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sep = if i == 0 {
                if c.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sep}{k:?}")?;
            } else {
                write!(f, "{sep}{a}·{k:?}")?;
            }
        }
        Ok(())
    }
}

/// Tag used in JSON for vectors in `kF[labels]`.
pub fn ambient_tag<F: Species + ?Sized>(fam: &F, labels: LabelSet) -> String {
    format!("{}:{}", fam.name(), labels.encode())
}

pub fn vector_to_json<F: Species + ?Sized>(fam: &F, labels: LabelSet, v: &FreeVector<F::Obj>) -> Value {
    v.to_json(&ambient_tag(fam, labels), |x| fam.encode(x))
}

pub fn vector_from_json<F: Species + ?Sized>(fam: &F, v: &Value) -> Result<(String, FreeVector<F::Obj>)> {
    FreeVector::from_json(v, |s| fam.parse(s))
}

/// `ω_x = Σ_{x <= y} μ(x, y) y`.
pub fn inverted_basis<P: Poset + ?Sized>(p: &P, x: &P::Elem) -> Result<FreeVector<P::Elem>> {
    let row = mobius_row(p, x)?;
    Ok(FreeVector::from_ints(row.iter().map(|(y, m)| (y.clone(), *m))))
}

fn check_ambient<P: Poset + ?Sized>(p: &P, v: &FreeVector<P::Elem>, other: &FreeVector<P::Elem>) -> Result<()> {
    for k in v.keys() {
        if !p.contains(k) {
            let right = other.keys().next().map(|o| p.describe(o)).unwrap_or_default();
            return Err(Error::AmbientMismatch {
                left: p.describe(k),
                right,
            });
        }
    }
    Ok(())
}

/// Bilinear extension of `⟨a, b⟩ = [a <= b]`.
pub fn zeta_pairing<P: Poset + ?Sized>(p: &P, a: &FreeVector<P::Elem>, b: &FreeVector<P::Elem>) -> Result<BigRational> {
    check_ambient(p, a, b)?;
    check_ambient(p, b, a)?;
    let mut total = BigRational::zero();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            if p.leq(x, y) {
                total += c * d;
            }
        }
    }
    Ok(total)
}

/// Coordinates of `v` in the inverted basis: `v = Σ_z c_z ω_z` with
/// `c_z = Σ_{y <= z} v_y`.
pub fn to_inverted_coordinates<P: Poset + ?Sized>(p: &P, v: &FreeVector<P::Elem>) -> Result<FreeVector<P::Elem>> {
    v.try_map_linear(|y| Ok(FreeVector::from_ints(p.upset(y)?.into_iter().map(|z| (z, 1)))))
}

/// `Σ_z c_z ω_z`.
pub fn from_inverted_coordinates<P: Poset + ?Sized>(p: &P, c: &FreeVector<P::Elem>) -> Result<FreeVector<P::Elem>> {
    c.try_map_linear(|z| inverted_basis(p, z))
}

/// Two vectors that a theorem says are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison<K: Ord> {
    pub lhs: FreeVector<K>,
    pub rhs: FreeVector<K>,
}

impl<K: Ord + Clone> Comparison<K> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn delta(&self) -> FreeVector<K> {
        self.lhs.sub(&self.rhs)
    }
}

/// Linear extension of a product.
pub fn product_vectors<F: Species + ?Sized>(
    fam: &F,
    kind: Product,
    u: &FreeVector<F::Obj>,
    v: &FreeVector<F::Obj>,
) -> Result<FreeVector<F::Obj>> {
    u.tensor(v)
        .try_map_linear(|(a, b)| Ok(FreeVector::basis(fam.product(kind, a, b)?)))
}

/// Linear extension of `Δ_{S,T}`.
pub fn comult_vector<F: Species + ?Sized>(
    fam: &F,
    v: &FreeVector<F::Obj>,
    s: LabelSet,
    t: LabelSet,
) -> Result<TensorVector<F::Obj>> {
    v.try_map_linear(|x| Ok(FreeVector::basis(fam.comult(x, s, t)?)))
}

/// Whether `Δ_{S,T}(v) = 0` for every proper split of `labels`.
pub fn is_primitive<F: Species + ?Sized>(fam: &F, labels: LabelSet, v: &FreeVector<F::Obj>) -> Result<bool> {
    for (s, t) in proper_splits(labels) {
        if !comult_vector(fam, v, s, t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Galois check of one split, plus the Möbius transfer identity on every
/// pair of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub s: LabelSet,
    pub t: LabelSet,
    pub galois: GaloisReport,
    pub rota: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub family: String,
    pub spec: AdjunctionSpec,
    pub n: usize,
    pub splits: Vec<SplitReport>,
}

impl AdjunctionReport {
    pub fn galois_holds(&self) -> bool {
        self.splits.iter().all(|s| s.galois.holds())
    }

    pub fn rota_holds(&self) -> bool {
        self.splits.iter().all(|s| s.rota.passed())
    }

    pub fn holds(&self) -> bool {
        self.galois_holds() && self.rota_holds()
    }

    pub fn first_failure(&self) -> Option<String> {
        self.splits.iter().find_map(|r| {
            if let Some(f) = &r.galois.failure {
                Some(format!("split ({}, {}): {f:?}", r.s, r.t))
            } else {
                r.rota
                    .witness
                    .as_ref()
                    .map(|w| format!("split ({}, {}): Möbius transfer fails at {w}", r.s, r.t))
            }
        })
    }
}

fn ensure_product<F: Species + ?Sized>(fam: &F, kind: Product) -> Result<()> {
    if kind == Product::Free && !fam.has_free_mult() {
        return Err(Error::Unsupported(format!("free product on {}", fam.name())));
    }
    Ok(())
}

/// Checks the adjunction on every split of `{0, ..., k-1}`, `k <= n`. With
/// `rota` set, also checks the Möbius transfer identity on every pair.
///
/// A reversed order is checked in the unreversed order with the roles
/// swapped: `product(y, z) <= x ⟺ (y, z) <= Δ(x)`.
pub fn adjunction_report<F: Species + ?Sized>(
    fam: &F,
    spec: AdjunctionSpec,
    n: usize,
    rota: bool,
) -> Result<AdjunctionReport> {
    ensure_product(fam, spec.product)?;
    let base = OrderSpec {
        reversed: false,
        ..spec.order
    };
    let mut out = Vec::new();
    for k in 0..=n {
        let labels = LabelSet::range(k);
        for (s, t) in splits(labels) {
            let whole = FamilyPoset::new(fam, labels, base);
            let left = FamilyPoset::new(fam, s, base);
            let right = FamilyPoset::new(fam, t, base);
            let pair = ProductPoset::new(&left, &right);
            let delta = |x: &F::Obj| fam.comult(x, s, t).expect("split of the label set");
            let prod = |yz: &(F::Obj, F::Obj)| fam.product(spec.product, &yz.0, &yz.1).expect("disjoint labels");
            let mut outcome = CheckOutcome::default();
            let galois;
            if spec.order.reversed {
                galois = check_galois(&pair, &whole, prod, delta)?;
                if rota {
                    for x in pair.carrier()? {
                        for b in whole.carrier()? {
                            let sums = rota_transfer_check(&pair, &whole, prod, delta, &x, &b)?;
                            outcome.record(sums.holds(), || format!("({}, {})", pair.describe(&x), fam.encode(&b)));
                        }
                    }
                }
            } else {
                galois = check_galois(&whole, &pair, delta, prod)?;
                if rota {
                    for x in whole.carrier()? {
                        for b in pair.carrier()? {
                            let sums = rota_transfer_check(&whole, &pair, delta, prod, &x, &b)?;
                            outcome.record(sums.holds(), || format!("({}, {})", fam.encode(&x), pair.describe(&b)));
                        }
                    }
                }
            }
            out.push(SplitReport {
                s,
                t,
                galois,
                rota: outcome,
            });
        }
    }
    Ok(AdjunctionReport {
        family: fam.name().to_string(),
        spec,
        n,
        splits: out,
    })
}

/// Evidence that an adjunction was checked exhaustively up to size `n`.
pub struct Adjunction<'a, F: Species + ?Sized> {
    fam: &'a F,
    spec: AdjunctionSpec,
    verified_up_to: usize,
}

impl<'a, F: Species + ?Sized> Adjunction<'a, F> {
    /// Runs the Galois check up to `n` and returns the certificate, or
    /// `AdjunctionUnverified` with the first failure.
    pub fn verify(fam: &'a F, spec: AdjunctionSpec, n: usize) -> Result<Self> {
        let report = adjunction_report(fam, spec, n, false)?;
        if let Some(f) = report.first_failure() {
            return Err(Error::AdjunctionUnverified(format!("{} {spec}: {f}", fam.name())));
        }
        Ok(Adjunction {
            fam,
            spec,
            verified_up_to: n,
        })
    }

    pub fn spec(&self) -> AdjunctionSpec {
        self.spec
    }

    pub fn family(&self) -> &'a F {
        self.fam
    }

    pub fn verified_up_to(&self) -> usize {
        self.verified_up_to
    }

    fn ensure_covers(&self, labels: LabelSet) -> Result<()> {
        if labels.len() > self.verified_up_to {
            return Err(Error::AdjunctionUnverified(format!(
                "{} {} on {} labels (verified up to {})",
                self.fam.name(),
                self.spec,
                labels.len(),
                self.verified_up_to
            )));
        }
        Ok(())
    }

    pub fn poset(&self, labels: LabelSet) -> FamilyPoset<'a, F> {
        FamilyPoset::new(self.fam, labels, self.spec.order)
    }

    /// Both sides of `Δ_{S,T}(ω_x) = Σ_{x_1 □ x_2 = x} ω_{x_1} ⊗ ω_{x_2}`.
    pub fn delta_on_inverted_check(
        &self,
        x: &F::Obj,
        s: LabelSet,
        t: LabelSet,
    ) -> Result<Comparison<(F::Obj, F::Obj)>> {
        let labels = self.fam.labels(x);
        self.ensure_covers(labels)?;
        let omega = inverted_basis(&self.poset(labels), x)?;
        let lhs = comult_vector(self.fam, &omega, s, t)?;
        // comult validates the split, so the carriers below are well defined
        let (ps, pt) = (self.poset(s), self.poset(t));
        let mut rhs = FreeVector::zero();
        for x1 in ps.carrier()? {
            for x2 in pt.carrier()? {
                if self.fam.product(self.spec.product, &x1, &x2)? == *x {
                    rhs.add_assign(&inverted_basis(&ps, &x1)?.tensor(&inverted_basis(&pt, &x2)?));
                }
            }
        }
        Ok(Comparison { lhs, rhs })
    }

    /// Structures on `labels` that are not a product of structures on a
    /// proper split, each with its inverted-basis vector.
    pub fn primitives_basis(&self, labels: LabelSet) -> Result<PrimitiveBasis<F::Obj>> {
        self.ensure_covers(labels)?;
        primitives_basis(self.fam, self.spec, labels)
    }
}

/// Indecomposables paired with their inverted-basis vectors.
pub type PrimitiveBasis<O> = Vec<(O, FreeVector<O>)>;

/// Indecomposables under `spec.product` on `labels`, paired with `ω_x` in
/// `spec.order`.
pub fn primitives_basis<F: Species + ?Sized>(
    fam: &F,
    spec: AdjunctionSpec,
    labels: LabelSet,
) -> Result<PrimitiveBasis<F::Obj>> {
    ensure_product(fam, spec.product)?;
    let mut decomposable = std::collections::HashSet::new();
    for (s, t) in proper_splits(labels) {
        let right = fam.carrier(t)?;
        for y in fam.carrier(s)? {
            for z in &right {
                decomposable.insert(fam.product(spec.product, &y, z)?);
            }
        }
    }
    let p = FamilyPoset::new(fam, labels, spec.order);
    let mut out = Vec::new();
    for x in p.carrier()? {
        if !decomposable.contains(&x) {
            let w = inverted_basis(&p, &x)?;
            out.push((x, w));
        }
    }
    Ok(out)
}

/// `⟨Δ_{S,T}(x), y ⊗ z⟩ = ⟨x, y □ z⟩` on basis elements, for every split of
/// every `{0, ..., k-1}`, `k <= n`, with the zeta pairing of `spec.order`.
pub fn duality_pairing_check<F: Species + ?Sized>(fam: &F, spec: AdjunctionSpec, n: usize) -> Result<CheckOutcome> {
    ensure_product(fam, spec.product)?;
    let mut out = CheckOutcome::default();
    for k in 0..=n {
        let labels = LabelSet::range(k);
        let whole = FamilyPoset::new(fam, labels, spec.order);
        for (s, t) in splits(labels) {
            let (ps, pt) = (
                FamilyPoset::new(fam, s, spec.order),
                FamilyPoset::new(fam, t, spec.order),
            );
            let (ys, zs) = (ps.carrier()?, pt.carrier()?);
            for x in whole.carrier()? {
                let (xs, xt) = fam.comult(&x, s, t)?;
                for y in &ys {
                    for z in &zs {
                        let left = ps.leq(&xs, y) && pt.leq(&xt, z);
                        let right = whole.leq(&x, &fam.product(spec.product, y, z)?);
                        out.record(left == right, || {
                            format!(
                                "x = {}, y = {}, z = {}: ⟨Δx, y⊗z⟩ = {}, ⟨x, y{}z⟩ = {}",
                                fam.encode(&x),
                                fam.encode(y),
                                fam.encode(z),
                                left as u8,
                                spec.product,
                                right as u8
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `⟨ω_x, y⟩ = [x = y]` for all pairs on `{0, ..., k-1}`, `k <= n`.
pub fn kronecker_duality_check<F: Species + ?Sized>(fam: &F, order: OrderSpec, n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for k in 0..=n {
        let p = FamilyPoset::new(fam, LabelSet::range(k), order);
        let all = p.carrier()?;
        for x in &all {
            let w = inverted_basis(&p, x)?;
            for y in &all {
                let value = zeta_pairing(&p, &w, &FreeVector::basis(y.clone()))?;
                let expected = if x == y { rational(1) } else { rational(0) };
                out.record(value == expected, || {
                    format!("⟨ω_{}, {}⟩ = {value}", fam.encode(x), fam.encode(y))
                });
            }
        }
    }
    Ok(out)
}

/// Every basis vector survives the trip into inverted coordinates and back.
pub fn basis_round_trip_check<F: Species + ?Sized>(fam: &F, order: OrderSpec, n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for k in 0..=n {
        let p = FamilyPoset::new(fam, LabelSet::range(k), order);
        for x in p.carrier()? {
            let v = FreeVector::basis(x.clone());
            let back = from_inverted_coordinates(&p, &to_inverted_coordinates(&p, &v)?)?;
            out.record(back == v, || fam.encode(&x));
        }
    }
    Ok(out)
}

/// Both sides of `ω_x · ω_y = ω_{x·y}` in the reassembly order.
pub fn product_of_inverted_check<F: Species + ?Sized>(fam: &F, x: &F::Obj, y: &F::Obj) -> Result<Comparison<F::Obj>> {
    let (s, t) = (fam.labels(x), fam.labels(y));
    let xy = fam.mult(x, y)?;
    let order = OrderSpec::REASSEMBLY;
    let wx = inverted_basis(&FamilyPoset::new(fam, s, order), x)?;
    let wy = inverted_basis(&FamilyPoset::new(fam, t, order), y)?;
    let lhs = product_vectors(fam, Product::Mult, &wx, &wy)?;
    let rhs = inverted_basis(&FamilyPoset::new(fam, s.union(t), order), &xy)?;
    Ok(Comparison { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Graph, Graphs, Partitions};

    fn k2() -> Graph {
        Graphs::default().parse("G:n=2;E=0-1").unwrap()
    }

    #[test]
    fn vector_arithmetic_prunes_zeros() {
        let mut v = FreeVector::from_ints([("a", 2), ("b", -1)]);
        v.add_int("a", -2);
        assert_eq!(v, FreeVector::from_ints([("b", -1)]));
        assert!(v.sub(&v).is_zero());
        assert_eq!(
            format!("{:?}", FreeVector::from_ints([("a", 2), ("b", -1)])),
            "2·\"a\" - \"b\""
        );
    }

    #[test]
    fn json_round_trip() {
        let fam = Graphs::default();
        let labels = LabelSet::range(2);
        let mut v = FreeVector::from_ints([(k2(), -1), (Graph::edgeless(labels), 2)]);
        v.add_term(k2(), BigRational::new(1.into(), 3.into()));
        let j = vector_to_json(&fam, labels, &v);
        assert_eq!(
            j.to_string(),
            r#"{"ambient":"graphs:n=2","terms":{"G:n=2;E=":"2","G:n=2;E=0-1":"-2/3"}}"#
        );
        let (amb, back) = vector_from_json(&fam, &j).unwrap();
        assert_eq!(amb, "graphs:n=2");
        assert_eq!(back, v);
    }

    #[test]
    fn inverted_basis_examples() {
        let fam = Graphs::default();
        let p = FamilyPoset::new(&fam, LabelSet::range(2), OrderSpec::NATIVE);
        let e = Graph::edgeless(LabelSet::range(2));
        assert_eq!(
            inverted_basis(&p, &e).unwrap(),
            FreeVector::from_ints([(e.clone(), 1), (k2(), -1)])
        );
        assert_eq!(inverted_basis(&p, &k2()).unwrap(), FreeVector::basis(k2()));

        let parts = Partitions::default();
        let q = FamilyPoset::new(&parts, LabelSet::range(3), OrderSpec::REASSEMBLY);
        let top = parts.parse("P:n=3;B=012").unwrap();
        let w = inverted_basis(&q, &top).unwrap();
        let expect = FreeVector::from_ints(
            [
                ("P:n=3;B=012", 1),
                ("P:n=3;B=01|2", -1),
                ("P:n=3;B=02|1", -1),
                ("P:n=3;B=0|12", -1),
                ("P:n=3;B=0|1|2", 2),
            ]
            .map(|(s, c)| (parts.parse(s).unwrap(), c)),
        );
        assert_eq!(w, expect);
    }

    #[test]
    fn zeta_pairing_ambient() {
        let fam = Graphs::default();
        let p = FamilyPoset::new(&fam, LabelSet::range(2), OrderSpec::NATIVE);
        let e = FreeVector::basis(Graph::edgeless(LabelSet::range(2)));
        assert_eq!(zeta_pairing(&p, &e, &FreeVector::basis(k2())).unwrap(), rational(1));
        let other = FreeVector::basis(Graph::edgeless(LabelSet::range(3)));
        assert!(matches!(
            zeta_pairing(&p, &e, &other),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn adjunction_token_gates_sizes() {
        let fam = Graphs::default();
        let spec = fam.primary_adjunction();
        let adj = Adjunction::verify(&fam, spec, 2).unwrap();
        let pt = |v| Graph::edgeless(LabelSet::singleton(v));
        let c = adj
            .delta_on_inverted_check(&k2(), LabelSet::singleton(0), LabelSet::singleton(1))
            .unwrap();
        assert!(c.holds());
        assert_eq!(c.lhs, FreeVector::basis((pt(0), pt(1))));
        let e = Graph::edgeless(LabelSet::range(2));
        let c = adj
            .delta_on_inverted_check(&e, LabelSet::singleton(0), LabelSet::singleton(1))
            .unwrap();
        assert!(c.holds() && c.lhs.is_zero());
        let k3 = Graph::complete(LabelSet::range(3));
        assert!(matches!(
            adj.delta_on_inverted_check(
                &k3,
                LabelSet::singleton(0),
                LabelSet::range(3).difference(LabelSet::singleton(0))
            ),
            Err(Error::AdjunctionUnverified(_))
        ));
        let wrong = AdjunctionSpec {
            order: OrderSpec::NATIVE,
            product: Product::Mult,
        };
        assert!(matches!(
            Adjunction::verify(&fam, wrong, 2),
            Err(Error::AdjunctionUnverified(_))
        ));
    }

    #[test]
    fn duality_detects_wrong_product() {
        let fam = Graphs::default();
        assert!(duality_pairing_check(&fam, fam.primary_adjunction(), 3)
            .unwrap()
            .passed());
        let wrong = AdjunctionSpec {
            order: OrderSpec::NATIVE,
            product: Product::Mult,
        };
        let out = duality_pairing_check(&fam, wrong, 3).unwrap();
        assert!(!out.passed());
    }

    #[test]
    fn product_of_inverted() {
        let parts = Partitions::default();
        let x = parts.parse("P:V=0,1;B=01").unwrap();
        let y = parts.parse("P:V=2;B=2").unwrap();
        assert!(product_of_inverted_check(&parts, &x, &y).unwrap().holds());
        let fam = Graphs::default();
        let pt = Graph::edgeless(LabelSet::singleton(2));
        assert!(product_of_inverted_check(&fam, &k2(), &pt).unwrap().holds());
    }
}
