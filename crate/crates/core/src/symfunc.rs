//! Symmetric functions in the `h`, `p` and `m` bases, normalized by
//! expanding into monomials in finitely many variables, and the bridge from
//! the Fock image of set partitions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num::{BigRational, One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{Partitions, SetPartition};
use crate::fock::{fock_coproduct, orbit_canonicalize};
use crate::label::LabelSet;
use crate::linear::{inverted_basis, parse_rational, rational, FreeVector};
use crate::order::FamilyPoset;
use crate::poset::{mobius_row, IntPolynomial};
use crate::species::{CheckOutcome, OrderSpec};

/// Variables used for monomial expansion; faithful up to this degree.
pub const DEFAULT_VARIABLES: usize = 8;

/// An integer partition, parts in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition(Vec<u32>);

impl IntPartition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn empty() -> Self {
        IntPartition(vec![])
    }

    pub fn row(n: u32) -> Self {
        IntPartition::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts of both, merged.
    pub fn union(&self, other: &IntPartition) -> IntPartition {
        IntPartition::new(self.0.iter().chain(&other.0).copied().collect())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: u32) -> Vec<IntPartition> {
        fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
            if n == 0 {
                out.push(IntPartition(prefix.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                prefix.push(k);
                go(n - k, k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut vec![], &mut out);
        out
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join("+"))
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for IntPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(IntPartition::empty());
        }
        let parts = s
            .split('+')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::Parse(format!("zero part in `{s}`")));
        }
        Ok(IntPartition::new(parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Complete homogeneous.
    H,
    /// Power sum.
    P,
    /// Monomial.
    M,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::H => "h",
            Basis::P => "p",
            Basis::M => "m",
        }
    }
}

/// A symmetric function written in one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    pub basis: Basis,
    pub terms: FreeVector<IntPartition>,
}

type Poly = HashMap<Vec<u8>, BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = HashMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(BigRational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_one(vars: usize) -> Poly {
    HashMap::from([(vec![0u8; vars], BigRational::one())])
}

/// Exponent vectors of `vars` entries summing to `k`.
fn compositions(k: u32, vars: usize) -> Vec<Vec<u8>> {
    if vars == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, vars - 1) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

fn distinct_permutations(items: &mut Vec<u8>, start: usize, out: &mut Vec<Vec<u8>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    let mut seen = Vec::new();
    for i in start..items.len() {
        if seen.contains(&items[i]) {
            continue;
        }
        seen.push(items[i]);
        items.swap(start, i);
        distinct_permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

fn generator(basis: Basis, lambda: &IntPartition, vars: usize) -> Poly {
    let ones = |es: Vec<Vec<u8>>| es.into_iter().map(|e| (e, BigRational::one())).collect::<Poly>();
    match basis {
        Basis::M => {
            if lambda.len() > vars {
                return HashMap::new();
            }
            let mut items: Vec<u8> = lambda.parts().iter().map(|&p| p as u8).collect();
            items.resize(vars, 0);
            let mut out = Vec::new();
            distinct_permutations(&mut items, 0, &mut out);
            ones(out)
        }
        Basis::H | Basis::P => lambda.parts().iter().fold(poly_one(vars), |acc, &k| {
            let factor = if basis == Basis::H {
                ones(compositions(k, vars))
            } else {
                ones(
                    (0..vars)
                        .map(|i| {
                            let mut e = vec![0u8; vars];
                            e[i] = k as u8;
                            e
                        })
                        .collect(),
                )
            };
            poly_mul(&acc, &factor)
        }),
    }
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: FreeVector::zero(),
        }
    }

    pub fn single(basis: Basis, lambda: IntPartition, c: BigRational) -> Self {
        SymFunc {
            basis,
            terms: FreeVector::from_terms([(lambda, c)]),
        }
    }

    /// Highest degree present (0 for the zero function).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(IntPartition::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(IntPartition::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Product, for the multiplicative bases `h` and `p`.
    pub fn mul(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis || self.basis == Basis::M {
            return Err(Error::Unsupported(format!(
                "product of {} and {} terms without expansion",
                self.basis.tag(),
                other.basis.tag()
            )));
        }
        let terms = self
            .terms
            .tensor(&other.terms)
            .map_linear(|(a, b)| FreeVector::basis(a.union(b)));
        Ok(SymFunc {
            basis: self.basis,
            terms,
        })
    }

    pub fn to_polynomial(&self, vars: usize) -> Result<HashMap<Vec<u8>, BigRational>> {
        if self.degree() as usize > vars {
            return Err(Error::Unsupported(format!(
                "degree {} in {vars} variables",
                self.degree()
            )));
        }
        let mut out: Poly = HashMap::new();
        for (lambda, c) in self.terms.terms() {
            for (e, d) in generator(self.basis, lambda, vars) {
                *out.entry(e).or_insert_with(BigRational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// The normal form: coefficients on `m_λ`.
    pub fn to_monomial(&self) -> Result<SymFunc> {
        self.to_monomial_in(DEFAULT_VARIABLES)
    }

    pub fn to_monomial_in(&self, vars: usize) -> Result<SymFunc> {
        Ok(SymFunc {
            basis: Basis::M,
            terms: monomial_coefficients(&self.to_polynomial(vars)?),
        })
    }

    /// Equality as symmetric functions.
    pub fn equals(&self, other: &SymFunc) -> Result<bool> {
        Ok(self.to_monomial()? == other.to_monomial()?)
    }

    /// `{"basis": "m", "degree": d, "terms": {"3+2+1": "p/q"}}`.
    pub fn to_json(&self) -> Value {
        let terms: BTreeMap<String, String> = self
            .terms
            .terms()
            .map(|(l, c)| (l.to_string(), c.to_string()))
            .collect();
        json!({ "basis": self.basis.tag(), "degree": self.degree(), "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<SymFunc> {
        let basis = match v.get("basis").and_then(Value::as_str) {
            Some("h") => Basis::H,
            Some("p") => Basis::P,
            Some("m") => Basis::M,
            other => return Err(Error::Parse(format!("bad basis {other:?}"))),
        };
        let terms = v
            .get("terms")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing `terms`".into()))?;
        let mut out = SymFunc::zero(basis);
        for (k, c) in terms {
            let c = c
                .as_str()
                .ok_or_else(|| Error::Parse(format!("coefficient of `{k}` is not a string")))?;
            out.terms.add_term(k.parse()?, parse_rational(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .terms()
            .map(|(l, c)| format!("{c}·{}[{l}]", self.basis.tag()))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn monomial_coefficients(p: &Poly) -> FreeVector<IntPartition> {
    let mut out = FreeVector::zero();
    for (e, c) in p {
        if e.windows(2).all(|w| w[0] >= w[1]) {
            out.add_term(IntPartition::new(e.iter().map(|&x| x as u32).collect()), c.clone());
        }
    }
    out
}

fn factorial(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * rational(k))
}

/// How a one-block Par element is sent to `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scaling {
    /// `(n) ↦ n!·h_n`.
    Factorial,
    /// `(n) ↦ h_n / n!`.
    InverseFactorial,
}

pub fn symfunc_bridge_with(lambda: &IntPartition, scaling: Scaling) -> SymFunc {
    let c = lambda.parts().iter().fold(BigRational::one(), |acc, &k| match scaling {
        Scaling::Factorial => acc * factorial(k),
        Scaling::InverseFactorial => acc / factorial(k),
    });
    SymFunc::single(Basis::H, lambda.clone(), c)
}

/// `λ ↦ ∏ λ_i!·h_{λ_i}`.
pub fn symfunc_bridge(lambda: &IntPartition) -> SymFunc {
    symfunc_bridge_with(lambda, Scaling::Factorial)
}

fn bridge_vector(v: &FreeVector<IntPartition>, scaling: Scaling) -> SymFunc {
    SymFunc {
        basis: Basis::H,
        terms: v.map_linear(|l| symfunc_bridge_with(l, scaling).terms),
    }
}

/// `Δ h_λ = ∏_i Σ_j h_j ⊗ h_{λ_i - j}`, in `h ⊗ h`.
fn h_coproduct(lambda: &IntPartition) -> FreeVector<(IntPartition, IntPartition)> {
    lambda.parts().iter().fold(
        FreeVector::basis((IntPartition::empty(), IntPartition::empty())),
        |acc, &k| {
            let factor = FreeVector::from_ints((0..=k).map(|j| ((IntPartition::row(j), IntPartition::row(k - j)), 1)));
            acc.tensor(&factor)
                .map_linear(|((a, b), (c, d))| FreeVector::basis((a.union(c), b.union(d))))
        },
    )
}

fn tensor_to_monomial(
    v: &FreeVector<(IntPartition, IntPartition)>,
    basis: Basis,
) -> Result<FreeVector<(IntPartition, IntPartition)>> {
    v.try_map_linear(|(a, b)| {
        let ma = SymFunc::single(basis, a.clone(), BigRational::one()).to_monomial()?;
        let mb = SymFunc::single(basis, b.clone(), BigRational::one()).to_monomial()?;
        Ok(ma.terms.tensor(&mb.terms))
    })
}

/// A set partition of `{0, ..., |λ|-1}` with block sizes `λ`.
pub fn set_partition_of_shape(lambda: &IntPartition) -> SetPartition {
    let mut next = 0u8;
    let blocks = lambda
        .parts()
        .iter()
        .map(|&k| {
            let b: LabelSet = (next..next + k as u8).collect();
            next += k as u8;
            b
        })
        .collect();
    SetPartition::new(blocks).expect("consecutive blocks")
}

fn shape(p: &SetPartition) -> IntPartition {
    IntPartition::new(p.shape())
}

/// Coproduct of the Par basis element `λ`, through the Fock functor of set
/// partitions.
pub fn par_coproduct(lambda: &IntPartition) -> Result<FreeVector<(IntPartition, IntPartition)>> {
    let fam = Partitions::default();
    let class = orbit_canonicalize(&fam, &set_partition_of_shape(lambda))?;
    Ok(fock_coproduct(&fam, &class)?.map_linear(|(a, b)| FreeVector::basis((shape(&a.rep), shape(&b.rep)))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub algebra: CheckOutcome,
    pub coalgebra: CheckOutcome,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        self.algebra.passed() && self.coalgebra.passed()
    }
}

/// Checks `φ(λ ∪ μ) = φ(λ)φ(μ)` and `Δ∘φ = (φ⊗φ)∘Δ` on basis elements of
/// degree at most `max_degree`, comparing monomial expansions.
pub fn bridge_bialgebra_check(scaling: Scaling, max_degree: u32) -> Result<BridgeReport> {
    let mut algebra = CheckOutcome::default();
    let mut coalgebra = CheckOutcome::default();
    let all: Vec<IntPartition> = (0..=max_degree).flat_map(IntPartition::all).collect();
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() > max_degree {
                continue;
            }
            let joint = symfunc_bridge_with(&a.union(b), scaling).to_polynomial(DEFAULT_VARIABLES)?;
            let pa = symfunc_bridge_with(a, scaling).to_polynomial(DEFAULT_VARIABLES)?;
            let pb = symfunc_bridge_with(b, scaling).to_polynomial(DEFAULT_VARIABLES)?;
            algebra.record(poly_mul(&pa, &pb) == joint, || {
                format!("φ({a})·φ({b}) ≠ φ({})", a.union(b))
            });
        }
    }
    for lambda in &all {
        let image = symfunc_bridge_with(lambda, scaling);
        let lhs = image.terms.map_linear(h_coproduct);
        let rhs = par_coproduct(lambda)?.map_linear(|(a, b)| {
            symfunc_bridge_with(a, scaling)
                .terms
                .tensor(&symfunc_bridge_with(b, scaling).terms)
        });
        let (lhs, rhs) = (tensor_to_monomial(&lhs, Basis::H)?, tensor_to_monomial(&rhs, Basis::H)?);
        coalgebra.record(lhs == rhs, || format!("Δφ({lambda}) ≠ (φ⊗φ)Δ({lambda})"));
    }
    Ok(BridgeReport { algebra, coalgebra })
}

/// `p_n` written in the `h` basis by Newton's identity
/// `p_n = n h_n - Σ_{i<n} p_i h_{n-i}`.
pub fn power_sum_via_newton(n: u32) -> SymFunc {
    let mut ps: Vec<SymFunc> = vec![SymFunc::zero(Basis::H)];
    for k in 1..=n {
        let mut pk = SymFunc::single(Basis::H, IntPartition::row(k), rational(k as i64));
        for i in 1..k {
            let h = SymFunc::single(Basis::H, IntPartition::row(k - i), BigRational::one());
            let term = ps[i as usize].mul(&h).expect("same basis");
            pk.terms = pk.terms.sub(&term.terms);
        }
        ps.push(pk);
    }
    ps.swap_remove(n as usize)
}

/// How an expression compares with `p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Proportionality {
    Exact,
    Scalar(BigRational),
    Neither,
}

impl fmt::Display for Proportionality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proportionality::Exact => f.write_str("equal to p_n"),
            Proportionality::Scalar(c) => write!(f, "{c}·p_n"),
            Proportionality::Neither => f.write_str("not proportional to p_n"),
        }
    }
}

fn classify(f: &SymFunc, n: u32) -> Result<Proportionality> {
    let m = f.to_monomial()?;
    let c = m.terms.coeff(&IntPartition::row(n));
    if c.is_zero() || m.terms != FreeVector::from_terms([(IntPartition::row(n), c.clone())]) {
        return Ok(Proportionality::Neither);
    }
    Ok(if c.is_one() {
        Proportionality::Exact
    } else {
        Proportionality::Scalar(c)
    })
}

/// The printed Doubilet-style expression read three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubiletReadings {
    /// `0̂` = one block, `h_{λ(Φ)}` as printed.
    pub refinement_order: Proportionality,
    /// `0̂` = all singletons, `h_{λ(Φ)}` as printed.
    pub coarsening_order: Proportionality,
    /// `0̂` = one block, `h_{λ(Φ)}` replaced by the bridge image of `λ(Φ)`.
    pub refinement_order_bridged: Proportionality,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumReport {
    pub n: u32,
    /// `Σ_τ μ(π_I, τ)[λ(τ)]` in the Par basis.
    pub par_image: FreeVector<IntPartition>,
    /// Its bridge image in the `h` basis.
    pub image: SymFunc,
    pub image_monomial: SymFunc,
    /// `c` with `image = c·p_n`, if proportional.
    pub scalar: Option<BigRational>,
    /// Newton's identity reproduces `p_n = m_(n)` in monomials.
    pub newton_consistent: bool,
    pub doubilet: DoubiletReadings,
}

impl PowerSumReport {
    pub fn to_json(&self) -> Value {
        let par: BTreeMap<String, String> = self
            .par_image
            .terms()
            .map(|(l, c)| (l.to_string(), c.to_string()))
            .collect();
        json!({
            "n": self.n,
            "par_image": par,
            "image": self.image.to_json(),
            "image_monomial": self.image_monomial.to_json(),
            "scalar": self.scalar.as_ref().map(|c| c.to_string()),
            "newton_consistent": self.newton_consistent,
            "doubilet": {
                "refinement_order": self.doubilet.refinement_order.to_string(),
                "coarsening_order": self.doubilet.coarsening_order.to_string(),
                "refinement_order_bridged": self.doubilet.refinement_order_bridged.to_string(),
            },
        })
    }
}

/// Largest degree handled by [`power_sum_identity_check`].
pub const MAX_POWER_SUM_DEGREE: u32 = 6;

fn doubilet(n: u32, order: OrderSpec, bridged: bool) -> Result<Proportionality> {
    let fam = Partitions::default();
    let labels = LabelSet::range(n as usize);
    let p = FamilyPoset::new(&fam, labels, order);
    let (bottom, top) = if order.reversed {
        (SetPartition::discrete(labels), SetPartition::one_block(labels))
    } else {
        (SetPartition::one_block(labels), SetPartition::discrete(labels))
    };
    let row = mobius_row(&p, &bottom)?;
    let mut sum = SymFunc::zero(Basis::H);
    for (phi, m) in row.iter() {
        let lambda = shape(phi);
        let term = if bridged {
            symfunc_bridge(&lambda)
        } else {
            SymFunc::single(Basis::H, lambda, BigRational::one())
        };
        sum.terms.add_scaled(&term.terms, &rational(*m));
    }
    sum.terms = sum.terms.scale(&(BigRational::one() / rational(row[&top])));
    classify(&sum, n)
}

/// Sends `ω_{π_I}` in the partition lattice through the Fock functor and the
/// bridge, and compares the result with `p_n`.
pub fn power_sum_identity_check(n: u32) -> Result<PowerSumReport> {
    if n == 0 || n > MAX_POWER_SUM_DEGREE {
        return Err(Error::Unsupported(format!(
            "power sums in degree {n} (supported: 1..={MAX_POWER_SUM_DEGREE})"
        )));
    }
    let fam = Partitions::default();
    let labels = LabelSet::range(n as usize);
    let p = FamilyPoset::new(&fam, labels, OrderSpec::NATIVE);
    let omega = inverted_basis(&p, &SetPartition::one_block(labels))?;
    let par_image = omega.map_linear(|t| FreeVector::basis(shape(t)));
    let image = bridge_vector(&par_image, Scaling::Factorial);
    let image_monomial = image.to_monomial()?;
    let scalar = match classify(&image, n)? {
        Proportionality::Exact => Some(BigRational::one()),
        Proportionality::Scalar(c) => Some(c),
        Proportionality::Neither => None,
    };
    let newton_consistent =
        power_sum_via_newton(n).to_monomial()? == SymFunc::single(Basis::M, IntPartition::row(n), BigRational::one());
    let doubilet = DoubiletReadings {
        refinement_order: doubilet(n, OrderSpec::NATIVE, false)?,
        coarsening_order: doubilet(n, OrderSpec::NATIVE.reversed(), false)?,
        refinement_order_bridged: doubilet(n, OrderSpec::NATIVE, true)?,
    };
    Ok(PowerSumReport {
        n,
        par_image,
        image,
        image_monomial,
        scalar,
        newton_consistent,
        doubilet,
    })
}

/// Which Möbius endpoint and which block-count exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CharPolyConvention {
    /// `true`: `μ(τ, 1̂)` with `1̂` the discrete partition; `false`: `μ(π_I, τ)`.
    pub upper: bool,
    pub exponent: Exponent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exponent {
    Blocks,
    BlocksMinusOne,
    CoBlocks,
}

impl Exponent {
    fn apply(self, n: usize, blocks: usize) -> u32 {
        (match self {
            Exponent::Blocks => blocks,
            Exponent::BlocksMinusOne => blocks - 1,
            Exponent::CoBlocks => n - blocks,
        }) as u32
    }
}

impl fmt::Display for CharPolyConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = if self.upper { "μ(τ, 1̂)" } else { "μ(π_I, τ)" };
        let e = match self.exponent {
            Exponent::Blocks => "t^ℓ(τ)",
            Exponent::BlocksMinusOne => "t^(ℓ(τ)-1)",
            Exponent::CoBlocks => "t^(n-ℓ(τ))",
        };
        write!(f, "Σ {m} {e}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPolyReport {
    pub n: usize,
    pub polynomials: Vec<(CharPolyConvention, IntPolynomial)>,
    pub matching: Vec<CharPolyConvention>,
    /// Value of the first matching polynomial at `t = -1`.
    pub value_at_minus_one: Option<i64>,
}

impl CharPolyReport {
    pub fn passed(&self) -> bool {
        let expected: i64 = (1..=self.n as i64).product::<i64>() * if self.n.is_multiple_of(2) { 1 } else { -1 };
        !self.matching.is_empty() && self.value_at_minus_one == Some(expected)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "conventions": self.polynomials.iter().map(|(c, p)| json!({
                "convention": c.to_string(),
                "polynomial": p.to_json(),
                "matches": self.matching.contains(c),
            })).collect::<Vec<_>>(),
            "value_at_minus_one": self.value_at_minus_one,
            "passed": self.passed(),
        })
    }
}

pub const MAX_CHAR_POLY_DEGREE: usize = 7;

/// Tries every convention against `t(t-1)...(t-n+1)`.
pub fn partition_char_poly_check(n: usize) -> Result<CharPolyReport> {
    if n == 0 || n > MAX_CHAR_POLY_DEGREE {
        return Err(Error::Unsupported(format!(
            "partition lattice of rank {n} (supported: 1..={MAX_CHAR_POLY_DEGREE})"
        )));
    }
    let fam = Partitions::default();
    let labels = LabelSet::range(n);
    let down = FamilyPoset::new(&fam, labels, OrderSpec::NATIVE);
    let up = FamilyPoset::new(&fam, labels, OrderSpec::NATIVE.reversed());
    let lower = mobius_row(&down, &SetPartition::one_block(labels))?;
    // μ(τ, 1̂) in the refinement order is μ(1̂, τ) in the reversed order
    let upper = mobius_row(&up, &SetPartition::discrete(labels))?;
    let target = IntPolynomial::falling_factorial(n as u32);
    let mut polynomials = Vec::new();
    let mut matching = Vec::new();
    for is_upper in [false, true] {
        for exponent in [Exponent::Blocks, Exponent::BlocksMinusOne, Exponent::CoBlocks] {
            let row = if is_upper { &upper } else { &lower };
            let mut poly = IntPolynomial::zero();
            for (tau, m) in row.iter() {
                poly.add_term(exponent.apply(n, tau.len()), *m);
            }
            let c = CharPolyConvention {
                upper: is_upper,
                exponent,
            };
            if poly == target {
                matching.push(c);
            }
            polynomials.push((c, poly));
        }
    }
    let value_at_minus_one = matching
        .first()
        .and_then(|c| polynomials.iter().find(|(d, _)| d == c))
        .map(|(_, p)| p.eval(-1));
    Ok(CharPolyReport {
        n,
        polynomials,
        matching,
        value_at_minus_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        assert_eq!(IntPartition::all(4).len(), 5);
        assert_eq!(IntPartition::all(6).len(), 11);
        assert_eq!(part("1+3+2").to_string(), "3+2+1");
        assert_eq!(part("0"), IntPartition::empty());
        assert!("1+0".parse::<IntPartition>().is_err());
    }

    #[test]
    fn monomial_expansions() {
        // h_2 = m_2 + m_11, p_2 = m_2
        let h2 = SymFunc::single(Basis::H, part("2"), BigRational::one())
            .to_monomial()
            .unwrap();
        assert_eq!(h2.terms, FreeVector::from_ints([(part("2"), 1), (part("1+1"), 1)]));
        let h11 = SymFunc::single(Basis::H, part("1+1"), BigRational::one())
            .to_monomial()
            .unwrap();
        assert_eq!(h11.terms, FreeVector::from_ints([(part("2"), 1), (part("1+1"), 2)]));
        let p21 = SymFunc::single(Basis::P, part("2+1"), BigRational::one())
            .to_monomial()
            .unwrap();
        assert_eq!(p21.terms, FreeVector::from_ints([(part("3"), 1), (part("2+1"), 1)]));
    }

    #[test]
    fn newton_identity_in_low_degree() {
        // p_3 = 3h_3 - 3h_2h_1 + h_1^3
        let p3 = power_sum_via_newton(3);
        assert_eq!(
            p3.terms,
            FreeVector::from_ints([(part("3"), 3), (part("2+1"), -3), (part("1+1+1"), 1)])
        );
        for n in 1..=6 {
            assert!(power_sum_via_newton(n)
                .equals(&SymFunc::single(Basis::P, IntPartition::row(n), BigRational::one()))
                .unwrap());
        }
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(
            symfunc_bridge(&part("1")).terms,
            FreeVector::from_ints([(part("1"), 1)])
        );
        assert_eq!(
            symfunc_bridge(&part("2")).terms,
            FreeVector::from_ints([(part("2"), 2)])
        );
        assert_eq!(
            symfunc_bridge(&part("2+1")).terms,
            FreeVector::from_ints([(part("2+1"), 2)])
        );
    }

    #[test]
    fn par_coproduct_of_two() {
        let d = par_coproduct(&part("2")).unwrap();
        let e = IntPartition::empty();
        assert_eq!(
            d,
            FreeVector::from_ints([
                ((part("2"), e.clone()), 1),
                ((e, part("2")), 1),
                ((part("1"), part("1")), 2)
            ])
        );
    }

    #[test]
    fn json_round_trip() {
        let f = SymFunc {
            basis: Basis::M,
            terms: FreeVector::from_terms([(part("3+2+1"), BigRational::new(1.into(), 2.into()))]),
        };
        let j = f.to_json();
        assert_eq!(j.to_string(), r#"{"basis":"m","degree":6,"terms":{"3+2+1":"1/2"}}"#);
        assert_eq!(SymFunc::from_json(&j).unwrap(), f);
    }

    #[test]
    fn char_poly_small() {
        let r = partition_char_poly_check(1).unwrap();
        assert!(r.passed());
        assert_eq!(r.value_at_minus_one, Some(-1));
        let r = partition_char_poly_check(3).unwrap();
        assert!(r.passed());
        assert_eq!(r.value_at_minus_one, Some(-6));
    }
}
