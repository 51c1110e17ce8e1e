//! Structure families with relabeling, their set-level monoid and comonoid
//! maps, k-ary composition, and exhaustive axiom checkers.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use crate::error::{ensure_budget, Error, Result};
use crate::label::{splits, LabelSet, OrderedSetPartition, Relabeling};

/// Which binary product a computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Product {
    /// The Hopf monoid multiplication `m`.
    Mult,
    /// The free product `□`.
    Free,
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::Mult => "m",
            Product::Free => "□",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// The family's own order (edge, hyperedge or face inclusion; refinement).
    Native,
    /// `x <= y` iff `y` is obtained from `x` by splitting and remerging.
    Reassembly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrderSpec {
    pub kind: OrderKind,
    pub reversed: bool,
}

impl OrderSpec {
    pub const NATIVE: OrderSpec = OrderSpec {
        kind: OrderKind::Native,
        reversed: false,
    };
    pub const REASSEMBLY: OrderSpec = OrderSpec {
        kind: OrderKind::Reassembly,
        reversed: false,
    };

    pub fn reversed(self) -> OrderSpec {
        OrderSpec {
            reversed: !self.reversed,
            ..self
        }
    }
}

/// An adjunction `Δ ⊣ product` in `order`. When `order` is a reversal, the
/// same data reads as `product ⊣ Δ` in the unreversed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdjunctionSpec {
    pub order: OrderSpec,
    pub product: Product,
}

impl fmt::Display for AdjunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match self.order.kind {
            OrderKind::Native => "native order",
            OrderKind::Reassembly => "reassembly order",
        };
        if self.order.reversed {
            write!(f, "{} ⊣ Δ ({order})", self.product)
        } else {
            write!(f, "Δ ⊣ {} ({order})", self.product)
        }
    }
}

/// A connected set species with a set-level Hopf monoid structure.
///
/// `mult(x, y)` is `m_{S,T}` for `S`, `T` the label sets of `x` and `y`; the
/// comultiplication defaults to restriction to both sides.
pub trait Species: Sync {
    type Obj: Clone + Ord + Hash + fmt::Debug + Send + Sync;

    fn name(&self) -> &str;

    /// Element budget for every enumeration done on behalf of this family.
    fn budget(&self) -> usize;

    fn labels(&self, x: &Self::Obj) -> LabelSet;

    /// The single structure on the empty label set.
    fn unit(&self) -> Self::Obj;

    /// Number of structures on `labels` (saturating).
    fn carrier_size(&self, labels: LabelSet) -> u128;

    /// All structures on `labels`, with no budget check.
    fn enumerate(&self, labels: LabelSet) -> Vec<Self::Obj>;

    fn relabel(&self, x: &Self::Obj, f: &Relabeling) -> Self::Obj;

    fn mult(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Obj>;

    fn restrict(&self, x: &Self::Obj, s: LabelSet) -> Self::Obj;

    fn free_mult(&self, _x: &Self::Obj, _y: &Self::Obj) -> Result<Self::Obj> {
        Err(Error::Unsupported(format!("free product on {}", self.name())))
    }

    fn has_free_mult(&self) -> bool {
        false
    }

    fn native_leq(&self, a: &Self::Obj, b: &Self::Obj) -> bool;

    fn encode(&self, x: &Self::Obj) -> String;

    fn parse(&self, s: &str) -> Result<Self::Obj>;

    /// The adjunction used to extract primitives.
    fn primary_adjunction(&self) -> AdjunctionSpec;

    /// All structures on `labels`, failing above the budget.
    fn carrier(&self, labels: LabelSet) -> Result<Vec<Self::Obj>> {
        ensure_budget(
            format!("{} on {}", self.name(), labels),
            self.carrier_size(labels),
            self.budget(),
        )?;
        Ok(self.enumerate(labels))
    }

    /// `Δ_{S,T}(x)`.
    fn comult(&self, x: &Self::Obj, s: LabelSet, t: LabelSet) -> Result<(Self::Obj, Self::Obj)> {
        let labels = self.labels(x);
        if !s.is_disjoint(t) {
            return Err(Error::LabelOverlap {
                left: s.to_string(),
                right: t.to_string(),
            });
        }
        if s.union(t) != labels {
            return Err(Error::LabelMismatch {
                expected: labels.to_string(),
                found: s.union(t).to_string(),
            });
        }
        Ok((self.restrict(x, s), self.restrict(x, t)))
    }

    fn product(&self, kind: Product, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Obj> {
        match kind {
            Product::Mult => self.mult(x, y),
            Product::Free => self.free_mult(x, y),
        }
    }
}

/// `m_{A_1, ..., A_k}(parts)`, folded from the left.
pub fn compose_mult<F: Species + ?Sized>(fam: &F, a: &OrderedSetPartition, parts: &[F::Obj]) -> Result<F::Obj> {
    compose_product(fam, Product::Mult, a, parts)
}

pub fn compose_product<F: Species + ?Sized>(
    fam: &F,
    kind: Product,
    a: &OrderedSetPartition,
    parts: &[F::Obj],
) -> Result<F::Obj> {
    if parts.len() != a.len() {
        return Err(Error::LabelMismatch {
            expected: format!("{} parts", a.len()),
            found: format!("{} parts", parts.len()),
        });
    }
    for (block, part) in a.blocks().iter().zip(parts) {
        let l = fam.labels(part);
        if l != *block {
            return Err(Error::LabelMismatch {
                expected: block.to_string(),
                found: l.to_string(),
            });
        }
    }
    let Some((first, rest)) = parts.split_first() else {
        return Ok(fam.unit());
    };
    rest.iter().try_fold(first.clone(), |acc, p| fam.product(kind, &acc, p))
}

/// `Δ_{A_1, ..., A_k}(x)`: split off the first block, then recurse on the rest.
pub fn compose_comult<F: Species + ?Sized>(fam: &F, a: &OrderedSetPartition, x: &F::Obj) -> Result<Vec<F::Obj>> {
    let labels = fam.labels(x);
    if a.ground() != labels {
        return Err(Error::LabelMismatch {
            expected: labels.to_string(),
            found: a.ground().to_string(),
        });
    }
    let mut out = Vec::with_capacity(a.len());
    let mut rest = x.clone();
    let mut remaining = labels;
    for (i, &block) in a.blocks().iter().enumerate() {
        if i + 1 == a.len() {
            out.push(rest.clone());
            break;
        }
        remaining = remaining.difference(block);
        let (head, tail) = fam.comult(&rest, block, remaining)?;
        out.push(head);
        rest = tail;
    }
    Ok(out)
}

/// `m_A ∘ Δ_A (x)`.
pub fn reassemble<F: Species + ?Sized>(fam: &F, a: &OrderedSetPartition, x: &F::Obj) -> Result<F::Obj> {
    let parts = compose_comult(fam, a, x)?;
    compose_mult(fam, a, &parts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Functoriality,
    MultNaturality,
    ComultNaturality,
    Unitality,
    Counitality,
    Associativity,
    Coassociativity,
    Compatibility,
    Commutativity,
    Cocommutativity,
    RelabelMonotone,
    MultMonotone,
    ComultMonotone,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Functoriality => "functoriality",
            Axiom::MultNaturality => "naturality (m)",
            Axiom::ComultNaturality => "naturality (Δ)",
            Axiom::Unitality => "unitality",
            Axiom::Counitality => "counitality",
            Axiom::Associativity => "associativity",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Compatibility => "compatibility",
            Axiom::Commutativity => "commutativity",
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::RelabelMonotone => "relabeling is an order isomorphism",
            Axiom::MultMonotone => "m is order-preserving",
            Axiom::ComultMonotone => "Δ is order-preserving",
        }
    }
}

/// How many cases an exhaustive check ran and the first counterexample.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub checked: usize,
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub family: String,
    pub n: usize,
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.outcome.passed())
    }

    pub fn get(&self, axiom: Axiom) -> Option<&CheckOutcome> {
        self.results.iter().find(|r| r.axiom == axiom).map(|r| &r.outcome)
    }

    pub fn commutative(&self) -> bool {
        self.get(Axiom::Commutativity).is_some_and(|o| o.passed())
    }

    pub fn cocommutative(&self) -> bool {
        self.get(Axiom::Cocommutativity).is_some_and(|o| o.passed())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.results.iter().filter(|r| !r.outcome.passed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axioms for {} up to n = {}", self.family, self.n)?;
        for r in &self.results {
            let status = if r.outcome.passed() { "pass" } else { "FAIL" };
            write!(f, "  {status} {} ({} cases)", r.axiom.name(), r.outcome.checked)?;
            if let Some(w) = &r.outcome.witness {
                write!(f, ": {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Structures on every subset of `{0, ..., n-1}`.
pub(crate) struct Carriers<O> {
    by_labels: HashMap<LabelSet, Vec<O>>,
}

impl<O: Clone> Carriers<O> {
    pub(crate) fn new<F: Species<Obj = O> + ?Sized>(fam: &F, n: usize) -> Result<Self> {
        let mut by_labels = HashMap::new();
        for s in LabelSet::range(n).subsets() {
            by_labels.insert(s, fam.carrier(s)?);
        }
        Ok(Carriers { by_labels })
    }

    pub(crate) fn on(&self, s: LabelSet) -> &[O] {
        &self.by_labels[&s]
    }
}

/// Exhaustively checks every monoid, comonoid and Hopf axiom (plus
/// commutativity, cocommutativity and order-preservation under the native
/// order) on label sets `{0, ..., k-1}` for `k <= n`.
pub fn verify_axioms<F: Species + ?Sized>(fam: &F, n: usize) -> Result<AxiomReport> {
    let carriers = Carriers::new(fam, n)?;
    let enc = |x: &F::Obj| fam.encode(x);
    let mut out: Vec<(Axiom, CheckOutcome)> = [
        Axiom::Functoriality,
        Axiom::MultNaturality,
        Axiom::ComultNaturality,
        Axiom::Unitality,
        Axiom::Counitality,
        Axiom::Associativity,
        Axiom::Coassociativity,
        Axiom::Compatibility,
        Axiom::Commutativity,
        Axiom::Cocommutativity,
        Axiom::RelabelMonotone,
        Axiom::MultMonotone,
        Axiom::ComultMonotone,
    ]
    .into_iter()
    .map(|a| (a, CheckOutcome::default()))
    .collect();
    let slot = |a: Axiom| out.iter().position(|(b, _)| *b == a).unwrap();
    let (fun, mnat, dnat, unit, counit, assoc, coassoc, compat, comm, cocomm, relmono, mmono, dmono) = (
        slot(Axiom::Functoriality),
        slot(Axiom::MultNaturality),
        slot(Axiom::ComultNaturality),
        slot(Axiom::Unitality),
        slot(Axiom::Counitality),
        slot(Axiom::Associativity),
        slot(Axiom::Coassociativity),
        slot(Axiom::Compatibility),
        slot(Axiom::Commutativity),
        slot(Axiom::Cocommutativity),
        slot(Axiom::RelabelMonotone),
        slot(Axiom::MultMonotone),
        slot(Axiom::ComultMonotone),
    );
    let one = fam.unit();

    for k in 0..=n {
        let ground = LabelSet::range(k);
        let perms = Relabeling::permutations(ground);
        let structures = carriers.on(ground);

        for x in structures {
            // unitality, counitality
            let l = fam.mult(&one, x)?;
            let r = fam.mult(x, &one)?;
            out[unit]
                .1
                .record(l == *x && r == *x, || format!("1·x or x·1 differs from x = {}", enc(x)));
            let a = fam.comult(x, ground, LabelSet::EMPTY)?;
            let b = fam.comult(x, LabelSet::EMPTY, ground)?;
            out[counit]
                .1
                .record(a == (x.clone(), one.clone()) && b == (one.clone(), x.clone()), || {
                    format!("trivial splits of {}", enc(x))
                });
        }

        // functoriality and relabeling monotonicity
        for x in structures {
            let id = fam.relabel(x, &Relabeling::identity(ground));
            out[fun].1.record(id == *x, || format!("identity moves {}", enc(x)));
            for s in &perms {
                let sx = fam.relabel(x, s);
                for t in perms.iter().take(6) {
                    let lhs = fam.relabel(&sx, t);
                    let rhs = fam.relabel(x, &s.then(t));
                    out[fun]
                        .1
                        .record(lhs == rhs, || format!("composition fails at {}", enc(x)));
                }
                for y in structures {
                    let before = fam.native_leq(x, y);
                    let after = fam.native_leq(&sx, &fam.relabel(y, s));
                    out[relmono].1.record(before == after, || {
                        format!("relabeling {:?} changes order of {} and {}", s, enc(x), enc(y))
                    });
                }
            }
        }

        for (s, t) in splits(ground) {
            let xs = carriers.on(s);
            let ys = carriers.on(t);
            for x in xs {
                for y in ys {
                    let xy = fam.mult(x, y)?;
                    let yx = fam.mult(y, x)?;
                    out[comm]
                        .1
                        .record(xy == yx, || format!("m({}, {}) is not symmetric", enc(x), enc(y)));
                    for p in &perms {
                        let lhs = fam.relabel(&xy, p);
                        let rhs = fam.mult(&fam.relabel(x, &p.restrict(s)), &fam.relabel(y, &p.restrict(t)))?;
                        out[mnat].1.record(lhs == rhs, || {
                            format!("relabeling {:?} does not commute with m({}, {})", p, enc(x), enc(y))
                        });
                    }
                    // order preservation of m
                    for x2 in xs.iter().filter(|x2| fam.native_leq(x, x2)) {
                        for y2 in ys.iter().filter(|y2| fam.native_leq(y, y2)) {
                            let ok = fam.native_leq(&xy, &fam.mult(x2, y2)?);
                            out[mmono].1.record(ok, || {
                                format!(
                                    "m not monotone at ({}, {}) <= ({}, {})",
                                    enc(x),
                                    enc(y),
                                    enc(x2),
                                    enc(y2)
                                )
                            });
                        }
                    }
                }
            }
            for x in structures {
                let (a, b) = fam.comult(x, s, t)?;
                let (b2, a2) = fam.comult(x, t, s)?;
                out[cocomm].1.record(a == a2 && b == b2, || {
                    format!("Δ_{{{s},{t}}} of {} is not symmetric", enc(x))
                });
                for p in &perms {
                    let lhs = fam.comult(&fam.relabel(x, p), p.apply_set(s), p.apply_set(t))?;
                    let rhs = (fam.relabel(&a, &p.restrict(s)), fam.relabel(&b, &p.restrict(t)));
                    out[dnat].1.record(lhs == rhs, || {
                        format!("relabeling {:?} does not commute with Δ of {}", p, enc(x))
                    });
                }
                for x2 in structures.iter().filter(|x2| fam.native_leq(x, x2)) {
                    let (c, d) = fam.comult(x2, s, t)?;
                    let ok = fam.native_leq(&a, &c) && fam.native_leq(&b, &d);
                    out[dmono]
                        .1
                        .record(ok, || format!("Δ not monotone at {} <= {}", enc(x), enc(x2)));
                }
            }
        }

        // three-way decompositions
        for s in ground.subsets() {
            let rest = ground.difference(s);
            for t in rest.subsets() {
                let r = rest.difference(t);
                for x in carriers.on(s) {
                    for y in carriers.on(t) {
                        for z in carriers.on(r) {
                            let lhs = fam.mult(&fam.mult(x, y)?, z)?;
                            let rhs = fam.mult(x, &fam.mult(y, z)?)?;
                            out[assoc].1.record(lhs == rhs, || {
                                format!("(xy)z != x(yz) for x = {}, y = {}, z = {}", enc(x), enc(y), enc(z))
                            });
                        }
                    }
                }
                for x in structures {
                    let (xs, xtr) = fam.comult(x, s, t.union(r))?;
                    let (xt, xr) = fam.comult(&xtr, t, r)?;
                    let (xst, xr2) = fam.comult(x, s.union(t), r)?;
                    let (xs2, xt2) = fam.comult(&xst, s, t)?;
                    out[coassoc].1.record(xs == xs2 && xt == xt2 && xr == xr2, || {
                        format!("coassociativity fails for {} on {s}|{t}|{r}", enc(x))
                    });
                }
            }
        }

        // compatibility
        for (s1, s2) in splits(ground) {
            for x in carriers.on(s1) {
                for y in carriers.on(s2) {
                    let xy = fam.mult(x, y)?;
                    for (t1, t2) in splits(ground) {
                        let (a, b) = (s1.intersection(t1), s1.intersection(t2));
                        let (c, d) = (s2.intersection(t1), s2.intersection(t2));
                        let lhs = fam.comult(&xy, t1, t2)?;
                        let (xa, xb) = fam.comult(x, a, b)?;
                        let (yc, yd) = fam.comult(y, c, d)?;
                        let rhs = (fam.mult(&xa, &yc)?, fam.mult(&xb, &yd)?);
                        out[compat].1.record(lhs == rhs, || {
                            format!(
                                "compatibility fails for x = {}, y = {} against {t1}|{t2}",
                                enc(x),
                                enc(y)
                            )
                        });
                    }
                }
            }
        }
    }

    Ok(AxiomReport {
        family: fam.name().to_string(),
        n,
        results: out
            .into_iter()
            .map(|(axiom, outcome)| AxiomResult { axiom, outcome })
            .collect(),
    })
}

/// `Δ_{S,T}(m_{S,T}(x, y)) = (x, y)` for every split of every `{0..k-1}`, `k <= n`.
pub fn verify_delta_after_mult_identity<F: Species + ?Sized>(fam: &F, n: usize) -> Result<CheckOutcome> {
    let carriers = Carriers::new(fam, n)?;
    let mut out = CheckOutcome::default();
    for k in 0..=n {
        for (s, t) in splits(LabelSet::range(k)) {
            for x in carriers.on(s) {
                for y in carriers.on(t) {
                    let back = fam.comult(&fam.mult(x, y)?, s, t)?;
                    out.record(back == (x.clone(), y.clone()), || {
                        format!("Δ(m({}, {})) does not recover the parts", fam.encode(x), fam.encode(y))
                    });
                }
            }
        }
    }
    Ok(out)
}
