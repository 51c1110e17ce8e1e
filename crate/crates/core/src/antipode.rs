//! Antipodes: the defining alternating sum over ordered set partitions, the
//! closed form over the reassembly order, and the identities relating them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{ensure_budget, Error, Result};
use crate::label::{fubini, ordered_set_partitions, proper_splits, splits, LabelSet, UnorderedSetPartition};
use crate::linear::{inverted_basis, rational, vector_to_json, Comparison, FreeVector};
use crate::order::FamilyPoset;
use crate::poset::{graded_char_eval, Poset, Side};
use crate::species::{reassemble, CheckOutcome, OrderSpec, Species};

/// Unordered factorization into `m`-indecomposables; `factors[i]` lives on
/// `partition.blocks()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<O> {
    pub partition: UnorderedSetPartition,
    pub factors: Vec<O>,
}

impl<O> Factorization<O> {
    /// `ℓ(x)`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

fn factor_blocks<F: Species + ?Sized>(fam: &F, x: &F::Obj, reverse: bool) -> Result<Vec<LabelSet>> {
    let labels = fam.labels(x);
    if labels.is_empty() {
        return Ok(vec![]);
    }
    let mut candidates: Vec<(LabelSet, LabelSet)> = proper_splits(labels).collect();
    if reverse {
        candidates.reverse();
    }
    for (s, t) in candidates {
        let (a, b) = fam.comult(x, s, t)?;
        if fam.mult(&a, &b)? == *x {
            let mut out = factor_blocks(fam, &a, reverse)?;
            out.extend(factor_blocks(fam, &b, reverse)?);
            return Ok(out);
        }
    }
    Ok(vec![labels])
}

/// Splits `x` along bipartitions until nothing splits. The search runs in
/// both directions and must land on the same blocks.
pub fn factorize<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<Factorization<F::Obj>> {
    let forward = UnorderedSetPartition::new(factor_blocks(fam, x, false)?)?;
    let backward = UnorderedSetPartition::new(factor_blocks(fam, x, true)?)?;
    if forward != backward {
        return Err(Error::NonUniqueFactorization(fam.encode(x)));
    }
    let factors = forward.blocks().iter().map(|&b| fam.restrict(x, b)).collect();
    Ok(Factorization {
        partition: forward,
        factors,
    })
}

/// `ℓ(x)`, the number of indecomposable factors.
pub fn factor_count<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<usize> {
    Ok(factorize(fam, x)?.len())
}

/// `Σ_A (-1)^{|A|} m_A ∘ Δ_A(x)` over ordered set partitions `A`.
pub fn takeuchi_antipode<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<FreeVector<F::Obj>> {
    let labels = fam.labels(x);
    ensure_budget(
        format!("ordered set partitions of {labels}"),
        fubini(labels.len()),
        fam.budget(),
    )?;
    let compositions = ordered_set_partitions(labels);
    let counts = compositions
        .par_iter()
        .map(|a| {
            let sign = if a.len() % 2 == 0 { 1 } else { -1 };
            reassemble(fam, a, x).map(|y| (y, sign))
        })
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<F::Obj, i64>, term| {
            let (y, sign) = term?;
            *acc.entry(y).or_default() += sign;
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            Ok(a)
        })?;
    Ok(FreeVector::from_ints(counts))
}

/// Commutativity and cocommutativity on every split of `x`.
pub fn self_adjoint_at<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<()> {
    let labels = fam.labels(x);
    for (s, t) in splits(labels) {
        let (a, b) = fam.comult(x, s, t)?;
        let (b2, a2) = fam.comult(x, t, s)?;
        let ok = a == a2 && b == b2 && fam.mult(&a, &b)? == fam.mult(&b, &a)?;
        if !ok {
            return Err(Error::NotSelfAdjoint {
                family: fam.name().to_string(),
                witness: format!("{} at split ({s}, {t})", fam.encode(x)),
            });
        }
    }
    Ok(())
}

/// The closed-form antipode and, alongside it, the evaluation that takes the
/// Möbius function at the lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm<O: Ord> {
    /// `Σ_y (Σ_{x <= z <= y} (-1)^{ℓ(z)} μ(z, y)) y`; this is the antipode.
    pub upper: FreeVector<O>,
    /// `Σ_y (Σ_{x <= z <= y} μ(x, z) (-1)^{ℓ(z)}) y`.
    pub lower: FreeVector<O>,
}

impl<O: Ord + Clone> ClosedForm<O> {
    /// `lower - upper`.
    pub fn delta(&self) -> FreeVector<O> {
        self.lower.sub(&self.upper)
    }
}

/// Evaluates both characteristic sums over the reassembly up-set of `x`.
pub fn closed_form_antipode<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<ClosedForm<F::Obj>> {
    self_adjoint_at(fam, x)?;
    let labels = fam.labels(x);
    let p = FamilyPoset::new(fam, labels, OrderSpec::REASSEMBLY);
    let up = p.upset(x)?;
    let mut ell = HashMap::new();
    for z in &up {
        ell.insert(z.clone(), factor_count(fam, z)? as u32);
    }
    let grading = |z: &F::Obj| ell[z];
    let mut upper = FreeVector::zero();
    let mut lower = FreeVector::zero();
    for y in &up {
        upper.add_int(y.clone(), graded_char_eval(&p, x, y, grading, Side::Upper, -1)?);
        lower.add_int(y.clone(), graded_char_eval(&p, x, y, grading, Side::Lower, -1)?);
    }
    Ok(ClosedForm { upper, lower })
}

/// Both sides of `S(ω_x) = (-1)^{ℓ(x)} ω_x` in the reassembly order.
pub fn antipode_on_inverted_check<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<Comparison<F::Obj>> {
    let p = FamilyPoset::new(fam, fam.labels(x), OrderSpec::REASSEMBLY);
    let omega = inverted_basis(&p, x)?;
    let lhs = omega.try_map_linear(|y| takeuchi_antipode(fam, y))?;
    let sign = if factor_count(fam, x)? % 2 == 0 { 1 } else { -1 };
    let rhs = omega.scale(&rational(sign));
    Ok(Comparison { lhs, rhs })
}

/// Checks `Σ_{S ⊔ T = I} m(S(x|_S), x|_T) = ε(x)` and the mirrored identity
/// for every structure on `{0, ..., k-1}`, `k <= n`.
pub fn antipode_axiom_check<F, A>(fam: &F, n: usize, antipode: A) -> Result<CheckOutcome>
where
    F: Species + ?Sized,
    A: Fn(&F::Obj) -> Result<FreeVector<F::Obj>>,
{
    let mut out = CheckOutcome::default();
    let mut memo: HashMap<F::Obj, FreeVector<F::Obj>> = HashMap::new();
    let mut s_of = |y: &F::Obj| -> Result<FreeVector<F::Obj>> {
        if let Some(v) = memo.get(y) {
            return Ok(v.clone());
        }
        let v = antipode(y)?;
        memo.insert(y.clone(), v.clone());
        Ok(v)
    };
    for k in 0..=n {
        let labels = LabelSet::range(k);
        let expected = if k == 0 {
            FreeVector::basis(fam.unit())
        } else {
            FreeVector::zero()
        };
        for x in fam.carrier(labels)? {
            let mut left = FreeVector::zero();
            let mut right = FreeVector::zero();
            for (s, t) in splits(labels) {
                let (a, b) = fam.comult(&x, s, t)?;
                let sa = s_of(&a)?;
                let sb = s_of(&b)?;
                for (y, c) in sa.terms() {
                    left.add_term(fam.mult(y, &b)?, c.clone());
                }
                for (y, c) in sb.terms() {
                    right.add_term(fam.mult(&a, y)?, c.clone());
                }
            }
            out.record(left == expected && right == expected, || {
                format!("{}: m(S ⊗ id)Δ = {left:?}, m(id ⊗ S)Δ = {right:?}", fam.encode(&x))
            });
        }
    }
    Ok(out)
}

/// `S(S(x)) = x` for every structure on `{0, ..., k-1}`, `k <= n`.
pub fn antipode_involution_check<F: Species + ?Sized>(fam: &F, n: usize) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::default();
    for k in 0..=n {
        for x in fam.carrier(LabelSet::range(k))? {
            let twice = takeuchi_antipode(fam, &x)?.try_map_linear(|y| takeuchi_antipode(fam, y))?;
            out.record(twice == FreeVector::basis(x.clone()), || fam.encode(&x));
        }
    }
    Ok(out)
}

/// Which antipode computation produced a vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Takeuchi,
    ClosedUpper,
    ClosedLowerLiteral,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Takeuchi => "takeuchi",
            Method::ClosedUpper => "closed-upper",
            Method::ClosedLowerLiteral => "closed-lower-paper-literal",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Vector JSON with a `"method"` field.
pub fn antipode_to_json<F: Species + ?Sized>(fam: &F, x: &F::Obj, v: &FreeVector<F::Obj>, method: Method) -> Value {
    let mut j = vector_to_json(fam, fam.labels(x), v);
    j["method"] = Value::from(method.tag());
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Graph, Graphs, Partitions};

    #[test]
    fn factorization_examples() {
        let g = Graphs::default();
        let k3 = Graph::complete(LabelSet::range(3));
        assert_eq!(factor_count(&g, &k3).unwrap(), 1);
        let x = g.parse("G:n=3;E=0-1").unwrap();
        let f = factorize(&g, &x).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.factors[0], g.parse("G:V=0,1;E=0-1").unwrap());
        assert_eq!(f.factors[1], g.parse("G:V=2;E=").unwrap());
        assert_eq!(factor_count(&g, &Graph::edgeless(LabelSet::range(4))).unwrap(), 4);
        assert_eq!(factor_count(&g, &g.unit()).unwrap(), 0);
    }

    #[test]
    fn takeuchi_examples() {
        let g = Graphs::default();
        assert_eq!(takeuchi_antipode(&g, &g.unit()).unwrap(), FreeVector::basis(g.unit()));
        let pt = g.parse("G:V=3;E=").unwrap();
        assert_eq!(takeuchi_antipode(&g, &pt).unwrap(), FreeVector::from_ints([(pt, -1)]));
        let p = Partitions::default();
        let x = p.parse("P:n=2;B=01").unwrap();
        assert_eq!(
            takeuchi_antipode(&p, &x).unwrap(),
            FreeVector::from_ints([(x, -1), (p.parse("P:n=2;B=0|1").unwrap(), 2)])
        );
    }

    #[test]
    fn closed_form_two_chain() {
        let p = Partitions::default();
        let x = p.parse("P:n=2;B=01").unwrap();
        let d = p.parse("P:n=2;B=0|1").unwrap();
        let c = closed_form_antipode(&p, &x).unwrap();
        assert_eq!(c.upper, takeuchi_antipode(&p, &x).unwrap());
        assert_eq!(c.lower, FreeVector::from_ints([(x, -1), (d.clone(), -2)]));
        assert_eq!(c.delta(), FreeVector::from_ints([(d, -4)]));
    }

    #[test]
    fn takeuchi_budget() {
        let g = Graphs { budget: 100 };
        let x = Graph::edgeless(LabelSet::range(5));
        assert!(matches!(takeuchi_antipode(&g, &x), Err(Error::CarrierOverflow { .. })));
    }

    #[test]
    fn json_carries_method() {
        let g = Graphs::default();
        let k2 = g.parse("G:n=2;E=0-1").unwrap();
        let v = takeuchi_antipode(&g, &k2).unwrap();
        let j = antipode_to_json(&g, &k2, &v, Method::Takeuchi);
        assert_eq!(
            j.to_string(),
            r#"{"ambient":"graphs:n=2","method":"takeuchi","terms":{"G:n=2;E=":"2","G:n=2;E=0-1":"-1"}}"#
        );
    }
}
