//! Unlabeled shadows: relabeling orbits and the induced coproduct.

use crate::error::{ensure_budget, overflow, Result};
use crate::label::{proper_splits, splits, LabelSet, Relabeling};
use crate::linear::{FreeVector, TensorVector};
use crate::species::Species;

/// Largest degree for which orbits are canonicalized by brute force.
pub const MAX_ORBIT_DEGREE: usize = 7;

/// The orbit of a structure under relabeling, named by its representative
/// on `{0, ..., n-1}` with the smallest encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitClass<O> {
    pub degree: usize,
    pub rep: O,
}

pub fn orbit_canonicalize<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<OrbitClass<F::Obj>> {
    let labels = fam.labels(x);
    let n = labels.len();
    let factorial: u128 = (1..=n as u128).product();
    let what = format!("relabelings of {labels}");
    if n > MAX_ORBIT_DEGREE {
        return Err(overflow(what, factorial, fam.budget()));
    }
    ensure_budget(what, factorial, fam.budget())?;
    let std = Relabeling::standardize(labels);
    let base = fam.relabel(x, &std);
    let mut best: Option<(String, F::Obj)> = None;
    for sigma in Relabeling::permutations(LabelSet::range(n)) {
        let y = fam.relabel(&base, &sigma);
        let e = fam.encode(&y);
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            best = Some((e, y));
        }
    }
    let (_, rep) = best.expect("at least the identity");
    Ok(OrbitClass { degree: n, rep })
}

/// Orbit of every term, with coefficients accumulated.
pub fn fock_image<F: Species + ?Sized>(fam: &F, v: &FreeVector<F::Obj>) -> Result<FreeVector<OrbitClass<F::Obj>>> {
    v.try_map_linear(|x| Ok(FreeVector::basis(orbit_canonicalize(fam, x)?)))
}

fn coproduct_over<F: Species + ?Sized>(
    fam: &F,
    c: &OrbitClass<F::Obj>,
    decompositions: impl Iterator<Item = (LabelSet, LabelSet)>,
) -> Result<TensorVector<OrbitClass<F::Obj>>> {
    let mut out = FreeVector::zero();
    for (s, t) in decompositions {
        let (a, b) = fam.comult(&c.rep, s, t)?;
        out.add_int((orbit_canonicalize(fam, &a)?, orbit_canonicalize(fam, &b)?), 1);
    }
    Ok(out)
}

/// `Δ[x] = Σ_{S ⊔ T = I} [x|_S] ⊗ [x|_T]`.
pub fn fock_coproduct<F: Species + ?Sized>(
    fam: &F,
    c: &OrbitClass<F::Obj>,
) -> Result<TensorVector<OrbitClass<F::Obj>>> {
    let labels = fam.labels(&c.rep);
    ensure_budget(format!("splits of {labels}"), 1u128 << labels.len(), fam.budget())?;
    coproduct_over(fam, c, splits(labels))
}

/// The coproduct without the two trivial terms.
pub fn reduced_fock_coproduct<F: Species + ?Sized>(
    fam: &F,
    c: &OrbitClass<F::Obj>,
) -> Result<TensorVector<OrbitClass<F::Obj>>> {
    coproduct_over(fam, c, proper_splits(fam.labels(&c.rep)))
}

/// Whether the reduced coproduct of `v` vanishes.
pub fn fock_primitive_check<F: Species + ?Sized>(fam: &F, v: &FreeVector<OrbitClass<F::Obj>>) -> Result<bool> {
    Ok(v.try_map_linear(|c| reduced_fock_coproduct(fam, c))?.is_zero())
}
