//! Posets on `F[I]` built from a family: its native order or the reassembly
//! order, optionally reversed.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{ensure_budget, Result};
use crate::label::{bell, set_partitions, LabelSet};
use crate::poset::{MobiusCache, Poset};
use crate::species::{reassemble, OrderKind, OrderSpec, Species};

/// `{ m_A ∘ Δ_A(x) : A a set partition of I }`, sorted.
pub fn reassembly_upset<F: Species + ?Sized>(fam: &F, x: &F::Obj) -> Result<Vec<F::Obj>> {
    let labels = fam.labels(x);
    ensure_budget(format!("set partitions of {labels}"), bell(labels.len()), fam.budget())?;
    let mut out = BTreeSet::new();
    for a in set_partitions(labels) {
        out.insert(reassemble(fam, &a.to_ordered(), x)?);
    }
    Ok(out.into_iter().collect())
}

type UpsetCache<O> = HashMap<O, Arc<BTreeSet<O>>>;

/// `F[labels]` ordered by `order`. Carriers, up-sets and Möbius rows are
/// memoized, so one view should be reused across queries.
pub struct FamilyPoset<'a, F: Species + ?Sized> {
    fam: &'a F,
    labels: LabelSet,
    order: OrderSpec,
    carrier: OnceLock<Vec<F::Obj>>,
    reassembly: Mutex<UpsetCache<F::Obj>>,
    cache: MobiusCache<F::Obj>,
}

impl<'a, F: Species + ?Sized> FamilyPoset<'a, F> {
    pub fn new(fam: &'a F, labels: LabelSet, order: OrderSpec) -> Self {
        FamilyPoset {
            fam,
            labels,
            order,
            carrier: OnceLock::new(),
            reassembly: Mutex::new(HashMap::new()),
            cache: MobiusCache::default(),
        }
    }

    pub fn family(&self) -> &'a F {
        self.fam
    }

    pub fn labels(&self) -> LabelSet {
        self.labels
    }

    pub fn order(&self) -> OrderSpec {
        self.order
    }

    fn reassembly_set(&self, x: &F::Obj) -> Arc<BTreeSet<F::Obj>> {
        if let Some(s) = self.reassembly.lock().unwrap().get(x) {
            return s.clone();
        }
        // leq cannot fail, so an over-budget up-set is treated as {x}; callers
        // that need the full set go through `upset`, which reports overflow.
        let set: BTreeSet<F::Obj> = reassembly_upset(self.fam, x)
            .map(|v| v.into_iter().collect())
            .unwrap_or_else(|_| BTreeSet::from([x.clone()]));
        let set = Arc::new(set);
        self.reassembly.lock().unwrap().insert(x.clone(), set.clone());
        set
    }

    fn unreversed_leq(&self, a: &F::Obj, b: &F::Obj) -> bool {
        match self.order.kind {
            OrderKind::Native => self.fam.native_leq(a, b),
            OrderKind::Reassembly => self.fam.labels(a) == self.fam.labels(b) && self.reassembly_set(a).contains(b),
        }
    }
}

impl<F: Species + ?Sized> Poset for FamilyPoset<'_, F> {
    type Elem = F::Obj;

    fn leq(&self, a: &F::Obj, b: &F::Obj) -> bool {
        if self.order.reversed {
            self.unreversed_leq(b, a)
        } else {
            self.unreversed_leq(a, b)
        }
    }

    fn carrier(&self) -> Result<Vec<F::Obj>> {
        if let Some(c) = self.carrier.get() {
            return Ok(c.clone());
        }
        let c = self.fam.carrier(self.labels)?;
        Ok(self.carrier.get_or_init(|| c).clone())
    }

    fn upset(&self, x: &F::Obj) -> Result<Vec<F::Obj>> {
        if self.order.kind == OrderKind::Reassembly && !self.order.reversed {
            return reassembly_upset(self.fam, x);
        }
        Ok(self.carrier()?.into_iter().filter(|y| self.leq(x, y)).collect())
    }

    fn describe(&self, x: &F::Obj) -> String {
        self.fam.encode(x)
    }

    fn contains(&self, x: &F::Obj) -> bool {
        self.fam.labels(x) == self.labels
    }

    fn mobius_cache(&self) -> Option<&MobiusCache<F::Obj>> {
        Some(&self.cache)
    }
}
