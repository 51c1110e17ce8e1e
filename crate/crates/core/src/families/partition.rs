//! Set partitions under refinement. `π <= τ` means `τ` refines `π`, so the
//! one-block partition is the bottom.

use std::fmt;

use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::label::{bell, parse_label, set_partitions, LabelSet, Relabeling, UnorderedSetPartition};
use crate::linear::FreeVector;
use crate::species::{AdjunctionSpec, OrderSpec, Product, Species};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    ground: LabelSet,
    blocks: UnorderedSetPartition,
}

impl SetPartition {
    pub fn new(blocks: Vec<LabelSet>) -> Result<SetPartition> {
        let blocks = UnorderedSetPartition::new(blocks)?;
        Ok(SetPartition {
            ground: blocks.ground(),
            blocks,
        })
    }

    pub fn one_block(ground: LabelSet) -> SetPartition {
        let blocks = if ground.is_empty() { vec![] } else { vec![ground] };
        SetPartition::new(blocks).expect("single block")
    }

    pub fn discrete(ground: LabelSet) -> SetPartition {
        SetPartition::new(ground.iter().map(LabelSet::singleton).collect()).expect("singletons")
    }

    pub fn ground(&self) -> LabelSet {
        self.ground
    }

    pub fn blocks(&self) -> &[LabelSet] {
        self.blocks.blocks()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Block sizes in decreasing order.
    pub fn shape(&self) -> Vec<u32> {
        let mut sizes: Vec<u32> = self.blocks().iter().map(|b| b.len() as u32).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Whether every block of `self` lies in a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.ground == other.ground
            && self
                .blocks()
                .iter()
                .all(|b| other.blocks().iter().any(|c| b.is_subset(*c)))
    }

    pub fn restrict(&self, s: LabelSet) -> SetPartition {
        let blocks = self
            .blocks()
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| !b.is_empty())
            .collect();
        SetPartition::new(blocks).expect("restriction of a partition")
    }

    pub fn union(&self, other: &SetPartition) -> Result<SetPartition> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(Error::LabelOverlap {
                left: self.ground.to_string(),
                right: other.ground.to_string(),
            });
        }
        SetPartition::new(self.blocks().iter().chain(other.blocks()).copied().collect())
    }

    pub fn relabel(&self, f: &Relabeling) -> SetPartition {
        SetPartition::new(self.blocks().iter().map(|&b| f.apply_set(b)).collect())
            .expect("bijection keeps blocks disjoint")
    }

    /// Every partition refining `self`.
    pub fn refinements(&self) -> Vec<SetPartition> {
        let mut acc: Vec<Vec<LabelSet>> = vec![vec![]];
        for &b in self.blocks() {
            let parts = set_partitions(b);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    parts.iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(p.blocks());
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<SetPartition> = acc
            .into_iter()
            .map(|v| SetPartition::new(v).expect("refinement"))
            .collect();
        out.sort();
        out
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Partitions::encode_partition(self))
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `Σ_{τ refines π} (-1)^{ℓ(τ)} (∏ λ_i!) τ`, where `λ_i` counts the blocks of
/// `τ` inside the `i`-th block of `π`.
pub fn closed_form_antipode_partitions(p: &SetPartition) -> FreeVector<SetPartition> {
    let mut v = FreeVector::zero();
    for t in p.refinements() {
        let sign = if t.len() % 2 == 0 { 1 } else { -1 };
        let weight: i64 = p
            .blocks()
            .iter()
            .map(|&b| factorial(t.blocks().iter().filter(|c| c.is_subset(b)).count()))
            .product();
        v.add_int(t, sign * weight);
    }
    v
}

#[derive(Clone, Debug)]
pub struct Partitions {
    pub budget: usize,
}

impl Default for Partitions {
    fn default() -> Self {
        Partitions { budget: DEFAULT_BUDGET }
    }
}

impl Partitions {
    pub fn encode_partition(p: &SetPartition) -> String {
        let wide = p.ground.iter().any(|v| v >= 10);
        let sep = if wide { "," } else { "" };
        let blocks: Vec<String> = p
            .blocks()
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        format!("P:{};B={}", p.ground.encode(), blocks.join("|"))
    }
}

impl Species for Partitions {
    type Obj = SetPartition;

    fn name(&self) -> &str {
        "partitions"
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn labels(&self, x: &SetPartition) -> LabelSet {
        x.ground
    }

    fn unit(&self) -> SetPartition {
        SetPartition::one_block(LabelSet::EMPTY)
    }

    fn carrier_size(&self, labels: LabelSet) -> u128 {
        bell(labels.len())
    }

    fn enumerate(&self, labels: LabelSet) -> Vec<SetPartition> {
        set_partitions(labels)
            .into_iter()
            .map(|p| SetPartition {
                ground: labels,
                blocks: p,
            })
            .collect()
    }

    fn relabel(&self, x: &SetPartition, f: &Relabeling) -> SetPartition {
        x.relabel(f)
    }

    fn mult(&self, x: &SetPartition, y: &SetPartition) -> Result<SetPartition> {
        x.union(y)
    }

    fn restrict(&self, x: &SetPartition, s: LabelSet) -> SetPartition {
        x.restrict(s)
    }

    fn native_leq(&self, a: &SetPartition, b: &SetPartition) -> bool {
        b.refines(a)
    }

    fn encode(&self, x: &SetPartition) -> String {
        Partitions::encode_partition(x)
    }

    fn parse(&self, s: &str) -> Result<SetPartition> {
        let body = s
            .trim()
            .strip_prefix("P:")
            .ok_or_else(|| Error::Parse(format!("partition must start with `P:`: `{s}`")))?;
        let (labels, blocks) = body
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing `;B=` in `{s}`")))?;
        let ground = LabelSet::parse(labels)?;
        let blocks = blocks
            .strip_prefix("B=")
            .ok_or_else(|| Error::Parse(format!("missing `B=` in `{s}`")))?;
        // single-digit members are written without separators
        let wide = ground.iter().any(|v| v >= 10);
        let mut parsed = Vec::new();
        for b in blocks.split('|').filter(|b| !b.trim().is_empty()) {
            let members: Vec<u8> = if wide || b.contains(',') {
                b.split(',').map(parse_label).collect::<Result<_>>()?
            } else {
                b.trim()
                    .chars()
                    .map(|c| parse_label(&c.to_string()))
                    .collect::<Result<_>>()?
            };
            let block: LabelSet = members.iter().copied().collect();
            if block.len() != members.len() {
                return Err(Error::Parse(format!("repeated label in block `{b}`")));
            }
            parsed.push(block);
        }
        let p = SetPartition::new(parsed).map_err(|e| Error::Parse(e.to_string()))?;
        if p.ground != ground {
            return Err(Error::Parse(format!(
                "blocks cover {} but the label set is {}",
                p.ground, ground
            )));
        }
        Ok(p)
    }

    fn primary_adjunction(&self) -> AdjunctionSpec {
        AdjunctionSpec {
            order: OrderSpec::NATIVE,
            product: Product::Mult,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        Partitions::default().parse(s).unwrap()
    }

    #[test]
    fn encoding() {
        let fam = Partitions::default();
        for s in ["P:n=0;B=", "P:n=3;B=01|2", "P:n=3;B=02|1", "P:V=3,5;B=3|5"] {
            assert_eq!(fam.encode(&p(s)), s);
        }
        assert_eq!(fam.encode(&p("P:n=3;B=2|10")), "P:n=3;B=01|2");
        let wide = SetPartition::new(vec![[9u8, 10].into_iter().collect(), LabelSet::singleton(11)]).unwrap();
        let s = fam.encode(&wide);
        assert_eq!(s, "P:V=9,10,11;B=9,10|11");
        assert_eq!(p(&s), wide);
        assert!(fam.parse("P:n=3;B=01").is_err());
        assert!(fam.parse("P:n=3;B=01|12").is_err());
    }

    #[test]
    fn refinement_order() {
        let fam = Partitions::default();
        let top = p("P:n=3;B=012");
        assert!(fam.native_leq(&top, &p("P:n=3;B=0|12")));
        assert!(!fam.native_leq(&p("P:n=3;B=0|12"), &top));
        assert_eq!(top.refinements().len(), 5);
        assert_eq!(p("P:n=4;B=01|23").refinements().len(), 4);
    }

    #[test]
    fn closed_form_examples() {
        let d = p("P:n=3;B=0|1|2");
        assert_eq!(
            closed_form_antipode_partitions(&d),
            FreeVector::from_ints([(d.clone(), -1)])
        );
        assert_eq!(
            closed_form_antipode_partitions(&p("P:n=2;B=01")),
            FreeVector::from_ints([(p("P:n=2;B=01"), -1), (p("P:n=2;B=0|1"), 2)])
        );
        assert_eq!(
            closed_form_antipode_partitions(&p("P:n=3;B=012")),
            FreeVector::from_ints([
                (p("P:n=3;B=012"), -1),
                (p("P:n=3;B=01|2"), 2),
                (p("P:n=3;B=02|1"), 2),
                (p("P:n=3;B=0|12"), 2),
                (d, -6),
            ])
        );
    }
}
