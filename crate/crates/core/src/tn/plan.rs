use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tn::network::TensorNetwork;
use crate::tn::tensor::{contract_pair, Index, Tensor};

/// Largest network [`optimal_plan`] will search.
pub const MAX_OPTIMAL_TENSORS: usize = 12;

/// Pairwise contraction order. The network's tensors have ids `0..m`; step
/// `s` consumes two live ids and produces id `m + s`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractionPlan {
    steps: Vec<(usize, usize)>,
}

impl ContractionPlan {
    pub fn new(steps: Vec<(usize, usize)>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanCost {
    /// Σ over steps of output size × contracted dimension.
    pub flops: u128,
    /// Largest tensor held at any point, inputs included.
    pub max_intermediate: u128,
}

fn size128(indices: &[Index]) -> u128 {
    indices.iter().fold(1u128, |acc, i| acc.saturating_mul(i.dim as u128))
}

/// Legs of the contraction of `a` and `b`, in [`contract_pair`] order, and
/// the product of the contracted dimensions.
fn contracted_shape(a: &[Index], b: &[Index]) -> (Vec<Index>, u128) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inner = 1u128;
    for i in a {
        if b.iter().any(|j| j.label == i.label) {
            inner = inner.saturating_mul(i.dim as u128);
        } else {
            out.push(*i);
        }
    }
    out.extend(b.iter().filter(|j| !a.iter().any(|i| i.label == j.label)));
    (out, inner)
}

/// Replays `plan` over `items`, checking that every step names two distinct
/// live ids and that a single item remains.
fn replay<S>(items: Vec<S>, plan: &ContractionPlan, mut combine: impl FnMut(&S, &S) -> Result<S>) -> Result<S> {
    let mut slots: Vec<Option<S>> = items.into_iter().map(Some).collect();
    if slots.is_empty() {
        return Err(Error::Plan("network has no tensors".into()));
    }
    for (s, &(x, y)) in plan.steps.iter().enumerate() {
        if x == y {
            return Err(Error::Plan(format!("step {s} contracts tensor {x} with itself")));
        }
        let mut take = |id: usize| {
            slots
                .get_mut(id)
                .and_then(Option::take)
                .ok_or_else(|| Error::Plan(format!("step {s} names tensor {id}, which is not available")))
        };
        let a = take(x)?;
        let b = take(y)?;
        slots.push(Some(combine(&a, &b)?));
    }
    let mut live = slots.into_iter().flatten();
    match (live.next(), live.next()) {
        (Some(last), None) => Ok(last),
        _ => Err(Error::Plan("plan leaves more than one tensor".into())),
    }
}

/// Contracts the network along `plan` and orders the result's legs as the
/// network's open indices.
pub fn execute_plan<T: Scalar>(net: &TensorNetwork<T>, plan: &ContractionPlan) -> Result<Tensor<T>> {
    let result = replay(net.tensors().to_vec(), plan, |a, b| contract_pair(a, b))?;
    let order: Vec<usize> = net.open_indices().iter().map(|i| i.label).collect();
    result.permuted(&order)
}

pub fn plan_cost<T: Scalar>(net: &TensorNetwork<T>, plan: &ContractionPlan) -> Result<PlanCost> {
    let shapes: Vec<Vec<Index>> = net.tensors().iter().map(|t| t.indices().to_vec()).collect();
    let mut cost = PlanCost { flops: 0, max_intermediate: shapes.iter().map(|s| size128(s)).max().unwrap_or(0) };
    replay(shapes, plan, |a, b| {
        let (out, inner) = contracted_shape(a, b);
        let size = size128(&out);
        cost.flops = cost.flops.saturating_add(size.saturating_mul(inner));
        cost.max_intermediate = cost.max_intermediate.max(size);
        Ok(out)
    })?;
    Ok(cost)
}

/// Repeatedly contracts the candidate pair whose result is smallest; ties go
/// to the smaller combined input, then to the earliest-created pair.
/// Candidates are the pairs sharing an index plus the outer products of two
/// tensors that are both connected to a third one. Once no pair shares an
/// index, every pair is a candidate.
pub fn greedy_plan<T: Scalar>(net: &TensorNetwork<T>) -> ContractionPlan {
    let mut live: BTreeMap<usize, (Vec<Index>, u128)> =
        net.tensors().iter().enumerate().map(|(id, t)| (id, (t.indices().to_vec(), size128(t.indices())))).collect();
    let mut owners: HashMap<usize, Vec<usize>> = HashMap::new();
    for (id, (shape, _)) in &live {
        for i in shape {
            owners.entry(i.label).or_default().push(*id);
        }
    }
    let mut next_id = live.len();
    let mut steps = Vec::new();

    while live.len() > 1 {
        let sharing: BTreeSet<(usize, usize)> =
            owners.values().filter(|ids| ids.len() == 2).map(|ids| (ids[0].min(ids[1]), ids[0].max(ids[1]))).collect();
        let mut neighbours: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(x, y) in &sharing {
            neighbours.entry(x).or_default().insert(y);
            neighbours.entry(y).or_default().insert(x);
        }
        let mut outer: BTreeSet<(usize, usize)> = BTreeSet::new();
        if sharing.is_empty() {
            let ids: Vec<usize> = live.keys().copied().collect();
            for (k, &x) in ids.iter().enumerate() {
                outer.extend(ids[k + 1..].iter().map(|&y| (x, y)));
            }
        } else {
            for adj in neighbours.values() {
                let adj: Vec<usize> = adj.iter().copied().collect();
                for (k, &x) in adj.iter().enumerate() {
                    outer.extend(adj[k + 1..].iter().map(|&y| (x, y)).filter(|p| !sharing.contains(p)));
                }
            }
        }

        let key = |&(x, y): &(usize, usize)| {
            let ((a, sa), (b, sb)) = (&live[&x], &live[&y]);
            (size128(&contracted_shape(a, b).0), sa.saturating_add(*sb), x, y)
        };
        let (out_size, _, x, y) = sharing.iter().chain(&outer).map(key).min().expect("at least two live tensors");

        let (a, _) = live.remove(&x).expect("live");
        let (b, _) = live.remove(&y).expect("live");
        let (out, _) = contracted_shape(&a, &b);
        for i in a.iter().chain(&b) {
            if let Some(ids) = owners.get_mut(&i.label) {
                ids.retain(|&id| id != x && id != y);
                if ids.is_empty() {
                    owners.remove(&i.label);
                }
            }
        }
        for i in &out {
            owners.entry(i.label).or_default().push(next_id);
        }
        live.insert(next_id, (out, out_size));
        steps.push((x, y));
        next_id += 1;
    }
    ContractionPlan { steps }
}

/// Minimum-flop plan by dynamic programming over subsets, ties broken by the
/// largest intermediate. Every label must occur at most twice.
pub fn optimal_plan<T: Scalar>(net: &TensorNetwork<T>) -> Result<ContractionPlan> {
    let m = net.len();
    if m == 0 || m > MAX_OPTIMAL_TENSORS {
        return Err(Error::Plan(format!("exhaustive planning needs 1..={MAX_OPTIMAL_TENSORS} tensors, got {m}")));
    }
    let mut bit_of: HashMap<usize, usize> = HashMap::new();
    let mut dims = Vec::new();
    let mut masks = vec![0u128; m];
    for (t, tensor) in net.tensors().iter().enumerate() {
        for i in tensor.indices() {
            let bit = *bit_of.entry(i.label).or_insert_with(|| {
                dims.push(i.dim as u128);
                dims.len() - 1
            });
            if bit >= 128 {
                return Err(Error::Plan("exhaustive planning supports at most 128 labels".into()));
            }
            masks[t] |= 1 << bit;
        }
    }
    let size = |mask: u128| -> u128 {
        (0..dims.len()).filter(|b| mask >> b & 1 == 1).fold(1u128, |acc, b| acc.saturating_mul(dims[b]))
    };

    let full = (1usize << m) - 1;
    let mut free = vec![0u128; full + 1];
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        free[s] = free[s & (s - 1)] ^ masks[low];
    }
    // best[s] = (flops, max intermediate, split)
    let mut best: Vec<(u128, u128, usize)> = vec![(u128::MAX, u128::MAX, 0); full + 1];
    for (t, &mask) in masks.iter().enumerate() {
        best[1 << t] = (0, size(mask), 0);
    }
    for s in 1..=full {
        if s.count_ones() < 2 {
            continue;
        }
        let out = size(free[s]);
        let low = s & s.wrapping_neg();
        // enumerate splits once by keeping the lowest tensor on the left
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let left = low | sub;
            if left != s {
                let right = s ^ left;
                let inner = size(free[left] & free[right]);
                let (fl, ml, _) = best[left];
                let (fr, mr, _) = best[right];
                let flops = fl.saturating_add(fr).saturating_add(out.saturating_mul(inner));
                let peak = ml.max(mr).max(out);
                if (flops, peak) < (best[s].0, best[s].1) {
                    best[s] = (flops, peak, left);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    fn emit(s: usize, best: &[(u128, u128, usize)], next: &mut usize, steps: &mut Vec<(usize, usize)>) -> usize {
        if s.count_ones() == 1 {
            return s.trailing_zeros() as usize;
        }
        let left = best[s].2;
        let a = emit(left, best, next, steps);
        let b = emit(s ^ left, best, next, steps);
        steps.push((a, b));
        *next += 1;
        *next - 1
    }
    let mut steps = Vec::with_capacity(m - 1);
    let mut next = m;
    emit(full, &best, &mut next, &mut steps);
    Ok(ContractionPlan { steps })
}

/// `tensors=<k> steps=<k-1> flops=<f> max_intermediate=<m>`.
pub fn stats_line<T: Scalar>(net: &TensorNetwork<T>, plan: &ContractionPlan) -> Result<String> {
    let cost = plan_cost(net, plan)?;
    Ok(format!(
        "tensors={} steps={} flops={} max_intermediate={}",
        net.len(),
        plan.len(),
        cost.flops,
        cost.max_intermediate
    ))
}

/// Every contraction order of the network, as plans. Only for tiny networks.
pub fn all_plans<T: Scalar>(net: &TensorNetwork<T>) -> Vec<ContractionPlan> {
    fn go(live: &[usize], next: usize, steps: &mut Vec<(usize, usize)>, out: &mut Vec<ContractionPlan>) {
        if live.len() <= 1 {
            out.push(ContractionPlan { steps: steps.clone() });
            return;
        }
        for i in 0..live.len() {
            for j in i + 1..live.len() {
                let (x, y) = (live[i], live[j]);
                let mut rest: Vec<usize> = live.iter().copied().filter(|&v| v != x && v != y).collect();
                rest.push(next);
                steps.push((x, y));
                go(&rest, next + 1, steps, out);
                steps.pop();
            }
        }
    }
    let mut out = Vec::new();
    let live: Vec<usize> = (0..net.len()).collect();
    go(&live, net.len(), &mut Vec::new(), &mut out);
    out
}
