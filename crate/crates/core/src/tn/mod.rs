//! Tensor-network backend.
//!
//! A circuit becomes a network with one `|0⟩` tensor per qubit and one tensor
//! per gate, wired along the qubit lines. Contracting the network pair by pair
//! yields the final state; closing the open legs with basis effects first
//! yields a single amplitude as a rank-0 tensor. Memory is governed by the
//! contraction order, chosen here by a greedy size-minimizing planner.

mod network;
mod plan;
mod tensor;

pub use network::{amplitude_tn, circuit_to_network, full_state_tn, TensorNetwork, MAX_FULL_STATE_QUBITS};
pub use plan::{
    all_plans, execute_plan, greedy_plan, optimal_plan, plan_cost, stats_line, ContractionPlan, PlanCost,
    MAX_OPTIMAL_TENSORS,
};
pub use tensor::{contract_pair, Index, Tensor};
