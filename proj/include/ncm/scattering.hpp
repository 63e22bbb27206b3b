// Copyright 2026 The ncmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncm/linalg.hpp"
#include "ncm/model.hpp"
#include "ncm/transfer.hpp"
#include "ncm/words.hpp"

// Dense simulation of the repeated interaction on H (x) K^(x n). The
// infinite tensor product is truncated to n slots; every slot past the
// truncation is implicitly the vacuum. Used as the independent oracle for
// the transfer function and the scattering structure.
namespace ncm {

/// Amplitudes on H (x) K^(x n_slots). Index = i_H * k^n + sum_l i_l * k^(n-l),
/// slot 1 most significant after H.
struct ChainState {
  int dim_h = 0;
  int dim_k = 0;
  int n_slots = 0;
  ComplexVector amplitudes;
};

/// Throws GuardError when dim_h * dim_k^n_slots exceeds kMaxAmplitudes.
void check_amplitude_guard(int dim_h, int dim_k, int n_slots);

/// xi (x) slots[0] (x) ... padded with omega_k up to n_slots.
ChainState embed(const InteractionModel& model, const ComplexVector& xi,
                 const std::vector<ComplexVector>& slots, int n_slots);

/// A vector on H (x) K^(x occupied) padded with omega_k up to n_slots.
ChainState embed_joint(const InteractionModel& model, const ComplexVector& joint, int occupied,
                       int n_slots);

ChainState vacuum_state(const InteractionModel& model, int n_slots);

/// U(n) = U_n ... U_1: U applied to (H, slot l) for l = 1..n.
ChainState evolve(const InteractionModel& model, const ChainState& state, int n);

/// Contracts the H factor with <v|; result lives on the slots.
ComplexVector contract_h(const ChainState& state, const ComplexVector& v);

/// Contracts one slot with <v| and removes it.
ChainState contract_slot(const ChainState& state, int slot, const ComplexVector& v);

/// Q_n U(n) state: evolve n steps, contract H with omega_h and the
/// unevolved slots n+1.. with omega_k. Result lives on P^(x n).
ComplexVector w_apply(const InteractionModel& model, const ChainState& state, int n);

/// ||Q_n U(n) state||^2 for any n. Up to n_slots steps this is the dense
/// route; beyond, the evolved slots are traced out and the reduced density
/// operator on H is propagated with U directly.
double w_norm_squared(const InteractionModel& model, const ChainState& state, int n);

/// V_j: prepends a slot carrying epsilon_j and applies U* on (H, slot 1).
/// The last slot of `state` must be the vacuum (DomainError otherwise); it
/// is dropped so the slot count is unchanged.
ChainState v_apply(const InteractionModel& model, const BasisFrame& frame, int j,
                   const ChainState& state);

/// Components of U(n) eta for each record event: for a word w with
/// |w| = m <= n - 1, the vector (over Y coordinates) of amplitudes with H
/// in the vacuum, slots 1..m measured as epsilon_{w_1..w_m}, slot m+1 in
/// the orthocomplement of the vacuum and later slots in the vacuum.
struct RecordAmplitudes {
  int n = 0;
  WordIndex index{1, 0};
  std::vector<ComplexVector> amplitudes;  // at index.index_of(w)
  double total_mass = 0.0;                // ||eta||^2
};

RecordAmplitudes record_amplitudes(const InteractionModel& model, const BasisFrame& frame,
                                   const ComplexVector& eta, int n);

struct RecordDistribution {
  std::vector<Word> words;
  std::vector<double> probabilities;
  double residual = 0.0;
};

RecordDistribution record_distribution(const InteractionModel& model, const BasisFrame& frame,
                                       const ComplexVector& eta, int n);

/// Numerical defects of the scattering structure at truncation n. Every
/// entry should be at rounding level for a valid model.
struct ScatteringDefects {
  double row_isometry = 0.0;           // <V_i x, V_j y> - delta_ij <x, y>
  double vacuum_invariance = 0.0;      // V_j keeps the vacuum complement
  double wandering_orthonormality = 0.0;  // H° and V_a E, |a| <= n-2
  double wandering_span = 0.0;         // residual of (H (x) K_[1,n-1])° samples
  double e_star_orthogonality = 0.0;   // V_j(vacuum), j >= 2, against ranges
  double e_star_span = 0.0;            // ranges + witnesses fill the space
  double intertwining = 0.0;           // W V_j = S_j W
  double w_norm_monotonicity = 0.0;    // ||Q_n U(n) x|| nondecreasing, <= ||x||

  double max() const;
};

ScatteringDefects scattering_axioms_check(const InteractionModel& model, int n, int sample_count,
                                          std::uint64_t seed);

struct Comparison {
  double max_discrepancy = 0.0;
  std::string worst_word = "-";
  std::size_t words_checked = 0;
  int samples = 0;
};

/// max over sampled unit eta and words |w| <= n-1 of
/// || (simulated record amplitude) - Theta(w) eta ||.
Comparison compare_with_simulation(const InteractionModel& model, const BasisFrame& frame,
                                   const TransferSeries& series, int n, int samples,
                                   std::uint64_t seed);

}  // namespace ncm
