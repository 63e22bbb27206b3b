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

#include "ncm/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ncm/error.hpp"
#include "ncm/kernels.hpp"
#include "ncm/tolerances.hpp"

namespace ncm {
namespace {

Eigen::Index ipow(Eigen::Index base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

ComplexVector tensor_power(const ComplexVector& v, int m) {
  ComplexVector out = ComplexVector::Ones(1);
  for (int i = 0; i < m; ++i) out = tensor_product(out, v);
  return out;
}

ComplexVector gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

std::span<Complex> view(ComplexVector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

void require_same_space(const InteractionModel& model, const ChainState& state) {
  if (state.dim_h != model.dim_h || state.dim_k != model.dim_k) {
    throw ShapeError("chain state dimensions differ from the model");
  }
}

// Unit vector in (H (x) K^(x occupied)) minus the vacuum line, padded to n_slots.
ChainState random_vacuum_free(const InteractionModel& model, int occupied, int n_slots,
                              std::mt19937_64& rng) {
  const ComplexVector vac = tensor_product(model.omega_h, tensor_power(model.omega_k, occupied));
  const ComplexVector unit_vac = vac / vac.norm();
  ComplexVector v = gaussian_vector(vac.size(), rng);
  v -= unit_vac * unit_vac.dot(v);
  v /= v.norm();
  return embed_joint(model, v, occupied, n_slots);
}

ChainState random_joint(const InteractionModel& model, int occupied, int n_slots, std::mt19937_64& rng) {
  ComplexVector v = gaussian_vector(Eigen::Index{model.dim_h} * ipow(model.dim_k, occupied), rng);
  v /= v.norm();
  return embed_joint(model, v, occupied, n_slots);
}

// Orthonormal basis of (H (x) K^(x occupied)) minus the vacuum line, as
// chain states with n_slots slots, stacked as columns.
ComplexMatrix vacuum_free_basis(const InteractionModel& model, int occupied, int n_slots) {
  const ComplexVector vac = tensor_product(model.omega_h, tensor_power(model.omega_k, occupied));
  const ComplexMatrix q = orthonormal_completion(vac);
  const Eigen::Index total = Eigen::Index{model.dim_h} * ipow(model.dim_k, n_slots);
  ComplexMatrix out(total, q.cols() - 1);
  for (Eigen::Index c = 1; c < q.cols(); ++c) {
    out.col(c - 1) = embed_joint(model, q.col(c), occupied, n_slots).amplitudes;
  }
  return out;
}

ChainState apply_word(const InteractionModel& model, const BasisFrame& frame, const Word& w,
                      ChainState state) {
  for (std::size_t i = 0; i < w.size(); ++i) state = v_apply(model, frame, w[i], state);
  return state;
}

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) r = std::max(r, std::abs(m(i, j)));
  }
  return r;
}

// Residual of v after projecting onto the span of orthonormal columns f.
double projection_residual(const ComplexMatrix& f, const ComplexVector& v) {
  const ComplexVector rest = v - f * (f.adjoint() * v);
  return rest.norm() / std::max(v.norm(), 1e-300);
}

}  // namespace

void check_amplitude_guard(int dim_h, int dim_k, int n_slots) {
  if (n_slots < 0) throw ShapeError("slot count must be >= 0");
  double count = dim_h;
  for (int i = 0; i < n_slots; ++i) count *= dim_k;
  if (count > static_cast<double>(kMaxAmplitudes)) {
    throw GuardError("chain simulation needs " + std::to_string(static_cast<long long>(count)) +
                     " amplitudes, above the limit of " + std::to_string(kMaxAmplitudes));
  }
}

ChainState embed_joint(const InteractionModel& model, const ComplexVector& joint, int occupied,
                       int n_slots) {
  if (occupied < 0 || occupied > n_slots) throw ShapeError("embed: more occupied slots than slots");
  check_amplitude_guard(model.dim_h, model.dim_k, n_slots);
  if (joint.size() != Eigen::Index{model.dim_h} * ipow(model.dim_k, occupied)) {
    throw ShapeError("embed: joint vector has the wrong length");
  }
  return {model.dim_h, model.dim_k, n_slots,
          tensor_product(joint, tensor_power(model.omega_k, n_slots - occupied))};
}

ChainState embed(const InteractionModel& model, const ComplexVector& xi,
                 const std::vector<ComplexVector>& slots, int n_slots) {
  if (xi.size() != model.dim_h) throw ShapeError("embed: xi is not in H");
  if (static_cast<int>(slots.size()) > n_slots) throw ShapeError("embed: more slot vectors than slots");
  check_amplitude_guard(model.dim_h, model.dim_k, n_slots);
  ComplexVector joint = xi;
  for (const auto& s : slots) {
    if (s.size() != model.dim_k) throw ShapeError("embed: slot vector is not in K");
    joint = tensor_product(joint, s);
  }
  return embed_joint(model, joint, static_cast<int>(slots.size()), n_slots);
}

ChainState vacuum_state(const InteractionModel& model, int n_slots) {
  return embed(model, model.omega_h, {}, n_slots);
}

ChainState evolve(const InteractionModel& model, const ChainState& state, int n) {
  require_same_space(model, state);
  if (n < 0 || n > state.n_slots) throw ShapeError("evolve: more steps than slots");
  ChainState cur = state;
  ComplexVector scratch(cur.amplitudes.size());
  for (int slot = 1; slot <= n; ++slot) {
    kernels::apply_pair_omp(view(cur.amplitudes), view(scratch), model.u, model.dim_h, model.dim_k,
                            cur.n_slots, slot);
    cur.amplitudes.swap(scratch);
  }
  return cur;
}

ComplexVector contract_h(const ChainState& state, const ComplexVector& v) {
  if (v.size() != state.dim_h) throw ShapeError("contract_h: vector is not in H");
  const Eigen::Index stride = ipow(state.dim_k, state.n_slots);
  ComplexVector out = ComplexVector::Zero(stride);
  for (Eigen::Index i = 0; i < state.dim_h; ++i) {
    out += std::conj(v(i)) * state.amplitudes.segment(i * stride, stride);
  }
  return out;
}

ChainState contract_slot(const ChainState& state, int slot, const ComplexVector& v) {
  if (slot < 1 || slot > state.n_slots) throw ShapeError("contract_slot: slot out of range");
  if (v.size() != state.dim_k) throw ShapeError("contract_slot: vector is not in K");
  const Eigen::Index k = state.dim_k;
  const Eigen::Index inner = ipow(k, state.n_slots - slot);
  const Eigen::Index outer = ipow(k, slot - 1);
  const Eigen::Index h_in = ipow(k, state.n_slots);
  const Eigen::Index h_out = h_in / k;
  ChainState out{state.dim_h, state.dim_k, state.n_slots - 1, ComplexVector::Zero(state.dim_h * h_out)};
  for (Eigen::Index ih = 0; ih < state.dim_h; ++ih) {
    for (Eigen::Index o = 0; o < outer; ++o) {
      for (Eigen::Index t = 0; t < k; ++t) {
        const Complex w = std::conj(v(t));
        const Eigen::Index src = ih * h_in + (o * k + t) * inner;
        const Eigen::Index dst = ih * h_out + o * inner;
        out.amplitudes.segment(dst, inner) += w * state.amplitudes.segment(src, inner);
      }
    }
  }
  return out;
}

ComplexVector w_apply(const InteractionModel& model, const ChainState& state, int n) {
  const ChainState evolved = evolve(model, state, n);
  const ComplexVector on_slots = contract_h(evolved, model.omega_h);
  const int tail_slots = state.n_slots - n;
  const ComplexVector tail = tensor_power(model.omega_k, tail_slots);
  const Eigen::Index head = ipow(model.dim_p, n);
  ComplexVector out(head);
  for (Eigen::Index s = 0; s < head; ++s) out(s) = tail.dot(on_slots.segment(s * tail.size(), tail.size()));
  return out;
}

double w_norm_squared(const InteractionModel& model, const ChainState& state, int n) {
  if (n < 0) throw ShapeError("w_norm_squared: negative step count");
  if (n <= state.n_slots) return w_apply(model, state, n).squaredNorm();

  const ChainState evolved = evolve(model, state, state.n_slots);
  const Eigen::Index per_h = ipow(model.dim_k, state.n_slots);
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(
      evolved.amplitudes.data(), model.dim_h, per_h);
  ComplexMatrix rho = psi * psi.adjoint();

  // rho -> Tr_P [ U (rho (x) |omega_k><omega_k|) U* ]
  const ComplexMatrix lift =
      model.u * tensor_product(ComplexMatrix::Identity(model.dim_h, model.dim_h), ComplexMatrix(model.omega_k));
  for (int step = state.n_slots; step < n; ++step) {
    const ComplexMatrix joint = lift * rho * lift.adjoint();
    ComplexMatrix next = ComplexMatrix::Zero(model.dim_h, model.dim_h);
    for (int a = 0; a < model.dim_h; ++a) {
      for (int b = 0; b < model.dim_h; ++b) {
        for (int q = 0; q < model.dim_p; ++q) next(a, b) += joint(a * model.dim_p + q, b * model.dim_p + q);
      }
    }
    rho = std::move(next);
  }
  return model.omega_h.dot(rho * model.omega_h).real();
}

ChainState v_apply(const InteractionModel& model, const BasisFrame& frame, int j, const ChainState& state) {
  require_same_space(model, state);
  if (j < 1 || j > model.dim_p) throw ShapeError("v_apply: letter out of range");
  if (state.n_slots < 1) throw DomainError("v_apply: no free slot");
  const ChainState head = contract_slot(state, state.n_slots, model.omega_k);
  const ComplexVector rest =
      state.amplitudes - tensor_product(head.amplitudes, ComplexVector(model.omega_k));
  if (rest.norm() > 1e-12 * std::max(1.0, state.amplitudes.norm())) {
    throw DomainError("v_apply: no free slot (last slot is not the vacuum)");
  }
  // (H, old slots) -> (H, new slot, old slots) with epsilon_j in the new slot.
  const Eigen::Index k = model.dim_k;
  const Eigen::Index old_stride = ipow(k, state.n_slots - 1);
  const Eigen::Index new_stride = old_stride * k;
  const ComplexVector eps = frame.p_basis.col(j - 1);
  ChainState out{model.dim_h, model.dim_k, state.n_slots, ComplexVector(state.amplitudes.size())};
  for (Eigen::Index ih = 0; ih < model.dim_h; ++ih) {
    const auto block = head.amplitudes.segment(ih * old_stride, old_stride);
    for (Eigen::Index t = 0; t < k; ++t) {
      out.amplitudes.segment(ih * new_stride + t * old_stride, old_stride) = eps(t) * block;
    }
  }
  ComplexVector scratch(out.amplitudes.size());
  kernels::apply_pair_omp(view(out.amplitudes), view(scratch), model.u.adjoint(), model.dim_h, model.dim_k,
                          out.n_slots, 1);
  out.amplitudes.swap(scratch);
  return out;
}

RecordAmplitudes record_amplitudes(const InteractionModel& model, const BasisFrame& frame,
                                   const ComplexVector& eta, int n) {
  const int h = model.dim_h;
  const int k = model.dim_k;
  const int d = model.dim_p;
  if (n < 1) throw ShapeError("record_amplitudes: need at least one slot");
  if (eta.size() != Eigen::Index{h} * (k - 1)) throw ShapeError("record_amplitudes: eta is not in the input space");

  // Input space coordinates -> H (x) K_1.
  const ComplexMatrix input_map =
      tensor_product(ComplexMatrix::Identity(h, h), ComplexMatrix(frame.k_basis.rightCols(k - 1)));
  const ChainState start = embed_joint(model, input_map * eta, 1, n);
  const ChainState evolved = evolve(model, start, n);

  // H onto the vacuum, then every slot into epsilon coordinates.
  ChainState slots{1, k, n, contract_h(evolved, model.omega_h)};
  const ComplexMatrix to_eps = frame.p_basis.adjoint();
  ComplexVector scratch(slots.amplitudes.size());
  for (int s = 1; s <= n; ++s) {
    kernels::apply_site_omp(view(slots.amplitudes), view(scratch), to_eps, 1, k, n, s);
    slots.amplitudes.swap(scratch);
  }

  RecordAmplitudes rec;
  rec.n = n;
  rec.index = WordIndex(d, n - 1);
  rec.total_mass = eta.squaredNorm();
  rec.amplitudes.resize(rec.index.total());
  for (int m = 0; m <= n - 1; ++m) {
    const std::size_t level = rec.index.level_size(m);
    for (std::size_t q = 0; q < level; ++q) {
      // q is the word's rank; its base-d digits are the measured letters.
      const Eigen::Index head = static_cast<Eigen::Index>(q) * ipow(k, n - m);
      ComplexVector amp(d - 1);
      for (int y = 0; y < d - 1; ++y) amp(y) = slots.amplitudes(head + (y + 1) * ipow(k, n - m - 1));
      rec.amplitudes[rec.index.offset(m) + q] = std::move(amp);
    }
  }
  return rec;
}

RecordDistribution record_distribution(const InteractionModel& model, const BasisFrame& frame,
                                       const ComplexVector& eta, int n) {
  const RecordAmplitudes rec = record_amplitudes(model, frame, eta, n);
  RecordDistribution dist;
  dist.words.reserve(rec.index.total());
  dist.probabilities.reserve(rec.index.total());
  double captured = 0.0;
  for (std::size_t i = 0; i < rec.index.total(); ++i) {
    dist.words.push_back(rec.index.word_at(i));
    const double p = rec.amplitudes[i].squaredNorm();
    dist.probabilities.push_back(p);
    captured += p;
  }
  dist.residual = rec.total_mass - captured;
  return dist;
}

double ScatteringDefects::max() const {
  return std::max({row_isometry, vacuum_invariance, wandering_orthonormality, wandering_span,
                   e_star_orthogonality, e_star_span, intertwining, w_norm_monotonicity});
}

ScatteringDefects scattering_axioms_check(const InteractionModel& model, int n, int sample_count,
                                          std::uint64_t seed) {
  if (n < 3) throw ShapeError("scattering_axioms_check: n must be >= 3");
  if (model.dim_k != model.dim_p) throw ShapeError("scattering_axioms_check: dim_k != dim_p");
  check_amplitude_guard(model.dim_h, model.dim_k, n + 1);
  const BasisFrame frame = canonical_frame(model);
  const int d = model.dim_p;
  const int h = model.dim_h;
  const int k = model.dim_k;
  std::mt19937_64 rng(seed);
  ScatteringDefects def;
  const ComplexVector vac = vacuum_state(model, n).amplitudes;

  // Row isometry and invariance of the vacuum complement, on samples.
  for (int s = 0; s < sample_count; ++s) {
    const ChainState x = random_vacuum_free(model, n - 1, n, rng);
    const ChainState y = random_vacuum_free(model, n - 1, n, rng);
    std::vector<ChainState> vx, vy;
    for (int j = 1; j <= d; ++j) {
      vx.push_back(v_apply(model, frame, j, x));
      vy.push_back(v_apply(model, frame, j, y));
    }
    const Complex xy = x.amplitudes.dot(y.amplitudes);
    for (int i = 0; i < d; ++i) {
      def.vacuum_invariance = std::max(def.vacuum_invariance, std::abs(vac.dot(vx[i].amplitudes)));
      for (int j = 0; j < d; ++j) {
        const Complex expected = i == j ? xy : Complex(0.0);
        def.row_isometry = std::max(def.row_isometry, std::abs(vx[i].amplitudes.dot(vy[j].amplitudes) - expected));
      }
    }
  }

  // H° and V_a E for |a| <= n-2 must form one orthonormal family spanning
  // (H (x) K_[1,n-1])°.
  const ComplexMatrix h0 = orthonormal_completion(model.omega_h).rightCols(h - 1);
  std::vector<ComplexVector> family;
  for (Eigen::Index c = 0; c < h0.cols(); ++c) family.push_back(embed(model, h0.col(c), {}, n).amplitudes);
  const auto words = enumerate(d, n - 2);
  for (int ih = 0; ih < h; ++ih) {
    for (int m = 1; m < k; ++m) {
      ComplexVector xi = ComplexVector::Zero(h);
      xi(ih) = 1.0;
      const ChainState e = embed(model, xi, {frame.k_basis.col(m)}, n);
      for (const Word& w : words) family.push_back(apply_word(model, frame, w, e).amplitudes);
    }
  }
  ComplexMatrix f(vac.size(), static_cast<Eigen::Index>(family.size()));
  for (std::size_t c = 0; c < family.size(); ++c) f.col(static_cast<Eigen::Index>(c)) = family[c];
  def.wandering_orthonormality =
      std::max(max_abs(f.adjoint() * f - ComplexMatrix::Identity(f.cols(), f.cols())), max_abs(vac.adjoint() * f));
  if (f.cols() != Eigen::Index{h} * ipow(k, n - 1) - 1) def.wandering_orthonormality = 1.0;
  for (int s = 0; s < sample_count; ++s) {
    const ChainState v = random_vacuum_free(model, n - 1, n, rng);
    def.wandering_span = std::max(def.wandering_span, projection_residual(f, v.amplitudes));
  }

  // Witnesses V_j(vacuum), j >= 2, against the ranges of the V_i on
  // (H (x) K_[1,n-2])°; together they must fill (H (x) K_[1,n-1])°.
  const ChainState vacuum = vacuum_state(model, n);
  ComplexMatrix witness(vac.size(), d - 1);
  for (int j = 2; j <= d; ++j) witness.col(j - 2) = v_apply(model, frame, j, vacuum).amplitudes;
  const ComplexMatrix inner_basis = vacuum_free_basis(model, n - 2, n);
  ComplexMatrix ranges(vac.size(), inner_basis.cols() * d);
  for (int i = 1; i <= d; ++i) {
    for (Eigen::Index c = 0; c < inner_basis.cols(); ++c) {
      const ChainState b{h, k, n, inner_basis.col(c)};
      ranges.col((i - 1) * inner_basis.cols() + c) = v_apply(model, frame, i, b).amplitudes;
    }
  }
  def.row_isometry = std::max(
      def.row_isometry, max_abs(ranges.adjoint() * ranges - ComplexMatrix::Identity(ranges.cols(), ranges.cols())));
  def.e_star_orthogonality = std::max({max_abs(witness.adjoint() * ranges), max_abs(vac.adjoint() * witness),
                                       max_abs(witness.adjoint() * witness - ComplexMatrix::Identity(d - 1, d - 1))});
  for (int s = 0; s < sample_count; ++s) {
    const ChainState x = random_vacuum_free(model, n - 1, n, rng);
    for (int i = 1; i <= d; ++i) {
      const ComplexVector vx = v_apply(model, frame, i, x).amplitudes;
      def.e_star_orthogonality = std::max(def.e_star_orthogonality, max_abs(witness.adjoint() * vx));
    }
  }
  ComplexMatrix both(vac.size(), ranges.cols() + witness.cols());
  both << ranges, witness;
  for (int s = 0; s < sample_count; ++s) {
    const ChainState v = random_vacuum_free(model, n - 1, n, rng);
    def.e_star_span = std::max(def.e_star_span, projection_residual(both, v.amplitudes));
  }

  // W V_j = S_j W on states supported in n-2 slots, with n+1 slots available.
  for (int s = 0; s < sample_count; ++s) {
    const ChainState psi = random_joint(model, n - 2, n + 1, rng);
    const ComplexVector w_psi = w_apply(model, psi, n);
    for (int j = 1; j <= d; ++j) {
      const ComplexVector lhs = w_apply(model, v_apply(model, frame, j, psi), n + 1);
      const ComplexVector rhs = tensor_product(ComplexVector(frame.p_basis.col(j - 1)), w_psi);
      def.intertwining = std::max(def.intertwining, (lhs - rhs).norm());
    }
  }

  // ||Q_t U(t) x|| is nondecreasing once t covers the support of x.
  for (int s = 0; s < sample_count; ++s) {
    const ChainState x = random_joint(model, 1, n, rng);
    double previous = w_apply(model, x, 1).norm();
    def.w_norm_monotonicity = std::max(def.w_norm_monotonicity, previous - x.amplitudes.norm());
    for (int t = 2; t <= n; ++t) {
      const double now = w_apply(model, x, t).norm();
      def.w_norm_monotonicity = std::max({def.w_norm_monotonicity, previous - now, now - x.amplitudes.norm()});
      previous = now;
    }
  }
  return def;
}

Comparison compare_with_simulation(const InteractionModel& model, const BasisFrame& frame,
                                   const TransferSeries& series, int n, int samples, std::uint64_t seed) {
  if (series.max_len < n - 1) throw ShapeError("compare: series is shorter than the simulated records");
  std::mt19937_64 rng(seed);
  Comparison cmp;
  cmp.samples = samples;
  for (int s = 0; s < samples; ++s) {
    ComplexVector eta = gaussian_vector(series.dim_u, rng);
    if (eta.size() > 0) eta /= eta.norm();
    const RecordAmplitudes rec = record_amplitudes(model, frame, eta, n);
    for (std::size_t i = 0; i < rec.index.total(); ++i) {
      const Word w = rec.index.word_at(i);
      const double gap = (rec.amplitudes[i] - series.at(w) * eta).norm();
      ++cmp.words_checked;
      if (gap > cmp.max_discrepancy) {
        cmp.max_discrepancy = gap;
        cmp.worst_word = w.to_string();
      }
    }
  }
  return cmp;
}

}  // namespace ncm
