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

// Wall-clock comparison of the serial and OpenMP kernels.
//
//   ncmarkov_bench [slots] [max_len]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include "ncm/kernels.hpp"
#include "ncm/model.hpp"
#include "ncm/scattering.hpp"

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double omp_ms) {
  std::printf("%-28s serial %10.3f ms   omp %10.3f ms   speedup %5.2fx\n", name, serial_ms, omp_ms,
              serial_ms / omp_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int slots = argc > 1 ? std::atoi(argv[1]) : 18;
  const int max_len = argc > 2 ? std::atoi(argv[2]) : 10;
  std::printf("threads: %d\n", ncm::kernels::max_threads());

  const ncm::InteractionModel model = ncm::generate(ncm::GeneratorSpec::parse("random:7"), {2, 2, 2});
  const ncm::ChainState state = ncm::vacuum_state(model, slots);
  std::vector<ncm::Complex> in(state.amplitudes.data(), state.amplitudes.data() + state.amplitudes.size());
  std::vector<ncm::Complex> out(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] += ncm::Complex(1e-3 * static_cast<double>(i % 7), 0.0);

  const int mid = slots / 2;
  const double pair_serial = best_of(5, [&] {
    ncm::kernels::apply_pair_serial(in, out, model.u, model.dim_h, model.dim_k, slots, mid);
  });
  const double pair_omp = best_of(5, [&] {
    ncm::kernels::apply_pair_omp(in, out, model.u, model.dim_h, model.dim_k, slots, mid);
  });
  std::printf("apply_pair: %d slots, %zu amplitudes\n", slots, in.size());
  report("apply_pair", pair_serial, pair_omp);

  const ncm::Colligation col = ncm::extract_colligation(model, ncm::canonical_frame(model));
  const ncm::WordIndex index(col.d, max_len);
  std::vector<ncm::ComplexMatrix> coeffs;
  const double naive = best_of(3, [&] { ncm::kernels::series_naive(col, index, coeffs); });
  const double serial = best_of(3, [&] { ncm::kernels::series_serial(col, index, coeffs); });
  const double omp = best_of(3, [&] { ncm::kernels::series_omp(col, index, coeffs); });
  std::printf("series: max_len %d, %zu words\n", max_len, index.total());
  report("series (naive vs omp)", naive, omp);
  report("series (cached vs omp)", serial, omp);
  return 0;
}
