// Copyright 2026 The Magic Ladder Authors
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

#include "magic/rz_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magic/error.hpp"

namespace magic {

namespace {

struct Trig {
  std::vector<double> c;
  std::vector<double> s;
};

Trig trig_of(std::span<const double> thetas) {
  Trig t;
  t.c.reserve(thetas.size());
  t.s.reserve(thetas.size());
  for (double th : thetas) {
    t.c.push_back(std::cos(th));
    t.s.push_back(std::sin(th));
  }
  return t;
}

double monomial(const Trig& t, std::uint32_t active, std::uint32_t subset) {
  double v = 1.0;
  for (std::uint32_t m = active; m; m &= m - 1) {
    const int j = std::countr_zero(m);
    v *= (subset >> j) & 1u ? t.s[static_cast<std::size_t>(j)] : t.c[static_cast<std::size_t>(j)];
  }
  return v;
}

/// d/dtheta_j of the monomial.
double monomial_derivative(const Trig& t, std::uint32_t active, std::uint32_t subset, int j) {
  double v = 1.0;
  for (std::uint32_t m = active; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    const auto ui = static_cast<std::size_t>(i);
    const bool in_s = (subset >> i) & 1u;
    if (i == j) {
      v *= in_s ? t.c[ui] : -t.s[ui];
    } else {
      v *= in_s ? t.s[ui] : t.c[ui];
    }
  }
  return v;
}

}  // namespace

RzExpansion::RzExpansion(const PauliSum& h, std::vector<PauliString> axes)
    : n_(h.size()), axes_(std::move(axes)) {
  if (n_ > 64) throw SizeError("Rz expansion supports at most 64 qubits");
  if (axes_.size() > 30) throw SizeError("Rz expansion supports at most 30 rotations");
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].size() != n_) throw DimensionError("rotation axis size mismatch");
    for (std::size_t b = a + 1; b < axes_.size(); ++b) {
      if (!commutes(axes_[a], axes_[b])) throw std::logic_error("rotation axes must commute");
    }
  }
  struct Raw {
    std::uint32_t active;
    std::uint32_t subset;
    std::uint64_t z;
    double value;
  };
  std::vector<Raw> raw;
  for (const auto& t : h.terms()) {
    frobenius_ += t.coeff * t.coeff;
    std::uint32_t active = 0;
    for (std::size_t j = 0; j < axes_.size(); ++j) {
      if (!commutes(t.op, axes_[j])) active |= 1u << j;
    }
    // Submasks of `active` in increasing order.
    for (std::uint32_t subset = 0;; subset = ((subset | ~active) + 1) & active) {
      PauliString acc(n_);
      for (std::uint32_t m = subset; m; m &= m - 1) acc *= axes_[static_cast<std::size_t>(std::countr_zero(m))];
      acc *= t.op;
      if (acc.is_diagonal()) {
        const int ph = (std::popcount(subset) + acc.phase()) & 3;
        if (ph & 1) throw std::logic_error("non-Hermitian branch in Rz expansion");
        raw.push_back({active, subset, acc.z().low(), ph == 2 ? -t.coeff : t.coeff});
      }
      if (subset == active) break;
    }
  }
  zmasks_.reserve(raw.size());
  for (const auto& r : raw) zmasks_.push_back(r.z);
  std::sort(zmasks_.begin(), zmasks_.end());
  zmasks_.erase(std::unique(zmasks_.begin(), zmasks_.end()), zmasks_.end());
  branches_.reserve(raw.size());
  for (const auto& r : raw) {
    const auto slot = static_cast<std::uint32_t>(
        std::lower_bound(zmasks_.begin(), zmasks_.end(), r.z) - zmasks_.begin());
    branches_.push_back({r.active, r.subset, slot, r.value});
  }
}

double RzExpansion::zero_state_energy(std::span<const double> thetas, std::span<double> grad) const {
  if (thetas.size() != axes_.size()) throw DimensionError("theta count does not match axes");
  const Trig t = trig_of(thetas);
  double e = 0.0;
  for (const auto& b : branches_) e += b.value * monomial(t, b.active, b.subset);
  if (!grad.empty()) {
    for (const auto& b : branches_) {
      for (std::uint32_t m = b.active; m; m &= m - 1) {
        const int j = std::countr_zero(m);
        grad[static_cast<std::size_t>(j)] += b.value * monomial_derivative(t, b.active, b.subset, j);
      }
    }
  }
  return e;
}

std::vector<double> RzExpansion::diagonal_coefficients(std::span<const double> thetas) const {
  if (thetas.size() != axes_.size()) throw DimensionError("theta count does not match axes");
  const Trig t = trig_of(thetas);
  std::vector<double> f(zmasks_.size(), 0.0);
  for (const auto& b : branches_) f[b.slot] += b.value * monomial(t, b.active, b.subset);
  return f;
}

void RzExpansion::accumulate_gradient(std::span<const double> thetas,
                                      std::span<const double> slot_weight,
                                      std::span<double> grad) const {
  const Trig t = trig_of(thetas);
  for (const auto& b : branches_) {
    const double w = slot_weight[b.slot] * b.value;
    if (w == 0.0) continue;
    for (std::uint32_t m = b.active; m; m &= m - 1) {
      const int j = std::countr_zero(m);
      grad[static_cast<std::size_t>(j)] += w * monomial_derivative(t, b.active, b.subset, j);
    }
  }
}

void walsh_hadamard(std::span<double> v) {
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace magic
