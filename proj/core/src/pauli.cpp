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

#include "magic/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "magic/error.hpp"

namespace magic {

namespace {

constexpr char kSymbols[4] = {'I', 'X', 'Z', 'Y'};  // indexed by x + 2z

void check_size(std::size_t n) {
  if (n > kMaxQubits) {
    throw SizeError("qubit count " + std::to_string(n) + " exceeds the maximum of " +
                    std::to_string(kMaxQubits));
  }
}

void check_same_size(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw DimensionError("Pauli size mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

bool word_less(const PauliString& a, const PauliString& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.z() < b.z();
}

bool same_word(const PauliString& a, const PauliString& b) {
  return a.x() == b.x() && a.z() == b.z();
}

}  // namespace

std::string Bits::str(std::size_t n) const {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

Bits Bits::parse(std::string_view s) {
  check_size(s.size());
  Bits b;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      b.set(i, true);
    } else if (s[i] != '0') {
      throw ParseError("invalid bit character '" + std::string(1, s[i]) + "'");
    }
  }
  return b;
}

PauliString::PauliString(std::size_t n) : n_(n) { check_size(n); }

PauliString::PauliString(std::size_t n, const Bits& x, const Bits& z, std::uint8_t phase)
    : n_(n), x_(x), z_(z), phase_(phase & 3u) {
  check_size(n);
}

PauliString PauliString::from_word(std::string_view word) {
  std::uint8_t phase = 0;
  if (!word.empty() && (word[0] == '+' || word[0] == '-')) {
    if (word[0] == '-') phase = 2;
    word.remove_prefix(1);
  }
  if (!word.empty() && word[0] == 'i') {
    phase = (phase + 1) & 3u;
    word.remove_prefix(1);
  }
  PauliString p(word.size());
  for (std::size_t q = 0; q < word.size(); ++q) {
    const char c = word[q];
    if (c != 'I' && c != '_' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ParseError("invalid Pauli character '" + std::string(1, c) + "' in word");
    }
    p.set(q, c == '_' ? 'I' : c);
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t q, char p) {
  if (q >= n) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  PauliString s(n);
  s.set(q, p);
  return s;
}

char PauliString::at(std::size_t q) const {
  return kSymbols[static_cast<int>(x_.get(q)) + 2 * static_cast<int>(z_.get(q))];
}

void PauliString::set(std::size_t q, char p) {
  if (q >= n_) throw DimensionError("qubit index " + std::to_string(q) + " out of range");
  switch (p) {
    case 'I': x_.set(q, false); z_.set(q, false); break;
    case 'X': x_.set(q, true); z_.set(q, false); break;
    case 'Z': x_.set(q, false); z_.set(q, true); break;
    case 'Y': x_.set(q, true); z_.set(q, true); break;
    default: throw ParseError("invalid Pauli character '" + std::string(1, p) + "'");
  }
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  check_same_size(*this, rhs);
  // sigma(x,z) = i^{|x&z|} X^x Z^z and Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1.
  int ph = phase_ + rhs.phase_ + and_popcount(x_, z_) + and_popcount(rhs.x_, rhs.z_) +
           2 * and_popcount(z_, rhs.x_);
  x_ ^= rhs.x_;
  z_ ^= rhs.z_;
  ph -= and_popcount(x_, z_);
  phase_ = static_cast<std::uint8_t>(((ph % 4) + 4) % 4);
  return *this;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  PauliString r = a;
  r *= b;
  return r;
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_size(a, b);
  return dot(a.x(), b.z()) == dot(a.z(), b.x());
}

PauliString inverse(const PauliString& a) {
  return PauliString(a.size(), a.x(), a.z(), static_cast<std::uint8_t>((4 - a.phase()) & 3u));
}

PauliString conjugate_quarter_turn(const PauliString& q, const PauliString& p, bool adjoint) {
  if (commutes(q, p)) return q;
  PauliString r = multiply(p, q);
  r.set_phase(static_cast<std::uint8_t>(r.phase() + (adjoint ? 3 : 1)));
  return r;
}

std::string PauliString::word() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = at(q);
  return s;
}

std::string PauliString::str() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  return kPrefix[phase_] + word();
}

void PauliSum::add(double coeff, const PauliString& op) {
  if (terms_.empty() && n_ == 0) n_ = op.size();
  if (op.size() != n_) {
    throw DimensionError("term has " + std::to_string(op.size()) + " qubits, sum has " +
                         std::to_string(n_));
  }
  terms_.push_back({coeff, op});
  canonical_ = false;
}

double PauliSum::identity_coefficient() const {
  double c = 0.0;
  for (const auto& t : terms_) {
    if (t.op.is_identity()) c += t.coeff * t.op.sign();
  }
  return c;
}

double PauliSum::frobenius_weight() const {
  double w = 0.0;
  for (const auto& t : terms_) w += t.coeff * t.coeff;
  return w;
}

PauliSum PauliSum::scaled(double s) const {
  PauliSum r = *this;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

std::string PauliSum::str() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : terms_) out << t.coeff << ' ' << t.op.str() << '\n';
  return out.str();
}

PauliSum canonicalize(PauliSum&& s, double tol) {
  auto& terms = s.terms_;
  std::stable_sort(terms.begin(), terms.end(),
                   [](const PauliTerm& a, const PauliTerm& b) { return word_less(a.op, b.op); });
  std::vector<PauliTerm> out;
  out.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size();) {
    double re = 0.0;
    double im = 0.0;
    std::size_t j = i;
    for (; j < terms.size() && same_word(terms[j].op, terms[i].op); ++j) {
      const double c = terms[j].coeff;
      switch (terms[j].op.phase()) {
        case 0: re += c; break;
        case 1: im += c; break;
        case 2: re -= c; break;
        default: im -= c; break;
      }
    }
    if (std::abs(im) > tol) {
      throw NotHermitianError("term " + terms[i].op.word() + " has imaginary coefficient " +
                              std::to_string(im));
    }
    if (!std::isfinite(re)) {
      throw NumericalError("non-finite coefficient on term " + terms[i].op.word());
    }
    if (std::abs(re) >= tol) out.push_back({re, terms[i].op.unsigned_word()});
    i = j;
  }
  terms = std::move(out);
  s.canonical_ = true;
  return std::move(s);
}

PauliSum canonicalize(const PauliSum& s, double tol) {
  PauliSum copy = s;
  return canonicalize(std::move(copy), tol);
}

PauliSum add(const PauliSum& a, const PauliSum& b, double s) {
  if (a.size() != b.size() && !a.empty() && !b.empty()) {
    throw DimensionError("PauliSum size mismatch in add");
  }
  PauliSum r(std::max(a.size(), b.size()));
  r.reserve(a.num_terms() + b.num_terms());
  for (const auto& t : a.terms()) r.add(t.coeff, t.op);
  for (const auto& t : b.terms()) r.add(s * t.coeff, t.op);
  return canonicalize(std::move(r));
}

DiagonalSplit diagonal_split(const PauliSum& s) {
  DiagonalSplit out{PauliSum(s.size()), PauliSum(s.size())};
  for (const auto& t : s.terms()) {
    (t.op.is_diagonal() ? out.diag : out.offdiag).add(t.coeff, t.op);
  }
  if (s.is_canonical()) {
    out.diag = canonicalize(std::move(out.diag), 0.0);
    out.offdiag = canonicalize(std::move(out.offdiag), 0.0);
  }
  return out;
}

double offdiag_weight(const PauliSum& s) {
  double w = 0.0;
  for (const auto& t : s.terms()) {
    if (!t.op.is_diagonal()) w += t.coeff * t.coeff;
  }
  return w;
}

PauliSum product(const PauliSum& a, const PauliSum& b, double tol) {
  if (a.size() != b.size()) throw DimensionError("PauliSum size mismatch in product");
  struct Raw {
    PauliString op;
    std::complex<double> c;
  };
  std::vector<Raw> raw;
  raw.reserve(a.num_terms() * b.num_terms());
  static const std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      PauliString p = multiply(ta.op, tb.op);
      raw.push_back({p.unsigned_word(), ta.coeff * tb.coeff * kIPow[p.phase()]});
    }
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& x, const Raw& y) { return word_less(x.op, y.op); });
  PauliSum out(a.size());
  for (std::size_t i = 0; i < raw.size();) {
    std::complex<double> c = 0.0;
    std::size_t j = i;
    for (; j < raw.size() && same_word(raw[j].op, raw[i].op); ++j) c += raw[j].c;
    if (std::abs(c.imag()) > tol) {
      throw NotHermitianError("product has anti-Hermitian component on " + raw[i].op.word());
    }
    out.add(c.real(), raw[i].op);
    i = j;
  }
  return canonicalize(std::move(out), tol);
}

}  // namespace magic
