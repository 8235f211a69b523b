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

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace magic {

/// Upper bound on the qubit count of any Pauli object.
inline constexpr std::size_t kMaxQubits = 256;

/// Fixed-capacity packed bit vector. Bits beyond the logical length are
/// always zero, so word-wise comparisons and hashes need no masking.
class Bits {
 public:
  static constexpr std::size_t kWords = kMaxQubits / 64;

  constexpr Bits() = default;

  static Bits from_u64(std::uint64_t v) {
    Bits b;
    b.words_[0] = v;
    return b;
  }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  bool any() const {
    std::uint64_t acc = 0;
    for (auto w : words_) acc |= w;
    return acc != 0;
  }
  int popcount() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  /// Lowest set bit, or -1 when empty.
  int lowest() const {
    for (std::size_t i = 0; i < kWords; ++i) {
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  std::uint64_t low() const { return words_[0]; }

  Bits& operator^=(const Bits& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  /// Parity of the GF(2) inner product.
  friend bool dot(const Bits& a, const Bits& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < kWords; ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1;
  }
  friend int and_popcount(const Bits& a, const Bits& b) {
    int c = 0;
    for (std::size_t i = 0; i < kWords; ++i) c += std::popcount(a.words_[i] & b.words_[i]);
    return c;
  }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

  std::size_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (auto w : words_) {
      h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  /// "0101..." with bit 0 first.
  std::string str(std::size_t n) const;
  static Bits parse(std::string_view s);

 private:
  std::array<std::uint64_t, kWords> words_{};
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

/// An n-qubit Pauli operator i^phase * (sigma_0 (x) sigma_1 (x) ...), where
/// sigma_q is I, X, Z or Y for (x_q, z_q) = (0,0), (1,0), (0,1), (1,1).
///
/// The phase is measured relative to the Hermitian tensor word, so an operator
/// is Hermitian exactly when the phase is even and its sign is then (-1)^(phase/2).
/// Qubit q is bit q of both vectors and character q of the word form.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on n qubits.
  explicit PauliString(std::size_t n);
  PauliString(std::size_t n, const Bits& x, const Bits& z, std::uint8_t phase = 0);

  /// Parses an optional sign prefix ("+", "-", "i", "-i") followed by a word
  /// over {I,X,Y,Z} (also '_' for I). Throws ParseError.
  static PauliString from_word(std::string_view word);
  /// Single-site operator `p` in {I,X,Y,Z} on qubit q.
  static PauliString single(std::size_t n, std::size_t q, char p);

  std::size_t size() const { return n_; }
  const Bits& x() const { return x_; }
  const Bits& z() const { return z_; }
  std::uint8_t phase() const { return phase_; }

  char at(std::size_t q) const;
  void set(std::size_t q, char p);
  void set_phase(std::uint8_t phase) { phase_ = phase & 3u; }

  bool is_hermitian() const { return (phase_ & 1u) == 0; }
  /// +1 or -1; only meaningful for Hermitian operators.
  int sign() const { return phase_ == 2 ? -1 : 1; }
  bool is_identity() const { return !x_.any() && !z_.any(); }
  bool is_diagonal() const { return !x_.any(); }
  /// Number of non-identity sites.
  int weight() const { return (x_ | z_).popcount(); }

  /// Same Pauli word with phase 0.
  PauliString unsigned_word() const { return PauliString(n_, x_, z_, 0); }

  /// Exact group product: *this = *this * rhs.
  PauliString& operator*=(const PauliString& rhs);

  /// Word with sign prefix, e.g. "+XIZ", "-iY".
  std::string str() const;
  /// Bare word without phase, e.g. "XIZ".
  std::string word() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_ = 0;
  Bits x_;
  Bits z_;
  std::uint8_t phase_ = 0;
};

/// Exact product a*b including the phase. Throws DimensionError.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Symplectic commutation test. Throws DimensionError.
bool commutes(const PauliString& a, const PauliString& b);

/// Group inverse (adjoint): the same word with the phase negated.
PauliString inverse(const PauliString& a);

/// Conjugation by the Clifford rotation exp(i*pi*P/4):
///   forward: e^{i pi P/4} Q e^{-i pi P/4} = i P Q when {P,Q} = 0, else Q.
///   adjoint: e^{-i pi P/4} Q e^{i pi P/4} = -i P Q when {P,Q} = 0, else Q.
/// P must be a Hermitian Pauli.
PauliString conjugate_quarter_turn(const PauliString& q, const PauliString& p, bool adjoint);

struct PauliTerm {
  double coeff = 0.0;
  PauliString op;
};

/// Default canonicalization tolerance.
inline constexpr double kCanonicalTol = 1e-12;

/// Hermitian operator sum_i coeff_i * P_i with real coefficients.
///
/// In canonical form every stored operator has phase 0, no two terms share a
/// word, no |coeff| is below the tolerance, and terms are sorted by (x, z).
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  bool is_canonical() const { return canonical_; }

  /// Appends a term; clears the canonical flag. Throws DimensionError.
  void add(double coeff, const PauliString& op);
  void add(double coeff, std::string_view word) { add(coeff, PauliString::from_word(word)); }
  void reserve(std::size_t n) { terms_.reserve(n); }

  /// Coefficient of the identity term (canonical input).
  double identity_coefficient() const;
  /// Sum of squared coefficients, i.e. ||H||_F^2 / 2^n for canonical input.
  double frobenius_weight() const;

  PauliSum scaled(double s) const;

  std::string str() const;

  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].op == b.terms_[i].op)) {
        return false;
      }
    }
    return true;
  }

 private:
  friend PauliSum canonicalize(const PauliSum& s, double tol);
  friend PauliSum canonicalize(PauliSum&& s, double tol);

  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
  bool canonical_ = false;
};

/// Merges duplicate words, folds signs into coefficients, prunes |coeff| < tol
/// and sorts. Throws NotHermitianError when a term carries an odd phase whose
/// merged coefficient exceeds tol.
PauliSum canonicalize(const PauliSum& s, double tol = kCanonicalTol);
PauliSum canonicalize(PauliSum&& s, double tol = kCanonicalTol);

/// a + s*b, canonical.
PauliSum add(const PauliSum& a, const PauliSum& b, double s = 1.0);

struct DiagonalSplit {
  PauliSum diag;
  PauliSum offdiag;
};

/// Splits into Z/I-only terms and the rest.
DiagonalSplit diagonal_split(const PauliSum& s);

/// Sum of squared coefficients of the terms with a nonzero X component.
double offdiag_weight(const PauliSum& s);

/// Operator product a*b, canonical. Anti-Hermitian cross terms must cancel;
/// throws NotHermitianError otherwise.
PauliSum product(const PauliSum& a, const PauliSum& b, double tol = kCanonicalTol);

}  // namespace magic

template <>
struct std::hash<magic::Bits> {
  std::size_t operator()(const magic::Bits& b) const noexcept { return b.hash(); }
};
