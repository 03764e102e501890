/*
 * Copyright 2026 The dubreil authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace dubreil {

// Error taxonomy shared by the whole library.  The CLI maps these onto
// process exit codes: input_error -> 2, theorem_error -> 1,
// inconclusive_error -> 3.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct theorem_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct inconclusive_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::mpq_rational;

// Prime field with a process-wide runtime modulus.  The modulus is set once
// per session (CLI startup or test fixture) before any Fp value is built.
class Fp {
 public:
  Fp() : v_(0) {}
  Fp(long long x) : v_(normalize(x)) {}

  static void set_modulus(std::int64_t p) {
    if (p < 2) throw input_error("field modulus must be at least 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw input_error("field modulus must be prime");
    modulus_ = p;
  }
  static std::int64_t modulus() { return modulus_; }

  std::int64_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return Fp(a.v_ + b.v_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(a.v_ - b.v_); }
  friend Fp operator*(Fp a, Fp b) { return Fp(a.v_ * b.v_); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(-v_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const {
    if (v_ == 0) throw input_error("division by zero in prime field");
    // Extended Euclid; modulus is prime so any nonzero value is a unit.
    std::int64_t a = v_, b = modulus_, x0 = 1, x1 = 0;
    while (b != 0) {
      std::int64_t q = a / b;
      std::int64_t t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    return Fp(x0);
  }

 private:
  static std::int64_t normalize(std::int64_t x) {
    std::int64_t r = x % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  static inline std::int64_t modulus_ = 5;
  std::int64_t v_;
};

template <class K>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool is_finite = false;
  static std::string name() { return "q"; }
  static Rational from_string(const std::string& s) {
    try {
      return Rational(s);
    } catch (const std::exception&) {
      throw input_error("bad rational literal: " + s);
    }
  }
  static std::string to_string(const Rational& x) { return x.str(); }
  static Rational from_int(long long n) { return Rational(n); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldTraits<Fp> {
  static constexpr bool is_finite = true;
  static std::string name() { return "fp:" + std::to_string(Fp::modulus()); }
  static Fp from_string(const std::string& s) {
    std::size_t pos = 0;
    long long n = 0;
    try {
      n = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw input_error("bad prime field literal: " + s);
    }
    if (pos != s.size()) throw input_error("bad prime field literal: " + s);
    return Fp(n);
  }
  static std::string to_string(const Fp& x) { return std::to_string(x.value()); }
  static Fp from_int(long long n) { return Fp(n); }
  static bool is_zero(const Fp& x) { return x.value() == 0; }
};

}  // namespace dubreil
