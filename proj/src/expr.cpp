/*
 * Copyright 2026 The nulldist Authors
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

#include "nulldist/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nulldist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

}  // namespace

ScalarExpr ScalarExpr::constant(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("constant expression needs a finite positive value");
  }
  return ScalarExpr(Kind::Constant, c);
}

ScalarExpr ScalarExpr::parse(std::string_view text) {
  const std::string s = strip(text);
  if (s == "t") return linear();
  if (s == "t^2" || s == "t**2") return quadratic();
  if (s == "exp(t)") return exponential();
  if (s.rfind("const", 0) == 0) {
    const std::string number = s.substr(5);
    double c = 0.0;
    const auto* first = number.data();
    const auto* last = number.data() + number.size();
    const auto [ptr, ec] = std::from_chars(first, last, c);
    if (number.empty() || ec != std::errc() || ptr != last) {
      throw std::invalid_argument("malformed constant in expression '" + std::string(text) + "'");
    }
    return constant(c);
  }
  throw std::invalid_argument("expression '" + std::string(text) +
                              "' is not one of: const c, t, t^2, exp(t)");
}

std::string ScalarExpr::to_string() const {
  switch (kind_) {
    case Kind::Constant: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof(buf), c_);
      return "const " + std::string(buf, res.ptr);
    }
    case Kind::Linear: return "t";
    case Kind::Quadratic: return "t^2";
    case Kind::Exponential: return "exp(t)";
  }
  return "?";
}

double ScalarExpr::value(double t) const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::Linear: return t;
    case Kind::Quadratic: return t * t;
    case Kind::Exponential: return std::exp(t);
  }
  return 0.0;
}

double ScalarExpr::derivative(double t) const {
  switch (kind_) {
    case Kind::Constant: return 0.0;
    case Kind::Linear: return 1.0;
    case Kind::Quadratic: return 2.0 * t;
    case Kind::Exponential: return std::exp(t);
  }
  return 0.0;
}

double ScalarExpr::second_derivative(double t) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Linear: return 0.0;
    case Kind::Quadratic: return 2.0;
    case Kind::Exponential: return std::exp(t);
  }
  return 0.0;
}

double ScalarExpr::inverse(double v) const {
  switch (kind_) {
    case Kind::Constant:
      throw std::invalid_argument("constant expression has no inverse");
    case Kind::Linear: return v;
    case Kind::Quadratic:
      if (!(v > 0.0)) throw std::invalid_argument("t^2 = v needs v > 0 on (0, inf)");
      return std::sqrt(v);
    case Kind::Exponential:
      if (!(v > 0.0)) throw std::invalid_argument("exp(t) = v needs v > 0");
      return std::log(v);
  }
  return 0.0;
}

double ScalarExpr::interval_lower() const {
  switch (kind_) {
    case Kind::Linear:
    case Kind::Quadratic: return 0.0;
    default: return -kInf;
  }
}

double ScalarExpr::interval_upper() const { return kInf; }

double ScalarExpr::limit_at_lower() const {
  return kind_ == Kind::Constant ? c_ : 0.0;
}

double ScalarExpr::conformal_time(double t) const {
  switch (kind_) {
    case Kind::Constant: return t / c_;
    case Kind::Linear: return std::log(t);
    case Kind::Quadratic: return -1.0 / t;
    case Kind::Exponential: return -std::exp(-t);
  }
  return 0.0;
}

double ScalarExpr::from_conformal_time(double u) const {
  switch (kind_) {
    case Kind::Constant: return c_ * u;
    case Kind::Linear: return std::exp(u);
    case Kind::Quadratic: return -1.0 / u;
    case Kind::Exponential: return -std::log(-u);
  }
  return 0.0;
}

double ScalarExpr::conformal_lower() const { return -kInf; }

double ScalarExpr::conformal_upper() const {
  switch (kind_) {
    case Kind::Quadratic:
    case Kind::Exponential: return 0.0;
    default: return kInf;
  }
}

}  // namespace nulldist
