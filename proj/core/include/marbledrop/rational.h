// Copyright 2026 The Marble Drop Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MARBLEDROP_RATIONAL_H_
#define MARBLEDROP_RATIONAL_H_

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace marbledrop {

// Exact arbitrary-precision rational. All solver comparisons use this type.
using Rational = boost::multiprecision::cpp_rational;

inline std::string ToString(const Rational& r) { return r.str(); }
// Parses "p" or "p/q".
Rational ParseRational(const std::string& text);
double ToDouble(const Rational& r);

}  // namespace marbledrop

#endif  // MARBLEDROP_RATIONAL_H_
