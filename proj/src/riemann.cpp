// Copyright 2026 The purify Authors
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

#include "purify/riemann.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace purify {

Complex RiemannPoint::value() const {
    if (!value_) {
        throw std::domain_error("RiemannPoint::value() called on infinity");
    }
    return *value_;
}

RiemannPoint RiemannPoint::reciprocal() const {
    if (is_infinity()) {
        return RiemannPoint(0.0);
    }
    if (*value_ == Complex{0.0, 0.0}) {
        return infinity();
    }
    return from_finite_or_infinity(1.0 / *value_);
}

RiemannPoint RiemannPoint::conj() const {
    return is_infinity() ? *this : RiemannPoint(std::conj(*value_));
}

RiemannPoint RiemannPoint::operator-() const {
    return is_infinity() ? *this : RiemannPoint(-*value_);
}

std::string RiemannPoint::str() const {
    if (is_infinity()) {
        return "inf";
    }
    std::ostringstream out;
    out.precision(17);
    out << value_->real() << (value_->imag() < 0 || std::signbit(value_->imag()) ? "-" : "+")
        << std::abs(value_->imag()) << "i";
    return out.str();
}

RiemannPoint from_finite_or_infinity(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        return RiemannPoint::infinity();
    }
    return RiemannPoint(z);
}

double chordal_distance(const RiemannPoint &a, const RiemannPoint &b) {
    if (a.is_infinity() && b.is_infinity()) {
        return 0.0;
    }
    if (a.is_infinity() || b.is_infinity()) {
        Complex z = a.is_infinity() ? b.value() : a.value();
        return 2.0 / std::sqrt(1.0 + std::norm(z));
    }
    Complex x = a.value();
    Complex y = b.value();
    return 2.0 * std::abs(x - y) / (std::sqrt(1.0 + std::norm(x)) * std::sqrt(1.0 + std::norm(y)));
}

namespace {

double parse_real(std::string_view text, std::string_view whole) {
    if (text.empty() || text == "+") {
        return 1.0;
    }
    if (text == "-") {
        return -1.0;
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    double out = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(out)) {
        throw std::invalid_argument("malformed complex literal '" + std::string(whole) + "'");
    }
    return out;
}

}  // namespace

RiemannPoint parse_riemann_point(std::string_view text) {
    std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty complex literal");
    }
    if (text == "inf" || text == "+inf" || text == "infinity" || text == "Infinity") {
        return RiemannPoint::infinity();
    }
    if (text.back() != 'i') {
        return RiemannPoint(parse_real(text, whole));
    }
    text.remove_suffix(1);
    // Split at the last sign that is not a leading sign or an exponent sign.
    size_t split = std::string_view::npos;
    for (size_t k = text.size(); k-- > 1;) {
        char c = text[k];
        char prev = text[k - 1];
        if ((c == '+' || c == '-') && prev != 'e' && prev != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return RiemannPoint(Complex{0.0, parse_real(text, whole)});
    }
    double re = parse_real(text.substr(0, split), whole);
    double im = parse_real(text.substr(split), whole);
    return RiemannPoint(Complex{re, im});
}

}  // namespace purify
