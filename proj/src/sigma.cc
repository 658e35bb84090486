// Copyright 2026 The phaseshadow Authors
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

#include "phaseshadow/sigma.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace phaseshadow {

namespace {

using boost::multiprecision::cpp_int;

constexpr double kCancellationRatio = 1e-4;

void check_rate(double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("sigma: error rate must lie in [0, 1]");
    }
}

/// Row n of Pascal's triangle, exact while entries fit the 64-bit mantissa.
std::vector<long double> binomial_row(size_t n) {
    std::vector<long double> row{1.0L};
    for (size_t k = 1; k <= n; k++) {
        row.push_back(1.0L);
        for (size_t j = k - 1; j > 0; j--) {
            row[j] += row[j - 1];
        }
    }
    return row;
}

/// log of base^exponent with 0^0 = 1; -inf encodes an exact zero.
long double log_pow(long double log_base, bool base_is_zero, long double exponent) {
    if (exponent == 0) {
        return 0.0L;
    }
    if (base_is_zero) {
        return -std::numeric_limits<long double>::infinity();
    }
    return exponent * log_base;
}

struct NeumaierSum {
    long double sum = 0;
    long double compensation = 0;

    void add(long double x) {
        long double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            compensation += (sum - t) + x;
        } else {
            compensation += (x - t) + sum;
        }
        sum = t;
    }
    long double value() const {
        return sum + compensation;
    }
};

struct CompensatedResult {
    double value;
    double max_term;
};

CompensatedResult compensated(const PauliClass &cls, double q, size_t extra_exponent) {
    check_rate(q);
    size_t n1 = cls.n1, n2 = cls.n2, n3 = cls.n3;
    size_t total = n1 + n2;
    auto c1 = binomial_row(n1);
    auto c2 = binomial_row(n2);
    long double lq = q;
    long double log_keep = q < 1 ? std::log1p(-lq) : 0.0L;
    long double log_flip = q > 0 ? std::log(lq) : 0.0L;
    long double log_extra = log_pow(log_keep, q == 1, static_cast<long double>(extra_exponent));

    NeumaierSum acc;
    long double max_term = 0;
    for (size_t s = 0; s <= total; s++) {
        long double lw = log_pow(log_keep, q == 1, static_cast<long double>((total - s) * n3)) +
                         log_pow(log_flip, q == 0, static_cast<long double>(s * n3)) + log_extra;
        if (std::isinf(lw)) {
            continue;
        }
        long double w = std::exp(lw);
        size_t t_lo = s > n1 ? s - n1 : 0;
        size_t t_hi = std::min(s, n2);
        for (size_t t = t_lo; t <= t_hi; t++) {
            long double mag = c1[s - t] * c2[t] * w;
            max_term = std::max(max_term, mag);
            acc.add((t & 1) ? -mag : mag);
        }
    }
    return {static_cast<double>(acc.value()), static_cast<double>(max_term)};
}

/// q = mantissa / 2^shift exactly.
void dyadic(double q, uint64_t &mantissa, int &shift) {
    if (q == 0) {
        mantissa = 0;
        shift = 0;
        return;
    }
    int e;
    double f = std::frexp(q, &e);
    mantissa = static_cast<uint64_t>(std::ldexp(f, 53));
    shift = 53 - e;
    while (shift > 0 && (mantissa & 1) == 0) {
        mantissa >>= 1;
        shift--;
    }
}

double ratio_to_double(cpp_int numerator, long long denominator_log2) {
    if (numerator == 0) {
        return 0.0;
    }
    bool negative = numerator < 0;
    if (negative) {
        numerator = -numerator;
    }
    long long top = static_cast<long long>(boost::multiprecision::msb(numerator));
    if (top > 62) {
        long long drop = top - 62;
        numerator >>= static_cast<unsigned>(drop);
        denominator_log2 -= drop;
    }
    double v = std::ldexp(static_cast<double>(numerator.convert_to<uint64_t>()), static_cast<int>(-denominator_log2));
    return negative ? -v : v;
}

cpp_int binomial(size_t n, size_t k) {
    cpp_int r = 1;
    for (size_t i = 1; i <= k; i++) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace

double sigma_sum_compensated(const PauliClass &cls, double q, size_t extra_exponent) {
    return compensated(cls, q, extra_exponent).value;
}

double sigma_sum_bigint(const PauliClass &cls, double q, size_t extra_exponent) {
    check_rate(q);
    size_t n1 = cls.n1, n2 = cls.n2, n3 = cls.n3;
    size_t total = n1 + n2;
    uint64_t m;
    int k;
    dyadic(q, m, k);
    cpp_int one_scaled = cpp_int(1) << k;
    cpp_int keep = one_scaled - m;
    cpp_int flip = m;
    cpp_int a = boost::multiprecision::pow(keep, static_cast<unsigned>(n3));
    cpp_int b = boost::multiprecision::pow(flip, static_cast<unsigned>(n3));

    // Horner in the homogeneous form sum_s c_s a^{N-s} b^s.
    cpp_int r = 0;
    cpp_int b_pow = 1;
    for (size_t s = 0; s <= total; s++) {
        cpp_int c = 0;
        size_t t_lo = s > n1 ? s - n1 : 0;
        size_t t_hi = std::min(s, n2);
        for (size_t t = t_lo; t <= t_hi; t++) {
            cpp_int term = binomial(n1, s - t) * binomial(n2, t);
            if (t & 1) {
                c -= term;
            } else {
                c += term;
            }
        }
        if (s > 0) {
            r *= a;
            b_pow *= b;
        }
        r += c * b_pow;
    }
    r *= boost::multiprecision::pow(keep, static_cast<unsigned>(extra_exponent));
    long long den = static_cast<long long>(k) * static_cast<long long>(n3 * total + extra_exponent);
    return ratio_to_double(r, den);
}

namespace {

double sigma_sum(const PauliClass &cls, double q, size_t extra_exponent) {
    if (cls.n3 == 0) {
        // Every weight is 1: sum_s sum_t (-1)^t C(n1, s-t) C(n2, t) = 2^{n1} 0^{n2}.
        check_rate(q);
        if (cls.n2 > 0) {
            return 0.0;
        }
        return std::ldexp(1.0, static_cast<int>(cls.n1)) * (extra_exponent ? std::pow(1 - q, extra_exponent) : 1.0);
    }
    auto res = compensated(cls, q, extra_exponent);
    if (std::abs(res.value) < kCancellationRatio * res.max_term) {
        return sigma_sum_bigint(cls, q, extra_exponent);
    }
    return res.value;
}

}  // namespace

double sigma_exact(const PauliClass &cls, double p) {
    return sigma_sum(cls, p, 0);
}

double sigma_extended(const PauliClass &cls, double p) {
    size_t n3 = cls.n3;
    return sigma_sum(cls, 0.5 * p, n3 * (n3 ? n3 - 1 : 0) / 2);
}

double sigma_approx(const PauliClass &cls, double p) {
    check_rate(p);
    double e = static_cast<double>(cls.n3 * (cls.num_qubits() - cls.n3));
    if (e == 0) {
        return 1.0;
    }
    return std::exp(e * std::log1p(-p));
}

double sigma_approx(const PauliString &p, const NoiseModel &model) {
    size_t n = p.num_qubits();
    if (model.kind != NoiseKind::ZZ_HET) {
        return sigma_approx(classify(p), model.is_noiseless() ? 0.0 : model.p_e);
    }
    if (model.het_qubits != n) {
        throw std::invalid_argument("sigma_approx: rate table size does not match the Pauli");
    }
    double log_total = 0;
    for (size_t s = 0; s < n; s++) {
        if (p.xs[s]) {
            continue;
        }
        for (size_t t = 0; t < n; t++) {
            if (p.xs[t]) {
                log_total += std::log1p(-model.pair_rate(s, t));
            }
        }
    }
    return std::exp(log_total);
}

double sigma_value(const PauliClass &cls, const NoiseModel &model) {
    switch (model.kind) {
        case NoiseKind::NOISELESS:
            return sigma_exact(cls, 0.0);
        case NoiseKind::ZZ:
            return sigma_exact(cls, model.p_e);
        case NoiseKind::EXTENDED:
            return sigma_extended(cls, model.p_e);
        case NoiseKind::ZZ_HET:
            throw std::invalid_argument("sigma_value: zz_het needs the concrete Pauli, use sigma_for");
    }
    throw std::logic_error("unknown noise kind");
}

double sigma_value(const SigmaQuery &q) {
    return sigma_value(q.cls, q.model);
}

double sigma_for(const PauliString &p, const NoiseModel &model) {
    if (is_ztype(p)) {
        throw std::invalid_argument("sigma_for: Z-type Pauli " + p.str() + " has no inverse weight");
    }
    if (model.kind == NoiseKind::ZZ_HET) {
        return sigma_approx(p, model);
    }
    static std::mutex mu;
    static std::map<std::tuple<size_t, size_t, size_t, int, double>, double> cache;
    auto cls = classify(p);
    auto key = std::make_tuple(cls.n1, cls.n2, cls.n3, static_cast<int>(model.kind), model.p_e);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    double v = sigma_value(cls, model);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, v);
    return v;
}

SigmaTable::SigmaTable(size_t n, NoiseModel model) : n_(n), model_(std::move(model)) {
    model_.validate();
    if (model_.kind == NoiseKind::ZZ_HET) {
        return;
    }
    values_.assign((n_ + 1) * (n_ + 1), std::numeric_limits<double>::quiet_NaN());
    for (size_t n3 = 0; n3 <= n_; n3++) {
        for (size_t n2 = 0; n2 + n3 <= n_; n2++) {
            values_[index(n2, n3)] = sigma_value(PauliClass{n_ - n2 - n3, n2, n3}, model_);
        }
    }
}

size_t SigmaTable::index(size_t n2, size_t n3) const {
    return n2 * (n_ + 1) + n3;
}

double SigmaTable::at(const PauliClass &cls) const {
    if (cls.num_qubits() != n_) {
        throw std::invalid_argument("SigmaTable: class has the wrong qubit count");
    }
    if (model_.kind == NoiseKind::ZZ_HET) {
        throw std::invalid_argument("SigmaTable: zz_het lookups need the concrete Pauli");
    }
    return values_[index(cls.n2, cls.n3)];
}

double SigmaTable::at(const PauliString &p) const {
    if (is_ztype(p)) {
        throw std::invalid_argument("SigmaTable: Z-type Pauli " + p.str() + " has no inverse weight");
    }
    if (model_.kind == NoiseKind::ZZ_HET) {
        return sigma_approx(p, model_);
    }
    return at(classify(p));
}

double SigmaTable::min_offdiag() const {
    if (model_.kind == NoiseKind::ZZ_HET) {
        throw std::invalid_argument("SigmaTable: no class table for zz_het");
    }
    double best = std::numeric_limits<double>::infinity();
    for (size_t n3 = 1; n3 <= n_; n3++) {
        for (size_t n2 = 0; n2 + n3 <= n_; n2++) {
            best = std::min(best, values_[index(n2, n3)]);
        }
    }
    return best;
}

}  // namespace phaseshadow
