#pragma once

#include "bbm/errors.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

namespace bbm {

/// Tolerances and truncation for the oscillatory xi-integrals.
/// epsilon is the paper's absolute tolerance (its tail-truncation budget is
/// epsilon/2); M the truncation radius (0 = derive from tail_bound_M).
struct QuadratureConfig {
    double epsilon = 1e-6;
    double M = 0.0;
    int max_panel_depth = 40;
    double rel_tol = 1e-9;
    double min_panel_width = 1e-13;

    QuadratureConfig with_epsilon(double e) const {
        QuadratureConfig q = *this;
        q.epsilon = e;
        return q;
    }
    /// Invariant check; gamma <= 0 skips the M >= 1/sqrt(gamma) rule.
    void check(double gamma) const;
};

namespace quad {

using real_t = long double;

/// Gauss-Legendre abscissas/weights on [-1,1], computed once at startup by
/// Newton iteration so they are accurate to long-double precision.
template <int N>
struct GaussRule {
    std::array<real_t, N> node{};
    std::array<real_t, N> weight{};
    GaussRule();
};

const GaussRule<7>& gauss7();
const GaussRule<15>& gauss15();

template <class T>
struct PanelEstimate {
    T value{};
    real_t error = 0;
};

/// One panel with a 15-point value and |G15-G7| error estimate.
template <class T, class F>
PanelEstimate<T> gauss_panel(F&& f, real_t a, real_t b) {
    const auto& g15 = gauss15();
    const auto& g7 = gauss7();
    const real_t mid = (a + b) / 2, half = (b - a) / 2;
    T v15{}, v7{};
    for (int i = 0; i < 15; ++i) v15 += T(g15.weight[i] * f(mid + half * g15.node[i]));
    for (int i = 0; i < 7; ++i) v7 += T(g7.weight[i] * f(mid + half * g7.node[i]));
    v15 *= half;
    v7 *= half;
    PanelEstimate<T> out;
    out.value = v15;
    out.error = std::abs(v15 - v7);
    return out;
}

struct AdaptiveResult {
    real_t error = 0;        // accumulated error estimate
    long evaluations = 0;
    bool converged = true;
};

/// Globally adaptive bisection over an initial panel list: always refines the
/// worst panel until sum(error) <= max(abs_tol, rel_tol * |sum|) or the depth
/// and width limits stop progress. Final sum uses compensated accumulation.
template <class T, class F>
T integrate_adaptive(F&& f, std::vector<std::pair<real_t, real_t>> initial,
                     real_t abs_tol, real_t rel_tol, int max_depth = 40,
                     real_t min_width = 1e-13L, AdaptiveResult* diag = nullptr) {
    struct Seg {
        real_t a, b;
        T value;
        real_t error;
        int depth;
        bool frozen;
    };
    std::vector<Seg> segs;
    segs.reserve(initial.size() * 4);
    long nevals = 0;
    for (auto [a, b] : initial) {
        if (!(b > a)) continue;
        auto pe = gauss_panel<T>(f, a, b);
        nevals += 22;
        segs.push_back({a, b, pe.value, pe.error, 0, false});
    }

    auto total = [&]() {
        // compensated (Neumaier) summation of values and plain sum of errors
        T s{};
        if constexpr (std::is_same_v<T, real_t>) {
            real_t sum = 0, comp = 0;
            for (auto& sg : segs) {
                real_t t = sum + sg.value;
                comp += (std::abs(sum) >= std::abs(sg.value)) ? (sum - t) + sg.value
                                                              : (sg.value - t) + sum;
                sum = t;
            }
            s = sum + comp;
        } else {
            for (auto& sg : segs) s += sg.value;
        }
        return s;
    };

    auto err_sum = [&]() {
        real_t e = 0;
        for (auto& sg : segs) e += sg.error;
        return e;
    };

    // priority queue of indices by error
    auto cmp = [&](size_t i, size_t j) { return segs[i].error < segs[j].error; };
    std::priority_queue<size_t, std::vector<size_t>, decltype(cmp)> pq(cmp);
    for (size_t i = 0; i < segs.size(); ++i) pq.push(i);

    real_t cur_err = err_sum();
    T cur_val = total();
    const long max_evals = 80'000'000;
    while (!pq.empty() && nevals < max_evals) {
        real_t target = std::max(abs_tol, rel_tol * (real_t)std::abs(cur_val));
        if (cur_err <= target) break;
        size_t i = pq.top();
        pq.pop();
        Seg& s = segs[i];
        if (s.frozen) continue;
        real_t w = s.b - s.a;
        if (s.depth >= max_depth || w < min_width) {
            s.frozen = true;
            continue;
        }
        real_t m = s.a + w / 2;
        auto left = gauss_panel<T>(f, s.a, m);
        auto right = gauss_panel<T>(f, m, s.b);
        nevals += 44;
        cur_err += left.error + right.error - s.error;
        cur_val += left.value + right.value - s.value;
        int d = s.depth + 1;
        real_t b_old = s.b;
        s.b = m;
        s.value = left.value;
        s.error = left.error;
        s.depth = d;
        s.frozen = false;
        segs.push_back({m, b_old, right.value, right.error, d, false});
        pq.push(i);
        pq.push(segs.size() - 1);
    }

    T result = total();
    real_t final_err = err_sum();
    if (diag) {
        diag->error = final_err;
        diag->evaluations = nevals;
        diag->converged =
            final_err <= std::max(abs_tol, rel_tol * (real_t)std::abs(result)) * 4;
    }
    return result;
}

/// Convenience wrapper for a single interval.
template <class T, class F>
T integrate_adaptive(F&& f, real_t a, real_t b, real_t abs_tol, real_t rel_tol,
                     int max_depth = 40, real_t min_width = 1e-13,
                     AdaptiveResult* diag = nullptr) {
    return integrate_adaptive<T>(std::forward<F>(f), {{a, b}}, abs_tol, rel_tol,
                                 max_depth, min_width, diag);
}

} // namespace quad
} // namespace bbm
