#include "bbm/kernels.hpp"
#include "bbm/errors.hpp"
#include "bbm/parallel.hpp"

#include <cmath>

namespace bbm {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

TransformCache::TransformCache(FunctionDescriptor d, QuadratureConfig qc)
    : d_(std::move(d)), qc_(qc) {
    if (d_.kind != FunctionKind::Zero && !decays_integrably(d_))
        throw ConfigError("transform cache needs an integrably decaying profile");
    for (int k = 0; k <= SeriesXi::kOrder; ++k) deriv0_[k] = eval_derivative(d_, 0.0, k);
    if (d_.kind != FunctionKind::Zero)
        rem_ = std::abs(deriv0_[SeriesXi::kOrder]) +
               derivative_l1_norm(d_, SeriesXi::kOrder + 1);
}

cplxl TransformCache::value(double xi) {
    auto it = memo_.find(xi);
    if (it != memo_.end()) return it->second;
    cplxl v = 0.0L;
    if (d_.kind != FunctionKind::Zero) {
        const cplx fv = forward(d_, xi, qc_);
        v = cplxl(fv.real(), fv.imag());
    }
    memo_.emplace(xi, v);
    return v;
}

SeriesXi TransformCache::series(double vf) const {
    // P(u)(xi) ~ sum_{k>=1} u^{(k-1)}(0) / (i xi)^k, remainder from the
    // K-th integration by parts.
    SeriesXi s;
    s.valid_from = std::max(vf, 1.0);
    cplx ipow(0.0, 1.0);  // i^k starting at k=1
    for (int k = 1; k <= SeriesXi::kOrder; ++k) {
        s.c[k] = deriv0_[k - 1] / ipow;
        ipow *= cplx(0.0, 1.0);
    }
    s.rem = rem_;
    return s;
}

OscAmplitude amp_transform(TransformCachePtr cache) {
    OscAmplitude a;
    a.eval = [cache](double xi) { return cache->value(xi); };
    a.series_at = [cache](double vf) { return cache->series(vf); };
    a.suggested_lambda = std::max(4.0, 6.0 / decay_scale(cache->descriptor()));
    return a;
}

OscAmplitude amp_q_transform(TransformCachePtr cache, double gamma) {
    OscAmplitude a;
    a.eval = [cache, gamma](double xi) {
        return cache->value(xi) / (1.0L + (long double)gamma * (long double)xi * xi);
    };
    a.series_at = [cache, gamma](double vf) {
        return series_lorentzian(gamma, vf).times(cache->series(vf));
    };
    a.suggested_lambda =
        std::max({4.0, 6.0 / decay_scale(cache->descriptor()), 4.0 / std::sqrt(gamma)});
    return a;
}

double phi(double x, double t, double alpha, double gamma, const QuadratureConfig& qc) {
    PhaseDescriptor pd{alpha, gamma, x, t};
    return integrate_phi_raw(pd, qc).value.real() / kTwoPi;
}

double gamma_convolve(const FunctionDescriptor& u0, double x, double t, double alpha,
                      double gamma, const QuadratureConfig& qc, TransformCache* cache) {
    if (!(gamma > 0.0)) throw ConfigError("gamma_convolve requires gamma > 0");
    if (u0.kind == FunctionKind::Zero) return 0.0;
    if (!decays_integrably(u0))
        throw ConfigError("u0 must have certified spatial tail decay");
    TransformCachePtr local;
    OscAmplitude amp;
    if (cache) {
        // non-owning view over the caller's cache
        amp.eval = [cache](double xi) { return cache->value(xi); };
        amp.series_at = [cache](double vf) { return cache->series(vf); };
        amp.suggested_lambda = std::max(4.0, 6.0 / decay_scale(u0));
    } else {
        local = std::make_shared<TransformCache>(u0, qc);
        amp = amp_transform(local);
    }
    return osc_full_line(amp, x, t, alpha, gamma, qc).value / kTwoPi;
}

double kernel_K(double x, double y, double gamma) {
    if (!(gamma > 0.0)) throw ConfigError("kernel_K requires gamma > 0");
    const double sg = std::sqrt(gamma);
    const double diff = x - y;
    const double sgn = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
    return (std::exp(-(x + y) / sg) + sgn * std::exp(-std::abs(diff) / sg)) / (2.0 * gamma);
}

KernelField build_kernel_field(const Grid& grid, double alpha, double gamma,
                               const QuadratureConfig& qc, int threads) {
    KernelField kf;
    kf.grid = grid;
    kf.config = qc;
    kf.alpha = alpha;
    kf.gamma = gamma;
    const Eigen::Index nx = grid.x.size(), nt = grid.t.size();
    kf.phi_values.resize(nx, nt);
    parallel_for(nx * nt, [&](long idx) {
        const Eigen::Index i = idx / nt, j = idx % nt;
        kf.phi_values(i, j) = phi(grid.x[i], grid.t[j], alpha, gamma, qc);
    }, threads);
    return kf;
}

} // namespace bbm
