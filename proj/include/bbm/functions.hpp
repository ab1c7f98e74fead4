#pragma once

#include <string>
#include <vector>

namespace bbm {

/// Closed catalog of scalar data functions, so problems stay serializable.
enum class FunctionKind {
    Zero,
    Gaussian,   // a * exp(-(s-x0)^2 / (2 w^2))          params: a, x0, w
    ExpDecay,   // a * exp(-k s)                          params: a, k
    Sine,       // a * sin(2 pi s / T0)                   params: a, T0
    SineRamped, // a * (1 - exp(-s/tau)) * sin(2pi s/T0)  params: a, T0, tau
    PolyExp     // (c0 + c1 s + c2 s^2 + c3 s^3) e^{-ks}  params: c0..c3, k
};

/// A named, parameterized function from the catalog. Pure and immutable.
struct FunctionDescriptor {
    FunctionKind kind = FunctionKind::Zero;
    std::vector<double> params;

    static FunctionDescriptor zero();
    static FunctionDescriptor gaussian(double a, double x0, double w);
    static FunctionDescriptor exp_decay(double a, double k);
    static FunctionDescriptor sine(double a, double T0);
    static FunctionDescriptor sine_ramped(double a, double T0, double tau);
    static FunctionDescriptor poly_exp(double c0, double c1, double c2, double c3, double k);

    bool operator==(const FunctionDescriptor&) const = default;
};

FunctionKind kind_from_string(const std::string& s);
std::string kind_to_string(FunctionKind k);

/// Catalog function value at s. Pure; callers rely on bit-identical repeats.
double eval_function(const FunctionDescriptor& d, double s);

/// n-th derivative at s (n = 0 returns the value). Analytic, no differencing.
double eval_derivative(const FunctionDescriptor& d, double s, int n);

/// True for kinds that decay integrably on the half line (usable as u0 or a
/// spatial forcing profile; sine/sine_ramped are temporal-only).
bool decays_integrably(const FunctionDescriptor& d);

/// True for kinds periodic in their argument (sine exactly, sine_ramped
/// asymptotically).
bool is_periodic(const FunctionDescriptor& d);

/// Declared period for sine/sine_ramped, 0 otherwise.
double period_of(const FunctionDescriptor& d);

/// Length scale of decay (w for gaussian, 1/k for exponentials); 1 for
/// non-decaying kinds.
double decay_scale(const FunctionDescriptor& d);

/// Center of mass of the profile (x0 for gaussian, 0 otherwise).
double center_of(const FunctionDescriptor& d);

/// Conservative bound on the mass beyond y: integral_y^inf |f|.
double tail_mass(const FunctionDescriptor& d, double y);

/// Numeric L1 norm of the n-th derivative on [0, inf). Used as the remainder
/// constant of the large-xi transform series.
double derivative_l1_norm(const FunctionDescriptor& d, int n);

} // namespace bbm
