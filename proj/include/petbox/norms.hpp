#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "petbox/lattice.hpp"
#include "petbox/polyalg.hpp"

namespace petbox {

using Complex = std::complex<double>;

// Finitely supported f: Z^D -> C.
class LatticeFunction {
public:
    explicit LatticeFunction(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<Vec, Complex, VecLess>& values() const { return values_; }
    std::size_t support_size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    void set(const Vec& x, Complex v);
    Complex value(const Vec& x) const;

    double sup_norm() const;
    bool is_one_bounded(double slack = 1e-12) const;

    // Indicator of the integer box [lo, hi] (inclusive, coordinatewise).
    static LatticeFunction indicator_box(const Vec& lo, const Vec& hi);
    // Independent ±1 values on the box, derived from the seed.
    static LatticeFunction random_pm1(const Vec& lo, const Vec& hi, std::uint64_t seed);
    // Independent unimodular values e^{2πiθ} on the box.
    static LatticeFunction random_unimodular(const Vec& lo, const Vec& hi, std::uint64_t seed);

private:
    int dim_;
    std::map<Vec, Complex, VecLess> values_;
};

// Δ_h f(x) = f(x)·conj(f(x+h)).
LatticeFunction mult_derivative(const LatticeFunction& f, const Vec& h);
// Δ'_{(h,h')} f(x) = f(x+h)·conj(f(x+h')).
LatticeFunction mult_derivative_pair(const LatticeFunction& f, const Vec& h, const Vec& hp);

struct NormReport {
    double power = 0.0;   // the 2^s-th power of the norm, never the root
    int degree = 0;       // s
    double tolerance = 0.0;
};

inline constexpr long long kDefaultMaxStates = 100'000'000;

// ‖f‖_{E_1..E_s}^{2^s} via the Fejér-kernel form: iterates over the kernel
// supports supp(μ_{E_i}) rather than over E_i × E_i.
NormReport box_norm_power(const LatticeFunction& f, const std::vector<Multiset>& es,
                          long long max_states = kDefaultMaxStates);

// The defining pair-average form, kept as an independent evaluation route.
NormReport box_norm_power_direct(const LatticeFunction& f, const std::vector<Multiset>& es,
                                 long long max_states = kDefaultMaxStates);

// Gowers–Cauchy–Schwarz inner product of 2^s functions indexed by the bits
// of their position (bit i set = h_i' side conjugate pattern).
Complex gcs_inner(const std::vector<LatticeFunction>& fs, const std::vector<Multiset>& es,
                  long long max_states = kDefaultMaxStates);

// Σ_x E_{z ∈ [K]} f_0(x)·Π_j f_j(x + P_j(z)), [K] = {1..K}.
Complex counting_operator(const std::vector<LatticeFunction>& fs, const std::vector<VectorPoly>& ps,
                          long long k);

// Σ_h μ_K(h_1)···μ_K(h_r) Σ_x E_{z∈[K]} Π_{eps} C^{|eps|} f(x + P(z + eps·h)),
// for f on Z and P in z only.
double averaged_counting_operator(const LatticeFunction& f, const VectorPoly& p, long long k, int r);

struct VdcReport {
    double lhs = 0.0;            // |E_{z in [K]} f(z)|^2
    double rhs_symmetric = 0.0;  // symmetric variant right-hand side
    double rhs_kernel = 0.0;     // Fejér-kernel variant right-hand side
    bool holds = false;
};

// Both van der Corput inequality variants for a 1-bounded sequence on [K].
VdcReport vdc_inequality_check(const std::vector<Complex>& seq, long long h_range,
                               double slack = 1e-12);

}  // namespace petbox
