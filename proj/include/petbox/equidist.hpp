#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "petbox/ints.hpp"

namespace petbox {

// Exact count of (m_1..m_l) in [±M]^l with Σ h_i m_i = target.
Int count_linear_solutions(const std::vector<long long>& h, long long m_range, long long target);

// Counts for every reachable target at once (value distribution of Σ h_i m_i).
std::map<long long, Int> linear_solution_table(const std::vector<long long>& h, long long m_range);

// Exact count of (m_1..m_{l-1}) in [±M]^{l-1} with Σ h_i m_i ≡ target (mod modulus).
Int count_congruence_solutions(const std::vector<long long>& h, long long modulus, long long m_range,
                               long long target);

// M^{l-1}·gcd(h_1..h_l)/|h_l| + M^{l-2}, the comparator for the solution
// counts above (implicit constant omitted).
Rational linear_bound_rhs(const std::vector<long long>& h, long long m_range);

// K_{t,l,r}: r rows of strictly increasing l-subsets of [t].
struct AdmissibleIndexSet {
    int t = 0, ell = 0, r = 0;
    // tuples[i][l][j] = k_{(l+1)(j+1)} of the i-th tuple, 1-based values.
    std::vector<std::vector<std::vector<int>>> tuples;

    std::size_t size() const { return tuples.size(); }
};

AdmissibleIndexSet enumerate_calK(int t, int ell, int r);
Int calK_size(int t, int ell, int r);

// Membership in H_{l,eta}: for all ordered triples of distinct positions
// (k, k', k'') in [t]^l, |h_k - h_k''| >= eta·H and
// gcd(h_k - h_k'', h_k' - h_k'') <= 1/eta.  A gcd of an all-zero pair counts
// as large.  `values` is indexed by the flattened tuple (k_1..k_l), row-major
// with k_l fastest.
bool in_calH(const std::vector<long long>& values, int l, int t, const Rational& eta, long long h_range);

struct DensityResult {
    bool exact = false;
    Rational exact_fraction;   // complement fraction when exact
    double estimate = 0.0;     // complement fraction estimate
    double std_error = 0.0;
    long long samples = 0;
};

inline constexpr long long kDefaultEnumCap = 100'000'000;

// Fraction of [±H]^{t^l} lying OUTSIDE H_{l,eta}; exact enumeration when the
// state space fits under the cap, otherwise Monte Carlo.
DensityResult calh_complement_fraction(int l, int t, const Rational& eta, long long h_range, bool exact,
                                       long long cap = kDefaultEnumCap, std::uint64_t seed = 0,
                                       long long samples = 100000);

struct MultilinearSystem {
    int t = 3, ell = 3, r = 1, s = 1;
    long long h_range = 2, m_range = 2;
    Rational eta = Rational(Int(1), Int(4));

    void validate() const;
};

// Target values n_{j,k,u} keyed by (j in [s], index of k in K, bitmask of u).
struct TargetKey {
    int j = 0;
    int k_index = 0;
    unsigned u_mask = 0;

    friend bool operator<(const TargetKey& a, const TargetKey& b) {
        return std::tie(a.j, a.k_index, a.u_mask) < std::tie(b.j, b.k_index, b.u_mask);
    }
};
using Targets = std::map<TargetKey, long long>;

// Exact normalized count (probability over uniform m's and h's, with the
// H_l indicator as a weight) that all multilinear constraints hold at the
// given targets.  Exact mode is restricted to r = 1.
Rational normalized_count_exact(const MultilinearSystem& sys, const Targets& targets,
                                long long cap = kDefaultEnumCap);

struct MaxCountResult {
    Rational value;
    Targets argmax;
};

// Maximum of normalized_count_exact over all targets; exact only for a
// single equation block (s·|K| = 1), where the histogram over (n_0, n_1)
// is affordable.
MaxCountResult normalized_count_max_exact(const MultilinearSystem& sys, long long cap = kDefaultEnumCap);

struct SampleResult {
    double estimate = 0.0;
    double std_error = 0.0;
    long long samples = 0;
};

// Monte Carlo estimate of the same probability, r <= 2.
SampleResult normalized_count_sample(const MultilinearSystem& sys, const Targets& targets,
                                     long long samples, std::uint64_t seed);

// Exponents of the reference decay M^{-2^r s|K|} H^{-r 2^{r-1} s|K|}.
struct Prop74Bound {
    Int m_exponent;
    Int h_exponent;

    // Evaluates M^{-m_exponent}·H^{-h_exponent} when it fits.
    Rational value(long long m_range, long long h_range) const;
};

Prop74Bound prop74_bound(const MultilinearSystem& sys);

}  // namespace petbox
