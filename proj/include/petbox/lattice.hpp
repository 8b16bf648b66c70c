#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "petbox/ints.hpp"

namespace petbox {

// A point of Z^D.  The ambient dimension is fixed by the containing
// multiset/polynomial/function; operations check it.
using Vec = std::vector<Int>;

bool is_zero_vec(const Vec& v);
Vec add_vec(const Vec& a, const Vec& b);
Vec sub_vec(const Vec& a, const Vec& b);
Vec negate_vec(const Vec& v);
Vec scale_vec(const Int& c, const Vec& v);
std::string vec_str(const Vec& v);

// Lexicographic order on coordinates; the canonical order used everywhere
// a deterministic traversal or serialization is needed.
struct VecLess {
    bool operator()(const Vec& a, const Vec& b) const;
};

// Finite multiset of lattice vectors with exact positive multiplicities.
class Multiset {
public:
    explicit Multiset(int dim) : dim_(dim), total_(0) {}

    int dim() const { return dim_; }
    const std::map<Vec, Int, VecLess>& weights() const { return w_; }
    // |X|: number of elements counted with multiplicity.
    const Int& total() const { return total_; }
    std::size_t support_size() const { return w_.size(); }
    bool empty() const { return w_.empty(); }

    void add(const Vec& v, const Int& multiplicity);
    Int multiplicity(const Vec& v) const;

    friend bool operator==(const Multiset& a, const Multiset& b) {
        return a.dim_ == b.dim_ && a.w_ == b.w_;
    }

    std::string str() const;

private:
    int dim_;
    std::map<Vec, Int, VecLess> w_;
    Int total_;
};

// beta·[±H] as a multiset: {k·beta : k in [-H, H]}.  For beta = 0 this is
// {0} with multiplicity 2H+1.
Multiset progression(const Vec& beta, long long half_length);

// Minkowski sum with multiplicities; |X+Y| = |X|·|Y| exactly.
Multiset multiset_sum(const Multiset& x, const Multiset& y);
Multiset multiset_negate(const Multiset& x);
Multiset multiset_diff(const Multiset& x, const Multiset& y);

// Normalized autocorrelation weight of a multiset: weight(h) is the exact
// probability that two independent uniform draws from E differ by h.
class FejerKernel {
public:
    explicit FejerKernel(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::map<Vec, Rational, VecLess>& weights() const { return w_; }
    Rational weight(const Vec& h) const;
    Rational total() const;

    friend FejerKernel fejer(const Multiset& e);

private:
    int dim_;
    std::map<Vec, Rational, VecLess> w_;
};

FejerKernel fejer(const Multiset& e);

// Generalized arithmetic progression Σ_i direction_i·[±halfLength_i],
// interpreted as the multiset sum of its terms when expanded.
struct GapTerm {
    Vec direction;
    Int half_length;
};

struct Gap {
    int dim = 0;
    std::vector<GapTerm> terms;

    Int expanded_total() const;
    std::string str() const;
};

inline constexpr long long kDefaultExpansionCap = 100'000'000;

// Iterated multiset_sum of the terms' progressions; refuses expansions whose
// total exceeds the cap.
Multiset gap_expand(const Gap& gap, long long cap = kDefaultExpansionCap);

// Sum of the selected multisets (distinct positions) in index order.
Multiset iterated_sumset_family(std::span<const Multiset> family, const std::vector<std::size_t>& indices);

}  // namespace petbox
