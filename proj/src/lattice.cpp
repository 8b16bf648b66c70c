#include "petbox/lattice.hpp"

#include <sstream>

namespace petbox {

namespace {

void check_dim(int a, int b, const char* what) {
    if (a != b) throw domain_error(std::string("dimension mismatch in ") + what);
}

}  // namespace

bool is_zero_vec(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

Vec add_vec(const Vec& a, const Vec& b) {
    check_dim(static_cast<int>(a.size()), static_cast<int>(b.size()), "vector add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub_vec(const Vec& a, const Vec& b) {
    check_dim(static_cast<int>(a.size()), static_cast<int>(b.size()), "vector sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec negate_vec(const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

Vec scale_vec(const Int& c, const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

std::string vec_str(const Vec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i].str();
    }
    os << ")";
    return os.str();
}

bool VecLess::operator()(const Vec& a, const Vec& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

void Multiset::add(const Vec& v, const Int& multiplicity) {
    check_dim(static_cast<int>(v.size()), dim_, "multiset add");
    if (multiplicity.sign() < 0) throw domain_error("negative multiplicity");
    if (multiplicity.is_zero()) return;
    auto [it, inserted] = w_.try_emplace(v, multiplicity);
    if (!inserted) it->second += multiplicity;
    total_ += multiplicity;
}

Int Multiset::multiplicity(const Vec& v) const {
    auto it = w_.find(v);
    return it == w_.end() ? Int(0) : it->second;
}

std::string Multiset::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [v, m] : w_) {
        if (!first) os << ", ";
        first = false;
        os << vec_str(v) << ":" << m.str();
    }
    os << "}";
    return os.str();
}

Multiset progression(const Vec& beta, long long half_length) {
    if (half_length < 0) throw domain_error("negative progression length");
    Multiset out(static_cast<int>(beta.size()));
    for (long long k = -half_length; k <= half_length; ++k)
        out.add(scale_vec(Int(k), beta), Int(1));
    return out;
}

Multiset multiset_sum(const Multiset& x, const Multiset& y) {
    check_dim(x.dim(), y.dim(), "multiset sum");
    Multiset out(x.dim());
    for (const auto& [vx, mx] : x.weights())
        for (const auto& [vy, my] : y.weights()) out.add(add_vec(vx, vy), mx * my);
    return out;
}

Multiset multiset_negate(const Multiset& x) {
    Multiset out(x.dim());
    for (const auto& [v, m] : x.weights()) out.add(negate_vec(v), m);
    return out;
}

Multiset multiset_diff(const Multiset& x, const Multiset& y) {
    return multiset_sum(x, multiset_negate(y));
}

Rational FejerKernel::weight(const Vec& h) const {
    auto it = w_.find(h);
    return it == w_.end() ? Rational() : it->second;
}

Rational FejerKernel::total() const {
    Rational t;
    for (const auto& [h, w] : w_) t += w;
    return t;
}

FejerKernel fejer(const Multiset& e) {
    if (e.empty()) throw domain_error("Fejer kernel of empty multiset");
    FejerKernel out(e.dim());
    Int sq = e.total() * e.total();
    for (const auto& [a, ma] : e.weights())
        for (const auto& [b, mb] : e.weights()) {
            Vec h = sub_vec(a, b);
            auto [it, inserted] = out.w_.try_emplace(h, Rational(ma * mb, sq));
            if (!inserted) it->second += Rational(ma * mb, sq);
        }
    return out;
}

Int Gap::expanded_total() const {
    Int t = 1;
    for (const auto& term : terms) t *= Int(2) * term.half_length + Int(1);
    return t;
}

std::string Gap::str() const {
    if (terms.empty()) return "{0}";
    std::ostringstream os;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        os << vec_str(terms[i].direction) << "*[+-" << terms[i].half_length.str() << "]";
    }
    return os.str();
}

Multiset gap_expand(const Gap& gap, long long cap) {
    if (gap.expanded_total() > Int(cap)) throw domain_error("GAP expansion exceeds cap of " + Int(cap).str());
    Multiset out(gap.dim);
    out.add(Vec(gap.dim, Int(0)), Int(1));
    for (const auto& term : gap.terms)
        out = multiset_sum(out, progression(term.direction, term.half_length.to_ll()));
    return out;
}

Multiset iterated_sumset_family(std::span<const Multiset> family, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw domain_error("empty index list");
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= family.size()) throw domain_error("index out of range");
        for (std::size_t j = i + 1; j < indices.size(); ++j)
            if (indices[i] == indices[j]) throw domain_error("repeated index in iterated sumset");
    }
    Multiset out = family[indices[0]];
    for (std::size_t i = 1; i < indices.size(); ++i) out = multiset_sum(out, family[indices[i]]);
    return out;
}

}  // namespace petbox
