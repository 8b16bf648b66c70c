#include "petbox/equidist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "petbox/norms.hpp"  // cap_exceeded
#include "petbox/rng.hpp"

namespace petbox {

Int count_linear_solutions(const std::vector<long long>& h, long long m_range, long long target) {
    if (h.empty()) throw domain_error("empty coefficient list");
    for (long long hi : h)
        if (hi == 0) throw domain_error("zero coefficient");
    if (m_range < 0) throw domain_error("negative range");
    auto table = linear_solution_table(h, m_range);
    auto it = table.find(target);
    return it == table.end() ? Int(0) : it->second;
}

std::map<long long, Int> linear_solution_table(const std::vector<long long>& h, long long m_range) {
    std::map<long long, Int> dist;
    dist[0] = Int(1);
    for (long long hi : h) {
        std::map<long long, Int> next;
        for (const auto& [v, c] : dist)
            for (long long m = -m_range; m <= m_range; ++m) {
                long long nv = v + hi * m;
                auto [it, inserted] = next.try_emplace(nv, c);
                if (!inserted) it->second += c;
            }
        dist = std::move(next);
    }
    return dist;
}

Int count_congruence_solutions(const std::vector<long long>& h, long long modulus, long long m_range,
                               long long target) {
    if (modulus <= 0) throw domain_error("modulus must be positive");
    auto mod = [&](long long v) {
        long long r = v % modulus;
        return r < 0 ? r + modulus : r;
    };
    std::vector<Int> dist(static_cast<std::size_t>(modulus), Int(0));
    dist[0] = Int(1);
    for (long long hi : h) {
        std::vector<Int> next(static_cast<std::size_t>(modulus), Int(0));
        for (long long rsd = 0; rsd < modulus; ++rsd) {
            if (dist[static_cast<std::size_t>(rsd)].is_zero()) continue;
            for (long long m = -m_range; m <= m_range; ++m)
                next[static_cast<std::size_t>(mod(rsd + hi * m))] += dist[static_cast<std::size_t>(rsd)];
        }
        dist = std::move(next);
    }
    return dist[static_cast<std::size_t>(mod(target))];
}

Rational linear_bound_rhs(const std::vector<long long>& h, long long m_range) {
    if (h.empty()) throw domain_error("empty coefficient list");
    if (h.back() == 0) throw domain_error("last coefficient must be nonzero");
    Int g = 0;
    for (long long hi : h) g = gcd_int(g, Int(hi));
    const long long ell = static_cast<long long>(h.size());
    Rational first = Rational(pow_int(Int(m_range), ell - 1) * g, abs_int(Int(h.back())));
    Rational second =
        ell >= 2 ? Rational(pow_int(Int(m_range), ell - 2)) : Rational(Int(1), Int(m_range));
    return first + second;
}

namespace {

void combinations(int t, int ell, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(ell));
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == ell) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= t - (ell - depth - 1); ++v) {
            cur[static_cast<std::size_t>(depth)] = v;
            self(self, v + 1, depth + 1);
        }
    };
    rec(rec, 1, 0);
}

}  // namespace

AdmissibleIndexSet enumerate_calK(int t, int ell, int r) {
    if (ell > t) throw domain_error("need l <= t");
    if (ell < 1 || r < 1) throw domain_error("need l, r >= 1");
    std::vector<std::vector<int>> rows;
    combinations(t, ell, rows);

    AdmissibleIndexSet out;
    out.t = t;
    out.ell = ell;
    out.r = r;
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    for (;;) {
        std::vector<std::vector<int>> tuple;
        tuple.reserve(static_cast<std::size_t>(r));
        for (int l = 0; l < r; ++l) tuple.push_back(rows[pick[static_cast<std::size_t>(l)]]);
        out.tuples.push_back(std::move(tuple));
        int i = r - 1;
        for (; i >= 0; --i) {
            if (++pick[static_cast<std::size_t>(i)] < rows.size()) break;
            pick[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

Int calK_size(int t, int ell, int r) { return pow_int(binomial_int(t, ell), r); }

bool in_calH(const std::vector<long long>& values, int l, int t, const Rational& eta, long long h_range) {
    if (eta <= Rational(0)) throw domain_error("eta must be positive");
    long long n = 1;
    for (int i = 0; i < l; ++i) n *= t;
    if (static_cast<long long>(values.size()) != n) throw domain_error("value tuple has wrong arity");
    for (long long v : values)
        if (v < -h_range || v > h_range) throw domain_error("value outside [-H, H]");

    const Rational etaH = eta * Rational(Int(h_range));
    const Rational inv_eta = Rational(Int(1)) / eta;
    for (long long a = 0; a < n; ++a)
        for (long long c = 0; c < n; ++c) {
            if (a == c) continue;
            Int dac = Int(values[static_cast<std::size_t>(a)]) - Int(values[static_cast<std::size_t>(c)]);
            if (Rational(abs_int(dac)) < etaH) return false;
            for (long long b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                Int dbc = Int(values[static_cast<std::size_t>(b)]) - Int(values[static_cast<std::size_t>(c)]);
                Int g = gcd_int(dac, dbc);
                if (g.is_zero()) return false;  // all-zero differences count as large
                if (Rational(g) > inv_eta) return false;
            }
        }
    return true;
}

DensityResult calh_complement_fraction(int l, int t, const Rational& eta, long long h_range, bool exact,
                                       long long cap, std::uint64_t seed, long long samples) {
    long long n = 1;
    for (int i = 0; i < l; ++i) n *= t;
    DensityResult out;
    if (exact) {
        double states = std::pow(static_cast<double>(2 * h_range + 1), static_cast<double>(n));
        if (states > static_cast<double>(cap)) throw cap_exceeded("exact H_l enumeration exceeds cap");
        Int total = 0, outside = 0;
        std::vector<long long> v(static_cast<std::size_t>(n), -h_range);
        for (;;) {
            total += 1;
            if (!in_calH(v, l, t, eta, h_range)) outside += 1;
            long long i = 0;
            for (; i < n; ++i) {
                if (++v[static_cast<std::size_t>(i)] <= h_range) break;
                v[static_cast<std::size_t>(i)] = -h_range;
            }
            if (i == n) break;
        }
        out.exact = true;
        out.exact_fraction = Rational(outside, total);
        out.estimate = out.exact_fraction.to_double();
        out.samples = total.to_ll();
        return out;
    }
    Rng rng(seed);
    long long outside = 0;
    std::vector<long long> v(static_cast<std::size_t>(n));
    for (long long i = 0; i < samples; ++i) {
        for (auto& x : v) x = rng.next_in(-h_range, h_range);
        if (!in_calH(v, l, t, eta, h_range)) ++outside;
    }
    out.exact = false;
    out.estimate = static_cast<double>(outside) / static_cast<double>(samples);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    out.samples = samples;
    return out;
}

void MultilinearSystem::validate() const {
    if (!(3 <= ell && ell <= t)) throw domain_error("need 3 <= l <= t");
    if (r < 1 || s < 1) throw domain_error("need r, s >= 1");
    if (!(1 <= h_range && h_range <= m_range)) throw domain_error("need 1 <= H <= M");
    if (eta <= Rational(0)) throw domain_error("eta must be positive");
}

namespace {

// Flattened index of (k_1..k_l) in [t]^l, 1-based entries, k_l fastest.
std::size_t flatten_tuple(const std::vector<int>& k, int t) {
    std::size_t idx = 0;
    for (int v : k) idx = idx * static_cast<std::size_t>(t) + static_cast<std::size_t>(v - 1);
    return idx;
}

// Reachability: |n_{jku}| <= l^r · H^{|u|} · M.
bool target_reachable(const MultilinearSystem& sys, unsigned u_mask, long long n) {
    double bound = std::pow(static_cast<double>(sys.ell), sys.r) *
                   std::pow(static_cast<double>(sys.h_range), std::popcount(u_mask)) *
                   static_cast<double>(sys.m_range);
    return std::abs(static_cast<double>(n)) <= bound;
}

}  // namespace

Rational normalized_count_exact(const MultilinearSystem& sys, const Targets& targets, long long cap) {
    sys.validate();
    if (sys.r != 1) throw domain_error("exact mode supports r = 1 only");
    AdmissibleIndexSet calk = enumerate_calK(sys.t, sys.ell, 1);
    const long long nk = static_cast<long long>(calk.size());

    double h_states = std::pow(static_cast<double>(2 * sys.h_range + 1), sys.t);
    double per_h = static_cast<double>(sys.s) * static_cast<double>(nk) *
                   std::pow(static_cast<double>(2 * sys.m_range + 1), sys.ell - 1);
    if (h_states * per_h > static_cast<double>(cap)) throw cap_exceeded("exact normalized count exceeds cap");

    auto get_target = [&](int j, int ki, unsigned u) {
        auto it = targets.find(TargetKey{j, ki, u});
        return it == targets.end() ? 0LL : it->second;
    };
    for (int j = 0; j < sys.s; ++j)
        for (int ki = 0; ki < nk; ++ki)
            for (unsigned u = 0; u < 2; ++u)
                if (!target_reachable(sys, u, get_target(j, ki, u))) return Rational(0);

    Int total = 0;
    std::vector<long long> h(static_cast<std::size_t>(sys.t), -sys.h_range);
    for (;;) {
        if (in_calH(h, 1, sys.t, sys.eta, sys.h_range)) {
            Int product = 1;
            for (int j = 0; j < sys.s && !product.is_zero(); ++j) {
                for (int ki = 0; ki < nk && !product.is_zero(); ++ki) {
                    const auto& row = calk.tuples[static_cast<std::size_t>(ki)][0];
                    long long n0 = get_target(j, ki, 0u);
                    long long n1 = get_target(j, ki, 1u);
                    Int block = 0;
                    std::vector<long long> m(static_cast<std::size_t>(sys.ell - 1), -sys.m_range);
                    for (;;) {
                        long long sum = 0, wsum = 0;
                        for (int i = 0; i < sys.ell - 1; ++i) {
                            sum += m[static_cast<std::size_t>(i)];
                            wsum += h[static_cast<std::size_t>(row[static_cast<std::size_t>(i)] - 1)] * m[static_cast<std::size_t>(i)];
                        }
                        long long mlast = n0 - sum;
                        if (std::llabs(mlast) <= sys.m_range &&
                            wsum + h[static_cast<std::size_t>(row[static_cast<std::size_t>(sys.ell - 1)] - 1)] * mlast == n1)
                            block += 1;
                        int i = 0;
                        for (; i < sys.ell - 1; ++i) {
                            if (++m[static_cast<std::size_t>(i)] <= sys.m_range) break;
                            m[static_cast<std::size_t>(i)] = -sys.m_range;
                        }
                        if (i == sys.ell - 1) break;
                    }
                    product *= block;
                }
            }
            total += product;
        }
        std::size_t i = 0;
        for (; i < h.size(); ++i) {
            if (++h[i] <= sys.h_range) break;
            h[i] = -sys.h_range;
        }
        if (i == h.size()) break;
    }

    Int denom = pow_int(Int(2 * sys.h_range + 1), sys.t) *
                pow_int(Int(2 * sys.m_range + 1), static_cast<long long>(sys.s) * sys.ell * nk);
    return Rational(total, denom);
}

MaxCountResult normalized_count_max_exact(const MultilinearSystem& sys, long long cap) {
    sys.validate();
    if (sys.r != 1) throw domain_error("exact mode supports r = 1 only");
    AdmissibleIndexSet calk = enumerate_calK(sys.t, sys.ell, 1);
    if (sys.s != 1 || calk.size() != 1)
        throw domain_error("exact target maximization needs a single equation block (s = 1, |K| = 1)");

    double h_states = std::pow(static_cast<double>(2 * sys.h_range + 1), sys.t);
    double per_h = std::pow(static_cast<double>(2 * sys.m_range + 1), sys.ell);
    if (h_states * per_h > static_cast<double>(cap)) throw cap_exceeded("exact normalized count exceeds cap");

    const auto& row = calk.tuples[0][0];
    std::map<std::pair<long long, long long>, Int> histogram;
    std::vector<long long> h(static_cast<std::size_t>(sys.t), -sys.h_range);
    for (;;) {
        if (in_calH(h, 1, sys.t, sys.eta, sys.h_range)) {
            std::vector<long long> m(static_cast<std::size_t>(sys.ell), -sys.m_range);
            for (;;) {
                long long n0 = 0, n1 = 0;
                for (int i = 0; i < sys.ell; ++i) {
                    n0 += m[static_cast<std::size_t>(i)];
                    n1 += h[static_cast<std::size_t>(row[static_cast<std::size_t>(i)] - 1)] * m[static_cast<std::size_t>(i)];
                }
                auto [it, inserted] = histogram.try_emplace({n0, n1}, Int(1));
                if (!inserted) it->second += 1;
                int i = 0;
                for (; i < sys.ell; ++i) {
                    if (++m[static_cast<std::size_t>(i)] <= sys.m_range) break;
                    m[static_cast<std::size_t>(i)] = -sys.m_range;
                }
                if (i == sys.ell) break;
            }
        }
        std::size_t i = 0;
        for (; i < h.size(); ++i) {
            if (++h[i] <= sys.h_range) break;
            h[i] = -sys.h_range;
        }
        if (i == h.size()) break;
    }

    Int best = 0;
    std::pair<long long, long long> arg{0, 0};
    for (const auto& [key, count] : histogram)
        if (count > best) {
            best = count;
            arg = key;
        }
    MaxCountResult out;
    Int denom = pow_int(Int(2 * sys.h_range + 1), sys.t) * pow_int(Int(2 * sys.m_range + 1), sys.ell);
    out.value = Rational(best, denom);
    out.argmax[TargetKey{0, 0, 0u}] = arg.first;
    out.argmax[TargetKey{0, 0, 1u}] = arg.second;
    return out;
}

SampleResult normalized_count_sample(const MultilinearSystem& sys, const Targets& targets,
                                     long long samples, std::uint64_t seed) {
    sys.validate();
    if (sys.r > 2) throw domain_error("sample mode supports r <= 2");
    AdmissibleIndexSet calk = enumerate_calK(sys.t, sys.ell, sys.r);
    const long long nk = static_cast<long long>(calk.size());

    auto get_target = [&](int j, int ki, unsigned u) {
        auto it = targets.find(TargetKey{j, ki, u});
        return it == targets.end() ? 0LL : it->second;
    };

    Rng rng(seed);
    long long hits = 0;
    // h_l arrays, sizes t^l for l = 1..r.
    std::vector<std::vector<long long>> hs(static_cast<std::size_t>(sys.r));
    long long ell_pow_r = 1;
    for (int i = 0; i < sys.r; ++i) ell_pow_r *= sys.ell;

    for (long long it = 0; it < samples; ++it) {
        bool ok = true;
        for (int l = 1; l <= sys.r; ++l) {
            long long n = 1;
            for (int i = 0; i < l; ++i) n *= sys.t;
            auto& arr = hs[static_cast<std::size_t>(l - 1)];
            arr.resize(static_cast<std::size_t>(n));
            for (auto& x : arr) x = rng.next_in(-sys.h_range, sys.h_range);
        }
        for (int l = 1; l <= sys.r && ok; ++l)
            ok = in_calH(hs[static_cast<std::size_t>(l - 1)], l, sys.t, sys.eta, sys.h_range);

        for (int j = 0; j < sys.s && ok; ++j)
            for (int ki = 0; ki < nk && ok; ++ki) {
                const auto& tuple = calk.tuples[static_cast<std::size_t>(ki)];
                // draw the m-block and evaluate all 2^r equations
                std::vector<long long> m(static_cast<std::size_t>(ell_pow_r));
                for (auto& x : m) x = rng.next_in(-sys.m_range, sys.m_range);
                for (unsigned u = 0; u < (1u << sys.r) && ok; ++u) {
                    long long lhs = 0;
                    std::vector<int> idx(static_cast<std::size_t>(sys.r), 0);
                    for (long long flat = 0; flat < ell_pow_r; ++flat) {
                        long long rem = flat;
                        for (int l = sys.r - 1; l >= 0; --l) {
                            idx[static_cast<std::size_t>(l)] = static_cast<int>(rem % sys.ell);
                            rem /= sys.ell;
                        }
                        long long coeff = 1;
                        std::vector<int> prefix;
                        for (int l = 1; l <= sys.r; ++l) {
                            prefix.push_back(tuple[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(idx[static_cast<std::size_t>(l - 1)])]);
                            if (u & (1u << (l - 1)))
                                coeff *= hs[static_cast<std::size_t>(l - 1)][flatten_tuple(prefix, sys.t)];
                        }
                        lhs += coeff * m[static_cast<std::size_t>(flat)];
                    }
                    if (lhs != get_target(j, ki, u)) ok = false;
                }
            }
        if (ok) ++hits;
    }

    SampleResult out;
    out.samples = samples;
    out.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(samples));
    return out;
}

Prop74Bound prop74_bound(const MultilinearSystem& sys) {
    Int k = calK_size(sys.t, sys.ell, sys.r);
    Prop74Bound b;
    b.m_exponent = pow_int(Int(2), sys.r) * Int(sys.s) * k;
    b.h_exponent = Int(sys.r) * pow_int(Int(2), sys.r - 1) * Int(sys.s) * k;
    return b;
}

Rational Prop74Bound::value(long long m_range, long long h_range) const {
    Int denom = pow_int(Int(m_range), m_exponent.to_ll()) * pow_int(Int(h_range), h_exponent.to_ll());
    return Rational(Int(1), denom);
}

}  // namespace petbox
