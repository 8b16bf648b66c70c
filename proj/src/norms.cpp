#include "petbox/norms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "petbox/rng.hpp"

namespace petbox {

void LatticeFunction::set(const Vec& x, Complex v) {
    if (static_cast<int>(x.size()) != dim_) throw domain_error("point dimension mismatch");
    if (v == Complex(0.0, 0.0))
        values_.erase(x);
    else
        values_[x] = v;
}

Complex LatticeFunction::value(const Vec& x) const {
    auto it = values_.find(x);
    return it == values_.end() ? Complex(0.0, 0.0) : it->second;
}

double LatticeFunction::sup_norm() const {
    double m = 0.0;
    for (const auto& [x, v] : values_) m = std::max(m, std::abs(v));
    return m;
}

bool LatticeFunction::is_one_bounded(double slack) const { return sup_norm() <= 1.0 + slack; }

namespace {

void check_box(const Vec& lo, const Vec& hi) {
    if (lo.size() != hi.size()) throw domain_error("box corner dimensions differ");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) throw domain_error("degenerate box");
}

template <typename F>
void for_each_box_point(const Vec& lo, const Vec& hi, F&& fn) {
    Vec x = lo;
    const std::size_t d = lo.size();
    for (;;) {
        fn(x);
        std::size_t i = 0;
        for (; i < d; ++i) {
            x[i] += Int(1);
            if (x[i] <= hi[i]) break;
            x[i] = lo[i];
        }
        if (i == d) return;
    }
}

}  // namespace

LatticeFunction LatticeFunction::indicator_box(const Vec& lo, const Vec& hi) {
    check_box(lo, hi);
    LatticeFunction f(static_cast<int>(lo.size()));
    for_each_box_point(lo, hi, [&](const Vec& x) { f.values_[x] = Complex(1.0, 0.0); });
    return f;
}

LatticeFunction LatticeFunction::random_pm1(const Vec& lo, const Vec& hi, std::uint64_t seed) {
    check_box(lo, hi);
    LatticeFunction f(static_cast<int>(lo.size()));
    Rng rng(seed);
    for_each_box_point(lo, hi, [&](const Vec& x) {
        f.values_[x] = Complex(rng.next_u64() & 1 ? 1.0 : -1.0, 0.0);
    });
    return f;
}

LatticeFunction LatticeFunction::random_unimodular(const Vec& lo, const Vec& hi, std::uint64_t seed) {
    check_box(lo, hi);
    LatticeFunction f(static_cast<int>(lo.size()));
    Rng rng(seed);
    for_each_box_point(lo, hi, [&](const Vec& x) {
        double theta = 2.0 * std::numbers::pi * rng.next_double();
        f.values_[x] = Complex(std::cos(theta), std::sin(theta));
    });
    return f;
}

LatticeFunction mult_derivative(const LatticeFunction& f, const Vec& h) {
    if (static_cast<int>(h.size()) != f.dim()) throw domain_error("shift dimension mismatch");
    LatticeFunction g(f.dim());
    for (const auto& [x, v] : f.values()) {
        Complex w = f.value(add_vec(x, h));
        if (w != Complex(0.0, 0.0)) g.set(x, v * std::conj(w));
    }
    return g;
}

LatticeFunction mult_derivative_pair(const LatticeFunction& f, const Vec& h, const Vec& hp) {
    if (static_cast<int>(h.size()) != f.dim() || static_cast<int>(hp.size()) != f.dim())
        throw domain_error("shift dimension mismatch");
    LatticeFunction g(f.dim());
    for (const auto& [y, v] : f.values()) {
        // y = x + h ranges over supp f; x = y - h.
        Vec x = sub_vec(y, h);
        Complex w = f.value(add_vec(x, hp));
        if (w != Complex(0.0, 0.0)) g.set(x, v * std::conj(w));
    }
    return g;
}

namespace detail {

// Dense row-major view over a bounding box; the workhorse representation for
// norm evaluation.
struct Grid {
    int dim = 0;
    std::vector<long long> lo, hi;
    std::vector<Complex> vals;
    bool is_empty = true;

    long long extent(int i) const { return hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)] + 1; }
    long long volume() const {
        if (is_empty) return 0;
        long long v = 1;
        for (int i = 0; i < dim; ++i) v *= extent(i);
        return v;
    }
};

Grid to_grid(const LatticeFunction& f) {
    Grid g;
    g.dim = f.dim();
    if (f.empty()) return g;
    g.is_empty = false;
    g.lo.assign(static_cast<std::size_t>(g.dim), 0);
    g.hi.assign(static_cast<std::size_t>(g.dim), 0);
    bool first = true;
    for (const auto& [x, v] : f.values()) {
        for (int i = 0; i < g.dim; ++i) {
            long long c = x[static_cast<std::size_t>(i)].to_ll();
            if (first) {
                g.lo[static_cast<std::size_t>(i)] = g.hi[static_cast<std::size_t>(i)] = c;
            } else {
                g.lo[static_cast<std::size_t>(i)] = std::min(g.lo[static_cast<std::size_t>(i)], c);
                g.hi[static_cast<std::size_t>(i)] = std::max(g.hi[static_cast<std::size_t>(i)], c);
            }
        }
        first = false;
    }
    g.vals.assign(static_cast<std::size_t>(g.volume()), Complex(0.0, 0.0));
    for (const auto& [x, v] : f.values()) {
        long long idx = 0;
        for (int i = g.dim - 1; i >= 0; --i)
            idx = idx * g.extent(i) + (x[static_cast<std::size_t>(i)].to_ll() - g.lo[static_cast<std::size_t>(i)]);
        g.vals[static_cast<std::size_t>(idx)] = v;
    }
    return g;
}

long long flat_index(const Grid& g, const std::vector<long long>& x) {
    long long idx = 0;
    for (int i = g.dim - 1; i >= 0; --i) idx = idx * g.extent(i) + (x[static_cast<std::size_t>(i)] - g.lo[static_cast<std::size_t>(i)]);
    return idx;
}

template <typename F>
void for_each_grid_point(const Grid& g, F&& fn) {
    if (g.is_empty) return;
    std::vector<long long> x = g.lo;
    for (;;) {
        fn(x);
        int i = 0;
        for (; i < g.dim; ++i) {
            if (++x[static_cast<std::size_t>(i)] <= g.hi[static_cast<std::size_t>(i)]) break;
            x[static_cast<std::size_t>(i)] = g.lo[static_cast<std::size_t>(i)];
        }
        if (i == g.dim) return;
    }
}

// Δ_h on the grid: support shrinks to box ∩ (box - h).
Grid grid_derivative(const Grid& f, const std::vector<long long>& h) {
    Grid g;
    g.dim = f.dim;
    if (f.is_empty) return g;
    g.lo.resize(static_cast<std::size_t>(f.dim));
    g.hi.resize(static_cast<std::size_t>(f.dim));
    for (int i = 0; i < f.dim; ++i) {
        g.lo[static_cast<std::size_t>(i)] = std::max(f.lo[static_cast<std::size_t>(i)], f.lo[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)]);
        g.hi[static_cast<std::size_t>(i)] = std::min(f.hi[static_cast<std::size_t>(i)], f.hi[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)]);
        if (g.lo[static_cast<std::size_t>(i)] > g.hi[static_cast<std::size_t>(i)]) return g;
    }
    g.is_empty = false;
    g.vals.assign(static_cast<std::size_t>(g.volume()), Complex(0.0, 0.0));
    std::vector<long long> xh(static_cast<std::size_t>(f.dim));
    for_each_grid_point(g, [&](const std::vector<long long>& x) {
        for (int i = 0; i < f.dim; ++i) xh[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + h[static_cast<std::size_t>(i)];
        Complex a = f.vals[static_cast<std::size_t>(flat_index(f, x))];
        Complex b = f.vals[static_cast<std::size_t>(flat_index(f, xh))];
        g.vals[static_cast<std::size_t>(flat_index(g, x))] = a * std::conj(b);
    });
    return g;
}

// Δ'_{(h,h')} on the grid.
Grid grid_derivative_pair(const Grid& f, const std::vector<long long>& h, const std::vector<long long>& hp) {
    Grid g;
    g.dim = f.dim;
    if (f.is_empty) return g;
    g.lo.resize(static_cast<std::size_t>(f.dim));
    g.hi.resize(static_cast<std::size_t>(f.dim));
    for (int i = 0; i < f.dim; ++i) {
        g.lo[static_cast<std::size_t>(i)] = std::max(f.lo[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)], f.lo[static_cast<std::size_t>(i)] - hp[static_cast<std::size_t>(i)]);
        g.hi[static_cast<std::size_t>(i)] = std::min(f.hi[static_cast<std::size_t>(i)] - h[static_cast<std::size_t>(i)], f.hi[static_cast<std::size_t>(i)] - hp[static_cast<std::size_t>(i)]);
        if (g.lo[static_cast<std::size_t>(i)] > g.hi[static_cast<std::size_t>(i)]) return g;
    }
    g.is_empty = false;
    g.vals.assign(static_cast<std::size_t>(g.volume()), Complex(0.0, 0.0));
    std::vector<long long> y(static_cast<std::size_t>(f.dim));
    for_each_grid_point(g, [&](const std::vector<long long>& x) {
        for (int i = 0; i < f.dim; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + h[static_cast<std::size_t>(i)];
        Complex a = f.vals[static_cast<std::size_t>(flat_index(f, y))];
        for (int i = 0; i < f.dim; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + hp[static_cast<std::size_t>(i)];
        Complex b = f.vals[static_cast<std::size_t>(flat_index(f, y))];
        g.vals[static_cast<std::size_t>(flat_index(g, x))] = a * std::conj(b);
    });
    return g;
}

Complex grid_sum(const Grid& g) {
    Complex s(0.0, 0.0);
    for (const auto& v : g.vals) s += v;
    return s;
}

struct WeightedShift {
    std::vector<long long> offset;
    double weight;
};

std::vector<WeightedShift> kernel_shifts(const FejerKernel& mu) {
    std::vector<WeightedShift> out;
    out.reserve(mu.weights().size());
    for (const auto& [h, w] : mu.weights()) {
        WeightedShift ws;
        ws.offset.reserve(h.size());
        for (const auto& c : h) ws.offset.push_back(c.to_ll());
        ws.weight = w.to_double();
        out.push_back(std::move(ws));
    }
    return out;
}

struct PairShift {
    std::vector<long long> a, b;
    double weight;
};

}  // namespace detail

NormReport box_norm_power(const LatticeFunction& f, const std::vector<Multiset>& es, long long max_states) {
    const int s = static_cast<int>(es.size());
    for (const auto& e : es) {
        if (e.dim() != f.dim()) throw domain_error("box norm dimension mismatch");
        if (e.empty()) throw domain_error("box norm along an empty multiset");
    }
    detail::Grid base = detail::to_grid(f);

    std::vector<std::vector<detail::WeightedShift>> kernels;
    kernels.reserve(es.size());
    double states = static_cast<double>(std::max<long long>(base.volume(), 1));
    for (const auto& e : es) {
        kernels.push_back(detail::kernel_shifts(fejer(e)));
        states *= static_cast<double>(kernels.back().size());
    }
    if (states > static_cast<double>(max_states))
        throw cap_exceeded("box norm state space exceeds cap (" + std::to_string(states) + ")");

    // power(f, E_1..E_k) = Σ_h μ_{E_k}(h) · power(Δ_h f, E_1..E_{k-1})
    auto recurse = [&](auto&& self, const detail::Grid& g, int level) -> Complex {
        if (g.is_empty) return Complex(0.0, 0.0);
        if (level == 0) return detail::grid_sum(g);
        Complex acc(0.0, 0.0);
        for (const auto& ws : kernels[static_cast<std::size_t>(level - 1)]) {
            detail::Grid d = detail::grid_derivative(g, ws.offset);
            if (d.is_empty) continue;
            acc += ws.weight * self(self, d, level - 1);
        }
        return acc;
    };
    Complex total = recurse(recurse, base, s);

    NormReport rep;
    rep.degree = s;
    rep.power = total.real();
    rep.tolerance = 1e-9 * (1.0 + static_cast<double>(f.support_size()));
    if (rep.power < -rep.tolerance)
        throw domain_error("box norm power is significantly negative: " + std::to_string(rep.power));
    return rep;
}

NormReport box_norm_power_direct(const LatticeFunction& f, const std::vector<Multiset>& es, long long max_states) {
    const int s = static_cast<int>(es.size());
    for (const auto& e : es) {
        if (e.dim() != f.dim()) throw domain_error("box norm dimension mismatch");
        if (e.empty()) throw domain_error("box norm along an empty multiset");
    }
    detail::Grid base = detail::to_grid(f);

    // All (h, h') pairs of each multiset, with probability weights.
    std::vector<std::vector<detail::PairShift>> pairs;
    double states = static_cast<double>(std::max<long long>(base.volume(), 1));
    for (const auto& e : es) {
        std::vector<detail::PairShift> ps;
        double denom = e.total().to_double();
        for (const auto& [a, ma] : e.weights())
            for (const auto& [b, mb] : e.weights()) {
                detail::PairShift p;
                for (const auto& c : a) p.a.push_back(c.to_ll());
                for (const auto& c : b) p.b.push_back(c.to_ll());
                p.weight = ma.to_double() * mb.to_double() / (denom * denom);
                ps.push_back(std::move(p));
            }
        states *= static_cast<double>(ps.size());
        pairs.push_back(std::move(ps));
    }
    if (states > static_cast<double>(max_states))
        throw cap_exceeded("direct box norm state space exceeds cap (" + std::to_string(states) + ")");

    auto recurse = [&](auto&& self, const detail::Grid& g, int level) -> Complex {
        if (g.is_empty) return Complex(0.0, 0.0);
        if (level == 0) return detail::grid_sum(g);
        Complex acc(0.0, 0.0);
        for (const auto& p : pairs[static_cast<std::size_t>(level - 1)]) {
            detail::Grid d = detail::grid_derivative_pair(g, p.a, p.b);
            if (d.is_empty) continue;
            acc += p.weight * self(self, d, level - 1);
        }
        return acc;
    };
    Complex total = recurse(recurse, base, s);

    NormReport rep;
    rep.degree = s;
    rep.power = total.real();
    rep.tolerance = 1e-9 * (1.0 + static_cast<double>(f.support_size()));
    if (rep.power < -rep.tolerance)
        throw domain_error("box norm power is significantly negative: " + std::to_string(rep.power));
    return rep;
}

Complex gcs_inner(const std::vector<LatticeFunction>& fs, const std::vector<Multiset>& es, long long max_states) {
    const int s = static_cast<int>(es.size());
    if (fs.size() != (std::size_t(1) << s)) throw domain_error("Gowers-Cauchy-Schwarz needs 2^s functions");
    const int dim = fs[0].dim();
    for (const auto& f : fs)
        if (f.dim() != dim) throw domain_error("function dimension mismatch");
    for (const auto& e : es) {
        if (e.dim() != dim) throw domain_error("multiset dimension mismatch");
        if (e.empty()) throw domain_error("empty multiset");
    }

    std::vector<std::vector<detail::WeightedShift>> kernels;
    double states = static_cast<double>(std::max<std::size_t>(fs[0].support_size(), 1));
    for (const auto& e : es) {
        kernels.push_back(detail::kernel_shifts(fejer(e)));
        states *= static_cast<double>(kernels.back().size());
    }
    states *= static_cast<double>(std::size_t(1) << s);
    if (states > static_cast<double>(max_states)) throw cap_exceeded("inner product state space exceeds cap");

    std::vector<std::vector<long long>> h(static_cast<std::size_t>(s));
    Complex total(0.0, 0.0);

    auto base_case = [&]() {
        Complex acc(0.0, 0.0);
        Vec xs(static_cast<std::size_t>(dim));
        for (const auto& [x, v0] : fs[0].values()) {
            Complex prod = v0;
            for (std::size_t eps = 1; eps < fs.size() && prod != Complex(0.0, 0.0); ++eps) {
                for (int i = 0; i < dim; ++i) {
                    long long shift = 0;
                    for (int b = 0; b < s; ++b)
                        if (eps & (std::size_t(1) << b)) shift += h[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)];
                    xs[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] + Int(shift);
                }
                Complex v = fs[eps].value(xs);
                prod *= (std::popcount(eps) & 1) ? std::conj(v) : v;
            }
            acc += prod;
        }
        return acc;
    };

    auto recurse = [&](auto&& self, int level, double weight) -> void {
        if (level == s) {
            total += weight * base_case();
            return;
        }
        for (const auto& ws : kernels[static_cast<std::size_t>(level)]) {
            h[static_cast<std::size_t>(level)] = ws.offset;
            self(self, level + 1, weight * ws.weight);
        }
    };
    recurse(recurse, 0, 1.0);
    return total;
}

Complex counting_operator(const std::vector<LatticeFunction>& fs, const std::vector<VectorPoly>& ps, long long k) {
    if (fs.size() != ps.size() + 1) throw domain_error("counting operator needs l+1 functions for l polynomials");
    if (k < 1) throw domain_error("K must be positive");
    const int dim = fs[0].dim();
    for (const auto& f : fs)
        if (f.dim() != dim) throw domain_error("function dimension mismatch");
    for (const auto& p : ps) {
        if (p.dim() != dim) throw domain_error("polynomial dimension mismatch");
        if (p.num_h() != 0) throw domain_error("counting operator polynomials must be in z only");
    }

    Complex total(0.0, 0.0);
    for (long long z = 1; z <= k; ++z) {
        std::vector<Vec> shifts;
        shifts.reserve(ps.size());
        for (const auto& p : ps) shifts.push_back(p.eval(Int(z), {}));
        Complex zsum(0.0, 0.0);
        for (const auto& [x, v0] : fs[0].values()) {
            Complex prod = v0;
            for (std::size_t j = 0; j < ps.size() && prod != Complex(0.0, 0.0); ++j)
                prod *= fs[j + 1].value(add_vec(x, shifts[j]));
            zsum += prod;
        }
        total += zsum;
    }
    return total / static_cast<double>(k);
}

double averaged_counting_operator(const LatticeFunction& f, const VectorPoly& p, long long k, int r) {
    if (f.dim() != 1 || p.dim() != 1) throw domain_error("averaged counting operator works on Z");
    if (p.num_h() != 0) throw domain_error("polynomial must be in z only");
    auto d = p.deg_z();
    if (!d || *d < 1) throw domain_error("polynomial must be nonconstant");
    if (k < 1 || r < 1) throw domain_error("K and r must be positive");

    Multiset box = progression(Vec{Int(1)}, k);
    FejerKernel mu = fejer(box);
    std::vector<std::pair<long long, double>> shifts;
    for (const auto& [h, w] : mu.weights()) shifts.push_back({h[0].to_ll(), w.to_double()});

    std::vector<long long> h(static_cast<std::size_t>(r));
    double total = 0.0;

    auto inner = [&]() {
        Complex acc(0.0, 0.0);
        for (long long z = 1; z <= k; ++z) {
            // arguments x + P(z + eps·h) for eps in {0,1}^r
            std::vector<long long> args;
            args.reserve(std::size_t(1) << r);
            for (std::size_t eps = 0; eps < (std::size_t(1) << r); ++eps) {
                long long sh = 0;
                for (int b = 0; b < r; ++b)
                    if (eps & (std::size_t(1) << b)) sh += h[static_cast<std::size_t>(b)];
                args.push_back(p.eval(Int(z + sh), {}).at(0).to_ll());
            }
            for (const auto& [x, v] : f.values()) {
                long long x0 = x[0].to_ll();
                Complex prod(1.0, 0.0);
                for (std::size_t eps = 0; eps < args.size(); ++eps) {
                    Complex fv = f.value(Vec{Int(x0 + args[eps] - args[0])});
                    if (eps == 0) fv = v;
                    prod *= (std::popcount(eps) & 1) ? std::conj(fv) : fv;
                    if (prod == Complex(0.0, 0.0)) break;
                }
                acc += prod;
            }
        }
        return acc / static_cast<double>(k);
    };

    auto recurse = [&](auto&& self, int level, double weight) -> void {
        if (level == r) {
            total += weight * inner().real();
            return;
        }
        for (const auto& [off, w] : shifts) {
            h[static_cast<std::size_t>(level)] = off;
            self(self, level + 1, weight * w);
        }
    };
    recurse(recurse, 0, 1.0);
    return total;
}

VdcReport vdc_inequality_check(const std::vector<Complex>& seq, long long h_range, double slack) {
    const long long k = static_cast<long long>(seq.size());
    if (k == 0) throw domain_error("empty sequence");
    if (h_range < 1 || h_range >= k) throw domain_error("need 1 <= H < K");
    for (const auto& v : seq)
        if (std::abs(v) > 1.0 + 1e-12) throw domain_error("sequence is not 1-bounded");

    auto at = [&](long long z) { return seq[static_cast<std::size_t>(z - 1)]; };  // z in [1, K]

    Complex mean(0.0, 0.0);
    for (long long z = 1; z <= k; ++z) mean += at(z);
    mean /= static_cast<double>(k);

    VdcReport rep;
    rep.lhs = std::norm(mean);

    const double front = static_cast<double>(k + 2 * h_range) / static_cast<double>(k);

    // Symmetric variant: E_{h,h' in [±H]} (1/K) Σ_{z in ([K]-h) ∩ ([K]-h')} f(z+h) conj f(z+h').
    {
        Complex acc(0.0, 0.0);
        for (long long h = -h_range; h <= h_range; ++h)
            for (long long hp = -h_range; hp <= h_range; ++hp) {
                long long zlo = std::max(1 - h, 1 - hp);
                long long zhi = std::min(k - h, k - hp);
                Complex inner(0.0, 0.0);
                for (long long z = zlo; z <= zhi; ++z) inner += at(z + h) * std::conj(at(z + hp));
                acc += inner;
            }
        double denom = static_cast<double>(2 * h_range + 1);
        rep.rhs_symmetric = front * (acc / (denom * denom * static_cast<double>(k))).real();
    }

    // Kernel variant: Σ_h μ_H(h) (1/K) Σ_{z in [K] ∩ ([K]-h)} f(z) conj f(z+h).
    {
        Complex acc(0.0, 0.0);
        double denom = static_cast<double>(2 * h_range + 1);
        for (long long h = -2 * h_range; h <= 2 * h_range; ++h) {
            double mu = (1.0 - std::abs(static_cast<double>(h)) / denom);
            if (mu <= 0.0) continue;
            mu /= denom;
            long long zlo = std::max<long long>(1, 1 - h);
            long long zhi = std::min(k, k - h);
            Complex inner(0.0, 0.0);
            for (long long z = zlo; z <= zhi; ++z) inner += at(z) * std::conj(at(z + h));
            acc += mu * inner;
        }
        rep.rhs_kernel = front * (acc / static_cast<double>(k)).real();
    }

    rep.holds = rep.lhs <= rep.rhs_symmetric + slack && rep.lhs <= rep.rhs_kernel + slack;
    return rep;
}

}  // namespace petbox
