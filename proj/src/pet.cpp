#include "petbox/pet.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace petbox {

int PolynomialFamily::max_deg_z() const {
    int d = 0;
    for (const auto& q : members) {
        auto dq = q.deg_z();
        if (dq && *dq > d) d = *dq;
    }
    return d;
}

bool PolynomialFamily::all_linear_in_z() const {
    for (const auto& q : members) {
        auto d = q.deg_z();
        if (!d || *d != 1) return false;
    }
    return true;
}

std::string PolynomialFamily::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) os << "; ";
        os << members[i].str();
    }
    os << "}";
    return os.str();
}

NormalCheck is_normal(const PolynomialFamily& q) {
    if (q.members.empty()) return {false, "empty family"};
    for (std::size_t i = 0; i < q.members.size(); ++i) {
        const auto& qi = q.members[i];
        if (qi.dim() != q.dim || qi.num_h() != q.num_h) return {false, "member shape mismatch"};
        if (qi.is_zero()) return {false, "member " + std::to_string(i + 1) + " is zero"};
        if (!qi.coeff_in_z(0).is_zero())
            return {false, "member " + std::to_string(i + 1) + " does not vanish at z = 0"};
        for (std::size_t j = i + 1; j < q.members.size(); ++j)
            if (qi == q.members[j])
                return {false, "members " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide"};
    }
    auto d1 = q.members[0].deg_z();
    for (std::size_t j = 1; j < q.members.size(); ++j) {
        auto dj = q.members[j].deg_z();
        if (dj && (!d1 || *dj > *d1))
            return {false, "member " + std::to_string(j + 1) + " exceeds the degree of member 1"};
    }
    return {true, ""};
}

std::string FamilyType::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) os << ",";
        os << counts[i];
    }
    os << ")";
    return os.str();
}

bool colex_less(const FamilyType& a, const FamilyType& b) {
    std::size_t n = std::max(a.counts.size(), b.counts.size());
    for (std::size_t i = n; i-- > 0;) {
        long long wa = i < a.counts.size() ? a.counts[i] : 0;
        long long wb = i < b.counts.size() ? b.counts[i] : 0;
        if (wa != wb) return wa < wb;
    }
    return false;
}

FamilyType family_type(const PolynomialFamily& q) {
    auto nc = is_normal(q);
    if (!nc.ok) throw domain_error("family_type requires a normal family: " + nc.reason);
    int dmax = q.max_deg_z();
    FamilyType t;
    t.counts.assign(static_cast<std::size_t>(dmax), 0);
    for (int l = 1; l <= dmax; ++l) {
        std::set<VectorPoly> leads;
        for (const auto& m : q.members) {
            auto d = m.deg_z();
            if (d && *d == l) leads.insert(m.coeff_in_z(l));
        }
        t.counts[static_cast<std::size_t>(l - 1)] = static_cast<long long>(leads.size());
    }
    return t;
}

int choose_m(const PolynomialFamily& q) {
    FamilyType t = family_type(q);
    int dmax = static_cast<int>(t.counts.size());
    if (dmax <= 1) throw domain_error("choose_m on an all-linear family");
    int l = 0;
    for (int i = 1; i <= dmax; ++i) {
        if (t.counts[static_cast<std::size_t>(i - 1)] != 0) {
            l = i;
            break;
        }
    }
    if (l < dmax) {
        for (std::size_t j = 0; j < q.members.size(); ++j) {
            auto d = q.members[j].deg_z();
            if (d && *d == l) return static_cast<int>(j + 1);
        }
        throw domain_error("type inconsistent with members");
    }
    if (t.counts[static_cast<std::size_t>(dmax - 1)] > 1) {
        VectorPoly lead1 = q.members[0].coeff_in_z(dmax);
        for (std::size_t j = 1; j < q.members.size(); ++j) {
            auto d = q.members[j].deg_z();
            if (d && *d == dmax && !(q.members[j].coeff_in_z(dmax) == lead1)) return static_cast<int>(j + 1);
        }
        throw domain_error("type inconsistent with leading coefficients");
    }
    return 1;
}

PolynomialFamily vdc_op(const PolynomialFamily& q, int m) {
    auto nc = is_normal(q);
    if (!nc.ok) throw domain_error("vdc_op requires a normal family: " + nc.reason);
    if (m < 1 || m > static_cast<int>(q.members.size())) throw domain_error("vdc_op index out of range");

    const int r1 = q.num_h + 1;
    VectorPoly qm = q.members[static_cast<std::size_t>(m - 1)].promote_num_h(r1);

    PolynomialFamily out;
    out.dim = q.dim;
    out.num_h = r1;
    auto push_unique = [&](const VectorPoly& p) {
        if (p.is_zero()) return;
        for (const auto& existing : out.members)
            if (existing == p) return;
        out.members.push_back(p);
    };
    for (const auto& qi : q.members) push_unique(qi.sigma_shift() - qm);
    for (const auto& qi : q.members) push_unique(qi.promote_num_h(r1) - qm);
    return out;
}

NormalizeResult normalize_progression(const std::vector<VectorPoly>& p) {
    if (p.empty()) throw domain_error("empty progression");
    const int dim = p[0].dim();
    const int ell = static_cast<int>(p.size());
    for (const auto& q : p) {
        if (q.dim() != dim) throw domain_error("mixed dimensions in progression");
        if (q.num_h() != 0) throw domain_error("progression polynomials must be in z only");
    }

    NormalizeResult res;
    std::vector<VectorPoly> stripped;
    stripped.reserve(p.size());
    for (const auto& q : p) {
        Vec c0 = q.coeff_in_z(0).coeff(Monomial{0, {}});
        res.constant_shifts.push_back(c0);
        VectorPoly s = q - z_power_poly(c0, 0);
        auto d = s.deg_z();
        if (!d || *d < 1) throw domain_error("degenerate progression: a member is constant in z");
        stripped.push_back(s);
    }
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j) {
            VectorPoly diff = stripped[static_cast<std::size_t>(i)] - stripped[static_cast<std::size_t>(j)];
            auto d = diff.deg_z();
            if (!d || *d < 1)
                throw domain_error("degenerate progression: members " + std::to_string(i + 1) + " and " +
                                   std::to_string(j + 1) + " differ by a constant");
        }

    res.function_map.resize(static_cast<std::size_t>(ell) + 1);
    for (int i = 0; i <= ell; ++i) res.function_map[static_cast<std::size_t>(i)] = i;

    int dmax = 0;
    for (const auto& q : stripped) dmax = std::max(dmax, *q.deg_z());
    res.family.dim = dim;
    res.family.num_h = 0;
    if (*stripped[0].deg_z() == dmax) {
        res.family.members = stripped;
        res.pivot = 0;
    } else {
        int m = 0;
        for (int j = 0; j < ell; ++j)
            if (*stripped[static_cast<std::size_t>(j)].deg_z() == dmax) {
                m = j + 1;
                break;
            }
        res.pivot = m;
        const VectorPoly& pm = stripped[static_cast<std::size_t>(m - 1)];
        res.family.members.reserve(p.size());
        for (int j = 1; j <= ell; ++j) {
            if (j == m)
                res.family.members.push_back(-pm);
            else
                res.family.members.push_back(stripped[static_cast<std::size_t>(j - 1)] - pm);
        }
        std::swap(res.function_map[0], res.function_map[static_cast<std::size_t>(m)]);
    }

    auto nc = is_normal(res.family);
    if (!nc.ok) throw domain_error("normalization failed to produce a normal family: " + nc.reason);
    return res;
}

PetTrace pet_run(const std::vector<VectorPoly>& p, int target, std::size_t step_cap, std::size_t size_cap) {
    const int ell = static_cast<int>(p.size());
    if (target < 0 || target > ell) throw domain_error("target index out of range");

    PetTrace trace;
    trace.input = p;
    trace.target = target;

    // Put the targeted polynomial first.  Targeting the free function f_0 is
    // the shift x -> x - P_1(z): member 1 becomes -P_1 carrying f_0.
    std::vector<VectorPoly> arranged;
    std::vector<int> slot_fn;  // slot_fn[slot] = original function index, slot 0 = free
    arranged.reserve(p.size());
    slot_fn.resize(static_cast<std::size_t>(ell) + 1);
    if (target >= 1) {
        arranged.push_back(p[static_cast<std::size_t>(target - 1)]);
        slot_fn[0] = 0;
        slot_fn[1] = target;
        int slot = 2;
        for (int j = 1; j <= ell; ++j) {
            if (j == target) continue;
            arranged.push_back(p[static_cast<std::size_t>(j - 1)]);
            slot_fn[static_cast<std::size_t>(slot++)] = j;
        }
    } else {
        arranged.push_back(-p[0]);
        slot_fn[0] = 1;
        slot_fn[1] = 0;
        int slot = 2;
        for (int j = 2; j <= ell; ++j) {
            arranged.push_back(p[static_cast<std::size_t>(j - 1)] - p[0]);
            slot_fn[static_cast<std::size_t>(slot++)] = j;
        }
    }

    trace.normalized = normalize_progression(arranged);
    // Compose the arrangement with the pivot relabeling recorded inside.
    std::vector<int> composed(trace.normalized.function_map.size());
    for (std::size_t i = 0; i < composed.size(); ++i)
        composed[i] = slot_fn[static_cast<std::size_t>(trace.normalized.function_map[i])];
    trace.normalized.function_map = composed;

    PolynomialFamily fam = trace.normalized.family;
    FamilyType prev_type = family_type(fam);
    while (!fam.all_linear_in_z()) {
        if (trace.steps.size() >= step_cap)
            throw domain_error("PET step cap exceeded; this indicates a bug, termination is guaranteed");
        if (fam.size() > size_cap)
            throw cap_exceeded("PET family grew past " + std::to_string(size_cap) +
                               " members; the full run does not fit at desk scale");
        PetStep step;
        step.before = fam;
        step.type_before = prev_type;
        step.chosen_m = choose_m(fam);
        step.after = vdc_op(fam, step.chosen_m);

        auto nc = is_normal(step.after);
        if (!nc.ok) throw domain_error("van der Corput output is not normal: " + nc.reason);
        FamilyType new_type = family_type(step.after);
        if (!colex_less(new_type, prev_type))
            throw domain_error("family type failed to decrease: " + prev_type.str() + " -> " + new_type.str());

        fam = step.after;
        prev_type = new_type;
        trace.steps.push_back(std::move(step));
    }

    trace.final_family = fam;
    trace.num_h_final = fam.num_h;

    const int d = trace.normalized.family.max_deg_z();
    std::vector<VectorPoly> bs;
    bs.reserve(fam.members.size());
    for (const auto& q : fam.members) bs.push_back(q.coeff_in_z(1));
    trace.directions.push_back(bs[0]);
    for (std::size_t j = 1; j < bs.size(); ++j) trace.directions.push_back(bs[0] - bs[j]);

    for (std::size_t j = 0; j < trace.directions.size(); ++j) {
        const auto& c = trace.directions[j];
        if (c.is_zero()) throw domain_error("direction " + std::to_string(j + 1) + " vanishes");
        if (!c.is_multilinear()) throw domain_error("direction " + std::to_string(j + 1) + " is not multilinear");
        if (c.h_degree() > std::max(0, d - 1))
            throw domain_error("direction " + std::to_string(j + 1) + " has h-degree above d-1");
        for (std::size_t k = j + 1; k < trace.directions.size(); ++k)
            if (c == trace.directions[k]) throw domain_error("directions coincide");
    }
    return trace;
}

std::string PetTrace::str() const {
    std::ostringstream os;
    os << "input family: ";
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (i) os << "; ";
        os << input[i].str();
    }
    os << "\nnormalized:   " << normalized.family.str();
    if (normalized.pivot != 0) os << "  (pivot m=" << normalized.pivot << ")";
    os << "\n";
    for (std::size_t i = 0; i < steps.size(); ++i) {
        os << "step " << (i + 1) << ": type " << steps[i].type_before.str() << ", m=" << steps[i].chosen_m
           << " -> " << steps[i].after.str() << "\n";
    }
    os << "final (linear): " << final_family.str() << "\n";
    os << "directions:\n";
    for (std::size_t i = 0; i < directions.size(); ++i)
        os << "  C" << (i + 1) << " = " << directions[i].str() << "\n";
    return os.str();
}

namespace {

// Leading coefficients of P_1 - P_w (w in [0, l]) of a z-only family,
// bucketed by the degree of the difference.
struct CandidateSet {
    // candidates[k] = vectors that are lc of some P_1 - P_w with deg = k
    std::map<int, std::vector<Vec>> by_degree;
};

CandidateSet direction_candidates(const PolynomialFamily& p) {
    CandidateSet cs;
    const VectorPoly& p1 = p.members.at(0);
    for (std::size_t w = 0; w <= p.members.size(); ++w) {
        VectorPoly diff = w == 0 ? p1 : p1 - p.members[w - 1];
        auto d = diff.deg_z();
        if (!d || *d < 1) continue;
        Vec lead = diff.coeff_in_z(*d).coeff(Monomial{0, std::vector<int>(static_cast<std::size_t>(p1.num_h()), 0)});
        cs.by_degree[*d].push_back(lead);
    }
    return cs;
}

}  // namespace

DescendenceReport verify_descendence(const PetTrace& trace) {
    DescendenceReport rep;
    auto note = [&](const std::string& v) {
        rep.ok = false;
        rep.violations.push_back(v);
    };

    // (a) multilinearity of lc_z(Q_1 - Q_j) for every family along the trace,
    // including j = 0 (Q_0 = 0, i.e. the leading coefficient of Q_1 itself).
    std::vector<const PolynomialFamily*> fams;
    fams.push_back(&trace.normalized.family);
    for (const auto& s : trace.steps) fams.push_back(&s.after);
    for (std::size_t fi = 0; fi < fams.size(); ++fi) {
        const auto& fam = *fams[fi];
        ++rep.checked_families;
        const VectorPoly& q1 = fam.members.at(0);
        for (std::size_t j = 0; j <= fam.members.size(); ++j) {
            VectorPoly diff = j == 0 ? q1 : q1 - fam.members[j - 1];
            if (diff.is_zero()) continue;
            if (!diff.leading_coeff_z().is_multilinear())
                note("family " + std::to_string(fi) + ": lc_z(Q_1 - Q_" + std::to_string(j) +
                     ") is not multilinear");
        }
    }

    // (b) every monomial coefficient of every direction is (|u|+1)! times the
    // leading coefficient of P_1 - P_w for some w with deg(P_1 - P_w) = |u|+1.
    CandidateSet cs = direction_candidates(trace.normalized.family);
    for (std::size_t j = 0; j < trace.directions.size(); ++j) {
        const auto& c = trace.directions[j];
        for (const auto& [mono, coeff] : c.terms()) {
            ++rep.checked_coefficients;
            const int u = mono.h_degree();
            Int fact = factorial_int(u + 1);
            bool found = false;
            auto it = cs.by_degree.find(u + 1);
            if (it != cs.by_degree.end()) {
                for (const auto& lead : it->second) {
                    if (coeff == scale_vec(fact, lead)) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found)
                note("direction C_" + std::to_string(j + 1) + " monomial " + monomial_poly(c.dim(), c.num_h(), mono, coeff).str() +
                     ": coefficient is not (|u|+1)! times a leading coefficient of P_1 - P_w");
        }
    }
    return rep;
}

namespace {

// Scalar polynomial product helper for expanding P(z + eps·h).
using ScalarPoly = std::map<Monomial, Int>;

ScalarPoly scalar_mul(const ScalarPoly& a, const ScalarPoly& b, int num_h) {
    ScalarPoly out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m;
            m.z_exp = ma.z_exp + mb.z_exp;
            m.h_exps.resize(static_cast<std::size_t>(num_h));
            for (int i = 0; i < num_h; ++i) m.h_exps[static_cast<std::size_t>(i)] = ma.h_exps[static_cast<std::size_t>(i)] + mb.h_exps[static_cast<std::size_t>(i)];
            Int add = ca * cb;
            auto [it, inserted] = out.try_emplace(m, add);
            if (!inserted) it->second += add;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace

PolynomialFamily build_cube_family(const VectorPoly& p, int r) {
    if (p.dim() != 1) throw domain_error("cube family expects a 1-dimensional polynomial");
    if (p.num_h() != 0) throw domain_error("cube family expects a polynomial in z only");
    auto d = p.deg_z();
    if (!d || *d < 2) throw domain_error("cube family requires deg P >= 2");
    if (r < 1) throw domain_error("cube family requires r >= 1");

    // Coefficients beta_i of P.
    std::vector<Int> beta(static_cast<std::size_t>(*d) + 1, Int(0));
    for (const auto& [m, c] : p.terms()) beta[static_cast<std::size_t>(m.z_exp)] = c[0];

    PolynomialFamily fam;
    fam.dim = 1;
    fam.num_h = r;

    auto member_for = [&](unsigned mask) {
        // linear form z + sum_{i in mask} h_i, raised to powers via repeated
        // multiplication, then P(z + eps·h) - P(eps·h).
        ScalarPoly base;
        {
            Monomial mz;
            mz.z_exp = 1;
            mz.h_exps.assign(static_cast<std::size_t>(r), 0);
            base.emplace(mz, Int(1));
            for (int i = 0; i < r; ++i) {
                if (!(mask & (1u << i))) continue;
                Monomial mh;
                mh.z_exp = 0;
                mh.h_exps.assign(static_cast<std::size_t>(r), 0);
                mh.h_exps[static_cast<std::size_t>(i)] = 1;
                base.emplace(mh, Int(1));
            }
        }
        VectorPoly out(1, r);
        ScalarPoly power;  // base^i, built incrementally
        {
            Monomial one;
            one.h_exps.assign(static_cast<std::size_t>(r), 0);
            power.emplace(one, Int(1));
        }
        for (int i = 1; i <= *d; ++i) {
            power = scalar_mul(power, base, r);
            if (beta[static_cast<std::size_t>(i)].is_zero()) continue;
            for (const auto& [m, c] : power) {
                if (m.z_exp == 0) continue;  // subtracting P(eps·h) kills z-free terms
                out.add_term(m, Vec{beta[static_cast<std::size_t>(i)] * c});
            }
        }
        return out;
    };

    const unsigned full = (r >= 31) ? 0 : ((1u << r) - 1);
    if (r >= 31) throw domain_error("cube family dimension too large");
    for (unsigned mask = full + 1; mask-- > 0;) fam.members.push_back(member_for(mask));

    auto nc = is_normal(fam);
    if (!nc.ok) throw domain_error("cube family is not normal: " + nc.reason);

    // lc_z(P_eps - P_eps') must equal d·beta_d·(eps - eps')·h.
    for (std::size_t a = 0; a < fam.members.size(); ++a)
        for (std::size_t b = a + 1; b < fam.members.size(); ++b) {
            unsigned ea = full - static_cast<unsigned>(a);
            unsigned eb = full - static_cast<unsigned>(b);
            VectorPoly diff = fam.members[a] - fam.members[b];
            VectorPoly expect(1, r);
            for (int i = 0; i < r; ++i) {
                int da = (ea >> i) & 1u, db = (eb >> i) & 1u;
                if (da == db) continue;
                Monomial m;
                m.h_exps.assign(static_cast<std::size_t>(r), 0);
                m.h_exps[static_cast<std::size_t>(i)] = 1;
                expect.add_term(m, Vec{Int(*d) * beta[static_cast<std::size_t>(*d)] * Int(da - db)});
            }
            if (!(diff.leading_coeff_z() == expect))
                throw domain_error("cube family leading difference mismatch");
        }
    return fam;
}

std::vector<Gap> theorem_target_boxes(const std::vector<VectorPoly>& p, int j, long long k) {
    const int ell = static_cast<int>(p.size());
    if (j < 0 || j > ell) throw domain_error("function index out of range");
    if (k < 1) throw domain_error("K must be positive");
    const int dim = p.empty() ? 0 : p[0].dim();
    const Monomial constant{0, {}};

    std::vector<Gap> out;
    for (int jp = 0; jp <= ell; ++jp) {
        if (jp == j) continue;
        VectorPoly diff(dim, 0);
        if (j > 0) diff = diff + p[static_cast<std::size_t>(j - 1)];
        if (jp > 0) diff = diff - p[static_cast<std::size_t>(jp - 1)];
        auto d = diff.deg_z();
        if (!d || *d < 1) throw domain_error("degenerate difference between members " + std::to_string(j) + " and " + std::to_string(jp));
        Gap g;
        g.dim = dim;
        g.terms.push_back({diff.coeff_in_z(*d).coeff(constant), pow_int(Int(k), *d)});
        out.push_back(std::move(g));
    }
    return out;
}

Gap concatenation_target_boxes(const VectorPoly& c, long long h) {
    if (!c.is_multilinear()) throw domain_error("concatenation boxes need a multilinear polynomial");
    if (h < 1) throw domain_error("H must be positive");
    Gap g;
    g.dim = c.dim();
    for (const auto& [m, coeff] : c.terms()) {
        if (m.z_exp != 0) throw domain_error("concatenation boxes need a polynomial in h only");
        g.terms.push_back({coeff, pow_int(Int(h), m.h_degree() + 1)});
    }
    return g;
}

}  // namespace petbox
