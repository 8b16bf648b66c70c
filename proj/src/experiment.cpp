#include "petbox/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "petbox/rng.hpp"

namespace petbox {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

LatticeFunction build_function(const Json& spec, int dim, std::uint64_t base_seed, std::uint64_t index) {
    const std::string type = spec.at("type").get<std::string>();
    std::uint64_t seed = base_seed;
    if (spec.contains("seed"))
        seed = spec.at("seed").get<std::uint64_t>();
    else {
        Rng derive(base_seed);
        for (std::uint64_t i = 0; i <= index; ++i) seed = derive.next_u64();
    }
    if (type == "indicator_box") return LatticeFunction::indicator_box(vec_from_json(spec.at("lo")), vec_from_json(spec.at("hi")));
    if (type == "random_pm1") return LatticeFunction::random_pm1(vec_from_json(spec.at("lo")), vec_from_json(spec.at("hi")), seed);
    if (type == "random_unimodular")
        return LatticeFunction::random_unimodular(vec_from_json(spec.at("lo")), vec_from_json(spec.at("hi")), seed);
    if (type == "points") {
        LatticeFunction f(dim);
        for (const auto& entry : spec.at("values")) {
            Vec x = vec_from_json(entry.at(0));
            f.set(x, Complex(entry.at(1).at(0).get<double>(), entry.at(1).at(1).get<double>()));
        }
        return f;
    }
    throw domain_error("unknown function constructor: " + type);
}

namespace {

struct CsvWriter {
    std::ostringstream os;
    bool row_open = false;

    void header(const std::string& cols) { os << cols << "\n"; }
    void cell(const std::string& v) {
        if (row_open) os << ",";
        os << v;
        row_open = true;
    }
    void cell(double v) { cell(format_double(v)); }
    void cell(long long v) { cell(std::to_string(v)); }
    void cell(int v) { cell(std::to_string(v)); }
    void end_row() {
        os << "\n";
        row_open = false;
    }
    std::string str() const { return os.str(); }
};

std::vector<VectorPoly> parse_family(const Json& config) {
    const int dim = config.at("dim").get<int>();
    std::vector<VectorPoly> fam;
    for (const auto& s : config.at("family")) fam.push_back(VectorPoly::parse(s.get<std::string>(), dim, 0));
    return fam;
}

Gap gap_from_config(const Json& j, int default_dim) {
    Gap g;
    g.dim = j.contains("dim") ? j.at("dim").get<int>() : default_dim;
    for (const auto& t : j.at("terms")) g.terms.push_back({vec_from_json(t.at("dir")), Int(t.at("half").get<long long>())});
    return g;
}

Gap full_box_gap(int dim, long long n) {
    Gap g;
    g.dim = dim;
    for (int i = 0; i < dim; ++i) g.terms.push_back({unit_vec(dim, i), Int(n)});
    return g;
}

std::uint64_t config_seed(const Json& config) {
    return config.contains("seed") ? config.at("seed").get<std::uint64_t>() : 0;
}

long long config_max_states(const Json& config) {
    return config.contains("max_states") ? config.at("max_states").get<long long>() : kDefaultMaxStates;
}

double volume_nd(const Json& config) {
    const int dim = config.at("dim").get<int>();
    const long long n = config.at("N").get<long long>();
    return std::pow(static_cast<double>(n), dim);
}

}  // namespace

ScenarioResult run_pet_scenario(const Json& config) {
    ScenarioResult res;
    auto family = parse_family(config);
    int target = config.contains("target") ? config.at("target").get<int>() : 1;

    PetTrace trace = pet_run(family, target);
    DescendenceReport rep = verify_descendence(trace);

    std::ostringstream log;
    log << trace.str();
    log << "descendence: " << (rep.ok ? "ok" : "VIOLATIONS") << " (" << rep.checked_families
        << " families, " << rep.checked_coefficients << " direction coefficients)\n";
    for (const auto& v : rep.violations) log << "  violation: " << v << "\n";
    res.log = log.str();

    CsvWriter csv;
    csv.header("scenario,target,steps,num_h,direction_index,direction");
    for (std::size_t i = 0; i < trace.directions.size(); ++i) {
        csv.cell(std::string("pet"));
        csv.cell(target);
        csv.cell(static_cast<long long>(trace.steps.size()));
        csv.cell(trace.num_h_final);
        csv.cell(static_cast<long long>(i + 1));
        csv.cell("\"" + trace.directions[i].str() + "\"");
        csv.end_row();
    }
    res.csv = csv.str();
    res.extra = pet_trace_to_json(trace);
    if (!rep.ok) res.exit_code = kExitAssertionFailed;
    return res;
}

ScenarioResult run_norm_scenario(const Json& config) {
    ScenarioResult res;
    const int dim = config.at("dim").get<int>();
    const long long max_states = config_max_states(config);
    LatticeFunction f = build_function(config.at("function"), dim, config_seed(config), 0);
    const bool cross_check = config.contains("cross_check") && config.at("cross_check").get<bool>();

    CsvWriter csv;
    csv.header("scenario,seed,label,degree,power,power_direct,rel_gap,agree");
    std::ostringstream log;
    bool all_ok = true;
    for (const auto& entry : config.at("norms")) {
        std::string label = entry.contains("label") ? entry.at("label").get<std::string>() : "norm";
        std::vector<Multiset> es;
        for (const auto& gj : entry.at("boxes")) es.push_back(gap_expand(gap_from_config(gj, dim)));
        NormReport rep = box_norm_power(f, es, max_states);
        csv.cell(std::string("norm"));
        csv.cell(static_cast<long long>(config_seed(config)));
        csv.cell(label);
        csv.cell(rep.degree);
        csv.cell(rep.power);
        if (cross_check) {
            NormReport direct = box_norm_power_direct(f, es, max_states);
            double scale = std::max({1.0, std::abs(rep.power), std::abs(direct.power)});
            double gap = std::abs(rep.power - direct.power) / scale;
            bool ok = gap <= 1e-9;
            all_ok = all_ok && ok;
            csv.cell(direct.power);
            csv.cell(gap);
            csv.cell(std::string(ok ? "pass" : "fail"));
            log << label << ": power=" << format_double(rep.power) << " direct=" << format_double(direct.power)
                << " rel_gap=" << format_double(gap) << (ok ? " pass" : " FAIL") << "\n";
        } else {
            csv.cell(std::string(""));
            csv.cell(std::string(""));
            csv.cell(std::string(""));
            log << label << ": power=" << format_double(rep.power) << "\n";
        }
        csv.end_row();
    }
    res.csv = csv.str();
    res.log = log.str();
    if (!all_ok) res.exit_code = kExitAssertionFailed;
    return res;
}

ScenarioResult run_count_op_scenario(const Json& config) {
    ScenarioResult res;
    const int dim = config.at("dim").get<int>();
    const long long k = config.at("K").get<long long>();
    auto family = parse_family(config);
    std::vector<LatticeFunction> fs;
    std::uint64_t seed = config_seed(config);
    std::uint64_t idx = 0;
    for (const auto& spec : config.at("functions")) fs.push_back(build_function(spec, dim, seed, idx++));
    if (fs.size() != family.size() + 1) throw domain_error("need l+1 functions for l polynomials");

    Complex value = counting_operator(fs, family, k);
    double norm_vol = volume_nd(config);
    double delta = std::abs(value) / norm_vol;

    CsvWriter csv;
    csv.header("scenario,dim,N,K,seed,value_re,value_im,abs,delta");
    csv.cell(std::string("count-op"));
    csv.cell(dim);
    csv.cell(config.at("N").get<long long>());
    csv.cell(k);
    csv.cell(static_cast<long long>(seed));
    csv.cell(value.real());
    csv.cell(value.imag());
    csv.cell(std::abs(value));
    csv.cell(delta);
    csv.end_row();
    res.csv = csv.str();
    res.log = "counting operator = " + format_double(value.real()) + (value.imag() >= 0 ? "+" : "") +
              format_double(value.imag()) + "i, delta = " + format_double(delta) + "\n";
    return res;
}

ScenarioResult run_theorem15_scenario(const Json& config) {
    ScenarioResult res;
    const int dim = config.at("dim").get<int>();
    const long long n = config.at("N").get<long long>();
    const long long k = config.at("K").get<long long>();
    const int mult = config.contains("t") ? config.at("t").get<int>() : 1;
    const long long max_states = config_max_states(config);
    const double thr_delta = config.contains("thresholds") ? config.at("thresholds").value("delta", 0.5) : 0.5;
    const double thr_norm = config.contains("thresholds") ? config.at("thresholds").value("norm", 0.9) : 0.9;

    auto family = parse_family(config);
    const int ell = static_cast<int>(family.size());
    std::vector<LatticeFunction> fs;
    std::uint64_t seed = config_seed(config);
    std::uint64_t idx = 0;
    for (const auto& spec : config.at("functions")) fs.push_back(build_function(spec, dim, seed, idx++));
    if (fs.size() != family.size() + 1) throw domain_error("need l+1 functions for l polynomials");

    auto t0 = std::chrono::steady_clock::now();
    double norm_vol = std::pow(static_cast<double>(n), dim);
    double delta = std::abs(counting_operator(fs, family, k)) / norm_vol;

    CsvWriter csv;
    csv.header("scenario,dim,N,K,t,seed,delta,j,norm_power,normalized,exponent");
    std::ostringstream log;
    log << "delta = " << format_double(delta) << "\n";
    bool assertion_ok = true;
    for (int j = 0; j <= ell; ++j) {
        std::vector<Multiset> es;
        for (const auto& gap : theorem_target_boxes(family, j, k)) {
            Multiset e = gap_expand(gap);
            for (int rep = 0; rep < mult; ++rep) es.push_back(e);
        }
        NormReport rep = box_norm_power(fs[static_cast<std::size_t>(j)], es, max_states);
        double normalized = rep.power / norm_vol;
        std::string exponent = "na";
        if (delta > 0.0 && delta < 1.0 && normalized > 0.0)
            exponent = format_double(std::log(normalized) / std::log(delta));
        if (delta >= thr_delta && normalized < thr_norm) assertion_ok = false;

        csv.cell(std::string("theorem15-check"));
        csv.cell(dim);
        csv.cell(n);
        csv.cell(k);
        csv.cell(mult);
        csv.cell(static_cast<long long>(seed));
        csv.cell(delta);
        csv.cell(j);
        csv.cell(rep.power);
        csv.cell(normalized);
        csv.cell(exponent);
        csv.end_row();
        log << "f_" << j << ": norm power = " << format_double(rep.power)
            << ", normalized = " << format_double(normalized) << "\n";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    log << "assertion (delta >= " << format_double(thr_delta) << " implies normalized >= " << format_double(thr_norm)
        << "): " << (assertion_ok ? "pass" : "FAIL") << "\n";
    log << "runtime_ms = " << ms << "\n";
    res.csv = csv.str();
    res.log = log.str();
    if (!assertion_ok) res.exit_code = kExitAssertionFailed;
    return res;
}

ScenarioResult run_concat_scenario(const Json& config) {
    ScenarioResult res;
    const int dim = config.at("dim").get<int>();
    const long long n = config.at("N").get<long long>();
    const long long h_range = config.at("H").get<long long>();
    const long long m_range = config.at("M").get<long long>();
    const int r = config.at("r").get<int>();
    const long long max_states = config_max_states(config);

    VectorPoly c = VectorPoly::parse(config.at("C").get<std::string>(), dim, r);
    if (!c.is_multilinear()) throw domain_error("C must be multilinear");
    LatticeFunction f = build_function(config.at("function"), dim, config_seed(config), 0);

    // LHS: E_{h in [±H]^r} ||f||^2 along C(h)·[±M].
    double lhs = 0.0;
    std::vector<Int> h(static_cast<std::size_t>(r), Int(-h_range));
    long long count = 0;
    for (;;) {
        Vec dir = c.eval(Int(0), h);
        NormReport rep = box_norm_power(f, {progression(dir, m_range)}, max_states);
        lhs += rep.power;
        ++count;
        int i = 0;
        for (; i < r; ++i) {
            h[static_cast<std::size_t>(i)] += Int(1);
            if (h[static_cast<std::size_t>(i)] <= Int(h_range)) break;
            h[static_cast<std::size_t>(i)] = Int(-h_range);
        }
        if (i == r) break;
    }
    lhs /= static_cast<double>(count);

    // RHS: ||f||^4 along ([±N]^D, E) with E the concatenated GAP.
    Gap e = concatenation_target_boxes(c, h_range);
    std::vector<Multiset> es{gap_expand(full_box_gap(dim, n)), gap_expand(e)};
    NormReport rhs = box_norm_power(f, es, max_states);

    double norm_vol = std::pow(static_cast<double>(n), dim);
    CsvWriter csv;
    csv.header("scenario,dim,N,H,M,r,seed,C,lhs,lhs_normalized,rhs,rhs_normalized,concat_box");
    csv.cell(std::string("concat-check"));
    csv.cell(dim);
    csv.cell(n);
    csv.cell(h_range);
    csv.cell(m_range);
    csv.cell(r);
    csv.cell(static_cast<long long>(config_seed(config)));
    csv.cell("\"" + c.str() + "\"");
    csv.cell(lhs);
    csv.cell(lhs / norm_vol);
    csv.cell(rhs.power);
    csv.cell(rhs.power / norm_vol);
    csv.cell("\"" + e.str() + "\"");
    csv.end_row();
    res.csv = csv.str();
    res.log = "lhs/N^D = " + format_double(lhs / norm_vol) + ", rhs/N^D = " + format_double(rhs.power / norm_vol) +
              "\nconcatenated box: " + e.str() + "\n";
    return res;
}

namespace {

void write_fixture(const Json& config, const Json& fixture) {
    if (!config.contains("fixture_out")) return;
    std::ofstream out(config.at("fixture_out").get<std::string>());
    out << fixture.dump(2) << "\n";
}

ScenarioResult sweep_cor72(const Json& config) {
    ScenarioResult res;
    const int ell_max = config.value("ell_max", 3);
    const long long h_max = config.value("h_max", 10);
    const long long m_max = config.value("M_max", 10);
    const long long random_instances = config.value("random_instances", 0LL);
    std::uint64_t seed = config_seed(config);

    CsvWriter csv;
    csv.header("scenario,ell,h,M,max_count,bound,ratio");
    Json per_ell = Json::object();
    std::ostringstream log;

    for (int ell = 2; ell <= ell_max; ++ell) {
        double worst = 0.0;
        std::vector<long long> h(static_cast<std::size_t>(ell), 1);
        for (;;) {
            for (long long m = 1; m <= m_max; ++m) {
                auto table = linear_solution_table(h, m);
                Int best = 0;
                for (const auto& [t, c] : table) best = std::max(best, c, [](const Int& a, const Int& b) { return a < b; });
                Rational bound = linear_bound_rhs(h, m);
                double ratio = best.to_double() / bound.to_double();
                worst = std::max(worst, ratio);
                std::ostringstream hs;
                for (std::size_t i = 0; i < h.size(); ++i) hs << (i ? " " : "") << h[i];
                csv.cell(std::string("equidist-sweep"));
                csv.cell(ell);
                csv.cell("\"" + hs.str() + "\"");
                csv.cell(m);
                csv.cell(best.str());
                csv.cell(bound.to_double());
                csv.cell(ratio);
                csv.end_row();
            }
            int i = 0;
            for (; i < ell; ++i) {
                if (++h[static_cast<std::size_t>(i)] <= h_max) break;
                h[static_cast<std::size_t>(i)] = 1;
            }
            if (i == ell) break;
        }
        per_ell[std::to_string(ell)] = worst;
        log << "ell=" << ell << ": max count/bound over grid = " << format_double(worst) << "\n";
    }

    if (random_instances > 0) {
        Rng rng(seed);
        double worst_random = 0.0;
        for (long long i = 0; i < random_instances; ++i) {
            int ell = static_cast<int>(rng.next_in(2, ell_max));
            std::vector<long long> h(static_cast<std::size_t>(ell));
            for (auto& x : h) x = rng.next_in(1, h_max);
            long long m = rng.next_in(1, m_max);
            long long bound_t = ell * h_max * m;
            long long target = rng.next_in(-bound_t, bound_t);
            Int c = count_linear_solutions(h, m, target);
            double ratio = c.to_double() / linear_bound_rhs(h, m).to_double();
            worst_random = std::max(worst_random, ratio);
        }
        log << "random instances: max ratio = " << format_double(worst_random) << "\n";
        per_ell["random_max"] = worst_random;
    }

    write_fixture(config, Json{{"corollary72", per_ell}});
    res.csv = csv.str();
    res.log = log.str();
    return res;
}

ScenarioResult sweep_calh(const Json& config) {
    ScenarioResult res;
    const int l = config.value("l", 1);
    const int t = config.value("t", 3);
    const long long h_range = config.value("H", 20LL);
    std::vector<double> etas;
    if (config.contains("etas"))
        for (const auto& e : config.at("etas")) etas.push_back(e.get<double>());
    else
        etas = {0.05, 0.1, 0.2};

    CsvWriter csv;
    csv.header("scenario,l,t,H,eta,complement_fraction,fraction_over_eta");
    double worst = 0.0;
    std::ostringstream log;
    for (double eta : etas) {
        // eta given as a decimal; use the exact rational with denominator 1000.
        Rational eta_q(Int(static_cast<long long>(std::llround(eta * 1000))), Int(1000));
        DensityResult d = calh_complement_fraction(l, t, eta_q, h_range, true);
        double frac = d.exact_fraction.to_double();
        worst = std::max(worst, frac / eta);
        csv.cell(std::string("equidist-sweep"));
        csv.cell(l);
        csv.cell(t);
        csv.cell(h_range);
        csv.cell(eta);
        csv.cell(frac);
        csv.cell(frac / eta);
        csv.end_row();
        log << "eta=" << format_double(eta) << ": complement fraction = " << format_double(frac) << "\n";
    }
    log << "max fraction/eta = " << format_double(worst) << "\n";
    write_fixture(config, Json{{"calh_density", Json{{"l", l}, {"t", t}, {"H", h_range}, {"C", worst}}}});
    res.csv = csv.str();
    res.log = log.str();
    return res;
}

ScenarioResult sweep_prop74(const Json& config) {
    ScenarioResult res;
    const int t = config.value("t", 3);
    const int ell = config.value("ell", 3);
    const double eta = config.value("eta", 0.25);
    std::vector<long long> scales;
    if (config.contains("scales"))
        for (const auto& s : config.at("scales")) scales.push_back(s.get<long long>());
    else
        scales = {2, 3, 4};

    const long long exponent_e = config.value("E", 2LL);
    Rational eta_q(Int(static_cast<long long>(std::llround(eta * 1000))), Int(1000));

    CsvWriter csv;
    csv.header("scenario,t,ell,s,r,eta,H,M,max_count,bound,ratio,C_at_E");
    double worst_c = 0.0;
    std::ostringstream log;
    for (long long scale : scales) {
        MultilinearSystem sys;
        sys.t = t;
        sys.ell = ell;
        sys.r = 1;
        sys.s = 1;
        sys.h_range = scale;
        sys.m_range = scale;
        sys.eta = eta_q;
        MaxCountResult mc = normalized_count_max_exact(sys);
        Rational bound = prop74_bound(sys).value(sys.m_range, sys.h_range);
        double ratio = mc.value.to_double() / bound.to_double();
        double c_at_e = ratio * std::pow(eta, static_cast<double>(exponent_e));
        worst_c = std::max(worst_c, c_at_e);
        csv.cell(std::string("equidist-sweep"));
        csv.cell(t);
        csv.cell(ell);
        csv.cell(1);
        csv.cell(1);
        csv.cell(eta);
        csv.cell(sys.h_range);
        csv.cell(sys.m_range);
        csv.cell(mc.value.to_double());
        csv.cell(bound.to_double());
        csv.cell(ratio);
        csv.cell(c_at_e);
        csv.end_row();
        log << "H=M=" << scale << ": max normalized count = " << mc.value.str() << ", ratio to M^-2 H^-1 = "
            << format_double(ratio) << "\n";
    }
    log << "C (at eta^-" << exponent_e << ") = " << format_double(worst_c) << "\n";
    write_fixture(config, Json{{"prop74", Json{{"t", t}, {"ell", ell}, {"eta", eta}, {"E", exponent_e}, {"C", worst_c}}}});
    res.csv = csv.str();
    res.log = log.str();
    return res;
}

}  // namespace

ScenarioResult run_equidist_sweep_scenario(const Json& config) {
    const std::string sweep = config.value("sweep", "cor72");
    if (sweep == "cor72") return sweep_cor72(config);
    if (sweep == "calh") return sweep_calh(config);
    if (sweep == "prop74") return sweep_prop74(config);
    throw domain_error("unknown sweep kind: " + sweep);
}

ScenarioResult run_scenario(const Json& config) {
    try {
        const std::string scenario = config.at("scenario").get<std::string>();
        if (scenario == "pet") return run_pet_scenario(config);
        if (scenario == "norm") return run_norm_scenario(config);
        if (scenario == "count-op") return run_count_op_scenario(config);
        if (scenario == "theorem15-check") return run_theorem15_scenario(config);
        if (scenario == "concat-check") return run_concat_scenario(config);
        if (scenario == "equidist-sweep") return run_equidist_sweep_scenario(config);
        ScenarioResult res;
        res.exit_code = kExitConfigError;
        res.log = "unknown scenario: " + scenario + "\n";
        return res;
    } catch (const cap_exceeded& e) {
        ScenarioResult res;
        res.exit_code = kExitCapExceeded;
        res.log = std::string("cap exceeded: ") + e.what() + "\n";
        return res;
    } catch (const Json::exception& e) {
        ScenarioResult res;
        res.exit_code = kExitConfigError;
        res.log = std::string("config error: ") + e.what() + "\n";
        return res;
    } catch (const std::exception& e) {
        ScenarioResult res;
        res.exit_code = kExitConfigError;
        res.log = std::string("error: ") + e.what() + "\n";
        return res;
    }
}

}  // namespace petbox
