#pragma once

#include <json.hpp>

#include "petbox/equidist.hpp"
#include "petbox/lattice.hpp"
#include "petbox/norms.hpp"
#include "petbox/pet.hpp"

namespace petbox {

using Json = nlohmann::json;

inline Json vec_to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& c : v) a.push_back(c.to_ll());
    return a;
}

inline Vec vec_from_json(const Json& j) {
    Vec v;
    for (const auto& c : j) v.push_back(Int(c.get<long long>()));
    return v;
}

inline Json multiset_to_json(const Multiset& m) {
    Json weights = Json::array();
    for (const auto& [v, w] : m.weights()) weights.push_back(Json::array({vec_to_json(v), w.to_ll()}));
    return Json{{"dim", m.dim()}, {"weights", weights}};
}

inline Multiset multiset_from_json(const Json& j) {
    Multiset m(j.at("dim").get<int>());
    for (const auto& entry : j.at("weights")) m.add(vec_from_json(entry.at(0)), Int(entry.at(1).get<long long>()));
    return m;
}

inline Json gap_to_json(const Gap& g) {
    Json terms = Json::array();
    for (const auto& t : g.terms) terms.push_back(Json{{"dir", vec_to_json(t.direction)}, {"half", t.half_length.to_ll()}});
    return Json{{"dim", g.dim}, {"terms", terms}};
}

inline Gap gap_from_json(const Json& j) {
    Gap g;
    g.dim = j.at("dim").get<int>();
    for (const auto& t : j.at("terms")) g.terms.push_back({vec_from_json(t.at("dir")), Int(t.at("half").get<long long>())});
    return g;
}

inline Json poly_family_to_json(const PolynomialFamily& fam) {
    Json members = Json::array();
    for (const auto& m : fam.members) members.push_back(m.str());
    return Json{{"dim", fam.dim}, {"num_h", fam.num_h}, {"members", members}};
}

inline Json pet_trace_to_json(const PetTrace& trace) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        steps.push_back(Json{{"type_before", s.type_before.str()},
                             {"chosen_m", s.chosen_m},
                             {"family_after", poly_family_to_json(s.after)}});
    }
    Json directions = Json::array();
    for (const auto& c : trace.directions) directions.push_back(c.str());
    return Json{{"target", trace.target},
                {"normalized", poly_family_to_json(trace.normalized.family)},
                {"pivot", trace.normalized.pivot},
                {"function_map", trace.normalized.function_map},
                {"steps", steps},
                {"final_family", poly_family_to_json(trace.final_family)},
                {"num_h_final", trace.num_h_final},
                {"directions", directions}};
}

}  // namespace petbox
