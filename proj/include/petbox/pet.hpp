#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "petbox/polyalg.hpp"

namespace petbox {

// Ordered family of polynomials in (z, h_1..h_r) over Z^D.
struct PolynomialFamily {
    int dim = 0;
    int num_h = 0;
    std::vector<VectorPoly> members;

    std::size_t size() const { return members.size(); }
    int max_deg_z() const;
    bool all_linear_in_z() const;
    std::string str() const;
};

struct NormalCheck {
    bool ok = false;
    std::string reason;
};

// Normal family: members nonzero and pairwise distinct, the first member of
// maximal z-degree, and every member vanishing identically at z = 0.
NormalCheck is_normal(const PolynomialFamily& q);

// Type vector (w_1, ..., w_{d'}): w_l counts the distinct leading
// coefficients (as polynomials in h) among the members of z-degree l.
struct FamilyType {
    std::vector<long long> counts;

    std::string str() const;
    friend bool operator==(const FamilyType& a, const FamilyType& b) { return a.counts == b.counts; }
};

// Colexicographic order: decided at the largest degree where the counts
// differ, with missing entries read as zero.
bool colex_less(const FamilyType& a, const FamilyType& b);

FamilyType family_type(const PolynomialFamily& q);

// Deterministic pick of the index subtracted by the next van der Corput
// operation; smallest valid index wherever a choice is allowed.
int choose_m(const PolynomialFamily& q);

// ∂_m: (σQ_1 - Q_m, ..., σQ_s - Q_m, Q_1 - Q_m, ..., Q_s - Q_m) with zero
// polynomials removed and only the first copy of each duplicate kept.  Adds
// one h-variable.
PolynomialFamily vdc_op(const PolynomialFamily& q, int m);

// Record of bringing a progression into normal form: constants stripped and,
// when the first member lacked maximal degree, the pivot transform
// P_j -> P_j - P_m, P_m -> -P_m applied.  function_map[slot] is the original
// function index (0..l) evaluated at x + member_slot(z) after the transform.
struct NormalizeResult {
    PolynomialFamily family;
    std::vector<Vec> constant_shifts;   // stripped P_j(0), in input order
    int pivot = 0;                      // 0 when no transform was needed
    std::vector<int> function_map;      // size l+1; slot 0 is the free function
};

NormalizeResult normalize_progression(const std::vector<VectorPoly>& p);

struct PetStep {
    PolynomialFamily before;
    FamilyType type_before;
    int chosen_m = 0;
    PolynomialFamily after;
};

struct PetTrace {
    std::vector<VectorPoly> input;        // as given, before any reordering
    int target = 1;                        // function index the trace controls
    NormalizeResult normalized;
    std::vector<PetStep> steps;
    PolynomialFamily final_family;         // all members linear in z
    std::vector<VectorPoly> directions;    // C_1 = b_1, C_j = b_1 - b_j
    int num_h_final = 0;

    std::string str() const;
};

inline constexpr std::size_t kDefaultPetStepCap = 100000;
inline constexpr std::size_t kDefaultPetSizeCap = 100000;

// Runs the full induction: normalize, then repeat (type, choose_m, vdc_op)
// until every member is linear in z, asserting normality, the first member
// keeping maximal degree, and a strict colexicographic type decrease at each
// step.  `target` picks which function's box norms the directions control:
// 1..l selects that member (it is moved to the front), 0 selects the
// untranslated function via the pivot transform.
//
// Intermediate family sizes can grow exponentially across steps (degree-3
// inputs with several distinct top coefficients overflow any machine), so
// the run refuses via cap_exceeded once a family passes size_cap members.
PetTrace pet_run(const std::vector<VectorPoly>& p, int target = 1,
                 std::size_t step_cap = kDefaultPetStepCap,
                 std::size_t size_cap = kDefaultPetSizeCap);

struct DescendenceReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::size_t checked_families = 0;
    std::size_t checked_coefficients = 0;
};

// Extensional check of the descendence properties along a trace: leading
// coefficients in z of Q_1 - Q_j stay multilinear at every step, and every
// monomial coefficient of each final direction equals (|u|+1)! times the
// leading coefficient of P_1 - P_w for some w in [0, l], where P is the
// normalized family the run started from.
DescendenceReport verify_descendence(const PetTrace& trace);

// {P_eps : eps in {0,1}^r} with P_eps(z,h) = P(z + eps·h) - P(eps·h),
// ordered with eps = (1,..,1) first.  Requires deg P >= 2; asserts the
// family is normal and that lc_z(P_eps - P_eps') = d·beta_d·(eps-eps')·h.
PolynomialFamily build_cube_family(const VectorPoly& p, int r);

// Boxes (beta_{j d_jj'} - beta_{j' d_jj'})·[±K^{d_jj'}] for j' != j in
// [0, l], in ascending j' order, with P_0 = 0.
std::vector<Gap> theorem_target_boxes(const std::vector<VectorPoly>& p, int j, long long k);

// One GAP term (gamma_u, H^{|u|+1}) per monomial u of a multilinear C.
Gap concatenation_target_boxes(const VectorPoly& c, long long h);

}  // namespace petbox
