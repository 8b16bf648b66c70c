#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "petbox/polyalg.hpp"
#include "petbox/rng.hpp"

using namespace petbox;

namespace {

VectorPoly random_poly(Rng& rng, int dim, int num_h, int max_deg, long long coeff_range) {
    VectorPoly p(dim, num_h);
    int terms = static_cast<int>(rng.next_in(0, 5));
    for (int i = 0; i < terms; ++i) {
        Monomial m;
        m.z_exp = static_cast<int>(rng.next_in(0, max_deg));
        m.h_exps.resize(static_cast<std::size_t>(num_h));
        for (auto& e : m.h_exps) e = static_cast<int>(rng.next_in(0, 2));
        Vec c(static_cast<std::size_t>(dim));
        for (auto& x : c) x = Int(rng.next_in(-coeff_range, coeff_range));
        p.add_term(m, c);
    }
    return p;
}

}  // namespace

TEST_CASE("evaluation is exact") {
    // e1 z^2 + e2 z over Z^2 at z = 2
    VectorPoly p = z_power_poly(unit_vec(2, 0), 2) + z_power_poly(unit_vec(2, 1), 1);
    Vec r = p.eval(Int(2), {});
    CHECK(r[0] == Int(4));
    CHECK(r[1] == Int(2));

    VectorPoly zero(1, 0);
    CHECK(zero.eval(Int(17), {})[0] == Int(0));

    // 2 h1 h2 z at z = 1, h = (3, 5)
    Monomial m;
    m.z_exp = 1;
    m.h_exps = {1, 1};
    VectorPoly q = monomial_poly(1, 2, m, Vec{Int(2)});
    CHECK(q.eval(Int(1), {Int(3), Int(5)})[0] == Int(30));
}

TEST_CASE("z-coefficient extraction") {
    Vec b2{Int(3)}, b1{Int(-1)};
    VectorPoly p = z_power_poly(b2, 2) + z_power_poly(b1, 1);
    CHECK(p.coeff_in_z(2) == z_power_poly(b2, 0));
    CHECK(p.coeff_in_z(5).is_zero());

    Monomial h1z{1, {1, 0}}, h1h2z2{2, {1, 1}};
    VectorPoly q = monomial_poly(1, 2, h1z, Vec{Int(2)}) + monomial_poly(1, 2, h1h2z2, Vec{Int(1)});
    VectorPoly c1 = q.coeff_in_z(1);
    CHECK(c1 == monomial_poly(1, 2, Monomial{0, {1, 0}}, Vec{Int(2)}));
}

TEST_CASE("degree in z with a distinguished minus-infinity") {
    VectorPoly p = z_power_poly(Vec{Int(3)}, 2) + z_power_poly(Vec{Int(1)}, 1);
    CHECK(p.deg_z() == 2);
    CHECK(p.leading_coeff_z() == z_power_poly(Vec{Int(3)}, 0));

    VectorPoly c = monomial_poly(1, 2, Monomial{0, {1, 1}}, Vec{Int(1)});
    CHECK(c.deg_z() == 0);

    VectorPoly zero(1, 0);
    CHECK_FALSE(zero.deg_z().has_value());
    CHECK_THROWS_AS(zero.leading_coeff_z(), domain_error);
}

TEST_CASE("sigma shift on powers of z") {
    Vec b{Int(5)};
    VectorPoly lin = z_power_poly(b, 1);
    CHECK(lin.sigma_shift() == lin.promote_num_h(1));

    VectorPoly sq = z_power_poly(b, 2);
    VectorPoly expect2 = z_power_poly(b, 2, 1) + monomial_poly(1, 1, Monomial{1, {1}}, Vec{Int(10)});
    CHECK(sq.sigma_shift() == expect2);

    VectorPoly cube = z_power_poly(b, 3);
    VectorPoly expect3 = z_power_poly(b, 3, 1) + monomial_poly(1, 1, Monomial{2, {1}}, Vec{Int(15)}) +
                         monomial_poly(1, 1, Monomial{1, {2}}, Vec{Int(15)});
    CHECK(cube.sigma_shift() == expect3);
}

TEST_CASE("sigma shift agrees with its defining evaluation identity") {
    Rng rng(23);
    for (int it = 0; it < 60; ++it) {
        int dim = static_cast<int>(rng.next_in(1, 2));
        int num_h = static_cast<int>(rng.next_in(0, 2));
        VectorPoly q = random_poly(rng, dim, num_h, 4, 5);
        VectorPoly s = q.sigma_shift();
        CHECK(s.coeff_in_z(0).is_zero());
        for (int rep = 0; rep < 4; ++rep) {
            Int z(rng.next_in(-4, 4));
            std::vector<Int> h(static_cast<std::size_t>(num_h));
            for (auto& x : h) x = Int(rng.next_in(-4, 4));
            Int hn(rng.next_in(-4, 4));
            std::vector<Int> h_ext = h;
            h_ext.push_back(hn);
            Vec got = s.eval(z, h_ext);
            Vec expect = sub_vec(q.eval(z + hn, h), q.eval(hn, h));
            CHECK(got == expect);
        }
    }
}

TEST_CASE("coefficient round trip reconstructs the polynomial") {
    Rng rng(29);
    for (int it = 0; it < 40; ++it) {
        VectorPoly p = random_poly(rng, 2, 2, 4, 4);
        VectorPoly sum(p.dim(), p.num_h());
        for (int i = 0; i <= 6; ++i) {
            VectorPoly ci = p.coeff_in_z(i);
            for (const auto& [m, c] : ci.terms()) {
                Monomial shifted = m;
                shifted.z_exp = i;
                sum.add_term(shifted, c);
            }
        }
        CHECK(sum == p);
    }
}

TEST_CASE("subtraction and degree interplay") {
    Rng rng(31);
    for (int it = 0; it < 60; ++it) {
        VectorPoly p = random_poly(rng, 1, 1, 4, 4);
        VectorPoly q = random_poly(rng, 1, 1, 4, 4);
        CHECK((p - p).is_zero());
        VectorPoly d = p - q;
        auto dp = p.deg_z(), dq = q.deg_z(), dd = d.deg_z();
        int mx = std::max(dp.value_or(-1), dq.value_or(-1));
        CHECK(dd.value_or(-1) <= mx);
        if (dp.value_or(-1) != dq.value_or(-1)) CHECK(dd.value_or(-1) == mx);
        if (dp && dq && *dp == *dq && !(p.coeff_in_z(*dp) == q.coeff_in_z(*dq)))
            CHECK(dd.value_or(-1) == mx);
    }
}

TEST_CASE("promotion keeps evaluation fixed") {
    VectorPoly c = z_power_poly(Vec{Int(7)}, 0);
    VectorPoly promoted = c.promote_num_h(3);
    CHECK(promoted.num_h() == 3);
    CHECK(promoted.eval(Int(2), {Int(1), Int(2), Int(3)})[0] == Int(7));
}

TEST_CASE("multilinearity predicate") {
    VectorPoly ml = monomial_poly(1, 2, Monomial{0, {1, 1}}, Vec{Int(2)}) +
                    monomial_poly(1, 2, Monomial{0, {1, 0}}, Vec{Int(1)});
    CHECK(ml.is_multilinear());
    VectorPoly sq = monomial_poly(1, 1, Monomial{0, {2}}, Vec{Int(1)});
    CHECK_FALSE(sq.is_multilinear());
    CHECK(VectorPoly(1, 1).is_multilinear());
}

TEST_CASE("text grammar round trips") {
    VectorPoly c = VectorPoly::parse("2*h1*h2*e1 + h1*e2", 2, 2);
    CHECK(c.coeff(Monomial{0, {1, 1}}) == Vec{Int(2), Int(0)});
    CHECK(c.coeff(Monomial{0, {1, 0}}) == Vec{Int(0), Int(1)});
    CHECK(VectorPoly::parse(c.str(), 2, 2) == c);

    VectorPoly p = VectorPoly::parse("e1*z^2 + e1*z", 2, 0);
    CHECK(p.deg_z() == 2);
    CHECK(p.coeff(Monomial{1, {}}) == unit_vec(2, 0));

    CHECK(VectorPoly::parse("z^2 - 3*z", 1, 0).eval(Int(2), {})[0] == Int(-2));
    CHECK(VectorPoly::parse("0", 1, 0).is_zero());
    CHECK(VectorPoly::parse("z - z", 1, 0).is_zero());

    Rng rng(37);
    for (int it = 0; it < 50; ++it) {
        int dim = static_cast<int>(rng.next_in(1, 3));
        int num_h = static_cast<int>(rng.next_in(0, 3));
        VectorPoly p2 = random_poly(rng, dim, num_h, 3, 6);
        CHECK(VectorPoly::parse(p2.str(), dim, num_h) == p2);
    }
}

TEST_CASE("parse errors carry positions") {
    try {
        VectorPoly::parse("z^2 + q", 1, 0);
        FAIL("expected a parse error");
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
    CHECK_THROWS_AS(VectorPoly::parse("h3*e1", 2, 2), domain_error);
    CHECK_THROWS_AS(VectorPoly::parse("e5*z", 2, 0), domain_error);
    CHECK_THROWS_AS(VectorPoly::parse("z*e1*e2", 2, 0), domain_error);
    CHECK_THROWS_AS(VectorPoly::parse("z^2", 2, 0), domain_error);  // missing basis vector
}
