#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "petbox/lattice.hpp"
#include "petbox/rng.hpp"

using namespace petbox;

namespace {

Vec v1(long long a) { return Vec{Int(a)}; }
Vec v2(long long a, long long b) { return Vec{Int(a), Int(b)}; }

Multiset random_multiset(Rng& rng, int dim, long long coord_range, int max_points) {
    Multiset m(dim);
    int n = static_cast<int>(rng.next_in(1, max_points));
    for (int i = 0; i < n; ++i) {
        Vec v(static_cast<std::size_t>(dim));
        for (auto& c : v) c = Int(rng.next_in(-coord_range, coord_range));
        m.add(v, Int(rng.next_in(1, 3)));
    }
    return m;
}

}  // namespace

TEST_CASE("progression dilates an interval") {
    Multiset p = progression(v2(2, 0), 1);
    CHECK(p.total() == Int(3));
    CHECK(p.multiplicity(v2(-2, 0)) == Int(1));
    CHECK(p.multiplicity(v2(0, 0)) == Int(1));
    CHECK(p.multiplicity(v2(2, 0)) == Int(1));

    Multiset q = progression(v1(0), 0);
    CHECK(q.total() == Int(1));
    CHECK(q.multiplicity(v1(0)) == Int(1));

    Multiset diag = progression(v2(1, 1), 2);
    CHECK(diag.total() == Int(5));
    CHECK(diag.support_size() == 5);
    for (long long k = -2; k <= 2; ++k) CHECK(diag.multiplicity(v2(k, k)) == Int(1));

    // beta = 0 collapses onto the origin with full multiplicity
    Multiset z = progression(v2(0, 0), 3);
    CHECK(z.support_size() == 1);
    CHECK(z.multiplicity(v2(0, 0)) == Int(7));
}

TEST_CASE("multiset sums convolve weight functions") {
    Multiset zero(1);
    zero.add(v1(0), Int(1));
    CHECK(multiset_sum(zero, zero) == zero);

    Multiset e(1);
    e.add(v1(0), Int(1));
    e.add(v1(1), Int(1));
    Multiset s = multiset_sum(e, e);
    CHECK(s.multiplicity(v1(0)) == Int(1));
    CHECK(s.multiplicity(v1(1)) == Int(2));
    CHECK(s.multiplicity(v1(2)) == Int(1));

    Multiset neg = multiset_negate([&] {
        Multiset m(1);
        m.add(v1(1), Int(2));
        m.add(v1(-1), Int(1));
        return m;
    }());
    CHECK(neg.multiplicity(v1(-1)) == Int(2));
    CHECK(neg.multiplicity(v1(1)) == Int(1));

    Multiset d = multiset_diff(e, e);
    CHECK(d.multiplicity(v1(0)) == Int(2));
    CHECK(d.multiplicity(v1(-1)) == Int(1));
    CHECK(d.multiplicity(v1(1)) == Int(1));

    CHECK_THROWS_AS(multiset_sum(e, Multiset(2)), domain_error);
}

TEST_CASE("size law |X+Y| = |X||Y| on random multisets") {
    Rng rng(7);
    for (int it = 0; it < 50; ++it) {
        int dim = static_cast<int>(rng.next_in(1, 2));
        Multiset x = random_multiset(rng, dim, 4, 6);
        Multiset y = random_multiset(rng, dim, 4, 6);
        CHECK(multiset_sum(x, y).total() == x.total() * y.total());
    }
}

TEST_CASE("Fejer kernel of [±1]") {
    FejerKernel mu = fejer(progression(v1(1), 1));
    CHECK(mu.weight(v1(0)) == Rational(Int(3), Int(9)));
    CHECK(mu.weight(v1(1)) == Rational(Int(2), Int(9)));
    CHECK(mu.weight(v1(-1)) == Rational(Int(2), Int(9)));
    CHECK(mu.weight(v1(2)) == Rational(Int(1), Int(9)));
    CHECK(mu.weight(v1(-2)) == Rational(Int(1), Int(9)));
    CHECK(mu.total() == Rational(1));
}

TEST_CASE("Fejer kernel of [±H] has the triangular closed form") {
    for (long long h_range : {1LL, 2LL, 5LL, 9LL}) {
        FejerKernel mu = fejer(progression(v1(1), h_range));
        Int width = 2 * h_range + 1;
        for (long long h = -2 * h_range; h <= 2 * h_range; ++h) {
            Rational expect(width - Int(std::llabs(h)), width * width);
            CHECK(mu.weight(v1(h)) == expect);
        }
        CHECK(mu.weight(v1(2 * h_range + 1)) == Rational(0));
    }
}

TEST_CASE("Fejer kernel of a single point is a delta") {
    FejerKernel mu = fejer(progression(v1(5), 0));
    CHECK(mu.weights().size() == 1);
    CHECK(mu.weight(v1(0)) == Rational(1));
}

TEST_CASE("Fejer kernels sum to one, are symmetric, and obey the pointwise bound") {
    Rng rng(11);
    for (int it = 0; it < 40; ++it) {
        int dim = static_cast<int>(rng.next_in(1, 2));
        Multiset e = random_multiset(rng, dim, 3, 8);
        FejerKernel mu = fejer(e);
        CHECK(mu.total() == Rational(1));
        for (const auto& [h, w] : mu.weights()) CHECK(mu.weight(negate_vec(h)) == w);

        // every multiplicity of E is <= C·|E|/|supp E| with this C
        Int max_mult = 0;
        for (const auto& [v, m] : e.weights()) max_mult = std::max(max_mult, m);
        Rational c = Rational(max_mult * Int(static_cast<long long>(e.support_size())), e.total());
        Rational cap = c / Rational(Int(static_cast<long long>(e.support_size())));
        for (const auto& [h, w] : mu.weights()) CHECK(w <= cap);

        // support equals supp(E - E)
        Multiset diff = multiset_diff(e, e);
        CHECK(mu.weights().size() == diff.support_size());
    }
}

TEST_CASE("fejer rejects an empty multiset") {
    CHECK_THROWS_AS(fejer(Multiset(1)), domain_error);
}

TEST_CASE("gap_expand multiplies out progressions") {
    Gap single{1, {{v1(3), Int(2)}}};
    CHECK(gap_expand(single) == progression(v1(3), 2));

    Gap grid{2, {{v2(1, 0), Int(1)}, {v2(0, 1), Int(1)}}};
    Multiset g = gap_expand(grid);
    CHECK(g.total() == Int(9));
    CHECK(g.support_size() == 9);
    for (long long a = -1; a <= 1; ++a)
        for (long long b = -1; b <= 1; ++b) CHECK(g.multiplicity(v2(a, b)) == Int(1));

    Gap twice{1, {{v1(1), Int(1)}, {v1(1), Int(1)}}};
    Multiset t = gap_expand(twice);
    CHECK(t.multiplicity(v1(-2)) == Int(1));
    CHECK(t.multiplicity(v1(-1)) == Int(2));
    CHECK(t.multiplicity(v1(0)) == Int(3));
    CHECK(t.multiplicity(v1(1)) == Int(2));
    CHECK(t.multiplicity(v1(2)) == Int(1));

    Gap zeros{2, {{v2(0, 0), Int(1)}, {v2(0, 0), Int(2)}}};
    Multiset z = gap_expand(zeros);
    CHECK(z.support_size() == 1);
    CHECK(z.multiplicity(v2(0, 0)) == Int(15));

    Gap huge{1, {{v1(1), Int(100000)}, {v1(2), Int(100000)}}};
    CHECK_THROWS_AS(gap_expand(huge), domain_error);
}

TEST_CASE("iterated sumset family") {
    std::vector<Multiset> fam;
    fam.push_back(progression(v1(1), 1));
    fam.push_back(progression(v1(1), 1));
    fam.push_back(progression(v1(2), 2));

    Multiset one = iterated_sumset_family(fam, {2});
    CHECK(one == fam[2]);

    Multiset tri = iterated_sumset_family(fam, {0, 1});
    CHECK(tri.multiplicity(v1(0)) == Int(3));
    CHECK(tri.multiplicity(v1(2)) == Int(1));

    Multiset all = iterated_sumset_family(fam, {0, 1, 2});
    CHECK(all.total() == Int(3) * Int(3) * Int(5));

    CHECK_THROWS_AS(iterated_sumset_family(fam, {0, 0}), domain_error);
    CHECK_THROWS_AS(iterated_sumset_family(fam, {0, 5}), domain_error);
}

TEST_CASE("checked arithmetic raises instead of wrapping") {
    Int big = 1;
    for (int i = 0; i < 126; ++i) big *= Int(2);
    CHECK_THROWS_AS(big * Int(4), overflow_error);
    CHECK_THROWS_AS(big + big, overflow_error);
    CHECK(Int(-7).str() == "-7");
    CHECK(Int(123456789012345678LL).str() == "123456789012345678");
    CHECK(gcd_int(Int(0), Int(-6)) == Int(6));
    CHECK(gcd_int(Int(0), Int(0)) == Int(0));
    CHECK(Rational(Int(6), Int(-4)).str() == "-3/2");
}
