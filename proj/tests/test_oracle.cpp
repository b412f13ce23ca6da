#include <catch_amalgamated.hpp>

#include <orbitkit/counting.hpp>
#include <orbitkit/oracle.hpp>

using namespace orbitkit;

namespace {

Matrix<std::uint32_t> compose(const Matrix<std::uint32_t>& a, const Matrix<std::uint32_t>& b, std::uint32_t p) {
    const std::size_t n = a.size();
    Matrix<std::uint32_t> c(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] = static_cast<std::uint32_t>((c[i][j] + 1ULL * a[i][k] * b[k][j]) % p);
    return c;
}

std::uint64_t predicted(RootSystemSpec s, int e, std::uint32_t p) {
    return static_cast<std::uint64_t>(count_characters(s, e).eval(static_cast<long long>(p) - 1));
}

}  // namespace

TEST_CASE("admissible characteristics", "[oracle]") {
    CHECK(minimal_prime(RootSystem({Family::A, 2})) == 3);
    CHECK(minimal_prime(RootSystem({Family::A, 3})) == 5);
    CHECK(minimal_prime(RootSystem({Family::D, 4})) == 7);
    CHECK_THROWS_AS(require_admissible(RootSystem({Family::A, 3}), 3), CharacteristicTooSmall);
    CHECK_THROWS_AS(require_admissible(RootSystem({Family::A, 3}), 9), std::invalid_argument);
    CHECK_THROWS_AS(OrbitPartition(RootSystem({Family::D, 4}), 7), BudgetExceeded);
    CHECK(checked_power(5, 6, 1'000'000) == 15625);
}

TEST_CASE("generator action", "[oracle]") {
    RootSystem a2({Family::A, 2});
    const std::uint32_t p = 5;
    auto id = generator_action(a2, p, 1, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(id[i][j] == (i == j ? 1U : 0U));

    // x_{e1-e2}(t) feeds f(e_{e1-e3}) into the e_{e2-e3} coordinate
    for (std::uint32_t t = 1; t < p; ++t) {
        auto m = generator_action(a2, p, 1, t);
        CHECK((m[0][2] == t || m[0][2] == p - t));
        CHECK(m[0][1] == 0);
        CHECK(m[2][0] == 0);
    }

    for (RootSystemSpec s : {RootSystemSpec{Family::A, 3}, RootSystemSpec{Family::C, 3}, RootSystemSpec{Family::B, 3}}) {
        RootSystem rs(s);
        const std::uint32_t q = minimal_prime(rs);
        for (int a = 0; a < rs.size(); ++a)
            for (std::uint32_t t : {1U, 2U}) {
                INFO(s.name() << " root " << a << " t " << t);
                CHECK(compose(generator_action(rs, q, a, t), generator_action(rs, q, a, 1), q) ==
                      generator_action(rs, q, a, t + 1));
                CHECK(generator_action(rs, q, a, t) == conjugation_action(rs, q, a, t));
            }
    }
}

TEST_CASE("Heisenberg census", "[oracle]") {
    RootSystem a2({Family::A, 2});
    auto c5 = enumerate_orbits(a2, 5);
    CHECK(c5.by_dimension == std::map<int, std::uint64_t>{{0, 25}, {2, 4}});
    CHECK(c5.total_orbits == 29);
    CHECK(c5.partition_identity());
    auto c3 = enumerate_orbits(a2, 3);
    CHECK(c3.by_dimension == std::map<int, std::uint64_t>{{0, 9}, {2, 2}});

    auto rc = rank_census(a2, 5);
    CHECK(rc.forms_by_rank.at(2) == 100);
    CHECK(rc.forms_by_rank.at(0) == 25);
    CHECK(rc.orbits().by_dimension == c5.by_dimension);
}

TEST_CASE("census matches the character count", "[oracle]") {
    struct Case {
        RootSystemSpec spec;
        std::uint32_t p;
    };
    for (auto [spec, p] : {Case{{Family::A, 2}, 3}, Case{{Family::A, 2}, 5}, Case{{Family::B, 2}, 5},
                           Case{{Family::A, 3}, 5}}) {
        INFO(spec.name() << " p=" << p);
        RootSystem rs(spec);
        OrbitPartition all(rs, p);
        OrbitPartition simple(rs, p, Generators::SimpleRoots);
        const auto& c = all.census();
        CHECK(c.partition_identity());
        CHECK(simple.census().by_dimension == c.by_dimension);
        CHECK(rank_census(rs, p).orbits().by_dimension == c.by_dimension);
        std::uint64_t mass = 0;
        for (int e = 0; 2 * e <= rs.sing_size(rs.highest()); ++e) {
            CHECK(c.count(2 * e) == predicted(spec, e, p));
            mass += predicted(spec, e, p);
        }
        CHECK(mass == c.total_orbits);
        CHECK(wd_bound_violations(all, rs) == 0);
    }
}

TEST_CASE("rank census in rank 3 at p = 7", "[oracle]") {
    for (RootSystemSpec s : {RootSystemSpec{Family::B, 3}, RootSystemSpec{Family::C, 3}}) {
        INFO(s.name());
        RootSystem rs(s);
        auto rc = rank_census(rs, 7);
        auto c = rc.orbits();
        CHECK(c.partition_identity());
        std::uint64_t mass = 0;
        for (int e = 0; e <= 3; ++e) {
            CHECK(c.count(2 * e) == predicted(s, e, 7));
            mass += predicted(s, e, 7);
        }
        CHECK(mass == c.total_orbits);
        CHECK(support_theorem_failures(rs, rc).empty());
    }
    RootSystem a3({Family::A, 3});
    CHECK(support_theorem_failures(a3, rank_census(a3, 5)).empty());
}

TEST_CASE("set-sections", "[oracle]") {
    RootSystem a2({Family::A, 2});
    auto las = section_check(a2, 5, {ClassString{"ALS", {}}}, 2);
    CHECK(las.passed());
    CHECK(las.section_points == 4);
    CHECK(las.orbits_of_dim == 4);

    CHECK_FALSE(section_check(a2, 5, {}, 2).passed());

    RootSystem a3({Family::A, 3});
    OrbitPartition part(a3, 5);
    for (int dim : {2, 4}) {
        auto rep = section_check(part, a3, classification(a3.spec(), dim).strings, dim);
        INFO("dim " << dim);
        CHECK(rep.passed());
    }
    // a string of the wrong dimension lands in the wrong orbits
    CHECK_FALSE(section_check(part, a3, classification(a3.spec(), 4).strings, 2).passed());
}

TEST_CASE("family dimension checks", "[oracle]") {
    RootSystem d4({Family::D, 4});
    CHECK(family_dim_check(d4, bit(7) | bit(8) | bit(9), 7, 6).passed());
    CHECK(family_dim_check(d4, bit(2) | bit(7) | bit(8) | bit(9), 7, 6).passed());
    CHECK(family_dim_check(d4, bit(0), 7, 0).passed());
    auto wrong = family_dim_check(d4, bit(7) | bit(8) | bit(9), 7, 4);
    CHECK_FALSE(wrong.passed());
    CHECK(wrong.forms == 216);
}
