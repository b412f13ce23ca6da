#include <catch_amalgamated.hpp>

#include <set>

#include <orbitkit/data.hpp>
#include <orbitkit/rootsys.hpp>

using namespace orbitkit;

namespace {

std::vector<RootSystemSpec> covered_systems() {
    std::vector<RootSystemSpec> out;
    for (Family f : {Family::A, Family::B, Family::C})
        for (int r = 2; r <= 7; ++r) out.push_back({f, r});
    for (int r = 4; r <= 8; ++r) out.push_back({Family::D, r});
    return out;
}

}  // namespace

TEST_CASE("order tables load for every covered system", "[data]") {
    for (auto s : covered_systems()) {
        INFO(s.name());
        auto t = data::order_table(s);
        REQUIRE(t);
        CHECK(t->spec == s);
    }
}

TEST_CASE("order table checksum rejects edits", "[data]") {
    auto text = data::load_required(data::order_table_path({Family::A, 2}));
    REQUIRE_NOTHROW(data::parse_order_table(text));
    auto pos = text.find("\n3 1 1");
    REQUIRE(pos != std::string::npos);
    std::string broken = text;
    broken.replace(pos, 6, "\n3 2 1");
    CHECK_THROWS_AS(data::parse_order_table(broken), DataError);
}

TEST_CASE("order table without checksum is rejected", "[data]") {
    CHECK_THROWS_AS(data::parse_order_table("A 1\n1 1\n"), DataError);
}

TEST_CASE("stored orderings list each positive root once", "[data]") {
    for (auto s : covered_systems()) {
        INFO(s.name());
        RootSystem table(s);
        RootSystem generated(s, false);
        REQUIRE(table.order() == RootSystem::Order::Table);
        REQUIRE(generated.order() == RootSystem::Order::Generated);
        REQUIRE(table.size() == generated.size());
        std::set<Root> a(table.roots().begin(), table.roots().end());
        std::set<Root> b(generated.roots().begin(), generated.roots().end());
        CHECK(a.size() == static_cast<std::size_t>(table.size()));
        CHECK(a == b);
        // simple roots come first, heights never decrease
        for (int k = 0; k < s.rank; ++k) CHECK(table.root(k) == table.simple()[k]);
        for (int k = 1; k < table.size(); ++k) CHECK(table.height(k - 1) <= table.height(k));
    }
}

TEST_CASE("A7 and D8 orderings carry erratum notes", "[data]") {
    CHECK_FALSE(RootSystem({Family::A, 7}).order_notes().empty());
    CHECK_FALSE(RootSystem({Family::D, 8}).order_notes().empty());
    CHECK(RootSystem({Family::A, 3}).order_notes().empty());
}

TEST_CASE("string tables parse and normalize", "[data]") {
    auto t = data::string_table({Family::A, 2}, 2);
    REQUIRE(t);
    CHECK(t->dim == 2);
    CHECK(t->arm_letter == 'L');
    REQUIRE(t->strings.size() == 1);
    // printed with the arm letters swapped
    CHECK(t->strings[0] == "LAS");
    CHECK(data::normalize_string(t->strings[0], 3, t->arm_letter) == "ALS");

    auto d4 = data::string_table({Family::D, 4}, 6);
    REQUIRE(d4);
    CHECK(d4->strings.size() == 23);
    CHECK(d4->arm_letter == 'A');
}

TEST_CASE("normalize_string pads with I and swaps arm letters", "[data]") {
    CHECK(data::normalize_string("AL", 4, 'A') == "ALII");
    CHECK(data::normalize_string("AL", 4, 'L') == "LAII");
    CHECK(data::normalize_string("SSI", 3, 'L') == "SSI");
}

TEST_CASE("string table parser rejects malformed input", "[data]") {
    CHECK_THROWS_AS(data::parse_string_table("A 2\n"), DataError);
    CHECK_THROWS_AS(data::parse_string_table("A 2 2\nletters arm=X\n"), DataError);
    CHECK_THROWS_AS(data::parse_string_table("A 2 2\nletters arm=A\nLAQ\n"), DataError);
}

TEST_CASE("errata reference existing tables", "[data]") {
    auto list = data::errata();
    REQUIRE_FALSE(list.empty());
    bool d4 = false;
    for (const auto& e : list) {
        INFO(e.spec.name() << " dim " << e.dim << " " << e.string);
        CHECK(data::string_table(e.spec, e.dim));
        if (e.spec == RootSystemSpec{Family::D, 4} && e.dim == 6 && e.add && e.string == "AAIALLLSSSII") d4 = true;
    }
    CHECK(d4);
}
