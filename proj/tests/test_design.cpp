// Verifier behavior on the shipped order-2 families, the order-8 expansion
// checked against an independently transcribed symbolic display, and the
// boundary cases of the classification and bound helpers.
#include <catch2/catch_amalgamated.hpp>

#include "ostbc/ostbc.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace ostbc;

namespace {

// Sign/index cell tables transcribed independently from the published
// order-8 symbolic display: "+4" means the cell holds +1 in coefficient
// matrix 4 and 0 in the others. This is the oracle the construction
// output must reproduce digit for digit.
const char* kOrder8A =
    "+4 +4 +1 -1 +2 -2 +3 -3/"
    "+4 -4 +1 +1 +2 +2 +3 +3/"
    "-1 +1 +4 +4 +3 -3 -2 +2/"
    "-1 -1 +4 -4 +3 +3 -2 -2/"
    "-2 +2 -3 +3 +4 +4 +1 -1/"
    "-2 -2 -3 -3 +4 -4 +1 +1/"
    "-3 +3 +2 -2 -1 +1 +4 +4/"
    "-3 -3 +2 +2 -1 -1 +4 -4";

const char* kOrder8B =
    "-4 -4 +1 -1 +2 -2 +3 -3/"
    "+4 -4 -1 -1 -2 -2 -3 -3/"
    "-1 +1 -4 -4 -3 +3 +2 -2/"
    "+1 +1 +4 -4 +3 +3 -2 -2/"
    "-2 +2 +3 -3 -4 -4 -1 +1/"
    "+2 +2 -3 -3 +4 -4 +1 +1/"
    "-3 +3 -2 +2 +1 -1 -4 -4/"
    "+3 +3 +2 +2 -1 -1 +4 -4";

struct Cell {
    int index;  // 1-based coefficient matrix index
    int sign;
};

std::vector<std::vector<Cell>> parse_display(const char* table) {
    std::vector<std::vector<Cell>> rows;
    std::stringstream ss(table);
    std::string row;
    while (std::getline(ss, row, '/')) {
        std::vector<Cell> cells;
        std::stringstream rs(row);
        std::string tok;
        while (rs >> tok) {
            REQUIRE(tok.size() == 2);
            cells.push_back({tok[1] - '0', tok[0] == '+' ? 1 : -1});
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

// Each display cell pins one matrix entry to +-1 and every other matrix in
// the list to 0 at that position.
void require_matches_display(const std::vector<ExactMatrix>& mats, const char* table) {
    auto rows = parse_display(table);
    REQUIRE(rows.size() == 8);
    for (std::size_t r = 0; r < 8; ++r) {
        REQUIRE(rows[r].size() == 8);
        for (std::size_t c = 0; c < 8; ++c) {
            const Cell cell = rows[r][c];
            for (std::size_t m = 0; m < mats.size(); ++m) {
                const ExactScalar want = int(m) == cell.index - 1
                                             ? ExactScalar(cell.sign)
                                             : ExactScalar::zero();
                INFO("row " << r << " col " << c << " matrix " << m + 1);
                REQUIRE(mats[m].at(r, c) == want);
            }
        }
    }
}

DispersionFamily trivial_family() {
    DispersionFamily fam;
    fam.order = 1;
    fam.a_mats = {ExactMatrix::from_ints({{1}})};
    fam.b_mats = {ExactMatrix::from_ints({{1}})};
    fam.complex_entries = false;
    fam.label = "trivial";
    return fam;
}

bool has_condition(const VerifyReport& rep, const std::string& cond) {
    for (const Violation& v : rep.violations)
        if (v.condition == cond) return true;
    return false;
}

bool only_condition(const VerifyReport& rep, const std::string& cond) {
    if (rep.violations.empty()) return false;
    for (const Violation& v : rep.violations)
        if (v.condition != cond) return false;
    return true;
}

}  // namespace

TEST_CASE("catalog order-2 families are amicable but not disjoint", "[design]") {
    for (const std::string name : {"af2-ex1", "af2-ex2-complex", "aod2-ex3"}) {
        INFO("family " << name);
        DispersionFamily fam = seed_family(name);
        REQUIRE(fam.order == 2);
        REQUIRE(fam.s() == 2);
        REQUIRE(fam.t() == 2);
        CHECK(verify_af(fam).passed);

        VerifyReport aod = verify_aod(fam);
        CHECK_FALSE(aod.passed);
        // The only defect is entry overlap; every orthogonality condition holds.
        CHECK(only_condition(aod, "4-0"));
        CHECK(classify(fam) == Classification::AF);

        TypeVector tv = gram_types(fam);
        REQUIRE(tv.f == std::vector<Rational>{Rational(2), Rational(2)});
        REQUIRE(tv.g == std::vector<Rational>{Rational(2), Rational(2)});
        CHECK(tv.constant());
        CHECK(tv.sum() == Rational(8));
    }
    CHECK_FALSE(seed_family("af2-ex1").complex_entries);
    CHECK(seed_family("af2-ex2-complex").complex_entries);
    CHECK_FALSE(seed_family("aod2-ex3").complex_entries);
}

TEST_CASE("order-8 expansion reproduces the transcribed symbolic display", "[design]") {
    DispersionFamily fam = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    REQUIRE(fam.order == 8);
    REQUIRE(fam.s() == 4);
    REQUIRE(fam.t() == 4);
    require_matches_display(fam.a_mats, kOrder8A);
    require_matches_display(fam.b_mats, kOrder8B);
}

TEST_CASE("order-8 expansion is a disjoint design of constant type 2", "[design]") {
    DispersionFamily fam = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    REQUIRE(verify_aod(fam).passed);
    CHECK(classify(fam) == Classification::AOD);
    TypeVector tv = gram_types(fam);
    for (const Rational& f : tv.f) CHECK(f == Rational(2));
    for (const Rational& g : tv.g) CHECK(g == Rational(2));
    CHECK(fam.variables() == max_variables_bound(fam.order));
}

TEST_CASE("disjoint verification implies amicable verification", "[design]") {
    // Chain through doubling expansions; every stage that passes the strict
    // check must also pass the relaxed one.
    DispersionFamily fam = trivial_family();
    for (int step = 0; step < 5; ++step) {
        fam = construct2(fam);
        REQUIRE(verify_aod(fam).passed);
        REQUIRE(verify_af(fam).passed);
    }
}

TEST_CASE("amicable verification rejects targeted defects", "[design]") {
    DispersionFamily good = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    REQUIRE(verify_af(good).passed);

    SECTION("a corrupted entry breaks the scalar Gram condition") {
        DispersionFamily bad = good;
        // Zeroing one +-1 entry leaves column norms unequal.
        bool zeroed = false;
        for (std::size_t r = 0; r < 8 && !zeroed; ++r)
            if (!bad.a_mats[0].at(r, 0).is_zero()) {
                bad.a_mats[0].at(r, 0) = ExactScalar::zero();
                zeroed = true;
            }
        REQUIRE(zeroed);
        VerifyReport rep = verify_af(bad);
        CHECK_FALSE(rep.passed);
        CHECK(has_condition(rep, "4i"));
    }

    SECTION("duplicating a coefficient matrix breaks anti-commutation") {
        DispersionFamily bad = good;
        bad.a_mats[1] = bad.a_mats[0];
        VerifyReport rep = verify_af(bad);
        CHECK_FALSE(rep.passed);
        CHECK(has_condition(rep, "4ii"));
    }

    SECTION("copying an a-side matrix into the b-side breaks amicability") {
        DispersionFamily bad = good;
        bad.b_mats[0] = bad.a_mats[1];
        VerifyReport rep = verify_af(bad);
        CHECK_FALSE(rep.passed);
        CHECK(has_condition(rep, "4iii"));
    }

    SECTION("two identity matrices on one side fail anti-commutation") {
        DispersionFamily bad;
        bad.order = 2;
        bad.a_mats = {ExactMatrix::identity(2), ExactMatrix::identity(2)};
        bad.b_mats = {ExactMatrix::from_ints({{0, 1}, {1, 0}})};
        VerifyReport rep = verify_af(bad);
        CHECK_FALSE(rep.passed);
        CHECK(has_condition(rep, "4ii"));
        CHECK(classify(bad) == Classification::Invalid);
    }
}

TEST_CASE("strict verification enforces the restricted entry alphabet", "[design]") {
    // A scaled family keeps every orthogonality property (types just grow)
    // but its entries leave {0, +-1}, so only the relaxed check passes.
    DispersionFamily fam = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    DispersionFamily scaled = fam;
    scaled.a_mats[0] = scaled.a_mats[0].scaled(ExactScalar(2));
    CHECK(verify_af(scaled).passed);
    VerifyReport rep = verify_aod(scaled);
    CHECK_FALSE(rep.passed);
    CHECK(has_condition(rep, "alphabet"));

    // Complex entries are admitted when the family is flagged complex.
    DispersionFamily cplx = seed_family("af2-ex2-complex");
    VerifyReport crep = verify_aod(cplx);
    CHECK_FALSE(has_condition(crep, "alphabet"));

    // The same entries in a family claiming real entries are rejected.
    DispersionFamily lying = cplx;
    lying.complex_entries = false;
    CHECK(has_condition(verify_aod(lying), "alphabet"));
}

TEST_CASE("type extraction requires scalar Grams and positive weights", "[design]") {
    SECTION("the trivial order-1 family has type (1;1)") {
        TypeVector tv = gram_types(trivial_family());
        REQUIRE(tv.f == std::vector<Rational>{Rational(1)});
        REQUIRE(tv.g == std::vector<Rational>{Rational(1)});
        CHECK(tv.sum() == Rational(2));
    }

    SECTION("a non-scalar Gram raises an error naming the offending slot") {
        DispersionFamily bad;
        bad.order = 2;
        bad.a_mats = {ExactMatrix::from_ints({{1, 1}, {0, 1}})};
        bad.b_mats = {ExactMatrix::identity(2)};
        REQUIRE_THROWS_MATCHES(gram_types(bad), std::domain_error,
                               Catch::Matchers::MessageMatches(
                                   Catch::Matchers::ContainsSubstring("A[1]")));
    }

    SECTION("every family passing the relaxed check yields positive types") {
        for (const std::string name : {"af2-ex1", "af2-ex2-complex", "aod2-ex3"}) {
            DispersionFamily fam = seed_family(name);
            REQUIRE(verify_af(fam).passed);
            TypeVector tv = gram_types(fam);
            for (const Rational& f : tv.f) CHECK(Rational(0) < f);
            for (const Rational& g : tv.g) CHECK(Rational(0) < g);
        }
    }
}

TEST_CASE("formal-design amicability helper agrees with the pair check", "[design]") {
    DispersionFamily fam = seed_family("af2-ex1");
    CHECK(check_amicable(a_design(fam), b_design(fam)));

    // Crossing the a-side with itself is not amicable: anti-commutation of
    // distinct matrices contradicts the symmetric product condition.
    CHECK_FALSE(check_amicable(a_design(fam), a_design(fam)));

    SymbolicDesign other{4, {ExactMatrix::identity(4)}};
    REQUIRE_THROWS_AS(check_amicable(a_design(fam), other), std::invalid_argument);
}

TEST_CASE("variable-count bound follows the dyadic part of the order", "[design]") {
    CHECK(max_variables_bound(1) == 2);
    CHECK(max_variables_bound(2) == 4);
    CHECK(max_variables_bound(4) == 6);
    CHECK(max_variables_bound(8) == 8);
    CHECK(max_variables_bound(12) == 6);   // 12 = 4 * 3, odd part ignored
    CHECK(max_variables_bound(16) == 10);
    CHECK(max_variables_bound(32) == 12);
    CHECK(max_variables_bound(3) == 2);
    REQUIRE_THROWS_AS(max_variables_bound(0), std::invalid_argument);

    for (const std::string name : {"af2-ex1", "af2-ex2-complex", "aod2-ex3"})
        CHECK(seed_family(name).variables() <= max_variables_bound(2));
}

TEST_CASE("raw dispersion lists verify with a uniform Gram scale", "[design]") {
    DispersionFamily fam = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    VerifyReport rep = verify_linear_dispersion(fam.a_mats, fam.b_mats);
    REQUIRE(rep.passed);
    REQUIRE(rep.gram_scale.has_value());
    CHECK(*rep.gram_scale == Quad(Rational(2)));

    SECTION("mixed Gram scales are rejected") {
        std::vector<ExactMatrix> a = {ExactMatrix::identity(2)};
        std::vector<ExactMatrix> b = {ExactMatrix::from_ints({{2, 0}, {0, 2}})};
        VerifyReport bad = verify_linear_dispersion(a, b);
        CHECK_FALSE(bad.passed);
        CHECK(has_condition(bad, "2i"));
    }
}
