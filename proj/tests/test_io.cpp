// Serialization: bit-exact document round-trips, strict rejection of
// malformed documents, and the delimited report contracts.
#include <catch2/catch_amalgamated.hpp>

#include "ostbc/ostbc.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ostbc;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() /
              ("ostbc-io-" + std::to_string(::getpid()) + "-" +
               std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("families round-trip through their document form", "[io]") {
    for (const std::string name : {"af2-ex1", "af2-ex2-complex", "aod2-ex3"}) {
        INFO("family " << name);
        DispersionFamily fam = seed_family(name);
        DispersionFamily back = family_from_json(family_to_json(fam));
        CHECK(back.order == fam.order);
        CHECK(back.a_mats == fam.a_mats);
        CHECK(back.b_mats == fam.b_mats);
        CHECK(back.complex_entries == fam.complex_entries);
        CHECK(back.label == fam.label);
        CHECK_FALSE(back.provenance.has_value());
    }

    // Constructed families carry provenance through the document.
    DispersionFamily built = construct1(seed_family("af2-ex1"), seed_mn("mn-eq6"));
    DispersionFamily back = family_from_json(family_to_json(built));
    REQUIRE(back.provenance.has_value());
    CHECK(*back.provenance == *built.provenance);
    CHECK(back.a_mats == built.a_mats);
    CHECK(back.b_mats == built.b_mats);
}

TEST_CASE("codes round-trip through their document form", "[io]") {
    for (const std::string& name : fixture_names()) {
        INFO("fixture " << name);
        SymbolicCode code = fixture(name);
        SymbolicCode back = code_from_json(code_to_json(code));
        CHECK(back.p == code.p);
        CHECK(back.nt == code.nt);
        CHECK(back.k == code.k);
        CHECK(back.label == code.label);
        CHECK(back.grid == code.grid);
    }

    // Irrational coefficients survive: the rotated template reuses sqrt2/2.
    SymbolicCode rot = rotate_symbol(fixture("G4"), 1, 1);
    CHECK(code_from_json(code_to_json(rot)).grid == rot.grid);
}

TEST_CASE("transforms and expansion seeds round-trip", "[io]") {
    MonomialTransform tr = appendix_transform();
    MonomialTransform tback = transform_from_json(transform_to_json(tr));
    CHECK(tback.left == tr.left);
    CHECK(tback.right == tr.right);

    MonomialTransform rnd = random_monomial_transform(8, 4711);
    MonomialTransform rback = transform_from_json(transform_to_json(rnd));
    CHECK(rback.left == rnd.left);
    CHECK(rback.right == rnd.right);

    for (const std::string name : {"mn-eq6", "mn-eq16"}) {
        MnSeed seed = seed_mn(name);
        MnSeed back = mn_seed_from_json(mn_seed_to_json(seed));
        CHECK(back.label == seed.label);
        CHECK(back.m_mats == seed.m_mats);
        CHECK(back.n_mats == seed.n_mats);
    }
}

TEST_CASE("saving a loaded document is byte-identical", "[io]") {
    TempDir tmp;

    SECTION("family") {
        save_family(construct2(seed_family("aod2-ex3")), tmp.path("a.json"));
        save_family(load_family(tmp.path("a.json")), tmp.path("b.json"));
        CHECK(slurp(tmp.path("a.json")) == slurp(tmp.path("b.json")));
    }
    SECTION("code") {
        save_code(fixture("TS"), tmp.path("a.json"));
        save_code(load_code(tmp.path("a.json")), tmp.path("b.json"));
        CHECK(slurp(tmp.path("a.json")) == slurp(tmp.path("b.json")));
    }
    SECTION("transform") {
        save_transform(appendix_transform(), tmp.path("a.json"));
        save_transform(load_transform(tmp.path("a.json")), tmp.path("b.json"));
        CHECK(slurp(tmp.path("a.json")) == slurp(tmp.path("b.json")));
    }
    SECTION("expansion seed") {
        save_mn_seed(seed_mn("mn-eq16"), tmp.path("a.json"));
        save_mn_seed(load_mn_seed(tmp.path("a.json")), tmp.path("b.json"));
        CHECK(slurp(tmp.path("a.json")) == slurp(tmp.path("b.json")));
    }
}

TEST_CASE("a reloaded code verifies identically to the in-memory one", "[io]") {
    TempDir tmp;
    for (const std::string& name : fixture_names()) {
        INFO("fixture " << name);
        SymbolicCode code = fixture(name);
        save_code(code, tmp.path(name + ".json"));
        SymbolicCode loaded = load_code(tmp.path(name + ".json"));
        CHECK(verify_report_text(verify_ostbc(loaded)) ==
              verify_report_text(verify_ostbc(code)));
    }
}

TEST_CASE("missing paths raise the path error category", "[io]") {
    REQUIRE_THROWS_AS(load_family("/nonexistent/dir/fam.json"), BadPathError);
    REQUIRE_THROWS_AS(load_code("/nonexistent/dir/code.json"), BadPathError);
    REQUIRE_THROWS_AS(save_code(fixture("G4"), "/nonexistent/dir/out.json"), BadPathError);
}

TEST_CASE("malformed documents raise the format error category", "[io]") {
    REQUIRE_THROWS_AS(detail::parse_document("not json at all", "doc"), MalformedFileError);
    REQUIRE_THROWS_AS(detail::parse_document("[1, 2", "doc"), MalformedFileError);

    SECTION("family documents") {
        Json good = family_to_json(seed_family("af2-ex1"));

        Json bad = good;
        bad.erase("order");
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        bad["order"] = 0;
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        bad["a_mats"][0].erase(0);  // non-square matrix
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        bad["a_mats"][0][0].erase(0);  // ragged row
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        bad["a_mats"] = Json::array();
        bad["b_mats"] = Json::array();
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        // Complex entries contradicting the declared real alphabet.
        Json cplx = family_to_json(seed_family("af2-ex2-complex"));
        cplx["complex"] = false;
        REQUIRE_THROWS_AS(family_from_json(cplx), MalformedFileError);
    }

    SECTION("scalar encoding") {
        Json good = family_to_json(seed_family("af2-ex1"));

        Json bad = good;
        bad["a_mats"][0][0][0] = Json::array({1, 2, 3});  // wrong arity
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        // Reducible encoding: every component even with a positive exponent.
        bad["a_mats"][0][0][0] = Json::array({2, 0, 0, 0, 1});
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);

        bad = good;
        bad["a_mats"][0][0][0] = Json::array({0, 0, 0, 0, 1});  // nonzero exponent on zero
        REQUIRE_THROWS_AS(family_from_json(bad), MalformedFileError);
    }

    SECTION("code documents") {
        Json good = code_to_json(fixture("G4"));

        Json bad = good;
        bad["grid"].erase(0);  // row count disagrees with p
        REQUIRE_THROWS_AS(code_from_json(bad), MalformedFileError);

        bad = good;
        bad["grid"][0][0][0][0] = 0;  // symbols are 1-based
        REQUIRE_THROWS_AS(code_from_json(bad), MalformedFileError);

        bad = good;
        bad["grid"][0][0][0][0] = 5;  // beyond k = 3
        REQUIRE_THROWS_AS(code_from_json(bad), MalformedFileError);

        bad = good;
        bad["grid"][0][0][0][1] = "X";  // parts are R or I
        REQUIRE_THROWS_AS(code_from_json(bad), MalformedFileError);

        bad = good;
        bad["grid"][0][0][0] = Json::array({1, "R"});  // term needs 3 fields
        REQUIRE_THROWS_AS(code_from_json(bad), MalformedFileError);
    }

    SECTION("transform documents") {
        Json good = transform_to_json(appendix_transform());

        Json bad = good;
        bad["left"][0][1] = 3;  // signs are +-1
        REQUIRE_THROWS_AS(transform_from_json(bad), MalformedFileError);

        bad = good;
        bad["left"][1][0] = bad["left"][0][0];  // duplicated target column
        REQUIRE_THROWS_AS(transform_from_json(bad), MalformedFileError);

        bad = good;
        bad["left"][0] = Json::array({0});  // row needs [column, sign]
        REQUIRE_THROWS_AS(transform_from_json(bad), MalformedFileError);
    }

    SECTION("expansion-seed documents") {
        Json good = mn_seed_to_json(seed_mn("mn-eq6"));

        Json bad = good;
        bad["m_mats"].erase(2);  // exactly three per side
        REQUIRE_THROWS_AS(mn_seed_from_json(bad), MalformedFileError);

        bad = good;
        bad["m_mats"][0] = Json::array({Json::array({Json::array({1, 0, 0, 0, 0})})});
        REQUIRE_THROWS_AS(mn_seed_from_json(bad), MalformedFileError);
    }
}

TEST_CASE("non-monomial transforms cannot be serialized", "[io]") {
    MonomialTransform tr = appendix_transform();
    tr.left.at(0, 1) = ExactScalar::one();  // second entry in row 0
    REQUIRE_THROWS_AS(transform_to_json(tr), std::invalid_argument);
}

TEST_CASE("delimited metrics report follows the frozen column contract", "[io]") {
    CHECK(metrics_delimited_header() ==
          "code,constellation-spec,peak_ave,ave_min,p_o,type_sum,guideline1,guideline2,"
          "paper_peak_ave,paper_ave_min,paper_p_o,match-flag");

    auto rows = lines(metrics_delimited(table_report(1)));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == metrics_delimited_header());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        INFO("line " << i << ": " << rows[i]);
        CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 11);
    }
    CHECK(rows[1] == "TH,qpsk+qpsk+qpsk+qpsk,2,inf,0.5,8,yes,no,2,inf,0.5,yes");
    CHECK(rows[2].substr(0, 3) == "TS,");
    CHECK(rows[2].substr(rows[2].size() - 3) == ",no");
    CHECK(rows[3] == "G8,qpsk+qpsk+qpsk+qpsk,1,1,0,16,yes,yes,1,1,0,yes");

    auto t2 = lines(metrics_delimited(table_report(2)));
    REQUIRE(t2.size() == 6);
    // Reference rows carry NA computations and the reference-only flag.
    CHECK(t2[3] ==
          "PB-GS#1,,NA,NA,NA,NA,NA,NA,3,3,0,reference-only");
    CHECK(t2[5].substr(0, 3) == "G4,");
    CHECK(t2[5].find("qpsk+qpsk@45+qpsk") != std::string::npos);
    CHECK(t2[5].substr(t2[5].size() - 4) == ",yes");
}

TEST_CASE("single-code delimited metrics pad the published columns", "[io]") {
    SymbolicCode code = fixture("G8");
    PowerReport rep = power_report(code, std::vector<Constellation>(4, make_qpsk()));
    auto rows = lines(metrics_delimited_single("G8", "qpsk+qpsk+qpsk+qpsk", rep));
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == metrics_delimited_header());
    CHECK(rows[1] == "G8,qpsk+qpsk+qpsk+qpsk,1,1,0,16,yes,yes,NA,NA,NA,NA");
}

TEST_CASE("delimited error-rate report carries one row per grid point", "[io]") {
    SimConfig cfg;
    cfg.constellations = {make_qpsk()};
    cfg.snr_db = {6.0, 10.0};
    cfg.trials = 500;
    cfg.seed = 12;
    BerResult res = run_ber(fixture("G4"), cfg);
    auto rows = lines(ber_delimited(res));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "snr_db,trials,bit_errors,ber,std_err,code,seed");
    CHECK(rows[1].substr(0, 2) == "6,");
    CHECK(rows[1].find(",G4,12") != std::string::npos);
    CHECK(rows[2].substr(0, 3) == "10,");
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::count(rows[i].begin(), rows[i].end(), ',') == 6);
}

TEST_CASE("number formatting in delimited output is stable", "[io]") {
    CHECK(fmt_double(2.0) == "2");
    CHECK(fmt_double(0.5) == "0.5");
    CHECK(fmt_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(fmt_double(0.0) == "0");
    CHECK(fmt_double(4.0 / 3.0).substr(0, 5) == "1.333");
}

TEST_CASE("human-readable reports name their subject", "[io]") {
    CHECK(verify_report_text(verify_ostbc(fixture("G8"))).find("pass") == 0);

    DispersionFamily bad = seed_family("af2-ex1");
    std::string text = verify_report_text(verify_aod(bad));
    CHECK(text.find("fail") == 0);
    CHECK(text.find("4-0") != std::string::npos);

    CHECK(family_text(seed_family("af2-ex1")).find("af2-ex1") != std::string::npos);
    CHECK(code_text(fixture("G4")).find("G4") != std::string::npos);
    CHECK(mn_seed_text(seed_mn("mn-eq6")).find("mn-eq6") != std::string::npos);
    CHECK(block_pattern_text(extract_blocks(fixture("G8"))).find("Q8") !=
          std::string::npos);

    std::string table = table_text(table_report(1));
    for (const char* name : {"TH", "TS", "G8"}) CHECK(table.find(name) != std::string::npos);

    std::string bertext = ber_text(run_ber(fixture("G4"), [] {
        SimConfig cfg;
        cfg.constellations = {make_qpsk()};
        cfg.snr_db = {6.0};
        cfg.trials = 200;
        cfg.seed = 1;
        return cfg;
    }()));
    CHECK(bertext.find("G4") != std::string::npos);
}
