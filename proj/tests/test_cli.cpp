#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cst/cli.hpp"
#include "cst/dgnf.hpp"
#include "cst/encode.hpp"
#include "cst/grammar.hpp"
#include "cst/json_io.hpp"
#include "cst/quotient.hpp"

using namespace cst;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int rc = 0;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc = run_command(args, out, err);
    return {rc, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "cstool-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// external tuple form of an internal symbol name
nlohmann::json tuple_of(const std::string& name) {
    auto s = parse_omega_n(name);
    REQUIRE(s.has_value());
    std::string pol = s->kind == OmegaN::Kind::Open    ? "["
                      : s->kind == OmegaN::Kind::Close ? "]"
                                                       : "-";
    if (s->bold) pol += pol;
    return nlohmann::json::array(
        {pol, std::string(1, s->x), std::string(1, s->y), bigint_to_string(s->digit)});
}

} // namespace

TEST_CASE("generated family grammar round-trips through the text form") {
    RunResult r = run({"gen", "gruska", "-m", "1"});
    REQUIRE(r.rc == 0);
    Grammar g = parse_grammar(r.out);
    CHECK(enumerate_language(g, 8) == enumerate_language(gen_gruska(1), 8));
}

TEST_CASE("normal forms from the command line") {
    Grammar src = parse_grammar(slurp(fixture("anbn.cfg")));

    RunResult cnf = run({"normalize", "--form", "cnf", fixture("anbn.cfg")});
    REQUIRE(cnf.rc == 0);
    Grammar gc = parse_grammar(cnf.out);
    CHECK(is_cnf(gc));
    CHECK(enumerate_language(gc, 10) == enumerate_language(src, 10));

    RunResult dg = run({"normalize", "--form", "dgnf", fixture("anbn.cfg")});
    REQUIRE(dg.rc == 0);
    Grammar gd = parse_grammar(dg.out);
    CHECK(is_cubic_dgnf(gd));
    CHECK(enumerate_language(gd, 10) == enumerate_language(src, 10));

    RunResult q = run({"normalize", "--form", "qdgnf", "--order", "2", fixture("anbn.cfg")});
    REQUIRE(q.rc == 0);
    Grammar gq = parse_grammar(q.out);
    CHECK(is_q_dgnf(gq, 2));
    CHECK(enumerate_language(gq, 8) == enumerate_language(src, 8));
}

TEST_CASE("build then verify round-trip through files") {
    fs::path json = temp_file("anbn.json");
    RunResult b = run({"cst", "build", fixture("anbn.cfg"), "-o", json.string()});
    REQUIRE(b.rc == 0);
    CHECK(b.out.rfind("wrote ", 0) == 0);

    RunResult ok = run({"cst", "verify", "--maxlen", "10", fixture("anbn.cfg"), json.string()});
    CHECK(ok.rc == 0);
    auto rep = nlohmann::json::parse(ok.out);
    CHECK(rep.at("equal") == true);
    CHECK(rep.at("maxlen") == 10);
    CHECK(rep.at("lhsCount") == rep.at("rhsCount"));

    // the same decomposition against a different language must mismatch
    RunResult bad = run({"cst", "verify", "--maxlen", "8", fixture("wwr.cfg"), json.string()});
    CHECK(bad.rc == 1);
    auto brep = nlohmann::json::parse(bad.out);
    CHECK(brep.at("equal") == false);
    CHECK(!brep.at("witnesses").empty());
}

TEST_CASE("rebuilds are byte-identical and the variant embeds its window sets") {
    fs::path a = temp_file("det-a.json"), b = temp_file("det-b.json");
    REQUIRE(run({"cst", "build", fixture("ex2.cfg"), "-o", a.string()}).rc == 0);
    REQUIRE(run({"cst", "build", fixture("ex2.cfg"), "-o", b.string()}).rc == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(nlohmann::json::parse(slurp(a)).at("T").contains("slt") == false);

    fs::path v = temp_file("det-slt.json");
    REQUIRE(run({"cst", "build", "--slt", fixture("ex2.cfg"), "-o", v.string()}).rc == 0);
    auto doc = nlohmann::json::parse(slurp(v));
    CHECK(doc.at("T").contains("slt"));
    CHECK(doc.at("stats").at("sltVariant") == true);
}

TEST_CASE("serialized decompositions reload into working ones") {
    Grammar g = parse_grammar(slurp(fixture("anbn.cfg")));
    CstDecomposition d0 = build_cst(g, "minimal", false);
    std::string text = cst_to_json(d0);
    CstDecomposition d1 = cst_from_json(text);
    CHECK(cst_to_json(d1) == text); // serialization is idempotent
    VerificationReport rep = verify_cst(g, d1, 9);
    CAPTURE(rep.witnesses);
    CHECK(rep.equal);
}

TEST_CASE("word mapping projects tuples and tests membership") {
    fs::path json = temp_file("map.json");
    REQUIRE(run({"cst", "build", fixture("anbn.cfg"), "-o", json.string()}).rc == 0);
    CstDecomposition d = cst_from_json(slurp(json));

    auto words = enumerate_language(dyck_t_product(d, 6), 6);
    REQUIRE(!words.empty());
    std::vector<std::string> word = split_word(*words.begin());

    nlohmann::json arr = nlohmann::json::array();
    std::string expect_image;
    for (const auto& name : word) {
        arr.push_back(tuple_of(name));
        expect_image += d.rho.at(name);
    }
    RunResult r = run({"cst", "map-word", json.string(), arr.dump()});
    REQUIRE(r.rc == 0);
    CHECK(r.out == expect_image + "\nin D∩T: true\n");

    // a lone open bracket cannot balance
    nlohmann::json lone = nlohmann::json::array({arr.at(0)});
    RunResult miss = run({"cst", "map-word", json.string(), lone.dump()});
    REQUIRE(miss.rc == 0);
    CHECK(miss.out.find("in D∩T: false") != std::string::npos);
}

TEST_CASE("erasing and linear builds write their reports") {
    fs::path sj = temp_file("stanley.json");
    RunResult s = run({"stanley", "build", fixture("anbn.cfg"), "-o", sj.string()});
    REQUIRE(s.rc == 0);
    auto sdoc = nlohmann::json::parse(slurp(sj));
    CHECK(sdoc.at("schemaVersion") == 1);
    CHECK(sdoc.at("mode") == "stanley-binary");
    CHECK(sdoc.at("T").contains("nfa"));
    CHECK(sdoc.at("T").contains("slt"));

    fs::path su = temp_file("stanley-unary.json");
    RunResult s2 = run({"stanley", "build", "--code", "unary", fixture("anbn.cfg"), "-o", su.string()});
    REQUIRE(s2.rc == 0);
    CHECK(nlohmann::json::parse(slurp(su)).at("mode") == "stanley-unary");

    fs::path lj = temp_file("linear.json");
    RunResult l = run({"linear", "build", fixture("anbn.cfg"), "-o", lj.string()});
    REQUIRE(l.rc == 0);
    auto ldoc = nlohmann::json::parse(slurp(lj));
    CHECK(ldoc.at("mode") == "linear");
    CHECK(ldoc.at("stats").at("providerNote").get<std::string>().find("NOT reproduced") !=
          std::string::npos);
}

TEST_CASE("metrics reports the alphabet-state trade-off") {
    RunResult gen = run({"gen", "gruska", "-m", "2"});
    REQUIRE(gen.rc == 0);
    fs::path gf = temp_file("gruska2.cfg");
    std::ofstream(gf) << gen.out;

    RunResult m = run({"metrics", gf.string()});
    REQUIRE(m.rc == 0);
    auto doc = nlohmann::json::parse(m.out);
    CHECK(doc.at("tradeoff").at("holds") == true);
    CHECK(!doc.at("tradeoff").at("caveat").get<std::string>().empty());
    CHECK(doc.at("params").contains("m"));
    CHECK(doc.at("params").contains("j"));
    CHECK(doc.at("grammar").at("nts").get<int>() >= 2);
    CHECK(doc.at("tNfa").at("states").get<int>() > 0);
}

TEST_CASE("usage and input errors exit with code two") {
    CHECK(run({}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);
    CHECK(run({"normalize", "--form", "weird", fixture("anbn.cfg")}).rc == 2);
    CHECK(run({"cst", "build", "/nonexistent.cfg", "-o", "/tmp/x.json"}).rc == 2);
    CHECK(run({"cst", "verify", "--maxlen", "5", fixture("anbn.cfg"), "/nonexistent.json"}).rc == 2);
    CHECK(run({"gen", "gruska"}).rc == 2); // -m is required

    // help is not an error
    CHECK(run({"--help"}).rc == 0);
    CHECK(run({"cst", "--help"}).rc == 0);
}
