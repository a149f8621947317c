#include <catch2/catch_amalgamated.hpp>

#include "tannaka/bundle.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace tannaka;

namespace {

const std::string kFixtures = TANNAKA_FIXTURE_DIR;
const std::string kCli = TANNAKA_CLI_PATH;

json load(const std::string& name) {
    std::ifstream in(kFixtures + "/" + name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

int run_cli(const std::string& args) {
    std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string run_cli_capture(const std::string& args) {
    std::string tmp = "/tmp/tannaka_cli_out.txt";
    std::string cmd = kCli + " " + args + " > " + tmp + " 2>&1";
    std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("parse_bundle on the shipped fixtures") {
    for (const char* name : {"trivial.json", "z2.json", "z3.json", "groupoid_qq.json",
                             "site_nilpotent.json", "site_nonsplit.json"}) {
        Bundle b = parse_bundle(kFixtures + "/" + name);
        REQUIRE(b.category);
        REQUIRE(validate_category(*b.category).passed());
    }
}

TEST_CASE("minimal bundle parses") {
    json j = load("trivial.json");
    j.erase("functors");
    j.erase("frobenius");
    Bundle b = parse_bundle_json(j);
    REQUIRE(b.functors.empty());
    REQUIRE(!b.frobenius);
}

TEST_CASE("strict parsing") {
    SECTION("unknown top-level field") {
        json j = load("trivial.json");
        j["surprise"] = 1;
        REQUIRE_THROWS_AS(parse_bundle_json(j), BundleError);
    }
    SECTION("undeclared object in a hom table carries the field path") {
        json j = load("trivial.json");
        j["category"]["hom"].push_back({{"from", "ghost"}, {"to", "I0"}, {"dim", 1}});
        try {
            parse_bundle_json(j);
            FAIL("expected BundleError");
        } catch (const BundleError& e) {
            REQUIRE(std::string(e.what()).find("ghost") != std::string::npos);
        }
    }
    SECTION("nonprime modulus is rejected") {
        json j = load("trivial.json");
        j["field"] = {{"kind", "prime"}, {"p", 6}};
        REQUIRE_THROWS_AS(parse_bundle_json(j), BundleError);
    }
    SECTION("bad matrix shape is rejected") {
        json j = load("trivial.json");
        j["functors"][0]["f0"] = json::array({json::array({"1", "2"})});
        REQUIRE_THROWS_AS(parse_bundle_json(j), BundleError);
    }
}

TEST_CASE("serialization round trip is stable") {
    Bundle b = parse_bundle(kFixtures + "/z2.json");
    json once;
    once["field"] = dump_field(b.field);
    once["category"] = dump_category(*b.category);
    once["functors"] = json::array();
    for (const auto& [name, f] : b.functors) once["functors"].push_back(dump_functor(name, f));
    Bundle b2 = parse_bundle_json(once);
    json twice;
    twice["field"] = dump_field(b2.field);
    twice["category"] = dump_category(*b2.category);
    twice["functors"] = json::array();
    for (const auto& [name, f] : b2.functors) twice["functors"].push_back(dump_functor(name, f));
    REQUIRE(once.dump() == twice.dump());
}

TEST_CASE("bialgebroid and catalog sections survive a round trip") {
    Bundle b = parse_bundle(kFixtures + "/groupoid_qq.json");
    REQUIRE(b.bialgebroid);
    REQUIRE(validate_right_bialgebroid(*b.bialgebroid).passed());
    REQUIRE(b.catalog);
    REQUIRE(validate_catalog(*b.catalog).passed());
    json d1 = dump_bialgebroid(*b.bialgebroid);
    std::optional<Antipode> none;
    Bialgebroid h2 = parse_bialgebroid(d1, b.field, "bialgebroid", none);
    REQUIRE(dump_bialgebroid(h2).dump() == d1.dump());
}

TEST_CASE("cli exit codes") {
    REQUIRE(run_cli("validate " + kFixtures + "/trivial.json") == 0);
    REQUIRE(run_cli("validate " + kFixtures + "/mutants/z2_interchange.json") == 1);
    REQUIRE(run_cli("validate " + kFixtures + "/mutants/z2_bialgebroid.json") == 1);
    REQUIRE(run_cli("antipode " + kFixtures + "/mutants/z3_antipode.json") == 1);
    REQUIRE(run_cli("site " + kFixtures + "/z2.json --max-generators 2") == 0);
    REQUIRE(run_cli("validate /nonexistent.json") == 2);
    REQUIRE(run_cli("frobnicate " + kFixtures + "/trivial.json") == 2);
    REQUIRE(run_cli("roundtrip " + kFixtures + "/trivial.json") == 0);
    REQUIRE(run_cli("roundtrip " + kFixtures + "/z3.json") == 2); // no catalog section
}

TEST_CASE("cli reports are deterministic") {
    std::string a = run_cli_capture("galois " + kFixtures + "/z2.json --functor F --seed 3");
    std::string b = run_cli_capture("galois " + kFixtures + "/z2.json --functor F --seed 3");
    REQUIRE(a == b);
    REQUIRE(!a.empty());
}

TEST_CASE("TANNAKA_SEED overrides --seed") {
    std::string tmp = "/tmp/tannaka_seed_out.txt";
    std::string cmd = "TANNAKA_SEED=9 " + kCli + " validate " + kFixtures + "/z2.json > " + tmp + " 2>&1";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}

TEST_CASE("reconstruct emits a parseable bundle") {
    std::string out = "/tmp/tannaka_h.json";
    REQUIRE(run_cli("reconstruct " + kFixtures + "/z2.json --functor F -o " + out) == 0);
    Bundle b = parse_bundle(out);
    REQUIRE(b.bialgebroid);
    REQUIRE(b.bialgebroid->dim == 2);
    REQUIRE(validate_right_bialgebroid(*b.bialgebroid).passed());
}

TEST_CASE("fusion-build emits a bundle that revalidates") {
    std::string out = "/tmp/tannaka_coarse.json";
    REQUIRE(run_cli("fusion-build " + kFixtures + "/z2.json --system FS -o " + out) == 0);
    REQUIRE(run_cli("validate " + out) == 0);
    Bundle b = parse_bundle(out);
    REQUIRE(b.functors.size() == 1);
    REQUIRE(b.functors[0].second.base->dim == 2);
}
