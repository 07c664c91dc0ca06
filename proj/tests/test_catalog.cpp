#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <eqvar/catalog.hpp>
#include <eqvar/equivariance.hpp>
#include <eqvar/specfile.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>

using namespace eqvar;

namespace {

const std::vector<std::string> kBuiltins = {"weyl1",
                                            "uq_sl2",
                                            "torus:2",
                                            "torus:4",
                                            "quantum_plane_abstract",
                                            "synthetic_nonrigid",
                                            "torus2_swapped"};

std::string run_cli(const std::string& args, int* exit_code) {
    const char* cli = std::getenv("EQVAR_CLI");
    REQUIRE(cli != nullptr);
    std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    int status = pclose(p);
    *exit_code = WEXITSTATUS(status);
    return out;
}

std::string specs_dir() {
    const char* d = std::getenv("EQVAR_SPECS");
    REQUIRE(d != nullptr);
    return d;
}

}  // namespace

TEST_CASE("algebra serialization round-trips byte-identically") {
    for (const std::string& name : kBuiltins) {
        CAPTURE(name);
        AlgebraSpec spec = catalog_build(name);
        std::string once = spec_dump(spec);
        AlgebraSpec loaded = spec_from_json(Json::parse(once));
        CHECK(spec_dump(loaded) == once);
        // and the reloaded presentation is structurally usable
        CHECK(loaded.name == spec.name);
        CHECK(loaded.ops.size() == spec.ops.size());
        CHECK(loaded.relations.size() == spec.relations.size());
    }
}

TEST_CASE("reloaded presentations verify like the originals") {
    for (const std::string& name : {"weyl1", "uq_sl2", "torus:4", "torus2_swapped"}) {
        CAPTURE(name);
        AlgebraSpec orig = catalog_build(name);
        AlgebraSpec loaded = spec_from_json(Json::parse(spec_dump(orig)));
        CHECK(check_equivariance(loaded).ok());
        BundleModel m(loaded, 2);
        CHECK(m.verify_relations().ok());
    }
}

TEST_CASE("morphism serialization round-trips byte-identically") {
    Morphism m = torus2_swap_morphism();
    std::string once = morphism_dump(m);
    Morphism loaded = morphism_from_json(Json::parse(once));
    CHECK(morphism_dump(loaded) == once);
    CHECK(validate_morphism(loaded).ok());
}

TEST_CASE("formula serialization round-trips byte-identically") {
    AlgebraSpec w = weyl1();
    int l = 2;
    CoreFormula f;
    f.spec = w;
    Block b0;
    b0.bound = true;
    b0.fiber = 0;
    Block b1;
    b1.size = 2;
    b1.dropped = {false, true};
    f.blocks = {b0, b1};
    f.atoms = {PathAtom{0, 1, {0, 1}, 2, "p"}};
    Poly lam = Poly::var(f.comp.ensure(lam_var(0, 0)), l);
    Poly gam = Poly::var(f.comp.ensure(gam_var("p")), l);
    Poly y = Poly::var(f.comp.ensure(y_var(1, 0)), l);
    f.comp.exist = {lam_var(0, 0)};
    Clause c1;
    c1.eqs = {lam * gam - y};
    Clause c2;
    c2.neqs = {y - Poly(l, Rat(1)), Poly::var(0, l) * lam};
    f.comp.clauses = {c1, c2};

    std::string once = formula_dump(f);
    CoreFormula loaded = formula_from_json(Json::parse(once));
    CHECK(formula_dump(loaded) == once);
    CHECK(loaded.blocks[1].slot_dropped(1));
    CHECK(loaded.atoms[0].theta == 2);
    CHECK(loaded.comp.is_exist(lam_var(0, 0)));
}

TEST_CASE("unknown keys and bad documents are rejected") {
    Json good = spec_to_json(weyl1());
    Json bad = good;
    bad["surprise"] = 1;
    CHECK_THROWS_WITH_AS(spec_from_json(bad), doctest::Contains("unknown key"),
                         std::runtime_error);

    bad = good;
    bad["operators"][0]["surprise"] = 1;
    CHECK_THROWS_WITH_AS(spec_from_json(bad), doctest::Contains("unknown key"),
                         std::runtime_error);

    bad = good;
    bad["schema_version"] = 99;
    CHECK_THROWS_AS(spec_from_json(bad), std::runtime_error);

    bad = good;
    bad["kind"] = "morphism";
    CHECK_THROWS_AS(spec_from_json(bad), std::runtime_error);

    bad = good;
    bad["mode"] = "floppy";
    CHECK_THROWS_AS(spec_from_json(bad), std::runtime_error);

    bad = good;
    bad["relations"][0]["left"] = Json::array({"nonexistent"});
    CHECK_THROWS_AS(spec_from_json(bad), std::runtime_error);

    Json mor = morphism_to_json(torus2_swap_morphism());
    Json mbad = mor;
    mbad["extra"] = true;
    CHECK_THROWS_WITH_AS(morphism_from_json(mbad), doctest::Contains("unknown key"),
                         std::runtime_error);
    mbad = mor;
    mbad["op_images"][0]["word"] = Json::array({"nonexistent"});
    CHECK_THROWS_AS(morphism_from_json(mbad), std::runtime_error);
}

TEST_CASE("shipped spec files match the catalog byte for byte") {
    std::map<std::string, std::string> files = {
        {"weyl1", "weyl1.json"},
        {"uq_sl2", "uq_sl2.json"},
        {"torus:4", "torus4.json"},
        {"quantum_plane_abstract", "quantum_plane_abstract.json"},
        {"synthetic_nonrigid", "synthetic_nonrigid.json"},
        {"torus2_swapped", "torus2_swapped.json"}};
    for (auto& [name, file] : files) {
        CAPTURE(name);
        std::ifstream in(specs_dir() + "/" + file);
        REQUIRE(in.good());
        std::string disk((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        CHECK(disk == spec_dump(catalog_build(name)));
    }
    std::ifstream in(specs_dir() + "/torus2_swap.json");
    REQUIRE(in.good());
    std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(disk == morphism_dump(torus2_swap_morphism()));
}

TEST_CASE("cli emit is deterministic for every builtin") {
    for (const std::string& name : kBuiltins) {
        CAPTURE(name);
        int code = 0;
        std::string emitted = run_cli("catalog emit " + name, &code);
        REQUIRE(code == 0);
        std::string again = run_cli("catalog emit " + name, &code);
        REQUIRE(code == 0);
        CHECK(emitted == again);
    }
}

TEST_CASE("cli check is deterministic and meets the exit-code contract") {
    for (const std::string& name : {"weyl1", "uq_sl2", "torus:4", "torus2_swapped"}) {
        CAPTURE(name);
        int c1 = 0, c2 = 0;
        std::string r1 = run_cli("check " + name, &c1);
        std::string r2 = run_cli("check " + name, &c2);
        CHECK(c1 == 0);
        CHECK(c2 == 0);
        CHECK(r1 == r2);
        CHECK(r1.find("rigidity: rigid") != std::string::npos);
    }
    int code = 0;
    std::string out = run_cli("check synthetic_nonrigid", &code);
    CHECK(code == 1);
    CHECK(out.find("witness") != std::string::npos);
    CHECK(out.find("gamma=[-1]") != std::string::npos);
    CHECK(out.find("delta=[1]") != std::string::npos);

    run_cli("check no_such_entry", &code);
    CHECK(code == 2);
    run_cli("frobnicate", &code);
    CHECK(code == 2);
}

TEST_CASE("cli emitted files pass check") {
    for (const std::string& name : kBuiltins) {
        if (name == "synthetic_nonrigid") continue;  // deliberately fails with a witness
        CAPTURE(name);
        int code = 0;
        std::string emitted = run_cli("catalog emit " + name, &code);
        REQUIRE(code == 0);
        std::string tmp = "/tmp/eqvar_rt_" + name.substr(0, name.find(':')) + ".json";
        {
            std::ofstream out(tmp);
            out << emitted;
        }
        run_cli("check " + tmp, &code);
        CHECK(code == 0);
        std::remove(tmp.c_str());
    }
}

TEST_CASE("cli functor validates the shipped morphism") {
    int code = 0;
    std::string out = run_cli(
        "functor torus:2 torus2_swapped " + specs_dir() + "/torus2_swap.json --radius 2",
        &code);
    CHECK(code == 0);
    CHECK(out.find("FAIL") == std::string::npos);
}
