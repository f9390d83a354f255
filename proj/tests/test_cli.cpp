#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "coarsegeom/json_io.hpp"

using namespace coarsegeom;

namespace {

const std::string kCli = COARSEGEOM_CLI_PATH;

struct Workdir {
    std::string dir;
    Workdir() {
        char tmpl[] = "/tmp/coarsegeom-cli-XXXXXX";
        dir = mkdtemp(tmpl);
    }
    std::string file(const std::string& name) const { return dir + "/" + name; }
};

int run(const std::string& args) {
    int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("fixture generation, hyperplanes and d_L compose") {
    Workdir w;
    CHECK(run("fixture --kind grid --a 3 --b 3 --out " + w.file("g.json")) == 0);
    CHECK(run("hyperplanes --complex " + w.file("g.json")) == 0);
    CHECK(run("dist --complex " + w.file("g.json") + " -x 0 -y 15") == 0);
    CHECK(run("dl --complex " + w.file("g.json") + " -L 1 --matrix " + w.file("m.json")) == 0);
    auto m = load_json_file(w.file("m.json"));
    CHECK(m.is_array());
    CHECK(m.size() == 16);
}

TEST_CASE("seeded artifacts are byte-identical across runs") {
    Workdir w;
    std::string gen = "tree gen --levels 2 --depth 6 --seed 7 --random --out ";
    CHECK(run(gen + w.file("f1.json")) == 0);
    CHECK(run(gen + w.file("f2.json")) == 0);
    CHECK(slurp(w.file("f1.json")) == slurp(w.file("f2.json")));
    CHECK_FALSE(slurp(w.file("f1.json")).empty());
}

TEST_CASE("phi pipeline round-trips through files") {
    Workdir w;
    CHECK(run("tree gen --depth 6 --seed 1 --random --out " + w.file("a.json")) == 0);
    CHECK(run("tree gen --depth 6 --seed 2 --random --out " + w.file("b.json")) == 0);
    CHECK(run("tree phi --a " + w.file("a.json") + " --b " + w.file("b.json") + " --out " +
              w.file("phi.json")) == 0);
    CHECK(run("tree verify --phi " + w.file("phi.json")) == 0);
    CHECK(run("tree boundary --phi " + w.file("phi.json") + " -v 0") == 0);
}

TEST_CASE("validation failures exit 2, usage errors are nonzero") {
    Workdir w;
    CHECK(run("fixture --kind path --n 6 --out " + w.file("p.json")) == 0);

    // size cap exceeded -> machine-readable validation failure
    int rc = std::system(("COARSEGEOM_CAPS=2 " + kCli + " delta --complex " +
                          w.file("p.json") + " >/dev/null 2>&1")
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 2);

    // non-ruler path -> exit 2 with a violating triple
    auto sk = skeleton_from_json(load_json_file(w.file("p.json")));
    auto sp = sk.to_metric_space();
    save_json_file(w.file("s.json"), to_json(sp));
    DiscretePath bad{&sp, {0, 4, 0}, {}};
    save_json_file(w.file("bad.json"), to_json(bad));
    CHECK(run("ruler param --space " + w.file("s.json") + " --path " + w.file("bad.json") +
              " -D 2") == 2);
    CHECK(run("ruler check --space " + w.file("s.json") + " --path " + w.file("bad.json") +
              " -D 2") == 2);
    DiscretePath good{&sp, {0, 1, 2, 3, 4}, {}};
    save_json_file(w.file("good.json"), to_json(good));
    CHECK(run("ruler check --space " + w.file("s.json") + " --path " + w.file("good.json") +
              " -D 2") == 0);
    CHECK(run("ruler param --space " + w.file("s.json") + " --path " + w.file("good.json") +
              " -D 2 --eps 1/2 --out " + w.file("rep.json")) == 0);
    CHECK(load_json_file(w.file("rep.json")).contains("K"));

    // malformed input file -> validation failure
    {
        std::ofstream junk(w.file("junk.json"));
        junk << "{ not json";
    }
    CHECK(run("hyperplanes --complex " + w.file("junk.json")) != 0);

    // unknown command / missing required option
    CHECK(run("no-such-command") != 0);
    CHECK(run("dist -x 0 -y 1") != 0);
}

TEST_CASE("well-separation and profile subcommands") {
    Workdir w;
    CHECK(run("fixture --kind tree --degree 3 --depth 2 --out " + w.file("t.json")) == 0);
    CHECK(run("wellsep --complex " + w.file("t.json") + " --pair h0 h1") == 0);

    auto sk = skeleton_from_json(load_json_file(w.file("t.json")));
    auto gp = sk.geodesic(4, 6);
    json jp;
    jp["points"] = json::array();
    for (auto v : gp) jp["points"].push_back(v);
    save_json_file(w.file("geo.json"), jp);
    CHECK(run("profile --complex " + w.file("t.json") + " --path " + w.file("geo.json") +
              " --kappa const:1 -c 1") == 0);
}
