#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "kboxkit/cli.hpp"
#include "kboxkit/serialize.hpp"
#include "support.hpp"

using namespace kboxkit;
using kboxkit::test::error_kind;
using kboxkit::test::grid;
using kboxkit::test::R;

namespace {

namespace fs = std::filesystem;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("kboxkit_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) const {
    write_file((dir / name).string(), text);
    return (dir / name).string();
  }
  std::string put(const std::string& name, const GridFunction& f) const { return put(name, dump(to_json(f))); }
};

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("grid function round trip") {
    GridFunction f = grid("product", 3, 4);
    f.label = "pi";
    GridFunction g = parse_grid_function(dump(to_json(f)));
    CHECK(g == f);
    CHECK(g.label == f.label);
    CHECK(dump(to_json(g)) == dump(to_json(f)));
  }

  TEST_CASE("box union round trip") {
    BoxUnion dub(2);
    dub.add(KBox({0, 1}, {2, 2}), 3);
    dub.add(KBox({1, 0}, {2, 1}));
    BoxUnion back = box_union_from_json(to_json(dub));
    CHECK(back.boxes() == dub.boxes());
  }

  TEST_CASE("lenient value parsing") {
    GridFunction f = parse_grid_function(R"({"n":1,"axes":[[0,"1/2",1.0]],"values":[0,0.5,"1"]})");
    CHECK(f.values == std::vector<Rational>{R("0"), R("1/2"), R("1")});
  }

  TEST_CASE("malformed inputs") {
    CHECK(error_kind([] { parse_grid_function("{"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { parse_grid_function(R"({"n":1,"axes":[[0,1]]})"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { parse_grid_function(R"({"n":2,"axes":[[0,1]],"values":[0,1]})"); }) ==
          ErrorKind::ParseError);
    CHECK(error_kind([] { parse_grid_function(R"({"n":1,"axes":[[0,1]],"values":[0,1,1]})"); }) ==
          ErrorKind::InvalidParameter);
    CHECK(error_kind([] { parse_grid_function(R"({"n":1,"axes":[[0,1]],"values":["x",1]})"); }) ==
          ErrorKind::ParseError);
    CHECK(error_kind([] { load_grid_function("/nonexistent/file.json"); }) == ErrorKind::IoError);
    GridMesh mesh = make_uniform_mesh(2, 3);
    CHECK(parse_order("[[0,0],[2,1]]", mesh).size() == 2);
    CHECK(error_kind([&] { parse_order("[[0,3]]", mesh); }) == ErrorKind::ParseError);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    Scratch s;
    const std::string w = s.put("w.json", grid("lukasiewicz", 2, 3));
    const std::string m = s.put("m.json", grid("min", 2, 3));
    const std::string w3 = s.put("w3.json", grid("lukasiewicz", 3, 3));
    const std::string bad = s.put("bad.json", "{\"n\": 2,");

    Outcome ok = run({"check-asl", w, m, "--k", "2"});
    CHECK(ok.code == 0);
    Json j = Json::parse(ok.out);
    CHECK(j["satisfied"] == true);

    Outcome loss = run({"check-asl", w3, w3, "--k", "3"});
    CHECK(loss.code == 1);
    CHECK(Json::parse(loss.out)["violating_union"]["boxes"].size() == 1);

    CHECK(run({"check-asl", bad, m, "--k", "2"}).code == 2);
    CHECK(run({"check-asl", w, m}).code == 2);
    CHECK(run({"check-asl", w, m, "--k", "5"}).code == 2);
    CHECK(run({"check-asl", m, w, "--k", "2"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    Outcome swept = run({"construct", w3, w3, "--k", "3"});
    CHECK(swept.code == 1);
    CHECK(Json::parse(swept.out)["status"] == "asl-violated");
    CHECK(run({"construct", w, m, "--k", "2", "--direction", "above"}).code == 0);
    CHECK(run({"coherence", w, m, "--k", "2", "--side", "lower"}).code == 0);
    CHECK(run({"coherence", w3, w3, "--k", "3"}).code == 1);
    CHECK(run({"functionals", w, m, "--k", "2", "--node", "1,1", "--sum-inequality"}).code == 0);
  }

  TEST_CASE("gen and structural") {
    Scratch s;
    const std::string path = (s.dir / "frank.json").string();
    CHECK(run({"gen", "frank(1)", "2", "4", "--out", path}).code == 0);
    Outcome semi = run({"structural", path, "--require", "semicopula"});
    CHECK(semi.code == 0);
    Json j = Json::parse(semi.out);
    CHECK(j["grounded"] == true);
    CHECK(j["one_increasing"] == true);
    CHECK(j["uniform_marginals"] == true);
    const std::string half = s.put("half.json", R"({"n":1,"axes":[[0,1]],"values":[0,"1/2"]})");
    CHECK(run({"structural", half, "--require", "standardized"}).code == 1);
    CHECK(run({"gen", "nope", "2", "3"}).code == 2);
  }

  TEST_CASE("order files and mode override") {
    Scratch s;
    const std::string w = s.put("w.json", grid("lukasiewicz", 2, 3));
    const std::string m = s.put("m.json", grid("min", 2, 3));
    const std::string order = s.put("order.json", "[[1,1],[0,0],[0,1],[0,2],[1,0],[1,2],[2,0],[2,1],[2,2]]");
    Outcome r = run({"construct", w, m, "--k", "2", "--order", "file:" + order});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["k_increasing"]["passed"] == true);
    CHECK(run({"construct", w, m, "--k", "2", "--order", "file:" + s.put("short.json", "[[1,1]]")}).code == 2);
    CHECK(run({"construct", w, m, "--k", "2", "--order", "random"}).code == 2);

    const std::string exact = run({"check-asl", w, m, "--k", "2"}).out;
    ::setenv("KBOXKIT_MODE", "float", 1);
    Outcome f = run({"check-asl", w, m, "--k", "2", "--mode", "exact"});
    ::unsetenv("KBOXKIT_MODE");
    CHECK(f.code == 0);
    CHECK(Json::parse(f.out)["satisfied"] == true);
    ::setenv("KBOXKIT_MODE", "sideways", 1);
    CHECK(run({"check-asl", w, m, "--k", "2"}).code == 2);
    ::unsetenv("KBOXKIT_MODE");
    CHECK(run({"check-asl", w, m, "--k", "2"}).out == exact);
  }

  TEST_CASE("extension evaluation") {
    Scratch s;
    const std::string m = s.put("m.json", grid("min", 2, 3));
    Outcome r = run({"extend-eval", m, "--point", "1/2,3/4", "--point", "1,1"});
    CHECK(r.code == 0);
    CHECK(r.out == "x1,x2,value\n1/2,3/4,1/2\n1/1,1/1,1/1\n");
    const std::string csv = s.put("pts.csv", "0.75,0.75\n");
    CHECK(run({"extend-eval", m, "--ext", "lipschitz", "--csv", csv}).out == "x1,x2,value\n3/4,3/4,5/8\n");
    CHECK(run({"extend-eval", m, "--point", "2,0"}).code == 2);
  }

  TEST_CASE("fuzz summary") {
    Outcome r = run({"fuzz", "--seed", "5", "--n", "2", "--g", "3", "--count", "4", "--k", "2"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.contains("failures"));
  }
}
