#include <doctest.h>

#include "fixtures.hpp"
#include "meyerkit/config.hpp"

using namespace meyerkit;
using io::json;
using fx::rat;

namespace {

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "";
}

}  // namespace

TEST_CASE("numbers round trip through JSON") {
  for (const auto& x : {QuadExt::parse("-3/7+2/9√5"), QuadExt(0), rat(5, 3), fx::phi()}) {
    CHECK(io::quad_from_json(io::to_json(x), "x") == x);
    CHECK(io::quad_from_json(json(x.str()), "x") == x);
  }
  CHECK(io::to_json(rat(1, 2)) == json{{"a", "1/2"}, {"b", "0"}, {"D", 1}});
  CHECK(io::quad_from_json(json(7), "x") == rat(7));
  CHECK(where_of([] { io::quad_from_json(json(1.5), "cfg:/x"); }) == "cfg:/x");
  CHECK(where_of([] { io::quad_from_json(json{{"a", "1/0"}}, "cfg:/x"); }) == "cfg:/x/a");
}

TEST_CASE("schemes, regions and windows round trip") {
  for (const auto& S : {fx::fib(), fx::dec2(), fx::toy()}) {
    auto T = io::cps_from_json(io::to_json(S), "S");
    CHECK(T.A() == S.A());
    CHECK(T.B() == S.B());
    CHECK(T.c() == S.c());
    CHECK(T.declared_group() == S.declared_group());
    CHECK(T.label() == S.label());
  }
  for (const auto& W : {fx::fib_window(), fx::dec2_windows(), fx::toy_windows()}) {
    auto V = io::windows_from_json(io::to_json(W), "W");
    REQUIRE(V.size() == W.size());
    CHECK(V.colors == W.colors);
    for (std::size_t i = 0; i < W.size(); ++i) CHECK(region_equal(V.regions[i], W.regions[i]));
  }
  FinHom h(FinAbGroup({2, 4}), FinAbGroup({4}), {{2}, {1}});
  CHECK(io::finhom_from_json(io::to_json(h), "h") == h);
  QuadMatrix M{{fx::phi(), rat(1)}, {rat(-1, 2), rat(0)}};
  CHECK(io::quadmatrix_from_json(io::to_json(M), "M") == M);
}

TEST_CASE("point sets round trip through CSV and JSON") {
  auto P = generate_model_multiset(fx::dec2(), fx::dec2_windows(), fx::box1(rat(-30), rat(30)));
  CHECK(io::pointset_from_csv(io::to_csv(P), "p.csv") == P);
  CHECK(io::pointset_from_json(io::to_json(P), "p.json") == P);
  // Colors keep their order even when one of them is empty.
  MultiPointSet Q(1, {"b", "a"}, fx::box1(rat(0), rat(4)));
  Q.add(1, {rat(1)});
  CHECK(io::pointset_from_csv(io::to_csv(Q), "q.csv") == Q);
  CHECK(io::to_csv(Q) == "# carrier 0 4\n# colors b a\nx1,color\n1,a\n");
}

TEST_CASE("errors name their location") {
  json S = io::to_json(fx::fib());
  S["A"][0][1] = "abc";
  CHECK(where_of([&] { io::cps_from_json(S, "fib.json:"); }) == "fib.json:/A/0/1");
  S = io::to_json(fx::fib());
  S["c"] = json::array({json::array(), json::array(), json::array()});
  CHECK(where_of([&] { io::cps_from_json(S, "fib.json:"); }) == "fib.json:/c");
  S.erase("B");
  CHECK(where_of([&] { io::cps_from_json(S, "fib.json:"); }) == "fib.json:");

  json W = io::to_json(fx::fib_window());
  W["windows"][0]["region"]["fibers"][0]["boxes"][0][0] = json::array({"1", "0"});
  CHECK(where_of([&] { io::windows_from_json(W, "w:"); }) == "w:/windows/0/region/fibers/0/boxes/0/0");

  CHECK(where_of([] { io::pointset_from_csv("# carrier 0 1\nx1,color\n1/3,v\n1/x,v\n", "p.csv"); }) == "p.csv:4");
  CHECK(where_of([] { io::pointset_from_csv("x1,color\n1,v\n", "p.csv"); }) == "p.csv");
  CHECK(where_of([] { io::pointset_from_csv("# carrier 0 1\n5,v\n", "p.csv"); }) == "p.csv: row 1");
}

TEST_CASE("meyer input files resolve relative references") {
  auto cfg = io::load_meyer_config(fx::path("subwin_meyer.json"));
  CHECK(cfg.input.mode == MeyerInput::Mode::Symbolic);
  CHECK(cfg.input.ambient.label() == "fibonacci");
  CHECK(cfg.options.dilation == rat(1, 50));
  CHECK(region_compare(cfg.input.sub_windows.regions[0], fx::fib_window().regions[0]) == Comparison::ASubsetB);

  json j{{"ambient", "fib.json"}, {"windows", "fib_window.json"}, {"mode", "sideways"}};
  CHECK(where_of([&] { io::meyer_config_from_json(j, MEYERKIT_FIXTURES, "m:"); }) == "m:/mode");
  j["mode"] = "empirical";
  CHECK(where_of([&] { io::meyer_config_from_json(j, MEYERKIT_FIXTURES, "m:"); }) == "m:");
  j["points"] = io::to_json(generate_model_multiset(fx::fib(), fx::fib_window(), fx::box1(rat(-20), rat(20))));
  j["dilation"] = "1/10";
  auto emp = io::meyer_config_from_json(j, MEYERKIT_FIXTURES, "m:");
  CHECK(emp.input.mode == MeyerInput::Mode::Empirical);
  CHECK(emp.options.dilation == rat(1, 10));

  auto spec = io::load_morphism(fx::path("dec2_to_fib.json"));
  CHECK(spec.f.codomain().is_trivial());
  CHECK(validate_morphism(spec).ok);
  CHECK(io::load_fset(fx::path("fib_fset.json"), 1).size() == 3);
  CHECK(io::load_basis(fx::path("diag_basis.json")) == IntMatrix{{1, 1}, {1, -1}});
}
