#include "doctest.h"

#include "efh/cli.hpp"
#include "efh/error.hpp"

using namespace efh;
using namespace efh::cli;

namespace {

Output run_json(std::vector<std::string> args, const std::string& stdin_text = {}) {
  args.insert(args.end(), {"--format", "json"});
  return run(args, stdin_text);
}

Json parsed(const Output& o) { return Json::parse(o.out); }

}  // namespace

TEST_CASE("documented examples") {
  const Output f = run_json({"facthom", "builtin:rotation-circle-qz2", "--cap", "3"});
  REQUIRE(f.exit_code == 0);
  CHECK(parsed(f)["betti"] == Json::array({2, 0, 0}));
  CHECK(parsed(f)["trusted_through"] == 2);
  CHECK(parsed(f)["field"] == "Q");
  const Output h = run_json({"hochschild", "builtin:rotation-circle-q"});
  REQUIRE(h.exit_code == 0);
  CHECK(parsed(h)["betti"] == Json::array({1, 0, 0, 0}));
}

TEST_CASE("schema errors exit 1 with a JSON pointer") {
  const Output malformed = run({"hochschild", "-"}, "{\"schema\":1,");
  CHECK(malformed.exit_code == 1);
  CHECK(malformed.err.find("schema error at /") != std::string::npos);

  const Output unknown = run({"hochschild", "-"}, R"({"schema":1,"algebra":{"kind":"ground","n":3}})");
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("/algebra/n") != std::string::npos);

  const Output top = run({"hochschild", "-"}, R"({"schema":1,"algebra":{"kind":"ground"},"extra":0})");
  CHECK(top.exit_code == 1);
  CHECK(top.err.find("/extra") != std::string::npos);

  CHECK(run({"hochschild", "-"}, R"({"algebra":{"kind":"ground"}})").err.find("/schema") != std::string::npos);
  CHECK(run({"hochschild", "-"}, R"({"schema":2,"algebra":{"kind":"ground"}})").exit_code == 1);
  CHECK(run({"hochschild", "-"}, R"({"schema":1})").err.find("/algebra") != std::string::npos);

  const Output nested = run({"bredon", "-"}, R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e","h"]}]}})");
  CHECK(nested.exit_code == 1);
  CHECK(nested.err.find("/gcw/cells/0/isotropy/1") != std::string::npos);

  const Output floats = run({"hochschild", "-"}, R"({"schema":1,"algebra":{"kind":"ground"},
      "twist":{"matrix":[[1.5]],"kind":"auto"}})");
  CHECK(floats.exit_code == 1);
  CHECK(floats.err.find("/twist/matrix/0/0") != std::string::npos);

  CHECK(run({"frobnicate", "builtin:point"}).exit_code == 1);
  CHECK(run({"bredon", "builtin:nope"}).exit_code == 1);
  CHECK(run({"bredon", "builtin:point", "--field", "fp:4"}).exit_code == 1);
  CHECK(run({"bredon", "builtin:point", "--normalized", "maybe"}).exit_code == 1);
  CHECK(run({"bredon", "/nonexistent/file.json"}).exit_code == 1);
}

TEST_CASE("mathematical errors exit 2") {
  // e1 is declared the unit but e1 e1 = e0.
  const Output bad_algebra = run({"hochschild", "-"}, R"({"schema":1,"algebra":{"kind":"constants","dim":2,
      "constants":[[[1,0],[0,1]],[[0,1],[1,0]]],"unit":[0,1]}})");
  CHECK(bad_algebra.exit_code == 2);
  CHECK(bad_algebra.err.find("not-an-algebra") != std::string::npos);

  const Output d_squared = run({"bredon", "-"}, R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e","g"]},{"id":"e","dim":1,"isotropy":["e"]},
               {"id":"f","dim":2,"isotropy":["e"]}],
      "boundary":[{"from":"e","to":"v","morphisms":[{"coset":"e"}]},
                  {"from":"f","to":"e","morphisms":[{"coset":"e"}]}]}})");
  CHECK(d_squared.exit_code == 2);
  CHECK(d_squared.err.find("invalid-complex") != std::string::npos);

  const Output uncovered = run({"bredon", "-"}, R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e","g"]}]},
      "coefficients":{"system":"constant","family":[["e"]]}})");
  CHECK(uncovered.exit_code == 2);
  CHECK(uncovered.err.find("isotropy") != std::string::npos);

  CHECK(run({"traces", "builtin:reflection-circle-m2-transpose"}).exit_code == 2);
  CHECK(run({"bredon", "builtin:point", "--field", "fp:2"}).exit_code == 0);
}

TEST_CASE("every corpus job succeeds and agrees with its oracle") {
  for (const auto& job : corpus_jobs()) {
    CAPTURE(job[0]);
    CAPTURE(job[1]);
    const Output o = run(job);
    CHECK(o.exit_code == 0);
    CHECK(o.err.empty());
    CHECK(o.out.find("DISAGREE") == std::string::npos);
  }
}

TEST_CASE("output is byte-identical across runs") {
  for (const auto& job : corpus_jobs()) {
    CHECK(run(job).out == run(job).out);
  }
}

TEST_CASE("builtin complexes match the library") {
  for (const auto& name : builtin_complex_names()) {
    CAPTURE(name);
    CHECK(gcw_from_json(builtin_document(name)["gcw"]) == builtin_complex(name));
  }
}

TEST_CASE("serializers round-trip") {
  for (const auto& name : builtin_names()) {
    CAPTURE(name);
    const Json doc = builtin_document(name);
    if (doc.contains("gcw")) {
      const GammaCWComplex x = gcw_from_json(doc["gcw"]);
      CHECK(gcw_from_json(gcw_to_json(x)) == x);
      CHECK(gcw_to_json(gcw_from_json(gcw_to_json(x))) == gcw_to_json(x));
    }
    if (doc.contains("algebra")) {
      const Algebra a = algebra_from_json(doc["algebra"], Field::rationals());
      const Algebra b = algebra_from_json(algebra_to_json(a), Field::rationals());
      CHECK(a == b);
      CHECK(b.augmentation() == a.augmentation());
      if (doc.contains("twist")) {
        const AlgebraTwist phi = twist_from_json(doc["twist"], a);
        const AlgebraTwist psi = twist_from_json(twist_to_json(phi), b);
        CHECK(psi.matrix() == phi.matrix());
        CHECK(psi.kind() == phi.kind());
      }
    }
    if (doc.contains("orbifold") && doc["orbifold"].is_object()) {
      const OrbifoldCircle o = orbifold_from_json(doc["orbifold"]);
      const OrbifoldCircle p = orbifold_from_json(orbifold_to_json(o));
      CHECK(p.group() == o.group());
      CHECK(p.kind() == o.kind());
      CHECK(p.singular_strata() == o.singular_strata());
    }
  }
  for (const auto& g : {FiniteGroup::symmetric(3), FiniteGroup::dihedral(4),
                        FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3))}) {
    const FiniteGroup h = group_from_json(group_to_json(g));
    CHECK(h == g);
    CHECK(h.names() == g.names());
  }
}

TEST_CASE("rationals are printed canonically") {
  const Output t = run_json({"traces", "-"}, R"({"schema":1,"algebra":{"kind":"product","factors":[
      {"kind":"ground"},{"kind":"ground"}]},"twist":"identity"})");
  REQUIRE(t.exit_code == 0);
  CHECK(parsed(t)["dimension"] == 2);
  const Output half = run_json({"bredon", "-"}, R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e"]},{"id":"e","dim":1,"isotropy":["e"]}],
      "boundary":[{"from":"e","to":"v","morphisms":[{"coset":"g","coeff":"2/4"},{"coset":"e","coeff":"-1/2"}]}]}})");
  REQUIRE(half.exit_code == 0);
  CHECK(parsed(half)["betti"] == Json::array({1, 1}));
  const GammaCWComplex x = gcw_from_json(Json::parse(R"({"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e"]},{"id":"e","dim":1,"isotropy":["e"]}],
      "boundary":[{"from":"e","to":"v","morphisms":[{"coset":"g","coeff":"2/4"},{"coset":"e","coeff":"-1/2"}]}]})"));
  CHECK(gcw_to_json(x)["boundary"][0]["morphisms"][0]["coeff"] == "1/2");
  CHECK(gcw_to_json(x)["boundary"][0]["morphisms"][1]["coeff"] == "-1/2");
}

TEST_CASE("options") {
  CHECK(parsed(run_json({"bredon", "builtin:torus-z2-rotation", "--field", "fp:3"}))["field"] == "F_3");
  const Output contra = run_json({"bredon", "-"}, R"({"schema":1,"gcw":{"group":{"kind":"cyclic","n":2},
      "cells":[{"id":"v","dim":0,"isotropy":["e","g"]}]},"coefficients":{"system":"regular","variance":"contravariant"}})");
  REQUIRE(contra.exit_code == 0);
  CHECK(parsed(contra)["betti"] == Json::array({1}));
  CHECK(parsed(contra)["variance"] == "contravariant");
  const Json u = parsed(run_json({"tor", "builtin:tor-dual-numbers", "--normalized", "false", "--cap", "3"}));
  CHECK(u["betti"] == Json::array({1, 1, 1}));
  const Json left = parsed(run_json({"traces", "builtin:rotation-circle-qxq-swap"}));
  const Json right = parsed(run_json({"traces", "builtin:rotation-circle-qxq-swap", "--trace-convention", "phi-right"}));
  CHECK(left["dimension"] == right["dimension"]);
  CHECK(right["convention"] == "phi-right");
  const std::string table = run({"chenruan", "builtin:torus-z2-rotation"}).out;
  CHECK(table.find("betti                   5 0 1") != std::string::npos);
}
