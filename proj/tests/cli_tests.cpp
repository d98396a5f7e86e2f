#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the workbench binary through the shell; env assignments go in prefix.
RunResult run(const std::string& args, const std::string& prefix = "") {
  const std::string tmp = OLAB_TEST_TMP;
  const std::string out_f = tmp + "/cli_out.txt";
  const std::string err_f = tmp + "/cli_err.txt";
  std::string cmd = prefix + " \"" + OLAB_BINARY + "\" " + args + " > " +
                    out_f + " 2> " + err_f;
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_f);
  r.err = slurp(err_f);
  return r;
}

json run_json(const std::string& args, int expect_code) {
  RunResult r = run(args);
  CAPTURE(args);
  CAPTURE(r.err);
  CHECK(r.code == expect_code);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("cli exit codes cover the verdict spectrum") {
  CHECK(run("check-axioms CHAIN3").code == 0);
  CHECK(run("check-axioms VEE").code == 0);
  CHECK(run("check-axioms STAR").code == 1);
  CHECK(run("check-axioms LVFAIL").code == 1);
  CHECK(run("cover VEE --A x --U z").code == 1);
  CHECK(run("cover VEE --A x,y --U z --max-path 1 --max-refine 1").code == 2);
  RunResult miss = run("check-axioms missing.json");
  CHECK(miss.code == 3);
  CHECK(miss.err.find("cannot open input") != std::string::npos);
  CHECK(run("frobnicate").code == 3);
}

TEST_CASE("cli axiom reports carry witnesses") {
  json j = run_json("check-axioms LVFAIL", 1);
  CHECK(j["command"] == "check-axioms");
  CHECK(j["input"] == "LVFAIL");
  bool found = false;
  for (const auto& rep : j["reports"]) {
    if (rep["axiom"] == "(c-V)") {
      found = true;
      CHECK(rep["status"] == "violated");
      CHECK(rep["witness"].size() == 2);
    }
    if (rep["axiom"] == "(V)" || rep["axiom"] == "(0)")
      CHECK(rep["status"] == "holds");
  }
  CHECK(found);

  json sel = run_json("check-axioms LVFAIL --axioms \"(V)\"", 0);
  CHECK(sel["reports"].size() == 1);
  CHECK(sel["reports"][0]["status"] == "holds");
}

TEST_CASE("cli cones") {
  json j = run_json("cones STAR --region s", 0);
  CHECK(j["up"] == json::array({"s"}));
  CHECK(j["down"] == json::array({"s"}));
  CHECK(j["open_cones"] == false);
  CHECK(j["open_cones_witness"] == json::array({"s"}));
  json k = run_json("cones CHAIN3 --region b", 0);
  CHECK(k["up"] == json::array({"b", "c"}));
  CHECK(k["down"] == json::array({"a", "b"}));
  CHECK(k["open_cones"] == true);
}

TEST_CASE("cli cover emits certificates and witnesses") {
  json cov = run_json("cover CHAIN3 --A a,b --U c", 0);
  CHECK(cov["outcome"] == "covered");
  CHECK(!cov["certificates"].empty());
  json bad = run_json("cover VEE --A x --U z", 1);
  CHECK(bad["outcome"] == "not-covered");
  CHECK(bad["witness_path"] == json::array({json::array({"y"}),
                                            json::array({"z"})}));
  json unk = run_json("cover VEE --A x,y --U z --max-path 1 --max-refine 1", 2);
  CHECK(unk["outcome"] == "unknown");
  CHECK(unk["bounds"]["max_target_path_len"] == 1);
}

TEST_CASE("cli paths restrict") {
  json j = run_json("paths restrict CHAIN3 --steps \"a;a,b;b,c\" --window b",
                    0);
  json want = json::array({json::array({"a"}), json::array({"a", "b"}),
                           json::array({"b"})});
  CHECK(j["restricted"] == want);
  RunResult bad =
      run("paths restrict CHAIN3 --steps \"c;a\" --window a");
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out).contains("error"));
}

TEST_CASE("cli localic domain on a space input") {
  json j = run_json(
      "domain CHAIN3 --region a --semantics localic --direction future", 0);
  CHECK(j["domain"] == json::array({"a", "b", "c"}));
  CHECK(j["unknowns"] == 0);
  CHECK(j["bounds"] ==
        json({{"budget", 50000000},
              {"max_refinement_len", 180},
              {"max_target_path_len", 16}}));
  json p = run_json(
      "domain CHAIN3 --region c --semantics localic --direction past", 0);
  CHECK(p["domain"] == json::array({"a", "b", "c"}));
}

TEST_CASE("cli gtop excludes the exploratory row from the exit code") {
  for (const char* name : {"CHAIN3", "VEE"}) {
    RunResult r = run(std::string("gtop ") + name);
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    for (const auto& rep : j["reports"]) {
      if (rep["axiom"] == "kleisli")
        CHECK(rep["status"] == "violated");
      else
        CHECK(rep["status"] == "holds");
    }
  }
}

TEST_CASE("cli domain matrix on a scenario") {
  json j = run_json("domain CONE_CUT --semantics all", 0);
  CHECK(j["report"]["localic_unknowns"] == 0);
  int strict = 0;
  for (const auto& e : j["report"]["inclusions"]) {
    if (e["strict"] == true) {
      ++strict;
      CHECK(e["witness_cell"] == json::array({2, 2}));
      CHECK(e["from"].get<std::string>().rfind("inext-", 0) == 0);
    }
  }
  CHECK(strict == 6);
  json loc = run_json("domain CONE_CUT --semantics localic", 0);
  CHECK(loc["domain"] == j["report"]["domains"]["localic"]);
  json ic = run_json("domain CONE_CUT --semantics inext-causal", 0);
  CHECK(ic["domain"] == j["report"]["domains"]["inext-causal"]);
}

TEST_CASE("cli rejects chain semantics on unequal slopes") {
  RunResult r = run("domain \"TWO_SLOPES(1,2)\" --semantics all");
  CHECK(r.code == 3);
  CHECK(r.err.find("chain domains need equal slopes") != std::string::npos);
}

TEST_CASE("cli scenario artifacts land on disk and on stdout") {
  const std::string tmp = OLAB_TEST_TMP;
  RunResult a =
      run("scenario POINT_REMOVED --render ascii --out \"" + tmp + "\"");
  CHECK(a.code == 0);
  CHECK(a.out == slurp(tmp + "/POINT_REMOVED.txt"));
  CHECK(a.out.rfind("grid 5x3 slopes 1/1\n", 0) == 0);
  RunResult j =
      run("scenario \"TWO_SLOPES(1,2)\" --render json --out \"" + tmp + "\"");
  CHECK(j.code == 0);
  json parsed = json::parse(slurp(tmp + "/TWO_SLOPES_1_2.json"));
  CHECK(parsed["name"] == "TWO_SLOPES(1,2)");
  CHECK(parsed["up_slope"] == 1);
  CHECK(parsed["down_slope"] == 2);
  RunResult s =
      run("scenario MINKOWSKI_PLAIN --render svg --out \"" + tmp + "\"");
  CHECK(s.code == 0);
  CHECK(slurp(tmp + "/MINKOWSKI_PLAIN.svg").rfind("<svg", 0) == 0);
  CHECK(run("scenario BOGUS").code == 3);
}

TEST_CASE("cli output is deterministic across worker counts") {
  std::vector<std::string> cmds = {
      "domain CONE_CUT --semantics all",
      "check-axioms LVFAIL",
      "cover CHAIN3 --A a --U c",
  };
  for (const auto& name : {"MINKOWSKI_PLAIN", "POINT_REMOVED", "CONE_CUT",
                           "CURVE_REMOVED_FROM_A", "REGION_REMOVED"})
    cmds.push_back("scenario " + std::string(name) + " --render ascii --out \"" +
                   OLAB_TEST_TMP + "\"");
  for (const auto& base : cmds) {
    CAPTURE(base);
    RunResult w1 = run("--workers 1 " + base);
    RunResult w4 = run("--workers 4 " + base);
    RunResult w8 = run("--workers 8 " + base);
    CHECK(w1.code == w4.code);
    CHECK(w1.out == w4.out);
    CHECK(w1.out == w8.out);
  }
}

TEST_CASE("cli honors the budget environment knob") {
  RunResult tight = run("check-axioms CHAIN3", "OLAB_BUDGET=3");
  CHECK(tight.code == 2);
  json j = json::parse(tight.out);
  CHECK(j["budget"] == 3);
  for (const auto& rep : j["reports"]) CHECK(rep["status"] == "unknown");
  RunResult bad = run("check-axioms CHAIN3", "OLAB_BUDGET=bogus");
  CHECK(bad.code == 3);
  CHECK(bad.err.find("OLAB_BUDGET must be a positive integer") !=
        std::string::npos);
}

TEST_CASE("cli accepts json input files") {
  const std::string tmp = OLAB_TEST_TMP;
  const std::string path = tmp + "/chain3_input.json";
  {
    std::ofstream f(path);
    f << R"({"kind":"space","name":"c3","points":["a","b","c"],)"
      << R"("order":[["a","b"],["b","c"]],"topology":{"kind":"discrete"}})";
  }
  CHECK(run("check-axioms \"" + path + "\"").code == 0);
  json j = run_json("cones \"" + path + "\" --region b", 0);
  CHECK(j["down"] == json::array({"a", "b"}));

  const std::string gpath = tmp + "/grid_input.json";
  {
    std::ofstream f(gpath);
    f << R"({"kind":"grid","width":3,"height":2,"up_slope":1,"down_slope":1,)"
      << R"("holes":[[1,0]],"regions":{"A":[[0,0],[2,0]]}})";
  }
  json d = run_json("domain \"" + gpath + "\" --semantics all", 0);
  CHECK(d["report"]["localic_unknowns"] == 0);
  json dom = d["report"]["domains"]["localic"];
  bool has_gap = false;
  for (const auto& c : dom)
    if (c == json::array({1, 1})) has_gap = true;
  CHECK(has_gap);
}
