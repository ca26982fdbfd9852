/*
 * Copyright 2026 The hdkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hdkit/cli.hpp"

using nlohmann::json;

namespace {

struct Outcome
{
    int code = 0;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

Outcome
run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Outcome o;
    o.code = hdkit::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string
corpus(const std::string& name)
{
    return std::string(HDKIT_CORPUS_DIR) + "/" + name;
}

std::string
scratch(const std::string& name, const std::string& text)
{
    auto p = std::filesystem::temp_directory_path() / ("hdkit_test_" + name);
    std::ofstream(p) << text;
    return p.string();
}

}  // namespace

TEST_CASE("decide")
{
    auto o = run({"decide", "--in", corpus("a3.json")});
    CHECK(o.code == 0);
    auto j = o.doc();
    CHECK(j["verdict"] == "hd");
    CHECK(j["method"] == "two_token");
    CHECK(j["states"] == 1);
    CHECK(run({"decide", "--in", corpus("a2.json")}).doc()["verdict"] == "not-hd");
    auto h = run({"decide", "--in", corpus("a2.hoa")});
    CHECK(h.code == 0);
    CHECK(h.doc()["verdict"] == "not-hd");
}

TEST_CASE("decide with the oracle and a certificate")
{
    auto o = run({"decide", "--in", corpus("a1.json"), "--method", "oracle"});
    CHECK(o.doc()["method"] == "oracle");
    CHECK(o.doc()["verdict"] == "hd");
    auto c = run({"decide", "--in", corpus("a1.json"), "--certificate"});
    CHECK(c.doc().contains("pruned"));
    auto r = run({"oracle", "decide", "--in", corpus("a2.json")});
    CHECK(r.code == 0);
    CHECK(r.doc()["verdict"] == "not-hd");
    CHECK(r.doc().contains("det_states"));
}

TEST_CASE("error exits")
{
    auto bad = scratch("bad.json", "{\"states\": [");
    auto o = run({"decide", "--in", bad});
    CHECK(o.code == 2);
    CHECK(o.doc()["error"]["kind"] == "parse");
    CHECK(run({"decide", "--in", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"decide"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    auto p = run({"decide", "--in", corpus("a2.json"), "--method", "safety-reach"});
    CHECK(p.code == 3);
    CHECK(p.doc()["error"]["kind"] == "precondition");
    CHECK(run({"normalize", "--in", corpus("a2.json"), "--pipeline", "full-0K"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is reproducible")
{
    std::vector<std::string> args{"gen", "--seed", "3", "--count", "2", "--states", "3", "--index", "0,2"};
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.doc().is_array());
    CHECK(a.doc().size() == 2);
    std::vector<std::string> f{"fuzz", "--seed", "7", "--count", "12", "--states", "3", "--index", "0,3", "--jobs", "3"};
    auto x = run(f), y = run(f);
    CHECK(x.out == y.out);
    CHECK(x.doc()["disagree"] == 0);
    CHECK(x.doc()["agree"].get<int>() + x.doc()["out_of_guard"].get<int>() == 12);
}

TEST_CASE("timings only on request")
{
    CHECK_FALSE(run({"decide", "--in", corpus("a3.json")}).doc().contains("timings"));
    CHECK(run({"--timings", "decide", "--in", corpus("a3.json")}).doc()["timings"].contains("wall_ms"));
}

TEST_CASE("game")
{
    auto o = run({"game", "--in", corpus("a2.json"), "--tokens", "2"});
    CHECK(o.code == 0);
    CHECK(o.doc()["winner"] == "adam");
    auto e = run({"game", "--in", corpus("a2.json"), "--tokens", "1", "--everywhere"});
    CHECK(e.doc()["winner"] == "eve");
    auto t = run({"game", "--in", corpus("a1.json"), "--tree", "2"});
    CHECK(t.code == 0);
    auto s = run({"game", "--in", corpus("a1.json"), "--simulated", corpus("a1.json")});
    CHECK(s.doc()["winner"] == "eve");
}

TEST_CASE("normalize")
{
    auto o = run({"normalize", "--in", corpus("a1.json")});
    CHECK(o.code == 0);
    CHECK(o.doc()["pipeline"] == "cobuchi");
    CHECK(o.doc().contains("automaton"));
}

TEST_CASE("strategy round trip through files")
{
    auto x = run({"strategy", "extract", "--in", corpus("a1.json")});
    REQUIRE(x.code == 0);
    auto doc = x.doc();
    CHECK(doc["kind"] == "cobuchi");
    auto path = scratch("strategy.json", doc["strategy"].dump());
    auto v = run({"strategy", "verify", "--in", corpus("a1.json"), "--strategy", path});
    CHECK(v.code == 0);
    CHECK(v.doc()["winning"] == true);
    CHECK(v.doc()["exact"] == true);
    auto s = run({"strategy", "simulate", "--in", corpus("a1.json"), "--strategy", path, "--word", ";a c"});
    CHECK(s.code == 0);
    CHECK(s.doc()["violates"] == false);
    auto w = run({"strategy", "simulate", "--in", corpus("a1.json"), "--strategy", path, "--word", "a;q"});
    CHECK(w.code == 2);
}

TEST_CASE("good-enough realisability")
{
    auto spec = scratch("ge.json", R"({"alphabet":["0/0","0/1","1/0","1/1"],"states":["s"],"initial":"s","index":[0,0],
      "transitions":[{"from":"s","letter":"0/0","priority":0,"to":"s"},{"from":"s","letter":"0/1","priority":0,"to":"s"},
                     {"from":"s","letter":"1/0","priority":0,"to":"s"},{"from":"s","letter":"1/1","priority":0,"to":"s"}]})");
    auto o = run({"ge", "--in", spec, "--check"});
    CHECK(o.code == 0);
    CHECK(o.doc()["realisable"] == true);
    CHECK(o.doc()["reference"] == true);
}
