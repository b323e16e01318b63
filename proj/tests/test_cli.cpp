#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "smoothdigits/cli.hpp"

using smoothdigits::cli::run;
using Json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<Json> records(const std::string& s) {
    std::vector<Json> out;
    for (const auto& l : lines(s)) out.push_back(Json::parse(l));
    return out;
}

}  // namespace

TEST_CASE("enum") {
    const auto plain = call({"enum", "--base", "2", "--k", "2", "--take", "6", "--format", "plain"});
    CHECK(plain.code == 0);
    CHECK(lines(plain.out) == std::vector<std::string>{"1", "3", "5", "9", "17", "33"});

    const auto js = records(call({"enum", "--base", "2", "--k", "2", "--take", "6"}).out);
    REQUIRE(js.size() == 7);
    CHECK(js[0] == Json{{"schema", 1}});
    CHECK(js[6]["value"] == "33");
    CHECK(js[6]["j"] == 6);

    const auto csv = lines(call({"enum", "--take", "3", "--format", "csv"}).out);
    CHECK(csv == std::vector<std::string>{"j,value", "1,1", "2,3", "3,5"});

    CHECK(lines(call({"enum", "--stream", "powersum", "--bases", "2,2", "--take", "4", "--format", "plain"}).out) ==
          std::vector<std::string>{"5", "7", "9", "11"});
    CHECK(lines(call({"enum", "--stream", "smooth", "--primes", "2,3,5", "--max-value", "12", "--format", "plain"}).out) ==
          std::vector<std::string>{"1", "2", "3", "4", "5", "6", "8", "9", "10", "12"});
    CHECK(lines(call({"enum", "--base", "10", "--f", "const", "--f-param", "1", "--take", "20", "--max-top-exponent",
                      "30", "--format", "plain"})
                    .out)
              .size() == 9);
}

TEST_CASE("factor") {
    const auto r = call({"factor", "4097"});
    CHECK(r.code == 0);
    const auto js = records(r.out);
    REQUIRE(js.size() == 2);
    CHECK(js[1]["factors"] == Json::parse(R"([["17",1],["241",1]])"));
    CHECK(js[1]["P"] == "241");
    CHECK(js[1]["omega"] == 2);

    const auto expr = records(call({"factor", "2^64+1", "720", "--primes", "2,3"}).out);
    CHECK(expr[1]["P"] == "67280421310721");
    CHECK(expr[2]["s_part"] == "144");

    const auto partial = call({"factor", "1267650600228229401496703205653*1267650600228229401496703205707", "--budget", "10"});
    CHECK(partial.code == 3);
    CHECK(records(partial.out)[1]["complete"] == false);
}

TEST_CASE("trace") {
    const auto js = records(call({"trace", "2^20+2^3+1"}).out);
    CHECK(js[1]["branch"] == "archimedean");
    CHECK(js[1]["lambda"] == "9/1048576");
    CHECK(js[1]["all_hold"] == true);
    const auto pretty = call({"trace", "1089", "--pretty"});
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find("p_adic") != std::string::npos);
    CHECK(call({"trace", "1024"}).code == 2);
}

TEST_CASE("bounds") {
    const auto m = records(call({"bounds", "matveev", "--rationals", "2,3", "--exponents", "1,1", "--heights", "e,3"}).out);
    CHECK(m[1]["value"].get<double>() == doctest::Approx(-1.0141e10).epsilon(1e-4));
    const auto y = records(call({"bounds", "yu", "--rationals", "2,3", "--exponents", "1,1", "--heights", "e,3", "--p", "2"}).out);
    CHECK(y[1]["value"].get<double>() == doctest::Approx(3.697e11).epsilon(1e-3));
    const auto t = records(call({"bounds", "threshold", "--kind", "fixed", "--u", "1e6", "--k", "3"}).out);
    CHECK(t[1]["status"] == "not_applicable");
    const auto t9 = records(call({"bounds", "threshold", "--kind", "s-unit", "--u", "10^9"}).out);
    CHECK(t9[1]["value"].get<double>() == doctest::Approx(2.7334).epsilon(1e-4));
    CHECK(call({"bounds", "top-exponent", "--base", "2", "--k", "3", "--primes", "3,5"}).code == 0);
    CHECK(call({"bounds", "gap", "--n", "2^20+9"}).code == 0);
    CHECK(call({"bounds", "smooth-digits", "--n", "2^64+1"}).code == 0);
    CHECK(call({"bounds", "constants", "--base", "10"}).code == 0);
    CHECK(call({"bounds", "matveev", "--rationals", "2", "--exponents", "1"}).code == 2);
}

TEST_CASE("survey") {
    const auto r = call({"survey", "sparse", "--base", "2", "--k", "2", "--take", "6"});
    CHECK(r.code == 0);
    const auto js = records(r.out);
    CHECK(js[0] == Json{{"schema", 1}});
    CHECK(js[1]["type"] == "record");
    CHECK(js[6]["value"] == "33");
    CHECK(js[6]["P"] == "11");
    CHECK(js.back()["type"] == "window");

    const auto a = call({"survey", "sparse", "--base", "3", "--k", "3", "--take", "80", "--format", "csv"});
    const auto b = call({"survey", "sparse", "--base", "3", "--k", "3", "--take", "80", "--format", "csv", "--serial"});
    const auto c = call({"--threads", "2", "survey", "sparse", "--base", "3", "--k", "3", "--take", "80", "--format", "csv"});
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(lines(a.out).size() == 81);

    const auto st = records(call({"survey", "stewart", "--a", "2", "--base", "3", "--from", "10", "--to", "12"}).out);
    REQUIRE(st.size() == 4);
    CHECK(st[1]["nz"] == 6);
    CHECK(call({"survey", "stewart", "--a", "4", "--base", "2"}).code == 2);
}

TEST_CASE("cyclo and search") {
    const auto js = records(call({"cyclo", "--n", "12"}).out);
    CHECK(js[1]["pieces"][0]["phi"] == "17");
    CHECK(js[1]["pieces"][1]["phi"] == "241");
    CHECK(js[1]["identity"] == true);
    CHECK(lines(call({"cyclo", "--from", "1", "--to", "30", "--format", "csv"}).out).size() == 31);

    const auto hits = records(call({"search", "--base", "2", "--k", "2", "--primes", "3", "--limit", "10^6"}).out);
    REQUIRE(hits.size() == 4);
    CHECK(hits[3]["value"] == "9");
}

TEST_CASE("usage errors stay off the data stream") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"enum", "--bogus"},
             {"nosuch"},
             {},
             {"enum", "--base", "1"},
             {"enum", "--k", "1"},
             {"enum", "--k", "2", "--f", "const"},
             {"factor", "0"},
             {"factor", "12x"},
             {"--format", "xml", "enum"},
             {"factor", "12", "--format", "plain"},
             {"survey", "sparse", "--take", "0"},
             {"search", "--primes", "4", "--limit", "10"},
             {"cyclo"},
         }) {
        const auto r = call(args);
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("output file") {
    const std::string path = "cli_output_test.jsonl";
    const auto r = call({"--output", path, "enum", "--take", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines(ss.str()).size() == 4);
    std::remove(path.c_str());
}

TEST_CASE("integer expressions") {
    using smoothdigits::cli::parse_integer;
    CHECK(parse_integer("2^10+2^6+1") == 1089);
    CHECK(parse_integer("3*2^10-1") == 3071);
    CHECK(parse_integer("(1+2)^2^2") == 81);
    CHECK_THROWS(parse_integer("2^"));
    CHECK_THROWS(parse_integer("abc"));
}
