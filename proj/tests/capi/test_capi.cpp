// Copyright 2026 The polydyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polydyn/polydyn.h>

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

namespace {

const char* kChain5 = R"({"p":5,"m":1,"g":["X1^2 - 2"],"h":["1"],"a":1,"b":1})";

struct System {
    pdyn_system* ptr = nullptr;
    ~System() { pdyn_system_free(ptr); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    pdyn_string_free(s);
    return out;
}

int append(void* ctx, const char* data, size_t len) {
    static_cast<std::string*>(ctx)->append(data, len);
    return 0;
}

int refuse(void*, const char*, size_t) { return 1; }

}  // namespace

TEST_CASE("capi: status names and version") {
    CHECK(std::string(pdyn_status_name(PDYN_OK)) == "ok");
    CHECK(std::string(pdyn_status_name(PDYN_BUDGET)) == "budget");
    CHECK(std::string(pdyn_version()).size() > 0);
}

TEST_CASE("capi: system lifecycle and validation") {
    System s;
    REQUIRE(pdyn_system_from_json(kChain5, &s.ptr) == PDYN_OK);
    CHECK(pdyn_system_modulus(s.ptr) == 5);
    CHECK(pdyn_system_m(s.ptr) == 1);

    char* report = nullptr;
    CHECK(pdyn_system_validate(s.ptr, nullptr, &report) == PDYN_OK);
    const std::string r = take(report);
    CHECK(r.find("\"verdict\":\"certified\"") != std::string::npos);

    char* json = nullptr;
    REQUIRE(pdyn_system_to_json(s.ptr, &json) == PDYN_OK);
    System back;
    const std::string text = take(json);
    REQUIRE(pdyn_system_from_json(text.c_str(), &back.ptr) == PDYN_OK);
    char* json2 = nullptr;
    REQUIRE(pdyn_system_to_json(back.ptr, &json2) == PDYN_OK);
    CHECK(take(json2) == text);

    const uint64_t x[2] = {2, 1};
    uint64_t y[2] = {0, 0};
    CHECK(pdyn_system_apply(s.ptr, x, y) == PDYN_OK);
    CHECK(y[0] == 4);
    CHECK(y[1] == 2);
}

TEST_CASE("capi: errors map to status codes") {
    System s;
    CHECK(pdyn_system_from_json("{", &s.ptr) == PDYN_USAGE);
    CHECK(std::strlen(pdyn_last_error()) > 0);
    CHECK(pdyn_system_load("/nonexistent/file.json", &s.ptr) == PDYN_IO);
    CHECK(pdyn_system_from_json(nullptr, &s.ptr) == PDYN_USAGE);

    System planted;
    REQUIRE(pdyn_system_make(7, 2, PDYN_FAMILY_PLANTED_ZERO, nullptr, 0, 1, 1, &planted.ptr) == PDYN_OK);
    char* report = nullptr;
    CHECK(pdyn_system_validate(planted.ptr, nullptr, &report) == PDYN_VALIDATION);
    CHECK(take(report).find("not_permutation") != std::string::npos);

    System bad;
    REQUIRE(pdyn_system_from_json(R"({"p":5,"m":1,"g":["2*X1^2"],"h":["1"],"a":1,"b":1})", &bad.ptr) == PDYN_OK);
    CHECK(pdyn_system_validate(bad.ptr, nullptr, &report) == PDYN_VALIDATION);
    CHECK(take(report).find("leading-coefficient") != std::string::npos);

    System big;
    REQUIRE(pdyn_system_make(1000003, 2, PDYN_FAMILY_CHAIN, nullptr, 0, 1, 1, &big.ptr) == PDYN_OK);
    char* csv = nullptr;
    const uint64_t a[2] = {1, 0};
    CHECK(pdyn_vsum(big.ptr, a, 2, 0, 1, 4, 0, nullptr, &csv, nullptr) == PDYN_BUDGET);
}

TEST_CASE("capi: generator") {
    System s;
    REQUIRE(pdyn_system_from_json(kChain5, &s.ptr) == PDYN_OK);
    const uint64_t seed[2] = {2, 1};
    pdyn_generator* gen = nullptr;
    REQUIRE(pdyn_generator_new(s.ptr, seed, 2, 1, &gen) == PDYN_OK);
    CHECK(std::string(pdyn_generator_path(gen)) == "product_form");
    std::string out;
    CHECK(pdyn_generator_write(gen, 3, "csv", append, &out) == PDYN_OK);
    CHECK(out == "2,\n4,\n4,\n");
    CHECK(pdyn_generator_steps(gen) == 3);
    uint64_t state[2];
    CHECK(pdyn_generator_state(gen, state) == PDYN_OK);
    CHECK(state[0] == 4);
    CHECK(state[1] == 4);
    CHECK(pdyn_generator_jump(gen, 2) == PDYN_OK);
    uint64_t nums[3];
    CHECK(pdyn_generator_next(gen, 3, nums) == PDYN_OK);
    CHECK(pdyn_generator_write(gen, 1, "xml", append, &out) == PDYN_USAGE);
    CHECK(pdyn_generator_write(gen, 1, "csv", refuse, nullptr) == PDYN_IO);
    pdyn_generator_free(gen);

    const uint64_t bad_seed[2] = {5, 0};
    CHECK(pdyn_generator_new(s.ptr, bad_seed, 2, 1, &gen) == PDYN_USAGE);
    CHECK(pdyn_generator_new(s.ptr, seed, 1, 1, &gen) == PDYN_USAGE);
}

TEST_CASE("capi: analyses") {
    System s;
    REQUIRE(pdyn_system_from_json(kChain5, &s.ptr) == PDYN_OK);
    char *csv = nullptr, *summary = nullptr;
    REQUIRE(pdyn_degrees(s.ptr, 1, 4, nullptr, &csv, &summary) == PDYN_OK);
    CHECK(take(csv).find("0,3,6,6,0\n") != std::string::npos);
    CHECK(take(summary).find("\"flagged\":false") != std::string::npos);

    const uint64_t a[1] = {1};
    REQUIRE(pdyn_expsum(s.ptr, a, 1, 3, 2, nullptr, &csv) == PDYN_OK);
    CHECK(take(csv).rfind("p,m,a,k,l,s,", 0) == 0);
    int growth = -1;
    REQUIRE(pdyn_vsum(s.ptr, a, 1, 0, 1, 4, 0, nullptr, &csv, &growth) == PDYN_OK);
    CHECK(take(csv).find("5,1,1,0,1,0,1,25,25,1,1\n") != std::string::npos);
    CHECK(growth == 0);

    REQUIRE(pdyn_discrepancy("0.5\n", "1d", 0, 0, &csv) == PDYN_OK);
    CHECK(take(csv).find(",1/2\n") != std::string::npos);
    REQUIRE(pdyn_discrepancy("1,1\n", "grid", 0, 2, &csv) == PDYN_OK);
    CHECK(take(csv).find(",3/4\n") != std::string::npos);
    REQUIRE(pdyn_discrepancy("0.1\n0.7\n", "etk", 4, 0, &csv) == PDYN_OK);
    CHECK(take(csv).rfind("method,N,dim,L,", 0) == 0);
    CHECK(pdyn_discrepancy("0.1\n", "box", 4, 0, &csv) == PDYN_USAGE);

    const uint64_t Ns[2] = {1, 5};
    char* dist = nullptr;
    int decreasing = -1;
    REQUIRE(pdyn_avg_discrepancy(s.ptr, Ns, 2, nullptr, 0, nullptr, &summary, &dist, &decreasing) == PDYN_OK);
    CHECK(take(summary).find("1,1,") != std::string::npos);
    CHECK(take(dist).rfind("N,discrepancy,seeds\n", 0) == 0);
    CHECK(decreasing == 1);

    const uint64_t seed[2] = {2, 1};
    char* rec = nullptr;
    REQUIRE(pdyn_period(s.ptr, seed, 2, 1, nullptr, &rec) == PDYN_OK);
    CHECK(take(rec).find("\"period\":5") != std::string::npos);
    REQUIRE(pdyn_cycle_structure(s.ptr, nullptr, &rec) == PDYN_OK);
    CHECK(take(rec).find("\"cycles\":[{\"length\":5,\"count\":1},{\"length\":20,\"count\":1}]") != std::string::npos);

    const pdyn_run_options tiny{1, 3};
    CHECK(pdyn_period(s.ptr, seed, 2, 0, &tiny, &rec) == PDYN_BUDGET);
    CHECK(take(rec).find("rho_lower_bound") != std::string::npos);

    char* json = nullptr;
    REQUIRE(pdyn_bench(s.ptr, seed, 2, 1000, 1, &json) == PDYN_OK);
    CHECK(take(json).find("\"muls_per_component\":[2,1]") != std::string::npos);
}
