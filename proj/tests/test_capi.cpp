// Exercises the shared-library surface exactly as an external caller
// would: opaque context, JSON bodies, malloc'd strings, error codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "lpopalg.h"

namespace {

struct Ctx {
    lpa_ctx* p;
    Ctx() : p(lpa_ctx_new()) {}
    ~Ctx() { lpa_ctx_free(p); }
};

struct Reply {
    int status = -1;
    std::string body;
};

Reply eval(lpa_ctx* ctx, const char* request) {
    char* raw = nullptr;
    Reply r;
    r.status = lpa_eval(ctx, request, &raw);
    if (raw != nullptr) {
        r.body = raw;
        lpa_string_free(raw);
    }
    return r;
}

}  // namespace

TEST_CASE("version string") {
    CHECK(std::strcmp(lpa_version(), "1.0.0") == 0);
}

TEST_CASE("context lifecycle tolerates empty use") {
    Ctx ctx;
    REQUIRE(ctx.p != nullptr);
    CHECK(std::string(lpa_last_error(ctx.p)).empty());
}

TEST_CASE("evaluating a norm request") {
    Ctx ctx;
    const Reply r = eval(ctx.p, R"({
        "command": "opnorm",
        "matrix": {"rows": [[1, 0], [0, 1]]},
        "p": 3
    })");
    REQUIRE(r.status == 0);
    const auto body = nlohmann::json::parse(r.body);
    CHECK(body["command"] == "opnorm");
    CHECK(body["outputs"]["lower_bound"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::string(lpa_last_error(ctx.p)).empty());
}

TEST_CASE("scope refusals carry status three and a message") {
    Ctx ctx;
    const Reply r = eval(ctx.p, R"({
        "command": "lamperti-decompose",
        "matrix": {"rows": [[1, 0], [0, 1]]},
        "p": 2
    })");
    CHECK(r.status == 3);
    const auto body = nlohmann::json::parse(r.body);
    CHECK(body["error"]["kind"] == "ExponentTwo");
    CHECK_FALSE(std::string(lpa_last_error(ctx.p)).empty());
}

TEST_CASE("validation failures report status two") {
    Ctx ctx;
    CHECK(eval(ctx.p, "not json at all").status == 2);
    CHECK(eval(ctx.p, R"({"command": "opnorm"})").status == 2);
    CHECK_FALSE(std::string(lpa_last_error(ctx.p)).empty());
}

TEST_CASE("unknown commands report the usage status") {
    Ctx ctx;
    const Reply r = eval(ctx.p, R"({"command": "no-such-thing"})");
    CHECK(r.status == 64);
    CHECK(nlohmann::json::parse(r.body)["error"]["kind"] == "UnknownCommand");
}

TEST_CASE("null arguments are rejected without crashing") {
    Ctx ctx;
    char* out = nullptr;
    CHECK(lpa_eval(nullptr, "{}", &out) == 2);
    CHECK(lpa_eval(ctx.p, nullptr, &out) == 2);
    CHECK(lpa_eval(ctx.p, "{}", nullptr) == 2);
}

TEST_CASE("error state resets after a successful call") {
    Ctx ctx;
    CHECK(eval(ctx.p, "broken").status == 2);
    CHECK_FALSE(std::string(lpa_last_error(ctx.p)).empty());
    const Reply ok = eval(ctx.p, R"({
        "command": "dyn-census",
        "word": "ab",
        "depth": 6
    })");
    REQUIRE(ok.status == 0);
    CHECK(std::string(lpa_last_error(ctx.p)).empty());
}
