#include "lpopalg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lpa/io.hpp"

struct lpa_ctx {
    std::string last_error;
};

namespace {

char* copy_out(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Pulls error.message out of an error body for lpa_last_error; falls
// back to the raw body when the shape is unexpected.
std::string extract_message(const std::string& body) {
    try {
        const lpa::json j = lpa::json::parse(body);
        if (j.contains("error") && j["error"].contains("message")) {
            return j["error"]["message"].get<std::string>();
        }
    } catch (...) {
    }
    return body;
}

}  // namespace

extern "C" {

lpa_ctx* lpa_ctx_new(void) { return new (std::nothrow) lpa_ctx(); }

void lpa_ctx_free(lpa_ctx* ctx) { delete ctx; }

int lpa_eval(lpa_ctx* ctx, const char* request_json, char** response_json) {
    if (response_json) *response_json = nullptr;
    if (!ctx || !request_json || !response_json) {
        if (ctx) ctx->last_error = "null argument to lpa_eval";
        return 2;
    }
    try {
        const lpa::DispatchResult res = lpa::dispatch_request(request_json);
        char* out = copy_out(res.body);
        if (!out) {
            ctx->last_error = "allocation failure";
            return 2;
        }
        *response_json = out;
        ctx->last_error =
            res.status == 0 ? std::string() : extract_message(res.body);
        return res.status;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return 2;
    } catch (...) {
        ctx->last_error = "unknown failure";
        return 2;
    }
}

void lpa_string_free(char* s) { std::free(s); }

const char* lpa_last_error(const lpa_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

const char* lpa_version(void) { return "1.0.0"; }

}  // extern "C"
