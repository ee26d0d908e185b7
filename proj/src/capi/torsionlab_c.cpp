#include "torsionlab.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/engine.hpp"

using tlab::Engine;
using tlab::OpResult;

struct tl_ctx {
    Engine engine;
    std::string last_error;
    explicit tl_ctx(const char* dir) : engine(dir ? dir : "data") {}
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void deliver(const OpResult& r, char** text_out, char** json_out) {
    if (text_out) *text_out = dup_string(r.text);
    if (json_out) *json_out = dup_string(r.json);
}

template <class Fn>
tl_status run(tl_ctx* ctx, char** text_out, char** json_out, Fn fn) {
    if (!ctx) return TL_EINPUT;
    ctx->last_error.clear();
    if (text_out) *text_out = nullptr;
    if (json_out) *json_out = nullptr;
    try {
        OpResult r = fn();
        deliver(r, text_out, json_out);
        if (r.status == 1) {
            ctx->last_error = "verification failure";
            return TL_EVERIFY;
        }
        if (r.status == 2) {
            ctx->last_error = r.text;
            return TL_EINPUT;
        }
        return TL_OK;
    } catch (const tlab::input_error& e) {
        ctx->last_error = e.what();
        return TL_EINPUT;
    } catch (const tlab::verify_error& e) {
        ctx->last_error = e.what();
        return TL_EVERIFY;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return TL_EINTERNAL;
    }
}

std::vector<std::string> split_csv(const char* csv) {
    std::vector<std::string> out;
    if (!csv) return out;
    std::string s(csv);
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) {
            if (start < s.size()) out.push_back(s.substr(start));
            break;
        }
        if (comma > start) out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

} // namespace

extern "C" {

tl_ctx* tl_ctx_new(const char* data_dir) {
    try {
        return new tl_ctx(data_dir);
    } catch (...) {
        return nullptr;
    }
}

void tl_ctx_free(tl_ctx* ctx) { delete ctx; }

void tl_ctx_set_jobs(tl_ctx* ctx, int jobs) {
    if (ctx && jobs > 0) ctx->engine.set_jobs(static_cast<unsigned>(jobs));
}

const char* tl_last_error(const tl_ctx* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

void tl_free(char* s) { std::free(s); }

tl_status tl_verify_tables(tl_ctx* ctx, const char* tables_csv, char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        std::vector<unsigned> tables;
        if (!tables_csv || std::string(tables_csv) == "all") {
            tables = {1, 2, 3, 4, 5, 6};
        } else {
            for (const auto& t : split_csv(tables_csv)) tables.push_back(static_cast<unsigned>(std::stoul(t)));
        }
        return ctx->engine.verify_tables(tables);
    });
}

tl_status tl_zeta(tl_ctx* ctx, const char* curve, long p, char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        std::optional<std::uint64_t> pp;
        if (p > 0) pp = static_cast<std::uint64_t>(p);
        return ctx->engine.zeta(curve ? curve : "", pp);
    });
}

tl_status tl_zeta_synthetic(tl_ctx* ctx, uint64_t n1, uint64_t n2, uint64_t q, char** text_out,
                            char** json_out) {
    return run(ctx, text_out, json_out, [&] { return ctx->engine.zeta_synthetic(n1, n2, q); });
}

tl_status tl_family(tl_ctx* ctx, int n, const char* c, int verify, char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        return ctx->engine.family(static_cast<unsigned>(n), c ? c : "", verify != 0);
    });
}

tl_status tl_false_cm(tl_ctx* ctx, int n, const char* input, int samples, char** text_out,
                      char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        return ctx->engine.false_cm(static_cast<unsigned>(n), input ? input : "",
                                    samples > 0 ? static_cast<unsigned>(samples) : 5);
    });
}

tl_status tl_smoothness(tl_ctx* ctx, const char* curves_csv, uint64_t hi_index, const char* bounds_csv,
                        char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        std::vector<std::uint64_t> bounds;
        for (const auto& b : split_csv(bounds_csv)) bounds.push_back(std::stoull(b));
        if (bounds.empty()) bounds = {100, 200};
        return ctx->engine.smoothness(split_csv(curves_csv), hi_index, bounds);
    });
}

tl_status tl_densities(tl_ctx* ctx, const char* curve, uint64_t hi_index, char** text_out,
                       char** json_out) {
    return run(ctx, text_out, json_out,
               [&] { return ctx->engine.densities(curve ? curve : "E1", hi_index); });
}

tl_status tl_ecm(tl_ctx* ctx, const char* n_decimal, uint64_t b1, const char* curve_spec,
                 char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] {
        return ctx->engine.ecm(n_decimal ? n_decimal : "", b1, curve_spec ? curve_spec : "");
    });
}

tl_status tl_ecm_demo(tl_ctx* ctx, char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] { return ctx->engine.ecm_demo(); });
}

tl_status tl_selftest(tl_ctx* ctx, char** text_out, char** json_out) {
    return run(ctx, text_out, json_out, [&] { return ctx->engine.selftest(); });
}

} // extern "C"
