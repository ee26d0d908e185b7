// torsionlab command-line interface; all computation happens behind the
// shared-library C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include "torsionlab.h"

namespace {

struct CtxDeleter {
    void operator()(tl_ctx* c) const { tl_ctx_free(c); }
};

int finish(tl_ctx* ctx, tl_status st, char* text, char* json, const std::string& json_path,
           bool json_to_stdout) {
    if (text && !json_to_stdout) std::fputs(text, stdout);
    if (json && json_to_stdout) std::fputs(json, stdout);
    if (json && !json_path.empty()) {
        std::ofstream out(json_path);
        out << json;
    }
    if (st != TL_OK && st != TL_EVERIFY) std::fprintf(stderr, "error: %s\n", tl_last_error(ctx));
    tl_free(text);
    tl_free(json);
    switch (st) {
    case TL_OK: return 0;
    case TL_EVERIFY: return 1;
    case TL_EINPUT: return 2;
    default: return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact torsion certification and finite-field experiments for elliptic curves "
                 "over number fields"};
    app.require_subcommand(1);

    std::string data_dir = "data";
    int jobs = 1;
    bool json_stdout = false;
    std::string json_path;
    app.add_option("--data-dir", data_dir, "directory with table/curve catalogs")->capture_default_str();
    app.add_option("--jobs", jobs, "worker threads for partitionable operations")->capture_default_str();
    app.add_flag("--json", json_stdout, "print the JSON report instead of text");
    app.add_option("--json-out", json_path, "also write the JSON report to a file");

    std::string tables = "all";
    auto* cmd_tables = app.add_subcommand("verify-tables", "certify the torsion catalog tables");
    cmd_tables->add_option("--table", tables, "comma list of tables 1..6, or 'all'")->capture_default_str();

    std::string zc_curve = "x1_13";
    long zc_p = 0;
    std::uint64_t zn1 = 0, zn2 = 0, zq = 0;
    auto* cmd_zeta = app.add_subcommand("zeta", "zeta numerator of a stock modular curve model");
    cmd_zeta->add_option("--curve", zc_curve, "x1_13 or x1_18")->capture_default_str();
    cmd_zeta->add_option("--p", zc_p, "characteristic (default: 2 for x1_13, 5 for x1_18)");
    cmd_zeta->add_option("--n1", zn1, "synthetic count over F_q (self-test)");
    cmd_zeta->add_option("--n2", zn2, "synthetic count over F_q^2 (self-test)");
    cmd_zeta->add_option("--q", zq, "synthetic base field size (self-test)");

    int fam_n = 13;
    std::string fam_c = "2";
    bool fam_verify = false;
    auto* cmd_family = app.add_subcommand("family", "specialize the Y1(13)/Y1(18) family at a parameter");
    cmd_family->add_option("--n", fam_n, "13 or 18")->capture_default_str();
    cmd_family->add_option("--c", fam_c, "rational parameter")->capture_default_str();
    cmd_family->add_flag("--verify", fam_verify, "also verify the extra-endomorphism identity");

    int fcm_n = 13;
    std::string fcm_input = "2";
    int fcm_samples = 5;
    auto* cmd_fcm = app.add_subcommand("false-cm", "verify t^2 = a for the extra endomorphism");
    cmd_fcm->add_option("--n", fcm_n, "13, 16 or 18")->capture_default_str();
    cmd_fcm->add_option("--input", fcm_input, "rational c (families) or a named curve")->capture_default_str();
    cmd_fcm->add_option("--samples", fcm_samples, "sample point count")->capture_default_str();

    std::string sm_curves = "E1,E2,E3";
    std::uint64_t sm_hi = 1010;
    std::string sm_bounds = "100,200";
    auto* cmd_smooth = app.add_subcommand("smoothness", "smooth group-order tallies over a prime range");
    cmd_smooth->add_option("--curves", sm_curves, "named curves over Q")->capture_default_str();
    cmd_smooth->add_option("--range", sm_hi, "primes p with 30 < p < p_RANGE")->capture_default_str();
    cmd_smooth->add_option("--bounds", sm_bounds, "smoothness bounds")->capture_default_str();

    std::string den_curve = "E1";
    std::uint64_t den_hi = 10010;
    auto* cmd_dens = app.add_subcommand("densities", "splitting-class divisibility fractions");
    cmd_dens->add_option("--curve", den_curve)->capture_default_str();
    cmd_dens->add_option("--range", den_hi, "primes p with 30 < p < p_RANGE")->capture_default_str();

    std::string ecm_n;
    std::uint64_t ecm_b1 = 1000;
    std::string ecm_curve = "E3";
    bool ecm_demo = false;
    auto* cmd_ecm = app.add_subcommand("ecm", "stage-1 elliptic curve factoring");
    cmd_ecm->add_option("--n", ecm_n, "integer to factor (decimal)");
    cmd_ecm->add_option("--b1", ecm_b1, "stage-1 bound")->capture_default_str();
    cmd_ecm->add_option("--curve", ecm_curve, "named curve or family:n,c")->capture_default_str();
    cmd_ecm->add_flag("--demo", ecm_demo, "run the shipped fixture set");

    auto* cmd_selftest = app.add_subcommand("selftest", "quick internal consistency sweep");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<tl_ctx, CtxDeleter> ctx(tl_ctx_new(data_dir.c_str()));
    if (!ctx) {
        std::fprintf(stderr, "error: could not create context\n");
        return 2;
    }
    tl_ctx_set_jobs(ctx.get(), jobs);

    char* text = nullptr;
    char* json = nullptr;
    tl_status st = TL_EINPUT;

    if (cmd_tables->parsed()) {
        st = tl_verify_tables(ctx.get(), tables.c_str(), &text, &json);
    } else if (cmd_zeta->parsed()) {
        if (zq > 0) st = tl_zeta_synthetic(ctx.get(), zn1, zn2, zq, &text, &json);
        else st = tl_zeta(ctx.get(), zc_curve.c_str(), zc_p, &text, &json);
    } else if (cmd_family->parsed()) {
        st = tl_family(ctx.get(), fam_n, fam_c.c_str(), fam_verify ? 1 : 0, &text, &json);
    } else if (cmd_fcm->parsed()) {
        st = tl_false_cm(ctx.get(), fcm_n, fcm_input.c_str(), fcm_samples, &text, &json);
    } else if (cmd_smooth->parsed()) {
        st = tl_smoothness(ctx.get(), sm_curves.c_str(), sm_hi, sm_bounds.c_str(), &text, &json);
    } else if (cmd_dens->parsed()) {
        st = tl_densities(ctx.get(), den_curve.c_str(), den_hi, &text, &json);
    } else if (cmd_ecm->parsed()) {
        if (ecm_demo) st = tl_ecm_demo(ctx.get(), &text, &json);
        else st = tl_ecm(ctx.get(), ecm_n.c_str(), ecm_b1, ecm_curve.c_str(), &text, &json);
    } else if (cmd_selftest->parsed()) {
        st = tl_selftest(ctx.get(), &text, &json);
    }

    return finish(ctx.get(), st, text, json, json_path, json_stdout);
}
