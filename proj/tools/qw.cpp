// Copyright 2026 The qwalk Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "qwalk/jsonw.hpp"
#include "qwalk/kreweras.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/rat.hpp"
#include "qwalk/series.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace qwalk;

constexpr int kSchema = 1;
constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kSeed = 0x5eed0001u;

void emit(const std::string& doc, const std::string& output) {
    std::string text = doc;
    if (text.empty() || text.back() != '\n') text += '\n';
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream f(output);
        f << text;
    }
}

JsonWriter& header(JsonWriter& j, const std::string& command) {
    j.begin_obj();
    j.key("schema").value(kSchema);
    j.key("command").value(command);
    return j;
}

JsonWriter& footer(JsonWriter& j, const std::vector<std::string>& diags) {
    j.key("diagnostics").begin_arr();
    for (const auto& d : diags) j.value(d);
    j.end_arr();
    j.key("versions").begin_obj();
    j.key("qw").value(kVersion);
    j.key("seed").value(static_cast<long>(kSeed));
    j.end_obj();
    j.end_obj();
    return j;
}

void put_inputs(JsonWriter& j, const StepSet& s, double z) {
    j.key("inputs").begin_obj();
    j.key("steps").value(s.to_string());
    if (z > 0) j.key("z").value(z);
    j.end_obj();
}

int cmd_classify(const std::string& steps, int bound, const std::string& output) {
    StepSet s = StepSet::parse(steps);
    Classification c = classify(s, bound, kSeed);
    JsonWriter j;
    header(j, "classify");
    put_inputs(j, s, 0);
    j.key("results").begin_obj();
    j.key("kind").value(walk_kind_name(c.kind));
    if (c.kind == WalkKind::non_singular) {
        if (c.exceeds_bound)
            j.key("group_order").value("exceeds-bound");
        else
            j.key("group_order").value(c.group_order);
    }
    j.end_obj();
    footer(j, {});
    emit(j.str(), output);
    return 0;
}

int cmd_count(const std::string& steps, int depth, bool csv, const std::string& output) {
    StepSet s = StepSet::parse(steps);
    CountTable t(s, depth);
    if (csv) {
        std::string doc = "n,i,j,count\n";
        for (int n = 0; n <= depth; ++n)
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j)
                    if (!t.q(i, j, n).is_zero())
                        doc += std::to_string(n) + "," + std::to_string(i) + "," + std::to_string(j) +
                               "," + t.q(i, j, n).to_string() + "\n";
        emit(doc, output);
        return 0;
    }
    JsonWriter j;
    header(j, "count");
    put_inputs(j, s, 0);
    j.key("results").begin_obj();
    j.key("depth").value(depth);
    j.key("excursions").begin_arr();
    for (int n = 0; n <= depth; ++n) j.value(t.q(0, 0, n).to_string());
    j.end_arr();
    j.end_obj();
    footer(j, {});
    emit(j.str(), output);
    return 0;
}

int cmd_periods(const std::string& steps, double z, const std::string& output) {
    StepSet s = StepSet::parse(steps);
    CurveData c = discriminants(s, z);
    order_branch_points(&c);
    Periods p = compute_periods(c);
    JsonWriter j;
    header(j, "periods");
    put_inputs(j, s, z);
    j.key("results").begin_obj();
    j.key("w1").value(cplx(p.w1));
    j.key("w2").value(p.w2);
    j.key("w3").value(p.w3);
    j.key("w3_over_w2").value(p.w3 / p.w2);
    j.key("quad_err").value(p.quad_err);
    j.key("x_branch").begin_arr();
    for (double v : c.xb) j.value(v);
    j.end_arr();
    j.key("y_branch").begin_arr();
    for (double v : c.yb) j.value(v);
    j.end_arr();
    j.end_obj();
    footer(j, {});
    emit(j.str(), output);
    return 0;
}

int cmd_rationality(const std::string& steps, double z, const std::string& pin, long lmax,
                    double tol, const std::string& output) {
    StepSet s = StepSet::parse(steps);
    JsonWriter j;
    header(j, "rationality");
    put_inputs(j, s, z);
    j.key("results").begin_obj();
    if (!pin.empty()) {
        long k = 0, l = 0;
        if (std::sscanf(pin.c_str(), "%ld/%ld", &k, &l) != 2)
            throw std::invalid_argument("bad --pin, expected k/l");
        double zs = find_z_for_ratio(s, k, l);
        j.key("pinned_k").value(k);
        j.key("pinned_l").value(l);
        j.key("z_solved").value(zs);
    } else {
        CurveData c = discriminants(s, z);
        order_branch_points(&c);
        RationalityResult r = detect_ratio(compute_periods(c), lmax, tol);
        j.key("ratio").value(r.ratio);
        j.key("detected").value(r.detected);
        if (r.detected) {
            j.key("k").value(r.k);
            j.key("l").value(r.l);
            j.key("certified_error").value(r.certified_error);
        }
    }
    j.end_obj();
    footer(j, {});
    emit(j.str(), output);
    return 0;
}

int cmd_evaluate(const std::string& steps, double z, double x0, int branch, double tol, int depth,
                 const std::string& output) {
    StepSet s = StepSet::parse(steps);
    Uniformization u = make_uniformization(s, z);
    Continuation cont(u, depth);
    RationalityResult rr = detect_ratio(u.periods());
    if (!rr.detected) throw std::runtime_error("evaluate: w3/w2 not detected rational; pass z in H");
    SeriesEvaluator se(cont, {static_cast<int>(rr.k), static_cast<int>(rr.l)});
    SeriesConfig cfg;
    cfg.target_tol = tol;
    auto cons = se.recover(cfg);
    cplx val = se.branch_value(x0, branch, cons, cfg);
    SeriesResult probe = se.sum_x(u.solve_x(x0).first, cfg);

    JsonWriter j;
    header(j, "evaluate");
    put_inputs(j, s, z);
    j.key("results").begin_obj();
    j.key("x0").value(x0);
    j.key("branch").value(branch);
    j.key("value").value(val);
    j.key("est_tail").value(probe.est_tail);
    j.key("terms").value(probe.terms_used);
    j.key("k").value(rr.k);
    j.key("l").value(rr.l);
    j.key("constants_consistency").value(cons.consistency);
    j.end_obj();
    footer(j, {});
    emit(j.str(), output);
    return 0;
}

int cmd_verify(const std::string& steps, double z, double tol, int depth,
               const std::string& output) {
    StepSet s = StepSet::parse(steps);
    std::vector<std::string> diags;
    bool ok = true;
    auto check = [&](const std::string& name, double resid, double lim) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: %.3e (limit %.1e) %s", name.c_str(), resid, lim,
                      resid <= lim ? "ok" : "BREACH");
        diags.emplace_back(buf);
        if (resid > lim) ok = false;
    };

    double feq = check_functional_equation(s, z, std::min(depth, 14), 8, kSeed);
    check("functional-equation", feq, 1e-10);

    Uniformization u = make_uniformization(s, z);
    Continuation cont(u, depth);
    const Periods& P = u.periods();

    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> U01(0.1, 0.9);
    double worstK = 0;
    for (int i = 0; i < 50; ++i) {
        cplx w = U01(rng) * P.w2 + U01(rng) * P.w1;
        cplx xv = u.x(w), yv = u.y(w);
        if (std::abs(xv) > 1e3 || std::abs(yv) > 1e3) continue;
        worstK = std::max(worstK, std::abs(kernel_eval(s, xv, yv, z)));
    }
    check("kernel-on-curve", worstK, 1e-8);

    RationalityResult rr = detect_ratio(P);
    if (rr.detected) {
        SeriesEvaluator se(cont, {static_cast<int>(rr.k), static_cast<int>(rr.l)});
        SeriesConfig cfg;
        cfg.target_tol = std::min(tol / 10, 1e-6);
        auto cons = se.recover(cfg);
        double worst = 0;
        int used = 0;
        for (int i = 0; i < 60 && used < 6; ++i) {
            cplx w = U01(rng) * P.w2 + U01(rng) * P.w1;
            try {
                cplx a = se.sum_y(w, cfg).value + cons.cy;
                cplx b = cont.ry(w);
                worst = std::max(worst, std::abs(a - b));
                ++used;
            } catch (const std::exception&) {
                continue;
            }
        }
        check("series-vs-continuation", worst, tol);
        if (s == StepSet::parse("NE,W,S")) {
            cplx q = se.q00(cons, cfg);
            check("q00-series-vs-closed", std::abs(q - kreweras::q00_closed(z)), tol);
            CountTable t(s, depth);
            check("q00-closed-vs-oracle",
                  std::abs(kreweras::q00_closed(z) - boundary_gf(t, Axis::origin, 0, z, depth).value),
                  tol + boundary_gf(t, Axis::origin, 0, z, depth).tail_bound);
            auto res = kreweras::constants_residuals(u);
            check("closed-form-constants", std::max({res[0], res[1], res[2], res[3]}), 1e-7);
        }
    } else {
        diags.emplace_back("w3/w2 not rational at this z; series checks skipped");
    }

    JsonWriter j;
    header(j, "verify");
    put_inputs(j, s, z);
    j.key("results").begin_obj();
    j.key("pass").value(ok);
    j.end_obj();
    footer(j, diags);
    emit(j.str(), output);
    return ok ? 0 : 3;
}

void put_ledger(JsonWriter& j, const std::vector<LedgerEntry>& led) {
    j.begin_arr();
    for (const auto& e : led) {
        j.begin_obj();
        j.key("pole").value(cplx(e.pole));
        j.key("coeffs").begin_obj();
        for (int k = 1; k <= e.part.order; ++k)
            j.key(std::to_string(k)).value(e.part.coef[static_cast<size_t>(k - 1)]);
        j.end_obj();
        j.end_obj();
    }
    j.end_arr();
}

int cmd_examples(const std::string& which, double z, const std::string& output) {
    JsonWriter j;
    header(j, "examples");
    std::vector<std::string> diags;

    StepSet s = which == "kreweras"   ? StepSet::parse("NE,W,S")
                : which == "srw"      ? StepSet::parse("N,E,S,W")
                : which == "infinite" ? StepSet::parse("W,SW,S,NE")
                                      : throw std::invalid_argument("examples: kreweras|srw|infinite");
    if (z <= 0) z = which == "infinite" ? 0.15 : 0.1;
    put_inputs(j, s, z);
    j.key("results").begin_obj();

    Uniformization u = make_uniformization(s, z);
    const Periods& P = u.periods();
    Continuation cont(u, 40);
    j.key("w3_over_w2").value(P.w3 / P.w2);

    j.key("fy_poles").begin_arr();
    for (const auto& pp : cont.fy_poles()) {
        j.begin_obj();
        j.key("pole").value(cplx(pp.pole));
        j.key("order").value(pp.order);
        j.key("coeffs").begin_arr();
        for (int k = 0; k < pp.order; ++k) j.value(pp.coef[static_cast<size_t>(k)]);
        j.end_arr();
        j.end_obj();
    }
    j.end_arr();

    RationalityResult rr = detect_ratio(P);
    j.key("ratio_detected").value(rr.detected);
    if (rr.detected) {
        RatioKL kl{static_cast<int>(rr.k), static_cast<int>(rr.l)};
        j.key("k").value(rr.k);
        j.key("l").value(rr.l);
        j.key("orbit_sum_max").value(cont.orbit_sum_max(kl));
        j.key("classification").value(cont.algebraic(kl) ? "algebraic" : "holonomic-transcendental");
        double t = P.w1.imag();
        Region reg{-1.5 * P.w2, 0.5 * P.w2, -0.5 * t, 0.5 * t};
        j.key("ledger_y");
        put_ledger(j, cont.ledger_y(kl, reg));
    }

    if (which == "kreweras") {
        auto res = kreweras::constants_residuals(u);
        j.key("closed_form_residuals").begin_arr();
        for (double r : res) j.value(r);
        j.end_arr();
        j.key("q00_closed").value(kreweras::q00_closed(z));
        j.key("q00_from_root").value(kreweras::q00_from_root(z));
        cplx w = 0.21 * P.w2 + 0.33 * P.w1;
        j.key("ry_zeta_vs_continuation").value(std::abs(kreweras::ry_zeta(u, w) - cont.ry(w)));
    }
    if (which == "srw" && rr.detected) {
        SeriesEvaluator se(cont, {1, 2});
        SeriesConfig cfg;
        auto cons = se.recover(cfg);
        auto rep = srw::phi_decomposition(cont, se, cons, cfg, 12);
        j.key("phi_decomposition_spread").value(rep.spread);
        j.key("phi_decomposition_periodicity").value(rep.periodicity);
    }
    j.end_obj();
    footer(j, diags);
    emit(j.str(), output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* env = std::getenv("QW_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
    CLI::App app{"quarter-plane walk generating functions via elliptic uniformization"};
    app.require_subcommand(1);

    std::string steps, output, pin, which;
    double z = 0.1, tol = 1e-5, x0 = 0.3;
    int depth = 40, bound = 60, branch = 1;
    long lmax = 64;
    double dtol = 1e-8;
    bool csv = false;

    auto* c_classify = app.add_subcommand("classify", "classify a step set and its group order");
    c_classify->add_option("--steps", steps)->required();
    c_classify->add_option("--bound", bound);
    c_classify->add_option("--output", output);

    auto* c_count = app.add_subcommand("count", "exact path counts by dynamic programming");
    c_count->add_option("--steps", steps)->required();
    c_count->add_option("--depth", depth)->required();
    c_count->add_flag("--csv", csv);
    c_count->add_option("--output", output);

    auto* c_periods = app.add_subcommand("periods", "branch points and periods of the kernel curve");
    c_periods->add_option("--steps", steps)->required();
    c_periods->add_option("--z", z)->required();
    c_periods->add_option("--output", output);

    auto* c_rat = app.add_subcommand("rationality", "detect rational w3/w2 or solve z for a pinned ratio");
    c_rat->add_option("--steps", steps)->required();
    c_rat->add_option("--z", z);
    c_rat->add_option("--pin", pin);
    c_rat->add_option("--lmax", lmax);
    c_rat->add_option("--tol", dtol);
    c_rat->add_option("--output", output);

    auto* c_eval = app.add_subcommand("evaluate", "evaluate a branch of Q(x,0) through the series");
    c_eval->add_option("--steps", steps)->required();
    c_eval->add_option("--z", z)->required();
    c_eval->add_option("--at", x0)->required();
    c_eval->add_option("--branch", branch);
    c_eval->add_option("--tol", tol);
    c_eval->add_option("--depth", depth);
    c_eval->add_option("--output", output);

    auto* c_verify = app.add_subcommand("verify", "cross-validate oracle, series and closed forms");
    c_verify->add_option("--steps", steps)->required();
    c_verify->add_option("--z", z)->required();
    c_verify->add_option("--tol", tol);
    c_verify->add_option("--depth", depth);
    c_verify->add_option("--output", output);

    auto* c_ex = app.add_subcommand("examples", "cross-check reports for the worked models");
    c_ex->add_option("which", which)->required();
    c_ex->add_option("--z", z)->default_val(0.0);
    c_ex->add_option("--output", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (tol < 1e-12) throw std::invalid_argument("--tol below 1e-12");
        if (c_classify->parsed()) return cmd_classify(steps, bound, output);
        if (c_count->parsed()) return cmd_count(steps, depth, csv, output);
        if (c_periods->parsed()) return cmd_periods(steps, z, output);
        if (c_rat->parsed()) return cmd_rationality(steps, z, pin, lmax, dtol, output);
        if (c_eval->parsed()) return cmd_evaluate(steps, z, x0, branch, tol, depth, output);
        if (c_verify->parsed()) return cmd_verify(steps, z, tol, depth, output);
        if (c_ex->parsed()) return cmd_examples(which, c_ex->count("--z") ? z : 0.0, output);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
