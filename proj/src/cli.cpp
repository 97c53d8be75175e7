#include "pb/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <ostream>

#include "pb/blowup.hpp"
#include "pb/kiev.hpp"
#include "pb/ode.hpp"

namespace pb {

namespace {

using nlohmann::ordered_json;

ordered_json report_to_json(const Report& r) {
    ordered_json j;
    j["check"] = r.check;
    j["params"] = r.params;
    j["order"] = to_string(r.order);
    j["ok"] = r.ok;
    ordered_json res = ordered_json::array();
    ordered_json rexp = ordered_json::array();
    for (const auto& [e, v] : r.residuals) {
        res.push_back({{"exponent", to_string(e)}, {"value", v.str()}});
        rexp.push_back(to_string(e));
    }
    j["residuals"] = res;
    j["residual_exponents"] = rexp;
    if (!r.metrics.empty()) j["metrics"] = r.metrics;
    j["seconds"] = r.seconds;
    return j;
}

void emit_report(const Report& r, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        out << "field,value\n";
        out << "check," << r.check << "\n";
        for (const auto& [k, v] : r.params) out << "param:" << k << "," << v << "\n";
        out << "order," << to_string(r.order) << "\n";
        out << "ok," << (r.ok ? "true" : "false") << "\n";
        for (const auto& [e, v] : r.residuals)
            out << "residual:" << to_string(e) << "," << v.str() << "\n";
        for (const auto& [k, v] : r.metrics) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << "metric:" << k << "," << buf << "\n";
        }
        out << "seconds," << r.seconds << "\n";
    } else {
        out << report_to_json(r).dump(2) << "\n";
    }
}

ordered_json series_to_json(const GradedSeries& f) {
    ordered_json j;
    j["base"] = to_string(f.base());
    j["order"] = to_string(f.order());
    ordered_json terms = ordered_json::array();
    for (const auto& [k, v] : f.raw())
        terms.push_back({{"step", to_string(make_rational(k, 2))}, {"coeff", v.str()}});
    j["terms"] = terms;
    return j;
}

int sign_of(const std::string& s) {
    if (s == "+" || s == "+1") return 1;
    if (s == "-" || s == "-1") return -1;
    throw std::invalid_argument("sign must be + or -");
}

Sector sector_of(const std::string& s) {
    if (s == "ns") return Sector::NS;
    if (s == "r") return Sector::R;
    throw std::invalid_argument("sector must be ns or r");
}

// Whittaker-norm spot checks used by the suite: a_1 = 1/(2 Delta) and, at
// c = 1, a_2 = (8 Delta + 1)/(4 Delta (4 Delta - 1)^2).
Report check_block_norms() {
    auto t0 = std::chrono::steady_clock::now();
    Report rep;
    rep.check = "block-norms";
    rep.order = 2;
    long idx = 0;
    for (const Rational& d : std::vector<Rational>{make_rational(9, 100), make_rational(3, 7),
                                                   make_rational(5, 2)}) {
        const auto norms = whittaker_norms_cached(ExactScalar(1), ExactScalar(d), 2);
        ExactScalar e1 = norms[1] - ExactScalar(Rational(1) / (2 * d));
        ExactScalar e2 = norms[2] - ExactScalar(Rational(8 * d + 1) /
                                                (4 * d * (4 * d - 1) * (4 * d - 1)));
        if (!e1.is_zero()) rep.residuals.emplace_back(Rational(10 * idx + 1), e1);
        if (!e2.is_zero()) rep.residuals.emplace_back(Rational(10 * idx + 2), e2);
        ++idx;
    }
    rep.ok = rep.residuals.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<Report> run_paper_matrix(bool quick, bool inject) {
    std::vector<Report> reps;
    std::vector<Rational> sigmas{make_rational(3, 10), make_rational(3, 7), make_rational(5, 13)};
    if (quick) sigmas.resize(1);
    long hi = quick ? 4 : 8;

    reps.push_back(check_block_norms());
    for (const Rational& s : sigmas) {
        reps.push_back(verify_tau3(s, hi, quick ? std::vector<long>{0, 1}
                                                : std::vector<long>{-1, 0, 1, 2}));
        reps.push_back(verify_toda_c1(s, hi));
        reps.push_back(verify_okamoto_c1(s, hi));
    }
    reps.push_back(verify_blockquarter(1, 5));
    reps.push_back(verify_blockquarter(-1, 5));
    reps.push_back(verify_hook_bn(4));

    std::vector<std::pair<ExactScalar, ExactScalar>> points{
        {ExactScalar(2), ExactScalar(make_rational(3, 7))},
        {ExactScalar(make_rational(3, 2)), ExactScalar(make_rational(1, 5))}};
    if (quick) points.resize(1);
    for (const auto& [b, P] : points) {
        EmbeddingParams p = EmbeddingParams::create(b, P);
        set_l2_sign_fault(inject);
        reps.push_back(verify_todablock(p, quick ? 3 : 6));
        set_l2_sign_fault(false);
        reps.push_back(verify_okamoto_r(p, quick ? 3 : 10));
        reps.push_back(verify_hatf(p, Sector::NS, quick ? 3 : 4));
        reps.push_back(verify_hatf(p, Sector::R, quick ? 3 : 4));
    }

    reps.push_back(verify_backlund_profd(make_rational(3, 10), Rational(1), quick ? 4 : 6));
    if (!quick) reps.push_back(verify_backlund_profd(make_rational(3, 7), Rational(2), 6));
    reps.push_back(verify_bridge(make_rational(3, 10), 6));
    if (!quick) reps.push_back(verify_bridge(make_rational(3, 7), 6));

    NumericSettings cfg;
    reps.push_back(compare_series_ode(make_rational(3, 10), Rational(1), 0.01, 0.25, cfg));
    NumericSettings tight;  // the 1e-10 deviation bound needs slack below it
    tight.rtol = 1e-12;
    tight.atol = 1e-14;
    reps.push_back(verify_algebraic(1, 0.01, 1.0, tight));
    reps.push_back(verify_algebraic(-1, 0.01, 1.0, tight));
    return reps;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    if (const char* tenv = std::getenv("PB_THREADS")) {
        char* end = nullptr;
        long t = std::strtol(tenv, &end, 10);
        if (!end || *end != '\0' || t <= 0) {
            err << "{\"error\": \"PB_THREADS must be a positive integer\"}\n";
            return 2;
        }
        // Computations are deterministic and sequential; the value only caps
        // hypothetical worker pools and never changes results.
    }

    CLI::App app{"Painleve III(D8) tau functions, conformal block expansions and their exact checks"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::function<int()> action;

    // ---- block ----
    auto* cmd_block = app.add_subcommand("block", "Whittaker-normalized block series");
    {
        auto c = std::make_shared<std::string>("1");
        auto delta = std::make_shared<std::string>();
        auto order = std::make_shared<long>(0);
        cmd_block->add_option("--c", *c, "central charge (exact scalar)");
        cmd_block->add_option("--delta", *delta, "highest weight (rational)")->required();
        cmd_block->add_option("--order", *order)->required();
        cmd_block->callback([&, c, delta, order] {
            action = [&, c, delta, order] {
                GradedSeries f =
                    block_series(ExactScalar::parse(*c), parse_rational(*delta), *order);
                ordered_json j = series_to_json(f);
                j["check"] = "block";
                out << j.dump(2) << "\n";
                return 0;
            };
        });
    }

    // ---- nsr-block ----
    auto* cmd_nsr = app.add_subcommand("nsr-block", "NSR Whittaker block series");
    {
        auto sector = std::make_shared<std::string>();
        auto c = std::make_shared<std::string>();
        auto p = std::make_shared<std::string>();
        auto order = std::make_shared<long>(0);
        cmd_nsr->add_option("--sector", *sector)->required()->check(CLI::IsMember({"ns", "r"}));
        cmd_nsr->add_option("--cnsr", *c, "NSR central charge (exact scalar)")->required();
        cmd_nsr->add_option("--p", *p, "momentum (exact scalar)")->required();
        cmd_nsr->add_option("--order", *order)->required();
        cmd_nsr->callback([&, sector, c, p, order] {
            action = [&, sector, c, p, order] {
                NSRParams np{ExactScalar::parse(*c), ExactScalar::parse(*p), sector_of(*sector)};
                GradedSeries f = nsr_block_series(np, Rational(*order));
                ordered_json j = series_to_json(f);
                j["check"] = "nsr-block";
                j["delta"] = np.delta().str();
                out << j.dump(2) << "\n";
                return 0;
            };
        });
    }

    // ---- tau ----
    auto* cmd_tau = app.add_subcommand("tau", "tau-function expansion");
    {
        auto sigma = std::make_shared<std::string>();
        auto stilde = std::make_shared<std::string>("1");
        auto order = std::make_shared<long>(0);
        auto evals = std::make_shared<std::vector<double>>();
        auto half = std::make_shared<bool>(false);
        cmd_tau->add_option("--sigma", *sigma)->required();
        cmd_tau->add_option("--stilde", *stilde);
        cmd_tau->add_option("--order", *order)->required();
        cmd_tau->add_option("--eval-at", *evals, "z values for numeric evaluation");
        cmd_tau->add_flag("--half", *half, "emit the Backlund partner instead");
        cmd_tau->callback([&, sigma, stilde, order, evals, half] {
            action = [&, sigma, stilde, order, evals, half] {
                Rational s = parse_rational(*sigma), st = parse_rational(*stilde);
                TauSeries t = *half ? tau_half_series(s, st, *order) : tau_series(s, st, *order);
                ordered_json j;
                j["check"] = *half ? "tau-half" : "tau";
                j["sigma"] = to_string(t.sigma);
                j["stilde"] = to_string(t.stilde);
                j["normalization"] = "leading coefficient 1 at z^(sigma^2)";
                j["window"] = t.window;
                j["order"] = to_string(t.combined.order());
                ordered_json terms = ordered_json::array();
                for (const auto& [e, v] : t.combined.terms())
                    terms.push_back({{"exponent", to_string(e)}, {"coeff", v.str()}});
                j["combined"] = terms;
                if (!evals->empty()) {
                    long w = 0;
                    for (long n : t.window) w = std::max(w, std::abs(n));
                    TauEvaluator ev(t.sigma, t.stilde, *order, w);
                    ordered_json ej = ordered_json::array();
                    for (double z : *evals) {
                        Cplx v = ev.tau(z);
                        ej.push_back({{"z", z}, {"re", v.real()}, {"im", v.imag()}});
                    }
                    j["evaluations"] = ej;
                    j["precision"] = "double";
                }
                out << j.dump(2) << "\n";
                return 0;
            };
        });
    }

    // ---- ln ----
    auto* cmd_ln = app.add_subcommand("ln", "decomposition coefficient squared");
    {
        auto sector = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto p = std::make_shared<std::string>();
        auto n = std::make_shared<std::string>();
        cmd_ln->add_option("--sector", *sector)->required()->check(CLI::IsMember({"ns", "r"}));
        cmd_ln->add_option("--b", *b)->required();
        cmd_ln->add_option("--p", *p)->required();
        cmd_ln->add_option("--n", *n, "ladder shift (rational)")->required();
        cmd_ln->callback([&, sector, b, p, n] {
            action = [&, sector, b, p, n] {
                EmbeddingParams ep =
                    EmbeddingParams::create(ExactScalar::parse(*b), ExactScalar::parse(*p));
                Rational nn = parse_rational(*n);
                ExactScalar v = (sector_of(*sector) == Sector::NS) ? ln_squared_ns(ep, nn)
                                                                   : ln_squared_r(ep, nn);
                ordered_json j;
                j["check"] = "ln";
                j["sector"] = *sector;
                j["n"] = to_string(nn);
                j["lsq"] = v.str();
                out << j.dump(2) << "\n";
                return 0;
            };
        });
    }

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "exact identity checks");
    cmd_verify->require_subcommand(1);
    auto report_action = [&](std::function<Report()> make) {
        action = [&, make] {
            Report r = make();
            emit_report(r, format, out);
            return r.ok ? 0 : 1;
        };
    };
    {
        auto* v = cmd_verify->add_subcommand("tau3", "bilinear fourth-order identity");
        auto sigma = std::make_shared<std::string>();
        auto order = std::make_shared<long>(8);
        auto ms = std::make_shared<std::vector<long>>(std::vector<long>{0});
        auto window = std::make_shared<long>(-1);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--order", *order);
        v->add_option("--m", *ms, "powers to check");
        v->add_option("--window", *window, "explicit shift window halfwidth");
        v->callback([&, sigma, order, ms, window] {
            report_action([sigma, order, ms, window] {
                return verify_tau3(parse_rational(*sigma), *order, *ms, *window);
            });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("toda-c1", "Toda-like identities (m = 0, 1)");
        auto sigma = std::make_shared<std::string>();
        auto order = std::make_shared<long>(8);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--order", *order);
        v->callback([&, sigma, order] {
            report_action([sigma, order] { return verify_toda_c1(parse_rational(*sigma), *order); });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("okamoto-c1", "Okamoto-like identities");
        auto sigma = std::make_shared<std::string>();
        auto order = std::make_shared<long>(8);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--order", *order);
        v->callback([&, sigma, order] {
            report_action(
                [sigma, order] { return verify_okamoto_c1(parse_rational(*sigma), *order); });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("blockquarter", "quarter-weight resummation");
        auto sign = std::make_shared<std::string>("+");
        auto order = std::make_shared<long>(5);
        v->add_option("--sign", *sign);
        v->add_option("--order", *order);
        v->callback([&, sign, order] {
            report_action([sign, order] { return verify_blockquarter(sign_of(*sign), *order); });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("hook-bn", "hook-length form of B_n");
        auto nmax = std::make_shared<long>(4);
        v->add_option("--n-max", *nmax);
        v->callback([&, nmax] { report_action([nmax] { return verify_hook_bn(*nmax); }); });
    }
    {
        auto* v = cmd_verify->add_subcommand("backlund", "zeta' zeta1' = z");
        auto sigma = std::make_shared<std::string>();
        auto stilde = std::make_shared<std::string>("1");
        auto order = std::make_shared<long>(6);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--stilde", *stilde);
        v->add_option("--order", *order);
        v->callback([&, sigma, stilde, order] {
            report_action([sigma, stilde, order] {
                return verify_backlund_profd(parse_rational(*sigma), parse_rational(*stilde),
                                             *order);
            });
        });
    }
    auto embed_args = [](CLI::App* v) {
        struct E {
            std::shared_ptr<std::string> b = std::make_shared<std::string>();
            std::shared_ptr<std::string> p = std::make_shared<std::string>();
            std::shared_ptr<long> order = std::make_shared<long>(4);
        } e;
        v->add_option("--b", *e.b)->required();
        v->add_option("--p", *e.p)->required();
        v->add_option("--order", *e.order);
        return e;
    };
    {
        auto* v = cmd_verify->add_subcommand("blowup-ns", "NS bilinear blowup identity");
        auto e = embed_args(v);
        v->callback([&, e] {
            report_action([e] {
                return verify_todablock(
                    EmbeddingParams::create(ExactScalar::parse(*e.b), ExactScalar::parse(*e.p)),
                    *e.order);
            });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("blowup-r", "R bilinear blowup identities");
        auto e = embed_args(v);
        auto window = std::make_shared<std::string>("-1");
        v->add_option("--window", *window, "largest |n| in the shift sum (rational)");
        v->callback([&, e, window] {
            report_action([e, window] {
                return verify_okamoto_r(
                    EmbeddingParams::create(ExactScalar::parse(*e.b), ExactScalar::parse(*e.p)),
                    *e.order, parse_rational(*window));
            });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("hatf-ns", "NS decomposition vs direct block");
        auto e = embed_args(v);
        v->callback([&, e] {
            report_action([e] {
                return verify_hatf(
                    EmbeddingParams::create(ExactScalar::parse(*e.b), ExactScalar::parse(*e.p)),
                    Sector::NS, *e.order);
            });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("hatf-r", "R decomposition vs direct block");
        auto e = embed_args(v);
        v->callback([&, e] {
            report_action([e] {
                return verify_hatf(
                    EmbeddingParams::create(ExactScalar::parse(*e.b), ExactScalar::parse(*e.p)),
                    Sector::R, *e.order);
            });
        });
    }
    {
        auto* v = cmd_verify->add_subcommand("bridge",
                                             "coefficient ratios vs decomposition weights");
        auto sigma = std::make_shared<std::string>();
        auto tn = std::make_shared<long>(6);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--two-n-max", *tn);
        v->callback([&, sigma, tn] {
            report_action([sigma, tn] { return verify_bridge(parse_rational(*sigma), *tn); });
        });
    }

    // ---- ode ----
    auto* cmd_ode = app.add_subcommand("ode", "numeric integration checks");
    cmd_ode->require_subcommand(1);
    {
        auto* v = cmd_ode->add_subcommand("compare", "series seed vs integrated flow");
        auto sigma = std::make_shared<std::string>();
        auto stilde = std::make_shared<std::string>("1");
        auto z0 = std::make_shared<double>(0.01);
        auto z1 = std::make_shared<double>(0.25);
        auto rtol = std::make_shared<double>(1e-10);
        auto order = std::make_shared<long>(12);
        auto window = std::make_shared<long>(4);
        v->add_option("--sigma", *sigma)->required();
        v->add_option("--stilde", *stilde);
        v->add_option("--z0", *z0);
        v->add_option("--z1", *z1);
        v->add_option("--rtol", *rtol);
        v->add_option("--order", *order);
        v->add_option("--window", *window);
        v->callback([&, sigma, stilde, z0, z1, rtol, order, window] {
            report_action([sigma, stilde, z0, z1, rtol, order, window] {
                NumericSettings cfg;
                cfg.rtol = *rtol;
                cfg.atol = *rtol * 1e-2;
                return compare_series_ode(parse_rational(*sigma), parse_rational(*stilde), *z0,
                                          *z1, cfg, *order, *window);
            });
        });
    }
    {
        auto* v = cmd_ode->add_subcommand("algebraic", "algebraic solution check");
        auto sign = std::make_shared<std::string>("+");
        auto z0 = std::make_shared<double>(0.01);
        auto z1 = std::make_shared<double>(1.0);
        auto rtol = std::make_shared<double>(1e-12);
        v->add_option("--sign", *sign);
        v->add_option("--z0", *z0);
        v->add_option("--z1", *z1);
        v->add_option("--rtol", *rtol);
        v->callback([&, sign, z0, z1, rtol] {
            report_action([sign, z0, z1, rtol] {
                NumericSettings cfg;
                cfg.rtol = *rtol;
                cfg.atol = *rtol * 1e-2;
                return verify_algebraic(sign_of(*sign), *z0, *z1, cfg);
            });
        });
    }

    // ---- suite ----
    auto* cmd_suite = app.add_subcommand("suite", "run the whole verification matrix");
    {
        auto name = std::make_shared<std::string>("paper-all");
        auto quick = std::make_shared<bool>(false);
        auto inject = std::make_shared<bool>(false);
        cmd_suite->add_option("name", *name)->check(CLI::IsMember({"paper-all"}));
        cmd_suite->add_flag("--quick", *quick, "reduced orders (smoke test)");
        cmd_suite->add_flag("--inject-sign-error", *inject,
                            "flip one decomposition sign to demonstrate failure localization");
        cmd_suite->callback([&, name, quick, inject] {
            action = [&, name, quick, inject] {
                std::vector<Report> reps = run_paper_matrix(*quick, *inject);
                bool all_ok = true;
                for (const Report& r : reps) all_ok = all_ok && r.ok;
                if (format == "csv") {
                    out << "check,params,ok\n";
                    for (const Report& r : reps) {
                        std::string ps;
                        for (const auto& [k, v] : r.params)
                            ps += (ps.empty() ? "" : " ") + k + "=" + v;
                        out << r.check << "," << ps << "," << (r.ok ? "true" : "false") << "\n";
                    }
                    out << "suite," << *name << "," << (all_ok ? "true" : "false") << "\n";
                } else {
                    ordered_json j;
                    j["suite"] = *name;
                    j["ok"] = all_ok;
                    ordered_json arr = ordered_json::array();
                    for (const Report& r : reps) arr.push_back(report_to_json(r));
                    j["reports"] = arr;
                    out << j.dump(2) << "\n";
                }
                return all_ok ? 0 : 1;
            };
        });
    }

    std::vector<const char*> argv;
    argv.push_back("pb");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        ordered_json j;
        j["error"] = e.what();
        err << j.dump(2) << "\n";
        return 2;
    }
}

}  // namespace pb
