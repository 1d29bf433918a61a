#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ssdcore/classical_game.hpp"
#include "ssdcore/json_io.hpp"
#include "ssdcore/lp.hpp"
#include "ssdcore/newsvendor.hpp"
#include "ssdcore/ssd.hpp"
#include "ssdcore/stochastic_game.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;
using namespace ssdcore;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load_json(const std::string& source) {
    std::string text;
    if (!source.empty() && (source[0] == '{' || source[0] == '[')) {
        text = source;
    } else {
        std::ifstream in(source);
        if (!in) throw InputError("cannot open '" + source + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in '" + source + "': " + e.what());
    }
}

struct GlobalOpts {
    double tolerance = 1e-9;
    std::string output = "json";
    unsigned long long seed = 0;
    bool fail_on_empty = false;
};

void emit(const ordered_json& report, const GlobalOpts& g, const std::string& text) {
    if (g.output == "json")
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

ordered_json report_header(const std::string& command, const GlobalOpts& g) {
    ordered_json r;
    r["command"] = command;
    r["version"] = kVersion;
    r["tolerance"] = g.tolerance;
    return r;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string vec_text(const std::vector<double>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out + ")";
}

// ---- ssd compare -----------------------------------------------------------

int run_ssd_compare(const std::string& left, const std::string& right, bool numeric,
                    const GlobalOpts& g) {
    Distribution x = io::parse_distribution(load_json(left));
    Distribution y = io::parse_distribution(load_json(right));
    ordered_json rep = report_header("ssd compare", g);
    rep["left"] = io::distribution_to_json(x);
    rep["right"] = io::distribution_to_json(y);
    std::string text;
    if (x.family() == y.family()) {
        SsdVerdict v = compare(x, y);
        rep["verdict"] = to_string(v);
        text += std::string("verdict: ") + to_string(v) + "\n";
    } else {
        rep["verdict"] = nullptr;
        text += "verdict: (cross-family, closed form unavailable)\n";
        if (!numeric) throw InputError("cross-family comparison requires --numeric");
    }
    if (numeric) {
        NumericResult fwd = dominates_numeric(x, y);
        NumericResult back = dominates_numeric(y, x);
        auto nv = [](NumericVerdict v) {
            switch (v) {
                case NumericVerdict::Dominates: return "dominates";
                case NumericVerdict::DoesNotDominate: return "does_not_dominate";
                default: return "borderline";
            }
        };
        rep["numeric"] = {
            {"left_over_right",
             {{"verdict", nv(fwd.verdict)}, {"max_integral", fwd.max_integral},
              {"argmax", fwd.argmax}, {"tau", fwd.tau}}},
            {"right_over_left",
             {{"verdict", nv(back.verdict)}, {"max_integral", back.max_integral},
              {"argmax", back.argmax}, {"tau", back.tau}}}};
        text += "numeric left>=right: " + std::string(nv(fwd.verdict)) +
                " max_integral=" + fmt(fwd.max_integral) + " at u=" + fmt(fwd.argmax) + "\n";
        text += "numeric right>=left: " + std::string(nv(back.verdict)) +
                " max_integral=" + fmt(back.max_integral) + " at u=" + fmt(back.argmax) + "\n";
    }
    emit(rep, g, text);
    return 0;
}

// ---- game analyze ----------------------------------------------------------

ordered_json witness_json(const DrWitness& w) {
    return {{"d", w.d}, {"r", w.r}};
}

int finish_analysis(ordered_json& rep, bool nonempty, const GlobalOpts& g, std::string text,
                    const std::string& report_path) {
    rep["nonempty"] = nonempty;
    text = std::string("ssd-core ") + (nonempty ? "nonempty" : "empty") + "\n" + text;
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw InputError("cannot write report '" + report_path + "'");
        out << rep.dump(2) << "\n";
    }
    emit(rep, g, text);
    return (!nonempty && g.fail_on_empty) ? 1 : 0;
}

int analyze_derived(const json& j, const std::string& type, const GlobalOpts& g,
                    const std::string& report_path) {
    int n = j["players"].get<int>();
    ClassicalGame mean_g = io::parse_classical_values(n, j.at("mean"), "'mean'");
    ClassicalGame lower_g = io::parse_classical_values(n, j.at("lower"), "'lower'");
    ordered_json rep = report_header("game analyze", g);
    rep["input_kind"] = "derived_games";
    rep["allocation_type"] = type;
    rep["mean_core_nonempty"] = core_nonempty(mean_g, g.tolerance).has_value();
    rep["lower_core_nonempty"] = core_nonempty(lower_g, g.tolerance).has_value();
    std::string text = "mean core nonempty: " +
                       std::string(rep["mean_core_nonempty"].get<bool>() ? "yes" : "no") +
                       "\nlower-bound core nonempty: " +
                       std::string(rep["lower_core_nonempty"].get<bool>() ? "yes" : "no") + "\n";
    if (type == "dr") {
        auto w = dr_condition_feasible(mean_g, lower_g, g.tolerance);
        if (w) {
            rep["witness"] = witness_json(*w);
            text += "witness d=" + vec_text(w->d) + " r=" + vec_text(w->r) + "\n";
        }
        return finish_analysis(rep, w.has_value(), g, text, report_path);
    }
    if (type == "dr-signed") {
        auto d = core_nonempty(mean_g, g.tolerance);
        auto x = core_nonempty(lower_g, g.tolerance);
        bool ok = d && x;
        if (ok) {
            double gap = mean_g.grand_value() - lower_g.grand_value();
            DrWitness w;
            w.d = *d;
            if (gap > g.tolerance) {
                for (std::size_t i = 0; i < d->size(); ++i)
                    w.r.push_back(((*d)[i] - (*x)[i]) / gap);
            } else {
                w.r.assign(d->size(), 1.0 / static_cast<double>(d->size()));
            }
            rep["witness"] = witness_json(w);
            text += "witness d=" + vec_text(w.d) + " r=" + vec_text(w.r) + "\n";
        }
        return finish_analysis(rep, ok, g, text, report_path);
    }
    throw InputError("derived-game input supports allocation types dr and dr-signed only");
}

int run_game_analyze(const std::string& input, const std::string& type, const GlobalOpts& g,
                     const std::string& report_path) {
    json j = load_json(input);
    if (j.contains("mean") && j.contains("lower"))
        return analyze_derived(j, type, g, report_path);

    StochasticGame game = io::parse_stochastic_game(j);
    ordered_json rep = report_header("game analyze", g);
    rep["input_kind"] = "stochastic_game";
    rep["allocation_type"] = type;
    rep["players"] = game.players();
    rep["family"] = game.grand_dist().family_name();
    std::string text;

    if (type == "r") {
        auto r = dc_nonempty_r(game, g.tolerance);
        if (r) {
            rep["witness"] = ordered_json{{"r", *r}};
            text += "witness r=" + vec_text(*r) + "\n";
        }
        return finish_analysis(rep, r.has_value(), g, text, report_path);
    }
    if (type == "dr") {
        if (game.family() == Family::Normal) {
            auto w = dc_nonempty_dr_normal(game, g.tolerance);
            ClassicalGame mu = mean_game(game);
            rep["mean_core_nonempty"] = core_nonempty(mu, g.tolerance).has_value();
            if (w) {
                rep["witness"] = witness_json(*w);
                text += "witness d=" + vec_text(w->d) + " r=" + vec_text(w->r) + "\n";
            }
            return finish_analysis(rep, w.has_value(), g, text, report_path);
        }
        if (game.family() == Family::Uniform) {
            UniformDecisionReport u = dc_nonempty_dr_uniform(game, g.tolerance);
            rep["mean_core_nonempty"] = u.mean_core_nonempty;
            rep["lower_core_nonempty"] = u.lower_core_nonempty;
            rep["lower_convex"] = u.lower_convex;
            rep["theorem_consistent"] = u.theorem_consistent;
            text += std::string("lower-bound game convex: ") + (u.lower_convex ? "yes" : "no") +
                    "\n";
            if (u.witness) {
                rep["witness"] = witness_json(*u.witness);
                text += "witness d=" + vec_text(u.witness->d) + " r=" + vec_text(u.witness->r) +
                        "\n";
            }
            return finish_analysis(rep, u.nonempty, g, text, report_path);
        }
        throw InputError("allocation type dr supports normal and uniform families");
    }
    if (type == "dr-signed") {
        auto w = dc_nonempty_dr_signed(game, g.tolerance);
        if (w) {
            rep["witness"] = witness_json(*w);
            text += "witness d=" + vec_text(w->d) + " r=" + vec_text(w->r) + "\n";
        }
        return finish_analysis(rep, w.has_value(), g, text, report_path);
    }
    throw InputError("unknown allocation type '" + type + "'");
}

// ---- game check ------------------------------------------------------------

int run_game_check(const std::string& input, const std::string& alloc_path,
                   const GlobalOpts& g) {
    StochasticGame game = io::parse_stochastic_game(load_json(input));
    Allocation alloc = io::parse_allocation(load_json(alloc_path), game.players());
    MembershipReport m = dc_membership_report(game, alloc, g.tolerance);
    ordered_json rep = report_header("game check", g);
    rep["member"] = m.member;
    if (!m.failure.empty()) rep["failure"] = m.failure;
    ordered_json checks = ordered_json::array();
    std::string text = std::string("member: ") + (m.member ? "yes" : "no") + "\n";
    if (!m.failure.empty()) text += "failure: " + m.failure + "\n";
    for (const auto& c : m.checks) {
        ordered_json e;
        e["coalition"] = c.s.key(game.players());
        e["ok"] = c.ok;
        if (!c.ok) e["violated"] = c.violated;
        checks.push_back(std::move(e));
        text += "  " + c.s.key(game.players()) + ": " + (c.ok ? "ok" : ("VIOLATED " + c.violated)) +
                "\n";
    }
    rep["checks"] = std::move(checks);
    emit(rep, g, text);
    return (!m.member && g.fail_on_empty) ? 1 : 0;
}

// ---- newsvendor ------------------------------------------------------------

ordered_json cooperation_json(const NewsvendorProblem& prob, const CooperationReport& r) {
    ordered_json rep;
    rep["feasible"] = r.feasible;
    if (r.r) rep["r"] = *r.r;
    ordered_json coalitions = ordered_json::array();
    for (std::uint32_t m = 1; m < (1u << prob.n); ++m) {
        Coalition s{m};
        coalitions.push_back({{"coalition", s.key(prob.n)},
                              {"protection", r.protection[m]},
                              {"market_quality", r.market_quality[m]}});
    }
    rep["coalitions"] = std::move(coalitions);
    ordered_json binding = ordered_json::array();
    for (Coalition s : r.binding) binding.push_back(s.key(prob.n));
    rep["binding"] = std::move(binding);
    return rep;
}

int run_newsvendor_analyze(const std::string& input, const GlobalOpts& g) {
    NewsvendorProblem prob = io::parse_newsvendor(load_json(input));
    CooperationReport r = cooperation_feasible(prob, g.tolerance);
    ordered_json rep = report_header("newsvendor analyze", g);
    rep["players"] = prob.n;
    rep["p"] = prob.p;
    rep["c"] = prob.c;
    rep["analysis"] = cooperation_json(prob, r);
    std::string text = std::string("cooperation feasible: ") + (r.feasible ? "yes" : "no") + "\n";
    if (r.r) text += "witness r=" + vec_text(*r.r) + "\n";
    text += "coalition       protection   market_quality\n";
    for (std::uint32_t m = 1; m < (1u << prob.n); ++m) {
        Coalition s{m};
        char line[128];
        std::snprintf(line, sizeof(line), "%-14s %12s %14s\n", s.key(prob.n).c_str(),
                      fmt(r.protection[m]).c_str(), fmt(r.market_quality[m]).c_str());
        text += line;
    }
    if (!r.binding.empty()) {
        text += "binding:";
        for (Coalition s : r.binding) text += " " + s.key(prob.n);
        text += "\n";
    }
    emit(rep, g, text);
    return (!r.feasible && g.fail_on_empty) ? 1 : 0;
}

int run_newsvendor_export(const std::string& input, const std::string& coalition_key,
                          int points) {
    NewsvendorProblem prob = io::parse_newsvendor(load_json(input));
    Coalition s = io::parse_coalition_key(coalition_key, prob.n);
    StochasticGame game = build_game(prob);
    const Distribution& d = game.dist(s);
    const auto& acu = d.as<AlphaCutUniform>();
    double width = acu.b - acu.a;
    double lo = acu.a - 0.05 * width;
    double hi = acu.b + 0.05 * width;
    std::cout << "x,F\n";
    for (int i = 0; i <= points; ++i) {
        double x = lo + (hi - lo) * i / points;
        std::cout << fmt(x) << "," << fmt(d.cdf(x)) << "\n";
    }
    return 0;
}

// ---- selftest --------------------------------------------------------------

struct SelftestRunner {
    int failures = 0;
    void check(const std::string& name, bool ok) {
        std::printf("%-58s %s\n", name.c_str(), ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    }
};

ClassicalGame example_lower_game() {
    // Three players; only {1,2}, {2,3} and N have value 3.
    std::vector<double> v(8, 0.0);
    v[0b011] = 3.0;
    v[0b110] = 3.0;
    v[0b111] = 3.0;
    return ClassicalGame(3, std::move(v));
}

ClassicalGame example_mean_game(double mu2, double mu_n) {
    auto g = example_lower_game();
    g.set_value(Coalition::singleton(0), 5.0);
    g.set_value(Coalition::singleton(1), mu2);
    g.set_value(Coalition::singleton(2), 5.0);
    g.set_value(Coalition::full(3), mu_n);
    return g;
}

int run_selftest(const GlobalOpts& g) {
    SelftestRunner t;
    double tol = g.tolerance;

    // Three-player worked instance: original data infeasible, relaxed data
    // feasible with the known witness.
    {
        auto lower = example_lower_game();
        auto mean0 = example_mean_game(2.0, 12.0);
        auto mean1 = example_mean_game(5.0, 15.0);
        t.check("three-player dr conditions infeasible",
                !dr_condition_feasible(mean0, lower, tol));
        auto w = dr_condition_feasible(mean1, lower, tol);
        t.check("relaxed instance feasible", w.has_value());
        PayoffVector d = {5.0, 5.0, 5.0};
        PayoffVector r = {5.0 / 12, 2.0 / 12, 5.0 / 12};
        bool manual_ok = true;
        double gap = mean1.grand_value() - lower.grand_value();
        for (std::uint32_t m = 1; m < 8; ++m) {
            Coalition s{m};
            double ds = coalition_sum(d, s), rs = coalition_sum(r, s);
            if (ds < mean1.value(s) - 1e-9) manual_ok = false;
            if (ds < lower.value(s) + rs * gap - 1e-9) manual_ok = false;
        }
        t.check("known witness satisfies all constraints", manual_ok);
        t.check("lower-bound game not convex", !lower.is_convex());
        t.check("lower-bound game superadditive", lower.is_superadditive());
        auto mu_core = core_nonempty(example_mean_game(2.0, 12.0), tol);
        t.check("mean core point found", mu_core.has_value());
        t.check("lower core min of player 2 is 3",
                std::abs(core_min_coordinate(lower, 1, tol) - 3.0) < 1e-7);
    }

    // Two-player normal game with a high-variance grand coalition.
    {
        std::vector<Distribution> dists = {Normal{10.0, 1.0}, Normal{10.0, 1.0},
                                           Normal{2.0, 10.0}};
        StochasticGame game(2, std::move(dists));
        t.check("normal dr core empty", !dc_nonempty_dr_normal(game, tol));
        t.check("undominated membership accepts skewed allocation",
                udc_membership_dr(game, {11.0, -9.0}, {0.95, 0.05}, tol));
        t.check("undominated membership accepts mirrored allocation",
                udc_membership_dr(game, {-9.0, 11.0}, {0.05, 0.95}, tol));
        t.check("undominated membership rejects naive split",
                !udc_membership_dr(game, {1.0, 1.0}, {0.5, 0.5}, tol));
    }

    // SSD comparator spot checks.
    {
        t.check("uniform dominance [2,4] over [0,4]",
                dominates_closed_form(Distribution(Uniform{2, 4}), Distribution(Uniform{0, 4})));
        t.check("normal incomparable pair",
                compare(Distribution(Normal{11.0, 9.025}), Distribution(Normal{10.0, 1.0})) ==
                    SsdVerdict::Incomparable);
        Distribution scaled = Distribution(AlphaCutUniform{-6, 10, 0.5})
                                  .affine_image(0.5 * Distribution(AlphaCutUniform{-6, 10, 0.5})
                                                          .mean(),
                                                0.5);
        const auto& sp = scaled.as<AlphaCutUniform>();
        t.check("alpha-cut pure scaling", std::abs(sp.a + 3.0) < 1e-12 &&
                                              std::abs(sp.b - 5.0) < 1e-12 &&
                                              std::abs(sp.alpha - 0.5) < 1e-12);
    }

    // Newsvendor worked instance and its no-pooling variant.
    {
        NewsvendorProblem prob;
        prob.n = 2;
        prob.p = 2.0;
        prob.c = 1.0;
        prob.demand.assign(4, {0.0, 0.0});
        prob.demand[1] = {0.0, 10.0};
        prob.demand[2] = {0.0, 10.0};
        prob.demand[3] = {2.0, 18.0};
        auto rep = cooperation_feasible(prob, tol);
        bool in_band = rep.feasible && rep.r && (*rep.r)[0] >= 5.0 / 12 - 1e-9 &&
                       (*rep.r)[0] <= 5.0 / 6 + 1e-9 && (*rep.r)[1] >= 5.0 / 12 - 1e-9 &&
                       (*rep.r)[1] <= 5.0 / 6 + 1e-9;
        t.check("two-vendor pooling cooperative", in_band);
        auto direct = cooperation_feasible_direct(prob, tol);
        t.check("direct formulation agrees", direct.feasible == rep.feasible);
        prob.demand[3] = {0.0, 10.0};
        t.check("no pooling benefit blocks cooperation",
                !cooperation_feasible(prob, tol).feasible);
    }

    // Process walk hand trace, n = 2.
    {
        std::vector<double> a = {0.0, 0.0, 0.0, 1.0};
        ClassicalGame lower(2, std::move(a));
        auto res = process_p({1.5, 1.5}, lower, 3.0, tol);
        t.check("constructive walk reaches (0,1)",
                std::abs(res.x[0]) < 1e-9 && std::abs(res.x[1] - 1.0) < 1e-9);
        t.check("risk shares (0.75,0.25)",
                std::abs(res.r[0] - 0.75) < 1e-9 && std::abs(res.r[1] - 0.25) < 1e-9);
    }

    std::printf("%s\n", t.failures == 0 ? "all self tests passed" : "SELF TEST FAILURES");
    return t.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSD-core analysis of stochastic cooperative games"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--tolerance", g.tolerance, "numeric tolerance")->capture_default_str();
    app.add_option("--output", g.output, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized harnesses");
    app.add_flag("--fail-on-empty", g.fail_on_empty,
                 "exit 1 when the analyzed core/condition set is empty");

    auto* ssd_cmd = app.add_subcommand("ssd", "stochastic dominance comparisons");
    auto* cmp = ssd_cmd->add_subcommand("compare", "compare two distributions");
    std::string left, right;
    bool numeric = false;
    cmp->add_option("--left", left, "left distribution (JSON file or literal)")->required();
    cmp->add_option("--right", right, "right distribution (JSON file or literal)")->required();
    cmp->add_flag("--numeric", numeric, "also run the numeric integral oracle");

    auto* game_cmd = app.add_subcommand("game", "stochastic game analyses");
    auto* analyze = game_cmd->add_subcommand("analyze", "decide SSD-core nonemptiness");
    std::string ga_input, ga_type = "dr", ga_report;
    analyze->add_option("--input", ga_input, "game file")->required();
    analyze->add_option("--allocation-type", ga_type, "r, dr, or dr-signed")
        ->check(CLI::IsMember({"r", "dr", "dr-signed"}));
    analyze->add_option("--report", ga_report, "also write the JSON report to this path");
    auto* check = game_cmd->add_subcommand("check", "check SSD-core membership");
    std::string gc_input, gc_alloc;
    check->add_option("--input", gc_input, "game file")->required();
    check->add_option("--allocation", gc_alloc, "allocation file")->required();

    auto* nv_cmd = app.add_subcommand("newsvendor", "multiple newsvendors analyses");
    auto* nv_an = nv_cmd->add_subcommand("analyze", "decide cooperation feasibility");
    std::string nv_input;
    nv_an->add_option("--input", nv_input, "problem file")->required();
    auto* nv_ex = nv_cmd->add_subcommand("export-cdf", "emit profit CDF samples as CSV");
    std::string ex_input, ex_coalition;
    int ex_points = 200;
    nv_ex->add_option("--input", ex_input, "problem file")->required();
    nv_ex->add_option("--coalition", ex_coalition, "coalition key, e.g. 1,2")->required();
    nv_ex->add_option("--points", ex_points, "grid intervals")->check(CLI::PositiveNumber);

    auto* selftest = app.add_subcommand("selftest", "run the built-in golden suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmp->parsed()) return run_ssd_compare(left, right, numeric, g);
        if (analyze->parsed()) return run_game_analyze(ga_input, ga_type, g, ga_report);
        if (check->parsed()) return run_game_check(gc_input, gc_alloc, g);
        if (nv_an->parsed()) return run_newsvendor_analyze(nv_input, g);
        if (nv_ex->parsed()) return run_newsvendor_export(ex_input, ex_coalition, ex_points);
        if (selftest->parsed()) return run_selftest(g);
        std::cerr << "no subcommand given\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
