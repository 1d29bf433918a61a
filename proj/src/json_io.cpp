#include "ssdcore/json_io.hpp"

#include <set>
#include <sstream>

namespace ssdcore::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double need_number(const json& j, const std::string& field, const std::string& where) {
    if (!j.contains(field) || !j[field].is_number())
        fail("missing or non-numeric field '" + field + "' in " + where);
    return j[field].get<double>();
}

int need_int(const json& j, const std::string& field, const std::string& where) {
    if (!j.contains(field) || !j[field].is_number_integer())
        fail("missing or non-integer field '" + field + "' in " + where);
    return j[field].get<int>();
}

std::vector<double> need_vector(const json& j, const std::string& field, int n,
                                const std::string& where) {
    if (!j.contains(field) || !j[field].is_array() ||
        static_cast<int>(j[field].size()) != n)
        fail("field '" + field + "' in " + where + " must be an array of length " +
             std::to_string(n));
    std::vector<double> out;
    for (const auto& v : j[field]) {
        if (!v.is_number()) fail("non-numeric entry in '" + field + "' in " + where);
        out.push_back(v.get<double>());
    }
    return out;
}

// Iterate an object keyed by coalition strings, requiring every nonempty
// coalition exactly once.
template <typename Fn>
void for_each_coalition(const json& obj, int n, const std::string& where, Fn&& fn) {
    if (!obj.is_object()) fail(where + " must be an object keyed by coalitions");
    std::set<std::uint32_t> seen;
    for (const auto& [key, value] : obj.items()) {
        Coalition s = parse_coalition_key(key, n);
        if (!seen.insert(s.mask).second) fail("duplicate coalition key '" + key + "' in " + where);
        fn(s, value, key);
    }
    for (std::uint32_t m = 1; m < (1u << n); ++m)
        if (!seen.count(m))
            fail("missing coalition '" + Coalition{m}.key(n) + "' in " + where);
}

}  // namespace

Coalition parse_coalition_key(const std::string& key, int n) {
    std::uint32_t mask = 0;
    int last = 0;
    std::stringstream ss(key);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int player = 0;
        try {
            std::size_t pos = 0;
            player = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail("bad coalition key '" + key + "'");
        }
        if (player < 1 || player > n || player <= last)
            fail("coalition key '" + key + "' must list ascending players in 1.." +
                 std::to_string(n));
        last = player;
        mask |= 1u << (player - 1);
    }
    if (mask == 0) fail("empty coalition key");
    return {mask};
}

Distribution parse_distribution_params(const std::string& family, const json& j,
                                       const std::string& where) {
    try {
        if (family == "normal")
            return Normal{need_number(j, "mu", where), need_number(j, "sigma2", where)};
        if (family == "uniform")
            return Uniform{need_number(j, "a", where), need_number(j, "b", where)};
        if (family == "gamma")
            return Gamma{need_number(j, "k", where), need_number(j, "theta", where)};
        if (family == "discrete_uniform") {
            if (!j.contains("realizations") || !j["realizations"].is_array())
                fail("missing 'realizations' array in " + where);
            std::vector<double> r;
            for (const auto& v : j["realizations"]) r.push_back(v.get<double>());
            return DiscreteUniform{std::move(r)};
        }
        if (family == "alpha_cut_uniform")
            return AlphaCutUniform{need_number(j, "a", where), need_number(j, "b", where),
                                   need_number(j, "alpha", where)};
    } catch (const std::invalid_argument& e) {
        fail(where + ": " + e.what());
    }
    fail("unknown family '" + family + "' in " + where);
}

Distribution parse_distribution(const json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        fail("distribution must be an object with a 'family' string");
    return parse_distribution_params(j["family"].get<std::string>(), j, "distribution");
}

json distribution_to_json(const Distribution& d) {
    json j;
    j["family"] = d.family_name();
    switch (d.family()) {
        case Family::Normal:
            j["mu"] = d.as<Normal>().mu;
            j["sigma2"] = d.as<Normal>().sigma2;
            break;
        case Family::Uniform:
            j["a"] = d.as<Uniform>().a;
            j["b"] = d.as<Uniform>().b;
            break;
        case Family::Gamma:
            j["k"] = d.as<Gamma>().k;
            j["theta"] = d.as<Gamma>().theta;
            break;
        case Family::DiscreteUniform:
            j["realizations"] = d.as<DiscreteUniform>().realizations;
            break;
        case Family::AlphaCutUniform:
            j["a"] = d.as<AlphaCutUniform>().a;
            j["b"] = d.as<AlphaCutUniform>().b;
            j["alpha"] = d.as<AlphaCutUniform>().alpha;
            break;
    }
    return j;
}

StochasticGame parse_stochastic_game(const json& j) {
    int n = need_int(j, "players", "game file");
    if (n < 1 || n > kMaxPlayers) fail("players out of range 1..20");
    if (!j.contains("family") || !j["family"].is_string()) fail("game file needs a 'family'");
    std::string family = j["family"].get<std::string>();
    if (!j.contains("coalitions")) fail("game file needs 'coalitions'");

    std::vector<std::optional<Distribution>> slots((std::size_t{1} << n) - 1);
    for_each_coalition(j["coalitions"], n, "'coalitions'",
                       [&](Coalition s, const json& v, const std::string& key) {
                           slots[s.mask - 1] =
                               parse_distribution_params(family, v, "coalition '" + key + "'");
                       });
    std::vector<Distribution> dists;
    dists.reserve(slots.size());
    for (auto& s : slots) dists.push_back(std::move(*s));
    return StochasticGame(n, std::move(dists));
}

json stochastic_game_to_json(const StochasticGame& g) {
    json j;
    j["players"] = g.players();
    j["family"] = g.grand_dist().family_name();
    json coalitions = json::object();
    for (std::uint32_t m = 1; m < (1u << g.players()); ++m) {
        json d = distribution_to_json(g.dist({m}));
        d.erase("family");
        coalitions[Coalition{m}.key(g.players())] = std::move(d);
    }
    j["coalitions"] = std::move(coalitions);
    return j;
}

ClassicalGame parse_classical_values(int n, const json& values, const std::string& where) {
    std::vector<double> v(std::size_t{1} << n, 0.0);
    for_each_coalition(values, n, where, [&](Coalition s, const json& val, const std::string& key) {
        if (!val.is_number()) fail("non-numeric value for coalition '" + key + "' in " + where);
        v[s.mask] = val.get<double>();
    });
    return ClassicalGame(n, std::move(v));
}

ClassicalGame parse_classical_game(const json& j) {
    int n = need_int(j, "players", "game file");
    if (!j.contains("values")) fail("classical game file needs 'values'");
    return parse_classical_values(n, j["values"], "'values'");
}

json classical_game_to_json(const ClassicalGame& g) {
    json j;
    j["players"] = g.players();
    json values = json::object();
    for (std::uint32_t m = 1; m < (1u << g.players()); ++m)
        values[Coalition{m}.key(g.players())] = g.value({m});
    j["values"] = std::move(values);
    return j;
}

Allocation parse_allocation(const json& j, int n) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail("allocation must be an object with a 'type' string");
    std::string type = j["type"].get<std::string>();
    if (type == "r") return RAllocation{need_vector(j, "r", n, "allocation")};
    if (type == "dr")
        return DRAllocation{need_vector(j, "d", n, "allocation"),
                            need_vector(j, "r", n, "allocation")};
    if (type == "dr_signed")
        return DRSignedAllocation{need_vector(j, "d", n, "allocation"),
                                  need_vector(j, "r", n, "allocation")};
    if (type == "unstructured") {
        UnstructuredAllocation a;
        a.mean = need_vector(j, "mean", n, "allocation");
        if (!j.contains("cov") || !j["cov"].is_array() || static_cast<int>(j["cov"].size()) != n)
            fail("allocation 'cov' must be an n x n array");
        for (const auto& row : j["cov"]) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                fail("allocation 'cov' must be an n x n array");
            a.cov.emplace_back();
            for (const auto& v : row) a.cov.back().push_back(v.get<double>());
        }
        return a;
    }
    fail("unknown allocation type '" + type + "'");
}

NewsvendorProblem parse_newsvendor(const json& j) {
    NewsvendorProblem prob;
    prob.n = need_int(j, "players", "newsvendor file");
    if (prob.n < 1 || prob.n > kMaxPlayers) fail("players out of range 1..20");
    prob.p = need_number(j, "p", "newsvendor file");
    prob.c = need_number(j, "c", "newsvendor file");
    if (!j.contains("demand")) fail("newsvendor file needs 'demand'");
    prob.demand.assign(std::size_t{1} << prob.n, {0.0, 0.0});
    for_each_coalition(j["demand"], prob.n, "'demand'",
                       [&](Coalition s, const json& v, const std::string& key) {
                           prob.demand[s.mask] = {need_number(v, "a", "demand '" + key + "'"),
                                                  need_number(v, "b", "demand '" + key + "'")};
                       });
    prob.validate();
    return prob;
}

}  // namespace ssdcore::io
