#include "qtp/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qtp {

using nlohmann::json;

DetectorKernel KernelConfig::build() const {
    if (type == "exponential") return kernel_exponential(A, gamma0, gamma1);
    if (type == "kallen_lehmann")
        return kernel_kallen_lehmann(mu0_sq, bump_width, amplitude);
    if (type == "pointlike") return kernel_pointlike(B, tau);
    throw ValidationError("detector kernel type must be exponential, "
                          "kallen_lehmann or pointlike; got '" + type + "'");
}

namespace {

const std::set<std::string> kScenarios = {"arrival_single", "arrival_pair",
                                          "scatter_chain", "hierarchy_check",
                                          "mi_sweep"};

double grid_vmax(const GridConfig& g, double m) {
    const double kmax = std::max(std::abs(g.min), std::abs(g.max));
    return kmax == 0.0 ? 0.0 : kmax / std::sqrt(kmax * kmax + m * m);
}

void check_rule(const GridConfig& g, double x, double m, const GridConfig& t,
                const char* which) {
    try {
        check_oscillation_resolution(g.build(), x, grid_vmax(g, m),
                                     std::max(std::abs(t.min), std::abs(t.max)));
    } catch (const GridError& e) {
        throw ValidationError(std::string(which) + ": " + e.what());
    } catch (const Error& e) {
        throw ValidationError(std::string(which) + ": " + e.what());
    }
}

void require(bool ok, const std::string& constraint) {
    if (!ok) throw ValidationError("config: " + constraint);
}

}  // namespace

void ScenarioConfig::validate() const {
    require(kScenarios.count(scenario) == 1, "unknown scenario '" + scenario + "'");
    require(sigma > 0.0, "sigma must be positive");
    require(m >= 0.0, "mass must be non-negative");
    require(denominator_mode == "numeric" || denominator_mode == "asymptotic",
            "denominator_mode must be numeric or asymptotic");

    if (scenario == "arrival_single" || scenario == "arrival_pair") {
        require(kgrid.count >= 2 && tgrid.count >= 2, "k and t grids need >= 2 nodes");
        check_rule(kgrid, x, m, tgrid, "kgrid");
        if (scenario == "arrival_pair") {
            require(a >= 0.0, "branch separation a must be >= 0");
            check_rule(kgrid, x2, m, tgrid, "kgrid (second detector)");
        }
    } else if (scenario == "scatter_chain") {
        require(m > 0.0, "scatter_chain needs a massive particle");
        require(kgrid.count >= 2 && qgrid.count >= 2 && tgrid.count >= 2 &&
                    taugrid.count >= 2,
                "all four grids need >= 2 nodes");
        require(kgrid.min > 0.0 && qgrid.min > 0.0,
                "momentum grids must be positive for the scattering chain");
        require(taugrid.min >= 0.0, "tau grid must start at or after 0");
        check_rule(kgrid, x, m, tgrid, "kgrid");
        check_rule(qgrid, r, m, taugrid, "qgrid");
        if (denominator_mode == "asymptotic") {
            require(detector1.type == "pointlike",
                    "asymptotic denominators need a pointlike first detector");
            require(constant_alpha2.has_value(),
                    "asymptotic denominators need constant_alpha2");
        }
    } else if (scenario == "mi_sweep") {
        require(sweep.has_value(), "mi_sweep needs a sweep block");
        require(sweep->parameter == "a_over_sigma",
                "mi_sweep supports sweeping a_over_sigma only");
        require(sweep->steps >= 1, "sweep needs at least one step");
        require(sweep->from <= sweep->to, "sweep range must be ordered");
        require(sweep->from > 0.0, "a_over_sigma must be positive");
        require(a_over_x > 0.0 && a_over_x <= 1.0, "a_over_x must be in (0, 1]");
        require(window_sigmas > 0.0, "window_sigmas must be positive");
        require(sweep_t_count >= 3, "sweep_t_count must be >= 3");
        require(kgrid.max > kgrid.min, "kgrid extents must be ordered");
        if (kgrid.count > 0) {
            // worst sweep point: largest separation, farthest detector
            const double aa = sweep->to * sigma;
            const double xx = aa / a_over_x;
            GridConfig tworst{xx - aa / 2.0 - window_sigmas * sigma,
                              xx + aa / 2.0 + window_sigmas * sigma, sweep_t_count};
            check_rule(kgrid, xx, m, tworst, "kgrid (worst sweep point)");
        }
    } else if (scenario == "hierarchy_check") {
        require(hier_dim >= 1 && hier_dim <= 64, "hierarchy dimension must be 1..64");
        require(hier_outcomes >= 1 && hier_outcomes <= 64,
                "outcome count must be 1..64");
        require(hier_instances >= 1, "need at least one random instance");
    }
}

namespace {

json kernel_to_json(const KernelConfig& k) {
    json j;
    j["type"] = k.type;
    if (k.type == "exponential") {
        j["A"] = k.A;
        j["gamma0"] = k.gamma0;
        j["gamma1"] = k.gamma1;
    } else if (k.type == "kallen_lehmann") {
        j["mu0_sq"] = k.mu0_sq;
        j["bump_width"] = k.bump_width;
        j["amplitude"] = k.amplitude;
    } else {
        j["B"] = k.B;
        j["tau"] = k.tau;
    }
    return j;
}

KernelConfig kernel_from_json(const json& j, const char* where) {
    KernelConfig k;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "type")
            k.type = it->get<std::string>();
        else if (key == "A")
            k.A = it->get<double>();
        else if (key == "gamma0")
            k.gamma0 = it->get<double>();
        else if (key == "gamma1")
            k.gamma1 = it->get<double>();
        else if (key == "mu0_sq")
            k.mu0_sq = it->get<double>();
        else if (key == "bump_width")
            k.bump_width = it->get<double>();
        else if (key == "amplitude")
            k.amplitude = it->get<double>();
        else if (key == "B")
            k.B = it->get<double>();
        else if (key == "tau")
            k.tau = it->get<double>();
        else
            throw ValidationError(std::string("config: unknown field '") + key +
                                  "' in " + where);
    }
    k.build();  // surfaces bad type / bad parameters early
    return k;
}

json grid_to_json(const GridConfig& g) {
    return json{{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

GridConfig grid_from_json(const json& j, const char* where) {
    GridConfig g;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "min")
            g.min = it->get<double>();
        else if (key == "max")
            g.max = it->get<double>();
        else if (key == "count")
            g.count = it->get<int>();
        else
            throw ValidationError(std::string("config: unknown field '") + key +
                                  "' in " + where);
    }
    return g;
}

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["scenario"] = c.scenario;
    j["physics"] = {{"m", c.m},   {"p", c.p},   {"sigma", c.sigma},
                    {"a", c.a},   {"x", c.x},   {"x2", c.x2},
                    {"r", c.r},   {"a_over_x", c.a_over_x}};
    j["detectors"] = {{"first", kernel_to_json(c.detector1)},
                      {"second", kernel_to_json(c.detector2)}};
    json num;
    num["kgrid"] = grid_to_json(c.kgrid);
    num["qgrid"] = grid_to_json(c.qgrid);
    num["tgrid"] = grid_to_json(c.tgrid);
    num["taugrid"] = grid_to_json(c.taugrid);
    num["denominator_mode"] = c.denominator_mode;
    if (c.constant_alpha2) num["constant_alpha2"] = *c.constant_alpha2;
    num["window_sigmas"] = c.window_sigmas;
    num["sweep_t_count"] = c.sweep_t_count;
    j["numerics"] = num;
    if (c.sweep)
        j["sweep"] = {{"parameter", c.sweep->parameter},
                      {"from", c.sweep->from},
                      {"to", c.sweep->to},
                      {"steps", c.sweep->steps}};
    j["hierarchy"] = {{"dim", c.hier_dim},
                      {"outcomes", c.hier_outcomes},
                      {"instances", c.hier_instances},
                      {"seed", c.hier_seed}};
    return j;
}

ScenarioConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    std::string scenario = "arrival_single";
    if (j.contains("scenario")) scenario = j.at("scenario").get<std::string>();
    ScenarioConfig c = config_defaults(scenario);

    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "scenario") {
            continue;
        } else if (key == "physics") {
            for (auto p = it->begin(); p != it->end(); ++p) {
                const std::string& k = p.key();
                if (k == "m")
                    c.m = p->get<double>();
                else if (k == "p")
                    c.p = p->get<double>();
                else if (k == "sigma")
                    c.sigma = p->get<double>();
                else if (k == "a")
                    c.a = p->get<double>();
                else if (k == "x")
                    c.x = p->get<double>();
                else if (k == "x2")
                    c.x2 = p->get<double>();
                else if (k == "r")
                    c.r = p->get<double>();
                else if (k == "a_over_x")
                    c.a_over_x = p->get<double>();
                else
                    throw ValidationError("config: unknown field '" + k +
                                          "' in physics");
            }
            if (!it->contains("x2")) c.x2 = c.x;
        } else if (key == "detectors") {
            for (auto d = it->begin(); d != it->end(); ++d) {
                if (d.key() == "first")
                    c.detector1 = kernel_from_json(*d, "detectors.first");
                else if (d.key() == "second")
                    c.detector2 = kernel_from_json(*d, "detectors.second");
                else
                    throw ValidationError("config: unknown field '" + d.key() +
                                          "' in detectors");
            }
        } else if (key == "numerics") {
            for (auto n = it->begin(); n != it->end(); ++n) {
                const std::string& k = n.key();
                if (k == "kgrid")
                    c.kgrid = grid_from_json(*n, "numerics.kgrid");
                else if (k == "qgrid")
                    c.qgrid = grid_from_json(*n, "numerics.qgrid");
                else if (k == "tgrid")
                    c.tgrid = grid_from_json(*n, "numerics.tgrid");
                else if (k == "taugrid")
                    c.taugrid = grid_from_json(*n, "numerics.taugrid");
                else if (k == "denominator_mode")
                    c.denominator_mode = n->get<std::string>();
                else if (k == "constant_alpha2")
                    c.constant_alpha2 = n->get<double>();
                else if (k == "window_sigmas")
                    c.window_sigmas = n->get<double>();
                else if (k == "sweep_t_count")
                    c.sweep_t_count = n->get<int>();
                else
                    throw ValidationError("config: unknown field '" + k +
                                          "' in numerics");
            }
        } else if (key == "sweep") {
            SweepConfig s;
            for (auto n = it->begin(); n != it->end(); ++n) {
                const std::string& k = n.key();
                if (k == "parameter")
                    s.parameter = n->get<std::string>();
                else if (k == "from")
                    s.from = n->get<double>();
                else if (k == "to")
                    s.to = n->get<double>();
                else if (k == "steps")
                    s.steps = n->get<int>();
                else
                    throw ValidationError("config: unknown field '" + k +
                                          "' in sweep");
            }
            c.sweep = s;
        } else if (key == "hierarchy") {
            for (auto n = it->begin(); n != it->end(); ++n) {
                const std::string& k = n.key();
                if (k == "dim")
                    c.hier_dim = n->get<int>();
                else if (k == "outcomes")
                    c.hier_outcomes = n->get<int>();
                else if (k == "instances")
                    c.hier_instances = n->get<int>();
                else if (k == "seed")
                    c.hier_seed = n->get<unsigned>();
                else
                    throw ValidationError("config: unknown field '" + k +
                                          "' in hierarchy");
            }
        } else {
            throw ValidationError("config: unknown top-level field '" + key + "'");
        }
    }
    c.validate();
    return c;
}

}  // namespace

ScenarioConfig config_defaults(const std::string& scenario) {
    ScenarioConfig c;
    c.scenario = scenario;
    if (scenario == "arrival_single") {
        c.kgrid = {44.0, 56.0, 6601};
        c.tgrid = {175.0, 225.0, 1801};
    } else if (scenario == "arrival_pair") {
        c.a = 4.0;
        c.kgrid = {44.0, 56.0, 6601};
        c.tgrid = {173.0, 227.0, 1801};
    } else if (scenario == "mi_sweep") {
        c.kgrid = {44.0, 56.0, 0};  // count derived per sweep point
        c.sweep = SweepConfig{};
    } else if (scenario == "scatter_chain") {
        c.m = 1.0;
        c.p = 5.0;
        c.sigma = 2.0;
        c.a = 8.0;
        c.x = 5.0;
        c.x2 = 5.0;
        c.r = 2.0;
        c.detector1 = KernelConfig{};
        c.detector1.type = "pointlike";
        c.detector1.B = 1.0;
        c.detector1.tau = 3.0;
        c.detector2 = c.detector1;
        c.detector2.tau = 6.0;
        c.kgrid = {3.0, 7.0, 72};
        c.qgrid = {3.0, 7.0, 72};
        c.tgrid = {-4.0, 9.0, 96};
        c.taugrid = {0.0, 8.0, 96};
    } else if (scenario == "hierarchy_check") {
        // struct defaults are the scenario defaults
    } else if (!kScenarios.count(scenario)) {
        throw ValidationError("config: unknown scenario '" + scenario + "'");
    }
    return c;
}

std::string ScenarioConfig::to_json_string() const {
    return config_to_json(*this).dump(2);
}

ScenarioConfig config_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return config_from_json(j);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_string(buf.str());
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string s = config_to_json(cfg).dump();  // sorted keys, canonical
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", h);
    return out;
}

}  // namespace qtp
