#include "qtp/scenario.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>

#include "qtp/arrival.hpp"
#include "qtp/hierarchy.hpp"
#include "qtp/nonclassicality.hpp"
#include "qtp/reduction.hpp"

namespace qtp {

const Table* ResultBundle::find(const std::string& name) const {
    for (const Table& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

double ResultBundle::summary_value(const std::string& metric) const {
    const Table* s = find("summary");
    if (s)
        for (size_t i = 0; i < s->labels.size(); ++i)
            if (s->labels[i] == metric) return s->rows[i].front();
    throw DomainError("ResultBundle: no summary metric '" + metric + "'");
}

namespace {

Table summary_table() {
    Table t;
    t.name = "summary";
    t.label_header = "metric";
    t.columns = {"value"};
    return t;
}

void put(Table& summary, const std::string& metric, double value) {
    summary.labels.push_back(metric);
    summary.rows.push_back({value});
}

// [0, 1) doubles straight from the mt19937_64 stream; the standard
// distributions are implementation-defined, this is not.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// dk fine enough for the phase rule over the given geometry, with margin.
Grid derived_kgrid(const GridConfig& extents, double m, double x, double t_abs_max) {
    const double kmax = std::max(std::abs(extents.min), std::abs(extents.max));
    const double vmax = kmax == 0.0 ? 0.0 : kmax / std::sqrt(kmax * kmax + m * m);
    const double reach = std::abs(x) + vmax * t_abs_max;
    const double width = extents.max - extents.min;
    const double dk = 0.95 * (M_PI / 4.0) / std::max(reach, 1e-300);
    const int count = std::max(2, static_cast<int>(std::ceil(width / dk)) + 1);
    return Grid{extents.min, extents.max, count};
}

ResultBundle run_arrival_single(const ScenarioConfig& c) {
    const Grid kg = c.kgrid.build();
    const Grid tg = c.tgrid.build();
    const Wavepacket phi = gaussian_wavepacket(c.p, c.sigma, c.a, kg);
    const SampledDensity1D P1 = p1_time_pure(phi, c.x, c.m, tg);

    ResultBundle out;
    out.config = c;
    Table p1t;
    p1t.name = "arrival_p1";
    p1t.columns = {"t", "p1", "p1_stationary_phase"};
    for (int i = 0; i < tg.count; ++i) {
        const double t = tg.node(i);
        const double sp = std::norm(amplitude_stationary_phase(phi, c.x, t, c.m));
        p1t.rows.push_back({t, P1.values[i], sp});
    }
    out.tables.push_back(std::move(p1t));

    Table s = summary_table();
    put(s, "p1_mass", P1.mass());
    int ipk = 0;
    P1.values.maxCoeff(&ipk);
    put(s, "p1_peak_time", tg.node(ipk));
    put(s, "clipped", P1.clipped);
    out.tables.push_back(std::move(s));
    return out;
}

struct PairResult {
    SampledDensity1D P1;
    SampledDensity2D P2;
    complexd eps;
    double q1 = 0.0, q2 = 0.0;
    Eigen::VectorXcd A1, A2;
};

PairResult compute_pair(double m, double p, double sigma, double a, double x,
                        double x2, const Grid& kg, const Grid& tg) {
    const Wavepacket phi1 = gaussian_wavepacket(p, sigma, a / 2.0, kg);
    const Wavepacket phi2 = gaussian_wavepacket(p, sigma, -a / 2.0, kg);
    const TwoParticleSymmetricState state(phi1, phi2);
    PairResult r;
    r.eps = state.eps;
    r.P1 = p1_time_pair(state, x, m, tg);
    r.P2 = p2_time_symmetric(state, x, x2, m, tg, tg);
    r.q1 = q1_measure(r.P1, r.P2);
    r.q2 = q2_measure(r.P2);
    r.A1 = arrival_amplitude(phi1, x, m, tg);
    r.A2 = arrival_amplitude(phi2, x, m, tg);
    return r;
}

ResultBundle run_arrival_pair(const ScenarioConfig& c) {
    const Grid kg = c.kgrid.build();
    const Grid tg = c.tgrid.build();
    PairResult r = compute_pair(c.m, c.p, c.sigma, c.a, c.x, c.x2, kg, tg);

    ResultBundle out;
    out.config = c;

    Table p1t;
    p1t.name = "pair_p1";
    p1t.columns = {"t", "p1", "p2_diag", "w"};
    for (int i = 0; i < tg.count; ++i) {
        const double p1 = r.P1.values[i];
        const double d = r.P2.values(i, i);
        p1t.rows.push_back({tg.node(i), p1, d, p1 * p1 - d});
    }
    out.tables.push_back(std::move(p1t));

    // long-format 2D artifacts on a subsampled grid (full resolution feeds
    // the measures, not the files)
    const int stride = std::max(1, tg.count / 73);
    const int ns = (tg.count - 1) / stride + 1;
    const Grid tsub{tg.min, tg.node((ns - 1) * stride), ns};
    Eigen::VectorXcd A1s(ns), A2s(ns);
    for (int i = 0; i < ns; ++i) {
        A1s[i] = r.A1[i * stride];
        A2s[i] = r.A2[i * stride];
    }
    const GThetaSamples gt = g_of_t1t2(A1s, A2s, tsub, r.eps);

    Table p2t, gtab;
    p2t.name = "pair_p2";
    p2t.columns = {"t1", "t2", "p2"};
    gtab.name = "pair_g";
    gtab.columns = {"t1", "t2", "g", "theta"};
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < ns; ++j) {
            p2t.rows.push_back({tsub.node(i), tsub.node(j),
                                r.P2.values(i * stride, j * stride)});
            gtab.rows.push_back({tsub.node(i), tsub.node(j), gt.G(i, j),
                                 gt.Theta(i, j)});
        }
    out.tables.push_back(std::move(p2t));
    out.tables.push_back(std::move(gtab));

    Table s = summary_table();
    const double e2 = std::norm(r.eps);
    put(s, "q1", r.q1);
    put(s, "q2", r.q2);
    put(s, "eps_abs", std::abs(r.eps));
    put(s, "q2_mi_limit", (1.0 - e2) / (1.0 + e2));
    put(s, "p1_mass", r.P1.mass());
    put(s, "p2_mass", r.P2.mass());
    out.tables.push_back(std::move(s));
    return out;
}

ResultBundle run_mi_sweep(const ScenarioConfig& c, int threads) {
    const SweepConfig& sw = *c.sweep;
    const int n = sw.steps;
    std::vector<std::array<double, 4>> rows(n);

    auto worker_body = [&](int i) {
        const auto start = std::chrono::steady_clock::now();
        const double val =
            n == 1 ? sw.from : sw.from + i * (sw.to - sw.from) / (n - 1);
        const double a = val * c.sigma;
        const double x = a / c.a_over_x;
        const double half = a / 2.0 + c.window_sigmas * c.sigma;
        // m = 0 default: the packet center arrives at t = x
        const double vp = c.p / std::sqrt(c.p * c.p + c.m * c.m);
        const double tc = x / vp;
        const Grid tg{tc - half, tc + half, c.sweep_t_count};
        Grid kg = c.kgrid.count > 0
                      ? c.kgrid.build()
                      : derived_kgrid(c.kgrid, c.m, x,
                                      std::max(std::abs(tg.min), std::abs(tg.max)));
        PairResult r = compute_pair(c.m, c.p, c.sigma, a, x, x, kg, tg);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        rows[i] = {val, r.q1, r.q2, secs};
    };

    const int nthreads = std::max(1, std::min(threads, n));
    if (nthreads == 1) {
        for (int i = 0; i < n; ++i) worker_body(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    worker_body(i);
            });
        for (auto& t : pool) t.join();
    }

    ResultBundle out;
    out.config = c;
    Table t;
    t.name = "sweep";
    t.columns = {"parameter", "q1", "q2", "runtime_seconds"};
    for (const auto& r : rows) t.rows.push_back({r[0], r[1], r[2], r[3]});
    out.tables.push_back(std::move(t));
    return out;
}

ResultBundle run_scatter_chain(const ScenarioConfig& c) {
    const Grid kg = c.kgrid.build();
    const Grid qg = c.qgrid.build();
    const Grid tg = c.tgrid.build();
    const Grid taug = c.taugrid.build();
    const DetectorKernel kern1 = c.detector1.build();
    const DetectorKernel kern2 = c.detector2.build();

    Wavepacket packet =
        c.a > 0.0
            ? superpose(gaussian_wavepacket(c.p, c.sigma, c.a / 2.0, kg),
                        gaussian_wavepacket(c.p, c.sigma, -c.a / 2.0, kg),
                        complexd(1.0, 0.0), complexd(1.0, 0.0))
            : gaussian_wavepacket(c.p, c.sigma, 0.0, kg);
    DensityMatrix rho_t = postselect_state(
        DensityMatrix::pure(packet), [&](double k) {
            return absorption_coefficient(kern1, k, c.m) *
                   absorption_coefficient(kern2, k, c.m);
        });

    ReductionOptions opts;
    opts.mode = c.denominator_mode == "asymptotic" ? DenominatorMode::Asymptotic
                                                   : DenominatorMode::Numeric;
    opts.constant_alpha2 = c.constant_alpha2;
    const ReductionOperator S =
        build_reduction_operator(kern1, kern2, c.m, kg, qg, opts);
    const LocalizationOperator L2 = localization_from_kernel(kern2, c.m, qg);

    const SampledDensity2D P2 = p2_scatter(rho_t, S, L2.L, c.x, c.r, tg, taug);
    const SampledDensity1D P1 = p1_time_scatter(rho_t, S, c.x, tg);
    int ipk = 0;
    P1.values.maxCoeff(&ipk);
    const double t0 = tg.node(ipk);
    const SampledDensity1D cond = conditional_density(P2, P1, t0);

    ResultBundle out;
    out.config = c;

    Table p1t;
    p1t.name = "scatter_p1";
    p1t.columns = {"t", "p1"};
    for (int i = 0; i < tg.count; ++i) p1t.rows.push_back({tg.node(i), P1.values[i]});
    out.tables.push_back(std::move(p1t));

    Table p2t;
    p2t.name = "scatter_p2";
    p2t.columns = {"t", "tau", "p2"};
    for (int i = 0; i < tg.count; ++i)
        for (int j = 0; j < taug.count; ++j)
            p2t.rows.push_back({tg.node(i), taug.node(j), P2.values(i, j)});
    out.tables.push_back(std::move(p2t));

    Table ct;
    ct.name = "scatter_conditional";
    ct.columns = {"tau", "p_cond"};
    for (int j = 0; j < taug.count; ++j)
        ct.rows.push_back({taug.node(j), cond.values[j]});
    out.tables.push_back(std::move(ct));

    Table s = summary_table();
    put(s, "t0", t0);
    put(s, "p1_mass_window", P1.mass());
    put(s, "p2_mass_window", P2.mass());
    put(s, "tau_marginal_l1", kolmogorov_distance(marginalize(P2, 1), P1));
    if (kg == qg) {
        const DensityMatrix rho_ns = nonselective_state(rho_t, S);
        const SampledDensity1D pns = p1_time(rho_ns, L2.L, c.r, c.m, taug);
        const SampledDensity1D pfree = p1_time(rho_t, L2.L, c.r, c.m, taug);
        put(s, "w1", kolmogorov_distance(pns, pfree));
        put(s, "trace_distance_bound", trace_distance_bound(rho_ns, rho_t));
        put(s, "rho_ns_trace", rho_ns.trace());
    }
    put(s, "reduced_trace",
        reduced_state(rho_t, S, c.x, t0).trace());
    out.tables.push_back(std::move(s));
    return out;
}

ResultBundle run_hierarchy_check(const ScenarioConfig& c) {
    std::mt19937_64 rng(c.hier_seed);
    const int D = c.hier_dim;
    const int Z = c.hier_outcomes;

    double max_q1 = 0.0, max_q2 = 0.0, max_add2 = 0.0, max_add3 = 0.0;
    double max_cs_excess = 0.0, min_witness = 0.0;
    double max_asym = 0.0, max_cos_dev = 0.0;

    for (int inst = 0; inst < c.hier_instances; ++inst) {
        // classical measurement-independent process, hierarchy up to n = 3
        ClassicalProcess proc;
        proc.rho.resize(D);
        for (int i = 0; i < D; ++i) proc.rho[i] = uniform01(rng) + 1e-6;
        proc.rho /= proc.rho.sum();
        proc.F.resize(Z, D);
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < Z; ++i) proc.F(i, j) = uniform01(rng);
        SampledHierarchy h = synthetic_classical_hierarchy(proc, 3);
        max_q1 = std::max(max_q1, discrete_q1(h.P1, h.P2));
        max_q2 = std::max(max_q2, discrete_q2(h.P2));

        // unit-response version for the additivity (Kolmogorov) identity
        ClassicalProcess unit = proc;
        for (int j = 0; j < D; ++j) unit.F.col(j) /= unit.F.col(j).sum();
        SampledHierarchy hu = synthetic_classical_hierarchy(unit, 3);
        max_add2 = std::max(max_add2, additivity_defect(hu.P1, hu.P2));
        max_add3 = std::max(max_add3, additivity_defect3(hu.P2, hu.P3));

        // positive-semidefinite tensor: Cauchy-Schwarz must hold
        Eigen::MatrixXcd M(D, D);
        for (int j = 0; j < D; ++j)
            for (int i = 0; i < D; ++i)
                M(i, j) = complexd(2.0 * uniform01(rng) - 1.0,
                                   2.0 * uniform01(rng) - 1.0);
        HierarchyTensor G;
        G.G2 = M * M.adjoint();
        G.G1 = Eigen::VectorXcd::Zero(D);
        DetectorResponse R;
        R.response.resize(Z);
        for (int z = 0; z < Z; ++z) {
            R.response[z].resize(D);
            for (int i = 0; i < D; ++i)
                R.response[z][i] = complexd(uniform01(rng), 0.0);
        }
        const Eigen::MatrixXd V = raw_level2_contraction(G, R);
        max_cs_excess = std::max(max_cs_excess, cauchy_schwarz_excess(V));
        min_witness = std::min(min_witness, negativity_witness(G.G2));

        // rank-one consistent tensor: Kolmogorov condition must return (0, 1)
        HierarchyTensor Gc;
        Gc.G1.resize(D);
        for (int i = 0; i < D; ++i) Gc.G1[i] = complexd(0.1 + uniform01(rng), 0.0);
        const Eigen::VectorXcd Dv = R.aggregate();
        const complexd cnorm = (Gc.G1.transpose() * Dv)(0);
        Gc.G2 = (Gc.G1 * Gc.G1.transpose()) / cnorm;
        const KolmogorovCondition kc = kolmogorov_condition_check(Gc, R);
        max_asym = std::max(max_asym, kc.antisymmetric_norm);
        max_cos_dev = std::max(max_cos_dev, std::abs(kc.cos_theta - 1.0));
    }

    ResultBundle out;
    out.config = c;
    Table s = summary_table();
    put(s, "instances", c.hier_instances);
    put(s, "max_classical_q1", max_q1);
    put(s, "max_classical_q2", max_q2);
    put(s, "max_additivity_defect_n2", max_add2);
    put(s, "max_additivity_defect_n3", max_add3);
    put(s, "max_cauchy_schwarz_excess", max_cs_excess);
    put(s, "min_psd_witness", min_witness);
    put(s, "max_rank_one_asym_norm", max_asym);
    put(s, "max_rank_one_cos_dev", max_cos_dev);
    out.tables.push_back(std::move(s));
    return out;
}

}  // namespace

ResultBundle run_scenario(const ScenarioConfig& config, int threads) {
    config.validate();
    try {
        if (config.scenario == "arrival_single") return run_arrival_single(config);
        if (config.scenario == "arrival_pair") return run_arrival_pair(config);
        if (config.scenario == "mi_sweep") return run_mi_sweep(config, threads);
        if (config.scenario == "scatter_chain") return run_scatter_chain(config);
        if (config.scenario == "hierarchy_check") return run_hierarchy_check(config);
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw Error("scenario '" + config.scenario + "': " + e.what());
    }
    throw ValidationError("run_scenario: unknown scenario '" + config.scenario + "'");
}

}  // namespace qtp
