#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "psz/box_spectrum.hpp"
#include "psz/engine_cycle.hpp"
#include "psz/errors.hpp"
#include "psz/general_demon.hpp"
#include "psz/quantum_weight.hpp"
#include "psz/thermal_gas.hpp"
#include "psz/thermo_ledger.hpp"
#include "psz/version.hpp"

namespace {

using namespace psz;

constexpr int kExitOk = 0;
constexpr int kExitParameter = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Options {
    double p = 0.01;
    double tg = 1.0;
    double tw = 1.0;
    double p1 = kNaN;
    double ma = 1.0 / 3, mb = 1.0 / 3, mc = 1.0 / 3;
    double pa = 0.5;
    double tau = kNaN;
    std::uint64_t cycles = 1000000;
    std::uint64_t seed = 12345;
    int points = 101;
    std::string out;

    std::string sym = "even";
    int level = 1;
    double vmin = 0.0, vmax = 1e4;
    std::string model = "engine";
    std::string slice = "mb_eq_mc";
    std::string regime = "isothermal";
    std::string cycle = "raising";
    double hmax = kNaN;
};

// A CSV table: `#` header lines, one header row, data rows, `#` footer lines.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void add_row(const std::vector<double>& row) {
        std::vector<std::string> s;
        s.reserve(row.size());
        for (double x : row) s.push_back(num(x));
        rows_.push_back(std::move(s));
    }
    void footer(std::string line) { footer_.push_back(std::move(line)); }

    // Min/max over the named numeric columns, ignoring NaN.
    void range_footer(const std::vector<std::string>& names) {
        for (const auto& name : names) {
            const auto it = std::find(columns_.begin(), columns_.end(), name);
            if (it == columns_.end()) continue;
            const std::size_t c = it - columns_.begin();
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& r : rows_) {
                const double v = std::strtod(r[c].c_str(), nullptr);
                if (std::isnan(v)) continue;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            footer("# range " + name + " min=" + num(lo) + " max=" + num(hi));
        }
    }

    void write(std::ostream& os, const std::vector<std::string>& header) const {
        for (const auto& h : header) os << h << '\n';
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        }
        for (const auto& f : footer_) os << f << '\n';
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> footer_;
};

// Runs fn(i) for i in [0, n) on a small pool. Each call writes slot i of a
// preallocated result.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

void require_points(int n) {
    if (n < 2) throw ParameterError("--points must be at least 2");
}

ResetUnitary reset_from(const Options& o) {
    ResetUnitary r{o.ma, o.mb, o.mc};
    r.validate();
    return r;
}

EngineParams engine_from(const Options& o) {
    if (!std::isnan(o.p1)) return EngineParams::from_p1(o.p1, reset_from(o), o.tg);
    return EngineParams::from_temperatures(o.tg, o.tw, reset_from(o));
}

Symmetry symmetry_from(const std::string& s) {
    if (s == "odd") return Symmetry::odd;
    if (s == "even") return Symmetry::even;
    throw ParameterError("--sym must be odd or even");
}

Table cmd_eigencurve(const Options& o, std::vector<std::string>& params) {
    require_points(o.points);
    if (!(o.vmin >= 0.0) || !(o.vmax > o.vmin)) throw ParameterError("need 0 <= --vmin < --vmax");
    const Symmetry s = symmetry_from(o.sym);
    params.push_back("sym=" + o.sym);
    params.push_back("level=" + std::to_string(o.level));
    params.push_back("vmin=" + num(o.vmin));
    params.push_back("vmax=" + num(o.vmax));
    params.push_back("p=" + num(o.p));
    params.push_back("points=" + std::to_string(o.points));

    // Log-spaced ladder; a zero lower end is kept as its own first point.
    std::vector<double> Vs;
    const double lo = o.vmin > 0.0 ? o.vmin : std::min(1e-2, o.vmax / 10.0);
    const int n_log = o.vmin > 0.0 ? o.points : o.points - 1;
    if (o.vmin == 0.0) Vs.push_back(0.0);
    for (int i = 0; i < n_log; ++i)
        Vs.push_back(n_log == 1 ? o.vmax : lo * std::pow(o.vmax / lo, double(i) / (n_log - 1)));

    const auto curve = eigencurve(s, o.level, Vs, o.p);
    Table t({"V", "E_numeric", "E_hba", "E_zurek_upper", "E_zurek_lower"});
    for (std::size_t i = 0; i < Vs.size(); ++i) {
        const double V = Vs[i];
        double hba = kNaN, zu = kNaN, zl = kNaN;
        if (V > 0.0) {
            hba = hba_energy(s, o.level, V, o.p);
            const ZurekEnergy z = zurek_energy(o.level, V, o.p);
            zu = z.upper();
            zl = z.lower();
        }
        t.add_row(std::vector<double>{V, curve[i].energy, hba, zu, zl});
    }
    t.footer("# limit E=" + num(limit_energy(o.level, o.p)));
    t.range_footer({"E_numeric"});
    return t;
}

Table cmd_energy_surface(const Options& o, std::vector<std::string>& params) {
    require_points(o.points);
    params.push_back("tg=" + num(o.tg));
    params.push_back("points=" + std::to_string(o.points));
    params.push_back("reset=m_b=m_c=(1-m_a)/2");
    const auto P = linspace(0.0, 1.0, o.points), M = linspace(0.0, 1.0, o.points);
    std::vector<std::vector<double>> rows(P.size() * M.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        const double P1 = P[k / M.size()], ma = M[k % M.size()];
        const double f = energy_flow(EngineParams::from_p1(P1, {ma, 0.5 * (1 - ma), 0.5 * (1 - ma)}, o.tg));
        rows[k] = {P1, ma, f, f * o.tg * std::numbers::ln2};
    });
    Table t({"P1", "m_a", "f", "delta_E"});
    for (const auto& r : rows) t.add_row(r);
    t.range_footer({"f", "delta_E"});
    return t;
}

Table cmd_entropy_surface(const Options& o, std::vector<std::string>& params) {
    require_points(o.points);
    if (o.slice != "mc_zero" && o.slice != "mb_eq_mc") throw ParameterError("--slice must be mc_zero or mb_eq_mc");
    params.push_back("slice=" + o.slice);
    params.push_back("points=" + std::to_string(o.points));
    const bool mc_zero = o.slice == "mc_zero";
    const auto P = linspace(0.0, 1.0, o.points), M = linspace(0.0, 1.0, o.points);
    std::vector<std::vector<double>> rows(P.size() * M.size());
    parallel_for(rows.size(), [&](std::size_t k) {
        const double P1 = P[k / M.size()], ma = M[k % M.size()];
        const ResetUnitary r = mc_zero ? ResetUnitary{ma, 1 - ma, 0.0}
                                       : ResetUnitary{ma, 0.5 * (1 - ma), 0.5 * (1 - ma)};
        const CycleTotals c = cycle_totals(EngineParams::from_p1(P1, r));
        rows[k] = {P1, ma, c.dS_R, c.dS_L_total, c.dF_R, c.dF_L};
    });
    Table t({"P1", "m_a", "dS_R", "dS_L_total", "dF_R", "dF_L"});
    for (const auto& r : rows) t.add_row(r);
    t.range_footer({"dS_R", "dS_L_total", "dF_R", "dF_L"});
    return t;
}

Table cmd_montecarlo(const Options& o, std::vector<std::string>& params) {
    params.push_back("model=" + o.model);
    params.push_back("cycles=" + std::to_string(o.cycles));
    if (o.model == "engine") {
        const EngineParams e = engine_from(o);
        params.push_back("P1=" + num(e.P1));
        params.push_back("m_a=" + num(o.ma) + " m_b=" + num(o.mb) + " m_c=" + num(o.mc));
        const EngineMcResult r = mc_engine(e, o.cycles, o.seed);
        const double expected_fraction = e.reset.symmetric() ? stationary_fraction(e) : kNaN;
        Table t({"mean_flow", "stderr_flow", "expected_flow", "fraction_raising", "stderr_fraction",
                 "expected_fraction", "reversals"});
        t.add_row(std::vector<double>{r.mean_flow, r.stderr_flow, energy_flow(e), r.fraction_raising,
                                      r.stderr_fraction, expected_fraction, double(r.reversals)});
        return t;
    }
    if (o.model == "demon") {
        const DemonParams d{o.pa, std::isnan(o.tau) ? 0.5 : o.tau};
        params.push_back("p_A=" + num(d.p_A) + " tau=" + num(d.tau));
        const DemonMcResult r = mc_demon(d, o.cycles, o.seed);
        const DemonFlow f = demon_flow(d);
        Table t({"mean_Q", "stderr_Q", "expected_Q", "first_lowering_A", "expected_p_A1", "lower_A_cycles",
                 "lower_B_cycles"});
        t.add_row(std::vector<double>{r.mean_Q, r.stderr_, f.Q, r.first_lowering_A_fraction(), f.p_A1,
                                      double(r.lower_A_cycles), double(r.lower_B_cycles)});
        return t;
    }
    throw ParameterError("--model must be engine or demon");
}

Table cmd_demon_report(const Options& o, std::vector<std::string>& params) {
    params.push_back("p_A=" + num(o.pa));
    std::vector<double> taus;
    if (!std::isnan(o.tau)) {
        taus.push_back(o.tau);
        params.push_back("tau=" + num(o.tau));
    } else {
        require_points(o.points);
        for (int i = 1; i <= o.points; ++i) taus.push_back(double(i) / (o.points + 1));
        params.push_back("tau_grid=i/(points+1), points=" + std::to_string(o.points));
    }
    std::vector<std::vector<double>> rows(taus.size());
    parallel_for(taus.size(), [&](std::size_t i) {
        const DemonParams d{o.pa, taus[i]};
        const DemonFlow f = demon_flow(d);
        double pa = kNaN, pb = kNaN, pab = kNaN;
        if (!f.perfect_correlation) {
            const DemonProbs q = demon_probs(d);
            pa = q.p_alpha;
            pb = q.p_beta;
            pab = q.p_alphabeta;
        }
        rows[i] = {taus[i], pa, pb, pab, f.P_R, f.P_L, f.N_R, f.N_L, f.Q_R, f.Q_L, f.Q};
    });
    Table t({"tau", "p_alpha", "p_beta", "p_alphabeta", "P_R", "P_L", "N_R", "N_L", "Q_R", "Q_L", "Q"});
    for (const auto& r : rows) t.add_row(r);
    t.range_footer({"Q"});
    return t;
}

Table cmd_weight_split(const Options& o, std::vector<std::string>& params) {
    require_points(o.points);
    WeightParams w;
    w.T_W = o.tw;
    w.validate();
    const double hmax = std::isnan(o.hmax) ? 3.0 * w.T_W / w.Mg : o.hmax;
    if (!(hmax > 0.0)) throw ParameterError("--hmax must be positive");
    params.push_back("tw=" + num(o.tw));
    params.push_back("hmax=" + num(hmax));
    params.push_back("points=" + std::to_string(o.points));
    const auto H = linspace(0.0, hmax, o.points);
    std::vector<std::vector<double>> rows(H.size());
    parallel_for(H.size(), [&](std::size_t i) {
        const double h = H[i];
        // At h = 0 every state is above the shelf and nothing lies below.
        const ConditionalEnergies c =
            h > 0.0 ? conditional_energies(h, w) : ConditionalEnergies{1.5 * w.T_W, kNaN};
        rows[i] = {h, p_above_shelf(h, w), p_above_shelf_sum(h, w), c.E_above, c.E_below};
    });
    Table t({"h", "P_above", "P_above_sum", "E_above", "E_below"});
    for (const auto& r : rows) t.add_row(r);
    return t;
}

Table cmd_expansion(const Options& o, std::vector<std::string>& params) {
    require_points(o.points);
    ExpansionRegime r;
    if (o.regime == "isolated")
        r = ExpansionRegime::isolated;
    else if (o.regime == "essential")
        r = ExpansionRegime::essential;
    else if (o.regime == "isothermal")
        r = ExpansionRegime::isothermal;
    else
        throw ParameterError("--regime must be isolated, essential or isothermal");
    params.push_back("regime=" + o.regime);
    params.push_back("tg=" + num(o.tg));
    params.push_back("p=" + num(o.p));
    params.push_back("points=" + std::to_string(o.points));
    const auto Y = linspace(0.0, 1.0 - o.p, o.points);
    std::vector<std::vector<double>> rows(Y.size());
    parallel_for(Y.size(), [&](std::size_t i) {
        const ExpansionPoint c = expansion_profile(r, Y[i], o.tg, o.p);
        const ExpansionPoint s = expansion_profile_sum(r, Y[i], o.tg, o.p);
        const double h = r == ExpansionRegime::isothermal ? gearing_height(Y[i], o.tg, 1.0, o.p)
                                                          : gearing_height_essential(Y[i], o.tg, 1.0, o.p);
        rows[i] = {Y[i], c.E, c.P, c.T, c.W, h, s.E, s.W};
    });
    Table t({"Y", "E", "P", "T", "W", "h_gearing", "E_sum", "W_sum"});
    for (const auto& row : rows) t.add_row(row);
    return t;
}

Table cmd_ledger(const Options& o, std::vector<std::string>& params) {
    const EngineParams e = engine_from(o);
    params.push_back("cycle=" + o.cycle);
    params.push_back("T_G=" + num(e.T_G) + " T_W=" + num(e.T_W) + " P1=" + num(e.P1));
    params.push_back("m_a=" + num(o.ma) + " m_b=" + num(o.mb) + " m_c=" + num(o.mc));
    params.push_back("p=" + num(o.p));
    Ledger L;
    if (o.cycle == "raising")
        L = raising_ledger(e, WeightParams{}, o.p);
    else if (o.cycle == "lowering")
        L = lowering_ledger(e, WeightParams{}, o.p);
    else
        throw ParameterError("--cycle must be raising or lowering");
    auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
    Table t({"stage", "bathG_dE", "bathG_dS", "gas_E", "gas_S", "gas_F", "engine_E", "engine_S", "engine_F",
             "bathW_dE", "bathW_dS", "total_E", "total_S", "note"});
    for (const LedgerRow& r : L.rows)
        t.add_row({r.stage, num(r.bath_G.dE), num(r.bath_G.dS), num(r.gas.E), num(r.gas.S), opt(r.gas.F),
                   num(r.engine.E), num(r.engine.S), opt(r.engine.F), num(r.bath_W.dE), num(r.bath_W.dS),
                   num(r.total_energy()), num(r.total_entropy()), "\"" + r.note + "\""});
    const CycleTotals& c = L.totals;
    if (o.cycle == "raising")
        t.footer("# totals dS_R=" + num(c.dS_R) + " dF_R/T_W=" + num(c.dF_R));
    else
        t.footer("# totals dS_L=" + num(c.dS_L) + " dS_L_total=" + num(c.dS_L_total) + " dF_L/T_W=" + num(c.dF_L));
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Szilard engine numerics: CSV reproductions and sweeps"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--p", o.p, "barrier half-width fraction")->capture_default_str();
        s->add_option("--tg", o.tg, "gas temperature T_G")->capture_default_str();
        s->add_option("--tw", o.tw, "weight temperature T_W")->capture_default_str();
        s->add_option("--ma", o.ma, "reset magnitude |a|^2")->capture_default_str();
        s->add_option("--mb", o.mb, "reset magnitude |b|^2")->capture_default_str();
        s->add_option("--mc", o.mc, "reset magnitude |c|^2")->capture_default_str();
        s->add_option("--pa", o.pa, "demon subensemble probability p_A")->capture_default_str();
        s->add_option("--tau", o.tau, "demon temperature ratio T_G/T_W");
        s->add_option("--cycles", o.cycles, "Monte Carlo cycles")->capture_default_str();
        s->add_option("--seed", o.seed, "random seed")->capture_default_str();
        s->add_option("--points", o.points, "grid points per axis")->capture_default_str();
        s->add_option("--out", o.out, "output file (default stdout)");
    };

    auto* eig = app.add_subcommand("eigencurve", "eigenvalue against barrier height");
    common(eig);
    eig->add_option("--sym", o.sym, "odd or even")->capture_default_str();
    eig->add_option("--level", o.level, "level index l >= 1")->capture_default_str();
    eig->add_option("--vmin", o.vmin, "smallest barrier height")->capture_default_str();
    eig->add_option("--vmax", o.vmax, "largest barrier height")->capture_default_str();

    auto* es = app.add_subcommand("energy-surface", "long-run energy flow over (P1, m_a)");
    common(es);
    auto* en = app.add_subcommand("entropy-surface", "cycle entropy and free energy over (P1, m_a)");
    common(en);
    en->add_option("--slice", o.slice, "mc_zero or mb_eq_mc")->capture_default_str();

    auto* mc = app.add_subcommand("montecarlo", "Monte Carlo run of the engine or demon chain");
    common(mc);
    mc->add_option("--model", o.model, "engine or demon")->capture_default_str();
    mc->add_option("--p1", o.p1, "P1 directly, overriding --tg/--tw");

    auto* dr = app.add_subcommand("demon-report", "demon flows over a tau grid");
    common(dr);
    auto* ws = app.add_subcommand("weight-split", "shelf probabilities and conditional energies");
    common(ws);
    ws->add_option("--hmax", o.hmax, "largest shelf height (default 3 T_W/Mg)");
    auto* ex = app.add_subcommand("expansion", "piston expansion profile");
    common(ex);
    ex->add_option("--regime", o.regime, "isolated, essential or isothermal")->capture_default_str();
    auto* lg = app.add_subcommand("ledger", "stage-by-stage thermodynamic ledger");
    common(lg);
    lg->add_option("--cycle", o.cycle, "raising or lowering")->capture_default_str();
    lg->add_option("--p1", o.p1, "P1 directly, overriding --tw");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParameter;
    }

    std::string command = "psz";
    for (int i = 1; i < argc; ++i) command += std::string(" ") + argv[i];

    try {
        std::vector<std::string> params;
        const CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        Table t = name == "eigencurve"        ? cmd_eigencurve(o, params)
                  : name == "energy-surface"  ? cmd_energy_surface(o, params)
                  : name == "entropy-surface" ? cmd_entropy_surface(o, params)
                  : name == "montecarlo"      ? cmd_montecarlo(o, params)
                  : name == "demon-report"    ? cmd_demon_report(o, params)
                  : name == "weight-split"    ? cmd_weight_split(o, params)
                  : name == "expansion"       ? cmd_expansion(o, params)
                                              : cmd_ledger(o, params);

        std::vector<std::string> header{std::string("# psz ") + kVersion, "# command: " + command,
                                        "# seed: " + std::to_string(o.seed)};
        for (const auto& p : params) header.push_back("# param " + p);

        if (o.out.empty()) {
            t.write(std::cout, header);
            std::cout.flush();
            if (!std::cout) throw IoError("failed writing to stdout");
        } else {
            std::ofstream f(o.out);
            if (!f) throw IoError("cannot open " + o.out);
            t.write(f, header);
            f.close();
            if (!f) throw IoError("failed writing " + o.out);
        }
    } catch (const IoError& e) {
        std::cerr << "psz: " << e.what() << '\n';
        return kExitIo;
    } catch (const NumericError& e) {
        std::cerr << "psz: numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "psz: " << e.what() << '\n';
        return kExitParameter;
    }
    return kExitOk;
}
