#include "opo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "opo/csv.hpp"

namespace opo {

std::vector<double> Grid::points() const
{
    std::vector<double> p(n);
    if (n == 1) {
        p[0] = lo;
        return p;
    }
    for (int i = 0; i < n; ++i) {
        const double t = double(i) / (n - 1);
        p[i] = log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }
    p.back() = hi;
    return p;
}

double parse_double(const std::string& s, const std::string& key)
{
    std::size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty value for '" + key + "'");
    const char* first = s.data() + b;
    const char* last = s.data() + e + 1;
    if (*first == '+') ++first;
    double v = 0.0;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last)
        throw ConfigError("'" + key + "' is not a number: '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& key)
{
    std::size_t b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ConfigError("empty value for '" + key + "'");
    const char* first = s.data() + b;
    const char* last = s.data() + e + 1;
    long long v = 0;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last)
        throw ConfigError("'" + key + "' is not an integer: '" + s + "'");
    return v;
}

namespace {

bool parse_bool(const std::string& s, const std::string& key)
{
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("'" + key + "' must be true or false");
}

Target parse_target(const std::string& s)
{
    if (s == "internal") return Target::internal;
    if (s == "output") return Target::output;
    if (s == "difference") return Target::difference;
    throw ConfigError("unknown target '" + s + "'");
}

Route parse_route(const std::string& s)
{
    if (s == "general") return Route::general;
    if (s == "resonant") return Route::resonant;
    if (s == "adiabatic") return Route::adiabatic;
    throw ConfigError("unknown route '" + s + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

Setter num(double RunConfig::*m)
{
    return [m](RunConfig& c, const std::string& v, const std::string& k) { c.*m = parse_double(v, k); };
}

template <class F>
Setter with(F f)
{
    return [f](RunConfig& c, const std::string& v, const std::string& k) { f(c, v, k); };
}

void add_grid(std::map<std::string, Setter>& t, const std::string& name, Grid RunConfig::*g)
{
    t["grid." + name + "_lo"] = with([g](RunConfig& c, auto& v, auto& k) { (c.*g).lo = parse_double(v, k); });
    t["grid." + name + "_hi"] = with([g](RunConfig& c, auto& v, auto& k) { (c.*g).hi = parse_double(v, k); });
    t["grid." + name + "_n"] = with([g](RunConfig& c, auto& v, auto& k) { (c.*g).n = int(parse_int(v, k)); });
    t["grid." + name + "_log"] = with([g](RunConfig& c, auto& v, auto& k) { (c.*g).log = parse_bool(v, k); });
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> t = [] {
        std::map<std::string, Setter> t;
        t["task"] = with([](RunConfig& c, auto& v, auto&) { c.task = v; });
        t["params.g0"] = with([](RunConfig& c, auto& v, auto& k) { c.np.g0 = parse_double(v, k); });
        t["params.delta"] = with([](RunConfig& c, auto& v, auto& k) { c.np.delta = parse_double(v, k); });
        t["params.psi"] = with([](RunConfig& c, auto& v, auto& k) { c.np.psi = parse_double(v, k); });
        t["params.E"] = num(&RunConfig::E);
        for (int i = 0; i < 3; ++i) {
            t["params.loss" + std::to_string(i)] =
                with([i](RunConfig& c, auto& v, auto& k) { c.np.loss[i] = parse_double(v, k); });
            t["raw.gamma" + std::to_string(i)] = with([i](RunConfig& c, auto& v, auto& k) {
                c.raw = true;
                c.raw_params.gamma_mirror[i] = parse_double(v, k);
            });
            t["raw.kappa" + std::to_string(i)] = with([i](RunConfig& c, auto& v, auto& k) {
                c.raw = true;
                c.raw_params.kappa_crystal[i] = parse_double(v, k);
            });
        }
        t["raw.psi"] = with([](RunConfig& c, auto& v, auto& k) {
            c.raw = true;
            c.raw_params.psi = parse_double(v, k);
        });
        t["raw.psi0"] = with([](RunConfig& c, auto& v, auto& k) {
            c.raw = true;
            c.raw_params.psi0 = parse_double(v, k);
            c.raw_params.psi0_set = true;
        });
        t["raw.chi"] = with([](RunConfig& c, auto& v, auto& k) {
            c.raw = true;
            c.raw_params.chi = parse_double(v, k);
        });
        t["raw.E"] = num(&RunConfig::E);
        t["noise.dnu_L"] = num(&RunConfig::dnu_L);
        t["noise.s_eps"] = num(&RunConfig::s_eps);
        t["output.c_sq"] = num(&RunConfig::c_sq);
        t["output.target"] = with([](RunConfig& c, auto& v, auto&) { c.target = parse_target(v); });
        t["output.beam"] = with([](RunConfig& c, auto& v, auto& k) { c.beam = int(parse_int(v, k)); });
        t["output.route"] = with([](RunConfig& c, auto& v, auto&) { c.route = parse_route(v); });
        add_grid(t, "omega", &RunConfig::omega);
        add_grid(t, "E", &RunConfig::e_grid);
        add_grid(t, "g0", &RunConfig::g0_grid);
        add_grid(t, "tau", &RunConfig::tau);
        t["precision.root_tol"] = num(&RunConfig::root_tol);
        t["precision.eps_shift"] = num(&RunConfig::eps_shift);
        t["gaussian.n_mu"] = num(&RunConfig::n_mu);
        t["gaussian.n_phi"] = num(&RunConfig::n_phi);
        t["gaussian.k"] = num(&RunConfig::k);
        t["gaussian.fock_n"] = with([](RunConfig& c, auto& v, auto& k) { c.fock_n = int(parse_int(v, k)); });
        t["sde.steps"] = with([](RunConfig& c, auto& v, auto& k) { c.sde.n_steps = parse_int(v, k); });
        t["sde.chunks"] = with([](RunConfig& c, auto& v, auto& k) { c.sde.chunks = int(parse_int(v, k)); });
        t["sde.segment"] = with([](RunConfig& c, auto& v, auto& k) { c.sde.segment = int(parse_int(v, k)); });
        t["sde.dt"] = with([](RunConfig& c, auto& v, auto& k) { c.sde.dt = parse_double(v, k); });
        t["sde.seed"] = with([](RunConfig& c, auto& v, auto& k) {
            const long long s = parse_int(v, k);
            if (s < 0) throw ConfigError("seed must be non-negative");
            c.sde.seed = std::uint64_t(s);
        });
        return t;
    }();
    return t;
}

void check_grid(const Grid& g, const std::string& name)
{
    if (g.n < 1) throw DomainError("grid '" + name + "' needs at least one point");
    if (g.n > 1 && !(g.hi > g.lo)) throw DomainError("grid '" + name + "' must be strictly increasing");
    if (g.log && !(g.lo > 0.0)) throw DomainError("log grid '" + name + "' needs a positive start");
    if (!std::isfinite(g.lo) || !std::isfinite(g.hi)) throw DomainError("grid '" + name + "' is not finite");
}

const char* target_key(Target t) { return target_name(t); }

} // namespace

void apply_config_text(RunConfig& base, const std::string& text)
{
    boost::property_tree::ptree pt;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, pt);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    const auto& tab = setters();
    for (const auto& [section, body] : pt) {
        if (body.empty()) {
            const auto it = tab.find(section);
            if (it == tab.end()) throw ConfigError("unknown key '" + section + "'");
            it->second(base, body.data(), section);
            continue;
        }
        for (const auto& [key, val] : body) {
            const std::string full = section + "." + key;
            const auto it = tab.find(full);
            if (it == tab.end()) throw ConfigError("unknown key '" + full + "'");
            it->second(base, val.data(), full);
        }
    }
}

void apply_config_file(RunConfig& base, const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    apply_config_text(base, ss.str());
}

void validate(RunConfig& c)
{
    if (c.raw) {
        c.raw_params.validate();
        c.np = normalize(c.raw_params);
    } else {
        c.np.validate();
    }
    if (!(c.E >= 1.0) || !std::isfinite(c.E)) throw DomainError("pump parameter E must be >= 1");
    if (c.dnu_L < 0.0 || c.s_eps < 0.0) throw DomainError("pump noise levels must be non-negative");
    if (!(c.c_sq > 0.0)) throw DomainError("c_sq must be positive");
    if (c.beam != 1 && c.beam != 2) throw DomainError("beam must be 1 or 2");
    if (!(c.root_tol > 0.0)) throw DomainError("root_tol must be positive");
    if (c.eps_shift < 0.0) throw DomainError("eps_shift must be non-negative");
    if (!(c.n_mu > 0.0) || !(c.n_phi > 0.0) || !(c.k > 0.0)) throw DomainError("Gaussian parameters must be positive");
    if (c.fock_n < 10) throw DomainError("fock_n must be at least 10");
    if (c.sde.n_steps < 1 || c.sde.chunks < 1 || c.sde.segment < 64 || c.sde.dt < 0.0)
        throw DomainError("invalid [sde] settings");
    check_grid(c.omega, "omega");
    check_grid(c.e_grid, "E");
    check_grid(c.g0_grid, "g0");
    check_grid(c.tau, "tau");
    if (c.tau.lo < 0.0) throw DomainError("tau grid must be non-negative");
}

std::map<std::string, std::string> RunConfig::echo() const
{
    std::map<std::string, std::string> m;
    auto d = [](double v) { return format_double(v); };
    m["task"] = task;
    m["preset"] = preset.empty() ? "none" : preset;
    m["params.g0"] = d(np.g0);
    m["params.delta"] = d(np.delta);
    m["params.psi"] = d(np.psi);
    m["params.E"] = d(E);
    for (int i = 0; i < 3; ++i) m["params.loss" + std::to_string(i)] = d(np.loss[i]);
    m["params.gamma_mean"] = d(np.gamma_mean);
    if (raw) {
        for (int i = 0; i < 3; ++i) {
            m["raw.gamma" + std::to_string(i)] = d(raw_params.gamma_mirror[i]);
            m["raw.kappa" + std::to_string(i)] = d(raw_params.kappa_crystal[i]);
        }
        m["raw.chi"] = d(raw_params.chi);
    }
    m["noise.dnu_L"] = d(dnu_L);
    m["noise.s_eps"] = d(s_eps);
    m["output.c_sq"] = d(c_sq);
    m["output.target"] = target_key(target);
    m["output.beam"] = std::to_string(beam);
    m["output.route"] = route_name(route);
    auto grid = [&](const std::string& n, const Grid& g) {
        m["grid." + n + "_lo"] = d(g.lo);
        m["grid." + n + "_hi"] = d(g.hi);
        m["grid." + n + "_n"] = std::to_string(g.n);
        m["grid." + n + "_log"] = g.log ? "true" : "false";
    };
    grid("omega", omega);
    grid("E", e_grid);
    grid("g0", g0_grid);
    grid("tau", tau);
    m["precision.root_tol"] = d(root_tol);
    m["precision.eps_shift"] = d(eps_shift);
    m["gaussian.n_mu"] = d(n_mu);
    m["gaussian.n_phi"] = d(n_phi);
    m["gaussian.k"] = d(k);
    m["gaussian.fock_n"] = std::to_string(fock_n);
    m["sde.steps"] = std::to_string(sde.n_steps);
    m["sde.chunks"] = std::to_string(sde.chunks);
    m["sde.segment"] = std::to_string(sde.segment);
    m["sde.dt"] = d(sde.dt);
    m["sde.seed"] = std::to_string(sde.seed);
    return m;
}

} // namespace opo
