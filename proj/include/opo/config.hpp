#pragma once

#include <map>
#include <string>
#include <vector>

#include "opo/model.hpp"
#include "opo/oracle.hpp"
#include "opo/spectra.hpp"
#include "opo/transfer.hpp"

namespace opo {

struct Grid {
    double lo = 0.0, hi = 1.0;
    int n = 2;
    bool log = false;
    std::vector<double> points() const;
};

// One task invocation. Sections of the key=value file:
//   [params] g0 delta psi E loss0 loss1 loss2   (normalized)  or
//   [raw] gamma0 gamma1 gamma2 kappa0 kappa1 kappa2 psi chi E  (rates)
//   [noise] dnu_L s_eps    [output] c_sq target beam route
//   [grid] omega_* E_* g0_* tau_* (lo, hi, n, log)
//   [precision] root_tol eps_shift    [gaussian] n_mu n_phi k fock_n
//   [sde] steps chunks segment dt seed
struct RunConfig {
    std::string task;
    std::string preset;
    bool raw = false;
    OpoParams raw_params;
    NormalizedParams np = NormalizedParams::make(2.0, 0.0, 0.0);
    double E = 2.0;
    double dnu_L = 0.0, s_eps = 0.0;
    double c_sq = 1.0;
    Target target = Target::output;
    int beam = 1;
    Route route = Route::general;
    Grid omega{0.01, 10.0, 400, false};
    Grid e_grid{1.01, 10.0, 200, false};
    Grid g0_grid{0.1, 6.0, 60, false};
    Grid tau{0.0, 10.0, 201, false};
    double root_tol = 1e-9;
    double eps_shift = 0.0;
    double n_mu = 2.0, n_phi = 0.5, k = 1.0;
    int fock_n = 200;
    oracle::SdeConfig sde;

    // Every resolved key, for CSV headers.
    std::map<std::string, std::string> echo() const;
};

// Overlays `text` onto `base`. Throws ConfigError on syntax or unknown keys.
void apply_config_text(RunConfig& base, const std::string& text);
void apply_config_file(RunConfig& base, const std::string& path);
// Throws DomainError.
void validate(RunConfig& cfg);

// Full-precision, locale-independent number parsing.
double parse_double(const std::string& s, const std::string& key);
long long parse_int(const std::string& s, const std::string& key);

} // namespace opo
