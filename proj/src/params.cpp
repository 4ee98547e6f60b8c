#include "iwave/params.hpp"
#include "iwave/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace iwave {

namespace {
constexpr double pi = 3.14159265358979323846;

[[noreturn]] void bad(const std::string& what) {
    throw ValidationError(err_invalid_params, what);
}
} // namespace

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(rho) || !finite(h) || !finite(alpha) || !finite(beta) ||
        !finite(theta1) || !finite(theta2) || !finite(nu0))
        bad("non-finite parameter value");
    if (!(rho > 0.0 && rho < 1.0)) bad("rho must lie in (0,1)");
    if (!(h > 0.0)) bad("h must be positive");
    if (!(alpha > 0.0)) bad("alpha must be positive");
    if (!(beta >= 0.0)) bad("beta must be nonnegative");
    if (!(theta1 > -pi && theta1 < pi)) bad("theta1 must lie in (-pi,pi)");
    if (!(theta2 > -pi && theta2 < pi)) bad("theta2 must lie in (-pi,pi)");
    if (!(nu0 > 0.0)) bad("nu0 must be positive");
}

void BifurcationOffsets::validate(const ModelParams& p,
                                  double bound_factor) const {
    if (!std::isfinite(mu1) || !std::isfinite(mu2)) bad("non-finite offset");
    const double bound = bound_factor * p.nu0;
    if (std::abs(mu1) > bound || std::abs(mu2) > bound)
        bad("offsets mu1, mu2 must satisfy |mu| <= " + std::to_string(bound));
}

ParamsFile load_params_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        bad(std::string("JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) bad("top-level JSON value must be an object");

    static const char* mandatory[] = {"rho", "h",      "alpha", "beta",
                                      "theta1", "theta2", "nu0"};
    static const char* optional[] = {"mu1", "mu2"};

    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        bool known = false;
        for (const char* m : mandatory) known = known || key == m;
        for (const char* o : optional) known = known || key == o;
        if (!known) bad("unknown field '" + key + "'");
        if (!it.value().is_number()) bad("field '" + key + "' must be a number");
    }
    for (const char* m : mandatory)
        if (!j.contains(m)) bad(std::string("missing field '") + m + "'");

    ParamsFile out;
    out.params.rho = j["rho"].get<double>();
    out.params.h = j["h"].get<double>();
    out.params.alpha = j["alpha"].get<double>();
    out.params.beta = j["beta"].get<double>();
    out.params.theta1 = j["theta1"].get<double>();
    out.params.theta2 = j["theta2"].get<double>();
    out.params.nu0 = j["nu0"].get<double>();
    out.offsets.mu1 = j.value("mu1", 0.0);
    out.offsets.mu2 = j.value("mu2", 0.0);

    out.params.validate();
    out.offsets.validate(out.params);
    return out;
}

ParamsFile load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open parameter file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_params_json(ss.str());
}

std::string params_to_json(const ModelParams& p, const BifurcationOffsets& o) {
    nlohmann::json j;
    j["rho"] = p.rho;
    j["h"] = p.h;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["theta1"] = p.theta1;
    j["theta2"] = p.theta2;
    j["nu0"] = p.nu0;
    j["mu1"] = o.mu1;
    j["mu2"] = o.mu2;
    return j.dump(2);
}

} // namespace iwave
