#include "kesten/config.hpp"

#include <cmath>
#include <fstream>

#include "kesten/errors.hpp"

namespace kesten {

namespace {

using nlohmann::json;

double require_double(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(where + ": missing or non-numeric field '" + key + "'");
    return j[key].get<double>();
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty array of rows");
    const std::size_t d = j.size();
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!j[i].is_array() || j[i].size() != d) throw ConfigError(where + ": matrix must be square");
        for (std::size_t k = 0; k < d; ++k) {
            if (!j[i][k].is_number()) throw ConfigError(where + ": non-numeric matrix entry");
            m(i, k) = j[i][k].get<double>();
        }
    }
    return m;
}

Vec vec_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError(where + ": non-numeric vector entry");
        v.push_back(e.get<double>());
    }
    return v;
}

}  // namespace

ScalarDist scalar_dist_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("dist"))
        throw ConfigError("scalar distribution: expected an object with a 'dist' field");
    const std::string dist = spec["dist"].get<std::string>();
    if (dist == "constant") return ScalarDist::constant(require_double(spec, "value", "constant"));
    if (dist == "two_point")
        return ScalarDist::two_point(require_double(spec, "x", "two_point"), require_double(spec, "y", "two_point"),
                                     require_double(spec, "p", "two_point"));
    if (dist == "uniform")
        return ScalarDist::uniform(require_double(spec, "lo", "uniform"), require_double(spec, "hi", "uniform"));
    if (dist == "gaussian")
        return ScalarDist::gaussian(require_double(spec, "mean", "gaussian"), require_double(spec, "sd", "gaussian"));
    if (dist == "lognormal")
        return ScalarDist::lognormal(require_double(spec, "mu", "lognormal"),
                                     require_double(spec, "sigma", "lognormal"));
    if (dist == "pareto")
        return ScalarDist::pareto(require_double(spec, "index", "pareto"), require_double(spec, "scale", "pareto"));
    throw ConfigError("scalar distribution: unknown dist '" + dist + "'");
}

ModelSpec model_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("type"))
        throw ConfigError("model: expected an object with a 'type' field");
    const std::string type = spec["type"].get<std::string>();

    if (type == "scalar") {
        if (!spec.contains("law_a") || !spec.contains("law_b"))
            throw ConfigError("scalar model: needs 'law_a' and 'law_b'");
        return ModelSpec::scalar(scalar_dist_from_json(spec["law_a"]), scalar_dist_from_json(spec["law_b"]));
    }
    if (type == "explicit") {
        if (!spec.contains("support") || !spec["support"].is_array())
            throw ConfigError("explicit model: needs a 'support' array");
        std::vector<ExplicitModel::Atom> atoms;
        for (const auto& a : spec["support"]) {
            ExplicitModel::Atom atom;
            atom.prob = require_double(a, "prob", "explicit support atom");
            atom.a = matrix_from_json(a.contains("a") ? a["a"] : json(), "explicit support atom 'a'");
            atom.b = vec_from_json(a.contains("b") ? a["b"] : json(), "explicit support atom 'b'");
            atoms.push_back(std::move(atom));
        }
        return ModelSpec::explicit_support(std::move(atoms));
    }
    if (type == "sgd_quadratic") {
        return ModelSpec::sgd_quadratic(require_double(spec, "eta", "sgd_quadratic"),
                                        static_cast<int>(require_double(spec, "batch", "sgd_quadratic")),
                                        matrix_from_json(spec.contains("sigma") ? spec["sigma"] : json(),
                                                         "sgd_quadratic 'sigma'"),
                                        require_double(spec, "sigma_b", "sgd_quadratic"));
    }
    if (type == "sgd_momentum") {
        return ModelSpec::sgd_momentum(require_double(spec, "eta", "sgd_momentum"),
                                       require_double(spec, "gamma", "sgd_momentum"),
                                       static_cast<int>(require_double(spec, "batch", "sgd_momentum")),
                                       matrix_from_json(spec.contains("sigma") ? spec["sigma"] : json(),
                                                        "sgd_momentum 'sigma'"),
                                       require_double(spec, "sigma_b", "sgd_momentum"));
    }
    if (type == "arch") {
        if (!spec.contains("alphas")) throw ConfigError("arch model: needs 'alphas'");
        std::vector<double> alphas;
        for (const auto& a : spec["alphas"]) alphas.push_back(a.get<double>());
        return ModelSpec::arch(std::move(alphas), spec.value("noise_mean", 0.0), spec.value("noise_sd", 1.0));
    }
    if (type == "garch") {
        if (!spec.contains("betas")) throw ConfigError("garch model: needs 'betas'");
        std::vector<double> betas;
        for (const auto& b : spec["betas"]) betas.push_back(b.get<double>());
        return ModelSpec::garch(require_double(spec, "alpha0", "garch"), require_double(spec, "alpha1", "garch"),
                                std::move(betas), spec.value("noise_mean", 0.0), spec.value("noise_sd", 1.0));
    }
    throw ConfigError("model: unknown type '" + type + "'");
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path.string() + ": " + e.what());
    }
    return from_json(std::move(doc));
}

RunConfig RunConfig::from_json(nlohmann::json doc) {
    if (!doc.is_object()) throw ConfigError("config: top-level JSON must be an object");
    RunConfig cfg;
    cfg.doc_ = std::move(doc);
    return cfg;
}

ModelSpec RunConfig::model() const {
    if (!doc_.contains("model")) throw ConfigError("config: missing 'model'");
    return model_from_json(doc_["model"]);
}

std::uint64_t RunConfig::seed() const {
    if (!doc_.contains("seed")) return 0;
    if (!doc_["seed"].is_number_unsigned() && !doc_["seed"].is_number_integer())
        throw ConfigError("config: 'seed' must be an integer");
    return doc_["seed"].get<std::uint64_t>();
}

int RunConfig::threads() const { return static_cast<int>(get_long("threads", 0)); }

std::filesystem::path RunConfig::out_dir() const { return get_string("out_dir", "out"); }

long RunConfig::get_long(const std::string& key, long fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return doc_[key].get<long>();
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_number()) throw ConfigError("config: '" + key + "' must be a number");
    return doc_[key].get<double>();
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_boolean()) throw ConfigError("config: '" + key + "' must be a boolean");
    return doc_[key].get<bool>();
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
    if (!doc_.contains(key)) return fallback;
    if (!doc_[key].is_string()) throw ConfigError("config: '" + key + "' must be a string");
    return doc_[key].get<std::string>();
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    if (!doc_.contains(key)) return out;
    if (!doc_[key].is_array()) throw ConfigError("config: '" + key + "' must be an array");
    for (const auto& v : doc_[key]) {
        if (!v.is_number()) throw ConfigError("config: '" + key + "' entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<long> RunConfig::get_long_list(const std::string& key) const {
    std::vector<long> out;
    for (double v : get_double_list(key)) out.push_back(static_cast<long>(v));
    return out;
}

Vec RunConfig::x0(std::size_t dim) const {
    if (!doc_.contains("x0")) return Vec(dim, 0.0);
    Vec v = vec_from_json(doc_["x0"], "config 'x0'");
    if (v.size() != dim) throw ConfigError("config: 'x0' has wrong dimension");
    return v;
}

long RunConfig::resolve_cap(const std::string& regime, double r_max) const {
    if (doc_.contains("cap") && doc_["cap"].is_number()) return doc_["cap"].get<long>();
    const std::string mode = doc_.contains("cap") ? doc_["cap"].get<std::string>() : "auto";
    if (mode != "auto") throw ConfigError("config: 'cap' must be an integer or \"auto\"");
    if (regime == "explosive") return 10000 * static_cast<long>(std::ceil(std::log(std::max(r_max, 2.0))));
    if (!doc_.contains("alpha_hint"))
        throw ConfigError("config: auto cap in contractive mode needs 'alpha_hint' (cap = 10 ceil(R^(alpha+0.5)))");
    const double a = get_double("alpha_hint", 1.0);
    const double cap = 10.0 * std::ceil(std::pow(r_max, a + 0.5));
    if (cap > 9e18) throw ConfigError("config: auto cap overflows; set 'cap' explicitly");
    return static_cast<long>(cap);
}

}  // namespace kesten
