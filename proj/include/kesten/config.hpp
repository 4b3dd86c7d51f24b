#ifndef KESTEN_CONFIG_HPP
#define KESTEN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kesten/models.hpp"

namespace kesten {

// One JSON document per run. The document is kept verbatim (normalized by
// nlohmann's sorted-key dump), so parse(serialize(config)) == config and the
// manifest can echo exactly what was executed.
class RunConfig {
public:
    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig from_json(nlohmann::json doc);

    std::string serialize() const { return doc_.dump(2); }
    const nlohmann::json& doc() const { return doc_; }

    // CLI overrides, applied before execution and reflected in the echo.
    void override_seed(std::uint64_t seed) { doc_["seed"] = seed; }
    void override_out_dir(const std::string& dir) { doc_["out_dir"] = dir; }
    void override_threads(int threads) { doc_["threads"] = threads; }

    ModelSpec model() const;

    std::uint64_t seed() const;
    int threads() const;
    std::filesystem::path out_dir() const;

    long get_long(const std::string& key, long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;  // empty when absent
    std::vector<long> get_long_list(const std::string& key) const;
    bool has(const std::string& key) const { return doc_.contains(key); }

    Vec x0(std::size_t dim) const;  // defaults to the origin

    // "cap": explicit integer, or "auto" resolved per regime. Contractive
    // auto needs "alpha_hint" in the config.
    long resolve_cap(const std::string& regime, double r_max) const;

private:
    nlohmann::json doc_;
};

ModelSpec model_from_json(const nlohmann::json& spec);
ScalarDist scalar_dist_from_json(const nlohmann::json& spec);

}  // namespace kesten

#endif  // KESTEN_CONFIG_HPP
