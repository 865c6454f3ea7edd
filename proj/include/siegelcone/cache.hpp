#pragma once

// On-disk expansion cache: JSON payloads keyed by (weight, box, form id, code
// version), checksum-validated on read. Version or checksum mismatches are
// treated as misses, never silently reused.

#include "siegel_expansion.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

namespace siegelcone {

inline constexpr const char* kCacheVersion = "siegelcone-cache-1";

struct CacheKey {
    int weight = 0;
    int box = 0;
    std::string form_id;

    std::string filename() const {
        return "k" + std::to_string(weight) + "_N" + std::to_string(box) + "_" + form_id + ".json";
    }
};

inline nlohmann::json expansion_to_json(const SiegelExpansion& F) {
    nlohmann::json j;
    j["weight"] = F.weight();
    j["box"] = F.box();
    j["zero"] = rat_to_string(F.zero_coeff());
    nlohmann::json sing = nlohmann::json::array();
    for (long e = 1; e <= F.box(); ++e) sing.push_back(rat_to_string(F.singular_coeff(e)));
    j["singular"] = std::move(sing);
    nlohmann::json pd = nlohmann::json::array();
    F.for_each_reduced([&](long n, long r, long m) {
        const Rat& c = F.pd_coeff(n, r, m);
        if (c != 0) pd.push_back({n, r, m, rat_to_string(c)});
    });
    j["pd"] = std::move(pd);
    return j;
}

inline SiegelExpansion expansion_from_json(const nlohmann::json& j) {
    SiegelExpansion F(j.at("weight").get<int>(), j.at("box").get<int>());
    F.zero_coeff() = rat_from_string(j.at("zero").get<std::string>());
    const auto& sing = j.at("singular");
    for (long e = 1; e <= F.box(); ++e)
        F.singular_coeff(e) = rat_from_string(sing.at(static_cast<std::size_t>(e - 1)).get<std::string>());
    for (const auto& row : j.at("pd"))
        F.pd_coeff(row.at(0).get<long>(), row.at(1).get<long>(), row.at(2).get<long>()) =
            rat_from_string(row.at(3).get<std::string>());
    return F;
}

class ExpansionCache {
  public:
    // Directory from the explicit argument, else SIEGELCONE_CACHE_DIR, else disabled.
    explicit ExpansionCache(std::string dir = "") {
        if (dir.empty()) {
            if (const char* env = std::getenv("SIEGELCONE_CACHE_DIR")) dir = env;
        }
        dir_ = std::move(dir);
        if (!dir_.empty()) std::filesystem::create_directories(dir_);
    }

    bool enabled() const { return !dir_.empty(); }

    void store(const CacheKey& key, const SiegelExpansion& F) const {
        if (!enabled()) return;
        nlohmann::json j;
        j["version"] = kCacheVersion;
        j["key"] = {{"weight", key.weight}, {"box", key.box}, {"form", key.form_id}};
        nlohmann::json payload = expansion_to_json(F);
        const std::string text = payload.dump();
        Fnv1a h;
        h.feed(text);
        j["checksum"] = h.hex();
        j["payload"] = std::move(payload);
        std::ofstream out(path(key));
        out << j.dump();
    }

    std::optional<SiegelExpansion> load(const CacheKey& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path(key));
        if (!in) return std::nullopt;
        nlohmann::json j;
        try {
            in >> j;
            if (j.at("version").get<std::string>() != kCacheVersion) return std::nullopt;
            const std::string text = j.at("payload").dump();
            Fnv1a h;
            h.feed(text);
            if (j.at("checksum").get<std::string>() != h.hex()) return std::nullopt;
            return expansion_from_json(j.at("payload"));
        } catch (const std::exception&) {
            return std::nullopt;  // corrupted payload: recompute path
        }
    }

  private:
    std::string dir_;

    std::string path(const CacheKey& key) const {
        return (std::filesystem::path(dir_) / key.filename()).string();
    }
};

}  // namespace siegelcone
