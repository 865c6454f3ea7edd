#pragma once

// Report and certificate serialization. Reports are JSON with every number an
// exact "p/q" string; certificates embed the generator vectors they refer to,
// so replay is pure arithmetic with no LP calls.

#include "analysis.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace siegelcone {

inline constexpr const char* kReportSchema = "siegelcone-report-v1";

inline nlohmann::json vec_to_json(const RatVec& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(rat_to_string(x));
    return out;
}

inline RatVec vec_from_json(const nlohmann::json& j) {
    RatVec out;
    for (const auto& x : j) out.push_back(rat_from_string(x.get<std::string>()));
    return out;
}

inline nlohmann::json generators_to_json(const GeneratorSet& G) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < G.size(); ++i)
        out.push_back({{"label", G.label(i)}, {"vec", vec_to_json(G.generator(i))}});
    return out;
}

inline nlohmann::json classification_to_json(const Classification& cls, const GeneratorSet& G,
                                             const RatVec& x, const std::string& point_name) {
    nlohmann::json j;
    j["point"] = point_name;
    j["x"] = vec_to_json(x);
    switch (cls.kind) {
        case Classification::Kind::interior: {
            j["kind"] = "interior";
            nlohmann::json cert;
            cert["mu"] = vec_to_json(cls.interior->mu);
            cert["chosen"] = cls.interior->chosen;
            cert["sublist_rank"] = cls.interior->sublist_rank;
            j["certificate"] = std::move(cert);
            break;
        }
        case Classification::Kind::boundary:
            j["kind"] = "boundary";
            j["certificate"] = {{"y", vec_to_json(cls.boundary->y)}};
            break;
        case Classification::Kind::outside:
            j["kind"] = "outside";
            j["off_span"] = cls.off_span;
            j["certificate"] = {{"y", vec_to_json(cls.boundary->y)}};
            break;
    }
    (void)G;
    return j;
}

// Pure-arithmetic replay of one classification certificate against the
// embedded generator vectors. No LP anywhere.
inline bool replay_classification(const nlohmann::json& j, const std::vector<RatVec>& gens) {
    const RatVec x = vec_from_json(j.at("x"));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "interior") {
        const RatVec mu = vec_from_json(j.at("certificate").at("mu"));
        const auto chosen = j.at("certificate").at("chosen").get<std::vector<std::size_t>>();
        if (mu.size() != chosen.size() || mu.empty()) return false;
        RatVec acc(x.size(), Rat(0));
        std::vector<RatVec> sub;
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (mu[i] <= 0) return false;
            const RatVec& g = gens.at(chosen[i]);
            sub.push_back(g);
            for (std::size_t t = 0; t < x.size(); ++t) acc[t] += mu[i] * g[t];
        }
        if (acc != x) return false;
        return linalg::rank(sub) == j.at("certificate").at("sublist_rank").get<int>();
    }
    const RatVec y = vec_from_json(j.at("certificate").at("y"));
    if (is_zero(y)) return false;
    for (const auto& g : gens)
        if (dot(y, g) < 0) return false;
    if (kind == "boundary") return dot(y, x) == 0;
    if (kind == "outside") {
        if (j.value("off_span", false)) {
            for (const auto& g : gens)
                if (dot(y, g) != 0) return false;
            return dot(y, x) != 0;
        }
        return dot(y, x) < 0;
    }
    return false;
}

inline nlohmann::json facets_to_json(const FacetList& facets) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& y : facets.normals) out.push_back(vec_to_json(y));
    return out;
}

inline bool replay_facets(const nlohmann::json& j, const std::vector<RatVec>& gens) {
    for (const auto& yj : j) {
        const RatVec y = vec_from_json(yj);
        for (const auto& g : gens)
            if (dot(y, g) < 0) return false;
    }
    return true;
}

inline bool replay_ball(const nlohmann::json& ball, const nlohmann::json& facets) {
    const RatVec P = vec_from_json(ball.at("center"));
    const Rat rho_sq = rat_from_string(ball.at("rho_sq").get<std::string>());
    for (const auto& yj : facets) {
        const RatVec y = vec_from_json(yj);
        const Rat yp = dot(y, P);
        if (yp <= 0 || yp * yp < rho_sq * norm_sq(y)) return false;
    }
    return true;
}

// Replays every certificate in a report. Returns the number of failed
// certificates (0 means the report re-verifies).
inline int replay_report(const nlohmann::json& report) {
    if (report.at("schema").get<std::string>() != kReportSchema)
        throw std::runtime_error("replay: unknown schema");
    std::vector<RatVec> gens;
    if (report.contains("generators"))
        for (const auto& g : report.at("generators")) gens.push_back(vec_from_json(g.at("vec")));
    int failures = 0;
    if (report.contains("classifications"))
        for (const auto& c : report.at("classifications"))
            if (!replay_classification(c, gens)) ++failures;
    if (report.contains("subcone_certificates"))
        for (const auto& sc : report.at("subcone_certificates")) {
            std::vector<RatVec> sub_gens;
            for (const auto& g : sc.at("generators")) sub_gens.push_back(vec_from_json(g.at("vec")));
            if (!replay_classification(sc.at("classification"), sub_gens)) ++failures;
        }
    if (report.contains("facets") && !replay_facets(report.at("facets"), gens)) ++failures;
    if (report.contains("ball") && report.contains("facets") &&
        !replay_ball(report.at("ball"), report.at("facets")))
        ++failures;
    if (report.contains("pinf_identity")) {
        // sum_j eta_j sigma_{k-1}(j) P_j = (sum eta_j sigma) P_inf over embedded P_j
        const auto& blk = report.at("pinf_identity");
        const RatVec eta = vec_from_json(blk.at("eta"));
        RatVec acc;
        Rat total = 0;
        const unsigned km1 = blk.at("k").get<unsigned>() - 1;
        std::size_t idx = 0;
        for (const auto& pj : blk.at("p_points")) {
            const RatVec p = vec_from_json(pj);
            if (acc.empty()) acc.assign(p.size(), Rat(0));
            const Rat w = eta.at(idx) * Rat(sigma_pow(km1, static_cast<long>(idx) + 1));
            total += w;
            for (std::size_t i = 0; i < p.size(); ++i) acc[i] += w * p[i];
            ++idx;
        }
        bool ok = !acc.empty();
        if (ok) {
            for (std::size_t i = 0; i < acc.size(); ++i) {
                const Rat expect = i == 0 ? total : Rat(0);
                if (acc[i] != expect) ok = false;
            }
        }
        if (!ok) ++failures;
    }
    return failures;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

// CSV emitters for the two paper-style tables.
inline std::string boundary_table_csv(const BoundaryTable& t) {
    std::ostringstream out;
    out << "k,m,verdict\n";
    for (const auto& row : t.rows)
        out << t.k << "," << row.m << "," << verdict_name(row.verdict) << "\n";
    return out.str();
}

inline std::string fm_table_csv(int k, const FmAnalysis& fm) {
    std::ostringstream out;
    out << "k,m,contained,internal,dim_Fm,dim_cone\n";
    out << k << "," << fm.m << "," << (fm.contains ? "yes" : "no") << ","
        << (fm.internal ? "yes" : "no") << "," << fm.dim_Fm << "," << fm.dim_cone << "\n";
    return out.str();
}

}  // namespace siegelcone
