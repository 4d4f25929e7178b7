#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mistp/instance.hpp"
#include "mistp/model.hpp"
#include "mistp/scalarize.hpp"

namespace mistp {

using json = nlohmann::ordered_json;

/// Malformed instance/solution input; the message names the offending key path.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

inline const json& require_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ParseError("missing field " + path + key);
    return obj.at(key);
}

inline double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path + ": expected a number");
    return v.get<double>();
}

inline TrapezoidalFuzzy fuzzy_at(const json& v, const std::string& path) {
    if (v.is_number()) return TrapezoidalFuzzy::crisp(v.get<double>());
    if (!v.is_array() || v.size() != 4) {
        throw ParseError(path + ": expected a 4-array (trapezoid) or a scalar (crisp)");
    }
    double r[4];
    for (int t = 0; t < 4; ++t) r[t] = number_at(v.at(t), path + "[" + std::to_string(t) + "]");
    if (!(r[0] <= r[1] && r[1] <= r[2] && r[2] <= r[3])) {
        throw ParseError(path + ": non-monotone trapezoid");
    }
    return {r[0], r[1], r[2], r[3]};
}

inline void require_array(const json& v, std::size_t size, const std::string& path) {
    if (!v.is_array() || v.size() != size) {
        throw ParseError(path + ": expected an array of length " + std::to_string(size));
    }
}

}  // namespace detail

inline Instance parse_instance_json(const json& doc) {
    using detail::require_field;
    Instance inst;

    const json& dims = require_field(doc, "dimensions", "");
    inst.num_sources = static_cast<int>(detail::number_at(require_field(dims, "m", "dimensions."), "dimensions.m"));
    inst.num_destinations =
        static_cast<int>(detail::number_at(require_field(dims, "n", "dimensions."), "dimensions.n"));
    inst.num_vehicle_types =
        static_cast<int>(detail::number_at(require_field(dims, "K", "dimensions."), "dimensions.K"));
    inst.num_products = static_cast<int>(detail::number_at(require_field(dims, "l", "dimensions."), "dimensions.l"));
    if (inst.num_sources < 1 || inst.num_destinations < 1 || inst.num_vehicle_types < 1 || inst.num_products < 1) {
        throw ParseError("dimensions: all of m, n, K, l must be at least 1");
    }
    const int m = inst.num_sources, n = inst.num_destinations;
    const int K = inst.num_vehicle_types, l = inst.num_products;

    auto parse_route_table = [&](const char* key, std::vector<TrapezoidalFuzzy>& out) {
        const json& table = require_field(doc, key, "");
        detail::require_array(table, m, key);
        for (int i = 0; i < m; ++i) {
            const std::string pi = std::string(key) + "[" + std::to_string(i) + "]";
            detail::require_array(table.at(i), n, pi);
            for (int j = 0; j < n; ++j) {
                const std::string pj = pi + "[" + std::to_string(j) + "]";
                detail::require_array(table.at(i).at(j), K, pj);
                for (int k = 0; k < K; ++k) {
                    out.push_back(detail::fuzzy_at(table.at(i).at(j).at(k), pj + "[" + std::to_string(k) + "]"));
                }
            }
        }
    };
    parse_route_table("cost", inst.vehicle_cost);
    parse_route_table("travel_time_hours", inst.travel_time);

    {
        const json& table = require_field(doc, "handling_time_minutes", "");
        detail::require_array(table, l, "handling_time_minutes");
        for (int p = 0; p < l; ++p) {
            const std::string pp = "handling_time_minutes[" + std::to_string(p) + "]";
            detail::require_array(table.at(p), K, pp);
            for (int k = 0; k < K; ++k) {
                inst.handling_time.push_back(detail::fuzzy_at(table.at(p).at(k), pp + "[" + std::to_string(k) + "]"));
            }
        }
    }

    auto parse_list = [&](const char* key, std::size_t size, std::vector<double>& out) {
        const json& list = require_field(doc, key, "");
        detail::require_array(list, size, key);
        for (std::size_t t = 0; t < size; ++t) {
            out.push_back(detail::number_at(list.at(t), std::string(key) + "[" + std::to_string(t) + "]"));
        }
    };
    parse_list("volume_cap_ft3", K, inst.volume_cap);
    parse_list("weight_cap_kg", K, inst.weight_cap);
    parse_list("unit_volume_ft3", l, inst.unit_volume);
    parse_list("unit_weight_kg", l, inst.unit_weight);

    auto parse_matrix = [&](const char* key, std::size_t rows, std::size_t cols, std::vector<double>& out) {
        const json& mat = require_field(doc, key, "");
        detail::require_array(mat, rows, key);
        for (std::size_t a = 0; a < rows; ++a) {
            const std::string pa = std::string(key) + "[" + std::to_string(a) + "]";
            detail::require_array(mat.at(a), cols, pa);
            for (std::size_t b = 0; b < cols; ++b) {
                out.push_back(detail::number_at(mat.at(a).at(b), pa + "[" + std::to_string(b) + "]"));
            }
        }
    };
    parse_matrix("supply", m, l, inst.supply);
    parse_matrix("demand", n, l, inst.demand);

    {
        const json& list = require_field(doc, "fleet", "");
        detail::require_array(list, K, "fleet");
        for (int k = 0; k < K; ++k) {
            inst.fleet.push_back(static_cast<int>(detail::number_at(list.at(k), "fleet[" + std::to_string(k) + "]")));
        }
    }

    ValidationReport report = validate(inst);
    if (!report.ok()) {
        throw ParseError("instance rejected by validation: " + report.errors.front());
    }
    return inst;
}

inline Instance parse_instance(const std::string& path) {
    return parse_instance_json(detail::load_json_file(path));
}

inline json serialize_instance(const Instance& inst) {
    json doc;
    doc["dimensions"] = {{"m", inst.num_sources},
                         {"n", inst.num_destinations},
                         {"K", inst.num_vehicle_types},
                         {"l", inst.num_products}};
    auto fuzzy = [](const TrapezoidalFuzzy& v) { return json::array({v.r1, v.r2, v.r3, v.r4}); };
    auto route_table = [&](const std::vector<TrapezoidalFuzzy>& table) {
        json out = json::array();
        for (int i = 0; i < inst.num_sources; ++i) {
            json ji = json::array();
            for (int j = 0; j < inst.num_destinations; ++j) {
                json jj = json::array();
                for (int k = 0; k < inst.num_vehicle_types; ++k) {
                    jj.push_back(fuzzy(table[inst.route_index(i, j, k)]));
                }
                ji.push_back(std::move(jj));
            }
            out.push_back(std::move(ji));
        }
        return out;
    };
    doc["cost"] = route_table(inst.vehicle_cost);
    doc["travel_time_hours"] = route_table(inst.travel_time);
    {
        json table = json::array();
        for (int p = 0; p < inst.num_products; ++p) {
            json row = json::array();
            for (int k = 0; k < inst.num_vehicle_types; ++k) row.push_back(fuzzy(inst.handling(p, k)));
            table.push_back(std::move(row));
        }
        doc["handling_time_minutes"] = std::move(table);
    }
    doc["volume_cap_ft3"] = inst.volume_cap;
    doc["weight_cap_kg"] = inst.weight_cap;
    doc["unit_volume_ft3"] = inst.unit_volume;
    doc["unit_weight_kg"] = inst.unit_weight;
    auto matrix = [](const std::vector<double>& flat, int rows, int cols) {
        json out = json::array();
        for (int a = 0; a < rows; ++a) {
            json row = json::array();
            for (int b = 0; b < cols; ++b) row.push_back(flat[static_cast<std::size_t>(a) * cols + b]);
            out.push_back(std::move(row));
        }
        return out;
    };
    doc["supply"] = matrix(inst.supply, inst.num_sources, inst.num_products);
    doc["demand"] = matrix(inst.demand, inst.num_destinations, inst.num_products);
    doc["fleet"] = inst.fleet;
    return doc;
}

/// FNV-1a over the canonical serialization; identifies the instance in reports.
inline std::string instance_digest(const Instance& inst) {
    const std::string bytes = serialize_instance(inst).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int t = 15; t >= 0; --t) {
        buf[t] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv1a:") + buf;
}

inline MistpSolution parse_solution_json(const json& doc, const Instance& inst) {
    MistpSolution sol;
    sol.m = inst.num_sources;
    sol.n = inst.num_destinations;
    sol.K = inst.num_vehicle_types;
    sol.l = inst.num_products;
    sol.status = SolveStatus::Feasible;

    const json& z = detail::require_field(doc, "z", "");
    detail::require_array(z, sol.m, "z");
    for (int i = 0; i < sol.m; ++i) {
        const std::string pi = "z[" + std::to_string(i) + "]";
        detail::require_array(z.at(i), sol.n, pi);
        for (int j = 0; j < sol.n; ++j) {
            const std::string pj = pi + "[" + std::to_string(j) + "]";
            detail::require_array(z.at(i).at(j), sol.K, pj);
            for (int k = 0; k < sol.K; ++k) {
                sol.trips.push_back(detail::number_at(z.at(i).at(j).at(k), pj + "[" + std::to_string(k) + "]"));
            }
        }
    }
    const json& x = detail::require_field(doc, "x", "");
    detail::require_array(x, sol.m, "x");
    for (int i = 0; i < sol.m; ++i) {
        const std::string pi = "x[" + std::to_string(i) + "]";
        detail::require_array(x.at(i), sol.n, pi);
        for (int j = 0; j < sol.n; ++j) {
            const std::string pj = pi + "[" + std::to_string(j) + "]";
            detail::require_array(x.at(i).at(j), sol.K, pj);
            for (int k = 0; k < sol.K; ++k) {
                const std::string pk = pj + "[" + std::to_string(k) + "]";
                detail::require_array(x.at(i).at(j).at(k), sol.l, pk);
                for (int p = 0; p < sol.l; ++p) {
                    sol.shipments.push_back(
                        detail::number_at(x.at(i).at(j).at(k).at(p), pk + "[" + std::to_string(p) + "]"));
                }
            }
        }
    }
    return sol;
}

inline MistpSolution parse_solution(const std::string& path, const Instance& inst) {
    return parse_solution_json(detail::load_json_file(path), inst);
}

inline json solution_to_json(const MistpSolution& sol) {
    json out;
    out["status"] = to_string(sol.status);
    json z = json::array();
    for (int i = 0; i < sol.m; ++i) {
        json ji = json::array();
        for (int j = 0; j < sol.n; ++j) {
            json jj = json::array();
            for (int k = 0; k < sol.K; ++k) jj.push_back(sol.z(i, j, k));
            ji.push_back(std::move(jj));
        }
        z.push_back(std::move(ji));
    }
    out["z"] = std::move(z);
    json x = json::array();
    for (int i = 0; i < sol.m; ++i) {
        json ji = json::array();
        for (int j = 0; j < sol.n; ++j) {
            json jj = json::array();
            for (int k = 0; k < sol.K; ++k) {
                json jk = json::array();
                for (int p = 0; p < sol.l; ++p) jk.push_back(sol.x(i, j, k, p));
                jj.push_back(std::move(jk));
            }
            ji.push_back(std::move(jj));
        }
        x.push_back(std::move(ji));
    }
    out["x"] = std::move(x);
    return out;
}

inline json evaluation_to_json(const EvaluationResult& eval) {
    json out;
    out["f1"] = eval.f1;
    out["f2"] = eval.f2;
    out["feasible"] = eval.feasible;
    json checks = json::array();
    for (const auto& c : eval.checks) {
        checks.push_back({{"constraint", c.label},
                          {"activity", c.activity},
                          {"bound", c.bound},
                          {"slack", c.slack},
                          {"satisfied", c.satisfied}});
    }
    out["checks"] = std::move(checks);
    return out;
}

inline std::string front_to_csv(const std::vector<ParetoPoint>& front) {
    std::ostringstream out;
    out << "w,f1,f2\n";
    for (const auto& pt : front) {
        out << detail::format_double(pt.weight) << ',' << detail::format_double(pt.f1) << ','
            << detail::format_double(pt.f2) << '\n';
    }
    return out.str();
}

inline std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
    std::ostringstream out;
    out << "eps,f1,f2,G\n";
    for (const auto& pt : sweep) {
        out << detail::format_double(pt.eps) << ',' << detail::format_double(pt.f1) << ','
            << detail::format_double(pt.f2) << ',' << detail::format_double(pt.criterion) << '\n';
    }
    return out.str();
}

}  // namespace mistp
