#pragma once

#include <string>

#include <json.hpp>

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/oracle.hpp"
#include "caterpack/verify.hpp"

namespace caterpack {

using ojson = nlohmann::ordered_json;

inline ojson caterpillar_to_json(const Caterpillar& c) {
    ojson j;
    j["n"] = c.n;
    j["spine"] = c.spine;
    j["leaves"] = c.leaves;
    return j;
}

inline Caterpillar caterpillar_from_json(const ojson& j) {
    try {
        Caterpillar c;
        c.n = j.at("n").get<int>();
        c.spine = j.at("spine").get<std::vector<int>>();
        c.leaves = j.at("leaves").get<std::vector<std::vector<int>>>();
        validate_caterpillar(c);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("caterpillar json: ") + e.what());
    } catch (const structure_error& e) {
        throw parameter_error(std::string("caterpillar json: ") + e.what());
    }
}

inline const char* side_name(Side s) { return s == Side::inner ? "inner" : "outer"; }

inline ojson drawing_to_json(const ConvexDrawing& d) {
    ojson j;
    j["n"] = d.n;
    j["start"] = d.start;
    ojson es = ojson::array();
    for (const auto& e : d.edges) es.push_back(ojson::array({e.a, e.b, side_name(e.side)}));
    j["edges"] = std::move(es);
    return j;
}

inline ConvexDrawing drawing_from_json(const ojson& j) {
    try {
        ConvexDrawing d;
        d.n = j.at("n").get<int>();
        d.start = j.at("start").get<int>();
        if (d.n < 3) throw parameter_error("drawing json: n must be >= 3");
        if (d.start < 0 || d.start >= d.n) throw parameter_error("drawing json: start out of range");
        for (const auto& item : j.at("edges")) {
            if (!item.is_array() || item.size() != 3)
                throw parameter_error("drawing json: edge entries are [a, b, side]");
            DrawnEdge e;
            e.a = item.at(0).get<int>();
            e.b = item.at(1).get<int>();
            const std::string side = item.at(2).get<std::string>();
            if (side == "inner")
                e.side = Side::inner;
            else if (side == "outer")
                e.side = Side::outer;
            else
                throw parameter_error("drawing json: side must be inner or outer");
            if (e.a < 0 || e.a >= d.n || e.b < 0 || e.b >= d.n || e.a == e.b)
                throw parameter_error("drawing json: edge endpoints out of range");
            d.edges.push_back(e);
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("drawing json: ") + e.what());
    }
}

inline ojson layout_to_json(const PackingLayout& l) {
    ojson j;
    j["n"] = l.n;
    ojson ds = ojson::array();
    for (const auto& d : l.drawings) ds.push_back(drawing_to_json(d));
    j["drawings"] = std::move(ds);
    return j;
}

inline PackingLayout layout_from_json(const ojson& j) {
    try {
        // Accept both a bare layout and the {"layout": ..., "report": ...}
        // object the pack command emits.
        const ojson& root = j.contains("layout") ? j.at("layout") : j;
        PackingLayout l;
        l.n = root.at("n").get<int>();
        if (l.n < 3) throw parameter_error("layout json: n must be >= 3");
        for (const auto& dj : root.at("drawings")) {
            ConvexDrawing d = drawing_from_json(dj);
            if (d.n != l.n) throw parameter_error("layout json: drawing n mismatch");
            l.drawings.push_back(std::move(d));
        }
        return l;
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("layout json: ") + e.what());
    }
}

inline PackingLayout parse_layout(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("layout json: ") + e.what());
    }
    return layout_from_json(j);
}

inline ojson report_to_json(const CrossingReport& r) {
    ojson j;
    j["k"] = r.k;
    ojson dup = ojson::array();
    for (const auto& [a, b] : r.multi_edges) dup.push_back(ojson::array({a, b}));
    j["multi_edges"] = std::move(dup);
    ojson pe = ojson::array();
    for (const auto& e : r.per_edge) pe.push_back(ojson::array({e.a, e.b, e.count}));
    j["per_edge"] = std::move(pe);
    j["degrees"] = r.degrees;
    return j;
}

inline ojson rational_to_json(const Rational& r) {
    ojson j;
    j["num"] = r.num;
    j["den"] = r.den;
    j["approx"] = r.to_double();
    return j;
}

inline ojson oracle_result_to_json(const OracleResult& r) {
    ojson j;
    switch (r.status) {
    case OracleStatus::exists: j["verdict"] = "exists"; break;
    case OracleStatus::impossible: j["verdict"] = "impossible"; break;
    case OracleStatus::budget_exhausted: j["verdict"] = "budget-exhausted"; break;
    }
    j["nodes"] = r.nodes;
    j["solutions"] = r.solutions;
    if (!r.certificate.empty()) j["certificate"] = r.certificate;
    return j;
}

} // namespace caterpack
