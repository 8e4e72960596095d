/**
 * @file io.cpp
 * @brief Serialization formats.
 */
#include "magicrect/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace magicrect {

using nlohmann::json;

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "latex") return Format::Latex;
    if (name == "pretty") return Format::Pretty;
    fail(ErrorCode::ParseError, "unknown format '" + name + "'");
}

json group_to_json(const Group& g) { return json{{"factors", g.factors()}}; }

Group group_from_json(const json& j) {
    if (j.is_string()) return parse_group(j.get<std::string>());
    if (j.is_object() && j.contains("factors")) return Group(j.at("factors").get<std::vector<std::int64_t>>());
    fail(ErrorCode::ParseError, "group must be {\"factors\":[..]} or a string");
}

json element_to_json(const Element& e) {
    if (e.group().is_integer()) return e[0];
    return e.coords();
}

Element element_from_json(const Group& g, const json& j) {
    if (g.is_integer()) {
        if (!j.is_number_integer()) fail(ErrorCode::ParseError, "integer entry expected");
        return Element(g, {j.get<std::int64_t>()});
    }
    if (!j.is_array()) fail(ErrorCode::ParseError, "element must be a coordinate list");
    auto c = j.get<Coords>();
    if (c.size() != g.rank()) fail(ErrorCode::ParseError, "element " + j.dump() + " has wrong length for " + g.to_string());
    return g.element(c);
}

json array_to_json(const PFArray& a) {
    json cells = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < a.cols(); ++j) {
            auto e = a.at(i, j);
            row.push_back(e ? element_to_json(*e) : json(nullptr));
        }
        cells.push_back(row);
    }
    return json{{"m", a.rows()}, {"n", a.cols()}, {"cells", cells}};
}

PFArray array_from_json(const Group& g, const json& j) {
    const auto& cells = j.at("cells");
    const std::size_t m = cells.size(), n = m ? cells[0].size() : 0;
    if (j.contains("m") && j.at("m").get<std::size_t>() != m) fail(ErrorCode::ParseError, "m does not match cells");
    if (j.contains("n") && j.at("n").get<std::size_t>() != n) fail(ErrorCode::ParseError, "n does not match cells");
    PFArray::Builder b(m, n, g);
    for (std::size_t i = 0; i < m; ++i) {
        if (cells[i].size() != n) fail(ErrorCode::ParseError, "ragged cells");
        for (std::size_t k = 0; k < n; ++k)
            if (!cells[i][k].is_null()) b.set(i, k, element_from_json(g, cells[i][k]));
    }
    return std::move(b).build();
}

json instance_to_json(const MRSInstance& inst) {
    const auto& p = inst.params;
    json j;
    j["params"] = {{"m", p.m}, {"n", p.n}, {"s", p.s}, {"k", p.k}, {"c", p.c}};
    j["mode"] = inst.mode() == EntryMode::Integer ? "integer" : "group";
    if (inst.mode() == EntryMode::Group) j["group"] = group_to_json(inst.group);
    j["arrays"] = json::array();
    for (auto& a : inst.arrays) j["arrays"].push_back(array_to_json(a));
    if (inst.omega) j["omega"] = element_to_json(*inst.omega);
    if (inst.delta) j["delta"] = element_to_json(*inst.delta);
    return j;
}

MRSInstance instance_from_json(const json& j) {
    try {
        MRSInstance inst;
        const auto& p = j.at("params");
        inst.params = {p.at("m").get<std::int64_t>(), p.at("n").get<std::int64_t>(), p.at("s").get<std::int64_t>(),
                       p.at("k").get<std::int64_t>(), p.at("c").get<std::int64_t>()};
        const bool integer = j.value("mode", "group") == "integer";
        inst.group = integer ? Group::integers() : group_from_json(j.at("group"));
        for (auto& a : j.at("arrays")) inst.arrays.push_back(array_from_json(inst.group, a));
        if (j.contains("omega") && !j["omega"].is_null()) inst.omega = element_from_json(inst.group, j["omega"]);
        if (j.contains("delta") && !j["delta"].is_null()) inst.delta = element_from_json(inst.group, j["delta"]);
        return inst;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

namespace {

std::string bar_entry(const Element& e) {
    std::string s;
    for (std::size_t i = 0; i < e.coords().size(); ++i) {
        if (i) s += "|";
        s += std::to_string(e[i]);
    }
    return s;
}

std::string latex_entry(const Element& e, bool compact) {
    if (e.group().is_integer()) return std::to_string(e[0]);
    const auto& f = e.group().factors();
    if (compact) {
        std::string s;
        for (auto x : e.coords()) s += std::to_string(x);
        return s;
    }
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(e[i]) + "]_{" + std::to_string(f[i]) + "}";
    }
    return s + ")";
}

}  // namespace

std::string to_csv(const MRSInstance& inst) {
    std::ostringstream os;
    for (std::size_t t = 0; t < inst.arrays.size(); ++t) {
        if (t) os << "\n";
        const auto& a = inst.arrays[t];
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (j) os << ",";
                if (auto e = a.at(i, j)) os << bar_entry(*e);
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string to_latex(const MRSInstance& inst, bool compact) {
    const auto& f = inst.group.factors();
    if (compact && !inst.group.is_integer() && std::any_of(f.begin(), f.end(), [](auto d) { return d > 10; }))
        compact = false;
    std::ostringstream os;
    for (std::size_t t = 0; t < inst.arrays.size(); ++t) {
        const auto& a = inst.arrays[t];
        if (t) os << "\\quad\n";
        os << "\\begin{array}{|" ;
        for (std::size_t j = 0; j < a.cols(); ++j) os << "c|";
        os << "}\\hline\n";
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                if (j) os << " & ";
                if (auto e = a.at(i, j)) os << latex_entry(*e, compact);
            }
            os << " \\\\\\hline\n";
        }
        os << "\\end{array}\n";
    }
    return os.str();
}

std::string to_pretty(const MRSInstance& inst) {
    std::ostringstream os;
    os << "MRS over " << inst.group.to_string() << " params " << inst.params.to_string() << "\n";
    std::size_t width = 1;
    for (auto& a : inst.arrays)
        for (auto& e : a.entries()) width = std::max(width, e.to_string().size());
    for (std::size_t t = 0; t < inst.arrays.size(); ++t) {
        const auto& a = inst.arrays[t];
        os << "array " << t << "\n";
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) {
                auto e = a.at(i, j);
                std::string s = e ? e->to_string() : ".";
                os << (j ? " " : "  ") << std::string(width - s.size(), ' ') << s;
            }
            os << "\n";
        }
    }
    if (inst.omega) os << "omega " << inst.omega->to_string() << "\n";
    if (inst.delta) os << "delta " << inst.delta->to_string() << "\n";
    return os.str();
}

std::string export_instance(const MRSInstance& inst, Format fmt, bool compact) {
    switch (fmt) {
        case Format::Json: return instance_to_json(inst).dump() + "\n";
        case Format::Csv: return to_csv(inst);
        case Format::Latex: return to_latex(inst, compact);
        case Format::Pretty: return to_pretty(inst);
    }
    return {};
}

MRSInstance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    return instance_from_json(j);
}

}  // namespace magicrect
