#include "bethe/io.hpp"

#include <fstream>
#include <iostream>

#include "bethe/errors.hpp"

namespace bethe {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

GaussianRational rat_value(const Json& v, const std::string& where) {
    if (!v.is_string())
        throw ParseError(where + ": exact values must be text rationals, got " + v.dump());
    try {
        return GaussianRational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

GaussianRational rat_field(const Json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field \"" + field + "\"");
    return rat_value(j.at(field), "field \"" + field + "\"");
}

std::vector<GaussianRational> rat_array(const Json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError("missing field \"" + field + "\"");
    const Json& arr = j.at(field);
    if (!arr.is_array()) throw ParseError("field \"" + field + "\" must be an array");
    std::vector<GaussianRational> out;
    out.reserve(arr.size());
    for (size_t k = 0; k < arr.size(); ++k)
        out.push_back(rat_value(arr[k], "field \"" + field + "\"[" + std::to_string(k) + "]"));
    return out;
}

namespace {

void load_table(const Json& j, const std::string& field, RTable<GaussianRational>& table) {
    if (!j.contains(field)) return;
    const Json& arr = j.at(field);
    if (!arr.is_array()) throw ParseError("field \"" + field + "\" must be an array of entries");
    for (size_t k = 0; k < arr.size(); ++k) {
        const Json& e = arr[k];
        const std::string where = "field \"" + field + "\"[" + std::to_string(k) + "]";
        if (!e.is_object() || !e.contains("point") || !e.contains("value"))
            throw ParseError(where + ": entries need \"point\" and \"value\"");
        std::optional<GaussianRational> deriv;
        if (e.contains("deriv")) deriv = rat_value(e.at("deriv"), where + ".deriv");
        table.set(rat_value(e.at("point"), where + ".point"),
                  rat_value(e.at("value"), where + ".value"), deriv);
    }
}

Json table_to_json(const RTable<GaussianRational>& table) {
    Json arr = Json::array();
    for (const auto& e : table.entries) {
        Json o{{"point", e.point.str()}, {"value", e.value.str()}};
        if (e.deriv) o["deriv"] = e.deriv->str();
        arr.push_back(std::move(o));
    }
    return arr;
}

Json set_to_json(const ParamSet<GaussianRational>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs.v) arr.push_back(x.str());
    return arr;
}

} // namespace

BetheConfig<GaussianRational> config_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("configuration must be a JSON object");
    BetheConfig<GaussianRational> cfg;
    cfg.c = rat_field(j, "c");
    for (auto* p : {&cfg.uC, &cfg.uB, &cfg.vC, &cfg.vB}) p->v = rat_array(j, p->label);
    if (j.contains("varkappa")) cfg.varkappa = rat_field(j, "varkappa");
    if (j.contains("kappa")) {
        auto ks = rat_array(j, "kappa");
        if (ks.size() != 3) throw ParseError("field \"kappa\" must hold exactly 3 values");
        for (int i = 0; i < 3; ++i) cfg.kappa[i] = ks[i];
    }
    load_table(j, "r1_free", cfg.r1_free);
    load_table(j, "r3_free", cfg.r3_free);
    return cfg;
}

Json config_to_json(const BetheConfig<GaussianRational>& cfg) {
    Json j{{"c", cfg.c.str()},
           {"uC", set_to_json(cfg.uC)},
           {"uB", set_to_json(cfg.uB)},
           {"vC", set_to_json(cfg.vC)},
           {"vB", set_to_json(cfg.vB)},
           {"varkappa", cfg.varkappa.str()},
           {"kappa", Json::array({cfg.kappa[0].str(), cfg.kappa[1].str(), cfg.kappa[2].str()})}};
    if (!cfg.r1_free.entries.empty()) j["r1_free"] = table_to_json(cfg.r1_free);
    if (!cfg.r3_free.entries.empty()) j["r3_free"] = table_to_json(cfg.r3_free);
    return j;
}

bool Report::pass() const {
    for (const auto& c : checks)
        if (!c.ok()) return false;
    return true;
}

Json Report::to_json() const {
    Json arr = Json::array();
    std::uint64_t total = 0;
    for (const auto& c : checks) {
        Json o{{"name", c.name}, {"status", c.status}, {"micros", c.micros}};
        if (!c.values.empty()) o["values"] = c.values;
        if (!c.witness.is_null()) o["witness"] = c.witness;
        arr.push_back(std::move(o));
        total += c.micros;
    }
    return Json{{"version", 1},        {"command", command}, {"seed", seed},
                {"trials", trials},    {"pass", pass()},     {"checks", arr},
                {"total_micros", total}};
}

void emit_report(const Report& rep, const std::string& path) {
    const std::string text = rep.to_json().dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open output file: " + path);
    out << text;
}

} // namespace bethe
