#include "nsinf/serialize.hpp"

#include "nsinf/errors.hpp"

#include <cstdio>
#include <fstream>

namespace nsinf {

using nlohmann::json;

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const json& j) {
    if (j.is_string()) return std::stod(j.get<std::string>());
    return j.get<double>();
}

namespace {

json profile_to_json(const TimeProfile& p) {
    json out = json::array();
    for (const auto& t : p.terms())
        out.push_back({format_full(t.coeff), format_full(t.rate), t.power});
    return out;
}

TimeProfile profile_from_json(const json& j) {
    TimeProfile p;
    for (const auto& term : j)
        p += TimeProfile::single(parse_double(term.at(0)), parse_double(term.at(1)),
                                 term.at(2).get<int>());
    return p;
}

json vec3_to_json(const Vec3& v) {
    return json::array({format_full(v.x), format_full(v.y), format_full(v.z)});
}

Vec3 vec3_from_json(const json& j) {
    return {parse_double(j.at(0)), parse_double(j.at(1)), parse_double(j.at(2))};
}

json ivec3_to_json(const IVec3& k) { return json::array({k.x, k.y, k.z}); }

IVec3 ivec3_from_json(const json& j) {
    return {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>(),
            j.at(2).get<std::int64_t>()};
}

} // namespace

json to_json(const TrigField& f) {
    json modes = json::array();
    for (const auto& m : f.modes()) {
        modes.push_back({{"k", ivec3_to_json(m.k)},
                         {"phase", m.phase == Phase::cos ? "cos" : "sin"},
                         {"cx", profile_to_json(m.cx)},
                         {"cy", profile_to_json(m.cy)},
                         {"cz", profile_to_json(m.cz)}});
    }
    return {{"modes", modes}};
}

TrigField trig_field_from_json(const json& j) {
    TrigField f;
    for (const auto& jm : j.at("modes")) {
        TrigMode m;
        m.k = ivec3_from_json(jm.at("k"));
        const std::string ph = jm.at("phase").get<std::string>();
        if (ph != "cos" && ph != "sin") throw ConfigError("trig field: bad phase " + ph);
        m.phase = ph == "cos" ? Phase::cos : Phase::sin;
        m.cx = profile_from_json(jm.at("cx"));
        m.cy = profile_from_json(jm.at("cy"));
        m.cz = profile_from_json(jm.at("cz"));
        f.add_mode(std::move(m));
    }
    f.canonicalize();
    return f;
}

json to_json(const FrequencyFamily& fam) {
    json shells = json::array();
    for (const auto& s : fam.shells) {
        shells.push_back({{"k", ivec3_to_json(s.k)},
                          {"k_prime", ivec3_to_json(s.k_prime)},
                          {"v", vec3_to_json(s.v)},
                          {"v_prime", vec3_to_json(s.v_prime)}});
    }
    json ratios = json::array();
    for (double g : fam.growth_ratios) ratios.push_back(format_full(g));
    return {{"eta", ivec3_to_json(fam.eta)},
            {"K", fam.K},
            {"r", fam.r},
            {"preset", fam.preset == Preset::paper ? "paper" : "desk"},
            {"shells", shells},
            {"growth_ratios", ratios}};
}

FrequencyFamily family_from_json(const json& j) {
    FrequencyFamily fam;
    fam.eta = ivec3_from_json(j.at("eta"));
    fam.K = j.at("K").get<std::int64_t>();
    fam.r = j.at("r").get<int>();
    const std::string preset = j.at("preset").get<std::string>();
    if (preset != "paper" && preset != "desk")
        throw ConfigError("family: bad preset " + preset);
    fam.preset = preset == "paper" ? Preset::paper : Preset::desk;
    for (const auto& js : j.at("shells")) {
        Shell s;
        s.k = ivec3_from_json(js.at("k"));
        s.k_prime = ivec3_from_json(js.at("k_prime"));
        s.v = vec3_from_json(js.at("v"));
        s.v_prime = vec3_from_json(js.at("v_prime"));
        fam.shells.push_back(s);
    }
    for (const auto& g : j.at("growth_ratios")) fam.growth_ratios.push_back(parse_double(g));
    validate_family(fam);
    return fam;
}

json to_json(const InitialData& data) {
    return {{"family", to_json(data.family)},
            {"Q", format_full(data.Q)},
            {"field", to_json(data.field)}};
}

InitialData initial_data_from_json(const json& j) {
    InitialData d;
    d.family = family_from_json(j.at("family"));
    d.Q = parse_double(j.at("Q"));
    d.field = trig_field_from_json(j.at("field"));
    return d;
}

json to_json(const NormReport& rep) {
    const char* kind = rep.kind == NormKind::besov ? "besov"
                       : rep.kind == NormKind::xt  ? "xt"
                                                   : "bmo";
    return {{"value", format_full(rep.value)},
            {"kind", kind},
            {"t_star", format_full(rep.t_star)},
            {"x0_star", vec3_to_json(rep.x0_star)},
            {"R_star", format_full(rep.R_star)},
            {"sup_part", format_full(rep.sup_part)},
            {"carleson_part", format_full(rep.carleson_part)},
            {"grid",
             {{"nx", rep.grid.nx},
              {"ny", rep.grid.ny},
              {"nz", rep.grid.nz},
              {"t_samples", rep.grid.t_samples},
              {"r_samples", rep.grid.r_samples}}},
            {"tolerance_note", rep.tolerance_note}};
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace nsinf
