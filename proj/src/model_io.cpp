#include "detzeta/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace detzeta {

namespace {

using nlohmann::json;

json series_to_json(const BivariateSeries& s) {
    return json{{"coeffs", s.table()},
                {"center", {s.center1(), s.center2()}},
                {"validity", {s.radius1(), s.radius2()}}};
}

BivariateSeries series_from_json(const json& j) {
    auto coeffs = j.at("coeffs").get<std::vector<std::vector<double>>>();
    const auto center = j.at("center").get<std::vector<double>>();
    const auto validity = j.at("validity").get<std::vector<double>>();
    if (center.size() != 2 || validity.size() != 2)
        throw ParseError("series center/validity must have two entries");
    return BivariateSeries(std::move(coeffs), center[0], center[1], validity[0],
                           validity[1]);
}

json domain_to_json(const Domain& d) {
    if (std::holds_alternative<Disc>(d)) {
        const auto& disc = std::get<Disc>(d);
        return json{{"disc",
                     {{"center", {disc.center.real(), disc.center.imag()}},
                      {"radius", disc.radius}}}};
    }
    const auto& p = std::get<Petal>(d);
    return json{{"petal",
                 {{"nu", p.nu},
                  {"theta", p.theta},
                  {"r", p.r},
                  {"theta_tilde", p.theta_tilde},
                  {"r_tilde", p.r_tilde},
                  {"orientation", p.orientation == 1 ? "first" : "second"}}}};
}

Domain domain_from_json(const json& j) {
    if (j.contains("disc")) {
        const auto& d = j.at("disc");
        const auto c = d.at("center").get<std::vector<double>>();
        if (c.size() != 2) throw ParseError("disc center must be [re, im]");
        return Disc{Complex(c[0], c[1]), d.at("radius").get<double>()};
    }
    if (j.contains("petal")) {
        const auto& p = j.at("petal");
        Petal petal;
        petal.nu = p.at("nu").get<int>();
        petal.theta = p.at("theta").get<double>();
        petal.r = p.at("r").get<double>();
        petal.theta_tilde = p.at("theta_tilde").get<double>();
        petal.r_tilde = p.at("r_tilde").get<double>();
        const std::string o = p.at("orientation").get<std::string>();
        if (o == "first")
            petal.orientation = 1;
        else if (o == "second")
            petal.orientation = 2;
        else
            throw ParseError("petal orientation must be 'first' or 'second'");
        return petal;
    }
    throw ParseError("domain must be a disc or a petal");
}

json block_to_json(const BlockMap& b) {
    json out{{"kind", to_string(b.kind())}, {"extension_margin", b.extension_margin()}};
    if (b.kind() == BlockKind::Hyperbolic) {
        out["f1"] = series_to_json(*b.f1_series());
        out["f2"] = series_to_json(*b.f2_series());
        return out;
    }
    out["nu"] = b.nu();
    out["phi_tilde"] = series_to_json(b.phi_tilde());
    if (b.kind() == BlockKind::ParabolicPa)
        out["f1"] = series_to_json(*b.f1_series());
    else
        out["f2"] = series_to_json(*b.f2_series());
    return out;
}

BlockMap block_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const double margin = j.at("extension_margin").get<double>();
    if (kind == "H")
        return BlockMap::hyperbolic(series_from_json(j.at("f1")),
                                    series_from_json(j.at("f2")), margin);
    if (kind == "P.a")
        return BlockMap::parabolic_pa(series_from_json(j.at("f1")), j.at("nu").get<int>(),
                                      series_from_json(j.at("phi_tilde")), margin);
    if (kind == "P.b")
        return BlockMap::parabolic_pb(series_from_json(j.at("f2")), j.at("nu").get<int>(),
                                      series_from_json(j.at("phi_tilde")), margin);
    throw ParseError("unknown block kind '" + kind + "'");
}

json circle_to_json(const Circle& c) {
    return json{{"center", {c.center.real(), c.center.imag()}}, {"radius", c.radius}};
}

Circle circle_from_json(const json& j) {
    const auto c = j.at("center").get<std::vector<double>>();
    if (c.size() != 2) throw ParseError("circle center must be [re, im]");
    return Circle{Complex(c[0], c[1]), j.at("radius").get<double>()};
}

}  // namespace

std::string model_to_json_text(const SymbolicModel& model) {
    json j;
    j["name"] = model.name();
    j["symbols"] = {{"s0", model.symbols().s0}, {"s1", model.symbols().s1}};
    j["transitions"] = model.transitions().raw();
    json domains = json::array();
    json contours = json::array();
    for (int k = 0; k < model.num_symbols(); ++k) {
        domains.push_back(json{{"d1", domain_to_json(model.domains(k).d1)},
                               {"d2", domain_to_json(model.domains(k).d2)}});
        const auto& spec = model.contour(k);
        contours.push_back(json{{"contour1", circle_to_json(spec.contour1)},
                                {"contour2", circle_to_json(spec.contour2)},
                                {"nodes", spec.nodes}});
    }
    j["domains"] = domains;
    j["contours"] = contours;
    json blocks = json::object();
    for (const auto& [i, jdx] : model.edges())
        blocks[std::to_string(i) + "," + std::to_string(jdx)] =
            block_to_json(model.block(i, jdx));
    j["blocks"] = blocks;
    return j.dump(2);
}

SymbolicModel model_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        SymbolSet symbols;
        symbols.s0 = j.at("symbols").at("s0").get<std::vector<int>>();
        symbols.s1 = j.at("symbols").at("s1").get<std::vector<int>>();
        TransitionMatrix transitions(
            j.at("transitions").get<std::vector<std::vector<int>>>());
        std::vector<DomainPair> domains;
        for (const auto& d : j.at("domains"))
            domains.push_back({domain_from_json(d.at("d1")), domain_from_json(d.at("d2"))});
        std::vector<ContourSpec> contours;
        for (const auto& c : j.at("contours"))
            contours.push_back(ContourSpec{circle_from_json(c.at("contour1")),
                                           circle_from_json(c.at("contour2")),
                                           c.at("nodes").get<int>()});
        std::map<std::pair<int, int>, BlockMap> blocks;
        for (const auto& [key, value] : j.at("blocks").items()) {
            const auto comma = key.find(',');
            if (comma == std::string::npos)
                throw ParseError("block key must be 'i,j', got '" + key + "'");
            const int i = std::stoi(key.substr(0, comma));
            const int jdx = std::stoi(key.substr(comma + 1));
            blocks.emplace(std::make_pair(i, jdx), block_from_json(value));
        }
        std::string name = j.value("name", "");
        return SymbolicModel(std::move(symbols), std::move(transitions),
                             std::move(domains), std::move(blocks), std::move(contours),
                             std::move(name));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("malformed model document: ") + e.what());
    }
}

SymbolicModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

void save_model(const SymbolicModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write model file '" + path + "'");
    out << model_to_json_text(model) << "\n";
}

}  // namespace detzeta
