#include "gck/structfile.hpp"

#include <json.hpp>

namespace gck {

using json = nlohmann::ordered_json;

const Chart& StructureFile::chart(const std::string& name) const {
    if (name.empty()) return primary;
    for (const auto& [n, c] : extra_charts)
        if (n == name) return c;
    throw ResolutionError("unknown chart '" + name + "'");
}

const TensorEntry* StructureFile::find_tensor(const std::string& name) const {
    for (const auto& [n, t] : tensors)
        if (n == name) return &t;
    return nullptr;
}

const Bundle* StructureFile::find_bundle(const std::string& name) const {
    for (const auto& [n, b] : bundles)
        if (n == name) return &b;
    return nullptr;
}

void StructureFile::add_chart(const std::string& name, Chart c) {
    extra_charts.emplace_back(name, std::move(c));
}

void StructureFile::add_tensor(const std::string& name, TensorEntry t) {
    tensors.emplace_back(name, std::move(t));
}

void StructureFile::add_bundle(const std::string& name, Bundle b) {
    bundles.emplace_back(name, std::move(b));
}

// ----------------------------------------------------------------- parsing

static Chart parse_chart(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array())
        throw ParseError(where + ": chart needs a 'coords' array");
    VarList coords;
    for (const auto& c : j["coords"]) {
        if (!c.is_string()) throw ParseError(where + ": coordinate names must be strings");
        coords.push_back(c.get<std::string>());
    }
    if (coords.empty()) throw ParseError(where + ": chart needs at least one coordinate");
    try {
        return Chart(coords);
    } catch (const GckError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

static std::string key_for(const Chart& c, std::span<const size_t> idx) {
    std::string k;
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) k += "^";
        k += c.coords[idx[i]];
    }
    return k;
}

static std::vector<RatPoly> parse_keyed_components(const Chart& c, size_t degree, const json& j,
                                                   const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": 'components' must be an object");
    const size_t count = comb_count(c.dim(), degree);
    std::vector<RatPoly> comps(count, c.zero());
    std::map<std::string, size_t> key_to_rank;
    for (size_t r = 0; r < count; ++r) {
        auto idx = comb_unrank(r, c.dim(), degree);
        key_to_rank.emplace(key_for(c, idx), r);
    }
    for (const auto& [key, val] : j.items()) {
        auto it = key_to_rank.find(key);
        if (it == key_to_rank.end())
            throw ParseError(where + ": component key '" + key +
                             "' is not an increasing coordinate tuple of this chart");
        if (!val.is_string()) throw ParseError(where + ": component values must be strings");
        try {
            comps[it->second] = c.parse(val.get<std::string>());
        } catch (const GckError& e) {
            throw ParseError(where + "/" + key + ": " + e.what());
        }
    }
    return comps;
}

static std::vector<RatPoly> parse_array_components(const Chart& c, size_t expect, const json& j,
                                                   const std::string& where) {
    if (!j.is_array() || j.size() != expect)
        throw ParseError(where + ": 'components' must be an array of " + std::to_string(expect) +
                         " polynomial strings");
    std::vector<RatPoly> comps;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError(where + ": component values must be strings");
        try {
            comps.push_back(c.parse(v.get<std::string>()));
        } catch (const GckError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return comps;
}

StructureFile parse_structure_file(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("chart")) throw ParseError("missing top-level 'chart'");
    StructureFile f(parse_chart(j["chart"], "chart"));
    if (j.contains("charts")) {
        for (const auto& [name, cj] : j["charts"].items())
            f.add_chart(name, parse_chart(cj, "charts/" + name));
    }
    if (j.contains("tensors")) {
        if (!j["tensors"].is_object()) throw ParseError("'tensors' must be an object");
        for (const auto& [name, tj] : j["tensors"].items()) {
            const std::string where = "tensors/" + name;
            if (!tj.is_object() || !tj.contains("kind"))
                throw ParseError(where + ": needs a 'kind'");
            std::string kind = tj["kind"].get<std::string>();
            std::string chart_name = tj.value("chart", std::string());
            const Chart& c = [&]() -> const Chart& {
                try {
                    return f.chart(chart_name);
                } catch (const GckError& e) {
                    throw ParseError(where + ": " + e.what());
                }
            }();
            TensorEntry entry;
            entry.kind = kind;
            if (kind == "vector") {
                entry.value = VectorField(c, parse_array_components(c, c.dim(), tj["components"], where));
            } else if (kind == "1form") {
                entry.value = KForm(c, 1, parse_array_components(c, c.dim(), tj["components"], where));
            } else if (kind == "2form") {
                entry.value = KForm(c, 2, parse_keyed_components(c, 2, tj["components"], where));
            } else if (kind == "3form") {
                entry.value = KForm(c, 3, parse_keyed_components(c, 3, tj["components"], where));
            } else if (kind == "bivector") {
                entry.value = Bivector(c, parse_keyed_components(c, 2, tj["components"], where));
            } else if (kind == "endo") {
                if (!tj.contains("matrix") || !tj["matrix"].is_array() || tj["matrix"].size() != c.dim())
                    throw ParseError(where + ": endo needs an n x n 'matrix'");
                PolyMatrix m = PolyMatrix::zero(c.dim(), c.dim(), c.vars);
                for (size_t r = 0; r < c.dim(); ++r) {
                    const auto& row = tj["matrix"][r];
                    if (!row.is_array() || row.size() != c.dim())
                        throw ParseError(where + ": endo needs an n x n 'matrix'");
                    for (size_t col = 0; col < c.dim(); ++col) {
                        try {
                            m.at(r, col) = c.parse(row[col].get<std::string>());
                        } catch (const std::exception& e) {
                            throw ParseError(where + ": " + e.what());
                        }
                    }
                }
                entry.value = EndoField(c, std::move(m));
            } else if (kind == "map") {
                std::string target_name = tj.value("target", std::string());
                const Chart& dst = [&]() -> const Chart& {
                    try {
                        return f.chart(target_name);
                    } catch (const GckError& e) {
                        throw ParseError(where + ": " + e.what());
                    }
                }();
                entry.value =
                    PolyMap(c, dst, parse_array_components(c, dst.dim(), tj["components"], where));
            } else {
                throw ParseError(where + ": unknown kind '" + kind + "'");
            }
            f.add_tensor(name, std::move(entry));
        }
    }
    if (j.contains("structures")) {
        if (!j["structures"].is_object()) throw ParseError("'structures' must be an object");
        for (const auto& [name, bj] : j["structures"].items()) {
            if (!bj.is_object() || !bj.contains("kind"))
                throw ParseError("structures/" + name + ": needs a 'kind'");
            Bundle b;
            b.kind = bj["kind"].get<std::string>();
            for (const auto& [k, v] : bj.items()) {
                if (k == "kind") continue;
                if (!v.is_string())
                    throw ParseError("structures/" + name + ": reference '" + k +
                                     "' must be a string");
                b.refs[k] = v.get<std::string>();
            }
            f.add_bundle(name, std::move(b));
        }
    }
    return f;
}

// ---------------------------------------------------------------- printing

static json chart_json(const Chart& c) {
    json j;
    j["coords"] = c.coords;
    return j;
}

static json keyed_components_json(const Chart& c, size_t degree,
                                  const std::vector<RatPoly>& comps) {
    json j = json::object();
    for (size_t r = 0; r < comps.size(); ++r) {
        if (comps[r].is_zero()) continue;
        auto idx = comb_unrank(r, c.dim(), degree);
        j[key_for(c, idx)] = comps[r].to_string();
    }
    return j;
}

static json array_components_json(const std::vector<RatPoly>& comps) {
    json j = json::array();
    for (const auto& p : comps) j.push_back(p.to_string());
    return j;
}

std::string print_structure_file(const StructureFile& f) {
    json j;
    j["chart"] = chart_json(f.primary);
    if (!f.extra_charts.empty()) {
        json cj = json::object();
        for (const auto& [name, c] : f.extra_charts) cj[name] = chart_json(c);
        j["charts"] = cj;
    }
    json tj = json::object();
    for (const auto& [name, t] : f.tensors) {
        json e;
        e["kind"] = t.kind;
        auto chart_name_of = [&](const Chart& c) -> std::string {
            if (c == f.primary) return "";
            for (const auto& [n, ec] : f.extra_charts)
                if (ec == c) return n;
            throw GckError("print: tensor '" + name + "' lives on an undeclared chart");
        };
        if (t.kind == "vector") {
            const auto& v = std::get<VectorField>(t.value);
            std::string cn = chart_name_of(v.chart);
            if (!cn.empty()) e["chart"] = cn;
            e["components"] = array_components_json(v.comps);
        } else if (t.kind == "1form") {
            const auto& v = std::get<KForm>(t.value);
            std::string cn = chart_name_of(v.chart);
            if (!cn.empty()) e["chart"] = cn;
            e["components"] = array_components_json(v.comps);
        } else if (t.kind == "2form" || t.kind == "3form") {
            const auto& v = std::get<KForm>(t.value);
            std::string cn = chart_name_of(v.chart);
            if (!cn.empty()) e["chart"] = cn;
            e["components"] = keyed_components_json(v.chart, v.degree, v.comps);
        } else if (t.kind == "bivector") {
            const auto& v = std::get<Bivector>(t.value);
            std::string cn = chart_name_of(v.chart);
            if (!cn.empty()) e["chart"] = cn;
            e["components"] = keyed_components_json(v.chart, 2, v.comps);
        } else if (t.kind == "endo") {
            const auto& v = std::get<EndoField>(t.value);
            std::string cn = chart_name_of(v.chart);
            if (!cn.empty()) e["chart"] = cn;
            json rows = json::array();
            for (size_t r = 0; r < v.chart.dim(); ++r) {
                json row = json::array();
                for (size_t c = 0; c < v.chart.dim(); ++c) row.push_back(v.m.at(r, c).to_string());
                rows.push_back(row);
            }
            e["matrix"] = rows;
        } else if (t.kind == "map") {
            const auto& v = std::get<PolyMap>(t.value);
            std::string cn = chart_name_of(v.source);
            if (!cn.empty()) e["chart"] = cn;
            std::string tn = chart_name_of(v.target);
            if (!tn.empty()) e["target"] = tn;
            e["components"] = array_components_json(v.comps);
        }
        tj[name] = e;
    }
    if (!tj.empty()) j["tensors"] = tj;
    json bj = json::object();
    for (const auto& [name, b] : f.bundles) {
        json e;
        e["kind"] = b.kind;
        for (const auto& [k, v] : b.refs) e[k] = v;
        bj[name] = e;
    }
    if (!bj.empty()) j["structures"] = bj;
    return j.dump(2) + "\n";
}

// --------------------------------------------------------------- resolvers

static const Bundle& need_bundle(const StructureFile& f, const std::string& name,
                                 const std::string& kind) {
    const Bundle* b = f.find_bundle(name);
    if (!b) throw ResolutionError("no structure named '" + name + "'");
    if (b->kind != kind)
        throw ResolutionError("structure '" + name + "' has kind '" + b->kind + "', expected '" +
                              kind + "'");
    return *b;
}

static const TensorEntry& need_tensor(const StructureFile& f, const Bundle& b,
                                      const std::string& role, const std::string& kind) {
    auto it = b.refs.find(role);
    if (it == b.refs.end()) throw ResolutionError("bundle is missing reference '" + role + "'");
    const TensorEntry* t = f.find_tensor(it->second);
    if (!t) throw ResolutionError("no tensor named '" + it->second + "'");
    if (t->kind != kind)
        throw ResolutionError("tensor '" + it->second + "' has kind '" + t->kind + "', expected '" +
                              kind + "'");
    return *t;
}

GeneralizedStructure resolve_gcs(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "gcs");
    const auto& a = std::get<EndoField>(need_tensor(f, b, "a", "endo").value);
    const auto& pi = std::get<Bivector>(need_tensor(f, b, "pi", "bivector").value);
    const auto& sigma = std::get<KForm>(need_tensor(f, b, "sigma", "2form").value);
    try {
        return GeneralizedStructure(a, pi, sigma);
    } catch (const GckError& e) {
        throw ResolutionError(std::string("gcs bundle '") + bundle + "': " + e.what());
    }
}

HitchinPair resolve_hitchin(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "hitchin");
    const auto& omega = std::get<KForm>(need_tensor(f, b, "omega", "2form").value);
    const auto& a = std::get<EndoField>(need_tensor(f, b, "a", "endo").value);
    try {
        return HitchinPair(omega, a);
    } catch (const GckError& e) {
        throw ResolutionError(std::string("hitchin bundle '") + bundle + "': " + e.what());
    }
}

std::pair<Bivector, EndoField> resolve_dirac(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "dirac");
    return {std::get<Bivector>(need_tensor(f, b, "pi", "bivector").value),
            std::get<EndoField>(need_tensor(f, b, "a", "endo").value)};
}

std::pair<Bivector, PolyMatrix> resolve_im(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "im");
    return {std::get<Bivector>(need_tensor(f, b, "pi", "bivector").value),
            std::get<EndoField>(need_tensor(f, b, "u", "endo").value).m};
}

GHolMapCandidate resolve_morphism(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "morphism");
    const auto& map = std::get<PolyMap>(need_tensor(f, b, "map", "map").value);
    auto src_it = b.refs.find("source"), dst_it = b.refs.find("target");
    if (src_it == b.refs.end() || dst_it == b.refs.end())
        throw ResolutionError("morphism bundle needs 'source' and 'target' structure names");
    GeneralizedStructure src = resolve_gcs(f, src_it->second);
    GeneralizedStructure dst = resolve_gcs(f, dst_it->second);
    try {
        return GHolMapCandidate(map, std::move(src), std::move(dst));
    } catch (const GckError& e) {
        throw ResolutionError(std::string("morphism bundle '") + bundle + "': " + e.what());
    }
}

HitchinGroupoidCandidate resolve_groupoid(const StructureFile& f, const std::string& bundle) {
    const Bundle& b = need_bundle(f, bundle, "hitchin_groupoid");
    const auto& omega = std::get<KForm>(need_tensor(f, b, "omega", "2form").value);
    const auto& a = std::get<EndoField>(need_tensor(f, b, "a", "endo").value);
    const auto& omega_S = std::get<KForm>(need_tensor(f, b, "omega_S", "2form").value);
    const auto& J_S = std::get<EndoField>(need_tensor(f, b, "J_S", "endo").value);
    const auto& sigma = std::get<KForm>(need_tensor(f, b, "sigma", "2form").value);
    try {
        PairGroupoid g = build_pair_groupoid(omega.chart);
        if (!(omega_S.chart == g.total) || !(J_S.chart == g.total))
            throw ResolutionError(
                "hitchin_groupoid bundle: omega_S and J_S must live on the pair chart (base "
                "coordinates suffixed _1, _2)");
        return HitchinGroupoidCandidate{std::move(g), HitchinPair(omega, a), omega_S, J_S, sigma};
    } catch (const ResolutionError&) {
        throw;
    } catch (const GckError& e) {
        throw ResolutionError(std::string("hitchin_groupoid bundle '") + bundle + "': " + e.what());
    }
}

// ----------------------------------------------------------------- writers

static std::string ensure_chart_declared(StructureFile& f, const Chart& c,
                                         const std::string& suggested) {
    if (c == f.primary) return "";
    for (const auto& [n, ec] : f.extra_charts)
        if (ec == c) return n;
    f.add_chart(suggested, c);
    return suggested;
}

void put_gcs(StructureFile& f, const std::string& name, const GeneralizedStructure& s) {
    ensure_chart_declared(f, s.chart(), name + "_chart");
    f.add_tensor(name + ".a", TensorEntry{"endo", s.a});
    f.add_tensor(name + ".pi", TensorEntry{"bivector", s.pi});
    f.add_tensor(name + ".sigma", TensorEntry{"2form", s.sigma});
    Bundle b;
    b.kind = "gcs";
    b.refs = {{"a", name + ".a"}, {"pi", name + ".pi"}, {"sigma", name + ".sigma"}};
    f.add_bundle(name, std::move(b));
}

void put_hitchin(StructureFile& f, const std::string& name, const HitchinPair& p) {
    ensure_chart_declared(f, p.chart(), name + "_chart");
    f.add_tensor(name + ".omega", TensorEntry{"2form", p.omega});
    f.add_tensor(name + ".a", TensorEntry{"endo", p.a});
    Bundle b;
    b.kind = "hitchin";
    b.refs = {{"omega", name + ".omega"}, {"a", name + ".a"}};
    f.add_bundle(name, std::move(b));
}

void put_groupoid(StructureFile& f, const std::string& name, const HitchinGroupoidCandidate& c) {
    ensure_chart_declared(f, c.g.total, "pair");
    f.add_tensor(name + ".omega", TensorEntry{"2form", c.base_pair.omega});
    f.add_tensor(name + ".a", TensorEntry{"endo", c.base_pair.a});
    f.add_tensor(name + ".omega_S", TensorEntry{"2form", c.omega_S});
    f.add_tensor(name + ".J_S", TensorEntry{"endo", c.J_S});
    f.add_tensor(name + ".sigma", TensorEntry{"2form", c.sigma});
    Bundle b;
    b.kind = "hitchin_groupoid";
    b.refs = {{"omega", name + ".omega"},
              {"a", name + ".a"},
              {"omega_S", name + ".omega_S"},
              {"J_S", name + ".J_S"},
              {"sigma", name + ".sigma"}};
    f.add_bundle(name, std::move(b));
}

}  // namespace gck
