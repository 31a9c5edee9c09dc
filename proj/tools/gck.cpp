// gck: exact checks and conversions for generalized complex structure data.
//
//   gck check <file> --target <name> --suite <suite> [--json out.json]
//   gck convert <file> --target <name> --op <direction> [--B <name>] [--force]
//   gck fuzz --seed S --dim N --degree D --count K [--json out.json]
//
// Exit codes: 0 certified, 1 refuted (or a refused conversion), 2 usage,
// parse or resolution errors.
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gck/algebroid.hpp"
#include "gck/fuzz.hpp"
#include "gck/structfile.hpp"

using namespace gck;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json witness_json(const Witness& w) {
    json point = json::object();
    for (size_t i = 0; i < w.vars.size(); ++i) point[w.vars[i]] = w.point[i].to_string();
    return json{{"point", point}, {"value", w.value.to_string()}};
}

json report_json(const CheckReport& rep) {
    json checks = json::array();
    for (const auto& d : rep.defects()) {
        json e;
        e["name"] = d.name;
        e["zero"] = d.zero;
        if (!d.zero) {
            e["defect"] = d.poly.to_string();
            if (d.witness) e["witness"] = witness_json(*d.witness);
        }
        checks.push_back(e);
    }
    return json{{"verdict", rep.certified() ? "Certified" : "Refuted"}, {"checks", checks}};
}

void print_report(const CheckReport& rep) {
    std::cout << rep.summary() << "\n";
    for (const auto& d : rep.defects()) {
        if (d.zero) continue;
        std::cout << "  defect " << d.name << " = " << d.poly.to_string() << "\n";
        if (d.witness) {
            std::cout << "    witness:";
            for (size_t i = 0; i < d.witness->vars.size(); ++i)
                std::cout << " " << d.witness->vars[i] << "=" << d.witness->point[i].to_string();
            std::cout << " -> " << d.witness->value.to_string() << "\n";
        }
    }
}

CheckReport run_suite(const StructureFile& f, const std::string& target,
                      const std::string& suite) {
    if (suite == "gcs") return check_gcs(resolve_gcs(f, target));
    if (suite == "hitchin") return check_hitchin_pair(resolve_hitchin(f, target));
    if (suite == "sc") {
        HitchinPair p = resolve_hitchin(f, target);
        return sc_structure_check(p.omega, p.a);
    }
    if (suite == "dirac") {
        if (const Bundle* b = f.find_bundle(target); b && b->kind == "gcs") {
            GeneralizedStructure s = resolve_gcs(f, target);
            return dirac_check(s.pi, s.a);
        }
        auto [pi, a] = resolve_dirac(f, target);
        return dirac_check(pi, a);
    }
    if (suite == "im") {
        auto [pi, u] = resolve_im(f, target);
        CheckReport c1 = check_C1(pi);
        if (!c1.certified()) return c1;
        return check_im_form(PoissonAlgebroid(pi), u);
    }
    if (suite == "morphism") return check_gholomorphic(resolve_morphism(f, target));
    if (suite == "groupoid") {
        HitchinGroupoidCandidate cand = [&] {
            if (const Bundle* b = f.find_bundle(target); b && b->kind == "hitchin")
                return build_pair_hitchin_groupoid(resolve_hitchin(f, target));
            return resolve_groupoid(f, target);
        }();
        CheckReport rep("groupoid suite");
        rep.merge(groupoid_axioms(cand.g));
        rep.merge(check_hitchin_groupoid(cand));
        rep.merge(check_ts_gholomorphic(cand));
        return rep;
    }
    throw ParseError("unknown suite '" + suite + "'");
}

int cmd_check(const std::string& path, const std::string& target, const std::string& suite,
              const std::string& json_out) {
    auto t0 = std::chrono::steady_clock::now();
    StructureFile f = parse_structure_file(read_file(path));
    CheckReport rep = run_suite(f, target, suite);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    print_report(rep);
    int code = rep.certified() ? 0 : 1;
    if (!json_out.empty()) {
        json doc;
        doc["command"] = "check";
        doc["file"] = path;
        doc["target"] = target;
        doc["suite"] = suite;
        doc["report"] = report_json(rep);
        doc["exit_code"] = code;
        doc["timing_ms"] = ms;
        std::ofstream out(json_out);
        out << doc.dump(2) << "\n";
    }
    return code;
}

int cmd_convert(const std::string& path, const std::string& target, const std::string& op,
                const std::string& b_name, bool force) {
    StructureFile f = parse_structure_file(read_file(path));
    auto refuse = [&](const CheckReport& rep) {
        std::cerr << "refusing to convert a refuted input (" << rep.summary()
                  << "); pass --force to override\n";
        return 1;
    };
    if (op == "hitchin-to-gcs") {
        HitchinPair p = resolve_hitchin(f, target);
        if (!force) {
            CheckReport rep = check_hitchin_pair(p);
            if (!rep.certified()) return refuse(rep);
        }
        StructureFile out(p.chart());
        put_gcs(out, target, hitchin_to_gcs(p));
        std::cout << print_structure_file(out);
        return 0;
    }
    if (op == "gcs-to-hitchin") {
        GeneralizedStructure s = resolve_gcs(f, target);
        if (!force) {
            CheckReport rep = check_gcs(s);
            if (!rep.certified()) return refuse(rep);
        }
        StructureFile out(s.chart());
        put_hitchin(out, target, gcs_to_hitchin(s));
        std::cout << print_structure_file(out);
        return 0;
    }
    if (op == "opposite") {
        GeneralizedStructure s = resolve_gcs(f, target);
        StructureFile out(s.chart());
        put_gcs(out, target, opposite(s));
        std::cout << print_structure_file(out);
        return 0;
    }
    if (op == "gauge") {
        GeneralizedStructure s = resolve_gcs(f, target);
        if (b_name.empty()) throw ParseError("gauge needs --B <2form name>");
        const TensorEntry* bt = f.find_tensor(b_name);
        if (!bt || bt->kind != "2form")
            throw ResolutionError("--B must name a 2form tensor in the file");
        const KForm& b = std::get<KForm>(bt->value);
        if (!exterior_d(b).is_zero()) {
            std::cerr << "NonClosedB: dB != 0, gauging requires a closed 2-form\n";
            if (!force) return 1;
        }
        if (!force) {
            CheckReport rep = check_gcs(s);
            if (!rep.certified()) return refuse(rep);
        }
        StructureFile out(s.chart());
        put_gcs(out, target, gauge(s, b));
        std::cout << print_structure_file(out);
        return 0;
    }
    if (op == "build-groupoid") {
        HitchinPair p = resolve_hitchin(f, target);
        if (!force) {
            CheckReport rep = check_hitchin_pair(p);
            if (!rep.certified()) return refuse(rep);
        }
        HitchinGroupoidCandidate cand = build_pair_hitchin_groupoid(p);
        StructureFile out(p.chart());
        put_groupoid(out, target, cand);
        std::cout << print_structure_file(out);
        return 0;
    }
    throw ParseError("unknown conversion '" + op + "'");
}

int cmd_fuzz(uint64_t seed, size_t dim, uint32_t degree, size_t count,
             const std::string& json_out) {
    FuzzSummary s = run_fuzz_suite(seed, dim, degree, count);
    std::cout << fuzz_summary_text(s);
    if (!json_out.empty()) {
        json doc;
        doc["command"] = "fuzz";
        doc["seed"] = s.seed;
        doc["dim"] = s.dim;
        doc["degree"] = s.degree;
        doc["count"] = s.count;
        doc["passes"] = s.passes;
        doc["checks"] = s.checks;
        json props = json::array();
        for (const auto& [name, cell] : s.per_property)
            props.push_back({{"property", name}, {"passes", cell.first}, {"total", cell.second}});
        doc["properties"] = props;
        doc["failures"] = s.failures;
        std::ofstream out(json_out);
        out << doc.dump(2) << "\n";
    }
    return s.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certification of generalized complex structure data"};
    app.require_subcommand(1);

    std::string file, target, suite, json_out;
    auto* check = app.add_subcommand("check", "run a check suite against a named structure");
    check->add_option("file", file)->required();
    check->add_option("--target", target)->required();
    check->add_option("--suite", suite)
        ->required()
        ->check(CLI::IsMember({"gcs", "hitchin", "sc", "dirac", "im", "morphism", "groupoid"}));
    check->add_option("--json", json_out);

    std::string cfile, ctarget, cop, b_name;
    bool force = false;
    auto* convert = app.add_subcommand("convert", "convert between presentations");
    convert->add_option("file", cfile)->required();
    convert->add_option("--target", ctarget)->required();
    convert->add_option("--op", cop)
        ->required()
        ->check(CLI::IsMember(
            {"hitchin-to-gcs", "gcs-to-hitchin", "opposite", "gauge", "build-groupoid"}));
    convert->add_option("--B", b_name);
    convert->add_flag("--force", force);

    uint64_t seed = 1;
    size_t dim = 2, count = 20;
    uint32_t degree = 1;
    std::string fuzz_json;
    auto* fuzz = app.add_subcommand("fuzz", "run the cross-checker property suite");
    fuzz->add_option("--seed", seed);
    fuzz->add_option("--dim", dim)->check(CLI::IsMember({2, 3, 4}));
    fuzz->add_option("--degree", degree)->check(CLI::Range(0u, 2u));
    fuzz->add_option("--count", count);
    fuzz->add_option("--json", fuzz_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(file, target, suite, json_out);
        if (app.got_subcommand(convert)) return cmd_convert(cfile, ctarget, cop, b_name, force);
        if (app.got_subcommand(fuzz)) return cmd_fuzz(seed, dim, degree, count, fuzz_json);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneratePi& e) {
        std::cerr << "DegeneratePi: " << e.what() << "\n";
        return 1;
    } catch (const NonClosedB& e) {
        std::cerr << "NonClosedB: " << e.what() << "\n";
        return 1;
    } catch (const GckError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
