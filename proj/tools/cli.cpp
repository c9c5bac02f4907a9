#include "cli.hpp"

#include "fixtures.hpp"

#include "shiftsym/generators.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace shiftsym::cli {

namespace {

struct Outcome {
    Json report;
    bool pass = true;
};

struct Params {
    int n = -1, m = -1, k = 2, weight = 2, degrees = 3, transfer_weight = -1;
    std::string format, output, out_dir = ".";
    bool tower = false, corrupt = false, representatives = false;
    std::vector<std::string> inputs;
};

std::string restriction_witness(const RelativeRestriction& r) {
    return "rank " + std::to_string(r.rank) + ", fiber dim " + std::to_string(r.fiber_dim) + ", source dim " +
           std::to_string(r.source_dim);
}

std::string input(const Params& p, std::size_t i) { return p.inputs.at(i); }

LinSimpSpace load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

SimpLinMap load_map(const std::string& path) {
    return map_from_json(read_json_file(path), std::filesystem::path(path).parent_path());
}

ShiftedForm load_form(const std::string& path, const LinSimpSpace& model) {
    return shifted_form_from_json(read_json_file(path), model);
}

int require(int v, const char* flag) {
    if (v < 0) throw InvalidInput(std::string("missing or negative ") + flag);
    return v;
}

Outcome lie_outcome(const LinSimpSpace& x, int n) {
    auto r = check_lie_n_groupoid(x, n);
    Outcome o{lie_report_to_json(r), r.pass()};
    if (auto h = r.first_failure())
        o.report["message"] = "horn (" + std::to_string(h->m) + "," + std::to_string(h->j) + ") fails: " +
                              restriction_witness(h->restriction);
    return o;
}

Outcome hypercover_outcome(const SimpLinMap& f, int n) {
    auto r = check_hypercover(f, n);
    Outcome o{hypercover_report_to_json(r), r.pass()};
    if (auto l = r.first_failure())
        o.report["message"] = "matching map at level " + std::to_string(l->m) + " is not " +
                              (l->restriction.surjective() ? "injective" : "surjective") + ": " +
                              restriction_witness(l->restriction);
    return o;
}

Outcome validate_json(const Json& j, const std::filesystem::path& base) {
    ValidationReport r;
    std::string kind;
    if (j.is_object() && j.contains("level_mats")) {
        kind = "map";
        auto f = map_from_json(j, base);
        for (auto* part : {&f.source(), &f.target()}) {
            auto v = part->validate();
            for (auto& s : v.violations) r.fail(s);
        }
        for (auto& s : f.validate().violations) r.fail(s);
    } else if (j.is_object() && j.contains("levels") && j["levels"].is_array() && !j["levels"].empty() &&
               j["levels"][0].is_array()) {
        kind = "shape";
        r = shape_from_json(j).validate();
    } else {
        kind = "model";
        r = model_from_json(j).validate();
    }
    Outcome o{validation_to_json(r), r.ok};
    o.report["kind"] = kind;
    if (!r.ok) o.report["message"] = r.violations.front();
    return o;
}

Outcome cmd_validate(const Params& p) {
    auto path = input(p, 0);
    return validate_json(read_json_file(path), std::filesystem::path(path).parent_path());
}

Outcome cmd_check_ngpd(const Params& p) { return lie_outcome(load_model(input(p, 0)), require(p.n, "--n")); }

Outcome cmd_check_hypercover(const Params& p) { return hypercover_outcome(load_map(input(p, 0)), require(p.n, "--n")); }

Outcome cmd_tangent(const Params& p) { return {tangent_to_json(tangent_complex(load_model(input(p, 0)), require(p.n, "--n"))), true}; }

Outcome cmd_cohomology(const Params& p) {
    auto x = load_model(input(p, 0));
    int top = require(p.degrees, "--degrees") + 1;
    int levels = std::max(top - p.k, 0);
    if (x.max_level() < levels)
        throw InvalidInput("model has levels 0.." + std::to_string(x.max_level()) + ", need " + std::to_string(levels));
    FormBicomplex b(x.truncated(levels), require(p.k, "--k"), require(p.weight, "--weight"), top);
    Json j{{"k", p.k}, {"weight", p.weight}, {"degrees", p.degrees},
           {"cohomology", cohomology_to_json(total_cohomology(b, 0, p.degrees), p.representatives)}};
    return {j, true};
}

Outcome symplectic_outcome(const ShiftedForm& a, int n) {
    auto r = check_shifted_symplectic(a, n);
    return {symplectic_report_to_json(r), r.pass()};
}

Outcome cmd_check_symplectic(const Params& p) {
    auto x = load_model(input(p, 0));
    auto a = load_form(input(p, 1), x);
    return symplectic_outcome(a, p.n < 0 ? a.shift() : p.n);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << text;
}

Outcome cmd_transfer(const Params& p) {
    auto g = load_map(input(p, 0));
    auto h = load_map(input(p, 1));
    auto alpha = load_form(input(p, 2), g.target());
    if (p.m >= 0 && p.m != alpha.shift())
        throw InvalidInput("--m " + std::to_string(p.m) + " but the form is " + std::to_string(alpha.shift()) + "-shifted");
    std::optional<int> bound;
    if (p.transfer_weight >= 0) bound = p.transfer_weight;
    auto r = transfer_symplectic(g, h, alpha, require(p.n, "--n"), bound);
    Outcome o{transfer_to_json(r), r.feasible && r.verification.pass()};
    if (!o.pass) o.report["message"] = r.feasible ? r.verification.message() : r.message;
    if (r.feasible) {
        std::filesystem::path dir = p.out_dir;
        std::filesystem::create_directories(dir);
        write_file(dir / "beta.json", dump_json(shifted_form_to_json(r.beta)));
        write_file(dir / "phi.json", dump_json(shifted_form_to_json(-r.phi)));
    }
    return o;
}

Outcome cmd_verify_sme(const Params& p) {
    auto f = load_map(input(p, 0));
    auto g = load_map(input(p, 1));
    if (!(f.source().dims() == g.source().dims()))
        throw InvalidInput("the two hypercovers have different sources");
    SymplecticMorita e{load_form(input(p, 2), f.target()), load_form(input(p, 3), g.target()),
                       load_form(input(p, 4), f.source()), f, g};
    auto r = check_symplectic_morita(e, require(p.n, "--n"));
    Outcome o{morita_report_to_json(r), r.pass()};
    return o;
}

Outcome cmd_descent(const Params& p) {
    auto f = load_map(input(p, 0));
    HypercoverDescentOptions opt;
    opt.tower_route = p.tower;
    auto r = verify_hypercover_descent(f, require(p.n, "--n"), require(p.k, "--k"), require(p.weight, "--weight"),
                                       require(p.degrees, "--degrees"), opt);
    Outcome o{hypercover_descent_to_json(r), r.pass()};
    for (auto& d : r.direct)
        if (!d.iso()) {
            o.report["message"] = "pullback is not an isomorphism in degree " + std::to_string(d.degree) + ": dims " +
                                  std::to_string(d.dim_source) + " -> " + std::to_string(d.dim_target) + ", rank " +
                                  std::to_string(d.induced_rank);
            break;
        }
    return o;
}

// Selftest: each case runs on the compiled-in fixtures after a text round trip.
struct Case {
    std::string name;
    std::function<bool(std::string&)> run;
};

Outcome cmd_selftest(const Params& p) {
    std::map<std::string, Json> files;
    for (auto& f : fixtures::example_files()) files[f.name] = f.content;
    if (p.corrupt) files["pair_groupoid.json"]["face"]["1,0"][0][0] = "7";

    auto model = [&](const std::string& name) { return model_from_json(files.at(name)); };
    auto map = [&](const std::string& name) {
        Json j = files.at(name);
        for (auto side : {"source", "target"}) j[side] = files.at(j[side].get<std::string>());
        return map_from_json(j);
    };

    std::vector<Case> cases;
    cases.push_back({"fixture round trip", [&](std::string& why) {
                         for (auto& [name, j] : files) {
                             auto text = dump_json(j);
                             if (dump_json(parse_json(text)) != text) return why = name + " is not canonical", false;
                         }
                         return true;
                     }});
    cases.push_back({"pair groupoid", [&](std::string& why) {
                         auto x = model("pair_groupoid.json");
                         auto v = x.validate();
                         if (!v.ok) return why = v.violations.front(), false;
                         auto o = lie_outcome(x, 1);
                         if (!o.pass) why = o.report.value("message", "");
                         return o.pass;
                     }});
    cases.push_back({"symplectic vector space", [&](std::string& why) {
                         auto q2 = model("q2.json");
                         auto std_form = shifted_form_from_json(files.at("q2_omega_standard.json"), q2);
                         if (!check_shifted_symplectic(std_form, 0).pass()) return why = "standard form fails", false;
                         for (int d = 1; d <= 3; ++d)
                             if (!check_shifted_symplectic(standard_symplectic(d, 2), 0).pass())
                                 return why = "standard form fails for d = " + std::to_string(d), false;
                         auto zero = shifted_form_from_json(files.at("q2_omega_zero.json"), q2);
                         auto msg = check_shifted_symplectic(zero, 0).message();
                         if (msg != "degenerate pairing at l = 0, rank 0 of 2") return why = "zero form: " + msg, false;
                         return true;
                     }});
    cases.push_back({"1-shifted linear model", [&](std::string& why) {
                         auto alpha = shifted_form_from_json(files.at("strict_alpha.json"), model("strict_x.json"));
                         auto r = check_shifted_symplectic(alpha, 1);
                         why = r.message();
                         return r.pass();
                     }});
    cases.push_back({"acyclic-factor hypercover", [&](std::string& why) {
                         auto g = map("strict_g.json");
                         auto o = hypercover_outcome(g, 1);
                         if (!o.pass) return why = o.report.value("message", ""), false;
                         if (!check_quasi_iso(g, 1).pass()) return why = "tangent map is not a quasi-isomorphism", false;
                         return true;
                     }});
    cases.push_back({"strict morphism transfer", [&](std::string& why) {
                         auto g = map("strict_g.json"), h = map("strict_h.json");
                         auto alpha = shifted_form_from_json(files.at("strict_alpha.json"), g.target());
                         auto r = transfer_symplectic(g, h, alpha, 1);
                         if (!r.feasible) return why = r.message, false;
                         why = r.verification.message();
                         return r.verification.pass();
                     }});
    cases.push_back({"descent suite", [&](std::string& why) {
                         RatMatrix f(1, 2);
                         f << Rational(1), Rational(0);
                         if (!verify_nerve_descent(f, std::nullopt, 0, 2, 3).pass()) return why = "nerve descent", false;
                         auto g = map("strict_g.json");
                         if (!verify_triple_lemma(g, 2, 2, 2).pass()) return why = "triple lemma", false;
                         auto c = coskeleton_retract(g, 0);
                         if (!verify_retract_lemma(c.phi, c.tower_map, c.g, c.s, 2, 2, 2).pass())
                             return why = "retract lemma", false;
                         if (!verify_hypercover_descent(g, 1, 2, 2, 3).pass()) return why = "hypercover descent", false;
                         return true;
                     }});

    Json results = Json::array();
    int passed = 0;
    for (auto& c : cases) {
        std::string why;
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = e.what();
        }
        passed += ok;
        Json r{{"name", c.name}, {"pass", ok}};
        if (!ok) r["detail"] = why;
        results.push_back(std::move(r));
    }
    int total = static_cast<int>(cases.size());
    return {{{"cases", std::move(results)}, {"passed", passed}, {"total", total}}, passed == total};
}

void flatten(const Json& j, const std::string& path, std::ostream& out) {
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (j.is_object()) {
        for (auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
    } else if (j.is_array()) {
        bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
        if (flat) {
            out << path << " = [";
            for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar(j[i]);
            out << "]\n";
        } else {
            for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out << path << " = " << scalar(j) << "\n";
    }
}

std::string render(const std::string& command, const Outcome& o, const std::string& format) {
    if (format == "json") return dump_json(o.report);
    std::ostringstream s;
    if (command == "selftest") {
        for (auto& c : o.report["cases"]) {
            s << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>();
            if (c.contains("detail")) s << ": " << c["detail"].get<std::string>();
            s << "\n";
        }
        s << o.report["passed"] << "/" << o.report["total"] << " passed\n";
        return s.str();
    }
    s << command << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
    if (o.report.contains("message") && !o.report["message"].get<std::string>().empty())
        s << o.report["message"].get<std::string>() << "\n";
    flatten(o.report, "", s);
    return s.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact checks for shifted symplectic structures on linear simplicial models"};
    app.require_subcommand(1);
    Params p;

    using Handler = Outcome (*)(const Params&);
    struct Command {
        const char* name;
        const char* help;
        Handler handler;
        std::vector<std::string> inputs;
    };
    const std::vector<Command> commands = {
        {"validate", "check the simplicial identities of a model, shape or map file", cmd_validate, {"FILE"}},
        {"check-ngpd", "Lie n-groupoid horn conditions", cmd_check_ngpd, {"MODEL"}},
        {"check-hypercover", "matching-map conditions of a map", cmd_check_hypercover, {"MAP"}},
        {"tangent", "tangent complex and its homology", cmd_tangent, {"MODEL"}},
        {"cohomology", "k-truncated total cohomology in degrees 0..N", cmd_cohomology, {"MODEL"}},
        {"check-symplectic", "shifted symplectic check of a form on a model", cmd_check_symplectic, {"MODEL", "FORM"}},
        {"transfer", "transfer a symplectic form along X <-g- Z -h-> Y", cmd_transfer, {"G", "H", "ALPHA"}},
        {"verify-sme", "symplectic Morita equivalence (X, a) <-f- (Z, phi) -g-> (Y, b)", cmd_verify_sme,
         {"F", "G", "ALPHA", "BETA", "PHI"}},
        {"descent", "cohomological descent along a hypercover", cmd_descent, {"MAP"}},
        {"selftest", "built-in example battery", cmd_selftest, {}},
    };

    for (auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        if (!c.inputs.empty()) {
            std::string names;
            for (auto& n : c.inputs) names += (names.empty() ? "" : " ") + n;
            sub->add_option("inputs", p.inputs, names)->required()->expected(static_cast<int>(c.inputs.size()));
        }
        sub->add_option("--format", p.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--output", p.output, "write the report here instead of stdout");
        std::string name = c.name;
        if (name == "check-ngpd" || name == "check-hypercover" || name == "tangent" || name == "check-symplectic" ||
            name == "transfer" || name == "verify-sme" || name == "descent")
            sub->add_option("--n", p.n, "Lie n-groupoid / hypercover degree");
        if (name == "transfer") {
            sub->add_option("--m", p.m, "shift of the form");
            sub->add_option("--weight", p.transfer_weight, "weight bound (default: the form's weight)");
            sub->add_option("--out-dir", p.out_dir, "directory for beta.json and phi.json")->capture_default_str();
        }
        if (name == "cohomology" || name == "descent") {
            sub->add_option("--k", p.k, "truncation degree")->capture_default_str();
            sub->add_option("--weight", p.weight, "maximal polynomial weight W")->capture_default_str();
            sub->add_option("--degrees", p.degrees, "highest total degree N")->capture_default_str();
        }
        if (name == "cohomology") sub->add_flag("--representatives", p.representatives, "include cocycle matrices");
        if (name == "descent") sub->add_flag("--tower", p.tower, "also run the coskeleton tower route");
        if (name == "selftest") {
            sub->add_flag_callback("--json", [&p] { p.format = "json"; }, "JSON output");
            sub->add_flag("--corrupt-fixture", p.corrupt, "test mode: corrupt one embedded fixture");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const Command* chosen = nullptr;
    CLI::App* sub = app.get_subcommands().front();
    for (auto& c : commands)
        if (sub->get_name() == c.name) chosen = &c;
    std::string name = chosen->name;
    if (p.format.empty()) p.format = name == "selftest" ? "text" : "json";

    Outcome o;
    try {
        o = chosen->handler(p);
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        o = {{{"message", e.what()}}, false};
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    o.report["command"] = name;
    o.report["pass"] = o.pass;

    std::string text = render(name, o, p.format);
    if (p.output.empty()) {
        out << text;
    } else {
        try {
            write_file(p.output, text);
        } catch (const InvalidInput& e) {
            err << "error: " << e.what() << "\n";
            return 2;
        }
    }
    if (!o.pass && o.report.contains("message")) err << name << ": " << o.report["message"].get<std::string>() << "\n";
    return o.pass ? 0 : 1;
}

}  // namespace shiftsym::cli
