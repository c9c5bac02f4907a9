#include "shiftsym/io.hpp"

#include <fstream>
#include <sstream>

namespace shiftsym {

namespace {

std::string key(int m, int i) { return std::to_string(m) + "," + std::to_string(i); }

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InvalidInput(std::string("JSON: missing field \"") + name + "\"");
    return j.at(name);
}

int int_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!v.is_number_integer()) throw InvalidInput(std::string("JSON: field \"") + name + "\" must be an integer");
    return v.get<int>();
}

std::vector<int> int_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InvalidInput(std::string("JSON: ") + what + " must be an array of integers");
    std::vector<int> out;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw InvalidInput(std::string("JSON: ") + what + " must be an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

// Table of matrices keyed "m,i"; `count(m)` maps per level, `shape(m)` their (rows, cols).
template <typename Count, typename Shape>
std::vector<std::vector<RatMatrix>> matrix_table(const Json& j, std::size_t levels, Count count, Shape shape,
                                                 const char* what) {
    if (!j.is_object()) throw InvalidInput(std::string("JSON: \"") + what + "\" must be an object");
    std::vector<std::vector<RatMatrix>> out(levels);
    std::size_t seen = 0;
    for (std::size_t m = 0; m < levels; ++m)
        for (int i = 0; i < count(static_cast<int>(m)); ++i) {
            auto k = key(static_cast<int>(m), i);
            if (!j.contains(k)) throw InvalidInput(std::string("JSON: \"") + what + "\" lacks entry \"" + k + "\"");
            auto [r, c] = shape(static_cast<int>(m));
            out[m].push_back(matrix_from_json(j.at(k), r, c));
            ++seen;
        }
    if (seen != j.size()) throw InvalidInput(std::string("JSON: \"") + what + "\" has unexpected entries");
    return out;
}

Json degree_comparison(const DegreeComparison& d) {
    return {{"degree", d.degree},
            {"dim_source", d.dim_source},
            {"dim_target", d.dim_target},
            {"induced_rank", d.induced_rank},
            {"iso", d.iso()}};
}

Json presymplectic_to_json(const PresymplecticReport& r) {
    Json j{{"closed", r.closed}, {"normalized", r.normalized}, {"multiplicative", r.multiplicative}};
    j["first_nonclosed"] = r.first_nonclosed ? Json(*r.first_nonclosed) : Json(nullptr);
    j["first_unnormalized"] = r.first_unnormalized ? Json(*r.first_unnormalized) : Json(nullptr);
    return j;
}

Json vector_to_json(const RatVector& v) {
    Json a = Json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(rational_to_json(v(i)));
    return a;
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw InvalidInput("JSON: rationals must be strings \"p/q\" or integers, got " + j.dump());
}

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix matrix_from_json(const Json& j, Index rows, Index cols) {
    if (!j.is_array() || static_cast<Index>(j.size()) != rows)
        throw InvalidInput("JSON: expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    RatMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw InvalidInput("JSON: expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
        for (Index c = 0; c < cols; ++c) m(i, c) = rational_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Json shape_to_json(const SimplicialShape& s) {
    Json j;
    j["levels"] = s.names();
    Json face = Json::object(), degen = Json::object();
    for (int m = 0; m <= s.max_level(); ++m) {
        for (int i = 0; m > 0 && i <= m; ++i) {
            Json row = Json::array();
            for (std::size_t x = 0; x < s.count(m); ++x) row.push_back(s.name(m - 1, s.face(m, i, x)));
            face[key(m, i)] = std::move(row);
        }
        for (int i = 0; m < s.max_level() && i <= m; ++i) {
            Json row = Json::array();
            for (std::size_t x = 0; x < s.count(m); ++x) row.push_back(s.name(m + 1, s.degeneracy(m, i, x)));
            degen[key(m, i)] = std::move(row);
        }
    }
    j["face"] = std::move(face);
    j["degen"] = std::move(degen);
    return j;
}

SimplicialShape shape_from_json(const Json& j) {
    const Json& lv = field(j, "levels");
    if (!lv.is_array() || lv.empty()) throw InvalidInput("JSON: \"levels\" must be a non-empty array");
    std::vector<std::vector<std::string>> names;
    for (auto& level : lv) {
        if (!level.is_array()) throw InvalidInput("JSON: each level must be an array of names");
        std::vector<std::string> row;
        for (auto& n : level) {
            if (!n.is_string()) throw InvalidInput("JSON: simplex names must be strings");
            row.push_back(n.get<std::string>());
        }
        names.push_back(std::move(row));
    }
    const std::size_t L = names.size();
    auto lookup = [&](std::size_t level, const Json& n) {
        if (!n.is_string()) throw InvalidInput("JSON: simplex names must be strings");
        auto& row = names[level];
        auto it = std::find(row.begin(), row.end(), n.get<std::string>());
        if (it == row.end()) throw InvalidInput("JSON: unknown simplex \"" + n.get<std::string>() + "\"");
        return static_cast<std::size_t>(it - row.begin());
    };
    auto table = [&](const char* what, bool faces) {
        const Json& t = field(j, what);
        std::vector<std::vector<std::vector<std::size_t>>> out(L);
        for (std::size_t m = 0; m < L; ++m) {
            std::size_t count = faces ? (m == 0 ? 0 : m + 1) : (m + 1 == L ? 0 : m + 1);
            for (std::size_t i = 0; i < count; ++i) {
                auto k = key(static_cast<int>(m), static_cast<int>(i));
                if (!t.contains(k)) throw InvalidInput(std::string("JSON: \"") + what + "\" lacks entry \"" + k + "\"");
                const Json& row = t.at(k);
                if (!row.is_array() || row.size() != names[m].size())
                    throw InvalidInput(std::string("JSON: \"") + what + "\" entry \"" + k + "\" has wrong length");
                std::vector<std::size_t> targets;
                for (auto& n : row) targets.push_back(lookup(faces ? m - 1 : m + 1, n));
                out[m].push_back(std::move(targets));
            }
        }
        return out;
    };
    return SimplicialShape(names, table("face", true), table("degen", false));
}

Json model_to_json(const LinSimpSpace& x) {
    Json j;
    j["levels"] = x.dims();
    Json face = Json::object(), degen = Json::object();
    for (int m = 0; m <= x.max_level(); ++m) {
        for (int i = 0; m > 0 && i <= m; ++i) face[key(m, i)] = matrix_to_json(x.face(m, i));
        for (int i = 0; m < x.max_level() && i <= m; ++i) degen[key(m, i)] = matrix_to_json(x.degeneracy(m, i));
    }
    j["face"] = std::move(face);
    j["degen"] = std::move(degen);
    return j;
}

LinSimpSpace model_from_json(const Json& j) {
    const Json& lv = field(j, "levels");
    if (!lv.is_array() || lv.empty()) throw InvalidInput("JSON: \"levels\" must be a non-empty array of dimensions");
    std::vector<Index> dims;
    for (auto& d : lv) {
        if (!d.is_number_integer() || d.get<long long>() < 0)
            throw InvalidInput("JSON: \"levels\" entries must be non-negative integers");
        dims.push_back(d.get<Index>());
    }
    const std::size_t L = dims.size();
    auto dim = [&](int m) { return dims[static_cast<std::size_t>(m)]; };
    auto faces = matrix_table(
        field(j, "face"), L, [](int m) { return m == 0 ? 0 : m + 1; },
        [&](int m) { return std::pair<Index, Index>(dim(m - 1), dim(m)); }, "face");
    auto degens = matrix_table(
        field(j, "degen"), L, [&](int m) { return m + 1 == static_cast<int>(L) ? 0 : m + 1; },
        [&](int m) { return std::pair<Index, Index>(dim(m + 1), dim(m)); }, "degen");
    return LinSimpSpace(std::move(dims), std::move(faces), std::move(degens));
}

Json map_to_json(const SimpLinMap& f, const Json& source_ref, const Json& target_ref) {
    Json mats = Json::object();
    for (int m = 0; m <= f.max_level(); ++m) mats[std::to_string(m)] = matrix_to_json(f.level(m));
    return {{"source", source_ref}, {"target", target_ref}, {"level_mats", std::move(mats)}};
}

Json map_to_json(const SimpLinMap& f) { return map_to_json(f, model_to_json(f.source()), model_to_json(f.target())); }

SimpLinMap map_from_json(const Json& j, const std::filesystem::path& base) {
    auto model = [&](const char* name) {
        const Json& ref = field(j, name);
        if (ref.is_string()) {
            std::filesystem::path p = ref.get<std::string>();
            if (p.is_relative()) p = base / p;
            return model_from_json(read_json_file(p));
        }
        return model_from_json(ref);
    };
    LinSimpSpace src = model("source"), tgt = model("target");
    const Json& mats = field(j, "level_mats");
    if (!mats.is_object()) throw InvalidInput("JSON: \"level_mats\" must be an object");
    const int L = std::min(src.max_level(), tgt.max_level());
    if (static_cast<int>(mats.size()) != L + 1)
        throw InvalidInput("JSON: \"level_mats\" needs entries for levels 0.." + std::to_string(L));
    std::vector<RatMatrix> levels;
    for (int m = 0; m <= L; ++m) {
        auto k = std::to_string(m);
        if (!mats.contains(k)) throw InvalidInput("JSON: \"level_mats\" lacks level " + k);
        levels.push_back(matrix_from_json(mats.at(k), tgt.dim(m), src.dim(m)));
    }
    return SimpLinMap(src.truncated(L), tgt.truncated(L), std::move(levels));
}

Json form_to_json(const PolyForm& f, int level) {
    Json terms = Json::array();
    for (auto& [k, c] : f.terms())
        terms.push_back({{"mono", k.mono}, {"idx", k.idx}, {"coef", rational_to_json(c)}});
    return {{"level", level}, {"degree", f.degree()}, {"terms", std::move(terms)}};
}

PolyForm form_from_json(const Json& j, Index dim) {
    int q = int_field(j, "degree");
    if (q < 0) throw InvalidInput("JSON: form degree must be >= 0");
    PolyForm f(static_cast<int>(dim), q);
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw InvalidInput("JSON: \"terms\" must be an array");
    for (auto& t : terms) {
        auto mono = int_list(field(t, "mono"), "\"mono\"");
        auto idx = int_list(field(t, "idx"), "\"idx\"");
        if (static_cast<Index>(mono.size()) != dim)
            throw InvalidInput("JSON: monomial has " + std::to_string(mono.size()) + " exponents, level dimension is " +
                               std::to_string(dim));
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (idx[i - 1] >= idx[i]) throw InvalidInput("JSON: \"idx\" must be strictly increasing");
        f.add_term(std::move(mono), std::move(idx), rational_from_json(field(t, "coef")));
    }
    return f;
}

Json shifted_form_to_json(const ShiftedForm& a) {
    Json comps = Json::array();
    for (int i = 0; i <= a.shift(); ++i) comps.push_back(form_to_json(a.component(i), i));
    return {{"shift", a.shift()}, {"k", a.k()}, {"components", std::move(comps)}};
}

ShiftedForm shifted_form_from_json(const Json& j, const LinSimpSpace& model) {
    int m = int_field(j, "shift"), k = int_field(j, "k");
    const Json& comps = field(j, "components");
    if (!comps.is_array() || static_cast<int>(comps.size()) != m + 1)
        throw InvalidInput("JSON: \"components\" needs one form per level 0.." + std::to_string(m));
    if (m > model.max_level()) throw InvalidInput("JSON: shift exceeds the model's levels");
    std::vector<PolyForm> forms;
    for (int i = 0; i <= m; ++i) {
        const Json& c = comps[static_cast<std::size_t>(i)];
        if (int_field(c, "level") != i) throw InvalidInput("JSON: component " + std::to_string(i) + " has wrong level");
        forms.push_back(form_from_json(c, model.dim(i)));
    }
    return ShiftedForm(model, m, k, std::move(forms));
}

Json validation_to_json(const ValidationReport& r) { return {{"ok", r.ok}, {"violations", r.violations}}; }

Json lie_report_to_json(const LieReport& r) {
    Json horns = Json::array();
    for (auto& h : r.horns)
        horns.push_back({{"m", h.m},
                         {"j", h.j},
                         {"unique_required", h.unique_required},
                         {"surjective", h.restriction.surjective()},
                         {"injective", h.restriction.injective()},
                         {"pass", h.pass()}});
    return {{"n", r.n}, {"pass", r.pass()}, {"horns", std::move(horns)}};
}

Json hypercover_report_to_json(const HypercoverReport& r) {
    Json levels = Json::array();
    for (auto& l : r.levels)
        levels.push_back({{"m", l.m},
                          {"bijective_required", l.bijective_required},
                          {"surjective", l.restriction.surjective()},
                          {"injective", l.restriction.injective()},
                          {"pass", l.pass()}});
    return {{"n", r.n}, {"pass", r.pass()}, {"consistent", r.consistent()}, {"levels", std::move(levels)}};
}

Json tangent_to_json(const TangentComplexData& t) {
    Json dims = Json::array(), diffs = Json::object();
    for (int l = 0; l <= t.n; ++l) {
        dims.push_back(t.complex.dim(l));
        if (l > 0) diffs[std::to_string(l)] = matrix_to_json(t.complex.out(l));
    }
    return {{"n", t.n}, {"dims", std::move(dims)}, {"differentials", std::move(diffs)},
            {"homology", cohomology_to_json(tangent_homology(t))}};
}

Json cohomology_to_json(const CohomologyReport& r, bool representatives) {
    Json dims = Json::object();
    for (auto& [d, n] : r.dims) dims[std::to_string(d)] = n;
    if (!representatives) return dims;
    Json reps = Json::object();
    for (auto& [d, m] : r.representatives) reps[std::to_string(d)] = matrix_to_json(m);
    return {{"dims", std::move(dims)}, {"representatives", std::move(reps)}};
}

Json comparisons_to_json(const std::vector<DegreeComparison>& d) {
    Json a = Json::array();
    for (auto& c : d) a.push_back(degree_comparison(c));
    return a;
}

Json symplectic_report_to_json(const SymplecticReport& r) {
    Json pairings = Json::array();
    for (auto& p : r.pairings)
        pairings.push_back({{"l", p.l},
                            {"dim_l", p.dim_l},
                            {"dim_dual", p.dim_dual},
                            {"rank", p.rank},
                            {"perfect", p.perfect()}});
    return {{"pass", r.pass()},
            {"presymplectic", presymplectic_to_json(r.presymplectic)},
            {"lie", r.lie},
            {"lie_failure", r.lie_failure},
            {"pairings", std::move(pairings)},
            {"message", r.message()}};
}

Json morita_report_to_json(const MoritaReport& r) {
    return {{"pass", r.pass()},
            {"f_hypercover", r.f_hypercover},
            {"g_hypercover", r.g_hypercover},
            {"alpha", symplectic_report_to_json(r.alpha)},
            {"beta", symplectic_report_to_json(r.beta)},
            {"equation", r.equation},
            {"message", r.message()}};
}

Json transfer_to_json(const TransferResult& r) {
    Json j{{"feasible", r.feasible}, {"weight_bound", r.weight_bound}, {"message", r.message}};
    if (r.feasible) {
        j["beta"] = shifted_form_to_json(r.beta);
        j["phi"] = shifted_form_to_json(-r.phi);
        j["verification"] = morita_report_to_json(r.verification);
    } else {
        j["infeasible_weight"] = r.infeasible_weight ? Json(*r.infeasible_weight) : Json(nullptr);
        j["certificate"] = vector_to_json(r.certificate);
    }
    return j;
}

Json nerve_descent_to_json(const NerveDescentReport& r) {
    Json rows = Json::array();
    for (auto& row : r.homotopy.rows)
        rows.push_back({{"q", row.q}, {"weight", row.weight}, {"pass", row.pass()}});
    return {{"pass", r.pass()},
            {"section", matrix_to_json(r.section)},
            {"homotopy", {{"face_zero", r.homotopy.face_zero},
                          {"face_shift", r.homotopy.face_shift},
                          {"degen_shift", r.homotopy.degen_shift},
                          {"rows", std::move(rows)}}},
            {"degrees", comparisons_to_json(r.degrees)}};
}

Json hypercover_descent_to_json(const HypercoverDescentReport& r) {
    Json j{{"pass", r.pass()}, {"direct", comparisons_to_json(r.direct)}, {"routes_agree", r.routes_agree}};
    if (r.triple) {
        j["triple"] = {{"pass", r.triple->pass()},
                       {"row_certificate", r.triple->row_certificate},
                       {"cochain_map", r.triple->cochain_map},
                       {"degrees", comparisons_to_json(r.triple->degrees)}};
        j["eilenberg_zilber"] = {{"cochain_map", r.ez_cochain_map}, {"degrees", comparisons_to_json(r.ez)}};
    }
    if (!r.tower.empty()) {
        Json steps = Json::array();
        for (std::size_t m = 0; m < r.tower.size(); ++m) {
            Json degrees = Json::array();
            for (auto& d : r.tower[m].degrees)
                degrees.push_back({{"degree", d.degree},
                                   {"dim_a", d.dim_a},
                                   {"dim_b", d.dim_b},
                                   {"dim_c", d.dim_c},
                                   {"phi_iso", d.phi_iso},
                                   {"chase_injective", d.chase_injective},
                                   {"chase_surjective", d.chase_surjective},
                                   {"direct_iso", d.direct_iso}});
            steps.push_back({{"m", m}, {"pass", r.tower[m].pass()}, {"degrees", std::move(degrees)}});
        }
        j["tower"] = std::move(steps);
    }
    return j;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw InvalidInput("cannot read " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_json(ss.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(p.string() + ": " + e.what());
    }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace shiftsym
