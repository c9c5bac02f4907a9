#pragma once

// JSON (de)serialization.  Rationals are strings "p/q" or "p"; objects use
// sorted keys, so dump() of a parsed canonical document reproduces it exactly.

#include "shiftsym/descent.hpp"
#include "shiftsym/symplectic.hpp"

#include <json.hpp>

#include <filesystem>

namespace shiftsym {

using Json = nlohmann::json;

Json rational_to_json(const Rational& r);
// Accepts a rational string or a JSON integer.
Rational rational_from_json(const Json& j);

Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j, Index rows, Index cols);

// {"levels": [names per level], "face": {"m,i": [target names]}, "degen": {...}}
Json shape_to_json(const SimplicialShape& s);
SimplicialShape shape_from_json(const Json& j);

// {"levels": [d0, ..., dL], "face": {"m,i": [[rat]]}, "degen": {"m,i": [[rat]]}}
Json model_to_json(const LinSimpSpace& x);
LinSimpSpace model_from_json(const Json& j);

// {"source": model or path, "target": model or path, "level_mats": {"m": [[rat]]}};
// relative paths resolve against `base`.
Json map_to_json(const SimpLinMap& f, const Json& source_ref, const Json& target_ref);
Json map_to_json(const SimpLinMap& f);  // models inline
SimpLinMap map_from_json(const Json& j, const std::filesystem::path& base = {});

// {"level": p, "degree": q, "terms": [{"mono": [...], "idx": [...], "coef": "p/q"}]}
Json form_to_json(const PolyForm& f, int level);
// `dim` is the dimension of the level the form lives on.
PolyForm form_from_json(const Json& j, Index dim);

// {"shift": m, "k": 2, "components": [form per level]}
Json shifted_form_to_json(const ShiftedForm& a);
ShiftedForm shifted_form_from_json(const Json& j, const LinSimpSpace& model);

Json validation_to_json(const ValidationReport& r);
Json lie_report_to_json(const LieReport& r);
Json hypercover_report_to_json(const HypercoverReport& r);
Json tangent_to_json(const TangentComplexData& t);
// {"degree": dim}, or {"dims": ..., "representatives": ...} with representatives
Json cohomology_to_json(const CohomologyReport& r, bool representatives = false);
Json comparisons_to_json(const std::vector<DegreeComparison>& d);
Json symplectic_report_to_json(const SymplecticReport& r);
Json morita_report_to_json(const MoritaReport& r);
// {"beta": ..., "phi": ..., "verification": ...} or the infeasibility certificate;
// "phi" is the Morita gauge form, g^*α - h^*β = Dφ.
Json transfer_to_json(const TransferResult& r);
Json nerve_descent_to_json(const NerveDescentReport& r);
Json hypercover_descent_to_json(const HypercoverDescentReport& r);

// Whole-file helpers; parse errors become InvalidInput with the location.
Json read_json_file(const std::filesystem::path& p);
Json parse_json(const std::string& text);
std::string dump_json(const Json& j);  // two-space indent, trailing newline

}  // namespace shiftsym
