#pragma once

#include <string>

#include <json.hpp>

#include "realform/classifier.hpp"
#include "realform/grouprep.hpp"
#include "realform/invariants.hpp"

namespace realform {

/// Document schema:
///   {"kind": "GL|SL|O|SO|Sp", "n": int,
///    "generators": [[[re,im], ... n*n entries row-major], ...],
///    "labels": [string, ...]?, "relations": [[signed indices], ...]?}
/// Complex numbers are always [re, im] pairs; NaN/Inf are rejected.
Representation load_representation(const std::string& text, const Tolerance& tol = {});
std::string save_representation(const Representation& rep);

nlohmann::json representation_to_json(const Representation& rep);
Representation representation_from_json(const nlohmann::json& doc, const Tolerance& tol = {});

/// Row-major flat list of [re, im] pairs.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& entries, int rows, int cols,
                         const std::string& pointer);

/// A standalone matrix document {"n": int, "entries": [[re,im], ...]}.
CMatrix load_matrix(const std::string& text);

nlohmann::json coordinates_to_json(const CharacterCoordinates& coords);
nlohmann::json certificate_to_json(const ConjugationCertificate& cert);
nlohmann::json residual_report_to_json(const ResidualReport& report);

}  // namespace realform
