#include "realform/serialize.hpp"

#include <cmath>

namespace realform {

using nlohmann::json;

namespace {

void require(bool condition, const std::string& message, const std::string& pointer) {
  if (!condition) throw ParseError(message, pointer);
}

double finite_number(const json& value, const std::string& pointer) {
  require(value.is_number(), "expected a number", pointer);
  const double x = value.get<double>();
  require(std::isfinite(x), "NaN/Inf tokens are not allowed", pointer);
  return x;
}

Complex complex_from_json(const json& value, const std::string& pointer) {
  require(value.is_array() && value.size() == 2, "a complex number is a [re, im] pair",
          pointer);
  return Complex(finite_number(value[0], pointer + "/0"),
                 finite_number(value[1], pointer + "/1"));
}

GroupFamily family_from_string(const std::string& text, const std::string& pointer) {
  if (text == "GL") return GroupFamily::GL;
  if (text == "SL") return GroupFamily::SL;
  if (text == "O") return GroupFamily::O;
  if (text == "SO") return GroupFamily::SO;
  if (text == "Sp") return GroupFamily::Sp;
  throw ParseError("kind must be one of GL, SL, O, SO, Sp", pointer);
}

std::string family_to_string(GroupFamily family) {
  switch (family) {
    case GroupFamily::GL: return "GL";
    case GroupFamily::SL: return "SL";
    case GroupFamily::O: return "O";
    case GroupFamily::SO: return "SO";
    case GroupFamily::Sp: return "Sp";
  }
  return {};
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return entries;
}

CMatrix matrix_from_json(const json& entries, int rows, int cols,
                         const std::string& pointer) {
  require(entries.is_array(), "expected an array of [re, im] pairs", pointer);
  require(static_cast<int>(entries.size()) == rows * cols,
          "expected " + std::to_string(rows * cols) + " entries, got " +
              std::to_string(entries.size()),
          pointer);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const int flat = i * cols + j;
      m(i, j) = complex_from_json(entries[flat], pointer + "/" + std::to_string(flat));
    }
  return m;
}

Representation representation_from_json(const json& doc, const Tolerance& tol) {
  require(doc.is_object(), "document must be an object", "");
  require(doc.contains("kind"), "missing field", "/kind");
  require(doc["kind"].is_string(), "kind must be a string", "/kind");
  require(doc.contains("n"), "missing field", "/n");
  require(doc["n"].is_number_integer(), "n must be an integer", "/n");
  const GroupFamily family = family_from_string(doc["kind"].get<std::string>(), "/kind");
  const int n = doc["n"].get<int>();
  require(n >= 1, "n must be positive", "/n");
  require(!(family == GroupFamily::Sp && n % 2 != 0), "Sp requires even n", "/n");

  require(doc.contains("generators"), "missing field", "/generators");
  require(doc["generators"].is_array() && !doc["generators"].empty(),
          "generators must be a nonempty array", "/generators");
  std::vector<CMatrix> gens;
  for (size_t g = 0; g < doc["generators"].size(); ++g)
    gens.push_back(matrix_from_json(doc["generators"][g], n, n,
                                    "/generators/" + std::to_string(g)));

  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    require(doc["labels"].is_array(), "labels must be an array", "/labels");
    require(doc["labels"].size() == gens.size(),
            "label count must match generator count", "/labels");
    for (size_t i = 0; i < doc["labels"].size(); ++i) {
      require(doc["labels"][i].is_string(), "labels must be strings",
              "/labels/" + std::to_string(i));
      labels.push_back(doc["labels"][i].get<std::string>());
    }
  }

  std::vector<std::vector<int>> relations;
  if (doc.contains("relations")) {
    require(doc["relations"].is_array(), "relations must be an array", "/relations");
    for (size_t r = 0; r < doc["relations"].size(); ++r) {
      const json& word = doc["relations"][r];
      const std::string pointer = "/relations/" + std::to_string(r);
      require(word.is_array(), "a relation is an array of signed indices", pointer);
      std::vector<int> letters;
      for (size_t k = 0; k < word.size(); ++k) {
        const json& letter = word[k];
        require(letter.is_number_integer(), "relation letters are integers",
                pointer + "/" + std::to_string(k));
        const int value = letter.get<int>();
        require(value != 0 && std::abs(value) <= static_cast<int>(gens.size()),
                "relation letter out of range", pointer + "/" + std::to_string(k));
        letters.push_back(value);
      }
      relations.push_back(std::move(letters));
    }
  }

  return Representation(GroupKind(family, n), std::move(gens), tol, std::move(labels),
                        std::move(relations));
}

Representation load_representation(const std::string& text, const Tolerance& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), "");
  }
  return representation_from_json(doc, tol);
}

json representation_to_json(const Representation& rep) {
  json doc;
  doc["kind"] = family_to_string(rep.kind().family);
  doc["n"] = rep.kind().n;
  doc["generators"] = json::array();
  for (const CMatrix& g : rep.generators()) doc["generators"].push_back(matrix_to_json(g));
  if (!rep.labels().empty()) doc["labels"] = rep.labels();
  if (!rep.relations().empty()) doc["relations"] = rep.relations();
  return doc;
}

std::string save_representation(const Representation& rep) {
  return representation_to_json(rep).dump(2) + "\n";
}

CMatrix load_matrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what(), "");
  }
  require(doc.is_object(), "matrix document must be an object", "");
  require(doc.contains("n") && doc["n"].is_number_integer(), "missing integer n", "/n");
  const int n = doc["n"].get<int>();
  require(n >= 1, "n must be positive", "/n");
  require(doc.contains("entries"), "missing field", "/entries");
  return matrix_from_json(doc["entries"], n, n, "/entries");
}

json coordinates_to_json(const CharacterCoordinates& coords) {
  json doc;
  doc["words"] = json::array();
  for (const Word& w : coords.words.words) doc["words"].push_back(w);
  doc["traces"] = json::array();
  for (int i = 0; i < coords.traces.size(); ++i)
    doc["traces"].push_back({coords.traces(i).real(), coords.traces(i).imag()});
  if (coords.qvalues) {
    doc["qvalues"] = json::array();
    for (int i = 0; i < coords.qvalues->size(); ++i)
      doc["qvalues"].push_back({(*coords.qvalues)(i).real(), (*coords.qvalues)(i).imag()});
  }
  return doc;
}

json certificate_to_json(const ConjugationCertificate& cert) {
  json doc;
  doc["tag"] = cert.tag.name();
  switch (cert.tag.kind) {
    case RealFormKind::U:
    case RealFormKind::SU:
    case RealFormKind::O_PQ:
    case RealFormKind::SO_PQ:
      doc["params"] = {cert.tag.p, cert.tag.q};
      break;
    case RealFormKind::Sp_PQ:
      doc["params"] = {2 * cert.tag.p, 2 * cert.tag.q};
      break;
    case RealFormKind::Sp_R:
      doc["params"] = {2 * cert.tag.p};
      break;
    case RealFormKind::GL_SUM:
      doc["params"] = {cert.tag.p, cert.tag.q};
      break;
    default:
      doc["params"] = {cert.tag.p};
      break;
  }
  doc["n"] = static_cast<int>(cert.conjugator.rows());
  doc["P"] = matrix_to_json(cert.conjugator);
  doc["residuals"] = cert.residuals;
  doc["lambda_sign"] = cert.lambda_sign ? json(*cert.lambda_sign) : json(nullptr);
  doc["branch"] = cert.branch;
  if (!cert.blocks.empty()) {
    doc["blocks"] = json::array();
    for (const BlockCertificateInfo& block : cert.blocks)
      doc["blocks"].push_back({{"tag", block.tag.name()}, {"multiplicity", block.multiplicity}});
  }
  return doc;
}

json residual_report_to_json(const ResidualReport& report) {
  json doc;
  doc["pass"] = report.pass;
  doc["max_residual"] = report.max_value;
  doc["equations"] = json::array();
  for (const ResidualEntry& entry : report.entries)
    doc["equations"].push_back({{"equation", entry.equation},
                                {"residual", entry.value},
                                {"threshold", entry.threshold},
                                {"pass", entry.pass}});
  return doc;
}

}  // namespace realform
