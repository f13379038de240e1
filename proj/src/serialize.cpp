#include "nep/serialize.hpp"

#include <json.hpp>

#include "nep/errors.hpp"
#include "nep/problems.hpp"

namespace nep {

namespace {

using json = nlohmann::json;

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ArgumentError(std::string("expected [re, im] for ") + what);
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_json(const Matrix& A) {
  json data = json::array();
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j) {
      data.push_back(A(i, j).real());
      data.push_back(A(i, j).imag());
    }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from(const json& j, Index n) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ArgumentError("matrix entries need rows, cols and data");
  const Index r = j.at("rows").get<Index>(), c = j.at("cols").get<Index>();
  if (r != n || c != n) throw ArgumentError("matrix shape does not match n");
  const json& d = j.at("data");
  if (!d.is_array() || static_cast<Index>(d.size()) != 2 * r * c)
    throw ArgumentError("matrix data must hold 2*rows*cols numbers");
  Matrix A(r, c);
  std::size_t k = 0;
  for (Index i = 0; i < r; ++i)
    for (Index jj = 0; jj < c; ++jj, k += 2) {
      if (!d[k].is_number() || !d[k + 1].is_number())
        throw ArgumentError("matrix data must be numeric");
      A(i, jj) = Complex(d[k].get<double>(), d[k + 1].get<double>());
    }
  return A;
}

json tag_json(const FunctionTag& t) {
  return {{"kind", kind_name(t.kind)},
          {"power", t.power},
          {"scale", complex_json(t.scale)},
          {"coeff", complex_json(t.coeff)},
          {"offset", complex_json(t.offset)}};
}

FunctionTag tag_from(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ArgumentError("function tag needs a kind");
  FunctionTag t;
  try {
    t.kind = parse_kind(j.at("kind").get<std::string>());
  } catch (const UnknownName& e) {
    throw ArgumentError(e.what());
  }
  if (j.contains("power")) t.power = j.at("power").get<int>();
  if (j.contains("scale")) t.scale = complex_from(j.at("scale"), "scale");
  if (j.contains("coeff")) t.coeff = complex_from(j.at("coeff"), "coeff");
  if (j.contains("offset")) t.offset = complex_from(j.at("offset"), "offset");
  return t;
}

}  // namespace

std::string serialize_problem(const Nep& nep, int indent) {
  json j;
  j["n"] = nep.size();
  json mats = json::array();
  if (auto pep = dynamic_cast<const Pep*>(&nep)) {
    j["type"] = "pep";
    for (const Matrix& A : pep->coefficients()) mats.push_back(matrix_json(A));
  } else if (auto dep = dynamic_cast<const Dep*>(&nep)) {
    j["type"] = "dep";
    mats.push_back(matrix_json(dep->a0()));
    json delays = json::array();
    for (const DelayTerm& d : dep->delays()) {
      mats.push_back(matrix_json(d.A));
      delays.push_back(d.tau);
    }
    j["delays"] = std::move(delays);
  } else if (auto spmf = nep.as_spmf()) {
    j["type"] = "spmf";
    json fns = json::array();
    for (Index i = 0; i < spmf->terms(); ++i) {
      const FunctionPair& f = spmf->functions()[i];
      if (!f.tag)
        throw ArgumentError("term " + std::to_string(i) + " has no built-in function tag");
      fns.push_back(tag_json(*f.tag));
      mats.push_back(matrix_json(spmf->matrices()[i]));
    }
    j["functions"] = std::move(fns);
  } else {
    throw ArgumentError(nep.type_name() + " has no serializable form");
  }
  j["matrices"] = std::move(mats);
  return j.dump(indent);
}

NepPtr deserialize_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("invalid problem JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("type") || !j.contains("n") || !j.contains("matrices"))
      throw ArgumentError("problem JSON needs type, n and matrices");
    const std::string type = j.at("type").get<std::string>();
    const Index n = j.at("n").get<Index>();
    if (n < 1) throw ArgumentError("n must be positive");
    std::vector<Matrix> mats;
    for (const json& m : j.at("matrices")) mats.push_back(matrix_from(m, n));
    if (mats.empty()) throw ArgumentError("at least one matrix is required");
    if (type == "pep") return make_pep(std::move(mats));
    if (type == "dep") {
      const json& d = j.contains("delays") ? j.at("delays") : json::array();
      if (d.size() + 1 != mats.size())
        throw ArgumentError("dep needs one delay per matrix after A0");
      std::vector<DelayTerm> terms;
      for (std::size_t i = 0; i < d.size(); ++i) terms.push_back({d[i].get<double>(), mats[i + 1]});
      return make_dep(mats[0], std::move(terms));
    }
    if (type == "spmf") {
      if (!j.contains("functions") || j.at("functions").size() != mats.size())
        throw ArgumentError("spmf needs one function tag per matrix");
      std::vector<FunctionPair> fns;
      for (const json& t : j.at("functions")) fns.push_back(make_function(tag_from(t)));
      return make_spmf(std::move(mats), std::move(fns));
    }
    throw ArgumentError("unknown problem type '" + type + "' (valid: pep, dep, spmf)");
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed problem JSON: ") + e.what());
  }
}

}  // namespace nep
