#include "nep/gallery.hpp"

#include <cmath>

#include "nep/errors.hpp"
#include "nep/random.hpp"

namespace nep {

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {"dep0", "random single-delay DEP", {{"n", 5}, {"seed", 0}, {"tau", 1.0}}},
      {"pep0", "random quadratic PEP", {{"n", 4}, {"seed", 0}}},
      {"neuron0",
       "two-neuron delay model",
       {{"kappa", 0.5},
        {"beta", -1.0},
        {"a1", 1.0},
        {"a2", 2.34},
        {"tau1", 0.2},
        {"tau2", 0.2},
        {"tau3", 1.5}}},
      {"sqrt_spmf", "3x3 SPMF with a square root term", {}},
      {"paper_spmf_5x5", "5x5 SPMF with lambda, exp and 1+sqrt terms", {}},
  };
  return entries;
}

std::vector<std::string> gallery_names() {
  std::vector<std::string> names;
  for (const auto& e : gallery_entries()) names.push_back(e.name);
  return names;
}

namespace {

GalleryParams merge(const GalleryEntry& e, const GalleryParams& given) {
  GalleryParams p = e.defaults;
  for (const auto& [k, v] : given) {
    if (!p.count(k)) {
      std::string valid;
      for (const auto& [dk, dv] : e.defaults) valid += (valid.empty() ? "" : ", ") + dk;
      throw ArgumentError("unknown parameter '" + k + "' for " + e.name +
                          (valid.empty() ? " (takes no parameters)" : " (valid: " + valid + ")"));
    }
    if (!std::isfinite(v)) throw ArgumentError("parameter '" + k + "' must be finite");
    p[k] = v;
  }
  return p;
}

Index dimension(const GalleryParams& p) {
  const double n = p.at("n");
  if (n < 1 || n != std::floor(n) || n > 100000) throw ArgumentError("n must be a positive integer");
  return static_cast<Index>(n);
}

std::uint64_t seed_of(const GalleryParams& p) {
  const double s = p.at("seed");
  if (s < 0 || s != std::floor(s)) throw ArgumentError("seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(s);
}

NepPtr dep0(const GalleryParams& p) {
  const Index n = dimension(p);
  SplitMix64 rng(seed_of(p));
  Matrix A0 = random_normal_matrix(n, n, rng);
  Matrix A1 = random_normal_matrix(n, n, rng);
  return make_dep(std::move(A0), {{p.at("tau"), std::move(A1)}});
}

NepPtr pep0(const GalleryParams& p) {
  const Index n = dimension(p);
  SplitMix64 rng(seed_of(p));
  std::vector<Matrix> A;
  for (int i = 0; i < 3; ++i) A.push_back(random_normal_matrix(n, n, rng));
  return make_pep(std::move(A));
}

NepPtr sqrt_spmf() {
  Matrix A0(3, 3);
  A0 << -4, -1, 0, -1, -4, -1, 0, -1, -4;
  const Matrix I = Matrix::Identity(3, 3);
  return make_spmf({A0, I, I}, {fn::constant(1.0), fn::monomial(1), fn::sqrt()});
}

NepPtr paper_spmf() {
  const Matrix A = Matrix::Ones(5, 5);
  const Matrix B = A + Matrix::Identity(5, 5);
  const Matrix C = B.colwise().reverse();
  return make_spmf({A, B, C}, {fn::monomial(1), fn::exp(), fn::one_plus_sqrt()});
}

}  // namespace

std::shared_ptr<Dep> make_neuron(const NeuronParameters& p) {
  const Matrix I = Matrix::Identity(2, 2);
  Matrix A1 = Matrix::Zero(2, 2), A2 = Matrix::Zero(2, 2);
  A1(1, 0) = p.a2;
  A2(0, 1) = p.a1;
  return make_dep(-p.kappa * I, {{p.tau1, A1}, {p.tau2, A2}, {p.tau3, p.beta * I}});
}

NepPtr nep_gallery(const std::string& name, const GalleryParams& params) {
  for (const auto& e : gallery_entries()) {
    if (e.name != name) continue;
    const GalleryParams p = merge(e, params);
    if (name == "dep0") return dep0(p);
    if (name == "pep0") return pep0(p);
    if (name == "neuron0") {
      NeuronParameters np{p.at("kappa"), p.at("beta"), p.at("a1"), p.at("a2"),
                          p.at("tau1"),  p.at("tau2"), p.at("tau3")};
      return make_neuron(np);
    }
    if (name == "sqrt_spmf") return sqrt_spmf();
    return paper_spmf();
  }
  throw UnknownName(name, gallery_names());
}

std::shared_ptr<Spmf> many_terms_spmf(int m, int n, std::uint64_t seed, double density) {
  if (m < 2 || n < 1) throw ArgumentError("many_terms_spmf: need m >= 2 and n >= 1");
  SplitMix64 rng(seed);
  std::vector<Matrix> A;
  std::vector<FunctionPair> f;
  for (int i = 1; i <= m; ++i) {
    A.push_back(random_sparse_uniform(n, n, density, rng));
    if (i == 1)
      f.push_back(fn::constant(1.0));
    else if (i == 2)
      f.push_back(fn::monomial(1));
    else
      f.push_back(fn::exp(std::pow(static_cast<double>(i), 1.0 / 6.0)));
  }
  return make_spmf(std::move(A), std::move(f));
}

}  // namespace nep
