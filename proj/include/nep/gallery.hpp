#pragma once

// Named benchmark problems.
//
//   dep0            -lambda I + A0 + A1 exp(-tau lambda), A0, A1 standard normal
//                   (params n = 5, seed = 0, tau = 1)
//   pep0            A0 + lambda A1 + lambda^2 A2, standard normal coefficients
//                   (params n = 4, seed = 0)
//   neuron0         two-neuron delay model, see NeuronParameters
//   sqrt_spmf       3 x 3 problem with a principal square root term
//   paper_spmf_5x5  A lambda + B exp(lambda) + C (1 + sqrt(lambda)) with
//                   A = ones, B = ones + I, C = B with rows reversed
//
// Random entries come from SplitMix64(seed) in the order A0, A1, ..., each
// filled column by column (see random.hpp).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nep/problems.hpp"

namespace nep {

using GalleryParams = std::map<std::string, double>;

struct GalleryEntry {
  std::string name;
  std::string description;
  GalleryParams defaults;
};

const std::vector<GalleryEntry>& gallery_entries();
std::vector<std::string> gallery_names();

/// Throws UnknownName for an unknown problem and ArgumentError for an
/// unknown or invalid parameter.
NepPtr nep_gallery(const std::string& name, const GalleryParams& params = {});

/// M(lambda) = -lambda I + A0 + A1 e^{-tau1 lambda} + A2 e^{-tau2 lambda} + A3 e^{-tau3 lambda}
/// with A0 = -kappa I, A1 = a2 e2 e1^T, A2 = a1 e1 e2^T, A3 = beta I.
/// Defaults follow the DDE-BIFTOOL neuron demo.
struct NeuronParameters {
  double kappa = 0.5;
  double beta = -1.0;
  double a1 = 1.0;
  double a2 = 2.34;
  double tau1 = 0.2;
  double tau2 = 0.2;
  double tau3 = 1.5;
};

std::shared_ptr<Dep> make_neuron(const NeuronParameters& p);

/// sum_{i=1}^{m} A_i f_i(lambda) with f_1 = 1, f_2 = lambda and
/// f_i = exp(i^{1/6} lambda) otherwise; A_i has entries that are nonzero with
/// probability `density` and uniform on [0, 1).
std::shared_ptr<Spmf> many_terms_spmf(int m = 200, int n = 50, std::uint64_t seed = 0,
                                      double density = 0.01);

}  // namespace nep
