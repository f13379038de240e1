#include "nep/matfun.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <sstream>

#include "nep/errors.hpp"

namespace nep {

std::string kind_name(FunctionTag::Kind k) {
  switch (k) {
    case FunctionTag::Kind::Power: return "power";
    case FunctionTag::Kind::Exp: return "exp";
    case FunctionTag::Kind::Sqrt: return "sqrt";
  }
  return "?";
}

FunctionTag::Kind parse_kind(const std::string& name) {
  if (name == "power") return FunctionTag::Kind::Power;
  if (name == "exp") return FunctionTag::Kind::Exp;
  if (name == "sqrt") return FunctionTag::Kind::Sqrt;
  throw UnknownName(name, {"power", "exp", "sqrt"});
}

namespace {

bool is_lower_triangular(const Matrix& S) {
  for (Index j = 1; j < S.cols(); ++j)
    for (Index i = 0; i < j; ++i)
      if (S(i, j) != Complex(0.0)) return false;
  return true;
}

bool is_upper_triangular(const Matrix& S) {
  for (Index j = 0; j < S.cols(); ++j)
    for (Index i = j + 1; i < S.rows(); ++i)
      if (S(i, j) != Complex(0.0)) return false;
  return true;
}

Vector eigenvalues_of(const Matrix& S) {
  if (is_lower_triangular(S) || is_upper_triangular(S)) return S.diagonal();
  Eigen::ComplexEigenSolver<Matrix> es(S, false);
  return es.eigenvalues();
}

bool on_negative_axis(Complex z) {
  double tol = 1e-14 * std::max(1.0, std::abs(z));
  return z.real() <= tol && std::abs(z.imag()) <= tol;
}

Matrix matrix_power(const Matrix& X, int p) {
  Matrix result = Matrix::Identity(X.rows(), X.cols());
  Matrix base = X;
  while (p > 0) {
    if (p & 1) result = result * base;
    p >>= 1;
    if (p) base = base * base;
  }
  return result;
}

Matrix matrix_exp(const Matrix& X) {
  if (X.imag().isZero(0.0)) {
    RealMatrix R = X.real();
    RealMatrix E = R.exp();
    return E.cast<Complex>();
  }
  return X.exp();
}

Complex g_scalar(const FunctionTag& t, Complex x) {
  switch (t.kind) {
    case FunctionTag::Kind::Power: return t.power == 0 ? Complex(1.0) : ipow(x, t.power);
    case FunctionTag::Kind::Exp: return std::exp(x);
    case FunctionTag::Kind::Sqrt:
      if (x.imag() == 0.0 && x.real() < 0.0)
        throw DomainError("sqrt evaluated on its branch cut (-inf, 0)");
      return std::sqrt(x);
  }
  return 0.0;
}

Complex g_derivative(const FunctionTag& t, Complex x, int k) {
  if (k == 0) return g_scalar(t, x);
  switch (t.kind) {
    case FunctionTag::Kind::Power: {
      if (k > t.power) return 0.0;
      double c = 1.0;
      for (int j = 0; j < k; ++j) c *= static_cast<double>(t.power - j);
      return c * (t.power == k ? Complex(1.0) : ipow(x, t.power - k));
    }
    case FunctionTag::Kind::Exp: return std::exp(x);
    case FunctionTag::Kind::Sqrt: {
      if (x == Complex(0.0)) throw DomainError("sqrt is not differentiable at 0");
      Complex r = g_scalar(t, x);
      double c = 1.0;
      for (int j = 0; j < k; ++j) c *= (0.5 - j);
      return c * r / ipow(x, k);
    }
  }
  return 0.0;
}

Matrix g_matrix(const FunctionTag& t, const Matrix& X) {
  switch (t.kind) {
    case FunctionTag::Kind::Power: return matrix_power(X, t.power);
    case FunctionTag::Kind::Exp: return matrix_exp(X);
    case FunctionTag::Kind::Sqrt: {
      require_off_negative_axis(X, "matrix sqrt");
      return X.sqrt();
    }
  }
  return X;
}

std::string describe(const FunctionTag& t) {
  std::ostringstream os;
  if (t.offset != Complex(0.0)) os << t.offset << " + ";
  if (t.coeff != Complex(1.0)) os << t.coeff << "*";
  std::string arg = t.scale == Complex(1.0) ? "x" : "(" + [&] {
    std::ostringstream a;
    a << t.scale;
    return a.str();
  }() + "*x)";
  switch (t.kind) {
    case FunctionTag::Kind::Power:
      os << (t.power == 0 ? std::string("1") : arg + "^" + std::to_string(t.power));
      break;
    case FunctionTag::Kind::Exp: os << "exp" << (arg == "x" ? "(x)" : arg); break;
    case FunctionTag::Kind::Sqrt: os << "sqrt" << (arg == "x" ? "(x)" : arg); break;
  }
  return os.str();
}

}  // namespace

void require_off_negative_axis(const Matrix& S, const char* who) {
  Vector ev = eigenvalues_of(S);
  for (Index i = 0; i < ev.size(); ++i)
    if (on_negative_axis(ev(i)))
      throw DomainError(std::string(who) + ": spectrum touches the branch cut (-inf, 0]");
}

FunctionPair make_function(const FunctionTag& tag) {
  if (tag.kind == FunctionTag::Kind::Power && tag.power < 0)
    throw ArgumentError("power function requires a nonnegative exponent");
  FunctionPair f;
  f.tag = tag;
  f.label = describe(tag);
  f.scalar = [tag](Complex x) { return tag.offset + tag.coeff * g_scalar(tag, tag.scale * x); };
  f.derivative = [tag](Complex x, int k) {
    Complex d = tag.coeff * ipow(tag.scale, k) * g_derivative(tag, tag.scale * x, k);
    return k == 0 ? d + tag.offset : d;
  };
  f.matrix = [tag](const Matrix& S) {
    Matrix G = g_matrix(tag, tag.scale * S);
    G *= tag.coeff;
    if (tag.offset != Complex(0.0)) G.diagonal().array() += tag.offset;
    return G;
  };
  return f;
}

namespace fn {

FunctionPair constant(Complex c) {
  FunctionTag t;
  t.kind = FunctionTag::Kind::Power;
  t.power = 0;
  t.coeff = c;
  return make_function(t);
}

FunctionPair monomial(int p, Complex coeff) {
  FunctionTag t;
  t.kind = FunctionTag::Kind::Power;
  t.power = p;
  t.coeff = coeff;
  return make_function(t);
}

FunctionPair exp(Complex scale, Complex coeff) {
  FunctionTag t;
  t.kind = FunctionTag::Kind::Exp;
  t.scale = scale;
  t.coeff = coeff;
  return make_function(t);
}

FunctionPair sqrt() {
  FunctionTag t;
  t.kind = FunctionTag::Kind::Sqrt;
  return make_function(t);
}

FunctionPair one_plus_sqrt() {
  FunctionTag t;
  t.kind = FunctionTag::Kind::Sqrt;
  t.offset = 1.0;
  return make_function(t);
}

}  // namespace fn

Matrix derivative_bidiagonal(Complex lambda, Index k) {
  Matrix S = Matrix::Zero(k, k);
  S.diagonal().setConstant(lambda);
  for (Index i = 1; i < k; ++i) S(i, i - 1) = static_cast<double>(i);
  return S;
}

Vector derivatives_via_matrix_function(const FunctionPair& f, Complex lambda, int order) {
  if (order < 0) throw ArgumentError("derivative order must be nonnegative");
  if (order == 0) {
    Matrix s(1, 1);
    s(0, 0) = lambda;
    return f.matrix(s).col(0);
  }
  Matrix F = f.matrix(derivative_bidiagonal(lambda, order + 1));
  return F.col(0);
}

Matrix divided_difference(const FunctionPair& f, const Matrix& S, Complex sigma,
                          Complex alpha) {
  if (S.rows() != S.cols()) throw ArgumentError("divided_difference: S must be square");
  const Index p = S.rows();
  Matrix B = Matrix::Zero(2 * p, 2 * p);
  B.topLeftCorner(p, p) = alpha * S;
  B.topLeftCorner(p, p).diagonal().array() += sigma;
  B.topRightCorner(p, p).setIdentity();
  B.bottomRightCorner(p, p).diagonal().setConstant(sigma);
  Matrix F = f.matrix(B);
  return F.topRightCorner(p, p);
}

}  // namespace nep
