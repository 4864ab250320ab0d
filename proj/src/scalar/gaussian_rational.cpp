#include "gcx/scalar/gaussian_rational.hpp"

#include "gcx/error.hpp"

namespace gcx {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::DegreeError: return "DegreeError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidPoissonData: return "InvalidPoissonData";
    case ErrorCode::InvalidBField: return "InvalidBField";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::IncompatibleSection: return "IncompatibleSection";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularTransition: return "SingularTransition";
    case ErrorCode::InvalidTransition: return "InvalidTransition";
    case ErrorCode::InvalidAnsatz: return "InvalidAnsatz";
    case ErrorCode::GluingMismatch: return "GluingMismatch";
    case ErrorCode::NotASplitting: return "NotASplitting";
    case ErrorCode::FrameError: return "FrameError";
    case ErrorCode::MismatchedData: return "MismatchedData";
    case ErrorCode::NonCanonicalChart: return "NonCanonicalChart";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Error";
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero Gaussian rational");
  if (sgn(im_) == 0) return GaussianRational(mpq_class(1) / re_);
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class m = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(m);
  return *this;
}

std::strong_ordering compare(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  GaussianRational result(1);
  GaussianRational base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1)
    imag = "i";
  else if (im_ == -1)
    imag = "-i";
  else
    imag = im_.get_str() + "*i";
  if (sgn(re_) == 0) return imag;
  std::string out = "(" + re_.get_str();
  if (sgn(im_) > 0) out += "+";
  out += imag + ")";
  return out;
}

std::size_t GaussianRational::complexity() const {
  return mpz_sizeinbase(re_.get_num_mpz_t(), 2) + mpz_sizeinbase(re_.get_den_mpz_t(), 2) +
         mpz_sizeinbase(im_.get_num_mpz_t(), 2) + mpz_sizeinbase(im_.get_den_mpz_t(), 2);
}

}  // namespace gcx
