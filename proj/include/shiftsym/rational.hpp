#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftsym {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Index = Eigen::Index;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

// Malformed input or inconsistent shapes.
class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

template <typename Scalar>
inline bool is_zero(const Scalar& x) {
    if constexpr (requires { x.is_zero(); })
        return x.is_zero();
    else
        return x == Scalar(0);
}

// Accepts "p", "p/q", "-p/q" with arbitrary-size integers; result in lowest terms.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace shiftsym
