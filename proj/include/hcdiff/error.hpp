#ifndef HCDIFF_ERROR_HPP
#define HCDIFF_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hcdiff
{

// Argument outside the mathematical domain of an operation (e.g. |t| > 1).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Invalid parameter value (bad order, empty support, too few points, ...).
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// The smoothness class is too weak for the requested derivative orders.
class AdmissibilityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A witness pair cannot be built on the requested band.
class InfeasibilityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration failed validation; carries one message per bad field.
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

  private:
    std::vector<std::string> problems_;
};

// Unexpected numerical failure (e.g. Newton iteration did not converge).
class InternalError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

} // namespace hcdiff

#endif // HCDIFF_ERROR_HPP
