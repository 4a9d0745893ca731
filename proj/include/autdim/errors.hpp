#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace autdim {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class OutsideDomainError : public Error { using Error::Error; };
class UnboundedDomainError : public Error { using Error::Error; };
class InvalidDomainError : public Error { using Error::Error; };
class NoClosedFormError : public Error { using Error::Error; };
class DegenerateInputError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };
class InfeasibleError : public Error { using Error::Error; };
class DisconnectedError : public Error { using Error::Error; };
class UnderdeterminedError : public Error { using Error::Error; };
class StiffnessError : public Error { using Error::Error; };
class PoleError : public Error { using Error::Error; };
class DiagonalError : public Error { using Error::Error; };
class TangencyError : public Error { using Error::Error; };

/// Trajectory left its domain; `t_exit` is located to within 1e-6.
class EscapeError : public Error {
public:
    EscapeError(double t_exit, const std::string& what)
        : Error(what), t_exit_(t_exit) {}
    [[nodiscard]] double t_exit() const noexcept { return t_exit_; }

private:
    double t_exit_;
};

/// Gram-Schmidt found a dependent field; `index` is 1-based.
class RankError : public Error {
public:
    RankError(std::size_t index, const std::string& what)
        : Error(what), index_(index) {}
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// The singular spectrum has no clear gap at the tolerance cut.
class AmbiguousDimError : public Error {
public:
    AmbiguousDimError(std::vector<double> spectrum, const std::string& what)
        : Error(what), spectrum_(std::move(spectrum)) {}
    [[nodiscard]] const std::vector<double>& spectrum() const noexcept { return spectrum_; }

private:
    std::vector<double> spectrum_;
};

}  // namespace autdim
