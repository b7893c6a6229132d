#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace volkov {

// Exit-code families used by the CLI.
enum class ErrorKind { Validation = 2, Numerical = 3, Io = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what), issues_{what} {}
    explicit ValidationError(const std::vector<std::string>& issues)
        : Error(ErrorKind::Validation, join(issues)), issues_(issues) {}
    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& i : v) s += (s.empty() ? "" : "\n") + i;
        return s;
    }
    std::vector<std::string> issues_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::Numerical, what) {}
};

// Imaginary longitudinal momentum under the correlation constraint.
class EvanescentMode : public NumericalError {
public:
    explicit EvanescentMode(const std::string& what) : NumericalError("evanescent mode: " + what) {}
};

// v_a coincides with p3/E at this eta; the Jacobian factor diverges.
class SingularSlice : public NumericalError {
public:
    explicit SingularSlice(const std::string& what) : NumericalError("singular slice: " + what) {}
};

// Requested branch root lies on the negative-energy sheet.
class NegativeEnergy : public NumericalError {
public:
    explicit NegativeEnergy(const std::string& what) : NumericalError("negative-energy root: " + what) {}
};

class DesignerSingular : public NumericalError {
public:
    explicit DesignerSingular(const std::string& what) : NumericalError("designer singular: " + what) {}
};

class ResolutionError : public NumericalError {
public:
    explicit ResolutionError(const std::string& what) : NumericalError("resolution: " + what) {}
};

class ParaxialInvalid : public NumericalError {
public:
    explicit ParaxialInvalid(const std::string& what) : NumericalError("paraxial invalid: " + what) {}
};

class FlatSlice : public NumericalError {
public:
    explicit FlatSlice(const std::string& what) : NumericalError("flat slice: " + what) {}
};

class NoIntersection : public NumericalError {
public:
    explicit NoIntersection(const std::string& what) : NumericalError("no intersection: " + what) {}
};

} // namespace volkov
