#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnoise {

// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
    invalid_argument,
    singular_evaluation,
    pole,
    convergence,
    detection,
    io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what)
        : Error(ErrorKind::invalid_argument, what) {}
};

// A transform or rational function was evaluated at (or numerically on top of) a pole.
class SingularEvaluation : public Error {
public:
    SingularEvaluation(const std::string& what, std::complex<double> where)
        : Error(ErrorKind::singular_evaluation, what), where_(where) {}

    std::complex<double> where() const noexcept { return where_; }

private:
    std::complex<double> where_;
};

// The 4x4 response system is too ill-conditioned to trust.
class PoleError : public Error {
public:
    PoleError(const std::string& what, double condition)
        : Error(ErrorKind::pole, what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<std::complex<double>> iterates)
        : Error(ErrorKind::convergence, what), iterates_(std::move(iterates)) {}

    const std::vector<std::complex<double>>& iterates() const noexcept { return iterates_; }

private:
    std::vector<std::complex<double>> iterates_;
};

class DetectionError : public Error {
public:
    explicit DetectionError(const std::string& what) : Error(ErrorKind::detection, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

} // namespace qnoise
