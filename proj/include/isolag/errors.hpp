#pragma once

#include <stdexcept>
#include <string>

namespace isolag {

// Base for every error raised by the library. `kind()` is a short stable tag
// used by the command line driver when it reports a failure.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct StructuralError : Error {
    explicit StructuralError(const std::string& w) : Error("structural", w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error("config", w) {}
};
struct UnsupportedCase : Error {
    explicit UnsupportedCase(const std::string& w) : Error("unsupported", w) {}
};
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& w) : Error("degeneracy", w) {}
};
struct SingularElement : Error {
    explicit SingularElement(const std::string& w) : Error("singular-element", w) {}
};
struct RankDeficiency : Error {
    explicit RankDeficiency(const std::string& w) : Error("rank-deficiency", w) {}
};
struct IncompleteData : Error {
    explicit IncompleteData(const std::string& w) : Error("incomplete-data", w) {}
};
struct NumericalConsistency : Error {
    explicit NumericalConsistency(const std::string& w) : Error("numerical-consistency", w) {}
};

} // namespace isolag
