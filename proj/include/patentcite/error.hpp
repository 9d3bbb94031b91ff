#ifndef PATENTCITE_ERROR_HPP
#define PATENTCITE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace patentcite {

// Raised for bad input files, malformed records, schema mismatches and
// datasets that violate an operation's preconditions. The CLI maps this
// family to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised for model-file problems: corrupt JSON, unsupported format_version,
// unknown model tag. Also exit code 2 at the CLI boundary.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace patentcite

#endif // PATENTCITE_ERROR_HPP
