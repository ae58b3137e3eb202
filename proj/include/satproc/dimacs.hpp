#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "satproc/formula.hpp"

namespace satproc {

class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what)
        : std::runtime_error("dimacs line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

std::string dimacs_write(const Formula& f);
std::string dimacs_write(const ResidualFormula& f);

/// Parses a DIMACS CNF. All clauses must share one width (taken as k unless
/// expected_k is given); repeated variables within a clause are rejected.
/// k_hint sets the formula width when the file has no clauses.
Formula dimacs_read(const std::string& text, std::uint32_t expected_k = 0, std::uint32_t k_hint = 3);

/// Mixed-width reader for residual formulas (widths 1..k allowed).
ResidualFormula dimacs_read_residual(const std::string& text);

// File helpers; throw std::runtime_error on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace satproc
