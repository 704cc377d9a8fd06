#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eehm/bitmat.hpp"
#include "eehm/css.hpp"

namespace eehm {

/// Structured code file: a line "hx" followed by 0/1 rows, then "hz" and its
/// rows. '#' starts a comment; blank lines are ignored.
CssCode read_code_file(const std::string& path);
void write_code_file(const std::string& path, const CssCode& code);

/// Plain matrix file: first line "rows cols", then space-separated bits.
BitMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const BitMatrix& m);

/// MacKay alist: sparse one-matrix interchange format for LDPC codes.
BitMatrix read_alist_file(const std::string& path);
void write_alist_file(const std::string& path, const BitMatrix& m);

/// Loads a check matrix from any supported single-matrix format
/// (alist when the extension says so, plain otherwise).
BitMatrix read_matrix_auto(const std::string& path);

/// Whitespace-separated P<i> tokens, P ∈ {X,Y,Z}, indices 1-based.
PauliOperator parse_operator(const std::string& text, std::size_t n);

/// Ordered key = value lines with stable keys.
struct Report {
    std::vector<std::pair<std::string, std::string>> fields;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, std::size_t value);
    void add(const std::string& key, double value);
    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const Report& r);

/// Agresti–Coull interval: p = (n_fail + κ²/2)/(n_tot + κ²) and the
/// half-width κ·sqrt(p(1−p)/(n_tot + κ²)).
std::pair<double, double> agresti_coull(std::size_t n_fail, std::size_t n_tot,
                                        double kappa = 1.96);

} // namespace eehm
