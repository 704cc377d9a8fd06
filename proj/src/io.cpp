#include "eehm/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eehm/errors.hpp"

namespace eehm {

namespace {

std::vector<std::string> content_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (!blank) lines.push_back(line);
    }
    return lines;
}

BitMatrix rows_to_matrix(const std::vector<std::vector<int>>& rows, const std::string& what) {
    if (rows.empty()) throw parse_error(what + ": no rows");
    return BitMatrix::from_rows(rows);
}

std::vector<int> parse_bit_row(const std::string& line, const std::string& path) {
    std::istringstream in(line);
    std::vector<int> row;
    int v;
    while (in >> v) {
        if (v != 0 && v != 1) throw parse_error(path + ": matrix entries must be 0 or 1");
        row.push_back(v);
    }
    if (!in.eof()) throw parse_error(path + ": bad token in matrix row");
    return row;
}

} // namespace

CssCode read_code_file(const std::string& path) {
    std::vector<std::string> lines = content_lines(path);
    std::vector<std::vector<int>> hx_rows, hz_rows;
    std::vector<std::vector<int>>* target = nullptr;
    for (const std::string& line : lines) {
        std::istringstream in(line);
        std::string head;
        in >> head;
        if (head == "hx") {
            target = &hx_rows;
            continue;
        }
        if (head == "hz") {
            target = &hz_rows;
            continue;
        }
        if (!target) throw parse_error(path + ": expected 'hx' or 'hz' section");
        target->push_back(parse_bit_row(line, path));
    }
    if (hx_rows.empty() && hz_rows.empty()) throw parse_error(path + ": empty code file");
    std::size_t n = hx_rows.empty() ? hz_rows[0].size() : hx_rows[0].size();
    BitMatrix hx = hx_rows.empty() ? BitMatrix(0, n) : rows_to_matrix(hx_rows, path);
    BitMatrix hz = hz_rows.empty() ? BitMatrix(0, n) : rows_to_matrix(hz_rows, path);
    try {
        return CssCode(std::move(hx), std::move(hz));
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void write_code_file(const std::string& path, const CssCode& code) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "hx\n";
    for (std::size_t r = 0; r < code.hx.rows(); ++r) {
        for (std::size_t c = 0; c < code.n(); ++c) out << (c ? " " : "") << code.hx.get(r, c);
        out << "\n";
    }
    out << "hz\n";
    for (std::size_t r = 0; r < code.hz.rows(); ++r) {
        for (std::size_t c = 0; c < code.n(); ++c) out << (c ? " " : "") << code.hz.get(r, c);
        out << "\n";
    }
}

BitMatrix read_matrix_file(const std::string& path) {
    std::vector<std::string> lines = content_lines(path);
    if (lines.empty()) throw parse_error(path + ": empty matrix file");
    std::istringstream head(lines[0]);
    std::size_t rows = 0, cols = 0;
    if (!(head >> rows >> cols)) throw parse_error(path + ": expected 'rows cols' header");
    BitMatrix m(rows, cols);
    std::size_t idx = 0;
    for (std::size_t l = 1; l < lines.size(); ++l)
        for (int v : parse_bit_row(lines[l], path)) {
            if (idx >= rows * cols) throw parse_error(path + ": too many matrix entries");
            if (v) m.set(idx / cols, idx % cols, true);
            ++idx;
        }
    if (idx != rows * cols) throw parse_error(path + ": wrong number of matrix entries");
    return m;
}

void write_matrix_file(const std::string& path, const BitMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << m.rows() << " " << m.cols() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m.get(r, c);
        out << "\n";
    }
}

BitMatrix read_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw parse_error(path + ": bad alist header");
    std::size_t cmax = 0, rmax = 0;
    if (!(in >> cmax >> rmax)) throw parse_error(path + ": bad alist weight line");
    std::vector<std::size_t> col_w(n), row_w(m);
    for (auto& w : col_w) in >> w;
    for (auto& w : row_w) in >> w;
    if (!in) throw parse_error(path + ": truncated alist weights");
    BitMatrix out(m, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < cmax; ++k) {
            long long r;
            if (!(in >> r)) {
                if (k < col_w[c]) throw parse_error(path + ": truncated alist column list");
                continue;
            }
            if (r == 0) continue;   // padding
            if (r < 1 || static_cast<std::size_t>(r) > m)
                throw parse_error(path + ": alist row index out of range");
            out.set(static_cast<std::size_t>(r) - 1, c, true);
        }
    return out;
}

void write_alist_file(const std::string& path, const BitMatrix& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t cmax = m.max_col_weight(), rmax = m.max_row_weight();
    out << cols << " " << rows << "\n" << cmax << " " << rmax << "\n";
    for (std::size_t c = 0; c < cols; ++c) out << (c ? " " : "") << m.col_weight(c);
    out << "\n";
    for (std::size_t r = 0; r < rows; ++r) out << (r ? " " : "") << m.row_weight(r);
    out << "\n";
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t written = 0;
        for (std::size_t r = 0; r < rows; ++r)
            if (m.get(r, c)) out << (written++ ? " " : "") << (r + 1);
        for (; written < cmax; ++written) out << (written ? " " : "") << 0;
        out << "\n";
    }
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t written = 0;
        for (std::size_t c = 0; c < cols; ++c)
            if (m.get(r, c)) out << (written++ ? " " : "") << (c + 1);
        for (; written < rmax; ++written) out << (written ? " " : "") << 0;
        out << "\n";
    }
}

BitMatrix read_matrix_auto(const std::string& path) {
    if (path.size() > 6 && path.substr(path.size() - 6) == ".alist") return read_alist_file(path);
    return read_matrix_file(path);
}

PauliOperator parse_operator(const std::string& text, std::size_t n) {
    PauliOperator op = PauliOperator::identity(n);
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 2) throw parse_error("bad operator token '" + tok + "'");
        char p = tok[0];
        if (p != 'X' && p != 'Y' && p != 'Z')
            throw parse_error("operator token must start with X, Y or Z: '" + tok + "'");
        std::size_t idx = 0;
        try {
            idx = std::stoul(tok.substr(1));
        } catch (const std::exception&) {
            throw parse_error("bad qubit index in '" + tok + "'");
        }
        if (idx < 1 || idx > n)
            throw parse_error("qubit index out of range (1-based): '" + tok + "'");
        std::size_t q = idx - 1;
        if (p == 'X' || p == 'Y') {
            if (op.x.get(q)) throw parse_error("repeated qubit in operator: '" + tok + "'");
            op.x.set(q, true);
        }
        if (p == 'Z' || p == 'Y') {
            if (op.z.get(q)) throw parse_error("repeated qubit in operator: '" + tok + "'");
            op.z.set(q, true);
        }
        if (p == 'Y') ++op.phase_i;
    }
    op.phase_i %= 4;
    return op;
}

void Report::add(const std::string& key, const std::string& value) {
    fields.emplace_back(key, value);
}

void Report::add(const std::string& key, std::size_t value) {
    add(key, value == kInfiniteDistance ? std::string("inf") : std::to_string(value));
}

void Report::add(const std::string& key, double value) {
    std::ostringstream os;
    os << std::setprecision(6) << value;
    add(key, os.str());
}

std::string Report::to_string() const {
    std::ostringstream os;
    for (const auto& [k, v] : fields) os << k << " = " << v << "\n";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Report& r) { return os << r.to_string(); }

std::pair<double, double> agresti_coull(std::size_t n_fail, std::size_t n_tot, double kappa) {
    if (n_tot == 0) throw std::invalid_argument("agresti_coull needs n_tot > 0");
    if (n_fail > n_tot) throw std::invalid_argument("agresti_coull needs n_fail <= n_tot");
    if (kappa < 0) throw std::invalid_argument("agresti_coull needs kappa >= 0");
    double k2 = kappa * kappa;
    double p = (static_cast<double>(n_fail) + k2 / 2.0) / (static_cast<double>(n_tot) + k2);
    double half = kappa * std::sqrt(p * (1.0 - p) / (static_cast<double>(n_tot) + k2));
    return {p, half};
}

} // namespace eehm
